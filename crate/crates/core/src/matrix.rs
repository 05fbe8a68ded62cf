//! Small dense integer matrices: determinants, products and unimodular
//! inverses for certificates and pairing checks.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        if let Some(first) = rows.first() {
            assert!(rows.iter().all(|r| r.len() == first.len()), "ragged matrix");
        }
        IntMatrix { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let rows =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        IntMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn is_square(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.rows.len())
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let (n, m) = (self.nrows(), self.ncols());
        let rows = (0..m).map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect()).collect();
        IntMatrix { rows }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols(), other.nrows(), "matrix shapes do not compose");
        let rows = (0..self.nrows())
            .map(|i| {
                (0..other.ncols())
                    .map(|j| {
                        (0..self.ncols()).fold(BigInt::zero(), |acc, k| acc + &self.rows[i][k] * &other.rows[k][j])
                    })
                    .collect()
            })
            .collect();
        IntMatrix { rows }
    }

    /// Fraction-free Gaussian elimination (Bareiss). Exact over the integers.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.nrows();
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Inverse of a matrix with determinant ±1 (via the adjugate).
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let d = self.det();
        if !d.abs().is_one() {
            return None;
        }
        let n = self.nrows();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                // adj[i][j] = (-1)^{i+j} minor(j, i)
                let minor = self.minor(j, i).det();
                let cof = if (i + j).is_even() { minor } else { -minor };
                *slot = cof * &d;
            }
        }
        Some(IntMatrix { rows })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip_row)
            .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != skip_col).map(|(_, v)| v.clone()).collect())
            .collect();
        IntMatrix { rows }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).det(), BigInt::from(-1));
        assert_eq!(IntMatrix::from_i64(&[vec![0, 1], vec![1, -1]]).det(), BigInt::from(-1));
        let m = IntMatrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.det(), BigInt::from(4));
        let singular = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(singular.det().is_zero());
        assert_eq!(IntMatrix::from_i64(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]).det(), BigInt::from(-1));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = IntMatrix::from_i64(&[vec![1, 1, 0], vec![0, 1, 2], vec![1, 0, 1]]);
        assert_eq!(m.det(), BigInt::from(3));
        assert!(m.unimodular_inverse().is_none());

        let u = IntMatrix::from_i64(&[vec![2, 1, 0], vec![1, 1, 0], vec![0, 3, 1]]);
        let inv = u.unimodular_inverse().unwrap();
        assert_eq!(u.mul(&inv), IntMatrix::identity(3));
        assert_eq!(inv.mul(&u), IntMatrix::identity(3));
    }
}
