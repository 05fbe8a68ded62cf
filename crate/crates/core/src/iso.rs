//! Graded ring isomorphisms between tower presentations.
//!
//! Both rings are generated by their degree-2 classes, so a graded ring
//! map is fixed by an integer matrix `M` whose column `k` holds the
//! coordinates of the image of source generator `k`. [`verify`] accepts
//! `M` when `|det M| = 1` and every source relation maps to zero in the
//! target. That is enough: the map is then well defined, it hits a basis
//! of `H^2` and hence all of the target (which is generated in degree 2),
//! and a surjection between free graded modules of the same finite rank
//! in every degree is an isomorphism.
//!
//! [`search`] enumerates matrices with entries in `[-B, B]`. A
//! `NoneWithinBound` verdict only rules out certificates inside that box;
//! it is a bounded non-existence statement, not a proof that the rings
//! are not isomorphic.
//!
//! # Enumeration order
//!
//! Matrices are ordered lexicographically by their entries read column by
//! column (the image of `x_1` first, then `x_2`, …), each entry running
//! from `-B` up to `B`. The pruned depth-first search assigns columns in
//! that same order and only discards partial assignments that cannot be
//! completed, so it returns the same first certificate as the plain
//! enumeration in [`search_reference`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::IsoError;
use crate::matrix::IntMatrix;
use crate::poly::{Monomial, Poly};
use crate::tower::RingPresentation;

/// Default entry bound for searches.
pub const DEFAULT_BOUND: u32 = 3;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IsoCertificate {
    matrix: IntMatrix,
}

impl IsoCertificate {
    /// Column `k` of `matrix` = image of source generator `k`.
    pub fn new(matrix: IntMatrix) -> Self {
        IsoCertificate { matrix }
    }

    /// Builds a certificate from the generator images, one coordinate
    /// vector per source generator.
    pub fn from_images(images: &[Vec<i64>]) -> Self {
        let g = images.len();
        let rows = (0..g).map(|i| images.iter().map(|col| col[i]).collect()).collect::<Vec<Vec<i64>>>();
        IsoCertificate { matrix: IntMatrix::from_i64(&rows) }
    }

    pub fn identity(g: usize) -> Self {
        IsoCertificate { matrix: IntMatrix::identity(g) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Images of the source generators as linear forms in the target.
    pub fn images(&self) -> Vec<Poly> {
        (0..self.matrix.ncols()).map(|k| Poly::linear(self.matrix.column(k))).collect()
    }

    /// Entries in enumeration order (column by column).
    pub fn flattened(&self) -> Vec<BigInt> {
        (0..self.matrix.ncols()).flat_map(|k| self.matrix.column(k)).collect()
    }

    /// The inverse map, target to source.
    pub fn inverse(&self) -> Option<IsoCertificate> {
        self.matrix.unimodular_inverse().map(IsoCertificate::new)
    }

    /// `self: A -> B` followed by `then: B -> C`.
    pub fn then(&self, then: &IsoCertificate) -> IsoCertificate {
        IsoCertificate::new(then.matrix.mul(&self.matrix))
    }

    /// Largest absolute entry.
    pub fn max_entry(&self) -> BigInt {
        self.matrix.rows().iter().flatten().map(|v| v.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NoneReason {
    /// Every matrix in the box was tried.
    Exhausted,
    /// The Poincaré polynomials differ, so no bound can help.
    BettiMismatch,
}

impl NoneReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NoneReason::Exhausted => "exhausted",
            NoneReason::BettiMismatch => "betti_mismatch",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchVerdict {
    Found(IsoCertificate),
    NoneWithinBound { bound: u32, reason: NoneReason },
}

impl SearchVerdict {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchVerdict::Found(_))
    }

    pub fn certificate(&self) -> Option<&IsoCertificate> {
        match self {
            SearchVerdict::Found(c) => Some(c),
            SearchVerdict::NoneWithinBound { .. } => None,
        }
    }
}

fn maps_relations_to_zero(cert: &IsoCertificate, source: &RingPresentation, target: &RingPresentation) -> bool {
    let images = cert.images();
    source.relations().iter().all(|r| {
        let image = r.substitute(&images).expect("image count matches generator count");
        target.normal_form(&image).is_zero()
    })
}

/// Checks that `cert` defines a graded ring isomorphism `source -> target`.
///
/// Errors on shape mismatches and on differing Poincaré polynomials (the
/// latter means the rings are trivially not isomorphic, so the question is
/// malformed rather than false).
pub fn verify(cert: &IsoCertificate, source: &RingPresentation, target: &RingPresentation) -> Result<bool, IsoError> {
    let g = source.ngens();
    if target.ngens() != g {
        return Err(IsoError::GeneratorCount(g, target.ngens()));
    }
    if cert.matrix.nrows() != g || !cert.matrix.is_square() {
        return Err(IsoError::MatrixShape(g));
    }
    let (pa, pb) = (source.poincare(), target.poincare());
    if pa != pb {
        return Err(IsoError::PoincareMismatch(pa.to_string(), pb.to_string()));
    }
    Ok(cert.matrix.is_unimodular() && maps_relations_to_zero(cert, source, target))
}

/// The target ring as a free module, with multiplication by each
/// candidate linear form as a small `i64` matrix. Relation checks run
/// here; any overflow sends the check back to exact polynomial
/// arithmetic.
struct DenseTarget {
    rank: usize,
    /// `ops[c][i][j]`: coordinate `i` of `form_c * basis_j`.
    ops: Vec<Vec<Vec<i64>>>,
    /// Coordinates of `1`.
    unit: Vec<i64>,
}

impl DenseTarget {
    fn new(target: &RingPresentation, candidates: &[Vec<i64>]) -> Option<Self> {
        let basis = target.basis();
        let rank = basis.len();
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let g = target.ngens();
        // gen_ops[k][i][j]: coordinate i of x_k * basis_j
        let mut gen_ops = vec![vec![vec![0i64; rank]; rank]; g];
        for (k, op) in gen_ops.iter_mut().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let prod = target.normal_form(&Poly::term(g, b.mul(&Monomial::var_pow(g, k, 1)), 1));
                for (m, c) in prod.terms() {
                    op[*index.get(m)?][j] = i64::try_from(c).ok()?;
                }
            }
        }
        let mut ops = Vec::with_capacity(candidates.len());
        for cand in candidates {
            let mut op = vec![vec![0i64; rank]; rank];
            for (k, &v) in cand.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                for i in 0..rank {
                    for j in 0..rank {
                        op[i][j] = op[i][j].checked_add(v.checked_mul(gen_ops[k][i][j])?)?;
                    }
                }
            }
            ops.push(op);
        }
        let mut unit = vec![0i64; rank];
        unit[*index.get(&Monomial::one(g))?] = 1;
        Some(DenseTarget { rank, ops, unit })
    }

    fn apply(&self, c: usize, v: &[i64]) -> Option<Vec<i64>> {
        let op = &self.ops[c];
        let mut out = vec![0i64; self.rank];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (j, &x) in v.iter().enumerate() {
                if x != 0 && op[i][j] != 0 {
                    acc = acc.checked_add(op[i][j].checked_mul(x)?)?;
                }
            }
            *slot = acc;
        }
        Some(out)
    }

    /// Whether `rel`, with generator `k` sent to candidate `chosen[k]`,
    /// vanishes. `None` on overflow.
    fn vanishes(&self, rel: &[(Vec<u32>, i64)], chosen: &[usize]) -> Option<bool> {
        let mut total = vec![0i64; self.rank];
        for (exps, coeff) in rel {
            let mut v = self.unit.clone();
            for (k, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    v = self.apply(chosen[k], &v)?;
                }
            }
            for (t, x) in total.iter_mut().zip(v) {
                *t = t.checked_add(coeff.checked_mul(x)?)?;
            }
        }
        Some(total.iter().all(|&x| x == 0))
    }
}

/// `(exponents, coefficient)` pairs of a polynomial with `i64` coefficients.
type SmallPoly = Vec<(Vec<u32>, i64)>;

/// Shared state of one search between two fixed presentations.
struct Searcher<'a> {
    source: &'a RingPresentation,
    target: &'a RingPresentation,
    g: usize,
    /// All vectors of `[-B, B]^g` in lexicographic order.
    candidates: Vec<Vec<i64>>,
    /// `subsets[k]`: the `k`-element row subsets of `0..g`.
    subsets: Vec<Vec<Vec<usize>>>,
    /// Relations of the source indexed by the largest generator they use.
    check_at: Vec<Vec<usize>>,
    dense: Option<DenseTarget>,
    /// Source relations as `(exponents, coefficient)` lists when every
    /// coefficient fits in an `i64`.
    small_relations: Vec<Option<SmallPoly>>,
}

impl<'a> Searcher<'a> {
    fn new(source: &'a RingPresentation, target: &'a RingPresentation, bound: u32) -> Self {
        let g = source.ngens();
        let b = bound as i64;
        let mut candidates = vec![Vec::new()];
        for _ in 0..g {
            candidates = candidates
                .into_iter()
                .flat_map(|prefix| {
                    (-b..=b).map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        let subsets = (0..=g).map(|k| row_subsets(g, k)).collect();
        let mut check_at = vec![Vec::new(); g];
        for (r, rel) in source.relations().iter().enumerate() {
            let top = rel.max_generator().unwrap_or(0);
            check_at[top].push(r);
        }
        let dense = DenseTarget::new(target, &candidates);
        let small_relations = source
            .relations()
            .iter()
            .map(|r| r.terms().map(|(m, c)| i64::try_from(c).ok().map(|c| (m.exps().to_vec(), c))).collect())
            .collect();
        Searcher { source, target, g, candidates, subsets, check_at, dense, small_relations }
    }

    /// Relations that become checkable once column `level` is assigned.
    fn relations_hold(&self, level: usize, chosen: &[usize]) -> bool {
        if self.check_at[level].is_empty() {
            return true;
        }
        self.check_at[level].iter().all(|&r| {
            if let (Some(dense), Some(rel)) = (&self.dense, &self.small_relations[r]) {
                if let Some(answer) = dense.vanishes(rel, chosen) {
                    return answer;
                }
            }
            let mut images: Vec<Poly> =
                chosen.iter().map(|&i| Poly::linear(self.candidates[i].iter().copied())).collect();
            images.resize(self.g, Poly::zero(self.g));
            let image = self.source.relations()[r].substitute(&images).expect("arity");
            self.target.normal_form(&image).is_zero()
        })
    }

    /// Can the first `chosen.len()` columns still be completed to a
    /// unimodular matrix? True iff the gcd of their maximal minors is 1.
    fn extendable(&self, chosen: &[usize]) -> bool {
        let cols: Vec<&[i64]> = chosen.iter().map(|&i| self.candidates[i].as_slice()).collect();
        minor_gcd(&cols, &self.subsets[cols.len()]) == 1
    }

    fn certificate(&self, chosen: &[usize]) -> IsoCertificate {
        let images: Vec<Vec<i64>> = chosen.iter().map(|&i| self.candidates[i].clone()).collect();
        IsoCertificate::from_images(&images)
    }

    /// Depth-first search from a partial assignment. `visit` sees every
    /// complete certificate in enumeration order and returns `true` to stop.
    fn dfs(&self, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(IsoCertificate) -> bool) -> bool {
        let level = chosen.len();
        if level == self.g {
            return visit(self.certificate(chosen));
        }
        for idx in 0..self.candidates.len() {
            chosen.push(idx);
            if self.extendable(chosen) && self.relations_hold(level, chosen) && self.dfs(chosen, visit) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn first_from(&self, first: usize) -> Option<IsoCertificate> {
        let mut chosen = vec![first];
        if !(self.extendable(&chosen) && self.relations_hold(0, &chosen)) {
            return None;
        }
        let mut found = None;
        self.dfs(&mut chosen, &mut |c| {
            found = Some(c);
            true
        });
        found
    }
}

/// Largest generator count handled without allocation.
const SMALL: usize = 8;

/// Fraction-free elimination on a `k x k` block, `k <= SMALL`.
fn det_small(mut m: [[i128; SMALL]; SMALL], k: usize) -> i128 {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k {
        if m[p][p] == 0 {
            match (p + 1..k).find(|&i| m[i][p] != 0) {
                Some(i) => {
                    m.swap(i, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
            }
        }
        prev = m[p][p];
    }
    sign * m[k - 1][k - 1]
}

fn row_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of the `k x k` minors of the `g x k` matrix with the given columns,
/// where `subsets` lists the `k`-element row subsets of `0..g`.
fn minor_gcd(cols: &[&[i64]], subsets: &[Vec<usize>]) -> i128 {
    let k = cols.len();
    if k > SMALL {
        return big_minor_gcd(cols, subsets);
    }
    let mut acc = 0i128;
    for rows in subsets {
        let mut m = [[0i128; SMALL]; SMALL];
        for (i, &r) in rows.iter().enumerate() {
            for (j, c) in cols.iter().enumerate() {
                m[i][j] = i128::from(c[r]);
            }
        }
        acc = acc.gcd(&det_small(m, k));
        if acc == 1 {
            return 1;
        }
    }
    acc
}

fn big_minor_gcd(cols: &[&[i64]], subsets: &[Vec<usize>]) -> i128 {
    let mut acc = BigInt::zero();
    for rows in subsets {
        let m = IntMatrix::from_rows(rows.iter().map(|&r| cols.iter().map(|c| BigInt::from(c[r])).collect()).collect());
        acc = acc.gcd(&m.det());
        if acc == BigInt::from(1) {
            return 1;
        }
    }
    i128::try_from(acc).unwrap_or(i128::MAX)
}

#[cfg(test)]
fn maximal_minor_gcd(cols: &[&[i64]], g: usize) -> i128 {
    minor_gcd(cols, &row_subsets(g, cols.len()))
}

fn betti_gate(source: &RingPresentation, target: &RingPresentation, bound: u32) -> Option<SearchVerdict> {
    if source.ngens() != target.ngens() || source.poincare() != target.poincare() {
        return Some(SearchVerdict::NoneWithinBound { bound, reason: NoneReason::BettiMismatch });
    }
    None
}

/// First certificate in enumeration order with entries in `[-bound, bound]`.
pub fn search(source: &RingPresentation, target: &RingPresentation, bound: u32) -> SearchVerdict {
    search_with_jobs(source, target, bound, 1)
}

/// Like [`search`], splitting the work by the image of the first generator.
/// The answer is the first certificate in enumeration order whatever the
/// number of workers.
pub fn search_with_jobs(
    source: &RingPresentation,
    target: &RingPresentation,
    bound: u32,
    jobs: usize,
) -> SearchVerdict {
    if let Some(v) = betti_gate(source, target, bound) {
        return v;
    }
    let s = Searcher::new(source, target, bound);
    let n = s.candidates.len();
    let found = if jobs <= 1 {
        (0..n).find_map(|i| s.first_from(i))
    } else {
        run_in_pool(jobs, || (0..n).into_par_iter().find_map_first(|i| s.first_from(i)))
    };
    match found {
        Some(c) => SearchVerdict::Found(c),
        None => SearchVerdict::NoneWithinBound { bound, reason: NoneReason::Exhausted },
    }
}

pub(crate) fn run_in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Every certificate with entries in `[-bound, bound]`, in enumeration order.
pub fn search_all(source: &RingPresentation, target: &RingPresentation, bound: u32) -> Vec<IsoCertificate> {
    if betti_gate(source, target, bound).is_some() {
        return Vec::new();
    }
    let s = Searcher::new(source, target, bound);
    let mut out = Vec::new();
    s.dfs(&mut Vec::new(), &mut |c| {
        out.push(c);
        false
    });
    out
}

/// Unpruned enumeration of all `(2B+1)^{g^2}` matrices in enumeration
/// order, testing the determinant and then every relation. Slow; kept as
/// the reference the pruned search must agree with.
pub fn search_reference(source: &RingPresentation, target: &RingPresentation, bound: u32) -> SearchVerdict {
    if let Some(v) = betti_gate(source, target, bound) {
        return v;
    }
    let g = source.ngens();
    let b = bound as i64;
    let mut entries = vec![-b; g * g];
    loop {
        let images: Vec<Vec<i64>> = entries.chunks(g).map(<[i64]>::to_vec).collect();
        let cert = IsoCertificate::from_images(&images);
        if cert.matrix().is_unimodular() && maps_relations_to_zero(&cert, source, target) {
            return SearchVerdict::Found(cert);
        }
        // odometer, last entry fastest
        let mut pos = g * g;
        loop {
            if pos == 0 {
                return SearchVerdict::NoneWithinBound { bound, reason: NoneReason::Exhausted };
            }
            pos -= 1;
            if entries[pos] < b {
                entries[pos] += 1;
                break;
            }
            entries[pos] = -b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::RingPresentation;

    fn pres(caps: &[u32], rels: &[&str]) -> RingPresentation {
        let g = caps.len();
        RingPresentation::from_relations(caps.to_vec(), rels.iter().map(|r| Poly::parse(r, g).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn identity_verifies() {
        let a = pres(&[1, 1], &["x^2", "y^2 + 3*x*y"]);
        assert!(verify(&IsoCertificate::identity(2), &a, &a).unwrap());
    }

    #[test]
    fn h0_to_h2() {
        let h0 = pres(&[1, 1], &["x^2", "y^2"]);
        let h2 = pres(&[1, 1], &["x^2", "y^2 + 2*x*y"]);
        let cert = IsoCertificate::from_images(&[vec![1, 0], vec![1, 1]]);
        assert!(verify(&cert, &h0, &h2).unwrap());
        assert!(verify(&cert.inverse().unwrap(), &h2, &h0).unwrap());
    }

    #[test]
    fn sign_flip_on_three_stage() {
        for alpha in [-3, 2, 5] {
            let a = pres(&[1, 1, 1], &["x^2", "y^2", &format!("z^2 + {alpha}*x*y")]);
            let b = pres(&[1, 1, 1], &["x^2", "y^2", &format!("z^2 + {}*x*y", -alpha)]);
            let cert = IsoCertificate::from_images(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]);
            assert!(verify(&cert, &a, &b).unwrap());
        }
    }

    #[test]
    fn verify_rejects_bad_shapes_and_non_unimodular() {
        let a = pres(&[1, 1], &["x^2", "y^2"]);
        let cp3 = pres(&[3], &["x^4"]);
        let b = pres(&[2, 1], &["x^3", "y^2"]);
        assert!(matches!(verify(&IsoCertificate::identity(2), &a, &cp3), Err(IsoError::GeneratorCount(2, 1))));
        assert!(matches!(verify(&IsoCertificate::identity(1), &a, &a), Err(IsoError::MatrixShape(2))));
        assert!(matches!(verify(&IsoCertificate::identity(2), &a, &b), Err(IsoError::PoincareMismatch(..))));
        let doubled = IsoCertificate::from_images(&[vec![2, 0], vec![0, 1]]);
        assert!(!verify(&doubled, &a, &a).unwrap());
    }

    #[test]
    fn cp3_automorphisms() {
        let cp3 = pres(&[3], &["x^4"]);
        let all = search_all(&cp3, &cp3, 1);
        assert_eq!(all, vec![IsoCertificate::from_images(&[vec![-1]]), IsoCertificate::identity(1)]);
        assert_eq!(search(&cp3, &cp3, 1), SearchVerdict::Found(IsoCertificate::from_images(&[vec![-1]])));
    }

    #[test]
    fn betti_mismatch_short_circuits() {
        let cp3 = pres(&[3], &["x^4"]);
        let b = pres(&[1, 2], &["x^2", "y^3 + x*y^2"]);
        assert_eq!(search(&cp3, &b, 3), SearchVerdict::NoneWithinBound { bound: 3, reason: NoneReason::BettiMismatch });
    }

    #[test]
    fn pruned_matches_reference_on_small_pairs() {
        let rings = [
            pres(&[1, 1], &["x^2", "y^2"]),
            pres(&[1, 1], &["x^2", "y^2 + x*y"]),
            pres(&[1, 1], &["x^2", "y^2 + 2*x*y"]),
            pres(&[1, 1], &["x^2", "y^2 + 3*x*y"]),
        ];
        for a in &rings {
            for b in &rings {
                assert_eq!(search(a, b, 2), search_reference(a, b, 2));
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = pres(&[2, 1], &["x^3", "y^2 + x*y + x^2"]);
        for b in [pres(&[2, 1], &["x^3", "y^2 + x*y + x^2"]), pres(&[2, 1], &["x^3", "y^2 - x*y + x^2"])] {
            assert_eq!(search(&a, &b, 2), search_with_jobs(&a, &b, 2, 4));
        }
    }

    #[test]
    fn composition_and_inverse() {
        let h0 = pres(&[1, 1], &["x^2", "y^2"]);
        let h2 = pres(&[1, 1], &["x^2", "y^2 + 2*x*y"]);
        let h4 = pres(&[1, 1], &["x^2", "y^2 + 4*x*y"]);
        let ab = search(&h0, &h2, 2).certificate().cloned().unwrap();
        let bc = search(&h2, &h4, 2).certificate().cloned().unwrap();
        let ac = ab.then(&bc);
        assert!(verify(&ac, &h0, &h4).unwrap());
        assert!(verify(&ac.inverse().unwrap(), &h4, &h0).unwrap());
    }

    #[test]
    fn minor_gcd_examples() {
        assert_eq!(maximal_minor_gcd(&[&[2, 4, 6]], 3), 2);
        assert_eq!(maximal_minor_gcd(&[&[2, 3, 0]], 3), 1);
        assert_eq!(maximal_minor_gcd(&[&[1, 0, 0], &[0, 2, 2]], 3), 2);
        assert_eq!(maximal_minor_gcd(&[&[1, 0], &[0, -1]], 2), 1);
    }

    #[test]
    fn small_minors_match_bigint_minors() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..2000 {
            let g = rng.random_range(1..=5);
            let k = rng.random_range(1..=g);
            let cols: Vec<Vec<i64>> = (0..k).map(|_| (0..g).map(|_| rng.random_range(-3..=3)).collect()).collect();
            let refs: Vec<&[i64]> = cols.iter().map(Vec::as_slice).collect();
            let subsets = row_subsets(g, k);
            assert_eq!(minor_gcd(&refs, &subsets), big_minor_gcd(&refs, &subsets), "{cols:?}");
        }
    }
}
