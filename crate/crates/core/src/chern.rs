//! Chern classes of the bundles that feed tower stages.
//!
//! Everything is computed in the cohomology of a base tower, given as a
//! [`RingPresentation`]; results are always reduced there.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::ChernError;
use crate::poly::{Monomial, Poly};
use crate::tower::{RingPresentation, Stage, TowerSpec};

/// A complex vector bundle over a tower, recorded by its Chern classes.
///
/// `alpha` is the Atiyah–Rees `Z/2` tag used to tell apart rank-2 bundles
/// over `CP^3` with equal Chern classes. It is bookkeeping only: nothing
/// here computes it, and it never influences a cohomology ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleDescriptor {
    pub rank: usize,
    pub chern: Vec<Poly>,
    pub alpha: Option<u8>,
}

fn is_cp3(base: &RingPresentation) -> bool {
    base.caps() == [3]
}

fn is_odd_class(c1: &Poly) -> bool {
    c1.terms().any(|(_, c)| c.is_odd())
}

impl BundleDescriptor {
    /// Validates and reduces the classes; missing trailing classes are zero.
    pub fn new(base: &RingPresentation, rank: usize, chern: Vec<Poly>, alpha: Option<u8>) -> Result<Self, ChernError> {
        if chern.len() > rank {
            return Err(ChernError::ChernCount { rank, found: chern.len() });
        }
        let g = base.ngens();
        let mut classes = Vec::with_capacity(rank);
        for (i, c) in chern.into_iter().enumerate() {
            if c.ngens() != g {
                return Err(crate::error::PolyError::GeneratorMismatch { left: g, right: c.ngens() }.into());
            }
            let c = base.normal_form(&c);
            if !c.is_zero() && c.homogeneous_exponent() != Some(i as u32 + 1) {
                return Err(ChernError::Inhomogeneous { index: i + 1 });
            }
            classes.push(c);
        }
        classes.resize(rank, Poly::zero(g));
        let out = BundleDescriptor { rank, chern: classes, alpha: None };
        out.with_alpha(base, alpha)
    }

    /// Attach (or clear) the Atiyah–Rees tag.
    pub fn with_alpha(mut self, base: &RingPresentation, alpha: Option<u8>) -> Result<Self, ChernError> {
        if let Some(a) = alpha {
            if a > 1 {
                return Err(ChernError::AlphaRange(a));
            }
            if self.rank != 2 || !is_cp3(base) {
                return Err(ChernError::AlphaNotApplicable);
            }
            if a == 1 && is_odd_class(&self.chern[0]) {
                return Err(ChernError::AlphaOddFirstChern);
            }
        }
        self.alpha = alpha;
        Ok(self)
    }

    pub fn c(&self, i: usize) -> &Poly {
        &self.chern[i - 1]
    }

    /// The tower stage `P(self)`, fiber `CP^{rank-1}`.
    pub fn stage(&self) -> Stage {
        Stage::new(self.rank as u32 - 1, self.chern.clone())
    }

    /// Total Chern class `1 + c_1 + … + c_rank`.
    pub fn total(&self) -> Poly {
        let g = self.chern.first().map_or(0, Poly::ngens);
        self.chern.iter().fold(Poly::one(g), |acc, c| &acc + c)
    }
}

fn check_degree_two(p: &Poly) -> Result<(), ChernError> {
    if !p.is_zero() && p.homogeneous_exponent() != Some(1) {
        return Err(ChernError::NotDegreeTwo(p.to_string()));
    }
    Ok(())
}

/// `ξ ⊗ γ` for a rank-2 `ξ` and a line bundle with `c_1(γ) = gamma_c1`:
///
/// ```text
/// c_1(ξ⊗γ) = c_1(ξ) + 2 c_1(γ)
/// c_2(ξ⊗γ) = c_1(γ)^2 + c_1(γ) c_1(ξ) + c_2(ξ)
/// ```
///
/// The projectivization does not change, so `alpha` is carried through.
pub fn tensor_line(
    base: &RingPresentation,
    xi: &BundleDescriptor,
    gamma_c1: &Poly,
) -> Result<BundleDescriptor, ChernError> {
    if xi.rank != 2 {
        return Err(ChernError::RankNotTwo(xi.rank));
    }
    check_degree_two(gamma_c1)?;
    let two = BigInt::from(2);
    let c1 = xi.c(1).checked_add(&gamma_c1.scale(&two))?;
    let c2 = &(&gamma_c1.checked_mul(gamma_c1)? + &gamma_c1.checked_mul(xi.c(1))?) + xi.c(2);
    Ok(BundleDescriptor { rank: 2, chern: vec![base.normal_form(&c1), base.normal_form(&c2)], alpha: xi.alpha })
}

/// Twists a rank-2 bundle so that every coordinate of `c_1` lies in `{0, 1}`.
/// Returns the twisted descriptor and the `c_1` of the line bundle used.
pub fn normalize_first_chern(
    base: &RingPresentation,
    xi: &BundleDescriptor,
) -> Result<(BundleDescriptor, Poly), ChernError> {
    if xi.rank != 2 {
        return Err(ChernError::RankNotTwo(xi.rank));
    }
    let shift_coords: Vec<BigInt> =
        base.linear_coords(xi.c(1)).into_iter().map(|a| -a.div_floor(&BigInt::from(2))).collect();
    let shift = if shift_coords.is_empty() { Poly::zero(0) } else { Poly::linear(shift_coords) };
    let twisted = tensor_line(base, xi, &shift)?;
    Ok((twisted, shift))
}

/// Whitney sum of line bundles with the given first Chern classes:
/// `c_i` is the `i`-th elementary symmetric polynomial of the entries.
pub fn whitney_sum_of_lines(base: &RingPresentation, c1s: &[Poly]) -> Result<BundleDescriptor, ChernError> {
    if c1s.is_empty() {
        return Err(ChernError::EmptySum);
    }
    let g = base.ngens();
    // e[i] = i-th elementary symmetric function of the roots seen so far
    let mut e = vec![Poly::one(g)];
    for root in c1s {
        if root.ngens() != g {
            return Err(crate::error::PolyError::GeneratorMismatch { left: g, right: root.ngens() }.into());
        }
        check_degree_two(root)?;
        let mut next = e.clone();
        next.push(Poly::zero(g));
        for i in 1..next.len() {
            next[i] = base.normal_form(&(&next[i] + &(root * &e[i - 1])));
        }
        e = next;
    }
    Ok(BundleDescriptor { rank: c1s.len(), chern: e.split_off(1), alpha: None })
}

/// The Milnor hypersurface `H_{i,j} ⊂ CP^i × CP^j` as the tower
/// `P(γ^⊥) -> CP^i`, where `γ^⊥ ⊂ ε^{j+1}` is the complement of the
/// tautological line. From `c(γ) c(γ^⊥) = 1` with `x = c_1(γ)`,
/// `c(γ^⊥) = Σ_q (-x)^q`, truncated at rank `j` and reduced in `H^*(CP^i)`.
pub fn dual_complement_of_tautological(i: i64, j: i64) -> Result<TowerSpec, ChernError> {
    if i < 1 || i > j {
        return Err(ChernError::MilnorIndices { i, j });
    }
    if j == 1 {
        return Err(ChernError::MilnorPointFiber { i, j });
    }
    let base_dim = u32::try_from(i).map_err(|_| ChernError::MilnorIndices { i, j })?;
    let rank = u32::try_from(j).map_err(|_| ChernError::MilnorIndices { i, j })?;
    let minus_x = Poly::linear([-1]);
    let chern = (1..=rank).map(|q| if q <= base_dim { minus_x.pow(q) } else { Poly::zero(1) }).collect();
    Ok(TowerSpec::new(vec![Stage::trivial(base_dim), Stage::new(rank - 1, chern)]))
}

/// Generator order of the auxiliary ring returned by
/// [`splitting_oracle_tensor`]: `Z[e1, e2, s]`.
pub const ORACLE_E1: usize = 0;
pub const ORACLE_E2: usize = 1;
pub const ORACLE_S: usize = 2;

/// Chern classes of `ξ ⊗ γ` through the splitting principle.
///
/// With formal roots `t1, t2` of `ξ` and `s = c_1(γ)`, expand
/// `(1 + t1 + s)(1 + t2 + s)` in `Z[t1, t2, s]`, take the degree-1 and
/// degree-2 parts and rewrite them, as symmetric functions of `t1, t2`,
/// in `e1 = t1 + t2`, `e2 = t1 t2` and `s`. The answer lives in
/// `Z[e1, e2, s]` (see [`ORACLE_E1`] etc.).
pub fn splitting_oracle_tensor() -> (Poly, Poly) {
    let (t1, t2, s) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
    let one = Poly::one(3);
    let total = &(&(&one + &t1) + &s) * &(&(&one + &t2) + &s);
    let part = |d: u32| {
        let mut p = Poly::zero(3);
        for (m, c) in total.terms() {
            if m.total_exponent() == d {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    };
    (symmetric_to_elementary(&part(1)), symmetric_to_elementary(&part(2)))
}

/// Rewrites a polynomial in `Z[t1, t2, s]`, symmetric in `t1, t2`, in terms
/// of `e1, e2, s` by repeatedly cancelling the term with the largest
/// `(a, b)` exponent pair on `(t1, t2)`.
fn symmetric_to_elementary(p: &Poly) -> Poly {
    let e1_t = &Poly::var(3, 0) + &Poly::var(3, 1);
    let e2_t = &Poly::var(3, 0) * &Poly::var(3, 1);
    let mut rest = p.clone();
    let mut out = Poly::zero(3);
    while let Some((mono, c)) = rest
        .terms()
        .max_by(|(a, _), (b, _)| {
            let ka = (a.exps()[0], a.exps()[1], a.exps()[2]);
            let kb = (b.exps()[0], b.exps()[1], b.exps()[2]);
            ka.cmp(&kb)
        })
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        let (a, b, k) = (mono.exps()[0], mono.exps()[1], mono.exps()[2]);
        assert!(a >= b, "input is not symmetric in t1, t2");
        let s_pow = Poly::term(3, Monomial::var_pow(3, 2, k), 1);
        let expanded = &(&e1_t.pow(a - b) * &e2_t.pow(b)) * &s_pow;
        rest = &rest - &expanded.scale(&c);
        let target = Monomial::new(vec![a - b, b, k]);
        out.add_term(target, c);
    }
    out
}

/// Evaluates an oracle answer in a base ring: `e1 ↦ c_1(ξ)`,
/// `e2 ↦ c_2(ξ)`, `s ↦ c_1(γ)`.
pub fn evaluate_oracle(
    base: &RingPresentation,
    oracle: &Poly,
    c1: &Poly,
    c2: &Poly,
    gamma_c1: &Poly,
) -> Result<Poly, ChernError> {
    let mut images = vec![Poly::zero(base.ngens()); 3];
    images[ORACLE_E1] = c1.clone();
    images[ORACLE_E2] = c2.clone();
    images[ORACLE_S] = gamma_c1.clone();
    Ok(base.normal_form(&oracle.substitute(&images)?))
}

impl BundleDescriptor {
    /// True when `c_1` has an odd coordinate.
    pub fn first_chern_is_odd(&self) -> bool {
        is_odd_class(&self.chern[0])
    }
}

/// The trivial bundle of the given rank.
pub fn trivial_bundle(base: &RingPresentation, rank: usize) -> BundleDescriptor {
    BundleDescriptor { rank, chern: vec![Poly::zero(base.ngens()); rank], alpha: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    fn cp(n: u32) -> RingPresentation {
        TowerSpec::projective_space(n).presentation().unwrap()
    }

    fn rank2(base: &RingPresentation, c1: &str, c2: &str) -> BundleDescriptor {
        let g = base.ngens();
        BundleDescriptor::new(base, 2, vec![p(c1, g), p(c2, g)], None).unwrap()
    }

    #[test]
    fn tensor_examples() {
        let cp2 = cp(2);
        let out = tensor_line(&cp2, &rank2(&cp2, "0", "5*x^2"), &p("x", 1)).unwrap();
        assert_eq!(out.chern, vec![p("2*x", 1), p("6*x^2", 1)]);

        let out = tensor_line(&cp2, &rank2(&cp2, "3*x", "-4*x^2"), &p("-x", 1)).unwrap();
        assert_eq!(out.chern, vec![p("x", 1), p("-6*x^2", 1)]);

        let xi = rank2(&cp2, "3*x", "5*x^2");
        assert_eq!(tensor_line(&cp2, &xi, &Poly::zero(1)).unwrap(), xi);
    }

    #[test]
    fn tensor_rejects_other_ranks() {
        let cp1 = cp(1);
        let xi = whitney_sum_of_lines(&cp1, &[p("x", 1), Poly::zero(1), Poly::zero(1)]).unwrap();
        assert_eq!(tensor_line(&cp1, &xi, &p("x", 1)).unwrap_err(), ChernError::RankNotTwo(3));
        let l = rank2(&cp1, "x", "0");
        assert!(matches!(tensor_line(&cp1, &l, &p("1", 1)), Err(ChernError::NotDegreeTwo(_))));
    }

    #[test]
    fn normalization_reports_shift() {
        let cp2 = cp(2);
        let (out, shift) = normalize_first_chern(&cp2, &rank2(&cp2, "3*x", "5*x^2")).unwrap();
        assert_eq!(shift, p("-x", 1));
        assert_eq!(out.chern, vec![p("x", 1), p("3*x^2", 1)]);

        let (out, shift) = normalize_first_chern(&cp2, &rank2(&cp2, "-3*x", "0")).unwrap();
        assert_eq!(shift, p("2*x", 1));
        assert_eq!(out.c(1), &p("x", 1));
    }

    #[test]
    fn whitney_examples() {
        let cp1 = cp(1);
        let h = whitney_sum_of_lines(&cp1, &[p("4*x", 1), Poly::zero(1)]).unwrap();
        assert_eq!((h.rank, h.chern.clone()), (2, vec![p("4*x", 1), Poly::zero(1)]));

        let g = whitney_sum_of_lines(&cp1, &[p("x", 1), Poly::zero(1), Poly::zero(1)]).unwrap();
        assert_eq!(g.chern, vec![p("x", 1), Poly::zero(1), Poly::zero(1)]);

        let cp3 = cp(3);
        let ab = whitney_sum_of_lines(&cp3, &[p("2*x", 1), p("-3*x", 1)]).unwrap();
        assert_eq!(ab.chern, vec![p("-x", 1), p("-6*x^2", 1)]);

        assert_eq!(whitney_sum_of_lines(&cp1, &[]).unwrap_err(), ChernError::EmptySum);
    }

    #[test]
    fn milnor_examples() {
        let h12 = dual_complement_of_tautological(1, 2).unwrap().presentation().unwrap();
        assert_eq!(h12.relations(), &[p("x^2", 2), p("y^2 + x*y", 2)]);
        let h22 = dual_complement_of_tautological(2, 2).unwrap().presentation().unwrap();
        assert_eq!(h22.relations(), &[p("x^3", 2), p("y^2 + x*y + x^2", 2)]);
        assert!(matches!(dual_complement_of_tautological(1, 1), Err(ChernError::MilnorPointFiber { .. })));
        assert!(matches!(dual_complement_of_tautological(3, 2), Err(ChernError::MilnorIndices { .. })));
        assert!(matches!(dual_complement_of_tautological(0, 2), Err(ChernError::MilnorIndices { .. })));
    }

    #[test]
    fn oracle_formulas() {
        let (c1, c2) = splitting_oracle_tensor();
        // e1 + 2s and e2 + e1 s + s^2 in Z[e1, e2, s]
        assert_eq!(c1, p("x + 2*z", 3));
        assert_eq!(c2, p("y + x*z + z^2", 3));
        // s = 0 collapses to (e1, e2)
        let zero_s = [Poly::var(3, 0), Poly::var(3, 1), Poly::zero(3)];
        assert_eq!(c1.substitute(&zero_s).unwrap(), Poly::var(3, 0));
        assert_eq!(c2.substitute(&zero_s).unwrap(), Poly::var(3, 1));
    }

    #[test]
    fn alpha_rules() {
        let cp3 = cp(3);
        let even = BundleDescriptor::new(&cp3, 2, vec![p("2*x", 1), p("x^2", 1)], Some(1)).unwrap();
        assert_eq!(even.alpha, Some(1));
        assert_eq!(
            BundleDescriptor::new(&cp3, 2, vec![p("x", 1), p("x^2", 1)], Some(1)).unwrap_err(),
            ChernError::AlphaOddFirstChern
        );
        assert!(BundleDescriptor::new(&cp3, 2, vec![p("x", 1)], Some(0)).is_ok());
        assert_eq!(BundleDescriptor::new(&cp(2), 2, vec![], Some(0)).unwrap_err(), ChernError::AlphaNotApplicable);
        let twisted = tensor_line(&cp3, &even, &p("x", 1)).unwrap();
        assert_eq!(twisted.alpha, Some(1));
    }
}
