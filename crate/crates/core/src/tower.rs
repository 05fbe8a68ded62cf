//! Cohomology rings of CP-towers.
//!
//! A tower `C_m -> … -> C_1 -> point` with `C_k = P(ξ_{k-1})` and fiber
//! `CP^{n_k}` has integral cohomology
//!
//! ```text
//! Z[x_1, …, x_m] / ( x_k^{n_k+1} + Σ_{i=1}^{n_k+1} (-1)^i c_i(ξ_{k-1}) x_k^{n_k+1-i} )
//! ```
//!
//! with every `x_k` in degree 2. Because `c_i(ξ_{k-1})` only involves
//! `x_1 … x_{k-1}`, each relation can be solved for its leading power
//! `x_k^{n_k+1}` and the quotient is a free module on the monomials with
//! `a_k <= n_k`. [`RingPresentation::normal_form`] rewrites into that basis.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::TowerError;
use crate::matrix::IntMatrix;
use crate::poly::{Monomial, Poly};

/// One projectivization step: fiber `CP^{fiber_dim}` of `P(ξ)` where `ξ`
/// has rank `fiber_dim + 1` and the listed Chern classes (missing trailing
/// classes are zero).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stage {
    pub fiber_dim: u32,
    pub chern: Vec<Poly>,
}

impl Stage {
    pub fn new(fiber_dim: u32, chern: Vec<Poly>) -> Self {
        Stage { fiber_dim, chern }
    }

    /// A stage whose bundle is trivial.
    pub fn trivial(fiber_dim: u32) -> Self {
        Stage { fiber_dim, chern: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.fiber_dim as usize + 1
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerSpec {
    pub stages: Vec<Stage>,
}

impl TowerSpec {
    pub fn new(stages: Vec<Stage>) -> Self {
        TowerSpec { stages }
    }

    /// `CP^n` as a one-stage tower.
    pub fn projective_space(n: u32) -> Self {
        TowerSpec { stages: vec![Stage::trivial(n)] }
    }

    pub fn ngens(&self) -> usize {
        self.stages.len()
    }

    /// Real dimension, `2 Σ n_k`.
    pub fn real_dimension(&self) -> u32 {
        2 * self.stages.iter().map(|s| s.fiber_dim).sum::<u32>()
    }

    /// Checks the stage invariants and returns each stage's Chern classes
    /// embedded in the full ambient, padded with zeros up to the rank.
    ///
    /// A Chern class may be given either over the base generators
    /// `x_1 … x_{k-1}` or over all `m` generators of the tower.
    fn normalized_chern(&self) -> Result<Vec<Vec<Poly>>, TowerError> {
        if self.stages.is_empty() {
            return Err(TowerError::Empty);
        }
        let g = self.ngens();
        let mut out = Vec::with_capacity(g);
        for (k, stage) in self.stages.iter().enumerate() {
            let stage_no = k + 1;
            if stage.fiber_dim == 0 {
                return Err(TowerError::DegenerateFiber { stage: stage_no });
            }
            let rank = stage.rank();
            if stage.chern.len() > rank {
                return Err(TowerError::TooManyChernClasses { stage: stage_no, found: stage.chern.len(), rank });
            }
            let mut classes = Vec::with_capacity(rank);
            for (i, c) in stage.chern.iter().enumerate() {
                let index = i + 1;
                let full = if c.ngens() == g {
                    c.clone()
                } else if c.ngens() == k {
                    c.embed(g)
                } else {
                    return Err(TowerError::ChernAmbient { stage: stage_no, index, found: c.ngens(), expected: g });
                };
                if let Some(top) = full.max_generator() {
                    if top >= k {
                        return Err(TowerError::ForwardReference { stage: stage_no, generator: top + 1 });
                    }
                }
                if !full.is_zero() && full.homogeneous_exponent() != Some(index as u32) {
                    return Err(TowerError::Inhomogeneous { stage: stage_no, index });
                }
                classes.push(full);
            }
            classes.resize(rank, Poly::zero(g));
            out.push(classes);
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), TowerError> {
        self.normalized_chern().map(|_| ())
    }

    /// The quotient presentation of the tower's cohomology ring.
    pub fn presentation(&self) -> Result<RingPresentation, TowerError> {
        let chern = self.normalized_chern()?;
        let g = self.ngens();
        let caps: Vec<u32> = self.stages.iter().map(|s| s.fiber_dim).collect();
        let mut pres = RingPresentation { caps: Vec::new(), relations: Vec::new(), tails: Vec::new() };
        for (k, classes) in chern.into_iter().enumerate() {
            let n = caps[k];
            let lead = Monomial::var_pow(g, k, n + 1);
            // tail = Σ_i (-1)^{i+1} c_i x_k^{n+1-i}, so that x_k^{n+1} = tail
            let mut tail = Poly::zero(g);
            for (i, c) in classes.iter().enumerate() {
                let i = i + 1;
                // c lives in earlier generators only; reduce it there
                let c = pres.partial_normal_form(c, k);
                let power = Monomial::var_pow(g, k, n + 1 - i as u32);
                let term = c.mul_monomial(&power);
                tail = if i % 2 == 1 { &tail + &term } else { &tail - &term };
            }
            let relation = &Poly::term(g, lead, 1) - &tail;
            pres.caps.push(n);
            pres.relations.push(relation);
            pres.tails.push(tail);
        }
        Ok(pres)
    }
}

/// Rewriting presentation `Z[x_1..x_g] / (relations)` where relation `k`
/// has leading monomial `x_k^{caps[k]+1}` with coefficient 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingPresentation {
    caps: Vec<u32>,
    relations: Vec<Poly>,
    /// `x_k^{caps[k]+1} ≡ tails[k]` modulo the relations.
    tails: Vec<Poly>,
}

/// Ranks `b_0, b_2, …, b_{2d}` of the graded pieces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PoincarePoly {
    pub betti: Vec<usize>,
}

impl PoincarePoly {
    pub fn total_rank(&self) -> usize {
        self.betti.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.betti.iter().eq(self.betti.iter().rev())
    }
}

impl std::fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.betti.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl RingPresentation {
    /// Builds a presentation from explicit relations, checking that each
    /// relation `k` is monic in `x_k^{caps[k]+1}` with a tail that only
    /// uses `x_1 … x_k`, keeps `x_k` below that power and is homogeneous.
    pub fn from_relations(caps: Vec<u32>, relations: Vec<Poly>) -> Result<Self, TowerError> {
        let g = caps.len();
        if g == 0 {
            return Err(TowerError::Empty);
        }
        if relations.len() != g {
            return Err(TowerError::Ambient { expected: g, found: relations.len() });
        }
        let mut tails = Vec::with_capacity(g);
        for (k, rel) in relations.iter().enumerate() {
            if rel.ngens() != g {
                return Err(TowerError::Ambient { expected: g, found: rel.ngens() });
            }
            let n = caps[k];
            if n == 0 {
                return Err(TowerError::DegenerateFiber { stage: k + 1 });
            }
            let lead = Monomial::var_pow(g, k, n + 1);
            let bad = || TowerError::Inhomogeneous { stage: k + 1, index: n as usize + 1 };
            if rel.coeff(&lead) != BigInt::one() || rel.homogeneous_exponent() != Some(n + 1) {
                return Err(bad());
            }
            let tail = &Poly::term(g, lead.clone(), 1) - rel;
            for (m, _) in tail.terms() {
                if let Some(top) = m.max_generator() {
                    if top > k {
                        return Err(TowerError::ForwardReference { stage: k + 1, generator: top + 1 });
                    }
                }
                if m.exps()[k] > n {
                    return Err(bad());
                }
            }
            tails.push(tail);
        }
        Ok(RingPresentation { caps, relations, tails })
    }

    pub fn ngens(&self) -> usize {
        self.caps.len()
    }

    /// Maximal reduced exponents `(n_1, …, n_g)`.
    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// Cohomological degree of the fundamental class, `2 Σ n_k`.
    pub fn top_degree(&self) -> u32 {
        2 * self.caps.iter().sum::<u32>()
    }

    pub fn top_monomial(&self) -> Monomial {
        Monomial::new(self.caps.clone())
    }

    /// Number of reduced basis monomials, `Π (n_k + 1)`.
    pub fn rank(&self) -> usize {
        self.caps.iter().map(|&n| n as usize + 1).product()
    }

    /// Unique representative on the reduced monomial basis.
    ///
    /// The largest term is always rewritten first. Rewriting `x_k^{n_k+1}`
    /// by its tail strictly lowers the monomial in the graded order (the
    /// tail has the same degree, a smaller power of `x_k`, and no later
    /// generators), so every new term is smaller than the term being
    /// processed and the loop terminates. Distinct relations have distinct
    /// leading monomials in disjoint variables, which makes the result
    /// independent of rewriting order.
    ///
    /// Panics if `p` lives in a different number of generators.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert_eq!(p.ngens(), self.ngens(), "polynomial ambient does not match presentation");
        self.partial_normal_form(p, self.ngens())
    }

    /// Normal form using only the first `upto` relations.
    fn partial_normal_form(&self, p: &Poly, upto: usize) -> Poly {
        let g = p.ngens();
        let mut work = p.clone();
        let mut done = Poly::zero(g);
        while let Some((mono, c)) = work.pop_last() {
            let offending = (0..upto).rev().find(|&k| mono.exps()[k] > self.caps[k]);
            match offending {
                None => done.insert_nonzero(mono, c),
                Some(k) => {
                    let lead = Monomial::var_pow(g, k, self.caps[k] + 1);
                    let rest = mono.checked_div(&lead).expect("offending exponent divides");
                    for (tm, tc) in self.tails[k].terms() {
                        work.add_term(rest.mul(tm), &c * tc);
                    }
                }
            }
        }
        done
    }

    /// Product in the quotient.
    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.normal_form(&(a * b))
    }

    pub fn is_reduced(&self, p: &Poly) -> bool {
        p.terms().all(|(m, _)| m.exps().iter().zip(&self.caps).all(|(e, n)| e <= n))
    }

    /// Reduced basis monomials of cohomological degree `degree`, ascending.
    pub fn graded_basis(&self, degree: u32) -> Vec<Monomial> {
        if degree % 2 == 1 || degree > self.top_degree() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.ngens()];
        self.fill_basis(0, degree / 2, &mut exps, &mut out);
        out.sort();
        out
    }

    fn fill_basis(&self, k: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == self.ngens() {
            if remaining == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        for e in 0..=self.caps[k].min(remaining) {
            exps[k] = e;
            self.fill_basis(k + 1, remaining - e, exps, out);
        }
        exps[k] = 0;
    }

    /// Every reduced basis monomial, ascending.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut all: Vec<Monomial> = (0..=self.top_degree()).step_by(2).flat_map(|d| self.graded_basis(d)).collect();
        all.sort();
        all
    }

    pub fn poincare(&self) -> PoincarePoly {
        let betti = (0..=self.top_degree()).step_by(2).map(|d| self.graded_basis(d).len()).collect();
        PoincarePoly { betti }
    }

    /// Intersection pairing `H^{degree} x H^{D-degree} -> H^D = Z`, read
    /// against the single top-degree basis monomial.
    pub fn top_pairing_matrix(&self, degree: u32) -> Option<IntMatrix> {
        if degree % 2 == 1 || degree > self.top_degree() {
            return None;
        }
        let rows = self.graded_basis(degree);
        let cols = self.graded_basis(self.top_degree() - degree);
        let top = self.top_monomial();
        let g = self.ngens();
        let matrix = rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| {
                        let prod = Poly::term(g, r.mul(c), 1);
                        self.normal_form(&prod).coeff(&top)
                    })
                    .collect()
            })
            .collect();
        Some(IntMatrix::from_rows(matrix))
    }

    /// True if every pairing matrix is unimodular.
    pub fn satisfies_duality(&self) -> bool {
        (0..=self.top_degree()).step_by(2).all(|d| self.top_pairing_matrix(d).is_some_and(|m| m.is_unimodular()))
    }

    /// Coordinates of a degree-2 element against `x_1 … x_g`.
    pub fn linear_coords(&self, p: &Poly) -> Vec<BigInt> {
        (0..self.ngens()).map(|k| p.coeff(&Monomial::var_pow(self.ngens(), k, 1))).collect()
    }
}

impl Default for PoincarePoly {
    fn default() -> Self {
        PoincarePoly { betti: vec![1] }
    }
}

/// `Σ_d betti_d` must equal the product of `(n_k + 1)`; handy in checks.
pub fn expected_poincare(caps: &[u32]) -> PoincarePoly {
    let mut coeffs = vec![1usize];
    for &n in caps {
        let mut next = vec![0usize; coeffs.len() + n as usize];
        for (i, c) in coeffs.iter().enumerate() {
            for j in 0..=n as usize {
                next[i + j] += c;
            }
        }
        coeffs = next;
    }
    PoincarePoly { betti: coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    fn pres(caps: &[u32], rels: &[&str]) -> RingPresentation {
        let g = caps.len();
        RingPresentation::from_relations(caps.to_vec(), rels.iter().map(|r| p(r, g)).collect()).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn cp3_presentation() {
        let pr = TowerSpec::projective_space(3).presentation().unwrap();
        assert_eq!(pr.relations(), &[p("x^4", 1)]);
        assert_eq!(pr.poincare().betti, vec![1, 1, 1, 1]);
        assert!(pr.graded_basis(8).is_empty());
    }

    #[test]
    fn two_stage_over_cp2() {
        // c1 = 0, c2 = alpha X^2
        for alpha in [-3i64, 0, 2, 5] {
            let spec = TowerSpec::new(vec![
                Stage::trivial(2),
                Stage::new(1, vec![Poly::zero(1), p(&format!("{alpha}*x^2"), 1)]),
            ]);
            let pr = spec.presentation().unwrap();
            assert_eq!(pr.relations()[0], p("x^3", 2));
            assert_eq!(pr.relations()[1], p(&format!("y^2 + {alpha}*x^2"), 2));
        }
    }

    #[test]
    fn three_stage_over_h1() {
        let (s, r, beta) = (1, -1, 4);
        let spec = TowerSpec::new(vec![
            Stage::trivial(1),
            Stage::new(1, vec![p("-x", 1)]),
            Stage::new(1, vec![p(&format!("{}*x + {}*y", -s, -r), 2), p(&format!("{beta}*x*y"), 2)]),
        ]);
        let pr = spec.presentation().unwrap();
        assert_eq!(pr.relations(), &[p("x^2", 3), p("y^2 + x*y", 3), p("z^2 + z*x - z*y + 4*x*y", 3)]);
    }

    #[test]
    fn normal_form_examples() {
        let eta = pres(&[2, 1], &["x^3", "y^2 + 2*x^2"]);
        assert_eq!(eta.normal_form(&p("y^2", 2)), p("-2*x^2", 2));

        let h2 = pres(&[1, 1], &["x^2", "y^2 + 2*x*y"]);
        assert!(h2.normal_form(&p("x + y", 2).pow(2)).is_zero());

        let h0 = pres(&[1, 1], &["x^2", "y^2"]);
        assert!(h0.normal_form(&p("x^2*y", 2)).is_zero());
    }

    #[test]
    fn normal_form_chains_through_earlier_relations() {
        // y^2 = -x*y in H1; y^3 = -x*y^2 = x^2*y = 0
        let h1 = pres(&[1, 1], &["x^2", "y^2 + x*y"]);
        assert_eq!(h1.normal_form(&p("y^2", 2)), p("-x*y", 2));
        assert!(h1.normal_form(&p("y^3", 2)).is_zero());
    }

    #[test]
    fn graded_basis_examples() {
        let eta = pres(&[2, 1], &["x^3", "y^2 + 7*x^2"]);
        assert_eq!(eta.graded_basis(4), vec![mono(&[2, 0]), mono(&[1, 1])]);
        let h0 = pres(&[1, 1, 1], &["x^2", "y^2", "z^2"]);
        assert_eq!(h0.graded_basis(2), vec![mono(&[1, 0, 0]), mono(&[0, 1, 0]), mono(&[0, 0, 1])]);
        assert!(h0.graded_basis(3).is_empty());
    }

    #[test]
    fn poincare_examples() {
        let three = pres(&[1, 1, 1], &["x^2", "y^2 + x*y", "z^2 + x*z"]);
        assert_eq!(three.poincare().betti, vec![1, 3, 3, 1]);
        assert_eq!(expected_poincare(&[1, 1, 1]).betti, vec![1, 3, 3, 1]);
        let a = pres(&[2, 1], &["x^3", "y^2"]);
        let b = pres(&[1, 2], &["x^2", "y^3"]);
        assert_eq!(a.poincare(), b.poincare());
        assert_eq!(a.poincare().betti, vec![1, 2, 2, 1]);
    }

    #[test]
    fn pairing_examples() {
        let h0 = pres(&[1, 1], &["x^2", "y^2"]);
        assert_eq!(h0.top_pairing_matrix(2).unwrap(), IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]));
        let h1 = pres(&[1, 1], &["x^2", "y^2 + x*y"]);
        assert_eq!(h1.top_pairing_matrix(2).unwrap(), IntMatrix::from_i64(&[vec![0, 1], vec![1, -1]]));
        let cp3 = pres(&[3], &["x^4"]);
        assert_eq!(cp3.top_pairing_matrix(2).unwrap(), IntMatrix::from_i64(&[vec![1]]));
        assert!(cp3.top_pairing_matrix(8).is_none());
        assert!(h1.satisfies_duality());
    }

    #[test]
    fn relations_reduce_to_zero() {
        let pr = pres(&[1, 1, 1], &["x^2", "y^2 + x*y", "z^2 + 3*x*z - 2*y*z + 5*x*y"]);
        for r in pr.relations() {
            assert!(pr.normal_form(r).is_zero());
        }
    }

    #[test]
    fn spec_errors() {
        let fwd = TowerSpec::new(vec![Stage::trivial(1), Stage::new(1, vec![p("z", 3)]), Stage::trivial(1)]);
        let err = fwd.presentation().unwrap_err();
        assert_eq!(err, TowerError::ForwardReference { stage: 2, generator: 3 });
        assert_eq!(err.to_string(), "stage 2 chern references generator 3");

        let inhom = TowerSpec::new(vec![Stage::trivial(2), Stage::new(1, vec![p("x^2", 1)])]);
        assert_eq!(inhom.presentation().unwrap_err(), TowerError::Inhomogeneous { stage: 2, index: 1 });

        let degenerate = TowerSpec::new(vec![Stage::trivial(1), Stage::trivial(0)]);
        assert_eq!(degenerate.validate().unwrap_err(), TowerError::DegenerateFiber { stage: 2 });

        let too_many = TowerSpec::new(vec![Stage::new(1, vec![Poly::zero(0); 3])]);
        assert!(matches!(too_many.validate(), Err(TowerError::TooManyChernClasses { .. })));

        assert_eq!(TowerSpec::new(vec![]).validate(), Err(TowerError::Empty));
    }

    #[test]
    fn chern_classes_are_stored_reduced() {
        // over CP^1, c2 = x^2 reduces to zero
        let spec = TowerSpec::new(vec![Stage::trivial(1), Stage::new(1, vec![p("x", 1), p("x^2", 1)])]);
        let pr = spec.presentation().unwrap();
        assert_eq!(pr.relations()[1], p("y^2 - x*y", 2));
    }

    #[test]
    fn from_relations_rejects_non_tower_input() {
        assert!(RingPresentation::from_relations(vec![1, 1], vec![p("x^2", 2), p("2*y^2", 2)]).is_err());
        assert!(RingPresentation::from_relations(vec![1, 1], vec![p("x^2 + x*y", 2), p("y^2", 2)]).is_err());
        assert!(RingPresentation::from_relations(vec![1, 1], vec![p("x^2", 2), p("y^2 + x", 2)]).is_err());
    }
}
