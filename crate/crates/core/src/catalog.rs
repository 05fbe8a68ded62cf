//! Named tower families of dimension at most 8, the known coincidences
//! between them, `π_6` bookkeeping for the 8-dimensional family, and the
//! classification sweeps.
//!
//! Presentations use the rewriting convention of [`crate::tower`]:
//! a stage with Chern classes `c_i` contributes the relation
//! `x^{n+1} - c_1 x^n + c_2 x^{n-1} - …`. The constructors below pick
//! the classes so that the relations read exactly as the families are
//! usually written, e.g. `Eta2(s, α)` gives `{X^3, Y^2 + s XY + α X^2}`.
//! Flipping the sign of `c_1` of a rank-2 bundle does not change its
//! projectivization (it is the dual bundle up to a twist), so nothing is
//! lost by this choice.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::chern::BundleDescriptor;
use crate::error::CatalogError;
use crate::iso::{self, IsoCertificate, NoneReason, SearchVerdict};
use crate::poly::Poly;
use crate::tower::{PoincarePoly, RingPresentation, Stage, TowerSpec};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FamilyId {
    /// `CP^3`.
    Cp3,
    /// `P(γ^k ⊕ ε ⊕ ε) -> CP^1`.
    Gb2(i64),
    /// `P(η_{(s,α)}) -> CP^2`.
    Eta2 { s: i64, alpha: i64 },
    /// `P(η_{(s,r,α)}) -> H_0 = CP^1 × CP^1`.
    Zeta3 { s: i64, r: i64, alpha: i64 },
    /// `P(ξ_{(s,r,β)}) -> H_1`, the nontrivial Hirzebruch surface.
    Xi3 { s: i64, r: i64, beta: i64 },
    /// `M_α(u)`: rank 2 over `CP^3` with `c_1 = 0`, `c_2 = u x^2` and
    /// Atiyah–Rees invariant `α`.
    M8 { alpha: i64, u: i64 },
    /// `N(u)`: rank 2 over `CP^3` with odd `c_1`.
    N8(i64),
}

impl FamilyId {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyId::Cp3 => "CP3",
            FamilyId::Gb2(_) => "GB2",
            FamilyId::Eta2 { .. } => "Eta2",
            FamilyId::Zeta3 { .. } => "Zeta3",
            FamilyId::Xi3 { .. } => "Xi3",
            FamilyId::M8 { .. } => "M8",
            FamilyId::N8(_) => "N8",
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            FamilyId::Cp3 => vec![],
            FamilyId::Gb2(k) => vec![k],
            FamilyId::Eta2 { s, alpha } => vec![s, alpha],
            FamilyId::Zeta3 { s, r, alpha } => vec![s, r, alpha],
            FamilyId::Xi3 { s, r, beta } => vec![s, r, beta],
            FamilyId::M8 { alpha, u } => vec![alpha, u],
            FamilyId::N8(u) => vec![u],
        }
    }

    /// Whether the id names a member of the canonical (pairwise distinct)
    /// list for its dimension.
    pub fn in_canonical_domain(&self) -> bool {
        match *self {
            FamilyId::Cp3 => true,
            FamilyId::Gb2(k) => (0..=2).contains(&k),
            FamilyId::Eta2 { s: 0, alpha } => alpha != 0,
            FamilyId::Eta2 { s: 1, .. } => true,
            FamilyId::Zeta3 { s: 0, r: 0, alpha } | FamilyId::Zeta3 { s: 1, r: 0, alpha } => alpha >= 0,
            FamilyId::Zeta3 { s: 1, r: 1, alpha } => alpha >= 1,
            FamilyId::Xi3 { s: 0, r: 0, beta } => beta >= 1,
            FamilyId::Xi3 { s: 1, r: 0, beta } => beta >= 0,
            FamilyId::Xi3 { s: 0, r: 1, .. } => true,
            FamilyId::M8 { alpha, .. } => alpha == 0 || alpha == 1,
            FamilyId::N8(_) => true,
            _ => false,
        }
    }

    pub fn is_m8(&self) -> bool {
        matches!(self, FamilyId::M8 { .. })
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            return f.write_str(self.tag());
        }
        let joined: Vec<String> = params.iter().map(i64::to_string).collect();
        write!(f, "{}:{}", self.tag(), joined.join(","))
    }
}

impl FromStr for FamilyId {
    type Err = CatalogError;

    /// Parses `Tag` or `Tag:p1,p2,…`, e.g. `CP3`, `GB2:1`, `M8:0,2`.
    fn from_str(text: &str) -> Result<Self, CatalogError> {
        let text = text.trim();
        let (tag, rest) = match text.split_once(':') {
            Some((t, r)) => (t.trim(), Some(r)),
            None => (text, None),
        };
        let params: Vec<i64> = match rest {
            None => Vec::new(),
            Some(r) => r
                .split(',')
                .map(|p| p.trim().parse::<i64>().map_err(|_| CatalogError::BadParameter(p.trim().to_string())))
                .collect::<Result<_, _>>()?,
        };
        let expected = match tag {
            "CP3" => 0,
            "GB2" | "N8" => 1,
            "Eta2" | "M8" => 2,
            "Zeta3" | "Xi3" => 3,
            _ => return Err(CatalogError::UnknownFamily(tag.to_string())),
        };
        if params.len() != expected {
            return Err(CatalogError::Arity { family: tag.to_string(), expected, found: params.len() });
        }
        let p = &params;
        Ok(match tag {
            "CP3" => FamilyId::Cp3,
            "GB2" => FamilyId::Gb2(p[0]),
            "N8" => FamilyId::N8(p[0]),
            "Eta2" => FamilyId::Eta2 { s: p[0], alpha: p[1] },
            "M8" => FamilyId::M8 { alpha: p[0], u: p[1] },
            "Zeta3" => FamilyId::Zeta3 { s: p[0], r: p[1], alpha: p[2] },
            _ => FamilyId::Xi3 { s: p[0], r: p[1], beta: p[2] },
        })
    }
}

fn x(g: usize, k: usize) -> Poly {
    Poly::var(g, k)
}

fn c(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Rank-2 stage with `c_1 = -a`, `c_2 = b` over a base with `g` generators,
/// giving the relation `y^2 + a y + b`.
fn rank_two(a: Poly, b: Poly) -> Stage {
    Stage::new(1, vec![a.scale(&c(-1)), b])
}

/// The base surface `H_k = P(γ^k ⊕ ε) -> CP^1`, relations `{x^2, y^2 + k xy}`.
fn hirzebruch(k: i64) -> Vec<Stage> {
    vec![Stage::trivial(1), rank_two(x(1, 0).scale(&c(k)), Poly::zero(1))]
}

/// `H_k` on its own, as a two-stage tower.
pub fn hirzebruch_surface(k: i64) -> TowerSpec {
    TowerSpec::new(hirzebruch(k))
}

/// The tower of a family. Construction accepts any parameters; the
/// canonical domains only matter for sweeps.
pub fn build(family: &FamilyId) -> Result<TowerSpec, CatalogError> {
    Ok(match *family {
        FamilyId::Cp3 => TowerSpec::projective_space(3),
        FamilyId::Gb2(k) => TowerSpec::new(vec![Stage::trivial(1), Stage::new(2, vec![x(1, 0).scale(&c(-k))])]),
        FamilyId::Eta2 { s, alpha } => {
            let xx = x(1, 0);
            TowerSpec::new(vec![Stage::trivial(2), rank_two(xx.scale(&c(s)), xx.pow(2).scale(&c(alpha)))])
        }
        FamilyId::Zeta3 { s, r, alpha } | FamilyId::Xi3 { s, r, beta: alpha } => {
            let k = if matches!(family, FamilyId::Zeta3 { .. }) { 0 } else { 1 };
            let (a, b) = (x(2, 0), x(2, 1));
            let lin = &a.scale(&c(s)) + &b.scale(&c(r));
            let quad = (&a * &b).scale(&c(alpha));
            let mut stages = hirzebruch(k);
            stages.push(rank_two(lin, quad));
            TowerSpec::new(stages)
        }
        FamilyId::M8 { u, .. } => {
            TowerSpec::new(vec![Stage::trivial(3), rank_two(Poly::zero(1), x(1, 0).pow(2).scale(&c(u)))])
        }
        FamilyId::N8(u) => {
            let xx = x(1, 0);
            TowerSpec::new(vec![Stage::trivial(3), rank_two(xx.clone(), xx.pow(2).scale(&c(u)))])
        }
    })
}

pub fn presentation(family: &FamilyId) -> Result<RingPresentation, CatalogError> {
    Ok(build(family)?.presentation()?)
}

/// The bundle of the last stage, with its Atiyah–Rees tag for `M8`.
pub fn top_bundle(family: &FamilyId) -> Result<BundleDescriptor, CatalogError> {
    let spec = build(family)?;
    let (last, base_stages) = spec.stages.split_last().expect("catalog towers are nonempty");
    let base = if base_stages.is_empty() {
        RingPresentation::from_relations(Vec::new(), Vec::new())?
    } else {
        TowerSpec::new(base_stages.to_vec()).presentation()?
    };
    let alpha = match *family {
        FamilyId::M8 { alpha, .. } => {
            Some(u8::try_from(alpha).map_err(|_| CatalogError::Domain(format!("alpha = {alpha}")))?)
        }
        _ => None,
    };
    Ok(BundleDescriptor::new(&base, last.rank(), last.chern.clone(), alpha)?)
}

/// Which theorem-level list a sweep covers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Theorem {
    /// Every tower of dimension at most 6.
    Main,
    /// Two-stage towers of dimension 6.
    TwoStage,
    /// Three-stage towers of dimension 6.
    ThreeStage,
    /// Rank-2 bundles over `CP^3`.
    EightDim,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Main => "main",
            Theorem::TwoStage => "two-stage",
            Theorem::ThreeStage => "three-stage",
            Theorem::EightDim => "eight-dim",
        }
    }

    /// Whether a family belongs to the towers this theorem classifies.
    pub fn covers(self, f: &FamilyId) -> bool {
        use FamilyId::*;
        match self {
            Theorem::Main => !matches!(f, M8 { .. } | N8(_)),
            Theorem::TwoStage => matches!(f, Gb2(_) | Eta2 { .. }),
            Theorem::ThreeStage => matches!(f, Zeta3 { .. } | Xi3 { .. }),
            Theorem::EightDim => matches!(f, M8 { .. } | N8(_)),
        }
    }
}

impl FromStr for Theorem {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        match s {
            "main" => Ok(Theorem::Main),
            "two-stage" => Ok(Theorem::TwoStage),
            "three-stage" => Ok(Theorem::ThreeStage),
            "eight-dim" => Ok(Theorem::EightDim),
            _ => Err(CatalogError::UnknownFamily(s.to_string())),
        }
    }
}

fn two_stage(n: i64) -> Vec<FamilyId> {
    let mut out: Vec<FamilyId> = (0..=2).map(FamilyId::Gb2).collect();
    for s in 0..=1 {
        out.extend((-n..=n).map(|alpha| FamilyId::Eta2 { s, alpha }));
    }
    out.retain(FamilyId::in_canonical_domain);
    out
}

fn three_stage(n: i64) -> Vec<FamilyId> {
    let mut out = Vec::new();
    for (s, r) in [(0, 0), (1, 0), (1, 1)] {
        out.extend((-n..=n).map(|alpha| FamilyId::Zeta3 { s, r, alpha }));
    }
    for (s, r) in [(0, 0), (1, 0), (0, 1)] {
        out.extend((-n..=n).map(|beta| FamilyId::Xi3 { s, r, beta }));
    }
    out.retain(FamilyId::in_canonical_domain);
    out
}

/// The canonical list restricted to parameters in `[-n, n]`.
///
/// For `EightDim` this is every `M8(α, u)` and `N8(u)`; there is no
/// canonical list there, only the rings.
pub fn canonical(theorem: Theorem, n: i64) -> Vec<FamilyId> {
    match theorem {
        Theorem::Main => {
            let mut out = vec![FamilyId::Cp3];
            out.extend(two_stage(n));
            out.extend(three_stage(n));
            out
        }
        Theorem::TwoStage => two_stage(n),
        Theorem::ThreeStage => three_stage(n),
        Theorem::EightDim => {
            let mut out = Vec::new();
            for u in -n..=n {
                out.push(FamilyId::M8 { alpha: 0, u });
                out.push(FamilyId::M8 { alpha: 1, u });
            }
            out.extend((-n..=n).map(FamilyId::N8));
            out
        }
    }
}

/// What the classification predicts for a pair of families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Expectation {
    Distinct,
    Coincident,
}

impl Expectation {
    pub fn as_str(self) -> &'static str {
        match self {
            Expectation::Distinct => "distinct",
            Expectation::Coincident => "coincident",
        }
    }
}

/// Expected ring-level relation between two sweep members.
///
/// Within a canonical list distinct ids are expected to have distinct
/// rings. In the 8-dimensional family the ring forgets `α`, so
/// `M8(α, u)` and `M8(β, u)` are expected to coincide.
pub fn expectation(a: &FamilyId, b: &FamilyId) -> Expectation {
    if a == b {
        return Expectation::Coincident;
    }
    match (a, b) {
        (FamilyId::M8 { u, .. }, FamilyId::M8 { u: v, .. }) if u == v => Expectation::Coincident,
        _ => Expectation::Distinct,
    }
}

/// Why a coincidence fixture is in the table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FixtureKind {
    /// A claimed coincidence with a frozen certificate.
    Coincidence,
    /// A claimed coincidence that conflicts with another claim; the
    /// certificate (if any) is whatever the search returns.
    Discrepancy,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fixture {
    pub a: FamilyId,
    pub b: FamilyId,
    pub kind: FixtureKind,
    pub note: &'static str,
    /// Certificate `a -> b` found by a `B = 2` search, frozen as a literal.
    pub certificate: Option<IsoCertificate>,
}

fn cert(cols: &[&[i64]]) -> Option<IsoCertificate> {
    Some(IsoCertificate::from_images(&cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>()))
}

fn fixture(
    a: FamilyId,
    b: FamilyId,
    kind: FixtureKind,
    note: &'static str,
    certificate: Option<IsoCertificate>,
) -> Fixture {
    Fixture { a, b, kind, note, certificate }
}

/// Parameter range covered by the parametrized fixtures.
pub const FIXTURE_RANGE: i64 = 4;

/// Claimed ring-level coincidences with the certificate a `B = 2` search
/// returns for each, frozen as literals. A unit test re-runs the searches
/// and checks they still return exactly these matrices.
pub fn fixtures() -> Vec<Fixture> {
    use FamilyId::{Eta2, Gb2, Xi3, Zeta3};
    use FixtureKind::{Coincidence, Discrepancy};
    let mut out = vec![
        fixture(Gb2(0), Eta2 { s: 0, alpha: 0 }, Coincidence, "both are CP^1 x CP^2", cert(&[&[0, -1], &[-1, 0]])),
        fixture(
            Zeta3 { s: 1, r: 0, alpha: 0 },
            Xi3 { s: 0, r: 0, beta: 0 },
            Coincidence,
            "the single cross-base coincidence",
            cert(&[&[-1, -2, 0], &[0, 0, -1], &[0, 1, 0]]),
        ),
        fixture(
            Zeta3 { s: 0, r: 0, alpha: 1 },
            Xi3 { s: 0, r: 0, beta: 0 },
            Discrepancy,
            "claimed alongside the cross-base coincidence above; only one of the two can hold",
            None,
        ),
        fixture(
            Gb2(1),
            Gb2(2),
            Discrepancy,
            "listed as distinct, yet y -> -y + x intertwines the rings",
            cert(&[&[-1, 0], &[1, 1]]),
        ),
    ];
    for a in -FIXTURE_RANGE..=FIXTURE_RANGE {
        let zero = a == 0;
        let pick = |generic: &[&[i64]], at_zero: &[&[i64]]| cert(if zero { at_zero } else { generic });
        out.push(fixture(
            Zeta3 { s: 1, r: 0, alpha: a },
            Zeta3 { s: 0, r: 1, alpha: a },
            Coincidence,
            "exchange of the two CP^1 factors of H_0",
            pick(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, -1]], &[&[0, -1, -2], &[-1, 0, 0], &[0, 0, 1]]),
        ));
        out.push(fixture(
            Xi3 { s: 0, r: 1, beta: a },
            Xi3 { s: 1, r: 1, beta: -a },
            Coincidence,
            "(0,1,b) ~ (1,1,-b) over H_1",
            cert(&[&[-1, -2, 0], &[1, 1, 0], &[-1, -1, -1]]),
        ));
        out.push(fixture(
            Zeta3 { s: 0, r: 0, alpha: a },
            Zeta3 { s: 0, r: 0, alpha: -a },
            Coincidence,
            "sign of alpha over H_0, (s,r) = (0,0)",
            pick(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]], &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        ));
        out.push(fixture(
            Zeta3 { s: 1, r: 0, alpha: a },
            Zeta3 { s: 1, r: 0, alpha: -a },
            Coincidence,
            "sign of alpha over H_0, (s,r) = (1,0)",
            pick(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]], &[&[-1, 0, -2], &[0, -1, 0], &[0, 0, 1]]),
        ));
        out.push(fixture(
            Zeta3 { s: 1, r: 1, alpha: a },
            Zeta3 { s: 1, r: 1, alpha: 1 - a },
            Coincidence,
            "alpha -> 1 - alpha over H_0, (s,r) = (1,1)",
            cert(&[&[-1, 0, 0], &[0, 1, 0], &[0, -1, -1]]),
        ));
        out.push(fixture(
            Xi3 { s: 0, r: 0, beta: a },
            Xi3 { s: 0, r: 0, beta: -a },
            Coincidence,
            "sign of beta over H_1, (s,r) = (0,0)",
            pick(&[&[-1, -2, 0], &[1, 1, 0], &[0, 0, -1]], &[&[-1, -2, 0], &[0, 1, 0], &[0, 0, -1]]),
        ));
        out.push(fixture(
            Xi3 { s: 1, r: 0, beta: a },
            Xi3 { s: 1, r: 0, beta: -a },
            Coincidence,
            "sign of beta over H_1, (s,r) = (1,0)",
            pick(&[&[-1, -2, 0], &[1, 1, 0], &[0, 1, -1]], &[&[-1, -2, 0], &[0, 1, -1], &[0, 1, 0]]),
        ));
    }
    out
}

/// `π_6` of `M_α(u)` as recorded for the 8-dimensional family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Pi6 {
    Z12,
    Z6,
    Unknown,
}

impl fmt::Display for Pi6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pi6::Z12 => "Z12",
            Pi6::Z6 => "Z6",
            Pi6::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Pi6Record {
    pub family: FamilyId,
    /// `u(u+1)/12` is an integer.
    pub divisibility_ok: bool,
    pub pi6: Pi6,
}

/// Recorded `π_6` for `M8(α, u)`: `Z_12` when `α ≡ u(u+1)/12 (mod 2)`,
/// `Z_6` otherwise, and unknown when `u(u+1)/12` is not an integer (the
/// criterion genuinely fails there, e.g. at `u = 1`).
pub fn pi6_record(family: &FamilyId) -> Result<Pi6Record, CatalogError> {
    let FamilyId::M8 { alpha, u } = *family else {
        return Err(CatalogError::NotM8);
    };
    if !(alpha == 0 || alpha == 1) {
        return Err(CatalogError::Domain(format!("alpha = {alpha}")));
    }
    let num = i128::from(u) * (i128::from(u) + 1);
    let divisibility_ok = num % 12 == 0;
    let pi6 = if !divisibility_ok {
        Pi6::Unknown
    } else if (num / 12 - i128::from(alpha)).is_even() {
        Pi6::Z12
    } else {
        Pi6::Z6
    };
    Ok(Pi6Record { family: *family, divisibility_ok, pi6 })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Pi6Verdict {
    /// Same ring, different `π_6`: not homotopy equivalent.
    Distinct(Pi6, Pi6),
    /// Identical ids, so the same ring and the same manifold.
    SameRing,
    /// Same ring and no recorded invariant to tell them apart.
    Unknown,
}

/// Separates `M8(α, u)` from `M8(β, u)` by `π_6`.
pub fn pi6_distinguish(a: &FamilyId, b: &FamilyId) -> Result<Pi6Verdict, CatalogError> {
    let (ra, rb) = (pi6_record(a)?, pi6_record(b)?);
    let (FamilyId::M8 { u, .. }, FamilyId::M8 { u: v, .. }) = (a, b) else {
        return Err(CatalogError::NotM8);
    };
    if u != v {
        return Err(CatalogError::UMismatch(*u, *v));
    }
    Ok(if a == b {
        Pi6Verdict::SameRing
    } else if !ra.divisibility_ok {
        Pi6Verdict::Unknown
    } else {
        Pi6Verdict::Distinct(ra.pi6, rb.pi6)
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReportRow {
    pub a: FamilyId,
    pub b: FamilyId,
    pub expected: Expectation,
    pub verdict: SearchVerdict,
    pub pass: bool,
    /// Present on `M8(α, u)` vs `M8(β, u)` rows.
    pub pi6: Option<Pi6Verdict>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Report {
    pub theorem: Theorem,
    pub range: i64,
    pub bound: u32,
    pub rows: Vec<ReportRow>,
    /// Discrepancy fixtures relevant to this sweep, with their verdicts.
    pub discrepancies: Vec<(Fixture, SearchVerdict)>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn judge(expected: Expectation, verdict: &SearchVerdict) -> bool {
    match expected {
        Expectation::Coincident => verdict.is_found(),
        Expectation::Distinct => !verdict.is_found(),
    }
}

/// Searches every pair of sweep members (including each member against
/// itself as a control) that share a generator count and Poincaré
/// polynomial, and records every other pair as a Betti mismatch.
///
/// Pairs are searched in parallel on `jobs` workers; the rows come out in
/// canonical order whatever `jobs` is.
pub fn sweep_distinctness(theorem: Theorem, n: i64, bound: u32, jobs: usize) -> Result<Report, CatalogError> {
    sweep_with(theorem, n, bound, jobs, &iso::search)
}

/// [`sweep_distinctness`] with a caller-supplied search, e.g. a cached one.
pub fn sweep_with<F>(theorem: Theorem, n: i64, bound: u32, jobs: usize, search: &F) -> Result<Report, CatalogError>
where
    F: Fn(&RingPresentation, &RingPresentation, u32) -> SearchVerdict + Sync,
{
    let families = canonical(theorem, n);
    let mut pres = Vec::with_capacity(families.len());
    for f in &families {
        pres.push(presentation(f)?);
    }
    let poincare: Vec<(usize, PoincarePoly)> = pres.iter().map(|p| (p.ngens(), p.poincare())).collect();
    let mut pairs = Vec::new();
    for i in 0..families.len() {
        for j in i..families.len() {
            pairs.push((i, j));
        }
    }
    let run = |&(i, j): &(usize, usize)| {
        let (a, b) = (families[i], families[j]);
        let expected = expectation(&a, &b);
        let verdict = if poincare[i] == poincare[j] {
            search(&pres[i], &pres[j], bound)
        } else {
            SearchVerdict::NoneWithinBound { bound, reason: NoneReason::BettiMismatch }
        };
        let pi6 = match (a, b) {
            (FamilyId::M8 { u, .. }, FamilyId::M8 { u: v, .. }) if u == v => pi6_distinguish(&a, &b).ok(),
            _ => None,
        };
        let pass = judge(expected, &verdict);
        ReportRow { a, b, expected, verdict, pass, pi6 }
    };
    let rows: Vec<ReportRow> = if jobs <= 1 {
        pairs.iter().map(run).collect()
    } else {
        iso::run_in_pool(jobs, || pairs.par_iter().map(run).collect())
    };
    let mut discrepancies = Vec::new();
    for fx in fixtures() {
        if fx.kind == FixtureKind::Discrepancy && theorem.covers(&fx.a) && theorem.covers(&fx.b) {
            let verdict = search(&presentation(&fx.a)?, &presentation(&fx.b)?, bound);
            discrepancies.push((fx, verdict));
        }
    }
    Ok(Report { theorem, range: n, bound, rows, discrepancies })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rels(f: &str) -> Vec<String> {
        let id: FamilyId = f.parse().unwrap();
        presentation(&id).unwrap().relations().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn id_roundtrip() {
        for s in ["CP3", "GB2:1", "Eta2:0,-3", "Zeta3:1,1,2", "Xi3:0,1,-4", "M8:1,3", "N8:-2"] {
            assert_eq!(s.parse::<FamilyId>().unwrap().to_string(), s);
        }
        assert!(matches!("Foo:1".parse::<FamilyId>(), Err(CatalogError::UnknownFamily(_))));
        assert!(matches!("Eta2:1".parse::<FamilyId>(), Err(CatalogError::Arity { .. })));
        assert!(matches!("GB2:x".parse::<FamilyId>(), Err(CatalogError::BadParameter(_))));
    }

    #[test]
    fn presentations_read_as_written() {
        assert_eq!(rels("M8:0,2"), ["x1^4", "x2^2 + 2*x1^2"]);
        assert_eq!(rels("M8:1,2"), rels("M8:0,2"));
        assert_eq!(rels("N8:-1"), ["x1^4", "x2^2 + x1*x2 - x1^2"]);
        assert_eq!(rels("GB2:0"), ["x1^2", "x2^3"]);
        assert_eq!(rels("GB2:2"), ["x1^2", "x2^3 + 2*x1*x2^2"]);
        assert_eq!(rels("Eta2:1,-3"), ["x1^3", "x2^2 + x1*x2 - 3*x1^2"]);
        assert_eq!(rels("Zeta3:1,1,2"), ["x1^2", "x2^2", "x3^2 + x2*x3 + x1*x3 + 2*x1*x2"]);
        assert_eq!(rels("Xi3:0,1,3"), ["x1^2", "x2^2 + x1*x2", "x3^2 + x2*x3 + 3*x1*x2"]);
    }

    #[test]
    fn m8_bundle_carries_alpha() {
        let b = top_bundle(&"M8:1,3".parse().unwrap()).unwrap();
        assert_eq!(b.alpha, Some(1));
        assert_eq!(top_bundle(&"Eta2:1,3".parse().unwrap()).unwrap().alpha, None);
    }

    #[test]
    fn canonical_domains() {
        let main = canonical(Theorem::Main, 1);
        let names: Vec<String> = main.iter().map(ToString::to_string).collect();
        assert!(names.contains(&"GB2:0".to_string()));
        assert!(!names.contains(&"Eta2:0,0".to_string()));
        assert!(names.contains(&"Eta2:1,0".to_string()));
        assert!(!names.contains(&"Zeta3:1,1,0".to_string()));
        assert!(!names.contains(&"Xi3:0,0,0".to_string()));
        assert!(names.contains(&"Xi3:0,1,-1".to_string()));
    }

    #[test]
    fn fixtures_are_what_search_returns() {
        for fx in fixtures() {
            let (a, b) = (presentation(&fx.a).unwrap(), presentation(&fx.b).unwrap());
            let found = iso::search(&a, &b, 2);
            assert_eq!(found.certificate(), fx.certificate.as_ref(), "{} -> {}", fx.a, fx.b);
            if let Some(c) = &fx.certificate {
                assert!(iso::verify(c, &a, &b).unwrap());
            }
        }
    }

    #[test]
    fn pi6_table() {
        let rec = |a, u| pi6_record(&FamilyId::M8 { alpha: a, u }).unwrap().pi6;
        assert_eq!((rec(0, 0), rec(1, 0)), (Pi6::Z12, Pi6::Z6));
        assert_eq!((rec(0, 3), rec(1, 3)), (Pi6::Z6, Pi6::Z12));
        assert_eq!(rec(0, 1), Pi6::Unknown);
        let m = |a, u| FamilyId::M8 { alpha: a, u };
        assert_eq!(pi6_distinguish(&m(0, 1), &m(1, 1)).unwrap(), Pi6Verdict::Unknown);
        assert_eq!(pi6_distinguish(&m(0, 3), &m(0, 3)).unwrap(), Pi6Verdict::SameRing);
        assert!(matches!(pi6_distinguish(&m(0, 1), &m(0, 2)), Err(CatalogError::UMismatch(1, 2))));
        assert!(matches!(pi6_distinguish(&FamilyId::N8(1), &m(0, 2)), Err(CatalogError::NotM8)));
    }
}
