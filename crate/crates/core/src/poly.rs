//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients in a fixed number of degree-2 generators.
//!
//! Every generator sits in cohomological degree 2, so the ring is
//! commutative without sign rules. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], whose order is graded-lexicographic with the *last*
//! generator heaviest. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Exponent vector over the degree-2 generators `x1, …, xg`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(ngens: usize) -> Self {
        Monomial { exps: vec![0; ngens] }
    }

    /// `x_k^e` in an ambient with `ngens` generators (`k` is 0-based).
    pub fn var_pow(ngens: usize, k: usize, e: u32) -> Self {
        let mut exps = vec![0; ngens];
        exps[k] = e;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn ngens(&self) -> usize {
        self.exps.len()
    }

    /// Sum of the exponents.
    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Cohomological degree, `2 * Σ exps`.
    pub fn degree(&self) -> u32 {
        2 * self.total_exponent()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Largest generator index with a non-zero exponent.
    pub fn max_generator(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e != 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_exponent()
            .cmp(&other.total_exponent())
            .then_with(|| {
                for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.exps.len().cmp(&other.exps.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer polynomial in `ngens` degree-2 generators, canonical sparse form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    ngens: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(ngens: usize) -> Self {
        Poly { ngens, terms: BTreeMap::new() }
    }

    pub fn one(ngens: usize) -> Self {
        Self::constant(ngens, BigInt::one())
    }

    pub fn constant(ngens: usize, c: impl Into<BigInt>) -> Self {
        Self::term(ngens, Monomial::one(ngens), c)
    }

    /// The generator `x_k` (0-based index).
    pub fn var(ngens: usize, k: usize) -> Self {
        assert!(k < ngens, "generator {k} out of range for {ngens} generators");
        Self::term(ngens, Monomial::var_pow(ngens, k, 1), 1)
    }

    pub fn term(ngens: usize, mono: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(mono.ngens(), ngens, "monomial length does not match ambient");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { ngens, terms }
    }

    /// Linear form `Σ coeffs[k] x_k`.
    pub fn linear<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var_pow(n, k, 1), c);
            }
        }
        p
    }

    /// Strict constructor used for external input: rejects zero
    /// coefficients, wrong exponent lengths and repeated monomials.
    pub fn from_terms<I>(ngens: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut map = BTreeMap::new();
        for (mono, c) in terms {
            if mono.ngens() != ngens {
                return Err(PolyError::ExponentLength { expected: ngens, found: mono.ngens() });
            }
            if c.is_zero() {
                return Err(PolyError::ZeroCoefficient);
            }
            if map.contains_key(&mono) {
                return Err(PolyError::DuplicateMonomial(format!("{:?}", mono.exps())));
            }
            map.insert(mono, c);
        }
        Ok(Poly { ngens, terms: map })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Common total exponent of all terms; `None` for inhomogeneous input.
    /// The zero polynomial is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_exponent(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::total_exponent);
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|e| e == d).then_some(d),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_generator).max()
    }

    /// Re-embed into an ambient with at least as many generators,
    /// padding the new trailing exponents with zero.
    pub fn embed(&self, ngens: usize) -> Poly {
        assert!(ngens >= self.ngens, "embed cannot drop generators");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                exps.resize(ngens, 0);
                (Monomial { exps }, c.clone())
            })
            .collect();
        Poly { ngens, terms }
    }

    /// Restrict to the first `ngens` generators. Fails if a dropped
    /// generator actually occurs.
    pub fn restrict(&self, ngens: usize) -> Result<Poly, PolyError> {
        if let Some(g) = self.max_generator() {
            if g >= ngens {
                return Err(PolyError::GeneratorOutOfRange { index: g, ngens });
            }
        }
        let terms = self.terms.iter().map(|(m, c)| (Monomial { exps: m.exps[..ngens].to_vec() }, c.clone())).collect();
        Ok(Poly { ngens, terms })
    }

    fn check_same(&self, other: &Poly) -> Result<(), PolyError> {
        if self.ngens != other.ngens {
            return Err(PolyError::GeneratorMismatch { left: self.ngens, right: other.ngens });
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn pop_last(&mut self) -> Option<(Monomial, BigInt)> {
        self.terms.pop_last()
    }

    pub(crate) fn insert_nonzero(&mut self, mono: Monomial, c: BigInt) {
        debug_assert!(!c.is_zero());
        self.terms.insert(mono, c);
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.ngens);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ngens);
        }
        Poly { ngens: self.ngens, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly { ngens: self.ngens, terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.ngens);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace generator `k` by `images[k]`. All images must live in one
    /// common target ambient.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.ngens {
            return Err(PolyError::ArityMismatch { expected: self.ngens, found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ngens,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|p| p.ngens != target) {
            return Err(PolyError::GeneratorMismatch { left: target, right: bad.ngens });
        }
        // powers[k][e] = images[k]^e, grown on demand
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; self.ngens];
        let mut out = Poly::zero(target);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (k, &e) in mono.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap() * &images[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][e as usize];
            }
            for (m, v) in t.terms {
                out.add_term(m, v);
            }
        }
        Ok(out)
    }

    /// Parse the text form printed by `Display`, e.g. `x1^2 - 3*x1*x2 + 5`.
    /// Generators are `x1 … xg`; `x, y, z, w` are accepted as aliases for
    /// the first four.
    pub fn parse(text: &str, ngens: usize) -> Result<Poly, PolyError> {
        parse::parse_poly(text, ngens)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial ambient mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial ambient mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial ambient mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ngens: self.ngens, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn gen_name(k: usize) -> String {
    format!("x{}", k + 1)
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", gen_name(k))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Leading term first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

mod parse {
    use super::*;
    use std::str::FromStr;

    fn gen_index(name: &str, ngens: usize) -> Result<usize, PolyError> {
        let idx = match name {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            "w" => 3,
            _ => {
                let digits =
                    name.strip_prefix('x').ok_or_else(|| PolyError::Parse(format!("unknown symbol `{name}`")))?;
                let k: usize = digits.parse().map_err(|_| PolyError::Parse(format!("unknown symbol `{name}`")))?;
                if k == 0 {
                    return Err(PolyError::Parse("generators are numbered from x1".into()));
                }
                k - 1
            }
        };
        if idx >= ngens {
            return Err(PolyError::GeneratorOutOfRange { index: idx, ngens });
        }
        Ok(idx)
    }

    fn parse_term(text: &str, ngens: usize) -> Result<(Monomial, BigInt), PolyError> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0u32; ngens];
        for factor in text.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(PolyError::Parse(format!("empty factor in `{text}`")));
            }
            // `3x^2` is read as `3*x^2`
            let digits = factor.bytes().take_while(u8::is_ascii_digit).count();
            if digits > 0 {
                coeff *= BigInt::from_str(&factor[..digits])
                    .map_err(|_| PolyError::Parse(format!("bad integer `{factor}`")))?;
                if digits == factor.len() {
                    continue;
                }
                if !factor.as_bytes()[digits].is_ascii_alphabetic() {
                    return Err(PolyError::Parse(format!("bad integer `{factor}`")));
                }
            }
            let factor = &factor[digits..];
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim().parse::<u32>().map_err(|_| PolyError::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            exps[gen_index(name, ngens)?] += e;
        }
        Ok((Monomial::new(exps), coeff))
    }

    pub(super) fn parse_poly(text: &str, ngens: usize) -> Result<Poly, PolyError> {
        let mut compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        while let Some(i) = ["+-", "-+", "--", "++"].iter().find_map(|pat| compact.find(pat)) {
            let merged = if &compact[i..i + 2] == "--" || &compact[i..i + 2] == "++" { "+" } else { "-" };
            compact.replace_range(i..i + 2, merged);
        }
        if compact.is_empty() {
            return Err(PolyError::Parse("empty polynomial".into()));
        }
        let mut out = Poly::zero(ngens);
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'+' => (1, &piece[1..]),
                b'-' => (-1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(PolyError::Parse(format!("dangling sign in `{text}`")));
            }
            let (m, c) = parse_term(body, ngens)?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }
}
