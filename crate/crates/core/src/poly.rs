//! Sparse polynomials in z₁, z₂, … with arbitrary-precision integer
//! coefficients, divided differences and a few symmetric functions.
//!
//! Monomials are ordered lexicographically with z₁ > z₂ > ⋯, which is the
//! derived `Ord` on exponent vectors once trailing zeros are stripped.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::json::{integer_from_json, integer_to_json};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("elementary symmetric e_{k} needs 1 <= k <= {n}")]
    InvalidElementary { k: usize, n: usize },
    #[error("the zero polynomial has no leading term")]
    Zero,
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Exponent vector; position `i` holds the exponent of z_{i+1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Self(exponents)
    }

    /// z_i for 1-indexed i.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of z_i, 1-indexed.
    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest variable index with a nonzero exponent (0 for the constant).
    pub fn max_var(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut e = long.clone();
        for (a, b) in e.iter_mut().zip(short) {
            *a += b;
        }
        Self(e)
    }

    fn with_pair(&self, i: usize, p: u32, q: u32) -> Self {
        let mut e = self.0.clone();
        if e.len() < i + 1 {
            e.resize(i + 1, 0);
        }
        e[i - 1] = p;
        e[i] = q;
        Self::new(e)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "z{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn monomial(exponents: Vec<u32>) -> Self {
        Self::term(Monomial::new(exponents), 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
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

    /// Terms in increasing lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    /// Largest variable index appearing.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    /// `Some(d)` if every term has total degree d; the zero polynomial
    /// reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.degree())
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Lex-leading monomial (z₁ > z₂ > ⋯) and its coefficient.
    pub fn lex_leading(&self) -> Result<(&Monomial, &BigInt), PolyError> {
        self.terms.iter().next_back().ok_or(PolyError::Zero)
    }

    /// Lex-smallest monomial and its coefficient. For a Schubert polynomial
    /// 𝔖_w this is z^{code(w)} with coefficient 1.
    pub fn lex_trailing(&self) -> Result<(&Monomial, &BigInt), PolyError> {
        self.terms.iter().next().ok_or(PolyError::Zero)
    }

    /// r_i f: exchanges z_i and z_{i+1}.
    pub fn swap_vars(&self, i: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.with_pair(i, m.exponent(i + 1), m.exponent(i)), c.clone())),
        )
    }

    /// The divided difference ∂_i f = (f − r_i f)/(z_i − z_{i+1}).
    ///
    /// Evaluated monomial by monomial: with p, q the exponents of z_i,
    /// z_{i+1} and p > q,
    /// (z_i^p z_{i+1}^q − z_i^q z_{i+1}^p)/(z_i − z_{i+1})
    ///     = Σ_{s=0}^{p−q−1} z_i^{q+s} z_{i+1}^{p−1−s},
    /// and the case p < q is the negative of the swapped one.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i >= 1, "divided differences are indexed from 1");
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (p, q) = (m.exponent(i), m.exponent(i + 1));
            if p == q {
                continue;
            }
            let (hi, lo, sign) = if p > q { (p, q, c.clone()) } else { (q, p, -c) };
            for s in 0..hi - lo {
                out.add_term(m.with_pair(i, lo + s, hi - 1 - s), sign.clone());
            }
        }
        out
    }

    /// Sets z_i = 0 for every i > n.
    pub fn specialize_beyond(&self, n: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.max_var() <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Invariance under r_1, …, r_{n−1}.
    pub fn is_symmetric(&self, n: usize) -> bool {
        self.max_var() <= n && (1..n).all(|i| &self.swap_vars(i) == self)
    }

    /// Text rendering, highest lex term first, e.g. `z1^2 + z1*z2`.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| json!({"coeff": integer_to_json(c), "exponents": m.0}))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PolyError> {
        let bad = |msg: &str| PolyError::Json(msg.to_string());
        let records = v
            .as_array()
            .ok_or_else(|| bad("expected an array of terms"))?;
        let mut out = Self::zero();
        for r in records {
            let coeff = r
                .get("coeff")
                .and_then(integer_from_json)
                .ok_or_else(|| bad("bad coeff"))?;
            let exponents = r
                .get("exponents")
                .and_then(|e| e.as_array())
                .ok_or_else(|| bad("missing exponents"))?
                .iter()
                .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| bad("exponents must be small nonnegative integers"))?;
            out.add_term(Monomial::new(exponents), coeff);
        }
        Ok(out)
    }
}

/// e_k(z₁, …, z_n).
pub fn elementary_symmetric(k: usize, n: usize) -> Result<Polynomial, PolyError> {
    if k < 1 || k > n {
        return Err(PolyError::InvalidElementary { k, n });
    }
    let mut out = Polynomial::zero();
    for subset in itertools::Itertools::combinations(0..n, k) {
        let mut e = vec![0; n];
        for i in subset {
            e[i] = 1;
        }
        out.add_term(Monomial::new(e), BigInt::one());
    }
    Ok(out)
}

/// h_k(z₁, …, z_j): the sum of all monomials of degree k in z₁..z_j.
pub fn complete_homogeneous(k: usize, j: usize) -> Polynomial {
    let mut out = Polynomial::zero();
    for combo in itertools::Itertools::combinations_with_replacement(0..j, k) {
        let mut e = vec![0; j];
        for i in combo {
            e[i] += 1;
        }
        out.add_term(Monomial::new(e), BigInt::one());
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.0.is_empty();
            if is_const {
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

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial { terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn mono(e: &[u32]) -> Polynomial {
        Polynomial::monomial(e.to_vec())
    }

    #[test]
    fn ring_examples() {
        let f = &z(1) + &z(3);
        assert_eq!(&f + &Polynomial::zero(), f);
        assert_eq!(&z(1) * &z(1), mono(&[2]));
        assert_eq!(&z(1) * &(&z(1) + &z(2)), &mono(&[2]) + &mono(&[1, 1]));
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = z(1);
        p.add_term(Monomial::var(1), BigInt::from(-1));
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(z(1).divided_difference(1), Polynomial::one());
        assert!(mono(&[1, 1]).divided_difference(1).is_zero());
        assert_eq!(mono(&[2, 1]).divided_difference(2), mono(&[2]));
        // ∂_1 z₂ = -1
        assert_eq!(z(2).divided_difference(1), Polynomial::constant(-1));
        // ∂_1 z₁³ = z₁² + z₁z₂ + z₂²
        let expected = &(&mono(&[2]) + &mono(&[1, 1])) + &mono(&[0, 2]);
        assert_eq!(mono(&[3]).divided_difference(1), expected);
    }

    #[test]
    fn divided_difference_times_difference_recovers_antisymmetric_part() {
        let f = &(&mono(&[3, 1, 2]) + &mono(&[0, 4])) - &mono(&[1, 0, 1]).scale(&BigInt::from(5));
        for i in 1..=3 {
            let lhs = &(&z(i) - &z(i + 1)) * &f.divided_difference(i);
            assert_eq!(lhs, &f - &f.swap_vars(i));
        }
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(elementary_symmetric(1, 2).unwrap(), &z(1) + &z(2));
        assert_eq!(elementary_symmetric(2, 2).unwrap(), mono(&[1, 1]));
        assert_eq!(
            elementary_symmetric(2, 3).unwrap(),
            &(&mono(&[1, 1]) + &mono(&[1, 0, 1])) + &mono(&[0, 1, 1])
        );
        assert!(elementary_symmetric(0, 3).is_err());
        assert!(elementary_symmetric(4, 3).is_err());
    }

    #[test]
    fn complete_homogeneous_small() {
        assert_eq!(complete_homogeneous(2, 1), mono(&[2]));
        assert_eq!(complete_homogeneous(1, 3), &(&z(1) + &z(2)) + &z(3));
        assert_eq!(complete_homogeneous(2, 2).len(), 3);
        assert_eq!(complete_homogeneous(0, 2), Polynomial::one());
    }

    #[test]
    fn specialize_examples() {
        assert_eq!((&z(1) + &z(3)).specialize_beyond(2), z(1));
        let f = &mono(&[1, 2]) + &z(2);
        assert_eq!(f.specialize_beyond(2), f);
        assert!(mono(&[0, 0, 2]).specialize_beyond(2).is_zero());
    }

    #[test]
    fn symmetry_examples() {
        for k in 1..=4 {
            assert!(elementary_symmetric(k, 4).unwrap().is_symmetric(4));
        }
        assert!(!z(1).is_symmetric(2));
        assert!((&mono(&[2, 1]) + &mono(&[1, 2])).is_symmetric(2));
    }

    #[test]
    fn lex_leading_examples() {
        let f = &mono(&[2]) + &mono(&[1, 1]);
        assert_eq!(
            f.lex_leading().unwrap(),
            (&Monomial::new(vec![2]), &BigInt::one())
        );
        let c = Polynomial::constant(5);
        assert_eq!(
            c.lex_leading().unwrap(),
            (&Monomial::one(), &BigInt::from(5))
        );
        let g = &mono(&[0, 3]) + &z(1);
        assert_eq!(g.lex_leading().unwrap().0, &Monomial::var(1));
        assert_eq!(Polynomial::zero().lex_leading(), Err(PolyError::Zero));
        assert_eq!(g.lex_trailing().unwrap().0, &Monomial::new(vec![0, 3]));
        assert_eq!(Polynomial::zero().lex_trailing(), Err(PolyError::Zero));
    }

    #[test]
    fn render_examples() {
        assert_eq!(z(1).render(), "z1");
        assert_eq!(Polynomial::one().render(), "1");
        assert_eq!(Polynomial::zero().render(), "0");
        assert_eq!(
            (&mono(&[2, 1]) + &mono(&[1, 1])).render(),
            "z1^2*z2 + z1*z2"
        );
        let f = &(&mono(&[0, 2]).scale(&BigInt::from(3)) - &z(1)) + &Polynomial::constant(-2);
        assert_eq!(f.render(), "-z1 + 3*z2^2 - 2");
    }

    #[test]
    fn json_rendering() {
        let f = &mono(&[2]).scale(&BigInt::from(-3)) + &Polynomial::one();
        let v = f.to_json();
        assert_eq!(
            v,
            serde_json::json!([
                {"coeff": -3, "exponents": [2]},
                {"coeff": 1, "exponents": []}
            ])
        );
        assert_eq!(Polynomial::from_json(&v).unwrap(), f);
        assert!(Polynomial::from_json(&serde_json::json!({"coeff": 1})).is_err());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(mono(&[2, 1]).homogeneous_degree(), Some(3));
        assert_eq!((&z(1) + &Polynomial::one()).homogeneous_degree(), None);
        assert_eq!(Polynomial::zero().homogeneous_degree(), None);
        assert!(Polynomial::zero().is_homogeneous_of_degree(4));
        let parts = (&z(1) + &Polynomial::one()).homogeneous_components();
        assert_eq!(parts.len(), 2);
    }
}
