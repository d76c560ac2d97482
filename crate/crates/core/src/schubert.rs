//! Schubert polynomials and products of Schubert classes.
//!
//! Products are computed by multiplying Schubert polynomials and expanding
//! the result back into the Schubert basis with a leading-term transition.
//! Two checks that do not share that path are provided:
//! [`extract_coefficient`] reads a single coefficient off with divided
//! differences, and [`product_oracle`] solves for the product inside the
//! coinvariant ring ℤ[z₁..z_n]/I_n.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{integer_from_json, integer_to_json};
use crate::linalg::{self, Matrix};
use crate::perm::{all_permutations, PermError, Permutation};
use crate::poly::{complete_homogeneous, elementary_symmetric, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("simple index {i} is not valid for S_{n} (need 1 <= i < n)")]
    InvalidSimpleIndex { i: usize, n: usize },
    #[error("smallest term failed to increase at {0:?} during Schubert expansion")]
    TrailingTermNotIncreasing(Monomial),
    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: usize },
    #[error("variable z{var} present but the coinvariant ring has only {n} variables")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("coinvariant basis matrix is singular in degree {0}")]
    SingularBasis(usize),
    #[error("coinvariant expansion produced a non-integral coefficient")]
    NonIntegral,
    #[error("coinvariant self-test failed: e_{k} does not reduce to zero for n = {n}")]
    SelfTest { k: usize, n: usize },
    #[error("invalid formal sum JSON: {0}")]
    Json(String),
}

/// Finite mode works in A*(𝓕_n); stable mode in the limit over all n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Finite(usize),
    Stable,
}

impl Mode {
    pub fn degree(self) -> Option<usize> {
        match self {
            Mode::Finite(n) => Some(n),
            Mode::Stable => None,
        }
    }

    fn admits(self, w: &Permutation) -> bool {
        match self {
            Mode::Finite(n) => w.degree() <= n,
            Mode::Stable => true,
        }
    }

    fn check(self, w: &Permutation) -> Result<(), SchubertError> {
        match self {
            Mode::Finite(n) => Ok(w.in_degree(n)?),
            Mode::Stable => Ok(()),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Finite(n) => write!(f, "finite({n})"),
            Mode::Stable => write!(f, "stable"),
        }
    }
}

/// An integer combination of Schubert classes σ_w.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSum {
    mode: Mode,
    terms: BTreeMap<Permutation, BigInt>,
}

impl FormalSum {
    pub fn zero(mode: Mode) -> Self {
        Self {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(mode: Mode, w: Permutation) -> Self {
        let mut s = Self::zero(mode);
        s.add(w, BigInt::one());
        s
    }

    pub fn from_terms(mode: Mode, terms: impl IntoIterator<Item = (Permutation, BigInt)>) -> Self {
        let mut s = Self::zero(mode);
        for (w, c) in terms {
            s.add(w, c);
        }
        s
    }

    pub fn add(&mut self, w: Permutation, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn mode(&self) -> Mode {
        self.mode
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

    /// Terms sorted lexicographically by one-line notation.
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Permutation) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Drops terms outside S_n and relabels the sum as finite(n).
    pub fn truncate(&self, n: usize) -> Self {
        Self {
            mode: Mode::Finite(n),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Σ c_w 𝔖_w as a polynomial.
    pub fn to_polynomial(&self) -> Polynomial {
        self.terms.iter().fold(Polynomial::zero(), |acc, (w, c)| {
            &acc + &schubert_poly(w).scale(c)
        })
    }

    fn label(&self, w: &Permutation) -> String {
        let n = self.mode.degree().unwrap_or(0);
        let line: Vec<String> = w
            .one_line_in(n.max(1))
            .iter()
            .map(ToString::to_string)
            .collect();
        line.join(" ")
    }

    pub fn to_json(&self) -> Value {
        let n = self.mode.degree();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let perm = match n {
                    Some(n) => w.one_line_in(n.max(1)),
                    None => w.one_line(),
                };
                json!({"perm": perm, "coeff": integer_to_json(c)})
            })
            .collect();
        json!({
            "mode": if n.is_some() { "finite" } else { "stable" },
            "n": n,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, SchubertError> {
        let bad = |m: &str| SchubertError::Json(m.to_string());
        let mode = match v.get("mode").and_then(Value::as_str) {
            Some("stable") => Mode::Stable,
            Some("finite") => {
                let n = v
                    .get("n")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("finite mode needs integer \"n\""))?;
                Mode::Finite(n as usize)
            }
            _ => return Err(bad("\"mode\" must be \"finite\" or \"stable\"")),
        };
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\" array"))?;
        let mut sum = Self::zero(mode);
        for t in terms {
            let perm: Vec<usize> = t
                .get("perm")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without \"perm\""))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("\"perm\" entries must be positive integers"))?;
            let w = Permutation::from_one_line(&perm)?;
            mode.check(&w)?;
            let c = t
                .get("coeff")
                .and_then(integer_from_json)
                .ok_or_else(|| bad("term without integer \"coeff\""))?;
            sum.add(w, c);
        }
        Ok(sum)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "S[{}]", self.label(w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.mode, self)
    }
}

fn cache() -> &'static Mutex<HashMap<Permutation, Polynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<Permutation, Polynomial>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// z^{δ(n)} = z₁^{n−1} z₂^{n−2} ⋯ z_{n−1}.
pub fn staircase_monomial(n: usize) -> Polynomial {
    Polynomial::monomial((0..n as u32).rev().collect())
}

/// The Schubert polynomial 𝔖_w.
///
/// With n = degree(w) and (i_1, …, i_k) a reduced word of w₀w, this is
/// ∂_{i_k} ⋯ ∂_{i_1} z^{δ(n)}. Results are memoized.
pub fn schubert_poly(w: &Permutation) -> Polynomial {
    if let Some(p) = cache().lock().expect("cache poisoned").get(w) {
        return p.clone();
    }
    let n = w.degree().max(1);
    let word = Permutation::longest(n).compose(w).reduced_word();
    let p = apply_word(&staircase_monomial(n), &word);

    let code = Monomial::new(w.lehmer_code().iter().map(|&c| c as u32).collect());
    let (low, coeff) = p.lex_trailing().expect("Schubert polynomials are nonzero");
    assert!(
        low == &code && coeff.is_one(),
        "smallest term of S_{w:?} is {coeff}*{low}, expected z^{code}",
    );
    assert_eq!(p.homogeneous_degree(), Some(w.length() as u32));

    cache()
        .lock()
        .expect("cache poisoned")
        .insert(w.clone(), p.clone());
    p
}

/// ∂_{i_k} ⋯ ∂_{i_1} z^{δ(n)} for a caller-supplied reduced word
/// (i_1, …, i_k) of w₀w in S_n. Returns `None` if w is not in S_n or the
/// word is not a reduced word of w₀w.
pub fn schubert_poly_from_word(w: &Permutation, n: usize, word: &[usize]) -> Option<Polynomial> {
    if n == 0 || w.degree() > n {
        return None;
    }
    let target = Permutation::longest(n).compose(w);
    if word.len() != target.length() || crate::perm::from_word(word) != target {
        return None;
    }
    Some(apply_word(&staircase_monomial(n), word))
}

/// Applies ∂_{word[0]} first, then ∂_{word[1]}, and so on.
fn apply_word(f: &Polynomial, word: &[usize]) -> Polynomial {
    word.iter()
        .fold(f.clone(), |acc, &i| acc.divided_difference(i))
}

/// Writes f = Σ c_w 𝔖_w, one homogeneous component at a time.
///
/// z^{code(w)} is the lex-smallest monomial of 𝔖_w, so each step takes the
/// lex-smallest term c·z^a of what remains and subtracts c·𝔖_w for the w
/// with code a. The smallest remaining monomial must strictly increase.
pub fn expand_in_schubert(f: &Polynomial) -> Result<FormalSum, SchubertError> {
    let mut out = FormalSum::zero(Mode::Stable);
    for component in f.homogeneous_components().into_values() {
        let mut rest = component;
        let mut previous: Option<Monomial> = None;
        while !rest.is_zero() {
            let (low, c) = rest.lex_trailing().expect("nonzero");
            let (low, c) = (low.clone(), c.clone());
            if previous.as_ref().is_some_and(|p| &low <= p) {
                return Err(SchubertError::TrailingTermNotIncreasing(low));
            }
            let code: Vec<usize> = low.exponents().iter().map(|&e| e as usize).collect();
            let w = Permutation::from_lehmer_code(&code);
            rest = &rest - &schubert_poly(&w).scale(&c);
            out.add(w, c);
            previous = Some(low);
        }
    }
    Ok(out)
}

/// Coefficient of 𝔖_u in f, for f homogeneous of degree ℓ(u).
///
/// For u = r_{i_1} ⋯ r_{i_k} reduced, applies ∂_{i_k} first and ∂_{i_1}
/// last, then reads the constant term.
pub fn extract_coefficient(f: &Polynomial, u: &Permutation) -> Result<BigInt, SchubertError> {
    let k = u.length();
    if !f.is_homogeneous_of_degree(k as u32) {
        return Err(SchubertError::NotHomogeneous { expected: k });
    }
    let mut word = u.reduced_word();
    word.reverse();
    Ok(apply_word(f, &word).constant_term())
}

/// Monk's rule: σ_w · σ_{r_i} = Σ σ_{w t_ab} over a ≤ i < b with
/// ℓ(w t_ab) = ℓ(w) + 1.
pub fn monk_product(w: &Permutation, i: usize, mode: Mode) -> Result<FormalSum, SchubertError> {
    let bound = match mode {
        Mode::Finite(n) => {
            w.in_degree(n)?;
            if i == 0 || i >= n {
                return Err(SchubertError::InvalidSimpleIndex { i, n });
            }
            n
        }
        Mode::Stable => {
            if i == 0 {
                return Err(PermError::InvalidSimpleIndex(i).into());
            }
            w.degree().max(i) + 1
        }
    };
    let target = w.length() + 1;
    let mut out = FormalSum::zero(mode);
    for a in 1..=i {
        for b in i + 1..=bound {
            let u = w.compose(&Permutation::transposition(a, b)?);
            if u.length() == target {
                out.add(u, BigInt::one());
            }
        }
    }
    Ok(out)
}

/// σ_u · σ_v expanded in the Schubert basis.
pub fn product(u: &Permutation, v: &Permutation, mode: Mode) -> Result<FormalSum, SchubertError> {
    mode.check(u)?;
    mode.check(v)?;
    let stable = expand_in_schubert(&(&schubert_poly(u) * &schubert_poly(v)))?;
    Ok(match mode {
        Mode::Stable => stable,
        Mode::Finite(n) => stable.truncate(n),
    })
}

/// c^u_{wv}: the coefficient of σ_u in σ_w · σ_v.
pub fn lr_coefficient(
    w: &Permutation,
    v: &Permutation,
    u: &Permutation,
    mode: Mode,
) -> Result<BigInt, SchubertError> {
    if u.length() != w.length() + v.length() || !mode.admits(u) {
        mode.check(w)?;
        mode.check(v)?;
        return Ok(BigInt::zero());
    }
    Ok(product(w, v, mode)?.coefficient(u))
}

fn is_staircase(m: &Monomial, n: usize) -> bool {
    m.exponents()
        .iter()
        .enumerate()
        .all(|(j, &e)| (e as usize) < n - j)
}

/// Orders monomials with z_n > z_{n−1} > ⋯ > z₁ lexicographically. Every
/// rewrite below replaces a monomial by strictly smaller ones in this order.
fn reverse_lex_key(m: &Monomial, n: usize) -> Vec<u32> {
    (1..=n).rev().map(|i| m.exponent(i)).collect()
}

/// Canonical representative of f in ℤ[z₁..z_n]/I_n, supported on the
/// staircase monomials z^a with a_j ≤ n − j.
///
/// Uses the relations h_{n−j+1}(z₁, …, z_j) ∈ I_n: an offending power
/// z_j^{n−j+1} is replaced by minus the remaining terms of that relation,
/// largest monomial first, until nothing offends.
pub fn coinvariant_reduce(f: &Polynomial, n: usize) -> Result<Polynomial, SchubertError> {
    if f.max_var() > n {
        return Err(SchubertError::VariableOutOfRange {
            var: f.max_var(),
            n,
        });
    }
    // relations[j-1] = h_{n-j+1}(z_1..z_j) - z_j^{n-j+1}
    let relations: Vec<Polynomial> = (1..=n)
        .map(|j| {
            let k = n - j + 1;
            let mut lead = vec![0u32; j];
            lead[j - 1] = k as u32;
            &complete_homogeneous(k, j) - &Polynomial::monomial(lead)
        })
        .collect();

    let mut pending: BTreeMap<Vec<u32>, (Monomial, BigInt)> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<Vec<u32>, (Monomial, BigInt)>, m: Monomial, c: BigInt| {
        let key = reverse_lex_key(&m, n);
        let slot = pending.entry(key).or_insert_with(|| (m, BigInt::zero()));
        slot.1 += c;
    };
    for (m, c) in f.terms() {
        push(&mut pending, m.clone(), c.clone());
    }
    let mut out = Polynomial::zero();
    while let Some((_, (m, c))) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        if is_staircase(&m, n) {
            out.add_term(m, c);
            continue;
        }
        let j = (1..=n)
            .rev()
            .find(|&j| m.exponent(j) as usize > n - j)
            .expect("non-staircase monomial has an offending variable");
        let mut rest = m.exponents().to_vec();
        rest[j - 1] -= (n - j + 1) as u32;
        let cofactor = Monomial::new(rest);
        for (r, rc) in relations[j - 1].terms() {
            push(&mut pending, r.mul(&cofactor), -(rc * &c));
        }
    }
    Ok(out)
}

/// Checks that every e_k, 1 ≤ k ≤ n ≤ 5, reduces to zero.
pub fn coinvariant_self_test() -> Result<(), SchubertError> {
    static RESULT: OnceLock<Result<(), SchubertError>> = OnceLock::new();
    RESULT
        .get_or_init(|| {
            for n in 1..=5 {
                for k in 1..=n {
                    let e = elementary_symmetric(k, n).expect("valid range");
                    if !coinvariant_reduce(&e, n)?.is_zero() {
                        return Err(SchubertError::SelfTest { k, n });
                    }
                }
            }
            Ok(())
        })
        .clone()
}

/// Staircase monomials of S_n's coinvariant ring of total degree `d`.
fn staircase_monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(j: usize, n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if j == n {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        for e in 0..=left.min(n - 1 - j) {
            cur.push(e as u32);
            rec(j + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// σ_u · σ_v in A*(𝓕_n) computed inside ℤ[z₁..z_n]/I_n.
///
/// Reduces 𝔖_u 𝔖_v to staircase form, then solves the square linear system
/// expressing it in the reduced 𝔖_w, w ∈ S_n of the matching length, over
/// the staircase monomials of that degree.
pub fn product_oracle(
    u: &Permutation,
    v: &Permutation,
    n: usize,
) -> Result<FormalSum, SchubertError> {
    coinvariant_self_test()?;
    u.in_degree(n)?;
    v.in_degree(n)?;
    let d = u.length() + v.length();
    let target = coinvariant_reduce(&(&schubert_poly(u) * &schubert_poly(v)), n)?;

    let basis: Vec<Permutation> = all_permutations(n).filter(|w| w.length() == d).collect();
    let monomials = staircase_monomials_of_degree(n, d);
    if basis.is_empty() {
        return if target.is_zero() {
            Ok(FormalSum::zero(Mode::Finite(n)))
        } else {
            Err(SchubertError::SingularBasis(d))
        };
    }
    if basis.len() != monomials.len() {
        return Err(SchubertError::SingularBasis(d));
    }
    let mut matrix = Matrix::zeros(monomials.len(), basis.len());
    for (col, w) in basis.iter().enumerate() {
        let reduced = coinvariant_reduce(&schubert_poly(w), n)?;
        for (row, m) in monomials.iter().enumerate() {
            matrix[(row, col)] = BigRational::from_integer(reduced.coefficient(m));
        }
    }
    let rhs: Vec<BigRational> = monomials
        .iter()
        .map(|m| BigRational::from_integer(target.coefficient(m)))
        .collect();
    let solution = linalg::solve(&matrix, &rhs).ok_or(SchubertError::SingularBasis(d))?;
    let mut out = FormalSum::zero(Mode::Finite(n));
    for (w, x) in basis.into_iter().zip(solution) {
        if !x.is_integer() {
            return Err(SchubertError::NonIntegral);
        }
        out.add(w, x.to_integer());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellVariant {
    Plus,
    Minus,
}

/// Number of free entries in the U_w^± pattern of S_n.
///
/// Plus counts (i, k) with i < w(k) and k < w⁻¹(i), which equals ℓ(w);
/// minus counts i > w(k) and k < w⁻¹(i), which equals ℓ(w₀) − ℓ(w).
pub fn cell_dimension(
    w: &Permutation,
    n: usize,
    variant: CellVariant,
) -> Result<usize, SchubertError> {
    w.in_degree(n)?;
    let inv = w.inverse();
    let mut count = 0;
    for i in 1..=n {
        for k in 1..inv.apply(i) {
            let wk = w.apply(k);
            let free = match variant {
                CellVariant::Plus => i < wk,
                CellVariant::Minus => i > wk,
            };
            if free {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn z(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn mono(e: &[u32]) -> Polynomial {
        Polynomial::monomial(e.to_vec())
    }

    fn sum(mode: Mode, terms: &[(&str, i64)]) -> FormalSum {
        FormalSum::from_terms(mode, terms.iter().map(|(w, c)| (p(w), BigInt::from(*c))))
    }

    #[test]
    fn schubert_polynomials_of_s3() {
        assert_eq!(schubert_poly(&Permutation::identity()), Polynomial::one());
        assert_eq!(schubert_poly(&p("2 1")), z(1));
        assert_eq!(schubert_poly(&p("2 1 3")), z(1));
        assert_eq!(schubert_poly(&p("1 3 2")), &z(1) + &z(2));
        assert_eq!(schubert_poly(&p("3 1 2")), mono(&[2]));
        assert_eq!(schubert_poly(&p("2 3 1")), mono(&[1, 1]));
        assert_eq!(schubert_poly(&p("3 2 1")), mono(&[2, 1]));
    }

    #[test]
    fn from_word_rejects_non_reduced_words() {
        let w = p("1 3 2");
        // w0 w = 3 1 2 = r2 r1
        assert_eq!(schubert_poly_from_word(&w, 3, &[2, 1]), Some(&z(1) + &z(2)));
        assert_eq!(schubert_poly_from_word(&w, 3, &[1, 2]), None);
        assert_eq!(schubert_poly_from_word(&w, 3, &[2, 1, 1, 1]), None);
        assert_eq!(schubert_poly_from_word(&w, 2, &[]), None);
        let word = Permutation::longest(4).compose(&w).reduced_word();
        assert_eq!(word.len(), 5);
        assert_eq!(schubert_poly_from_word(&w, 4, &word), Some(&z(1) + &z(2)));
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(
            expand_in_schubert(&Polynomial::one()).unwrap(),
            FormalSum::single(Mode::Stable, Permutation::identity())
        );
        assert_eq!(
            expand_in_schubert(&mono(&[2])).unwrap(),
            sum(Mode::Stable, &[("3 1 2", 1)])
        );
        assert_eq!(
            expand_in_schubert(&(&mono(&[2]) + &mono(&[1, 1]))).unwrap(),
            sum(Mode::Stable, &[("3 1 2", 1), ("2 3 1", 1)])
        );
        // z2 = S_{132} - S_{213}
        assert_eq!(
            expand_in_schubert(&z(2)).unwrap(),
            sum(Mode::Stable, &[("1 3 2", 1), ("2 1", -1)])
        );
        assert!(expand_in_schubert(&Polynomial::zero()).unwrap().is_zero());
    }

    #[test]
    fn extraction_examples() {
        for w in all_permutations(4) {
            assert_eq!(
                extract_coefficient(&schubert_poly(&w), &w).unwrap(),
                BigInt::one()
            );
        }
        assert_eq!(
            extract_coefficient(&mono(&[2]), &p("3 1 2")).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            extract_coefficient(&mono(&[2]), &p("2 3 1")).unwrap(),
            BigInt::zero()
        );
        assert!(matches!(
            extract_coefficient(&z(1), &p("3 1 2")),
            Err(SchubertError::NotHomogeneous { expected: 2 })
        ));
    }

    #[test]
    fn monk_examples() {
        assert!(monk_product(&p("2 1"), 1, Mode::Finite(2))
            .unwrap()
            .is_zero());
        assert_eq!(
            monk_product(&p("2 1"), 1, Mode::Stable).unwrap(),
            sum(Mode::Stable, &[("3 1 2", 1)])
        );
        assert_eq!(
            monk_product(&p("2 3 1"), 1, Mode::Finite(3)).unwrap(),
            sum(Mode::Finite(3), &[("3 2 1", 1)])
        );
        // i beyond the degree of w
        assert_eq!(
            monk_product(&Permutation::identity(), 3, Mode::Stable).unwrap(),
            sum(Mode::Stable, &[("1 2 4 3", 1)])
        );
        assert!(matches!(
            monk_product(&p("2 1"), 2, Mode::Finite(2)),
            Err(SchubertError::InvalidSimpleIndex { i: 2, n: 2 })
        ));
        assert!(monk_product(&p("2 1"), 0, Mode::Stable).is_err());
        assert!(monk_product(&p("3 1 2"), 1, Mode::Finite(2)).is_err());
    }

    #[test]
    fn product_examples() {
        let w = p("2 3 1");
        assert_eq!(
            product(&Permutation::identity(), &w, Mode::Stable).unwrap(),
            FormalSum::single(Mode::Stable, w.clone())
        );
        assert_eq!(
            product(&p("2 1 3"), &p("1 3 2"), Mode::Stable).unwrap(),
            sum(Mode::Stable, &[("3 1 2", 1), ("2 3 1", 1)])
        );
        assert!(product(&p("2 1"), &p("2 1"), Mode::Finite(2))
            .unwrap()
            .is_zero());
        assert!(matches!(
            product(&p("3 1 2"), &p("2 1"), Mode::Finite(2)),
            Err(SchubertError::Perm(PermError::DegreeTooLarge { .. }))
        ));
    }

    #[test]
    fn lr_examples() {
        let w = p("3 1 2");
        assert_eq!(
            lr_coefficient(&w, &Permutation::identity(), &w, Mode::Stable).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            lr_coefficient(&p("2 3 1"), &p("2 1 3"), &p("3 2 1"), Mode::Finite(3)).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            lr_coefficient(&p("2 3 1"), &p("2 1 3"), &p("3 1 2"), Mode::Finite(3)).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn coinvariant_examples() {
        let e1 = elementary_symmetric(1, 2).unwrap();
        assert!(coinvariant_reduce(&e1, 2).unwrap().is_zero());
        assert_eq!(coinvariant_reduce(&z(1), 2).unwrap(), z(1));
        assert!(coinvariant_reduce(&mono(&[2]), 2).unwrap().is_zero());
        assert!(matches!(
            coinvariant_reduce(&z(3), 2),
            Err(SchubertError::VariableOutOfRange { var: 3, n: 2 })
        ));
        coinvariant_self_test().unwrap();
    }

    #[test]
    fn coinvariant_reduction_preserves_class() {
        // z1^3 in n = 3: z1^3 = h_3(z1) ≡ 0
        assert!(coinvariant_reduce(&mono(&[3]), 3).unwrap().is_zero());
        // z2^2 ≡ -z1^2 - z1 z2 (from h_2(z1, z2))
        let expected = &(-&mono(&[2])) - &mono(&[1, 1]);
        assert_eq!(coinvariant_reduce(&mono(&[0, 2]), 3).unwrap(), expected);
    }

    #[test]
    fn staircase_monomial_counts_match_length_distribution() {
        for n in 1..=5 {
            for d in 0..=n * (n - 1) / 2 {
                let perms = all_permutations(n).filter(|w| w.length() == d).count();
                assert_eq!(
                    staircase_monomials_of_degree(n, d).len(),
                    perms,
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let w = p("2 3 1");
        assert_eq!(
            product_oracle(&Permutation::identity(), &w, 3).unwrap(),
            FormalSum::single(Mode::Finite(3), w)
        );
        assert!(product_oracle(&p("2 1"), &p("2 1"), 2).unwrap().is_zero());
        for u in all_permutations(3) {
            for v in all_permutations(3) {
                assert_eq!(
                    product_oracle(&u, &v, 3).unwrap(),
                    product(&u, &v, Mode::Finite(3)).unwrap(),
                    "{u:?} * {v:?}"
                );
            }
        }
    }

    #[test]
    fn cell_dimension_examples() {
        let id = Permutation::identity();
        assert_eq!(cell_dimension(&id, 3, CellVariant::Plus).unwrap(), 0);
        assert_eq!(
            cell_dimension(&Permutation::longest(3), 3, CellVariant::Plus).unwrap(),
            3
        );
        for w in all_permutations(4) {
            let plus = cell_dimension(&w, 4, CellVariant::Plus).unwrap();
            let minus = cell_dimension(&w, 4, CellVariant::Minus).unwrap();
            assert_eq!(plus + minus, 6);
        }
        assert!(cell_dimension(&p("3 1 2"), 2, CellVariant::Plus).is_err());
    }

    #[test]
    fn formal_sum_rendering_and_json() {
        let s = sum(Mode::Stable, &[("3 1 2", 1), ("2 3 1", 2)]);
        assert_eq!(s.to_string(), "2*S[2 3 1] + S[3 1 2]");
        assert_eq!(FormalSum::zero(Mode::Stable).to_string(), "0");
        let f = sum(Mode::Finite(3), &[("2 1", 1)]);
        assert_eq!(f.to_string(), "S[2 1 3]");
        let v = f.to_json();
        assert_eq!(
            v,
            json!({"mode": "finite", "n": 3, "terms": [{"perm": [2, 1, 3], "coeff": 1}]})
        );
        assert_eq!(FormalSum::from_json(&v).unwrap(), f);
        assert_eq!(FormalSum::from_json(&s.to_json()).unwrap(), s);
        assert!(FormalSum::from_json(&json!({"mode": "finite", "terms": []})).is_err());
    }
}
