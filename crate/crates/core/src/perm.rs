//! Permutations in one-line notation with S_∞ semantics.
//!
//! A [`Permutation`] is stored with its trailing fixed points stripped, so
//! `2 1` and `2 1 3` are the same value. Operations that depend on an
//! ambient degree (duals, rank tables, longest elements) take it explicitly.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("could not parse permutation from {0:?}")]
    Parse(String),
    #[error("permutation of degree {degree} does not lie in S_{n}")]
    DegreeTooLarge { degree: usize, n: usize },
    #[error("simple index must be positive, got {0}")]
    InvalidSimpleIndex(usize),
    #[error("transposition needs 1 <= a < b, got ({a}, {b})")]
    InvalidTransposition { a: usize, b: usize },
}

/// A permutation of the positive integers moving finitely many points.
///
/// Internally 0-indexed: `images[i]` is `w(i + 1) - 1`. The vector never
/// ends in a fixed point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self { images: Vec::new() }
    }

    /// Builds a permutation from 1-indexed one-line notation.
    pub fn from_one_line(values: &[usize]) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotAPermutation(values.to_vec()));
            }
            seen[v - 1] = true;
        }
        Ok(Self::from_zero_based(
            values.iter().map(|&v| (v - 1) as u32).collect(),
        ))
    }

    fn from_zero_based(mut images: Vec<u32>) -> Self {
        while let Some(&last) = images.last() {
            if last as usize == images.len() - 1 {
                images.pop();
            } else {
                break;
            }
        }
        Self { images }
    }

    /// The simple transposition r_i exchanging i and i+1.
    pub fn simple(i: usize) -> Result<Self, PermError> {
        Self::transposition(i, i + 1).map_err(|_| PermError::InvalidSimpleIndex(i))
    }

    /// The transposition t_ab.
    pub fn transposition(a: usize, b: usize) -> Result<Self, PermError> {
        if a == 0 || a >= b {
            return Err(PermError::InvalidTransposition { a, b });
        }
        let mut images: Vec<u32> = (0..b as u32).collect();
        images.swap(a - 1, b - 1);
        Ok(Self::from_zero_based(images))
    }

    /// The longest element w₀ of S_n, i ↦ n − i + 1.
    pub fn longest(n: usize) -> Self {
        Self::from_zero_based((0..n as u32).rev().collect())
    }

    /// Smallest n with the permutation in S_n (0 for the identity).
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    /// w(i) for 1-indexed `i`; points beyond the degree are fixed.
    pub fn apply(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        match self.images.get(i - 1) {
            Some(&v) => v as usize + 1,
            None => i,
        }
    }

    /// One-line notation padded with fixed points to `n` entries.
    pub fn one_line_in(&self, n: usize) -> Vec<usize> {
        (1..=n.max(self.degree())).map(|i| self.apply(i)).collect()
    }

    /// Minimal one-line notation; the identity is written `[1]`.
    pub fn one_line(&self) -> Vec<usize> {
        self.one_line_in(self.degree().max(1))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Self::from_zero_based(inv)
    }

    /// The product `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.degree().max(other.degree());
        Self::from_zero_based(
            (1..=n)
                .map(|i| (self.apply(other.apply(i)) - 1) as u32)
                .collect(),
        )
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &a)| self.images[i + 1..].iter().filter(|&&b| b < a).count())
            .sum()
    }

    pub fn in_degree(&self, n: usize) -> Result<(), PermError> {
        if self.degree() > n {
            Err(PermError::DegreeTooLarge {
                degree: self.degree(),
                n,
            })
        } else {
            Ok(())
        }
    }

    /// w∨ = w₀w in S_n, i.e. `i ↦ n − w(i) + 1`.
    pub fn dual(&self, n: usize) -> Result<Self, PermError> {
        self.in_degree(n)?;
        Ok(Self::from_zero_based(
            (1..=n).map(|i| (n - self.apply(i)) as u32).collect(),
        ))
    }

    /// The natural inclusion S_n ⊂ S_m; checks `m >= degree`.
    pub fn embed(&self, m: usize) -> Result<Self, PermError> {
        self.in_degree(m)?;
        Ok(self.clone())
    }

    /// d_w(i, j) tabulated over S_n for the permutation's own degree.
    pub fn rank_table(&self) -> RankTable {
        self.rank_table_in(self.degree().max(1))
    }

    pub fn rank_table_in(&self, n: usize) -> RankTable {
        let n = n.max(self.degree());
        let mut values = vec![vec![0usize; n]; n];
        for (i, row) in values.iter_mut().enumerate() {
            let mut count = 0;
            for (j, entry) in row.iter_mut().enumerate() {
                if self.apply(j + 1) > i {
                    count += 1;
                }
                *entry = count;
            }
        }
        RankTable { values }
    }

    /// Bruhat order by rank-table dominance over the common degree.
    pub fn bruhat_leq(&self, other: &Self) -> bool {
        let n = self.degree().max(other.degree()).max(1);
        let (a, b) = (self.rank_table_in(n), other.rank_table_in(n));
        a.values
            .iter()
            .flatten()
            .zip(b.values.iter().flatten())
            .all(|(x, y)| x <= y)
    }

    /// All u ≤ w in S_n, n = degree(w), in lexicographic order.
    pub fn lower_interval(&self) -> Vec<Self> {
        all_permutations(self.degree())
            .filter(|u| u.bruhat_leq(self))
            .collect()
    }

    /// Lehmer code c_i = #{j > i : w(j) < w(i)}, trailing zeros stripped.
    pub fn lehmer_code(&self) -> Vec<usize> {
        let mut code: Vec<usize> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, &a)| self.images[i + 1..].iter().filter(|&&b| b < a).count())
            .collect();
        while code.last() == Some(&0) {
            code.pop();
        }
        code
    }

    /// Inverse of [`Permutation::lehmer_code`]. Every finitely supported
    /// sequence is the code of exactly one permutation of S_∞.
    pub fn from_lehmer_code(code: &[usize]) -> Self {
        let n = code
            .iter()
            .enumerate()
            .map(|(i, &c)| i + c + 1)
            .max()
            .unwrap_or(0);
        let mut pool: Vec<u32> = (0..n as u32).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let c = code.get(i).copied().unwrap_or(0);
            images.push(pool.remove(c));
        }
        Self::from_zero_based(images)
    }

    /// A reduced word (i_1, …, i_k) with w = r_{i_1} ⋯ r_{i_k}.
    ///
    /// Repeatedly right-multiplies by r_i at the smallest descent i until
    /// the identity is reached; the word is the reversed sequence of
    /// descents used.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut images = self.images.clone();
        let mut used = Vec::with_capacity(self.length());
        while let Some(i) = (0..images.len().saturating_sub(1)).find(|&i| images[i] > images[i + 1])
        {
            images.swap(i, i + 1);
            used.push(i + 1);
        }
        used.reverse();
        used
    }

    /// Right multiplication by the simple transposition r_i.
    pub fn times_simple(&self, i: usize) -> Self {
        let mut images = self.one_line_in(i + 1);
        images.swap(i - 1, i);
        Self::from_one_line(&images).expect("swap of a permutation")
    }
}

/// Product r_{i_1} ⋯ r_{i_k} of simple transpositions.
pub fn from_word(word: &[usize]) -> Permutation {
    word.iter()
        .fold(Permutation::identity(), |acc, &i| acc.times_simple(i))
}

/// Every permutation of S_n in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n.max(1))
        .permutations(n.max(1))
        .map(|v| Permutation::from_one_line(&v).expect("itertools yields permutations"))
}

/// Covering relations (u, w) of the Bruhat order on S_n.
pub fn covers(n: usize) -> Vec<(Permutation, Permutation)> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let lengths: Vec<usize> = perms.iter().map(Permutation::length).collect();
    let mut edges = Vec::new();
    for (a, u) in perms.iter().enumerate() {
        for (b, w) in perms.iter().enumerate() {
            if lengths[b] == lengths[a] + 1 && u.bruhat_leq(w) {
                edges.push((u.clone(), w.clone()));
            }
        }
    }
    edges.sort_by_cached_key(|(u, w)| (w.length(), u.clone(), w.clone()));
    edges
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line().iter().join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts whitespace- or comma-separated one-line notation.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| PermError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(PermError::Parse(s.to_string()));
        }
        Self::from_one_line(&values)
    }
}

/// The table d_w(i, j) = #{s ≤ j : w(s) ≥ i}, stored 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    values: Vec<Vec<usize>>,
}

impl RankTable {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// d_w(i, j) with 1-indexed arguments.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.values[i - 1][j - 1]
    }
}
