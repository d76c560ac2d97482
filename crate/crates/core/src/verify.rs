//! Invariant suites for every module, run by `schubert verify`.
//!
//! `Quick` stays around S_4; `Full` goes to S_5 and S_6 and runs the
//! larger randomized samples. All randomness is derived from one seed.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{class_from_pairs, diagram_product, DiagramClass};
use crate::perm::{all_permutations, from_word, Permutation};
use crate::persistence::{
    cell_rank_check, diagram_from_rank_invariant, interval_decomposition, random_presentation,
    random_upper_triangular, reduce_to_cell, BirthDeathGrid, CellPattern, PatternVariant,
};
use crate::poly::{Monomial, Polynomial};
use crate::schubert::{
    self, cell_dimension, expand_in_schubert, extract_coefficient, monk_product, product,
    product_oracle, schubert_poly, schubert_poly_from_word, CellVariant, Mode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} ms)", self.name, self.millis)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

type Check = fn(&Scale, &mut ChaCha8Rng) -> Result<String, String>;

struct Scale {
    small: usize,
    large: usize,
    random_pairs: usize,
    random_polys: usize,
    presentations: u64,
}

const CHECKS: &[(&str, Check)] = &[
    ("perm.length_symmetries", perm_lengths),
    ("perm.lehmer_round_trip", perm_lehmer),
    ("perm.reduced_words", perm_words),
    ("perm.bruhat_partial_order", perm_bruhat),
    ("perm.full_interval", perm_interval),
    ("poly.divided_difference_relations", poly_relations),
    ("schubert.coinvariant_self_test", coinvariant_self_test),
    ("schubert.basis_round_trip", basis_round_trip),
    ("schubert.word_independence", word_independence),
    ("schubert.stability", stability),
    ("schubert.monk_consistency", monk_consistency),
    ("schubert.oracle_agreement", oracle_agreement),
    ("schubert.extraction_agreement", extraction_agreement),
    ("schubert.grading_and_commutativity", grading),
    ("schubert.cell_dimension", cell_dimensions),
    ("persistence.reduction", persistence_suite),
    ("diagram.identity", diagram_identity),
    ("diagram.pairs_round_trip", diagram_round_trip),
    ("diagram.commutativity", diagram_commutativity),
    ("diagram.stable_finite_compatibility", diagram_compatibility),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

/// Runs every check; each gets its own RNG stream derived from `seed`.
pub fn run(level: Level, seed: u64) -> Vec<CheckResult> {
    let scale = match level {
        Level::Quick => Scale {
            small: 3,
            large: 4,
            random_pairs: 10,
            random_polys: 40,
            presentations: 20,
        },
        Level::Full => Scale {
            small: 4,
            large: 5,
            random_pairs: 50,
            random_polys: 200,
            presentations: 100,
        },
    };
    CHECKS
        .iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let start = Instant::now();
            let outcome = check(&scale, &mut rng);
            let millis = start.elapsed().as_millis();
            match outcome {
                Ok(detail) => CheckResult {
                    name,
                    passed: true,
                    detail,
                    millis,
                },
                Err(detail) => CheckResult {
                    name,
                    passed: false,
                    detail,
                    millis,
                },
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn perm_lengths(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    let n = s.large;
    let w0 = Permutation::longest(n);
    let top = n * (n - 1) / 2;
    for w in all_permutations(n) {
        ensure(w.length() == w.inverse().length(), || {
            format!("l(w) != l(w^-1) at {w:?}")
        })?;
        ensure(w0.compose(&w).length() == top - w.length(), || {
            format!("l(w0 w) at {w:?}")
        })?;
        let d = w.dual(n).map_err(|e| e.to_string())?;
        ensure(d.dual(n).map_err(|e| e.to_string())? == w, || {
            format!("dual not involutive at {w:?}")
        })?;
    }
    Ok(format!("S_{n}"))
}

fn perm_lehmer(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    let n = s.large + 3;
    let mut count = 0;
    for w in all_permutations(n) {
        let code = w.lehmer_code();
        ensure(code.iter().sum::<usize>() == w.length(), || {
            format!("code sum at {w:?}")
        })?;
        ensure(Permutation::from_lehmer_code(&code) == w, || {
            format!("round trip at {w:?}")
        })?;
        count += 1;
    }
    Ok(format!("{count} permutations"))
}

fn perm_words(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    for w in all_permutations(s.large + 1) {
        let word = w.reduced_word();
        ensure(word.len() == w.length() && from_word(&word) == w, || {
            format!("bad word for {w:?}")
        })?;
    }
    Ok(String::new())
}

fn perm_bruhat(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    let perms: Vec<Permutation> = all_permutations(s.large).collect();
    let leq: Vec<Vec<bool>> = perms
        .iter()
        .map(|u| perms.iter().map(|v| u.bruhat_leq(v)).collect())
        .collect();
    let m = perms.len();
    for a in 0..m {
        ensure(leq[a][a], || "not reflexive".into())?;
        for b in 0..m {
            ensure(!(a != b && leq[a][b] && leq[b][a]), || {
                "not antisymmetric".into()
            })?;
            if !leq[a][b] {
                continue;
            }
            let transitive = leq[b].iter().zip(&leq[a]).all(|(&bc, &ac)| !bc || ac);
            ensure(transitive, || "not transitive".into())?;
        }
    }
    Ok(format!("S_{}", s.large))
}

fn perm_interval(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    for n in 1..=s.large {
        let size = Permutation::longest(n).lower_interval().len();
        let fact: usize = (1..=n).product();
        ensure(size == fact, || format!("|[id, w0]| = {size} in S_{n}"))?;
    }
    Ok(String::new())
}

/// A random polynomial in z₁..z_vars with total degree ≤ max_degree.
pub fn random_polynomial(
    rng: &mut impl Rng,
    vars: usize,
    max_degree: u32,
    terms: usize,
) -> Polynomial {
    let mut f = Polynomial::zero();
    for _ in 0..terms {
        let mut left = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; vars];
        while left > 0 {
            e[rng.gen_range(0..vars)] += 1;
            left -= 1;
        }
        f.add_term(Monomial::new(e), BigInt::from(rng.gen_range(-5i64..=5)));
    }
    f
}

fn poly_relations(s: &Scale, rng: &mut ChaCha8Rng) -> Result<String, String> {
    for k in 0..s.random_polys {
        let f = random_polynomial(rng, 4, 6, 6);
        for i in 1..=3 {
            let di = f.divided_difference(i);
            ensure(di.divided_difference(i).is_zero(), || {
                format!("d{i}^2 != 0 on sample {k}")
            })?;
            if i < 3 {
                let lhs = di.divided_difference(i + 1).divided_difference(i);
                let rhs = f
                    .divided_difference(i + 1)
                    .divided_difference(i)
                    .divided_difference(i + 1);
                ensure(lhs == rhs, || {
                    format!("braid relation at i={i} on sample {k}")
                })?;
            }
            for j in i + 2..=4 {
                let a = di.divided_difference(j);
                let b = f.divided_difference(j).divided_difference(i);
                ensure(a == b, || format!("d{i} d{j} != d{j} d{i} on sample {k}"))?;
            }
        }
    }
    Ok(format!("{} polynomials", s.random_polys))
}

fn coinvariant_self_test(_: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    schubert::coinvariant_self_test().map_err(|e| e.to_string())?;
    Ok(String::new())
}

fn basis_round_trip(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    for w in all_permutations(s.large) {
        let sum = expand_in_schubert(&schubert_poly(&w)).map_err(|e| e.to_string())?;
        let ok = sum.len() == 1 && sum.coefficient(&w).is_one();
        ensure(ok, || format!("S_{w:?} expands to {sum}"))?;
    }
    Ok(format!("S_{}", s.large))
}

fn largest_descent_word(w: &Permutation) -> Vec<usize> {
    let mut line = w.one_line();
    let mut used = Vec::new();
    while let Some(i) = (0..line.len().saturating_sub(1))
        .rev()
        .find(|&i| line[i] > line[i + 1])
    {
        line.swap(i, i + 1);
        used.push(i + 1);
    }
    used.reverse();
    used
}

fn word_independence(_: &Scale, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let perms: Vec<Permutation> = all_permutations(5).collect();
    for w in perms.choose_multiple(rng, 10) {
        let n = w.degree().max(1);
        let other = largest_descent_word(&Permutation::longest(n).compose(w));
        let alt =
            schubert_poly_from_word(w, n, &other).ok_or_else(|| format!("bad word for {w:?}"))?;
        ensure(alt == schubert_poly(w), || {
            format!("word dependence at {w:?}")
        })?;
    }
    Ok(String::new())
}

fn stability(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    for w in all_permutations(s.small) {
        let base = schubert_poly(&w);
        for m in w.degree().max(1)..=w.degree() + 3 {
            let word = Permutation::longest(m).compose(&w).reduced_word();
            let f = schubert_poly_from_word(&w, m, &word).ok_or("reduced word rejected")?;
            ensure(f == base, || {
                format!("S_{w:?} changes when computed in S_{m}")
            })?;
        }
    }
    Ok(String::new())
}

fn monk_consistency(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    let n = s.large;
    let mut count = 0;
    for w in all_permutations(n) {
        for i in 1..n {
            let r = Permutation::simple(i).map_err(|e| e.to_string())?;
            for mode in [Mode::Stable, Mode::Finite(n)] {
                let a = monk_product(&w, i, mode).map_err(|e| e.to_string())?;
                let b = product(&w, &r, mode).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("{mode} monk {w:?} * r{i}: {a} vs {b}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} comparisons"))
}

fn random_pairs(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<(Permutation, Permutation)> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    (0..count)
        .map(|_| {
            (
                perms.choose(rng).expect("nonempty").clone(),
                perms.choose(rng).expect("nonempty").clone(),
            )
        })
        .collect()
}

fn oracle_agreement(s: &Scale, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut pairs: Vec<(usize, Permutation, Permutation)> = Vec::new();
    for u in all_permutations(3) {
        for v in all_permutations(3) {
            pairs.push((3, u.clone(), v));
        }
    }
    pairs.extend(
        random_pairs(4, s.random_pairs, rng)
            .into_iter()
            .map(|(u, v)| (4, u, v)),
    );
    for (n, u, v) in &pairs {
        let a = product(u, v, Mode::Finite(*n)).map_err(|e| e.to_string())?;
        let b = product_oracle(u, v, *n).map_err(|e| e.to_string())?;
        ensure(a == b, || {
            format!("{u:?} * {v:?} in S_{n}: {a} vs oracle {b}")
        })?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn extraction_agreement(s: &Scale, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut corpus: Vec<Polynomial> = random_pairs(4, s.random_pairs, rng)
        .into_iter()
        .map(|(u, v)| &schubert_poly(&u) * &schubert_poly(&v))
        .collect();
    corpus.extend(all_permutations(s.small).map(|w| schubert_poly(&w)));
    for f in &corpus {
        let sum = expand_in_schubert(f).map_err(|e| e.to_string())?;
        for (u, c) in sum.terms() {
            let e = extract_coefficient(f, u).map_err(|e| e.to_string())?;
            ensure(&e == c, || {
                format!("coefficient of {u:?}: expansion {c}, extraction {e}")
            })?;
        }
    }
    Ok(format!("{} polynomials", corpus.len()))
}

fn grading(s: &Scale, rng: &mut ChaCha8Rng) -> Result<String, String> {
    for (u, v) in random_pairs(4, s.random_pairs, rng) {
        for mode in [Mode::Stable, Mode::Finite(4)] {
            let a = product(&u, &v, mode).map_err(|e| e.to_string())?;
            let b = product(&v, &u, mode).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{u:?} * {v:?} not commutative"))?;
            for (w, c) in a.terms() {
                ensure(w.length() == u.length() + v.length(), || {
                    format!("grading broken at {w:?}")
                })?;
                ensure(c >= &BigInt::one(), || format!("coefficient {c} at {w:?}"))?;
            }
        }
    }
    Ok(String::new())
}

fn cell_dimensions(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    let n = s.large + 1;
    for w in all_permutations(n) {
        let plus = cell_dimension(&w, n, CellVariant::Plus).map_err(|e| e.to_string())?;
        let minus = cell_dimension(&w, n, CellVariant::Minus).map_err(|e| e.to_string())?;
        ensure(plus == w.length(), || format!("plus dimension at {w:?}"))?;
        ensure(plus + minus == n * (n - 1) / 2, || {
            format!("plus + minus at {w:?}")
        })?;
    }
    Ok(format!("S_{n}"))
}

fn persistence_suite(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    for seed in 0..s.presentations {
        let n = 2 + (seed % 4) as usize;
        let a = random_presentation(n, seed);
        let cell = reduce_to_cell(&a).map_err(|e| e.to_string())?;
        let b = random_upper_triangular(n, seed ^ 0x5eed);
        let moved = a.gauge(&b).ok_or("gauge matrix rejected")?;
        let moved_cell = reduce_to_cell(&moved).map_err(|e| e.to_string())?;
        ensure(moved_cell.perm == cell.perm, || {
            format!("gauge changed w at seed {seed}")
        })?;
        ensure(moved_cell.canonical == cell.canonical, || {
            format!("canonical form not unique at seed {seed}")
        })?;
        let again = reduce_to_cell(&cell.canonical).map_err(|e| e.to_string())?;
        ensure(again == cell, || {
            format!("reduction not idempotent at seed {seed}")
        })?;
        let pattern = CellPattern::new(cell.perm.clone(), n, PatternVariant::Plus);
        ensure(pattern.conforms(cell.canonical.entries()), || {
            format!("pattern violated at seed {seed}")
        })?;
        ensure(pattern.free_positions().len() == cell.perm.length(), || {
            format!("free count at seed {seed}")
        })?;
        ensure(cell_rank_check(&a, &cell.perm), || {
            format!("rank check at seed {seed}")
        })?;
        let direct = interval_decomposition(&a).map_err(|e| e.to_string())?;
        let oracle = diagram_from_rank_invariant(&a).map_err(|e| e.to_string())?;
        ensure(direct.same_multiset(&oracle), || {
            format!("rank oracle disagrees at seed {seed}")
        })?;
    }
    Ok(format!("{} presentations", s.presentations))
}

fn diagram_identity(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    let n = s.large;
    let grid = BirthDeathGrid::standard(n);
    let top =
        DiagramClass::finite(Permutation::longest(n), grid.clone()).map_err(|e| e.to_string())?;
    for w in all_permutations(n) {
        let d = DiagramClass::finite(w.clone(), grid.clone()).map_err(|e| e.to_string())?;
        let out = diagram_product(&top, &d).map_err(|e| e.to_string())?;
        ensure(out.len() == 1 && out.coefficient(&w).is_one(), || {
            format!("D_w0 * D_{w:?} = {out}")
        })?;
    }
    Ok(String::new())
}

fn diagram_round_trip(_: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    let grid =
        BirthDeathGrid::new(vec![1, 2, 3, 4], vec![10, 11, 12, 13]).map_err(|e| e.to_string())?;
    for w in all_permutations(4) {
        let back = class_from_pairs(&grid.bars_of(&w), &grid).map_err(|e| e.to_string())?;
        ensure(back.perm() == &w, || format!("round trip at {w:?}"))?;
    }
    Ok(String::new())
}

fn diagram_commutativity(s: &Scale, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let grid = BirthDeathGrid::standard(4);
    for (u, v) in random_pairs(4, s.random_pairs, rng) {
        for stable in [false, true] {
            let make = |w: &Permutation| {
                if stable {
                    DiagramClass::stable(w.clone(), grid.clone())
                } else {
                    DiagramClass::finite(w.clone(), grid.clone())
                }
            };
            let (a, b) = (
                make(&u).map_err(|e| e.to_string())?,
                make(&v).map_err(|e| e.to_string())?,
            );
            let ab = diagram_product(&a, &b).map_err(|e| e.to_string())?;
            let ba = diagram_product(&b, &a).map_err(|e| e.to_string())?;
            ensure(ab == ba, || format!("D_{u:?} * D_{v:?} not commutative"))?;
        }
    }
    Ok(String::new())
}

fn diagram_compatibility(s: &Scale, _: &mut ChaCha8Rng) -> Result<String, String> {
    let n = s.small;
    let grid = BirthDeathGrid::standard(n);
    for u in all_permutations(n) {
        for v in all_permutations(n) {
            let (du, dv) = (u.dual(n).expect("in S_n"), v.dual(n).expect("in S_n"));
            let stable = product(&du, &dv, Mode::Stable).map_err(|e| e.to_string())?;
            let kept: Vec<(Permutation, BigInt)> = stable
                .terms()
                .filter(|(w, _)| w.degree() <= n)
                .map(|(w, c)| (w.dual(n).expect("in S_n"), c.clone()))
                .collect();
            let finite = diagram_product(
                &DiagramClass::finite(u.clone(), grid.clone()).map_err(|e| e.to_string())?,
                &DiagramClass::finite(v.clone(), grid.clone()).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let expected: Vec<(Permutation, BigInt)> = {
                let mut k = kept.clone();
                k.sort();
                k
            };
            let got: Vec<(Permutation, BigInt)> = finite
                .terms()
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            ensure(got == expected, || {
                format!("D_{u:?} * D_{v:?}: {finite} vs truncated stable")
            })?;
            ensure(got.iter().all(|(_, c)| !c.is_zero()), || {
                "zero coefficient stored".into()
            })?;
        }
    }
    Ok(String::new())
}
