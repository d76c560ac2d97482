//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every comparison is exact.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use schubert_core::diagram::{diagram_product, DiagramClass, DiagramSum};
use schubert_core::perm::{all_permutations, Permutation};
use schubert_core::persistence::{
    cell_rank_check, diagram_from_rank_invariant, interval_decomposition, random_presentation,
    random_upper_triangular, reduce_to_cell, BirthDeathGrid, CellPattern, PatternVariant,
};
use schubert_core::poly::Polynomial;
use schubert_core::schubert::{
    expand_in_schubert, extract_coefficient, monk_product, product, product_oracle, schubert_poly,
    FormalSum, Mode,
};
use schubert_core::verify::random_polynomial;

const SEED: u64 = 0xAC_CE_97;

type Outcome = Result<String, String>;

fn p(s: &str) -> Permutation {
    s.parse().expect("valid permutation")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn mono(e: &[u32]) -> Polynomial {
    Polynomial::monomial(e.to_vec())
}

fn sum(mode: Mode, terms: &[&str]) -> FormalSum {
    let mut out = FormalSum::zero(mode);
    for t in terms {
        out.add(p(t), BigInt::one());
    }
    out
}

fn finite_class(w: &str, n: usize) -> DiagramClass {
    DiagramClass::finite(p(w), BirthDeathGrid::standard(n)).expect("fits the grid")
}

fn labels(d: &DiagramSum) -> Vec<(Permutation, BigInt)> {
    d.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

fn expect_labels(d: &DiagramSum, expected: &[&str]) -> Result<(), String> {
    let mut want: Vec<(Permutation, BigInt)> =
        expected.iter().map(|w| (p(w), BigInt::one())).collect();
    want.sort();
    ensure(labels(d) == want, || {
        format!("got {d}, expected {expected:?}")
    })
}

fn criterion_1() -> Outcome {
    let table: [(&str, Polynomial); 8] = [
        ("1", Polynomial::one()),
        ("2 1", mono(&[1])),
        ("1 2 3", Polynomial::one()),
        ("2 1 3", mono(&[1])),
        ("1 3 2", &mono(&[1]) + &mono(&[0, 1])),
        ("3 1 2", mono(&[2])),
        ("2 3 1", mono(&[1, 1])),
        ("3 2 1", mono(&[2, 1])),
    ];
    for (w, expected) in &table {
        let got = schubert_poly(&p(w));
        ensure(&got == expected, || {
            format!("S_({w}) = {got}, expected {expected}")
        })?;
    }
    let rendered: Vec<String> = all_permutations(3)
        .map(|w| schubert_poly(&w).render())
        .collect();
    Ok(format!("S_3 row: {}", rendered.join(", ")))
}

fn criterion_2() -> Outcome {
    let s = product(&p("2 1"), &p("2 1"), Mode::Finite(2)).map_err(err)?;
    ensure(s.is_zero(), || format!("sigma_(21)^2 = {s} in S_2"))?;
    let d = diagram_product(&finite_class("1 2", 2), &finite_class("1 2", 2)).map_err(err)?;
    ensure(d.is_zero(), || format!("D_(12)^2 = {d}"))?;
    Ok("both products are 0".into())
}

fn criterion_3() -> Outcome {
    let s = product(&p("2 1"), &p("2 1"), Mode::Stable).map_err(err)?;
    ensure(s == sum(Mode::Stable, &["3 1 2"]), || {
        format!("stable sigma_(21)^2 = {s}")
    })?;
    let c = DiagramClass::stable(p("1 2"), BirthDeathGrid::standard(2)).map_err(err)?;
    let d = diagram_product(&c, &c).map_err(err)?;
    expect_labels(&d, &["1 3 2"])?;
    Ok(format!("{s}; {d}"))
}

fn criterion_4() -> Outcome {
    let a = diagram_product(&finite_class("2 1 3", 3), &finite_class("2 3 1", 3)).map_err(err)?;
    expect_labels(&a, &["1 2 3"])?;
    let b = diagram_product(&finite_class("2 3 1", 3), &finite_class("3 1 2", 3)).map_err(err)?;
    expect_labels(&b, &["2 1 3", "1 3 2"])?;
    Ok(format!("{a}; {b}"))
}

fn criterion_5() -> Outcome {
    let d =
        diagram_product(&finite_class("3 2 4 1", 4), &finite_class("2 4 1 3", 4)).map_err(err)?;
    expect_labels(&d, &["1 3 2 4", "1 2 4 3"])?;
    Ok(d.to_string())
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for w in all_permutations(4) {
        for i in 1..=3 {
            let r = Permutation::simple(i).map_err(err)?;
            for mode in [Mode::Finite(4), Mode::Stable] {
                let m = monk_product(&w, i, mode).map_err(err)?;
                let g = product(&w, &r, mode).map_err(err)?;
                ensure(m == g, || {
                    format!("{mode}: monk({w}, {i}) = {m}, product = {g}")
                })?;
                count += 1;
            }
        }
    }
    ensure(count == 144, || format!("{count} comparisons"))?;
    Ok(format!("{count} comparisons"))
}

fn seeded_s4_pairs(count: usize, salt: u64) -> Vec<(Permutation, Permutation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt);
    let perms: Vec<Permutation> = all_permutations(4).collect();
    (0..count)
        .map(|_| {
            let u = perms.choose(&mut rng).expect("nonempty").clone();
            let v = perms.choose(&mut rng).expect("nonempty").clone();
            (u, v)
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut corpus: Vec<(usize, Permutation, Permutation)> = Vec::new();
    for u in all_permutations(3) {
        for v in all_permutations(3) {
            corpus.push((3, u.clone(), v));
        }
    }
    corpus.extend(seeded_s4_pairs(50, 7).into_iter().map(|(u, v)| (4, u, v)));
    let mut extracted = 0;
    for (n, u, v) in &corpus {
        let fast = product(u, v, Mode::Finite(*n)).map_err(err)?;
        let oracle = product_oracle(u, v, *n).map_err(err)?;
        ensure(fast == oracle, || {
            format!("S_{n}: {u} * {v} = {fast}, oracle {oracle}")
        })?;

        let f = &schubert_poly(u) * &schubert_poly(v);
        let stable = expand_in_schubert(&f).map_err(err)?;
        for (w, c) in stable.terms() {
            let e = extract_coefficient(&f, w).map_err(err)?;
            ensure(&e == c, || {
                format!("coefficient of {w} in {u} * {v}: {c} vs {e}")
            })?;
            extracted += 1;
        }
    }
    ensure(corpus.len() == 86, || format!("{} pairs", corpus.len()))?;
    Ok(format!(
        "{} pairs, {extracted} extracted coefficients",
        corpus.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for w in all_permutations(5) {
        let s = expand_in_schubert(&schubert_poly(&w)).map_err(err)?;
        ensure(s.len() == 1 && s.coefficient(&w).is_one(), || {
            format!("S_({w}) expands to {s}")
        })?;
        count += 1;
    }
    ensure(count == 120, || format!("{count} permutations"))?;
    Ok(format!("{count} permutations"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let d = |f: &Polynomial, word: &[usize]| {
        word.iter().fold(f.clone(), |g, &i| g.divided_difference(i))
    };
    let mut checks = 0;
    for k in 0..200 {
        let f = random_polynomial(&mut rng, 4, 6, 8);
        ensure(f.max_var() <= 4, || "too many variables".into())?;
        ensure(f.terms().all(|(m, _)| m.degree() <= 6), || {
            "degree too large".into()
        })?;
        for i in 1..=3 {
            ensure(d(&f, &[i, i]).is_zero(), || {
                format!("d{i}^2 f != 0 on sample {k}")
            })?;
            checks += 1;
        }
        for i in 1..=2 {
            ensure(d(&f, &[i, i + 1, i]) == d(&f, &[i + 1, i, i + 1]), || {
                format!("braid relation at {i} on sample {k}")
            })?;
            checks += 1;
        }
        for (i, j) in [(1, 3), (1, 4), (2, 4)] {
            ensure(d(&f, &[i, j]) == d(&f, &[j, i]), || {
                format!("d{i} d{j} on sample {k}")
            })?;
            checks += 1;
        }
        // the defining quotient: (z_i - z_{i+1}) d_i f = f - r_i f
        for i in 1..=3 {
            let lhs = &(&Polynomial::var(i) - &Polynomial::var(i + 1)) * &f.divided_difference(i);
            ensure(lhs == &f - &f.swap_vars(i), || {
                format!("quotient identity at {i} on sample {k}")
            })?;
        }
    }
    Ok(format!("200 polynomials, {checks} relations"))
}

fn criterion_10() -> Outcome {
    let mut sizes = [0usize; 6];
    for seed in 0..100u64 {
        let n = 2 + (seed % 4) as usize;
        sizes[n] += 1;
        let a = random_presentation(n, SEED.wrapping_add(seed));
        let cell = reduce_to_cell(&a).map_err(err)?;

        let b = random_upper_triangular(n, SEED.wrapping_mul(31).wrapping_add(seed));
        let moved = a.gauge(&b).ok_or("gauge matrix rejected")?;
        let moved_cell = reduce_to_cell(&moved).map_err(err)?;
        ensure(
            moved_cell.perm == cell.perm && moved_cell.canonical == cell.canonical,
            || format!("(a) gauge changed the cell at seed {seed}"),
        )?;

        ensure(cell_rank_check(&a, &cell.perm), || {
            format!("(b) rank check at seed {seed}")
        })?;

        let bars = interval_decomposition(&a).map_err(err)?;
        let oracle = diagram_from_rank_invariant(&a).map_err(err)?;
        ensure(bars.same_multiset(&oracle), || {
            format!(
                "(c) bars {:?} vs oracle {:?} at seed {seed}",
                bars.sorted(),
                oracle.sorted()
            )
        })?;

        let pattern = CellPattern::new(cell.perm.clone(), n, PatternVariant::Plus);
        ensure(pattern.conforms(cell.canonical.entries()), || {
            format!("(d) pattern at seed {seed}")
        })?;
        ensure(pattern.free_positions().len() == cell.perm.length(), || {
            format!(
                "(d) free count {} vs length {} at seed {seed}",
                pattern.free_positions().len(),
                cell.perm.length()
            )
        })?;
    }
    Ok(format!(
        "100 presentations, n = 2..5 counts {:?}",
        &sizes[2..]
    ))
}

fn criterion_11() -> Outcome {
    let mut terms = 0;
    for (u, v) in seeded_s4_pairs(50, 11) {
        for mode in [Mode::Finite(4), Mode::Stable] {
            let uv = product(&u, &v, mode).map_err(err)?;
            let vu = product(&v, &u, mode).map_err(err)?;
            ensure(uv == vu, || {
                format!("{mode}: {u} * {v} = {uv} but {v} * {u} = {vu}")
            })?;
            for (w, c) in uv.terms() {
                ensure(w.length() == u.length() + v.length(), || {
                    format!("grading at {w} in {u} * {v}")
                })?;
                ensure(c >= &BigInt::one(), || {
                    format!("coefficient {c} at {w} in {u} * {v}")
                })?;
                terms += 1;
            }
        }
    }
    Ok(format!("50 pairs, {terms} terms"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Schubert polynomial table", criterion_1),
        ("finite vanishing", criterion_2),
        ("stable non-vanishing", criterion_3),
        ("S_3 diagram products", criterion_4),
        ("S_4 diagram product", criterion_5),
        ("Monk cross-check", criterion_6),
        ("oracle equivalence", criterion_7),
        ("basis round-trip", criterion_8),
        ("divided-difference algebra", criterion_9),
        ("persistence reduction", criterion_10),
        ("grading and positivity", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({ms} ms): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({ms} ms): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
