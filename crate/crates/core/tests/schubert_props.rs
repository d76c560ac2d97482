use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use schubert_core::perm::{all_permutations, Permutation};
use schubert_core::schubert::{
    cell_dimension, coinvariant_reduce, expand_in_schubert, extract_coefficient, lr_coefficient,
    monk_product, product, product_oracle, schubert_poly, schubert_poly_from_word,
    staircase_monomial, CellVariant, FormalSum, Mode,
};

fn perm_in(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|line| Permutation::from_one_line(&line).unwrap())
    })
}

fn perm_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|line| Permutation::from_one_line(&line).unwrap())
}

/// Reduced word built by always swapping the rightmost descent.
fn rightmost_descent_word(w: &Permutation) -> Vec<usize> {
    let mut line = w.one_line();
    let mut word = Vec::new();
    while let Some(i) = (0..line.len().saturating_sub(1))
        .rev()
        .find(|&i| line[i] > line[i + 1])
    {
        line.swap(i, i + 1);
        word.push(i + 1);
    }
    word.reverse();
    word
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn independent_of_reduced_word(w in perm_of(5)) {
        let w0w = Permutation::longest(5).compose(&w);
        let word = rightmost_descent_word(&w0w);
        prop_assert_eq!(word.len(), w0w.length());
        let alt = schubert_poly_from_word(&w, 5, &word).expect("reduced word of w0 w");
        prop_assert_eq!(alt, schubert_poly(&w));
    }

    #[test]
    fn stable_under_embedding(w in perm_in(4), extra in 1usize..3) {
        let n = w.degree().max(1);
        let m = n + extra;
        let word = Permutation::longest(m).compose(&w).reduced_word();
        prop_assert_eq!(schubert_poly_from_word(&w, m, &word).unwrap(), schubert_poly(&w));
        let by_hand = word.iter().fold(staircase_monomial(m), |g, &i| g.divided_difference(i));
        prop_assert_eq!(by_hand, schubert_poly(&w));
    }

    #[test]
    fn code_monomial_and_degree(w in perm_in(6)) {
        let f = schubert_poly(&w);
        prop_assert!(f.is_homogeneous_of_degree(w.length() as u32));
        let (m, c) = f.lex_trailing().expect("nonzero");
        let code: Vec<u32> = w.lehmer_code().iter().map(|&c| c as u32).collect();
        prop_assert_eq!(m.exponents(), &code[..]);
        prop_assert!(c.is_one());
        prop_assert!(f.terms().all(|(_, c)| c >= &BigInt::one()));
    }

    #[test]
    fn divided_difference_descends(w in perm_in(6), i in 1usize..7) {
        let f = schubert_poly(&w);
        let wi = w.times_simple(i);
        if wi.length() < w.length() {
            prop_assert_eq!(f.divided_difference(i), schubert_poly(&wi));
        } else {
            prop_assert!(f.divided_difference(i).is_zero());
        }
    }

    #[test]
    fn expansion_matches_extraction(u in perm_in(4), v in perm_in(4)) {
        let f = &schubert_poly(&u) * &schubert_poly(&v);
        let sum = expand_in_schubert(&f).unwrap();
        prop_assert_eq!(sum.to_polynomial(), f.clone());
        for (w, c) in sum.terms() {
            prop_assert_eq!(&extract_coefficient(&f, w).unwrap(), c);
        }
    }

    #[test]
    fn product_is_graded_positive_and_commutative(u in perm_of(4), v in perm_of(4)) {
        for mode in [Mode::Finite(4), Mode::Stable] {
            let uv = product(&u, &v, mode).unwrap();
            prop_assert_eq!(&uv, &product(&v, &u, mode).unwrap());
            for (w, c) in uv.terms() {
                prop_assert_eq!(w.length(), u.length() + v.length());
                prop_assert!(c >= &BigInt::one());
            }
        }
    }

    #[test]
    fn finite_matches_oracle(u in perm_of(4), v in perm_of(4)) {
        prop_assert_eq!(product(&u, &v, Mode::Finite(4)).unwrap(), product_oracle(&u, &v, 4).unwrap());
    }

    #[test]
    fn finite_is_truncated_stable(u in perm_of(4), v in perm_of(4)) {
        let stable = product(&u, &v, Mode::Stable).unwrap();
        prop_assert_eq!(stable.truncate(4), product(&u, &v, Mode::Finite(4)).unwrap());
    }

    #[test]
    fn monk_matches_general_product(w in perm_in(5), i in 1usize..5) {
        let r = Permutation::simple(i).unwrap();
        prop_assert_eq!(monk_product(&w, i, Mode::Stable).unwrap(), product(&w, &r, Mode::Stable).unwrap());
        if i < 5 && w.degree() <= 5 {
            let n = Mode::Finite(5);
            prop_assert_eq!(monk_product(&w, i, n).unwrap(), product(&w, &r, n).unwrap());
        }
    }

    #[test]
    fn associativity(u in perm_of(3), v in perm_of(3), w in perm_of(3)) {
        let f = &(&schubert_poly(&u) * &schubert_poly(&v)) * &schubert_poly(&w);
        let mut left = FormalSum::zero(Mode::Stable);
        for (x, c) in product(&u, &v, Mode::Stable).unwrap().terms() {
            for (y, d) in product(x, &w, Mode::Stable).unwrap().terms() {
                left.add(y.clone(), c * d);
            }
        }
        prop_assert_eq!(left, expand_in_schubert(&f).unwrap());
    }

    #[test]
    fn reduction_kills_symmetric_ideal(w in perm_of(4), k in 1usize..5) {
        let e = schubert_core::poly::elementary_symmetric(k, 4).unwrap();
        let f = &e * &schubert_poly(&w);
        prop_assert!(coinvariant_reduce(&f, 4).unwrap().is_zero());
    }

    #[test]
    fn lr_coefficient_is_a_product_coefficient(w in perm_of(4), v in perm_of(4), u in perm_of(4)) {
        let c = lr_coefficient(&w, &v, &u, Mode::Finite(4)).unwrap();
        prop_assert_eq!(c, product(&w, &v, Mode::Finite(4)).unwrap().coefficient(&u));
    }
}

#[test]
fn cell_dimensions_on_s6() {
    let top = 15;
    for w in all_permutations(6) {
        let plus = cell_dimension(&w, 6, CellVariant::Plus).unwrap();
        let minus = cell_dimension(&w, 6, CellVariant::Minus).unwrap();
        assert_eq!(plus, w.length());
        assert_eq!(plus + minus, top);
    }
}

#[test]
fn top_class_products() {
    let w0 = Permutation::longest(4);
    for w in all_permutations(4) {
        let p = product(&w0, &w, Mode::Finite(4)).unwrap();
        if w.is_identity() {
            assert_eq!(p, FormalSum::single(Mode::Finite(4), w0.clone()));
        } else {
            assert!(p.is_zero(), "{w:?}");
        }
    }
}

#[test]
fn poincare_duality_on_s4() {
    let n = 4;
    let w0 = Permutation::longest(n);
    for u in all_permutations(n) {
        for v in all_permutations(n) {
            if u.length() + v.length() != w0.length() {
                continue;
            }
            let c = lr_coefficient(&u, &v, &w0, Mode::Finite(n)).unwrap();
            let dual = w0.compose(&u) == v;
            assert_eq!(c, BigInt::from(dual as i32), "{u:?} {v:?}");
        }
    }
}
