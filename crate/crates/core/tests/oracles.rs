//! Independent oracles for the exact kernels, and property tests of the
//! invariants the constructions must respect.

use ba_core::certify::certify_ba;
use ba_core::config::{build_am1n, from_alphas};
use ba_core::exact::rational::{gauss_real, int, rat};
use ba_core::exact::symmetric::{
    elementary_from_poly, elementary_of, f_to_e, f_to_ehat, identity_a_lhs, identity_a_rhs,
    identity_b_lhs, identity_b_rhs,
};
use ba_core::exact::wronskian::determinant;
use ba_core::exact::{BigFloat, RatPoly, Rational, TrigPoly};
use ba_core::qi::{
    closed_form_numerator, expand_numerator, hilbert_coefficients, hilbert_rational_form, qi_dimension_exact,
    qi_dimension_numeric,
};
use num_traits::One;
use proptest::prelude::*;

/// Leibniz expansion over all permutations.
fn leibniz(m: &[Vec<TrigPoly>]) -> TrigPoly {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], false)];
        }
        let mut out = Vec::new();
        for (p, odd) in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                // inserting at pos moves the new element past n−1−pos others
                out.push((q, odd ^ ((n - 1 - pos) % 2 == 1)));
            }
        }
        out
    }
    let mut acc = TrigPoly::zero();
    for (p, odd) in perms(m.len()) {
        let mut t = TrigPoly::one();
        for (i, &j) in p.iter().enumerate() {
            t = &t * &m[i][j];
        }
        acc = if odd { &acc - &t } else { &acc + &t };
    }
    acc
}

fn trig(terms: &[(i64, i64)]) -> TrigPoly {
    let mut t = TrigPoly::zero();
    for &(l, c) in terms {
        t.add_term(l, gauss_real(int(c)));
    }
    t
}

fn small_trig() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec((-2i64..=2, -3i64..=3), 0..3).prop_map(|v| trig(&v))
}

/// Roots sin²φ in (0,1) as rationals a/b.
fn sin_squares(max: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((1i64..40, 41i64..60), 1..=max)
        .prop_map(|v| v.into_iter().map(|(a, b)| rat(a, b)).collect())
}

fn alphas(max: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set((-9i64..=9, 1i64..=4), 1..=max).prop_map(|s| {
        let mut out: Vec<Rational> = Vec::new();
        for (a, b) in s {
            let r = rat(a, b);
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    })
}

#[test]
fn bareiss_matches_leibniz_on_a_wronskian_matrix() {
    let fs = [trig(&[(1, 1), (-1, 2)]), trig(&[(2, 1), (0, -1)]), trig(&[(3, 1), (-2, 3)])];
    let mut rows = vec![fs.to_vec()];
    for i in 1..3 {
        rows.push(rows[i - 1].iter().map(TrigPoly::derivative).collect());
    }
    assert_eq!(determinant(rows.clone()), leibniz(&rows));
}

#[test]
fn am1n_hilbert_against_closed_form() {
    for m in 1..=3 {
        for n in 1..=5 {
            let c = build_am1n(m, n, 192).unwrap();
            let d = (2 * m + 2 * n + 4) as usize;
            let b = hilbert_coefficients(&c, d).unwrap();
            assert_eq!(b, expand_numerator(&closed_form_numerator(m, n), d), "(m,n) = ({m},{n})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_agrees_with_leibniz(entries in prop::collection::vec(small_trig(), 9)) {
        let rows: Vec<Vec<TrigPoly>> = entries.chunks(3).map(|r| r.to_vec()).collect();
        prop_assert_eq!(determinant(rows.clone()), leibniz(&rows));
    }

    #[test]
    fn f_to_ehat_matches_direct_inversion(u in sin_squares(4)) {
        let f = elementary_of(&u);
        let direct: Vec<Rational> = u.iter().map(|x| x.recip() - Rational::one()).collect();
        prop_assert_eq!(f_to_ehat(&f).unwrap(), elementary_of(&direct));
    }

    #[test]
    fn f_to_e_matches_pair_products(u in sin_squares(3), odd in any::<bool>()) {
        // the pair ±φ contributes z² − 2cos(2φ) z + 1 with cos 2φ = 1 − 2 sin²φ
        let mut p = RatPoly::one();
        for x in &u {
            let mid = -(int(2) - int(4) * x.clone());
            p = &p * &RatPoly::new(vec![int(1), mid, int(1)]);
        }
        let n = 2 * u.len() + usize::from(odd);
        if odd {
            p = &p * &RatPoly::new(vec![int(1), int(1)]);
        }
        prop_assert_eq!(f_to_e(&elementary_of(&u), n), elementary_from_poly(&p));
    }

    #[test]
    fn binomial_identities_hold(m in 1u32..8, n in 1u32..9, r in 1u32..9) {
        prop_assume!(r <= n);
        prop_assert_eq!(identity_a_lhs(m, n, r), identity_a_rhs(m, n, r));
        if r <= n / 2 {
            prop_assert_eq!(identity_b_lhs(m, n, r), identity_b_rhs(m, n, r));
        }
    }

    #[test]
    fn numerator_round_trip(m in 1u32..6, n in 1u32..8, extra in 0usize..6) {
        let num = closed_form_numerator(m, n);
        let d = (2 * m + 2 * n + 2) as usize + extra;
        let h = hilbert_rational_form(&expand_numerator(&num, d), m, n).unwrap();
        prop_assert_eq!(&h.numerator, &num);
        let (g, big_m) = h.gorenstein();
        prop_assert!(g);
        prop_assert_eq!(big_m, Some(2 - 2 * m as i64 - 2 * n as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Reflecting x ↦ −x sends slope α to −α and fixes the multiple line.
    #[test]
    fn dimensions_are_mirror_invariant(m in 1u32..3, a in alphas(3)) {
        let neg: Vec<Rational> = a.iter().map(|x| -x.clone()).collect();
        let c = from_alphas(m, &a, 128).unwrap();
        let r = from_alphas(m, &neg, 128).unwrap();
        for d in 0..=(2 * m as usize + 2 * a.len() + 2) {
            prop_assert_eq!(qi_dimension_exact(&c, d).unwrap(), qi_dimension_exact(&r, d).unwrap());
        }
    }

    /// The angle-based rank and the exact remainder map are separate routes.
    #[test]
    fn numeric_rank_matches_exact(m in 1u32..3, a in alphas(3)) {
        let c = from_alphas(m, &a, 256).unwrap();
        for d in 0..=(2 * m as usize + 2 * a.len() + 2) {
            prop_assert_eq!(qi_dimension_numeric(&c, d, 256, None).unwrap(), qi_dimension_exact(&c, d).unwrap(), "d = {}", d);
        }
    }

    /// The existence conditions only see angle differences.
    #[test]
    fn rotation_keeps_certificates(m in 1u32..4, n in 2u32..6, k in 1i64..40) {
        let c = build_am1n(m, n, 256).unwrap();
        let rot = c.rotated(&BigFloat::from_rational(&rat(k, 41), 256));
        prop_assert!(certify_ba(&rot, -224.0).unwrap().passed());
        let bent = rot.perturbed(1, &BigFloat::from_rational(&rat(1, 1 << 20), 256));
        prop_assert!(!certify_ba(&bent, -224.0).unwrap().passed());
    }
}
