//! Property tests of the structural invariants: majorization implications,
//! generator inverse roundtrips, Kw-G complementarity, mixture bounds, and
//! the shifted-ratio lemma.

use proptest::prelude::*;

use stochord::baseline::Baseline;
use stochord::copula::Generator;
use stochord::extremes::{ExtremeModel, NDist, Side};
use stochord::kwg::{kwg_cdf, kwg_sf, KwGParams, ParamVector};
use stochord::orders::{majorize_check, MajKind};
use stochord::theorems::lemma2_property_check;

fn arb_generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::Independence),
        (1.0..4.0f64).prop_map(|theta| Generator::Gumbel { theta }),
        (1.0..4.0f64).prop_map(|theta| Generator::GumbelHougaard { theta }),
        (0.1..4.0f64).prop_map(|theta| Generator::Clayton { theta }),
        (-0.95..0.9f64).prop_map(|theta| Generator::Amh { theta }),
        (0.2..4.0f64).prop_map(|theta| Generator::Frank { theta }),
        (-4.0..-0.2f64).prop_map(|theta| Generator::Frank { theta }),
    ]
}

proptest! {
    #[test]
    fn majorization_implies_both_weak_forms(
        base in proptest::collection::vec(0.1..5.0f64, 2..6),
        pairs in proptest::collection::vec((0usize..6, 0usize..6, 0.0..0.9f64), 1..4),
    ) {
        let n = base.len();
        let mut spread = base.clone();
        for (i, j, frac) in pairs {
            let (i, j) = (i % n, j % n);
            if i == j { continue; }
            let (lo, hi) = if spread[i] <= spread[j] { (i, j) } else { (j, i) };
            let t = frac * spread[lo];
            spread[lo] -= t;
            spread[hi] += t;
        }
        prop_assume!(majorize_check(&base, &spread, MajKind::M).unwrap());
        prop_assert!(majorize_check(&base, &spread, MajKind::WeakSub).unwrap());
        prop_assert!(majorize_check(&base, &spread, MajKind::WeakSuper).unwrap());
    }

    #[test]
    fn generator_inverse_roundtrip(g in arb_generator(), t in 1e-6..40.0f64) {
        let v = g.psi(t);
        prop_assert!(v > 0.0 && v <= 1.0);
        let back = g.phi(v).unwrap();
        prop_assert!((back - t).abs() <= 1e-8 * t.max(1.0), "{g:?}: {back} vs {t}");
        prop_assert!(g.psi_d1(t) <= 0.0);
    }

    #[test]
    fn kwg_cdf_sf_complement(
        alpha in 0.1..4.0f64,
        gamma in 0.1..4.0f64,
        rate in 0.3..2.0f64,
        x in 0.01..10.0f64,
    ) {
        let b = Baseline::Exponential { rate };
        let p = KwGParams::new(alpha, gamma).unwrap();
        let (c, s) = (kwg_cdf(p, &b, x), kwg_sf(p, &b, x));
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert!((c + s - 1.0).abs() <= 1e-12);
        // cdf nondecreasing in x
        let c2 = kwg_cdf(p, &b, x * 1.05);
        prop_assert!(c2 >= c - 1e-15);
    }

    #[test]
    fn mixture_lies_between_fixed_extremes(
        alphas in proptest::collection::vec(0.2..3.0f64, 2..5),
        seed_gammas in proptest::collection::vec(0.2..3.0f64, 2..5),
        g in arb_generator(),
        x in 0.05..8.0f64,
        w in 0.05..0.95f64,
    ) {
        let n = alphas.len().min(seed_gammas.len());
        let alphas = alphas[..n].to_vec();
        let gammas = seed_gammas[..n].to_vec();
        prop_assume!(n >= 2);
        let m = ExtremeModel::new(
            Side::Max,
            Baseline::Exponential { rate: 1.0 },
            ParamVector::new(alphas, gammas).unwrap(),
            g,
            NDist::new(vec![n - 1, n], vec![w, 1.0 - w]).unwrap(),
        ).unwrap();
        let v = m.random_max_cdf(x);
        let f1 = m.fixed_max_cdf(n - 1, x).unwrap();
        let f2 = m.fixed_max_cdf(n, x).unwrap();
        prop_assert!(v <= f1.max(f2) + 1e-12 && v >= f1.min(f2) - 1e-12);
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn lemma2_on_exponential_triples(
        a in 0.5..3.0f64,
        c_frac in 0.1..1.0f64,
        b_frac in 0.1..1.0f64,
    ) {
        // rates a >= c >= b make d1/d2, d/d2, d1/d all nonincreasing
        let c = a * c_frac.max(b_frac);
        let b = a * c_frac.min(b_frac) * 0.99;
        let xs: Vec<f64> = (0..60).map(|i| 0.1 * i as f64).collect();
        let d1: Vec<f64> = xs.iter().map(|&x| (-a * x).exp()).collect();
        let d2: Vec<f64> = xs.iter().map(|&x| (-b * x).exp()).collect();
        let d: Vec<f64> = xs.iter().map(|&x| (-c * x).exp()).collect();
        let out = lemma2_property_check(&d1, &d2, &d).unwrap();
        prop_assert!(out.premises_hold);
        prop_assert_eq!(out.conclusion_decreasing, Some(true));
    }
}
