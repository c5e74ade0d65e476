use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dcm_core::dynamics::RewiringEngine;
use dcm_core::halfedge::hamming_distance;
use dcm_core::mixing::{decomposition_bounds, theory_profile, tv_distance, Theory};
use dcm_core::regularity::Regime;
use dcm_core::walk::transition_matrix;
use dcm_core::{Configuration, DegreeMode, DegreeSequence};

fn degrees(min: u32, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(min..=max, 2..40).prop_map(|mut d| {
        if d.iter().sum::<u32>() % 2 == 1 {
            d[0] += 1;
        }
        d
    })
}

fn distribution(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, len).prop_map(|v| {
        let total: f64 = v.iter().sum::<f64>() + 1e-300;
        if total < 1e-12 {
            let mut p = vec![0.0; v.len()];
            p[0] = 1.0;
            p
        } else {
            v.iter().map(|x| x / total).collect()
        }
    })
}

fn is_involution(c: &Configuration) -> bool {
    (0..c.ell() as u32).all(|x| c.partner(x) != x && c.partner(c.partner(x)) == x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uniform_pairing_is_involution(d in degrees(1, 6), seed in any::<u64>()) {
        let ds = DegreeSequence::new(d, DegreeMode::R);
        prop_assume!(ds.is_ok());
        let ds = ds.unwrap();
        let c = Configuration::sample_uniform(&ds, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(is_involution(&c));
    }

    #[test]
    fn rewiring_moves_at_most_k_edges(
        d in degrees(2, 5),
        k_frac in 0.0f64..1.0,
        steps in 1usize..6,
        seed in any::<u64>(),
    ) {
        let ds = DegreeSequence::new(d, DegreeMode::R).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eta = Configuration::sample_uniform(&ds, &mut rng);
        let m = ds.m();
        prop_assume!(m >= 2);
        let k = 2 + ((m - 2) as f64 * k_frac) as usize;
        let mut engine = RewiringEngine::new(eta.clone(), k).unwrap();
        let mut prev = eta.clone();
        for _ in 0..steps {
            let rewired = engine.step(&mut rng).to_vec();
            prop_assert_eq!(rewired.len(), 2 * k);
            let now = engine.config().clone();
            prop_assert!(is_involution(&now));
            prop_assert!(hamming_distance(&prev, &now).unwrap() <= k);
            for x in 0..ds.ell() as u32 {
                if now.partner(x) != prev.partner(x) {
                    prop_assert!(rewired.contains(&x));
                }
            }
            prev = now;
        }
        engine.restart();
        prop_assert_eq!(engine.config(), &eta);
        prop_assert_eq!(engine.time(), 0);
    }

    #[test]
    fn hamming_is_symmetric(d in degrees(2, 4), s1 in any::<u64>(), s2 in any::<u64>()) {
        let ds = DegreeSequence::new(d, DegreeMode::R).unwrap();
        let a = Configuration::sample_uniform(&ds, &mut ChaCha8Rng::seed_from_u64(s1));
        let b = Configuration::sample_uniform(&ds, &mut ChaCha8Rng::seed_from_u64(s2));
        let ab = hamming_distance(&a, &b).unwrap();
        prop_assert_eq!(ab, hamming_distance(&b, &a).unwrap());
        prop_assert!(ab <= ds.m());
        prop_assert_eq!(hamming_distance(&a, &a).unwrap(), 0);
    }

    #[test]
    fn walk_kernel_is_doubly_stochastic(d in degrees(2, 6), seed in any::<u64>()) {
        let ds = DegreeSequence::new(d, DegreeMode::R).unwrap();
        let eta = Configuration::sample_uniform(&ds, &mut ChaCha8Rng::seed_from_u64(seed));
        let p = transition_matrix(&ds, &eta).unwrap();
        for s in p.row_sums().into_iter().chain(p.column_sums()) {
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tv_matches_direct_sum(pair in (2usize..50).prop_flat_map(|n| (distribution(n), distribution(n)))) {
        let (p, q) = pair;
        let direct: f64 = p.iter().zip(&q).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0;
        let tv = tv_distance(&p, &q).unwrap();
        prop_assert!((tv - direct).abs() <= 1e-14);
        prop_assert!((tv - tv_distance(&q, &p).unwrap()).abs() <= 1e-15);
    }

    #[test]
    fn tv_triangle_inequality(
        triple in (2usize..30).prop_flat_map(|n| (distribution(n), distribution(n), distribution(n)))
    ) {
        let (p, q, r) = triple;
        let pq = tv_distance(&p, &q).unwrap();
        let qr = tv_distance(&q, &r).unwrap();
        let pr = tv_distance(&p, &r).unwrap();
        prop_assert!(pr <= pq + qr + 1e-12);
    }

    #[test]
    fn mixture_sits_inside_bounds(
        parts in (2usize..30).prop_flat_map(|n| (distribution(n), distribution(n))),
        p in 0.0f64..=1.0,
    ) {
        let (a, b) = parts;
        let n = a.len();
        let u = vec![1.0 / n as f64; n];
        let mix: Vec<f64> = a.iter().zip(&b).map(|(x, y)| p * x + (1.0 - p) * y).collect();
        let total: f64 = mix.iter().sum();
        let mix: Vec<f64> = mix.iter().map(|v| v / total).collect();
        let ta = tv_distance(&a, &u).unwrap();
        let tb = tv_distance(&b, &u).unwrap();
        let (lo, hi) = decomposition_bounds(p, ta, tb).unwrap();
        let tv = tv_distance(&mix, &u).unwrap();
        prop_assert!(lo <= hi);
        prop_assert!(lo - 1e-12 <= tv && tv <= hi + 1e-12);
    }

    #[test]
    fn theory_is_monotone_away_from_cutoff(c1 in 0.0f64..3.0, c2 in 0.0f64..3.0, beta in 0.1f64..5.0) {
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        let cs = 1.081266;
        for regime in [Regime::Supercritical, Regime::Critical, Regime::Subcritical] {
            let a = theory_profile(regime, beta, cs, lo).unwrap();
            let b = theory_profile(regime, beta, cs, hi).unwrap();
            if let (Theory::Value(a), Theory::Value(b)) = (a, b) {
                prop_assert!(b <= a + 1e-15);
                prop_assert!((0.0..=1.0).contains(&a));
            }
        }
    }
}

#[test]
fn critical_drop_height_at_cutoff() {
    let cs = 1.081266f64;
    let beta = 2.0;
    let below = theory_profile(Regime::Critical, beta, cs, cs * (1.0 - 1e-12)).unwrap();
    let height = (-beta * cs * cs / 2.0).exp();
    assert!((below.value().unwrap() - height).abs() < 1e-9);
    assert!((height - 0.3107).abs() < 1e-3);
    assert_eq!(theory_profile(Regime::Critical, beta, cs, cs).unwrap(), Theory::Undefined);
    assert_eq!(
        theory_profile(Regime::Critical, beta, cs, cs * (1.0 + 1e-12)).unwrap(),
        Theory::Value(0.0)
    );
}
