//! Upper-set algebra and AV@R invariants on randomized instances.

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regrisk::risk::flattened_matrix;
use regrisk::{
    avar_loss, avar_scalar_support, evaluate_flattened, wedge_zero, Combine, ConeLiftMode, DataMatrix,
    DirectionGrid, RiskConfig, UpperSet,
};

fn mode(constant: bool) -> ConeLiftMode {
    if constant {
        ConeLiftMode::Constant
    } else {
        ConeLiftMode::Columnwise
    }
}

/// A regulator cone in `ℝ^d`, either the orthant or a random one over it.
fn config(rng: &mut ChaCha8Rng, alpha: f64, d: usize, m: usize, lift: ConeLiftMode) -> RiskConfig {
    let cone = if rng.gen_bool(0.5) {
        regrisk::PolyhedralCone::orthant(d).unwrap()
    } else {
        common::cone_over_orthant(rng, d, 3)
    };
    RiskConfig::new(alpha, cone, m, lift, None, 24).unwrap()
}

/// A random nonempty upper set: the intersection of a few halfspaces with
/// normals in `K_M⁺`, canonicalized.
fn random_set(rng: &mut ChaCha8Rng, grid: &Arc<DirectionGrid>) -> UpperSet {
    let gens = grid.generator_directions().to_vec();
    let mut set = UpperSet::whole_space(grid.clone());
    for _ in 0..rng.gen_range(1..=3) {
        let mut u = vec![0.0; grid.m()];
        for g in &gens {
            let c: f64 = rng.gen_range(0.0..1.0);
            u.iter_mut().zip(g).for_each(|(a, b)| *a += c * b);
        }
        if u.iter().all(|&v| v.abs() < 1e-3) {
            u = gens[0].clone();
        }
        let h = UpperSet::from_halfspace(&u, rng.gen_range(-3.0..3.0), grid.clone()).unwrap();
        set = set.combine(Combine::Intersect, Some(&h)).unwrap();
    }
    set
}

fn data(rng: &mut ChaCha8Rng, d: usize, n: usize) -> DataMatrix {
    let cut = rng.gen_range(1..=n);
    let blocks = if cut < n { vec![cut, n - cut] } else { vec![n] };
    DataMatrix::new(d, blocks, common::entries(rng, d * n, 5)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn upper_sets_absorb_the_cone(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=d);
        let cfg = config(&mut rng, 0.5, d, m, ConeLiftMode::Columnwise);
        let set = random_set(&mut rng, cfg.grid());
        prop_assume!(!set.is_empty());
        for _ in 0..16 {
            let z: Vec<f64> = (0..m).map(|_| rng.gen_range(-20.0..20.0)).collect();
            if set.contains_point(&z, 0.0) {
                for k in cfg.k_m().generators_f64() {
                    let shifted: Vec<f64> = z.iter().zip(k).map(|(a, b)| a + rng.gen_range(0.0..5.0) * b).collect();
                    prop_assert!(set.contains_point(&shifted, 1e-9));
                }
            }
        }
    }

    #[test]
    fn combinations_stay_canonical(seed in any::<u64>(), d in 1usize..=3, lambda in 0.0f64..=1.0, scale in 0.1f64..4.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=d);
        let cfg = config(&mut rng, 0.5, d, m, ConeLiftMode::Columnwise);
        let a = random_set(&mut rng, cfg.grid());
        let b = random_set(&mut rng, cfg.grid());
        prop_assert!(a.is_canonical(1e-7).unwrap());
        for out in [
            a.combine(Combine::MinkowskiSum, Some(&b)).unwrap(),
            a.combine(Combine::Intersect, Some(&b)).unwrap(),
            a.combine(Combine::Scale(scale), None).unwrap(),
            a.combine(Combine::ConvexComb(lambda), Some(&b)).unwrap(),
        ] {
            prop_assert!(out.is_canonical(1e-7).unwrap());
        }
    }

    #[test]
    fn inclusion_is_a_partial_order(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=d);
        let cfg = config(&mut rng, 0.5, d, m, ConeLiftMode::Columnwise);
        let a = random_set(&mut rng, cfg.grid());
        let b = random_set(&mut rng, cfg.grid());
        let c = random_set(&mut rng, cfg.grid());
        prop_assert!(a.includes(&a, 0.0).unwrap());
        if a.includes(&b, 0.0).unwrap() && b.includes(&a, 0.0).unwrap() {
            prop_assert_eq!(a.support(), b.support());
        }
        // Intersections give a chain to test transitivity on.
        let ab = a.combine(Combine::Intersect, Some(&b)).unwrap();
        let abc = ab.combine(Combine::Intersect, Some(&c)).unwrap();
        prop_assert!(a.includes(&ab, 0.0).unwrap());
        prop_assert!(ab.includes(&abc, 0.0).unwrap());
        prop_assert!(a.includes(&abc, 0.0).unwrap());
    }

    #[test]
    fn adding_the_cone_changes_nothing(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=d);
        let cfg = config(&mut rng, 0.5, d, m, ConeLiftMode::Columnwise);
        let a = random_set(&mut rng, cfg.grid());
        let k = UpperSet::indicator(true, cfg.grid().clone());
        let sum = a.combine(Combine::MinkowskiSum, Some(&k)).unwrap();
        prop_assert_eq!(sum.support(), a.support());
        prop_assert_eq!(sum.is_empty(), a.is_empty());
    }

    #[test]
    fn avar_depends_only_on_the_wedge(seed in any::<u64>(), d in 1usize..=3, n in 1usize..=8, constant in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=d);
        let alpha = rng.gen_range(0.05..=1.0);
        let cfg = config(&mut rng, alpha, d, m, mode(constant));
        let mut x = data(&mut rng, d, n);
        if rng.gen_bool(0.4) {
            x = x.with_values(x.values().iter().map(|v| v.abs()).collect()).unwrap();
        }
        let w = wedge_zero(&x, cfg.cone(), cfg.mode()).unwrap();
        let (rx, rw) = (avar_loss(&x, &cfg).unwrap(), avar_loss(&w, &cfg).unwrap());
        prop_assert_eq!(rx.support(), rw.support());
    }

    #[test]
    fn avar_is_monotone_and_convex_on_the_orthant(seed in any::<u64>(), d in 1usize..=3, n in 1usize..=8, constant in any::<bool>(), lambda in 0.0f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=d);
        let cfg = common::orthant_config(rng.gen_range(0.05..=1.0), d, m, mode(constant));
        let x = data(&mut rng, d, n);
        let y = x.with_values(common::entries(&mut rng, d * n, 5)).unwrap();
        // Monotonicity: a pointwise larger position needs no more capital.
        let up = x.with_values(x.values().iter().map(|v| v + rng.gen_range(0.0..3.0)).collect()).unwrap();
        let (rx, rup) = (avar_loss(&x, &cfg).unwrap(), avar_loss(&up, &cfg).unwrap());
        if cfg.lift_contains(&up.sub(&x).unwrap()).unwrap() {
            prop_assert!(rup.includes(&rx, 1e-7).unwrap());
        }
        let ry = avar_loss(&y, &cfg).unwrap();
        let mix = avar_loss(&x.convex_combination(lambda, &y).unwrap(), &cfg).unwrap();
        for ((hm, hx), hy) in mix.support().iter().zip(rx.support()).zip(ry.support()) {
            prop_assert!(*hm <= lambda * hx + (1.0 - lambda) * hy + 1e-7);
        }
    }

    #[test]
    fn zero_position_and_cash_cover(seed in any::<u64>(), d in 1usize..=3, n in 1usize..=6, constant in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=d);
        let alpha = rng.gen_range(0.05..=1.0);
        let cfg = config(&mut rng, alpha, d, m, mode(constant));
        let zero = DataMatrix::zeros(d, vec![n]).unwrap();
        let r0 = avar_loss(&zero, &cfg).unwrap();
        prop_assert!(r0.support().iter().all(|&h| h <= 0.0));
        let gens = cfg.grid().generator_directions().len();
        prop_assert!(r0.support()[..gens].iter().any(|&h| h >= 0.0));
        // z in K_M, embedded in ℝ^d with zero tail.
        let mut z = vec![0.0; d];
        for k in cfg.k_m().generators_f64() {
            let c = rng.gen_range(0.0..3.0);
            z.iter_mut().zip(k).for_each(|(a, b)| *a += c * b);
        }
        let cash = zero.translate(&z.iter().map(|v| -v).collect::<Vec<_>>()).unwrap();
        prop_assert!(avar_loss(&cash, &cfg).unwrap().contains_point(&z[..m], 1e-7));
    }

    #[test]
    fn scalar_support_is_classical_cvar_at_d1(seed in any::<u64>(), n in 1usize..=30, alpha in 0.01f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::loss_row(&mut rng, n, 10);
        let cfg = common::orthant_config(alpha, 1, 1, ConeLiftMode::Columnwise);
        let losses: Vec<f64> = x.row(0).iter().map(|v| -v).collect();
        let expected = common::cvar_oracle(&losses, &common::uniform(n), alpha);
        let got = avar_scalar_support(&x, &cfg, &[1.0]).unwrap();
        prop_assert!((got - expected).abs() <= 1e-8, "{} vs {}", got, expected);
    }

    #[test]
    fn weighted_scenarios_match_the_weighted_oracle(seed in any::<u64>(), blocks in prop::collection::vec(1usize..=4, 1..=4), alpha in 0.05f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n: usize = blocks.iter().sum();
        let raw: Vec<f64> = blocks.iter().map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let per: Vec<f64> = raw.iter().map(|p| p / total).collect();
        let weights = regrisk::ScenarioWeights::new(per.clone()).unwrap();
        let obs: Vec<f64> = blocks.iter().zip(&per).flat_map(|(&b, &p)| vec![p / b as f64; b]).collect();
        let x = DataMatrix::new(1, blocks, common::loss_row(&mut rng, n, 10).row(0).to_vec()).unwrap();
        let cfg = RiskConfig::new(alpha, regrisk::PolyhedralCone::orthant(1).unwrap(), 1, ConeLiftMode::Columnwise, Some(weights), 8).unwrap();
        let losses: Vec<f64> = x.row(0).iter().map(|v| -v).collect();
        let expected = common::cvar_oracle(&losses, &obs, alpha);
        prop_assert!((avar_scalar_support(&x, &cfg, &[1.0]).unwrap() - expected).abs() <= 1e-8);
    }

    #[test]
    fn flattening_a_single_observation_changes_nothing(seed in any::<u64>(), d in 1usize..=3, alpha in 0.05f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = common::orthant_config(alpha, d, d, ConeLiftMode::Columnwise);
        let x = DataMatrix::new(d, vec![1], common::entries(&mut rng, d, 5)).unwrap();
        let flat = evaluate_flattened(&x.flatten(), &cfg).unwrap();
        let plain = avar_loss(&x, &cfg).unwrap();
        prop_assert_eq!(flat.support(), plain.support());
    }

    #[test]
    fn flattened_diagonal_is_the_scaled_mean_loss(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::loss_row(&mut rng, n, 10);
        let cfg = common::orthant_config(1.0, 1, 1, ConeLiftMode::Columnwise);
        let tilde = common::orthant_config(0.5, n, n, ConeLiftMode::Columnwise);
        let u = vec![1.0 / (n as f64).sqrt(); n];
        let flat = avar_scalar_support(&flattened_matrix(&x.flatten()).unwrap(), &tilde, &u).unwrap();
        let plain = avar_scalar_support(&x, &cfg, &[1.0]).unwrap();
        prop_assert!((flat / (n as f64).sqrt() - plain).abs() <= 1e-8);
    }
}
