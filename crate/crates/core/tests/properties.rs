use std::sync::Arc;

use mixdiv_core::audit::{check_interpolation, effectively_proportional, Tolerances};
use mixdiv_core::divergence::{f_divergence, ith_mixed, mixed_divergence, mixed_divergence_k};
use mixdiv_core::{Density, Generator, IthMixedSpec, MeasureSpace, PairTriple};
use proptest::prelude::*;

fn space_and_values(max_atoms: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
    (2..=max_atoms).prop_flat_map(|n| {
        (
            prop::collection::vec(0.05f64..5.0, n),
            prop::collection::vec(-10.0f64..10.0, n),
            prop::collection::vec(-10.0f64..10.0, n),
        )
    })
}

fn normalized(space: &Arc<MeasureSpace>, raw: &[f64]) -> Density {
    let total = space.integrate(raw).unwrap();
    Density::new(space.clone(), raw.iter().map(|v| v / total).collect(), true).unwrap()
}

fn generator(index: usize) -> Generator {
    match index {
        0 => Generator::total_variation(),
        1 => Generator::kl_positive_part(),
        2 => Generator::linear(0.7, 1.3).unwrap(),
        k => Generator::power([-1.0, -0.5, 0.25, 0.5, 0.75, 2.0, 3.0][k - 3]).unwrap(),
    }
}

/// Up to four probability pairs on a shared random space.
fn instance() -> impl Strategy<Value = Vec<PairTriple>> {
    (2usize..=24, 1usize..=4).prop_flat_map(|(atoms, n)| {
        (
            prop::collection::vec(0.5f64..2.0, atoms),
            prop::collection::vec(
                (0usize..10, prop::collection::vec(-2.0f64..2.0, atoms), prop::collection::vec(-2.0f64..2.0, atoms)),
                n,
            ),
        )
            .prop_map(|(weights, pairs)| {
                let space = Arc::new(MeasureSpace::new(weights).unwrap());
                pairs
                    .into_iter()
                    .map(|(g, p, q)| {
                        let p: Vec<f64> = p.iter().map(|x| x.exp()).collect();
                        let q: Vec<f64> = q.iter().map(|x| x.exp()).collect();
                        PairTriple::new(generator(g), normalized(&space, &p), normalized(&space, &q)).unwrap()
                    })
                    .collect()
            })
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

proptest! {
    #[test]
    fn integrate_is_linear((w, u, v) in space_and_values(64), a in -5.0f64..5.0, b in -5.0f64..5.0) {
        let space = MeasureSpace::new(w.clone()).unwrap();
        let combo: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
        let lhs = space.integrate(&combo).unwrap();
        let rhs = a * space.integrate(&u).unwrap() + b * space.integrate(&v).unwrap();
        // scale of the cancellation-free magnitude
        let scale: f64 = w.iter().zip(u.iter().zip(&v)).map(|(w, (x, y))| w * (a * x).abs().max((b * y).abs())).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn integrate_ignores_atom_order((w, u, _) in space_and_values(64), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..w.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = MeasureSpace::new(w.clone()).unwrap().integrate(&u).unwrap();
        let pw: Vec<f64> = order.iter().map(|&i| w[i]).collect();
        let pu: Vec<f64> = order.iter().map(|&i| u[i]).collect();
        let b = MeasureSpace::new(pw).unwrap().integrate(&pu).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn certified_density_integrates_to_one((w, u, _) in space_and_values(64)) {
        let space = Arc::new(MeasureSpace::new(w).unwrap());
        let raw: Vec<f64> = u.iter().map(|x| (x / 5.0).exp()).collect();
        let d = normalized(&space, &raw);
        prop_assert!((d.integral() - 1.0).abs() <= mixdiv_core::EPS_NORM);
    }

    #[test]
    fn order_change_and_adjoint_swap(triples in instance()) {
        let d = mixed_divergence(&triples).unwrap();
        for k in 0..=triples.len() {
            prop_assert!(close(d, mixed_divergence_k(&triples, k).unwrap(), 1e-12));
        }
        let swapped: Vec<PairTriple> = triples.iter().map(PairTriple::swapped).collect();
        prop_assert!(close(d, mixed_divergence(&swapped).unwrap(), 1e-12));
    }

    #[test]
    fn diagonal_reduces_to_f_divergence(triples in instance(), n in 1usize..=6) {
        let t = &triples[0];
        let diag = vec![t.clone(); n];
        prop_assert!(close(mixed_divergence(&diag).unwrap(), f_divergence(&t.generator, &t.p, &t.q).unwrap(), 1e-12));
    }

    #[test]
    fn adjoint_is_an_involution(g in 0usize..10, t in -10.0f64..10.0) {
        let g = generator(g);
        let t = 2f64.powf(t);
        let back = g.adjoint().adjoint();
        prop_assert!(close(g.eval(t).unwrap(), back.eval(t).unwrap(), 1e-12));
    }

    #[test]
    fn ith_duality(triples in instance(), i in -3.0f64..6.0, n in 1u32..=6) {
        let pos: Vec<&PairTriple> = triples.iter().filter(|t| t.generator.is_positive()).collect();
        prop_assume!(pos.len() >= 2);
        let spec = IthMixedSpec::new(pos[0].clone(), pos[1].clone(), i, n).unwrap();
        prop_assert!(close(ith_mixed(&spec).unwrap(), ith_mixed(&spec.dual()).unwrap(), 1e-12));
    }

    #[test]
    fn log_convex_in_index(triples in instance(), j in -6.0f64..3.0, gap in 0.1f64..9.0, t in 0.0f64..1.0, n in 1u32..=6) {
        let pos: Vec<&PairTriple> = triples.iter().filter(|t| t.generator.is_positive()).collect();
        prop_assume!(pos.len() >= 2);
        let k = j + gap;
        let i = j + t * gap;
        let spec = IthMixedSpec::new(pos[0].clone(), pos[1].clone(), i, n).unwrap();
        let report = check_interpolation(&spec, j, k, Tolerances::default()).unwrap();
        prop_assert!(report.holds, "{:?}", report);
    }

    #[test]
    fn proportionality_is_symmetric_and_scale_invariant(
        u in prop::collection::vec(0.01f64..10.0, 1..20),
        c in 0.01f64..100.0,
        jitter in prop::collection::vec(-1e-6f64..1e-6, 20),
    ) {
        let v: Vec<f64> = u.iter().zip(&jitter).map(|(x, e)| 3.0 * x * (1.0 + e)).collect();
        let cu: Vec<f64> = u.iter().map(|x| c * x).collect();
        let eps = 1e-8;
        let a = effectively_proportional(&u, &v, eps).unwrap();
        let b = effectively_proportional(&v, &u, eps).unwrap();
        let s = effectively_proportional(&cu, &v, eps).unwrap();
        prop_assert_eq!(a.proportional, b.proportional);
        prop_assert_eq!(a.proportional, s.proportional);
        prop_assert!(close(a.ratio_spread, b.ratio_spread, 1e-9) || (a.ratio_spread - b.ratio_spread).abs() < 1e-15);
    }
}
