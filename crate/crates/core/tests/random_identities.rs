use tamed_core::fixtures;
use tamed_core::hermitian::TamedPackage;
use tamed_core::identities::run_identity_suite;
use tamed_core::lie::{parse_structure_file, StructurePackage};
use tamed_core::poisson::*;
use tamed_core::sampling::*;

fn parsed(text: &str) -> StructurePackage {
    parse_structure_file(text).unwrap()
}

fn packages(p: &StructurePackage, count: usize, seed: u64) -> Vec<TamedPackage> {
    let out = random_tamed_packages(&p.algebra, &p.endomorphisms["J"], &p.forms["Omega"], count, seed);
    assert_eq!(out.len(), count);
    out
}

#[test]
fn identity_suite_on_random_packages() {
    for (name, text) in fixtures::ALL {
        let p = parsed(text);
        for (i, pkg) in packages(&p, 50, 11).iter().enumerate() {
            for o in run_identity_suite(pkg) {
                assert!(o.passed(), "{name} #{i}: {} -> {} {:?}", o.name, o.residual, o.witness);
            }
            if pkg.dim() == 4 {
                let r = image_analysis(&pkg.algebra, &commutator_skew(pkg));
                assert_eq!(r.dichotomy, Some(true), "{name} #{i}");
            }
        }
    }
}

#[test]
fn schouten_routes_agree_on_random_skew_endomorphisms() {
    for (name, text) in fixtures::ALL {
        let p = parsed(text);
        let mut rng = rng(5);
        for i in 0..100 {
            let metric = random_metric(p.algebra.dim(), &mut rng);
            let q = random_skew_endo(&metric, &mut rng);
            let pi = bivector_from_skew(&q);
            let frame = schouten_square(&p.algebra, &pi, SchoutenMode::Frame, Some(&q)).unwrap();
            for mode in [SchoutenMode::LeviCivita, SchoutenMode::Invariant] {
                assert_eq!(schouten_square(&p.algebra, &pi, mode, Some(&q)).unwrap(), frame, "{name} #{i} {mode:?}");
            }
        }
    }
}

#[test]
fn invertible_skew_endomorphisms_are_twisted_poisson() {
    for (name, text) in fixtures::ALL {
        let p = parsed(text);
        let mut rng = rng(9);
        for i in 0..10 {
            let metric = random_metric(p.algebra.dim(), &mut rng);
            let q = random_invertible_skew_endo(&metric, &mut rng);
            let cand = TwistedPoissonCandidate::from_invertible(&p.algebra, &q).unwrap();
            assert!(cand.holds(&p.algebra), "{name} #{i}");
            let sols = solve_twisting_form(&p.algebra, &cand.pi, TwistShape::Standard);
            assert!(sols.contains(&cand.phi), "{name} #{i}");
            // Poisson exactly when q is closed.
            let closed = p.algebra.exterior_derivative(&q_inverse_form(&q).unwrap()).is_zero();
            assert_eq!(closed, schouten(&p.algebra, &cand.pi, &cand.pi).is_zero(), "{name} #{i}");
        }
    }
}
