use proptest::prelude::*;
use tamed_core::algebra::{combinations, int, rat, unit, Form, Matrix, Multivector, Rational, Tensor3};
use tamed_core::fixtures;
use tamed_core::hermitian::{nijenhuis, tames};
use tamed_core::lie::{parse_structure_file, LieAlgebra, StructurePackage};
use tamed_core::poisson::lambda_pullback;
use tamed_core::sampling::{random_metric, rng};

fn algebras() -> Vec<LieAlgebra> {
    fixtures::ALL.iter().map(|(_, t)| parse_structure_file(t).unwrap().algebra).collect()
}

/// A form of grade `k` in dimension `n` from small integer coefficients.
fn form_from(n: usize, k: usize, coeffs: &[i64]) -> Form {
    Form::from_terms(n, k, combinations(n, k).into_iter().zip(coeffs.iter().map(|&c| int(c))))
}

fn coeffs(n: usize, k: usize) -> impl Strategy<Value = Vec<i64>> {
    let len = combinations(n, k).len();
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_is_associative(a in coeffs(5, 1), b in coeffs(5, 2), c in coeffs(5, 1)) {
        let (a, b, c) = (form_from(5, 1, &a), form_from(5, 2, &b), form_from(5, 1, &c));
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_is_graded_commutative(k in 1usize..=3, l in 1usize..=2, seed in any::<u64>()) {
        let mut r = rng(seed);
        use rand::Rng;
        let mk = |g: usize, r: &mut rand_chacha::ChaCha8Rng| {
            let c: Vec<i64> = combinations(6, g).iter().map(|_| r.gen_range(-2..=2)).collect();
            form_from(6, g, &c)
        };
        let a = mk(k, &mut r);
        let b = mk(l, &mut r);
        let sign = if (k * l) % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign));
    }

    #[test]
    fn lowering_then_raising_is_identity(k in 1usize..=3, seed in any::<u64>(), c in coeffs(5, 3)) {
        let g = random_metric(5, &mut rng(seed));
        let len = combinations(5, k).len();
        let f = form_from(5, k, &c[..len.min(c.len())]);
        let v: Multivector = f.cast();
        prop_assert_eq!(g.sharp_inverse(&g.lower(&v)), v.clone());
        prop_assert_eq!(g.lower(&g.sharp_inverse(&f)), f);
    }

    #[test]
    fn lambda_pullback_matches_triple_evaluation(p in coeffs(5, 2), f in coeffs(5, 3)) {
        let pi: Multivector = form_from(5, 2, &p).cast();
        let phi = form_from(5, 3, &f);
        let out = lambda_pullback(&pi, &phi);
        for idx in combinations(5, 3) {
            let images: Vec<Vec<Rational>> = idx.iter().map(|&i| pi.sharp(&unit(5, i))).collect();
            prop_assert_eq!(out.coefficient(&idx), phi.evaluate(&images));
        }
    }

    #[test]
    fn cyclic_sum_matches_brute_force(entries in prop::collection::vec(-3i64..=3, 64)) {
        let t = Tensor3::from_fn(4, |a, b, c| int(entries[(a * 4 + b) * 4 + c]));
        let s = t.cyclic_sum();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    prop_assert_eq!(s.get(a, b, c), &(t.get(a, b, c) + t.get(b, c, a) + t.get(c, a, b)));
                }
            }
        }
    }

    #[test]
    fn positive_definiteness_is_consistent_with_sign_search(entries in prop::collection::vec(-3i64..=3, 15), shift in 0i64..=8) {
        let mut m = Matrix::zeros(5, 5);
        let mut it = entries.iter();
        for i in 0..5 {
            for j in i..5 {
                let v = int(*it.next().unwrap() + if i == j { shift } else { 0 });
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        let pd = m.is_positive_definite().unwrap();
        let mut found_nonpositive = false;
        let mut x = [-2i64; 5];
        'outer: loop {
            if x.iter().any(|&v| v != 0) {
                let xv: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
                if m.bilinear(&xv, &xv) <= int(0) {
                    found_nonpositive = true;
                    break;
                }
            }
            for slot in x.iter_mut() {
                if *slot < 2 {
                    *slot += 1;
                    continue 'outer;
                }
                *slot = -2;
            }
            break;
        }
        if pd {
            prop_assert!(!found_nonpositive);
        }
        if found_nonpositive {
            prop_assert!(!pd);
        }
    }

    #[test]
    fn d_squared_vanishes(k in 0usize..=4, which in 0usize..3, c in coeffs(6, 3)) {
        let l = &algebras()[which];
        let n = l.dim();
        if k > n { return Ok(()); }
        let len = combinations(n, k).len();
        let cs: Vec<i64> = c.iter().cycle().take(len).cloned().collect();
        let f = form_from(n, k, &cs);
        prop_assert!(l.exterior_derivative(&l.exterior_derivative(&f)).is_zero());
    }

    #[test]
    fn derivative_of_two_forms_follows_cartan_formula(which in 0usize..3, c in coeffs(6, 2)) {
        let l = &algebras()[which];
        let n = l.dim();
        let len = combinations(n, 2).len();
        let cs: Vec<i64> = c.iter().cycle().take(len).cloned().collect();
        let a = form_from(n, 2, &cs);
        let da = l.exterior_derivative(&a);
        for idx in combinations(n, 3) {
            let [x, y, z] = [unit(n, idx[0]), unit(n, idx[1]), unit(n, idx[2])];
            let expected = -a.evaluate(&[l.bracket(&x, &y), z.clone()]) + a.evaluate(&[l.bracket(&x, &z), y.clone()])
                - a.evaluate(&[l.bracket(&y, &z), x.clone()]);
            prop_assert_eq!(da.evaluate(&[x, y, z]), expected);
        }
    }

    #[test]
    fn random_structure_files_round_trip(which in 0usize..3, c in coeffs(6, 2), j in prop::collection::vec(-3i64..=3, 36)) {
        let l = algebras()[which].clone();
        let n = l.dim();
        let len = combinations(n, 2).len();
        let cs: Vec<i64> = c.iter().cycle().take(len).cloned().collect();
        let pkg = StructurePackage {
            endomorphisms: [("J".to_string(), Matrix::from_fn(n, n, |a, b| rat(j[a * 6 + b], 2)))].into_iter().collect(),
            forms: [("Omega".to_string(), form_from(n, 2, &cs))].into_iter().collect(),
            algebra: l,
        };
        let text = pkg.serialize();
        prop_assert_eq!(parse_structure_file(&text).unwrap(), pkg);
    }

    #[test]
    fn nijenhuis_symmetries(which in 0usize..3, entries in prop::collection::vec(-2i64..=2, 36)) {
        let p = parse_structure_file(fixtures::ALL[which].1).unwrap();
        let n = p.algebra.dim();
        // Conjugate the fixture J by a unit upper-triangular matrix.
        let u = Matrix::from_fn(n, n, |a, b| if a == b { int(1) } else if a < b { int(entries[a * 6 + b]) } else { int(0) });
        let j = &(&u * &p.endomorphisms["J"]) * &u.inverse().unwrap();
        let nj = nijenhuis(&p.algebra, &j);
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (unit(n, a), unit(n, b));
                let neg: Vec<Rational> = nj.eval(&y, &x).iter().map(|v| -v).collect();
                prop_assert_eq!(nj.eval(&x, &y), neg);
                let lhs = nj.eval(&j.apply(&x), &y);
                let rhs: Vec<Rational> = j.apply(&nj.eval(&x, &y)).iter().map(|v| -v).collect();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn bracket_and_derivative_are_dual() {
    for l in algebras() {
        let n = l.dim();
        for k in 0..n {
            let alpha = unit(n, k);
            let form = Form::basis(n, &[k]);
            let d = l.exterior_derivative(&form);
            for a in 0..n {
                for b in 0..n {
                    let br = l.bracket(&unit(n, a), &unit(n, b));
                    let pairing: Rational = alpha.iter().zip(&br).map(|(x, y)| x * y).sum();
                    assert_eq!(d.evaluate(&[unit(n, a), unit(n, b)]) + pairing, int(0));
                }
            }
        }
    }
}

#[test]
fn jacobi_check_agrees_with_triple_brackets() {
    let heisenberg_like_bad = LieAlgebra::from_brackets(3, |i, j| match (i, j) {
        (0, 1) => vec![int(0), int(0), int(1)],
        (0, 2) => vec![int(0), int(1), int(0)],
        (1, 2) => vec![int(1), int(0), int(0)],
        _ => vec![int(0); 3],
    });
    let mut cases = algebras();
    cases.push(heisenberg_like_bad);
    for l in cases {
        let n = l.dim();
        let mut jacobi = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = (unit(n, a), unit(n, b), unit(n, c));
                    let s1 = l.bracket(&l.bracket(&x, &y), &z);
                    let s2 = l.bracket(&l.bracket(&y, &z), &x);
                    let s3 = l.bracket(&l.bracket(&z, &x), &y);
                    if (0..n).any(|i| &s1[i] + &s2[i] + &s3[i] != int(0)) {
                        jacobi = false;
                    }
                }
            }
        }
        assert_eq!(l.jacobi_check(), jacobi);
    }
}

#[test]
fn closed_forms_basis_spans_the_kernel() {
    for l in algebras() {
        let n = l.dim();
        for k in 0..=n {
            let basis = l.closed_forms_basis(k);
            assert!(basis.iter().all(|f| l.exterior_derivative(f).is_zero()));
            let domain = combinations(n, k);
            let coords: Vec<Vec<Rational>> =
                basis.iter().map(|f| domain.iter().map(|i| f.coefficient(i)).collect()).collect();
            if !coords.is_empty() {
                assert_eq!(Matrix::from_columns(&coords).rank(), basis.len());
            }
            let codomain = combinations(n, k + 1);
            let images: Vec<Vec<Rational>> = domain
                .iter()
                .map(|i| {
                    let d = l.exterior_derivative(&Form::basis(n, i));
                    codomain.iter().map(|o| d.coefficient(o)).collect()
                })
                .collect();
            let rank_d = if codomain.is_empty() { 0 } else { Matrix::from_columns(&images).rank() };
            assert_eq!(basis.len(), domain.len() - rank_d, "dim {n}, grade {k}");
        }
    }
}

#[test]
fn taming_survives_small_closed_perturbations() {
    for (name, text) in fixtures::ALL {
        let p = parse_structure_file(text).unwrap();
        let (omega, j) = (&p.forms["Omega"], &p.endomorphisms["J"]);
        assert!(tames(omega, j), "{name}");
        for eta in p.algebra.closed_forms_basis(2) {
            for s in [1, -1] {
                assert!(tames(&(omega + &eta.scale(&rat(s, 1000))), j), "{name}");
            }
        }
    }
}

#[test]
fn zero_forms_keep_their_degree_through_serialization() {
    let mut p = parse_structure_file(fixtures::TORUS4).unwrap();
    p.forms.insert("Omega".into(), Form::zero(4, 2));
    let text = p.serialize();
    assert!(text.contains("Omega = 0*e12"));
    assert_eq!(parse_structure_file(&text).unwrap(), p);
}
