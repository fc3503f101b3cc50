use super::*;
use crate::poly::{GradedBasis, Mono, Spin};
use proptest::prelude::*;

fn rs(m: u32, k: Kappa) -> RootSystem {
    RootSystem::new(m, k).unwrap()
}

fn chi_up(p: MPoly) -> SpinorPoly {
    SpinorPoly::times_chi(p, Spin::Up)
}

#[test]
fn dunkl_examples() {
    let r = rs(3, Kappa::fracs((1, 3), (2, 5), (2, 5)));
    let f = r.field();
    let t3 = dunkl_operator(&r, 2);
    let x3 = chi_up(MPoly::var(f, 2));
    assert_eq!(t3.apply(&x3), SpinorPoly::chi(f, Spin::Up).scale(&f.frac(5, 3)));
    let t1 = dunkl_operator(&r, 0);
    assert!(t1.apply(&SpinorPoly::chi(f, Spin::Up)).is_zero());

    let r2 = rs(2, Kappa::fracs((1, 2), (1, 3), (1, 5)));
    let f2 = r2.field();
    let t1 = dunkl_operator(&r2, 0);
    let out = t1.apply(&chi_up(MPoly::var(f2, 0)));
    assert_eq!(out, SpinorPoly::chi(f2, Spin::Up).scale(&f2.frac(5, 3)));
}

#[test]
fn roots_and_reflections() {
    for m in 2..=8 {
        let k = if m % 2 == 0 { Kappa::fracs((1, 2), (1, 3), (1, 5)) } else { Kappa::fracs((1, 2), (1, 3), (1, 3)) };
        let r = rs(m, k);
        let f = r.field();
        let id = r.identity_matrix();
        for (j, root) in r.positive_roots().iter().enumerate() {
            assert!(r.inner(&root.vector, &root.vector).is_one());
            assert_eq!(mat3_mul(&root.reflection, &root.reflection), id);
            if j > 0 {
                // Closed form with cos, sin of 2jπ/m.
                let (s, c) = sin_cos(m, 2 * j as i64);
                let want: Mat3 =
                    [[c.clone(), s.clone(), f.zero()], [s, -c, f.zero()], [f.zero(), f.zero(), f.one()]];
                assert_eq!(root.reflection, want);
                let expect = if m % 2 == 1 || j % 2 == 1 { &r.kappa().k1 } else { &r.kappa().km };
                assert_eq!(&root.kappa, expect);
            }
        }
        assert_eq!(r.group_elements().len() as u32, 4 * m);
        assert_eq!(r.reflection(m + 1), r.reflection(1));
    }
    assert!(matches!(RootSystem::new(3, Kappa::fracs((0, 1), (1, 2), (1, 3))), Err(DunklError::OddMultiplicity(..))));
    assert!(matches!(RootSystem::new(1, Kappa::zero()), Err(DunklError::BadOrder(1))));
}

#[test]
fn substitution_is_a_group_law() {
    for m in 2..=6 {
        let r = rs(m, Kappa::zero());
        let f = r.field();
        let p = MPoly::term(f.one(), Mono::new(2, 1, 0))
            .add(&MPoly::term(f.frac(-3, 2), Mono::new(0, 1, 2)))
            .add(&MPoly::term(f.zeta_n(1), Mono::new(1, 0, 2)));
        let g = r.group_elements();
        for a in &g {
            for b in &g {
                assert_eq!(p.substitute_linear(a).substitute_linear(b), p.substitute_linear(&mat3_mul(a, b)));
            }
        }
    }
}

#[test]
fn core_examples() {
    let r = rs(2, Kappa::fracs((1, 2), (1, 3), (1, 5)));
    let f = r.field();
    let ops = build_core_operators(&r, 1).unwrap();
    let up = SpinorPoly::chi(f, Spin::Up);
    let mut q = MPoly::zero();
    for i in 0..3 {
        q = q.add(&MPoly::var(f, i).pow(f, 2));
    }
    assert_eq!(ops.xvec.apply(&ops.xvec.apply(&up)), chi_up(q));
    assert!(ops.c[0][1].apply(&chi_up(MPoly::var(f, 0))).is_zero());
    assert_eq!(ops.gamma, f.frac(1, 2) + f.frac(8, 15));
    assert!(build_core_operators(&r, 0).is_err());
}

#[test]
fn osp12_holds() {
    let r = rs(3, Kappa::fracs((1, 3), (2, 5), (2, 5)));
    for delta in [1, -1] {
        let rep = verify_osp12(&r, delta, 3).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().next());
    }
    let classical = verify_osp12(&rs(4, Kappa::zero()), 1, 3).unwrap();
    assert!(classical.all_passed());
}

#[test]
fn corrupted_gamma_fails_at_degree_zero() {
    let r = rs(3, Kappa::fracs((1, 3), (2, 5), (2, 5)));
    let ops = build_core_operators(&r, 1).unwrap();
    let g = &ops.gamma + &r.field().one();
    let ops = ops.with_gamma(g);
    let ev = Evaluator::new(r.field());
    let res = check_identities(&ev, &osp12_identities(&ops), 2);
    let bad: Vec<_> = res.iter().filter(|x| !x.passed()).collect();
    assert!(!bad.is_empty());
    let first = bad.iter().find(|x| x.identity.starts_with("{D,x}")).unwrap();
    assert_eq!(first.degree, 0);
    assert!(first.counterexample.is_some());
}

#[test]
fn angular_momentum_identities_hold() {
    assert!(verify_angular_momenta(&rs(2, Kappa::fracs((1, 2), (1, 3), (1, 5))), 3).all_passed());
    assert!(verify_angular_momenta(&rs(5, Kappa::fracs((1, 2), (1, 7), (1, 7))), 3).all_passed());
}

#[test]
fn equivariance_holds() {
    for m in [3, 4] {
        let k = Kappa::fracs((2, 3), (1, 4), if m % 2 == 0 { (3, 7) } else { (1, 4) });
        assert!(verify_equivariance(&rs(m, k), 3).all_passed());
    }
}

#[test]
fn report_json_shape() {
    let r = rs(2, Kappa::zero());
    let rep = verify_osp12(&r, 1, 0).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    let first = &v.as_array().unwrap()[0];
    assert_eq!(first["degree"], 0);
    assert_eq!(first["status"], "pass");
    assert!(first.get("counterexample").is_none());
}

fn arb_spinor(f: &'static Field, deg: u32) -> impl Strategy<Value = SpinorPoly> {
    let b = GradedBasis::new(deg);
    prop::collection::vec((-4i64..5, 1i64..4), b.len()).prop_map(move |cs| {
        let v: Vec<CycNum> = cs.into_iter().map(|(n, d)| f.frac(n, d)).collect();
        b.from_coords(&v)
    })
}

fn arb_case() -> impl Strategy<Value = (u32, SpinorPoly, SpinorPoly, usize, i64)> {
    let f = Field::for_dihedral(4);
    (1u32..4).prop_flat_map(move |d| (Just(d), arb_spinor(f, d), arb_spinor(f, d), 0usize..3, -3i64..4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dunkl_is_linear_and_lowers_degree((d, p, q, i, a) in arb_case()) {
        let r = rs(4, Kappa::fracs((1, 2), (1, 3), (2, 7)));
        let f = r.field();
        let t = dunkl_operator(&r, i);
        let ac = &f.int(a) * &f.zeta_n(1);
        let mut comb = p.scale(&ac);
        comb.add_scaled(&f.one(), &q);
        let mut expect = t.apply(&p).scale(&ac);
        expect.add_scaled(&f.one(), &t.apply(&q));
        prop_assert_eq!(t.apply(&comb), expect);
        let out = t.apply(&p);
        prop_assert!(out.is_zero() || GradedBasis::new(d - 1).coords(f, &out).is_some());
    }
}

#[test]
fn sampled_kappas_are_seeded_and_positive() {
    let a = Kappa::sample(5, 11, 4);
    assert_eq!(a, Kappa::sample(5, 11, 4));
    assert_ne!(a, Kappa::sample(5, 12, 4));
    for k in &a {
        assert_eq!(k.k1, k.km);
        assert!(k.k0.is_positive() && k.k1.is_positive());
    }
}
