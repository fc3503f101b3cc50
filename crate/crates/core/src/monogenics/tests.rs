use proptest::prelude::*;

use super::verify::proportionality;
use super::*;
use crate::dunkl::Kappa;

fn rs(m: u32, k: Kappa) -> RootSystem {
    RootSystem::new(m, k).unwrap()
}

fn odd() -> RootSystem {
    rs(3, Kappa::fracs((1, 2), (1, 3), (1, 3)))
}

fn even(m: u32) -> RootSystem {
    rs(m, Kappa::fracs((1, 3), (1, 4), (1, 5)))
}

fn up(p: &MPoly) -> SpinorPoly {
    SpinorPoly::times_chi(p.clone(), Spin::Up)
}

/// Kernel of T₁ + iT₂ on planar polynomials of degree n, by nullspace.
fn holomorphic_kernel(r: &RootSystem, n: u32) -> Vec<MPoly> {
    let f = r.field();
    let monos: Vec<Mono> = (0..=n).map(|a| Mono::new(a as u16, (n - a) as u16, 0)).collect();
    let targets: Vec<Mono> = (0..n).map(|a| Mono::new(a as u16, (n - 1 - a) as u16, 0)).collect();
    let mut rows = vec![vec![f.zero(); monos.len()]; targets.len().max(1)];
    for (j, mo) in monos.iter().enumerate() {
        let image = holomorphic_part(r, &MPoly::term(f.one(), *mo), 1);
        for (t, c) in image.terms() {
            let i = targets.iter().position(|x| x == t).unwrap();
            rows[i][j] = c.clone();
        }
    }
    Matrix::from_rows(f, rows)
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut p = MPoly::zero();
            for (c, mo) in v.iter().zip(&monos) {
                if !c.is_zero() {
                    p.add_term(*mo, c.clone());
                }
            }
            p
        })
        .collect()
}

#[test]
fn degree_zero_harmonic_is_constant() {
    for r in [odd(), even(2), even(4)] {
        let h = harmonics_2d(&r, 0).unwrap();
        assert_eq!(h.plus.terms().count(), 1);
        assert_eq!(h.plus.degree(), Some(0));
    }
}

#[test]
fn odd_harmonic_below_m_is_a_power_of_z() {
    let r = odd();
    let f = r.field();
    let z = MPoly::var(f, 0).add(&MPoly::var(f, 1).scale(&f.i()));
    let h = harmonics_2d(&r, 2).unwrap();
    assert!(proportionality(&up(&h.plus), &up(&z.pow(f, 2))).is_some());
}

#[test]
fn harmonics_span_the_holomorphic_kernel() {
    for r in [odd(), even(2), even(4), even(6)] {
        for n in 0..=5 {
            let h = harmonics_2d(&r, n).unwrap();
            let ker = holomorphic_kernel(&r, n);
            assert_eq!(ker.len(), 1, "m={} n={n}", r.m());
            assert!(proportionality(&up(&h.plus), &up(&ker[0])).is_some(), "m={} n={n}", r.m());
        }
    }
}

#[test]
fn minus_harmonic_is_antiholomorphic() {
    for r in [odd(), even(2), even(4)] {
        for n in 1..=4 {
            let h = harmonics_2d(&r, n).unwrap();
            assert!(holomorphic_part(&r, &h.minus, -1).is_zero());
            assert!(!holomorphic_part(&r, &h.minus, 1).is_zero());
        }
    }
}

#[test]
fn planar_monogenics_are_annihilated() {
    let mono = Monogenics::positive(&odd(), 1).unwrap();
    for n in 0..=4 {
        let (p, q) = mono.monogenics_2d(n).unwrap();
        assert!(mono.dirac2.apply(&p).is_zero());
        assert!(mono.dirac2.apply(&q).is_zero());
        assert_eq!(p.up.degree(), Some(n));
    }
}

#[test]
fn gegenbauer_route_equals_g_expansion() {
    for (k1, km) in [(Rat::new(1, 4), Rat::new(1, 5)), (Rat::new(2, 3), Rat::new(1, 7)), (Rat::new(1, 2), Rat::new(1, 2))] {
        let r = rs(2, Kappa::new(Rat::new(1, 3), k1.clone(), km.clone()));
        for k in 0..=5 {
            let a = f_k(r.field(), k, &k1, &km);
            let b = f_k_gegenbauer(r.field(), k, &k1, &km);
            assert_eq!(a, b, "k={k}");
        }
    }
}

#[test]
fn fischer_ranks() {
    let m2 = Monogenics::positive(&even(2), 1).unwrap();
    let r = m2.fischer_check(3).unwrap();
    assert_eq!((r.cardinality, r.rank), (8, 8));
    assert!(m2.fischer_check(0).unwrap().passed());
    let m3 = Monogenics::positive(&odd(), 1).unwrap();
    let r = m3.fischer_check(4).unwrap();
    assert_eq!((r.cardinality, r.rank), (10, 10));
}

#[test]
fn ck_fixes_planar_monogenics() {
    let mono = Monogenics::positive(&even(2), 1).unwrap();
    let f = mono.field();
    let chi = SpinorPoly::times_chi(MPoly::constant(f.one()), Spin::Up);
    assert_eq!(mono.ck_extend(&chi).unwrap(), chi);
    for k in 0..=3 {
        let (p, q) = mono.monogenics_2d(k).unwrap();
        assert_eq!(mono.ck_extend(&p).unwrap(), p);
        assert_eq!(mono.ck_extend(&q).unwrap(), q);
    }
}

#[test]
fn ck_output_is_monogenic() {
    let mono = Monogenics::positive(&even(2), -1).unwrap();
    let (p, _) = mono.monogenics_2d(0).unwrap();
    let xp = mono.xhat_pow(&p, 1);
    assert!(!mono.is_monogenic(&xp));
    assert!(mono.is_monogenic(&mono.ck_extend(&xp).unwrap()));
}

#[test]
fn ck_refuses_x3_input() {
    let mono = Monogenics::positive(&odd(), 1).unwrap();
    let f = mono.field();
    let x3 = SpinorPoly::times_chi(MPoly::var(f, 2), Spin::Up);
    assert_eq!(mono.ck_extend(&x3), Err(MonogenicError::DependsOnX3));
}

#[test]
fn positivity_is_required() {
    let r = rs(2, Kappa::fracs((0, 1), (1, 4), (1, 5)));
    assert!(matches!(Monogenics::positive(&r, 1), Err(MonogenicError::NonPositiveKappa(_))));
}

#[test]
fn kernel_dimension_is_2n_plus_2() {
    for r in [odd(), even(2), even(4)] {
        let mono = Monogenics::positive(&r, 1).unwrap();
        for n in 0..=3 {
            assert_eq!(mono.kernel_dim(n), 2 * n as usize + 2, "m={} n={n}", r.m());
        }
    }
}

#[test]
fn cauchy_kovalevskaya_basis() {
    let mono = Monogenics::positive(&odd(), 1).unwrap();
    let basis = mono.monogenic_basis(2).unwrap();
    assert_eq!(basis.len(), 6);
    assert!(basis.iter().all(|b| mono.is_monogenic(&b.psi)));
    let polys: Vec<SpinorPoly> = basis.iter().map(|b| b.psi.clone()).collect();
    assert_eq!(rank_of(mono.field(), 2, &polys), 6);
}

#[test]
fn closed_form_top_term_is_the_planar_monogenic() {
    let mono = Monogenics::positive(&even(2), 1).unwrap();
    let (p, q) = mono.monogenics_2d(2).unwrap();
    let ex = mono.explicit_basis(2).unwrap();
    let top: Vec<&Monogenic3D> = ex.iter().filter(|b| b.k == 2).collect();
    assert_eq!(top[0].psi, p);
    assert_eq!(top[1].psi, q);
}

#[test]
fn closed_form_first_order_term() {
    let mono = Monogenics::positive(&even(2), 1).unwrap();
    let f = mono.field();
    let k0 = mono.rs.kappa().k0.clone();
    for k in 0..=2 {
        let ex = mono.explicit_basis(k + 1).unwrap();
        let b = ex.iter().find(|b| b.k == k && b.sign == Spin::Up).unwrap();
        let (phi, _) = mono.monogenics_2d(k).unwrap();
        let c = (Rat::int(k as i64 + 1) + mono.gamma_hat.clone()) * (k0.clone() + Rat::new(1, 2)).recip().unwrap();
        let x3phi = phi.map(|p| p.mul_mono(&Mono::new(0, 0, 1)));
        let want = mono.xvec2.apply(&phi).sub(&mono.core.e[2].apply(&x3phi).scale(&f.rat(&c)));
        assert_eq!(b.psi, want);
    }
}

#[test]
fn closed_form_equals_extension() {
    for r in [even(2), odd(), even(4)] {
        for delta in [1, -1] {
            let mono = Monogenics::positive(&r, delta).unwrap();
            for n in 0..=3 {
                let ck = mono.monogenic_basis(n).unwrap();
                let ex = mono.explicit_basis(n).unwrap();
                for (a, b) in ex.iter().zip(&ck) {
                    assert_eq!(a.psi, b.psi, "m={} n={n} k={}", r.m(), a.k);
                }
            }
        }
    }
}

#[test]
fn d_coefficients_match_operator_powers() {
    for r in [even(2), odd()] {
        let mono = Monogenics::positive(&r, 1).unwrap();
        let f = mono.field();
        for k in 0..=3 {
            let (phi, _) = mono.monogenics_2d(k).unwrap();
            for b in 0..=4 {
                let mut lhs = mono.xhat_pow(&phi, b);
                for a in 0..=4 {
                    let d = d_coefficient(a, b, k, &mono.gamma_hat);
                    let rhs = if a > b { SpinorPoly::zero() } else { mono.xhat_pow(&phi, b - a).scale(&f.rat(&d)) };
                    assert_eq!(lhs, rhs, "m={} a={a} b={b} k={k}", r.m());
                    lhs = mono.dirac2.apply(&lhs);
                }
            }
        }
    }
}

#[test]
fn o123_eigenvalue_example() {
    let rep = verify_monogenic_rep(&odd(), 1, 1).unwrap();
    let f = odd().field();
    let want = &f.i() * &f.frac(7, 2);
    assert_eq!(rep.o123_eigenvalue, Some(want.to_string()));
}

#[test]
fn monogenics_realize_the_unrestricted_family() {
    for r in [odd(), even(2), even(4)] {
        for n in 0..=2 {
            let rep = verify_monogenic_rep(&r, 1, n).unwrap();
            assert!(rep.passed(), "m={} n={n}: {:?}", r.m(), rep.action_failures);
            assert!(rep.explicit_over_ck.iter().all(|c| c.as_deref() == Some("1")));
        }
    }
}

#[test]
fn printed_o123_fails_only_for_negative_delta() {
    for r in [odd(), even(2)] {
        for n in 0..=2 {
            let rep = verify_monogenic_rep(&r, -1, n).unwrap();
            assert!(!rep.passed());
            assert!(rep.passed_corrected(), "m={} n={n}: {:?}", r.m(), rep.corrected_failures);
            assert_eq!(rep.action_failures.len(), 2 * (n as usize + 1));
            assert!(rep.action_failures.iter().all(|s| s.starts_with("O123")));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gegenbauer_route_for_random_kappa(a in 1i64..9, b in 1i64..9, c in 1i64..9, k in 0u32..5) {
        let (k1, km) = (Rat::new(a, c + 1), Rat::new(b, c + 2));
        let r = rs(4, Kappa::new(Rat::new(1, 2), k1.clone(), km.clone()));
        prop_assert_eq!(f_k(r.field(), k, &k1, &km), f_k_gegenbauer(r.field(), k, &k1, &km));
    }

    #[test]
    fn odd_harmonics_for_random_kappa(a in 1i64..7, b in 2i64..7, n in 0u32..6) {
        let r = rs(3, Kappa::new(Rat::new(1, 2), Rat::new(a, b), Rat::new(a, b)));
        prop_assert!(harmonics_2d(&r, n).is_ok());
    }
}
