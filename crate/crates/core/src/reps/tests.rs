use proptest::prelude::*;

use super::closed_forms::{compare, Transcription};
use super::*;

fn spec(m: u32, n: u32, ell: u32, delta: i32, case: Case, branch: u8, family: Family, kappa: Kappa) -> RepSpec {
    RepSpec::new(m, n, ell, delta, case, branch, family, kappa)
}

#[test]
fn lambda_headers() {
    let k = Kappa::fracs((1, 3), (1, 4), (1, 5));
    let (lam, _) = resolve_lambda_lambda(&spec(2, 0, 0, 1, Case::Ii, 1, Family::One, k)).unwrap();
    assert_eq!(lam, Rat::new(19, 20));
    let k = Kappa::fracs((1, 3), (1, 4), (1, 4));
    let (lam, _) = resolve_lambda_lambda(&spec(3, 2, 0, 1, Case::II, 3, Family::One, k.clone())).unwrap();
    assert_eq!(lam, Rat::new(5, 2));
    let err = resolve_lambda_lambda(&spec(3, 1, 0, 1, Case::III, 4, Family::One, k)).unwrap_err();
    assert_eq!(err, RepError::NoRepresentation(1));
}

#[test]
fn incompatible_specs_are_refused() {
    let k = Kappa::fracs((1, 3), (1, 4), (1, 5));
    // κ₁ ≠ κₘ for odd m.
    assert!(matches!(resolve_lambda_lambda(&spec(3, 0, 0, 1, Case::III, 4, Family::One, k.clone())), Err(RepError::IncompatibleCase(_))));
    // Even-m case label for odd m.
    let k3 = Kappa::fracs((1, 3), (1, 4), (1, 4));
    assert!(matches!(resolve_lambda_lambda(&spec(3, 1, 0, 1, Case::Ii, 1, Family::One, k3)), Err(RepError::IncompatibleCase(_))));
    // Congruence of case I.i fails for odd N when m = 2.
    assert!(matches!(resolve_lambda_lambda(&spec(2, 1, 0, 1, Case::Ii, 1, Family::One, k)), Err(RepError::IncompatibleCase(_))));
}

#[test]
fn smallest_even_module() {
    let k = Kappa::fracs((1, 3), (1, 4), (1, 5));
    let r = build_rep(&spec(2, 0, 0, 1, Case::Ii, 1, Family::One, k)).unwrap();
    let f = r.field();
    assert_eq!(r.dim(), 2);
    assert_eq!(r.o0, Matrix::diagonal(f, &[f.frac(19, 20), f.frac(-19, 20)]));
    assert_eq!(r.sm, Matrix::from_rows(f, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]));
    let c = certify(&r);
    assert!(c.relation_failures.is_empty(), "{:?}", c.relation_failures);
    assert_eq!(c.commutant_dim, 1);
    assert!(c.irreducible);
    assert!(c.unitary);
}

#[test]
fn tt_eigenvalue_at_lowest_vector() {
    // T₊T₋ on v₀⁺ is p²(κ₁+κₘ)² when 1+ℓ ≡ p (mod m).
    let k = Kappa::fracs((1, 3), (1, 4), (1, 5));
    let g = group_part(2, 0, 1, 1, &k);
    let f = Field::for_dihedral(2);
    let sum = Rat::new(9, 20);
    assert_eq!(g.tplus.mul(&g.tminus).get(0, 0), &f.rat(&(&sum * &sum)));
    let g = group_part(4, 0, 3, 1, &k);
    let f = Field::for_dihedral(4);
    assert_eq!(g.tplus.mul(&g.tminus).get(0, 0), &f.rat(&(Rat::int(4) * &sum * &sum)));
}

#[test]
fn sigma_m_swaps_blocks() {
    let k = Kappa::fracs((1, 5), (1, 3), (1, 3));
    let r = build_rep(&spec(3, 4, 0, -1, Case::I, 1, Family::One, k)).unwrap();
    for a in 0..5 {
        for b in 0..10 {
            let want = if b == a + 5 { r.field().one() } else { r.field().zero() };
            assert_eq!(r.sm.get(a, b), &want);
            assert_eq!(r.sm.get(b, a), &want);
        }
    }
}

#[test]
fn gram_is_running_product_of_ladder() {
    let k = Kappa::fracs((1, 5), (1, 7), (1, 7));
    let r = build_rep(&spec(3, 4, 0, 1, Case::I, 1, Family::One, k)).unwrap();
    assert_eq!(r.gram.len(), 5);
    assert!(r.gram[0].is_one());
    for j in 1..5 {
        assert_eq!(r.gram[j], &r.gram[j - 1] * &r.a[j - 1]);
    }
    let c = certify(&r);
    assert!(c.relation_failures.is_empty(), "{:?}", c.relation_failures);
    assert!(c.irreducible && c.unitary);
    assert!(c.star_failures.is_empty());
}

#[test]
fn vanishing_ladder_coefficient_is_reducible() {
    // Case I, λ₁, (Λ₂, δ = 1) for m = 3: κ₀ = 1/2 is an excluded value.
    let s = spec(3, 1, 0, 1, Case::I, 1, Family::Two, Kappa::fracs((1, 2), (1, 9), (1, 9)));
    assert!(!check_admissibility(&s).irreducible);
    let r = build_rep(&s).unwrap();
    let c = certify(&r);
    assert!(c.relation_failures.is_empty(), "{:?}", c.relation_failures);
    assert!(r.a.iter().any(|x| x.is_zero()));
    assert!(!c.irreducible);
}

#[test]
fn excluded_kappa0_breaks_irreducibility() {
    // Case I.i, λ₁, (Λ₂, δ = 1): κ₀ = 1/2 is excluded.
    let s = spec(2, 2, 0, 1, Case::Ii, 1, Family::Two, Kappa::fracs((1, 2), (1, 3), (1, 5)));
    let v = check_admissibility(&s);
    assert!(!v.irreducible);
    let r = build_rep(&s).unwrap();
    let c = certify(&r);
    assert!(c.relation_failures.is_empty(), "{:?}", c.relation_failures);
    assert!(!c.irreducible);
    assert!(c.commutant_dim >= 2 || r.a.iter().any(|x| x.is_zero()));
}

#[test]
fn table_examples_for_m2() {
    let any = Kappa::fracs((7, 3), (5, 2), (1, 9));
    let v = check_admissibility(&spec(2, 2, 0, 1, Case::Ii, 1, Family::One, any));
    assert!(v.irreducible && v.unitary_sufficient);
    let v = check_admissibility(&spec(2, 2, 0, -1, Case::Ii, 1, Family::One, Kappa::fracs((1, 4), (1, 3), (1, 5))));
    assert!(v.irreducible && v.unitary_sufficient, "{v:?}");
    let v = check_admissibility(&spec(2, 2, 0, -1, Case::Ii, 1, Family::One, Kappa::fracs((3, 4), (1, 3), (1, 5))));
    assert!(v.irreducible && !v.unitary_sufficient);
}

#[test]
fn lower_sign_of_lambda_family_breaks_boundary() {
    let mut s = spec(3, 1, 0, 1, Case::I, 1, Family::One, Kappa::fracs((1, 5), (1, 3), (1, 3)));
    s.family_sign = -1;
    assert_eq!(build_rep(&s).unwrap_err(), RepError::BoundaryViolated("lowest"));
}

#[test]
fn case_two_has_no_completion() {
    let k = Kappa::fracs((1, 5), (1, 3), (1, 3));
    for (n, ell) in [(0, 0), (2, 0), (2, 1)] {
        for family in [Family::One, Family::Two] {
            let s = spec(3, n, ell, 1, Case::II, 3, family, k.clone());
            assert!(matches!(build_rep(&s), Err(RepError::DenominatorZero { .. })), "N={n} l={ell}");
            let (lambda, big_lambda) = resolve_lambda_lambda(&s).unwrap();
            let d = ModuleData { m: 3, n, tau_exponent: s.tau_exponent(), delta: 1, lambda, big_lambda, kappa: k.clone() };
            let c = top_completion(&d).unwrap();
            assert!(!c.consistent());
            assert!(!c.forced_square.is_zero());
        }
    }
}

#[test]
fn degenerate_column_completed_from_relations() {
    // λ₂ = −1/2: the O₊ denominator vanishes on v₀⁺ but the relations fix
    // the column.
    let s = spec(3, 0, 1, 1, Case::I, 2, Family::One, Kappa::fracs((1, 5), (1, 3), (1, 3)));
    let r = build_rep(&s).unwrap();
    assert_eq!(r.o0.get(0, 0), &r.field().frac(-1, 2));
    let c = certify(&r);
    assert!(c.relation_failures.is_empty(), "{:?}", c.relation_failures);
    assert!(c.irreducible);
}

#[test]
fn relabeled_module_is_isomorphic() {
    let k = Kappa::fracs((1, 5), (1, 3), (1, 7));
    for (n, ell, delta) in [(1, 0, 1), (2, 1, -1), (3, 0, 1)] {
        let case = if (n + ell + 2) % 4 == 1 { Case::Iii } else { Case::Ii };
        let s = spec(4, n, ell, delta, case, if case == Case::Ii { 1 } else { 3 }, Family::One, k.clone());
        let (lambda, big_lambda) = resolve_lambda_lambda(&s).unwrap();
        let d = ModuleData { m: 4, n, tau_exponent: s.tau_exponent(), delta, lambda, big_lambda, kappa: k.clone() };
        let r = build_module(&d).unwrap();
        let r2 = build_module(&relabeled(&d)).unwrap();
        assert_eq!(trace_invariants(&r, 3), trace_invariants(&r2, 3));
    }
}

#[test]
fn trace_invariants_separate_different_lambda() {
    let k = Kappa::fracs((1, 5), (1, 3), (1, 3));
    let a = build_rep(&spec(3, 1, 0, 1, Case::I, 1, Family::One, k.clone())).unwrap();
    let b = build_rep(&spec(3, 1, 0, -1, Case::I, 1, Family::One, k)).unwrap();
    assert_ne!(trace_invariants(&a, 2), trace_invariants(&b, 2));
}

#[test]
fn corrected_closed_forms_match_sums() {
    let k = Kappa::fracs((1, 5), (2, 7), (1, 3));
    for m in [2, 4, 6] {
        for ell in 0..m / 2 {
            for delta in [1, -1] {
                let bad = compare(m, 3, ell, delta, &k, Transcription::Corrected);
                assert!(bad.is_empty(), "m={m} l={ell}: {bad:?}");
            }
        }
    }
    assert!(!compare(4, 3, 0, 1, &k, Transcription::Printed).is_empty());
}

#[test]
fn empty_grid_scans_nothing() {
    let s = classify_scan(3, 2, &[]);
    assert_eq!(s.cells, 0);
    assert!(s.rows.is_empty());
}

#[test]
fn serialized_rep_has_documented_keys() {
    let r = build_rep(&spec(2, 0, 0, 1, Case::Ii, 1, Family::One, Kappa::fracs((1, 3), (1, 4), (1, 5)))).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in ["dim", "basis", "generators", "A", "gram"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["basis"], serde_json::json!(["v0+", "v0-"]));
}

fn small_kappa() -> impl Strategy<Value = Kappa> {
    (1i64..12, 1i64..12, 1i64..12).prop_map(|(a, b, c)| Kappa::fracs((a, 13), (b, 29), (c, 31)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The unrestricted row of case I.i (λ₁) is irreducible and unitary for
    /// every positive κ.
    #[test]
    fn case_ii_first_row_always_good(k in small_kappa(), n in 0u32..3) {
        let n = 2 * n;
        let s = spec(2, n, 0, 1, Case::Ii, 1, Family::One, k);
        let r = build_rep(&s).unwrap();
        let c = certify(&r);
        prop_assert!(c.relation_failures.is_empty());
        prop_assert!(c.irreducible);
        prop_assert_eq!(c.commutant_dim, 1);
        prop_assert!(c.unitary);
    }

    /// O₀ has spectrum ±(λ−k), each once, on a 2N+2 space.
    #[test]
    fn spectrum_and_dimension(k in small_kappa(), n in 0u32..4, ell in 0u32..2) {
        let k = Kappa::new(k.k0.clone(), k.k1.clone(), k.k1.clone());
        let s = spec(3, n, ell, 1, Case::I, 1, Family::One, k);
        if let Ok(r) = build_rep(&s) {
            prop_assert_eq!(r.dim(), 2 * n as usize + 2);
            prop_assert!(r.o0.is_diagonal());
            let lam = &r.data.lambda;
            for j in 0..=n as usize {
                let e = r.field().rat(&(lam - &Rat::int(j as i64)));
                prop_assert_eq!(r.o0.get(j, j), &e);
                prop_assert_eq!(r.o0.get(n as usize + 1 + j, n as usize + 1 + j), &-e);
            }
        }
    }
}
