use super::*;
use crate::dunkl::{Kappa, Status};
use crate::poly::{Spin, SpinorPoly};

fn sym(m: u32, k: Kappa, delta: i32) -> SymmetrySet {
    build_symmetries(&RootSystem::new(m, k).unwrap(), delta).unwrap()
}

fn assert_pass(r: &Report) {
    if let Some(bad) = r.failures().next() {
        panic!("{} failed at degree {}: {:?}", bad.identity, bad.degree, bad.counterexample);
    }
}

#[test]
fn builds_with_dual_routes() {
    for m in [2, 3, 4] {
        let k = Kappa::fracs((1, 2), (1, 3), if m % 2 == 0 { (1, 5) } else { (1, 3) });
        for delta in [1, -1] {
            sym(m, k.clone(), delta);
        }
    }
}

#[test]
fn classical_one_index_vanish() {
    let s = sym(3, Kappa::zero(), 1);
    let ev = Evaluator::new(s.field);
    for d in 0..=3 {
        for o in &s.o {
            assert!(ev.matrix(o, d).is_zero());
        }
    }
}

#[test]
fn realized_s0_on_constants() {
    for delta in [1, -1] {
        let s = sym(2, Kappa::zero(), delta);
        let up = SpinorPoly::chi(s.field, Spin::Up);
        assert_eq!(s.dsig[0].apply(&up), up.scale(&s.field.int(delta as i64)));
    }
}

#[test]
fn o123_commutes_with_o12() {
    let s = sym(3, Kappa::fracs((1, 2), (1, 3), (1, 3)), 1);
    let ev = Evaluator::new(s.field);
    let c = LinOperator::comm(&s.o123, &s.o12);
    for d in 0..=3 {
        assert!(ev.matrix(&c, d).is_zero());
    }
}

#[test]
fn supercommutation() {
    assert_pass(&verify_supercommutation(&sym(3, Kappa::fracs((1, 2), (1, 3), (1, 3)), 1), 3));
    assert_pass(&verify_supercommutation(&sym(4, Kappa::zero(), -1), 4));
}

#[test]
fn corrupted_o12_fails_at_degree_zero() {
    let rs = RootSystem::new(3, Kappa::fracs((1, 2), (1, 3), (1, 3))).unwrap();
    let s = build_symmetries_with(&rs, 1, Some(Corruption::O12CliffordSign)).unwrap();
    let r = verify_supercommutation(&s, 2);
    assert!(r.failures().all(|x| x.identity.starts_with("[O12,")));
    let low = r.failures().map(|x| x.degree).min().expect("corruption must be detected");
    assert_eq!(low, 0);
}

#[test]
fn two_index_rules() {
    let r = verify_commutation_rules(&sym(3, Kappa::zero(), 1), 3);
    assert_pass(&r);
    // At κ = 0 the rule is the so(3) bracket alone.
    let s = sym(3, Kappa::zero(), 1);
    let ev = Evaluator::new(s.field);
    for d in 0..=3 {
        assert_eq!(ev.compare(&LinOperator::comm(&s.o12, &s.o31), &s.o23, d), None);
    }
    assert_pass(&verify_commutation_rules(&sym(4, Kappa::fracs((1, 2), (1, 3), (1, 5)), 1), 3));
    assert_pass(&verify_commutation_rules(&sym(5, Kappa::fracs((1, 2), (1, 7), (1, 7)), -1), 3));
}

#[test]
fn squares_and_ladders() {
    assert_pass(&verify_ladder_relations(&sym(2, Kappa::fracs((1, 3), (1, 4), (1, 6)), 1), 3));
    assert_pass(&verify_ladder_relations(&sym(3, Kappa::fracs((0, 1), (1, 2), (1, 2)), -1), 3));
}

#[test]
fn action_tables() {
    assert_pass(&verify_action_tables(&sym(3, Kappa::fracs((1, 5), (1, 3), (1, 3)), 1), 3));
    assert_pass(&verify_action_tables(&sym(4, Kappa::fracs((1, 2), (2, 3), (1, 5)), -1), 3));
}

#[test]
fn corrupted_phase_fails_only_that_entry() {
    let s = sym(4, Kappa::fracs((1, 2), (2, 3), (1, 5)), 1);
    let ids = action_table_identities(&s, Some(ACTION_ENTRY_S1_OPLUS));
    let ev = Evaluator::new(s.field);
    let res = check_identities(&ev, &ids, 2);
    let failed: std::collections::BTreeSet<&str> =
        res.iter().filter(|r| r.status == Status::Fail).map(|r| r.identity.as_str()).collect();
    assert_eq!(failed.into_iter().collect::<Vec<_>>(), vec!["S1 O+ = z^2 O- S1"]);
}

#[test]
fn presentation_and_centre() {
    for m in [2, 3, 4, 5] {
        let k = Kappa::fracs((1, 3), (1, 4), if m % 2 == 0 { (2, 5) } else { (1, 4) });
        let s = sym(m, k, 1);
        assert_pass(&verify_presentation(&s, 2));
        assert_pass(&verify_central(&s, 3));
    }
}
