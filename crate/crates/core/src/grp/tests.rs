use super::*;
use crate::dunkl::Kappa;
use crate::symalg::build_symmetries;

const SIGNS: [CoverSign; 2] = [CoverSign::Plus, CoverSign::Minus];

#[test]
fn order_and_relations() {
    for m in 2..=8 {
        for sign in SIGNS {
            let g = make_cover(m, sign).unwrap();
            assert_eq!(g.order(), 8 * m as usize, "m={m} {sign}");
            assert!(g.failed_relations().is_empty());
            let z = g.z();
            assert_ne!(z, g.identity());
            assert_eq!(g.mul(z, z), g.identity());
            assert!(g.elements().all(|x| g.mul(x, z) == g.mul(z, x)));
            // Normal forms are unique and name their element.
            let mut seen = std::collections::HashSet::new();
            for x in g.elements() {
                let e = g.normal_form(x);
                assert_eq!(g.evaluate(&e), x);
                assert!(seen.insert(e));
            }
        }
    }
    assert!(matches!(make_cover(1, CoverSign::Plus), Err(GrpError::BadOrder(1))));
}

#[test]
fn presentation_examples() {
    use Gen::*;
    let g = make_cover(3, CoverSign::Plus).unwrap();
    assert_eq!(g.word(&[S0, S1, S0, S1]), g.z());
    assert_eq!(g.word(&[S0, S0]), g.identity());
    assert_eq!(g.pow(g.tau(), 3), g.identity());
    let g = make_cover(2, CoverSign::Plus).unwrap();
    assert_eq!(g.word(&[S1, Sm, S1, Sm]), g.z());
    let g = make_cover(3, CoverSign::Minus).unwrap();
    assert_eq!(g.word(&[S1, S1]), g.z());
    assert_eq!(g.pow(g.tau(), 3), g.z());
    assert_eq!(g.tau_order(), 6);
}

#[test]
fn class_counts() {
    for m in 2..=8u32 {
        let g = make_cover(m, CoverSign::Plus).unwrap();
        let classes = conjugacy_classes(&g);
        let want = if m % 2 == 1 { 2 * m + 3 } else { 2 * m + 6 };
        assert_eq!(classes.len() as u32, want, "m={m}");
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), g.order());
        assert!(classes.contains(&vec![g.z()]));
        assert!(classes.contains(&vec![g.identity()]));
    }
}

#[test]
fn small_tables() {
    let g = make_cover(3, CoverSign::Plus).unwrap();
    let t = irrep_table(&g);
    assert_eq!(t.irreps.iter().filter(|r| r.dim == 1).count(), 4);
    assert_eq!(t.irreps.iter().filter(|r| r.dim == 2).count(), 5);
    let g = make_cover(2, CoverSign::Plus).unwrap();
    let t = irrep_table(&g);
    assert_eq!(t.irreps.iter().filter(|r| r.dim == 1).count(), 8);
    assert_eq!(t.irreps.iter().filter(|r| r.dim == 2).count(), 2);
    let x1 = &t.irreps[0];
    assert!([Gen::Z, Gen::S0, Gen::S1, Gen::Sm].iter().all(|&x| x.generator_is_one(x1)));
}

impl Gen {
    fn generator_is_one(self, r: &Irrep) -> bool {
        r.generator(self) == Matrix::identity(r.z.field(), r.dim)
    }
}

#[test]
fn every_table_is_complete() {
    for m in 2..=8 {
        for sign in SIGNS {
            let g = make_cover(m, sign).unwrap();
            let t = irrep_table(&g);
            let c = check_table(&g, &t);
            assert!(c.passed(), "m={m} {sign}: {c:?}");
            let p = (m / 2) as usize;
            let want = if m % 2 == 1 { 4 * p + 5 } else { 4 * p + 6 };
            assert_eq!(t.irreps.len(), want);
            if sign == CoverSign::Plus {
                assert!(t.irreps.iter().filter(|r| r.is_spin()).all(|r| r.dim == 2));
            }
            // Spin means z acts as −1.
            for r in &t.irreps {
                let minus = Matrix::scalar(r.z.field(), r.dim, &r.z.field().int(-1));
                assert_eq!(r.is_spin(), r.z == minus);
            }
        }
    }
}

#[test]
fn broken_row_is_caught() {
    let g = make_cover(4, CoverSign::Plus).unwrap();
    let mut t = irrep_table(&g);
    let k = t.irreps.iter().position(|r| r.dim == 2).unwrap();
    let f = t.irreps[k].z.field();
    // Replace δ by −δ in one slot only, breaking (σ̂₀σ̂ₘ)² = z.
    t.irreps[k].s0 = Matrix::scalar(f, 2, &f.one());
    let c = check_table(&g, &t);
    assert!(!c.passed());
    assert!(!c.relation_failures.is_empty());
}

#[test]
fn character_of_constant_spinors() {
    for m in 2..=6 {
        let k = if m % 2 == 0 { Kappa::fracs((1, 2), (1, 3), (1, 5)) } else { Kappa::fracs((1, 2), (1, 3), (1, 3)) };
        let rs = RootSystem::new(m, k).unwrap();
        let g = make_cover(m, CoverSign::Plus).unwrap();
        let t = irrep_table(&g);
        for delta in [1, -1] {
            let s = build_symmetries(&rs, delta).unwrap();
            assert_eq!(constant_spinor_span_dim(&s), 2);
            let ch = constant_spinor_character(&g, &s);
            let k = match_character(&g, &t, &ch).unwrap_or_else(|| panic!("no irrep matches, m={m} delta={delta}"));
            assert!(t.irreps[k].is_spin());
        }
    }
}

#[test]
fn realization_relations() {
    for m in [3, 4] {
        let k = Kappa::fracs((1, 2), (1, 3), if m % 2 == 0 { (1, 5) } else { (1, 3) });
        let rs = RootSystem::new(m, k).unwrap();
        let g = make_cover(m, CoverSign::Plus).unwrap();
        let rep = realization_map(&g, &rs, 1).unwrap();
        assert!(rep.all_passed());
        let s = build_symmetries(&rs, 1).unwrap();
        let ev = Evaluator::new(s.field);
        let want = if m == 4 { s.scalar(s.field.int(-1)) } else { s.one() };
        assert!(ev.compare(&s.dtau.pow(m, s.field), &want, 2).is_none());
        let (s0, s1) = (&s.dsig[0], &s.dsig[1]);
        assert!(ev.compare(&s0.mul(s1), &s1.mul(s0).neg(), 2).is_none());
    }
    let rs = RootSystem::new(3, Kappa::zero()).unwrap();
    let g = make_cover(3, CoverSign::Minus).unwrap();
    assert!(matches!(realization_map(&g, &rs, 1), Err(GrpError::WrongCover)));
}

#[test]
fn realization_reports_violation() {
    // The realized group does not satisfy the negative cover's S0^2 = z.
    let rs = RootSystem::new(3, Kappa::zero()).unwrap();
    let s = build_symmetries(&rs, 1).unwrap();
    let minus = make_cover(3, CoverSign::Minus).unwrap();
    let ids = realization_identities(&minus, &s);
    let ev = Evaluator::new(s.field);
    let bad: Vec<_> = check_identities(&ev, &ids, 0).into_iter().filter(|r| !r.passed()).collect();
    assert!(bad.iter().any(|r| r.identity == "S0^2 = z"));
}

#[test]
fn latex_and_json() {
    let t = group_tables(3, CoverSign::Plus).unwrap();
    let tex = t.to_latex();
    assert!(tex.contains("\\begin{tabular}"));
    assert_eq!(tex.matches("\\texttt{Y0}").count(), 2);
    let v = serde_json::to_value(&t).unwrap();
    assert_eq!(v["order"], 24);
    assert_eq!(v["classes"].as_array().unwrap().len(), 9);
    assert_eq!(v["cover"], "plus");
}
