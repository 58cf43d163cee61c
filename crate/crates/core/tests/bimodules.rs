use jpn_core::bimodule::{check_jordan_bimodule, split_null_extension, BimoduleAction, BimoduleCase};
use jpn_core::identities::{check_super_jordan, check_supercommutative};
use jpn_core::matrix::build_jpn;
use jpn_core::peirce::{check_peirce_relations, peirce_decompose, peirce_decompose_within};
use jpn_core::{BasisEntry, Element, Family, GradedBasis, Parity};

#[test]
fn four_cases_are_jordan_bimodules() {
    for case in BimoduleCase::ALL {
        let m = case.action(3).unwrap();
        assert_eq!(m.module().len(), 18);
        let r = check_jordan_bimodule(&m).unwrap();
        assert!(r.passed, "{case}: {:?}", r.violations);
        assert_eq!(r.instances_checked, 36 * 37 / 2 + 36u64.pow(4));
    }
}

#[test]
fn opposite_flips_parity() {
    for case in [BimoduleCase::Reg, BimoduleCase::Pn] {
        let m = case.action(3).unwrap();
        let op = m.opposite().unwrap();
        assert_eq!(op.module().count(Parity::Even), m.module().count(Parity::Odd));
        assert!(op.opposite().unwrap().module().entries() == m.module().entries());
    }
}

/// Dropping the `(−1)^{|a|}` twist on all odd `a` gives an isomorphic
/// module (via `m ↦ (−1)^{|m|} m`); dropping it on the `h` half only does
/// not.
#[test]
fn half_signed_opposite_is_not_a_bimodule() {
    let m = BimoduleCase::Reg.action(3).unwrap();
    let flipped = GradedBasis::new(
        m.module()
            .entries()
            .iter()
            .map(|e| BasisEntry {
                label: e.label.clone(),
                parity: e.parity.flip(),
            })
            .collect(),
    )
    .unwrap();
    let dm = flipped.len();
    let alg = m.algebra();
    let signed = |k: usize| {
        let a = k / dm;
        let e = m.action(a, k % dm);
        if alg.parity(a).is_odd() && alg.basis().label(a).family() == Some(Family::S) {
            e.neg()
        } else {
            e.clone()
        }
    };
    let all: Vec<Element> = (0..alg.dim() * dm).map(|k| m.action(k / dm, k % dm).clone()).collect();
    let unsigned = BimoduleAction::new(alg.clone(), flipped.clone(), all).unwrap();
    assert!(check_jordan_bimodule(&unsigned).unwrap().passed);
    let act = (0..alg.dim() * dm).map(signed).collect();
    let bad = BimoduleAction::new(alg.clone(), flipped, act).unwrap();
    let r = check_jordan_bimodule(&bad).unwrap();
    assert!(!r.passed);
    assert_eq!(r.violations[0].indices.len(), 4);
}

#[test]
fn single_sign_error_is_detected() {
    for case in BimoduleCase::ALL {
        let m = case.action(3).unwrap();
        let a = m.algebra().basis().index_of(&"h_12".parse().unwrap()).unwrap();
        let target = (0..m.module().len()).find(|&k| !m.action(a, k).is_zero()).unwrap();
        let bad = m.with_action(a, target, m.action(a, target).neg()).unwrap();
        let ext = split_null_extension(&bad).unwrap();
        assert!(check_supercommutative(ext.ambient()).passed);
        let r = check_super_jordan(ext.ambient()).unwrap();
        assert!(!r.passed, "{case}");
        let q = &r.violations[0];
        assert_eq!(q.labels.len(), 4);
        assert!(!q.detail.is_empty());
    }
}

#[test]
fn peirce_components_of_extensions() {
    let (jp, _) = build_jpn(3).unwrap();
    let us = |alg: &jpn_core::GradedAlgebra| -> Vec<Element> {
        (1..=3)
            .map(|i| Element::basis(alg.basis().index_of(&format!("u_{i}").parse().unwrap()).unwrap()))
            .collect()
    };
    let d = peirce_decompose(&jp, &us(&jp)).unwrap();
    assert!(check_peirce_relations(&jp, &d).unwrap().passed);
    for case in BimoduleCase::ALL {
        let ext = case.extension(3).unwrap();
        let amb = ext.ambient();
        let es = us(amb);
        let full = peirce_decompose(amb, &es).unwrap();
        assert!(check_peirce_relations(amb, &full).unwrap().passed, "{case}");
        let lift: Vec<Element> = (0..ext.algebra_dim()).map(Element::basis).collect();
        let top = peirce_decompose_within(amb, &es, &lift).unwrap();
        let rad: Vec<Element> = ext.radical().map(Element::basis).collect();
        let bottom = peirce_decompose_within(amb, &es, &rad).unwrap();
        for i in 1..=3 {
            for j in i..=3 {
                let want = if i == j { 2 } else { 4 };
                assert_eq!(top.dim(i, j), want);
                assert_eq!(bottom.dim(i, j), want);
                assert_eq!(full.dim(i, j), 2 * want);
            }
        }
        if case == BimoduleCase::Reg {
            let names: Vec<String> = bottom.component(1, 2).iter().map(|e| e.display(amb.basis())).collect();
            for l in ["g_12", "z_12", "v_12", "v_21"] {
                assert!(names.iter().any(|s| s == l), "{l} missing from {names:?}");
            }
        }
    }
}
