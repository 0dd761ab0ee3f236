mod common;

use std::sync::Arc;

use augcat::ainfty::{check_a_infinity, AugCategory};
use augcat::corpus;
use augcat::functor::{
    check_functor_composition, check_functor_equation, AInfinityFunctor, InducedFunctor,
};
use augcat::DgaMorphism;
use proptest::prelude::*;

use common::{elementary, tame_base, tame_change};

#[test]
fn tame_change_is_a_dga_map() {
    let base = tame_base();
    let steps: Vec<_> = [(0, 3, 1), (6, 1, 2), (3, 5, 1), (8, 2, 1)]
        .iter()
        .filter_map(|&(g, w, c)| elementary(&base, g, w, c))
        .collect();
    let (changed, phi) = tame_change(&base, &steps);
    assert!(changed.validate().is_empty());
    assert!(phi.validate().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn induced_functor_over_f3(picks in prop::collection::vec((0usize..9, 0usize..64, 0u32..2), 4)) {
        let base = tame_base();
        let steps: Vec<_> = picks
            .iter()
            .filter_map(|&(g, w, c)| elementary(&base, g, w, c))
            .collect();
        let (changed, phi) = tame_change(&base, &steps);
        prop_assert!(changed.validate().is_empty());
        let cat = Arc::new(AugCategory::new(changed).unwrap());
        prop_assert_eq!(cat.len(), 9);
        prop_assert!(check_a_infinity(&cat, 2).unwrap().passed());
        let f = InducedFunctor::from_map(phi, cat).unwrap();
        let r = check_functor_equation(&f, 2).unwrap();
        prop_assert!(r.passed(), "{}", r.violations[0]);
    }
}

#[test]
fn induced_functor_arity_three_over_f3() {
    let base = tame_base();
    let steps: Vec<_> = [(0, 3, 1), (6, 1, 2), (3, 5, 1), (8, 2, 1)]
        .iter()
        .filter_map(|&(g, w, c)| elementary(&base, g, w, c))
        .collect();
    let (changed, phi) = tame_change(&base, &steps);
    let cat = Arc::new(AugCategory::new(changed).unwrap());
    let f = InducedFunctor::from_map(phi, cat).unwrap();
    let r = check_functor_equation(&f, 3).unwrap();
    assert!(r.checked > 0);
    assert!(r.passed(), "{}", r.violations[0]);
}

#[test]
fn stabilization_maps_are_inverse_on_homology() {
    let t = corpus::load("trefoil").unwrap();
    let s = Arc::new(t.stabilize(0, "b", "c").unwrap());
    let i = DgaMorphism::inclusion(t.clone(), s.clone()).unwrap();
    let j = DgaMorphism::projection(s.clone(), t.clone()).unwrap();
    let t_cat = Arc::new(AugCategory::new(t.clone()).unwrap());
    let big_j = InducedFunctor::from_map(j, t_cat).unwrap();
    let big_i =
        InducedFunctor::new(i, big_j.target_arc().clone(), big_j.source_arc().clone()).unwrap();
    let s_cat = big_j.target();
    // objects with ε(b) ≠ 0 are sent to a different (equivalent) object
    let fixed: Vec<usize> = (0..s_cat.len())
        .filter(|&x| big_j.object(big_i.object(x)) == x)
        .collect();
    assert_eq!(fixed.len(), 5);
    let mut checked = 0;
    for &x in &fixed {
        for &y in &fixed {
            let bounds = s_cat.boundaries(x, y).unwrap();
            for z in s_cat.cycles(x, y).unwrap() {
                // I then J on morphisms, landing back in the stabilized category
                let mid = big_i.component(&[x, y], &[&z]).unwrap();
                let (ix, iy) = (big_i.object(x), big_i.object(y));
                let back = big_j.component(&[ix, iy], &[&mid]).unwrap();
                let mut diff = back.clone();
                diff.add_scaled(&z, s_cat.field().neg(1));
                assert!(bounds.contains(diff.coeffs()), "({x},{y})");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn composition_on_stabilized_trefoil() {
    let t = corpus::load("trefoil").unwrap();
    let s = Arc::new(t.stabilize(0, "b", "c").unwrap());
    let i = DgaMorphism::inclusion(t.clone(), s.clone()).unwrap();
    let j = DgaMorphism::projection(s.clone(), t.clone()).unwrap();
    let s_cat = Arc::new(AugCategory::new(s).unwrap());
    let r = check_functor_composition(&i, &j, s_cat, 3).unwrap();
    assert!(r.passed(), "{:?}", r.mismatches.first());
}
