use std::collections::BTreeSet;

use witting_core::arith::EisensteinInt;
use witting_core::group::{
    generate_group, is_configuration_symmetry, GroupTable, SymmetryElement, DEFAULT_MAX_ELEMENTS,
};
use witting_core::{Card, WittingConfig};

fn group() -> GroupTable {
    generate_group(WittingConfig::shared(), DEFAULT_MAX_ELEMENTS).unwrap()
}

#[test]
fn group_orders() {
    let orders = group().orders();
    println!("{orders:?}");
    assert_eq!(orders.raw_order, 51840);
    assert_eq!(orders.order_mod_pm1, 25920);
    assert_eq!(orders.projective_order, 25920);
    assert_eq!(orders.orbit_size, 40);
}

#[test]
fn every_element_is_a_special_unitary_symmetry() {
    let cfg = WittingConfig::shared();
    let bases: BTreeSet<BTreeSet<usize>> = cfg
        .bases()
        .iter()
        .map(|b| b.members.iter().map(|c| c.index()).collect())
        .collect();
    for g in group().elements() {
        assert!(g.determinant_equals(EisensteinInt::ONE));
        let perm = is_configuration_symmetry(cfg, g).expect("element permutes the 40 states");
        for b in &bases {
            let image: BTreeSet<usize> = b.iter().map(|i| perm[*i]).collect();
            assert!(bases.contains(&image));
        }
    }
}

#[test]
fn kernel_is_plus_minus_identity() {
    let g = group();
    let minus = SymmetryElement::identity().scale_unit(EisensteinInt::new(-1, 0));
    assert!(g.contains(&minus));
    let omega = SymmetryElement::identity().scale_unit(EisensteinInt::OMEGA);
    assert!(!g.contains(&omega));
    // -I fixes every ray; nothing else in the group does
    let trivial = g
        .elements()
        .iter()
        .filter(|m| {
            let perm = is_configuration_symmetry(WittingConfig::shared(), m).unwrap();
            perm.iter().enumerate().all(|(i, p)| i == *p)
        })
        .count();
    assert_eq!(trivial, 2);
}

#[test]
fn sampled_inverses_are_adjoints_in_the_group() {
    let g = group();
    for m in g.elements().iter().step_by(997) {
        let inv = m.adjoint();
        assert!(g.contains(&inv));
        assert!(m.mul(&inv).is_identity());
    }
}

#[test]
fn transitive_on_states() {
    let cfg = WittingConfig::shared();
    let s1: Card = "S1".parse().unwrap();
    let images: BTreeSet<usize> = group()
        .elements()
        .iter()
        .map(|m| is_configuration_symmetry(cfg, m).unwrap()[s1.index()])
        .collect();
    assert_eq!(images.len(), 40);
}
