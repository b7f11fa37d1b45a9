//! Triflection generators of the configuration's symmetry group and its
//! generation by breadth-first closure over exact matrices.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::arith::{canonical_ray, EisVec4, EisensteinInt, UNITS};
use crate::config::{Card, Suit, WittingConfig, STATE_COUNT};
use crate::matrix::ScaledMatrix;

/// A 4x4 unitary over `Z[w][1/3]`.
pub type SymmetryElement = ScaledMatrix<4>;

/// Cards whose states define the four generating triflections.
pub const GENERATOR_CARDS: [(Suit, u8); 4] = [
    (Suit::Spades, 1),
    (Suit::Clubs, 2),
    (Suit::Diamonds, 1),
    (Suit::Spades, 2),
];

/// Ceiling passed to [`generate_group`] by default; comfortably above the
/// expected order.
pub const DEFAULT_MAX_ELEMENTS: usize = 60_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded {0} elements; generators do not close")]
    NonClosure(usize),
    #[error("maxElements must be at least {DEFAULT_MAX_ELEMENTS}, got {0}")]
    CeilingTooLow(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("image of {0} is not a configuration state")]
    NotASymmetry(Card),
    #[error("internal failure: induced map is not a bijection")]
    Internal,
}

/// Order-3 complex reflection `I + (w - 1) |v><v| / <v|v>` for a state of
/// scaled norm 3, i.e. `(3 I + (w - 1) v v^dagger) / 3`.
pub fn triflection(v: &EisVec4) -> SymmetryElement {
    assert_eq!(crate::arith::vec_norm_sq(v), 3, "triflection expects a scaled state");
    let factor = EisensteinInt::OMEGA - EisensteinInt::ONE;
    let mut m = [[EisensteinInt::ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let diag = if i == j {
                EisensteinInt::from_int(3)
            } else {
                EisensteinInt::ZERO
            };
            m[i][j] = diag + factor * v[i] * v[j].conj();
        }
    }
    SymmetryElement::new(m, 1)
}

/// `R'_j = w^2 R_j` for the four generating states; each has determinant 1.
pub fn generators(config: &WittingConfig) -> [SymmetryElement; 4] {
    GENERATOR_CARDS
        .map(|(suit, rank)| triflection(config.vector(Card::new(suit, rank))).scale_unit(EisensteinInt::OMEGA_SQ))
}

/// The generated group, with the three orders it can be counted in.
#[derive(Clone, Debug)]
pub struct GroupTable {
    elements: Vec<SymmetryElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupOrders {
    /// Distinct exact matrices.
    pub raw_order: usize,
    /// Classes under `M ~ -M`.
    pub order_mod_pm1: usize,
    /// Classes under all six unit scalars.
    pub projective_order: usize,
    /// Rays reached from `(1, 0, 0, 0)`.
    pub orbit_size: usize,
}

/// Breadth-first closure of the generators under multiplication, deduplicated
/// on the reduced exact matrix.
pub fn generate_group(config: &WittingConfig, max_elements: usize) -> Result<GroupTable, GroupError> {
    if max_elements < DEFAULT_MAX_ELEMENTS {
        return Err(GroupError::CeilingTooLow(max_elements));
    }
    let gens = generators(config);
    let identity = SymmetryElement::identity();
    let mut seen: HashSet<SymmetryElement> = HashSet::from([identity]);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let next = g.mul(h);
            if seen.insert(next) {
                if elements.len() == max_elements {
                    return Err(GroupError::NonClosure(max_elements));
                }
                elements.push(next);
                queue.push_back(next);
            }
        }
    }
    Ok(GroupTable { elements })
}

impl GroupTable {
    pub fn elements(&self) -> &[SymmetryElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &SymmetryElement) -> bool {
        self.elements.contains(g)
    }

    fn quotient_order(&self, scalars: &[EisensteinInt]) -> usize {
        self.elements
            .iter()
            .map(|g| g.canonical_under(scalars))
            .collect::<HashSet<_>>()
            .len()
    }

    /// Orbit of `(1, 0, 0, 0)` under every element, as canonical rays.
    pub fn orbit_of_first_basis_state(&self) -> BTreeSet<EisVec4> {
        let e0 = first_basis_state();
        self.elements
            .iter()
            .map(|g| canonical_ray(&g.apply(&e0).expect("group elements keep Z[w]^4 invariant")))
            .collect()
    }

    pub fn orders(&self) -> GroupOrders {
        GroupOrders {
            raw_order: self.len(),
            order_mod_pm1: self.quotient_order(&UNITS[..2]),
            projective_order: self.quotient_order(&UNITS),
            orbit_size: self.orbit_of_first_basis_state().len(),
        }
    }
}

/// `(1, 0, 0, 0)` in the `sqrt(3)`-scaled convention, `(i sqrt(3), 0, 0, 0)`.
fn first_basis_state() -> EisVec4 {
    let z = EisensteinInt::ZERO;
    [EisensteinInt::I_SQRT3, z, z, z]
}

/// Orbit of `(1, 0, 0, 0)` obtained by applying generators only, without
/// building the group.
pub fn orbit_by_generators(config: &WittingConfig) -> BTreeSet<EisVec4> {
    let gens = generators(config);
    let start = canonical_ray(&first_basis_state());
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let image = g.apply(&v).expect("generator keeps Z[w]^4 invariant");
            let ray = canonical_ray(&image);
            if seen.insert(ray) {
                queue.push_back(ray);
            }
        }
    }
    seen
}

/// The permutation of the 40 states induced by `g`, indexed by
/// [`Card::index`].
pub fn is_configuration_symmetry(config: &WittingConfig, g: &SymmetryElement) -> Result<Vec<usize>, SymmetryError> {
    if !g.is_unitary() {
        return Err(SymmetryError::NotUnitary);
    }
    let mut perm = Vec::with_capacity(STATE_COUNT);
    for s in config.states() {
        let image = g
            .apply(&s.vector)
            .and_then(|w| config.lookup(&w))
            .ok_or(SymmetryError::NotASymmetry(s.card))?;
        perm.push(image.index());
    }
    let distinct: HashSet<usize> = perm.iter().copied().collect();
    if distinct.len() != STATE_COUNT {
        return Err(SymmetryError::Internal);
    }
    Ok(perm)
}
