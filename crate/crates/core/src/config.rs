//! The 40 projective states of the Witting configuration, their two
//! numbering schemes, the orthogonality graph and the 40 orthogonal tetrads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{
    canonical_ray, inner, vec_conj, vec_norm_sq, vec_scale, EisVec4, EisensteinInt, ExactRational, UNITS,
};
use crate::tables::{generated_rays, BLOCK_TABLE, CARD_TABLE, CONJUGATE_RANK};

pub const STATE_COUNT: usize = 40;
pub const BASIS_COUNT: usize = 40;

/// Index of a tetrad in the canonical basis numbering, `0..40`.
pub type BasisId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("table inconsistency: {0}")]
    TableMismatch(String),
    #[error("orthogonality graph is not 12-regular: {0}")]
    NotRegular(String),
    #[error("basis enumeration failed: {0}")]
    BasisCount(String),
    #[error("vertex expansion failed: {0}")]
    Vertices(String),
    #[error("invalid coordinate {0}, expected 0..4")]
    BadCoordinate(usize),
    #[error("MUB triad grouping failed: {0}")]
    Triads(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suit {
    Spades,
    Hearts,
    Diamonds,
    Clubs,
}

impl Suit {
    pub const ALL: [Suit; 4] = [Suit::Spades, Suit::Hearts, Suit::Diamonds, Suit::Clubs];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        ['S', 'H', 'D', 'C'][self.index()]
    }

    pub fn from_index(i: usize) -> Suit {
        Self::ALL[i]
    }
}

/// A "quantum card": the suit/rank label of one of the 40 states. Cards are
/// ordered suit first, then rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Card {
    pub suit: Suit,
    pub rank: u8,
}

impl Card {
    pub fn new(suit: Suit, rank: u8) -> Self {
        assert!((1..=10).contains(&rank), "card rank {rank} out of range");
        Self { suit, rank }
    }

    /// Dense index `suit * 10 + rank - 1`.
    pub fn index(self) -> usize {
        self.suit.index() * 10 + self.rank as usize - 1
    }

    pub fn from_index(i: usize) -> Self {
        Self::new(Suit::from_index(i / 10), (i % 10) as u8 + 1)
    }

    pub fn all() -> impl Iterator<Item = Card> {
        (0..STATE_COUNT).map(Card::from_index)
    }

    /// Label of the same card in the complex-conjugated table: suit kept,
    /// rank sent through the involution 3<->4, 5<->8, 7<->9, 6<->10.
    pub fn conjugate(self) -> Card {
        Card::new(self.suit, CONJUGATE_RANK[self.rank as usize - 1])
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.suit.letter(), self.rank)
    }
}

impl FromStr for Card {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut chars = s.chars();
        let suit = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('S') => Suit::Spades,
            Some('H') => Suit::Hearts,
            Some('D') => Suit::Diamonds,
            Some('C') => Suit::Clubs,
            _ => return Err(format!("bad card '{s}'")),
        };
        let rank: u8 = chars.as_str().parse().map_err(|_| format!("bad card '{s}'"))?;
        if !(1..=10).contains(&rank) {
            return Err(format!("bad card '{s}'"));
        }
        Ok(Card::new(suit, rank))
    }
}

impl Serialize for Card {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Position in the block table: column `0..4`, row `0..10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockIndex {
    pub column: usize,
    pub row: usize,
}

impl Serialize for BlockIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.column, self.row].serialize(s)
    }
}

/// One of the 40 states, stored as its canonical `sqrt(3)`-scaled vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveState {
    pub card: Card,
    pub block: BlockIndex,
    pub vector: EisVec4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasisTag {
    /// The four suits of one rank.
    #[serde(rename = "rank-tetrad")]
    RankTetrad,
    /// One card of each suit, not all of the same rank.
    #[serde(rename = "mixed-suit")]
    MixedSuit,
    /// Four cards of one suit.
    #[serde(rename = "mono-suit")]
    MonoSuit,
}

impl BasisTag {
    /// Rank tetrads are a special case of one-card-per-suit tetrads.
    pub fn is_mixed_suit(self) -> bool {
        matches!(self, BasisTag::RankTetrad | BasisTag::MixedSuit)
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisTag::RankTetrad => "rank-tetrad",
            BasisTag::MixedSuit => "mixed-suit",
            BasisTag::MonoSuit => "mono-suit",
        }
    }
}

/// A tetrad of mutually orthogonal states. Members are ordered by suit for
/// one-per-suit tetrads and by rank for mono-suit ones; both coincide with
/// the `Card` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Basis {
    pub id: BasisId,
    pub tag: BasisTag,
    pub members: [Card; 4],
}

impl Basis {
    pub fn contains(&self, card: Card) -> bool {
        self.members.contains(&card)
    }

    /// Outcome index `0..4` of `card` within this tetrad.
    pub fn position(&self, card: Card) -> Option<usize> {
        self.members.iter().position(|c| *c == card)
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, c| m | 1 << c.index())
    }
}

/// Orthogonality graph on the 40 states as adjacency bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityGraph {
    adjacency: [u64; STATE_COUNT],
}

impl OrthogonalityGraph {
    pub fn neighbours(&self, card: Card) -> u64 {
        self.adjacency[card.index()]
    }

    pub fn adjacent(&self, s: Card, t: Card) -> bool {
        self.adjacency[s.index()] >> t.index() & 1 == 1
    }

    pub fn degree(&self, card: Card) -> u32 {
        self.adjacency[card.index()].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// All maximal cliques (Bron-Kerbosch with pivoting over bitmasks).
    pub fn maximal_cliques(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let all = (1u64 << STATE_COUNT) - 1;
        self.bron_kerbosch(0, all, 0, &mut out);
        out
    }

    fn bron_kerbosch(&self, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut candidates = p & !self.adjacency[pivot];
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let bit = 1u64 << v;
            let n = self.adjacency[v];
            self.bron_kerbosch(r | bit, p & n, x & n, out);
            p &= !bit;
            x |= bit;
        }
    }
}

/// The complete, verified configuration. Immutable once built.
#[derive(Clone, Debug)]
pub struct WittingConfig {
    states: Vec<ProjectiveState>,
    by_ray: HashMap<EisVec4, Card>,
    graph: OrthogonalityGraph,
    bases: Vec<Basis>,
    bases_of: [[BasisId; 4]; STATE_COUNT],
    conjugate_basis: [BasisId; BASIS_COUNT],
}

impl WittingConfig {
    /// Process-wide instance, built on first use.
    pub fn shared() -> &'static WittingConfig {
        static CONFIG: OnceLock<WittingConfig> = OnceLock::new();
        CONFIG.get_or_init(|| WittingConfig::build().expect("embedded tables are consistent"))
    }

    pub fn build() -> Result<Self, ConfigError> {
        let states = build_states()?;
        let by_ray: HashMap<EisVec4, Card> = states.iter().map(|s| (s.vector, s.card)).collect();
        let graph = build_graph(&states)?;
        let bases = enumerate_bases(&graph)?;

        let mut bases_of = [[0; 4]; STATE_COUNT];
        let mut fill = [0usize; STATE_COUNT];
        for b in &bases {
            for c in b.members {
                let slot = &mut fill[c.index()];
                if *slot == 4 {
                    return Err(ConfigError::BasisCount(format!("{c} lies in more than 4 bases")));
                }
                bases_of[c.index()][*slot] = b.id;
                *slot += 1;
            }
        }
        if let Some(i) = fill.iter().position(|n| *n != 4) {
            return Err(ConfigError::BasisCount(format!(
                "{} lies in {} bases",
                Card::from_index(i),
                fill[i]
            )));
        }

        let mut config = Self {
            states,
            by_ray,
            graph,
            bases,
            bases_of,
            conjugate_basis: [0; BASIS_COUNT],
        };
        config.check_conjugation()?;
        for id in 0..BASIS_COUNT {
            let image: BTreeSet<Card> = config.bases[id].members.iter().map(|c| c.conjugate()).collect();
            let partner = config
                .bases
                .iter()
                .find(|b| b.members.iter().copied().collect::<BTreeSet<_>>() == image)
                .ok_or_else(|| ConfigError::BasisCount(format!("basis {id} has no conjugate")))?;
            config.conjugate_basis[id] = partner.id;
        }
        Ok(config)
    }

    pub fn states(&self) -> &[ProjectiveState] {
        &self.states
    }

    pub fn state(&self, card: Card) -> &ProjectiveState {
        &self.states[card.index()]
    }

    pub fn vector(&self, card: Card) -> &EisVec4 {
        &self.states[card.index()].vector
    }

    /// Identifies an arbitrary vector with one of the 40 rays, if it spans one.
    pub fn lookup(&self, v: &EisVec4) -> Option<Card> {
        if vec_norm_sq(v) != 3 {
            return None;
        }
        self.by_ray.get(&canonical_ray(v)).copied()
    }

    pub fn graph(&self) -> &OrthogonalityGraph {
        &self.graph
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn basis(&self, id: BasisId) -> &Basis {
        &self.bases[id]
    }

    /// The four tetrads containing `card`, in ascending id order.
    pub fn bases_containing(&self, card: Card) -> [BasisId; 4] {
        self.bases_of[card.index()]
    }

    /// Tetrad whose members are the conjugate labels of `id`'s members.
    pub fn conjugate_basis(&self, id: BasisId) -> BasisId {
        self.conjugate_basis[id]
    }

    /// `sum_i conj(s_i) t_i` on the scaled vectors.
    pub fn scaled_inner(&self, s: Card, t: Card) -> EisensteinInt {
        inner(self.vector(s), self.vector(t))
    }

    /// `|<s|t>|^2`, always one of 0, 1/3, 1.
    pub fn transition_prob(&self, s: Card, t: Card) -> ExactRational {
        ExactRational::new(self.scaled_inner(s, t).norm_sq(), 9)
    }

    /// The 240 polytope vertices: every unit multiple of every state.
    pub fn expand_vertices(&self) -> Result<Vec<EisVec4>, ConfigError> {
        let set: BTreeSet<EisVec4> = self
            .states
            .iter()
            .flat_map(|s| UNITS.iter().map(move |u| vec_scale(&s.vector, *u)))
            .collect();
        if set.len() != 240 {
            return Err(ConfigError::Vertices(format!("{} distinct vertices", set.len())));
        }
        Ok(set.into_iter().collect())
    }

    /// The 12 states with a zero at `coordinate`, split into four mutually
    /// orthogonal triads. Triads are sorted by their smallest block index.
    pub fn extract_mub_triads(&self, coordinate: usize) -> Result<[[Card; 3]; 4], ConfigError> {
        if coordinate >= 4 {
            return Err(ConfigError::BadCoordinate(coordinate));
        }
        let slice: Vec<Card> = Card::all().filter(|c| self.vector(*c)[coordinate].is_zero()).collect();
        if slice.len() != 12 {
            return Err(ConfigError::Triads(format!("{} states in slice", slice.len())));
        }
        let mut remaining: BTreeSet<Card> = slice.iter().copied().collect();
        let mut triads: Vec<[Card; 3]> = Vec::with_capacity(4);
        while let Some(&first) = remaining.iter().next() {
            let mut group: Vec<Card> = remaining
                .iter()
                .copied()
                .filter(|c| *c == first || self.graph.adjacent(first, *c))
                .collect();
            if group.len() != 3 {
                return Err(ConfigError::Triads(format!("{first} has {} partners", group.len() - 1)));
            }
            if !self.graph.adjacent(group[1], group[2]) {
                return Err(ConfigError::Triads(format!("{first}: partners not orthogonal")));
            }
            group.sort_by_key(|c| self.state(*c).block);
            for c in &group {
                remaining.remove(c);
            }
            triads.push([group[0], group[1], group[2]]);
        }
        triads.sort_by_key(|t| self.state(t[0]).block);
        triads
            .try_into()
            .map_err(|_| ConfigError::Triads("expected four triads".into()))
    }

    /// Sign pattern `d` such that shifting block column `from` cyclically by
    /// `to - from` places and multiplying coordinate-wise by `d` reproduces
    /// column `to` as a set of rays.
    pub fn column_shift_signs(&self, from: usize, to: usize) -> Option<[i64; 4]> {
        let shift = (to + 4 - from) % 4;
        let column = |c: usize| -> BTreeSet<EisVec4> {
            self.states
                .iter()
                .filter(|s| s.block.column == c)
                .map(|s| s.vector)
                .collect()
        };
        let target = column(to);
        let source = column(from);
        (0..16u32).find_map(|mask| {
            let signs: [i64; 4] = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
            let image: BTreeSet<EisVec4> = source
                .iter()
                .map(|v| {
                    let shifted: EisVec4 = std::array::from_fn(|i| v[(i + 4 - shift) % 4].scale(signs[i]));
                    canonical_ray(&shifted)
                })
                .collect();
            (image == target).then_some(signs)
        })
    }

    pub fn check_conjugation(&self) -> Result<(), ConfigError> {
        for c in Card::all() {
            let image = c.conjugate();
            if image.conjugate() != c {
                return Err(ConfigError::TableMismatch(format!("rank map not an involution at {c}")));
            }
            if canonical_ray(&vec_conj(self.vector(c))) != *self.vector(image) {
                return Err(ConfigError::TableMismatch(format!(
                    "conj({c}) is not the state {image}"
                )));
            }
        }
        Ok(())
    }
}

/// Builds the 40 states from the card table and cross-checks it against the
/// block table and the closed-form generator.
pub fn build_states() -> Result<Vec<ProjectiveState>, ConfigError> {
    let mut block_of: HashMap<EisVec4, BlockIndex> = HashMap::new();
    for (row, cols) in BLOCK_TABLE.iter().enumerate() {
        for (column, v) in cols.iter().enumerate() {
            if vec_norm_sq(v) != 3 {
                return Err(ConfigError::TableMismatch(format!("block ({column},{row}) norm")));
            }
            if block_of.insert(canonical_ray(v), BlockIndex { column, row }).is_some() {
                return Err(ConfigError::TableMismatch(format!("block ({column},{row}) repeated")));
            }
        }
    }

    let generated: BTreeSet<EisVec4> = generated_rays().iter().map(canonical_ray).collect();
    let tabulated: BTreeSet<EisVec4> = block_of.keys().copied().collect();
    if generated != tabulated {
        return Err(ConfigError::TableMismatch(
            "block table differs from the closed-form ray list".into(),
        ));
    }

    let mut states = Vec::with_capacity(STATE_COUNT);
    for card in Card::all() {
        let (v, bracket) = CARD_TABLE[card.rank as usize - 1][card.suit.index()];
        let ray = canonical_ray(&v);
        let block = *block_of
            .get(&ray)
            .ok_or_else(|| ConfigError::TableMismatch(format!("{card} not in block table")))?;
        if block.row != bracket {
            return Err(ConfigError::TableMismatch(format!(
                "{card}: bracket says row {bracket}, vector sits at {block:?}"
            )));
        }
        states.push(ProjectiveState {
            card,
            block,
            vector: ray,
        });
    }
    let distinct: BTreeSet<EisVec4> = states.iter().map(|s| s.vector).collect();
    if distinct.len() != STATE_COUNT {
        return Err(ConfigError::TableMismatch("card table repeats a ray".into()));
    }
    for (row, cols) in CARD_TABLE.iter().enumerate() {
        for i in 0..4 {
            for j in i + 1..4 {
                if !inner(&cols[i].0, &cols[j].0).is_zero() {
                    return Err(ConfigError::TableMismatch(format!(
                        "card row {} not orthogonal",
                        row + 1
                    )));
                }
            }
        }
    }
    Ok(states)
}

pub fn build_graph(states: &[ProjectiveState]) -> Result<OrthogonalityGraph, ConfigError> {
    let mut adjacency = [0u64; STATE_COUNT];
    for (i, s) in states.iter().enumerate() {
        for (j, t) in states.iter().enumerate().skip(i + 1) {
            if inner(&s.vector, &t.vector).is_zero() {
                adjacency[i] |= 1 << j;
                adjacency[j] |= 1 << i;
            }
        }
    }
    let graph = OrthogonalityGraph { adjacency };
    if let Some(c) = Card::all().find(|c| graph.degree(*c) != 12) {
        return Err(ConfigError::NotRegular(format!("{c} has degree {}", graph.degree(c))));
    }
    Ok(graph)
}

pub fn enumerate_bases(graph: &OrthogonalityGraph) -> Result<Vec<Basis>, ConfigError> {
    let cliques = graph.maximal_cliques();
    if cliques.len() != BASIS_COUNT {
        return Err(ConfigError::BasisCount(format!("{} maximal cliques", cliques.len())));
    }
    let mut tetrads = Vec::with_capacity(BASIS_COUNT);
    for mask in cliques {
        if mask.count_ones() != 4 {
            return Err(ConfigError::BasisCount(format!(
                "maximal clique of size {}",
                mask.count_ones()
            )));
        }
        let mut members: Vec<Card> = (0..STATE_COUNT)
            .filter(|i| mask >> i & 1 == 1)
            .map(Card::from_index)
            .collect();
        members.sort();
        let members: [Card; 4] = members.try_into().expect("four members");
        let suits: BTreeSet<Suit> = members.iter().map(|c| c.suit).collect();
        let tag = match suits.len() {
            4 if members.iter().all(|c| c.rank == members[0].rank) => BasisTag::RankTetrad,
            4 => BasisTag::MixedSuit,
            1 => BasisTag::MonoSuit,
            n => return Err(ConfigError::BasisCount(format!("tetrad {members:?} spans {n} suits"))),
        };
        tetrads.push((tag, members));
    }
    tetrads.sort();

    let count = |t: BasisTag| tetrads.iter().filter(|(tag, _)| *tag == t).count();
    let (rank, mixed, mono) = (
        count(BasisTag::RankTetrad),
        count(BasisTag::MixedSuit),
        count(BasisTag::MonoSuit),
    );
    if (rank, rank + mixed, mono) != (10, 28, 12) {
        return Err(ConfigError::BasisCount(format!(
            "tag histogram rank={rank} mixed={} mono={mono}",
            rank + mixed
        )));
    }
    Ok(tetrads
        .into_iter()
        .enumerate()
        .map(|(id, (tag, members))| Basis { id, tag, members })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn card(s: &str) -> Card {
        s.parse().unwrap()
    }

    fn cfg() -> &'static WittingConfig {
        WittingConfig::shared()
    }

    fn projectively_equal(a: &EisVec4, b: &EisVec4) -> bool {
        canonical_ray(a) == canonical_ray(b)
    }

    const E: fn(i64, i64) -> EisensteinInt = EisensteinInt::new;

    #[test]
    fn card_examples() {
        let s1 = cfg().state(card("S1"));
        assert!(projectively_equal(&s1.vector, &[E(1, 2), E(0, 0), E(0, 0), E(0, 0)]));
        assert_eq!(s1.block, BlockIndex { column: 0, row: 0 });

        let c2 = cfg().state(card("C2"));
        assert!(projectively_equal(&c2.vector, &[E(1, 0), E(1, 0), E(1, 0), E(0, 0)]));
        assert_eq!(c2.block, BlockIndex { column: 3, row: 1 });

        let h10 = cfg().state(card("H10"));
        assert!(projectively_equal(&h10.vector, &[E(1, 0), E(0, 0), E(-1, 0), E(0, -1)]));
        assert_eq!(h10.block, BlockIndex { column: 1, row: 4 });
    }

    #[test]
    fn block_column_is_suit() {
        for s in cfg().states() {
            assert_eq!(s.block.column, s.card.suit.index());
        }
    }

    #[test]
    fn scaled_inner_examples() {
        for c in Card::all() {
            assert_eq!(cfg().scaled_inner(c, c).norm_sq(), 9);
        }
        assert!(cfg().scaled_inner(card("S1"), card("H1")).is_zero());
        // <(1,1,1,0),(0,1,-1,1)> = 0 + 1 - 1 + 0 = 0
        assert_eq!(cfg().scaled_inner(card("S2"), card("C2")).norm_sq(), 0);
        // S3 = (0,1,-w,w^2), C2 = (1,1,1,0): 1 - conj(w), norm 3
        assert_eq!(cfg().scaled_inner(card("S3"), card("C2")).norm_sq(), 3);
    }

    #[test]
    fn transition_spectrum() {
        let third = ExactRational::new(1, 3);
        for s in Card::all() {
            for t in Card::all() {
                let p = cfg().transition_prob(s, t);
                if s == t {
                    assert_eq!(p, ExactRational::from_integer(1));
                } else {
                    assert!(p == ExactRational::from_integer(0) || p == third, "{s} {t} {p}");
                }
            }
        }
    }

    #[test]
    fn graph_is_12_regular() {
        let g = cfg().graph();
        let mut brute = 0;
        for s in Card::all() {
            let mut d = 0;
            for t in Card::all() {
                if s != t && cfg().scaled_inner(s, t).is_zero() {
                    d += 1;
                }
            }
            assert_eq!(d, 12);
            assert_eq!(g.degree(s), 12);
            brute += d;
        }
        assert_eq!(brute / 2, 240);
        assert_eq!(g.edge_count(), 240);
        assert!(g.adjacent(card("S1"), card("H1")));
    }

    #[test]
    fn basis_structure() {
        let bases = cfg().bases();
        assert_eq!(bases.len(), 40);
        let mut occurrences = [0; 40];
        for b in bases {
            for c in b.members {
                occurrences[c.index()] += 1;
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    assert!(cfg().scaled_inner(b.members[i], b.members[j]).is_zero());
                }
            }
        }
        assert!(occurrences.iter().all(|n| *n == 4));
        let count = |t| bases.iter().filter(|b| b.tag == t).count();
        assert_eq!(count(BasisTag::RankTetrad), 10);
        assert_eq!(bases.iter().filter(|b| b.tag.is_mixed_suit()).count(), 28);
        assert_eq!(count(BasisTag::MonoSuit), 12);
    }

    #[test]
    fn canonical_basis_numbering() {
        let bases = cfg().bases();
        for (r, b) in bases.iter().take(10).enumerate() {
            assert_eq!(b.tag, BasisTag::RankTetrad);
            assert!(b.members.iter().all(|c| c.rank as usize == r + 1));
            assert_eq!(b.members.map(|c| c.suit), Suit::ALL);
        }
        for b in &bases[10..28] {
            assert_eq!(b.tag, BasisTag::MixedSuit);
            assert_eq!(b.members.map(|c| c.suit), Suit::ALL);
        }
        for b in &bases[28..] {
            assert_eq!(b.tag, BasisTag::MonoSuit);
            assert!(b.members.windows(2).all(|w| w[0].rank < w[1].rank));
        }
        assert!(bases[10..28].windows(2).all(|w| w[0].members < w[1].members));
        assert!(bases[28..].windows(2).all(|w| w[0].members < w[1].members));
    }

    #[test]
    fn each_orthogonal_pair_in_exactly_one_basis() {
        for s in Card::all() {
            for t in Card::all() {
                if s < t && cfg().graph().adjacent(s, t) {
                    let n = cfg().bases().iter().filter(|b| b.contains(s) && b.contains(t)).count();
                    assert_eq!(n, 1, "{s} {t}");
                }
            }
        }
    }

    #[test]
    fn conjugate_card_examples() {
        assert_eq!(card("S3").conjugate(), card("S4"));
        assert_eq!(card("D1").conjugate(), card("D1"));
        assert_eq!(card("H6").conjugate(), card("H10"));
        for c in Card::all() {
            assert_eq!(c.conjugate().conjugate(), c);
            assert_eq!(c.conjugate().suit, c.suit);
        }
    }

    #[test]
    fn conjugate_basis_is_an_involution() {
        for b in cfg().bases() {
            let p = cfg().conjugate_basis(b.id);
            assert_eq!(cfg().conjugate_basis(p), b.id);
        }
    }

    #[test]
    fn mub_triads_last_coordinate() {
        let triads = cfg().extract_mub_triads(3).unwrap();
        let blocks: Vec<Vec<(usize, usize)>> = triads
            .iter()
            .map(|t| {
                t.iter()
                    .map(|c| {
                        let b = cfg().state(*c).block;
                        (b.column, b.row)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(
            blocks,
            vec![
                vec![(0, 0), (1, 0), (2, 0)],
                vec![(3, 1), (3, 2), (3, 3)],
                vec![(3, 4), (3, 5), (3, 6)],
                vec![(3, 7), (3, 8), (3, 9)],
            ]
        );
    }

    #[test]
    fn mub_triads_are_unbiased() {
        let third = ExactRational::new(1, 3);
        for k in 0..4 {
            let triads = cfg().extract_mub_triads(k).unwrap();
            for (i, a) in triads.iter().enumerate() {
                for (j, b) in triads.iter().enumerate() {
                    for s in a {
                        for t in b {
                            let p = cfg().transition_prob(*s, *t);
                            if i != j {
                                assert_eq!(p, third);
                            } else if s != t {
                                assert_eq!(p, ExactRational::from_integer(0));
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(cfg().extract_mub_triads(4), Err(ConfigError::BadCoordinate(4)));
    }

    #[test]
    fn columns_related_by_cyclic_shift() {
        for j in 0..4 {
            for k in 0..4 {
                assert!(cfg().column_shift_signs(j, k).is_some(), "{j} -> {k}");
            }
        }
    }

    #[test]
    fn lookup_ignores_phase() {
        for s in cfg().states() {
            for u in UNITS {
                assert_eq!(cfg().lookup(&vec_scale(&s.vector, u)), Some(s.card));
            }
        }
        assert_eq!(cfg().lookup(&[E(1, 0), E(1, 0), E(-1, 0), E(0, 0)]), None);
    }

    #[test]
    fn card_parsing() {
        assert_eq!(card("C10"), Card::new(Suit::Clubs, 10));
        assert!("X1".parse::<Card>().is_err());
        assert!("S11".parse::<Card>().is_err());
        assert!("S0".parse::<Card>().is_err());
        for c in Card::all() {
            assert_eq!(c.to_string().parse::<Card>().unwrap(), c);
            assert_eq!(Card::from_index(c.index()), c);
        }
    }
}
