//! Classical "marked card" models.
//!
//! A non-contextual model marks one card per rank tetrad once and for all and
//! hopes that every tetrad then holds exactly one mark. There are `4^10` such
//! markings; [`exhaustive_scan`] scores every one of them. A contextual model
//! instead marks one card per tetrad independently, so a card's mark depends
//! on the tetrad it is drawn in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{BasisId, BasisTag, Card, Suit, WittingConfig, BASIS_COUNT};

pub const RANKS: usize = 10;
pub const MARKING_COUNT: u32 = 1 << (2 * RANKS);

/// One marked suit per rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    /// `choice[rank - 1]` is the suit index marked at that rank.
    pub choice: [u8; RANKS],
}

impl Marking {
    /// Base-4 digits of `index`, least significant digit for rank 1.
    pub fn from_index(index: u32) -> Self {
        assert!(index < MARKING_COUNT, "marking index out of range");
        Self {
            choice: std::array::from_fn(|k| ((index >> (2 * k)) & 3) as u8),
        }
    }

    pub fn index(&self) -> u32 {
        self.choice
            .iter()
            .enumerate()
            .map(|(k, c)| u32::from(*c) << (2 * k))
            .sum()
    }

    pub fn all_suit(suit: Suit) -> Self {
        Self {
            choice: [suit.index() as u8; RANKS],
        }
    }

    /// Builds a marking from ten cards, one of each rank.
    pub fn from_cards(cards: &[Card]) -> Option<Self> {
        let mut choice = [u8::MAX; RANKS];
        for c in cards {
            let slot = &mut choice[usize::from(c.rank) - 1];
            if *slot != u8::MAX {
                return None;
            }
            *slot = c.suit.index() as u8;
        }
        choice.iter().all(|c| *c < 4).then_some(Self { choice })
    }

    pub fn is_marked(&self, card: Card) -> bool {
        usize::from(self.choice[usize::from(card.rank) - 1]) == card.suit.index()
    }

    pub fn marked_cards(&self) -> [Card; RANKS] {
        std::array::from_fn(|k| Card::new(Suit::from_index(usize::from(self.choice[k])), k as u8 + 1))
    }
}

impl Serialize for Marking {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.marked_cards().iter().map(|c| c.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MarkingScore {
    /// Tetrads with exactly one mark.
    pub correct: u32,
    pub double_marked: u32,
    pub unmarked: u32,
    /// Tetrads with three or four marks.
    pub other: u32,
}

/// Each tetrad's members as `(rank - 1, suit)` pairs.
pub struct ScoreTable {
    members: [[(u8, u8); 4]; BASIS_COUNT],
}

impl ScoreTable {
    pub fn new(config: &WittingConfig) -> Self {
        Self {
            members: std::array::from_fn(|id| config.basis(id).members.map(|c| (c.rank - 1, c.suit.index() as u8))),
        }
    }

    fn marks(&self, m: &Marking, id: BasisId) -> u32 {
        self.members[id]
            .iter()
            .map(|(r, s)| u32::from(m.choice[usize::from(*r)] == *s))
            .sum()
    }

    pub fn correct(&self, m: &Marking) -> u32 {
        (0..BASIS_COUNT).map(|id| u32::from(self.marks(m, id) == 1)).sum()
    }

    pub fn score(&self, m: &Marking) -> MarkingScore {
        let mut s = MarkingScore::default();
        for id in 0..BASIS_COUNT {
            match self.marks(m, id) {
                0 => s.unmarked += 1,
                1 => s.correct += 1,
                2 => s.double_marked += 1,
                _ => s.other += 1,
            }
        }
        s
    }
}

pub fn score_marking(config: &WittingConfig, m: &Marking) -> MarkingScore {
    ScoreTable::new(config).score(m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanSummary {
    pub max_correct: u32,
    pub count_at_max: u64,
    /// Mean fraction of correct tetrads over all markings.
    pub mean: f64,
    /// Fraction of markings with more than 28 of 40 correct.
    #[serde(rename = "fracAbove70pct")]
    pub frac_above_70pct: f64,
    pub frac_at_max: f64,
    pub exists_perfect: bool,
    /// `histogram[c]` counts markings with exactly `c` correct tetrads.
    pub histogram: Vec<u64>,
    #[serde(skip)]
    pub maximizers: Vec<Marking>,
}

struct Partial {
    histogram: [u64; BASIS_COUNT + 1],
    max: u32,
    maximizers: Vec<Marking>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        match other.max.cmp(&self.max) {
            std::cmp::Ordering::Greater => {
                self.max = other.max;
                self.maximizers = other.maximizers;
            }
            std::cmp::Ordering::Equal => self.maximizers.extend(other.maximizers),
            std::cmp::Ordering::Less => {}
        }
        self
    }
}

fn scan_range(table: &ScoreTable, range: std::ops::Range<u32>) -> Partial {
    let mut p = Partial {
        histogram: [0; BASIS_COUNT + 1],
        max: 0,
        maximizers: Vec::new(),
    };
    for index in range {
        let m = Marking::from_index(index);
        let c = table.correct(&m);
        p.histogram[c as usize] += 1;
        if c > p.max {
            p.max = c;
            p.maximizers.clear();
        }
        if c == p.max {
            p.maximizers.push(m);
        }
    }
    p
}

/// Scores all `4^10` markings. `threads = Some(1)` runs on the calling thread;
/// otherwise the index space is split into contiguous chunks scored in
/// parallel and merged in index order, so the result does not depend on the
/// thread count.
pub fn exhaustive_scan(config: &WittingConfig, threads: Option<usize>) -> ScanSummary {
    const CHUNKS: u32 = 256;
    let table = ScoreTable::new(config);
    let step = MARKING_COUNT / CHUNKS;
    let partial = if threads == Some(1) {
        scan_range(&table, 0..MARKING_COUNT)
    } else {
        let run = || {
            (0..CHUNKS)
                .into_par_iter()
                .map(|k| scan_range(&table, k * step..(k + 1) * step))
                .collect::<Vec<_>>()
        };
        let parts = match threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(run),
            None => run(),
        };
        parts.into_iter().reduce(Partial::merge).expect("at least one chunk")
    };

    let total = f64::from(MARKING_COUNT);
    let sum: u64 = partial.histogram.iter().enumerate().map(|(c, n)| c as u64 * n).sum();
    let above: u64 = partial.histogram[29..].iter().sum();
    let count_at_max = partial.histogram[partial.max as usize];
    ScanSummary {
        max_correct: partial.max,
        count_at_max,
        mean: sum as f64 / (total * BASIS_COUNT as f64),
        frac_above_70pct: above as f64 / total,
        frac_at_max: count_at_max as f64 / total,
        exists_perfect: partial.histogram[BASIS_COUNT] > 0,
        histogram: partial.histogram.to_vec(),
        maximizers: partial.maximizers,
    }
}

/// A contextual model: the card marked in each tetrad, or none where the
/// table leaves that tetrad out. Both participants hold identical copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckTable {
    pub marks: [Option<Card>; BASIS_COUNT],
}

impl DeckTable {
    pub fn marked(&self, id: BasisId) -> Option<Card> {
        self.marks[id]
    }
}

/// Marks a uniformly chosen member of every tetrad.
pub fn build_contextual_deck_model(config: &WittingConfig, seed: u64) -> DeckTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DeckTable {
        marks: std::array::from_fn(|id| Some(config.basis(id).members[rng.gen_range(0..4)])),
    }
}

/// Only the rank tetrads carry marks; any marking then satisfies it
/// non-contextually.
pub fn rank_tetrad_table(config: &WittingConfig, marking: &Marking) -> DeckTable {
    DeckTable {
        marks: std::array::from_fn(|id| {
            let b = config.basis(id);
            (b.tag == BasisTag::RankTetrad)
                .then(|| b.members.into_iter().find(|c| marking.is_marked(*c)))
                .flatten()
        }),
    }
}

/// Both participants draw the same tetrad and look for the marked card;
/// returns `(matches, tetrads compared)`.
pub fn deck_agreement(config: &WittingConfig, alice: &DeckTable, bob: &DeckTable) -> (usize, usize) {
    let mut matches = 0;
    let mut compared = 0;
    for b in config.bases() {
        let found_a = b.members.into_iter().find(|c| alice.marked(b.id) == Some(*c));
        let found_b = b.members.into_iter().find(|c| bob.marked(b.id) == Some(*c));
        if found_a.is_some() || found_b.is_some() {
            compared += 1;
            matches += usize::from(found_a == found_b);
        }
    }
    (matches, compared)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContextualityWitness {
    pub card: Card,
    pub basis_marked: BasisId,
    pub basis_unmarked: BasisId,
}

/// A card marked in one tetrad and left unmarked in another tetrad the table
/// covers. The first such card in card order is returned.
pub fn contextuality_witness(config: &WittingConfig, table: &DeckTable) -> Option<ContextualityWitness> {
    Card::all().find_map(|card| {
        let ids = config.bases_containing(card);
        let covered = || ids.iter().copied().filter(|id| table.marks[*id].is_some());
        let marked = covered().find(|id| table.marks[*id] == Some(card))?;
        let unmarked = covered().find(|id| table.marks[*id] != Some(card))?;
        Some(ContextualityWitness {
            card,
            basis_marked: marked,
            basis_unmarked: unmarked,
        })
    })
}
