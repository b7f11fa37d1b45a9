use proptest::prelude::*;
use witting_core::classical::{exhaustive_scan, score_marking, Marking, ScoreTable, MARKING_COUNT};
use witting_core::{Card, Suit, WittingConfig};

#[test]
fn scan_histogram_is_pinned_and_thread_independent() {
    let cfg = WittingConfig::shared();
    let serial = exhaustive_scan(cfg, Some(1));
    let mut expected = vec![0u64; 41];
    expected[15..=34].copy_from_slice(&[
        144, 10320, 26400, 42480, 58800, 99168, 131760, 158400, 120960, 132480, 95520, 87120, 28800, 27520, 7920,
        17424, 480, 2160, 0, 720,
    ]);
    assert_eq!(serial.histogram, expected);
    assert_eq!(serial.mean, 0.56640625);
    assert_eq!(serial.frac_above_70pct, 0.027374267578125);

    for threads in [Some(3), None] {
        let parallel = exhaustive_scan(cfg, threads);
        assert_eq!(parallel, serial);
        assert_eq!(parallel.maximizers, serial.maximizers);
    }

    let table = ScoreTable::new(cfg);
    assert_eq!(serial.maximizers.len(), 720);
    assert!(serial.maximizers.windows(2).all(|w| w[0].index() < w[1].index()));
    assert!(serial.maximizers.iter().all(|m| table.correct(m) == 34));
}

#[test]
fn single_suit_markings() {
    let cfg = WittingConfig::shared();
    for suit in Suit::ALL {
        let s = score_marking(cfg, &Marking::all_suit(suit));
        assert_eq!(s.correct, 28, "{suit:?}");
    }
}

proptest! {
    #[test]
    fn every_one_per_rank_choice_is_a_marking(choice in prop::array::uniform10(0u8..4)) {
        let cards: Vec<Card> = (0..10)
            .map(|k| Card::new(Suit::from_index(usize::from(choice[k])), k as u8 + 1))
            .collect();
        let m = Marking::from_cards(&cards).unwrap();
        prop_assert!(m.index() < MARKING_COUNT);
        prop_assert_eq!(Marking::from_index(m.index()), m);
        prop_assert_eq!(Card::all().filter(|c| m.is_marked(*c)).count(), 10);
    }

    #[test]
    fn scores_partition_the_forty_tetrads(index in 0..MARKING_COUNT) {
        let s = score_marking(WittingConfig::shared(), &Marking::from_index(index));
        prop_assert_eq!(s.correct + s.double_marked + s.unmarked + s.other, 40);
        prop_assert!((10..=34).contains(&s.correct));
    }
}
