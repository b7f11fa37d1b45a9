//! Structural self-check run by the `verify` subcommand.
//!
//! Everything here is exact and cheap; the full group closure is left to
//! the `group` subcommand.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::ExactRational;
use crate::config::{BasisTag, Card, WittingConfig, BASIS_COUNT, STATE_COUNT};
use crate::group::orbit_by_generators;
use crate::measure::{
    intercept_resend_distribution, joint_distribution, one_step_distribution, toffoli_special_case,
    two_step_distribution, Frame, QuquartState,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn counts(cfg: &WittingConfig) -> Check {
    let vertices = cfg.expand_vertices().map(|v| v.len()).unwrap_or(0);
    let regular = Card::all().all(|c| cfg.graph().degree(c) == 12);
    let cliques = cfg.graph().maximal_cliques().len();
    let per_state = Card::all().all(|c| cfg.bases().iter().filter(|b| b.contains(c)).count() == 4);
    check(
        "configuration-counts",
        cfg.states().len() == STATE_COUNT && vertices == 240 && regular && cliques == 40 && per_state,
        format!(
            "states={} vertices={vertices} regular12={regular} tetrads={cliques} fourPerState={per_state}",
            cfg.states().len()
        ),
    )
}

fn spectrum(cfg: &WittingConfig) -> Check {
    let third = ExactRational::new(1, 3);
    let mut values = BTreeSet::new();
    let mut pairs = 0;
    for s in Card::all() {
        for t in Card::all().filter(|t| *t > s) {
            values.insert(cfg.transition_prob(s, t));
            pairs += 1;
        }
    }
    let diagonal = Card::all().all(|s| cfg.transition_prob(s, s) == ExactRational::from_integer(1));
    let ok = pairs == 780
        && diagonal
        && values
            .iter()
            .all(|p| *p == ExactRational::from_integer(0) || *p == third);
    check("transition-spectrum", ok, format!("pairs={pairs} values={values:?}"))
}

fn basis_structure(cfg: &WittingConfig) -> Check {
    let count = |tag: BasisTag| cfg.bases().iter().filter(|b| b.tag == tag).count();
    let (rank, mixed, mono) = (
        count(BasisTag::RankTetrad),
        count(BasisTag::MixedSuit),
        count(BasisTag::MonoSuit),
    );
    check(
        "basis-structure",
        rank == 10 && rank + mixed == 28 && mono == 12,
        format!("rankTetrads={rank} mixedSuit={} monoSuit={mono}", rank + mixed),
    )
}

fn mub(cfg: &WittingConfig) -> Check {
    let third = ExactRational::new(1, 3);
    let mut ok = true;
    for k in 0..4 {
        match cfg.extract_mub_triads(k) {
            Ok(triads) => {
                for (i, a) in triads.iter().enumerate() {
                    for b in &triads[i + 1..] {
                        ok &= a.iter().all(|s| b.iter().all(|t| cfg.transition_prob(*s, *t) == third));
                    }
                }
            }
            Err(_) => ok = false,
        }
    }
    check("mub-embedding", ok, "4 slices x 4 triads, cross-triad probability 1/3")
}

fn conjugate_coordination(cfg: &WittingConfig) -> Check {
    let bad: Vec<usize> = cfg
        .bases()
        .iter()
        .filter(|b| !joint_distribution(cfg, b, b, true).is_perfectly_correlated())
        .map(|b| b.id)
        .collect();
    check(
        "conjugate-coordination",
        bad.is_empty(),
        format!("failing bases {bad:?}"),
    )
}

fn deferred_measurement(cfg: &WittingConfig) -> Check {
    let mut pairs = 0;
    let mut ok = true;
    for s in cfg.states() {
        for id in cfg.bases_containing(s.card) {
            let b = cfg.basis(id);
            let pos = b.position(s.card).expect("basis contains its card");
            let vectors = Frame::Direct.basis_vectors(cfg, b);
            for probe_state in cfg.states() {
                let psi = QuquartState::new(probe_state.vector);
                ok &= two_step_distribution(&psi, &vectors, pos) == one_step_distribution(&psi, &vectors);
            }
            pairs += 1;
        }
    }
    check("deferred-measurement", ok && pairs == 160, format!("pairs={pairs}"))
}

fn eve_rank_tetrads(cfg: &WittingConfig) -> Check {
    let comp = cfg.basis(0);
    let two_thirds = ExactRational::new(2, 3);
    let bad: Vec<usize> = (1..10)
        .filter(|id| {
            let b = cfg.basis(*id);
            intercept_resend_distribution(cfg, b, b, comp).mismatch() != two_thirds
        })
        .collect();
    check(
        "eve-mismatch-2/3",
        bad.is_empty(),
        format!("failing rank tetrads {bad:?}"),
    )
}

fn toffoli(_: &WittingConfig) -> Check {
    let r = toffoli_special_case();
    check("toffoli", r.passed(), format!("{r:?}"))
}

fn cyclic_shift(cfg: &WittingConfig) -> Check {
    let ok = (0..4).all(|from| (0..4).all(|to| cfg.column_shift_signs(from, to).is_some()));
    check("cyclic-shift", ok, "every block column maps to every other up to signs")
}

fn conjugation(cfg: &WittingConfig) -> Check {
    check(
        "card-conjugation",
        cfg.check_conjugation().is_ok(),
        "conjugate rank involution",
    )
}

fn orbit(cfg: &WittingConfig) -> Check {
    let n = orbit_by_generators(cfg).len();
    check("generator-orbit", n == BASIS_COUNT, format!("orbit={n}"))
}

/// Runs every check; the report passes only if all of them do.
pub fn run_all(config: &WittingConfig) -> VerificationReport {
    let suite: [fn(&WittingConfig) -> Check; 11] = [
        counts,
        spectrum,
        basis_structure,
        mub,
        conjugate_coordination,
        deferred_measurement,
        eve_rank_tetrads,
        toffoli,
        cyclic_shift,
        conjugation,
        orbit,
    ];
    let checks: Vec<Check> = suite.iter().map(|f| f(config)).collect();
    VerificationReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let r = run_all(WittingConfig::shared());
        let failures: Vec<_> = r.failures().collect();
        assert!(r.passed, "{failures:?}");
        assert_eq!(r.checks.len(), 11);
    }
}
