//! Two-party sessions over an in-process classical channel.
//!
//! Three variants are simulated:
//!
//! * **naive**: each party picks one of the 40 tetrads, the choices are
//!   announced and rounds with equal choices are kept;
//! * **two-step**: each party picks a state, queries it with a delayed
//!   (ancilla) measurement, then completes the measurement in one of the four
//!   tetrads containing it; rounds with equal tetrads are kept;
//! * **key agreement**: the parties announce the probed states before
//!   completing, and finish in a common tetrad whenever one exists.
//!
//! Bob always reads tetrad labels in the conjugated table, so a kept round
//! without interference yields identical outcome indices. Key material is the
//! outcome index `0..4` of each kept round, two bits per round.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::ExactRational;
use crate::config::{Basis, BasisId, Card, WittingConfig, BASIS_COUNT, STATE_COUNT};
use crate::measure::{
    intercept_resend_distribution, joint_distribution, measure, partner_state, sample_index, two_step_distribution,
    two_step_measure, Frame, JointDistribution, QuquartState,
};

#[derive(Debug, Error, PartialEq)]
pub enum ProtocolError {
    #[error("a session needs at least one round")]
    NoRounds,
    #[error("correlation weight {0} outside [0, 1]")]
    BadWeight(f64),
    #[error("basis id {0} out of range 0..40")]
    BadBasis(usize),
    #[error("fixed choice {choice} out of range 0..{limit}")]
    BadFixedChoice { choice: usize, limit: usize },
    #[error("{mismatches} of {sifted} sifted rounds disagree")]
    Mismatch { sifted: usize, mismatches: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    fn salt(self) -> u64 {
        match self {
            Party::Alice => 0xA11C_E000_0000_0001,
            Party::Bob => 0xB0B0_0000_0000_0002,
        }
    }
}

/// How a party makes its random choices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PolicyMode {
    /// Independent private randomness.
    Uniform,
    /// A generator shared in advance; equal seeds give equal choices.
    Agreed,
    /// With probability `w` copy the shared stream, otherwise draw privately.
    Correlated(f64),
    /// Always the given primary choice (tetrad id or state index); secondary
    /// choices come from the shared stream.
    Fixed(usize),
}

impl std::str::FromStr for PolicyMode {
    type Err = String;

    /// `uniform`, `agreed`, `correlated:W` or `fixed:N`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            None if s == "uniform" => Ok(PolicyMode::Uniform),
            None if s == "agreed" => Ok(PolicyMode::Agreed),
            Some(("correlated", w)) => match w.parse::<f64>() {
                Ok(w) if (0.0..=1.0).contains(&w) => Ok(PolicyMode::Correlated(w)),
                _ => Err(format!("correlation weight '{w}' must be a number in [0, 1]")),
            },
            Some(("fixed", n)) => n
                .parse()
                .map(PolicyMode::Fixed)
                .map_err(|_| format!("fixed choice '{n}' is not an index")),
            _ => Err(format!("unknown policy '{s}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartyPolicy {
    pub mode: PolicyMode,
    pub seed: u64,
}

impl PartyPolicy {
    pub fn uniform(seed: u64) -> Self {
        Self {
            mode: PolicyMode::Uniform,
            seed,
        }
    }

    pub fn agreed(seed: u64) -> Self {
        Self {
            mode: PolicyMode::Agreed,
            seed,
        }
    }

    pub fn correlated(weight: f64, seed: u64) -> Self {
        Self {
            mode: PolicyMode::Correlated(weight),
            seed,
        }
    }

    pub fn fixed(choice: usize, seed: u64) -> Self {
        Self {
            mode: PolicyMode::Fixed(choice),
            seed,
        }
    }

    fn validate(&self, primary_limit: usize) -> Result<(), ProtocolError> {
        match self.mode {
            PolicyMode::Correlated(w) if !(0.0..=1.0).contains(&w) => Err(ProtocolError::BadWeight(w)),
            PolicyMode::Fixed(choice) if choice >= primary_limit => Err(ProtocolError::BadFixedChoice {
                choice,
                limit: primary_limit,
            }),
            _ => Ok(()),
        }
    }
}

/// A party's private generator of choices.
struct ChoiceStream {
    mode: PolicyMode,
    shared: ChaCha8Rng,
    private: ChaCha8Rng,
}

impl ChoiceStream {
    fn new(policy: &PartyPolicy, party: Party) -> Self {
        Self {
            mode: policy.mode,
            shared: ChaCha8Rng::seed_from_u64(policy.seed),
            private: ChaCha8Rng::seed_from_u64(policy.seed ^ party.salt()),
        }
    }

    fn draw(&mut self, n: usize) -> usize {
        match self.mode {
            PolicyMode::Uniform => self.private.gen_range(0..n),
            PolicyMode::Agreed | PolicyMode::Fixed(_) => self.shared.gen_range(0..n),
            PolicyMode::Correlated(w) => {
                // Draw from both streams every time so the shared stream stays
                // aligned between the parties.
                let common = self.shared.gen_range(0..n);
                let own = self.private.gen_range(0..n);
                if self.private.gen_bool(w) {
                    common
                } else {
                    own
                }
            }
        }
    }

    fn primary(&mut self, n: usize) -> usize {
        match self.mode {
            PolicyMode::Fixed(choice) => choice,
            _ => self.draw(n),
        }
    }

    fn secondary(&mut self, n: usize) -> usize {
        self.draw(n)
    }
}

/// A typed record on the public classical channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Message {
    Basis { round: usize, from: Party, basis: BasisId },
    State { round: usize, from: Party, card: Card },
}

/// Public, append-only message log shared by both parties (and readable by
/// anyone listening).
#[derive(Clone, Debug, Default)]
pub struct ClassicalChannel {
    log: Vec<Message>,
}

impl ClassicalChannel {
    pub fn send(&mut self, msg: Message) {
        self.log.push(msg);
    }

    pub fn log(&self) -> &[Message] {
        &self.log
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Protocol {
    Naive,
    TwoStep,
    KeyAgreement,
}

impl std::str::FromStr for Protocol {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "naive" => Ok(Protocol::Naive),
            "two-step" => Ok(Protocol::TwoStep),
            "key-agreement" => Ok(Protocol::KeyAgreement),
            other => Err(format!("unknown protocol '{other}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionConfig {
    pub rounds: usize,
    pub alice: PartyPolicy,
    pub bob: PartyPolicy,
    /// Tetrad an intercept-resend eavesdropper measures Bob's half in.
    pub eve: Option<BasisId>,
    /// Seed of the generator driving the quantum measurement outcomes.
    pub seed: u64,
}

impl SessionConfig {
    /// Both parties follow `mode` keyed by `seed`; the outcome generator gets
    /// its own stream derived from the same seed.
    pub fn from_seed(rounds: usize, mode: PolicyMode, seed: u64, eve: Option<BasisId>) -> Self {
        let policy = PartyPolicy { mode, seed };
        Self {
            rounds,
            alice: policy,
            bob: policy,
            eve,
            seed: seed ^ 0x7c03_e5ee_d000_0003,
        }
    }
}

/// One round as recorded in the transcript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub alice_state: Option<Card>,
    pub alice_basis: BasisId,
    pub bob_state: Option<Card>,
    pub bob_basis: BasisId,
    pub alice_outcome: u8,
    pub bob_outcome: u8,
    pub sifted: bool,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionStats {
    pub rounds: usize,
    pub sifted: usize,
    pub matched: usize,
    pub mismatches: usize,
    pub sift_rate: f64,
    pub match_rate_within_sifted: f64,
    /// Rounds where both parties probed the same state (two-step and key
    /// agreement only).
    pub same_state: usize,
    /// Same probed state and same completing tetrad (two-step only).
    pub same_state_and_basis: usize,
    /// Distinct but orthogonal probed states (key agreement only).
    pub distinct_orthogonal: usize,
    /// Number of key bits, two per sifted round.
    pub key_bits: usize,
}

#[derive(Clone, Debug)]
pub struct SessionTranscript {
    pub protocol: Protocol,
    pub rounds: Vec<RoundRecord>,
    pub channel: ClassicalChannel,
    pub stats: SessionStats,
}

impl SessionTranscript {
    /// Alice's outcome indices on sifted rounds.
    pub fn key_symbols(&self) -> Vec<u8> {
        self.rounds
            .iter()
            .filter(|r| r.sifted)
            .map(|r| r.alice_outcome)
            .collect()
    }

    /// Key symbols packed two bits each, most significant first, as hex.
    pub fn key_hex(&self) -> String {
        self.key_symbols()
            .chunks(4)
            .map(|chunk| {
                let byte = chunk.iter().enumerate().fold(0u8, |acc, (i, s)| acc | s << (6 - 2 * i));
                format!("{byte:02x}")
            })
            .collect()
    }

    fn finish(protocol: Protocol, rounds: Vec<RoundRecord>, channel: ClassicalChannel, extra: [usize; 3]) -> Self {
        let sifted = rounds.iter().filter(|r| r.sifted).count();
        let matched = rounds.iter().filter(|r| r.matched).count();
        let n = rounds.len();
        let stats = SessionStats {
            rounds: n,
            sifted,
            matched,
            mismatches: sifted - matched,
            sift_rate: sifted as f64 / n as f64,
            match_rate_within_sifted: if sifted == 0 {
                1.0
            } else {
                matched as f64 / sifted as f64
            },
            same_state: extra[0],
            same_state_and_basis: extra[1],
            distinct_orthogonal: extra[2],
            key_bits: 2 * sifted,
        };
        Self {
            protocol,
            rounds,
            channel,
            stats,
        }
    }
}

/// Tetrad both parties can complete in: the unique one holding two distinct
/// orthogonal states, the lowest-id one holding a repeated state, none for
/// non-orthogonal states.
pub fn common_basis(config: &WittingConfig, s: Card, t: Card) -> Option<BasisId> {
    if s == t {
        return Some(config.bases_containing(s)[0]);
    }
    if !config.graph().adjacent(s, t) {
        return None;
    }
    config
        .bases_containing(s)
        .into_iter()
        .find(|id| config.basis(*id).contains(t))
}

struct Sampler<'a> {
    config: &'a WittingConfig,
    rng: ChaCha8Rng,
    eve: Option<&'a Basis>,
}

impl Sampler<'_> {
    /// Alice completes the two-step procedure on her half of the pair, Eve
    /// optionally intercepts Bob's half, Bob completes his procedure.
    fn two_step_round(&mut self, a: (Card, &Basis), b: (Card, &Basis)) -> (u8, u8) {
        let mixed = [ExactRational::new(1, 4); 4];
        let j = sample_index(&mut self.rng, &mixed);
        let (alice, found) = two_step_measure(
            &mut self.rng,
            self.config,
            &QuquartState::basis(j),
            a.0,
            a.1,
            Frame::Direct,
        )
        .expect("probe lies in its basis");
        let mut bob_state = partner_state(&found);
        if let Some(eve) = self.eve {
            let vectors = Frame::Conjugated.basis_vectors(self.config, eve);
            bob_state = measure(&mut self.rng, &bob_state, &vectors).1;
        }
        let (bob, _) = two_step_measure(&mut self.rng, self.config, &bob_state, b.0, b.1, Frame::Conjugated)
            .expect("probe lies in its basis");
        (alice as u8, bob as u8)
    }
}

fn prepare<'a>(
    config: &'a WittingConfig,
    session: &SessionConfig,
    primary_limit: usize,
) -> Result<(ChoiceStream, ChoiceStream, Sampler<'a>), ProtocolError> {
    if session.rounds == 0 {
        return Err(ProtocolError::NoRounds);
    }
    session.alice.validate(primary_limit)?;
    session.bob.validate(primary_limit)?;
    let eve = match session.eve {
        Some(id) if id >= BASIS_COUNT => return Err(ProtocolError::BadBasis(id)),
        Some(id) => Some(config.basis(id)),
        None => None,
    };
    Ok((
        ChoiceStream::new(&session.alice, Party::Alice),
        ChoiceStream::new(&session.bob, Party::Bob),
        Sampler {
            config,
            rng: ChaCha8Rng::seed_from_u64(session.seed),
            eve,
        },
    ))
}

pub fn run_naive_session(config: &WittingConfig, session: &SessionConfig) -> Result<SessionTranscript, ProtocolError> {
    let (mut alice, mut bob, mut sampler) = prepare(config, session, BASIS_COUNT)?;
    let mut channel = ClassicalChannel::default();
    let mut rounds = Vec::with_capacity(session.rounds);
    for round in 0..session.rounds {
        let a = alice.primary(BASIS_COUNT);
        let b = bob.primary(BASIS_COUNT);
        channel.send(Message::Basis {
            round,
            from: Party::Alice,
            basis: a,
        });
        channel.send(Message::Basis {
            round,
            from: Party::Bob,
            basis: b,
        });
        let (ab, bb) = (config.basis(a), config.basis(b));
        let joint = match sampler.eve {
            Some(e) => intercept_resend_distribution(config, ab, bb, e),
            None => joint_distribution(config, ab, bb, true),
        };
        let (x, y) = joint.sample(&mut sampler.rng);
        let sifted = a == b;
        rounds.push(RoundRecord {
            round,
            alice_state: None,
            alice_basis: a,
            bob_state: None,
            bob_basis: b,
            alice_outcome: x as u8,
            bob_outcome: y as u8,
            sifted,
            matched: sifted && x == y,
        });
    }
    Ok(SessionTranscript::finish(Protocol::Naive, rounds, channel, [0; 3]))
}

pub fn run_two_step_session(
    config: &WittingConfig,
    session: &SessionConfig,
) -> Result<SessionTranscript, ProtocolError> {
    let (mut alice, mut bob, mut sampler) = prepare(config, session, STATE_COUNT)?;
    let mut channel = ClassicalChannel::default();
    let mut rounds = Vec::with_capacity(session.rounds);
    let (mut same_state, mut same_both) = (0, 0);
    for round in 0..session.rounds {
        let sa = Card::from_index(alice.primary(STATE_COUNT));
        let sb = Card::from_index(bob.primary(STATE_COUNT));
        let a = config.bases_containing(sa)[alice.secondary(4)];
        let b = config.bases_containing(sb)[bob.secondary(4)];
        channel.send(Message::Basis {
            round,
            from: Party::Alice,
            basis: a,
        });
        channel.send(Message::Basis {
            round,
            from: Party::Bob,
            basis: b,
        });
        let (x, y) = sampler.two_step_round((sa, config.basis(a)), (sb, config.basis(b)));
        let sifted = a == b;
        if sa == sb {
            same_state += 1;
            if sifted {
                same_both += 1;
            }
        }
        rounds.push(RoundRecord {
            round,
            alice_state: Some(sa),
            alice_basis: a,
            bob_state: Some(sb),
            bob_basis: b,
            alice_outcome: x,
            bob_outcome: y,
            sifted,
            matched: sifted && x == y,
        });
    }
    Ok(SessionTranscript::finish(
        Protocol::TwoStep,
        rounds,
        channel,
        [same_state, same_both, 0],
    ))
}

pub fn run_key_agreement(config: &WittingConfig, session: &SessionConfig) -> Result<SessionTranscript, ProtocolError> {
    let (mut alice, mut bob, mut sampler) = prepare(config, session, STATE_COUNT)?;
    let mut channel = ClassicalChannel::default();
    let mut rounds = Vec::with_capacity(session.rounds);
    let (mut same_state, mut orthogonal) = (0, 0);
    for round in 0..session.rounds {
        let sa = Card::from_index(alice.primary(STATE_COUNT));
        let sb = Card::from_index(bob.primary(STATE_COUNT));
        // Fallback tetrads for rounds without a common one; drawn every round
        // to keep the choice streams aligned.
        let own_a = config.bases_containing(sa)[alice.secondary(4)];
        let own_b = config.bases_containing(sb)[bob.secondary(4)];
        channel.send(Message::State {
            round,
            from: Party::Alice,
            card: sa,
        });
        channel.send(Message::State {
            round,
            from: Party::Bob,
            card: sb,
        });
        let common = common_basis(config, sa, sb);
        let (a, b) = common.map_or((own_a, own_b), |id| (id, id));
        let (x, y) = sampler.two_step_round((sa, config.basis(a)), (sb, config.basis(b)));
        let sifted = common.is_some();
        if sa == sb {
            same_state += 1;
        } else if sifted {
            orthogonal += 1;
        }
        rounds.push(RoundRecord {
            round,
            alice_state: Some(sa),
            alice_basis: a,
            bob_state: Some(sb),
            bob_basis: b,
            alice_outcome: x,
            bob_outcome: y,
            sifted,
            matched: sifted && x == y,
        });
    }
    Ok(SessionTranscript::finish(
        Protocol::KeyAgreement,
        rounds,
        channel,
        [same_state, 0, orthogonal],
    ))
}

pub fn run_session(
    config: &WittingConfig,
    protocol: Protocol,
    session: &SessionConfig,
) -> Result<SessionTranscript, ProtocolError> {
    match protocol {
        Protocol::Naive => run_naive_session(config, session),
        Protocol::TwoStep => run_two_step_session(config, session),
        Protocol::KeyAgreement => run_key_agreement(config, session),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub sifted: usize,
    pub mismatches: usize,
}

/// Every sifted round must carry identical outcomes; any disagreement is an
/// error carrying the count.
pub fn contextual_agreement_check(transcripts: &[SessionTranscript]) -> Result<AgreementReport, ProtocolError> {
    let sifted: usize = transcripts.iter().map(|t| t.stats.sifted).sum();
    let mismatches = transcripts
        .iter()
        .flat_map(|t| &t.rounds)
        .filter(|r| r.sifted && r.alice_outcome != r.bob_outcome)
        .count();
    if mismatches > 0 {
        return Err(ProtocolError::Mismatch { sifted, mismatches });
    }
    Ok(AgreementReport { sifted, mismatches })
}

/// Runs every protocol variant without an eavesdropper and checks agreement
/// on all sifted rounds.
pub fn run_agreement_check(config: &WittingConfig, rounds: usize, seed: u64) -> Result<AgreementReport, ProtocolError> {
    if rounds == 0 {
        return Ok(AgreementReport {
            sifted: 0,
            mismatches: 0,
        });
    }
    let session = SessionConfig {
        rounds,
        alice: PartyPolicy::uniform(seed),
        bob: PartyPolicy::uniform(seed.wrapping_add(1)),
        eve: None,
        seed,
    };
    let transcripts = [Protocol::Naive, Protocol::TwoStep, Protocol::KeyAgreement]
        .map(|p| run_session(config, p, &session))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    contextual_agreement_check(&transcripts)
}

/// Exact joint outcome distribution of a two-step round where Alice probes
/// `alice_probe` and Bob `bob_probe`, both completing in `basis`. Only
/// public information enters, so this is what an observer of the channel
/// can know about the key symbol.
pub fn two_step_key_distribution(
    config: &WittingConfig,
    basis: &Basis,
    alice_probe: Card,
    bob_probe: Card,
) -> Option<JointDistribution> {
    let pa = basis.position(alice_probe)?;
    let pb = basis.position(bob_probe)?;
    let alice_vectors = Frame::Direct.basis_vectors(config, basis);
    let bob_vectors = Frame::Conjugated.basis_vectors(config, basis);
    let mut alice = [ExactRational::from_integer(0); 4];
    for j in 0..4 {
        let d = two_step_distribution(&QuquartState::basis(j), &alice_vectors, pa);
        for (acc, p) in alice.iter_mut().zip(d) {
            *acc += p * ExactRational::new(1, 4);
        }
    }
    let p = std::array::from_fn(|a| {
        let bob_state = partner_state(&QuquartState::new(alice_vectors[a]));
        two_step_distribution(&bob_state, &bob_vectors, pb).map(|q| alice[a] * q)
    });
    Some(JointDistribution { p })
}
