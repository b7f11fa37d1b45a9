//! Exact Born-rule computations for the maximally entangled ququart pair
//! `(|00> + |11> + |22> + |33>) / 2`.
//!
//! Alice reads basis labels with the card table. Bob, and an eavesdropper
//! acting on Bob's half, may read them with the complex-conjugated table
//! ([`Frame::Conjugated`]), in which label `c` denotes the vector `conj(v_c)`.
//! With that convention Alice and Bob measuring "the same basis" always agree.

use rand::Rng;
use thiserror::Error;

use crate::arith::{
    born_probability, common_denominator, inner, vec_conj, vec_norm_sq, vec_scale, EisVec4, EisensteinInt,
    ExactRational,
};
use crate::config::{Basis, Card, WittingConfig};
use crate::matrix::ScaledMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error("probe {probe} is not a member of basis {basis}")]
    ProbeNotInBasis { probe: Card, basis: usize },
    #[error("probe vector must have squared norm 1 or 3, got {0}")]
    ProbeNorm(i64),
}

/// How a party turns card labels into vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    Direct,
    Conjugated,
}

impl Frame {
    pub fn vector(self, config: &WittingConfig, card: Card) -> EisVec4 {
        let v = config.vector(card);
        match self {
            Frame::Direct => *v,
            Frame::Conjugated => vec_conj(v),
        }
    }

    pub fn basis_vectors(self, config: &WittingConfig, basis: &Basis) -> [EisVec4; 4] {
        basis.members.map(|c| self.vector(config, c))
    }
}

fn zero() -> ExactRational {
    ExactRational::from_integer(0)
}

/// Alice outcome x Bob outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    pub p: [[ExactRational; 4]; 4],
}

impl JointDistribution {
    pub fn total(&self) -> ExactRational {
        self.p.iter().flatten().copied().sum()
    }

    pub fn alice_marginal(&self) -> [ExactRational; 4] {
        self.p.map(|row| row.iter().copied().sum())
    }

    pub fn bob_marginal(&self) -> [ExactRational; 4] {
        std::array::from_fn(|b| (0..4).map(|a| self.p[a][b]).sum())
    }

    /// Probability that the two outcome indices differ.
    pub fn mismatch(&self) -> ExactRational {
        let diag: ExactRational = (0..4).map(|i| self.p[i][i]).sum();
        ExactRational::from_integer(1) - diag
    }

    /// Is this `I / 4`?
    pub fn is_perfectly_correlated(&self) -> bool {
        let quarter = ExactRational::new(1, 4);
        (0..4).all(|a| (0..4).all(|b| self.p[a][b] == if a == b { quarter } else { zero() }))
    }

    /// Draws `(alice, bob)` against the exact cumulative sums.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (usize, usize) {
        let flat: Vec<ExactRational> = self.p.iter().flatten().copied().collect();
        let k = sample_index(rng, &flat);
        (k / 4, k % 4)
    }
}

/// Samples an index with exactly the given rational weights (which must sum
/// to 1) by drawing a uniform integer below their common denominator.
pub fn sample_index<R: Rng + ?Sized>(rng: &mut R, probs: &[ExactRational]) -> usize {
    let den = common_denominator(probs);
    let draw = rng.gen_range(0..den);
    let mut acc = 0i64;
    for (i, p) in probs.iter().enumerate() {
        acc += p.numer() * (den / p.denom());
        if draw < acc {
            return i;
        }
    }
    panic!("probabilities do not sum to one");
}

/// `|(<x| (x) <y|) Sigma|^2 = |sum_j x_j y_j|^2 / (4 |x|^2 |y|^2)`.
fn pair_probability(x: &EisVec4, y: &EisVec4) -> ExactRational {
    let amp: EisensteinInt = x.iter().zip(y).map(|(a, b)| *a * *b).sum();
    ExactRational::new(amp.norm_sq(), 4 * vec_norm_sq(x) * vec_norm_sq(y))
}

/// Joint outcome distribution when Alice measures `a_basis` and Bob measures
/// `b_basis`, reading Bob's labels in the conjugated table when
/// `b_conjugated` is set.
pub fn joint_distribution(
    config: &WittingConfig,
    a_basis: &Basis,
    b_basis: &Basis,
    b_conjugated: bool,
) -> JointDistribution {
    let bob_frame = if b_conjugated { Frame::Conjugated } else { Frame::Direct };
    let alice = Frame::Direct.basis_vectors(config, a_basis);
    let bob = bob_frame.basis_vectors(config, b_basis);
    JointDistribution {
        p: alice.map(|x| bob.map(|y| pair_probability(&x, &y))),
    }
}

/// Joint distribution when an eavesdropper intercepts Bob's half, measures it
/// in `eve_basis` and forwards the eigenstate she observed. Bob and Eve both
/// read labels in the conjugated table.
pub fn intercept_resend_distribution(
    config: &WittingConfig,
    a_basis: &Basis,
    b_basis: &Basis,
    eve_basis: &Basis,
) -> JointDistribution {
    let alice_eve = joint_distribution(config, a_basis, eve_basis, true);
    let eve = Frame::Conjugated.basis_vectors(config, eve_basis);
    let bob = Frame::Conjugated.basis_vectors(config, b_basis);
    let resend: [[ExactRational; 4]; 4] = eve.map(|e| bob.map(|b| born_probability(&b, &e)));
    let mut p = [[zero(); 4]; 4];
    for (a, row) in p.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| alice_eve.p[a][k] * resend[k][b]).sum();
        }
    }
    JointDistribution { p }
}

/// A single-ququart pure state, kept unnormalized together with its exact
/// squared norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuquartState {
    amplitudes: EisVec4,
    norm_sq: i64,
}

impl QuquartState {
    pub fn new(amplitudes: EisVec4) -> Self {
        let norm_sq = vec_norm_sq(&amplitudes);
        assert!(norm_sq > 0, "zero vector is not a state");
        Self { amplitudes, norm_sq }
    }

    /// Computational basis state `|j>`.
    pub fn basis(j: usize) -> Self {
        let mut v = [EisensteinInt::ZERO; 4];
        v[j] = EisensteinInt::ONE;
        Self::new(v)
    }

    pub fn amplitudes(&self) -> &EisVec4 {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> i64 {
        self.norm_sq
    }

    /// `|<v|self>|^2 / |v|^2`.
    pub fn probability(&self, v: &EisVec4) -> ExactRational {
        born_probability(v, &self.amplitudes)
    }

    /// Rescales by a common integer factor when possible, keeping components small.
    fn tidy(mut self) -> Self {
        loop {
            let g = self.amplitudes.iter().fold(0i64, |g, c| {
                num_integer::Integer::gcd(&g, &num_integer::Integer::gcd(&c.a, &c.b))
            });
            if g <= 1 {
                return self;
            }
            self.amplitudes = self.amplitudes.map(|c| c.div_exact(g).expect("gcd divides"));
            self.norm_sq /= g * g;
        }
    }
}

/// Result of coupling the ququart to an ancilla through
/// `T_psi = |psi><psi| (x) X + (1 - |psi><psi|) (x) 1` and reading the ancilla.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayedQuery {
    /// `[P(ancilla = 0), P(ancilla = 1)]`.
    pub ancilla: [ExactRational; 2],
    /// Post-measurement state for ancilla 1 (projection onto the probe).
    pub yes: Option<QuquartState>,
    /// Post-measurement state for ancilla 0 (projection onto the complement).
    pub no: Option<QuquartState>,
}

impl DelayedQuery {
    pub fn p_yes(&self) -> ExactRational {
        self.ancilla[1]
    }
}

pub fn delayed_query_apply(state: &QuquartState, probe: &EisVec4) -> DelayedQuery {
    let overlap = inner(probe, &state.amplitudes);
    let probe_norm = vec_norm_sq(probe);
    let p_yes = state.probability(probe);
    let p_no = ExactRational::from_integer(1) - p_yes;

    let yes = (!overlap.is_zero()).then(|| QuquartState::new(vec_scale(probe, overlap)).tidy());
    let no_vec: EisVec4 = std::array::from_fn(|i| state.amplitudes[i].scale(probe_norm) - probe[i] * overlap);
    let no = no_vec
        .iter()
        .any(|c| !c.is_zero())
        .then(|| QuquartState::new(no_vec).tidy());
    DelayedQuery {
        ancilla: [p_no, p_yes],
        yes,
        no,
    }
}

/// Outcome distribution of a direct projective measurement.
pub fn one_step_distribution(state: &QuquartState, basis: &[EisVec4; 4]) -> [ExactRational; 4] {
    basis.map(|v| state.probability(&v))
}

/// Outcome distribution of the two-step procedure: a delayed query on the
/// probe, then completion of the measurement in a basis containing it.
pub fn two_step_distribution(state: &QuquartState, basis: &[EisVec4; 4], probe_pos: usize) -> [ExactRational; 4] {
    let query = delayed_query_apply(state, &basis[probe_pos]);
    let mut out = [zero(); 4];
    out[probe_pos] = query.p_yes();
    if let Some(rest) = query.no {
        let p_no = query.ancilla[0];
        for (i, v) in basis.iter().enumerate() {
            if i != probe_pos {
                out[i] = p_no * rest.probability(v);
            }
        }
    }
    out
}

/// One sampled run of the two-step procedure; returns the outcome index and
/// the post-measurement state (the basis vector found).
pub fn two_step_measure<R: Rng + ?Sized>(
    rng: &mut R,
    config: &WittingConfig,
    state: &QuquartState,
    probe: Card,
    basis: &Basis,
    frame: Frame,
) -> Result<(usize, QuquartState), MeasureError> {
    let pos = basis
        .position(probe)
        .ok_or(MeasureError::ProbeNotInBasis { probe, basis: basis.id })?;
    let vectors = frame.basis_vectors(config, basis);
    let query = delayed_query_apply(state, &vectors[pos]);
    let yes = sample_index(rng, &[query.ancilla[0], query.ancilla[1]]) == 1;
    let outcome = if yes {
        pos
    } else {
        let rest = query.no.expect("sampled branch has nonzero probability");
        let probs: Vec<ExactRational> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| if i == pos { zero() } else { rest.probability(v) })
            .collect();
        sample_index(rng, &probs)
    };
    Ok((outcome, QuquartState::new(vectors[outcome])))
}

/// Direct projective measurement, sampled.
pub fn measure<R: Rng + ?Sized>(rng: &mut R, state: &QuquartState, basis: &[EisVec4; 4]) -> (usize, QuquartState) {
    let k = sample_index(rng, &one_step_distribution(state, basis));
    (k, QuquartState::new(basis[k]))
}

/// State of the partner's half after one party of the entangled pair found
/// the vector `v`: the conjugate `conj(v)`.
pub fn partner_state(found: &QuquartState) -> QuquartState {
    QuquartState::new(vec_conj(found.amplitudes()))
}

/// Alice's reduced state is maximally mixed; averaging any measurement over
/// the four computational states reproduces it exactly.
pub fn mixed_state_components() -> [(ExactRational, QuquartState); 4] {
    std::array::from_fn(|j| (ExactRational::new(1, 4), QuquartState::basis(j)))
}

/// Gate `T_psi` on ququart (x) ancilla, 8x8 with row index `2 j + ancilla`.
pub fn delayed_query_gate(probe: &EisVec4) -> Result<ScaledMatrix<8>, MeasureError> {
    let n = vec_norm_sq(probe);
    let denom_exp = match n {
        1 => 0,
        3 => 1,
        other => return Err(MeasureError::ProbeNorm(other)),
    };
    let mut m = [[EisensteinInt::ZERO; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let proj = probe[i] * probe[j].conj();
            let ident = if i == j {
                EisensteinInt::from_int(n)
            } else {
                EisensteinInt::ZERO
            };
            // |psi><psi| (x) X
            m[2 * i][2 * j + 1] = proj;
            m[2 * i + 1][2 * j] = proj;
            // (1 - |psi><psi|) (x) 1
            m[2 * i][2 * j] = ident - proj;
            m[2 * i + 1][2 * j + 1] = ident - proj;
        }
    }
    Ok(ScaledMatrix::new(m, denom_exp))
}

/// Three-qubit Toffoli with controls on the two ququart qubits.
pub fn toffoli() -> ScaledMatrix<8> {
    let mut m = ScaledMatrix::<8>::identity().entries().to_owned();
    m.swap(6, 7);
    ScaledMatrix::new(m, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ToffoliReport {
    pub t3_is_toffoli: bool,
    pub t3_squared_is_identity: bool,
    pub t0_differs: bool,
}

impl ToffoliReport {
    pub fn passed(&self) -> bool {
        self.t3_is_toffoli && self.t3_squared_is_identity && self.t0_differs
    }
}

pub fn toffoli_special_case() -> ToffoliReport {
    let axis = |k: usize| {
        let mut v = [EisensteinInt::ZERO; 4];
        v[k] = EisensteinInt::ONE;
        v
    };
    let t3 = delayed_query_gate(&axis(3)).expect("unit probe");
    let t0 = delayed_query_gate(&axis(0)).expect("unit probe");
    ToffoliReport {
        t3_is_toffoli: t3 == toffoli(),
        t3_squared_is_identity: t3.mul(&t3).is_identity(),
        t0_differs: t0 != toffoli(),
    }
}
