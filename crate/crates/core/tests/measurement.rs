use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use witting_core::arith::EisVec4;
use witting_core::measure::{
    intercept_resend_distribution, joint_distribution, one_step_distribution, two_step_measure, Frame, QuquartState,
};
use witting_core::{Card, WittingConfig};

fn embed(v: &EisVec4) -> [Complex64; 4] {
    let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    v.map(|x| Complex64::new(x.a as f64, 0.0) + w * x.b as f64)
}

fn to_f64(r: num_rational::Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Float oracle for the pair `(1/2) sum_j |jj>`: Alice projects on `x`, Bob on
/// `conj(y)` (he reads the conjugated table).
fn pair_probability(x: &EisVec4, y: &EisVec4) -> f64 {
    let (x, y) = (embed(x), embed(y));
    let amp: Complex64 = (0..4).map(|j| x[j].conj() * y[j]).sum::<Complex64>() / 2.0;
    let nx: f64 = x.iter().map(|c| c.norm_sqr()).sum();
    let ny: f64 = y.iter().map(|c| c.norm_sqr()).sum();
    amp.norm_sqr() / (nx * ny)
}

#[test]
fn joint_distribution_matches_float_oracle() {
    let cfg = WittingConfig::shared();
    for a in cfg.bases() {
        for b in cfg.bases() {
            let exact = joint_distribution(cfg, a, b, true);
            for i in 0..4 {
                for j in 0..4 {
                    let oracle = pair_probability(cfg.vector(a.members[i]), cfg.vector(b.members[j]));
                    assert!(
                        (to_f64(exact.p[i][j]) - oracle).abs() < 1e-12,
                        "{} {} {i} {j}",
                        a.id,
                        b.id
                    );
                }
            }
        }
    }
}

#[test]
fn intercept_resend_matches_float_oracle() {
    let cfg = WittingConfig::shared();
    for eve in cfg.bases().iter().step_by(7) {
        for a in cfg.bases().iter().step_by(3) {
            let exact = intercept_resend_distribution(cfg, a, a, eve);
            for i in 0..4 {
                for j in 0..4 {
                    // Alice and Eve share the pair; Bob then measures Eve's resent state.
                    let oracle: f64 = (0..4)
                        .map(|k| {
                            let ae = pair_probability(cfg.vector(a.members[i]), cfg.vector(eve.members[k]));
                            let (e, bv) = (embed(cfg.vector(eve.members[k])), embed(cfg.vector(a.members[j])));
                            let ip: Complex64 = (0..4).map(|t| bv[t].conj() * e[t]).sum();
                            ae * ip.norm_sqr() / 9.0
                        })
                        .sum();
                    assert!((to_f64(exact.p[i][j]) - oracle).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn two_step_sampling_passes_chi_square() {
    // df = 3, 0.1% critical value
    const CRITICAL: f64 = 16.27;
    const N: usize = 100_000;
    let cfg = WittingConfig::shared();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cases: [(&str, &str, usize); 3] = [("S2", "H3", 1), ("C1", "S5", 2), ("D7", "D7", 0)];
    for (state, probe, k) in cases {
        let state: Card = state.parse().unwrap();
        let probe: Card = probe.parse().unwrap();
        let psi = QuquartState::new(*cfg.vector(state));
        let basis = cfg.basis(cfg.bases_containing(probe)[k]);
        let expected = one_step_distribution(&psi, &Frame::Direct.basis_vectors(cfg, basis));
        let mut counts = [0usize; 4];
        for _ in 0..N {
            let (i, _) = two_step_measure(&mut rng, cfg, &psi, probe, basis, Frame::Direct).unwrap();
            counts[i] += 1;
        }
        let mut chi2 = 0.0;
        for (c, p) in counts.iter().zip(expected) {
            let e = to_f64(p) * N as f64;
            if e == 0.0 {
                assert_eq!(*c, 0);
            } else {
                chi2 += (*c as f64 - e).powi(2) / e;
            }
        }
        assert!(chi2 < CRITICAL, "{state} via {probe}: chi2 = {chi2}, counts {counts:?}");
    }
}
