use std::collections::BTreeSet;

use num_complex::Complex64;
use witting_core::arith::{EisVec4, EisensteinInt};
use witting_core::{Card, WittingConfig};

fn omega_pow(k: usize) -> EisensteinInt {
    [EisensteinInt::ONE, EisensteinInt::OMEGA, EisensteinInt::OMEGA_SQ][k % 3]
}

/// The 240 vertices from their published closed form, with upper and lower
/// signs taken together.
fn closed_form_vertices() -> BTreeSet<EisVec4> {
    let z = EisensteinInt::ZERO;
    let mut out = BTreeSet::new();
    for sign in [1i64, -1] {
        let s = |x: EisensteinInt, k: i64| x.scale(sign * k);
        for (mu, nu, la) in (0..27).map(|i| (i % 3, i / 3 % 3, i / 9)) {
            let (m, n, l) = (omega_pow(mu), omega_pow(nu), omega_pow(la));
            out.insert([z, s(m, 1), s(n, -1), s(l, 1)]);
            out.insert([s(m, -1), z, s(n, 1), s(l, 1)]);
            out.insert([s(m, 1), s(n, -1), z, s(l, 1)]);
            out.insert([s(m, -1), s(n, -1), s(l, -1), z]);
        }
        for la in 0..3 {
            for k in 0..4 {
                let mut v = [z; 4];
                v[k] = s(EisensteinInt::I_SQRT3 * omega_pow(la), 1);
                out.insert(v);
            }
        }
    }
    out
}

#[test]
fn expanded_vertices_match_closed_form() {
    let oracle = closed_form_vertices();
    assert_eq!(oracle.len(), 240);
    let built: BTreeSet<EisVec4> = WittingConfig::shared().expand_vertices().unwrap().into_iter().collect();
    assert_eq!(built, oracle);
}

fn embed(v: &EisVec4) -> [Complex64; 4] {
    let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    v.map(|x| Complex64::new(x.a as f64, 0.0) + w * x.b as f64)
}

#[test]
fn float_oracle_spectrum() {
    let cfg = WittingConfig::shared();
    let mut zeros = 0;
    let mut thirds = 0;
    for s in Card::all() {
        for t in Card::all().filter(|t| *t > s) {
            let (x, y) = (embed(cfg.vector(s)), embed(cfg.vector(t)));
            let ip: Complex64 = x.iter().zip(&y).map(|(a, b)| a.conj() * b).sum();
            let p = ip.norm_sqr() / 9.0;
            if p < 1e-9 {
                zeros += 1;
            } else {
                assert!((p - 1.0 / 3.0).abs() < 1e-9, "{s} {t} {p}");
                thirds += 1;
            }
        }
    }
    // 240 orthogonal pairs (the graph edges), the rest at 1/3
    assert_eq!((zeros, thirds), (240, 540));
}

#[test]
fn each_state_lies_in_four_bases_covering_its_neighbours() {
    let cfg = WittingConfig::shared();
    for c in Card::all() {
        let ids = cfg.bases_containing(c);
        let covered: BTreeSet<Card> = ids
            .iter()
            .flat_map(|id| cfg.basis(*id).members)
            .filter(|m| *m != c)
            .collect();
        assert_eq!(covered.len(), 12);
        assert!(covered.iter().all(|m| cfg.graph().adjacent(c, *m)));
    }
}
