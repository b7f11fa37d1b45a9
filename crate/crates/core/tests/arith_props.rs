use num_complex::Complex64;
use proptest::prelude::*;
use witting_core::arith::{canonical_ray, EisensteinInt, ExactRational, UNITS};

// Keeps products of three factors well inside the magnitude bound.
const BOUND: i64 = 60;

fn eis() -> impl Strategy<Value = EisensteinInt> {
    (-BOUND..=BOUND, -BOUND..=BOUND).prop_map(|(a, b)| EisensteinInt::new(a, b))
}

/// Independent float oracle: `a + b w` with `w = (-1 + i sqrt 3) / 2`.
fn embed(x: EisensteinInt) -> Complex64 {
    let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    Complex64::new(x.a as f64, 0.0) + w * x.b as f64
}

fn close(x: EisensteinInt, z: Complex64) -> bool {
    (embed(x) - z).norm() < 1e-9
}

proptest! {
    #[test]
    fn ring_laws(x in eis(), y in eis(), z in eis()) {
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!(x - x, EisensteinInt::ZERO);
        prop_assert_eq!(x * EisensteinInt::ONE, x);
    }

    #[test]
    fn conjugation_is_involutive_homomorphism(x in eis(), y in eis()) {
        prop_assert_eq!(x.conj().conj(), x);
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
        prop_assert_eq!((x + y).conj(), x.conj() + y.conj());
    }

    #[test]
    fn norm_is_multiplicative_and_definite(x in eis(), y in eis()) {
        prop_assert_eq!((x * y).norm_sq(), x.norm_sq() * y.norm_sq());
        prop_assert_eq!(x * x.conj(), EisensteinInt::from_int(x.norm_sq()));
        prop_assert!(x.norm_sq() >= 0);
        prop_assert_eq!(x.norm_sq() == 0, x.is_zero());
    }

    #[test]
    fn embedding_commutes_with_operations(x in eis(), y in eis()) {
        prop_assert!(close(x * y, embed(x) * embed(y)));
        prop_assert!(close(x + y, embed(x) + embed(y)));
        prop_assert!(close(x - y, embed(x) - embed(y)));
        prop_assert!(close(x.conj(), embed(x).conj()));
        prop_assert!((x.norm_sq() as f64 - embed(x).norm_sqr()).abs() < 1e-9);
        let (re, im) = x.to_complex();
        prop_assert!((Complex64::new(re, im) - embed(x)).norm() < 1e-9);
    }

    #[test]
    fn canonical_ray_is_phase_invariant(v in prop::array::uniform4(eis()), k in 0usize..6) {
        prop_assume!(v.iter().any(|c| !c.is_zero()));
        let rotated = v.map(|c| c * UNITS[k]);
        prop_assert_eq!(canonical_ray(&rotated), canonical_ray(&v));
    }

    #[test]
    fn rationals_stay_reduced(n in -1000i64..1000, d in 1i64..1000) {
        let r = ExactRational::new(n, d);
        prop_assert!(*r.denom() > 0);
        prop_assert_eq!(num_integer::gcd(*r.numer(), *r.denom()), 1);
    }
}

#[test]
fn units_match_float_oracle() {
    for u in UNITS {
        assert!((embed(u).norm() - 1.0).abs() < 1e-12);
    }
    assert!(close(
        EisensteinInt::I_SQRT3 * EisensteinInt::I_SQRT3,
        Complex64::new(-3.0, 0.0)
    ));
    assert!(close(
        EisensteinInt::I_SQRT3.conj(),
        Complex64::new(0.0, -(3f64.sqrt()))
    ));
}
