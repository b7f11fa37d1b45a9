//! Exact arithmetic over the Eisenstein integers `Z[w]`, `w = e^{2 pi i/3}`,
//! and the exact rationals used for every probability in the crate.
//!
//! All amplitudes of the configuration are Eisenstein integers once the
//! common `1/sqrt(3)` factor is dropped, so nothing here needs floating point
//! or arbitrary precision. Arithmetic is checked: any result whose components
//! leave `[-MAX_MAGNITUDE, MAX_MAGNITUDE]` aborts loudly.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest component magnitude any value in this crate is allowed to reach.
pub const MAX_MAGNITUDE: i64 = 1 << 20;

/// Exact rational number in reduced form with positive denominator.
pub type ExactRational = Ratio<i64>;

/// Formats a rational as `"num/den"`, including integers (`"1/1"`).
pub fn rational_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `a + b w` with `w^2 = -1 - w`.
///
/// The derived `Ord` is lexicographic on `(a, b)`; projective canonicalization
/// relies on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

#[inline]
fn bounded(v: Option<i64>) -> i64 {
    match v {
        Some(x) if (-MAX_MAGNITUDE..=MAX_MAGNITUDE).contains(&x) => x,
        _ => panic!("Eisenstein integer component exceeds magnitude bound 2^20"),
    }
}

impl EisensteinInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    /// The primitive cube root of unity `w`.
    pub const OMEGA: Self = Self::new(0, 1);
    /// `w^2 = conj(w) = -1 - w`.
    pub const OMEGA_SQ: Self = Self::new(-1, -1);
    /// `i sqrt(3) = 1 + 2w`.
    pub const I_SQRT3: Self = Self::new(1, 2);

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        Self { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Complex conjugate: `conj(a + b w) = (a - b) - b w`.
    pub fn conj(self) -> Self {
        Self::new(bounded(self.a.checked_sub(self.b)), bounded(self.b.checked_neg()))
    }

    /// `|x|^2 = a^2 - ab + b^2`.
    pub fn norm_sq(self) -> i64 {
        let (a, b) = (self.a as i128, self.b as i128);
        let n = a * a - a * b + b * b;
        i64::try_from(n).expect("norm overflow")
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(bounded(self.a.checked_mul(k)), bounded(self.b.checked_mul(k)))
    }

    /// Divides by an ordinary integer when both components are divisible.
    pub fn div_exact(self, k: i64) -> Option<Self> {
        if self.a % k == 0 && self.b % k == 0 {
            Some(Self::new(self.a / k, self.b / k))
        } else {
            None
        }
    }

    /// Divisibility by 3 in `Z[w]`, i.e. membership in `3 Z[w]`.
    pub fn divisible_by_three(self) -> bool {
        self.a % 3 == 0 && self.b % 3 == 0
    }

    /// Embedding into the complex plane as `(re, im)`.
    pub fn to_complex(self) -> (f64, f64) {
        let half_sqrt3 = 3f64.sqrt() / 2.0;
        (self.a as f64 - 0.5 * self.b as f64, half_sqrt3 * self.b as f64)
    }

    /// Is this one of the six units?
    pub fn is_unit(self) -> bool {
        self.norm_sq() == 1
    }
}

/// The unit group `{1, -1, w, -w, w^2, -w^2}` in this fixed order.
pub const UNITS: [EisensteinInt; 6] = [
    EisensteinInt::new(1, 0),
    EisensteinInt::new(-1, 0),
    EisensteinInt::new(0, 1),
    EisensteinInt::new(0, -1),
    EisensteinInt::new(-1, -1),
    EisensteinInt::new(1, 1),
];

pub fn units() -> [EisensteinInt; 6] {
    UNITS
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(bounded(self.a.checked_add(rhs.a)), bounded(self.b.checked_add(rhs.b)))
    }
}

impl AddAssign for EisensteinInt {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(bounded(self.a.checked_sub(rhs.a)), bounded(self.b.checked_sub(rhs.b)))
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(bounded(self.a.checked_neg()), bounded(self.b.checked_neg()))
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    /// `(a + b w)(c + d w) = (ac - bd) + (ad + bc - bd) w`.
    fn mul(self, rhs: Self) -> Self {
        let (a, b, c, d) = (self.a as i128, self.b as i128, rhs.a as i128, rhs.b as i128);
        let re = a * c - b * d;
        let om = a * d + b * c - b * d;
        Self::new(bounded(i64::try_from(re).ok()), bounded(i64::try_from(om).ok()))
    }
}

impl std::iter::Sum for EisensteinInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}w"),
            (a, b) if b < 0 => write!(f, "{a}-{}w", -b),
            (a, b) => write!(f, "{a}+{b}w"),
        }
    }
}

impl Serialize for EisensteinInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl<'de> Deserialize<'de> for EisensteinInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[i64; 2]>::deserialize(d)?;
        Ok(Self::new(a, b))
    }
}

/// A vector in `Z[w]^4`.
pub type EisVec4 = [EisensteinInt; 4];

/// Hermitian inner product `sum_i conj(x_i) y_i`.
pub fn inner<const N: usize>(x: &[EisensteinInt; N], y: &[EisensteinInt; N]) -> EisensteinInt {
    x.iter().zip(y).map(|(p, q)| p.conj() * *q).sum()
}

pub fn vec_norm_sq<const N: usize>(x: &[EisensteinInt; N]) -> i64 {
    x.iter().map(|c| c.norm_sq()).sum()
}

pub fn vec_conj<const N: usize>(x: &[EisensteinInt; N]) -> [EisensteinInt; N] {
    x.map(EisensteinInt::conj)
}

pub fn vec_scale<const N: usize>(x: &[EisensteinInt; N], u: EisensteinInt) -> [EisensteinInt; N] {
    x.map(|c| u * c)
}

/// Canonical representative of the ray through `v` under the six units: the
/// multiple whose first nonzero coordinate is smallest in `(a, b)` order.
/// The zero vector is returned unchanged.
pub fn canonical_ray<const N: usize>(v: &[EisensteinInt; N]) -> [EisensteinInt; N] {
    let Some(lead) = v.iter().copied().find(|c| !c.is_zero()) else {
        return *v;
    };
    let unit = UNITS.iter().copied().min_by_key(|u| *u * lead).expect("six units");
    vec_scale(v, unit)
}

/// Probability `|<x|y>|^2 / (|x|^2 |y|^2)` as an exact rational.
pub fn born_probability<const N: usize>(x: &[EisensteinInt; N], y: &[EisensteinInt; N]) -> ExactRational {
    let num = inner(x, y).norm_sq();
    let den = vec_norm_sq(x)
        .checked_mul(vec_norm_sq(y))
        .expect("norm product overflow");
    assert!(den > 0, "Born probability of a zero vector");
    ExactRational::new(num, den)
}

/// Least common multiple of the denominators, for exact cumulative sampling.
pub fn common_denominator(ps: &[ExactRational]) -> i64 {
    ps.iter().fold(1i64, |acc, p| acc.lcm(p.denom()))
}
