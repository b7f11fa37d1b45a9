//! Square matrices over `Z[w]` carrying a power-of-three denominator.

use std::fmt;

use crate::arith::{EisensteinInt, UNITS};

/// The matrix `entries / 3^denom_exp`, kept reduced: when `denom_exp > 0`,
/// not every entry is divisible by 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaledMatrix<const N: usize> {
    entries: [[EisensteinInt; N]; N],
    denom_exp: u32,
}

impl<const N: usize> ScaledMatrix<N> {
    pub fn new(entries: [[EisensteinInt; N]; N], denom_exp: u32) -> Self {
        let mut m = Self { entries, denom_exp };
        m.reduce();
        m
    }

    pub fn identity() -> Self {
        let mut entries = [[EisensteinInt::ZERO; N]; N];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = EisensteinInt::ONE;
        }
        Self { entries, denom_exp: 0 }
    }

    pub fn entries(&self) -> &[[EisensteinInt; N]; N] {
        &self.entries
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn entry(&self, i: usize, j: usize) -> EisensteinInt {
        self.entries[i][j]
    }

    fn reduce(&mut self) {
        while self.denom_exp > 0 && self.entries.iter().flatten().all(|e| e.divisible_by_three()) {
            for e in self.entries.iter_mut().flatten() {
                *e = e.div_exact(3).expect("checked divisibility");
            }
            self.denom_exp -= 1;
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = [[EisensteinInt::ZERO; N]; N];
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    out[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        Self::new(out, self.denom_exp + rhs.denom_exp)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = [[EisensteinInt::ZERO; N]; N];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out[j][i] = e.conj();
            }
        }
        Self {
            entries: out,
            denom_exp: self.denom_exp,
        }
    }

    pub fn scale_unit(&self, u: EisensteinInt) -> Self {
        debug_assert!(u.is_unit());
        Self {
            entries: self.entries.map(|row| row.map(|e| u * e)),
            denom_exp: self.denom_exp,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Is this `u * I` for some unit `u`?
    pub fn is_unit_scalar(&self) -> bool {
        UNITS.iter().any(|u| *self == Self::identity().scale_unit(*u))
    }

    /// Exact unitarity: `M^dagger M = 9^d I` for the integral part `M`.
    pub fn is_unitary(&self) -> bool {
        self.adjoint().mul(self).is_identity()
    }

    /// Product of the integral part with a column vector; the true image is
    /// the result divided by `3^denom_exp`.
    pub fn apply_integral(&self, v: &[EisensteinInt; N]) -> [EisensteinInt; N] {
        let mut out = [EisensteinInt::ZERO; N];
        for (o, row) in out.iter_mut().zip(&self.entries) {
            *o = row.iter().zip(v).map(|(a, b)| *a * *b).sum();
        }
        out
    }

    /// Image of `v`, provided it lies in `Z[w]^N` (the integral product is
    /// divisible by `3^denom_exp`).
    pub fn apply(&self, v: &[EisensteinInt; N]) -> Option<[EisensteinInt; N]> {
        let div = 3i64.pow(self.denom_exp);
        let w = self.apply_integral(v);
        let mut out = [EisensteinInt::ZERO; N];
        for (o, c) in out.iter_mut().zip(w) {
            *o = c.div_exact(div)?;
        }
        Some(out)
    }

    /// Determinant as `(numerator, exponent)` meaning `numerator / 3^exponent`.
    pub fn determinant(&self) -> (EisensteinInt, u32) {
        let rows: Vec<Vec<EisensteinInt>> = self.entries.iter().map(|r| r.to_vec()).collect();
        (laplace_det(&rows), self.denom_exp * N as u32)
    }

    /// Does the determinant equal the given exact value?
    pub fn determinant_equals(&self, value: EisensteinInt) -> bool {
        let (num, exp) = self.determinant();
        num == value.scale(3i64.pow(exp))
    }

    /// Canonical representative under multiplication by the given units.
    pub fn canonical_under(&self, scalars: &[EisensteinInt]) -> Self {
        scalars
            .iter()
            .map(|u| self.scale_unit(*u))
            .min()
            .expect("nonempty scalar set")
    }
}

fn laplace_det(m: &[Vec<EisensteinInt>]) -> EisensteinInt {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = EisensteinInt::ZERO;
    for (j, lead) in m[0].iter().enumerate() {
        if lead.is_zero() {
            continue;
        }
        let minor: Vec<Vec<EisensteinInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, e)| *e)
                    .collect()
            })
            .collect();
        let term = *lead * laplace_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

impl<const N: usize> fmt::Debug for ScaledMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "1/3^{} *", self.denom_exp)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: fn(i64, i64) -> EisensteinInt = EisensteinInt::new;

    #[test]
    fn reduction_divides_common_threes() {
        let mut entries = [[EisensteinInt::ZERO; 2]; 2];
        entries[0][0] = E(3, 0);
        entries[1][1] = E(0, 3);
        let m = ScaledMatrix::new(entries, 1);
        assert_eq!(m.denom_exp(), 0);
        assert_eq!(m.entry(1, 1), EisensteinInt::OMEGA);
    }

    #[test]
    fn determinant_of_diagonal() {
        let mut entries = [[EisensteinInt::ZERO; 3]; 3];
        entries[0][0] = EisensteinInt::OMEGA;
        entries[1][1] = EisensteinInt::OMEGA;
        entries[2][2] = EisensteinInt::OMEGA;
        let m = ScaledMatrix::new(entries, 0);
        assert!(m.determinant_equals(EisensteinInt::ONE));
        assert!(m.is_unit_scalar());
        assert!(m.is_unitary());
    }

    #[test]
    fn apply_requires_divisibility() {
        let mut entries = [[EisensteinInt::ZERO; 2]; 2];
        entries[0][0] = E(1, 0);
        entries[1][1] = E(2, 0);
        let m = ScaledMatrix::new(entries, 1);
        assert_eq!(m.apply(&[E(3, 0), E(0, 0)]), Some([E(1, 0), E(0, 0)]));
        assert_eq!(m.apply(&[E(1, 0), E(0, 0)]), None);
    }
}
