//! Exact 3x3 matrix and 3-vector algebra over [`LaurentPoly`].
//!
//! Inversion goes through the adjugate: it is defined exactly when the
//! determinant is a unit monomial, which covers every matrix this crate
//! works with (their determinants are all `+-t^k`). No division ever
//! happens in a non-field ring.

use alloc::vec::Vec;
use core::fmt;

use crate::ring::{LaurentPoly, Modulus, RingError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LinalgError {
    ContextMismatch,
    /// The determinant is not a unit monomial; the matrix has no inverse
    /// over this coefficient ring.
    NonUnitDeterminant,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::ContextMismatch => write!(f, "matrix entries over mismatched rings"),
            LinalgError::NonUnitDeterminant => {
                write!(f, "determinant is not a unit monomial; matrix not invertible")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat3 {
    entries: [[LaurentPoly; 3]; 3],
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vec3 {
    coords: [LaurentPoly; 3],
}

impl Mat3 {
    /// All nine entries must share one modulus context.
    pub fn from_entries(entries: [[LaurentPoly; 3]; 3]) -> Result<Mat3, LinalgError> {
        let ctx = entries[0][0].ctx();
        if entries.iter().flatten().any(|e| e.ctx() != ctx) {
            return Err(LinalgError::ContextMismatch);
        }
        Ok(Mat3 { entries })
    }

    pub fn identity(ctx: Modulus) -> Mat3 {
        let mut m = Mat3::zero(ctx);
        for i in 0..3 {
            m.entries[i][i] = LaurentPoly::one(ctx);
        }
        m
    }

    pub fn zero(ctx: Modulus) -> Mat3 {
        let row = || {
            [
                LaurentPoly::zero(ctx),
                LaurentPoly::zero(ctx),
                LaurentPoly::zero(ctx),
            ]
        };
        Mat3 { entries: [row(), row(), row()] }
    }

    /// `f * I`.
    pub fn scalar(f: LaurentPoly) -> Mat3 {
        let ctx = f.ctx();
        let mut m = Mat3::zero(ctx);
        for i in 0..3 {
            m.entries[i][i] = f.clone();
        }
        m
    }

    pub fn ctx(&self) -> Modulus {
        self.entries[0][0].ctx()
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[[LaurentPoly; 3]; 3] {
        &self.entries
    }

    /// Replace one entry, keeping the context uniform.
    pub fn with_entry(&self, row: usize, col: usize, f: LaurentPoly) -> Result<Mat3, LinalgError> {
        if f.ctx() != self.ctx() {
            return Err(LinalgError::ContextMismatch);
        }
        let mut m = self.clone();
        m.entries[row][col] = f;
        Ok(m)
    }

    fn check_ctx(&self, other: Modulus) -> Result<(), LinalgError> {
        if self.ctx() == other {
            Ok(())
        } else {
            Err(LinalgError::ContextMismatch)
        }
    }

    pub fn checked_mul(&self, rhs: &Mat3) -> Result<Mat3, LinalgError> {
        self.check_ctx(rhs.ctx())?;
        let ctx = self.ctx();
        let mut out = Mat3::zero(ctx);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = LaurentPoly::zero(ctx);
                for k in 0..3 {
                    if self.entries[i][k].is_zero() || rhs.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&self.entries[i][k] * &rhs.entries[k][j]);
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Mat3) -> Result<Mat3, LinalgError> {
        self.check_ctx(rhs.ctx())?;
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = &out.entries[i][j] + &rhs.entries[i][j];
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Mat3) -> Result<Mat3, LinalgError> {
        self.check_ctx(rhs.ctx())?;
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = &out.entries[i][j] - &rhs.entries[i][j];
            }
        }
        Ok(out)
    }

    pub fn checked_mul_vec(&self, v: &Vec3) -> Result<Vec3, LinalgError> {
        self.check_ctx(v.ctx())?;
        let ctx = self.ctx();
        let mut coords = [
            LaurentPoly::zero(ctx),
            LaurentPoly::zero(ctx),
            LaurentPoly::zero(ctx),
        ];
        for (i, coord) in coords.iter_mut().enumerate() {
            let mut acc = LaurentPoly::zero(ctx);
            for k in 0..3 {
                if self.entries[i][k].is_zero() || v.coords[k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.entries[i][k] * &v.coords[k]);
            }
            *coord = acc;
        }
        Ok(Vec3 { coords })
    }

    pub fn scale(&self, f: &LaurentPoly) -> Result<Mat3, LinalgError> {
        self.check_ctx(f.ctx())?;
        let mut out = self.clone();
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = &*e * f;
            }
        }
        Ok(out)
    }

    /// Cofactor-expansion determinant.
    pub fn det(&self) -> LaurentPoly {
        let e = &self.entries;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(&e[r1][c1] * &e[r2][c2]) - &(&e[r1][c2] * &e[r2][c1])
        };
        let m0 = &e[0][0] * &minor(1, 2, 1, 2);
        let m1 = &e[0][1] * &minor(1, 2, 0, 2);
        let m2 = &e[0][2] * &minor(1, 2, 0, 1);
        &(&m0 - &m1) + &m2
    }

    /// Transposed cofactor matrix; satisfies `a * adjugate(a) = det(a) * I`.
    pub fn adjugate(&self) -> Mat3 {
        let e = &self.entries;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(&e[r1][c1] * &e[r2][c2]) - &(&e[r1][c2] * &e[r2][c1])
        };
        let mut out = Mat3::zero(self.ctx());
        for i in 0..3 {
            for j in 0..3 {
                let (r1, r2) = match j {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let (c1, c2) = match i {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let cof = minor(r1, r2, c1, c2);
                out.entries[i][j] = if (i + j) % 2 == 0 { cof } else { cof.neg() };
            }
        }
        out
    }

    /// Adjugate divided by the unit determinant. Exact: `a * a^-1 = I`.
    pub fn inverse(&self) -> Result<Mat3, LinalgError> {
        let det = self.det();
        let det_inv = det
            .unit_monomial_inverse()
            .map_err(|_| LinalgError::NonUnitDeterminant)?;
        self.adjugate().scale(&det_inv)
    }

    /// `k`-th power by square-and-multiply; negative `k` requires an
    /// invertible matrix.
    pub fn pow(&self, k: i64) -> Result<Mat3, LinalgError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut result = Mat3::identity(self.ctx());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.checked_mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(result)
    }

    /// Structural comparison against the identity matrix.
    pub fn is_identity(&self) -> bool {
        for i in 0..3 {
            for j in 0..3 {
                let e = &self.entries[i][j];
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// Entrywise residue map onto `Z_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Mat3, RingError> {
        let mut rows: Vec<[LaurentPoly; 3]> = Vec::with_capacity(3);
        for row in &self.entries {
            rows.push([
                row[0].reduce_mod(p)?,
                row[1].reduce_mod(p)?,
                row[2].reduce_mod(p)?,
            ]);
        }
        let r2 = rows.pop().unwrap();
        let r1 = rows.pop().unwrap();
        let r0 = rows.pop().unwrap();
        Ok(Mat3 { entries: [r0, r1, r2] })
    }
}

impl Vec3 {
    pub fn from_coords(coords: [LaurentPoly; 3]) -> Result<Vec3, LinalgError> {
        let ctx = coords[0].ctx();
        if coords.iter().any(|c| c.ctx() != ctx) {
            return Err(LinalgError::ContextMismatch);
        }
        Ok(Vec3 { coords })
    }

    pub fn zero(ctx: Modulus) -> Vec3 {
        Vec3 {
            coords: [
                LaurentPoly::zero(ctx),
                LaurentPoly::zero(ctx),
                LaurentPoly::zero(ctx),
            ],
        }
    }

    pub fn ctx(&self) -> Modulus {
        self.coords[0].ctx()
    }

    pub fn coord(&self, i: usize) -> &LaurentPoly {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[LaurentPoly; 3] {
        &self.coords
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Vec3, RingError> {
        Ok(Vec3 {
            coords: [
                self.coords[0].reduce_mod(p)?,
                self.coords[1].reduce_mod(p)?,
                self.coords[2].reduce_mod(p)?,
            ],
        })
    }
}

impl core::ops::Mul<&Mat3> for &Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &Mat3) -> Mat3 {
        self.checked_mul(rhs).expect("modulus context mismatch")
    }
}

impl core::ops::Mul<&Vec3> for &Mat3 {
    type Output = Vec3;
    fn mul(self, rhs: &Vec3) -> Vec3 {
        self.checked_mul_vec(rhs).expect("modulus context mismatch")
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            writeln!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burau::BurauConstants;
    use crate::ring::poly;
    use proptest::prelude::*;

    fn z() -> Modulus {
        Modulus::INTEGERS
    }

    fn zp(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn identity_fixes_vectors() {
        let ctx = z();
        let v = Vec3::from_coords([
            poly(&[(-1, 2)], ctx),
            poly(&[(0, 3), (2, 1)], ctx),
            LaurentPoly::zero(ctx),
        ])
        .unwrap();
        assert_eq!(&Mat3::identity(ctx) * &v, v);
    }

    #[test]
    fn t_squared_sends_v0_into_first_slot() {
        let c = BurauConstants::new(z());
        let t2 = c.t.pow(2).unwrap();
        let out = &t2 * &c.v0;
        let e1 = Vec3::from_coords([
            LaurentPoly::one(z()),
            LaurentPoly::zero(z()),
            LaurentPoly::zero(z()),
        ])
        .unwrap();
        assert_eq!(out, e1);
    }

    #[test]
    fn b_on_v0() {
        let c = BurauConstants::new(z());
        let out = &c.b * &c.v0;
        let expected = Vec3::from_coords([
            LaurentPoly::zero(z()),
            LaurentPoly::zero(z()),
            poly(&[(1, -1)], z()),
        ])
        .unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn det_examples() {
        let c = BurauConstants::new(z());
        assert!(Mat3::identity(z()).det().is_one());
        assert!(c.b.det().is_one());
        assert_eq!(c.t.det(), poly(&[(0, -1)], z()));
        assert_eq!(c.a.det(), LaurentPoly::one(z()));
    }

    #[test]
    fn inverse_of_t_matches_adjugate_route() {
        let c = BurauConstants::new(z());
        assert_eq!(c.t.inverse().unwrap(), c.t_inv);
        assert!((&c.t * &c.t_inv).is_identity());
        assert_eq!(Mat3::identity(z()).inverse().unwrap(), Mat3::identity(z()));
    }

    #[test]
    fn inverse_rejects_non_unit_determinant() {
        // diag(2t, 1, 1) over Z_4 has det 2t, not a unit
        let ctx = zp(4);
        let m = Mat3::identity(ctx)
            .with_entry(0, 0, poly(&[(1, 2)], ctx))
            .unwrap();
        assert_eq!(m.det(), poly(&[(1, 2)], ctx));
        assert_eq!(m.inverse(), Err(LinalgError::NonUnitDeterminant));
        assert_eq!(m.pow(-1), Err(LinalgError::NonUnitDeterminant));
    }

    #[test]
    fn pow_examples() {
        let c = BurauConstants::new(z());
        assert!(c.t.pow(4).unwrap().is_identity());
        assert!(c.b.pow(0).unwrap().is_identity());
        assert_eq!(c.t.pow(-1).unwrap(), c.t.inverse().unwrap());
        assert_eq!(c.b.pow(-3).unwrap(), c.b.inverse().unwrap().pow(3).unwrap());
    }

    #[test]
    fn is_identity_examples() {
        let c = BurauConstants::new(z());
        assert!(Mat3::identity(z()).is_identity());
        assert!(!c.b.is_identity());
        let t2 = c.t.pow(2).unwrap();
        assert!(t2.checked_mul(&t2).unwrap().is_identity());
    }

    #[test]
    fn context_mismatch_reported() {
        let a = Mat3::identity(z());
        let b = Mat3::identity(zp(2));
        assert_eq!(a.checked_mul(&b), Err(LinalgError::ContextMismatch));
    }

    // random invertible matrices: words in the Burau constants
    fn arb_word_matrix(ctx: Modulus) -> impl Strategy<Value = Mat3> {
        prop::collection::vec(0usize..4, 0..6).prop_map(move |idx| {
            let c = BurauConstants::new(ctx);
            let gens = [c.a.clone(), c.b.clone(), c.t.clone(), c.t_inv.clone()];
            let mut m = Mat3::identity(ctx);
            for i in idx {
                m = &m * &gens[i];
            }
            m
        })
    }

    fn arb_ctx() -> impl Strategy<Value = Modulus> {
        prop::sample::select(&[0u64, 2, 3, 4, 5, 6, 7]).prop_map(|p| Modulus::new(p).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_associative_identity_two_sided(
            (ma, mb, mc) in arb_ctx().prop_flat_map(|ctx| {
                (arb_word_matrix(ctx), arb_word_matrix(ctx), arb_word_matrix(ctx))
            })
        ) {
            prop_assert_eq!(&(&ma * &mb) * &mc, &ma * &(&mb * &mc));
            let id = Mat3::identity(ma.ctx());
            prop_assert_eq!(&ma * &id, ma.clone());
            prop_assert_eq!(&id * &ma, ma.clone());
        }

        #[test]
        fn det_is_multiplicative(
            (ma, mb) in arb_ctx().prop_flat_map(|ctx| {
                (arb_word_matrix(ctx), arb_word_matrix(ctx))
            })
        ) {
            prop_assert_eq!((&ma * &mb).det(), &ma.det() * &mb.det());
        }

        #[test]
        fn inverse_is_exact_two_sided(m in arb_ctx().prop_flat_map(arb_word_matrix)) {
            let inv = m.inverse().unwrap();
            prop_assert!((&m * &inv).is_identity());
            prop_assert!((&inv * &m).is_identity());
        }

        #[test]
        fn reduce_mod_lifts_multiplicatively(
            (ma, mb) in (arb_word_matrix(Modulus::INTEGERS), arb_word_matrix(Modulus::INTEGERS)),
            p in prop::sample::select(&[2u64, 3, 4, 5, 6, 7]),
        ) {
            let lhs = (&ma * &mb).reduce_mod(p).unwrap();
            let rhs = &ma.reduce_mod(p).unwrap() * &mb.reduce_mod(p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
