//! Sparse Laurent polynomials over `Z` and `Z_p`.
//!
//! A [`LaurentPoly`] is a finite map from integer exponents to nonzero
//! coefficients, tagged with a [`Modulus`] context. Coefficients are
//! arbitrary-precision integers; when the modulus is `p >= 2` every stored
//! coefficient is kept in the canonical residue range `[0, p)`. Both rules
//! together make equality structural: two polynomials are equal iff their
//! term maps and contexts are equal.
//!
//! Composite moduli are supported. `Z_p` then has zero divisors, so the
//! valuation of a product can exceed the sum of the valuations; the only
//! multiplicative fact the rest of the crate relies on is that multiplying
//! by a unit monomial `c*t^k` shifts the valuation by exactly `k`.

use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficient ring selector: `p = 0` is the integers, `p >= 2` is `Z_p`.
///
/// `p = 1` is rejected at construction, so a `Modulus` value is always valid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Modulus {
    p: u64,
}

impl Modulus {
    /// The integers `Z`.
    pub const INTEGERS: Modulus = Modulus { p: 0 };

    pub fn new(p: u64) -> Result<Modulus, RingError> {
        if p == 1 {
            return Err(RingError::InvalidModulus(p));
        }
        Ok(Modulus { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_integers(&self) -> bool {
        self.p == 0
    }

    /// Canonical representative of `c` in this ring.
    fn canon(&self, c: BigInt) -> BigInt {
        if self.p == 0 {
            c
        } else {
            c.mod_floor(&BigInt::from(self.p))
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "Z")
        } else {
            write!(f, "Z_{}", self.p)
        }
    }
}

/// Lowest degree of a polynomial; the zero polynomial has valuation
/// `Infinite`, which orders above every finite value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    /// Shift by `k`; infinity absorbs.
    pub fn shift(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RingError {
    /// `p = 1` does not name a coefficient ring here.
    InvalidModulus(u64),
    /// Operands live over different coefficient rings.
    ContextMismatch { left: Modulus, right: Modulus },
    /// The element is not a unit monomial, so it has no inverse.
    NotAUnit,
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::InvalidModulus(p) => write!(f, "invalid modulus p = {}", p),
            RingError::ContextMismatch { left, right } => {
                write!(f, "modulus context mismatch: {} vs {}", left, right)
            }
            RingError::NotAUnit => write!(f, "element is not a unit monomial"),
        }
    }
}

/// Sparse Laurent polynomial in one variable `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
    ctx: Modulus,
}

impl LaurentPoly {
    pub fn zero(ctx: Modulus) -> LaurentPoly {
        LaurentPoly { terms: BTreeMap::new(), ctx }
    }

    pub fn one(ctx: Modulus) -> LaurentPoly {
        LaurentPoly::constant(1, ctx)
    }

    pub fn constant<C: Into<BigInt>>(c: C, ctx: Modulus) -> LaurentPoly {
        LaurentPoly::monomial(c, 0, ctx)
    }

    /// `c * t^exp`.
    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64, ctx: Modulus) -> LaurentPoly {
        LaurentPoly::from_terms([(exp, c)], ctx)
    }

    /// Build from `(exponent, coefficient)` pairs. Duplicate exponents are
    /// summed before normalization; terms that reduce to zero are dropped.
    pub fn from_terms<C, I>(pairs: I, ctx: Modulus) -> LaurentPoly
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (exp, c) in pairs {
            let entry = terms.entry(exp).or_insert_with(BigInt::zero);
            *entry += c.into();
        }
        Self::normalized(terms, ctx)
    }

    fn normalized(raw: BTreeMap<i64, BigInt>, ctx: Modulus) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (exp, c) in raw {
            let c = ctx.canon(c);
            if !c.is_zero() {
                terms.insert(exp, c);
            }
        }
        LaurentPoly { terms, ctx }
    }

    pub fn ctx(&self) -> Modulus {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Minimum exponent carrying a nonzero coefficient; `Infinite` for zero.
    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(&e) => Valuation::Finite(e),
            None => Valuation::Infinite,
        }
    }

    fn check_ctx(&self, other: &LaurentPoly) -> Result<(), RingError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(RingError::ContextMismatch { left: self.ctx, right: other.ctx })
        }
    }

    pub fn checked_add(&self, rhs: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.check_ctx(rhs)?;
        let mut terms = self.terms.clone();
        for (exp, c) in &rhs.terms {
            let entry = terms.entry(*exp).or_insert_with(BigInt::zero);
            *entry += c;
        }
        Ok(Self::normalized(terms, self.ctx))
    }

    pub fn checked_sub(&self, rhs: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.check_ctx(rhs)?;
        let mut terms = self.terms.clone();
        for (exp, c) in &rhs.terms {
            let entry = terms.entry(*exp).or_insert_with(BigInt::zero);
            *entry -= c;
        }
        Ok(Self::normalized(terms, self.ctx))
    }

    pub fn neg(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        Self::normalized(terms, self.ctx)
    }

    /// Exact convolution product.
    pub fn checked_mul(&self, rhs: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.check_ctx(rhs)?;
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let entry = terms.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        Ok(Self::normalized(terms, self.ctx))
    }

    /// Coefficient-wise residue map from `Z` onto `Z_p`. Ring homomorphism:
    /// commutes with addition and multiplication.
    pub fn reduce_mod(&self, p: u64) -> Result<LaurentPoly, RingError> {
        if !self.ctx.is_integers() {
            return Err(RingError::ContextMismatch {
                left: self.ctx,
                right: Modulus::INTEGERS,
            });
        }
        if p < 2 {
            return Err(RingError::InvalidModulus(p));
        }
        let ctx = Modulus { p };
        Ok(Self::normalized(self.terms.clone(), ctx))
    }

    /// True iff the polynomial is a single term `c * t^k` with `c` invertible
    /// in the coefficient ring (`c = +-1` over `Z`, `gcd(c, p) = 1` over `Z_p`).
    pub fn is_unit_monomial(&self) -> bool {
        if self.terms.len() != 1 {
            return false;
        }
        let c = self.terms.values().next().unwrap();
        if self.ctx.is_integers() {
            c.abs().is_one()
        } else {
            c.gcd(&BigInt::from(self.ctx.p)).is_one()
        }
    }

    /// Inverse of a unit monomial: `(c * t^k)^-1 = c^-1 * t^-k`.
    pub fn unit_monomial_inverse(&self) -> Result<LaurentPoly, RingError> {
        if !self.is_unit_monomial() {
            return Err(RingError::NotAUnit);
        }
        let (&exp, c) = self.terms.iter().next().unwrap();
        let inv = if self.ctx.is_integers() {
            c.clone() // +-1 is its own inverse
        } else {
            let p = BigInt::from(self.ctx.p);
            let gcd = c.extended_gcd(&p);
            gcd.x.mod_floor(&p)
        };
        Ok(LaurentPoly::monomial(inv, -exp, self.ctx))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            match (*exp, unit_coeff) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}*t", mag)?,
                (e, true) => write!(f, "t^{}", e)?,
                (e, false) => write!(f, "{}*t^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl core::ops::$trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("modulus context mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl core::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

/// Convenience used across the crate for hard-coded tables and tests.
pub fn poly(pairs: &[(i64, i64)], ctx: Modulus) -> LaurentPoly {
    LaurentPoly::from_terms(pairs.iter().copied(), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z() -> Modulus {
        Modulus::INTEGERS
    }

    fn zp(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn modulus_one_rejected() {
        assert_eq!(Modulus::new(1), Err(RingError::InvalidModulus(1)));
        assert!(Modulus::new(0).is_ok());
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn from_terms_constant_one() {
        let f = poly(&[(0, 1)], z());
        assert!(f.is_one());
    }

    #[test]
    fn from_terms_mod2_sign_collapse() {
        // -t^-1 + t over Z_2 becomes t^-1 + t
        let f = poly(&[(-1, -1), (1, 1)], zp(2));
        assert_eq!(f, poly(&[(-1, 1), (1, 1)], zp(2)));
    }

    #[test]
    fn from_terms_cancellation() {
        let f = poly(&[(2, 3), (2, -3)], z());
        assert!(f.is_zero());
        assert_eq!(f.term_count(), 0);
    }

    #[test]
    fn add_like_terms() {
        let f = poly(&[(-1, 1), (1, 1)], z());
        let g = poly(&[(-1, 1), (1, -1)], z());
        assert_eq!(&f + &g, poly(&[(-1, 2)], z()));
    }

    #[test]
    fn add_additive_inverse() {
        let f = poly(&[(-3, 5), (0, -2), (7, 1)], z());
        assert!((&f + &f.neg()).is_zero());
    }

    #[test]
    fn add_characteristic_two() {
        let f = poly(&[(1, 1), (2, 1)], zp(2));
        assert!((&f + &f).is_zero());
    }

    #[test]
    fn mul_difference_of_squares() {
        let f = poly(&[(-1, 1), (1, 1)], z());
        let g = poly(&[(-1, 1), (1, -1)], z());
        assert_eq!(&f * &g, poly(&[(-2, 1), (2, -1)], z()));
    }

    #[test]
    fn mul_identity() {
        let f = poly(&[(-4, 2), (0, 3), (5, -7)], z());
        assert_eq!(&f * &LaurentPoly::one(z()), f);
    }

    #[test]
    fn mul_zero_divisor_mod4() {
        let f = poly(&[(1, 2)], zp(4));
        assert!((&f * &f).is_zero());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let f = LaurentPoly::one(z());
        let g = LaurentPoly::one(zp(3));
        assert!(matches!(
            f.checked_add(&g),
            Err(RingError::ContextMismatch { .. })
        ));
        assert!(matches!(
            f.checked_mul(&g),
            Err(RingError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            poly(&[(-1, 1), (2, 3)], z()).valuation(),
            Valuation::Finite(-1)
        );
        assert_eq!(LaurentPoly::zero(z()).valuation(), Valuation::Infinite);
        // 2 + 2t over Z_2 normalizes to zero
        assert_eq!(poly(&[(0, 2), (1, 2)], zp(2)).valuation(), Valuation::Infinite);
    }

    #[test]
    fn valuation_ordering() {
        assert!(Valuation::Finite(i64::MAX - 2) < Valuation::Infinite);
        assert!(Valuation::Finite(-5) < Valuation::Finite(3));
        assert_eq!(Valuation::Infinite.shift(2), Valuation::Infinite);
        assert_eq!(Valuation::Finite(1).shift(2), Valuation::Finite(3));
    }

    #[test]
    fn reduce_mod_examples() {
        let f = poly(&[(-1, -1), (1, 1)], z());
        assert_eq!(f.reduce_mod(2).unwrap(), poly(&[(-1, 1), (1, 1)], zp(2)));

        let g = poly(&[(2, 6), (1, 1)], z());
        assert_eq!(g.reduce_mod(3).unwrap(), poly(&[(1, 1)], zp(3)));

        assert!(matches!(f.reduce_mod(1), Err(RingError::InvalidModulus(1))));
        assert!(matches!(f.reduce_mod(0), Err(RingError::InvalidModulus(0))));
        let h = poly(&[(0, 1)], zp(2));
        assert!(h.reduce_mod(2).is_err()); // already reduced
    }

    #[test]
    fn unit_monomial_examples() {
        assert!(poly(&[(-1, -1)], z()).is_unit_monomial());
        assert!(!poly(&[(1, 2)], zp(4)).is_unit_monomial());
        assert!(!poly(&[(0, 1), (1, 1)], z()).is_unit_monomial());
        assert!(poly(&[(1, 3)], zp(4)).is_unit_monomial()); // gcd(3,4) = 1
        assert!(!poly(&[(0, 2)], z()).is_unit_monomial());
    }

    #[test]
    fn unit_monomial_inverse_examples() {
        let u = poly(&[(3, -1)], z());
        assert_eq!(u.unit_monomial_inverse().unwrap(), poly(&[(-3, -1)], z()));
        assert!((&u * &u.unit_monomial_inverse().unwrap()).is_one());

        let v = poly(&[(1, 3)], zp(4));
        let vinv = v.unit_monomial_inverse().unwrap();
        assert!((&v * &vinv).is_one());

        assert_eq!(
            poly(&[(0, 2)], zp(4)).unit_monomial_inverse(),
            Err(RingError::NotAUnit)
        );
    }

    #[test]
    fn display_formatting() {
        let f = poly(&[(-1, 1), (0, -2), (3, 4)], z());
        assert_eq!(alloc::format!("{}", f), "t^-1 - 2 + 4*t^3");
        assert_eq!(alloc::format!("{}", LaurentPoly::zero(z())), "0");
    }

    // --- property tests ------------------------------------------------

    const MODULI: [u64; 7] = [0, 2, 3, 4, 5, 6, 7];

    fn arb_ctx() -> impl Strategy<Value = Modulus> {
        prop::sample::select(MODULI.as_slice()).prop_map(|p| Modulus::new(p).unwrap())
    }

    fn arb_poly_in(ctx: Modulus) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-6i64..=6), (-20i64..=20)), 0..6)
            .prop_map(move |pairs| LaurentPoly::from_terms(pairs, ctx))
    }

    fn arb_ctx_polys(n: usize) -> impl Strategy<Value = Vec<LaurentPoly>> {
        arb_ctx().prop_flat_map(move |ctx| prop::collection::vec(arb_poly_in(ctx), n))
    }

    /// Structural canonicity: no stored zero coefficients, residues in range.
    fn assert_normalized(f: &LaurentPoly) {
        for (_, c) in f.terms() {
            assert!(!c.is_zero());
            if !f.ctx().is_integers() {
                assert!(!c.is_negative() && *c < BigInt::from(f.ctx().p()));
            }
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(ps in arb_ctx_polys(3)) {
            let (f, g, h) = (&ps[0], &ps[1], &ps[2]);
            let ctx = f.ctx();
            prop_assert_eq!(f + g, g + f);
            prop_assert_eq!(&(f + g) + h, f + &(g + h));
            prop_assert_eq!(f * g, g * f);
            prop_assert_eq!(&(f * g) * h, f * &(g * h));
            prop_assert_eq!(f * &(g + h), &(f * g) + &(f * h));
            prop_assert_eq!(f + &LaurentPoly::zero(ctx), f.clone());
            prop_assert_eq!(f * &LaurentPoly::one(ctx), f.clone());
            prop_assert!((f + &f.neg()).is_zero());
            for r in [f + g, f * g, f.neg()] {
                assert_normalized(&r);
            }
        }

        #[test]
        fn valuation_product_rule(ps in arb_ctx_polys(2)) {
            let (f, g) = (&ps[0], &ps[1]);
            let prod = f * g;
            let bound = match (f.valuation(), g.valuation()) {
                (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
                _ => Valuation::Infinite,
            };
            // always >=; exact over Z and over Z_p for prime p
            prop_assert!(prod.valuation() >= bound);
            let p = f.ctx().p();
            if (p == 0 || [2, 3, 5, 7].contains(&p)) && !f.is_zero() && !g.is_zero() {
                prop_assert_eq!(prod.valuation(), bound);
            }
        }

        #[test]
        fn unit_monomial_shifts_valuation(
            ps in arb_ctx_polys(1),
            k in -6i64..=6,
            c in 1i64..=19,
        ) {
            // valuation(f * u) = valuation(f) + k for every unit monomial
            // u = c*t^k, any modulus (including composite).
            let f = &ps[0];
            let u = LaurentPoly::monomial(c, k, f.ctx());
            prop_assume!(u.is_unit_monomial());
            prop_assert_eq!((f * &u).valuation(), f.valuation().shift(k));
        }

        #[test]
        fn reduce_mod_is_a_ring_homomorphism(
            pairs1 in prop::collection::vec(((-6i64..=6), (-30i64..=30)), 0..6),
            pairs2 in prop::collection::vec(((-6i64..=6), (-30i64..=30)), 0..6),
            p in prop::sample::select(&[2u64, 3, 4, 5, 6, 7]),
        ) {
            let f = LaurentPoly::from_terms(pairs1, Modulus::INTEGERS);
            let g = LaurentPoly::from_terms(pairs2, Modulus::INTEGERS);
            let rf = f.reduce_mod(p).unwrap();
            let rg = g.reduce_mod(p).unwrap();
            prop_assert_eq!((&f + &g).reduce_mod(p).unwrap(), &rf + &rg);
            prop_assert_eq!((&f * &g).reduce_mod(p).unwrap(), &rf * &rg);
        }
    }
}
