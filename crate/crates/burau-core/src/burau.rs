//! The reduced Burau representation of the braid group `B_4` and the fixed
//! matrices the rest of the crate is built on.
//!
//! `B_4` has three standard generators `s1, s2, s3`. Their images here are
//! the unique family (up to scalars) of 3x3 Laurent-polynomial matrices that
//! satisfies the braid relations and sends
//!
//! * `b = s3 s1^-1` to the matrix `B`, and
//! * `a^-1`, with `a = s1 s2 s1^-1 s3 s2^-1 s1^-1`, to the matrix `A`
//!
//! exactly as those two matrices appear in [`BurauConstants`]. The family
//! was derived by solving the intertwiner equations against a textbook
//! reduced-Burau basis and is hard-coded below; the pin itself is enforced
//! by tests.
//!
//! All constants are built over `Z` and pushed to `Z_p` with the entrywise
//! residue map, so homomorphic consistency holds by construction.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{Mat3, Vec3};
use crate::ring::{poly, LaurentPoly, Modulus};

/// Entry table: rows of `(exponent, coefficient)` term lists.
type EntryTable = [[&'static [(i64, i64)]; 3]; 3];

// A = rho(a^-1) and B = rho(b), for a = s1 s2 s1' s3 s2' s1' and b = s3 s1'.
const A_TABLE: EntryTable = [
    [&[], &[], &[(-1, -1)]],
    [&[], &[(1, -1)], &[(-1, -1), (1, 1)]],
    [&[(0, -1)], &[], &[(-1, -1), (0, 1)]],
];

const B_TABLE: EntryTable = [
    [&[(-1, -1)], &[(0, 1)], &[]],
    [&[], &[(0, 1)], &[]],
    [&[], &[(0, 1)], &[(1, -1)]],
];

// Order-four integer matrix conjugating B to A.
const T_TABLE: EntryTable = [
    [&[(0, -1)], &[(0, 1)], &[]],
    [&[(0, -1)], &[], &[(0, 1)]],
    [&[(0, -1)], &[], &[]],
];

const T_INV_TABLE: EntryTable = [
    [&[], &[], &[(0, -1)]],
    [&[(0, 1)], &[], &[(0, -1)]],
    [&[], &[(0, 1)], &[(0, -1)]],
];

// Eigenbasis transporters: A T_A = T_A Delta and B T_B = T_B Delta.
const T_A_TABLE: EntryTable = [
    [&[(0, -1)], &[(-1, 1)], &[]],
    [&[(0, -1)], &[(-1, 1), (0, -1)], &[(0, 1)]],
    [&[(0, -1)], &[(0, -1)], &[]],
];

const T_B_TABLE: EntryTable = [
    [&[(0, 1)], &[(0, 1)], &[]],
    [&[], &[(-1, 1), (0, 1)], &[]],
    [&[], &[(-1, 1)], &[(0, 1)]],
];

const DELTA_TABLE: EntryTable = [
    [&[(-1, -1)], &[], &[]],
    [&[], &[(0, 1)], &[]],
    [&[], &[], &[(1, -1)]],
];

// Reduced Burau images of the braid generators s1, s2, s3 in the pinned
// basis, and their inverses.
const SIGMA_TABLES: [EntryTable; 3] = [
    [
        [&[(0, 1)], &[], &[]],
        [&[], &[(0, 1)], &[]],
        [&[], &[(-1, 1)], &[(-1, -1)]],
    ],
    [
        [&[], &[], &[(-1, -1)]],
        [&[(0, -1)], &[(0, 1)], &[(-1, -1)]],
        [&[(0, -1)], &[], &[(-1, -1), (0, 1)]],
    ],
    [
        [&[(-1, -1)], &[(0, 1)], &[]],
        [&[], &[(0, 1)], &[]],
        [&[], &[], &[(0, 1)]],
    ],
];

const SIGMA_INV_TABLES: [EntryTable; 3] = [
    [
        [&[(0, 1)], &[], &[]],
        [&[], &[(0, 1)], &[]],
        [&[], &[(0, 1)], &[(1, -1)]],
    ],
    [
        [&[(0, 1), (1, -1)], &[], &[(0, -1)]],
        [&[(1, -1)], &[(0, 1)], &[(0, -1)]],
        [&[(1, -1)], &[], &[]],
    ],
    [
        [&[(1, -1)], &[(1, 1)], &[]],
        [&[], &[(0, 1)], &[]],
        [&[], &[], &[(0, 1)]],
    ],
];

fn mat_from_table(table: &EntryTable, ctx: Modulus) -> Mat3 {
    let entry = |r: usize, c: usize| poly(table[r][c], ctx);
    Mat3::from_entries([
        [entry(0, 0), entry(0, 1), entry(0, 2)],
        [entry(1, 0), entry(1, 1), entry(1, 2)],
        [entry(2, 0), entry(2, 1), entry(2, 2)],
    ])
    .expect("constant tables share one context")
}

/// The fixed matrices over a chosen coefficient ring, plus the base vector
/// `v0 = (0, 0, 1)` used by the ping-pong argument.
#[derive(Clone, Debug)]
pub struct BurauConstants {
    pub a: Mat3,
    pub b: Mat3,
    pub a_inv: Mat3,
    pub b_inv: Mat3,
    pub t: Mat3,
    pub t_inv: Mat3,
    pub t_sq: Mat3,
    pub t_a: Mat3,
    pub t_b: Mat3,
    pub delta: Mat3,
    pub v0: Vec3,
}

impl BurauConstants {
    pub fn new(ctx: Modulus) -> BurauConstants {
        let a = mat_from_table(&A_TABLE, ctx);
        let b = mat_from_table(&B_TABLE, ctx);
        let t = mat_from_table(&T_TABLE, ctx);
        let t_inv = mat_from_table(&T_INV_TABLE, ctx);
        let t_sq = &t * &t;
        let a_inv = a.inverse().expect("det A is a unit monomial");
        let b_inv = b.inverse().expect("det B is a unit monomial");
        let v0 = Vec3::from_coords([
            LaurentPoly::zero(ctx),
            LaurentPoly::zero(ctx),
            LaurentPoly::one(ctx),
        ])
        .expect("uniform context");
        BurauConstants {
            a,
            b,
            a_inv,
            b_inv,
            t,
            t_inv,
            t_sq,
            t_a: mat_from_table(&T_A_TABLE, ctx),
            t_b: mat_from_table(&T_B_TABLE, ctx),
            delta: mat_from_table(&DELTA_TABLE, ctx),
            v0,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BurauError {
    /// Braid generator index outside 1..=3.
    InvalidGenerator(u8),
}

impl fmt::Display for BurauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BurauError::InvalidGenerator(i) => {
                write!(f, "invalid braid generator index {} (expected 1, 2 or 3)", i)
            }
        }
    }
}

/// Image of `s<index>^(+-1)` under the pinned reduced Burau representation.
pub fn burau_generator(index: u8, inverse: bool, ctx: Modulus) -> Result<Mat3, BurauError> {
    if !(1..=3).contains(&index) {
        return Err(BurauError::InvalidGenerator(index));
    }
    let tables = if inverse { &SIGMA_INV_TABLES } else { &SIGMA_TABLES };
    Ok(mat_from_table(&tables[(index - 1) as usize], ctx))
}

/// One letter of a braid word: a generator index in 1..=3 and a sign.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BraidLetter {
    pub index: u8,
    pub inverse: bool,
}

/// Word in the standard generators of `B_4`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BraidWord {
    letters: Vec<BraidLetter>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for BraidParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid syntax error at offset {}: {}", self.pos, self.message)
    }
}

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Result<BraidWord, BurauError> {
        if let Some(l) = letters.iter().find(|l| !(1..=3).contains(&l.index)) {
            return Err(BurauError::InvalidGenerator(l.index));
        }
        Ok(BraidWord { letters })
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Grammar: whitespace-separated tokens `s1 s2 s3`, each with an
    /// optional inverse suffix `'` or `^-1`, e.g. `s1 s2 s1' s3 s2' s1'`.
    pub fn parse(text: &str) -> Result<BraidWord, BraidParseError> {
        let mut letters = Vec::new();
        let mut rest = text;
        let mut offset = 0;
        loop {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed
                .find(char::is_whitespace)
                .unwrap_or(trimmed.len());
            let token = &trimmed[..end];
            letters.push(parse_braid_token(token, offset)?);
            offset += end;
            rest = &trimmed[end..];
        }
        Ok(BraidWord { letters })
    }
}

fn parse_braid_token(token: &str, pos: usize) -> Result<BraidLetter, BraidParseError> {
    let err = |message: &str| BraidParseError { pos, message: String::from(message) };
    let body = token.strip_prefix('s').ok_or_else(|| err("expected `s1`, `s2` or `s3`"))?;
    let (digit, suffix) = body.split_at(body.len().min(1));
    let index: u8 = digit
        .parse()
        .map_err(|_| err("expected a generator index after `s`"))?;
    if !(1..=3).contains(&index) {
        return Err(err("generator index must be 1, 2 or 3"));
    }
    let inverse = match suffix {
        "" => false,
        "'" | "^-1" => true,
        _ => return Err(err("expected `'` or `^-1` after the generator")),
    };
    Ok(BraidLetter { index, inverse })
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}{}", l.index, if l.inverse { "'" } else { "" })?;
        }
        Ok(())
    }
}

/// Ordered product of generator images; the empty word yields the identity.
pub fn eval_braid(word: &BraidWord, ctx: Modulus) -> Mat3 {
    let mut m = Mat3::identity(ctx);
    for l in word.letters() {
        let g = burau_generator(l.index, l.inverse, ctx).expect("validated letters");
        m = &m * &g;
    }
    m
}

/// Which T-conjugate of `B` the matrix `A` equals. Settled by direct
/// computation in [`verify_identities`] rather than hard-coded; the
/// rewrite machinery consumes the adjudicated value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AConjugation {
    /// `A = T B T^-1` (and consequently `A^-1 = T^-1 B T`).
    ByT,
    /// `A = T^-1 B T` (and consequently `A^-1 = T B T^-1`).
    ByTInv,
}

impl fmt::Display for AConjugation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AConjugation::ByT => write!(f, "A = T B T^-1"),
            AConjugation::ByTInv => write!(f, "A = T^-1 B T"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NamedCheck {
    pub name: &'static str,
    pub pass: bool,
}

/// Outcome of the conjugation identity suite. `checks` are the identities
/// expected to hold; the `a_by_*` flags record the adjudication evidence.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub checks: Vec<NamedCheck>,
    /// Does `A = T B T^-1` hold?
    pub a_by_t: bool,
    /// Does `A = T^-1 B T` hold?
    pub a_by_t_inv: bool,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The computationally confirmed substitution rule, if exactly one of
    /// the two candidates holds.
    pub fn a_conjugation(&self) -> Option<AConjugation> {
        match (self.a_by_t, self.a_by_t_inv) {
            (true, false) => Some(AConjugation::ByT),
            (false, true) => Some(AConjugation::ByTInv),
            _ => None,
        }
    }
}

/// Check, with exact equality, every conjugation identity the pipeline
/// rests on. Failures come back as report entries, not errors.
pub fn verify_identities(ctx: Modulus) -> IdentityReport {
    identity_report_for(&BurauConstants::new(ctx))
}

/// Same suite against caller-supplied constants (used to show that a
/// perturbed matrix breaks at least one identity).
pub fn identity_report_for(c: &BurauConstants) -> IdentityReport {
    let ctx = c.a.ctx();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, pass: bool| checks.push(NamedCheck { name, pass });

    let t4 = c.t.pow(4).expect("T is invertible");
    push("T^4 = I", t4.is_identity());

    let a_by_t = &(&c.t * &c.b) * &c.t_inv == c.a;
    let a_by_t_inv = &(&c.t_inv * &c.b) * &c.t == c.a;
    push("A = T B T^-1", a_by_t);
    push("A^-1 = T^-1 B T", &(&c.t_inv * &c.b) * &c.t == c.a_inv);
    push(
        "B^-1 = T^2 B T^2",
        &(&c.t_sq * &c.b) * &c.t_sq == c.b_inv,
    );
    // T = T_A T_B^-1, stated multiplicatively: det T_B = 1 + t^-1 is not a
    // unit monomial, so T_B has no inverse over the ring itself.
    push("T T_B = T_A", &c.t * &c.t_b == c.t_a);
    push("A T_A = T_A Delta", &c.a * &c.t_a == &c.t_a * &c.delta);
    push("B T_B = T_B Delta", &c.b * &c.t_b == &c.t_b * &c.delta);

    // The eigenvalue claim, checked as an annihilating polynomial:
    // (M + t^-1 I)(M - I)(M + t I) = 0.
    let t_inv_i = Mat3::scalar(LaurentPoly::monomial(1, -1, ctx));
    let t_i = Mat3::scalar(LaurentPoly::monomial(1, 1, ctx));
    let id = Mat3::identity(ctx);
    let annihilated = |m: &Mat3| {
        let f1 = m.checked_add(&t_inv_i).expect("same ctx");
        let f2 = m.checked_sub(&id).expect("same ctx");
        let f3 = m.checked_add(&t_i).expect("same ctx");
        (&(&f1 * &f2) * &f3).is_zero()
    };
    push("(A + t^-1 I)(A - I)(A + t I) = 0", annihilated(&c.a));
    push("(B + t^-1 I)(B - I)(B + t I) = 0", annihilated(&c.b));
    push("(A^-1 + t^-1 I)(A^-1 - I)(A^-1 + t I) = 0", annihilated(&c.a_inv));
    push("(B^-1 + t^-1 I)(B^-1 - I)(B^-1 + t I) = 0", annihilated(&c.b_inv));

    IdentityReport { checks, a_by_t, a_by_t_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::poly;

    fn z() -> Modulus {
        Modulus::INTEGERS
    }

    fn zp(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn generators_invert() {
        for ctx in [z(), zp(2), zp(5)] {
            for i in 1..=3u8 {
                let g = burau_generator(i, false, ctx).unwrap();
                let ginv = burau_generator(i, true, ctx).unwrap();
                assert!((&g * &ginv).is_identity());
                assert!((&ginv * &g).is_identity());
                assert_eq!(g.inverse().unwrap(), ginv);
            }
        }
        assert_eq!(burau_generator(0, false, z()), Err(BurauError::InvalidGenerator(0)));
        assert_eq!(burau_generator(4, false, z()), Err(BurauError::InvalidGenerator(4)));
    }

    #[test]
    fn braid_relations_hold() {
        let ctx = z();
        let s: Vec<Mat3> = (1..=3)
            .map(|i| burau_generator(i, false, ctx).unwrap())
            .collect();
        assert_eq!(&(&s[0] * &s[1]) * &s[0], &(&s[1] * &s[0]) * &s[1]);
        assert_eq!(&(&s[1] * &s[2]) * &s[1], &(&s[2] * &s[1]) * &s[2]);
        assert_eq!(&s[0] * &s[2], &s[2] * &s[0]);
    }

    #[test]
    fn pin_b_is_image_of_s3_s1_inv() {
        let c = BurauConstants::new(z());
        let word = BraidWord::parse("s3 s1'").unwrap();
        assert_eq!(eval_braid(&word, z()), c.b);
    }

    #[test]
    fn pin_a_is_image_of_a_word_inverse() {
        let c = BurauConstants::new(z());
        // a = s1 s2 s1' s3 s2' s1'
        let a_word = BraidWord::parse("s1 s2 s1' s3 s2' s1'").unwrap();
        assert_eq!(eval_braid(&a_word, z()).inverse().unwrap(), c.a);
        // and directly: a^-1 = s1 s2 s3' s1 s2' s1'
        let a_inv_word = BraidWord::parse("s1 s2 s3' s1 s2' s1'").unwrap();
        assert_eq!(eval_braid(&a_inv_word, z()), c.a);
    }

    #[test]
    fn empty_braid_word_evaluates_to_identity() {
        let word = BraidWord::parse("").unwrap();
        assert!(eval_braid(&word, z()).is_identity());
    }

    #[test]
    fn eval_braid_commutes_with_residue_map() {
        let word = BraidWord::parse("s1 s2' s3 s3 s1'").unwrap();
        for p in [2u64, 3, 6] {
            let over_z = eval_braid(&word, z()).reduce_mod(p).unwrap();
            let over_zp = eval_braid(&word, zp(p));
            assert_eq!(over_z, over_zp);
        }
    }

    #[test]
    fn braid_parse_errors_carry_positions() {
        let e = BraidWord::parse("s1 x2").unwrap_err();
        assert_eq!(e.pos, 3);
        let e = BraidWord::parse("s4").unwrap_err();
        assert_eq!(e.pos, 0);
        let e = BraidWord::parse("s1 s2^2").unwrap_err();
        assert_eq!(e.pos, 3);
    }

    #[test]
    fn identity_suite_passes_over_z() {
        let report = verify_identities(z());
        assert!(report.all_pass(), "failing: {:?}", report.checks);
        assert!(report.a_by_t);
        assert!(!report.a_by_t_inv);
        assert_eq!(report.a_conjugation(), Some(AConjugation::ByT));
    }

    #[test]
    fn identity_suite_passes_over_zp() {
        for p in [2u64, 3, 4, 5, 6, 7] {
            let report = verify_identities(zp(p));
            assert!(report.all_pass(), "p = {}: {:?}", p, report.checks);
            assert_eq!(report.a_conjugation(), Some(AConjugation::ByT));
        }
    }

    #[test]
    fn perturbed_constant_fails_the_suite() {
        let mut c = BurauConstants::new(z());
        c.a = c.a.with_entry(1, 1, poly(&[(2, 5)], z())).unwrap();
        let report = identity_report_for(&c);
        assert!(!report.all_pass());
    }

    #[test]
    fn determinants_are_unit_monomials() {
        let c = BurauConstants::new(z());
        for m in [&c.a, &c.b, &c.t] {
            assert!(m.det().is_unit_monomial());
        }
        for i in 1..=3u8 {
            assert!(burau_generator(i, false, z()).unwrap().det().is_unit_monomial());
        }
    }

    #[test]
    fn explicit_t_inverse_matches_table() {
        let c = BurauConstants::new(z());
        assert!((&c.t * &c.t_inv).is_identity());
        assert_eq!(c.t.pow(3).unwrap(), c.t_inv);
    }
}
