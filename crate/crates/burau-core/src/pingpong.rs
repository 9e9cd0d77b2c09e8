//! Ping-pong sets, the mapping checks between them, and step-by-step
//! non-identity certificates for canonical-form words.
//!
//! Vectors are classified by the valuations (lowest degrees) of their
//! coordinates:
//!
//! * `X1`: the first coordinate's valuation is at least two below the other
//!   two (which may be infinite);
//! * `X2`: all three valuations are equal and finite;
//! * `X3`: the second coordinate's valuation is at least two below the
//!   other two.
//!
//! `X3` uses the same "two or more" gap as `X1`: the image of `X1` under
//! `T^-1` can pick up extra cancellation in its first or third coordinate
//! (a leading coefficient may vanish mod `p`), so an exact-gap reading
//! would not be closed under the maps checked here.
//!
//! A [`Certificate`] replays a canonical word against the base vector `v0`,
//! recording each vector and its set. Words that satisfy
//! [`pingpong_conditions`](crate::rewrite::pingpong_conditions) follow a
//! forced schedule (`T^2` into `X1`, B runs back into `X1`, `T`/`T^-1`
//! into `X2`/`X3`), and the final vector differing from `v0` witnesses
//! that the product matrix is not the identity. The witness is never
//! assumed: the final comparison is explicit, and a true verdict is
//! cross-checked against the full matrix product.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::burau::BurauConstants;
use crate::linalg::{Mat3, Vec3};
use crate::rewrite::{pingpong_conditions, NormalForm, TPower};
use crate::ring::{LaurentPoly, Modulus, Valuation};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PingPongSet {
    X1,
    X2,
    X3,
    None,
}

impl fmt::Display for PingPongSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PingPongSet::X1 => write!(f, "X1"),
            PingPongSet::X2 => write!(f, "X2"),
            PingPongSet::X3 => write!(f, "X3"),
            PingPongSet::None => write!(f, "none"),
        }
    }
}

/// True iff `low` is finite and at least two below `other` (infinite
/// valuations count as arbitrarily high).
fn gap_two(low: Valuation, other: Valuation) -> bool {
    match low {
        Valuation::Finite(_) => other >= low.shift(2),
        Valuation::Infinite => false,
    }
}

pub fn classify(v: &Vec3) -> PingPongSet {
    let v1 = v.coord(0).valuation();
    let v2 = v.coord(1).valuation();
    let v3 = v.coord(2).valuation();
    if gap_two(v1, v2) && gap_two(v1, v3) {
        PingPongSet::X1
    } else if v1.is_finite() && v1 == v2 && v2 == v3 {
        PingPongSet::X2
    } else if gap_two(v2, v1) && gap_two(v2, v3) {
        PingPongSet::X3
    } else {
        PingPongSet::None
    }
}

// --- seeded sampling ----------------------------------------------------

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Independent per-sample generator: the result depends only on
/// `(seed, tag, index)`, so batches may be split across workers without
/// changing any draw.
fn sample_rng(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(tag.wrapping_add(index << 1))))
}

fn nonzero_coeff(ctx: Modulus, rng: &mut ChaCha8Rng) -> BigInt {
    if ctx.is_integers() {
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-9..=9);
        }
        BigInt::from(c)
    } else {
        BigInt::from(rng.gen_range(1..ctx.p()))
    }
}

fn any_coeff(ctx: Modulus, rng: &mut ChaCha8Rng) -> BigInt {
    if ctx.is_integers() {
        BigInt::from(rng.gen_range(-9..=9i64))
    } else {
        BigInt::from(rng.gen_range(0..ctx.p()))
    }
}

/// Polynomial with exact valuation `low`: nonzero leading coefficient plus
/// up to five higher terms.
fn poly_with_valuation(low: i64, ctx: Modulus, rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    terms.push((low, nonzero_coeff(ctx, rng)));
    let extra = rng.gen_range(0..=5u32);
    for _ in 0..extra {
        let exp = low + rng.gen_range(1..=6i64);
        terms.push((exp, any_coeff(ctx, rng)));
    }
    LaurentPoly::from_terms(terms, ctx)
}

/// Polynomial with valuation `>= low` (possibly zero).
fn poly_with_valuation_at_least(low: i64, ctx: Modulus, rng: &mut ChaCha8Rng) -> LaurentPoly {
    let count = rng.gen_range(0..=5u32);
    let terms = (0..count).map(|_| (low + rng.gen_range(0..=5i64), any_coeff(ctx, rng)));
    LaurentPoly::from_terms(terms, ctx)
}

/// Random member of `X1`, `X2` or `X3`: base valuation in `[-5, 5]`, term
/// counts at most six, leading coefficients forced onto the defining
/// pattern. Panics when asked for `None`.
pub fn sample_member(set: PingPongSet, ctx: Modulus, rng: &mut ChaCha8Rng) -> Vec3 {
    let base = rng.gen_range(-5..=5i64);
    let coords = match set {
        PingPongSet::X1 => [
            poly_with_valuation(base, ctx, rng),
            poly_with_valuation_at_least(base + 2, ctx, rng),
            poly_with_valuation_at_least(base + 2, ctx, rng),
        ],
        PingPongSet::X2 => [
            poly_with_valuation(base, ctx, rng),
            poly_with_valuation(base, ctx, rng),
            poly_with_valuation(base, ctx, rng),
        ],
        PingPongSet::X3 => [
            poly_with_valuation_at_least(base + 2, ctx, rng),
            poly_with_valuation(base, ctx, rng),
            poly_with_valuation_at_least(base + 2, ctx, rng),
        ],
        PingPongSet::None => panic!("cannot sample a member of the empty tag"),
    };
    Vec3::from_coords(coords).expect("uniform context")
}

// --- mapping verification ------------------------------------------------

#[derive(Clone, Debug)]
pub struct MappingCheck {
    pub name: &'static str,
    pub samples: u32,
    pub violations: u32,
}

#[derive(Clone, Debug)]
pub struct MappingReport {
    pub modulus: Modulus,
    pub checks: Vec<MappingCheck>,
}

impl MappingReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.violations == 0)
    }
}

/// Count how many sampled members of `from` fail to land in `to` under
/// `op`. Deterministic in `(seed, tag, samples)` regardless of batching.
pub fn count_violations(
    op: &Mat3,
    from: PingPongSet,
    to: PingPongSet,
    samples: u32,
    seed: u64,
    tag: u64,
) -> u32 {
    let ctx = op.ctx();
    (0..samples)
        .filter(|&i| {
            let mut rng = sample_rng(seed, tag, i as u64);
            let v = sample_member(from, ctx, &mut rng);
            classify(&(op * &v)) != to
        })
        .count() as u32
}

/// Like [`count_violations`] for `B^n` with `n` drawn uniformly from
/// `n_range` per sample.
pub fn count_violations_b_power(
    consts: &BurauConstants,
    from: PingPongSet,
    to: PingPongSet,
    n_range: (u64, u64),
    samples: u32,
    seed: u64,
    tag: u64,
) -> u32 {
    let ctx = consts.b.ctx();
    (0..samples)
        .filter(|&i| {
            let mut rng = sample_rng(seed, tag, i as u64);
            let v = sample_member(from, ctx, &mut rng);
            let n = rng.gen_range(n_range.0..=n_range.1);
            let bn = consts.b.pow(n as i64).expect("positive power");
            classify(&(&bn * &v)) != to
        })
        .count() as u32
}

/// Run every inclusion the certificate schedule relies on over seeded
/// random members, plus the two exact base-vector checks. Violation counts
/// are expected to be zero everywhere.
pub fn verify_mappings(ctx: Modulus, samples: u32, seed: u64) -> MappingReport {
    use PingPongSet::{X1, X2, X3};
    let c = BurauConstants::new(ctx);
    let b2 = c.b.pow(2).expect("square");
    let b3 = c.b.pow(3).expect("cube");
    let fixed: [(&'static str, &Mat3, PingPongSet, PingPongSet); 6] = [
        ("T X1 in X2", &c.t, X1, X2),
        ("T^-1 X1 in X3", &c.t_inv, X1, X3),
        ("B X1 in X1", &c.b, X1, X1),
        ("B X3 in X2", &c.b, X3, X2),
        ("B^2 X2 in X1", &b2, X2, X1),
        ("B^3 X3 in X1", &b3, X3, X1),
    ];

    let mut checks = Vec::new();
    for (i, (name, op, from, to)) in fixed.into_iter().enumerate() {
        checks.push(MappingCheck {
            name,
            samples,
            violations: count_violations(op, from, to, samples, seed, i as u64 + 1),
        });
    }
    checks.push(MappingCheck {
        name: "B^n X2 in X1, n in 2..=8",
        samples,
        violations: count_violations_b_power(&c, X2, X1, (2, 8), samples, seed, 7),
    });
    checks.push(MappingCheck {
        name: "B^n X3 in X1, n in 3..=9",
        samples,
        violations: count_violations_b_power(&c, X3, X1, (3, 9), samples, seed, 8),
    });

    // exact checks on the base vector
    let t2v0 = &c.t_sq * &c.v0;
    checks.push(MappingCheck {
        name: "T^2 v0 in X1",
        samples: 1,
        violations: u32::from(classify(&t2v0) != X1),
    });
    checks.push(MappingCheck {
        name: "v0 outside X1, X2, X3",
        samples: 1,
        violations: u32::from(classify(&c.v0) != PingPongSet::None),
    });

    MappingReport { modulus: ctx, checks }
}

// --- certificates ---------------------------------------------------------

/// Operator label of one certificate step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepOp {
    TSquared,
    T,
    TInv,
    B,
}

impl fmt::Display for StepOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepOp::TSquared => write!(f, "T²"),
            StepOp::T => write!(f, "T"),
            StepOp::TInv => write!(f, "T⁻¹"),
            StepOp::B => write!(f, "B"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertStep {
    pub op: StepOp,
    pub vector: Vec3,
    pub set: PingPongSet,
}

/// Trace of a canonical word applied to `v0`, one operator at a time.
/// `verdict = true` means every scheduled set membership held and the
/// final vector differs from `v0`, so the word is not the identity.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub word: NormalForm,
    pub modulus: Modulus,
    pub steps: Vec<CertStep>,
    pub verdict: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertifyError {
    /// The word does not satisfy the exponent conditions; the schedule is
    /// not guaranteed and the caller should evaluate directly instead.
    ConditionsNotMet,
    /// An intermediate vector left the scheduled set. Either a bug or a
    /// genuine counterexample; never ignored.
    ScheduleViolation {
        step: usize,
        expected: PingPongSet,
        found: PingPongSet,
    },
    /// The vector trace and the full matrix product disagree.
    CrossCheckFailed,
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::ConditionsNotMet => {
                write!(f, "word does not satisfy the exponent conditions")
            }
            CertifyError::ScheduleViolation { step, expected, found } => write!(
                f,
                "schedule violation at step {}: expected {}, found {}",
                step, expected, found
            ),
            CertifyError::CrossCheckFailed => {
                write!(f, "vector trace contradicts direct matrix evaluation")
            }
        }
    }
}

pub fn certify(nf: &NormalForm, ctx: Modulus) -> Result<Certificate, CertifyError> {
    certify_with(nf, &BurauConstants::new(ctx))
}

pub fn certify_with(nf: &NormalForm, consts: &BurauConstants) -> Result<Certificate, CertifyError> {
    if !pingpong_conditions(nf) {
        return Err(CertifyError::ConditionsNotMet);
    }
    let ctx = consts.b.ctx();
    let mut steps: Vec<CertStep> = Vec::new();
    let mut v = consts.v0.clone();

    let apply = |v: &mut Vec3, op: StepOp, m: &Mat3, steps: &mut Vec<CertStep>| {
        *v = m * &*v;
        let set = classify(v);
        steps.push(CertStep { op, vector: v.clone(), set });
        set
    };
    let expect = |steps: &Vec<CertStep>, found: PingPongSet, expected: PingPongSet| {
        if found == expected {
            Ok(())
        } else {
            Err(CertifyError::ScheduleViolation {
                step: steps.len() - 1,
                expected,
                found,
            })
        }
    };

    // trailing T^2 lands the base vector in X1
    let set = apply(&mut v, StepOp::TSquared, &consts.t_sq, &mut steps);
    expect(&steps, set, PingPongSet::X1)?;

    for (i, &n) in nf.b_runs().iter().enumerate() {
        // B runs end in X1; intermediate vectors may pass outside the sets
        let mut set = PingPongSet::None;
        for _ in 0..n {
            set = apply(&mut v, StepOp::B, &consts.b, &mut steps);
        }
        expect(&steps, set, PingPongSet::X1)?;
        if let Some(tp) = nf.t_powers().get(i) {
            let (op, m, target) = match tp {
                TPower::Plus => (StepOp::T, &consts.t, PingPongSet::X2),
                TPower::Minus => (StepOp::TInv, &consts.t_inv, PingPongSet::X3),
            };
            let set = apply(&mut v, op, m, &mut steps);
            expect(&steps, set, target)?;
        }
    }

    // leading factor; for T^2 the image leaves the three sets, which is
    // fine -- only the final comparison against v0 matters
    match nf.lead() {
        0 => {}
        1 => {
            let set = apply(&mut v, StepOp::T, &consts.t, &mut steps);
            expect(&steps, set, PingPongSet::X2)?;
        }
        -1 => {
            let set = apply(&mut v, StepOp::TInv, &consts.t_inv, &mut steps);
            expect(&steps, set, PingPongSet::X3)?;
        }
        2 => {
            apply(&mut v, StepOp::TSquared, &consts.t_sq, &mut steps);
        }
        _ => unreachable!("lead is confined to -1..=2"),
    }

    let verdict = v != consts.v0;
    if verdict {
        // dual route: the full matrix product must agree that the word is
        // not the identity
        if nf.evaluate(consts).is_identity() {
            return Err(CertifyError::CrossCheckFailed);
        }
    }
    Ok(Certificate { word: nf.clone(), modulus: ctx, steps, verdict })
}

impl Certificate {
    /// Written form of the certified word.
    pub fn word_text(&self) -> String {
        self.word.to_string()
    }
}
