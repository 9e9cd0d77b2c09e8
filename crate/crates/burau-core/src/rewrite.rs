//! Words in the letters `A`, `B` and their inverses: parsing, free
//! reduction, conjugation to a `B^-i` suffix, and rewriting into the
//! canonical form `T^m B^nk ... T^m1 B^n1 T^2`.
//!
//! The rewriting step substitutes every letter by its T-conjugate of a
//! positive `B` power (`A = T B T^-1`, `A^-1 = T^-1 B T`, `B^-1 = T^2 B T^2`)
//! and then collapses adjacent T powers modulo four. Which conjugate `A`
//! equals is not hard-coded: callers pass the [`AConjugation`] adjudicated
//! by [`crate::burau::verify_identities`].

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::burau::{AConjugation, BurauConstants};
use crate::linalg::Mat3;
use crate::ring::Modulus;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Letter {
    A,
    B,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A => write!(f, "A"),
            Letter::B => write!(f, "B"),
        }
    }
}

/// Freely reduced word: adjacent syllables carry distinct letters and no
/// exponent is zero. The empty word is allowed (it evaluates to `I`);
/// parsing rejects it, see [`parse_word`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WordAB {
    syllables: Vec<(Letter, i64)>,
}

impl WordAB {
    /// Build from raw syllables, merging adjacent same-letter runs and
    /// dropping zero exponents until the word is freely reduced.
    pub fn from_syllables<I: IntoIterator<Item = (Letter, i64)>>(syllables: I) -> WordAB {
        let mut reduced: Vec<(Letter, i64)> = Vec::new();
        for (letter, exp) in syllables {
            if exp == 0 {
                continue;
            }
            match reduced.last_mut() {
                Some((last, e)) if *last == letter => {
                    *e += exp;
                    if *e == 0 {
                        reduced.pop();
                    }
                }
                _ => reduced.push((letter, exp)),
            }
        }
        WordAB { syllables: reduced }
    }

    pub fn syllables(&self) -> &[(Letter, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    pub fn inverse(&self) -> WordAB {
        WordAB {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|&(l, e)| (l, -e))
                .collect(),
        }
    }

    pub fn concat(&self, other: &WordAB) -> WordAB {
        WordAB::from_syllables(
            self.syllables
                .iter()
                .chain(other.syllables.iter())
                .copied(),
        )
    }

    /// Ordered product of the letter matrices, leftmost syllable first.
    pub fn evaluate(&self, consts: &BurauConstants) -> Mat3 {
        let mut m = Mat3::identity(consts.a.ctx());
        for &(letter, exp) in &self.syllables {
            let base = match (letter, exp > 0) {
                (Letter::A, true) => &consts.a,
                (Letter::A, false) => &consts.a_inv,
                (Letter::B, true) => &consts.b,
                (Letter::B, false) => &consts.b_inv,
            };
            let factor = base.pow(exp.abs()).expect("nonnegative power");
            m = &m * &factor;
        }
        m
    }

    pub fn evaluate_over(&self, ctx: Modulus) -> Mat3 {
        self.evaluate(&BurauConstants::new(ctx))
    }
}

impl fmt::Display for WordAB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (letter, exp)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *exp == 1 {
                write!(f, "{}", letter)?;
            } else {
                write!(f, "{}^{}", letter, exp)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseError {
    /// No syllables in the input.
    Empty,
    /// The written word freely reduces to the empty word.
    ReducesToEmpty,
    /// Unexpected token; `pos` is a byte offset into the input.
    Syntax { pos: usize, message: String },
    /// Explicit zero exponent.
    ZeroExponent { pos: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => write!(f, "empty word"),
            ParseError::ReducesToEmpty => write!(f, "word freely reduces to the empty word"),
            ParseError::Syntax { pos, message } => {
                write!(f, "syntax error at offset {}: {}", pos, message)
            }
            ParseError::ZeroExponent { pos } => {
                write!(f, "syntax error at offset {}: zero exponent", pos)
            }
        }
    }
}

/// Grammar: whitespace-separated tokens `A` or `B` with an optional
/// `^<integer>` exponent (negative allowed), e.g. `A^3 B^-3 A^-3`.
/// The result is freely reduced; empty words are rejected.
pub fn parse_word(text: &str) -> Result<WordAB, ParseError> {
    let mut syllables = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        syllables.push(parse_syllable(&trimmed[..end], offset)?);
        offset += end;
        rest = &trimmed[end..];
    }
    if syllables.is_empty() {
        return Err(ParseError::Empty);
    }
    let word = WordAB::from_syllables(syllables);
    if word.is_empty() {
        return Err(ParseError::ReducesToEmpty);
    }
    Ok(word)
}

fn parse_syllable(token: &str, pos: usize) -> Result<(Letter, i64), ParseError> {
    let err = |message: &str| ParseError::Syntax { pos, message: String::from(message) };
    let mut chars = token.chars();
    let letter = match chars.next() {
        Some('A') => Letter::A,
        Some('B') => Letter::B,
        _ => return Err(err("expected letter `A` or `B`")),
    };
    let suffix = chars.as_str();
    if suffix.is_empty() {
        return Ok((letter, 1));
    }
    let digits = suffix
        .strip_prefix('^')
        .ok_or_else(|| err("expected `^<integer>` after the letter"))?;
    let exp: i64 = digits.parse().map_err(|_| err("malformed exponent"))?;
    if exp == 0 {
        return Err(ParseError::ZeroExponent { pos });
    }
    Ok((letter, exp))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RewriteError {
    /// No cyclic conjugate of the word ends in a negative power of `B`;
    /// the caller should fall back to direct evaluation.
    NoNegativeBSyllable,
    /// The word does not end in a negative power of `B`.
    NoNegativeBSuffix,
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::NoNegativeBSyllable => {
                write!(f, "no cyclic conjugate ends in a negative power of B")
            }
            RewriteError::NoNegativeBSuffix => {
                write!(f, "word does not end in a negative power of B")
            }
        }
    }
}

/// A word together with the conjugator that produced it: `word = c w c^-1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Conjugation {
    pub word: WordAB,
    pub conjugator: WordAB,
}

/// Cyclically reduce `w` and rotate it so the last syllable is `B^-i`,
/// `i >= 1`. Returns the rotated word `w' = c w c^-1` along with `c`;
/// `w'` evaluates to the identity iff `w` does.
pub fn conjugate_to_b_neg_suffix(w: &WordAB) -> Result<Conjugation, RewriteError> {
    // peel matching head/tail letters: X^a u X^b -> u X^(a+b), conjugating
    // by X^-a
    let mut word = w.clone();
    let mut conjugator = WordAB::default();
    loop {
        let s = word.syllables();
        if s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
            let (letter, head) = s[0];
            let step = WordAB::from_syllables([(letter, -head)]);
            word = step.concat(&word).concat(&step.inverse());
            conjugator = step.concat(&conjugator);
        } else {
            break;
        }
    }

    if let Some(&(Letter::B, e)) = word.syllables().last() {
        if e < 0 {
            return Ok(Conjugation { word, conjugator });
        }
    }
    // rotate the earliest negative-B syllable to the end
    let split = word
        .syllables()
        .iter()
        .position(|&(l, e)| l == Letter::B && e < 0)
        .ok_or(RewriteError::NoNegativeBSyllable)?;
    let head = WordAB::from_syllables(word.syllables()[..=split].iter().copied());
    let rotated = WordAB::from_syllables(
        word.syllables()[split + 1..]
            .iter()
            .chain(word.syllables()[..=split].iter())
            .copied(),
    );
    Ok(Conjugation {
        word: rotated,
        conjugator: head.inverse().concat(&conjugator),
    })
}

/// Interior T power of the canonical form: always `+-1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TPower {
    Plus,
    Minus,
}

impl TPower {
    pub fn exponent(self) -> i64 {
        match self {
            TPower::Plus => 1,
            TPower::Minus => -1,
        }
    }
}

/// Canonical word shape `T^m B^nk T^m(k-1) ... T^m1 B^n1 T^2`:
/// a leading T power `m` in `{-1, 0, 1, 2}`, `k >= 1` positive B runs and
/// `k - 1` interior T powers `+-1`, plus the implicit trailing `T^2`.
///
/// `b_runs` and `t_powers` are stored in application order: `b_runs[0]`
/// is the run applied first (rightmost in the written form), and
/// `t_powers[i]` is applied between `b_runs[i]` and `b_runs[i + 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    lead: i8,
    b_runs: Vec<u64>,
    t_powers: Vec<TPower>,
}

impl NormalForm {
    pub fn new(lead: i8, b_runs: Vec<u64>, t_powers: Vec<TPower>) -> Option<NormalForm> {
        let shape_ok = (-1..=2).contains(&lead)
            && !b_runs.is_empty()
            && b_runs.iter().all(|&n| n >= 1)
            && t_powers.len() == b_runs.len() - 1;
        shape_ok.then_some(NormalForm { lead, b_runs, t_powers })
    }

    pub fn lead(&self) -> i8 {
        self.lead
    }

    pub fn b_runs(&self) -> &[u64] {
        &self.b_runs
    }

    pub fn t_powers(&self) -> &[TPower] {
        &self.t_powers
    }

    /// Ordered matrix product of the written form.
    pub fn evaluate(&self, consts: &BurauConstants) -> Mat3 {
        let mut m = consts.t_sq.clone();
        for (i, &n) in self.b_runs.iter().enumerate() {
            let run = consts.b.pow(n as i64).expect("positive power");
            m = &run * &m;
            if let Some(tp) = self.t_powers.get(i) {
                let t = match tp {
                    TPower::Plus => &consts.t,
                    TPower::Minus => &consts.t_inv,
                };
                m = t * &m;
            }
        }
        match self.lead {
            0 => m,
            1 => &consts.t * &m,
            -1 => &consts.t_inv * &m,
            2 => &consts.t_sq * &m,
            _ => unreachable!("lead is confined to -1..=2"),
        }
    }

    pub fn evaluate_over(&self, ctx: Modulus) -> Mat3 {
        self.evaluate(&BurauConstants::new(ctx))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^{}", self.lead)?;
        for (i, &n) in self.b_runs.iter().enumerate().rev() {
            write!(f, " . B^{}", n)?;
            if i > 0 {
                write!(f, " . T^{}", self.t_powers[i - 1].exponent())?;
            }
        }
        write!(f, " . T^2")
    }
}

/// Rewrite a freely reduced word with a `B^-i` suffix into its canonical
/// form. The substitution for `A` follows the adjudicated `rule`; the
/// result evaluates to exactly the same matrix as `w`.
pub fn to_normal_form(w: &WordAB, rule: AConjugation) -> Result<NormalForm, RewriteError> {
    match w.syllables().last() {
        Some(&(Letter::B, e)) if e < 0 => {}
        _ => return Err(RewriteError::NoNegativeBSuffix),
    }

    // substitution: each syllable becomes T^pre B^run T^post in written
    // order, with A^e = T B^e T^-1 or T^-1 B^e T depending on the rule
    let (a_pre, a_post) = match rule {
        AConjugation::ByT => (1i64, -1i64),
        AConjugation::ByTInv => (-1, 1),
    };

    // scan left to right, keeping the T exponent accumulated since the
    // last B run; `t_before[i]` ends up directly left of `runs[i]`
    let mut t_before: Vec<i64> = Vec::new();
    let mut runs: Vec<u64> = Vec::new();
    let mut pending = 0i64;
    for &(letter, exp) in w.syllables() {
        let (pre, run, post) = match (letter, exp > 0) {
            (Letter::A, true) => (a_pre, exp as u64, a_post),
            (Letter::A, false) => (-a_pre, (-exp) as u64, -a_post),
            (Letter::B, true) => (0, exp as u64, 0),
            (Letter::B, false) => (2, (-exp) as u64, 2),
        };
        pending = (pending + pre).rem_euclid(4);
        if pending == 0 && !runs.is_empty() {
            // a T^0 between two B runs merges them
            *runs.last_mut().unwrap() += run;
            // t_before of the merged run is unchanged
        } else {
            t_before.push(pending);
            runs.push(run);
        }
        pending = post.rem_euclid(4);
    }
    // the suffix B^-i closed with T^2, which is the trailing factor of the
    // canonical form
    debug_assert_eq!(pending, 2);
    debug_assert_eq!(t_before.len(), runs.len());

    // written order -> application order
    runs.reverse();
    t_before.reverse();
    let lead_raw = t_before.pop().expect("at least one B run");
    let lead = if lead_raw == 3 { -1 } else { lead_raw as i8 };
    let t_powers: Vec<TPower> = t_before
        .into_iter()
        .map(|e| match e {
            1 => TPower::Plus,
            3 => TPower::Minus,
            // a freely reduced word never leaves an interior power of 0 or
            // 2: adjacent substituted syllables always combine to T^(+-1)
            other => unreachable!("interior T power {} in canonical form", other),
        })
        .collect();

    Ok(NormalForm { lead, b_runs: runs, t_powers })
}

/// Exponent conditions under which the ping-pong certifier is guaranteed
/// to succeed: in application order, a B run following a `T` step must
/// have length at least 2, one following a `T^-1` step at least 3. The
/// first run (right after the trailing `T^2`) is unconstrained.
pub fn pingpong_conditions(nf: &NormalForm) -> bool {
    nf.t_powers().iter().zip(nf.b_runs().iter().skip(1)).all(
        |(tp, &n)| match tp {
            TPower::Plus => n >= 2,
            TPower::Minus => n >= 3,
        },
    )
}
