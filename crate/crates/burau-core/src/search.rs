//! Exhaustive enumeration of freely reduced words over `{A, B}` or
//! `{A^3, B^3}` with an identity scan, and, for the cube alphabet, a
//! certificate run over every word that admits a `B^-i`-suffix conjugate.
//!
//! Words are visited in canonical depth-first order, extending one letter
//! at a time and reusing the prefix product, so each node costs exactly one
//! matrix multiplication. Subtrees are independent: a parallel driver can
//! partition the tree by prefix and merge the outcomes.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use core::fmt;

use crate::burau::{verify_identities, AConjugation, BurauConstants};
use crate::linalg::Mat3;
use crate::rewrite::{conjugate_to_b_neg_suffix, to_normal_form, Letter, WordAB};
use crate::pingpong::certify_with;
use crate::ring::Modulus;

/// Search alphabet: plain letters with exponents `+-1`, or cubes with
/// exponents `+-3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Alphabet {
    Ab,
    A3b3,
}

impl Alphabet {
    pub fn exponent(self) -> i64 {
        match self {
            Alphabet::Ab => 1,
            Alphabet::A3b3 => 3,
        }
    }

    /// Hard bound on the word length, keeping runs desk-scale.
    pub fn cap(self) -> u32 {
        match self {
            Alphabet::Ab => 12,
            Alphabet::A3b3 => 6,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Ab => write!(f, "ab"),
            Alphabet::A3b3 => write!(f, "a3b3"),
        }
    }
}

/// One letter of the abstract search word: a generator and a sign.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SearchLetter {
    pub letter: Letter,
    pub inverse: bool,
}

/// Canonical extension order.
const LETTERS: [SearchLetter; 4] = [
    SearchLetter { letter: Letter::A, inverse: false },
    SearchLetter { letter: Letter::A, inverse: true },
    SearchLetter { letter: Letter::B, inverse: false },
    SearchLetter { letter: Letter::B, inverse: true },
];

fn cancels(a: SearchLetter, b: SearchLetter) -> bool {
    a.letter == b.letter && a.inverse != b.inverse
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchError {
    InvalidMaxSyllables { requested: u32, cap: u32 },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::InvalidMaxSyllables { requested, cap } => write!(
                f,
                "max syllables {} out of range (expected 1..={})",
                requested, cap
            ),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchConfig {
    alphabet: Alphabet,
    max_syllables: u32,
    modulus: Modulus,
}

impl SearchConfig {
    pub fn new(
        alphabet: Alphabet,
        max_syllables: u32,
        modulus: Modulus,
    ) -> Result<SearchConfig, SearchError> {
        if max_syllables == 0 || max_syllables > alphabet.cap() {
            return Err(SearchError::InvalidMaxSyllables {
                requested: max_syllables,
                cap: alphabet.cap(),
            });
        }
        Ok(SearchConfig { alphabet, max_syllables, modulus })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn max_syllables(&self) -> u32 {
        self.max_syllables
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
}

/// Aggregated result of a (partial) search. Merging is associative and the
/// final report is independent of how the word tree was partitioned.
#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub words_examined: u64,
    /// Words whose matrix is the identity. Expected empty; any entry is a
    /// finding about the representation, not a failure of the search.
    pub identity_hits: Vec<WordAB>,
    /// Words certified non-identity by a true-verdict certificate.
    pub certificates_issued: u64,
    /// Words with no negative B power in their cyclic reduction; covered
    /// by the direct identity scan only.
    pub direct_eval_only: u64,
    /// Certificate runs that broke the schedule or came back without a
    /// true verdict, with a description. Expected empty.
    pub schedule_violations: Vec<String>,
}

impl SearchOutcome {
    pub fn merge(&mut self, other: SearchOutcome) {
        self.words_examined += other.words_examined;
        self.identity_hits.extend(other.identity_hits);
        self.certificates_issued += other.certificates_issued;
        self.direct_eval_only += other.direct_eval_only;
        self.schedule_violations.extend(other.schedule_violations);
    }

    /// Canonical ordering of the hit and violation lists, so that serial
    /// and partitioned runs report identically.
    pub fn finalize(&mut self) {
        let key = |w: &WordAB| {
            (
                w.syllables().iter().map(|&(_, e)| e.unsigned_abs()).sum::<u64>(),
                w.to_string(),
            )
        };
        self.identity_hits.sort_by_key(key);
        self.schedule_violations.sort();
    }
}

/// Number of freely reduced words of length 1..=`max_len` over either
/// alphabet: `sum of 4 * 3^(k-1)`.
pub fn reduced_word_count(max_len: u32) -> u64 {
    (1..=max_len).map(|k| 4 * 3u64.pow(k - 1)).sum()
}

/// All freely reduced letter sequences of exactly `len` letters, in
/// canonical order. Used to partition the tree for parallel drivers.
pub fn words_of_length(len: u32) -> Vec<Vec<SearchLetter>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(len as usize);
    fn rec(word: &mut Vec<SearchLetter>, len: u32, out: &mut Vec<Vec<SearchLetter>>) {
        if word.len() == len as usize {
            out.push(word.clone());
            return;
        }
        for l in LETTERS {
            if let Some(&last) = word.last() {
                if cancels(last, l) {
                    continue;
                }
            }
            word.push(l);
            rec(word, len, out);
            word.pop();
        }
    }
    rec(&mut word, len, &mut out);
    out
}

/// The four letter matrices for the configured alphabet.
fn letter_matrices(config: &SearchConfig, consts: &BurauConstants) -> [Mat3; 4] {
    let e = config.alphabet.exponent();
    [
        consts.a.pow(e).expect("positive power"),
        consts.a_inv.pow(e).expect("positive power"),
        consts.b.pow(e).expect("positive power"),
        consts.b_inv.pow(e).expect("positive power"),
    ]
}

fn to_word_ab(letters: &[SearchLetter], exponent: i64) -> WordAB {
    WordAB::from_syllables(letters.iter().map(|l| {
        (l.letter, if l.inverse { -exponent } else { exponent })
    }))
}

struct SearchDriver<'a> {
    config: &'a SearchConfig,
    consts: &'a BurauConstants,
    rule: AConjugation,
    mats: [Mat3; 4],
    outcome: SearchOutcome,
}

impl SearchDriver<'_> {
    fn process(&mut self, letters: &[SearchLetter], product: &Mat3) {
        self.outcome.words_examined += 1;
        let exponent = self.config.alphabet.exponent();
        if product.is_identity() {
            self.outcome
                .identity_hits
                .push(to_word_ab(letters, exponent));
        }
        if self.config.alphabet != Alphabet::A3b3 {
            return;
        }
        // certificate pipeline for every word with a B^-i-suffix conjugate
        let word = to_word_ab(letters, exponent);
        let conj = match conjugate_to_b_neg_suffix(&word) {
            Ok(c) => c,
            Err(_) => {
                self.outcome.direct_eval_only += 1;
                return;
            }
        };
        let nf = match to_normal_form(&conj.word, self.rule) {
            Ok(nf) => nf,
            Err(e) => {
                // conjugation just produced the suffix; failing here is a bug
                self.outcome
                    .schedule_violations
                    .push(alloc::format!("{}: {}", word, e));
                return;
            }
        };
        match certify_with(&nf, self.consts) {
            Ok(cert) if cert.verdict => self.outcome.certificates_issued += 1,
            Ok(_) => self.outcome.schedule_violations.push(alloc::format!(
                "{}: certificate ended back at the base vector",
                word
            )),
            Err(e) => self
                .outcome
                .schedule_violations
                .push(alloc::format!("{}: {}", word, e)),
        }
    }

    fn extend(&mut self, letters: &mut Vec<SearchLetter>, product: &Mat3) {
        if letters.len() as u32 >= self.config.max_syllables {
            return;
        }
        for (i, l) in LETTERS.into_iter().enumerate() {
            if let Some(&last) = letters.last() {
                if cancels(last, l) {
                    continue;
                }
            }
            let next = product * &self.mats[i];
            letters.push(l);
            self.process(letters, &next);
            self.extend(letters, &next);
            letters.pop();
        }
    }
}

/// Search the subtree rooted at `prefix`: the prefix word itself (when
/// non-empty) and, when `extend` is set, all of its extensions up to the
/// configured length.
pub fn search_subtree(
    config: &SearchConfig,
    consts: &BurauConstants,
    rule: AConjugation,
    prefix: &[SearchLetter],
    extend: bool,
) -> SearchOutcome {
    let mats = letter_matrices(config, consts);
    let mut product = Mat3::identity(config.modulus);
    for (i, l) in prefix.iter().enumerate() {
        debug_assert!(i == 0 || !cancels(prefix[i - 1], *l), "prefix must be reduced");
        let idx = LETTERS.iter().position(|x| x == l).expect("known letter");
        product = &product * &mats[idx];
    }
    let mut driver = SearchDriver {
        config,
        consts,
        rule,
        mats,
        outcome: SearchOutcome::default(),
    };
    if !prefix.is_empty() {
        driver.process(prefix, &product);
    }
    if extend {
        let mut letters = prefix.to_vec();
        driver.extend(&mut letters, &product);
    }
    driver.outcome
}

/// Full serial search over all freely reduced words up to the configured
/// length, in canonical depth-first order.
pub fn run_search(config: &SearchConfig) -> SearchOutcome {
    let consts = BurauConstants::new(config.modulus);
    let rule = verify_identities(config.modulus)
        .a_conjugation()
        .expect("identity suite adjudicates the substitution rule");
    let mut outcome = search_subtree(config, &consts, rule, &[], true);
    outcome.finalize();
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Modulus {
        Modulus::INTEGERS
    }

    fn zp(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(Alphabet::Ab, 12, z()).is_ok());
        assert!(SearchConfig::new(Alphabet::Ab, 13, z()).is_err());
        assert!(SearchConfig::new(Alphabet::A3b3, 0, z()).is_err());
        assert!(SearchConfig::new(Alphabet::A3b3, 7, z()).is_err());
    }

    #[test]
    fn enumeration_matches_the_count_formula() {
        for max in 1..=6u32 {
            let config = SearchConfig::new(Alphabet::Ab, max, zp(2)).unwrap();
            let outcome = run_search(&config);
            assert_eq!(outcome.words_examined, reduced_word_count(max));
        }
        assert_eq!(reduced_word_count(5), 484);
        assert_eq!(reduced_word_count(12), 1_062_880);
    }

    #[test]
    fn words_of_length_are_reduced_complete_and_distinct() {
        for len in 1..=5u32 {
            let words = words_of_length(len);
            assert_eq!(words.len() as u64, 4 * 3u64.pow(len - 1));
            for w in &words {
                for pair in w.windows(2) {
                    assert!(!cancels(pair[0], pair[1]));
                }
            }
            let distinct: std::collections::BTreeSet<_> = words.iter().collect();
            assert_eq!(distinct.len(), words.len());
        }
    }

    #[test]
    fn single_letters_are_not_identity() {
        let config = SearchConfig::new(Alphabet::Ab, 1, z()).unwrap();
        let outcome = run_search(&config);
        assert_eq!(outcome.words_examined, 4);
        assert!(outcome.identity_hits.is_empty());
    }

    #[test]
    fn small_ab_search_is_hit_free() {
        let config = SearchConfig::new(Alphabet::Ab, 6, z()).unwrap();
        let outcome = run_search(&config);
        assert_eq!(outcome.words_examined, reduced_word_count(6));
        assert!(outcome.identity_hits.is_empty());
    }

    #[test]
    fn small_cube_search_certifies_every_eligible_word() {
        for p in [2u64, 3] {
            let config = SearchConfig::new(Alphabet::A3b3, 4, zp(p)).unwrap();
            let outcome = run_search(&config);
            assert_eq!(outcome.words_examined, reduced_word_count(4));
            assert!(outcome.identity_hits.is_empty());
            assert!(outcome.schedule_violations.is_empty(), "{:?}", outcome.schedule_violations);
            assert_eq!(
                outcome.certificates_issued + outcome.direct_eval_only,
                outcome.words_examined
            );
            assert!(outcome.certificates_issued > 0);
        }
    }

    #[test]
    fn subtree_partition_reproduces_the_serial_outcome() {
        let config = SearchConfig::new(Alphabet::A3b3, 4, zp(3)).unwrap();
        let serial = run_search(&config);

        let consts = BurauConstants::new(config.modulus());
        let rule = verify_identities(config.modulus()).a_conjugation().unwrap();
        let mut merged = SearchOutcome::default();
        // words shorter than the partition depth, no extension
        for len in 1..2u32 {
            for w in words_of_length(len) {
                merged.merge(search_subtree(&config, &consts, rule, &w, false));
            }
        }
        for w in words_of_length(2) {
            merged.merge(search_subtree(&config, &consts, rule, &w, true));
        }
        merged.finalize();

        assert_eq!(merged.words_examined, serial.words_examined);
        assert_eq!(merged.identity_hits, serial.identity_hits);
        assert_eq!(merged.certificates_issued, serial.certificates_issued);
        assert_eq!(merged.direct_eval_only, serial.direct_eval_only);
        assert_eq!(merged.schedule_violations, serial.schedule_violations);
    }
}
