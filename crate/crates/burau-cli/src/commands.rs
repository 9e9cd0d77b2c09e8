//! Implementations of the subcommands. Machine-readable JSON goes to
//! stdout; a short human summary goes to stderr unless suppressed.
//!
//! Exit codes: 0 success, 1 verification or parse failure, 2 identity hit
//! (a word whose matrix is the identity -- significant, not an error).

use std::io::Read;
use std::thread;
use std::time::Instant;

use serde_json::{json, Value};

use burau_core::burau::{eval_braid, verify_identities, BraidWord};
use burau_core::pingpong::{certify_with, classify, verify_mappings, CertifyError};
use burau_core::rewrite::{
    conjugate_to_b_neg_suffix, parse_word, pingpong_conditions, to_normal_form, RewriteError,
};
use burau_core::search::{
    search_subtree, words_of_length, Alphabet, SearchConfig, SearchOutcome,
};
use burau_core::{AConjugation, BurauConstants, Modulus};

use crate::json::{certificate_json, identities_json, mappings_json, mat_json, parse_vec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_IDENTITY_HIT: i32 = 2;

pub struct Output {
    pub quiet_summary: bool,
}

impl Output {
    fn emit(&self, value: &Value) {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    }

    fn summary(&self, text: &str) {
        if !self.quiet_summary {
            eprintln!("{}", text);
        }
    }
}

fn adjudicated_rule(ctx: Modulus) -> Result<AConjugation, String> {
    verify_identities(ctx)
        .a_conjugation()
        .ok_or_else(|| "identity suite failed to adjudicate the substitution rule".to_string())
}

pub fn cmd_verify(ctx: Modulus, samples: u32, seed: u64, out: &Output) -> Result<i32, String> {
    if samples == 0 {
        return Err("--samples must be at least 1".to_string());
    }
    let identities = verify_identities(ctx);
    let mappings = verify_mappings(ctx, samples, seed);
    let pass = identities.all_pass() && mappings.all_pass() && identities.a_conjugation().is_some();
    out.emit(&json!({
        "p": ctx.p(),
        "seed": seed,
        "identities": identities_json(&identities),
        "mappings": mappings_json(&mappings),
        "pass": pass,
    }));

    if pass {
        out.summary(&format!(
            "over {}: {} identities and {} mapping checks all pass ({})",
            ctx,
            identities.checks.len(),
            mappings.checks.len(),
            identities.a_conjugation().expect("adjudicated"),
        ));
        Ok(EXIT_OK)
    } else {
        let failing = identities
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.to_string())
            .chain(
                mappings
                    .checks
                    .iter()
                    .filter(|c| c.violations > 0)
                    .map(|c| format!("{} ({} violations)", c.name, c.violations)),
            )
            .collect::<Vec<_>>()
            .join("; ");
        Err(format!("verification failed over {}: {}", ctx, failing))
    }
}

pub fn cmd_eval(
    ctx: Modulus,
    word: Option<&str>,
    braid: Option<&str>,
    check_identity: bool,
    out: &Output,
) -> Result<i32, String> {
    let matrix = match (word, braid) {
        (Some(text), None) => {
            let w = parse_word(text).map_err(|e| e.to_string())?;
            w.evaluate_over(ctx)
        }
        (None, Some(text)) => {
            let w = BraidWord::parse(text).map_err(|e| e.to_string())?;
            eval_braid(&w, ctx)
        }
        _ => return Err("exactly one of --word or --braid is required".to_string()),
    };
    let mut value = mat_json(&matrix);
    let is_id = matrix.is_identity();
    if check_identity {
        value["identity"] = Value::Bool(is_id);
    }
    out.emit(&value);
    out.summary(&format!(
        "evaluated over {}{}",
        ctx,
        if check_identity {
            if is_id { ": identity" } else { ": not the identity" }
        } else {
            ""
        }
    ));
    Ok(EXIT_OK)
}

pub fn cmd_rewrite(ctx: Modulus, text: &str, out: &Output) -> Result<i32, String> {
    let word = parse_word(text).map_err(|e| e.to_string())?;
    let conj = conjugate_to_b_neg_suffix(&word).map_err(|e| e.to_string())?;
    let rule = adjudicated_rule(ctx)?;
    let nf = to_normal_form(&conj.word, rule).map_err(|e| e.to_string())?;
    let consts = BurauConstants::new(ctx);
    let matches = nf.evaluate(&consts) == conj.word.evaluate(&consts);
    out.emit(&json!({
        "input": word.to_string(),
        "p": ctx.p(),
        "conjugated": conj.word.to_string(),
        "conjugator": conj.conjugator.to_string(),
        "normal_form": nf.to_string(),
        "pingpong_conditions": pingpong_conditions(&nf),
        "matches_direct_eval": matches,
    }));
    if !matches {
        return Err("normal form disagrees with direct evaluation".to_string());
    }
    out.summary(&format!("{}  ~  {}", word, nf));
    Ok(EXIT_OK)
}

pub fn cmd_classify(requested_mod: Option<u64>, out: &Output) -> Result<i32, String> {
    let mut input = String::new();
    std::io::stdin()
        .read_to_string(&mut input)
        .map_err(|e| format!("reading stdin: {}", e))?;
    let value: Value =
        serde_json::from_str(&input).map_err(|e| format!("invalid JSON on stdin: {}", e))?;
    let vector = parse_vec(&value)?;
    if let Some(p) = requested_mod {
        if p != vector.ctx().p() {
            return Err(format!(
                "--mod {} disagrees with the vector's modulus {}",
                p,
                vector.ctx().p()
            ));
        }
    }
    let set = classify(&vector);
    out.emit(&json!({ "set": set.to_string(), "p": vector.ctx().p() }));
    out.summary(&format!("vector classifies as {}", set));
    Ok(EXIT_OK)
}

pub fn cmd_certify(ctx: Modulus, text: &str, out: &Output) -> Result<i32, String> {
    let word = parse_word(text).map_err(|e| e.to_string())?;
    let consts = BurauConstants::new(ctx);
    let rule = adjudicated_rule(ctx)?;

    let fallback_reason = match conjugate_to_b_neg_suffix(&word) {
        Ok(conj) => {
            let nf = to_normal_form(&conj.word, rule).map_err(|e| e.to_string())?;
            if pingpong_conditions(&nf) {
                match certify_with(&nf, &consts) {
                    Ok(cert) if cert.verdict => {
                        let mut value = certificate_json(&cert);
                        value["stage"] = json!("certificate");
                        value["input"] = json!(word.to_string());
                        value["conjugated"] = json!(conj.word.to_string());
                        value["conjugator"] = json!(conj.conjugator.to_string());
                        value["identity"] = json!(false);
                        out.emit(&value);
                        out.summary(&format!(
                            "{} certified non-identity over {} in {} steps",
                            word,
                            ctx,
                            cert.steps.len()
                        ));
                        return Ok(EXIT_OK);
                    }
                    Ok(_) => "certificate-inconclusive".to_string(),
                    Err(e @ CertifyError::ScheduleViolation { .. })
                    | Err(e @ CertifyError::CrossCheckFailed) => {
                        // never silently downgraded: a broken schedule is a
                        // bug or a finding, and stops the run
                        return Err(format!("certification of {} failed: {}", word, e));
                    }
                    Err(CertifyError::ConditionsNotMet) => "conditions-not-met".to_string(),
                }
            } else {
                "conditions-not-met".to_string()
            }
        }
        Err(RewriteError::NoNegativeBSyllable) => "no-negative-b-suffix".to_string(),
        Err(e) => return Err(e.to_string()),
    };

    // explicit fallback: direct evaluation of the full matrix product
    let matrix = word.evaluate(&consts);
    let identity = matrix.is_identity();
    out.emit(&json!({
        "input": word.to_string(),
        "p": ctx.p(),
        "stage": "direct-evaluation",
        "reason": fallback_reason,
        "identity": identity,
        "matrix": mat_json(&matrix),
    }));
    if identity {
        out.summary(&format!(
            "{} evaluates to the identity over {} -- kernel element candidate",
            word, ctx
        ));
        Ok(EXIT_IDENTITY_HIT)
    } else {
        out.summary(&format!(
            "{} shown non-identity over {} by direct evaluation ({})",
            word, ctx, fallback_reason
        ));
        Ok(EXIT_OK)
    }
}

/// Partition the word tree by prefix across `workers` threads. The merged
/// outcome is identical to the serial one.
pub fn parallel_search(config: &SearchConfig, workers: usize) -> SearchOutcome {
    let consts = BurauConstants::new(config.modulus());
    let rule = verify_identities(config.modulus())
        .a_conjugation()
        .expect("identity suite adjudicates the substitution rule");

    let depth = 3u32;
    if workers <= 1 || config.max_syllables() <= depth {
        let mut outcome = search_subtree(config, &consts, rule, &[], true);
        outcome.finalize();
        return outcome;
    }

    let mut outcome = SearchOutcome::default();
    for len in 1..depth {
        for w in words_of_length(len) {
            outcome.merge(search_subtree(config, &consts, rule, &w, false));
        }
    }
    let tasks = words_of_length(depth);
    let chunk_size = tasks.len().div_ceil(workers);
    let results: Vec<SearchOutcome> = thread::scope(|scope| {
        let consts = &consts;
        let handles: Vec<_> = tasks
            .chunks(chunk_size)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|w| search_subtree(config, consts, rule, w, true))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    for r in results {
        outcome.merge(r);
    }
    outcome.finalize();
    outcome
}

pub fn cmd_search(
    alphabet: Alphabet,
    max_syllables: Option<u32>,
    ctx: Modulus,
    workers: usize,
    out: &Output,
) -> Result<i32, String> {
    let max = max_syllables.unwrap_or_else(|| alphabet.cap());
    let config = SearchConfig::new(alphabet, max, ctx).map_err(|e| e.to_string())?;

    let start = Instant::now();
    let outcome = parallel_search(&config, workers);
    let wall = start.elapsed();

    out.emit(&search_report(&config, &outcome, workers, wall.as_millis() as u64));
    out.summary(&format!(
        "{} alphabet, <= {} syllables over {}: {} words, {} identity hits, {} certificates, {} direct-eval-only, {} violations in {:.2?}",
        alphabet,
        max,
        ctx,
        outcome.words_examined,
        outcome.identity_hits.len(),
        outcome.certificates_issued,
        outcome.direct_eval_only,
        outcome.schedule_violations.len(),
        wall,
    ));
    Ok(search_exit_code(&outcome))
}

pub fn search_report(
    config: &SearchConfig,
    outcome: &SearchOutcome,
    workers: usize,
    wall_time_ms: u64,
) -> Value {
    let hits: Vec<Value> = outcome
        .identity_hits
        .iter()
        .map(|w| {
            json!({
                "word": w.to_string(),
                "matrix": mat_json(&w.evaluate_over(config.modulus())),
            })
        })
        .collect();
    json!({
        "alphabet": config.alphabet().to_string(),
        "max_syllables": config.max_syllables(),
        "p": config.modulus().p(),
        "words_examined": outcome.words_examined,
        "identity_hits": hits,
        "certificates_issued": outcome.certificates_issued,
        "direct_eval_only": outcome.direct_eval_only,
        "schedule_violations": outcome.schedule_violations,
        "workers": workers,
        "wall_time_ms": wall_time_ms,
    })
}

pub fn search_exit_code(outcome: &SearchOutcome) -> i32 {
    if !outcome.identity_hits.is_empty() {
        EXIT_IDENTITY_HIT
    } else if !outcome.schedule_violations.is_empty() {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}
