//! Execution of a resolved [`RunConfig`] into a JSON report and an exit code.

use dorth_core::eigen::{eigen_mps, verify_eigen};
use dorth_core::hahn::{hahn_check, j_expansion_check, lemma_identities_check, HahnVerdict};
use dorth_core::pipeline::{run_theorem4, run_theorem5, Outcome, PipelineConfig};
use dorth_core::poly::format_rational;
use dorth_core::sample::{draw_rng, theorem4_draw, theorem5_draw};
use dorth_core::two_orth::{
    check_dual_identities, dual_sequence, fit_2orth_recurrence, generate, DualPair,
};
use dorth_core::{CheckLine, DiffOperator, Error, LoweringClass, Mps, Rational};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Mode, RunConfig, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Passed = 0,
    Violated = 1,
    OutOfScope = 2,
    InputError = 3,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn of(outcome: &Outcome) -> Self {
        match outcome {
            Outcome::Passed(_) => ExitKind::Passed,
            Outcome::OutOfScope { .. } => ExitKind::OutOfScope,
            Outcome::Violated { .. } => ExitKind::Violated,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub body: Value,
    pub exit: ExitKind,
    /// One-line verdict for standard output.
    pub verdict: String,
}

impl Report {
    /// Pretty JSON with a trailing newline; keys are sorted, so equal
    /// reports are byte-identical.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body).expect("report is plain JSON");
        s.push('\n');
        s
    }
}

fn pipeline_config(cfg: &RunConfig) -> PipelineConfig {
    PipelineConfig {
        moment_order: cfg.moment_order,
        check_order: cfg.check_order,
        ..PipelineConfig::default()
    }
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn poly_table(p: &Mps) -> Vec<Vec<String>> {
    p.polys().iter().map(|q| rats(q.coeffs())).collect()
}

fn checks_json(lines: &[CheckLine]) -> Value {
    serde_json::to_value(lines).expect("check lines serialize")
}

pub fn cmd_run(cfg: &RunConfig) -> Report {
    match cfg.mode {
        Mode::Classify => classify(cfg),
        Mode::Eigensolve => eigensolve(cfg),
        Mode::VerifyTheorem4 => {
            let j = cfg.operator.as_ref().expect("validated");
            theorem_report(cfg, j, None, run_theorem4(j, &pipeline_config(cfg)))
        }
        Mode::VerifyTheorem5 => {
            let j = cfg.operator.as_ref().expect("validated");
            let tau = cfg.tau.as_ref().expect("validated");
            theorem_report(cfg, j, Some(tau), run_theorem5(j, tau, &pipeline_config(cfg)))
        }
        Mode::VerifyIdentities => identities(cfg),
        Mode::Hahn => hahn(cfg),
        Mode::Sweep => cmd_sweep(cfg),
    }
}

fn classify(cfg: &RunConfig) -> Report {
    let j = cfg.operator.as_ref().expect("validated");
    match j.classify_order(cfg.n_max) {
        Ok(LoweringClass::Lowering { k, lambdas, horizon }) => Report {
            body: json!({
                "mode": "classify",
                "verdict": "classified",
                "operator": j,
                "k": k,
                "lambdas": rats(&lambdas),
                "horizon": horizon,
                "isomorphism": k == 0,
            }),
            exit: ExitKind::Passed,
            verdict: format!("classify: lowering order k={k} (lambda nonzero for n <= {horizon})"),
        },
        Ok(LoweringClass::NotClassifiable { reason }) => Report {
            body: json!({
                "mode": "classify",
                "verdict": "not-classifiable",
                "operator": j,
                "reason": reason,
                "horizon": cfg.n_max,
            }),
            exit: ExitKind::OutOfScope,
            verdict: format!("classify: not classifiable ({reason})"),
        },
        Err(e) => input_error(cfg.mode, e.to_string()),
    }
}

fn eigensolve(cfg: &RunConfig) -> Report {
    let j = cfg.operator.as_ref().expect("validated");
    match eigen_mps(j, cfg.n_max) {
        Ok((p, lambdas)) => {
            let verified = verify_eigen(j, &p, &lambdas);
            let fit = match fit_2orth_recurrence(&p) {
                Ok(rc) => json!({ "two_orthogonal": true, "recurrence": rc }),
                Err(e) => json!({ "two_orthogonal": false, "reason": e.to_string() }),
            };
            let exit = if verified { ExitKind::Passed } else { ExitKind::Violated };
            Report {
                body: json!({
                    "mode": "eigensolve",
                    "verdict": if verified { "passed" } else { "violated" },
                    "operator": j,
                    "lambdas": rats(&lambdas),
                    "polynomials": poly_table(&p),
                    "checks": [{ "tag": "Eq-eigen", "horizon": cfg.n_max }],
                    "fit": fit,
                }),
                exit,
                verdict: format!(
                    "eigensolve: {} eigenpolynomials up to degree {}",
                    if verified { "verified" } else { "UNVERIFIED" },
                    cfg.n_max
                ),
            }
        }
        Err(e @ (Error::RepeatedEigenvalue { .. } | Error::NonInvertible { .. })) => {
            out_of_scope(cfg.mode, e.to_string())
        }
        Err(e) => input_error(cfg.mode, e.to_string()),
    }
}

fn theorem_report(cfg: &RunConfig, j: &DiffOperator, tau: Option<&Rational>, outcome: Outcome) -> Report {
    let mode = cfg.mode;
    let exit = ExitKind::of(&outcome);
    let verdict = match &outcome {
        Outcome::Passed(r) => format!(
            "{}: passed ({} checks, identities to moment {})",
            mode.name(),
            r.checks.len(),
            cfg.check_order
        ),
        Outcome::OutOfScope { reason } => format!("{}: hypotheses unmet ({reason})", mode.name()),
        Outcome::Violated { error } => format!("{}: VIOLATED ({error})", mode.name()),
    };
    let mut body = json!({
        "mode": mode.name(),
        "verdict": outcome.label(),
        "operator": j,
        "outcome": outcome,
    });
    if let Some(t) = tau {
        body["tau"] = json!(format_rational(t));
    }
    Report { body, exit, verdict }
}

/// The sequence under test: the eigen-sequence of the operator, or the one
/// generated by the recurrence.
fn subject(cfg: &RunConfig, degree: usize) -> Result<Mps, Report> {
    if let Some(j) = &cfg.operator {
        return match eigen_mps(j, degree) {
            Ok((p, _)) => Ok(p),
            Err(e @ (Error::RepeatedEigenvalue { .. } | Error::NonInvertible { .. })) => {
                Err(out_of_scope(cfg.mode, e.to_string()))
            }
            Err(e) => Err(input_error(cfg.mode, e.to_string())),
        };
    }
    let rc = cfg.recurrence.as_ref().expect("validated");
    generate(rc, degree).map_err(|e| input_error(cfg.mode, e.to_string()))
}

fn identities(cfg: &RunConfig) -> Report {
    let p = match subject(cfg, cfg.moment_order) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let rc = match &cfg.recurrence {
        Some(rc) if cfg.operator.is_none() => rc.clone(),
        _ => match fit_2orth_recurrence(&p) {
            Ok(rc) => rc,
            Err(e) => return out_of_scope(cfg.mode, format!("sequence is not 2-orthogonal: {e}")),
        },
    };
    let m = cfg.check_order;
    let run = || -> Result<Vec<CheckLine>, Error> {
        let duals = dual_sequence(&p, 6, cfg.moment_order)?;
        let mut lines = check_dual_identities(&rc, &p, &duals, m)?;
        if let Some(j) = &cfg.operator {
            if j.coeffs().len() <= 4 {
                lines.extend(j_expansion_check(j, &rc, &duals, m)?);
                lines.extend(lemma_identities_check(j, &rc, &DualPair::from_duals(&duals), m)?);
            }
        }
        Ok(lines)
    };
    match run() {
        Ok(lines) => Report {
            verdict: format!("verify-identities: passed ({} checks, moment horizon {m})", lines.len()),
            body: json!({
                "mode": "verify-identities",
                "verdict": "passed",
                "recurrence": rc.truncated(8),
                "checks": checks_json(&lines),
            }),
            exit: ExitKind::Passed,
        },
        Err(e @ Error::IdentityViolated { .. }) => Report {
            verdict: format!("verify-identities: VIOLATED ({e})"),
            body: json!({ "mode": "verify-identities", "verdict": "violated", "error": e.to_string() }),
            exit: ExitKind::Violated,
        },
        Err(e) => out_of_scope(cfg.mode, e.to_string()),
    }
}

fn hahn(cfg: &RunConfig) -> Report {
    let p = match subject(cfg, cfg.n_max) {
        Ok(s) => s,
        Err(r) => return r,
    };
    match hahn_check(&p) {
        Ok(HahnVerdict::Classical(rc)) => Report {
            verdict: format!("hahn: classical (derivative sequence 2-orthogonal to n = {})", cfg.n_max - 1),
            body: json!({
                "mode": "hahn",
                "verdict": "classical",
                "horizon": cfg.n_max - 1,
                "derivative_recurrence": rc,
            }),
            exit: ExitKind::Passed,
        },
        Ok(HahnVerdict::NotClassical(e)) => Report {
            verdict: format!("hahn: not classical ({e})"),
            body: json!({
                "mode": "hahn",
                "verdict": "not-classical",
                "horizon": cfg.n_max - 1,
                "witness": e.to_string(),
            }),
            exit: ExitKind::Violated,
        },
        Err(e) => input_error(cfg.mode, e.to_string()),
    }
}

fn out_of_scope(mode: Mode, reason: String) -> Report {
    Report {
        verdict: format!("{}: hypotheses unmet ({reason})", mode.name()),
        body: json!({ "mode": mode.name(), "verdict": "hypotheses-unmet", "reason": reason }),
        exit: ExitKind::OutOfScope,
    }
}

pub fn input_error(mode: Mode, message: String) -> Report {
    Report {
        verdict: format!("{}: input error ({message})", mode.name()),
        body: json!({ "mode": mode.name(), "verdict": "input-error", "error": message }),
        exit: ExitKind::InputError,
    }
}

/// One sweep draw: the instance and its outcome.
fn sweep_draw(cfg: &RunConfig, index: usize) -> (Value, Outcome) {
    let mut rng = draw_rng(cfg.seed, index as u64);
    let pc = pipeline_config(cfg);
    match cfg.suite {
        Suite::Theorem4 => {
            let d = theorem4_draw(&mut rng);
            let outcome = run_theorem4(&d.operator, &pc);
            (json!({ "operator": d.operator, "shape": d.shape }), outcome)
        }
        Suite::Theorem5 => {
            let d = theorem5_draw(&mut rng);
            let outcome = run_theorem5(&d.operator, &d.tau, &pc);
            (
                json!({ "operator": d.operator, "tau": format_rational(&d.tau), "shape": d.shape }),
                outcome,
            )
        }
    }
}

/// `draws` seeded instances of the selected suite, run in parallel and
/// reported in draw order.
///
/// Exit code: 1 if any draw is violated, otherwise 2 if none passed,
/// otherwise 0.
pub fn cmd_sweep(cfg: &RunConfig) -> Report {
    let results: Vec<(Value, Outcome)> = (0..cfg.draws).into_par_iter().map(|i| sweep_draw(cfg, i)).collect();
    let count = |label: &str| results.iter().filter(|(_, o)| o.label() == label).count();
    let (passed, unmet, violated) = (count("passed"), count("hypotheses-unmet"), count("violated"));
    let instances: Vec<Value> = results
        .iter()
        .enumerate()
        .map(|(i, (inst, outcome))| {
            let mut v = inst.clone();
            v["index"] = json!(i);
            v["outcome"] = json!(outcome);
            v
        })
        .collect();
    let dumps: Vec<Value> = instances
        .iter()
        .filter(|v| v["outcome"]["status"] == "violated")
        .cloned()
        .collect();
    let suite = match cfg.suite {
        Suite::Theorem4 => "theorem4",
        Suite::Theorem5 => "theorem5",
    };
    let exit = if violated > 0 {
        ExitKind::Violated
    } else if passed == 0 {
        ExitKind::OutOfScope
    } else {
        ExitKind::Passed
    };
    let rate = format!("{}/{}", passed + violated, cfg.draws);
    Report {
        verdict: format!(
            "sweep {suite}: {passed} passed, {unmet} hypotheses-unmet, {violated} violated (in scope {rate})"
        ),
        body: json!({
            "mode": "sweep",
            "suite": suite,
            "seed": cfg.seed,
            "draws": cfg.draws,
            "moment_order": cfg.moment_order,
            "check_order": cfg.check_order,
            "summary": {
                "passed": passed,
                "hypotheses_unmet": unmet,
                "violated": violated,
                "in_scope_rate": rate,
            },
            "violated_instances": dumps,
            "instances": instances,
        }),
        exit,
    }
}
