mod args;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::Parser;
use serde_json::{json, Map, Value};
use theta_core::cosets::{cusp_class_representatives, image_order, witness};
use theta_core::multiplier::branch_value;
use theta_core::verify::{any_failure, parse_suites};
use theta_core::{
    branch_of, coset_rep_of, coset_reps, cusp_class_count, cusp_equivalent,
    in_kernel_by_congruence, in_kernel_by_value, index, kernel_coset_reps, membership, nu,
    nu_power, run_suites, verify_residue_lemma, PowerClass, SuiteConfig, Verdict,
};

use args::{Cli, Command};

/// Outcome of a successfully parsed command.
enum Status {
    Ok,
    VerificationFailed,
}

/// A command-level input problem, reported like a usage error.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

fn fields(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("records are JSON objects"),
    }
}

fn strings<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|x| Value::String(x.to_string())).collect())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Status, Usage> {
    match cli.command {
        Command::Membership { target, output } => {
            let member = membership(&target.matrix, target.level.modulus())?;
            let rec = json!({
                "matrix": target.matrix,
                "level": target.level,
                "member": member,
            });
            output::record(out, output.format, &fields(rec))?;
        }

        Command::Multiplier { target, k, output } => {
            let (m, level) = (&target.matrix, target.level);
            let branch = branch_of(m, level)?;
            let value = nu(m, level)?;
            let mut rec = json!({
                "matrix": m,
                "level": level,
                "residue_class": branch.residue_class,
                "c_parity": branch.c_parity,
                "exponent": branch_value(m, level)?.to_string(),
                "nu": value.fraction(),
                "value": value.short_name(),
            });
            if let Some(k) = k {
                let power = nu_power(m, level, k)?;
                rec["k"] = json!(k);
                rec["nu_k"] = json!(power.fraction());
                rec["value_k"] = json!(power.short_name());
            }
            output::record(out, output.format, &fields(rec))?;
        }

        Command::Kernel {
            level,
            k,
            matrix,
            lemma,
            box_bound,
            output,
        } => {
            if let Some(id) = lemma {
                let report = verify_residue_lemma(id, box_bound);
                let rec = serde_json::to_value(&report)?;
                output::record(out, output.format, &fields(rec))?;
                return Ok(if report.verdict == Verdict::Fail {
                    Status::VerificationFailed
                } else {
                    Status::Ok
                });
            }
            let level =
                level.ok_or_else(|| anyhow!("--level is required unless --lemma is given"))?;
            let k = k.ok_or_else(|| anyhow!("--k is required unless --lemma is given"))?;
            let pc = PowerClass::new(k, level);
            let reps = kernel_coset_reps(pc);
            let mut rec = json!({
                "level": level,
                "k_mod_12": pc.k_mod_12(),
                "family": pc.family(),
                "image_size": pc.image_size(),
                "coset_reps": strings(&reps),
            });
            let mut status = Status::Ok;
            if let Some(m) = matrix {
                let by_value = in_kernel_by_value(&m, pc)?;
                let by_congruence = in_kernel_by_congruence(&m, pc)?;
                rec["matrix"] = json!(m);
                rec["in_kernel"] = json!(by_value);
                rec["by_congruence"] = json!(by_congruence);
                if by_value != by_congruence {
                    status = Status::VerificationFailed;
                }
            }
            output::record(out, output.format, &fields(rec))?;
            return Ok(status);
        }

        Command::Cosets {
            level,
            matrix,
            output,
        } => {
            let reps = coset_reps(level);
            let mut rec = json!({
                "level": level,
                "reps": strings(&reps),
                "image_order": image_order(level),
                "index": index(level),
            });
            if let Some(m) = matrix {
                let i = coset_rep_of(&m, level)?;
                rec["matrix"] = json!(m);
                rec["coset"] = json!(i);
                rec["rep"] = json!(reps[i]);
            }
            output::record(out, output.format, &fields(rec))?;
        }

        Command::Cusp {
            level,
            from,
            to,
            output,
        } => {
            let rec = match (from, to) {
                (Some(x), Some(y)) => json!({
                    "level": level,
                    "from": x,
                    "to": y,
                    "equivalent": cusp_equivalent(&x, &y, level),
                    "witness": witness(&x, &y, level).map(|g| g.to_string()),
                }),
                _ => json!({
                    "level": level,
                    "class_count": cusp_class_count(level),
                    "representatives": strings(&cusp_class_representatives(level)),
                }),
            };
            output::record(out, output.format, &fields(rec))?;
        }

        Command::Verify {
            suite,
            samples,
            seed,
            tol,
            box_bound,
            output,
        } => {
            let suites = parse_suites(&suite)?;
            let mut cfg = SuiteConfig::with_samples(samples, seed);
            if let Some(tol) = tol {
                cfg.oracle.compare_tol = tol;
            }
            if let Some(b) = box_bound {
                cfg.lemma_box = b;
            }
            cfg.oracle.validate()?;
            let results = run_suites(&suites, &cfg);
            output::checks(out, output.format, &results)?;
            if any_failure(&results) {
                return Ok(Status::VerificationFailed);
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(Usage(e))
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(Usage(e)) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
