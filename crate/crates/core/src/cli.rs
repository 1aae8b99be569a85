//! Command-line front end.
//!
//! Exit codes: 0 success or clean scan, 1 counterexample found, 2 usage or
//! parse error, 3 resource guard, 4 the code is not invariant under sigma.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::aut::{is_automorphism, is_group_code, paut, quasi_group_witness, MAX_GROUP_CODE_LEN};
use crate::census::{gaussian_binomial, shard, CensusSlice, Slice};
use crate::error::{Error, Result};
use crate::fixed::{extra_automorphism, fixed_point_witness, fixed_subcode, t_sigma};
use crate::gf2::{io, LinearCode};
use crate::perm::canonical_sigma;
use crate::verify::{self, conjecture_search, SearchConfig, VerifyOptions, VerifyReport, THEOREM_IDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;
pub const EXIT_NOT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "pautkit", version, about = "Permutation automorphisms and fixed subcodes of binary linear codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weight distribution, automorphism group and sigma data of a code file.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Run a verifier by identifier (see --list).
    Verify {
        #[arg(required_unless_present = "list")]
        theorem_id: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        #[arg(long, value_enum, default_value = "json")]
        output: Output,
    },
    /// Search sigma-invariant codes for PAut(C) = <sigma>.
    Conjecture {
        #[arg(long)]
        n: usize,
        /// Single dimension; overrides --k-lo/--k-hi.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        k_lo: Option<usize>,
        #[arg(long)]
        k_hi: Option<usize>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        #[arg(long, default_value = "0/1")]
        slice: String,
        #[arg(long)]
        journal: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        output: Output,
    },
    /// Print an involutory automorphism other than sigma and how it was built.
    Witness {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Count subspaces of GF(2)^n, optionally only sigma-invariant ones.
    Census {
        #[arg(long)]
        n: usize,
        /// Dimension; all dimensions when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        sigma: bool,
        #[arg(long, default_value = "0/1")]
        slice: String,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TooLarge(_) => EXIT_TOO_LARGE,
        Error::NotInvariant => EXIT_NOT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` and runs the command, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze { path, output } => analyze(&io::read_code(&path)?, output, out),
        Command::Verify {
            theorem_id,
            list,
            n,
            trials,
            n_max,
            seed,
            jobs,
            output,
        } => {
            if list {
                for (id, what) in THEOREM_IDS {
                    writeln!(out, "{id:<10} {what}")?;
                }
                return Ok(EXIT_OK);
            }
            let opts = VerifyOptions {
                n,
                trials,
                n_max,
                seed,
                jobs: jobs as usize,
            };
            let report = verify::run(theorem_id.as_deref().unwrap_or_default(), &opts)?;
            emit_report(&report, output, out)
        }
        Command::Conjecture {
            n,
            k,
            k_lo,
            k_hi,
            jobs,
            slice,
            journal,
            output,
        } => {
            let (lo, hi) = match k {
                Some(k) => (k, k),
                None => (k_lo.unwrap_or(5), k_hi.unwrap_or(n.saturating_sub(5))),
            };
            let cfg = SearchConfig {
                n,
                k_lo: lo,
                k_hi: hi,
                slice: slice.parse()?,
                jobs: jobs as usize,
                journal,
            };
            let report = conjecture_search(&cfg)?;
            emit_report(&report, output, out)
        }
        Command::Witness { path, output } => witness(&io::read_code(&path)?, output, out),
        Command::Census {
            n,
            k,
            sigma,
            slice,
            output,
        } => census(n, k, sigma, slice.parse()?, output, out),
    }
}

fn emit_report(report: &VerifyReport, output: Output, out: &mut dyn Write) -> Result<i32> {
    match output {
        Output::Json => writeln!(out, "{}", report.to_json()?)?,
        Output::Text => {
            writeln!(out, "{}: n = {}, k in {}..={}, slice {}", report.theorem_id, report.n, report.k_range[0], report.k_range[1], report.slice)?;
            writeln!(out, "scanned {}, witnesses checked {}, {} ms", report.scanned, report.witnesses_checked, report.elapsed_ms)?;
            if report.is_clean() {
                writeln!(out, "no counterexamples")?;
            }
            for c in &report.counterexamples {
                writeln!(out, "COUNTEREXAMPLE {:?}: {}", c.generators, c.reason)?;
            }
        }
    }
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn perm_strings(perms: &[crate::perm::Perm]) -> Vec<String> {
    perms.iter().map(ToString::to_string).collect()
}

/// Fills `info` as far as the guards allow. A `TooLarge` error leaves the
/// fields computed so far in place.
fn analyze_into(code: &LinearCode, info: &mut Map<String, Value>) -> Result<()> {
    let n = code.length();
    info.insert("n".into(), json!(n));
    info.insert("k".into(), json!(code.dim()));
    let wd = code.weight_distribution()?;
    info.insert("min_weight".into(), json!(wd.min_weight()));
    info.insert("weight_distribution".into(), json!(wd.counts()));
    let report = paut(code)?;
    info.insert(
        "paut".into(),
        json!({
            "order": report.order,
            "generators": perm_strings(&report.generators),
            "is_cyclic_of_order_2": report.is_cyclic_of_order_2,
            "has_fpf_involution": report.has_fpf_involution,
            "has_fixed_point_involution": report.has_fixed_point_involution,
        }),
    );
    let quasi = quasi_group_witness(code)?;
    info.insert("quasi_group_code".into(), json!(quasi.is_some()));
    if let Some(w) = quasi {
        info.insert("quasi_group_witness".into(), json!(w.to_string()));
    }
    if n <= MAX_GROUP_CODE_LEN {
        info.insert("group_code".into(), json!(is_group_code(code)?));
    }
    if n >= 2 && n % 2 == 0 {
        let sigma = canonical_sigma(n)?;
        let invariant = is_automorphism(code, &sigma)?;
        info.insert("sigma_in_paut".into(), json!(invariant));
        if invariant {
            info.insert("f".into(), json!(fixed_subcode(code, &sigma)?.dim()));
            info.insert("t_sigma".into(), json!(t_sigma(code, &sigma)?.to_string()));
            if n >= 4 {
                let beta = fixed_point_witness(code, &sigma)?;
                info.insert("fixed_point_witness".into(), json!(beta.map(|b| b.to_string())));
            }
        }
    }
    Ok(())
}

fn analyze(code: &LinearCode, output: Output, out: &mut dyn Write) -> Result<i32> {
    let mut info = Map::new();
    let outcome = analyze_into(code, &mut info);
    let guard = match &outcome {
        Err(Error::TooLarge(msg)) => Some(msg.clone()),
        Err(_) => return outcome.map(|_| EXIT_OK),
        Ok(()) => None,
    };
    if let Some(msg) = &guard {
        info.insert("error".into(), json!(format!("too large: {msg}")));
    }
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(info))?)?,
        Output::Text => write_analysis_text(&info, out)?,
    }
    Ok(if guard.is_some() { EXIT_TOO_LARGE } else { EXIT_OK })
}

fn write_analysis_text(info: &Map<String, Value>, out: &mut dyn Write) -> Result<()> {
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    };
    for (key, value) in info {
        if let Value::Object(inner) = value {
            for (k, v) in inner {
                let shown = match v {
                    Value::Array(items) if k == "generators" => {
                        if items.is_empty() {
                            "()".to_string()
                        } else {
                            items.iter().map(plain).collect::<Vec<_>>().join(" ")
                        }
                    }
                    other => plain(other),
                };
                writeln!(out, "{key}.{k}: {shown}")?;
            }
        } else {
            writeln!(out, "{key}: {}", plain(value))?;
        }
    }
    Ok(())
}

fn witness(code: &LinearCode, output: Output, out: &mut dyn Write) -> Result<i32> {
    let sigma = canonical_sigma(code.length())?;
    let found = extra_automorphism(code, &sigma)?;
    match output {
        Output::Text => match &found {
            Some(w) => writeln!(out, "{} via {}", w.perm, w.construction)?,
            None => writeln!(out, "none")?,
        },
        Output::Json => {
            let value = match &found {
                Some(w) => json!({"witness": w.perm.to_string(), "construction": w.construction.to_string()}),
                None => json!({"witness": null, "construction": null}),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn census(n: usize, k: Option<usize>, sigma: bool, part: Slice, output: Output, out: &mut dyn Write) -> Result<i32> {
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let mut rows = Vec::new();
    for k in ks {
        let slice = CensusSlice {
            n,
            k,
            sigma_invariant_only: sigma,
            partition: part,
        };
        let count = shard(&slice)?.count();
        rows.push((k, count));
    }
    match output {
        Output::Text => {
            for (k, count) in &rows {
                if sigma || part != Slice::WHOLE {
                    writeln!(out, "n={n} k={k} count={count}")?;
                } else {
                    writeln!(out, "n={n} k={k} count={count} gaussian={}", gaussian_binomial(n, *k))?;
                }
            }
        }
        Output::Json => {
            let value: Vec<Value> = rows
                .iter()
                .map(|(k, count)| {
                    json!({"n": n, "k": k, "sigma_invariant_only": sigma, "slice": part, "count": count})
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
    }
    Ok(EXIT_OK)
}
