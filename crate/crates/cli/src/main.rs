//! `pbbs`: command-line front end for the periodic box-ball system.
//!
//! Exit codes: 0 on success, 2 on invalid input, 1 on a failed self-check or
//! an internal assertion.

use std::collections::BTreeMap;
use std::panic;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use pbbs_core::dynamics::{self, Path};
use pbbs_core::kkr::{self, ActionVariable};
use pbbs_core::oracle::{self, Suite};
use pbbs_core::scattering::AngleRep;
use pbbs_core::{bethe, periods, scattering};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "pbbs", version, about = "Periodic box-ball system toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Format {
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply T_l a number of times.
    Evolve {
        #[command(flatten)]
        format: Format,
        #[arg(long)]
        path: Path,
        #[arg(long)]
        l: u64,
        /// Number of steps; may be negative or huge with --fast.
        #[arg(long, allow_hyphen_values = true)]
        steps: BigInt,
        /// Evolve linearly in the angle variables.
        #[arg(long)]
        fast: bool,
        /// Reduce the step count modulo the generic period first.
        #[arg(long, requires = "fast")]
        reduce: bool,
    },
    /// Print the spacetime diagram `t=k: ...` for k = 0..=steps.
    Trace {
        #[command(flatten)]
        format: Format,
        #[arg(long)]
        path: Path,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        steps: u64,
    },
    /// Path to angle variables.
    Scatter {
        #[arg(long)]
        path: Path,
        /// Print the offset and rigged Young diagram instead of JSON.
        #[arg(long)]
        pretty: bool,
        /// Apply the diagram automorphism to negative-weight paths.
        #[arg(long)]
        allow_omega: bool,
    },
    /// Angle variables (JSON as printed by `scatter`) to path.
    Unscatter {
        /// The JSON document, or `-` to read it from stdin.
        #[arg(long = "json", value_name = "ANGLE")]
        angle: String,
    },
    /// Generic period of T_l on the level set of a path.
    Period {
        #[command(flatten)]
        format: Format,
        #[arg(long)]
        path: Path,
        #[arg(long)]
        l: u64,
        /// Fundamental period of the path itself.
        #[arg(long)]
        fundamental: bool,
        /// Print the determinants and LCM arguments.
        #[arg(long)]
        explain: bool,
    },
    /// Level-set sizes per soliton content and the completeness sum.
    Count {
        #[command(flatten)]
        format: Format,
        #[arg(long = "L")]
        size: usize,
        /// Number of letters 2; all M ≤ L/2 when omitted.
        #[arg(long = "M")]
        balls: Option<usize>,
    },
    /// Compare formulas with brute force; prints TAP.
    Verify {
        #[command(flatten)]
        format: Format,
        #[arg(long)]
        suite: Suite,
        #[arg(long = "L")]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Status {
    Ok,
    Failed,
}

fn number(n: &BigInt) -> Value {
    let s = n.to_string();
    serde_json::from_str(&s).expect("integers are valid JSON numbers")
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn angle_json(a: &AngleRep, omega: bool) -> Value {
    let rows: Vec<Value> = a
        .rows()
        .iter()
        .map(|(j, x)| json!({"len": j, "rig": number(x)}))
        .collect();
    let mut v = json!({"L": a.size(), "d": number(a.offset()), "rows": rows});
    if omega {
        v["omega"] = json!(true);
    }
    v
}

fn big_field(v: &Value, key: &str) -> Result<BigInt> {
    let n = v.get(key).with_context(|| format!("missing field {key:?}"))?;
    let s = match n {
        Value::Number(n) => n.to_string(),
        _ => bail!("field {key:?} must be an integer"),
    };
    s.parse().with_context(|| format!("field {key:?} must be an integer"))
}

fn parse_angle(text: &str) -> Result<(AngleRep, bool)> {
    let v: Value = serde_json::from_str(text).context("malformed JSON")?;
    let size: usize = big_field(&v, "L")?.try_into().context("L out of range")?;
    let offset = big_field(&v, "d")?;
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .context("missing array \"rows\"")?;
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    let mut blocks: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
    for row in rows {
        let j: usize = big_field(row, "len")?.try_into().context("len out of range")?;
        if j == 0 {
            bail!("row length must be positive");
        }
        *mult.entry(j).or_insert(0) += 1;
        blocks.entry(j).or_default().push(big_field(row, "rig")?);
    }
    for b in blocks.values_mut() {
        b.sort();
    }
    let omega = match v.get("omega") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => bail!("field \"omega\" must be a boolean"),
    };
    let m = ActionVariable::new(size, mult)?;
    Ok((AngleRep::new(m, offset, blocks)?, omega))
}

fn configuration_label(m: &ActionVariable, width: usize) -> String {
    let parts: Vec<String> = m.to_vec(width).iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Evolve {
            format: Format { json },
            path,
            l,
            steps,
            fast,
            reduce,
        } => {
            if l == 0 {
                bail!("capacity l must be positive");
            }
            let out = if fast {
                let t = if reduce {
                    let n = periods::generic_period(&scattering::action(&path), l);
                    ((&steps % &n) + &n) % &n
                } else {
                    steps
                };
                scattering::fast_evolve(&path, l, t)
            } else {
                let t: u64 = steps
                    .try_into()
                    .context("without --fast, steps must be a non-negative u64")?;
                dynamics::evolve_steps(&path, l, t)
            };
            if json {
                print_json(&json!({"path": out.to_string()}));
            } else {
                println!("{out}");
            }
        }
        Command::Trace {
            format: Format { json },
            path,
            l,
            steps,
        } => {
            if l == 0 {
                bail!("capacity l must be positive");
            }
            let rows = dynamics::trace(&path, l, steps);
            if json {
                print_json(&json!({"rows": rows}));
            } else {
                for r in rows {
                    println!("{r}");
                }
            }
        }
        Command::Scatter {
            path,
            pretty,
            allow_omega,
        } => {
            let omega = path.weight() < 0;
            if omega && !allow_omega {
                bail!("path has negative weight; pass --allow-omega to apply omega first");
            }
            let q = if omega { path.omega() } else { path };
            let a = scattering::direct(&q)?;
            if pretty {
                if omega {
                    println!("omega");
                }
                print!("{a}");
            } else {
                print_json(&angle_json(&a, omega));
            }
        }
        Command::Unscatter { angle } => {
            let text = if angle == "-" {
                std::io::read_to_string(std::io::stdin()).context("reading stdin")?
            } else {
                angle
            };
            let (a, omega) = parse_angle(&text)?;
            let p = scattering::inverse(&a)?;
            let p = if omega { p.omega() } else { p };
            println!("{p}");
        }
        Command::Period {
            format: Format { json },
            path,
            l,
            fundamental,
            explain,
        } => {
            if l == 0 {
                bail!("capacity l must be positive");
            }
            let report = if fundamental {
                periods::fundamental_report(&path, l)
            } else {
                periods::generic_report(&scattering::action(&path), l)
            };
            let value = if fundamental {
                report.fundamental.clone().expect("set for paths")
            } else {
                report.generic.clone()
            };
            if json {
                let args: Vec<String> = report.lcm_args.iter().map(ToString::to_string).collect();
                let mut v = json!({
                    "l": l,
                    "lengths": report.lengths,
                    "det_f": number(&report.det_f),
                    "det_f_columns": report.det_f_columns.iter().map(number).collect::<Vec<_>>(),
                    "symmetry": report.symmetry.iter().map(|(j, g)| json!({"len": j, "g": g})).collect::<Vec<_>>(),
                    "lcm_args": args,
                    "generic": number(&report.generic),
                });
                if let Some(f) = &report.fundamental {
                    v["fundamental"] = number(f);
                }
                print_json(&v);
            } else if explain {
                println!("l = {l}");
                println!("lengths = {:?}", report.lengths);
                println!("det F = {}", report.det_f);
                for (j, d) in report.lengths.iter().zip(&report.det_f_columns) {
                    println!(
                        "det F[{j}] = {d}  g_{j} = {}",
                        report.symmetry.get(j).copied().unwrap_or(1)
                    );
                }
                let args: Vec<String> = report.lcm_args.iter().map(ToString::to_string).collect();
                println!("LCM(1, {}) = {value}", args.join(", "));
                println!("generic = {}", report.generic);
                if let Some(f) = &report.fundamental {
                    println!("fundamental = {f}");
                }
            } else {
                println!("{value}");
            }
        }
        Command::Count {
            format: Format { json },
            size,
            balls,
        } => {
            if size == 0 {
                bail!("L must be positive");
            }
            let range: Vec<usize> = match balls {
                Some(b) if 2 * b > size => bail!("M must satisfy 2M ≤ L"),
                Some(b) => vec![b],
                None => (0..=size / 2).collect(),
            };
            let mut out = Vec::new();
            for b in range {
                let width = b.max(1);
                let mut total = BigInt::from(0);
                let mut rows = Vec::new();
                let mut configs = kkr::configurations_with_balls(size, b);
                configs.sort_by_key(|m| std::cmp::Reverse(m.to_vec(width)));
                for m in configs {
                    let omega = bethe::omega_count(&m);
                    total += &omega;
                    rows.push((m, omega));
                }
                let binom = bethe::binomial(size as u64, b as u64);
                if total != binom {
                    bail!("completeness failed for L={size} M={b}: {total} ≠ {binom}");
                }
                if json {
                    let configs: Vec<Value> = rows
                        .iter()
                        .map(|(m, o)| json!({"m": m.to_vec(width), "omega": number(o)}))
                        .collect();
                    out.push(json!({"M": b, "configurations": configs, "sum": number(&total)}));
                } else {
                    println!("L = {size}, M = {b}");
                    for (m, o) in &rows {
                        println!("  m = {}  Ω = {o}", configuration_label(m, width));
                    }
                    println!("  sum = {total} = binom({size},{b})");
                }
            }
            if json {
                print_json(&json!({"L": size, "levels": out}));
            }
        }
        Command::Verify {
            format: Format { json },
            suite,
            size,
            seed,
        } => {
            let checks = oracle::verify(suite, size, seed)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            if json {
                let v: Vec<Value> = checks
                    .iter()
                    .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                    .collect();
                print_json(&json!({"checks": v, "failed": failed}));
            } else {
                println!("1..{}", checks.len());
                for (k, c) in checks.iter().enumerate() {
                    if c.pass {
                        println!("ok {} - {}", k + 1, c.name);
                    } else {
                        println!("not ok {} - {} # {}", k + 1, c.name, c.detail);
                    }
                }
            }
            if failed > 0 {
                return Ok(Status::Failed);
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match panic::catch_unwind(|| run(cli)) {
        Ok(Ok(Status::Ok)) => ExitCode::SUCCESS,
        Ok(Ok(Status::Failed)) => ExitCode::from(1),
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(1),
    }
}
