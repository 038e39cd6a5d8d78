//! Command-line front end for `rcong`.
//!
//! Exit codes: `0` on success, `1` for usage and domain errors (including
//! exceeded budgets), `2` when `verify` finds a disagreement.

pub mod bench;
pub mod output;
pub mod sweep;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use rcong::arith::{divisors, generalized_gcd};
use rcong::congruence::{class_members, class_size, count_restricted, CongruenceInstance};
use rcong::oracle::{brute_force_count, convolution_count, enumerate_solutions, Budgets};
use rcong::ramanujan::cohen_ramanujan;

use crate::output::{ClassRow, OutputRecord, Payload};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rcong", version, about = "Count solutions of restricted linear congruences exactly")]
pub struct Cli {
    /// Output format. `csv` is only available for `bench`.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Formula,
    Brute,
    Convolution,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Formula => "formula",
            Engine::Brute => "brute",
            Engine::Convolution => "convolution",
        }
    }
}

/// x_1 + … + x_k ≡ b (mod n^s) with (x_i, n^s)_s = t_i^s.
#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub b: i64,
    /// Comma-separated restriction divisors t_i of n. Omit for k = 0.
    #[arg(long, value_delimiter = ',', conflicts_with = "g")]
    pub t: Vec<u64>,
    /// Comma-separated multiplicities g_j, one per divisor of n in ascending order.
    #[arg(long, value_delimiter = ',')]
    pub g: Vec<u64>,
}

impl InstanceArgs {
    fn instance(&self) -> rcong::Result<CongruenceInstance> {
        if self.g.is_empty() {
            CongruenceInstance::new(self.n, self.s, self.b as i128, self.t.clone())
        } else {
            CongruenceInstance::from_multiplicities(self.n, self.s, self.b as i128, &self.g)
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count solutions of a restricted congruence.
    Count {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = Engine::Formula)]
        engine: Engine,
        /// Work budget for the chosen engine: tuples for `brute`, n^s for `convolution`.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Evaluate Cohen's Ramanujan sum c_{r,s}(m).
    Ramanujan {
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// Generalized gcd (a, b)_s.
    Ggcd {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// List the generalized-gcd classes of [1, n^s].
    Classes {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Also list the members of each class.
        #[arg(long)]
        elements: bool,
        /// Largest n^s to scan when listing members.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List solutions in lexicographic order.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 100)]
        limit: usize,
        /// Largest number of tuples to visit.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compare all engines on every small instance and run the identity suites.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: u64,
        #[arg(long = "s", value_delimiter = ',', default_values_t = vec![1u32, 2])]
        s_values: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        /// Seed for subsampling cells larger than `--cap`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of instances per (n, s, k) cell checked exhaustively.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        /// Largest number of tuples the brute-force engine may visit per instance.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, hide = true)]
        mutate: Option<sweep::Mutation>,
    },
    /// Time the engines over a grid of instance sizes.
    Bench {
        #[arg(long = "n", value_delimiter = ',', default_values_t = vec![4u64, 8, 16])]
        n_values: Vec<u64>,
        #[arg(long = "s", value_delimiter = ',', default_values_t = vec![1u32, 2])]
        s_values: Vec<u32>,
        #[arg(long = "k", value_delimiter = ',', default_values_t = vec![2usize, 4, 8])]
        k_values: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        /// Largest number of tuples the brute-force engine may visit per cell.
        #[arg(long)]
        budget: Option<u64>,
    },
}

struct Outcome {
    record: OutputRecord,
    exit: i32,
}

fn params(pairs: Vec<(&str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn instance_params(inst: &CongruenceInstance) -> Vec<(&'static str, Value)> {
    vec![
        ("n", inst.n().into()),
        ("s", inst.s().into()),
        ("b", inst.b().into()),
        ("modulus", inst.modulus().into()),
        ("t", inst.restrictions().to_vec().into()),
        ("g", inst.profile().multiplicities().to_vec().into()),
    ]
}

fn record(command: &str, params: BTreeMap<String, Value>, engine: Option<&str>, result: Payload, start: Instant) -> OutputRecord {
    OutputRecord {
        command: command.into(),
        params,
        engine: engine.map(str::to_string),
        result,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn execute(command: &Command) -> Result<Outcome> {
    let start = Instant::now();
    let ok = |record| Ok(Outcome { record, exit: EXIT_OK });
    match command {
        Command::Count { instance, engine, budget } => {
            let inst = instance.instance()?;
            let mut budgets = Budgets::default();
            match (engine, budget) {
                (Engine::Brute, Some(b)) => budgets.tuples = *b as u128,
                (Engine::Convolution, Some(b)) => budgets.vector = *b,
                _ => {}
            }
            let count = match engine {
                Engine::Formula => count_restricted(&inst)?,
                Engine::Brute => brute_force_count(&inst, &budgets)?,
                Engine::Convolution => convolution_count(&inst, &budgets)?,
            };
            let mut p = instance_params(&inst);
            p.push(("budget", budget.map_or(Value::Null, Value::from)));
            ok(record(
                "count",
                params(p),
                Some(engine.name()),
                Payload::Count { count: count.to_string() },
                start,
            ))
        }
        Command::Ramanujan { r, s, m } => {
            let value = cohen_ramanujan(*r, *s, *m as i128)?;
            ok(record(
                "ramanujan",
                params(vec![("r", (*r).into()), ("s", (*s).into()), ("m", (*m).into())]),
                None,
                Payload::Ramanujan { value: value.to_string() },
                start,
            ))
        }
        Command::Ggcd { a, b, s } => {
            let g = generalized_gcd(*a as i128, *b as i128, *s)?;
            ok(record(
                "ggcd",
                params(vec![("a", (*a).into()), ("b", (*b).into()), ("s", (*s).into())]),
                None,
                Payload::Ggcd {
                    value: g.value().to_string(),
                    base: g.base().to_string(),
                },
                start,
            ))
        }
        Command::Classes { n, s, elements, budget } => {
            let limit = budget.unwrap_or(Budgets::default().class_enumeration);
            let modulus = n.checked_pow(*s).ok_or(rcong::Error::Overflow("modulus n^s"))?;
            let mut rows = Vec::new();
            for d in divisors(*n)? {
                let size = class_size(*n, *s, d)?;
                let members = if *elements {
                    let m = class_members(*n, *s, d, limit)?;
                    if m.len() as u64 != size {
                        bail!("class {d} has {} members but J_s predicts {size}", m.len());
                    }
                    Some(m)
                } else {
                    None
                };
                rows.push(ClassRow {
                    d,
                    size: size.to_string(),
                    members,
                });
            }
            ok(record(
                "classes",
                params(vec![
                    ("n", (*n).into()),
                    ("s", (*s).into()),
                    ("elements", (*elements).into()),
                    ("budget", limit.into()),
                ]),
                None,
                Payload::Classes {
                    modulus: modulus.to_string(),
                    rows,
                },
                start,
            ))
        }
        Command::Solve { instance, limit, budget } => {
            let inst = instance.instance()?;
            let mut budgets = Budgets::default();
            if let Some(b) = budget {
                budgets.tuples = *b as u128;
            }
            let solutions = enumerate_solutions(&inst, *limit, &budgets)?;
            let count = count_restricted(&inst)?;
            let mut p = instance_params(&inst);
            p.push(("limit", (*limit).into()));
            p.push(("budget", budgets.tuples.to_string().into()));
            ok(record(
                "solve",
                params(p),
                Some("brute"),
                Payload::Solutions {
                    count: count.to_string(),
                    solutions,
                },
                start,
            ))
        }
        Command::Verify {
            max_n,
            s_values,
            max_k,
            seed,
            cap,
            budget,
            mutate,
        } => {
            if *max_n == 0 || s_values.is_empty() || s_values.contains(&0) {
                bail!("verify needs --max-n >= 1 and a nonempty list of positive --s values");
            }
            let mut cfg = sweep::SweepConfig {
                max_n: *max_n,
                s_values: s_values.clone(),
                max_k: *max_k,
                seed: *seed,
                cap: *cap,
                mutation: *mutate,
                ..sweep::SweepConfig::default()
            };
            if let Some(b) = budget {
                cfg.budgets.tuples = *b as u128;
            }
            let report = sweep::run(&cfg)?;
            let exit = if report.ok() { EXIT_OK } else { EXIT_MISMATCH };
            let mut p = vec![
                ("max_n", (*max_n).into()),
                ("s", s_values.clone().into()),
                ("max_k", (*max_k).into()),
                ("seed", (*seed).into()),
                ("cap", (*cap).into()),
                ("budget", cfg.budgets.tuples.to_string().into()),
            ];
            if let Some(m) = mutate {
                p.push(("mutate", format!("{m:?}").into()));
            }
            Ok(Outcome {
                record: record("verify", params(p), Some("all"), Payload::Verify(report), start),
                exit,
            })
        }
        Command::Bench {
            n_values,
            s_values,
            k_values,
            repetitions,
            budget,
        } => {
            let mut cfg = bench::BenchConfig {
                n_values: n_values.clone(),
                s_values: s_values.clone(),
                k_values: k_values.clone(),
                repetitions: *repetitions,
                ..bench::BenchConfig::default()
            };
            if let Some(b) = budget {
                cfg.budgets.tuples = *b as u128;
            }
            let rows = bench::run(&cfg)?;
            ok(record(
                "bench",
                params(vec![
                    ("n", n_values.clone().into()),
                    ("s", s_values.clone().into()),
                    ("k", k_values.clone().into()),
                    ("repetitions", (*repetitions).into()),
                    ("budget", cfg.budgets.tuples.to_string().into()),
                ]),
                None,
                Payload::Bench { rows },
                start,
            ))
        }
    }
}

/// Parse `args`, run the command, write the result to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_ERROR
                }
            };
        }
    };
    if cli.format == Format::Csv && !matches!(cli.command, Command::Bench { .. }) {
        let _ = writeln!(err, "error: csv output is only available for bench");
        return EXIT_ERROR;
    }
    match execute(&cli.command) {
        Ok(Outcome { record, exit }) => {
            let text = match cli.format {
                Format::Text => record.to_text(),
                Format::Json => record.to_json(),
                Format::Csv => record.to_csv().expect("checked above"),
            };
            let _ = writeln!(out, "{}", text.trim_end());
            exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
