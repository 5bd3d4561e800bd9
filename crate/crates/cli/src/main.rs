mod input;
mod report;
mod selfcheck;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orbisect::Limits;
use serde_json::{json, Value};

use input::Task;
use report::{Failure, EXIT_INPUT, EXIT_VERIFY};

#[derive(Parser)]
#[command(name = "orbisect", version, about = "Sectors and invariants of finite groupoids")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON document declaring groups, actions and groupoids.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Print plain text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    /// Print JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = Limits::default().order_cap)]
    order_cap: usize,
    #[arg(long, global = true, default_value_t = Limits::default().simplex_budget)]
    simplex_budget: usize,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Points and strata of the sector space.
    Sectors { groupoid: String },
    /// Components of the reduced sector groupoid.
    Reduced { groupoid: String },
    /// Decide Morita equivalence and print a certificate.
    Morita { left: String, right: String },
    /// Integral homology of the nerve.
    Homology {
        groupoid: String,
        #[arg(long)]
        degree: usize,
    },
    /// Orbifold homotopy group at an object.
    Pi {
        groupoid: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        n: usize,
    },
    /// Homotopy group of a sector, given by an object and loop generators.
    ExtendedPi {
        groupoid: String,
        #[arg(long)]
        base: String,
        /// Comma-separated arrow labels generating the subgroup.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        group: Vec<String>,
        #[arg(long)]
        n: usize,
    },
    /// Stable homotopy of the reduced sector groupoid.
    Stable {
        groupoid: String,
        #[arg(long)]
        n: usize,
    },
    /// Equivariant stable homotopy of a G-set, split over subgroup classes.
    Tomdieck {
        /// Name of the acting group; must match the action's group.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        action: String,
        #[arg(long)]
        n: usize,
    },
    /// Compare invariants of two actions and check agreement when Morita equivalent.
    VerifyInvariance { left: String, right: String },
    /// The orbit-category diagram at an object.
    OrbitDiagram {
        groupoid: String,
        #[arg(long)]
        base: String,
    },
    /// Run every task listed in the input document.
    Tasks,
    /// Parse, resolve and print the input document in canonical form.
    Check,
    /// Check Morita invariance of every invariant on random inflated instances.
    Selfcheck {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

impl Command {
    fn task(&self) -> Option<Task> {
        Some(match self {
            Command::Sectors { groupoid } => Task::Sectors {
                groupoid: groupoid.clone(),
            },
            Command::Reduced { groupoid } => Task::Reduced {
                groupoid: groupoid.clone(),
            },
            Command::Morita { left, right } => Task::Morita {
                left: left.clone(),
                right: right.clone(),
            },
            Command::Homology { groupoid, degree } => Task::Homology {
                groupoid: groupoid.clone(),
                degree: *degree,
            },
            Command::Pi { groupoid, base, n } => Task::Pi {
                groupoid: groupoid.clone(),
                base: base.clone(),
                n: *n,
            },
            Command::ExtendedPi {
                groupoid,
                base,
                group,
                n,
            } => Task::ExtendedPi {
                groupoid: groupoid.clone(),
                base: base.clone(),
                group: group.clone(),
                n: *n,
            },
            Command::Stable { groupoid, n } => Task::Stable {
                groupoid: groupoid.clone(),
                n: *n,
            },
            Command::Tomdieck { group, action, n } => Task::Tomdieck {
                group: group.clone(),
                action: action.clone(),
                n: *n,
            },
            Command::VerifyInvariance { left, right } => Task::VerifyInvariance {
                left: left.clone(),
                right: right.clone(),
            },
            Command::OrbitDiagram { groupoid, base } => Task::OrbitDiagram {
                groupoid: groupoid.clone(),
                base: base.clone(),
            },
            Command::Tasks | Command::Check | Command::Selfcheck { .. } => return None,
        })
    }
}

fn text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text(v, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text(v, indent + 1, out);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(v));
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if item.is_object() {
                    let _ = writeln!(out, "{pad}[{i}]");
                    text(item, indent + 1, out);
                } else {
                    let _ = writeln!(out, "{pad}{}", scalar(item));
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", scalar(value));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) if items.is_empty() => "[]".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn load(path: &Option<PathBuf>) -> Result<input::InputDocument, Failure> {
    let path = path.as_ref().ok_or_else(|| Failure {
        code: EXIT_INPUT,
        message: "no input document given (use --input)".into(),
    })?;
    let raw = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(input::parse(&raw)?)
}

fn execute(cli: &Cli, limits: &Limits) -> Result<(Value, bool), Failure> {
    if let Command::Selfcheck { count } = cli.command {
        return Ok(selfcheck::run(cli.global.seed, count, limits)?);
    }
    let doc = load(&cli.global.input)?;
    let resolved = input::resolve(&doc, limits)?;
    if let Command::Check = cli.command {
        return Ok((
            serde_json::from_str(&input::render(&doc)).expect("rendered JSON parses"),
            true,
        ));
    }
    let tasks = match cli.command.task() {
        Some(t) => vec![t],
        None => doc.tasks.clone(),
    };
    let mut reports = Vec::new();
    let mut verified = true;
    for task in &tasks {
        let outcome = report::run(task, &resolved, limits)?;
        verified &= outcome.verified;
        reports.push(outcome.value);
    }
    let value = match cli.command {
        Command::Tasks => json!({ "tasks": reports }),
        _ => reports.pop().expect("one task"),
    };
    Ok((value, verified))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        order_cap: cli.global.order_cap,
        simplex_budget: cli.global.simplex_budget,
    };
    match execute(&cli, &limits) {
        Ok((value, verified)) => {
            let out = if cli.global.text {
                let mut out = String::new();
                text(&value, 0, &mut out);
                out
            } else {
                serde_json::to_string_pretty(&value).expect("values serialize") + "\n"
            };
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            if verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(EXIT_VERIFY as u8)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
