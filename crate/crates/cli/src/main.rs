//! `plat`: build spaces, enumerate products, check axioms, run the
//! verification suites and the uniqueness search.
//!
//! Exit codes: 0 success, 1 a verified violation, 2 usage or
//! configuration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use plat_core::closure::{dump_closure, enumerate_closed};
use plat_core::lattice::{analyze, PermutationGroup};
use plat_core::orthospace::{dump_space, load_space, make_mo, make_powerset_space, make_quadratic_line_space};
use plat_core::search::run_search;
use plat_core::sepprod::{check_axioms, factor_automorphisms, separated_product, ProductSpace};
use plat_core::verify::{run_verify_suite, VerifyConfig, SUITES};
use plat_core::{fixtures, Limits, OrthoSpace, PlatError};

#[derive(Parser)]
#[command(name = "plat", version, about = "Finite property lattices and separated products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a builtin orthogonality space as a JSON document.
    Space {
        #[command(subcommand)]
        kind: SpaceKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Separated product of two factors.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Print the canonical dump of all closed sets.
        #[arg(long)]
        enumerate: bool,
        /// Report covering, orthomodularity, center and automorphisms.
        #[arg(long)]
        analyze: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide P1-P5 and P4* for a relation on the product of two factors.
    Check {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Space document over the product atoms, in row-major order.
        #[arg(long)]
        relation: PathBuf,
        /// JSON array of permutations of the left atoms.
        #[arg(long)]
        w1: Option<PathBuf>,
        #[arg(long)]
        w2: Option<PathBuf>,
    },
    /// Run a verification suite (or `all`).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        lambda: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample relations without P5 and classify those passing P2-P4.
    Search {
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "mo:2")]
        left: String,
        #[arg(long, default_value = "mo:2")]
        right: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate or check the committed fixture files.
    Fixtures {
        #[arg(long, conflicts_with = "check")]
        regen: bool,
        #[arg(long)]
        check: bool,
        #[arg(long, default_value = "crates/core/fixtures")]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum SpaceKind {
    /// MO_n: n orthogonal pairs.
    Mo { n: usize },
    /// Discrete space whose closed sets are all subsets.
    Powerset { n: usize },
    /// Projective line over GF(q) with the form x² + λy².
    Quad {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        lambda: u32,
    },
}

enum Failure {
    Violation(String),
    Usage(String),
}

impl From<PlatError> for Failure {
    fn from(e: PlatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let limits = Limits::from_env()?;
    match cli.command {
        Command::Space { kind, out } => {
            let space = match kind {
                SpaceKind::Mo { n } => make_mo(n)?,
                SpaceKind::Powerset { n } => make_powerset_space(n)?,
                SpaceKind::Quad { q, lambda } => make_quadratic_line_space(q, lambda)?,
            };
            emit(&(dump_space(&space) + "\n"), out.as_deref())
        }
        Command::Product {
            left,
            right,
            enumerate,
            analyze: with_analysis,
            out,
        } => {
            let (l, r) = (factor(&left)?, factor(&right)?);
            let (prod, sys) = separated_product(&l, &r, &limits)?;
            if enumerate {
                return emit(&dump_closure(&sys), out.as_deref());
            }
            let mut summary = serde_json::json!({
                "atoms": prod.size(),
                "closed_sets": sys.len(),
            });
            if with_analysis {
                let report = analyze(prod.space(), &sys, &limits)?;
                summary["analysis"] = serde_json::to_value(report).expect("serializable");
            }
            emit(&fixtures::to_json_text(&summary), out.as_deref())
        }
        Command::Check {
            left,
            right,
            relation,
            w1,
            w2,
        } => {
            let (l, r) = (factor(&left)?, factor(&right)?);
            let rel = load_space(&read(&relation)?)?;
            if rel.size() != l.size() * r.size() {
                return Err(Failure::Usage(format!(
                    "relation has {} atoms, the product has {}",
                    rel.size(),
                    l.size() * r.size()
                )));
            }
            let prod = ProductSpace::with_relation(&l, &r, rel.rows().to_vec())?;
            let l1 = enumerate_closed(&l, &limits)?;
            let l2 = enumerate_closed(&r, &limits)?;
            let w1 = group(w1.as_deref(), &l, &limits)?;
            let w2 = group(w2.as_deref(), &r, &limits)?;
            let report = check_axioms(&prod, &l1, &l2, &w1, &w2)?;
            emit(&fixtures::to_json_text(&report), None)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            q,
            lambda,
            out,
        } => {
            if trials == 0 {
                return Err(Failure::Usage("trials must be at least 1".into()));
            }
            let config = VerifyConfig {
                trials,
                seed,
                q,
                lambda,
                limits,
            };
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut results = Vec::new();
            for name in names {
                let start = Instant::now();
                let result = run_verify_suite(name, &config)?;
                eprintln!(
                    "{name}: {} ({} checks, {:.1?})",
                    if result.passed { "pass" } else { "FAIL" },
                    result.checks.len(),
                    start.elapsed()
                );
                for c in result.checks.iter().filter(|c| !c.passed) {
                    eprintln!("  failed {}: {}", c.id, c.claim);
                }
                results.push(result);
            }
            let text = if results.len() == 1 {
                results[0].to_json()
            } else {
                fixtures::to_json_text(&results)
            };
            emit(&text, out.as_deref())?;
            if results.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::Violation("verification failed".into()))
            }
        }
        Command::Search {
            budget,
            seed,
            left,
            right,
            out,
        } => {
            let report = run_search(&factor(&left)?, &factor(&right)?, budget, seed, &limits)?;
            eprintln!("{}", report.message);
            emit(&fixtures::to_json_text(&report), out.as_deref())
        }
        Command::Fixtures { regen, check, dir } => {
            if regen {
                for name in fixtures::regenerate(&dir, &limits)? {
                    eprintln!("wrote {}", dir.join(name).display());
                }
                Ok(())
            } else if check {
                let stale = fixtures::check_dir(&dir, &limits)?;
                if stale.is_empty() {
                    eprintln!("fixtures up to date");
                    Ok(())
                } else {
                    Err(Failure::Violation(format!("stale fixtures: {}", stale.join(", "))))
                }
            } else {
                Err(Failure::Usage("pass --regen or --check".into()))
            }
        }
    }
}

/// A space document path, or `mo:N`, `powerset:N`, `quad:Q:LAMBDA`.
fn factor(arg: &str) -> Result<OrthoSpace, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(load_space(&read(path)?)?);
    }
    let parts: Vec<&str> = arg.split(':').collect();
    let num = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| Failure::Usage(format!("bad number {s:?} in factor {arg:?}")))
    };
    let space = match parts.as_slice() {
        ["mo", n] => make_mo(num(n)? as usize)?,
        ["powerset", n] => make_powerset_space(num(n)? as usize)?,
        ["quad", q, l] => make_quadratic_line_space(num(q)?, num(l)?)?,
        _ => {
            return Err(Failure::Usage(format!(
                "factor {arg:?} is neither a file nor mo:N, powerset:N, quad:Q:L"
            )))
        }
    };
    Ok(space)
}

fn group(path: Option<&Path>, space: &OrthoSpace, limits: &Limits) -> Result<PermutationGroup, Failure> {
    match path {
        None => Ok(factor_automorphisms(space, limits)?),
        Some(p) => {
            let perms: Vec<Vec<usize>> = serde_json::from_str(&read(p)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(PermutationGroup::new(space.size(), perms)?)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
