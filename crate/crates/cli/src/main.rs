use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use contactsym::contact::{aff_generators, lagrange_bracket, sl_generators, sp_generators};
use contactsym::decomposition::{decompose_at, singular_set, Projector};
use contactsym::format::{parse_symbol, serialize_symbol};
use contactsym::verify::{run_suite, Suite, SuiteConfig};
use contactsym::{parse_rational, Grading, Rational, Symbol};

#[derive(Parser)]
#[command(
    name = "contactsym",
    version,
    about = "Exact symbol calculus on the contact space R^(2n+1)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and report every check.
    Verify {
        /// Values of n, comma separated.
        #[arg(long = "n", value_delimiter = ',', default_values_t = [1usize, 2])]
        n: Vec<usize>,
        /// Largest fiber degree.
        #[arg(long = "k", default_value_t = 4)]
        k: u32,
        /// Weights, comma separated, as p/q.
        #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
        delta: Vec<Rational>,
        #[arg(long = "base-deg", default_value_t = 3)]
        base_deg: u32,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Suites to run, comma separated; all by default.
        #[arg(long, value_delimiter = ',', value_parser = suite)]
        suite: Vec<Suite>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave timing out of the JSON report.
        #[arg(long)]
        no_timing: bool,
        /// Print failing checks only.
        #[arg(long)]
        quiet: bool,
    },
    /// Split a symbol in R^k into components s^l(u_l) with i(α) u_l = 0.
    Decompose {
        file: PathBuf,
        /// Fiber degree; read off the symbol when omitted.
        #[arg(long = "k")]
        k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the projector p_k onto R^k ∩ ker i(α).
    Projector {
        file: PathBuf,
        #[arg(long = "k")]
        k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a generating set of vector fields as symbol documents.
    Generators {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Algebra::Sp)]
        algebra: Algebra,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lagrange bracket of two densities (fiber degree 0 symbols).
    Bracket {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the singular set I_k.
    Singular {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Aff,
    Sl,
    Sp,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).ok_or_else(|| format!("malformed rational `{s}`"))
}

fn suite(s: &str) -> Result<Suite, String> {
    s.trim().parse()
}

/// An invocation problem; exits with status 2 like clap's own errors.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn read_symbol(path: &Path) -> Result<Symbol> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_symbol(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn degree_of(u: &Symbol, k: Option<u32>) -> Result<u32> {
    match (k, u.homogeneous_degree()?) {
        (Some(k), None) => Ok(k),
        (Some(k), Some(d)) if k == d => Ok(k),
        (Some(k), Some(d)) => Err(usage(format!(
            "--k {k} does not match the fiber degree {d} of the input"
        ))),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(usage("the input is zero; pass --k to fix its fiber degree")),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify {
            n,
            k,
            delta,
            base_deg,
            trials,
            seed,
            suite,
            out,
            no_timing,
            quiet,
        } => {
            let mut cfg = SuiteConfig {
                n_values: n,
                k_max: k,
                base_degree: base_deg,
                trials,
                seed,
                suites: suite,
                ..SuiteConfig::default()
            };
            if !delta.is_empty() {
                cfg.deltas = delta;
            }
            if cfg.n_values.contains(&0) {
                return Err(usage("n must be at least 1"));
            }
            let mut report = run_suite(&cfg);
            if no_timing {
                report = report.without_timing();
            }
            if quiet {
                for c in report.failures() {
                    println!(
                        "FAIL {} {} {:?} {}",
                        c.suite,
                        c.id,
                        c.params,
                        c.detail.as_deref().unwrap_or("")
                    );
                }
                println!(
                    "{} passed, {} failed, {} skipped",
                    report.passed, report.failed, report.skipped
                );
            } else {
                print!("{}", report.summary());
            }
            if let Some(p) = out {
                fs::write(&p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Decompose { file, k, out } => {
            let u = read_symbol(&file)?;
            let k = degree_of(&u, k)?;
            let u = if u.grading() == Grading::S {
                u.to_r_grading_at(k)
            } else {
                u
            };
            let d = decompose_at(&u, k)?;
            let mut text = String::new();
            for (i, (l, c)) in d.components.iter().enumerate() {
                if i > 0 {
                    text.push_str("---\n");
                }
                text.push_str(&format!("# l = {l}, fiber degree {}\n", k - l));
                text.push_str(&serialize_symbol(c));
            }
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Projector { file, k, out } => {
            let u = read_symbol(&file)?;
            let k = degree_of(&u, k)?;
            let grading = u.grading();
            let r = if grading == Grading::S { u.to_r_grading_at(k) } else { u };
            let p = Projector::new(r.n(), k, r.weight().clone())?.apply(&r)?;
            let p = if grading == Grading::S {
                p.from_r_grading_at(k)
            } else {
                p
            };
            emit(out.as_deref(), &serialize_symbol(&p))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Generators { n, algebra, out } => {
            let basis = match algebra {
                Algebra::Aff => aff_generators(n)?,
                Algebra::Sl => sl_generators(n)?,
                Algebra::Sp => sp_generators(n)?,
            };
            let mut text = String::new();
            for (i, (z, label)) in basis.elements.iter().zip(&basis.labels).enumerate() {
                if i > 0 {
                    text.push_str("---\n");
                }
                text.push_str(&format!("# {label}\n"));
                text.push_str(&serialize_symbol(&z.to_symbol()));
            }
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bracket { f, g, out } => {
            let f = read_symbol(&f)?;
            let g = read_symbol(&g)?;
            for s in [&f, &g] {
                if s.homogeneous_degree()?.unwrap_or(0) != 0 {
                    return Err(usage("densities must have fiber degree 0"));
                }
            }
            let (b, w) = lagrange_bracket(f.poly(), f.weight(), g.poly(), g.weight())?;
            let s = Symbol::new(b, w, Grading::S)?;
            emit(out.as_deref(), &serialize_symbol(&s))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Singular { n, k } => {
            let set = singular_set(k, n)?;
            let items: Vec<String> = set.iter().map(ToString::to_string).collect();
            println!("I_{k} = {{{}}}", items.join(", "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    let usage = e.chain().any(|c| {
        c.is::<std::io::Error>()
            || c.is::<Usage>()
            || matches!(c.downcast_ref::<contactsym::Error>(), Some(contactsym::Error::Parse(_)))
    });
    if usage {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
