use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use locobs::cli::{self, manifest, ConfigError, Format, Manifest, RunConfig, EXIT_CONFIG, EXIT_PARSE};
use locobs::filter::Selection;
use locobs::geometry::{self, parse_rational, suite, Ray, Q};
use locobs::oracles::{self, ladder, OracleParams};

#[derive(Parser)]
#[command(name = "locobs", version, about = "Exact checks of localisation observables in the conformal algebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the normal form of an expression.
    Normalize { expr: String },
    /// Print (E1, E2), the commutator divided by i·hbar.
    Comm { e1: String, e2: String },
    /// Run catalog checks selected by id glob.
    Check {
        glob: Option<String>,
        /// Read suites, seed, ladder and geometry settings from a JSON manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Also write the JSON reports to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Record wall time per check; JSON output is then no longer reproducible.
        #[arg(long)]
        timings: bool,
    },
    /// Run one of the independent oracles.
    Oracle {
        which: OracleName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "0")]
        s_min: String,
        #[arg(long, default_value = "6")]
        s_max: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Ray-pair geometry checks on seeded random pairs or on a ray file.
    Geometry {
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        accel: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eps: Option<Vec<String>>,
        /// One ray per line, `p0 p1 p2 p3 u0 u1 u2 u3 sigma`; consecutive lines form pairs.
        #[arg(long)]
        rays: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List check ids with their references.
    Catalog,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleName {
    So42,
    Poisson,
    Ladder,
}

enum Failure {
    Config(String),
    Parse(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<cli::ParseError> for Failure {
    fn from(e: cli::ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args.cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(EXIT_PARSE as u8)
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Config(format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn exact(s: &str, what: &str) -> Result<Q, Failure> {
    parse_rational(s.trim()).ok_or_else(|| Failure::Config(format!("{what}: `{s}` is not a rational number")))
}

fn run(cmd: Cmd) -> Result<i32, Failure> {
    match cmd {
        Cmd::Normalize { expr } => {
            emit(&format!("{}\n", cli::parse(&expr)?));
            Ok(0)
        }
        Cmd::Comm { e1, e2 } => {
            let (a, b) = (cli::parse(&e1)?, cli::parse(&e2)?);
            emit(&format!("{}\n", a.commutator(&b)));
            Ok(0)
        }
        Cmd::Catalog => {
            let text: String = cli::catalog().iter().map(|(id, anchor)| format!("{id}\t{anchor}\n")).collect();
            emit(&text);
            Ok(0)
        }
        Cmd::Check { glob, manifest, json, seed, timings } => {
            let m = match &manifest {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
                    Manifest::from_json(&text)?
                }
                None => Manifest::default(),
            };
            let mut cfg: RunConfig = m.resolve()?;
            if let Some(g) = glob {
                cfg.selection = Selection::new(&[g]).map_err(|e| Failure::Config(format!("glob: {e}")))?;
            }
            if let Some(s) = seed {
                cfg.seed = s;
                cfg.geometry.seed = s;
            }
            cfg.timings = timings;
            if cli::selected_ids(&cfg.selection).is_empty() {
                return Err(Failure::Config("no check id matches the selection".into()));
            }
            let reports = cli::run_checks(&cfg);
            write_out(cfg.output.as_ref(), &cli::render(&reports, cfg.format))?;
            if let Some(p) = &json {
                write_out(Some(p), &cli::render_json(&reports))?;
            }
            Ok(cli::exit_code(&reports))
        }
        Cmd::Oracle { which, seed, s_min, s_max, tol, json } => {
            let mut p = OracleParams { seed, ..OracleParams::default() };
            let m = Manifest {
                ladder: manifest::LadderSection {
                    s_min: manifest::Number::Text(s_min),
                    s_max: manifest::Number::Text(s_max),
                    tol,
                    ..Default::default()
                },
                ..Manifest::default()
            };
            p.ladder = m.resolve()?.ladder;
            let id = match which {
                OracleName::So42 => oracles::so42::SO42_ID,
                OracleName::Poisson => oracles::poisson::POISSON_ID,
                OracleName::Ladder => ladder::LADDER_ID,
            };
            let mut r = oracles::run(id, &p).expect("known oracle");
            r.ms = None;
            let reports = [r];
            emit(&cli::render(&reports, if json { Format::Json } else { Format::Text }));
            Ok(cli::exit_code(&reports))
        }
        Cmd::Geometry { pairs, seed, accel, eps, rays, json } => {
            let mut p = suite::GeometryParams { seed, pairs, ..Default::default() };
            if let Some(a) = accel {
                let v = a.iter().map(|s| exact(s, "--accel")).collect::<Result<Vec<_>, _>>()?;
                if v.len() != 4 {
                    return Err(Failure::Config(format!("--accel takes 4 components, got {}", v.len())));
                }
                p.accel = std::array::from_fn(|k| v[k].clone());
            }
            if let Some(e) = eps {
                p.eps = e.iter().map(|s| exact(s, "--eps")).collect::<Result<_, _>>()?;
                manifest::check_eps(&p.eps)?;
            }
            if pairs == 0 {
                return Err(Failure::Config("--pairs must be positive".into()));
            }
            let mut reports = match rays {
                None => suite::check_all(&Selection::all(), &p),
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
                    let rays = geometry::parse_rays(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
                    let pairs = pair_up(rays)?;
                    suite::check_pairs(&Selection::all(), &pairs, &p)
                }
            };
            for r in &mut reports {
                r.ms = None;
            }
            emit(&cli::render(&reports, if json { Format::Json } else { Format::Text }));
            Ok(cli::exit_code(&reports))
        }
    }
}

fn pair_up(rays: Vec<Ray>) -> Result<Vec<(Ray, Ray)>, Failure> {
    if rays.is_empty() || !rays.len().is_multiple_of(2) {
        return Err(Failure::Config(format!("ray file needs an even, nonzero number of rays, found {}", rays.len())));
    }
    let mut out = Vec::new();
    for (k, c) in rays.chunks(2).enumerate() {
        geometry::pair_observables(&c[0], &c[1]).map_err(|e| Failure::Config(format!("pair {}: {e}", k + 1)))?;
        out.push((c[0].clone(), c[1].clone()));
    }
    Ok(out)
}
