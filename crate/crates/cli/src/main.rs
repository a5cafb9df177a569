use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lctforge::analysis::{analyze_timed, convergence_experiment, AnalysisOptions, CHANGE_BOUND};
use lctforge::config::Config;
use lctforge::corpus::{self, CorpusSummary};
use lctforge::error::Error;
use lctforge::ideal::{parse_ideal, IdealPresentation};
use lctforge::lct::{is_diagonal, rees_compare};
use lctforge::monomial::MonomialIdeal;
use lctforge::multiplicity::milnor_vector;
use lctforge::newton::MAX_DIM;
use lctforge::ops::LinearChange;
use lctforge::oracle::oracle_report;
use lctforge::rational::{self, Rational};

/// Exact invariants of ideals of finite colength.
#[derive(Parser, Debug)]
#[command(name = "lctforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generic-section trials; overrides LCTFORGE_TRIALS.
    #[arg(long)]
    trials: Option<u32>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON output for commands that print text by default.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report: multiplicities, DP, lct, diagonality and the audit.
    Analyze {
        file: PathBuf,
        /// Extra coordinate change for the lct upper bound, rows split by `;`.
        #[arg(long = "change")]
        changes: Vec<String>,
        /// Assert that the input is Newton non-degenerate.
        #[arg(long)]
        nondegenerate: bool,
        /// Record per-stage timings (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Diagonality verdict and witness.
    Diagonal {
        file: PathBuf,
        #[arg(long)]
        nondegenerate: bool,
        #[command(flatten)]
        common: Common,
    },
    /// DP comparison along an inclusion of monomial ideals.
    Compare {
        smaller: PathBuf,
        larger: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Milnor vector of a single germ.
    Milnor {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// DP and lct of initial ideals of powers after a random change.
    Converge {
        file: PathBuf,
        /// Largest power, at most 4.
        #[arg(long, default_value_t = 4)]
        tmax: u32,
        /// Use the identity instead of a random change.
        #[arg(long, conflicts_with = "change")]
        identity: bool,
        /// Explicit change, rows split by `;`.
        #[arg(long)]
        change: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Independent oracles for a monomial ideal.
    Oracle {
        file: PathBuf,
        /// Lattice scale; the default runs 8, 16 and 32.
        #[arg(long)]
        grid: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized property suites; extra ideal files join the corpora.
    Corpus {
        files: Vec<PathBuf>,
        /// Dimensions of the monomial corpus, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<usize>,
        /// Size of the monomial corpus.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Size of the polynomial corpus.
        #[arg(long, default_value_t = 60)]
        poly_count: usize,
        /// Sample pairs for the DP function suite.
        #[arg(long, default_value_t = 500)]
        pairs: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Violations(u64),
    /// Output was written but a resource limit cut it short.
    Truncated(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_mathematical() => 2,
            Failure::Lib(e) if e.is_resource() => 3,
            Failure::Truncated(_) => 3,
            Failure::Violations(_) => 4,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
            Failure::Violations(k) => format!("{k} property violations"),
            Failure::Truncated(m) => format!("table stopped early: {m}"),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Analyze { common, .. }
        | Command::Diagonal { common, .. }
        | Command::Compare { common, .. }
        | Command::Milnor { common, .. }
        | Command::Converge { common, .. }
        | Command::Oracle { common, .. }
        | Command::Corpus { common, .. } => common.clone(),
    };
    let result = config(&common)
        .and_then(|cfg| run(&cli.command, &common, &cfg))
        .and_then(|text| emit(&text, common.out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lctforge: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn config(common: &Common) -> Result<Config, Failure> {
    let mut cfg = Config::from_env()?;
    if let Some(t) = common.trials {
        cfg.trials = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_ideal(path: &Path) -> Result<IdealPresentation, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_ideal(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_monomial(path: &Path) -> Result<MonomialIdeal, Failure> {
    Ok(MonomialIdeal::from_presentation(&read_ideal(path)?)?)
}

fn parse_change(text: &str) -> Result<LinearChange, Failure> {
    let rows = text
        .split(';')
        .map(|row| row.split(',').map(rational::parse).collect::<Result<Vec<Rational>, Error>>())
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(LinearChange::new(rows)?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn run(command: &Command, common: &Common, cfg: &Config) -> Outcome {
    match command {
        Command::Analyze {
            file,
            changes,
            nondegenerate,
            timings,
            ..
        } => {
            let ideal = read_ideal(file)?;
            let opts = AnalysisOptions {
                seed: common.seed,
                config: cfg.clone(),
                changes: changes.iter().map(|c| parse_change(c)).collect::<Result<_, _>>()?,
                nondegenerate: *nondegenerate,
            };
            Ok(json(&analyze_timed(&ideal, &opts, *timings)?))
        }
        Command::Diagonal { file, nondegenerate, .. } => {
            let ideal = read_ideal(file)?;
            let report = if ideal.is_monomial() {
                let d = is_diagonal(&MonomialIdeal::from_presentation(&ideal)?)?;
                serde_json::json!({
                    "verdict": if d.diagonal { "pass" } else { "fail" },
                    "witness": d.witness,
                })
            } else {
                let opts = AnalysisOptions {
                    seed: common.seed,
                    config: cfg.clone(),
                    changes: Vec::new(),
                    nondegenerate: *nondegenerate,
                };
                serde_json::to_value(analyze_timed(&ideal, &opts, false)?.diagonal).expect("serializes")
            };
            if common.json {
                return Ok(json(&report));
            }
            let mut s = format!("diagonal: {}\n", report["verdict"].as_str().unwrap_or("undetermined"));
            if let Some(w) = report["witness"].as_array() {
                let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "witness: {}", w.join(" "));
            }
            if let Some(r) = report["reason"].as_str() {
                let _ = writeln!(s, "reason: {r}");
            }
            Ok(s)
        }
        Command::Compare { smaller, larger, .. } => {
            let c = rees_compare(&read_monomial(smaller)?, &read_monomial(larger)?)?;
            if common.json {
                return Ok(json(&c));
            }
            Ok(format!(
                "DP(I1) = {}\nDP(I2) = {}\nmonotone: {}\nequality case: {}\n",
                rational::render(&c.dp1),
                rational::render(&c.dp2),
                c.monotone.as_str(),
                c.equality_case.as_str()
            ))
        }
        Command::Milnor { file, .. } => {
            let ideal = read_ideal(file)?;
            let [f] = ideal.generators() else {
                return Err(Failure::Io(format!("{}: expected exactly one polynomial", file.display())));
            };
            let v = milnor_vector(f, common.seed, cfg)?;
            if common.json {
                return Ok(json(&v));
            }
            let vals: Vec<String> = v.values.iter().map(u64::to_string).collect();
            Ok(format!("milnor vector: {}\n", vals.join(" ")))
        }
        Command::Converge {
            file,
            tmax,
            identity,
            change,
            ..
        } => {
            if *tmax == 0 || *tmax > cfg.tmax_cap {
                return Err(Error::CapExceeded {
                    what: "t_max",
                    value: *tmax as u64,
                    cap: cfg.tmax_cap as u64,
                }
                .into());
            }
            let ideal = read_ideal(file)?;
            let n = ideal.nvars();
            let phi = match (identity, change) {
                (true, _) => LinearChange::identity(n),
                (false, Some(c)) => parse_change(c)?,
                (false, None) => LinearChange::random(n, CHANGE_BOUND, common.seed),
            };
            let opts = AnalysisOptions {
                seed: common.seed,
                config: cfg.clone(),
                ..Default::default()
            };
            let report = analyze_timed(&ideal, &opts, false)?;
            let table = convergence_experiment(
                &ideal,
                *tmax,
                &phi,
                common.seed,
                &report.dp,
                report.lct.bounds.exact.as_ref(),
                cfg,
            )?;
            let text = if common.json { json(&table) } else { table.to_tsv() };
            if let Some(e) = &table.error {
                emit(&text, common.out.as_deref())?;
                return Err(Failure::Truncated(e.clone()));
            }
            Ok(text)
        }
        Command::Oracle { file, grid, .. } => {
            let m = read_monomial(file)?;
            let scales = match grid {
                Some(s) if *s > 0 => vec![*s],
                Some(_) => return Err(Error::InvalidArgument("--grid must be positive".into()).into()),
                None => vec![8, 16, 32],
            };
            let r = oracle_report(&m, &scales, cfg.degree_cap)?;
            if common.json {
                return Ok(json(&r));
            }
            let mut s = format!("covolume: {}\n", rational::render(&r.covolume));
            if let Some(sh) = &r.shoelace {
                let _ = writeln!(s, "shoelace: {}", rational::render(sh));
            }
            for l in &r.lattice {
                let _ = writeln!(
                    s,
                    "lattice s={}: {} (error {})",
                    l.scale,
                    rational::render(&l.estimate),
                    rational::render(&l.error)
                );
            }
            let _ = writeln!(s, "staircase colength: {}", r.staircase_colength);
            let _ = writeln!(s, "mora colength: {}", r.mora_colength);
            let _ = writeln!(s, "agree: {}", r.agree);
            Ok(s)
        }
        Command::Corpus {
            files,
            n,
            count,
            poly_count,
            pairs,
            ..
        } => {
            if n.is_empty() || n.iter().any(|&d| d == 0 || d > MAX_DIM) {
                return Err(Error::InvalidArgument(format!("--n values must lie in 1..={}", MAX_DIM)).into());
            }
            let mut monomials = corpus::monomial_corpus(n, *count, common.seed);
            let mut polys = corpus::polynomial_corpus(*poly_count, common.seed, 5, cfg)?;
            for f in files {
                let ideal = read_ideal(f)?;
                if ideal.is_monomial() {
                    monomials.push(MonomialIdeal::from_presentation(&ideal)?);
                } else {
                    polys.push(ideal);
                }
            }
            let summaries: Vec<CorpusSummary> = vec![
                corpus::monomial_suite(&monomials, common.seed, cfg)?,
                corpus::polynomial_suite(&polys, common.seed, cfg)?,
                corpus::oracle_suite(&monomials, &[8, 16, 32])?,
                corpus::dp_function_suite(*pairs, *pairs, common.seed),
            ];
            let violations: u64 = summaries.iter().map(CorpusSummary::violations).sum();
            let text = if common.json {
                json(&summaries)
            } else {
                let mut s = String::new();
                for summary in &summaries {
                    let _ = writeln!(s, "[{}] {} instances", summary.suite, summary.size);
                    for p in &summary.properties {
                        let _ = writeln!(s, "  {:<40} {:>5} checked {:>3} violations", p.name, p.checked, p.violations);
                        for ex in &p.examples {
                            let _ = writeln!(s, "    {ex}");
                        }
                    }
                    for f in &summary.findings {
                        let _ = writeln!(s, "  finding: {f}");
                    }
                }
                s
            };
            if violations > 0 {
                emit(&text, common.out.as_deref())?;
                return Err(Failure::Violations(violations));
            }
            Ok(text)
        }
    }
}
