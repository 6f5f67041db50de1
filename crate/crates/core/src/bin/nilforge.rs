use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nilforge::codec::{Encoder, Word};
use nilforge::complex::Complex;
use nilforge::dol::{dol_iterate, find_square, DolLetter};
use nilforge::harness::{
    exit_code, growth_census, nil_check, verify_determinism, verify_structure, Report,
};
use nilforge::presentation::{Config, Presentation};
use nilforge::rewrite::{reduces_to_zero, Strategy, Verdict};
use nilforge::{Error, Result};

#[derive(Parser)]
#[command(
    name = "nilforge",
    version,
    about = "Leveled square complexes and their nilsemigroup"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Pres {
    /// Environment radius of the coloring.
    #[arg(long, default_value_t = 2)]
    env_radius: u32,
    /// Longest paths, in edges, whose encodings are listed as realizable.
    #[arg(long, default_value_t = 4)]
    cat2_edges: usize,
}

impl Pres {
    fn config(&self) -> Config {
        Config {
            radius: self.env_radius,
            cat2_edges: self.cat2_edges,
        }
    }
}

#[derive(Args)]
struct Out {
    /// Directory for the reports of failed checks.
    #[arg(long, default_value = "witnesses")]
    witness_dir: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Builds a complex and writes its dump.
    Build {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Writes the letters of a complex, one per line.
    Alphabet {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 2)]
        env_radius: u32,
    },
    /// Generates and writes the relations of a complex.
    Presentation {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        pres: Pres,
    },
    /// Tries to reduce a word to zero.
    Reduce {
        #[arg(long)]
        rels: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, default_value = "pipeline")]
        strategy: Strategy,
        /// Where to write the steps of a zero reduction.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Iterates the substitution and scans for squares.
    Dol {
        #[arg(long)]
        iterate: u32,
        #[arg(long, default_value = "U1")]
        start: String,
        #[arg(long)]
        check_squares: bool,
    },
    VerifyStructure {
        #[arg(long, required_unless_present = "dump")]
        level: Option<u32>,
        /// Checks a dumped complex instead of building one.
        #[arg(long, conflicts_with = "level")]
        dump: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    VerifyDeterminism {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 2)]
        env_radius: u32,
        /// Largest radius tried when the first does not separate completions.
        #[arg(long)]
        max_radius: Option<u32>,
        #[command(flatten)]
        out: Out,
    },
    NilCheck {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, default_value = "pipeline")]
        strategy: Strategy,
        #[command(flatten)]
        pres: Pres,
        #[command(flatten)]
        out: Out,
    },
    GrowthCensus {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 2)]
        from: u32,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[command(flatten)]
        pres: Pres,
        #[command(flatten)]
        out: Out,
    },
    /// Runs every check on one complex and writes the reports as JSON lines.
    Report {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[command(flatten)]
        pres: Pres,
        #[command(flatten)]
        witnesses: Out,
    },
}

fn io_error(e: std::io::Error, path: impl std::fmt::Display) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{path}: {e}")))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_error(e, path.display()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_error(e, path.display()))
}

/// Prints each report and writes the failed ones to `dir`.
fn finish(reports: &[Report], out: &Out) -> Result<u8> {
    for r in reports {
        println!("{}", r.to_json());
        if r.status == nilforge::harness::Status::Fail {
            fs::create_dir_all(&out.witness_dir)
                .map_err(|e| io_error(e, out.witness_dir.display()))?;
            let scope: Vec<String> = r.scope.iter().map(|(k, v)| format!("{k}{v}")).collect();
            let name = format!("{}-{}.json", r.check, scope.join("-"));
            write(&out.witness_dir.join(name), &(r.to_json() + "\n"))?;
        }
    }
    Ok(exit_code(reports) as u8)
}

fn presentation(c: &Complex, pres: &Pres) -> Result<(Presentation, Encoder)> {
    let p = Presentation::generate(c, pres.config())?;
    let (_, enc) = Encoder::own(c, pres.env_radius);
    Ok((p, enc))
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Build { level, out } => {
            write(&out, &Complex::build(level)?.to_dump())?;
            Ok(0)
        }
        Cmd::Alphabet {
            level,
            out,
            env_radius,
        } => {
            let (a, _) = Encoder::own(&Complex::build(level)?, env_radius);
            write(&out, &a.to_text())?;
            eprintln!("{} letters", a.len());
            Ok(0)
        }
        Cmd::Presentation { level, out, pres } => {
            let p = Presentation::generate(&Complex::build(level)?, pres.config())?;
            write(&out, &p.export())?;
            eprintln!("{} relations", p.relations().len());
            Ok(0)
        }
        Cmd::Reduce {
            rels,
            word,
            budget,
            strategy,
            trace,
        } => {
            let p = Presentation::import(&read(&rels)?)?;
            let w = Word::from_text(p.alphabet(), read(&word)?.trim())?;
            match reduces_to_zero(&p, &w, budget, strategy) {
                Verdict::Zero { trace: steps } => {
                    println!("ZERO {} steps", steps.len());
                    if let Some(path) = trace {
                        let text: String = steps.iter().map(|s| format!("{s}\n")).collect();
                        write(&path, &text)?;
                    }
                    Ok(0)
                }
                Verdict::Irreducible { word } => {
                    println!("IRREDUCIBLE {}", word.to_text(p.alphabet()));
                    Ok(0)
                }
                Verdict::Unknown { frontier, budget } => {
                    println!("UNKNOWN frontier {frontier} budget {budget}");
                    Ok(2)
                }
            }
        }
        Cmd::Dol {
            iterate,
            start,
            check_squares,
        } => {
            let start = DolLetter::parse(&start)
                .ok_or_else(|| Error::Precondition(format!("unknown letter `{start}`")))?;
            let w = dol_iterate(start, iterate);
            println!("{w}");
            if !check_squares {
                return Ok(0);
            }
            match find_square(&w.0) {
                None => {
                    println!("square-free, {} letters", w.len());
                    Ok(0)
                }
                Some((at, period)) => {
                    println!("square at {at} with period {period}");
                    Ok(1)
                }
            }
        }
        Cmd::VerifyStructure { level, dump, out } => {
            let c = match (level, dump) {
                (_, Some(path)) => Complex::from_dump(&read(&path)?)?,
                (Some(n), None) => Complex::build(n)?,
                (None, None) => unreachable!("clap requires one"),
            };
            finish(&verify_structure(&c), &out)
        }
        Cmd::VerifyDeterminism {
            level,
            env_radius,
            max_radius,
            out,
        } => {
            let c = Complex::build(level)?;
            let to = max_radius.unwrap_or(env_radius).max(env_radius);
            finish(&[verify_determinism(&c, env_radius, to)], &out)
        }
        Cmd::NilCheck {
            level,
            max_edges,
            budget,
            strategy,
            pres,
            out,
        } => {
            let c = Complex::build(level)?;
            let (p, enc) = presentation(&c, &pres)?;
            finish(
                &[nil_check(&c, &p, &enc, max_edges, budget, strategy)],
                &out,
            )
        }
        Cmd::GrowthCensus {
            level,
            from,
            budget,
            pres,
            out,
        } => {
            let c = Complex::build(level)?;
            let (p, enc) = presentation(&c, &pres)?;
            let (_, r) = growth_census(&c, &p, &enc, from..=level, budget);
            finish(&[r], &out)
        }
        Cmd::Report {
            level,
            out,
            max_edges,
            budget,
            pres,
            witnesses,
        } => {
            let c = Complex::build(level)?;
            let (p, enc) = presentation(&c, &pres)?;
            let mut reports = std::thread::scope(|s| {
                let structure = s.spawn(|| verify_structure(&c));
                let determinism =
                    s.spawn(|| verify_determinism(&c, pres.env_radius, pres.env_radius));
                let nil =
                    s.spawn(|| nil_check(&c, &p, &enc, max_edges, budget, Strategy::Pipeline));
                let census = s.spawn(|| growth_census(&c, &p, &enc, 2..=level, budget).1);
                let mut all = structure.join().expect("structure checks");
                for h in [determinism, nil, census] {
                    all.push(h.join().expect("check thread"));
                }
                all
            });
            for r in &mut reports {
                r.scope
                    .insert("env-radius".into(), pres.env_radius.to_string());
                r.scope
                    .insert("cat2-edges".into(), pres.cat2_edges.to_string());
            }
            let text: String = reports.iter().map(|r| r.to_json() + "\n").collect();
            write(&out, &text)?;
            finish(&reports, &witnesses)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
