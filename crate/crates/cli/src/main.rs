//! `garside`: command-line access to normal forms, rigid conjugates and
//! Monte Carlo experiments in braid groups.
//!
//! Braid words are whitespace separated signed generator indices, with `D`
//! and `D-` for the half twist and its inverse, e.g. `"1 -2 D 3"`.
//! Exit codes: 0 success, 2 parse error, 3 invalid parameters.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use garside::census::{count_ball, count_sphere, growth_ratios, sample_ball, sample_sphere};
use garside::conjugacy::{fast_rigid_conjugate, solve_conjugacy, ConjugacyAnswer, FastOutcome};
use garside::experiment::{run_experiment, to_csv, to_json, ExperimentConfig, ExperimentKind};
use garside::{
    ArtinWord, BraidError, Exec, NormalForm, SampleConfig, Scheme, Uniqueness, WitnessPattern,
};

#[derive(Parser)]
#[command(
    name = "garside",
    version,
    about = "Garside normal forms and generic conjugacy in braid groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Rigid {
    /// Piece scheme: `floor` (⌊l/5⌋ outer pieces) or `paper` (⌈l/5⌉).
    #[arg(long, default_value = "floor")]
    scheme: String,
    /// Only use the witness pairs (Δσ2⁻¹)·σ1 and (Δσ_{n−2}⁻¹)·σ_{n−1}, and
    /// answer "I don't know" whenever no certificate is found.
    #[arg(long = "strict-paper")]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the left normal form of a word.
    Nf {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        n: usize,
    },
    /// Rigidify a braid and try to certify its rigid conjugate.
    RigidConj {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        rigid: Rigid,
    },
    /// Decide conjugacy of two braids when both can be certified.
    Conjugacy {
        #[arg(allow_hyphen_values = true)]
        word1: String,
        #[arg(allow_hyphen_values = true)]
        word2: String,
        #[arg(long)]
        n: usize,
        /// Strand count of the second braid, if it differs.
        #[arg(long)]
        n2: Option<usize>,
        #[command(flatten)]
        rigid: Rigid,
    },
    /// Exact counts of normal forms.
    Census {
        #[command(subcommand)]
        what: CensusCmd,
    },
    /// Uniform random braids, one normal form per line.
    Sample {
        #[command(subcommand)]
        what: SampleCmd,
    },
    /// Run a Monte Carlo experiment and emit one row per length.
    Experiment {
        /// rigid-proportion, blocking-subword, prefix-rare,
        /// conjugacy-success, conjugacy-bench or pa-proportion.
        kind: String,
        #[arg(long)]
        n: usize,
        /// Comma separated ascending lengths (radii for ball experiments).
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        eps: i64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        rigid: Rigid,
        /// File of witness words (one per line, `#` comments) for pa-proportion.
        #[arg(long)]
        witness_file: Option<PathBuf>,
        /// `csv` or `json`.
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock time in `elapsed_ms` (otherwise 0).
        #[arg(long)]
        timing: bool,
        /// Evaluate samples on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum CensusCmd {
    /// Sphere and ball sizes.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        length: usize,
    },
    /// Successive sphere size ratios up to `--length`.
    Growth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        length: usize,
    },
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    length: usize,
    #[arg(long, default_value_t = 1)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum SampleCmd {
    Sphere {
        #[command(flatten)]
        args: SampleArgs,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        eps: i64,
    },
    Ball {
        #[command(flatten)]
        args: SampleArgs,
    },
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        let code = match e {
            BraidError::Parse(_) => 2,
            BraidError::Invariant(_) => 1,
            _ => 3,
        };
        Failure(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(1, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(3, msg.into())
}

fn parse_nf(n: usize, word: &str) -> Result<NormalForm, Failure> {
    Ok(NormalForm::from_word(&ArtinWord::parse(n, word)?)?)
}

impl Rigid {
    fn scheme(&self) -> Result<Scheme, Failure> {
        match self.scheme.as_str() {
            "floor" => Ok(Scheme::Floor),
            "paper" => Ok(Scheme::Ceiling),
            s => Err(invalid(format!(
                "unknown scheme {s:?} (expected paper or floor)"
            ))),
        }
    }

    fn patterns(&self, n: usize) -> Vec<WitnessPattern> {
        if self.strict {
            WitnessPattern::strict(n)
        } else {
            WitnessPattern::all(n)
        }
    }
}

fn report_certificate(out: &mut impl Write, outcome: &FastOutcome, strict: bool) -> io::Result<()> {
    let cert = match outcome.certificate() {
        Some(c) if !(strict && c.uniqueness == Uniqueness::RigidNoCert) => c,
        _ => return writeln!(out, "I don't know"),
    };
    writeln!(out, "rigid: {}", cert.rigid)?;
    writeln!(out, "conjugator: {}", cert.conjugator)?;
    let status = match cert.uniqueness {
        Uniqueness::Certified => "certified",
        Uniqueness::RigidNoCert => "rigid-no-cert",
    };
    writeln!(out, "status: {status}")?;
    if let Some(m) = cert.witness_position {
        writeln!(out, "witness position: {m}")?;
    }
    Ok(())
}

fn read_witnesses(path: &PathBuf, n: usize) -> Result<Vec<NormalForm>, Failure> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_nf(n, l))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Nf { word, n } => writeln!(out, "{}", parse_nf(n, &word)?)?,
        Command::RigidConj { word, n, rigid } => {
            let x = parse_nf(n, &word)?;
            let outcome = fast_rigid_conjugate(&x, &rigid.patterns(n), rigid.scheme()?)?;
            report_certificate(&mut out, &outcome, rigid.strict)?;
        }
        Command::Conjugacy {
            word1,
            word2,
            n,
            n2,
            rigid,
        } => {
            let x1 = parse_nf(n, &word1)?;
            let x2 = parse_nf(n2.unwrap_or(n), &word2)?;
            match solve_conjugacy(&x1, &x2, &rigid.patterns(n), rigid.scheme()?)? {
                ConjugacyAnswer::Conjugate(c) => {
                    writeln!(out, "conjugate")?;
                    writeln!(out, "conjugator: {c}")?;
                }
                ConjugacyAnswer::NotConjugate => writeln!(out, "not conjugate")?,
                ConjugacyAnswer::Unknown => writeln!(out, "I don't know")?,
            }
        }
        Command::Census {
            what: CensusCmd::Count { n, length },
        } => {
            writeln!(out, "sphere: {}", count_sphere(n, length)?)?;
            writeln!(out, "ball: {}", count_ball(n, length)?)?;
        }
        Command::Census {
            what: CensusCmd::Growth { n, length },
        } => {
            let ratios = growth_ratios(n, length)?;
            for (k, r) in ratios.iter().enumerate() {
                writeln!(out, "{} {r:.9}", k + 2)?;
            }
        }
        Command::Sample { what } => {
            let (args, eps, ball) = match what {
                SampleCmd::Sphere { args, eps } => (args, eps, false),
                SampleCmd::Ball { args } => (args, 0, true),
            };
            let cfg = SampleConfig {
                n: args.n,
                l: args.length,
                eps,
                samples: args.samples,
                seed: args.seed,
            };
            let braids = if ball {
                sample_ball(&cfg, Exec::Parallel)?
            } else {
                sample_sphere(&cfg, Exec::Parallel)?
            };
            for x in braids {
                writeln!(out, "{x}")?;
            }
        }
        Command::Experiment {
            kind,
            n,
            lengths,
            eps,
            samples,
            seed,
            rigid,
            witness_file,
            format,
            out: path,
            timing,
            sequential,
        } => {
            let kind: ExperimentKind = kind.parse()?;
            if format != "csv" && format != "json" {
                return Err(invalid(format!(
                    "unknown format {format:?} (expected csv or json)"
                )));
            }
            let mut cfg = ExperimentConfig::new(kind, n, lengths, samples, seed);
            cfg.eps = eps;
            cfg.scheme = rigid.scheme()?;
            cfg.patterns = rigid.patterns(n);
            cfg.timing = timing;
            if sequential {
                cfg.exec = Exec::Sequential;
            }
            if let Some(p) = &witness_file {
                cfg.witnesses = read_witnesses(p, n)?;
            }
            if kind == ExperimentKind::PaProportion {
                if cfg.witnesses.is_empty() {
                    eprintln!("statistic: conjugate-to-rigid (no witness words supplied)");
                } else {
                    eprintln!(
                        "statistic: pseudo-Anosov proportion, certified by {} witness words",
                        cfg.witnesses.len()
                    );
                }
            }
            let rows = run_experiment(&cfg)?;
            let text = if format == "csv" {
                to_csv(&rows)
            } else {
                to_json(&rows)
            };
            match path {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
