//! `z2z8`: counts of Z2Z8-additive codes, sequences, oracle checks and
//! standard-form matrices from the command line.
//!
//! Exit codes: 0 success, 1 internal inconsistency or formula/oracle mismatch,
//! 2 usage error, 3 resource guard.

mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use z2z8::codes::{self, Ambient, CodeError, StandardFormMatrix};
use z2z8::mgn::{self, MgnError};
use z2z8::oracle::{self, OracleError, MAX_ORACLE_LOG2};
use z2z8::sequence::{SequenceError, SequenceFamily};
use z2z8::{CodeType, TypeProfile, Z2Z4Profile};

#[derive(Parser)]
#[command(name = "z2z8", version, about = "Exact counts of Z2Z8-additive codes by type")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Bfile,
}

#[derive(Subcommand)]
enum Command {
    /// Number of codes of one type.
    Count {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Also print the factors N1..N4, D1..D4 and the exponents.
        #[arg(long)]
        breakdown: bool,
        /// Also print the dual type and its count.
        #[arg(long)]
        dual: bool,
    },
    /// Terms of a built-in or affine family of types.
    Sequence {
        /// Built-in family (t1..t8). Omit when using --slots.
        family: Option<String>,
        /// Six comma-separated affine slots in r, e.g. "r+1,2,r,1,1,0".
        #[arg(long, conflicts_with = "family")]
        slots: Option<String>,
        /// First index (defaults to the family offset).
        #[arg(long, allow_negative_numbers = true)]
        from: Option<i64>,
        /// Last index (defaults to 9 past the first).
        #[arg(long, allow_negative_numbers = true)]
        to: Option<i64>,
    },
    /// Compare the formula with exhaustive enumeration.
    Verify {
        #[command(flatten)]
        ambient: AmbientArgs,
    },
    /// Sweep the structural identities and report each one.
    CheckIdentities {
        #[arg(long, default_value_t = 4)]
        max_alpha: u32,
        #[arg(long, default_value_t = 4)]
        max_beta: u32,
        /// Skip the enumeration that confirms the full binary rank case.
        #[arg(long)]
        no_oracle: bool,
        /// Also report the self-dual count condition at this type,
        /// given as "alpha,beta,k0,k1,k2,k3".
        #[arg(long, value_parser = parse_profile)]
        profile: Option<TypeProfile>,
    },
    /// Emit a standard-form generator matrix.
    Matrix {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Ring exponent: 3 for Z8, 2 for Z4 (k3 must then be 0).
        #[arg(long, default_value_t = 3)]
        e: u32,
        /// Seed for the free blocks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Leave every free block zero.
        #[arg(long)]
        zero: bool,
        /// Also emit the parity-check matrix.
        #[arg(long)]
        parity: bool,
        /// Also list every codeword.
        #[arg(long)]
        span: bool,
    },
    /// Write the per-type census as JSON.
    CensusExport {
        #[command(flatten)]
        ambient: AmbientArgs,
        /// Use the formula instead of enumeration (no size limit).
        #[arg(long)]
        formula: bool,
    },
    /// List every subgroup with its type and generators.
    Enumerate {
        #[command(flatten)]
        ambient: AmbientArgs,
    },
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    alpha: u32,
    #[arg(long)]
    beta: u32,
    #[arg(long)]
    k0: u32,
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    k2: u32,
    #[arg(long, default_value_t = 0)]
    k3: u32,
}

impl ProfileArgs {
    fn profile(&self) -> TypeProfile {
        TypeProfile::new(self.alpha, self.beta, self.k0, self.k1, self.k2, self.k3)
    }
}

#[derive(Args)]
struct AmbientArgs {
    #[arg(long)]
    alpha: u32,
    #[arg(long)]
    beta: u32,
    #[arg(long, default_value_t = 3)]
    e: u32,
}

fn parse_profile(s: &str) -> Result<TypeProfile, String> {
    let v: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, k0, k1, k2, k3] => Ok(TypeProfile::new(a, b, k0, k1, k2, k3)),
        _ => Err(format!("expected 6 comma-separated values, got {}", v.len())),
    }
}

/// A failed command, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
    /// The output is still printed; the exit code reports the mismatch.
    Mismatch(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) | Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Guard(_) => 3,
        }
    }
}

impl From<MgnError> for Failure {
    fn from(e: MgnError) -> Self {
        match e {
            MgnError::InvalidProfile(_) | MgnError::Precondition(_) => Failure::Usage(e.to_string()),
            MgnError::Arith(_) | MgnError::Inconsistent { .. } => Failure::Internal(e.to_string()),
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::AmbientTooLarge { .. } => Failure::Guard(e.to_string()),
            CodeError::NotASubgroup(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Guard { .. } => Failure::Guard(e.to_string()),
            OracleError::Code(c) => c.into(),
            OracleError::Mgn(m) => m.into(),
            OracleError::Json(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<SequenceError> for Failure {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::Mgn(m) => m.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Rendered output plus an optional failure to report after writing it.
struct Report {
    text: String,
    failure: Option<Failure>,
}

impl From<String> for Report {
    fn from(text: String) -> Self {
        Report { text, failure: None }
    }
}

fn no_bfile(format: Format, what: &str) -> Result<(), Failure> {
    if format == Format::Bfile {
        return Err(Failure::Usage(format!("--format bfile only applies to `sequence`, not `{what}`")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Count { profile, breakdown, dual } => {
            no_bfile(cli.format, "count")?;
            let p = profile.profile();
            let view = render::CountView::build(&p, *breakdown, *dual)?;
            Ok(render::count(&view, json).into())
        }
        Command::Sequence { family, slots, from, to } => {
            let fam = match (family, slots) {
                (Some(name), None) => SequenceFamily::builtin(name)?,
                (None, Some(spec)) => SequenceFamily::parse("custom", spec)?,
                _ => {
                    let names: Vec<&str> = SequenceFamily::builtin_names().collect();
                    return Err(Failure::Usage(format!(
                        "give a family name ({}) or --slots",
                        names.join(", ")
                    )));
                }
            };
            let start = from.unwrap_or(fam.offset);
            let end = to.unwrap_or(start.saturating_add(9));
            let terms = fam.terms(start, end)?;
            Ok(render::sequence(&terms, cli.format == Format::Bfile, json).into())
        }
        Command::Verify { ambient } => {
            no_bfile(cli.format, "verify")?;
            let report = oracle::verify_formula(ambient.alpha, ambient.beta, ambient.e)?;
            let text = render::verify(&report, json);
            let failure = (!report.passed()).then(|| Failure::Mismatch("formula and oracle disagree".into()));
            Ok(Report { text, failure })
        }
        Command::CheckIdentities {
            max_alpha,
            max_beta,
            no_oracle,
            profile,
        } => {
            no_bfile(cli.format, "check-identities")?;
            let report = mgn::check_identities(*max_alpha, *max_beta)?;
            let confirmation = if *no_oracle {
                None
            } else {
                let c = oracle::census(2, 2, 3)?;
                let t = TypeProfile::new(2, 2, 2, 1, 0, 0);
                Some((t, c.get(&CodeType::Z2Z8(t))))
            };
            let self_dual = profile.map(|p| render::SelfDualView::build(&p)).transpose()?;
            let text = render::identities(&report, confirmation.as_ref(), self_dual.as_ref(), json);
            let failure = (!report.core_passed()).then(|| Failure::Mismatch("an identity failed".into()));
            Ok(Report { text, failure })
        }
        Command::Matrix {
            profile,
            e,
            seed,
            zero,
            parity,
            span,
        } => {
            no_bfile(cli.format, "matrix")?;
            let p = profile.profile();
            let kind = match e {
                3 => CodeType::Z2Z8(p),
                2 if p.k3 == 0 => CodeType::Z2Z4(Z2Z4Profile::new(p.alpha, p.beta, p.k0, p.k1, p.k2)),
                2 => return Err(Failure::Usage("--k3 must be 0 when --e 2".into())),
                _ => return Err(Failure::Usage(format!("--e must be 2 or 3, got {e}"))),
            };
            let m = if *zero {
                StandardFormMatrix::zero(kind)?
            } else {
                StandardFormMatrix::random(kind, *seed)?
            };
            let rows = m.assemble();
            let h = if *parity { Some(m.parity_check()?) } else { None };
            let words = if *span {
                let amb = m.ambient();
                if amb.log2_order() > MAX_ORACLE_LOG2 {
                    return Err(Failure::Guard(format!(
                        "--span needs an ambient group below 2^{}, {amb} has order 2^{}",
                        MAX_ORACLE_LOG2 + 1,
                        amb.log2_order()
                    )));
                }
                Some(codes::span(amb, &rows)?.words().collect::<Vec<_>>())
            } else {
                None
            };
            Ok(render::matrix(m.ambient(), &rows, h.as_ref(), words.as_deref(), json).into())
        }
        Command::CensusExport { ambient, formula } => {
            no_bfile(cli.format, "census-export")?;
            let census = if *formula {
                oracle::formula_census(ambient.alpha, ambient.beta, ambient.e)?
            } else {
                oracle::census(ambient.alpha, ambient.beta, ambient.e)?
            };
            Ok(format!("{}\n", census.to_json()).into())
        }
        Command::Enumerate { ambient } => {
            no_bfile(cli.format, "enumerate")?;
            let amb = Ambient::new(ambient.alpha, ambient.beta, ambient.e)?;
            let subs = oracle::enumerate_subgroups(ambient.alpha, ambient.beta, ambient.e)?;
            let listed = subs
                .iter()
                .map(|c| Ok((codes::classify_type(c)?, c.len(), c.generators())))
                .collect::<Result<Vec<_>, CodeError>>()?;
            Ok(render::enumerate(amb, &listed, json).into())
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, failure) = match run(&cli) {
        Ok(r) => (Some(r.text), r.failure),
        Err(f) => (None, Some(f)),
    };
    if let Some(text) = text {
        if let Err(e) = emit(cli.out.as_ref(), &text) {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(1);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Guard(m) => eprintln!("error: resource guard: {m}"),
                Failure::Mismatch(m) => eprintln!("mismatch: {m}"),
                Failure::Internal(m) => eprintln!("internal error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
