use clap::{Parser, Subcommand, ValueEnum};
use genus4_cli::commands::{
    apply_expectation, cmd_a4_cone, cmd_classify, cmd_limit, cmd_normalform, cmd_picard, cmd_stability, Source,
    StabilityMode,
};
use genus4_cli::corpus::cmd_corpus;
use genus4_cli::report::{CliError, Format, Report};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Pretty,
}

#[derive(Parser)]
#[command(name = "genus4", about = "Singularities, stability and log MMP walls for genus four curves")]
struct Cli {
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    format: OutFormat,
    /// `field=value`: exit 4 unless the result field equals value.
    #[arg(long, global = true)]
    expect: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct SourceArgs {
    /// Inline curve text or JSON.
    #[arg(long)]
    expr: Option<String>,
    /// Read the curve from a file.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Singularity inventory of a curve.
    Classify {
        /// C_2A5, C_D, ribbon or C_AB A B. Put negative fractions after `--`.
        #[arg(allow_negative_numbers = true)]
        name: Vec<String>,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Stability verdict: chow, vgit, git, alpha or s2a5.
    Stability {
        mode: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<String>,
        /// alpha value, or 2/3-eps.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// One-parameter-subgroup limit, or test configuration check.
    Limit {
        /// e.g. x=0,y=-1,z=1
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Five rationals b0..b4 for the A4 cone configuration.
        #[arg(long, num_args = 5, allow_hyphen_values = true)]
        a4_cone: Option<Vec<String>>,
        /// With --a4-cone: print the configuration instead of checking it.
        #[arg(long)]
        emit: bool,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Normal form at an A3 or A4 vertex.
    Normalform {
        kind: String,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Divisor classes, walls and identities.
    Picard {
        sub: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<String>,
    },
    /// Verify the fixture corpus.
    Corpus {
        #[arg(long, default_value = "fixtures")]
        corpus: PathBuf,
    },
}

fn source(args: Vec<String>, s: SourceArgs) -> Source {
    Source { args, expr: s.expr, input: s.input }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let report = match cli.cmd {
        Cmd::Classify { name, src } => cmd_classify(&source(name, src))?,
        Cmd::Stability { mode, args, alpha, src } => {
            cmd_stability(StabilityMode::parse(&mode)?, alpha.as_deref(), &source(args, src))?
        }
        Cmd::Limit { weights, a4_cone, emit, src } => match a4_cone {
            Some(p) => cmd_a4_cone(&p, emit)?,
            None => cmd_limit(weights.as_deref(), &source(Vec::new(), src))?,
        },
        Cmd::Normalform { kind, src } => cmd_normalform(&kind, &source(Vec::new(), src))?,
        Cmd::Picard { sub, args } => cmd_picard(&sub, &args)?,
        Cmd::Corpus { corpus } => cmd_corpus(&corpus)?,
    };
    match cli.expect {
        Some(e) => {
            let (field, value) =
                e.split_once('=').ok_or_else(|| CliError::Parse(format!("--expect `{e}` is not field=value")))?;
            Ok(apply_expectation(report, field, value))
        }
        None => Ok(report),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutFormat::Json => Format::Json,
        OutFormat::Pretty => Format::Pretty,
    };
    match run(cli) {
        Ok(r) => {
            print!("{}", r.render(format));
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("genus4: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
