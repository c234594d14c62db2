//! `modsym`: dimension tables, Hecke matrices, q-expansions and comparison
//! reports for subgroups of Hecke triangle groups.
//!
//! Exit codes: 0 success, 2 usage, 3 unsupported combination, 4 internal
//! invariant violation.

mod commands;
mod error;
mod job;
mod report;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modsym::hecke::OpKey;
use modsym::ring::{Integers, PrimeField, Rationals, Ring};
use modsym::triangle::lambda_ring;
use serde::Serialize;

use commands::Space;
use error::CliError;
use job::{Group, GroupSpec, Job, RingSpec};
use report::{render_rows, Document, JobEcho, Table, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "modsym", version, about = "Exact modular symbols and cohomology of triangle groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ranks of every presentation, genus, cusps, elliptic points, torsion.
    Dims(JobArgs),
    /// Matrix and characteristic polynomial of one Hecke or diamond operator.
    Hecke {
        #[command(flatten)]
        job: JobArgs,
        /// `T<p>` (or just `<p>`) for a Hecke operator, `d<d>` for a diamond.
        #[arg(long)]
        op: Op,
        #[arg(long, value_enum, default_value_t = Space::Full)]
        space: Space,
    },
    /// Eigenform coefficients `a_1, …, a_bound` on the cuspidal part.
    Qexp {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// Manin presentation against surface cohomology, with local terms.
    Compare(JobArgs),
}

#[derive(Debug, Args)]
struct JobArgs {
    /// gamma0:N, gamma1:N or perm-file:PATH.
    #[arg(long)]
    group: GroupSpec,
    #[arg(long, default_value_t = 2)]
    weight: u64,
    /// z, q, fp:p or lambda (the field generated by 2cos(pi/n)).
    #[arg(long, default_value = "q")]
    ring: RingSpec,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    out: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy)]
struct Op(OpKey);

impl FromStr for Op {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (diamond, digits) = if let Some(d) = s.strip_prefix('d') {
            (true, d)
        } else if let Some(d) = s.strip_prefix('<').and_then(|d| d.strip_suffix('>')) {
            (true, d)
        } else {
            (false, s.strip_prefix('T').or_else(|| s.strip_prefix('U')).unwrap_or(s))
        };
        let v: u64 = digits.parse().map_err(|_| format!("expected T<p> or d<d>, got {s:?}"))?;
        Ok(Op(if diamond { OpKey::Diamond(v) } else { OpKey::Hecke(v) }))
    }
}

struct Rendered {
    json: String,
    table: String,
}

fn render<T: Serialize + Table>(command: &'static str, job: &Job, result: T) -> Result<Rendered, CliError> {
    let echo = JobEcho {
        group: job.group_spec.to_string(),
        n: job.group.n().to_string(),
        index: job.group.subgroup.index().to_string(),
        weight: job.weight.to_string(),
        ring: job.ring.to_string(),
    };
    let mut rows = echo.rows();
    rows.extend(result.rows());
    let table = render_rows(&rows);
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        command,
        job: echo,
        result,
    };
    let mut json = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Invariant(e.to_string()))?;
    json.push('\n');
    Ok(Rendered { json, table })
}

fn run_with<R: Ring>(command: &Command, job: &Job, ring: R) -> Result<Rendered, CliError> {
    match command {
        Command::Dims(_) => render("dims", job, commands::dims(job, ring)?),
        Command::Compare(_) => render("compare", job, commands::compare(job, ring)?),
        Command::Hecke { op, space, .. } => render("hecke", job, commands::hecke(job, ring, op.0, *space)?),
        Command::Qexp { bound, .. } => render("qexp", job, commands::qexp(job, ring, *bound)?),
    }
}

fn run(cli: &Cli) -> Result<(Rendered, Format), CliError> {
    let args = match &cli.command {
        Command::Dims(a) | Command::Compare(a) => a,
        Command::Hecke { job, .. } | Command::Qexp { job, .. } => job,
    };
    let group = Group::load(&args.group)?;
    let job = Job {
        group_spec: args.group.clone(),
        group,
        weight: args.weight,
        ring: args.ring,
    };
    // reject impossible weight/variant pairs before any computation
    let rendered = match job.ring {
        RingSpec::Integers => {
            job.group.weight_module(Integers, job.weight)?;
            run_with(&cli.command, &job, Integers)
        }
        RingSpec::Rationals => {
            job.group.weight_module(Rationals, job.weight)?;
            run_with(&cli.command, &job, Rationals)
        }
        RingSpec::PrimeField(p) => {
            let f = PrimeField::new(p)?;
            job.group.weight_module(f, job.weight)?;
            run_with(&cli.command, &job, f)
        }
        RingSpec::Lambda => {
            let f = lambda_ring(job.group.n())?.field()?;
            job.group.weight_module(f.clone(), job.weight)?;
            run_with(&cli.command, &job, f)
        }
    }?;
    Ok((rendered, args.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((r, Format::Json)) => {
            print!("{}", r.json);
            ExitCode::SUCCESS
        }
        Ok((r, Format::Table)) => {
            print!("{}", r.table);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
