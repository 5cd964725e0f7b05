use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

mod commands;

use commands::CliError;
use triplepoint::format::SCHEMA_VERSION;

#[derive(Parser, Debug)]
#[command(name = "triplepoint", version, about = "Surfaces in P^3 with ordinary triple points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Upper bounds for the number of triple points on a degree-d surface.
    Bounds {
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        degree: Option<u32>,
        /// Inclusive degree range such as 3..12.
        #[arg(long)]
        table: Option<String>,
    },
    /// Spectrum of the Brieskorn singularity with the given exponents.
    Spectrum {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
    },
    /// Invariants of the resolution of a degree-d surface with nu triple points.
    Invariants {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        nu: u32,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
    },
    /// Look up the class of a sextic with triple points.
    ClassifySextic {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        pg: i64,
        #[arg(long, default_value_t = 0)]
        q: i64,
        #[arg(long, value_delimiter = ',')]
        exc: Option<Vec<u32>>,
    },
    /// Build a member of one of the explicit families.
    Construct {
        #[arg(long)]
        family: String,
        /// Comma-separated name=value pairs.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        field: Option<String>,
        /// Skip certification of the declared points.
        #[arg(long)]
        unchecked: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Certify the singular locus of a surface.
    Certify {
        #[command(flatten)]
        input: Input,
        /// Also compute the Jacobian Hilbert function.
        #[arg(long)]
        hilbert: bool,
        /// Enumerate over the quadratic extension as well.
        #[arg(long, default_value_t = 1)]
        extension: u32,
        #[arg(long)]
        k_max: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Apply the reciprocal transformation.
    Cremona {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Dimension of the equisingular tangent space at the declared points.
    TangentDim {
        #[command(flatten)]
        input: Input,
    },
    /// Cayley dianode surface of a quartic g and quadrics q1, q2, q3.
    Dianode {
        #[command(flatten)]
        polys: PolyInput,
        /// Points at which to certify the result.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// The four cubic minors cutting out the Steiner curve of a net of quadrics.
    Steiner {
        #[command(flatten)]
        polys: PolyInput,
    },
    /// Forms of a given degree with assigned multiplicity at points.
    LinearSystem {
        #[arg(long)]
        field: String,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 3)]
        multiplicity: u32,
        #[arg(long)]
        points: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// surface.json; standard input when omitted or `-`.
    path: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PolyInput {
    #[arg(long)]
    field: String,
    /// Polynomial text; repeat in order.
    #[arg(long = "poly")]
    poly: Vec<String>,
    /// File with one polynomial per line; `#` starts a comment.
    #[arg(long = "polys", conflicts_with = "poly")]
    file: Option<PathBuf>,
}

impl Input {
    fn read(&self) -> Result<String, CliError> {
        match self.path.as_deref() {
            None => read_stdin(),
            Some(p) if p == Path::new("-") => read_stdin(),
            Some(p) => read_file(p),
        }
    }
}

impl PolyInput {
    fn lines(&self) -> Result<Vec<String>, CliError> {
        match &self.file {
            None => Ok(self.poly.clone()),
            Some(p) => Ok(read_file(p)?
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                .filter(|l| !l.is_empty())
                .collect()),
        }
    }
}

fn read_stdin() -> Result<String, CliError> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io {
        path: "<stdin>".into(),
        source: e,
    })?;
    Ok(s)
}

fn read_file(p: &Path) -> Result<String, CliError> {
    fs::read_to_string(p).map_err(|e| CliError::Io {
        path: p.display().to_string(),
        source: e,
    })
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("plain data");
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            source: e,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    source: e,
                })
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("TRIPLEPOINT_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("TRIPLEPOINT_THREADS must be a number, got `{raw}`")))?;
    // 0 keeps rayon's automatic choice
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Bounds { degree, table } => match (degree, table) {
            (Some(d), _) => emit(&commands::bounds_single(d)?, None),
            (None, Some(range)) => emit(&commands::bounds_table(&range)?, None),
            (None, None) => unreachable!("clap requires one of them"),
        },
        Command::Spectrum { exponents } => emit(&commands::spectrum(&exponents)?, None),
        Command::Invariants { degree, nu, alpha } => emit(&commands::invariants(degree, nu, alpha)?, None),
        Command::ClassifySextic { nu, pg, q, exc } => {
            emit(&commands::classify_sextic(nu, pg, q, exc.as_deref())?, None)
        }
        Command::Construct {
            family,
            params,
            field,
            unchecked,
            out,
        } => emit(
            &commands::construct(&family, &params, field.as_deref(), unchecked)?,
            out.output.as_deref(),
        ),
        Command::Certify {
            input,
            hilbert,
            extension,
            k_max,
            out,
        } => emit(
            &commands::certify(&input.read()?, hilbert, extension, k_max)?,
            out.output.as_deref(),
        ),
        Command::Cremona { input, out } => emit(&commands::cremona(&input.read()?)?, out.output.as_deref()),
        Command::TangentDim { input } => emit(&commands::tangent_dim(&input.read()?)?, None),
        Command::Dianode { polys, points } => {
            let pts = points.as_deref().map(read_file).transpose()?;
            emit(&commands::dianode(&polys.field, &polys.lines()?, pts.as_deref())?, None)
        }
        Command::Steiner { polys } => emit(&commands::steiner(&polys.field, &polys.lines()?)?, None),
        Command::LinearSystem {
            field,
            degree,
            multiplicity,
            points,
        } => emit(
            &commands::linear_system(&field, degree, multiplicity, &read_file(&points)?)?,
            None,
        ),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = json!({
                "error": { "kind": e.kind(), "message": e.to_string() },
                "schema_version": SCHEMA_VERSION,
            });
            // a closed stdout leaves nothing to report to
            let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(&body).expect("plain data"));
            ExitCode::from(1)
        }
    }
}
