use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ekron::config::{self, CheckpointSpec, Format, RunConfig};
use ekron::{commands, formats, parallel, CliError, EXIT_CHECK_FAILED};
use ekron_core::FieldSpec;

/// Higher Euler-Kronecker constants of number fields.
#[derive(Parser)]
#[command(name = "ekron", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One record per (field, r, route).
    Compute(RunArgs),
    /// Compare routes against their summed error bars; exit 4 on disagreement.
    Crosscheck(RunArgs),
    /// Quadratic family sweep with bound diagnostics, as CSV.
    Scan(ScanArgs),
}

#[derive(Args)]
#[group(id = "field_selector", required = true, multiple = false)]
struct FieldArgs {
    /// Built-in field; only `q` (the rationals).
    #[arg(long, value_parser = ["q"])]
    field: Option<String>,
    /// Q(sqrt(d)) for a squarefree d.
    #[arg(long, allow_negative_numbers = true)]
    quad: Option<i64>,
    /// Q(zeta_m) for m >= 3, m != 2 mod 4.
    #[arg(long)]
    cyclo: Option<u64>,
    /// Splitting-table CSV with `# n_K=, r1=, r2=, disc=` header.
    #[arg(long)]
    custom: Option<PathBuf>,
}

#[derive(Args)]
struct CommonArgs {
    /// Orders: `a..b` (inclusive), `a` or `a,b,c`.
    #[arg(long = "r")]
    orders: Option<String>,
    #[arg(long, default_value = "1e6")]
    xmax: String,
    /// `geom:N`, `geom:N:DECADES` or a comma list of x values.
    #[arg(long)]
    checkpoints: Option<String>,
    /// Comma list of dirichlet, ihara, integral, zerosum.
    #[arg(long)]
    routes: Option<String>,
    /// Zero ordinates, one per line.
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// Multiplier of the heuristic zero density in the zero-sum tail bound.
    #[arg(long, default_value_t = 1.0)]
    density_constant: f64,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, env = "EKRON_THREADS")]
    threads: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    common: CommonArgs,
    /// Write the von Mangoldt stream as `n,value` CSV.
    #[arg(long)]
    export_stream: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Fundamental discriminants `dmin..dmax`.
    #[arg(long, allow_hyphen_values = true)]
    quad_range: String,
    #[command(flatten)]
    common: CommonArgs,
}

fn invalid(msg: String) -> CliError {
    CliError::Validation(msg)
}

fn select_field(args: &FieldArgs) -> Result<FieldSpec, CliError> {
    if args.field.is_some() {
        return Ok(FieldSpec::rational());
    }
    if let Some(d) = args.quad {
        return FieldSpec::quadratic(d).map_err(|e| invalid(e.to_string()));
    }
    if let Some(m) = args.cyclo {
        return FieldSpec::cyclotomic(m).map_err(|e| invalid(e.to_string()));
    }
    let path = args.custom.as_ref().expect("clap enforces one selector");
    let file = File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let label = path.file_stem().map_or_else(|| "custom".into(), |s| s.to_string_lossy().into_owned());
    formats::load_custom_field(BufReader::new(file), label)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn build_config(
    fields: Vec<FieldSpec>,
    common: &CommonArgs,
    default_orders: &str,
    default_routes: &str,
    default_format: Format,
) -> Result<RunConfig, CliError> {
    let orders = config::parse_orders(common.orders.as_deref().unwrap_or(default_orders)).map_err(invalid)?;
    let x_max = config::parse_xmax(&common.xmax).map_err(invalid)?;
    let routes = config::parse_routes(common.routes.as_deref().unwrap_or(default_routes)).map_err(invalid)?;
    let mut cfg = RunConfig::new(fields, orders, x_max, routes);
    if let Some(spec) = &common.checkpoints {
        cfg.checkpoints = spec.parse::<CheckpointSpec>().map_err(invalid)?;
    }
    cfg.zeros = common.zeros.clone();
    cfg.density_constant = common.density_constant;
    cfg.format = common.format.unwrap_or(default_format);
    cfg.output = common.output.clone();
    cfg.threads = parallel::thread_count(common.threads);
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Data(format!("writing output: {e}"));
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(io_err),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(io_err)
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute(args) => {
            let field = select_field(&args.field)?;
            let mut cfg = build_config(vec![field], &args.common, "0", "dirichlet,ihara", Format::Json)?;
            cfg.export_stream = args.export_stream;
            emit(&cfg, &commands::compute(&cfg)?)?;
            Ok(0)
        }
        Command::Crosscheck(args) => {
            let field = select_field(&args.field)?;
            let mut cfg = build_config(vec![field], &args.common, "0", "dirichlet,ihara", Format::Json)?;
            cfg.export_stream = args.export_stream;
            let (text, pass) = commands::crosscheck(&cfg)?;
            emit(&cfg, &text)?;
            if pass {
                Ok(0)
            } else {
                eprintln!("cross-route check failed; see rows with pass = false");
                Ok(EXIT_CHECK_FAILED)
            }
        }
        Command::Scan(args) => {
            let (lo, hi) = config::parse_int_range(&args.quad_range).map_err(invalid)?;
            let family = commands::quadratic_family(lo, hi);
            let cfg = build_config(family, &args.common, "1", "dirichlet", Format::Csv)?;
            emit(&cfg, &commands::scan(&cfg)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
