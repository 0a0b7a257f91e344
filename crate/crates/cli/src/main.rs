use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use steklov::bounds::{certify_sigma1_with, isoperimetric_bounds, volume_bound, CertifyOptions};
use steklov::cayley::{growth_function, GroupDescriptor, DEFAULT_BALL_CAP};
use steklov::families::{self, Family, ParamRange};
use steklov::fmt::{format_real, round_sig};
use steklov::graph::two_point_family;
use steklov::steklov::{dtn_matrix_with, dtn_structure, spectrum_with, SolverOptions};
use steklov::sweep::{host_chain, run_sweep, SweepOptions, DEFAULT_GROWTH_N_MAX};
use steklov::{Error, Execution, GraphWithBoundary};

/// Steklov spectra and σ₁ upper bounds for graphs with boundary.
#[derive(Debug, Parser)]
#[command(name = "steklov", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Seed for random families.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of group elements enumerated in a ball.
    #[arg(long, global = true, default_value_t = DEFAULT_BALL_CAP)]
    cap: usize,
    /// Eigensolver and iterative-solve tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Largest radius sampled when estimating the growth constant.
    #[arg(long, global = true, default_value_t = DEFAULT_GROWTH_N_MAX)]
    growth_n_max: u32,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit graph JSON: `two_point N` (alias `example1`), `zd_ball D R`, `zd_box D S1 .. SD`,
    /// `heis_ball R`, `animal D SIZE`, or `json PATH`.
    Gen {
        #[arg(num_args = 1.., required = true)]
        family: Vec<String>,
    },
    /// Full Steklov spectrum of a graph JSON file (`-` for stdin).
    Spectrum {
        input: PathBuf,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Test-function certificate for σ₁ of a host-labelled graph.
    Certify {
        input: PathBuf,
        /// Override the covering count of the constant chain.
        #[arg(long)]
        c1: Option<u64>,
    },
    /// CSV sweep over a family, e.g. `zd_ball 2 1..10`.
    Sweep {
        #[arg(num_args = 2.., required = true)]
        spec: Vec<String>,
        /// Override the covering count of the constant chain.
        #[arg(long)]
        c1: Option<u64>,
        /// Append per-row runtimes; output is then not reproducible.
        #[arg(long)]
        timings: bool,
    },
    /// Growth function of `z D` or `heis`, up to N_MAX.
    Growth {
        #[arg(num_args = 1..)]
        args: Vec<String>,
        /// Group descriptor JSON file instead of a named group.
        #[arg(long)]
        group: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Resource(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::ResourceLimit { .. } | Error::OracleTooLarge { .. } => Failure::Resource(msg),
            Error::Invariant(_) => Failure::Invariant(msg),
            _ => Failure::Input(msg),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    let mut out = open_output(g.output.as_deref())?;
    match &cli.command {
        Command::Gen { family } => cmd_gen(g, family, &mut out)?,
        Command::Spectrum { input, csv, .. } => cmd_spectrum(g, input, *csv, &mut out)?,
        Command::Certify { input, c1 } => cmd_certify(g, input, *c1, &mut out)?,
        Command::Sweep { spec, c1, timings } => cmd_sweep(g, spec, *c1, *timings, &mut out)?,
        Command::Growth { args, group } => cmd_growth(g, args, group.as_deref(), &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn open_output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<GraphWithBoundary> {
    Ok(GraphWithBoundary::from_json(&read_input(path)?)?)
}

fn solver(g: &Global) -> SolverOptions {
    let mut opts = SolverOptions::default();
    if let Some(t) = g.tol {
        opts.eigen_tol = t;
        opts.cg_tol = t;
    }
    opts
}

fn execution(g: &Global) -> Execution {
    if g.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn parse<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<T> {
    s.parse().map_err(|_| Failure::Input(format!("bad {what} `{s}`")))
}

fn write_json(out: &mut dyn Write, v: &Value) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn real(x: f64) -> Value {
    json!(round_sig(x))
}

fn cmd_gen(g: &Global, words: &[String], out: &mut dyn Write) -> CliResult<()> {
    let w: Vec<&str> = words.iter().map(String::as_str).collect();
    let graph = match w.as_slice() {
        ["two_point" | "example1", n] => two_point_family(parse(n, "n")?)?,
        ["zd_ball", d, r] => families::zd_ball(parse(d, "dimension")?, parse(r, "radius")?, g.cap)?,
        ["heis_ball", r] => families::heis_ball(parse(r, "radius")?, g.cap)?,
        ["zd_box", d, sides @ ..] => {
            let sides = sides.iter().map(|s| parse(s, "side")).collect::<CliResult<Vec<u32>>>()?;
            families::zd_box(parse(d, "dimension")?, &sides, g.cap)?
        }
        ["animal", d, size] => {
            let desc = GroupDescriptor::free_abelian(parse(d, "dimension")?)?;
            families::lattice_animal(&desc, parse(size, "size")?, g.seed)?.induce()?
        }
        ["json", path] => load_graph(Path::new(path))?,
        _ => return Err(Failure::Input(format!("unknown family `{}`", w.join(" ")))),
    };
    writeln!(out, "{}", graph.to_json())?;
    Ok(())
}

fn cmd_spectrum(g: &Global, input: &Path, csv: bool, out: &mut dyn Write) -> CliResult<()> {
    let graph = load_graph(input)?;
    let opts = solver(g);
    let spec = spectrum_with(&graph, &opts)?;
    let sigma1 = spec.sigma1()?;
    let lambda = dtn_matrix_with(&graph, &opts)?;
    let (row_sum, asym, min_eig) = dtn_structure(&lambda, &spec.eigenvalues);
    if csv {
        writeln!(out, "# schema: steklov-spectrum/1")?;
        writeln!(out, "index,sigma")?;
        for (i, s) in spec.eigenvalues.iter().enumerate() {
            writeln!(out, "{i},{}", format_real(*s))?;
        }
        writeln!(out, "# sigma1={}", format_real(sigma1))?;
        return Ok(());
    }
    let r = &spec.residuals;
    write_json(
        out,
        &json!({
            "vertices": graph.len(),
            "boundary": graph.boundary().len(),
            "eigenvalues": spec.eigenvalues.iter().map(|&s| real(s)).collect::<Vec<_>>(),
            "sigma1": real(sigma1),
            "residuals": {
                "interior_laplacian": real(r.interior_laplacian),
                "boundary_equation": real(r.boundary_equation),
                "row_sum": real(row_sum),
                "asymmetry": real(asym),
                "min_eigenvalue": real(min_eig),
                "jacobi_sweeps": r.jacobi_sweeps,
            },
        }),
    )
}

fn cmd_certify(g: &Global, input: &Path, c1: Option<u64>, out: &mut dyn Write) -> CliResult<()> {
    let graph = load_graph(input)?;
    let host = graph
        .host()
        .cloned()
        .ok_or_else(|| Failure::Input("graph has no host group; certificates need host labels".into()))?;
    let sweep_opts = SweepOptions { cap: g.cap, growth_n_max: g.growth_n_max, c1_override: c1, ..Default::default() };
    let chain = host_chain(&host, &sweep_opts)?;
    let sigma1 = spectrum_with(&graph, &solver(g))?.sigma1()?;
    let cert = certify_sigma1_with(&graph, &host, &chain, &CertifyOptions { execution: execution(g), cap: g.cap })?;
    let mut doc = cert.to_json(sigma1);
    doc["volume_bound"] = real(volume_bound(&graph, &chain)?);
    if let Ok(cb) = isoperimetric_bounds(&graph, &chain) {
        doc["boundary_bound"] = real(cb.boundary_bound);
        doc["closure_bound"] = cb.closure_bound.map(real).unwrap_or(Value::Null);
    }
    doc["c1"] = json!(chain.c1);
    doc["c_final"] = real(chain.c_final);
    write_json(out, &doc)?;
    if !cert.is_sound(sigma1) {
        return Err(Failure::Invariant(format!(
            "certificate {} is below sigma_1 = {}",
            format_real(cert.certified_bound),
            format_real(sigma1)
        )));
    }
    Ok(())
}

fn cmd_sweep(g: &Global, spec: &[String], c1: Option<u64>, timings: bool, out: &mut dyn Write) -> CliResult<()> {
    let (range, words) = spec.split_last().expect("clap requires two values");
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    let family = Family::parse(&words, g.seed)?;
    let range: ParamRange = range.parse()?;
    let opts = SweepOptions {
        execution: execution(g),
        cap: g.cap,
        solver: solver(g),
        growth_n_max: g.growth_n_max,
        c1_override: c1,
        timings,
        ..Default::default()
    };
    let summary = run_sweep(&family, &range.values(), &opts, out)?;
    eprintln!(
        "rows={} errors={} flagged={} unsound={}",
        summary.rows, summary.errors, summary.flagged, summary.unsound
    );
    if summary.unsound > 0 {
        return Err(Failure::Invariant(format!("{} unsound certificate(s)", summary.unsound)));
    }
    Ok(())
}

fn cmd_growth(g: &Global, args: &[String], group: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let a: Vec<&str> = args.iter().map(String::as_str).collect();
    let (desc, n_max) = match (group, a.as_slice()) {
        (Some(path), [n]) => {
            let desc: GroupDescriptor =
                serde_json::from_str(&read_input(path)?).map_err(|e| Failure::Input(e.to_string()))?;
            (desc, parse(n, "n_max")?)
        }
        (None, ["z", d, n]) => (GroupDescriptor::free_abelian(parse(d, "rank")?)?, parse(n, "n_max")?),
        (None, ["heis", n]) => (GroupDescriptor::heisenberg(), parse(n, "n_max")?),
        _ => return Err(Failure::Input("expected `z D N_MAX`, `heis N_MAX`, or `--group FILE N_MAX`".into())),
    };
    let growth = growth_function(&desc, n_max, g.cap)?;
    writeln!(out, "# schema: steklov-growth/1")?;
    writeln!(out, "n,volume,volume_over_nd,nd_over_volume")?;
    for &(n, v) in &growth.samples {
        let (up, low) = growth.ratios(n).expect("sampled");
        writeln!(out, "{n},{v},{},{}", format_real(up), format_real(low))?;
    }
    writeln!(out, "# growth_order={}", growth.growth_order)?;
    writeln!(out, "# growth_constant={}", format_real(growth.growth_constant))?;
    writeln!(out, "# fitted_exponent={}", format_real(growth.fitted_exponent()))?;
    let chain = steklov::bounds::constant_chain(&desc, &growth)?;
    let chain_json = serde_json::to_value(&chain).map_err(|e| Failure::Input(e.to_string()))?;
    if let Value::Object(fields) = chain_json {
        for (k, v) in fields.into_iter().filter(|(k, _)| k != "growth_order" && k != "growth_constant") {
            let v = v.as_f64().filter(|_| !v.is_u64()).map(format_real).unwrap_or_else(|| v.to_string());
            writeln!(out, "# {k}={v}")?;
        }
    }
    Ok(())
}
