use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use relu_forge::builders::{
    build_analytic, build_monomial, build_multiply, build_polynomial, build_square, BoundCertificate, Built, PolySpec,
    Preset,
};
use relu_forge::calculus::{count_params, sigmoidal_to_relu, skip_to_standard, wide_to_deep, Partition};
use relu_forge::document::{AnyNet, NetDocument};
use relu_forge::verifier::{convergence_sweep, sup_error, Strategy, SweepRow, SweepStrategy};

mod target;

use target::{parse_indices, Target};

#[derive(Parser)]
#[command(name = "relu-forge", version, about = "Build, convert and verify explicit ReLU network constructions")]
struct Cli {
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true, env = "RELU_FORGE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Square,
    Multiply,
    Monomial,
    Poly,
    Analytic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertKind {
    #[value(name = "skip2std")]
    SkipToStd,
    #[value(name = "wide2deep")]
    WideToDeep,
    #[value(name = "sig2relu")]
    SigToRelu,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a net and write it with its certificate.
    Build {
        kind: BuildKind,
        /// Depth parameter L (square, multiply, monomial, poly).
        #[arg(long)]
        depth: Option<usize>,
        /// Target accuracy (analytic).
        #[arg(long)]
        eps: Option<f64>,
        /// Distance of the certified box from the boundary of [-1, 1]^d (analytic).
        #[arg(long)]
        delta: Option<f64>,
        /// Clamp intermediate products to [-1, 1].
        #[arg(long)]
        clamp: bool,
        /// One-based factor indices of a monomial, e.g. 1,2,3.
        #[arg(long)]
        indices: Option<String>,
        /// Input dimension of a monomial (default: largest index).
        #[arg(long)]
        dim: Option<usize>,
        /// Polynomial terms "k1,..,kd:coeff;...".
        #[arg(long)]
        coeffs: Option<String>,
        /// Analytic preset: exp, sin, rational or expsum:D.
        #[arg(long, default_value = "exp")]
        preset: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rewrite a net into another architecture with the same function.
    Convert {
        kind: ConvertKind,
        /// Layer sizes m1,m2,.. for wide2deep.
        #[arg(long)]
        partition: Option<String>,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Evaluate a net at one point.
    Eval {
        #[arg(short, long)]
        input: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Measure the sup error of a net against a target function.
    Verify {
        #[arg(short, long, alias = "net")]
        input: PathBuf,
        /// square, multiply, monomial:I,J,.., poly:K:C;.., exp, sin, rational, expsum:D.
        #[arg(long)]
        target: String,
        /// uniform:N, dyadic[:L] or random:N:SEED (default: uniform at the standard resolution).
        #[arg(long)]
        strategy: Option<String>,
        /// Slack added to the certificate bound; the only threshold without a certificate.
        #[arg(long)]
        tol: Option<f64>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a target at several depths and tabulate the errors.
    Sweep {
        /// square, multiply, monomial:I,J,.. or poly:K:C;..
        target: String,
        /// Inclusive range A:B of depth parameters.
        #[arg(long)]
        depths: String,
        /// Point strategy for every row (default: dyadic midpoints for square, uniform otherwise).
        #[arg(long)]
        strategy: Option<String>,
        /// Write the table to this file instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the shape, parameter count and certificate of a net.
    Info {
        #[arg(short, long)]
        input: PathBuf,
    },
}

/// Verification failed: exit code 1.
#[derive(Debug)]
struct Violation(String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Violation>() => {
            eprintln!("verification failed: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_doc(path: &Path) -> Result<NetDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    NetDocument::from_json(&text).with_context(|| format!("cannot load {}", path.display()))
}

fn write_doc(path: &Path, doc: &NetDocument) -> Result<()> {
    let mut text = doc.to_json();
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',').map(|t| t.trim().parse::<T>().map_err(|e| anyhow!("bad {what} {t:?}: {e}"))).collect()
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Build { kind, depth, eps, delta, clamp, indices, dim, coeffs, preset, output } => {
            let need_depth = || depth.ok_or_else(|| anyhow!("--depth is required"));
            let (net, certificate, note) = match kind {
                BuildKind::Square => unpack(build_square(need_depth()?)?),
                BuildKind::Multiply => unpack(build_multiply(need_depth()?)?),
                BuildKind::Monomial => {
                    let idx = parse_indices(&indices.ok_or_else(|| anyhow!("--indices is required"))?)?;
                    let d = dim.unwrap_or_else(|| idx.iter().max().map_or(1, |m| m + 1));
                    unpack(build_monomial(d, &idx, need_depth()?, clamp)?)
                }
                BuildKind::Poly => {
                    let spec = PolySpec::parse(&coeffs.ok_or_else(|| anyhow!("--coeffs is required"))?)?;
                    unpack(build_polynomial(&spec, need_depth()?, clamp)?)
                }
                BuildKind::Analytic => {
                    let eps = eps.ok_or_else(|| anyhow!("--eps is required"))?;
                    let delta = delta.ok_or_else(|| anyhow!("--delta is required"))?;
                    let preset: Preset = preset.parse()?;
                    let b = build_analytic(&preset.series_for(eps, delta)?, eps, delta, clamp)?;
                    let note = format!(
                        "{preset}: degree {}, stage depth {}, tail bound {:e}, polynomial bound {:e}",
                        b.degree, b.stage_depth, b.tail_bound, b.poly_bound
                    );
                    (b.net, b.certificate, Some(note))
                }
            };
            println!("depth {}, width {}, bound {:e}", net.depth, net.width, certificate.bound);
            if let Some(n) = note {
                println!("{n}");
            }
            write_doc(&output, &NetDocument::skip(net, Some(certificate)))
        }
        Command::Convert { kind, partition, input, output } => {
            let doc = read_doc(&input)?;
            let net = match (kind, doc.net) {
                (ConvertKind::SkipToStd, AnyNet::Skip(n)) => AnyNet::Standard(skip_to_standard(&n)?),
                (ConvertKind::WideToDeep, AnyNet::Shallow(n)) => {
                    let parts = parse_list(&partition.ok_or_else(|| anyhow!("--partition is required"))?, "part")?;
                    AnyNet::Standard(wide_to_deep(&n, &Partition::new(parts)?)?)
                }
                (ConvertKind::SigToRelu, AnyNet::Shallow(n)) => AnyNet::Shallow(sigmoidal_to_relu(&n)?),
                (_, other) => bail!("this conversion does not apply to a {} net", other.kind()),
            };
            println!("{} net: depth {}, width {}", net.kind(), net.depth(), net.width());
            write_doc(&output, &NetDocument::new(net, doc.certificate))
        }
        Command::Eval { input, point } => {
            let doc = read_doc(&input)?;
            let x: Vec<f64> = parse_list(&point, "coordinate")?;
            let y = doc.net.as_network().eval(&x)?;
            println!("{y}");
            Ok(())
        }
        Command::Verify { input, target, strategy, tol, json } => {
            verify(&input, &target, strategy.as_deref(), tol, json)
        }
        Command::Sweep { target, depths, strategy, csv } => {
            sweep(&target, &depths, strategy.as_deref(), csv.as_deref())
        }
        Command::Info { input } => info(&input),
    }
}

fn unpack(b: Built) -> (relu_forge::SkipNet, BoundCertificate, Option<String>) {
    (b.net, b.certificate, None)
}

fn resolve_strategy(s: Option<&str>, dim: usize, dyadic_depth: usize) -> Result<Strategy> {
    Ok(match s {
        None => Strategy::default_uniform(dim),
        Some("dyadic") => Strategy::DyadicMidpoints(dyadic_depth as u32),
        Some(s) => s.parse()?,
    })
}

fn verify(input: &Path, target: &str, strategy: Option<&str>, tol: Option<f64>, json: bool) -> Result<()> {
    let doc = read_doc(input)?;
    let net = doc.net.as_network();
    let target = Target::parse(target)?;
    if target.min_dim() > net.input_dim() {
        bail!("target needs {} inputs, net has {}", target.min_dim(), net.input_dim());
    }
    let region = doc.certificate.as_ref().map_or_else(|| net.domain().clone(), |c| c.domain.clone());
    let dyadic_depth = doc.certificate.as_ref().and_then(|c| c.params.depth).map_or(doc.net.depth(), |l| l as usize);
    let strategy = resolve_strategy(strategy, net.input_dim(), dyadic_depth)?;
    let mut report = sup_error(net, &|x| target.eval(x), &region, strategy)?;
    let threshold = match (&doc.certificate, tol) {
        (Some(c), t) => {
            report = report.with_bound(c.bound);
            Some(c.bound + t.unwrap_or(0.0))
        }
        (None, Some(t)) => Some(t),
        (None, None) => None,
    };
    let passed = threshold.is_none_or(|t| report.measured <= t);
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("strategy   {} ({} points)", report.grid, report.points);
        println!("measured   {:e}", report.measured);
        println!("argmax     {:?}", report.argmax);
        if let Some(b) = report.bound {
            println!("bound      {b:e}");
        }
        if let Some(r) = report.ratio {
            println!("ratio      {r}");
        }
        if report.out_of_box {
            println!("warning    points lie outside the net's domain");
        }
        println!("result     {}", if passed { "PASS" } else { "FAIL" });
    }
    if !passed {
        return Err(Violation(format!(
            "measured {:e} exceeds threshold {:e}",
            report.measured,
            threshold.unwrap_or(f64::NAN)
        ))
        .into());
    }
    Ok(())
}

fn sweep(target: &str, depths: &str, strategy: Option<&str>, csv: Option<&Path>) -> Result<()> {
    let target = Target::parse(target)?.sweep_target()?;
    let (a, b) = depths.split_once(':').ok_or_else(|| anyhow!("--depths must look like A:B"))?;
    let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty depth range {a}:{b}");
    }
    let ls: Vec<usize> = (a..=b).collect();
    let strategy = match strategy {
        None => SweepStrategy::Auto,
        Some(s) => SweepStrategy::Fixed(s.parse()?),
    };
    let rows = convergence_sweep(&target, &ls, None, strategy)?;
    let mut text = String::from(SweepRow::CSV_HEADER);
    text.push('\n');
    for r in &rows {
        text.push_str(&r.csv_line());
        text.push('\n');
    }
    match csv {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            println!("{} rows written to {}", rows.len(), path.display());
        }
        None => print!("{text}"),
    }
    if let Some(bad) = rows.iter().find(|r| r.measured > r.bound) {
        return Err(Violation(format!(
            "L={}: measured {:e} exceeds bound {:e}",
            bad.depth_param, bad.measured, bad.bound
        ))
        .into());
    }
    Ok(())
}

fn info(input: &Path) -> Result<()> {
    let doc = read_doc(input)?;
    let d = doc.net.as_network().input_dim();
    println!("kind       {}", doc.net.kind());
    println!("inputs     {d}");
    println!("depth      {}", doc.net.depth());
    println!("width      {}", doc.net.width());
    match &doc.net {
        AnyNet::Skip(n) => {
            let std_width = if n.depth == 0 { 0 } else { n.width + d + 1 };
            println!("std width  {std_width}");
            println!("params     {} (standard form, closed form)", count_params(n.width, n.depth, d));
            println!("skip params {}", n.param_count());
            if !n.shifts.is_empty() {
                println!("shifts     {:?}", n.shifts);
            }
        }
        AnyNet::Standard(n) => {
            println!("widths     {:?}", n.widths());
            println!("params     {}", n.param_count());
            if !n.shifts.is_empty() {
                println!("shifts     {:?}", n.shifts);
            }
        }
        AnyNet::Shallow(n) => {
            println!("activation {:?}", n.activation);
            println!("params     {}", n.units.len() * (d + 2) + 1);
        }
    }
    match &doc.certificate {
        Some(c) => {
            println!(
                "certificate {} bound {:e} on {:?}",
                c.lemma,
                c.bound,
                c.domain.sides().iter().map(|s| [s.lo, s.hi]).collect::<Vec<_>>()
            );
            println!("            params {}", serde_json::to_string(&c.params)?);
        }
        None => println!("certificate none"),
    }
    Ok(())
}
