//! `indzero`: zero-free regions, certificates, and exact independence
//! polynomials for bounded-degree graphs, from the command line.
//!
//! Exit codes: 0 success (or Certified), 2 bad arguments or input,
//! 3 Refuted, 4 Inconclusive, 5 cap or guardrail exceeded, 6 output I/O.

mod svg;

use clap::{Parser, Subcommand, ValueEnum};
use indzero_core::certify::{self, CertStatus, CurveOpts, ScanWindow};
use indzero_core::graphs::{self, GraphError};
use indzero_core::indpoly::{self, PolyError};
use indzero_core::regions::{self, BoundaryKind};
use indzero_core::ComplexPoint;
use num_complex::Complex64;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;
const EXIT_REFUTED: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_GUARDRAIL: u8 = 5;
const EXIT_IO: u8 = 6;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Guardrail(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Guardrail(_) => EXIT_GUARDRAIL,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Guardrail(m) | CliError::Io(m) => m,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> CliError {
        match e {
            GraphError::CapExceeded { .. } | GraphError::EnumGuardrail { .. } => {
                CliError::Guardrail(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> CliError {
        match e {
            PolyError::Graph(g) => g.into(),
            _ => CliError::Guardrail(e.to_string()),
        }
    }
}

impl From<certify::CertifyError> for CliError {
    fn from(e: certify::CertifyError) -> CliError {
        match e {
            certify::CertifyError::OrbitGuardrail { .. }
            | certify::CertifyError::ScanGuardrail { .. } => CliError::Guardrail(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn parse_lambda(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected re,im, got {s:?}"));
    }
    let re = parts[0].trim().parse::<f64>().map_err(|e| format!("bad real part: {e}"))?;
    let im = parts[1].trim().parse::<f64>().map_err(|e| format!("bad imaginary part: {e}"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err("activity must be finite".into());
    }
    Ok(Complex64::new(re, im))
}

fn parse_window(s: &str) -> Result<ScanWindow, String> {
    let vals: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| format!("bad window: {e}"))?;
    if vals.len() != 4 {
        return Err(format!("expected re_min,re_max,im_min,im_max, got {s:?}"));
    }
    Ok(ScanWindow { re_min: vals[0], re_max: vals[1], im_min: vals[2], im_max: vals[3] })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveArg {
    Shearer,
    Cardioid,
    Critical,
    Lhp,
    Rhp,
    All,
}

impl CurveArg {
    fn kinds(self) -> Vec<BoundaryKind> {
        match self {
            CurveArg::Shearer => vec![BoundaryKind::Shearer],
            CurveArg::Cardioid => vec![BoundaryKind::Cardioid],
            CurveArg::Critical => vec![BoundaryKind::Critical],
            CurveArg::Lhp => vec![BoundaryKind::Lhp],
            CurveArg::Rhp => vec![BoundaryKind::Rhp],
            CurveArg::All => vec![
                BoundaryKind::Cardioid,
                BoundaryKind::Shearer,
                BoundaryKind::Critical,
                BoundaryKind::Lhp,
                BoundaryKind::Rhp,
            ],
        }
    }

    fn name(self) -> &'static str {
        match self {
            CurveArg::Shearer => "shearer",
            CurveArg::Cardioid => "cardioid",
            CurveArg::Critical => "critical",
            CurveArg::Lhp => "lhp",
            CurveArg::Rhp => "rhp",
            CurveArg::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

#[derive(Parser)]
#[command(name = "indzero", version, about = "Zero-free regions and certificates for the independence polynomial of bounded-degree graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone, Copy)]
struct CertOptsArgs {
    /// Base curve step per unit time.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Give up (Inconclusive) past this curve time.
    #[arg(long = "t-max", default_value_t = 200.0)]
    t_max: f64,
    /// Tolerance on Im h staying nonnegative.
    #[arg(long = "tol-im", default_value_t = 1e-9)]
    tol_im: f64,
    /// Tolerance on argument monotonicity.
    #[arg(long = "tol-arg", default_value_t = 1e-9)]
    tol_arg: f64,
}

impl CertOptsArgs {
    fn to_opts(self) -> CurveOpts {
        CurveOpts {
            dt: self.dt,
            t_max: self.t_max,
            tol_im: self.tol_im,
            tol_arg: self.tol_arg,
            run_past_window: false,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Export zero-free region boundaries (CSV, JSON, or SVG).
    Regions {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum)]
        curve: CurveArg,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify one activity with the iterated-curve criterion.
    Certify {
        #[arg(long)]
        d: u32,
        /// Activity as re,im.
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Complex64,
        #[command(flatten)]
        opts: CertOptsArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify every cell of a grid; CSV columns re,im,status,ceil_tau_star.
    Scan {
        #[arg(long)]
        d: u32,
        /// Window as re_min,re_max,im_min,im_max.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: ScanWindow,
        #[arg(long)]
        res: usize,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        opts: CertOptsArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact independence polynomial of a graph file, optionally evaluated.
    Zpoly {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Option<Complex64>,
        /// Vertex cap guarding the exponential recursion.
        #[arg(long, default_value_t = 40)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum |Z| over the bounded-degree tree catalog, with a witness.
    Zscan {
        #[arg(long)]
        d: u32,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated-series approximation of log Z against the exact value.
    Approx {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long)]
        m: usize,
        /// Root-modulus lower bound for the tail estimate; defaults to the
        /// Shearer radius of the graph's degree class when applicable.
        #[arg(long = "root-bound")]
        root_bound: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit of the univariate recurrence from 0.
    Orbit {
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long)]
        n: usize,
        /// Iterate in log coordinates w = log(1 + z) instead.
        #[arg(long = "log-coords", default_value_t = false)]
        log_coords: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Composite SVG of all region boundaries with legend and axis markers.
    Atlas {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 600)]
        samples: usize,
    },
}

fn fmt_f64(x: f64) -> String {
    // 17 significant digits: lossless double round trip.
    format!("{x:.16e}")
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> Result<graphs::Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(graphs::parse_edge_list(&text)?)
}

fn require_d2(d: u32) -> Result<(), CliError> {
    if d < 2 {
        return Err(CliError::Usage(format!("d must be at least 2, got {d}")));
    }
    Ok(())
}

fn resolve_threads(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var("INDZERO_THREADS").ok().and_then(|v| v.parse().ok()))
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match resolve_threads(threads) {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}"))),
        _ => Ok(f()),
    }
}

fn status_name(s: CertStatus) -> &'static str {
    match s {
        CertStatus::Certified => "Certified",
        CertStatus::Refuted => "Refuted",
        CertStatus::Inconclusive => "Inconclusive",
    }
}

fn complex_json(z: ComplexPoint) -> serde_json::Value {
    json!([z.re, z.im])
}

// ---------------------------------------------------------------------------
// Subcommand bodies.
// ---------------------------------------------------------------------------

fn cmd_regions(
    d: u32,
    curve: CurveArg,
    samples: usize,
    format: FormatArg,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    require_d2(d)?;
    if samples < 16 {
        return Err(CliError::Usage(format!("samples must be at least 16, got {samples}")));
    }
    let config = json!({
        "cmd": "regions", "d": d, "curve": curve.name(), "samples": samples,
        "format": match format { FormatArg::Csv => "csv", FormatArg::Json => "json", FormatArg::Svg => "svg" },
    });
    let boundaries: Vec<_> =
        curve.kinds().into_iter().map(|k| regions::boundary_polyline(d, k, samples)).collect();
    let content = match format {
        FormatArg::Csv => {
            if boundaries.len() != 1 {
                return Err(CliError::Usage("csv output needs a single curve, not 'all'".into()));
            }
            let mut s = format!("# config: {config}\nparam,re,im\n");
            for (p, z) in &boundaries[0].samples {
                s.push_str(&format!("{},{},{}\n", fmt_f64(*p), fmt_f64(z.re), fmt_f64(z.im)));
            }
            s
        }
        FormatArg::Json => {
            let curves: Vec<_> = boundaries
                .iter()
                .map(|b| {
                    json!({
                        "kind": b.kind.name(),
                        "d": b.d,
                        "samples": b.samples.iter().map(|(p, z)| json!([p, z.re, z.im])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!("{}\n", json!({ "config": config, "curves": curves }))
        }
        FormatArg::Svg => render_svg(d, &boundaries, &config.to_string(), false),
    };
    write_output(out, &content)?;
    Ok(0)
}

fn curve_style(kind: BoundaryKind) -> (&'static str, f64, Option<&'static str>) {
    match kind {
        BoundaryKind::Cardioid => ("#000000", 1.4, None),
        BoundaryKind::Shearer => ("#888888", 1.0, Some("4 3")),
        BoundaryKind::Critical => ("#d62728", 1.4, None),
        BoundaryKind::Lhp => ("#1f77b4", 1.4, None),
        BoundaryKind::Rhp => ("#e0a800", 1.4, None),
    }
}

fn render_svg(d: u32, boundaries: &[regions::RegionBoundary], desc: &str, legend: bool) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for b in boundaries {
        for (_, z) in &b.samples {
            x_min = x_min.min(z.re);
            x_max = x_max.max(z.re);
            y_min = y_min.min(z.im);
            y_max = y_max.max(z.im);
        }
    }
    let marker_im = (std::f64::consts::PI / (2.0 * d as f64)).tan();
    y_min = y_min.min(-marker_im);
    y_max = y_max.max(marker_im);
    let pad_x = 0.08 * (x_max - x_min).max(1e-12);
    let pad_y = 0.08 * (y_max - y_min).max(1e-12);
    let mut canvas = svg::SvgCanvas::new(
        (x_min - pad_x, x_max + pad_x, y_min - pad_y, y_max + pad_y),
        640.0,
    );
    canvas.set_desc(desc);
    canvas.axes();
    for b in boundaries {
        let (color, width, dash) = curve_style(b.kind);
        let pts: Vec<(f64, f64)> = b.samples.iter().map(|(_, z)| (z.re, z.im)).collect();
        canvas.path(&pts, color, width, dash);
    }
    // Shearer circle is always drawn for scale.
    if !boundaries.iter().any(|b| b.kind == BoundaryKind::Shearer) {
        let circle = regions::boundary_polyline(d, BoundaryKind::Shearer, 256);
        let (color, width, dash) = curve_style(BoundaryKind::Shearer);
        let pts: Vec<(f64, f64)> = circle.samples.iter().map(|(_, z)| (z.re, z.im)).collect();
        canvas.path(&pts, color, width, dash);
    }
    canvas.marker((0.0, marker_im), 3.0, "#222222");
    canvas.marker((0.0, -marker_im), 3.0, "#222222");
    if legend {
        let entries: Vec<(&str, String)> = [
            (BoundaryKind::Cardioid, "cardioid boundary"),
            (BoundaryKind::Shearer, "Shearer circle"),
            (BoundaryKind::Critical, "critical-vicinity region"),
            (BoundaryKind::Lhp, "left half-plane region"),
            (BoundaryKind::Rhp, "right half-plane region"),
        ]
        .iter()
        .map(|(k, label)| (curve_style(*k).0, format!("{label} (d = {d})")))
        .collect();
        canvas.legend(&entries);
    }
    canvas.finish()
}

fn cmd_certify(d: u32, lambda: Complex64, opts: CurveOpts, out: &Option<PathBuf>) -> Result<u8, CliError> {
    require_d2(d)?;
    let cert = certify::certify_simons(d, lambda, &opts)?;
    let mut text = serde_json::to_string_pretty(&cert.to_schema())
        .map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    write_output(out, &text)?;
    Ok(match cert.status {
        CertStatus::Certified => 0,
        CertStatus::Refuted => EXIT_REFUTED,
        CertStatus::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_scan(
    d: u32,
    window: ScanWindow,
    res: usize,
    threads: Option<usize>,
    opts: CurveOpts,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    require_d2(d)?;
    let cells = with_pool(threads, || certify::scan_grid(d, window, res, &opts))??;
    let config = json!({
        "cmd": "scan", "d": d,
        "window": [window.re_min, window.re_max, window.im_min, window.im_max],
        "res": res, "dt": opts.dt, "t_max": opts.t_max,
        "tol_im": opts.tol_im, "tol_arg": opts.tol_arg,
    });
    let mut s = format!("# config: {config}\nre,im,status,ceil_tau_star\n");
    for cell in &cells {
        let tau = cell.ceil_tau_star.map_or(String::new(), |v| v.to_string());
        s.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(cell.lambda[0]),
            fmt_f64(cell.lambda[1]),
            status_name(cell.status),
            tau
        ));
    }
    write_output(out, &s)?;
    Ok(0)
}

fn cmd_zpoly(
    graph: &Path,
    lambda: Option<Complex64>,
    cap: usize,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    let poly = indpoly::ind_poly_with_cap(&g, cap)?;
    let config = json!({
        "cmd": "zpoly", "graph": graph.display().to_string(), "cap": cap,
        "lambda": lambda.map(complex_json),
    });
    let mut doc = json!({
        "config": config,
        "n": g.n(),
        "max_degree": graphs::max_degree(&g),
        "coeffs": poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    if let Some(lam) = lambda {
        let value = poly.eval(lam);
        doc["eval"] = json!({ "lambda": complex_json(lam), "value": complex_json(value) });
    }
    write_output(out, &format!("{doc:#}\n"))?;
    Ok(0)
}

fn cmd_zscan(
    d: u32,
    n_max: usize,
    lambda: Complex64,
    threads: Option<usize>,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    if d < 1 {
        return Err(CliError::Usage("d must be at least 1".into()));
    }
    let (min_abs, witness) = with_pool(threads, || indpoly::min_abs_over_catalog(d, lambda, n_max))??;
    let doc = json!({
        "config": { "cmd": "zscan", "d": d, "n_max": n_max, "lambda": complex_json(lambda) },
        "min_abs": min_abs,
        "witness": {
            "n": witness.n(),
            "edges": witness.edges().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
        },
    });
    write_output(out, &format!("{doc:#}\n"))?;
    Ok(0)
}

fn cmd_approx(
    graph: &Path,
    lambda: Complex64,
    m: usize,
    root_bound: Option<f64>,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    let poly = indpoly::ind_poly(&g)?;
    // Default tail bound: Shearer radius of the graph's degree class.
    let bound = root_bound.or_else(|| {
        let delta = graphs::max_degree(&g);
        if delta >= 3 {
            Some(regions::shearer_radius(delta as u32 - 1))
        } else {
            None
        }
    });
    let approx = indpoly::taylor_log_z(&poly, lambda, m, bound)?;
    let exact = poly.eval(lambda);
    let (exact_log, rel_error) = if exact.norm() > 0.0 {
        let rel = (approx.value.exp() - exact).norm() / exact.norm();
        match indzero_core::principal_log(exact) {
            Ok(l) => (Some(l), Some(rel)),
            Err(_) => (None, Some(rel)),
        }
    } else {
        (None, None)
    };
    let doc = json!({
        "config": {
            "cmd": "approx", "graph": graph.display().to_string(),
            "lambda": complex_json(lambda), "m": m, "root_bound": bound,
        },
        "approx_logZ": complex_json(approx.value),
        "tail_bound": approx.tail_bound,
        "exact_logZ": exact_log.map(complex_json),
        "rel_error": rel_error,
    });
    write_output(out, &format!("{doc:#}\n"))?;
    Ok(0)
}

fn cmd_orbit(
    d: u32,
    lambda: Complex64,
    n: usize,
    log_coords: bool,
    out: &Option<PathBuf>,
) -> Result<u8, CliError> {
    if d < 1 {
        return Err(CliError::Usage("d must be at least 1".into()));
    }
    let result = if log_coords { certify::orbit_w(d, lambda, n) } else { certify::orbit(d, lambda, n) }?;
    let doc = json!({
        "config": {
            "cmd": "orbit", "d": d, "lambda": complex_json(lambda),
            "n": n, "log_coords": log_coords,
        },
        "points": result.points,
        "min_dist_to_minus1": result.min_dist_to_minus1,
        "crossed": result.crossed,
    });
    write_output(out, &format!("{doc:#}\n"))?;
    Ok(0)
}

fn cmd_atlas(d: u32, out: &Path, samples: usize) -> Result<u8, CliError> {
    require_d2(d)?;
    if samples < 16 {
        return Err(CliError::Usage(format!("samples must be at least 16, got {samples}")));
    }
    let config = json!({ "cmd": "atlas", "d": d, "samples": samples });
    let boundaries: Vec<_> = CurveArg::All
        .kinds()
        .into_iter()
        .map(|k| regions::boundary_polyline(d, k, samples))
        .collect();
    let content = render_svg(d, &boundaries, &config.to_string(), true);
    std::fs::write(out, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Regions { d, curve, samples, format, out } => {
            cmd_regions(d, curve, samples, format, &out)
        }
        Cmd::Certify { d, lambda, opts, out } => cmd_certify(d, lambda, opts.to_opts(), &out),
        Cmd::Scan { d, window, res, threads, opts, out } => {
            cmd_scan(d, window, res, threads, opts.to_opts(), &out)
        }
        Cmd::Zpoly { graph, lambda, cap, out } => cmd_zpoly(&graph, lambda, cap, &out),
        Cmd::Zscan { d, n_max, lambda, threads, out } => {
            cmd_zscan(d, n_max, lambda, threads, &out)
        }
        Cmd::Approx { graph, lambda, m, root_bound, out } => {
            cmd_approx(&graph, lambda, m, root_bound, &out)
        }
        Cmd::Orbit { d, lambda, n, log_coords, out } => cmd_orbit(d, lambda, n, log_coords, &out),
        Cmd::Atlas { d, out, samples } => cmd_atlas(d, &out, samples),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("indzero: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
