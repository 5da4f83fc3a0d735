//! Command-line front end. Every subcommand is a thin wrapper over the
//! library: parse arguments, resolve the coefficient cache, call one
//! library entry point, serialize the report.
//!
//! Exit codes: 0 success, 1 domain error (machine-readable JSON on
//! stderr), 2 usage error.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use symuniv::cache;
use symuniv::error::{Error, Result};
use symuniv::lvalue::{completed_lambda, EvalMode, EvalParams, LSeries};
use symuniv::modform::HeckeEigenform;
use symuniv::prime_stats::{pi_delta, prime_sums, PrimeTable};
use symuniv::random_model::{distribution_compare, CompareOptions};
use symuniv::sympower::{dirichlet_coefficients, LKind};
use symuniv::universality::{shift_search, DiscRegion};
use symuniv::verify;

#[derive(Parser)]
#[command(name = "symuniv", version, about = "Symmetric power L-functions at desk scale")]
struct Cli {
    /// Coefficient cache directory (default: $SYMUNIV_CACHE or ./symuniv-cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormArgs {
    /// Weight of the eigenform (12, 16, 18, 20, 22 or 26)
    #[arg(long, default_value_t = 12)]
    weight: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Export exact coefficients, or symmetric-power Dirichlet coefficients
    Coeffs {
        #[command(flatten)]
        form: FormArgs,
        /// Table bound
        #[arg(long)]
        n: usize,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Optional kind (sym1..sym4, rs1..rs4); exports lambda_F instead
        #[arg(long)]
        kind: Option<String>,
    },
    /// Export Satake angles at every prime up to the bound
    Angles {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Prime-counting sums for the Rankin-Selberg von Mangoldt weights
    Pnt {
        #[command(flatten)]
        form: FormArgs,
        /// Symmetric power (1..4)
        #[arg(long)]
        m: u32,
        /// Cutoff
        #[arg(long)]
        x: u64,
        /// Optional CSV of (x, theta/x) sampled geometrically
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Optional density report: delta threshold over the window (x/2, x]
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Evaluate L(s, F) at one point
    Lvalue {
        #[command(flatten)]
        form: FormArgs,
        /// Kind label: sym1..sym4 or rs1..rs4
        #[arg(long)]
        kind: String,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        /// smoothed | euler
        #[arg(long, default_value = "smoothed")]
        mode: String,
        /// Smoothing length (default max(50, 3|t|))
        #[arg(long)]
        x_smoothing: Option<f64>,
        /// Prime cutoff for euler mode
        #[arg(long, default_value_t = 10_000)]
        p_max: usize,
        /// Evaluate the completed function instead (sym1 only)
        #[arg(long, default_value_t = false)]
        completed: bool,
    },
    /// Empirical mean square along a vertical line
    MeanSquare {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 2000.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
    },
    /// Compare vertical-shift values against the random Euler product
    RandomModel {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, default_value_t = 5000.0)]
        t_span: f64,
        #[arg(long, default_value_t = 2000)]
        n_shift: usize,
        #[arg(long, default_value_t = 2000)]
        n_model: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        p_max: u64,
        /// Optional CSV dump of both sample sets
        #[arg(long)]
        samples_csv: Option<PathBuf>,
    },
    /// Scan vertical shifts for the best sup-distance to a target
    Universality {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        kind: String,
        /// Disc center (default: per-kind)
        #[arg(long)]
        center: Option<f64>,
        /// Disc radius (default: per-kind)
        #[arg(long)]
        radius: Option<f64>,
        /// Target: const:RE[,IM] or file:PATH (CSV re,im,phi_re,phi_im)
        #[arg(long)]
        target: String,
        #[arg(long = "T", default_value_t = 2000.0)]
        t_span: f64,
        #[arg(long, default_value_t = 0.05)]
        dt: f64,
        #[arg(long, default_value_t = 0.3)]
        eps: f64,
        #[arg(long, default_value_t = 128)]
        n_boundary: usize,
        /// Optional CSV of (t, sup_err)
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the invariant suite
    Verify {
        /// quick | full
        #[arg(long, default_value = "quick")]
        level: String,
    },
}

#[derive(Serialize)]
struct Provenance {
    tool: &'static str,
    version: &'static str,
    weight: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl Provenance {
    fn new(weight: u32) -> Self {
        Provenance {
            tool: "symuniv",
            version: env!("CARGO_PKG_VERSION"),
            weight,
            kind: None,
            n: None,
            seed: None,
        }
    }

    fn kind(mut self, kind: &LKind) -> Self {
        self.kind = Some(kind.label());
        self
    }

    fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Serialize)]
struct Artifact<T: Serialize> {
    provenance: Provenance,
    report: T,
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            let payload = serde_json::json!({
                "error": { "kind": error_kind(&e), "message": e.to_string() }
            });
            eprintln!("{payload}");
            std::process::exit(1);
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidArgument(_) => "invalid-argument",
        Error::UnsupportedWeight { .. } => "unsupported-weight",
        Error::DeligneViolation { .. } => "deligne-violation",
        Error::SeriesOverflow(_) => "series-overflow",
        Error::NumericInstability(_) => "numeric-instability",
        Error::InsufficientCache { .. } => "insufficient-cache",
        Error::OutOfRegion(_) => "out-of-region",
        Error::UnsupportedKind(_) => "unsupported-kind",
        Error::NonVanishingViolation { .. } => "non-vanishing-violation",
        Error::ResolutionError { .. } => "resolution-error",
        Error::HypothesisViolation(_) => "hypothesis-violation",
        Error::ContourViolation(_) => "contour-violation",
        Error::CacheCorrupt { .. } => "cache-corrupt",
        Error::Io(_) => "io",
        Error::Serialize(_) => "serialize",
    }
}

fn cache_dir(cli: &Cli) -> PathBuf {
    cli.cache_dir.clone().unwrap_or_else(cache::default_cache_dir)
}

fn load_form(cli: &Cli, weight: u32, n: usize) -> Result<HeckeEigenform> {
    cache::load_or_build(&cache_dir(cli), weight, n)
}

fn emit<T: Serialize>(cli: &Cli, artifact: &Artifact<T>, human: String) -> Result<()> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(artifact)?);
    } else {
        println!("{human}");
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Coeffs { form, n, out, kind } => {
            let f = load_form(cli, form.weight, *n)?;
            match kind {
                None => {
                    let mut buf = Vec::new();
                    f.write_csv(&mut buf)?;
                    fs::write(out, buf)?;
                }
                Some(label) => {
                    let kind = LKind::parse(label)?;
                    let coeffs = dirichlet_coefficients(&f, kind, *n)?;
                    let mut buf = Vec::new();
                    coeffs.write_csv(&mut buf)?;
                    fs::write(out, buf)?;
                    let sidecar = sidecar_path(out);
                    fs::write(sidecar, serde_json::to_string_pretty(&coeffs.sidecar())?)?;
                }
            }
            let report = serde_json::json!({ "rows": n, "path": out });
            emit(
                cli,
                &Artifact {
                    provenance: Provenance::new(form.weight).n(*n),
                    report,
                },
                format!("wrote {} coefficient rows to {}", n, out.display()),
            )
        }
        Command::Angles { form, n, out } => {
            let f = load_form(cli, form.weight, *n)?;
            let table = PrimeTable::new(*n as u64);
            let mut buf = String::from("p,lambda,theta\n");
            for &p in table.primes() {
                let a = f.satake_angle(p)?;
                buf.push_str(&format!(
                    "{},{:.16e},{:.16e}\n",
                    p,
                    f.lambda(p as usize),
                    a.theta
                ));
            }
            fs::write(out, buf)?;
            let report =
                serde_json::json!({ "primes": table.primes().len(), "path": out });
            emit(
                cli,
                &Artifact {
                    provenance: Provenance::new(form.weight).n(*n),
                    report,
                },
                format!(
                    "wrote {} Satake angles to {}",
                    table.primes().len(),
                    out.display()
                ),
            )
        }
        Command::Pnt {
            form,
            m,
            x,
            csv,
            delta,
        } => {
            let f = load_form(cli, form.weight, *x as usize)?;
            let table = PrimeTable::new(*x);
            let report = prime_sums(&f, &table, *m, *x)?;
            if let Some(path) = csv {
                let mut buf = String::from("x,theta_ratio\n");
                let mut sample = 100u64;
                while sample < *x {
                    let r = prime_sums(&f, &table, *m, sample)?;
                    buf.push_str(&format!("{},{:.8}\n", sample, r.theta_ratio));
                    sample *= 2;
                }
                buf.push_str(&format!("{},{:.8}\n", x, report.theta_ratio));
                fs::write(path, buf)?;
            }
            let human = format!(
                "m = {}, x = {}: psi/x = {:.5}, theta/x = {:.5}, pi_w/(x/ln x) = {:.5}",
                m, x, report.psi_ratio, report.theta_ratio, report.pi_ratio
            );
            let mut lines = vec![human];
            let density = match delta {
                Some(d) => {
                    let rep = pi_delta(&f, &table, *m, *d, *x, (*x / 2, *x))?;
                    lines.push(format!(
                        "density(delta = {}): {:.4} over ({}, {}], bound {:.4}",
                        d,
                        rep.ratio,
                        x / 2,
                        x,
                        rep.lower_bound
                    ));
                    Some(rep)
                }
                None => None,
            };
            emit(
                cli,
                &Artifact {
                    provenance: Provenance::new(form.weight).n(*x as usize),
                    report: serde_json::json!({ "sums": report, "density": density }),
                },
                lines.join("\n"),
            )
        }
        Command::Lvalue {
            form,
            kind,
            sigma,
            t,
            mode,
            x_smoothing,
            p_max,
            completed,
        } => {
            let kind = LKind::parse(kind)?;
            let s = Complex64::new(*sigma, *t);
            if *completed {
                let f = load_form(cli, form.weight, 4000)?;
                let value = completed_lambda(&f, kind, s)?;
                return emit(
                    cli,
                    &Artifact {
                        provenance: Provenance::new(form.weight).kind(&kind),
                        report: serde_json::json!({
                            "s": [sigma, t], "re": value.re, "im": value.im
                        }),
                    },
                    format!("Lambda({sigma}{t:+}i) = {:.10e} {:+.10e}i", value.re, value.im),
                );
            }
            let params = match mode.as_str() {
                "smoothed" => match x_smoothing {
                    Some(x) => EvalParams::smoothed(*x),
                    None => EvalParams::for_height(*t),
                },
                "euler" => EvalParams::euler(*p_max),
                other => {
                    return Err(Error::invalid(format!(
                        "unknown mode '{other}' (expected smoothed or euler)"
                    )))
                }
            };
            let table_n = match params.mode {
                EvalMode::Smoothed => 2 * params.n_terms,
                EvalMode::EulerProduct => 2 * params.n_terms,
            };
            let f = load_form(cli, form.weight, table_n)?;
            let lser = LSeries::new(&f, kind, table_n)?;
            let eval = lser.eval(s, &params)?;
            emit(
                cli,
                &Artifact {
                    provenance: Provenance::new(form.weight).kind(&kind).n(table_n),
                    report: serde_json::json!({
                        "s": [sigma, t],
                        "re": eval.re,
                        "im": eval.im,
                        "stability": eval.stability,
                        "params": params,
                    }),
                },
                format!(
                    "L({sigma}{t:+}i, {}) = {:.10e} {:+.10e}i  (stability {:.2e})",
                    kind.label(),
                    eval.re,
                    eval.im,
                    eval.stability
                ),
            )
        }
        Command::MeanSquare {
            form,
            kind,
            sigma,
            t_max,
            dt,
        } => {
            let kind = LKind::parse(kind)?;
            let needed = EvalParams::for_height(*t_max).n_terms;
            let f = load_form(cli, form.weight, needed)?;
            let lser = LSeries::new(&f, kind, needed)?;
            let report = lser.mean_square(*sigma, *t_max, *dt)?;
            let human = format!(
                "sigma = {}, T = {}: M_emp = {:.6}, M_ref = {:.6}, ratio = {:.4}",
                sigma, t_max, report.m_emp, report.m_ref, report.ratio
            );
            emit(
                cli,
                &Artifact {
                    provenance: Provenance::new(form.weight).kind(&kind).n(needed),
                    report,
                },
                human,
            )
        }
        Command::RandomModel {
            form,
            kind,
            sigma,
            t,
            t_span,
            n_shift,
            n_model,
            seed,
            p_max,
            samples_csv,
        } => {
            let kind = LKind::parse(kind)?;
            let needed = EvalParams::for_height(*t_span).n_terms.max(*p_max as usize);
            let f = load_form(cli, form.weight, needed)?;
            let lser = LSeries::new(&f, kind, needed)?;
            let s = Complex64::new(*sigma, *t);
            let opts = CompareOptions {
                t_span: *t_span,
                n_shift: *n_shift,
                n_model: *n_model,
                seed: *seed,
                p_max: *p_max,
            };
            let report = distribution_compare(&lser, s, &opts)?;
            if let Some(path) = samples_csv {
                write_sample_csv(path, &lser, s, &opts)?;
            }
            let human = format!(
                "KS(Re log) = {:.4}, KS(Im log) = {:.4}, KS(|L|) = {:.4}\nshift mean = {:.4} {:+.4}i, model mean = {:.4} {:+.4}i",
                report.ks_re,
                report.ks_im,
                report.ks_abs,
                report.moments_shift.mean_re,
                report.moments_shift.mean_im,
                report.moments_model.mean_re,
                report.moments_model.mean_im
            );
            emit(
                cli,
                &Artifact {
                    provenance: Provenance::new(form.weight)
                        .kind(&kind)
                        .n(needed)
                        .seed(*seed),
                    report,
                },
                human,
            )
        }
        Command::Universality {
            form,
            kind,
            center,
            radius,
            target,
            t_span,
            dt,
            eps,
            n_boundary,
            csv,
        } => {
            let kind = LKind::parse(kind)?;
            let region = match (center, radius) {
                (Some(c), Some(r)) => DiscRegion::new(kind, *c, *r)?,
                (None, None) => DiscRegion::default_for(kind),
                (Some(c), None) => DiscRegion::new(kind, *c, DiscRegion::default_for(kind).radius)?,
                (None, Some(r)) => DiscRegion::new(kind, DiscRegion::default_for(kind).center, *r)?,
            };
            let needed = EvalParams::for_height(*t_span + region.radius).n_terms;
            let f = load_form(cli, form.weight, needed)?;
            let lser = LSeries::new(&f, kind, needed)?;
            let samples = parse_target(target, &region, *n_boundary)?;
            let result = shift_search(&lser, &region, &samples, *t_span, *dt, *eps)?;
            if let Some(path) = csv {
                let mut buf = String::from("t,sup_err\n");
                for (i, e) in result.errors.iter().enumerate() {
                    buf.push_str(&format!("{:.6},{:.10e}\n", i as f64 * dt, e));
                }
                fs::write(path, buf)?;
            }
            let human = format!(
                "best_t = {:.4}, best_err = {:.6e}, good-set fraction at eps = {}: {:.4}",
                result.best_t, result.best_err, eps, result.good_set_measure
            );
            emit(
                cli,
                &Artifact {
                    provenance: Provenance::new(form.weight).kind(&kind).n(needed),
                    report: &result,
                },
                human,
            )
        }
        Command::Verify { level } => {
            let report = match level.as_str() {
                "quick" => verify::run_quick(),
                "full" => verify::run_full(),
                other => {
                    return Err(Error::invalid(format!(
                        "unknown level '{other}' (expected quick or full)"
                    )))
                }
            };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for c in &report.criteria {
                    println!("{}", c.summary_line());
                }
            }
            if !report.pass {
                let failing: Vec<String> = report
                    .criteria
                    .iter()
                    .filter(|c| !c.pass)
                    .flat_map(|c| {
                        c.failing()
                            .into_iter()
                            .map(|f| format!("{}: {} = {:.6e} (bound {} {:.6e})", c.name, f.name, f.measured, f.cmp, f.bound))
                    })
                    .collect();
                let payload = serde_json::json!({
                    "error": { "kind": "verification-failed", "failing": failing }
                });
                eprintln!("{payload}");
                std::process::exit(1);
            }
            Ok(())
        }
    }
}

fn sidecar_path(out: &PathBuf) -> PathBuf {
    let mut os = out.as_os_str().to_owned();
    os.push(".meta.json");
    PathBuf::from(os)
}

fn parse_target(spec: &str, region: &DiscRegion, n_boundary: usize) -> Result<Vec<Complex64>> {
    if let Some(value) = spec.strip_prefix("const:") {
        let mut parts = value.splitn(2, ',');
        let re: f64 = parts
            .next()
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::invalid(format!("bad constant target '{value}'")))?;
        let im: f64 = match parts.next() {
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad constant target '{value}'")))?,
            None => 0.0,
        };
        return Ok(vec![Complex64::new(re, im); n_boundary]);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path)?;
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("re,")) {
                continue;
            }
            let cols: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::invalid(format!("bad target row {}", i + 1)))?;
            if cols.len() != 4 {
                return Err(Error::invalid(format!(
                    "target row {} needs re,im,phi_re,phi_im",
                    i + 1
                )));
            }
            rows.push((Complex64::new(cols[0], cols[1]), Complex64::new(cols[2], cols[3])));
        }
        if rows.len() != n_boundary {
            return Err(Error::invalid(format!(
                "target file has {} samples, expected n_boundary = {n_boundary}",
                rows.len()
            )));
        }
        let boundary = region.boundary_points(n_boundary);
        for (i, (pos, _)) in rows.iter().enumerate() {
            if (pos - boundary[i]).norm() > 1e-6 {
                return Err(Error::invalid(format!(
                    "target sample {i} at {pos} does not match the boundary point {}",
                    boundary[i]
                )));
            }
        }
        return Ok(rows.into_iter().map(|(_, phi)| phi).collect());
    }
    Err(Error::invalid(format!(
        "unknown target '{spec}' (expected const:RE[,IM] or file:PATH)"
    )))
}

fn write_sample_csv(
    path: &PathBuf,
    lser: &LSeries,
    s: Complex64,
    opts: &CompareOptions,
) -> Result<()> {
    use rand::Rng;
    use rand::SeedableRng;
    // regenerate both populations with the same seeds the report used
    let params = EvalParams::for_height(opts.t_span);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(opts.seed);
    let mut file = fs::File::create(path)?;
    writeln!(file, "population,t_or_index,re,im")?;
    for _ in 0..opts.n_shift {
        let t: f64 = rng.gen::<f64>() * opts.t_span;
        let v = lser.eval_value(s + Complex64::new(0.0, t), &params)?;
        writeln!(file, "shift,{t:.6},{:.10e},{:.10e}", v.re, v.im)?;
    }
    let model = symuniv::random_model::RandomModel::new(lser, opts.p_max)?;
    for (i, sample) in model
        .sample_batch(opts.seed, opts.n_model, s)?
        .iter()
        .enumerate()
    {
        writeln!(file, "model,{i},{:.10e},{:.10e}", sample.re, sample.im)?;
    }
    Ok(())
}
