//! Command-line front end. [`run`] parses arguments, writes to stdout/stderr and
//! returns the process exit code: 0 success, 2 a verification row failed,
//! 1 runtime error, 64 usage error.

use crate::cumulant_core::{
    cumulant_kol_bound, cumulants_from_moments, CumulantBoundParams, KolVariant,
};
use crate::dependency_graphs::WeightedGraph;
use crate::empirics::{emit_report, verify_model, ReportFormat, VerificationRow};
use crate::error::{Error, Result};
use crate::markov_chains::{
    linear_functional_kol_bound, markov_cumulant_bound, markov_kol_bound, Chain, MarkovChainSpec,
};
use crate::model_zoo::make_model;
use crate::stable_laws::{StableLaw, DEFAULT_TOL};
use crate::zone_control::ZoneOfControl;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "modstable", version, about = "Berry-Esseen bounds for mod-stable convergence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct LawArgs {
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
}

impl LawArgs {
    fn law(&self) -> Result<StableLaw> {
        StableLaw::new(self.c, self.alpha, self.beta)
    }
}

#[derive(Debug, Args, Clone)]
pub struct ModelArgs {
    #[arg(long)]
    pub model: String,
    /// Model parameters as an inline JSON object.
    #[arg(long, default_value = "{}")]
    pub params: String,
}

impl ModelArgs {
    fn params(&self) -> Result<Value> {
        serde_json::from_str(&self.params).map_err(|e| Error::BadParams(format!("--params: {e}")))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kolmogorov constant of a zone of control, and the bound at --t when given.
    Bound {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long)]
        v: f64,
        #[arg(long)]
        w: Option<f64>,
        #[arg(long = "K")]
        k: f64,
        #[arg(long = "K1")]
        k1: f64,
        #[arg(long = "K2", default_value_t = 0.0)]
        k2: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long)]
        t: Option<f64>,
    },
    /// Distribution function and density of a stable law by inversion.
    Cdf {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Draws of the renormalized variable of a model, one per line.
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: f64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Cumulants from moments, spanning-tree sums of an edge list, or cumulant-route bounds.
    Cumulants {
        /// Moments m₁, m₂, ... as integers, fractions or decimals.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        moments: Option<Vec<String>>,
        /// Edge list file, one `u v w` per line.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        multiset: Option<Vec<usize>>,
        #[arg(long = "D")]
        d: Option<f64>,
        #[arg(long = "N")]
        n: Option<f64>,
        #[arg(long = "A")]
        a: Option<f64>,
        #[arg(long)]
        var: Option<f64>,
    },
    /// θ, asymptotic variance and bounds for a finite chain given as JSON {states, P, f}.
    Markov {
        #[arg(long)]
        chain: PathBuf,
        /// State function overriding the one in the file.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Measure d_Kol for a model at several sizes and compare with its bound.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Curve data (size, bound, dkol) for external plotting.
    ReportPlot {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    /// Comma-separated sizes; scientific notation allowed.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<f64>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 200_000)]
    pub budget: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    pub format: String,
}

/// Run with the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Error::BadParams(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::BadParams(format!("cannot read '{s}' as a number"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    if let Ok(i) = s.parse::<BigInt>() {
        return Ok(BigRational::from_integer(i));
    }
    // decimals are read as the exact decimal fraction they denote
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    })
}

fn json_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::BadParams(format!("expected a number, got {v}"))),
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        to_f64(r).to_string()
    }
}

/// Chain file contents: exact transition matrix and one or several state functions.
#[derive(Debug, Clone)]
pub struct ChainInput {
    pub p: Vec<Vec<BigRational>>,
    /// One function per time, or a single function.
    pub f: Vec<Vec<BigRational>>,
}

pub fn parse_chain_json(text: &str) -> Result<ChainInput> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::BadParams(format!("chain JSON: {e}")))?;
    let p = v.get("P").and_then(Value::as_array).ok_or_else(|| Error::BadParams("chain JSON needs P".into()))?;
    let p: Vec<Vec<BigRational>> = p
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::BadParams("P rows must be arrays".into()))?
                .iter()
                .map(json_rational)
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = p.len();
    if let Some(s) = v.get("states").and_then(Value::as_u64) {
        if s as usize != m {
            return Err(Error::BadParams(format!("states = {s} but P has {m} rows")));
        }
    }
    if p.iter().any(|r| r.len() != m) {
        return Err(Error::BadParams("P must be square".into()));
    }
    let f = match v.get("f") {
        None => Vec::new(),
        Some(Value::Array(items)) if items.iter().all(Value::is_array) => items
            .iter()
            .map(|row| row.as_array().unwrap().iter().map(json_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?,
        Some(Value::Array(items)) => vec![items.iter().map(json_rational).collect::<Result<_>>()?],
        Some(other) => return Err(Error::BadParams(format!("f must be an array, got {other}"))),
    };
    if f.iter().any(|r| r.len() != m) {
        return Err(Error::BadParams("each f must have one value per state".into()));
    }
    Ok(ChainInput { p, f })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Bound { law, v, w, k, k1, k2, gamma, t } => {
            let law = law.law()?;
            let zone = ZoneOfControl { law, gamma, k, v, w: w.unwrap_or(v), k1, k2 };
            let kc = crate::zone_control::kolmogorov_constant(&law, v, k, k1);
            writeln!(out, "C = {}", kc.c).map_err(io)?;
            writeln!(out, "lambda* = {}", kc.lambda_star).map_err(io)?;
            writeln!(out, "C3 = {}", crate::zone_control::simplified_constant(&law, v, k, k1)).map_err(io)?;
            if let Some(t) = t {
                let rep = zone.kolmogorov_bound(t)?;
                writeln!(out, "bound = {}", rep.bound).map_err(io)?;
                writeln!(out, "exponent = {}", rep.exponent).map_err(io)?;
                if rep.clamped {
                    writeln!(out, "gamma clamped to {}", rep.gamma_used).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Cdf { law, x, tol } => {
            let law = law.law()?;
            writeln!(out, "x,cdf,density").map_err(io)?;
            for xv in x {
                let f = law.cdf(xv, tol)?;
                let d = law.density(xv, tol)?;
                writeln!(out, "{xv},{f},{d}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Sample { model, n, count, seed } => {
            let m = make_model(&model.model, &model.params()?)?;
            let xs = m.sample(n, count, seed)?;
            let mut s = String::with_capacity(xs.len() * 20);
            for x in xs {
                s.push_str(&x.to_string());
                s.push('\n');
            }
            out.write_all(s.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Cumulants { moments, graph, multiset, d, n, a, var } => {
            let mut did = false;
            if let Some(ms) = moments {
                let ms: Vec<BigRational> = ms.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
                let ks = cumulants_from_moments(&ms)?;
                for (i, k) in ks.iter().enumerate() {
                    writeln!(out, "kappa{} = {}", i + 1, k).map_err(io)?;
                }
                did = true;
            }
            if let Some(path) = graph {
                let text = std::fs::read_to_string(&path)?;
                let g = WeightedGraph::parse_edge_list(&text)?;
                writeln!(out, "vertices = {}", g.n).map_err(io)?;
                writeln!(out, "max weighted degree = {}", g.max_weighted_degree()).map_err(io)?;
                if let Some(ms) = &multiset {
                    let ind = g.induced(ms)?;
                    writeln!(out, "spanning tree sum = {}", ind.spanning_tree_weight_sum()).map_err(io)?;
                }
                did = true;
            }
            if let (Some(d), Some(n), Some(a), Some(var)) = (d, n, a, var) {
                let p = CumulantBoundParams::new(d, n, a, var)?;
                for r in 1..=6 {
                    writeln!(out, "kappa{r} bound = {}", p.cumulant_bound(r)).map_err(io)?;
                }
                writeln!(out, "dkol bound = {}", cumulant_kol_bound(&p, KolVariant::Standard)?).map_err(io)?;
                if let Ok(b) = cumulant_kol_bound(&p, KolVariant::SigmaLeA) {
                    writeln!(out, "dkol bound (sigma <= A) = {b}").map_err(io)?;
                }
                did = true;
            }
            if !did {
                return Err(Error::BadParams("cumulants needs --moments, --graph, or --D --N --A --var".into()));
            }
            Ok(EXIT_OK)
        }
        Command::Markov { chain, f, n } => {
            let text = std::fs::read_to_string(&chain)?;
            let mut input = parse_chain_json(&text)?;
            if let Some(f) = f {
                input.f = vec![f.split(',').map(parse_rational).collect::<Result<_>>()?];
            }
            markov_report(&input, n, out)
        }
        Command::Verify { model, run } => {
            let rows = run_verify(&model, &run)?;
            let format: ReportFormat = run.format.parse()?;
            let text = emit_report(&rows, format, run.out.as_deref())?;
            if run.out.is_none() {
                out.write_all(text.as_bytes()).map_err(io)?;
            }
            Ok(if rows.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_FAIL })
        }
        Command::ReportPlot { model, run } => {
            let rows = run_verify(&model, &run)?;
            let mut s = String::from("size,bound,dkol\n");
            for r in &rows {
                let b = r.bound.map(|b| b.to_string()).unwrap_or_default();
                s.push_str(&format!("{},{},{}\n", r.size, b, r.dkol.value));
            }
            match &run.out {
                Some(p) => std::fs::write(p, &s)?,
                None => out.write_all(s.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn run_verify(model: &ModelArgs, run: &RunArgs) -> Result<Vec<VerificationRow>> {
    let m = make_model(&model.model, &model.params()?)?;
    run.format.parse::<ReportFormat>()?;
    verify_model(&m, &run.sizes, run.seed, run.budget)
}

fn markov_report(input: &ChainInput, n: Option<usize>, out: &mut dyn Write) -> Result<i32> {
    let exact = Chain::new(input.p.clone())?;
    let rows: Vec<Vec<f64>> = input.p.iter().map(|r| r.iter().map(to_f64).collect()).collect();
    let spec = MarkovChainSpec::from_rows(&rows)?;
    let m = spec.states();
    let pi: Vec<String> = exact.pi.iter().map(|v| v.to_string()).collect();
    let mut report = json!({
        "states": m,
        "pi": pi,
        "theta": spec.theta,
    });
    let mut lines = vec![format!("pi = ({})", pi.join(", ")), format!("theta = {}", spec.theta)];
    if input.f.len() == 1 {
        let f = &input.f[0];
        let sigma2 = exact.asymptotic_variance(f)?;
        let cycle = exact.cycle_criterion(f, |v| v.is_zero());
        let k = f.iter().map(|v| to_f64(v).abs()).fold(0.0, f64::max);
        lines.push(format!("Sigma2 = {}", fmt_rational(&sigma2)));
        lines.push(format!("cycle with nonzero sum = {cycle}"));
        report["Sigma2"] = json!(to_f64(&sigma2));
        report["cycle"] = json!(cycle);
        if let (Some(n), true) = (n, spec.theta < 1.0) {
            let nf = n as f64;
            let mom = exact.sum_moments(f, n, 2);
            let var = to_f64(&(mom[2].clone() - mom[1].clone() * mom[1].clone()));
            lines.push(format!("Var S_n = {var}"));
            for r in 1..=4 {
                lines.push(format!("kappa{r} bound = {}", markov_cumulant_bound(nf, r, spec.theta, k, m)?));
            }
            if var > 0.0 {
                let b = markov_kol_bound(nf, var, k, m, spec.theta)?;
                lines.push(format!("dkol bound = {b}"));
                report["dkol_bound"] = json!(b);
            }
            let s2 = to_f64(&sigma2);
            if s2 > 0.0 {
                let b = linear_functional_kol_bound(nf, k, m, s2.sqrt(), spec.theta)?;
                lines.push(format!("dkol bound (asymptotic variance) = {b}"));
            }
            report["var_s"] = json!(var);
        }
    } else if !input.f.is_empty() {
        let fs = &input.f;
        let len = fs.len();
        let times: Vec<i64> = (0..len as i64).collect();
        let mut var = BigRational::zero();
        let mean: Vec<BigRational> = fs.iter().map(|f| exact.joint_moment(std::slice::from_ref(f), &[0])).collect();
        for s in 0..len {
            for t in 0..len {
                let e = exact.joint_moment(&[fs[s].clone(), fs[t].clone()], &[times[s], times[t]]);
                var = var + e - mean[s].clone() * mean[t].clone();
            }
        }
        let k = fs.iter().flatten().map(|v| to_f64(v).abs()).fold(0.0, f64::max);
        let nf = n.unwrap_or(len) as f64;
        let var = to_f64(&var);
        lines.push(format!("Var S_n = {var}"));
        report["var_s"] = json!(var);
        if var > 0.0 && spec.theta < 1.0 {
            let b = markov_kol_bound(nf, var, k, m, spec.theta)?;
            lines.push(format!("dkol bound = {b}"));
            report["dkol_bound"] = json!(b);
        }
    }
    if spec.theta >= 1.0 {
        lines.push("bounds need theta < 1".to_string());
    }
    for l in lines {
        writeln!(out, "{l}").map_err(io)?;
    }
    writeln!(out, "{report}").map_err(io)?;
    Ok(EXIT_OK)
}
