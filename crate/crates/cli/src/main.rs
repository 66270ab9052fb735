//! `jackgraph`: compute, verify and experiment on the Jack-weighted Young graph.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use jackgraph::boundary::{
    asymptotics_experiment, martin_kernel_boundary, parse_list, scaled_error_bounded, DiagramFamily,
};
use jackgraph::graph::{dim_with, martin_kernel_finite, DimMethod};
use jackgraph::harmonic::{harmonic_from_measure, level_distribution, AtomicMeasure};
use jackgraph::jack::{jack_p, pieri_kappa};
use jackgraph::rational::{format_rational, parse_rational, to_f64};
use jackgraph::shifted::{dimension_formula_check, martin_kernel_shifted, shifted_jack};
use jackgraph::verify::{run_suite, Suite};
use jackgraph::{graph::harmonicity_defect, partition::enumerate_up_to};
use jackgraph::{Partition, Rational, ShiftedSymFunc, ThomaPoint, WeightedGraphView};

#[derive(Parser, Debug)]
#[command(name = "jackgraph", version, about = "Exact computations on the Jack-weighted Young graph")]
struct Cli {
    /// Output format; plain text when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monomial expansion of the Jack polynomial P_mu.
    Jack {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_theta, default_value = "1")]
        theta: Rational,
    },
    /// Edge multiplicities kappa(lambda, nu); all covers of lambda when --nu is absent.
    Pieri {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Option<Partition>,
        #[arg(long, value_parser = parse_theta, default_value = "1")]
        theta: Rational,
    },
    /// Weighted number of paths dim(mu, nu).
    Dim {
        #[arg(long, value_parser = parse_partition, default_value = "[]")]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Partition,
        #[arg(long, value_parser = parse_theta, default_value = "1")]
        theta: Rational,
        #[arg(long, value_enum, default_value = "recursive")]
        method: DimArg,
    },
    /// Finite Martin kernel K(mu, nu).
    Kernel {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Partition,
        #[arg(long, value_parser = parse_theta, default_value = "1")]
        theta: Rational,
        #[arg(long, value_enum, default_value = "recursive")]
        method: KernelArg,
    },
    /// Shifted Jack polynomials.
    Shifted {
        #[command(subcommand)]
        command: ShiftedCommand,
    },
    /// The Thoma simplex: boundary kernel and asymptotics tables.
    Boundary {
        #[command(subcommand)]
        command: BoundaryCommand,
    },
    /// Harmonic functions from boundary measures.
    Harmonic {
        #[command(subcommand)]
        command: HarmonicCommand,
    },
    /// Run an identity suite: pieri, hook, corners, dimension-formula,
    /// kingman-limit, positivity, harmonicity, normalization, content-sum, schur-det.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 6)]
        max: usize,
        /// Comma-separated list of theta values.
        #[arg(long, default_value = "1/2,1,2")]
        theta: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DimArg {
    Hook,
    Recursive,
    Paths,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KernelArg {
    Recursive,
    Shifted,
}

#[derive(Subcommand, Debug)]
enum ShiftedCommand {
    /// P*_mu(nu) and its coefficients in the shifted power sums.
    Eval {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, value_parser = parse_partition)]
        nu: Partition,
        #[arg(long, value_parser = parse_theta, default_value = "1")]
        theta: Rational,
    },
    /// dim(mu,nu)/dim(nu) against P*_mu(nu)/(n falling m) over a range.
    VerifyDimension {
        #[arg(long, default_value_t = 3)]
        max_mu: usize,
        #[arg(long, default_value_t = 6)]
        max: usize,
        #[arg(long, value_parser = parse_theta, default_value = "1")]
        theta: Rational,
    },
}

#[derive(Subcommand, Debug)]
enum BoundaryCommand {
    /// K(mu; omega) at the point (alpha; beta).
    Kernel {
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, value_parser = parse_theta, default_value = "1")]
        theta: Rational,
    },
    /// Asymptotics of F(nu)/n^m along a diagram family, k = 2..=kmax.
    Asym(AsymArgs),
}

#[derive(Args, Debug)]
struct AsymArgs {
    /// square | row | column | rect:a:b
    #[arg(long, default_value = "square")]
    family: String,
    #[arg(long, default_value_t = 10)]
    kmax: usize,
    #[arg(long, value_parser = parse_theta, default_value = "1")]
    theta: Rational,
    /// ptilde:m for the shifted power sum, or pstar:[..] for a shifted Jack polynomial.
    #[arg(long = "function", default_value = "pstar:[2]")]
    function: String,
}

#[derive(Subcommand, Debug)]
enum HarmonicCommand {
    /// Level distributions of the harmonic function of an atomic measure.
    FromMeasure {
        /// JSON list of {"alpha": [..], "beta": [..], "w": ..}; bare p/q numbers are accepted.
        #[arg(long)]
        atoms: String,
        #[arg(long, value_parser = parse_theta, default_value = "1")]
        theta: Rational,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        /// Also check harmonicity and cross-check dimensions by recursion.
        #[arg(long)]
        check: bool,
    },
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: jackgraph::Error| e.to_string())
}

fn parse_theta(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Reproducibility record embedded in every JSON output.
#[derive(Serialize)]
struct RunManifest {
    command_line: String,
    theta: Option<String>,
    levels: BTreeMap<String, usize>,
    outputs: Vec<String>,
    wall_time_ms: u128,
}

/// What a command produced: a text rendering, a JSON value and a CSV table.
struct Report {
    text: String,
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    theta: Option<Rational>,
    levels: BTreeMap<String, usize>,
    /// `false` turns into exit code 1.
    ok: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, header: Vec::new(), rows: Vec::new(), theta: None, levels: BTreeMap::new(), ok: true }
    }

    fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.header = header;
        self.rows = rows;
        self
    }

    fn theta(mut self, t: &Rational) -> Self {
        self.theta = Some(t.clone());
        self
    }

    fn level(mut self, name: &str, v: usize) -> Self {
        self.levels.insert(name.to_string(), v);
        self
    }
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

#[derive(Deserialize)]
struct AtomInput {
    #[serde(default)]
    alpha: Vec<String>,
    #[serde(default)]
    beta: Vec<String>,
    #[serde(alias = "weight")]
    w: String,
}

/// Accepts JSON where rationals may appear unquoted (`[1/2]`) by quoting every
/// number that is not already inside a string.
fn parse_atoms(s: &str) -> anyhow::Result<AtomicMeasure> {
    let re = Regex::new(r#""(?:[^"\\]|\\.)*"|-?\d+(?:/\d+)?"#).expect("static regex");
    let quoted = re.replace_all(s, |c: &regex::Captures| {
        let m = &c[0];
        if m.starts_with('"') {
            m.to_string()
        } else {
            format!("\"{m}\"")
        }
    });
    let atoms: Vec<AtomInput> =
        serde_json::from_str(&quoted).map_err(|e| usage(format!("cannot parse atoms {s:?}: {e}")))?;
    let parse_all = |v: &[String]| v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>();
    let list = atoms
        .iter()
        .map(|a| Ok((ThomaPoint::new(parse_all(&a.alpha)?, parse_all(&a.beta)?)?, parse_rational(&a.w)?)))
        .collect::<Result<Vec<_>, jackgraph::Error>>()?;
    Ok(AtomicMeasure::new(list)?)
}

/// Bad user input; exits with the usage code.
fn usage(msg: String) -> anyhow::Error {
    jackgraph::Error::Parse(msg).into()
}

fn parse_function(s: &str, theta: &Rational) -> anyhow::Result<(ShiftedSymFunc, String)> {
    if let Some(m) = s.strip_prefix("ptilde:") {
        let m: usize = m.parse().map_err(|_| usage(format!("bad degree in {s:?}")))?;
        if m == 0 {
            return Err(usage("ptilde degree must be positive".into()));
        }
        return Ok((ShiftedSymFunc::ptilde(m, theta.clone()), format!("ptilde_{m}")));
    }
    if let Some(mu) = s.strip_prefix("pstar:") {
        let mu: Partition = mu.parse()?;
        if mu.is_empty() {
            return Err(usage("pstar needs a nonempty diagram".into()));
        }
        return Ok(((*shifted_jack(&mu, theta)?).clone(), format!("P*_{mu}")));
    }
    Err(usage(format!("unknown function {s:?}; expected ptilde:m or pstar:[..]")))
}

fn run(cmd: &Command) -> anyhow::Result<Report> {
    Ok(match cmd {
        Command::Jack { mu, theta } => {
            let p = jack_p(mu, theta)?;
            let text = p.expansion.to_string();
            let rows = p.expansion.terms().iter().rev().map(|(k, c)| vec![k.to_string(), r(c)]).collect();
            Report::new(text, json!({ "mu": mu, "theta": r(theta), "expansion": p.expansion }))
                .table(vec!["index", "coeff"], rows)
                .theta(theta)
                .level("size", mu.size())
        }
        Command::Pieri { lambda, nu, theta } => {
            let targets = match nu {
                Some(nu) => vec![nu.clone()],
                None => lambda.covers(),
            };
            let mut rows = Vec::new();
            for nu in &targets {
                rows.push(vec![lambda.to_string(), nu.to_string(), r(&pieri_kappa(lambda, nu, theta)?)]);
            }
            let text =
                rows.iter().map(|x| format!("kappa({}, {}) = {}", x[0], x[1], x[2])).collect::<Vec<_>>().join("\n");
            let json = json!({
                "lambda": lambda, "theta": r(theta),
                "edges": rows.iter().map(|x| json!({"nu": x[1], "kappa": x[2]})).collect::<Vec<_>>(),
            });
            Report::new(text, json).table(vec!["lambda", "nu", "kappa"], rows).theta(theta)
        }
        Command::Dim { mu, nu, theta, method } => {
            let m = match method {
                DimArg::Hook => DimMethod::Hook,
                DimArg::Recursive => DimMethod::Recursive,
                DimArg::Paths => DimMethod::Paths,
            };
            let d = dim_with(mu, nu, theta, m)?;
            Report::new(r(&d), json!({ "mu": mu, "nu": nu, "theta": r(theta), "method": format!("{method:?}").to_lowercase(), "dim": r(&d) }))
                .table(vec!["mu", "nu", "dim"], vec![vec![mu.to_string(), nu.to_string(), r(&d)]])
                .theta(theta)
                .level("size", nu.size())
        }
        Command::Kernel { mu, nu, theta, method } => {
            let k = match method {
                KernelArg::Recursive => martin_kernel_finite(mu, nu, &WeightedGraphView::jack(theta.clone())?)?,
                KernelArg::Shifted => martin_kernel_shifted(mu, nu, theta)?,
            };
            Report::new(r(&k), json!({ "mu": mu, "nu": nu, "theta": r(theta), "kernel": r(&k), "decimal": to_f64(&k) }))
                .table(vec!["mu", "nu", "kernel"], vec![vec![mu.to_string(), nu.to_string(), r(&k)]])
                .theta(theta)
                .level("size", nu.size())
        }
        Command::Shifted { command: ShiftedCommand::Eval { mu, nu, theta } } => {
            let f = shifted_jack(mu, theta)?;
            let v = f.eval(nu);
            let coeffs: Vec<Value> = f.coeffs().iter().rev().map(|(k, c)| json!({"index": k, "coeff": r(c)})).collect();
            Report::new(
                r(&v),
                json!({ "mu": mu, "nu": nu, "theta": r(theta), "value": r(&v), "ptilde_coeffs": coeffs }),
            )
            .table(vec!["mu", "nu", "value"], vec![vec![mu.to_string(), nu.to_string(), r(&v)]])
            .theta(theta)
        }
        Command::Shifted { command: ShiftedCommand::VerifyDimension { max_mu, max, theta } } => {
            let mut rows = Vec::new();
            let mut failures = 0;
            for mu in enumerate_up_to(*max_mu) {
                for nu in enumerate_up_to(*max) {
                    let (lhs, rhs) = dimension_formula_check(&mu, &nu, theta)?;
                    if lhs != rhs {
                        failures += 1;
                    }
                    rows.push(vec![mu.to_string(), nu.to_string(), r(&lhs), r(&rhs)]);
                }
            }
            let first = rows.iter().find(|x| x[2] != x[3]).cloned();
            let text = match &first {
                None => format!("pass: {} pairs", rows.len()),
                Some(x) => format!("FAIL: mu={} nu={} lhs={} rhs={}", x[0], x[1], x[2], x[3]),
            };
            let json = json!({
                "theta": r(theta), "pairs": rows.len(), "failures": failures,
                "counterexample": first.map(|x| json!({"mu": x[0], "nu": x[1], "lhs": x[2], "rhs": x[3]})),
            });
            let mut rep = Report::new(text, json)
                .table(vec!["mu", "nu", "lhs", "rhs"], rows)
                .theta(theta)
                .level("max_mu", *max_mu)
                .level("max", *max);
            rep.ok = failures == 0;
            rep
        }
        Command::Boundary { command: BoundaryCommand::Kernel { mu, alpha, beta, theta } } => {
            let w = ThomaPoint::new(parse_list(alpha)?, parse_list(beta)?)?;
            let k = martin_kernel_boundary(mu, &w, theta)?;
            Report::new(r(&k.value), serde_json::to_value(&k)?)
                .table(vec!["mu", "omega", "kernel"], vec![vec![mu.to_string(), w.to_string(), r(&k.value)]])
                .theta(theta)
        }
        Command::Boundary { command: BoundaryCommand::Asym(a) } => {
            let family: DiagramFamily = a.family.parse()?;
            if a.kmax < 2 {
                return Err(usage("empty table: --kmax must be at least 2".into()));
            }
            let (f, fname) = parse_function(&a.function, &a.theta)?;
            let diagrams: Vec<Partition> = (2..=a.kmax).map(|k| family.diagram(k)).collect();
            let table = asymptotics_experiment(&f, &diagrams, &a.theta)?;
            let bounded = scaled_error_bounded(&table, 2);
            let rows: Vec<Vec<String>> = table
                .iter()
                .map(|x| {
                    vec![x.n.to_string(), r(&x.normalized), r(&x.limit), r(&x.error), format!("{:.6e}", x.scaled_error)]
                })
                .collect();
            let text = std::iter::once("n\tF/n^m\tlimit\terror\tscaled".to_string())
                .chain(rows.iter().map(|x| x.join("\t")))
                .chain(std::iter::once(format!("scaled error bounded (slack 2): {bounded}")))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "family": a.family, "function": fname, "theta": r(&a.theta),
                "rows": table, "scaled_error_bounded": bounded,
            });
            Report::new(text, json)
                .table(vec!["n", "normalized", "limit", "error", "scaled_error"], rows)
                .theta(&a.theta)
                .level("kmax", a.kmax)
        }
        Command::Harmonic { command: HarmonicCommand::FromMeasure { atoms, theta, levels, check } } => {
            let m = parse_atoms(atoms)?;
            let phi = harmonic_from_measure(m.clone(), theta)?;
            let values = phi.materialize(levels + usize::from(*check));
            let mut dists = Vec::new();
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 0..=*levels {
                let d = level_distribution(|l| values[l].clone(), n, theta, *check)?;
                ok &= d.total() == Rational::from_integer(1.into());
                for (lam, mass) in d.masses.iter().rev() {
                    rows.push(vec![n.to_string(), lam.to_string(), r(&values[lam]), r(mass)]);
                }
                dists.push(d);
            }
            let mut defects = Vec::new();
            if *check {
                let view = WeightedGraphView::jack(theta.clone())?;
                for lam in enumerate_up_to(*levels) {
                    let d = harmonicity_defect(|l| values[l].clone(), &lam, &view)?;
                    if d != Rational::from_integer(0.into()) {
                        ok = false;
                        defects.push(json!({"lambda": lam, "defect": r(&d)}));
                    }
                }
            }
            let text = dists
                .iter()
                .map(|d| format!("n={}: total mass {} over {} diagrams", d.n, r(&d.total()), d.masses.len()))
                .chain(check.then(|| format!("harmonicity defects: {}", defects.len())))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "theta": r(theta), "measure": m, "levels": dists,
                "checked": check, "nonzero_defects": defects,
            });
            let mut rep = Report::new(text, json)
                .table(vec!["n", "lambda", "phi", "mass"], rows)
                .theta(theta)
                .level("levels", *levels);
            rep.ok = ok;
            rep
        }
        Command::Verify { suite, max, theta } => {
            let s: Suite = suite.parse()?;
            let thetas = parse_list(theta)?;
            let report = run_suite(s, *max, &thetas)?;
            let mut text = format!(
                "{} {}: {} checks, max {}, theta {}",
                if report.passed { "pass" } else { "FAIL" },
                report.suite,
                report.checks,
                report.max,
                report.thetas.join(",")
            );
            for n in &report.notes {
                text.push_str(&format!("\n  {n}"));
            }
            if let Some(c) = &report.counterexample {
                text.push_str(&format!("\ncounterexample: {}", serde_json::to_string(c)?));
            }
            let rows = vec![vec![
                report.suite.clone(),
                report.passed.to_string(),
                report.checks.to_string(),
                report.counterexample.as_ref().map(|c| serde_json::to_string(c).unwrap()).unwrap_or_default(),
            ]];
            let ok = report.passed;
            let mut rep = Report::new(text, serde_json::to_value(&report)?)
                .table(vec!["suite", "passed", "checks", "counterexample"], rows)
                .level("max", *max);
            rep.ok = ok;
            rep
        }
    })
}

fn render(cli: &Cli, rep: &Report, started: Instant) -> anyhow::Result<String> {
    Ok(match cli.format {
        None => rep.text.clone() + "\n",
        Some(Format::Json) => {
            let manifest = RunManifest {
                command_line: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
                theta: rep.theta.as_ref().map(format_rational),
                levels: rep.levels.clone(),
                outputs: cli.out.iter().map(|p| p.display().to_string()).collect(),
                wall_time_ms: started.elapsed().as_millis(),
            };
            let doc = json!({ "manifest": manifest, "result": rep.json });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&rep.header)?;
            for row in &rep.rows {
                w.write_record(row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let started = Instant::now();
    let rep = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            let is_usage = matches!(
                e.downcast_ref::<jackgraph::Error>(),
                Some(jackgraph::Error::Domain(_) | jackgraph::Error::Parse(_))
            );
            return ExitCode::from(if is_usage { 2 } else { 1 });
        }
    };
    let output = match render(&cli, &rep, started) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{output}"),
    }
    if rep.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
