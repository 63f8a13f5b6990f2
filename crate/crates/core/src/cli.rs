//! Command-line front end: argument types, request handling and output
//! formatting. The binary only parses arguments and prints.

use crate::action::{Rep, Untwisted};
use crate::diagram::{lattice_dot, plane_svg, plane_text};
use crate::equivalence::{a_coeff, canonicalize, partner, Canonical, EquivalenceClass};
use crate::error::{Error, Result};
use crate::isotypic::Signature;
use crate::linalg::reduce_det;
use crate::parse::{parse_poly, parse_word};
use crate::qmatrix::QMatrix;
use crate::report::Report;
use crate::scalars::{specialize, ParameterPoint, Twist, Value};
use crate::suites::{check_unitarity, run_suite, SuiteOptions, UnitaritySample};
use crate::transitions::{classify, lattice, window, Direction, Lattice, SignaturePredicate, StructureReport};
use crate::unitarity::{classify_series, unitary_submodules, FormSolver, InvariantForm};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const QSAMPLE_VAR: &str = "QMATBALL_QSAMPLE";

#[derive(Parser, Debug)]
#[command(name = "qmatball", version, about = "Principal-series-like representations of U_q sl_2n on the quantum matrix ball")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Dot,
    Svg,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Params {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Real part of alpha, e.g. "-3/2".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Imaginary part of alpha and beta in units of pi/h (0 or 1).
    #[arg(long, default_value_t = 0)]
    pub alpha_im: u8,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
}

impl Params {
    pub fn point(&self) -> Result<(ParameterPoint, ParameterPoint)> {
        let need = |x: &Option<String>, name: &str| {
            x.clone().ok_or_else(|| Error::Usage(format!("--{} is required", name)))
        };
        let a = ParameterPoint::parse(&need(&self.alpha, "alpha")?, self.alpha_im)?;
        let b = ParameterPoint::parse(&need(&self.beta, "beta")?, self.alpha_im)?;
        Ok((a, b))
    }

    fn check_n(&self) -> Result<()> {
        if self.n == 0 || self.n > 4 {
            return Err(Error::Usage(format!("n = {} is outside 1..=4", self.n)));
        }
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure, series label and signature lattice at one parameter point.
    Analyze {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 4)]
        bound: i64,
        /// Add the intertwiner coefficients on the window.
        #[arg(long)]
        intertwiner: bool,
    },
    /// Run a named verification suite; exits with 1 on failure.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// z-degree of the vector window.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply a word to a polynomial.
    Act {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        symbolic: bool,
        #[arg(long, default_value_t = 0)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Intertwiner coefficients a_k and the equivalence class.
    Intertwiner {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        symbolic: bool,
        #[arg(long, default_value_t = 0)]
        d: i64,
        /// Signatures such as "2,1"; defaults to the window.
        #[arg(long = "k", allow_hyphen_values = true)]
        ks: Vec<String>,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Series label, unitary submodules and invariant form samples.
    Classify {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Only the diagram of `analyze`.
    Render {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 4)]
        bound: i64,
    },
}

/// What to print and the exit code.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse(_) | Error::Unsupported(_) | Error::Index(_) => 2,
        _ => 1,
    }
}

/// The q sample from `QMATBALL_QSAMPLE` (a rational square in (0,1)),
/// returned as `s0 = sqrt(q)`; defaults to `q = 49/100`.
pub fn q_sample(var: Option<&str>) -> Result<BigRational> {
    let Some(text) = var else {
        return Ok(BigRational::new(7.into(), 10.into()));
    };
    let q: BigRational = text
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("{} must be a rational, got '{}'", QSAMPLE_VAR, text)))?;
    if !q.is_positive() || q >= BigRational::one() {
        return Err(Error::Usage(format!("{} must lie in (0,1), got {}", QSAMPLE_VAR, q)));
    }
    let root = |x: &BigInt| {
        let r = x.sqrt();
        (&r * &r == *x).then_some(r)
    };
    match (root(q.numer()), root(q.denom())) {
        (Some(a), Some(b)) => Ok(BigRational::new(a, b)),
        _ => Err(Error::Usage(format!("{} must be the square of a rational, got {}", QSAMPLE_VAR, q))),
    }
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize, T: Serialize> {
    schema_version: u32,
    tool_version: &'a str,
    command: &'a str,
    q_sample: String,
    request: R,
    result: T,
}

fn json<R: Serialize, T: Serialize>(command: &str, s0: &BigRational, request: R, result: T) -> String {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        q_sample: (s0 * s0).to_string(),
        request,
        result,
    };
    serde_json::to_string_pretty(&env).expect("serializable") + "\n"
}

fn ok(stdout: String) -> Output {
    Output { stdout, code: 0 }
}

fn text_only(format: Format, what: &str) -> Result<()> {
    match format {
        Format::Json | Format::Text => Ok(()),
        f => Err(Error::Usage(format!("{} has no {:?} output", what, f))),
    }
}

pub fn run(cli: &Cli, qsample_var: Option<&str>) -> Result<Output> {
    let s0 = q_sample(qsample_var)?;
    let format = cli.format;
    match &cli.command {
        Command::Analyze { params, bound, intertwiner } => analyze(format, &s0, params, *bound, *intertwiner),
        Command::Render { params, bound } => render(format, params, *bound),
        Command::Verify { suite, n, bound, degree, seed } => {
            text_only(format, "verify")?;
            let opts = SuiteOptions { n: *n, bound: *bound, degree: *degree, seed: *seed };
            if suite == "unitarity" {
                if opts.n == 0 {
                    return Err(Error::Usage("n must be positive".into()));
                }
                let (report, samples) = check_unitarity(opts.n, opts.bound)?;
                let code = if report.passed() { 0 } else { 1 };
                let stdout = if format == Format::Json {
                    #[derive(Serialize)]
                    struct WithSamples<'a> {
                        #[serde(flatten)]
                        report: &'a Report,
                        samples: &'a [UnitaritySample],
                    }
                    json("verify", &s0, &opts, WithSamples { report: &report, samples: &samples })
                } else {
                    let mut out = report_text(&report);
                    for sm in &samples {
                        out += &format!("\n{}", sm.label);
                        out += &form_text_named(&sm.restrict, &sm.form);
                    }
                    out
                };
                return Ok(Output { stdout, code });
            }
            let report = run_suite(suite, &opts)?;
            let code = if report.passed() { 0 } else { 1 };
            let stdout =
                if format == Format::Json { json("verify", &s0, &opts, &report) } else { report_text(&report) };
            Ok(Output { stdout, code })
        }
        Command::Act { params, symbolic, d, word, poly } => act(format, &s0, params, *symbolic, *d, word, poly),
        Command::Intertwiner { params, symbolic, d, ks, bound } => {
            intertwiner(format, &s0, params, *symbolic, *d, ks, *bound)
        }
        Command::Classify { params, bound } => classify_cmd(format, &s0, params, *bound),
    }
}

pub fn report_text(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let idx = if c.indices.is_empty() {
            String::new()
        } else {
            format!(" {:?}", c.indices)
        };
        out += &format!("{} {}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, idx);
        if let Some(d) = &c.detail {
            out += &format!(": {}", d);
        }
        out.push('\n');
    }
    out += &r.summary();
    out.push('\n');
    out
}

#[derive(Serialize)]
struct LatticeJson {
    bound: i64,
    nodes: Vec<String>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
struct EdgeJson {
    from: String,
    to: String,
    j: usize,
    direction: Direction,
}

fn lattice_json(lat: &Lattice) -> LatticeJson {
    LatticeJson {
        bound: lat.bound,
        nodes: lat.nodes.iter().map(|k| k.to_string()).collect(),
        edges: lat
            .edges
            .iter()
            .map(|e| EdgeJson { from: lat.nodes[e.from].to_string(), to: lat.target(e).to_string(), j: e.j, direction: e.direction })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct Coefficient {
    pub k: String,
    pub a: Option<String>,
    /// `[re, im]` at the q sample, concrete parameters only.
    pub value: Option<[f64; 2]>,
    pub exact: Option<bool>,
    pub pole: bool,
}

fn coefficients(ks: &[Signature], twist: &Twist, s0: &BigRational) -> Vec<Coefficient> {
    ks.iter()
        .map(|k| match a_coeff(k, twist) {
            Ok(e) => {
                let val = twist.alpha_beta().map(|(a, b)| specialize(&e, s0, &a, &b));
                let (value, exact, pole) = match val {
                    Some(Ok(v)) => {
                        let (re, im) = v.to_f64();
                        (Some([re, im]), Some(matches!(v, Value::Exact(_))), false)
                    }
                    Some(Err(_)) => (None, None, true),
                    None => (None, None, false),
                };
                Coefficient { k: k.to_string(), a: Some(e.to_string()), value, exact, pole }
            }
            Err(Error::Pole) | Err(Error::DivisionByZero) => {
                Coefficient { k: k.to_string(), a: None, value: None, exact: None, pole: true }
            }
            Err(e) => Coefficient { k: k.to_string(), a: Some(format!("error: {}", e)), value: None, exact: None, pole: false },
        })
        .collect()
}

#[derive(Serialize)]
struct AnalysisReport {
    structure: StructureReport,
    series: String,
    canonical: Canonical,
    class: EquivalenceClass,
    lattice: LatticeJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    intertwiner: Option<Vec<Coefficient>>,
}

fn analyze(format: Format, s0: &BigRational, params: &Params, bound: i64, with_a: bool) -> Result<Output> {
    params.check_n()?;
    let (alpha, beta) = params.point()?;
    let n = params.n;
    let rep = classify(n, alpha, beta)?;
    let lat = lattice(n, alpha, beta, bound)?;
    let series = classify_series(n, alpha, beta)?;
    let coeffs = with_a.then(|| coefficients(&lat.nodes, &Twist::concrete(alpha, beta), s0));
    match format {
        Format::Json => {
            let report = AnalysisReport {
                structure: rep,
                series: series.to_string(),
                canonical: canonicalize(alpha, beta)?,
                class: partner(n, alpha, beta),
                lattice: lattice_json(&lat),
                intertwiner: coeffs,
            };
            Ok(ok(json("analyze", s0, serde_json::json!({"params": params, "bound": bound, "intertwiner": with_a}), report)))
        }
        Format::Text => {
            let mut out = format!(
                "n = {}, alpha = {}, beta = {}\nstructure: {:?}{}\nseries: {}\n",
                n,
                alpha,
                beta,
                rep.case,
                if rep.direct_sum { " (direct sum)" } else { "" },
                series
            );
            out += &format!("finite-dimensional submodule: {}\n", rep.finite_dim);
            out += &format!("simple submodules: {}\n", rep.simples.len());
            out.push('\n');
            if n == 2 {
                out += &plane_text(&rep, &lat)?;
            } else {
                for h in &rep.hyperplanes {
                    out += &format!("L{}{}: k{} = {}\n", h.j, h.sign, h.j, h.value);
                }
                for (i, p) in rep.simples.iter().enumerate() {
                    out += &format!("simple {}: {}\n", i + 1, p);
                }
            }
            if let Some(cs) = coeffs {
                out.push('\n');
                out += &coefficient_text(&cs);
            }
            Ok(ok(out))
        }
        Format::Dot => Ok(ok(lattice_dot(&rep, &lat))),
        Format::Svg => Ok(ok(plane_svg(&rep, &lat)?)),
    }
}

fn render(format: Format, params: &Params, bound: i64) -> Result<Output> {
    params.check_n()?;
    let (alpha, beta) = params.point()?;
    let rep = classify(params.n, alpha, beta)?;
    let lat = lattice(params.n, alpha, beta, bound)?;
    let out = match format {
        Format::Dot => lattice_dot(&rep, &lat),
        Format::Svg => plane_svg(&rep, &lat)?,
        Format::Text => plane_text(&rep, &lat)?,
        Format::Json => return Err(Error::Usage("render draws diagrams; use analyze for JSON".into())),
    };
    Ok(ok(out))
}

fn twist_of(params: &Params, symbolic: bool, d: i64) -> Result<Option<Twist>> {
    if symbolic {
        if d != 0 && d != 1 {
            return Err(Error::Usage("--d must be 0 or 1".into()));
        }
        return Ok(Some(Twist::symbolic(d)));
    }
    if params.alpha.is_none() && params.beta.is_none() {
        return Ok(None);
    }
    let (a, b) = params.point()?;
    Ok(Some(Twist::concrete(a, b)))
}

fn act(format: Format, s0: &BigRational, params: &Params, symbolic: bool, d: i64, word: &str, poly: &str) -> Result<Output> {
    text_only(format, "act")?;
    params.check_n()?;
    let alg = QMatrix::new(params.n);
    let w = parse_word(word)?;
    w.check_rank(2 * params.n - 1)?;
    let x = parse_poly(&alg, poly)?;
    let base = Untwisted::new(alg.clone());
    let rep = match twist_of(params, symbolic, d)? {
        Some(t) => Rep::twisted(base, t),
        None => Rep::untwisted(base),
    };
    let y = reduce_det(&alg, &rep.act(&w, &x)?)?;
    let text = alg.format_loc(&y);
    Ok(ok(match format {
        Format::Json => {
            json("act", s0, serde_json::json!({"params": params, "symbolic": symbolic, "d": d, "word": word, "poly": poly}), text)
        }
        _ => text + "\n",
    }))
}

fn coefficient_text(cs: &[Coefficient]) -> String {
    let mut out = String::new();
    for c in cs {
        let body = match (&c.a, c.pole) {
            (_, true) => "pole".to_string(),
            (Some(a), false) => match c.value {
                Some([re, im]) if im.abs() > 0.0 => format!("{}  ~ {:.6} + {:.6}i", a, re, im),
                Some([re, _]) => format!("{}  ~ {:.6}", a, re),
                None => a.clone(),
            },
            (None, false) => "-".to_string(),
        };
        out += &format!("a{} = {}\n", c.k, body);
    }
    out
}

#[derive(Serialize)]
struct IntertwinerReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<EquivalenceClass>,
    coefficients: Vec<Coefficient>,
}

fn intertwiner(
    format: Format,
    s0: &BigRational,
    params: &Params,
    symbolic: bool,
    d: i64,
    ks: &[String],
    bound: i64,
) -> Result<Output> {
    text_only(format, "intertwiner")?;
    params.check_n()?;
    let n = params.n;
    let twist = twist_of(params, symbolic, d)?
        .ok_or_else(|| Error::Usage("give --alpha/--beta or --symbolic".into()))?;
    let sigs: Vec<Signature> = if ks.is_empty() {
        window(n, bound)
    } else {
        ks.iter().map(|k| Signature::parse(k)).collect::<Result<_>>()?
    };
    if let Some(k) = sigs.iter().find(|k| k.n() != n || !k.is_dominant()) {
        return Err(Error::Usage(format!("{} is not a dominant signature of length {}", k, n)));
    }
    let class = twist.alpha_beta().map(|(a, b)| partner(n, a, b));
    let report = IntertwinerReport { class, coefficients: coefficients(&sigs, &twist, s0) };
    Ok(ok(match format {
        Format::Json => json("intertwiner", s0, serde_json::json!({"params": params, "symbolic": symbolic, "d": d, "k": ks, "bound": bound}), report),
        _ => {
            let mut out = String::new();
            if let Some(c) = &report.class {
                let m: Vec<String> = c.members.iter().map(|(a, b)| format!("({}, {})", a, b)).collect();
                out += &format!("class: {}\n", m.join(" ~ "));
            }
            out + &coefficient_text(&report.coefficients)
        }
    }))
}

#[derive(Serialize)]
struct ClassifyReport {
    series: String,
    canonical: Canonical,
    class: EquivalenceClass,
    unitary_submodules: Vec<SignaturePredicate>,
    forms: Vec<FormSample>,
}

#[derive(Serialize)]
struct FormSample {
    restrict: SignaturePredicate,
    form: InvariantForm,
}

fn classify_cmd(format: Format, s0: &BigRational, params: &Params, bound: Option<i64>) -> Result<Output> {
    text_only(format, "classify")?;
    params.check_n()?;
    let n = params.n;
    let (alpha, beta) = params.point()?;
    let bound = bound.unwrap_or(if n <= 2 { 2 } else { 1 });
    let series = classify_series(n, alpha, beta)?;
    let subs = unitary_submodules(n, alpha, beta)?;
    let solver = FormSolver::new(n);
    let mut restricts = if subs.is_empty() { vec![SignaturePredicate::all()] } else { subs.clone() };
    if alpha.is_integer() && !restricts.contains(&SignaturePredicate::all()) {
        restricts.push(SignaturePredicate::all());
    }
    let forms = restricts
        .into_iter()
        .map(|r| Ok(FormSample { form: solver.solve(alpha, beta, bound, &r, s0)?, restrict: r }))
        .collect::<Result<Vec<_>>>()?;
    let report = ClassifyReport {
        series: series.to_string(),
        canonical: canonicalize(alpha, beta)?,
        class: partner(n, alpha, beta),
        unitary_submodules: subs,
        forms,
    };
    Ok(ok(match format {
        Format::Json => json("classify", s0, serde_json::json!({"params": params, "bound": bound}), report),
        _ => {
            let mut out = format!("series: {}\n", report.series);
            let m: Vec<String> = report.class.members.iter().map(|(a, b)| format!("({}, {})", a, b)).collect();
            out += &format!("class: {}\n", m.join(" ~ "));
            if alpha.is_integer() {
                let s: Vec<String> = report.unitary_submodules.iter().map(|p| p.to_string()).collect();
                out += &format!("unitary submodules: {}\n", if s.is_empty() { "none".into() } else { s.join("; ") });
            }
            for f in &report.forms {
                out += &form_text(&f.restrict, &f.form);
            }
            out
        }
    }))
}

pub fn form_text(restrict: &SignaturePredicate, form: &InvariantForm) -> String {
    form_text_named(&restrict.to_string(), form)
}

fn form_text_named(restrict: &str, form: &InvariantForm) -> String {
    let mut out = format!(
        "\ninvariant form on {} at q = ({})^2: {}{}\n",
        restrict,
        form.s0,
        if form.feasible { "positive" } else { "not positive" },
        form.reason.as_ref().map(|r| format!(" ({})", r)).unwrap_or_default()
    );
    for (k, c) in &form.c {
        out += &format!("  c{} = {:.6}\n", k, c);
    }
    out
}
