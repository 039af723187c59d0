//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code: 0 on success, 1 when a
//! numerical comparison fails, 2 on invalid input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cplx::{format_complex, parse_complex, parse_complex_list};
use crate::error::{Error, Result};
use crate::gammas::{
    b22, b22_pair, double_sine, elliptic_gamma, modified_gamma, p_cubic, QuasiPeriods, Regime, SinePair, SineRegime,
};
use crate::identities::sample::sample_identity;
use crate::identities::{
    kappa_constant, verify, EllipticBetaParams, HyperbolicKind, HyperbolicParams, IdentityId, IdentityParams,
    MultiEllipticParams, MultiModifiedParams, UnitCircleBetaParams, VerificationReport,
};
use crate::qseries::{theta, theta1, Base, PrecisionPolicy};
use crate::suite::{run_suite, SuiteName, SuiteSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ellbeta", version, about = "Elliptic gamma functions and exact beta-integral checks")]
struct Cli {
    /// Relative quadrature tolerance (overrides the policy's quad_rel_tol).
    #[arg(long, global = true)]
    policy_tol: Option<f64>,
    /// Seed for every random draw.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print JSON on stdout instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    /// JSON file with "policy", "seed", "out", "json" and "params" entries;
    /// command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function at the given arguments.
    Eval {
        #[arg(value_enum)]
        function: Function,
        #[command(flatten)]
        bind: Bindings,
    },
    /// Compare both sides of an identity. Unspecified parameters fall back to
    /// a documented admissible point.
    Verify {
        identity: String,
        #[command(flatten)]
        bind: Bindings,
        /// Draw the parameters from the seeded sampler instead.
        #[arg(long)]
        random: bool,
        /// Quasiperiod regime used by --random.
        #[arg(long, value_enum, default_value_t = RegimeArg::UnitCircle)]
        regime: RegimeArg,
    },
    /// Run a seeded battery: functions, identities-1d, identities-2d, rho or all.
    Suite { name: String },
    /// Draw admissible parameters; the output can be fed back through --config.
    Sample {
        identity: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = RegimeArg::UnitCircle)]
        regime: RegimeArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Function {
    Theta,
    Theta1,
    Egamma,
    Megamma,
    Dsine,
    B22,
    Pcubic,
    Kappa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    UnitCircle,
    Strict,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::UnitCircle => Regime::UnitCircle,
            RegimeArg::Strict => Regime::StrictlyElliptic,
        }
    }
}

/// Parameter bindings; complex values are written `a+bi`, lists are comma
/// separated.
#[derive(Debug, Default, Args)]
struct Bindings {
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Quasiperiods: three values, or two for the double sine.
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    /// Five t_n (elliptic identities).
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Five g_n (four for hyperbolic-aw).
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Coupling t (multiple-elliptic) or g (multiple-modified, hyperbolic).
    #[arg(long, allow_hyphen_values = true)]
    coupling: Option<String>,
    /// Number of integration variables.
    #[arg(long)]
    n: Option<String>,
}

impl Bindings {
    fn into_map(self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let fields = [
            ("z", self.z),
            ("u", self.u),
            ("p", self.p),
            ("q", self.q),
            ("tau", self.tau),
            ("omega", self.omega),
            ("t", self.t),
            ("g", self.g),
            ("coupling", self.coupling),
            ("n", self.n),
        ];
        for (k, v) in fields {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        }
        m
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    policy: Option<PrecisionPolicy>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    json: Option<bool>,
    #[serde(default)]
    params: BTreeMap<String, String>,
}

/// Echo of the effective configuration, embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub command: &'static str,
    pub selector: String,
    pub params: BTreeMap<String, String>,
    pub policy: PrecisionPolicy,
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct EvalOutput {
    schema: &'static str,
    function: Function,
    re: f64,
    im: f64,
    flags: Vec<&'static str>,
    config: ConfigEcho,
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    report: VerificationReport,
    config: ConfigEcho,
}

#[derive(Serialize)]
struct SuiteOutput {
    #[serde(flatten)]
    summary: SuiteSummary,
    config: ConfigEcho,
}

#[derive(Serialize)]
struct SampleOutput {
    schema: &'static str,
    identity: IdentityId,
    n: usize,
    draws: Vec<BTreeMap<String, String>>,
    config: ConfigEcho,
}

#[derive(Serialize)]
struct ErrorOutput {
    schema: &'static str,
    error: String,
    kind: &'static str,
}

struct Ctx {
    policy: PrecisionPolicy,
    seed: Option<u64>,
    out: Option<PathBuf>,
    json: bool,
    params: BTreeMap<String, String>,
}

impl Ctx {
    fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn complex(&self, key: &str) -> Result<Option<Complex64>> {
        self.get(key).map(parse_complex).transpose()
    }

    fn require(&self, key: &str) -> Result<Complex64> {
        self.complex(key)?.ok_or_else(|| Error::Domain(format!("missing required parameter --{key}")))
    }

    fn list(&self, key: &str, len: &[usize]) -> Result<Option<Vec<Complex64>>> {
        let Some(s) = self.get(key) else { return Ok(None) };
        let v = parse_complex_list(s)?;
        if !len.contains(&v.len()) {
            let want = len.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" or ");
            return Err(Error::Domain(format!("--{key} expects {want} values, got {}", v.len())));
        }
        Ok(Some(v))
    }

    fn n(&self) -> Result<usize> {
        match self.get("n") {
            None => Ok(1),
            Some(s) => s.trim().parse().map_err(|_| Error::Domain(format!("--n expects a positive integer, got '{s}'"))),
        }
    }

    fn echo(&self, command: &'static str, selector: &str) -> ConfigEcho {
        ConfigEcho {
            command,
            selector: selector.to_string(),
            params: self.params.clone(),
            policy: self.policy,
            seed: self.seed,
        }
    }
}

fn base(z: Complex64) -> Result<Base> {
    Base::new(z)
}

fn omegas3(v: &[Complex64]) -> Result<QuasiPeriods> {
    match v {
        [a, b, c] => QuasiPeriods::new(*a, *b, *c),
        _ => Err(Error::Domain(format!("--omega expects 3 values, got {}", v.len()))),
    }
}

fn regime_flags(w: &QuasiPeriods) -> Vec<&'static str> {
    let mut f = vec![match w.regime() {
        Regime::UnitCircle => "unit_circle",
        Regime::StrictlyElliptic => "strictly_elliptic",
    }];
    if w.is_commensurate() {
        f.push("commensurate");
    }
    f
}

fn eval_function(f: Function, ctx: &Ctx) -> Result<(Complex64, Vec<&'static str>)> {
    let pol = &ctx.policy;
    match f {
        Function::Theta => {
            let z = ctx.require("z")?;
            let p = ctx.require("p")?;
            Ok((theta(z, base(p)?, pol)?, vec![]))
        }
        Function::Theta1 => Ok((theta1(ctx.require("u")?, ctx.require("tau")?, pol)?, vec![])),
        Function::Egamma => {
            let z = ctx.require("z")?;
            if z.norm() == 0.0 {
                return Err(Error::Domain("z=0 outside domain".into()));
            }
            Ok((elliptic_gamma(z, base(ctx.require("q")?)?, base(ctx.require("p")?)?, pol)?, vec![]))
        }
        Function::Megamma => {
            let w = omegas3(&ctx.list("omega", &[3])?.ok_or_else(|| missing("omega"))?)?;
            Ok((modified_gamma(ctx.require("u")?, &w, pol)?, regime_flags(&w)))
        }
        Function::Dsine => {
            let v = ctx.list("omega", &[2])?.ok_or_else(|| missing("omega"))?;
            let pair = SinePair::new(v[0], v[1])?;
            let flag = match pair.regime() {
                SineRegime::ProductRegime => "product_regime",
                SineRegime::RealRatio => "real_ratio",
            };
            Ok((double_sine(ctx.require("u")?, &pair, pol)?, vec![flag]))
        }
        Function::B22 => {
            let v = ctx.list("omega", &[2, 3])?.ok_or_else(|| missing("omega"))?;
            let u = ctx.require("u")?;
            if v.len() == 3 {
                Ok((b22(u, &omegas3(&v)?), vec![]))
            } else {
                Ok((b22_pair(u, v[0], v[1]), vec![]))
            }
        }
        Function::Pcubic => {
            let w = omegas3(&ctx.list("omega", &[3])?.ok_or_else(|| missing("omega"))?)?;
            Ok((p_cubic(ctx.require("u")?, &w), vec![]))
        }
        Function::Kappa => {
            let w = omegas3(&ctx.list("omega", &[3])?.ok_or_else(|| missing("omega"))?)?;
            Ok((kappa_constant(&w, pol)?, regime_flags(&w)))
        }
    }
}

fn missing(key: &str) -> Error {
    Error::Domain(format!("missing required parameter --{key}"))
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn arr<const K: usize>(v: Vec<Complex64>) -> [Complex64; K] {
    v.try_into().expect("length checked by Ctx::list")
}

/// Parameters of `id` from the bindings, with documented defaults.
fn identity_params(id: IdentityId, ctx: &Ctx) -> Result<IdentityParams> {
    let n = ctx.n()?;
    let sqrt2 = 2f64.sqrt();
    let unit = || vec![real(1.0), real(sqrt2), Complex64::new(0.0, 1.0)];
    let strict_pair = || vec![Complex64::new(1.0, 0.3), real(1.0)];
    let t_default = || vec![real(0.8), real(0.75), Complex64::new(0.7, 0.1), real(0.65), real(0.78)];
    Ok(match id {
        IdentityId::EllipticBeta => {
            let t = ctx.list("t", &[5])?.unwrap_or_else(t_default);
            let q = ctx.complex("q")?.unwrap_or(real(0.3));
            let p = ctx.complex("p")?.unwrap_or(real(0.2));
            IdentityParams::EllipticBeta(EllipticBetaParams { t: arr(t), q: base(q)?, p: base(p)? })
        }
        IdentityId::UnitCircleBeta => {
            let g = ctx.list("g", &[5])?.unwrap_or_else(|| vec![real(0.3); 5]);
            let w = omegas3(&ctx.list("omega", &[3])?.unwrap_or_else(unit))?;
            IdentityParams::UnitCircleBeta(UnitCircleBetaParams { g: arr(g), omegas: w })
        }
        IdentityId::MultipleElliptic => {
            let t = ctx.complex("coupling")?.unwrap_or(real(0.6));
            let tn = ctx.list("t", &[5])?.unwrap_or_else(t_default);
            let q = ctx.complex("q")?.unwrap_or(real(0.3));
            let p = ctx.complex("p")?.unwrap_or(real(0.2));
            IdentityParams::MultipleElliptic(MultiEllipticParams { t, t_n: arr(tn), q: base(q)?, p: base(p)?, n })
        }
        IdentityId::MultipleModified => {
            let g = ctx.complex("coupling")?.unwrap_or(Complex64::new(0.1, -0.2));
            let gn = ctx.list("g", &[5])?.unwrap_or_else(|| vec![real(0.25); 5]);
            let w = omegas3(&ctx.list("omega", &[3])?.unwrap_or_else(unit))?;
            IdentityParams::MultipleModified(MultiModifiedParams { g, g_n: arr(gn), omegas: w, n })
        }
        IdentityId::HyperbolicNr | IdentityId::HyperbolicAw => {
            let (kind, count, dflt) = if id == IdentityId::HyperbolicNr {
                (HyperbolicKind::NassrallahRahman, 5, if n > 1 { 0.25 } else { 0.35 })
            } else {
                (HyperbolicKind::AskeyWilson, 4, if n > 1 { 0.2 } else { 0.4 })
            };
            let g = ctx.complex("coupling")?.unwrap_or(real(if n > 1 { 0.2 } else { 0.0 }));
            let gn = ctx.list("g", &[count])?.unwrap_or_else(|| vec![real(dflt); count]);
            let w = ctx.list("omega", &[2])?.unwrap_or_else(strict_pair);
            let pair = SinePair::new(w[0], w[1])?;
            IdentityParams::Hyperbolic(HyperbolicParams { kind, g, g_n: gn, pair, n })
        }
    })
}

fn join(v: &[Complex64]) -> String {
    v.iter().map(|z| format_complex(*z)).collect::<Vec<_>>().join(",")
}

/// Bindings that reproduce `p` through [`identity_params`].
fn params_to_bindings(p: &IdentityParams) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        m.insert(k.to_string(), v);
    };
    match p {
        IdentityParams::EllipticBeta(x) => {
            put("t", join(&x.t));
            put("q", format_complex(x.q.value()));
            put("p", format_complex(x.p.value()));
        }
        IdentityParams::UnitCircleBeta(x) => {
            put("g", join(&x.g));
            put("omega", join(&x.omegas.omegas()));
        }
        IdentityParams::MultipleElliptic(x) => {
            put("coupling", format_complex(x.t));
            put("t", join(&x.t_n));
            put("q", format_complex(x.q.value()));
            put("p", format_complex(x.p.value()));
            put("n", x.n.to_string());
        }
        IdentityParams::MultipleModified(x) => {
            put("coupling", format_complex(x.g));
            put("g", join(&x.g_n));
            put("omega", join(&x.omegas.omegas()));
            put("n", x.n.to_string());
        }
        IdentityParams::Hyperbolic(x) => {
            put("coupling", format_complex(x.g));
            put("g", join(&x.g_n));
            put("omega", join(&[x.pair.omega1(), x.pair.omega2()]));
            put("n", x.n.to_string());
        }
    }
    m
}

fn parse_identity(s: &str) -> Result<IdentityId> {
    IdentityId::parse(s).ok_or_else(|| {
        let names = IdentityId::ALL.iter().map(|i| i.name()).collect::<Vec<_>>().join(", ");
        Error::Domain(format!("unknown identity '{s}' (expected one of: {names})"))
    })
}

fn load_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Domain(format!("invalid config {}: {e}", path.display())))
}

fn emit<T: Serialize>(doc: &T, text: &str, ctx: &Ctx, out: &mut dyn Write) -> Result<()> {
    let json = serde_json::to_string_pretty(doc).expect("report serializes");
    if let Some(path) = &ctx.out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    let shown = if ctx.json { json.as_str() } else { text };
    let _ = writeln!(out, "{shown}");
    Ok(())
}

fn report_text(r: &VerificationReport) -> String {
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    let mut s = format!("{verdict} {} N={}", r.identity_id.name(), r.n);
    if let Some(reg) = r.regime {
        s.push_str(&format!(" [{reg}]"));
    }
    match (r.rel_error, &r.diagnostic) {
        (Some(e), _) => s.push_str(&format!(
            " rel_error={e:.3e} tol={:.0e} evals={} time={:.2}s",
            r.tolerance, r.evaluations, r.wall_time_s
        )),
        (None, Some(d)) => s.push_str(&format!(" {}: {}", d.kind, d.message)),
        _ => {}
    }
    if let (Some(l), Some(rh)) = (r.lhs, r.rhs) {
        s.push_str(&format!("\n  lhs = {}\n  rhs = {}", format_complex(l.into()), format_complex(rh.into())));
    }
    s
}

fn suite_text(s: &SuiteSummary) -> String {
    let mut lines = Vec::new();
    for c in &s.cases {
        let worst = c.worst.map_or("n/a".to_string(), |w| format!("{w:.3e}"));
        let rel = match c.expect {
            crate::suite::Expect::Below => "<=",
            crate::suite::Expect::Above => ">",
        };
        lines.push(format!(
            "{} {:<44} worst={worst} {rel} {:.0e} ({}/{} draws ok, {:.2}s)",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.threshold,
            c.draws - c.failures,
            c.draws,
            c.wall_time_s
        ));
    }
    lines.push(format!(
        "suite {}: {} passed, {} failed, {:.1}s",
        s.suite.name(),
        s.cases_passed,
        s.cases_failed,
        s.wall_time_s
    ));
    lines.join("\n")
}

fn execute(cmd: Command, ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval { function, .. } => {
            // a pole or zero at the requested point is an argument error here
            let (mut v, mut flags) = eval_function(function, ctx).map_err(|e| match e {
                Error::Pole(_) | Error::Zero(_) => Error::Domain(e.to_string()),
                other => other,
            })?;
            // print 0 rather than -0
            v += Complex64::new(0.0, 0.0);
            if ctx.policy.is_at_zero(v) {
                flags.push("at_zero");
            }
            let name = function.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default();
            let doc = EvalOutput { schema: "1", function, re: v.re, im: v.im, flags, config: ctx.echo("eval", &name) };
            let text = serde_json::to_string(&serde_json::json!({"re": v.re, "im": v.im, "flags": doc.flags}))
                .expect("serializable");
            emit(&doc, &text, ctx, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { identity, random, regime, .. } => {
            let id = parse_identity(&identity)?;
            let params = if random {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed.unwrap_or(0));
                sample_identity(&mut rng, id, ctx.n()?, regime.into())?
            } else {
                identity_params(id, ctx)?
            };
            let report = verify(&params, &ctx.policy);
            let code = if report.passed {
                EXIT_OK
            } else if report.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_FAIL
            };
            let mut echo = ctx.echo("verify", id.name());
            if random {
                echo.params = params_to_bindings(&params);
            }
            let text = report_text(&report);
            emit(&VerifyOutput { report, config: echo }, &text, ctx, out)?;
            Ok(code)
        }
        Command::Suite { name } => {
            let suite = SuiteName::parse(&name).ok_or_else(|| {
                Error::Domain(format!("unknown suite '{name}' (expected functions, identities-1d, identities-2d, rho or all)"))
            })?;
            let summary = run_suite(suite, ctx.seed.unwrap_or(0), &ctx.policy);
            let code = if summary.passed { EXIT_OK } else { EXIT_FAIL };
            let text = suite_text(&summary);
            emit(&SuiteOutput { summary, config: ctx.echo("suite", suite.name()) }, &text, ctx, out)?;
            Ok(code)
        }
        Command::Sample { identity, n, count, regime } => {
            let id = parse_identity(&identity)?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed.unwrap_or(0));
            let draws = (0..count)
                .map(|_| sample_identity(&mut rng, id, n, regime.into()).map(|p| params_to_bindings(&p)))
                .collect::<Result<Vec<_>>>()?;
            let text = draws
                .iter()
                .map(|d| d.iter().map(|(k, v)| format!("--{k} {v}")).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            emit(&SampleOutput { schema: "1", identity: id, n, draws, config: ctx.echo("sample", id.name()) }, &text, ctx, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn build_ctx(cli: &mut Cli) -> Result<Ctx> {
    let file = match &cli.config {
        Some(p) => load_config(p)?,
        None => FileConfig::default(),
    };
    let mut policy = file.policy.unwrap_or_default();
    if let Some(tol) = cli.policy_tol {
        policy.quad_rel_tol = tol;
    }
    policy.validate()?;
    let mut params = file.params;
    let bind = match &mut cli.command {
        Command::Eval { bind, .. } | Command::Verify { bind, .. } => std::mem::take(bind),
        _ => Bindings::default(),
    };
    params.extend(bind.into_map());
    Ok(Ctx {
        policy,
        seed: cli.seed.or(file.seed),
        out: cli.out.clone().or(file.out),
        json: cli.json || file.json.unwrap_or(false),
        params,
    })
}

/// Entry point used by the binary. Writes results to `out` and diagnostics
/// to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    let result = match build_ctx(&mut cli) {
        Ok(ctx) => execute(cli.command, &ctx, out),
        Err(e) => Err(e),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            if json {
                let doc = ErrorOutput { schema: "1", error: e.to_string(), kind: e.kind() };
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_FAIL
            }
        }
    }
}
