//! Command-line front end: fixtures or fan JSON in, tables or JSON reports
//! out.
//!
//! Exit codes: `0` success, `1` a checked property failed, `2` bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use mfgenus::builders::fixture;
use mfgenus::cyclotomic::Angle;
use mfgenus::genera::{
    character_table, classify_extremal, crosscheck_character_vs_fixedpoint, elliptic_genus_v,
    orbifold_character_table, orbifold_elliptic_genus_v, rigidity_check, translation_check, Classification,
    GenusSeries,
};
use mfgenus::lattice::LatticeVector;
use mfgenus::multifan::{MultiFan, MultiPolytope};
use mfgenus::report::{constant_table, GenusReport, SeriesReport, Verdict};
use mfgenus::Error;

#[derive(Parser, Debug)]
#[command(name = "mfgenus", version, about = "Genera of simplicial multi-fans")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    /// `k/N`; defaults to `1/N` with `--level N`.
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub level: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub qorder: usize,
    /// Comma-separated generic vector in `L_V`.
    #[arg(long, allow_hyphen_values = true)]
    pub vector: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the fan data and report structural flags.
    Validate { fan: String },
    /// T_y genus, h- and e-vectors, degree and divisibility of c_1.
    Invariants { fan: String },
    /// Elliptic genus along a generic vector.
    Elliptic {
        fan: String,
        #[command(flatten)]
        series: SeriesArgs,
        /// Report the series without the `zeta^{n/2}` factor.
        #[arg(long)]
        raw: bool,
    },
    /// Orbifold elliptic genus along a generic vector.
    Orbifold {
        fan: String,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        raw: bool,
    },
    /// Coefficients of `t^-u` for `u` in a box.
    Character {
        fan: String,
        #[arg(long, default_value_t = 2)]
        window: i64,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        orbifold: bool,
    },
    /// Compare the character table on a box with the genus along a vector.
    Crosscheck {
        fan: String,
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        orbifold: bool,
    },
    /// Rigidity of the genus of level `N`.
    Rigidity {
        fan: String,
        #[command(flatten)]
        series: SeriesArgs,
        /// Skip the condition (P) and divisibility checks.
        #[arg(long)]
        force: bool,
    },
    /// Lattice points of a multi-polytope against the fixed-point sum.
    Dh {
        fan: String,
        /// Comma-separated integer coefficient per ray.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// 1-based ray indices of the face to project along.
        #[arg(long)]
        key: Option<String>,
    },
    /// Recognize projective spaces and projective bundles.
    Classify { fan: String },
    /// Write a fixture as fan JSON.
    Build {
        name: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Outcome {
        Outcome { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() }
    }

    fn input_error(msg: String) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: msg }
    }
}

#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(format!("{e} [{e:?}]"))
    }
}

type CmdResult = Result<(String, bool), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::input_error(text)
            };
        }
    };
    match execute(&cli) {
        Ok((out, passed)) => Outcome::ok(out, passed),
        Err(Failure(msg)) => Outcome::input_error(format!("error: {msg}\n")),
    }
}

fn execute(cli: &Cli) -> CmdResult {
    let json = cli.json;
    match &cli.command {
        Command::Validate { fan } => validate(&load(fan)?, json),
        Command::Invariants { fan } => invariants(&load(fan)?, json),
        Command::Elliptic { fan, series, raw } => genus(&load(fan)?, series, *raw, false, json),
        Command::Orbifold { fan, series, raw } => genus(&load(fan)?, series, *raw, true, json),
        Command::Character { fan, window, series, orbifold } => character(&load(fan)?, *window, series, *orbifold, json),
        Command::Crosscheck { fan, window, series, orbifold } => crosscheck(&load(fan)?, *window, series, *orbifold, json),
        Command::Rigidity { fan, series, force } => rigidity(&load(fan)?, series, *force, json),
        Command::Dh { fan, class, window, key } => dh(&load(fan)?, class, *window, key.as_deref(), json),
        Command::Classify { fan } => classify(&load(fan)?, json),
        Command::Build { name, output } => build(name, output),
    }
}

/// A path to fan JSON, or a fixture name.
fn load(arg: &str) -> Result<MultiFan, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{arg}: {e}")))?;
        let fan = MultiFan::from_json(&text).map_err(|e| Failure(format!("{arg}: {e} [{e:?}]")))?;
        return Ok(if fan.name().is_none() { fan.with_name(arg) } else { fan });
    }
    fixture(arg).map_err(|e| Failure(format!("{arg}: {e} [{e:?}]")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Failure(format!("bad {what}: {s:?}"))))
        .collect()
}

fn parse_sigma(a: &SeriesArgs) -> Result<Angle, Failure> {
    if let Some(s) = &a.sigma {
        let (k, n) = s.split_once('/').ok_or_else(|| Failure(format!("sigma must be k/N, got {s:?}")))?;
        let k: i64 = k.trim().parse().map_err(|_| Failure(format!("bad sigma numerator in {s:?}")))?;
        let n: i64 = n.trim().parse().map_err(|_| Failure(format!("bad sigma denominator in {s:?}")))?;
        if n == 0 {
            return Err(Failure("sigma denominator is zero".into()));
        }
        let sigma = Angle::new(k, n);
        if let Some(level) = a.level {
            if (level as i64) % sigma.den() != 0 {
                return Err(Failure(format!("sigma {s} is not of level {level}")));
            }
        }
        return Ok(sigma);
    }
    match a.level {
        Some(0) => Err(Failure("level must be positive".into())),
        Some(n) => Ok(Angle::new(1, n as i64)),
        None => Err(Failure("give --sigma k/N or --level N".into())),
    }
}

fn vector_for(fan: &MultiFan, a: &SeriesArgs) -> Result<LatticeVector, Failure> {
    match &a.vector {
        Some(s) => Ok(LatticeVector::from_i64(&parse_list(s, "vector")?)),
        None => Ok(fan.generic_vector()?),
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn header(r: &GenusReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "fan: {}", r.name.as_deref().unwrap_or("(unnamed)"));
    let _ = writeln!(s, "hash: {}", r.fan_hash);
    let _ = writeln!(s, "rank {}, {} rays, {} top simplices", r.rank, r.rays, r.top_simplices);
    s
}

fn validate(fan: &MultiFan, json: bool) -> CmdResult {
    let r = GenusReport::for_fan(fan);
    let d = fan.diagnostics();
    if json {
        return Ok((r.to_json(), r.complete));
    }
    let mut s = header(&r);
    let _ = writeln!(s, "complete: {}", flag(r.complete));
    let _ = writeln!(s, "nonsingular: {}", flag(r.nonsingular));
    let _ = writeln!(s, "condition P: {}", flag(r.condition_p));
    let _ = writeln!(s, "primitive rays: {}", flag(d.all_primitive));
    let _ = writeln!(s, "group orders: {:?}", d.group_orders);
    Ok((s, r.complete))
}

fn invariants(fan: &MultiFan, json: bool) -> CmdResult {
    let r = GenusReport::for_fan(fan);
    if json {
        return Ok((r.to_json(), true));
    }
    let mut s = header(&r);
    let _ = writeln!(s, "complete: {}, nonsingular: {}, condition P: {}", flag(r.complete), flag(r.nonsingular), flag(r.condition_p));
    if let Some(d) = r.degree {
        let _ = writeln!(s, "degree: {d}");
    }
    if let (Some(h), Some(e)) = (&r.h_vector, &r.e_vector) {
        let _ = writeln!(s, "h-vector: {h:?}");
        let _ = writeln!(s, "e-vector: {e:?}");
    }
    if let Some(t) = &r.ty_display {
        let _ = writeln!(s, "T_y = {t}");
    }
    match (r.c1.n_max, &r.c1.witness) {
        (Some(n), Some(w)) => {
            let _ = writeln!(s, "N_max = {n}, witness {w:?}");
        }
        _ => {
            let _ = writeln!(s, "c_1 is divisible by every N");
        }
    }
    Ok((s, true))
}

fn render_series(s: &mut String, rep: &SeriesReport, g: &GenusSeries) {
    let _ = writeln!(
        s,
        "sigma = {}/{}, v = {:?}, q^{}, granularity {}, conductor {}{}",
        rep.sigma.num(),
        rep.sigma.den(),
        rep.vector,
        rep.qorder,
        rep.granularity,
        rep.conductor,
        if rep.normalized { "" } else { ", unnormalized" }
    );
    for k in 0..=g.qorder {
        let c = g.coeff(k);
        let _ = writeln!(s, "  q^{k}: {}", if c.is_zero() { "0".to_string() } else { c.to_string() });
    }
}

fn genus(fan: &MultiFan, a: &SeriesArgs, raw: bool, orbifold: bool, json: bool) -> CmdResult {
    let sigma = parse_sigma(a)?;
    let v = vector_for(fan, a)?;
    let mut g =
        if orbifold { orbifold_elliptic_genus_v(fan, &v, sigma, a.qorder)? } else { elliptic_genus_v(fan, &v, sigma, a.qorder)? };
    if raw {
        g = g.unnormalized();
    }
    let mut r = GenusReport::for_fan(fan);
    r.push_series(&g);
    if json {
        return Ok((r.to_json(), true));
    }
    let mut s = header(&r);
    render_series(&mut s, &r.series[0], &g);
    Ok((s, true))
}

fn character(fan: &MultiFan, window: i64, a: &SeriesArgs, orbifold: bool, json: bool) -> CmdResult {
    if window < 0 {
        return Err(Failure("window must be nonnegative".into()));
    }
    let sigma = parse_sigma(a)?;
    let t = if orbifold {
        orbifold_character_table(fan, sigma, a.qorder, window)?
    } else {
        character_table(fan, sigma, a.qorder, window)?
    };
    let nonzero: Vec<_> = t.entries.iter().filter(|(_, s)| !s.is_zero()).collect();
    if json {
        let entries: Vec<_> = nonzero.iter().map(|(u, s)| json!({ "u": u, "coefficients": constant_table(s) })).collect();
        let out = json!({
            "fan_hash": mfgenus::report::fan_hash(fan),
            "sigma": sigma,
            "qorder": a.qorder,
            "window": window,
            "orbifold": orbifold,
            "entries": entries,
        });
        return Ok((serde_json::to_string_pretty(&out).expect("json"), true));
    }
    let mut s = header(&GenusReport::for_fan(fan));
    let _ = writeln!(s, "{} nonzero entries in [-{window}, {window}]^{}", nonzero.len(), fan.rank());
    for (u, series) in nonzero {
        let body = series.to_string().replace('\n', "\n      ");
        let _ = writeln!(s, "  u = {u:?}:\n      {body}");
    }
    Ok((s, true))
}

fn crosscheck(fan: &MultiFan, window: i64, a: &SeriesArgs, orbifold: bool, json: bool) -> CmdResult {
    let sigma = parse_sigma(a)?;
    let v = a.vector.as_deref().map(|s| parse_list(s, "vector").map(|c| LatticeVector::from_i64(&c))).transpose()?;
    let c = crosscheck_character_vs_fixedpoint(fan, v.as_ref(), sigma, a.qorder, window, orbifold)?;
    let mut r = GenusReport::for_fan(fan);
    let detail = format!("v = {:?}, {} terms compared, mismatches {:?}", c.vector.to_i64(), c.compared_terms, c.mismatches);
    r.push_verdict(Verdict::new(if orbifold { "orbifold crosscheck" } else { "crosscheck" }, c.passed, detail));
    if json {
        return Ok((r.to_json(), c.passed));
    }
    let mut s = header(&r);
    for v in &r.verdicts {
        let _ = writeln!(s, "{}: {} ({})", v.name, if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    Ok((s, c.passed))
}

fn rigidity(fan: &MultiFan, a: &SeriesArgs, force: bool, json: bool) -> CmdResult {
    let sigma = parse_sigma(a)?;
    let v = rigidity_check(fan, sigma, a.qorder, force)?;
    let mut r = GenusReport::for_fan(fan);
    r.push_verdict(Verdict::from_rigidity(&v));
    let typed = fan.c1_divisible_by(v.level);
    if typed {
        for p in &v.per_vector {
            let t = translation_check(fan, &p.vector, sigma, a.qorder)?;
            r.push_verdict(Verdict::new(
                format!("translation along {:?}", p.vector.to_i64()),
                t.holds,
                format!("h(v) = {}, compared through step {:?}", t.v_type, t.reliable_steps),
            ));
        }
    }
    r.rigidity_constant = v.constant.as_ref().map(constant_table);
    let passed = r.all_passed();
    if json {
        return Ok((r.to_json(), passed));
    }
    let mut s = header(&r);
    let _ = writeln!(s, "sigma = {}/{}, level {}, through q^{}", sigma.num(), sigma.den(), v.level, a.qorder);
    for p in &v.per_vector {
        let h = p.v_type.map_or("-".to_string(), |h| h.to_string());
        let _ = writeln!(s, "  v = {:?}: h(v) = {h}, constant: {}", p.vector.to_i64(), flag(p.is_constant));
    }
    match &v.constant {
        Some(c) if c.is_zero() => {
            let _ = writeln!(s, "rigid, constant 0");
        }
        Some(c) => {
            let _ = writeln!(s, "rigid, constant {c}");
        }
        None => {
            let _ = writeln!(s, "not rigid: {} offending terms", v.offending.len());
        }
    }
    for x in &r.verdicts[1..] {
        let _ = writeln!(s, "{}: {}", x.name, if x.passed { "holds" } else { "fails" });
    }
    Ok((s, passed))
}

fn dh(fan: &MultiFan, class: &str, window: i64, key: Option<&str>, json: bool) -> CmdResult {
    let coeffs = parse_list(class, "class")?;
    let key: Vec<usize> = match key {
        None => Vec::new(),
        Some(k) => parse_list(k, "key")?
            .into_iter()
            .map(|i| usize::try_from(i - 1).map_err(|_| Failure(format!("ray indices are 1-based, got {i}"))))
            .collect::<Result<_, _>>()?,
    };
    let p = MultiPolytope::from_class(fan, &key, &coeffs)?;
    let lhs = p.dh_character(window)?;
    let rhs = p.fixed_point_character(window)?;
    let passed = lhs == rhs;
    let mut r = GenusReport::for_fan(fan);
    r.push_verdict(Verdict::new("lattice points vs fixed-point sum", passed, format!("{} points with nonzero value", lhs.len())));
    if json {
        let points: Vec<_> = lhs.iter().map(|(u, m)| json!({ "u": u, "value": m })).collect();
        let out = json!({ "report": r, "points": points });
        return Ok((serde_json::to_string_pretty(&out).expect("json"), passed));
    }
    let mut s = header(&r);
    for (u, m) in &lhs {
        let _ = writeln!(s, "  {u:?}: {m}");
    }
    let _ = writeln!(s, "{}", if passed { "agrees with the fixed-point sum" } else { "DIFFERS from the fixed-point sum" });
    Ok((s, passed))
}

fn classify(fan: &MultiFan, json: bool) -> CmdResult {
    let c = classify_extremal(fan)?;
    let text = match &c {
        Classification::ProjectiveSpace(n) => format!("projective space P{n}"),
        Classification::Bundle(d) => format!(
            "projective bundle {:?}, twists {:?}, base rays {:?}, fiber rays {:?}",
            d.kind,
            d.twists,
            d.base.iter().map(|i| i + 1).collect::<Vec<_>>(),
            d.fiber.iter().map(|i| i + 1).collect::<Vec<_>>()
        ),
        Classification::None => "none".to_string(),
    };
    if json {
        let mut r = GenusReport::for_fan(fan);
        r.push_verdict(Verdict::new("classification", true, text));
        return Ok((r.to_json(), true));
    }
    Ok((format!("{}{text}\n", header(&GenusReport::for_fan(fan))), true))
}

fn build(name: &str, output: &Path) -> CmdResult {
    let fan = fixture(name).map_err(|e| Failure(format!("{name}: {e} [{e:?}]")))?;
    std::fs::write(output, fan.to_json()).map_err(|e| Failure(format!("{}: {e}", output.display())))?;
    Ok((format!("wrote {} to {}\n", name, output.display()), true))
}
