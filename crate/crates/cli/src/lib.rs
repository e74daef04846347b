//! Command-line interface: series expansion, identity verification, curve
//! arithmetic and congruence subgroup data.

use std::io::Write;

use bianchi::congruence::{self, CongruenceError, SubgroupSpec};
use bianchi::curve::{self, CurveError, P4Point, PointJson};
use bianchi::identities::{self, IdentityError, TauRegion, VerifyConfig};
use bianchi::modular::{self, NamedFunction};
use bianchi::theta;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::{json, Value};

pub const ORDER_ENV: &str = "BIANCHI_SERIES_ORDER";

#[derive(Parser, Debug)]
#[command(
    name = "bianchi",
    version,
    about = "Exact and numeric checks for the Bianchi elliptic quintic and level-10 modular functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the q-expansion of a named function.
    Expand(ExpandArgs),
    /// Run identity checks and print a JSON report.
    Verify(VerifyArgs),
    /// Arithmetic on numeric points of the quintic.
    Point(PointArgs),
    /// Index, genus and cusp data of a congruence subgroup.
    Group(GroupArgs),
    /// List series names, identity names or group names.
    List(ListArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// Series name (see `list series`).
    pub name: String,
    /// Exponents below this bound are printed; an integer or a fraction like 51/5.
    #[arg(long, env = ORDER_ENV, default_value = "10", value_parser = parse_order)]
    pub order: Rational64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity names (see `list identities`).
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    pub names: Vec<String>,
    /// Run every registered identity.
    #[arg(long)]
    pub all: bool,
    /// Order through which exact identities are compared.
    #[arg(long, env = ORDER_ENV, default_value = "30", value_parser = parse_order)]
    pub order: Rational64,
    /// Pass threshold for numeric residuals.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Sample points per numeric identity.
    #[arg(long, default_value_t = 20)]
    pub samples: u32,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Include wall time in the report (makes reruns differ).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PointOp {
    Add,
    Double,
    Neg,
    OnCurve,
    TwoTorsion,
    FiveTorsion,
    /// The theta vector at `--z`; needs `--tau`.
    Theta,
}

#[derive(Args, Debug)]
pub struct PointArgs {
    #[arg(value_enum)]
    pub op: PointOp,
    /// Modulus tau in the upper half-plane, e.g. 1.1i or 0.3+1.4i; phi is computed from it.
    #[arg(long, conflicts_with = "phi", allow_hyphen_values = true, value_parser = parse_complex)]
    pub tau: Option<Complex64>,
    /// The parameter phi directly.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub phi: Option<Complex64>,
    /// First point as JSON `[[re, im], ...]` (five pairs).
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Second point for `add`.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Argument of the theta vector.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub z: Option<Complex64>,
    /// Threshold for `on-curve`.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// Group name: SL2(Z), Gamma(N), Gamma1(N), Gamma0(N), G1..G4, or intersections joined by `&`.
    #[arg(required_unless_present = "dot")]
    pub spec: Option<String>,
    /// Modulus used for the image; defaults to the level of the group.
    #[arg(long)]
    pub modulus: Option<u32>,
    /// Also report index, normality and quotient inside this group.
    #[arg(long)]
    pub inside: Option<String>,
    /// Print the lattice of groups between Gamma(10) and SL2(Z) in DOT format.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ListWhat {
    Series,
    Identities,
    Groups,
}

#[derive(Args, Debug)]
pub struct ListArgs {
    #[arg(value_enum)]
    pub what: Option<ListWhat>,
}

/// `Usage` maps to exit code 2, `Failure` to 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::ZeroVector | CurveError::NonFinite | CurveError::DivisionByZero | CurveError::Arity { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<CongruenceError> for CliError {
    fn from(e: CongruenceError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Usage(e.to_string())
    }
}

// a closed stdout (e.g. piped into `head`) ends the command without a message
fn io(e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        CliError::Failure(String::new())
    } else {
        CliError::Failure(e.to_string())
    }
}

/// `30`, `-1` or `51/5`.
pub fn parse_order(s: &str) -> Result<Rational64, String> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("invalid order `{s}`: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d <= 0 {
                return Err(format!("invalid order `{s}`: denominator must be positive"));
            }
            Ok(Rational64::new(parse(n)?, d))
        }
        None => Ok(Rational64::from_integer(parse(s)?)),
    }
}

/// `a+bi` with `.` as decimal separator: `1.1i`, `0.3+1.4i`, `-0.2-1e-3i`, `2`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let z: Complex64 = t.parse().map_err(|_| format!("invalid complex number `{s}`; expected a+bi"))?;
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("invalid complex number `{s}`: not finite"))
    }
}

pub fn parse_point(s: &str) -> Result<P4Point<Complex64>, CliError> {
    let raw: PointJson = serde_json::from_str(s).map_err(|e| CliError::Usage(format!("malformed point: {e}")))?;
    Ok(P4Point::try_from(raw)?)
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn point_value(p: &P4Point<Complex64>, phi: Complex64) -> Result<Value, CliError> {
    let p = p.normalized();
    Ok(json!({
        "coords": serde_json::to_value(PointJson::from(&p)).expect("finite point"),
        "quadric_residual": curve::relative_quadric_residual(&p, &phi)?,
    }))
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json value")).map_err(io)
}

/// Executes a parsed command and returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Expand(a) => expand(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Point(a) => point(a, out),
        Command::Group(a) => group(a, out),
        Command::List(a) => list(a, out),
    }
}

fn expand(a: ExpandArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let s = modular::named_series(&a.name, a.order).map_err(|e| CliError::Usage(e.to_string()))?;
    match a.format {
        Format::Json => write_json(out, &serde_json::to_value(&s).expect("series json"))?,
        Format::Text => {
            for (e, c) in s.terms() {
                writeln!(out, "{e}  {c}").map_err(io)?;
            }
            writeln!(out, "O(q^{})", s.order()).map_err(io)?;
        }
    }
    Ok(0)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let cfg = VerifyConfig {
        series_order: a.order,
        tol: a.tol,
        samples: a.samples,
        seed: a.seed,
        tau_region: TauRegion::default(),
    };
    let report = if a.all {
        identities::run_all(&cfg)?
    } else {
        let names: Vec<&str> = a.names.iter().map(String::as_str).collect();
        identities::run_selected(&names, &cfg)?
    };
    write_json(out, &report.to_json(a.timing))?;
    eprintln!("{} passed, {} failed", report.passed, report.failed);
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn phi_of(a: &PointArgs) -> Result<Complex64, CliError> {
    match (a.tau, a.phi) {
        (Some(tau), _) => theta::phi_numeric(tau).map_err(|e| CliError::Usage(e.to_string())),
        (None, Some(phi)) => Ok(phi),
        (None, None) => Err(CliError::Usage("one of --tau or --phi is required".into())),
    }
}

fn required_point(s: &Option<String>, flag: &str) -> Result<P4Point<Complex64>, CliError> {
    parse_point(s.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required")))?)
}

fn point(a: PointArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let phi = phi_of(&a)?;
    let mut v = json!({ "phi": pair(phi) });
    match a.op {
        PointOp::Add => {
            let p = required_point(&a.p, "p")?;
            let q = required_point(&a.q, "q")?;
            v["result"] = point_value(&curve::add(&p, &q)?, phi)?;
        }
        PointOp::Double => v["result"] = point_value(&curve::double(&required_point(&a.p, "p")?)?, phi)?,
        PointOp::Neg => v["result"] = point_value(&curve::negate(&required_point(&a.p, "p")?), phi)?,
        PointOp::OnCurve => {
            let p = required_point(&a.p, "p")?;
            let r = curve::relative_quadric_residual(&p, &phi)?;
            v["quadric_residual"] = json!(r);
            v["on_curve"] = json!(r < a.tol);
        }
        PointOp::TwoTorsion => {
            let pts = curve::two_torsion_points(phi)?;
            v["points"] = pts.iter().map(|p| point_value(p, phi)).collect::<Result<Vec<_>, _>>()?.into();
        }
        PointOp::FiveTorsion => {
            let pts = curve::five_torsion_points(phi);
            v["points"] = pts.iter().map(|p| point_value(p, phi)).collect::<Result<Vec<_>, _>>()?.into();
        }
        PointOp::Theta => {
            let tau = a.tau.ok_or_else(|| CliError::Usage("theta needs --tau".into()))?;
            let z = a.z.ok_or_else(|| CliError::Usage("theta needs --z".into()))?;
            let x = theta::theta_vector(z, tau).map_err(|e| CliError::Failure(e.to_string()))?;
            v["result"] = point_value(&P4Point::new(x)?, phi)?;
        }
    }
    write_json(out, &v)?;
    Ok(0)
}

fn group(a: GroupArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if a.dot {
        write!(out, "{}", congruence::lattice()?.to_dot()).map_err(io)?;
        return Ok(0);
    }
    let spec: SubgroupSpec = a.spec.as_deref().expect("required by clap").parse()?;
    let n = a.modulus.unwrap_or(spec.level());
    let image = congruence::image_of(&spec, n)?;
    let genus = congruence::genus_data(&spec, n)?;
    let mut v = json!({
        "name": spec.name(),
        "level": spec.level(),
        "modulus": n,
        "order": image.order(),
        "contains_minus_identity": image.contains_minus_identity(),
        "genus_data": genus,
    });
    // comparisons with the lattice groups happen mod a multiple of 10
    let m = n * 10 / gcd(n, 10);
    if m <= congruence::MAX_MODULUS {
        let mut inside = Vec::new();
        for (outer, _) in congruence::lattice_nodes() {
            if outer.name() == spec.name() {
                continue;
            }
            if let Ok(r) = congruence::subgroup_report(&spec, &outer, m) {
                inside.push(r);
            }
        }
        v["subgroup_of"] = serde_json::to_value(inside).expect("reports serialize");
    }
    if let Some(outer) = &a.inside {
        let outer: SubgroupSpec = outer.parse()?;
        let m = lcm(n, outer.level());
        v["report"] = serde_json::to_value(congruence::subgroup_report(&spec, &outer, m)?).expect("report");
    }
    write_json(out, &v)?;
    Ok(0)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

fn list(a: ListArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let all = a.what.is_none();
    let mut w = |s: String| writeln!(out, "{s}").map_err(io);
    if all || a.what == Some(ListWhat::Series) {
        for f in NamedFunction::ALL {
            w(format!("{:<14}{}", f.name(), f.description()))?;
        }
    }
    if all || a.what == Some(ListWhat::Identities) {
        for c in identities::registry() {
            let kind = serde_json::to_value(c.kind).expect("kind");
            w(format!("{:<34}{:<14}{}", c.name, kind.as_str().unwrap_or_default(), c.description))?;
        }
    }
    if all || a.what == Some(ListWhat::Groups) {
        for (g, gens) in congruence::lattice_nodes() {
            w(format!("{:<14}C({gens})", g.name()))?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.1i").unwrap(), Complex64::new(0.0, 1.1));
        assert_eq!(parse_complex("0.3+1.4i").unwrap(), Complex64::new(0.3, 1.4));
        assert_eq!(parse_complex("-0.2-1e-3i").unwrap(), Complex64::new(-0.2, -1e-3));
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert!(parse_complex("1,5i").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("51/5").unwrap(), Rational64::new(51, 5));
        assert_eq!(parse_order("-1").unwrap(), Rational64::from_integer(-1));
        assert!(parse_order("1/0").is_err());
        assert!(parse_order("x").is_err());
    }

    #[test]
    fn malformed_point() {
        assert!(matches!(parse_point("[[1,0]]"), Err(CliError::Usage(_))));
        assert!(matches!(parse_point("[[0,0],[0,0],[0,0],[0,0],[0,0]]"), Err(CliError::Usage(_))));
    }
}
