//! Command-line front end. Every command validates its arguments before any
//! numerical work, writes one CSV or JSON document with a header block, and
//! maps errors to exit codes: 2 for bad input, 3 for a numerical contract
//! failure, 1 for I/O.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::chaos::{
    certify_with, imaginary_axis_section, sector_bound, spectrum_axis_section, AxisSection,
    CertifyOptions, EigenAtom, ParabolicRegion, Target, CLASSIFICATION_TOLERANCE,
};
use crate::error::{invalid, Error};
use crate::semigroup::{evolve, evolve_on, orbit_trace, Orbit, SemigroupConfig};
use crate::space::{make_space, HyperbolicSpace, RadialFunction, RadialGrid};
use crate::spherical::spherical_fn;
use crate::transform::{
    bump_radius, forward_transform, SpectralGrid, INTEGRABILITY_TOLERANCE, LAMBDA_TAIL_TOLERANCE,
    TRUNCATION_TOLERANCE,
};

/// Default output directory when `--out` is absent.
pub const OUT_DIR_ENV: &str = "HYPERCHAOS_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hyperchaos",
    version,
    about = "Spherical analysis on H^n and chaos diagnostics for shifted heat semigroups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the spherical function φ_λ on [0, rmax].
    Sph(SphArgs),
    /// Forward spherical transform of a profile on real λ.
    Transform(TransformArgs),
    /// Boundary of P_p - c and its imaginary-axis section.
    Region(RegionArgs),
    /// Evolve a profile or an atom combination under e^{-t(Δ - c)}.
    Evolve(EvolveArgs),
    /// Chaos certificate for (n, p, c).
    Certify(CertifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; defaults to $HYPERCHAOS_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SphArgs {
    #[arg(long)]
    pub n: usize,
    /// Spectral parameter, e.g. 1, i, 1+0.2i.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, default_value = "10")]
    pub rmax: String,
    #[arg(long, default_value = "1/64")]
    pub h: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub n: usize,
    /// gaussian:<width> or shifted:<center>.
    #[arg(long, default_value = "gaussian:1")]
    pub profile: String,
    #[arg(long)]
    pub rmax: Option<String>,
    #[arg(long, default_value = "1/64")]
    pub h: String,
    /// Λ_max; chosen from the profile when absent.
    #[arg(long)]
    pub lambda_max: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
    /// Boundary is sampled as ρ² - c + (x ± i b_p)² for x in [0, xmax].
    #[arg(long, default_value = "3")]
    pub xmax: String,
    #[arg(long, default_value_t = 121)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
    /// Exponent of the reported norms.
    #[arg(long, default_value = "2")]
    pub p: String,
    /// Single time: write the snapshot T(t)f.
    #[arg(long, conflicts_with = "times")]
    pub t: Option<String>,
    /// Comma-separated increasing times: write (t, ‖T(t)f‖_p).
    #[arg(long)]
    pub times: Option<String>,
    /// gaussian:<width> or shifted:<center>.
    #[arg(long, conflicts_with = "atoms")]
    pub profile: Option<String>,
    /// JSON file {"atoms": [{"z": [re, im], "coefficient": [re, im]}, ...]}.
    #[arg(long)]
    pub atoms: Option<PathBuf>,
    #[arg(long)]
    pub rmax: Option<String>,
    #[arg(long, default_value = "1/64")]
    pub h: String,
    #[arg(long)]
    pub lambda_max: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    #[arg(long)]
    pub seed: u64,
    /// Relative fit-residual threshold.
    #[arg(long, default_value = "5e-2")]
    pub threshold: String,
    /// Comma-separated targets, e.g. gaussian:1,gaussian:1.5,shifted:1.5.
    #[arg(long)]
    pub targets: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Reads a real number. Accepts decimals, fractions a/b and multiples of
/// pi such as pi, 8pi, 0.5pi, pi/2, 3pi/4.
pub fn parse_real(token: &str) -> Result<f64, Error> {
    let s = token.trim().to_ascii_lowercase();
    let bad = || invalid(format!("cannot read a number from {token:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s.as_str(), None),
    };
    let num = if let Some(k) = num.strip_suffix("pi") {
        let k = k.trim_end_matches('*');
        let coef = match k {
            "" | "+" => 1.0,
            "-" => -1.0,
            k => k.parse::<f64>().map_err(|_| bad())?,
        };
        coef * PI
    } else {
        num.parse::<f64>().map_err(|_| bad())?
    };
    let value = match den {
        Some(d) => {
            let d = d.parse::<f64>().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            num / d
        }
        None => num,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

/// Reads a complex number: 1, -2.5, i, -i, 0.3i, 1+0.2i, 1-i.
pub fn parse_complex(token: &str) -> Result<Complex64, Error> {
    let s: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || invalid(format!("cannot read a complex number from {token:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let body = if s.to_ascii_lowercase().ends_with("pi") {
        None
    } else {
        s.strip_suffix('i')
    };
    let Some(body) = body else {
        return Ok(Complex64::new(parse_real(&s)?, 0.0));
    };
    // split at the last sign that is not an exponent sign or the leading one
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let imag = |t: &str| -> Result<f64, Error> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            t => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let (re, im) = match split {
        Some(k) => (
            body[..k].parse::<f64>().map_err(|_| bad())?,
            imag(&body[k..])?,
        ),
        None => (0.0, imag(body)?),
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

pub fn parse_times(list: &str) -> Result<Vec<f64>, Error> {
    let times = list
        .split(',')
        .map(parse_real)
        .collect::<Result<Vec<_>, _>>()?;
    if times.is_empty() {
        return Err(invalid("time list is empty"));
    }
    Ok(times)
}

pub fn parse_target(token: &str) -> Result<Target, Error> {
    let (kind, value) = token.split_once(':').ok_or_else(|| {
        invalid(format!(
            "profile {token:?} must look like gaussian:<w> or shifted:<s>"
        ))
    })?;
    let v = parse_real(value)?;
    let t = match kind.trim() {
        "gaussian" => Target::Gaussian { width: v },
        "shifted" => Target::Shifted { center: v },
        other => return Err(invalid(format!("unknown profile kind {other:?}"))),
    };
    let ok = match t {
        Target::Gaussian { width } => width > 0.0,
        Target::Shifted { center } => center >= 0.0,
    };
    if !ok {
        return Err(invalid(format!(
            "profile parameter out of range in {token:?}"
        )));
    }
    Ok(t)
}

fn positive(name: &str, token: &str) -> Result<f64, Error> {
    let v = parse_real(token)?;
    if !(v > 0.0) {
        return Err(invalid(format!("--{name} must be positive, got {token}")));
    }
    Ok(v)
}

/// Atom list read by `evolve --atoms`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomFile {
    pub atoms: Vec<AtomSpec>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AtomSpec {
    pub z: Complex64,
    pub coefficient: Complex64,
}

/// Header block shared by every output.
#[derive(Debug, Serialize)]
struct Header {
    library: &'static str,
    version: &'static str,
    command: &'static str,
    config: Value,
    tolerances: Value,
}

impl Header {
    fn new(command: &'static str, config: Value) -> Self {
        Self {
            library: "hyperchaos",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            tolerances: json!({
                "lambda_tail": LAMBDA_TAIL_TOLERANCE,
                "integrability": INTEGRABILITY_TOLERANCE,
                "truncation": TRUNCATION_TOLERANCE,
                "classification": CLASSIFICATION_TOLERANCE,
            }),
        }
    }
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
    summary: Option<Value>,
}

fn render(header: &Header, table: &Table, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut out = Vec::new();
            writeln!(out, "# library: {} {}", header.library, header.version)?;
            writeln!(out, "# command: {}", header.command)?;
            writeln!(out, "# config: {}", serde_json::to_string(&header.config)?)?;
            writeln!(
                out,
                "# tolerances: {}",
                serde_json::to_string(&header.tolerances)?
            )?;
            if let Some(s) = &table.summary {
                writeln!(out, "# summary: {}", serde_json::to_string(s)?)?;
            }
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|x| x.to_string()))?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("header".into(), serde_json::to_value(header)?);
            if let Some(s) = &table.summary {
                doc.insert("summary".into(), s.clone());
            }
            doc.insert("columns".into(), json!(table.columns));
            doc.insert("rows".into(), json!(table.rows));
            let mut out = serde_json::to_vec_pretty(&Value::Object(doc))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Where a command's document goes.
fn destination(out: &Option<PathBuf>, command: &str, format: Format) -> Option<PathBuf> {
    if let Some(p) = out {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUT_DIR_ENV)?;
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    Some(Path::new(&dir).join(format!("{command}.{ext}")))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(bytes: &[u8], dest: Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match dest {
        Some(path) => write_atomic(&path, bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn profile_function(target: Target, h: f64, rmax: Option<f64>) -> Result<RadialFunction, Error> {
    let r = rmax.unwrap_or(match target {
        Target::Gaussian { width } => bump_radius(width),
        Target::Shifted { center } => center + 8.0,
    });
    let grid = RadialGrid::uniform(h, r)?;
    Ok(target.sample(&grid))
}

fn spectral_grid(
    space: &HyperbolicSpace,
    f: &RadialFunction,
    lambda_max: Option<f64>,
) -> Result<SpectralGrid, Error> {
    match lambda_max {
        Some(l) => SpectralGrid::for_radius(l, f.grid().r_max()),
        None => SpectralGrid::adaptive(space, f),
    }
}

fn snapshot_rows(f: &RadialFunction) -> Vec<Vec<f64>> {
    f.grid()
        .points()
        .iter()
        .zip(f.values())
        .map(|(r, v)| vec![*r, v.re, v.im])
        .collect()
}

fn cmd_sph(a: &SphArgs) -> Result<(Header, Table, Format, Option<PathBuf>), CliError> {
    let space = make_space(a.n)?;
    let lambda = parse_complex(&a.lambda)?;
    let rmax = positive("rmax", &a.rmax)?;
    let h = positive("h", &a.h)?;
    let grid = RadialGrid::uniform(h, rmax)?;
    let phi = spherical_fn(&space, lambda, &grid)?;
    let header = Header::new(
        "sph",
        json!({"n": a.n, "lambda": [lambda.re, lambda.im], "rmax": rmax, "h": h}),
    );
    let table = Table {
        columns: vec!["r", "re", "im"],
        rows: snapshot_rows(&phi),
        summary: None,
    };
    Ok((
        header,
        table,
        a.output.format,
        destination(&a.output.out, "sph", a.output.format),
    ))
}

fn cmd_transform(a: &TransformArgs) -> Result<(Header, Table, Format, Option<PathBuf>), CliError> {
    let space = make_space(a.n)?;
    let target = parse_target(&a.profile)?;
    let h = positive("h", &a.h)?;
    let rmax = a.rmax.as_deref().map(|s| positive("rmax", s)).transpose()?;
    let lambda_max = a
        .lambda_max
        .as_deref()
        .map(|s| positive("lambda-max", s))
        .transpose()?;
    let f = profile_function(target, h, rmax)?;
    let grid = spectral_grid(&space, &f, lambda_max)?;
    let ft = forward_transform(&space, &f, &grid, Complex64::new(0.0, 0.0))?;
    let rows = grid
        .points()
        .iter()
        .zip(&ft.values)
        .map(|(l, v)| vec![*l, v.re, v.im])
        .collect();
    let header = Header::new(
        "transform",
        json!({"n": a.n, "profile": target, "rmax": f.grid().r_max(), "h": h,
               "lambda_max": grid.lambda_max(), "quadrature_error": ft.quadrature_error}),
    );
    let table = Table {
        columns: vec!["lambda", "re", "im"],
        rows,
        summary: None,
    };
    Ok((
        header,
        table,
        a.output.format,
        destination(&a.output.out, "transform", a.output.format),
    ))
}

fn section_entry(region: &ParabolicRegion, section: AxisSection) -> Value {
    if region.b_p <= CLASSIFICATION_TOLERANCE {
        return json!("degenerate");
    }
    match section {
        AxisSection::Empty => json!("empty"),
        AxisSection::Point => json!(0.0),
        AxisSection::Interval { half_length } => json!(half_length),
    }
}

fn cmd_region(a: &RegionArgs) -> Result<(Header, Table, Format, Option<PathBuf>), CliError> {
    let space = make_space(a.n)?;
    let p = parse_real(&a.p)?;
    let c = parse_real(&a.c)?;
    let xmax = positive("xmax", &a.xmax)?;
    if a.samples < 2 {
        return Err(invalid("--samples must be at least 2").into());
    }
    let region = ParabolicRegion::for_space(&space, p, c)?;
    let sector = sector_bound(p)?;
    let mut rows = Vec::with_capacity(2 * a.samples);
    for (branch, upper) in [(1.0, true), (-1.0, false)] {
        for k in 0..a.samples {
            let x = xmax * k as f64 / (a.samples - 1) as f64;
            let w = region.boundary_point(x, upper);
            rows.push(vec![branch, x, w.re, w.im]);
        }
    }
    let summary = json!({
        "rho": space.rho(),
        "c_p": region.apex,
        "b_p": region.b_p,
        "Y": section_entry(&region, imaginary_axis_section(&region)),
        "spectrum_Y": section_entry(&region, spectrum_axis_section(&region)),
        "sector_angle": sector.half_angle,
        "theta_bound": sector.theta_bound,
    });
    let header = Header::new(
        "region",
        json!({"n": a.n, "p": p, "c": c, "xmax": xmax, "samples": a.samples}),
    );
    let table = Table {
        columns: vec!["branch", "x", "re", "im"],
        rows,
        summary: Some(summary),
    };
    Ok((
        header,
        table,
        a.output.format,
        destination(&a.output.out, "region", a.output.format),
    ))
}

fn read_atoms(space: &HyperbolicSpace, c: f64, path: &Path) -> Result<Vec<EigenAtom>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let file: AtomFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("atoms file {}: {e}", path.display())))?;
    if file.atoms.is_empty() {
        return Err(invalid("atoms file lists no atoms").into());
    }
    Ok(file
        .atoms
        .iter()
        .map(|a| EigenAtom::new(space, c, a.z, a.coefficient))
        .collect::<Result<Vec<_>, _>>()?)
}

fn cmd_evolve(a: &EvolveArgs) -> Result<(Header, Table, Format, Option<PathBuf>), CliError> {
    let space = make_space(a.n)?;
    let c = parse_real(&a.c)?;
    let p = parse_real(&a.p)?;
    let h = positive("h", &a.h)?;
    let rmax = a.rmax.as_deref().map(|s| positive("rmax", s)).transpose()?;
    let lambda_max = a
        .lambda_max
        .as_deref()
        .map(|s| positive("lambda-max", s))
        .transpose()?;
    let cfg = SemigroupConfig::new(space, p, c, 0.0)?;
    let (times, snapshot) = match (&a.t, &a.times) {
        (Some(t), None) => (vec![parse_real(t)?], true),
        (None, Some(list)) => (parse_times(list)?, false),
        _ => return Err(invalid("give exactly one of --t or --times").into()),
    };
    if times.iter().any(|t| *t < 0.0) {
        return Err(invalid("times must be nonnegative").into());
    }
    let orbit = match (&a.profile, &a.atoms) {
        (Some(prof), None) => Orbit::Function(profile_function(parse_target(prof)?, h, rmax)?),
        (None, Some(path)) => {
            let atoms = read_atoms(&space, c, path)?;
            Orbit::Atoms {
                atoms,
                grid: RadialGrid::uniform(h, rmax.unwrap_or(40.0))?,
            }
        }
        _ => return Err(invalid("give exactly one of --profile or --atoms").into()),
    };
    let mut config = json!({"n": a.n, "c": c, "p": p, "h": h, "times": times});
    match (&orbit, &a.profile, &a.atoms) {
        (Orbit::Function(f), Some(prof), _) => {
            config["profile"] = json!(parse_target(prof)?);
            config["rmax"] = json!(f.grid().r_max());
        }
        (Orbit::Atoms { atoms, grid }, _, _) => {
            config["atoms"] = serde_json::to_value(atoms)?;
            config["rmax"] = json!(grid.r_max());
        }
        _ => {}
    }
    let table = if snapshot {
        let t = times[0];
        let out = match &orbit {
            Orbit::Function(f) => match lambda_max {
                Some(_) => evolve_on(&cfg.at_time(t)?, f, &spectral_grid(&space, f, lambda_max)?)?,
                None => evolve(&cfg.at_time(t)?, f)?,
            },
            Orbit::Atoms { atoms, grid } => {
                let scaled: Vec<EigenAtom> = atoms
                    .iter()
                    .map(|x| EigenAtom {
                        coefficient: x.coefficient * (-t * x.z).exp(),
                        ..*x
                    })
                    .collect();
                crate::chaos::combine_atoms(&space, &scaled, grid)?
            }
        };
        Table {
            columns: vec!["r", "re", "im"],
            rows: snapshot_rows(&out),
            summary: None,
        }
    } else {
        let trace = orbit_trace(&cfg, &orbit, &times)?;
        Table {
            columns: vec!["t", "norm"],
            rows: trace.into_iter().map(|(t, n)| vec![t, n]).collect(),
            summary: None,
        }
    };
    let header = Header::new("evolve", config);
    Ok((
        header,
        table,
        a.output.format,
        destination(&a.output.out, "evolve", a.output.format),
    ))
}

fn cmd_certify(a: &CertifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let space = make_space(a.n)?;
    let p = parse_real(&a.p)?;
    let c = parse_real(&a.c)?;
    let threshold = positive("threshold", &a.threshold)?;
    let targets = match &a.targets {
        Some(list) => list
            .split(',')
            .map(parse_target)
            .collect::<Result<Vec<_>, _>>()?,
        None => Target::defaults(),
    };
    let options = CertifyOptions {
        seed: a.seed,
        residual_threshold: threshold,
        ..CertifyOptions::default()
    };
    let cert = certify_with(&space, p, c, &targets, &options)?;
    let header = Header::new(
        "certify",
        json!({"n": a.n, "p": p, "c": c, "seed": a.seed, "threshold": threshold, "targets": targets}),
    );
    let doc = json!({"header": header, "certificate": cert});
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    emit(&bytes, destination(&a.out, "certify", Format::Json), stdout)
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Certify(a) => cmd_certify(a, stdout),
        other => {
            let built = match other {
                Command::Sph(a) => cmd_sph(a),
                Command::Transform(a) => cmd_transform(a),
                Command::Region(a) => cmd_region(a),
                Command::Evolve(a) => cmd_evolve(a),
                Command::Certify(_) => unreachable!("handled above"),
            };
            built.and_then(|(header, table, format, dest)| {
                let bytes = render(&header, &table, format)?;
                emit(&bytes, dest, stdout)
            })
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            }
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_IO
        }
    }
}
