//! The subcommands.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use tropcount_core::acceptance::{run as run_acceptance, AcceptanceConfig};
use tropcount_core::counting::{self, CountReport, MarkedCurve, RealData};
use tropcount_core::enumeration::{enumerate_curves, enumerate_mikhalkin, PointConfiguration};
use tropcount_core::incidence::{AffineConstraint, RealPointConfig};
use tropcount_core::lattice::{smith_normal_form, IntMatrix, SnfResult};
use tropcount_core::polyhedral::rescale_for_goodness;
use tropcount_core::tropical::{curve_welschinger_mult, Degree, Point, TropicalCurve};
use tropcount_core::welschinger::census_sum;
use tropcount_core::Error;

use crate::io::{self, parse_signs};
use crate::{CliError, Format, Source};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Parses `x,y:m;...` into a degree.
pub fn parse_delta(s: &str) -> Result<Degree, CliError> {
    let bad = || CliError::Input(format!("bad degree table {s:?}"));
    let mut d = Degree::default();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (v, m) = part.split_once(':').unwrap_or((part, "1"));
        let v: Vec<i64> = v.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        if v.iter().all(|&x| x == 0) || m == 0 {
            return Err(bad());
        }
        *d.entries.entry(v).or_insert(0) += m;
    }
    if d.entries.is_empty() {
        return Err(bad());
    }
    Ok(d)
}

/// Curves and their points, either read from a curve set or enumerated.
pub struct Loaded {
    pub degree: Option<Degree>,
    pub points: Vec<Point>,
    pub signs: Option<Vec<Vec<i8>>>,
    /// Seed of the Mikhalkin configuration actually used.
    pub seed: Option<u64>,
    pub curves: Vec<MarkedCurve>,
}

impl Loaded {
    pub fn constraints(&self) -> Vec<AffineConstraint> {
        self.points.iter().map(|p| AffineConstraint::point(p.clone())).collect()
    }
}

fn load(source: &Source) -> Result<Loaded, CliError> {
    if let Some(path) = &source.curves {
        let set = io::parse_curve_set(&read(path)?)?;
        return Ok(Loaded { degree: None, points: set.points, signs: set.signs, seed: None, curves: set.curves });
    }
    let degree = match (&source.degree, &source.delta) {
        (Some(d), None) => Degree::projective_plane(*d),
        (None, Some(t)) => parse_delta(t)?,
        _ => return Err(CliError::Input("give --degree, --delta or --curves".into())),
    };
    let mismatch = |e| match e {
        Error::InvalidCurve(m) => CliError::Mismatch(m),
        e => e.into(),
    };
    let (config, signs, seed, curves) = match &source.points {
        Some(path) => {
            let file = io::parse_points(&read(path)?)?;
            let points = file
                .points
                .into_iter()
                .map(|p| <[BigRational; 2]>::try_from(p).map_err(|_| CliError::Input("points must lie in the plane".into())))
                .collect::<Result<Vec<_>, _>>()?;
            let config = PointConfiguration::explicit(points)?;
            let curves = enumerate_curves(source.genus, &degree, &config).map_err(mismatch)?;
            (config, file.signs, None, curves)
        }
        None => {
            let (seed, config, curves) =
                enumerate_mikhalkin(source.genus, &degree, source.mikhalkin_seed.unwrap_or(7)).map_err(mismatch)?;
            (config, None, Some(seed), curves)
        }
    };
    let points = config.points.iter().map(|p| p.to_vec()).collect();
    Ok(Loaded { degree: Some(degree), points, signs, seed, curves })
}

pub fn enumerate(source: &Source, output: Option<&Path>) -> Result<(), CliError> {
    let loaded = load(source)?;
    let degree = loaded.degree.clone().unwrap_or_default();
    let mut v = io::curve_set_json(&degree, &loaded.points, loaded.signs.as_deref(), &loaded.curves);
    if let Some(seed) = loaded.seed {
        v["mikhalkin_seed"] = json!(seed);
    }
    write(output, &pretty(&v))
}

pub struct CountJob {
    pub complex: bool,
    pub real: bool,
    pub signs: Option<String>,
    pub sign_t: String,
    pub format: Format,
}

fn parse_sign_t(s: &str) -> Result<i8, CliError> {
    match s.trim() {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        other => Err(CliError::Input(format!("--sign-t must be + or -, got {other:?}"))),
    }
}

/// Signs for `k` points: `all-positive`, a single pair for every point, or one pair per point.
fn resolve_signs(arg: &str, k: usize) -> Result<RealPointConfig, CliError> {
    if arg.trim() == "all-positive" {
        return Ok(RealPointConfig::all_positive(k, 2));
    }
    let parts: Vec<Vec<i8>> = arg.split(',').map(|s| parse_signs(s.trim())).collect::<Result<_, _>>()?;
    let signs = match parts.len() {
        1 => vec![parts[0].clone(); k],
        n if n == k => parts,
        n => return Err(CliError::Input(format!("{n} sign pairs for {k} points"))),
    };
    check_signs(signs)
}

fn check_signs(signs: Vec<Vec<i8>>) -> Result<RealPointConfig, CliError> {
    if signs.iter().any(|s| s.len() != 2) {
        return Err(CliError::Input("each point needs exactly two signs".into()));
    }
    Ok(RealPointConfig { signs })
}

/// Scales curves and points by the least factor making the decomposition good.
fn rescaled(curves: &[MarkedCurve], constraints: &[AffineConstraint]) -> (BigInt, Vec<MarkedCurve>, Vec<AffineConstraint>) {
    let plain: Vec<TropicalCurve> = curves.iter().map(|c| c.curve.clone()).collect();
    let s = rescale_for_goodness(&plain, constraints);
    let q = BigRational::from_integer(s.clone());
    let curves = curves.iter().map(|c| MarkedCurve { curve: c.curve.scaled(&q), marks: c.marks.clone() }).collect();
    let constraints = constraints
        .iter()
        .map(|a| AffineConstraint { base: a.base.iter().map(|x| x * &q).collect(), directions: a.directions.clone() })
        .collect();
    (s, curves, constraints)
}

fn count_table(report: &CountReport, scale: &BigInt, complex: bool) -> String {
    let mut out = String::new();
    let real = report.n_real.is_some();
    let _ = writeln!(out, "scale {scale}");
    let _ = write!(out, "{:>5} {:>10} {:>10} {:>14}", "curve", "D(T_h)", "complex", "vertex_prod");
    if real {
        let _ = write!(out, " {:>10} {:>10} {:>8}", "D^R", "twisted", "real");
    }
    out.push('\n');
    let show = |x: &Option<BigInt>| x.as_ref().map_or("-".to_string(), ToString::to_string);
    for r in &report.rows {
        let _ = write!(
            out,
            "{:>5} {:>10} {:>10} {:>14}",
            r.curve,
            r.th.complex_index,
            r.complex_contribution,
            show(&r.vertex_product)
        );
        if real {
            let _ = write!(out, " {:>10} {:>10} {:>8}", r.th.real_index, show(&r.th.twisted_real), show(&r.real_contribution));
        }
        out.push('\n');
    }
    if complex {
        let _ = writeln!(out, "N = {}", report.n_complex);
    }
    if let Some(n) = &report.n_real {
        let _ = writeln!(out, "N^R = {n}");
        let _ = writeln!(out, "parity {}", if report.parity_holds() == Some(true) { "ok" } else { "FAILED" });
    }
    out
}

pub fn count_report(loaded: &Loaded, job: &CountJob) -> Result<(CountReport, BigInt, Option<(RealPointConfig, i8)>), CliError> {
    let constraints = loaded.constraints();
    if job.signs.is_some() && !job.real {
        return Err(CliError::Input("--signs needs --real".into()));
    }
    let sign_t = parse_sign_t(&job.sign_t)?;
    let (report, scale, real) = if job.real {
        let config = match (&job.signs, &loaded.signs) {
            (Some(arg), _) => resolve_signs(arg, loaded.points.len())?,
            (None, Some(s)) if s.len() == loaded.points.len() => check_signs(s.clone())?,
            (None, Some(_)) => return Err(CliError::Input("points file has the wrong number of signs".into())),
            (None, None) => return Err(CliError::Input("--real needs --signs or signs in the points file".into())),
        };
        let (scale, curves, constraints) = rescaled(&loaded.curves, &constraints);
        let report = counting::count(&curves, &constraints, Some(RealData { config: &config, sign_t }))?;
        (report, scale, Some((config, sign_t)))
    } else {
        (counting::count(&loaded.curves, &constraints, None)?, BigInt::one(), None)
    };
    if let Some(r) = report.rows.iter().find(|r| r.vertex_identity_holds() == Some(false)) {
        return Err(CliError::Mismatch(format!(
            "curve {}: assembled contribution {} but vertex product {:?}",
            r.curve, r.complex_contribution, r.vertex_product
        )));
    }
    if report.parity_holds() == Some(false) {
        return Err(CliError::Mismatch(format!("N^R {:?} and N {} differ in parity", report.n_real, report.n_complex)));
    }
    Ok((report, scale, real))
}

pub fn count_command(loaded: &Loaded, job: &CountJob) -> Result<String, CliError> {
    let (report, scale, real) = count_report(loaded, job)?;
    // Complex totals are implied unless only `--real` was asked for.
    let complex = job.complex || !job.real;
    Ok(match job.format {
        Format::Json => {
            let mut v = io::count_json(&report, &scale, real.as_ref().map(|(c, t)| (c, *t)));
            if !complex {
                v["totals"].as_object_mut().unwrap().remove("complex");
            }
            pretty(&v)
        }
        Format::Table => count_table(&report, &scale, complex),
    })
}

pub fn count(source: &Source, job: &CountJob, output: Option<&Path>) -> Result<(), CliError> {
    let text = count_command(&load(source)?, job)?;
    write(output, &text)
}

pub fn welschinger(source: &Source, format: Format, output: Option<&Path>) -> Result<(), CliError> {
    let loaded = load(source)?;
    if loaded.curves.iter().any(|c| c.curve.n != 2) || loaded.points.iter().any(|p| p.len() != 2) {
        return Err(CliError::Input("Welschinger numbers need point constraints in the plane".into()));
    }
    let (scale, curves, _) = rescaled(&loaded.curves, &loaded.constraints());
    let mut rows = Vec::new();
    let mut total = 0i64;
    let mut bad = Vec::new();
    for (i, c) in curves.iter().enumerate() {
        let mult_r = curve_welschinger_mult(&c.curve)?;
        let plus = census_sum(&c.curve, 1)?;
        let minus = census_sum(&c.curve, -1)?;
        let ok = plus == mult_r && minus == mult_r;
        if !ok {
            bad.push(i);
        }
        total += mult_r;
        rows.push((i, mult_r, plus, minus, ok));
    }
    let text = match format {
        Format::Json => pretty(&json!({
            "schema": io::SCHEMA,
            "scale": scale.to_string(),
            "rows": rows.iter().map(|&(curve, mult_r, plus, minus, ok)| json!({
                "curve": curve, "mult_r": mult_r, "census_plus": plus, "census_minus": minus, "ok": ok,
            })).collect::<Vec<_>>(),
            "welschinger": total,
        })),
        Format::Table => {
            let mut s = format!("{:>5} {:>7} {:>7} {:>7}\n", "curve", "Mult_R", "t > 0", "t < 0");
            for (curve, mult_r, plus, minus, ok) in &rows {
                let _ = writeln!(s, "{curve:>5} {mult_r:>7} {plus:>7} {minus:>7}{}", if *ok { "" } else { "  MISMATCH" });
            }
            let _ = writeln!(s, "W = {total}");
            s
        }
    };
    write(output, &text)?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("node census disagrees with Mult_R on curves {bad:?}")))
    }
}

pub fn render(curves: &Path, dual: bool, output: Option<&Path>) -> Result<(), CliError> {
    let set = io::parse_curve_set(&read(curves)?)?;
    let plain: Vec<TropicalCurve> = set.curves.into_iter().map(|c| c.curve).collect();
    write(output, &crate::render::render_svg(&plain, &set.points, dual)?)
}

fn snf_missing_a_two(m: &IntMatrix) -> SnfResult {
    let mut r = smith_normal_form(m);
    for f in r.invariant_factors.iter_mut() {
        if (&*f % 2u32) == BigInt::from(0) {
            *f /= 2u32;
        }
    }
    r
}

pub fn selftest(seed: u64, max_degree: usize, inject_snf_bug: bool) -> Result<(), CliError> {
    if max_degree == 0 {
        return Err(CliError::Input("--max-degree must be at least 1".into()));
    }
    let mut cfg = AcceptanceConfig { seed, max_degree, ..Default::default() };
    if inject_snf_bug {
        cfg.snf = snf_missing_a_two;
    }
    let results = run_acceptance(&cfg);
    for c in &results {
        println!("{c}");
    }
    let failed: Vec<u8> = results.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    if failed.is_empty() {
        println!("all {} criteria passed", results.len());
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("failing criteria {failed:?}")))
    }
}
