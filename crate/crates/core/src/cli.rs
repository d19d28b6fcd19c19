//! Command-line front end. Every verb reads JSON files, truncates inputs to
//! the working order `N` and prints one JSON report with sorted keys.
//!
//! Exit status: 0 for affirmative verdicts and successful constructions, 1
//! for negative verdicts, 2 for input errors. Error reports carry a code:
//! `usage`, `io`, `malformed-json`, `schema` or `hypothesis`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{self, Options};
use crate::coeff::{GaussRational, Rational};
use crate::error::Error;
use crate::germ::LogSeries;
use crate::jet::{Basis, Mu, PlaneJet, SmoothJet, VPlusJet};
use crate::label::{Label, LabelKind};
use crate::polygon::{self, IngredientRep, IntVec};
use crate::DEFAULT_ORDER;

#[derive(Parser, Debug)]
#[command(name = "focaljet", version, about = "Exact jet computations for focus-focus label invariants")]
pub struct Cli {
    /// Truncation order N.
    #[arg(long, global = true, env = "FOCALJET_ORDER", default_value_t = DEFAULT_ORDER,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub order: u32,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArg {
    /// Coefficients of the G ln G series: `alternating-harmonic` or `exact`.
    #[arg(long, default_value = "alternating-harmonic", value_parser = parse_series)]
    pub series: LogSeries,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the label relations.
    ValidateLabel {
        #[arg(long)]
        label: PathBuf,
    },
    /// Build a label from g_{j-1,j} (a JSON list of series) and ts_0.
    GenerateLabel {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        seed: PathBuf,
        /// Produce a label without constant terms, compared modulo 2πℤX.
        #[arg(long)]
        reduced: bool,
    },
    /// Apply a group action to a label.
    Act {
        #[arg(long)]
        label: PathBuf,
        /// One of z2, zm, rotate, zr.
        #[arg(long)]
        action: String,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<Rational>,
        /// Permutation for zm, comma separated.
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// First-order invariant of an abscissa-preserving map.
    Mu {
        #[arg(long)]
        g: PathBuf,
    },
    /// Liftability in the Z_mu coordinates.
    Lift {
        #[arg(long)]
        g: PathBuf,
        /// Defaults to the first-order invariant of the map.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<GaussRational>,
    },
    /// Affine admissibility of two tuples of maps.
    Admissible {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        tuple_prime: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<GaussRational>,
        /// Experimental: allow different first-order invariants, expanding
        /// (Zbar/Z)^k up to this window.
        #[arg(long)]
        mixed_window: Option<u32>,
        #[command(flatten)]
        series: SeriesArg,
    },
    /// Affine equivalence of two labels via G.
    Equivalent {
        #[arg(long)]
        l: PathBuf,
        #[arg(long)]
        lp: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[command(flatten)]
        series: SeriesArg,
    },
    /// A label with tuple (G'_j) affine equivalent to the given one.
    Synthesize {
        #[arg(long)]
        l: PathBuf,
        /// JSON list of maps G'_j.
        #[arg(long)]
        targets: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[command(flatten)]
        series: SeriesArg,
    },
    /// Corner categories of primitive vectors xi1, xi2 (given as "a,b").
    ClassifyCorner {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_intvec)]
        xi1: IntVec,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_intvec)]
        xi2: IntVec,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    /// Check a semitoric ingredient representative.
    ValidateRep {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Find (k, b) in Z×R carrying one representative onto another.
    OrbitEqual {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        rep_prime: PathBuf,
    },
    /// Nodewise affine equivalence of two representatives.
    RepEquivalent {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        rep_prime: PathBuf,
        /// One map for every node, or a JSON list with one map per node.
        #[arg(long)]
        g: PathBuf,
        #[command(flatten)]
        series: SeriesArg,
    },
    /// Emit a constructed pair of labels.
    Example {
        /// permutation, liftable or concrete.
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<GaussRational>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<GaussRational>,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
        #[arg(long)]
        g0: Option<PathBuf>,
        #[arg(long)]
        g1: Option<PathBuf>,
        #[arg(long)]
        seed: Option<PathBuf>,
        #[command(flatten)]
        series: SeriesArg,
    },
}

fn parse_series(s: &str) -> std::result::Result<LogSeries, String> {
    serde_json::from_value(Value::String(s.into())).map_err(|_| format!("unknown series {s:?}"))
}

fn parse_intvec(s: &str) -> std::result::Result<IntVec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [a, b] => Ok([a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?]),
        _ => Err(format!("expected two integers \"a,b\", got {s:?}")),
    }
}

/// A failure that ends the command with exit status 2.
#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
}

impl Failure {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Hypothesis { .. } | Error::NotAdmissible(_) | Error::Precondition(_) | Error::MuMismatch(_) => {
                "hypothesis"
            }
            _ => "schema",
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = std::result::Result<(bool, Value), Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::new("malformed-json", format!("{}: {e}", path.display())))?;
    serde_json::from_value(value).map_err(|e| Failure::new("schema", format!("{}: {e}", path.display())))
}

fn check_order(have: u32, n: u32, what: &str) -> std::result::Result<(), Failure> {
    if have < n {
        return Err(Failure::new("schema", format!("{what} has order {have}, below the working order {n}")));
    }
    Ok(())
}

/// A map given as `{order, g, sign}` (an abscissa-preserving jet), as
/// `{order, first, second}`, as an XY series `g` standing for `(X, g)`, or as
/// a Z-basis series standing for the complex form.
fn map_from_value(v: Value, n: u32) -> std::result::Result<PlaneJet, Failure> {
    let schema = |e: serde_json::Error| Failure::new("schema", e.to_string());
    let obj = v.as_object().ok_or_else(|| Failure::new("schema", "a map must be a JSON object"))?;
    let plane = if obj.contains_key("g") {
        serde_json::from_value::<VPlusJet>(v).map_err(schema)?.plane().clone()
    } else if obj.contains_key("first") {
        serde_json::from_value::<PlaneJet>(v).map_err(schema)?
    } else {
        let f: SmoothJet = serde_json::from_value(v).map_err(schema)?;
        match f.basis() {
            Basis::XY => PlaneJet::new(SmoothJet::x(f.order()), f)?,
            Basis::Z => PlaneJet::from_complex_form(&f)?,
            Basis::Zmu(_) => PlaneJet::from_complex_form(&f.to_basis(&Basis::Z))?,
        }
    };
    check_order(plane.order(), n, "map")?;
    Ok(plane.truncate(n)?)
}

fn read_value(path: &Path) -> std::result::Result<Value, Failure> {
    read_json(path)
}

fn read_map(path: &Path, n: u32) -> std::result::Result<PlaneJet, Failure> {
    map_from_value(read_value(path)?, n)
}

fn read_maps(path: &Path, n: u32) -> std::result::Result<Vec<PlaneJet>, Failure> {
    match read_value(path)? {
        Value::Array(items) => items.into_iter().map(|v| map_from_value(v, n)).collect(),
        v => Ok(vec![map_from_value(v, n)?]),
    }
}

fn vplus(p: &PlaneJet) -> std::result::Result<VPlusJet, Failure> {
    Ok(VPlusJet::from_plane(p)?)
}

fn read_vplus(path: &Path, n: u32) -> std::result::Result<VPlusJet, Failure> {
    vplus(&read_map(path, n)?)
}

fn read_label(path: &Path, n: u32) -> std::result::Result<Label, Failure> {
    let l: Label = read_json(path)?;
    check_order(l.order(), n, "label")?;
    Ok(l.truncate(n)?)
}

fn read_series(path: &Path, n: u32) -> std::result::Result<SmoothJet, Failure> {
    let f: SmoothJet = read_json(path)?;
    check_order(f.order(), n, "series")?;
    Ok(f.truncate(n)?)
}

fn read_rep(path: &Path, n: u32) -> std::result::Result<IngredientRep, Failure> {
    let mut rep: IngredientRep = read_json(path)?;
    for l in rep.labels.iter_mut() {
        check_order(l.order(), n, "label")?;
        *l = l.truncate(n)?;
    }
    Ok(rep)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn mu_arg(mu: Option<GaussRational>) -> std::result::Result<Option<Mu>, Failure> {
    mu.map(Mu::new).transpose().map_err(Failure::from)
}

fn default_liftable_pair(n: u32) -> (VPlusJet, VPlusJet, SmoothJet) {
    let g0 = SmoothJet::xy_poly(n, &[((0, 1), (1, 1)), ((2, 0), (1, 1)), ((0, 2), (1, 1))]);
    let g1 = SmoothJet::xy_poly(n, &[((0, 1), (1, 1)), ((2, 0), (-1, 2)), ((0, 2), (-1, 2)), ((3, 0), (1, 1)), ((1, 2), (1, 1))]);
    let seed = SmoothJet::xy_poly(n, &[((1, 0), (1, 1)), ((0, 2), (1, 1))]);
    (VPlusJet::new(g0).expect("positive"), VPlusJet::new(g1).expect("positive"), seed)
}

fn execute(cmd: &Command, n: u32) -> Outcome {
    match cmd {
        Command::ValidateLabel { label } => {
            let l = read_label(label, n)?;
            let v = l.validate();
            Ok((v.is_empty(), json!({ "verdict": v.is_empty(), "violations": v })))
        }
        Command::GenerateLabel { chain, seed, reduced } => {
            let chain: Vec<SmoothJet> = read_json(chain)?;
            let chain = chain
                .into_iter()
                .map(|f| {
                    check_order(f.order(), n, "chain entry")?;
                    Ok(f.truncate(n)?)
                })
                .collect::<std::result::Result<Vec<_>, Failure>>()?;
            let seed = read_series(seed, n)?;
            let l = if *reduced { Label::generate_reduced(&chain, &seed)? } else { Label::generate(&chain, &seed)? };
            Ok((true, json!({ "verdict": true, "label": to_value(&l) })))
        }
        Command::Act { label, action, k, b, sigma, r } => {
            let l = read_label(label, n)?;
            let need = |what: &str| Failure::new("schema", format!("action {action} needs --{what}"));
            let out = match action.as_str() {
                "z2" => l.z2_action(k.ok_or_else(|| need("k"))?),
                "zm" => l.zm_reindex(sigma.as_ref().ok_or_else(|| need("sigma"))?)?,
                "rotate" => l.rotate(r.ok_or_else(|| need("r"))?),
                "zr" => {
                    if l.kind() != LabelKind::Complete && b.as_ref().is_some_and(|b| !b.is_zero()) {
                        return Err(Failure::new("schema", "translations need a complete label"));
                    }
                    l.zr_shift(k.unwrap_or(0), b.as_ref().unwrap_or(&Rational::zero()))
                }
                other => return Err(Failure::new("schema", format!("unknown action {other:?}"))),
            };
            let valid = out.is_valid();
            Ok((true, json!({ "verdict": true, "valid": valid, "label": to_value(&out) })))
        }
        Command::Mu { g } => {
            let mu = affine::first_order_invariant(&read_map(g, n)?)?;
            Ok((true, json!({ "verdict": true, "mu": to_value(&mu) })))
        }
        Command::Lift { g, mu } => {
            let g = read_map(g, n)?;
            let mu = match mu_arg(mu.clone())? {
                Some(m) => m,
                None => affine::first_order_invariant(&g)?,
            };
            let r = affine::lift_report(&g, &mu)?;
            let failing: Vec<[u32; 2]> = r.failing_coeffs.iter().map(|&q| [0, q]).collect();
            Ok((
                r.liftable,
                json!({
                    "verdict": r.liftable,
                    "liftable": r.liftable,
                    "holomorphic": r.holomorphic,
                    "mu": to_value(&r.mu),
                    "failing": failing,
                }),
            ))
        }
        Command::Admissible { tuple, tuple_prime, mu, mixed_window, series } => {
            let t = read_maps(tuple, n)?;
            let tp = read_maps(tuple_prime, n)?;
            let mu = mu_arg(mu.clone())?;
            let opts = Options { series: series.series, mixed_window: *mixed_window };
            let v = affine::affine_admissible(&t, &tp, mu.as_ref(), &opts)?;
            let mut report = to_value(&v);
            report["verdict"] = json!(v.admissible);
            Ok((v.admissible, report))
        }
        Command::Equivalent { l, lp, g, series } => {
            let (l, lp, g) = (read_label(l, n)?, read_label(lp, n)?, read_vplus(g, n)?);
            let c = affine::label_equivalent(&l, &lp, &g, &Options { series: series.series, mixed_window: None })?;
            Ok((c.verdict, json!({ "verdict": c.verdict, "certificate": to_value(&c) })))
        }
        Command::Synthesize { l, targets, g, series } => {
            let l = read_label(l, n)?;
            let targets = read_maps(targets, n)?.iter().map(vplus).collect::<std::result::Result<Vec<_>, _>>()?;
            let g = read_vplus(g, n)?;
            let out = affine::synthesize_equivalent(&l, &targets, &g, series.series)?;
            Ok((true, json!({ "verdict": true, "label": to_value(&out) })))
        }
        Command::ClassifyCorner { xi1, xi2, s } => {
            let r = polygon::classify_corner(xi1, xi2, *s)?;
            let any = !r.is_none();
            let mut report = to_value(&r);
            report["verdict"] = json!(any);
            Ok((any, report))
        }
        Command::ValidateRep { rep } => {
            let rep = read_rep(rep, n)?;
            let v = rep.validate();
            Ok((v.is_empty(), json!({ "verdict": v.is_empty(), "violations": to_value(&v) })))
        }
        Command::OrbitEqual { rep, rep_prime } => {
            let (a, b) = (read_rep(rep, n)?, read_rep(rep_prime, n)?);
            let w = polygon::rep_orbit_equal(&a, &b);
            let witness = w.as_ref().map(|(k, b)| json!({ "k": k, "b": to_value(b) }));
            Ok((w.is_some(), json!({ "verdict": w.is_some(), "witness": witness })))
        }
        Command::RepEquivalent { rep, rep_prime, g, series } => {
            let (a, b) = (read_rep(rep, n)?, read_rep(rep_prime, n)?);
            let jets = read_maps(g, n)?.iter().map(vplus).collect::<std::result::Result<Vec<_>, _>>()?;
            let r = polygon::rep_affine_equivalent(&a, &b, &jets, &Options { series: series.series, mixed_window: None })?;
            Ok((r.verdict, to_value(&r)))
        }
        Command::Example { kind, a, b, m, sigma, g0, g1, seed, series } => {
            let series = series.series;
            let report = match kind.as_str() {
                "permutation" => {
                    let sigma = sigma.clone().unwrap_or_else(|| {
                        let mut s: Vec<usize> = (0..*m).collect();
                        s.swap(0, 1);
                        s
                    });
                    let seed = seed.as_deref().map(|p| read_series(p, n)).transpose()?;
                    to_value(&affine::permutation_example(*m, &sigma, None, seed, n)?)
                }
                "liftable" => {
                    let (d0, d1, ds) = default_liftable_pair(n);
                    let g0 = g0.as_deref().map(|p| read_vplus(p, n)).transpose()?.unwrap_or(d0);
                    let g1 = g1.as_deref().map(|p| read_vplus(p, n)).transpose()?.unwrap_or(d1);
                    let seed = seed.as_deref().map(|p| read_series(p, n)).transpose()?.unwrap_or(ds);
                    to_value(&affine::liftable_pair_example(&g0, &g1, &seed, series)?)
                }
                "concrete" => {
                    let one = GaussRational::one();
                    let a = a.clone().unwrap_or_else(|| one.clone());
                    let b = b.clone().unwrap_or(one);
                    to_value(&affine::concrete_example(&a, &b, n, series)?)
                }
                other => return Err(Failure::new("schema", format!("unknown example kind {other:?}"))),
            };
            let mut report = report;
            report["verdict"] = json!(true);
            Ok((true, report))
        }
    }
}

/// Runs one command line and writes the report to `out` (or `--out`).
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let n = cli.order;
    let (status, mut report) = match execute(&cli.command, n) {
        Ok((true, v)) => (0, v),
        Ok((false, v)) => (1, v),
        Err(f) => (2, json!({ "error": { "code": f.code, "message": f.message } })),
    };
    if report.get("order").is_none() {
        report["order"] = json!(n);
    }
    let text = serde_json::to_string_pretty(&report).expect("values serialize") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("{}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    status
}

pub fn main_from_env() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock())
}
