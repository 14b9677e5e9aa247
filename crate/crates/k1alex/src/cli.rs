//! Command-line front end. Reports go to stdout; diagnostics to stderr.
//! Exit codes: 0 success, 1 input error, 2 mathematical failure.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::groupring::{Automorphism, FiniteAbelian, GroupElem};
use crate::invariants::{
    build_metabelian_rep, cover_torsion_check, fox_jacobian, metabelian_polynomial, metabelian_polynomial_seifert,
    parse_matrices, phi_class, wada_polynomial, z_mn, InvariantError, InvariantReport, Provenance, TwistedRep,
    ZmnReading,
};
use crate::presentations::{
    parse_braid, parse_presentation, random_move, seifert_presentation, tietze_move, two_bridge_presentation,
    wirtinger_from_braid, Presentation, SeifertData,
};
use crate::skewlaurent::{default_truncation, novikov_invertible, SkewMatrix, SkewRing};
use crate::upsilon::{apply_upsilon_matrix, pushforward_det};
use crate::words::fox_derivative;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::UnexpectedSingular(_)
            | InvariantError::HomomorphismCheckFailed(_)
            | InvariantError::HypothesisFailed(_)
            | InvariantError::OrderingMismatch(_)
            | InvariantError::FreeRankNotOne(_) => CliError::Math(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "k1alex", version, about = "Twisted Alexander invariants over skew Laurent rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Determinant classes of the Fox Jacobian with one column removed.
    Alexander(AlexanderArgs),
    /// Compare Upsilon(A_{F,W}) with the m-fold cover Jacobian.
    CoverCheck(CoverArgs),
    /// Metabelian polynomial with reciprocity and slice checks.
    Metabelian(MetabelianArgs),
    /// Closed form Z_{m,n} for K(m, n) against the raw Fox derivative.
    Zmn(ZmnArgs),
    /// Wada polynomial for matrices in GL(n, Q).
    Wada(WadaArgs),
    /// Random strong Tietze sequences must not change the classes.
    TietzeFuzz(FuzzArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Presentation file (`gens:`, `rel:`, `meridian:`, ... or `braid:`).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Braid word: `[1,-2,1,-2]` or `3; s1 s2^-1 s1 s2^-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// The genus-one two-bridge knot K(M, N).
    #[arg(long, num_args = 2, value_names = ["M", "N"], allow_negative_numbers = true)]
    pub two_bridge: Option<Vec<i64>>,
    /// Built-in Seifert surface data.
    #[arg(long, value_enum)]
    pub seifert: Option<SeifertName>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeifertName {
    Unknot,
    Trefoil,
    FigureEight,
}

impl SeifertName {
    fn data(self) -> SeifertData {
        match self {
            SeifertName::Unknot => SeifertData::unknot(),
            SeifertName::Trefoil => SeifertData::trefoil(),
            SeifertName::FigureEight => SeifertData::figure_eight(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepKind {
    Trivial,
    Metabelian,
    Explicit,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Novikov truncation order (default 32, or K1ALEX_TRUNC).
    #[arg(long, value_parser = clap::value_parser!(u32).range(4..))]
    pub trunc: Option<u32>,
    /// Include the Fox Jacobian and its Upsilon image.
    #[arg(long)]
    pub dump_matrices: bool,
}

impl CommonArgs {
    fn trunc(&self) -> usize {
        self.trunc.map_or_else(default_truncation, |n| n as usize)
    }
}

#[derive(Args, Debug)]
pub struct AlexanderArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = RepKind::Trivial)]
    pub rep: RepKind,
    /// JSON file with H, kappa and generator images (for --rep explicit).
    #[arg(long)]
    pub rep_file: Option<PathBuf>,
    /// Cover degree for metabelian representations.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    /// Deleted column (default: last).
    #[arg(short = 'k', long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long, value_enum)]
    pub seifert: SeifertName,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    /// trivial, or metabelian (built from the same m-fold cover).
    #[arg(long, value_enum, default_value_t = RepKind::Trivial)]
    pub rep: RepKind,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct MetabelianArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    #[arg(short = 'k', long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct ZmnArgs {
    #[arg(long, num_args = 2, value_names = ["M", "N"], allow_negative_numbers = true, required = true)]
    pub two_bridge: Vec<i64>,
    #[arg(long, value_enum, default_value_t = RepKind::Trivial)]
    pub rep: RepKind,
    #[arg(long)]
    pub rep_file: Option<PathBuf>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    /// Also evaluate the printed reading and report where it differs.
    #[arg(long)]
    pub both_zmn_readings: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct WadaArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// JSON list of n x n matrices, one per generator.
    #[arg(long)]
    pub matrices: PathBuf,
    #[arg(short = 'k', long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct FuzzArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = RepKind::Trivial)]
    pub rep: RepKind,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    #[arg(long, default_value_t = 6)]
    pub length: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

struct Loaded {
    pres: Presentation,
    seifert: Option<SeifertData>,
    desc: String,
}

fn load(input: &InputArgs) -> Result<Loaded, CliError> {
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
        let pres = parse_presentation(&text).map_err(input_err)?;
        return Ok(Loaded { pres, seifert: None, desc: format!("file {}", path.display()) });
    }
    if let Some(b) = &input.braid {
        let (letters, n) = parse_braid(b).map_err(input_err)?;
        let pres = wirtinger_from_braid(&letters, n).map_err(input_err)?;
        return Ok(Loaded { pres, seifert: None, desc: format!("braid {b}") });
    }
    if let Some(v) = &input.two_bridge {
        let pres = two_bridge_presentation(v[0], v[1]).map_err(input_err)?;
        return Ok(Loaded { pres, seifert: None, desc: format!("two-bridge K({}, {})", v[0], v[1]) });
    }
    if let Some(s) = input.seifert {
        let data = s.data();
        let pres = seifert_presentation(&data);
        return Ok(Loaded { pres, seifert: Some(data), desc: format!("seifert {s:?}") });
    }
    Err(CliError::Input("no input given".into()))
}

#[derive(Deserialize)]
struct RepFile {
    h: String,
    #[serde(default)]
    kappa: Option<Vec<Vec<u64>>>,
    images: Vec<(Vec<u64>, i64)>,
    #[serde(default)]
    degree: Option<usize>,
}

fn load_rep_file(p: &Presentation, path: &PathBuf) -> Result<TwistedRep, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let f: RepFile = serde_json::from_str(&text).map_err(input_err)?;
    let h = FiniteAbelian::parse(&f.h).map_err(input_err)?;
    let kappa = match f.kappa {
        Some(imgs) => Automorphism::new(&h, imgs.into_iter().map(GroupElem).collect()).map_err(input_err)?,
        None => Automorphism::identity(&h),
    };
    let degree = f.degree.unwrap_or(kappa.order() as usize);
    let images = f.images.into_iter().map(|(g, e)| (GroupElem(g), e)).collect();
    Ok(TwistedRep::new(p, SkewRing::new(h, kappa), images, degree, Provenance::Explicit)?)
}

fn build_rep(p: &Presentation, kind: RepKind, m: u32, rep_file: Option<&PathBuf>) -> Result<TwistedRep, CliError> {
    match kind {
        RepKind::Trivial => Ok(TwistedRep::trivial(p)?),
        RepKind::Metabelian => Ok(build_metabelian_rep(p, m as usize)?),
        RepKind::Explicit => {
            let path = rep_file.ok_or_else(|| CliError::Input("--rep explicit needs --rep-file".into()))?;
            load_rep_file(p, path)
        }
    }
}

fn column(p: &Presentation, k: Option<usize>) -> usize {
    k.unwrap_or(p.ngens().saturating_sub(1))
}

fn matrices_json(p: &Presentation, rep: &TwistedRep, k: usize) -> Result<serde_json::Value, CliError> {
    let a = fox_jacobian(p, rep).remove_column(k).map_err(input_err)?;
    let u = apply_upsilon_matrix(&a, &rep.ring, rep.degree).map_err(input_err)?;
    Ok(json!({ "fox_jacobian": a.render(), "upsilon": u.render() }))
}

fn emit_report(
    report: &InvariantReport,
    format: Format,
    extra: Option<serde_json::Value>,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_value(report).map_err(input_err)?;
            if let Some(x) = extra {
                v["matrices"] = x;
            }
            serde_json::to_string_pretty(&v).map_err(input_err)? + "\n"
        }
        Format::Text => {
            let mut s = report.to_text();
            if let Some(x) = extra {
                s += &format!("matrices: {x}\n");
            }
            s
        }
    })
}

fn cmd_alexander(a: &AlexanderArgs) -> Result<(String, i32), CliError> {
    let l = load(&a.input)?;
    let rep = build_rep(&l.pres, a.rep, a.m, a.rep_file.as_ref())?;
    let k = column(&l.pres, a.k);
    let mut report = phi_class(&l.pres, &rep, k, a.common.trunc())?;
    report.input = l.desc;
    if let Some(lon) = &l.pres.longitude {
        report.longitude_trivial = Some(rep.kills(lon));
    }
    let extra = a.common.dump_matrices.then(|| matrices_json(&l.pres, &rep, k)).transpose()?;
    Ok((emit_report(&report, a.common.format, extra)?, 0))
}

fn cmd_metabelian(a: &MetabelianArgs) -> Result<(String, i32), CliError> {
    let l = load(&a.input)?;
    let m = a.m as usize;
    let trunc = a.common.trunc();
    let mut report = match &l.seifert {
        Some(data) => metabelian_polynomial_seifert(data, m, trunc)?,
        None => metabelian_polynomial(&l.pres, m, column(&l.pres, a.k), trunc)?,
    };
    report.input = l.desc;
    let extra = if a.common.dump_matrices {
        let rep = build_metabelian_rep(&l.pres, m)?;
        Some(matrices_json(&l.pres, &rep, column(&l.pres, a.k))?)
    } else {
        None
    };
    Ok((emit_report(&report, a.common.format, extra)?, 0))
}

fn cmd_cover_check(a: &CoverArgs) -> Result<(String, i32), CliError> {
    let data = a.seifert.data();
    let pres = seifert_presentation(&data);
    let rep = build_rep(&pres, a.rep, a.m, None)?;
    let check = cover_torsion_check(&data, &rep, a.m as usize, a.common.dump_matrices)?;
    let code = if check.passed() { 0 } else { 2 };
    let out = match a.common.format {
        Format::Json => serde_json::to_string_pretty(&check).map_err(input_err)? + "\n",
        Format::Text => {
            let mut s = format!(
                "seifert {:?}, m = {}, H = {}\nmatrices equal: {}\nclasses equal: {}\n",
                a.seifert,
                a.m,
                rep.h(),
                check.matrices_equal,
                check.classes_equal
            );
            for (chi, l, r) in &check.per_character {
                let _ = writeln!(s, "{chi}: {l} | {r}");
            }
            s
        }
    };
    Ok((out, code))
}

fn cmd_zmn(a: &ZmnArgs) -> Result<(String, i32), CliError> {
    let (m, n) = (a.two_bridge[0], a.two_bridge[1]);
    let pres = two_bridge_presentation(m, n).map_err(input_err)?;
    let rep = build_rep(&pres, a.rep, a.m, a.rep_file.as_ref())?;
    let fox = rep.eval_ring(&fox_derivative(&pres.relators[0], 0));
    let z = z_mn(m, n, &rep, ZmnReading::Corrected)?;
    let one = SkewMatrix::from_rows(vec![vec![z.clone()]], 1).map_err(input_err)?;
    let unit = novikov_invertible(&one, a.common.trunc(), &rep.ring).map_err(input_err)?;
    let dets = pushforward_det(&one, &rep.ring, rep.degree).map_err(input_err)?;
    let invertible = dets.iter().all(|d| d.class.is_some());
    let mut v = json!({
        "m": m,
        "n": n,
        "h": rep.h().to_string(),
        "kappa_order": rep.kappa().order(),
        "z_corrected": z.render(),
        "fox": fox.render(),
        "corrected_matches_fox": z == fox,
        "invertible": invertible,
        "novikov": unit.label(),
    });
    if a.both_zmn_readings {
        let p = z_mn(m, n, &rep, ZmnReading::Printed)?;
        v["z_printed"] = json!(p.render());
        v["printed_matches_fox"] = json!(p == fox);
        if p != fox {
            eprintln!("printed reading differs from the Fox derivative for K({m}, {n})");
        }
    }
    let code = if z == fox { 0 } else { 2 };
    let out = match a.common.format {
        Format::Json => serde_json::to_string_pretty(&v).map_err(input_err)? + "\n",
        Format::Text => {
            let mut s = String::new();
            for (key, val) in v.as_object().unwrap() {
                let _ = writeln!(s, "{key}: {}", val.as_str().map_or_else(|| val.to_string(), str::to_string));
            }
            s
        }
    };
    Ok((out, code))
}

fn cmd_wada(a: &WadaArgs) -> Result<(String, i32), CliError> {
    let l = load(&a.input)?;
    let text = std::fs::read_to_string(&a.matrices).map_err(|e| input_err(format!("{}: {e}", a.matrices.display())))?;
    let mats = parse_matrices(&text)?;
    let r = wada_polynomial(&l.pres, &mats, column(&l.pres, a.k))?;
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    let out = match a.format {
        Format::Json => serde_json::to_string_pretty(&r).map_err(input_err)? + "\n",
        Format::Text => format!("det: {}\nwada: {}\n", r.det_class, r.wada),
    };
    Ok((out, 0))
}

fn cmd_tietze_fuzz(a: &FuzzArgs) -> Result<(String, i32), CliError> {
    let l = load(&a.input)?;
    let rep = build_rep(&l.pres, a.rep, a.m, None)?;
    let trunc = a.common.trunc();
    let base = phi_class(&l.pres, &rep, 0, trunc)?.polynomials();
    let mut rng = StdRng::seed_from_u64(a.seed);
    let mut failures = Vec::new();
    for run in 0..a.count {
        let (mut p, mut r) = (l.pres.clone(), rep.clone());
        let mut moves = Vec::new();
        for _ in 0..a.length {
            let mv = random_move(&p, &mut rng);
            let q = tietze_move(&p, &mv).map_err(input_err)?;
            r = r.transport(&q, &mv)?;
            p = q;
            moves.push(format!("{mv:?}"));
        }
        let got = phi_class(&p, &r, 0, trunc)?.polynomials();
        if got != base {
            failures.push(json!({ "run": run, "moves": moves, "classes": got }));
        }
    }
    let v = json!({ "input": l.desc, "runs": a.count, "length": a.length, "base": base, "failures": failures });
    let code = if failures.is_empty() { 0 } else { 2 };
    let out = match a.common.format {
        Format::Json => serde_json::to_string_pretty(&v).map_err(input_err)? + "\n",
        Format::Text => format!(
            "{}: {} sequences of {} moves, {} changed the classes\nbase: {}\n",
            v["input"].as_str().unwrap(),
            a.count,
            a.length,
            failures.len(),
            base.join(" | ")
        ),
    };
    Ok((out, code))
}

/// Run a parsed command; returns stdout text and exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    match &cli.command {
        Command::Alexander(a) => cmd_alexander(a),
        Command::CoverCheck(a) => cmd_cover_check(a),
        Command::Metabelian(a) => cmd_metabelian(a),
        Command::Zmn(a) => cmd_zmn(a),
        Command::Wada(a) => cmd_wada(a),
        Command::TietzeFuzz(a) => cmd_tietze_fuzz(a),
    }
}

pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
