//! The `cuntzlab` command-line tool.

pub mod config;
pub mod table1;

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use cuntzlab_core::checks::{run_suite, Suite, SuiteReport};
use cuntzlab_core::dynamics::{
    classify, entropy_estimate, required_depth, ClassifyOptions, EntropySummary, InducedMap, Masa,
    Verdict,
};
use cuntzlab_core::endomorphism::rank2_permutative;
use cuntzlab_core::matrix::{lemma1_decompose, norm_bounds, operator_norm, psi};
use cuntzlab_core::{parse_element, AlgebraElement, EndomorphismSpec, Error, Permutation, Word};

pub use config::{Cli, Command, Config, Format};
use table1::{parse_table_element, EXPECTED};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

/// A failed command: message for stderr and process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::AlphabetMismatch(..)
            | Error::BadAlphabet(_)
            | Error::LetterOutOfRange { .. }
            | Error::Syntax { .. }
            | Error::BadPermutation(_)
            | Error::Invalid(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

/// Runs one command, writing its report to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let c = &cli.config;
    c.validate().map_err(Failure::usage)?;
    match &cli.command {
        Command::Apply => cmd_apply(c, out),
        Command::Entropy => cmd_entropy(c, out),
        Command::Table1 => cmd_table1(c, out),
        Command::Verify { suite } => cmd_verify(c, suite.as_deref(), out),
        Command::Norm => cmd_norm(c, out),
        Command::Psi => cmd_psi(c, out),
    }
}

fn element(c: &Config) -> Result<AlgebraElement, Failure> {
    let text = c.element.as_deref().ok_or_else(|| Failure::usage("--element is required"))?;
    parse_element(text, c.n_gens).map_err(|e| Failure::usage(format!("--element: {e}")))
}

fn endomorphism(c: &Config) -> Result<Option<EndomorphismSpec>, Failure> {
    let sigma = match (&c.perm, &c.perm_word) {
        (Some(p), None) => Permutation::parse(p, c.n_gens, c.rank),
        (None, Some(w)) => Permutation::parse_word(w, c.n_gens, c.rank),
        _ => return Ok(None),
    };
    let sigma = sigma.map_err(|e| Failure::usage(format!("permutation: {e}")))?;
    Ok(Some(EndomorphismSpec::from_permutation(sigma)))
}

fn required_endomorphism(c: &Config) -> Result<EndomorphismSpec, Failure> {
    endomorphism(c)?.ok_or_else(|| Failure::usage("--perm or --perm-word is required"))
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::usage(e.to_string()))?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

fn cmd_apply(c: &Config, out: &mut dyn Write) -> Outcome {
    let e = required_endomorphism(c)?;
    let x = element(c)?;
    let image = e.apply(&x).canonicalize();
    match c.format() {
        Format::Json => json_line(
            out,
            &json!({ "perm": e.label(), "element": x.to_string(), "image": image.to_string() }),
        ),
        _ => {
            writeln!(out, "{image}")?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_entropy(c: &Config, out: &mut dyn Write) -> Outcome {
    let e = match endomorphism(c)? {
        Some(e) => e,
        None if c.element.is_some() => EndomorphismSpec::from_unitary(element(c)?)?,
        None => return Err(Failure::usage("--perm, --perm-word or a unitary --element is required")),
    };
    let masa: Masa = c.masa.parse()?;
    let depth = required_depth(e.rank().max(2), c.depth, c.steps);
    let map = match masa {
        Masa::Standard => InducedMap::standard(&e, depth, c.budget)?,
        Masa::EF => InducedMap::ef(&e, depth, c.budget)?,
    };
    let summary = entropy_estimate(&map, &e.label(), c.depth, c.steps, c.budget)?;
    match c.format() {
        Format::Json => json_line(out, &summary),
        Format::Csv => {
            writeln!(out, "perm,masa,p,n,count")?;
            for r in &summary.reports {
                for (n, count) in &r.counts {
                    writeln!(out, "{},{},{},{n},{count}", csv(&r.perm), masa.as_str(), r.p)?;
                }
            }
            Ok(EXIT_OK)
        }
        Format::Text => {
            write_entropy_text(out, &e.label(), masa, &summary)?;
            Ok(EXIT_OK)
        }
    }
}

fn write_entropy_text(out: &mut dyn Write, label: &str, masa: Masa, s: &EntropySummary) -> std::io::Result<()> {
    writeln!(out, "perm {label}  masa {}", masa.as_str())?;
    for r in &s.reports {
        let counts: Vec<String> = r.counts.iter().map(|c| c.1.to_string()).collect();
        writeln!(out, "  p={}  {}  N(n) = {}", r.p, r.verdict.as_str(), counts.join(" "))?;
    }
    writeln!(out, "verdict {}  estimate {:.6} nats", s.verdict.as_str(), s.estimate_nats)
}

/// One line of the recomputed entropy table.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub perm: String,
    pub rho_s1: String,
    pub rho_s2: String,
    pub hte_expected: String,
    pub hte_computed: String,
    pub hte_c2_expected: String,
    pub hte_c2_computed: String,
    pub masa_used: String,
    pub status: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Zero => "0",
        Verdict::Log2 => "log2",
        Verdict::Inconclusive => "?",
    }
}

/// Classifies all 24 rows in parallel and returns them in table order.
pub fn table1_rows(opts: &ClassifyOptions) -> Result<Vec<Table1Row>, Failure> {
    let specs = rank2_permutative();
    specs
        .par_iter()
        .zip(EXPECTED.par_iter())
        .map(|(e, exp)| {
            let cls = classify(e, opts)?;
            let s = |i| e.apply(&AlgebraElement::generator(2, i));
            let (img1, img2) = (s(1), s(2));
            let mut diagnostics = Vec::new();
            for (name, img, text) in [("rho(s1)", &img1, exp.rho_s1), ("rho(s2)", &img2, exp.rho_s2)] {
                if !img.equals(&parse_table_element(text)?)? {
                    diagnostics.push(format!("{name} = {img}, expected {text}"));
                }
            }
            let hte = cls.hte.as_str().to_string();
            let hte_c2 = verdict_label(cls.hte_c2).to_string();
            if hte != exp.hte {
                diagnostics.push(format!("hte computed {hte}, expected {}", exp.hte));
            }
            if hte_c2 != exp.hte_c2 {
                diagnostics.push(format!("hte|C2 computed {hte_c2}, expected {}", exp.hte_c2));
            }
            Ok(Table1Row {
                perm: e.label(),
                rho_s1: img1.to_string(),
                rho_s2: img2.to_string(),
                hte_expected: exp.hte.into(),
                hte_computed: hte,
                hte_c2_expected: exp.hte_c2.into(),
                hte_c2_computed: hte_c2,
                masa_used: cls.masa_used.as_str().into(),
                status: if diagnostics.is_empty() { "match" } else { "mismatch" }.into(),
                diagnostics,
            })
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(Failure::from)
}

fn csv(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub const TABLE1_COLUMNS: [&str; 9] = [
    "perm",
    "rho_s1",
    "rho_s2",
    "hte_expected",
    "hte_computed",
    "hte_c2_expected",
    "hte_c2_computed",
    "masa_used",
    "status",
];

fn row_fields(r: &Table1Row) -> [&str; 9] {
    [
        &r.perm,
        &r.rho_s1,
        &r.rho_s2,
        &r.hte_expected,
        &r.hte_computed,
        &r.hte_c2_expected,
        &r.hte_c2_computed,
        &r.masa_used,
        &r.status,
    ]
}

fn cmd_table1(c: &Config, out: &mut dyn Write) -> Outcome {
    if c.n_gens != 2 || c.rank != 2 {
        return Err(Failure::usage("table1 is defined for --n-gens 2 --rank 2"));
    }
    let opts = ClassifyOptions {
        p_max: c.depth,
        n_max: c.steps,
        budget: c.budget,
        ..Default::default()
    };
    let rows = table1_rows(&opts)?;
    let matched = rows.iter().filter(|r| r.status == "match").count();
    match c.format() {
        Format::Json => {
            json_line(out, &json!({ "rows": rows, "matched": matched, "total": rows.len() }))?;
        }
        Format::Csv => {
            writeln!(out, "{}", TABLE1_COLUMNS.join(","))?;
            for r in &rows {
                let f: Vec<String> = row_fields(r).iter().map(|s| csv(s)).collect();
                writeln!(out, "{}", f.join(","))?;
            }
        }
        Format::Text => {
            let mut widths = TABLE1_COLUMNS.map(str::len);
            for r in &rows {
                for (w, f) in widths.iter_mut().zip(row_fields(r)) {
                    *w = (*w).max(f.chars().count());
                }
            }
            let line = |fields: [&str; 9]| {
                let cells: Vec<String> = fields
                    .iter()
                    .zip(widths)
                    .map(|(f, w)| format!("{f:<w$}"))
                    .collect();
                cells.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(TABLE1_COLUMNS))?;
            for r in &rows {
                writeln!(out, "{}", line(row_fields(r)))?;
            }
            for r in rows.iter().filter(|r| !r.diagnostics.is_empty()) {
                for d in &r.diagnostics {
                    writeln!(out, "{}: {d}", r.perm)?;
                }
            }
            writeln!(out, "{matched}/{} rows match", rows.len())?;
        }
    }
    Ok(if matched == rows.len() { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_verify(c: &Config, suite: Option<&str>, out: &mut dyn Write) -> Outcome {
    let suites = match suite {
        Some(s) => vec![s.parse::<Suite>()?],
        None => Suite::ALL.to_vec(),
    };
    let reports: Vec<SuiteReport> = suites
        .iter()
        .map(|&s| run_suite(s, c.seed))
        .collect::<Result<_, Error>>()?;
    let passed = reports.iter().all(|r| r.passed);
    match c.format() {
        Format::Json => {
            json_line(out, &json!({ "passed": passed, "suites": reports }))?;
        }
        Format::Csv => {
            writeln!(out, "suite,check,passed,detail,seed")?;
            for r in &reports {
                for ch in &r.checks {
                    writeln!(out, "{},{},{},{},{}", r.suite, csv(&ch.name), ch.passed, csv(&ch.detail), r.seed)?;
                }
            }
        }
        Format::Text => {
            for r in &reports {
                writeln!(out, "{}: {} (seed {})", r.suite, if r.passed { "pass" } else { "FAIL" }, r.seed)?;
                for ch in &r.checks {
                    let mark = if ch.passed { "ok  " } else { "FAIL" };
                    if ch.detail.is_empty() {
                        writeln!(out, "  {mark} {}", ch.name)?;
                    } else {
                        writeln!(out, "  {mark} {}  [{}]", ch.name, ch.detail)?;
                    }
                }
            }
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_norm(c: &Config, out: &mut dyn Write) -> Outcome {
    let x = element(c)?;
    let value = if x.homogeneous_degree().is_some() {
        let v = operator_norm(&x)?;
        json!({ "element": x.to_string(), "norm": v })
    } else {
        let (lower, upper) = norm_bounds(&x)?;
        json!({ "element": x.to_string(), "lower": lower, "upper": upper })
    };
    match c.format() {
        Format::Json => json_line(out, &value),
        _ => {
            match value.get("norm") {
                Some(v) => writeln!(out, "{:.12}", v.as_f64().unwrap_or(f64::NAN))?,
                None => writeln!(
                    out,
                    "not gauge-homogeneous; {:.12} <= norm <= {:.12}",
                    value["lower"].as_f64().unwrap_or(f64::NAN),
                    value["upper"].as_f64().unwrap_or(f64::NAN)
                )?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_psi(c: &Config, out: &mut dyn Write) -> Outcome {
    let x = element(c)?;
    let k = c.rank;
    let m = psi(&x, k);
    let words: Vec<Word> = Word::all(x.n(), k).collect();
    let mut entries = Vec::new();
    for (r, rw) in words.iter().enumerate() {
        for (col, cw) in words.iter().enumerate() {
            let e = m.entry(r, col);
            if !e.is_zero() {
                entries.push((rw.to_string(), cw.to_string(), e.canonicalize().to_string()));
            }
        }
    }
    let decomposition = match lemma1_decompose(&x, k) {
        Ok(d) => Some(d),
        Err(Error::NotHomogeneous) | Err(Error::RankTooSmall { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let parts = match &decomposition {
        Some(d) => d
            .parts
            .iter()
            .map(|(j, t)| Ok((j.to_string(), t.spectral_norm()?, t.to_rows())))
            .collect::<Result<Vec<_>, Error>>()?,
        None => Vec::new(),
    };
    let norm_x = match &decomposition {
        Some(_) => Some(operator_norm(&x)?),
        None => None,
    };
    match c.format() {
        Format::Json => json_line(
            out,
            &json!({
                "element": x.to_string(),
                "k": k,
                "entries": entries.iter().map(|(r, c, e)| json!({ "row": r, "col": c, "entry": e })).collect::<Vec<_>>(),
                "decomposition": decomposition.as_ref().map(|d| json!({
                    "direction": d.direction,
                    "norm_x": norm_x,
                    "parts": parts.iter().map(|(j, n, rows)| json!({ "J": j, "norm": n, "matrix": rows })).collect::<Vec<_>>(),
                })),
            }),
        ),
        _ => {
            writeln!(out, "Psi_{k}({x}):")?;
            for (r, col, e) in &entries {
                writeln!(out, "  [{r}, {col}] {e}")?;
            }
            if let Some(d) = &decomposition {
                writeln!(out, "norm {:.12}", norm_x.unwrap_or(f64::NAN))?;
                writeln!(out, "coefficients ({:?}):", d.direction)?;
                for (j, n, _) in &parts {
                    writeln!(out, "  T[{j}]  norm {n:.12}")?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}
