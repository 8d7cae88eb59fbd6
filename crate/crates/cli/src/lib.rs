//! Rendering, golden-table comparison and command implementations behind the
//! `ttstar` binary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use ttstar_core::case::{in_region, AsymptoticData, KVector};
use ttstar_core::enumeration::{table_rows, Block, CosPair, SolutionRecord};
use ttstar_core::stokes::StokesData;
use ttstar_core::theta::{k_from_tk, tk_from_k, tk_from_shifted};
use ttstar_core::{CaseId, Error, Group, Rational, ThetaPoly};

pub mod golden;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
    Latex,
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Length { .. } | Error::UnknownCase(_) | Error::InvalidConfig(_) => 2,
        Error::Symmetry { .. }
        | Error::OutsideRegion { .. }
        | Error::NonPositiveN(_)
        | Error::Inadmissible { .. }
        | Error::Inconsistent => 3,
        Error::NotReducible(_) | Error::InvalidCi(_) | Error::DegreeMismatch { .. } | Error::NotTkShape(_) => 4,
        Error::NoConvergence { .. } | Error::Singular => 6,
    }
}

pub const EXIT_VERIFY_FAILED: i32 = 5;
pub const EXIT_ASYMPTOTICS_FAILED: i32 = 7;

/// `±n` for a nonzero sign-ambiguous value.
pub fn signed_s1(value: &impl std::fmt::Display, ambiguous: bool) -> String {
    let s = value.to_string();
    if ambiguous && s != "0" {
        format!("±{}", s.trim_start_matches('-'))
    } else {
        s
    }
}

/// One solution as printed in the tables; every value is an exact string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordRow {
    pub case: String,
    pub block: String,
    pub a: String,
    pub b: String,
    pub gamma: String,
    pub delta: String,
    pub s1: String,
    pub s2: String,
    pub k_plus_1: Vec<String>,
    pub tk: String,
}

impl RecordRow {
    pub fn from_record(r: &SolutionRecord) -> Self {
        Self {
            case: r.case.to_string(),
            block: r.block.to_string(),
            a: r.a_label.to_string(),
            b: r.b_label.to_string(),
            gamma: r.asymptotic.gamma.to_string(),
            delta: r.asymptotic.delta.to_string(),
            s1: signed_s1(&r.stokes.0, r.s1_sign_ambiguous),
            s2: r.stokes.1.to_string(),
            k_plus_1: r.k.shifted().iter().map(|x| x.to_string()).collect(),
            tk: r.tk.to_string(),
        }
    }

    /// The eight columns of the golden files.
    pub fn csv_cells(&self) -> [&str; 8] {
        [&self.block, &self.a, &self.b, &self.gamma, &self.delta, &self.s1, &self.s2, &self.tk]
    }
}

pub const CSV_HEADER: &str = "block,a,b,gamma,delta,s1,s2,tk";

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{s}{}", " ".repeat(widths[i] - s.chars().count())))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// `\tfrac{p}{q}`-style rendering of a rational, optionally times π.
pub fn latex_rational(r: &Rational, pi: bool) -> String {
    let sym = if pi { "\\pi" } else { "" };
    if r.is_integer() {
        let n = r.to_integer();
        return match (pi, n.to_string().as_str()) {
            (true, "0") => "0".into(),
            (true, "1") => "\\pi".into(),
            (true, "-1") => "-\\pi".into(),
            (true, s) => format!("{s}\\pi"),
            (false, s) => s.into(),
        };
    }
    let sign = if r < &Rational::from_integer(0.into()) { "-" } else { "" };
    let n = r.numer().magnitude().to_string();
    let d = r.denom().to_string();
    let top = if pi && n == "1" { String::new() } else { n };
    format!("{sign}\\tfrac{{{top}{sym}}}{{{d}}}")
}

/// LaTeX for a factored θ-polynomial.
pub fn latex_theta(t: &ThetaPoly) -> String {
    t.to_string()
        .replace('θ', "\\theta ")
        .replace("\\theta ^", "\\theta^")
        .replace("\\theta -", "\\theta-")
        .replace("\\theta )", "\\theta)")
        .replace("\\theta +", "\\theta+")
        .trim_end()
        .to_string()
}

fn latex_s1(s: &str) -> String {
    s.replace('±', "\\pm ")
}

/// Renders the records of one case.
pub fn render_records(records: &[SolutionRecord], format: OutputFormat) -> String {
    let rows: Vec<RecordRow> = records.iter().map(RecordRow::from_record).collect();
    match format {
        OutputFormat::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in &rows {
                out.push_str(&r.csv_cells().join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
        OutputFormat::Table => {
            let mut table = vec![["block", "(a,b)/π", "(γ,δ)", "(s1,s2)", "T_k"].map(String::from).to_vec()];
            for r in &rows {
                table.push(vec![
                    r.block.clone(),
                    format!("({},{})", r.a, r.b),
                    format!("({},{})", r.gamma, r.delta),
                    format!("({},{})", r.s1, r.s2),
                    r.tk.clone(),
                ]);
            }
            aligned(&table)
        }
        OutputFormat::Latex => {
            let mut out = String::from("\\begin{tabular}{c||c|c|l}\n");
            out.push_str("$(a,b)=\\pi(k\\!+\\!1,l\\!+\\!1)$ & $(\\gamma,\\delta)$ & $(s_1^\\mathbb R,s_2^\\mathbb R)$ & $T_k$\n\\\\\n\\hline\n");
            let mut prev: Option<Block> = None;
            for r in records {
                if prev.is_some_and(|p| p != r.block) {
                    out.push_str("\\hline\n");
                }
                prev = Some(r.block);
                let row = RecordRow::from_record(r);
                let _ = writeln!(
                    out,
                    " $({},{})$ & $({},{})$ & $({},{})$ & ${}$\n\\\\",
                    latex_rational(&r.a_label, true),
                    latex_rational(&r.b_label, true),
                    latex_rational(&r.asymptotic.gamma, false),
                    latex_rational(&r.asymptotic.delta, false),
                    latex_s1(&row.s1),
                    row.s2,
                    latex_theta(&r.tk),
                );
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    }
}

/// Renders several cases, each under a heading (csv gains a `case` column).
pub fn render_all(all: &[(CaseId, Vec<SolutionRecord>)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = format!("case,{CSV_HEADER}\n");
            for (case, recs) in all {
                for r in recs {
                    let row = RecordRow::from_record(r);
                    let _ = writeln!(out, "{case},{}", row.csv_cells().join(","));
                }
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<RecordRow> = all.iter().flat_map(|(_, r)| r.iter().map(RecordRow::from_record)).collect();
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
        OutputFormat::Table | OutputFormat::Latex => all
            .iter()
            .map(|(case, recs)| {
                let head = if format == OutputFormat::Latex { "%" } else { "#" };
                format!("{head} case {case}\n{}", render_records(recs, format))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosPairRow {
    pub a: String,
    pub b: String,
    pub x: String,
    pub y: String,
    pub x_minus_y: i64,
    pub xy: i64,
    pub admissible: bool,
}

impl CosPairRow {
    pub fn from_pair(p: &CosPair) -> Self {
        let one = Rational::from_integer(1.into());
        Self {
            a: p.a_label.to_string(),
            b: p.b_label.to_string(),
            x: p.x.to_string(),
            y: p.y.to_string(),
            x_minus_y: p.m,
            xy: p.p,
            admissible: &p.a_label + &p.b_label <= one,
        }
    }
}

pub fn render_cos_pairs(pairs: &[CosPair], format: OutputFormat) -> String {
    let rows: Vec<CosPairRow> = pairs.iter().map(CosPairRow::from_pair).collect();
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut out = String::from("a,b,x,y,x_minus_y,xy,admissible\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{},{},{},{}", r.a, r.b, r.x, r.y, r.x_minus_y, r.xy, r.admissible);
            }
            out
        }
        OutputFormat::Table => {
            let mut t = vec![["(a,b)/π", "x=2cos aπ", "y=2cos bπ", "x-y", "xy", "a+b≤1"].map(String::from).to_vec()];
            for r in &rows {
                t.push(vec![
                    format!("({},{})", r.a, r.b),
                    r.x.clone(),
                    r.y.clone(),
                    r.x_minus_y.to_string(),
                    r.xy.to_string(),
                    r.admissible.to_string(),
                ]);
            }
            aligned(&t)
        }
        OutputFormat::Latex => {
            let mut out = String::from("\\begin{tabular}{c|c|c}\n$(a,b)$ & $x-y$ & $xy$\n\\\\\n\\hline\n");
            for p in pairs {
                let _ = writeln!(
                    out,
                    " $({},{})$ & ${}$ & ${}$\n\\\\",
                    latex_rational(&p.a_label, true),
                    latex_rational(&p.b_label, true),
                    p.m,
                    p.p
                );
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    }
}

/// The 19 `(γ, δ)` pairs of every group side by side, in the layout of
/// `tables/table3.csv`.
pub fn table3_csv() -> String {
    let cols: Vec<Vec<SolutionRecord>> = Group::ALL.iter().map(|g| table_rows(g.cases()[0], true)).collect();
    let mut out = String::from("block,gamma_4,delta_4,gamma_5ab,delta_5ab,gamma_5cde,delta_5cde,gamma_6,delta_6\n");
    for i in 0..cols[0].len() {
        let blocks: Vec<Block> = cols.iter().map(|c| c[i].block).collect();
        assert!(blocks.iter().all(|b| *b == blocks[0]), "groups disagree on the block of row {i}");
        let cells: Vec<String> = cols
            .iter()
            .flat_map(|c| [c[i].asymptotic.gamma.to_string(), c[i].asymptotic.delta.to_string()])
            .collect();
        let _ = writeln!(out, "{},{}", blocks[0], cells.join(","));
    }
    out
}

/// Output of `convert`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvertRecord {
    pub case: String,
    pub gamma: String,
    pub delta: String,
    pub n_total: String,
    pub k: Vec<String>,
    pub k_plus_1: Vec<String>,
    pub s1: String,
    pub s2: String,
    pub s1_exact: bool,
    pub s2_exact: bool,
    pub s1_approx: f64,
    pub s2_approx: f64,
    pub integral: bool,
    pub tk: String,
}

fn alg_text(x: &ttstar_core::AlgReal) -> (String, bool) {
    match x.as_rational() {
        Some(r) => (r.to_string(), true),
        None => (x.to_string().split(" ≈ ").next().unwrap_or_default().to_string(), false),
    }
}

impl ConvertRecord {
    pub fn new(k: &KVector<Rational>, a: &AsymptoticData<Rational>, s: &StokesData) -> Self {
        let (s1, s1_exact) = alg_text(&s.s1);
        let (s2, s2_exact) = alg_text(&s.s2);
        let integral = ttstar_core::stokes::integral(s).is_some();
        let normalized = k.normalized();
        Self {
            case: k.case().to_string(),
            gamma: a.gamma.to_string(),
            delta: a.delta.to_string(),
            n_total: k.n_total().to_string(),
            k: k.entries().iter().map(|x| x.to_string()).collect(),
            k_plus_1: normalized.shifted().iter().map(|x| x.to_string()).collect(),
            s1: match (s1_exact, s.s1_sign_ambiguous) {
                (true, amb) => signed_s1(&s1, amb),
                (false, true) => format!("±({s1})"),
                (false, false) => s1,
            },
            s2,
            s1_exact,
            s2_exact,
            s1_approx: s.s1.to_f64(),
            s2_approx: s.s2.to_f64(),
            integral,
            tk: tk_from_k(k).to_string(),
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mark = |exact: bool| if exact { "exact" } else { "irrational" };
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("record serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => format!(
                "case,gamma,delta,n,k,k_plus_1,s1,s2,s1_exact,s2_exact,s1_approx,s2_approx,tk\n{},{},{},{},{},{},{},{},{},{},{:.12},{:.12},{}\n",
                self.case,
                self.gamma,
                self.delta,
                self.n_total,
                self.k.join(" "),
                self.k_plus_1.join(" "),
                self.s1,
                self.s2,
                self.s1_exact,
                self.s2_exact,
                self.s1_approx,
                self.s2_approx,
                self.tk
            ),
            OutputFormat::Table => aligned(&[
                vec!["case".into(), self.case.clone()],
                vec!["(γ,δ)".into(), format!("({},{})", self.gamma, self.delta)],
                vec!["N".into(), self.n_total.clone()],
                vec!["k".into(), format!("({})", self.k.join(","))],
                vec!["k+1 (N=1)".into(), format!("({})", self.k_plus_1.join(","))],
                vec!["s1".into(), format!("{} [{}]  approx {:.12}", self.s1, mark(self.s1_exact), self.s1_approx)],
                vec!["s2".into(), format!("{} [{}]  approx {:.12}", self.s2, mark(self.s2_exact), self.s2_approx)],
                vec!["integral".into(), self.integral.to_string()],
                vec!["T_k".into(), self.tk.clone()],
            ]),
            OutputFormat::Latex => format!(
                "$({},{})$ & $({},{})$ & ${}$\n\\\\\n",
                self.gamma,
                self.delta,
                latex_s1(&self.s1),
                self.s2,
                self.tk.replace('θ', "\\theta ")
            ),
        }
    }
}

/// Asymptotic data must lie in the closed region.
pub fn require_region(case: CaseId, a: &AsymptoticData<Rational>) -> Result<(), Error> {
    if in_region(case, a) {
        Ok(())
    } else {
        Err(Error::OutsideRegion {
            case: case.to_string(),
            gamma: a.gamma.to_string(),
            delta: a.delta.to_string(),
        })
    }
}

/// Printed `T_k` whose gaps are a rotation of `k + 1` but which is not the
/// lowest rotation.
pub fn is_non_lowest_rotation(printed: &ThetaPoly, k_plus_1: &[Rational]) -> bool {
    let Ok(gaps) = k_from_tk(printed, k_plus_1.len()) else {
        return false;
    };
    let n = gaps.len();
    let rotation = (0..n).any(|r| (0..n).all(|i| gaps[i] == k_plus_1[(i + r) % n]));
    rotation && tk_from_shifted(&gaps) != *printed
}

/// Printed `T_k` whose gap sequence cannot be read, from any starting point,
/// as `k + 1` of a vector with the symmetry of `case`.
pub fn is_unrealizable(printed: &ThetaPoly, case: CaseId) -> bool {
    let n = case.descriptor().n_plus_1;
    let Ok(gaps) = k_from_tk(printed, n) else {
        return true;
    };
    (0..n).all(|r| {
        let mut g = gaps.clone();
        g.rotate_left(r);
        KVector::from_shifted(case, g).is_err()
    })
}
