//! The solutions with integral Stokes data.
//!
//! Writing `x = 2cos a`, `y = 2cos b`, integrality forces `x − y = m` and
//! `xy = p` to be integers, so `x` and `−y` are the roots of `t² − mt − p`.
//! The pairs are generated from that quadratic and only afterwards named
//! by matching against the cosines of rational multiples of `π`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, Integer, Zero};
use rayon::prelude::*;

use crate::case::{
    center_line_offset, descriptor, in_region, k_to_asymptotic, AsymptoticData, CaseId, Group,
    KVector,
};
use crate::error::Error;
use crate::numtheory::root_order;
use crate::scalar::{int, rat};
use crate::stokes::{angle_offsets, integral, stokes_from_asymptotic, stokes_from_k};
use crate::theta::{tk_from_k, ThetaPoly};
use crate::{AlgReal, Rational};

/// A point `(x, y) = (2cos aπ, 2cos bπ)` with `x − y` and `xy` integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosPair {
    pub x: AlgReal,
    pub y: AlgReal,
    /// `x − y`.
    pub m: i64,
    /// `xy`.
    pub p: i64,
    pub a_label: Rational,
    pub b_label: Rational,
}

/// `(2cos(πj/q), j/q)` for `q ≤ 6`, `0 ≤ j ≤ q`, one entry per value.
fn cosine_dictionary() -> Vec<(AlgReal, Rational)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for q in 1..=6i64 {
        for j in 0..=q {
            let r = rat(j, q);
            if seen.insert(r.clone()) {
                out.push((AlgReal::cos2(&r), r));
            }
        }
    }
    out
}

fn lookup(dict: &[(AlgReal, Rational)], value: f64) -> &(AlgReal, Rational) {
    dict.iter()
        .find(|(x, _)| (x.to_f64() - value).abs() < 1e-9)
        .unwrap_or_else(|| {
            panic!("quadratic root {value} is not 2cos of a rational angle with denominator ≤ 6")
        })
}

/// All 33 pairs, sorted by `(a, b)`.
pub fn enumerate_cos_pairs() -> Vec<CosPair> {
    let dict = cosine_dictionary();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in -4i64..=4 {
        for p in -4i64..=4 {
            let disc = (m * m + 4 * p) as f64;
            if disc < 0.0 {
                continue;
            }
            let r1 = (m as f64 + disc.sqrt()) / 2.0;
            let r2 = (m as f64 - disc.sqrt()) / 2.0;
            // x is one root and −y the other.
            for (xf, yf) in [(r1, -r2), (r2, -r1)] {
                let inside = |t: f64| t.abs() <= 2.0 + 1e-9;
                if !inside(xf) || !inside(yf) {
                    continue;
                }
                let (x, a) = lookup(&dict, xf).clone();
                let (y, b) = lookup(&dict, yf).clone();
                let mm = AlgReal::from_i64(m);
                let pp = AlgReal::from_i64(p);
                assert_eq!(&x * &x - &mm * &x - &pp, AlgReal::zero());
                assert_eq!(&y * &y + &mm * &y - &pp, AlgReal::zero());
                assert_eq!(&x - &y, mm);
                assert_eq!(&x * &y, pp);
                if seen.insert((x.clone(), y.clone())) {
                    out.push(CosPair {
                        x,
                        y,
                        m,
                        p,
                        a_label: a,
                        b_label: b,
                    });
                }
            }
        }
    }
    out.sort_by(|u, v| (&u.a_label, &u.b_label).cmp(&(&v.a_label, &v.b_label)));
    out
}

/// Position of a point in the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    TopEdge,
    LeftEdge,
    DiagonalEdge,
    CenterLine,
    OtherInterior,
}

impl Block {
    pub const ALL: [Block; 5] = [
        Block::TopEdge,
        Block::LeftEdge,
        Block::DiagonalEdge,
        Block::CenterLine,
        Block::OtherInterior,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Block::TopEdge => "top-edge",
            Block::LeftEdge => "left-edge",
            Block::DiagonalEdge => "diagonal-edge",
            Block::CenterLine => "center-line",
            Block::OtherInterior => "other-interior",
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Block {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Block::ALL
            .into_iter()
            .find(|b| b.label() == s)
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

/// Block of a point from its asymptotic data; at vertices the earlier block
/// wins.
pub fn classify(group: Group, a: &AsymptoticData<Rational>) -> Block {
    let (ea, eb) = group.ab();
    if a.delta == int(2) / int(eb as i64) {
        Block::TopEdge
    } else if a.gamma == int(-2) / int(ea as i64) {
        Block::LeftEdge
    } else if &a.gamma - &a.delta == int(2) {
        Block::DiagonalEdge
    } else if &a.gamma + &a.delta == center_line_offset::<Rational>(group) {
        Block::CenterLine
    } else {
        Block::OtherInterior
    }
}

/// Block of a point from its angle labels.
pub fn classify_labels(a: &Rational, b: &Rational) -> Block {
    if b.is_zero() {
        Block::TopEdge
    } else if a.is_zero() {
        Block::LeftEdge
    } else if a + b == int(1) {
        Block::DiagonalEdge
    } else if a == b {
        Block::CenterLine
    } else {
        Block::OtherInterior
    }
}

/// Table order: by block; along the top edge and the center line by
/// decreasing `a`, along the left edge by increasing `b`, along the
/// diagonal by increasing `a`. The other interior points come as nested
/// mirror pairs: those with `a > b` by decreasing `a`, then their mirrors by
/// increasing `a`.
pub fn label_order(p: (&Rational, &Rational), q: (&Rational, &Rational)) -> Ordering {
    let (bp, bq) = (classify_labels(p.0, p.1), classify_labels(q.0, q.1));
    bp.cmp(&bq).then_with(|| match bp {
        Block::LeftEdge => p.1.cmp(q.1),
        Block::DiagonalEdge => p.0.cmp(q.0),
        Block::OtherInterior => (p.0 < p.1)
            .cmp(&(q.0 < q.1))
            .then_with(|| if p.0 < p.1 { p.0.cmp(q.0) } else { q.0.cmp(p.0) }),
        _ => q.0.cmp(p.0),
    })
}

/// The 19 points with `a + b ≤ 1`, in table order.
pub fn admissible_points() -> Vec<(Rational, Rational)> {
    let mut pts: Vec<_> = enumerate_cos_pairs()
        .into_iter()
        .filter(|c| &c.a_label + &c.b_label <= int(1))
        .map(|c| (c.a_label, c.b_label))
        .collect();
    pts.sort_by(|p, q| label_order((&p.0, &p.1), (&q.0, &q.1)));
    pts
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub case: CaseId,
    pub a_label: Rational,
    pub b_label: Rational,
    pub asymptotic: AsymptoticData<Rational>,
    /// `(s₁, s₂)`, with `|s₁|` when `s1_sign_ambiguous`.
    pub stokes: (BigInt, BigInt),
    pub s1_sign_ambiguous: bool,
    pub k: KVector<Rational>,
    pub tk: ThetaPoly<Rational>,
    pub block: Block,
}

/// Holomorphic data of the point labelled `(a, b)`: `k + 1 = a/m_k`,
/// `l + 1 = b/m_l`, the rest by symmetry and `N = 1`.
pub fn k_for_labels(case: CaseId, a: &Rational, b: &Rational) -> Result<KVector<Rational>, Error> {
    let (mk, ml) = descriptor(case).angle_mult;
    KVector::from_kl(case, a / int(mk as i64), b / int(ml as i64), int(1))
}

pub fn record_for_labels(case: CaseId, a: &Rational, b: &Rational) -> Result<SolutionRecord, Error> {
    let k = k_for_labels(case, a, b)?;
    let asymptotic = k_to_asymptotic(&k);
    let s = stokes_from_k(&k);
    let stokes = integral(&s).unwrap_or_else(|| {
        panic!("case {case}, point ({a},{b}): Stokes data {} / {} is not integral", s.s1, s.s2)
    });
    Ok(SolutionRecord {
        case,
        a_label: a.clone(),
        b_label: b.clone(),
        block: classify(case.group(), &asymptotic),
        asymptotic,
        stokes,
        s1_sign_ambiguous: s.s1_sign_ambiguous,
        tk: tk_from_k(&k),
        k,
    })
}

/// The 19 solutions of a case, in table order.
pub fn integral_solutions(case: CaseId) -> Vec<SolutionRecord> {
    admissible_points()
        .iter()
        .map(|(a, b)| record_for_labels(case, a, b).expect("every case system is uniquely solvable"))
        .collect()
}

/// The rows printed in the appendix tables: for even `n + 1` only the 12
/// points with `a ≥ b`.
pub fn table_rows(case: CaseId, full: bool) -> Vec<SolutionRecord> {
    let even = descriptor(case).n_plus_1.is_multiple_of(2);
    integral_solutions(case)
        .into_iter()
        .filter(|r| full || !even || r.a_label >= r.b_label)
        .collect()
}

/// All ten cases, computed in parallel, in case order.
pub fn all_integral_solutions() -> Vec<(CaseId, Vec<SolutionRecord>)> {
    CaseId::ALL
        .par_iter()
        .map(|&c| (c, integral_solutions(c)))
        .collect()
}

/// Statistics of a brute-force sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepResult {
    pub grid_points: usize,
    pub candidates: usize,
    pub integral: Vec<AsymptoticData<Rational>>,
}

/// Orders `ord` of `e^{iπr}` for which `2cos(πr)` has degree at most 2.
fn low_degree_order(ord: usize) -> bool {
    matches!(ord, 1 | 2 | 3 | 4 | 5 | 6 | 8 | 10 | 12)
}

/// Reduced fractions `p/q` with `q ≤ max_den` in `[lo, hi]`, ascending.
fn farey_range(lo: &Rational, hi: &Rational, max_den: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for q in 1..=max_den {
        let pmin: BigInt = (lo * int(q)).ceil().to_integer();
        let pmax: BigInt = (hi * int(q)).floor().to_integer();
        let (pmin, pmax): (i64, i64) = (pmin.try_into().unwrap(), pmax.try_into().unwrap());
        for p in pmin..=pmax {
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
    out
}

/// Scans every `(γ, δ)` in the closed region of `case` with both
/// denominators at most `max_den`, returning the points whose Stokes data is
/// integral. With `degree_filter`, a coordinate is skipped unless its cosine
/// is an algebraic integer of degree at most 2, which integrality requires.
pub fn brute_force_sweep(case: CaseId, max_den: i64, degree_filter: bool) -> SweepResult {
    let group = case.group();
    let (ea, eb) = group.ab();
    let g_lo = int(-2) / int(ea as i64);
    let d_hi = int(2) / int(eb as i64);
    let gammas = farey_range(&g_lo, &(&d_hi + int(2)), max_den);
    let deltas = farey_range(&(&g_lo - int(2)), &d_hi, max_den);
    let (go, dof, m) = angle_offsets(group);
    let keep = |(p, q): (i64, i64), off: i64| -> bool {
        !degree_filter || low_degree_order(root_order(p + off * q, m * q))
    };
    let gs: Vec<(i64, i64)> = gammas.into_iter().filter(|&g| keep(g, go)).collect();
    let ds: Vec<(i64, i64)> = deltas.into_iter().filter(|&d| keep(d, dof)).collect();

    let results: Vec<(usize, usize, Vec<AsymptoticData<Rational>>)> = gs
        .par_iter()
        .map(|&(gp, gq)| {
            let gamma = rat(gp, gq);
            let mut seen = 0;
            let mut cands = 0;
            let mut found = Vec::new();
            for &(dp, dq) in &ds {
                let a = AsymptoticData::new(gamma.clone(), rat(dp, dq));
                if !in_region(case, &a) {
                    continue;
                }
                seen += 1;
                cands += 1;
                if integral(&stokes_from_asymptotic(case, &a)).is_some() {
                    found.push(a);
                }
            }
            (seen, cands, found)
        })
        .collect();
    let mut out = SweepResult {
        grid_points: 0,
        candidates: 0,
        integral: Vec::new(),
    };
    for (s, c, f) in results {
        out.grid_points += s;
        out.candidates += c;
        out.integral.extend(f);
    }
    if degree_filter {
        // Count the full grid for reporting.
        out.grid_points = count_region_points(case, max_den);
    }
    out
}

/// Number of `(γ, δ)` grid points in the closed region.
pub fn count_region_points(case: CaseId, max_den: i64) -> usize {
    let (ea, eb) = case.group().ab();
    let g_lo = int(-2) / int(ea as i64);
    let d_hi = int(2) / int(eb as i64);
    let gammas = farey_range(&g_lo, &(&d_hi + int(2)), max_den);
    let deltas = farey_range(&(&g_lo - int(2)), &d_hi, max_den);
    gammas
        .par_iter()
        .map(|&(gp, gq)| {
            // δ ≥ γ − 2, compared exactly.
            deltas
                .iter()
                .filter(|&&(dp, dq)| (gp - 2 * gq) * dq <= dp * gq)
                .count()
        })
        .sum()
}
