//! Quantum differential operators of weighted projective spaces and their
//! complete intersections, and their comparison with the `T_k` operators.
//!
//! For `X^{v_0,…,v_p}_{d_1,…,d_m}` the operator is obtained by left-dividing
//! `∏ v_i^{v_i} λ^{Σv} ∏_i ∏_{j<v_i} (θ − j/v_i) − ∏ d_j^{d_j} λ^{Σd} ∏_j ∏_{i<d_j} (θ − i/d_j) z`
//! by the common factor of its two summands. All factors are linear in `θ`,
//! so the division is a subtraction of root multisets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::case::{CaseId, Group, KVector};
use crate::enumeration::{record_for_labels, Block};
use crate::error::Error;
use crate::numtheory::mobius;
use crate::scalar::{int, rat};
use crate::stokes::{integral, stokes_from_k};
use crate::theta::{a_n_operator, check_g, check_q, k_from_tk, multiset_difference, tk_from_k, ThetaPoly};
use crate::Rational;

/// Weights `v_i` and hypersurface degrees `d_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CISpec {
    weights: Vec<u32>,
    degrees: Vec<u32>,
}

impl CISpec {
    pub fn new(mut weights: Vec<u32>, mut degrees: Vec<u32>) -> Result<Self, Error> {
        if weights.is_empty() {
            return Err(Error::InvalidCi("at least one weight is required".into()));
        }
        if weights.iter().chain(&degrees).any(|&x| x == 0) {
            return Err(Error::InvalidCi("weights and degrees must be positive".into()));
        }
        let sv: u32 = weights.iter().sum();
        let sd: u32 = degrees.iter().sum();
        if sv <= sd {
            return Err(Error::InvalidCi(format!(
                "sum of weights {sv} must exceed sum of degrees {sd}"
            )));
        }
        weights.sort_unstable();
        degrees.sort_unstable();
        Ok(Self { weights, degrees })
    }

    /// Weighted projective space.
    pub fn projective(weights: Vec<u32>) -> Result<Self, Error> {
        Self::new(weights, Vec::new())
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn weight_sum(&self) -> u32 {
        self.weights.iter().sum()
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for CISpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            write!(f, "P^{{{}}}", join(&self.weights))
        } else {
            write!(f, "X^{{{}}}_{{{}}}", join(&self.weights), join(&self.degrees))
        }
    }
}

impl FromStr for CISpec {
    type Err = Error;

    /// Parses `P^{1,2,3}` or `X^{1,1,4}_{2}` (braces optional for single
    /// digits, as in `P^3`-free forms like `X^{1,1,4}_2`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::Parse(s.to_string());
        let s = s.trim();
        let (kind, rest) = s.split_at(1.min(s.len()));
        let rest = rest.strip_prefix('^').ok_or_else(err)?;
        let list = |t: &str| -> Result<Vec<u32>, Error> {
            let t = t.trim_start_matches('{').trim_end_matches('}');
            t.split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| err()))
                .collect()
        };
        match kind {
            "P" => Self::projective(list(rest)?),
            "X" => {
                let (w, d) = rest.split_once('_').ok_or_else(err)?;
                Self::new(list(w)?, list(d)?)
            }
            _ => Err(err()),
        }
    }
}

/// `λ^h θ-poly − z`, with the θ-polynomial made monic. `scalar` keeps the
/// discarded leading coefficient `∏ v^v / ∏ d^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Qdo {
    pub lambda_power: u32,
    pub theta: ThetaPoly<Rational>,
    pub scalar: Rational,
}

impl fmt::Display for Qdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ^{} {} - z", self.lambda_power, self.theta)
    }
}

/// `0, 1/w, …, (w−1)/w`.
fn block_roots(w: u32) -> impl Iterator<Item = Rational> {
    (0..w).map(move |j| rat(j as i64, w as i64))
}

fn sorted_roots(ws: &[u32]) -> Vec<Rational> {
    let mut r: Vec<Rational> = ws.iter().flat_map(|&w| block_roots(w)).collect();
    r.sort();
    r
}

fn power_product(ws: &[u32]) -> BigInt {
    ws.iter()
        .fold(BigInt::one(), |acc, &w| acc * num::pow(BigInt::from(w), w as usize))
}

pub fn qdo_from_ci(spec: &CISpec) -> Result<Qdo, Error> {
    let a = sorted_roots(&spec.weights);
    let b = sorted_roots(&spec.degrees);
    let roots = multiset_difference(&a, &b).ok_or_else(|| {
        Error::NotReducible(format!(
            "the roots of the degree factor of {spec} are not all roots of the weight factor"
        ))
    })?;
    Ok(Qdo {
        lambda_power: spec.weight_sum() - spec.degrees.iter().sum::<u32>(),
        theta: ThetaPoly::monic(roots),
        scalar: BigRational::new(power_product(&spec.weights), power_product(&spec.degrees)),
    })
}

/// The complete intersection with the smallest weight sum whose operator has
/// exactly these θ-roots, if any.
///
/// The multiplicity of a root `x ∈ [0,1)` in the operator of `(V, D)` is
/// `g(q) = #{v ∈ V : q | v} − #{d ∈ D : q | d}` with `q` the denominator of
/// `x`, so the roots determine `c(e) = #{v = e} − #{d = e}` by Möbius
/// inversion, `c(e) = Σ_m μ(m) g(em)`. Adding the same value to `V` and `D`
/// leaves the roots unchanged, so the minimal spec puts the positive part of
/// `c` in `V` and the negative part in `D`.
pub fn minimal_ci_for_roots(roots: &[Rational]) -> Option<CISpec> {
    if roots.is_empty() {
        return None;
    }
    let mut mult: BTreeMap<&Rational, usize> = BTreeMap::new();
    for r in roots {
        if r.is_negative() || *r >= int(1) {
            return None;
        }
        *mult.entry(r).or_default() += 1;
    }
    let mut g: BTreeMap<usize, usize> = BTreeMap::new();
    for (r, &m) in &mult {
        let q = r.denom().to_usize()?;
        match g.insert(q, m) {
            Some(prev) if prev != m => return None,
            _ => {}
        }
    }
    // Every reduced fraction with a denominator in use must appear equally often.
    for (&q, &m) in &g {
        let count = (0..q)
            .filter(|&j| num::integer::gcd(j, q) == 1 || q == 1)
            .filter(|&j| mult.get(&rat(j as i64, q as i64)).copied() == Some(m))
            .count();
        if count != crate::numtheory::euler_phi(q) {
            return None;
        }
    }
    let max_q = *g.keys().next_back()?;
    let gv = |q: usize| g.get(&q).copied().unwrap_or(0) as i64;
    let mut weights = Vec::new();
    let mut degrees = Vec::new();
    for e in 1..=max_q {
        let c: i64 = (1..=max_q / e).map(|m| mobius(m) * gv(e * m)).sum();
        let target = if c > 0 { &mut weights } else { &mut degrees };
        target.extend(std::iter::repeat_n(e as u32, c.unsigned_abs() as usize));
    }
    let spec = CISpec::new(weights, degrees).ok()?;
    debug_assert_eq!(
        qdo_from_ci(&spec).map(|q| q.theta.roots().to_vec()).ok(),
        Some(roots.to_vec())
    );
    Some(spec)
}

/// A complete intersection with `Σv ≤ bound` realizing `t`, if one exists.
pub fn match_ci(t: &ThetaPoly<Rational>, bound: u32) -> Option<CISpec> {
    minimal_ci_for_roots(t.roots()).filter(|s| s.weight_sum() <= bound)
}

/// One row of the catalog: a space and the point of the region whose
/// holomorphic data it explains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: CISpec,
    pub block: Block,
    pub a_label: Rational,
    pub b_label: Rational,
}

const TOP: [(i64, i64); 5] = [(1, 1), (2, 3), (1, 2), (1, 3), (0, 1)];
const LEFT: [(i64, i64); 4] = [(1, 3), (1, 2), (2, 3), (1, 1)];

/// The spaces attached to the edge points of each group, top edge first.
pub fn catalog(group: Group) -> Vec<CatalogEntry> {
    let names: [&str; 9] = match group {
        Group::G4 => [
            "P^{1,1,1,1}",
            "X^{1,1,1,6}_{2,3}",
            "X^{1,1,4}_{2}",
            "P^{1,3}",
            "P^{2,2}",
            "P^{1,3}",
            "X^{1,1,4}_{2}",
            "X^{1,1,1,6}_{2,3}",
            "P^{1,1,1,1}",
        ],
        Group::G5ab => [
            "P^{1,1,1,1,1}",
            "X^{1,1,1,1,6}_{2,3}",
            "X^{1,1,1,4}_{2}",
            "P^{1,1,3}",
            "P^{1,2,2}",
            "P^{2,3}",
            "P^{1,4}",
            "X^{1,1,6}_{3}",
            "P^{1,1,1,2}",
        ],
        Group::G5cde => [
            "P^{1,1,1,2}",
            "X^{1,1,6}_{3}",
            "P^{1,4}",
            "P^{2,3}",
            "P^{1,2,2}",
            "P^{1,1,3}",
            "X^{1,1,1,4}_{2}",
            "X^{1,1,1,1,6}_{2,3}",
            "P^{1,1,1,1,1}",
        ],
        Group::G6 => [
            "P^{1,1,1,1,2}",
            "X^{1,1,1,6}_{3}",
            "P^{1,1,4}",
            "P^{1,2,3}",
            "P^{2,2,2}",
            "P^{1,2,3}",
            "P^{1,1,4}",
            "X^{1,1,1,6}_{3}",
            "P^{1,1,1,1,2}",
        ],
    };
    let points = TOP
        .iter()
        .map(|&(n, d)| (Block::TopEdge, rat(n, d), int(0)))
        .chain(LEFT.iter().map(|&(n, d)| (Block::LeftEdge, int(0), rat(n, d))));
    names
        .iter()
        .zip(points)
        .map(|(name, (block, a, b))| CatalogEntry {
            spec: name.parse().expect("catalog names are well formed"),
            block,
            a_label: a,
            b_label: b,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogCheck {
    pub entry: CatalogEntry,
    pub expected: ThetaPoly<Rational>,
    pub got: Result<Qdo, Error>,
    pub ok: bool,
}

/// Verdict on one operator met in the converse sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepItem {
    pub tk: ThetaPoly<Rational>,
    pub k_plus_1: Vec<Rational>,
    pub integral: bool,
    pub ci: Option<CISpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryReport {
    pub case: CaseId,
    pub bound: u32,
    pub ci_bound: u32,
    pub catalog: Vec<CatalogCheck>,
    /// Distinct operators satisfying (Q) and (G) in the sweep.
    pub qg_operators: Vec<SweepItem>,
    /// Sweep points examined.
    pub swept: usize,
    /// Integral operators satisfying (Q) and (G) with no matching space.
    pub integral_unmatched: Vec<SweepItem>,
    /// Non-integral operators satisfying (Q) and (G) that match a space.
    pub nonintegral_matched: Vec<SweepItem>,
    /// Operators of `A_n` type met in the sweep (these fail (Q)).
    pub a_n_type: Vec<ThetaPoly<Rational>>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.catalog.iter().all(|c| c.ok)
            && self.integral_unmatched.is_empty()
            && self.nonintegral_matched.is_empty()
    }

    /// Non-integral operators with (Q) and (G) that no space explains.
    pub fn abstract_only(&self) -> impl Iterator<Item = &SweepItem> {
        self.qg_operators.iter().filter(|i| !i.integral && i.ci.is_none())
    }

    /// Description of the first failing item.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(c) = self.catalog.iter().find(|c| !c.ok) {
            let got = match &c.got {
                Ok(q) => q.to_string(),
                Err(e) => e.to_string(),
            };
            return Some(format!(
                "catalog entry {} at ({},{}): expected λ^{} {} - z, got {}",
                c.entry.spec,
                c.entry.a_label,
                c.entry.b_label,
                c.expected.degree(),
                c.expected,
                got
            ));
        }
        if let Some(i) = self.integral_unmatched.first() {
            return Some(format!("integral operator {} matches no space", i.tk));
        }
        self.nonintegral_matched.first().map(|i| {
            format!(
                "non-integral operator {} matches {}",
                i.tk,
                i.ci.as_ref().expect("matched")
            )
        })
    }
}

/// Checks a catalog against the integral solutions of `case`.
pub fn check_catalog(case: CaseId, entries: &[CatalogEntry]) -> Vec<CatalogCheck> {
    let n_plus_1 = case.descriptor().n_plus_1 as u32;
    entries
        .iter()
        .map(|e| {
            let rec = record_for_labels(case, &e.a_label, &e.b_label)
                .expect("catalog points are admissible");
            let got = qdo_from_ci(&e.spec);
            let ok = matches!(&got, Ok(q) if q.lambda_power == n_plus_1 && q.theta == rec.tk)
                && rec.block == e.block;
            CatalogCheck {
                entry: e.clone(),
                expected: rec.tk,
                got,
                ok,
            }
        })
        .collect()
}

/// Reduced fractions in `[0, 1]` with denominator at most `bound`.
fn unit_fractions(bound: i64) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=bound)
        .flat_map(|q| (0..=q).map(move |p| rat(p, q)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// The catalog check plus a sweep over holomorphic data of `case` whose
/// two free entries have denominators at most `bound`: among operators
/// satisfying (Q) and (G), integral ones must match a space and
/// non-integral ones must match none with `Σv ≤ bound·(n+1)`.
pub fn verify_corollary(case: CaseId, bound: u32) -> CorollaryReport {
    verify_corollary_with(case, bound, &catalog(case.group()))
}

pub fn verify_corollary_with(case: CaseId, bound: u32, entries: &[CatalogEntry]) -> CorollaryReport {
    let d = case.descriptor();
    let n_plus_1 = d.n_plus_1;
    let ci_bound = bound * n_plus_1 as u32;
    let fr = unit_fractions(bound as i64);
    let pairs: Vec<(Rational, Rational)> = fr
        .iter()
        .flat_map(|x| fr.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let a_n = a_n_operator(n_plus_1);

    let mut items: Vec<(ThetaPoly<Rational>, Vec<Rational>, bool, bool)> = pairs
        .par_iter()
        .filter_map(|(x, y)| {
            let k = KVector::from_kl(case, x.clone(), y.clone(), int(1)).ok()?;
            if !k.is_admissible() {
                return None;
            }
            let tk = tk_from_k(&k);
            let gaps = k_from_tk(&tk, n_plus_1).expect("T_k has the right shape");
            let qg = check_q(&gaps) && check_g(&tk);
            let integral = qg && integral(&stokes_from_k(&k)).is_some();
            Some((tk, k.shifted(), qg, integral))
        })
        .collect();
    let swept = items.len();
    let a_n_type = {
        let mut v: Vec<_> = items.iter().filter(|i| i.0 == a_n).map(|i| i.0.clone()).collect();
        v.dedup();
        v
    };
    items.retain(|i| i.2);
    items.sort_by(|p, q| p.0.roots().cmp(q.0.roots()).then(p.3.cmp(&q.3)));
    items.dedup_by(|p, q| p.0 == q.0 && p.3 == q.3);

    let qg_operators: Vec<SweepItem> = items
        .into_iter()
        .map(|(tk, k_plus_1, _, integral)| SweepItem {
            ci: match_ci(&tk, ci_bound),
            tk,
            k_plus_1,
            integral,
        })
        .collect();
    CorollaryReport {
        case,
        bound,
        ci_bound,
        catalog: check_catalog(case, entries),
        swept,
        integral_unmatched: qg_operators
            .iter()
            .filter(|i| i.integral && i.ci.is_none())
            .cloned()
            .collect(),
        nonintegral_matched: qg_operators
            .iter()
            .filter(|i| !i.integral && i.ci.is_some())
            .cloned()
            .collect(),
        qg_operators,
        a_n_type,
    }
}

/// Whether `qdo` is `λ^{n+1} T_k − z` for an integral solution of `case`;
/// returns the matching `(a, b)` labels.
pub fn find_record(case: CaseId, qdo: &Qdo) -> Vec<(Rational, Rational)> {
    if qdo.lambda_power as usize != case.descriptor().n_plus_1 {
        return Vec::new();
    }
    crate::enumeration::integral_solutions(case)
        .into_iter()
        .filter(|r| r.tk == qdo.theta)
        .map(|r| (r.a_label, r.b_label))
        .collect()
}

/// Brute-force search over all specs with `Σv ≤ bound`: every spec whose
/// operator has roots `roots`. Exponential; intended for cross-checks with
/// small bounds.
pub fn brute_force_matches(roots: &[Rational], bound: u32) -> Vec<CISpec> {
    let target = roots.to_vec();
    let mut out = Vec::new();
    for sv in 1..=bound {
        for weights in partitions(sv) {
            for sd in 0..sv {
                // The θ-degree is Σv − Σd.
                if (sv - sd) as usize != target.len() {
                    continue;
                }
                for degrees in partitions(sd) {
                    if let Ok(spec) = CISpec::new(weights.clone(), degrees) {
                        if matches!(qdo_from_ci(&spec), Ok(q) if q.theta.roots() == target.as_slice()) {
                            out.push(spec);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Partitions of `n` as nondecreasing part lists (`n = 0` gives `[[]]`).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            let mut p = prefix.clone();
            p.reverse();
            out.push(p);
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
