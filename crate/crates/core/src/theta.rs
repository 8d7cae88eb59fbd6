//! Polynomials in the Euler operator `θ = z d/dz` that split into linear
//! factors, and the operators `T_k` built from holomorphic data.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::case::KVector;
use crate::error::Error;
use crate::scalar::{parse_rational, Field};

/// `coeff · ∏ (θ − r)` over the multiset of roots, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaPoly<T> {
    coeff: T,
    roots: Vec<T>,
}

fn sort_roots<T: PartialOrd>(roots: &mut [T]) {
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
}

impl<T: Field> ThetaPoly<T> {
    pub fn new(coeff: T, mut roots: Vec<T>) -> Result<Self, Error> {
        if coeff.is_zero() {
            return Err(Error::NotTkShape("zero leading coefficient".into()));
        }
        sort_roots(&mut roots);
        Ok(Self { coeff, roots })
    }

    pub fn monic(mut roots: Vec<T>) -> Self {
        sort_roots(&mut roots);
        Self {
            coeff: T::one(),
            roots,
        }
    }

    pub fn coeff(&self) -> &T {
        &self.coeff
    }

    pub fn roots(&self) -> &[T] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn is_monic(&self) -> bool {
        self.coeff.is_one()
    }

    pub fn normalized(&self) -> Self {
        Self {
            coeff: T::one(),
            roots: self.roots.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        sort_roots(&mut roots);
        Self {
            coeff: self.coeff.clone() * other.coeff.clone(),
            roots,
        }
    }

    /// Exact quotient, if every root of `divisor` is a root of `self`
    /// (with multiplicity).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let roots = multiset_difference(&self.roots, &divisor.roots)?;
        Some(Self {
            coeff: self.coeff.clone() / divisor.coeff.clone(),
            roots,
        })
    }

    pub fn eval(&self, x: &T) -> T {
        self.roots
            .iter()
            .fold(self.coeff.clone(), |acc, r| acc * (x.clone() - r.clone()))
    }

    /// Expanded coefficients, constant term first.
    pub fn coefficients(&self) -> Vec<T> {
        let mut c = vec![self.coeff.clone()];
        for r in &self.roots {
            let mut next = vec![T::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + ci.clone();
                next[i] = next[i].clone() - ci.clone() * r.clone();
            }
            c = next;
        }
        c
    }
}

/// `a − b` for sorted multisets, or `None` unless `b ⊆ a`.
pub fn multiset_difference<T: PartialOrd + Clone>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    let mut out = Vec::with_capacity(a.len().saturating_sub(b.len()));
    let mut j = 0;
    for x in a {
        if j < b.len() && b[j] == *x {
            j += 1;
        } else if j < b.len() && b[j] < *x {
            return None;
        } else {
            out.push(x.clone());
        }
    }
    (j == b.len()).then_some(out)
}

/// Index of the lexicographically smallest cyclic rotation.
pub fn lowest_rotation<T: PartialOrd>(v: &[T]) -> usize {
    let n = v.len();
    let key = |j: usize| (0..n).map(move |i| &v[(j + i) % n]);
    (1..n).fold(0, |best, j| {
        let ord = key(j)
            .zip(key(best))
            .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        if ord == Ordering::Less {
            j
        } else {
            best
        }
    })
}

/// `T_k = θ ∏_{t=1}^{n} (θ − (k_j+1) − ⋯ − (k_{j+t−1}+1))` for the lowest
/// rotation `j` of `k + 1`. The data is rescaled to `N = 1` first.
pub fn tk_from_k<T: Field>(k: &KVector<T>) -> ThetaPoly<T> {
    tk_from_shifted(&k.normalized().shifted())
}

/// [`tk_from_k`] on the raw cyclic sequence `k_i + 1` (assumed to sum to 1).
pub fn tk_from_shifted<T: Field>(shifted: &[T]) -> ThetaPoly<T> {
    let n = shifted.len();
    let j = lowest_rotation(shifted);
    let mut roots = Vec::with_capacity(n);
    let mut acc = T::zero();
    roots.push(acc.clone());
    for i in 0..n - 1 {
        acc = acc + shifted[(j + i) % n].clone();
        roots.push(acc.clone());
    }
    ThetaPoly::monic(roots)
}

/// Recovers the cyclic sequence `k_i + 1` from a `T_k`: consecutive root
/// gaps followed by the wrap-around gap `1 − max root`.
pub fn k_from_tk<T: Field>(t: &ThetaPoly<T>, n_plus_1: usize) -> Result<Vec<T>, Error> {
    if t.degree() != n_plus_1 {
        return Err(Error::DegreeMismatch {
            expected: n_plus_1,
            got: t.degree(),
        });
    }
    check_tk_shape(t)?;
    let r = t.roots();
    let mut gaps: Vec<T> = r.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    gaps.push(T::one() - r[r.len() - 1].clone());
    Ok(gaps)
}

fn check_tk_shape<T: Field>(t: &ThetaPoly<T>) -> Result<(), Error> {
    if !t.is_monic() {
        return Err(Error::NotTkShape("operator is not monic".into()));
    }
    match t.roots().first() {
        Some(r) if r.is_zero() => {}
        _ => return Err(Error::NotTkShape("smallest root must be 0".into())),
    }
    if t.roots().iter().any(|r| *r >= T::one()) {
        return Err(Error::NotTkShape("roots must lie in [0,1)".into()));
    }
    Ok(())
}

/// Condition (Q): some `k_i + 1` vanishes.
pub fn check_q<T: Field>(gaps: &[T]) -> bool {
    gaps.iter().any(|g| g.is_zero())
}

fn frac_one_minus<T: Field>(x: &T) -> T {
    if x.is_zero() {
        T::zero()
    } else {
        T::one() - x.clone()
    }
}

/// Condition (G): the roots after the first form a multiset closed under
/// `x ↦ 1 − x (mod 1)`.
pub fn check_g<T: Field>(t: &ThetaPoly<T>) -> bool {
    if check_tk_shape(t).is_err() {
        return false;
    }
    let rest = &t.roots()[1..];
    let mut mirrored: Vec<T> = rest.iter().map(frac_one_minus).collect();
    sort_roots(&mut mirrored);
    mirrored.as_slice() == rest
}

/// The operator `θ(θ − 1/(n+2))⋯(θ − n/(n+2))` of an `A_n` singularity.
pub fn a_n_operator(n_plus_1: usize) -> ThetaPoly<BigRational> {
    let m = BigInt::from(n_plus_1 as u64 + 1);
    ThetaPoly::monic(
        (0..n_plus_1)
            .map(|j| BigRational::new(BigInt::from(j as u64), m.clone()))
            .collect(),
    )
}

impl fmt::Display for ThetaPoly<BigRational> {
    /// Factored form with all nonzero roots over their common denominator
    /// and repeated factors grouped, e.g. `θ^2(θ-2/6)(θ-3/6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.coeff.is_one() {
            write!(f, "{}·", self.coeff)?;
        }
        if self.roots.is_empty() {
            return f.write_str("1");
        }
        let l = self
            .roots
            .iter()
            .filter(|r| !r.is_zero())
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut i = 0;
        while i < self.roots.len() {
            let r = &self.roots[i];
            let mult = self.roots[i..].iter().take_while(|x| *x == r).count();
            if r.is_zero() {
                f.write_str("θ")?;
            } else {
                let num = r.numer() * (&l / r.denom());
                let sign = if num < BigInt::zero() { '+' } else { '-' };
                let mag = if num < BigInt::zero() { -num } else { num };
                if l.is_one() {
                    write!(f, "(θ{sign}{mag})")?;
                } else {
                    write!(f, "(θ{sign}{mag}/{l})")?;
                }
            }
            if mult > 1 {
                write!(f, "^{mult}")?;
            }
            i += mult;
        }
        Ok(())
    }
}

impl FromStr for ThetaPoly<BigRational> {
    type Err = Error;

    /// Inverse of `Display`; also accepts `t` or `theta` for `θ`, `*` for
    /// `·`, and the Unicode minus sign.
    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::Parse(s.to_string());
        let cleaned: String = s
            .replace("theta", "θ")
            .replace('t', "θ")
            .replace('−', "-")
            .replace('*', "·")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let (coeff, mut rest) = match cleaned.split_once('·') {
            Some((c, r)) => (parse_rational(c)?, r),
            None => (BigRational::one(), cleaned.as_str()),
        };
        let mut roots = Vec::new();
        if rest == "1" {
            rest = "";
        }
        while !rest.is_empty() {
            let (root, after) = if let Some(r) = rest.strip_prefix('θ') {
                (BigRational::zero(), r)
            } else if let Some(r) = rest.strip_prefix("(θ") {
                let close = r.find(')').ok_or_else(err)?;
                let body = &r[..close];
                let value = if let Some(v) = body.strip_prefix('-') {
                    parse_rational(v)?
                } else if let Some(v) = body.strip_prefix('+') {
                    -parse_rational(v)?
                } else {
                    return Err(err());
                };
                (value, &r[close + 1..])
            } else {
                return Err(err());
            };
            let (mult, after) = match after.strip_prefix('^') {
                Some(r) => {
                    let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                    let m: usize = r[..end].parse().map_err(|_| err())?;
                    (m, &r[end..])
                }
                None => (1, after),
            };
            roots.extend(std::iter::repeat_n(root, mult));
            rest = after;
        }
        ThetaPoly::new(coeff, roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case::CaseId;
    use crate::scalar::{int, rat};

    fn tp(s: &str) -> ThetaPoly<BigRational> {
        s.parse().unwrap()
    }

    fn rats(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn tk_examples() {
        let k = KVector::from_shifted(CaseId::C4a, rats(&[(1, 2), (1, 12), (1, 3), (1, 12)])).unwrap();
        let t = tk_from_k(&k);
        assert_eq!(t.roots(), rats(&[(0, 1), (1, 12), (5, 12), (6, 12)]).as_slice());
        assert_eq!(t.to_string(), "θ(θ-1/12)(θ-5/12)(θ-6/12)");

        let k = KVector::from_shifted(CaseId::C4a, rats(&[(1, 1), (0, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(tk_from_k(&k).to_string(), "θ^4");

        let k = KVector::from_shifted(CaseId::C5a, rats(&[(1, 3), (1, 6), (1, 6), (1, 6), (1, 6)]))
            .unwrap();
        assert_eq!(tk_from_k(&k).to_string(), "θ(θ-1/6)(θ-2/6)(θ-3/6)(θ-4/6)");
    }

    #[test]
    fn k_from_tk_examples() {
        let g = k_from_tk(&tp("θ(θ-1/12)(θ-5/12)(θ-6/12)"), 4).unwrap();
        assert_eq!(g, rats(&[(1, 12), (4, 12), (1, 12), (6, 12)]));
        assert_eq!(k_from_tk(&tp("θ^4"), 4).unwrap(), rats(&[(0, 1), (0, 1), (0, 1), (1, 1)]));
        let g = k_from_tk(&tp("θ^2(θ-1/10)(θ-9/10)"), 4).unwrap();
        assert_eq!(g, rats(&[(0, 1), (1, 10), (8, 10), (1, 10)]));
        assert!(matches!(k_from_tk(&tp("θ^4"), 5), Err(Error::DegreeMismatch { .. })));
        assert!(k_from_tk(&tp("θ^3(θ-1)"), 4).is_err());
        assert!(k_from_tk(&tp("(θ-1/2)^4"), 4).is_err());
    }

    #[test]
    fn q_and_g_examples() {
        assert!(check_q(&rats(&[(0, 1), (1, 10), (8, 10), (1, 10)])));
        assert!(!check_q(&rats(&[(1, 4); 4])));
        assert!(check_q(&rats(&[(0, 1), (0, 1), (0, 1), (1, 1)])));

        assert!(check_g(&tp("θ^2(θ-1/10)(θ-9/10)")));
        assert!(check_g(&tp("θ^2(θ-1/3)(θ-2/3)")));
        assert!(!check_g(&tp("θ(θ-1/4)(θ-1/4)(θ-1/2)")));
        assert!(check_g(&tp("θ^2(θ-1/2)^2")));
        assert!(!check_g(&tp("θ^2(θ-1/3)^2")));
    }

    #[test]
    fn display_and_parse() {
        for s in [
            "θ^4",
            "θ^2(θ-1/6)(θ-5/6)",
            "θ^2(θ-1/2)^2",
            "θ^3(θ-2/6)(θ-3/6)(θ-4/6)",
            "θ(θ-1/12)(θ-2/12)(θ-6/12)(θ-8/12)",
            "θ^2(θ-1/4)(θ-2/4)^2",
            "3·(θ+1/2)(θ-4/2)",
            "1",
        ] {
            assert_eq!(tp(s).to_string(), s);
        }
        assert_eq!(tp("t^2 (t - 1/3)(t-2/3)"), tp("θ^2(θ-1/3)(θ-2/3)"));
        assert!("θ(θ*1/2)".parse::<ThetaPoly<BigRational>>().is_err());
        assert!("q".parse::<ThetaPoly<BigRational>>().is_err());
    }

    #[test]
    fn division_and_expansion() {
        let a = tp("θ^3(θ-1/3)(θ-1/2)(θ-2/3)");
        let b = tp("θ(θ-1/2)");
        assert_eq!(a.div_exact(&b).unwrap(), tp("θ^2(θ-1/3)(θ-2/3)"));
        assert!(b.div_exact(&tp("(θ-1/3)")).is_none());
        let p = tp("θ(θ-1/2)");
        assert_eq!(p.coefficients(), vec![int(0), rat(-1, 2), int(1)]);
        assert_eq!(p.eval(&int(2)), int(3));
        assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn lowest_rotation_picks_minimum() {
        assert_eq!(lowest_rotation(&[3, 1, 2, 1, 4]), 1);
        assert_eq!(lowest_rotation(&[3, 1, 4, 1, 2]), 3);
        assert_eq!(lowest_rotation(&[1, 1, 1]), 0);
        assert_eq!(a_n_operator(4).to_string(), "θ(θ-1/5)(θ-2/5)(θ-3/5)");
    }
}
