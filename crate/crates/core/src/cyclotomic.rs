//! Exact arithmetic in real subfields of cyclotomic fields.
//!
//! An element of conductor `M` (always even) is a polynomial in
//! `ζ = e^{2πi/M}` reduced modulo the `M`-th cyclotomic polynomial, so its
//! coefficient vector has length `φ(M)`. Every constructor and operation
//! finishes by lowering the conductor to the smallest even `M` whose field
//! still contains the value, which makes the representation canonical:
//! equal values have identical conductor and coefficients.
//!
//! `2cos(πp/q)` is embedded as `ζ^p + ζ^{-p}` with `M = 2q`. Only real
//! values can be built through the public constructors; conjugation
//! invariance is kept as an invariant and checked by
//! [`RealCyclotomic::is_conjugation_fixed`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num::integer::Integer;
use num::{BigInt, BigRational, ToPrimitive};

use crate::numtheory::{divisors, euler_phi, mod_inverse, prime_factors};
use crate::scalar::Field;

/// `Φ_n = x^degree + Σ tail`, with the dense form kept for the recursion.
struct CyclotomicPolynomial {
    degree: usize,
    dense: Vec<i64>,
    tail: Vec<(usize, i64)>,
}

fn poly_cache() -> &'static Mutex<HashMap<usize, Arc<CyclotomicPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CyclotomicPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cyclotomic_polynomial(n: usize) -> Arc<CyclotomicPolynomial> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 = ∏_{d | n} Φ_d
    let mut num = vec![0i128; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let den = cyclotomic_polynomial(d);
        num = divide_monic(&num, &den.dense);
    }
    let dense: Vec<i64> = num
        .iter()
        .map(|&c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    let degree = dense.len() - 1;
    debug_assert_eq!(degree, euler_phi(n));
    let tail = dense[..degree]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let poly = Arc::new(CyclotomicPolynomial {
        degree,
        dense,
        tail,
    });
    poly_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn divide_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn scaled<T: Field>(x: &T, k: i64) -> T {
    match k {
        1 => x.clone(),
        -1 => -x.clone(),
        _ => x.clone() * T::from_i64(k).expect("small integer"),
    }
}

fn add_into<T: Field>(slot: &mut T, v: T) {
    let cur = std::mem::replace(slot, T::zero());
    *slot = cur + v;
}

/// Reduces a polynomial in `ζ_m` (any length) modulo `Φ_m`; the result has
/// length `φ(m)`.
fn reduce<T: Field>(mut c: Vec<T>, m: usize) -> Vec<T> {
    if c.len() > m {
        let high = c.split_off(m);
        for (i, v) in high.into_iter().enumerate() {
            if !v.is_zero() {
                add_into(&mut c[i % m], v);
            }
        }
    }
    let poly = cyclotomic_polynomial(m);
    let d = poly.degree;
    for i in (d..c.len()).rev() {
        if c[i].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut c[i], T::zero());
        for &(j, pj) in &poly.tail {
            add_into(&mut c[i - d + j], scaled(&lead, -pj));
        }
    }
    c.resize(d, T::zero());
    c
}

/// Tries to express an element of `Q(ζ_M)` in `Q(ζ_{M/p})`.
fn descend<T: Field>(coeffs: &[T], m: usize, p: usize) -> Option<Vec<T>> {
    let sub = m / p;
    if sub.is_multiple_of(p) {
        // Φ_M(x) = Φ_{M/p}(x^p): the subfield is spanned by the powers ζ^{jp}.
        if coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % p != 0 && !c.is_zero())
        {
            return None;
        }
        return Some(coeffs.iter().step_by(p).cloned().collect());
    }

    // p ∥ M: ζ_M = ζ_sub^s · ζ_p^t with s·p + t·sub = 1, and 1, ζ_p, …, ζ_p^{p-2}
    // is a basis of Q(ζ_M) over Q(ζ_sub).
    let s = mod_inverse(p % sub, sub);
    let t = mod_inverse(sub % p, p);
    let mut buckets = vec![vec![T::zero(); sub]; p];
    for (e, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            add_into(&mut buckets[(t * e) % p][(s * e) % sub], c.clone());
        }
    }
    let mut reduced: Vec<Vec<T>> = buckets.into_iter().map(|b| reduce(b, sub)).collect();
    let last = reduced.pop().expect("p >= 2");
    if reduced[1..].iter().any(|b| *b != last) {
        return None;
    }
    let first = reduced.swap_remove(0);
    Some(first.into_iter().zip(last).map(|(a, b)| a - b).collect())
}

/// Exact element of the real subfield of `Q(ζ_M)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealCyclotomic<T> {
    conductor: usize,
    coeffs: Vec<T>,
}

impl<T: Field> RealCyclotomic<T> {
    pub fn zero() -> Self {
        Self {
            conductor: 2,
            coeffs: vec![T::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_scalar(T::one())
    }

    pub fn from_scalar(r: T) -> Self {
        Self {
            conductor: 2,
            coeffs: vec![r],
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_scalar(T::from_i64(n).expect("small integer"))
    }

    /// The exact value `2·cos(π·r)`.
    pub fn cos2(r: &BigRational) -> Self {
        let q = r.denom().to_usize().expect("denominator too large");
        let m = 2 * q;
        let p = r
            .numer()
            .mod_floor(&BigInt::from(m))
            .to_usize()
            .expect("reduced exponent");
        let mut v = vec![T::zero(); m];
        add_into(&mut v[p], T::one());
        add_into(&mut v[(m - p) % m], T::one());
        Self::from_exponents(m, v)
    }

    /// Builds `Σ v[e] ζ_m^e` (with `ζ_m^m = 1`), then canonicalizes.
    fn from_exponents(m: usize, v: Vec<T>) -> Self {
        let coeffs = reduce(v, m);
        Self {
            conductor: m,
            coeffs,
        }
        .minimized()
    }

    fn minimized(mut self) -> Self {
        'outer: loop {
            if self.coeffs.iter().all(|c| c.is_zero()) {
                return Self::zero();
            }
            for p in prime_factors(self.conductor) {
                let sub = self.conductor / p;
                if !sub.is_multiple_of(2) {
                    continue;
                }
                if let Some(c) = descend(&self.coeffs, self.conductor, p) {
                    self = Self {
                        conductor: sub,
                        coeffs: c,
                    };
                    continue 'outer;
                }
            }
            return self;
        }
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// Coefficients on `1, ζ, …, ζ^{φ(M)-1}`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 2 && self.coeffs[0].is_zero()
    }

    fn spread(&self, l: usize) -> impl Iterator<Item = (usize, &T)> + '_ {
        let step = l / self.conductor;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i * step, c))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let l = self.conductor.lcm(&other.conductor);
        let mut v = vec![T::zero(); l];
        for (e, c) in self.spread(l).chain(other.spread(l)) {
            add_into(&mut v[e], c.clone());
        }
        Self::from_exponents(l, v)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.conductor == 2 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 2 {
            return self.scale(&other.coeffs[0]);
        }
        let l = self.conductor.lcm(&other.conductor);
        let mut v = vec![T::zero(); l];
        let rhs: Vec<(usize, &T)> = other.spread(l).collect();
        for (i, a) in self.spread(l) {
            for &(j, b) in &rhs {
                add_into(&mut v[(i + j) % l], a.clone() * b.clone());
            }
        }
        Self::from_exponents(l, v)
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Multiplies by a scalar of the coefficient field.
    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.conductor;
        let mut v = vec![T::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            add_into(&mut v[(m - i) % m], c.clone());
        }
        Self::from_exponents(m, v)
    }

    pub fn is_conjugation_fixed(&self) -> bool {
        self.conj() == *self
    }

    /// The value, if it is a scalar of the coefficient field.
    pub fn as_rational(&self) -> Option<T> {
        (self.conductor == 2).then(|| self.coeffs[0].clone())
    }

    /// Double-precision value, summed with Neumaier compensation.
    pub fn to_f64(&self) -> f64 {
        let m = self.conductor as f64;
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = c.to_f64().unwrap_or(f64::NAN)
                * (2.0 * std::f64::consts::PI * i as f64 / m).cos();
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }
}

impl RealCyclotomic<BigRational> {
    /// The value as an integer, if it is one.
    pub fn is_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }
}

impl<T: Field + fmt::Display> fmt::Display for RealCyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ{}", self.conductor)?,
                _ => write!(f, "({c})ζ{}^{i}", self.conductor)?,
            }
        }
        write!(f, " ≈ {:.12}", self.to_f64())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<T: Field> $tr<&RealCyclotomic<T>> for &RealCyclotomic<T> {
            type Output = RealCyclotomic<T>;
            fn $method(self, rhs: &RealCyclotomic<T>) -> RealCyclotomic<T> {
                self.$inner(rhs)
            }
        }
        impl<T: Field> $tr for RealCyclotomic<T> {
            type Output = RealCyclotomic<T>;
            fn $method(self, rhs: RealCyclotomic<T>) -> RealCyclotomic<T> {
                self.$inner(&rhs)
            }
        }
        impl<T: Field> $tr<&RealCyclotomic<T>> for RealCyclotomic<T> {
            type Output = RealCyclotomic<T>;
            fn $method(self, rhs: &RealCyclotomic<T>) -> RealCyclotomic<T> {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl<T: Field> Neg for RealCyclotomic<T> {
    type Output = RealCyclotomic<T>;
    fn neg(self) -> RealCyclotomic<T> {
        self.neg_ref()
    }
}

impl<T: Field> Neg for &RealCyclotomic<T> {
    type Output = RealCyclotomic<T>;
    fn neg(self) -> RealCyclotomic<T> {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type Alg = RealCyclotomic<BigRational>;

    fn c2(n: i64, d: i64) -> Alg {
        Alg::cos2(&rat(n, d))
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).dense, vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(6).dense, vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12).dense, vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(10).dense, vec![1, -1, 1, -1, 1]);
        // Φ_105 is the first with a coefficient of magnitude 2.
        assert!(cyclotomic_polynomial(105).dense.contains(&-2));
    }

    #[test]
    fn trivial_cosines() {
        assert_eq!(c2(0, 1), Alg::from_i64(2));
        assert_eq!(c2(1, 2), Alg::zero());
        assert_eq!(c2(1, 1), Alg::from_i64(-2));
        assert_eq!(c2(1, 3).as_rational(), Some(int(1)));
        assert_eq!(c2(2, 3).as_rational(), Some(int(-1)));
    }

    #[test]
    fn golden_ratio() {
        let x = c2(1, 5);
        assert_eq!(x.as_rational(), None);
        assert_eq!(x.conductor(), 10);
        // x² = x + 1
        assert_eq!(&x * &x, &x + &Alg::one());
        assert!((x.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn products_and_sums() {
        assert!((c2(1, 3) + c2(2, 3)).is_zero());
        assert_eq!(c2(1, 5) * c2(2, 5), Alg::one());
        assert_eq!(c2(1, 4) * c2(1, 4), Alg::from_i64(2));
        assert_eq!((c2(1, 6) * c2(1, 6)).is_integer(), Some(BigInt::from(3)));
        assert_eq!(c2(1, 4).is_integer(), None);
        assert_eq!(Alg::zero().is_integer(), Some(BigInt::from(0)));
        let p = c2(1, 5) * c2(2, 5);
        assert!((p.to_f64() - c2(1, 5).to_f64() * c2(2, 5).to_f64()).abs() < 1e-12);
    }

    #[test]
    fn conductor_is_minimal_after_mixing_fields() {
        // √3·√3 lives in Q even though the product was formed in Q(ζ_12).
        let three = c2(1, 6) * c2(1, 6);
        assert_eq!(three.conductor(), 2);
        // (√2 + √3) − √3 drops back to Q(ζ_8).
        let s = (c2(1, 4) + c2(1, 6)) - c2(1, 6);
        assert_eq!(s, c2(1, 4));
        assert_eq!(s.conductor(), 8);
        // 2cos(π/15) needs the odd prime part 15; conductor 30.
        assert_eq!(c2(1, 15).conductor(), 30);
    }

    #[test]
    fn scaling_and_conjugation() {
        let x = c2(1, 7);
        assert!(x.is_conjugation_fixed());
        assert_eq!(x.scale(&rat(1, 2)).scale(&int(2)), x);
        assert!(x.scale(&int(0)).is_zero());
        assert_eq!(format!("{}", c2(1, 3)), "1");
        assert!(format!("{}", c2(1, 5)).contains("≈ 1.618033988750"));
    }
}
