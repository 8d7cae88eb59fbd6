//! Stokes data `(s₁ᴿ, s₂ᴿ)` as exact algebraic numbers.
//!
//! Every group's formula has the shape
//! `s₁ = c + X + Y`, `−s₂ = d + c(X + Y) + XY` where `X`, `Y` are twice a
//! cosine of a rational multiple of `π`, so one assembly routine serves both
//! the asymptotic and the holomorphic parametrizations.

use num::{BigInt, Signed};

use crate::case::{descriptor, k_to_asymptotic, AsymptoticData, CaseId, Group, KVector};
use crate::scalar::int;
use crate::{AlgReal, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StokesData {
    pub s1: AlgReal,
    pub s2: AlgReal,
    /// `s₁ᴿ` is only defined up to sign (groups 4 and 6).
    pub s1_sign_ambiguous: bool,
}

impl StokesData {
    fn assemble(group: Group, x: AlgReal, y: AlgReal) -> Self {
        let xy = &x * &y;
        let sum = x + y;
        let (s1, minus_s2) = match group {
            Group::G4 => (sum, xy + AlgReal::from_i64(2)),
            Group::G6 => (sum, xy + AlgReal::from_i64(1)),
            Group::G5ab | Group::G5cde => (
                &sum + &AlgReal::one(),
                sum + xy + AlgReal::from_i64(2),
            ),
        };
        let ambiguous = group.sign_ambiguous();
        let s1 = if ambiguous && s1.to_f64() < 0.0 { -s1 } else { s1 };
        Self {
            s1,
            s2: -minus_s2,
            s1_sign_ambiguous: ambiguous,
        }
    }

    /// Same data up to the declared sign ambiguity of `s₁`.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.s2 != other.s2 || self.s1_sign_ambiguous != other.s1_sign_ambiguous {
            return false;
        }
        self.s1 == other.s1 || (self.s1_sign_ambiguous && self.s1 == -&other.s1)
    }
}

/// `(g, d, m)` such that the asymptotic formula uses the cosine arguments
/// `π(γ + g)/m` and `π(δ + d)/m`.
pub fn angle_offsets(group: Group) -> (i64, i64, i64) {
    match group {
        Group::G4 => (1, 3, 4),
        Group::G5ab => (6, 8, 5),
        Group::G5cde => (2, 4, 5),
        Group::G6 => (2, 4, 6),
    }
}

/// Cosine arguments (as multiples of `π`) of the asymptotic formula.
pub fn asymptotic_angles(group: Group, a: &AsymptoticData<Rational>) -> (Rational, Rational) {
    let (g, d, m) = angle_offsets(group);
    ((&a.gamma + int(g)) / int(m), (&a.delta + int(d)) / int(m))
}

/// Stokes data from asymptotic data.
pub fn stokes_from_asymptotic(case: CaseId, a: &AsymptoticData<Rational>) -> StokesData {
    let group = case.group();
    let (p, q) = asymptotic_angles(group, a);
    StokesData::assemble(group, AlgReal::cos2(&p), AlgReal::cos2(&q))
}

/// Stokes data from holomorphic data.
pub fn stokes_from_k(k: &KVector<Rational>) -> StokesData {
    let d = descriptor(k.case());
    let n = k.n_total();
    let shifted = k.shifted();
    let angle = |idx: usize, mult: u32| -> Rational {
        &shifted[idx] * int(mult as i64) / &n
    };
    let x = AlgReal::cos2(&angle(d.kl_index.0, d.angle_mult.0));
    let y = AlgReal::cos2(&angle(d.kl_index.1, d.angle_mult.1));
    // In these variables the k-term carries a minus sign for 5ab and the
    // l-term for the other groups.
    let (x, y) = match d.group {
        Group::G5ab => (-x, y),
        _ => (x, -y),
    };
    StokesData::assemble(d.group, x, y)
}

/// Stokes data computed from `k` through the asymptotic data.
pub fn stokes_via_asymptotic(k: &KVector<Rational>) -> StokesData {
    stokes_from_asymptotic(k.case(), &k_to_asymptotic(k))
}

/// `(s₁, s₂)` as integers (with `|s₁|` when the sign is ambiguous), if both
/// are integers.
pub fn integral(s: &StokesData) -> Option<(BigInt, BigInt)> {
    let s1 = s.s1.is_integer()?;
    let s2 = s.s2.is_integer()?;
    Some((if s.s1_sign_ambiguous { s1.abs() } else { s1 }, s2))
}

/// Floating-point Stokes data from asymptotic data, with the same sign
/// convention as [`StokesData`].
pub fn stokes_float(group: Group, gamma: f64, delta: f64) -> (f64, f64) {
    use std::f64::consts::PI;
    let (g, d, m) = angle_offsets(group);
    let m = m as f64;
    let x = 2.0 * (PI * (gamma + g as f64) / m).cos();
    let y = 2.0 * (PI * (delta + d as f64) / m).cos();
    let (s1, minus_s2) = match group {
        Group::G4 => (x + y, 2.0 + x * y),
        Group::G6 => (x + y, 1.0 + x * y),
        Group::G5ab | Group::G5cde => (1.0 + x + y, 2.0 + x + y + x * y),
    };
    let s1 = if group.sign_ambiguous() { s1.abs() } else { s1 };
    (s1, -minus_s2)
}
