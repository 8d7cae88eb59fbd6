//! The ten two-function reductions of the tt*-Toda system, their
//! holomorphic-data maps and the admissible region of asymptotic data.
//!
//! Each case fixes the exponents `(a, b)` of the radial system
//!
//! ```text
//! u_{z z̄} = e^{a u} − e^{v − u},    v_{z z̄} = e^{v − u} − e^{−b v}
//! ```
//!
//! and a linear relation between the monomial exponents `k_0, …, k_n` of the
//! holomorphic data and the asymptotic data `(γ, δ)`:
//! `N γ = gamma_row · k`, `N δ = delta_row · k`, with `N = Σ (k_i + 1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::linalg::solve_unique;
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    C4a,
    C4b,
    C5a,
    C5b,
    C5c,
    C5d,
    C5e,
    C6a,
    C6b,
    C6c,
}

impl CaseId {
    pub const ALL: [CaseId; 10] = [
        CaseId::C4a,
        CaseId::C4b,
        CaseId::C5a,
        CaseId::C5b,
        CaseId::C5c,
        CaseId::C5d,
        CaseId::C5e,
        CaseId::C6a,
        CaseId::C6b,
        CaseId::C6c,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::C4a => "4a",
            CaseId::C4b => "4b",
            CaseId::C5a => "5a",
            CaseId::C5b => "5b",
            CaseId::C5c => "5c",
            CaseId::C5d => "5d",
            CaseId::C5e => "5e",
            CaseId::C6a => "6a",
            CaseId::C6b => "6b",
            CaseId::C6c => "6c",
        }
    }

    pub fn descriptor(self) -> &'static CaseDescriptor {
        descriptor(self)
    }

    pub fn group(self) -> Group {
        self.descriptor().group
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

/// Cases sharing the same Stokes formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    G4,
    G5ab,
    G5cde,
    G6,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::G4, Group::G5ab, Group::G5cde, Group::G6];

    pub fn label(self) -> &'static str {
        match self {
            Group::G4 => "4",
            Group::G5ab => "5ab",
            Group::G5cde => "5cde",
            Group::G6 => "6",
        }
    }

    pub fn cases(self) -> &'static [CaseId] {
        match self {
            Group::G4 => &[CaseId::C4a, CaseId::C4b],
            Group::G5ab => &[CaseId::C5a, CaseId::C5b],
            Group::G5cde => &[CaseId::C5c, CaseId::C5d, CaseId::C5e],
            Group::G6 => &[CaseId::C6a, CaseId::C6b, CaseId::C6c],
        }
    }

    pub fn n_plus_1(self) -> usize {
        match self {
            Group::G4 => 4,
            Group::G5ab | Group::G5cde => 5,
            Group::G6 => 6,
        }
    }

    /// Exponents `(a, b)` of the radial system.
    pub fn ab(self) -> (u32, u32) {
        match self {
            Group::G4 => (2, 2),
            Group::G5ab => (2, 1),
            Group::G5cde => (1, 2),
            Group::G6 => (1, 1),
        }
    }

    /// Whether `s₁ᴿ` is only determined up to sign.
    pub fn sign_ambiguous(self) -> bool {
        matches!(self, Group::G4 | Group::G6)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct CaseDescriptor {
    pub id: CaseId,
    pub n_plus_1: usize,
    pub l_param: usize,
    /// `u = 2 w_{u_index}`, `v = 2 w_{v_index}`.
    pub u_index: usize,
    pub v_index: usize,
    pub ab: (u32, u32),
    /// Pairs `(i, j)` with `k_i = k_j`.
    pub symmetry: &'static [(usize, usize)],
    pub gamma_row: &'static [i64],
    pub delta_row: &'static [i64],
    /// Positions of the entries playing the roles of `k` and `l` in the
    /// Stokes formulas.
    pub kl_index: (usize, usize),
    /// Multipliers of `π(k+1)/N` and `π(l+1)/N` inside the cosines.
    pub angle_mult: (u32, u32),
    pub group: Group,
}

static DESCRIPTORS: [CaseDescriptor; 10] = [
    CaseDescriptor {
        id: CaseId::C4a,
        n_plus_1: 4,
        l_param: 4,
        u_index: 0,
        v_index: 1,
        ab: (2, 2),
        symmetry: &[(1, 3)],
        gamma_row: &[3, -2, -1, 0],
        delta_row: &[1, 2, -3, 0],
        kl_index: (0, 2),
        angle_mult: (1, 1),
        group: Group::G4,
    },
    CaseDescriptor {
        id: CaseId::C4b,
        n_plus_1: 4,
        l_param: 2,
        u_index: 3,
        v_index: 0,
        ab: (2, 2),
        symmetry: &[(0, 2)],
        gamma_row: &[-2, -1, 0, 3],
        delta_row: &[2, -3, 0, 1],
        kl_index: (3, 1),
        angle_mult: (1, 1),
        group: Group::G4,
    },
    CaseDescriptor {
        id: CaseId::C5a,
        n_plus_1: 5,
        l_param: 5,
        u_index: 0,
        v_index: 1,
        ab: (2, 1),
        symmetry: &[(1, 4), (2, 3)],
        gamma_row: &[4, -2, -2, 0, 0],
        delta_row: &[2, 4, -6, 0, 0],
        kl_index: (0, 2),
        angle_mult: (1, 2),
        group: Group::G5ab,
    },
    CaseDescriptor {
        id: CaseId::C5b,
        n_plus_1: 5,
        l_param: 3,
        u_index: 4,
        v_index: 0,
        ab: (2, 1),
        symmetry: &[(0, 3), (1, 2)],
        gamma_row: &[-2, -2, 0, 0, 4],
        delta_row: &[4, -6, 0, 0, 2],
        kl_index: (4, 1),
        angle_mult: (1, 2),
        group: Group::G5ab,
    },
    CaseDescriptor {
        id: CaseId::C5c,
        n_plus_1: 5,
        l_param: 4,
        u_index: 0,
        v_index: 1,
        ab: (1, 2),
        symmetry: &[(1, 3), (0, 4)],
        gamma_row: &[6, -4, -2, 0, 0],
        delta_row: &[2, 2, -4, 0, 0],
        kl_index: (0, 2),
        angle_mult: (2, 1),
        group: Group::G5cde,
    },
    CaseDescriptor {
        id: CaseId::C5d,
        n_plus_1: 5,
        l_param: 1,
        u_index: 1,
        v_index: 2,
        ab: (1, 2),
        symmetry: &[(2, 4), (0, 1)],
        gamma_row: &[6, 0, -4, -2, 0],
        delta_row: &[2, 0, 2, -4, 0],
        kl_index: (0, 3),
        angle_mult: (2, 1),
        group: Group::G5cde,
    },
    CaseDescriptor {
        id: CaseId::C5e,
        n_plus_1: 5,
        l_param: 2,
        u_index: 4,
        v_index: 0,
        ab: (1, 2),
        symmetry: &[(0, 2), (3, 4)],
        gamma_row: &[-4, -2, 0, 6, 0],
        delta_row: &[2, -4, 0, 2, 0],
        kl_index: (3, 1),
        angle_mult: (2, 1),
        group: Group::G5cde,
    },
    CaseDescriptor {
        id: CaseId::C6a,
        n_plus_1: 6,
        l_param: 5,
        u_index: 0,
        v_index: 1,
        ab: (1, 1),
        symmetry: &[(1, 4), (0, 5), (2, 3)],
        gamma_row: &[8, -4, -4, 0, 0, 0],
        delta_row: &[4, 4, -8, 0, 0, 0],
        kl_index: (0, 2),
        angle_mult: (2, 2),
        group: Group::G6,
    },
    CaseDescriptor {
        id: CaseId::C6b,
        n_plus_1: 6,
        l_param: 1,
        u_index: 1,
        v_index: 2,
        ab: (1, 1),
        symmetry: &[(2, 5), (0, 1), (3, 4)],
        gamma_row: &[8, 0, -4, -4, 0, 0],
        delta_row: &[4, 0, 4, -8, 0, 0],
        kl_index: (0, 3),
        angle_mult: (2, 2),
        group: Group::G6,
    },
    CaseDescriptor {
        id: CaseId::C6c,
        n_plus_1: 6,
        l_param: 3,
        u_index: 5,
        v_index: 0,
        ab: (1, 1),
        symmetry: &[(0, 3), (4, 5), (1, 2)],
        gamma_row: &[-4, -4, 0, 0, 8, 0],
        delta_row: &[4, -8, 0, 0, 4, 0],
        kl_index: (4, 1),
        angle_mult: (2, 2),
        group: Group::G6,
    },
];

/// Verbatim data for one case.
pub fn descriptor(id: CaseId) -> &'static CaseDescriptor {
    &DESCRIPTORS[id as usize]
}

fn from_int<T: Field>(n: i64) -> T {
    T::from_i64(n).expect("small integer")
}

/// Asymptotic data `(γ, δ)`: `u ~ γ log|z|`, `v ~ δ log|z|` at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AsymptoticData<T> {
    pub gamma: T,
    pub delta: T,
}

impl<T> AsymptoticData<T> {
    pub fn new(gamma: T, delta: T) -> Self {
        Self { gamma, delta }
    }
}

/// Holomorphic data: the exponents `k_i` of `p_i(z) = z^{k_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KVector<T> {
    case: CaseId,
    entries: Vec<T>,
}

impl<T: Field> KVector<T> {
    /// Validates length, the case symmetry and `N > 0`.
    pub fn new(case: CaseId, entries: Vec<T>) -> Result<Self, Error> {
        let d = descriptor(case);
        if entries.len() != d.n_plus_1 {
            return Err(Error::Length {
                case: case.to_string(),
                expected: d.n_plus_1,
                got: entries.len(),
            });
        }
        if let Some(&(i, j)) = d.symmetry.iter().find(|&&(i, j)| entries[i] != entries[j]) {
            return Err(Error::Symmetry {
                case: case.to_string(),
                i,
                j,
            });
        }
        let k = Self { case, entries };
        let n = k.n_total();
        if n <= T::zero() {
            return Err(Error::NonPositiveN(n.to_string()));
        }
        Ok(k)
    }

    /// Builds the vector from the shifted entries `k_i + 1`.
    pub fn from_shifted(case: CaseId, shifted: Vec<T>) -> Result<Self, Error> {
        Self::new(case, shifted.into_iter().map(|s| s - T::one()).collect())
    }

    /// The unique vector with `k + 1`, `l + 1` (at the case's `kl_index`)
    /// prescribed and `Σ (k_i + 1) = n_total`.
    pub fn from_kl(case: CaseId, k_plus_1: T, l_plus_1: T, n_total: T) -> Result<Self, Error> {
        let d = descriptor(case);
        let width = d.n_plus_1;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let unit = |i: usize| -> Vec<T> {
            (0..width)
                .map(|c| if c == i { T::one() } else { T::zero() })
                .collect()
        };
        rows.push(unit(d.kl_index.0));
        rhs.push(k_plus_1 - T::one());
        rows.push(unit(d.kl_index.1));
        rhs.push(l_plus_1 - T::one());
        rows.push(vec![T::one(); width]);
        rhs.push(n_total - from_int::<T>(width as i64));
        push_symmetry_rows(d, &mut rows, &mut rhs);
        let k = solve_unique(rows, rhs)?;
        Self::new(case, k)
    }

    pub fn case(&self) -> CaseId {
        self.case
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// `k_i + 1`.
    pub fn shifted(&self) -> Vec<T> {
        self.entries.iter().map(|k| k.clone() + T::one()).collect()
    }

    /// `N = n + 1 + Σ k_i`.
    pub fn n_total(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, k| acc + k.clone() + T::one())
    }

    /// All `k_i ≥ −1`: the region where the Iwasawa factorization exists.
    pub fn is_admissible(&self) -> bool {
        self.entries.iter().all(|k| *k >= -T::one())
    }

    /// Rescales `k + 1` so that `N = 1`.
    pub fn normalized(&self) -> Self {
        let n = self.n_total();
        Self {
            case: self.case,
            entries: self
                .shifted()
                .into_iter()
                .map(|s| s / n.clone() - T::one())
                .collect(),
        }
    }
}

fn push_symmetry_rows<T: Field>(d: &CaseDescriptor, rows: &mut Vec<Vec<T>>, rhs: &mut Vec<T>) {
    for &(i, j) in d.symmetry {
        let mut row = vec![T::zero(); d.n_plus_1];
        row[i] = T::one();
        row[j] = -T::one();
        rows.push(row);
        rhs.push(T::zero());
    }
}

fn dot<T: Field>(row: &[i64], k: &[T]) -> T {
    row.iter()
        .zip(k)
        .fold(T::zero(), |acc, (&c, x)| acc + from_int::<T>(c) * x.clone())
}

/// `γ = (gamma_row · k)/N`, `δ = (delta_row · k)/N`.
pub fn k_to_asymptotic<T: Field>(k: &KVector<T>) -> AsymptoticData<T> {
    let d = descriptor(k.case);
    let n = k.n_total();
    AsymptoticData {
        gamma: dot(d.gamma_row, &k.entries) / n.clone(),
        delta: dot(d.delta_row, &k.entries) / n,
    }
}

/// Inverts [`k_to_asymptotic`] for a prescribed `N > 0`.
pub fn asymptotic_to_k<T: Field>(
    case: CaseId,
    a: &AsymptoticData<T>,
    n_total: &T,
) -> Result<KVector<T>, Error> {
    if *n_total <= T::zero() {
        return Err(Error::NonPositiveN(n_total.to_string()));
    }
    let d = descriptor(case);
    let width = d.n_plus_1;
    let to_row = |r: &[i64]| r.iter().map(|&c| from_int::<T>(c)).collect::<Vec<T>>();
    let mut rows = vec![to_row(d.gamma_row), to_row(d.delta_row), vec![T::one(); width]];
    let mut rhs = vec![
        n_total.clone() * a.gamma.clone(),
        n_total.clone() * a.delta.clone(),
        n_total.clone() - from_int::<T>(width as i64),
    ];
    push_symmetry_rows(d, &mut rows, &mut rhs);
    let k = solve_unique(rows, rhs)?;
    KVector::new(case, k)
}

/// The closed triangle `γ ≥ −2/a`, `δ ≤ 2/b`, `γ − δ ≤ 2`.
pub fn in_region<T: Field>(case: CaseId, a: &AsymptoticData<T>) -> bool {
    let (ea, eb) = descriptor(case).ab;
    let two = from_int::<T>(2);
    a.gamma >= -(two.clone() / from_int::<T>(ea as i64))
        && a.delta <= two.clone() / from_int::<T>(eb as i64)
        && a.gamma.clone() - a.delta.clone() <= two
}

/// `c` in the symmetry axis `γ + δ = c` of the region: the line through the
/// top-left vertex perpendicular to the diagonal edge.
pub fn center_line_offset<T: Field>(group: Group) -> T {
    let (a, b) = group.ab();
    from_int::<T>(2) / from_int::<T>(b as i64) - from_int::<T>(2) / from_int::<T>(a as i64)
}
