//! Radial boundary-value problem for the two-function system
//!
//! ```text
//! u_{z z̄} = e^{a u} − e^{v − u},    v_{z z̄} = e^{v − u} − e^{−b v}.
//! ```
//!
//! For functions of `x = |z|`, `u_{z z̄} = ¼(u_xx + u_x/x)`, and with
//! `t = log x` this is `¼ e^{−2t} u_tt`, so
//!
//! ```text
//! u_tt = 4e^{2t}(e^{au} − e^{v−u}),    v_tt = 4e^{2t}(e^{v−u} − e^{−bv}).
//! ```
//!
//! The asymptotic data enters as the slope condition `u_t = γ`, `v_t = δ` at
//! `t_min`, and decay as `u = v = 0` at `t_max`. Second differences on a
//! uniform grid with a ghost node for the slope condition give a
//! block-tridiagonal system, solved by damped Newton iteration.

use std::io::{self, Write};

use num_traits::Float;

use crate::case::{descriptor, in_region, AsymptoticData, CaseId};
use crate::error::Error;
use crate::scalar::to_f64;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig<F> {
    pub t_min: F,
    pub t_max: F,
    pub grid_points: usize,
    pub newton_tol: F,
    pub max_iterations: usize,
    /// Initial step length of each Newton update, halved on backtracking.
    pub damping: F,
}

impl<F: Float> Default for SolverConfig<F> {
    fn default() -> Self {
        let c = |x: f64| F::from(x).expect("representable");
        Self {
            t_min: c(-12.0),
            t_max: c(4.0),
            grid_points: 2048,
            newton_tol: c(1e-10),
            max_iterations: 200,
            damping: F::one(),
        }
    }
}

impl<F: Float> SolverConfig<F> {
    /// Negated comparisons also reject NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if !(self.t_min < self.t_max) {
            return bad("t_min must be smaller than t_max");
        }
        if self.grid_points < 64 {
            return bad("grid_points must be at least 64");
        }
        if !(self.newton_tol > F::zero()) {
            return bad("newton_tol must be positive");
        }
        if !(self.damping > F::zero() && self.damping <= F::one()) {
            return bad("damping must lie in (0, 1]");
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be positive");
        }
        Ok(())
    }

    pub fn step(&self) -> F {
        (self.t_max - self.t_min) / F::from(self.grid_points - 1).expect("grid size")
    }

    pub fn grid(&self) -> Vec<F> {
        let h = self.step();
        (0..self.grid_points)
            .map(|i| self.t_min + h * F::from(i).expect("index"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialSolution<F> {
    pub case: CaseId,
    pub asymptotic: AsymptoticData<Rational>,
    pub grid: Vec<F>,
    pub u: Vec<F>,
    pub v: Vec<F>,
    pub residual_norm: F,
    pub iterations: usize,
    pub fitted_gamma: F,
    pub fitted_delta: F,
    /// Intercepts of the fitted lines `u ≈ γ t + c_u`, `v ≈ δ t + c_v`.
    pub fitted_u_intercept: F,
    pub fitted_v_intercept: F,
    pub newton_tol: F,
}

/// Discretized system for fixed exponents and slopes.
#[derive(Clone, Debug)]
pub struct RadialSystem<F> {
    a: F,
    b: F,
    gamma: F,
    delta: F,
    h: F,
    /// `4 e^{2 t_i}` at the unknown nodes.
    weight: Vec<F>,
}

/// 2×2 matrix, row major.
type Mat2<F> = [[F; 2]; 2];

/// Block-tridiagonal matrix: `lower[i]` couples row `i` to unknown `i−1`,
/// `upper[i]` to unknown `i+1`.
#[derive(Clone, Debug)]
pub struct BlockTridiagonal<F> {
    pub lower: Vec<Mat2<F>>,
    pub diag: Vec<Mat2<F>>,
    pub upper: Vec<Mat2<F>>,
}

fn mat_mul<F: Float>(p: &Mat2<F>, q: &Mat2<F>) -> Mat2<F> {
    [
        [p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]],
        [p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]],
    ]
}

fn mat_vec<F: Float>(p: &Mat2<F>, x: [F; 2]) -> [F; 2] {
    [p[0][0] * x[0] + p[0][1] * x[1], p[1][0] * x[0] + p[1][1] * x[1]]
}

fn mat_sub<F: Float>(p: &Mat2<F>, q: &Mat2<F>) -> Mat2<F> {
    [
        [p[0][0] - q[0][0], p[0][1] - q[0][1]],
        [p[1][0] - q[1][0], p[1][1] - q[1][1]],
    ]
}

fn mat_inv<F: Float>(p: &Mat2<F>) -> Option<Mat2<F>> {
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    if det == F::zero() || !det.is_finite() {
        return None;
    }
    Some([[p[1][1] / det, -p[0][1] / det], [-p[1][0] / det, p[0][0] / det]])
}

impl<F: Float> BlockTridiagonal<F> {
    /// Solves `J x = r` by block Gaussian elimination without pivoting.
    pub fn solve(&self, r: &[[F; 2]]) -> Option<Vec<[F; 2]>> {
        let n = self.diag.len();
        let mut c_prime: Vec<Mat2<F>> = Vec::with_capacity(n);
        let mut d_prime: Vec<[F; 2]> = Vec::with_capacity(n);
        for i in 0..n {
            let (m, rhs) = if i == 0 {
                (self.diag[0], r[0])
            } else {
                let l = &self.lower[i];
                let m = mat_sub(&self.diag[i], &mat_mul(l, &c_prime[i - 1]));
                let lv = mat_vec(l, d_prime[i - 1]);
                (m, [r[i][0] - lv[0], r[i][1] - lv[1]])
            };
            let inv = mat_inv(&m)?;
            c_prime.push(mat_mul(&inv, &self.upper[i]));
            d_prime.push(mat_vec(&inv, rhs));
        }
        let mut x = vec![[F::zero(); 2]; n];
        x[n - 1] = d_prime[n - 1];
        for i in (0..n - 1).rev() {
            let cx = mat_vec(&c_prime[i], x[i + 1]);
            x[i] = [d_prime[i][0] - cx[0], d_prime[i][1] - cx[1]];
        }
        Some(x)
    }

    /// Dense form with unknowns ordered `u_0, v_0, u_1, v_1, …`.
    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let n = self.diag.len();
        let mut m = vec![vec![F::zero(); 2 * n]; 2 * n];
        let mut put = |i: usize, j: usize, b: &Mat2<F>| {
            for r in 0..2 {
                for c in 0..2 {
                    m[2 * i + r][2 * j + c] = b[r][c];
                }
            }
        };
        for i in 0..n {
            put(i, i, &self.diag[i]);
            if i > 0 {
                put(i, i - 1, &self.lower[i]);
            }
            if i + 1 < n {
                put(i, i + 1, &self.upper[i]);
            }
        }
        m
    }
}

impl<F: Float> RadialSystem<F> {
    pub fn new(case: CaseId, gamma: F, delta: F, cfg: &SolverConfig<F>) -> Self {
        let (a, b) = descriptor(case).ab;
        let four = F::from(4.0).unwrap();
        let two = F::from(2.0).unwrap();
        let grid = cfg.grid();
        Self {
            a: F::from(a).unwrap(),
            b: F::from(b).unwrap(),
            gamma,
            delta,
            h: cfg.step(),
            weight: grid[..grid.len() - 1]
                .iter()
                .map(|&t| four * (two * t).exp())
                .collect(),
        }
    }

    /// Number of unknown nodes (the last grid node is fixed at zero).
    pub fn len(&self) -> usize {
        self.weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weight.is_empty()
    }

    fn forcing(&self, i: usize, u: F, v: F) -> (F, F) {
        let w = self.weight[i];
        let e_vu = (v - u).exp();
        (
            w * ((self.a * u).exp() - e_vu),
            w * (e_vu - (-self.b * v).exp()),
        )
    }

    fn forcing_jacobian(&self, i: usize, u: F, v: F) -> Mat2<F> {
        let w = self.weight[i];
        let e_vu = (v - u).exp();
        [
            [w * (self.a * (self.a * u).exp() + e_vu), -w * e_vu],
            [-w * e_vu, w * (e_vu + self.b * (-self.b * v).exp())],
        ]
    }

    /// Residual rows, scaled by `h²` (first row: half the ghost-node
    /// equation).
    pub fn residual(&self, x: &[[F; 2]]) -> Vec<[F; 2]> {
        let n = self.len();
        let h2 = self.h * self.h;
        let half = F::from(0.5).unwrap();
        let two = F::from(2.0).unwrap();
        let at = |i: usize| if i < n { x[i] } else { [F::zero(); 2] };
        (0..n)
            .map(|i| {
                let [u, v] = x[i];
                let (fu, fv) = self.forcing(i, u, v);
                let next = at(i + 1);
                if i == 0 {
                    [
                        next[0] - u - half * h2 * fu - self.h * self.gamma,
                        next[1] - v - half * h2 * fv - self.h * self.delta,
                    ]
                } else {
                    let prev = x[i - 1];
                    [
                        next[0] - two * u + prev[0] - h2 * fu,
                        next[1] - two * v + prev[1] - h2 * fv,
                    ]
                }
            })
            .collect()
    }

    pub fn jacobian(&self, x: &[[F; 2]]) -> BlockTridiagonal<F> {
        let n = self.len();
        let h2 = self.h * self.h;
        let half = F::from(0.5).unwrap();
        let two = F::from(2.0).unwrap();
        let one = F::one();
        let zero = F::zero();
        let eye = [[one, zero], [zero, one]];
        let mut lower = Vec::with_capacity(n);
        let mut diag = Vec::with_capacity(n);
        let mut upper = Vec::with_capacity(n);
        for (i, xi) in x.iter().enumerate().take(n) {
            let j = self.forcing_jacobian(i, xi[0], xi[1]);
            let (scale, centre) = if i == 0 { (half * h2, one) } else { (h2, two) };
            diag.push([
                [-centre - scale * j[0][0], -scale * j[0][1]],
                [-scale * j[1][0], -centre - scale * j[1][1]],
            ]);
            lower.push(if i == 0 { [[zero; 2]; 2] } else { eye });
            upper.push(if i + 1 < n { eye } else { [[zero; 2]; 2] });
        }
        BlockTridiagonal { lower, diag, upper }
    }
}

fn max_norm<F: Float>(r: &[[F; 2]]) -> F {
    r.iter().fold(F::zero(), |m, p| {
        let a = p[0].abs().max(p[1].abs());
        if a.is_nan() || m.is_nan() {
            F::nan()
        } else {
            m.max(a)
        }
    })
}

/// Least-squares line through `(t, y)`: `(slope, intercept)`.
fn fit_line<F: Float>(t: &[F], y: &[F]) -> (F, F) {
    let n = F::from(t.len()).unwrap();
    let mt = t.iter().fold(F::zero(), |s, &x| s + x) / n;
    let my = y.iter().fold(F::zero(), |s, &x| s + x) / n;
    let (mut sxy, mut sxx) = (F::zero(), F::zero());
    for (&a, &b) in t.iter().zip(y) {
        sxy = sxy + (a - mt) * (b - my);
        sxx = sxx + (a - mt) * (a - mt);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mt)
}

/// Solves the boundary-value problem for asymptotic data in the closed
/// region of `case`.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn solve_radial<F: Float>(
    case: CaseId,
    a: &AsymptoticData<Rational>,
    cfg: &SolverConfig<F>,
) -> Result<RadialSolution<F>, Error> {
    cfg.validate()?;
    if !in_region(case, a) {
        return Err(Error::OutsideRegion {
            case: case.to_string(),
            gamma: a.gamma.to_string(),
            delta: a.delta.to_string(),
        });
    }
    let gamma = F::from(to_f64(&a.gamma)).unwrap();
    let delta = F::from(to_f64(&a.delta)).unwrap();
    let sys = RadialSystem::new(case, gamma, delta, cfg);
    let grid = cfg.grid();
    let n = sys.len();
    let mut x: Vec<[F; 2]> = grid[..n]
        .iter()
        .map(|&t| {
            let s = t.min(F::zero());
            [gamma * s, delta * s]
        })
        .collect();
    let mut r = sys.residual(&x);
    let mut norm = max_norm(&r);
    let half = F::from(0.5).unwrap();
    let mut iterations = 0;
    while !(norm < cfg.newton_tol) {
        if iterations == cfg.max_iterations {
            return Err(Error::NoConvergence {
                iterations,
                residual: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        iterations += 1;
        let rhs: Vec<[F; 2]> = r.iter().map(|p| [-p[0], -p[1]]).collect();
        let dx = sys.jacobian(&x).solve(&rhs).ok_or(Error::NoConvergence {
            iterations,
            residual: norm.to_f64().unwrap_or(f64::NAN),
        })?;
        let mut alpha = cfg.damping;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<[F; 2]> = x
                .iter()
                .zip(&dx)
                .map(|(p, d)| [p[0] + alpha * d[0], p[1] + alpha * d[1]])
                .collect();
            let tr = sys.residual(&trial);
            let tn = max_norm(&tr);
            if tn.is_finite() && (tn < norm || tn < cfg.newton_tol) {
                x = trial;
                r = tr;
                norm = tn;
                accepted = true;
                break;
            }
            alpha = alpha * half;
        }
        if !accepted {
            return Err(Error::NoConvergence {
                iterations,
                residual: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let mut u: Vec<F> = x.iter().map(|p| p[0]).collect();
    let mut v: Vec<F> = x.iter().map(|p| p[1]).collect();
    u.push(F::zero());
    v.push(F::zero());
    let m = (grid.len() / 10).max(2);
    let (fitted_gamma, cu) = fit_line(&grid[..m], &u[..m]);
    let (fitted_delta, cv) = fit_line(&grid[..m], &v[..m]);
    Ok(RadialSolution {
        case,
        asymptotic: a.clone(),
        grid,
        u,
        v,
        residual_norm: norm,
        iterations,
        fitted_gamma,
        fitted_delta,
        fitted_u_intercept: cu,
        fitted_v_intercept: cv,
        newton_tol: cfg.newton_tol,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticsReport<F> {
    pub gamma_error: F,
    pub delta_error: F,
    pub boundary_value: F,
    pub gamma_ok: bool,
    pub delta_ok: bool,
    pub boundary_ok: bool,
}

impl<F> AsymptoticsReport<F> {
    pub fn passed(&self) -> bool {
        self.gamma_ok && self.delta_ok && self.boundary_ok
    }
}

/// Compares the fitted slopes with `(γ, δ)` and checks the decay condition.
pub fn verify_asymptotics<F: Float>(sol: &RadialSolution<F>, tol_slope: F) -> AsymptoticsReport<F> {
    let g = F::from(to_f64(&sol.asymptotic.gamma)).unwrap();
    let d = F::from(to_f64(&sol.asymptotic.delta)).unwrap();
    let gamma_error = (sol.fitted_gamma - g).abs();
    let delta_error = (sol.fitted_delta - d).abs();
    let boundary_value = sol.u[sol.u.len() - 1].abs() + sol.v[sol.v.len() - 1].abs();
    AsymptoticsReport {
        gamma_error,
        delta_error,
        boundary_value,
        gamma_ok: gamma_error < tol_slope,
        delta_ok: delta_error < tol_slope,
        boundary_ok: boundary_value < F::from(10.0).unwrap() * sol.newton_tol,
    }
}

/// Writes the profile as CSV with columns `t,u,v`.
pub fn write_profile_csv<F: Float + std::fmt::LowerExp, W: Write>(
    sol: &RadialSolution<F>,
    mut w: W,
) -> io::Result<()> {
    writeln!(w, "t,u,v")?;
    for ((t, u), v) in sol.grid.iter().zip(&sol.u).zip(&sol.v) {
        writeln!(w, "{t:.17e},{u:.17e},{v:.17e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn trivial_solution_is_zero() {
        let cfg = SolverConfig::<f64>::default();
        let sol = solve_radial(CaseId::C4a, &AsymptoticData::new(int(0), int(0)), &cfg).unwrap();
        assert!(sol.u.iter().chain(&sol.v).all(|x| x.abs() < 1e-10));
        assert_eq!(sol.iterations, 0);
        let rep = verify_asymptotics(&sol, 1e-6);
        assert!(rep.passed());
    }

    #[test]
    fn outside_region_is_rejected() {
        let cfg = SolverConfig::<f64>::default();
        let r = solve_radial(CaseId::C4a, &AsymptoticData::new(int(5), int(0)), &cfg);
        assert!(matches!(r, Err(Error::OutsideRegion { .. })));
    }

    #[test]
    fn bad_configs_are_rejected() {
        let base = SolverConfig::<f64>::default();
        let cases = [
            SolverConfig { t_min: 5.0, ..base.clone() },
            SolverConfig { grid_points: 10, ..base.clone() },
            SolverConfig { newton_tol: 0.0, ..base.clone() },
            SolverConfig { damping: 1.5, ..base.clone() },
        ];
        for c in cases {
            assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn block_solver_matches_dense_product() {
        let cfg = SolverConfig::<f64> { grid_points: 64, ..Default::default() };
        let sys = RadialSystem::new(CaseId::C5a, 0.3, -0.2, &cfg);
        let x: Vec<[f64; 2]> = (0..sys.len()).map(|i| [0.01 * i as f64 - 0.3, 0.2 - 0.005 * i as f64]).collect();
        let j = sys.jacobian(&x);
        let r: Vec<[f64; 2]> = (0..sys.len()).map(|i| [(i as f64).sin(), (i as f64).cos()]).collect();
        let sol = j.solve(&r).unwrap();
        let dense = j.to_dense();
        let flat: Vec<f64> = sol.iter().flat_map(|p| [p[0], p[1]]).collect();
        for (row, target) in dense.iter().zip(r.iter().flat_map(|p| [p[0], p[1]])) {
            let lhs: f64 = row.iter().zip(&flat).map(|(a, b)| a * b).sum();
            assert!((lhs - target).abs() < 1e-9);
        }
    }

    #[test]
    fn vertex_solution_has_expected_slopes() {
        let cfg = SolverConfig::<f64>::default();
        let sol = solve_radial(CaseId::C4a, &AsymptoticData::new(int(3), int(1)), &cfg).unwrap();
        assert!(sol.residual_norm < 1e-10);
        let rep = verify_asymptotics(&sol, 0.05);
        assert!(rep.passed(), "{rep:?}");
    }
}
