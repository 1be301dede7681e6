//! The GJMS operator on the round sphere Sⁿ through its factorization
//! ∏(Δ_g + K_i), zonal spectral fields, Newton solves of P u = f^{p−2*} u^{p−1},
//! stereographic bubbles and blow-up diagnostics at the pole.

use crate::bubble::c_nk;
use crate::exact::{q, qf, to_f64, Q};
use crate::quadrature::{gauss_gegenbauer, unit_sphere_area, GegenbauerBasis};
use crate::radial::Dimension;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_traits::One;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct GjmsSphereSpec {
    pub dim: Dimension,
    /// K_i = (n+2i−2)(n−2i)/4, i = 1..k.
    pub shift_constants: Vec<Q>,
    /// Q = 2/(n−2k) ∏K_i.
    pub q_constant: Q,
}

impl GjmsSphereSpec {
    pub fn new(dim: Dimension) -> Self {
        let n = dim.n() as i64;
        let shift_constants: Vec<Q> = (1..=dim.k() as i64).map(|i| qf((n + 2 * i - 2) * (n - 2 * i), 4)).collect();
        let p1: Q = shift_constants.iter().fold(Q::one(), |acc, x| acc * x);
        let q_constant = p1 * qf(2, n - 2 * dim.k() as i64);
        GjmsSphereSpec { dim, shift_constants, q_constant }
    }

    /// P(1) = ∏K_i.
    pub fn p_of_one(&self) -> Q {
        self.shift_constants.iter().fold(Q::one(), |acc, x| acc * x)
    }

    /// λ_ℓ = ℓ(ℓ+n−1).
    pub fn laplace_eigenvalue(&self, ell: u32) -> Q {
        q(ell as i64 * (ell as i64 + self.dim.n() as i64 - 1))
    }

    /// Critical exponent 2*_k as a float.
    pub fn critical_exponent(&self) -> f64 {
        self.dim.crit_exp_f64()
    }
}

/// ∏_{i=1}^k (λ_ℓ + K_i).
pub fn gjms_multiplier(spec: &GjmsSphereSpec, ell: u32) -> Q {
    let lam = spec.laplace_eigenvalue(ell);
    spec.shift_constants.iter().fold(Q::one(), |acc, k| acc * (&lam + k))
}

pub fn q_curvature_constant(spec: &GjmsSphereSpec) -> Q {
    spec.q_constant.clone()
}

/// Gauss grid in t = cos θ with the orthonormal zonal basis for the weight (1−t²)^{(n−2)/2}.
#[derive(Debug)]
pub struct ZonalGrid {
    n: u32,
    degree: usize,
    basis: GegenbauerBasis,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// Row j holds φ_0(t_j), …, φ_L(t_j).
    table: DMatrix<f64>,
    omega: f64,
}

impl ZonalGrid {
    /// Degree L with 2L Gauss nodes, enough for products of three band-limited factors.
    pub fn new(n: u32, degree: usize) -> Arc<Self> {
        assert!(n >= 2 && degree >= 1);
        let a = (n as f64 - 2.0) / 2.0;
        let (nodes, weights) = gauss_gegenbauer(2 * degree, a);
        let basis = GegenbauerBasis::new(a, degree + 1);
        let mut table = DMatrix::zeros(nodes.len(), degree + 1);
        let mut row = vec![0.0; degree + 1];
        for (j, &t) in nodes.iter().enumerate() {
            basis.eval(t, &mut row);
            for (l, v) in row.iter().enumerate() {
                table[(j, l)] = *v;
            }
        }
        Arc::new(ZonalGrid { n, degree, basis, nodes, weights, table, omega: unit_sphere_area(n as usize) })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Coefficients of the L²-projection from values on the nodes.
    pub fn forward(&self, values: &[f64]) -> Vec<f64> {
        let wv = DVector::from_iterator(values.len(), values.iter().zip(&self.weights).map(|(v, w)| v * w));
        (self.table.transpose() * wv).iter().copied().collect()
    }

    pub fn inverse(&self, coeffs: &[f64]) -> Vec<f64> {
        (&self.table * DVector::from_column_slice(coeffs)).iter().copied().collect()
    }

    pub fn eval(&self, coeffs: &[f64], t: f64) -> f64 {
        let mut row = vec![0.0; coeffs.len()];
        self.basis.eval(t, &mut row);
        row.iter().zip(coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn project<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        let vals: Vec<f64> = self.nodes.iter().map(|&t| f(t)).collect();
        self.forward(&vals)
    }

    /// ⟨u, v⟩ on Sⁿ = ω_{n−1} Σ a_ℓ b_ℓ, since dv = ω_{n−1}(1−t²)^{(n−2)/2} dt on zonal functions.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.omega * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>()
    }
}

/// A rotationally symmetric function on Sⁿ in the zonal basis, ℓ = 0..L.
#[derive(Clone, Debug)]
pub struct SpectralRadialField {
    pub coeffs: Vec<f64>,
    grid: Arc<ZonalGrid>,
}

impl SpectralRadialField {
    pub fn new(grid: Arc<ZonalGrid>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != grid.degree + 1 {
            return Err(Error::InvalidArgument(format!("expected {} coefficients, got {}", grid.degree + 1, coeffs.len())));
        }
        Ok(SpectralRadialField { coeffs, grid })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(grid: Arc<ZonalGrid>, f: F) -> Self {
        let coeffs = grid.project(f);
        SpectralRadialField { coeffs, grid }
    }

    pub fn constant(grid: Arc<ZonalGrid>, c: f64) -> Self {
        let mut coeffs = vec![0.0; grid.degree + 1];
        coeffs[0] = c / grid.basis_p0();
        SpectralRadialField { coeffs, grid }
    }

    pub fn grid(&self) -> &Arc<ZonalGrid> {
        &self.grid
    }

    pub fn values(&self) -> Vec<f64> {
        self.grid.inverse(&self.coeffs)
    }

    /// Value at polar angle θ = arccos t.
    pub fn eval(&self, t: f64) -> f64 {
        self.grid.eval(&self.coeffs, t)
    }

    pub fn pole_value(&self) -> f64 {
        self.eval(1.0)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// First node (ascending t) with a nonpositive value.
    pub fn check_positive(&self) -> Result<()> {
        for (j, (&t, v)) in self.grid.nodes.iter().zip(self.values()).enumerate() {
            if !(v > 0.0) {
                return Err(Error::LostPositivity { node: j, t, value: v });
            }
        }
        Ok(())
    }
}

impl ZonalGrid {
    fn basis_p0(&self) -> f64 {
        let mut v = [0.0];
        self.basis.eval(0.0, &mut v);
        v[0]
    }
}

/// Coefficientwise a_ℓ ↦ ∏(λ_ℓ + K_i) a_ℓ.
pub fn apply_gjms(spec: &GjmsSphereSpec, u: &SpectralRadialField) -> SpectralRadialField {
    let coeffs = u.coeffs.iter().enumerate().map(|(l, a)| to_f64(&gjms_multiplier(spec, l as u32)) * a).collect();
    SpectralRadialField { coeffs, grid: u.grid.clone() }
}

fn multipliers(spec: &GjmsSphereSpec, degree: usize) -> Vec<f64> {
    (0..=degree).map(|l| to_f64(&gjms_multiplier(spec, l as u32))).collect()
}

/// Pointwise ρ ↦ g ρ^{p−1} projected back, with the sign carried through.
fn nonlinearity(u: &SpectralRadialField, weight: &[f64], p: f64) -> Vec<f64> {
    let vals: Vec<f64> = u.values().iter().zip(weight).map(|(v, g)| g * v.abs().powf(p - 2.0) * v).collect();
    u.grid.forward(&vals)
}

/// ‖P u − f^{p−2*}u^{p−1}‖ / ‖f^{p−2*}u^{p−1}‖ in coefficients.
pub fn spectral_residual(spec: &GjmsSphereSpec, u: &SpectralRadialField, p: f64, f: &dyn Fn(f64) -> f64) -> f64 {
    let (res, scale) = residual_parts(spec, u, p, &weights_on_grid(spec, &u.grid, p, f));
    res / scale
}

fn weights_on_grid(spec: &GjmsSphereSpec, grid: &ZonalGrid, p: f64, f: &dyn Fn(f64) -> f64) -> Vec<f64> {
    let e = p - spec.critical_exponent();
    grid.nodes.iter().map(|&t| f(t).powf(e)).collect()
}

fn residual_parts(spec: &GjmsSphereSpec, u: &SpectralRadialField, p: f64, weight: &[f64]) -> (f64, f64) {
    let m = multipliers(spec, u.grid.degree);
    let nl = nonlinearity(u, weight, p);
    let res = u.coeffs.iter().zip(&m).zip(&nl).map(|((a, m), b)| (m * a - b).powi(2)).sum::<f64>().sqrt();
    let scale = nl.iter().map(|b| b * b).sum::<f64>().sqrt();
    (res, scale)
}

/// The flat bubble pulled back by stereographic projection from the antipode of the pole.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StereoBubble {
    pub n: u32,
    pub k: u32,
    pub mu: f64,
    /// Scale of the flat bubble, μ′ = μ/2.
    pub mu_flat: f64,
    pub c: f64,
}

impl StereoBubble {
    pub fn new(dim: Dimension, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidArgument(format!("μ = {mu} must be positive")));
        }
        Ok(StereoBubble { n: dim.n(), k: dim.k(), mu, mu_flat: mu / 2.0, c: c_nk(dim).to_f64() })
    }

    /// u(t) = μ′^b (μ′²(1+t) + (1−t)/𝔠)^{−b}, b = (n−2k)/2; u(pole) = μ^{−b}.
    pub fn eval(&self, t: f64) -> f64 {
        let b = (self.n as f64 - 2.0 * self.k as f64) / 2.0;
        let m = self.mu_flat;
        m.powf(b) * (m * m * (1.0 + t) + (1.0 - t) / self.c).powf(-b)
    }

    /// The μ for which the pulled-back bubble is constant.
    pub fn constant_mu(dim: Dimension) -> f64 {
        2.0 / c_nk(dim).to_f64().sqrt()
    }
}

#[derive(Clone, Debug)]
pub struct BubbleField {
    pub field: SpectralRadialField,
    pub closed_form: StereoBubble,
    /// Relative size of the top eight coefficients.
    pub aliasing: f64,
    pub warning: Option<String>,
}

pub fn stereographic_bubble(spec: &GjmsSphereSpec, mu: f64, grid: Arc<ZonalGrid>) -> Result<BubbleField> {
    if grid.n() != spec.dim.n() {
        return Err(Error::InvalidArgument("grid dimension mismatch".into()));
    }
    let b = StereoBubble::new(spec.dim, mu)?;
    let field = SpectralRadialField::from_fn(grid, |t| b.eval(t));
    let tail = field.coeffs.iter().rev().take(8).map(|c| c * c).sum::<f64>().sqrt();
    let aliasing = tail / field.norm();
    let warning = (aliasing > 1e-8).then(|| {
        format!("truncation L = {} under-resolves μ = {mu}: tail/norm = {aliasing:e}", field.grid.degree)
    });
    Ok(BubbleField { field, closed_form: b, aliasing, warning })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    pub max_halvings: usize,
    pub tolerance: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { max_iterations: 60, max_halvings: 30, tolerance: 1e-10 }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub field: SpectralRadialField,
    pub iterations: usize,
    /// Coefficient norm of P u − f^{p−2*}u^{p−1}.
    pub residual: f64,
    pub history: Vec<f64>,
}

/// Newton on the coefficients for P u = f^{p−2*} u^{p−1}, with step halving and SVD solves.
pub fn solve_subcritical(
    spec: &GjmsSphereSpec,
    p: f64,
    f: &dyn Fn(f64) -> f64,
    init: &SpectralRadialField,
    opts: NewtonOptions,
) -> Result<Solution> {
    if !(p > 2.0 && p <= spec.critical_exponent() + 1e-12) {
        return Err(Error::InvalidArgument(format!("exponent p = {p} must lie in (2, 2*]")));
    }
    let grid = init.grid.clone();
    if grid.n() != spec.dim.n() {
        return Err(Error::InvalidArgument("grid dimension mismatch".into()));
    }
    init.check_positive()?;
    let weight = weights_on_grid(spec, &grid, p, f);
    if weight.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Error::InvalidArgument("f must be positive on the grid".into()));
    }
    let m = multipliers(spec, grid.degree);
    let size = grid.degree + 1;
    let residual_vec = |u: &SpectralRadialField| -> DVector<f64> {
        let nl = nonlinearity(u, &weight, p);
        DVector::from_iterator(size, (0..size).map(|l| m[l] * u.coeffs[l] - nl[l]))
    };
    let mut u = init.clone();
    let mut r = residual_vec(&u);
    let tol_of = |u: &SpectralRadialField| opts.tolerance * nonlinearity(u, &weight, p).iter().map(|b| b * b).sum::<f64>().sqrt().max(1.0);
    let mut history = vec![r.norm()];
    for it in 0..=opts.max_iterations {
        if r.norm() <= tol_of(&u) {
            u.check_positive()?;
            return Ok(Solution { field: u, iterations: it, residual: r.norm(), history });
        }
        if it == opts.max_iterations {
            break;
        }
        let vals = u.values();
        // J = diag(m) − Eᵀ W diag((p−1) g |u|^{p−2}) E
        let mut scaled = grid.table.clone();
        for (j, v) in vals.iter().enumerate() {
            let s = grid.weights[j] * (p - 1.0) * weight[j] * v.abs().powf(p - 2.0);
            scaled.row_mut(j).scale_mut(s);
        }
        let mut jac = -(grid.table.transpose() * scaled);
        for l in 0..size {
            jac[(l, l)] += m[l];
        }
        let svd = jac.svd(true, true);
        let cutoff = 1e-12 * svd.singular_values.max();
        let step = svd.solve(&r, cutoff).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<f64> = u.coeffs.iter().zip(step.iter()).map(|(a, d)| a - lambda * d).collect();
            let cand = SpectralRadialField { coeffs: trial, grid: grid.clone() };
            let rc = residual_vec(&cand);
            if rc.norm() < r.norm() {
                u = cand;
                r = rc;
                accepted = true;
                break;
            }
            lambda /= 2.0;
        }
        history.push(r.norm());
        if !accepted {
            if r.norm() <= 10.0 * tol_of(&u) {
                // Stagnation at rounding level.
                u.check_positive()?;
                return Ok(Solution { field: u, iterations: it + 1, residual: r.norm(), history });
            }
            return Err(Error::NewtonDivergence { iterations: it + 1, residual: r.norm() });
        }
    }
    Err(Error::NewtonDivergence { iterations: opts.max_iterations, residual: r.norm() })
}

/// One step of natural continuation in p.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContinuationPoint {
    pub p: f64,
    pub sup_norm: f64,
    pub mu: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Solves along `ps` in order, each from the previous solution.
pub fn continuation(
    spec: &GjmsSphereSpec,
    ps: &[f64],
    f: &dyn Fn(f64) -> f64,
    init: &SpectralRadialField,
    opts: NewtonOptions,
) -> Result<Vec<ContinuationPoint>> {
    let mut cur = init.clone();
    let mut out = Vec::with_capacity(ps.len());
    for &p in ps {
        let sol = solve_subcritical(spec, p, f, &cur, opts)?;
        let sup = sol.field.values().iter().fold(0.0f64, |m, v| m.max(v.abs())).max(sol.field.pole_value());
        let mu = sol.field.pole_value().powf(-(p - 2.0) / (2.0 * spec.dim.k() as f64));
        out.push(ContinuationPoint { p, sup_norm: sup, mu, iterations: sol.iterations, residual: sol.residual });
        cur = sol.field;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlowupDiagnostics {
    pub mu: f64,
    pub radius_of_influence: f64,
    pub epsilon: f64,
    pub profile_distance: f64,
}

/// Concentration scale, radius of influence and rescaled profile distance at the pole.
///
/// μ = u(pole)^{−(p−2)/(2k)}, so that μ^{2k/(p−2)} u(pole) = 1 = U(0).
pub fn blowup_diagnostics(u: &SpectralRadialField, dim: Dimension, p: f64, epsilon: f64) -> Result<BlowupDiagnostics> {
    if !(p > 2.0) || !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!("need p > 2 and 0 < ε < 1, got p = {p}, ε = {epsilon}")));
    }
    let k = dim.k() as f64;
    let b = dim.half_gap_f64();
    let c = c_nk(dim).to_f64();
    let top = u.pole_value();
    if !(top > 0.0) {
        return Err(Error::LostPositivity { node: usize::MAX, t: 1.0, value: top });
    }
    // The pole must dominate a neighbourhood; the zonal derivative vanishes there automatically.
    let near = (1..=64).map(|j| u.eval((PI * j as f64 / 4096.0).cos())).fold(f64::NEG_INFINITY, f64::max);
    if near > top * (1.0 + 1e-12) {
        return Err(Error::PoleNotMax(format!("u(pole) = {top}, nearby maximum {near}")));
    }
    let e = 2.0 * k / (p - 2.0);
    let mu = top.powf(-1.0 / e);
    let bubble = |theta: f64| mu.powf(dim.n() as f64 - 2.0 * k - e) * (mu * mu + theta * theta / c).powf(-b);
    let steps = 4096;
    let mut radius = 0.0;
    for j in 0..=steps {
        let theta = PI * j as f64 / steps as f64;
        let bv = bubble(theta);
        if (u.eval(theta.cos()) - bv).abs() <= epsilon * bv {
            radius = theta;
        } else {
            break;
        }
    }
    let flat = |s: f64| (1.0 + s * s / c).powf(-b);
    let profile_distance = (0..=2000)
        .map(|j| {
            let s = 10.0 * j as f64 / 2000.0;
            (mu.powf(e) * u.eval((mu * s).cos()) - flat(s)).abs()
        })
        .fold(0.0, f64::max);
    Ok(BlowupDiagnostics { mu, radius_of_influence: radius, epsilon, profile_distance })
}
