//! The polyharmonic Pohozaev identity on balls and annuli: the boundary
//! functional P_k(r;u), its symmetric bilinear form, a full check of the
//! identity by quadrature, and the limit of P_k(r;Λr^{2k−n}+H) as r → 0.

pub mod field;

use crate::bubble::b_nk;
use crate::exact::{q, to_f64, PiMultiple};
use crate::quadrature::{integrate, SphericalQuadrature, Tolerance};
use crate::radial::{ClosedFormRadial, Dimension};
use crate::{Error, Result};
pub use field::{FieldJet, FieldTerm, SeparableField, SphereIntegrator, SpherePath};
use serde::Serialize;
use std::cell::RefCell;
use std::sync::Arc;

/// Which version of the odd-k remainder 𝓡_k is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OddBranch {
    /// The remainder for which the identity closes: no extra normal-derivative term.
    Consistent,
    /// Adds (n−2k)/2 ∫ Δ₀^m u ∂_ν Δ₀^m u, m = (k−1)/2, as printed in the statement.
    WithNormalTerm,
}

#[derive(Clone, Debug)]
pub struct PohozaevOptions {
    pub path: SpherePath,
    pub odd_branch: OddBranch,
    pub tolerance: Tolerance,
}

impl PohozaevOptions {
    pub fn new(path: SpherePath) -> Self {
        PohozaevOptions { path, odd_branch: OddBranch::Consistent, tolerance: Tolerance::new(1e-300, 1e-12) }
    }

    pub fn radial() -> Self {
        Self::new(SpherePath::Radial)
    }

    pub fn exact_moments() -> Self {
        Self::new(SpherePath::ExactMoments)
    }

    pub fn quadrature(rule: SphericalQuadrature) -> Self {
        Self::new(SpherePath::Quadrature(Arc::new(rule)))
    }

    pub fn with_odd_branch(mut self, b: OddBranch) -> Self {
        self.odd_branch = b;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeTerms {
    /// ∫ ((n−2k)/2 u + x^i∂_i u) 𝓔(u)
    pub error_term: f64,
    /// ((n−2k)/2 − n/p) ∫ f|u|^p
    pub exponent_defect: f64,
    /// −(1/p) ∫ x^i∂_i f |u|^p
    pub grad_f: f64,
    /// (r/p)∫_{∂B_r} f|u|^p − (s/p)∫_{∂B_s} f|u|^p
    pub surface: f64,
}

impl VolumeTerms {
    pub fn total(&self) -> f64 {
        self.error_term + self.exponent_defect + self.grad_f + self.surface
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PohozaevReport {
    pub r: f64,
    pub s: f64,
    pub boundary_outer: f64,
    pub boundary_inner: f64,
    pub volume_terms: VolumeTerms,
    pub rhs: f64,
    pub residual: f64,
    pub error_estimate: f64,
    /// Largest magnitude among the terms entering the residual.
    pub scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularMassLimit {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub limit: f64,
    pub error: f64,
    pub theta: PiMultiple,
    /// Θ(n,k) Λ H(0).
    pub closed_form: f64,
}

/// Θ(n,k) = ω_{n−1} 2^{k−2}(k−1)! (n−2k) ∏_{i=1}^{k}(n−2i).
pub fn theta(dim: Dimension) -> PiMultiple {
    let (n, k) = (dim.n() as i64, dim.k() as i64);
    let fact: i64 = (1..k).product();
    let prod: i64 = (1..=k).map(|i| n - 2 * i).product();
    let two = if k >= 2 { q(1i64 << (k - 2)) } else { crate::exact::qf(1, 2) };
    dim.sphere_area().as_pi_multiple().scale(&(two * q(fact * (n - 2 * k) * prod)))
}

/// Θ(n,k) b_{n,k}, which is rational.
pub fn theta_times_b(dim: Dimension) -> PiMultiple {
    theta(dim).mul(&b_nk(dim))
}

/// Iterated Laplacians of a field and of its radial derivative on one sphere.
struct Tower {
    lap: Vec<FieldJet>,
    elap: Vec<FieldJet>,
}

/// Sum of signed terms with a record of the largest summand.
#[derive(Default)]
struct Acc {
    value: f64,
    magnitude: f64,
}

impl Acc {
    fn add(&mut self, c: f64, v: f64) {
        self.value += c * v;
        self.magnitude = self.magnitude.max((c * v).abs());
    }
}

#[derive(Debug)]
pub struct Pohozaev {
    dim: Dimension,
    sphere: SphereIntegrator,
    odd_branch: OddBranch,
    tolerance: Tolerance,
}

impl Pohozaev {
    pub fn new(dim: Dimension, opts: PohozaevOptions) -> Self {
        Pohozaev {
            dim,
            sphere: SphereIntegrator::new(dim.n() as usize, opts.path),
            odd_branch: opts.odd_branch,
            tolerance: opts.tolerance,
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    fn jet_order(&self) -> usize {
        2 * self.dim.k() as usize + 2
    }

    fn check_field(&self, u: &SeparableField) -> Result<()> {
        if u.n() != self.dim.n() as usize {
            return Err(Error::InvalidArgument(format!("field lives in R^{}, expected R^{}", u.n(), self.dim.n())));
        }
        Ok(())
    }

    fn tower(&self, u: &SeparableField, r: f64) -> Result<Tower> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius {r} must be positive")));
        }
        self.check_field(u)?;
        let k = self.dim.k() as usize;
        let jet = u.jet(r, self.jet_order());
        if !jet.terms.iter().all(|(g, _)| g.is_finite()) {
            return Err(Error::OrderTooLow { have: 0, need: 2 * k });
        }
        let mut lap = vec![jet];
        for i in 0..k {
            let next = lap[i].laplacian();
            lap.push(next);
        }
        let mut elap = vec![lap[0].euler()];
        for i in 1..k / 2 {
            let next = elap[i - 1].laplacian();
            elap.push(next);
        }
        Ok(Tower { lap, elap })
    }

    /// The boundary expression with its first factor taken from X; T(u,u) = P_k(r;u).
    fn directed(&self, x: &Tower, y: &Tower) -> Result<Acc> {
        let k = self.dim.k() as usize;
        let c = self.dim.half_gap_f64();
        let r = x.lap[0].radius;
        let pair = |a: &FieldJet, b: &FieldJet| self.sphere.pair(a, b);
        let mut acc = Acc::default();
        for i in 0..k / 2 {
            let yk = &y.lap[k - i - 1];
            let nyk = yk.normal();
            acc.add(c, pair(&x.lap[i].normal(), yk)?);
            acc.add(-c, pair(&x.lap[i], &nyk)?);
            acc.add(1.0, pair(&x.elap[i].normal(), yk)?);
            acc.add(-1.0, pair(&x.elap[i], &nyk)?);
        }
        if k % 2 == 0 {
            acc.add(r / 2.0, pair(&x.lap[k / 2], &y.lap[k / 2])?);
        } else {
            let m = (k - 1) / 2;
            acc.add(r / 2.0, pair(&x.lap[m + 1], &y.lap[m])?);
            acc.add(0.5, pair(&x.lap[m], &y.lap[m].euler().normal())?);
            acc.add(-0.5, pair(&x.lap[m].euler(), &y.lap[m].normal())?);
            if self.odd_branch == OddBranch::WithNormalTerm {
                acc.add(c, pair(&x.lap[m], &y.lap[m].normal())?);
            }
        }
        Ok(acc)
    }

    fn boundary_with_magnitude(&self, u: &SeparableField, r: f64) -> Result<Acc> {
        if r == 0.0 {
            self.check_field(u)?;
            return Ok(Acc::default());
        }
        let t = self.tower(u, r)?;
        self.directed(&t, &t)
    }

    /// P_k(r;u); P_k(0;u) = 0 for fields smooth at the origin.
    pub fn boundary_functional(&self, u: &SeparableField, r: f64) -> Result<f64> {
        Ok(self.boundary_with_magnitude(u, r)?.value)
    }

    /// Φ_{k,r}(u,v), symmetric with Φ_{k,r}(u,u) = P_k(r;u).
    pub fn bilinear_form(&self, u: &SeparableField, v: &SeparableField, r: f64) -> Result<f64> {
        let tu = self.tower(u, r)?;
        let tv = self.tower(v, r)?;
        Ok(0.5 * (self.directed(&tu, &tv)?.value + self.directed(&tv, &tu)?.value))
    }

    /// Both sides of the identity on B(0,r) ∖ B(0,s).
    pub fn identity_residual(
        &self,
        u: &SeparableField,
        f: &SeparableField,
        p: f64,
        s: f64,
        r: f64,
    ) -> Result<PohozaevReport> {
        if !(p >= 2.0 && p.is_finite()) {
            return Err(Error::InvalidArgument(format!("exponent p = {p} must be >= 2")));
        }
        if !(s >= 0.0 && s < r && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("need 0 <= s < r, got s = {s}, r = {r}")));
        }
        self.check_field(f)?;
        let n = self.dim.n() as i32;
        let k = self.dim.k() as usize;
        let c = self.dim.half_gap_f64();
        let radial = u.is_radial() && f.is_radial();
        let failure: RefCell<Option<Error>> = RefCell::new(None);

        // ρ^{n−1} ∫_{S} F(u, f) at radius ρ, for pointwise integrands.
        let shell = |rho: f64, which: u8| -> f64 {
            if failure.borrow().is_some() {
                return 0.0;
            }
            let uj = u.jet(rho, self.jet_order());
            let fj = f.jet(rho, 2);
            let value = match which {
                0 => {
                    let mut lk = uj.clone();
                    for _ in 0..k {
                        lk = lk.laplacian();
                    }
                    let eu = uj.euler();
                    self.sphere.angular(radial, |th| {
                        let uv = uj.value_at(th);
                        let e = lk.value_at(th) - fj.value_at(th) * uv.abs().powf(p - 2.0) * uv;
                        (c * uv + eu.value_at(th)) * e
                    })
                }
                1 => self.sphere.angular(radial, |th| fj.value_at(th) * uj.value_at(th).abs().powf(p)),
                _ => {
                    let ef = fj.euler();
                    self.sphere.angular(radial, |th| ef.value_at(th) * uj.value_at(th).abs().powf(p))
                }
            };
            match value {
                Ok(v) => v * rho.powi(n - 1),
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    0.0
                }
            }
        };
        let mut error_estimate = 0.0;
        let mut volume = |which: u8| -> Result<f64> {
            let est = integrate(|rho| shell(rho, which), s, r, self.tolerance)?;
            if let Some(e) = failure.borrow_mut().take() {
                return Err(e);
            }
            error_estimate += est.error;
            Ok(est.value)
        };
        let err_int = volume(0)?;
        let f_int = volume(1)?;
        let grad_int = volume(2)?;
        let surface_at = |rho: f64| -> Result<f64> {
            if rho == 0.0 {
                return Ok(0.0);
            }
            let uj = u.jet(rho, 0);
            let fj = f.jet(rho, 0);
            let a = self.sphere.angular(radial, |th| fj.value_at(th) * uj.value_at(th).abs().powf(p))?;
            Ok(rho / p * a * rho.powi(n - 1))
        };
        let outer = self.boundary_with_magnitude(u, r)?;
        let inner = self.boundary_with_magnitude(u, s)?;
        let terms = VolumeTerms {
            error_term: err_int,
            exponent_defect: (c - n as f64 / p) * f_int,
            grad_f: -grad_int / p,
            surface: surface_at(r)? - surface_at(s)?,
        };
        let rhs = terms.total();
        let residual = (outer.value - inner.value) - rhs;
        let scale = [
            outer.value,
            inner.value,
            terms.error_term,
            terms.exponent_defect,
            terms.grad_f,
            terms.surface,
        ]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
        let roundoff = 1e3 * f64::EPSILON * scale.max(outer.magnitude).max(inner.magnitude);
        Ok(PohozaevReport {
            r,
            s,
            boundary_outer: outer.value,
            boundary_inner: inner.value,
            volume_terms: terms,
            rhs,
            residual,
            error_estimate: error_estimate + roundoff,
            scale,
        })
    }

    /// lim_{r→0} P_k(r;u) from r_j = 2^{−j}, j = 3..12: (radii, values, limit, error estimate).
    pub fn limit_at_origin(&self, u: &SeparableField) -> Result<(Vec<f64>, Vec<f64>, f64, f64)> {
        let radii: Vec<f64> = (3..=12).map(|j| 0.5f64.powi(j)).collect();
        let values = radii.iter().map(|&r| self.boundary_functional(u, r)).collect::<Result<Vec<_>>>()?;
        let (limit, error) = richardson(&values);
        Ok((radii, values, limit, error))
    }

    /// lim_{r→0} P_k(r; Λ r^{2k−n} + H) against Θ(n,k) Λ H(0).
    pub fn singular_mass_limit(&self, lambda: f64, h: &SeparableField) -> Result<SingularMassLimit> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("Λ = {lambda} must be positive")));
        }
        self.check_field(h)?;
        let a = q(2 * self.dim.k() as i64 - self.dim.n() as i64);
        let g = SeparableField::radial(h.n(), ClosedFormRadial::power(q(1), a)).scaled(lambda);
        let (radii, values, limit, error) = self.limit_at_origin(&g.plus(h))?;
        let th = theta(self.dim);
        let closed_form = th.value() * lambda * h.value_at_origin();
        let tol = 1e-7 * limit.abs().max(closed_form.abs()).max(1.0);
        if !(error <= tol) {
            return Err(Error::Extrapolation { estimate: error, tolerance: tol });
        }
        Ok(SingularMassLimit { radii, values, limit, error, theta: th, closed_form })
    }
}

/// Extrapolates values at r_j = r_0 2^{−j} with a remainder expanded in powers of r.
/// Returns the entry with the smallest difference to its predecessor and that difference.
pub fn richardson(values: &[f64]) -> (f64, f64) {
    let m = values.len();
    let mut table: Vec<Vec<f64>> = values.iter().map(|v| vec![*v]).collect();
    let mut best = (*values.last().expect("at least one value"), f64::INFINITY);
    for j in 1..m {
        let d = (table[j][0] - table[j - 1][0]).abs();
        if d < best.1 {
            best = (table[j][0], d);
        }
        for l in 1..=j {
            let factor = 2f64.powi(l as i32) - 1.0;
            let v = table[j][l - 1] + (table[j][l - 1] - table[j - 1][l - 1]) / factor;
            table[j].push(v);
            if l < j {
                let d = (v - table[j - 1][l]).abs();
                if d < best.1 {
                    best = (v, d);
                }
            }
        }
    }
    best
}

/// Rational value Θ(n,k) b_{n,k}, expected to equal (n−2k)/2.
pub fn theta_b_value(dim: Dimension) -> f64 {
    let t = theta_times_b(dim);
    debug_assert_eq!(t.pi_power, 0);
    to_f64(&t.coeff)
}
