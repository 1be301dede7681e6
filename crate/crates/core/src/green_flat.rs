//! The flat fundamental solution G₀ = b_{n,k} r^{2k−n}, its Dirac property, and
//! the boundary-functional limit of a local Green's function model.

use crate::bubble::b_nk;
use crate::exact::{q, to_f64, PiMultiple};
use crate::harmonic_poly::HomPoly;
use crate::pohozaev::{theta_times_b, Pohozaev, PohozaevOptions, SeparableField, SphereIntegrator, SpherePath};
use crate::quadrature::{integrate_breaks, Tolerance};
use crate::radial::{ClosedFormRadial, Dimension, FnProfile};
use crate::{Error, Result};
use serde::Serialize;
use std::sync::Arc;

/// b_{n,k} r^{2k−n} as an exact closed form.
pub fn fundamental_solution(dim: Dimension) -> (PiMultiple, ClosedFormRadial) {
    let a = q(2 * dim.k() as i64 - dim.n() as i64);
    (b_nk(dim), ClosedFormRadial::power(q(1), a))
}

fn g0_field(dim: Dimension) -> SeparableField {
    let (b, shape) = fundamental_solution(dim);
    SeparableField::radial(dim.n() as usize, shape).scaled(b.value())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiracReport {
    pub integral: f64,
    pub phi0: f64,
    pub defect: f64,
    pub error_estimate: f64,
}

/// |∫ G₀ Δ₀ᵏφ − φ(0)| for φ supported in B(0, support_radius).
///
/// Integrates ω_{n−1} b_{n,k} r^{2k−1} × (sphere mean of Δ₀ᵏφ) in r, which is bounded at 0.
pub fn dirac_check(phi: &SeparableField, support_radius: f64, dim: Dimension) -> Result<DiracReport> {
    if phi.n() != dim.n() as usize {
        return Err(Error::InvalidArgument("test field dimension mismatch".into()));
    }
    if !(support_radius > 0.0 && support_radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("support radius {support_radius} must be positive")));
    }
    let k = dim.k() as usize;
    let n = dim.n() as usize;
    let b = b_nk(dim).value();
    let sphere = SphereIntegrator::new(n, SpherePath::ExactMoments);
    let one = SeparableField::radial(n, FnProfile::constant(1.0));
    let failure = std::sync::Mutex::new(None);
    let integrand = |r: f64| {
        let mut j = phi.jet(r, 2 * k);
        for _ in 0..k {
            j = j.laplacian();
        }
        // ∫_{∂B_r} Δ₀ᵏφ = r^{n−1} ω × mean; G₀ = b r^{2k−n}.
        match sphere.pair(&j, &one.jet(r, 0)) {
            Ok(v) => b * r.powi(2 * k as i32 - n as i32) * v,
            Err(e) => {
                *failure.lock().unwrap() = Some(e);
                0.0
            }
        }
    };
    let breaks: Vec<f64> = (0..=8).map(|i| support_radius * i as f64 / 8.0).collect();
    let est = integrate_breaks(integrand, &breaks, Tolerance::new(1e-8, 1e-10))?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let phi0 = phi.value_at_origin();
    Ok(DiracReport { integral: est.value, phi0, defect: (est.value - phi0).abs(), error_estimate: est.error })
}

/// G(x) = Λ r^{2k−n}(1 + ψ⁽⁴⁾ + ψ⁽⁵⁾) + A + h(x) with Λ = b_{n,k}.
#[derive(Clone, Debug)]
pub struct GreenModel {
    pub dim: Dimension,
    pub lambda: PiMultiple,
    pub mass: f64,
    pub psi4: HomPoly,
    pub psi5: HomPoly,
    pub remainder: SeparableField,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MassLimit {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub limit: f64,
    pub error: f64,
    /// c_{n,k} = Θ(n,k) b_{n,k}.
    pub c_value: f64,
    /// c_{n,k}(A + h(0)).
    pub expected: f64,
    /// max_r |2Φ_{k,r}(G₀ + A + h(0), r^{2k−n}(ψ⁽⁴⁾ + ψ⁽⁵⁾))| over the sample radii.
    pub correction: f64,
}

impl GreenModel {
    pub fn new(dim: Dimension, mass: f64) -> Self {
        let n = dim.n() as usize;
        GreenModel {
            dim,
            lambda: b_nk(dim),
            mass,
            psi4: HomPoly::zero(n, 4),
            psi5: HomPoly::zero(n, 5),
            remainder: SeparableField::zero(n),
        }
    }

    /// Attaches corrections; each must have zero sphere average.
    pub fn with_corrections(mut self, psi4: HomPoly, psi5: HomPoly) -> Result<Self> {
        for (which, p, d) in [("psi4", &psi4, 4), ("psi5", &psi5, 5)] {
            if p.degree() != d || p.n() != self.dim.n() as usize {
                return Err(Error::InvalidArgument(format!("{which} must have degree {d} in R^{}", self.dim.n())));
            }
            let mean = p.sphere_average();
            if mean != q(0) {
                return Err(Error::NonzeroMean { which: which.into(), value: mean.to_string() });
            }
        }
        self.psi4 = psi4;
        self.psi5 = psi5;
        Ok(self)
    }

    pub fn with_remainder(mut self, h: SeparableField) -> Result<Self> {
        if h.n() != self.dim.n() as usize {
            return Err(Error::InvalidArgument("remainder dimension mismatch".into()));
        }
        self.remainder = h;
        Ok(self)
    }

    pub fn h0(&self) -> f64 {
        self.remainder.value_at_origin()
    }

    fn singular_shape(&self) -> ClosedFormRadial {
        fundamental_solution(self.dim).1
    }

    fn corrections_field(&self) -> SeparableField {
        let n = self.dim.n() as usize;
        let mut f = SeparableField::zero(n);
        let shape = Arc::new(self.singular_shape());
        let lam = self.lambda.value();
        f.push(lam, shape.clone(), self.psi4.clone());
        f.push(lam, shape, self.psi5.clone());
        f
    }

    /// The full model as a separable field.
    pub fn field(&self) -> SeparableField {
        let n = self.dim.n() as usize;
        g0_field(self.dim)
            .plus(&self.corrections_field())
            .plus(&SeparableField::radial(n, FnProfile::constant(self.mass)))
            .plus(&self.remainder)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.field().eval(x)
    }

    /// Smallest C with C^{−1} r^{2k−n} ≤ G(x) ≤ C r^{2k−n} on the sample points.
    pub fn bound_constant(&self, points: &[Vec<f64>]) -> Result<f64> {
        let u = self.field();
        let e = 2 * self.dim.k() as i32 - self.dim.n() as i32;
        let mut c = 1.0f64;
        for x in points {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let ratio = u.eval(x) / r.powi(e);
            if !(ratio > 0.0) {
                return Err(Error::InvalidArgument(format!("model is not positive at r = {r}")));
            }
            c = c.max(ratio).max(1.0 / ratio);
        }
        Ok(c)
    }

    /// Limit of P_k(r;G) as r → 0 against c_{n,k}(A + h(0)).
    pub fn mass_limit(&self, opts: PohozaevOptions) -> Result<MassLimit> {
        let pz = Pohozaev::new(self.dim, opts);
        let (radii, values, limit, error) = pz.limit_at_origin(&self.field())?;
        let c_value = to_f64(&theta_times_b(self.dim).coeff);
        let expected = c_value * (self.mass + self.h0());
        let n = self.dim.n() as usize;
        let radial_part = g0_field(self.dim).plus(&SeparableField::radial(n, FnProfile::constant(self.mass + self.h0())));
        let corr = self.corrections_field();
        let mut correction = 0.0f64;
        let mut scale = 0.0f64;
        if !corr.terms().is_empty() {
            for &r in &radii {
                correction = correction.max((2.0 * pz.bilinear_form(&radial_part, &corr, r)?).abs());
                scale = scale.max(pz.boundary_functional(&radial_part, r)?.abs());
            }
        }
        let tol = 1e-9 * scale.max(1.0);
        if correction > tol {
            return Err(Error::CorrectionNonzero { value: correction, tolerance: tol });
        }
        let etol = 1e-7 * limit.abs().max(expected.abs()).max(1.0);
        if !(error <= etol) {
            return Err(Error::Extrapolation { estimate: error, tolerance: etol });
        }
        Ok(MassLimit { radii, values, limit, error, c_value, expected, correction })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    fn dim(n: u32, k: u32) -> Dimension {
        Dimension::new(n, k).unwrap()
    }

    #[test]
    fn fundamental_solution_examples() {
        let (b, _) = fundamental_solution(dim(3, 1));
        assert_eq!(b, PiMultiple { coeff: qf(1, 4), pi_power: -1 });
        let d = dim(5, 2);
        let (b, g) = fundamental_solution(d);
        assert_eq!(b, PiMultiple { coeff: qf(1, 16), pi_power: -2 });
        assert!(crate::radial::iterate_polyharmonic(&g, 2, d).is_zero());
    }

    #[test]
    fn dirac_property() {
        for (n, k) in [(3, 1), (5, 2), (7, 3)] {
            let phi = SeparableField::radial(n as usize, FnProfile::gaussian_bump(1.0, 4.0));
            let rep = dirac_check(&phi, 2.0, dim(n, k)).unwrap();
            assert!(rep.defect <= 1e-6 * rep.phi0.abs(), "({n},{k}) {rep:?}");
        }
    }

    #[test]
    fn mass_limit_without_corrections() {
        let d = dim(5, 2);
        let m = GreenModel::new(d, 1.0).mass_limit(PohozaevOptions::radial()).unwrap();
        assert!((m.limit - m.expected).abs() <= 1e-6 * m.expected.abs(), "{m:?}");
        assert_eq!(m.c_value, 0.5);
        let z = GreenModel::new(d, 0.0).mass_limit(PohozaevOptions::radial()).unwrap();
        assert!(z.limit.abs() < 1e-9);
    }

    #[test]
    fn nonzero_mean_corrections_are_rejected() {
        let d = dim(8, 2);
        let x = |i| HomPoly::var(8, i);
        let bad = x(0).mul(&x(0)).mul(&x(1)).mul(&x(1));
        assert!(matches!(
            GreenModel::new(d, 1.0).with_corrections(bad, HomPoly::zero(8, 5)),
            Err(Error::NonzeroMean { .. })
        ));
    }
}
