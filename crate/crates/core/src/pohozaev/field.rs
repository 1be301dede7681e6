//! Separable fields Σ c_j g_j(|x|²) P_j(x) with exact polynomial parts, their
//! jets on spheres, and sphere integrals of products.

use crate::exact::to_f64;
use crate::harmonic_poly::HomPoly;
use crate::quadrature::SphericalQuadrature;
use crate::radial::{RadialProfile, SphereArea};
use crate::series::Series;
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

#[derive(Clone, Debug)]
pub struct FieldTerm {
    pub coeff: f64,
    pub profile: Arc<dyn RadialProfile>,
    pub poly: HomPoly,
}

/// u(x) = Σ coeff_j · g_j(|x|²) · P_j(x).
#[derive(Clone, Debug)]
pub struct SeparableField {
    n: usize,
    terms: Vec<FieldTerm>,
}

impl SeparableField {
    pub fn zero(n: usize) -> Self {
        SeparableField { n, terms: Vec::new() }
    }

    pub fn radial(n: usize, profile: impl RadialProfile + 'static) -> Self {
        SeparableField::zero(n).with_term(1.0, profile, HomPoly::constant(n, crate::exact::q(1)))
    }

    pub fn with_term(mut self, coeff: f64, profile: impl RadialProfile + 'static, poly: HomPoly) -> Self {
        self.push(coeff, Arc::new(profile), poly);
        self
    }

    pub fn push(&mut self, coeff: f64, profile: Arc<dyn RadialProfile>, poly: HomPoly) {
        assert_eq!(poly.n(), self.n, "polynomial dimension must match the field");
        if coeff != 0.0 && !poly.is_zero() {
            self.terms.push(FieldTerm { coeff, profile, poly });
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[FieldTerm] {
        &self.terms
    }

    pub fn is_radial(&self) -> bool {
        self.terms.iter().all(|t| t.poly.degree() == 0)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.poly.degree()).max().unwrap_or(0)
    }

    pub fn plus(&self, o: &SeparableField) -> SeparableField {
        assert_eq!(self.n, o.n);
        let mut out = self.clone();
        out.terms.extend(o.terms.iter().cloned());
        out
    }

    pub fn scaled(&self, c: f64) -> SeparableField {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= c;
        }
        out.terms.retain(|t| t.coeff != 0.0);
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        self.terms.iter().map(|t| t.coeff * t.profile.value(r) * t.poly.eval(x)).sum()
    }

    /// u(0); only degree-0 polynomial parts survive.
    pub fn value_at_origin(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.poly.degree() == 0)
            .map(|t| t.coeff * t.profile.value(0.0) * to_f64(&t.poly.coeff(&vec![0; self.n])))
            .sum()
    }

    /// Jet on the sphere of radius r with s-series of the given order.
    pub fn jet(&self, r: f64, order: usize) -> FieldJet {
        let s0 = r * r;
        let terms = self
            .terms
            .iter()
            .map(|t| (t.profile.s_series(s0, order).scale(t.coeff), t.poly.clone()))
            .collect();
        FieldJet { radius: r, n: self.n, terms }.merged()
    }
}

/// Σ g_j(s0 + t) P_j(x) at s0 = r².
#[derive(Clone, Debug)]
pub struct FieldJet {
    pub radius: f64,
    pub n: usize,
    pub terms: Vec<(Series, HomPoly)>,
}

impl FieldJet {
    fn merged(self) -> FieldJet {
        let mut out: Vec<(Series, HomPoly)> = Vec::with_capacity(self.terms.len());
        for (g, p) in self.terms {
            if let Some(slot) = out.iter_mut().find(|(_, q)| *q == p) {
                slot.0 = &slot.0 + &g;
            } else {
                out.push((g, p));
            }
        }
        FieldJet { terms: out, ..self }
    }

    pub fn order(&self) -> usize {
        self.terms.iter().map(|(g, _)| g.order()).min().unwrap_or(usize::MAX)
    }

    /// Δ₀(gP) = −(4s g″ + 2(n+2ℓ) g′) P + g Δ₀P.
    pub fn laplacian(&self) -> FieldJet {
        let s = self.radius * self.radius;
        let mut terms = Vec::new();
        for (g, p) in &self.terms {
            let ell = p.degree() as f64;
            let d1 = g.deriv();
            let d2 = d1.deriv();
            let svar = Series::variable(s, d2.order());
            let lg = &(&svar * &d2).scale(-4.0) - &d1.truncate(d2.order()).scale(2.0 * (self.n as f64 + 2.0 * ell));
            terms.push((lg, p.clone()));
            let lp = p.laplacian();
            if !lp.is_zero() {
                terms.push((g.truncate(d2.order()), lp));
            }
        }
        FieldJet { radius: self.radius, n: self.n, terms }.merged()
    }

    /// x^a∂_a(gP) = (2s g′ + ℓ g) P.
    pub fn euler(&self) -> FieldJet {
        let s = self.radius * self.radius;
        let terms = self
            .terms
            .iter()
            .map(|(g, p)| {
                let d1 = g.deriv();
                let svar = Series::variable(s, d1.order());
                let e = &(&svar * &d1).scale(2.0) + &g.truncate(d1.order()).scale(p.degree() as f64);
                (e, p.clone())
            })
            .collect();
        FieldJet { radius: self.radius, n: self.n, terms }.merged()
    }

    /// ∂_ν = r^{−1} x^a∂_a.
    pub fn normal(&self) -> FieldJet {
        let mut e = self.euler();
        for (g, _) in &mut e.terms {
            *g = g.scale(1.0 / self.radius);
        }
        e
    }

    pub fn scale(&self, c: f64) -> FieldJet {
        FieldJet {
            radius: self.radius,
            n: self.n,
            terms: self.terms.iter().map(|(g, p)| (g.scale(c), p.clone())).collect(),
        }
    }

    pub fn plus(&self, o: &FieldJet) -> FieldJet {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        FieldJet { radius: self.radius, n: self.n, terms }.merged()
    }

    /// Value at the point r·θ for a unit vector θ.
    pub fn value_at(&self, theta: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(g, p)| g.value() * self.radius.powi(p.degree() as i32) * p.eval(theta))
            .sum()
    }

    pub fn is_radial(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.degree() == 0)
    }
}

/// How sphere integrals are evaluated; chosen by the caller, never inferred.
#[derive(Clone, Debug)]
pub enum SpherePath {
    /// Radial fields only: ω_{n−1} r^{n−1} × pointwise values.
    Radial,
    /// Exact rational sphere moments of the polynomial parts.
    ExactMoments,
    /// A product rule on S^{n−1}.
    Quadrature(Arc<SphericalQuadrature>),
}

/// Evaluates ∫_{∂B(0,r)} X·Y dσ for jets along one chosen path.
#[derive(Debug)]
pub struct SphereIntegrator {
    path: SpherePath,
    n: usize,
    omega: f64,
    moments: Mutex<HashMap<(HomPoly, HomPoly), f64>>,
}

impl SphereIntegrator {
    pub fn new(n: usize, path: SpherePath) -> Self {
        if let SpherePath::Quadrature(rule) = &path {
            assert_eq!(rule.n, n, "quadrature rule dimension");
        }
        SphereIntegrator {
            path,
            n,
            omega: SphereArea::of_ambient(n as u32).value(),
            moments: Mutex::new(HashMap::new()),
        }
    }

    pub fn path(&self) -> &SpherePath {
        &self.path
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    fn moment(&self, a: &HomPoly, b: &HomPoly) -> f64 {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if let Some(v) = self.moments.lock().unwrap().get(&key) {
            return *v;
        }
        let v = to_f64(&a.mul(b).sphere_average_direct());
        self.moments.lock().unwrap().insert(key, v);
        v
    }

    /// ∫_{∂B(0,r)} X Y dσ.
    pub fn pair(&self, x: &FieldJet, y: &FieldJet) -> Result<f64> {
        let r = x.radius;
        let nm1 = self.n as i32 - 1;
        match &self.path {
            SpherePath::Radial => {
                if !x.is_radial() || !y.is_radial() {
                    return Err(Error::InvalidArgument("radial sphere path used on a non-radial field".into()));
                }
                let theta = vec![0.0; self.n];
                Ok(self.omega * r.powi(nm1) * x.value_at(&theta) * y.value_at(&theta))
            }
            SpherePath::ExactMoments => {
                let mut acc = 0.0;
                for (g, p) in &x.terms {
                    for (h, q) in &y.terms {
                        let deg = (p.degree() + q.degree()) as i32;
                        if deg % 2 == 1 {
                            continue;
                        }
                        let m = self.moment(p, q);
                        if m != 0.0 {
                            acc += g.value() * h.value() * r.powi(deg + nm1) * m;
                        }
                    }
                }
                Ok(acc * self.omega)
            }
            SpherePath::Quadrature(rule) => {
                let need = (x.terms.iter().chain(&y.terms)).map(|(_, p)| p.degree()).max().unwrap_or(0) as usize * 2;
                if rule.degree < need {
                    return Err(Error::Quadrature(format!(
                        "sphere rule of degree {} cannot integrate products of degree {need}",
                        rule.degree
                    )));
                }
                Ok(r.powi(nm1) * rule.integrate(|th| x.value_at(th) * y.value_at(th)))
            }
        }
    }

    /// ∫_{S^{n−1}} F(θ) dθ for a pointwise integrand; `radial` says F is constant.
    pub fn angular<F: FnMut(&[f64]) -> f64>(&self, radial: bool, mut f: F) -> Result<f64> {
        match &self.path {
            SpherePath::Quadrature(rule) => Ok(rule.integrate(f)),
            _ if radial => {
                let mut theta = vec![0.0; self.n];
                theta[0] = 1.0;
                Ok(self.omega * f(&theta))
            }
            _ => Err(Error::InvalidArgument(
                "nonlinear sphere integrals of non-radial fields need the quadrature path".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::radial::FnProfile;

    #[test]
    fn laplacian_of_gaussian_matches_closed_form() {
        // Δ₀ e^{−r²} = (2n − 4r²) e^{−r²}
        let n = 5;
        let u = SeparableField::radial(n, FnProfile::gaussian());
        let r: f64 = 0.8;
        let lap = u.jet(r, 6).laplacian();
        let expect = (2.0 * n as f64 - 4.0 * r * r) * (-r * r).exp();
        assert!((lap.value_at(&[1.0, 0.0, 0.0, 0.0, 0.0]) - expect).abs() < 1e-14);
    }

    #[test]
    fn separable_laplacian_matches_pointwise_formula() {
        // u = e^{−r²} x₁: Δ₀u = (2(n+2) − 4r²) e^{−r²} x₁
        let n = 4;
        let u = SeparableField::zero(n).with_term(1.0, FnProfile::gaussian(), HomPoly::var(n, 0));
        let r: f64 = 1.3;
        let lap = u.jet(r, 4).laplacian();
        let th = [0.6, 0.8, 0.0, 0.0];
        let expect = (2.0 * (n as f64 + 2.0) - 4.0 * r * r) * (-r * r).exp() * r * 0.6;
        assert!((lap.value_at(&th) - expect).abs() < 1e-13);
    }

    #[test]
    fn moment_and_quadrature_paths_agree() {
        let n = 4;
        let x1x2 = HomPoly::var(n, 0).mul(&HomPoly::var(n, 1));
        let u = SeparableField::radial(n, FnProfile::gaussian())
            .with_term(0.5, FnProfile::constant(1.0), HomPoly::var(n, 2))
            .with_term(2.0, FnProfile::gaussian(), x1x2.add(&HomPoly::r2(n).scale(&q(3))));
        let j = u.jet(0.9, 3);
        let exact = SphereIntegrator::new(n, SpherePath::ExactMoments).pair(&j, &j).unwrap();
        let rule = Arc::new(SphericalQuadrature::full(n, 4));
        let quad = SphereIntegrator::new(n, SpherePath::Quadrature(rule)).pair(&j, &j).unwrap();
        assert!((exact - quad).abs() < 1e-13 * exact.abs());
    }
}
