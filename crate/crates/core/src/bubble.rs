//! The standard bubble U(x) = (1 + 𝔠^{−1}|x|²)^{−(n−2k)/2} and its rescalings.

use crate::exact::{q, to_f64, PiMultiple, Radical, Q};
use crate::quadrature::{integrate_breaks, Tolerance};
use crate::radial::{iterate_polyharmonic, ClosedFormRadial, Dimension};
use crate::{Error, Result};
use num_traits::One;

/// 𝔠_{n,k} = [∏_{j=−k}^{k−1}(n+2j)]^{1/k}.
pub fn c_nk(dim: Dimension) -> Radical {
    Radical::new(q(c_nk_power(dim)), dim.k())
}

/// 𝔠_{n,k}^k as an integer.
pub fn c_nk_power(dim: Dimension) -> i64 {
    let (n, k) = (dim.n() as i64, dim.k() as i64);
    (-k..k).map(|j| n + 2 * j).product()
}

/// b_{n,k}^{−1} = 2^{k−1}(k−1)! ∏_{i=1}^k (n−2i) · ω_{n−1}.
pub fn b_nk_inv(dim: Dimension) -> PiMultiple {
    let (n, k) = (dim.n() as i64, dim.k() as i64);
    let fact: i64 = (1..k).product();
    let prod: i64 = (1..=k).map(|i| n - 2 * i).product();
    dim.sphere_area().as_pi_multiple().scale(&q((1i64 << (k - 1)) * fact * prod))
}

pub fn b_nk(dim: Dimension) -> PiMultiple {
    b_nk_inv(dim).recip()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BubbleSpec {
    pub dim: Dimension,
    pub mu: f64,
    mu_exact: Q,
    pub c_nk: Radical,
    pub b_nk: PiMultiple,
}

impl BubbleSpec {
    pub fn new(dim: Dimension, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidArgument(format!("bubble scale μ = {mu} must be positive")));
        }
        let mu_exact = Q::from_float(mu).expect("finite");
        Ok(BubbleSpec { dim, mu, mu_exact, c_nk: c_nk(dim), b_nk: b_nk(dim) })
    }

    pub fn unit(dim: Dimension) -> Self {
        BubbleSpec::new(dim, 1.0).expect("μ = 1 is valid")
    }

    /// Ũ_μ(r) = μ^{(n−2k)/2}(μ² + 𝔠^{−1}r²)^{−(n−2k)/2} as an exact closed form.
    pub fn closed_form(&self) -> ClosedFormRadial {
        let gap = (self.dim.n() - 2 * self.dim.k()) as i64;
        let prefactor = Radical::new(crate::exact::qpow(&self.mu_exact, gap), 2);
        ClosedFormRadial::member(
            prefactor,
            Q::one(),
            Q::from_integer(0.into()),
            self.mu_exact.clone(),
            self.c_nk.recip(),
            self.dim.half_gap(),
        )
        .expect("μ > 0")
    }

    /// Ũ_μ^{2*−1}, sharing the prefactor of `closed_form` so the two can be subtracted.
    pub fn critical_power(&self) -> ClosedFormRadial {
        let u = self.closed_form();
        let e = self.dim.crit_exp() - q(2);
        let bare = ClosedFormRadial::member(
            Radical::one(),
            Q::one(),
            Q::from_integer(0.into()),
            self.mu_exact.clone(),
            self.c_nk.recip(),
            self.dim.half_gap(),
        )
        .expect("μ > 0");
        // μ^{(n−2k)/2 · (2*−2)} = μ^{2k} is rational, so only the bare part needs a real power.
        let mu_part = ClosedFormRadial::constant(crate::exact::qpow(&self.mu_exact, 2 * self.dim.k() as i64));
        let tail = bare.powr(&e).and_then(|t| t.mul(&mu_part)).expect("single positive term");
        u.mul(&tail).expect("shared base")
    }
}

pub fn bubble_value(spec: &BubbleSpec, r: f64) -> f64 {
    let b = spec.dim.half_gap_f64();
    let c = spec.c_nk.to_f64();
    let mu = spec.mu;
    mu.powf(b) * (mu * mu + r * r / c).powf(-b)
}

/// Δ₀ᵏŨ_μ − Ũ_μ^{2*−1} in exact form, simplified in powers of μ² + 𝔠^{−1}r².
pub fn bubble_exact_defect(spec: &BubbleSpec) -> ClosedFormRadial {
    let lhs = iterate_polyharmonic(&spec.closed_form(), spec.dim.k(), spec.dim);
    lhs.sub(&spec.critical_power()).expect("shared base").collect_base()
}

/// max_r |Δ₀ᵏŨ_μ − Ũ_μ^{2*−1}| / Ũ_μ^{2*−1} on the grid.
pub fn bubble_pde_residual(spec: &BubbleSpec, r_grid: &[f64]) -> Result<f64> {
    if r_grid.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(Error::InvalidArgument("grid radii must be finite and >= 0".into()));
    }
    let lhs = iterate_polyharmonic(&spec.closed_form(), spec.dim.k(), spec.dim).collect_base();
    let rhs = spec.critical_power().collect_base();
    Ok(r_grid
        .iter()
        .map(|&r| {
            let f = rhs.eval(r);
            (lhs.eval(r) - f).abs() / f
        })
        .fold(0.0, f64::max))
}

/// |𝔠^{(n−2k)/2} − b_{n,k}∫U^{2*−1}| / 𝔠^{(n−2k)/2} with the analytic tail beyond 10⁴√𝔠.
pub fn bubble_mass_identity(spec: &BubbleSpec) -> Result<f64> {
    if spec.mu != 1.0 {
        return Err(Error::InvalidArgument("mass identity is evaluated at μ = 1".into()));
    }
    let (n, k) = (spec.dim.n() as i32, spec.dim.k() as i32);
    let c = spec.c_nk.to_f64();
    let sc = c.sqrt();
    let cutoff = 1e4 * sc;
    let e = (n + 2 * k) as f64 / 2.0;
    let integrand = |r: f64| (1.0 + r * r / c).powf(-e) * r.powi(n - 1);
    let mut breaks = vec![0.0];
    let mut x = sc / 4.0;
    while x < cutoff {
        breaks.push(x);
        x *= 4.0;
    }
    breaks.push(cutoff);
    let body = integrate_breaks(integrand, &breaks, Tolerance::new(0.0, 1e-13))?;
    let tail = c.powf(e) * cutoff.powi(-2 * k) / (2 * k) as f64;
    // b_{n,k} ω_{n−1} is rational.
    let b_omega = to_f64(&b_nk(spec.dim).mul(&spec.dim.sphere_area().as_pi_multiple()).coeff);
    let target = c.powf(spec.dim.half_gap_f64());
    Ok((target - b_omega * (body.value + tail)).abs() / target)
}

/// Whether the defect at r = 0 vanishes exactly.
pub fn bubble_center_exact(spec: &BubbleSpec) -> Result<bool> {
    let lhs = iterate_polyharmonic(&spec.closed_form(), spec.dim.k(), spec.dim).value_at_zero()?;
    let rhs = spec.critical_power().value_at_zero()?;
    Ok(lhs == rhs)
}
