//! The Giraud-type integral ∫_{B(0,ρ)} (1+|z|)^{q−n} |ξ−z|^{p−n} dz and its
//! five asymptotic envelopes.

use crate::quadrature::{integrate_breaks, unit_sphere_area, Estimate, Tolerance};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Mutex;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GiraudParams {
    pub n: u32,
    pub p: i32,
    pub q: i32,
    pub rho: f64,
    pub xi_norm: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// n < p + q: ρ^{p+q−n}
    Large,
    /// n = p + q: ln(2 + ρ)
    Critical,
    /// n > p + q, q > 0: (1+|ξ|)^{p+q−n}
    Decaying,
    /// q = 0: (1+|ξ|)^{p−n} ln(2 + |ξ|)
    LogDecaying,
    /// q < 0: (1+|ξ|)^{p−n}
    Kernel,
}

impl GiraudParams {
    pub fn new(n: u32, p: i32, q: i32, rho: f64, xi_norm: f64) -> Result<Self> {
        let ni = n as i32;
        if n < 2 || p < 1 || p >= ni || q >= ni {
            return Err(Error::InvalidArgument(format!("need 1 <= p < n and q < n, got n={n}, p={p}, q={q}")));
        }
        if !(rho > 0.0 && rho.is_finite() && (0.0..=rho).contains(&xi_norm)) {
            return Err(Error::InvalidArgument(format!("need ρ > 0 and 0 <= |ξ| <= ρ, got ρ={rho}, |ξ|={xi_norm}")));
        }
        Ok(GiraudParams { n, p, q, rho, xi_norm })
    }

    pub fn regime(&self) -> Regime {
        let (n, s) = (self.n as i32, self.p + self.q);
        match n.cmp(&s) {
            std::cmp::Ordering::Less => Regime::Large,
            std::cmp::Ordering::Equal => Regime::Critical,
            std::cmp::Ordering::Greater => match self.q.signum() {
                1 => Regime::Decaying,
                0 => Regime::LogDecaying,
                _ => Regime::Kernel,
            },
        }
    }

    /// The right-hand side of the matching branch, without constant.
    pub fn envelope(&self) -> f64 {
        let (n, p, q) = (self.n as i32, self.p, self.q);
        let x = 1.0 + self.xi_norm;
        match self.regime() {
            Regime::Large => self.rho.powi(p + q - n),
            Regime::Critical => (2.0 + self.rho).ln(),
            Regime::Decaying => x.powi(p + q - n),
            Regime::LogDecaying => x.powi(p - n) * (2.0 + self.xi_norm).ln(),
            Regime::Kernel => x.powi(p - n),
        }
    }

    fn kernel_weight(&self, z: f64) -> f64 {
        (1.0 + z).powi(self.q - self.n as i32)
    }
}

/// Geometric break points between a and b clustered at `at`.
fn cluster(at: f64, lo: f64, hi: f64, out: &mut Vec<f64>) {
    let mut h = 1.0 / 1024.0;
    while h < hi - lo {
        for x in [at - h, at + h] {
            if x > lo && x < hi {
                out.push(x);
            }
        }
        h *= 4.0;
    }
}

fn sorted_breaks(mut pts: Vec<f64>, lo: f64, hi: f64) -> Vec<f64> {
    pts.retain(|x| *x > lo && *x < hi);
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    pts
}

/// Value of the integral in polar coordinates around ξ.
///
/// With t = |z−ξ| and θ the angle to −ξ, the measure is ω_{n−2} t^{n−1} sin^{n−2}θ, so the
/// t-integrand carries t^{p−1}, bounded for p ≥ 1.
pub fn giraud_integral(params: &GiraudParams) -> Result<Estimate> {
    let GiraudParams { n, p, rho, xi_norm: a, .. } = *params;
    let omega = unit_sphere_area(n as usize - 1);
    let inner_tol = Tolerance { abs: 0.0, rel: 1e-10, max_intervals: 2000 };
    let failure = Mutex::new(None);

    let angular = |t: f64| -> f64 {
        // θ measured from the direction of −ξ; |z|² = a² + t² − 2at cos θ < ρ² ⇔ cos θ > c.
        let th_hi = if a == 0.0 || t <= rho - a {
            PI
        } else {
            let c = (a * a + t * t - rho * rho) / (2.0 * a * t);
            if c >= 1.0 {
                return 0.0;
            }
            c.max(-1.0).acos()
        };
        let f = |th: f64| {
            let z = (a * a + t * t - 2.0 * a * t * th.cos()).max(0.0).sqrt();
            th.sin().powi(n as i32 - 2) * params.kernel_weight(z)
        };
        let mut pts = Vec::new();
        if a > 0.0 && t > 0.0 {
            // z → 0 near θ = 0 when t ≈ |ξ|; angular width ~ 1/sqrt(a t).
            let mut w = 1.0 / (a * t).sqrt();
            while w < PI {
                pts.push(w);
                w *= 2.0;
            }
        }
        let br = sorted_breaks(pts, 0.0, th_hi);
        match integrate_breaks(f, &br, inner_tol) {
            Ok(e) => e.value,
            Err(e) => {
                *failure.lock().unwrap() = Some(e);
                0.0
            }
        }
    };
    let t_max = rho + a;
    let mut pts = vec![rho - a, params.rho.min(1.0).min(a / 2.0).min(rho / 10.0)];
    let mut x = 1.0 / 64.0;
    while x < t_max {
        pts.push(x);
        x *= 2.0;
    }
    if a > 0.0 {
        cluster(a, 0.0, t_max, &mut pts);
    }
    let br = sorted_breaks(pts, 0.0, t_max);
    let outer = integrate_breaks(
        |t: f64| t.powi(p - 1) * angular(t),
        &br,
        Tolerance { abs: 0.0, rel: 1e-8, max_intervals: 4000 },
    )?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    // The inner rule is ten times tighter than the outer one; its share is added as a relative term.
    Ok(Estimate { value: omega * outer.value, error: omega * outer.error + 1e-10 * omega * outer.value.abs() })
}

/// ω_{n−1} ∫₀^ρ r^{p−1}(1+r)^{q−n} dr, the value at ξ = 0.
pub fn centered_value(params: &GiraudParams) -> Result<Estimate> {
    let n = params.n;
    let mut pts = Vec::new();
    let mut x = 1.0 / 64.0;
    while x < params.rho {
        pts.push(x);
        x *= 2.0;
    }
    let br = sorted_breaks(pts, 0.0, params.rho);
    let e = integrate_breaks(
        |r: f64| r.powi(params.p - 1) * params.kernel_weight(r),
        &br,
        Tolerance::new(0.0, 1e-12),
    )?;
    let w = unit_sphere_area(n as usize);
    Ok(Estimate { value: w * e.value, error: w * e.error })
}

/// Uniform sampling in B(0,ρ) ⊂ R^n with ξ on the first axis: (mean, standard error).
pub fn monte_carlo(params: &GiraudParams, samples: usize, seed: u64) -> (f64, f64) {
    let n = params.n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vol = unit_sphere_area(n) * params.rho.powi(n as i32) / n as f64;
    let (mut s1, mut s2) = (0.0f64, 0.0f64);
    let mut z = vec![0.0; n];
    for _ in 0..samples {
        // Rejection from the cube is fine at the small n this is meant for.
        loop {
            for c in z.iter_mut() {
                *c = params.rho * (2.0 * rng.gen::<f64>() - 1.0);
            }
            if z.iter().map(|v| v * v).sum::<f64>() < params.rho * params.rho {
                break;
            }
        }
        let r = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        let d2: f64 = z.iter().enumerate().map(|(i, v)| if i == 0 { (v - params.xi_norm).powi(2) } else { v * v }).sum();
        let f = params.kernel_weight(r) * d2.sqrt().powi(params.p - params.n as i32);
        s1 += f;
        s2 += f * f;
    }
    let m = s1 / samples as f64;
    let var = (s2 / samples as f64 - m * m).max(0.0);
    (vol * m, vol * (var / samples as f64).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub rho: f64,
    pub xi_norm: f64,
    pub value: f64,
    pub error: f64,
    pub envelope: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub n: u32,
    pub p: i32,
    pub q: i32,
    pub regime: Regime,
    pub points: Vec<SweepPoint>,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

/// value / envelope over ρ × (|ξ|/ρ), evaluated in parallel.
pub fn envelope_ratio_sweep(n: u32, p: i32, q: i32, rhos: &[f64], xi_fracs: &[f64]) -> Result<SweepReport> {
    let grid: Vec<GiraudParams> = rhos
        .iter()
        .flat_map(|&rho| xi_fracs.iter().map(move |&f| (rho, f)))
        .map(|(rho, f)| GiraudParams::new(n, p, q, rho, f * rho))
        .collect::<Result<_>>()?;
    let regime = GiraudParams::new(n, p, q, 1.0, 0.0)?.regime();
    if grid.iter().any(|g| g.regime() != regime) {
        return Err(Error::Regime("regime depends on ρ or ξ".into()));
    }
    let points = grid
        .par_iter()
        .map(|g| {
            let e = giraud_integral(g)?;
            let env = g.envelope();
            Ok(SweepPoint { rho: g.rho, xi_norm: g.xi_norm, value: e.value, error: e.error, envelope: env, ratio: e.value / env })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_ratio = points.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    let max_ratio = points.iter().map(|p| p.ratio).fold(0.0, f64::max);
    Ok(SweepReport { n, p, q, regime, points, min_ratio, max_ratio })
}

/// (n, p, q) representatives of the five branches.
pub const REGIME_EXEMPLARS: [(u32, i32, i32); 5] = [(3, 2, 2), (3, 2, 1), (5, 2, 1), (5, 2, 0), (5, 2, -1)];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let r = |n, p, q| GiraudParams::new(n, p, q, 10.0, 1.0).unwrap().regime();
        assert_eq!(r(3, 2, 2), Regime::Large);
        assert_eq!(r(3, 2, 1), Regime::Critical);
        assert_eq!(r(5, 2, 1), Regime::Decaying);
        assert_eq!(r(5, 2, 0), Regime::LogDecaying);
        assert_eq!(r(5, 2, -1), Regime::Kernel);
        assert!(GiraudParams::new(3, 3, 0, 1.0, 0.0).is_err());
        assert!(GiraudParams::new(3, 1, 3, 1.0, 0.0).is_err());
        assert!(GiraudParams::new(3, 1, 0, 1.0, 2.0).is_err());
    }

    #[test]
    fn centered_case_matches_radial_integral() {
        for (n, p, q) in REGIME_EXEMPLARS {
            let g = GiraudParams::new(n, p, q, 37.0, 0.0).unwrap();
            let a = giraud_integral(&g).unwrap().value;
            let b = centered_value(&g).unwrap().value;
            assert!((a - b).abs() <= 1e-8 * b, "({n},{p},{q}) {a} {b}");
        }
    }

    #[test]
    fn three_dimensional_closed_form() {
        // n = 3, p = 2, q = 1, ξ = 0: 4π ∫ r/(1+r)² dr = 4π(ln(1+ρ) + 1/(1+ρ) − 1)
        let rho: f64 = 5.0;
        let g = GiraudParams::new(3, 2, 1, rho, 0.0).unwrap();
        let exact = 4.0 * PI * ((1.0 + rho).ln() + 1.0 / (1.0 + rho) - 1.0);
        assert!((giraud_integral(&g).unwrap().value - exact).abs() < 1e-9 * exact);
    }
}
