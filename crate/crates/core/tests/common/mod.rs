#![allow(dead_code)]
//! Independent reference computations shared by the integration tests.

use polylab::radial::{radial_laplacian, RadialJet};
use polylab::sphere_gjms::{GjmsSphereSpec, SpectralRadialField, ZonalGrid};
use polylab::Dimension;

pub fn dim(n: u32, k: u32) -> Dimension {
    Dimension::new(n, k).unwrap()
}

/// u, u′, …, u^{(m)} of e^{−αr²} from the Hermite recursion.
pub fn gaussian_r_jet(alpha: f64, r: f64, m: usize) -> RadialJet {
    // d^j/dx^j e^{−x²} = (−1)^j H_j(x) e^{−x²}, x = √α r.
    let x = alpha.sqrt() * r;
    let mut h = vec![1.0, 2.0 * x];
    for j in 1..m {
        let next = 2.0 * x * h[j] - 2.0 * j as f64 * h[j - 1];
        h.push(next);
    }
    let e = (-x * x).exp();
    let vals = (0..=m).map(|j| (-1f64).powi(j as i32) * h[j] * e * alpha.sqrt().powi(j as i32)).collect();
    RadialJet::new(r, vals).unwrap()
}

/// Jet of r u′(r), one order shorter.
pub fn euler_jet(j: &RadialJet) -> RadialJet {
    let v = j.values();
    let r = j.radius();
    let out = (0..v.len() - 1).map(|i| r * v[i + 1] + i as f64 * v[i]).collect();
    RadialJet::new(r, out).unwrap()
}

pub fn deriv_jet(j: &RadialJet) -> RadialJet {
    RadialJet::new(j.radius(), j.values()[1..].to_vec()).unwrap()
}

fn lap_pow(j: &RadialJet, i: u32, d: Dimension) -> RadialJet {
    (0..i).fold(j.clone(), |acc, _| radial_laplacian(&acc, d).unwrap())
}

/// P_k(r;u) for radial u written straight from the definition, with ∂_ν = d/dr and E = r d/dr.
/// `normal_term` adds the extra (n−2k)/2 term of the odd branch.
pub fn brute_boundary_functional(u: &RadialJet, d: Dimension, normal_term: bool) -> f64 {
    let (n, k) = (d.n(), d.k());
    let r = u.radius();
    let c = (n as f64 - 2.0 * k as f64) / 2.0;
    let omega = polylab::quadrature::unit_sphere_area(n as usize);
    let pair = |a: f64, b: f64| omega * r.powi(n as i32 - 1) * a * b;
    let eu = euler_jet(u);
    let mut total = 0.0;
    for i in 0..k / 2 {
        let a = lap_pow(u, i, d);
        let b = lap_pow(u, k - i - 1, d);
        let ea = lap_pow(&eu, i, d);
        let (da, db, dea) = (deriv_jet(&a).value(), deriv_jet(&b).value(), deriv_jet(&ea).value());
        total += c * (pair(da, b.value()) - pair(a.value(), db));
        total += pair(dea, b.value()) - pair(ea.value(), db);
    }
    if k % 2 == 0 {
        let h = lap_pow(u, k / 2, d).value();
        total += r / 2.0 * pair(h, h);
    } else {
        let m = (k - 1) / 2;
        let lm = lap_pow(u, m, d);
        let lm1 = lap_pow(u, m + 1, d).value();
        let elm = euler_jet(&lm);
        total += r / 2.0 * pair(lm1, lm.value());
        total += 0.5 * pair(lm.value(), deriv_jet(&elm).value());
        total -= 0.5 * pair(elm.value(), deriv_jet(&lm).value());
        if normal_term {
            total += c * pair(lm.value(), deriv_jet(&lm).value());
        }
    }
    total
}

/// −(1−t²)u″ + n t u′ by central differences, i.e. the zonal Laplace–Beltrami operator on Sⁿ.
pub fn fd_zonal_laplacian(u: &dyn Fn(f64) -> f64, n: u32, t: f64, h: f64) -> f64 {
    let d1 = (u(t + h) - u(t - h)) / (2.0 * h);
    let d2 = (u(t + h) - 2.0 * u(t) + u(t - h)) / (h * h);
    -(1.0 - t * t) * d2 + n as f64 * t * d1
}

/// Normalized fixed-point iteration w ↦ P⁻¹(g w^{p−1}) / ‖·‖, damped by θ, then rescaled to a solution.
pub fn damped_picard(
    spec: &GjmsSphereSpec,
    grid: std::sync::Arc<ZonalGrid>,
    p: f64,
    f: &dyn Fn(f64) -> f64,
    theta: f64,
    iterations: usize,
) -> SpectralRadialField {
    let crit = spec.critical_exponent();
    let mult: Vec<f64> =
        (0..=grid.degree()).map(|l| polylab::exact::to_f64(&polylab::sphere_gjms::gjms_multiplier(spec, l as u32))).collect();
    let g: Vec<f64> = grid.nodes().iter().map(|&t| f(t).powf(p - crit)).collect();
    let mut w = vec![0.0; grid.degree() + 1];
    w[0] = 1.0;
    let norm = |c: &[f64]| c.iter().map(|x| x * x).sum::<f64>().sqrt();
    let apply = |w: &[f64]| {
        let vals = grid.inverse(w);
        let rhs: Vec<f64> = vals.iter().zip(&g).map(|(v, gi)| gi * v.abs().powf(p - 1.0)).collect();
        grid.forward(&rhs).iter().zip(&mult).map(|(c, m)| c / m).collect::<Vec<f64>>()
    };
    for _ in 0..iterations {
        let t = apply(&w);
        let nt = norm(&t);
        let next: Vec<f64> = w.iter().zip(&t).map(|(a, b)| (1.0 - theta) * a + theta * b / nt).collect();
        let nn = norm(&next);
        w = next.iter().map(|x| x / nn).collect();
    }
    // T(s w) = s^{p−1} T(w) and T(w) = λ w at the fixed point, so s^{p−2} λ = 1.
    let t = apply(&w);
    let lambda = t.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
    let s = lambda.powf(-1.0 / (p - 2.0));
    SpectralRadialField::new(grid, w.iter().map(|x| x * s).collect()).unwrap()
}

/// Δ₀ʲ(r^q ψ) from Δ₀(r^q ψ) = r^{q−2}[r²Δ₀ψ − q(q+n−2+2ℓ)ψ], without any eigen-decomposition.
pub fn brute_weighted_laplacian(qexp: &polylab::exact::Q, psi: &polylab::harmonic_poly::HomPoly, j: u32) -> (polylab::exact::Q, polylab::harmonic_poly::HomPoly) {
    use polylab::exact::q;
    let (n, ell) = (psi.n() as i64, psi.degree() as i64);
    let mut qq = qexp.clone();
    let mut cur = psi.clone();
    for _ in 0..j {
        let c = &qq * (&qq + q(n - 2 + 2 * ell));
        let lap = if ell >= 2 { cur.laplacian().mul_r2() } else { polylab::harmonic_poly::HomPoly::zero(psi.n(), psi.degree()) };
        cur = lap.sub(&cur.scale(&c));
        qq -= q(2);
    }
    (qq, cur)
}
