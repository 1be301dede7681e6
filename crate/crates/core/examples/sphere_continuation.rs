//! Zonal Newton solves for P u = f^{p-2*} u^{p-1} on the round sphere, continued in p.
use polylab::exact::to_f64;
use polylab::sphere_gjms::{continuation, gjms_multiplier, q_curvature_constant, GjmsSphereSpec, NewtonOptions, SpectralRadialField, ZonalGrid};
use polylab::Dimension;

fn main() -> polylab::Result<()> {
    let spec = GjmsSphereSpec::new(Dimension::new(5, 2)?);
    println!("Q = {}, multipliers: {:?}", q_curvature_constant(&spec), (0..4).map(|l| gjms_multiplier(&spec, l).to_string()).collect::<Vec<_>>());
    let p0 = 4.0;
    let c = to_f64(&spec.p_of_one()).powf(1.0 / (p0 - 2.0));
    let init = SpectralRadialField::constant(ZonalGrid::new(5, 32), c);
    let ps: Vec<f64> = (0..=12).map(|i| p0 + 0.5 * i as f64).collect();
    let f = |t: f64| 1.0 + 0.2 * t;
    for pt in continuation(&spec, &ps, &f, &init, NewtonOptions::default())? {
        println!("p={:.2} sup={:.6} mu={:.6} iterations={} residual={:.1e}", pt.p, pt.sup_norm, pt.mu, pt.iterations, pt.residual);
    }
    Ok(())
}
