//! Envelope ratios of the Giraud integral over ρ and |ξ|/ρ, with a Monte Carlo spot check.
use polylab::giraud::{envelope_ratio_sweep, giraud_integral, monte_carlo, GiraudParams, REGIME_EXEMPLARS};

fn main() -> polylab::Result<()> {
    for (n, p, q) in REGIME_EXEMPLARS {
        let rep = envelope_ratio_sweep(n, p, q, &[10.0, 100.0, 1000.0], &[0.0, 0.3, 0.9])?;
        println!("n={n} p={p} q={q:>2} {:?}: ratio in [{:.3}, {:.3}]", rep.regime, rep.min_ratio, rep.max_ratio);
    }
    let g = GiraudParams::new(3, 2, 1, 10.0, 3.0)?;
    let (mean, se) = monte_carlo(&g, 1_000_000, 1);
    println!("quadrature {:.6}, monte carlo {mean:.6} ± {se:.6}", giraud_integral(&g)?.value);
    Ok(())
}
