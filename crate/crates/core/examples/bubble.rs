//! Exact polyharmonic bubble: PDE residual on a radial grid and the mass identity.
use polylab::bubble::{bubble_center_exact, bubble_exact_defect, bubble_mass_identity, bubble_pde_residual, BubbleSpec};
use polylab::Dimension;

fn main() -> polylab::Result<()> {
    let grid: Vec<f64> = (0..200).map(|i| 50.0 * (i as f64 / 199.0).powi(2)).collect();
    for (n, k) in [(3, 1), (5, 2), (7, 3), (9, 4)] {
        let spec = BubbleSpec::unit(Dimension::new(n, k)?);
        println!(
            "(n,k)=({n},{k})  c_nk={:.6}  residual={:.2e}  mass defect={:.2e}  exact at 0: {}  symbolic defect zero: {}",
            spec.c_nk.to_f64(),
            bubble_pde_residual(&spec, &grid)?,
            bubble_mass_identity(&spec)?,
            bubble_center_exact(&spec)?,
            bubble_exact_defect(&spec).is_zero(),
        );
    }
    Ok(())
}
