//! Boundary functional P_k(r;u) and the annulus identity for a Gaussian.
use polylab::pohozaev::{OddBranch, Pohozaev, PohozaevOptions, SeparableField};
use polylab::radial::FnProfile;
use polylab::Dimension;

fn main() -> polylab::Result<()> {
    for (n, k) in [(5, 2), (7, 3)] {
        let d = Dimension::new(n, k)?;
        let u = SeparableField::radial(n as usize, FnProfile::gaussian());
        let one = SeparableField::radial(n as usize, FnProfile::constant(1.0));
        for branch in [OddBranch::Consistent, OddBranch::WithNormalTerm] {
            let pz = Pohozaev::new(d, PohozaevOptions::radial().with_odd_branch(branch));
            let rep = pz.identity_residual(&u, &one, 2.0, 0.5, 1.5)?;
            println!(
                "({n},{k}) {branch:?}: P(1.5)={:.6e} P(0.5)={:.6e} residual/scale={:.2e}",
                rep.boundary_outer,
                rep.boundary_inner,
                rep.residual.abs() / rep.scale
            );
        }
        let h = SeparableField::radial(n as usize, FnProfile::constant(1.0));
        let lim = Pohozaev::new(d, PohozaevOptions::radial()).singular_mass_limit(1.0, &h)?;
        println!("({n},{k}) lim P(r; r^(2k-n) + 1) = {:.10}  theta = {:.10}", lim.limit, lim.closed_form);
    }
    Ok(())
}
