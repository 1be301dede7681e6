//! Flat fundamental solution: Dirac test and the mass term of a corrected Green's model.
use polylab::exact::q;
use polylab::green_flat::{dirac_check, GreenModel};
use polylab::harmonic_poly::{green_correction_pipeline, HomPoly, PipelineConstants};
use polylab::pohozaev::{PohozaevOptions, SeparableField};
use polylab::radial::FnProfile;
use polylab::Dimension;

fn main() -> polylab::Result<()> {
    for (n, k) in [(5, 2), (7, 3)] {
        let phi = SeparableField::radial(n as usize, FnProfile::gaussian_bump(1.0, 4.0));
        let rep = dirac_check(&phi, 2.0, Dimension::new(n, k)?)?;
        println!("({n},{k}) ∫G0 Δ^k φ = {:.12}, φ(0) = {}", rep.integral, rep.phi0);
    }

    let d = Dimension::new(8, 2)?;
    let mut s = vec![vec![q(0); 8]; 8];
    s[0][0] = q(1);
    s[1][1] = q(-1);
    let zero = vec![vec![q(0); 8]; 8];
    let corr = green_correction_pipeline(&s, &zero, &HomPoly::zero(8, 5), d, &PipelineConstants::default())?;
    println!("psi4 = {}", corr.psi4);
    for mass in [0.0, 1.0, 2.5] {
        let model = GreenModel::new(d, mass).with_corrections(corr.psi4.clone(), corr.psi5.clone())?;
        let m = model.mass_limit(PohozaevOptions::exact_moments())?;
        println!("A = {mass}: limit {:.10}, c_nk (A + h(0)) = {:.10}", m.limit, m.expected);
    }
    Ok(())
}
