//! Concentration diagnostics on stereographic bubbles of shrinking scale.
use polylab::sphere_gjms::{blowup_diagnostics, stereographic_bubble, GjmsSphereSpec, ZonalGrid};
use polylab::Dimension;

fn main() -> polylab::Result<()> {
    let d = Dimension::new(3, 1)?;
    let spec = GjmsSphereSpec::new(d);
    let grid = ZonalGrid::new(3, 128);
    for mu in [0.5, 0.2, 0.1, 0.05] {
        let b = stereographic_bubble(&spec, mu, grid.clone())?;
        if let Some(w) = &b.warning {
            println!("warning: {w}");
        }
        let r = blowup_diagnostics(&b.field, d, spec.critical_exponent(), 0.1)?;
        println!("mu={mu}: recovered {:.12} radius of influence {:.4} profile distance {:.2e}", r.mu, r.radius_of_influence, r.profile_distance);
    }
    Ok(())
}
