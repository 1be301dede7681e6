//! Harmonic decomposition and weighted-power inversion in exact rationals.
use polylab::exact::q;
use polylab::harmonic_poly::{decompose, invert_weighted, weighted_power_laplacian, HomPoly};
use polylab::Dimension;

fn main() -> polylab::Result<()> {
    let x = |i| HomPoly::var(3, i);
    let x4 = x(0).mul(&x(0)).mul(&x(0)).mul(&x(0));
    for (p, h) in decompose(&x4).components {
        println!("x1^4 component r^{}: {h}", 2 * p);
    }

    let d = Dimension::new(7, 2)?;
    let y = |i| HomPoly::var(7, i);
    let psi = y(0).mul(&y(1)).mul(&y(2)).mul(&y(3)).add(&y(4).mul(&y(4)).mul(&y(5)).mul(&y(5)));
    let qexp = q(2 * 2 - 7);
    let t = weighted_power_laplacian(&qexp, &psi, 2);
    println!("Δ²(r^-3 ψ) = r^{} ({})", t.r_power, t.poly);
    let back = invert_weighted(&qexp, &t.poly, d)?;
    println!("round trip exact: {}", back == psi);
    Ok(())
}
