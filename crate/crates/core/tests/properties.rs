mod common;

use common::*;
use polylab::exact::{q, qf};
use polylab::giraud::{giraud_integral, monte_carlo, GiraudParams};
use polylab::green_flat::GreenModel;
use polylab::harmonic_poly::{decompose, invert_weighted, weighted_factor, weighted_power_laplacian, HomPoly};
use polylab::pohozaev::{Pohozaev, PohozaevOptions, SeparableField};
use polylab::radial::{ClosedFormRadial, FnProfile};
use polylab::sphere_gjms::{apply_gjms, GjmsSphereSpec, SpectralRadialField, ZonalGrid};
use num_traits::Zero;
use proptest::prelude::*;

fn pair_strategy() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just((3, 1)), Just((5, 1)), Just((5, 2)), Just((6, 2)), Just((7, 3)), Just((9, 4))]
}

fn hompoly(n: usize, degree: u32) -> impl Strategy<Value = HomPoly> {
    prop::collection::vec((prop::collection::vec(0..n, degree as usize), -6i64..=6), 1..5).prop_map(move |terms| {
        terms.into_iter().fold(HomPoly::zero(n, degree), |acc, (vars, c)| {
            let mut e = vec![0u32; n];
            for v in vars {
                e[v] += 1;
            }
            acc.add(&HomPoly::monomial(e, q(c)))
        })
    })
}

/// 1/(1 + r²).
fn lorentzian() -> FnProfile {
    FnProfile::new("1/(1+r^2)", |s| s.add_const(1.0).recip())
}

fn radial_field(n: u32, a: f64, b: f64, c: f64) -> SeparableField {
    SeparableField::radial(n as usize, FnProfile::gaussian())
        .scaled(a)
        .plus(&SeparableField::radial(n as usize, lorentzian()).scaled(b))
        .plus(&SeparableField::radial(n as usize, FnProfile::constant(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bilinear_form_is_symmetric_and_diagonal(
        (n, k) in pair_strategy(),
        a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64,
        d in -2.0..2.0f64, e in -2.0..2.0f64,
        r in 0.2..2.0f64,
    ) {
        let pz = Pohozaev::new(dim(n, k), PohozaevOptions::exact_moments());
        let u = radial_field(n, a, b, c).with_term(d, FnProfile::gaussian(), HomPoly::var(n as usize, 0));
        let v = radial_field(n, e, a, b);
        let uv = pz.bilinear_form(&u, &v, r).unwrap();
        let vu = pz.bilinear_form(&v, &u, r).unwrap();
        prop_assert!((uv - vu).abs() <= 1e-12 * uv.abs().max(1.0));
        let uu = pz.bilinear_form(&u, &u, r).unwrap();
        let p = pz.boundary_functional(&u, r).unwrap();
        prop_assert!((uu - p).abs() <= 1e-12 * p.abs().max(1.0));
    }

    #[test]
    fn volume_terms_are_additive_over_annuli(
        (n, k) in pair_strategy(),
        a in 0.5..2.0f64, b in -1.0..1.0f64,
        s in 0.1..0.5f64, t in 0.6..1.0f64, r in 1.1..2.0f64,
    ) {
        let pz = Pohozaev::new(dim(n, k), PohozaevOptions::radial());
        let u = radial_field(n, a, b, 0.0);
        let f = SeparableField::radial(n as usize, FnProfile::gaussian()).scaled(0.5).plus(&SeparableField::radial(n as usize, FnProfile::constant(1.0)));
        let whole = pz.identity_residual(&u, &f, 2.5, s, r).unwrap();
        let lo = pz.identity_residual(&u, &f, 2.5, s, t).unwrap();
        let hi = pz.identity_residual(&u, &f, 2.5, t, r).unwrap();
        let sum = lo.volume_terms.total() + hi.volume_terms.total();
        prop_assert!((whole.volume_terms.total() - sum).abs() <= 1e-8 * whole.scale);
        prop_assert!(whole.residual.abs() <= 1e-7 * whole.scale);
    }

    #[test]
    fn boundary_functional_is_constant_for_polyharmonic_fields(
        (n, k) in pair_strategy(),
        a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64,
        r1 in 0.2..1.0f64, r2 in 1.0..5.0f64,
    ) {
        // a + b r² + c r^{2k−n} is k-polyharmonic away from 0 when k ≥ 2, and a + c r^{2−n} when k = 1.
        let nn = n as usize;
        let mut u = SeparableField::radial(nn, FnProfile::constant(a))
            .plus(&SeparableField::radial(nn, ClosedFormRadial::power(q(1), q(2 * k as i64 - n as i64))).scaled(c));
        if k >= 2 {
            u = u.plus(&SeparableField::radial(nn, ClosedFormRadial::power(q(1), q(2))).scaled(b));
        }
        let pz = Pohozaev::new(dim(n, k), PohozaevOptions::radial());
        let p1 = pz.boundary_functional(&u, r1).unwrap();
        let p2 = pz.boundary_functional(&u, r2).unwrap();
        let scale = p1.abs().max(p2.abs()).max(1.0);
        prop_assert!((p1 - p2).abs() <= 1e-9 * scale, "{} vs {}", p1, p2);
    }

    #[test]
    fn gjms_operator_is_self_adjoint(
        (n, k) in pair_strategy(),
        cu in prop::collection::vec(-1.0..1.0f64, 17),
        cv in prop::collection::vec(-1.0..1.0f64, 17),
    ) {
        let spec = GjmsSphereSpec::new(dim(n, k));
        let grid = ZonalGrid::new(n, 16);
        let u = SpectralRadialField::new(grid.clone(), cu).unwrap();
        let v = SpectralRadialField::new(grid.clone(), cv).unwrap();
        // Inner products through nodal values and weights.
        let nodal = |a: &SpectralRadialField, b: &SpectralRadialField| {
            a.values().iter().zip(b.values()).zip(grid.weights()).map(|((x, y), w)| x * y * w).sum::<f64>()
        };
        let l = nodal(&apply_gjms(&spec, &u), &v);
        let r = nodal(&u, &apply_gjms(&spec, &v));
        prop_assert!((l - r).abs() <= 1e-10 * l.abs().max(r.abs()).max(1.0));
    }

    #[test]
    fn giraud_integral_grows_with_the_ball(
        idx in 0usize..5,
        rho in 2.0..200.0f64, grow in 1.1..4.0f64, frac in 0.0..0.9f64,
    ) {
        let (n, p, qq) = polylab::giraud::REGIME_EXEMPLARS[idx];
        let xi = frac * rho;
        let small = giraud_integral(&GiraudParams::new(n, p, qq, rho, xi).unwrap()).unwrap();
        let big = giraud_integral(&GiraudParams::new(n, p, qq, rho * grow, xi).unwrap()).unwrap();
        prop_assert!(big.value >= small.value * (1.0 - 1e-8));
    }

    #[test]
    fn decomposition_recombines_with_harmonic_parts(psi in (3usize..=9, 0u32..=6).prop_flat_map(|(n, l)| hompoly(n, l))) {
        let dec = decompose(&psi);
        prop_assert_eq!(dec.recombine(), psi);
        for (_, h) in &dec.components {
            prop_assert!(h.degree() < 2 || h.laplacian().is_zero());
        }
    }

    #[test]
    fn weighted_laplacian_matches_one_step_rule(
        psi in (3usize..=7, 0u32..=4).prop_flat_map(|(n, l)| hompoly(n, l)),
        num in -15i64..=15, den in 1i64..=6, j in 1u32..=3,
    ) {
        let qexp = qf(num, den);
        let fast = weighted_power_laplacian(&qexp, &psi, j);
        let (r_power, slow) = brute_weighted_laplacian(&qexp, &psi, j);
        prop_assert_eq!(fast.r_power, r_power);
        prop_assert_eq!(fast.poly, slow);
    }

    #[test]
    fn inversion_round_trips_on_the_invertible_part(
        ((n, k), psi) in (pair_strategy(), 0u32..=5).prop_flat_map(|((n, k), l)| (Just((n, k)), hompoly(n as usize, l))),
    ) {
        let d = dim(n, k);
        let degree = psi.degree();
        for qexp in [q(2 * k as i64 - n as i64), qf(2 * k as i64 - n as i64, 2)] {
            let t = weighted_power_laplacian(&qexp, &psi, k).poly;
            let mut kept = HomPoly::zero(n as usize, degree);
            for (p, h) in decompose(&psi).components {
                if !weighted_factor(n as usize, degree, p, &qexp, k).is_zero() {
                    kept = kept.add(&(0..p).fold(h, |acc, _| acc.mul_r2()));
                }
            }
            prop_assert_eq!(invert_weighted(&qexp, &t, d).unwrap(), kept);
        }
    }

    #[test]
    fn mass_limit_is_affine_and_increasing_in_the_mass(a in -3.0..3.0f64, delta in 0.1..3.0f64) {
        let d = dim(5, 2);
        let lo = GreenModel::new(d, a).mass_limit(PohozaevOptions::radial()).unwrap();
        let hi = GreenModel::new(d, a + delta).mass_limit(PohozaevOptions::radial()).unwrap();
        prop_assert!(hi.limit > lo.limit);
        prop_assert!(((hi.limit - lo.limit) - 0.5 * delta).abs() <= 1e-7 * (1.0 + delta));
    }

    #[test]
    fn green_model_bounds_hold(a in 0.0..5.0f64, r in prop::collection::vec(1e-4..1.0f64, 1..12)) {
        let d = dim(7, 3);
        let m = GreenModel::new(d, a);
        let pts: Vec<Vec<f64>> = r.iter().map(|&x| { let mut v = vec![0.0; 7]; v[2] = x; v }).collect();
        let c = m.bound_constant(&pts).unwrap();
        prop_assert!(c >= 1.0);
        for x in &pts {
            let rr = x[2];
            let g = m.eval(x);
            let base = rr.powi(-1);
            prop_assert!(g <= c * base * (1.0 + 1e-12) && g >= base / c * (1.0 - 1e-12));
        }
    }
}

#[test]
fn monte_carlo_agrees_with_quadrature() {
    let g = GiraudParams::new(3, 2, 1, 10.0, 3.0).unwrap();
    let quad = giraud_integral(&g).unwrap();
    let (mean, se) = monte_carlo(&g, 10_000_000, 11);
    assert!((mean - quad.value).abs() <= 5.0 * se, "mc {mean} ± {se} vs {}", quad.value);
    assert!(se < 2e-3 * quad.value);
}

#[test]
fn spectral_residual_decays_with_truncation() {
    use polylab::sphere_gjms::{spectral_residual, stereographic_bubble};
    let spec = GjmsSphereSpec::new(dim(3, 1));
    let res: Vec<f64> = [16, 32, 64]
        .iter()
        .map(|&l| {
            let b = stereographic_bubble(&spec, 0.1, ZonalGrid::new(3, l)).unwrap();
            spectral_residual(&spec, &b.field, spec.critical_exponent(), &|_| 1.0)
        })
        .collect();
    assert!(res[1] < 0.1 * res[0] && res[2] < 0.1 * res[1], "{res:?}");
}
