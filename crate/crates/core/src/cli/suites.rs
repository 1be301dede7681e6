use super::config::{RunConfig, Suite};
use crate::bubble::{bubble_center_exact, bubble_mass_identity, bubble_pde_residual, BubbleSpec};
use crate::exact::{q, qf, to_f64, Q};
use crate::giraud::{envelope_ratio_sweep, giraud_integral, monte_carlo, GiraudParams, REGIME_EXEMPLARS};
use crate::green_flat::{dirac_check, fundamental_solution, GreenModel};
use crate::harmonic_poly::{
    decompose, green_correction_pipeline, invert_weighted, vanishing_integrals, weighted_factor,
    weighted_power_laplacian, HomPoly, PipelineConstants,
};
use crate::pohozaev::{theta_times_b, Pohozaev, PohozaevOptions, SeparableField};
use crate::radial::{iterate_polyharmonic, Dimension, FnProfile};
use crate::sphere_gjms::{
    blowup_diagnostics, gjms_multiplier, q_curvature_constant, solve_subcritical, spectral_residual,
    stereographic_bubble, GjmsSphereSpec, NewtonOptions, SpectralRadialField, ZonalGrid,
};
use crate::Result;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Result of one check body: the measured value and an optional note.
pub struct Outcome {
    pub value: f64,
    pub detail: Option<String>,
}

impl Outcome {
    fn of(value: f64) -> Self {
        Outcome { value, detail: None }
    }

    fn note(value: f64, detail: impl Into<String>) -> Self {
        Outcome { value, detail: Some(detail.into()) }
    }
}

type Body = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

/// A check passes when `value <= tolerance`.
pub struct Task {
    pub name: String,
    pub paper_anchor: &'static str,
    pub inputs: Value,
    pub tolerance: f64,
    pub body: Body,
}

struct Builder<'a> {
    cfg: &'a RunConfig,
    tasks: Vec<Task>,
}

impl Builder<'_> {
    fn push(&mut self, name: String, anchor: &'static str, inputs: Value, tolerance: f64, body: Body) {
        self.tasks.push(Task { name, paper_anchor: anchor, inputs, tolerance, body });
    }

    /// Relative-defect checks honour `--tol`.
    fn defect(&mut self, name: String, anchor: &'static str, inputs: Value, tolerance: f64, body: Body) {
        let t = self.cfg.tol.unwrap_or(tolerance);
        self.push(name, anchor, inputs, t, body);
    }
}

fn tag(d: Dimension) -> String {
    format!("n{}k{}", d.n(), d.k())
}

fn nk(d: Dimension) -> Value {
    json!([d.n(), d.k()])
}

pub fn build(cfg: &RunConfig) -> Vec<Task> {
    let suites: Vec<Suite> = if cfg.command == Suite::All { Suite::ALL.to_vec() } else { vec![cfg.command] };
    let mut b = Builder { cfg, tasks: Vec::new() };
    for s in suites {
        match s {
            Suite::VerifyBubble => bubble_suite(&mut b),
            Suite::VerifyPohozaev => pohozaev_suite(&mut b),
            Suite::MassLimit => mass_suite(&mut b),
            Suite::GreenCheck => green_suite(&mut b),
            Suite::PolyIdentities => poly_suite(&mut b),
            Suite::GiraudSweep => giraud_suite(&mut b),
            Suite::SphereSolve => sphere_suite(&mut b),
            Suite::BlowupDemo => blowup_suite(&mut b),
            Suite::All => unreachable!(),
        }
    }
    b.tasks
}

/// r = 0 followed by 199 log-spaced radii on [1e−3, 50].
pub fn bubble_grid() -> Vec<f64> {
    let (a, z) = (1e-3f64.ln(), 50f64.ln());
    std::iter::once(0.0).chain((0..199).map(|i| (a + (z - a) * i as f64 / 198.0).exp())).collect()
}

fn bubble_suite(b: &mut Builder) {
    for d in b.cfg.pairs_for(Suite::VerifyBubble) {
        b.defect(
            format!("bubble.pde_residual.{}", tag(d)),
            "eq.bubble1",
            json!({"nk": nk(d), "mu": 1.0, "grid": "0 and 199 log-spaced radii on [1e-3, 50]"}),
            1e-9,
            Box::new(move || bubble_pde_residual(&BubbleSpec::unit(d), &bubble_grid()).map(Outcome::of)),
        );
        b.push(
            format!("bubble.center_exact.{}", tag(d)),
            "eq.bubble1",
            json!({"nk": nk(d), "mu": 1.0}),
            0.0,
            Box::new(move || Ok(Outcome::of(if bubble_center_exact(&BubbleSpec::unit(d))? { 0.0 } else { 1.0 }))),
        );
        b.defect(
            format!("bubble.mass_identity.{}", tag(d)),
            "eq.constants.bubble",
            json!({"nk": nk(d), "mu": 1.0}),
            1e-8,
            Box::new(move || bubble_mass_identity(&BubbleSpec::unit(d)).map(Outcome::of)),
        );
    }
}

fn gaussian(n: u32) -> SeparableField {
    SeparableField::radial(n as usize, FnProfile::gaussian())
}

fn pohozaev_suite(b: &mut Builder) {
    for d in b.cfg.pairs_for(Suite::VerifyPohozaev) {
        let n = d.n();
        b.defect(
            format!("pohozaev.identity.{}", tag(d)),
            "poho.id0",
            json!({"nk": nk(d), "u": "exp(-r^2)", "f": 1.0, "p": 2.0, "s": 0.5, "r": 1.5,
                   "parity": if d.k() % 2 == 0 { "even" } else { "odd" }}),
            1e-7,
            Box::new(move || {
                let pz = Pohozaev::new(d, PohozaevOptions::radial());
                let one = SeparableField::radial(n as usize, FnProfile::constant(1.0));
                let rep = pz.identity_residual(&gaussian(n), &one, 2.0, 0.5, 1.5)?;
                Ok(Outcome::note(
                    rep.residual.abs() / rep.scale,
                    format!("residual {:e}, scale {:e}", rep.residual, rep.scale),
                ))
            }),
        );
        b.push(
            format!("pohozaev.fundamental_vanishes.{}", tag(d)),
            "bilineaire",
            json!({"nk": nk(d), "radii": "9 log-spaced on [1e-2, 10]"}),
            1e-9,
            Box::new(move || {
                let (bb, shape) = fundamental_solution(d);
                let g = SeparableField::radial(n as usize, shape).scaled(bb.value());
                let pz = Pohozaev::new(d, PohozaevOptions::radial());
                let mut worst = 0.0f64;
                for i in 0..9 {
                    let r = 10f64.powf(-2.0 + 3.0 * i as f64 / 8.0);
                    worst = worst.max(pz.boundary_functional(&g, r)?.abs());
                }
                Ok(Outcome::of(worst))
            }),
        );
        b.defect(
            format!("pohozaev.singular_limit.{}", tag(d)),
            "sing+har",
            json!({"nk": nk(d), "lambda": 1.0, "h": "0.7 + exp(-r^2)"}),
            1e-6,
            Box::new(move || {
                let pz = Pohozaev::new(d, PohozaevOptions::radial());
                let h = SeparableField::radial(n as usize, FnProfile::constant(0.7)).plus(&gaussian(n));
                let lim = pz.singular_mass_limit(1.0, &h)?;
                Ok(Outcome::note(
                    (lim.limit - lim.closed_form).abs() / lim.closed_form.abs(),
                    format!("limit {:e}, theta*lambda*h(0) {:e}", lim.limit, lim.closed_form),
                ))
            }),
        );
    }
}

/// Trace-free Hessian diag(1, −1, 0, …), zero Ricci Laplacian, R₅ = Re(x₁ + ix₂)⁵ + r²x₁x₂x₃.
///
/// R₅ has no r⁴H₁ part: at n = 2k + 4 that component lies in the kernel of the inversion.
pub fn sample_corrections(d: Dimension) -> Result<(HomPoly, HomPoly)> {
    let n = d.n() as usize;
    let mut s = vec![vec![Q::zero(); n]; n];
    s[0][0] = q(1);
    s[1][1] = q(-1);
    let zero = vec![vec![Q::zero(); n]; n];
    let x = |i| HomPoly::var(n, i);
    let pow = |p: &HomPoly, e: u32| (0..e).fold(HomPoly::constant(n, q(1)), |acc, _| acc.mul(p));
    let re5 = pow(&x(0), 5).sub(&pow(&x(0), 3).mul(&pow(&x(1), 2)).scale(&q(10))).add(&x(0).mul(&pow(&x(1), 4)).scale(&q(5)));
    let r5 = re5.add(&x(0).mul(&x(1)).mul(&x(2)).mul_r2());
    let c = green_correction_pipeline(&s, &zero, &r5, d, &PipelineConstants::default())?;
    Ok((c.psi4, c.psi5))
}

fn mass_suite(b: &mut Builder) {
    for d in b.cfg.pairs_for(Suite::MassLimit) {
        b.defect(
            format!("mass.corrected_limit.{}", tag(d)),
            "masse.Green",
            json!({"nk": nk(d), "mass": 1.0, "s_hess": "diag(1,-1,0,...)", "r5": "Re(x1 + i x2)^5 + r^2 x1 x2 x3"}),
            1e-6,
            Box::new(move || {
                let (psi4, psi5) = sample_corrections(d)?;
                let free = GreenModel::new(d, 1.0).mass_limit(PohozaevOptions::radial())?;
                let corrected =
                    GreenModel::new(d, 1.0).with_corrections(psi4, psi5)?.mass_limit(PohozaevOptions::exact_moments())?;
                Ok(Outcome::note(
                    (corrected.limit - free.limit).abs() / free.limit.abs().max(1.0),
                    format!("corrected {:e}, free {:e}, pairing {:e}", corrected.limit, free.limit, corrected.correction),
                ))
            }),
        );
        b.defect(
            format!("mass.c_nk.{}", tag(d)),
            "final.poho.masse",
            json!({"nk": nk(d), "mass": 1.0}),
            1e-6,
            Box::new(move || {
                let exact = to_f64(&theta_times_b(d).coeff);
                let closed = (d.n() - 2 * d.k()) as f64 / 2.0;
                let m = GreenModel::new(d, 1.0).mass_limit(PohozaevOptions::radial())?;
                let v = ((m.limit - closed).abs() / closed).max((exact - closed).abs() / closed);
                Ok(Outcome::note(v, format!("quadrature limit {:e}, exact theta*b {exact}", m.limit)))
            }),
        );
    }
}

fn green_suite(b: &mut Builder) {
    for d in b.cfg.pairs_for(Suite::GreenCheck) {
        let n = d.n();
        b.push(
            format!("green.polyharmonic_exact.{}", tag(d)),
            "def.bnk",
            json!({"nk": nk(d)}),
            0.0,
            Box::new(move || {
                let (_, g) = fundamental_solution(d);
                Ok(Outcome::of(if iterate_polyharmonic(&g, d.k(), d).is_zero() { 0.0 } else { 1.0 }))
            }),
        );
        b.defect(
            format!("green.dirac.{}", tag(d)),
            "def.bnk",
            json!({"nk": nk(d), "phi": "smooth bump, 1 on r^2 <= 1, 0 on r^2 >= 4", "support": 2.0}),
            1e-6,
            Box::new(move || {
                let phi = SeparableField::radial(n as usize, FnProfile::gaussian_bump(1.0, 4.0));
                let rep = dirac_check(&phi, 2.0, d)?;
                Ok(Outcome::of(rep.defect / rep.phi0.abs()))
            }),
        );
        b.defect(
            format!("green.bounds.{}", tag(d)),
            "bounds.Green",
            json!({"nk": nk(d), "mass": 1.0, "points": "x = (r, 0, ...), r = 2^-j, j = 0..20"}),
            1e-12,
            Box::new(move || {
                let m = GreenModel::new(d, 1.0);
                let pts: Vec<Vec<f64>> = (0..=20)
                    .map(|j| {
                        let mut x = vec![0.0; n as usize];
                        x[0] = 0.5f64.powi(j);
                        x
                    })
                    .collect();
                let c = m.bound_constant(&pts)?;
                // G r^{n−2k} = b + r^{n−2k} ranges over (b, b + 1].
                let bb = m.lambda.value();
                let expected = (bb + 1.0).max(1.0 / (bb + 0.5f64.powi(20 * (n - 2 * d.k()) as i32)));
                Ok(Outcome::note((c - expected).abs() / expected, format!("C = {c:e}")))
            }),
        );
    }
}

/// Sparse HomPoly with `terms` random monomials and coefficients in [−5, 5].
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, degree: u32, terms: usize) -> HomPoly {
    let mut p = HomPoly::zero(n, degree);
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        for _ in 0..degree {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(-5i64..=5);
        p = p.add(&HomPoly::monomial(e, q(c)));
    }
    p
}

/// Δ₀ʲ(r^q ψ) by the one-step rule Δ₀(r^q ψ) = r^{q−2}[r²Δ₀ψ − q(q+n−2+2ℓ)ψ].
pub fn brute_weighted_laplacian(qexp: &Q, psi: &HomPoly, j: u32) -> (Q, HomPoly) {
    let (n, ell) = (psi.n() as i64, psi.degree() as i64);
    let mut qq = qexp.clone();
    let mut cur = psi.clone();
    for _ in 0..j {
        let c = &qq * (&qq + q(n - 2 + 2 * ell));
        let lap = if cur.degree() >= 2 { cur.laplacian().mul_r2() } else { HomPoly::zero(psi.n(), psi.degree()) };
        cur = lap.sub(&cur.scale(&c));
        qq -= q(2);
    }
    (qq, cur)
}

fn poly_suite(b: &mut Builder) {
    let dims = b.cfg.pairs_for(Suite::PolyIdentities);
    let seed = b.cfg.seed;
    let dims_json: Vec<Value> = dims.iter().map(|d| nk(*d)).collect();
    {
        let dims = dims.clone();
        b.push(
            "poly.decompose_recombine".into(),
            "poly.homogenes.1",
            json!({"nk": dims_json, "degrees": "0..=6", "seed": seed}),
            0.0,
            Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut bad = 0usize;
                let mut ns: Vec<u32> = dims.iter().map(|d| d.n()).collect();
                ns.dedup();
                for &n in &ns {
                    for ell in 0..=6 {
                        let psi = random_poly(&mut rng, n as usize, ell, 4);
                        let dec = decompose(&psi);
                        let harmonic = dec.components.iter().all(|(_, h)| h.degree() < 2 || h.laplacian().is_zero());
                        if dec.recombine() != psi || !harmonic {
                            bad += 1;
                        }
                    }
                }
                Ok(Outcome::of(bad as f64))
            }),
        );
    }
    {
        let dims = dims.clone();
        b.push(
            "poly.weighted_laplacian_induction".into(),
            "induction.poly.homogenes",
            json!({"nk": dims_json, "degrees": "0..=6", "j": "1..=k", "q": ["2k-n", "random p/q"], "seed": seed}),
            0.0,
            Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
                let mut bad = 0usize;
                for d in &dims {
                    for ell in 0..=6 {
                        let psi = random_poly(&mut rng, d.n() as usize, ell, 3);
                        let qs = [q(2 * d.k() as i64 - d.n() as i64), qf(rng.gen_range(-20..=20), rng.gen_range(1..=7))];
                        for qexp in &qs {
                            for j in 1..=d.k() {
                                let fast = weighted_power_laplacian(qexp, &psi, j);
                                let (qq, slow) = brute_weighted_laplacian(qexp, &psi, j);
                                if fast.r_power != qq || fast.poly != slow {
                                    bad += 1;
                                }
                            }
                        }
                    }
                }
                Ok(Outcome::of(bad as f64))
            }),
        );
    }
    {
        let dims = dims.clone();
        b.push(
            "poly.inversion_round_trip".into(),
            "inversion.homogenes",
            json!({"nk": dims_json, "degrees": "0..=6", "q": "2k-n", "seed": seed}),
            0.0,
            Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
                let (mut bad, mut singular) = (0usize, 0usize);
                for d in &dims {
                    let qexp = q(2 * d.k() as i64 - d.n() as i64);
                    for ell in 0..=6 {
                        let psi = random_poly(&mut rng, d.n() as usize, ell, 3);
                        let t = weighted_power_laplacian(&qexp, &psi, d.k()).poly;
                        // Components on which an eigenfactor vanishes are lost by the forward map.
                        let mut expected = HomPoly::zero(d.n() as usize, ell);
                        for (p, h) in decompose(&psi).components {
                            if weighted_factor(d.n() as usize, ell, p, &qexp, d.k()).is_zero() {
                                singular += 1;
                                continue;
                            }
                            expected = expected.add(&(0..p).fold(h, |acc, _| acc.mul_r2()));
                        }
                        match invert_weighted(&qexp, &t, *d) {
                            Ok(back) => bad += usize::from(back != expected),
                            Err(_) => bad += 1,
                        }
                    }
                }
                Ok(Outcome::note(bad as f64, format!("{singular} components in the kernel of the forward map")))
            }),
        );
    }
    {
        let dims = dims.clone();
        b.push(
            "poly.delta_k_quadratic".into(),
            "Delta_k_T",
            json!({"nk": "pairs with n > 2k + 2", "psi": ["x1 x2", "x1^2 - x2^2"], "q": "2k+2-n"}),
            0.0,
            Box::new(move || {
                let mut bad = 0usize;
                // n = 2k + 2 gives q = 0, where Δ₀ᵏψ = 0 and C vanishes.
                for d in dims.iter().filter(|d| d.n() > 2 * d.k() + 2) {
                    let n = d.n() as usize;
                    let x = |i| HomPoly::var(n, i);
                    let qexp = q(2 * d.k() as i64 + 2 - d.n() as i64);
                    let mut constants = Vec::new();
                    for psi in [x(0).mul(&x(1)), x(0).mul(&x(0)).sub(&x(1).mul(&x(1)))] {
                        let out = weighted_power_laplacian(&qexp, &psi, d.k());
                        let (e, c0) = psi.terms().next().expect("nonzero quadratic");
                        let c = out.poly.coeff(e) / c0;
                        let scalar = out.poly == psi.scale(&c);
                        let inv = invert_weighted(&qexp, &psi, *d).map(|v| v == psi.scale(&c.recip()));
                        if c.is_zero() || !scalar || out.r_power != q(2 - d.n() as i64) || inv != Ok(true) {
                            bad += 1;
                        }
                        constants.push(c);
                    }
                    bad += usize::from(constants[0] != constants[1]);
                }
                Ok(Outcome::of(bad as f64))
            }),
        );
    }
    {
        let dims = dims.clone();
        b.push(
            "poly.vanishing_sphere_integrals".into(),
            "dernieres.integrales",
            json!({"nk": dims_json, "psi": "random degree 4 minus its mean times r^4", "i": "0..=k", "seed": seed}),
            0.0,
            Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
                let mut bad = 0usize;
                for d in &dims {
                    let n = d.n() as usize;
                    let raw = random_poly(&mut rng, n, 4, 5);
                    let r4 = HomPoly::r2(n).mul(&HomPoly::r2(n));
                    let psi = raw.sub(&r4.scale(&raw.sphere_average()));
                    for i in 0..=d.k() {
                        bad += vanishing_integrals(&psi, *d, i).iter().filter(|v| !v.is_zero()).count();
                    }
                }
                Ok(Outcome::of(bad as f64))
            }),
        );
    }
    for d in dims.into_iter().filter(|d| d.n() == 2 * d.k() + 4) {
        b.push(
            format!("poly.correction_pipeline.{}", tag(d)),
            "expansion.Green.local",
            json!({"nk": nk(d), "s_hess": "diag(1,-1,0,...)", "r5": "Re(x1 + i x2)^5 + r^2 x1 x2 x3"}),
            0.0,
            Box::new(move || {
                let (psi4, psi5) = sample_corrections(d)?;
                let qexp = q(2 * d.k() as i64 - d.n() as i64);
                let n = d.n() as usize;
                let x = |i| HomPoly::var(n, i);
                let t1 = x(0).mul(&x(0)).sub(&x(1).mul(&x(1))).mul_r2();
                let fwd = weighted_power_laplacian(&qexp, &psi4, d.k());
                let mut bad = usize::from(fwd.poly != t1 || fwd.r_power != q(-(d.n() as i64)));
                bad += usize::from(!psi4.sphere_average().is_zero());
                bad += usize::from(!psi5.sphere_average().is_zero());
                Ok(Outcome::of(bad as f64))
            }),
        );
    }
}

fn giraud_suite(b: &mut Builder) {
    let sweep = b.cfg.sweep.clone();
    for (n, p, qq) in REGIME_EXEMPLARS {
        let sw = sweep.clone();
        b.push(
            format!("giraud.envelope_ratio.n{n}p{p}q{qq}"),
            "giruad",
            json!({"n": n, "p": p, "q": qq, "rho": sw.rho, "xi_over_rho": sw.xi}),
            50.0,
            Box::new(move || {
                let rep = envelope_ratio_sweep(n, p, qq, &sw.rho, &sw.xi)?;
                Ok(Outcome::note(
                    rep.max_ratio.max(1.0 / rep.min_ratio),
                    format!("{:?}: ratios in [{:.4}, {:.4}]", rep.regime, rep.min_ratio, rep.max_ratio),
                ))
            }),
        );
    }
    let seed = b.cfg.seed;
    b.push(
        "giraud.monte_carlo_agreement".into(),
        "lemma.Giraud",
        json!({"n": 3, "p": 2, "q": 1, "rho": 10.0, "xi": 3.0, "samples": 200000, "seed": seed}),
        5.0,
        Box::new(move || {
            let g = GiraudParams::new(3, 2, 1, 10.0, 3.0)?;
            let quad = giraud_integral(&g)?;
            let (mean, se) = monte_carlo(&g, 200_000, seed);
            Ok(Outcome::note((mean - quad.value).abs() / se, format!("mc {mean} ± {se}, quadrature {}", quad.value)))
        }),
    );
}

fn sphere_suite(b: &mut Builder) {
    for d in b.cfg.pairs_for(Suite::SphereSolve) {
        let (n, k) = (d.n(), d.k());
        b.push(
            format!("sphere.multipliers_exact.{}", tag(d)),
            "conf.inv.Pg",
            json!({"nk": nk(d), "ell": "0..=12"}),
            0.0,
            Box::new(move || {
                let spec = GjmsSphereSpec::new(d);
                let (ni, ki) = (n as i64, k as i64);
                let shifts: Vec<Q> = (1..=ki).map(|i| qf((ni + 2 * i - 2) * (ni - 2 * i), 4)).collect();
                let mut bad = 0usize;
                for ell in 0..=12i64 {
                    let lam = q(ell * (ell + ni - 1));
                    let want = shifts.iter().fold(Q::one(), |acc, s| acc * (&lam + s));
                    bad += usize::from(gjms_multiplier(&spec, ell as u32) != want);
                }
                let p1 = shifts.iter().fold(Q::one(), |acc, s| acc * s);
                let qc = qf(2, ni - 2 * ki) * p1;
                bad += usize::from(q_curvature_constant(&spec) != qc);
                let known = match (n, k) {
                    (3, 1) => Some(qf(3, 2)),
                    (5, 2) => Some(qf(105, 8)),
                    _ => None,
                };
                if let Some(kq) = known {
                    bad += usize::from(qc != kq);
                }
                Ok(Outcome::note(bad as f64, format!("Q = {qc}")))
            }),
        );
        for mu in [0.5, 1.0] {
            b.push(
                format!("sphere.bubble_residual.{}.mu{mu}", tag(d)),
                "bubble2",
                json!({"nk": nk(d), "mu": mu, "L": 64}),
                1e-6,
                Box::new(move || {
                    let spec = GjmsSphereSpec::new(d);
                    let bf = stereographic_bubble(&spec, mu, ZonalGrid::new(n, 64))?;
                    Ok(Outcome::of(spectral_residual(&spec, &bf.field, spec.critical_exponent(), &|_| 1.0)))
                }),
            );
        }
        let p_mid = 0.5 * (2.0 + 2.0 * n as f64 / (n - 2 * k) as f64);
        b.push(
            format!("sphere.newton_constant.{}", tag(d)),
            "conf.inv.Pg",
            json!({"nk": nk(d), "p": p_mid, "f": 1.0, "L": 16, "init": "exact constant solution"}),
            2.0,
            Box::new(move || {
                let spec = GjmsSphereSpec::new(d);
                let c = to_f64(&spec.p_of_one()).powf(1.0 / (p_mid - 2.0));
                let init = SpectralRadialField::constant(ZonalGrid::new(n, 16), c);
                let sol = solve_subcritical(&spec, p_mid, &|_| 1.0, &init, NewtonOptions::default())?;
                Ok(Outcome::note(sol.iterations as f64, format!("residual {:e}", sol.residual)))
            }),
        );
        b.push(
            format!("sphere.newton_nonconstant.{}", tag(d)),
            "conf.inv.Pg",
            json!({"nk": nk(d), "p": p_mid, "f": "1 + 0.1 t", "L": 32, "init": "constant solution for f = 1"}),
            1e-9,
            Box::new(move || {
                let spec = GjmsSphereSpec::new(d);
                let c = to_f64(&spec.p_of_one()).powf(1.0 / (p_mid - 2.0));
                let init = SpectralRadialField::constant(ZonalGrid::new(n, 32), c);
                let f = |t: f64| 1.0 + 0.1 * t;
                let sol = solve_subcritical(&spec, p_mid, &f, &init, NewtonOptions::default())?;
                Ok(Outcome::note(sol.residual, format!("{} iterations", sol.iterations)))
            }),
        );
    }
}

fn blowup_suite(b: &mut Builder) {
    for d in b.cfg.pairs_for(Suite::BlowupDemo) {
        let n = d.n();
        for mu in [1.0, 0.5, 0.1] {
            let inputs = json!({"nk": nk(d), "mu": mu, "L": 128, "epsilon": 0.1});
            let diag = move || {
                let spec = GjmsSphereSpec::new(d);
                let bf = stereographic_bubble(&spec, mu, ZonalGrid::new(n, 128))?;
                blowup_diagnostics(&bf.field, d, spec.critical_exponent(), 0.1)
            };
            b.push(
                format!("blowup.mu_recovery.{}.mu{mu}", tag(d)),
                "def.mua",
                inputs.clone(),
                1e-10,
                Box::new(move || {
                    let r = diag()?;
                    Ok(Outcome::note((r.mu - mu).abs() / mu, format!("recovered mu {}", r.mu)))
                }),
            );
            b.push(
                format!("blowup.profile_distance.{}.mu{mu}", tag(d)),
                "def.ra",
                inputs,
                5e-2,
                Box::new(move || {
                    let r = diag()?;
                    Ok(Outcome::note(r.profile_distance, format!("radius of influence {}", r.radius_of_influence)))
                }),
            );
        }
    }
}
