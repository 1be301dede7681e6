//! Exact homogeneous polynomials on R^n, the decomposition
//! P_ℓ = ⊕ r^{2p} H_{ℓ−2p}, and weighted powers r^q ψ under Δ₀ = −Σ∂ᵢ².

use crate::exact::{q, to_f64, Q};
use crate::radial::Dimension;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Homogeneous polynomial of a fixed degree with sparse rational coefficients,
/// keyed by exponent vectors in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomPoly {
    n: usize,
    degree: u32,
    coeffs: BTreeMap<Vec<u32>, Q>,
}

impl HomPoly {
    pub fn zero(n: usize, degree: u32) -> Self {
        HomPoly { n, degree, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        HomPoly::monomial(vec![0; n], c)
    }

    pub fn monomial(exps: Vec<u32>, c: Q) -> Self {
        let n = exps.len();
        let degree = exps.iter().sum();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exps, c);
        }
        HomPoly { n, degree, coeffs }
    }

    /// x_i (0-based index).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        HomPoly::monomial(e, Q::one())
    }

    /// r² = Σ x_i².
    pub fn r2(n: usize) -> Self {
        let mut out = HomPoly::zero(n, 2);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 2;
            out.coeffs.insert(e, Q::one());
        }
        out
    }

    pub fn from_terms(n: usize, degree: u32, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Result<Self> {
        let mut out = HomPoly::zero(n, degree);
        for (e, c) in terms {
            if e.len() != n || e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidArgument(format!(
                    "exponent {e:?} does not match dimension {n} and degree {degree}"
                )));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.coeffs.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_same(&self, o: &Self) {
        assert_eq!(self.n, o.n, "dimension mismatch");
        assert!(
            self.degree == o.degree || self.is_zero() || o.is_zero(),
            "degree mismatch {} vs {}",
            self.degree,
            o.degree
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        if self.is_zero() {
            return o.clone();
        }
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return HomPoly::zero(self.n, self.degree);
        }
        HomPoly {
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let mut out = HomPoly::zero(self.n, self.degree + o.degree);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = HomPoly::zero(self.n, self.degree.saturating_sub(1));
        for (e, c) in &self.coeffs {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * q(e[i] as i64));
        }
        out
    }

    /// Δ₀ψ = −Σ ∂ᵢ²ψ.
    pub fn laplacian(&self) -> Self {
        let mut out = HomPoly::zero(self.n, self.degree.saturating_sub(2));
        for (e, c) in &self.coeffs {
            for i in 0..self.n {
                if e[i] < 2 {
                    continue;
                }
                let mut f = e.clone();
                f[i] -= 2;
                out.add_term(f, -(c * q((e[i] * (e[i] - 1)) as i64)));
            }
        }
        out
    }

    pub fn mul_r2(&self) -> Self {
        self.mul(&HomPoly::r2(self.n))
    }

    /// Exact quotient by r², or None if r² does not divide.
    pub fn div_r2(&self) -> Option<Self> {
        if self.degree < 2 {
            return self.is_zero().then(|| HomPoly::zero(self.n, 0));
        }
        let r2 = HomPoly::r2(self.n);
        let mut rem = self.clone();
        let mut quot = HomPoly::zero(self.n, self.degree - 2);
        while let Some((e, c)) = rem.coeffs.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e[0] < 2 {
                return None;
            }
            let mut f = e;
            f[0] -= 2;
            let t = HomPoly::monomial(f.clone(), c.clone());
            quot.add_term(f, c);
            rem = rem.sub(&t.mul(&r2));
        }
        Some(quot)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| to_f64(c) * e.iter().zip(x).map(|(p, xi)| xi.powi(*p as i32)).product::<f64>())
            .sum()
    }

    pub fn eval_exact(&self, x: &[Q]) -> Q {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                let mut t = c.clone();
                for (p, xi) in e.iter().zip(x) {
                    for _ in 0..*p {
                        t *= xi;
                    }
                }
                t
            })
            .fold(Q::zero(), |a, b| a + b)
    }

    /// ∫_{S^{n−1}} ψ dσ / ω_{n−1}, by the reduction ∫ψ = −[ℓ(n+ℓ−2)]^{−1}∫Δ₀ψ.
    pub fn sphere_average(&self) -> Q {
        if self.is_zero() || self.degree % 2 == 1 {
            return Q::zero();
        }
        if self.degree == 0 {
            return self.coeff(&vec![0; self.n]);
        }
        let l = self.degree as i64;
        -self.laplacian().sphere_average() / q(l * (self.n as i64 + l - 2))
    }

    /// Same average from the closed form for monomials.
    pub fn sphere_average_direct(&self) -> Q {
        self.coeffs.iter().map(|(e, c)| c * monomial_sphere_mean(e)).fold(Q::zero(), |a, b| a + b)
    }
}

/// Mean of x^α over S^{n−1}: ∏(α_i−1)!! / (n(n+2)⋯(n+|α|−2)), zero if any α_i is odd.
pub fn monomial_sphere_mean(alpha: &[u32]) -> Q {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Q::zero();
    }
    let n = alpha.len() as i64;
    let mut num = Q::one();
    for &a in alpha {
        let mut j = a as i64 - 1;
        while j > 1 {
            num *= q(j);
            j -= 2;
        }
    }
    let total: i64 = alpha.iter().map(|&a| a as i64).sum();
    let mut den = Q::one();
    let mut j = n;
    while j < n + total {
        den *= q(j);
        j += 2;
    }
    num / den
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (j, p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", j + 1)?,
                    _ => write!(f, "*x{}^{p}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// ψ = Σ_p r^{2p} h_p with each h_p harmonic of degree ℓ − 2p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicDecomposition {
    pub n: usize,
    pub degree: u32,
    pub components: Vec<(u32, HomPoly)>,
}

impl HarmonicDecomposition {
    pub fn recombine(&self) -> HomPoly {
        let mut out = HomPoly::zero(self.n, self.degree);
        for (p, h) in &self.components {
            let mut t = h.clone();
            for _ in 0..*p {
                t = t.mul_r2();
            }
            out = out.add(&t);
        }
        out
    }

    pub fn component(&self, p: u32) -> Option<&HomPoly> {
        self.components.iter().find(|(pp, _)| *pp == p).map(|(_, h)| h)
    }
}

/// Eigenvalue of r²Δ₀ on r^{2p}H_{ℓ−2p}.
pub fn r2_laplacian_eigenvalue(n: usize, ell: u32, p: u32) -> Q {
    let (n, l, p) = (n as i64, ell as i64, p as i64);
    q(-2 * p * (n - 2 + 2 * l - 2 * p))
}

/// Project onto the eigenspaces of T = r²Δ₀ via Lagrange polynomials in T.
pub fn decompose(psi: &HomPoly) -> HarmonicDecomposition {
    let (n, ell) = (psi.n(), psi.degree());
    let pmax = ell / 2;
    let lambdas: Vec<Q> = (0..=pmax).map(|p| r2_laplacian_eigenvalue(n, ell, p)).collect();
    let mut krylov = vec![psi.clone()];
    for _ in 0..pmax {
        let last = krylov.last().unwrap();
        krylov.push(last.laplacian().mul_r2());
    }
    let mut components = Vec::new();
    for p in 0..=pmax as usize {
        // coefficients of ∏_{q≠p}(x − λ_q)/(λ_p − λ_q), lowest degree first
        let mut poly = vec![Q::one()];
        for (qi, lq) in lambdas.iter().enumerate() {
            if qi == p {
                continue;
            }
            let denom = &lambdas[p] - lq;
            let mut next = vec![Q::zero(); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] += c / &denom;
                next[j] -= c * lq / &denom;
            }
            poly = next;
        }
        let mut proj = HomPoly::zero(n, ell);
        for (j, c) in poly.iter().enumerate() {
            proj = proj.add(&krylov[j].scale(c));
        }
        if proj.is_zero() {
            continue;
        }
        let mut h = proj;
        for _ in 0..p {
            h = h.div_r2().expect("eigenprojection is divisible by r^2p");
        }
        components.push((p as u32, h));
    }
    HarmonicDecomposition { n, degree: ell, components }
}

/// r^{r_power} × poly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousFunction {
    pub r_power: Q,
    pub poly: HomPoly,
}

impl HomogeneousFunction {
    pub fn new(r_power: Q, poly: HomPoly) -> Self {
        HomogeneousFunction { r_power, poly }
    }

    /// Degree of homogeneity r_power + deg(poly).
    pub fn homogeneity(&self) -> Q {
        &self.r_power + q(self.poly.degree() as i64)
    }

    pub fn laplacian(&self) -> Self {
        weighted_power_laplacian(&self.r_power, &self.poly, 1)
    }

    /// x^a ∂_a, which multiplies by the homogeneity degree.
    pub fn euler(&self) -> Self {
        HomogeneousFunction { r_power: self.r_power.clone(), poly: self.poly.scale(&self.homogeneity()) }
    }

    /// ∂_ν = r^{−1} x^a∂_a on spheres centred at 0.
    pub fn normal_derivative(&self) -> Self {
        let e = self.euler();
        HomogeneousFunction { r_power: e.r_power - q(1), poly: e.poly }
    }

    /// ∫_{∂B(0,r)} f dσ = coefficient × ω_{n−1} × r^{homogeneity + n − 1}.
    pub fn sphere_integral_coeff(&self) -> Q {
        self.poly.sphere_average()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        r.powf(to_f64(&self.r_power)) * self.poly.eval(x)
    }
}

fn eigen_factor(n: usize, ell_prime: u32, d: &Q) -> Q {
    let lp = q(ell_prime as i64);
    let n2 = q(n as i64 - 2);
    &lp * (&lp + &n2) - d * (d + &n2)
}

/// ∏_{m=0}^{j−1} [ℓ′(ℓ′+n−2) − (q+ℓ−2m)(q+ℓ−2m+n−2)] for the component r^{2p}h_p, ℓ′ = ℓ − 2p.
pub fn weighted_factor(n: usize, ell: u32, p: u32, qexp: &Q, j: u32) -> Q {
    let lp = ell - 2 * p;
    (0..j).fold(Q::one(), |acc, m| {
        let d = qexp + q(ell as i64 - 2 * m as i64);
        acc * eigen_factor(n, lp, &d)
    })
}

/// Δ₀ʲ(r^q ψ) = r^{q−2j} Σ_p r^{2p} h_p · weighted_factor(p).
pub fn weighted_power_laplacian(qexp: &Q, psi: &HomPoly, j: u32) -> HomogeneousFunction {
    let dec = decompose(psi);
    let mut out = HomPoly::zero(psi.n(), psi.degree());
    for (p, h) in &dec.components {
        let f = weighted_factor(psi.n(), psi.degree(), *p, qexp, j);
        let mut t = h.scale(&f);
        for _ in 0..*p {
            t = t.mul_r2();
        }
        out = out.add(&t);
    }
    HomogeneousFunction { r_power: qexp - q(2 * j as i64), poly: out }
}

/// The unique ψ ∈ P_ℓ with Δ₀ᵏ(r^q ψ) = r^{q−2k} T.
pub fn invert_weighted(qexp: &Q, t: &HomPoly, dim: Dimension) -> Result<HomPoly> {
    let k = dim.k();
    if t.n() != dim.n() as usize {
        return Err(Error::InvalidArgument(format!(
            "polynomial in {} variables for dimension n = {}",
            t.n(),
            dim.n()
        )));
    }
    let dec = decompose(t);
    let mut out = HomPoly::zero(t.n(), t.degree());
    for (p, h) in &dec.components {
        let f = weighted_factor(t.n(), t.degree(), *p, qexp, k);
        if f.is_zero() {
            return Err(Error::NotInvertible { p: *p, ell: t.degree() - 2 * p });
        }
        let mut c = h.scale(&f.recip());
        for _ in 0..*p {
            c = c.mul_r2();
        }
        out = out.add(&c);
    }
    Ok(out)
}

/// Output of the degree-4/5 correction pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenCorrections {
    pub psi4: HomPoly,
    pub psi5: HomPoly,
    pub t1: HomPoly,
    pub mean4: Q,
    pub mean5: Q,
    /// (trace of S_hess, expected value) when they disagree.
    pub trace_mismatch: Option<(Q, Q)>,
}

/// Coefficients of the degree-4/5 pipeline; c₂ = c₃ = 1 unless set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConstants {
    pub c2: Q,
    pub c3: Q,
    pub expected_trace: Option<Q>,
}

impl Default for PipelineConstants {
    fn default() -> Self {
        PipelineConstants { c2: Q::one(), c3: Q::one(), expected_trace: None }
    }
}

/// Solve Δ₀ᵏ(r^{2k−n}ψ⁽⁴⁾) = r^{−n}T₁ with T₁ = r²[c₂S + c₃L]_{ab}x^a x^b and
/// Δ₀ᵏ(r^{2k−n}ψ⁽⁵⁾) = r^{−n}R₅.
pub fn green_correction_pipeline(
    s_hess: &[Vec<Q>],
    ric_lap: &[Vec<Q>],
    r5: &HomPoly,
    dim: Dimension,
    consts: &PipelineConstants,
) -> Result<GreenCorrections> {
    let n = dim.n() as usize;
    for (name, m) in [("S_hess", s_hess), ("ric_lap", ric_lap)] {
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!("{name} must be {n}×{n}")));
        }
        for a in 0..n {
            for b in 0..n {
                if m[a][b] != m[b][a] {
                    return Err(Error::InvalidArgument(format!("{name} is not symmetric at ({a},{b})")));
                }
            }
        }
    }
    if r5.n() != n || (!r5.is_zero() && r5.degree() != 5) {
        return Err(Error::InvalidArgument("R5 must be a degree-5 polynomial in n variables".into()));
    }
    let mut quad = HomPoly::zero(n, 2);
    let mut trace = Q::zero();
    for a in 0..n {
        trace += &consts.c2 * &s_hess[a][a] + &consts.c3 * &ric_lap[a][a];
        for b in 0..n {
            let c = &consts.c2 * &s_hess[a][b] + &consts.c3 * &ric_lap[a][b];
            let mut e = vec![0; n];
            e[a] += 1;
            e[b] += 1;
            quad.add_term(e, c);
        }
    }
    let s_trace = (0..n).fold(Q::zero(), |acc, a| acc + &s_hess[a][a]);
    let trace_mismatch = consts
        .expected_trace
        .as_ref()
        .filter(|t| **t != s_trace)
        .map(|t| (s_trace.clone(), t.clone()));
    let t1 = if quad.is_zero() { HomPoly::zero(n, 4) } else { quad.mul_r2() };
    let qexp = q(2 * dim.k() as i64 - dim.n() as i64);
    let psi4 = invert_weighted(&qexp, &t1, dim)?;
    let r5 = if r5.is_zero() { HomPoly::zero(n, 5) } else { r5.clone() };
    let psi5 = invert_weighted(&qexp, &r5, dim)?;
    let mean4 = psi4.sphere_average();
    let mean5 = psi5.sphere_average();
    if trace.is_zero() && !mean4.is_zero() {
        return Err(Error::NonzeroMean { which: "psi4".into(), value: mean4.to_string() });
    }
    if !mean5.is_zero() {
        return Err(Error::NonzeroMean { which: "psi5".into(), value: mean5.to_string() });
    }
    Ok(GreenCorrections { psi4, psi5, t1, mean4, mean5, trace_mismatch })
}

/// The six sphere integrals for R₀ = r^{2k−n}ψ at power i, as coefficients of ω r^{…}:
/// Δ₀ⁱR₀, ∂_νΔ₀ⁱR₀, ∂_νΔ₀ⁱ(ER₀), Δ₀ⁱ(ER₀), ∂_ν(EΔ₀ⁱR₀), EΔ₀ⁱR₀.
pub fn vanishing_integrals(psi: &HomPoly, dim: Dimension, i: u32) -> [Q; 6] {
    let r0 = HomogeneousFunction::new(q(2 * dim.k() as i64 - dim.n() as i64), psi.clone());
    let lap_i = |f: &HomogeneousFunction| (0..i).fold(f.clone(), |acc, _| acc.laplacian());
    let d = lap_i(&r0);
    let er0 = r0.euler();
    [
        d.sphere_integral_coeff(),
        d.normal_derivative().sphere_integral_coeff(),
        lap_i(&er0).normal_derivative().sphere_integral_coeff(),
        lap_i(&er0).sphere_integral_coeff(),
        d.euler().normal_derivative().sphere_integral_coeff(),
        d.euler().sphere_integral_coeff(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    fn x(n: usize, i: usize) -> HomPoly {
        HomPoly::var(n, i)
    }

    #[test]
    fn laplacian_and_division() {
        let r2 = HomPoly::r2(3);
        assert_eq!(r2.laplacian(), HomPoly::constant(3, q(-6)));
        let p = x(3, 0).mul(&x(3, 1)).mul_r2();
        assert_eq!(p.div_r2(), Some(x(3, 0).mul(&x(3, 1))));
        assert_eq!(x(3, 0).mul(&x(3, 1)).div_r2(), None);
    }

    #[test]
    fn decompose_examples() {
        let xy = x(3, 0).mul(&x(3, 1));
        let d = decompose(&xy);
        assert_eq!(d.components, vec![(0, xy.clone())]);
        let d = decompose(&HomPoly::r2(4));
        assert_eq!(d.components, vec![(1, HomPoly::constant(4, q(1)))]);
        let x4 = x(3, 0).mul(&x(3, 0)).mul(&x(3, 0)).mul(&x(3, 0));
        let d = decompose(&x4);
        assert_eq!(d.recombine(), x4);
        assert_eq!(d.components.len(), 3);
        for (_, h) in &d.components {
            assert!(h.laplacian().is_zero());
        }
    }

    #[test]
    fn sphere_average_examples() {
        for n in 3..8 {
            assert_eq!(HomPoly::r2(n).sphere_average(), q(1));
            assert_eq!(x(n, 0).mul(&x(n, 1)).sphere_average(), q(0));
            let x1sq = x(n, 0).mul(&x(n, 0));
            assert_eq!(x1sq.sphere_average(), qf(1, n as i64));
            let x4 = x1sq.mul(&x1sq);
            assert_eq!(x4.sphere_average(), x4.sphere_average_direct());
        }
        assert_eq!(x(5, 2).sphere_average(), q(0));
    }

    #[test]
    fn delta_k_of_harmonic_quadratic() {
        for (n, k) in [(5u32, 2u32), (7, 3), (9, 4), (8, 2)] {
            let d = Dimension::new(n, k).unwrap();
            let h = x(n as usize, 0).mul(&x(n as usize, 1));
            let qexp = q(2 * k as i64 + 2 - n as i64);
            let f = weighted_power_laplacian(&qexp, &h, k);
            assert_eq!(f.r_power, q(2 - n as i64));
            let c = f.poly.coeff(&{
                let mut e = vec![0; n as usize];
                e[0] = 1;
                e[1] = 1;
                e
            });
            assert!(!c.is_zero());
            assert_eq!(f.poly, h.scale(&c));
            assert_eq!(invert_weighted(&qexp, &h, d).unwrap(), h.scale(&c.recip()));
        }
    }

    #[test]
    fn singular_factor_is_reported() {
        // n = 8, k = 2, q = −4: the constant component of r⁴ is annihilated.
        let d = Dimension::new(8, 2).unwrap();
        let t = HomPoly::r2(8).mul_r2();
        assert_eq!(invert_weighted(&q(-4), &t, d), Err(Error::NotInvertible { p: 2, ell: 0 }));
    }

    #[test]
    fn pipeline_trivial_and_trace_free() {
        let d = Dimension::new(8, 2).unwrap();
        let z = vec![vec![q(0); 8]; 8];
        let out = green_correction_pipeline(&z, &z, &HomPoly::zero(8, 5), d, &PipelineConstants::default()).unwrap();
        assert!(out.psi4.is_zero() && out.psi5.is_zero());
        let mut s = z.clone();
        s[0][0] = q(1);
        s[1][1] = q(-1);
        let out = green_correction_pipeline(&s, &z, &HomPoly::zero(8, 5), d, &PipelineConstants::default()).unwrap();
        assert_eq!(out.mean4, q(0));
        let fwd = weighted_power_laplacian(&q(-4), &out.psi4, 2);
        assert_eq!(fwd.r_power, q(-8));
        assert_eq!(fwd.poly, out.t1);
        for i in 0..4 {
            assert!(vanishing_integrals(&out.psi4, d, i).iter().all(Zero::is_zero));
        }
    }
}
