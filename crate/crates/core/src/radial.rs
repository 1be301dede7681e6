//! Rotationally symmetric functions on R^n: dimensions, radial jets, the exact
//! closed family `c r^a (μ² + β r²)^{−b}`, and profiles expanded in s = r².

use crate::exact::{q, qf, qpow, to_f64, PiMultiple, QExt, Radical, Q};
use crate::series::Series;
use crate::{Error, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// The pair (n, k) with 2k < n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dimension {
    n: u32,
    k: u32,
}

impl Dimension {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n < 3 || k < 1 || 2 * k >= n {
            return Err(Error::InvalidDimension { n: n as i64, k: k as i64 });
        }
        Ok(Dimension { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// 2n/(n − 2k).
    pub fn crit_exp(&self) -> Q {
        qf(2 * self.n as i64, (self.n - 2 * self.k) as i64)
    }

    pub fn crit_exp_f64(&self) -> f64 {
        to_f64(&self.crit_exp())
    }

    /// (n − 2k)/2.
    pub fn half_gap(&self) -> Q {
        qf((self.n - 2 * self.k) as i64, 2)
    }

    pub fn half_gap_f64(&self) -> f64 {
        (self.n - 2 * self.k) as f64 / 2.0
    }

    pub fn sphere_area(&self) -> SphereArea {
        SphereArea::of_ambient(self.n)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.k)
    }
}

/// ω_{n−1} = coeff · π^pi_power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereArea {
    pub coeff: Q,
    pub pi_power: u32,
}

impl SphereArea {
    /// Area of the unit sphere in R^n.
    pub fn of_ambient(n: u32) -> Self {
        assert!(n >= 1);
        let m = n / 2;
        if n % 2 == 0 {
            let fact: i64 = (1..m as i64).product();
            SphereArea { coeff: qf(2, fact), pi_power: m }
        } else {
            let dfact: i64 = (1..2 * m as i64).step_by(2).product();
            SphereArea { coeff: qf(1i64 << (m + 1), dfact), pi_power: m }
        }
    }

    pub fn value(&self) -> f64 {
        to_f64(&self.coeff) * PI.powi(self.pi_power as i32)
    }

    pub fn as_pi_multiple(&self) -> PiMultiple {
        PiMultiple { coeff: self.coeff.clone(), pi_power: self.pi_power as i32 }
    }
}

/// Value and radial derivatives (u(r), u′(r), …, u^{(m)}(r)).
#[derive(Clone, Debug, PartialEq)]
pub struct RadialJet {
    radius: f64,
    values: Vec<f64>,
}

impl RadialJet {
    pub fn new(radius: f64, values: Vec<f64>) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("jet radius {radius} must be finite and >= 0")));
        }
        if values.is_empty() {
            return Err(Error::OrderTooLow { have: 0, need: 0 });
        }
        Ok(RadialJet { radius, values })
    }

    /// Jet of a profile, derived from its expansion in s = r².
    pub fn from_profile(p: &dyn RadialProfile, radius: f64, order: usize) -> Self {
        let g = p.s_series(radius * radius, order);
        let mut inner = Series::zero(order);
        if order >= 1 {
            inner.c[1] = 2.0 * radius;
        }
        if order >= 2 {
            inner.c[2] = 1.0;
        }
        let h = g.compose(&inner);
        let mut fact = 1.0;
        let values = h
            .c
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j > 0 {
                    fact *= j as f64;
                }
                c * fact
            })
            .collect();
        RadialJet { radius, values }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self) -> f64 {
        self.values[0]
    }
}

fn factorials(m: usize) -> Vec<f64> {
    let mut f = vec![1.0; m + 1];
    for j in 1..=m {
        f[j] = f[j - 1] * j as f64;
    }
    f
}

/// Jet of Δ₀u = −(u″ + (n−1)u′/r), two orders shorter.
pub fn radial_laplacian(jet: &RadialJet, dim: Dimension) -> Result<RadialJet> {
    let m = jet.order();
    if m < 2 {
        return Err(Error::OrderTooLow { have: m, need: 2 });
    }
    let n = dim.n() as f64;
    let fact = factorials(m);
    let c: Vec<f64> = jet.values.iter().zip(&fact).map(|(v, f)| v / f).collect();
    let mut out = vec![0.0; m - 1];
    if jet.radius == 0.0 {
        if let Some(j) = (1..=m).step_by(2).find(|&j| jet.values[j] != 0.0) {
            return Err(Error::OddJetAtOrigin { order: j });
        }
        for j in 1..=m / 2 {
            let two_j = 2 * j;
            out[two_j - 2] = -(two_j as f64) * (two_j as f64 + n - 2.0) * c[two_j];
        }
    } else {
        let r0 = jet.radius;
        let s = Series::new(c);
        let d1 = s.deriv();
        let d2 = d1.deriv();
        let inv = Series::new((0..m - 1).map(|j| (-1f64).powi(j as i32) / r0.powi(j as i32 + 1)).collect());
        let v = &d2 + &(&d1.truncate(m - 2) * &inv).scale(n - 1.0);
        for j in 0..=m - 2 {
            out[j] = -v.c[j];
        }
    }
    for (j, o) in out.iter_mut().enumerate() {
        *o *= fact[j];
    }
    RadialJet::new(jet.radius, out)
}

/// A radial function u(x) = g(|x|²) given by the Taylor expansion of g.
pub trait RadialProfile: fmt::Debug + Send + Sync {
    /// Coefficients of g(s0 + t) in t up to `order`.
    fn s_series(&self, s0: f64, order: usize) -> Series;

    fn value(&self, r: f64) -> f64 {
        self.s_series(r * r, 0).value()
    }
}

type SeriesFn = dyn Fn(&Series) -> Series + Send + Sync;

/// Profile defined by a function acting on the series of s.
#[derive(Clone)]
pub struct FnProfile {
    name: String,
    f: Arc<SeriesFn>,
}

impl FnProfile {
    pub fn new(name: impl Into<String>, f: impl Fn(&Series) -> Series + Send + Sync + 'static) -> Self {
        FnProfile { name: name.into(), f: Arc::new(f) }
    }

    /// e^{−r²}.
    pub fn gaussian() -> Self {
        FnProfile::new("exp(-r^2)", |s: &Series| s.scale(-1.0).exp())
    }

    pub fn constant(c: f64) -> Self {
        FnProfile::new(format!("{c}"), move |s: &Series| Series::constant(c, s.order()))
    }

    /// Smooth step in s: 1 for s ≤ s_in, 0 for s ≥ s_out.
    pub fn smooth_step(s_in: f64, s_out: f64) -> Self {
        FnProfile::new(format!("step[{s_in},{s_out}]"), move |s: &Series| {
            let a = flat_exp(&(&Series::constant(s_out, s.order()) - s));
            let b = flat_exp(&s.add_const(-s_in));
            let denom = &a + &b;
            &a * &denom.recip()
        })
    }

    /// e^{−r²} × smooth step, compactly supported in r ≤ sqrt(s_out).
    pub fn gaussian_bump(s_in: f64, s_out: f64) -> Self {
        let step = FnProfile::smooth_step(s_in, s_out);
        FnProfile::new(format!("exp(-r^2)*step[{s_in},{s_out}]"), move |s: &Series| {
            &s.scale(-1.0).exp() * &(step.f)(s)
        })
    }
}

/// x ↦ exp(−1/x) for x > 0, 0 otherwise.
fn flat_exp(x: &Series) -> Series {
    if x.value() > 0.0 {
        x.recip().scale(-1.0).exp()
    } else {
        Series::zero(x.order())
    }
}

impl fmt::Debug for FnProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnProfile({})", self.name)
    }
}

impl RadialProfile for FnProfile {
    fn s_series(&self, s0: f64, order: usize) -> Series {
        (self.f)(&Series::variable(s0, order))
    }
}

/// Sum of terms `coeff · r^a · (μ² + β r²)^{−b}` times a common positive radical.
///
/// Coefficients live in Q[β]/(β^K − ρ) where β = ρ^{1/K}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormRadial {
    base: Option<(Q, Radical)>,
    prefactor: Radical,
    terms: BTreeMap<(Q, Q), QExt>,
}

/// Exact value of a closed-form expression: `prefactor × Σ c_j β^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactValue {
    pub prefactor: Radical,
    pub beta: Radical,
    pub value: QExt,
}

impl ExactValue {
    pub fn to_f64(&self) -> f64 {
        self.prefactor.to_f64() * self.value.to_f64(&self.beta)
    }

    pub fn as_rational(&self) -> Option<Q> {
        let p = self.prefactor.as_rational()?;
        Some(p * self.value.as_rational()?)
    }
}

/// Δ₀^{j/2}u: a scalar for even j, the radial derivative of Δ₀^{(j−1)/2}u for odd j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfPower {
    Scalar(ClosedFormRadial),
    Gradient(ClosedFormRadial),
}

impl ClosedFormRadial {
    pub fn zero() -> Self {
        ClosedFormRadial { base: None, prefactor: Radical::one(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Self {
        ClosedFormRadial::power(c, Q::zero())
    }

    /// c · r^a.
    pub fn power(c: Q, a: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, Q::zero()), QExt::from_q(c, 1));
        }
        ClosedFormRadial { base: None, prefactor: Radical::one(), terms }
    }

    /// prefactor · c · r^a · (μ² + β r²)^{−b}.
    pub fn member(prefactor: Radical, c: Q, a: Q, mu: Q, beta: Radical, b: Q) -> Result<Self> {
        if !mu.is_positive() {
            return Err(Error::InvalidArgument("family base requires μ > 0".into()));
        }
        let kk = beta.index();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), QExt::from_q(c, kk));
        }
        let mut out = ClosedFormRadial { base: Some((mu, beta)), prefactor, terms };
        out.fold_prefactor();
        Ok(out)
    }

    fn k(&self) -> u32 {
        self.base.as_ref().map_or(1, |(_, b)| b.index())
    }

    pub fn beta(&self) -> Radical {
        self.base.as_ref().map_or_else(Radical::one, |(_, b)| b.clone())
    }

    pub fn prefactor(&self) -> &Radical {
        &self.prefactor
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// (a, b) exponent pairs of the nonzero terms.
    pub fn exponents(&self) -> Vec<(Q, Q)> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn fold_prefactor(&mut self) {
        if let Some(p) = self.prefactor.as_rational().cloned() {
            if !p.is_one() {
                for v in self.terms.values_mut() {
                    *v = v.scale(&p);
                }
                self.prefactor = Radical::one();
            }
        }
    }

    fn prune(mut self) -> Self {
        self.terms.retain(|_, v| !v.is_zero());
        if self.terms.keys().all(|(_, b)| b.is_zero()) && self.k() == 1 {
            self.base = None;
        }
        self
    }

    fn lift(&self, kk: u32) -> BTreeMap<(Q, Q), QExt> {
        self.terms
            .iter()
            .map(|(key, v)| {
                let mut c = v.coeffs.clone();
                c.resize(kk as usize, Q::zero());
                (key.clone(), QExt { coeffs: c })
            })
            .collect()
    }

    fn join_base(&self, o: &Self) -> Result<Option<(Q, Radical)>> {
        match (&self.base, &o.base) {
            (Some(a), Some(b)) if a != b => Err(Error::OutsideFamily(format!(
                "incompatible bases μ²+βr²: ({}, {}) vs ({}, {})",
                a.0, a.1, b.0, b.1
            ))),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.prefactor != o.prefactor {
            return Err(Error::OutsideFamily(format!(
                "sum of terms with prefactors {} and {}",
                self.prefactor, o.prefactor
            )));
        }
        let base = self.join_base(o)?;
        let kk = base.as_ref().map_or(1, |(_, b)| b.index());
        let mut terms = self.lift(kk);
        for (key, v) in o.lift(kk) {
            let e = terms.entry(key).or_insert_with(|| QExt::zero(kk));
            *e = e.add(&v);
        }
        Ok(ClosedFormRadial { base, prefactor: self.prefactor.clone(), terms }.prune())
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.scale(s);
        }
        out.prune()
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let base = self.join_base(o)?;
        let beta = base.as_ref().map_or_else(Radical::one, |(_, b)| b.clone());
        let kk = beta.index();
        let (lhs, rhs) = (self.lift(kk), o.lift(kk));
        let mut terms: BTreeMap<(Q, Q), QExt> = BTreeMap::new();
        for ((a1, b1), c1) in &lhs {
            for ((a2, b2), c2) in &rhs {
                let e = terms.entry((a1 + a2, b1 + b2)).or_insert_with(|| QExt::zero(kk));
                *e = e.add(&c1.mul(c2, &beta));
            }
        }
        let mut out = ClosedFormRadial { base, prefactor: self.prefactor.mul(&o.prefactor), terms };
        out.fold_prefactor();
        Ok(out.prune())
    }

    /// Real power of a single-term expression with a positive rational coefficient.
    pub fn powr(&self, e: &Q) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::OutsideFamily(format!(
                "rational power of a {}-term sum",
                self.terms.len()
            )));
        }
        let ((a, b), c) = self.terms.iter().next().unwrap();
        let c = c
            .as_rational()
            .filter(|c| c.is_positive())
            .ok_or_else(|| Error::OutsideFamily("power of a term with non-rational or negative coefficient".into()))?;
        let prefactor = self.prefactor.pow(e).mul(&Radical::rational(c.clone()).pow(e));
        let kk = self.k();
        let mut terms = BTreeMap::new();
        terms.insert((a * e, b * e), QExt::from_q(Q::one(), kk));
        let mut out = ClosedFormRadial { base: self.base.clone(), prefactor, terms };
        out.fold_prefactor();
        Ok(out.prune())
    }

    pub fn deriv(&self) -> Self {
        let beta = self.beta();
        let kk = self.k();
        let mut terms: BTreeMap<(Q, Q), QExt> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            if !a.is_zero() {
                let e = terms.entry((a - q(1), b.clone())).or_insert_with(|| QExt::zero(kk));
                *e = e.add(&c.scale(a));
            }
            if !b.is_zero() {
                let e = terms.entry((a + q(1), b + q(1))).or_insert_with(|| QExt::zero(kk));
                *e = e.add(&c.mul_beta(&beta).scale(&(b * q(-2))));
            }
        }
        ClosedFormRadial { base: self.base.clone(), prefactor: self.prefactor.clone(), terms }.prune()
    }

    /// Multiply by r^e.
    pub fn shift(&self, e: &Q) -> Self {
        let terms = self.terms.iter().map(|((a, b), c)| ((a + e, b.clone()), c.clone())).collect();
        ClosedFormRadial { base: self.base.clone(), prefactor: self.prefactor.clone(), terms }
    }

    /// Δ₀ = −(∂_r² + (n−1)/r ∂_r).
    pub fn laplacian(&self, dim: Dimension) -> Self {
        let d1 = self.deriv();
        let d2 = d1.deriv();
        let lower = d1.shift(&q(-1)).scale(&q(dim.n() as i64 - 1));
        d2.add(&lower).expect("derivatives share base and prefactor").neg()
    }

    /// Rewrite every r^{2j} w^{−b} (j ≥ 0 integer, b ≠ 0) through r² = (w − μ²)/β,
    /// so that terms sharing a power of w combine exactly.
    pub fn collect_base(&self) -> Self {
        let Some((mu, beta)) = self.base.clone() else {
            return self.clone();
        };
        let kk = beta.index();
        let mut beta_inv = QExt::zero(kk);
        beta_inv.coeffs[kk as usize - 1] = beta.radicand().recip();
        if kk == 1 {
            beta_inv.coeffs[0] = beta.radicand().recip();
        }
        let neg_mu2 = -(&mu * &mu);
        let mut terms: BTreeMap<(Q, Q), QExt> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let half = a / q(2);
            let j = if !b.is_zero() && half.is_integer() && !half.is_negative() {
                half.to_integer().to_u32()
            } else {
                None
            };
            let Some(j) = j else {
                let e = terms.entry((a.clone(), b.clone())).or_insert_with(|| QExt::zero(kk));
                *e = e.add(c);
                continue;
            };
            let mut scaled = c.clone();
            for _ in 0..j {
                scaled = scaled.mul(&beta_inv, &beta);
            }
            let mut binom = Q::one();
            for i in 0..=j {
                // C(j, i) (−μ²)^{j−i} w^{i}
                let coef = &binom * qpow(&neg_mu2, (j - i) as i64);
                let e = terms.entry((Q::zero(), b - q(i as i64))).or_insert_with(|| QExt::zero(kk));
                *e = e.add(&scaled.scale(&coef));
                binom = binom * q((j - i) as i64) / q(i as i64 + 1);
            }
        }
        ClosedFormRadial { base: self.base.clone(), prefactor: self.prefactor.clone(), terms }.prune()
    }

    pub fn eval(&self, r: f64) -> f64 {
        let beta = self.beta();
        let bf = beta.to_f64();
        let mu2 = self.base.as_ref().map_or(0.0, |(mu, _)| to_f64(&(mu * mu)));
        let w = mu2 + bf * r * r;
        let sum: f64 = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let ra = if a.is_zero() { 1.0 } else { r.powf(to_f64(a)) };
                let wb = if b.is_zero() { 1.0 } else { w.powf(-to_f64(b)) };
                c.to_f64(&beta) * ra * wb
            })
            .sum();
        self.prefactor.to_f64() * sum
    }

    /// Exact value at r = 0; fails for terms singular at the origin.
    pub fn value_at_zero(&self) -> Result<ExactValue> {
        let beta = self.beta();
        let kk = self.k();
        let mut acc = QExt::zero(kk);
        for ((a, b), c) in &self.terms {
            if a.is_negative() {
                return Err(Error::OutsideFamily(format!("term r^{a} is singular at 0")));
            }
            if !a.is_zero() {
                continue;
            }
            if b.is_zero() {
                acc = acc.add(c);
                continue;
            }
            let mu = &self.base.as_ref().expect("term with b != 0 has a base").0;
            let two_b = b * q(2);
            if !two_b.is_integer() {
                return Err(Error::OutsideFamily(format!("μ^(-2·{b}) is not rational")));
            }
            let e = two_b.to_integer().to_i64().unwrap();
            acc = acc.add(&c.scale(&qpow(mu, -e)));
        }
        Ok(ExactValue { prefactor: self.prefactor.clone(), beta, value: acc })
    }
}

impl fmt::Display for ClosedFormRadial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if !self.prefactor.as_rational().is_some_and(|p| p.is_one()) {
            write!(f, "{} * (", self.prefactor)?;
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{:?} r^{a}", c.coeffs.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
            if !b.is_zero() {
                write!(f, " w^-{b}")?;
            }
        }
        if !self.prefactor.as_rational().is_some_and(|p| p.is_one()) {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl RadialProfile for ClosedFormRadial {
    fn s_series(&self, s0: f64, order: usize) -> Series {
        let beta = self.beta();
        let bf = beta.to_f64();
        let mu2 = self.base.as_ref().map_or(0.0, |(mu, _)| to_f64(&(mu * mu)));
        let s = Series::variable(s0, order);
        let w = s.scale(bf).add_const(mu2);
        let mut acc = Series::zero(order);
        for ((a, b), c) in &self.terms {
            let half_a = a / q(2);
            let sa = if half_a.is_zero() {
                Series::constant(1.0, order)
            } else if s0 == 0.0 {
                match half_a.to_integer().to_u32() {
                    Some(e) if half_a.is_integer() => s.powi(e),
                    _ => Series::constant(f64::NAN, order),
                }
            } else {
                s.powf(to_f64(&half_a))
            };
            let term = if b.is_zero() { sa } else { &sa * &w.powf(-to_f64(b)) };
            acc = &acc + &term.scale(c.to_f64(&beta));
        }
        acc.scale(self.prefactor.to_f64())
    }

    fn value(&self, r: f64) -> f64 {
        self.eval(r)
    }
}

/// Δ₀ʲu, exactly.
pub fn iterate_polyharmonic(u: &ClosedFormRadial, j: u32, dim: Dimension) -> ClosedFormRadial {
    (0..j).fold(u.clone(), |acc, _| acc.laplacian(dim))
}

/// Δ₀^{j/2}u in the half-power convention.
pub fn half_power(u: &ClosedFormRadial, j: u32, dim: Dimension) -> HalfPower {
    let base = iterate_polyharmonic(u, j / 2, dim);
    if j % 2 == 0 {
        HalfPower::Scalar(base)
    } else {
        HalfPower::Gradient(base.deriv())
    }
}

/// (n − 2k)/2 · u + r u′.
pub fn dilation_action(u: &ClosedFormRadial, dim: Dimension) -> ClosedFormRadial {
    u.scale(&dim.half_gap())
        .add(&u.deriv().shift(&q(1)))
        .expect("a function and its derivative share base and prefactor")
}
