//! Exact rationals, real radicals and the ring Q[β]/(β^K − ρ).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Integer power of a rational, negative exponents allowed.
pub fn qpow(x: &Q, e: i64) -> Q {
    let mut acc = Q::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn exact_root(x: &BigInt, d: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(d);
    if num_traits::pow(r.clone(), d as usize) == *x {
        Some(r)
    } else {
        None
    }
}

fn primes_dividing(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// The positive real `radicand^(1/index)`, kept in lowest form so that
/// `β^index − radicand` is irreducible over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radical {
    radicand: Q,
    index: u32,
}

impl Radical {
    pub fn new(radicand: Q, index: u32) -> Self {
        assert!(index >= 1, "radical index must be positive");
        assert!(radicand.is_positive(), "radicand must be positive");
        let mut out = Radical { radicand, index };
        out.normalize();
        out
    }

    pub fn rational(x: Q) -> Self {
        Radical::new(x, 1)
    }

    pub fn one() -> Self {
        Radical::rational(Q::one())
    }

    fn normalize(&mut self) {
        loop {
            let mut reduced = false;
            for p in primes_dividing(self.index) {
                let num = exact_root(self.radicand.numer(), p);
                let den = exact_root(self.radicand.denom(), p);
                if let (Some(a), Some(b)) = (num, den) {
                    self.radicand = Q::new(a, b);
                    self.index /= p;
                    reduced = true;
                    break;
                }
            }
            if !reduced {
                return;
            }
        }
    }

    pub fn radicand(&self) -> &Q {
        &self.radicand
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn as_rational(&self) -> Option<&Q> {
        (self.index == 1).then_some(&self.radicand)
    }

    pub fn to_f64(&self) -> f64 {
        if self.index == 1 {
            return to_f64(&self.radicand);
        }
        let ln = ln_big(self.radicand.numer()) - ln_big(self.radicand.denom());
        (ln / self.index as f64).exp()
    }

    pub fn mul(&self, other: &Radical) -> Radical {
        let l = num_integer::lcm(self.index, other.index);
        let a = qpow(&self.radicand, (l / self.index) as i64);
        let b = qpow(&other.radicand, (l / other.index) as i64);
        Radical::new(a * b, l)
    }

    pub fn recip(&self) -> Radical {
        Radical::new(self.radicand.recip(), self.index)
    }

    /// `self^e` for a rational exponent.
    pub fn pow(&self, e: &Q) -> Radical {
        let s = e.numer().to_i64().expect("exponent numerator fits i64");
        let t = e.denom().to_u32().expect("exponent denominator fits u32");
        Radical::new(qpow(&self.radicand, s), self.index * t)
    }

    /// `self^index`, the radicand, as a power of the radical itself.
    pub fn powi(&self, e: i64) -> Radical {
        self.pow(&q(e))
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 1 {
            write!(f, "{}", self.radicand)
        } else {
            write!(f, "({})^(1/{})", self.radicand, self.index)
        }
    }
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 64;
        let top: BigInt = x >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Element `Σ c_j β^j` (j < K) of Q[β]/(β^K − ρ) for a fixed radical β.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QExt {
    pub coeffs: Vec<Q>,
}

impl QExt {
    pub fn zero(k: u32) -> Self {
        QExt { coeffs: vec![Q::zero(); k as usize] }
    }

    pub fn from_q(x: Q, k: u32) -> Self {
        let mut z = QExt::zero(k);
        z.coeffs[0] = x;
        z
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.coeffs[1..].iter().all(Zero::is_zero).then_some(&self.coeffs[0])
    }

    pub fn add(&self, o: &QExt) -> QExt {
        QExt { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &Q) -> QExt {
        QExt { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, o: &QExt, beta: &Radical) -> QExt {
        let k = self.coeffs.len();
        let mut out = vec![Q::zero(); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                if i + j < k {
                    out[i + j] += prod;
                } else {
                    out[i + j - k] += prod * beta.radicand();
                }
            }
        }
        QExt { coeffs: out }
    }

    /// Multiply by β itself.
    pub fn mul_beta(&self, beta: &Radical) -> QExt {
        let k = self.coeffs.len();
        let mut out = vec![Q::zero(); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i + 1 < k {
                out[i + 1] = a.clone();
            } else {
                out[0] = a * beta.radicand();
            }
        }
        QExt { coeffs: out }
    }

    pub fn to_f64(&self, beta: &Radical) -> f64 {
        let b = beta.to_f64();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * b + to_f64(c);
        }
        acc
    }
}

/// `coeff · π^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMultiple {
    pub coeff: Q,
    pub pi_power: i32,
}

impl PiMultiple {
    pub fn value(&self) -> f64 {
        to_f64(&self.coeff) * std::f64::consts::PI.powi(self.pi_power)
    }

    pub fn recip(&self) -> PiMultiple {
        PiMultiple { coeff: self.coeff.recip(), pi_power: -self.pi_power }
    }

    pub fn mul(&self, o: &PiMultiple) -> PiMultiple {
        PiMultiple { coeff: &self.coeff * &o.coeff, pi_power: self.pi_power + o.pi_power }
    }

    pub fn scale(&self, s: &Q) -> PiMultiple {
        PiMultiple { coeff: &self.coeff * s, pi_power: self.pi_power }
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coeff),
            p => write!(f, "{}·π^{}", self.coeff, p),
        }
    }
}
