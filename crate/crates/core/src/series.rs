//! Truncated Taylor series `Σ c_j t^j` in floating point.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub c: Vec<f64>,
}

impl Series {
    pub fn new(c: Vec<f64>) -> Self {
        assert!(!c.is_empty(), "series needs at least one coefficient");
        Series { c }
    }

    pub fn zero(order: usize) -> Self {
        Series { c: vec![0.0; order + 1] }
    }

    pub fn constant(v: f64, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.c[0] = v;
        s
    }

    /// The expansion variable shifted to `x0`: `x0 + t`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut s = Series::constant(x0, order);
        if order >= 1 {
            s.c[1] = 1.0;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series { c: self.c[..=order.min(self.order())].to_vec() }
    }

    pub fn scale(&self, s: f64) -> Series {
        Series { c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn add_const(&self, v: f64) -> Series {
        let mut out = self.clone();
        out.c[0] += v;
        out
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    pub fn deriv(&self) -> Series {
        if self.c.len() == 1 {
            return Series::zero(0);
        }
        Series { c: (1..self.c.len()).map(|j| j as f64 * self.c[j]).collect() }
    }

    pub fn recip(&self) -> Series {
        let a = &self.c;
        let mut b = vec![0.0; a.len()];
        b[0] = 1.0 / a[0];
        for n in 1..a.len() {
            let s: f64 = (1..=n).map(|j| a[j] * b[n - j]).sum();
            b[n] = -s * b[0];
        }
        Series { c: b }
    }

    pub fn exp(&self) -> Series {
        let a = &self.c;
        let mut b = vec![0.0; a.len()];
        b[0] = a[0].exp();
        for n in 1..a.len() {
            let s: f64 = (1..=n).map(|j| j as f64 * a[j] * b[n - j]).sum();
            b[n] = s / n as f64;
        }
        Series { c: b }
    }

    pub fn ln(&self) -> Series {
        let a = &self.c;
        let mut b = vec![0.0; a.len()];
        b[0] = a[0].ln();
        for n in 1..a.len() {
            let s: f64 = (1..n).map(|j| j as f64 * b[j] * a[n - j]).sum();
            b[n] = (a[n] - s / n as f64) / a[0];
        }
        Series { c: b }
    }

    /// Real power; requires a nonzero constant term.
    pub fn powf(&self, alpha: f64) -> Series {
        let a = &self.c;
        let mut b = vec![0.0; a.len()];
        b[0] = a[0].powf(alpha);
        for n in 1..a.len() {
            let s: f64 = (1..=n)
                .map(|j| ((alpha + 1.0) * j as f64 - n as f64) * a[j] * b[n - j])
                .sum();
            b[n] = s / (n as f64 * a[0]);
        }
        Series { c: b }
    }

    pub fn powi(&self, e: u32) -> Series {
        let mut acc = Series::constant(1.0, self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(t))` where `inner` has zero constant term.
    pub fn compose(&self, inner: &Series) -> Series {
        assert!(inner.c[0] == 0.0, "inner series must vanish at 0");
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Series::constant(*self.c.last().unwrap(), order);
        for cj in self.c.iter().rev().skip(1) {
            acc = (&acc * &inner).add_const(*cj);
        }
        acc.truncate(order)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        let m = self.c.len().min(o.c.len());
        Series { c: (0..m).map(|i| self.c[i] + o.c[i]).collect() }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        let m = self.c.len().min(o.c.len());
        Series { c: (0..m).map(|i| self.c[i] - o.c[i]).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        let m = self.c.len().min(o.c.len());
        let mut c = vec![0.0; m];
        for i in 0..m {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..m - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Series { c }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(-1.0)
    }
}
