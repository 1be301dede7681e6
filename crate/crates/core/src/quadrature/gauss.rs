use nalgebra::{DMatrix, SymmetricEigen};
use std::f64::consts::PI;

/// Γ(m/2) for a positive integer m.
pub fn gamma_half(m: u32) -> f64 {
    assert!(m >= 1);
    let (mut x, mut g) = if m % 2 == 0 { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    while 2.0 * x < m as f64 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Area of the unit sphere S^{n−1} ⊂ R^n, n ≥ 1.
pub fn unit_sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n as u32)
}

/// Orthonormal polynomials for the weight (1 − t²)^a on [−1, 1], with 2a ∈ Z, a ≥ −1/2.
#[derive(Clone, Debug)]
pub struct GegenbauerBasis {
    a: f64,
    sqrt_beta: Vec<f64>,
    p0: f64,
}

impl GegenbauerBasis {
    pub fn new(a: f64, degree: usize) -> Self {
        let twice = 2.0 * a;
        assert!(twice.fract() == 0.0 && twice >= -1.0, "weight exponent must be a half-integer >= -1/2");
        let mu0 = PI.sqrt() * gamma_half((2.0 * a + 2.0) as u32) / gamma_half((2.0 * a + 3.0) as u32);
        let sqrt_beta = (0..=degree + 1)
            .map(|j| {
                if j == 0 {
                    return 0.0;
                }
                let j = j as f64;
                if j == 1.0 && a == -0.5 {
                    return 0.5f64.sqrt();
                }
                (j * (j + 2.0 * a) / ((2.0 * j + 2.0 * a + 1.0) * (2.0 * j + 2.0 * a - 1.0))).sqrt()
            })
            .collect();
        GegenbauerBasis { a, sqrt_beta, p0: mu0.sqrt().recip() }
    }

    pub fn weight_exponent(&self) -> f64 {
        self.a
    }

    /// Total mass ∫(1 − t²)^a dt.
    pub fn mass(&self) -> f64 {
        self.p0.powi(-2)
    }

    pub fn degree(&self) -> usize {
        self.sqrt_beta.len() - 2
    }

    /// Values p_0(t), …, p_{out.len()−1}(t).
    pub fn eval(&self, t: f64, out: &mut [f64]) {
        let mut prev = 0.0;
        let mut cur = self.p0;
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = cur;
            let next = (t * cur - self.sqrt_beta[j] * prev) / self.sqrt_beta[j + 1];
            prev = cur;
            cur = next;
        }
    }

    /// Values and first derivatives.
    pub fn eval_deriv(&self, t: f64, vals: &mut [f64], ders: &mut [f64]) {
        let (mut prev, mut cur) = (0.0, self.p0);
        let (mut dprev, mut dcur) = (0.0, 0.0);
        for j in 0..vals.len() {
            vals[j] = cur;
            ders[j] = dcur;
            let next = (t * cur - self.sqrt_beta[j] * prev) / self.sqrt_beta[j + 1];
            let dnext = (cur + t * dcur - self.sqrt_beta[j] * dprev) / self.sqrt_beta[j + 1];
            prev = cur;
            cur = next;
            dprev = dcur;
            dcur = dnext;
        }
    }
}

/// Gauss rule with `m` nodes for the weight (1 − t²)^a; ascending nodes.
pub fn gauss_gegenbauer(m: usize, a: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let basis = GegenbauerBasis::new(a, m);
    let mut jac = DMatrix::<f64>::zeros(m, m);
    for j in 1..m {
        jac[(j - 1, j)] = basis.sqrt_beta[j];
        jac[(j, j - 1)] = basis.sqrt_beta[j];
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    let mut vals = vec![0.0; m + 1];
    let mut ders = vec![0.0; m + 1];
    for t in nodes.iter_mut() {
        for _ in 0..3 {
            basis.eval_deriv(*t, &mut vals, &mut ders);
            let step = vals[m] / ders[m];
            if step.is_finite() {
                *t -= step;
            }
        }
    }
    let weights = nodes
        .iter()
        .map(|&t| {
            basis.eval(t, &mut vals[..m]);
            1.0 / vals[..m].iter().map(|v| v * v).sum::<f64>()
        })
        .collect();
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_values() {
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-14);
        assert_eq!(gamma_half(8), 6.0);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
        assert_eq!(unit_sphere_area(1), 2.0);
    }

    #[test]
    fn legendre_rule_matches_moments() {
        let (x, w) = gauss_gegenbauer(10, 0.0);
        for d in 0..20 {
            let s: f64 = x.iter().zip(&w).map(|(t, w)| w * t.powi(d)).sum();
            let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
            assert!((s - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn gegenbauer_rule_integrates_weight() {
        for twice_a in [-1i32, 0, 1, 2, 3, 5] {
            let a = twice_a as f64 / 2.0;
            let basis = GegenbauerBasis::new(a, 4);
            let (x, w) = gauss_gegenbauer(40, a);
            let mass: f64 = w.iter().sum();
            assert!((mass - basis.mass()).abs() < 1e-13 * mass);
            // t² moment: mass / (2a + 3)
            let m2: f64 = x.iter().zip(&w).map(|(t, w)| w * t * t).sum();
            assert!((m2 - basis.mass() / (2.0 * a + 3.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn basis_is_orthonormal() {
        let a = 1.5;
        let basis = GegenbauerBasis::new(a, 30);
        let (x, w) = gauss_gegenbauer(40, a);
        let mut v = vec![0.0; 31];
        let mut gram = vec![vec![0.0; 31]; 31];
        for (t, wt) in x.iter().zip(&w) {
            basis.eval(*t, &mut v);
            for i in 0..31 {
                for j in 0..31 {
                    gram[i][j] += wt * v[i] * v[j];
                }
            }
        }
        for i in 0..31 {
            for j in 0..31 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i][j] - e).abs() < 1e-12);
            }
        }
    }
}
