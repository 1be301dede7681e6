use super::gauss::{gauss_gegenbauer, unit_sphere_area};
use std::f64::consts::PI;

/// Nodes and positive weights on the unit sphere S^{n−1} ⊂ R^n.
#[derive(Clone, Debug)]
pub struct SphericalQuadrature {
    pub n: usize,
    pub degree: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub axisymmetric: bool,
}

fn product_rule(n: usize, degree: usize) -> Vec<(Vec<f64>, f64)> {
    match n {
        1 => vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
        2 => {
            let m = degree + 1;
            (0..m)
                .map(|j| {
                    let th = 2.0 * PI * j as f64 / m as f64;
                    (vec![th.cos(), th.sin()], 2.0 * PI / m as f64)
                })
                .collect()
        }
        _ => {
            let m = degree / 2 + 1;
            let (ts, ws) = gauss_gegenbauer(m, (n as f64 - 3.0) / 2.0);
            let sub = product_rule(n - 1, degree);
            let mut out = Vec::with_capacity(ts.len() * sub.len());
            for (t, w) in ts.iter().zip(&ws) {
                let s = (1.0 - t * t).max(0.0).sqrt();
                for (y, v) in &sub {
                    let mut x = Vec::with_capacity(n);
                    x.push(*t);
                    x.extend(y.iter().map(|c| s * c));
                    out.push((x, w * v));
                }
            }
            out
        }
    }
}

impl SphericalQuadrature {
    /// Product rule exact for polynomials of total degree ≤ `degree`.
    pub fn full(n: usize, degree: usize) -> Self {
        assert!(n >= 2);
        let (nodes, weights) = product_rule(n, degree).into_iter().unzip();
        SphericalQuadrature { n, degree, nodes, weights, axisymmetric: false }
    }

    /// Rule for integrands depending only on x₁: Gauss–Gegenbauer nodes on a
    /// meridian, weights carrying the area of the orthogonal (n−2)-sphere.
    pub fn axisymmetric(n: usize, degree: usize) -> Self {
        assert!(n >= 3);
        let m = degree / 2 + 1;
        let (ts, ws) = gauss_gegenbauer(m, (n as f64 - 3.0) / 2.0);
        let area = unit_sphere_area(n - 1);
        let nodes = ts
            .iter()
            .map(|&t| {
                let mut x = vec![0.0; n];
                x[0] = t;
                x[1] = (1.0 - t * t).max(0.0).sqrt();
                x
            })
            .collect();
        let weights = ws.iter().map(|w| w * area).collect();
        SphericalQuadrature { n, degree, nodes, weights, axisymmetric: true }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }
}
