//! Composite Gauss-Legendre quadrature.

use num_complex::Complex64;

/// Nodes and weights of the `n`-point rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Chebyshev-like initial guess, then Newton on P_n
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_a^b f` with `panels` equal subintervals.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            let mut s = 0.0;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                s += w * f(mid + 0.5 * h * x);
            }
            total += 0.5 * h * s;
        }
        total
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(&self, mut f: F, a: f64, b: f64, panels: usize) -> Complex64 {
        let h = (b - a) / panels as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            let mut s = Complex64::new(0.0, 0.0);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                s += f(mid + 0.5 * h * x) * *w;
            }
            total += s * (0.5 * h);
        }
        total
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in 1..=20 {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}: {s}");
        }
    }

    #[test]
    fn exact_for_degree_2n_minus_1() {
        let r = GaussLegendre::new(5);
        let v = r.integrate(|x| x.powi(9) + 3.0 * x.powi(4), 0.0, 2.0, 1);
        assert!((v - (1024.0 / 10.0 + 3.0 * 32.0 / 5.0)).abs() < 1e-11);
    }

    #[test]
    fn oscillatory_integral() {
        let r = GaussLegendre::new(16);
        let v = r.integrate_complex(|x| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * 3.0 * x), 0.0, 0.5, 8);
        // int_0^{1/2} e^{-6 pi i x} dx = (1 - e^{-3 pi i}) / (6 pi i) = 2 / (6 pi i)
        let exact = Complex64::new(0.0, -1.0 / (3.0 * std::f64::consts::PI));
        assert!((v - exact).norm() < 1e-14);
    }
}
