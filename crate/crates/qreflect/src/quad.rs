//! Gaussian quadrature rules and adaptive integration.
//!
//! Provides Gauss-Legendre rules (nodes by Newton iteration on the Legendre
//! recurrence) for finite panels, Gauss-Laguerre rules matched to an e^(-u)
//! weight for exponential tails, and a bisection-adaptive integrator that
//! estimates panel errors by comparing two rule orders.

use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev-based initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut pp = 0.0;
            for _ in 0..100 {
                let (p, dp) = legendre_and_derivative(n, x);
                pp = dp;
                let dx = -p / dp;
                x += dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * pp * pp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        sum * half
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Laguerre rule for integrals of the form ∫₀^∞ e^(-u) g(u) du.
#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        let mut z = 0.0;
        for i in 0..n {
            if i == 0 {
                z = 3.0 / (1.0 + 2.4 * nf);
            } else if i == 1 {
                z += 15.0 / (1.0 + 2.5 * nf);
            } else {
                let ai = (i - 1) as f64;
                z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2]);
            }
            let mut pp = 0.0;
            let mut p2 = 0.0;
            for _ in 0..120 {
                let mut p0 = 1.0;
                let mut p1 = 1.0 - z;
                for j in 2..=n {
                    let jf = j as f64;
                    let p = ((2.0 * jf - 1.0 - z) * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p;
                }
                pp = nf * (p1 - p0) / z;
                p2 = p0;
                let dz = -p1 / pp;
                z += dz;
                if dz.abs() < 1e-15 * z.max(1.0) {
                    break;
                }
            }
            nodes[i] = z;
            weights[i] = -1.0 / (pp * nf * p2);
        }
        GaussLaguerre { nodes, weights }
    }

    /// ∫₀^∞ e^(-u) g(u) du.
    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&u, &w)| w * g(u))
            .sum()
    }
}

fn laguerre_rules() -> &'static [GaussLaguerre] {
    static RULES: OnceLock<Vec<GaussLaguerre>> = OnceLock::new();
    RULES.get_or_init(|| [16, 32, 64, 128].map(GaussLaguerre::new).to_vec())
}

/// Exponential-tail integral with order doubling until two successive
/// Laguerre rules agree. Returns the value and the last difference.
pub fn laguerre_adaptive<F: Fn(f64) -> f64>(g: F, rel_tol: f64, abs_floor: f64) -> (f64, f64) {
    let rules = laguerre_rules();
    let mut prev = rules[0].integrate(&g);
    let mut best = prev;
    let mut err = f64::INFINITY;
    for rule in &rules[1..] {
        best = rule.integrate(&g);
        err = (best - prev).abs();
        if err <= rel_tol * best.abs() + abs_floor {
            return (best, err);
        }
        prev = best;
    }
    (best, err)
}

fn panel_rules() -> (&'static GaussLegendre, &'static GaussLegendre) {
    static LO: OnceLock<GaussLegendre> = OnceLock::new();
    static HI: OnceLock<GaussLegendre> = OnceLock::new();
    (
        LO.get_or_init(|| GaussLegendre::new(10)),
        HI.get_or_init(|| GaussLegendre::new(21)),
    )
}

/// Adaptive integration of `f` on [a, b] by panel bisection.
///
/// A panel is accepted when the 10- and 21-point Gauss estimates agree within
/// its share of the budget `rel_tol·|I| + abs_floor`. Returns the value and
/// the accumulated error estimate.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
) -> Result<(f64, f64)> {
    let (lo, hi) = panel_rules();
    let total_len = b - a;
    if !(total_len > 0.0) {
        return Err(Error::domain("adaptive quadrature", "empty interval"));
    }
    let rough = hi.integrate(a, b, &f).abs();
    let budget = |len: f64, scale: f64| (rel_tol * scale + abs_floor) * (len / total_len);

    let mut stack = vec![(a, b, 0u32)];
    let mut total = 0.0f64;
    let mut err_sum = 0.0f64;
    let mut scale = rough.max(abs_floor);
    const MAX_DEPTH: u32 = 48;
    const MAX_PANELS: usize = 200_000;
    let mut panels = 0usize;

    while let Some((x0, x1, depth)) = stack.pop() {
        panels += 1;
        if panels > MAX_PANELS {
            return Err(Error::Numerical {
                context: "adaptive quadrature",
                requested: rel_tol,
                achieved: err_sum / scale.max(f64::MIN_POSITIVE),
            });
        }
        let coarse = lo.integrate(x0, x1, &f);
        let fine = hi.integrate(x0, x1, &f);
        let e = (fine - coarse).abs();
        scale = scale.max(total.abs() + fine.abs());
        if e <= budget(x1 - x0, scale) || depth >= MAX_DEPTH {
            total += fine;
            err_sum += e;
        } else {
            let mid = 0.5 * (x0 + x1);
            stack.push((x0, mid, depth + 1));
            stack.push((mid, x1, depth + 1));
        }
    }
    Ok((total, err_sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        // degree 15 is the highest exact degree for n = 8
        let val = rule.integrate(-1.0, 1.0, |x| x.powi(14));
        assert_relative_eq!(val, 2.0 / 15.0, max_relative = 1e-13);
        let shifted = rule.integrate(0.0, 2.0, |x| 3.0 * x * x);
        assert_relative_eq!(shifted, 8.0, max_relative = 1e-13);
    }

    #[test]
    fn legendre_weights_sum_to_interval() {
        for n in [2, 5, 10, 21, 40] {
            let rule = GaussLegendre::new(n);
            let s: f64 = rule.weights.iter().sum();
            assert_relative_eq!(s, 2.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn laguerre_moments_are_factorials() {
        let rule = GaussLaguerre::new(24);
        let mut factorial = 1.0;
        for k in 0..20u32 {
            if k > 0 {
                factorial *= k as f64;
            }
            let val = rule.integrate(|u| u.powi(k as i32));
            assert_relative_eq!(val, factorial, max_relative = 1e-11);
        }
    }

    #[test]
    fn laguerre_high_order_is_stable() {
        let rule = GaussLaguerre::new(128);
        let s = rule.integrate(|_| 1.0);
        assert_relative_eq!(s, 1.0, max_relative = 1e-10);
        let g = rule.integrate(|u| (-u).exp());
        assert_relative_eq!(g, 0.5, max_relative = 1e-10);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // ∫_0^1 1/sqrt(x) dx = 2 (integrable endpoint behavior)
        let (v, _) = adaptive(|x: f64| 1.0 / x.max(1e-300).sqrt(), 1e-12, 1.0, 1e-9, 0.0).unwrap();
        assert_relative_eq!(v, 2.0 - 2e-6, max_relative = 1e-4);
        // a narrow Gaussian against an analytic value
        let (v, e) = adaptive(
            |x: f64| (-(x - 0.3) * (x - 0.3) / 1e-4).exp(),
            0.0,
            1.0,
            1e-10,
            0.0,
        )
        .unwrap();
        let exact = 0.01 * PI.sqrt();
        assert!(e < 1e-8 * exact.abs() + 1e-16);
        assert_relative_eq!(v, exact, max_relative = 1e-9);
    }

    #[test]
    fn adaptive_zero_integrand_is_zero() {
        let (v, e) = adaptive(|_| 0.0, 0.0, 1.0, 1e-9, 1e-30).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(e, 0.0);
    }

    #[test]
    fn laguerre_adaptive_reports_agreement() {
        let (v, err) = laguerre_adaptive(|u| 1.0 / (1.0 + u), 1e-9, 1e-14);
        // ∫_0^∞ e^(-u)/(1+u) du = e·E_1(1) = 0.596347362323194...
        assert_relative_eq!(v, 0.5963473623231940, max_relative = 1e-7);
        assert!(err.is_finite());
    }
}
