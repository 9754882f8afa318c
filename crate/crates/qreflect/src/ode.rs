//! Adaptive Dormand-Prince 5(4) integrator over fixed-size real states.
//!
//! The scattering equations are integrated as a small real system (complex
//! amplitudes split into components), so the stepper is generic over `[f64; N]`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct DormandPrince {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for DormandPrince {
    fn default() -> Self {
        DormandPrince {
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_steps: 50_000_000,
        }
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// 5th-order solution weights (b) and embedded 4th-order weights (b*)
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const BS1: f64 = 5179.0 / 57600.0;
const BS3: f64 = 7571.0 / 16695.0;
const BS4: f64 = 393.0 / 640.0;
const BS5: f64 = -92097.0 / 339200.0;
const BS6: f64 = 187.0 / 2100.0;
const BS7: f64 = 1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])], h: f64) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

impl DormandPrince {
    /// Integrate y' = f(x, y) from `x0` to `x1` (requires x1 > x0).
    pub fn integrate<const N: usize, F>(
        &self,
        f: F,
        x0: f64,
        x1: f64,
        y0: [f64; N],
    ) -> Result<[f64; N]>
    where
        F: Fn(f64, &[f64; N]) -> [f64; N],
    {
        if !(x1 > x0) {
            return Err(Error::domain("ode integration", "x1 must exceed x0"));
        }
        let mut x = x0;
        let mut y = y0;
        let mut k1 = f(x, &y);

        // initial step from the first derivative magnitude
        let scale0: f64 = (0..N)
            .map(|i| (k1[i] / (self.abs_tol + self.rel_tol * y[i].abs())).abs())
            .fold(0.0, f64::max);
        let mut h = ((x1 - x0) * 1e-6).min(0.1 / scale0.max(1e-30));
        h = h.max((x1 - x0) * 1e-14);

        let mut steps = 0usize;
        while x < x1 {
            steps += 1;
            if steps > self.max_steps {
                return Err(Error::Numerical {
                    context: "ode integration (step budget)",
                    requested: self.rel_tol,
                    achieved: f64::NAN,
                });
            }
            if x + h > x1 {
                h = x1 - x;
            }

            let k2 = f(x + A21 * h, &axpy(&y, &[(A21, &k1)], h));
            let k3 = f(x + 0.3 * h, &axpy(&y, &[(A31, &k1), (A32, &k2)], h));
            let k4 = f(x + 0.8 * h, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
            let k5 = f(
                x + 8.0 / 9.0 * h,
                &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
            );
            let k6 = f(
                x + h,
                &axpy(
                    &y,
                    &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                    h,
                ),
            );
            let y5 = axpy(
                &y,
                &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
                h,
            );
            let k7 = f(x + h, &y5);
            let y4 = axpy(
                &y,
                &[
                    (BS1, &k1),
                    (BS3, &k3),
                    (BS4, &k4),
                    (BS5, &k5),
                    (BS6, &k6),
                    (BS7, &k7),
                ],
                h,
            );

            let mut err_sq = 0.0;
            for i in 0..N {
                let sc = self.abs_tol + self.rel_tol * y[i].abs().max(y5[i].abs());
                let e = (y5[i] - y4[i]) / sc;
                err_sq += e * e;
            }
            let err = (err_sq / N as f64).sqrt();

            if err <= 1.0 || h <= (x1 - x0) * 1e-13 {
                x += h;
                y = y5;
                k1 = k7; // FSAL
            }
            let factor = if err > 0.0 {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            } else {
                5.0
            };
            h *= factor;
        }
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_decay() {
        let dp = DormandPrince::default();
        let y = dp
            .integrate(|_, y: &[f64; 1]| [-y[0]], 0.0, 3.0, [1.0])
            .unwrap();
        assert_relative_eq!(y[0], (-3.0f64).exp(), max_relative = 1e-9);
    }

    #[test]
    fn harmonic_oscillator_phase() {
        let dp = DormandPrince {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            ..Default::default()
        };
        let w = 2.5;
        let y = dp
            .integrate(
                |_, y: &[f64; 2]| [y[1], -w * w * y[0]],
                0.0,
                20.0,
                [1.0, 0.0],
            )
            .unwrap();
        assert_relative_eq!(y[0], (w * 20.0f64).cos(), epsilon = 1e-8);
        assert_relative_eq!(y[1], -w * (w * 20.0f64).sin(), epsilon = 2e-8 * w);
    }

    #[test]
    fn tighter_tolerance_reduces_error() {
        let run = |rtol: f64| {
            let dp = DormandPrince {
                rel_tol: rtol,
                abs_tol: rtol * 1e-2,
                ..Default::default()
            };
            let y = dp
                .integrate(|x, y: &[f64; 1]| [x.cos() * y[0]], 0.0, 10.0, [1.0])
                .unwrap();
            (y[0] - (10.0f64.sin()).exp()).abs()
        };
        assert!(run(1e-11) < run(1e-6));
    }
}
