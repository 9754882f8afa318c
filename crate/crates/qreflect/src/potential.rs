//! Potential models seen by the scattering solver.
//!
//! Everything is expressed through [`PotentialModel`]: tabulated
//! Casimir-Polder potentials, pure power-law tails for oracle problems, and
//! piecewise-constant wells whose jumps the solver handles analytically.
//! V(z) is in neV, z in nm; derivatives are analytic so that the badlands
//! function (a delicate combination of F′ and F″) is free of differencing
//! noise.

use crate::error::{Error, Result};

pub trait PotentialModel: Sync {
    fn v(&self, z: f64) -> f64;
    fn dv(&self, z: f64) -> f64;
    fn d2v(&self, z: f64) -> f64;
    /// Positions where V jumps; the scattering solver matches the
    /// wavefunction across them instead of integrating through.
    fn discontinuities(&self) -> &[f64] {
        &[]
    }
    fn label(&self) -> String;
}

/// V(z) = 0; the free problem.
#[derive(Debug, Clone, Copy)]
pub struct ZeroPotential;

impl PotentialModel for ZeroPotential {
    fn v(&self, _z: f64) -> f64 {
        0.0
    }
    fn dv(&self, _z: f64) -> f64 {
        0.0
    }
    fn d2v(&self, _z: f64) -> f64 {
        0.0
    }
    fn label(&self) -> String {
        "zero".to_string()
    }
}

/// Attractive homogeneous tail V(z) = −C/zⁿ.
#[derive(Debug, Clone, Copy)]
pub struct PurePowerLaw {
    pub coefficient: f64,
    pub power: i32,
}

impl PurePowerLaw {
    /// The retarded-tail model −C₄/z⁴.
    pub fn quartic(c4: f64) -> Self {
        PurePowerLaw {
            coefficient: c4,
            power: 4,
        }
    }
}

impl PotentialModel for PurePowerLaw {
    fn v(&self, z: f64) -> f64 {
        -self.coefficient * z.powi(-self.power)
    }
    fn dv(&self, z: f64) -> f64 {
        let n = self.power as f64;
        n * self.coefficient * z.powi(-self.power - 1)
    }
    fn d2v(&self, z: f64) -> f64 {
        let n = self.power as f64;
        -n * (n + 1.0) * self.coefficient * z.powi(-self.power - 2)
    }
    fn label(&self) -> String {
        format!("-C/z^{}", self.power)
    }
}

/// Attractive steps: V = −depths[i] on (boundaries[i-1], boundaries[i]),
/// zero beyond the last boundary.
#[derive(Debug, Clone)]
pub struct PiecewiseConstant {
    boundaries: Vec<f64>,
    depths: Vec<f64>,
}

impl PiecewiseConstant {
    pub fn new(boundaries: Vec<f64>, depths: Vec<f64>) -> Result<Self> {
        if boundaries.is_empty() || boundaries.len() != depths.len() {
            return Err(Error::domain(
                "piecewise potential",
                "need one depth per boundary",
            ));
        }
        if boundaries.windows(2).any(|w| w[0] >= w[1]) || boundaries[0] <= 0.0 {
            return Err(Error::domain(
                "piecewise potential",
                "boundaries must be positive and increasing",
            ));
        }
        if depths.iter().any(|&d| d < 0.0) {
            return Err(Error::domain(
                "piecewise potential",
                "depths must be non-negative (attractive well)",
            ));
        }
        Ok(PiecewiseConstant { boundaries, depths })
    }

    /// A single attractive layer of depth `v0` out to `width`.
    pub fn square_well(width: f64, v0: f64) -> Result<Self> {
        Self::new(vec![width], vec![v0])
    }
}

impl PotentialModel for PiecewiseConstant {
    fn v(&self, z: f64) -> f64 {
        let idx = self.boundaries.partition_point(|&b| b <= z);
        if idx == self.depths.len() {
            0.0
        } else {
            -self.depths[idx]
        }
    }
    fn dv(&self, _z: f64) -> f64 {
        0.0
    }
    fn d2v(&self, _z: f64) -> f64 {
        0.0
    }
    fn discontinuities(&self) -> &[f64] {
        &self.boundaries
    }
    fn label(&self) -> String {
        format!("piecewise[{}]", self.boundaries.len())
    }
}

/// Natural cubic spline with clamped end slopes.
#[derive(Debug, Clone)]
struct ClampedSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>, // second derivatives at the knots
}

impl ClampedSpline {
    fn new(x: Vec<f64>, y: Vec<f64>, d0: f64, dn: f64) -> Self {
        let n = x.len();
        assert!(n >= 3 && y.len() == n);
        // tridiagonal system for the knot second derivatives
        let mut a = vec![0.0; n]; // sub
        let mut b = vec![0.0; n]; // diag
        let mut c = vec![0.0; n]; // super
        let mut r = vec![0.0; n];
        let h0 = x[1] - x[0];
        b[0] = h0 / 3.0;
        c[0] = h0 / 6.0;
        r[0] = (y[1] - y[0]) / h0 - d0;
        for i in 1..n - 1 {
            let hm = x[i] - x[i - 1];
            let hp = x[i + 1] - x[i];
            a[i] = hm / 6.0;
            b[i] = (hm + hp) / 3.0;
            c[i] = hp / 6.0;
            r[i] = (y[i + 1] - y[i]) / hp - (y[i] - y[i - 1]) / hm;
        }
        let hn = x[n - 1] - x[n - 2];
        a[n - 1] = hn / 6.0;
        b[n - 1] = hn / 3.0;
        r[n - 1] = dn - (y[n - 1] - y[n - 2]) / hn;

        // Thomas algorithm
        for i in 1..n {
            let w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            r[i] -= w * r[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = r[n - 1] / b[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
        }
        ClampedSpline { x, y, m }
    }

    fn segment(&self, xq: f64) -> usize {
        let n = self.x.len();
        self.x[1..n - 1].partition_point(|&xi| xi <= xq)
    }

    /// (value, first, second) derivative at xq.
    fn eval(&self, xq: f64) -> (f64, f64, f64) {
        let i = self.segment(xq);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let a = (x1 - xq) / h;
        let b = (xq - x0) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let val = a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d1 = (self.y[i + 1] - self.y[i]) / h - (3.0 * a * a - 1.0) * m0 * h / 6.0
            + (3.0 * b * b - 1.0) * m1 * h / 6.0;
        let d2 = a * m0 + b * m1;
        (val, d1, d2)
    }
}

/// Tabulated attractive surface potential with power-law asymptotes.
///
/// Interpolation is cubic in (ln z, ln(−V)) between `z_low` and `z_high`, and
/// exact power laws −c3/z³ and −c4/z⁴ outside; the extrapolation coefficients
/// are value-matched at the grid ends so V is C¹ across the switchovers.
#[derive(Debug, Clone)]
pub struct PotentialTable {
    pub material: String,
    z_grid: Vec<f64>,
    values: Vec<f64>,
    spline: ClampedSpline,
    /// van der Waals coefficient from the slope-constrained fit, neV·nm³.
    pub c3: f64,
    /// retarded coefficient from the slope-constrained fit, neV·nm⁴.
    pub c4: f64,
    c3_ext: f64,
    c4_ext: f64,
    pub z_low: f64,
    pub z_high: f64,
    /// worst log-space residuals of the two asymptote fits
    pub fit_residual_c3: f64,
    pub fit_residual_c4: f64,
}

impl PotentialTable {
    /// Build from sampled values V(z_i) < 0 on an increasing grid.
    ///
    /// Fits c3 over the smallest decade and c4 over the largest decade by a
    /// slope-constrained least squares in log-log space; a residual above 1%
    /// on either fit is a numerical error.
    pub fn from_samples(material: impl Into<String>, z: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let material = material.into();
        if z.len() < 8 || z.len() != v.len() {
            return Err(Error::domain(
                "potential table",
                "need at least 8 matching samples",
            ));
        }
        if z.windows(2).any(|w| w[0] >= w[1]) || z[0] <= 0.0 {
            return Err(Error::domain(
                "potential table",
                "grid must be positive and strictly increasing",
            ));
        }
        if v.iter().any(|&vi| !(vi < 0.0)) {
            return Err(Error::domain(
                "potential table",
                "potential values must be strictly negative",
            ));
        }
        if v.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain(
                "potential table",
                "potential must increase monotonically toward zero",
            ));
        }
        let x: Vec<f64> = z.iter().map(|zi| zi.ln()).collect();
        let y: Vec<f64> = v.iter().map(|vi| (-vi).ln()).collect();

        let (c3, res3) = constrained_fit(&x, &y, 3.0, |zi| zi <= z[0] * 10.0, &z);
        let (c4, res4) = constrained_fit(&x, &y, 4.0, |zi| zi >= z[z.len() - 1] / 10.0, &z);
        for (tag, res) in [("c3", res3), ("c4", res4)] {
            if res > 0.01 {
                return Err(Error::Numerical {
                    context: match tag {
                        "c3" => "potential table c3 fit",
                        _ => "potential table c4 fit",
                    },
                    requested: 0.01,
                    achieved: res,
                });
            }
        }

        let spline = ClampedSpline::new(x, y, -3.0, -4.0);
        let n = z.len();
        let c3_ext = -v[0] * z[0].powi(3);
        let c4_ext = -v[n - 1] * z[n - 1].powi(4);
        Ok(PotentialTable {
            material,
            z_low: z[0],
            z_high: z[n - 1],
            z_grid: z,
            values: v,
            spline,
            c3,
            c4,
            c3_ext,
            c4_ext,
            fit_residual_c3: res3,
            fit_residual_c4: res4,
        })
    }

    pub fn z_grid(&self) -> &[f64] {
        &self.z_grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Least-squares fit of ln(−V) = ln C − slope·ln z over selected points;
/// returns (C, worst log residual).
fn constrained_fit(
    x: &[f64],
    y: &[f64],
    slope: f64,
    select: impl Fn(f64) -> bool,
    z: &[f64],
) -> (f64, f64) {
    let mut sum = 0.0;
    let mut count = 0usize;
    for i in 0..x.len() {
        if select(z[i]) {
            sum += y[i] + slope * x[i];
            count += 1;
        }
    }
    let ln_c = sum / count as f64;
    let mut worst: f64 = 0.0;
    for i in 0..x.len() {
        if select(z[i]) {
            worst = worst.max((y[i] - (ln_c - slope * x[i])).abs());
        }
    }
    (ln_c.exp(), worst)
}

impl PotentialModel for PotentialTable {
    fn v(&self, z: f64) -> f64 {
        if z < self.z_low {
            -self.c3_ext / (z * z * z)
        } else if z > self.z_high {
            -self.c4_ext / (z * z * z * z)
        } else {
            let (y, _, _) = self.spline.eval(z.ln());
            -y.exp()
        }
    }

    fn dv(&self, z: f64) -> f64 {
        if z < self.z_low {
            3.0 * self.c3_ext / z.powi(4)
        } else if z > self.z_high {
            4.0 * self.c4_ext / z.powi(5)
        } else {
            let (y, d1, _) = self.spline.eval(z.ln());
            -y.exp() * d1 / z
        }
    }

    fn d2v(&self, z: f64) -> f64 {
        if z < self.z_low {
            -12.0 * self.c3_ext / z.powi(5)
        } else if z > self.z_high {
            -20.0 * self.c4_ext / z.powi(6)
        } else {
            let (y, d1, d2) = self.spline.eval(z.ln());
            -y.exp() * (d1 * d1 + d2 - d1) / (z * z)
        }
    }

    fn label(&self) -> String {
        self.material.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spline_reproduces_cubic() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let f = |t: f64| 0.5 * t * t * t - 2.0 * t * t + t - 3.0;
        let df = |t: f64| 1.5 * t * t - 4.0 * t + 1.0;
        let d2f = |t: f64| 3.0 * t - 4.0;
        let y: Vec<f64> = x.iter().map(|&t| f(t)).collect();
        let s = ClampedSpline::new(x.clone(), y, df(0.0), df(x[19]));
        for &t in &[0.05, 1.234, 3.3, 5.69] {
            let (v, d1, d2) = s.eval(t);
            assert_relative_eq!(v, f(t), max_relative = 1e-10);
            assert_relative_eq!(d1, df(t), max_relative = 1e-8);
            assert_relative_eq!(d2, d2f(t), max_relative = 1e-7, epsilon = 1e-9);
        }
    }

    fn synthetic_table(c3: f64, z_cross: f64) -> PotentialTable {
        // V = −c3/(z³(1 + z/z_cross)) interpolates between z⁻³ and z⁻⁴
        let n = 160;
        let (z0, z1) = (1e-3f64, 1e6f64);
        let z: Vec<f64> = (0..n)
            .map(|i| z0 * (z1 / z0).powf(i as f64 / (n - 1) as f64))
            .collect();
        let v: Vec<f64> = z
            .iter()
            .map(|&zi| -c3 / (zi.powi(3) * (1.0 + zi / z_cross)))
            .collect();
        PotentialTable::from_samples("synthetic", z, v).unwrap()
    }

    #[test]
    fn table_fits_and_extrapolates_power_laws() {
        let c3 = 2.0e6;
        let z_cross = 20.0;
        let t = synthetic_table(c3, z_cross);
        assert_relative_eq!(t.c3, c3, max_relative = 2e-2);
        assert_relative_eq!(t.c4, c3 * z_cross, max_relative = 2e-2);
        // extrapolation continuity across the switchover points
        for (za, zb) in [(t.z_low * (1.0 - 1e-9), t.z_low * (1.0 + 1e-9)),
                         (t.z_high * (1.0 - 1e-9), t.z_high * (1.0 + 1e-9))] {
            let rel = (t.v(za) - t.v(zb)).abs() / t.v(zb).abs();
            assert!(rel < 1e-3, "switchover jump {rel}");
        }
    }

    #[test]
    fn table_derivatives_match_finite_differences() {
        let t = synthetic_table(1.0e6, 15.0);
        for &z in &[0.05, 1.0, 14.0, 300.0, 2.5e5] {
            let h = z * 1e-5;
            let fd1 = (t.v(z + h) - t.v(z - h)) / (2.0 * h);
            let fd2 = (t.v(z + h) - 2.0 * t.v(z) + t.v(z - h)) / (h * h);
            assert_relative_eq!(t.dv(z), fd1, max_relative = 1e-6);
            assert_relative_eq!(t.d2v(z), fd2, max_relative = 1e-4);
        }
    }

    #[test]
    fn rejects_sign_and_order_violations() {
        assert!(PotentialTable::from_samples(
            "bad",
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
            vec![-1.0, -0.5, -0.25, -0.12, -0.06, -0.03, 0.01, -0.001],
        )
        .is_err());
    }

    #[test]
    fn piecewise_lookup() {
        let p = PiecewiseConstant::new(vec![1.0, 2.5], vec![10.0, 4.0]).unwrap();
        assert_eq!(p.v(0.5), -10.0);
        assert_eq!(p.v(1.7), -4.0);
        assert_eq!(p.v(3.0), 0.0);
        assert_eq!(p.discontinuities(), &[1.0, 2.5]);
    }
}
