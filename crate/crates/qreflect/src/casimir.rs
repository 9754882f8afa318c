//! Atom-plane Casimir-Polder potential at zero temperature.
//!
//! After a Wick rotation the potential is a double integral over imaginary
//! frequency ξ and the decay constant κ = √(k⊥² + ξ²/c²),
//!
//!   V(z) = ħ/(2πc²) ∫₀^∞ dξ α(iξ) ∫_{ξ/c}^∞ dκ e^(−2κz)
//!          · [ξ² ρ_TE − (ξ² + 2c²k⊥²) ρ_TM],
//!
//! everything real and sign-definite, which makes high relative accuracy
//! cheap. The κ integral is split into a Gauss panel across the Fresnel
//! transition region plus a shifted Gauss-Laguerre tail matched to the
//! e^(−2κz) weight; the ξ integral is mapped to [0,1) by ξ = ξ₀ t/(1−t) and
//! integrated adaptively. Every point value is verified by a refined
//! recomputation before it is accepted.

use crate::constants::{C_NM_PER_S, HBAR_NEV_S};
use crate::error::{Error, Result};
use crate::material::{AtomPolarizability, MaterialKind, MaterialModel};
use crate::potential::PotentialTable;
use crate::quad;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Settings for the double quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadSettings {
    /// Target relative tolerance of V(z).
    pub rel_tol: f64,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings { rel_tol: 1e-6 }
    }
}

/// A verified point value.
#[derive(Debug, Clone, Copy)]
pub struct PointValue {
    pub value_nev: f64,
    /// Relative difference between the accepted value and a refined
    /// recomputation.
    pub achieved_rel: f64,
}

/// The Wick-rotated integrand of the atom-plane potential, per mode
/// (ξ, k⊥): ξ²α(iξ)·(e^(−2κz)/κ)·[ρ_TE − (1 + 2c²k⊥²/ξ²)·ρ_TM].
///
/// Evaluated in the regularized form α(iξ)(e^(−2κz)/κ)[ξ²ρ_TE −
/// (ξ² + 2c²k⊥²)ρ_TM], which is identical for ξ > 0 and finite at ξ = 0.
pub fn cp_integrand(
    material: &MaterialModel,
    pol: &AtomPolarizability,
    xi: f64,
    k_perp: f64,
    z: f64,
) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::domain("cp_integrand", "z must be positive"));
    }
    if xi < 0.0 || k_perp < 0.0 || (xi == 0.0 && k_perp == 0.0) {
        return Err(Error::domain("cp_integrand", "invalid (xi, k_perp)"));
    }
    let xi_c = xi / C_NM_PER_S;
    let kappa = (k_perp * k_perp + xi_c * xi_c).sqrt();
    let rho = crate::material::fresnel_amplitudes(material, xi, k_perp)?;
    let c2 = C_NM_PER_S * C_NM_PER_S;
    let bracket = xi * xi * rho.rho_te - (xi * xi + 2.0 * c2 * k_perp * k_perp) * rho.rho_tm;
    Ok(pol.at_imaginary(xi) * (-2.0 * kappa * z).exp() / kappa * bracket)
}

/// ∫_{ξ/c}^∞ dκ e^(−2κz) [ξ²ρ_TE − (ξ² + 2c²k⊥²)ρ_TM] for a dielectric
/// mirror with ε = eps at this ξ. k⊥² = κ² − (ξ/c)².
fn kappa_integral_dielectric(eps: f64, xi: f64, z: f64, rel_tol: f64) -> f64 {
    let c2 = C_NM_PER_S * C_NM_PER_S;
    let a = xi / C_NM_PER_S;
    if 2.0 * a * z > 700.0 {
        return 0.0;
    }
    let weighted = |kappa: f64| {
        let kp2 = (kappa * kappa - a * a).max(0.0);
        let kappa_m = (kp2 + eps * a * a).sqrt();
        let rho_te = (kappa - kappa_m) / (kappa + kappa_m);
        let rho_tm = (eps * kappa - kappa_m) / (eps * kappa + kappa_m);
        xi * xi * rho_te - (xi * xi + 2.0 * c2 * kp2) * rho_tm
    };

    // Fresnel amplitudes relax from their normal-incidence values on the
    // scale κ ~ √ε·ξ/c; integrate that region with Gauss panels and hand
    // the smooth exponential tail to Gauss-Laguerre.
    let kappa_s = a * 3.0 * eps.sqrt().max(1.0);
    let mut total = 0.0;
    if kappa_s > a {
        let (panel, _) = quad::adaptive(
            |k| (-2.0 * k * z).exp() * weighted(k),
            a,
            kappa_s,
            rel_tol,
            1e-300,
        )
        .unwrap_or((0.0, 0.0));
        total += panel;
    }
    let scale = 2.0 * z;
    let (tail, _) =
        quad::laguerre_adaptive(|u| weighted(kappa_s + u / scale) / scale, rel_tol, 1e-300);
    total + tail * (-2.0 * kappa_s * z).exp()
}

/// Closed form of the κ integral for the perfect mirror, where the bracket
/// is exactly −2c²κ²: −2c² e^(−2az)(a²/2z + a/2z² + 1/4z³), a = ξ/c.
fn kappa_integral_perfect(xi: f64, z: f64) -> f64 {
    let a = xi / C_NM_PER_S;
    if 2.0 * a * z > 700.0 {
        return 0.0;
    }
    let c2 = C_NM_PER_S * C_NM_PER_S;
    -2.0 * c2
        * (-2.0 * a * z).exp()
        * (a * a / (2.0 * z) + a / (2.0 * z * z) + 1.0 / (4.0 * z * z * z))
}

fn potential_once(
    material: &MaterialModel,
    pol: &AtomPolarizability,
    z: f64,
    rel_tol: f64,
) -> Result<f64> {
    let perfect = material.kind == MaterialKind::PerfectMirror;
    let xi0 = (C_NM_PER_S / (2.0 * z)).min(pol.resonance_rad_s());
    let inner_tol = rel_tol * 0.3;

    let integrand_t = |t: f64| -> f64 {
        if t <= 0.0 || t >= 1.0 - 1e-12 {
            return 0.0;
        }
        let xi = xi0 * t / (1.0 - t);
        let jac = xi0 / ((1.0 - t) * (1.0 - t));
        let alpha = pol.at_imaginary(xi);
        if alpha <= 0.0 {
            return 0.0;
        }
        let inner = if perfect {
            kappa_integral_perfect(xi, z)
        } else {
            let eps = material
                .epsilon_imaginary(xi)
                .expect("validated oscillator model");
            kappa_integral_dielectric(eps, xi, z, inner_tol)
        };
        alpha * inner * jac
    };

    let (integral, _err) = quad::adaptive(integrand_t, 0.0, 1.0, rel_tol * 0.5, 1e-300)?;
    let pref = HBAR_NEV_S / (2.0 * PI * C_NM_PER_S * C_NM_PER_S);
    Ok(pref * integral)
}

/// Casimir-Polder potential at one distance, verified against a refined
/// recomputation; strictly negative for any physical mirror.
pub fn cp_potential_point_with(
    material: &MaterialModel,
    pol: &AtomPolarizability,
    z: f64,
    settings: &QuadSettings,
) -> Result<PointValue> {
    if z <= 0.0 {
        return Err(Error::domain("cp_potential_point", "z must be positive"));
    }
    material.validate()?;
    let tol = settings.rel_tol;
    let coarse = potential_once(material, pol, z, tol * 0.5)?;
    let fine = potential_once(material, pol, z, tol * 0.125)?;
    let achieved = if fine != 0.0 {
        ((coarse - fine) / fine).abs()
    } else {
        0.0
    };
    if achieved > tol {
        return Err(Error::Numerical {
            context: "cp_potential_point quadrature",
            requested: tol,
            achieved,
        });
    }
    Ok(PointValue {
        value_nev: fine,
        achieved_rel: achieved,
    })
}

/// [`cp_potential_point_with`] at the default 1e-6 relative tolerance.
pub fn cp_potential_point(
    material: &MaterialModel,
    pol: &AtomPolarizability,
    z: f64,
) -> Result<f64> {
    Ok(cp_potential_point_with(material, pol, z, &QuadSettings::default())?.value_nev)
}

/// Independent one-dimensional route to the van der Waals coefficient,
/// C₃ = (ħ/4π) ∫₀^∞ dξ α(iξ)·(ε(iξ)−1)/(ε(iξ)+1), in neV·nm³.
///
/// This is the small-z limit of the double integral; it shares no code with
/// the 2D quadrature path and serves as its oracle.
pub fn c3_van_der_waals(material: &MaterialModel, pol: &AtomPolarizability) -> Result<f64> {
    let omega = pol.resonance_rad_s();
    let perfect = material.kind == MaterialKind::PerfectMirror;
    let f = |t: f64| -> f64 {
        if t <= 0.0 || t >= 1.0 - 1e-12 {
            return 0.0;
        }
        let xi = omega * t / (1.0 - t);
        let jac = omega / ((1.0 - t) * (1.0 - t));
        let refl = if perfect {
            1.0
        } else {
            let eps = material.epsilon_imaginary(xi).expect("validated model");
            (eps - 1.0) / (eps + 1.0)
        };
        pol.at_imaginary(xi) * refl * jac
    };
    let (integral, _) = quad::adaptive(f, 0.0, 1.0, 1e-10, 1e-300)?;
    Ok(HBAR_NEV_S / (4.0 * PI) * integral)
}

/// Grid specification for [`build_potential_table`].
#[derive(Debug, Clone, Copy)]
pub struct TableSpec {
    pub z_min_nm: f64,
    pub z_max_nm: f64,
    pub n_points: usize,
    pub quad: QuadSettings,
}

impl Default for TableSpec {
    fn default() -> Self {
        // The end decades must sit inside the asymptotic regimes for the
        // slope-constrained fits: z ≪ c/ω_atom at the bottom and
        // z ≫ c/ω_IR of the mirror at the top.
        TableSpec {
            z_min_nm: 1e-2,
            z_max_nm: 1e6,
            n_points: 200,
            quad: QuadSettings::default(),
        }
    }
}

/// Tabulate V(z) on a log-spaced grid and fit the asymptotic coefficients.
pub fn build_potential_table(
    material: &MaterialModel,
    pol: &AtomPolarizability,
    spec: &TableSpec,
) -> Result<PotentialTable> {
    if !(spec.z_min_nm > 0.0 && spec.z_min_nm < spec.z_max_nm) {
        return Err(Error::domain("build_potential_table", "bad z range"));
    }
    if spec.n_points < 50 {
        return Err(Error::domain(
            "build_potential_table",
            "need at least 50 grid points",
        ));
    }
    material.validate()?;
    let n = spec.n_points;
    let ratio = spec.z_max_nm / spec.z_min_nm;
    let z: Vec<f64> = (0..n)
        .map(|i| spec.z_min_nm * ratio.powf(i as f64 / (n - 1) as f64))
        .collect();
    let values: Result<Vec<f64>> = z
        .par_iter()
        .map(|&zi| Ok(cp_potential_point_with(material, pol, zi, &spec.quad)?.value_nev))
        .collect();
    PotentialTable::from_samples(material.name.clone(), z, values?)
}

/// The retarded ideal-mirror reference V*(z) = −C₄*/z⁴.
#[derive(Debug, Clone, Copy)]
pub struct IdealReference {
    pub c4_star: f64,
}

impl IdealReference {
    /// C₄* computed from the atom's static polarizability and ħc.
    pub fn for_atom(pol: &AtomPolarizability) -> Self {
        IdealReference {
            c4_star: crate::constants::c4_star_nev_nm4(pol.static_volume_nm3),
        }
    }

    pub fn v_star(&self, z: f64) -> f64 {
        -self.c4_star / (z * z * z * z)
    }

    /// Every real mirror must satisfy C₄ ≤ C₄* (small numerical slack).
    pub fn bounds_table(&self, table: &PotentialTable) -> bool {
        table.c4 <= self.c4_star * (1.0 + 2e-2)
    }
}

/// V(z)/V*(z): tends to C₄/C₄* ≤ 1 at large z and to C₃·z/C₄* at small z.
pub fn ratio_to_ideal(table: &PotentialTable, ideal: &IdealReference, z: f64) -> Result<f64> {
    use crate::potential::PotentialModel;
    if z <= 0.0 {
        return Err(Error::domain("ratio_to_ideal", "z must be positive"));
    }
    Ok(table.v(z) / ideal.v_star(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{c4_star_nev_nm4, BOHR_RADIUS_NM, NEV_PER_EV};
    use crate::material::Oscillator;
    use approx::assert_relative_eq;

    fn hydrogen() -> AtomPolarizability {
        AtomPolarizability::hydrogen()
    }

    fn perfect() -> MaterialModel {
        MaterialModel::perfect("perfect")
    }

    fn vacuum_like() -> MaterialModel {
        MaterialModel::oscillator(
            "vacuum",
            vec![Oscillator {
                strength: 0.0,
                resonance_ev: 1.0,
                damping_ev: 0.0,
            }],
            0.0,
        )
    }

    #[test]
    fn integrand_vanishes_for_vacuum() {
        let m = vacuum_like();
        let f = cp_integrand(&m, &hydrogen(), 1e15, 1e-3, 50.0).unwrap();
        assert!(f.abs() < 1e-30);
    }

    #[test]
    fn integrand_perfect_mirror_normal_incidence() {
        // k⊥ = 0, perfect mirror: ξ²α(iξ)(c/ξ)e^(−2ξz/c)·(−2)
        let m = perfect();
        let pol = hydrogen();
        let z = 120.0;
        for xi in [1e14, 1e15, 5e15] {
            let got = cp_integrand(&m, &pol, xi, 0.0, z).unwrap();
            let expected =
                -2.0 * xi * C_NM_PER_S * pol.at_imaginary(xi) * (-2.0 * xi * z / C_NM_PER_S).exp();
            assert_relative_eq!(got, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn integrand_bracket_is_attractive() {
        let m = MaterialModel::oscillator(
            "eps",
            vec![Oscillator {
                strength: 3.0,
                resonance_ev: 8.0,
                damping_ev: 0.0,
            }],
            0.0,
        );
        for &(xi, kp) in &[(1e15, 0.0), (1e15, 1e-2), (3e16, 1e-3), (1e13, 0.1)] {
            let f = cp_integrand(&m, &hydrogen(), xi, kp, 10.0).unwrap();
            assert!(f <= 0.0, "integrand positive at xi={xi}, kp={kp}");
        }
    }

    #[test]
    fn integrand_rejects_bad_arguments() {
        assert!(cp_integrand(&perfect(), &hydrogen(), 1e15, 0.1, 0.0).is_err());
        assert!(cp_integrand(&perfect(), &hydrogen(), 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn dielectric_kappa_integral_matches_perfect_limit() {
        // a huge ε must approach the closed-form perfect-mirror integral
        let xi = 2e15;
        let z = 40.0;
        let big = kappa_integral_dielectric(1e8, xi, z, 1e-9);
        let exact = kappa_integral_perfect(xi, z);
        assert_relative_eq!(big, exact, max_relative = 1e-3);
    }

    #[test]
    fn perfect_mirror_retarded_asymptote() {
        let pol = hydrogen();
        let c4_star = c4_star_nev_nm4(pol.static_volume_nm3);
        let z = 1000.0;
        let v = cp_potential_point(&perfect(), &pol, z).unwrap();
        assert!(v < 0.0);
        assert_relative_eq!(v, -c4_star / z.powi(4), max_relative = 3e-2);
    }

    #[test]
    fn perfect_mirror_van_der_waals_asymptote() {
        let pol = hydrogen();
        // independent 1D oracle: C₃ = (ħ/4π)·α(0)·(π/2)·ω₀ for one pole
        let c3_closed = pol.static_volume_nm3 * pol.resonance_ev * NEV_PER_EV / 8.0;
        let c3_oracle = c3_van_der_waals(&perfect(), &pol).unwrap();
        assert_relative_eq!(c3_oracle, c3_closed, max_relative = 1e-8);
        let z = 0.01;
        let v = cp_potential_point(&perfect(), &pol, z).unwrap();
        assert_relative_eq!(v, -c3_oracle / z.powi(3), max_relative = 3e-2);
    }

    #[test]
    fn hydrogen_c3_matches_exact_quarter_hartree() {
        // the one-pole resonance is chosen so C₃ = E_h·a₀³/4 at a perfect wall
        let c3 = c3_van_der_waals(&perfect(), &hydrogen()).unwrap();
        let hartree_nev = 27.211386245988 * 1e9;
        let exact = 0.25 * hartree_nev * BOHR_RADIUS_NM.powi(3);
        assert_relative_eq!(c3, exact, max_relative = 1e-4);
    }

    #[test]
    fn potential_is_negative_and_monotone() {
        let lib = crate::config::MaterialLibrary::builtin();
        let silica = lib.get("silica").unwrap();
        let pol = hydrogen();
        let mut last = f64::NEG_INFINITY;
        for z in [1.0, 10.0, 100.0, 1000.0] {
            let v = cp_potential_point(silica, &pol, z).unwrap();
            assert!(v < 0.0);
            assert!(v > last, "not increasing toward zero at z={z}");
            last = v;
        }
    }

    #[test]
    fn porosity_weakens_potential() {
        let lib = crate::config::MaterialLibrary::builtin();
        let bulk = lib.get("silica").unwrap();
        let porous = lib.get_with_porosity("silica", 0.5).unwrap();
        let pol = hydrogen();
        for z in [2.0, 50.0, 800.0] {
            let vb = cp_potential_point(bulk, &pol, z).unwrap();
            let vp = cp_potential_point(&porous, &pol, z).unwrap();
            assert!(vp.abs() < vb.abs(), "porosity did not weaken V at z={z}");
        }
    }

    #[test]
    fn tightening_tolerance_is_consistent() {
        let pol = hydrogen();
        let lib = crate::config::MaterialLibrary::builtin();
        let silicon = lib.get("silicon").unwrap();
        let z = 35.0;
        let loose =
            cp_potential_point_with(silicon, &pol, z, &QuadSettings { rel_tol: 1e-5 }).unwrap();
        let tight =
            cp_potential_point_with(silicon, &pol, z, &QuadSettings { rel_tol: 1e-8 }).unwrap();
        assert_relative_eq!(loose.value_nev, tight.value_nev, max_relative = 1e-5);
        assert!(loose.achieved_rel <= 1e-5);
    }

    #[test]
    fn material_ordering_perfect_silicon_silica() {
        let lib = crate::config::MaterialLibrary::builtin();
        let pol = hydrogen();
        for z in [1.0, 30.0, 1000.0] {
            let vp = cp_potential_point(&perfect(), &pol, z).unwrap();
            let vsi = cp_potential_point(lib.get("silicon").unwrap(), &pol, z).unwrap();
            let vox = cp_potential_point(lib.get("silica").unwrap(), &pol, z).unwrap();
            assert!(
                vp.abs() > vsi.abs() && vsi.abs() > vox.abs(),
                "ordering at z={z}"
            );
        }
    }
}
