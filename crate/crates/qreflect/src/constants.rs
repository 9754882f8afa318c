//! Physical constants and the internal unit system.
//!
//! Lengths are carried in nanometers, energies in nano-electronvolts and
//! times in seconds throughout the crate. Drop heights at the user-facing
//! boundary are in meters. These scales keep every quantity of interest
//! (potentials of a few neV, scattering lengths of tens of nm, lifetimes of
//! fractions of a second) close to unity.

use std::f64::consts::PI;

/// Reduced Planck constant, neV·s.
pub const HBAR_NEV_S: f64 = 6.582119569e-7;

/// ħc, neV·nm.
pub const HBAR_C_NEV_NM: f64 = 1.973269804e11;

/// Speed of light, nm/s.
pub const C_NM_PER_S: f64 = 2.99792458e17;

/// Speed of light, m/s.
pub const C_M_PER_S: f64 = 2.99792458e8;

/// Rest energy mc² of (anti)hydrogen, neV.
pub const MC2_HYDROGEN_NEV: f64 = 9.38783e17;

/// Standard gravitational acceleration, m/s².
pub const G_STANDARD_M_PER_S2: f64 = 9.81;

/// Bohr radius, nm.
pub const BOHR_RADIUS_NM: f64 = 5.29177210903e-2;

pub const NM_PER_M: f64 = 1.0e9;
pub const NEV_PER_EV: f64 = 1.0e9;
pub const PEV_PER_NEV: f64 = 1.0e3;

/// 2m/ħ² expressed as 2mc²/(ħc)², in 1/(neV·nm²).
///
/// `F(z) = TWO_M_OVER_HBAR2 * (E - V(z))` is then in nm⁻².
pub const TWO_M_OVER_HBAR2: f64 =
    2.0 * MC2_HYDROGEN_NEV / (HBAR_C_NEV_NM * HBAR_C_NEV_NM);

/// Weight mḡ of the atom in neV per meter of height.
pub fn mg_nev_per_m(g_bar_m_s2: f64) -> f64 {
    MC2_HYDROGEN_NEV * g_bar_m_s2 / (C_M_PER_S * C_M_PER_S)
}

/// Kinetic energy at the bottom of a free fall from height `h_m`, neV.
///
/// Uses the laboratory field g; the measured ḡ only enters the
/// gravitational-state formulas.
pub fn energy_from_height_nev(h_m: f64) -> f64 {
    mg_nev_per_m(G_STANDARD_M_PER_S2) * h_m
}

/// Asymptotic wavevector √(2mE)/ħ, nm⁻¹.
pub fn wavevector_per_nm(energy_nev: f64) -> f64 {
    (TWO_M_OVER_HBAR2 * energy_nev).sqrt()
}

/// Gravitational length ℓ = (ħ²/2m²ḡ)^(1/3), nm.
pub fn ell_grav_nm(g_bar_m_s2: f64) -> f64 {
    let g_nm_s2 = g_bar_m_s2 * NM_PER_M;
    let cubed = HBAR_C_NEV_NM * HBAR_C_NEV_NM * C_NM_PER_S * C_NM_PER_S
        / (2.0 * MC2_HYDROGEN_NEV * MC2_HYDROGEN_NEV * g_nm_s2);
    cubed.cbrt()
}

/// Retarded coefficient C₄* = (3ħc/8π)·(α(0)/4πε₀) of the ideal-mirror
/// potential V*(z) = −C₄*/z⁴, in neV·nm⁴, from a static polarizability in nm³.
pub fn c4_star_nev_nm4(alpha0_nm3: f64) -> f64 {
    3.0 * HBAR_C_NEV_NM * alpha0_nm3 / (8.0 * PI)
}

/// Range ℓ = √(2mC₄)/ħ of a −C₄/z⁴ tail, nm.
pub fn ell_c4_nm(c4_nev_nm4: f64) -> f64 {
    (TWO_M_OVER_HBAR2 * c4_nev_nm4).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weight_per_meter_matches_quoted_scale() {
        // mg = 102.5 neV/m for hydrogen to within half a percent
        let mg = mg_nev_per_m(G_STANDARD_M_PER_S2);
        assert_relative_eq!(mg, 102.5, max_relative = 5e-3);
    }

    #[test]
    fn gravitational_length_is_about_six_microns() {
        let l = ell_grav_nm(G_STANDARD_M_PER_S2);
        assert_relative_eq!(l, 5.87e3, max_relative = 1e-2);
    }

    #[test]
    fn ten_centimeter_drop_energy() {
        assert_relative_eq!(energy_from_height_nev(0.1), 10.25, max_relative = 5e-3);
    }

    #[test]
    fn ideal_retarded_coefficient_and_its_range() {
        let alpha0 = 4.5 * BOHR_RADIUS_NM.powi(3);
        let c4 = c4_star_nev_nm4(alpha0);
        assert_relative_eq!(c4, 1.57e7, max_relative = 2e-2);
        let ell = ell_c4_nm(c4);
        assert!(ell > 27.0 && ell < 30.0, "ell_CP = {ell}");
    }
}
