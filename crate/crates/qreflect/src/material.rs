//! Mirror optical response and the atomic polarizability.
//!
//! Dielectric functions are evaluated on the imaginary frequency axis,
//! ω = iξ, where causal response functions are real and monotone. Porous
//! mirrors are handled by Bruggeman effective-medium mixing of the solid
//! response with vacuum, applied pointwise in ξ before the Fresnel
//! amplitudes are formed.

use crate::constants::{BOHR_RADIUS_NM, C_NM_PER_S, HBAR_NEV_S, NEV_PER_EV};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaterialKind {
    /// Ideal mirror: ρ_TE = -1, ρ_TM = +1 at every frequency.
    PerfectMirror,
    /// Sum of Lorentz poles on the imaginary axis.
    Oscillator,
}

/// One Lorentz pole: ε picks up strength/(1 + (ħξ/E₀)² + Γħξ/E₀²).
#[derive(Debug, Clone, Copy)]
pub struct Oscillator {
    pub strength: f64,
    pub resonance_ev: f64,
    pub damping_ev: f64,
}

#[derive(Debug, Clone)]
pub struct MaterialModel {
    pub name: String,
    pub kind: MaterialKind,
    pub oscillators: Vec<Oscillator>,
    /// Vacuum volume fraction; 0 is the bulk solid.
    pub porosity: f64,
}

impl MaterialModel {
    pub fn perfect(name: impl Into<String>) -> Self {
        MaterialModel {
            name: name.into(),
            kind: MaterialKind::PerfectMirror,
            oscillators: Vec::new(),
            porosity: 0.0,
        }
    }

    pub fn oscillator(
        name: impl Into<String>,
        oscillators: Vec<Oscillator>,
        porosity: f64,
    ) -> Self {
        MaterialModel {
            name: name.into(),
            kind: MaterialKind::Oscillator,
            oscillators,
            porosity,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.porosity) {
            return Err(Error::domain(
                "material",
                format!("{}: porosity {} outside [0,1]", self.name, self.porosity),
            ));
        }
        if self.porosity > 0.0 && self.kind == MaterialKind::PerfectMirror {
            return Err(Error::domain(
                "material",
                format!("{}: a perfect mirror cannot be porous", self.name),
            ));
        }
        if self.kind == MaterialKind::Oscillator {
            if self.oscillators.is_empty() {
                return Err(Error::domain(
                    "material",
                    format!("{}: oscillator model without oscillators", self.name),
                ));
            }
            for (i, o) in self.oscillators.iter().enumerate() {
                if o.strength < 0.0 || o.resonance_ev <= 0.0 || o.damping_ev < 0.0 {
                    return Err(Error::domain(
                        "material",
                        format!("{}: oscillator {i} has invalid parameters", self.name),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Bulk ε(iξ) before any porosity mixing.
    fn epsilon_bulk(&self, xi: f64) -> f64 {
        let mut eps = 1.0;
        for o in &self.oscillators {
            let r = HBAR_NEV_S * xi / (o.resonance_ev * NEV_PER_EV);
            let damp = o.damping_ev * NEV_PER_EV * HBAR_NEV_S * xi
                / (o.resonance_ev * NEV_PER_EV).powi(2);
            eps += o.strength / (1.0 + r * r + damp);
        }
        eps
    }

    /// Dielectric function ε(iξ) at imaginary frequency ξ ≥ 0 (rad/s),
    /// after Bruggeman mixing when the mirror is porous.
    pub fn epsilon_imaginary(&self, xi: f64) -> Result<f64> {
        if xi < 0.0 {
            return Err(Error::domain("epsilon_imaginary", "negative frequency"));
        }
        if self.kind == MaterialKind::PerfectMirror {
            return Err(Error::domain(
                "epsilon_imaginary",
                "perfect mirror has no finite dielectric function; \
                 it is handled as a limit in fresnel_amplitudes",
            ));
        }
        let bulk = self.epsilon_bulk(xi);
        if self.porosity > 0.0 {
            bruggeman_effective(bulk, self.porosity)
        } else {
            Ok(bulk)
        }
    }

    /// Static dielectric constant ε(0); infinite for a perfect mirror.
    pub fn epsilon_static(&self) -> Option<f64> {
        self.epsilon_imaginary(0.0).ok()
    }
}

/// Bruggeman effective-medium root for a solid of permittivity `eps_solid`
/// with vacuum volume fraction `porosity`:
///
///   f·(1 − ε)/(1 + 2ε) + (1 − f)·(ε_s − ε)/(ε_s + 2ε) = 0
///
/// solved by bracketed bisection on the physical branch ε ∈ [1, ε_s],
/// to 1e-12 relative width.
pub fn bruggeman_effective(eps_solid: f64, porosity: f64) -> Result<f64> {
    if eps_solid < 1.0 {
        return Err(Error::domain("bruggeman_effective", "eps_solid < 1"));
    }
    if !(0.0..=1.0).contains(&porosity) {
        return Err(Error::domain("bruggeman_effective", "porosity outside [0,1]"));
    }
    if porosity == 0.0 || eps_solid == 1.0 {
        return Ok(eps_solid);
    }
    if porosity == 1.0 {
        return Ok(1.0);
    }
    let f = porosity;
    let g = |e: f64| {
        f * (1.0 - e) / (1.0 + 2.0 * e) + (1.0 - f) * (eps_solid - e) / (eps_solid + 2.0 * e)
    };
    let (mut lo, mut hi) = (1.0, eps_solid);
    let (glo, ghi) = (g(lo), g(hi));
    if glo < 0.0 || ghi > 0.0 {
        return Err(Error::internal(
            "bruggeman_effective",
            format!("no bracket on [1, {eps_solid}] for f = {f}"),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// TE/TM reflection amplitudes on the plane at imaginary frequency.
#[derive(Debug, Clone, Copy)]
pub struct FresnelPair {
    pub rho_te: f64,
    pub rho_tm: f64,
}

/// Fresnel amplitudes at imaginary frequency ξ and transverse wavevector k⊥:
/// with κ = √(k⊥² + ξ²/c²) and κₘ = √(k⊥² + ε(iξ)ξ²/c²),
/// ρ_TE = (κ − κₘ)/(κ + κₘ) and ρ_TM = (εκ − κₘ)/(εκ + κₘ).
pub fn fresnel_amplitudes(material: &MaterialModel, xi: f64, k_perp: f64) -> Result<FresnelPair> {
    if xi < 0.0 || k_perp < 0.0 {
        return Err(Error::domain("fresnel_amplitudes", "negative argument"));
    }
    if xi == 0.0 && k_perp == 0.0 {
        return Err(Error::domain(
            "fresnel_amplitudes",
            "xi and k_perp cannot both vanish",
        ));
    }
    if material.kind == MaterialKind::PerfectMirror {
        return Ok(FresnelPair {
            rho_te: -1.0,
            rho_tm: 1.0,
        });
    }
    let eps = material.epsilon_imaginary(xi)?;
    let xi_c = xi / C_NM_PER_S;
    let kappa = (k_perp * k_perp + xi_c * xi_c).sqrt();
    let kappa_m = (k_perp * k_perp + eps * xi_c * xi_c).sqrt();
    Ok(FresnelPair {
        rho_te: (kappa - kappa_m) / (kappa + kappa_m),
        rho_tm: (eps * kappa - kappa_m) / (eps * kappa + kappa_m),
    })
}

/// Single-effective-oscillator dynamic polarizability of the ground-state
/// atom, in volume units: α(iξ)/4πε₀ = α(0)/(1 + (ħξ/E₀)²).
#[derive(Debug, Clone, Copy)]
pub struct AtomPolarizability {
    /// α(0)/4πε₀ in nm³.
    pub static_volume_nm3: f64,
    /// Effective oscillator energy E₀ in eV.
    pub resonance_ev: f64,
}

impl AtomPolarizability {
    /// Ground-state (anti)hydrogen: α(0) = 4.5 a₀³. The effective resonance
    /// 2E_h/4.5 = 12.094 eV makes the one-pole model reproduce the exact
    /// nonretarded coefficient C₃ = E_h·a₀³/4 at a perfect mirror as well.
    pub fn hydrogen() -> Self {
        AtomPolarizability {
            static_volume_nm3: 4.5 * BOHR_RADIUS_NM.powi(3),
            resonance_ev: 12.0939,
        }
    }

    pub fn with_resonance_ev(self, resonance_ev: f64) -> Self {
        AtomPolarizability {
            resonance_ev,
            ..self
        }
    }

    /// α(iξ)/4πε₀ in nm³ for ξ ≥ 0 in rad/s.
    pub fn at_imaginary(&self, xi: f64) -> f64 {
        let r = HBAR_NEV_S * xi / (self.resonance_ev * NEV_PER_EV);
        self.static_volume_nm3 / (1.0 + r * r)
    }

    /// Resonance angular frequency E₀/ħ in rad/s.
    pub fn resonance_rad_s(&self) -> f64 {
        self.resonance_ev * NEV_PER_EV / HBAR_NEV_S
    }
}
