use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Squeeze parameter z = r·e^{iφ} together with its Bogoliubov coefficients
/// λ = cosh r and μ = e^{iφ}·sinh r.
///
/// The pair always satisfies λ² − |μ|² = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    r: f64,
    phi: f64,
    lambda: f64,
    mu: Complex64,
}

impl SqueezeParams {
    /// Builds the parameter set from magnitude `r ≥ 0` and phase `phi`
    /// (radians, reduced into [0, 2π)).
    ///
    /// Negative magnitudes are rejected rather than folded into the phase.
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidInput(format!(
                "squeeze magnitude must be finite and non-negative, got {r}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidInput(format!(
                "squeeze phase must be finite, got {phi}"
            )));
        }
        let phi = phi.rem_euclid(TAU);
        Ok(SqueezeParams {
            r,
            phi,
            lambda: r.cosh(),
            mu: Complex64::from_polar(r.sinh(), phi),
        })
    }

    /// No squeezing: r = 0, λ = 1, μ = 0.
    pub fn zero() -> Self {
        SqueezeParams { r: 0.0, phi: 0.0, lambda: 1.0, mu: Complex64::new(0.0, 0.0) }
    }

    /// Recovers the parameters from a real Bogoliubov pair (λ, μ) with
    /// λ² − μ² = 1; μ < 0 maps to phase π, μ ≥ 0 to phase 0.
    pub fn from_real_pair(lambda: f64, mu: f64) -> Result<Self> {
        let defect = (lambda * lambda - mu * mu - 1.0).abs();
        if lambda.is_nan() || lambda < 1.0 || defect > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "(lambda, mu) = ({lambda}, {mu}) is not a Bogoliubov pair \
                 (identity defect {defect:.3e})"
            )));
        }
        let r = mu.abs().asinh();
        let phi = if mu < 0.0 { std::f64::consts::PI } else { 0.0 };
        SqueezeParams::new(r, phi)
    }

    /// z = r·e^{iφ} as a complex number.
    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.phi)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// λ = cosh r.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// μ = e^{iφ}·sinh r.
    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    /// λ² − |μ|² − 1; zero up to rounding for any valid parameter set.
    pub fn identity_defect(&self) -> f64 {
        self.lambda * self.lambda - self.mu.norm_sqr() - 1.0
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn zero_squeeze_is_identity_transform() {
        let z = SqueezeParams::new(0.0, 1.3).unwrap();
        assert_eq!(z.lambda(), 1.0);
        assert_eq!(z.mu(), Complex64::new(0.0, 0.0));
        assert_eq!(SqueezeParams::zero().lambda(), 1.0);
    }

    #[test]
    fn bogoliubov_coefficients_at_half_rapidity() {
        // cosh 0.5 and -sinh 0.5 at phase pi
        let z = SqueezeParams::new(0.5, PI).unwrap();
        assert!((z.lambda() - 1.127_625_965_2).abs() < 1e-9);
        assert!((z.mu().re - (-0.521_095_305_49)).abs() < 1e-9);
        assert!(z.mu().im.abs() < 1e-15);
    }

    #[test]
    fn hyperbolic_identity_holds() {
        for &(r, phi) in &[(0.0, 0.0), (0.3, 1.0), (1.5, 4.4), (2.5, 6.0)] {
            let z = SqueezeParams::new(r, phi).unwrap();
            assert!(z.identity_defect().abs() < 1e-12, "defect at r={r}, phi={phi}");
        }
    }

    #[test]
    fn negative_magnitude_rejected() {
        assert!(matches!(SqueezeParams::new(-0.1, 0.0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn phase_reduced_modulo_tau() {
        let z = SqueezeParams::new(1.0, -PI).unwrap();
        assert!((z.phi() - PI).abs() < 1e-12);
    }

    #[test]
    fn real_pair_round_trip() {
        let z = SqueezeParams::new(0.8, PI).unwrap();
        let back = SqueezeParams::from_real_pair(z.lambda(), z.mu().re).unwrap();
        assert!((back.r() - 0.8).abs() < 1e-12);
        assert!((back.phi() - PI).abs() < 1e-12);
        assert!(SqueezeParams::from_real_pair(1.2, 0.9).is_err());
    }
}
