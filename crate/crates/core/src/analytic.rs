//! Closed-form moments, signal-to-quantum-noise ratios, uncertainty products,
//! and the energy-constrained optima for displaced and squeezed Fock states.
//!
//! States are |z, α, n⟩ = D(α)·S(z)|n⟩; the formulas below are exact in the
//! infinite-dimensional space and are cross-checked against the truncated
//! numerics of [`crate::fock`] by the test suite.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moments::MomentSet;
use crate::squeeze::SqueezeParams;

/// Signal-to-quantum-noise ratio ρ = ⟨X⟩²/(ΔX)²; dimensionless and
/// non-negative, zero exactly when the signal ⟨X⟩ vanishes.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SnrValue(f64);

impl SnrValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Energy constraint: mean photon number at most `ns`, Fock excitation `n`.
///
/// `ns` is a mean, so any non-negative real is accepted; the constrained
/// optima additionally need `ns ≥ n` to be feasible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBudget {
    ns: f64,
    n: usize,
}

impl EnergyBudget {
    pub fn new(ns: f64, n: usize) -> Result<Self> {
        if !ns.is_finite() || ns < 0.0 {
            return Err(Error::InvalidInput(format!(
                "photon-number budget must be finite and non-negative, got {ns}"
            )));
        }
        Ok(EnergyBudget { ns, n })
    }

    pub fn ns(&self) -> f64 {
        self.ns
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// A Fock excitation `n` already costs `n` photons of the budget.
    pub fn is_feasible(&self) -> bool {
        self.ns >= self.n as f64
    }

    fn require_feasible(&self) -> Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(Error::InfeasibleBudget { ns: self.ns, n: self.n })
        }
    }
}

/// Maximizer of the constrained SNR problem for one state family.
///
/// `alpha_star` is real and non-negative and `mu_star` real (≤ 0 at the
/// squeezed optimum): the optimum puts the signal along X, which fixes the
/// phases to arg α = 0 and φ = π; any joint rotation of (arg α, φ, measured
/// quadrature) is equivalent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalSolution {
    /// Optimal displacement amplitude (real, ≥ 0).
    pub alpha_star: f64,
    /// Optimal λ = cosh r.
    pub lambda_star: f64,
    /// Optimal μ (real; negative when squeezing helps).
    pub mu_star: f64,
    /// Maximum signal-to-quantum-noise ratio.
    pub rho_max: f64,
    /// X-quadrature variance at the maximizer.
    pub var_x_star: f64,
}

impl OptimalSolution {
    /// Squeeze parameters reproducing (λ*, μ*).
    pub fn squeeze_params(&self) -> Result<SqueezeParams> {
        SqueezeParams::from_real_pair(self.lambda_star, self.mu_star)
    }

    /// Mean photon number λ*²n + μ*²(n+1) + α*² of the solution state.
    pub fn mean_photon_number(&self, n: usize) -> f64 {
        self.lambda_star * self.lambda_star * n as f64
            + self.mu_star * self.mu_star * (n as f64 + 1.0)
            + self.alpha_star * self.alpha_star
    }
}

/// Moments of the coherent number state D(α)|n⟩.
///
/// ⟨N⟩ = n + |α|², ⟨X⟩ = √2·Re α, ⟨P⟩ = √2·Im α, (ΔX)² = (ΔP)² = (2n+1)/2.
pub fn coherent_number_moments(n: usize, alpha: Complex64) -> MomentSet {
    let half_odd = (2.0 * n as f64 + 1.0) / 2.0;
    MomentSet {
        mean_n: n as f64 + alpha.norm_sqr(),
        mean_x: std::f64::consts::SQRT_2 * alpha.re,
        mean_p: std::f64::consts::SQRT_2 * alpha.im,
        var_x: half_odd,
        var_p: half_odd,
    }
}

/// Moments of the squeezed number state D(α)·S(z)|n⟩.
///
/// ⟨N⟩ = λ²n + |μ|²(n+1) + |α|², means as for the coherent number state, and
/// (ΔX)² = |λ+μ|²(2n+1)/2, (ΔP)² = |λ−μ|²(2n+1)/2. Reduces to
/// [`coherent_number_moments`] at r = 0.
pub fn squeezed_number_moments(n: usize, alpha: Complex64, z: &SqueezeParams) -> MomentSet {
    let lambda = Complex64::new(z.lambda(), 0.0);
    let mu = z.mu();
    let odd = 2.0 * n as f64 + 1.0;
    MomentSet {
        mean_n: z.lambda() * z.lambda() * n as f64 + mu.norm_sqr() * (n as f64 + 1.0)
            + alpha.norm_sqr(),
        mean_x: std::f64::consts::SQRT_2 * alpha.re,
        mean_p: std::f64::consts::SQRT_2 * alpha.im,
        var_x: 0.5 * (lambda + mu).norm_sqr() * odd,
        var_p: 0.5 * (lambda - mu).norm_sqr() * odd,
    }
}

/// ρ = ⟨X⟩²/(ΔX)² from a moment set; rejects non-positive variances.
pub fn snr(m: &MomentSet) -> Result<SnrValue> {
    if m.var_x.is_nan() || m.var_x <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "variance must be positive to form an SNR, got var_x = {}",
            m.var_x
        )));
    }
    Ok(SnrValue(m.mean_x * m.mean_x / m.var_x))
}

/// ρ = 4(Re α)²/(2n+1) for the coherent number state.
pub fn snr_coherent_number(n: usize, alpha: Complex64) -> SnrValue {
    SnrValue(4.0 * alpha.re * alpha.re / (2.0 * n as f64 + 1.0))
}

/// ρ = |α + α*|²/(|λ+μ|²(2n+1)) for the squeezed number state.
pub fn snr_squeezed_number(n: usize, alpha: Complex64, z: &SqueezeParams) -> SnrValue {
    let signal = 2.0 * alpha.re;
    let lam_mu = Complex64::new(z.lambda(), 0.0) + z.mu();
    SnrValue(signal * signal / (lam_mu.norm_sqr() * (2.0 * n as f64 + 1.0)))
}

/// ⟨X⟩² + (ΔX)² + ⟨P⟩² + (ΔP)² − ⟨2N+1⟩; identically zero for physical
/// moment sets (the single-mode energy partition).
pub fn energy_partition_residual(m: &MomentSet) -> f64 {
    m.mean_x * m.mean_x + m.var_x + m.mean_p * m.mean_p + m.var_p - (2.0 * m.mean_n + 1.0)
}

/// Uncertainty product (ΔX)²(ΔP)²: (2n+1)²/4 without squeezing, and
/// |λ² − μ²|²(2n+1)²/4 with it (μ complex, so the product exceeds (2n+1)²/4
/// whenever the squeeze phase is not aligned).
pub fn uncertainty_product(n: usize, z: Option<&SqueezeParams>) -> f64 {
    let odd = 2.0 * n as f64 + 1.0;
    let base = 0.25 * odd * odd;
    match z {
        None => base,
        Some(z) => {
            let lambda = Complex64::new(z.lambda(), 0.0);
            let mu = z.mu();
            let det = lambda * lambda - mu * mu;
            base * det.norm_sqr()
        }
    }
}

/// Constrained optimum over coherent number states D(α)|n⟩:
/// ρ_max = 4(N_s − n)/(2n+1) at α = √(N_s − n).
pub fn optimal_coherent_number(b: &EnergyBudget) -> Result<OptimalSolution> {
    b.require_feasible()?;
    let nf = b.n as f64;
    let odd = 2.0 * nf + 1.0;
    let slack = b.ns - nf;
    Ok(OptimalSolution {
        alpha_star: slack.sqrt(),
        lambda_star: 1.0,
        mu_star: 0.0,
        rho_max: 4.0 * slack / odd,
        var_x_star: odd / 2.0,
    })
}

/// Constrained optimum over squeezed number states D(α)S(z)|n⟩:
/// ρ_max = 4(N_s − n)(N_s + 1 + n)/(2n+1)², with
/// α = √((N_s−n)(N_s+1+n)/(2N_s+1)), λ = (N_s+1+n)/√((2N_s+1)(2n+1)),
/// μ = (n−N_s)/√((2N_s+1)(2n+1)), and (ΔX)² = (2n+1)²/(2(2N_s+1)).
pub fn optimal_squeezed_number(b: &EnergyBudget) -> Result<OptimalSolution> {
    b.require_feasible()?;
    let nf = b.n as f64;
    let ns = b.ns;
    let odd = 2.0 * nf + 1.0;
    let wide = 2.0 * ns + 1.0;
    let root = (wide * odd).sqrt();
    Ok(OptimalSolution {
        alpha_star: ((ns - nf) * (ns + 1.0 + nf) / wide).sqrt(),
        lambda_star: (ns + 1.0 + nf) / root,
        mu_star: (nf - ns) / root,
        rho_max: 4.0 * (ns - nf) * (ns + 1.0 + nf) / (odd * odd),
        var_x_star: odd * odd / (2.0 * wide),
    })
}

/// Optimal-SNR ratio of the squeezed number state family to the n = 0
/// (squeezed coherent vacuum) baseline 4N_s(N_s+1):
/// (N_s−n)(N_s+1+n)/(N_s(N_s+1)(2n+1)²). Undefined at N_s = 0.
pub fn ratio_to_yuen(b: &EnergyBudget) -> Result<f64> {
    if b.ns == 0.0 {
        return Err(Error::InvalidInput(
            "ratio to the n = 0 baseline is undefined at ns = 0".into(),
        ));
    }
    b.require_feasible()?;
    let nf = b.n as f64;
    let odd = 2.0 * nf + 1.0;
    Ok((b.ns - nf) * (b.ns + 1.0 + nf) / (b.ns * (b.ns + 1.0) * odd * odd))
}
