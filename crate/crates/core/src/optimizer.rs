//! Derivative-free maximization of the constrained signal-to-quantum-noise
//! ratio, used as an independent check on the closed-form optima.
//!
//! Two routes are provided. [`maximize_reduced`] works the 1-D problem in the
//! X variance after eliminating (ΔP)² through the saturated uncertainty
//! relation; [`numeric_optimum_search`] makes no saturation assumption and
//! searches directly over physical state parameters (α, r) on the energy
//! shell. Both are grid scans followed by golden-section refinement.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::analytic::{snr_squeezed_number, EnergyBudget, OptimalSolution};
use crate::error::{Error, Result};
use crate::squeeze::SqueezeParams;

/// Knobs for the grid scan and golden-section refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Points in the initial bracketing scan (≥ 3).
    pub grid_points: usize,
    /// Cap on golden-section contraction steps.
    pub refine_rounds: usize,
    /// Absolute width at which a bracket counts as converged.
    pub tol: f64,
    /// Upper edge of the squeeze-magnitude search box.
    pub r_max: f64,
}

impl SearchConfig {
    /// Defaults sized for `b`: the optimal rapidity is ln(2ns+1)/2, so
    /// `r_max = 1 + ln(2ns + 2)` keeps it well inside the box.
    pub fn for_budget(b: &EnergyBudget) -> Self {
        SearchConfig {
            grid_points: 129,
            refine_rounds: 200,
            tol: 1e-9,
            r_max: 1.0 + (2.0 * b.ns() + 2.0).ln(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.grid_points < 3 {
            return Err(Error::InvalidInput(format!(
                "grid must have at least 3 points, got {}",
                self.grid_points
            )));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "search tolerance must be positive, got {}",
                self.tol
            )));
        }
        if !self.r_max.is_finite() || self.r_max < 0.0 {
            return Err(Error::InvalidInput(format!(
                "squeeze search box must be finite and non-negative, got {}",
                self.r_max
            )));
        }
        Ok(())
    }
}

/// Outcome of a search: the best point found, how many objective evaluations
/// it cost, and whether the final bracket reached the requested width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchResult {
    pub solution: OptimalSolution,
    pub objective_evals: usize,
    pub converged: bool,
}

/// SNR as a function of the X variance alone, on the energy shell with the
/// uncertainty relation saturated:
/// ρ(v) = (2N_s+1)/v − 1 − (n+1/2)²/v².
pub fn reduced_objective(var_x: f64, b: &EnergyBudget) -> Result<f64> {
    if !var_x.is_finite() || var_x <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "variance must be positive, got {var_x}"
        )));
    }
    let q = 2.0 * b.ns() + 1.0;
    let half_odd = b.n() as f64 + 0.5;
    Ok(q / var_x - 1.0 - half_odd * half_odd / (var_x * var_x))
}

/// Golden-section maximization on [lo, hi]; ties keep the left subinterval so
/// plateaus resolve toward the smaller argument.
fn golden_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, f64, bool) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    if hi - lo <= tol {
        let mid = 0.5 * (lo + hi);
        return (mid, f(mid), true);
    }
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut rounds = 0;
    while hi - lo > tol && rounds < max_iter {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        }
        rounds += 1;
    }
    let converged = hi - lo <= tol;
    if f1 >= f2 {
        (x1, f1, converged)
    } else {
        (x2, f2, converged)
    }
}

/// Builds the solution record from a rapidity r (gauge φ = π, α real), with
/// α fixed by spending the whole budget: α² = N_s − λ²n − μ²(n+1).
fn solution_at_rapidity(r: f64, var_x: f64, rho: f64, b: &EnergyBudget) -> OptimalSolution {
    let nf = b.n() as f64;
    let lambda = r.cosh();
    let mu = -r.sinh();
    let alpha_sq = (b.ns() - lambda * lambda * nf - mu * mu * (nf + 1.0)).max(0.0);
    OptimalSolution {
        alpha_star: alpha_sq.sqrt(),
        lambda_star: lambda,
        mu_star: mu,
        rho_max: rho,
        var_x_star: var_x,
    }
}

/// Maximizes [`reduced_objective`] over the physically allowed variance
/// window, then inverts the saturation and energy conditions to recover
/// (α, λ, μ).
///
/// The window [v₋, v₊] comes from requiring ⟨X⟩² ≥ 0 on the energy shell; its
/// endpoints are the zeros of the objective, so an argmax on the boundary of
/// the scan means the objective was not unimodal and is reported as a bracket
/// failure.
pub fn maximize_reduced(b: &EnergyBudget, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if !b.is_feasible() {
        return Err(Error::InfeasibleBudget { ns: b.ns(), n: b.n() });
    }
    let q = 2.0 * b.ns() + 1.0;
    let p = 2.0 * b.n() as f64 + 1.0;
    let disc = (q * q - p * p).max(0.0);
    let sq = disc.sqrt();
    let v_hi = 0.5 * (q + sq);
    let v_lo = p * p / (2.0 * (q + sq));

    let mut evals = 0usize;
    let mut f = |v: f64| {
        evals += 1;
        reduced_objective(v, b).expect("scan keeps v positive")
    };

    if v_hi - v_lo <= cfg.tol {
        // the whole feasible window is one bracket: ns = n up to tolerance
        let v = 0.5 * (v_lo + v_hi);
        let rho = f(v).max(0.0);
        let r = -0.5 * (2.0 * v / p).min(1.0).ln();
        let solution = solution_at_rapidity(r, v, rho, b);
        return Ok(SearchResult { solution, objective_evals: evals, converged: true });
    }

    // log-spaced scan: the maximizer sits near twice the lower endpoint when
    // ns >> n, which a linear grid would miss
    let gp = cfg.grid_points;
    let step = (v_hi / v_lo).ln() / (gp - 1) as f64;
    let grid: Vec<f64> = (0..gp).map(|k| v_lo * (step * k as f64).exp()).collect();
    let mut best = 0usize;
    let mut best_f = f(grid[0]);
    for (k, &v) in grid.iter().enumerate().skip(1) {
        let fv = f(v);
        if fv > best_f {
            best = k;
            best_f = fv;
        }
    }
    if best == 0 || best == gp - 1 {
        return Err(Error::BracketFailure { lo: v_lo, hi: v_hi });
    }

    let (v_star, rho, converged) =
        golden_max(&mut f, grid[best - 1], grid[best + 1], cfg.tol, cfg.refine_rounds);
    let r = -0.5 * (2.0 * v_star / p).min(1.0).ln();
    let solution = solution_at_rapidity(r, v_star, rho, b);
    Ok(SearchResult { solution, objective_evals: evals, converged })
}

/// Direct search over physical states: rapidity r ∈ [0, r_max] at φ = π with
/// α ≥ 0 eliminated by spending the whole budget. No uncertainty saturation
/// is assumed; the objective is the squeezed-number-state SNR itself.
pub fn numeric_optimum_search(b: &EnergyBudget, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if !b.is_feasible() {
        return Err(Error::InfeasibleBudget { ns: b.ns(), n: b.n() });
    }
    let nf = b.n() as f64;
    let q = 2.0 * b.ns() + 1.0;
    let p = 2.0 * nf + 1.0;

    // α² ≥ 0 on the energy shell caps the rapidity at cosh(2r) = q/p
    let r_feasible = 0.5 * (q / p).acosh();
    let hi = cfg.r_max.min(r_feasible);

    let mut evals = 0usize;
    let mut objective = |r: f64| -> f64 {
        evals += 1;
        let lambda = r.cosh();
        let sinh = r.sinh();
        let alpha_sq = b.ns() - lambda * lambda * nf - sinh * sinh * (nf + 1.0);
        if alpha_sq < 0.0 {
            if alpha_sq < -1e-9 * (1.0 + b.ns()) {
                return f64::NEG_INFINITY;
            }
            return 0.0; // boundary of the shell: no signal energy left
        }
        let z = SqueezeParams::new(r, PI).expect("scan keeps r non-negative");
        snr_squeezed_number(b.n(), Complex64::new(alpha_sq.sqrt(), 0.0), &z).value()
    };

    if hi <= cfg.tol {
        // degenerate box: only (essentially) unsqueezed states are allowed
        let rho = objective(0.0).max(0.0);
        let solution = solution_at_rapidity(0.0, p / 2.0, rho, b);
        return Ok(SearchResult { solution, objective_evals: evals, converged: true });
    }

    let gp = cfg.grid_points;
    let grid: Vec<f64> = (0..gp).map(|k| hi * k as f64 / (gp - 1) as f64).collect();
    let mut best = usize::MAX;
    let mut best_f = f64::NEG_INFINITY;
    for (k, &r) in grid.iter().enumerate() {
        let fr = objective(r);
        if fr > best_f {
            best = k;
            best_f = fr;
        }
    }
    if best == usize::MAX || best_f == f64::NEG_INFINITY {
        return Err(Error::InfeasibleBudget { ns: b.ns(), n: b.n() });
    }

    let lo_edge = if best == 0 { grid[0] } else { grid[best - 1] };
    let hi_edge = if best == gp - 1 { grid[gp - 1] } else { grid[best + 1] };
    let (r_star, rho, converged) =
        golden_max(&mut objective, lo_edge, hi_edge, cfg.tol, cfg.refine_rounds);
    let var_x = 0.5 * (-2.0 * r_star).exp() * p;
    let solution = solution_at_rapidity(r_star, var_x, rho.max(0.0), b);
    Ok(SearchResult { solution, objective_evals: evals, converged })
}
