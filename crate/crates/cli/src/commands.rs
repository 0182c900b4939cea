//! Command implementations: thin orchestration over `snq_core` plus record
//! assembly. All numeric cross-checks resolve their Fock cutoff through the
//! doubling test unless an explicit cutoff was passed.

use snq_core::analytic::{
    optimal_coherent_number, optimal_squeezed_number, ratio_to_yuen, snr, snr_squeezed_number,
    squeezed_number_moments, EnergyBudget,
};
use snq_core::fock::{build_state, choose_cutoff, moments_numeric, FockCutoff};
use snq_core::optimizer::{maximize_reduced, numeric_optimum_search, SearchConfig};
use snq_core::{Complex64, Error, MomentSet, SqueezeParams};

use crate::output::Record;

/// Parameters naming one state |z, α, n⟩.
pub struct StatePoint {
    pub n: usize,
    pub alpha: Complex64,
    pub z: SqueezeParams,
}

impl StatePoint {
    pub fn new(n: usize, alpha_re: f64, alpha_im: f64, r: f64, phi: f64) -> Result<Self, Error> {
        Ok(StatePoint { n, alpha: Complex64::new(alpha_re, alpha_im), z: SqueezeParams::new(r, phi)? })
    }

    fn tag(&self, record: Record) -> Record {
        record
            .int("n", self.n as i64)
            .num("alpha_re", self.alpha.re)
            .num("alpha_im", self.alpha.im)
            .num("r", self.z.r())
            .num("phi", self.z.phi())
    }
}

/// `--cutoff auto` resolves through the doubling test with eps = tol/10 so
/// the oracle error stays below the comparison tolerance.
pub fn resolve_cutoff(
    cutoff: &str,
    point: &StatePoint,
    tol: f64,
) -> Result<FockCutoff, Error> {
    if cutoff == "auto" {
        choose_cutoff(point.n, point.alpha, &point.z, tol / 10.0)
    } else {
        let dim: usize = cutoff.parse().map_err(|_| {
            Error::InvalidInput(format!("cutoff must be 'auto' or a positive integer, got {cutoff}"))
        })?;
        FockCutoff::new(dim)
    }
}

fn numeric_moments(point: &StatePoint, cutoff: &str, tol: f64) -> Result<(FockCutoff, MomentSet, f64), Error> {
    let dim = resolve_cutoff(cutoff, point, tol)?;
    let state = build_state(point.n, point.alpha, &point.z, dim, tol)?;
    let leakage = state.leakage();
    Ok((dim, moments_numeric(&state), leakage))
}

/// Closed-form moments, optionally with the truncated-Fock oracle and the
/// worst componentwise deviation.
pub fn cmd_moments(point: &StatePoint, numeric: bool, cutoff: &str, tol: f64) -> Result<Record, Error> {
    let closed = squeezed_number_moments(point.n, point.alpha, &point.z);
    let mut record = point
        .tag(Record::new())
        .num("mean_n", closed.mean_n)
        .num("mean_x", closed.mean_x)
        .num("mean_p", closed.mean_p)
        .num("var_x", closed.var_x)
        .num("var_p", closed.var_p);
    if numeric {
        let (dim, oracle, leakage) = numeric_moments(point, cutoff, tol)?;
        record = record
            .int("cutoff", dim.get() as i64)
            .num("leakage", leakage)
            .num("numeric_mean_n", oracle.mean_n)
            .num("numeric_mean_x", oracle.mean_x)
            .num("numeric_mean_p", oracle.mean_p)
            .num("numeric_var_x", oracle.var_x)
            .num("numeric_var_p", oracle.var_p)
            .num("max_deviation", closed.max_abs_diff(&oracle));
    }
    Ok(record)
}

/// SNR of one state, closed form and (optionally) measured on the oracle.
pub fn cmd_snr(point: &StatePoint, numeric: bool, cutoff: &str, tol: f64) -> Result<Record, Error> {
    let rho = snr_squeezed_number(point.n, point.alpha, &point.z).value();
    let mut record = point.tag(Record::new()).num("rho", rho);
    if numeric {
        let (dim, oracle, _) = numeric_moments(point, cutoff, tol)?;
        let rho_numeric = snr(&oracle)?.value();
        record = record
            .int("cutoff", dim.get() as i64)
            .num("numeric_rho", rho_numeric)
            .num("deviation", (rho - rho_numeric).abs());
    }
    Ok(record)
}

/// Both family optima under the energy constraint; `--numeric` adds the two
/// independent maximizations and their deviations from the closed forms.
pub fn cmd_optimize(ns: f64, n: usize, numeric: bool, tol: f64) -> Result<Record, Error> {
    let budget = EnergyBudget::new(ns, n)?;
    let coherent = optimal_coherent_number(&budget)?;
    let squeezed = optimal_squeezed_number(&budget)?;
    let mut record = Record::new()
        .num("ns", ns)
        .int("n", n as i64)
        .num("rho_max_coherent", coherent.rho_max)
        .num("alpha_star_coherent", coherent.alpha_star)
        .num("var_x_star_coherent", coherent.var_x_star)
        .num("rho_max_squeezed", squeezed.rho_max)
        .num("alpha_star_squeezed", squeezed.alpha_star)
        .num("lambda_star_squeezed", squeezed.lambda_star)
        .num("mu_star_squeezed", squeezed.mu_star)
        .num("var_x_star_squeezed", squeezed.var_x_star);
    if numeric {
        let mut cfg = SearchConfig::for_budget(&budget);
        cfg.tol = tol.min(1e-9);
        let reduced = maximize_reduced(&budget, &cfg)?;
        let search = numeric_optimum_search(&budget, &cfg)?;
        record = record
            .num("reduced_rho", reduced.solution.rho_max)
            .num("reduced_var_x", reduced.solution.var_x_star)
            .int("reduced_evals", reduced.objective_evals as i64)
            .bool("reduced_converged", reduced.converged)
            .num("search_rho", search.solution.rho_max)
            .int("search_evals", search.objective_evals as i64)
            .bool("search_converged", search.converged)
            .num("deviation_reduced", (reduced.solution.rho_max - squeezed.rho_max).abs())
            .num("deviation_search", (search.solution.rho_max - squeezed.rho_max).abs());
    }
    Ok(record)
}

/// Decay of the optimal squeezed-family SNR relative to the n = 0 baseline,
/// one row per excitation with the 1/(2n+1)² envelope alongside.
pub fn cmd_figure1(ns: f64, n_max: usize) -> Result<Vec<Record>, Error> {
    if ns.is_nan() || ns <= 0.0 {
        return Err(Error::InvalidInput(format!("ns must be positive, got {ns}")));
    }
    if n_max as f64 > ns {
        return Err(Error::InvalidInput(format!(
            "n-max {n_max} exceeds the energy budget ns = {ns}"
        )));
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let ratio = ratio_to_yuen(&EnergyBudget::new(ns, n)?)?;
        let odd = 2.0 * n as f64 + 1.0;
        rows.push(
            Record::new()
                .int("n", n as i64)
                .num("ratio", ratio)
                .num("envelope", 1.0 / (odd * odd)),
        );
    }
    Ok(rows)
}
