//! wasm-bindgen surface for the browser demo. Each export takes plain
//! numbers from the page and returns a JSON string; errors come back as
//! `{"error": "..."}` so the page can render them inline.

use wasm_bindgen::prelude::*;

use snq_core::analytic::{
    optimal_coherent_number, optimal_squeezed_number, ratio_to_yuen, snr_squeezed_number,
    squeezed_number_moments, uncertainty_product, EnergyBudget,
};
use snq_core::optimizer::reduced_objective;
use snq_core::{Complex64, SqueezeParams};

fn error_json(message: &str) -> String {
    format!("{{\"error\": \"{}\"}}", message.replace('"', "'"))
}

fn push_field(out: &mut String, key: &str, value: f64) {
    out.push_str(&format!("\"{key}\": {value}"));
}

/// Moments, SNR, and uncertainty product of D(α)S(z)|n⟩.
#[wasm_bindgen]
pub fn state_summary(n: u32, alpha_re: f64, alpha_im: f64, r: f64, phi: f64) -> String {
    let z = match SqueezeParams::new(r, phi) {
        Ok(z) => z,
        Err(e) => return error_json(&e.to_string()),
    };
    let n = n as usize;
    let alpha = Complex64::new(alpha_re, alpha_im);
    let m = squeezed_number_moments(n, alpha, &z);
    let rho = snr_squeezed_number(n, alpha, &z).value();
    let fields = [
        ("mean_n", m.mean_n),
        ("mean_x", m.mean_x),
        ("mean_p", m.mean_p),
        ("var_x", m.var_x),
        ("var_p", m.var_p),
        ("rho", rho),
        ("uncertainty_product", uncertainty_product(n, Some(&z))),
    ];
    let mut out = String::from("{");
    for (i, (k, v)) in fields.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        push_field(&mut out, k, *v);
    }
    out.push('}');
    out
}

/// Both family optima under the budget plus a sampled trace of the reduced
/// objective ρ(var_x) over the physically allowed window, for plotting.
#[wasm_bindgen]
pub fn optimum_landscape(ns: f64, n: u32, samples: u32) -> String {
    let n = n as usize;
    let budget = match EnergyBudget::new(ns, n) {
        Ok(b) => b,
        Err(e) => return error_json(&e.to_string()),
    };
    if !budget.is_feasible() {
        return error_json("infeasible: n exceeds energy budget");
    }
    let coherent = match optimal_coherent_number(&budget) {
        Ok(s) => s,
        Err(e) => return error_json(&e.to_string()),
    };
    let squeezed = match optimal_squeezed_number(&budget) {
        Ok(s) => s,
        Err(e) => return error_json(&e.to_string()),
    };

    let q = 2.0 * ns + 1.0;
    let p = 2.0 * n as f64 + 1.0;
    let sq = (q * q - p * p).max(0.0).sqrt();
    let v_hi = 0.5 * (q + sq);
    let v_lo = p * p / (2.0 * (q + sq));
    let count = samples.clamp(2, 2048);

    let mut out = String::from("{");
    for (k, v) in [
        ("rho_max_coherent", coherent.rho_max),
        ("rho_max_squeezed", squeezed.rho_max),
        ("alpha_star", squeezed.alpha_star),
        ("lambda_star", squeezed.lambda_star),
        ("mu_star", squeezed.mu_star),
        ("var_x_star", squeezed.var_x_star),
        ("var_x_coherent", coherent.var_x_star),
        ("r_star", (-squeezed.mu_star).asinh()),
    ] {
        push_field(&mut out, k, v);
        out.push_str(", ");
    }
    out.push_str("\"curve\": [");
    if v_hi > v_lo {
        let step = (v_hi / v_lo).ln() / (count - 1) as f64;
        for k in 0..count {
            let v = v_lo * (step * k as f64).exp();
            let rho = reduced_objective(v, &budget).unwrap_or(0.0).max(0.0);
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("[{v}, {rho}]"));
        }
    }
    out.push_str("]}");
    out
}

/// Optimal-SNR decay relative to the n = 0 baseline: rows of
/// [n, ratio, 1/(2n+1)²] for n = 0..n_max.
#[wasm_bindgen]
pub fn ratio_curve(ns: f64, n_max: u32) -> String {
    if ns.is_nan() || ns <= 0.0 {
        return error_json("ns must be positive");
    }
    let n_max = (n_max as usize).min(ns as usize);
    let mut out = String::from("{\"rows\": [");
    for n in 0..=n_max {
        let ratio = match ratio_to_yuen(&EnergyBudget::new(ns, n).unwrap_or_else(|_| {
            EnergyBudget::new(1.0, 0).unwrap()
        })) {
            Ok(v) => v,
            Err(e) => return error_json(&e.to_string()),
        };
        let odd = 2.0 * n as f64 + 1.0;
        if n > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("[{n}, {ratio}, {}]", 1.0 / (odd * odd)));
    }
    out.push_str("]}");
    out
}
