/// First and second quadrature moments of a single bosonic mode.
///
/// `var_x` and `var_p` are the variances ⟨X²⟩ − ⟨X⟩² and ⟨P²⟩ − ⟨P⟩²; every
/// physical state has both strictly positive and their product bounded below
/// by 1/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    /// Mean photon number ⟨N⟩.
    pub mean_n: f64,
    /// Mean of the X quadrature.
    pub mean_x: f64,
    /// Mean of the P quadrature.
    pub mean_p: f64,
    /// Variance of the X quadrature.
    pub var_x: f64,
    /// Variance of the P quadrature.
    pub var_p: f64,
}

impl MomentSet {
    /// Product of the two quadrature variances.
    pub fn uncertainty_product(&self) -> f64 {
        self.var_x * self.var_p
    }

    /// Largest componentwise absolute difference from `other`.
    pub fn max_abs_diff(&self, other: &MomentSet) -> f64 {
        [
            self.mean_n - other.mean_n,
            self.mean_x - other.mean_x,
            self.mean_p - other.mean_p,
            self.var_x - other.var_x,
            self.var_p - other.var_p,
        ]
        .into_iter()
        .fold(0.0, |m, d| m.max(d.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_abs_diff_picks_worst_component() {
        let a = MomentSet { mean_n: 1.0, mean_x: 0.0, mean_p: 0.0, var_x: 0.5, var_p: 0.5 };
        let mut b = a;
        b.var_p += 3e-3;
        b.mean_x -= 1e-4;
        assert!((a.max_abs_diff(&b) - 3e-3).abs() < 1e-15);
        assert_eq!(a.max_abs_diff(&a), 0.0);
    }
}
