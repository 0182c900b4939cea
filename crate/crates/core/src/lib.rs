//! Quadrature moments and signal-to-quantum-noise ratios (SNR) for displaced
//! and squeezed Fock states |z, α, n⟩ = D(α)·S(z)|n⟩.
//!
//! Three layers cross-check each other:
//!
//! - [`analytic`] — closed forms: state moments, SNR, uncertainty products,
//!   the energy-constrained optima, and the decay of the optimal SNR relative
//!   to the n = 0 (Yuen) baseline 4·N_s·(N_s+1).
//! - [`fock`] — a truncated Fock-space oracle that builds the same states from
//!   operator exponentials and measures moments directly, with cutoffs
//!   certified by a doubling test.
//! - [`optimizer`] — derivative-free maximization of the constrained SNR, both
//!   through the reduced 1-D problem and by direct search over state
//!   parameters.
//!
//! All values are immutable and every operation is a pure function of its
//! inputs, so everything here can run concurrently without restriction.

pub mod analytic;
pub mod error;
pub mod fock;
pub mod moments;
pub mod optimizer;
pub mod squeeze;

pub use analytic::{EnergyBudget, OptimalSolution, SnrValue};
pub use error::{Error, Result};
pub use fock::{FockCutoff, OperatorMatrix, StateVector};
pub use moments::MomentSet;
pub use optimizer::{SearchConfig, SearchResult};
pub use squeeze::SqueezeParams;

/// Complex amplitude type used throughout (α, μ, matrix entries).
pub use num_complex::Complex64;
