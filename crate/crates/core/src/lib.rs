//! Spectra and propagation for Ising-type networks of two-mode nodes.
//!
//! A column of `N` node pairs is mixed pairwise by `A(θ)` and then, shifted
//! by one mode, by `B(φ)`; repeating the column `M` times builds the
//! network. With SU(1,1) nodes (parametric amplifiers) the network shows a
//! transition at single-node gain 2; with SU(2) nodes (beam splitters) at
//! transmittance 1/2.
//!
//! - [`algebra`]: complex helpers, node matrices, the Ising angle relation
//! - [`network`]: transfer matrix, DFT/shift matrices, sector blocks `K_n`
//! - [`spectrum`]: exponents `γ_n`, critical point, sweeps, regime labels
//! - [`propagate`]: `M`-period propagation and observables
//! - [`oracle`]: dense brute-force references

pub mod algebra;
pub mod error;
pub mod matrix;
pub mod network;
pub mod oracle;
pub mod propagate;
pub mod spectrum;

pub use algebra::{node_matrix, NodeMatrix, Rapidity, Regime, C64};
pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use network::{BlockSpectrum, NetworkSpec};
pub use propagate::ModeVector;
pub use spectrum::{RegimeLabel, Sweep, SweepConfig, SweepRow};
