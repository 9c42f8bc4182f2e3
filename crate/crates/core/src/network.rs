//! One-period transfer matrix of the 2N-mode network and its Fourier block
//! decomposition.
//!
//! Modes are stored interleaved, `(a_1, b_1, a_2, b_2, …, a_N, b_N)`, which
//! is 0-based index `2k` for `a` and `2k + 1` for `b` of node pair `k`.
//!
//! Each period first mixes every pair `(a_k, b_k)` with the node matrix
//! `A(θ)`, then mixes the shifted pairs `(b_k, a_{k+1})` with `B(φ)`,
//! wrapping `(b_N, a_1)` around the ring:
//!
//! ```text
//!     P = B_layer · A_layer
//! ```
//!
//! Conjugating with the Fourier basis from [`fourier_basis`] reduces `P` to
//! `N` independent 2×2 blocks `K_n`, one per phase index `n`.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::algebra::{
    ising_partner_theta, node_matrix, NodeMatrix, Rapidity, Regime, C64, I, ZERO,
};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::spectrum;

/// Tolerance for the Ising relation `coth θ = cosh φ` on explicitly supplied
/// angles.
pub const ISING_TOL: f64 = 1e-10;

/// Off-block mass above which a Fourier conjugation is rejected.
pub const OFF_BLOCK_TOL: f64 = 1e-8;

/// Elementwise agreement required between conjugated blocks and `K_n`.
pub const BLOCK_MATCH_TOL: f64 = 1e-10;

/// Full description of a network: `N` node pairs per column, `M` periods,
/// angles for the two node layers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkSpec {
    n_pairs: usize,
    periods: usize,
    theta: Rapidity,
    phi: Rapidity,
    ising_constrained: bool,
}

impl NetworkSpec {
    /// `periods = 0` is accepted and denotes the empty network.
    pub fn new(
        n_pairs: usize,
        periods: usize,
        theta: Rapidity,
        phi: Rapidity,
        ising_constrained: bool,
    ) -> Result<Self> {
        if n_pairs < 2 {
            return Err(Error::InvalidSpec(format!(
                "N must be at least 2 (got {n_pairs}); with N = 1 both layers act on the same pair"
            )));
        }
        if theta.regime() != phi.regime() {
            return Err(Error::InvalidSpec(format!(
                "θ is {} but φ is {}",
                theta.regime(),
                phi.regime()
            )));
        }
        if ising_constrained {
            if theta.regime() != Regime::Su11 {
                return Err(Error::InvalidSpec(
                    "the Ising constraint coth θ = cosh φ applies to su11 only".into(),
                ));
            }
            let (t, p) = (theta.magnitude(), phi.magnitude());
            if t <= 0.0 || p <= 0.0 {
                return Err(Error::InvalidSpec(
                    "Ising-constrained angles must be positive".into(),
                ));
            }
            let residual = (1.0 / t.tanh() - p.cosh()).abs();
            if residual > ISING_TOL * p.cosh() {
                return Err(Error::InvalidSpec(format!(
                    "coth θ = cosh φ violated by {residual:e}"
                )));
            }
        }
        Ok(Self {
            n_pairs,
            periods,
            theta,
            phi,
            ising_constrained,
        })
    }

    /// SU(1,1) network with `θ` derived from `coth θ = cosh φ`.
    pub fn ising(n_pairs: usize, periods: usize, phi: f64) -> Result<Self> {
        let phi = Rapidity::real(phi)?;
        let theta = ising_partner_theta(phi)?;
        Self::new(n_pairs, periods, theta, phi, true)
    }

    /// SU(1,1) network with independent angles.
    pub fn active(n_pairs: usize, periods: usize, theta: f64, phi: f64) -> Result<Self> {
        Self::new(
            n_pairs,
            periods,
            Rapidity::real(theta)?,
            Rapidity::real(phi)?,
            false,
        )
    }

    /// SU(2) network with mixing angles `θ'` and `φ'` (rapidities `iθ'`, `iφ'`).
    pub fn passive(n_pairs: usize, periods: usize, theta: f64, phi: f64) -> Result<Self> {
        Self::new(
            n_pairs,
            periods,
            Rapidity::imaginary(theta)?,
            Rapidity::imaginary(phi)?,
            false,
        )
    }

    /// Beam-splitter network with the `A` layer fixed at a quarter turn,
    /// `θ = iπ/4`, leaving `φ'` as the only parameter.
    pub fn beam_splitter(n_pairs: usize, periods: usize, phi_prime: f64) -> Result<Self> {
        Self::passive(n_pairs, periods, FRAC_PI_4, phi_prime)
    }

    pub fn with_periods(self, periods: usize) -> Self {
        Self { periods, ..self }
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn modes(&self) -> usize {
        2 * self.n_pairs
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    pub fn theta(&self) -> Rapidity {
        self.theta
    }

    pub fn phi(&self) -> Rapidity {
        self.phi
    }

    pub fn regime(&self) -> Regime {
        self.phi.regime()
    }

    pub fn ising_constrained(&self) -> bool {
        self.ising_constrained
    }

    /// True for the SU(2) family with `θ = iπ/4`.
    pub fn is_quarter_turn_beam_splitter(&self) -> bool {
        self.regime() == Regime::Su2 && (self.theta.magnitude() - FRAC_PI_4).abs() <= 1e-12
    }

    pub(crate) fn check_index(&self, n: usize) -> Result<()> {
        if n >= self.n_pairs {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: self.n_pairs,
            });
        }
        Ok(())
    }
}

/// `ω^k` with `ω = e^{2πi/N}`, reduced mod `N` before evaluating.
pub fn omega_pow(n: usize, k: i64) -> C64 {
    let r = k.rem_euclid(n as i64) as f64;
    C64::from_polar(1.0, 2.0 * PI * r / n as f64)
}

/// `blockdiag(A, …, A)` on pairs `(a_k, b_k)`.
pub fn build_a_layer(spec: &NetworkSpec) -> DenseMatrix {
    let a = node_matrix(spec.theta);
    DenseMatrix::block_diagonal(&vec![a; spec.n_pairs])
}

/// `B` on pairs `(b_k, a_{k+1})`; the last pair wraps to `(b_N, a_1)`,
/// which puts `B_22` top-left, `B_21` top-right, `B_12` bottom-left and
/// `B_11` bottom-right.
pub fn build_b_layer(spec: &NetworkSpec) -> DenseMatrix {
    let b = node_matrix(spec.phi);
    let dim = spec.modes();
    let mut m = DenseMatrix::zeros(dim);
    for k in 0..spec.n_pairs {
        let (r, c) = (2 * k + 1, (2 * k + 2) % dim);
        m[(r, r)] = b.m11;
        m[(r, c)] = b.m12;
        m[(c, r)] = b.m21;
        m[(c, c)] = b.m22;
    }
    m
}

/// One-period transfer matrix.
pub fn build_p(spec: &NetworkSpec) -> DenseMatrix {
    &build_b_layer(spec) * &build_a_layer(spec)
}

/// `F[k][l] = ω^{kl} / √N` with 0-based `k`, `l`.
pub fn dft_matrix(n: usize) -> DenseMatrix {
    let norm = 1.0 / (n as f64).sqrt();
    DenseMatrix::from_fn(n, |k, l| omega_pow(n, (k * l) as i64) * norm)
}

/// Cyclic shift, `S[k][k+1] = 1` with wraparound; `(S x)_k = x_{k+1}`.
pub fn shift_matrix(n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, |k, l| {
        if (k + 1) % n == l {
            C64::new(1.0, 0.0)
        } else {
            ZERO
        }
    })
}

/// Phase carried by the `b` basis vector of sector `n` at node `k`:
/// `-ω^{(k+1)n}`. The extra `-ω^n` relative to the `a` vector is what makes
/// the conjugated blocks coincide entry-for-entry with [`build_kn`].
pub fn b_sector_phase(n_pairs: usize, n: usize, k: usize) -> C64 {
    -omega_pow(n_pairs, ((k + 1) * n) as i64)
}

/// Unitary `W` whose columns `2n` and `2n+1` span phase sector `n`:
/// column `2n` has `a_k = ω^{kn}/√N`, column `2n+1` has
/// `b_k = -ω^{(k+1)n}/√N`. This is the DFT over the node index applied to
/// both members of each pair, with a fixed per-sector phase on the `b`
/// column.
pub fn fourier_basis(n_pairs: usize) -> DenseMatrix {
    let norm = 1.0 / (n_pairs as f64).sqrt();
    let mut w = DenseMatrix::zeros(2 * n_pairs);
    for k in 0..n_pairs {
        for n in 0..n_pairs {
            w[(2 * k, 2 * n)] = omega_pow(n_pairs, (k * n) as i64) * norm;
            w[(2 * k + 1, 2 * n + 1)] = b_sector_phase(n_pairs, n, k) * norm;
        }
    }
    w
}

/// Sector block
///
/// ```text
///   K_n = [  CθCφ + SθSφ ω^{-n}    CθSφ − CφSθ ω^{n}  ]
///         [ −CθSφ + CφSθ ω^{-n}    CθCφ + SθSφ ω^{n}  ]
/// ```
///
/// with `C = cosh`, `S = i sinh`.
pub fn build_kn(spec: &NetworkSpec, n: usize) -> Result<NodeMatrix> {
    spec.check_index(n)?;
    let (ct, st) = (spec.theta.cosh(), I * spec.theta.sinh());
    let (cp, sp) = (spec.phi.cosh(), I * spec.phi.sinh());
    let w = omega_pow(spec.n_pairs, n as i64);
    let w_inv = w.conj();
    Ok(NodeMatrix::new(
        ct * cp + st * sp * w_inv,
        ct * sp - cp * st * w,
        -ct * sp + cp * st * w_inv,
        ct * cp + st * sp * w,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorBlock {
    pub n: usize,
    pub k: NodeMatrix,
    /// Eigenvalues of `k` are `e^{±gamma}`.
    pub gamma: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpectrum {
    pub blocks: Vec<SectorBlock>,
}

impl BlockSpectrum {
    pub fn block_matrices(&self) -> Vec<NodeMatrix> {
        self.blocks.iter().map(|b| b.k).collect()
    }

    /// `blockdiag(K_0, …, K_{N-1})` in sector ordering.
    pub fn block_diagonal(&self) -> DenseMatrix {
        DenseMatrix::block_diagonal(&self.block_matrices())
    }

    /// `e^{+γ_n}, e^{-γ_n}` for every sector.
    pub fn eigenvalues(&self) -> Vec<C64> {
        self.blocks
            .iter()
            .flat_map(|b| [b.gamma.exp(), (-b.gamma).exp()])
            .collect()
    }
}

/// Conjugates `P` into the Fourier basis, checks block-diagonality and
/// agreement with [`build_kn`], and returns the per-sector blocks.
pub fn block_decompose(spec: &NetworkSpec) -> Result<BlockSpectrum> {
    let p = build_p(spec);
    let w = fourier_basis(spec.n_pairs);
    let conj = &(&w.adjoint() * &p) * &w;
    let scale = p.max_abs().max(1.0);

    let mut off_block = 0.0f64;
    for i in 0..conj.dim() {
        for j in 0..conj.dim() {
            if i / 2 != j / 2 {
                off_block = off_block.max(conj[(i, j)].norm());
            }
        }
    }
    if off_block > OFF_BLOCK_TOL * scale {
        return Err(Error::Consistency(format!(
            "Fourier conjugation leaves off-block entry of size {off_block:e}"
        )));
    }

    let mut blocks = Vec::with_capacity(spec.n_pairs);
    for n in 0..spec.n_pairs {
        let k = build_kn(spec, n)?;
        let found = conj.block(2 * n, 2 * n);
        let diff = found.max_abs_diff(&k);
        if diff > BLOCK_MATCH_TOL * scale {
            return Err(Error::Consistency(format!(
                "sector {n}: conjugated block differs from K_n by {diff:e}"
            )));
        }
        let gamma = spectrum::gamma_n(spec, n)?;
        blocks.push(SectorBlock { n, k, gamma });
    }
    Ok(BlockSpectrum { blocks })
}
