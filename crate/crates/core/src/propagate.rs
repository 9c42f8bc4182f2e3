//! Propagation of mode amplitudes through `M` periods.
//!
//! States are moved into the Fourier sector basis, each sector is advanced
//! with the closed-form power of its block,
//!
//! ```text
//!     K^M = cosh(Mγ)·I + sinh(Mγ)/sinh(γ) · (K − cosh(γ)·I)
//! ```
//!
//! and the result is transformed back.

use std::f64::consts::PI;

use crate::algebra::{ccosh, csinh, NodeMatrix, Regime, C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::network::{b_sector_phase, build_kn, omega_pow, NetworkSpec};
use crate::spectrum::gamma_n;

/// Below this `|γ|` (or distance of `γ` from `±iπ`) the ratio
/// `sinh(Mγ)/sinh(γ)` is taken from its quadratic series.
pub const SERIES_THRESHOLD: f64 = 1e-6;

/// Tolerance for `det K = 1` and `cosh γ = tr K / 2`, relative to the size
/// of the entries.
pub const BLOCK_CONSISTENCY_TOL: f64 = 1e-10;

/// Interleaved mode amplitudes `(a_1, b_1, …, a_N, b_N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVector {
    amplitudes: Vec<C64>,
}

impl ModeVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() || amplitudes.len() % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "mode vector needs an even, non-zero length; got {}",
                amplitudes.len()
            )));
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite("mode vector"));
        }
        Ok(Self { amplitudes })
    }

    pub fn zeros(n_pairs: usize) -> Self {
        Self {
            amplitudes: vec![ZERO; 2 * n_pairs],
        }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn n_pairs(&self) -> usize {
        self.amplitudes.len() / 2
    }

    pub fn a(&self, k: usize) -> C64 {
        self.amplitudes[2 * k]
    }

    pub fn b(&self, k: usize) -> C64 {
        self.amplitudes[2 * k + 1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Σ_k |a_k|² − |b_k|²`, conserved by active networks.
    pub fn indefinite_form(&self) -> f64 {
        self.amplitudes
            .chunks(2)
            .map(|p| p[0].norm_sqr() - p[1].norm_sqr())
            .sum()
    }

    pub fn max_abs_diff(&self, other: &ModeVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// `sinh(Mγ)/sinh(γ)`, continuous through the removable singularities at
/// `γ = 0` (limit `M`) and `γ = ±iπ` (limit `(−1)^{M+1} M`).
pub fn stable_ratio(gamma: C64, m: usize) -> C64 {
    let mf = m as f64;
    let series = |d: C64| (d * d * ((mf * mf - 1.0) / 6.0) + 1.0) * mf;
    if gamma.norm() < SERIES_THRESHOLD {
        return series(gamma);
    }
    for pole in [C64::new(0.0, PI), C64::new(0.0, -PI)] {
        let d = gamma - pole;
        if d.norm() < SERIES_THRESHOLD {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            return series(d) * sign;
        }
    }
    csinh(gamma * mf) / csinh(gamma)
}

/// `K^M` for a unit-determinant block with eigenvalues `e^{±γ}`.
pub fn kn_power(k: &NodeMatrix, gamma: C64, m: usize) -> Result<NodeMatrix> {
    let scale = k.frobenius_norm().max(1.0);
    let det_err = (k.det() - 1.0).norm();
    if det_err > BLOCK_CONSISTENCY_TOL * scale * scale {
        return Err(Error::Consistency(format!(
            "block determinant differs from 1 by {det_err:e}"
        )));
    }
    let half_trace = k.trace() / 2.0;
    let trace_err = (ccosh(gamma) - half_trace).norm();
    if trace_err > BLOCK_CONSISTENCY_TOL * scale {
        return Err(Error::Consistency(format!(
            "cosh γ differs from tr K / 2 by {trace_err:e}"
        )));
    }
    if m == 0 {
        return Ok(NodeMatrix::IDENTITY);
    }
    let c = ccosh(gamma * m as f64);
    let r = stable_ratio(gamma, m);
    Ok(NodeMatrix::new(
        c + r * (k.m11 - half_trace),
        r * k.m12,
        r * k.m21,
        c + r * (k.m22 - half_trace),
    ))
}

/// `[1, 0, ω^n, 0, ω^{2n}, 0, …]/√N`.
pub fn superposition_input(n_pairs: usize, n: usize) -> Result<ModeVector> {
    if n >= n_pairs {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: n_pairs,
        });
    }
    let norm = 1.0 / (n_pairs as f64).sqrt();
    let mut v = ModeVector::zeros(n_pairs);
    for k in 0..n_pairs {
        v.amplitudes[2 * k] = omega_pow(n_pairs, (k * n) as i64) * norm;
    }
    Ok(v)
}

/// Unit amplitude in mode `j`, counted from 1.
pub fn single_mode_input(n_pairs: usize, j: usize) -> Result<ModeVector> {
    if j == 0 || j > 2 * n_pairs {
        return Err(Error::InvalidArgument(format!(
            "mode {j} outside 1..={}",
            2 * n_pairs
        )));
    }
    let mut v = ModeVector::zeros(n_pairs);
    v.amplitudes[j - 1] = ONE;
    Ok(v)
}

/// `K_n^M` for every sector of `spec`.
pub fn sector_powers(spec: &NetworkSpec) -> Result<Vec<NodeMatrix>> {
    (0..spec.n_pairs())
        .map(|n| kn_power(&build_kn(spec, n)?, gamma_n(spec, n)?, spec.periods()))
        .collect()
}

/// Applies `P^M` through the sector decomposition.
///
/// Sector coefficients at or below the rounding floor of the transform
/// (`4N·ε·‖state‖`) are set to zero before propagation, so that rounding
/// residue in a growing sector is not amplified by `e^{Mγ}`.
pub fn propagate(state: &ModeVector, spec: &NetworkSpec) -> Result<ModeVector> {
    let nn = spec.n_pairs();
    if state.len() != spec.modes() {
        return Err(Error::DimensionMismatch {
            expected: spec.modes(),
            got: state.len(),
        });
    }
    let powers = sector_powers(spec)?;
    let norm = 1.0 / (nn as f64).sqrt();

    let a_phase = |n: usize, k: usize| omega_pow(nn, (k * n) as i64) * norm;
    let b_phase = |n: usize, k: usize| b_sector_phase(nn, n, k) * norm;

    let floor = 4.0 * nn as f64 * f64::EPSILON * state.norm_sqr().sqrt();
    let flush = |z: C64| if z.norm() <= floor { ZERO } else { z };

    let mut out = ModeVector::zeros(nn);
    for (n, kp) in powers.iter().enumerate() {
        let (mut alpha, mut beta) = (ZERO, ZERO);
        for k in 0..nn {
            alpha += a_phase(n, k).conj() * state.a(k);
            beta += b_phase(n, k).conj() * state.b(k);
        }
        let (alpha, beta) = (flush(alpha), flush(beta));
        let (alpha, beta) = (
            kp.m11 * alpha + kp.m12 * beta,
            kp.m21 * alpha + kp.m22 * beta,
        );
        for k in 0..nn {
            out.amplitudes[2 * k] += a_phase(n, k) * alpha;
            out.amplitudes[2 * k + 1] += b_phase(n, k) * beta;
        }
    }
    Ok(out)
}

fn require_ising(spec: &NetworkSpec, what: &str) -> Result<()> {
    if spec.ising_constrained() && spec.regime() == Regime::Su11 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} requires an Ising-constrained su11 network"
        )))
    }
}

/// Output amplitude in mode `a_n` (mode `2n+1` counting from 1) for unit
/// input in the same mode:
///
/// ```text
///     (1/N) Σ_m [cosh Mγ_m + i sin(2πm/N) sinh Mγ_m / sinh γ_m]
/// ```
pub fn single_mode_output_amplitude(spec: &NetworkSpec, n: usize) -> Result<C64> {
    require_ising(spec, "the single-mode amplitude sum")?;
    spec.check_index(n)?;
    let nn = spec.n_pairs();
    let m = spec.periods();
    let mut sum = ZERO;
    for s in 0..nn {
        let g = gamma_n(spec, s)?;
        let phase = (2.0 * PI * s as f64 / nn as f64).sin();
        sum += ccosh(g * m as f64) + I * phase * stable_ratio(g, m);
    }
    Ok(sum / nn as f64)
}

pub fn output_intensities(state: &ModeVector) -> Vec<f64> {
    state.amplitudes.iter().map(|z| z.norm_sqr()).collect()
}

/// `M·γ_0`: the log-growth of the uniform sector over the whole network.
pub fn global_amplification(spec: &NetworkSpec) -> Result<f64> {
    require_ising(spec, "global amplification")?;
    Ok(spec.periods() as f64 * gamma_n(spec, 0)?.re)
}

/// Dependence of the sector blocks on the input phase index:
///
/// ```text
///     S = max_n ‖K_n − K̄‖_F / ‖K̄‖_F,    K̄ = (1/N) Σ_n K_n
/// ```
///
/// `K̄ = cosh θ · B(φ)` is the phase-independent part. On the Ising line
/// `S = 1/cosh φ`, so the response loses its phase dependence as the
/// single-node gain grows.
pub fn phase_sensitivity(spec: &NetworkSpec) -> Result<f64> {
    require_ising(spec, "phase sensitivity")?;
    let blocks = (0..spec.n_pairs())
        .map(|n| build_kn(spec, n))
        .collect::<Result<Vec<_>>>()?;
    let inv = C64::new(1.0 / blocks.len() as f64, 0.0);
    let mean = blocks
        .iter()
        .fold(NodeMatrix::new(ZERO, ZERO, ZERO, ZERO), |acc, k| {
            NodeMatrix::new(
                acc.m11 + k.m11,
                acc.m12 + k.m12,
                acc.m21 + k.m21,
                acc.m22 + k.m22,
            )
        });
    let mean = mean.scale(inv);
    let denom = mean.frobenius_norm();
    Ok(blocks
        .iter()
        .map(|k| (*k - mean).frobenius_norm() / denom)
        .fold(0.0, f64::max))
}
