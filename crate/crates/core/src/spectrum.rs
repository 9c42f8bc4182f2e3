//! Sector exponents `γ_n`, the critical point, and kink detection along a
//! sweep of the coupling angle.
//!
//! The eigenvalues of `K_n` are `e^{±γ_n}` with
//!
//! ```text
//!     cosh γ_n = cosh θ cosh φ − cos(2πn/N) sinh θ sinh φ
//! ```
//!
//! On the Ising line (`coth θ = cosh φ`) the right-hand side becomes
//! `coth φ cosh φ − cos(2πn/N)`, and `γ_0` touches zero exactly where
//! `sinh φ = 1`, i.e. single-node gain `cosh²φ = 2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use crate::algebra::{acosh_split, csinh, Rapidity, Regime, C64};
use crate::error::{Error, Result};
use crate::network::NetworkSpec;

/// Single-node gain at the active-network transition.
pub const CRITICAL_GAIN: f64 = 2.0;

/// Beam-splitter transmittance at the passive-network transition.
pub const CRITICAL_TRANSMITTANCE: f64 = 0.5;

/// Tolerance for labelling a parameter value as critical.
pub const CRITICAL_TOL: f64 = 1e-10;

/// A candidate kink is accepted when its derivative jump exceeds this
/// multiple of the largest jump seen at grid points away from it. Away from
/// the kink the one-sided estimates differ by `O(h·γ'')`, which is below
/// `1e-3` on the default grids, while the kink jump is 4 (active) or 2
/// (passive); see `kink_factor_separates_kink_from_background`.
pub const KINK_FACTOR: f64 = 10.0;

/// Critical coupling `φ_c = arccosh √2`, where `sinh φ_c = 1`.
pub fn critical_phi() -> f64 {
    CRITICAL_GAIN.sqrt().acosh()
}

/// `(z − 1)/2` for `z = cosh γ_n`, formed without cancellation:
///
/// ```text
///     (cosh γ_n − 1)/2 = sinh²((θ − φ)/2) + sin²(πn/N) sinh θ sinh φ
/// ```
fn half_excess(spec: &NetworkSpec, n: usize) -> f64 {
    let theta = spec.theta().value();
    let phi = spec.phi().value();
    let sd = csinh((theta - phi) / 2.0);
    let s = (PI * n as f64 / spec.n_pairs() as f64).sin();
    let w = sd * sd + s * s * csinh(theta) * csinh(phi);
    // Valid specs keep both rapidities on the same axis, so w is real.
    match spec.regime() {
        Regime::Su11 => w.re.max(0.0),
        Regime::Su2 => w.re.clamp(-1.0, 0.0),
    }
}

/// `cosh γ_n` straight from the sector formula.
pub fn cosh_gamma_n(spec: &NetworkSpec, n: usize) -> Result<C64> {
    spec.check_index(n)?;
    let (t, p) = (spec.theta(), spec.phi());
    let c = (2.0 * PI * n as f64 / spec.n_pairs() as f64).cos();
    Ok(t.cosh() * p.cosh() - c * t.sinh() * p.sinh())
}

/// Sector exponent on the principal branch: `Re γ_n ≥ 0`, and for passive
/// networks `γ_n = i·g` with `g ∈ [0, π]`.
pub fn gamma_n(spec: &NetworkSpec, n: usize) -> Result<C64> {
    spec.check_index(n)?;
    let w = half_excess(spec, n);
    let z_minus_1 = C64::new(2.0 * w, 0.0);
    Ok(acosh_split(z_minus_1 + 1.0, z_minus_1))
}

/// All `γ_n`, `n = 0..N`.
pub fn gammas(spec: &NetworkSpec) -> Vec<C64> {
    (0..spec.n_pairs())
        .map(|n| gamma_n(spec, n).expect("index in range"))
        .collect()
}

/// `γ_0` on the Ising line as a function of `φ` alone.
pub fn ising_gamma0(phi: f64) -> Result<f64> {
    let spec = NetworkSpec::ising(2, 1, phi)?;
    Ok(gamma_n(&spec, 0)?.re)
}

/// `γ_n` from the integral representation
///
/// ```text
///     γ_n = ∫_0^π dν/π · log[2(coth φ cosh φ − cos(2πn/N) − cos ν)]
/// ```
///
/// evaluated with the midpoint rule in `t`, `ν = π t²`. The graded variable
/// absorbs the logarithmic singularity at `ν = 0` that appears when
/// `γ_n = 0`; no node ever lands on `ν = 0`.
pub fn gamma_integral(spec: &NetworkSpec, n: usize, panels: usize) -> Result<f64> {
    if !spec.ising_constrained() {
        return Err(Error::InvalidArgument(
            "the integral representation is defined on the Ising line only".into(),
        ));
    }
    spec.check_index(n)?;
    if panels == 0 {
        return Err(Error::InvalidArgument("need at least one panel".into()));
    }
    // 2(cosh γ − cos ν) = 4w + 4 sin²(ν/2)
    let w = half_excess(spec, n);
    let h = 1.0 / panels as f64;
    let mut sum = 0.0;
    for j in 0..panels {
        let t = (j as f64 + 0.5) * h;
        let nu = PI * t * t;
        let s = (0.5 * nu).sin();
        let arg = 4.0 * (w + s * s);
        if !(arg > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "integrand argument {arg:e} not positive at ν = {nu}"
            )));
        }
        sum += arg.ln() * 2.0 * t;
    }
    Ok(sum * h)
}

/// Parameters of the transition for one regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub regime: Regime,
    /// `φ_c` (active) or `φ'_c` (passive).
    pub phi_c: f64,
    pub gain_c: Option<f64>,
    pub transmittance_c: Option<f64>,
    /// Ising transition temperature in units of the coupling energy.
    pub kt_c_over_eps: Option<f64>,
}

pub fn critical_point(regime: Regime) -> CriticalPoint {
    match regime {
        Regime::Su11 => {
            let phi_c = critical_phi();
            CriticalPoint {
                regime,
                phi_c,
                gain_c: Some(CRITICAL_GAIN),
                transmittance_c: None,
                kt_c_over_eps: Some(2.0 / phi_c),
            }
        }
        Regime::Su2 => CriticalPoint {
            regime,
            phi_c: FRAC_PI_4,
            gain_c: None,
            transmittance_c: Some(CRITICAL_TRANSMITTANCE),
            kt_c_over_eps: None,
        },
    }
}

/// `γ_0` of the quarter-turn beam-splitter network (`θ = iπ/4`) as a
/// real angle: `cos γ_0 = (cos φ' + sin φ')/√2`.
pub fn su2_gamma0(phi_prime: f64) -> Result<f64> {
    if !(phi_prime > 0.0 && phi_prime < FRAC_PI_2) {
        return Err(Error::InvalidArgument(format!(
            "φ' = {phi_prime} outside (0, π/2)"
        )));
    }
    // (cos φ' + sin φ')/√2 = cos(φ' − π/4), and |φ' − π/4| < π/4 here.
    Ok((phi_prime - FRAC_PI_4).abs())
}

/// Single-node amplification `cosh² φ`.
pub fn gain(phi: f64) -> f64 {
    phi.cosh().powi(2)
}

/// Beam-splitter transmittance `sin² φ'`.
pub fn transmittance(phi_prime: f64) -> f64 {
    phi_prime.sin().powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeLabel {
    Quantum,
    Classical,
    Diabatic,
    Adiabatic,
    Critical,
}

impl RegimeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeLabel::Quantum => "quantum",
            RegimeLabel::Classical => "classical",
            RegimeLabel::Diabatic => "diabatic",
            RegimeLabel::Adiabatic => "adiabatic",
            RegimeLabel::Critical => "critical",
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn label_active(phi: f64) -> RegimeLabel {
    let s = phi.sinh();
    if (s - 1.0).abs() <= CRITICAL_TOL {
        RegimeLabel::Critical
    } else if s < 1.0 {
        RegimeLabel::Quantum
    } else {
        RegimeLabel::Classical
    }
}

fn label_passive(phi_prime: f64) -> RegimeLabel {
    let d = phi_prime - FRAC_PI_4;
    if d.abs() <= CRITICAL_TOL {
        RegimeLabel::Critical
    } else if d < 0.0 {
        RegimeLabel::Diabatic
    } else {
        RegimeLabel::Adiabatic
    }
}

/// Active networks on the Ising line are phase sensitive ("quantum") while
/// `sinh φ < 1` and phase insensitive ("classical") above; quarter-turn
/// beam-splitter networks are diabatic below `φ' = π/4` and adiabatic above.
pub fn regime_classify(spec: &NetworkSpec) -> Result<RegimeLabel> {
    if spec.ising_constrained() {
        Ok(label_active(spec.phi().magnitude()))
    } else if spec.is_quarter_turn_beam_splitter() {
        Ok(label_passive(spec.phi().magnitude()))
    } else {
        Err(Error::ClassificationUndefined(
            "needs an Ising-constrained su11 network or an su2 network with θ = iπ/4".into(),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureMapping {
    pub epsilon: f64,
    pub kt: f64,
}

/// `φ = 2ε/kT`.
pub fn phi_from_temperature(map: TemperatureMapping) -> Result<Rapidity> {
    let TemperatureMapping { epsilon, kt } = map;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "ε must be positive, got {epsilon}"
        )));
    }
    if !(kt > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "kT must be positive, got {kt}"
        )));
    }
    Rapidity::real(2.0 * epsilon / kt)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub phi: f64,
    pub gamma0: f64,
    /// `(γ_0(φ) − γ_0(φ − h))/h`
    pub dleft: f64,
    /// `(γ_0(φ + h) − γ_0(φ))/h`
    pub dright: f64,
    /// `cosh²φ` for active networks, `sin²φ'` for passive ones.
    pub gain_or_transmittance: f64,
    /// `cosh²θ = coth²φ` on the Ising line; absent for passive networks.
    pub theta_gain: Option<f64>,
    pub label: RegimeLabel,
}

impl SweepRow {
    pub fn jump(&self) -> f64 {
        (self.dright - self.dleft).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kink {
    pub phi: f64,
    pub gamma0: f64,
    pub jump: f64,
    /// Largest `|dright − dleft|` at grid points more than `2h` away.
    pub background: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub regime: Regime,
    pub rows: Vec<SweepRow>,
    pub kink: Option<Kink>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub regime: Regime,
    pub phi_lo: f64,
    pub phi_hi: f64,
    pub steps: usize,
    pub fd_step: f64,
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        let SweepConfig {
            regime,
            phi_lo,
            phi_hi,
            steps,
            fd_step,
        } = *self;
        if !(phi_lo.is_finite() && phi_hi.is_finite() && fd_step.is_finite()) {
            return Err(Error::NonFinite("sweep grid"));
        }
        if steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "steps must be >= 2, got {steps}"
            )));
        }
        if fd_step <= 0.0 {
            return Err(Error::InvalidArgument("fd-step must be positive".into()));
        }
        if !(phi_lo < phi_hi) {
            return Err(Error::InvalidArgument(format!(
                "need phi-lo < phi-hi, got [{phi_lo}, {phi_hi}]"
            )));
        }
        if phi_lo - fd_step <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "phi-lo − fd-step must stay positive, got {}",
                phi_lo - fd_step
            )));
        }
        if regime == Regime::Su2 && phi_hi + fd_step >= FRAC_PI_2 {
            return Err(Error::InvalidArgument(
                "passive sweep must stay below π/2 − fd-step".into(),
            ));
        }
        Ok(())
    }
}

fn sweep_gamma0_at(regime: Regime, phi: f64) -> f64 {
    match regime {
        Regime::Su11 => ising_gamma0(phi).expect("validated positive φ"),
        Regime::Su2 => su2_gamma0(phi).expect("validated φ' in range"),
    }
}

fn sweep_row(cfg: &SweepConfig, phi: f64, label: Option<RegimeLabel>) -> SweepRow {
    let g = |x| sweep_gamma0_at(cfg.regime, x);
    let h = cfg.fd_step;
    let g0 = g(phi);
    let (gain_or_transmittance, theta_gain, auto_label) = match cfg.regime {
        Regime::Su11 => (
            gain(phi),
            Some((phi.cosh() / phi.sinh()).powi(2)),
            label_active(phi),
        ),
        Regime::Su2 => (transmittance(phi), None, label_passive(phi)),
    };
    SweepRow {
        phi,
        gamma0: g0,
        dleft: (g0 - g(phi - h)) / h,
        dright: (g(phi + h) - g0) / h,
        gain_or_transmittance,
        theta_gain,
        label: label.unwrap_or(auto_label),
    }
}

/// Golden-section search for the extremum of `f` on `[lo, hi]`; `sign = 1`
/// finds a minimum, `-1` a maximum.
fn golden_extremum(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, sign: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = sign * f(x1);
    let mut f2 = sign * f(x2);
    for _ in 0..200 {
        if hi - lo <= 1e-14 * (1.0 + lo.abs()) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = sign * f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = sign * f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Tabulates `γ_0` and its one-sided difference quotients on a uniform grid
/// and locates a slope discontinuity.
///
/// Candidate kinks are grid intervals where the chord slope of `γ_0` changes
/// sign; each is refined to the extremum of `γ_0` inside the bracket and
/// accepted if its derivative jump beats the grid background by
/// [`KINK_FACTOR`]. The accepted kink is inserted as an extra row labelled
/// critical, keeping rows ordered by `φ`.
pub fn sweep_gamma0(cfg: &SweepConfig) -> Result<Sweep> {
    cfg.validate()?;
    let g = |x| sweep_gamma0_at(cfg.regime, x);
    let span = cfg.phi_hi - cfg.phi_lo;
    let last = cfg.steps - 1;
    let grid: Vec<f64> = (0..cfg.steps)
        .map(|i| {
            if i == last {
                cfg.phi_hi
            } else {
                cfg.phi_lo + span * i as f64 / last as f64
            }
        })
        .collect();
    let mut rows: Vec<SweepRow> = grid.iter().map(|&p| sweep_row(cfg, p, None)).collect();
    let values: Vec<f64> = rows.iter().map(|r| r.gamma0).collect();

    let mut best: Option<Kink> = None;
    for i in 1..last {
        let before = values[i] - values[i - 1];
        let after = values[i + 1] - values[i];
        let sign = if before < 0.0 && after >= 0.0 {
            1.0
        } else if before > 0.0 && after <= 0.0 {
            -1.0
        } else {
            continue;
        };
        let phi = golden_extremum(g, grid[i - 1], grid[i + 1], sign);
        let row = sweep_row(cfg, phi, None);
        let background = rows
            .iter()
            .filter(|r| (r.phi - phi).abs() > 2.0 * cfg.fd_step)
            .map(SweepRow::jump)
            .fold(0.0, f64::max);
        let kink = Kink {
            phi,
            gamma0: row.gamma0,
            jump: row.jump(),
            background,
        };
        if kink.jump > KINK_FACTOR * background && best.is_none_or(|b| kink.jump > b.jump) {
            best = Some(kink);
        }
    }

    if let Some(k) = best {
        let at = rows.partition_point(|r| r.phi < k.phi);
        rows.insert(at, sweep_row(cfg, k.phi, Some(RegimeLabel::Critical)));
    }
    Ok(Sweep {
        regime: cfg.regime,
        rows,
        kink: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn gamma0_vanishes_at_critical_point() {
        let spec = NetworkSpec::ising(4, 1, critical_phi()).unwrap();
        let g = gamma_n(&spec, 0).unwrap();
        assert!(g.norm() <= 1e-10, "γ_0 = {g}");
        assert!((cosh_gamma_n(&spec, 0).unwrap().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn half_period_sector() {
        for phi in [0.3, 0.9, 2.0] {
            let spec = NetworkSpec::ising(6, 1, phi).unwrap();
            let g = gamma_n(&spec, 3).unwrap();
            let want = f64::cosh(phi) / f64::tanh(phi) + 1.0;
            assert!((g.re.cosh() - want).abs() < 1e-12 * want);
            assert_eq!(g.im, 0.0);
        }
    }

    #[test]
    fn round_trip_through_cosh() {
        for spec in [
            NetworkSpec::active(5, 1, 0.3, 1.4).unwrap(),
            NetworkSpec::ising(7, 1, 0.6).unwrap(),
            NetworkSpec::passive(5, 1, 0.4, 1.2).unwrap(),
        ] {
            for n in 0..spec.n_pairs() {
                let g = gamma_n(&spec, n).unwrap();
                let rhs = cosh_gamma_n(&spec, n).unwrap();
                assert!((crate::algebra::ccosh(g) - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn passive_exponents_are_imaginary_in_range() {
        let spec = NetworkSpec::passive(6, 1, 1.3, 0.2).unwrap();
        for g in gammas(&spec) {
            assert!(g.re.abs() <= 1e-10);
            assert!(g.im >= 0.0 && g.im <= PI);
        }
        // K = -I sector: cosh γ = -1 gives γ = iπ
        let spec = NetworkSpec::passive(2, 1, FRAC_PI_2, FRAC_PI_2).unwrap();
        let g = gamma_n(&spec, 1).unwrap();
        assert!((g - C64::new(0.0, PI)).norm() < 1e-7);
    }

    #[test]
    fn exponents_symmetric_and_increasing() {
        let spec = NetworkSpec::ising(9, 1, 0.55).unwrap();
        let g = gammas(&spec);
        for n in 1..9 {
            assert!((g[n] - g[9 - n]).norm() <= 1e-12);
        }
        for n in 0..4 {
            assert!(g[n + 1].re > g[n].re + 1e-12);
        }
    }

    #[test]
    fn integral_matches_closed_form() {
        for phi in [0.3, 0.7, 1.3, 2.5] {
            let spec = NetworkSpec::ising(5, 1, phi).unwrap();
            for n in 0..5 {
                let exact = gamma_n(&spec, n).unwrap().re;
                let quad = gamma_integral(&spec, n, 1 << 12).unwrap();
                assert!(
                    (quad - exact).abs() <= 1e-6,
                    "φ={phi} n={n}: {quad} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn integral_at_critical_point() {
        let spec = NetworkSpec::ising(5, 1, critical_phi()).unwrap();
        let quad = gamma_integral(&spec, 0, 1 << 12).unwrap();
        assert!(quad.abs() <= 1e-4, "{quad}");
    }

    #[test]
    fn integral_error_shrinks_with_panels() {
        let spec = NetworkSpec::ising(4, 1, 1.1).unwrap();
        let exact = gamma_n(&spec, 1).unwrap().re;
        let mut prev = f64::INFINITY;
        for k in 6..13 {
            let err = (gamma_integral(&spec, 1, 1 << k).unwrap() - exact).abs();
            assert!(err < prev, "panels 2^{k}: {err} !< {prev}");
            prev = err;
        }
    }

    #[test]
    fn integral_requires_ising_line() {
        let spec = NetworkSpec::active(4, 1, 0.4, 0.9).unwrap();
        assert!(gamma_integral(&spec, 0, 64).is_err());
        let spec = NetworkSpec::ising(4, 1, 0.9).unwrap();
        assert!(gamma_integral(&spec, 0, 0).is_err());
        assert!(gamma_integral(&spec, 4, 64).is_err());
    }

    #[test]
    fn critical_constants() {
        let cp = critical_point(Regime::Su11);
        assert_eq!(cp.gain_c, Some(2.0));
        assert!((cp.phi_c.cosh().powi(2) - 2.0).abs() < 1e-15);
        assert!((cp.kt_c_over_eps.unwrap() - 2.269).abs() < 1e-3);
        let cp = critical_point(Regime::Su2);
        assert_eq!(cp.transmittance_c, Some(0.5));
        assert!((transmittance(cp.phi_c) - 0.5).abs() < 1e-15);
        assert!(su2_gamma0(cp.phi_c).unwrap() == 0.0);
    }

    #[test]
    fn su2_gamma0_limits_and_cross_check() {
        let g = su2_gamma0(1e-9).unwrap();
        assert!((g - FRAC_PI_4).abs() < 1e-8);
        for p in [0.1, FRAC_PI_4 + 0.05, PI / 3.0, 1.5] {
            let naive = ((p.cos() + p.sin()) / SQRT_2).acos();
            assert!((su2_gamma0(p).unwrap() - naive).abs() < 1e-7);
            let spec = NetworkSpec::beam_splitter(4, 1, p).unwrap();
            let general = gamma_n(&spec, 0).unwrap();
            assert!((general.im.abs() - su2_gamma0(p).unwrap()).abs() < 1e-10);
        }
        assert!(su2_gamma0(0.0).is_err());
        assert!(su2_gamma0(FRAC_PI_2).is_err());
    }

    #[test]
    fn classification() {
        let l = |phi| regime_classify(&NetworkSpec::ising(4, 1, phi).unwrap()).unwrap();
        assert_eq!(l(0.5), RegimeLabel::Quantum);
        assert_eq!(l(critical_phi()), RegimeLabel::Critical);
        assert_eq!(l(1.2), RegimeLabel::Classical);
        let l = |p| regime_classify(&NetworkSpec::beam_splitter(4, 1, p).unwrap()).unwrap();
        assert_eq!(l(0.9), RegimeLabel::Adiabatic);
        assert_eq!(l(0.5), RegimeLabel::Diabatic);
        assert_eq!(l(FRAC_PI_4), RegimeLabel::Critical);
        let unconstrained = NetworkSpec::active(4, 1, 0.3, 0.5).unwrap();
        assert!(matches!(
            regime_classify(&unconstrained),
            Err(Error::ClassificationUndefined(_))
        ));
    }

    #[test]
    fn temperature_mapping() {
        let r = phi_from_temperature(TemperatureMapping {
            epsilon: 1.0,
            kt: 2.269,
        })
        .unwrap();
        assert!((r.magnitude() - critical_phi()).abs() < 1e-3);
        let r = phi_from_temperature(TemperatureMapping {
            epsilon: 1.0,
            kt: 1.0,
        })
        .unwrap();
        assert_eq!(r.magnitude(), 2.0);
        let r = phi_from_temperature(TemperatureMapping {
            epsilon: 1.0,
            kt: 1e300,
        })
        .unwrap();
        assert!(r.magnitude() < 1e-299);
        assert!(phi_from_temperature(TemperatureMapping {
            epsilon: 1.0,
            kt: 0.0
        })
        .is_err());
        assert!(phi_from_temperature(TemperatureMapping {
            epsilon: -1.0,
            kt: 1.0
        })
        .is_err());
    }

    fn default_sweep(regime: Regime, lo: f64, hi: f64) -> Sweep {
        sweep_gamma0(&SweepConfig {
            regime,
            phi_lo: lo,
            phi_hi: hi,
            steps: 400,
            fd_step: 1e-5,
        })
        .unwrap()
    }

    #[test]
    fn sweep_finds_active_kink() {
        let s = default_sweep(Regime::Su11, 0.3, 1.6);
        assert_eq!(s.rows.len(), 401);
        let k = s.kink.unwrap();
        assert!((k.phi - critical_phi()).abs() < 1e-6);
        let crit: Vec<_> = s
            .rows
            .iter()
            .filter(|r| r.label == RegimeLabel::Critical)
            .collect();
        assert_eq!(crit.len(), 1);
        assert!(crit[0].gamma0 <= 1e-6);
        assert!(s.rows.windows(2).all(|w| w[0].phi <= w[1].phi));
    }

    /// Fine-grid oracle for the slope jump: near φ_c, γ_0 ≈ c|φ − φ_c|, so
    /// the jump is 2c. Estimate c from chords at shrinking offsets.
    fn oracle_jump(g: impl Fn(f64) -> f64, x0: f64) -> f64 {
        let mut est = 0.0;
        for k in 4..9 {
            let d = 10f64.powi(-k);
            est = (g(x0 + d) - g(x0)) / d + (g(x0 - d) - g(x0)) / d;
        }
        est
    }

    #[test]
    fn kink_factor_separates_kink_from_background() {
        let s = default_sweep(Regime::Su11, 0.3, 1.6);
        let k = s.kink.unwrap();
        let oracle = oracle_jump(|x| ising_gamma0(x).unwrap(), critical_phi());
        assert!((oracle - 4.0).abs() < 1e-3, "oracle jump {oracle}");
        assert!((k.jump - oracle).abs() < 1e-3, "{} vs {oracle}", k.jump);
        assert!(k.background < 1e-3);
        assert!(k.jump > KINK_FACTOR * k.background);
    }

    #[test]
    fn sweep_smooth_far_from_transition() {
        let s = default_sweep(Regime::Su11, 2.5, 3.5);
        assert!(s.kink.is_none());
        let row = s.rows.iter().min_by(|a, b| {
            (a.phi - 3.0)
                .abs()
                .partial_cmp(&(b.phi - 3.0).abs())
                .unwrap()
        });
        assert!(row.unwrap().jump() < 1e-4);
    }

    #[test]
    fn sweep_finds_passive_kink() {
        let s = default_sweep(Regime::Su2, 0.1, 1.4);
        let k = s.kink.unwrap();
        assert!((k.phi - FRAC_PI_4).abs() < 1e-8);
        assert!((k.jump - 2.0).abs() < 1e-3);
        assert!(s.rows.iter().all(|r| r.theta_gain.is_none()));
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        let bad = |lo, hi, steps, h| {
            sweep_gamma0(&SweepConfig {
                regime: Regime::Su11,
                phi_lo: lo,
                phi_hi: hi,
                steps,
                fd_step: h,
            })
            .is_err()
        };
        assert!(bad(0.5, 0.4, 10, 1e-5));
        assert!(bad(0.3, 1.0, 1, 1e-5));
        assert!(bad(0.3, 1.0, 10, 0.0));
        assert!(bad(0.0, 1.0, 10, 1e-5));
        assert!(bad(0.3, f64::NAN, 10, 1e-5));
    }
}
