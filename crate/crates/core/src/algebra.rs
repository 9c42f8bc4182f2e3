//! Complex scalars, 2×2 node matrices and coupling angles.
//!
//! A node mixes two modes with
//!
//! ```text
//!     [  cosh a    i sinh a ]
//!     [ -i sinh a  cosh a   ]
//! ```
//!
//! Real `a` gives an SU(1,1) amplifier, purely imaginary `a` an SU(2) beam
//! splitter. Both are unit-determinant and form a one-parameter group in `a`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance on the off-component of a rapidity before it is considered
/// contaminated.
pub const REGIME_TOL: f64 = 1e-12;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// cosh(x + iy) = cosh x cos y + i sinh x sin y
pub fn ccosh(z: C64) -> C64 {
    C64::new(z.re.cosh() * z.im.cos(), z.re.sinh() * z.im.sin())
}

/// sinh(x + iy) = sinh x cos y + i cosh x sin y
pub fn csinh(z: C64) -> C64 {
    C64::new(z.re.sinh() * z.im.cos(), z.re.cosh() * z.im.sin())
}

/// Principal inverse hyperbolic cosine, `log(z + sqrt(z-1) sqrt(z+1))`.
///
/// `z_minus_1` is passed separately so callers that can form `z - 1`
/// without cancellation keep full absolute accuracy near `z = 1`. The result
/// has `Re >= 0`; for real `z` in `[-1, 1]` it is `i·arccos z`.
pub fn acosh_split(z: C64, z_minus_1: C64) -> C64 {
    let z_plus_1 = z_minus_1 + 2.0;
    (z + z_minus_1.sqrt() * z_plus_1.sqrt()).ln()
}

pub fn acosh(z: C64) -> C64 {
    acosh_split(z, z - 1.0)
}

pub(crate) fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Which group the node matrices belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Active components (amplifiers); real rapidities.
    Su11,
    /// Passive components (beam splitters); imaginary rapidities.
    Su2,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Su11 => f.write_str("su11"),
            Regime::Su2 => f.write_str("su2"),
        }
    }
}

/// Coupling angle of a node, tagged with its regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rapidity {
    value: C64,
    regime: Regime,
}

impl Rapidity {
    /// Checks that the off-component vanishes for the given regime.
    pub fn new(value: C64, regime: Regime) -> Result<Self> {
        if !is_finite(value) {
            return Err(Error::NonFinite("rapidity"));
        }
        let off = match regime {
            Regime::Su11 => value.im,
            Regime::Su2 => value.re,
        };
        if off.abs() > REGIME_TOL {
            return Err(Error::RegimeMismatch {
                re: value.re,
                im: value.im,
                regime,
            });
        }
        let value = match regime {
            Regime::Su11 => C64::new(value.re, 0.0),
            Regime::Su2 => C64::new(0.0, value.im),
        };
        Ok(Self { value, regime })
    }

    /// SU(1,1) rapidity `x`.
    pub fn real(x: f64) -> Result<Self> {
        Self::new(C64::new(x, 0.0), Regime::Su11)
    }

    /// SU(2) rapidity `i·y`; `y` is the beam-splitter mixing angle.
    pub fn imaginary(y: f64) -> Result<Self> {
        Self::new(C64::new(0.0, y), Regime::Su2)
    }

    pub fn value(&self) -> C64 {
        self.value
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// The real parameter: `x` for SU(1,1), `y` for SU(2).
    pub fn magnitude(&self) -> f64 {
        match self.regime {
            Regime::Su11 => self.value.re,
            Regime::Su2 => self.value.im,
        }
    }

    pub fn cosh(&self) -> C64 {
        ccosh(self.value)
    }

    pub fn sinh(&self) -> C64 {
        csinh(self.value)
    }
}

impl std::ops::Neg for Rapidity {
    type Output = Rapidity;
    fn neg(self) -> Rapidity {
        Rapidity {
            value: -self.value,
            regime: self.regime,
        }
    }
}

/// 2×2 complex matrix, usually (but not necessarily) unit-determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeMatrix {
    pub m11: C64,
    pub m12: C64,
    pub m21: C64,
    pub m22: C64,
}

impl NodeMatrix {
    pub const IDENTITY: NodeMatrix = NodeMatrix {
        m11: ONE,
        m12: ZERO,
        m21: ZERO,
        m22: ONE,
    };

    pub fn new(m11: C64, m12: C64, m21: C64, m22: C64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn det(&self) -> C64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> C64 {
        self.m11 + self.m22
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &NodeMatrix) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| is_finite(*z))
    }
}

impl Mul for NodeMatrix {
    type Output = NodeMatrix;
    fn mul(self, rhs: NodeMatrix) -> NodeMatrix {
        mat_mul(&self, &rhs)
    }
}

impl std::ops::Sub for NodeMatrix {
    type Output = NodeMatrix;
    fn sub(self, rhs: NodeMatrix) -> NodeMatrix {
        NodeMatrix::new(
            self.m11 - rhs.m11,
            self.m12 - rhs.m12,
            self.m21 - rhs.m21,
            self.m22 - rhs.m22,
        )
    }
}

pub fn mat_mul(a: &NodeMatrix, b: &NodeMatrix) -> NodeMatrix {
    NodeMatrix {
        m11: a.m11 * b.m11 + a.m12 * b.m21,
        m12: a.m11 * b.m12 + a.m12 * b.m22,
        m21: a.m21 * b.m11 + a.m22 * b.m21,
        m22: a.m21 * b.m12 + a.m22 * b.m22,
    }
}

pub fn mat_apply(a: &NodeMatrix, v: (C64, C64)) -> (C64, C64) {
    (a.m11 * v.0 + a.m12 * v.1, a.m21 * v.0 + a.m22 * v.1)
}

/// `[[cosh a, i sinh a], [-i sinh a, cosh a]]`.
pub fn node_matrix(angle: Rapidity) -> NodeMatrix {
    let c = angle.cosh();
    let s = I * angle.sinh();
    NodeMatrix::new(c, s, -s, c)
}

/// Angle `θ > 0` satisfying `coth θ = cosh φ`, the relation tying the two
/// coupling directions of the square Ising lattice.
pub fn ising_partner_theta(phi: Rapidity) -> Result<Rapidity> {
    if phi.regime() != Regime::Su11 {
        return Err(Error::ConstraintUndefined(
            "coth θ = cosh φ has no partner for imaginary φ".into(),
        ));
    }
    let p = phi.magnitude();
    if p <= 0.0 {
        return Err(Error::ConstraintUndefined(format!(
            "requires φ > 0, got {p}"
        )));
    }
    // artanh x = ½ log((1+x)/(1-x)), x = 1/cosh φ ∈ (0, 1)
    let x = 1.0 / p.cosh();
    let theta = 0.5 * (2.0 * x / (1.0 - x)).ln_1p();
    Rapidity::real(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn zero_angle_is_identity() {
        let m = node_matrix(Rapidity::real(0.0).unwrap());
        assert_eq!(m, NodeMatrix::IDENTITY);
    }

    #[test]
    fn critical_node_matrix() {
        let m = node_matrix(Rapidity::real(SQRT_2.acosh()).unwrap());
        let want = NodeMatrix::new(C64::new(SQRT_2, 0.0), I, -I, C64::new(SQRT_2, 0.0));
        assert!(m.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn quarter_turn_beam_splitter_is_real_rotation() {
        let m = node_matrix(Rapidity::imaginary(FRAC_PI_4).unwrap());
        let r = FRAC_1_SQRT_2;
        let want = NodeMatrix::new(
            C64::new(r, 0.0),
            C64::new(-r, 0.0),
            C64::new(r, 0.0),
            C64::new(r, 0.0),
        );
        assert!(m.max_abs_diff(&want) < 1e-15);
        assert!(m.entries().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn su11_entries_real_diagonal_imaginary_offdiagonal() {
        let m = node_matrix(Rapidity::real(0.37).unwrap());
        assert_eq!(m.m11.im, 0.0);
        assert_eq!(m.m22.im, 0.0);
        assert_eq!(m.m12.re, 0.0);
        assert_eq!(m.m21.re, 0.0);
    }

    #[test]
    fn rejects_non_finite_and_contaminated_angles() {
        assert!(matches!(Rapidity::real(f64::NAN), Err(Error::NonFinite(_))));
        assert!(matches!(
            Rapidity::real(f64::INFINITY),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            Rapidity::new(C64::new(1.0, 1e-9), Regime::Su11),
            Err(Error::RegimeMismatch { .. })
        ));
        assert!(matches!(
            Rapidity::new(C64::new(1e-9, 1.0), Regime::Su2),
            Err(Error::RegimeMismatch { .. })
        ));
        // below tolerance the stray component is dropped
        let r = Rapidity::new(C64::new(1.0, 1e-13), Regime::Su11).unwrap();
        assert_eq!(r.value().im, 0.0);
    }

    #[test]
    fn partner_theta_self_dual_at_critical_point() {
        let phi_c = SQRT_2.acosh();
        let theta = ising_partner_theta(Rapidity::real(phi_c).unwrap()).unwrap();
        assert!((theta.magnitude() - phi_c).abs() < 1e-14);
        assert!((theta.magnitude().cosh() - SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn partner_theta_vanishes_for_large_phi() {
        let theta = ising_partner_theta(Rapidity::real(20.0).unwrap()).unwrap();
        // θ ≈ 2 e^{-φ}
        assert!(theta.magnitude() > 0.0);
        assert!(theta.magnitude() < 3.0 * (-20.0f64).exp());
        assert!((theta.magnitude() / (2.0 * (-20.0f64).exp()) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn partner_theta_matches_bisection_root() {
        // Oracle: solve coth θ - cosh 1 = 0 by bisection; coth is decreasing on (0, ∞).
        let target = 1.0f64.cosh();
        let (mut lo, mut hi) = (1e-6f64, 10.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if 1.0 / mid.tanh() > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        let theta = ising_partner_theta(Rapidity::real(1.0).unwrap()).unwrap();
        assert!((theta.magnitude() - root).abs() < 1e-13);
        assert!((theta.magnitude() - 0.7719368329053049).abs() < 1e-13);
    }

    #[test]
    fn partner_theta_rejects_bad_phi() {
        assert!(ising_partner_theta(Rapidity::real(0.0).unwrap()).is_err());
        assert!(ising_partner_theta(Rapidity::real(-0.3).unwrap()).is_err());
        assert!(ising_partner_theta(Rapidity::imaginary(0.3).unwrap()).is_err());
    }

    #[test]
    fn identity_and_inverse() {
        let a = Rapidity::real(0.83).unwrap();
        let x = node_matrix(a);
        assert_eq!(mat_mul(&NodeMatrix::IDENTITY, &x), x);
        let prod = node_matrix(a) * node_matrix(-a);
        assert!(prod.max_abs_diff(&NodeMatrix::IDENTITY) < 1e-14);
        let b = Rapidity::imaginary(1.1).unwrap();
        let prod = node_matrix(b) * node_matrix(-b);
        assert!(prod.max_abs_diff(&NodeMatrix::IDENTITY) < 1e-14);
    }

    #[test]
    fn apply_matches_product_column() {
        let m = node_matrix(Rapidity::real(0.4).unwrap());
        let (x, y) = mat_apply(&m, (ONE, ZERO));
        assert_eq!((x, y), (m.m11, m.m21));
    }

    #[test]
    fn complex_cosh_sinh_match_num_complex() {
        for z in [C64::new(0.3, -1.2), C64::new(-2.0, 0.7), C64::new(0.0, 3.0)] {
            assert!(close(ccosh(z), z.cosh(), 1e-12));
            assert!(close(csinh(z), z.sinh(), 1e-12));
        }
    }

    #[test]
    fn acosh_branch() {
        // real z >= 1: real non-negative
        let g = acosh(C64::new(2.0, 0.0));
        assert!((g.re - 2.0f64.acosh()).abs() < 1e-15 && g.im == 0.0);
        // real z in [-1, 1]: i·arccos z
        let g = acosh(C64::new(0.3, 0.0));
        assert!(g.re.abs() < 1e-15 && (g.im - 0.3f64.acos()).abs() < 1e-15);
        let g = acosh(C64::new(-1.0, 0.0));
        assert!((g.im - std::f64::consts::PI).abs() < 1e-15);
        // round trip on a generic complex value
        let z = C64::new(-0.4, 1.3);
        let g = acosh(z);
        assert!(g.re >= 0.0);
        assert!(close(ccosh(g), z, 1e-13));
    }
}
