//! Brute-force references: dense `P` assembled entry by entry, dense powers,
//! and a general complex eigensolver.
//!
//! Nothing here goes through the Fourier decomposition, so agreement with the
//! closed forms in [`crate::network`], [`crate::spectrum`] and
//! [`crate::propagate`] is an independent check rather than a restatement.

use std::cmp::Ordering;

use crate::algebra::{C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::network::NetworkSpec;

/// Largest dimension accepted by [`dense_eigenvalues`].
pub const MAX_EIGEN_DIM: usize = 64;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 200;

fn layer_a_entry(cosh: C64, isinh: C64, i: usize, j: usize) -> C64 {
    if i / 2 != j / 2 {
        ZERO
    } else if i == j {
        cosh
    } else if i % 2 == 0 {
        isinh
    } else {
        -isinh
    }
}

fn layer_b_entry(n_modes: usize, cosh: C64, isinh: C64, i: usize, j: usize) -> C64 {
    // pair (b_k, a_{k+1}) = (2k+1, 2k+2 mod 2N): first member odd, second even
    if i == j {
        cosh
    } else if i % 2 == 1 && j == (i + 1) % n_modes {
        isinh
    } else if i % 2 == 0 && (j + 1) % n_modes == i {
        -isinh
    } else {
        ZERO
    }
}

/// `P = B_layer · A_layer` built from index rules, with the node matrices
/// evaluated through `num_complex` rather than [`crate::algebra`].
pub fn dense_p_reference(spec: &NetworkSpec) -> DenseMatrix {
    let n = spec.modes();
    let t = spec.theta().value();
    let p = spec.phi().value();
    let i = C64::new(0.0, 1.0);
    let (ca, sa) = (t.cosh(), i * t.sinh());
    let (cb, sb) = (p.cosh(), i * p.sinh());
    let a = DenseMatrix::from_fn(n, |r, c| layer_a_entry(ca, sa, r, c));
    let b = DenseMatrix::from_fn(n, |r, c| layer_b_entry(n, cb, sb, r, c));
    DenseMatrix::from_fn(n, |r, c| (0..n).map(|k| b[(r, k)] * a[(k, c)]).sum())
}

/// `m^power` by binary exponentiation.
pub fn dense_power(m: &DenseMatrix, power: usize) -> DenseMatrix {
    let mut result = DenseMatrix::identity(m.dim());
    let mut base = m.clone();
    let mut e = power;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Eigenvalues kept in `(re, im)` lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenMultiset {
    values: Vec<C64>,
}

fn lex(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl EigenMultiset {
    pub fn new(mut values: Vec<C64>) -> Self {
        values.sort_by(lex);
        Self { values }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn product(&self) -> C64 {
        self.values.iter().fold(ONE, |acc, v| acc * v)
    }

    /// Smallest distance between two members; infinite for fewer than two.
    pub fn min_spacing(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.values.iter().enumerate() {
            for b in &self.values[i + 1..] {
                best = best.min((a - b).norm());
            }
        }
        best
    }
}

/// Reduces `h` (row-major, `n × n`) to upper Hessenberg form in place with
/// Householder reflections.
fn hessenberg(h: &mut [C64], n: usize) {
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<C64> = (k + 1..n).map(|r| h[r * n + k]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() > 0.0 {
            v[0] / v[0].norm()
        } else {
            ONE
        };
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= vnorm);

        // h ← (I − 2vv*) h
        for c in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(idx, vi)| vi.conj() * h[(k + 1 + idx) * n + c])
                .sum();
            for (idx, vi) in v.iter().enumerate() {
                h[(k + 1 + idx) * n + c] -= vi * dot * 2.0;
            }
        }
        // h ← h (I − 2vv*)
        for r in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(idx, vi)| h[r * n + k + 1 + idx] * vi)
                .sum();
            for (idx, vi) in v.iter().enumerate() {
                h[r * n + k + 1 + idx] -= dot * vi.conj() * 2.0;
            }
        }
        for r in k + 2..n {
            h[r * n + k] = ZERO;
        }
    }
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) / 2.0;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) / 2.0;
    let (l1, l2) = (mean + disc, mean - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square complex matrix via Hessenberg reduction and
/// single-shift QR iteration with deflation.
pub fn dense_eigenvalues(m: &DenseMatrix) -> Result<EigenMultiset> {
    let n = m.dim();
    if n > MAX_EIGEN_DIM {
        return Err(Error::InvalidArgument(format!(
            "dense eigensolver limited to dimension {MAX_EIGEN_DIM}, got {n}"
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("eigensolver input"));
    }
    if n == 0 {
        return Ok(EigenMultiset::new(Vec::new()));
    }
    let mut h = m.as_slice().to_vec();
    hessenberg(&mut h, n);
    let norm = m.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut eig = vec![ZERO; n];
    let mut hi = n - 1;
    let mut iters = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[0];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let sub = h[l * n + l - 1].norm();
            let mut diag = h[(l - 1) * n + l - 1].norm() + h[l * n + l].norm();
            if diag == 0.0 {
                diag = norm;
            }
            if sub <= f64::EPSILON * diag {
                h[l * n + l - 1] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[hi * n + hi];
            hi -= 1;
            iters = 0;
            continue;
        }
        iters += 1;
        total += 1;
        if iters > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::NoConvergence(format!(
                "{} eigenvalues unresolved after {total} QR sweeps (dimension {n})",
                hi + 1
            )));
        }

        let mu = if iters % 11 == 0 {
            // exceptional shift to break cycles
            h[hi * n + hi] + h[hi * n + hi - 1].norm() * 0.75
        } else {
            wilkinson_shift(
                h[(hi - 1) * n + hi - 1],
                h[(hi - 1) * n + hi],
                h[hi * n + hi - 1],
                h[hi * n + hi],
            )
        };

        for i in l..=hi {
            h[i * n + i] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let x = h[k * n + k];
            let y = h[(k + 1) * n + k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (ONE, ZERO)
            } else {
                (x / r, y / r)
            };
            for col in k..=hi {
                let u = h[k * n + col];
                let w = h[(k + 1) * n + col];
                h[k * n + col] = c.conj() * u + s.conj() * w;
                h[(k + 1) * n + col] = -s * u + c * w;
            }
            rots.push((c, s));
        }
        for (idx, (c, s)) in rots.into_iter().enumerate() {
            let k = l + idx;
            for row in l..=(k + 1).min(hi) {
                let u = h[row * n + k];
                let w = h[row * n + k + 1];
                h[row * n + k] = u * c + w * s;
                h[row * n + k + 1] = -u * s.conj() + w * c.conj();
            }
        }
        for i in l..=hi {
            h[i * n + i] += mu;
        }
    }
    Ok(EigenMultiset::new(eig))
}

/// Solves `a x = b` by LU with partial pivoting; tiny pivots are nudged so
/// that nearly singular shifted systems (inverse iteration) still solve.
fn solve(a: &DenseMatrix, b: &[C64]) -> Vec<C64> {
    let n = a.dim();
    let mut m = a.as_slice().to_vec();
    let mut x = b.to_vec();
    let floor = a.max_abs().max(1.0) * f64::EPSILON;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i * n + k].norm().total_cmp(&m[j * n + k].norm()))
            .unwrap();
        if p != k {
            for c in 0..n {
                m.swap(k * n + c, p * n + c);
            }
            x.swap(k, p);
        }
        if m[k * n + k].norm() < floor {
            m[k * n + k] = C64::new(floor, 0.0);
        }
        let piv = m[k * n + k];
        for r in k + 1..n {
            let f = m[r * n + k] / piv;
            if f == ZERO {
                continue;
            }
            for c in k..n {
                let t = m[k * n + c];
                m[r * n + c] -= f * t;
            }
            let t = x[k];
            x[r] -= f * t;
        }
    }
    for k in (0..n).rev() {
        let s: C64 = (k + 1..n).map(|c| m[k * n + c] * x[c]).sum();
        x[k] = (x[k] - s) / m[k * n + k];
    }
    x
}

/// Relative residual `‖Mv − λv‖ / (‖M‖_F ‖v‖)` of an eigenvector obtained
/// by inverse iteration at `lambda`.
pub fn eigenpair_residual(m: &DenseMatrix, lambda: C64) -> (Vec<C64>, f64) {
    let n = m.dim();
    let shifted = DenseMatrix::from_fn(n, |i, j| {
        if i == j {
            m[(i, j)] - lambda
        } else {
            m[(i, j)]
        }
    });
    let mut v: Vec<C64> = (0..n)
        .map(|i| C64::new(1.0 + 0.1 * i as f64, 0.3 - 0.05 * i as f64))
        .collect();
    for _ in 0..3 {
        v = solve(&shifted, &v);
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= nrm);
    }
    let mv = m.mul_vec(&v);
    let res = mv
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (v, res / m.frobenius_norm().max(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultisetReport {
    pub max_distance: f64,
    pub pass: bool,
    /// True when the members were too closely spaced for greedy pairing and
    /// a bottleneck bipartite matching was used instead.
    pub bipartite: bool,
}

fn greedy_match(a: &[C64], b: &[C64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("equal lengths");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

fn has_perfect_matching(dist: &[Vec<f64>], limit: f64) -> bool {
    fn augment(
        u: usize,
        dist: &[Vec<f64>],
        limit: f64,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for v in 0..dist.len() {
            if dist[u][v] <= limit && !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, dist, limit, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let n = dist.len();
    let mut owner = vec![None; n];
    (0..n).all(|u| augment(u, dist, limit, &mut vec![false; n], &mut owner))
}

/// Minimises the largest pair distance over all perfect matchings.
fn bottleneck_match(a: &[C64], b: &[C64]) -> f64 {
    let dist: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).collect())
        .collect();
    let mut cands: Vec<f64> = dist.iter().flatten().copied().collect();
    cands.sort_by(f64::total_cmp);
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_perfect_matching(&dist, cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo]
}

/// Pairs the two multisets and reports the largest pair distance.
///
/// Greedy nearest-match is used when both sets are spaced by more than
/// `10·tol`; otherwise (degenerate or clustered values) a bottleneck
/// matching is computed.
pub fn compare_multisets(a: &EigenMultiset, b: &EigenMultiset, tol: f64) -> Result<MultisetReport> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.is_empty() {
        return Ok(MultisetReport {
            max_distance: 0.0,
            pass: true,
            bipartite: false,
        });
    }
    let spaced = a.min_spacing() > 10.0 * tol && b.min_spacing() > 10.0 * tol;
    let max_distance = if spaced {
        greedy_match(&a.values, &b.values)
    } else {
        bottleneck_match(&a.values, &b.values)
    };
    Ok(MultisetReport {
        max_distance,
        pass: max_distance <= tol,
        bipartite: !spaced,
    })
}
