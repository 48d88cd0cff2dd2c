//! Real symmetric eigensolvers: cyclic Jacobi for dense matrices and a
//! closed-form path for 3×3 matrices.

use crate::error::{Error, Result};

/// Largest matrix order accepted by [`symmetric_eigendecomposition`].
pub const MAX_DIM: usize = 4096;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

/// `A = V diag(λ) Vᵀ`, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    dim: usize,
    eigenvalues: Vec<f64>,
    /// Row `i` holds the eigenvector of `eigenvalues[i]`.
    vectors: Vec<f64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.dim..(i + 1) * self.dim]
    }

    /// Rebuilds `V diag(λ) Vᵀ` as a row-major matrix.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for (i, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(i);
            for r in 0..n {
                let vr = lambda * v[r];
                if vr == 0.0 {
                    continue;
                }
                let row = &mut out[r * n..(r + 1) * n];
                for (o, vc) in row.iter_mut().zip(v) {
                    *o += vr * vc;
                }
            }
        }
        out
    }
}

/// Diagonalizes a real symmetric `dim × dim` matrix (row-major) by cyclic
/// Jacobi rotations.
///
/// Sweeps stop once every off-diagonal magnitude is below `1e−12` times the
/// Frobenius norm; one more sweep then polishes the result.
pub fn symmetric_eigendecomposition(matrix: &[f64], dim: usize) -> Result<SpectralDecomposition> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Size(format!("matrix order must be in 1..={MAX_DIM}, got {dim}")));
    }
    if matrix.len() != dim * dim {
        return Err(Error::InvalidParameter(format!(
            "expected {} entries for a {dim}×{dim} matrix, got {}",
            dim * dim,
            matrix.len()
        )));
    }
    let n = dim;
    let mut a = matrix.to_vec();
    for r in 0..n {
        for c in r + 1..n {
            let (x, y) = (a[r * n + c], a[c * n + r]);
            if (x - y).abs() > 1e-12 * (1.0 + x.abs().max(y.abs())) {
                return Err(Error::InvalidParameter(format!(
                    "matrix is not symmetric at ({r}, {c}): {x} vs {y}"
                )));
            }
            let mean = 0.5 * (x + y);
            a[r * n + c] = mean;
            a[c * n + r] = mean;
        }
    }

    let frobenius = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOLERANCE * frobenius;
    let mut vt = vec![0.0; n * n];
    for i in 0..n {
        vt[i * n + i] = 1.0;
    }

    let mut converged = n == 1;
    let mut polish_done = false;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut max_off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                max_off = max_off.max(a[p * n + q].abs());
            }
        }
        if max_off <= threshold {
            if polish_done || max_off == 0.0 {
                converged = true;
                break;
            }
            polish_done = true;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut vt, n, p, q);
            }
        }
    }
    if !converged {
        let max_off = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].abs())
            .fold(0.0, f64::max);
        if max_off > threshold {
            return Err(Error::Numerical(format!(
                "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps (off-diagonal {max_off:e})"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &i in &order {
        vectors.extend_from_slice(&vt[i * n..(i + 1) * n]);
    }
    Ok(SpectralDecomposition {
        dim: n,
        eigenvalues,
        vectors,
    })
}

/// One Jacobi rotation annihilating `a[p][q]`; `vt` accumulates Vᵀ.
fn rotate(a: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = 0.5 * (aqq - app) / apq;
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let g = a[p * n + k];
        let h = a[q * n + k];
        let new_p = g - s * (h + g * tau);
        let new_q = h + s * (g - h * tau);
        a[p * n + k] = new_p;
        a[k * n + p] = new_p;
        a[q * n + k] = new_q;
        a[k * n + q] = new_q;
    }
    let (head, tail) = vt.split_at_mut(q * n);
    let row_p = &mut head[p * n..(p + 1) * n];
    let row_q = &mut tail[..n];
    for (vp, vq) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let g = *vp;
        let h = *vq;
        *vp = g - s * (h + g * tau);
        *vq = h + s * (g - h * tau);
    }
}

/// Eigenvalues of a symmetric 3×3 matrix, descending.
///
/// Uses the trigonometric solution of the characteristic cubic and falls
/// back to Jacobi when two roots nearly coincide, where `acos` loses
/// accuracy.
pub fn sym3_eigenvalues(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    let mut out = if off == 0.0 {
        [m[0][0], m[1][1], m[2][2]]
    } else {
        match sym3_trigonometric(m, off) {
            Some(v) => v,
            None => sym3_jacobi(m),
        }
    };
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

fn sym3_trigonometric(m: &[[f64; 3]; 3], off: f64) -> Option<[f64; 3]> {
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * off;
    let p = (p2 / 6.0).sqrt();
    if p <= 1e-8 * q.abs().max(f64::MIN_POSITIVE) {
        return None;
    }
    let mut b = *m;
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if i == j {
                *x -= q;
            }
            *x /= p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = det / 2.0;
    if r.abs() > 1.0 - 1e-6 {
        return None;
    }
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    Some([e1, e2, e3])
}

fn sym3_jacobi(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let flat: Vec<f64> = m.iter().flatten().copied().collect();
    match symmetric_eigendecomposition(&flat, 3) {
        Ok(d) => [d.eigenvalues()[0], d.eigenvalues()[1], d.eigenvalues()[2]],
        Err(_) => [m[0][0], m[1][1], m[2][2]],
    }
}

/// Eigenpairs of a symmetric 3×3 matrix, eigenvalues descending.
pub fn sym3_eigenpairs(m: &[[f64; 3]; 3]) -> Result<([f64; 3], [[f64; 3]; 3])> {
    let flat: Vec<f64> = m.iter().flatten().copied().collect();
    let d = symmetric_eigendecomposition(&flat, 3)?;
    let mut values = [0.0; 3];
    let mut vectors = [[0.0; 3]; 3];
    for i in 0..3 {
        let src = 2 - i;
        values[i] = d.eigenvalues()[src];
        vectors[i].copy_from_slice(d.eigenvector(src));
    }
    Ok((values, vectors))
}
