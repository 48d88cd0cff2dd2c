//! Two-qubit reduced states.
//!
//! Permutation symmetry makes every pair's reduced state the same X-state
//!
//! ```text
//! ρ₁₂ = v₊|00⟩⟨00| + v₋|11⟩⟨11| + w(|01⟩⟨01| + |10⟩⟨10|) + y(|01⟩⟨10| + |10⟩⟨01|)
//! ```
//!
//! whose four numbers follow linearly from `⟨S_z⟩`, `⟨S_z²⟩` and
//! `⟨S_x² + S_y²⟩`. Generic 4×4 and 2×2 density matrices live here as well so
//! the oracle and the witness cross-checks can work on full matrices.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with `|0⟩` the `σ_z = +1` state.

use nalgebra::{Complex, Matrix2, Matrix4, SymmetricEigen};

use crate::collective::SectorTable;
use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);
const MINUS_ONE: Complex64 = Complex64::new(-1.0, 0.0);

pub const SIGMA_X: [[Complex64; 2]; 2] = [[ZERO, ONE], [ONE, ZERO]];
pub const SIGMA_Y: [[Complex64; 2]; 2] = [[ZERO, MINUS_I], [I, ZERO]];
pub const SIGMA_Z: [[Complex64; 2]; 2] = [[ONE, ZERO], [ZERO, MINUS_ONE]];
pub const PAULI: [[[Complex64; 2]; 2]; 3] = [SIGMA_X, SIGMA_Y, SIGMA_Z];

/// Slack on trace and Hermiticity checks.
pub const STRUCTURE_TOLERANCE: f64 = 1e-12;
/// Slack on positivity checks; smaller negative eigenvalues are rounding.
pub const POSITIVITY_TOLERANCE: f64 = 1e-9;

pub fn pauli(index: usize) -> Matrix2<Complex64> {
    let p = PAULI[index];
    Matrix2::new(p[0][0], p[0][1], p[1][0], p[1][1])
}

/// `a ⊗ b` with the first factor on the most significant basis bit.
pub fn kron2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// The four numbers `(v₊, v₋, w, y)` of the model's two-qubit X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateElements {
    v_plus: f64,
    v_minus: f64,
    w: f64,
    y: f64,
}

impl XStateElements {
    pub fn new(v_plus: f64, v_minus: f64, w: f64, y: f64) -> Result<Self> {
        let values = [v_plus, v_minus, w, y];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InconsistentState(format!("non-finite element in {values:?}")));
        }
        let trace = v_plus + v_minus + 2.0 * w;
        if (trace - 1.0).abs() > STRUCTURE_TOLERANCE {
            return Err(Error::InconsistentState(format!("trace {trace} differs from 1")));
        }
        if v_plus < -POSITIVITY_TOLERANCE || v_minus < -POSITIVITY_TOLERANCE || w < -POSITIVITY_TOLERANCE {
            return Err(Error::InconsistentState(format!(
                "negative population: v+ = {v_plus}, v- = {v_minus}, w = {w}"
            )));
        }
        if w < y.abs() - POSITIVITY_TOLERANCE {
            return Err(Error::InconsistentState(format!("coherence |y| = {} exceeds w = {w}", y.abs())));
        }
        Ok(Self { v_plus, v_minus, w, y })
    }

    pub fn maximally_mixed() -> Self {
        Self { v_plus: 0.25, v_minus: 0.25, w: 0.25, y: 0.0 }
    }

    /// `(|01⟩ − |10⟩)/√2`.
    pub fn singlet() -> Self {
        Self { v_plus: 0.0, v_minus: 0.0, w: 0.5, y: -0.5 }
    }

    pub fn v_plus(&self) -> f64 {
        self.v_plus
    }

    pub fn v_minus(&self) -> f64 {
        self.v_minus
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// `{v₊, v₋, w + y, w − y}`, straight from the block structure.
    pub fn eigenvalues(&self) -> [f64; 4] {
        [self.v_plus, self.v_minus, self.w + self.y, self.w - self.y]
    }

    /// Single-qubit marginal populations `(v₊ + w, v₋ + w)`.
    pub fn marginal(&self) -> [f64; 2] {
        [self.v_plus + self.w, self.v_minus + self.w]
    }
}

/// Builds the X-state from the thermal collective-spin moments.
pub fn x_state_from_expectations(
    n_qubits: usize,
    mean_sz: f64,
    mean_sz_squared: f64,
    mean_transverse: f64,
) -> Result<XStateElements> {
    if n_qubits < 2 {
        return Err(Error::InvalidParameter(format!("need at least two qubits, got {n_qubits}")));
    }
    let n = n_qubits as f64;
    let denom = 4.0 * n * (n - 1.0);
    let base = n * n - 2.0 * n + 4.0 * mean_sz_squared;
    let tilt = 4.0 * mean_sz * (n - 1.0);
    let v_plus = (base + tilt) / denom;
    let v_minus = (base - tilt) / denom;
    let w = (n * n - 4.0 * mean_sz_squared) / denom;
    let y = (2.0 * mean_transverse - n) / (2.0 * n * (n - 1.0));
    XStateElements::new(v_plus, v_minus, w, y)
}

/// Thermal X-state evaluated level by level.
///
/// The elements are linear in the moments, so averaging each level's own
/// `(v₊, v₋, w, y)` is the same map as [`x_state_from_expectations`]. Doing it
/// per level keeps populations that are exponentially small at low
/// temperature instead of losing them to cancellation against `N²`.
pub fn thermal_x_state(table: &SectorTable, beta: f64) -> Result<XStateElements> {
    let n = table.n_qubits() as f64;
    let weights = table.boltzmann_weights(beta)?;
    let z: f64 = weights.iter().sum();
    let (mut vp, mut vm, mut w, mut y) = (0.0, 0.0, 0.0, 0.0);
    for (level, weight) in table.entries().iter().zip(&weights) {
        let up = n + 2.0 * level.m_z;
        let down = n - 2.0 * level.m_z;
        vp += weight * up * (up - 2.0);
        vm += weight * down * (down - 2.0);
        w += weight * up * down;
        y += weight * (2.0 * (level.spin * (level.spin + 1.0) - level.m_z * level.m_z) - n);
    }
    let denom = 4.0 * n * (n - 1.0) * z;
    XStateElements::new(vp / denom, vm / denom, w / denom, 2.0 * y / denom)
}

/// A two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    m: Matrix4<Complex64>,
}

impl DensityMatrix4 {
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        check_density(m.as_slice(), 4)?;
        let rho = Self { m };
        let min = rho.spectrum().into_iter().fold(f64::INFINITY, f64::min);
        if min < -POSITIVITY_TOLERANCE {
            return Err(Error::InconsistentState(format!("negative eigenvalue {min}")));
        }
        Ok(rho)
    }

    pub fn maximally_mixed() -> Self {
        Self { m: Matrix4::identity() * Complex64::new(0.25, 0.0) }
    }

    /// `|ψ⟩⟨ψ|` for a normalized state vector.
    pub fn from_pure(psi: &[Complex64; 4]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { m: Matrix4::from_fn(|r, c| psi[r] * psi[c].conj()) })
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.m
    }

    /// Exchanges the two qubits.
    pub fn swap_qubits(&self) -> Self {
        let perm = [0usize, 2, 1, 3];
        Self { m: Matrix4::from_fn(|r, c| self.m[(perm[r], perm[c])]) }
    }

    pub fn spectrum(&self) -> Vec<f64> {
        SymmetricEigen::new(self.m).eigenvalues.iter().copied().collect()
    }

    /// `tr(ρ A)`.
    pub fn expectation(&self, observable: &Matrix4<Complex64>) -> Complex64 {
        (self.m * observable).trace()
    }
}

/// A single-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix2 {
    m: Matrix2<Complex64>,
}

impl DensityMatrix2 {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        check_density(m.as_slice(), 2)?;
        let rho = Self { m };
        let min = rho.spectrum().into_iter().fold(f64::INFINITY, f64::min);
        if min < -POSITIVITY_TOLERANCE {
            return Err(Error::InconsistentState(format!("negative eigenvalue {min}")));
        }
        Ok(rho)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.m
    }

    pub fn spectrum(&self) -> Vec<f64> {
        SymmetricEigen::new(self.m).eigenvalues.iter().copied().collect()
    }
}

fn check_density(entries: &[Complex64], dim: usize) -> Result<()> {
    // nalgebra storage is column-major: entry (r, c) at c * dim + r.
    let at = |r: usize, c: usize| entries[c * dim + r];
    let mut trace = ZERO;
    for r in 0..dim {
        trace += at(r, r);
        for c in 0..dim {
            if (at(r, c) - at(c, r).conj()).norm() > STRUCTURE_TOLERANCE {
                return Err(Error::InconsistentState(format!("not Hermitian at ({r}, {c})")));
            }
        }
    }
    if (trace - ONE).norm() > STRUCTURE_TOLERANCE {
        return Err(Error::InconsistentState(format!("trace {trace} differs from 1")));
    }
    Ok(())
}

/// Anything whose eigenvalues can be listed; feeds [`von_neumann_entropy`].
pub trait Spectrum {
    fn eigenvalues(&self) -> Vec<f64>;
}

impl Spectrum for DensityMatrix4 {
    fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum()
    }
}

impl Spectrum for DensityMatrix2 {
    fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum()
    }
}

impl Spectrum for XStateElements {
    fn eigenvalues(&self) -> Vec<f64> {
        XStateElements::eigenvalues(self).to_vec()
    }
}

pub fn to_density_matrix(x: &XStateElements) -> DensityMatrix4 {
    let mut m = Matrix4::<Complex64>::zeros();
    m[(0, 0)] = Complex64::new(x.v_plus, 0.0);
    m[(1, 1)] = Complex64::new(x.w, 0.0);
    m[(2, 2)] = Complex64::new(x.w, 0.0);
    m[(3, 3)] = Complex64::new(x.v_minus, 0.0);
    m[(1, 2)] = Complex64::new(x.y, 0.0);
    m[(2, 1)] = Complex64::new(x.y, 0.0);
    DensityMatrix4 { m }
}

/// `T_nm = tr(ρ σ_n ⊗ σ_m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix {
    t: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    pub fn new(t: [[f64; 3]; 3]) -> Result<Self> {
        if t.iter().flatten().any(|x| !x.is_finite() || x.abs() > 1.0 + STRUCTURE_TOLERANCE) {
            return Err(Error::InvalidParameter(format!("correlation entries must lie in [-1, 1]: {t:?}")));
        }
        Ok(Self { t })
    }

    /// Closed form for the model's X-state: `diag(2y, 2y, 1 − 4w)`.
    pub fn from_x_state(x: &XStateElements) -> Self {
        let mut t = [[0.0; 3]; 3];
        t[0][0] = 2.0 * x.y;
        t[1][1] = 2.0 * x.y;
        t[2][2] = 1.0 - 4.0 * x.w;
        Self { t }
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.t
    }

    /// `T Tᵀ` (T is real, so `T†` = `Tᵀ`).
    pub fn gram(&self) -> [[f64; 3]; 3] {
        self.product(false)
    }

    /// `Tᵀ T`.
    pub fn gram_transposed(&self) -> [[f64; 3]; 3] {
        self.product(true)
    }

    fn product(&self, transpose_first: bool) -> [[f64; 3]; 3] {
        let t = &self.t;
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3)
                    .map(|k| if transpose_first { t[k][i] * t[k][j] } else { t[i][k] * t[j][k] })
                    .sum();
            }
        }
        out
    }

    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|k| self.t[i][k] * v[k]).sum();
        }
        out
    }
}

/// Full trace formula over the nine Pauli pairs.
pub fn correlation_matrix(rho: &DensityMatrix4) -> CorrelationMatrix {
    let mut t = [[0.0; 3]; 3];
    for (n, row) in t.iter_mut().enumerate() {
        for (m, x) in row.iter_mut().enumerate() {
            *x = rho.expectation(&kron2(&pauli(n), &pauli(m))).re;
        }
    }
    CorrelationMatrix { t }
}

/// `−Σ λ log₂ λ`, with `0 log 0 = 0`.
///
/// Eigenvalues in `[−1e−9, 0)` are treated as zero; anything more negative is
/// rejected.
pub fn entropy_from_eigenvalues(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in eigenvalues {
        if lambda < -POSITIVITY_TOLERANCE {
            return Err(Error::InconsistentState(format!("negative eigenvalue {lambda}")));
        }
        if lambda > 0.0 {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s.max(0.0))
}

pub fn von_neumann_entropy<R: Spectrum + ?Sized>(rho: &R) -> Result<f64> {
    entropy_from_eigenvalues(&rho.eigenvalues())
}

/// Traces out the second qubit.
pub fn single_qubit_reduction(rho: &DensityMatrix4) -> DensityMatrix2 {
    let m = &rho.m;
    DensityMatrix2 {
        m: Matrix2::from_fn(|r, c| m[(2 * r, 2 * c)] + m[(2 * r + 1, 2 * c + 1)]),
    }
}

/// Traces out the first qubit.
pub fn second_qubit_reduction(rho: &DensityMatrix4) -> DensityMatrix2 {
    let m = &rho.m;
    DensityMatrix2 {
        m: Matrix2::from_fn(|r, c| m[(r, c)] + m[(r + 2, c + 2)]),
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn x_state() -> impl Strategy<Value = XStateElements> {
        (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b, c, s)| {
            let total = a + b + 2.0 * c + 1e-9;
            let (vp, vm, w) = (a / total, b / total, c / total);
            let w = w + (1.0 - vp - vm - 2.0 * w) / 2.0;
            XStateElements::new(vp, vm, w, s * w).unwrap()
        })
    }

    proptest! {
        #[test]
        fn x_states_are_valid_density_matrices(x in x_state()) {
            prop_assert!(DensityMatrix4::new(*to_density_matrix(&x).matrix()).is_ok());
        }

        #[test]
        fn x_state_correlations_are_diagonal(x in x_state()) {
            let t = correlation_matrix(&to_density_matrix(&x));
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        prop_assert!(t.entries()[i][j].abs() < 1e-12);
                    }
                }
            }
        }

        #[test]
        fn entropy_is_swap_invariant(x in x_state()) {
            let rho = to_density_matrix(&x);
            let a = von_neumann_entropy(&rho).unwrap();
            let b = von_neumann_entropy(&rho.swap_qubits()).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
            prop_assert!((0.0..=2.0 + 1e-12).contains(&a));
        }

        #[test]
        fn marginals_agree(x in x_state()) {
            let rho = to_density_matrix(&x);
            let a = single_qubit_reduction(&rho);
            let b = second_qubit_reduction(&rho);
            prop_assert!((a.matrix() - b.matrix()).norm() < 1e-15);
            prop_assert!((a.matrix()[(0, 0)].re - x.marginal()[0]).abs() < 1e-15);
        }
    }
}
