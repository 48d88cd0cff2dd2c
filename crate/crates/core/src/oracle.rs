//! Brute-force reference: the Hamiltonian as a dense `2^N × 2^N` matrix,
//! its thermal state from exact diagonalization, and partial traces down to
//! a qubit pair.
//!
//! Nothing here uses the collective-spin structure. The only structure
//! exploited is conservation of total `S_z`, which is checked on the
//! assembled matrix before the magnetization blocks are diagonalized
//! separately.
//!
//! Qubit `i` is bit `N − 1 − i` of a basis index; a clear bit means
//! `σ_z = +1`.

use crate::collective::ModelParams;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigendecomposition, SpectralDecomposition};
use crate::reduced::{Complex64, DensityMatrix4};
use nalgebra::Matrix4;

/// Largest qubit count the oracle accepts.
pub const MAX_ORACLE_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct FullHamiltonian {
    n_qubits: usize,
    dim: usize,
    /// Row-major, `dim × dim`.
    matrix: Vec<f64>,
}

fn check_qubits(n: usize) -> Result<()> {
    if !(2..=MAX_ORACLE_QUBITS).contains(&n) {
        return Err(Error::Size(format!(
            "the dense oracle handles 2..={MAX_ORACLE_QUBITS} qubits, got {n}"
        )));
    }
    Ok(())
}

#[inline]
fn bit(state: usize, n: usize, qubit: usize) -> usize {
    (state >> (n - 1 - qubit)) & 1
}

#[inline]
fn z_value(state: usize, n: usize, qubit: usize) -> f64 {
    if bit(state, n, qubit) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `H = (J/4) Σ_{i≠j} (σx σx + σy σy + Δ σz σz) + (B/2) Σ σz`, with the sum
/// over ordered pairs.
pub fn build_full_hamiltonian(params: &ModelParams) -> Result<FullHamiltonian> {
    let n = params.n_qubits();
    check_qubits(n)?;
    let (j, delta, b) = (params.coupling(), params.anisotropy(), params.field());
    let dim = 1usize << n;
    let mut matrix = vec![0.0; dim * dim];
    for state in 0..dim {
        let mut diagonal = 0.0;
        for i in 0..n {
            diagonal += 0.5 * b * z_value(state, n, i);
            for k in 0..n {
                if i == k {
                    continue;
                }
                diagonal += 0.25 * j * delta * z_value(state, n, i) * z_value(state, n, k);
                // σx σx + σy σy flips an antiparallel pair with amplitude 2
                // and annihilates a parallel one.
                if bit(state, n, i) != bit(state, n, k) {
                    let flipped = state ^ (1 << (n - 1 - i)) ^ (1 << (n - 1 - k));
                    matrix[flipped * dim + state] += 0.25 * j * 2.0;
                }
            }
        }
        matrix[state * dim + state] += diagonal;
    }
    Ok(FullHamiltonian { n_qubits: n, dim, matrix })
}

impl FullHamiltonian {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn element(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.dim + col]
    }

    pub fn is_symmetric(&self, tolerance: f64) -> bool {
        (0..self.dim).all(|r| (r + 1..self.dim).all(|c| (self.element(r, c) - self.element(c, r)).abs() <= tolerance))
    }

    /// Largest matrix element connecting different total-`S_z` sectors.
    pub fn magnetization_leakage(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r.count_ones() != c.count_ones() {
                    worst = worst.max(self.element(r, c).abs());
                }
            }
        }
        worst
    }

    /// Basis indices grouped by number of down spins.
    pub fn magnetization_sectors(&self) -> Vec<Vec<usize>> {
        let mut sectors = vec![Vec::new(); self.n_qubits + 1];
        for state in 0..self.dim {
            sectors[state.count_ones() as usize].push(state);
        }
        sectors
    }

    /// Exact diagonalization of every magnetization block.
    pub fn block_spectra(&self) -> Result<Vec<(Vec<usize>, SpectralDecomposition)>> {
        let leak = self.magnetization_leakage();
        if leak != 0.0 {
            return Err(Error::Numerical(format!(
                "Hamiltonian couples magnetization sectors (element {leak:e})"
            )));
        }
        self.magnetization_sectors()
            .into_iter()
            .map(|indices| {
                let m = indices.len();
                let mut block = vec![0.0; m * m];
                for (r, &sr) in indices.iter().enumerate() {
                    for (c, &sc) in indices.iter().enumerate() {
                        block[r * m + c] = self.element(sr, sc);
                    }
                }
                symmetric_eigendecomposition(&block, m).map(|d| (indices, d))
            })
            .collect()
    }

    /// All `2^N` eigenvalues, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let mut all: Vec<f64> = self
            .block_spectra()?
            .iter()
            .flat_map(|(_, d)| d.eigenvalues().to_vec())
            .collect();
        all.sort_by(f64::total_cmp);
        Ok(all)
    }
}

/// Dense real density matrix on all N qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct FullDensityMatrix {
    n_qubits: usize,
    dim: usize,
    data: Vec<f64>,
}

impl FullDensityMatrix {
    /// `|ψ⟩⟨ψ|` for a real, normalized amplitude vector.
    pub fn from_pure(n_qubits: usize, amplitudes: &[f64]) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::InvalidParameter(format!("expected {dim} amplitudes, got {}", amplitudes.len())));
        }
        let norm: f64 = amplitudes.iter().map(|a| a * a).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        let mut data = vec![0.0; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                data[r * dim + c] = amplitudes[r] * amplitudes[c];
            }
        }
        Ok(Self { n_qubits, dim, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn element(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.element(i, i)).sum()
    }
}

/// Thermal state and the shifted partition function it was normalized by.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    pub rho: FullDensityMatrix,
    /// `Σ e^{−β(λ − λ_min)}`.
    pub shifted_partition: f64,
    pub ground_energy: f64,
}

impl ThermalState {
    /// `Tr e^{−βH}`; overflows for large `β|λ_min|`.
    pub fn partition_function(&self, beta: f64) -> f64 {
        self.shifted_partition * (-beta * self.ground_energy).exp()
    }
}

/// `ρ = V diag(e^{−β(λ − λ_min)}) Vᵀ / Z`.
pub fn thermal_state(h: &FullHamiltonian, beta: f64) -> Result<ThermalState> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidParameter(format!("beta must be positive and finite, got {beta}")));
    }
    let blocks = h.block_spectra()?;
    let ground = blocks
        .iter()
        .flat_map(|(_, d)| d.eigenvalues().iter().copied())
        .fold(f64::INFINITY, f64::min);
    let dim = h.dim();
    let mut data = vec![0.0; dim * dim];
    let mut z = 0.0;
    for (indices, decomposition) in &blocks {
        let m = indices.len();
        let mut block = vec![0.0; m * m];
        for (i, &lambda) in decomposition.eigenvalues().iter().enumerate() {
            let weight = (-beta * (lambda - ground)).exp();
            z += weight;
            if weight == 0.0 {
                continue;
            }
            let v = decomposition.eigenvector(i);
            for r in 0..m {
                let wr = weight * v[r];
                let row = &mut block[r * m..(r + 1) * m];
                for (x, vc) in row.iter_mut().zip(v) {
                    *x += wr * vc;
                }
            }
        }
        for (r, &sr) in indices.iter().enumerate() {
            for (c, &sc) in indices.iter().enumerate() {
                data[sr * dim + sc] = block[r * m + c];
            }
        }
    }
    for x in &mut data {
        *x /= z;
    }
    Ok(ThermalState {
        rho: FullDensityMatrix { n_qubits: h.n_qubits(), dim, data },
        shifted_partition: z,
        ground_energy: ground,
    })
}

/// Traces out every qubit except `qubit_i` and `qubit_j` (kept in that order).
pub fn partial_trace_to_pair(rho: &FullDensityMatrix, qubit_i: usize, qubit_j: usize) -> Result<DensityMatrix4> {
    let n = rho.n_qubits();
    if qubit_i >= n || qubit_j >= n || qubit_i == qubit_j {
        return Err(Error::Index(format!(
            "need two distinct qubits below {n}, got ({qubit_i}, {qubit_j})"
        )));
    }
    let shift_i = n - 1 - qubit_i;
    let shift_j = n - 1 - qubit_j;
    let place = |env: usize, local: usize| -> usize {
        // Spread the environment bits around positions shift_i and shift_j.
        let mut state = 0usize;
        let mut env_bit = 0;
        for pos in 0..n {
            if pos == shift_i {
                state |= (local >> 1 & 1) << pos;
            } else if pos == shift_j {
                state |= (local & 1) << pos;
            } else {
                state |= (env >> env_bit & 1) << pos;
                env_bit += 1;
            }
        }
        state
    };

    let mut out = [[0.0f64; 4]; 4];
    for env in 0..(1usize << (n - 2)) {
        let states: [usize; 4] = std::array::from_fn(|local| place(env, local));
        for (r, &sr) in states.iter().enumerate() {
            for (c, &sc) in states.iter().enumerate() {
                out[r][c] += rho.element(sr, sc);
            }
        }
    }
    DensityMatrix4::new(Matrix4::from_fn(|r, c| Complex64::new(out[r][c], 0.0)))
}
