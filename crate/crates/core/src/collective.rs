//! Collective-spin block structure of the all-to-all Heisenberg model.
//!
//! With `S_α = Σ_i σ_iα / 2` the Hamiltonian becomes
//! `J S² + J(Δ−1) S_z² + B S_z` up to a constant, which is fixed to zero here.
//! Total spin `s = N/2 − k` appears with multiplicity
//! `N_k = C(N,k) − C(N,k−1)` and each multiplet carries `2s + 1` magnetization
//! levels, so the whole thermodynamics reduces to O(N²) Boltzmann terms.
//!
//! All Boltzmann factors are taken relative to the ground energy,
//! `exp(−β (E − E_min))`, which keeps β up to 10³ free of overflow.

use crate::error::{Error, Result};

/// Largest qubit count for which degeneracies are computed exactly in `u64`.
pub const MAX_QUBITS: usize = 20;

/// Physical knobs of the model: qubit count N, exchange coupling J,
/// anisotropy Δ, field B and inverse temperature β (k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n_qubits: usize,
    coupling: f64,
    anisotropy: f64,
    field: f64,
    inverse_temperature: f64,
}

impl ModelParams {
    pub fn new(
        n_qubits: usize,
        coupling: f64,
        anisotropy: f64,
        field: f64,
        inverse_temperature: f64,
    ) -> Result<Self> {
        let params = Self {
            n_qubits,
            coupling,
            anisotropy,
            field,
            inverse_temperature,
        };
        params.validate()?;
        Ok(params)
    }

    /// Same as [`ModelParams::new`] but takes the temperature `T = 1/β`.
    pub fn from_temperature(
        n_qubits: usize,
        coupling: f64,
        anisotropy: f64,
        field: f64,
        temperature: f64,
    ) -> Result<Self> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "temperature must be positive and finite, got {temperature}"
            )));
        }
        Self::new(n_qubits, coupling, anisotropy, field, 1.0 / temperature)
    }

    fn validate(&self) -> Result<()> {
        if self.n_qubits < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least two qubits, got {}",
                self.n_qubits
            )));
        }
        if !(self.inverse_temperature.is_finite() && self.inverse_temperature > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "inverse temperature must be positive and finite, got {}",
                self.inverse_temperature
            )));
        }
        for (name, v) in [
            ("coupling", self.coupling),
            ("anisotropy", self.anisotropy),
            ("field", self.field),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn anisotropy(&self) -> f64 {
        self.anisotropy
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn inverse_temperature(&self) -> f64 {
        self.inverse_temperature
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.inverse_temperature
    }

    pub fn with_n_qubits(self, n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, self.coupling, self.anisotropy, self.field, self.inverse_temperature)
    }

    pub fn with_coupling(self, coupling: f64) -> Result<Self> {
        Self::new(self.n_qubits, coupling, self.anisotropy, self.field, self.inverse_temperature)
    }

    pub fn with_anisotropy(self, anisotropy: f64) -> Result<Self> {
        Self::new(self.n_qubits, self.coupling, anisotropy, self.field, self.inverse_temperature)
    }

    pub fn with_field(self, field: f64) -> Result<Self> {
        Self::new(self.n_qubits, self.coupling, self.anisotropy, field, self.inverse_temperature)
    }

    pub fn with_inverse_temperature(self, inverse_temperature: f64) -> Result<Self> {
        Self::new(self.n_qubits, self.coupling, self.anisotropy, self.field, inverse_temperature)
    }

    pub fn with_temperature(self, temperature: f64) -> Result<Self> {
        Self::from_temperature(self.n_qubits, self.coupling, self.anisotropy, self.field, temperature)
    }
}

/// One `(s, m_z)` level of the collective spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorLevel {
    /// Sector index, `s = N/2 − k`.
    pub k: usize,
    /// Number of spin-`s` multiplets, `C(N,k) − C(N,k−1)`.
    pub degeneracy: u64,
    pub spin: f64,
    pub m_z: f64,
    /// `J s(s+1) + J(Δ−1) m_z² + B m_z`.
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectorTable {
    n_qubits: usize,
    entries: Vec<SectorLevel>,
    ground_energy: f64,
}

impl SectorTable {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn entries(&self) -> &[SectorLevel] {
        &self.entries
    }

    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// Hilbert-space dimension accounted for by the table, `Σ N_k (2s+1)`.
    pub fn dimension(&self) -> u64 {
        self.entries.iter().map(|l| l.degeneracy).sum()
    }

    /// Copy of the table with `offset` added to every energy.
    pub fn with_energy_offset(&self, offset: f64) -> SectorTable {
        let entries: Vec<SectorLevel> = self
            .entries
            .iter()
            .map(|l| SectorLevel {
                energy: l.energy + offset,
                ..*l
            })
            .collect();
        let ground_energy = entries.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
        SectorTable {
            n_qubits: self.n_qubits,
            entries,
            ground_energy,
        }
    }

    /// Degeneracy-weighted, ground-shifted Boltzmann factors `N_k e^{−β(E−E_min)}`,
    /// one per entry.
    pub fn boltzmann_weights(&self, beta: f64) -> Result<Vec<f64>> {
        check_beta(beta)?;
        Ok(self
            .entries
            .iter()
            .map(|l| l.degeneracy as f64 * (-beta * (l.energy - self.ground_energy)).exp())
            .collect())
    }

    /// Thermal average of an arbitrary function of `(s, m_z)`.
    pub fn thermal_average<F>(&self, beta: f64, f: F) -> Result<f64>
    where
        F: Fn(&SectorLevel) -> f64,
    {
        let weights = self.boltzmann_weights(beta)?;
        let z: f64 = weights.iter().sum();
        let acc: f64 = self
            .entries
            .iter()
            .zip(&weights)
            .map(|(l, w)| w * f(l))
            .sum();
        Ok(acc / z)
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "inverse temperature must be positive and finite, got {beta}"
        )))
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // Exact: each partial product is itself a binomial coefficient.
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Multiplicity of total spin `N/2 − k` among N spin-1/2 particles.
pub fn sector_degeneracy(n_qubits: usize, k: usize) -> u64 {
    let n = n_qubits as u64;
    let k = k as u64;
    let lower = if k == 0 { 0 } else { binomial(n, k - 1) };
    binomial(n, k) - lower
}

pub fn build_sector_table(params: &ModelParams) -> Result<SectorTable> {
    let n = params.n_qubits();
    if n > MAX_QUBITS {
        return Err(Error::Size(format!(
            "exact degeneracies are supported up to {MAX_QUBITS} qubits, got {n}"
        )));
    }
    let (j, delta, b) = (params.coupling(), params.anisotropy(), params.field());
    let half_n = n as f64 / 2.0;

    let mut entries = Vec::new();
    for k in 0..=n / 2 {
        let degeneracy = sector_degeneracy(n, k);
        let spin = half_n - k as f64;
        for m in 0..=(n - 2 * k) {
            let m_z = m as f64 - half_n + k as f64;
            let energy = j * spin * (spin + 1.0) + j * (delta - 1.0) * m_z * m_z + b * m_z;
            entries.push(SectorLevel {
                k,
                degeneracy,
                spin,
                m_z,
                energy,
            });
        }
    }
    let ground_energy = entries.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
    Ok(SectorTable {
        n_qubits: n,
        entries,
        ground_energy,
    })
}

/// Ground-shifted partition function `Z' = Σ N_k e^{−β(E − E_min)}`.
///
/// The unshifted sum is `Z' · e^{−β E_min}`, see [`unshifted_partition_function`].
pub fn partition_function(table: &SectorTable, beta: f64) -> Result<f64> {
    Ok(table.boltzmann_weights(beta)?.iter().sum())
}

/// `Tr e^{−βH}` with the collective-spin energy zero. May overflow for large β|E_min|.
pub fn unshifted_partition_function(table: &SectorTable, beta: f64) -> Result<f64> {
    Ok(partition_function(table, beta)? * (-beta * table.ground_energy()).exp())
}

/// Returns `(⟨S_z⟩, ⟨S_z²⟩)`.
pub fn expectation_sz_moments(table: &SectorTable, beta: f64) -> Result<(f64, f64)> {
    let weights = table.boltzmann_weights(beta)?;
    let z: f64 = weights.iter().sum();
    let (mut first, mut second) = (0.0, 0.0);
    for (l, w) in table.entries().iter().zip(&weights) {
        first += w * l.m_z;
        second += w * l.m_z * l.m_z;
    }
    Ok((first / z, second / z))
}

/// Returns `⟨S_x² + S_y²⟩ = ⟨s(s+1) − m_z²⟩`.
pub fn expectation_transverse(table: &SectorTable, beta: f64) -> Result<f64> {
    table.thermal_average(beta, |l| l.spin * (l.spin + 1.0) - l.m_z * l.m_z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, j: f64, delta: f64, b: f64, beta: f64) -> ModelParams {
        ModelParams::new(n, j, delta, b, beta).unwrap()
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(ModelParams::new(1, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(2, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(2, 1.0, 1.0, 0.0, f64::INFINITY).is_err());
        assert!(ModelParams::new(2, f64::NAN, 1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::from_temperature(2, 1.0, 1.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn refuses_more_than_twenty_qubits() {
        let p = params(21, 1.0, 1.0, 0.0, 1.0);
        assert!(matches!(build_sector_table(&p), Err(Error::Size(_))));
        assert!(build_sector_table(&params(20, 1.0, 1.0, 0.0, 1.0)).is_ok());
    }

    #[test]
    fn two_qubits_split_into_triplet_and_singlet() {
        let t = build_sector_table(&params(2, 1.0, 1.0, 0.0, 1.0)).unwrap();
        let shape: Vec<(usize, u64, f64, f64)> =
            t.entries().iter().map(|l| (l.k, l.degeneracy, l.spin, l.m_z)).collect();
        assert_eq!(
            shape,
            vec![(0, 1, 1.0, -1.0), (0, 1, 1.0, 0.0), (0, 1, 1.0, 1.0), (1, 1, 0.0, 0.0)]
        );
    }

    #[test]
    fn three_qubits_quartet_and_two_doublets() {
        let t = build_sector_table(&params(3, 1.0, 1.0, 0.0, 1.0)).unwrap();
        assert_eq!(sector_degeneracy(3, 0), 1);
        assert_eq!(sector_degeneracy(3, 1), 2);
        assert_eq!(t.entries().iter().filter(|l| l.k == 0).count(), 4);
        assert_eq!(t.entries().iter().filter(|l| l.k == 1).count(), 2);
        assert_eq!(t.dimension(), 8);
    }

    #[test]
    fn six_qubit_degeneracies() {
        let d: Vec<u64> = (0..=3).map(|k| sector_degeneracy(6, k)).collect();
        assert_eq!(d, vec![1, 5, 9, 5]);
    }

    #[test]
    fn dimension_closes_up_to_twenty() {
        for n in 2..=20 {
            let t = build_sector_table(&params(n, 0.7, -0.3, 0.2, 1.0)).unwrap();
            assert_eq!(t.dimension(), 1u64 << n, "N = {n}");
            assert!(t.entries().iter().all(|l| l.degeneracy >= 1));
        }
    }

    #[test]
    fn two_qubit_partition_function() {
        // Energies: triplet 2J + J(Δ−1)m² + Bm, singlet 0.
        let t = build_sector_table(&params(2, 1.0, 1.0, 0.0, 1.0)).unwrap();
        let z = unshifted_partition_function(&t, 1.0).unwrap();
        let expected = 3.0 * (-2.0f64).exp() + 1.0;
        assert!((z - expected).abs() < 1e-12);
        assert!((z - 1.406_005_850_8).abs() < 1e-7);

        let t = build_sector_table(&params(2, 1.0, 1.0, 2.0, 1.0)).unwrap();
        let z = unshifted_partition_function(&t, 1.0).unwrap();
        let e = std::f64::consts::E;
        let expected = e.powi(-2) * (e.powi(2) + e.powi(-2) + 1.0) + 1.0;
        assert!((z - expected).abs() < 1e-12);
    }

    #[test]
    fn partition_function_tends_to_dimension() {
        for n in 2..=10 {
            let t = build_sector_table(&params(n, -1.3, 0.4, 0.9, 1.0)).unwrap();
            let z = unshifted_partition_function(&t, 1e-8).unwrap();
            let dim = (1u64 << n) as f64;
            assert!(((z - dim) / dim).abs() < 1e-6, "N = {n}: {z}");
        }
    }

    #[test]
    fn zero_field_has_no_magnetization() {
        for n in 2..=9 {
            let t = build_sector_table(&params(n, 0.8, -1.7, 0.0, 2.3)).unwrap();
            let (mz, _) = expectation_sz_moments(&t, 2.3).unwrap();
            assert!(mz.abs() < 1e-14);
        }
    }

    #[test]
    fn infinite_temperature_moments() {
        let t = build_sector_table(&params(2, 1.0, 1.0, 0.0, 1.0)).unwrap();
        let (_, sz2) = expectation_sz_moments(&t, 1e-12).unwrap();
        assert!((sz2 - 0.5).abs() < 1e-10);
        let tr = expectation_transverse(&t, 1e-12).unwrap();
        assert!((tr - 1.0).abs() < 1e-10);
    }

    #[test]
    fn singlet_ground_state_has_no_transverse_spin() {
        let t = build_sector_table(&params(2, 1.0, 1.0, 0.0, 1.0)).unwrap();
        let tr = expectation_transverse(&t, 200.0).unwrap();
        assert!(tr.abs() < 1e-15);
    }

    #[test]
    fn large_beta_does_not_overflow() {
        let t = build_sector_table(&params(20, 3.0, -2.0, 3.0, 1.0)).unwrap();
        let z = partition_function(&t, 1000.0).unwrap();
        assert!(z.is_finite() && z >= 1.0);
        let (mz, mz2) = expectation_sz_moments(&t, 1000.0).unwrap();
        assert!(mz.is_finite() && mz2.is_finite());
    }

    #[test]
    fn energy_offset_leaves_observables_unchanged() {
        // (E + c) − (E_min + c) is not bit-identical to E − E_min in IEEE
        // arithmetic, so the comparison is at the rounding level.
        for n in 2..=12 {
            let t = build_sector_table(&params(n, -0.9, 1.4, 0.6, 1.7)).unwrap();
            let shifted = t.with_energy_offset(7.3);
            let a = expectation_sz_moments(&t, 1.7).unwrap();
            let b = expectation_sz_moments(&shifted, 1.7).unwrap();
            assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
            let a = expectation_transverse(&t, 1.7).unwrap();
            let b = expectation_transverse(&shifted, 1.7).unwrap();
            assert!((a - b).abs() < 1e-12);
            let za = partition_function(&t, 1.7).unwrap();
            let zb = partition_function(&shifted, 1.7).unwrap();
            assert!(((za - zb) / za).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_beta() {
        let t = build_sector_table(&params(3, 1.0, 1.0, 0.0, 1.0)).unwrap();
        assert!(partition_function(&t, 0.0).is_err());
        assert!(expectation_transverse(&t, -1.0).is_err());
    }
}
