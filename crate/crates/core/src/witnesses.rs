//! Entanglement and nonlocality witnesses on a two-qubit state.
//!
//! - `M = u + ũ − 1`, with `u ≥ ũ` the two largest eigenvalues of `T Tᵀ`.
//!   The maximal CHSH value is `2√(u + ũ)`, so `M > 0` exactly when the CHSH
//!   bound of 2 is broken.
//! - Concurrence `C`, via the X-state shortcut and via the Wootters
//!   spin-flip spectrum.
//! - Disorder measure `D = S(A) − S(A,B)`; `D > 0` is impossible for
//!   separable states and lower-bounds the entanglement of formation.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::linalg::{sym3_eigenpairs, sym3_eigenvalues};
use crate::reduced::{
    correlation_matrix, kron2, pauli, single_qubit_reduction, to_density_matrix, von_neumann_entropy,
    Complex64, CorrelationMatrix, DensityMatrix4, XStateElements,
};

/// All witness quantities for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessReport {
    pub violation_m: f64,
    pub concurrence: f64,
    pub disorder_d: f64,
    pub chsh_max: f64,
    pub u: f64,
    pub u_tilde: f64,
    pub eof_lower: f64,
}

impl WitnessReport {
    pub fn violates_chsh(&self) -> bool {
        self.violation_m > 0.0
    }

    pub fn violates_disorder(&self) -> bool {
        self.disorder_d > 0.0
    }

    pub fn is_entangled(&self) -> bool {
        self.concurrence > 0.0
    }
}

/// Horodecki maximal CHSH value and the two eigenvalues that produce it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horodecki {
    pub chsh_max: f64,
    pub u: f64,
    pub u_tilde: f64,
}

impl Horodecki {
    pub fn violation_measure(&self) -> f64 {
        self.u + self.u_tilde - 1.0
    }
}

pub fn horodecki_violation(t: &CorrelationMatrix) -> Horodecki {
    let eig = sym3_eigenvalues(&t.gram());
    let u = eig[0].max(0.0);
    let u_tilde = eig[1].max(0.0);
    Horodecki {
        chsh_max: 2.0 * (u + u_tilde).sqrt(),
        u,
        u_tilde,
    }
}

/// `M = 8y² + (1−4w)² − min[4y², (1−4w)²] − 1`.
///
/// Evaluated as `8y² − 1` when `4y²` dominates and as `4y² − 8w(v₊ + v₋)`
/// otherwise; both are the same polynomial once `v₊ + v₋ + 2w = 1` is used,
/// but the second form does not cancel to zero when `w` is tiny.
pub fn violation_measure_from_x(x: &XStateElements) -> f64 {
    let coherence = 4.0 * x.y() * x.y();
    let zz = 1.0 - 4.0 * x.w();
    if coherence > zz * zz {
        2.0 * coherence - 1.0
    } else {
        coherence - 8.0 * x.w() * (x.v_plus() + x.v_minus())
    }
}

/// `C = 2 max{0, |y| − √(v₊ v₋)}`.
pub fn concurrence_from_x(x: &XStateElements) -> f64 {
    let product = (x.v_plus() * x.v_minus()).max(0.0);
    (2.0 * (x.y().abs() - product.sqrt())).max(0.0)
}

/// Wootters concurrence `max{0, λ₁ − λ₂ − λ₃ − λ₄}` of a general state.
///
/// The `λᵢ` are the square roots of the eigenvalues of `ρ ρ̃`, with
/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`. Equivalently they are the singular values of
/// `√ρ (σ_y⊗σ_y) √ρ*`, which is what is computed: taking square roots of
/// eigenvalues near zero would amplify rounding to `√ε`.
pub fn concurrence_wootters(rho: &DensityMatrix4) -> f64 {
    let m = *rho.matrix();
    let yy = kron2(&pauli(1), &pauli(1));

    let eig = SymmetricEigen::new(m);
    let sqrt_diag = Matrix4::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)));
    let sqrt_rho = eig.eigenvectors * sqrt_diag * eig.eigenvectors.adjoint();
    let a = sqrt_rho * yy * sqrt_rho.conjugate();

    let mut lambdas: Vec<f64> = a.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

fn plog2(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// `plog2(a) − plog2(a + w)` without cancellation when `w ≪ a`.
fn plog2_gap(a: f64, w: f64) -> f64 {
    if a <= 0.0 {
        return -plog2(w);
    }
    if w <= 0.0 {
        return 0.0;
    }
    -a * (w / a).ln_1p() / std::f64::consts::LN_2 - w * (a + w).log2()
}

/// `D = S(A) − S(A,B)` from the six-term closed form.
///
/// The terms are paired so that near-product states (tiny `w`) keep the sign
/// of `D` instead of rounding noise.
pub fn disorder_measure(x: &XStateElements) -> f64 {
    let (vp, vm, w, y) = (x.v_plus(), x.v_minus(), x.w(), x.y());
    plog2_gap(vp, w) + plog2_gap(vm, w) + plog2(w - y) + plog2(w + y)
}

/// `D = S(A) − S(A,B)` through explicit eigen-decompositions.
pub fn disorder_from_entropies(rho: &DensityMatrix4) -> Result<f64> {
    let s_a = von_neumann_entropy(&single_qubit_reduction(rho))?;
    let s_ab = von_neumann_entropy(rho)?;
    Ok(s_a - s_ab)
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    -plog2(p) - plog2(1.0 - p)
}

/// Two-qubit entanglement of formation from the concurrence.
pub fn entanglement_of_formation(concurrence: f64) -> f64 {
    let c = concurrence.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt()))
}

/// Returns `(E_f, D)`. `E_f ≥ D` must hold for every state.
pub fn eof_lower_check(x: &XStateElements) -> (f64, f64) {
    (entanglement_of_formation(concurrence_from_x(x)), disorder_measure(x))
}

/// Witness report for the model's X-state.
pub fn witness_report(x: &XStateElements) -> WitnessReport {
    let h = horodecki_violation(&CorrelationMatrix::from_x_state(x));
    let concurrence = concurrence_from_x(x);
    WitnessReport {
        violation_m: violation_measure_from_x(x),
        concurrence,
        disorder_d: disorder_measure(x),
        chsh_max: h.chsh_max,
        u: h.u,
        u_tilde: h.u_tilde,
        eof_lower: entanglement_of_formation(concurrence),
    }
}

/// Witness report for a general two-qubit state, using only matrix routes.
pub fn witness_report_general(rho: &DensityMatrix4) -> Result<WitnessReport> {
    let h = horodecki_violation(&correlation_matrix(rho));
    let concurrence = concurrence_wootters(rho);
    Ok(WitnessReport {
        violation_m: h.violation_measure(),
        concurrence,
        disorder_d: disorder_from_entropies(rho)?,
        chsh_max: h.chsh_max,
        u: h.u,
        u_tilde: h.u_tilde,
        eof_lower: entanglement_of_formation(concurrence),
    })
}

/// Measurement directions `a, a′` (first qubit) and `b, b′` (second qubit)
/// for the CHSH operator `a·σ ⊗ (b + b′)·σ + a′·σ ⊗ (b − b′)·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalSettings {
    pub a: [f64; 3],
    pub a_prime: [f64; 3],
    pub b: [f64; 3],
    pub b_prime: [f64; 3],
}

fn spin_along(v: &[f64; 3]) -> nalgebra::Matrix2<Complex64> {
    (0..3).fold(nalgebra::Matrix2::zeros(), |acc, i| acc + pauli(i) * Complex64::new(v[i], 0.0))
}

fn add(a: &[f64; 3], b: &[f64; 3], sign: f64) -> [f64; 3] {
    [a[0] + sign * b[0], a[1] + sign * b[1], a[2] + sign * b[2]]
}

fn norm(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn scale(v: &[f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

/// Any unit vector orthogonal to `v`.
fn orthogonal_unit(v: &[f64; 3]) -> [f64; 3] {
    let axis = if v[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let cross = [
        v[1] * axis[2] - v[2] * axis[1],
        v[2] * axis[0] - v[0] * axis[2],
        v[0] * axis[1] - v[1] * axis[0],
    ];
    scale(&cross, 1.0 / norm(&cross))
}

impl OptimalSettings {
    pub fn chsh_operator(&self) -> Matrix4<Complex64> {
        let sum = add(&self.b, &self.b_prime, 1.0);
        let diff = add(&self.b, &self.b_prime, -1.0);
        kron2(&spin_along(&self.a), &spin_along(&sum)) + kron2(&spin_along(&self.a_prime), &spin_along(&diff))
    }

    /// `tr(ρ B̂)`.
    pub fn expectation(&self, rho: &DensityMatrix4) -> f64 {
        rho.expectation(&self.chsh_operator()).re
    }
}

/// Settings reaching `2√(u + ũ)`, built from the two dominant singular
/// directions of `T`.
///
/// With `T fᵢ = sᵢ eᵢ`, take `b, b′ = cos θ f₁ ± sin θ f₂`, `a = e₁`,
/// `a′ = e₂` and `tan θ = s₂/s₁`.
pub fn optimal_settings(t: &CorrelationMatrix) -> Result<OptimalSettings> {
    let (values, right) = sym3_eigenpairs(&t.gram_transposed())?;
    let s1 = values[0].max(0.0).sqrt();
    let s2 = values[1].max(0.0).sqrt();
    if s1 <= 1e-14 {
        return Err(Error::NoSettings);
    }
    let f1 = right[0];
    let f2 = right[1];
    let e1 = scale(&t.apply(&f1), 1.0 / s1);
    let e2 = if s2 > 1e-14 * s1 {
        scale(&t.apply(&f2), 1.0 / s2)
    } else {
        orthogonal_unit(&e1)
    };
    let hyp = s1.hypot(s2);
    let (cos, sin) = (s1 / hyp, s2 / hyp);
    let b = add(&scale(&f1, cos), &scale(&f2, sin), 1.0);
    let b_prime = add(&scale(&f1, cos), &scale(&f2, sin), -1.0);
    let unit = |v: [f64; 3]| scale(&v, 1.0 / norm(&v));
    Ok(OptimalSettings {
        a: unit(e1),
        a_prime: unit(e2),
        b: unit(b),
        b_prime: unit(b_prime),
    })
}

/// For a pure state returns `(chsh_max, 2√(1 + C²))`, computed independently:
/// the first through the Horodecki eigenvalues, the second through
/// `C = 2|α₀₀α₁₁ − α₀₁α₁₀|`.
pub fn pure_state_relation(psi: &[Complex64; 4]) -> Result<(f64, f64)> {
    let rho = DensityMatrix4::from_pure(psi)?;
    let chsh = horodecki_violation(&correlation_matrix(&rho)).chsh_max;
    let c = 2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm();
    Ok((chsh, 2.0 * (1.0 + c * c).sqrt()))
}

/// Witness report of the X-state built into a matrix, for cross-checks.
pub fn witness_report_via_matrix(x: &XStateElements) -> Result<WitnessReport> {
    witness_report_general(&to_density_matrix(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_8, SQRT_2};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn diag(a: f64, b: f64, c: f64) -> CorrelationMatrix {
        CorrelationMatrix::new([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]]).unwrap()
    }

    fn werner(p: f64) -> DensityMatrix4 {
        let singlet = to_density_matrix(&XStateElements::singlet());
        let mixed = DensityMatrix4::maximally_mixed();
        DensityMatrix4::new(singlet.matrix() * c(p) + mixed.matrix() * c(1.0 - p)).unwrap()
    }

    #[test]
    fn horodecki_examples() {
        let h = horodecki_violation(&diag(0.0, 0.0, 0.0));
        assert_eq!((h.chsh_max, h.u, h.u_tilde), (0.0, 0.0, 0.0));

        let h = horodecki_violation(&diag(-1.0, -1.0, -1.0));
        close(h.chsh_max, 2.0 * SQRT_2, 1e-15);
        close(h.u, 1.0, 1e-15);
        close(h.u_tilde, 1.0, 1e-15);

        let h = horodecki_violation(&diag(0.2, 0.2, 0.2));
        close(h.chsh_max, 2.0 * 0.08f64.sqrt(), 1e-15);
        close(h.chsh_max, 0.566, 1e-3);
    }

    #[test]
    fn violation_measure_examples() {
        close(violation_measure_from_x(&XStateElements::singlet()), 1.0, 0.0);
        close(violation_measure_from_x(&XStateElements::maximally_mixed()), -1.0, 0.0);
    }

    #[test]
    fn violation_measure_tie_point() {
        // 4y² = (1−4w)²: both branches of min[] agree.
        let x = XStateElements::new(0.3, 0.3, 0.2, 0.1).unwrap();
        let literal = 8.0 * 0.01 + 0.04 - 0.04 - 1.0;
        close(violation_measure_from_x(&x), literal, 1e-15);
        let h = horodecki_violation(&CorrelationMatrix::from_x_state(&x));
        close(h.violation_measure(), literal, 1e-15);
    }

    #[test]
    fn concurrence_examples() {
        close(concurrence_from_x(&XStateElements::singlet()), 1.0, 0.0);
        close(concurrence_from_x(&XStateElements::maximally_mixed()), 0.0, 0.0);
        close(concurrence_wootters(&to_density_matrix(&XStateElements::singlet())), 1.0, 1e-12);
        let product = [c(0.6), c(0.8), c(0.0), c(0.0)];
        close(concurrence_wootters(&DensityMatrix4::from_pure(&product).unwrap()), 0.0, 1e-12);
    }

    #[test]
    fn werner_concurrence() {
        close(concurrence_wootters(&werner(0.8)), 0.7, 1e-12);
        close(concurrence_wootters(&werner(0.2)), 0.0, 0.0);
    }

    #[test]
    fn disorder_examples() {
        close(disorder_measure(&XStateElements::singlet()), 1.0, 0.0);
        close(disorder_measure(&XStateElements::maximally_mixed()), -1.0, 1e-15);
        let singlet = to_density_matrix(&XStateElements::singlet());
        close(disorder_from_entropies(&singlet).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn eof_examples() {
        let (eof, d) = eof_lower_check(&XStateElements::singlet());
        close(eof, 1.0, 1e-15);
        close(d, 1.0, 0.0);
        let (eof, d) = eof_lower_check(&XStateElements::maximally_mixed());
        close(eof, 0.0, 0.0);
        close(d, -1.0, 1e-15);
    }

    #[test]
    fn disorder_keeps_sign_for_near_product_states() {
        let w = 2.484729891242149e-90;
        let x = XStateElements::new(0.8619237355739844, 0.13807626442601553 - 2.0 * w, w, -0.1 * w).unwrap();
        let d = disorder_measure(&x);
        assert!(d < 0.0 && d > -1e-80, "{d:e}");
        assert_eq!(concurrence_from_x(&x), 0.0);
    }

    #[test]
    fn singlet_settings_reach_tsirelson() {
        let rho = to_density_matrix(&XStateElements::singlet());
        let s = optimal_settings(&correlation_matrix(&rho)).unwrap();
        close(s.expectation(&rho).abs(), 2.0 * SQRT_2, 1e-12);
    }

    #[test]
    fn planar_settings_when_coherence_dominates() {
        let x = XStateElements::new(0.1, 0.1, 0.4, -0.4).unwrap();
        let t = CorrelationMatrix::from_x_state(&x);
        let s = optimal_settings(&t).unwrap();
        for v in [s.a, s.a_prime, s.b, s.b_prime] {
            assert!(v[2].abs() < 1e-12, "{v:?}");
            close(norm(&v), 1.0, 1e-12);
        }
        close(s.expectation(&to_density_matrix(&x)), horodecki_violation(&t).chsh_max, 1e-9);
    }

    #[test]
    fn settings_require_correlations() {
        assert_eq!(optimal_settings(&diag(0.0, 0.0, 0.0)), Err(Error::NoSettings));
    }

    #[test]
    fn rank_one_correlations() {
        // |00⟩: T = diag(0, 0, 1), classical value 2.
        let rho = DensityMatrix4::from_pure(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        let t = correlation_matrix(&rho);
        let s = optimal_settings(&t).unwrap();
        close(s.expectation(&rho), 2.0, 1e-12);
    }

    #[test]
    fn pure_state_examples() {
        let (a, b) = pure_state_relation(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        close(a, 2.0, 1e-12);
        close(b, 2.0, 1e-12);

        let s = 0.5f64.sqrt();
        let (a, b) = pure_state_relation(&[c(0.0), c(s), c(-s), c(0.0)]).unwrap();
        close(a, 2.0 * SQRT_2, 1e-12);
        close(b, 2.0 * SQRT_2, 1e-12);

        let theta = FRAC_PI_8;
        let psi = [c(theta.cos()), c(0.0), c(0.0), c(theta.sin())];
        let expected = 2.0 * (1.0 + (2.0 * theta).sin().powi(2)).sqrt();
        let (a, b) = pure_state_relation(&psi).unwrap();
        close(a, expected, 1e-12);
        close(b, expected, 1e-12);
        close(concurrence_wootters(&DensityMatrix4::from_pure(&psi).unwrap()), (2.0 * theta).sin(), 1e-12);

        assert!(matches!(pure_state_relation(&[c(1.0), c(1.0), c(0.0), c(0.0)]), Err(Error::NotNormalized(_))));
    }
}
