//! Truncated Fock-space linear algebra: state vectors, Hermitian operators,
//! coherent states, ladder and quadrature operators, and the position-basis
//! eigenfunctions of the quadrature X = (a^dag + a)/2.
//!
//! All constructions carry explicit truncation-loss metadata: the probability
//! weight an analytically normalized object loses to the finite dimension.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::poisson_pmf;

/// Probability weight a default construction may discard to truncation.
pub const TOL_TRUNC: f64 = 1e-10;

/// Elementwise Hermiticity tolerance for operator constructions.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// A point alpha = x + iy of the single-mode phase plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub re: f64,
    pub im: f64,
}

impl PhasePoint {
    pub fn new(re: f64, im: f64) -> Self {
        assert!(re.is_finite() && im.is_finite(), "phase point must be finite");
        Self { re, im }
    }

    pub fn origin() -> Self {
        Self { re: 0.0, im: 0.0 }
    }

    pub fn modulus_sq(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn modulus(&self) -> f64 {
        self.modulus_sq().sqrt()
    }

    pub fn as_complex(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

impl From<C64> for PhasePoint {
    fn from(z: C64) -> Self {
        Self::new(z.re, z.im)
    }
}

/// A truncated number basis |0>, ..., |D-1>.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 2, "Fock space needs dim >= 2, got {dim}");
        Self { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Smallest dimension keeping the Poisson tail of a coherent state with
    /// amplitude `alpha` at or below `budget`.
    pub fn for_coherent(alpha: PhasePoint, budget: f64) -> Self {
        let mean = alpha.modulus_sq();
        let mut cumulative = 0.0;
        let mut n = 0u64;
        loop {
            cumulative += poisson_pmf(n, mean);
            if 1.0 - cumulative <= budget {
                break;
            }
            n += 1;
            if n > 100_000 {
                break;
            }
        }
        Self::new(((n + 1) as usize).max(2))
    }

    /// Fallback dimension heuristic for a state of known mean occupation.
    pub fn for_mean_occupation(mean: f64) -> Self {
        let d = (mean + 8.0 * (mean + 1.0).sqrt() + 10.0).ceil() as usize;
        Self::new(d.max(2))
    }

    fn check_match(&self, other: &FockSpace) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::SpaceMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

/// A (near-)normalized vector in a truncated Fock space.
#[derive(Debug, Clone)]
pub struct FockVector {
    pub space: FockSpace,
    pub amplitudes: DVector<C64>,
    /// 1 - |v|^2 for analytically normalized constructions.
    pub truncation_loss: f64,
}

impl FockVector {
    pub fn new(space: FockSpace, amplitudes: DVector<C64>, truncation_loss: f64) -> Self {
        assert_eq!(space.dim(), amplitudes.len());
        Self {
            space,
            amplitudes,
            truncation_loss,
        }
    }

    /// Number state |n>.
    pub fn number(space: FockSpace, n: usize) -> Self {
        assert!(n < space.dim(), "number state {n} outside dim {}", space.dim());
        let mut v = DVector::zeros(space.dim());
        v[n] = C64::new(1.0, 0.0);
        Self::new(space, v, 0.0)
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &FockVector) -> Result<C64> {
        self.space.check_match(&other.space)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Rank-one projector |v><v|.
    pub fn projector(&self) -> DMatrix<C64> {
        let n = self.amplitudes.len();
        DMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }

    /// Zero-pad into a larger space.
    pub fn embed(&self, space: FockSpace) -> FockVector {
        assert!(space.dim() >= self.space.dim());
        let mut v = DVector::zeros(space.dim());
        for i in 0..self.space.dim() {
            v[i] = self.amplitudes[i];
        }
        FockVector::new(space, v, self.truncation_loss)
    }
}

/// What an operator represents, which fixes its validation rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    State,
    PovmElement,
    Generic,
}

/// A dense operator on a truncated Fock space.
#[derive(Debug, Clone)]
pub struct FockOperator {
    pub space: FockSpace,
    pub matrix: DMatrix<C64>,
    pub kind: OperatorKind,
    pub truncation_loss: f64,
}

impl FockOperator {
    /// A density operator. Checks Hermiticity and that the trace accounts for
    /// the declared truncation loss.
    pub fn state(space: FockSpace, matrix: DMatrix<C64>, truncation_loss: f64) -> Result<Self> {
        check_hermitian(&matrix)?;
        let op = Self {
            space,
            matrix,
            kind: OperatorKind::State,
            truncation_loss,
        };
        let trace = op.trace();
        if (trace - (1.0 - truncation_loss)).abs() > 1e-9 || trace > 1.0 + 1e-12 {
            return Err(Error::Truncation {
                loss: 1.0 - trace,
                budget: truncation_loss + 1e-9,
            });
        }
        Ok(op)
    }

    /// A POVM element: Hermitian with spectrum inside [0, 1].
    pub fn povm_element(space: FockSpace, matrix: DMatrix<C64>) -> Result<Self> {
        check_hermitian(&matrix)?;
        let op = Self {
            space,
            matrix,
            kind: OperatorKind::PovmElement,
            truncation_loss: 0.0,
        };
        let (min, max) = op.eigenvalue_range();
        if min < -1e-12 || max > 1.0 + 1e-12 {
            return Err(Error::PovmBound { min, max });
        }
        Ok(op)
    }

    pub fn generic(space: FockSpace, matrix: DMatrix<C64>) -> Self {
        Self {
            space,
            matrix,
            kind: OperatorKind::Generic,
            truncation_loss: 0.0,
        }
    }

    /// Pure-state density operator from a vector.
    pub fn from_vector(v: &FockVector, kind: OperatorKind) -> Result<Self> {
        let matrix = v.projector();
        match kind {
            OperatorKind::State => Self::state(v.space, matrix, v.truncation_loss),
            OperatorKind::PovmElement => Self::povm_element(v.space, matrix),
            OperatorKind::Generic => Ok(Self::generic(v.space, matrix)),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn trace(&self) -> f64 {
        let t: C64 = (0..self.dim()).map(|i| self.matrix[(i, i)]).sum();
        assert!(
            t.im.abs() < 1e-10,
            "trace has imaginary residue {:.3e}",
            t.im
        );
        t.re
    }

    /// Diagonal entries as reals (imaginary parts asserted negligible).
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                let d = self.matrix[(i, i)];
                assert!(d.im.abs() < 1e-10);
                d.re
            })
            .collect()
    }

    /// Whether the operator is diagonal in the number basis (phase symmetric).
    pub fn is_diagonal(&self) -> bool {
        let scale = self
            .matrix
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j && self.matrix[(i, j)].norm() > 1e-12 * scale {
                    return false;
                }
            }
        }
        true
    }

    /// Extreme eigenvalues of the Hermitian matrix.
    pub fn eigenvalue_range(&self) -> (f64, f64) {
        if self.is_diagonal() {
            let diag = self.diagonal();
            let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
            let max = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            return (min, max);
        }
        let eig = self.matrix.clone().symmetric_eigen();
        let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let max = eig
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        (min, max)
    }

    /// Assert positive semidefiniteness up to `floor` (a small negative slack).
    pub fn validate_psd(&self, floor: f64) -> Result<()> {
        let (min, _) = self.eigenvalue_range();
        if min < floor {
            return Err(Error::Domain(format!(
                "operator has eigenvalue {min:.3e} below PSD floor {floor:.3e}"
            )));
        }
        Ok(())
    }

    /// Zero-pad into a larger space.
    pub fn embed(&self, space: FockSpace) -> FockOperator {
        assert!(space.dim() >= self.dim());
        let mut m = DMatrix::zeros(space.dim(), space.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                m[(i, j)] = self.matrix[(i, j)];
            }
        }
        FockOperator {
            space,
            matrix: m,
            kind: self.kind,
            truncation_loss: self.truncation_loss,
        }
    }
}

fn check_hermitian(m: &DMatrix<C64>) -> Result<()> {
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            let delta = m[(i, j)] - m[(j, i)].conj();
            if delta.norm() > HERMITICITY_TOL {
                return Err(Error::Domain(format!(
                    "matrix is not Hermitian at ({i}, {j}): asymmetry {:.3e}",
                    delta.norm()
                )));
            }
        }
    }
    Ok(())
}

/// (A + A^dag)/2, killing roundoff asymmetry after channel applications.
pub fn hermitize(m: &DMatrix<C64>) -> DMatrix<C64> {
    let n = m.nrows();
    DMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()))
}

/// Coherent state |alpha> truncated to `space`.
///
/// Amplitudes follow c_{n+1} = c_n alpha / sqrt(n + 1) from
/// c_0 = exp(-|alpha|^2 / 2); the discarded Poisson tail is reported as
/// `truncation_loss` and must stay within `TOL_TRUNC`.
pub fn coherent_vector(alpha: PhasePoint, space: FockSpace) -> Result<FockVector> {
    let a = alpha.as_complex();
    let mut amplitudes = DVector::zeros(space.dim());
    let mut c = C64::new((-alpha.modulus_sq() / 2.0).exp(), 0.0);
    for n in 0..space.dim() {
        amplitudes[n] = c;
        c *= a / C64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
    let loss = (1.0 - norm_sq).max(0.0);
    if loss > TOL_TRUNC {
        return Err(Error::Truncation {
            loss,
            budget: TOL_TRUNC,
        });
    }
    Ok(FockVector::new(space, amplitudes, loss))
}

/// Coherent state in the default space chosen by the truncation rule.
pub fn coherent_vector_auto(alpha: PhasePoint) -> FockVector {
    let space = FockSpace::for_coherent(alpha, TOL_TRUNC);
    coherent_vector(alpha, space).expect("auto-sized coherent state within budget")
}

/// The lowering operator a with a|n> = sqrt(n) |n-1>.
pub fn annihilation_operator(space: FockSpace) -> FockOperator {
    let d = space.dim();
    let mut m = DMatrix::zeros(d, d);
    for n in 1..d {
        m[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    FockOperator::generic(space, m)
}

/// The number operator a^dag a.
pub fn number_operator(space: FockSpace) -> FockOperator {
    let d = space.dim();
    let m = DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            C64::new(i as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    FockOperator::generic(space, m)
}

/// Rotated quadrature X_theta = (a^dag e^{-i theta} + a e^{i theta}) / 2.
pub fn quadrature_operator(theta: f64, space: FockSpace) -> FockOperator {
    let a = annihilation_operator(space).matrix;
    let phase = C64::from_polar(1.0, theta);
    let m = (a.adjoint() * phase.conj() + a * phase) * C64::new(0.5, 0.0);
    FockOperator::generic(space, m)
}

/// tr(op . state), real up to an asserted imaginary residue.
pub fn expectation(op: &FockOperator, state: &FockOperator) -> Result<f64> {
    let z = expectation_complex(op, state)?;
    assert!(
        z.im.abs() < 1e-10,
        "expectation has imaginary residue {:.3e}",
        z.im
    );
    Ok(z.re)
}

/// tr(op . state) without the reality assertion.
pub fn expectation_complex(op: &FockOperator, state: &FockOperator) -> Result<C64> {
    op.space.check_match(&state.space)?;
    let d = op.dim();
    let mut sum = C64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            sum += op.matrix[(i, k)] * state.matrix[(k, i)];
        }
    }
    Ok(sum)
}

/// |<v1|v2>|^2.
pub fn overlap_probability(v1: &FockVector, v2: &FockVector) -> Result<f64> {
    Ok(v1.inner(v2)?.norm_sqr())
}

/// Quadrature eigenfunction psi_n(x) = <x|n> in the X = (a^dag + a)/2
/// convention, so |psi_0(x)|^2 = sqrt(2/pi) exp(-2 x^2).
pub fn fock_wavefunction(n: usize, x: f64) -> f64 {
    wavefunction_table(n, x)[n]
}

/// psi_0(x), ..., psi_{n_max}(x) by the stable three-term recurrence
/// psi_{n+1} = 2x psi_n / sqrt(n+1) - sqrt(n/(n+1)) psi_{n-1}.
pub fn wavefunction_table(n_max: usize, x: f64) -> Vec<f64> {
    let mut table = Vec::with_capacity(n_max + 1);
    let psi0 = (2.0 / std::f64::consts::PI).powf(0.25) * (-x * x).exp();
    table.push(psi0);
    if n_max == 0 {
        return table;
    }
    table.push(2.0 * x * psi0);
    for n in 1..n_max {
        let np1 = (n + 1) as f64;
        let next = 2.0 * x * table[n] / np1.sqrt() - (n as f64 / np1).sqrt() * table[n - 1];
        table.push(next);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{adaptive_quadrature, ln_factorial};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coherent_vacuum_is_exact() {
        let v = coherent_vector(PhasePoint::origin(), FockSpace::new(8)).unwrap();
        assert_eq!(v.truncation_loss, 0.0);
        assert_eq!(v.amplitudes[0], C64::new(1.0, 0.0));
        assert!(v.amplitudes.iter().skip(1).all(|c| c.norm() == 0.0));
    }

    #[test]
    fn coherent_one_photon_weight_matches_poisson_oracle() {
        // independent oracle: Poisson pmf at n = 1, mean 1, via explicit product
        let mean: f64 = 1.0;
        let oracle = (-mean).exp() * mean / 1.0;
        let v = coherent_vector(PhasePoint::new(1.0, 0.0), FockSpace::new(32)).unwrap();
        assert_relative_eq!(v.amplitudes[1].norm_sqr(), oracle, epsilon = 1e-14);
        assert_relative_eq!(oracle, 0.36788, epsilon = 1e-5);
    }

    #[test]
    fn coherent_normalization_at_d32() {
        let v = coherent_vector(PhasePoint::new(1.0, 0.0), FockSpace::new(32)).unwrap();
        assert_abs_diff_eq!(v.norm_sq(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn coherent_amplitudes_match_recurrence_and_log_space_formula() {
        let alpha = PhasePoint::new(1.3, -0.7);
        let v = coherent_vector(alpha, FockSpace::new(40)).unwrap();
        // c_{n+1} = c_n alpha / sqrt(n+1), relative 1e-14
        for n in 0..39 {
            let stepped = v.amplitudes[n] * alpha.as_complex() / C64::new(((n + 1) as f64).sqrt(), 0.0);
            assert!((stepped - v.amplitudes[n + 1]).norm() <= 1e-14 * stepped.norm());
        }
        // independent oracle: c_n = exp(-|a|^2/2 + n ln|a| - ln(n!)/2) e^{i n arg a}
        let r = alpha.modulus();
        let arg = alpha.im.atan2(alpha.re);
        for n in 0..40 {
            let ln_mag = -alpha.modulus_sq() / 2.0 + n as f64 * r.ln() - 0.5 * ln_factorial(n as u64);
            let oracle = C64::from_polar(ln_mag.exp(), n as f64 * arg);
            assert!((v.amplitudes[n] - oracle).norm() <= 1e-13 * oracle.norm());
        }
    }

    #[test]
    fn coherent_truncation_error_fires() {
        let err = coherent_vector(PhasePoint::new(4.0, 0.0), FockSpace::new(8));
        assert!(matches!(err, Err(Error::Truncation { .. })));
    }

    #[test]
    fn auto_space_respects_budget() {
        let v = coherent_vector_auto(PhasePoint::new(2.5, 1.0));
        assert!(v.truncation_loss <= TOL_TRUNC);
    }

    #[test]
    fn vacuum_quadrature_second_moment_quarter_for_all_theta() {
        let space = FockSpace::new(16);
        let vac = FockOperator::from_vector(&FockVector::number(space, 0), OperatorKind::State).unwrap();
        for k in 0..8 {
            let theta = k as f64 * std::f64::consts::PI / 4.0;
            let x = quadrature_operator(theta, space);
            let x_sq = FockOperator::generic(space, &x.matrix * &x.matrix);
            assert_relative_eq!(expectation(&x_sq, &vac).unwrap(), 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn quadrature_theta_zero_is_symmetric_ladder_sum() {
        let space = FockSpace::new(6);
        let x = quadrature_operator(0.0, space);
        let a = annihilation_operator(space).matrix;
        let expected = (&a + a.adjoint()) * C64::new(0.5, 0.0);
        assert!((&x.matrix - expected).iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn quadrature_commutator_matches_matrix_oracle() {
        // matrix-product oracle for [X_0, X_{pi/2}] with X_theta as built above:
        // on the untruncated block the commutator is -(i/2) I.
        let space = FockSpace::new(24);
        let x0 = quadrature_operator(0.0, space).matrix;
        let x1 = quadrature_operator(std::f64::consts::FRAC_PI_2, space).matrix;
        let comm = &x0 * &x1 - &x1 * &x0;
        for i in 0..space.dim() - 1 {
            for j in 0..space.dim() - 1 {
                let expected = if i == j { C64::new(0.0, -0.5) } else { C64::new(0.0, 0.0) };
                assert!((comm[(i, j)] - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn number_projector_traces() {
        let space = FockSpace::new(8);
        let one = FockOperator::from_vector(&FockVector::number(space, 1), OperatorKind::State).unwrap();
        assert_relative_eq!(one.trace(), 1.0, epsilon = 1e-14);
        // p_1 = tr(|1><1| |1><1|) = 1
        assert_relative_eq!(expectation(&one, &one).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn expectation_space_mismatch() {
        let a = FockOperator::from_vector(&FockVector::number(FockSpace::new(4), 0), OperatorKind::State).unwrap();
        let b = FockOperator::from_vector(&FockVector::number(FockSpace::new(6), 0), OperatorKind::State).unwrap();
        assert!(matches!(expectation(&a, &b), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn wavefunction_ground_state_density() {
        let psi0 = fock_wavefunction(0, 0.0);
        assert_relative_eq!(psi0 * psi0, (2.0 / std::f64::consts::PI).sqrt(), epsilon = 1e-14);
        assert_relative_eq!(psi0 * psi0, 0.79788, epsilon = 1e-5);
    }

    #[test]
    fn wavefunction_odd_parity_node() {
        assert_eq!(fock_wavefunction(1, 0.0), 0.0);
        assert_abs_diff_eq!(fock_wavefunction(7, 0.0), 0.0, epsilon = 1e-300);
    }

    #[test]
    fn wavefunctions_orthonormal_by_quadrature_oracle() {
        let overlap35 = adaptive_quadrature(
            &|x| fock_wavefunction(3, x) * fock_wavefunction(5, x),
            -10.0,
            10.0,
            1e-12,
        )
        .unwrap();
        assert_abs_diff_eq!(overlap35, 0.0, epsilon = 1e-10);
        for n in 0..6 {
            let norm = adaptive_quadrature(
                &|x| fock_wavefunction(n, x).powi(2),
                -10.0,
                10.0,
                1e-12,
            )
            .unwrap();
            assert_relative_eq!(norm, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn coherent_quadrature_density_matches_gaussian() {
        // |<x|alpha>|^2 = sqrt(2/pi) exp(-2 (x - x')^2) for real alpha = x'
        let space = FockSpace::new(40);
        let x_prime = 0.8;
        let v = coherent_vector(PhasePoint::new(x_prime, 0.0), space).unwrap();
        for &x in &[-0.5, 0.0, 0.4, 1.1] {
            let table = wavefunction_table(space.dim() - 1, x);
            let amp: C64 = (0..space.dim())
                .map(|n| v.amplitudes[n] * C64::new(table[n], 0.0))
                .sum();
            let expected = (2.0 / std::f64::consts::PI).sqrt() * (-2.0 * (x - x_prime).powi(2)).exp();
            assert_relative_eq!(amp.norm_sqr(), expected, max_relative = 1e-9);
        }
    }

    #[test]
    fn doubling_dimension_leaves_expectations_stable() {
        let alpha = PhasePoint::new(1.2, 0.4);
        for d in [24usize, 32] {
            let s1 = FockSpace::new(d);
            let s2 = FockSpace::new(2 * d);
            let v1 = coherent_vector(alpha, s1).unwrap();
            let v2 = coherent_vector(alpha, s2).unwrap();
            let rho1 = FockOperator::from_vector(&v1, OperatorKind::State).unwrap();
            let rho2 = FockOperator::from_vector(&v2, OperatorKind::State).unwrap();
            let n1 = expectation(&number_operator(s1), &rho1).unwrap();
            let n2 = expectation(&number_operator(s2), &rho2).unwrap();
            assert!((n1 - n2).abs() < 10.0 * TOL_TRUNC);
        }
    }

    #[test]
    fn probability_bounded_by_povm_trace() {
        // 0 <= tr(rho Delta) <= tr Delta over random states and elements
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let space = FockSpace::new(10);
        for _ in 0..50 {
            let raw = DMatrix::from_fn(10, 10, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            let psd = &raw * raw.adjoint();
            let tr: f64 = (0..10).map(|i| psd[(i, i)].re).sum();
            let rho = FockOperator::state(space, psd / C64::new(tr, 0.0), 0.0).unwrap();

            let raw2 = DMatrix::from_fn(10, 10, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            let psd2 = &raw2 * raw2.adjoint();
            let top = FockOperator::generic(space, psd2.clone()).eigenvalue_range().1;
            let delta = FockOperator::povm_element(space, psd2 / C64::new(top * (1.0 + 1e-12), 0.0)).unwrap();

            let p = expectation(&delta, &rho).unwrap();
            assert!(p >= -1e-12);
            assert!(p <= delta.trace() + 1e-10);
        }
    }

    #[test]
    fn povm_bound_error_fires() {
        let space = FockSpace::new(4);
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(1.5, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ]));
        assert!(matches!(
            FockOperator::povm_element(space, m),
            Err(Error::PovmBound { .. })
        ));
    }

    #[test]
    fn hermiticity_rejected() {
        let space = FockSpace::new(3);
        let mut m = DMatrix::zeros(3, 3);
        m[(0, 1)] = C64::new(0.3, 0.0);
        assert!(FockOperator::state(space, m, 0.0).is_err());
    }
}
