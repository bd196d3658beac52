//! Dense operator representation of the star, with Gibbs states from exact
//! diagonalization.
//!
//! This is the only route that covers the isotropic-Heisenberg variant
//!
//! ```text
//! H = h Σ_{n=0}^{N} σ_z,n + g Σ_{i∈{x,y,z}} Σ_{n=1}^{N} σ_i,0 σ_i,n
//! ```
//!
//! whose transverse terms leave no closed form. For the longitudinal-Ising
//! kind the same machinery reproduces the enumeration oracle, which pins the
//! basis conventions. Matrices are complex throughout; the flip-flop
//! elements `σ_x σ_x + σ_y σ_y` happen to be real (value 2 between
//! anti-aligned pairs), but reduced states of arbitrary inputs need not be.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cycle::CycleReport;
use crate::params::SpinStarParams;
use crate::{Error, Result};

pub(crate) type CMatrix = DMatrix<Complex64>;

/// Largest ancilla count handled densely (dimension 2^13 = 8192).
pub const MAX_DENSE_ANCILLAS: usize = 12;

/// Interaction content of the star Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteractionKind {
    /// Longitudinal coupling g·σ_z,0·σ_z,n only; diagonal.
    Ising,
    /// Isotropic coupling g·(σ_x σ_x + σ_y σ_y + σ_z σ_z) per ancilla.
    Heisenberg,
}

/// Max |A - A†| over entries.
pub(crate) fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// A Hermitian operator on the star's Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    matrix: CMatrix,
}

impl DenseOperator {
    /// Wrap a matrix, insisting on Hermiticity.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let deviation = hermiticity_deviation(&matrix);
        if deviation > 1e-13 {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// True when every off-diagonal entry is exactly zero.
    fn is_diagonal(&self) -> bool {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j && self.matrix[(i, j)] != Complex64::ZERO {
                    return false;
                }
            }
        }
        true
    }
}

/// Spin value (±1) of `qubit` in basis state `config`; qubit 0 is the most
/// significant of `total` bits, bit value 0 is up.
fn spin(config: usize, qubit: usize, total: usize) -> f64 {
    1.0 - 2.0 * ((config >> (total - 1 - qubit)) & 1) as f64
}

/// Build the star Hamiltonian in GHz as a dense matrix.
///
/// Basis: qubit 0 (the center) is the most significant bit. For the
/// Heisenberg kind, the transverse part contributes the flip-flop element
/// `1 - z_0 z_n`, i.e. `2g` between each pair of states where the center and
/// one ancilla swap opposite spins.
pub fn build_hamiltonian(kind: InteractionKind, p: &SpinStarParams) -> Result<DenseOperator> {
    if p.n_ancillas > MAX_DENSE_ANCILLAS {
        return Err(Error::ResourceCeiling {
            what: "ancilla count for dense operators",
            requested: p.n_ancillas,
            ceiling: MAX_DENSE_ANCILLAS,
        });
    }
    let total = p.n_ancillas + 1;
    let dim = 1usize << total;
    let mut m = CMatrix::zeros(dim, dim);

    for config in 0..dim {
        let z0 = spin(config, 0, total);
        let mut field = z0;
        let mut zz = 0.0;
        for q in 1..total {
            let zq = spin(config, q, total);
            field += zq;
            zz += z0 * zq;
        }
        m[(config, config)] = Complex64::new(p.h * field + p.g * zz, 0.0);

        if kind == InteractionKind::Heisenberg {
            for q in 1..total {
                if spin(config, q, total) != z0 {
                    let flipped = config ^ (1 << (total - 1)) ^ (1 << (total - 1 - q));
                    m[(flipped, config)] += Complex64::new(2.0 * p.g, 0.0);
                }
            }
        }
    }

    DenseOperator::new(m)
}

/// A density matrix: Hermitian, unit trace; positivity is checked where
/// states are produced, not on every wrap.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Wrap a matrix, validating Hermiticity (≤ 1e-12) and unit trace
    /// (≤ 1e-12).
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let deviation = hermiticity_deviation(&matrix);
        if deviation > 1e-12 {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace - Complex64::ONE).norm() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        Ok(Self { matrix })
    }

    /// Wrap without validation; used by the integrator, which tracks trace
    /// drift and Hermiticity deviation itself.
    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    /// Diagonal state from a probability vector.
    pub fn from_populations(populations: &[f64]) -> Result<Self> {
        if populations.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(Error::InvalidParameter(
                "populations must be finite and non-negative".into(),
            ));
        }
        let total: f64 = populations.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "populations sum to {total}, expected 1"
            )));
        }
        let dim = populations.len();
        let mut m = CMatrix::zeros(dim, dim);
        for (i, &p) in populations.iter().enumerate() {
            m[(i, i)] = Complex64::new(p, 0.0);
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Diagonal populations (real parts).
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// Largest off-diagonal magnitude.
    pub fn max_coherence(&self) -> f64 {
        let mut max: f64 = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j {
                    max = max.max(self.matrix[(i, j)].norm());
                }
            }
        }
        max
    }

    /// tr(ρ·op), real part.
    pub fn expectation(&self, op: &CMatrix) -> f64 {
        let mut acc = Complex64::ZERO;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += self.matrix[(i, j)] * op[(j, i)];
            }
        }
        acc.re
    }

    /// Smallest eigenvalue; negative values beyond rounding mean the matrix
    /// is not a state.
    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b))
    }

    /// Reduced 2×2 state of one qubit (0-based, qubit 0 = most significant
    /// bit). The dimension must be a power of two.
    pub fn qubit_marginal(&self, qubit: usize) -> Result<QubitMarginal> {
        let dim = self.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension {dim} is not a qubit register"
            )));
        }
        let total = dim.trailing_zeros() as usize;
        if qubit >= total {
            return Err(Error::InvalidParameter(format!(
                "qubit {qubit} out of range for {total} qubits"
            )));
        }
        let pos = total - 1 - qubit;
        let low_mask = (1usize << pos) - 1;
        let mut reduced = [[Complex64::ZERO; 2]; 2];
        for rest in 0..dim / 2 {
            let base = ((rest & !low_mask) << 1) | (rest & low_mask);
            for (a, row) in reduced.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    *cell += self.matrix[(base | (a << pos), base | (b << pos))];
                }
            }
        }
        Ok(QubitMarginal {
            // Bit value 0 is spin up.
            p_up: reduced[0][0].re,
            p_down: reduced[1][1].re,
            coherence: reduced[0][1].norm(),
        })
    }

    /// Trace distance `(1/2)·tr|ρ - σ|`.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let diff = &self.matrix - &other.matrix;
        Ok(0.5 * diff.symmetric_eigenvalues().iter().map(|l| l.abs()).sum::<f64>())
    }

    /// Uhlmann fidelity `(tr √(√ρ σ √ρ))²`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let eig = self.matrix.clone().symmetric_eigen();
        let dim = self.dim();
        let mut sqrt_rho = CMatrix::zeros(dim, dim);
        for k in 0..dim {
            let w = eig.eigenvalues[k].max(0.0).sqrt();
            let v = eig.eigenvectors.column(k);
            for i in 0..dim {
                for j in 0..dim {
                    sqrt_rho[(i, j)] += Complex64::new(w, 0.0) * v[i] * v[j].conj();
                }
            }
        }
        let inner = &sqrt_rho * &other.matrix * &sqrt_rho;
        let root_sum: f64 = inner
            .symmetric_eigenvalues()
            .iter()
            .map(|l| l.max(0.0).sqrt())
            .sum();
        Ok(root_sum * root_sum)
    }
}

/// Reduced single-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMarginal {
    pub p_up: f64,
    pub p_down: f64,
    /// |off-diagonal| of the reduced 2×2 matrix.
    pub coherence: f64,
}

impl QubitMarginal {
    /// Effective inverse temperature (×h) from the population ratio.
    pub fn x_eff(&self) -> f64 {
        0.5 * (self.p_down.ln() - self.p_up.ln())
    }
}

/// Gibbs state e^{-βH}/Z by eigendecomposition.
///
/// Eigenvalues are shifted by their minimum before exponentiating, so any
/// β that leaves at least one representable weight works. Diagonal
/// Hamiltonians (the Ising star, collision targets) skip the
/// eigendecomposition and exponentiate the diagonal directly.
pub fn gibbs_state(hamiltonian: &DenseOperator, beta: f64) -> Result<DensityMatrix> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "inverse temperature must positive and finite, got {beta}"
        )));
    }
    let dim = hamiltonian.dim();

    if hamiltonian.is_diagonal() {
        let energies: Vec<f64> = (0..dim).map(|i| hamiltonian.matrix[(i, i)].re).collect();
        let e_min = energies.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let mut weights: Vec<f64> =
            energies.iter().map(|&e| (-beta * (e - e_min)).exp()).collect();
        let z: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= z;
        }
        return DensityMatrix::from_populations(&weights);
    }

    let eig = hamiltonian.matrix.clone().symmetric_eigen();
    let e_min = eig.eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let weights: Vec<f64> =
        eig.eigenvalues.iter().map(|&e| (-beta * (e - e_min)).exp()).collect();
    let z: f64 = weights.iter().sum();

    let mut rho = CMatrix::zeros(dim, dim);
    for (k, weight) in weights.iter().enumerate() {
        let w = Complex64::new(weight / z, 0.0);
        let v = eig.eigenvectors.column(k);
        for i in 0..dim {
            for j in 0..dim {
                rho[(i, j)] += w * v[i] * v[j].conj();
            }
        }
    }
    // Symmetrize away eigenvector rounding before validating.
    let rho = (&rho + &rho.adjoint()) * Complex64::new(0.5, 0.0);
    DensityMatrix::new(rho)
}

/// Central-qubit marginal with its effective temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralMarginal {
    pub p_up: f64,
    pub p_down: f64,
    /// Effective inverse temperature (×h) from the populations alone.
    pub x_eff: f64,
    /// |off-diagonal| of the reduced state. Populations define a
    /// temperature only when this is negligible; the Ising and Heisenberg
    /// stars both conserve total σ_z, so it vanishes there, but the flag is
    /// reported rather than assumed.
    pub coherence: f64,
}

/// Marginal of the central qubit (most significant bit).
pub fn central_marginal(rho: &DensityMatrix) -> Result<CentralMarginal> {
    let m = rho.qubit_marginal(0)?;
    Ok(CentralMarginal {
        p_up: m.p_up,
        p_down: m.p_down,
        x_eff: m.x_eff(),
        coherence: m.coherence,
    })
}

/// Four-stroke cycle evaluated entirely through dense operators.
///
/// Same stroke structure as [`crate::cycle::stroke_energies`], but every
/// expectation value comes from matrix traces against exact Gibbs states:
/// E0 and E1 from the uncoupled thermal state (the transverse Heisenberg
/// terms average to zero there, so the quench energy is `g·N·tanh²x` for
/// both kinds), E2 and E3 from the coupled one. Energies are reported in
/// units of `h`. Refuses g = 0, where the cycle degenerates.
pub fn dense_cycle(kind: InteractionKind, p: &SpinStarParams) -> Result<CycleReport> {
    if p.g == 0.0 {
        return Err(Error::DegenerateCycle);
    }
    let full = build_hamiltonian(kind, p)?;
    let uncoupled = SpinStarParams::new(p.h, 0.0, p.n_ancillas, p.beta)?;
    let free = build_hamiltonian(InteractionKind::Ising, &uncoupled)?;
    let interaction = full.matrix() - free.matrix();

    let rho_free = gibbs_state(&free, p.beta)?;
    let rho_coupled = gibbs_state(&full, p.beta)?;

    let e0 = rho_free.expectation(free.matrix()) / p.h;
    let w1 = rho_free.expectation(&interaction) / p.h;
    let e1 = e0 + w1;
    let e2 = rho_coupled.expectation(full.matrix()) / p.h;
    let h_int = rho_coupled.expectation(&interaction) / p.h;
    let e3 = e2 - h_int;
    let w2 = -h_int;
    let w_cycle = w1 + w2;

    let marginal = central_marginal(&rho_coupled)?;
    let x = p.beta * p.h;
    let epsilon = Some((marginal.x_eff.tanh() - x.tanh()) / w_cycle);

    Ok(CycleReport {
        e0,
        e1,
        e2,
        e3,
        w1,
        w2,
        w_cycle,
        q2: e2 - e1,
        q4: e0 - e3,
        x_eff: marginal.x_eff,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumeration::enumerate_ising;
    use approx::assert_relative_eq;

    fn params(h: f64, g: f64, n: usize, beta: f64) -> SpinStarParams {
        SpinStarParams::new(h, g, n, beta).unwrap()
    }

    #[test]
    fn ising_single_ancilla_diagonal() {
        let op = build_hamiltonian(InteractionKind::Ising, &params(1.0, -1.0, 1, 1.0)).unwrap();
        let d: Vec<f64> = (0..4).map(|i| op.matrix()[(i, i)].re).collect();
        // Basis ↑↑, ↑↓, ↓↑, ↓↓: energies 2h+g, -g, -g, -2h+g.
        assert_eq!(d, vec![1.0, 1.0, 1.0, -3.0]);
        assert!(op.is_diagonal());
    }

    #[test]
    fn heisenberg_single_ancilla_spectrum() {
        let (h, g) = (1.0, 0.3);
        let op = build_hamiltonian(InteractionKind::Heisenberg, &params(h, g, 1, 1.0)).unwrap();
        let mut eigs: Vec<f64> = op.matrix().clone().symmetric_eigenvalues().iter().copied().collect();
        eigs.sort_by(f64::total_cmp);
        // Triplet {2h+g, -2h+g, g} and singlet {-3g}.
        let mut expected = vec![2.0 * h + g, -2.0 * h + g, g, -3.0 * g];
        expected.sort_by(f64::total_cmp);
        for (a, b) in eigs.iter().zip(&expected) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn gibbs_matches_enumeration_for_ising() {
        let p = params(1.0, -0.7, 4, 0.9);
        let op = build_hamiltonian(InteractionKind::Ising, &p).unwrap();
        let rho = gibbs_state(&op, p.beta).unwrap();
        let table = enumerate_ising(&p.reduce()).unwrap();
        let pops = rho.populations();
        for (i, &w) in table.weights().iter().enumerate() {
            assert_relative_eq!(pops[i], w, epsilon = 1e-14, max_relative = 1e-12);
        }
        assert!(rho.max_coherence() <= 1e-13);
    }

    #[test]
    fn gibbs_rejects_non_hermitian_input() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(DenseOperator::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn product_state_marginals_factor() {
        // ρ = ρ_a ⊗ ρ_b with distinct qubit states.
        let one = DensityMatrix::from_populations(&[0.8, 0.2]).unwrap();
        let two = DensityMatrix::from_populations(&[0.3, 0.7]).unwrap();
        let joint =
            DensityMatrix::new(one.matrix().kronecker(two.matrix())).unwrap();
        let m0 = joint.qubit_marginal(0).unwrap();
        let m1 = joint.qubit_marginal(1).unwrap();
        assert_relative_eq!(m0.p_up, 0.8, max_relative = 1e-14);
        assert_relative_eq!(m1.p_up, 0.3, max_relative = 1e-14);
        assert!(m0.coherence < 1e-15 && m1.coherence < 1e-15);
    }

    #[test]
    fn central_marginal_flags_coherence() {
        let c = Complex64::new(0.3, 0.1);
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(0.6, 0.0);
        m[(1, 1)] = Complex64::new(0.4, 0.0);
        m[(0, 1)] = c;
        m[(1, 0)] = c.conj();
        let rho = DensityMatrix::new(m).unwrap();
        let marginal = central_marginal(&rho).unwrap();
        assert_relative_eq!(marginal.coherence, c.norm(), max_relative = 1e-14);
    }

    #[test]
    fn fidelity_and_trace_distance_references() {
        let pure = DensityMatrix::from_populations(&[1.0, 0.0]).unwrap();
        let mixed = DensityMatrix::from_populations(&[0.5, 0.5]).unwrap();
        assert_relative_eq!(pure.fidelity(&pure).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(pure.fidelity(&mixed).unwrap(), 0.5, max_relative = 1e-12);
        assert_relative_eq!(pure.trace_distance(&mixed).unwrap(), 0.5, max_relative = 1e-12);
        let orthogonal = DensityMatrix::from_populations(&[0.0, 1.0]).unwrap();
        assert!(pure.fidelity(&orthogonal).unwrap() < 1e-14);
        assert_relative_eq!(pure.trace_distance(&orthogonal).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn heisenberg_cools_worse_than_ising() {
        let p = params(1.0, -1.0, 6, 1.0);
        let ising = dense_cycle(InteractionKind::Ising, &p).unwrap();
        let heis = dense_cycle(InteractionKind::Heisenberg, &p).unwrap();
        // Larger x_eff is colder; the transverse terms spoil the cooling.
        assert!(heis.x_eff < ising.x_eff);
        assert!(heis.x_eff > p.beta * p.h);
    }

    #[test]
    fn dense_cycle_refuses_zero_coupling() {
        assert!(matches!(
            dense_cycle(InteractionKind::Heisenberg, &params(1.0, 0.0, 2, 1.0)),
            Err(Error::DegenerateCycle)
        ));
    }

    #[test]
    fn dense_ceiling_is_enforced() {
        assert!(matches!(
            build_hamiltonian(InteractionKind::Ising, &params(1.0, -1.0, 13, 1.0)),
            Err(Error::ResourceCeiling { .. })
        ));
    }
}
