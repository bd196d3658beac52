//! The system being cooled: a few qubits with longitudinal Ising couplings.
//!
//! The Hamiltonian `H = Σ_i h_i σ_z,i + J Σ_(a,b) σ_z,a σ_z,b` is diagonal,
//! so its energy eigenspaces are labeled by spin patterns and the secular
//! jump operator of qubit `i` at frequency ω,
//!
//! ```text
//! A_i(ω) = Σ_E Π(E) σ_-,i Π(E + ω),
//! ```
//!
//! simply collects every single-flip of qubit `i` that releases energy ω.
//! Flipping qubit `i` in the neighbor pattern `s = Σ_nbr z_j` costs
//! `2·|h_i + J·s|`, hence the familiar pair `2|h_i ± J|` per qubit for the
//! two-qubit reference target.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::dynamics::CMatrix;
use crate::oracle::DensityMatrix;
use crate::{Error, Result};

/// Largest target register handled (dimension 64, superoperator 4096).
pub const MAX_TARGET_QUBITS: usize = 6;

/// Relative tolerance for matching and merging transition frequencies.
const FREQUENCY_TOLERANCE: f64 = 1e-9;

/// A register of qubits with pairwise longitudinal couplings.
///
/// Basis convention matches the rest of the crate: qubit 0 is the most
/// significant bit, bit value 0 is spin up (z = +1).
#[derive(Debug, Clone, PartialEq)]
pub struct TargetIsingModel {
    /// Gap h_i per qubit (angular GHz), all positive.
    gaps: Vec<f64>,
    /// Common pair coupling J (angular GHz).
    coupling: f64,
    /// Coupled pairs, stored with the smaller index first.
    pairs: Vec<(usize, usize)>,
}

impl TargetIsingModel {
    pub fn new(gaps: Vec<f64>, coupling: f64, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::InvalidParameter("target needs at least one qubit".into()));
        }
        if gaps.len() > MAX_TARGET_QUBITS {
            return Err(Error::ResourceCeiling {
                what: "target qubit count",
                requested: gaps.len(),
                ceiling: MAX_TARGET_QUBITS,
            });
        }
        if gaps.iter().any(|&h| h <= 0.0 || !h.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "qubit gaps must be positive and finite, got {gaps:?}"
            )));
        }
        if !coupling.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "pair coupling must be finite, got {coupling}"
            )));
        }
        let mut normalized = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            if a == b || a >= gaps.len() || b >= gaps.len() {
                return Err(Error::InvalidParameter(format!(
                    "invalid coupled pair ({a}, {b}) for {} qubits",
                    gaps.len()
                )));
            }
            let pair = (a.min(b), a.max(b));
            if normalized.contains(&pair) {
                return Err(Error::InvalidParameter(format!("duplicate coupled pair {pair:?}")));
            }
            normalized.push(pair);
        }
        normalized.sort_unstable();
        Ok(Self { gaps, coupling, pairs: normalized })
    }

    /// The two-qubit reference target: gaps (h1, h2), one coupled pair.
    pub fn two_qubit(h1: f64, h2: f64, coupling: f64) -> Result<Self> {
        Self::new(vec![h1, h2], coupling, vec![(0, 1)])
    }

    pub fn n_qubits(&self) -> usize {
        self.gaps.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.gaps.len()
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    fn spin(&self, config: usize, qubit: usize) -> i64 {
        1 - 2 * ((config >> (self.n_qubits() - 1 - qubit)) & 1) as i64
    }

    fn neighbors(&self, qubit: usize) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().filter_map(move |&(a, b)| {
            if a == qubit {
                Some(b)
            } else if b == qubit {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Diagonal energies E(config) in angular GHz.
    pub fn diagonal_energies(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|config| {
                let field: f64 = (0..self.n_qubits())
                    .map(|q| self.gaps[q] * self.spin(config, q) as f64)
                    .sum();
                let zz: f64 = self
                    .pairs
                    .iter()
                    .map(|&(a, b)| (self.spin(config, a) * self.spin(config, b)) as f64)
                    .sum();
                field + self.coupling * zz
            })
            .collect()
    }

    /// The Hamiltonian as a (diagonal) dense matrix.
    pub fn hamiltonian(&self) -> CMatrix {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (config, e) in self.diagonal_energies().into_iter().enumerate() {
            m[(config, config)] = Complex64::new(e, 0.0);
        }
        m
    }

    /// Gibbs state at inverse temperature β.
    pub fn gibbs(&self, beta: f64) -> Result<DensityMatrix> {
        if beta <= 0.0 || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "inverse temperature must be positive and finite, got {beta}"
            )));
        }
        let energies = self.diagonal_energies();
        let e_min = energies.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let mut weights: Vec<f64> =
            energies.iter().map(|&e| (-beta * (e - e_min)).exp()).collect();
        let z: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= z;
        }
        DensityMatrix::from_populations(&weights)
    }

    /// All single-qubit transitions, grouped per (qubit, ω), sorted by qubit
    /// then frequency.
    ///
    /// Flips whose energy change vanishes (|h_i + J·s| = 0) break the
    /// secular split into lowering and raising parts and are rejected.
    pub fn transitions(&self) -> Result<Vec<Transition>> {
        let energies = self.diagonal_energies();
        let mut out = Vec::new();
        for qubit in 0..self.n_qubits() {
            let degree = self.neighbors(qubit).count() as f64;
            let scale = self.gaps[qubit] + self.coupling.abs() * degree;
            let bit = 1usize << (self.n_qubits() - 1 - qubit);

            // (ω, upper config, lower config) for every flip of this qubit.
            let mut flips = Vec::with_capacity(self.dim() / 2);
            for config in 0..self.dim() {
                if config & bit != 0 {
                    continue;
                }
                let partner = config | bit;
                let gap = energies[config] - energies[partner];
                if gap.abs() <= FREQUENCY_TOLERANCE * scale {
                    return Err(Error::ZeroFrequencyTransition { qubit });
                }
                if gap > 0.0 {
                    flips.push((gap, config, partner));
                } else {
                    flips.push((-gap, partner, config));
                }
            }
            flips.sort_by(|a, b| a.0.total_cmp(&b.0));

            let mut group: Option<Transition> = None;
            for (omega, upper, lower) in flips {
                match &mut group {
                    Some(t) if (omega - t.omega).abs() <= FREQUENCY_TOLERANCE * t.omega => {
                        t.pairs.push((upper, lower));
                    }
                    _ => {
                        if let Some(t) = group.take() {
                            out.push(t);
                        }
                        group = Some(Transition { qubit, omega, pairs: vec![(upper, lower)] });
                    }
                }
            }
            if let Some(t) = group.take() {
                out.push(t);
            }
        }
        Ok(out)
    }

    /// Lowering/raising jump operator pair of `qubit` at frequency ω.
    ///
    /// The lowering operator has a unit entry taking each upper eigenstate
    /// to its flipped partner; the raising operator is its adjoint. Errors
    /// when ω matches no transition of that qubit, listing what would have
    /// matched.
    pub fn jump_operators(&self, qubit: usize, omega: f64) -> Result<(CMatrix, CMatrix)> {
        if qubit >= self.n_qubits() {
            return Err(Error::InvalidParameter(format!(
                "qubit {qubit} out of range for {} qubits",
                self.n_qubits()
            )));
        }
        if omega <= 0.0 || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "transition frequency must be positive and finite, got {omega}"
            )));
        }
        let transitions = self.transitions()?;
        let matched = transitions.iter().find(|t| {
            t.qubit == qubit && (t.omega - omega).abs() <= FREQUENCY_TOLERANCE * t.omega.max(omega)
        });
        let Some(transition) = matched else {
            return Err(Error::NoMatchingTransition {
                qubit,
                omega,
                available: transitions
                    .iter()
                    .filter(|t| t.qubit == qubit)
                    .map(|t| t.omega)
                    .collect(),
            });
        };
        let dim = self.dim();
        let mut lowering = DMatrix::zeros(dim, dim);
        for &(upper, lower) in &transition.pairs {
            lowering[(lower, upper)] = Complex64::ONE;
        }
        let raising = lowering.adjoint();
        Ok((lowering, raising))
    }
}

/// One transition frequency of one target qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    /// Which qubit flips.
    pub qubit: usize,
    /// Energy released by the flip (angular GHz), always positive.
    pub omega: f64,
    /// (upper, lower) basis configurations connected by the flip; more than
    /// one pair means the frequency is degenerate for this qubit.
    pub pairs: Vec<(usize, usize)>,
}

impl Transition {
    /// Number of eigenspace pairs sharing this frequency.
    pub fn degeneracy(&self) -> usize {
        self.pairs.len()
    }
}
