//! IQP circuits with a quadratic diagonal generator, their exact simulation,
//! and the factorization of the diagonal into Z-rotations and controlled
//! phases.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::fermion::{StateVector, MAX_STATE_QUBITS};
use crate::scalar::{lit, Real};

/// Source IR: H^⊗n · exp(i(Σ w_αβ Z_α Z_β + Σ v_α Z_α)) · H^⊗n on |0^n⟩.
/// Weights are stored upper-triangular (α < β) only.
#[derive(Debug, Clone, PartialEq)]
pub struct IqpCircuit<T> {
    n: usize,
    v: Vec<T>,
    w: BTreeMap<(usize, usize), T>,
}

/// Factored diagonal: e^{iD} = e^{i·global_phase} Π e^{i v'_α Z_α} Π CP(4w).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSpec<T> {
    pub v_prime: Vec<T>,
    /// (α, β, phase on |11⟩), indices strictly increasing pairs.
    pub cp_terms: Vec<(usize, usize, T)>,
    pub global_phase: T,
}

impl<T: Real> IqpCircuit<T> {
    pub fn new(n: usize, v: Vec<T>, weights: Vec<(usize, usize, T)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCircuit("IQP circuit needs n >= 1".into()));
        }
        if v.len() != n {
            return Err(Error::InvalidCircuit(format!(
                "field vector has length {}, expected {n}",
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidCircuit("non-finite field weight".into()));
        }
        let mut w = BTreeMap::new();
        for (a, b, val) in weights {
            if a >= b || b >= n {
                return Err(Error::InvalidCircuit(format!(
                    "weight index ({a},{b}) violates 0 <= a < b < {n}"
                )));
            }
            if !val.is_finite() {
                return Err(Error::InvalidCircuit(format!("non-finite weight at ({a},{b})")));
            }
            if w.insert((a, b), val).is_some() {
                return Err(Error::InvalidCircuit(format!("duplicate weight key ({a},{b})")));
            }
        }
        Ok(Self { n, v, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fields(&self) -> &[T] {
        &self.v
    }

    pub fn weights(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.w.iter().map(|(&(a, b), &val)| (a, b, val))
    }

    /// Eigenvalue of the generator D on each computational basis state;
    /// z_γ = +1 for bit 0, −1 for bit 1.
    pub fn diagonal_phases(&self) -> Vec<T> {
        let dim = 1usize << self.n;
        let z = |x: u64, g: usize| if (x >> g) & 1 == 0 { T::one() } else { -T::one() };
        (0..dim as u64)
            .map(|x| {
                let mut phase = T::zero();
                for (&(a, b), &w) in &self.w {
                    phase = phase + w * z(x, a) * z(x, b);
                }
                for (g, &v) in self.v.iter().enumerate() {
                    phase = phase + v * z(x, g);
                }
                phase
            })
            .collect()
    }

    /// Exact output state H^⊗n e^{iD} H^⊗n |0^n⟩.
    pub fn state(&self) -> Result<StateVector<T>> {
        if self.n > MAX_STATE_QUBITS {
            return Err(Error::Capacity { qubits: self.n, max: MAX_STATE_QUBITS });
        }
        let dim = 1usize << self.n;
        let uniform = T::one() / lit::<T>(dim as f64).sqrt();
        let mut amps: Vec<Complex<T>> = self
            .diagonal_phases()
            .into_iter()
            .map(|phi| Complex::from_polar(uniform, phi))
            .collect();
        hadamard_all(&mut amps, self.n);
        StateVector::from_amplitudes(self.n, amps)
    }

    pub fn distribution(&self) -> Result<Distribution<T>> {
        Ok(Distribution::from_statevector(&self.state()?))
    }

    /// Factors e^{iD} into a global phase, Z-rotations with the symmetrized
    /// field v'_α = v_α + Σ_{β≠α} w, and controlled phases of angle 4w_αβ.
    pub fn decompose_diagonal(&self) -> DiagonalSpec<T> {
        let mut v_prime = self.v.clone();
        let mut global_phase = T::zero();
        let mut cp_terms = Vec::with_capacity(self.w.len());
        for (&(a, b), &w) in &self.w {
            v_prime[a] = v_prime[a] + w;
            v_prime[b] = v_prime[b] + w;
            global_phase = global_phase - w;
            cp_terms.push((a, b, lit::<T>(4.0) * w));
        }
        DiagonalSpec { v_prime, cp_terms, global_phase }
    }
}

/// In-place Hadamard transform on every qubit (normalized butterfly).
fn hadamard_all<T: Real>(amps: &mut [Complex<T>], n: usize) {
    let inv_sqrt2 = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    for g in 0..n {
        let bit = 1usize << g;
        for i in 0..amps.len() {
            if i & bit != 0 {
                continue;
            }
            let j = i | bit;
            let (a, b) = (amps[i], amps[j]);
            amps[i] = (a + b) * inv_sqrt2;
            amps[j] = (a - b) * inv_sqrt2;
        }
    }
}
