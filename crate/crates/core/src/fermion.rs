//! Jordan–Wigner gate kernels on a dense statevector, plus an independent
//! Fock-space oracle built from dense ladder-operator matrices.
//!
//! Convention: the annihilation operator a_p carries Z factors on modes
//! 0..p−1. With bit γ stored at position γ of the basis index, the Givens
//! kernel picks up the parity of the bits strictly between p and q.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{expm_real, CMatrix, RMatrix};
use crate::scalar::Real;

/// Largest statevector register: 2^24 amplitudes (256 MiB at f64).
pub const MAX_STATE_QUBITS: usize = 24;
/// Dense Fock oracle cap: 12 modes, 4096-dimensional matrices.
pub const ORACLE_MODE_CAP: usize = 12;

/// Two-mode fermionic rotation exp[θ(a_p†a_q − a_q†a_p)], p < q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GivensGate<T> {
    pub p: usize,
    pub q: usize,
    pub theta: T,
}

impl<T: Real> GivensGate<T> {
    pub fn new(p: usize, q: usize, theta: T) -> Result<Self> {
        if p >= q {
            return Err(Error::InvalidCircuit(format!("Givens gate needs p < q, got ({p},{q})")));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidCircuit("non-finite Givens angle".into()));
        }
        Ok(Self { p, q, theta })
    }

    pub fn adjoint(&self) -> Self {
        Self { p: self.p, q: self.q, theta: -self.theta }
    }
}

/// Number-diagonal gate exp(iθ n_p n_q), p ≤ q; p = q is the phase gate
/// exp(iθ n_p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberDiagonalGate<T> {
    pub p: usize,
    pub q: usize,
    pub theta: T,
}

impl<T: Real> NumberDiagonalGate<T> {
    pub fn new(p: usize, q: usize, theta: T) -> Result<Self> {
        if p > q {
            return Err(Error::InvalidCircuit(format!(
                "number-diagonal gate needs p <= q, got ({p},{q})"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidCircuit("non-finite diagonal angle".into()));
        }
        Ok(Self { p, q, theta })
    }
}

/// A gate in an ordered fermionic schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FermionGate<T> {
    Givens(GivensGate<T>),
    NumberDiagonal(NumberDiagonalGate<T>),
}

/// Dense complex amplitudes over 2^modes basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    modes: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// State with amplitude 1 on a single basis index.
    pub fn basis_state(modes: usize, index: u64) -> Result<Self> {
        if modes > MAX_STATE_QUBITS {
            return Err(Error::Capacity { qubits: modes, max: MAX_STATE_QUBITS });
        }
        let dim = 1usize << modes;
        assert!((index as usize) < dim);
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index as usize] = Complex::new(T::one(), T::zero());
        Ok(Self { modes, amps })
    }

    pub fn from_amplitudes(modes: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if modes > MAX_STATE_QUBITS {
            return Err(Error::Capacity { qubits: modes, max: MAX_STATE_QUBITS });
        }
        if amps.len() != 1usize << modes {
            return Err(Error::DimensionMismatch(amps.len(), 1usize << modes));
        }
        Ok(Self { modes, amps })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn amp(&self, index: u64) -> Complex<T> {
        self.amps[index as usize]
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y).sqrt()
    }

    pub fn scale(&mut self, factor: Complex<T>) {
        for a in self.amps.iter_mut() {
            *a = *a * factor;
        }
    }

    pub fn linf_diff(&self, other: &Self) -> T {
        assert_eq!(self.modes, other.modes);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), |x, y| x.max(y))
    }

    /// Kronecker product; `self` occupies the low bits, `other` the high bits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let modes = self.modes + other.modes;
        if modes > MAX_STATE_QUBITS {
            return Err(Error::Capacity { qubits: modes, max: MAX_STATE_QUBITS });
        }
        let low = self.amps.len();
        let mut amps = Vec::with_capacity(low * other.amps.len());
        for hi in &other.amps {
            for lo in &self.amps {
                amps.push(*lo * *hi);
            }
        }
        Ok(Self { modes, amps })
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.modes {
            Err(Error::IndexOutOfRange { index, modes: self.modes })
        } else {
            Ok(())
        }
    }

    /// Givens kernel with the intervening-parity sign.
    pub fn apply_givens(&mut self, g: &GivensGate<T>) -> Result<()> {
        self.check_index(g.q)?;
        let (cos, sin) = (g.theta.cos(), g.theta.sin());
        let pbit = 1u64 << g.p;
        let qbit = 1u64 << g.q;
        // bits strictly between p and q
        let between = (qbit - 1) & !(pbit | (pbit - 1));
        for x in 0..self.amps.len() as u64 {
            if x & pbit != 0 || x & qbit == 0 {
                continue;
            }
            let y = x ^ pbit ^ qbit;
            let sign = if (x & between).count_ones() % 2 == 0 { sin } else { -sin };
            let ax = self.amps[x as usize];
            let ay = self.amps[y as usize];
            self.amps[x as usize] = ax * cos - ay * sign;
            self.amps[y as usize] = ax * sign + ay * cos;
        }
        Ok(())
    }

    /// Phase kernel: e^{iθ} on b_p = b_q = 1 (or b_p = 1 when p = q).
    pub fn apply_number_diagonal(&mut self, d: &NumberDiagonalGate<T>) -> Result<()> {
        self.check_index(d.q)?;
        let phase = Complex::new(T::zero(), d.theta).exp();
        let mask = (1u64 << d.p) | (1u64 << d.q);
        for x in 0..self.amps.len() as u64 {
            if x & mask == mask {
                self.amps[x as usize] = self.amps[x as usize] * phase;
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, gate: &FermionGate<T>) -> Result<()> {
        match gate {
            FermionGate::Givens(g) => self.apply_givens(g),
            FermionGate::NumberDiagonal(d) => self.apply_number_diagonal(d),
        }
    }
}

/// Half-filled reference |0_0⋯0_{n−1} 1_n⋯1_{2n−1}⟩ over 2n modes.
pub fn reference_state<T: Real>(n: usize) -> Result<StateVector<T>> {
    if n == 0 {
        return Err(Error::InvalidCircuit("half-filling count must be >= 1".into()));
    }
    let modes = 2 * n;
    if modes > MAX_STATE_QUBITS {
        return Err(Error::Capacity { qubits: modes, max: MAX_STATE_QUBITS });
    }
    let index = ((1u64 << n) - 1) << n; // bits n..2n−1 set
    StateVector::basis_state(modes, index)
}

fn check_oracle_cap(modes: usize) -> Result<()> {
    if modes > ORACLE_MODE_CAP {
        Err(Error::OracleCap { modes, max: ORACLE_MODE_CAP })
    } else {
        Ok(())
    }
}

/// Dense annihilation operator a_p on `modes` modes: a Z string below p
/// followed by (X + iY)/2 at p.
pub fn jw_dense_ladder<T: Real>(p: usize, modes: usize) -> Result<CMatrix<T>> {
    check_oracle_cap(modes)?;
    if p >= modes {
        return Err(Error::IndexOutOfRange { index: p, modes });
    }
    let dim = 1usize << modes;
    let pbit = 1u64 << p;
    let below = pbit - 1;
    let mut m = CMatrix::zeros(dim);
    for col in 0..dim as u64 {
        if col & pbit == 0 {
            continue;
        }
        let row = col ^ pbit;
        let sign = if (col & below).count_ones() % 2 == 0 { T::one() } else { -T::one() };
        m.set(row as usize, col as usize, Complex::new(sign, T::zero()));
    }
    Ok(m)
}

/// Dense unitary of one gate: exp of its generator.
pub fn fock_gate_unitary<T: Real>(gate: &FermionGate<T>, modes: usize) -> Result<CMatrix<T>> {
    check_oracle_cap(modes)?;
    let dim = 1usize << modes;
    match gate {
        FermionGate::Givens(g) => {
            if g.q >= modes {
                return Err(Error::IndexOutOfRange { index: g.q, modes });
            }
            // θ(a_p†a_q − a_q†a_p) is a real matrix in this basis
            let ap = jw_dense_ladder::<T>(g.p, modes)?;
            let aq = jw_dense_ladder::<T>(g.q, modes)?;
            let hop = ap.adjoint().matmul(&aq);
            let gen = hop.sub(&hop.adjoint());
            let mut real_gen = RMatrix::zeros(dim);
            for r in 0..dim {
                for c in 0..dim {
                    real_gen.set(r, c, gen.get(r, c).re * g.theta);
                }
            }
            Ok(CMatrix::from_real(&expm_real(&real_gen)))
        }
        FermionGate::NumberDiagonal(d) => {
            if d.q >= modes {
                return Err(Error::IndexOutOfRange { index: d.q, modes });
            }
            let mask = (1u64 << d.p) | (1u64 << d.q);
            let phase = Complex::new(T::zero(), d.theta).exp();
            let one = Complex::new(T::one(), T::zero());
            let mut m = CMatrix::zeros(dim);
            for x in 0..dim as u64 {
                m.set(x as usize, x as usize, if x & mask == mask { phase } else { one });
            }
            Ok(m)
        }
    }
}

/// Dense unitary of an ordered schedule (first gate applied first).
pub fn fock_oracle_unitary<T: Real>(gates: &[FermionGate<T>], modes: usize) -> Result<CMatrix<T>> {
    check_oracle_cap(modes)?;
    let mut u = CMatrix::identity(1usize << modes);
    for gate in gates {
        u = fock_gate_unitary(gate, modes)?.matmul(&u);
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::parse_bitstring;
    use crate::rng;

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn state_from(label: &str) -> StateVector<f64> {
        let (idx, width) = parse_bitstring(label).unwrap();
        StateVector::basis_state(width, idx).unwrap()
    }

    #[test]
    fn reference_patterns() {
        for (n, label) in [(1, "01"), (2, "0011"), (3, "000111")] {
            let s = reference_state::<f64>(n).unwrap();
            let (idx, _) = parse_bitstring(label).unwrap();
            assert_eq!(s.amp(idx), num_complex::Complex::new(1.0, 0.0), "n={n}");
            assert!((s.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn reference_rejects_zero_and_oversize() {
        assert!(reference_state::<f64>(0).is_err());
        assert!(matches!(reference_state::<f64>(13), Err(Error::Capacity { .. })));
    }

    #[test]
    fn givens_zero_angle_is_identity() {
        let mut s = state_from("011");
        let before = s.clone();
        s.apply_givens(&GivensGate::new(0, 2, 0.0).unwrap()).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn givens_mixes_pair_without_parity() {
        let mut s = state_from("01");
        s.apply_givens(&GivensGate::new(0, 1, std::f64::consts::FRAC_PI_4).unwrap()).unwrap();
        let (i01, _) = parse_bitstring("01").unwrap();
        let (i10, _) = parse_bitstring("10").unwrap();
        assert!((s.amp(i01).re - SQRT_HALF).abs() < 1e-15);
        assert!((s.amp(i10).re - SQRT_HALF).abs() < 1e-15);
    }

    #[test]
    fn givens_parity_sign_from_intervening_bit() {
        // |011⟩ has the intervening bit set: w(b) = 1
        let theta = 0.37;
        let mut s = state_from("011");
        s.apply_givens(&GivensGate::new(0, 2, theta).unwrap()).unwrap();
        let (i011, _) = parse_bitstring("011").unwrap();
        let (i110, _) = parse_bitstring("110").unwrap();
        assert!((s.amp(i011).re - theta.cos()).abs() < 1e-15);
        assert!((s.amp(i110).re + theta.sin()).abs() < 1e-15);
    }

    #[test]
    fn diagonal_phases_occupied_states_only() {
        let theta = 0.81;
        let mut s = state_from("1");
        s.apply_number_diagonal(&NumberDiagonalGate::new(0, 0, theta).unwrap()).unwrap();
        let expect = num_complex::Complex::from_polar(1.0, theta);
        assert!((s.amp(1) - expect).norm() < 1e-15);

        let mut s = state_from("01");
        let half = num_complex::Complex::new(SQRT_HALF, 0.0);
        s.apply_givens(&GivensGate::new(0, 1, std::f64::consts::FRAC_PI_4).unwrap()).unwrap();
        // (|01⟩+|10⟩)/√2; only |11⟩ would pick up the two-mode phase
        s.apply_number_diagonal(&NumberDiagonalGate::new(0, 1, theta).unwrap()).unwrap();
        assert!((s.amp(0b10) - half).norm() < 1e-15);
        assert!((s.amp(0b01) - half).norm() < 1e-15);
    }

    #[test]
    fn two_mode_phase_on_doubly_occupied() {
        let theta = 1.3;
        let mut s = state_from("11");
        s.apply_number_diagonal(&NumberDiagonalGate::new(0, 1, theta).unwrap()).unwrap();
        assert!((s.amp(0b11) - num_complex::Complex::from_polar(1.0, theta)).norm() < 1e-15);
    }

    #[test]
    fn index_out_of_range_rejected() {
        let mut s = state_from("01");
        assert!(s.apply_givens(&GivensGate::new(0, 2, 0.1).unwrap()).is_err());
        assert!(s.apply_number_diagonal(&NumberDiagonalGate::new(1, 3, 0.1).unwrap()).is_err());
    }

    #[test]
    fn single_mode_ladder_matrix() {
        let a0 = jw_dense_ladder::<f64>(0, 1).unwrap();
        assert_eq!(a0.get(0, 1).re, 1.0);
        assert_eq!(a0.get(0, 0).re, 0.0);
        assert_eq!(a0.get(1, 0).re, 0.0);
        assert_eq!(a0.get(1, 1).re, 0.0);
    }

    #[test]
    fn number_operator_is_diagonal() {
        let a0 = jw_dense_ladder::<f64>(0, 2).unwrap();
        let n0 = a0.adjoint().matmul(&a0);
        for (i, expect) in [0.0, 1.0, 0.0, 1.0].iter().enumerate() {
            assert_eq!(n0.get(i, i).re, *expect);
        }
    }

    #[test]
    fn mixed_anticommutator_vanishes() {
        let a0 = jw_dense_ladder::<f64>(0, 2).unwrap();
        let a1 = jw_dense_ladder::<f64>(1, 2).unwrap();
        let anti = a0.matmul(&a1.adjoint()).add(&a1.adjoint().matmul(&a0));
        assert!(anti.max_abs() < 1e-15);
    }

    #[test]
    fn oracle_empty_schedule_is_identity() {
        let u = fock_oracle_unitary::<f64>(&[], 2).unwrap();
        assert!(u.max_abs_diff(&CMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn oracle_diagonal_gate_matrix() {
        let d = FermionGate::NumberDiagonal(NumberDiagonalGate::new(0, 1, 0.9).unwrap());
        let u = fock_gate_unitary(&d, 2).unwrap();
        let phase = num_complex::Complex::from_polar(1.0, 0.9);
        for i in 0..3 {
            assert!((u.get(i, i).re - 1.0f64).abs() < 1e-15);
        }
        assert!((u.get(3, 3) - phase).norm() < 1e-15);
    }

    #[test]
    fn oracle_matches_kernel_on_basis_state() {
        let g = GivensGate::new(0, 1, std::f64::consts::FRAC_PI_4).unwrap();
        let u = fock_gate_unitary(&FermionGate::Givens(g), 2).unwrap();
        let mut kernel = state_from("01");
        kernel.apply_givens(&g).unwrap();
        let oracle = u.mul_vec(state_from("01").amplitudes());
        for (a, b) in kernel.amplitudes().iter().zip(&oracle) {
            assert!((*a - *b).norm() < 1e-12);
        }
    }

    #[test]
    fn random_schedules_preserve_norm_and_unitarity() {
        for seed in 0..5u64 {
            let gates = rng::random_gate_sequence::<f64>(4, 8, seed);
            let mut s = reference_state::<f64>(2).unwrap();
            for gate in &gates {
                s.apply(gate).unwrap();
                assert!((s.norm() - 1.0).abs() < 1e-12);
            }
            let u = fock_oracle_unitary(&gates, 4).unwrap();
            assert!(u.unitarity_defect() < 1e-10);
        }
    }
}
