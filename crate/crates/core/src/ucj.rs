//! The single-layer unitary cluster Jastrow ansatz and its restricted class
//! with the mirror-pair ±π/4 orbital rotation schedule.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fermion::{reference_state, FermionGate, GivensGate, NumberDiagonalGate, StateVector};
use crate::linalg::{expm_real, log_special_orthogonal, RMatrix};
use crate::scalar::{lit, Real};

/// Target IR: V-schedule, number-diagonal layer, half-filled reference and a
/// tracked global phase. The circuit denotes
/// (reversed adjoint givens) ∘ diagonals ∘ givens applied to the reference.
#[derive(Debug, Clone, PartialEq)]
pub struct Ucj1Compiled<T> {
    pub modes: usize,
    pub givens: Vec<GivensGate<T>>,
    pub diagonal: Vec<NumberDiagonalGate<T>>,
    pub reference_n: usize,
    pub global_phase: T,
}

/// (K, J) parameter form. `theta` stores the number-diagonal angles for
/// p ≤ q; the density-density couplings are J_pp = iθ_pp and
/// J_pq = J_qp = iθ_pq/2 for p < q.
#[derive(Debug, Clone, PartialEq)]
pub struct UcjParams<T> {
    pub modes: usize,
    pub k: RMatrix<T>,
    pub theta: RMatrix<T>,
    /// Set when recovering K hit a π-rotation branch ambiguity.
    pub k_branch_ambiguous: bool,
}

/// Where the simulator is about to apply a gate; used by invariant probes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GatePoint<'a, T> {
    BeforeGivens(&'a GivensGate<T>),
    BeforeDiagonal(&'a NumberDiagonalGate<T>),
    BeforeAdjointGivens(&'a GivensGate<T>),
    Done,
}

impl<T: Real> Ucj1Compiled<T> {
    pub fn validate(&self) -> Result<()> {
        if self.modes != 2 * self.reference_n || self.reference_n == 0 {
            return Err(Error::InvalidCircuit(format!(
                "modes {} must be twice the half-filling count {}",
                self.modes, self.reference_n
            )));
        }
        for g in &self.givens {
            if g.q >= self.modes {
                return Err(Error::IndexOutOfRange { index: g.q, modes: self.modes });
            }
        }
        for d in &self.diagonal {
            if d.q >= self.modes {
                return Err(Error::IndexOutOfRange { index: d.q, modes: self.modes });
            }
        }
        if !self.global_phase.is_finite() {
            return Err(Error::InvalidCircuit("non-finite global phase".into()));
        }
        Ok(())
    }

    /// Full sandwich as an ordered gate list (global phase not included).
    pub fn gate_sequence(&self) -> Vec<FermionGate<T>> {
        let mut gates: Vec<FermionGate<T>> =
            self.givens.iter().map(|g| FermionGate::Givens(*g)).collect();
        gates.extend(self.diagonal.iter().map(|d| FermionGate::NumberDiagonal(*d)));
        gates.extend(self.givens.iter().rev().map(|g| FermionGate::Givens(g.adjoint())));
        gates
    }

    /// Runs the sandwich on the reference state, invoking `probe` with the
    /// current state immediately before every gate and once at the end.
    pub fn simulate_traced(
        &self,
        mut probe: impl FnMut(GatePoint<'_, T>, &StateVector<T>),
    ) -> Result<StateVector<T>> {
        self.validate()?;
        let mut s = reference_state::<T>(self.reference_n)?;
        for g in &self.givens {
            probe(GatePoint::BeforeGivens(g), &s);
            s.apply_givens(g)?;
        }
        for d in &self.diagonal {
            probe(GatePoint::BeforeDiagonal(d), &s);
            s.apply_number_diagonal(d)?;
        }
        for g in self.givens.iter().rev() {
            probe(GatePoint::BeforeAdjointGivens(g), &s);
            s.apply_givens(&g.adjoint())?;
        }
        s.scale(Complex::from_polar(T::one(), self.global_phase));
        probe(GatePoint::Done, &s);
        Ok(s)
    }

    pub fn simulate(&self) -> Result<StateVector<T>> {
        self.simulate_traced(|_, _| {})
    }
}

/// The V_α schedule: R_{n−α−1, n+α}((−1)^{α+1}·π/4), outermost pair (largest
/// α) first. The pairs are disjoint, so any order denotes the same unitary.
pub fn givens_schedule_v<T: Real>(n: usize) -> Vec<GivensGate<T>> {
    (0..n)
        .rev()
        .map(|alpha| {
            let sign = if alpha % 2 == 0 { -T::one() } else { T::one() };
            GivensGate::new(n - alpha - 1, n + alpha, sign * T::FRAC_PI_4())
                .expect("mirror pair indices are always ordered")
        })
        .collect()
}

/// Orthogonal Q = e^K for real antisymmetric K.
pub fn orbital_rotation_matrix<T: Real>(k: &RMatrix<T>) -> Result<RMatrix<T>> {
    if k.antisymmetry_defect() > lit::<T>(1e-12) {
        return Err(Error::NotAntisymmetric);
    }
    Ok(expm_real(k))
}

/// Single-body matrix of one Givens rotation: exp(θ(e_pq − e_qp)), so column
/// q mixes into row p with +sinθ.
pub fn rotation_matrix<T: Real>(g: &GivensGate<T>, modes: usize) -> RMatrix<T> {
    let mut m = RMatrix::identity(modes);
    let (c, s) = (g.theta.cos(), g.theta.sin());
    m.set(g.p, g.p, c);
    m.set(g.q, g.q, c);
    m.set(g.p, g.q, s);
    m.set(g.q, g.p, -s);
    m
}

/// Product of the schedule's single-body matrices in application order
/// (first gate rightmost).
pub fn schedule_matrix<T: Real>(gates: &[GivensGate<T>], modes: usize) -> RMatrix<T> {
    let mut m = RMatrix::identity(modes);
    for g in gates {
        m = rotation_matrix(g, modes).matmul(&m);
    }
    m
}

/// Triangular Givens sweep: returns a schedule of at most m(m−1)/2 rotations
/// whose single-body product reproduces Q. Rejects non-orthogonal input and
/// reflections.
pub fn decompose_givens<T: Real>(q: &RMatrix<T>) -> Result<Vec<GivensGate<T>>> {
    let m = q.dim();
    if q.orthogonality_defect() > lit::<T>(1e-8) {
        return Err(Error::NotSpecialOrthogonal);
    }
    let mut work = q.clone();
    let mut eliminations: Vec<GivensGate<T>> = Vec::new();
    for col in 0..m {
        for row in col + 1..m {
            let below = work.get(row, col);
            let pivot = work.get(col, col);
            let theta = below.atan2(pivot);
            if theta == T::zero() {
                continue;
            }
            // left-multiply by exp(θ(e_{col,row} − e_{row,col}))
            let (c, s) = (theta.cos(), theta.sin());
            for j in 0..m {
                let a = work.get(col, j);
                let b = work.get(row, j);
                work.set(col, j, c * a + s * b);
                work.set(row, j, -s * a + c * b);
            }
            eliminations.push(GivensGate::new(col, row, theta)?);
        }
    }
    // the residue is orthogonal upper-triangular with nonnegative pivots,
    // hence the identity unless Q was a reflection
    if work.max_abs_diff(&RMatrix::identity(m)) > lit::<T>(1e-6) {
        return Err(Error::NotSpecialOrthogonal);
    }
    Ok(eliminations.into_iter().rev().map(|g| GivensGate { theta: -g.theta, ..g }).collect())
}

/// Antisymmetric K with exp(K) equal to the schedule's single-body product.
/// The flag marks a π-angle branch ambiguity (principal branch taken).
pub fn recover_k<T: Real>(gates: &[GivensGate<T>], modes: usize) -> Result<(RMatrix<T>, bool)> {
    for g in gates {
        if g.q >= modes {
            return Err(Error::IndexOutOfRange { index: g.q, modes });
        }
    }
    log_special_orthogonal(&schedule_matrix(gates, modes))
}

/// Extracts the (K, J) parameter matrices from a compiled circuit.
pub fn params_from_compiled<T: Real>(c: &Ucj1Compiled<T>) -> Result<UcjParams<T>> {
    c.validate()?;
    let (k, k_branch_ambiguous) = recover_k(&c.givens, c.modes)?;
    let mut theta = RMatrix::zeros(c.modes);
    for d in &c.diagonal {
        theta.add_to(d.p, d.q, d.theta);
    }
    Ok(UcjParams { modes: c.modes, k, theta, k_branch_ambiguous })
}

/// Rebuilds a compiled circuit from parameter matrices.
pub fn compiled_from_params<T: Real>(
    params: &UcjParams<T>,
    reference_n: usize,
    global_phase: T,
) -> Result<Ucj1Compiled<T>> {
    let q = orbital_rotation_matrix(&params.k)?;
    let givens = decompose_givens(&q)?;
    let mut diagonal = Vec::new();
    for p in 0..params.modes {
        for r in p..params.modes {
            let angle = params.theta.get(p, r);
            if angle != T::zero() {
                diagonal.push(NumberDiagonalGate::new(p, r, angle)?);
            }
        }
    }
    Ok(Ucj1Compiled { modes: params.modes, givens, diagonal, reference_n, global_phase })
}

/// Embeds two same-size sectors into a 4n-mode system with block mode
/// ordering (up first) and zero cross-spin couplings, simulates it, and
/// reports the L∞ residual against the tensor product of the sector states.
pub fn embed_full_spin<T: Real>(
    up: &Ucj1Compiled<T>,
    down: &Ucj1Compiled<T>,
) -> Result<(StateVector<T>, T)> {
    up.validate()?;
    down.validate()?;
    if up.modes != down.modes {
        return Err(Error::DimensionMismatch(up.modes, down.modes));
    }
    let sector_modes = up.modes;
    let n = up.reference_n;
    let total_modes = 2 * sector_modes;

    let shift_g = |g: &GivensGate<T>| GivensGate {
        p: g.p + sector_modes,
        q: g.q + sector_modes,
        theta: g.theta,
    };
    let shift_d = |d: &NumberDiagonalGate<T>| NumberDiagonalGate {
        p: d.p + sector_modes,
        q: d.q + sector_modes,
        theta: d.theta,
    };

    // combined reference: each sector half-filled in block ordering
    let sector_ref = ((1u64 << n) - 1) << n;
    let ref_index = sector_ref | (sector_ref << sector_modes);
    let mut s = StateVector::basis_state(total_modes, ref_index)?;

    let mut givens: Vec<GivensGate<T>> = up.givens.clone();
    givens.extend(down.givens.iter().map(&shift_g));
    for g in &givens {
        s.apply_givens(g)?;
    }
    for d in &up.diagonal {
        s.apply_number_diagonal(d)?;
    }
    for d in &down.diagonal {
        s.apply_number_diagonal(&shift_d(d))?;
    }
    for g in givens.iter().rev() {
        s.apply_givens(&g.adjoint())?;
    }
    s.scale(Complex::from_polar(T::one(), up.global_phase + down.global_phase));

    let expected = up.simulate()?.tensor(&down.simulate()?)?;
    let residual = s.linf_diff(&expected);
    Ok((s, residual))
}
