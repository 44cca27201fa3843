//! Quantitative state/distribution comparison, multiplicative-error
//! computation, deterministic sampling, and the invariant probes shared by
//! tests and the CLI.

use std::collections::BTreeMap;

use crate::bits::lex_key;
use crate::compile::{decode_distribution, decode_state, PairEncoding};
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::fermion::{fock_oracle_unitary, jw_dense_ladder, StateVector};
use crate::iqp::IqpCircuit;
use crate::linalg::CMatrix;
use crate::rng;
use crate::scalar::{lit, Real};
use crate::ucj::{GatePoint, Ucj1Compiled};

/// Probabilities below this are treated as exact zeros when forming ratios.
pub const ZERO_THRESHOLD: f64 = 1e-14;

/// Outcome of comparing an IQP circuit against a compiled 1-UCJ' circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport<T> {
    /// Max absolute probability difference.
    pub linf: T,
    /// Total variation distance.
    pub tvd: T,
    /// Multiplicative error c ≥ 1 (infinite on support mismatch).
    pub mult_error: T,
    /// Aligned global phase between the decoded and reference states, when
    /// the states overlap.
    pub phase: Option<T>,
    /// Probability mass outside the coded subspace.
    pub leakage: T,
    /// Phase-aligned statevector residual.
    pub residual: T,
    pub pass: bool,
    pub tolerance: T,
}

/// Smallest c with (1/c)·p(x) ≤ q(x) ≤ c·p(x) for all x; symmetric in its
/// arguments. Probabilities under `ZERO_THRESHOLD` count as exact zeros.
pub fn multiplicative_error<T: Real>(p: &Distribution<T>, q: &Distribution<T>) -> Result<T> {
    if p.width() != q.width() {
        return Err(Error::DimensionMismatch(p.width(), q.width()));
    }
    let zero = lit::<T>(ZERO_THRESHOLD);
    let mut c = T::one();
    let mut keys: Vec<u64> = p.iter().map(|(k, _)| k).collect();
    keys.extend(q.iter().map(|(k, _)| k));
    keys.sort_unstable();
    keys.dedup();
    for k in keys {
        let pv = p.get(k);
        let qv = q.get(k);
        let pz = pv < zero;
        let qz = qv < zero;
        if pz && qz {
            continue;
        }
        if pz || qz {
            return Ok(T::infinity());
        }
        c = c.max((pv / qv).max(qv / pv));
    }
    Ok(c)
}

/// Aligned phase arg⟨a|b⟩ and the residual ‖a − e^{−i·phase}·b‖₂ minimized
/// over the global phase. Orthogonal states have no phase and residual √2.
pub fn compare_states<T: Real>(
    a: &StateVector<T>,
    b: &StateVector<T>,
) -> Result<(Option<T>, T)> {
    if a.modes() != b.modes() {
        return Err(Error::DimensionMismatch(a.modes(), b.modes()));
    }
    let zero = num_complex::Complex::new(T::zero(), T::zero());
    let overlap = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .fold(zero, |acc, (x, y)| acc + x.conj() * *y);
    if overlap.norm() < lit::<T>(1e-14) {
        return Ok((None, lit::<T>(2.0).sqrt()));
    }
    let phase = overlap.arg();
    let rot = num_complex::Complex::from_polar(T::one(), -phase);
    let residual = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (*x - *y * rot).norm_sqr())
        .fold(T::zero(), |s, v| s + v)
        .sqrt();
    Ok((Some(phase), residual))
}

/// Draws `shots` outcomes by inverse-CDF over the keys in lexicographic
/// (b_0-first) order; shot i uses the counter-based stream (seed, i), so the
/// result is independent of host parallelism.
pub fn sample<T: Real>(d: &Distribution<T>, shots: u64, seed: u64) -> BTreeMap<u64, u64> {
    let mut keys: Vec<(u64, T)> = d.iter().collect();
    keys.sort_by_key(|&(k, _)| lex_key(k, d.width()));
    let mut cdf = Vec::with_capacity(keys.len());
    let mut acc = T::zero();
    for &(k, p) in &keys {
        acc = acc + p;
        cdf.push((k, acc));
    }
    let mut counts = BTreeMap::new();
    for i in 0..shots {
        let u = rng::unit::<T>(seed, rng::domain::SHOT, i) * acc;
        let pos = cdf.partition_point(|&(_, c)| c <= u).min(cdf.len().saturating_sub(1));
        if let Some(&(k, _)) = cdf.get(pos) {
            *counts.entry(k).or_insert(0) += 1;
        }
    }
    counts
}

/// Max |amplitude| outside the coded pair subspace.
pub fn subspace_leak<T: Real>(s: &StateVector<T>, enc: &PairEncoding) -> T {
    let mut worst = T::zero();
    for (x, amp) in s.amplitudes().iter().enumerate() {
        if enc.decode_index(x as u64).is_none() {
            worst = worst.max(amp.norm());
        }
    }
    worst
}

/// Simulates both circuits, decodes the compiled one, and fills a full
/// report. Leakage at or above the decode threshold is an error, not a
/// silent renormalization.
pub fn verify_pair<T: Real>(
    iqp: &IqpCircuit<T>,
    ucj: &Ucj1Compiled<T>,
    tolerance: T,
) -> Result<VerifyReport<T>> {
    let enc = PairEncoding::new(iqp.n());
    if ucj.modes != enc.modes() {
        return Err(Error::DimensionMismatch(ucj.modes, enc.modes()));
    }
    let iqp_state = iqp.state()?;
    let reference_dist = Distribution::from_statevector(&iqp_state);
    let compiled_state = ucj.simulate()?;
    let (decoded_dist, leakage) =
        decode_distribution(&Distribution::from_statevector(&compiled_state), &enc)?;
    let linf = reference_dist.linf(&decoded_dist)?;
    let tvd = reference_dist.tvd(&decoded_dist)?;
    let mult_error = multiplicative_error(&reference_dist, &decoded_dist)?;
    let (decoded_state, _) = decode_state(&compiled_state, &enc)?;
    let (phase, residual) = compare_states(&iqp_state, &decoded_state)?;
    let pass = linf <= tolerance && residual <= tolerance;
    Ok(VerifyReport { linf, tvd, mult_error, phase, leakage, residual, pass, tolerance })
}

/// One named property with its pass count.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: usize,
    pub trials: usize,
}

impl PropertyResult {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// Fermionic algebra and kernel/oracle equivalence probes (the fermion
/// module's property suite), seeded and sized from the arguments.
pub fn run_fermion_invariants(modes: usize, seed: u64, trials: usize) -> Vec<PropertyResult> {
    let modes = modes.clamp(2, 6);
    let mut results = Vec::new();

    // canonical anticommutation relations as dense matrices
    let dim = 1usize << modes;
    let mut car_ok = 0;
    let mut car_total = 0;
    let ladders: Vec<CMatrix<f64>> =
        (0..modes).map(|p| jw_dense_ladder::<f64>(p, modes).unwrap()).collect();
    for p in 0..modes {
        for q in 0..modes {
            car_total += 2;
            let aa = ladders[p].matmul(&ladders[q]).add(&ladders[q].matmul(&ladders[p]));
            if aa.max_abs() < 1e-12 {
                car_ok += 1;
            }
            let ad =
                ladders[p].matmul(&ladders[q].adjoint()).add(&ladders[q].adjoint().matmul(&ladders[p]));
            let expect =
                if p == q { CMatrix::identity(dim) } else { CMatrix::zeros(dim) };
            if ad.max_abs_diff(&expect) < 1e-12 {
                car_ok += 1;
            }
        }
    }
    results.push(PropertyResult { name: "anticommutation", passed: car_ok, trials: car_total });

    // kernel vs dense oracle on random states and schedules
    let mut equiv_ok = 0;
    let mut norm_ok = 0;
    let mut number_ok = 0;
    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t as u64);
        let count = 1 + (rng::word(trial_seed, rng::domain::GATE_KIND, u64::MAX) % 20) as usize;
        let gates = rng::random_gate_sequence::<f64>(modes, count, trial_seed);
        let mut state = random_state(modes, trial_seed);
        let oracle_in = state.clone();
        let mut norm_fine = true;
        let mut number_fine = true;
        let occupancy_profile = occupation_support(&state);
        for gate in &gates {
            state.apply(gate).unwrap();
            if (state.norm() - 1.0).abs() > 1e-12 {
                norm_fine = false;
            }
            if occupation_support(&state) & !occupancy_profile != 0 {
                number_fine = false;
            }
        }
        let u = fock_oracle_unitary(&gates, modes).unwrap();
        let oracle_out = u.mul_vec(oracle_in.amplitudes());
        let gap = state
            .amplitudes()
            .iter()
            .zip(&oracle_out)
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0f64, f64::max);
        if gap < 1e-10 {
            equiv_ok += 1;
        }
        if norm_fine {
            norm_ok += 1;
        }
        if number_fine {
            number_ok += 1;
        }
    }
    results.push(PropertyResult { name: "kernel_oracle_equivalence", passed: equiv_ok, trials });
    results.push(PropertyResult { name: "norm_preservation", passed: norm_ok, trials });
    results.push(PropertyResult { name: "particle_number_conservation", passed: number_ok, trials });
    results
}

/// UCJ-side probes: end-to-end equivalence check, subspace leakage, the
/// intervening-parity claim, and the Givens/K round trip.
pub fn run_ucj_invariants(n: usize, seed: u64, trials: usize) -> Vec<PropertyResult> {
    let n = n.clamp(1, 6);
    let mut end_to_end_ok = 0;
    let mut leak_ok = 0;
    let mut parity_ok = 0;
    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t as u64);
        let circuit = rng::random_iqp::<f64>(n, trial_seed, 0.7);
        let compiled = crate::compile::compile_iqp(&circuit);
        match verify_pair(&circuit, &compiled, 1e-10) {
            Ok(report) if report.pass && report.mult_error < 1.0 + 1e-8 => end_to_end_ok += 1,
            _ => {}
        }
        let probes = probe_compiled_invariants(&compiled);
        if probes.max_leak < 1e-12 {
            leak_ok += 1;
        }
        if probes.parity_holds {
            parity_ok += 1;
        }
    }

    let mut round_trip_ok = 0;
    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t as u64).wrapping_mul(0x9E37_79B9);
        let modes = 2 * n.min(4);
        let k = rng::random_antisymmetric::<f64>(modes, trial_seed, 1.5);
        let q = crate::linalg::expm_real(&k);
        let ok = crate::ucj::decompose_givens(&q)
            .and_then(|sched| crate::ucj::recover_k(&sched, modes))
            .map(|(k2, _)| crate::linalg::expm_real(&k2).max_abs_diff(&q) < 1e-8)
            .unwrap_or(false);
        if ok {
            round_trip_ok += 1;
        }
    }

    vec![
        PropertyResult { name: "end_to_end_equivalence", passed: end_to_end_ok, trials },
        PropertyResult { name: "coded_subspace_leakage", passed: leak_ok, trials },
        PropertyResult { name: "intervening_parity", passed: parity_ok, trials },
        PropertyResult { name: "givens_k_round_trip", passed: round_trip_ok, trials },
    ]
}

/// Intermediate-state observations of one compiled-circuit run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompiledProbes {
    /// Worst amplitude outside the coded subspace over all gate points.
    pub max_leak: f64,
    /// Whether the intervening block carried Hamming weight α before every
    /// V_α and V_α† application.
    pub parity_holds: bool,
}

/// Runs a compiled circuit and watches the structural invariants at every
/// gate boundary.
pub fn probe_compiled_invariants(c: &Ucj1Compiled<f64>) -> CompiledProbes {
    let enc = PairEncoding::new(c.reference_n);
    let mut max_leak = 0.0f64;
    let mut parity_holds = true;
    let n = c.reference_n;
    c.simulate_traced(|point, state| {
        max_leak = max_leak.max(subspace_leak(state, &enc));
        let gate = match point {
            GatePoint::BeforeGivens(g) | GatePoint::BeforeAdjointGivens(g) => Some(g),
            _ => None,
        };
        if let Some(g) = gate {
            // for V_α on pair (n−α−1, n+α) the intervening block is
            // modes n−α..n+α−1, and must carry Hamming weight exactly α
            let alpha = n - g.p - 1;
            let mask = if alpha == 0 {
                0u64
            } else {
                let lo = (n - alpha) as u64;
                ((1u64 << (2 * alpha)) - 1) << lo
            };
            for (x, amp) in state.amplitudes().iter().enumerate() {
                if amp.norm() > 1e-12 && (x as u64 & mask).count_ones() as usize != alpha {
                    parity_holds = false;
                }
            }
        }
    })
    .expect("compiled circuit simulates");
    CompiledProbes { max_leak, parity_holds }
}

fn occupation_support(s: &StateVector<f64>) -> u64 {
    // bitmask of Hamming weights present in the support
    let mut mask = 0u64;
    for (x, amp) in s.amplitudes().iter().enumerate() {
        if amp.norm_sqr() > 1e-24 {
            mask |= 1 << (x as u64).count_ones();
        }
    }
    mask
}

/// Seeded Haar-ish random state: uniform box amplitudes, normalized.
pub fn random_state(modes: usize, seed: u64) -> StateVector<f64> {
    let dim = 1usize << modes;
    let mut amps: Vec<num_complex::Complex<f64>> = (0..dim as u64)
        .map(|i| {
            num_complex::Complex::new(
                rng::unit::<f64>(seed, rng::domain::STATE_RE, i) - 0.5,
                rng::unit::<f64>(seed, rng::domain::STATE_IM, i) - 0.5,
            )
        })
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    StateVector::from_amplitudes(modes, amps).unwrap()
}
