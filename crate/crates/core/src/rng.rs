//! Counter-based deterministic randomness.
//!
//! Every draw is a pure function of a 64-bit seed, a domain tag and a
//! counter, so generation is reproducible independently of draw order,
//! thread count and platform.

use crate::fermion::{FermionGate, GivensGate, NumberDiagonalGate};
use crate::iqp::IqpCircuit;
use crate::linalg::RMatrix;
use crate::scalar::{lit, Real};

/// Draw domains, kept distinct so streams never collide.
pub mod domain {
    pub const SHOT: u64 = 1;
    pub const IQP_FIELD: u64 = 2;
    pub const IQP_PAIR_KEEP: u64 = 3;
    pub const IQP_PAIR_WEIGHT: u64 = 4;
    pub const GATE_KIND: u64 = 5;
    pub const GATE_MODE: u64 = 6;
    pub const GATE_ANGLE: u64 = 7;
    pub const MATRIX_ENTRY: u64 = 8;
    pub const STATE_RE: u64 = 9;
    pub const STATE_IM: u64 = 10;
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Raw 64-bit output for (seed, domain, counter).
pub fn word(seed: u64, domain: u64, counter: u64) -> u64 {
    splitmix(splitmix(seed ^ splitmix(domain)) ^ splitmix(counter))
}

/// Uniform draw in [0, 1).
pub fn unit<T: Real>(seed: u64, domain: u64, counter: u64) -> T {
    let bits = word(seed, domain, counter) >> 11; // 53 significant bits
    lit::<T>(bits as f64 / (1u64 << 53) as f64)
}

/// Uniform angle in (−π, π].
pub fn angle<T: Real>(seed: u64, domain: u64, counter: u64) -> T {
    T::PI() * (T::one() - lit::<T>(2.0) * unit::<T>(seed, domain, counter))
}

/// Seeded random IQP circuit: every field angle is drawn, each coupling pair
/// is kept with probability `density`. Deterministic per (n, seed, density).
pub fn random_iqp<T: Real>(n: usize, seed: u64, density: f64) -> IqpCircuit<T> {
    let v: Vec<T> = (0..n).map(|a| angle(seed, domain::IQP_FIELD, a as u64)).collect();
    let mut w = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let ctr = (a * n + b) as u64;
            if unit::<f64>(seed, domain::IQP_PAIR_KEEP, ctr) < density {
                w.push((a, b, angle(seed, domain::IQP_PAIR_WEIGHT, ctr)));
            }
        }
    }
    IqpCircuit::new(n, v, w).expect("generated circuit is valid by construction")
}

/// Seeded random mixed gate sequence for kernel-vs-oracle checks.
pub fn random_gate_sequence<T: Real>(modes: usize, count: usize, seed: u64) -> Vec<FermionGate<T>> {
    assert!(modes >= 2);
    (0..count)
        .map(|i| {
            let ctr = i as u64;
            let kind = word(seed, domain::GATE_KIND, ctr) % 2;
            let a = word(seed, domain::GATE_MODE, 2 * ctr) as usize % modes;
            let mut b = word(seed, domain::GATE_MODE, 2 * ctr + 1) as usize % modes;
            let theta = angle(seed, domain::GATE_ANGLE, ctr);
            if kind == 0 {
                if b == a {
                    b = (a + 1) % modes;
                }
                let (p, q) = (a.min(b), a.max(b));
                FermionGate::Givens(GivensGate::new(p, q, theta).unwrap())
            } else {
                let (p, q) = (a.min(b), a.max(b));
                FermionGate::NumberDiagonal(NumberDiagonalGate::new(p, q, theta).unwrap())
            }
        })
        .collect()
}

/// Seeded random antisymmetric matrix with entries uniform in (−scale, scale].
pub fn random_antisymmetric<T: Real>(dim: usize, seed: u64, scale: f64) -> RMatrix<T> {
    let mut k = RMatrix::zeros(dim);
    for r in 0..dim {
        for c in r + 1..dim {
            let ctr = (r * dim + c) as u64;
            let v = lit::<T>(scale)
                * (T::one() - lit::<T>(2.0) * unit::<T>(seed, domain::MATRIX_ENTRY, ctr));
            k.set(r, c, v);
            k.set(c, r, -v);
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_deterministic() {
        assert_eq!(word(7, 1, 3), word(7, 1, 3));
        assert_ne!(word(7, 1, 3), word(7, 1, 4));
        assert_ne!(word(7, 1, 3), word(7, 2, 3));
        assert_ne!(word(7, 1, 3), word(8, 1, 3));
    }

    #[test]
    fn unit_in_range() {
        for i in 0..1000 {
            let u: f64 = unit(42, domain::SHOT, i);
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn angle_in_half_open_range() {
        for i in 0..1000 {
            let a: f64 = angle(42, domain::GATE_ANGLE, i);
            assert!(a > -std::f64::consts::PI && a <= std::f64::consts::PI);
        }
    }

    #[test]
    fn density_extremes() {
        let c0 = random_iqp::<f64>(3, 5, 0.0);
        assert!(c0.weights().next().is_none());
        assert_eq!(c0.fields().len(), 3);
        let c1 = random_iqp::<f64>(3, 5, 1.0);
        assert_eq!(c1.weights().count(), 3);
    }
}
