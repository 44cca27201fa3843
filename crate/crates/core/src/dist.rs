//! Sparse probability distributions over fixed-width bitstrings.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fermion::StateVector;
use crate::scalar::{lit, Real};

/// Probabilities below this are amplitude-noise squared and are dropped.
const PROB_FLOOR: f64 = 1e-20;

/// Normalized sparse probability map over `width`-bit strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<T> {
    width: usize,
    probs: BTreeMap<u64, T>,
}

impl<T: Real> Distribution<T> {
    pub fn new(width: usize, probs: BTreeMap<u64, T>) -> Self {
        let floor = lit::<T>(PROB_FLOOR);
        let probs = probs.into_iter().filter(|&(_, p)| p > floor).collect();
        Self { width, probs }
    }

    pub fn point_mass(width: usize, index: u64) -> Self {
        let mut probs = BTreeMap::new();
        probs.insert(index, T::one());
        Self { width, probs }
    }

    pub fn from_statevector(s: &StateVector<T>) -> Self {
        let floor = lit::<T>(PROB_FLOOR);
        let probs = s
            .amplitudes()
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let p = a.norm_sqr();
                (p > floor).then_some((i as u64, p))
            })
            .collect();
        Self { width: s.modes(), probs }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, index: u64) -> T {
        self.probs.get(&index).copied().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, T)> + '_ {
        self.probs.iter().map(|(&k, &p)| (k, p))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> T {
        self.probs.values().copied().sum()
    }

    pub fn normalize(&mut self) {
        let total = self.total();
        if total > T::zero() {
            for p in self.probs.values_mut() {
                *p = *p / total;
            }
        }
    }

    fn check_width(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            Err(Error::DimensionMismatch(self.width, other.width))
        } else {
            Ok(())
        }
    }

    /// Max |p(x) − q(x)| over the union of supports.
    pub fn linf(&self, other: &Self) -> Result<T> {
        self.check_width(other)?;
        let mut m = T::zero();
        for (k, p) in self.iter() {
            m = m.max((p - other.get(k)).abs());
        }
        for (k, q) in other.iter() {
            m = m.max((self.get(k) - q).abs());
        }
        Ok(m)
    }

    /// Total variation distance ½Σ|p − q|.
    pub fn tvd(&self, other: &Self) -> Result<T> {
        self.check_width(other)?;
        let mut sum = T::zero();
        for (k, p) in self.iter() {
            sum = sum + (p - other.get(k)).abs();
        }
        for (k, q) in other.iter() {
            if self.get(k) == T::zero() {
                sum = sum + q;
            }
        }
        Ok(sum * lit::<T>(0.5))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::reference_state;

    #[test]
    fn from_reference_is_point_mass() {
        let d = Distribution::from_statevector(&reference_state::<f64>(2).unwrap());
        assert_eq!(d.len(), 1);
        assert_eq!(d.get(0b1100), 1.0);
    }

    #[test]
    fn tvd_and_linf_agree_on_zero() {
        let d = Distribution::<f64>::point_mass(2, 1);
        assert_eq!(d.linf(&d).unwrap(), 0.0);
        assert_eq!(d.tvd(&d).unwrap(), 0.0);
    }

    #[test]
    fn tvd_disjoint_supports() {
        let p = Distribution::<f64>::point_mass(1, 0);
        let q = Distribution::<f64>::point_mass(1, 1);
        assert_eq!(p.tvd(&q).unwrap(), 1.0);
        assert_eq!(p.linf(&q).unwrap(), 1.0);
    }

    #[test]
    fn width_mismatch_rejected() {
        let p = Distribution::<f64>::point_mass(1, 0);
        let q = Distribution::<f64>::point_mass(2, 0);
        assert!(p.linf(&q).is_err());
    }
}
