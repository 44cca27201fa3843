//! JSON wire formats for circuits, distributions, counts and reports.
//!
//! All floats cross the wire as `f64`; serde_json emits the shortest
//! representation that round-trips exactly, so re-parsing an emitted file
//! reproduces the circuit bit for bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::{bitstring, parse_bitstring};
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::fermion::{GivensGate, NumberDiagonalGate};
use crate::iqp::IqpCircuit;
use crate::scalar::{lit, Real};
use crate::ucj::Ucj1Compiled;
use crate::verify::VerifyReport;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IqpWeightJson {
    pub a: usize,
    pub b: usize,
    pub val: f64,
}

/// `{"n": int, "v": [float]*n, "w": [{"a","b","val"}]}` with a < b.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IqpJson {
    pub n: usize,
    pub v: Vec<f64>,
    pub w: Vec<IqpWeightJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GateJson {
    pub p: usize,
    pub q: usize,
    pub theta: f64,
}

/// Givens order is application order; diagonals all commute and are
/// serialized sorted by (p, q).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UcjJson {
    pub modes: usize,
    pub reference_n: usize,
    pub givens: Vec<GateJson>,
    pub diagonal: Vec<GateJson>,
    pub global_phase: f64,
}

impl<T: Real> From<&IqpCircuit<T>> for IqpJson {
    fn from(c: &IqpCircuit<T>) -> Self {
        Self {
            n: c.n(),
            v: c.fields().iter().map(|x| x.to_f64().unwrap()).collect(),
            w: c
                .weights()
                .map(|(a, b, val)| IqpWeightJson { a, b, val: val.to_f64().unwrap() })
                .collect(),
        }
    }
}

impl IqpJson {
    pub fn into_circuit<T: Real>(self) -> Result<IqpCircuit<T>> {
        let v = self.v.into_iter().map(lit::<T>).collect();
        let w = self.w.into_iter().map(|e| (e.a, e.b, lit::<T>(e.val))).collect();
        IqpCircuit::new(self.n, v, w)
    }
}

impl<T: Real> From<&Ucj1Compiled<T>> for UcjJson {
    fn from(c: &Ucj1Compiled<T>) -> Self {
        let mut diagonal: Vec<GateJson> = c
            .diagonal
            .iter()
            .map(|d| GateJson { p: d.p, q: d.q, theta: d.theta.to_f64().unwrap() })
            .collect();
        diagonal.sort_by_key(|g| (g.p, g.q));
        Self {
            modes: c.modes,
            reference_n: c.reference_n,
            givens: c
                .givens
                .iter()
                .map(|g| GateJson { p: g.p, q: g.q, theta: g.theta.to_f64().unwrap() })
                .collect(),
            diagonal,
            global_phase: c.global_phase.to_f64().unwrap(),
        }
    }
}

impl UcjJson {
    pub fn into_circuit<T: Real>(self) -> Result<Ucj1Compiled<T>> {
        let givens = self
            .givens
            .into_iter()
            .map(|g| GivensGate::new(g.p, g.q, lit::<T>(g.theta)))
            .collect::<Result<Vec<_>>>()?;
        let diagonal = self
            .diagonal
            .into_iter()
            .map(|g| NumberDiagonalGate::new(g.p, g.q, lit::<T>(g.theta)))
            .collect::<Result<Vec<_>>>()?;
        let c = Ucj1Compiled {
            modes: self.modes,
            givens,
            diagonal,
            reference_n: self.reference_n,
            global_phase: lit::<T>(self.global_phase),
        };
        c.validate()?;
        Ok(c)
    }
}

/// Verification report; `mult_error` serializes as a number or `"inf"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub linf: f64,
    pub tvd: f64,
    pub mult_error: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<f64>,
    pub leakage: f64,
    pub residual: f64,
    pub pass: bool,
    pub tolerance: f64,
}

impl<T: Real> From<&VerifyReport<T>> for ReportJson {
    fn from(r: &VerifyReport<T>) -> Self {
        let mult = r.mult_error.to_f64().unwrap_or(f64::INFINITY);
        Self {
            linf: r.linf.to_f64().unwrap(),
            tvd: r.tvd.to_f64().unwrap(),
            mult_error: if mult.is_finite() {
                serde_json::json!(mult)
            } else {
                serde_json::json!("inf")
            },
            phase: r.phase.map(|p| p.to_f64().unwrap()),
            leakage: r.leakage.to_f64().unwrap(),
            residual: r.residual.to_f64().unwrap(),
            pass: r.pass,
            tolerance: r.tolerance.to_f64().unwrap(),
        }
    }
}

/// Distribution as a map from display bitstrings to probabilities.
pub fn distribution_to_json<T: Real>(d: &Distribution<T>) -> BTreeMap<String, f64> {
    d.iter().map(|(k, p)| (bitstring(k, d.width()), p.to_f64().unwrap())).collect()
}

/// Counts map keyed by display bitstrings.
pub fn counts_to_json(counts: &BTreeMap<u64, u64>, width: usize) -> BTreeMap<String, u64> {
    counts.iter().map(|(&k, &c)| (bitstring(k, width), c)).collect()
}

pub fn parse_iqp_json(text: &str) -> Result<IqpJson> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("IQP JSON: {e}")))
}

pub fn parse_ucj_json(text: &str) -> Result<UcjJson> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("UCJ JSON: {e}")))
}

/// Statevector as parallel re/im arrays in basis-index order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub modes: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl StateJson {
    pub fn from_state<T: Real>(s: &crate::fermion::StateVector<T>) -> Self {
        Self {
            modes: s.modes(),
            re: s.amplitudes().iter().map(|a| a.re.to_f64().unwrap()).collect(),
            im: s.amplitudes().iter().map(|a| a.im.to_f64().unwrap()).collect(),
        }
    }
}

/// Keys in count/distribution maps are display bitstrings; parse one back.
pub fn parse_key(key: &str) -> Result<(u64, usize)> {
    parse_bitstring(key)
}
