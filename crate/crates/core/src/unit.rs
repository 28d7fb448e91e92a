//! The threshold neuron and its binary signals.

use std::fmt;

use crate::error::{Error, Result};
use crate::table::TruthTable;

/// A binary signal: 0 or 1, nothing else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub fn new(set: bool) -> Self {
        Bit(set)
    }

    pub fn try_from_u8(v: u8) -> Option<Self> {
        match v {
            0 => Some(Bit::ZERO),
            1 => Some(Bit::ONE),
            _ => None,
        }
    }

    pub fn is_set(self) -> bool {
        self.0
    }

    pub fn as_u8(self) -> u8 {
        self.0 as u8
    }

    pub fn as_f64(self) -> f64 {
        self.0 as u8 as f64
    }
}

impl From<bool> for Bit {
    fn from(v: bool) -> Self {
        Bit(v)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// One linear threshold unit: weights `w_1..w_n` and a threshold `t`.
///
/// The unit fires (outputs 1) exactly when the weighted input sum strictly
/// exceeds the threshold; a sum equal to the threshold outputs 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdUnit {
    weights: Vec<f64>,
    threshold: f64,
}

impl ThresholdUnit {
    /// Build a unit; every weight and the threshold must be finite.
    pub fn new(weights: Vec<f64>, threshold: f64) -> Result<Self> {
        if !threshold.is_finite() || weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { weights, threshold })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn n_inputs(&self) -> usize {
        self.weights.len()
    }

    /// Dot product of the weights with the input bits.
    pub fn weighted_sum(&self, inputs: &[Bit]) -> Result<f64> {
        if inputs.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                actual: inputs.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(inputs)
            .map(|(w, x)| w * x.as_f64())
            .sum())
    }

    /// The firing rule: 1 iff `weighted_sum(inputs) > threshold`, strictly.
    pub fn eval(&self, inputs: &[Bit]) -> Result<Bit> {
        Ok(Bit::new(self.weighted_sum(inputs)? > self.threshold))
    }

    /// Indices of the table rows this unit gets wrong.
    ///
    /// An empty result means the unit realizes the table exactly.
    pub fn mismatches(&self, table: &TruthTable) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, (inputs, target)) in table.rows().iter().enumerate() {
            if self.eval(inputs)? != *target {
                out.push(i);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ThresholdUnit {
    /// Renders as `w1=.. w2=.. t=..`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.weights.iter().enumerate() {
            write!(f, "w{}={} ", i + 1, w)?;
        }
        write!(f, "t={}", self.threshold)
    }
}

impl ThresholdUnit {
    /// Like `Display`, but with sub-1e-10 representation noise rounded away;
    /// meant for human-facing output, not for round-tripping values.
    pub fn display_rounded(&self) -> String {
        let mut out = String::new();
        for (i, w) in self.weights.iter().enumerate() {
            out.push_str(&format!("w{}={} ", i + 1, round_noise(*w)));
        }
        out.push_str(&format!("t={}", round_noise(self.threshold)));
        out
    }
}

/// Fixed 10-decimal rendering with trailing zeros trimmed, so values a few
/// ulps off a short decimal print as that decimal.
pub(crate) fn round_noise(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let mut s = format!("{v:.10}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Shorthand for building bit vectors from 0/1 literals.
pub fn bits(values: &[u8]) -> Vec<Bit> {
    values
        .iter()
        .map(|&v| Bit::try_from_u8(v).expect("bits() takes only 0 or 1"))
        .collect()
}
