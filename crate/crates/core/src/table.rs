//! Complete boolean truth tables and their CSV form.
//!
//! A table on `n` inputs always holds all `2^n` input combinations, each
//! exactly once. Row order is whatever the source provided; procedures that
//! care about visit order say so explicitly instead of relying on it.

use crate::error::{Error, Result};
use crate::unit::Bit;

/// Hard cap on the number of inputs; every procedure here enumerates all
/// `2^n` rows, so the limit is documented rather than silently truncated.
pub const MAX_INPUTS: usize = 8;

/// A complete boolean function: `2^n` rows of input bits and a target bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    n_inputs: usize,
    rows: Vec<(Vec<Bit>, Bit)>,
    // target per combination index, with x1 as the most significant bit
    by_index: Vec<Bit>,
}

impl TruthTable {
    /// Validate and build a table from explicit rows.
    ///
    /// Every input combination must appear exactly once; row order is kept.
    pub fn new(n_inputs: usize, rows: Vec<(Vec<Bit>, Bit)>) -> Result<Self> {
        if n_inputs == 0 || n_inputs > MAX_INPUTS {
            return Err(Error::UnsupportedInputCount { n: n_inputs });
        }
        let expected = 1usize << n_inputs;
        let mut by_index = vec![None; expected];
        for (i, (inputs, target)) in rows.iter().enumerate() {
            if inputs.len() != n_inputs {
                return Err(Error::DimensionMismatch {
                    expected: n_inputs,
                    actual: inputs.len(),
                });
            }
            let idx = combination_index(inputs);
            if by_index[idx].is_some() {
                return Err(Error::DuplicateRow { index: i });
            }
            by_index[idx] = Some(*target);
        }
        if rows.len() != expected {
            return Err(Error::IncompleteTable {
                expected,
                actual: rows.len(),
            });
        }
        let by_index = by_index.into_iter().map(|t| t.unwrap()).collect();
        Ok(Self {
            n_inputs,
            rows,
            by_index,
        })
    }

    /// Build a table whose rows run in ascending binary order (`x1` is the
    /// most significant bit), given just the target column.
    pub fn from_outputs(n_inputs: usize, outputs: &[Bit]) -> Result<Self> {
        if n_inputs == 0 || n_inputs > MAX_INPUTS {
            return Err(Error::UnsupportedInputCount { n: n_inputs });
        }
        let expected = 1usize << n_inputs;
        if outputs.len() != expected {
            return Err(Error::IncompleteTable {
                expected,
                actual: outputs.len(),
            });
        }
        let rows = outputs
            .iter()
            .enumerate()
            .map(|(idx, target)| (combination_bits(n_inputs, idx), *target))
            .collect();
        Self::new(n_inputs, rows)
    }

    /// Parse the CSV form: header `x1,...,xn,f`, then one `0`/`1` row per
    /// input combination. Errors carry 1-based line numbers.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input, expected a header like x1,x2,f".into(),
        })?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.len() < 2 || cols[cols.len() - 1] != "f" {
            return Err(Error::Parse {
                line: 1,
                msg: format!("bad header {header:?}, expected x1,...,xn,f"),
            });
        }
        let n_inputs = cols.len() - 1;
        for (i, col) in cols[..n_inputs].iter().enumerate() {
            let want = format!("x{}", i + 1);
            if *col != want {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("bad header column {col:?}, expected {want:?}"),
                });
            }
        }
        if n_inputs > MAX_INPUTS {
            return Err(Error::UnsupportedInputCount { n: n_inputs });
        }

        let mut rows = Vec::new();
        let mut row_lines = Vec::new();
        for (line_no, line) in lines {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != n_inputs + 1 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {} cells, got {}", n_inputs + 1, cells.len()),
                });
            }
            let mut bits = Vec::with_capacity(n_inputs + 1);
            for cell in &cells {
                let bit = match *cell {
                    "0" => Bit::ZERO,
                    "1" => Bit::ONE,
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("non-binary cell {other:?}"),
                        })
                    }
                };
                bits.push(bit);
            }
            let target = bits.pop().unwrap();
            rows.push((bits, target));
            row_lines.push(line_no);
        }

        Self::new(n_inputs, rows).map_err(|e| match e {
            Error::DuplicateRow { index } => Error::Parse {
                line: row_lines[index],
                msg: "duplicate input combination".into(),
            },
            other => other,
        })
    }

    /// Render back to the CSV form, preserving row order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.n_inputs {
            out.push_str(&format!("x{i},"));
        }
        out.push_str("f\n");
        for (inputs, target) in &self.rows {
            for b in inputs {
                out.push_str(&format!("{b},"));
            }
            out.push_str(&format!("{target}\n"));
        }
        out
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    /// Number of rows, always `2^n_inputs`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rows(&self) -> &[(Vec<Bit>, Bit)] {
        &self.rows
    }

    /// Target for a given input combination.
    pub fn target(&self, inputs: &[Bit]) -> Result<Bit> {
        if inputs.len() != self.n_inputs {
            return Err(Error::DimensionMismatch {
                expected: self.n_inputs,
                actual: inputs.len(),
            });
        }
        Ok(self.by_index[combination_index(inputs)])
    }

    /// Targets in ascending binary order, regardless of row order.
    pub fn outputs_by_index(&self) -> &[Bit] {
        &self.by_index
    }

    /// Same function with every target complemented.
    pub fn complement(&self) -> TruthTable {
        let rows = self
            .rows
            .iter()
            .map(|(inputs, target)| (inputs.clone(), Bit::new(!target.is_set())))
            .collect();
        Self::new(self.n_inputs, rows).expect("complement preserves validity")
    }

    /// Same function with input positions permuted; `perm[i]` names the old
    /// position feeding new position `i`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Result<TruthTable> {
        if perm.len() != self.n_inputs {
            return Err(Error::DimensionMismatch {
                expected: self.n_inputs,
                actual: perm.len(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|(inputs, target)| {
                let permuted: Vec<Bit> = perm.iter().map(|&p| inputs[p]).collect();
                (permuted, *target)
            })
            .collect();
        Self::new(self.n_inputs, rows)
    }
}

/// Binary value of an input combination, `x1` as the most significant bit.
pub(crate) fn combination_index(inputs: &[Bit]) -> usize {
    inputs
        .iter()
        .fold(0usize, |acc, b| (acc << 1) | b.as_u8() as usize)
}

/// Inverse of [`combination_index`].
pub(crate) fn combination_bits(n: usize, index: usize) -> Vec<Bit> {
    (0..n)
        .map(|i| Bit::new((index >> (n - 1 - i)) & 1 == 1))
        .collect()
}
