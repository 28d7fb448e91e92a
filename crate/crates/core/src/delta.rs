//! Iterative single-unit training: repeatedly visit input columns and remove
//! a portion `d = (E + e) / 2` of each observed violation.
//!
//! The violation `E` of a column is how far the weighted sum sits on the
//! wrong side of the threshold: `max(0, t - s)` when the target is 1 and
//! `max(0, s - t)` when it is 0. The update touches only the active weights
//! (those whose input bit is 1) plus the threshold, which is always active:
//! active weights move by `+d` and the threshold by `-d` when the target is
//! 1, and the other way around when it is 0.
//!
//! Note the asymmetry at the boundary: a target-1 column with `s == t` is
//! misclassified by the strict firing rule yet has `E == 0` and triggers no
//! update. A converged unit can therefore still leave boundary rows wrong
//! under [`ThresholdUnit::eval`]; set `zero_error_epsilon > 0` to force
//! updates on such rows.

use crate::error::{Error, Result};
use crate::table::TruthTable;
use crate::unit::{Bit, ThresholdUnit};

/// Violations at or below this count as zero when deciding whether a column
/// errs. Decimal corrections like 0.1 are not exactly representable in binary
/// floating point, so a cancellation that is exact in decimal can land a few
/// ulps away from zero; without the floor such residue would trigger spurious
/// updates. The floor sits far below any meaningful correction and matches
/// the tolerance recorded traces are compared with.
pub const ZERO_NOISE_FLOOR: f64 = 1e-12;

/// Order in which columns are visited, cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanOrder {
    /// Reflected Gray sequence over the input bits: for two inputs
    /// `00, 01, 11, 10`, repeating. Successive visits flip one bit.
    #[default]
    GrayCyclic,
    /// The table's own row order, repeating.
    FileOrderCyclic,
}

#[derive(Debug, Clone)]
pub struct DeltaConfig {
    /// The learning constant `e` added to every observed error.
    pub learning_constant: f64,
    /// Hard stop: non-separable tables never converge on their own.
    pub max_updates: usize,
    pub scan_order: ScanOrder,
    /// Required satisfaction margin. A column counts as erring while its
    /// signed violation exceeds `ZERO_NOISE_FLOOR - zero_error_epsilon`, so
    /// zero keeps the boundary-passing behavior and a positive value forces
    /// updates on boundary rows until they clear the margin.
    pub zero_error_epsilon: f64,
}

impl Default for DeltaConfig {
    fn default() -> Self {
        Self {
            learning_constant: 0.1,
            max_updates: 10_000,
            scan_order: ScanOrder::GrayCyclic,
            zero_error_epsilon: 0.0,
        }
    }
}

impl DeltaConfig {
    fn validate(&self) -> Result<()> {
        if !(self.learning_constant > 0.0) || !self.learning_constant.is_finite() {
            return Err(Error::InvalidConfig("learning_constant must be > 0"));
        }
        if self.max_updates == 0 {
            return Err(Error::InvalidConfig("max_updates must be at least 1"));
        }
        if self.zero_error_epsilon < 0.0 || !self.zero_error_epsilon.is_finite() {
            return Err(Error::InvalidConfig("zero_error_epsilon must be >= 0"));
        }
        Ok(())
    }
}

/// One recorded update.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    /// 1-based update counter.
    pub iteration: usize,
    /// The visited input column.
    pub column: Vec<Bit>,
    /// Violation `E` observed before the update.
    pub error: f64,
    /// Correction `d = (E + e) / 2` applied.
    pub correction: f64,
    /// Unit state after the update.
    pub updated_unit: ThresholdUnit,
    /// Indices of weights that moved; the threshold moves on every update.
    pub touched_weights: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaStatus {
    /// A full cycle over all columns produced no update.
    Converged,
    /// The update budget ran out first.
    MaxUpdatesExceeded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaResult {
    pub status: DeltaStatus,
    pub final_unit: ThresholdUnit,
    pub trace: Vec<TraceRow>,
}

/// The violation of one column: zero when the column imposes no correction.
pub fn delta_error(unit: &ThresholdUnit, column: &[Bit], target: Bit) -> Result<f64> {
    let s = unit.weighted_sum(column)?;
    let t = unit.threshold();
    Ok(if target.is_set() {
        (t - s).max(0.0)
    } else {
        (s - t).max(0.0)
    })
}

/// Move the active weights and the threshold by `d`, directions set by the
/// target: toward firing for target 1, away from firing for target 0.
pub fn delta_update(
    unit: &ThresholdUnit,
    column: &[Bit],
    target: Bit,
    d: f64,
) -> Result<ThresholdUnit> {
    if column.len() != unit.n_inputs() {
        return Err(Error::DimensionMismatch {
            expected: unit.n_inputs(),
            actual: column.len(),
        });
    }
    if d < 0.0 || !d.is_finite() {
        return Err(Error::NegativeCorrection(d));
    }
    let sign = if target.is_set() { 1.0 } else { -1.0 };
    let weights = unit
        .weights()
        .iter()
        .zip(column)
        .map(|(w, x)| if x.is_set() { w + sign * d } else { *w })
        .collect();
    ThresholdUnit::new(weights, unit.threshold() - sign * d)
}

/// Run the rule until no column errs or the update budget is exhausted.
///
/// Columns are visited cyclically in the configured order; a column still
/// short of the required margin (see [`DeltaConfig::zero_error_epsilon`] and
/// [`ZERO_NOISE_FLOOR`]) is corrected and recorded, and the scan resumes from
/// the next column. Convergence is declared once a full cycle over all `2^n`
/// columns performs no update.
pub fn delta_train(
    table: &TruthTable,
    init: &ThresholdUnit,
    config: &DeltaConfig,
) -> Result<DeltaResult> {
    config.validate()?;
    if init.n_inputs() != table.n_inputs() {
        return Err(Error::DimensionMismatch {
            expected: table.n_inputs(),
            actual: init.n_inputs(),
        });
    }

    let columns: Vec<Vec<Bit>> = match config.scan_order {
        ScanOrder::GrayCyclic => gray_columns(table.n_inputs()),
        ScanOrder::FileOrderCyclic => {
            table.rows().iter().map(|(inputs, _)| inputs.clone()).collect()
        }
    };

    let mut unit = init.clone();
    let mut trace = Vec::new();
    let mut clean_visits = 0usize;
    let mut at = 0usize;
    loop {
        let column = &columns[at];
        at = (at + 1) % columns.len();
        let target = table.target(column)?;
        let s = unit.weighted_sum(column)?;
        let violation = if target.is_set() {
            unit.threshold() - s
        } else {
            s - unit.threshold()
        };
        if violation > ZERO_NOISE_FLOOR - config.zero_error_epsilon {
            let error = violation.max(0.0);
            let correction = (error + config.learning_constant) / 2.0;
            unit = delta_update(&unit, column, target, correction)?;
            let touched_weights = column
                .iter()
                .enumerate()
                .filter(|(_, x)| x.is_set())
                .map(|(i, _)| i)
                .collect();
            trace.push(TraceRow {
                iteration: trace.len() + 1,
                column: column.clone(),
                error,
                correction,
                updated_unit: unit.clone(),
                touched_weights,
            });
            clean_visits = 0;
            if trace.len() >= config.max_updates {
                return Ok(DeltaResult {
                    status: DeltaStatus::MaxUpdatesExceeded,
                    final_unit: unit,
                    trace,
                });
            }
        } else {
            clean_visits += 1;
            if clean_visits >= columns.len() {
                return Ok(DeltaResult {
                    status: DeltaStatus::Converged,
                    final_unit: unit,
                    trace,
                });
            }
        }
    }
}

/// The reflected Gray sequence over `n` input bits, `x1` most significant.
pub fn gray_columns(n: usize) -> Vec<Vec<Bit>> {
    (0..1usize << n)
        .map(|k| {
            let g = k ^ (k >> 1);
            (0..n).map(|i| Bit::new((g >> (n - 1 - i)) & 1 == 1)).collect()
        })
        .collect()
}

impl DeltaResult {
    /// Trace as CSV: `iteration,column,E,d,w1..wn,t,touched`, full unit state
    /// per row with the moved entries listed in `touched`.
    pub fn trace_csv(&self) -> String {
        let n = self.final_unit.n_inputs();
        let mut out = String::from("iteration,column,E,d");
        for i in 1..=n {
            out.push_str(&format!(",w{i}"));
        }
        out.push_str(",t,touched\n");
        for row in &self.trace {
            let column: String = row.column.iter().map(|b| b.to_string()).collect();
            out.push_str(&format!(
                "{},{},{},{}",
                row.iteration, column, row.error, row.correction
            ));
            for w in row.updated_unit.weights() {
                out.push_str(&format!(",{w}"));
            }
            out.push_str(&format!(",{}", row.updated_unit.threshold()));
            let mut touched: Vec<String> = row
                .touched_weights
                .iter()
                .map(|i| format!("w{}", i + 1))
                .collect();
            touched.push("t".into());
            out.push_str(&format!(",{}\n", touched.join(";")));
        }
        out
    }

    /// Trace as an aligned text table; entries a given update did not touch
    /// render as `--`. Values are shown with representation noise rounded
    /// away (the CSV export keeps them exact).
    pub fn trace_table(&self) -> String {
        use crate::unit::round_noise;

        let n = self.final_unit.n_inputs();
        let mut header: Vec<String> = vec![
            "iteration".into(),
            "column".into(),
            "E".into(),
            "d".into(),
        ];
        for i in 1..=n {
            header.push(format!("w{i}"));
        }
        header.push("t".into());

        let mut grid: Vec<Vec<String>> = vec![header];
        for row in &self.trace {
            let column: Vec<String> = row.column.iter().map(|b| b.to_string()).collect();
            let mut cells = vec![
                row.iteration.to_string(),
                column.join(","),
                round_noise(row.error),
                round_noise(row.correction),
            ];
            for (i, w) in row.updated_unit.weights().iter().enumerate() {
                if row.touched_weights.contains(&i) {
                    cells.push(round_noise(*w));
                } else {
                    cells.push("--".into());
                }
            }
            cells.push(round_noise(row.updated_unit.threshold()));
            grid.push(cells);
        }

        let cols = grid[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &grid {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unit::bits;

    fn fig9_table() -> TruthTable {
        // Targets 1,1,0,0 for rows 00,01,10,11.
        TruthTable::from_outputs(2, &bits(&[1, 1, 0, 0])).unwrap()
    }

    fn fig9_init() -> ThresholdUnit {
        ThresholdUnit::new(vec![0.2, -0.5], 0.1).unwrap()
    }

    #[test]
    fn error_measures_violation_distance() {
        let unit = fig9_init();
        assert_eq!(delta_error(&unit, &bits(&[0, 0]), Bit::ONE).unwrap(), 0.1);

        let after_first = ThresholdUnit::new(vec![0.2, -0.5], 0.0).unwrap();
        assert_eq!(
            delta_error(&after_first, &bits(&[0, 1]), Bit::ONE).unwrap(),
            0.5
        );

        let satisfied = ThresholdUnit::new(vec![0.7, 0.7], 0.5).unwrap();
        assert_eq!(
            delta_error(&satisfied, &bits(&[1, 1]), Bit::ONE).unwrap(),
            0.0
        );
    }

    #[test]
    fn update_moves_only_active_entries() {
        // Only the threshold is active on the all-zero column.
        let updated = delta_update(&fig9_init(), &bits(&[0, 0]), Bit::ONE, 0.1).unwrap();
        assert_eq!(updated.weights(), &[0.2, -0.5]);
        assert!((updated.threshold() - 0.0).abs() < 1e-15);

        // Target-0 update subtracts from active weights and adds to t.
        let state = ThresholdUnit::new(vec![0.2, -0.2], -0.3).unwrap();
        let updated = delta_update(&state, &bits(&[1, 1]), Bit::ZERO, 0.2).unwrap();
        assert!((updated.weights()[0] - 0.0).abs() < 1e-15);
        assert!((updated.weights()[1] - -0.4).abs() < 1e-15);
        assert!((updated.threshold() - -0.1).abs() < 1e-15);
    }

    #[test]
    fn zero_correction_changes_nothing() {
        let unit = fig9_init();
        let updated = delta_update(&unit, &bits(&[1, 0]), Bit::ONE, 0.0).unwrap();
        assert_eq!(updated, unit);
    }

    #[test]
    fn negative_correction_is_rejected() {
        assert!(matches!(
            delta_update(&fig9_init(), &bits(&[0, 0]), Bit::ONE, -0.1),
            Err(Error::NegativeCorrection(_))
        ));
    }

    #[test]
    fn gray_sequence_flips_one_bit_per_step() {
        let cols = gray_columns(2);
        assert_eq!(
            cols,
            vec![bits(&[0, 0]), bits(&[0, 1]), bits(&[1, 1]), bits(&[1, 0])]
        );
        for n in 1..=4 {
            let cols = gray_columns(n);
            assert_eq!(cols.len(), 1 << n);
            for k in 0..cols.len() {
                let next = &cols[(k + 1) % cols.len()];
                let flips = cols[k]
                    .iter()
                    .zip(next)
                    .filter(|(a, b)| a != b)
                    .count();
                assert_eq!(flips, 1, "gray step {k} flips {flips} bits at n={n}");
            }
        }
    }

    #[test]
    fn converges_in_seven_updates_on_the_worked_example() {
        let result = delta_train(&fig9_table(), &fig9_init(), &DeltaConfig::default()).unwrap();
        assert_eq!(result.status, DeltaStatus::Converged);
        assert_eq!(result.trace.len(), 7);
        let tol = 1e-12;
        assert!((result.final_unit.weights()[0] - -0.225).abs() < tol);
        assert!((result.final_unit.weights()[1] - -0.0875).abs() < tol);
        assert!((result.final_unit.threshold() - -0.1875).abs() < tol);
    }

    #[test]
    fn xor_hits_the_update_budget() {
        let xor = TruthTable::from_outputs(2, &bits(&[0, 1, 1, 0])).unwrap();
        let result = delta_train(&xor, &fig9_init(), &DeltaConfig::default()).unwrap();
        assert_eq!(result.status, DeltaStatus::MaxUpdatesExceeded);
        assert_eq!(result.trace.len(), 10_000);
    }

    #[test]
    fn already_correct_unit_converges_with_empty_trace() {
        let or = TruthTable::from_outputs(2, &bits(&[0, 1, 1, 1])).unwrap();
        let unit = ThresholdUnit::new(vec![0.7, 0.7], 0.5).unwrap();
        let result = delta_train(&or, &unit, &DeltaConfig::default()).unwrap();
        assert_eq!(result.status, DeltaStatus::Converged);
        assert!(result.trace.is_empty());
        assert_eq!(result.final_unit, unit);
    }

    #[test]
    fn converged_means_zero_error_everywhere() {
        let result = delta_train(&fig9_table(), &fig9_init(), &DeltaConfig::default()).unwrap();
        for (inputs, target) in fig9_table().rows() {
            assert_eq!(
                delta_error(&result.final_unit, inputs, *target).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn training_is_deterministic() {
        let a = delta_train(&fig9_table(), &fig9_init(), &DeltaConfig::default()).unwrap();
        let b = delta_train(&fig9_table(), &fig9_init(), &DeltaConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn file_order_scan_also_converges_on_separable_tables() {
        let config = DeltaConfig {
            scan_order: ScanOrder::FileOrderCyclic,
            ..DeltaConfig::default()
        };
        let result = delta_train(&fig9_table(), &fig9_init(), &config).unwrap();
        assert_eq!(result.status, DeltaStatus::Converged);
        for (inputs, target) in fig9_table().rows() {
            assert_eq!(
                delta_error(&result.final_unit, inputs, *target).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let bad_e = DeltaConfig {
            learning_constant: 0.0,
            ..DeltaConfig::default()
        };
        assert!(matches!(
            delta_train(&fig9_table(), &fig9_init(), &bad_e),
            Err(Error::InvalidConfig(_))
        ));
        let bad_budget = DeltaConfig {
            max_updates: 0,
            ..DeltaConfig::default()
        };
        assert!(matches!(
            delta_train(&fig9_table(), &fig9_init(), &bad_budget),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn trace_csv_lists_state_and_touched_entries() {
        let result = delta_train(&fig9_table(), &fig9_init(), &DeltaConfig::default()).unwrap();
        let csv = result.trace_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "iteration,column,E,d,w1,w2,t,touched");
        assert_eq!(lines.next().unwrap(), "1,00,0.1,0.1,0.2,-0.5,0,t");
        assert_eq!(lines.next().unwrap(), "2,01,0.5,0.3,0.2,-0.2,-0.3,w2;t");
    }

    #[test]
    fn trace_table_marks_untouched_entries() {
        let result = delta_train(&fig9_table(), &fig9_init(), &DeltaConfig::default()).unwrap();
        let table = result.trace_table();
        let row1 = table.lines().nth(1).unwrap();
        assert!(row1.contains("--"), "untouched weights render as --: {row1}");
        assert!(row1.contains("0,0"));
    }
}
