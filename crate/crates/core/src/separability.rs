//! Deciding whether a truth table is realizable by one threshold unit.
//!
//! Each table row becomes one strict inequality over the unknowns
//! `(w_1..w_n, t)`: a row with target 1 demands `Σ x_i w_i − t > 0`, a row
//! with target 0 demands `t − Σ x_i w_i > 0`. The whole system is homogeneous,
//! so strict feasibility is equivalent to feasibility of the margin-1 system
//! (every `> 0` replaced by `≥ 1`): any strict solution scales up to margin 1,
//! and a margin-1 solution is already strict. That reduction is what makes
//! Fourier–Motzkin elimination applicable without epsilon guessing, and the
//! elimination itself runs in exact rational arithmetic.
//!
//! The answer is a certificate either way: a witness unit that strictly
//! satisfies every constraint, or the set of original constraint indices
//! whose positive combination collapses to an impossible `0 ≥ margin`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::table::TruthTable;
use crate::unit::ThresholdUnit;

/// Upper bound on unknowns (weights plus threshold) accepted by `decide`.
///
/// Elimination doubles constraint counts in the worst case; nine unknowns
/// covers every table within [`crate::table::MAX_INPUTS`].
pub const MAX_ELIMINATION_VARS: usize = 9;

/// One strict inequality `coeffs · (w_1..w_n, t) > 0`.
///
/// The threshold coefficient sits last. Constraints built from truth tables
/// only ever use coefficients in `{-1, 0, +1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    coeffs: Vec<f64>,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Strict evaluation at a concrete assignment.
    pub fn holds_at(&self, values: &[f64]) -> bool {
        let dot: f64 = self.coeffs.iter().zip(values).map(|(c, v)| c * v).sum();
        dot > 0.0
    }
}

impl fmt::Display for Constraint {
    /// Table-derived constraints render in threshold notation (`w1+w2>t`,
    /// `0<t`); anything else falls back to an explicit linear form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ws, t) = self.coeffs.split_at(self.coeffs.len() - 1);
        let t = t[0];
        let side = if t == -1.0 && ws.iter().all(|&w| w == 0.0 || w == 1.0) {
            Some((1.0, '>'))
        } else if t == 1.0 && ws.iter().all(|&w| w == 0.0 || w == -1.0) {
            Some((-1.0, '<'))
        } else {
            None
        };
        match side {
            Some((sign, rel)) => {
                let terms: Vec<String> = ws
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| w == sign)
                    .map(|(i, _)| format!("w{}", i + 1))
                    .collect();
                let lhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                };
                write!(f, "{lhs}{rel}t")
            }
            None => {
                let mut first = true;
                for (i, &c) in self.coeffs.iter().enumerate() {
                    if c == 0.0 {
                        continue;
                    }
                    let name = if i + 1 == self.coeffs.len() {
                        "t".to_string()
                    } else {
                        format!("w{}", i + 1)
                    };
                    if first {
                        write!(f, "{c}*{name}")?;
                        first = false;
                    } else if c < 0.0 {
                        write!(f, "-{}*{name}", -c)?;
                    } else {
                        write!(f, "+{c}*{name}")?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                write!(f, ">0")
            }
        }
    }
}

/// The strict homogeneous system derived from a truth table: one constraint
/// per row over `n_inputs + 1` unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalitySystem {
    n_vars: usize,
    constraints: Vec<Constraint>,
}

impl InequalitySystem {
    /// One constraint per table row, in row order.
    pub fn from_table(table: &TruthTable) -> Self {
        let n = table.n_inputs();
        let constraints = table
            .rows()
            .iter()
            .map(|(inputs, target)| {
                let sign = if target.is_set() { 1.0 } else { -1.0 };
                let mut coeffs: Vec<f64> =
                    inputs.iter().map(|b| sign * b.as_f64()).collect();
                coeffs.push(-sign);
                Constraint::new(coeffs)
            })
            .collect();
        Self {
            n_vars: n + 1,
            constraints,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// The subsystem consisting of the given constraint indices.
    pub fn subsystem(&self, indices: &[usize]) -> Result<InequalitySystem> {
        let mut constraints = Vec::with_capacity(indices.len());
        for &i in indices {
            let c = self.constraints.get(i).ok_or(Error::ConstraintIndex {
                index: i,
                len: self.constraints.len(),
            })?;
            constraints.push(c.clone());
        }
        Ok(InequalitySystem {
            n_vars: self.n_vars,
            constraints,
        })
    }

    /// Strict satisfaction of the whole system by a unit.
    pub fn holds_for(&self, unit: &ThresholdUnit) -> Result<bool> {
        if unit.n_inputs() + 1 != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars - 1,
                actual: unit.n_inputs(),
            });
        }
        let mut values = unit.weights().to_vec();
        values.push(unit.threshold());
        Ok(self.constraints.iter().all(|c| c.holds_at(&values)))
    }

    /// Decide strict feasibility by Fourier–Motzkin elimination on the
    /// margin-1 system, eliminating the threshold last.
    pub fn decide(&self) -> Result<Feasibility> {
        if self.n_vars > MAX_ELIMINATION_VARS {
            return Err(Error::CapacityExceeded {
                n_vars: self.n_vars,
                max: MAX_ELIMINATION_VARS,
            });
        }

        let mut rows: Vec<WorkRow> = Vec::with_capacity(self.constraints.len());
        for (i, c) in self.constraints.iter().enumerate() {
            let coeffs = c
                .coeffs
                .iter()
                .map(|&v| BigRational::from_float(v).ok_or(Error::NonFinite))
                .collect::<Result<Vec<_>>>()?;
            rows.push(WorkRow {
                coeffs,
                rhs: BigRational::one(),
                ancestors: BTreeSet::from([i]),
            });
        }

        // The threshold appears in every table constraint; eliminating it
        // first maximizes cross products, so it goes last.
        let mut stages: Vec<Vec<WorkRow>> = Vec::with_capacity(self.n_vars);
        for var in 0..self.n_vars {
            stages.push(rows.clone());
            match eliminate(rows, var) {
                Step::Reduced(next) => rows = next,
                Step::Contradiction(ancestors) => {
                    return Ok(Feasibility::Infeasible(Certificate {
                        constraint_indices: ancestors.into_iter().collect(),
                    }))
                }
            }
        }
        debug_assert!(rows.is_empty(), "feasible elimination leaves no rows");

        let values = back_substitute(&stages);
        let mut weights: Vec<f64> = values[..self.n_vars - 1]
            .iter()
            .map(rational_to_f64)
            .collect();
        let threshold = rational_to_f64(&values[self.n_vars - 1]);
        let unit = ThresholdUnit::new(std::mem::take(&mut weights), threshold)?;
        Ok(Feasibility::Feasible(normalize_witness(&unit)?))
    }
}

/// Outcome of [`InequalitySystem::decide`].
#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    /// The table is linearly separable; the witness strictly satisfies every
    /// constraint and is normalized into `[-1, +1]`.
    Feasible(ThresholdUnit),
    /// No unit realizes the table.
    Infeasible(Certificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&ThresholdUnit> {
        match self {
            Feasibility::Feasible(unit) => Some(unit),
            Feasibility::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Feasibility::Feasible(_) => None,
            Feasibility::Infeasible(cert) => Some(cert),
        }
    }
}

/// Indices of the original constraints whose positive combination derives the
/// contradiction `0 ≥ margin`. Re-running `decide` on exactly this subsystem
/// reproduces infeasibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub constraint_indices: Vec<usize>,
}

/// True iff the unit strictly satisfies every row of the table: the weighted
/// sum strictly exceeds `t` on target-1 rows and stays strictly below `t` on
/// target-0 rows. Boundary hits fail in both directions.
pub fn verify_witness(unit: &ThresholdUnit, table: &TruthTable) -> Result<bool> {
    if unit.n_inputs() != table.n_inputs() {
        return Err(Error::DimensionMismatch {
            expected: table.n_inputs(),
            actual: unit.n_inputs(),
        });
    }
    for (inputs, target) in table.rows() {
        let sum = unit.weighted_sum(inputs)?;
        let ok = if target.is_set() {
            sum > unit.threshold()
        } else {
            sum < unit.threshold()
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scale a unit down so every coefficient lies in `[-1, +1]`.
///
/// Units already inside the range are returned unchanged; otherwise every
/// component is divided by `max(|w_i|, |t|)`. Positive scaling never changes
/// classification behavior.
pub fn normalize_witness(unit: &ThresholdUnit) -> Result<ThresholdUnit> {
    let max = unit
        .weights()
        .iter()
        .chain(std::iter::once(&unit.threshold()))
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return Err(Error::DegenerateUnit);
    }
    if max <= 1.0 {
        return Ok(unit.clone());
    }
    ThresholdUnit::new(
        unit.weights().iter().map(|w| w / max).collect(),
        unit.threshold() / max,
    )
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin machinery over exact rationals.

#[derive(Debug, Clone)]
struct WorkRow {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
    ancestors: BTreeSet<usize>,
}

enum Step {
    Reduced(Vec<WorkRow>),
    Contradiction(BTreeSet<usize>),
}

/// Remove one variable from `Σ coeffs_j v_j ≥ rhs` rows.
///
/// Rows where the variable appears positively are lower bounds on it, rows
/// where it appears negatively are upper bounds; every lower/upper pair
/// combines into a row without the variable. One-sided rows vanish (the
/// variable absorbs them). A row left with no variables at all is either
/// trivially true (`0 ≥ rhs ≤ 0`, dropped) or the contradiction we report.
fn eliminate(rows: Vec<WorkRow>, var: usize) -> Step {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut carry = Vec::new();
    for row in rows {
        match row.coeffs[var].is_positive() {
            true => pos.push(row),
            false if row.coeffs[var].is_negative() => neg.push(row),
            false => carry.push(row),
        }
    }

    let mut out = Vec::with_capacity(carry.len() + pos.len() * neg.len());
    out.extend(carry);
    for p in &pos {
        for n in &neg {
            let scale_p = -n.coeffs[var].clone(); // positive
            let scale_n = p.coeffs[var].clone(); // positive
            let coeffs: Vec<BigRational> = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(cp, cn)| cp * &scale_p + cn * &scale_n)
                .collect();
            debug_assert!(coeffs[var].is_zero());
            let rhs = &p.rhs * &scale_p + &n.rhs * &scale_n;
            let ancestors: BTreeSet<usize> =
                p.ancestors.union(&n.ancestors).copied().collect();
            out.push(WorkRow {
                coeffs,
                rhs,
                ancestors,
            });
        }
    }

    let mut kept = Vec::with_capacity(out.len());
    for row in out {
        if row.coeffs.iter().all(Zero::is_zero) {
            if row.rhs.is_positive() {
                return Step::Contradiction(row.ancestors);
            }
            continue;
        }
        kept.push(row);
    }
    Step::Reduced(prune(kept))
}

/// Canonicalize each row's scale and drop coefficient-wise duplicates,
/// keeping only the strongest right-hand side per direction.
fn prune(rows: Vec<WorkRow>) -> Vec<WorkRow> {
    let mut canon: Vec<WorkRow> = Vec::with_capacity(rows.len());
    let mut index: HashMap<Vec<BigRational>, usize> = HashMap::new();
    for mut row in rows {
        let max = row
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("pruned rows have a nonzero coefficient");
        debug_assert!(max.is_positive());
        for c in &mut row.coeffs {
            *c /= &max;
        }
        row.rhs /= &max;
        match index.get(&row.coeffs) {
            Some(&at) => {
                if row.rhs > canon[at].rhs {
                    canon[at] = row;
                }
            }
            None => {
                index.insert(row.coeffs.clone(), canon.len());
                canon.push(row);
            }
        }
    }
    canon
}

/// Walk the elimination stages backwards, fixing one variable per stage.
///
/// At the stage recorded before eliminating `var`, every row only involves
/// `var` and later variables; the later ones already carry values, so each
/// row is a one-sided bound on `var`. Rows not mentioning `var` are exactly
/// the rows that survived into later stages and are already satisfied.
fn back_substitute(stages: &[Vec<WorkRow>]) -> Vec<BigRational> {
    let n_vars = stages.len();
    let mut values = vec![BigRational::zero(); n_vars];
    for var in (0..n_vars).rev() {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for row in &stages[var] {
            let a = &row.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let mut rest = row.rhs.clone();
            for j in var + 1..n_vars {
                rest -= &row.coeffs[j] * &values[j];
            }
            let bound = rest / a;
            if a.is_positive() {
                lower = Some(match lower {
                    Some(l) => l.max(bound),
                    None => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(u) => u.min(bound),
                    None => bound,
                });
            }
        }
        values[var] = match (lower, upper) {
            (Some(l), Some(u)) => {
                debug_assert!(l <= u, "back-substitution hit an empty interval");
                (l + u) / BigRational::from_integer(2.into())
            }
            (Some(l), None) => l + BigRational::one(),
            (None, Some(u)) => u - BigRational::one(),
            (None, None) => BigRational::zero(),
        };
    }
    values
}

fn rational_to_f64(value: &BigRational) -> f64 {
    use num::ToPrimitive;
    value.to_f64().expect("witness components fit in f64")
}
