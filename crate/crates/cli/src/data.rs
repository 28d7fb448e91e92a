//! Numeric dataset CSV shared by the `mlp` subcommands.
//!
//! The header decides column roles: names starting with `x` are inputs, all
//! other columns are targets. A truth-table CSV (`x1,x2,f`) therefore parses
//! directly as a one-target dataset.

use anyhow::{bail, Context};

#[derive(Debug)]
pub struct NumericData {
    pub inputs: Vec<Vec<f64>>,
    pub targets: Vec<Vec<f64>>,
    pub input_names: Vec<String>,
    pub target_names: Vec<String>,
}

pub fn parse_numeric_csv(text: &str) -> anyhow::Result<NumericData> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (_, header) = lines.next().context("empty data file")?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let mut input_cols = Vec::new();
    let mut target_cols = Vec::new();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            bail!("line 1: empty column name in header {header:?}");
        }
        if name.starts_with('x') {
            input_cols.push(i);
        } else {
            target_cols.push(i);
        }
    }
    if input_cols.is_empty() {
        bail!("line 1: no input columns (names starting with 'x') in header {header:?}");
    }

    let mut inputs = Vec::new();
    let mut targets = Vec::new();
    for (line_no, line) in lines {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != names.len() {
            bail!(
                "line {line_no}: expected {} cells, got {}",
                names.len(),
                cells.len()
            );
        }
        let parse = |col: usize| -> anyhow::Result<f64> {
            cells[col]
                .parse::<f64>()
                .with_context(|| format!("line {line_no}: bad number {:?}", cells[col]))
        };
        inputs.push(input_cols.iter().map(|&c| parse(c)).collect::<anyhow::Result<_>>()?);
        targets.push(target_cols.iter().map(|&c| parse(c)).collect::<anyhow::Result<_>>()?);
    }
    if inputs.is_empty() {
        bail!("data file has a header but no rows");
    }

    Ok(NumericData {
        inputs,
        targets,
        input_names: input_cols.iter().map(|&c| names[c].to_string()).collect(),
        target_names: target_cols.iter().map(|&c| names[c].to_string()).collect(),
    })
}
