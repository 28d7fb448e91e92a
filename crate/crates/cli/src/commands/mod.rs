pub mod classify;
pub mod delta;
pub mod mlp;
pub mod plot;
pub mod separability;

use std::path::Path;

use anyhow::Context;
use tlu_core::table::TruthTable;

pub(crate) fn load_table(path: &Path) -> anyhow::Result<TruthTable> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    TruthTable::parse_csv(&text).with_context(|| format!("parsing {}", path.display()))
}
