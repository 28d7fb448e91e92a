use anyhow::{bail, Context};
use tlu_core::separability::InequalitySystem;
use tlu_core::table::TruthTable;
use tlu_core::unit::ThresholdUnit;

use crate::plot::{MeshSpec3D, PlotSpec2D};
use crate::{PlotArgs, EXIT_OK};

pub fn run(args: &PlotArgs) -> anyhow::Result<u8> {
    let table = super::load_table(&args.table)?;
    let n = table.n_inputs();
    if n != 2 && n != 3 {
        bail!("plotting supports 2 or 3 inputs, the table has {n}");
    }

    let unit = resolve_unit(&table, args)?;
    let content = match n {
        2 => PlotSpec2D::from_table(&table, unit.as_ref())?.to_svg(),
        _ => MeshSpec3D::from_table(&table, unit.as_ref(), args.grid_steps)?.to_csv(),
    };
    std::fs::write(&args.out, content)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {}", args.out.display());
    Ok(EXIT_OK)
}

/// The flag unit when given, otherwise the decided witness; separability
/// failures just mean there is no boundary to draw.
fn resolve_unit(table: &TruthTable, args: &PlotArgs) -> anyhow::Result<Option<ThresholdUnit>> {
    let n = table.n_inputs();
    if let Some(values) = &args.unit {
        if values.len() != n + 1 {
            bail!(
                "--unit needs {} values (w1..w{n},t), got {}",
                n + 1,
                values.len()
            );
        }
        let (weights, t) = values.split_at(n);
        return Ok(Some(ThresholdUnit::new(weights.to_vec(), t[0])?));
    }
    let decision = InequalitySystem::from_table(table).decide()?;
    Ok(decision.witness().cloned())
}
