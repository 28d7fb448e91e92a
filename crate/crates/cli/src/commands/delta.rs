use anyhow::{bail, Context};
use tlu_core::delta::{delta_train, DeltaConfig, DeltaStatus, ScanOrder};
use tlu_core::rng::XorShift64Star;
use tlu_core::unit::ThresholdUnit;

use crate::{DeltaArgs, OrderArg, EXIT_NO_CONVERGENCE, EXIT_OK};

pub fn run(args: &DeltaArgs) -> anyhow::Result<u8> {
    let table = super::load_table(&args.table)?;
    let n = table.n_inputs();

    let init = match (&args.w, args.t) {
        (Some(w), Some(t)) => {
            if w.len() != n {
                bail!("--w has {} weights but the table has {n} inputs", w.len());
            }
            ThresholdUnit::new(w.clone(), t)?
        }
        _ => {
            let mut rng = XorShift64Star::new(args.seed);
            let weights = (0..n).map(|_| rng.next_symmetric(1.0)).collect();
            ThresholdUnit::new(weights, rng.next_symmetric(1.0))?
        }
    };

    let config = DeltaConfig {
        learning_constant: args.e,
        max_updates: args.max_updates,
        scan_order: match args.order {
            OrderArg::Gray => ScanOrder::GrayCyclic,
            OrderArg::File => ScanOrder::FileOrderCyclic,
        },
        zero_error_epsilon: 0.0,
    };

    println!("initial: {}", init.display_rounded());
    let result = delta_train(&table, &init, &config)?;
    if !result.trace.is_empty() {
        print!("{}", result.trace_table());
    }
    println!("final: {}", result.final_unit.display_rounded());

    if let Some(path) = &args.trace {
        std::fs::write(path, result.trace_csv())
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote trace to {}", path.display());
    }

    match result.status {
        DeltaStatus::Converged => {
            println!("converged after {} updates", result.trace.len());
            // The rule treats boundary hits (sum == t) as satisfied; the
            // strict firing rule does not, so say so when they remain.
            let leftovers = result.final_unit.mismatches(&table)?;
            if !leftovers.is_empty() {
                println!(
                    "note: {} row(s) sit exactly on the boundary and still misclassify \
                     under the strict firing rule: {:?}",
                    leftovers.len(),
                    leftovers
                );
            }
            Ok(EXIT_OK)
        }
        DeltaStatus::MaxUpdatesExceeded => {
            println!(
                "stopped after {} updates without converging",
                result.trace.len()
            );
            Ok(EXIT_NO_CONVERGENCE)
        }
    }
}
