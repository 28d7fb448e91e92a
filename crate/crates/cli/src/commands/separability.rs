use std::path::Path;

use tlu_core::separability::{normalize_witness, Feasibility, InequalitySystem};

use crate::{EXIT_NEGATIVE, EXIT_OK};

pub fn run(table_path: &Path) -> anyhow::Result<u8> {
    let table = super::load_table(table_path)?;
    let system = InequalitySystem::from_table(&table);
    match system.decide()? {
        Feasibility::Feasible(witness) => {
            let witness = normalize_witness(&witness)?;
            println!("feasible");
            println!("{witness}");
            Ok(EXIT_OK)
        }
        Feasibility::Infeasible(cert) => {
            println!("infeasible");
            let rendered: Vec<String> = cert
                .constraint_indices
                .iter()
                .map(|&i| system.constraints()[i].to_string())
                .collect();
            println!("certificate: {}", rendered.join(", "));
            Ok(EXIT_NEGATIVE)
        }
    }
}
