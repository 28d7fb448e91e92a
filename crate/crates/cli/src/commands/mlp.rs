use std::fmt::Write as _;

use anyhow::{bail, Context};
use tlu_core::mlp::{io, Activation, Dataset, Mlp, TrainConfig, TrainStatus};

use crate::data::parse_numeric_csv;
use crate::{MlpEvalArgs, MlpTrainArgs, EXIT_OK};

pub fn train(args: &MlpTrainArgs) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(&args.data)
        .with_context(|| format!("reading {}", args.data.display()))?;
    let data = parse_numeric_csv(&text)?;
    if data.target_names.is_empty() {
        bail!("training data has no target columns (every header name starts with 'x')");
    }

    if args.arch.len() < 2 {
        bail!("--arch needs at least an input and an output size");
    }
    if args.arch[0] != data.inputs[0].len() {
        bail!(
            "--arch starts with {} inputs but the data has {}",
            args.arch[0],
            data.inputs[0].len()
        );
    }
    let out_dim = *args.arch.last().unwrap();
    if out_dim != data.targets[0].len() {
        bail!(
            "--arch ends with {} outputs but the data has {} target column(s)",
            out_dim,
            data.targets[0].len()
        );
    }
    let activations: Vec<Activation> = args
        .act
        .iter()
        .map(|name| {
            Activation::parse(name)
                .with_context(|| format!("unknown activation {name:?} (tanh|logistic|identity)"))
        })
        .collect::<anyhow::Result<_>>()?;
    if activations.len() != args.arch.len() - 1 {
        bail!(
            "--act names {} activations but --arch has {} trained layers",
            activations.len(),
            args.arch.len() - 1
        );
    }

    let dataset = Dataset::new(data.inputs, data.targets)?;
    let mut mlp = Mlp::init(&args.arch, &activations, args.seed, args.init_scale)?;
    let config = TrainConfig {
        learning_rate: args.lr,
        max_epochs: args.epochs,
        target_loss: args.target_loss,
        seed: args.seed,
        init_scale: args.init_scale,
    };
    let report = mlp.train_gd(&dataset, &config)?;

    std::fs::write(&args.model, io::write_model(&mlp))
        .with_context(|| format!("writing {}", args.model.display()))?;
    let mut history = String::from("epoch,loss\n");
    for (epoch, loss) in report.loss_history.iter().enumerate() {
        let _ = writeln!(history, "{epoch},{loss}");
    }
    std::fs::write(&args.loss_history, history)
        .with_context(|| format!("writing {}", args.loss_history.display()))?;

    let status = match report.status {
        TrainStatus::ReachedTargetLoss => "reached-target-loss",
        TrainStatus::MaxEpochs => "max-epochs",
        TrainStatus::Diverged => "diverged",
    };
    println!(
        "trained: epochs={} final_loss={} status={status}",
        report.epochs_run, report.final_loss
    );
    println!("wrote model to {}", args.model.display());
    println!("wrote loss history to {}", args.loss_history.display());
    Ok(EXIT_OK)
}

pub fn eval(args: &MlpEvalArgs) -> anyhow::Result<u8> {
    let model_text = std::fs::read_to_string(&args.model)
        .with_context(|| format!("reading {}", args.model.display()))?;
    let mlp = io::read_model(&model_text)?;

    let text = std::fs::read_to_string(&args.data)
        .with_context(|| format!("reading {}", args.data.display()))?;
    let data = parse_numeric_csv(&text)?;
    if data.inputs[0].len() != mlp.input_dim() {
        bail!(
            "model expects {} inputs but the data has {}",
            mlp.input_dim(),
            data.inputs[0].len()
        );
    }

    for input in &data.inputs {
        let outputs = mlp.predict(input)?;
        let rendered: Vec<String> = outputs.iter().map(f64::to_string).collect();
        println!("{}", rendered.join(" "));
    }
    Ok(EXIT_OK)
}
