use anyhow::Context;
use tlu_core::imageio::{classify, Bitmap16, ClassDecision, EncodingScheme, RejectReason};
use tlu_core::mlp::io;

use crate::{ClassifyArgs, EncodingArg, EXIT_NEGATIVE, EXIT_OK};

pub fn run(args: &ClassifyArgs) -> anyhow::Result<u8> {
    let model_text = std::fs::read_to_string(&args.model)
        .with_context(|| format!("reading {}", args.model.display()))?;
    let mlp = io::read_model(&model_text)?;

    let image_bytes = std::fs::read(&args.image)
        .with_context(|| format!("reading {}", args.image.display()))?;
    let bitmap = Bitmap16::parse_pbm(&image_bytes)
        .with_context(|| format!("parsing {}", args.image.display()))?;

    let labels_text = std::fs::read_to_string(&args.labels)
        .with_context(|| format!("reading {}", args.labels.display()))?;
    let labels: Vec<String> = labels_text.lines().map(|l| l.trim().to_string()).collect();

    let scheme = match args.encoding {
        EncodingArg::Flat256 => EncodingScheme::Flat256,
        EncodingArg::Rowword16 => EncodingScheme::RowWord16,
    };

    match classify(&mlp, &bitmap, scheme, &labels, args.threshold)? {
        ClassDecision::Accepted { class, score } => {
            println!("accepted {} {}", labels[class], score);
            Ok(EXIT_OK)
        }
        ClassDecision::Rejected(RejectReason::NoneAboveThreshold) => {
            println!("rejected none-above-threshold");
            Ok(EXIT_NEGATIVE)
        }
        ClassDecision::Rejected(RejectReason::Ambiguous(candidates)) => {
            let rendered: Vec<String> = candidates
                .iter()
                .map(|(class, score)| format!("{} {}", labels[*class], score))
                .collect();
            println!("rejected ambiguous {}", rendered.join(" "));
            Ok(EXIT_NEGATIVE)
        }
    }
}
