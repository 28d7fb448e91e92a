//! The `mlpv1` model file: a versioned plain-text format.
//!
//! Layout:
//!
//! ```text
//! mlpv1
//! 2 3 1                  # layer sizes, input first
//! tanh identity          # one activation per non-input layer
//! <w11> <w12>            # per layer: out_dim weight rows (row-major), ...
//! ...
//! <b1> <b2> <b3>         # ...then its bias vector
//! ...
//! ```
//!
//! Values are written with Rust's shortest round-trip decimal rendering, so
//! read(write(m)) reproduces the model bit-for-bit at double precision.

use crate::error::{Error, Result};
use super::{Activation, Layer, Mlp};

pub const MAGIC: &str = "mlpv1";

pub fn write_model(mlp: &Mlp) -> String {
    let mut out = String::from(MAGIC);
    out.push('\n');
    let sizes: Vec<String> = mlp.layer_sizes().iter().map(usize::to_string).collect();
    out.push_str(&sizes.join(" "));
    out.push('\n');
    let acts: Vec<&str> = mlp.layers().iter().map(|l| l.activation().name()).collect();
    out.push_str(&acts.join(" "));
    out.push('\n');
    for layer in mlp.layers() {
        for row in layer.weights() {
            out.push_str(&join_f64(row));
            out.push('\n');
        }
        out.push_str(&join_f64(layer.biases()));
        out.push('\n');
    }
    out
}

pub fn read_model(text: &str) -> Result<Mlp> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut next_line = |what: &str| {
        lines
            .next()
            .filter(|(_, l)| !l.is_empty())
            .ok_or_else(|| Error::ModelFormat {
                line: 0,
                msg: format!("unexpected end of file, expected {what}"),
            })
    };

    let (line, magic) = next_line("the mlpv1 header")?;
    if magic != MAGIC {
        return Err(Error::ModelFormat {
            line,
            msg: format!("bad header {magic:?}, expected {MAGIC:?}"),
        });
    }

    let (line, sizes_text) = next_line("layer sizes")?;
    let sizes = parse_fields::<usize>(sizes_text, line, "layer size")?;
    if sizes.len() < 2 {
        return Err(Error::ModelFormat {
            line,
            msg: "need at least an input and an output layer".into(),
        });
    }
    if sizes.iter().any(|&s| s == 0) {
        return Err(Error::ModelFormat {
            line,
            msg: "layer sizes must be positive".into(),
        });
    }

    let (line, acts_text) = next_line("activation names")?;
    let mut activations = Vec::new();
    for name in acts_text.split_whitespace() {
        let act = Activation::parse(name).ok_or_else(|| Error::ModelFormat {
            line,
            msg: format!("unknown activation {name:?}"),
        })?;
        activations.push(act);
    }
    if activations.len() != sizes.len() - 1 {
        return Err(Error::ModelFormat {
            line,
            msg: format!(
                "expected {} activations, got {}",
                sizes.len() - 1,
                activations.len()
            ),
        });
    }

    let mut layers = Vec::with_capacity(activations.len());
    for (ell, &activation) in activations.iter().enumerate() {
        let in_dim = sizes[ell];
        let out_dim = sizes[ell + 1];
        let mut weights = Vec::with_capacity(out_dim);
        for _ in 0..out_dim {
            let (line, row_text) = next_line("a weight row")?;
            let row = parse_fields::<f64>(row_text, line, "weight")?;
            if row.len() != in_dim {
                return Err(Error::ModelFormat {
                    line,
                    msg: format!("expected {in_dim} weights, got {}", row.len()),
                });
            }
            weights.push(row);
        }
        let (line, bias_text) = next_line("a bias row")?;
        let biases = parse_fields::<f64>(bias_text, line, "bias")?;
        if biases.len() != out_dim {
            return Err(Error::ModelFormat {
                line,
                msg: format!("expected {out_dim} biases, got {}", biases.len()),
            });
        }
        layers.push(Layer::new(weights, biases, activation).map_err(|e| {
            Error::ModelFormat {
                line,
                msg: e.to_string(),
            }
        })?);
    }

    if let Some((line, extra)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(Error::ModelFormat {
            line,
            msg: format!("unexpected trailing content {extra:?}"),
        });
    }
    Mlp::from_layers(layers)
}

fn join_f64(values: &[f64]) -> String {
    values
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_fields<T: std::str::FromStr>(text: &str, line: usize, what: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<T>().map_err(|_| Error::ModelFormat {
                line,
                msg: format!("bad {what} {tok:?}"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64Star;

    #[test]
    fn round_trip_is_bit_exact() {
        let mut rng = XorShift64Star::new(77);
        for trial in 0..50 {
            let hidden = 1 + (rng.next_u64() % 5) as usize;
            let out = 1 + (rng.next_u64() % 3) as usize;
            let mlp = Mlp::init(
                &[3, hidden, out],
                &[Activation::HyperbolicTangent, Activation::LogisticSigmoid],
                rng.next_u64(),
                1.25,
            )
            .unwrap();
            let text = write_model(&mlp);
            let back = read_model(&text).unwrap();
            assert_eq!(back, mlp, "round trip changed the model in trial {trial}");
            // Exact equality of every f64 is the contract.
            assert_eq!(write_model(&back), text);
        }
    }

    #[test]
    fn header_and_shape_errors_carry_line_numbers() {
        assert!(matches!(
            read_model("nope\n"),
            Err(Error::ModelFormat { line: 1, .. })
        ));
        assert!(matches!(
            read_model("mlpv1\n2 1\nsoftmax\n0 0\n0\n"),
            Err(Error::ModelFormat { line: 3, .. })
        ));
        assert!(matches!(
            read_model("mlpv1\n2 1\nidentity\n0 0 0\n0\n"),
            Err(Error::ModelFormat { line: 4, .. })
        ));
        assert!(matches!(
            read_model("mlpv1\n2 1\nidentity\n0 0\n0\nextra\n"),
            Err(Error::ModelFormat { line: 6, .. })
        ));
    }

    #[test]
    fn truncated_files_are_rejected() {
        assert!(matches!(
            read_model("mlpv1\n2 3 1\ntanh identity\n0.5 0.5\n"),
            Err(Error::ModelFormat { .. })
        ));
    }

    #[test]
    fn negative_zero_survives_the_round_trip() {
        let layer = Layer::new(vec![vec![-0.0, 1.5e-300]], vec![0.1], Activation::Identity)
            .unwrap();
        let mlp = Mlp::from_layers(vec![layer]).unwrap();
        let back = read_model(&write_model(&mlp)).unwrap();
        assert_eq!(back.layers()[0].weights()[0][0].to_bits(), (-0.0f64).to_bits());
        assert_eq!(back.layers()[0].weights()[0][1], 1.5e-300);
    }
}
