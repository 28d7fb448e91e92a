//! 16×16 monochrome bitmaps: ASCII PBM parsing, network input encodings, and
//! the thresholded classification rule.

use crate::error::{Error, Result};
use crate::mlp::Mlp;

pub const SIDE: usize = 16;
pub const PIXELS: usize = SIDE * SIDE;

/// A 16×16 bit image. Each row is one 16-bit word with the leftmost pixel in
/// the most significant bit; a set bit is ink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bitmap16 {
    rows: [u16; SIDE],
}

impl Bitmap16 {
    pub const BLANK: Bitmap16 = Bitmap16 { rows: [0; SIDE] };

    pub fn from_rows(rows: [u16; SIDE]) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[u16; SIDE] {
        &self.rows
    }

    pub fn pixel(&self, row: usize, col: usize) -> bool {
        (self.rows[row] >> (SIDE - 1 - col)) & 1 == 1
    }

    pub fn set_pixel(&mut self, row: usize, col: usize, ink: bool) {
        let mask = 1u16 << (SIDE - 1 - col);
        if ink {
            self.rows[row] |= mask;
        } else {
            self.rows[row] &= !mask;
        }
    }

    /// Parse an ASCII portable bitmap: magic `P1`, dimensions `16 16`,
    /// then 256 binary digits. `#` comments are allowed anywhere.
    pub fn parse_pbm(bytes: &[u8]) -> Result<Bitmap16> {
        let text = std::str::from_utf8(bytes)
            .map_err(|_| Error::PbmFormat("not ASCII text".into()))?;
        let mut stripped = String::with_capacity(text.len());
        for line in text.lines() {
            let body = match line.find('#') {
                Some(at) => &line[..at],
                None => line,
            };
            stripped.push_str(body);
            stripped.push('\n');
        }

        let mut tokens = stripped.split_whitespace();
        match tokens.next() {
            Some("P1") => {}
            Some(other) => {
                return Err(Error::PbmFormat(format!(
                    "bad magic {other:?}, expected \"P1\""
                )))
            }
            None => return Err(Error::PbmFormat("empty file".into())),
        }
        let mut dim = |name: &str| -> Result<usize> {
            let tok = tokens
                .next()
                .ok_or_else(|| Error::PbmFormat(format!("missing {name}")))?;
            tok.parse()
                .map_err(|_| Error::PbmFormat(format!("bad {name} {tok:?}")))
        };
        let width = dim("width")?;
        let height = dim("height")?;
        if width != SIDE || height != SIDE {
            return Err(Error::PbmFormat(format!(
                "expected dimensions {SIDE} {SIDE}, got {width} {height}"
            )));
        }

        let mut bitmap = Bitmap16::BLANK;
        let mut count = 0usize;
        for token in tokens {
            // P1 allows digits to run together, so each token is a digit run.
            for ch in token.chars() {
                let ink = match ch {
                    '0' => false,
                    '1' => true,
                    _ => {
                        return Err(Error::PbmFormat(format!("non-binary token {token:?}")))
                    }
                };
                if count >= PIXELS {
                    return Err(Error::PbmFormat("more than 256 pixels".into()));
                }
                bitmap.set_pixel(count / SIDE, count % SIDE, ink);
                count += 1;
            }
        }
        if count < PIXELS {
            return Err(Error::PbmFormat(format!(
                "truncated pixel data: got {count} of {PIXELS}"
            )));
        }
        Ok(bitmap)
    }

    /// Render back to ASCII PBM, one 16-digit row per line.
    pub fn to_pbm(&self) -> String {
        let mut out = format!("P1\n{SIDE} {SIDE}\n");
        for row in 0..SIDE {
            for col in 0..SIDE {
                out.push(if self.pixel(row, col) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

/// How a bitmap becomes a network input vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EncodingScheme {
    /// One entry per pixel, 0.0 or 1.0, row-major. 256 inputs.
    #[default]
    Flat256,
    /// One entry per row: the row word read as a big-endian 16-bit integer,
    /// divided by 65535. 16 inputs in `[0, 1]`, still lossless.
    RowWord16,
}

impl EncodingScheme {
    pub fn input_len(self) -> usize {
        match self {
            EncodingScheme::Flat256 => PIXELS,
            EncodingScheme::RowWord16 => SIDE,
        }
    }

    pub fn encode(self, bitmap: &Bitmap16) -> Vec<f64> {
        match self {
            EncodingScheme::Flat256 => (0..PIXELS)
                .map(|i| bitmap.pixel(i / SIDE, i % SIDE) as u8 as f64)
                .collect(),
            EncodingScheme::RowWord16 => bitmap
                .rows
                .iter()
                .map(|&word| word as f64 / u16::MAX as f64)
                .collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EncodingScheme::Flat256 => "flat256",
            EncodingScheme::RowWord16 => "rowword16",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "flat256" => Some(EncodingScheme::Flat256),
            "rowword16" => Some(EncodingScheme::RowWord16),
            _ => None,
        }
    }
}

/// Why a bitmap was not recognized.
#[derive(Debug, Clone, PartialEq)]
pub enum RejectReason {
    NoneAboveThreshold,
    /// Two or more classes reached the threshold; scores descending, ties
    /// broken by lower class index.
    Ambiguous(Vec<(usize, f64)>),
}

/// Outcome of the thresholded recognition rule.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassDecision {
    Accepted { class: usize, score: f64 },
    Rejected(RejectReason),
}

/// Run the network on the encoded bitmap and apply the recognition rule:
/// classes scoring at or above `threshold` are candidates; exactly one
/// candidate is an acceptance, zero or several are rejections.
pub fn classify(
    mlp: &Mlp,
    bitmap: &Bitmap16,
    scheme: EncodingScheme,
    labels: &[String],
    threshold: f64,
) -> Result<ClassDecision> {
    if mlp.input_dim() != scheme.input_len() {
        return Err(Error::DimensionMismatch {
            expected: scheme.input_len(),
            actual: mlp.input_dim(),
        });
    }
    if labels.len() != mlp.output_dim() {
        return Err(Error::DimensionMismatch {
            expected: mlp.output_dim(),
            actual: labels.len(),
        });
    }
    let outputs = mlp.predict(&scheme.encode(bitmap))?;
    let mut candidates: Vec<(usize, f64)> = outputs
        .iter()
        .enumerate()
        .filter(|(_, &score)| score >= threshold)
        .map(|(class, &score)| (class, score))
        .collect();
    Ok(match candidates.len() {
        0 => ClassDecision::Rejected(RejectReason::NoneAboveThreshold),
        1 => ClassDecision::Accepted {
            class: candidates[0].0,
            score: candidates[0].1,
        },
        _ => {
            candidates.sort_by(|a, b| {
                b.1.partial_cmp(&a.1)
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.0.cmp(&b.0))
            });
            ClassDecision::Rejected(RejectReason::Ambiguous(candidates))
        }
    })
}
