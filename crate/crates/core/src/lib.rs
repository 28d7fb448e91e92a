//! Threshold logic units and the small learning algorithms built on them.
//!
//! The crate covers four layers that build on each other:
//!
//! - [`unit`] and [`table`]: boolean truth tables and the single threshold
//!   neuron, which fires iff its weighted input sum strictly exceeds the
//!   threshold.
//! - [`separability`]: turns a table into its strict inequality system over
//!   `(w, t)` and decides linear separability exactly, returning a verified
//!   witness or an infeasibility certificate.
//! - [`delta`]: the iterative single-unit trainer that removes a fixed
//!   portion `d = (E + e) / 2` of each observed violation, with a full
//!   update trace.
//! - [`mlp`] and [`imageio`]: a small feed-forward network trained by
//!   backpropagation and plain gradient descent, plus 16×16 bitmap handling
//!   and a thresholded classification rule for it.
//!
//! ```
//! use tlu_core::separability::{verify_witness, InequalitySystem};
//! use tlu_core::table::TruthTable;
//! use tlu_core::unit::bits;
//!
//! let or = TruthTable::parse_csv("x1,x2,f\n0,0,0\n0,1,1\n1,0,1\n1,1,1\n").unwrap();
//! let decision = InequalitySystem::from_table(&or).decide().unwrap();
//! let witness = decision.witness().expect("OR is linearly separable");
//! assert!(verify_witness(witness, &or).unwrap());
//! assert_eq!(witness.eval(&bits(&[1, 0])).unwrap().as_u8(), 1);
//! ```

pub mod delta;
pub mod error;
pub mod imageio;
pub mod mlp;
pub mod rng;
pub mod separability;
pub mod table;
pub mod unit;

pub use error::{Error, Result};
pub use table::TruthTable;
pub use unit::{Bit, ThresholdUnit};
