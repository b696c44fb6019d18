//! Lyndon array construction toolkit.
//!
//! Three independent routes compute the Lyndon array of a sentinel-terminated
//! text:
//!
//! - [`lyndon::bwt_lyndon`]: during Burrows-Wheeler inversion, with a stack
//!   of visited rows (linear time);
//! - [`suffix::lyndon_from_nsv`]: next-smaller-value over the inverse suffix
//!   array, `lambda[i] = NSV_ISA[i] - i` (linear time);
//! - [`lyndon::oracle_lyndon`]: the definitional scan by direct suffix
//!   comparison (quadratic worst case; the reference the others are checked
//!   against).
//!
//! [`bp`] packs a Lyndon array into 2n bits of balanced parentheses with
//! constant-ish time access through a range-min-max tree, buildable straight
//! from the BWT via [`bwt::isa_stream`] with either a word stack or an n-bit
//! dynamic bit-stack.

pub mod bits;
pub mod bp;
pub mod bwt;
pub mod error;
pub mod intarray;
pub mod lyndon;
mod sais;
pub mod suffix;
pub mod text;

pub use error::{Error, Result};
pub use intarray::{read_array, write_array, IntArray, Width};
pub use text::{load_text, SentinelPolicy, Text};
