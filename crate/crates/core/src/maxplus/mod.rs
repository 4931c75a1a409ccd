//! Max-plus (tropical) algebra over the extended reals.
//!
//! The carrier set is `ℝ ∪ {−∞, +∞}` with four operations:
//!
//! - `a ⊕ b = max(a, b)` — addition, neutral element `−∞`
//! - `a ⊗ b = a + b` if neither operand is `−∞`, else `−∞`
//! - `a ⊞ b = min(a, b)` — dual addition, neutral element `+∞`
//! - `a ⊠ b = a + b` if neither operand is `+∞`, else `+∞`
//!
//! The two multiplications differ only on `(−∞) + (+∞)`: `⊗` resolves it
//! to `−∞`, `⊠` to `+∞`. Entries are kept as a tagged scalar
//! ([`ExtReal`]) instead of IEEE floats precisely so this pair of rules
//! cannot degrade into NaN.
//!
//! [`MaxPlusMatrix`] lifts the operations entrywise / in the usual
//! sum-of-products way and adds the Kleene star `A* = ⊕_{i≥0} A^i`,
//! which exists iff the precedence graph of `A` has no circuit of
//! positive weight. `(A*)_{ij}` is then the maximum weight over all
//! paths from node `j` to node `i`.

mod matrix;
mod scalar;

pub use matrix::{block_star, BlockStar, MatrixParseError, MaxPlusMatrix, StarError};
pub use scalar::ExtReal;

/// Default comparison tolerance for float-valued data. Integer-valued
/// instances compare exactly; this only matters for genuinely fractional
/// inputs.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
