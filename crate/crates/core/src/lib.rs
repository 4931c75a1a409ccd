//! tropflow — max-plus scheduling for permutation flow shops with
//! time-window constraints.
//!
//! The engine models a production line as switched max-plus linear-dual
//! inequalities: per step, lower- and upper-bound window matrices over
//! event-time differences, selected by a mode sequence. On top of that it
//! provides:
//!
//! - [`maxplus`] — the tropical algebra: extended-real scalars, matrices,
//!   Kleene star with positive-circuit detection;
//! - [`sldi`] — instances, the dense star solver (feasibility, makespan,
//!   optimal trajectories), trajectory checking;
//! - [`block`] — the O(Kn³) block-tridiagonal recursion over the same
//!   systems;
//! - [`oracle`] — an independent Bellman-Ford longest-path verifier;
//! - [`bakery`] — a seven-stage bakery line mapped onto modes,
//!   with batching proofer/oven stages and mixer cleaning;
//! - [`search`] — exhaustive schedule optimization with per-type
//!   segment/boundary caching, making each schedule O(J) products;
//! - [`gantt`] — chart export (JSON, SVG) from checked trajectories;
//! - [`synth`] — synthetic instance generators for tests and benchmarks.

pub mod bakery;
pub mod block;
pub mod gantt;
pub mod maxplus;
pub mod oracle;
pub mod search;
pub mod sldi;
pub mod synth;

pub use bakery::{BakeryConfig, BakeryError, Schedule};
pub use maxplus::{ExtReal, MaxPlusMatrix, StarError, DEFAULT_TOLERANCE};
pub use search::{exhaustive_search, SearchOptions, SearchResult};
pub use sldi::{MakespanResult, Method, ModeSpec, SldiInstance};
