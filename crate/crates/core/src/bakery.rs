//! A serial bakery line as an SLDI model.
//!
//! The shop has `M̄` machines in series. Stage roles follow position:
//!
//! 1. mixing — batch-sized loads, FIFO exits, cleaning between types;
//! 2. to `M̄−2` — unitary capacity, no-wait processing, rigidly linked
//!    transports up to machine `M̄−2`;
//! 3. `M̄−1` (proofer) and `M̄` (oven) — batch machines: a batch enters
//!    and leaves together, and a new batch may enter only after the
//!    previous one left.
//!
//! Each product type `j` yields three modes sharing the within-step
//! windows and differing in the step-to-step coupling: `a_j` (next
//! product continues the same batch), `b_j` (starts a new batch of the
//! same type), `c_j` (the type changes, forcing mixer cleaning). A daily
//! schedule — a permutation of the product types — then maps to a mode
//! sequence of length `Q`, one step per product.
//!
//! Event vector layout: `x(k) = [ξ_1, ξ'_1, …, ξ_M̄, ξ'_M̄]` where
//! `ξ_m`/`ξ'_m` are the entry/exit times of product `k` at machine `m`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::maxplus::{ExtReal, MaxPlusMatrix};
use crate::oracle::oracle_makespan;
use crate::sldi::{dense_makespan, MakespanResult, Method, ModeSpec, SldiInstance};

/// Inclusive `[min, max]` time window, in minutes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64)", into = "(f64, f64)")]
pub struct Window {
    pub min: f64,
    pub max: f64,
}

impl Window {
    pub fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub fn exact(value: f64) -> Self {
        Self { min: value, max: value }
    }

    fn is_valid(&self) -> bool {
        self.min.is_finite() && self.max.is_finite() && self.min >= 0.0 && self.min <= self.max
    }
}

impl From<(f64, f64)> for Window {
    fn from((min, max): (f64, f64)) -> Self {
        Self { min, max }
    }
}

impl From<Window> for (f64, f64) {
    fn from(w: Window) -> Self {
        (w.min, w.max)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MachineSpec {
    pub name: String,
    /// One processing window per product type.
    pub processing: Vec<Window>,
}

/// Full description of the shop plus the daily demand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BakeryConfig {
    pub machines: Vec<MachineSpec>,
    /// Transport windows between machine `m` and `m+1` (`M̄−1` entries).
    pub transport: Vec<Window>,
    /// Proofer/oven load size per type.
    pub capacities: Vec<u32>,
    /// Products per type to produce today.
    pub quantities: Vec<u32>,
    /// Mixer cleaning time between product types.
    pub clean_time: f64,
}

#[derive(Clone, Debug, Deserialize)]
struct DemandDoc {
    quantities: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize)]
struct ShopDoc {
    machines: Vec<MachineSpec>,
    transport: Vec<Window>,
    capacities: Vec<u32>,
    clean_time: f64,
    #[serde(default)]
    quantities: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum BakeryError {
    #[error("shop needs at least 4 machines (mixer, one unit-capacity stage, proofer, oven); got {got}")]
    TooFewMachines { got: usize },
    #[error("{count} machines need {expected} transport windows, got {got}")]
    TransportCount { count: usize, expected: usize, got: usize },
    #[error("machine {machine} ({name}) lists {got} processing windows, expected one per type ({expected})")]
    ProcessingCount { machine: usize, name: String, got: usize, expected: usize },
    #[error("{field} lists {got} entries, expected one per type ({expected})")]
    TypeCount { field: &'static str, got: usize, expected: usize },
    #[error("invalid window at {context}: [{min}, {max}] (need finite 0 <= min <= max)")]
    BadWindow { context: String, min: f64, max: f64 },
    #[error("machine {machine} ({name}) is a no-wait stage but type {type_id} has window [{min}, {max}]")]
    NoWaitViolated { machine: usize, name: String, type_id: usize, min: f64, max: f64 },
    #[error("transport {machine}->{next} is rigid but has window [{min}, {max}]")]
    RigidLinkViolated { machine: usize, next: usize, min: f64, max: f64 },
    #[error("type {type_id}: capacity must be at least 1")]
    ZeroCapacity { type_id: usize },
    #[error("cleaning time {got} must be finite and nonnegative")]
    BadCleanTime { got: f64 },
    #[error("no quantities given: add them to the shop document or pass a demand document")]
    MissingQuantities,
    #[error("schedule error: {0}")]
    BadSchedule(String),
    #[error("invalid document: {0}")]
    Json(String),
}

impl From<serde_json::Error> for BakeryError {
    fn from(e: serde_json::Error) -> Self {
        BakeryError::Json(e.to_string())
    }
}

impl BakeryConfig {
    /// Parse the shop document, optionally overriding quantities from a
    /// separate demand document, and validate.
    pub fn from_json(shop: &str, demand: Option<&str>) -> Result<Self, BakeryError> {
        let doc: ShopDoc = serde_json::from_str(shop)?;
        let quantities = match demand {
            Some(text) => serde_json::from_str::<DemandDoc>(text)?.quantities,
            None => doc.quantities.ok_or(BakeryError::MissingQuantities)?,
        };
        let cfg = Self {
            machines: doc.machines,
            transport: doc.transport,
            capacities: doc.capacities,
            quantities,
            clean_time: doc.clean_time,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Machine count `M̄`.
    pub fn machine_count(&self) -> usize {
        self.machines.len()
    }

    /// Product-type count `J` (including types with zero demand).
    pub fn type_count(&self) -> usize {
        self.capacities.len()
    }

    /// Event-vector dimension `n = 2M̄`.
    pub fn event_dim(&self) -> usize {
        2 * self.machine_count()
    }

    /// Types with positive demand, ascending.
    pub fn active_types(&self) -> Vec<usize> {
        (0..self.type_count()).filter(|&j| self.quantities[j] > 0).collect()
    }

    /// Total product count `Q`.
    pub fn total_quantity(&self) -> u32 {
        self.quantities.iter().sum()
    }

    /// Batches of type `j`: `⌈Q_j / C_j⌉`.
    pub fn batches_of(&self, j: usize) -> u32 {
        self.quantities[j].div_ceil(self.capacities[j])
    }

    /// Total batch count `B`.
    pub fn total_batches(&self) -> u32 {
        (0..self.type_count()).map(|j| self.batches_of(j)).sum()
    }

    pub fn validate(&self) -> Result<(), BakeryError> {
        let m_count = self.machine_count();
        if m_count < 4 {
            return Err(BakeryError::TooFewMachines { got: m_count });
        }
        if self.transport.len() != m_count - 1 {
            return Err(BakeryError::TransportCount {
                count: m_count,
                expected: m_count - 1,
                got: self.transport.len(),
            });
        }
        let types = self.type_count();
        if self.quantities.len() != types {
            return Err(BakeryError::TypeCount {
                field: "quantities",
                got: self.quantities.len(),
                expected: types,
            });
        }
        for (idx, machine) in self.machines.iter().enumerate() {
            let m = idx + 1;
            if machine.processing.len() != types {
                return Err(BakeryError::ProcessingCount {
                    machine: m,
                    name: machine.name.clone(),
                    got: machine.processing.len(),
                    expected: types,
                });
            }
            for (j, w) in machine.processing.iter().enumerate() {
                if !w.is_valid() {
                    return Err(BakeryError::BadWindow {
                        context: format!("machine {m} ({}), type {}", machine.name, j + 1),
                        min: w.min,
                        max: w.max,
                    });
                }
                // No-wait stages: processing takes exactly its duration.
                if (2..=m_count - 2).contains(&m) && w.min != w.max {
                    return Err(BakeryError::NoWaitViolated {
                        machine: m,
                        name: machine.name.clone(),
                        type_id: j + 1,
                        min: w.min,
                        max: w.max,
                    });
                }
            }
        }
        for (idx, w) in self.transport.iter().enumerate() {
            let m = idx + 1;
            if !w.is_valid() {
                return Err(BakeryError::BadWindow {
                    context: format!("transport {m}->{}", m + 1),
                    min: w.min,
                    max: w.max,
                });
            }
            // Up to machine M̄-2 the handover is immediate (the mixer feeds
            // the divider directly; the middle stages have no storage).
            if m <= m_count.saturating_sub(3) && (w.min != 0.0 || w.max != 0.0) {
                return Err(BakeryError::RigidLinkViolated {
                    machine: m,
                    next: m + 1,
                    min: w.min,
                    max: w.max,
                });
            }
        }
        for (j, &c) in self.capacities.iter().enumerate() {
            if c == 0 {
                return Err(BakeryError::ZeroCapacity { type_id: j + 1 });
            }
        }
        if !self.clean_time.is_finite() || self.clean_time < 0.0 {
            return Err(BakeryError::BadCleanTime { got: self.clean_time });
        }
        Ok(())
    }
}

/// 0-based event index of `ξ_m` (product enters machine `m`, 1-based).
pub fn event_enter(m: usize) -> usize {
    2 * (m - 1)
}

/// 0-based event index of `ξ'_m` (product leaves machine `m`, 1-based).
pub fn event_leave(m: usize) -> usize {
    2 * m - 1
}

/// Processing order of the product types: a permutation of the active
/// types (0-based ids).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Schedule(pub Vec<usize>);

impl Schedule {
    /// Parse a 1-based comma-separated list like `2,1,3`.
    pub fn parse_one_based(text: &str) -> Result<Self, BakeryError> {
        let mut order = Vec::new();
        for tok in text.split(',') {
            let id: usize = tok
                .trim()
                .parse()
                .map_err(|_| BakeryError::BadSchedule(format!("cannot parse type id {tok:?}")))?;
            if id == 0 {
                return Err(BakeryError::BadSchedule("type ids are 1-based".into()));
            }
            order.push(id - 1);
        }
        Ok(Self(order))
    }

    /// The identity schedule over the active types of `cfg`.
    pub fn natural(cfg: &BakeryConfig) -> Self {
        Self(cfg.active_types())
    }

    /// Must be a permutation of exactly the active types.
    pub fn validate(&self, cfg: &BakeryConfig) -> Result<(), BakeryError> {
        let mut seen = vec![false; cfg.type_count()];
        for &j in &self.0 {
            if j >= cfg.type_count() {
                return Err(BakeryError::BadSchedule(format!(
                    "type {} does not exist (J = {})",
                    j + 1,
                    cfg.type_count()
                )));
            }
            if seen[j] {
                return Err(BakeryError::BadSchedule(format!("type {} listed twice", j + 1)));
            }
            if cfg.quantities[j] == 0 {
                return Err(BakeryError::BadSchedule(format!(
                    "type {} has zero demand and cannot be scheduled",
                    j + 1
                )));
            }
            seen[j] = true;
        }
        for j in cfg.active_types() {
            if !seen[j] {
                return Err(BakeryError::BadSchedule(format!(
                    "type {} has demand but is missing from the schedule",
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, j) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        Ok(())
    }
}

/// Per-product type and batch assignment induced by a schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductIndexing {
    /// Type id (0-based) of product `k`.
    pub type_of: Vec<usize>,
    /// Batch number (0-based, within the type) of product `k`.
    pub batch_of: Vec<usize>,
    /// `B_j` per type id.
    pub batches_per_type: Vec<usize>,
}

impl ProductIndexing {
    pub fn product_count(&self) -> usize {
        self.type_of.len()
    }

    pub fn total_batches(&self) -> usize {
        self.batches_per_type.iter().sum()
    }
}

/// Assign every product its type and batch: products follow the schedule
/// order, types form contiguous blocks, and each block chunks into
/// batches of `C_j` products (the last batch takes the remainder,
/// `Q_j − (B_j−1)·C_j`).
pub fn index_products(cfg: &BakeryConfig, schedule: &Schedule) -> ProductIndexing {
    let mut type_of = Vec::with_capacity(cfg.total_quantity() as usize);
    let mut batch_of = Vec::with_capacity(type_of.capacity());
    let mut batches_per_type = vec![0usize; cfg.type_count()];
    for &j in &schedule.0 {
        let quantity = cfg.quantities[j] as usize;
        let capacity = cfg.capacities[j] as usize;
        batches_per_type[j] = quantity.div_ceil(capacity);
        for q in 0..quantity {
            type_of.push(j);
            batch_of.push(q / capacity);
        }
    }
    ProductIndexing { type_of, batch_of, batches_per_type }
}

/// Which of the three per-type modes a step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeKind {
    SameBatch,
    NewBatch,
    TypeChange,
}

pub fn mode_label(kind: ModeKind, type_id: usize) -> String {
    let prefix = match kind {
        ModeKind::SameBatch => 'a',
        ModeKind::NewBatch => 'b',
        ModeKind::TypeChange => 'c',
    };
    format!("{prefix}{}", type_id + 1)
}

/// Build the `3J` mode matrices of the shop.
pub fn build_modes(cfg: &BakeryConfig) -> BTreeMap<String, ModeSpec> {
    let m_count = cfg.machine_count();
    let n = cfg.event_dim();
    let zero = ExtReal::finite(0.0);
    let mut modes = BTreeMap::new();
    for j in 0..cfg.type_count() {
        // Within-step windows shared by a_j, b_j, c_j: processing on every
        // machine, transport between consecutive machines.
        let mut a0 = MaxPlusMatrix::eps(n, n);
        let mut b0 = MaxPlusMatrix::top(n, n);
        for m in 1..=m_count {
            let w = cfg.machines[m - 1].processing[j];
            a0.set(event_leave(m), event_enter(m), ExtReal::finite(w.min));
            b0.set(event_leave(m), event_enter(m), ExtReal::finite(w.max));
        }
        for m in 1..m_count {
            let w = cfg.transport[m - 1];
            a0.set(event_enter(m + 1), event_leave(m), ExtReal::finite(w.min));
            b0.set(event_enter(m + 1), event_leave(m), ExtReal::finite(w.max));
        }

        // Step-to-step couplings present in every mode: unitary capacity
        // at the middle stages, FIFO at the mixer exit.
        let mut a1_base = MaxPlusMatrix::eps(n, n);
        for m in 2..=m_count - 2 {
            a1_base.set(event_enter(m), event_leave(m), zero);
        }
        a1_base.set(event_leave(1), event_leave(1), zero);

        for kind in [ModeKind::SameBatch, ModeKind::NewBatch, ModeKind::TypeChange] {
            let mut a1 = a1_base.clone();
            let mut b1 = MaxPlusMatrix::top(n, n);
            match kind {
                ModeKind::SameBatch => {
                    // The whole batch shares one mixer load and moves
                    // through proofer and oven as one: exact equalities.
                    for e in [
                        event_enter(1),
                        event_enter(m_count - 1),
                        event_leave(m_count - 1),
                        event_enter(m_count),
                        event_leave(m_count),
                    ] {
                        a1.set(e, e, zero);
                        b1.set(e, e, zero);
                    }
                }
                ModeKind::NewBatch | ModeKind::TypeChange => {
                    // Next batch enters proofer/oven only after this one left.
                    a1.set(event_enter(m_count - 1), event_leave(m_count - 1), zero);
                    a1.set(event_enter(m_count), event_leave(m_count), zero);
                    if kind == ModeKind::TypeChange {
                        a1.set(event_enter(1), event_leave(1), ExtReal::finite(cfg.clean_time));
                    }
                }
            }
            modes.insert(mode_label(kind, j), ModeSpec { a0: a0.clone(), a1, b0: b0.clone(), b1 });
        }
    }
    modes
}

/// Mode sequence of length `Q` for an indexed production run. The last
/// step's coupling matrices are never used; it gets `a_j` for determinism.
pub fn build_sequence(idx: &ProductIndexing) -> Vec<String> {
    let q = idx.product_count();
    let mut sequence = Vec::with_capacity(q);
    for k in 0..q {
        let kind = if k + 1 == q {
            ModeKind::SameBatch
        } else if idx.type_of[k + 1] != idx.type_of[k] {
            ModeKind::TypeChange
        } else if idx.batch_of[k + 1] != idx.batch_of[k] {
            ModeKind::NewBatch
        } else {
            ModeKind::SameBatch
        };
        sequence.push(mode_label(kind, idx.type_of[k]));
    }
    sequence
}

/// Assemble the full SLDI instance for a schedule.
pub fn build_instance(cfg: &BakeryConfig, schedule: &Schedule) -> Result<SldiInstance, BakeryError> {
    cfg.validate()?;
    schedule.validate(cfg)?;
    let idx = index_products(cfg, schedule);
    let instance = SldiInstance {
        n: cfg.event_dim(),
        modes: build_modes(cfg),
        sequence: build_sequence(&idx),
    };
    debug_assert!(instance.validate().is_ok());
    Ok(instance)
}

/// Shop makespan `ξ'_M̄(Q) − ξ_1(1)` for a fixed schedule.
///
/// `method` picks the solver; only [`Method::Dense`] can return a
/// trajectory. The segment-cache solver lives in [`crate::search`].
pub fn bakery_makespan(
    cfg: &BakeryConfig,
    schedule: &Schedule,
    method: Method,
    want_trajectory: bool,
) -> Result<MakespanResult, BakeryError> {
    cfg.validate()?;
    schedule.validate(cfg)?;
    if cfg.total_quantity() == 0 {
        // Nothing to produce: degenerate zero-length day.
        return Ok(MakespanResult::feasible(method, ExtReal::finite(0.0), Some(Vec::new())));
    }
    let instance = build_instance(cfg, schedule)?;
    let result = match method {
        Method::Dense => dense_makespan(&instance, want_trajectory),
        Method::Block => crate::block::block_makespan_of(&instance),
        Method::Oracle => oracle_makespan(&instance),
        Method::Fast => {
            let cache = crate::search::build_cache(cfg)
                .map_err(|e| BakeryError::BadSchedule(e.to_string()))?;
            crate::search::fast_makespan(&cache, schedule)
        }
    };
    Ok(result)
}

/// Trajectory-level shop invariants: event ordering across products
/// (machines 2..M̄ plus the mixer exit), identical batch events at the
/// mixer entry / proofer / oven, cleaning separation at type changes,
/// and exact no-wait durations. Returns human-readable violations.
pub fn check_shop_invariants(
    cfg: &BakeryConfig,
    idx: &ProductIndexing,
    xs: &[Vec<f64>],
    tol: f64,
) -> Vec<String> {
    let m_count = cfg.machine_count();
    let mut out = Vec::new();
    let q = xs.len();
    for k in 0..q {
        // No-wait stages take exactly their minimal duration.
        for m in 2..=m_count - 2 {
            let dur = xs[k][event_leave(m)] - xs[k][event_enter(m)];
            let want = cfg.machines[m - 1].processing[idx.type_of[k]].min;
            if (dur - want).abs() > tol {
                out.push(format!("product {}: no-wait stage {m} took {dur}, expected {want}", k + 1));
            }
        }
        if k + 1 == q {
            continue;
        }
        // No overtaking from the divider on; mixer exits are FIFO.
        for m in 2..=m_count {
            for e in [event_enter(m), event_leave(m)] {
                if xs[k + 1][e] < xs[k][e] - tol {
                    out.push(format!(
                        "products {} and {}: event {} goes backwards at machine {m}",
                        k + 1,
                        k + 2,
                        e + 1
                    ));
                }
            }
        }
        if xs[k + 1][event_leave(1)] < xs[k][event_leave(1)] - tol {
            out.push(format!("products {} and {}: mixer exit is not FIFO", k + 1, k + 2));
        }
        let same_batch = idx.type_of[k + 1] == idx.type_of[k] && idx.batch_of[k + 1] == idx.batch_of[k];
        if same_batch {
            for e in [
                event_enter(1),
                event_enter(m_count - 1),
                event_leave(m_count - 1),
                event_enter(m_count),
                event_leave(m_count),
            ] {
                if (xs[k + 1][e] - xs[k][e]).abs() > tol {
                    out.push(format!(
                        "products {} and {} share a batch but differ at event {}",
                        k + 1,
                        k + 2,
                        e + 1
                    ));
                }
            }
        } else if idx.type_of[k + 1] != idx.type_of[k] {
            let gap = xs[k + 1][event_enter(1)] - xs[k][event_leave(1)];
            if gap < cfg.clean_time - tol {
                out.push(format!(
                    "products {} and {}: mixer cleaning gap {gap} < {}",
                    k + 1,
                    k + 2,
                    cfg.clean_time
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxplus::DEFAULT_TOLERANCE;
    use crate::sldi::check_trajectory;

    /// Two-type, 7-machine shop with small integer windows.
    pub(crate) fn toy_config() -> BakeryConfig {
        let names = ["mixing", "dividing", "rounding", "pre-proofing", "rolling", "proofing", "baking"];
        let machines = names
            .iter()
            .enumerate()
            .map(|(idx, name)| {
                let m = idx + 1;
                let processing = (0..2)
                    .map(|j| {
                        let base = (2 + m + j) as f64;
                        if (2..=5).contains(&m) {
                            Window::exact(base)
                        } else {
                            Window::new(base, base + 40.0)
                        }
                    })
                    .collect();
                MachineSpec { name: (*name).into(), processing }
            })
            .collect();
        BakeryConfig {
            machines,
            transport: vec![
                Window::exact(0.0),
                Window::exact(0.0),
                Window::exact(0.0),
                Window::exact(0.0),
                Window::new(1.0, 30.0),
                Window::new(1.0, 30.0),
            ],
            capacities: vec![2, 3],
            quantities: vec![3, 4],
            clean_time: 5.0,
        }
    }

    #[test]
    fn indexing_follows_blocks_and_batches() {
        let mut cfg = toy_config();
        cfg.quantities = vec![1, 3];
        cfg.capacities = vec![1, 2];
        let idx = index_products(&cfg, &Schedule(vec![1, 0]));
        assert_eq!(idx.type_of, vec![1, 1, 1, 0]);
        assert_eq!(idx.batch_of, vec![0, 0, 1, 0]);
        assert_eq!(idx.batches_per_type, vec![1, 2]);
        assert_eq!(idx.total_batches(), 3);
    }

    #[test]
    fn full_batch_when_capacity_divides() {
        let mut cfg = toy_config();
        cfg.quantities = vec![4, 0];
        cfg.capacities = vec![4, 3];
        let idx = index_products(&cfg, &Schedule(vec![0]));
        assert_eq!(idx.batches_per_type[0], 1);
        assert!(idx.batch_of.iter().all(|&b| b == 0));
    }

    #[test]
    fn sequence_kinds() {
        let mut cfg = toy_config();
        cfg.quantities = vec![1, 3];
        cfg.capacities = vec![1, 2];
        let idx = index_products(&cfg, &Schedule(vec![1, 0]));
        assert_eq!(build_sequence(&idx), vec!["a2", "b2", "c2", "a1"]);

        cfg.quantities = vec![3, 0];
        cfg.capacities = vec![3, 3];
        let idx = index_products(&cfg, &Schedule(vec![0]));
        assert_eq!(build_sequence(&idx), vec!["a1", "a1", "a1"]);

        cfg.quantities = vec![1, 1];
        let idx = index_products(&cfg, &Schedule(vec![0, 1]));
        assert_eq!(build_sequence(&idx), vec!["c1", "a2"]);
    }

    #[test]
    fn type_change_mode_has_top_b1() {
        let cfg = toy_config();
        let modes = build_modes(&cfg);
        let n = cfg.event_dim();
        assert_eq!(modes["c1"].b1, MaxPlusMatrix::top(n, n));
        assert_eq!(modes["c2"].b1, MaxPlusMatrix::top(n, n));
    }

    #[test]
    fn zero_cleaning_collapses_c_onto_b() {
        let mut cfg = toy_config();
        cfg.clean_time = 0.0;
        let modes = build_modes(&cfg);
        let b = &modes["b1"];
        let c = &modes["c1"];
        assert_eq!(b.a0, c.a0);
        assert_eq!(b.b0, c.b0);
        assert_eq!(b.b1, c.b1);
        let mut diff = Vec::new();
        for i in 0..cfg.event_dim() {
            for j in 0..cfg.event_dim() {
                if b.a1.get(i, j) != c.a1.get(i, j) {
                    diff.push((i, j, b.a1.get(i, j), c.a1.get(i, j)));
                }
            }
        }
        assert_eq!(diff, vec![(0, 1, ExtReal::NegInf, ExtReal::finite(0.0))]);
    }

    #[test]
    fn single_product_makespan_is_the_lower_bound_chain() {
        let mut cfg = toy_config();
        cfg.quantities = vec![1, 0];
        let schedule = Schedule(vec![0]);
        let expected: f64 = cfg.machines.iter().map(|m| m.processing[0].min).sum::<f64>()
            + cfg.transport.iter().map(|w| w.min).sum::<f64>();
        for method in [Method::Dense, Method::Block, Method::Oracle] {
            let r = bakery_makespan(&cfg, &schedule, method, false).unwrap();
            assert_eq!(r.makespan, ExtReal::finite(expected), "method {method}");
        }
    }

    #[test]
    fn methods_agree_and_trajectory_is_consistent() {
        let cfg = toy_config();
        let schedule = Schedule(vec![1, 0]);
        let dense = bakery_makespan(&cfg, &schedule, Method::Dense, true).unwrap();
        let block = bakery_makespan(&cfg, &schedule, Method::Block, false).unwrap();
        let oracle = bakery_makespan(&cfg, &schedule, Method::Oracle, false).unwrap();
        assert!(dense.feasible);
        assert_eq!(dense.makespan, block.makespan);
        assert_eq!(dense.makespan, oracle.makespan);

        let inst = build_instance(&cfg, &schedule).unwrap();
        let xs = dense.trajectory.unwrap();
        assert!(check_trajectory(&inst, &xs, DEFAULT_TOLERANCE).unwrap().is_empty());
        let idx = index_products(&cfg, &schedule);
        let problems = check_shop_invariants(&cfg, &idx, &xs, DEFAULT_TOLERANCE);
        assert!(problems.is_empty(), "{problems:?}");
    }

    #[test]
    fn doubling_windows_doubles_the_makespan() {
        let cfg = toy_config();
        let schedule = Schedule(vec![0, 1]);
        let base = bakery_makespan(&cfg, &schedule, Method::Block, false).unwrap();
        let mut doubled = cfg.clone();
        for machine in &mut doubled.machines {
            for w in &mut machine.processing {
                *w = Window::new(2.0 * w.min, 2.0 * w.max);
            }
        }
        for w in &mut doubled.transport {
            *w = Window::new(2.0 * w.min, 2.0 * w.max);
        }
        doubled.clean_time *= 2.0;
        let twice = bakery_makespan(&doubled, &schedule, Method::Block, false).unwrap();
        assert_eq!(twice.value().unwrap(), 2.0 * base.value().unwrap());
    }

    #[test]
    fn empty_demand_is_degenerate() {
        let mut cfg = toy_config();
        cfg.quantities = vec![0, 0];
        let r = bakery_makespan(&cfg, &Schedule(vec![]), Method::Dense, true).unwrap();
        assert!(r.feasible);
        assert_eq!(r.makespan, ExtReal::finite(0.0));
        assert_eq!(r.trajectory.unwrap().len(), 0);
    }

    #[test]
    fn schedule_validation() {
        let cfg = toy_config();
        assert!(Schedule(vec![0, 1]).validate(&cfg).is_ok());
        assert!(Schedule(vec![0]).validate(&cfg).is_err());
        assert!(Schedule(vec![0, 0]).validate(&cfg).is_err());
        assert!(Schedule(vec![0, 1, 2]).validate(&cfg).is_err());
        assert_eq!(Schedule::parse_one_based("2, 1").unwrap(), Schedule(vec![1, 0]));
        assert_eq!(Schedule(vec![1, 0]).to_string(), "2,1");
    }

    #[test]
    fn config_document_round_trip() {
        let cfg = toy_config();
        let parsed = BakeryConfig::from_json(&cfg.to_json(), None).unwrap();
        assert_eq!(parsed.quantities, cfg.quantities);
        let demand = r#"{ "quantities": [5, 6] }"#;
        let parsed = BakeryConfig::from_json(&cfg.to_json(), Some(demand)).unwrap();
        assert_eq!(parsed.quantities, vec![5, 6]);
    }

    #[test]
    fn validation_pinpoints_bad_windows() {
        let mut cfg = toy_config();
        cfg.machines[5].processing[1] = Window::new(9.0, 3.0);
        match cfg.validate().unwrap_err() {
            BakeryError::BadWindow { context, .. } => {
                assert!(context.contains("machine 6"), "{context}");
                assert!(context.contains("type 2"), "{context}");
            }
            other => panic!("expected BadWindow, got {other}"),
        }

        let mut cfg = toy_config();
        cfg.machines[2].processing[0] = Window::new(1.0, 2.0);
        assert!(matches!(
            cfg.validate().unwrap_err(),
            BakeryError::NoWaitViolated { machine: 3, .. }
        ));

        let mut cfg = toy_config();
        cfg.transport[1] = Window::new(0.0, 1.0);
        assert!(matches!(
            cfg.validate().unwrap_err(),
            BakeryError::RigidLinkViolated { machine: 2, .. }
        ));
    }
}
