//! Schedule optimization: exhaustive search with a per-type cache.
//!
//! Type-change modes carry no step-to-step upper bounds (`B¹ = 𝒯`), so
//! the backward coupling `ℙ` vanishes at every type boundary and the
//! coupling block `ℂ` there is `ℰ`. Two consequences:
//!
//! - the nested `ℂ` recursion truncates at each boundary, making the
//!   reduced chain inside a type's segment independent of where the
//!   segment sits in the schedule;
//! - the final product `𝕄` factors into per-type segment matrices `S_j`
//!   joined by boundary matrices `X_{j→j′} = C*_{(j′)} I_{c_j} C*_{(j)}`.
//!
//! Both families are precomputed once per shop ([`build_cache`], cost
//! O(Q·n³ + J²·n³)); each schedule then costs O(J) matrix products
//! regardless of Q ([`fast_makespan`]). Exhaustive enumeration over the
//! J! schedules reduces deterministically by the lexicographic-minimum
//! tie-break, so parallel partitioning cannot change the result.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::bakery::{
    bakery_makespan, build_modes, BakeryConfig, BakeryError, ModeKind, Schedule,
};
use crate::block::{block_feasible, BlockChain};
use crate::maxplus::{ExtReal, MaxPlusMatrix};
use crate::sldi::{reduce_mode, MakespanResult, Method, Witness};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("{types} product types would mean {count} schedules; the limit is {limit} types")]
    TooManyTypes { types: usize, count: u64, limit: usize },
    #[error("{count} schedules exceed the configured cap of {cap}")]
    TooManySchedules { count: u64, cap: u64 },
    #[error("time budget of {budget_secs:.1}s exhausted before the search finished")]
    BudgetExhausted { budget_secs: f64 },
    #[error("shop is infeasible for every schedule (segment of type {type_id}: {witness})")]
    InfeasibleShop { type_id: usize, witness: Witness },
    #[error(transparent)]
    Bakery(#[from] BakeryError),
}

/// Schedule-independent factors of `𝕄`, built once per shop.
#[derive(Clone, Debug)]
pub struct SegmentCache {
    n: usize,
    type_count: usize,
    total_quantity: u32,
    /// `C_{(j)}*` per active type.
    cstar: Vec<Option<MaxPlusMatrix>>,
    /// `S_j` per active type (identity for single-product segments).
    segment: Vec<Option<MaxPlusMatrix>>,
    /// `X_{j→j′}` at index `j * type_count + j′`.
    boundary: Vec<Option<MaxPlusMatrix>>,
    pub build_time: Duration,
}

impl SegmentCache {
    pub fn segment(&self, j: usize) -> &MaxPlusMatrix {
        self.segment[j].as_ref().expect("segment of an inactive type")
    }

    pub fn boundary(&self, from: usize, to: usize) -> &MaxPlusMatrix {
        self.boundary[from * self.type_count + to]
            .as_ref()
            .expect("boundary of an inactive type pair")
    }
}

/// Precompute segment and boundary matrices for every active type.
///
/// Fails iff the shop is infeasible, which is a property of the shop
/// alone: boundary couplings are `ℰ`, so no schedule can introduce or
/// remove a positive circuit.
pub fn build_cache(cfg: &BakeryConfig) -> Result<SegmentCache, SearchError> {
    let started = Instant::now();
    cfg.validate()?;
    let n = cfg.event_dim();
    let types = cfg.type_count();
    let modes = build_modes(cfg);
    let mut cstar: Vec<Option<MaxPlusMatrix>> = vec![None; types];
    let mut segment: Vec<Option<MaxPlusMatrix>> = vec![None; types];
    let mut boundary: Vec<Option<MaxPlusMatrix>> = vec![None; types * types];
    let active = cfg.active_types();
    for &j in &active {
        let same = reduce_mode(&modes[&crate::bakery::mode_label(ModeKind::SameBatch, j)]);
        let new_batch = reduce_mode(&modes[&crate::bakery::mode_label(ModeKind::NewBatch, j)]);
        let quantity = cfg.quantities[j] as usize;
        let capacity = cfg.capacities[j] as usize;
        // Within-segment transition p (1-based) closes a batch iff p is a
        // multiple of the capacity.
        let mut i_list = Vec::with_capacity(quantity - 1);
        let mut p_list = Vec::with_capacity(quantity - 1);
        for p in 1..quantity {
            let reduced = if p % capacity == 0 { &new_batch } else { &same };
            i_list.push(reduced.i.clone());
            p_list.push(reduced.p.clone());
        }
        let chain = BlockChain::new(vec![same.c.clone(); quantity], i_list, p_list);
        let reduced_chain = block_feasible(&chain)
            .map_err(|witness| SearchError::InfeasibleShop { type_id: j, witness })?;
        segment[j] = Some(if quantity == 1 {
            MaxPlusMatrix::identity(n)
        } else {
            reduced_chain.m.clone()
        });
        cstar[j] = Some(reduced_chain.cstar[0].clone());
    }
    for &from in &active {
        let change = reduce_mode(&modes[&crate::bakery::mode_label(ModeKind::TypeChange, from)]);
        for &to in &active {
            if from == to {
                continue;
            }
            let x = cstar[to]
                .as_ref()
                .unwrap()
                .otimes(&change.i)
                .otimes(cstar[from].as_ref().unwrap());
            boundary[from * types + to] = Some(x);
        }
    }
    Ok(SegmentCache {
        n,
        type_count: types,
        total_quantity: cfg.total_quantity(),
        cstar,
        segment,
        boundary,
        build_time: started.elapsed(),
    })
}

/// Makespan of one schedule from the cache: O(J) matrix products,
/// independent of the product count.
///
/// Feasibility was settled when the cache was built, so this cannot fail.
pub fn fast_makespan(cache: &SegmentCache, schedule: &Schedule) -> MakespanResult {
    assert!(!schedule.0.is_empty(), "empty schedule");
    let makespan = if cache.total_quantity == 1 {
        // A single product overall: 𝕄 degenerates to C*.
        cache.cstar[schedule.0[0]].as_ref().unwrap().get(cache.n - 1, 0)
    } else {
        let mut m = cache.segment(schedule.0[0]).clone();
        for pair in schedule.0.windows(2) {
            m = cache.boundary(pair[0], pair[1]).otimes(&m);
            m = cache.segment(pair[1]).otimes(&m);
        }
        m.get(cache.n - 1, 0)
    };
    MakespanResult::feasible(Method::Fast, makespan, None)
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub method: Method,
    /// Refuse to enumerate more types than this.
    pub max_types: usize,
    /// Optional cap on the schedule count (J!).
    pub max_schedules: Option<u64>,
    /// Optional wall-clock budget for the whole search.
    pub budget: Option<Duration>,
    /// Keep the full (schedule, makespan) table.
    pub keep_table: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            method: Method::Fast,
            max_types: 10,
            max_schedules: None,
            budget: None,
            keep_table: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Minimizer and its makespan; `None` iff the shop is infeasible
    /// (with ties broken toward the lexicographically smallest schedule).
    pub best: Option<(Schedule, ExtReal)>,
    pub evaluated: u64,
    pub table: Option<Vec<(Schedule, ExtReal)>>,
    pub cache_build: Duration,
    pub enumeration: Duration,
    pub method: Method,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The `index`-th permutation of `items` in lexicographic order.
fn permutation_by_index(items: &[usize], mut index: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = items.to_vec();
    let mut out = Vec::with_capacity(pool.len());
    for pos in (1..=pool.len()).rev() {
        let f = factorial(pos - 1);
        let pick = (index / f) as usize;
        index %= f;
        out.push(pool.remove(pick));
    }
    out
}

/// Evaluate every permutation of the active types and return the
/// minimizer. Infeasible shops yield `best: None` for every method.
pub fn exhaustive_search(cfg: &BakeryConfig, opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let mut active = cfg.active_types();
    active.sort_unstable();
    let j_count = active.len();
    if j_count == 0 {
        return Ok(SearchResult {
            best: Some((Schedule(Vec::new()), ExtReal::finite(0.0))),
            evaluated: 0,
            table: opts.keep_table.then(Vec::new),
            cache_build: Duration::ZERO,
            enumeration: Duration::ZERO,
            method: opts.method,
        });
    }
    let count = factorial(j_count);
    if j_count > opts.max_types {
        return Err(SearchError::TooManyTypes { types: j_count, count, limit: opts.max_types });
    }
    if let Some(cap) = opts.max_schedules {
        if count > cap {
            return Err(SearchError::TooManySchedules { count, cap });
        }
    }

    let mut cache_build = Duration::ZERO;
    let cache = if opts.method == Method::Fast {
        let started = Instant::now();
        match build_cache(cfg) {
            Ok(cache) => {
                cache_build = started.elapsed();
                Some(cache)
            }
            Err(SearchError::InfeasibleShop { .. }) => {
                return Ok(SearchResult {
                    best: None,
                    evaluated: 0,
                    table: opts.keep_table.then(Vec::new),
                    cache_build: started.elapsed(),
                    enumeration: Duration::ZERO,
                    method: opts.method,
                });
            }
            Err(other) => return Err(other),
        }
    } else {
        None
    };

    let started = Instant::now();
    let evaluate = |index: u64| -> Result<(ExtReal, Schedule), SearchError> {
        if let Some(budget) = opts.budget {
            if started.elapsed() > budget {
                return Err(SearchError::BudgetExhausted { budget_secs: budget.as_secs_f64() });
            }
        }
        let schedule = Schedule(permutation_by_index(&active, index));
        let result = match &cache {
            Some(cache) => fast_makespan(cache, &schedule),
            None => bakery_makespan(cfg, &schedule, opts.method, false)?,
        };
        Ok((result.makespan, schedule))
    };

    let best;
    let mut table = None;
    if opts.keep_table {
        let rows: Result<Vec<(ExtReal, Schedule)>, SearchError> =
            (0..count).into_par_iter().map(evaluate).collect();
        let rows = rows?;
        best = rows.iter().min().cloned();
        table = Some(rows.into_iter().map(|(makespan, schedule)| (schedule, makespan)).collect());
    } else {
        best = (0..count)
            .into_par_iter()
            .map(evaluate)
            .try_reduce_with(|a, b| Ok(a.min(b)))
            .transpose()?;
    }
    let enumeration = started.elapsed();
    let best = best.and_then(|(makespan, schedule)| {
        // +inf marks an infeasible evaluation; for this shop class either
        // all schedules are feasible or none is.
        (makespan != ExtReal::PosInf).then_some((schedule, makespan))
    });
    Ok(SearchResult { best, evaluated: count, table, cache_build, enumeration, method: opts.method })
}
