//! Synthetic instances for tests and benchmarks.
//!
//! The real shop's window table is proprietary, so quantitative examples
//! are generated: small random SLDIs and shops for cross-method checks,
//! plus a fixed large shop at the case study's scale (975 products, 9
//! types, 12 batches).

use std::collections::BTreeMap;

use rand::Rng;

use crate::bakery::{BakeryConfig, MachineSpec, Window};
use crate::maxplus::{ExtReal, MaxPlusMatrix};
use crate::sldi::{ModeSpec, SldiInstance};

pub const MACHINE_NAMES: [&str; 7] =
    ["mixing", "dividing", "rounding", "pre-proofing", "rolling", "proofing", "baking"];

/// Random SLDI instance with integer entries, `2 ≤ n ≤ max_n`,
/// `2 ≤ K ≤ max_k` and up to three modes.
///
/// With `engineer_infeasible` a positive circuit that no single-window
/// validation can catch is planted: a forward chain `x_j(k+1) ≥ x_i(k)`,
/// `x_i − x_j ≥ 5` within the step, against an upper bound
/// `x_i(k+1) ≤ x_i(k) + 3`, closing a circuit of weight `+2`.
pub fn random_sldi(rng: &mut impl Rng, max_n: usize, max_k: usize, engineer_infeasible: bool) -> SldiInstance {
    let n = rng.random_range(2..=max_n.max(2));
    let k = rng.random_range(2..=max_k.max(2));
    let labels: Vec<String> = (1..=rng.random_range(1..=3)).map(|i| format!("m{i}")).collect();
    let mut modes = BTreeMap::new();
    for label in &labels {
        let mut a0 = MaxPlusMatrix::eps(n, n);
        let mut b0 = MaxPlusMatrix::top(n, n);
        let mut a1 = MaxPlusMatrix::eps(n, n);
        let mut b1 = MaxPlusMatrix::top(n, n);
        for i in 0..n {
            for j in 0..n {
                // Forward arcs (below the diagonal) may demand progress;
                // backward arcs stay nonpositive so most unengineered
                // instances admit a trajectory.
                if i != j && rng.random_bool(0.25) {
                    let v = if i > j { rng.random_range(-2..=4) } else { rng.random_range(-7..=-1) };
                    a0.set(i, j, ExtReal::finite(v as f64));
                }
                if rng.random_bool(if i == j { 0.7 } else { 0.2 }) {
                    let v = if i == j { rng.random_range(0..=3) } else { rng.random_range(-5..=1) };
                    a1.set(i, j, ExtReal::finite(v as f64));
                }
            }
        }
        // Keep most instances coupled end to end.
        if rng.random_bool(0.85) {
            for i in 0..n - 1 {
                let cur = a0.get(i + 1, i);
                a0.set(i + 1, i, cur.oplus(ExtReal::finite(rng.random_range(0..=3) as f64)));
            }
        }
        // Upper bounds come last so every sampled window is nonempty;
        // generous widths keep most unengineered instances feasible.
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.random_bool(0.10) {
                    let lo = a0.get(i, j).as_finite().unwrap_or(0.0);
                    b0.set(i, j, ExtReal::finite(lo + rng.random_range(4..=14) as f64));
                }
                if rng.random_bool(0.10) {
                    let lo = a1.get(i, j).as_finite().unwrap_or(0.0);
                    b1.set(i, j, ExtReal::finite(lo + rng.random_range(4..=14) as f64));
                }
            }
        }
        modes.insert(label.clone(), ModeSpec { a0, a1, b0, b1 });
    }
    let mut sequence: Vec<String> =
        (0..k).map(|_| labels[rng.random_range(0..labels.len())].clone()).collect();
    if engineer_infeasible {
        let label = &labels[0];
        let mode = modes.get_mut(label).unwrap();
        let i = 0;
        let j = 1;
        mode.a0.set(i, j, ExtReal::finite(5.0));
        mode.b0.set(i, j, ExtReal::PosInf);
        mode.a1.set(j, i, ExtReal::finite(0.0));
        mode.b1.set(j, i, ExtReal::PosInf);
        mode.a1.set(i, i, ExtReal::finite(0.0));
        mode.b1.set(i, i, ExtReal::finite(3.0));
        sequence[0] = label.clone();
        sequence[1] = label.clone();
    }
    SldiInstance::new(n, modes, sequence).expect("generated instance validates")
}

fn seven_stage_shop(
    mut processing: impl FnMut(usize, usize) -> Window,
    types: usize,
    transport_window: Window,
    capacities: Vec<u32>,
    quantities: Vec<u32>,
    clean_time: f64,
) -> BakeryConfig {
    let machines = MACHINE_NAMES
        .iter()
        .enumerate()
        .map(|(idx, name)| MachineSpec {
            name: (*name).into(),
            processing: (0..types).map(|j| processing(idx + 1, j)).collect(),
        })
        .collect();
    BakeryConfig {
        machines,
        transport: vec![
            Window::exact(0.0),
            Window::exact(0.0),
            Window::exact(0.0),
            Window::exact(0.0),
            transport_window,
            transport_window,
        ],
        capacities,
        quantities,
        clean_time,
    }
}

/// Small fixed two-type shop used across tests and docs.
pub fn toy_shop() -> BakeryConfig {
    seven_stage_shop(
        |m, j| {
            let base = (2 + m + j) as f64;
            if (2..=5).contains(&m) {
                Window::exact(base)
            } else {
                Window::new(base, base + 40.0)
            }
        },
        2,
        Window::new(1.0, 30.0),
        vec![2, 3],
        vec![3, 4],
        5.0,
    )
}

/// Random feasible shop: unit-stage durations are small relative to the
/// mixer and trolley slack, so batches can always regroup.
pub fn random_shop(rng: &mut impl Rng, types: usize, quantity_budget: u32) -> BakeryConfig {
    let per_type = (quantity_budget / types as u32).max(1);
    let quantities: Vec<u32> = (0..types).map(|_| rng.random_range(1..=per_type)).collect();
    let capacities: Vec<u32> = (0..types).map(|_| rng.random_range(1..=4)).collect();
    let unit: Vec<Vec<f64>> = (0..7)
        .map(|_| (0..types).map(|_| rng.random_range(1..=3) as f64).collect())
        .collect();
    let clean_time = rng.random_range(2..=10) as f64;
    let wide: Vec<Vec<Window>> = (0..7)
        .map(|m| {
            (0..types)
                .map(|_| {
                    let lo = rng.random_range(2..=8) as f64;
                    let width = rng.random_range(20..=50) as f64;
                    let _ = m;
                    Window::new(lo, lo + width)
                })
                .collect()
        })
        .collect();
    let t_lo = rng.random_range(1..=3) as f64;
    seven_stage_shop(
        |m, j| {
            if (2..=5).contains(&m) {
                Window::exact(unit[m - 1][j])
            } else {
                wide[m - 1][j]
            }
        },
        types,
        Window::new(t_lo, t_lo + rng.random_range(15..=30) as f64),
        capacities,
        quantities,
        clean_time,
    )
}

/// A shop that no schedule can run: a five-product batch must enter the
/// proofer together, but the rigid mixer window cannot spread the exits
/// the unit stages force apart.
pub fn infeasible_shop() -> BakeryConfig {
    seven_stage_shop(
        |m, j| {
            let base = (3 + j) as f64;
            if (2..=5).contains(&m) {
                Window::exact(2.0)
            } else {
                Window::exact(base + 2.0)
            }
        },
        1,
        Window::exact(2.0),
        vec![5],
        vec![5],
        4.0,
    )
}

/// The scale target: 975 products of 9 types in 12 batches.
///
/// Unit stages take a quarter minute per product, so a full batch of 100
/// spreads 24.75 minutes through the line — inside the mixer's 30-minute
/// exit window and the trolleys' slack. All values are dyadic rationals;
/// max-plus sums stay exact in any association order.
pub fn big_shop() -> BakeryConfig {
    let quantities = vec![100, 100, 100, 100, 100, 100, 100, 100, 175];
    let capacities = vec![100, 100, 100, 100, 100, 100, 100, 100, 50];
    seven_stage_shop(
        |m, j| match m {
            1 => Window::new(15.0, 45.0),
            6 => Window::new(40.0 + 2.0 * j as f64, 95.0 + 2.0 * j as f64),
            7 => Window::new(22.0 + j as f64, 50.0 + j as f64),
            _ => Window::exact(0.25),
        },
        9,
        Window::new(2.0, 30.0),
        capacities,
        quantities,
        25.0,
    )
}

/// Fixed-dimension chain for complexity measurements: one mode, `K`
/// identical steps, forward progress bounded above so the coupling
/// blocks stay nontrivial.
pub fn scaling_chain(k: usize) -> SldiInstance {
    let n = 4;
    let mut a0 = MaxPlusMatrix::eps(n, n);
    let mut b0 = MaxPlusMatrix::top(n, n);
    for i in 0..n - 1 {
        a0.set(i + 1, i, ExtReal::finite(1.0));
        b0.set(i + 1, i, ExtReal::finite(9.0));
    }
    let mut a1 = MaxPlusMatrix::eps(n, n);
    let mut b1 = MaxPlusMatrix::top(n, n);
    for i in 0..n {
        a1.set(i, i, ExtReal::finite(1.0));
        b1.set(i, i, ExtReal::finite(12.0));
    }
    a1.set(0, n - 1, ExtReal::finite(-2.0));
    let mut modes = BTreeMap::new();
    modes.insert("step".into(), ModeSpec { a0, a1, b0, b1 });
    SldiInstance::new(n, modes, vec!["step".into(); k]).expect("chain validates")
}
