//! Shared oracles and generators for the integration suites.
//!
//! The star/feasibility oracles here deliberately avoid the library's
//! Floyd-Warshall sweep: they expand the defining power series with
//! plain max-plus products, so they can vouch for it.
#![allow(dead_code)] // each test target uses its own subset

use tropflow::maxplus::{ExtReal, MaxPlusMatrix};

/// `⊕_{r=1}^{n} A^r`, the closure over nonempty paths.
fn power_sum(a: &MaxPlusMatrix) -> MaxPlusMatrix {
    let n = a.rows();
    let mut sum = a.clone();
    let mut power = a.clone();
    for _ in 2..=n {
        power = power.otimes(a);
        sum = sum.oplus(&power);
    }
    sum
}

/// Positive-circuit test from the power series: some closed walk of
/// length <= n has positive weight iff a positive circuit exists.
pub fn brute_has_positive_circuit(a: &MaxPlusMatrix) -> bool {
    let closure = power_sum(a);
    (0..a.rows()).any(|i| closure.get(i, i) > ExtReal::finite(0.0))
}

/// Kleene star by truncated power series: valid when no positive
/// circuit exists, since longer walks then never beat simple paths.
pub fn brute_star(a: &MaxPlusMatrix) -> Option<MaxPlusMatrix> {
    if brute_has_positive_circuit(a) {
        return None;
    }
    Some(power_sum(a).oplus(&MaxPlusMatrix::identity(a.rows())))
}

/// Random `ℝ_max` matrix with small integer entries.
pub fn random_rmax(rng: &mut impl rand::Rng, n: usize, density: f64, lo: i64, hi: i64) -> MaxPlusMatrix {
    MaxPlusMatrix::from_fn(n, n, |_, _| {
        if rng.random_bool(density) {
            ExtReal::finite(rng.random_range(lo..=hi) as f64)
        } else {
            ExtReal::NegInf
        }
    })
}

/// Stack per-step vectors into the `Kn x 1` column used by `M_v ⊗ x̃ ⪯ x̃`.
pub fn stack_column(xs: &[Vec<f64>]) -> MaxPlusMatrix {
    let flat: Vec<ExtReal> = xs.iter().flatten().map(|&v| ExtReal::finite(v)).collect();
    MaxPlusMatrix::new(flat.len(), 1, flat)
}
