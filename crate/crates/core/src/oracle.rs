//! Independent verifier: the makespan as a longest path.
//!
//! `M_v ⊗ x̃ ⪯ x̃` is a plain difference-constraint system, so the minimal
//! `x̃_{Kn} − x̃_1` is the maximum-weight path from node 1 to node `Kn` of
//! the precedence graph, computable by Bellman-Ford relaxation with no
//! max-plus machinery. The solvers in [`crate::sldi`] and
//! [`crate::block`] are cross-checked against this route.

use crate::maxplus::ExtReal;
use crate::maxplus::MaxPlusMatrix;
use crate::sldi::{assemble_mv, MakespanResult, Method, SldiInstance, Witness};

/// Arc list of a precedence graph; arc `j → i` with weight `A_{ij}` per
/// finite entry.
#[derive(Clone, Debug)]
pub struct ConstraintGraph {
    pub node_count: usize,
    /// `(src, dst, weight)` triples, weights finite.
    pub arcs: Vec<(usize, usize, f64)>,
}

/// Outcome of a longest-path query.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathOutcome {
    Value(f64),
    /// Some circuit of positive weight exists anywhere in the graph;
    /// `node` lies on one such circuit.
    PositiveCycle { node: usize },
    Unreachable,
}

/// Build the precedence graph of a square `ℝ_max` matrix.
pub fn to_graph(matrix: &MaxPlusMatrix) -> ConstraintGraph {
    assert_eq!(matrix.rows(), matrix.cols(), "precedence graph of a non-square matrix");
    let n = matrix.rows();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            match matrix.get(i, j) {
                ExtReal::Finite(w) => arcs.push((j, i, w)),
                ExtReal::NegInf => {}
                ExtReal::PosInf => panic!("precedence graph of a matrix with +inf entries"),
            }
        }
    }
    ConstraintGraph { node_count: n, arcs }
}

/// Maximum path weight from `src` to `dst` by Bellman-Ford relaxation.
///
/// Detection is global, not restricted to the src→dst corridor: one
/// positive circuit anywhere already makes the underlying inequality
/// system unsolvable. A first pass therefore relaxes from a virtual
/// source attached to every node (all distances start at 0), which
/// reaches circuits that `src` cannot; the value pass then runs from
/// `src` alone.
pub fn bf_longest_path(graph: &ConstraintGraph, src: usize, dst: usize) -> PathOutcome {
    let n = graph.node_count;
    assert!(src < n && dst < n, "node out of range");
    if let Some(node) = find_positive_cycle(graph) {
        return PathOutcome::PositiveCycle { node };
    }
    let mut dist = vec![f64::NEG_INFINITY; n];
    dist[src] = 0.0;
    // No positive circuit left: converges within |V|-1 rounds.
    for _ in 1..n {
        let mut updated = false;
        for &(u, v, w) in &graph.arcs {
            if dist[u] != f64::NEG_INFINITY && dist[u] + w > dist[v] {
                dist[v] = dist[u] + w;
                updated = true;
            }
        }
        if !updated {
            break;
        }
    }
    if dist[dst] == f64::NEG_INFINITY {
        PathOutcome::Unreachable
    } else {
        PathOutcome::Value(dist[dst])
    }
}

/// One node on a positive-weight circuit, if any circuit exists.
///
/// `|V|−1` relaxation rounds from the virtual source plus one detection
/// round; an arc still relaxable afterwards can only be fed by a circuit
/// of positive weight, and walking `|V|` predecessor steps back from it
/// lands on one.
fn find_positive_cycle(graph: &ConstraintGraph) -> Option<usize> {
    let n = graph.node_count;
    let mut dist = vec![0.0f64; n];
    let mut pred = vec![usize::MAX; n];
    for _ in 1..n {
        let mut updated = false;
        for &(u, v, w) in &graph.arcs {
            if dist[u] + w > dist[v] {
                dist[v] = dist[u] + w;
                pred[v] = u;
                updated = true;
            }
        }
        if !updated {
            return None;
        }
    }
    for &(u, v, w) in &graph.arcs {
        if dist[u] + w > dist[v] {
            pred[v] = u;
            let mut node = v;
            for _ in 0..n {
                if pred[node] == usize::MAX {
                    break;
                }
                node = pred[node];
            }
            return Some(node);
        }
    }
    None
}

/// Solve an instance end to end through the graph route.
pub fn oracle_makespan(inst: &SldiInstance) -> MakespanResult {
    let mv = assemble_mv(inst);
    let graph = to_graph(&mv);
    match bf_longest_path(&graph, 0, graph.node_count - 1) {
        PathOutcome::Value(v) => MakespanResult::feasible(Method::Oracle, ExtReal::finite(v), None),
        PathOutcome::Unreachable => MakespanResult::feasible(Method::Oracle, ExtReal::NegInf, None),
        PathOutcome::PositiveCycle { node } => {
            MakespanResult::infeasible(Method::Oracle, Witness::Circuit { node })
        }
    }
}
