//! Switched systems of max-plus linear-dual inequalities.
//!
//! An instance couples `K` event vectors `x(1), …, x(K) ∈ ℝⁿ` through a
//! mode sequence `v`: within step `k` every pair of events is constrained
//! by the window matrices `A⁰ ≤ x_i(k) − x_j(k) ≤ B⁰` of mode `v_k`, and
//! consecutive steps by `A¹ ≤ x_i(k+1) − x_j(k) ≤ B¹`.
//!
//! Residuation (`x ⪯ A♯ ⊠ y ⇔ A ⊗ x ⪯ y`) turns all upper bounds into
//! max-plus lower bounds, so the whole system collapses to one inequality
//! `M_v ⊗ x̃ ⪯ x̃` over the stacked vector `x̃`. Solvability is membership
//! of `𝒢(M_v)` in Γ, and the minimal makespan `x_n(K) − x_1(1)` is entry
//! `(Kn, 1)` of `M_v*`, with the first column of `M_v*` as an optimal
//! trajectory.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::maxplus::{ExtReal, MaxPlusMatrix, StarError};

/// One operating mode: the four constraint matrices of a step.
///
/// `a0`, `a1` carry lower bounds (`ℝ_max`, no `+∞`); `b0`, `b1` carry
/// upper bounds (`ℝ_min`, no `−∞`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModeSpec {
    pub a0: MaxPlusMatrix,
    pub a1: MaxPlusMatrix,
    pub b0: MaxPlusMatrix,
    pub b1: MaxPlusMatrix,
}

impl ModeSpec {
    /// A mode with no constraints at all.
    pub fn unconstrained(n: usize) -> Self {
        Self {
            a0: MaxPlusMatrix::eps(n, n),
            a1: MaxPlusMatrix::eps(n, n),
            b0: MaxPlusMatrix::top(n, n),
            b1: MaxPlusMatrix::top(n, n),
        }
    }

    fn validate(&self, label: &str, n: usize) -> Result<(), SldiError> {
        let sides: [(&'static str, &MaxPlusMatrix, bool); 4] = [
            ("a0", &self.a0, true),
            ("a1", &self.a1, true),
            ("b0", &self.b0, false),
            ("b1", &self.b1, false),
        ];
        for (name, m, is_lower) in sides {
            if m.rows() != n || m.cols() != n {
                return Err(SldiError::WrongDimension {
                    label: label.to_owned(),
                    matrix: name,
                    rows: m.rows(),
                    cols: m.cols(),
                    n,
                });
            }
            let bad = if is_lower { m.first_pos_inf() } else { m.first_neg_inf() };
            if let Some((row, col)) = bad {
                return Err(SldiError::ForbiddenInfinity {
                    label: label.to_owned(),
                    matrix: name,
                    row,
                    col,
                    lower_side: is_lower,
                });
            }
        }
        for (scope, lo, hi) in [("within-step", &self.a0, &self.b0), ("between-step", &self.a1, &self.b1)] {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (lo.get(i, j).as_finite(), hi.get(i, j).as_finite()) {
                        if a > b {
                            return Err(SldiError::EmptyWindow {
                                label: label.to_owned(),
                                scope,
                                row: i,
                                col: j,
                                lower: a,
                                upper: b,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A mode alphabet plus a finite sequence over it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SldiInstance {
    /// Event-vector dimension.
    pub n: usize,
    pub modes: BTreeMap<String, ModeSpec>,
    pub sequence: Vec<String>,
}

impl SldiInstance {
    pub fn new(
        n: usize,
        modes: BTreeMap<String, ModeSpec>,
        sequence: Vec<String>,
    ) -> Result<Self, SldiError> {
        let inst = Self { n, modes, sequence };
        inst.validate()?;
        Ok(inst)
    }

    /// Number of steps `K`.
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Mode of step `k` (0-based). Panics on an unvalidated label.
    pub fn mode(&self, k: usize) -> &ModeSpec {
        &self.modes[&self.sequence[k]]
    }

    pub fn validate(&self) -> Result<(), SldiError> {
        if self.n == 0 {
            return Err(SldiError::ZeroDimension);
        }
        if self.sequence.is_empty() {
            return Err(SldiError::EmptySequence);
        }
        for (label, mode) in &self.modes {
            mode.validate(label, self.n)?;
        }
        for (position, label) in self.sequence.iter().enumerate() {
            if !self.modes.contains_key(label) {
                return Err(SldiError::UnknownMode { position, label: label.clone() });
            }
        }
        Ok(())
    }

    /// Violations of the permutation-flow-shop ordering conditions
    /// `(A⁰_{v_k})_{i+1,i} ≥ 0` and `(A¹_{v_k})_{ii} ≥ 0`.
    ///
    /// These conditions are sufficient, not necessary: a model may imply
    /// the event ordering without carrying the entries explicitly.
    pub fn permutation_flow_shop_violations(&self) -> Vec<String> {
        let zero = ExtReal::finite(0.0);
        let mut out = Vec::new();
        for (k, label) in self.sequence.iter().enumerate() {
            let mode = &self.modes[label];
            for i in 0..self.n - 1 {
                if mode.a0.get(i + 1, i) < zero {
                    out.push(format!("step {}: a0[{},{}] < 0 in mode {label}", k + 1, i + 2, i + 1));
                }
            }
            if k + 1 < self.len() {
                for i in 0..self.n {
                    if mode.a1.get(i, i) < zero {
                        out.push(format!("step {}: a1[{0},{0}] < 0 in mode {label}", k + 1));
                    }
                }
            }
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self, SldiError> {
        let inst: Self = serde_json::from_str(text)?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SldiError {
    #[error("mode {label}: {matrix} is {rows}x{cols}, expected {n}x{n}")]
    WrongDimension { label: String, matrix: &'static str, rows: usize, cols: usize, n: usize },
    #[error("mode {label}: {matrix}[{row},{col}] is {}", if *.lower_side { "+inf (lower bounds live in R_max)" } else { "-inf (upper bounds live in R_min)" })]
    ForbiddenInfinity { label: String, matrix: &'static str, row: usize, col: usize, lower_side: bool },
    #[error("mode {label}: empty {scope} window at ({row},{col}): lower bound {lower} exceeds upper bound {upper}")]
    EmptyWindow { label: String, scope: &'static str, row: usize, col: usize, lower: f64, upper: f64 },
    #[error("sequence position {position}: unknown mode {label:?}")]
    UnknownMode { position: usize, label: String },
    #[error("mode sequence is empty")]
    EmptySequence,
    #[error("event dimension n must be at least 1")]
    ZeroDimension,
    #[error("trajectory has {got} steps, expected {expected}")]
    TrajectoryLength { got: usize, expected: usize },
    #[error("trajectory step {k} has {got} events, expected {expected}")]
    TrajectoryWidth { k: usize, got: usize, expected: usize },
    #[error("invalid instance document: {0}")]
    Json(String),
}

impl From<serde_json::Error> for SldiError {
    fn from(e: serde_json::Error) -> Self {
        SldiError::Json(e.to_string())
    }
}

/// Which solver produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Kleene star of the assembled `M_v` (O(K³n³), yields trajectories).
    Dense,
    /// Block recursion over the tridiagonal structure (O(Kn³)).
    Block,
    /// Segment/boundary cache on top of the block recursion.
    Fast,
    /// Bellman-Ford longest path on the precedence graph.
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Dense, Method::Block, Method::Fast, Method::Oracle];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Dense => "dense",
            Method::Block => "block",
            Method::Fast => "fast",
            Method::Oracle => "oracle",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dense" => Ok(Method::Dense),
            "block" => Ok(Method::Block),
            "fast" => Ok(Method::Fast),
            "oracle" => Ok(Method::Oracle),
            other => Err(format!("unknown method {other:?} (expected dense|block|fast|oracle)")),
        }
    }
}

/// Where an infeasibility was detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// Node of the assembled `Kn`-node precedence graph on a positive circuit.
    Circuit { node: usize },
    /// The within-step matrix `C_k` of step `k` (0-based) fails the star.
    Step { k: usize, node: usize },
    /// The coupling block between steps `i` and `i+1` (0-based) fails the star.
    Coupling { i: usize, node: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Circuit { node } => write!(f, "positive circuit through graph node {}", node + 1),
            Witness::Step { k, node } => {
                write!(f, "positive circuit in step {} (event {})", k + 1, node + 1)
            }
            Witness::Coupling { i, node } => write!(
                f,
                "positive circuit coupling steps {} and {} (event {})",
                i + 1,
                i + 2,
                node + 1
            ),
        }
    }
}

/// Outcome of a makespan computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MakespanResult {
    pub feasible: bool,
    pub makespan: ExtReal,
    /// `K` event vectors, present only when requested and fully finite.
    pub trajectory: Option<Vec<Vec<f64>>>,
    pub solver: Method,
    pub witness: Option<Witness>,
    /// Feasible, but the last event is not reachable from the first:
    /// the reported makespan is `−∞`.
    pub decoupled: bool,
}

impl MakespanResult {
    pub fn feasible(solver: Method, makespan: ExtReal, trajectory: Option<Vec<Vec<f64>>>) -> Self {
        Self {
            feasible: true,
            decoupled: makespan == ExtReal::NegInf,
            makespan,
            trajectory,
            solver,
            witness: None,
        }
    }

    pub fn infeasible(solver: Method, witness: Witness) -> Self {
        Self {
            feasible: false,
            makespan: ExtReal::PosInf,
            trajectory: None,
            solver,
            witness: Some(witness),
            decoupled: false,
        }
    }

    /// Finite makespan value, if there is one.
    pub fn value(&self) -> Option<f64> {
        if self.feasible {
            self.makespan.as_finite()
        } else {
            None
        }
    }
}

/// The reduced step matrices `C = A⁰ ⊕ B⁰♯`, `I = A¹`, `P = B¹♯`.
///
/// All three live in `ℝ_max`; the conjugations move the upper bounds to
/// the lower-bound side.
#[derive(Clone, Debug)]
pub struct ReducedMode {
    pub c: MaxPlusMatrix,
    pub i: MaxPlusMatrix,
    pub p: MaxPlusMatrix,
}

pub fn reduce_mode(mode: &ModeSpec) -> ReducedMode {
    ReducedMode {
        c: mode.a0.oplus(&mode.b0.sharp()),
        i: mode.a1.clone(),
        p: mode.b1.sharp(),
    }
}

/// Assemble the block-tridiagonal `M_v ∈ ℝ_max^{Kn×Kn}`:
/// diagonal `C_k`, subdiagonal `I_k`, superdiagonal `P_k`.
pub fn assemble_mv(inst: &SldiInstance) -> MaxPlusMatrix {
    let n = inst.n;
    let k_steps = inst.len();
    let mut mv = MaxPlusMatrix::eps(k_steps * n, k_steps * n);
    for k in 0..k_steps {
        let reduced = reduce_mode(inst.mode(k));
        mv.paste(k * n, k * n, &reduced.c);
        if k + 1 < k_steps {
            mv.paste(k * n, (k + 1) * n, &reduced.p);
            mv.paste((k + 1) * n, k * n, &reduced.i);
        }
    }
    mv
}

/// Solve by the dense route: star of the assembled `M_v`.
///
/// Feasible iff `𝒢(M_v) ∈ Γ`; the makespan is `(M_v*)_{Kn,1}` and the
/// first column of `M_v*` is an optimal trajectory normalized to
/// `x_1(1) = 0`. The trajectory is omitted when any of its entries is
/// `−∞` (events not coupled to the first one).
pub fn dense_makespan(inst: &SldiInstance, want_trajectory: bool) -> MakespanResult {
    let mv = assemble_mv(inst);
    let star = match mv.kleene_star() {
        Ok(star) => star,
        Err(StarError::PositiveCircuit { node }) => {
            return MakespanResult::infeasible(Method::Dense, Witness::Circuit { node });
        }
        Err(e) => panic!("assembled M_v must be square R_max: {e}"),
    };
    let kn = star.rows();
    let makespan = star.get(kn - 1, 0);
    let trajectory = if want_trajectory {
        let column: Option<Vec<f64>> = (0..kn).map(|r| star.get(r, 0).as_finite()).collect();
        column.map(|flat| flat.chunks(inst.n).map(<[f64]>::to_vec).collect())
    } else {
        None
    };
    MakespanResult::feasible(Method::Dense, makespan, trajectory)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

/// One violated window constraint; `slack` is negative by the amount of
/// the violation.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// Step `k` (0-based). For between-step constraints, the earlier step.
    pub step: usize,
    pub event_i: usize,
    pub event_j: usize,
    pub between_steps: bool,
    pub side: BoundSide,
    pub slack: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (side, scope) = match (self.side, self.between_steps) {
            (BoundSide::Lower, false) => ("lower", "within step"),
            (BoundSide::Upper, false) => ("upper", "within step"),
            (BoundSide::Lower, true) => ("lower", "between steps"),
            (BoundSide::Upper, true) => ("upper", "between steps"),
        };
        write!(
            f,
            "{scope} {}: {side} bound on x_{} - x_{} violated (slack {:.6})",
            self.step + 1,
            self.event_i + 1,
            self.event_j + 1,
            self.slack
        )
    }
}

/// Check a candidate trajectory against every window of the instance.
///
/// Returns the empty list iff the trajectory is consistent within `tol`.
pub fn check_trajectory(
    inst: &SldiInstance,
    xs: &[Vec<f64>],
    tol: f64,
) -> Result<Vec<Violation>, SldiError> {
    if xs.len() != inst.len() {
        return Err(SldiError::TrajectoryLength { got: xs.len(), expected: inst.len() });
    }
    for (k, x) in xs.iter().enumerate() {
        if x.len() != inst.n {
            return Err(SldiError::TrajectoryWidth { k, got: x.len(), expected: inst.n });
        }
    }
    let mut violations = Vec::new();
    let check = |step: usize,
                     between: bool,
                     lo: &MaxPlusMatrix,
                     hi: &MaxPlusMatrix,
                     xi: &[f64],
                     xj: &[f64],
                     out: &mut Vec<Violation>| {
        for (i, &ti) in xi.iter().enumerate() {
            for (j, &tj) in xj.iter().enumerate() {
                let diff = ti - tj;
                if let Some(a) = lo.get(i, j).as_finite() {
                    if diff - a < -tol {
                        out.push(Violation {
                            step,
                            event_i: i,
                            event_j: j,
                            between_steps: between,
                            side: BoundSide::Lower,
                            slack: diff - a,
                        });
                    }
                }
                if let Some(b) = hi.get(i, j).as_finite() {
                    if b - diff < -tol {
                        out.push(Violation {
                            step,
                            event_i: i,
                            event_j: j,
                            between_steps: between,
                            side: BoundSide::Upper,
                            slack: b - diff,
                        });
                    }
                }
            }
        }
    };
    for k in 0..inst.len() {
        let mode = inst.mode(k);
        check(k, false, &mode.a0, &mode.b0, &xs[k], &xs[k], &mut violations);
        if k + 1 < inst.len() {
            check(k, true, &mode.a1, &mode.b1, &xs[k + 1], &xs[k], &mut violations);
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxplus::DEFAULT_TOLERANCE;

    fn m(s: &str) -> MaxPlusMatrix {
        s.parse().unwrap()
    }

    fn mode(a0: &str, a1: &str, b0: &str, b1: &str) -> ModeSpec {
        ModeSpec { a0: m(a0), a1: m(a1), b0: m(b0), b1: m(b1) }
    }

    /// n=1 chain: each step pinned to the previous by `x(k+1) ≥ x(k) + 5`.
    fn chain(k: usize) -> SldiInstance {
        let mut modes = BTreeMap::new();
        modes.insert("step".into(), mode("0", "5", "+inf", "+inf"));
        SldiInstance::new(1, modes, vec!["step".into(); k]).unwrap()
    }

    #[test]
    fn reduce_unconstrained_mode() {
        let r = reduce_mode(&ModeSpec::unconstrained(2));
        assert_eq!(r.c, MaxPlusMatrix::eps(2, 2));
        assert_eq!(r.i, MaxPlusMatrix::eps(2, 2));
        assert_eq!(r.p, MaxPlusMatrix::eps(2, 2));
    }

    #[test]
    fn reduce_folds_upper_bounds() {
        let md = mode("-inf,-inf;3,-inf", "-inf,-inf;-inf,-inf", "+inf,+inf;5,+inf", "+inf,+inf;+inf,+inf");
        let r = reduce_mode(&md);
        assert_eq!(r.c, m("-inf,-5;3,-inf"));
        assert_eq!(r.p, MaxPlusMatrix::eps(2, 2));
    }

    #[test]
    fn assemble_single_step_is_c1() {
        let mut modes = BTreeMap::new();
        modes.insert("a".into(), mode("-inf,-inf;3,-inf", "-inf,-inf;-inf,-inf", "+inf,+inf;+inf,+inf", "+inf,+inf;+inf,+inf"));
        let inst = SldiInstance::new(2, modes, vec!["a".into()]).unwrap();
        assert_eq!(assemble_mv(&inst), m("-inf,-inf;3,-inf"));
    }

    #[test]
    fn assemble_places_blocks() {
        let mut modes = BTreeMap::new();
        modes.insert("s".into(), mode("-inf", "5", "+inf", "+inf"));
        let inst = SldiInstance::new(1, modes, vec!["s".into(), "s".into()]).unwrap();
        assert_eq!(assemble_mv(&inst), m("-inf,-inf;5,-inf"));
        assert_eq!(assemble_mv(&chain(3)), m("0,-inf,-inf;5,0,-inf;-inf,5,0"));
    }

    #[test]
    fn dense_chain_makespan() {
        let r = dense_makespan(&chain(3), true);
        assert!(r.feasible);
        assert_eq!(r.makespan, ExtReal::finite(10.0));
        assert_eq!(r.trajectory.unwrap(), vec![vec![0.0], vec![5.0], vec![10.0]]);
    }

    #[test]
    fn dense_single_step_with_trajectory() {
        let mut modes = BTreeMap::new();
        modes.insert("a".into(), mode("-inf,-inf;3,-inf", "-inf,-inf;-inf,-inf", "+inf,+inf;+inf,+inf", "+inf,+inf;+inf,+inf"));
        let inst = SldiInstance::new(2, modes, vec!["a".into()]).unwrap();
        let r = dense_makespan(&inst, true);
        assert_eq!(r.makespan, ExtReal::finite(3.0));
        assert_eq!(r.trajectory.unwrap(), vec![vec![0.0, 3.0]]);
    }

    #[test]
    fn dense_window_circuit() {
        // x(2) >= x(1) + 2 and x(2) <= x(1) + 3: feasible, makespan 2.
        let mut modes = BTreeMap::new();
        modes.insert("w".into(), mode("0", "2", "+inf", "3"));
        let inst = SldiInstance::new(1, modes, vec!["w".into(), "w".into()]).unwrap();
        let r = dense_makespan(&inst, false);
        assert!(r.feasible);
        assert_eq!(r.makespan, ExtReal::finite(2.0));
    }

    #[test]
    fn dense_detects_positive_circuit() {
        // Per step x_2 >= x_1 + 2, forward x_1(k+1) >= x_2(k), but
        // x_1(k+1) <= x_1(k) + 1: circuit of weight 2 + 0 - 1 = 1.
        // No single window is empty, so validation passes.
        let windowed = |bound: f64| {
            let mut modes = BTreeMap::new();
            modes.insert(
                "w".into(),
                mode(
                    "-inf,-inf;2,-inf",
                    "-inf,0;-inf,-inf",
                    "+inf,+inf;+inf,+inf",
                    &format!("{bound},+inf;+inf,+inf"),
                ),
            );
            SldiInstance::new(2, modes, vec!["w".into(), "w".into()]).unwrap()
        };
        let r = dense_makespan(&windowed(1.0), false);
        assert!(!r.feasible);
        assert!(matches!(r.witness, Some(Witness::Circuit { .. })));
        // Loosening the bound past the circuit weight restores feasibility.
        let r = dense_makespan(&windowed(3.0), false);
        assert!(r.feasible);
        assert_eq!(r.makespan, ExtReal::finite(4.0));
    }

    #[test]
    fn dense_decoupled_flag() {
        let mut modes = BTreeMap::new();
        modes.insert("free".into(), ModeSpec::unconstrained(1));
        let inst = SldiInstance::new(1, modes, vec!["free".into(), "free".into()]).unwrap();
        let r = dense_makespan(&inst, false);
        assert!(r.feasible && r.decoupled);
        assert_eq!(r.makespan, ExtReal::NegInf);
    }

    #[test]
    fn trajectory_from_dense_checks_clean() {
        let inst = chain(4);
        let r = dense_makespan(&inst, true);
        let xs = r.trajectory.unwrap();
        assert!(check_trajectory(&inst, &xs, DEFAULT_TOLERANCE).unwrap().is_empty());
    }

    #[test]
    fn trajectory_violation_reports_slack() {
        let mut modes = BTreeMap::new();
        modes.insert("a".into(), mode("-inf,-inf;3,-inf", "-inf,-inf;-inf,-inf", "+inf,+inf;+inf,+inf", "+inf,+inf;+inf,+inf"));
        let inst = SldiInstance::new(2, modes, vec!["a".into()]).unwrap();
        let violations = check_trajectory(&inst, &[vec![0.0, 2.0]], DEFAULT_TOLERANCE).unwrap();
        assert_eq!(violations.len(), 1);
        let v = &violations[0];
        assert_eq!((v.event_i, v.event_j, v.side), (1, 0, BoundSide::Lower));
        assert!((v.slack - (-1.0)).abs() < 1e-12);
    }

    #[test]
    fn perturbation_within_slack_stays_clean() {
        // Lower bound 3, upper bound 5: x = (0, 4) sits strictly inside.
        let mut modes = BTreeMap::new();
        modes.insert("a".into(), mode("-inf,-inf;3,-inf", "-inf,-inf;-inf,-inf", "+inf,+inf;5,+inf", "+inf,+inf;+inf,+inf"));
        let inst = SldiInstance::new(2, modes, vec!["a".into()]).unwrap();
        assert!(check_trajectory(&inst, &[vec![0.0, 4.0]], DEFAULT_TOLERANCE).unwrap().is_empty());
    }

    #[test]
    fn validation_catches_empty_window() {
        let md = mode("-inf,-inf;3,-inf", "-inf,-inf;-inf,-inf", "+inf,+inf;2,+inf", "+inf,+inf;+inf,+inf");
        let mut modes = BTreeMap::new();
        modes.insert("bad".into(), md);
        let err = SldiInstance::new(2, modes, vec!["bad".into()]).unwrap_err();
        match err {
            SldiError::EmptyWindow { row, col, lower, upper, .. } => {
                assert_eq!((row, col), (1, 0));
                assert_eq!((lower, upper), (3.0, 2.0));
            }
            other => panic!("expected EmptyWindow, got {other}"),
        }
    }

    #[test]
    fn validation_catches_unknown_label() {
        let mut modes = BTreeMap::new();
        modes.insert("a".into(), ModeSpec::unconstrained(1));
        let err = SldiInstance::new(1, modes, vec!["a".into(), "b".into()]).unwrap_err();
        assert!(matches!(err, SldiError::UnknownMode { position: 1, .. }));
    }

    #[test]
    fn json_round_trip() {
        let inst = chain(2);
        let parsed = SldiInstance::from_json(&inst.to_json()).unwrap();
        assert_eq!(parsed.n, inst.n);
        assert_eq!(parsed.sequence, inst.sequence);
        assert_eq!(dense_makespan(&parsed, false).makespan, ExtReal::finite(5.0));
    }

    #[test]
    fn flow_shop_conditions() {
        assert!(chain(2).permutation_flow_shop_violations().is_empty());
        let mut modes = BTreeMap::new();
        modes.insert("s".into(), mode("0", "-1", "+inf", "+inf"));
        let inst = SldiInstance::new(1, modes, vec!["s".into(), "s".into()]).unwrap();
        assert_eq!(inst.permutation_flow_shop_violations().len(), 1);
    }
}
