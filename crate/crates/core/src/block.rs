//! Structured makespan solver for the block-tridiagonal `M_v`.
//!
//! Instead of starring the full `Kn × Kn` matrix, the chain of step
//! blocks `(C_k, I_k, P_k)` is reduced to `n × n` quantities:
//!
//! ```text
//! ℙ_i = C_i* P_i C_{i+1}*          (backward coupling)
//! 𝕀_i = C_{i+1}* I_i C_i*          (forward coupling)
//! ℂ_i = ℙ_i (ℂ_{i+1})* 𝕀_i         (ℂ_{K−1} = ℙ_{K−1} 𝕀_{K−1})
//! 𝕄   = 𝕀_{K−1} ℂ*_{K−1} ⋯ 𝕀_1 ℂ*_1
//! ```
//!
//! The system is solvable iff every `𝒢(C_k)` and every `𝒢(ℂ_i)` is in Γ,
//! and then the makespan is `𝕄_{n,1}`. The nested definition of `ℂ_i`
//! is evaluated once, backwards, reusing the inner star, so the whole
//! computation is Θ(K) products of `n × n` matrices — O(Kn³) — instead
//! of the dense route's O(K³n³).

use crate::maxplus::{MaxPlusMatrix, StarError};
use crate::sldi::{reduce_mode, MakespanResult, Method, SldiInstance, Witness};

/// The reduced step matrices of a mode sequence.
#[derive(Clone, Debug)]
pub struct BlockChain {
    n: usize,
    /// `C_k = A⁰ ⊕ B⁰♯`, one per step.
    pub c: Vec<MaxPlusMatrix>,
    /// `I_k = A¹`, one per step transition (`K−1` entries).
    pub i: Vec<MaxPlusMatrix>,
    /// `P_k = B¹♯`, one per step transition (`K−1` entries).
    pub p: Vec<MaxPlusMatrix>,
}

impl BlockChain {
    pub fn new(c: Vec<MaxPlusMatrix>, i: Vec<MaxPlusMatrix>, p: Vec<MaxPlusMatrix>) -> Self {
        assert!(!c.is_empty(), "a chain has at least one step");
        assert_eq!(i.len() + 1, c.len());
        assert_eq!(p.len() + 1, c.len());
        let n = c[0].rows();
        for m in c.iter().chain(&i).chain(&p) {
            assert_eq!((m.rows(), m.cols()), (n, n), "all chain blocks share one dimension");
        }
        Self { n, c, i, p }
    }

    pub fn from_instance(inst: &SldiInstance) -> Self {
        let k_steps = inst.len();
        let mut c = Vec::with_capacity(k_steps);
        let mut i = Vec::with_capacity(k_steps.saturating_sub(1));
        let mut p = Vec::with_capacity(k_steps.saturating_sub(1));
        for k in 0..k_steps {
            let reduced = reduce_mode(inst.mode(k));
            c.push(reduced.c);
            if k + 1 < k_steps {
                i.push(reduced.i);
                p.push(reduced.p);
            }
        }
        Self::new(c, i, p)
    }

    /// Step count `K`.
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// Everything the reduction produces for a feasible chain.
#[derive(Clone, Debug)]
pub struct ReducedChain {
    /// `C_k*`, `K` entries.
    pub cstar: Vec<MaxPlusMatrix>,
    /// `ℙ_i`, `K−1` entries.
    pub pp: Vec<MaxPlusMatrix>,
    /// `𝕀_i`, `K−1` entries.
    pub ii: Vec<MaxPlusMatrix>,
    /// `ℂ_i`, `K−1` entries.
    pub cc: Vec<MaxPlusMatrix>,
    /// `ℂ_i*`, `K−1` entries.
    pub ccstar: Vec<MaxPlusMatrix>,
    /// `𝕄`; for `K = 1` this is `C_1*`.
    pub m: MaxPlusMatrix,
}

fn witness_node(err: StarError) -> usize {
    match err {
        StarError::PositiveCircuit { node } => node,
        other => panic!("chain blocks must be square R_max: {other}"),
    }
}

/// Run the block reduction; fails with the first infeasible block.
pub fn block_feasible(chain: &BlockChain) -> Result<ReducedChain, Witness> {
    let k_steps = chain.len();
    let mut cstar = Vec::with_capacity(k_steps);
    for (k, c) in chain.c.iter().enumerate() {
        let star = c
            .kleene_star()
            .map_err(|e| Witness::Step { k, node: witness_node(e) })?;
        cstar.push(star);
    }
    let trans = k_steps - 1;
    let mut pp = Vec::with_capacity(trans);
    let mut ii = Vec::with_capacity(trans);
    for idx in 0..trans {
        pp.push(cstar[idx].otimes(&chain.p[idx]).otimes(&cstar[idx + 1]));
        ii.push(cstar[idx + 1].otimes(&chain.i[idx]).otimes(&cstar[idx]));
    }
    // Backward sweep: `inner` carries the star of the level below, so each
    // ℂ_i costs O(1) products. Re-expanding the nest instead would be Θ(K²).
    let mut cc = vec![MaxPlusMatrix::eps(0, 0); trans];
    let mut ccstar = vec![MaxPlusMatrix::eps(0, 0); trans];
    let mut inner = MaxPlusMatrix::identity(chain.n);
    for idx in (0..trans).rev() {
        let c_block = pp[idx].otimes(&inner).otimes(&ii[idx]);
        let star = c_block
            .kleene_star()
            .map_err(|e| Witness::Coupling { i: idx, node: witness_node(e) })?;
        cc[idx] = c_block;
        inner = star.clone();
        ccstar[idx] = star;
    }
    // 𝕄, associated right to left so the product grows from ℂ_1*.
    let mut m = if trans == 0 { cstar[0].clone() } else { ccstar[0].clone() };
    for idx in 0..trans {
        if idx > 0 {
            m = ccstar[idx].otimes(&m);
        }
        m = ii[idx].otimes(&m);
    }
    Ok(ReducedChain { cstar, pp, ii, cc, ccstar, m })
}

/// Makespan through the block reduction. No trajectory is produced on
/// this route; use the dense solver when one is needed.
pub fn block_makespan(chain: &BlockChain) -> MakespanResult {
    match block_feasible(chain) {
        Ok(reduced) => {
            let makespan = reduced.m.get(chain.dim() - 1, 0);
            MakespanResult::feasible(Method::Block, makespan, None)
        }
        Err(witness) => MakespanResult::infeasible(Method::Block, witness),
    }
}

/// Convenience: reduce an instance and solve.
pub fn block_makespan_of(inst: &SldiInstance) -> MakespanResult {
    block_makespan(&BlockChain::from_instance(inst))
}

/// The `(1,1)` and `(K,1)` blocks of `M_v*` from the reduction alone:
/// `𝓜¹¹ = C_1* ℂ_1* C_1*` and `𝓜^{K1} = 𝕄`.
pub fn corner_blocks(chain: &BlockChain) -> Result<(MaxPlusMatrix, MaxPlusMatrix), Witness> {
    let reduced = block_feasible(chain)?;
    let m11 = if chain.len() == 1 {
        reduced.cstar[0].clone()
    } else {
        reduced.cstar[0].otimes(&reduced.ccstar[0]).otimes(&reduced.cstar[0])
    };
    Ok((m11, reduced.m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxplus::ExtReal;
    use crate::sldi::{assemble_mv, dense_makespan, ModeSpec};
    use std::collections::BTreeMap;

    fn m(s: &str) -> MaxPlusMatrix {
        s.parse().unwrap()
    }

    fn chain1(c: &str, i: &[&str], p: &[&str]) -> BlockChain {
        let k = i.len() + 1;
        BlockChain::new(
            vec![m(c); k],
            i.iter().map(|s| m(s)).collect(),
            p.iter().map(|s| m(s)).collect(),
        )
    }

    #[test]
    fn eps_couplings_decouple_the_nest() {
        let e = "-inf";
        let chain = chain1("0", &["5", "5"], &[e, e]);
        let reduced = block_feasible(&chain).unwrap();
        for cc in &reduced.cc {
            assert_eq!(*cc, MaxPlusMatrix::eps(1, 1));
        }
        assert_eq!(reduced.m, m("10"));
        // With every coupling gone the (1,1) corner is just C_1*.
        let (m11, _) = corner_blocks(&chain).unwrap();
        assert_eq!(m11, reduced.cstar[0]);
    }

    #[test]
    fn negative_coupling_is_feasible() {
        let chain = chain1("0", &["2"], &["-3"]);
        let reduced = block_feasible(&chain).unwrap();
        assert_eq!(reduced.cc[0], m("-1"));
        assert_eq!(block_makespan(&chain).makespan, ExtReal::finite(2.0));
    }

    #[test]
    fn positive_coupling_is_infeasible() {
        let chain = chain1("0", &["2"], &["-1"]);
        match block_feasible(&chain) {
            Err(Witness::Coupling { i: 0, .. }) => {}
            other => panic!("expected coupling witness, got {other:?}"),
        }
    }

    #[test]
    fn bad_step_block_is_witnessed() {
        let chain = BlockChain::new(vec![m("0"), m("1")], vec![m("0")], vec![m("-inf")]);
        match block_feasible(&chain) {
            Err(Witness::Step { k: 1, .. }) => {}
            other => panic!("expected step witness, got {other:?}"),
        }
    }

    #[test]
    fn single_step_uses_c_star() {
        let chain = BlockChain::new(vec![m("-inf,-inf;3,-inf")], vec![], vec![]);
        assert_eq!(block_makespan(&chain).makespan, ExtReal::finite(3.0));
        let (m11, mk1) = corner_blocks(&chain).unwrap();
        assert_eq!(m11, m("0,-inf;3,0"));
        assert_eq!(mk1, m11);
    }

    #[test]
    fn matches_dense_on_a_window_chain() {
        let mut modes = BTreeMap::new();
        modes.insert(
            "w".into(),
            ModeSpec {
                a0: m("-inf,-inf;1,-inf"),
                a1: m("2,-inf;-inf,2"),
                b0: m("+inf,+inf;4,+inf"),
                b1: m("+inf,+inf;+inf,6"),
            },
        );
        let inst =
            crate::sldi::SldiInstance::new(2, modes, vec!["w".into(), "w".into(), "w".into()])
                .unwrap();
        let dense = dense_makespan(&inst, false);
        let block = block_makespan_of(&inst);
        assert_eq!(dense.feasible, block.feasible);
        assert_eq!(dense.makespan, block.makespan);

        // And the corner identities against the dense star.
        let chain = BlockChain::from_instance(&inst);
        let star = assemble_mv(&inst).kleene_star().unwrap();
        let n = inst.n;
        let (m11, mk1) = corner_blocks(&chain).unwrap();
        assert_eq!(m11, star.block(0, 0, n, n));
        assert_eq!(mk1, star.block((inst.len() - 1) * n, 0, n, n));
    }
}
