//! Constructive local-global principle for (E, q) with q of trivial Clifford
//! invariant: split E along a disconnection of its factor graph, start from the
//! canonical trace forms of both halves, equalize real signatures, recurse.

use serde::Serialize;

use super::connect::{factor_graph, Linkage};
use super::local::{exists_local_assignment, Instance, RealCounts};
use super::{Answer, Reason, Verdict};
use crate::arith::local::Place;
use crate::error::RealizabilityError;
use crate::etale::canonical_trace_form;
use crate::forms::{
    equivalent, is_trivial_clifford, orthogonal_difference, orthogonal_sum, realize_invariants, witt_split,
    DiagonalForm, WittInvariants,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopCase {
    I,
    II,
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopStep {
    pub case: LoopCase,
    pub before: [(usize, usize); 2],
    pub after: [(usize, usize); 2],
    pub variant_before: usize,
    pub variant_after: usize,
}

/// Pairs (a^i, b^i) with sig(q_i) = (2a^i + ρ^i, 2b^i + ρ^i), moved until a¹ + a² = r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureLoop {
    pub start: [(usize, usize); 2],
    /// a^i, b^i may not drop below the number of complex places of E_i.
    pub floors: [usize; 2],
    pub target: (usize, usize),
    pub steps: Vec<LoopStep>,
    pub end: [(usize, usize); 2],
}

fn swap(x: [(usize, usize); 2]) -> [(usize, usize); 2] {
    [(x[0].1, x[0].0), (x[1].1, x[1].0)]
}

/// The adjustment loop. Each step lowers the variant a¹ + a² − r by exactly 2
/// (or b¹ + b² − s when that side is too large).
pub fn adjust_signatures(
    start: [(usize, usize); 2],
    floors: [usize; 2],
    target: (usize, usize),
) -> Result<SignatureLoop, RealizabilityError> {
    let total = start[0].0 + start[0].1 + start[1].0 + start[1].1;
    if total != target.0 + target.1 {
        return Err(RealizabilityError::PreconditionFailed(format!("{start:?} cannot reach {target:?}")));
    }
    if (start[0].0 + start[1].0) % 2 != target.0 % 2 {
        return Err(RealizabilityError::PreconditionFailed(format!("parity of {start:?} differs from {target:?}")));
    }
    let mirrored = start[0].0 + start[1].0 < target.0;
    let (mut cur, goal) = if mirrored { (swap(start), target.1) } else { (start, target.0) };
    let orient = |x: [(usize, usize); 2]| if mirrored { swap(x) } else { x };
    let mut steps = Vec::new();
    while cur[0].0 + cur[1].0 > goal {
        let before = cur;
        let variant_before = cur[0].0 + cur[1].0 - goal;
        let case = if cur[0].0 >= floors[0] + 2 {
            cur[0] = (cur[0].0 - 2, cur[0].1 + 2);
            LoopCase::I
        } else if cur[1].0 >= floors[1] + 2 {
            cur[1] = (cur[1].0 - 2, cur[1].1 + 2);
            LoopCase::II
        } else if cur[0].0 > floors[0] && cur[1].0 > floors[1] {
            cur[0] = (cur[0].0 - 1, cur[0].1 + 1);
            cur[1] = (cur[1].0 - 1, cur[1].1 + 1);
            LoopCase::III
        } else {
            return Err(RealizabilityError::PreconditionFailed(format!(
                "signature loop stuck at {:?} with floors {floors:?}",
                orient(cur)
            )));
        };
        steps.push(LoopStep {
            case,
            before: orient(before),
            after: orient(cur),
            variant_before,
            variant_after: cur[0].0 + cur[1].0 - goal,
        });
    }
    Ok(SignatureLoop { start, floors, target, steps, end: orient(cur) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LgpSplit {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub form: WittInvariants,
    /// Canonical trace forms of the two halves.
    pub q1: WittInvariants,
    pub q2: WittInvariants,
    pub p1: WittInvariants,
    pub p2: WittInvariants,
    pub p1_form: DiagonalForm,
    pub p2_form: DiagonalForm,
    pub signature_loop: SignatureLoop,
    pub children: [LgpNode; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum LgpNode {
    /// A single field factor: the local-global principle holds.
    Field {
        factors: Vec<usize>,
        form: WittInvariants,
    },
    /// Switched pairs F × F absorbed by hyperbolic planes.
    Switched {
        factors: Vec<usize>,
        planes: usize,
        rest: Option<Box<LgpNode>>,
    },
    /// Linked factors: 𝒞(E,q) is connected.
    Connected {
        factors: Vec<usize>,
        form: WittInvariants,
        links: Vec<Linkage>,
    },
    Split(Box<LgpSplit>),
}

impl LgpNode {
    /// Topmost split, if any.
    pub fn first_split(&self) -> Option<&LgpSplit> {
        match self {
            LgpNode::Split(s) => Some(s),
            LgpNode::Switched { rest: Some(r), .. } => r.first_split(),
            _ => None,
        }
    }

    /// Every signature loop in the tree.
    pub fn loops(&self) -> Vec<&SignatureLoop> {
        match self {
            LgpNode::Split(s) => {
                let mut out = vec![&s.signature_loop];
                out.extend(s.children.iter().flat_map(LgpNode::loops));
                out
            }
            LgpNode::Switched { rest: Some(r), .. } => r.loops(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LgpResult {
    pub verdict: Verdict,
    pub tree: Option<LgpNode>,
}

enum Step {
    Done(LgpNode),
    Unknown(String),
}

/// Replace the real signature, keeping disc and the finite Hasse invariants.
fn with_signature(u: &WittInvariants, sig: (usize, usize)) -> WittInvariants {
    let mut w = u.clone();
    w.sig = sig;
    let s = sig.1;
    if (s * s.saturating_sub(1) / 2) % 2 == 1 {
        w.hasse.insert(Place::Real);
    } else {
        w.hasse.remove(&Place::Real);
    }
    w
}

fn half_sig(sig: (usize, usize), rho: usize) -> (usize, usize) {
    ((sig.0 - rho) / 2, (sig.1 - rho) / 2)
}

fn solve(inst: &Instance, q: &WittInvariants, idx: &[usize]) -> Result<Step, RealizabilityError> {
    let factors = inst.e.factors();
    if factors.len() == 1 {
        return Ok(Step::Done(LgpNode::Field { factors: idx.to_vec(), form: q.clone() }));
    }
    let switched: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].is_split()).collect();
    if !switched.is_empty() {
        let n2: usize = switched.iter().map(|&i| factors[i].degree()).sum();
        let (_, planes) = witt_split(q)?;
        if planes < n2 {
            return Err(RealizabilityError::PreconditionFailed(format!(
                "Witt index {planes} is smaller than the {n2} planes needed by switched factors"
            )));
        }
        let global: Vec<usize> = switched.iter().map(|&i| idx[i]).collect();
        if switched.len() == factors.len() {
            return Ok(Step::Done(LgpNode::Switched { factors: global, planes: n2, rest: None }));
        }
        let p = orthogonal_difference(q, &WittInvariants::hyperbolic(n2)).expect("Witt index suffices");
        let keep: Vec<usize> = (0..factors.len()).filter(|i| !switched.contains(i)).collect();
        let keep_idx: Vec<usize> = keep.iter().map(|&i| idx[i]).collect();
        return Ok(match solve(&inst.sub(&keep), &p, &keep_idx)? {
            Step::Done(node) => {
                Step::Done(LgpNode::Switched { factors: global, planes: n2, rest: Some(Box::new(node)) })
            }
            u => u,
        });
    }

    let graph = factor_graph(inst)?;
    if graph.is_connected() {
        let links = graph.links.iter().map(|l| Linkage { i: idx[l.i], j: idx[l.j], place: l.place }).collect();
        return Ok(Step::Done(LgpNode::Connected { factors: idx.to_vec(), form: q.clone(), links }));
    }
    let comps = graph.components();
    let left = comps[0].clone();
    let mut right: Vec<usize> = comps[1..].concat();
    right.sort_unstable();
    let (e1, e2) = (inst.sub(&left), inst.sub(&right));
    let q1 = canonical_trace_form(&e1.e)?.invariants;
    let q2 = canonical_trace_form(&e2.e)?.invariants;
    let sum = orthogonal_sum(&q1, &q2)?;
    if !is_trivial_clifford(&sum)? || sum.disc != q.disc {
        return Ok(Step::Unknown(format!(
            "factors {:?} and {:?} are not linked up to {} but q1 + q2 has nontrivial Clifford invariant",
            left, right, inst.bound
        )));
    }

    let (c1, c2, c) = (RealCounts::of(&e1.e), RealCounts::of(&e2.e), RealCounts::of(&inst.e));
    let lp = adjust_signatures(
        [half_sig(q1.sig, c1.rho), half_sig(q2.sig, c2.rho)],
        [c1.complex, c2.complex],
        half_sig(q.sig, c.rho),
    )?;
    if lp.steps.iter().any(|s| s.case == LoopCase::III) {
        return Ok(Step::Unknown(
            "signature loop needs a case (iii) step, which changes the real Hasse invariant of both halves".into(),
        ));
    }
    let sig_of = |(a, b): (usize, usize), rho: usize| (2 * a + rho, 2 * b + rho);
    let p1 = with_signature(&q1, sig_of(lp.end[0], c1.rho));
    let p2 = with_signature(&q2, sig_of(lp.end[1], c2.rho));
    let realize = |p: &WittInvariants| {
        realize_invariants(p).map_err(|e| RealizabilityError::PreconditionFailed(format!("{p}: {e}")))
    };
    let (p1_form, p2_form) = (realize(&p1)?, realize(&p2)?);
    let total = orthogonal_sum(&p1, &p2)?;
    if !equivalent(q, &total) {
        return Err(RealizabilityError::PreconditionFailed(format!("q = {q} but p1 + p2 = {total}")));
    }
    let left_idx: Vec<usize> = left.iter().map(|&i| idx[i]).collect();
    let right_idx: Vec<usize> = right.iter().map(|&i| idx[i]).collect();
    let a = match solve(&e1, &p1, &left_idx)? {
        Step::Done(n) => n,
        u => return Ok(u),
    };
    let b = match solve(&e2, &p2, &right_idx)? {
        Step::Done(n) => n,
        u => return Ok(u),
    };
    Ok(Step::Done(LgpNode::Split(Box::new(LgpSplit {
        left: left_idx,
        right: right_idx,
        form: q.clone(),
        q1,
        q2,
        p1,
        p2,
        p1_form,
        p2_form,
        signature_loop: lp,
        children: [a, b],
    }))))
}

/// Realizability of (E, q) for q with trivial Clifford invariant, realizable
/// at every place, with an explicit decomposition q ≅ p1 ⟂ p2 at each split.
pub fn lgp_trivial_clifford(inst: &Instance, q: &WittInvariants) -> Result<LgpResult, RealizabilityError> {
    if q.dim != inst.e.rank() {
        return Err(RealizabilityError::DimensionMismatch { form: q.dim, algebra: inst.e.rank() });
    }
    if !is_trivial_clifford(q)? {
        return Err(RealizabilityError::PreconditionFailed(format!("q = {q} has nontrivial Clifford invariant")));
    }
    let search = exists_local_assignment(inst, q)?;
    if !search.verdict.is_yes() {
        let failed: Vec<String> = search
            .verdict
            .failures()
            .map(|r| format!("{} at {}", r.condition, r.place.map_or("Q".to_string(), |p| p.to_string())))
            .collect();
        return Err(RealizabilityError::PreconditionFailed(format!("not locally realizable: {}", failed.join("; "))));
    }
    let mut reasons = vec![
        Reason::new(None, "q has trivial Clifford invariant", true),
        Reason::new(None, "(E_v, q_v) realizable at every place", true),
    ];
    let idx: Vec<usize> = (0..inst.e.factors().len()).collect();
    Ok(match solve(inst, q, &idx)? {
        Step::Done(node) => {
            reasons.push(Reason::new(None, "decomposition certified", true));
            LgpResult { verdict: Verdict::with_answer(Answer::Yes, reasons).witness("tree", &node), tree: Some(node) }
        }
        Step::Unknown(why) => {
            reasons.push(Reason::new(None, why, false));
            LgpResult {
                verdict: Verdict::with_answer(Answer::UnknownWithinBound, reasons).with_bound(inst.bound),
                tree: None,
            }
        }
    })
}
