//! Strong RdLi / LdRi commutativity and minimality of derivative multisegments.
//!
//! A triple `(Δ, Δ', π)` is strongly RdLi-commutative exactly when
//! `D_Δ(π) ≠ 0` and `η_Δ(I^L_{Δ'}(π)) = η_Δ(π)`; the multisegment version asks
//! this at every intermediate stage of the two ascending folds.

use crate::calculus::{derivative, derivative_seq, dual_rep, integral, integral_seq};
use crate::core::{downward_closure, iu_moves, order, IrrRep, Multisegment, OrderMode, Segment, Side};
use crate::error::{Error, Result};
use crate::invariants::{eta, EtaVector};

/// One `(i, j)` cell of a multisegment commutativity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub i: usize,
    pub j: usize,
    pub d: Segment,
    pub dp: Segment,
    /// `I_{𝔫_j} ∘ D_{𝔪_i}(π)`.
    pub rep: IrrRep,
    pub eta_before: EtaVector,
    pub eta_after: EtaVector,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommTriple {
    pub m: Multisegment,
    pub n: Multisegment,
    pub pi: IrrRep,
    pub verdict: bool,
    pub trace: Vec<TraceEntry>,
}

pub fn strongly_commutative(d: &Segment, dp: &Segment, pi: &IrrRep) -> bool {
    derivative(pi, d, Side::Right).is_some()
        && eta(&integral(pi, dp, Side::Left), d, Side::Right) == eta(pi, d, Side::Right)
}

/// Intermediates `D_{𝔪_i}(π)` for `i = 0..r-1`.
fn derivative_prefixes(pi: &IrrRep, m: &[Segment]) -> Vec<IrrRep> {
    let mut out = Vec::with_capacity(m.len());
    let mut cur = pi.clone();
    for d in m {
        out.push(cur.clone());
        match derivative(&cur, d, Side::Right) {
            Some(next) => cur = next,
            None => break,
        }
    }
    out
}

fn check_multi(m: &Multisegment, n: &Multisegment, pi: &IrrRep, full: bool) -> Result<CommTriple> {
    if derivative_seq(pi, m, Side::Right).is_none() {
        return Err(Error::VanishingDerivative(format!("D_{m}({pi})")));
    }
    let ms = order(m, OrderMode::Ascending);
    let ns = order(n, OrderMode::Ascending);
    let mut trace = Vec::new();
    let mut verdict = true;
    'grid: for (i, base) in derivative_prefixes(pi, &ms).into_iter().enumerate() {
        let d = ms[i];
        let mut sigma = base;
        for (j, dp) in ns.iter().enumerate() {
            let before = eta(&sigma, &d, Side::Right);
            let next = integral(&sigma, dp, Side::Left);
            let after = eta(&next, &d, Side::Right);
            let ok = before == after && before.comps[0] > 0;
            trace.push(TraceEntry {
                i,
                j,
                d,
                dp: *dp,
                rep: sigma,
                eta_before: before,
                eta_after: after,
                ok,
            });
            if !ok {
                verdict = false;
                if !full {
                    break 'grid;
                }
            }
            sigma = next;
        }
    }
    Ok(CommTriple { m: m.clone(), n: n.clone(), pi: pi.clone(), verdict, trace })
}

/// Full check of `(𝔪, 𝔫, π)` with a trace of every `(i, j)` cell.
pub fn strongly_commutative_multi(m: &Multisegment, n: &Multisegment, pi: &IrrRep) -> Result<CommTriple> {
    check_multi(m, n, pi, true)
}

/// Verdict only, stopping at the first failing cell.
pub fn is_strongly_commutative_multi(m: &Multisegment, n: &Multisegment, pi: &IrrRep) -> Result<bool> {
    Ok(check_multi(m, n, pi, false)?.verdict)
}

/// LdRi verdict for `(𝔫, 𝔪, τ)`: left derivatives by `𝔫`, right integrals by `𝔪`.
pub fn is_strongly_commutative_ldri(n: &Multisegment, m: &Multisegment, tau: &IrrRep) -> Result<bool> {
    is_strongly_commutative_multi(&n.dual(), &m.dual(), &dual_rep(tau))
}

/// `(𝔪, 𝔫, π) ↦ (𝔫, 𝔪, I_𝔫 ∘ D_𝔪(π))`, checking the transported LdRi verdict.
pub fn dual_transport(m: &Multisegment, n: &Multisegment, pi: &IrrRep) -> Result<(Multisegment, Multisegment, IrrRep)> {
    if !is_strongly_commutative_multi(m, n, pi)? {
        return Err(Error::NotCommutative(format!("({m}, {n}, {pi})")));
    }
    let d = derivative_seq(pi, m, Side::Right).expect("checked nonvanishing");
    let tau = integral_seq(&d, n, Side::Left);
    if !is_strongly_commutative_ldri(n, m, &tau)? {
        return Err(Error::NotCommutative(format!("transported LdRi triple ({n}, {m}, {tau})")));
    }
    Ok((n.clone(), m.clone(), tau))
}

fn require_nonvanishing(pi: &IrrRep, m: &Multisegment, side: Side) -> Result<IrrRep> {
    derivative_seq(pi, m, side).ok_or_else(|| Error::VanishingDerivative(format!("D_{m}({pi})")))
}

/// No intersection–union step below `m` gives the same derivative.
///
/// A non-minimal multisegment always has a single derivative-preserving move,
/// so checking one step suffices; [`is_minimal_exhaustive`] checks the whole
/// downward closure.
pub fn is_minimal(pi: &IrrRep, m: &Multisegment, side: Side) -> Result<bool> {
    let target = require_nonvanishing(pi, m, side)?;
    Ok(iu_moves(m).iter().all(|n| derivative_seq(pi, n, side).as_ref() != Some(&target)))
}

pub fn is_minimal_exhaustive(pi: &IrrRep, m: &Multisegment, side: Side) -> Result<bool> {
    let target = require_nonvanishing(pi, m, side)?;
    Ok(downward_closure(m)
        .iter()
        .filter(|n| *n != m)
        .all(|n| derivative_seq(pi, n, side).as_ref() != Some(&target)))
}

/// Descend by derivative-preserving intersection–union steps, taking the
/// first available move in canonical order.
pub fn minimize(pi: &IrrRep, m: &Multisegment, side: Side) -> Result<Multisegment> {
    minimize_by(pi, m, side, |moves| moves.first().cloned())
}

/// Same descent but taking the last available move; by uniqueness of the
/// minimal multisegment it must agree with [`minimize`].
pub fn minimize_alt(pi: &IrrRep, m: &Multisegment, side: Side) -> Result<Multisegment> {
    minimize_by(pi, m, side, |moves| moves.last().cloned())
}

fn minimize_by(
    pi: &IrrRep,
    m: &Multisegment,
    side: Side,
    pick: impl Fn(&[Multisegment]) -> Option<Multisegment>,
) -> Result<Multisegment> {
    let target = require_nonvanishing(pi, m, side)?;
    let mut cur = m.clone();
    loop {
        let good: Vec<Multisegment> = iu_moves(&cur)
            .into_iter()
            .filter(|n| derivative_seq(pi, n, side).as_ref() == Some(&target))
            .collect();
        match pick(&good) {
            Some(n) => cur = n,
            None => return Ok(cur),
        }
    }
}
