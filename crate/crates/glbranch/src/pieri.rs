//! Simple quotients of Bernstein–Zelevinsky derivatives `π^{(i)}`.
//!
//! Every simple quotient of `π^{(i)}` is `D^R_𝔪(π)` for a unique minimal `𝔪`
//! with `l_a(𝔪) = i`, so a row is read off from the minimal-witness map of
//! all right-derivative targets.

use std::collections::{BTreeMap, BTreeSet};

use crate::core::{IrrRep, Multisegment, Segment};
use crate::error::{Error, Result};
use crate::relevance::right_targets;

/// A simple quotient and its minimal witness.
pub type Quotient = (IrrRep, Multisegment);

/// Simple quotients of `π^{(i)}`.
pub fn simple_quotients(pi: &IrrRep, i: u64) -> Result<BTreeSet<Quotient>> {
    if i > pi.rank() {
        return Err(Error::OutOfRange(format!("derivative index {i} exceeds rank {}", pi.rank())));
    }
    Ok(right_targets(pi)
        .into_iter()
        .filter(|(_, m)| m.abs_len() == i)
        .collect())
}

/// `𝔪^{(i)}`: right-truncate a sub-multiset of segments of total size `i`.
pub fn truncation_patterns(m: &Multisegment, i: u64) -> BTreeSet<Multisegment> {
    let segs = m.segs();
    let mut out = BTreeSet::new();
    fn go(segs: &[Segment], k: usize, left: u64, acc: &mut Vec<Segment>, out: &mut BTreeSet<Multisegment>) {
        if k == segs.len() {
            if left == 0 {
                out.insert(Multisegment::from_vec(acc.clone()));
            }
            return;
        }
        let s = segs[k];
        acc.push(s);
        go(segs, k + 1, left, acc, out);
        acc.pop();
        let n = s.line().size() as u64;
        if n <= left {
            let pushed = s.trunc_right().map(|t| acc.push(t)).is_some();
            go(segs, k + 1, left - n, acc, out);
            if pushed {
                acc.pop();
            }
        }
    }
    go(segs, 0, i, &mut Vec::new(), &mut out);
    out
}

/// Every nonempty row `i ↦ simple quotients of π^{(i)}`.
///
/// Fails with `OutOfRange` if some quotient falls outside the truncation
/// patterns `𝔪^{(i)}`, which would mean an engine defect.
pub fn pieri_table(pi: &IrrRep) -> Result<BTreeMap<u64, BTreeSet<Quotient>>> {
    let mut table: BTreeMap<u64, BTreeSet<Quotient>> = BTreeMap::new();
    for (t, m) in right_targets(pi) {
        table.entry(m.abs_len()).or_default().insert((t, m));
    }
    for (i, row) in &table {
        let allowed = truncation_patterns(pi.zmult(), *i);
        for (t, m) in row {
            if !allowed.contains(t.zmult()) {
                return Err(Error::OutOfRange(format!(
                    "quotient {t} (witness {m}) of {pi} is not a truncation pattern of degree {i}"
                )));
            }
        }
    }
    Ok(table)
}
