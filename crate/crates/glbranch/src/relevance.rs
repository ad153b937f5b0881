//! Relevance of pairs, the branching decision, and its supporting-layer index.
//!
//! `(π1, π2)` is relevant when some `𝔪`, `𝔫` give
//! `D^R_𝔪(ν^{1/2}π1) = D^L_𝔫(π2)` with `(𝔪, 𝔫, ν^{1/2}π1)` strongly
//! RdLi-commutative. Each common target has exactly one minimal pair of
//! witnesses, so the search enumerates targets on both sides, keeps the
//! minimal witness of each, and tests commutativity target by target.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::calculus::{derivative, dual_rep, is_generic};
use crate::commutation::{is_strongly_commutative_multi, minimize};
use crate::core::{seg_precedes, IrrRep, Multisegment, Point, Segment, Side, Transform};
use crate::error::{Error, Result};

/// Segments whose points all occur in the cuspidal support of `pi`.
pub fn support_segments(pi: &IrrRep) -> Vec<Segment> {
    let pts: BTreeSet<Point> = pi.csupp().into_iter().collect();
    let mut out = Vec::new();
    for p in &pts {
        let mut b = p.x2;
        while pts.contains(&Point::new(p.line, b)) {
            out.push(Segment::new(p.line, p.x2, b).expect("segment"));
            b += 2;
        }
    }
    out
}

/// Every `D^R_𝔪(π) ≠ 0`, mapped to the minimal `𝔪` realizing it.
///
/// States are explored breadth-first; a segment is appended only when it
/// precedes nothing already chosen, so every visited sequence is an ascending
/// order of its multisegment.
pub fn right_targets(pi: &IrrRep) -> BTreeMap<IrrRep, Multisegment> {
    let mut first: BTreeMap<IrrRep, Multisegment> = BTreeMap::new();
    let mut seen: HashSet<Multisegment> = HashSet::new();
    let mut queue = VecDeque::from([(pi.clone(), Multisegment::new())]);
    seen.insert(Multisegment::new());
    while let Some((sigma, m)) = queue.pop_front() {
        first.entry(sigma.clone()).or_insert_with(|| m.clone());
        for d in support_segments(&sigma) {
            if m.iter().any(|s| seg_precedes(&d, s)) {
                continue;
            }
            let next_m = m.with(d);
            if seen.contains(&next_m) {
                continue;
            }
            if let Some(next) = derivative(&sigma, &d, Side::Right) {
                seen.insert(next_m.clone());
                queue.push_back((next, next_m));
            }
        }
    }
    first
        .into_iter()
        .map(|(t, m)| {
            let min = minimize(pi, &m, Side::Right).expect("witness realizes its target");
            (t, min)
        })
        .collect()
}

/// Every `D^L_𝔫(π) ≠ 0`, mapped to the minimal `𝔫` realizing it.
pub fn left_targets(pi: &IrrRep) -> BTreeMap<IrrRep, Multisegment> {
    right_targets(&dual_rep(pi))
        .into_iter()
        .map(|(t, n)| (dual_rep(&t), n.dual()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevanceResult {
    pub relevant: bool,
    pub i_star: Option<u64>,
    pub witness_m: Multisegment,
    pub witness_n: Multisegment,
    /// `D^R_𝔪(ν^{1/2}π1) = D^L_𝔫(π2)` when relevant.
    pub target: Option<IrrRep>,
}

impl RelevanceResult {
    fn negative() -> Self {
        RelevanceResult {
            relevant: false,
            i_star: None,
            witness_m: Multisegment::new(),
            witness_n: Multisegment::new(),
            target: None,
        }
    }
}

/// A successful witness `(𝔪, 𝔫, target)`.
pub type Witness = (Multisegment, Multisegment, IrrRep);

fn search(pi1: &IrrRep, pi2: &IrrRep, exhaustive: bool) -> Vec<Witness> {
    let pi = Transform::Shift(1).apply_rep(pi1);
    let rights = right_targets(&pi);
    let mut common: Vec<(u64, Multisegment, IrrRep)> = left_targets(pi2)
        .into_iter()
        .filter(|(t, _)| rights.contains_key(t))
        .map(|(t, n)| (n.abs_len(), n, t))
        .collect();
    common.sort();
    let mut out = Vec::new();
    for (_, n, t) in common {
        let m = &rights[&t];
        if is_strongly_commutative_multi(m, &n, &pi).expect("witness is nonvanishing") {
            out.push((m.clone(), n, t));
            if !exhaustive {
                break;
            }
        }
    }
    out
}

/// Decide relevance and report the minimal witness.
pub fn relevant(pi1: &IrrRep, pi2: &IrrRep) -> RelevanceResult {
    match search(pi1, pi2, false).into_iter().next() {
        Some((m, n, t)) => RelevanceResult {
            relevant: true,
            i_star: Some(m.abs_len()),
            witness_m: m,
            witness_n: n,
            target: Some(t),
        },
        None => RelevanceResult::negative(),
    }
}

/// All successful minimal witnesses; relevance theory says there is at most one.
pub fn relevant_witnesses(pi1: &IrrRep, pi2: &IrrRep) -> Vec<Witness> {
    search(pi1, pi2, true)
}

/// Like [`relevant`], but fails with `NonUnique` if a second witness exists.
pub fn relevant_checked(pi1: &IrrRep, pi2: &IrrRep) -> Result<RelevanceResult> {
    let all = relevant_witnesses(pi1, pi2);
    if all.len() > 1 {
        return Err(Error::NonUnique(format!("{} witnesses for ({pi1}, {pi2})", all.len())));
    }
    Ok(relevant(pi1, pi2))
}

/// `Hom_{G_n}(π, π') ≠ 0` for `π` of `G_{n+1}` and `π'` of `G_n`, with the
/// supporting Bernstein–Zelevinsky layer.
pub fn branch(pi: &IrrRep, pip: &IrrRep) -> Result<(bool, Option<u64>)> {
    if pi.rank() != pip.rank() + 1 {
        return Err(Error::RankMismatch { expected: pip.rank() + 1, found: pi.rank() });
    }
    let r = relevant(pi, pip);
    Ok((r.relevant, r.i_star))
}

/// `l_a(𝔪)` for a strongly commutative triple.
pub fn smallest_derivative_index(m: &Multisegment, n: &Multisegment, pi: &IrrRep) -> Result<u64> {
    if !is_strongly_commutative_multi(m, n, pi)? {
        return Err(Error::NotCommutative(format!("({m}, {n}, {pi})")));
    }
    Ok(m.abs_len())
}

/// `relevant(π1, π2)` must agree with `relevant(π2, π1)`.
pub fn symmetry_check(pi1: &IrrRep, pi2: &IrrRep) -> Result<bool> {
    let a = relevant(pi1, pi2).relevant;
    if a != relevant(pi2, pi1).relevant {
        return Err(Error::SymmetryViolation(pi1.to_string(), pi2.to_string()));
    }
    Ok(a)
}

/// `relevant(π1, π2)` must agree with `relevant(π1^∨, π2^∨)`.
pub fn dual_check(pi1: &IrrRep, pi2: &IrrRep) -> Result<bool> {
    let a = relevant(pi1, pi2).relevant;
    if a != relevant(&dual_rep(pi1), &dual_rep(pi2)).relevant {
        return Err(Error::DualityViolation(pi1.to_string(), pi2.to_string()));
    }
    Ok(a)
}

/// No point of `ν^{1/2}π1` interacts with a point of `π2`.
pub fn zero_relative_rank(pi1: &IrrRep, pi2: &IrrRep) -> bool {
    let shifted = Transform::Shift(1).apply_rep(pi1).csupp();
    let other = pi2.csupp();
    shifted.iter().all(|p| other.iter().all(|q| !p.comparable(q)))
}

/// Closed form in the zero-relative-rank case: relevant iff both generic,
/// with `i* = rank(π1)`.
pub fn zero_rank_prediction(pi1: &IrrRep, pi2: &IrrRep) -> (bool, Option<u64>) {
    if is_generic(pi1) && is_generic(pi2) {
        (true, Some(pi1.rank()))
    } else {
        (false, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::derivative_seq;
    use crate::core::Line;
    use crate::text::{parse_multisegment as pm, parse_rep as pr};

    #[test]
    fn nontempered_pair_is_relevant_at_layer_three() {
        let pi = pr("Z{[0],[0],[-1,1]}").unwrap();
        let pip = pr("Z{[-1/2,1/2],[-1/2],[1/2]}").unwrap();
        let r = relevant(&pi, &pip);
        assert!(r.relevant);
        assert_eq!(r.i_star, Some(3));
        assert_eq!(r.target, Some(pr("Z{[-1/2,1/2]}").unwrap()));
        let shifted = Transform::Shift(1).apply_rep(&pi);
        assert_eq!(derivative_seq(&shifted, &r.witness_m, Side::Right), r.target);
        assert_eq!(derivative_seq(&pip, &r.witness_n, Side::Left), r.target);
        assert_eq!(branch(&pi, &pip).unwrap(), (true, Some(3)));
        assert_eq!(relevant_witnesses(&pi, &pip).len(), 1);
        assert!(symmetry_check(&pi, &pip).unwrap());
        assert!(dual_check(&pi, &pip).unwrap());
    }

    #[test]
    fn steinberg_pair_is_not_relevant() {
        let pi = pr("Z{[-3/2],[-1/2],[1/2],[3/2],[5/2]}").unwrap();
        let pip = pr("St{[1/2,5/2],[-1/2]}").unwrap();
        assert_eq!(pip.rank(), 4);
        assert_eq!(branch(&pi, &pip).unwrap(), (false, None));
        assert!(!symmetry_check(&pi, &pip).unwrap());
    }

    #[test]
    fn cuspidal_on_a_sized_line() {
        let c = Line::intern("rel_test_c", Some(2)).unwrap();
        let pi = IrrRep::new([Segment::new(c, 0, 0).unwrap()].into_iter().collect());
        let other = Line::intern("rel_test_d", None).unwrap();
        let pip = IrrRep::new([Segment::new(other, 0, 0).unwrap()].into_iter().collect());
        assert!(zero_relative_rank(&pi, &pip));
        assert_eq!(branch(&pi, &pip).unwrap(), (true, Some(2)));
    }

    #[test]
    fn rank_mismatch() {
        let pi = pr("Z{[0]}").unwrap();
        assert!(matches!(branch(&pi, &pi), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn layer_index() {
        let pi = Transform::Shift(1).apply_rep(&pr("Z{[0],[0],[-1,1]}").unwrap());
        let m = pm("{[1/2],[1/2],[3/2]}").unwrap();
        let n = pm("{[-1/2,1/2]}").unwrap();
        assert_eq!(smallest_derivative_index(&m, &n, &pi).unwrap(), 3);
        assert_eq!(smallest_derivative_index(&Multisegment::new(), &n, &pi).unwrap(), 0);
    }
}
