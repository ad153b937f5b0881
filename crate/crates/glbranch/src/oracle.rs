//! Brute-force validators, exhaustive corpora, and the law checks they drive.
//!
//! The law checks return human-readable violations rather than panicking, so
//! the same code serves unit tests, the acceptance run and `selfcheck`.

use std::cell::Cell;
use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::calculus::{
    d_point_r, derivative, derivative_seq, double_derivative_completion, dual_rep, eps_point_r, highest,
    i_point_r, integral, mw_involution,
};
use crate::commutation::strongly_commutative;
use crate::core::{linked, seg_precedes, IrrRep, Line, Multisegment, Point, Segment, Side};
use crate::error::{Error, Result};
use crate::invariants::{eps, eps_on_mult, eta, hd, removal};
use crate::pieri::{pieri_table, truncation_patterns};
use crate::relevance::{relevant, relevant_witnesses};

/// Default cap on the number of points for exhaustive enumeration.
pub const DEFAULT_POINT_LIMIT: usize = 8;

/// All multisegments whose multiset of points is exactly `points`.
pub fn enumerate_multisegments(points: &[Point], limit: usize) -> Result<Vec<Multisegment>> {
    if points.len() > limit {
        return Err(Error::LimitExceeded(format!("{} points exceed the limit {limit}", points.len())));
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    let mut out = BTreeSet::new();
    fn go(pts: &mut Vec<Point>, acc: &mut Vec<Segment>, out: &mut BTreeSet<Multisegment>) {
        let Some(&p) = pts.first() else {
            out.insert(Multisegment::from_vec(acc.clone()));
            return;
        };
        // the smallest remaining point must start a segment
        let mut taken = Vec::new();
        let mut b = p.x2;
        loop {
            let q = Point::new(p.line, b);
            let Some(i) = pts.iter().position(|x| *x == q) else { break };
            taken.push(pts.remove(i));
            acc.push(Segment::new(p.line, p.x2, b).expect("segment"));
            go(pts, acc, out);
            acc.pop();
            b += 2;
        }
        for q in taken {
            let pos = pts.partition_point(|x| *x < q);
            pts.insert(pos, q);
        }
    }
    go(&mut pts, &mut Vec::new(), &mut out);
    Ok(out.into_iter().collect())
}

/// Every multisegment on the standard line with integer exponents in
/// `0..span` and at most `max_points` points (including the empty one).
pub fn corpus(max_points: usize, span: i32) -> Vec<Multisegment> {
    corpus_on(Line::standard(), 0, max_points, span)
}

/// Like [`corpus`] but on `line`, with doubled exponents `offset2 + 2k`, `k < span`.
pub fn corpus_on(line: Line, offset2: i32, max_points: usize, span: i32) -> Vec<Multisegment> {
    let mut out = Vec::new();
    let mut counts = vec![0usize; span as usize];
    fn go(k: usize, left: usize, counts: &mut Vec<usize>, line: Line, offset2: i32, out: &mut Vec<Multisegment>) {
        if k == counts.len() {
            let pts: Vec<Point> = counts
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(Point::new(line, offset2 + 2 * i as i32), c))
                .collect();
            out.extend(enumerate_multisegments(&pts, usize::MAX).expect("no limit"));
            return;
        }
        for c in 0..=left {
            counts[k] = c;
            go(k + 1, left - c, counts, line, offset2, out);
        }
        counts[k] = 0;
    }
    go(0, max_points, &mut counts, line, offset2, &mut out);
    out.sort();
    out
}

/// All segments on `line` inside the doubled window `offset2 + 2k`, `k < span`.
pub fn window_segments(line: Line, offset2: i32, span: i32) -> Vec<Segment> {
    let mut out = Vec::new();
    for i in 0..span {
        for j in i..span {
            out.push(Segment::new(line, offset2 + 2 * i, offset2 + 2 * j).expect("segment"));
        }
    }
    out
}

fn minus_points(pi: &IrrRep, d: &Segment) -> Option<Vec<Point>> {
    let mut pts = pi.csupp();
    for p in d.points() {
        let i = pts.iter().position(|x| *x == p)?;
        pts.remove(i);
    }
    Some(pts)
}

/// The unique `σ` with `I_Δ(σ) = π` among all candidates of the forced support.
pub fn derivative_by_inversion(pi: &IrrRep, d: &Segment, side: Side) -> Result<Option<IrrRep>> {
    let Some(pts) = minus_points(pi, d) else { return Ok(None) };
    let hits: Vec<IrrRep> = enumerate_multisegments(&pts, DEFAULT_POINT_LIMIT)?
        .into_iter()
        .map(IrrRep::new)
        .filter(|s| integral(s, d, side) == *pi)
        .collect();
    match hits.len() {
        0 => Ok(None),
        1 => Ok(hits.into_iter().next()),
        n => Err(Error::NonUnique(format!("{n} inverse candidates for D_{d}({pi})"))),
    }
}

fn eps_point_l(m: &Multisegment, p: Point) -> usize {
    eps_point_r(&m.dual(), Point::new(p.line.dual(), -p.x2))
}

fn d_point_l(m: &Multisegment, p: Point) -> Option<Multisegment> {
    d_point_r(&m.dual(), Point::new(p.line.dual(), -p.x2)).map(|x| x.dual())
}

fn i_point_l(m: &Multisegment, p: Point) -> Multisegment {
    i_point_r(&m.dual(), Point::new(p.line.dual(), -p.x2)).dual()
}

/// Right integral by an independent route: on the Langlands side, adding a
/// segment that precedes nothing is the integral; otherwise peel a point that
/// commutes with `Δ` on the left or right, recurse, and restore it. Returns
/// `None` when neither rule applies.
pub fn integral_by_reduction(m: &Multisegment, d: &Segment) -> Option<Multisegment> {
    if d.is_point() {
        return Some(i_point_r(m, d.a_point()));
    }
    let lang = mw_involution(m);
    if !lang.iter().any(|s| seg_precedes(d, s)) {
        return Some(mw_involution(&lang.with(*d)));
    }
    let pts: BTreeSet<Point> = m.csupp().into_iter().collect();
    for p in pts {
        let rel = p.comparable(&d.a_point());
        if !(rel && p.x2 == d.b2()) {
            let k = eps_point_l(m, p);
            if k > 0 {
                let mut x = m.clone();
                for _ in 0..k {
                    x = d_point_l(&x, p)?;
                }
                let mut t = integral_by_reduction(&x, d)?;
                for _ in 0..k {
                    t = i_point_l(&t, p);
                }
                return Some(t);
            }
        }
        if !(rel && [d.a2() - 2, d.a2(), d.b2() + 2].contains(&p.x2)) {
            let k = eps_point_r(m, p);
            if k > 0 {
                let mut x = m.clone();
                for _ in 0..k {
                    x = d_point_r(&x, p)?;
                }
                let mut t = integral_by_reduction(&x, d)?;
                for _ in 0..k {
                    t = i_point_r(&t, p);
                }
                return Some(t);
            }
        }
    }
    None
}

/// `ε_{Δ'}(D_Δ(π)) = ε_{Δ'}(𝔯(Δ, 𝔥𝔡(π)))` for all `Δ' ≮ Δ`. Returns (checks, violations).
pub fn removal_law(pi: &IrrRep, segs: &[Segment]) -> (usize, Vec<String>) {
    let h = hd(pi, Side::Right);
    let mut n = 0;
    let mut bad = Vec::new();
    for d in segs {
        let Some(sigma) = derivative(pi, d, Side::Right) else { continue };
        let r = match removal(d, &h) {
            Ok((r, _)) => r,
            Err(e) => {
                bad.push(format!("{pi} {d}: removal failed on nonvanishing derivative: {e}"));
                continue;
            }
        };
        for dp in segs {
            if seg_precedes(dp, d) {
                continue;
            }
            n += 1;
            let lhs = eps(&sigma, dp, Side::Right);
            let rhs = eps_on_mult(dp, &r);
            if lhs != rhs {
                bad.push(format!("{pi} Δ={d} Δ'={dp}: ε={lhs} vs removal {rhs}"));
            }
        }
    }
    (n, bad)
}

/// Integral and derivative invert each other on both sides.
pub fn inversion_law(pi: &IrrRep, segs: &[Segment]) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for side in [Side::Right, Side::Left] {
        for d in segs {
            n += 1;
            if let Some(s) = derivative(pi, d, side) {
                if integral(&s, d, side) != *pi {
                    bad.push(format!("{side:?} I_{d}(D_{d}({pi})) != π"));
                }
            }
            let up = integral(pi, d, side);
            if derivative(&up, d, side).as_ref() != Some(pi) {
                bad.push(format!("{side:?} D_{d}(I_{d}({pi})) != π"));
            }
        }
    }
    (n, bad)
}

/// Exhaustive inverse search agrees with the engine's derivative.
pub fn oracle_agreement(pi: &IrrRep, segs: &[Segment]) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for d in segs {
        n += 1;
        match derivative_by_inversion(pi, d, Side::Right) {
            Ok(o) if o == derivative(pi, d, Side::Right) => {}
            Ok(o) => bad.push(format!("D_{d}({pi}): search {o:?} vs engine {:?}", derivative(pi, d, Side::Right))),
            Err(e) => bad.push(format!("D_{d}({pi}): {e}")),
        }
    }
    (n, bad)
}

/// The independent integral route agrees with the engine wherever it applies.
pub fn reduction_agreement(pi: &IrrRep, segs: &[Segment]) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for d in segs {
        if let Some(v) = integral_by_reduction(pi.zmult(), d) {
            n += 1;
            if v != *integral(pi, d, Side::Right).zmult() {
                bad.push(format!("I_{d}({pi}): reduction {v} vs engine {}", integral(pi, d, Side::Right)));
            }
        }
    }
    (n, bad)
}

/// The four update rules for `η_Δ` under a derivative `D_{Δ'}` on the same coset.
pub fn eta_update_law(pi: &IrrRep, segs: &[Segment]) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for dp in segs {
        let Some(sigma) = derivative(pi, dp, Side::Right) else { continue };
        let (c, d) = (dp.a2(), dp.b2());
        for f in segs {
            if !f.same_coset(dp) {
                continue;
            }
            let (a, b) = (f.a2(), f.b2());
            let before = eta(pi, f, Side::Right);
            let after = eta(&sigma, f, Side::Right);
            let ok = if c < a && d == b {
                Some(before == after)
            } else if a <= c && c <= b && d == b {
                Some(after.abs() + 1 == before.abs())
            } else if a <= c && c <= d && d < b {
                Some(after.abs() == before.abs())
            } else if c < a && d < b {
                Some(before.le(&after))
            } else {
                None
            };
            if let Some(ok) = ok {
                n += 1;
                if !ok {
                    bad.push(format!("{pi} frame {f} D_{dp}: η {before} -> {after}"));
                }
            }
        }
    }
    (n, bad)
}

/// Strong commutativity implies `I^L_{Δ'} ∘ D_Δ = D_Δ ∘ I^L_{Δ'}`.
/// Returns (strong triples found, violations).
pub fn strong_implies_commute(pi: &IrrRep, segs: &[Segment]) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for d in segs {
        let Some(down) = derivative(pi, d, Side::Right) else { continue };
        for dp in segs {
            if !strongly_commutative(d, dp, pi) {
                continue;
            }
            n += 1;
            let lhs = integral(&down, dp, Side::Left);
            let rhs = derivative(&integral(pi, dp, Side::Left), d, Side::Right);
            if rhs.as_ref() != Some(&lhs) {
                bad.push(format!("({d}, {dp}, {pi}): I∘D = {lhs} but D∘I = {rhs:?}"));
            }
        }
    }
    (n, bad)
}

/// Unlinked segments give commuting derivatives and commuting integrals.
pub fn unlinked_commutation(pi: &IrrRep, segs: &[Segment]) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for (i, d1) in segs.iter().enumerate() {
        for d2 in &segs[i + 1..] {
            if linked(d1, d2) {
                continue;
            }
            n += 1;
            let a = derivative(pi, d1, Side::Right).and_then(|x| derivative(&x, d2, Side::Right));
            let b = derivative(pi, d2, Side::Right).and_then(|x| derivative(&x, d1, Side::Right));
            if a != b {
                bad.push(format!("D_{d1}, D_{d2} on {pi} do not commute"));
            }
            let a = integral(&integral(pi, d1, Side::Right), d2, Side::Right);
            let b = integral(&integral(pi, d2, Side::Right), d1, Side::Right);
            if a != b {
                bad.push(format!("I_{d1}, I_{d2} on {pi} do not commute"));
            }
        }
    }
    (n, bad)
}

/// Rows lie in the truncation patterns, row 0 and the top row have their
/// closed forms, and the double derivative closes every entry.
pub fn pieri_law(pi: &IrrRep) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    let table = match pieri_table(pi) {
        Ok(t) => t,
        Err(e) => return (1, vec![e.to_string()]),
    };
    let mut n = 0;
    let top = highest(pi, Side::Right, false).1;
    let h = hd(pi, Side::Right);
    for (i, row) in &table {
        let allowed = truncation_patterns(pi.zmult(), *i);
        for (t, m) in row {
            n += 1;
            if !allowed.contains(t.zmult()) {
                bad.push(format!("{pi} row {i}: {t} outside truncation patterns"));
            }
            match double_derivative_completion(pi, m) {
                Ok(rest) => {
                    if derivative_seq(t, &rest, Side::Right).as_ref() != Some(&top) {
                        bad.push(format!("{pi} row {i}: {m} then {rest} misses the highest derivative"));
                    }
                }
                Err(e) => bad.push(format!("{pi} row {i}: {e}")),
            }
        }
    }
    let row0: BTreeSet<_> = [(pi.clone(), Multisegment::new())].into_iter().collect();
    if table.get(&0) != Some(&row0) {
        bad.push(format!("{pi}: row 0 is not {{(π, {{}})}}"));
    }
    let top_row: BTreeSet<_> = [(top, h.clone())].into_iter().collect();
    if table.get(&h.abs_len()) != Some(&top_row) {
        bad.push(format!("{pi}: highest-derivative row lacks (π^-, 𝔥𝔡)"));
    }
    (n, bad)
}

/// Relevance is symmetric and dual-invariant; a relevant pair has one witness.
pub fn relevance_law(pi1: &IrrRep, pi2: &IrrRep) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    let a = relevant(pi1, pi2).relevant;
    let b = relevant(pi2, pi1).relevant;
    let c = relevant(&dual_rep(pi1), &dual_rep(pi2)).relevant;
    if a != b {
        bad.push(format!("symmetry: ({pi1}, {pi2}) {a} vs swapped {b}"));
    }
    if a != c {
        bad.push(format!("duality: ({pi1}, {pi2}) {a} vs dual {c}"));
    }
    if a {
        let w = relevant_witnesses(pi1, pi2);
        if w.len() != 1 {
            bad.push(format!("({pi1}, {pi2}) has {} witnesses", w.len()));
        }
    }
    (1, bad)
}

/// Outcome of one family of checks in [`consistency_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// At most a handful of counterexamples.
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub max_points: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

const SPAN: i32 = 4;
const SAMPLE: usize = 60;
const PAIR_SAMPLE: usize = 40;

fn run_check(
    name: &'static str,
    reps: &[IrrRep],
    f: impl Fn(&IrrRep) -> (usize, Vec<String>) + Sync,
) -> CheckReport {
    let results: Vec<(usize, Vec<String>)> = reps.par_iter().map(&f).collect();
    let cases = results.iter().map(|r| r.0).sum();
    let all: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    CheckReport { name, cases, failures: all.len(), examples: all.into_iter().take(5).collect() }
}

/// Run every law check on a seeded sample of the corpus with at most
/// `max_points` points.
pub fn consistency_suite(seed: u64, max_points: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let line = Line::standard();
    let mut reps: Vec<IrrRep> = corpus(max_points, SPAN).into_iter().map(IrrRep::new).collect();
    reps.shuffle(&mut rng);
    reps.truncate(SAMPLE);
    let segs = window_segments(line, 0, SPAN);
    let ints: Vec<IrrRep> = corpus(max_points / 2, 3).into_iter().map(IrrRep::new).collect();
    let halves: Vec<IrrRep> = corpus_on(line, -1, max_points - max_points / 2, 3)
        .into_iter()
        .map(IrrRep::new)
        .collect();
    let mut pairs: Vec<(IrrRep, IrrRep)> = Vec::new();
    for _ in 0..PAIR_SAMPLE {
        let a = ints.choose(&mut rng).expect("nonempty").clone();
        let b = halves.choose(&mut rng).expect("nonempty").clone();
        pairs.push((a, b));
    }
    let pair_results: Vec<(usize, Vec<String>)> = pairs.par_iter().map(|(a, b)| relevance_law(a, b)).collect();
    let pair_bad: Vec<String> = pair_results.into_iter().flat_map(|r| r.1).collect();
    let checks = vec![
        run_check("removal-law", &reps, |p| removal_law(p, &segs)),
        run_check("eta-update", &reps, |p| eta_update_law(p, &segs)),
        run_check("inversion", &reps, |p| inversion_law(p, &segs)),
        run_check("oracle-agreement", &reps, |p| oracle_agreement(p, &segs)),
        run_check("reduction-agreement", &reps, |p| reduction_agreement(p, &segs)),
        run_check("unlinked-commutation", &reps, |p| unlinked_commutation(p, &segs)),
        run_check("strong-implies-commute", &reps, |p| strong_implies_commute(p, &segs)),
        run_check("pieri-upper-bound", &reps, pieri_law),
        CheckReport {
            name: "relevance-symmetry-duality-uniqueness",
            cases: pairs.len(),
            failures: pair_bad.len(),
            examples: pair_bad.into_iter().take(5).collect(),
        },
    ];
    SuiteReport { seed, max_points, checks }
}

thread_local! {
    static CORRUPT: Cell<bool> = const { Cell::new(false) };
}

/// Whether the point peel is deliberately corrupted on this thread.
pub(crate) fn peel_corrupted() -> bool {
    CORRUPT.with(|c| c.get())
}

/// Run `f` with the point peel switched to the wrong tie-break (smallest
/// a-end) on the current thread. Used to confirm the law checks have teeth.
pub fn with_corrupted_peel<R>(f: impl FnOnce() -> R) -> R {
    crate::calculus::clear_memo();
    CORRUPT.with(|c| c.set(true));
    let out = f();
    CORRUPT.with(|c| c.set(false));
    crate::calculus::clear_memo();
    out
}
