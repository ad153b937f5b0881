//! `ε`, `η`, the highest derivative multisegment `𝔥𝔡`, `𝔪𝔵`, and the removal process.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::calculus::{derivative, derivative_seq, dual_rep};
use crate::core::{iu_moves, order, IrrRep, Multisegment, OrderMode, Point, Segment, Side, Transform};
use crate::error::{Error, Result};

/// `ε_{[a,b]}(𝔥) = #{[a,c] ∈ 𝔥 : c ≥ b}`.
pub fn eps_on_mult(d: &Segment, h: &Multisegment) -> usize {
    h.iter()
        .filter(|s| s.line() == d.line() && s.a2() == d.a2() && s.b2() >= d.b2())
        .count()
}

/// Largest `k` with `D_Δ^k(π) ≠ 0`.
pub fn eps(pi: &IrrRep, d: &Segment, side: Side) -> usize {
    let mut k = 0;
    let mut cur = pi.clone();
    while let Some(next) = derivative(&cur, d, side) {
        cur = next;
        k += 1;
    }
    k
}

/// `η_Δ(π)` with its frame.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EtaVector {
    pub frame: Segment,
    pub comps: Vec<usize>,
}

impl EtaVector {
    /// `|η|`: the component sum.
    pub fn abs(&self) -> usize {
        self.comps.iter().sum()
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &EtaVector) -> bool {
        self.comps.len() == other.comps.len() && self.comps.iter().zip(&other.comps).all(|(x, y)| x <= y)
    }
}

impl fmt::Display for EtaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Right: `(ε_{[a,b]}, ε_{[a+1,b]}, …, ε_{[b,b]})`.
/// Left: `(ε^L_{[a,b]}, ε^L_{[a,b-1]}, …, ε^L_{[a,a]})`.
pub fn eta(pi: &IrrRep, frame: &Segment, side: Side) -> EtaVector {
    match side {
        Side::Right => {
            let comps = (0..frame.rel_len() as i32)
                .map(|k| {
                    let d = Segment::new(frame.line(), frame.a2() + 2 * k, frame.b2()).expect("subsegment");
                    eps(pi, &d, Side::Right)
                })
                .collect();
            EtaVector { frame: *frame, comps }
        }
        Side::Left => {
            let v = eta(&dual_rep(pi), &frame.dual(), Side::Right);
            EtaVector { frame: *frame, comps: v.comps }
        }
    }
}

pub fn abs_eta(pi: &IrrRep, frame: &Segment, side: Side) -> usize {
    eta(pi, frame, side).abs()
}

thread_local! {
    static HD: RefCell<HashMap<Multisegment, Multisegment>> = RefCell::new(HashMap::new());
}

pub(crate) fn clear_hd_memo() {
    HD.with(|c| c.borrow_mut().clear());
}

fn hd_right(pi: &IrrRep) -> Multisegment {
    if let Some(h) = HD.with(|c| c.borrow().get(pi.zmult()).cloned()) {
        return h;
    }
    let target = Transform::TruncRight.apply_rep(pi);
    let mut h: Multisegment = pi.zmult().iter().map(|s| Segment::point(s.b_point())).collect();
    // any non-minimal candidate admits a single derivative-preserving move
    'descend: loop {
        for next in iu_moves(&h) {
            if derivative_seq(pi, &next, Side::Right).as_ref() == Some(&target) {
                h = next;
                continue 'descend;
            }
        }
        break;
    }
    HD.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 1 << 20 {
            c.clear();
        }
        c.insert(pi.zmult().clone(), h.clone());
    });
    h
}

/// The `≤_Z`-minimal multisegment realizing the highest derivative.
pub fn hd(pi: &IrrRep, side: Side) -> Multisegment {
    match side {
        Side::Right => hd_right(pi),
        Side::Left => hd_right(&dual_rep(pi)).dual(),
    }
}

/// `𝔪𝔵(π, Δ) = Σ_k ε_{[a+k,b]}(π)·[a+k,b]` on the right, mirrored on the left.
pub fn mx(pi: &IrrRep, d: &Segment, side: Side) -> Multisegment {
    match side {
        Side::Right => {
            let mut v = Vec::new();
            for k in 0..d.rel_len() as i32 {
                let s = Segment::new(d.line(), d.a2() + 2 * k, d.b2()).expect("subsegment");
                v.extend(std::iter::repeat_n(s, eps(pi, &s, Side::Right)));
            }
            Multisegment::from_vec(v)
        }
        Side::Left => mx(&dual_rep(pi), &d.dual(), Side::Right).dual(),
    }
}

/// `𝔪𝔵𝔭𝔱(π, ρ)`: `Σ ε_Δ(π)·Δ` over segments `Δ` with `b(Δ) = ρ` (right side).
pub fn mxpt(pi: &IrrRep, rho: &Point, side: Side) -> Multisegment {
    match side {
        Side::Right => {
            let supp: BTreeSet<Point> = pi.csupp().into_iter().collect();
            let mut v = Vec::new();
            let mut a = rho.x2;
            while supp.contains(&Point::new(rho.line, a)) {
                let s = Segment::new(rho.line, a, rho.x2).expect("segment");
                v.extend(std::iter::repeat_n(s, eps(pi, &s, Side::Right)));
                a -= 2;
            }
            Multisegment::from_vec(v)
        }
        Side::Left => {
            let p = Point::new(rho.line.dual(), -rho.x2);
            mxpt(&dual_rep(pi), &p, Side::Right).dual()
        }
    }
}

/// `𝔯(Δ, 𝔥)` together with its removal sequence.
///
/// `Δ_1` is the shortest `[a, b']` in `𝔥` with `b' ≥ b`. Each later `Δ_i`
/// satisfies `a_{i-1} < a_i ≤ b ≤ b_i < b_{i-1}`, taking the smallest `a_i`
/// and then the shortest. Each `Δ_i` is replaced by `[a_{i+1}, b_i]`, and the
/// last one by `[b+1, b_r]`; empty results are dropped.
pub fn removal(d: &Segment, h: &Multisegment) -> Result<(Multisegment, Vec<Segment>)> {
    let first = h
        .iter()
        .filter(|s| s.line() == d.line() && s.a2() == d.a2() && s.b2() >= d.b2())
        .min_by_key(|s| s.b2())
        .copied()
        .ok_or_else(|| Error::Inapplicable(d.to_string(), h.to_string()))?;
    let mut seq = vec![first];
    loop {
        let cur = *seq.last().expect("nonempty");
        let next = h
            .iter()
            .filter(|s| {
                s.same_coset(d)
                    && s.a2() > cur.a2()
                    && s.b2() < cur.b2()
                    && s.a2() <= d.b2()
                    && s.b2() >= d.b2()
            })
            .min_by_key(|s| (s.a2(), s.b2()))
            .copied();
        match next {
            Some(s) => seq.push(s),
            None => break,
        }
    }
    let mut out: Vec<Segment> = h.segs().to_vec();
    for s in &seq {
        let i = out.iter().position(|t| t == s).expect("sequence drawn from h");
        out.remove(i);
    }
    for (i, s) in seq.iter().enumerate() {
        let a = if i + 1 < seq.len() { seq[i + 1].a2() } else { d.b2() + 2 };
        if a <= s.b2() {
            out.push(Segment::new(s.line(), a, s.b2()).expect("truncation"));
        }
    }
    Ok((Multisegment::from_vec(out), seq))
}

/// `𝔯(𝔪, 𝔥)`, folding single removals over an ascending order of `𝔪`.
pub fn removal_multi(m: &Multisegment, h: &Multisegment) -> Result<Multisegment> {
    let mut cur = h.clone();
    for d in order(m, OrderMode::Ascending) {
        cur = removal(&d, &cur)?.0;
    }
    Ok(cur)
}
