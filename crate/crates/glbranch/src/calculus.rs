//! Derivatives and integrals `D_Δ`, `I_Δ` on Zelevinsky multisegments.
//!
//! The only primitive is the single-point rule on the right. At a point `ρ`,
//! segments ending at `ρ` are candidates and segments ending at `ν^{-1}ρ` are
//! blockers. Sorting both by a-end (candidates first on ties) and scanning,
//! each candidate is cancelled by the nearest earlier unmatched blocker. The
//! uncancelled candidates are free: `ε_ρ` counts them, `D_ρ` truncates the one
//! with the largest a-end, and `I_ρ` extends the leftover blocker with the
//! smallest a-end (or adds `[ρ]` when none is left).
//!
//! Segment integrals reduce to points through
//! `I_{[a,b]}(π) = I_ρ^{k+1} ∘ I_{[a+1,b]} ∘ D_ρ^k (π)` with `ρ = ν^a`,
//! `k = ε_ρ(π)`. Segment derivatives invert this and are verified by
//! re-integrating. Left-side operations conjugate by the contragredient.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::core::{order, IrrRep, Line, Multisegment, OrderMode, Point, Segment, Side, Transform};
use crate::error::{Error, Result};
use crate::invariants::{hd, removal_multi};

const MEMO_CAP: usize = 1 << 21;

thread_local! {
    static INTEGRAL: RefCell<HashMap<(Multisegment, Segment), Multisegment>> = RefCell::new(HashMap::new());
    static DERIVATIVE: RefCell<HashMap<(Multisegment, Segment), Option<Multisegment>>> = RefCell::new(HashMap::new());
}

fn memo_get<V: Clone>(
    key: &'static std::thread::LocalKey<RefCell<HashMap<(Multisegment, Segment), V>>>,
    m: &Multisegment,
    d: &Segment,
) -> Option<V> {
    key.with(|c| c.borrow().get(&(m.clone(), *d)).cloned())
}

fn memo_put<V>(
    key: &'static std::thread::LocalKey<RefCell<HashMap<(Multisegment, Segment), V>>>,
    m: &Multisegment,
    d: &Segment,
    v: V,
) {
    key.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= MEMO_CAP {
            c.clear();
        }
        c.insert((m.clone(), *d), v);
    })
}

/// Drop all memoized derivatives, integrals and highest derivative multisegments on this thread.
pub fn clear_memo() {
    INTEGRAL.with(|c| c.borrow_mut().clear());
    DERIVATIVE.with(|c| c.borrow_mut().clear());
    crate::invariants::clear_hd_memo();
}

/// Free candidates and leftover blockers at `p`, as indices in ascending a-end.
fn bracket(m: &Multisegment, p: Point) -> (Vec<usize>, Vec<usize>) {
    let mut items: Vec<(i32, u8, usize)> = Vec::new();
    for (i, s) in m.iter().enumerate() {
        if s.line() != p.line {
            continue;
        }
        if s.b2() == p.x2 {
            items.push((s.a2(), 0, i));
        } else if s.b2() == p.x2 - 2 {
            items.push((s.a2(), 1, i));
        }
    }
    items.sort_unstable();
    let mut stack = Vec::new();
    let mut free = Vec::new();
    for (_, kind, i) in items {
        if kind == 1 {
            stack.push(i);
        } else if stack.pop().is_none() {
            free.push(i);
        }
    }
    (free, stack)
}

fn replace(m: &Multisegment, i: usize, new: Option<Segment>) -> Multisegment {
    let mut v: Vec<Segment> = m.segs().to_vec();
    match new {
        Some(s) => v[i] = s,
        None => {
            v.remove(i);
        }
    }
    Multisegment::from_vec(v)
}

pub(crate) fn eps_point_r(m: &Multisegment, p: Point) -> usize {
    bracket(m, p).0.len()
}

pub(crate) fn d_point_r(m: &Multisegment, p: Point) -> Option<Multisegment> {
    let (free, _) = bracket(m, p);
    let &i = if crate::oracle::peel_corrupted() { free.first()? } else { free.last()? };
    Some(replace(m, i, m.segs()[i].trunc_right()))
}

pub(crate) fn i_point_r(m: &Multisegment, p: Point) -> Multisegment {
    let (_, left) = bracket(m, p);
    match left.first() {
        Some(&i) => replace(m, i, Some(m.segs()[i].ext_right())),
        None => m.with(Segment::point(p)),
    }
}

/// Right integral `I^R_Δ` on a Zelevinsky multisegment.
pub(crate) fn integral_r(m: &Multisegment, d: &Segment) -> Multisegment {
    if d.is_point() {
        return i_point_r(m, d.a_point());
    }
    if let Some(v) = memo_get(&INTEGRAL, m, d) {
        return v;
    }
    let rho = d.a_point();
    let k = eps_point_r(m, rho);
    let mut x = m.clone();
    for _ in 0..k {
        match d_point_r(&x, rho) {
            Some(next) => x = next,
            None => break,
        }
    }
    let rest = Segment::raw(d.line(), d.a2() + 2, d.b2());
    let mut t = integral_r(&x, &rest);
    for _ in 0..=k {
        t = i_point_r(&t, rho);
    }
    memo_put(&INTEGRAL, m, d, t.clone());
    t
}

/// Right derivative `D^R_Δ`, `None` when it vanishes.
pub(crate) fn derivative_r(t: &Multisegment, d: &Segment) -> Option<Multisegment> {
    if d.is_point() {
        return d_point_r(t, d.a_point());
    }
    if let Some(v) = memo_get(&DERIVATIVE, t, d) {
        return v;
    }
    let out = derivative_r_uncached(t, d);
    memo_put(&DERIVATIVE, t, d, out.clone());
    out
}

fn derivative_r_uncached(t: &Multisegment, d: &Segment) -> Option<Multisegment> {
    let rho = d.a_point();
    let k = eps_point_r(t, rho);
    if k == 0 {
        return None;
    }
    let mut x = t.clone();
    for _ in 0..k {
        x = d_point_r(&x, rho)?;
    }
    let rest = Segment::raw(d.line(), d.a2() + 2, d.b2());
    let mut y = derivative_r(&x, &rest)?;
    for _ in 1..k {
        y = i_point_r(&y, rho);
    }
    (integral_r(&y, d) == *t).then_some(y)
}

fn integral_m(m: &Multisegment, d: &Segment, side: Side) -> Multisegment {
    match side {
        Side::Right => integral_r(m, d),
        Side::Left => integral_r(&m.dual(), &d.dual()).dual(),
    }
}

fn derivative_m(m: &Multisegment, d: &Segment, side: Side) -> Option<Multisegment> {
    match side {
        Side::Right => derivative_r(m, d),
        Side::Left => derivative_r(&m.dual(), &d.dual()).map(|x| x.dual()),
    }
}

/// `I_Δ(π)`: the unique irreducible submodule of `π × St(Δ)` (right) or `St(Δ) × π` (left).
pub fn integral(pi: &IrrRep, d: &Segment, side: Side) -> IrrRep {
    IrrRep::new(integral_m(pi.zmult(), d, side))
}

/// `D_Δ(π)`, or `None` when `ε_Δ(π) = 0`.
pub fn derivative(pi: &IrrRep, d: &Segment, side: Side) -> Option<IrrRep> {
    derivative_m(pi.zmult(), d, side).map(IrrRep::new)
}

/// Fold of derivatives over an ascending order (right) or a descending order (left).
pub fn derivative_seq(pi: &IrrRep, m: &Multisegment, side: Side) -> Option<IrrRep> {
    match side {
        Side::Right => {
            let mut t = pi.zmult().clone();
            for d in order(m, OrderMode::Ascending) {
                t = derivative_r(&t, &d)?;
            }
            Some(IrrRep::new(t))
        }
        Side::Left => derivative_seq(&dual_rep(pi), &m.dual(), Side::Right).map(|x| dual_rep(&x)),
    }
}

/// Fold of integrals over an ascending order (left) or a descending order (right).
pub fn integral_seq(pi: &IrrRep, m: &Multisegment, side: Side) -> IrrRep {
    match side {
        Side::Left => {
            let mut t = pi.zmult().dual();
            for d in order(m, OrderMode::Ascending) {
                t = integral_r(&t, &d.dual());
            }
            IrrRep::new(t.dual())
        }
        Side::Right => dual_rep(&integral_seq(&dual_rep(pi), &m.dual(), Side::Left)),
    }
}

/// Level (number of segments) and the highest derivative on `side`.
///
/// The shifted variant returns `ν^{1/2}π^{(i)}` on the right and
/// `ν^{-1/2}·⁽ⁱ⁾π` on the left.
pub fn highest(pi: &IrrRep, side: Side, shifted: bool) -> (usize, IrrRep) {
    let t = match side {
        Side::Right => Transform::TruncRight,
        Side::Left => Transform::TruncLeft,
    };
    let mut out = t.apply_rep(pi);
    if shifted {
        let q = if side == Side::Right { 1 } else { -1 };
        out = Transform::Shift(q).apply_rep(&out);
    }
    (pi.level(), out)
}

pub fn level(pi: &IrrRep) -> usize {
    pi.level()
}

/// `𝔫 = 𝔯(𝔪, 𝔥𝔡(π))`, which continues `D_𝔪(π)` to the highest derivative.
pub fn double_derivative_completion(pi: &IrrRep, m: &Multisegment) -> Result<Multisegment> {
    if derivative_seq(pi, m, Side::Right).is_none() {
        return Err(Error::VanishingDerivative(format!("D_{m}({pi})")));
    }
    removal_multi(m, &hd(pi, Side::Right))
}

/// Left mirror of [`double_derivative_completion`].
pub fn double_derivative_completion_left(pi: &IrrRep, m: &Multisegment) -> Result<Multisegment> {
    double_derivative_completion(&dual_rep(pi), &m.dual()).map(|n| n.dual())
}

/// Given `π` and `𝔪`, find `𝔫` with `⁻(I_𝔫 ∘ I_𝔪(π)) = π` and
/// `lev(I_𝔫 ∘ I_𝔪(π)) = lev(I_𝔪(π))`, both integrals on the left.
///
/// Construction: `τ = I_𝔪(π)`, `τ⁺` extends every segment of `τ` at its
/// b-end, `𝔥 = 𝔥𝔡(τ⁺)`. Then `D^L_𝔪(τ⁺) = I^R_𝔥(π)`, the left double
/// derivative gives `𝔫'` with `D^L_{𝔫'} ∘ D^L_𝔪 (τ⁺) = ν·τ`, and `𝔫 = ν^{-1}𝔫'`.
pub fn double_integral_completion(pi: &IrrRep, m: &Multisegment) -> Result<Multisegment> {
    let tau = integral_seq(pi, m, Side::Left);
    let tau_plus = Transform::ExtRight.apply_rep(&tau);
    let n = double_derivative_completion_left(&tau_plus, m)?;
    Ok(n.shift(-2))
}

pub fn is_thickened(pi: &IrrRep) -> bool {
    pi.zmult().iter().all(|s| s.rel_len() >= 2)
}

/// Extend every segment at its a-end; the highest left derivative undoes it.
pub fn thicken(pi: &IrrRep) -> IrrRep {
    Transform::ExtLeft.apply_rep(pi)
}

pub fn dual_rep(pi: &IrrRep) -> IrrRep {
    IrrRep::new(pi.zmult().dual())
}

/// `θ(π) ≅ π^∨` (Gelfand–Kazhdan).
pub fn theta(pi: &IrrRep) -> IrrRep {
    dual_rep(pi)
}

/// Mœglin–Waldspurger algorithm on one coset of one line.
fn mw_class(mut m: Vec<Segment>) -> Vec<Segment> {
    let mut out = Vec::new();
    while !m.is_empty() {
        let e = m.iter().map(|s| s.b2()).max().expect("nonempty");
        let line = m[0].line();
        let mut chain = Vec::new();
        let mut cur = *m.iter().filter(|s| s.b2() == e).max_by_key(|s| s.a2()).expect("end exists");
        chain.push(cur);
        let mut end = e;
        loop {
            end -= 2;
            let next = m
                .iter()
                .filter(|s| s.b2() == end && s.a2() < cur.a2())
                .max_by_key(|s| s.a2());
            match next {
                Some(s) => {
                    cur = *s;
                    chain.push(cur);
                }
                None => break,
            }
        }
        out.push(Segment::raw(line, end + 2, e));
        for s in chain {
            let i = m.iter().position(|t| *t == s).expect("chain member present");
            m.swap_remove(i);
            if let Some(t) = s.trunc_right() {
                m.push(t);
            }
        }
    }
    out
}

/// The Mœglin–Waldspurger involution, run independently on each coset.
pub fn mw_involution(m: &Multisegment) -> Multisegment {
    let mut classes: BTreeMap<(Line, i32), Vec<Segment>> = BTreeMap::new();
    for s in m.iter() {
        classes.entry((s.line(), s.a2().rem_euclid(2))).or_default().push(*s);
    }
    classes.into_values().flat_map(mw_class).collect()
}

/// Zelevinsky parameter of `St(𝔪)`.
pub fn langlands_to_zelevinsky(m: &Multisegment) -> Multisegment {
    mw_involution(m)
}

/// Langlands parameter of `⟨𝔪⟩`.
pub fn zelevinsky_to_langlands(m: &Multisegment) -> Multisegment {
    mw_involution(m)
}

/// `⟨𝔪⟩` is generic exactly when its Langlands parameter is pairwise unlinked.
pub fn is_generic(pi: &IrrRep) -> bool {
    let l = zelevinsky_to_langlands(pi.zmult());
    let s = l.segs();
    (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !crate::core::linked(&s[i], &s[j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_multisegment as pm, parse_rep as pr, parse_segment as ps};

    #[test]
    fn point_integral_extends_toward_smaller_exponents() {
        let pi = pr("Z{[1,2],[1],[3]}").unwrap();
        let p = ps("[0]").unwrap();
        let once = integral(&pi, &p, Side::Left);
        assert_eq!(integral(&once, &p, Side::Left), pr("Z{[0,2],[0,1],[3]}").unwrap());
    }

    #[test]
    fn steinberg_fixture_integral() {
        let pi = pr("Z{[-3/2],[-1/2],[1/2],[3/2],[5/2]}").unwrap();
        let out = integral(&pi, &ps("[-1/2]").unwrap(), Side::Left);
        assert_eq!(out, pr("Z{[-3/2],[-1/2],[-1/2],[1/2],[3/2],[5/2]}").unwrap());
        let d = ps("[0,2]").unwrap();
        assert_eq!(integral(&IrrRep::trivial(), &d, Side::Left), pr("Z{[0],[1],[2]}").unwrap());
        assert_eq!(integral(&IrrRep::trivial(), &d, Side::Left), pr("St{[0,2]}").unwrap());
    }

    #[test]
    fn segment_integral_is_not_a_point_cascade() {
        let pi = pr("Z{[0]}").unwrap();
        assert_eq!(integral(&pi, &ps("[0,1]").unwrap(), Side::Right), pr("Z{[0],[0],[1]}").unwrap());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            derivative(&pr("Z{[0],[1],[2]}").unwrap(), &ps("[0,2]").unwrap(), Side::Right),
            Some(IrrRep::trivial())
        );
        assert_eq!(derivative(&pr("Z{[0],[1]}").unwrap(), &ps("[1]").unwrap(), Side::Right), None);
        assert_eq!(
            derivative(&pr("Z{[0,3]}").unwrap(), &ps("[3]").unwrap(), Side::Right),
            Some(pr("Z{[0,2]}").unwrap())
        );
    }

    #[test]
    fn sequences() {
        let pi = pr("Z{[0,3]}").unwrap();
        // ascending order applies [2] before [3], and [2] cannot be peeled first
        assert_eq!(derivative_seq(&pi, &pm("{[3],[2]}").unwrap(), Side::Right), None);
        let peeled = derivative(&pi, &ps("[3]").unwrap(), Side::Right).unwrap();
        assert_eq!(derivative(&peeled, &ps("[2]").unwrap(), Side::Right), Some(pr("Z{[0,1]}").unwrap()));
        assert_eq!(derivative_seq(&pi, &Multisegment::new(), Side::Right), Some(pi.clone()));
        let p = Transform::Shift(1).apply_rep(&pr("Z{[0],[0],[-1,1]}").unwrap());
        let lhs = derivative_seq(&p, &pm("{[1/2],[1/2],[3/2]}").unwrap(), Side::Right).unwrap();
        let rhs = derivative_seq(&pr("Z{[-1/2,1/2],[-1/2],[1/2]}").unwrap(), &pm("{[-1/2,1/2]}").unwrap(), Side::Left)
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, pr("Z{[-1/2,1/2]}").unwrap());
    }

    #[test]
    fn levels() {
        let (l, h) = highest(&pr("Z{[0,1],[1,2]}").unwrap(), Side::Right, false);
        assert_eq!((l, h), (2, pr("Z{[0],[1]}").unwrap()));
        assert_eq!(highest(&IrrRep::trivial(), Side::Right, false), (0, IrrRep::trivial()));
        assert_eq!(highest(&pr("Z{[0]}").unwrap(), Side::Right, false), (1, IrrRep::trivial()));
        let (_, s) = highest(&pr("Z{[0,1]}").unwrap(), Side::Right, true);
        assert_eq!(s, pr("Z{[1/2]}").unwrap());
    }

    #[test]
    fn double_derivative_examples() {
        let st = pr("Z{[0],[1],[2]}").unwrap();
        assert_eq!(double_derivative_completion(&st, &pm("{[0]}").unwrap()).unwrap(), pm("{[1,2]}").unwrap());
        assert_eq!(double_derivative_completion(&st, &Multisegment::new()).unwrap(), hd(&st, Side::Right));
        let z = pr("Z{[0,3]}").unwrap();
        assert_eq!(double_derivative_completion(&z, &pm("{[3]}").unwrap()).unwrap(), Multisegment::new());
        assert!(matches!(
            double_derivative_completion(&st, &pm("{[2]}").unwrap()),
            Err(Error::VanishingDerivative(_))
        ));
    }

    fn check_double_integral(pi: &IrrRep, m: &Multisegment) {
        let n = double_integral_completion(pi, m).unwrap();
        let tau = integral_seq(pi, m, Side::Left);
        let omega = integral_seq(&tau, &n, Side::Left);
        assert_eq!(highest(&omega, Side::Left, false).1, *pi, "π={pi} 𝔪={m} 𝔫={n}");
        assert_eq!(omega.level(), tau.level(), "π={pi} 𝔪={m} 𝔫={n}");
    }

    #[test]
    fn double_integral_examples() {
        check_double_integral(&pr("Z{[0]}").unwrap(), &Multisegment::new());
        assert_eq!(double_integral_completion(&pr("Z{[0]}").unwrap(), &Multisegment::new()).unwrap(), pm("{[-1]}").unwrap());
        check_double_integral(&pr("Z{[0,1]}").unwrap(), &Multisegment::new());
        check_double_integral(&pr("Z{[0],[1]}").unwrap(), &pm("{[1]}").unwrap());
        check_double_integral(&pr("Z{[0,1],[1]}").unwrap(), &pm("{[0],[2,3]}").unwrap());
    }

    #[test]
    fn thickening() {
        assert!(is_thickened(&pr("Z{[0,1],[2,3]}").unwrap()));
        assert!(!is_thickened(&pr("Z{[0]}").unwrap()));
        let t = thicken(&pr("Z{[0],[2]}").unwrap());
        assert_eq!(t, pr("Z{[-1,0],[1,2]}").unwrap());
        assert_eq!(highest(&t, Side::Left, false).1, pr("Z{[0],[2]}").unwrap());
    }

    #[test]
    fn duals() {
        assert_eq!(dual_rep(&pr("Z{[0,1]}").unwrap()), pr("Z{[-1,0]}").unwrap());
        let p = pr("Z{[0,2],[1/2],[1]}").unwrap();
        assert_eq!(dual_rep(&dual_rep(&p)), p);
        assert_eq!(theta(&p), dual_rep(&p));
    }

    #[test]
    fn langlands_conversion() {
        assert_eq!(langlands_to_zelevinsky(&pm("{[0,2]}").unwrap()), pm("{[0],[1],[2]}").unwrap());
        assert_eq!(langlands_to_zelevinsky(&pm("{[0]}").unwrap()), pm("{[0]}").unwrap());
        assert_eq!(zelevinsky_to_langlands(&pm("{[0,2]}").unwrap()), pm("{[0],[1],[2]}").unwrap());
        assert!(is_generic(&pr("Z{[0],[1],[2]}").unwrap()));
        assert!(!is_generic(&pr("Z{[0,1]}").unwrap()));
        assert!(is_generic(&pr("Z{[0],[2]}").unwrap()));
    }
}
