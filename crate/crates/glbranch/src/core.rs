//! Cuspidal lines, points, segments and multisegments.
//!
//! Exponents are stored doubled, so `[-1/2, 3/2]` is kept as `a = -1`,
//! `b = 3`. Two points interact only when they sit on the same line and their
//! doubled exponents differ by an even number.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

struct LineInfo {
    name: Box<str>,
    size: u32,
    dual: OnceLock<Line>,
}

/// An interned cuspidal line. Lines compare by name.
#[derive(Clone, Copy)]
pub struct Line(&'static LineInfo);

fn registry() -> &'static Mutex<HashMap<String, Line>> {
    static REG: OnceLock<Mutex<HashMap<String, Line>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Line {
    /// Look up a line by name, registering it on first use.
    ///
    /// `size` of `None` means "whatever is registered, or 1".
    pub fn intern(name: &str, size: Option<u32>) -> Result<Line> {
        if size == Some(0) {
            return Err(Error::OutOfRange(format!("line {name} must have size >= 1")));
        }
        let mut reg = registry().lock().unwrap();
        if let Some(line) = reg.get(name) {
            if let Some(s) = size {
                if s != line.size() {
                    return Err(Error::LineConflict {
                        name: name.to_string(),
                        existing: line.size(),
                        requested: s,
                    });
                }
            }
            return Ok(*line);
        }
        let info = Box::leak(Box::new(LineInfo {
            name: name.into(),
            size: size.unwrap_or(1),
            dual: OnceLock::new(),
        }));
        let line = Line(info);
        reg.insert(name.to_string(), line);
        Ok(line)
    }

    /// The default self-dual line `r` of size 1.
    pub fn standard() -> Line {
        static R: OnceLock<Line> = OnceLock::new();
        *R.get_or_init(|| Line::intern("r", Some(1)).expect("default line"))
    }

    pub fn name(&self) -> &'static str {
        &self.0.name
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Partner line under contragredient; a line is self-dual unless paired.
    pub fn dual(&self) -> Line {
        self.0.dual.get().copied().unwrap_or(*self)
    }

    /// Declare `a` and `b` to be contragredient partners.
    pub fn pair(a: Line, b: Line) -> Result<()> {
        if a.size() != b.size() {
            return Err(Error::OutOfRange(format!(
                "dual lines {} and {} must have equal size",
                a.name(),
                b.name()
            )));
        }
        for (x, y) in [(a, b), (b, a)] {
            let cur = *x.0.dual.get_or_init(|| y);
            if cur != y {
                return Err(Error::OutOfRange(format!(
                    "line {} already paired with {}",
                    x.name(),
                    cur.name()
                )));
            }
        }
        Ok(())
    }
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Line {}

impl Hash for Line {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0 as *const LineInfo as usize).hash(state)
    }
}

impl PartialOrd for Line {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Line {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self == other {
            std::cmp::Ordering::Equal
        } else {
            self.name().cmp(other.name())
        }
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Render a doubled exponent as an integer or a half-integer.
pub fn fmt_half(x2: i32) -> String {
    if x2 % 2 == 0 {
        format!("{}", x2 / 2)
    } else {
        format!("{x2}/2")
    }
}

/// A cuspidal point `ν^x ρ`, with `x` doubled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Point {
    pub line: Line,
    pub x2: i32,
}

impl Point {
    pub fn new(line: Line, x2: i32) -> Point {
        Point { line, x2 }
    }

    /// True when the two points lie in the same `ν^ℤ`-orbit.
    pub fn comparable(&self, other: &Point) -> bool {
        self.line == other.line && (self.x2 - other.x2) % 2 == 0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_half(self.x2))?;
        write_line_suffix(f, self.line)
    }
}

fn write_line_suffix(f: &mut fmt::Formatter<'_>, line: Line) -> fmt::Result {
    if line != Line::standard() || line.size() != 1 {
        write!(f, "@{}", line.name())?;
        if line.size() != 1 {
            write!(f, ":{}", line.size())?;
        }
    }
    Ok(())
}

/// A nonempty segment `[a,b]_ρ` with doubled exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    line: Line,
    a: i32,
    b: i32,
}

impl Segment {
    pub fn new(line: Line, a2: i32, b2: i32) -> Result<Segment> {
        if b2 < a2 || (b2 - a2) % 2 != 0 {
            return Err(Error::OutOfRange(format!(
                "[{},{}] is not a nonempty segment",
                fmt_half(a2),
                fmt_half(b2)
            )));
        }
        Ok(Segment { line, a: a2, b: b2 })
    }

    /// Construct without validation; `b - a` must be even and non-negative.
    pub(crate) fn raw(line: Line, a: i32, b: i32) -> Segment {
        debug_assert!(b >= a && (b - a) % 2 == 0);
        Segment { line, a, b }
    }

    /// `[a,b]` on the standard line with integer exponents.
    pub fn int(a: i32, b: i32) -> Segment {
        Segment::new(Line::standard(), 2 * a, 2 * b).expect("valid integer segment")
    }

    /// A single point as a segment.
    pub fn point(p: Point) -> Segment {
        Segment { line: p.line, a: p.x2, b: p.x2 }
    }

    pub fn line(&self) -> Line {
        self.line
    }
    /// Doubled a-end.
    pub fn a2(&self) -> i32 {
        self.a
    }
    /// Doubled b-end.
    pub fn b2(&self) -> i32 {
        self.b
    }
    pub fn a_point(&self) -> Point {
        Point::new(self.line, self.a)
    }
    pub fn b_point(&self) -> Point {
        Point::new(self.line, self.b)
    }

    pub fn rel_len(&self) -> u32 {
        ((self.b - self.a) / 2 + 1) as u32
    }

    pub fn abs_len(&self) -> u64 {
        self.rel_len() as u64 * self.line.size() as u64
    }

    pub fn is_point(&self) -> bool {
        self.a == self.b
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (self.a..=self.b).step_by(2).map(move |x| Point::new(self.line, x))
    }

    pub fn same_coset(&self, other: &Segment) -> bool {
        self.line == other.line && (self.a - other.a) % 2 == 0
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.same_coset(other) && self.a <= other.a && other.b <= self.b
    }

    pub fn shift(&self, q2: i32) -> Segment {
        Segment { line: self.line, a: self.a + q2, b: self.b + q2 }
    }

    pub fn dual(&self) -> Segment {
        Segment { line: self.line.dual(), a: -self.b, b: -self.a }
    }

    /// `Δ^-`: drop the b-end point.
    pub fn trunc_right(&self) -> Option<Segment> {
        (self.a < self.b).then(|| Segment { b: self.b - 2, ..*self })
    }

    /// `⁻Δ`: drop the a-end point.
    pub fn trunc_left(&self) -> Option<Segment> {
        (self.a < self.b).then(|| Segment { a: self.a + 2, ..*self })
    }

    pub fn ext_right(&self) -> Segment {
        Segment { b: self.b + 2, ..*self }
    }

    pub fn ext_left(&self) -> Segment {
        Segment { a: self.a - 2, ..*self }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "[{}]", fmt_half(self.a))?;
        } else {
            write!(f, "[{},{}]", fmt_half(self.a), fmt_half(self.b))?;
        }
        write_line_suffix(f, self.line)
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// True when the union is a segment and neither contains the other.
pub fn linked(d1: &Segment, d2: &Segment) -> bool {
    seg_precedes(d1, d2) || seg_precedes(d2, d1)
}

/// `Δ1 < Δ2`: linked with `b(Δ1) < b(Δ2)`.
pub fn seg_precedes(d1: &Segment, d2: &Segment) -> bool {
    d1.same_coset(d2) && d1.a < d2.a && d1.b < d2.b && d2.a <= d1.b + 2
}

/// A multiset of segments kept in canonical sorted order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multisegment(Vec<Segment>);

impl Multisegment {
    pub fn new() -> Multisegment {
        Multisegment(Vec::new())
    }

    pub fn from_vec(mut v: Vec<Segment>) -> Multisegment {
        v.sort_unstable();
        Multisegment(v)
    }

    pub fn segs(&self) -> &[Segment] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.0.iter()
    }

    pub fn count(&self, s: &Segment) -> usize {
        self.0.iter().filter(|t| *t == s).count()
    }

    pub fn contains(&self, s: &Segment) -> bool {
        self.0.binary_search(s).is_ok()
    }

    pub fn with(&self, s: Segment) -> Multisegment {
        let mut v = self.0.clone();
        let pos = v.partition_point(|t| *t < s);
        v.insert(pos, s);
        Multisegment(v)
    }

    pub fn without(&self, s: &Segment) -> Option<Multisegment> {
        let pos = self.0.binary_search(s).ok()?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Multisegment(v))
    }

    /// Multiset sum.
    pub fn plus(&self, other: &Multisegment) -> Multisegment {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Multisegment::from_vec(v)
    }

    /// Sorted multiset of cuspidal points.
    pub fn csupp(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.0.iter().flat_map(|s| s.points()).collect();
        v.sort_unstable();
        v
    }

    /// Σ l_a over the segments.
    pub fn abs_len(&self) -> u64 {
        self.0.iter().map(|s| s.abs_len()).sum()
    }

    /// Apply a segment map elementwise, dropping empties.
    pub fn map(&self, f: impl Fn(&Segment) -> Option<Segment>) -> Multisegment {
        Multisegment::from_vec(self.0.iter().filter_map(f).collect())
    }

    pub fn shift(&self, q2: i32) -> Multisegment {
        Multisegment(self.0.iter().map(|s| s.shift(q2)).collect())
    }

    pub fn dual(&self) -> Multisegment {
        self.map(|s| Some(s.dual()))
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Multisegment::from_vec(iter.into_iter().collect())
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An irreducible representation `⟨𝔪⟩`, stored by its Zelevinsky multisegment.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IrrRep {
    zmult: Multisegment,
}

impl IrrRep {
    pub fn new(zmult: Multisegment) -> IrrRep {
        IrrRep { zmult }
    }

    /// The trivial representation of `G_0`.
    pub fn trivial() -> IrrRep {
        IrrRep::default()
    }

    pub fn zmult(&self) -> &Multisegment {
        &self.zmult
    }

    pub fn into_zmult(self) -> Multisegment {
        self.zmult
    }

    /// Number of segments, which is the level of the representation.
    pub fn level(&self) -> usize {
        self.zmult.len()
    }

    /// `n` such that the representation lives on `G_n`.
    pub fn rank(&self) -> u64 {
        self.zmult.abs_len()
    }

    pub fn csupp(&self) -> Vec<Point> {
        self.zmult.csupp()
    }
}

impl fmt::Display for IrrRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}", self.zmult)
    }
}

impl fmt::Debug for IrrRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Elementwise transforms shared by segments, multisegments and representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    /// Shift by a doubled amount; `Shift(1)` is multiplication by `ν^{1/2}`.
    Shift(i32),
    Dual,
    TruncRight,
    TruncLeft,
    ExtRight,
    ExtLeft,
}

impl Transform {
    pub fn apply_seg(&self, s: &Segment) -> Option<Segment> {
        match *self {
            Transform::Shift(q) => Some(s.shift(q)),
            Transform::Dual => Some(s.dual()),
            Transform::TruncRight => s.trunc_right(),
            Transform::TruncLeft => s.trunc_left(),
            Transform::ExtRight => Some(s.ext_right()),
            Transform::ExtLeft => Some(s.ext_left()),
        }
    }

    pub fn apply(&self, m: &Multisegment) -> Multisegment {
        m.map(|s| self.apply_seg(s))
    }

    pub fn apply_rep(&self, pi: &IrrRep) -> IrrRep {
        IrrRep::new(self.apply(pi.zmult()))
    }
}

/// Replace a linked pair by its union and (nonempty) intersection.
pub fn intersection_union(m: &Multisegment, d1: &Segment, d2: &Segment) -> Result<Multisegment> {
    let rest = m
        .without(d1)
        .ok_or_else(|| Error::NotPresent(d1.to_string(), m.to_string()))?;
    let rest = rest
        .without(d2)
        .ok_or_else(|| Error::NotPresent(d2.to_string(), m.to_string()))?;
    if !linked(d1, d2) {
        return Err(Error::NotLinked(d1.to_string(), d2.to_string()));
    }
    let (x, y) = if seg_precedes(d1, d2) { (d1, d2) } else { (d2, d1) };
    let mut out = rest.with(Segment::raw(x.line, x.a, y.b));
    if y.a <= x.b {
        out = out.with(Segment::raw(x.line, y.a, x.b));
    }
    Ok(out)
}

/// All multisegments one intersection–union step below `m`, sorted and deduplicated.
pub fn iu_moves(m: &Multisegment) -> Vec<Multisegment> {
    let segs = m.segs();
    let mut out = BTreeSet::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if (i > 0 && segs[i] == segs[i - 1]) || (j > i + 1 && segs[j] == segs[j - 1]) {
                continue;
            }
            if linked(&segs[i], &segs[j]) {
                out.insert(intersection_union(m, &segs[i], &segs[j]).expect("linked pair present"));
            }
        }
    }
    out.into_iter().collect()
}

/// `m1 ≤_Z m2`: `m1` is reachable from `m2` by intersection–union steps.
pub fn leq_z(m1: &Multisegment, m2: &Multisegment) -> bool {
    if m1 == m2 {
        return true;
    }
    if m1.len() > m2.len() || m1.csupp() != m2.csupp() {
        return false;
    }
    let mut seen: HashSet<Multisegment> = HashSet::new();
    let mut queue = VecDeque::from([m2.clone()]);
    seen.insert(m2.clone());
    while let Some(cur) = queue.pop_front() {
        for next in iu_moves(&cur) {
            if &next == m1 {
                return true;
            }
            // moves never raise the segment count, so undershooting is final
            if next.len() >= m1.len() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}

/// All multisegments `≤_Z m`, including `m` itself.
pub fn downward_closure(m: &Multisegment) -> Vec<Multisegment> {
    let mut seen: BTreeSet<Multisegment> = BTreeSet::new();
    let mut stack = vec![m.clone()];
    seen.insert(m.clone());
    while let Some(cur) = stack.pop() {
        for next in iu_moves(&cur) {
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// `(𝔪_{a=ρ}, 𝔪_{b=ρ})`.
pub fn slices(m: &Multisegment, rho: &Point) -> (Multisegment, Multisegment) {
    let a = m.iter().filter(|s| s.a_point() == *rho).copied().collect();
    let b = m.iter().filter(|s| s.b_point() == *rho).copied().collect();
    (a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderMode {
    Ascending,
    Descending,
}

/// A labeling compatible with `<`, ties broken by canonical order.
pub fn order(m: &Multisegment, mode: OrderMode) -> Vec<Segment> {
    let mut rest: Vec<Segment> = m.segs().to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let pick = (0..rest.len())
            .find(|&i| {
                let s = &rest[i];
                rest.iter().all(|t| match mode {
                    OrderMode::Ascending => !seg_precedes(t, s),
                    OrderMode::Descending => !seg_precedes(s, t),
                })
            })
            .expect("precedence is acyclic");
        out.push(rest.remove(pick));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}
