//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use glbranch::calculus::{derivative_seq, integral, is_generic};
use glbranch::invariants::eta;
use glbranch::oracle::{
    corpus, corpus_on, eta_update_law, inversion_law, pieri_law, removal_law, strong_implies_commute,
    window_segments,
};
use glbranch::relevance::{branch, relevant, relevant_witnesses, zero_relative_rank};
use glbranch::text::{parse_multisegment as pm, parse_rep as pr, parse_segment as ps};
use glbranch::{IrrRep, Line, Multisegment, Segment, Side};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run(n: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let in_time = took <= limit;
    let ok = o.ok && in_time;
    let verdict = if ok { "PASS" } else { "FAIL" };
    let timing = if in_time { String::new() } else { format!(", over the {limit:?} limit") };
    println!("criterion {n}: {verdict} ({}; {:.2?}{timing})", o.detail, took);
    ok
}

fn reps(ms: Vec<Multisegment>) -> Vec<IrrRep> {
    ms.into_iter().map(IrrRep::new).collect()
}

fn half(x2: i32) -> String {
    if x2 % 2 == 0 {
        (x2 / 2).to_string()
    } else {
        format!("{x2}/2")
    }
}

/// Sum the per-representation law results over a corpus in parallel.
fn law(pis: &[IrrRep], f: impl Fn(&IrrRep) -> (usize, Vec<String>) + Sync + Send) -> (usize, Vec<String>) {
    pis.par_iter().map(f).reduce(
        || (0, Vec::new()),
        |mut a, b| {
            a.0 += b.0;
            a.1.extend(b.1);
            a
        },
    )
}

fn law_outcome(cases: usize, bad: &[String]) -> Outcome {
    let first = bad.first().map(|s| format!("; first: {s}")).unwrap_or_default();
    outcome(bad.is_empty() && cases > 0, format!("{cases} checks, {} violations{first}", bad.len()))
}

fn criterion_1() -> Outcome {
    let pi = pr("Z{[-3/2],[-1/2],[1/2],[3/2],[5/2]}").unwrap();
    let d1 = ps("[-3/2,-1/2]").unwrap();
    let d2 = ps("[-1/2]").unwrap();
    let before = eta(&pi, &d1, Side::Right);
    let after = eta(&integral(&pi, &d2, Side::Left), &d1, Side::Right);
    let pip = pr("St{[1/2,5/2],[-1/2]}").unwrap();
    let b = branch(&pi, &pip);
    let ok = before.comps == [1, 0] && after.comps == [1, 1] && matches!(b, Ok((false, None)));
    outcome(ok, format!("eta {before} then {after}, branch {b:?}"))
}

fn criterion_2() -> Outcome {
    let pi = pr("Z{[0],[0],[-1,1]}").unwrap();
    let pip = pr("Z{[-1/2,1/2],[-1/2],[1/2]}").unwrap();
    let b = branch(&pi, &pip);
    let shifted = glbranch::core::Transform::Shift(1).apply_rep(&pi);
    let m = pm("{[1/2],[1/2],[3/2]}").unwrap();
    let n = pm("{[-1/2,1/2]}").unwrap();
    let right = derivative_seq(&shifted, &m, Side::Right);
    let left = derivative_seq(&pip, &n, Side::Left);
    let ok = matches!(b, Ok((true, Some(3)))) && right.is_some() && right == left;
    let shown = right.map(|r| r.to_string()).unwrap_or_else(|| "zero".into());
    outcome(ok, format!("branch {b:?}, common derivative {shown}"))
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2i32, 3] {
        // doubled exponents
        let pi = pr(&format!("Z{{[{},{}],[{}]}}", half(-(n - 2)), half(n), half(n + 2))).unwrap();
        let trivial = pr(&format!("Z{{[{},{}]}}", half(-(n - 1)), half(n - 1))).unwrap();
        let b = branch(&pi, &trivial);
        ok &= matches!(b, Ok((true, _)));
        parts.push(format!("n={n}: ({pi}, {trivial}) -> {b:?}"));
    }
    outcome(ok, parts.join(", "))
}

fn random_rep(rng: &mut ChaCha8Rng, line: Line, offset2: i32) -> IrrRep {
    let k = rng.gen_range(0..=2);
    let segs = (0..k)
        .map(|_| {
            let a = rng.gen_range(0..4);
            let len = rng.gen_range(0..3);
            Segment::new(line, offset2 + 2 * a, offset2 + 2 * (a + len)).unwrap()
        })
        .collect();
    IrrRep::new(segs)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let other = Line::intern("accept_zero_rank", None).unwrap();
    let std = Line::standard();
    let mut pairs = Vec::new();
    while pairs.len() < 50 {
        // same coset on one line (the half shift separates them) or two different lines
        let (p1, p2) = match pairs.len() % 3 {
            0 => (random_rep(&mut rng, std, 0), random_rep(&mut rng, std, 0)),
            1 => (random_rep(&mut rng, std, -1), random_rep(&mut rng, std, 1)),
            _ => (random_rep(&mut rng, std, 0), random_rep(&mut rng, other, -1)),
        };
        if zero_relative_rank(&p1, &p2) {
            pairs.push((p1, p2));
        }
    }
    let generic_pairs = pairs.iter().filter(|(a, b)| is_generic(a) && is_generic(b)).count();
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|(a, b)| {
            let r = relevant(a, b);
            let want = is_generic(a) && is_generic(b);
            let ok = r.relevant == want && (!want || r.i_star == Some(a.rank()));
            (!ok).then(|| format!("({a}, {b}) -> {} i*={:?}", r.relevant, r.i_star))
        })
        .collect();
    let o = law_outcome(pairs.len(), &bad);
    outcome(o.ok && generic_pairs > 0, format!("{}, {generic_pairs} generic pairs", o.detail))
}

/// Integer-exponent `π1` on {0,…,3} against half-integer `π2` on {-1/2,…,7/2},
/// at most six points in total.
fn sweep_pairs() -> Vec<(IrrRep, IrrRep)> {
    let line = Line::standard();
    let left = reps(corpus(6, 4));
    let right = reps(corpus_on(line, -1, 6, 5));
    let mut out = Vec::new();
    for a in &left {
        for b in &right {
            if a.csupp().len() + b.csupp().len() <= 6 {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn criterion_5(pairs: &[(IrrRep, IrrRep)], relevant_pairs: &mut Vec<(IrrRep, IrrRep)>) -> Outcome {
    let results: Vec<(bool, Option<String>)> = pairs
        .par_iter()
        .map(|(a, b)| {
            let x = relevant(a, b).relevant;
            let y = relevant(b, a).relevant;
            let z = relevant(&glbranch::calculus::dual_rep(a), &glbranch::calculus::dual_rep(b)).relevant;
            let bad = (x != y || x != z).then(|| format!("({a}, {b}): {x} swapped {y} dual {z}"));
            (x, bad)
        })
        .collect();
    let bad: Vec<String> = results.iter().filter_map(|r| r.1.clone()).collect();
    relevant_pairs.extend(pairs.iter().zip(&results).filter(|(_, r)| r.0).map(|(p, _)| p.clone()));
    let o = law_outcome(pairs.len(), &bad);
    outcome(o.ok, format!("{}, {} relevant", o.detail, relevant_pairs.len()))
}

fn criterion_6(pis: &[IrrRep], segs: &[Segment]) -> Outcome {
    let (n, bad) = law(pis, |p| removal_law(p, segs));
    law_outcome(n, &bad)
}

fn criterion_7(pis: &[IrrRep], segs: &[Segment]) -> Outcome {
    let (n, bad) = law(pis, |p| inversion_law(p, segs));
    law_outcome(n, &bad)
}

fn criterion_8(pis: &[IrrRep], segs: &[Segment]) -> Outcome {
    let (n1, bad1) = law(pis, |p| eta_update_law(p, segs));
    let (n2, bad2) = law(pis, |p| strong_implies_commute(p, segs));
    let o1 = law_outcome(n1, &bad1);
    let o2 = law_outcome(n2, &bad2);
    outcome(o1.ok && o2.ok, format!("eta rules: {}; strong triples: {}", o1.detail, o2.detail))
}

fn criterion_9(relevant_pairs: &[(IrrRep, IrrRep)]) -> Outcome {
    let bad: Vec<String> = relevant_pairs
        .par_iter()
        .filter_map(|(a, b)| {
            let w = relevant_witnesses(a, b);
            (w.len() != 1).then(|| format!("({a}, {b}): {} witnesses", w.len()))
        })
        .collect();
    law_outcome(relevant_pairs.len(), &bad)
}

fn criterion_10(pis: &[IrrRep]) -> Outcome {
    let (n, bad) = law(pis, pieri_law);
    law_outcome(n, &bad)
}

fn main() {
    let second = Duration::from_secs(1);
    let minute = Duration::from_secs(60);
    let mut all = true;
    all &= run(1, second, criterion_1);
    all &= run(2, second, criterion_2);
    all &= run(3, second, criterion_3);
    all &= run(4, Duration::from_secs(10), criterion_4);

    let pairs = sweep_pairs();
    let mut relevant_pairs = Vec::new();
    all &= run(5, 2 * minute, || criterion_5(&pairs, &mut relevant_pairs));

    let pis = reps(corpus(7, 5));
    let segs = window_segments(Line::standard(), 0, 5);
    let sizes: BTreeSet<usize> = pis.iter().map(|p| p.csupp().len()).collect();
    println!("corpus: {} representations, support sizes {sizes:?}, {} segments", pis.len(), segs.len());
    all &= run(6, minute, || criterion_6(&pis, &segs));
    all &= run(7, minute, || criterion_7(&pis, &segs));
    all &= run(8, minute, || criterion_8(&pis, &segs));
    all &= run(9, minute, || criterion_9(&relevant_pairs));
    all &= run(10, minute, || criterion_10(&pis));
    if !all {
        std::process::exit(1);
    }
}
