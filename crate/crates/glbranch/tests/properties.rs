//! Randomized algebraic identities.

use proptest::prelude::*;

use glbranch::calculus::{
    derivative, derivative_seq, double_derivative_completion, double_integral_completion, dual_rep, highest,
    integral, integral_seq, langlands_to_zelevinsky, mw_involution,
};
use glbranch::commutation::{dual_transport, is_strongly_commutative_multi, minimize, minimize_alt};
use glbranch::core::{iu_moves, order, seg_precedes, OrderMode, Transform};
use glbranch::invariants::hd;
use glbranch::text::parse_rep;
use glbranch::{IrrRep, Line, Multisegment, Segment, Side};

/// Segments on the standard line with exponents `offset2/2 + k`, `k < 5`.
fn segment(offset2: i32) -> impl Strategy<Value = Segment> {
    (0..5i32, 0..3i32).prop_map(move |(a, len)| Segment::new(Line::standard(), offset2 + 2 * a, offset2 + 2 * (a + len)).unwrap())
}

fn mult(offset2: i32, max: usize) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec(segment(offset2), 0..=max).prop_map(Multisegment::from_vec)
}

fn rep(max: usize) -> impl Strategy<Value = IrrRep> {
    mult(0, max).prop_map(IrrRep::new)
}

fn mixed_mult(max: usize) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec(prop_oneof![segment(0), segment(-1)], 0..=max).prop_map(Multisegment::from_vec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_idempotent(m in mixed_mult(5)) {
        let again = Multisegment::from_vec(m.segs().to_vec());
        prop_assert_eq!(&again, &m);
        let rev: Multisegment = m.iter().rev().copied().collect();
        prop_assert_eq!(rev, m);
    }

    #[test]
    fn dual_and_shift_invert(m in mixed_mult(5), q in -3i32..=3) {
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.shift(q).shift(-q), m.clone());
        prop_assert_eq!(m.shift(q).csupp().len(), m.csupp().len());
    }

    #[test]
    fn intersection_union_keeps_support(m in mult(0, 4)) {
        let mut supp = m.csupp();
        supp.sort();
        for n in iu_moves(&m) {
            let mut s = n.csupp();
            s.sort();
            prop_assert_eq!(&s, &supp);
        }
    }

    #[test]
    fn ascending_order_reversed_is_descending(m in mixed_mult(5)) {
        let asc = order(&m, OrderMode::Ascending);
        let mut rev = asc.clone();
        rev.reverse();
        let desc = order(&m, OrderMode::Descending);
        for i in 0..asc.len() {
            for j in i + 1..asc.len() {
                prop_assert!(!seg_precedes(&asc[j], &asc[i]));
                prop_assert!(!seg_precedes(&rev[i], &rev[j]));
                prop_assert!(!seg_precedes(&desc[i], &desc[j]));
            }
        }
    }

    #[test]
    fn integral_and_derivative_invert(pi in rep(3), d in segment(0), side in prop_oneof![Just(Side::Right), Just(Side::Left)]) {
        let up = integral(&pi, &d, side);
        prop_assert_eq!(derivative(&up, &d, side), Some(pi.clone()));
        if let Some(down) = derivative(&pi, &d, side) {
            prop_assert_eq!(integral(&down, &d, side), pi.clone());
        }
    }

    #[test]
    fn left_operations_are_dual_right_operations(pi in rep(3), d in segment(0)) {
        let a = integral(&pi, &d, Side::Left);
        let b = dual_rep(&integral(&dual_rep(&pi), &d.dual(), Side::Right));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hd_realizes_the_highest_derivative(pi in rep(4)) {
        for side in [Side::Right, Side::Left] {
            let h = hd(&pi, side);
            prop_assert_eq!(derivative_seq(&pi, &h, side), Some(highest(&pi, side, false).1));
            prop_assert_eq!(h.abs_len(), pi.level() as u64);
        }
    }

    #[test]
    fn double_derivative_reaches_the_top(pi in rep(3), m in mult(0, 2)) {
        if derivative_seq(&pi, &m, Side::Right).is_some() {
            let n = double_derivative_completion(&pi, &m).unwrap();
            let d = derivative_seq(&pi, &m, Side::Right).unwrap();
            prop_assert_eq!(derivative_seq(&d, &n, Side::Right), Some(highest(&pi, Side::Right, false).1));
        }
    }

    #[test]
    fn double_integral_contract(pi in rep(3), m in mult(0, 2)) {
        let n = double_integral_completion(&pi, &m).unwrap();
        let tau = integral_seq(&pi, &m, Side::Left);
        let omega = integral_seq(&tau, &n, Side::Left);
        prop_assert_eq!(highest(&omega, Side::Left, false).1, pi.clone());
        prop_assert_eq!(omega.level(), tau.level());
    }

    #[test]
    fn minimization_is_order_independent(pi in rep(3), m in mult(0, 3)) {
        if derivative_seq(&pi, &m, Side::Right).is_some() {
            let a = minimize(&pi, &m, Side::Right).unwrap();
            let b = minimize_alt(&pi, &m, Side::Right).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn transport_keeps_strong_triples(pi in rep(3), m in mult(0, 2), n in mult(-1, 2)) {
        let shifted = Transform::Shift(1).apply_rep(&pi);
        if derivative_seq(&shifted, &m.shift(1), Side::Right).is_some() {
            let m = m.shift(1);
            if is_strongly_commutative_multi(&m, &n, &shifted).unwrap() {
                let (n2, m2, tau) = dual_transport(&m, &n, &shifted).unwrap();
                prop_assert_eq!(n2, n.clone());
                prop_assert_eq!(m2, m.clone());
                let d = derivative_seq(&shifted, &m, Side::Right).unwrap();
                prop_assert_eq!(tau.clone(), integral_seq(&d, &n, Side::Left));
                // reading the transported triple backwards recovers π
                let back = integral_seq(&derivative_seq(&tau, &n, Side::Left).unwrap(), &m, Side::Right);
                prop_assert_eq!(back, shifted);
            }
        }
    }

    #[test]
    fn involution_is_an_involution(m in mixed_mult(4)) {
        let l = mw_involution(&m);
        prop_assert_eq!(mw_involution(&l), m.clone());
        let (mut a, mut b) = (l.csupp(), m.csupp());
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn steinberg_of_a_segment_is_the_singleton_chain() {
    for k in 0..5 {
        let d = Segment::int(0, k);
        let z = langlands_to_zelevinsky(&[d].into_iter().collect());
        let want: Multisegment = (0..=k).map(|i| Segment::int(i, i)).collect();
        assert_eq!(z, want);
        assert_eq!(parse_rep(&format!("St{{[0,{k}]}}")).unwrap().zmult(), &want);
    }
}
