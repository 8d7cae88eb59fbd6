use num::Zero;
use ttstar_core::case::AsymptoticData;
use ttstar_core::enumeration::{all_integral_solutions, integral_solutions, Block};
use ttstar_core::theta::{check_q, k_from_tk};
use ttstar_core::{CaseId, Group};

#[test]
fn mirror_symmetry_in_groups_4_and_6() {
    for case in [CaseId::C4a, CaseId::C4b, CaseId::C6a, CaseId::C6b, CaseId::C6c] {
        let recs = integral_solutions(case);
        for r in &recs {
            let m = recs
                .iter()
                .find(|s| s.a_label == r.b_label && s.b_label == r.a_label)
                .unwrap_or_else(|| panic!("{case}: no mirror of ({},{})", r.a_label, r.b_label));
            let flipped = AsymptoticData::new(-r.asymptotic.delta.clone(), -r.asymptotic.gamma.clone());
            assert_eq!(m.asymptotic, flipped);
            assert_eq!(m.tk, r.tk);
            assert_eq!(m.stokes, r.stokes);
        }
    }
}

#[test]
fn cases_in_a_group_share_their_records() {
    for group in Group::ALL {
        let base = integral_solutions(group.cases()[0]);
        for &c in &group.cases()[1..] {
            let other = integral_solutions(c);
            for (x, y) in base.iter().zip(&other) {
                assert_eq!((&x.a_label, &x.b_label, &x.asymptotic), (&y.a_label, &y.b_label, &y.asymptotic));
                assert_eq!((&x.stokes, &x.tk, x.block), (&y.stokes, &y.tk, y.block));
            }
        }
    }
}

#[test]
fn condition_q_holds_exactly_on_edge_records() {
    for (case, recs) in all_integral_solutions() {
        assert_eq!(recs.len(), 19);
        for r in recs {
            let gaps = k_from_tk(&r.tk, case.descriptor().n_plus_1).unwrap();
            let edge = matches!(r.block, Block::TopEdge | Block::LeftEdge | Block::DiagonalEdge);
            let has_zero = r.k.shifted().iter().any(|x| x.is_zero());
            assert_eq!(check_q(&gaps), has_zero);
            if edge {
                assert!(check_q(&gaps), "{case} ({},{})", r.a_label, r.b_label);
            }
        }
    }
}
