use colour3_core::closedforms::{g2, g4};
use colour3_core::ribbon::*;
use colour3_core::QuadratureRule;

#[test]
fn second_order_has_one_class() {
    let classes = enumerate_2pt(1).unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0].multiplicity, 2);
}

#[test]
fn fourth_order_classes() {
    let classes = enumerate_2pt(2).unwrap();
    let kinds: Vec<_> = classes.iter().map(|c| c.representative.fourth_order_kind().unwrap()).collect();
    assert_eq!(kinds, FourthOrder::ALL.to_vec());
    let s: Vec<usize> = classes.iter().map(|c| c.multiplicity).collect();
    assert_eq!(s, vec![2, 4, 4, 4]);
    for c in &classes {
        let g = &c.representative;
        assert!(g.satisfies_colour_rule());
        assert_eq!(g.euler_characteristic(), 2);
        assert_eq!(g.internal_face_count(), 2);
    }
}

#[test]
fn mixed_external_colours_give_nothing() {
    assert!(enumerate_2pt_coloured(1, [1, 2]).unwrap().is_empty());
    assert!(enumerate_2pt_coloured(2, [2, 3]).unwrap().is_empty());
    assert!(enumerate_2pt(3).is_err());
}

#[test]
fn worked_examples_at_reference_points() {
    let rule = QuadratureRule::default();
    let a1 = amplitude(&worked_example_1(), &[1.0, 0.0], &rule).unwrap();
    assert!((a1 - 1.0 / 12.0).abs() < 1e-15);
    let a2 = amplitude(&worked_example_2(), &[1.0, 0.0], &rule).unwrap();
    assert!((a2 - std::f64::consts::LN_2 / 4.0).abs() < 1e-12);
    let a3 = amplitude(&worked_example_3(), &[1.0, 2.0, 3.0], &rule).unwrap();
    assert!((a3 - worked_example_3_closed(1.0, 2.0, 3.0)).abs() < 1e-12);
    assert!(amplitude(&worked_example_3(), &[1.0, 2.0], &rule).is_err());
}

#[test]
fn resummation_matches_closed_forms() {
    let rule = QuadratureRule::default();
    let one = enumerate_2pt(1).unwrap();
    let two = enumerate_2pt(2).unwrap();
    for &(p1, p2) in &[(1.0, 0.0), (0.3, 4.1), (2.5, 2.0)] {
        assert!((resum(&one, p1, p2, &rule).unwrap() - g2(p1, p2)).abs() < 1e-9);
        assert!((resum(&two, p1, p2, &rule).unwrap() - g4(p1, p2)).abs() < 1e-7);
    }
    let diag = resum(&two, 1.0, 1.0 + 1e-6, &rule).unwrap();
    assert!(diag.is_finite());
}

#[test]
fn closed_amplitudes_match_quadrature() {
    let rule = QuadratureRule::default();
    let classes = enumerate_2pt(2).unwrap();
    let grid = [0.0, 1.25, 2.5, 3.75, 5.0];
    for c in &classes {
        let kind = c.representative.fourth_order_kind().unwrap();
        for &p1 in &grid {
            for &p2 in &grid {
                let p2 = if p1 == p2 { p2 + 0.1 } else { p2 };
                let num = amplitude(&c.representative, &[p1, p2], &rule).unwrap();
                let closed = amplitude_closed(kind, p1, p2).unwrap();
                assert!((num - closed).abs() < 1e-8, "{kind:?} {p1} {p2}: {num} {closed}");
            }
        }
    }
    let g2 = amplitude_closed(FourthOrder::Gamma2, 1.0, 0.0).unwrap();
    assert!((g2 - std::f64::consts::LN_2.powi(2) / 8.0).abs() < 1e-15);
}

#[test]
fn under_resolved_rule_is_flagged() {
    let rule = colour3_core::make_rule(2, 2).unwrap();
    let g = &enumerate_2pt(2).unwrap()[0].representative;
    assert!(matches!(
        amplitude(g, &[1.0, 0.0], &rule),
        Err(colour3_core::Error::NonConvergence { .. })
    ));
}
