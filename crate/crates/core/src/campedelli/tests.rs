use super::*;
use crate::ambient::{ConePoint, Point};
use crate::group::GroupElement;
use crate::scalars::{Field, DEFAULT_PRIMES};

fn family(label: FamilyLabel) -> Family {
    build_family(label).unwrap()
}

#[test]
fn every_family_has_eight_invariant_cubics() {
    for label in FamilyLabel::ALL {
        assert_eq!(invariant_cubics(&family(label)).unwrap().dim(), 8, "{label}");
    }
}

#[test]
fn segre_coordinates_carry_powers_of_zeta() {
    let cs = coordinate_characters(&family(FamilyLabel::A)).unwrap();
    for (j, c) in cs.iter().enumerate() {
        assert_eq!(c.name, format!("z{}", j + 1));
        assert_eq!(c.character.exps, vec![j as u32 + 1]);
    }
}

#[test]
fn b_coordinates_are_named_by_their_characters() {
    for label in [FamilyLabel::B1, FamilyLabel::B2] {
        let cs = coordinate_characters(&family(label)).unwrap();
        assert_eq!(cs.len(), 8);
        for c in cs {
            assert_eq!(c.name, format!("z{}{}", c.character.exps[0], c.character.exps[1]), "{label}");
        }
    }
}

#[test]
fn segre_fixed_points() {
    let counts: Vec<usize> = exact_fixed_points(&family(FamilyLabel::A)).unwrap().iter().map(|l| l.points.len()).collect();
    assert_eq!(counts, vec![2, 2, 8, 2, 2, 8, 2, 2]);
}

#[test]
fn cone_fixed_points_and_vertex() {
    let fam = family(FamilyLabel::B2);
    for l in exact_fixed_points(&fam).unwrap() {
        let expected = if l.element.exps[1] == 0 { 7 } else { 4 };
        assert_eq!(l.points.len(), expected, "{}", l.element);
        assert!(l.points.contains(&Point::Cone(ConePoint::Vertex)));
    }
}

#[test]
fn flag_fixed_loci_are_finite_and_project_to_twelve_points() {
    let fam = family(FamilyLabel::B1);
    let mut proj: Vec<Vec<CyclotomicScalar>> = Vec::new();
    for l in exact_fixed_points(&fam).unwrap() {
        assert!(!l.points.is_empty() && l.points.len() < 10);
        for p in l.points {
            let Point::Multi(v) = p else { panic!("flag points are multi-projective") };
            let x = v[..3].to_vec();
            if !proj.contains(&x) {
                proj.push(x);
            }
        }
    }
    assert_eq!(proj.len(), 12);
}

#[test]
fn fixed_points_annihilate_nontrivial_spaces() {
    for label in FamilyLabel::ALL {
        let r = base_point_lemma_check(&family(label)).unwrap();
        assert!(r.checked > 0);
        assert!(r.violations.is_empty(), "{label}: {:?}", r.violations);
    }
}

#[test]
fn centralizers_give_the_moduli_counts() {
    let got: Vec<(usize, i64)> = FamilyLabel::ALL.iter().map(|&l| centralizer_dimension(&family(l)).unwrap()).collect();
    assert_eq!(got, vec![(1, 6), (0, 7), (1, 6)]);
}

#[test]
fn cubes_of_coordinates_certify_freeness() {
    for label in [FamilyLabel::B1, FamilyLabel::B2] {
        let fam = family(label);
        let t1 = invariant_cubics(&fam).unwrap();
        let r = certify_freeness(&fam, &t1, &DEFAULT_PRIMES).unwrap();
        assert_eq!(r.kind, "exact");
        assert_eq!(r.cubes_in_t1, Some(true));
    }
}

#[test]
fn degeneration_endpoints() {
    let one = CyclotomicScalar::one();
    let zero = CyclotomicScalar::zero();
    assert_eq!(degeneration_check(&one, &zero).unwrap().target, FamilyLabel::B1);
    let b2 = degeneration_check(&zero, &one).unwrap();
    assert_eq!(b2.target, FamilyLabel::B2);
    assert_eq!(b2.degree, 6);
    assert!(matches!(degeneration_check(&zero, &zero), Err(Error::DegenerateParameters)));
}

#[test]
fn zero_section_is_a_precondition_failure() {
    let fam = family(FamilyLabel::A);
    let s = Screener::new(&fam, &[19]).unwrap();
    assert!(matches!(s.screen(&CycPoly::zero(6)), Err(Error::Precondition(_))));
}

#[test]
fn member_through_a_fixed_point_is_rejected() {
    let fam = family(FamilyLabel::A);
    let g = GroupElement::new(fam.action.group.kind, &[1]);
    let p = crate::ambient::exact_fixed_locus(&fam.ambient, &fam.action, &g).unwrap().points[0].clone();
    let basis = member_basis(&fam).unwrap();
    let f = combine(&basis, &[1, -1, 2, 0, 1, 1, -2, 1]);
    let b = basis.iter().find(|b| !fam.ambient.evaluate(&Q9, b, &p).unwrap().is_zero()).unwrap();
    let ratio = Q9.div(&fam.ambient.evaluate(&Q9, &f, &p).unwrap(), &fam.ambient.evaluate(&Q9, b, &p).unwrap()).unwrap();
    let through = f.sub(&Q9, &b.scale(&Q9, &ratio));
    assert!(fam.ambient.evaluate(&Q9, &through, &p).unwrap().is_zero());
    let s = Screener::new(&fam, &[19]).unwrap();
    match s.screen(&through) {
        Err(Error::Verification { check, .. }) => assert_eq!(check, "fixed points"),
        other => panic!("expected a fixed-point rejection, got {other:?}"),
    }
}

#[test]
fn seeded_member_of_a() {
    let fam = family(FamilyLabel::A);
    let m = sample_member(&fam, &SamplingConfig::new(0, &DEFAULT_PRIMES)).unwrap();
    assert!(m.coefficients.iter().all(|c| (-2..=2).contains(c)));
    assert_eq!(m.screening.fixed_points_avoided["g^3"], 8);
    assert_eq!(m.screening.fixed_points_avoided["g^1"], 2);
    assert_eq!(m.screening.restrictions.len(), 6);
    let again = sample_member(&fam, &SamplingConfig::new(0, &DEFAULT_PRIMES)).unwrap();
    assert_eq!(again.coefficients, m.coefficients);
}

#[test]
fn exhausted_sampling_is_reported() {
    let fam = family(FamilyLabel::A);
    let mut cfg = SamplingConfig::new(0, &[19]);
    cfg.max_draws = 0;
    assert!(matches!(sample_member(&fam, &cfg), Err(Error::RejectionExhausted(0))));
}
