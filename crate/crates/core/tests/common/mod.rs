//! Randomized properties shared by the property tests and the acceptance run.
#![allow(dead_code)]

use campedelli_core::campedelli::{build_family, candidate_coefficients, combine, member_basis, Family, FamilyLabel, MemberRecord};
use campedelli_core::group::Character;
use campedelli_core::polyring::{CycPoly, Monomial, Poly, PolyRing, Substitution, VariableBlock};
use campedelli_core::scalars::{rational, specialize_mod_p, CyclotomicScalar as C, Field, PrimeField, DEFAULT_PRIMES, Q9};
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};
use std::sync::LazyLock;

static FAMILIES: LazyLock<Vec<Family>> = LazyLock::new(|| FamilyLabel::ALL.iter().map(|&l| build_family(l).unwrap()).collect());

/// Per family: section bases of degree 1 and 2, and the member basis.
static BASES: LazyLock<Vec<[Vec<CycPoly>; 3]>> = LazyLock::new(|| {
    FAMILIES
        .iter()
        .map(|f| {
            let sec = |m| f.ambient.section_space(m, &Q9).unwrap().basis;
            [sec(1), sec(2), member_basis(f).unwrap()]
        })
        .collect()
});

pub const CASES: u32 = 1000;

fn scalar() -> impl Strategy<Value = C> {
    prop::array::uniform6((-6i64..=6, 1i64..=4)).prop_map(|cs| C::from_coeffs(cs.map(|(n, d)| rational(n, d))))
}

/// Sparse sums of degree-m section monomials of one family.
fn section(m: u32) -> impl Strategy<Value = (usize, CycPoly)> {
    (0..3usize, prop::collection::vec((any::<prop::sample::Index>(), scalar()), 1..6)).prop_map(move |(fi, terms)| {
        let basis = &BASES[fi][m as usize - 1];
        let mut f = Poly::zero(FAMILIES[fi].ambient.ring().nvars());
        for (idx, c) in terms {
            f = f.add(&Q9, &basis[idx.index(basis.len())].scale(&Q9, &c));
        }
        (fi, f)
    })
}

fn small_ring() -> PolyRing {
    PolyRing::new(vec![VariableBlock::new("x", &["a", "b", "c"])]).unwrap()
}

fn small_poly() -> impl Strategy<Value = CycPoly> {
    prop::collection::vec((prop::array::uniform3(0u32..=2), scalar()), 0..5).prop_map(|terms| {
        let mut f = Poly::zero(3);
        for (e, c) in terms {
            f.add_term(&Q9, Monomial(e.to_vec()), &c);
        }
        f
    })
}

/// n·ζᵏ with small n.
fn root_multiple() -> impl Strategy<Value = C> {
    (-2i64..=2, 0i64..9).prop_map(|(n, k)| Q9.mul(&C::from_int(n), &C::zeta_pow(k)))
}

fn linear_substitution() -> impl Strategy<Value = Substitution<C>> {
    prop::array::uniform3(prop::array::uniform3(root_multiple())).prop_map(|rows| {
        let ring = small_ring();
        let images = rows
            .iter()
            .map(|row| {
                let mut f = Poly::zero(3);
                for (v, c) in row.iter().enumerate() {
                    f = f.add(&Q9, &Poly::var(&Q9, 3, v).scale(&Q9, c));
                }
                Some(f)
            })
            .collect();
        Substitution::new(&ring, &ring, images).unwrap()
    })
}

fn cyclotomic_field_axioms((a, b, c): (C, C, C)) -> Result<(), TestCaseError> {
    prop_assert_eq!(Q9.add(&Q9.add(&a, &b), &c), Q9.add(&a, &Q9.add(&b, &c)));
    prop_assert_eq!(Q9.mul(&Q9.mul(&a, &b), &c), Q9.mul(&a, &Q9.mul(&b, &c)));
    prop_assert_eq!(Q9.add(&a, &b), Q9.add(&b, &a));
    prop_assert_eq!(Q9.mul(&a, &b), Q9.mul(&b, &a));
    prop_assert_eq!(Q9.mul(&a, &Q9.add(&b, &c)), Q9.add(&Q9.mul(&a, &b), &Q9.mul(&a, &c)));
    prop_assert_eq!(Q9.add(&a, &Q9.zero()), a.clone());
    prop_assert_eq!(Q9.mul(&a, &Q9.one()), a.clone());
    prop_assert!(Q9.is_zero(&Q9.add(&a, &Q9.neg(&a))));
    if !Q9.is_zero(&a) {
        prop_assert_eq!(Q9.mul(&a, &Q9.inv(&a).unwrap()), Q9.one());
    } else {
        prop_assert!(Q9.inv(&a).is_err());
    }
    Ok(())
}

fn reynolds_projection_is_idempotent(((fi, f), chi): ((usize, CycPoly), u32)) -> Result<(), TestCaseError> {
    let fam = &FAMILIES[fi];
    let all = Character::all(fam.action.group.kind);
    let chi = &all[chi as usize % all.len()];
    let p = fam.action.reynolds_project(&f, chi).unwrap();
    prop_assert_eq!(fam.action.reynolds_project(&p, chi).unwrap(), p.clone());
    if !p.is_zero() {
        prop_assert_eq!(fam.action.eigencharacter(&p).unwrap(), Some(chi.clone()));
    }
    let mut total = Poly::zero(f.nvars());
    for psi in &all {
        total = total.add(&Q9, &fam.action.reynolds_project(&f, psi).unwrap());
    }
    prop_assert_eq!(total, f);
    Ok(())
}

fn substitution_is_a_ring_homomorphism((f, g, s): (CycPoly, CycPoly, Substitution<C>)) -> Result<(), TestCaseError> {
    let img = |p: &CycPoly| p.substitute(&Q9, &s).unwrap();
    prop_assert_eq!(img(&f.mul(&Q9, &g)), img(&f).mul(&Q9, &img(&g)));
    prop_assert_eq!(img(&f.add(&Q9, &g)), img(&f).add(&Q9, &img(&g)));
    Ok(())
}

fn group_action_is_multiplicative(((fi, f), h, gi): ((usize, CycPoly), (usize, CycPoly), usize)) -> Result<(), TestCaseError> {
    let fam = &FAMILIES[fi];
    let h = if h.0 == fi { h.1 } else { f.clone() };
    let g = &fam.action.group.elements()[gi];
    let act = |p: &CycPoly| fam.action.apply(g, p).unwrap();
    prop_assert_eq!(act(&f.mul(&Q9, &h)), act(&f).mul(&Q9, &act(&h)));
    prop_assert_eq!(act(&f.add(&Q9, &h)), act(&f).add(&Q9, &act(&h)));
    Ok(())
}

fn reduction_mod_p_is_a_homomorphism((a, b, pi): (C, C, usize)) -> Result<(), TestCaseError> {
    let fp = PrimeField::new(DEFAULT_PRIMES[pi]).unwrap();
    let phi = |x: &C| specialize_mod_p(x, &fp).unwrap();
    prop_assert_eq!(phi(&Q9.add(&a, &b)), fp.add(&phi(&a), &phi(&b)));
    prop_assert_eq!(phi(&Q9.mul(&a, &b)), fp.mul(&phi(&a), &phi(&b)));
    prop_assert_eq!(phi(&C::one()), 1);
    prop_assert_eq!(fp.pow(&phi(&C::zeta()), 9), 1);
    prop_assert_ne!(fp.pow(&phi(&C::zeta()), 3), 1);
    Ok(())
}

fn seeded_draws_are_reproducible((seed, fi): (u64, usize)) -> Result<(), TestCaseError> {
    let fam = &FAMILIES[fi];
    let basis = &BASES[fi][2];
    let first: Vec<Vec<i64>> = candidate_coefficients(seed, basis.len()).take(4).collect();
    let second: Vec<Vec<i64>> = candidate_coefficients(seed, basis.len()).take(4).collect();
    prop_assert_eq!(&first, &second);
    prop_assert!(first.iter().flatten().all(|c| (-2..=2).contains(c)));
    let ring = fam.ambient.ring();
    prop_assert_eq!(combine(basis, &first[0]).render(&Q9, ring), combine(basis, &second[0]).render(&Q9, ring));
    let json = |c: &Vec<i64>| serde_json::to_string(&MemberRecord { coefficients: c.clone(), seed }).unwrap();
    prop_assert_eq!(json(&first[0]), json(&second[0]));
    Ok(())
}

/// Runs one named property for `CASES` random cases.
pub fn run(name: &str) -> Result<(), String> {
    let mut runner = TestRunner::new(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(CASES) });
    match name {
        "cyclotomic_field_axioms" => runner.run(&(scalar(), scalar(), scalar()), cyclotomic_field_axioms).map_err(|e| e.to_string()),
        "reynolds_projection_is_idempotent" => runner.run(&(section(2), 0u32..9), reynolds_projection_is_idempotent).map_err(|e| e.to_string()),
        "substitution_is_a_ring_homomorphism" => runner.run(&(small_poly(), small_poly(), linear_substitution()), substitution_is_a_ring_homomorphism).map_err(|e| e.to_string()),
        "group_action_is_multiplicative" => runner.run(&(section(1), section(1), 0usize..9), group_action_is_multiplicative).map_err(|e| e.to_string()),
        "reduction_mod_p_is_a_homomorphism" => runner.run(&(scalar(), scalar(), 0usize..3), reduction_mod_p_is_a_homomorphism).map_err(|e| e.to_string()),
        "seeded_draws_are_reproducible" => runner.run(&(any::<u64>(), 0usize..3), seeded_draws_are_reproducible).map_err(|e| e.to_string()),
        _ => Err(format!("unknown property {name}")),
    }
}

pub const PROPERTIES: [&str; 6] = ["cyclotomic_field_axioms", "reynolds_projection_is_idempotent", "substitution_is_a_ring_homomorphism", "group_action_is_multiplicative", "reduction_mod_p_is_a_homomorphism", "seeded_draws_are_reproducible"];
