//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use campedelli_core::ambient::{finite_fixed_locus, Point};
use campedelli_core::campedelli::*;
use campedelli_core::polyring::{hilbert_degree, CycPoly};
use campedelli_core::scalars::{CyclotomicScalar as C, PrimeField, DEFAULT_PRIMES, Q9};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::LazyLock;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: campedelli_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

static FAMILIES: LazyLock<Vec<Family>> = LazyLock::new(|| FamilyLabel::ALL.iter().map(|&l| build_family(l).unwrap()).collect());

/// Seed-0 member and its bicanonical report for every family.
static BICANONICAL: LazyLock<Vec<Result<(MemberSurface, BicanonicalReport), String>>> = LazyLock::new(|| {
    FAMILIES
        .iter()
        .map(|f| {
            let m = ok(sample_member(f, &SamplingConfig::new(0, &DEFAULT_PRIMES)))?;
            let b = ok(bicanonical_base_locus(f, &m, &DEFAULT_PRIMES))?;
            Ok((m, b))
        })
        .collect()
});

fn fam(label: FamilyLabel) -> &'static Family {
    &FAMILIES[FamilyLabel::ALL.iter().position(|&l| l == label).unwrap()]
}

fn invariant_cubic_bases() -> Outcome {
    for f in FAMILIES.iter() {
        let t1 = ok(invariant_cubics(f))?;
        ensure!(t1.dim() == 8, "{}: dim {}", f.label, t1.dim());
        for g in f.action.group.elements() {
            for b in &t1.basis {
                let img = ok(f.ambient.normal_form(&Q9, &ok(f.action.apply(&g, b))?))?;
                ensure!(img == *b, "{}: a basis element moves under {g}", f.label);
            }
        }
    }
    Ok("dim 8 with two-sided span equality in A, B1, B2".into())
}

fn eigenspace_completeness() -> Outcome {
    for f in FAMILIES.iter() {
        let exact = ok(eigenspace_table(f, &Q9, 3))?;
        ensure!(exact.len() == 9 && exact.values().sum::<usize>() == 64, "{}: {:?}", f.label, exact);
        for p in DEFAULT_PRIMES {
            ensure!(ok(eigenspace_table(f, &ok(PrimeField::new(p))?, 3))? == exact, "{} over F_{p}", f.label);
        }
    }
    Ok("nine spaces summing to 64, identical over F_19, F_37, F_73".into())
}

fn coordinate_character_labels() -> Outcome {
    for f in FAMILIES.iter() {
        let cs = ok(coordinate_characters(f))?;
        ensure!(cs.len() == 8, "{}: {} coordinates", f.label, cs.len());
        for (j, c) in cs.iter().enumerate() {
            let want = match f.label {
                FamilyLabel::A => format!("z{}", j + 1),
                _ => format!("z{}{}", c.character.exps[0], c.character.exps[1]),
            };
            ensure!(c.name == want && !c.character.is_trivial(), "{}: {} carries {}", f.label, c.name, c.character);
        }
    }
    Ok("z_j carries zeta^j in A; z_ij carries chi1^i chi2^j in B1, B2".into())
}

fn fixed_point_counts() -> Outcome {
    for f in FAMILIES.iter() {
        let loci = ok(exact_fixed_points(f))?;
        for l in &loci {
            let n = l.points.len();
            let expected = match f.label {
                FamilyLabel::A => Some(if l.element.exps[0] % 3 == 0 { 8 } else { 2 }),
                FamilyLabel::B1 => None,
                FamilyLabel::B2 => Some(if l.element.exps[1] == 0 { 7 } else { 4 }),
            };
            ensure!(expected.is_none_or(|e| e == n), "{}: {} fixes {n}", f.label, l.element);
            ensure!(n > 0, "{}: {} has no fixed points", f.label, l.element);
            for p in DEFAULT_PRIMES {
                let action = ok(f.action.specialize(&ok(PrimeField::new(p))?))?;
                let m = ok(finite_fixed_locus(&f.ambient, &action, &l.element))?.len();
                ensure!(m == n, "{}: {} fixes {m} points over F_{p}, {n} exactly", f.label, l.element);
            }
        }
        if f.label == FamilyLabel::B1 {
            let mut proj: Vec<Vec<C>> = Vec::new();
            for p in loci.iter().flat_map(|l| &l.points) {
                let Point::Multi(v) = p else { return Err("flag point expected".into()) };
                if !proj.contains(&v[..3].to_vec()) {
                    proj.push(v[..3].to_vec());
                }
            }
            ensure!(proj.len() == 12, "B1: {} stabilized points in P2", proj.len());
        }
    }
    Ok("A 8/2, B1 12 stabilized points in P2, B2 7/4; enumeration agrees".into())
}

fn freeness() -> Outcome {
    for f in FAMILIES.iter() {
        let t1 = ok(invariant_cubics(f))?;
        let r = ok(certify_freeness(f, &t1, &DEFAULT_PRIMES))?;
        match f.label {
            FamilyLabel::A => ensure!(r.kind == "evidence" && r.base_locus.iter().map(|b| b.0).eq(DEFAULT_PRIMES) && r.base_locus.iter().all(|b| b.1 == 0), "A: {:?}", r),
            _ => ensure!(r.kind == "exact" && r.cubes_in_t1 == Some(true) && r.coordinates_span == Some(true), "{}: {:?}", f.label, r),
        }
    }
    Ok("cube certificates for B1, B2; empty base locus for A over F_19, F_37, F_73".into())
}

fn support_is_pure(r: &CycPoly) -> bool {
    r.monomials().all(|m| m.0[0] == 0 || m.0[1] == 0)
}

fn bicanonical_points() -> Outcome {
    let expected = [(18, 2, 2), (0, 0, 0), (18, 2, 2)];
    for (i, f) in FAMILIES.iter().enumerate() {
        let (_, b) = BICANONICAL[i].as_ref().map_err(|e| format!("{}: {e}", f.label))?;
        let got = (b.upstairs_points, b.upstairs_orbits, b.base_points);
        ensure!(got == expected[i], "{}: (upstairs, orbits, base points) = {:?}", f.label, got);
    }
    let a = fam(FamilyLabel::A);
    let t1 = ok(invariant_cubics(a))?;
    for c in ok(special_curves(a))? {
        for basis in &t1.basis {
            ensure!(support_is_pure(&ok(c.restrict(&a.ambient, basis))?), "A: mixed restriction on {}", c.name());
        }
    }
    Ok("A 18 in 2 orbits -> 2, B1 empty, B2 18 in 2 orbits -> 2; every T1 member restricts to at^3 + b".into())
}

/// The four products of coordinates with inverse characters.
fn quadrics(f: &Family) -> Result<Vec<CycPoly>, String> {
    let secs = coordinate_sections(f.label);
    let chars: Vec<_> = secs.iter().map(|s| ok(f.action.eigencharacter(s)).map(|c| c.unwrap())).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            if chars[i].mul(&chars[j]).is_trivial() {
                out.push(secs[i].mul(&Q9, &secs[j]));
            }
        }
    }
    ensure!(out.len() == 4, "{}: {} quadrics", f.label, out.len());
    Ok(out)
}

fn quadric_locus() -> Outcome {
    for (i, f) in FAMILIES.iter().enumerate() {
        let qs = quadrics(f)?;
        let curves = ok(special_curves(f))?;
        for c in &curves {
            for q in &qs {
                ensure!(ok(c.restrict(&f.ambient, q))?.is_zero(), "{}: a quadric survives on {}", f.label, c.name());
            }
        }
        let (_, b) = BICANONICAL[i].as_ref().map_err(|e| e.clone())?;
        ensure!(b.locus.len() == DEFAULT_PRIMES.len(), "{}: locus not enumerated for every prime", f.label);
        let stabilized = b.locus[0].stabilized;
        for l in &b.locus {
            let q = l.prime as usize;
            match f.label {
                // three lines through each of two points: 6(q + 1) − 4
                FamilyLabel::A => ensure!(curves.len() == 6 && l.zeros == 6 * q + 2 && l.stabilized == 0, "A over F_{q}: {:?}", l),
                FamilyLabel::B1 => ensure!(l.zeros > 0 && l.zeros == l.stabilized && l.zeros == b.locus[0].zeros, "B1 over F_{q}: {:?}", l),
                // six rulings through the vertex and the same stabilized points
                FamilyLabel::B2 => ensure!(curves.len() == 6 && l.stabilized == stabilized && l.zeros == 6 * q + 1 + stabilized, "B2 over F_{q}: {:?}", l),
            }
        }
    }
    Ok("A: union of six lines; B1: finite and stabilized; B2: six rulings plus stabilized points".into())
}

fn hilbert_degrees() -> Outcome {
    for f in FAMILIES.iter() {
        let dims = ok(f.ambient.section_dimensions(&Q9))?;
        ensure!(ok(hilbert_degree(&dims))? == 6, "{}: {:?}", f.label, dims);
    }
    Ok("degree 6 for (P1)^3, the flag variety and the cone".into())
}

fn moduli() -> Outcome {
    let got: Vec<(usize, i64)> = FAMILIES.iter().map(|f| ok(centralizer_dimension(f))).collect::<Result<_, _>>()?;
    ensure!(got == vec![(1, 6), (0, 7), (1, 6)], "{:?}", got);
    Ok("centralizers 1, 0, 1 give moduli 6, 7, 6".into())
}

fn fixed_point_vanishing() -> Outcome {
    let mut total = 0;
    for f in FAMILIES.iter() {
        let r = ok(base_point_lemma_check(f))?;
        ensure!(r.checked > 0 && r.violations.is_empty(), "{}: {:?}", f.label, r.violations);
        total += r.checked;
    }
    Ok(format!("{total} (character, fixed point) pairs vanish exactly"))
}

fn degeneration() -> Outcome {
    let (one, zero) = (C::one(), C::zero());
    let b1 = ok(degeneration_check(&one, &zero))?;
    let b2 = ok(degeneration_check(&zero, &one))?;
    ensure!(b1.target == FamilyLabel::B1 && b2.target == FamilyLabel::B2, "targets {} {}", b1.target, b2.target);
    ensure!(b1.coordinates.len() == 10 && b1.degree == 6 && b2.degree == 6, "{:?}", b1);
    ensure!(degeneration_check(&zero, &zero).is_err(), "(0,0) accepted");
    Ok("(1,0) gives B1, (0,1) gives B2, ten coordinate cubes invariant".into())
}

fn properties() -> Outcome {
    for name in common::PROPERTIES {
        common::run(name).map_err(|e| format!("{name}: {e}"))?;
    }
    let a = family_report(FamilyLabel::A, &[19], 7).to_json();
    ensure!(a == family_report(FamilyLabel::A, &[19], 7).to_json(), "family reports differ under a fixed seed");
    Ok(format!("{} properties x {} cases; identical reports under a fixed seed", common::PROPERTIES.len(), common::CASES))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("invariant cubics", invariant_cubic_bases),
        ("eigenspace completeness", eigenspace_completeness),
        ("coordinate characters", coordinate_character_labels),
        ("fixed points", fixed_point_counts),
        ("freeness", freeness),
        ("bicanonical base points", bicanonical_points),
        ("quadric locus", quadric_locus),
        ("hilbert degree", hilbert_degrees),
        ("moduli", moduli),
        ("fixed point vanishing", fixed_point_vanishing),
        ("degeneration", degeneration),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
