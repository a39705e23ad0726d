use super::bicanonical::{pure_cubic, special_curves, SpecialCurve};
use super::sections::{exact_fixed_points, listed_invariant_cubics};
use super::{coordinate_sections, data, Family, FamilyLabel};
use crate::ambient::{enumerate_points, jacobian_screen, FixedLocus, JacobianReport, Point};
use crate::error::{verification, Error, Result};
use crate::polyring::{row_reduce, CycPoly, Poly, SectionSpace};
use crate::scalars::{CyclotomicScalar as C, Field, FiniteField, PrimeField, QuadraticExtension, Q9};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    /// "exact" for a cube-membership certificate, "evidence" for enumeration.
    pub kind: String,
    pub cubes_in_t1: Option<bool>,
    pub coordinates_span: Option<bool>,
    /// (prime, number of common zeros of T₁ on W(F_p)).
    pub base_locus: Vec<(u64, usize)>,
}

/// Shows |T₁| has no base points on W.
pub fn certify_freeness(family: &Family, t1: &SectionSpace<C>, primes: &[u64]) -> Result<FreenessReport> {
    let amb = &family.ambient;
    match family.label {
        FamilyLabel::B1 | FamilyLabel::B2 => {
            let coords = coordinate_sections(family.label);
            for c in &coords {
                let cube = amb.normal_form(&Q9, &c.pow(&Q9, 3))?;
                if !t1.contains(&Q9, &cube) {
                    return Err(verification("freeness", format!("cube of {} is not in T1", c.render(&Q9, amb.ring()))));
                }
            }
            let span = row_reduce(amb.ring(), &Q9, &coords.iter().map(|c| amb.normal_form(&Q9, c)).collect::<Result<Vec<_>>>()?, "coords")?;
            if !span.same_span(&Q9, &amb.section_space(1, &Q9)?) {
                return Err(verification("freeness", "coordinates do not span the degree-1 sections"));
            }
            Ok(FreenessReport { kind: "exact".into(), cubes_in_t1: Some(true), coordinates_span: Some(true), base_locus: Vec::new() })
        }
        FamilyLabel::A => {
            let mut base_locus = Vec::new();
            for &p in primes {
                let field = PrimeField::new(p)?;
                let basis = t1.basis.iter().map(|b| b.map_coeffs(&field, |c| field.from_cyclotomic(c))).collect::<Result<Vec<_>>>()?;
                let zeros: Vec<Point<u64>> = enumerate_points(amb, &field)
                    .into_par_iter()
                    .filter(|pt| basis.iter().all(|b| amb.evaluate(&field, b, pt).map(|v| v == 0).unwrap_or(false)))
                    .collect();
                if let Some(w) = zeros.first() {
                    return Err(verification("freeness", format!("base point {w:?} over F_{p}")));
                }
                base_locus.push((p, 0));
            }
            Ok(FreenessReport { kind: "evidence".into(), cubes_in_t1: None, coordinates_span: None, base_locus })
        }
    }
}

/// The basis members are drawn from: the listed invariant cubics, and on
/// the flag variety the first eight listed cubics independent modulo the
/// incidence relation (kept unreduced, so members are exact invariants).
pub fn member_basis(family: &Family) -> Result<Vec<CycPoly>> {
    match family.label {
        FamilyLabel::B1 => {
            let mut chosen: Vec<CycPoly> = Vec::new();
            let mut reduced: Vec<CycPoly> = Vec::new();
            for f in data::flag_invariant_cubics() {
                let mut trial = reduced.clone();
                trial.push(family.ambient.normal_form(&Q9, &f)?);
                if row_reduce(family.ambient.ring(), &Q9, &trial, "trial")?.dim() == trial.len() {
                    reduced = trial;
                    chosen.push(f);
                }
            }
            if chosen.len() != 8 {
                return Err(verification("member basis", format!("{} independent cubics", chosen.len())));
            }
            Ok(chosen)
        }
        _ => listed_invariant_cubics(family),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub seed: u64,
    pub primes: Vec<u64>,
    pub max_draws: usize,
}

impl SamplingConfig {
    pub fn new(seed: u64, primes: &[u64]) -> Self {
        Self { seed, primes: primes.to_vec(), max_draws: 1000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreeningRecord {
    pub draws: usize,
    pub primes: Vec<u64>,
    /// Element → number of its exact fixed points the member avoids.
    pub fixed_points_avoided: BTreeMap<String, usize>,
    pub distinct_fixed_points: usize,
    pub jacobian: Vec<JacobianReport>,
    /// Curve → restriction of the member, when the family has special curves.
    pub restrictions: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct MemberSurface {
    pub family: FamilyLabel,
    pub seed: u64,
    pub coefficients: Vec<i64>,
    pub section: CycPoly,
    pub screening: ScreeningRecord,
}

/// Precomputed data for screening candidate sections of one family.
pub struct Screener<'a> {
    family: &'a Family,
    primes: Vec<u64>,
    loci: Vec<FixedLocus<C>>,
    curves: Vec<SpecialCurve>,
}

impl<'a> Screener<'a> {
    pub fn new(family: &'a Family, primes: &[u64]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::Precondition("at least one prime is needed".into()));
        }
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        let curves = if family.label == FamilyLabel::B1 { Vec::new() } else { special_curves(family)? };
        Ok(Self { family, primes, loci: exact_fixed_points(family)?, curves })
    }

    fn screen_over<F: FiniteField + 'static>(&self, field: &F, f: &CycPoly) -> Result<JacobianReport>
    where
        F::Elem: 'static,
    {
        let g = f.map_coeffs(field, |c| field.from_cyclotomic(c))?;
        jacobian_screen(&self.family.ambient, field, &g)
    }

    /// Ok(record) if f is accepted; Err(Verification) naming the first
    /// failed test otherwise.
    pub fn screen(&self, f: &CycPoly) -> Result<ScreeningRecord> {
        if f.is_zero() {
            return Err(Error::Precondition("the zero section does not cut a surface".into()));
        }
        let amb = &self.family.ambient;
        let mut avoided = BTreeMap::new();
        let mut distinct: Vec<&Point<C>> = Vec::new();
        for l in &self.loci {
            for p in &l.points {
                if amb.evaluate(&Q9, f, p)?.is_zero() {
                    return Err(verification("fixed points", format!("vanishes at a fixed point of {}", l.element)));
                }
                if !distinct.contains(&p) {
                    distinct.push(p);
                }
            }
            avoided.insert(l.element.to_string(), l.points.len());
        }
        let mut restrictions = Vec::new();
        let st = crate::ambient::binary_ring("s", "t");
        for c in &self.curves {
            let r = c.restrict(amb, f)?;
            if pure_cubic(&r).is_none() {
                return Err(verification("curve restriction", format!("{} restricts to {}", c.name(), r.render(&Q9, &st))));
            }
            restrictions.push((c.name().to_string(), r.render(&Q9, &st)));
        }
        let mut jacobian = Vec::new();
        for &p in &self.primes {
            jacobian.push(self.screen_over(&PrimeField::new(p)?, f)?);
        }
        jacobian.push(self.screen_over(&QuadraticExtension::new(PrimeField::new(self.primes[0])?), f)?);
        if let Some(bad) = jacobian.iter().find(|j| !j.is_clean()) {
            return Err(verification("jacobian", format!("singular over {}: {:?}", bad.field, bad.singular_points.first())));
        }
        Ok(ScreeningRecord { draws: 0, primes: self.primes.clone(), fixed_points_avoided: avoided, distinct_fixed_points: distinct.len(), jacobian, restrictions })
    }
}

pub fn combine(basis: &[CycPoly], coefficients: &[i64]) -> CycPoly {
    let mut f = Poly::zero(basis[0].nvars());
    for (b, &c) in basis.iter().zip(coefficients) {
        f = f.add(&Q9, &b.scale(&Q9, &C::from_int(c)));
    }
    f
}

/// The seeded stream of candidate coefficient vectors in −2..=2.
pub fn candidate_coefficients(seed: u64, len: usize) -> impl Iterator<Item = Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || (0..len).map(|_| rng.random_range(-2..=2)).collect())
}

/// Seeded rejection sampling of a member of T₁.
pub fn sample_member(family: &Family, config: &SamplingConfig) -> Result<MemberSurface> {
    let basis = member_basis(family)?;
    let screener = Screener::new(family, &config.primes)?;
    for (draw, coefficients) in (1..=config.max_draws).zip(candidate_coefficients(config.seed, basis.len())) {
        if coefficients.iter().all(|&c| c == 0) {
            continue;
        }
        let section = combine(&basis, &coefficients);
        match screener.screen(&section) {
            Ok(mut screening) => {
                screening.draws = draw;
                return Ok(MemberSurface { family: family.label, seed: config.seed, coefficients, section, screening });
            }
            Err(Error::Verification { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RejectionExhausted(config.max_draws))
}
