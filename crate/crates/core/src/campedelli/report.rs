use super::bicanonical::special_curves;
use super::member::{certify_freeness, sample_member, SamplingConfig};
use super::moduli::centralizer_dimension;
use super::sections::{base_point_lemma_check, coordinate_characters, eigenspace_table, exact_fixed_points, invariant_cubics};
use super::{bicanonical_base_locus, build_family, Constants, Family, FamilyLabel, MemberSurface};
use crate::ambient::{finite_fixed_locus, Point};
use crate::error::Result;
use crate::polyring::{hilbert_degree, CycPoly};
use crate::scalars::{CyclotomicScalar as C, PrimeField, Q9};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    /// The claim the check reproduces.
    pub paper_ref: String,
    pub witnesses: Vec<String>,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberRecord {
    pub coefficients: Vec<i64>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub family: FamilyLabel,
    pub constants: Constants,
    /// Values recomputed by the checks, keyed like `constants`.
    pub computed: BTreeMap<String, i64>,
    pub checks: Vec<CheckRecord>,
    pub member: Option<MemberRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Recorder {
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn record(&mut self, name: &str, claim: &str, primes: &[u64], outcome: Result<Vec<String>>) -> bool {
        let (status, witnesses) = match outcome {
            Ok(w) => (CheckStatus::Pass, w),
            Err(e) => (CheckStatus::Fail, vec![e.to_string()]),
        };
        self.checks.push(CheckRecord { name: name.into(), status, paper_ref: claim.into(), witnesses, primes: primes.to_vec() });
        status == CheckStatus::Pass
    }
}

fn fail(check: &str, detail: impl Into<String>) -> crate::Error {
    crate::error::verification(check, detail)
}

fn table_text(t: &BTreeMap<crate::group::Character, usize>) -> String {
    t.iter().map(|(c, d)| format!("{c}={d}")).collect::<Vec<_>>().join(" ")
}

fn eigen_check(family: &Family, primes: &[u64]) -> Result<Vec<String>> {
    let exact = eigenspace_table(family, &Q9, 3)?;
    let total: usize = exact.values().sum();
    if exact.len() != 9 || total != 64 {
        return Err(fail("eigenspaces", format!("{} characters summing to {total}", exact.len())));
    }
    let mut w = vec![format!("Q(zeta9): {}", table_text(&exact))];
    for &p in primes {
        let t = eigenspace_table(family, &PrimeField::new(p)?, 3)?;
        if t != exact {
            return Err(fail("eigenspaces", format!("F_{p} gives {}", table_text(&t))));
        }
        w.push(format!("F_{p}: agrees"));
    }
    Ok(w)
}

/// Expected number of exact fixed points of every nontrivial element.
fn expected_fixed(label: FamilyLabel, exps: &[u32]) -> Option<usize> {
    match label {
        FamilyLabel::A => Some(if exps[0].is_multiple_of(3) { 8 } else { 2 }),
        FamilyLabel::B1 => None,
        FamilyLabel::B2 => Some(if exps[1] == 0 { 7 } else { 4 }),
    }
}

fn fixed_check(family: &Family, primes: &[u64]) -> Result<Vec<String>> {
    let loci = exact_fixed_points(family)?;
    let mut w = Vec::new();
    for l in &loci {
        let n = l.points.len();
        if let Some(e) = expected_fixed(family.label, &l.element.exps) {
            if n != e {
                return Err(fail("fixed points", format!("{} has {n} fixed points, expected {e}", l.element)));
            }
        }
        w.push(format!("{}: {n}", l.element));
    }
    if family.label == FamilyLabel::B1 {
        let projected: Vec<Vec<C>> = loci
            .iter()
            .flat_map(|l| &l.points)
            .map(|p| match family.ambient.normalize(&Q9, p.clone()) {
                Ok(Point::Multi(v)) => Ok(v[..3].to_vec()),
                Ok(_) => Err(fail("fixed points", "unexpected point type")),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        let mut distinct: Vec<Vec<C>> = Vec::new();
        for p in projected {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        if distinct.len() != 12 {
            return Err(fail("fixed points", format!("{} stabilized points in P2", distinct.len())));
        }
        w.push("stabilized points in P2: 12".into());
    }
    for &p in primes {
        let field = PrimeField::new(p)?;
        let action = family.action.specialize(&field)?;
        for l in &loci {
            let n = finite_fixed_locus(&family.ambient, &action, &l.element)?.len();
            if n != l.points.len() {
                return Err(fail("fixed points", format!("over F_{p} {} fixes {n} points, exactly {}", l.element, l.points.len())));
            }
        }
        w.push(format!("F_{p}: agrees"));
    }
    Ok(w)
}

/// Every T₁ basis element restricts to αt³ + β on each special curve,
/// hence so does every member.
fn restriction_check(family: &Family, t1: &[CycPoly]) -> Result<Vec<String>> {
    let curves = special_curves(family)?;
    for c in &curves {
        for b in t1 {
            let r = c.restrict(&family.ambient, b)?;
            if r.monomials().any(|m| m.0[0] != 0 && m.0[1] != 0) {
                return Err(fail("restrictions", format!("a basis element restricts to a mixed cubic on {}", c.name())));
            }
        }
    }
    Ok(vec![format!("{} curves x {} basis elements", curves.len(), t1.len())])
}

/// Runs the whole pipeline for one family. Failures are recorded in the
/// report, never returned.
pub fn family_report(label: FamilyLabel, primes: &[u64], seed: u64) -> VerificationReport {
    let constants = Constants::of(label);
    let mut rec = Recorder { checks: Vec::new() };
    let mut computed = BTreeMap::new();
    let mut member_record = None;
    let family = match build_family(label) {
        Ok(f) => f,
        Err(e) => {
            rec.record("build", "the group acts on the ambient threefold", &[], Err(e));
            return VerificationReport { schema_version: SCHEMA_VERSION, family: label, constants, computed, checks: rec.checks, member: None };
        }
    };
    rec.record("build", "the group acts on the ambient threefold", &[], Ok(vec![format!("twist {}", family.action.twist.character)]));

    let t1 = invariant_cubics(&family);
    if let Ok(t) = &t1 {
        computed.insert("t1_dim".into(), t.dim() as i64);
    }
    rec.record(
        "t1_basis",
        "the invariant cubic sections form an 8-dimensional space spanned by the listed basis",
        &[],
        t1.as_ref().map(|t| vec![format!("dim {}", t.dim())]).map_err(|e| e.clone()),
    );
    rec.record("eigenspaces", "the cubic sections split into nine character spaces of total dimension 64", primes, eigen_check(&family, primes));
    rec.record(
        "coordinate_characters",
        "the eight coordinates carry the eight nontrivial characters",
        &[],
        coordinate_characters(&family).map(|cs| cs.iter().map(|c| format!("{}: {}", c.name, c.character)).collect()),
    );
    rec.record("fixed_points", "fixed loci of the nontrivial elements", primes, fixed_check(&family, primes));

    let degree = family.ambient.section_dimensions(&Q9).and_then(|d| Ok((hilbert_degree(&d)?, d)));
    if let Ok((deg, _)) = &degree {
        computed.insert("degree".into(), *deg);
    }
    rec.record(
        "hilbert_degree",
        "the ambient threefold has degree 6",
        &[],
        degree.and_then(|(deg, d)| if deg == constants.ambient_degree { Ok(vec![format!("dims {d:?}, degree {deg}")]) } else { Err(fail("degree", format!("{deg}"))) }),
    );

    match &t1 {
        Ok(t) => {
            let free = certify_freeness(&family, t, primes).map(|r| match r.kind.as_str() {
                "exact" => vec!["coordinate cubes lie in T1 and span the linear sections".to_string()],
                _ => r.base_locus.iter().map(|(p, n)| format!("F_{p}: {n} common zeros")).collect(),
            });
            rec.record("freeness", "the linear system of invariant cubics is base point free", primes, free);
            if label != FamilyLabel::B1 {
                rec.record("curve_restrictions", "invariant cubics restrict to pure cubics on the special curves", &[], restriction_check(&family, &t.basis));
            }
        }
        Err(_) => {
            rec.record("freeness", "the linear system of invariant cubics is base point free", primes, Err(fail("freeness", "T1 unavailable")));
        }
    }

    let member: Result<MemberSurface> = sample_member(&family, &SamplingConfig::new(seed, primes));
    rec.record(
        "member",
        "a member avoids the fixed points and is smooth",
        primes,
        member.as_ref().map(|m| vec![format!("draws {}", m.screening.draws), format!("avoids {} fixed points", m.screening.distinct_fixed_points)]).map_err(|e| e.clone()),
    );
    let bican = match &member {
        Ok(m) => {
            member_record = Some(MemberRecord { coefficients: m.coefficients.clone(), seed });
            bicanonical_base_locus(&family, m, primes)
        }
        Err(_) => Err(fail("bicanonical", "no member")),
    };
    let bican = bican.and_then(|b| {
        computed.insert("base_points".into(), b.base_points as i64);
        if b.base_points != constants.base_points {
            return Err(fail("bicanonical", format!("{} base points", b.base_points)));
        }
        Ok(vec![
            format!("quadrics {}", b.quadrics.join(", ")),
            format!("{} upstairs points in {} orbits", b.upstairs_points, b.upstairs_orbits),
            format!("{} base points", b.base_points),
        ])
    });
    rec.record("bicanonical", "base points of the bicanonical system of the quotient", primes, bican);

    let moduli = centralizer_dimension(&family).and_then(|(dim, m)| {
        computed.insert("moduli".into(), m);
        if m != constants.moduli {
            return Err(fail("moduli", format!("centralizer dimension {dim} gives {m}")));
        }
        Ok(vec![format!("centralizer dimension {dim}"), format!("moduli {m}")])
    });
    rec.record("moduli", "number of moduli of the family", &[], moduli);

    let lemma = base_point_lemma_check(&family).and_then(|r| {
        if let Some(v) = r.violations.first() {
            return Err(fail("fixed point vanishing", v.clone()));
        }
        Ok(vec![format!("{} (character, fixed point) pairs", r.checked)])
    });
    rec.record("fixed_point_vanishing", "sections of a character nontrivial on g vanish at the fixed points of g", &[], lemma);

    VerificationReport { schema_version: SCHEMA_VERSION, family: label, constants, computed, checks: rec.checks, member: member_record }
}
