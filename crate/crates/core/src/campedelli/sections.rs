use super::{coordinate_sections, data, Family, FamilyLabel};
use crate::ambient::{exact_fixed_locus, AmbientKind, AmbientThreefold, FixedLocus};
use crate::error::{verification, Result};
use crate::group::{Character, LinearizedGroupAction};
use crate::polyring::{row_reduce, CycPoly, SectionSpace};
use crate::scalars::{CyclotomicScalar, Field, Q9};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Character decomposition of the degree-m sections for an action over any
/// field. On the flag variety pieces are brought to normal form modulo the
/// incidence relation, so they are subspaces of the quotient.
pub fn decompose_with<F: Field>(ambient: &AmbientThreefold, action: &LinearizedGroupAction<F>, m: u32) -> Result<BTreeMap<Character, SectionSpace<F::Elem>>> {
    let field = action.field();
    let space = ambient.section_space(m, field)?;
    let mut pieces = action.eigenspace_decompose(&space)?;
    if ambient.kind == AmbientKind::FlagVariety {
        for (chi, piece) in pieces.iter_mut() {
            let nf = piece.basis.iter().map(|b| ambient.normal_form(field, b)).collect::<Result<Vec<_>>>()?;
            let mut s = row_reduce(ambient.ring(), field, &nf, &chi.to_string())?;
            if s.grading.is_empty() {
                s.grading = space.grading.clone();
            }
            *piece = s;
        }
    }
    Ok(pieces)
}

pub fn decompose(family: &Family, m: u32) -> Result<BTreeMap<Character, SectionSpace<CyclotomicScalar>>> {
    decompose_with(&family.ambient, &family.action, m)
}

/// Character → dimension for degree-m sections, computed over `field`.
pub fn eigenspace_table<F: Field>(family: &Family, field: &F, m: u32) -> Result<BTreeMap<Character, usize>> {
    let action = family.action.specialize(field)?;
    Ok(decompose_with(&family.ambient, &action, m)?.into_iter().map(|(c, s)| (c, s.dim())).collect())
}

/// The listed invariant cubics as sections (normal forms on the flag variety).
pub fn listed_invariant_cubics(family: &Family) -> Result<Vec<CycPoly>> {
    match family.label {
        FamilyLabel::A => Ok(data::segre_invariant_cubics()),
        FamilyLabel::B2 => Ok(data::cone_invariant_cubics()),
        FamilyLabel::B1 => data::flag_invariant_cubics().iter().map(|f| family.ambient.normal_form(&Q9, f)).collect(),
    }
}

/// On P² × P²* before restricting to W: the twelve listed cubics span the
/// invariants of bidegree (3,3), the four listed quadrics span those of
/// bidegree (2,2), and the incidence form times the latter lies in the former.
fn check_flag_lift(family: &Family) -> Result<()> {
    let ring = family.ambient.ring();
    let invariants = |d: u32| -> Result<SectionSpace<CyclotomicScalar>> {
        let monos: Vec<CycPoly> = ring.monomials_with_grading(&[d, d]).into_iter().map(|m| crate::polyring::Poly::term(&Q9, m, CyclotomicScalar::one())).collect();
        let space = row_reduce(ring, &Q9, &monos, "forms")?;
        Ok(family.action.eigenspace_decompose(&space)?.remove(&Character::trivial(family.action.group.kind)).expect("all characters present"))
    };
    let r1 = invariants(3)?;
    let listed = row_reduce(ring, &Q9, &data::flag_invariant_cubics(), "R1")?;
    if listed.dim() != 12 || !listed.same_span(&Q9, &r1) {
        return Err(verification("R1", format!("listed cubics span {} of {} invariants", listed.dim(), r1.dim())));
    }
    let r2 = invariants(2)?;
    let quadrics = row_reduce(ring, &Q9, &data::flag_invariant_quadrics(), "R2")?;
    if quadrics.dim() != 4 || !quadrics.same_span(&Q9, &r2) {
        return Err(verification("R2", format!("listed quadrics span {} of {} invariants", quadrics.dim(), r2.dim())));
    }
    let inc = family.ambient.incidence(&Q9).expect("flag");
    if !quadrics.basis.iter().all(|q| r1.contains(&Q9, &q.mul(&Q9, &inc))) {
        return Err(verification("R2", "incidence multiples are not invariant cubics"));
    }
    Ok(())
}

/// T₁: the invariant degree-3 sections, required to be 8-dimensional and to
/// have the same span as the listed basis.
pub fn invariant_cubics(family: &Family) -> Result<SectionSpace<CyclotomicScalar>> {
    let t1 = decompose(family, 3)?.remove(&Character::trivial(family.action.group.kind)).expect("all characters present");
    if t1.dim() != family.constants.t1_dim {
        return Err(verification("T1 dimension", format!("{} instead of {}", t1.dim(), family.constants.t1_dim)));
    }
    if family.label == FamilyLabel::B1 {
        check_flag_lift(family)?;
    }
    let listed = row_reduce(family.ambient.ring(), &Q9, &listed_invariant_cubics(family)?, "listed")?;
    for (name, inner, outer) in [("listed in computed", &listed, &t1), ("computed in listed", &t1, &listed)] {
        if let Some(w) = inner.basis.iter().find(|b| !outer.contains(&Q9, b)) {
            return Err(verification("T1 span", format!("{name}: {}", w.render(&Q9, family.ambient.ring()))));
        }
    }
    Ok(t1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateCharacter {
    pub name: String,
    pub section: String,
    pub character: Character,
}

/// The coordinates with their characters under the family's twist. Fails
/// unless they are the eight distinct nontrivial characters and, where the
/// coordinates carry reference labels, unless those labels are reproduced.
pub fn coordinate_characters(family: &Family) -> Result<Vec<CoordinateCharacter>> {
    let kind = family.action.group.kind;
    let coords = coordinate_sections(family.label);
    let mut out = Vec::new();
    for (idx, c) in coords.iter().enumerate() {
        let chi = family.action.eigencharacter(c)?.ok_or_else(|| verification("coordinate characters", "coordinate is not an eigenvector"))?;
        let (name, expected) = match family.label {
            FamilyLabel::A => {
                let j = data::segre_coordinates()[idx].0;
                (format!("z{j}"), Some(Character::new(kind, &[j])))
            }
            FamilyLabel::B2 => {
                let l = data::CONE_COORDINATE_LABELS[idx];
                (format!("z{}{}", l[0], l[1]), Some(Character::new(kind, &l)))
            }
            FamilyLabel::B1 => (format!("z{}{}", chi.exps[0], chi.exps[1]), None),
        };
        if let Some(e) = expected {
            if e != chi {
                return Err(verification("coordinate characters", format!("{name} carries {chi}, expected {e}")));
            }
        }
        out.push(CoordinateCharacter { name, section: c.render(&Q9, family.ambient.ring()), character: chi });
    }
    let mut chars: Vec<Character> = out.iter().map(|c| c.character.clone()).collect();
    chars.sort();
    chars.dedup();
    if chars.len() != 8 || chars.iter().any(|c| c.is_trivial()) {
        return Err(verification("coordinate characters", "characters are not the eight nontrivial ones"));
    }
    out.sort_by(|a, b| a.character.cmp(&b.character));
    Ok(out)
}

/// Exact fixed loci of every nontrivial element.
pub fn exact_fixed_points(family: &Family) -> Result<Vec<FixedLocus<CyclotomicScalar>>> {
    family.action.group.nontrivial_elements().iter().map(|g| exact_fixed_locus(&family.ambient, &family.action, g)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    /// (character, element, point) triples with χ(g) ≠ 1 that were checked.
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Every section of T_χ vanishes at every fixed point of g whenever χ(g) ≠ 1.
pub fn base_point_lemma_check(family: &Family) -> Result<LemmaReport> {
    let pieces = decompose(family, 3)?;
    let loci = exact_fixed_points(family)?;
    let mut checked = 0;
    let mut violations = Vec::new();
    for (chi, piece) in pieces.iter().filter(|(c, _)| !c.is_trivial()) {
        for locus in loci.iter().filter(|l| chi.value_log(&l.element) != 0) {
            for p in &locus.points {
                checked += 1;
                for b in &piece.basis {
                    if !Q9.is_zero(&family.ambient.evaluate(&Q9, b, p)?) {
                        violations.push(format!("T_{chi} does not vanish at a fixed point of {}", locus.element));
                        break;
                    }
                }
            }
        }
    }
    Ok(LemmaReport { checked, violations })
}
