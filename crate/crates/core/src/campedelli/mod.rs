//! The three families A, B1, B2: their actions, invariant cubics, sample
//! members and the checks that reproduce their structure.

mod bicanonical;
pub mod data;
mod member;
mod moduli;
mod report;
mod sections;

pub use bicanonical::{bicanonical_base_locus, special_curves, BicanonicalReport, CurveIntersection, LocusCount, SpecialCurve};
pub use member::{candidate_coefficients, certify_freeness, combine, member_basis, sample_member, Screener, FreenessReport, MemberSurface, SamplingConfig, ScreeningRecord};
pub use moduli::{centralizer_dimension, degeneration_check, DegenerationReport};
pub use report::{family_report, CheckRecord, CheckStatus, MemberRecord, VerificationReport, SCHEMA_VERSION};
pub use sections::{
    base_point_lemma_check, coordinate_characters, decompose, eigenspace_table, exact_fixed_points, invariant_cubics, CoordinateCharacter,
    LemmaReport,
};

use crate::ambient::AmbientThreefold;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character, GroupKind, LinearizedGroupAction, Twist};
use crate::polyring::{CycPoly, Poly, Substitution};
use crate::scalars::{CyclotomicField, CyclotomicScalar, Q9};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyLabel {
    A,
    B1,
    B2,
}

impl FamilyLabel {
    pub const ALL: [FamilyLabel; 3] = [FamilyLabel::A, FamilyLabel::B1, FamilyLabel::B2];
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyLabel::A => "A",
            FamilyLabel::B1 => "B1",
            FamilyLabel::B2 => "B2",
        })
    }
}

impl FromStr for FamilyLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(FamilyLabel::A),
            "B1" => Ok(FamilyLabel::B1),
            "B2" => Ok(FamilyLabel::B2),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

/// Reference invariants of every member surface V and of the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    pub k_squared: i64,
    pub p_g: i64,
    pub q: i64,
    pub ambient_degree: i64,
    pub t1_dim: usize,
    pub moduli: i64,
    pub base_points: usize,
}

impl Constants {
    pub fn of(label: FamilyLabel) -> Self {
        let (moduli, base_points) = match label {
            FamilyLabel::A => (6, 2),
            FamilyLabel::B1 => (7, 0),
            FamilyLabel::B2 => (6, 2),
        };
        Self { k_squared: 18, p_g: 8, q: 0, ambient_degree: 6, t1_dim: 8, moduli, base_points }
    }

    /// (name, value, claim) rows of the reference table.
    pub fn table(&self) -> Vec<(&'static str, i64, &'static str)> {
        vec![
            ("K2", self.k_squared, "K_V^2 = 3 H^3 = 18"),
            ("p_g", self.p_g, "p_g(V) = 8"),
            ("q", self.q, "q(V) = 0"),
            ("degree", self.ambient_degree, "W has degree 6 in P^7"),
            ("t1_dim", self.t1_dim as i64, "dim T_1 = 8"),
            ("moduli", self.moduli, "number of moduli of the family"),
            ("base_points", self.base_points as i64, "base points of the bicanonical system"),
        ]
    }
}

/// An ambient threefold with a verified linearized group action.
#[derive(Clone, Debug)]
pub struct Family {
    pub label: FamilyLabel,
    pub ambient: AmbientThreefold,
    pub action: LinearizedGroupAction<CyclotomicField>,
    pub constants: Constants,
}

fn var(nvars: usize, v: usize) -> CycPoly {
    Poly::var(&Q9, nvars, v)
}

fn scaled(nvars: usize, v: usize, omega_power: i64) -> CycPoly {
    var(nvars, v).scale(&Q9, &CyclotomicScalar::zeta_pow(3 * omega_power))
}

/// Rules of the two generators on x₀,x₁,x₂ (diagonal and cyclic), extended to
/// extra variables by `rest`.
fn p2_rules(nvars: usize, diag_rest: Vec<CycPoly>, cyc_rest: Vec<CycPoly>) -> (Vec<CycPoly>, Vec<CycPoly>) {
    let mut g1 = vec![var(nvars, 0), scaled(nvars, 1, 1), scaled(nvars, 2, 2)];
    g1.extend(diag_rest);
    let mut g2 = vec![var(nvars, 1), var(nvars, 2), var(nvars, 0)];
    g2.extend(cyc_rest);
    (g1, g2)
}

fn rule(ambient: &AmbientThreefold, images: Vec<CycPoly>) -> Result<Substitution<CyclotomicScalar>> {
    Substitution::new(ambient.ring(), ambient.ring(), images.into_iter().map(Some).collect())
}

/// The eight eigen-coordinates whose characters fix the twist.
pub fn coordinate_sections(label: FamilyLabel) -> Vec<CycPoly> {
    match label {
        FamilyLabel::A => data::segre_coordinates().into_iter().map(|(_, p)| p).collect(),
        FamilyLabel::B1 => data::flag_coordinates(),
        FamilyLabel::B2 => {
            let cone = AmbientThreefold::cone();
            let mut out = vec![var(4, 3)];
            out.extend(cone.cone_sigma_coordinates());
            out
        }
    }
}

/// Builds the ambient and action, verifies the group relations, and fixes
/// the unique twist under which the coordinates carry the eight nontrivial
/// characters.
pub fn build_family(label: FamilyLabel) -> Result<Family> {
    let (ambient, kind, gens, weights, divisor) = match label {
        FamilyLabel::A => {
            let a = AmbientThreefold::segre();
            // (x, y, z) ↦ (y, z, ωx) on affine coordinates
            let g = vec![var(6, 2), var(6, 3), var(6, 4), var(6, 5), var(6, 0), scaled(6, 1, 1)];
            let gens = vec![rule(&a, g)?];
            (a, GroupKind::Z9, gens, vec![1, 1, 0, 0, 0, 0], 1)
        }
        FamilyLabel::B1 => {
            let a = AmbientThreefold::flag();
            // the dual coordinates transform by the inverse transpose
            let (g1, g2) = p2_rules(6, vec![var(6, 3), scaled(6, 4, 2), scaled(6, 5, 1)], vec![var(6, 4), var(6, 5), var(6, 3)]);
            let gens = vec![rule(&a, g1)?, rule(&a, g2)?];
            (a, GroupKind::Z3xZ3, gens, vec![1, 1, 1, 0, 0, 0], 1)
        }
        FamilyLabel::B2 => {
            let a = AmbientThreefold::cone();
            let (g1, g2) = p2_rules(4, vec![var(4, 3)], vec![scaled(4, 3, 1)]);
            let gens = vec![rule(&a, g1)?, rule(&a, g2)?];
            // one twist step per cubic in x
            (a, GroupKind::Z3xZ3, gens, vec![1, 1, 1, 0], 3)
        }
    };
    let twist = Twist { character: Character::trivial(kind), weights, divisor };
    let natural = LinearizedGroupAction::new(AbelianGroup::new(kind), ambient.ring().clone(), gens, twist)?;
    let coords = coordinate_sections(label);
    let mut basis = ambient.section_space(1, &Q9)?.basis;
    basis.extend(coords.iter().cloned());
    natural.verify(&basis).map_err(|v| crate::error::verification("group relations", format!("{} fails on {}", v.relation, v.witness.render(&Q9, ambient.ring()))))?;
    let chi = natural.admissible_twist(&coords)?;
    let action = natural.with_twist(chi);
    Ok(Family { label, ambient, action, constants: Constants::of(label) })
}

#[cfg(test)]
mod twist_tests {
    use super::*;

    #[test]
    fn twists_are_as_expected() {
        let expect = [("A", "Z9:3"), ("B1", "Z3xZ3:(0,0)"), ("B2", "Z3xZ3:(0,2)")];
        for (label, chi) in expect {
            let fam = build_family(label.parse().unwrap()).unwrap();
            assert_eq!(fam.action.twist.character.to_string(), chi, "{label}");
        }
    }
}

#[cfg(test)]
mod tests;
