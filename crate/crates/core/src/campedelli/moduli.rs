use super::sections::eigenspace_table;
use super::{build_family, data, Family, FamilyLabel};
use crate::ambient::{AmbientKind, PointMap};
use crate::error::{verification, Error, Result};
use crate::group::{AbelianGroup, Character, GroupKind, LinearizedGroupAction, Twist};
use crate::polyring::linalg::{kernel, mat_mul, Matrix};
use crate::polyring::{hilbert_degree, row_reduce, CycPoly, Poly, PolyRing, RelationQuotient, Substitution, VariableBlock};
use crate::scalars::{CyclotomicScalar as C, Q9};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Matrices (up to scalars) by which the generators act on points.
fn generator_matrices(family: &Family) -> Result<Vec<Matrix<C>>> {
    let amb = &family.ambient;
    family
        .action
        .group
        .generators()
        .iter()
        .map(|g| {
            Ok(match amb.point_map(&family.action, g)? {
                PointMap::Linear(n) => match amb.kind {
                    AmbientKind::FlagVariety => n[..3].iter().map(|r| r[..3].to_vec()).collect(),
                    _ => n,
                },
                PointMap::Cone { sigma, c, .. } => {
                    (0..3).map(|i| (0..3).map(|j| if sigma[i] == j { c[i].clone() } else { C::zero() }).collect()).collect()
                }
            })
        })
        .collect()
}

/// Traceless matrices on each diagonal block of the given sizes.
fn block_lie_algebra(sizes: &[usize]) -> Vec<Matrix<C>> {
    let n: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut start = 0;
    for &k in sizes {
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![C::zero(); n]; n];
            m[start + i][start + j] = C::one();
            m
        };
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    out.push(unit(i, j));
                }
            }
        }
        for i in 1..k {
            let mut m = unit(0, 0);
            m[start + i][start + i] = C::from_int(-1);
            out.push(m);
        }
        start += k;
    }
    out
}

/// Dimension of {X in the algebra : N X = X N for every N}.
fn commutant_dimension(algebra: &[Matrix<C>], matrices: &[Matrix<C>]) -> Result<usize> {
    let n = algebra[0].len();
    let mut rows = Vec::new();
    for m in matrices {
        let comms: Vec<Matrix<C>> = algebra
            .iter()
            .map(|x| {
                let (a, b) = (mat_mul(&Q9, m, x), mat_mul(&Q9, x, m));
                a.iter().zip(&b).map(|(ra, rb)| ra.iter().zip(rb).map(|(p, q)| p - q).collect()).collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                rows.push(comms.iter().map(|c| c[i][j].clone()).collect());
            }
        }
    }
    Ok(kernel(&Q9, &rows, algebra.len())?.len())
}

/// (centralizer dimension, moduli = 7 − dimension). On the cone the
/// scaling of z contributes one dimension beyond the action on Σ.
pub fn centralizer_dimension(family: &Family) -> Result<(usize, i64)> {
    let mats = generator_matrices(family)?;
    let dim = match family.label {
        FamilyLabel::A => commutant_dimension(&block_lie_algebra(&[2, 2, 2]), &mats)?,
        FamilyLabel::B1 => commutant_dimension(&block_lie_algebra(&[3]), &mats)?,
        FamilyLabel::B2 => 1 + commutant_dimension(&block_lie_algebra(&[3]), &mats)?,
    };
    Ok((dim, 7 - dim as i64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationReport {
    pub lambda: String,
    pub mu: String,
    pub target: FamilyLabel,
    /// Coordinates of P⁹ with their characters.
    pub coordinates: Vec<(String, Character)>,
    pub section_dims: Vec<i64>,
    pub degree: i64,
    /// Degree → (character → dimension) on the slice.
    pub tables: BTreeMap<u32, BTreeMap<String, usize>>,
}

/// The cone over P² × P²* in P⁹ on the ring (x, y, w), w of bidegree (1,1).
fn cone_model() -> Result<(PolyRing, LinearizedGroupAction<crate::scalars::CyclotomicField>)> {
    let ring = PolyRing::new(vec![VariableBlock::new("x", &["x0", "x1", "x2"]), VariableBlock::new("y", &["y0", "y1", "y2"]), VariableBlock::new("w", &["w"])])?
        .with_gradings(vec![vec![1, 1, 1, 0, 0, 0, 1], vec![0, 0, 0, 1, 1, 1, 1]]);
    let v = |i: usize| Poly::var(&Q9, 7, i);
    let om = |i: usize, k: i64| v(i).scale(&Q9, &C::zeta_pow(3 * k));
    let g1 = vec![v(0), om(1, 1), om(2, 2), v(3), om(4, 2), om(5, 1), v(6)];
    let g2 = vec![v(1), v(2), v(0), v(4), v(5), v(3), om(6, 1)];
    let rules = [g1, g2].into_iter().map(|g| Substitution::new(&ring, &ring, g.into_iter().map(Some).collect())).collect::<Result<Vec<_>>>()?;
    let twist = Twist { character: Character::trivial(GroupKind::Z3xZ3), weights: vec![0; 7], divisor: 1 };
    let action = LinearizedGroupAction::new(AbelianGroup::new(GroupKind::Z3xZ3), ring.clone(), rules, twist)?;
    Ok((ring, action))
}

fn embed(p: &CycPoly) -> CycPoly {
    p.embed(7, &[0, 1, 2, 3, 4, 5])
}

/// Character → dimension of the degree-m part of the quotient by `hyperplanes`.
fn quotient_table(ring: &PolyRing, action: &LinearizedGroupAction<crate::scalars::CyclotomicField>, hyperplanes: &[CycPoly], m: u32) -> Result<BTreeMap<String, usize>> {
    let q = RelationQuotient::new(ring, &Q9, hyperplanes, &[m, m])?;
    let mut out = BTreeMap::new();
    for chi in Character::all(GroupKind::Z3xZ3) {
        let images = q
            .complement
            .iter()
            .map(|mo| Ok(q.normal_form(&Q9, &action.reynolds_project(&Poly::term(&Q9, mo.clone(), C::one()), &chi)?)))
            .collect::<Result<Vec<_>>>()?;
        out.insert(chi.to_string(), row_reduce(ring, &Q9, &images, "slice")?.dim());
    }
    Ok(out)
}

/// Slices the P⁹ cone by z₀₀ = 0 and λw + μz₀₁ = 0 and compares the
/// result with B1 when λ ≠ 0 (the slice misses the vertex) and with B2 when
/// λ = 0 (the slice is the cone over Σ = Z ∩ {z₀₀ = z₀₁ = 0}).
pub fn degeneration_check(lambda: &C, mu: &C) -> Result<DegenerationReport> {
    if lambda.is_zero() && mu.is_zero() {
        return Err(Error::DegenerateParameters);
    }
    let (ring, action) = cone_model()?;
    let fail = |d: String| verification("degeneration", d);
    // the nine bilinear eigenforms: the incidence form and the eight coordinates of the flag model
    let flag = build_family(FamilyLabel::B1)?;
    let inc = embed(&flag.ambient.incidence(&Q9).expect("flag"));
    let mut coords: Vec<CycPoly> = vec![inc.clone()];
    coords.extend(data::flag_coordinates().iter().map(embed));
    coords.push(Poly::var(&Q9, 7, 6));
    let mut named = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        let chi = action.eigencharacter(c)?.ok_or_else(|| fail("coordinate is not an eigenvector".into()))?;
        if !action.apply(&action.group.generators()[0], &c.pow(&Q9, 3))?.sub(&Q9, &c.pow(&Q9, 3)).is_zero()
            || !action.apply(&action.group.generators()[1], &c.pow(&Q9, 3))?.sub(&Q9, &c.pow(&Q9, 3)).is_zero()
        {
            return Err(fail("a coordinate cube is not invariant".into()));
        }
        let name = if i == 9 { "w".to_string() } else { format!("z{}{}", chi.exps[0], chi.exps[1]) };
        named.push((name, chi));
    }
    let bilinear: Vec<&Character> = named[..9].iter().map(|(_, c)| c).collect();
    let mut distinct = bilinear.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != 9 || !named[0].1.is_trivial() || named[9].1 != Character::new(GroupKind::Z3xZ3, &[0, 1]) {
        return Err(fail("P^9 coordinates do not carry the nine characters with w of character (0,1)".into()));
    }
    let degree_one: Vec<CycPoly> = ring.monomials_with_grading(&[1, 1]).into_iter().map(|m| Poly::term(&Q9, m, C::one())).collect();
    if !row_reduce(&ring, &Q9, &coords, "coords")?.same_span(&Q9, &row_reduce(&ring, &Q9, &degree_one, "deg1")?) {
        return Err(fail("coordinates do not span the degree-1 sections of the cone".into()));
    }
    let z01 = coords[named.iter().position(|(_, c)| *c == Character::new(GroupKind::Z3xZ3, &[0, 1])).expect("present")].clone();
    let hyper = Poly::var(&Q9, 7, 6).scale(&Q9, lambda).add(&Q9, &z01.scale(&Q9, mu));
    let slice = [inc, hyper];
    let section_dims = (0..=4).map(|m| Ok(RelationQuotient::new(&ring, &Q9, &slice, &[m, m])?.dim() as i64)).collect::<Result<Vec<_>>>()?;
    let degree = hilbert_degree(&section_dims)?;
    let target = if lambda.is_zero() { FamilyLabel::B2 } else { FamilyLabel::B1 };
    let model = build_family(target)?;
    let expected = model.ambient.section_dimensions(&Q9)?;
    if section_dims != expected {
        return Err(fail(format!("slice dimensions {section_dims:?}, model {expected:?}")));
    }
    let mut tables = BTreeMap::new();
    for m in 1..=3 {
        let got = quotient_table(&ring, &action, &slice, m)?;
        let want: BTreeMap<String, usize> = eigenspace_table(&model, &Q9, m)?.into_iter().map(|(c, d)| (c.to_string(), d)).collect();
        if got != want {
            return Err(fail(format!("degree {m} characters differ from {target}")));
        }
        tables.insert(m, got);
    }
    Ok(DegenerationReport { lambda: lambda.to_string(), mu: mu.to_string(), target, coordinates: named, section_dims, degree, tables })
}
