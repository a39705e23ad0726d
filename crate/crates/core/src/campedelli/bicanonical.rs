use super::member::MemberSurface;
use super::sections::exact_fixed_points;
use super::{coordinate_characters, coordinate_sections, Family, FamilyLabel};
use crate::ambient::{enumerate_points, restrict_to_curve, segre_lines, AmbientThreefold, ConePoint, ParametrizedCurve, Point};
use crate::error::{verification, Error, Result};
use crate::group::{Character, GroupElement, LinearizedGroupAction};
use crate::polyring::linalg::kernel;
use crate::polyring::{CycPoly, Monomial, Poly};
use crate::scalars::{CyclotomicScalar as C, Field, PrimeField, Q9};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A rational curve in the base locus of the bicanonical quadrics, with
/// parameter (s : t) whose endpoints t = 0 and s = 0 are fixed points.
#[derive(Clone, Debug)]
pub enum SpecialCurve {
    /// A line of (P¹)³: two blocks pinned to 0 (false) or ∞ (true), the
    /// remaining block carrying (s, t).
    Line { name: String, curve: ParametrizedCurve, fixed: [(usize, bool); 2], free: usize },
    /// The join of the vertex (s = 0) with the point R (t = 0) of an
    /// exceptional curve of Σ.
    Ruling { name: String, base: usize, dir: [C; 2] },
}

const LINE_SPECS: [([usize; 2], bool); 6] = [([0, 1], false), ([0, 2], false), ([1, 2], false), ([0, 1], true), ([0, 2], true), ([1, 2], true)];

fn binary(terms: Vec<(u32, C)>, m: u32) -> CycPoly {
    let mut p = Poly::zero(2);
    for (e, c) in terms {
        p.add_term(&Q9, Monomial(vec![m - e, e]), &c);
    }
    p
}

impl SpecialCurve {
    pub fn name(&self) -> &str {
        match self {
            SpecialCurve::Line { name, .. } | SpecialCurve::Ruling { name, .. } => name,
        }
    }

    pub(crate) fn point_at(&self, ambient: &AmbientThreefold, s: &C, t: &C) -> Result<Point<C>> {
        match self {
            SpecialCurve::Line { fixed, free, .. } => {
                let mut v = vec![C::zero(); 6];
                for &(b, inf) in fixed {
                    v[2 * b + usize::from(inf)] = C::one();
                }
                v[2 * free] = s.clone();
                v[2 * free + 1] = t.clone();
                ambient.normalize(&Q9, Point::Multi(v))
            }
            SpecialCurve::Ruling { base, dir, .. } => {
                if s.is_zero() {
                    return Ok(Point::Cone(ConePoint::Vertex));
                }
                let dir = [s * &dir[0], s * &dir[1]];
                ambient.normalize(&Q9, Point::Cone(ConePoint::Exceptional { z: t.clone(), base: *base, dir }))
            }
        }
    }

    /// t/s at an exact point of the curve, None at s = 0.
    fn parameter(&self, ambient: &AmbientThreefold, p: &Point<C>) -> Result<Option<C>> {
        match (self, p) {
            (SpecialCurve::Line { free, .. }, Point::Multi(v)) => {
                let b = &v[2 * free..2 * free + 2];
                Ok((!b[0].is_zero()).then(|| &b[1] * &b[0].inv().expect("nonzero")))
            }
            (SpecialCurve::Ruling { .. }, Point::Cone(ConePoint::Vertex)) => Ok(None),
            (SpecialCurve::Ruling { base, dir, .. }, Point::Cone(ConePoint::Exceptional { z, base: b, dir: d })) if b == base => {
                let Point::Cone(ConePoint::Exceptional { dir: r, .. }) = ambient.normalize(&Q9, Point::Cone(ConePoint::Exceptional { z: C::zero(), base: *base, dir: dir.clone() }))? else {
                    unreachable!()
                };
                if *d != r {
                    return Err(Error::Precondition("point is not on this ruling".into()));
                }
                Ok(Some(z.clone()))
            }
            _ => Err(Error::Precondition("point is not on this curve".into())),
        }
    }

    /// A degree-m section restricted to the curve, as a binary form of degree m
    /// in (s, t).
    pub fn restrict(&self, ambient: &AmbientThreefold, f: &CycPoly) -> Result<CycPoly> {
        match self {
            SpecialCurve::Line { curve, .. } => restrict_to_curve(f, curve),
            SpecialCurve::Ruling { base, dir, .. } => {
                let m = ambient.is_section(f).ok_or_else(|| Error::DegreeMismatch("not a section".into()))?;
                let mut parts: Vec<CycPoly> = vec![Poly::zero(4); m as usize + 1];
                for (mo, c) in f.terms() {
                    parts[mo.0[3] as usize].add_term(&Q9, mo.clone(), c);
                }
                let at = Point::Cone(ConePoint::Exceptional { z: C::one(), base: *base, dir: dir.clone() });
                let terms = parts.iter().enumerate().map(|(e, p)| Ok((e as u32, ambient.evaluate(&Q9, p, &at)?))).collect::<Result<Vec<_>>>()?;
                Ok(binary(terms, m))
            }
        }
    }

    /// Membership of a point over any field; `sigma_key` is the key of R
    /// when the curve is a ruling.
    fn contains<F: Field>(&self, ambient: &AmbientThreefold, field: &F, coords: &[Poly<F::Elem>], r_key: Option<&[F::Elem]>, p: &Point<F::Elem>) -> Result<bool> {
        match (self, p) {
            (SpecialCurve::Line { fixed, .. }, Point::Multi(v)) => {
                Ok(fixed.iter().all(|&(b, inf)| field.is_zero(&v[2 * b + usize::from(!inf)])))
            }
            (SpecialCurve::Ruling { .. }, Point::Cone(ConePoint::Vertex)) => Ok(true),
            (SpecialCurve::Ruling { .. }, Point::Cone(_)) => {
                let key = ambient.point_key(field, coords, p)?;
                let r = r_key.expect("ruling key");
                // the Σ-part of the key must be proportional to R's
                let s = &key[1..];
                let first = r.iter().position(|c| !field.is_zero(c)).expect("nonzero key");
                let lam = field.div(&s[first], &r[first])?;
                Ok(s.iter().zip(r).all(|(a, b)| *a == field.mul(&lam, b)) && !field.is_zero(&lam))
            }
            _ => Err(Error::Precondition("point and curve belong to different ambients".into())),
        }
    }

    fn sigma_key<F: Field>(&self, ambient: &AmbientThreefold, field: &F, coords: &[Poly<F::Elem>]) -> Result<Option<Vec<F::Elem>>> {
        match self {
            SpecialCurve::Line { .. } => Ok(None),
            SpecialCurve::Ruling { base, dir, .. } => {
                let d = [field.from_cyclotomic(&dir[0])?, field.from_cyclotomic(&dir[1])?];
                let r = Point::Cone(ConePoint::Exceptional { z: field.zero(), base: *base, dir: d });
                Ok(Some(ambient.point_key(field, coords, &r)?[1..].to_vec()))
            }
        }
    }
}

/// Key vectors (unnormalized) of two points spanning each of the six lines
/// of Σ: the exceptional curves E_k, then the strict transforms e_k of
/// {x_k = 0}.
fn hexagon_lines(ambient: &AmbientThreefold) -> Result<Vec<(String, [Vec<C>; 2])>> {
    let coords = ambient.key_coordinates(&Q9)?;
    let key = |p: Point<C>| coords.iter().map(|c| ambient.evaluate(&Q9, c, &p)).collect::<Result<Vec<_>>>();
    let mut out = Vec::new();
    for k in 0..3 {
        let e = |d: [i64; 2]| Point::Cone(ConePoint::Exceptional { z: C::zero(), base: k, dir: d.map(C::from_int) });
        out.push((format!("E{k}"), [key(e([1, 0]))?, key(e([0, 1]))?]));
    }
    for k in 0..3 {
        let plain = |b: i64| {
            let mut x = [C::one(), C::one(), C::one()];
            x[k] = C::zero();
            x[if k == 2 { 1 } else { 2 }] = C::from_int(b);
            Point::Cone(ConePoint::Plain { z: C::zero(), x })
        };
        out.push((format!("e{k}"), [key(plain(1))?, key(plain(2))?]));
    }
    Ok(out)
}

/// The six points where consecutive lines of the hexagon meet, as points
/// on exceptional curves.
pub(crate) fn hexagon_points(ambient: &AmbientThreefold) -> Result<Vec<(String, usize, [C; 2])>> {
    let lines = hexagon_lines(ambient)?;
    let coords = ambient.key_coordinates(&Q9)?;
    let mut meets = vec![0usize; lines.len()];
    let mut points: Vec<(String, Vec<C>)> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (&lines[i].1, &lines[j].1);
            let rows: Vec<Vec<C>> = (0..8).map(|r| vec![a[0][r].clone(), a[1][r].clone(), -&b[0][r], -&b[1][r]]).collect();
            let ker = kernel(&Q9, &rows, 4)?;
            match ker.len() {
                0 => {}
                1 => {
                    let v = &ker[0];
                    let mut p: Vec<C> = (0..8).map(|r| &(&v[0] * &a[0][r]) + &(&v[1] * &a[1][r])).collect();
                    let first = p.iter().find(|c| !c.is_zero()).cloned().ok_or_else(|| verification("hexagon", "degenerate intersection"))?;
                    let inv = first.inv()?;
                    p.iter_mut().for_each(|c| *c = &*c * &inv);
                    meets[i] += 1;
                    meets[j] += 1;
                    points.push((format!("{}∩{}", lines[i].0, lines[j].0), p));
                }
                _ => return Err(verification("hexagon", format!("{} and {} coincide", lines[i].0, lines[j].0))),
            }
        }
    }
    if points.len() != 6 || meets.iter().any(|&m| m != 2) {
        return Err(verification("hexagon", format!("{} intersection points, valences {meets:?}", points.len())));
    }
    let mut out = Vec::new();
    for (name, key) in points {
        let mut found = None;
        for base in 0..3 {
            for d in [[1, 0], [0, 1]] {
                let cand = Point::Cone(ConePoint::Exceptional { z: C::zero(), base, dir: d.map(C::from_int) });
                if ambient.point_key(&Q9, &coords, &cand)? == key {
                    found = Some((base, d.map(C::from_int)));
                }
            }
        }
        let (base, dir) = found.ok_or_else(|| verification("hexagon", format!("{name} is not on an exceptional curve")))?;
        out.push((name, base, dir));
    }
    Ok(out)
}

pub fn special_curves(family: &Family) -> Result<Vec<SpecialCurve>> {
    match family.label {
        FamilyLabel::A => Ok(segre_lines(&family.ambient)
            .into_iter()
            .zip(LINE_SPECS)
            .map(|(curve, (blocks, inf))| {
                let free = (0..3).find(|b| !blocks.contains(b)).expect("one free block");
                SpecialCurve::Line { name: curve.name.clone(), curve, fixed: [(blocks[0], inf), (blocks[1], inf)], free }
            })
            .collect()),
        FamilyLabel::B2 => Ok(hexagon_points(&family.ambient)?
            .into_iter()
            .map(|(name, base, dir)| SpecialCurve::Ruling { name: format!("P-{name}"), base, dir })
            .collect()),
        FamilyLabel::B1 => Ok(Vec::new()),
    }
}

/// (α, β) when the binary cubic is exactly α t³ + β s³ with α β ≠ 0.
pub(crate) fn pure_cubic(b: &CycPoly) -> Option<(C, C)> {
    let coeff = |e: u32| b.coeff(&Monomial(vec![3 - e, e])).cloned().unwrap_or_else(C::zero);
    if b.len() != 2 {
        return None;
    }
    let (beta, alpha) = (coeff(0), coeff(3));
    (!alpha.is_zero() && !beta.is_zero()).then_some((alpha, beta))
}

/// The four quadrics z_χ z_χ⁻¹ with their names.
pub(crate) fn bicanonical_quadrics(family: &Family) -> Result<Vec<(String, CycPoly)>> {
    let coords = coordinate_characters(family)?;
    let sections = coordinate_sections(family.label);
    let chars: Vec<Character> = sections.iter().map(|s| family.action.eigencharacter(s).map(|c| c.expect("eigen"))).collect::<Result<_>>()?;
    let name = |chi: &Character| coords.iter().find(|c| c.character == *chi).expect("all characters").name.clone();
    let mut out = Vec::new();
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            if i < j && a.mul(b).is_trivial() {
                out.push((format!("{}*{}", name(a), name(b)), sections[i].mul(&Q9, &sections[j])));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    if out.len() != 4 {
        return Err(verification("bicanonical quadrics", format!("{} inverse pairs", out.len())));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveIntersection {
    pub curve: String,
    /// The member restricted to the curve.
    pub restriction: String,
    /// Points of V on the curve.
    pub points: usize,
    /// Elements mapping the curve to itself.
    pub stabilizer: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusCount {
    pub prime: u64,
    /// Common zeros of the quadrics on W(F_p).
    pub zeros: usize,
    /// Those not on any of the curves; all have nontrivial stabilizer.
    pub stabilized: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicanonicalReport {
    pub quadrics: Vec<String>,
    pub curves: Vec<CurveIntersection>,
    pub curve_orbits: usize,
    pub locus: Vec<LocusCount>,
    /// An exact fixed point lying in the base locus of the quadrics.
    pub exact_stabilized_witness: Option<String>,
    pub upstairs_points: usize,
    pub upstairs_orbits: usize,
    pub base_points: usize,
}

/// Index of the curve containing `p`, among curves tested exactly.
fn curve_of(family: &Family, curves: &[SpecialCurve], p: &Point<C>) -> Result<Option<usize>> {
    let coords = family.ambient.key_coordinates(&Q9)?;
    for (i, c) in curves.iter().enumerate() {
        let r = c.sigma_key(&family.ambient, &Q9, &coords)?;
        if c.contains(&family.ambient, &Q9, &coords, r.as_deref(), p)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Orbit structure of the group on the curves and on the three points the
/// member cuts on each: returns (curve orbits, point orbits, stabilizers).
fn curve_orbits(family: &Family, curves: &[SpecialCurve]) -> Result<(usize, usize, Vec<Vec<GroupElement>>)> {
    let amb = &family.ambient;
    let (zero, one) = (C::zero(), C::one());
    let mut image = vec![vec![0usize; curves.len()]; 9];
    let elements = family.action.group.elements();
    for (gi, g) in elements.iter().enumerate() {
        for (ci, c) in curves.iter().enumerate() {
            let q = amb.act_on_point(&family.action, g, &c.point_at(amb, &one, &one)?)?;
            image[gi][ci] = curve_of(family, curves, &q)?.ok_or_else(|| verification("curve orbits", format!("{g} moves {} off the curves", c.name())))?;
        }
    }
    let mut seen = vec![false; curves.len()];
    let (mut orbits, mut point_orbits) = (0, 0);
    let mut stabilizers = vec![Vec::new(); curves.len()];
    for (ci, c) in curves.iter().enumerate() {
        let stab: Vec<GroupElement> = elements.iter().enumerate().filter(|(gi, _)| image[*gi][ci] == ci).map(|(_, g)| g.clone()).collect();
        for h in stab.iter().filter(|h| !h.is_identity()) {
            // h fixes both endpoints and scales the parameter by a primitive cube root
            for (s, t) in [(&one, &zero), (&zero, &one)] {
                let p = c.point_at(amb, s, t)?;
                if amb.act_on_point(&family.action, h, &p)? != p {
                    return Err(verification("curve orbits", format!("{h} moves an endpoint of {}", c.name())));
                }
            }
            let q = amb.act_on_point(&family.action, h, &c.point_at(amb, &one, &one)?)?;
            let k = c.parameter(amb, &q)?.ok_or_else(|| verification("curve orbits", "parameter at the vertex"))?;
            if k == one || &(&k * &k) * &k != one {
                return Err(verification("curve orbits", format!("{h} acts on {} by {k}", c.name())));
            }
        }
        if 3 % stab.len() != 0 {
            return Err(verification("curve orbits", format!("stabilizer of {} has order {}", c.name(), stab.len())));
        }
        if !seen[ci] {
            orbits += 1;
            point_orbits += 3 / stab.len();
            for row in &image {
                seen[row[ci]] = true;
            }
        }
        stabilizers[ci] = stab;
    }
    Ok((orbits, point_orbits, stabilizers))
}

/// Enumerates the common zeros of the quadrics on W(F_p) and checks each is
/// on a curve or has nontrivial stabilizer. Returns the count and the
/// stabilized points (normalized, rendered).
fn enumerate_locus(family: &Family, quadrics: &[CycPoly], curves: &[SpecialCurve], prime: u64) -> Result<(LocusCount, Vec<Vec<String>>)> {
    let field = PrimeField::new(prime)?;
    let amb = &family.ambient;
    let action: LinearizedGroupAction<PrimeField> = family.action.specialize(&field)?;
    let coords = amb.key_coordinates(&field)?;
    let qs = quadrics.iter().map(|q| q.map_coeffs(&field, |c| field.from_cyclotomic(c))).collect::<Result<Vec<_>>>()?;
    let rkeys = curves.iter().map(|c| c.sigma_key(amb, &field, &coords)).collect::<Result<Vec<_>>>()?;
    let maps = action.group.nontrivial_elements().iter().map(|g| amb.point_map(&action, g)).collect::<Result<Vec<_>>>()?;
    let zeros: Vec<Point<u64>> = enumerate_points(amb, &field)
        .into_par_iter()
        .filter(|p| qs.iter().all(|q| amb.evaluate(&field, q, p).map(|v| v == 0).unwrap_or(false)))
        .collect();
    let mut stabilized = Vec::new();
    for p in &zeros {
        let mut on_curve = false;
        for (c, r) in curves.iter().zip(&rkeys) {
            on_curve |= c.contains(amb, &field, &coords, r.as_deref(), p)?;
        }
        if on_curve {
            continue;
        }
        let key = amb.point_key(&field, &coords, p)?;
        let mut fixed = false;
        for m in &maps {
            fixed |= amb.point_key(&field, &coords, &amb.apply_point_map(&field, m, p)?)? == key;
        }
        if !fixed {
            return Err(verification("bicanonical locus", format!("free point {key:?} over F_{prime}")));
        }
        stabilized.push(key.iter().map(|c| c.to_string()).collect());
    }
    stabilized.sort();
    Ok((LocusCount { prime, zeros: zeros.len(), stabilized: stabilized.len() }, stabilized))
}

/// Structure of the base locus of the bicanonical quadrics on W and of its
/// intersection with the member surface.
pub fn bicanonical_base_locus(family: &Family, member: &MemberSurface, primes: &[u64]) -> Result<BicanonicalReport> {
    let amb = &family.ambient;
    let quadrics = bicanonical_quadrics(family)?;
    let curves = special_curves(family)?;
    for c in &curves {
        for (name, q) in &quadrics {
            if !c.restrict(amb, q)?.is_zero() {
                return Err(verification("bicanonical locus", format!("{name} does not vanish on {}", c.name())));
            }
        }
    }
    let qpolys: Vec<CycPoly> = quadrics.iter().map(|(_, q)| q.clone()).collect();
    // exact fixed points in the locus, and the member's values there
    let loci = exact_fixed_points(family)?;
    let coords = amb.key_coordinates(&Q9)?;
    let mut exact_stabilized: Vec<Vec<String>> = Vec::new();
    let mut field_points = std::collections::BTreeMap::new();
    for l in &loci {
        for p in &l.points {
            if qpolys.iter().all(|q| amb.evaluate(&Q9, q, p).map(|v| v.is_zero()).unwrap_or(false)) && curve_of(family, &curves, p)?.is_none() {
                if amb.evaluate(&Q9, &member.section, p)?.is_zero() {
                    return Err(verification("bicanonical locus", "member passes through a stabilized base point"));
                }
                let key: Vec<String> = amb.point_key(&Q9, &coords, p)?.iter().map(|c| c.to_string()).collect();
                if !exact_stabilized.contains(&key) {
                    exact_stabilized.push(key);
                    field_points.insert(exact_stabilized.len() - 1, p.clone());
                }
            }
        }
    }
    let mut locus = Vec::new();
    for &prime in primes {
        let (count, found) = enumerate_locus(family, &qpolys, &curves, prime)?;
        let field = PrimeField::new(prime)?;
        let fcoords = amb.key_coordinates(&field)?;
        let mut expected: Vec<Vec<String>> = field_points
            .values()
            .map(|p| Ok(amb.point_key(&field, &fcoords, &specialize_point(&field, p)?)?.iter().map(|c| c.to_string()).collect()))
            .collect::<Result<_>>()?;
        expected.sort();
        if found != expected {
            return Err(verification("bicanonical locus", format!("over F_{prime}: {} stabilized zeros, {} exact", found.len(), expected.len())));
        }
        locus.push(count);
    }
    if family.label == FamilyLabel::A && !exact_stabilized.is_empty() {
        return Err(verification("bicanonical locus", "points off the six lines"));
    }
    if family.label == FamilyLabel::B1 && exact_stabilized.is_empty() {
        return Err(verification("bicanonical locus", "the finite locus is empty"));
    }
    let mut intersections = Vec::new();
    for c in &curves {
        let r = c.restrict(amb, &member.section)?;
        if pure_cubic(&r).is_none() {
            return Err(verification("bicanonical locus", format!("restriction to {} is {}", c.name(), r.render(&Q9, &crate::ambient::binary_ring("s", "t")))));
        }
        intersections.push((c.name().to_string(), r.render(&Q9, &crate::ambient::binary_ring("s", "t"))));
    }
    let (curve_orbits, upstairs_orbits, stabs) = if curves.is_empty() { (0, 0, Vec::new()) } else { curve_orbits(family, &curves)? };
    let curves_out = intersections
        .into_iter()
        .zip(stabs)
        .map(|((curve, restriction), stab)| CurveIntersection { curve, restriction, points: 3, stabilizer: stab.iter().map(|g| g.to_string()).collect() })
        .collect::<Vec<_>>();
    let upstairs_points = 3 * curves_out.len();
    if upstairs_points != 9 * upstairs_orbits {
        return Err(verification("bicanonical locus", format!("{upstairs_points} points in {upstairs_orbits} orbits is not a free action")));
    }
    Ok(BicanonicalReport {
        quadrics: quadrics.into_iter().map(|(n, _)| n).collect(),
        curves: curves_out,
        curve_orbits,
        locus,
        exact_stabilized_witness: exact_stabilized.first().map(|k| format!("[{}]", k.join(", "))),
        upstairs_points,
        upstairs_orbits,
        base_points: upstairs_points / 9,
    })
}

/// An exact point reduced modulo p.
pub(crate) fn specialize_point<F: Field>(field: &F, p: &Point<C>) -> Result<Point<F::Elem>> {
    let s = |c: &C| field.from_cyclotomic(c);
    Ok(match p {
        Point::Multi(v) => Point::Multi(v.iter().map(s).collect::<Result<_>>()?),
        Point::Cone(ConePoint::Vertex) => Point::Cone(ConePoint::Vertex),
        Point::Cone(ConePoint::Plain { z, x }) => Point::Cone(ConePoint::Plain { z: s(z)?, x: [s(&x[0])?, s(&x[1])?, s(&x[2])?] }),
        Point::Cone(ConePoint::Exceptional { z, base, dir }) => Point::Cone(ConePoint::Exceptional { z: s(z)?, base: *base, dir: [s(&dir[0])?, s(&dir[1])?] }),
    })
}
