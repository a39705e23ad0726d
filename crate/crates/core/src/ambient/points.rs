use super::{AmbientKind, AmbientThreefold};
use crate::error::{Error, Result};
use crate::group::{GroupElement, LinearizedGroupAction};
use crate::polyring::Poly;
use crate::scalars::{Field, FiniteField};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A point of the cone W over Σ. Away from the vertex a point is a pair
/// (z, σ): σ is either a point of P² other than the three blown-up points,
/// with weighted scaling (z, x) ~ (c³z, cx), or a tangent direction d at the
/// coordinate point `base`, with (z, d) ~ (cz, cd). The direction lists the
/// two remaining coordinates in increasing index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConePoint<E> {
    Vertex,
    Plain { z: E, x: [E; 3] },
    Exceptional { z: E, base: usize, dir: [E; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<E> {
    /// Homogeneous coordinates in ring order, each block normalized so its
    /// first nonzero entry is 1.
    Multi(Vec<E>),
    Cone(ConePoint<E>),
}

/// Normalized points with a field descriptor, ready for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub field: String,
    pub points: Vec<Vec<String>>,
}

pub(crate) fn others(k: usize) -> [usize; 2] {
    match k {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

fn normalize_slice<F: Field>(field: &F, v: &mut [F::Elem]) -> Result<()> {
    let Some(first) = v.iter().find(|c| !field.is_zero(c)).cloned() else {
        return Err(Error::Precondition("zero vector is not a projective point".into()));
    };
    let inv = field.inv(&first)?;
    for c in v.iter_mut() {
        *c = field.mul(c, &inv);
    }
    Ok(())
}

/// Precomputed per-element point map.
#[derive(Clone, Debug)]
pub(crate) enum PointMap<E> {
    /// p ↦ N p on the full coordinate vector.
    Linear(Vec<Vec<E>>),
    /// x_i ↦ c_i x_{σ(i)}, z ↦ cz z.
    Cone { sigma: [usize; 3], c: [E; 3], cz: E },
}

impl AmbientThreefold {
    pub fn normalize<F: Field>(&self, field: &F, p: Point<F::Elem>) -> Result<Point<F::Elem>> {
        match p {
            Point::Multi(mut v) => {
                for r in self.block_ranges() {
                    normalize_slice(field, &mut v[r])?;
                }
                Ok(Point::Multi(v))
            }
            Point::Cone(ConePoint::Plain { z, x }) => {
                let first = x.iter().find(|c| !field.is_zero(c)).cloned().ok_or(Error::DivisionByZero)?;
                let inv = field.inv(&first)?;
                let x = [field.mul(&x[0], &inv), field.mul(&x[1], &inv), field.mul(&x[2], &inv)];
                let z = field.mul(&z, &field.pow(&inv, 3));
                let nz = x.iter().filter(|c| !field.is_zero(c)).count();
                if nz == 1 {
                    return Err(Error::Precondition("coordinate points of P² are blown up".into()));
                }
                Ok(Point::Cone(ConePoint::Plain { z, x }))
            }
            Point::Cone(ConePoint::Exceptional { z, base, dir }) => {
                let first = dir.iter().find(|c| !field.is_zero(c)).cloned().ok_or(Error::DivisionByZero)?;
                let inv = field.inv(&first)?;
                Ok(Point::Cone(ConePoint::Exceptional { z: field.mul(&z, &inv), base, dir: [field.mul(&dir[0], &inv), field.mul(&dir[1], &inv)] }))
            }
            v => Ok(v),
        }
    }

    /// Value of a section at a chosen lift of the point. Only vanishing is
    /// meaningful, but the lift is fixed so values of several sections can be
    /// compared as a projective vector.
    pub fn evaluate<F: Field>(&self, field: &F, f: &Poly<F::Elem>, p: &Point<F::Elem>) -> Result<F::Elem> {
        match p {
            Point::Multi(v) => f.evaluate(field, v),
            Point::Cone(ConePoint::Vertex) => {
                let mut acc = field.zero();
                for (m, c) in f.terms() {
                    if m.0[..3].iter().all(|&e| e == 0) {
                        acc = field.add(&acc, c);
                    }
                }
                Ok(acc)
            }
            Point::Cone(ConePoint::Plain { z, x }) => f.evaluate(field, &[x[0].clone(), x[1].clone(), x[2].clone(), z.clone()]),
            Point::Cone(ConePoint::Exceptional { z, base, dir }) => {
                let [a, b] = others(*base);
                let mut acc = field.zero();
                for (m, c) in f.terms() {
                    let xdeg: u32 = m.0[..3].iter().sum();
                    if !xdeg.is_multiple_of(3) {
                        return Err(Error::DegreeMismatch("not a section of the cone".into()));
                    }
                    let i = xdeg / 3;
                    if m.0[*base] > 2 * i {
                        return Err(Error::Precondition("term does not vanish on the exceptional curve".into()));
                    }
                    if m.0[*base] == 2 * i {
                        let t = field.mul(
                            c,
                            &field.mul(&field.pow(z, m.0[3] as u64), &field.mul(&field.pow(&dir[0], m.0[a] as u64), &field.pow(&dir[1], m.0[b] as u64))),
                        );
                        acc = field.add(&acc, &t);
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Canonical identity of a point: normalized coordinates, or for the
    /// cone the normalized image in P⁷ under (z, z₁₂, z₂₂, z₁₁, z₂₁, z₁₀, z₂₀, z₀₂).
    pub fn point_key<F: Field>(&self, field: &F, coords: &[Poly<F::Elem>], p: &Point<F::Elem>) -> Result<Vec<F::Elem>> {
        match p {
            Point::Multi(_) => match self.normalize(field, p.clone())? {
                Point::Multi(v) => Ok(v),
                _ => unreachable!(),
            },
            Point::Cone(_) => {
                let mut v = coords.iter().map(|c| self.evaluate(field, c, p)).collect::<Result<Vec<_>>>()?;
                normalize_slice(field, &mut v)?;
                Ok(v)
            }
        }
    }

    /// The eight degree-1 coordinate sections used by [`Self::point_key`].
    pub fn key_coordinates<F: Field>(&self, field: &F) -> Result<Vec<Poly<F::Elem>>> {
        match self.kind {
            AmbientKind::DelPezzoCone => {
                let mut out = vec![Poly::var(field, 4, 3)];
                for c in self.cone_sigma_coordinates() {
                    out.push(c.map_coeffs(field, |a| field.from_cyclotomic(a))?);
                }
                Ok(out)
            }
            _ => Ok(Vec::new()),
        }
    }

    pub(crate) fn point_map<F: Field>(&self, action: &LinearizedGroupAction<F>, g: &GroupElement) -> Result<PointMap<F::Elem>> {
        let field = action.field();
        let rule = action.rule(g);
        let n = self.ring().nvars();
        let linear_coeffs = |v: usize| -> Result<Vec<F::Elem>> {
            let img = rule.image(v).ok_or_else(|| Error::MissingVariable(self.ring().var_name(v).into()))?;
            let mut row = vec![field.zero(); n];
            for (m, c) in img.terms() {
                if m.degree() != 1 {
                    return Err(Error::Unsupported("point maps need linear rules".into()));
                }
                let w = m.0.iter().position(|&e| e == 1).expect("degree one");
                row[w] = c.clone();
            }
            Ok(row)
        };
        match self.kind {
            AmbientKind::DelPezzoCone => {
                let mut sigma = [0; 3];
                let mut c = [field.zero(), field.zero(), field.zero()];
                for i in 0..3 {
                    let row = linear_coeffs(i)?;
                    let nz: Vec<usize> = (0..3).filter(|&w| !field.is_zero(&row[w])).collect();
                    if nz.len() != 1 || !field.is_zero(&row[3]) {
                        return Err(Error::Unsupported("cone point maps need monomial rules".into()));
                    }
                    sigma[i] = nz[0];
                    c[i] = row[nz[0]].clone();
                }
                let zrow = linear_coeffs(3)?;
                let t = field.zeta_pow(action.twist.character.value_log(g) as i64);
                let cz = field.div(&zrow[3], &t)?;
                Ok(PointMap::Cone { sigma, c, cz })
            }
            _ => Ok(PointMap::Linear((0..n).map(linear_coeffs).collect::<Result<Vec<_>>>()?)),
        }
    }

    pub(crate) fn apply_point_map<F: Field>(&self, field: &F, map: &PointMap<F::Elem>, p: &Point<F::Elem>) -> Result<Point<F::Elem>> {
        let out = match (map, p) {
            (PointMap::Linear(n), Point::Multi(v)) => Point::Multi(
                n.iter().map(|row| row.iter().zip(v).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))).collect(),
            ),
            (PointMap::Cone { .. }, Point::Cone(ConePoint::Vertex)) => Point::Cone(ConePoint::Vertex),
            (PointMap::Cone { sigma, c, cz }, Point::Cone(ConePoint::Plain { z, x })) => {
                let nx = [field.mul(&c[0], &x[sigma[0]]), field.mul(&c[1], &x[sigma[1]]), field.mul(&c[2], &x[sigma[2]])];
                Point::Cone(ConePoint::Plain { z: field.mul(cz, z), x: nx })
            }
            (PointMap::Cone { sigma, c, cz }, Point::Cone(ConePoint::Exceptional { z, base, dir })) => {
                let nb = (0..3).find(|&i| sigma[i] == *base).expect("permutation");
                let old = others(*base);
                let coord = |i: usize| dir[old.iter().position(|&o| o == i).expect("off the base")].clone();
                let ck_inv = field.inv(&c[nb])?;
                let nd = others(nb).map(|b| field.mul(&field.mul(&c[b], &ck_inv), &coord(sigma[b])));
                Point::Cone(ConePoint::Exceptional { z: field.mul(cz, z), base: nb, dir: nd })
            }
            _ => return Err(Error::Precondition("point and map belong to different ambients".into())),
        };
        self.normalize(field, out)
    }

    /// g · p for the projective action on W.
    pub fn act_on_point<F: Field>(&self, action: &LinearizedGroupAction<F>, g: &GroupElement, p: &Point<F::Elem>) -> Result<Point<F::Elem>> {
        let map = self.point_map(action, g)?;
        self.apply_point_map(action.field(), &map, p)
    }

    pub fn point_set<F: Field>(&self, field: &F, points: &[Point<F::Elem>]) -> Result<PointSet> {
        let coords = self.key_coordinates(field)?;
        let mut rendered = points
            .iter()
            .map(|p| Ok(self.point_key(field, &coords, p)?.iter().map(|c| field.render(c)).collect()))
            .collect::<Result<Vec<Vec<String>>>>()?;
        rendered.sort();
        Ok(PointSet { field: field.name(), points: rendered })
    }
}

fn projective_space<F: FiniteField>(field: &F, n: usize) -> Vec<Vec<F::Elem>> {
    let q = field.order();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            let mut r = idx;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = field.element(r % q);
                r /= q;
            }
            out.push(v);
        }
    }
    out
}

/// Every F_q-point of W exactly once, normalized.
pub fn enumerate_points<F: FiniteField>(ambient: &AmbientThreefold, field: &F) -> Vec<Point<F::Elem>> {
    match ambient.kind {
        AmbientKind::SegreP1Cubed => {
            let p1 = projective_space(field, 2);
            let mut out = Vec::with_capacity(p1.len().pow(3));
            for a in &p1 {
                for b in &p1 {
                    for c in &p1 {
                        out.push(Point::Multi([a.as_slice(), b, c].concat()));
                    }
                }
            }
            out
        }
        AmbientKind::FlagVariety => {
            let p2 = projective_space(field, 3);
            let mut out = Vec::new();
            for x in &p2 {
                for y in &p2 {
                    let dot = (0..3).fold(field.zero(), |acc, i| field.add(&acc, &field.mul(&x[i], &y[i])));
                    if field.is_zero(&dot) {
                        out.push(Point::Multi([x.as_slice(), y].concat()));
                    }
                }
            }
            out
        }
        AmbientKind::DelPezzoCone => {
            let zs = field.elements();
            let mut out = vec![Point::Cone(ConePoint::Vertex)];
            for x in projective_space(field, 3) {
                if x.iter().filter(|c| !field.is_zero(c)).count() == 1 {
                    continue;
                }
                for z in &zs {
                    out.push(Point::Cone(ConePoint::Plain { z: z.clone(), x: [x[0].clone(), x[1].clone(), x[2].clone()] }));
                }
            }
            for base in 0..3 {
                for d in projective_space(field, 2) {
                    for z in &zs {
                        out.push(Point::Cone(ConePoint::Exceptional { z: z.clone(), base, dir: [d[0].clone(), d[1].clone()] }));
                    }
                }
            }
            out
        }
    }
}

/// Points of W(F_q) fixed by g, by enumeration.
pub fn finite_fixed_locus<F: FiniteField>(
    ambient: &AmbientThreefold,
    action: &LinearizedGroupAction<F>,
    g: &GroupElement,
) -> Result<Vec<Point<F::Elem>>> {
    let field = action.field();
    let map = ambient.point_map(action, g)?;
    let coords = ambient.key_coordinates(field)?;
    let pts = enumerate_points(ambient, field);
    let fixed: Vec<Result<Option<Point<F::Elem>>>> = pts
        .into_par_iter()
        .map(|p| {
            let img = ambient.apply_point_map(field, &map, &p)?;
            let same = ambient.point_key(field, &coords, &img)? == ambient.point_key(field, &coords, &p)?;
            Ok(same.then_some(p))
        })
        .collect();
    fixed.into_iter().filter_map(|r| r.transpose()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, QuadraticExtension};

    #[test]
    fn point_counts() {
        let f = PrimeField::new(19).unwrap();
        assert_eq!(enumerate_points(&AmbientThreefold::segre(), &f).len(), 8000);
        assert_eq!(enumerate_points(&AmbientThreefold::flag(), &f).len(), 7620);
        let q = 19usize;
        assert_eq!(enumerate_points(&AmbientThreefold::cone(), &f).len(), 1 + q * (q * q + 4 * q + 1));
        let k = QuadraticExtension::new(f);
        assert_eq!(projective_space(&k, 2).len(), 362);
    }

    #[test]
    fn flag_count_matches_double_loop() {
        // incident (point, line) pairs: each line carries q+1 points
        let f = PrimeField::new(37).unwrap();
        let q = 37usize;
        let mut count = 0;
        for x in projective_space(&f, 3) {
            for y in projective_space(&f, 3) {
                if (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % 37 == 0 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, (q * q + q + 1) * (q + 1));
        assert_eq!(enumerate_points(&AmbientThreefold::flag(), &f).len(), count);
    }

    #[test]
    fn cone_keys_are_injective() {
        let f = PrimeField::new(19).unwrap();
        let cone = AmbientThreefold::cone();
        let coords = cone.key_coordinates(&f).unwrap();
        let pts = enumerate_points(&cone, &f);
        let keys: std::collections::HashSet<Vec<u64>> = pts.iter().map(|p| cone.point_key(&f, &coords, p).unwrap()).collect();
        assert_eq!(keys.len(), pts.len());
    }
}
