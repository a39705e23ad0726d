//! Singular F_q-points of {f = 0} ∩ W via affine charts. Each chart is a
//! copy of A³ with local equation F(u₁,u₂,u₃); a point is singular when F
//! and its three partials vanish. Per fiber (u₁,u₂) this is a common root of
//! four univariate polynomials in u₃, found through their gcd.

use super::points::others;
use super::{AmbientKind, AmbientThreefold, ConePoint, Point};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, Substitution};
use crate::scalars::{Field, FiniteField};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianReport {
    pub field: String,
    pub charts: usize,
    /// Normalized coordinates of every singular point found.
    pub singular_points: Vec<Vec<String>>,
}

impl JacobianReport {
    pub fn is_clean(&self) -> bool {
        self.singular_points.is_empty()
    }
}

struct Chart<E> {
    equation: Poly<E>,
    skip_origin_fiber: bool,
    /// Chart coordinates to a point of W.
    to_point: Box<dyn Fn(&[E; 3]) -> Point<E> + Sync>,
}

fn charts<F: Field + 'static>(ambient: &AmbientThreefold, field: &F, f: &Poly<F::Elem>) -> Result<Vec<Chart<F::Elem>>>
where
    F::Elem: 'static,
{
    let u = |v: usize| Poly::var(field, 3, v);
    let one = Poly::constant(field, field.one(), 3);
    let mut out = Vec::new();
    match ambient.kind {
        AmbientKind::SegreP1Cubed => {
            for mask in 0..8u32 {
                let mut images = Vec::new();
                for b in 0..3 {
                    if mask >> b & 1 == 0 {
                        images.extend([one.clone(), u(b)]);
                    } else {
                        images.extend([u(b), one.clone()]);
                    }
                }
                let rule = Substitution::affine(ambient.ring(), 3, images)?;
                let fd = field.clone();
                out.push(Chart {
                    equation: f.substitute(field, &rule)?,
                    skip_origin_fiber: false,
                    to_point: Box::new(move |c: &[F::Elem; 3]| {
                        let mut v = Vec::new();
                        for (b, cb) in c.iter().enumerate() {
                            if mask >> b & 1 == 0 {
                                v.extend([fd.one(), cb.clone()]);
                            } else {
                                v.extend([cb.clone(), fd.one()]);
                            }
                        }
                        Point::Multi(v)
                    }),
                });
            }
        }
        AmbientKind::FlagVariety => {
            for k in 0..3 {
                for l in (0..3).filter(|&l| l != k) {
                    let r = 3 - k - l;
                    // x_k = 1, x_l = u1, x_r = u2, y_l = 1, y_r = u3, y_k = -(u1 + u2 u3)
                    let mut images = vec![Poly::zero(3); 6];
                    images[k] = one.clone();
                    images[l] = u(0);
                    images[r] = u(1);
                    images[3 + l] = one.clone();
                    images[3 + r] = u(2);
                    images[3 + k] = u(0).add(field, &u(1).mul(field, &u(2))).neg(field);
                    let rule = Substitution::affine(ambient.ring(), 3, images)?;
                    let fd = field.clone();
                    out.push(Chart {
                        equation: f.substitute(field, &rule)?,
                        skip_origin_fiber: false,
                        to_point: Box::new(move |c: &[F::Elem; 3]| {
                            let mut v = vec![fd.zero(); 6];
                            v[k] = fd.one();
                            v[l] = c[0].clone();
                            v[r] = c[1].clone();
                            v[3 + l] = fd.one();
                            v[3 + r] = c[2].clone();
                            v[3 + k] = fd.neg(&fd.add(&c[0], &fd.mul(&c[1], &c[2])));
                            Point::Multi(v)
                        }),
                    });
                }
            }
        }
        AmbientKind::DelPezzoCone => {
            for j in 0..3 {
                let [a, b] = others(j);
                let mut images = vec![Poly::zero(3); 4];
                images[j] = one.clone();
                images[a] = u(0);
                images[b] = u(1);
                images[3] = u(2);
                let rule = Substitution::affine(ambient.ring(), 3, images)?;
                let fd = field.clone();
                out.push(Chart {
                    equation: f.substitute(field, &rule)?,
                    skip_origin_fiber: true,
                    to_point: Box::new(move |c: &[F::Elem; 3]| {
                        let mut x = [fd.zero(), fd.zero(), fd.zero()];
                        x[j] = fd.one();
                        x[a] = c[0].clone();
                        x[b] = c[1].clone();
                        Point::Cone(ConePoint::Plain { z: c[2].clone(), x })
                    }),
                });
            }
            // blowup of e_k: x_k = 1, x_a = t, x_b = t s; a term z^e x^α of a
            // degree-m section becomes t^(α_a+α_b-i) s^(α_b) z^e
            for k in 0..3 {
                let [p, q] = others(k);
                for (a, b) in [(p, q), (q, p)] {
                    let mut eq = Poly::zero(3);
                    for (m, c) in f.terms() {
                        let xdeg: u32 = m.0[..3].iter().sum();
                        let i = xdeg / 3;
                        if !xdeg.is_multiple_of(3) || m.0[a] + m.0[b] < i {
                            return Err(Error::Precondition("not a section of the cone".into()));
                        }
                        eq.add_term(field, Monomial(vec![m.0[a] + m.0[b] - i, m.0[b], m.0[3]]), c);
                    }
                    let fd = field.clone();
                    out.push(Chart {
                        equation: eq,
                        skip_origin_fiber: false,
                        to_point: Box::new(move |c: &[F::Elem; 3]| {
                            let (t, s, z) = (&c[0], &c[1], &c[2]);
                            if fd.is_zero(t) {
                                let mut dir = [fd.zero(), fd.zero()];
                                let off = others(k);
                                dir[off.iter().position(|&o| o == a).unwrap()] = fd.one();
                                dir[off.iter().position(|&o| o == b).unwrap()] = s.clone();
                                Point::Cone(ConePoint::Exceptional { z: z.clone(), base: k, dir })
                            } else {
                                let mut x = [fd.zero(), fd.zero(), fd.zero()];
                                x[k] = fd.one();
                                x[a] = t.clone();
                                x[b] = fd.mul(t, s);
                                Point::Cone(ConePoint::Plain { z: fd.mul(z, t), x })
                            }
                        }),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Univariate polynomial, coefficients from degree 0 upward, trimmed.
fn trim<F: Field>(field: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
    p
}

fn poly_rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let mut r = a.to_vec();
    let lead_inv = field.inv(b.last().expect("nonzero divisor"))?;
    while r.len() >= b.len() {
        let c = field.mul(r.last().unwrap(), &lead_inv);
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = field.sub(&r[shift + i], &field.mul(&c, bc));
        }
        r = trim(field, r);
    }
    Ok(r)
}

fn poly_gcd<F: Field>(field: &F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> Result<Vec<F::Elem>> {
    let (mut a, mut b) = (trim(field, a), trim(field, b));
    while !b.is_empty() {
        let r = poly_rem(field, &a, &b)?;
        a = b;
        b = r;
    }
    Ok(a)
}

fn horner<F: Field>(field: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// F as Σ_k F_k(u1,u2) u3^k, each F_k a list of (exponents, coefficient).
type Sliced<E> = Vec<Vec<((u32, u32), E)>>;

fn slice_by_u3<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync>(p: &Poly<E>) -> Sliced<E> {
    let deg = p.max_exponent(2) as usize;
    let mut out: Sliced<E> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        out[m.0[2] as usize].push(((m.0[0], m.0[1]), c.clone()));
    }
    out
}

fn eval_slices<F: Field>(field: &F, s: &Sliced<F::Elem>, p1: &[F::Elem], p2: &[F::Elem]) -> Vec<F::Elem> {
    s.iter().map(|terms| terms.iter().fold(field.zero(), |acc, ((a, b), c)| field.add(&acc, &field.mul(c, &field.mul(&p1[*a as usize], &p2[*b as usize]))))).collect()
}

fn power_table<F: Field>(field: &F, x: &F::Elem, n: usize) -> Vec<F::Elem> {
    let mut v = vec![field.one()];
    for i in 1..=n {
        let next = field.mul(&v[i - 1], x);
        v.push(next);
    }
    v
}

/// Scans every affine chart of W for singular points of {f = 0}.
pub fn jacobian_screen<F: FiniteField + 'static>(ambient: &AmbientThreefold, field: &F, f: &Poly<F::Elem>) -> Result<JacobianReport>
where
    F::Elem: 'static,
{
    if f.is_zero() {
        return Err(Error::Precondition("the zero section does not cut a surface".into()));
    }
    if ambient.is_section(f).is_none() {
        return Err(Error::DegreeMismatch("not a section of W".into()));
    }
    let chart_list = charts(ambient, field, f)?;
    let coords = ambient.key_coordinates(field)?;
    let elems = field.elements();
    let mut found: BTreeSet<Vec<String>> = BTreeSet::new();
    if ambient.kind == AmbientKind::DelPezzoCone && field.is_zero(&ambient.evaluate(field, f, &Point::Cone(ConePoint::Vertex))?) {
        found.insert(vec!["vertex".into()]);
    }
    for chart in &chart_list {
        let eq = &chart.equation;
        let maxdeg = (0..2).map(|v| eq.max_exponent(v)).max().unwrap_or(0) as usize;
        let s0 = slice_by_u3(eq);
        let s1 = slice_by_u3(&eq.derivative(field, 0));
        let s2 = slice_by_u3(&eq.derivative(field, 1));
        let hits: Vec<[F::Elem; 3]> = elems
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i1, a)| {
                let pa = power_table(field, a, maxdeg);
                let mut local = Vec::new();
                for (i2, b) in elems.iter().enumerate() {
                    if chart.skip_origin_fiber && i1 == 0 && i2 == 0 {
                        continue;
                    }
                    let pb = power_table(field, b, maxdeg);
                    let h = eval_slices(field, &s0, &pa, &pb);
                    let dh: Vec<F::Elem> = h.iter().enumerate().skip(1).map(|(k, c)| field.mul(c, &field.from_i64(k as i64))).collect();
                    let g = [dh, eval_slices(field, &s1, &pa, &pb), eval_slices(field, &s2, &pa, &pb)]
                        .into_iter()
                        .try_fold(h, |acc, p| poly_gcd(field, acc, p))
                        .expect("gcd over a field");
                    if g.len() == 1 {
                        continue;
                    }
                    for c in &elems {
                        if g.is_empty() || field.is_zero(&horner(field, &g, c)) {
                            local.push([a.clone(), b.clone(), c.clone()]);
                        }
                    }
                }
                local
            })
            .collect();
        for c in hits {
            let p = ambient.normalize(field, (chart.to_point)(&c))?;
            let key = ambient.point_key(field, &coords, &p)?;
            found.insert(key.iter().map(|e| field.render(e)).collect());
        }
    }
    Ok(JacobianReport { field: field.name(), charts: chart_list.len(), singular_points: found.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::enumerate_points;
    use crate::polyring::parse_poly;
    use crate::scalars::PrimeField;

    /// Oracle: a point of V ⊂ (P¹)³ is singular iff all six homogeneous
    /// partials vanish there.
    fn brute_singular(a: &AmbientThreefold, f: &PrimeField, p: &Poly<u64>) -> usize {
        let partials: Vec<Poly<u64>> = (0..6).map(|v| p.derivative(f, v)).collect();
        enumerate_points(a, f)
            .iter()
            .filter(|pt| {
                let Point::Multi(v) = pt else { return false };
                p.evaluate(f, v).unwrap() == 0 && partials.iter().all(|d| d.evaluate(f, v).unwrap() == 0)
            })
            .count()
    }

    #[test]
    fn fermat_member_matches_oracle() {
        let a = AmbientThreefold::segre();
        let f = PrimeField::new(19).unwrap();
        let text = "(1) * x1^3*y0^3*z0^3 + (1) * x0^3*y1^3*z0^3 + (1) * x0^3*y0^3*z1^3 + (5) * x0^3*y0^3*z0^3";
        let p = parse_poly(a.ring(), text).unwrap().map_coeffs(&f, |c| f.from_cyclotomic(c)).unwrap();
        let rep = jacobian_screen(&a, &f, &p).unwrap();
        assert_eq!(rep.charts, 8);
        assert_eq!(rep.singular_points.len(), brute_singular(&a, &f, &p));
        // the homogenized Fermat member is singular only at infinity
        assert!(rep.singular_points.iter().all(|p| !(p[0] == "1" && p[2] == "1" && p[4] == "1")));
        // x³ + y³ : singular along the whole curve x³ = -y³ times the z-line
        let bad = parse_poly(a.ring(), "(1) * x1^3*y0^3*z0^3 + (1) * x0^3*y1^3*z0^3").unwrap().map_coeffs(&f, |c| f.from_cyclotomic(c)).unwrap();
        let rep = jacobian_screen(&a, &f, &bad).unwrap();
        assert_eq!(rep.singular_points.len(), brute_singular(&a, &f, &bad));
        assert!(!rep.is_clean());
        assert!(jacobian_screen(&a, &f, &Poly::zero(6)).is_err());
    }
}
