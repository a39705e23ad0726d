//! The three ambient threefolds: (P¹)³, the flag variety in P²×P²*, and the
//! cone over the sextic Del Pezzo surface (modelled on its parameter ring
//! x₀,x₁,x₂; z with z of weight 3).

mod fixed;
mod jacobian;
mod points;

pub use fixed::{exact_fixed_locus, FixedLocus};
pub use jacobian::{jacobian_screen, JacobianReport};
pub use points::{enumerate_points, finite_fixed_locus, ConePoint, Point, PointSet};
pub(crate) use points::PointMap;

use crate::error::{Error, Result};
use crate::polyring::{linalg, row_reduce, Monomial, Poly, PolyRing, RelationQuotient, SectionSpace, Substitution, VariableBlock};
use crate::scalars::{CyclotomicScalar, Field, Q9};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AmbientKind {
    SegreP1Cubed,
    FlagVariety,
    DelPezzoCone,
}

#[derive(Clone, Debug)]
pub struct AmbientThreefold {
    pub kind: AmbientKind,
    ring: PolyRing,
}

impl AmbientThreefold {
    pub fn segre() -> Self {
        let ring = PolyRing::new(vec![
            VariableBlock::new("x", &["x0", "x1"]),
            VariableBlock::new("y", &["y0", "y1"]),
            VariableBlock::new("z", &["z0", "z1"]),
        ])
        .expect("distinct names");
        Self { kind: AmbientKind::SegreP1Cubed, ring }
    }

    pub fn flag() -> Self {
        let ring = PolyRing::new(vec![VariableBlock::new("x", &["x0", "x1", "x2"]), VariableBlock::new("y", &["y0", "y1", "y2"])])
            .expect("distinct names");
        Self { kind: AmbientKind::FlagVariety, ring }
    }

    pub fn cone() -> Self {
        let ring = PolyRing::new(vec![VariableBlock::new("x", &["x0", "x1", "x2"]), VariableBlock::new("z", &["z"])])
            .expect("distinct names")
            .with_gradings(vec![vec![1, 1, 1, 3]]);
        Self { kind: AmbientKind::DelPezzoCone, ring }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Grading vector of degree-m sections.
    pub fn section_grading(&self, m: u32) -> Vec<u32> {
        match self.kind {
            AmbientKind::SegreP1Cubed => vec![m; 3],
            AmbientKind::FlagVariety => vec![m; 2],
            AmbientKind::DelPezzoCone => vec![3 * m],
        }
    }

    /// x₀y₀ + x₁y₁ + x₂y₂ (flag variety only).
    pub fn incidence<F: Field>(&self, field: &F) -> Option<Poly<F::Elem>> {
        (self.kind == AmbientKind::FlagVariety).then(|| {
            let mut p = Poly::zero(6);
            for i in 0..3 {
                p.add_term(field, Monomial((0..6).map(|v| u32::from(v == i || v == i + 3)).collect()), &field.one());
            }
            p
        })
    }

    fn check_degree(m: u32) -> Result<()> {
        if m > 4 {
            return Err(Error::UnsupportedDegree(m as i64));
        }
        Ok(())
    }

    /// H⁰(O_W(m)) as an explicit space of polynomials.
    pub fn section_space<F: Field>(&self, m: u32, field: &F) -> Result<SectionSpace<F::Elem>> {
        Self::check_degree(m)?;
        let tag = format!("H0(O_W({m}))");
        let monos = |g: &[u32]| -> Vec<Poly<F::Elem>> { self.ring.monomials_with_grading(g).into_iter().map(|mo| Poly::term(field, mo, field.one())).collect() };
        match self.kind {
            AmbientKind::SegreP1Cubed => row_reduce(&self.ring, field, &monos(&[m, m, m]), &tag),
            AmbientKind::FlagVariety => {
                let q = self.flag_quotient(m, field)?;
                let basis: Vec<_> = q.complement.iter().map(|mo| Poly::term(field, mo.clone(), field.one())).collect();
                let mut s = row_reduce(&self.ring, field, &basis, &tag)?;
                s.grading = vec![m, m];
                Ok(s)
            }
            AmbientKind::DelPezzoCone => {
                let mut all = Vec::new();
                for i in 0..=m {
                    let zpow = Poly::term(field, Monomial(vec![0, 0, 0, m - i]), field.one());
                    for f in self.sigma_sections(i, field)? {
                        all.push(f.mul(field, &zpow));
                    }
                }
                row_reduce(&self.ring, field, &all, &tag)
            }
        }
    }

    /// Relations of bidegree (m,m) on the flag variety.
    pub fn flag_quotient<F: Field>(&self, m: u32, field: &F) -> Result<RelationQuotient<F::Elem>> {
        let inc = self.incidence(field).ok_or_else(|| Error::Precondition("not the flag variety".into()))?;
        RelationQuotient::new(&self.ring, field, &[inc], &[m, m])
    }

    /// Reduction of a section to its canonical representative. The identity
    /// except on the flag variety, where it reduces modulo the incidence form.
    pub fn normal_form<F: Field>(&self, field: &F, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        match self.kind {
            AmbientKind::FlagVariety => {
                if f.is_zero() {
                    return Ok(f.clone());
                }
                let g = f.grading(&self.ring).ok_or_else(|| Error::DegreeMismatch("inhomogeneous section".into()))?;
                if g[0] != g[1] {
                    return Err(Error::DegreeMismatch(format!("bidegree ({},{}) is not diagonal", g[0], g[1])));
                }
                Ok(self.flag_quotient(g[0], field)?.normal_form(field, f))
            }
            _ => Ok(f.clone()),
        }
    }

    /// H⁰(O_Σ(i)): degree-3i forms in x vanishing to order at least i at the
    /// three coordinate points, as the kernel of derivative evaluations.
    pub fn sigma_sections<F: Field>(&self, i: u32, field: &F) -> Result<Vec<Poly<F::Elem>>> {
        let xring = PolyRing::new(vec![VariableBlock::new("x", &["x0", "x1", "x2"])])?;
        let forms = xring.monomials_with_grading(&[3 * i]);
        let mut rows = Vec::new();
        for k in 0..3 {
            let pt: Vec<F::Elem> = (0..3).map(|v| if v == k { field.one() } else { field.zero() }).collect();
            for order in 0..i {
                for beta in xring.monomials_with_grading(&[order]) {
                    let row = forms
                        .iter()
                        .map(|mo| {
                            let mut d = Poly::term(field, mo.clone(), field.one());
                            for (v, &e) in beta.0.iter().enumerate() {
                                for _ in 0..e {
                                    d = d.derivative(field, v);
                                }
                            }
                            d.evaluate(field, &pt)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
            }
        }
        let kernel = linalg::kernel(field, &rows, forms.len())?;
        Ok(kernel
            .into_iter()
            .map(|v| {
                let mut p = Poly::zero(4);
                for (mo, c) in forms.iter().zip(&v) {
                    let mut e = mo.0.clone();
                    e.push(0);
                    p.add_term(field, Monomial(e), c);
                }
                p
            })
            .collect())
    }

    /// Dimensions of H⁰(O_W(m)) for m = 0..=4.
    pub fn section_dimensions<F: Field>(&self, field: &F) -> Result<Vec<i64>> {
        (0..=4).map(|m| Ok(self.section_space(m, field)?.dim() as i64)).collect()
    }

    /// The seven degree-1 sections of the cone that come from Σ, in the order
    /// z₁₂, z₂₂, z₁₁, z₂₁, z₁₀, z₂₀, z₀₂.
    pub fn cone_sigma_coordinates(&self) -> Vec<Poly<CyclotomicScalar>> {
        assert_eq!(self.kind, AmbientKind::DelPezzoCone);
        let w = CyclotomicScalar::omega();
        let w2 = &w * &w;
        let one = CyclotomicScalar::one();
        // f(c0, c1, c2) = c0 x0²x1 + c1 x1²x2 + c2 x2²x0, and the reflected cycle
        let fwd = |c: [&CyclotomicScalar; 3]| {
            let mut p = Poly::zero(4);
            p.add_term(&Q9, Monomial(vec![2, 1, 0, 0]), c[0]);
            p.add_term(&Q9, Monomial(vec![0, 2, 1, 0]), c[1]);
            p.add_term(&Q9, Monomial(vec![1, 0, 2, 0]), c[2]);
            p
        };
        let bwd = |c: [&CyclotomicScalar; 3]| {
            let mut p = Poly::zero(4);
            p.add_term(&Q9, Monomial(vec![1, 2, 0, 0]), c[0]);
            p.add_term(&Q9, Monomial(vec![0, 1, 2, 0]), c[1]);
            p.add_term(&Q9, Monomial(vec![2, 0, 1, 0]), c[2]);
            p
        };
        vec![
            fwd([&one, &one, &one]),
            bwd([&one, &one, &one]),
            fwd([&one, &w, &w2]),
            bwd([&one, &w, &w2]),
            fwd([&one, &w2, &w]),
            bwd([&one, &w2, &w]),
            Poly::term(&Q9, Monomial(vec![1, 1, 1, 0]), one.clone()),
        ]
    }

    /// Degree m if f is a degree-m section.
    pub fn is_section(&self, f: &Poly<impl Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync>) -> Option<u32> {
        let g = f.grading(&self.ring)?;
        match self.kind {
            AmbientKind::SegreP1Cubed => (g[0] == g[1] && g[1] == g[2]).then_some(g[0]),
            AmbientKind::FlagVariety => (g[0] == g[1]).then_some(g[0]),
            AmbientKind::DelPezzoCone => (g[0] % 3 == 0).then_some(g[0] / 3),
        }
    }
}

/// A rational curve given by a substitution from the ambient ring into a
/// binary ring (s, t).
#[derive(Clone, Debug)]
pub struct ParametrizedCurve {
    pub name: String,
    pub ring: PolyRing,
    pub map: Substitution<CyclotomicScalar>,
    source_nvars: usize,
}

pub fn binary_ring(a: &str, b: &str) -> PolyRing {
    PolyRing::new(vec![VariableBlock::new("t", &[a, b])]).expect("two names")
}

impl ParametrizedCurve {
    pub fn new(name: &str, ambient: &AmbientThreefold, images: Vec<Poly<CyclotomicScalar>>) -> Result<Self> {
        let ring = binary_ring("s", "t");
        let map = Substitution::new(ambient.ring(), &ring, images.into_iter().map(Some).collect())?;
        let curve = Self { name: name.to_string(), ring, map, source_nvars: ambient.ring().nvars() };
        if let Some(inc) = ambient.incidence(&Q9) {
            if !inc.substitute(&Q9, &curve.map)?.is_zero() {
                return Err(Error::Precondition(format!("{name} does not lie on the flag variety")));
            }
        }
        Ok(curve)
    }
}

/// f restricted to a curve, as a binary form.
pub fn restrict_to_curve(f: &Poly<CyclotomicScalar>, curve: &ParametrizedCurve) -> Result<Poly<CyclotomicScalar>> {
    if f.nvars() != curve.source_nvars {
        return Err(Error::DegreeMismatch(format!("{} is not a curve in this ambient", curve.name)));
    }
    f.substitute(&Q9, &curve.map)
}

/// The six lines of (P¹)³ where two affine coordinates are both 0 or both ∞,
/// named L1..L6.
pub fn segre_lines(ambient: &AmbientThreefold) -> Vec<ParametrizedCurve> {
    let s = |c: i64, v: usize| Poly::term(&Q9, Monomial::var(2, v), CyclotomicScalar::from_int(c));
    let c1 = || Poly::constant(&Q9, CyclotomicScalar::one(), 2);
    let zero_pt = || [c1(), Poly::zero(2)];
    let inf_pt = || [Poly::zero(2), c1()];
    let free = || [s(1, 0), s(1, 1)];
    // (fixed-block pair, value): L1 = {x=y=0}, L2 = {x=z=0}, L3 = {y=z=0}, then ∞
    let specs = [([0usize, 1], false), ([0, 2], false), ([1, 2], false), ([0, 1], true), ([0, 2], true), ([1, 2], true)];
    specs
        .iter()
        .enumerate()
        .map(|(n, (blocks, inf))| {
            let mut images = Vec::new();
            for b in 0..3 {
                let pair = if blocks.contains(&b) {
                    if *inf {
                        inf_pt()
                    } else {
                        zero_pt()
                    }
                } else {
                    free()
                };
                images.extend(pair);
            }
            ParametrizedCurve::new(&format!("L{}", n + 1), ambient, images).expect("lines are homogeneous")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{hilbert_degree, parse_poly};
    use crate::scalars::PrimeField;

    #[test]
    fn section_space_dimensions() {
        let f = PrimeField::new(19).unwrap();
        assert_eq!(AmbientThreefold::segre().section_space(3, &f).unwrap().dim(), 64);
        assert_eq!(AmbientThreefold::flag().section_space(3, &f).unwrap().dim(), 64);
        let cone = AmbientThreefold::cone();
        assert_eq!(cone.section_space(1, &f).unwrap().dim(), 8);
        let dims: Vec<usize> = (0..5).map(|i| cone.sigma_sections(i, &f).unwrap().len()).collect();
        assert_eq!(dims, vec![1, 7, 19, 37, 61]);
        for a in [AmbientThreefold::segre(), AmbientThreefold::flag(), cone] {
            let d = a.section_dimensions(&f).unwrap();
            assert_eq!(d, vec![1, 8, 27, 64, 125]);
            assert_eq!(hilbert_degree(&d).unwrap(), 6);
        }
        assert!(matches!(AmbientThreefold::segre().section_space(5, &f), Err(Error::UnsupportedDegree(5))));
    }

    #[test]
    fn sigma_sections_are_monomial() {
        // vanishing to order i at all coordinate points is a monomial condition
        let cone = AmbientThreefold::cone();
        for i in 1..4 {
            let span = row_reduce(cone.ring(), &Q9, &cone.sigma_sections(i, &Q9).unwrap(), "k").unwrap();
            let expect: Vec<Poly<CyclotomicScalar>> = cone
                .ring()
                .monomials_with_grading(&[3 * i])
                .into_iter()
                .filter(|m| m.0[3] == 0 && m.0[..3].iter().all(|&e| e <= 2 * i))
                .map(|m| Poly::term(&Q9, m, CyclotomicScalar::one()))
                .collect();
            let mono = row_reduce(cone.ring(), &Q9, &expect, "m").unwrap();
            assert!(span.same_span(&Q9, &mono), "i = {i}");
        }
        let base = row_reduce(cone.ring(), &Q9, &cone.sigma_sections(1, &Q9).unwrap(), "T").unwrap();
        for c in cone.cone_sigma_coordinates() {
            assert!(base.contains(&Q9, &c));
        }
        assert_eq!(row_reduce(cone.ring(), &Q9, &cone.cone_sigma_coordinates(), "z").unwrap().dim(), 7);
    }

    #[test]
    fn flag_normal_forms() {
        let w = AmbientThreefold::flag();
        let inc = w.incidence(&Q9).unwrap();
        assert!(w.normal_form(&Q9, &inc).unwrap().is_zero());
        let x0y1 = parse_poly(w.ring(), "(1) * x0*y1").unwrap();
        assert!(w.normal_form(&Q9, &inc.mul(&Q9, &x0y1)).unwrap().is_zero());
        assert_eq!(w.normal_form(&Q9, &x0y1).unwrap(), x0y1);
        let bad = parse_poly(w.ring(), "(1) * x0^2*y1").unwrap();
        assert!(matches!(w.normal_form(&Q9, &bad), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn line_restrictions() {
        let a = AmbientThreefold::segre();
        let lines = segre_lines(&a);
        let one = parse_poly(a.ring(), "(1) * x0^3*y0^3*z0^3").unwrap();
        let r = restrict_to_curve(&one, &lines[0]).unwrap();
        assert_eq!(r, parse_poly(&lines[0].ring, "(1) * s^3").unwrap());
        // x³+y³+z³ homogenized restricts on {x=y=0} to t³ s⁰ after rescaling
        let cubes = parse_poly(a.ring(), "(1) * x1^3*y0^3*z0^3 + (1) * x0^3*y1^3*z0^3 + (1) * x0^3*y0^3*z1^3").unwrap();
        assert_eq!(restrict_to_curve(&cubes, &lines[0]).unwrap(), parse_poly(&lines[0].ring, "(1) * t^3").unwrap());
    }

    #[test]
    fn strict_transform_of_a_coordinate_line() {
        // on x0 = 0 every Σ-coordinate is divisible by x1*x2; the quotient is
        // the linear embedding of the line
        let cone = AmbientThreefold::cone();
        let r = binary_ring("s", "t");
        let x1 = Poly::var(&Q9, 2, 0);
        let x2 = Poly::var(&Q9, 2, 1);
        let rule =
            Substitution::new(cone.ring(), &r, vec![Some(Poly::zero(2)), Some(x1.clone()), Some(x2.clone()), None]).unwrap();
        let w = CyclotomicScalar::omega();
        let w2 = &w * &w;
        let expect = [
            x1.clone(),
            x2.clone(),
            x1.scale(&Q9, &w),
            x2.scale(&Q9, &w),
            x1.scale(&Q9, &w2),
            x2.scale(&Q9, &w2),
            Poly::zero(2),
        ];
        let x1x2 = x1.mul(&Q9, &x2);
        for (c, e) in cone.cone_sigma_coordinates().iter().zip(&expect) {
            assert_eq!(c.substitute(&Q9, &rule).unwrap(), e.mul(&Q9, &x1x2));
        }
    }
}
