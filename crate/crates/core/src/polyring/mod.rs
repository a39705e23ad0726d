//! Multigraded polynomials over any [`Field`], coordinate substitution,
//! evaluation and exact linear algebra on lists of sections.

mod format;
pub mod linalg;
mod space;

pub use format::{parse_monomial, parse_poly};
pub use space::{hilbert_degree, row_reduce, subspace_membership, RelationQuotient, SectionSpace};

use crate::error::{Error, Result};
use crate::scalars::{CyclotomicScalar, Field};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// A named group of variables, e.g. the homogeneous coordinates of one
/// projective factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableBlock {
    pub name: String,
    pub vars: Vec<String>,
}

impl VariableBlock {
    pub fn new(name: &str, vars: &[&str]) -> Self {
        Self { name: name.to_string(), vars: vars.iter().map(|v| v.to_string()).collect() }
    }
}

/// Variable layout plus the gradings used for homogeneity checks.
///
/// By default there is one grading per block (the block degree). A ring can
/// instead declare explicit weight vectors, as the cone model does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    blocks: Vec<VariableBlock>,
    names: Vec<String>,
    block_of: Vec<usize>,
    gradings: Vec<Vec<u32>>,
}

impl PolyRing {
    pub fn new(blocks: Vec<VariableBlock>) -> Result<Self> {
        let mut names = Vec::new();
        let mut block_of = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            for v in &block.vars {
                if names.contains(v) {
                    return Err(Error::Precondition(format!("variable `{v}` declared twice")));
                }
                names.push(v.clone());
                block_of.push(b);
            }
        }
        let gradings = (0..blocks.len())
            .map(|b| block_of.iter().map(|&ob| u32::from(ob == b)).collect())
            .collect();
        Ok(Self { blocks, names, block_of, gradings })
    }

    /// Replaces the per-block gradings by explicit weight vectors.
    pub fn with_gradings(mut self, gradings: Vec<Vec<u32>>) -> Self {
        assert!(gradings.iter().all(|g| g.len() == self.names.len()));
        self.gradings = gradings;
        self
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn blocks(&self) -> &[VariableBlock] {
        &self.blocks
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn block_of(&self, var: usize) -> usize {
        self.block_of[var]
    }

    /// Variable indices of block `b`, in declaration order.
    pub fn block_vars(&self, b: usize) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.block_of[v] == b).collect()
    }

    pub fn block_degree(&self, m: &Monomial, b: usize) -> u32 {
        m.0.iter().zip(&self.block_of).filter(|(_, &ob)| ob == b).map(|(e, _)| *e).sum()
    }

    pub fn grading(&self, m: &Monomial) -> Vec<u32> {
        self.gradings.iter().map(|w| w.iter().zip(&m.0).map(|(a, b)| a * b).sum()).collect()
    }

    /// Graded lexicographic within each block, blocks in declaration order;
    /// `Less` means "comes first".
    pub fn canonical_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for blk in 0..self.blocks.len() {
            let (da, db) = (self.block_degree(a, blk), self.block_degree(b, blk));
            if da != db {
                return db.cmp(&da);
            }
            for v in self.block_vars(blk) {
                if a.0[v] != b.0[v] {
                    return b.0[v].cmp(&a.0[v]);
                }
            }
        }
        Ordering::Equal
    }

    /// All monomials with the given grading vector, in canonical order.
    pub fn monomials_with_grading(&self, target: &[u32]) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        self.enumerate(0, target, &mut vec![0; target.len()], &mut exps, &mut out);
        out.sort_by(|a, b| self.canonical_cmp(a, b));
        out
    }

    fn enumerate(&self, v: usize, target: &[u32], acc: &mut Vec<u32>, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v == self.nvars() {
            if acc.as_slice() == target {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let mut e = 0u32;
        loop {
            let fits = self.gradings.iter().zip(acc.iter()).zip(target).all(|((w, a), t)| a + w[v] * e <= *t);
            if !fits {
                break;
            }
            for (a, w) in acc.iter_mut().zip(&self.gradings) {
                *a += w[v] * e;
            }
            exps[v] = e;
            self.enumerate(v + 1, target, acc, exps, out);
            for (a, w) in acc.iter_mut().zip(&self.gradings) {
                *a -= w[v] * e;
            }
            if self.gradings.iter().all(|w| w[v] == 0) {
                break;
            }
            e += 1;
        }
        exps[v] = 0;
    }
}

/// Exponent vector over the ring's variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Self(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// Polynomial with coefficients in a field's element type. No zero
/// coefficients are ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

pub type CycPoly = Poly<CyclotomicScalar>;

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// Terms in the ring's canonical order.
    pub fn sorted_terms(&self, ring: &PolyRing) -> Vec<(&Monomial, &E)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| ring.canonical_cmp(a.0, b.0));
        t
    }

    pub fn leading_monomial(&self, ring: &PolyRing) -> Option<&Monomial> {
        self.terms.keys().min_by(|a, b| ring.canonical_cmp(a, b))
    }

    /// Grading vector, if the polynomial is nonzero and homogeneous.
    pub fn grading(&self, ring: &PolyRing) -> Option<Vec<u32>> {
        let mut it = self.terms.keys().map(|m| ring.grading(m));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn max_exponent(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync> Poly<E> {
    pub fn term<F: Field<Elem = E>>(field: &F, m: Monomial, c: E) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(nvars);
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E, nvars: usize) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn var<F: Field<Elem = E>>(field: &F, nvars: usize, v: usize) -> Self {
        Self::term(field, Monomial::var(nvars, v), field.one())
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, m: Monomial, c: &E) {
        if field.is_zero(c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = field.add(o.get(), c);
                if field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c);
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), &field.neg(c));
        }
        out
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        if field.is_zero(s) {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), field.mul(c, s))).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(field, ma.mul(mb), &field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: u32) -> Self {
        let mut acc = Self::constant(field, field.one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    pub fn map_coeffs<F2: Field>(&self, target: &F2, mut f: impl FnMut(&E) -> Result<F2::Elem>) -> Result<Poly<F2::Elem>> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(target, m.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in a ring with more variables; `embedding[v]`
    /// is the index of old variable v in the new ring.
    pub fn embed(&self, new_nvars: usize, embedding: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; new_nvars];
                for (v, &x) in m.0.iter().enumerate() {
                    e[embedding[v]] += x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Self { nvars: new_nvars, terms }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] == 0 {
                continue;
            }
            let mut e = m.clone();
            e.0[v] -= 1;
            out.add_term(field, e, &field.mul(c, &field.from_i64(m.0[v] as i64)));
        }
        out
    }

    /// Ring homomorphism sending variable v to `rule.image(v)`.
    pub fn substitute<F: Field<Elem = E>>(&self, field: &F, rule: &Substitution<E>) -> Result<Self> {
        let mut powers: Vec<Vec<Self>> = vec![Vec::new(); self.nvars];
        for v in 0..self.nvars {
            let maxe = self.max_exponent(v);
            if maxe == 0 {
                continue;
            }
            let img = rule.images.get(v).and_then(|i| i.as_ref()).ok_or_else(|| Error::MissingVariable(rule.name(v)))?;
            let mut pw = vec![Self::constant(field, field.one(), rule.target_nvars)];
            for k in 1..=maxe as usize {
                let next = pw[k - 1].mul(field, img);
                pw.push(next);
            }
            powers[v] = pw;
        }
        let mut out = Self::zero(rule.target_nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(field, c.clone(), rule.target_nvars);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(field, &powers[v][e as usize]);
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(field, tm, &tc);
            }
        }
        Ok(out)
    }

    /// Value at a point given as one scalar per variable.
    pub fn evaluate<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> Result<E> {
        if point.len() < self.nvars {
            return Err(Error::MissingAssignment(format!("#{}", point.len())));
        }
        let mut acc = field.zero();
        let mut cache: Vec<Vec<E>> = vec![Vec::new(); self.nvars];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[v];
                if pw.is_empty() {
                    pw.push(field.one());
                }
                while pw.len() <= e as usize {
                    let next = field.mul(pw.last().unwrap(), &point[v]);
                    pw.push(next);
                }
                t = field.mul(&t, &pw[e as usize]);
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluation with named assignments.
    pub fn evaluate_named<F: Field<Elem = E>>(&self, field: &F, ring: &PolyRing, point: &[(&str, E)]) -> Result<E> {
        let mut vals = Vec::with_capacity(ring.nvars());
        for v in 0..ring.nvars() {
            let name = ring.var_name(v);
            match point.iter().find(|(n, _)| *n == name) {
                Some((_, x)) => vals.push(x.clone()),
                None if !self.uses_var(v) => vals.push(field.zero()),
                None => return Err(Error::MissingAssignment(name.to_string())),
            }
        }
        self.evaluate(field, &vals)
    }
}

/// Images of the source ring's variables as polynomials in a target ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution<E> {
    images: Vec<Option<Poly<E>>>,
    target_nvars: usize,
    names: Vec<String>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync> Substitution<E> {
    /// Builds a rule and checks that the images of each source block are
    /// homogeneous with a common grading in the target ring.
    pub fn new(source: &PolyRing, target: &PolyRing, images: Vec<Option<Poly<E>>>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::MissingVariable(format!("rule has {} images for {} variables", images.len(), source.nvars())));
        }
        for b in 0..source.blocks().len() {
            let mut seen: Option<Vec<u32>> = None;
            for v in source.block_vars(b) {
                let Some(img) = &images[v] else { continue };
                if img.nvars() != target.nvars() {
                    return Err(Error::InhomogeneousRule(format!("image of {} lives in the wrong ring", source.var_name(v))));
                }
                if img.is_zero() {
                    continue;
                }
                let g = img.grading(target).ok_or_else(|| Error::InhomogeneousRule(format!("image of {} is not homogeneous", source.var_name(v))))?;
                match &seen {
                    None => seen = Some(g),
                    Some(s) if *s != g => {
                        return Err(Error::InhomogeneousRule(format!("block {} maps to mixed gradings", source.blocks()[b].name)))
                    }
                    _ => {}
                }
            }
        }
        let names = (0..source.nvars()).map(|v| source.var_name(v).to_string()).collect();
        Ok(Self { images, target_nvars: target.nvars(), names })
    }

    /// A rule with no homogeneity requirement, e.g. a dehomogenization onto
    /// an affine chart.
    pub fn affine(source: &PolyRing, target_nvars: usize, images: Vec<Poly<E>>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::MissingVariable(format!("rule has {} images for {} variables", images.len(), source.nvars())));
        }
        let names = (0..source.nvars()).map(|v| source.var_name(v).to_string()).collect();
        Ok(Self { images: images.into_iter().map(Some).collect(), target_nvars, names })
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, ring: &PolyRing) -> Self {
        let n = ring.nvars();
        Self::new(ring, ring, (0..n).map(|v| Some(Poly::var(field, n, v))).collect()).expect("identity rule is homogeneous")
    }

    pub fn image(&self, v: usize) -> Option<&Poly<E>> {
        self.images.get(v).and_then(|i| i.as_ref())
    }

    pub fn target_nvars(&self) -> usize {
        self.target_nvars
    }

    fn name(&self, v: usize) -> String {
        self.names.get(v).cloned().unwrap_or_else(|| format!("#{v}"))
    }

    /// The rule "apply self, then other" as a single substitution:
    /// f.substitute(self).substitute(other) == f.substitute(self.then(other)).
    pub fn then<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        let images = self.images.iter().map(|i| i.as_ref().map(|p| p.substitute(field, other)).transpose()).collect::<Result<Vec<_>>>()?;
        Ok(Self { images, target_nvars: other.target_nvars, names: self.names.clone() })
    }

    pub fn map_coeffs<F2: Field>(&self, target: &F2, mut f: impl FnMut(&E) -> Result<F2::Elem>) -> Result<Substitution<F2::Elem>> {
        let images = self.images.iter().map(|i| i.as_ref().map(|p| p.map_coeffs(target, &mut f)).transpose()).collect::<Result<Vec<_>>>()?;
        Ok(Substitution { images, target_nvars: self.target_nvars, names: self.names.clone() })
    }

    /// Applies the rule to a point: the v-th output coordinate is image(v)
    /// evaluated at `point`.
    pub fn apply_to_point<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> Result<Vec<E>> {
        self.images
            .iter()
            .enumerate()
            .map(|(v, i)| i.as_ref().ok_or_else(|| Error::MissingVariable(self.name(v)))?.evaluate(field, point))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{CyclotomicScalar as C, Q9};

    fn xyz() -> PolyRing {
        PolyRing::new(vec![VariableBlock::new("a", &["x", "y", "z"])]).unwrap()
    }

    #[test]
    fn affine_invariant_under_cyclic_rule() {
        let r = xyz();
        let f = parse_poly(&r, "(1) * x^2*y + (1) * y^2*z + (1*z^3) * x*z^2").unwrap();
        let rule = Substitution::new(
            &r,
            &r,
            vec![Some(Poly::var(&Q9, 3, 1)), Some(Poly::var(&Q9, 3, 2)), Some(Poly::var(&Q9, 3, 0).scale(&Q9, &C::omega()))],
        )
        .unwrap();
        assert_eq!(f.substitute(&Q9, &rule).unwrap(), f);
        let g = parse_poly(&r, "(1) * z + (1*z) * y + (1*z^2) * x").unwrap();
        assert_eq!(g.substitute(&Q9, &rule).unwrap(), g.scale(&Q9, &C::zeta()));
        let id = Substitution::identity(&Q9, &r);
        assert_eq!(g.substitute(&Q9, &id).unwrap(), g);
    }

    #[test]
    fn substitution_errors() {
        let r = xyz();
        let x = Poly::var(&Q9, 3, 0);
        let rule = Substitution::new(&r, &r, vec![Some(x.clone()), None, None]).unwrap();
        let y = Poly::var(&Q9, 3, 1);
        assert!(matches!(y.substitute(&Q9, &rule), Err(Error::MissingVariable(_))));
        let xx = x.mul(&Q9, &x);
        assert!(matches!(Substitution::new(&r, &r, vec![Some(x.clone()), Some(xx), None]), Err(Error::InhomogeneousRule(_))));
        let inh = x.add(&Q9, &Poly::constant(&Q9, C::one(), 3));
        assert!(matches!(Substitution::new(&r, &r, vec![Some(inh), None, None]), Err(Error::InhomogeneousRule(_))));
    }

    #[test]
    fn evaluation_examples() {
        let r = PolyRing::new(vec![VariableBlock::new("x", &["x0", "x1", "x2"]), VariableBlock::new("y", &["y0", "y1", "y2"])]).unwrap();
        let flag = parse_poly(&r, "(1) * x0*y0 + (1) * x1*y1 + (1) * x2*y2").unwrap();
        let pt: Vec<C> = [1, 0, 0, 0, 1, 0].iter().map(|&v| C::from_int(v)).collect();
        assert!(flag.evaluate(&Q9, &pt).unwrap().is_zero());
        assert_eq!(Poly::constant(&Q9, C::one(), 6).evaluate(&Q9, &pt).unwrap(), C::one());
        let s = xyz();
        let cubes = parse_poly(&s, "(1) * x^3 + (1) * y^3 + (1) * z^3").unwrap();
        let w = C::omega();
        let val = cubes.evaluate_named(&Q9, &s, &[("x", C::one()), ("y", w.clone()), ("z", &w * &w)]).unwrap();
        assert_eq!(val, C::from_int(3));
        assert!(matches!(cubes.evaluate_named(&Q9, &s, &[("x", C::one())]), Err(Error::MissingAssignment(_))));
    }

    #[test]
    fn grading_enumeration_counts() {
        let r = PolyRing::new(vec![VariableBlock::new("x", &["x0", "x1", "x2"]), VariableBlock::new("y", &["y0", "y1", "y2"])]).unwrap();
        assert_eq!(r.monomials_with_grading(&[3, 3]).len(), 100);
        let cone = PolyRing::new(vec![VariableBlock::new("z", &["z"]), VariableBlock::new("x", &["x0", "x1", "x2"])])
            .unwrap()
            .with_gradings(vec![vec![3, 1, 1, 1]]);
        // z^3, z^2 * cubics, z * sextics, nonics
        assert_eq!(cone.monomials_with_grading(&[9]).len(), 1 + 10 + 28 + 55);
        let first = &cone.monomials_with_grading(&[9])[0];
        assert_eq!(first.0, vec![3, 0, 0, 0]);
    }
}
