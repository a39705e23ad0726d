use super::linalg::rref;
use super::{Monomial, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::scalars::Field;
use std::collections::HashMap;

/// A subspace of homogeneous polynomials of one grading, held as a reduced
/// echelon basis with columns in canonical monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace<E> {
    pub basis: Vec<Poly<E>>,
    pub grading: Vec<u32>,
    pub tag: String,
    pivots: Vec<Monomial>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync> SectionSpace<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Leading monomial of each basis element.
    pub fn pivots(&self) -> &[Monomial] {
        &self.pivots
    }

    /// Remainder of `f` after clearing every pivot column.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, f: &Poly<E>) -> Poly<E> {
        let mut r = f.clone();
        for (b, piv) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = r.coeff(piv).cloned() {
                r = r.sub(field, &b.scale(field, &c));
            }
        }
        r
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, f: &Poly<E>) -> bool {
        self.reduce(field, f).is_zero()
    }

    /// Coordinates of `f` in the echelon basis, if it lies in the span.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, f: &Poly<E>) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|p| f.coeff(p).cloned().unwrap_or_else(|| field.zero())).collect();
        self.contains(field, f).then_some(coords)
    }

    pub fn same_span<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|b| self.contains(field, b))
    }
}

/// Echelon basis of the span of `polys`, which must all be homogeneous of
/// one grading (zero polynomials are ignored).
pub fn row_reduce<F: Field>(ring: &PolyRing, field: &F, polys: &[Poly<F::Elem>], tag: &str) -> Result<SectionSpace<F::Elem>> {
    let mut grading: Option<Vec<u32>> = None;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let g = p.grading(ring).ok_or_else(|| Error::MixedDegree(format!("{tag}: inhomogeneous input")))?;
        match &grading {
            None => grading = Some(g),
            Some(x) if *x != g => return Err(Error::MixedDegree(format!("{tag}: gradings {x:?} and {g:?}"))),
            _ => {}
        }
    }
    let mut cols: Vec<Monomial> = polys.iter().flat_map(|p| p.monomials().cloned()).collect();
    cols.sort_by(|a, b| ring.canonical_cmp(a, b));
    cols.dedup();
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<F::Elem>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut row = vec![field.zero(); cols.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    let pivots = rref(field, &mut rows)?;
    let nvars = ring.nvars();
    let basis = rows
        .iter()
        .map(|row| {
            let mut p = Poly::zero(nvars);
            for (j, c) in row.iter().enumerate() {
                p.add_term(field, cols[j].clone(), c);
            }
            p
        })
        .collect();
    Ok(SectionSpace { basis, grading: grading.unwrap_or_default(), tag: tag.to_string(), pivots: pivots.into_iter().map(|j| cols[j].clone()).collect() })
}

/// Whether every polynomial of `inner` lies in the span of `outer`.
pub fn subspace_membership<F: Field>(ring: &PolyRing, field: &F, inner: &[Poly<F::Elem>], outer: &[Poly<F::Elem>]) -> Result<bool> {
    let space = row_reduce(ring, field, outer, "outer")?;
    Ok(inner.iter().all(|p| space.contains(field, p)))
}

/// Normal forms modulo the degree-`grading` part of the ideal generated by
/// `relations`. The complement basis is the set of monomials that are not
/// pivots of the relation span.
#[derive(Clone, Debug)]
pub struct RelationQuotient<E> {
    pub relations: SectionSpace<E>,
    pub complement: Vec<Monomial>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync> RelationQuotient<E> {
    pub fn new<F: Field<Elem = E>>(ring: &PolyRing, field: &F, generators: &[Poly<E>], grading: &[u32]) -> Result<Self> {
        let mut mults = Vec::new();
        for g in generators {
            let gg = g.grading(ring).ok_or_else(|| Error::MixedDegree("relation is not homogeneous".into()))?;
            if gg.iter().zip(grading).any(|(a, b)| a > b) {
                continue;
            }
            let rest: Vec<u32> = grading.iter().zip(&gg).map(|(a, b)| a - b).collect();
            for m in ring.monomials_with_grading(&rest) {
                mults.push(g.mul(field, &Poly::term(field, m, field.one())));
            }
        }
        let relations = row_reduce(ring, field, &mults, "relations")?;
        let complement = ring.monomials_with_grading(grading).into_iter().filter(|m| !relations.pivots.contains(m)).collect();
        Ok(Self { relations, complement })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn normal_form<F: Field<Elem = E>>(&self, field: &F, f: &Poly<E>) -> Poly<E> {
        self.relations.reduce(field, f)
    }
}

/// Degree of a threefold from h⁰ of the first five multiples of a line
/// bundle: the values must fit a cubic, and the degree is 3! times its
/// leading coefficient (the constant third difference).
pub fn hilbert_degree(dims: &[i64]) -> Result<i64> {
    if dims.len() != 5 {
        return Err(Error::NonPolynomialData);
    }
    let mut d = dims.to_vec();
    let mut diffs = Vec::new();
    while d.len() > 1 {
        d = d.windows(2).map(|w| w[1] - w[0]).collect();
        diffs.push(d.clone());
    }
    if diffs[3][0] != 0 {
        return Err(Error::NonPolynomialData);
    }
    let deg = diffs[2][0];
    if deg <= 0 {
        return Err(Error::NonIntegerDegree(format!("leading term {deg}/6 gives no positive degree")));
    }
    Ok(deg)
}
