//! Exact fixed points of linear actions whose block maps compose to
//! diagonalizable maps with ninth-root-of-unity eigenvalues.

use super::points::{others, PointMap};
use super::{AmbientKind, AmbientThreefold, ConePoint, Point};
use crate::error::{Error, Result};
use crate::group::{GroupElement, LinearizedGroupAction};
use crate::polyring::linalg::{kernel, mat_mul};
use crate::scalars::Field;

/// Fixed points of one element, with the ambient-specific origin of each.
#[derive(Clone, Debug)]
pub struct FixedLocus<E> {
    pub element: GroupElement,
    pub points: Vec<Point<E>>,
}

/// (eigenvalue log, eigenvector) pairs of a square matrix; errors unless the
/// ninth roots of unity account for a full eigenbasis of distinct lines.
fn eigenlines<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Result<Vec<(u32, Vec<F::Elem>)>> {
    let n = m.len();
    let mut out = Vec::new();
    for k in 0..9u32 {
        let lam = field.zeta_pow(k as i64);
        let shifted: Vec<Vec<F::Elem>> =
            m.iter().enumerate().map(|(i, row)| row.iter().enumerate().map(|(j, a)| if i == j { field.sub(a, &lam) } else { a.clone() }).collect()).collect();
        let ker = kernel(field, &shifted, n)?;
        if ker.len() > 1 {
            return Err(Error::Unsupported("fixed locus is positive-dimensional".into()));
        }
        out.extend(ker.into_iter().map(|v| (k, v)));
    }
    if out.len() < n {
        return Err(Error::NonDiagonalizable(format!("{} of {n} eigenlines over ninth roots of unity", out.len())));
    }
    Ok(out)
}

fn sub_block<E: Clone>(n: &[Vec<E>], rows: &std::ops::Range<usize>, cols: &std::ops::Range<usize>) -> Vec<Vec<E>> {
    n[rows.clone()].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

/// Exact fixed points of g on W.
pub fn exact_fixed_locus<F: Field>(ambient: &AmbientThreefold, action: &LinearizedGroupAction<F>, g: &GroupElement) -> Result<FixedLocus<F::Elem>> {
    let field = action.field();
    let map = ambient.point_map(action, g)?;
    let points = match (&map, ambient.kind) {
        (PointMap::Linear(n), AmbientKind::SegreP1Cubed | AmbientKind::FlagVariety) => product_fixed_points(ambient, field, n)?,
        (PointMap::Cone { sigma, c, cz }, AmbientKind::DelPezzoCone) => cone_fixed_points(ambient, field, sigma, c, cz)?,
        _ => return Err(Error::Unsupported("point map does not match the ambient".into())),
    };
    Ok(FixedLocus { element: g.clone(), points })
}

fn product_fixed_points<F: Field>(ambient: &AmbientThreefold, field: &F, n: &[Vec<F::Elem>]) -> Result<Vec<Point<F::Elem>>> {
    let ranges = ambient.block_ranges();
    let nb = ranges.len();
    // (N p)_B depends only on p_{src(B)}
    let mut src = vec![usize::MAX; nb];
    for (b, rb) in ranges.iter().enumerate() {
        for (c, rc) in ranges.iter().enumerate() {
            if sub_block(n, rb, rc).iter().flatten().any(|a| !field.is_zero(a)) {
                if src[b] != usize::MAX {
                    return Err(Error::Unsupported("rule mixes blocks".into()));
                }
                src[b] = c;
            }
        }
    }
    // partial assignments of block coordinates
    let mut partial: Vec<Vec<Option<Vec<F::Elem>>>> = vec![vec![None; nb]];
    let mut done = vec![false; nb];
    for start in 0..nb {
        if done[start] {
            continue;
        }
        let mut cycle = vec![start];
        let mut b = src[start];
        while b != start {
            cycle.push(b);
            b = src[b];
        }
        for &b in &cycle {
            done[b] = true;
        }
        // M = N_{c0,c1} N_{c1,c2} ... N_{c_{r-1},c0}
        let r = cycle.len();
        let mut m = sub_block(n, &ranges[cycle[0]], &ranges[cycle[1 % r]]);
        for j in 1..r {
            m = mat_mul(field, &m, &sub_block(n, &ranges[cycle[j]], &ranges[cycle[(j + 1) % r]]));
        }
        let lines = eigenlines(field, &m)?;
        let mut next = Vec::new();
        for assign in &partial {
            for (_, v) in &lines {
                let mut a = assign.clone();
                a[cycle[0]] = Some(v.clone());
                // p_{c_j} ∝ N_{c_j, c_{j+1}} p_{c_{j+1}}, walking backwards from c_0
                let mut cur = v.clone();
                for j in (1..r).rev() {
                    let blk = sub_block(n, &ranges[cycle[j]], &ranges[cycle[(j + 1) % r]]);
                    cur = blk.iter().map(|row| row.iter().zip(&cur).fold(field.zero(), |s, (x, y)| field.add(&s, &field.mul(x, y)))).collect();
                    a[cycle[j]] = Some(cur.clone());
                }
                next.push(a);
            }
        }
        partial = next;
    }
    let inc = ambient.incidence(field);
    let mut out = Vec::new();
    for a in partial {
        let coords: Vec<F::Elem> = a.into_iter().flat_map(|b| b.expect("every block assigned")).collect();
        if let Some(q) = &inc {
            if !field.is_zero(&q.evaluate(field, &coords)?) {
                continue;
            }
        }
        out.push(ambient.normalize(field, Point::Multi(coords))?);
    }
    Ok(out)
}

fn cone_fixed_points<F: Field>(ambient: &AmbientThreefold, field: &F, sigma: &[usize; 3], c: &[F::Elem; 3], cz: &F::Elem) -> Result<Vec<Point<F::Elem>>> {
    let mut out = vec![Point::Cone(ConePoint::Vertex)];
    let nx: Vec<Vec<F::Elem>> = (0..3).map(|i| (0..3).map(|j| if sigma[i] == j { c[i].clone() } else { field.zero() }).collect()).collect();
    for (k, v) in eigenlines(field, &nx)? {
        if v.iter().filter(|a| !field.is_zero(a)).count() == 1 {
            continue;
        }
        let lam3 = field.zeta_pow(3 * k as i64);
        if lam3 == *cz {
            return Err(Error::Unsupported("a ruling is fixed pointwise".into()));
        }
        out.push(ambient.normalize(field, Point::Cone(ConePoint::Plain { z: field.zero(), x: [v[0].clone(), v[1].clone(), v[2].clone()] }))?);
    }
    for base in 0..3 {
        if sigma[base] != base {
            continue;
        }
        let [a, b] = others(base);
        let ck = field.inv(&c[base])?;
        // d'_u = (c_u / c_base) d_{σ(u)} on the two coordinates off the base
        let idx = |i: usize| if i == a { 0 } else { 1 };
        let mut t = vec![vec![field.zero(); 2]; 2];
        for u in [a, b] {
            t[idx(u)][idx(sigma[u])] = field.mul(&c[u], &ck);
        }
        for (k, d) in eigenlines(field, &t)? {
            if field.zeta_pow(k as i64) == *cz {
                return Err(Error::Unsupported("a ruling is fixed pointwise".into()));
            }
            out.push(ambient.normalize(field, Point::Cone(ConePoint::Exceptional { z: field.zero(), base, dir: [d[0].clone(), d[1].clone()] }))?);
        }
    }
    Ok(out)
}

impl AmbientThreefold {
    pub(crate) fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for b in self.ring().blocks() {
            out.push(start..start + b.vars.len());
            start += b.vars.len();
        }
        out
    }
}
