//! Dense exact linear algebra over a [`Field`]. Matrices are row-major
//! `Vec<Vec<E>>`.

use crate::error::{Error, Result};
use crate::scalars::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// In-place reduced row echelon form. Returns the pivot column of each
/// nonzero row; zero rows are dropped from `rows`.
pub fn rref<F: Field>(field: &F, rows: &mut Matrix<F::Elem>) -> Result<Vec<usize>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else { continue };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c])?;
        if !field.is_one(&inv) {
            for x in rows[r].iter_mut().skip(c) {
                if !field.is_zero(x) {
                    *x = field.mul(x, &inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        let nz: Vec<usize> = (c..ncols).filter(|&j| !field.is_zero(&pivot_row[j])).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let t = field.mul(&f, &pivot_row[j]);
                row[j] = field.sub(&row[j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Ok(pivots)
}

pub fn rank<F: Field>(field: &F, rows: &Matrix<F::Elem>) -> Result<usize> {
    let mut m = rows.clone();
    Ok(rref(field, &mut m)?.len())
}

/// Basis of the right kernel {v : A v = 0}, one vector per free column.
pub fn kernel<F: Field>(field: &F, rows: &Matrix<F::Elem>, ncols: usize) -> Result<Vec<Vec<F::Elem>>> {
    let mut m = rows.clone();
    let pivots = rref(field, &mut m)?;
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = field.neg(&row[free]);
        }
        out.push(v);
    }
    Ok(out)
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let inner = b.len();
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&row[k], &b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn identity<F: Field>(field: &F, n: usize) -> Matrix<F::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
}

pub fn inverse<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    let n = a.len();
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug)?;
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Precondition("matrix is singular".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
