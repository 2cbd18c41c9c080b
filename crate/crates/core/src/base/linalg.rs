//! Dense linear algebra over an arbitrary [`Field`]: row reduction, linear
//! solving, nullspace. Matrices are row-major `Vec<Vec<El>>`.

use super::field::Field;

pub type Mat<F> = Vec<Vec<<F as Field>::El>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Mat<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]);
        for j in c..cols {
            m[r][j] = f.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&factor, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Mat<F>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// One solution x of A x = b, if any.
pub fn solve<F: Field>(f: &F, a: &Mat<F>, b: &[F::El]) -> Option<Vec<F::El>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Mat<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![f.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// A basis of the right nullspace of A (columns = unknowns).
pub fn nullspace<F: Field>(f: &F, a: &Mat<F>) -> Vec<Vec<F::El>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![f.zero(); cols];
        v[fc] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&m[i][fc]);
        }
        basis.push(v);
    }
    basis
}

/// Matrix-vector product.
pub fn matvec<F: Field>(f: &F, a: &Mat<F>, x: &[F::El]) -> Vec<F::El> {
    a.iter()
        .map(|row| {
            let mut acc = f.zero();
            for (aij, xj) in row.iter().zip(x) {
                acc = f.add(&acc, &f.mul(aij, xj));
            }
            acc
        })
        .collect()
}
