use super::vector::{Rational, RationalMatrix, RationalVector};
use num::{One, Zero};

/// Reduced row echelon form of `rows` (each of length `ncols`) and its pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i][c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.rows()
        .into_iter()
        .map(RationalVector::into_entries)
        .collect()
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(matrix_rows(m), m.ncols()).1.len()
}

pub fn rank_of(vectors: &[RationalVector]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => rref(
            vectors.iter().map(|v| v.entries().to_vec()).collect(),
            v.dim(),
        )
        .1
        .len(),
    }
}

/// Null space basis of `m`, one vector per free column, in column order.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<RationalVector> {
    let n = m.ncols();
    let (rows, pivots) = rref(matrix_rows(m), n);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = RationalVector::zeros(n);
        v[free] = Rational::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Pivot columns of `m` (spanning the column space) and a null space basis.
pub fn image_kernel_basis(m: &RationalMatrix) -> (Vec<RationalVector>, Vec<RationalVector>) {
    let (_, pivots) = rref(matrix_rows(m), m.ncols());
    let image = pivots.iter().map(|&j| m.column(j).clone()).collect();
    (image, kernel_basis(m))
}

/// Basis of `{c : cᵀ m = 0}`; `v` lies in the column space iff `c·v = 0` for all of them.
pub fn left_kernel(m: &RationalMatrix) -> Vec<RationalVector> {
    kernel_basis(&m.transpose())
}

/// Left kernel of the span of `vectors` in ambient dimension `n`.
pub fn orthogonal_complement(vectors: &[RationalVector], n: usize) -> Vec<RationalVector> {
    left_kernel(&RationalMatrix::from_columns(n, vectors.to_vec()))
}

pub fn in_span(vectors: &[RationalVector], v: &RationalVector) -> bool {
    orthogonal_complement(vectors, v.dim())
        .iter()
        .all(|c| c.dot(v).is_zero())
}

/// Coefficients `x` with `Σ x_j vectors_j = v`, if any.
pub fn solve_in_span(vectors: &[RationalVector], v: &RationalVector) -> Option<Vec<Rational>> {
    let n = v.dim();
    let k = vectors.len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = vectors.iter().map(|c| c[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (rows, pivots) = rref(rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}
