//! Exact Gaussian elimination: reduced row echelon form, rank, inverses and
//! cokernels.

use super::matrix::RatMatrix;
use super::rational::Rational;

/// Reduced row echelon form together with the pivot column of each nonzero
/// row. Pivots are chosen as the first nonzero entry scanning downward, so the
/// result depends only on the row space of the input.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<Rational>> = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in a[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = RatMatrix::new(rows, cols, a.into_iter().flatten().collect())
        .expect("elimination preserves shape");
    (reduced, pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).1.len()
}

/// True iff `f` is square of full rank.
pub fn is_iso(f: &RatMatrix) -> bool {
    f.is_square() && rank(f) == f.rows()
}

/// Exact inverse by Gauss-Jordan elimination, or `None` when `f` is not
/// invertible.
pub fn inverse(f: &RatMatrix) -> Option<RatMatrix> {
    if !f.is_square() {
        return None;
    }
    let n = f.rows();
    let augmented = RatMatrix::hstack(n, &[f.clone(), RatMatrix::identity(n)]).ok()?;
    let (reduced, pivots) = rref(&augmented);
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
        return None;
    }
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, reduced.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// Cokernel of `f: ℚ^q → ℚ^p` as a chosen quotient `ℚ^p → ℚ^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    /// `k x p`, full row rank, `projection · f = 0`.
    pub projection: RatMatrix,
    /// `p x k` with `projection · section = id_k`.
    pub section: RatMatrix,
}

/// Computes the cokernel of `f`.
///
/// The image of `f` is the row space of `fᵀ`; its reduced echelon form fixes a
/// set of pivot coordinates, and the remaining coordinates give the quotient
/// basis. The section sends quotient basis vector `t` to the standard basis
/// vector of the `t`-th non-pivot coordinate.
pub fn cokernel(f: &RatMatrix) -> Cokernel {
    let p = f.rows();
    let (reduced, pivots) = rref(&f.transpose());
    let mut is_pivot = vec![false; p];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..p).filter(|&j| !is_pivot[j]).collect();
    let k = free.len();
    let mut projection = RatMatrix::zeros(k, p);
    let mut section = RatMatrix::zeros(p, k);
    for (t, &j) in free.iter().enumerate() {
        projection.set(t, j, Rational::ONE);
        section.set(j, t, Rational::ONE);
        for (row, &c) in pivots.iter().enumerate() {
            let x = reduced.get(row, j);
            if !x.is_zero() {
                projection.set(t, c, -x);
            }
        }
    }
    Cokernel {
        projection,
        section,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_is_iso() {
        assert!(is_iso(&RatMatrix::identity(5)));
        let singular = RatMatrix::from_ints(&[[1, 2], [2, 4]]);
        assert_eq!(rank(&singular), 1);
        assert!(!is_iso(&singular));
        assert!(!is_iso(&RatMatrix::zeros(2, 3)));
        assert!(is_iso(&RatMatrix::zeros(0, 0)));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_ints(&[[2, 1, 0], [0, 1, 4], [1, 0, 3]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mat_mul(&inv).unwrap().is_identity());
        assert!(inv.mat_mul(&m).unwrap().is_identity());
        assert!(inverse(&RatMatrix::from_ints(&[[1, 2], [2, 4]])).is_none());
        assert_eq!(inverse(&RatMatrix::zeros(0, 0)), Some(RatMatrix::zeros(0, 0)));
    }

    #[test]
    fn cokernel_of_zero_map_is_identity() {
        let c = cokernel(&RatMatrix::zeros(3, 2));
        assert_eq!(c.projection, RatMatrix::identity(3));
        assert_eq!(c.section, RatMatrix::identity(3));
    }

    #[test]
    fn cokernel_of_full_rank_square_is_empty() {
        let c = cokernel(&RatMatrix::identity(3));
        assert_eq!(c.projection.shape(), (0, 3));
        assert_eq!(c.section.shape(), (3, 0));
    }

    #[test]
    fn cokernel_of_diagonal_vector() {
        let f = RatMatrix::from_ints(&[[1], [1]]);
        let c = cokernel(&f);
        // pivot on the first coordinate leaves the second as quotient basis
        assert_eq!(c.projection, RatMatrix::from_ints(&[[-1, 1]]));
        assert!(c.projection.mat_mul(&f).unwrap().is_zero());
        assert!(c.projection.mat_mul(&c.section).unwrap().is_identity());
    }

    #[test]
    fn rref_of_empty_matrix_keeps_shape() {
        let (r, p) = rref(&RatMatrix::zeros(0, 4));
        assert_eq!(r.shape(), (0, 4));
        assert!(p.is_empty());
    }
}
