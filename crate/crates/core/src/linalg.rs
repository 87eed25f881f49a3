//! Exact rational linear algebra: reduced row echelon form, solving with
//! unsolvability certificates, kernel bases.
//!
//! Pivoting is deterministic (first nonzero entry in column order), so every
//! output is reproducible bit for bit.

use crate::matrix::Mat;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: matrix has {rows} rows but right-hand side has {rhs}")]
    DimensionMismatch { rows: usize, rhs: usize },
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    /// Some `x` with `A x = b`, free coordinates set to zero.
    Solution(Vec<Rat>),
    /// Fredholm witness `y` with `yᵀA = 0` and `yᵀb != 0`.
    NoSolution { certificate: Vec<Rat> },
}

/// Row-reduced echelon form of `a` together with the transform `e`
/// (`e * a == rref`) and the pivot column per pivot row.
pub fn rref_with_transform(a: &Mat<Rat>) -> (Mat<Rat>, Mat<Rat>, Vec<usize>) {
    let mut r = a.clone();
    let mut e: Mat<Rat> = Mat::identity(a.rows());
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..r.cols() {
        if pivot_row >= r.rows() {
            break;
        }
        // first nonzero pivot at or below pivot_row
        let Some(src) = (pivot_row..r.rows()).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            swap_rows(&mut r, src, pivot_row);
            swap_rows(&mut e, src, pivot_row);
        }
        let inv = r.get(pivot_row, col).recip().expect("pivot is nonzero");
        scale_row(&mut r, pivot_row, &inv);
        scale_row(&mut e, pivot_row, &inv);
        for i in 0..r.rows() {
            if i == pivot_row || r.get(i, col).is_zero() {
                continue;
            }
            let factor = r.get(i, col).clone();
            sub_scaled_row(&mut r, i, pivot_row, &factor);
            sub_scaled_row(&mut e, i, pivot_row, &factor);
        }
        pivots.push(col);
        pivot_row += 1;
    }
    (r, e, pivots)
}

fn swap_rows(m: &mut Mat<Rat>, i: usize, j: usize) {
    for c in 0..m.cols() {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        m.set(i, c, b);
        m.set(j, c, a);
    }
}

fn scale_row(m: &mut Mat<Rat>, i: usize, s: &Rat) {
    for c in 0..m.cols() {
        let v = m.get(i, c) * s;
        m.set(i, c, v);
    }
}

fn sub_scaled_row(m: &mut Mat<Rat>, i: usize, j: usize, s: &Rat) {
    for c in 0..m.cols() {
        let v = m.get(i, c) - &(m.get(j, c) * s);
        m.set(i, c, v);
    }
}

pub fn rank(a: &Mat<Rat>) -> usize {
    rref_with_transform(a).2.len()
}

/// Solves `A x = b` exactly, or produces a Fredholm certificate.
///
/// The certificate is verified before returning: `yᵀA = 0` and `yᵀb != 0`
/// hold exactly or the function panics (that would be a solver bug).
pub fn linear_solve(a: &Mat<Rat>, b: &[Rat]) -> Result<SolveOutcome, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch {
            rows: a.rows(),
            rhs: b.len(),
        });
    }
    let (_, e, pivots) = rref_with_transform(a);
    let eb = e.mul_vec(b);
    // Inconsistent row: zero in R, nonzero transformed rhs.
    for i in pivots.len()..a.rows() {
        if !eb[i].is_zero() {
            let y = e.row(i);
            debug_assert!(residual_is_certificate(a, b, &y));
            return Ok(SolveOutcome::NoSolution { certificate: y });
        }
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = eb[row].clone();
    }
    debug_assert_eq!(a.mul_vec(&x), b.to_vec());
    Ok(SolveOutcome::Solution(x))
}

fn residual_is_certificate(a: &Mat<Rat>, b: &[Rat], y: &[Rat]) -> bool {
    let yta = (0..a.cols()).all(|c| {
        let mut acc = Rat::zero();
        for i in 0..a.rows() {
            acc = &acc + &(&y[i] * a.get(i, c));
        }
        acc.is_zero()
    });
    let mut ytb = Rat::zero();
    for i in 0..b.len() {
        ytb = &ytb + &(&y[i] * &b[i]);
    }
    yta && !ytb.is_zero()
}

/// Basis of `ker A`: one vector per free column, in ascending column order.
/// The returned vectors are independent and `A v = 0` holds exactly; their
/// count is `cols - rank(A)`.
pub fn kernel_basis(a: &Mat<Rat>) -> Vec<Vec<Rat>> {
    let (r, _, pivots) = rref_with_transform(a);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; a.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in 0..a.cols() {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); a.cols()];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, free);
        }
        debug_assert!(a.mul_vec(&v).iter().all(Rat::is_zero));
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rmat(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rat::from_int).collect())
                .collect(),
        )
    }

    fn rvec(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(Rat::from_int).collect()
    }

    #[test]
    fn identity_solve() {
        let a = rmat(vec![vec![1, 0], vec![0, 1]]);
        let out = linear_solve(&a, &rvec(vec![3, -2])).unwrap();
        assert_eq!(out, SolveOutcome::Solution(rvec(vec![3, -2])));
    }

    #[test]
    fn rank_one_inconsistency_certificate() {
        let a = rmat(vec![vec![1, 1], vec![2, 2]]);
        let out = linear_solve(&a, &rvec(vec![1, 3])).unwrap();
        match out {
            SolveOutcome::NoSolution { certificate } => {
                assert_eq!(certificate, rvec(vec![-2, 1]));
                // yᵀ b = 1
                assert_eq!(
                    &(&certificate[0] * &Rat::from_int(1))
                        + &(&certificate[1] * &Rat::from_int(3)),
                    Rat::from_int(1)
                );
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = rmat(vec![vec![1, 0]]);
        assert!(matches!(
            linear_solve(&a, &rvec(vec![1, 2])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_shapes() {
        // 1-dimensional kernel of [1 1]
        let k = kernel_basis(&rmat(vec![vec![1, 1]]));
        assert_eq!(k, vec![rvec(vec![-1, 1])]);
        // invertible 3x3: trivial kernel
        let inv = rmat(vec![vec![2, 0, 1], vec![0, 1, 0], vec![1, 0, 1]]);
        assert!(kernel_basis(&inv).is_empty());
        // zero 2x3: full kernel
        let z = kernel_basis(&Mat::zeros(2, 3));
        assert_eq!(z.len(), 3);
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
    }

    proptest! {
        // Seeded solvable systems: generate x0, verify the residual exactly.
        #[test]
        fn solvable_systems_have_zero_residual(
            entries in proptest::collection::vec(arb_rat(), 24),
            x0 in proptest::collection::vec(arb_rat(), 4),
        ) {
            let a = Mat::from_fn(6, 4, |i, j| entries[i * 4 + j].clone());
            let b = a.mul_vec(&x0);
            match linear_solve(&a, &b).unwrap() {
                SolveOutcome::Solution(x) => prop_assert_eq!(a.mul_vec(&x), b),
                SolveOutcome::NoSolution { .. } => prop_assert!(false, "constructed system must be solvable"),
            }
        }

        // Certificates are exact Fredholm witnesses on arbitrary systems.
        #[test]
        fn certificates_verify(
            entries in proptest::collection::vec(arb_rat(), 12),
            b in proptest::collection::vec(arb_rat(), 4),
        ) {
            let a = Mat::from_fn(4, 3, |i, j| entries[i * 3 + j].clone());
            match linear_solve(&a, &b).unwrap() {
                SolveOutcome::Solution(x) => prop_assert_eq!(a.mul_vec(&x), b),
                SolveOutcome::NoSolution { certificate } => {
                    for c in 0..a.cols() {
                        let mut acc = Rat::zero();
                        for i in 0..a.rows() {
                            acc = &acc + &(&certificate[i] * a.get(i, c));
                        }
                        prop_assert!(acc.is_zero());
                    }
                    let mut ytb = Rat::zero();
                    for i in 0..b.len() {
                        ytb = &ytb + &(&certificate[i] * &b[i]);
                    }
                    prop_assert!(!ytb.is_zero());
                }
            }
        }

        #[test]
        fn kernel_count_matches_rank(
            entries in proptest::collection::vec(arb_rat(), 12),
        ) {
            let a = Mat::from_fn(3, 4, |i, j| entries[i * 4 + j].clone());
            let k = kernel_basis(&a);
            prop_assert_eq!(k.len(), 4 - rank(&a));
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(Rat::is_zero));
            }
        }
    }
}
