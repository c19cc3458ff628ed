//! Exact integer solving of overdetermined linear systems by fraction-free
//! (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Unique integer solution.
    Integral(Vec<BigInt>),
    /// The system has no solution; carries the index of the first row whose
    /// reduced right-hand side is nonzero and that residual value.
    Inconsistent { row: usize, residual: BigInt },
    /// A unique rational solution exists but is not integral.
    NonIntegral { column: usize },
    /// The columns are linearly dependent, so a solution is not unique.
    Underdetermined { column: usize },
}

/// Solves `A x = b` for `A` given row-major with `ncols` columns.
///
/// Every row is reduced with Bareiss' rule, so all intermediate values stay
/// integral and every division is exact.
pub fn solve_integer(rows: &[Vec<BigInt>], rhs: &[BigInt], ncols: usize) -> SolveOutcome {
    assert_eq!(rows.len(), rhs.len(), "row/rhs length mismatch");
    let nrows = rows.len();
    // augmented matrix, rhs in column `ncols`
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), ncols);
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    // original row index of every current row, for diagnostics
    let mut origin: Vec<usize> = (0..nrows).collect();

    let mut prev = BigInt::one();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        let Some(p) = (pivot_row..nrows).find(|&i| !m[i][col].is_zero()) else {
            return SolveOutcome::Underdetermined { column: col };
        };
        m.swap(p, pivot_row);
        origin.swap(p, pivot_row);
        let (head, tail) = m.split_at_mut(pivot_row + 1);
        let piv = &head[pivot_row];
        let pv = piv[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..=ncols {
                let v = &pv * &row[j] - &factor * &piv[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[col] = BigInt::zero();
        }
        prev = pv;
        pivot_row += 1;
    }

    if let Some(i) = (pivot_row..nrows).find(|&i| !m[i][ncols].is_zero()) {
        return SolveOutcome::Inconsistent {
            row: origin[i],
            residual: m[i][ncols].clone(),
        };
    }

    let mut x = vec![BigInt::zero(); ncols];
    for j in (0..ncols).rev() {
        let mut acc = m[j][ncols].clone();
        for k in j + 1..ncols {
            acc -= &m[j][k] * &x[k];
        }
        let d = &m[j][j];
        if !(&acc % d).is_zero() {
            return SolveOutcome::NonIntegral { column: j };
        }
        x[j] = acc / d;
    }
    SolveOutcome::Integral(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn square_system() {
        let a = vec![bi(&[2, 1]), bi(&[1, 3])];
        let b = bi(&[5, 10]);
        assert_eq!(
            solve_integer(&a, &b, 2),
            SolveOutcome::Integral(bi(&[1, 3]))
        );
    }

    #[test]
    fn overdetermined_consistent() {
        let a = vec![bi(&[1, 0]), bi(&[1, 1]), bi(&[0, 1]), bi(&[1, 1])];
        let b = bi(&[2, 5, 3, 5]);
        assert_eq!(
            solve_integer(&a, &b, 2),
            SolveOutcome::Integral(bi(&[2, 3]))
        );
    }

    #[test]
    fn overdetermined_inconsistent() {
        let a = vec![bi(&[1]), bi(&[1])];
        let b = bi(&[1, 0]);
        assert!(matches!(
            solve_integer(&a, &b, 1),
            SolveOutcome::Inconsistent { .. }
        ));
    }

    #[test]
    fn rational_solution_rejected() {
        let a = vec![bi(&[2])];
        let b = bi(&[1]);
        assert_eq!(
            solve_integer(&a, &b, 1),
            SolveOutcome::NonIntegral { column: 0 }
        );
    }

    #[test]
    fn dependent_columns() {
        let a = vec![bi(&[1, 2]), bi(&[2, 4])];
        let b = bi(&[1, 2]);
        assert!(matches!(
            solve_integer(&a, &b, 2),
            SolveOutcome::Underdetermined { .. }
        ));
    }
}
