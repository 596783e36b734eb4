//! Dense phase-one simplex for small feasibility problems `A x = b, x >= 0`.
//!
//! The entering column is the one with the most negative reduced cost; after
//! a run of degenerate pivots the method switches to Bland's rule until the
//! objective moves again, so it terminates without cycling. Artificial
//! columns are not stored: once an artificial leaves the basis it never
//! needs to return. Over [`crate::Rational`] every pivot is exact; over
//! `f64` entries below [`PIVOT_TOL`] count as zero and the final point is
//! accepted only if its residual is at most [`RESIDUAL_TOL`].

use crate::scalar::Scalar;

pub const PIVOT_TOL: f64 = 1e-11;
pub const RESIDUAL_TOL: f64 = 1e-8;

const DEGENERATE_RUN: usize = 8;

/// Returns a non-negative solution of `a · x = b`, or `None` if none exists.
pub fn find_feasible<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let rhs = n;

    // Rows with negative right-hand side are negated so the artificial basis
    // starts feasible.
    let mut tab: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for (row, bi) in a.iter().zip(b) {
        let flip = *bi < T::zero();
        let mut line: Vec<T> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        line.push(if flip { -bi.clone() } else { bi.clone() });
        tab.push(line);
    }
    // Objective: minimize the sum of artificials, expressed in reduced costs.
    let mut obj = vec![T::zero(); n + 1];
    for line in &tab {
        for (o, x) in obj.iter_mut().zip(line) {
            *o = o.clone() - x.clone();
        }
    }
    tab.push(obj);
    // Basis entries `>= n` are artificials.
    let mut basis: Vec<usize> = (n..n + m).collect();

    let negative = |x: &T| !x.ge_tol(&T::zero(), PIVOT_TOL);
    let positive = |x: &T| !(T::zero()).ge_tol(x, PIVOT_TOL);
    let mut degenerate = 0;

    loop {
        let enter = if degenerate >= DEGENERATE_RUN {
            (0..n).find(|&j| negative(&tab[m][j]))
        } else {
            (0..n).filter(|&j| negative(&tab[m][j])).reduce(|best, j| {
                if tab[m][j] < tab[m][best] {
                    j
                } else {
                    best
                }
            })
        };
        let Some(enter) = enter else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best_ratio = T::zero();
        for i in 0..m {
            if !positive(&tab[i][enter]) {
                continue;
            }
            let ratio = tab[i][rhs].clone() / tab[i][enter].clone();
            let take = match leave {
                None => true,
                Some(l) => ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[l]),
            };
            if take {
                leave = Some(i);
                best_ratio = ratio;
            }
        }
        // The phase-one objective is bounded below by zero, so a column
        // without a positive entry cannot improve it.
        let Some(row) = leave else {
            tab[m][enter] = T::zero();
            continue;
        };
        if positive(&best_ratio) {
            degenerate = 0;
        } else {
            degenerate += 1;
        }
        pivot(&mut tab, row, enter);
        basis[row] = enter;
    }

    let mut x = vec![T::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        if v < n {
            let val = tab[i][rhs].clone();
            x[v] = if val < T::zero() { T::zero() } else { val };
        }
    }
    let feasible = a.iter().zip(b).all(|(row, bi)| {
        let lhs = row
            .iter()
            .zip(&x)
            .fold(T::zero(), |acc, (c, xv)| acc + c.clone() * xv.clone());
        lhs.approx_eq(bi, RESIDUAL_TOL)
    });
    feasible.then_some(x)
}

fn pivot<T: Scalar>(tab: &mut [Vec<T>], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for x in tab[row].iter_mut() {
        if !x.is_zero() {
            x.div_assign_by(&p);
        }
    }
    let pivot_row = tab[row].clone();
    for (i, line) in tab.iter_mut().enumerate() {
        if i == row || line[col].is_zero() {
            continue;
        }
        let factor = line[col].clone();
        for (x, pr) in line.iter_mut().zip(&pivot_row) {
            if !pr.is_zero() {
                x.sub_mul_assign(&factor, pr);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn simple_feasible_system() {
        // x + y = 1, x - y = 1/2
        let a = vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(-1, 1)]];
        let b = vec![r(1, 1), r(1, 2)];
        assert_eq!(find_feasible(&a, &b).unwrap(), vec![r(3, 4), r(1, 4)]);
    }

    #[test]
    fn infeasible_with_nonnegativity() {
        // x + y = 1, x - y = 2 forces y < 0.
        let a = vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(-1, 1)]];
        let b = vec![r(1, 1), r(2, 1)];
        assert!(find_feasible(&a, &b).is_none());
        let af: Vec<Vec<f64>> = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
        assert!(find_feasible(&af, &[1.0, 2.0]).is_none());
    }

    #[test]
    fn redundant_rows() {
        let a = vec![
            vec![r(1, 1), r(1, 1)],
            vec![r(2, 1), r(2, 1)],
            vec![r(1, 1), r(0, 1)],
        ];
        let b = vec![r(1, 1), r(2, 1), r(1, 3)];
        assert_eq!(find_feasible(&a, &b).unwrap(), vec![r(1, 3), r(2, 3)]);
    }

    #[test]
    fn negative_rhs() {
        let a = vec![vec![r(-1, 1), r(0, 1)], vec![r(0, 1), r(1, 1)]];
        let b = vec![r(-2, 1), r(0, 1)];
        assert_eq!(find_feasible(&a, &b).unwrap(), vec![r(2, 1), r(0, 1)]);
    }

    #[test]
    fn float_solution_has_small_residual() {
        let a = vec![vec![0.3, 0.7, 0.1], vec![1.0, 1.0, 1.0]];
        let b = vec![0.4, 1.0];
        let x = find_feasible(&a, &b).unwrap();
        assert!(x.iter().all(|v| *v >= 0.0));
        assert!((0.3 * x[0] + 0.7 * x[1] + 0.1 * x[2] - 0.4).abs() < 1e-12);
    }
}
