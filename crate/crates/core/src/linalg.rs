//! Dense Gaussian elimination over a field.

use crate::scalar::Scalar;

/// Solves `a x = b` for a dense `rows x cols` matrix.
///
/// Returns one solution (free variables set to zero), or `None` when the
/// system is inconsistent. Pivots are the first nonzero entry in each column,
/// which is exact for rational scalars.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = S::one() / m[row][col].clone();
        for v in m[row].iter_mut().skip(col) {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row).skip(col) {
                *v = v.clone() - p.clone() * factor.clone();
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }

    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    fn apply(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        a.iter()
            .map(|r| r.iter().zip(x).fold(q(0), |acc, (u, v)| acc + u.clone() * v.clone()))
            .collect()
    }

    #[test]
    fn square_system() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let b = vec![q(3), q(5)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![Rational::from_ratio(4, 5), Rational::from_ratio(7, 5)]);
    }

    #[test]
    fn underdetermined_and_inconsistent() {
        let a = mat(&[&[1, 1, 0], &[2, 2, 0]]);
        let x = solve(&a, &[q(1), q(2)]).unwrap();
        assert_eq!(apply(&a, &x), vec![q(1), q(2)]);
        assert!(solve(&a, &[q(1), q(3)]).is_none());
    }

    #[test]
    fn zero_columns() {
        let a = mat(&[&[0, 0], &[0, 0]]);
        assert_eq!(solve(&a, &[q(0), q(0)]).unwrap(), vec![q(0), q(0)]);
        assert!(solve(&a, &[q(1), q(0)]).is_none());
        let empty: Vec<Vec<Rational>> = vec![vec![]; 1];
        assert!(solve(&empty, &[q(1)]).is_none());
    }
}
