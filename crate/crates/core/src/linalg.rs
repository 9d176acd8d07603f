//! Row reduction over cyclotomic fields.

use crate::cyclo::CycloNum;

/// Brings `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn row_reduce(rows: &mut Vec<Vec<CycloNum>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(sel) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, sel);
        let inv = rows[top][col].inv().expect("nonzero pivot");
        for v in rows[top].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

pub fn rank(mut rows: Vec<Vec<CycloNum>>) -> usize {
    row_reduce(&mut rows).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace(rows: &[Vec<CycloNum>], ncols: usize) -> Vec<Vec<CycloNum>> {
    let mut reduced = rows.to_vec();
    let pivots = row_reduce(&mut reduced);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![CycloNum::zero(); ncols];
        v[free] = CycloNum::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Determinant by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<CycloNum>>) -> CycloNum {
    let n = m.len();
    let mut det = CycloNum::one();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return CycloNum::zero();
        };
        if sel != col {
            m.swap(sel, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            let pivot_row = m[col].clone();
            for (v, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= &(&factor * p);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<CycloNum> {
        v.iter().map(|&x| CycloNum::from_int(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[1, 0, 1])];
        assert_eq!(rank(a.clone()), 2);
        let ker = nullspace(&a, 3);
        assert_eq!(ker.len(), 1);
        for r in &a {
            let dot: CycloNum = r.iter().zip(&ker[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(vec![row(&[0, 1]), row(&[1, 0])]), CycloNum::from_int(-1));
        assert_eq!(determinant(vec![row(&[2, 0, 1]), row(&[1, 3, 2]), row(&[1, 1, 2])]), CycloNum::from_int(6));
        let i = CycloNum::zeta(4).unwrap();
        let m = vec![vec![i.clone(), CycloNum::zero()], vec![CycloNum::zero(), i]];
        assert_eq!(determinant(m), CycloNum::from_int(-1));
    }
}
