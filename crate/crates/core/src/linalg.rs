//! Dense exact linear algebra over `K`: rank and nullspace by Gaussian
//! elimination.

use crate::numfield::FieldElement;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        for k in 0..rows.len() {
            if k == r || rows[k][c].is_zero() {
                continue;
            }
            let f = rows[k][c].clone();
            let (pivot_row, other) = if k < r {
                let (a, b) = rows.split_at_mut(r);
                (&b[0], &mut a[k])
            } else {
                let (a, b) = rows.split_at_mut(k);
                (&a[r], &mut b[0])
            };
            for (x, y) in other.iter_mut().zip(pivot_row.iter()) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<FieldElement>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{v : rows·v = 0}`.
pub fn nullspace(rows: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldElement::zero(); ncols];
            v[f] = FieldElement::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        rows.iter().map(|r| r.iter().map(|&v| FieldElement::from_int(v)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&ns[0]).fold(FieldElement::zero(), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = ints(&[&[1, 0], &[0, 1]]);
        assert!(nullspace(&m).is_empty());
    }
}
