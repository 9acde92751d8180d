//! Exact nullspace of a sparse rational matrix by Gauss-Jordan elimination.

use num_traits::{One, Zero};

use crate::ExactRational;

/// Nonzero entries of one row, sorted by column.
pub(crate) type SparseRow = Vec<(usize, ExactRational)>;

fn entry(row: &SparseRow, col: usize) -> Option<&ExactRational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|at| &row[at].1)
}

/// `target - factor * pivot`, merged column by column; exact zeros are dropped.
fn axpy(target: &SparseRow, factor: &ExactRational, pivot: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut a, mut b) = (target.iter().peekable(), pivot.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((ca, va)), Some((cb, vb))) => {
                if ca < cb {
                    out.push((*ca, va.clone()));
                    a.next();
                } else if cb < ca {
                    out.push((*cb, -(factor * vb)));
                    b.next();
                } else {
                    let v = va - factor * vb;
                    if !v.is_zero() {
                        out.push((*ca, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                a.next();
            }
            (None, Some((cb, vb))) => {
                out.push((*cb, -(factor * vb)));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows and `ncols` columns.
///
/// Pivots are taken column by column; among rows with a nonzero in the current
/// column the sparsest one is chosen, which keeps fill-in low on the
/// composition-matrix systems this is used for.
pub(crate) fn nullspace(mut rows: Vec<SparseRow>, ncols: usize) -> Vec<Vec<ExactRational>> {
    let mut used = vec![false; rows.len()];
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];

    for (col, slot) in pivot_of_col.iter_mut().enumerate() {
        let pick = (0..rows.len())
            .filter(|&r| !used[r] && entry(&rows[r], col).is_some())
            .min_by_key(|&r| rows[r].len());
        let Some(p) = pick else { continue };
        used[p] = true;
        *slot = Some(p);

        let lead = entry(&rows[p], col).expect("pivot entry").clone();
        if !lead.is_one() {
            for (_, v) in rows[p].iter_mut() {
                *v = &*v / &lead;
            }
        }
        let pivot = std::mem::take(&mut rows[p]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == p {
                continue;
            }
            if let Some(f) = entry(row, col).cloned() {
                *row = axpy(row, &f, &pivot);
            }
        }
        rows[p] = pivot;
    }

    (0..ncols)
        .filter(|&c| pivot_of_col[c].is_none())
        .map(|free| {
            let mut x = vec![ExactRational::zero(); ncols];
            x[free] = ExactRational::one();
            for (c, p) in pivot_of_col.iter().enumerate() {
                if let Some(p) = p {
                    if let Some(v) = entry(&rows[*p], free) {
                        x[c] = -v.clone();
                    }
                }
            }
            x
        })
        .collect()
}
