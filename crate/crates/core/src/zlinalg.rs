//! Sparse integer row echelon form by Euclidean row operations.
//!
//! Rows are inserted one at a time; the echelon keeps one pivot row per leading
//! column. Rank over ℤ equals rank over ℚ, so this also answers rational rank
//! questions without floating point.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type SparseRow = BTreeMap<usize, i64>;

#[derive(Debug, Default, Clone)]
pub struct IntegerEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

fn lead(row: &SparseRow) -> Option<(usize, i64)> {
    row.iter().next().map(|(c, v)| (*c, *v))
}

/// `a·x + b·y`, dropping zeros.
fn combine(a: i64, x: &SparseRow, b: i64, y: &SparseRow) -> Result<SparseRow> {
    let mut out = SparseRow::new();
    for (col, v) in x {
        let t = a.checked_mul(*v).ok_or(Error::Overflow)?;
        out.insert(*col, t);
    }
    for (col, v) in y {
        let t = b.checked_mul(*v).ok_or(Error::Overflow)?;
        let e = out.entry(*col).or_insert(0);
        *e = e.checked_add(t).ok_or(Error::Overflow)?;
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl IntegerEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the echelon and inserts what is left.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> Result<bool> {
        row.retain(|_, v| *v != 0);
        loop {
            let Some((col, a)) = lead(&row) else {
                return Ok(false);
            };
            let Some(pivot) = self.pivots.get(&col) else {
                self.pivots.insert(col, row);
                return Ok(true);
            };
            let b = pivot[&col];
            if a % b == 0 {
                row = combine(1, &row, -(a / b), pivot)?;
                continue;
            }
            // replace the pivot by the gcd combination and keep reducing the rest
            let (g, x, y) = ext_gcd(b, a);
            let new_pivot = combine(x, pivot, y, &row)?;
            let rest = combine(b / g, &row, -(a / g), pivot)?;
            self.pivots.insert(col, new_pivot);
            row = rest;
        }
    }
}

/// Rank of a list of sparse integer rows.
pub fn integer_rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> Result<usize> {
    let mut ech = IntegerEchelon::new();
    for r in rows {
        ech.insert(r)?;
    }
    Ok(ech.rank())
}

/// Nonzero invariant factors of the integer matrix whose rows are `rows`
/// (Smith normal form diagonal), each dividing the next.
pub fn invariant_factors(rows: &[SparseRow], ncols: usize) -> Result<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let mut dense = vec![0; ncols];
            for (c, v) in r {
                dense[*c] = *v;
            }
            dense
        })
        .collect();
    let nrows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry in the trailing block as pivot
        let Some((pr, pc)) = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].unsigned_abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        let p = m[t][t];
        let mut clean = true;
        for i in t + 1..nrows {
            let q = m[i][t] / p;
            for j in t..ncols {
                m[i][j] = m[i][j].checked_sub(q.checked_mul(m[t][j]).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..ncols {
            let q = m[t][j] / p;
            for i in t..nrows {
                m[i][j] = m[i][j].checked_sub(q.checked_mul(m[i][t]).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
            clean &= m[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the block
        if let Some(i) = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| m[i][j] % p != 0)) {
            for j in t..ncols {
                m[t][j] = m[t][j].checked_add(m[i][j]).ok_or(Error::Overflow)?;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    Ok(diag)
}
