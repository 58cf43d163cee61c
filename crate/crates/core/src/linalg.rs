//! Sparse exact linear algebra over the rationals.
//!
//! Everything here is reduced row echelon form maintained incrementally:
//! rows are kept fully reduced against each other, pivots are the leading
//! (smallest) column of each row, and the pivot entry is normalized to one.
//! Column order therefore fixes pivoting, which makes every result
//! deterministic.

use std::collections::BTreeMap;

use crate::scalar::Rational;

/// Sparse vector: sorted `(column, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Builds a sparse vector from unsorted entries, merging duplicates.
pub fn sparse_from_entries(mut entries: Vec<(usize, Rational)>) -> SparseVec {
    entries.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a + k·b`.
pub fn axpy(a: &SparseVec, k: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, k * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(k * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SparseVec, k: &Rational) -> SparseVec {
    if k.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(c, x)| (*c, x * k)).collect()
}

fn entry(v: &SparseVec, col: usize) -> Option<&Rational> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &v[i].1)
}

/// Incrementally maintained reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    by_pivot: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(vectors: I) -> Self {
        let mut e = Echelon::new();
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_pivot.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.by_pivot.contains_key(&col)
    }

    /// Row whose pivot is `col`.
    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.by_pivot.get(&col).map(|&r| &self.rows[r])
    }

    /// Rows sorted by pivot column: the canonical basis of the row space.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.by_pivot.values().map(|&r| self.rows[r].clone()).collect()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        // Rows are mutually reduced, so one pass over pivots present in `cur`
        // suffices; eliminating one pivot never reintroduces another.
        let hits: Vec<(usize, Rational)> = cur
            .iter()
            .filter(|(c, _)| self.by_pivot.contains_key(c))
            .cloned()
            .collect();
        for (c, x) in hits {
            let row = &self.rows[self.by_pivot[&c]];
            cur = axpy(&cur, &-&x, row);
        }
        cur
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space. Returns `false` when `v` was dependent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((pivot, lead)) = r.first().cloned() else {
            return false;
        };
        let r = scale(&r, &lead.recip());
        for row in &mut self.rows {
            if let Some(x) = entry(row, pivot).cloned() {
                *row = axpy(row, &-&x, &r);
            }
        }
        self.by_pivot.insert(pivot, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Basis of `{x : row·x = 0 for every row}` restricted to columns `< ncols`.
    pub fn null_space(&self, ncols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !self.is_pivot(*c)) {
            let mut v = vec![(free, Rational::one())];
            for (&p, &r) in &self.by_pivot {
                if let Some(x) = entry(&self.rows[r], free) {
                    v.push((p, -x));
                }
            }
            out.push(sparse_from_entries(v));
        }
        out
    }
}

/// Outcome of solving `A x = b` with free variables set to zero.
#[derive(Clone, Debug)]
pub enum Solution {
    Consistent {
        /// One particular solution (free variables zero).
        values: Vec<Rational>,
        free: Vec<usize>,
    },
    /// Index of an equation whose reduction became `0 = c ≠ 0`.
    Inconsistent { witness: usize },
}

/// Solves a sparse system whose rows are `(coefficients, rhs)`.
///
/// Columns are eliminated in index order; the right-hand side lives in a
/// column past every variable, so it can only become a pivot for an
/// inconsistent row.
pub fn solve(ncols: usize, rows: &[(SparseVec, Rational)]) -> Solution {
    let mut ech = Echelon::new();
    for (k, (coefs, rhs)) in rows.iter().enumerate() {
        let mut v = coefs.clone();
        if !rhs.is_zero() {
            v.push((ncols, rhs.clone()));
        }
        ech.insert(v);
        if ech.is_pivot(ncols) {
            return Solution::Inconsistent { witness: k };
        }
    }
    let mut values = vec![Rational::zero(); ncols];
    for p in ech.pivots().collect::<Vec<_>>() {
        let row = ech.pivot_row(p).unwrap();
        values[p] = entry(row, ncols).cloned().unwrap_or_else(Rational::zero);
    }
    let free = (0..ncols).filter(|c| !ech.is_pivot(*c)).collect();
    Solution::Consistent { values, free }
}

/// Coordinates of `target` in the span of `vectors`, if it lies there.
pub fn express_in_span(vectors: &[SparseVec], target: &SparseVec) -> Option<Vec<Rational>> {
    // Columns of the system are the vectors; rows are ambient coordinates.
    let mut by_coord: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (k, v) in vectors.iter().enumerate() {
        for (c, x) in v {
            by_coord.entry(*c).or_default().push((k, x.clone()));
        }
    }
    for (c, _) in target {
        by_coord.entry(*c).or_default();
    }
    let rows: Vec<(SparseVec, Rational)> = by_coord
        .into_iter()
        .map(|(c, coefs)| {
            let rhs = entry(target, c).cloned().unwrap_or_else(Rational::zero);
            (sparse_from_entries(coefs), rhs)
        })
        .collect();
    match solve(vectors.len(), &rows) {
        Solution::Consistent { values, .. } => Some(values),
        Solution::Inconsistent { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        sparse_from_entries(entries.iter().map(|(c, x)| (*c, Rational::from(*x))).collect())
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 2)])));
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 2), (1, 4)])));
        assert!(!e.contains(&v(&[(2, 1)])));
        // fully reduced: row with pivot 0 has no entry in column 1
        assert!(entry(e.pivot_row(0).unwrap(), 1).is_none());
    }

    #[test]
    fn null_space_is_annihilated() {
        let e = Echelon::from_vectors([v(&[(0, 1), (1, 1)]), v(&[(2, 1), (3, -1)])]);
        let ns = e.null_space(4);
        assert_eq!(ns.len(), 2);
        for n in &ns {
            for row in e.basis() {
                let dot: Rational = row
                    .iter()
                    .map(|(c, x)| x * &entry(n, *c).cloned().unwrap_or_else(Rational::zero))
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let rows = vec![
            (v(&[(0, 1), (1, 1)]), Rational::from(1)),
            (v(&[(0, 2), (1, 2)]), Rational::from(3)),
        ];
        assert!(matches!(solve(2, &rows), Solution::Inconsistent { witness: 1 }));
        let rows = vec![(v(&[(0, 1), (1, 1)]), Rational::from(1))];
        match solve(2, &rows) {
            Solution::Consistent { values, free } => {
                assert_eq!(values, vec![Rational::from(1), Rational::zero()]);
                assert_eq!(free, vec![1]);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn express_in_span_finds_coordinates() {
        let basis = vec![v(&[(0, 1), (3, 1)]), v(&[(1, 1), (2, -1)])];
        let c = express_in_span(&basis, &v(&[(0, 2), (3, 2), (1, -1), (2, 1)])).unwrap();
        assert_eq!(c, vec![Rational::from(2), Rational::from(-1)]);
        assert!(express_in_span(&basis, &v(&[(0, 1)])).is_none());
    }
}
