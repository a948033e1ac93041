use std::collections::{BTreeMap, BTreeSet};

use num::Zero;

use super::{ExactMathError, Rational};

type Row = BTreeMap<usize, Rational>;

/// Sparse matrix over the rationals. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Row>,
}

/// Pivot selection used by [`SparseMatrix::rank_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    /// Sweep columns left to right; in each column pivot on the sparsest
    /// remaining row (ties broken by row index).
    #[default]
    SmallestColumnSparsestRow,
    /// Insert rows one at a time, reducing each against the pivots found so
    /// far keyed by leading column.
    IncrementalRows,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: vec![Row::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.entries[i].insert(i, Rational::from_integer(1.into()));
        }
        m
    }

    /// Builds a matrix from sparse rows of `(column, value)` pairs.
    pub fn from_rows(
        cols: usize,
        rows: impl IntoIterator<Item = Vec<(usize, Rational)>>,
    ) -> Result<Self, ExactMathError> {
        let rows: Vec<_> = rows.into_iter().collect();
        let mut m = Self::new(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row {
                m.add_to(r, c, v)?;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(row)
            .and_then(|r| r.get(&col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn check(&self, row: usize, col: usize) -> Result<(), ExactMathError> {
        if row >= self.rows || col >= self.cols {
            return Err(ExactMathError::IndexOutOfBounds {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    pub fn set(&mut self, row: usize, col: usize, v: Rational) -> Result<(), ExactMathError> {
        self.check(row, col)?;
        if v.is_zero() {
            self.entries[row].remove(&col);
        } else {
            self.entries[row].insert(col, v);
        }
        Ok(())
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: Rational) -> Result<(), ExactMathError> {
        let cur = self.get(row, col);
        self.set(row, col, cur + v)
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries[r].iter().map(|(c, v)| (*c, v))
    }

    /// Reorders rows: row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: perm.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Column `c` of `self` becomes column `perm[c]` of the result.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|(c, v)| (perm[*c], v.clone())).collect())
                .collect(),
        }
    }

    pub fn scale_row(&self, r: usize, s: &Rational) -> Self {
        assert!(!s.is_zero());
        let mut out = self.clone();
        for v in out.entries[r].values_mut() {
            *v *= s;
        }
        out
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.rank_with(PivotStrategy::default())
    }

    pub fn rank_with(&self, strategy: PivotStrategy) -> usize {
        match strategy {
            PivotStrategy::SmallestColumnSparsestRow => self.rank_column_sweep(),
            PivotStrategy::IncrementalRows => self.rank_incremental(),
        }
    }

    fn rank_column_sweep(&self) -> usize {
        let mut rows: Vec<Row> = self.entries.clone();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for (r, row) in rows.iter().enumerate() {
            for c in row.keys() {
                col_rows[*c].insert(r);
            }
        }
        let mut used = vec![false; rows.len()];
        let mut rank = 0;
        for col in 0..self.cols {
            let pivot = col_rows[col]
                .iter()
                .copied()
                .filter(|r| !used[*r])
                .min_by_key(|r| (rows[*r].len(), *r));
            let Some(p) = pivot else { continue };
            used[p] = true;
            rank += 1;
            let pivot_row = rows[p].clone();
            let pivot_val = pivot_row[&col].clone();
            let targets: Vec<usize> = col_rows[col]
                .iter()
                .copied()
                .filter(|r| !used[*r])
                .collect();
            for t in targets {
                let factor = &rows[t][&col] / &pivot_val;
                for (c, v) in &pivot_row {
                    let entry = rows[t].entry(*c).or_insert_with(Rational::zero);
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        rows[t].remove(c);
                        col_rows[*c].remove(&t);
                    } else {
                        col_rows[*c].insert(t);
                    }
                }
            }
        }
        rank
    }

    fn rank_incremental(&self) -> usize {
        let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
        for row in &self.entries {
            let mut row = row.clone();
            while let Some((&lead, _)) = row.iter().next() {
                match pivots.get(&lead) {
                    Some(p) => {
                        let factor = &row[&lead] / &p[&lead];
                        for (c, v) in p {
                            let entry = row.entry(*c).or_insert_with(Rational::zero);
                            *entry -= &factor * v;
                            if entry.is_zero() {
                                row.remove(c);
                            }
                        }
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::rat;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn empty_matrix_has_rank_zero() {
        assert_eq!(SparseMatrix::new(0, 0).rank(), 0);
        assert_eq!(SparseMatrix::new(3, 4).rank(), 0);
    }

    #[test]
    fn identity_rank() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn dependent_rows() {
        let m = SparseMatrix::from_rows(
            3,
            vec![
                vec![(0, rat(1)), (1, rat(2))],
                vec![(0, rat(2)), (1, rat(4))],
                vec![(2, rat(1))],
                vec![(0, rat(1)), (1, rat(2)), (2, rat(-3))],
            ],
        )
        .unwrap();
        assert_eq!(m.rank_with(PivotStrategy::SmallestColumnSparsestRow), 2);
        assert_eq!(m.rank_with(PivotStrategy::IncrementalRows), 2);
    }

    #[test]
    fn bounds_are_checked() {
        let mut m = SparseMatrix::new(2, 2);
        assert!(m.set(2, 0, rat(1)).is_err());
        assert!(m.set(0, 2, rat(1)).is_err());
        m.set(0, 0, rat(0)).unwrap();
        assert_eq!(m.nnz(), 0);
    }

    fn arb_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..3, c), r).prop_map(
                move |rows| {
                    SparseMatrix::from_rows(
                        c,
                        rows.into_iter().map(|row| {
                            row.into_iter()
                                .enumerate()
                                .map(|(j, v)| (j, rat(v)))
                                .collect()
                        }),
                    )
                    .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn strategies_agree(m in arb_matrix()) {
            prop_assert_eq!(
                m.rank_with(PivotStrategy::SmallestColumnSparsestRow),
                m.rank_with(PivotStrategy::IncrementalRows)
            );
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(m in arb_matrix(), seed in any::<u64>(), s in 1i64..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rp: Vec<usize> = (0..m.rows()).collect();
            rp.shuffle(&mut rng);
            let mut cp: Vec<usize> = (0..m.cols()).collect();
            cp.shuffle(&mut rng);
            let base = m.rank();
            prop_assert_eq!(m.permute_rows(&rp).rank(), base);
            prop_assert_eq!(m.permute_cols(&cp).rank(), base);
            prop_assert_eq!(m.scale_row(0, &rat(-s)).rank(), base);
        }
    }
}
