use std::collections::BTreeMap;

use crate::exactmath::{Coeff, Scalar};

/// A matrix position `(row index, column index)`, zero-based.
pub type Position = (usize, usize);

/// One homogeneous linear equation `Σ c·x_pos = 0`.
pub type Row<C = Scalar> = Vec<(Position, C)>;

/// Homogeneous linear equations grouped by the ordered class pair they constrain.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSystem<C: Coeff = Scalar> {
    rows: BTreeMap<(usize, usize), Vec<Row<C>>>,
}

impl<C: Coeff> Default for EquationSystem<C> {
    fn default() -> Self {
        EquationSystem { rows: BTreeMap::new() }
    }
}

impl<C: Coeff> EquationSystem<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append a row for class pair `pair`; all-zero rows are dropped.
    pub fn push(&mut self, pair: (usize, usize), row: Row<C>) {
        let row: Row<C> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !row.is_empty() {
            self.rows.entry(pair).or_default().push(row);
        }
    }

    pub fn rows(&self, pair: (usize, usize)) -> &[Row<C>] {
        self.rows.get(&pair).map_or(&[], |v| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Row<C>)> {
        self.rows.iter().flat_map(|(p, rs)| rs.iter().map(move |r| (*p, r)))
    }

    pub fn len(&self) -> usize {
        self.rows.values().map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Evaluate every row on the entries of `x` given by `value`.
    pub fn satisfied_by(&self, value: impl Fn(Position) -> C) -> Option<Position> {
        for (_, row) in self.iter() {
            let s = row.iter().fold(C::zero(), |acc, (pos, c)| acc.plus(&c.times(&value(*pos))));
            if !s.is_zero() {
                return Some(row[0].0);
            }
        }
        None
    }
}
