//! Ordered elimination with a unique choice of free indeterminates.
//!
//! Variables are scanned in order; a variable stays free unless the system
//! forces it, and every dependent variable is expressed over strictly earlier
//! free ones. This is ordinary RREF with the column order reversed.

use thiserror::Error;

use super::coeff::Coeff;
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TriangularSolution<C: Coeff = Scalar> {
    /// Number of variables.
    pub n: usize,
    /// Free variables, increasing.
    pub free: Vec<usize>,
    /// Dependent variable `j` with `z_j = Σ c·z_f` over earlier free `f`; increasing in `j`.
    pub dependent: Vec<(usize, Vec<(usize, C)>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("variable {var} is forced only through a non-unit coefficient")]
pub struct NonUnitPivot {
    pub var: usize,
}

impl<C: Coeff> TriangularSolution<C> {
    /// The solution vector with the given free variable set to 1 and the others to 0.
    pub fn basis_vector(&self, free_var: usize) -> Vec<C> {
        let mut v = vec![C::zero(); self.n];
        v[free_var] = C::one();
        for (j, expr) in &self.dependent {
            if let Some((_, c)) = expr.iter().find(|(f, _)| *f == free_var) {
                v[*j] = c.clone();
            }
        }
        v
    }

    /// The equations in normalized form `z_j - Σ c·z_f = 0`, one per dependent variable.
    pub fn normalized_rows(&self) -> Vec<Vec<(usize, C)>> {
        self.dependent
            .iter()
            .map(|(j, expr)| {
                let mut row = vec![(*j, C::one())];
                row.extend(expr.iter().map(|(f, c)| (*f, c.negated())));
                row
            })
            .collect()
    }
}

/// Ordered elimination over scalars; never fails.
pub fn rref_ordered(rows: &[Vec<Scalar>], n: usize) -> TriangularSolution<Scalar> {
    try_rref_ordered(rows, n).expect("every nonzero scalar is a unit")
}

/// Ordered elimination over any coefficient ring, requiring unit pivots.
pub fn try_rref_ordered<C: Coeff>(rows: &[Vec<C>], n: usize) -> Result<TriangularSolution<C>, NonUnitPivot> {
    for r in rows {
        assert_eq!(r.len(), n, "row length must equal the number of variables");
    }
    let sparse = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
        .collect();
    try_rref_ordered_sparse(sparse, n)
}

/// `row -= f·pivot` on rows sorted by variable.
fn sub_multiple<C: Coeff>(row: &[(usize, C)], f: &C, pivot: &[(usize, C)]) -> Vec<(usize, C)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ka = row.get(a).map_or(usize::MAX, |x| x.0);
        let kb = pivot.get(b).map_or(usize::MAX, |x| x.0);
        let (k, v) = if ka < kb {
            a += 1;
            (ka, row[a - 1].1.clone())
        } else if kb < ka {
            b += 1;
            (kb, f.times(&pivot[b - 1].1).negated())
        } else {
            a += 1;
            b += 1;
            (ka, row[a - 1].1.minus(&f.times(&pivot[b - 1].1)))
        };
        if !v.is_zero() {
            out.push((k, v));
        }
    }
    out
}

/// [`try_rref_ordered`] on rows given as `(variable, coefficient)` lists.
pub fn try_rref_ordered_sparse<C: Coeff>(
    rows: Vec<Vec<(usize, C)>>,
    n: usize,
) -> Result<TriangularSolution<C>, NonUnitPivot> {
    let mut m: Vec<Vec<(usize, C)>> = rows
        .into_iter()
        .map(|mut r| {
            r.sort_by_key(|x| x.0);
            let mut merged: Vec<(usize, C)> = vec![];
            for (k, c) in r {
                assert!(k < n, "variable index out of range");
                match merged.last_mut() {
                    Some(last) if last.0 == k => last.1 = last.1.plus(&c),
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|x| !x.1.is_zero());
            merged
        })
        .filter(|r| !r.is_empty())
        .collect();
    let at = |r: &[(usize, C)], c: usize| r.binary_search_by_key(&c, |x| x.0).ok().map(|i| r[i].1.clone());
    let mut pivot_of_row: Vec<usize> = vec![];
    let mut done = 0;
    for c in (0..n).rev() {
        let cands: Vec<usize> = (done..m.len()).filter(|&i| at(&m[i], c).is_some()).collect();
        if cands.is_empty() {
            continue;
        }
        let Some(&pr) = cands.iter().find(|&&i| at(&m[i], c).unwrap().unit_inverse().is_some()) else {
            return Err(NonUnitPivot { var: c });
        };
        m.swap(done, pr);
        let inv = at(&m[done], c).unwrap().unit_inverse().unwrap();
        if inv != C::one() {
            for x in m[done].iter_mut() {
                x.1 = x.1.times(&inv);
            }
        }
        for i in 0..m.len() {
            if i == done {
                continue;
            }
            let Some(f) = at(&m[i], c) else { continue };
            m[i] = sub_multiple(&m[i], &f, &m[done]);
        }
        pivot_of_row.push(c);
        done += 1;
    }
    let mut dependent: Vec<(usize, Vec<(usize, C)>)> = pivot_of_row
        .iter()
        .enumerate()
        .map(|(r, &c)| (c, m[r].iter().filter(|x| x.0 < c).map(|(k, v)| (*k, v.negated())).collect()))
        .collect();
    dependent.sort_by_key(|d| d.0);
    let mut is_pivot = vec![false; n];
    for &c in &pivot_of_row {
        is_pivot[c] = true;
    }
    let free = (0..n).filter(|&v| !is_pivot[v]).collect();
    Ok(TriangularSolution { n, free, dependent })
}
