use std::cmp::{Ordering, Reverse};

use super::equations::{EquationSystem, Position};
use super::partition::IndexPartition;
use super::ProblemError;
use crate::exactmath::{try_rref_ordered_sparse, Coeff, NonUnitPivot, Scalar, TriangularSolution};

/// Sort key realizing the position order: `(i,j) ≺ (i',j')` iff `i > i'`, or
/// `i = i'` and `j < j'`.
pub fn order_key(pos: Position) -> (Reverse<usize>, usize) {
    (Reverse(pos.0), pos.1)
}

pub fn cmp_positions(a: Position, b: Position) -> Ordering {
    order_key(a).cmp(&order_key(b))
}

/// The least position of a nonempty set.
pub fn block_order_min(positions: &[Position]) -> Result<Position, ProblemError> {
    positions.iter().copied().min_by_key(|&p| order_key(p)).ok_or(ProblemError::EmptySet)
}

/// Which of the two equation systems a position set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// Strictly upper triangular positions `i < j` (the radical of the algebra).
    K,
    /// All positions.
    M,
}

/// Positions of class pair `(I, J)` in the given space, in increasing order.
pub fn pair_positions(part: &IndexPartition, space: Space, ci: usize, cj: usize) -> Vec<Position> {
    let mut out: Vec<Position> = part
        .class(ci)
        .iter()
        .flat_map(|&i| part.class(cj).iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| space == Space::M || i < j)
        .collect();
    out.sort_by_key(|&p| order_key(p));
    out
}

/// Ordered elimination of one class pair's equations.
pub fn solve_pair<C: Coeff>(
    part: &IndexPartition,
    eqs: &EquationSystem<C>,
    space: Space,
    pair: (usize, usize),
) -> Result<(Vec<Position>, TriangularSolution<C>), NonUnitPivot> {
    let vars = pair_positions(part, space, pair.0, pair.1);
    let rows: Vec<Vec<(usize, C)>> = eqs
        .rows(pair)
        .iter()
        .map(|row| {
            row.iter()
                .map(|(pos, c)| {
                    let k = vars.binary_search_by(|v| cmp_positions(*v, *pos)).expect("row position belongs to its pair");
                    (k, c.clone())
                })
                .collect()
        })
        .collect();
    let sol = try_rref_ordered_sparse(rows, vars.len())?;
    Ok((vars, sol))
}

/// A basis element: pivot with coefficient 1 followed by later support positions.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement<C: Coeff = Scalar> {
    pub classes: (usize, usize),
    pub pivot: Position,
    pub support: Vec<(Position, C)>,
}

impl<C: Coeff> BasisElement<C> {
    pub fn coeff_at(&self, pos: Position) -> Option<&C> {
        self.support.iter().find(|(p, _)| *p == pos).map(|(_, c)| c)
    }
}

/// Triangular bases of the M-space (`a`) and of the radical of K (`b`), both
/// sorted by pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularBases<C: Coeff = Scalar> {
    pub a: Vec<BasisElement<C>>,
    pub b: Vec<BasisElement<C>>,
}

/// The basis of one space together with its equations in reduced form.
fn space_basis<C: Coeff>(
    part: &IndexPartition,
    eqs: &EquationSystem<C>,
    space: Space,
) -> Result<(Vec<BasisElement<C>>, EquationSystem<C>), NonUnitPivot> {
    let n = part.num_classes();
    let mut out = vec![];
    let mut reduced = EquationSystem::new();
    for ci in 0..n {
        for cj in 0..n {
            let (vars, sol) = solve_pair(part, eqs, space, (ci, cj))?;
            for row in sol.normalized_rows() {
                reduced.push((ci, cj), row.into_iter().map(|(k, c)| (vars[k], c)).collect());
            }
            // dependents of each free variable, gathered once
            let mut uses: Vec<Vec<(usize, C)>> = vec![vec![]; vars.len()];
            for (j, expr) in &sol.dependent {
                for (f, c) in expr {
                    uses[*f].push((*j, c.clone()));
                }
            }
            for &f in &sol.free {
                let mut support: Vec<(Position, C)> = vec![(vars[f], C::one())];
                support.extend(uses[f].iter().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (vars[*j], c.clone())));
                support.sort_by(|x, y| cmp_positions(x.0, y.0));
                out.push(BasisElement { classes: (ci, cj), pivot: vars[f], support });
            }
        }
    }
    out.sort_by(|x, y| cmp_positions(x.pivot, y.pivot));
    Ok((out, reduced))
}

pub fn compute_bases<C: Coeff>(
    part: &IndexPartition,
    k_eqs: &EquationSystem<C>,
    m_eqs: &EquationSystem<C>,
) -> Result<TriangularBases<C>, NonUnitPivot> {
    Ok(bases_and_reduced_systems(part, k_eqs, m_eqs)?.0)
}

/// Triangular bases plus the K- and M-systems in reduced form, from one
/// elimination per class pair.
pub fn bases_and_reduced_systems<C: Coeff>(
    part: &IndexPartition,
    k_eqs: &EquationSystem<C>,
    m_eqs: &EquationSystem<C>,
) -> Result<(TriangularBases<C>, EquationSystem<C>, EquationSystem<C>), NonUnitPivot> {
    let (a, m) = space_basis(part, m_eqs, Space::M)?;
    let (b, k) = space_basis(part, k_eqs, Space::K)?;
    Ok((TriangularBases { a, b }, k, m))
}

/// Replace every class pair's rows by its reduced rows (one per dependent position).
pub fn normalize_system<C: Coeff>(
    part: &IndexPartition,
    eqs: &EquationSystem<C>,
    space: Space,
) -> Result<EquationSystem<C>, NonUnitPivot> {
    let mut out = EquationSystem::new();
    let pairs: Vec<(usize, usize)> = {
        let mut v: Vec<_> = eqs.iter().map(|(p, _)| p).collect();
        v.dedup();
        v
    };
    for pair in pairs {
        let (vars, sol) = solve_pair(part, eqs, space, pair)?;
        for row in sol.normalized_rows() {
            out.push(pair, row.into_iter().map(|(k, c)| (vars[k], c)).collect());
        }
    }
    Ok(out)
}
