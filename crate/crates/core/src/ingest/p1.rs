use super::algebra::{left_regular, AlgebraTable};
use crate::exactmath::{DenseMatrix, Scalar};
use crate::problem::{BimoduleProblem, EquationSystem, IndexPartition, Position, ProblemError};

/// Equations cutting out the span of `vectors` inside the coordinate space on `positions`.
fn annihilator(positions: &[Position], vectors: &[Vec<Scalar>]) -> Vec<Vec<(Position, Scalar)>> {
    let n = positions.len();
    if n == 0 {
        return vec![];
    }
    let rows: Vec<Vec<Scalar>> = if vectors.is_empty() { vec![vec![Scalar::zero(); n]] } else { vectors.to_vec() };
    DenseMatrix::from_rows(rows)
        .nullspace()
        .into_iter()
        .map(|c| positions.iter().copied().zip(c).filter(|(_, v)| !v.is_zero()).collect())
        .collect()
}

/// The bimodule problem of morphisms between projective modules.
///
/// Indices `0..t` (the top copy) and `t..2t` (the bottom copy) each carry the
/// left regular representation; K is `diag(Λ̃, Λ̃)` and M is the top-right
/// block filled with the radical. Classes are the vertices of each copy;
/// top-copy classes are labelled with a prime.
pub fn p1_problem(alg: &AlgebraTable) -> Result<BimoduleProblem, ProblemError> {
    let t = alg.dim();
    let s = alg.vertices.len();
    let regs = left_regular(alg);
    let rad: Vec<&DenseMatrix> = regs[..alg.radical_dim()].iter().collect();
    let mut classes = vec![];
    for copy in 0..2 {
        for v in 0..s {
            let members: Vec<usize> = (0..t).filter(|&k| alg.source(k) == v).map(|k| copy * t + k).collect();
            classes.push(members);
        }
    }
    let part = IndexPartition::new(2 * t, classes)?;
    let copy_of = |i: usize| i / t;
    let local = |i: usize| i % t;
    let labels: Vec<Option<String>> = (0..part.num_classes())
        .map(|c| {
            let i = part.class(c)[0];
            let name = alg.vertices[alg.source(local(i))].clone();
            Some(if copy_of(i) == 0 { format!("{name}'") } else { name })
        })
        .collect();
    let mut k_eqs = EquationSystem::new();
    let mut m_eqs = EquationSystem::new();
    let nc = part.num_classes();
    for ci in 0..nc {
        for cj in 0..nc {
            let (a0, b0) = (part.class(ci)[0], part.class(cj)[0]);
            let k_pos: Vec<Position> = part
                .class(ci)
                .iter()
                .flat_map(|&i| part.class(cj).iter().map(move |&j| (i, j)))
                .filter(|&(i, j)| i < j)
                .collect();
            let m_pos: Vec<Position> =
                part.class(ci).iter().flat_map(|&i| part.class(cj).iter().map(move |&j| (i, j))).collect();
            let k_rows = if copy_of(a0) == copy_of(b0) {
                let vecs: Vec<Vec<Scalar>> =
                    rad.iter().map(|m| k_pos.iter().map(|&(i, j)| m.at(local(i), local(j)).clone()).collect()).collect();
                annihilator(&k_pos, &vecs)
            } else {
                annihilator(&k_pos, &[])
            };
            for r in k_rows {
                k_eqs.push((ci, cj), r);
            }
            let m_rows = if copy_of(a0) == 0 && copy_of(b0) == 1 {
                let vecs: Vec<Vec<Scalar>> =
                    rad.iter().map(|m| m_pos.iter().map(|&(i, j)| m.at(local(i), local(j)).clone()).collect()).collect();
                annihilator(&m_pos, &vecs)
            } else {
                annihilator(&m_pos, &[])
            };
            for r in m_rows {
                m_eqs.push((ci, cj), r);
            }
        }
    }
    let p = BimoduleProblem::new(part, k_eqs, m_eqs, DenseMatrix::zeros(2 * t, 2 * t))?;
    Ok(p.with_labels(labels))
}
