//! Choosing and applying one reduction step to a concrete representation.

use std::fmt;

use super::induce::{induced_problem, EdgeCase, Induced, StepShape};
use super::ReduceError;
use crate::exactmath::{Coeff, DenseMatrix, Scalar};
use crate::problem::{in_k_blockwise, offsets, BimoduleProblem, Position, Representation, Row};
use crate::weyr::{weyr_of, WeyrSpec};

/// The linear form on K-entries at the class pair of `(p,q)` that the
/// derivation induces on the `(p,q)` entry.
pub fn eq8_row<C: Coeff>(problem: &BimoduleProblem<C>, p: usize, q: usize) -> Row<C> {
    let part = problem.partition();
    let h = problem.h();
    let mut row: Row<C> = vec![];
    for l in p + 1..problem.t() {
        if part.equivalent(l, q) && !h.at(l, q).is_zero() {
            row.push(((p, l), h.at(l, q).acting_right()));
        }
    }
    for l in 0..q {
        if part.equivalent(l, p) && !h.at(p, l).is_zero() {
            let c = h.at(p, l).negated();
            match row.iter_mut().find(|(pos, _)| *pos == (l, q)) {
                Some((_, v)) => *v = v.plus(&c),
                None => row.push(((l, q), c)),
            }
        }
    }
    row.retain(|(_, c)| !c.is_zero());
    row
}

fn eval_row(row: &Row<Scalar>, support: &[(Position, Scalar)]) -> Scalar {
    let mut acc = Scalar::zero();
    for (pos, c) in row {
        if let Some((_, v)) = support.iter().find(|(s, _)| s == pos) {
            acc = &acc + &(c * v);
        }
    }
    acc
}

/// The first radical K-basis element at the class pair of `(p,q)` on which the
/// induced form does not vanish, scaled so the form takes the value 1.
pub fn regularizing_element(problem: &BimoduleProblem, p: usize, q: usize) -> Option<Vec<(Position, Scalar)>> {
    let part = problem.partition();
    let pair = (part.class_of(p), part.class_of(q));
    let row = eq8_row(problem, p, q);
    if row.is_empty() {
        return None;
    }
    problem.bases().b.iter().filter(|z| z.classes == pair).find_map(|z| {
        let v = eval_row(&row, &z.support);
        let inv = v.inv()?;
        Some(z.support.iter().map(|(pos, c)| (*pos, c * &inv)).collect())
    })
}

/// Whether the K-equations already force the induced form to vanish.
pub fn implies_eq8(problem: &BimoduleProblem, p: usize, q: usize) -> bool {
    regularizing_element(problem, p, q).is_none()
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepKind {
    Deletion,
    Regularization,
    Edge { rank: usize, case: EdgeCase },
    Loop(WeyrSpec),
}

#[derive(Clone, Debug, PartialEq)]
enum Local {
    Identity,
    /// `S = I + x⁰ ⊗ M_pq`.
    Unipotent { x0: Vec<(Position, Scalar)>, block: DenseMatrix },
    /// `S` is block diagonal with the given block on every index of a class.
    Diagonal(Vec<(usize, DenseMatrix)>),
}

/// One step of the reduction: its kind, the first pivot, the chosen normal
/// block `N̄` (absent for deletions and regularizations) and the local
/// transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub pivot: Option<Position>,
    pub classes: Option<(usize, usize)>,
    pub block: Option<DenseMatrix>,
    pub shape: StepShape<Scalar>,
    local: Local,
    /// Sizes of the parts each class splits into.
    part_sizes: Vec<Vec<usize>>,
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StepKind::Deletion => return write!(f, "delete classes of size 0"),
            StepKind::Regularization => write!(f, "regularization")?,
            StepKind::Edge { rank, case } => write!(f, "edge rank {rank} ({case:?})")?,
            StepKind::Loop(w) => {
                let eigs: Vec<String> =
                    w.blocks.iter().map(|b| format!("{}^{:?}", b.eigenvalue, b.e)).collect();
                write!(f, "loop weyr [{}]", eigs.join(", "))?
            }
        }
        if let (Some((p, q)), Some((cp, cq))) = (self.pivot, self.classes) {
            write!(f, " at ({}, {}) classes ({}, {})", p + 1, q + 1, cp + 1, cq + 1)?;
        }
        Ok(())
    }
}

/// Decide the next step, or `None` when the M-space is exhausted.
pub fn choose_reduction(problem: &BimoduleProblem, rep: &Representation) -> Result<Option<ReductionStep>, ReduceError> {
    let part = problem.partition();
    if rep.sizes().len() != problem.t() {
        return Err(ReduceError::ShapeMismatch);
    }
    let n_of = |c: usize| rep.sizes()[part.class(c)[0]];
    let nc = part.num_classes();
    let mut part_sizes: Vec<Vec<usize>> = (0..nc).map(|c| vec![n_of(c)]).collect();
    if (0..nc).any(|c| n_of(c) == 0) {
        let keep: Vec<usize> = (0..nc).filter(|&c| n_of(c) > 0).collect();
        return Ok(Some(ReductionStep {
            kind: StepKind::Deletion,
            pivot: None,
            classes: None,
            block: None,
            shape: StepShape::Deletion { keep },
            local: Local::Identity,
            part_sizes,
        }));
    }
    let Some(rho) = problem.bases().a.first() else { return Ok(None) };
    let (p, q) = rho.pivot;
    let (cp, cq) = (part.class_of(p), part.class_of(q));
    let mpq = rep.block(p, q);
    if let Some(x0) = regularizing_element(problem, p, q) {
        return Ok(Some(ReductionStep {
            kind: StepKind::Regularization,
            pivot: Some((p, q)),
            classes: Some((cp, cq)),
            block: None,
            shape: StepShape::Regularization { row: eq8_row(problem, p, q) },
            local: Local::Unipotent { x0, block: mpq },
            part_sizes,
        }));
    }
    if cp != cq {
        let (np, nq) = (n_of(cp), n_of(cq));
        let (_, pivots) = mpq.rref();
        let r = pivots.len();
        let mut sq = DenseMatrix::zeros(nq, nq);
        for (k, v) in mpq.nullspace().into_iter().enumerate() {
            for (i, x) in v.into_iter().enumerate() {
                sq.set(i, k, x);
            }
        }
        for (k, &c) in pivots.iter().enumerate() {
            sq.set(c, nq - r + k, Scalar::one());
        }
        let mut sp = DenseMatrix::zeros(np, np);
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..np {
                sp.set(i, k, mpq.at(i, c).clone());
            }
        }
        let mut filled = r;
        for e in 0..np {
            if filled == np {
                break;
            }
            let mut trial = sp.clone();
            trial.set(e, filled, Scalar::one());
            if trial.submatrix(0, 0, np, filled + 1).rank_exact() == filled + 1 {
                sp = trial;
                filled += 1;
            }
        }
        let case = EdgeCase::classify(r, np, nq);
        let mut nbar = DenseMatrix::zeros(np, nq);
        for k in 0..r {
            nbar.set(k, nq - r + k, Scalar::one());
        }
        let (i1, i2, j1, j2) = case.parts();
        part_sizes[cp] = [(i1, r), (i2, np - r)].into_iter().filter(|x| x.0).map(|x| x.1).collect();
        part_sizes[cq] = [(j1, nq - r), (j2, r)].into_iter().filter(|x| x.0).map(|x| x.1).collect();
        return Ok(Some(ReductionStep {
            kind: StepKind::Edge { rank: r, case },
            pivot: Some((p, q)),
            classes: Some((cp, cq)),
            block: Some(nbar),
            shape: StepShape::Edge(case),
            local: Local::Diagonal(vec![(cp, sp), (cq, sq)]),
            part_sizes,
        }));
    }
    let (w, s) = weyr_of(&mpq)?;
    part_sizes[cp] = w.slots().iter().map(|s| s.size).collect();
    Ok(Some(ReductionStep {
        kind: StepKind::Loop(w.clone()),
        pivot: Some((p, q)),
        classes: Some((cp, cq)),
        block: Some(w.matrix()),
        shape: StepShape::Loop(w),
        local: Local::Diagonal(vec![(cp, s)]),
        part_sizes,
    }))
}

/// The result of applying a step: the induced problem, the reduced
/// representation over it and the transformation `S` with
/// `S⁻¹(M + H)S = M' + H'`.
#[derive(Clone, Debug)]
pub struct Applied {
    pub induced: Induced<Scalar>,
    pub rep: Representation,
    pub transform: DenseMatrix,
}

fn local_transforms(problem: &BimoduleProblem, rep: &Representation, local: &Local) -> (DenseMatrix, DenseMatrix) {
    let n = rep.dim();
    let offs = offsets(rep.sizes());
    match local {
        Local::Identity => (DenseMatrix::identity(n), DenseMatrix::identity(n)),
        Local::Unipotent { x0, block } => {
            let mut x = DenseMatrix::zeros(n, n);
            for ((i, j), c) in x0 {
                x.set_submatrix(offs[*i], offs[*j], &block.scale(c));
            }
            // x is strictly block upper triangular, so the series terminates
            let mut inv = DenseMatrix::identity(n);
            let mut term = DenseMatrix::identity(n);
            let neg = x.neg();
            loop {
                term = term.mul(&neg);
                if term.is_zero() {
                    break;
                }
                inv = inv.add(&term);
            }
            (DenseMatrix::identity(n).add(&x), inv)
        }
        Local::Diagonal(blocks) => {
            let mut s = DenseMatrix::identity(n);
            let mut si = DenseMatrix::identity(n);
            for (c, b) in blocks {
                let bi = b.inverse().expect("local transform is invertible");
                for &i in problem.partition().class(*c) {
                    s.set_submatrix(offs[i], offs[i], b);
                    si.set_submatrix(offs[i], offs[i], &bi);
                }
            }
            (s, si)
        }
    }
}

/// Apply a step chosen by [`choose_reduction`] for the same representation.
pub fn apply_step(problem: &BimoduleProblem, rep: &Representation, step: &ReductionStep) -> Result<Applied, ReduceError> {
    let induced = induced_problem(problem, &step.shape)?;
    let part = problem.partition();
    let sizes: Vec<usize> =
        induced.origin.iter().map(|&(i, a)| step.part_sizes[part.class_of(i)][a]).collect();
    let (s, s_inv) = local_transforms(problem, rep, &step.local);
    debug_assert!(in_k_blockwise(problem, rep.sizes(), rep.sizes(), &s));
    let m_new = s_inv.mul(&rep.with_h(problem)).mul(&s).sub(&induced.problem.h_expanded(&sizes));
    let rep = Representation::new(&induced.problem, sizes, m_new)
        .map_err(|e| ReduceError::Internal(format!("reduced matrix left the induced M-space: {e}")))?;
    Ok(Applied { induced, rep, transform: s })
}

/// Lift a representation of an induced problem back to the parent problem.
pub fn theta(parent: &BimoduleProblem, induced: &Induced<Scalar>, rep: &Representation) -> Result<Representation, ReduceError> {
    if rep.sizes().len() != induced.origin.len() {
        return Err(ReduceError::ShapeMismatch);
    }
    let mut sizes = vec![0; parent.t()];
    for (k, &(i, _)) in induced.origin.iter().enumerate() {
        sizes[i] += rep.sizes()[k];
    }
    let mat = rep.with_h(&induced.problem).sub(&parent.h_expanded(&sizes));
    Ok(Representation::new(parent, sizes, mat)?)
}

