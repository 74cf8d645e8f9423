//! Canonical forms, isomorphism and decomposition by iterated reduction.

use super::induce::Induced;
use super::step::{apply_step, choose_reduction, theta, ReductionStep};
use super::ReduceError;
use crate::exactmath::{DenseMatrix, Scalar};
use crate::problem::{BimoduleProblem, IndexPartition, Representation};

/// One executed step with the problem it was applied to.
#[derive(Clone, Debug)]
pub struct TraceLink {
    pub parent: BimoduleProblem,
    /// Size vector of the representation the step was applied to.
    pub sizes: Vec<usize>,
    pub step: ReductionStep,
    pub induced: Induced<Scalar>,
}

/// The final problem of a reduction with its size vector.
///
/// `origin[k]` is the original index that final index `k` descends from;
/// the canonical matrix is `H∞` expanded to the multiplicities, read in the
/// original block layout.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub sizes: Vec<usize>,
    pub partition: IndexPartition,
    pub origin: Vec<usize>,
    pub h: DenseMatrix,
    pub multiplicities: Vec<usize>,
    /// `S` with `S⁻¹(M + H)S` equal to the canonical matrix, when requested.
    pub transform: Option<DenseMatrix>,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, o: &Self) -> bool {
        self.sizes == o.sizes
            && self.partition == o.partition
            && self.origin == o.origin
            && self.h == o.h
            && self.multiplicities == o.multiplicities
    }
}

impl CanonicalForm {
    /// `H∞` expanded to the final sizes: the normal form of `M + H`.
    pub fn matrix(&self) -> DenseMatrix {
        let offs = crate::problem::offsets(&self.multiplicities);
        let n = offs[self.multiplicities.len()];
        let mut out = DenseMatrix::zeros(n, n);
        for (i, j, v) in self.h.nonzeros() {
            for a in 0..self.multiplicities[i] {
                out.set(offs[i] + a, offs[j] + a, v.clone());
            }
        }
        out
    }

    /// Multiplicity of a final class.
    pub fn class_multiplicity(&self, c: usize) -> usize {
        self.multiplicities[self.partition.class(c)[0]]
    }
}

/// A full reduction: the canonical form and every step taken.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub form: CanonicalForm,
    pub trace: Vec<TraceLink>,
    pub final_problem: BimoduleProblem,
}

impl Reduction {
    /// Lift a representation of the final problem to the original one.
    pub fn lift(&self, rep: &Representation) -> Result<Representation, ReduceError> {
        let mut cur = rep.clone();
        for link in self.trace.iter().rev() {
            cur = theta(&link.parent, &link.induced, &cur)?;
        }
        Ok(cur)
    }
}

/// The default step budget: `t²·(max n)²` plus one deletion.
pub fn default_step_cap(problem: &BimoduleProblem, rep: &Representation) -> usize {
    let t = problem.t();
    let nmax = rep.sizes().iter().copied().max().unwrap_or(0);
    t * t * nmax * nmax + 1
}

/// Reduce until the M-space vanishes.
pub fn reduce(problem: &BimoduleProblem, rep: &Representation, with_transform: bool) -> Result<Reduction, ReduceError> {
    reduce_capped(problem, rep, with_transform, default_step_cap(problem, rep))
}

pub fn reduce_capped(
    problem: &BimoduleProblem,
    rep: &Representation,
    with_transform: bool,
    cap: usize,
) -> Result<Reduction, ReduceError> {
    let t = problem.t();
    let mut cur_problem = problem.clone();
    let mut cur = rep.clone();
    let mut origin: Vec<usize> = (0..t).collect();
    let mut total = with_transform.then(|| DenseMatrix::identity(rep.dim()));
    let mut trace = vec![];
    while let Some(step) = choose_reduction(&cur_problem, &cur)? {
        if trace.len() == cap {
            return Err(ReduceError::StepLimitExceeded { cap });
        }
        let applied = apply_step(&cur_problem, &cur, &step)?;
        if applied.rep.sizes().contains(&0) {
            return Err(ReduceError::Internal("induced size vector is not sincere".into()));
        }
        origin = applied.induced.origin.iter().map(|&(i, _)| origin[i]).collect();
        if let Some(s) = total.as_mut() {
            *s = s.mul(&applied.transform);
        }
        let sizes = std::mem::replace(&mut cur, applied.rep).sizes().to_vec();
        let next = applied.induced.problem.clone();
        trace.push(TraceLink { parent: cur_problem, sizes, step, induced: applied.induced });
        cur_problem = next;
    }
    let form = CanonicalForm {
        sizes: rep.sizes().to_vec(),
        partition: cur_problem.partition().clone(),
        origin,
        h: cur_problem.h().clone(),
        multiplicities: cur.sizes().to_vec(),
        transform: total,
    };
    Ok(Reduction { form, trace, final_problem: cur_problem })
}

pub fn canonical_form(problem: &BimoduleProblem, rep: &Representation) -> Result<CanonicalForm, ReduceError> {
    Ok(reduce(problem, rep, true)?.form)
}

pub fn is_isomorphic(problem: &BimoduleProblem, a: &Representation, b: &Representation) -> Result<bool, ReduceError> {
    if a.sizes() != b.sizes() {
        return Ok(false);
    }
    Ok(reduce(problem, a, false)?.form == reduce(problem, b, false)?.form)
}

/// An indecomposable summand and how often it occurs.
#[derive(Clone, Debug, PartialEq)]
pub struct Summand {
    pub rep: Representation,
    pub multiplicity: usize,
}

/// Krull–Schmidt decomposition: one summand per final class of positive multiplicity.
pub fn decompose(problem: &BimoduleProblem, rep: &Representation) -> Result<Vec<Summand>, ReduceError> {
    let form = reduce(problem, rep, false)?.form;
    let mut out = vec![];
    for c in 0..form.partition.num_classes() {
        let mult = form.class_multiplicity(c);
        if mult == 0 {
            continue;
        }
        let members = form.partition.class(c);
        let mut sizes = vec![0; problem.t()];
        for &k in members {
            sizes[form.origin[k]] += 1;
        }
        let mat = form.h.select(members, members).sub(&problem.h_expanded(&sizes));
        out.push(Summand { rep: Representation::new(problem, sizes, mat)?, multiplicity: mult });
    }
    Ok(out)
}
