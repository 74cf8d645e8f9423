//! Induced problems: refining the index partition and spawning equations.

use std::collections::BTreeMap;

use super::ReduceError;
use crate::exactmath::{Coeff, Matrix};
use crate::problem::{BimoduleProblem, EquationSystem, IndexPartition, Position, Row};
use crate::weyr::WeyrSpec;

/// Which blocks survive an edge reduction of an `n_P × n_Q` block of rank `r`.
///
/// Rows of every index in P split into `i1` (r rows) and `i2` (the rest);
/// columns of every index in Q split into `j1` (`n_Q − r`) and `j2` (r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeCase {
    /// `r = 0`: only `i2` and `j1`.
    RankZero,
    /// `0 < r < n_P, n_Q`: all four parts.
    Proper,
    /// `r = n_P < n_Q`: `i1`, `j1`, `j2`.
    RowsExhausted,
    /// `r = n_Q < n_P`: `i1`, `i2`, `j2`.
    ColumnsExhausted,
    /// `r = n_P = n_Q`: P and Q merge into one class.
    Merge,
}

impl EdgeCase {
    pub const ALL: [EdgeCase; 5] =
        [EdgeCase::RankZero, EdgeCase::Proper, EdgeCase::RowsExhausted, EdgeCase::ColumnsExhausted, EdgeCase::Merge];

    pub fn classify(r: usize, n_p: usize, n_q: usize) -> EdgeCase {
        match (r == 0, r == n_p, r == n_q) {
            (true, _, _) => EdgeCase::RankZero,
            (false, true, true) => EdgeCase::Merge,
            (false, true, false) => EdgeCase::RowsExhausted,
            (false, false, true) => EdgeCase::ColumnsExhausted,
            (false, false, false) => EdgeCase::Proper,
        }
    }

    /// Existence of `(i1, i2, j1, j2)`.
    pub fn parts(self) -> (bool, bool, bool, bool) {
        match self {
            EdgeCase::RankZero => (false, true, true, false),
            EdgeCase::Proper => (true, true, true, true),
            EdgeCase::RowsExhausted => (true, false, true, true),
            EdgeCase::ColumnsExhausted => (true, true, false, true),
            EdgeCase::Merge => (true, false, false, true),
        }
    }
}

/// The combinatorial content of one reduction step.
#[derive(Clone, Debug, PartialEq)]
pub enum StepShape<C: Coeff> {
    /// Add the given K-equation at the class pair of the first pivot.
    Regularization { row: Row<C> },
    Edge(EdgeCase),
    /// Split the loop class by the slots of a Weyr matrix.
    Loop(WeyrSpec),
    /// Keep the loop class whole and give it a free parameter `λ`.
    Parameter,
    /// Keep only the listed classes.
    Deletion { keep: Vec<usize> },
}

/// An induced problem together with the origin `(parent index, part)` of each new index.
#[derive(Clone, Debug, PartialEq)]
pub struct Induced<C: Coeff> {
    pub problem: BimoduleProblem<C>,
    pub origin: Vec<(usize, usize)>,
}

struct Layout {
    idx: Vec<Vec<usize>>,
    origin: Vec<(usize, usize)>,
    partition: IndexPartition,
}

/// Split every index of class `c` into `parts[c].len()` consecutive indices;
/// new indices are equivalent iff their part keys agree.
fn layout(part: &IndexPartition, parts: &[Vec<usize>]) -> Layout {
    let mut idx = vec![];
    let mut origin = vec![];
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..part.t() {
        let mut mine = vec![];
        for (a, key) in parts[part.class_of(i)].iter().enumerate() {
            mine.push(origin.len());
            groups.entry(*key).or_default().push(origin.len());
            origin.push((i, a));
        }
        idx.push(mine);
    }
    let partition = IndexPartition::new(origin.len(), groups.into_values().collect()).expect("layout partition");
    Layout { idx, origin, partition }
}

fn push_row<C: Coeff>(sys: &mut EquationSystem<C>, part: &IndexPartition, row: Row<C>) {
    if let Some(&((i, j), _)) = row.first() {
        sys.push((part.class_of(i), part.class_of(j)), row);
    }
}

fn spawn<C: Coeff>(
    old: &EquationSystem<C>,
    parts: &[Vec<usize>],
    lay: &Layout,
    out: &mut EquationSystem<C>,
) {
    for ((ci, cj), row) in old.iter() {
        for a in 0..parts[ci].len() {
            for b in 0..parts[cj].len() {
                let r: Row<C> = row.iter().map(|((i, j), c)| ((lay.idx[*i][a], lay.idx[*j][b]), c.clone())).collect();
                push_row(out, &lay.partition, r);
            }
        }
    }
}

/// The induced problem of a step at the first pivot `(p,q)` of `problem`.
pub fn induced_problem<C: Coeff>(
    problem: &BimoduleProblem<C>,
    shape: &StepShape<C>,
) -> Result<Induced<C>, ReduceError> {
    let part = problem.partition();
    if let StepShape::Deletion { keep } = shape {
        return Ok(delete_classes(problem, keep)?);
    }
    let rho = problem.bases().a.first().ok_or(ReduceError::NothingToReduce)?.clone();
    let (p, q) = rho.pivot;
    let (cp, cq) = (part.class_of(p), part.class_of(q));
    let nc = part.num_classes();
    // part keys: old class c keeps key c for its first part; new keys start at nc
    let mut parts: Vec<Vec<usize>> = (0..nc).map(|c| vec![c]).collect();
    let mut nbar: Vec<((usize, usize), C)> = vec![];
    match shape {
        StepShape::Regularization { .. } | StepShape::Deletion { .. } => {}
        StepShape::Parameter => {
            if cp != cq {
                return Err(ReduceError::Internal("parameter step needs a loop".into()));
            }
            let lam = C::parameter().ok_or_else(|| ReduceError::Internal("scalar problems have no parameters".into()))?;
            nbar.push(((0, 0), lam));
        }
        StepShape::Edge(case) => {
            if cp == cq {
                return Err(ReduceError::Internal("edge step needs inequivalent indices".into()));
            }
            let (i1, i2, j1, j2) = case.parts();
            let merged = nc;
            let (mut pp, mut qq) = (vec![], vec![]);
            if i1 {
                pp.push(merged);
            }
            if i2 {
                pp.push(cp);
            }
            if j1 {
                qq.push(cq);
            }
            if j2 {
                qq.push(merged);
            }
            if i1 && j2 {
                nbar.push(((0, qq.len() - 1), C::one()));
            }
            parts[cp] = pp;
            parts[cq] = qq;
        }
        StepShape::Loop(w) => {
            if cp != cq {
                return Err(ReduceError::Internal("loop step needs equivalent indices".into()));
            }
            let slots = w.slots();
            let mut keys: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            let mut pp = vec![];
            for s in &slots {
                let next = nc + keys.len();
                let key = *keys.entry((s.eig, s.jordan)).or_insert(next);
                pp.push(key);
            }
            // the first slot group keeps the old class key so that labels survive when nothing splits
            if slots.len() == 1 {
                pp = vec![cp];
            }
            for (a, s) in slots.iter().enumerate() {
                let lam = C::from_scalar(w.blocks[s.eig].eigenvalue.clone());
                if !lam.is_zero() {
                    nbar.push(((a, a), lam));
                }
                if let Some(b) =
                    slots.iter().position(|u| u.eig == s.eig && u.jordan == s.jordan && u.level == s.level + 1)
                {
                    nbar.push(((a, b), C::one()));
                }
            }
            parts[cp] = pp;
        }
    }
    let lay = layout(part, &parts);
    let mut k = EquationSystem::new();
    let mut m = EquationSystem::new();
    spawn(problem.k_eqs(), &parts, &lay, &mut k);
    spawn(problem.m_eqs(), &parts, &lay, &mut m);
    for a in 0..parts[cp].len() {
        for b in 0..parts[cq].len() {
            push_row(&mut m, &lay.partition, vec![((lay.idx[p][a], lay.idx[q][b]), C::one())]);
        }
    }
    match shape {
        StepShape::Regularization { row } => {
            let r: Row<C> = row.iter().map(|((i, j), c)| ((lay.idx[*i][0], lay.idx[*j][0]), c.clone())).collect();
            push_row(&mut k, &lay.partition, r);
        }
        StepShape::Edge(case) => {
            let (i1, i2, j1, j2) = case.parts();
            for (cls, rep, both) in [(cp, p, i1 && i2), (cq, q, j1 && j2)] {
                if !both {
                    continue;
                }
                for &i in part.class(cls) {
                    if i != rep {
                        push_row(
                            &mut k,
                            &lay.partition,
                            vec![((lay.idx[i][0], lay.idx[i][1]), C::one()), ((lay.idx[rep][0], lay.idx[rep][1]), C::one().negated())],
                        );
                    }
                }
            }
        }
        StepShape::Loop(w) => loop_equations(w, part.class(cp), p, &lay, &mut k),
        _ => {}
    }
    let t = lay.origin.len();
    let mut h = Matrix::zeros(t, t);
    for (i, j, v) in problem.h().nonzeros() {
        for a in 0..parts[part.class_of(i)].len() {
            h.add_at(lay.idx[i][a], lay.idx[j][a], v);
        }
    }
    for ((i, j), c) in &rho.support {
        for ((a, b), v) in &nbar {
            h.add_at(lay.idx[*i][*a], lay.idx[*j][*b], &c.times(v));
        }
    }
    let labels = (0..lay.partition.num_classes())
        .map(|c| {
            let (i, _) = lay.origin[lay.partition.class(c)[0]];
            let oc = part.class_of(i);
            (parts[oc].len() == 1 && parts[oc][0] == oc).then(|| problem.labels()[oc].clone()).flatten()
        })
        .collect();
    let new = BimoduleProblem::new_normalized(lay.partition, k, m, h)?.with_labels(labels);
    Ok(Induced { problem: new, origin: lay.origin })
}

/// Equal and zero entries of the commutant inside each diagonal block of the loop class.
fn loop_equations<C: Coeff>(w: &WeyrSpec, class: &[usize], p: usize, lay: &Layout, k: &mut EquationSystem<C>) {
    let slots = w.slots();
    let mut reps: BTreeMap<(usize, usize, usize, usize), Position> = BTreeMap::new();
    let mut order: Vec<usize> = vec![p];
    order.extend(class.iter().copied().filter(|&i| i != p));
    for &i in &order {
        for (a, sa) in slots.iter().enumerate() {
            for (b, sb) in slots.iter().enumerate().skip(a + 1) {
                let pos = (lay.idx[i][a], lay.idx[i][b]);
                let zero = sa.eig != sb.eig || (sb.level as isize - sa.level as isize) < sb.jordan as isize - sa.jordan as isize;
                if zero {
                    push_row(k, &lay.partition, vec![(pos, C::one())]);
                    continue;
                }
                let key = (sa.eig, sa.jordan, sb.jordan, sb.level - sa.level);
                match reps.get(&key) {
                    None => {
                        reps.insert(key, pos);
                    }
                    Some(&r) => push_row(k, &lay.partition, vec![(pos, C::one()), (r, C::one().negated())]),
                }
            }
        }
    }
}

fn delete_classes<C: Coeff>(problem: &BimoduleProblem<C>, keep: &[usize]) -> Result<Induced<C>, ReduceError> {
    let part = problem.partition();
    let kept: Vec<usize> = (0..part.t()).filter(|&i| keep.contains(&part.class_of(i))).collect();
    let mut new_of = vec![usize::MAX; part.t()];
    for (n, &i) in kept.iter().enumerate() {
        new_of[i] = n;
    }
    let classes: Vec<Vec<usize>> =
        keep.iter().map(|&c| part.class(c).iter().map(|&i| new_of[i]).collect()).collect();
    let new_part = IndexPartition::new(kept.len(), classes)?;
    let mut k = EquationSystem::new();
    let mut m = EquationSystem::new();
    for (old, new) in [(problem.k_eqs(), &mut k), (problem.m_eqs(), &mut m)] {
        for ((ci, cj), row) in old.iter() {
            if keep.contains(&ci) && keep.contains(&cj) {
                let r: Row<C> = row.iter().map(|((i, j), c)| ((new_of[*i], new_of[*j]), c.clone())).collect();
                push_row(new, &new_part, r);
            }
        }
    }
    let h = problem.h().select(&kept, &kept);
    let labels = (0..new_part.num_classes())
        .map(|c| problem.labels()[part.class_of(kept[new_part.class(c)[0]])].clone())
        .collect();
    let new = BimoduleProblem::new(new_part, k, m, h)?.with_labels(labels);
    Ok(Induced { problem: new, origin: kept.into_iter().map(|i| (i, 0)).collect() })
}
