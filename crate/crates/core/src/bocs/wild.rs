//! Breadth-first symbolic reduction in search of a wild configuration.

use std::collections::VecDeque;
use std::fmt;

use super::analysis::{first_arrow_analysis, Branch, Verdict, WildVerdict};
use super::biquiver::to_biquiver_with;
use super::BocsError;
use crate::exactmath::{Coeff, Matrix, Poly1, Poly2, Scalar};
use crate::problem::{cmp_positions, BimoduleProblem, EquationSystem, Row};
use crate::reduce::{induced_problem, EdgeCase, Induced, StepShape};

pub const DEFAULT_MAX_STEPS: usize = 200;

/// A freely parameterized problem: a problem over `k[λ, μ]` and, per class,
/// the forbidden polynomial of its parameter when it has one.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeProblem {
    pub problem: BimoduleProblem<Poly2>,
    pub params: Vec<Option<Poly1>>,
}

impl FreeProblem {
    /// A scalar problem with every vertex trivial.
    pub fn from_scalar(p: &BimoduleProblem<Scalar>) -> Result<Self, BocsError> {
        let lift = |sys: &EquationSystem<Scalar>| {
            let mut out = EquationSystem::new();
            for (pair, row) in sys.iter() {
                let r: Row<Poly2> = row.iter().map(|(pos, c)| (*pos, Poly2::constant(c.clone()))).collect();
                out.push(pair, r);
            }
            out
        };
        let h: Matrix<Poly2> = p.h().map(|c| Poly2::constant(c.clone()));
        let problem = BimoduleProblem::new(p.partition().clone(), lift(p.k_eqs()), lift(p.m_eqs()), h)
            .map_err(crate::reduce::ReduceError::from)?
            .with_labels(p.labels().to_vec());
        Ok(FreeProblem { problem, params: vec![None; p.partition().num_classes()] })
    }

    fn child(&self, induced: Induced<Poly2>, fresh: Option<usize>) -> FreeProblem {
        let part = induced.problem.partition();
        let old = self.problem.partition();
        let params = (0..part.num_classes())
            .map(|c| {
                let oc = old.class_of(induced.origin[part.class(c)[0]].0);
                if fresh == Some(oc) {
                    Some(Poly1::one())
                } else {
                    self.params[oc].clone()
                }
            })
            .collect();
        FreeProblem { problem: induced.problem, params }
    }

    pub fn parameters(&self) -> usize {
        self.params.iter().filter(|p| p.is_some()).count()
    }
}

/// A branch that ended in a layer without solid arrows.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalEnd {
    pub vertices: usize,
    pub parameters: usize,
    pub trace: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// Every branch reached a minimal layer.
    AllMinimal,
    /// The node budget ran out first.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WildOutcome {
    Wild { verdict: WildVerdict, trace: Vec<String>, explored: usize },
    NotDetected { reason: StopReason, minimal_ends: Vec<MinimalEnd>, explored: usize },
}

impl fmt::Display for WildOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WildOutcome::Wild { verdict, trace, explored } => {
                writeln!(f, "{verdict}")?;
                writeln!(f, "explored {explored} layers")?;
                for (k, line) in trace.iter().enumerate() {
                    writeln!(f, "  {}. {line}", k + 1)?;
                }
                Ok(())
            }
            WildOutcome::NotDetected { reason, minimal_ends, explored } => {
                let why = match reason {
                    StopReason::AllMinimal => "every branch reached a minimal layer",
                    StopReason::BudgetExhausted => "step budget exhausted",
                };
                writeln!(f, "not detected: {why}")?;
                writeln!(f, "explored {explored} layers")?;
                for end in minimal_ends {
                    writeln!(
                        f,
                        "  minimal: {} vertices, {} parameters via [{}]",
                        end.vertices,
                        end.parameters,
                        end.trace.join("; ")
                    )?;
                }
                Ok(())
            }
        }
    }
}

/// The K-equation making the first arrow's differential vanish, when its
/// last variable has a unit coefficient.
fn regularization_row(node: &FreeProblem, cofactors: &[(usize, Poly2)], arrow: &str) -> Result<Row<Poly2>, BocsError> {
    let b = &node.problem.bases().b;
    let row: Row<Poly2> = cofactors.iter().map(|(v, q)| (b[*v].pivot, q.clone())).collect();
    let last = row.iter().max_by(|x, y| cmp_positions(x.0, y.0)).expect("nonzero differential");
    if last.1.unit_inverse().is_none() {
        return Err(BocsError::RequiresBasisChange { arrow: arrow.to_string(), cofactor: last.1.clone() });
    }
    Ok(row)
}

fn localize(g: &Option<Poly1>, f: &Poly1) -> Option<Poly1> {
    g.as_ref().map(|g| if f.is_constant() { g.clone() } else { g.mul(&f.monic()) })
}

/// Reduce symbolically, breadth first, until a wild configuration appears,
/// every branch is minimal, or `max_steps` layers have been analyzed.
pub fn detect_wild(problem: &BimoduleProblem<Scalar>, max_steps: usize) -> Result<WildOutcome, BocsError> {
    if !problem.h_is_zero() {
        return Err(BocsError::NonZeroH);
    }
    let root = FreeProblem::from_scalar(problem)?;
    let mut queue: VecDeque<(FreeProblem, Vec<String>)> = VecDeque::from([(root, vec![])]);
    let mut explored = 0;
    let mut ends = vec![];
    while let Some((node, trace)) = queue.pop_front() {
        if explored == max_steps {
            return Ok(WildOutcome::NotDetected { reason: StopReason::BudgetExhausted, minimal_ends: ends, explored });
        }
        explored += 1;
        let bq = to_biquiver_with(&node.problem, &node.params);
        if bq.solid.is_empty() {
            ends.push(MinimalEnd { vertices: bq.vertices.len(), parameters: node.parameters(), trace });
            continue;
        }
        let report = first_arrow_analysis(&bq)?;
        let a = &bq.solid[0];
        let (src, dst) = (bq.vertices[a.src].name.clone(), bq.vertices[a.dst].name.clone());
        let step = |label: String| {
            let mut t = trace.clone();
            t.push(label);
            t
        };
        match report.verdict {
            Verdict::Wild(verdict) => {
                let trace = step(format!("{verdict}"));
                return Ok(WildOutcome::Wild { verdict, trace, explored });
            }
            Verdict::Minimal => unreachable!("a layer with a solid arrow is not minimal"),
            Verdict::Reducible(Branch::LoopOrParameter) => {
                let induced = induced_problem(&node.problem, &StepShape::Parameter)?;
                let child = node.child(induced, Some(a.src));
                queue.push_back((child, step(format!("parameter at {src}"))));
            }
            Verdict::Reducible(Branch::Edge) => {
                for case in EdgeCase::ALL {
                    let induced = induced_problem(&node.problem, &StepShape::Edge(case))?;
                    let child = node.child(induced, None);
                    queue.push_back((child, step(format!("edge {case:?} {src} -> {dst}"))));
                }
            }
            Verdict::Reducible(Branch::Regularize { localize_src, localize_dst }) => {
                let row = regularization_row(&node, &report.cofactors, &a.name)?;
                let induced = induced_problem(&node.problem, &StepShape::Regularization { row })?;
                let (p, q) = a.pivot;
                let new_class = |i: usize| {
                    let k = induced.origin.iter().position(|&(o, _)| o == i).expect("regularization keeps indices");
                    induced.problem.partition().class_of(k)
                };
                let (cs, cd) = (new_class(p), new_class(q));
                let mut child = node.child(induced, None);
                child.params[cs] = localize(&child.params[cs], &localize_src);
                child.params[cd] = localize(&child.params[cd], &localize_dst);
                let label = format!("regularize {} {src} -> {dst} (f = {})", a.name, report.f);
                queue.push_back((child, step(label)));
            }
        }
    }
    Ok(WildOutcome::NotDetected { reason: StopReason::AllMinimal, minimal_ends: ends, explored })
}
