use super::*;
use crate::exactmath::{DenseMatrix, Poly1, Scalar};
use crate::problem::{validate_problem, BimoduleProblem, ProblemSpec, Representation};
use crate::reduce::{apply_step, choose_reduction};

fn s(x: i64) -> Scalar {
    Scalar::from(x)
}

fn zero_rows(positions: &[(usize, usize)]) -> Vec<Vec<((usize, usize), Scalar)>> {
    positions.iter().map(|&p| vec![(p, s(1))]).collect()
}

fn problem(t: usize, classes: Vec<Vec<usize>>, k_zero: &[(usize, usize)], m_zero: &[(usize, usize)]) -> BimoduleProblem {
    let mut spec = ProblemSpec::new(t, classes);
    spec.k_rows = zero_rows(k_zero);
    spec.m_rows = zero_rows(m_zero);
    validate_problem(spec).unwrap()
}

fn two_loops() -> BimoduleProblem {
    problem(2, vec![vec![0, 1]], &[(0, 1)], &[(0, 1), (1, 0)])
}

fn one_loop() -> BimoduleProblem {
    problem(1, vec![vec![0]], &[], &[])
}

fn loop_and_edge(k_free: bool) -> BimoduleProblem {
    let k: &[(usize, usize)] = if k_free { &[] } else { &[(0, 1)] };
    problem(2, vec![vec![0], vec![1]], k, &[(1, 0), (1, 1)])
}

/// `R₀` and `N₀ + H` at the given values of the dual indeterminates.
fn r0_n0(p: &BimoduleProblem, x: &[Scalar], z: &[Scalar], e: &[Scalar]) -> (DenseMatrix, DenseMatrix) {
    let t = p.t();
    let mut r = DenseMatrix::zeros(t, t);
    for i in 0..t {
        r.set(i, i, e[p.partition().class_of(i)].clone());
    }
    for (u, zeta) in p.bases().b.iter().enumerate() {
        r = r.add(&p.basis_matrix(&zeta.support).scale(&x[u]));
    }
    let mut n = p.h().clone();
    for (w, rho) in p.bases().a.iter().enumerate() {
        n = n.add(&p.basis_matrix(&rho.support).scale(&z[w]));
    }
    (r, n)
}

/// Every differential agrees with the matrix products it abbreviates.
fn cross_check(p: &BimoduleProblem, seed: i64) {
    let bq = to_biquiver(p);
    let val = |k: usize, off: i64| s(((k as i64 + 1) * 7 + seed * 3 + off) % 11 - 5);
    let x: Vec<Scalar> = (0..bq.dotted.len()).map(|k| val(k, 1)).collect();
    let z: Vec<Scalar> = (0..bq.solid.len()).map(|k| val(k, 4)).collect();
    let e: Vec<Scalar> = (0..bq.vertices.len()).map(|k| val(k, 9)).collect();
    let (r, n) = r0_n0(p, &x, &z, &e);
    let rn = r.mul(&n).sub(&n.mul(&r));
    let rr = r.mul(&r);
    let zero = Scalar::zero();
    for (w, a) in bq.solid.iter().enumerate() {
        let (pp, q) = a.pivot;
        let direct = &(rn.at(pp, q) - &(r.at(pp, pp) * n.at(pp, q))) + &(n.at(pp, q) * r.at(q, q));
        assert_eq!(bq.delta1[w].eval(&x, &z, &zero, &zero), direct, "δ of {}", a.name);
    }
    for (u, v) in bq.dotted.iter().enumerate() {
        let (pp, q) = v.pivot;
        let direct = &(rr.at(pp, q) - &(r.at(pp, pp) * r.at(pp, q))) - &(r.at(pp, q) * r.at(q, q));
        assert_eq!(bq.delta2[u].eval(&x, &z, &zero, &zero), direct, "δ of {}", v.name);
    }
    check_layer(&bq).unwrap();
}

#[test]
fn differentials_match_matrix_products_after_reductions() {
    let p = problem(3, vec![vec![0, 2], vec![1]], &[], &[(1, 0), (2, 0), (2, 1)]);
    let mut m = DenseMatrix::zeros(6, 6);
    for (i, j, v) in [(0, 0, 1), (0, 1, 2), (1, 2, 1), (0, 4, 3), (1, 5, 1), (2, 3, 1), (4, 4, 1), (5, 5, 1), (4, 5, 2)] {
        m.set(i, j, s(v));
    }
    let mut rep = Representation::new(&p, vec![2, 2, 2], m).unwrap();
    let mut cur = p;
    let mut seen_h = false;
    for k in 0..6 {
        cross_check(&cur, k);
        seen_h |= !cur.h_is_zero();
        let Some(step) = choose_reduction(&cur, &rep).unwrap() else { break };
        let applied = apply_step(&cur, &rep, &step).unwrap();
        cur = applied.induced.problem;
        rep = applied.rep;
    }
    assert!(seen_h, "the walk should reach a problem with H ≠ 0");
}

#[test]
fn problem_without_radical_has_zero_differentials() {
    let bq = to_biquiver(&one_loop());
    assert!(bq.dotted.is_empty());
    assert!(bq.delta1.iter().all(|d| d.is_zero()));
    let rep = check_layer(&bq).unwrap();
    assert_eq!((rep.solid, rep.dotted, rep.zero_differentials), (1, 0, 1));
}

#[test]
fn loop_plus_edge_differential() {
    // after the loop gets a parameter, the edge's differential is −λ·v1
    let fp = FreeProblem::from_scalar(&loop_and_edge(true)).unwrap();
    let induced = crate::reduce::induced_problem(&fp.problem, &crate::reduce::StepShape::Parameter).unwrap();
    let bq = to_biquiver_with(&induced.problem, &[Some(Poly1::one()), None]);
    assert_eq!(bq.delta1[0].render(&bq.solid, &bq.dotted), "(-λ)v1");
    let r = first_arrow_analysis(&bq).unwrap();
    assert_eq!(r.case, ArrowCase::A2);
    assert!(matches!(r.verdict, Verdict::Reducible(Branch::Regularize { .. })));
}

fn synthetic(p_param: bool, q_param: bool, same: bool, coeff: Option<Poly2>) -> Biquiver {
    let vertex = |name: &str, param: bool| Vertex {
        name: name.into(),
        parameter: param.then(|| Parameter { name: "λ".into(), forbidden: Poly1::one() }),
    };
    let mut vertices = vec![vertex("P", p_param)];
    if !same {
        vertices.push(vertex("Q", q_param));
    }
    let dst = if same { 0 } else { 1 };
    let a = BiArrow { name: "a1".into(), src: 0, dst, pivot: (0, 1) };
    let v = BiArrow { name: "v1".into(), src: 0, dst, pivot: (0, 1) };
    let delta = match coeff {
        None => DifferentialExpr::default(),
        Some(c) => DifferentialExpr { terms: vec![Term { coeff: c, factor: Factor::Dotted(0) }] },
    };
    Biquiver { vertices, solid: vec![a], dotted: vec![v], delta1: vec![delta], delta2: vec![DifferentialExpr::default()] }
}

#[test]
fn first_arrow_cases() {
    let lm = Poly2::lambda().sub(&Poly2::mu());
    let r = first_arrow_analysis(&synthetic(true, true, false, Some(lm.clone()))).unwrap();
    assert_eq!(r.case, ArrowCase::A1);
    assert!(r.split.is_none());
    match r.verdict {
        Verdict::Wild(w) => {
            assert_eq!(w.case, WildCase::Case1);
            assert_eq!(w.f, lm);
        }
        other => panic!("expected wild, got {other:?}"),
    }

    // (λ − 1)(μ + 2) splits; both factors become forbidden
    let f = Poly2::lambda().sub(&Poly2::one()).mul(&Poly2::mu().add(&Poly2::constant(s(2))));
    let r = first_arrow_analysis(&synthetic(true, true, false, Some(f))).unwrap();
    let (fp, fq) = r.split.clone().unwrap();
    assert_eq!(fp, Poly1::from_coeffs(vec![s(-1), s(1)]));
    assert_eq!(fq.monic(), Poly1::from_coeffs(vec![s(2), s(1)]));
    assert!(matches!(r.verdict, Verdict::Reducible(Branch::Regularize { .. })));

    let r = first_arrow_analysis(&synthetic(true, false, false, None)).unwrap();
    assert!(matches!(r.verdict, Verdict::Wild(WildVerdict { case: WildCase::Case2, .. })));
    let r = first_arrow_analysis(&synthetic(false, true, false, None)).unwrap();
    assert_eq!(r.case, ArrowCase::A2Dual);
    assert!(matches!(r.verdict, Verdict::Wild(WildVerdict { case: WildCase::Case2, .. })));

    let r = first_arrow_analysis(&synthetic(false, false, true, None)).unwrap();
    assert_eq!(r.verdict, Verdict::Reducible(Branch::LoopOrParameter));
    let r = first_arrow_analysis(&synthetic(false, false, false, None)).unwrap();
    assert_eq!(r.verdict, Verdict::Reducible(Branch::Edge));
    let r = first_arrow_analysis(&synthetic(false, false, false, Some(Poly2::constant(s(3))))).unwrap();
    assert!(matches!(r.verdict, Verdict::Reducible(Branch::Regularize { .. })));

    let mut empty = synthetic(false, false, false, None);
    empty.solid.clear();
    empty.delta1.clear();
    assert_eq!(first_arrow_analysis(&empty), Err(BocsError::NoSolidArrow));
}

#[test]
fn permuted_solid_order_breaks_triangularity() {
    // two loops at one vertex with a radical element: δ(a2) involves a1
    let p = problem(2, vec![vec![0, 1]], &[], &[(1, 0)]);
    let bq = to_biquiver(&p);
    check_layer(&bq).unwrap();
    let uses_composites = bq.delta1.iter().any(|d| d.terms.iter().any(|t| !t.factor.solids().is_empty()));
    assert!(uses_composites);
    let n = bq.solid.len();
    let reversed: Vec<usize> = (0..n).rev().collect();
    assert!(matches!(check_layer(&bq.permute_solid(&reversed)), Err(BocsError::TriangularityViolated { .. })));
}

#[test]
fn wild_verdicts() {
    match detect_wild(&two_loops(), DEFAULT_MAX_STEPS).unwrap() {
        WildOutcome::Wild { verdict, .. } => assert_eq!(verdict.case, WildCase::Case1),
        other => panic!("{other}"),
    }
    match detect_wild(&one_loop(), DEFAULT_MAX_STEPS).unwrap() {
        WildOutcome::NotDetected { reason, minimal_ends, .. } => {
            assert_eq!(reason, StopReason::AllMinimal);
            assert_eq!(minimal_ends.len(), 1);
            assert_eq!(minimal_ends[0].parameters, 1);
        }
        other => panic!("{other}"),
    }
    match detect_wild(&loop_and_edge(false), DEFAULT_MAX_STEPS).unwrap() {
        WildOutcome::Wild { verdict, .. } => assert_eq!(verdict.case, WildCase::Case2),
        other => panic!("{other}"),
    }
    match detect_wild(&loop_and_edge(true), DEFAULT_MAX_STEPS).unwrap() {
        WildOutcome::NotDetected { reason, minimal_ends, .. } => {
            assert_eq!(reason, StopReason::AllMinimal);
            assert_eq!(minimal_ends[0].parameters, 1);
        }
        other => panic!("{other}"),
    }
    let zero_m = problem(1, vec![vec![0]], &[], &[(0, 0)]);
    match detect_wild(&zero_m, DEFAULT_MAX_STEPS).unwrap() {
        WildOutcome::NotDetected { minimal_ends, explored, .. } => {
            assert_eq!(explored, 1);
            assert_eq!(minimal_ends[0].parameters, 0);
        }
        other => panic!("{other}"),
    }
}

#[test]
fn budget_stops_the_search() {
    // a single map between two spaces keeps branching by rank
    let p = problem(2, vec![vec![0], vec![1]], &[], &[(1, 0), (0, 0), (1, 1)]);
    match detect_wild(&p, 3).unwrap() {
        WildOutcome::NotDetected { explored, .. } => assert!(explored <= 3),
        other => panic!("{other}"),
    }
}

#[test]
fn dot_output_marks_dotted_arrows() {
    let p = problem(2, vec![vec![0, 1]], &[], &[(1, 0)]);
    let dot = to_biquiver(&p).to_dot();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("style=dashed"));
}
