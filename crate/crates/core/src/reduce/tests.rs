use super::*;
use crate::exactmath::{DenseMatrix, Scalar};
use crate::problem::{validate_problem, BimoduleProblem, ProblemSpec, Representation};
use crate::weyr::weyr_of;

fn s(x: i64) -> Scalar {
    Scalar::from(x)
}

fn mat(rows: &[&[i64]]) -> DenseMatrix {
    DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect())
}

fn zero_rows(positions: &[(usize, usize)]) -> Vec<Vec<((usize, usize), Scalar)>> {
    positions.iter().map(|&p| vec![(p, s(1))]).collect()
}

/// One matrix up to similarity.
fn similarity() -> BimoduleProblem {
    validate_problem(ProblemSpec::new(1, vec![vec![0]])).unwrap()
}

/// One linear map between two spaces.
fn arrow() -> BimoduleProblem {
    let mut spec = ProblemSpec::new(2, vec![vec![0], vec![1]]);
    spec.k_rows = zero_rows(&[(0, 1)]);
    spec.m_rows = zero_rows(&[(0, 0), (1, 0), (1, 1)]);
    validate_problem(spec).unwrap()
}

/// A pair of matrices up to simultaneous similarity.
fn matrix_pair() -> BimoduleProblem {
    let mut spec = ProblemSpec::new(2, vec![vec![0, 1]]);
    spec.k_rows = zero_rows(&[(0, 1)]);
    spec.m_rows = zero_rows(&[(1, 0), (1, 1)]);
    validate_problem(spec).unwrap()
}

fn check_step(problem: &BimoduleProblem, rep: &Representation) -> (ReductionStep, Applied) {
    let step = choose_reduction(problem, rep).unwrap().unwrap();
    let applied = apply_step(problem, rep, &step).unwrap();
    let lhs = applied.transform.inverse().unwrap().mul(&rep.with_h(problem)).mul(&applied.transform);
    assert_eq!(lhs, applied.rep.with_h(&applied.induced.problem));
    let back = theta(problem, &applied.induced, &applied.rep).unwrap();
    assert_eq!(back.sizes(), rep.sizes());
    (step, applied)
}

#[test]
fn similarity_reduces_to_weyr_form() {
    let p = similarity();
    let a = mat(&[&[2, 1, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[1, 0, 0, 3]]);
    let rep = Representation::new(&p, vec![4], a.clone()).unwrap();
    let form = canonical_form(&p, &rep).unwrap();
    assert_eq!(form.matrix(), weyr_of(&a).unwrap().0.matrix());
    let t = form.transform.clone().unwrap();
    assert_eq!(t.inverse().unwrap().mul(&a).mul(&t), form.matrix());
}

#[test]
fn edge_cases_cover_all_rank_patterns() {
    let p = arrow();
    let cases = [
        (2, 3, 0, EdgeCase::RankZero, 2),
        (2, 3, 1, EdgeCase::Proper, 3),
        (2, 3, 2, EdgeCase::RowsExhausted, 2),
        (3, 2, 2, EdgeCase::ColumnsExhausted, 2),
        (2, 2, 2, EdgeCase::Merge, 1),
    ];
    for (np, nq, r, case, classes) in cases {
        // product of two Vandermonde factors has rank exactly r
        let l = DenseMatrix::from_rows((0..np).map(|i| (0..r).map(|k| s((i as i64 + 1).pow(k as u32))).collect()).collect());
        let rt = DenseMatrix::from_rows((0..r).map(|k| (0..nq).map(|c| s((c as i64 + 2).pow(k as u32))).collect()).collect());
        let mut m = DenseMatrix::zeros(np + nq, np + nq);
        if r > 0 {
            m.set_submatrix(0, np, &l.mul(&rt));
        }
        let rep = Representation::new(&p, vec![np, nq], m.clone()).unwrap();
        let rank = rep.block(0, 1).rank_exact();
        assert_eq!(EdgeCase::classify(rank, np, nq), EdgeCase::classify(r, np, nq), "fixture rank");
        let (step, applied) = check_step(&p, &rep);
        assert_eq!(step.kind, StepKind::Edge { rank: r, case });
        assert_eq!(applied.induced.problem.partition().num_classes(), classes);
        assert!(applied.rep.is_zero());
        assert!(applied.induced.problem.bases().a.is_empty());
    }
}

#[test]
fn edge_keeps_split_blocks_consistent_within_a_class() {
    // two copies of the arrow that must be transformed together
    let mut spec = ProblemSpec::new(4, vec![vec![0, 2], vec![1, 3]]);
    spec.k_rows = zero_rows(&[(0, 1), (0, 3), (1, 2), (2, 3), (0, 2), (1, 3)]);
    spec.m_rows = zero_rows(&[(0, 0), (1, 0), (1, 1), (2, 2), (3, 2), (3, 3), (0, 2), (2, 0), (1, 3), (3, 1), (1, 2), (2, 1), (3, 0), (0, 3)]);
    let p = validate_problem(spec).unwrap();
    let mut m = DenseMatrix::zeros(8, 8);
    m.set(0, 2, s(1));
    m.set(4, 6, s(5));
    let rep = Representation::new(&p, vec![2, 2, 2, 2], m).unwrap();
    let (step, applied) = check_step(&p, &rep);
    assert!(matches!(step.kind, StepKind::Edge { rank: 1, case: EdgeCase::Proper }));
    let form = canonical_form(&p, &rep).unwrap();
    let t = form.transform.clone().unwrap();
    assert_eq!(t.inverse().unwrap().mul(rep.matrix()).mul(&t), form.matrix());
    assert!(applied.induced.problem.t() == 8);
}

#[test]
fn loop_step_induces_the_commutant() {
    let p = matrix_pair();
    // A = J2(0) ⊕ J1(0), B generic
    let a = mat(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    let b = mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
    let mut m = DenseMatrix::zeros(6, 6);
    m.set_submatrix(0, 0, &a);
    m.set_submatrix(0, 3, &b);
    let rep = Representation::new(&p, vec![3, 3], m).unwrap();
    let (step, applied) = check_step(&p, &rep);
    let StepKind::Loop(w) = &step.kind else { panic!("expected a loop step") };
    let ip = &applied.induced.problem;
    assert_eq!(ip.t(), 6);
    assert_eq!(ip.partition().num_classes(), 2);
    // the induced K restricted to the first copy is the commutant of W
    let wm = w.matrix();
    let mut dim = ip.partition().num_classes();
    for z in &ip.bases().b {
        let bm = ip.basis_matrix(&z.support).submatrix(0, 0, 3, 3);
        if !bm.is_zero() {
            dim += 1;
        }
        assert_eq!(bm.mul(&wm), wm.mul(&bm));
    }
    assert_eq!(dim, 5);
    let form = canonical_form(&p, &rep).unwrap();
    let t = form.transform.clone().unwrap();
    assert_eq!(t.inverse().unwrap().mul(rep.matrix()).mul(&t), form.matrix());
}

#[test]
fn regularization_uses_nonzero_h() {
    // H = diag(1, 0) on two equivalent indices: M_01 can be killed by K_01
    let mut spec = ProblemSpec::new(2, vec![vec![0], vec![1]]);
    spec.m_rows = zero_rows(&[(0, 0), (1, 0), (1, 1)]);
    spec.h = vec![((0, 0), s(1))];
    let p = validate_problem(spec).unwrap();
    assert!(!implies_eq8(&p, 0, 1));
    let rep = Representation::new(&p, vec![2, 2], mat(&[&[0, 0, 1, 2], &[0, 0, 3, 4], &[0, 0, 0, 0], &[0, 0, 0, 0]])).unwrap();
    let (step, applied) = check_step(&p, &rep);
    assert_eq!(step.kind, StepKind::Regularization);
    assert!(applied.rep.is_zero());
}

#[test]
fn isomorphism_and_decomposition_of_similarity() {
    let p = similarity();
    let a = mat(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    let g = mat(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]);
    let b = g.inverse().unwrap().mul(&a).mul(&g);
    let ra = Representation::new(&p, vec![3], a).unwrap();
    let rb = Representation::new(&p, vec![3], b).unwrap();
    assert!(is_isomorphic(&p, &ra, &rb).unwrap());
    let rc = Representation::new(&p, vec![3], DenseMatrix::identity(3)).unwrap();
    assert!(!is_isomorphic(&p, &ra, &rc).unwrap());
    let parts = decompose(&p, &ra).unwrap();
    let mut dims: Vec<(usize, usize)> = parts.iter().map(|s| (s.rep.dim(), s.multiplicity)).collect();
    dims.sort();
    assert_eq!(dims, vec![(1, 1), (2, 1)]);
}

#[test]
fn lifting_zero_reproduces_summands() {
    let p = matrix_pair();
    let mut m = DenseMatrix::zeros(4, 4);
    m.set_submatrix(0, 0, &mat(&[&[1, 0], &[0, 2]]));
    m.set_submatrix(0, 2, &mat(&[&[3, 0], &[0, 5]]));
    let rep = Representation::new(&p, vec![2, 2], m).unwrap();
    let red = reduce(&p, &rep, false).unwrap();
    let zero = Representation::zero(&red.final_problem, red.form.multiplicities.clone()).unwrap();
    let lifted = red.lift(&zero).unwrap();
    assert_eq!(lifted.matrix(), &red.form.matrix());
    assert_eq!(decompose(&p, &rep).unwrap().len(), 2);
}

#[test]
fn idempotents_split_inside_k() {
    let mut spec = ProblemSpec::new(2, vec![vec![0], vec![1]]);
    spec.m_rows = zero_rows(&[(0, 0), (1, 0), (1, 1)]);
    let p = validate_problem(spec).unwrap();
    let f = mat(&[&[1, 0, 0, 3], &[0, 0, 4, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]);
    let phi = crate::problem::Morphism { row_sizes: vec![2, 2], col_sizes: vec![2, 2], s: f.clone() };
    let chi = split_idempotent(&p, &phi).unwrap();
    let d = chi.s.inverse().unwrap().mul(&f).mul(&chi.s);
    let mut expect = DenseMatrix::zeros(4, 4);
    expect.set(0, 0, s(1));
    expect.set(2, 2, s(1));
    assert_eq!(d, expect);
    let bad = crate::problem::Morphism { row_sizes: vec![2, 2], col_sizes: vec![2, 2], s: f.scale(&s(2)) };
    assert_eq!(split_idempotent(&p, &bad), Err(ReduceError::NotIdempotent));
}
