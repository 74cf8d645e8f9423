//! Shared fixtures: the four example quivers, small problems and random generators.
#![allow(dead_code)]

use bimodule::exactmath::{DenseMatrix, Scalar};
use bimodule::ingest::{build_algebra, p1_problem, AlgebraTable, Arrow, QuiverPresentation};
use bimodule::bocs::{check_layer, to_biquiver};
use bimodule::problem::{validate_problem, BimoduleProblem, ProblemSpec, Representation};
use bimodule::reduce::{canonical_form, CanonicalForm, ReduceError, Summand};
use rand::Rng;

pub fn s(x: i64) -> Scalar {
    Scalar::from(x)
}

pub fn path(p: &str) -> Vec<String> {
    p.chars().map(|c| c.to_string()).collect()
}

fn mono(p: &str) -> Vec<(Scalar, Vec<String>)> {
    vec![(s(1), path(p))]
}

fn arrows(list: &[(&str, usize, usize)]) -> Vec<Arrow> {
    list.iter().map(|&(n, a, b)| Arrow { name: n.into(), src: a, dst: b }).collect()
}

/// Three loops with all quadratic products zero.
pub fn example1() -> QuiverPresentation {
    QuiverPresentation {
        vertices: vec!["1".into()],
        arrows: arrows(&[("a", 0, 0), ("b", 0, 0), ("c", 0, 0)]),
        relations: ["aa", "ab", "ac", "ba", "bb", "bc", "ca", "cb", "cc"].iter().map(|p| mono(p)).collect(),
        bound: 1,
        order: None,
    }
}

/// `a, b: 2 → 1` and `c: 2 → 3`, no relations.
pub fn example2() -> QuiverPresentation {
    QuiverPresentation {
        vertices: vec!["1".into(), "2".into(), "3".into()],
        arrows: arrows(&[("a", 1, 0), ("b", 1, 0), ("c", 1, 2)]),
        relations: vec![],
        bound: 1,
        order: None,
    }
}

/// Two loops with `a², ba − α·ab, ab², b³`, basis `ab, bb, b, a, e`.
pub fn example3(alpha: i64) -> QuiverPresentation {
    QuiverPresentation {
        vertices: vec!["1".into()],
        arrows: arrows(&[("a", 0, 0), ("b", 0, 0)]),
        relations: vec![
            mono("aa"),
            vec![(s(1), path("ba")), (s(-alpha), path("ab"))],
            mono("abb"),
            mono("bbb"),
        ],
        bound: 3,
        order: Some(vec![path("ab"), path("bb"), path("b"), path("a")]),
    }
}

/// Five arrows into one sink.
pub fn example4() -> QuiverPresentation {
    QuiverPresentation {
        vertices: (1..=6).map(|v| v.to_string()).collect(),
        arrows: arrows(&[("a", 0, 5), ("b", 1, 5), ("c", 2, 5), ("d", 3, 5), ("f", 4, 5)]),
        relations: vec![],
        bound: 1,
        order: None,
    }
}

pub fn algebra(q: &QuiverPresentation) -> AlgebraTable {
    build_algebra(q).expect("example algebra")
}

pub fn p1(q: &QuiverPresentation) -> BimoduleProblem {
    p1_problem(&algebra(q)).expect("example problem")
}

fn unit_rows(positions: &[(usize, usize)]) -> Vec<Vec<((usize, usize), Scalar)>> {
    positions.iter().map(|&p| vec![(p, s(1))]).collect()
}

/// One square matrix up to similarity: a single index.
pub fn similarity() -> BimoduleProblem {
    validate_problem(ProblemSpec::new(1, vec![vec![0]])).unwrap()
}

/// The 11×11 representation of the example-2 problem, with `λ` free.
pub fn decomposition_fixture(lambda: Scalar) -> (BimoduleProblem, Representation) {
    let p = p1(&example2());
    let sizes = vec![2, 2, 2, 0, 2, 0, 0, 0, 0, 2, 0, 1];
    let mut m = DenseMatrix::zeros(11, 11);
    m.set(0, 10, s(1));
    m.set(2, 9, lambda);
    m.set(3, 8, s(1));
    m.set(4, 9, s(1));
    let rep = Representation::new(&p, sizes, m).unwrap();
    (p, rep)
}

/// The two displayed summands of the fixture.
pub fn fixture_summands(p: &BimoduleProblem, lambda: Scalar) -> (Representation, Representation) {
    let mut m1 = DenseMatrix::zeros(6, 6);
    m1.set(0, 5, s(1));
    m1.set(1, 4, lambda);
    m1.set(2, 4, s(1));
    let mut m2 = DenseMatrix::zeros(5, 5);
    m2.set(1, 4, s(1));
    let r1 = Representation::new(p, vec![1, 1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1], m1).unwrap();
    let r2 = Representation::new(p, vec![1, 1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0], m2).unwrap();
    (r1, r2)
}

pub fn small_scalar<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Scalar {
    s(rng.gen_range(lo..=hi))
}

/// A random problem with `H = 0` whose K- and M-spaces are zero patterns:
/// the free K positions are transitively closed and the free M positions
/// are closed under multiplication by K from both sides.
#[derive(Clone, Debug)]
pub struct RandomProblem {
    pub problem: BimoduleProblem,
    pub k_free: Vec<Vec<bool>>,
    pub m_free: Vec<Vec<bool>>,
}

pub fn random_problem<R: Rng>(rng: &mut R, t_max: usize) -> RandomProblem {
    let t = rng.gen_range(1..=t_max);
    let mut label: Vec<usize> = (0..t).map(|_| rng.gen_range(0..t)).collect();
    let mut seen = vec![];
    for l in label.iter_mut() {
        let k = seen.iter().position(|x| x == l).unwrap_or_else(|| {
            seen.push(*l);
            seen.len() - 1
        });
        *l = k;
    }
    let classes: Vec<Vec<usize>> = (0..seen.len()).map(|c| (0..t).filter(|&i| label[i] == c).collect()).collect();

    let mut k_free = vec![vec![false; t]; t];
    for i in 0..t {
        k_free[i][i] = true;
        for j in i + 1..t {
            k_free[i][j] = rng.gen_bool(0.5);
        }
    }
    for l in 0..t {
        for i in 0..l {
            for j in l + 1..t {
                if k_free[i][l] && k_free[l][j] {
                    k_free[i][j] = true;
                }
            }
        }
    }
    let mut m_free: Vec<Vec<bool>> = (0..t).map(|_| (0..t).map(|_| rng.gen_bool(0.35)).collect()).collect();
    loop {
        let mut grew = false;
        for i in 0..t {
            for j in 0..t {
                if m_free[i][j] {
                    continue;
                }
                let left = (0..t).any(|l| l != i && k_free[i][l] && i < l && m_free[l][j]);
                let right = (0..t).any(|l| l != j && l < j && k_free[l][j] && m_free[i][l]);
                if left || right {
                    m_free[i][j] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut spec = ProblemSpec::new(t, classes);
    for i in 0..t {
        for j in 0..t {
            if i < j && !k_free[i][j] {
                spec.k_rows.push(vec![((i, j), s(1))]);
            }
            if !m_free[i][j] {
                spec.m_rows.push(vec![((i, j), s(1))]);
            }
        }
    }
    let problem = validate_problem(spec).expect("zero-pattern problems are valid");
    RandomProblem { problem, k_free, m_free }
}

impl RandomProblem {
    /// A class-constant size vector with entries in `1..=n_max`.
    pub fn sizes<R: Rng>(&self, rng: &mut R, n_max: usize) -> Vec<usize> {
        let part = self.problem.partition();
        let per_class: Vec<usize> = (0..part.num_classes()).map(|_| rng.gen_range(1..=n_max)).collect();
        (0..self.problem.t()).map(|i| per_class[part.class_of(i)]).collect()
    }

    /// A random representation with small integer entries.
    pub fn representation<R: Rng>(&self, rng: &mut R, sizes: &[usize]) -> Representation {
        let offs = bimodule::problem::offsets(sizes);
        let t = self.problem.t();
        let mut m = DenseMatrix::zeros(offs[t], offs[t]);
        for i in 0..t {
            for j in 0..t {
                if !self.m_free[i][j] {
                    continue;
                }
                for a in 0..sizes[i] {
                    for b in 0..sizes[j] {
                        if rng.gen_bool(0.5) {
                            m.set(offs[i] + a, offs[j] + b, small_scalar(rng, -2, 2));
                        }
                    }
                }
            }
        }
        Representation::new(&self.problem, sizes.to_vec(), m).expect("pattern respects M")
    }

    /// A random invertible element of K at the given sizes.
    pub fn invertible_k<R: Rng>(&self, rng: &mut R, sizes: &[usize]) -> DenseMatrix {
        let offs = bimodule::problem::offsets(sizes);
        let t = self.problem.t();
        let part = self.problem.partition();
        let mut s_mat = DenseMatrix::zeros(offs[t], offs[t]);
        for class in part.classes() {
            let n = sizes[class[0]];
            let block = random_invertible(rng, n);
            for &i in class {
                s_mat.set_submatrix(offs[i], offs[i], &block);
            }
        }
        for i in 0..t {
            for j in i + 1..t {
                if self.k_free[i][j] {
                    for a in 0..sizes[i] {
                        for b in 0..sizes[j] {
                            s_mat.set(offs[i] + a, offs[j] + b, small_scalar(rng, -2, 2));
                        }
                    }
                }
            }
        }
        s_mat
    }

    /// A random idempotent of K: `S·D·S⁻¹` with `D` a class-constant 0/1 diagonal.
    pub fn idempotent<R: Rng>(&self, rng: &mut R, sizes: &[usize]) -> DenseMatrix {
        let offs = bimodule::problem::offsets(sizes);
        let part = self.problem.partition();
        let mut d = DenseMatrix::zeros(offs[self.problem.t()], offs[self.problem.t()]);
        for class in part.classes() {
            let bits: Vec<bool> = (0..sizes[class[0]]).map(|_| rng.gen_bool(0.5)).collect();
            for &i in class {
                for (a, &on) in bits.iter().enumerate() {
                    if on {
                        d.set(offs[i] + a, offs[i] + a, s(1));
                    }
                }
            }
        }
        let s_mat = self.invertible_k(rng, sizes);
        s_mat.mul(&d).mul(&s_mat.inverse().unwrap())
    }
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| small_scalar(rng, -2, 2)).collect()).collect();
        let m = DenseMatrix::from_rows(rows);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// `S⁻¹ M S` as a representation of the same problem (valid when `H = 0`).
pub fn conjugate(p: &BimoduleProblem, rep: &Representation, s_mat: &DenseMatrix) -> Representation {
    let m = s_mat.inverse().unwrap().mul(rep.matrix()).mul(s_mat);
    Representation::new(p, rep.sizes().to_vec(), m).expect("M is a K-bimodule")
}

/// A random matrix with split spectrum: a conjugated upper-triangular matrix.
pub fn random_split_matrix<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix {
    let mut u = DenseMatrix::zeros(n, n);
    let eig: Vec<Scalar> = (0..rng.gen_range(1..=n)).map(|_| small_scalar(rng, -2, 2)).collect();
    for i in 0..n {
        u.set(i, i, eig[rng.gen_range(0..eig.len())].clone());
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                u.set(i, j, small_scalar(rng, -1, 1));
            }
        }
    }
    let s_mat = random_invertible(rng, n);
    s_mat.inverse().unwrap().mul(&u).mul(&s_mat)
}

/// A random representation whose reduction succeeds (every loop block met
/// has a split spectrum), with its canonical form; `None` after `tries` misses.
pub fn split_sample<R: Rng>(
    rng: &mut R,
    rp: &RandomProblem,
    sizes: &[usize],
    tries: usize,
) -> Option<(Representation, CanonicalForm)> {
    for _ in 0..tries {
        let rep = rp.representation(rng, sizes);
        match canonical_form(&rp.problem, &rep) {
            Ok(form) => return Some((rep, form)),
            Err(ReduceError::Spectrum(_)) => continue,
            Err(e) => panic!("reduction failed: {e}"),
        }
    }
    None
}

/// Summands grouped by isomorphism class: `(canonical form, total multiplicity)`.
pub fn iso_multiset(p: &BimoduleProblem, parts: &[Summand]) -> Vec<(CanonicalForm, usize)> {
    let mut out: Vec<(CanonicalForm, usize)> = vec![];
    for part in parts {
        let form = canonical_form(p, &part.rep).expect("summands reduce");
        match out.iter_mut().find(|(f, _)| *f == form) {
            Some(entry) => entry.1 += part.multiplicity,
            None => out.push((form, part.multiplicity)),
        }
    }
    out
}

pub fn same_multiset(a: &[(CanonicalForm, usize)], b: &[(CanonicalForm, usize)]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| y == x))
}

/// Evaluate every differential at random values of the dual indeterminates
/// and of the vertex variables, and compare with the matrix products
/// `R₀N' − N'R₀` and `R₀R₀` (with `N' = N₀ + H`) at the pivot, less the
/// diagonal contributions of the vertex variables.
pub fn delta_cross_check<R: Rng>(rng: &mut R, p: &BimoduleProblem) -> Result<usize, String> {
    let bq = to_biquiver(p);
    check_layer(&bq).map_err(|e| e.to_string())?;
    let x: Vec<Scalar> = (0..bq.dotted.len()).map(|_| small_scalar(rng, -9, 9)).collect();
    let z: Vec<Scalar> = (0..bq.solid.len()).map(|_| small_scalar(rng, -9, 9)).collect();
    let e: Vec<Scalar> = (0..bq.vertices.len()).map(|_| small_scalar(rng, -9, 9)).collect();
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
    let rn = r.mul(&n).sub(&n.mul(&r));
    let rr = r.mul(&r);
    let zero = Scalar::zero();
    let mut checked = 0;
    for (w, a) in bq.solid.iter().enumerate() {
        let (i, j) = a.pivot;
        let direct = &(rn.at(i, j) - &(r.at(i, i) * n.at(i, j))) + &(n.at(i, j) * r.at(j, j));
        let got = bq.delta1[w].eval(&x, &z, &zero, &zero);
        if got != direct {
            return Err(format!("δ({}) = {got}, products give {direct}", a.name));
        }
        checked += 1;
    }
    for (u, v) in bq.dotted.iter().enumerate() {
        let (i, j) = v.pivot;
        let direct = &(rr.at(i, j) - &(r.at(i, i) * r.at(i, j))) - &(r.at(i, j) * r.at(j, j));
        let got = bq.delta2[u].eval(&x, &z, &zero, &zero);
        if got != direct {
            return Err(format!("δ({}) = {got}, products give {direct}", v.name));
        }
        checked += 1;
    }
    Ok(checked)
}
