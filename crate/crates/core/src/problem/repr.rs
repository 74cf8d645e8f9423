use super::bimodule::{offsets, BimoduleProblem};
use super::ProblemError;
use crate::exactmath::{DenseMatrix, Scalar};

/// A matrix of the M-space of a problem, partitioned by a size vector.
///
/// The full `N×N` matrix is stored; block `(i,j)` occupies rows
/// `offset(i)..offset(i+1)` and columns `offset(j)..offset(j+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    mat: DenseMatrix,
}

fn check_sizes(problem: &BimoduleProblem, sizes: &[usize]) -> Result<(), ProblemError> {
    if sizes.len() != problem.t() {
        return Err(ProblemError::ShapeMismatch(format!("size vector has {} entries, expected {}", sizes.len(), problem.t())));
    }
    for c in problem.partition().classes() {
        if let Some(&j) = c.iter().find(|&&j| sizes[j] != sizes[c[0]]) {
            return Err(ProblemError::SizeNotClassConstant { i: c[0], j });
        }
    }
    Ok(())
}

impl Representation {
    pub fn new(problem: &BimoduleProblem, sizes: Vec<usize>, mat: DenseMatrix) -> Result<Self, ProblemError> {
        check_sizes(problem, &sizes)?;
        let r = Representation::from_parts(sizes, mat);
        if r.mat.rows() != r.dim() || r.mat.cols() != r.dim() {
            return Err(ProblemError::ShapeMismatch(format!(
                "matrix is {}x{}, size vector needs {}",
                r.mat.rows(),
                r.mat.cols(),
                r.dim()
            )));
        }
        if let Some((i, j)) = r.m_violation(problem) {
            return Err(ProblemError::InconsistentDependentEntry { i, j });
        }
        Ok(r)
    }

    pub fn zero(problem: &BimoduleProblem, sizes: Vec<usize>) -> Result<Self, ProblemError> {
        let n = sizes.iter().sum();
        Representation::new(problem, sizes, DenseMatrix::zeros(n, n))
    }

    /// No validation; callers guarantee the M-equations.
    pub(crate) fn from_parts(sizes: Vec<usize>, mat: DenseMatrix) -> Self {
        let offsets = offsets(&sizes);
        Representation { sizes, offsets, mat }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.offsets[self.sizes.len()]
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn block(&self, i: usize, j: usize) -> DenseMatrix {
        self.mat.submatrix(self.offsets[i], self.offsets[j], self.sizes[i], self.sizes[j])
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Checks the M-equations blockwise; returns the first offending position.
    pub fn m_violation(&self, problem: &BimoduleProblem) -> Option<(usize, usize)> {
        for (_, row) in problem.m_eqs().iter() {
            let ((i0, j0), _) = row[0];
            for a in 0..self.sizes[i0] {
                for b in 0..self.sizes[j0] {
                    let s = row.iter().fold(Scalar::zero(), |acc, ((i, j), c)| {
                        &acc + &(c * self.mat.at(self.offsets[*i] + a, self.offsets[*j] + b))
                    });
                    if !s.is_zero() {
                        return Some((i0, j0));
                    }
                }
            }
        }
        None
    }

    /// `M + H_m`.
    pub fn with_h(&self, problem: &BimoduleProblem) -> DenseMatrix {
        self.mat.add(&problem.h_expanded(&self.sizes))
    }
}

/// A matrix `S` between representations of sizes `row_sizes` and `col_sizes`
/// lying in K blockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub row_sizes: Vec<usize>,
    pub col_sizes: Vec<usize>,
    pub s: DenseMatrix,
}

impl Morphism {
    pub fn identity(sizes: &[usize]) -> Self {
        let n = sizes.iter().sum();
        Morphism { row_sizes: sizes.to_vec(), col_sizes: sizes.to_vec(), s: DenseMatrix::identity(n) }
    }

    /// The diagonal blocks `S_ii`.
    pub fn diagonal_part(&self) -> Vec<DenseMatrix> {
        let ro = offsets(&self.row_sizes);
        let co = offsets(&self.col_sizes);
        (0..self.row_sizes.len())
            .map(|i| self.s.submatrix(ro[i], co[i], self.row_sizes[i], self.col_sizes[i]))
            .collect()
    }

    pub fn compose(&self, o: &Morphism) -> Morphism {
        assert_eq!(self.col_sizes, o.row_sizes);
        Morphism { row_sizes: self.row_sizes.clone(), col_sizes: o.col_sizes.clone(), s: self.s.mul(&o.s) }
    }
}

/// Whether an `m×n`-partitioned matrix lies in K blockwise.
pub fn in_k_blockwise(problem: &BimoduleProblem, m: &[usize], n: &[usize], s: &DenseMatrix) -> bool {
    let (ro, co) = (offsets(m), offsets(n));
    let t = problem.t();
    let blk = |i: usize, j: usize| s.submatrix(ro[i], co[j], m[i], n[j]);
    for i in 0..t {
        for j in 0..i {
            if !blk(i, j).is_zero() {
                return false;
            }
        }
        let rep = problem.partition().class(problem.partition().class_of(i))[0];
        if rep != i && blk(i, i) != blk(rep, rep) {
            return false;
        }
    }
    for (_, row) in problem.k_eqs().iter() {
        let ((i0, j0), _) = row[0];
        for a in 0..m[i0] {
            for b in 0..n[j0] {
                let v = row
                    .iter()
                    .fold(Scalar::zero(), |acc, ((i, j), c)| &acc + &(c * s.at(ro[*i] + a, co[*j] + b)));
                if !v.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `S` is a morphism: S ∈ K and `(M + H_m)S = S(N + H_n)`.
pub fn is_morphism(
    problem: &BimoduleProblem,
    m: &Representation,
    n: &Representation,
    s: &DenseMatrix,
) -> Result<bool, ProblemError> {
    if s.rows() != m.dim() || s.cols() != n.dim() {
        return Err(ProblemError::ShapeMismatch(format!(
            "S is {}x{}, expected {}x{}",
            s.rows(),
            s.cols(),
            m.dim(),
            n.dim()
        )));
    }
    if !in_k_blockwise(problem, m.sizes(), n.sizes(), s) {
        return Ok(false);
    }
    Ok(m.with_h(problem).mul(s) == s.mul(&n.with_h(problem)))
}

/// A basis of all morphisms `S` with `(M + H_m)S = S(N + H_n)`.
pub fn hom_space(problem: &BimoduleProblem, m: &Representation, n: &Representation) -> Vec<Morphism> {
    let (ms, ns) = (m.sizes(), n.sizes());
    let (ro, co) = (offsets(ms), offsets(ns));
    let (dm, dn) = (m.dim(), n.dim());
    // each unknown is a list of (row, col, coefficient) entries of S
    let mut unknowns: Vec<Vec<(usize, usize, Scalar)>> = vec![];
    for class in problem.partition().classes() {
        let c0 = class[0];
        for a in 0..ms[c0] {
            for b in 0..ns[c0] {
                unknowns.push(class.iter().map(|&i| (ro[i] + a, co[i] + b, Scalar::one())).collect());
            }
        }
    }
    for zeta in &problem.bases().b {
        let (pi, pj) = zeta.pivot;
        for a in 0..ms[pi] {
            for b in 0..ns[pj] {
                unknowns.push(zeta.support.iter().map(|((i, j), c)| (ro[*i] + a, co[*j] + b, c.clone())).collect());
            }
        }
    }
    let left = m.with_h(problem);
    let right = n.with_h(problem);
    let mut cols: Vec<Vec<Scalar>> = vec![];
    for u in &unknowns {
        let mut col = vec![Scalar::zero(); dm * dn];
        for (r, c, v) in u {
            for x in 0..dm {
                let l = left.at(x, *r);
                if !l.is_zero() {
                    col[x * dn + c] = &col[x * dn + c] + &(l * v);
                }
            }
            for y in 0..dn {
                let rv = right.at(*c, y);
                if !rv.is_zero() {
                    col[r * dn + y] = &col[r * dn + y] - &(v * rv);
                }
            }
        }
        cols.push(col);
    }
    let system = DenseMatrix::from_rows(
        (0..dm * dn).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect::<Vec<_>>(),
    );
    if unknowns.is_empty() || dm * dn == 0 {
        return vec![];
    }
    let null = system.nullspace();
    null.into_iter()
        .map(|coef| {
            let mut s = DenseMatrix::zeros(dm, dn);
            for (u, x) in unknowns.iter().zip(&coef) {
                if x.is_zero() {
                    continue;
                }
                for (r, c, v) in u {
                    s.add_at(*r, *c, &(v * x));
                }
            }
            Morphism { row_sizes: ms.to_vec(), col_sizes: ns.to_vec(), s }
        })
        .collect()
}

/// Blockwise direct sum: block `(i,j)` is `diag(M_ij, N_ij)`.
pub fn direct_sum(m: &Representation, n: &Representation) -> Result<Representation, ProblemError> {
    if m.sizes().len() != n.sizes().len() {
        return Err(ProblemError::ProblemMismatch);
    }
    let t = m.sizes().len();
    let sizes: Vec<usize> = (0..t).map(|i| m.sizes()[i] + n.sizes()[i]).collect();
    let offs = offsets(&sizes);
    let mut out = DenseMatrix::zeros(offs[t], offs[t]);
    for i in 0..t {
        for j in 0..t {
            out.set_submatrix(offs[i], offs[j], &m.block(i, j));
            out.set_submatrix(offs[i] + m.sizes()[i], offs[j] + m.sizes()[j], &n.block(i, j));
        }
    }
    Ok(Representation::from_parts(sizes, out))
}
