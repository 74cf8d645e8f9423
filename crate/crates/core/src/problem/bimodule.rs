use super::bases::{bases_and_reduced_systems, compute_bases, Space, TriangularBases};
use super::equations::{EquationSystem, Position, Row};
use super::partition::IndexPartition;
use super::ProblemError;
use crate::exactmath::{Coeff, DenseMatrix, Matrix, Scalar};

/// Unvalidated problem data as read from a file or assembled by hand.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec<C: Coeff = Scalar> {
    pub t: usize,
    pub classes: Vec<Vec<usize>>,
    pub labels: Vec<(usize, String)>,
    pub k_rows: Vec<Row<C>>,
    pub m_rows: Vec<Row<C>>,
    pub h: Vec<(Position, C)>,
}

impl<C: Coeff> ProblemSpec<C> {
    pub fn new(t: usize, classes: Vec<Vec<usize>>) -> Self {
        ProblemSpec { t, classes, labels: vec![], k_rows: vec![], m_rows: vec![], h: vec![] }
    }
}

/// A bimodule problem `(K, M, H)` over an index partition.
///
/// K is the algebra of block upper triangular matrices whose diagonal blocks
/// agree on equivalent indices and whose off-diagonal blocks satisfy `k_eqs`;
/// M is the space of matrices satisfying `m_eqs`; the derivation is
/// `d(S) = SH − HS`. Coefficients may be scalars or, for parameterized
/// problems, polynomials in the parameters of the row and column class.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleProblem<C: Coeff = Scalar> {
    partition: IndexPartition,
    labels: Vec<Option<String>>,
    k_eqs: EquationSystem<C>,
    m_eqs: EquationSystem<C>,
    h: Matrix<C>,
    bases: TriangularBases<C>,
}

fn group_rows<C: Coeff>(
    part: &IndexPartition,
    rows: Vec<Row<C>>,
    space: Space,
) -> Result<EquationSystem<C>, ProblemError> {
    let mut sys = EquationSystem::new();
    let t = part.t();
    for row in rows {
        let Some(&((i0, j0), _)) = row.first() else { continue };
        let pair = (part.class_of(i0.min(t - 1)), part.class_of(j0.min(t - 1)));
        for &((i, j), _) in &row {
            if i >= t || j >= t {
                return Err(ProblemError::IndexOutOfRange { index: i.max(j), t });
            }
            if space == Space::K && i >= j {
                return Err(ProblemError::KEquationBelowDiagonal { i, j });
            }
            if (part.class_of(i), part.class_of(j)) != pair {
                return Err(ProblemError::MixedClassPairs { first: (i0, j0), other: (i, j) });
            }
        }
        sys.push(pair, row);
    }
    Ok(sys)
}

/// Check a raw specification and build the problem with its triangular bases.
pub fn validate_problem<C: Coeff>(spec: ProblemSpec<C>) -> Result<BimoduleProblem<C>, ProblemError> {
    let part = IndexPartition::new(spec.t, spec.classes)?;
    let k = group_rows(&part, spec.k_rows, Space::K)?;
    let m = group_rows(&part, spec.m_rows, Space::M)?;
    let mut h = Matrix::zeros(spec.t, spec.t);
    for ((i, j), c) in spec.h {
        if i >= spec.t || j >= spec.t {
            return Err(ProblemError::IndexOutOfRange { index: i.max(j), t: spec.t });
        }
        h.add_at(i, j, &c);
    }
    let mut labels = vec![None; part.num_classes()];
    for (i, name) in spec.labels {
        if i >= spec.t {
            return Err(ProblemError::IndexOutOfRange { index: i, t: spec.t });
        }
        labels[part.class_of(i)] = Some(name);
    }
    Ok(BimoduleProblem::new(part, k, m, h)?.with_labels(labels))
}

fn check_h<C: Coeff>(partition: &IndexPartition, h: &Matrix<C>) -> Result<(), ProblemError> {
        let t = partition.t();
        if h.rows() != t || h.cols() != t {
            return Err(ProblemError::ShapeMismatch(format!("H is {}x{}, expected {t}x{t}", h.rows(), h.cols())));
        }
        for (i, j, _) in h.nonzeros() {
            if !partition.equivalent(i, j) {
                return Err(ProblemError::HNotBlockDiagonal { i, j });
            }
        }
    Ok(())
}

impl<C: Coeff> BimoduleProblem<C> {
    pub fn new(
        partition: IndexPartition,
        k_eqs: EquationSystem<C>,
        m_eqs: EquationSystem<C>,
        h: Matrix<C>,
    ) -> Result<Self, ProblemError> {
        check_h(&partition, &h)?;
        let bases = compute_bases(&partition, &k_eqs, &m_eqs)?;
        Self::assemble(partition, k_eqs, m_eqs, h, bases)
    }

    fn assemble(
        partition: IndexPartition,
        k_eqs: EquationSystem<C>,
        m_eqs: EquationSystem<C>,
        h: Matrix<C>,
        bases: TriangularBases<C>,
    ) -> Result<Self, ProblemError> {
        let labels = vec![None; partition.num_classes()];
        let p = BimoduleProblem { partition, labels, k_eqs, m_eqs, h, bases };
        // with H = 0 the derivation vanishes
        let bases = if p.h.is_zero() { &[][..] } else { &p.bases.b[..] };
        for (w, zeta) in bases.iter().enumerate() {
            let d = p.derivation_unchecked(&p.basis_matrix(&zeta.support));
            if let Some(pos) = p.m_violation(&d) {
                return Err(ProblemError::DerivationNotClosed { element: w, position: pos });
            }
        }
        Ok(p)
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.partition.num_classes());
        self.labels = labels;
        self
    }

    pub fn partition(&self) -> &IndexPartition {
        &self.partition
    }

    pub fn t(&self) -> usize {
        self.partition.t()
    }

    pub fn k_eqs(&self) -> &EquationSystem<C> {
        &self.k_eqs
    }

    pub fn m_eqs(&self) -> &EquationSystem<C> {
        &self.m_eqs
    }

    pub fn h(&self) -> &Matrix<C> {
        &self.h
    }

    pub fn bases(&self) -> &TriangularBases<C> {
        &self.bases
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Display name of a class: its label, or `I<n>` (1-based).
    pub fn class_name(&self, c: usize) -> String {
        self.labels[c].clone().unwrap_or_else(|| format!("I{}", c + 1))
    }

    /// The same problem with every class pair's equations replaced by reduced rows.
    pub fn normalized(&self) -> Result<Self, ProblemError> {
        let (_, k, m) = bases_and_reduced_systems(&self.partition, &self.k_eqs, &self.m_eqs)?;
        Ok(BimoduleProblem { k_eqs: k, m_eqs: m, ..self.clone() })
    }

    /// [`BimoduleProblem::new`] followed by [`BimoduleProblem::normalized`], solving each system once.
    pub fn new_normalized(
        partition: IndexPartition,
        k_eqs: EquationSystem<C>,
        m_eqs: EquationSystem<C>,
        h: Matrix<C>,
    ) -> Result<Self, ProblemError> {
        check_h(&partition, &h)?;
        let (bases, k, m) = bases_and_reduced_systems(&partition, &k_eqs, &m_eqs)?;
        Self::assemble(partition, k, m, h, bases)
    }

    /// The t×t matrix with the given entries.
    pub fn basis_matrix(&self, support: &[(Position, C)]) -> Matrix<C> {
        let mut m = Matrix::zeros(self.t(), self.t());
        for ((i, j), c) in support {
            m.add_at(*i, *j, c);
        }
        m
    }

    /// `SH − HS` for a t×t matrix `S`; entries of H multiplying from the right
    /// act through the column class's parameter.
    pub fn derivation_unchecked(&self, s: &Matrix<C>) -> Matrix<C> {
        let t = self.t();
        let mut out = Matrix::zeros(t, t);
        for (i, l, sv) in s.nonzeros() {
            for j in 0..t {
                let hv = self.h.at(l, j);
                if !hv.is_zero() {
                    out.add_at(i, j, &sv.times(&hv.acting_right()));
                }
            }
        }
        for (i, l, hv) in self.h.nonzeros() {
            for j in 0..t {
                let sv = s.at(l, j);
                if !sv.is_zero() {
                    out.add_at(i, j, &hv.times(sv).negated());
                }
            }
        }
        out
    }

    /// First position of an M-equation violated by a t×t matrix.
    pub fn m_violation(&self, x: &Matrix<C>) -> Option<Position> {
        self.m_eqs.satisfied_by(|(i, j)| x.at(i, j).clone())
    }

    /// Whether a t×t matrix lies in K.
    pub fn in_k(&self, s: &Matrix<C>) -> bool {
        let t = self.t();
        for i in 0..t {
            for j in 0..i {
                if !s.at(i, j).is_zero() {
                    return false;
                }
            }
            for &j in self.partition.class(self.partition.class_of(i)) {
                if s.at(i, i) != s.at(j, j) {
                    return false;
                }
            }
        }
        self.k_eqs.satisfied_by(|(i, j)| s.at(i, j).clone()).is_none()
    }
}

impl BimoduleProblem<Scalar> {
    /// `d(S) = SH − HS` for `S` in K (sizes all one).
    pub fn derivation(&self, s: &DenseMatrix) -> Result<DenseMatrix, ProblemError> {
        if s.rows() != self.t() || s.cols() != self.t() {
            return Err(ProblemError::ShapeMismatch(format!("expected a {0}x{0} matrix", self.t())));
        }
        if !self.in_k(s) {
            return Err(ProblemError::InputNotInK);
        }
        let d = self.derivation_unchecked(s);
        assert!(self.m_violation(&d).is_none(), "derivation of an element of K left the M-space");
        Ok(d)
    }

    /// H expanded to a size vector: block `(i,j)` is `h_ij` times the identity.
    pub fn h_expanded(&self, sizes: &[usize]) -> DenseMatrix {
        let offs = offsets(sizes);
        let n = offs[sizes.len()];
        let mut out = DenseMatrix::zeros(n, n);
        for (i, j, v) in self.h.nonzeros() {
            for a in 0..sizes[i] {
                out.set(offs[i] + a, offs[j] + a, v.clone());
            }
        }
        out
    }

    /// Whether every H entry is zero.
    pub fn h_is_zero(&self) -> bool {
        self.h.is_zero()
    }
}

/// Prefix sums of a size vector; the last entry is the total.
pub fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    o.push(0);
    for s in sizes {
        acc += s;
        o.push(acc);
    }
    o
}
