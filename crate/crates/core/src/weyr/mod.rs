//! Weyr canonical forms.
//!
//! For a nilpotent part with Jordan blocks of sizes `r` occurring `e_r` times,
//! the Weyr form groups the level-`g` vectors of all chains together; level
//! `g` has `m_g = e_d + … + e_g` vectors. Within a level, chains are ordered
//! by decreasing length, and eigenvalues ascend in the field order.

use thiserror::Error;

use crate::exactmath::{char_poly, split_roots, DenseMatrix, NonSplit, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeyrError {
    #[error("non-split spectrum: {0}")]
    NonSplitSpectrum(#[from] NonSplit),
    #[error("matrix is not square")]
    NotSquare,
}

/// One eigenvalue's part of a Weyr matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EigenBlock {
    pub eigenvalue: Scalar,
    /// `e[r-1]` is the number of Jordan blocks of size `r`, for `r = 1..=d`.
    pub e: Vec<usize>,
}

impl EigenBlock {
    /// Largest Jordan block size.
    pub fn d(&self) -> usize {
        self.e.len()
    }

    /// `m[g-1] = e_d + … + e_g`.
    pub fn m(&self) -> Vec<usize> {
        (1..=self.d()).map(|g| self.e[g - 1..].iter().sum()).collect()
    }

    /// Row `g` of the e-table: `(e_d, …, e_g)`.
    pub fn e_row(&self, g: usize) -> Vec<usize> {
        self.e[g - 1..].iter().rev().copied().collect()
    }

    pub fn dim(&self) -> usize {
        self.e.iter().enumerate().map(|(k, c)| (k + 1) * c).sum()
    }
}

/// The similarity invariant of a square matrix: ascending eigenvalues with
/// their Jordan block counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeyrSpec {
    pub blocks: Vec<EigenBlock>,
}

/// A diagonal block of the Weyr matrix: eigenvalue index, level `g` and Jordan size `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub eig: usize,
    pub level: usize,
    pub jordan: usize,
    pub size: usize,
    pub offset: usize,
}

impl WeyrSpec {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    /// Slots in matrix order: eigenvalue, then level, then decreasing Jordan size.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out = vec![];
        let mut offset = 0;
        for (eig, b) in self.blocks.iter().enumerate() {
            for level in 1..=b.d() {
                for jordan in (level..=b.d()).rev() {
                    let size = b.e[jordan - 1];
                    if size > 0 {
                        out.push(Slot { eig, level, jordan, size, offset });
                        offset += size;
                    }
                }
            }
        }
        out
    }

    /// The Weyr matrix itself.
    pub fn matrix(&self) -> DenseMatrix {
        let n = self.dim();
        let mut w = DenseMatrix::zeros(n, n);
        let slots = self.slots();
        for s in &slots {
            for k in 0..s.size {
                w.set(s.offset + k, s.offset + k, self.blocks[s.eig].eigenvalue.clone());
            }
            if let Some(up) = slots.iter().find(|u| u.eig == s.eig && u.jordan == s.jordan && u.level == s.level + 1) {
                for k in 0..s.size {
                    w.set(s.offset + k, up.offset + k, Scalar::one());
                }
            }
        }
        w
    }
}

/// The Weyr specification of a Jordan type given as `(eigenvalue, block size)` pairs.
pub fn weyr_vector(jordan: &[(Scalar, usize)]) -> WeyrSpec {
    let mut eigs: Vec<Scalar> = jordan.iter().map(|(l, _)| l.clone()).collect();
    eigs.sort();
    eigs.dedup();
    let blocks = eigs
        .into_iter()
        .map(|l| {
            let sizes: Vec<usize> = jordan.iter().filter(|(x, s)| *x == l && *s > 0).map(|(_, s)| *s).collect();
            let d = sizes.iter().copied().max().unwrap_or(0);
            let mut e = vec![0; d];
            for s in sizes {
                e[s - 1] += 1;
            }
            EigenBlock { eigenvalue: l, e }
        })
        .filter(|b| b.d() > 0)
        .collect();
    WeyrSpec { blocks }
}

fn col_matrix(vs: &[Vec<Scalar>], n: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, vs.len());
    for (j, v) in vs.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

fn apply(a: &DenseMatrix, v: &[Scalar]) -> Vec<Scalar> {
    (0..a.rows())
        .map(|i| v.iter().enumerate().fold(Scalar::zero(), |acc, (j, x)| &acc + &(a.at(i, j) * x)))
        .collect()
}

fn rank_of(vs: &[Vec<Scalar>], n: usize) -> usize {
    if vs.is_empty() {
        0
    } else {
        col_matrix(vs, n).rank_exact()
    }
}

/// Weyr form of a square matrix together with `S` such that `S⁻¹·A·S = W`.
pub fn weyr_of(a: &DenseMatrix) -> Result<(WeyrSpec, DenseMatrix), WeyrError> {
    if !a.is_square() {
        return Err(WeyrError::NotSquare);
    }
    let n = a.rows();
    if n == 0 {
        return Ok((WeyrSpec { blocks: vec![] }, DenseMatrix::zeros(0, 0)));
    }
    let roots = split_roots(&char_poly(a))?;
    let mut blocks = vec![];
    let mut columns: Vec<Vec<Scalar>> = vec![];
    for (lambda, mult) in roots {
        let nmat = a.sub(&DenseMatrix::identity(n).scale(&lambda));
        // kernels of N^j until the generalized eigenspace is reached
        let mut kernels: Vec<Vec<Vec<Scalar>>> = vec![vec![]];
        let mut power = DenseMatrix::identity(n);
        while kernels.last().unwrap().len() < mult {
            power = power.mul(&nmat);
            kernels.push(power.nullspace());
        }
        let d = kernels.len() - 1;
        // chains[r-1] holds the chains of length r, each listed bottom (eigenvector) to top
        let mut chains: Vec<Vec<Vec<Vec<Scalar>>>> = vec![vec![]; d];
        let mut carried: Vec<Vec<Scalar>> = vec![];
        for k in (1..=d).rev() {
            let mut span: Vec<Vec<Scalar>> = kernels[k - 1].clone();
            span.extend(carried.iter().cloned());
            let mut rank = rank_of(&span, n);
            let mut tops = vec![];
            for v in &kernels[k] {
                span.push(v.clone());
                let r = rank_of(&span, n);
                if r > rank {
                    rank = r;
                    tops.push(v.clone());
                } else {
                    span.pop();
                }
            }
            for top in tops {
                let mut chain = vec![top];
                for _ in 1..k {
                    let next = apply(&nmat, chain.last().unwrap());
                    chain.push(next);
                }
                chain.reverse();
                chains[k - 1].push(chain);
            }
            // vectors at height k-1 coming from all chains started so far
            carried = if k >= 2 {
                chains.iter().skip(k - 1).flatten().map(|c| c[k - 2].clone()).collect()
            } else {
                vec![]
            };
        }
        let block = EigenBlock { eigenvalue: lambda, e: chains.iter().map(|c| c.len()).collect() };
        for level in 1..=d {
            for r in (level..=d).rev() {
                for chain in &chains[r - 1] {
                    columns.push(chain[level - 1].clone());
                }
            }
        }
        blocks.push(block);
    }
    Ok((WeyrSpec { blocks }, col_matrix(&columns, n)))
}

/// One free block of the commutant: rows of Jordan size `r`, columns of
/// Jordan size `s`, level shift `shift = g₂ − g₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantBlock {
    pub eig: usize,
    pub r: usize,
    pub s: usize,
    pub shift: usize,
    pub rows: usize,
    pub cols: usize,
    /// Level pairs `(g₁, g₂)` at which this block is repeated.
    pub levels: Vec<(usize, usize)>,
}

/// Structure of `{X : WX = XW}`: every other entry of X is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantShape {
    pub spec: WeyrSpec,
    pub blocks: Vec<CommutantBlock>,
}

impl CommutantShape {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.rows * b.cols).sum()
    }

    /// The commuting matrix whose free parameters are drawn from `next`, in block order.
    pub fn element(&self, mut next: impl FnMut() -> Scalar) -> DenseMatrix {
        let n = self.spec.dim();
        let slots = self.spec.slots();
        let mut x = DenseMatrix::zeros(n, n);
        for b in &self.blocks {
            let vals: Vec<Scalar> = (0..b.rows * b.cols).map(|_| next()).collect();
            for &(g1, g2) in &b.levels {
                let find = |g: usize, j: usize| slots.iter().find(|s| s.eig == b.eig && s.level == g && s.jordan == j).unwrap();
                let (rs, cs) = (find(g1, b.r), find(g2, b.s));
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        x.set(rs.offset + i, cs.offset + j, vals[i * b.cols + j].clone());
                    }
                }
            }
        }
        x
    }
}

/// Free blocks of the commutant of a Weyr matrix.
///
/// Between a row slot of Jordan size `r` at level `g₁` and a column slot of
/// Jordan size `s` at level `g₂`, the entry block is free iff
/// `g₂ − g₁ ≥ max(0, s − r)`, and it depends only on `(r, s, g₂ − g₁)`.
pub fn commutant_shape(w: &WeyrSpec) -> CommutantShape {
    let mut blocks = vec![];
    for (eig, b) in w.blocks.iter().enumerate() {
        let d = b.d();
        for r in (1..=d).rev().filter(|&r| b.e[r - 1] > 0) {
            for s in (1..=d).rev().filter(|&s| b.e[s - 1] > 0) {
                for shift in s.saturating_sub(r)..s {
                    let levels: Vec<(usize, usize)> =
                        (1..=r).map(|g1| (g1, g1 + shift)).filter(|&(_, g2)| g2 <= s).collect();
                    blocks.push(CommutantBlock { eig, r, s, shift, rows: b.e[r - 1], cols: b.e[s - 1], levels });
                }
            }
        }
    }
    CommutantShape { spec: w.clone(), blocks }
}

/// Jordan-block sizes of a Weyr matrix, recovered from the level counts `m`.
pub fn jordan_type(w: &WeyrSpec) -> Vec<(Scalar, usize)> {
    let mut out = vec![];
    for b in &w.blocks {
        let m = b.m();
        for g in 1..=m.len() {
            let next = m.get(g).copied().unwrap_or(0);
            for _ in 0..(m[g - 1] - next) {
                out.push((b.eigenvalue.clone(), g));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn jordan_matrix(blocks: &[(i64, usize)]) -> DenseMatrix {
        let n = blocks.iter().map(|b| b.1).sum();
        let mut m = DenseMatrix::zeros(n, n);
        let mut o = 0;
        for &(l, s) in blocks {
            for k in 0..s {
                m.set(o + k, o + k, Scalar::from(l));
                if k + 1 < s {
                    m.set(o + k, o + k + 1, Scalar::one());
                }
            }
            o += s;
        }
        m
    }

    #[test]
    fn level_counts_of_mixed_jordan_type() {
        let a = jordan_matrix(&[(0, 4), (0, 2), (0, 4), (0, 2), (0, 2)]);
        let (w, s) = weyr_of(&a).unwrap();
        assert_eq!(w.blocks.len(), 1);
        assert_eq!(w.blocks[0].m(), vec![5, 5, 2, 2]);
        assert_eq!(w.blocks[0].e_row(1), vec![2, 0, 3, 0]);
        assert_eq!(w.blocks[0].e_row(4), vec![2]);
        assert_eq!(s.inverse().unwrap().mul(&a).mul(&s), w.matrix());
    }

    #[test]
    fn diagonal_eigenvalues_ascend() {
        let a = jordan_matrix(&[(2, 1), (1, 1)]);
        let (w, _) = weyr_of(&a).unwrap();
        assert_eq!(w.matrix(), jordan_matrix(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn single_block_vectors() {
        let w = weyr_vector(&[(Scalar::zero(), 3)]);
        assert_eq!(w.blocks[0].m(), vec![1, 1, 1]);
        assert_eq!(w.blocks[0].e, vec![0, 0, 1]);
        let w = weyr_vector(&[(Scalar::from(7), 1)]);
        assert_eq!(w.blocks[0].e, vec![1]);
    }

    #[test]
    fn commutant_dimensions() {
        let scalar = weyr_vector(&[(Scalar::one(), 1), (Scalar::one(), 1), (Scalar::one(), 1)]);
        assert_eq!(commutant_shape(&scalar).dim(), 9);
        let j2 = weyr_vector(&[(Scalar::zero(), 2)]);
        assert_eq!(commutant_shape(&j2).dim(), 2);
        let big = weyr_vector(&[(Scalar::zero(), 4), (Scalar::zero(), 4), (Scalar::zero(), 2), (Scalar::zero(), 2), (Scalar::zero(), 2)]);
        // sum over block pairs of min sizes: 4·4 + 9·2 + 2·6·2
        assert_eq!(commutant_shape(&big).dim(), 16 + 18 + 24);
    }

    #[test]
    fn irreducible_spectrum_is_reported() {
        let a = DenseMatrix::from_rows(vec![vec![Scalar::zero(), Scalar::from(-1)], vec![Scalar::one(), Scalar::zero()]]);
        assert!(matches!(weyr_of(&a), Err(WeyrError::NonSplitSpectrum(_))));
    }
}
