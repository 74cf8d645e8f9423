//! Splitting idempotent endomorphisms inside K.

use super::ReduceError;
use crate::exactmath::DenseMatrix;
use crate::problem::{in_k_blockwise, offsets, BimoduleProblem, Morphism};

/// For an idempotent `φ ∈ K`, an invertible `χ ∈ K` with `χ⁻¹φχ` block
/// diagonal and every diagonal block of the form `diag(I, 0)`.
///
/// Diagonal blocks are first brought to `diag(I, 0)` class by class (image
/// basis, then kernel basis); the remaining idempotent `ψ` with diagonal part
/// `D` is then conjugated by `ψD + (I − ψ)(I − D)`, which is unipotent and lies
/// in K because K is an algebra.
pub fn split_idempotent(problem: &BimoduleProblem, phi: &Morphism) -> Result<Morphism, ReduceError> {
    let sizes = phi.row_sizes.clone();
    if phi.col_sizes != sizes || sizes.len() != problem.t() {
        return Err(ReduceError::ShapeMismatch);
    }
    let f = &phi.s;
    if !in_k_blockwise(problem, &sizes, &sizes, f) || f.mul(f) != *f {
        return Err(ReduceError::NotIdempotent);
    }
    let offs = offsets(&sizes);
    let n = offs[sizes.len()];
    let mut chi0 = DenseMatrix::identity(n);
    let mut chi0_inv = DenseMatrix::identity(n);
    for class in problem.partition().classes() {
        let i = class[0];
        let b = f.submatrix(offs[i], offs[i], sizes[i], sizes[i]);
        let (_, pivots) = b.rref();
        let mut u = DenseMatrix::zeros(sizes[i], sizes[i]);
        for (k, &c) in pivots.iter().enumerate() {
            for r in 0..sizes[i] {
                u.set(r, k, b.at(r, c).clone());
            }
        }
        for (k, v) in b.nullspace().into_iter().enumerate() {
            for (r, x) in v.into_iter().enumerate() {
                u.set(r, pivots.len() + k, x);
            }
        }
        let ui = u.inverse().ok_or(ReduceError::NotIdempotent)?;
        for &j in class {
            chi0.set_submatrix(offs[j], offs[j], &u);
            chi0_inv.set_submatrix(offs[j], offs[j], &ui);
        }
    }
    let psi = chi0_inv.mul(f).mul(&chi0);
    let mut d = DenseMatrix::zeros(n, n);
    for i in 0..sizes.len() {
        d.set_submatrix(offs[i], offs[i], &psi.submatrix(offs[i], offs[i], sizes[i], sizes[i]));
    }
    let id = DenseMatrix::identity(n);
    let p = psi.mul(&d).add(&id.sub(&psi).mul(&id.sub(&d)));
    let chi = chi0.mul(&p);
    debug_assert!(in_k_blockwise(problem, &sizes, &sizes, &chi));
    Ok(Morphism { row_sizes: sizes.clone(), col_sizes: sizes, s: chi })
}
