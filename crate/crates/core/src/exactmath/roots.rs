//! Characteristic polynomials and exact splitting into linear factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::matrix::DenseMatrix;
use super::poly::Poly1;
use super::scalar::Scalar;

/// The polynomial has an irreducible factor of degree > 1 over the base field.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("spectrum does not split over the base field; leftover factor {factor}")]
pub struct NonSplit {
    pub factor: Poly1,
}

/// `det(x·I − A)`, via reduction to Hessenberg form (valid over any field).
pub fn char_poly(a: &DenseMatrix) -> Poly1 {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| !h.at(i, j).is_zero()) else { continue };
        if i != j + 1 {
            h.swap_rows(i, j + 1);
            for r in 0..n {
                let (x, y) = (h.at(r, i).clone(), h.at(r, j + 1).clone());
                h.set(r, i, y);
                h.set(r, j + 1, x);
            }
        }
        let piv = h.at(j + 1, j).inv().unwrap();
        for k in j + 2..n {
            if h.at(k, j).is_zero() {
                continue;
            }
            let u = h.at(k, j) * &piv;
            for c in 0..n {
                let v = h.at(k, c) - &(&u * h.at(j + 1, c));
                h.set(k, c, v);
            }
            for r in 0..n {
                let v = h.at(r, j + 1) + &(&u * h.at(r, k));
                h.set(r, j + 1, v);
            }
        }
    }
    let mut p = vec![Poly1::one()];
    for m in 1..=n {
        let lin = Poly1::from_coeffs(vec![-h.at(m - 1, m - 1), Scalar::one()]);
        let mut pm = lin.mul(&p[m - 1]);
        let mut t = Scalar::one();
        for i in (1..m).rev() {
            t = &t * h.at(i, i - 1);
            if t.is_zero() {
                break;
            }
            let c = h.at(i - 1, m - 1) * &t;
            pm = pm.sub(&p[i - 1].scale(&c));
        }
        p.push(pm);
    }
    p.pop().unwrap()
}

/// Roots with multiplicities, ascending in the field order.
pub fn split_roots(f: &Poly1) -> Result<Vec<(Scalar, usize)>, NonSplit> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let sq = f.exact_div(&f.gcd(&f.derivative())).unwrap().monic();
    let modulus = f.coeffs().iter().find_map(|c| c.modulus());
    let mut roots = match modulus {
        None => rational_roots(&sq),
        Some(p) => residue_roots(&sq, p),
    };
    roots.sort();
    let mut rest = f.monic();
    let mut out = vec![];
    for r in roots {
        let lin = Poly1::linear_root(&r);
        let mut k = 0;
        while let Some(q) = rest.exact_div(&lin) {
            rest = q;
            k += 1;
        }
        out.push((r, k));
    }
    if rest.degree().unwrap_or(0) > 0 {
        return Err(NonSplit { factor: rest });
    }
    Ok(out)
}

fn rational_roots(sq: &Poly1) -> Vec<Scalar> {
    let n = sq.degree().unwrap();
    if n == 0 {
        return vec![];
    }
    // integer coefficients a_i, then y = a_n·x turns f into a monic integer polynomial g
    let qs: Vec<BigRational> = sq.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let l = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let a: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let an = a[n].clone();
    let mut g: Vec<BigInt> = (0..=n).map(|i| &a[i] * an.pow((n - 1 - i.min(n - 1)) as u32)).collect();
    g[n] = BigInt::one();
    integer_roots(&g).into_iter().map(|y| Scalar::Q(BigRational::new(y, an.clone()))).collect()
}

fn eval_int(g: &[BigInt], x: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Integer roots of a squarefree monic integer polynomial via Sturm bisection.
fn integer_roots(g: &[BigInt]) -> Vec<BigInt> {
    let gq = Poly1::from_coeffs(g.iter().map(|c| Scalar::Q(BigRational::from_integer(c.clone()))).collect());
    let mut sturm = vec![gq.clone(), gq.derivative()];
    while !sturm.last().unwrap().is_zero() {
        let k = sturm.len();
        let r = sturm[k - 2].divrem(&sturm[k - 1]).1.neg();
        sturm.push(r);
    }
    sturm.pop();
    let variations = |x: &BigInt| -> usize {
        let xs = Scalar::Q(BigRational::from_integer(x.clone()));
        let signs: Vec<bool> = sturm
            .iter()
            .map(|p| p.eval(&xs))
            .filter(|v| !v.is_zero())
            .map(|v| v.as_rational().unwrap().is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let bound = g.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let mut out = vec![];
    // roots counted on half-open intervals (lo, hi]
    let mut stack = vec![(-bound.clone() - BigInt::one(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        if variations(&lo) == variations(&hi) {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if eval_int(g, &hi).is_zero() {
                out.push(hi);
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out
}

fn residue_roots(sq: &Poly1, p: u64) -> Vec<Scalar> {
    let one_p = Scalar::Zp { v: 1, p };
    let x = Poly1::from_coeffs(vec![Scalar::Zp { v: 0, p }, one_p.clone()]);
    let xp = x.pow_mod(p, sq);
    let lin_part = sq.gcd(&xp.sub(&x));
    let mut out = vec![];
    split_distinct_linear(&lin_part, p, &mut out);
    out
}

fn split_distinct_linear(g: &Poly1, p: u64, out: &mut Vec<Scalar>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let c = g.monic();
            out.push(-&c.coeff(0));
            return;
        }
        _ => {}
    }
    if p == 2 {
        for v in 0..2 {
            let s = Scalar::Zp { v, p };
            if g.eval(&s).is_zero() {
                out.push(s);
            }
        }
        return;
    }
    for a in 0..p {
        let shifted = Poly1::from_coeffs(vec![Scalar::Zp { v: a, p }, Scalar::Zp { v: 1, p }]);
        let h = shifted.pow_mod((p - 1) / 2, g).sub(&Poly1::constant(Scalar::Zp { v: 1, p }));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            split_distinct_linear(&d, p, out);
            split_distinct_linear(&g.exact_div(&d).unwrap(), p, out);
            return;
        }
    }
    unreachable!("distinct roots are always separated by some shift");
}
