//! Univariate and bivariate polynomials over the base field.
//!
//! `Poly2` uses λ for the left variable and μ for the right one; its leading
//! term is taken in the lexicographic order with λ > μ.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("all polynomials are zero")]
    AllZero,
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly1 {
    coeffs: Vec<Scalar>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly1::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Poly1::constant(Scalar::one())
    }

    /// `x - r`
    pub fn linear_root(r: &Scalar) -> Self {
        Poly1::from_coeffs(vec![-r, Scalar::one()])
    }

    pub fn x() -> Self {
        Poly1::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::from_coeffs((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly1::from_coeffs((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly1 {
        Poly1 { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly1 {
        Poly1::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly1::from_coeffs(out)
    }

    /// Euclidean division over the field. Panics on a zero divisor.
    pub fn divrem(&self, d: &Poly1) -> (Poly1, Poly1) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() * &inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * dc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly1::from_coeffs(q), Poly1::from_coeffs(r))
    }

    pub fn exact_div(&self, d: &Poly1) -> Option<Poly1> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly1 {
        match self.lead() {
            None => Poly1::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd; gcd(0,0) = 0.
    pub fn gcd(&self, o: &Poly1) -> Poly1 {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly1 {
        Poly1::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly1) -> Poly1 {
        let mut base = self.divrem(m).1;
        let mut acc = Poly1::one().divrem(m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(m).1;
            }
            base = base.mul(&base).divrem(m).1;
            e >>= 1;
        }
        acc
    }

    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(u32, u32, Scalar)> =
            self.coeffs.iter().enumerate().map(|(i, c)| (i as u32, 0, c.clone())).collect();
        render_terms(terms.into_iter().rev(), var, "")
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("λ"))
    }
}

fn render_terms(terms: impl Iterator<Item = (u32, u32, Scalar)>, x: &str, y: &str) -> String {
    let mut out = String::new();
    for (i, j, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mut mono = String::new();
        for (v, e) in [(x, i), (y, j)] {
            match e {
                0 => {}
                1 => mono.push_str(v),
                _ => mono.push_str(&format!("{v}^{e}")),
            }
        }
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag);
        } else if mag != "1" {
            out.push_str(&mag);
            out.push_str(&mono);
        } else {
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Sparse bivariate polynomial; key `(i, j)` is the monomial `λ^i μ^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly2::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Poly2::constant(Scalar::one())
    }

    pub fn lambda() -> Self {
        Poly2::monomial(1, 0, Scalar::one())
    }

    pub fn mu() -> Self {
        Poly2::monomial(0, 1, Scalar::one())
    }

    pub fn monomial(i: u32, j: u32, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Poly2 { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    fn accumulate(terms: &mut BTreeMap<(u32, u32), Scalar>, k: (u32, u32), c: Scalar) {
        let e = terms.entry(k).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            terms.remove(&k);
        }
    }

    pub fn add(&self, o: &Poly2) -> Poly2 {
        let mut t = self.terms.clone();
        for (k, c) in &o.terms {
            Poly2::accumulate(&mut t, *k, c.clone());
        }
        Poly2 { terms: t }
    }

    pub fn sub(&self, o: &Poly2) -> Poly2 {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly2 {
        if s.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly2) -> Poly2 {
        let mut t = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            for ((d, e), f) in &o.terms {
                Poly2::accumulate(&mut t, (a + d, b + e), c * f);
            }
        }
        Poly2 { terms: t }
    }

    /// Exchange λ and μ.
    pub fn swap_vars(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect() }
    }

    /// Leading monomial and coefficient under lex order λ > μ.
    pub fn lead(&self) -> Option<((u32, u32), &Scalar)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn monic(&self) -> Poly2 {
        match self.lead() {
            None => Poly2::zero(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn deg_lambda(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_mu(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn eval(&self, l: &Scalar, m: &Scalar) -> Scalar {
        self.terms
            .iter()
            .fold(Scalar::zero(), |acc, ((i, j), c)| &acc + &(&(c * &l.pow(*i as u64)) * &m.pow(*j as u64)))
    }

    pub fn from_lambda(p: &Poly1) -> Poly2 {
        Poly2 {
            terms: p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| ((i as u32, 0), c.clone()))
                .collect(),
        }
    }

    pub fn from_mu(p: &Poly1) -> Poly2 {
        Poly2::from_lambda(p).swap_vars()
    }

    /// The polynomial as one in λ alone, if μ does not occur.
    pub fn only_lambda(&self) -> Option<Poly1> {
        if self.terms.keys().any(|k| k.1 != 0) {
            return None;
        }
        let n = self.deg_lambda().map_or(0, |d| d as usize + 1);
        Some(Poly1::from_coeffs(
            (0..n).map(|i| self.terms.get(&(i as u32, 0)).cloned().unwrap_or_else(Scalar::zero)).collect(),
        ))
    }

    pub fn only_mu(&self) -> Option<Poly1> {
        self.swap_vars().only_lambda()
    }

    /// View as a polynomial in λ with coefficients in k[μ]: `out[i]` multiplies λ^i.
    fn lambda_coeffs(&self) -> Vec<Poly1> {
        let n = self.deg_lambda().map_or(0, |d| d as usize + 1);
        let mut raw: Vec<Vec<Scalar>> = vec![vec![]; n];
        for ((i, j), c) in &self.terms {
            let v = &mut raw[*i as usize];
            if v.len() <= *j as usize {
                v.resize(*j as usize + 1, Scalar::zero());
            }
            v[*j as usize] = c.clone();
        }
        raw.into_iter().map(Poly1::from_coeffs).collect()
    }

    fn from_lambda_coeffs(cs: &[Poly1]) -> Poly2 {
        let mut terms = BTreeMap::new();
        for (i, p) in cs.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((i as u32, j as u32), c.clone());
                }
            }
        }
        Poly2 { terms }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly2) -> Option<Poly2> {
        let ((di, dj), dc) = d.lead()?;
        let dinv = dc.inv().unwrap();
        let mut r = self.clone();
        let mut q = Poly2::zero();
        while let Some(((ri, rj), rc)) = r.lead() {
            if ri < di || rj < dj {
                return None;
            }
            let t = Poly2::monomial(ri - di, rj - dj, rc * &dinv);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Factorization `f = a(λ)·b(μ)` with `a` monic, when one exists.
    pub fn split(&self) -> Option<(Poly1, Poly1)> {
        let cols = self.swap_vars().lambda_coeffs(); // cols[j]: coefficient of μ^j, a poly in λ
        let base = cols.iter().find(|c| !c.is_zero())?.monic();
        let lc = base.lead().unwrap().clone();
        let mut b = Vec::with_capacity(cols.len());
        for c in &cols {
            if c.is_zero() {
                b.push(Scalar::zero());
                continue;
            }
            let beta = &c.coeff(base.degree().unwrap()) / &lc;
            if c.sub(&base.scale(&beta)).is_zero() {
                b.push(beta);
            } else {
                return None;
            }
        }
        Some((base, Poly1::from_coeffs(b)))
    }

    /// Gcd normalized to leading coefficient 1 (lex λ > μ); gcd(0,0) = 0.
    pub fn gcd(&self, o: &Poly2) -> Poly2 {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let (ca, pa) = content_split(&self.lambda_coeffs());
        let (cb, pb) = content_split(&o.lambda_coeffs());
        let c = ca.gcd(&cb);
        let (mut a, mut b) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
        let g = loop {
            if b.len() <= 1 {
                break vec![Poly1::one()];
            }
            let r = trim(prem(&a, &b));
            if r.is_empty() {
                break b;
            }
            a = b;
            b = content_split(&r).1;
        };
        let g = content_split(&g).1;
        Poly2::from_lambda_coeffs(&g).mul(&Poly2::from_mu(&c)).monic()
    }

    pub fn display_in(&self, x: &str, y: &str) -> String {
        render_terms(self.terms.iter().rev().map(|((i, j), c)| (*i, *j, c.clone())), x, y)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("λ", "μ"))
    }
}

fn trim(mut v: Vec<Poly1>) -> Vec<Poly1> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Content (monic gcd of the coefficients) and primitive part.
fn content_split(cs: &[Poly1]) -> (Poly1, Vec<Poly1>) {
    let c = cs.iter().fold(Poly1::zero(), |g, p| g.gcd(p));
    if c.is_zero() {
        return (c, vec![]);
    }
    let pp = cs.iter().map(|p| p.exact_div(&c).expect("content divides")).collect();
    (c, trim(pp))
}

/// Pseudo-remainder of `a` by `b` in k[μ][λ].
fn prem(a: &[Poly1], b: &[Poly1]) -> Vec<Poly1> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = r[k + i].sub(&bc.mul(&lr));
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Monic gcd `f` of `fs` and the cofactors `q_j = f_j / f`.
pub fn poly_gcd_cofactors(fs: &[Poly2]) -> Result<(Poly2, Vec<Poly2>), PolyError> {
    if fs.iter().all(|f| f.is_zero()) {
        return Err(PolyError::AllZero);
    }
    let f = fs.iter().fold(Poly2::zero(), |g, p| g.gcd(p));
    let qs = fs.iter().map(|p| p.exact_div(&f).expect("gcd divides every input")).collect();
    Ok((f, qs))
}
