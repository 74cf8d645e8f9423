//! Classification of the first solid arrow of a freely parameterized layer.

use std::fmt;

use super::biquiver::Biquiver;
use super::BocsError;
use crate::exactmath::{poly_gcd_cofactors, Poly1, Poly2};

/// Which endpoints of the first arrow carry a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowCase {
    /// Both endpoints are parameterized.
    A1,
    /// Only the source is parameterized.
    A2,
    /// Only the target is parameterized.
    A2Dual,
    /// Neither endpoint is parameterized.
    A3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WildCase {
    /// Both endpoints parameterized and `δ(a₁) = f·v` with `f` not invertible.
    Case1,
    /// One endpoint parameterized, the other trivial, and `δ(a₁) = 0`.
    Case2,
}

/// A configuration forcing wildness.
#[derive(Clone, Debug, PartialEq)]
pub struct WildVerdict {
    pub case: WildCase,
    pub arrow: String,
    pub src: String,
    pub dst: String,
    pub f: Poly2,
}

impl fmt::Display for WildVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let case = match self.case {
            WildCase::Case1 => "case 1",
            WildCase::Case2 => "case 2",
        };
        write!(f, "wild ({case}): arrow {}: {} -> {}, f = {}", self.arrow, self.src, self.dst, self.f)
    }
}

/// A continuation that keeps every existing parameter free.
#[derive(Clone, Debug, PartialEq)]
pub enum Branch {
    /// `δ(a₁) = 0` on a trivial loop: a Weyr reduction, or a new parameter.
    LoopOrParameter,
    /// `δ(a₁) = 0` between trivial vertices: an edge reduction of any rank.
    Edge,
    /// `δ(a₁) = f·w ≠ 0`: regularize, shrinking the parameter domains by the
    /// given factors of `f`.
    Regularize { localize_src: Poly1, localize_dst: Poly1 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Wild(WildVerdict),
    Reducible(Branch),
    Minimal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstArrowReport {
    pub arrow: usize,
    pub case: ArrowCase,
    /// Monic gcd of the linear coefficients of `δ(a₁)`; zero when `δ(a₁) = 0`.
    pub f: Poly2,
    /// `(dotted arrow, f_j / f)` for every nonzero linear coefficient.
    pub cofactors: Vec<(usize, Poly2)>,
    /// `f = f_P(λ)·f_Q(μ)`, when such a factorization exists.
    pub split: Option<(Poly1, Poly1)>,
    pub verdict: Verdict,
}

/// Whether a polynomial in a vertex parameter is a unit once the roots of `g` are removed.
fn invertible_off(p: &Poly1, g: &Poly1) -> bool {
    let Some(d) = p.degree() else { return false };
    let mut power = Poly1::one();
    for _ in 0..d {
        power = power.mul(g);
    }
    power.exact_div(p).is_some()
}

/// Analyze the first solid arrow `a₁: P → Q` by the parameters at `P`, `Q`
/// and the linear part of `δ(a₁)`.
pub fn first_arrow_analysis(bq: &Biquiver) -> Result<FirstArrowReport, BocsError> {
    let a = bq.solid.first().ok_or(BocsError::NoSolidArrow)?;
    let (vp, vq) = (&bq.vertices[a.src], &bq.vertices[a.dst]);
    let case = match (vp.parameter.is_some(), vq.parameter.is_some()) {
        (true, true) => ArrowCase::A1,
        (true, false) => ArrowCase::A2,
        (false, true) => ArrowCase::A2Dual,
        (false, false) => ArrowCase::A3,
    };
    let lin = bq.delta1[0].linear();
    let (f, cofactors) = if lin.is_empty() {
        (Poly2::zero(), vec![])
    } else {
        let fs: Vec<Poly2> = lin.iter().map(|(_, c)| c.clone()).collect();
        let (f, qs) = poly_gcd_cofactors(&fs).expect("nonzero linear terms");
        (f, lin.iter().map(|(v, _)| *v).zip(qs).collect())
    };
    let split = if f.is_zero() { None } else { f.split() };
    let wild = |case| {
        Verdict::Wild(WildVerdict {
            case,
            arrow: a.name.clone(),
            src: vp.name.clone(),
            dst: vq.name.clone(),
            f: f.clone(),
        })
    };
    let one = Poly1::one();
    let verdict = match case {
        ArrowCase::A1 => match &split {
            None => wild(WildCase::Case1),
            Some((fp, fq)) => {
                let (gp, gq) = (&vp.parameter.as_ref().unwrap().forbidden, &vq.parameter.as_ref().unwrap().forbidden);
                let keep = |p: &Poly1, g: &Poly1| if invertible_off(p, g) { Poly1::one() } else { p.clone() };
                if a.src == a.dst {
                    // one parameter, seen from both sides of the loop
                    let both = fp.mul(fq);
                    Verdict::Reducible(Branch::Regularize { localize_src: keep(&both, gp), localize_dst: one })
                } else {
                    Verdict::Reducible(Branch::Regularize { localize_src: keep(fp, gp), localize_dst: keep(fq, gq) })
                }
            }
        },
        ArrowCase::A2 | ArrowCase::A2Dual if f.is_zero() => wild(WildCase::Case2),
        ArrowCase::A2 => {
            let fp = f.only_lambda().unwrap_or_else(|| split.as_ref().map(|s| s.0.clone()).unwrap_or(Poly1::one()));
            Verdict::Reducible(Branch::Regularize { localize_src: fp, localize_dst: one })
        }
        ArrowCase::A2Dual => {
            let fq = f.only_mu().unwrap_or_else(|| split.as_ref().map(|s| s.1.clone()).unwrap_or(Poly1::one()));
            Verdict::Reducible(Branch::Regularize { localize_src: one, localize_dst: fq })
        }
        ArrowCase::A3 if !f.is_zero() => {
            Verdict::Reducible(Branch::Regularize { localize_src: one.clone(), localize_dst: one })
        }
        ArrowCase::A3 if a.src == a.dst => Verdict::Reducible(Branch::LoopOrParameter),
        ArrowCase::A3 => Verdict::Reducible(Branch::Edge),
    };
    Ok(FirstArrowReport { arrow: 0, case, f, cofactors, split, verdict })
}
