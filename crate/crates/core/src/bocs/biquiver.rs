//! Differential biquivers: vertices, solid and dotted arrows, and the
//! differentials of the dual bases.

use std::collections::HashMap;
use std::fmt;

use super::BocsError;
use crate::exactmath::{Coeff, Poly1, Poly2, Scalar};
use crate::ingest::{left_regular, AlgebraTable};
use crate::problem::{BimoduleProblem, Position};

/// A vertex parameter and the polynomial whose roots it must avoid.
#[derive(Clone, Debug, PartialEq)]
pub struct Parameter {
    pub name: String,
    pub forbidden: Poly1,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub name: String,
    pub parameter: Option<Parameter>,
}

/// A solid or dotted arrow `src → dst`, dual to the basis element with the given pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct BiArrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    pub pivot: Position,
}

/// The arrows a term is built from; composites are written left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Dotted(usize),
    /// Dotted arrow followed by a solid one (`x_pl · z_lq`).
    DottedSolid(usize, usize),
    /// Solid arrow followed by a dotted one (`z_pl · x_lq`).
    SolidDotted(usize, usize),
    DottedDotted(usize, usize),
}

impl Factor {
    fn sort_key(&self) -> (u8, usize, u8, usize) {
        match *self {
            Factor::Dotted(v) => (0, v, 0, 0),
            Factor::DottedSolid(v, a) => (1, a, 0, v),
            Factor::SolidDotted(a, v) => (1, a, 1, v),
            Factor::DottedDotted(u, v) => (2, u, 0, v),
        }
    }

    pub fn solids(&self) -> Vec<usize> {
        match *self {
            Factor::DottedSolid(_, a) | Factor::SolidDotted(a, _) => vec![a],
            _ => vec![],
        }
    }

    pub fn dotteds(&self) -> Vec<usize> {
        match *self {
            Factor::Dotted(v) | Factor::DottedSolid(v, _) | Factor::SolidDotted(_, v) => vec![v],
            Factor::DottedDotted(u, v) => vec![u, v],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Poly2,
    pub factor: Factor,
}

/// A formal linear combination of arrows and composites.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DifferentialExpr {
    pub terms: Vec<Term>,
}

impl DifferentialExpr {
    /// Collect like terms, drop zeros and sort: linear terms, then composites by solid arrow.
    fn from_raw(raw: Vec<(Factor, Poly2)>) -> Self {
        let mut acc: HashMap<Factor, Poly2> = HashMap::new();
        for (f, c) in raw {
            let e = acc.entry(f).or_insert_with(Poly2::zero);
            *e = e.add(&c);
        }
        let mut terms: Vec<Term> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(factor, coeff)| Term { coeff, factor }).collect();
        terms.sort_by(|a, b| a.factor.sort_key().cmp(&b.factor.sort_key()));
        DifferentialExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Linear coefficients `(dotted arrow, f_j)`.
    pub fn linear(&self) -> Vec<(usize, Poly2)> {
        self.terms
            .iter()
            .filter_map(|t| match t.factor {
                Factor::Dotted(v) => Some((v, t.coeff.clone())),
                _ => None,
            })
            .collect()
    }

    /// Value at scalar assignments; `λ`, `μ` are the source and target parameter values.
    pub fn eval(&self, dotted: &[Scalar], solid: &[Scalar], lambda: &Scalar, mu: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for t in &self.terms {
            let v = match t.factor {
                Factor::Dotted(u) => dotted[u].clone(),
                Factor::DottedSolid(u, a) => &dotted[u] * &solid[a],
                Factor::SolidDotted(a, u) => &solid[a] * &dotted[u],
                Factor::DottedDotted(u, w) => &dotted[u] * &dotted[w],
            };
            acc = &acc + &(&t.coeff.eval(lambda, mu) * &v);
        }
        acc
    }

    pub fn render(&self, solid: &[BiArrow], dotted: &[BiArrow]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for t in &self.terms {
            let word = match t.factor {
                Factor::Dotted(u) => dotted[u].name.clone(),
                Factor::DottedSolid(u, a) => format!("{}{}", dotted[u].name, solid[a].name),
                Factor::SolidDotted(a, u) => format!("{}{}", solid[a].name, dotted[u].name),
                Factor::DottedDotted(u, w) => format!("{}{}", dotted[u].name, dotted[w].name),
            };
            let (neg, mag) = match t.coeff.as_constant() {
                Some(c) => {
                    let s = c.to_string();
                    match s.strip_prefix('-') {
                        Some(m) => (true, m.to_string()),
                        None => (false, s),
                    }
                }
                None => (false, format!("({})", t.coeff)),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
            }
            out.push_str(&word);
        }
        out
    }
}

/// A layered bocs presented as a differential biquiver.
#[derive(Clone, Debug, PartialEq)]
pub struct Biquiver {
    pub vertices: Vec<Vertex>,
    /// Solid arrows, dual to the M-basis, in basis order.
    pub solid: Vec<BiArrow>,
    /// Dotted arrows, dual to the radical basis of K, in basis order.
    pub dotted: Vec<BiArrow>,
    pub delta1: Vec<DifferentialExpr>,
    pub delta2: Vec<DifferentialExpr>,
}

fn index_support<C: Coeff>(elems: &[crate::problem::BasisElement<C>]) -> HashMap<Position, Vec<(usize, Poly2)>> {
    let mut m: HashMap<Position, Vec<(usize, Poly2)>> = HashMap::new();
    for (w, e) in elems.iter().enumerate() {
        for (pos, c) in &e.support {
            m.entry(*pos).or_default().push((w, c.to_poly2()));
        }
    }
    m
}

/// The biquiver of a problem with every vertex trivial.
pub fn to_biquiver<C: Coeff>(problem: &BimoduleProblem<C>) -> Biquiver {
    to_biquiver_with(problem, &vec![None; problem.partition().num_classes()])
}

/// The biquiver of a freely parameterized problem; `params[c]` is the
/// forbidden polynomial of class `c` when it carries a parameter.
pub fn to_biquiver_with<C: Coeff>(problem: &BimoduleProblem<C>, params: &[Option<Poly1>]) -> Biquiver {
    let part = problem.partition();
    let bases = problem.bases();
    let t = problem.t();
    let mut k = 0;
    let vertices = (0..part.num_classes())
        .map(|c| Vertex {
            name: problem.class_name(c),
            parameter: params[c].as_ref().map(|g| {
                k += 1;
                Parameter { name: format!("λ{k}"), forbidden: g.clone() }
            }),
        })
        .collect();
    let arrow = |prefix: &str, w: usize, e: &crate::problem::BasisElement<C>| BiArrow {
        name: format!("{prefix}{}", w + 1),
        src: e.classes.0,
        dst: e.classes.1,
        pivot: e.pivot,
    };
    let solid: Vec<BiArrow> = bases.a.iter().enumerate().map(|(w, e)| arrow("a", w, e)).collect();
    let dotted: Vec<BiArrow> = bases.b.iter().enumerate().map(|(w, e)| arrow("v", w, e)).collect();
    let x = index_support(&bases.b);
    let z = index_support(&bases.a);
    let h = problem.h();
    let none = vec![];

    let mut delta1 = vec![];
    for rho in &bases.a {
        let (p, q) = rho.pivot;
        let mut raw: Vec<(Factor, Poly2)> = vec![];
        for l in p + 1..t {
            let xs = x.get(&(p, l)).unwrap_or(&none);
            if xs.is_empty() {
                continue;
            }
            let hv = h.at(l, q).to_poly2().swap_vars();
            for (u, c) in xs {
                if !hv.is_zero() {
                    raw.push((Factor::Dotted(*u), c.mul(&hv)));
                }
                for (w, d) in z.get(&(l, q)).unwrap_or(&none) {
                    raw.push((Factor::DottedSolid(*u, *w), c.mul(d)));
                }
            }
        }
        for l in 0..q {
            let xs = x.get(&(l, q)).unwrap_or(&none);
            if xs.is_empty() {
                continue;
            }
            let hv = h.at(p, l).to_poly2();
            for (u, c) in xs {
                if !hv.is_zero() {
                    raw.push((Factor::Dotted(*u), hv.mul(c).neg()));
                }
                for (w, d) in z.get(&(p, l)).unwrap_or(&none) {
                    raw.push((Factor::SolidDotted(*w, *u), d.mul(c).neg()));
                }
            }
        }
        delta1.push(DifferentialExpr::from_raw(raw));
    }

    let mut delta2 = vec![];
    for zeta in &bases.b {
        let (p, q) = zeta.pivot;
        let mut raw = vec![];
        for l in p + 1..q {
            for (u, c) in x.get(&(p, l)).unwrap_or(&none) {
                for (v, d) in x.get(&(l, q)).unwrap_or(&none) {
                    raw.push((Factor::DottedDotted(*u, *v), c.mul(d)));
                }
            }
        }
        delta2.push(DifferentialExpr::from_raw(raw));
    }
    Biquiver { vertices, solid, dotted, delta1, delta2 }
}

/// The biquiver of the projective-morphism problem of an algebra, with arrows
/// named after radical basis elements where a dual element is exactly one of
/// them: `x*` for solid arrows, `~x` for dotted ones (primed on the top copy).
pub fn p1_biquiver(alg: &AlgebraTable, problem: &BimoduleProblem) -> Biquiver {
    let mut bq = to_biquiver(problem);
    let t = alg.dim();
    let regs = left_regular(alg);
    let rad = alg.radical_dim();
    let part = problem.partition();
    let name_for = |e: &crate::problem::BasisElement, space_k: bool| -> Option<String> {
        let (ci, cj) = e.classes;
        let positions: Vec<Position> = part
            .class(ci)
            .iter()
            .flat_map(|&i| part.class(cj).iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| !space_k || i < j)
            .collect();
        let matches: Vec<usize> = (0..rad)
            .filter(|&x| {
                let mut nonzero = false;
                for &(i, j) in &positions {
                    let want = regs[x].at(i % t, j % t);
                    let have = e.coeff_at((i, j)).cloned().unwrap_or_else(Scalar::zero);
                    if &have != want {
                        return false;
                    }
                    nonzero |= !want.is_zero();
                }
                nonzero
            })
            .collect();
        (matches.len() == 1).then(|| alg.names[matches[0]].clone())
    };
    for (w, e) in problem.bases().a.iter().enumerate() {
        if let Some(n) = name_for(e, false) {
            bq.solid[w].name = format!("{n}*");
        }
    }
    for (w, e) in problem.bases().b.iter().enumerate() {
        if let Some(n) = name_for(e, true) {
            let prime = if e.pivot.0 < t { "'" } else { "" };
            bq.dotted[w].name = format!("~{n}{prime}");
        }
    }
    bq
}

/// Outcome of a successful layer check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub solid: usize,
    pub dotted: usize,
    pub zero_differentials: usize,
}

/// Verify that composites in `δ(a_i)` use only solid arrows `a_j`, `j < i`,
/// that `δ(v_j)` uses only dotted arrows `v_{j'}`, `j' < j`, and that every
/// composite runs along the arrows' endpoints.
pub fn check_layer(bq: &Biquiver) -> Result<LayerReport, BocsError> {
    let violation = |arrow: &BiArrow, offending: &BiArrow| BocsError::TriangularityViolated {
        arrow: arrow.name.clone(),
        offending: offending.name.clone(),
    };
    for (i, d) in bq.delta1.iter().enumerate() {
        let a = &bq.solid[i];
        for t in &d.terms {
            for s in t.factor.solids() {
                if s >= i {
                    return Err(violation(a, &bq.solid[s]));
                }
            }
            let ok = match t.factor {
                Factor::Dotted(v) => (bq.dotted[v].src, bq.dotted[v].dst) == (a.src, a.dst),
                Factor::DottedSolid(v, s) => {
                    bq.dotted[v].src == a.src && bq.dotted[v].dst == bq.solid[s].src && bq.solid[s].dst == a.dst
                }
                Factor::SolidDotted(s, v) => {
                    bq.solid[s].src == a.src && bq.solid[s].dst == bq.dotted[v].src && bq.dotted[v].dst == a.dst
                }
                Factor::DottedDotted(..) => false,
            };
            if !ok {
                return Err(BocsError::IllFormedTerm { arrow: a.name.clone() });
            }
        }
    }
    for (j, d) in bq.delta2.iter().enumerate() {
        let v = &bq.dotted[j];
        for t in &d.terms {
            for u in t.factor.dotteds() {
                if u >= j {
                    return Err(violation(v, &bq.dotted[u]));
                }
            }
            let ok = match t.factor {
                Factor::DottedDotted(u, w) => {
                    bq.dotted[u].src == v.src && bq.dotted[u].dst == bq.dotted[w].src && bq.dotted[w].dst == v.dst
                }
                _ => false,
            };
            if !ok {
                return Err(BocsError::IllFormedTerm { arrow: v.name.clone() });
            }
        }
    }
    let zero = bq.delta1.iter().chain(&bq.delta2).filter(|d| d.is_zero()).count();
    Ok(LayerReport { solid: bq.solid.len(), dotted: bq.dotted.len(), zero_differentials: zero })
}

impl Biquiver {
    /// Reorder the solid arrows: new arrow `k` is old arrow `perm[k]`.
    pub fn permute_solid(&self, perm: &[usize]) -> Biquiver {
        let mut inv = vec![0; perm.len()];
        for (k, &o) in perm.iter().enumerate() {
            inv[o] = k;
        }
        let remap = |f: Factor| match f {
            Factor::DottedSolid(v, a) => Factor::DottedSolid(v, inv[a]),
            Factor::SolidDotted(a, v) => Factor::SolidDotted(inv[a], v),
            other => other,
        };
        let mut out = self.clone();
        out.solid = perm.iter().map(|&o| self.solid[o].clone()).collect();
        out.delta1 = perm
            .iter()
            .map(|&o| DifferentialExpr {
                terms: self.delta1[o].terms.iter().map(|t| Term { coeff: t.coeff.clone(), factor: remap(t.factor) }).collect(),
            })
            .collect();
        out
    }

    pub fn solid_index(&self, name: &str) -> Option<usize> {
        self.solid.iter().position(|a| a.name == name)
    }

    pub fn dotted_index(&self, name: &str) -> Option<usize> {
        self.dotted.iter().position(|a| a.name == name)
    }

    /// `δ` of the named arrow, rendered.
    pub fn delta_text(&self, name: &str) -> Option<String> {
        if let Some(i) = self.solid_index(name) {
            return Some(self.delta1[i].render(&self.solid, &self.dotted));
        }
        self.dotted_index(name).map(|j| self.delta2[j].render(&self.solid, &self.dotted))
    }

    /// Graphviz rendering: solid arrows as solid edges, dotted arrows dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph biquiver {\n");
        for (c, v) in self.vertices.iter().enumerate() {
            let label = match &v.parameter {
                None => v.name.clone(),
                Some(p) => format!("{} [{}; g = {}]", v.name, p.name, p.forbidden.display_in(&p.name)),
            };
            out.push_str(&format!("  v{c} [label=\"{}\"];\n", escape(&label)));
        }
        for a in &self.solid {
            out.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", a.src, a.dst, escape(&a.name)));
        }
        for a in &self.dotted {
            out.push_str(&format!("  v{} -> v{} [label=\"{}\", style=dashed];\n", a.src, a.dst, escape(&a.name)));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl fmt::Display for Biquiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            match &v.parameter {
                None => writeln!(f, "vertex {}", v.name)?,
                Some(p) => writeln!(f, "vertex {} parameter {} forbidden {}", v.name, p.name, p.forbidden.display_in(&p.name))?,
            }
        }
        for (kind, arrows) in [("solid", &self.solid), ("dotted", &self.dotted)] {
            for a in arrows {
                writeln!(f, "{kind} {}: {} -> {}", a.name, self.vertices[a.src].name, self.vertices[a.dst].name)?;
            }
        }
        for (a, d) in self.solid.iter().zip(&self.delta1).chain(self.dotted.iter().zip(&self.delta2)) {
            writeln!(f, "d({}) = {}", a.name, d.render(&self.solid, &self.dotted))?;
        }
        Ok(())
    }
}
