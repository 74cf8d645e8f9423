use std::collections::HashMap;

use super::IngestError;
use crate::exactmath::{DenseMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A quiver with relations; paths compose left to right (`ab` is `a` then `b`).
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Each relation is a linear combination of paths given as arrow-name sequences.
    pub relations: Vec<Vec<(Scalar, Vec<String>)>>,
    /// Every path of length `bound + 1` must vanish.
    pub bound: usize,
    /// Optional explicit order of the radical basis paths.
    pub order: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Vertex(usize),
    Path(Vec<usize>),
}

/// An ordered basis of the algebra with its multiplication table: radical
/// paths first (longest first), then the vertex idempotents.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraTable {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub basis: Vec<BasisKind>,
    pub names: Vec<String>,
    /// `mult[a][b]` holds the coordinates of `basis[a]·basis[b]`.
    pub mult: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    arrows: Vec<usize>,
    src: usize,
    dst: usize,
}

fn concat(a: &Path, b: &Path) -> Option<Path> {
    (a.dst == b.src).then(|| Path { arrows: [a.arrows.clone(), b.arrows.clone()].concat(), src: a.src, dst: b.dst })
}

impl QuiverPresentation {
    fn arrow_index(&self, name: &str) -> Result<usize, IngestError> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| IngestError::UnknownArrow(name.into()))
    }

    fn parse_path(&self, names: &[String]) -> Result<Path, IngestError> {
        let idx: Vec<usize> = names.iter().map(|n| self.arrow_index(n)).collect::<Result<_, _>>()?;
        if idx.is_empty() {
            return Err(IngestError::NotComposable("(empty)".into()));
        }
        for w in idx.windows(2) {
            if self.arrows[w[0]].dst != self.arrows[w[1]].src {
                return Err(IngestError::NotComposable(names.join(".")));
            }
        }
        Ok(Path { src: self.arrows[idx[0]].src, dst: self.arrows[*idx.last().unwrap()].dst, arrows: idx })
    }

    fn names_of(&self, p: &Path) -> Vec<&str> {
        p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect()
    }
}

fn path_name(arrows: &[Arrow], p: &[usize]) -> String {
    let names: Vec<&str> = p.iter().map(|&a| arrows[a].name.as_str()).collect();
    if names.iter().all(|n| n.chars().count() == 1) {
        names.concat()
    } else {
        names.join(".")
    }
}

/// Compute a basis of `kQ/I` and its multiplication table.
///
/// Paths up to length `bound + 1` are reduced modulo the two-sided ideal
/// generated by the relations. A path is eliminated in favour of longer ones
/// first, and among equal lengths the lexicographically greater arrow-name
/// sequence is eliminated, so the surviving basis refines the radical
/// filtration.
pub fn build_algebra(q: &QuiverPresentation) -> Result<AlgebraTable, IngestError> {
    let s = q.vertices.len();
    for a in &q.arrows {
        if a.src >= s || a.dst >= s {
            return Err(IngestError::UnknownVertex(a.name.clone()));
        }
    }
    let top = q.bound + 1;
    let mut layers: Vec<Vec<Path>> = vec![(0..s).map(|v| Path { arrows: vec![], src: v, dst: v }).collect()];
    for len in 1..=top {
        let mut next = vec![];
        for p in &layers[len - 1] {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.src == p.dst {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { arrows, src: p.src, dst: a.dst });
                }
            }
        }
        layers.push(next);
    }
    // columns: length ascending, and lexicographically descending within a length
    let mut cols: Vec<Path> = layers.iter().flatten().cloned().collect();
    cols.sort_by(|x, y| x.arrows.len().cmp(&y.arrows.len()).then_with(|| q.names_of(y).cmp(&q.names_of(x))));
    let col_of: HashMap<Path, usize> = cols.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();

    let mut rels = vec![];
    for (ri, rel) in q.relations.iter().enumerate() {
        let mut terms = vec![];
        for (c, names) in rel {
            let p = q.parse_path(names)?;
            if p.arrows.len() < 2 {
                return Err(IngestError::InadmissibleRelation { index: ri + 1, reason: "monomial of length < 2".into() });
            }
            terms.push((c.clone(), p));
        }
        if terms.is_empty() {
            continue;
        }
        let (s0, d0) = (terms[0].1.src, terms[0].1.dst);
        if terms.iter().any(|(_, p)| p.src != s0 || p.dst != d0) {
            return Err(IngestError::InadmissibleRelation { index: ri + 1, reason: "monomials have different endpoints".into() });
        }
        rels.push((s0, d0, terms));
    }
    let mut gens: Vec<Vec<Scalar>> = vec![];
    for (rs, rd, terms) in &rels {
        for u in cols.iter().filter(|u| u.dst == *rs) {
            for w in cols.iter().filter(|w| w.src == *rd) {
                let mut row = vec![Scalar::zero(); cols.len()];
                let mut any = false;
                for (c, m) in terms {
                    let p = concat(&concat(u, m).unwrap(), w).unwrap();
                    if p.arrows.len() <= top {
                        let k = col_of[&p];
                        row[k] = &row[k] + c;
                        any = true;
                    }
                }
                if any {
                    gens.push(row);
                }
            }
        }
    }
    let (rref, pivots) = if gens.is_empty() {
        (DenseMatrix::zeros(0, cols.len()), vec![])
    } else {
        DenseMatrix::from_rows(gens).rref()
    };
    let pivot_row: HashMap<usize, usize> = pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    if let Some(p) = cols.iter().enumerate().find(|(k, p)| p.arrows.len() == top && !pivot_row.contains_key(k)) {
        return Err(IngestError::NotNilpotentAtBound(p.1.arrows.len()));
    }

    let mut radical: Vec<Path> =
        cols.iter().enumerate().filter(|(k, p)| !p.arrows.is_empty() && !pivot_row.contains_key(k)).map(|(_, p)| p.clone()).collect();
    match &q.order {
        None => radical
            .sort_by(|x, y| y.arrows.len().cmp(&x.arrows.len()).then_with(|| q.names_of(y).cmp(&q.names_of(x)))),
        Some(order) => {
            let wanted: Vec<Path> = order.iter().map(|n| q.parse_path(n)).collect::<Result<_, _>>()?;
            let mut a = wanted.clone();
            let mut b = radical.clone();
            a.sort_by(|x, y| x.arrows.cmp(&y.arrows));
            b.sort_by(|x, y| x.arrows.cmp(&y.arrows));
            if a != b {
                let names: Vec<String> = radical.iter().map(|p| path_name(&q.arrows, &p.arrows)).collect();
                return Err(IngestError::InvalidOrder(format!("expected a permutation of {{{}}}", names.join(", "))));
            }
            radical = wanted;
        }
    }
    let mut basis: Vec<BasisKind> = radical.iter().map(|p| BasisKind::Path(p.arrows.clone())).collect();
    basis.extend((0..s).map(BasisKind::Vertex));
    let as_path = |b: &BasisKind| -> Path {
        match b {
            BasisKind::Vertex(v) => Path { arrows: vec![], src: *v, dst: *v },
            BasisKind::Path(a) => Path { arrows: a.clone(), src: q.arrows[a[0]].src, dst: q.arrows[*a.last().unwrap()].dst },
        }
    };
    let basis_paths: Vec<Path> = basis.iter().map(as_path).collect();
    let index_of: HashMap<Path, usize> = basis_paths.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    let t = basis.len();
    let normal_form = |p: &Path| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); t];
        if p.arrows.len() >= top {
            return v;
        }
        let k = col_of[p];
        match pivot_row.get(&k) {
            None => v[index_of[p]] = Scalar::one(),
            Some(&r) => {
                for (c, path) in cols.iter().enumerate() {
                    let x = rref.at(r, c);
                    if c != k && !x.is_zero() {
                        v[index_of[path]] = -x;
                    }
                }
            }
        }
        v
    };
    let mult = basis_paths
        .iter()
        .map(|a| {
            basis_paths
                .iter()
                .map(|b| match concat(a, b) {
                    Some(p) => normal_form(&p),
                    None => vec![Scalar::zero(); t],
                })
                .collect()
        })
        .collect();
    let names = basis
        .iter()
        .map(|b| match b {
            BasisKind::Vertex(_) if s == 1 => "e".to_string(),
            BasisKind::Vertex(v) => format!("e{}", q.vertices[*v]),
            BasisKind::Path(p) => path_name(&q.arrows, p),
        })
        .collect();
    Ok(AlgebraTable { vertices: q.vertices.clone(), arrows: q.arrows.clone(), basis, names, mult })
}

impl AlgebraTable {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of radical basis elements (they come first).
    pub fn radical_dim(&self) -> usize {
        self.basis.iter().filter(|b| matches!(b, BasisKind::Path(_))).count()
    }

    /// Source vertex of a basis element.
    pub fn source(&self, k: usize) -> usize {
        match &self.basis[k] {
            BasisKind::Vertex(v) => *v,
            BasisKind::Path(p) => self.arrows[p[0]].src,
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coordinates of the product of two coordinate vectors.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let t = self.dim();
        let mut out = vec![Scalar::zero(); t];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xa * yb;
                for (k, m) in self.mult[a][b].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] = &out[k] + &(&c * m);
                    }
                }
            }
        }
        out
    }
}

/// The matrices of left multiplication by each basis element: column `j` of
/// the `a`-th matrix holds the coordinates of `basis[a]·basis[j]`.
pub fn left_regular(alg: &AlgebraTable) -> Vec<DenseMatrix> {
    let t = alg.dim();
    (0..t)
        .map(|a| {
            let mut m = DenseMatrix::zeros(t, t);
            for j in 0..t {
                for (i, v) in alg.mult[a][j].iter().enumerate() {
                    if !v.is_zero() {
                        assert!(i <= j, "basis order does not make left multiplication triangular");
                        m.set(i, j, v.clone());
                    }
                }
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    fn loops(names: &[&str], relations: Vec<Vec<(Scalar, Vec<String>)>>, bound: usize) -> QuiverPresentation {
        QuiverPresentation {
            vertices: vec!["1".into()],
            arrows: names.iter().map(|n| Arrow { name: n.to_string(), src: 0, dst: 0 }).collect(),
            relations,
            bound,
            order: None,
        }
    }

    fn mono(s: &str) -> Vec<(Scalar, Vec<String>)> {
        vec![(Scalar::one(), path(s))]
    }

    #[test]
    fn three_loops_with_all_products_zero() {
        let rels = ["aa", "bb", "cc", "ab", "ba", "bc", "cb", "ca", "ac"].iter().map(|s| mono(s)).collect();
        let alg = build_algebra(&loops(&["a", "b", "c"], rels, 1)).unwrap();
        assert_eq!(alg.names, vec!["c", "b", "a", "e"]);
    }

    #[test]
    fn commutation_relation_keeps_ab() {
        let alpha = Scalar::from(2);
        let rels = vec![
            mono("aa"),
            vec![(Scalar::one(), path("ba")), (-&alpha, path("ab"))],
            mono("abb"),
            mono("bbb"),
        ];
        let mut q = loops(&["a", "b"], rels, 3);
        let alg = build_algebra(&q).unwrap();
        assert_eq!(alg.names, vec!["bb", "ab", "b", "a", "e"]);
        q.order = Some(vec![path("ab"), path("bb"), path("b"), path("a")]);
        let alg = build_algebra(&q).unwrap();
        assert_eq!(alg.names, vec!["ab", "bb", "b", "a", "e"]);
        let (b, a, d) = (alg.index_of("b").unwrap(), alg.index_of("a").unwrap(), alg.index_of("ab").unwrap());
        assert_eq!(alg.mult[b][a][d], alpha);
    }

    #[test]
    fn nilpotency_bound_is_checked() {
        let q = loops(&["a"], vec![mono("aaa")], 1);
        assert_eq!(build_algebra(&q), Err(IngestError::NotNilpotentAtBound(2)));
        let q = loops(&["a"], vec![mono("a")], 1);
        assert!(matches!(build_algebra(&q), Err(IngestError::InadmissibleRelation { .. })));
    }

    #[test]
    fn semisimple_point() {
        let q = QuiverPresentation { vertices: vec!["1".into()], arrows: vec![], relations: vec![], bound: 0, order: None };
        let alg = build_algebra(&q).unwrap();
        assert_eq!(alg.names, vec!["e"]);
        assert_eq!(left_regular(&alg)[0], DenseMatrix::identity(1));
    }
}
