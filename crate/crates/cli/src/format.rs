//! Line-oriented text formats for problems, representations, matrices and
//! algebras.
//!
//! Every file starts with `field q` or `field gf:<p>`; `#` starts a comment;
//! all indices are 1-based.

use bimodule::error::ParseError;
use bimodule::exactmath::{DenseMatrix, Field, Scalar};
use bimodule::ingest::{Arrow, QuiverPresentation};
use bimodule::problem::{offsets, validate_problem, BimoduleProblem, ProblemSpec, Representation, Row};

struct Lines<'a> {
    field: Field,
    body: Vec<(usize, Vec<&'a str>)>,
}

fn err(line: usize, msg: impl std::fmt::Display) -> ParseError {
    ParseError::new(format!("line {line}: {msg}"))
}

fn tokenize(text: &str, expected: Option<Field>) -> Result<Lines<'_>, ParseError> {
    let mut field = None;
    let mut body = vec![];
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if field.is_none() {
            if toks[0] != "field" || toks.len() != 2 {
                return Err(err(k + 1, "expected `field q` or `field gf:<p>` header"));
            }
            let f = Field::parse_mode(toks[1])?;
            if let Some(e) = expected {
                if e != f {
                    return Err(err(k + 1, format!("field {} does not match {}", f.header(), e.header())));
                }
            }
            field = Some(f);
            continue;
        }
        body.push((k + 1, toks));
    }
    let field = field.ok_or_else(|| ParseError::new("missing field header"))?;
    Ok(Lines { field, body })
}

fn index(line: usize, tok: &str, bound: usize) -> Result<usize, ParseError> {
    let v: usize = tok.parse().map_err(|_| err(line, format!("bad index `{tok}`")))?;
    if v == 0 || v > bound {
        return Err(err(line, format!("index {v} out of range 1..{bound}")));
    }
    Ok(v - 1)
}

fn count(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| err(line, format!("bad number `{tok}`")))
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<(), ParseError> {
    if toks.len() != n {
        return Err(err(line, format!("`{}` takes {} arguments", toks[0], n - 1)));
    }
    Ok(())
}

fn triples(line: usize, field: &Field, toks: &[&str], t: usize) -> Result<Row<Scalar>, ParseError> {
    if toks.is_empty() || toks.len() % 3 != 0 {
        return Err(err(line, "expected `i j coeff` triples"));
    }
    toks.chunks(3)
        .map(|c| Ok(((index(line, c[0], t)?, index(line, c[1], t)?), field.parse(c[2])?)))
        .collect()
}

/// The field of a file without parsing the rest.
pub fn field_of(text: &str) -> Result<Field, ParseError> {
    Ok(tokenize(text, None)?.field)
}

/// Problem file: `t`, `class`, `label`, `krow`, `mrow`, `h` lines.
pub fn parse_problem(text: &str, expected: Option<Field>) -> Result<(BimoduleProblem, Field), ParseError> {
    let lines = tokenize(text, expected)?;
    let f = lines.field;
    let mut t = None;
    let mut spec: Option<ProblemSpec> = None;
    for (ln, toks) in &lines.body {
        let ln = *ln;
        if toks[0] == "t" {
            arity(ln, toks, 2)?;
            if t.is_some() {
                return Err(err(ln, "repeated `t`"));
            }
            let n = count(ln, toks[1])?;
            t = Some(n);
            spec = Some(ProblemSpec::new(n, vec![]));
            continue;
        }
        let (Some(n), Some(s)) = (t, spec.as_mut()) else {
            return Err(err(ln, "`t` must come first"));
        };
        match toks[0] {
            "class" => s.classes.push(toks[1..].iter().map(|x| index(ln, x, n)).collect::<Result<_, _>>()?),
            "label" => {
                arity(ln, toks, 3)?;
                s.labels.push((index(ln, toks[1], n)?, toks[2].to_string()));
            }
            "krow" => s.k_rows.push(triples(ln, &f, &toks[1..], n)?),
            "mrow" => s.m_rows.push(triples(ln, &f, &toks[1..], n)?),
            "h" => s.h.extend(triples(ln, &f, &toks[1..], n)?),
            other => return Err(err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let spec = spec.ok_or_else(|| ParseError::new("missing `t`"))?;
    let p = validate_problem(spec).map_err(|e| ParseError::new(format!("invalid problem: {e}")))?;
    Ok((p, f))
}

pub fn emit_problem(p: &BimoduleProblem, field: &Field) -> String {
    let mut out = format!("field {}\nt {}\n", field.header(), p.t());
    let part = p.partition();
    for c in part.classes() {
        let ids: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
        out.push_str(&format!("class {}\n", ids.join(" ")));
    }
    for (c, l) in p.labels().iter().enumerate() {
        if let Some(l) = l {
            out.push_str(&format!("label {} {l}\n", part.class(c)[0] + 1));
        }
    }
    let row_text = |row: &Row<Scalar>| {
        row.iter().map(|((i, j), c)| format!("{} {} {c}", i + 1, j + 1)).collect::<Vec<_>>().join("  ")
    };
    for (_, row) in p.k_eqs().iter() {
        out.push_str(&format!("krow {}\n", row_text(row)));
    }
    for (_, row) in p.m_eqs().iter() {
        out.push_str(&format!("mrow {}\n", row_text(row)));
    }
    for (i, j, v) in p.h().nonzeros() {
        out.push_str(&format!("h {} {} {v}\n", i + 1, j + 1));
    }
    out
}

/// Representation file: `sizes n_1 … n_t`, then `entry i j a b value` for
/// entry `(a, b)` of block `(i, j)`.
pub fn parse_representation(text: &str, p: &BimoduleProblem, field: Field) -> Result<Representation, ParseError> {
    let lines = tokenize(text, Some(field))?;
    let t = p.t();
    let mut sizes: Option<Vec<usize>> = None;
    let mut entries = vec![];
    for (ln, toks) in &lines.body {
        let ln = *ln;
        match toks[0] {
            "sizes" => {
                arity(ln, toks, t + 1)?;
                sizes = Some(toks[1..].iter().map(|x| count(ln, x)).collect::<Result<_, _>>()?);
            }
            "entry" => {
                arity(ln, toks, 6)?;
                let s = sizes.as_ref().ok_or_else(|| err(ln, "`sizes` must come first"))?;
                let (i, j) = (index(ln, toks[1], t)?, index(ln, toks[2], t)?);
                let (a, b) = (index(ln, toks[3], s[i])?, index(ln, toks[4], s[j])?);
                entries.push((i, j, a, b, field.parse(toks[5])?));
            }
            other => return Err(err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let sizes = sizes.ok_or_else(|| ParseError::new("missing `sizes`"))?;
    let offs = offsets(&sizes);
    let n = offs[t];
    let mut m = DenseMatrix::zeros(n, n);
    for (i, j, a, b, v) in entries {
        m.set(offs[i] + a, offs[j] + b, v);
    }
    Representation::new(p, sizes, m).map_err(|e| ParseError::new(format!("invalid representation: {e}")))
}

pub fn emit_representation(rep: &Representation, field: &Field) -> String {
    let sizes: Vec<String> = rep.sizes().iter().map(|s| s.to_string()).collect();
    let mut out = format!("field {}\nsizes {}\n", field.header(), sizes.join(" "));
    let t = rep.sizes().len();
    for i in 0..t {
        for j in 0..t {
            for (a, b, v) in rep.block(i, j).nonzeros() {
                out.push_str(&format!("entry {} {} {} {} {v}\n", i + 1, j + 1, a + 1, b + 1));
            }
        }
    }
    out
}

/// Matrix file: `size n`, then `entry r c value`.
pub fn parse_matrix(text: &str, expected: Option<Field>) -> Result<(DenseMatrix, Field), ParseError> {
    let lines = tokenize(text, expected)?;
    let f = lines.field;
    let mut m: Option<DenseMatrix> = None;
    for (ln, toks) in &lines.body {
        let ln = *ln;
        match toks[0] {
            "size" => {
                arity(ln, toks, 2)?;
                let n = count(ln, toks[1])?;
                m = Some(DenseMatrix::zeros(n, n).map(|_| f.zero()));
            }
            "entry" => {
                arity(ln, toks, 4)?;
                let mm = m.as_mut().ok_or_else(|| err(ln, "`size` must come first"))?;
                let n = mm.rows();
                mm.set(index(ln, toks[1], n)?, index(ln, toks[2], n)?, f.parse(toks[3])?);
            }
            other => return Err(err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    Ok((m.ok_or_else(|| ParseError::new("missing `size`"))?, f))
}

pub fn emit_matrix(m: &DenseMatrix, field: &Field) -> String {
    let mut out = format!("field {}\nsize {}\n", field.header(), m.rows());
    for (r, c, v) in m.nonzeros() {
        out.push_str(&format!("entry {} {} {v}\n", r + 1, c + 1));
    }
    out
}

fn path(tok: &str) -> Vec<String> {
    tok.split('.').map(|s| s.to_string()).collect()
}

/// Algebra file: `vertex name`, `arrow name src dst`, `relation c path | c path …`
/// (paths are arrow names joined by `.`), `bound L`, optional `order path …`.
pub fn parse_algebra(text: &str, expected: Option<Field>) -> Result<(QuiverPresentation, Field), ParseError> {
    let lines = tokenize(text, expected)?;
    let f = lines.field;
    let mut q = QuiverPresentation { vertices: vec![], arrows: vec![], relations: vec![], bound: 0, order: None };
    let mut bound = None;
    for (ln, toks) in &lines.body {
        let ln = *ln;
        let vertex = |name: &str, q: &QuiverPresentation| {
            q.vertices.iter().position(|v| v == name).ok_or_else(|| err(ln, format!("unknown vertex `{name}`")))
        };
        match toks[0] {
            "vertex" => {
                arity(ln, toks, 2)?;
                q.vertices.push(toks[1].to_string());
            }
            "arrow" => {
                arity(ln, toks, 4)?;
                let (src, dst) = (vertex(toks[2], &q)?, vertex(toks[3], &q)?);
                q.arrows.push(Arrow { name: toks[1].to_string(), src, dst });
            }
            "relation" => {
                let rest = toks[1..].join(" ");
                let mut rel = vec![];
                for term in rest.split('|') {
                    let parts: Vec<&str> = term.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(err(ln, "relation terms are `coeff path`"));
                    }
                    rel.push((f.parse(parts[0])?, path(parts[1])));
                }
                q.relations.push(rel);
            }
            "bound" => {
                arity(ln, toks, 2)?;
                bound = Some(count(ln, toks[1])?);
            }
            "order" => q.order = Some(toks[1..].iter().map(|t| path(t)).collect()),
            other => return Err(err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    q.bound = bound.ok_or_else(|| ParseError::new("missing `bound`"))?;
    Ok((q, f))
}

pub fn emit_algebra(q: &QuiverPresentation, field: &Field) -> String {
    let mut out = format!("field {}\n", field.header());
    for v in &q.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in &q.arrows {
        out.push_str(&format!("arrow {} {} {}\n", a.name, q.vertices[a.src], q.vertices[a.dst]));
    }
    for r in &q.relations {
        let terms: Vec<String> = r.iter().map(|(c, p)| format!("{c} {}", p.join("."))).collect();
        out.push_str(&format!("relation {}\n", terms.join(" | ")));
    }
    out.push_str(&format!("bound {}\n", q.bound));
    if let Some(o) = &q.order {
        let ps: Vec<String> = o.iter().map(|p| p.join(".")).collect();
        out.push_str(&format!("order {}\n", ps.join(" ")));
    }
    out
}
