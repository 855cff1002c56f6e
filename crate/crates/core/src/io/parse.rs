//! Line-oriented text formats for complexes, permutation reps and graphs,
//! plus the JSON surface format. Every parser has a matching emitter and
//! `parse(emit(x)) == x`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{validate_complex, ComplexError, SimplicialComplex, Vertex};
use crate::cover::{CoverError, PermutationRep};
use crate::hyperbolic::{HypError, HyperbolicSurface, SurfaceFile};
use crate::local::{Graph, LocalError};

/// Syntax error; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    fn new(line: usize, reason: impl Into<String>) -> Self {
        Self {
            line,
            reason: reason.into(),
        }
    }
}

/// Well-formed input rejected by a domain validator.
#[derive(Debug, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Graph(#[from] LocalError),
    #[error(transparent)]
    Surface(#[from] HypError),
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Validation(#[from] ValidationError),
}

impl From<ComplexError> for InputError {
    fn from(e: ComplexError) -> Self {
        Self::Validation(e.into())
    }
}

impl From<CoverError> for InputError {
    fn from(e: CoverError) -> Self {
        Self::Validation(e.into())
    }
}

impl From<HypError> for InputError {
    fn from(e: HypError) -> Self {
        Self::Validation(e.into())
    }
}

/// Non-empty lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("expected {what}, found `{tok}`")))
}

/// `dim k` headers, each followed by one `k`-cell per line.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex, InputError> {
    let mut tables: Vec<Vec<Vec<Vertex>>> = Vec::new();
    let mut current: Option<usize> = None;
    for (line, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        if l.starts_with("dim") {
            let _ = toks.next();
            let k: usize = match (toks.next(), toks.next()) {
                (Some(t), None) => parse_number(t, line, "a dimension")?,
                _ => return Err(ParseError::new(line, "header must read `dim k`").into()),
            };
            if tables.len() <= k {
                tables.resize(k + 1, Vec::new());
            }
            current = Some(k);
            continue;
        }
        let k = current.ok_or_else(|| ParseError::new(line, "cell before any `dim` header"))?;
        let cell: Vec<Vertex> = toks
            .map(|t| parse_number(t, line, "a vertex id"))
            .collect::<Result<_, _>>()?;
        if cell.len() != k + 1 {
            return Err(
                ParseError::new(line, format!("{k}-cell needs {} vertices, found {}", k + 1, cell.len())).into(),
            );
        }
        tables[k].push(cell);
    }
    if tables.is_empty() {
        return Err(ParseError::new(1, "no `dim` header").into());
    }
    Ok(validate_complex(tables)?)
}

pub fn emit_complex(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for d in 0..=k.dim() {
        let _ = writeln!(out, "dim {d}");
        for c in k.cells(d) {
            let ids: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
    }
    out
}

/// `degree n`, then one line of `n` images per generator.
pub fn parse_permutation_rep(text: &str) -> Result<PermutationRep, InputError> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `degree n` header"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["degree", n] => parse_number(n, line, "a degree")?,
        _ => return Err(ParseError::new(line, "first line must read `degree n`").into()),
    };
    let mut generators = Vec::new();
    for (line, l) in lines {
        let images: Vec<u32> = l
            .split_whitespace()
            .map(|t| parse_number(t, line, "an image"))
            .collect::<Result<_, _>>()?;
        if images.len() != n {
            return Err(ParseError::new(line, format!("expected {n} images, found {}", images.len())).into());
        }
        let mut hit = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(ParseError::new(line, format!("image {x} out of range 0..{n}")).into());
            }
            if std::mem::replace(&mut hit[x], true) {
                return Err(ParseError::new(line, format!("image {x} repeated")).into());
            }
        }
        generators.push(images);
    }
    Ok(PermutationRep::new(n, generators)?)
}

pub fn emit_permutation_rep(rep: &PermutationRep) -> String {
    let mut out = format!("degree {}\n", rep.degree());
    for g in rep.generators() {
        let ids: Vec<String> = g.iter().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// Edge list, one `u v` pair per line; a lone id declares an isolated
/// vertex. Ids are relabelled `0..n` in increasing order.
pub fn parse_graph(text: &str) -> Result<(Graph, Vec<u64>), InputError> {
    let mut edges = Vec::new();
    let mut ids = BTreeSet::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<u64> = l
            .split_whitespace()
            .map(|t| parse_number(t, line, "a vertex id"))
            .collect::<Result<_, _>>()?;
        match toks[..] {
            [v] => {
                ids.insert(v);
            }
            [u, v] if u == v => return Err(ParseError::new(line, format!("self-loop at {u}")).into()),
            [u, v] => {
                ids.extend([u, v]);
                edges.push((u, v));
            }
            _ => return Err(ParseError::new(line, "expected `u v`").into()),
        }
    }
    let labels: Vec<u64> = ids.into_iter().collect();
    let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut g = Graph::new(labels.len());
    for (u, v) in edges {
        g.add_edge(index[&u], index[&v]);
    }
    Ok((g, labels))
}

pub fn emit_graph(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.num_vertices() {
        if g.neighbors(v).is_empty() {
            let _ = writeln!(out, "{v}");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_surface(text: &str) -> Result<HyperbolicSurface, InputError> {
    let file: SurfaceFile = serde_json::from_str(text).map_err(|e| ParseError::new(e.line().max(1), e.to_string()))?;
    Ok(HyperbolicSurface::from_file(&file)?)
}

pub fn emit_surface(s: &HyperbolicSurface) -> String {
    let mut out = serde_json::to_string_pretty(&s.to_file()).expect("surface serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::models;

    #[test]
    fn triangle_file() {
        let text = "# filled triangle\ndim 0\n0\n1\n2\ndim 1\n0 1\n1 2\n0 2\ndim 2\n2 1 0\n";
        let k = parse_complex(text).unwrap();
        assert_eq!(k.cell_counts(), vec![3, 3, 1]);
    }

    #[test]
    fn complex_errors_carry_lines() {
        let e = parse_complex("dim 1\n0 1\n0 1 2\n").unwrap_err();
        assert!(matches!(e, InputError::Parse(ParseError { line: 3, .. })));
        let e = parse_complex("0 1\n").unwrap_err();
        assert!(matches!(e, InputError::Parse(ParseError { line: 1, .. })));
        let e = parse_complex("dim 1\n0 1\n").unwrap_err();
        assert!(matches!(
            e,
            InputError::Validation(ValidationError::Complex(ComplexError::MissingFace { .. }))
        ));
    }

    #[test]
    fn complex_round_trip() {
        for k in [
            models::filled_triangle(),
            models::rose(3),
            models::torus7(),
            models::genus2(),
        ] {
            assert_eq!(parse_complex(&emit_complex(&k)).unwrap(), k);
        }
    }

    #[test]
    fn repeated_image_is_a_parse_error() {
        let e = parse_permutation_rep("degree 3\n1 2 0\n0 0 1\n").unwrap_err();
        match e {
            InputError::Parse(p) => {
                assert_eq!(p.line, 3);
                assert!(p.reason.contains("repeated"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn permutation_round_trip() {
        let rep = PermutationRep::new(4, vec![vec![1, 2, 3, 0], vec![0, 1, 3, 2]]).unwrap();
        assert_eq!(parse_permutation_rep(&emit_permutation_rep(&rep)).unwrap(), rep);
    }

    #[test]
    fn graph_round_trip() {
        let mut g = Graph::petersen();
        for h in [Graph::cycle(9), Graph::star(4)] {
            assert_eq!(parse_graph(&emit_graph(&h)).unwrap().0, h);
        }
        assert_eq!(parse_graph(&emit_graph(&g)).unwrap().0, g);
        g = Graph::new(3);
        g.add_edge(0, 2);
        assert_eq!(parse_graph(&emit_graph(&g)).unwrap().0, g);
        assert!(parse_graph("4 4\n").is_err());
    }

    #[test]
    fn surface_with_bad_determinant_is_a_validation_error() {
        let text = r#"{"generators": [[0.9, 0.0, 0.0, 1.0]]}"#;
        assert!(matches!(
            parse_surface(text).unwrap_err(),
            InputError::Validation(ValidationError::Surface(_))
        ));
        assert!(matches!(
            parse_surface("{\n\"generators\": [").unwrap_err(),
            InputError::Parse(_)
        ));
        let s = HyperbolicSurface::genus2_octagon();
        let back = parse_surface(&emit_surface(&s)).unwrap();
        assert_eq!(back.generators(), s.generators());
    }
}
