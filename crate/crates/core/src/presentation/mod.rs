//! Finitely presented categories: a graph of named vertices and edges modulo
//! relations between parallel paths.

mod quotient;

pub use quotient::{build_finite_quotient, Quotient, QuotientBuildConfig, WordResolver};

use crate::dsl::{self, Block, CategoryBlock, Ident, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path in the underlying graph. `edges` lists edges in the order they are
/// traversed, so `g.f` is stored as `[f, g]`. The empty path is an identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatPresentation {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub relations: Vec<(Path, Path)>,
}

impl CatPresentation {
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn from_block(block: &CategoryBlock) -> Result<Self> {
        let mut p = CatPresentation {
            name: block.name.name.clone(),
            vertices: Vec::new(),
            edges: Vec::new(),
            relations: Vec::new(),
        };
        for v in &block.objects {
            if p.vertex(&v.name).is_some() {
                return Err(at(v, format!("duplicate object `{}`", v.name)));
            }
            p.vertices.push(v.name.clone());
        }
        for (f, s, t) in &block.arrows {
            if p.edge(&f.name).is_some() {
                return Err(at(f, format!("duplicate arrow `{}`", f.name)));
            }
            if identity_target(&p.vertices, &f.name).is_some() {
                return Err(at(f, format!("arrow `{}` shadows an identity", f.name)));
            }
            let lookup = |v: &Ident| p.vertex(&v.name).ok_or_else(|| at(v, format!("unknown object `{}`", v.name)));
            let (source, target) = (lookup(s)?, lookup(t)?);
            p.edges.push(Edge {
                name: f.name.clone(),
                source,
                target,
            });
        }
        for (l, r) in &block.relations {
            let (lp, rp) = (p.path(l)?, p.path(r)?);
            if (lp.source, lp.target) != (rp.source, rp.target) {
                let (line, column) = l.position();
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!(
                        "non-parallel relation: `{}` is {} -> {} but `{}` is {} -> {}",
                        l.text(),
                        p.vertices[lp.source],
                        p.vertices[lp.target],
                        r.text(),
                        p.vertices[rp.source],
                        p.vertices[rp.target]
                    ),
                    expected: vec![],
                });
            }
            p.relations.push((lp, rp));
        }
        Ok(p)
    }

    /// Resolves a written word to a composable path.
    pub fn path(&self, word: &Word) -> Result<Path> {
        // Written right to left; traverse from the rightmost part.
        let mut current: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for part in word.parts.iter().rev() {
            let (s, t, edge) = if let Some(v) = identity_target(&self.vertices, &part.name) {
                (v, v, None)
            } else if let Some(e) = self.edge(&part.name) {
                (self.edges[e].source, self.edges[e].target, Some(e))
            } else {
                return Err(at(part, format!("unknown arrow `{}`", part.name)));
            };
            match current {
                Some((_, end)) if end != s => {
                    return Err(at(part, format!("`{}` does not compose in `{}`", part.name, word.text())))
                }
                Some((start, _)) => current = Some((start, t)),
                None => current = Some((s, t)),
            }
            edges.extend(edge);
        }
        let (source, target) = current.expect("words are nonempty");
        Ok(Path { source, target, edges })
    }

    /// Written form of a path, e.g. `g.f`, or `id_x` for the empty path.
    pub fn word_text(&self, path: &Path) -> String {
        if path.edges.is_empty() {
            return format!("id_{}", self.vertices[path.source]);
        }
        path.edges
            .iter()
            .rev()
            .map(|&e| self.edges[e].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn identity_target(vertices: &[String], name: &str) -> Option<usize> {
    name.strip_prefix("id_").and_then(|v| vertices.iter().position(|x| x == v))
}

fn at(id: &Ident, message: String) -> Error {
    Error::Parse {
        line: id.line,
        column: id.column,
        message,
        expected: vec![],
    }
}

/// Parses text holding exactly one `category` block.
pub fn parse_presentation(text: &str) -> Result<CatPresentation> {
    let doc = dsl::parse_document(text)?;
    let mut cats = doc.blocks.iter().filter_map(|b| match b {
        Block::Category(c) => Some(c),
        _ => None,
    });
    let block = cats.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "no category block".into(),
        expected: vec!["`category`".into()],
    })?;
    if doc.blocks.len() != 1 {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected a single category block".into(),
            expected: vec![],
        });
    }
    CatPresentation::from_block(block)
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDEM_NOT_ALG: &str = "category E {
        objects: j, t, e;
        arrows: eta : j -> t, f : t -> e, fp : t -> e;
        relations: f.eta = fp.eta;
    }";

    #[test]
    fn counterexample_presentation() {
        let p = parse_presentation(IDEM_NOT_ALG).unwrap();
        assert_eq!((p.vertices.len(), p.edges.len(), p.relations.len()), (3, 3, 1));
        assert_eq!(p.relations[0].0.edges, vec![0, 1]);
        assert_eq!(p.word_text(&p.relations[0].1), "fp.eta");
    }

    #[test]
    fn empty_body() {
        let p = parse_presentation("category X { }").unwrap();
        assert!(p.vertices.is_empty() && p.edges.is_empty());
    }

    #[test]
    fn non_parallel_relation_names_endpoints() {
        let err = parse_presentation(
            "category C { objects: a, b; arrows: f : a -> b, g : a -> a; relations: f = g; }",
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("non-parallel"), "{msg}");
        assert!(msg.contains("a -> b") && msg.contains("a -> a"), "{msg}");
    }

    #[test]
    fn unknown_vertex_and_bad_composites() {
        let err = parse_presentation("category C { objects: a; arrows: f : a -> z; }").unwrap_err();
        assert!(err.to_string().contains("unknown object `z`"));
        let err = parse_presentation(
            "category C { objects: a, b; arrows: f : a -> b; relations: f.f = f.f; }",
        )
        .unwrap_err();
        assert!(err.to_string().contains("does not compose"));
    }

    #[test]
    fn identities_in_words() {
        let p = parse_presentation("category C { objects: a, b; arrows: f : a -> b; relations: id_b.f = f.id_a; }")
            .unwrap();
        assert_eq!(p.relations[0].0.edges, vec![0]);
        assert_eq!(p.relations[0].1.edges, vec![0]);
    }
}
