//! Named objects resolved from DSL documents.

mod emit;
pub use emit::instance_source;
mod gallery;

pub use gallery::{gallery_build, gallery_source, GALLERY};

use std::sync::Arc;

use crate::adjunction::RelAdjunction;
use crate::algebra::{algebra_from_orthogonal_carrier, RelAlgebra};
use crate::dsl::{self, AdjunctionBlock, AlgebraBlock, Block, FunctorBlock, Ident, RelMonadBlock, Word};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Mor, Ob};
use crate::presentation::{build_finite_quotient, CatPresentation, QuotientBuildConfig, WordResolver};
use crate::relmonad::{from_orthogonal_data, RelMonad};

#[derive(Debug, Clone)]
pub struct NamedCategory {
    pub name: String,
    pub category: Arc<FinCat>,
    pub resolver: WordResolver,
}

impl NamedCategory {
    pub fn presentation(&self) -> &CatPresentation {
        self.resolver.presentation()
    }
}

#[derive(Debug, Clone)]
pub struct NamedFunctor {
    pub name: String,
    pub source: String,
    pub target: String,
    pub functor: FinFunctor,
}

#[derive(Debug, Clone)]
pub struct NamedMonad {
    pub name: String,
    pub root: String,
    pub monad: Arc<RelMonad>,
}

#[derive(Debug, Clone)]
pub struct NamedAlgebra {
    pub name: String,
    pub monad: String,
    pub algebra: RelAlgebra,
}

#[derive(Debug, Clone)]
pub struct NamedAdjunction {
    pub name: String,
    pub root: String,
    pub left: String,
    pub right: String,
    pub adjunction: RelAdjunction,
}

/// Everything declared in one or more DSL documents, in declaration order.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub categories: Vec<NamedCategory>,
    pub functors: Vec<NamedFunctor>,
    pub monads: Vec<NamedMonad>,
    pub algebras: Vec<NamedAlgebra>,
    pub adjunctions: Vec<NamedAdjunction>,
    pub quotient_config: QuotientBuildConfig,
}

fn at(id: &Ident, message: impl Into<String>) -> Error {
    Error::Parse {
        line: id.line,
        column: id.column,
        message: message.into(),
        expected: vec![],
    }
}

fn at_word(w: &Word, message: impl Into<String>) -> Error {
    let (line, column) = w.position();
    Error::Parse {
        line,
        column,
        message: message.into(),
        expected: vec![],
    }
}

/// Adds the block name to errors raised by library constructors.
fn in_block(kind: &str, name: &Ident, err: Error) -> Error {
    match err {
        Error::Laws(r) => Error::Laws(r),
        Error::Parse { .. } | Error::NoExtension { .. } | Error::NonUniqueExtension { .. } => err,
        other => at(name, format!("{kind} `{}`: {other}", name.name)),
    }
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut ws = Workspace::new();
        ws.add_text(text)?;
        Ok(ws)
    }

    /// Parses and resolves a document, adding its declarations.
    pub fn add_text(&mut self, text: &str) -> Result<()> {
        let doc = dsl::parse_document(text)?;
        for block in &doc.blocks {
            match block {
                Block::Category(b) => {
                    if self.category(&b.name.name).is_some() {
                        return Err(at(&b.name, format!("duplicate category `{}`", b.name.name)));
                    }
                    let p = CatPresentation::from_block(b)?;
                    let q = build_finite_quotient(&p, self.quotient_config).map_err(|e| in_block("category", &b.name, e))?;
                    self.categories.push(NamedCategory {
                        name: b.name.name.clone(),
                        category: Arc::new(q.category),
                        resolver: q.resolver,
                    });
                }
                Block::Functor(b) => self.add_functor(b)?,
                Block::RelMonad(b) => self.add_monad(b)?,
                Block::Algebra(b) => self.add_algebra(b)?,
                Block::Adjunction(b) => self.add_adjunction(b)?,
            }
        }
        Ok(())
    }

    pub fn category(&self, name: &str) -> Option<&NamedCategory> {
        self.categories.iter().find(|c| c.name == name)
    }

    pub fn functor(&self, name: &str) -> Option<&NamedFunctor> {
        self.functors.iter().find(|c| c.name == name)
    }

    pub fn monad(&self, name: &str) -> Option<&NamedMonad> {
        self.monads.iter().find(|c| c.name == name)
    }

    pub fn algebra(&self, name: &str) -> Option<&NamedAlgebra> {
        self.algebras.iter().find(|c| c.name == name)
    }

    pub fn adjunction(&self, name: &str) -> Option<&NamedAdjunction> {
        self.adjunctions.iter().find(|c| c.name == name)
    }

    pub fn require_monad(&self, name: &str) -> Result<&NamedMonad> {
        self.monad(name).ok_or(Error::UnknownName {
            kind: "relative monad",
            name: name.to_string(),
        })
    }

    /// The declared category whose built form is `cat`.
    pub fn category_of(&self, cat: &Arc<FinCat>) -> Option<&NamedCategory> {
        self.categories
            .iter()
            .find(|c| Arc::ptr_eq(&c.category, cat))
            .or_else(|| self.categories.iter().find(|c| *c.category == **cat))
    }

    fn lookup_category(&self, id: &Ident) -> Result<&NamedCategory> {
        self.category(&id.name)
            .ok_or_else(|| at(id, format!("unknown category `{}`", id.name)))
    }

    fn lookup_functor(&self, id: &Ident) -> Result<&NamedFunctor> {
        self.functor(&id.name)
            .ok_or_else(|| at(id, format!("unknown functor `{}`", id.name)))
    }

    fn lookup_monad(&self, id: &Ident) -> Result<&NamedMonad> {
        self.monad(&id.name)
            .ok_or_else(|| at(id, format!("unknown relative monad `{}`", id.name)))
    }

    fn add_functor(&mut self, b: &FunctorBlock) -> Result<()> {
        if self.functor(&b.name.name).is_some() {
            return Err(at(&b.name, format!("duplicate functor `{}`", b.name.name)));
        }
        let src = self.lookup_category(&b.source)?;
        let dst = self.lookup_category(&b.target)?;
        let (c, d) = (src.category.clone(), dst.category.clone());
        let p = src.presentation();
        let mut ob_map: Vec<Option<Ob>> = vec![None; c.objects()];
        for (x, y) in &b.objects {
            let xi = p.vertex(&x.name).ok_or_else(|| at(x, format!("unknown object `{}`", x.name)))?;
            let yi = d.find_object(&y.name).ok_or_else(|| at(y, format!("unknown object `{}`", y.name)))?;
            if ob_map[xi].replace(yi).is_some() {
                return Err(at(x, format!("object `{}` mapped twice", x.name)));
            }
        }
        let mut edge_map: Vec<Option<Mor>> = vec![None; p.edges.len()];
        for (f, w) in &b.arrows {
            let fi = p.edge(&f.name).ok_or_else(|| at(f, format!("unknown arrow `{}`", f.name)))?;
            let g = dst.resolver.resolve_word(w)?;
            if edge_map[fi].replace(g).is_some() {
                return Err(at(f, format!("arrow `{}` mapped twice", f.name)));
            }
        }
        let ob_map: Vec<Ob> = ob_map
            .iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| at(&b.name, format!("object `{}` is not mapped", p.vertices[i]))))
            .collect::<Result<_>>()?;
        for (i, e) in p.edges.iter().enumerate() {
            let g = edge_map[i].ok_or_else(|| at(&b.name, format!("arrow `{}` is not mapped", e.name)))?;
            if d.dom(g) != ob_map[e.source] || d.cod(g) != ob_map[e.target] {
                return Err(at(
                    &b.name,
                    format!("arrow `{}` is sent to `{}`, which has the wrong endpoints", e.name, d.mor_name(g)),
                ));
            }
        }
        let words: Vec<_> = (0..c.morphisms())
            .map(|m| {
                let path = src
                    .resolver
                    .presentation()
                    .path(&text_word(c.mor_name(m)))
                    .expect("morphism names are words");
                path.edges
                    .iter()
                    .fold(d.id(ob_map[path.source]), |acc, &e| d.compose(edge_map[e].unwrap(), acc))
            })
            .collect();
        let functor = FinFunctor::new(c, d, ob_map, words).map_err(|e| in_block("functor", &b.name, e))?;
        self.functors.push(NamedFunctor {
            name: b.name.name.clone(),
            source: b.source.name.clone(),
            target: b.target.name.clone(),
            functor,
        });
        Ok(())
    }

    fn add_monad(&mut self, b: &RelMonadBlock) -> Result<()> {
        if self.monad(&b.name.name).is_some() {
            return Err(at(&b.name, format!("duplicate relative monad `{}`", b.name.name)));
        }
        let root = self.lookup_functor(&b.root)?;
        let j = root.functor.clone();
        let (ac, e) = (j.source().clone(), j.target().clone());
        let a_res = &self.category_of(&ac).expect("declared").resolver;
        let e_res = &self.category_of(&e).expect("declared").resolver;
        let a_obj = |id: &Ident| {
            a_res
                .presentation()
                .vertex(&id.name)
                .ok_or_else(|| at(id, format!("unknown object `{}`", id.name)))
        };
        let na = ac.objects();
        let mut carrier: Vec<Option<Ob>> = vec![None; na];
        for (a, x) in &b.carrier {
            let ai = a_obj(a)?;
            let xi = e.find_object(&x.name).ok_or_else(|| at(x, format!("unknown object `{}`", x.name)))?;
            if carrier[ai].replace(xi).is_some() {
                return Err(at(a, format!("carrier of `{}` given twice", a.name)));
            }
        }
        let mut unit: Vec<Option<Mor>> = vec![None; na];
        for (a, w) in &b.unit {
            let ai = a_obj(a)?;
            if unit[ai].replace(e_res.resolve_word(w)?).is_some() {
                return Err(at(a, format!("unit at `{}` given twice", a.name)));
            }
        }
        let carrier: Vec<Ob> = (0..na)
            .map(|a| carrier[a].ok_or_else(|| at(&b.name, format!("no carrier for `{}`", ac.ob_name(a)))))
            .collect::<Result<_>>()?;
        let unit: Vec<Mor> = (0..na)
            .map(|a| unit[a].ok_or_else(|| at(&b.name, format!("no unit at `{}`", ac.ob_name(a)))))
            .collect::<Result<_>>()?;
        let monad = if b.ext.is_empty() {
            from_orthogonal_data(j, carrier, unit).map_err(|err| in_block("relative monad", &b.name, err))?
        } else {
            let mut given: Vec<Vec<Option<Mor>>> = (0..na * na)
                .map(|k| vec![None; e.hom(j.ob(k / na), carrier[k % na]).len()])
                .collect();
            for ((a, bb, w), v) in &b.ext {
                let (ai, bi) = (a_obj(a)?, a_obj(bb)?);
                let f = e_res.resolve_word(w)?;
                if e.dom(f) != j.ob(ai) || e.cod(f) != carrier[bi] {
                    return Err(at_word(w, format!("`{}` is not a morphism j{} -> t{}", w.text(), a.name, bb.name)));
                }
                let g = e_res.resolve_word(v)?;
                if given[ai * na + bi][e.hom_pos(f)].replace(g).is_some() {
                    return Err(at_word(w, format!("extension of `{}` given twice", w.text())));
                }
            }
            let mut ext = Vec::with_capacity(na * na);
            for a in 0..na {
                for bi in 0..na {
                    let row = e.hom(j.ob(a), carrier[bi])
                        .iter()
                        .zip(&given[a * na + bi])
                        .map(|(&f, g)| match g {
                            Some(g) => Ok(*g),
                            None => unique_extension(&e, unit[a], f, ac.ob_name(a), ac.ob_name(bi)),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    ext.push(row);
                }
            }
            RelMonad::new(j, carrier, unit, ext).map_err(|err| in_block("relative monad", &b.name, err))?
        };
        self.monads.push(NamedMonad {
            name: b.name.name.clone(),
            root: b.root.name.clone(),
            monad: Arc::new(monad),
        });
        Ok(())
    }

    fn add_algebra(&mut self, b: &AlgebraBlock) -> Result<()> {
        if self.algebra(&b.name.name).is_some() {
            return Err(at(&b.name, format!("duplicate algebra `{}`", b.name.name)));
        }
        let nm = self.lookup_monad(&b.monad)?;
        let t = nm.monad.clone();
        let (ac, e) = (t.source().clone(), t.cat().clone());
        let a_res = &self.category_of(&ac).expect("declared").resolver;
        let e_res = &self.category_of(&e).expect("declared").resolver;
        let carrier_id = b
            .carrier
            .as_ref()
            .ok_or_else(|| at(&b.name, format!("algebra `{}` has no carrier", b.name.name)))?;
        let x = e
            .find_object(&carrier_id.name)
            .ok_or_else(|| at(carrier_id, format!("unknown object `{}`", carrier_id.name)))?;
        let algebra = if b.ext.is_empty() {
            algebra_from_orthogonal_carrier(&t, x).map_err(|err| in_block("algebra", &b.name, err))?
        } else {
            let na = ac.objects();
            let mut given: Vec<Vec<Option<Mor>>> =
                (0..na).map(|a| vec![None; e.hom(t.root().ob(a), x).len()]).collect();
            for ((a, w), v) in &b.ext {
                let ai = a_res
                    .presentation()
                    .vertex(&a.name)
                    .ok_or_else(|| at(a, format!("unknown object `{}`", a.name)))?;
                let f = e_res.resolve_word(w)?;
                if e.dom(f) != t.root().ob(ai) || e.cod(f) != x {
                    return Err(at_word(w, format!("`{}` is not a morphism j{} -> {}", w.text(), a.name, carrier_id.name)));
                }
                if given[ai][e.hom_pos(f)].replace(e_res.resolve_word(v)?).is_some() {
                    return Err(at_word(w, format!("extension of `{}` given twice", w.text())));
                }
            }
            let ext = (0..na)
                .map(|a| {
                    e.hom(t.root().ob(a), x)
                        .iter()
                        .zip(&given[a])
                        .map(|(&f, g)| match g {
                            Some(g) => Ok(*g),
                            None => unique_extension(&e, t.unit(a), f, ac.ob_name(a), e.ob_name(x)),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            RelAlgebra::new(t.clone(), x, ext).map_err(|err| in_block("algebra", &b.name, err))?
        };
        self.algebras.push(NamedAlgebra {
            name: b.name.name.clone(),
            monad: b.monad.name.clone(),
            algebra,
        });
        Ok(())
    }

    fn add_adjunction(&mut self, b: &AdjunctionBlock) -> Result<()> {
        if self.adjunction(&b.name.name).is_some() {
            return Err(at(&b.name, format!("duplicate adjunction `{}`", b.name.name)));
        }
        let root = self.lookup_functor(&b.root)?;
        let left_id = b.left.as_ref().ok_or_else(|| at(&b.name, "adjunction has no left adjoint"))?;
        let right_id = b.right.as_ref().ok_or_else(|| at(&b.name, "adjunction has no right adjoint"))?;
        let left = self.lookup_functor(left_id)?;
        let right = self.lookup_functor(right_id)?;
        let (j, l, r) = (root.functor.clone(), left.functor.clone(), right.functor.clone());
        let (ac, cc, e) = (j.source().clone(), l.target().clone(), j.target().clone());
        let a_res = &self.category_of(&ac).expect("declared").resolver;
        let c_res = &self.category_of(&cc).expect("declared").resolver;
        let e_res = &self.category_of(&e).expect("declared").resolver;
        let (na, nc) = (ac.objects(), cc.objects());
        let mut phi: Vec<Vec<Option<Mor>>> = (0..na * nc)
            .map(|k| vec![None; cc.hom(l.ob(k / nc), k % nc).len()])
            .collect();
        for ((a, c, s), w) in &b.phi {
            let ai = a_res
                .presentation()
                .vertex(&a.name)
                .ok_or_else(|| at(a, format!("unknown object `{}`", a.name)))?;
            let ci = cc.find_object(&c.name).ok_or_else(|| at(c, format!("unknown object `{}`", c.name)))?;
            let sm = c_res.resolve_word(s)?;
            if cc.dom(sm) != l.ob(ai) || cc.cod(sm) != ci {
                return Err(at_word(s, format!("`{}` is not a morphism ℓ{} -> {}", s.text(), a.name, c.name)));
            }
            if phi[ai * nc + ci][cc.hom_pos(sm)].replace(e_res.resolve_word(w)?).is_some() {
                return Err(at_word(s, format!("φ of `{}` given twice", s.text())));
            }
        }
        let phi = phi
            .into_iter()
            .enumerate()
            .map(|(k, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(i, m)| {
                        m.ok_or_else(|| {
                            let s = cc.hom(l.ob(k / nc), k % nc)[i];
                            at(&b.name, format!("no φ entry for ({}, {}, {})", ac.ob_name(k / nc), cc.ob_name(k % nc), cc.mor_name(s)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let adjunction = RelAdjunction::new(j, l, r, phi).map_err(|err| in_block("adjunction", &b.name, err))?;
        self.adjunctions.push(NamedAdjunction {
            name: b.name.name.clone(),
            root: b.root.name.clone(),
            left: left_id.name.clone(),
            right: right_id.name.clone(),
            adjunction,
        });
        Ok(())
    }
}

fn unique_extension(e: &FinCat, unit: Mor, f: Mor, a: &str, b: &str) -> Result<Mor> {
    match e.extensions_along(unit, f)[..] {
        [g] => Ok(g),
        [] => Err(Error::NoExtension {
            a: a.into(),
            b: b.into(),
            f: e.mor_name(f).into(),
        }),
        [g1, g2, ..] => Err(Error::NonUniqueExtension {
            a: a.into(),
            b: b.into(),
            f: e.mor_name(f).into(),
            g1: e.mor_name(g1).into(),
            g2: e.mor_name(g2).into(),
        }),
    }
}

fn text_word(text: &str) -> Word {
    Word {
        parts: text
            .split('.')
            .map(|s| Ident {
                name: s.to_string(),
                line: 0,
                column: 0,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunction::kleisli_resolution;
    use crate::algebra::{build_algebra_category, enumerate_algebras, is_algebraically_idempotent, DEFAULT_ALGEBRA_CAP};
    use crate::relmonad::idempotence_report;

    fn monad(ws: &Workspace) -> Arc<RelMonad> {
        ws.monad("T").unwrap().monad.clone()
    }

    #[test]
    fn idem_not_alg() {
        let ws = gallery_build("paper-idem-not-alg").unwrap();
        let e = &ws.category("E").unwrap().category;
        assert_eq!((e.objects(), e.morphisms()), (3, 7));
        let t = monad(&ws);
        let rep = idempotence_report(&t).unwrap();
        assert!(rep.idempotent() && rep.agree());
        assert!(!is_algebraically_idempotent(&t).unwrap().holds);
        let on_e = enumerate_algebras(&t, e.find_object("e"));
        assert_eq!(on_e.len(), 2);
        assert!(on_e.iter().all(|a| !a.is_idempotent()));
        let declared: Vec<_> = ws.algebras.iter().map(|a| &a.algebra).collect();
        assert!(on_e.iter().all(|a| declared.iter().any(|d| d.same_structure(a))));
        let alg = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).unwrap();
        assert!(!alg.forgetful.is_full());
    }

    #[test]
    fn alg_not_free() {
        let ws = gallery_build("paper-alg-not-free").unwrap();
        let e = &ws.category("E").unwrap().category;
        assert_eq!((e.objects(), e.morphisms()), (3, 6));
        let t = monad(&ws);
        assert!(t.is_idempotent());
        assert!(is_algebraically_idempotent(&t).unwrap().holds);
        let alg = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).unwrap();
        assert_eq!(alg.category.objects(), 2);
        assert!(!alg.category.isomorphic_objects(0, 1));
        let kl = kleisli_resolution(&t, Some(&alg)).unwrap();
        assert_eq!((kl.category.objects(), kl.category.morphisms()), (1, 1));
        assert!(!kl.to_algebras.unwrap().is_essentially_surjective());
    }

    #[test]
    fn split_endo() {
        let ws = gallery_build("split-endo").unwrap();
        let e = &ws.category("E").unwrap().category;
        assert_eq!((e.objects(), e.morphisms()), (2, 5));
        let t = monad(&ws);
        let rep = idempotence_report(&t).unwrap();
        assert!(!rep.idempotent());
        let text = SPLIT_ENDO_NO_EXT;
        assert!(matches!(Workspace::from_text(text), Err(Error::NonUniqueExtension { .. })));
    }

    const SPLIT_ENDO_NO_EXT: &str = "category One { objects: star; }
        category E { objects: j, t; arrows: eta : j -> t, p : t -> j; relations: p.eta = id_j; }
        functor J : One -> E { objects: star |-> j; }
        relmonad T over J { carrier: star |-> t; unit: star |-> eta; }";

    #[test]
    fn trivial_is_everything() {
        let ws = gallery_build("trivial").unwrap();
        let t = monad(&ws);
        assert!(t.is_idempotent());
        assert!(is_algebraically_idempotent(&t).unwrap().holds);
    }

    #[test]
    fn emit_round_trips() {
        for name in GALLERY {
            let ws = gallery_build(name).unwrap();
            let text = ws.emit();
            let again = Workspace::from_text(&text).unwrap();
            assert_eq!(again.emit(), text, "{name}");
            for (m, n) in ws.monads.iter().zip(&again.monads) {
                assert!(m.monad.same_tables(&n.monad));
            }
        }
    }

    #[test]
    fn unknown_reference_has_location() {
        let err = Workspace::from_text("category One { objects: star; }\nfunctor J : One -> E { objects: star |-> j; }")
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 20, .. }), "{err:?}");
    }

    #[test]
    fn unknown_gallery_name() {
        assert!(matches!(gallery_build("nope"), Err(Error::UnknownName { .. })));
    }
}
