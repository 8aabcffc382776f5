//! The presentation language.
//!
//! ```text
//! category E { objects: j, t, e; arrows: eta : j -> t, f : t -> e, fp : t -> e; relations: f.eta = fp.eta; }
//! functor J : One -> E { objects: star |-> j; }
//! relmonad T over J { carrier: star |-> t; unit: star |-> eta; ext: (star, star, eta) |-> id_t; }
//! algebra A for T { carrier: e; ext: (star, f.eta) |-> f; }
//! adjunction K over J { left: L; right: R; phi: (a, c, s) |-> w; }
//! ```
//!
//! Words compose right to left: `g.f` is "`f` then `g`". `id_x` names the
//! identity on `x`. `#` starts a comment.

mod lexer;

pub use lexer::{tokenize, Tok, Token};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub line: usize,
    pub column: usize,
}

/// A `.`-composed word, in written order (leftmost is applied last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub parts: Vec<Ident>,
}

impl Word {
    pub fn text(&self) -> String {
        self.parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(".")
    }

    pub fn position(&self) -> (usize, usize) {
        (self.parts[0].line, self.parts[0].column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryBlock {
    pub name: Ident,
    pub objects: Vec<Ident>,
    pub arrows: Vec<(Ident, Ident, Ident)>,
    pub relations: Vec<(Word, Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorBlock {
    pub name: Ident,
    pub source: Ident,
    pub target: Ident,
    pub objects: Vec<(Ident, Ident)>,
    pub arrows: Vec<(Ident, Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelMonadBlock {
    pub name: Ident,
    pub root: Ident,
    pub carrier: Vec<(Ident, Ident)>,
    pub unit: Vec<(Ident, Word)>,
    pub ext: Vec<((Ident, Ident, Word), Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraBlock {
    pub name: Ident,
    pub monad: Ident,
    pub carrier: Option<Ident>,
    pub ext: Vec<((Ident, Word), Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionBlock {
    pub name: Ident,
    pub root: Ident,
    pub left: Option<Ident>,
    pub right: Option<Ident>,
    pub phi: Vec<((Ident, Ident, Word), Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Category(CategoryBlock),
    Functor(FunctorBlock),
    RelMonad(RelMonadBlock),
    Algebra(AlgebraBlock),
    Adjunction(AdjunctionBlock),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub blocks: Vec<Block>,
}

pub fn parse_document(text: &str) -> Result<Document> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut doc = Document::default();
    while p.peek() != &Tok::Eof {
        doc.blocks.push(p.block()?);
    }
    Ok(doc)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn error(&self, expected: &[&str]) -> Error {
        let t = &self.tokens[self.pos];
        Error::Parse {
            line: t.line,
            column: t.column,
            message: format!("expected {}, found {}", expected.join(" or "), t.tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<Ident> {
        let t = &self.tokens[self.pos];
        if let Tok::Ident(name) = &t.tok {
            let id = Ident {
                name: name.clone(),
                line: t.line,
                column: t.column,
            };
            self.pos += 1;
            Ok(id)
        } else {
            Err(self.error(&["identifier"]))
        }
    }

    fn keyword(&mut self, options: &[&str]) -> Result<Ident> {
        match self.peek() {
            Tok::Ident(s) if options.contains(&s.as_str()) => self.ident(),
            _ => {
                let quoted: Vec<String> = options.iter().map(|o| format!("`{o}`")).collect();
                let refs: Vec<&str> = quoted.iter().map(String::as_str).collect();
                Err(self.error(&refs))
            }
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut parts = vec![self.ident()?];
        while self.eat(Tok::Dot) {
            parts.push(self.ident()?);
        }
        Ok(Word { parts })
    }

    /// `item (, item)* ;`, possibly empty.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = Vec::new();
        if self.eat(Tok::Semi) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(Tok::Comma) {
                continue;
            }
            if self.eat(Tok::Semi) {
                return Ok(out);
            }
            return Err(self.error(&["`,`", "`;`"]));
        }
    }

    fn block(&mut self) -> Result<Block> {
        let kw = self.keyword(&["category", "functor", "relmonad", "algebra", "adjunction"])?;
        match kw.name.as_str() {
            "category" => self.category().map(Block::Category),
            "functor" => self.functor().map(Block::Functor),
            "relmonad" => self.relmonad().map(Block::RelMonad),
            "algebra" => self.algebra().map(Block::Algebra),
            _ => self.adjunction().map(Block::Adjunction),
        }
    }

    fn sections(&mut self, keys: &[&str], mut section: impl FnMut(&mut Self, &str) -> Result<()>) -> Result<()> {
        self.expect(Tok::LBrace)?;
        while !self.eat(Tok::RBrace) {
            if self.peek() == &Tok::Eof {
                let mut exp: Vec<String> = keys.iter().map(|k| format!("`{k}`")).collect();
                exp.push("`}`".into());
                let refs: Vec<&str> = exp.iter().map(String::as_str).collect();
                return Err(self.error(&refs));
            }
            let key = self.keyword(keys)?;
            self.expect(Tok::Colon)?;
            section(self, &key.name)?;
        }
        Ok(())
    }

    fn category(&mut self) -> Result<CategoryBlock> {
        let name = self.ident()?;
        let mut b = CategoryBlock {
            name,
            objects: vec![],
            arrows: vec![],
            relations: vec![],
        };
        self.sections(&["objects", "arrows", "relations"], |p, key| {
            match key {
                "objects" => b.objects.extend(p.list(|p| p.ident())?),
                "arrows" => b.arrows.extend(p.list(|p| {
                    let f = p.ident()?;
                    p.expect(Tok::Colon)?;
                    let s = p.ident()?;
                    p.expect(Tok::Arrow)?;
                    Ok((f, s, p.ident()?))
                })?),
                _ => b.relations.extend(p.list(|p| {
                    let l = p.word()?;
                    p.expect(Tok::Eq)?;
                    Ok((l, p.word()?))
                })?),
            }
            Ok(())
        })?;
        Ok(b)
    }

    fn functor(&mut self) -> Result<FunctorBlock> {
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let source = self.ident()?;
        self.expect(Tok::Arrow)?;
        let target = self.ident()?;
        let mut b = FunctorBlock {
            name,
            source,
            target,
            objects: vec![],
            arrows: vec![],
        };
        self.sections(&["objects", "arrows"], |p, key| {
            match key {
                "objects" => b.objects.extend(p.list(|p| {
                    let x = p.ident()?;
                    p.expect(Tok::MapsTo)?;
                    Ok((x, p.ident()?))
                })?),
                _ => b.arrows.extend(p.list(|p| {
                    let f = p.ident()?;
                    p.expect(Tok::MapsTo)?;
                    Ok((f, p.word()?))
                })?),
            }
            Ok(())
        })?;
        Ok(b)
    }

    fn relmonad(&mut self) -> Result<RelMonadBlock> {
        let name = self.ident()?;
        self.keyword(&["over"])?;
        let root = self.ident()?;
        let mut b = RelMonadBlock {
            name,
            root,
            carrier: vec![],
            unit: vec![],
            ext: vec![],
        };
        self.sections(&["carrier", "unit", "ext"], |p, key| {
            match key {
                "carrier" => b.carrier.extend(p.list(|p| {
                    let a = p.ident()?;
                    p.expect(Tok::MapsTo)?;
                    Ok((a, p.ident()?))
                })?),
                "unit" => b.unit.extend(p.list(|p| {
                    let a = p.ident()?;
                    p.expect(Tok::MapsTo)?;
                    Ok((a, p.word()?))
                })?),
                _ => b.ext.extend(p.list(|p| {
                    p.expect(Tok::LParen)?;
                    let a = p.ident()?;
                    p.expect(Tok::Comma)?;
                    let c = p.ident()?;
                    p.expect(Tok::Comma)?;
                    let w = p.word()?;
                    p.expect(Tok::RParen)?;
                    p.expect(Tok::MapsTo)?;
                    Ok(((a, c, w), p.word()?))
                })?),
            }
            Ok(())
        })?;
        Ok(b)
    }

    fn algebra(&mut self) -> Result<AlgebraBlock> {
        let name = self.ident()?;
        self.keyword(&["for"])?;
        let monad = self.ident()?;
        let mut b = AlgebraBlock {
            name,
            monad,
            carrier: None,
            ext: vec![],
        };
        self.sections(&["carrier", "ext"], |p, key| {
            match key {
                "carrier" => {
                    b.carrier = Some(p.ident()?);
                    p.expect(Tok::Semi)?;
                }
                _ => b.ext.extend(p.list(|p| {
                    p.expect(Tok::LParen)?;
                    let a = p.ident()?;
                    p.expect(Tok::Comma)?;
                    let w = p.word()?;
                    p.expect(Tok::RParen)?;
                    p.expect(Tok::MapsTo)?;
                    Ok(((a, w), p.word()?))
                })?),
            }
            Ok(())
        })?;
        Ok(b)
    }

    fn adjunction(&mut self) -> Result<AdjunctionBlock> {
        let name = self.ident()?;
        self.keyword(&["over"])?;
        let root = self.ident()?;
        let mut b = AdjunctionBlock {
            name,
            root,
            left: None,
            right: None,
            phi: vec![],
        };
        self.sections(&["left", "right", "phi"], |p, key| {
            match key {
                "left" => {
                    b.left = Some(p.ident()?);
                    p.expect(Tok::Semi)?;
                }
                "right" => {
                    b.right = Some(p.ident()?);
                    p.expect(Tok::Semi)?;
                }
                _ => b.phi.extend(p.list(|p| {
                    p.expect(Tok::LParen)?;
                    let a = p.ident()?;
                    p.expect(Tok::Comma)?;
                    let c = p.ident()?;
                    p.expect(Tok::Comma)?;
                    let s = p.word()?;
                    p.expect(Tok::RParen)?;
                    p.expect(Tok::MapsTo)?;
                    Ok(((a, c, s), p.word()?))
                })?),
            }
            Ok(())
        })?;
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_block_kind() {
        let doc = parse_document(
            "category E { objects: j, t; arrows: eta : j -> t; }
             category One { objects: star; }
             functor J : One -> E { objects: star |-> j; arrows: ; }
             relmonad T over J { carrier: star |-> t; unit: star |-> eta; ext: (star, star, eta) |-> id_t; }
             algebra A for T { carrier: t; ext: (star, eta) |-> id_t; }
             adjunction K over J { left: L; right: R; phi: (star, c, s) |-> w.v; }",
        )
        .unwrap();
        assert_eq!(doc.blocks.len(), 6);
        match &doc.blocks[5] {
            Block::Adjunction(a) => assert_eq!(a.phi[0].1.text(), "w.v"),
            _ => panic!(),
        }
    }

    #[test]
    fn error_carries_position_and_expected_set() {
        let err = parse_document("category C {\n  objects a; }").unwrap_err();
        match err {
            Error::Parse {
                line, column, expected, ..
            } => {
                assert_eq!((line, column), (2, 11));
                assert_eq!(expected, vec!["`:`".to_string()]);
            }
            other => panic!("{other:?}"),
        }
        let err = parse_document("monad M {}").unwrap_err();
        match err {
            Error::Parse { expected, .. } => assert_eq!(expected.len(), 5),
            other => panic!("{other:?}"),
        }
    }
}
