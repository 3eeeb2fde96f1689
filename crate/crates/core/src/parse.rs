//! Tree-expression parser.
//!
//! ```text
//! forest := "()" | tree (WS tree)*
//! tree   := dec | dec "[" tree ("," tree)* "]"
//! dec    := atom ("*" atom)*
//! atom   := [A-Za-z0-9_]+      ("1" is the monoid unit)
//! ```
//!
//! Whitespace is also accepted inside brackets, around `,` and `]`.

use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::tree::{Forest, RootedTree};

pub fn parse_forest(text: &str) -> Result<Forest> {
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.rest().starts_with("()") {
        p.pos += 2;
        p.skip_ws();
        p.expect_end()?;
        return Ok(Forest::empty());
    }
    let mut trees = Vec::new();
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        if !trees.is_empty() && !p.consumed_ws {
            return Err(p.error("expected whitespace between trees"));
        }
        trees.push(p.tree()?);
    }
    if trees.is_empty() {
        return Err(p.error("empty input; write `()` for the empty forest"));
    }
    Ok(Forest::from_trees(trees))
}

/// Parses exactly one tree.
pub fn parse_tree(text: &str) -> Result<RootedTree> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let t = p.tree()?;
    p.skip_ws();
    p.expect_end()?;
    Ok(t)
}

pub fn parse_decoration(text: &str) -> Result<Decoration> {
    let mut p = Parser::new(text);
    let d = p.decoration()?;
    p.expect_end()?;
    Ok(d)
}

pub fn render_forest(f: &Forest) -> String {
    f.to_string()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    consumed_ws: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            consumed_ws: false,
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        self.consumed_ws = self.pos > start;
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn atom(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return match self.peek() {
                None | Some('*' | ',' | ']' | '[') => Err(Error::EmptyLabel { pos: start }),
                Some(c) => Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{c}`"),
                }),
            };
        }
        Ok(&self.src[start..self.pos])
    }

    fn decoration(&mut self) -> Result<Decoration> {
        let mut atoms = Vec::new();
        let mut positions = Vec::new();
        loop {
            positions.push(self.pos);
            atoms.push(self.atom()?);
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if atoms.len() > 1 {
            if let Some(i) = atoms.iter().position(|a| *a == "1") {
                return Err(Error::ReservedAtom { pos: positions[i] });
            }
        }
        Ok(Decoration::from_atoms(atoms))
    }

    fn tree(&mut self) -> Result<RootedTree> {
        let d = self.decoration()?;
        let mut children = Vec::new();
        if self.peek() == Some('[') {
            self.pos += 1;
            loop {
                self.skip_ws();
                children.push(self.tree()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `]`")),
                }
            }
        }
        Ok(RootedTree::new(d, children))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_grammar() {
        let t = parse_tree("a[b,c]").unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(t.children().len(), 2);
        assert!(t.children().iter().all(RootedTree::is_leaf));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(parse_forest("a[c[x],b]").unwrap().to_string(), "a[b,c[x]]");
        assert_eq!(parse_forest("b a").unwrap().to_string(), "a b");
        assert_eq!(parse_forest("()").unwrap().to_string(), "()");
        assert_eq!(parse_forest("c*a").unwrap().to_string(), "a*c");
        assert_eq!(parse_forest(" a[ b , c ] ").unwrap().to_string(), "a[b,c]");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_forest("a[b,]").unwrap_err(),
            Error::EmptyLabel { pos: 4 }
        );
        assert_eq!(
            parse_forest("a*1").unwrap_err(),
            Error::ReservedAtom { pos: 2 }
        );
        assert!(matches!(
            parse_forest("a[b"),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_forest("a-b"),
            Err(Error::Syntax { pos: 1, .. })
        ));
        assert!(matches!(parse_forest(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_forest("() a"), Err(Error::Syntax { .. })));
        assert!(parse_tree("a b").is_err());
    }

    #[test]
    fn unit_atom_alone_is_allowed() {
        let t = parse_tree("1[a]").unwrap();
        assert!(t.decoration().is_unit());
    }
}
