//! Text notation: `label[!mark][(child[,child])]`.
//!
//! Marks are `!leaf`, `!vertex`, `!vertex:L`, `!vertex:R`, `!dist:r` and
//! `!loop`. Whitespace is not allowed.

use std::fmt;
use std::str::FromStr;

use super::{LabeledTree, Mark, Side};
use crate::error::Error;

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        match self.mark {
            Mark::None => {}
            Mark::MarkedLeaf => f.write_str("!leaf")?,
            Mark::MarkedVertex(None) => f.write_str("!vertex")?,
            Mark::MarkedVertex(Some(Side::Left)) => f.write_str("!vertex:L")?,
            Mark::MarkedVertex(Some(Side::Right)) => f.write_str("!vertex:R")?,
            Mark::DistinguishedLeaf(r) => write!(f, "!dist:{r}")?,
            Mark::LoopLeaf => f.write_str("!loop")?,
        }
        if let Some((first, rest)) = self.children.split_first() {
            write!(f, "({first}")?;
            for c in rest {
                write!(f, ",{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for LabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let tree = p.tree()?;
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(tree)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.src[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a label"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse { pos: start, msg: "label out of range".into() })
    }

    fn mark(&mut self) -> Result<Mark, Error> {
        if !self.eat(b'!') {
            return Ok(Mark::None);
        }
        if self.eat_word("leaf") {
            Ok(Mark::MarkedLeaf)
        } else if self.eat_word("loop") {
            Ok(Mark::LoopLeaf)
        } else if self.eat_word("dist:") {
            Ok(Mark::DistinguishedLeaf(self.number()?))
        } else if self.eat_word("vertex") {
            if !self.eat(b':') {
                return Ok(Mark::MarkedVertex(None));
            }
            if self.eat(b'L') {
                Ok(Mark::MarkedVertex(Some(Side::Left)))
            } else if self.eat(b'R') {
                Ok(Mark::MarkedVertex(Some(Side::Right)))
            } else {
                Err(self.err("expected side L or R"))
            }
        } else {
            Err(self.err("unknown mark"))
        }
    }

    fn tree(&mut self) -> Result<LabeledTree, Error> {
        let label = self.number()?;
        let mark = self.mark()?;
        let mut children = Vec::new();
        if self.eat(b'(') {
            loop {
                if children.len() == 2 {
                    return Err(self.err("a node has at most two children"));
                }
                children.push(self.tree()?);
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(self.err("expected ',' or ')'"));
                }
            }
        }
        Ok(LabeledTree { label, mark, children })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "1(0,0)",
            "1(2(0!leaf,1(0,0)))",
            "3!vertex:R(0,1(0,0))",
            "0!vertex",
            "2(1!loop,1(2(0,0)))",
            "1(2(3!dist:3))",
        ] {
            let t: LabeledTree = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            "1(0,0,0)".parse::<LabeledTree>().unwrap_err(),
            Error::Parse { pos: 6, msg: "a node has at most two children".into() }
        );
        assert!(matches!("1(0".parse::<LabeledTree>(), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!("1!foo".parse::<LabeledTree>(), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!("".parse::<LabeledTree>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("1(0,0) ".parse::<LabeledTree>(), Err(Error::Parse { pos: 6, .. })));
    }
}
