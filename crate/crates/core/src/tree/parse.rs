//! Parsers for the two tree grammars:
//!
//! ```text
//! tree  := '(' tree* ')'
//! ltree := INT ( '(' ltree+ ')' )?
//! ```
//!
//! Whitespace is allowed between tokens.

use super::{LabeledTree, PlaneTree};
use crate::error::{Error, Result};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(Error::parse(
                self.pos,
                format!("expected '{}', found '{}'", byte as char, b as char),
            )),
            None => Err(Error::parse(
                self.pos,
                format!("expected '{}', found end of input", byte as char),
            )),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(b) => Err(Error::parse(
                self.pos,
                format!("trailing input starting with '{}'", b as char),
            )),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a label"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, "label out of range"))
    }
}

pub(super) fn plane_tree(s: &str) -> Result<PlaneTree> {
    let mut cur = Cursor::new(s);
    // Parse into preorder child lists directly.
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    cur.expect(b'(')?;
    children.push(Vec::new());
    open.push(0);
    while let Some(&v) = open.last() {
        match cur.peek() {
            Some(b'(') => {
                cur.pos += 1;
                let id = children.len();
                children.push(Vec::new());
                children[v].push(id);
                open.push(id);
            }
            Some(b')') => {
                cur.pos += 1;
                open.pop();
            }
            Some(b) => {
                return Err(Error::parse(cur.pos, format!("unexpected '{}'", b as char)));
            }
            None => return Err(Error::parse(cur.pos, "unbalanced parentheses: missing ')'")),
        }
    }
    cur.finish()?;
    Ok(PlaneTree::from_preorder_children(children))
}

pub(super) fn labeled_tree(s: &str) -> Result<LabeledTree> {
    let mut cur = Cursor::new(s);
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    // Stack of vertices whose child list is open.
    let mut open: Vec<usize> = Vec::new();
    labels.push(cur.integer()?);
    children.push(Vec::new());
    let mut last = 0;
    // A child list may only open directly after a label.
    let mut after_label = true;
    loop {
        match cur.peek() {
            Some(b'(') if !after_label => {
                return Err(Error::parse(cur.pos, "child list must follow a label"));
            }
            Some(b'(') => {
                cur.pos += 1;
                open.push(last);
                let id = children.len();
                labels.push(cur.integer()?);
                children.push(Vec::new());
                children[last].push(id);
                last = id;
            }
            Some(b')') => {
                cur.pos += 1;
                after_label = false;
                if open.pop().is_none() {
                    return Err(Error::parse(
                        cur.pos - 1,
                        "unbalanced parentheses: unexpected ')'",
                    ));
                }
            }
            Some(b) if b.is_ascii_digit() => {
                let Some(&p) = open.last() else {
                    return Err(Error::parse(cur.pos, "second root label"));
                };
                let id = children.len();
                labels.push(cur.integer()?);
                children.push(Vec::new());
                children[p].push(id);
                last = id;
                after_label = true;
            }
            Some(b) => return Err(Error::parse(cur.pos, format!("unexpected '{}'", b as char))),
            None => break,
        }
    }
    if !open.is_empty() {
        return Err(Error::parse(cur.pos, "unbalanced parentheses: missing ')'"));
    }
    LabeledTree::new(PlaneTree::from_preorder_children(children), labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_plane_trees() {
        for bad in ["", "(", "(()", "())", "()()", "(x)", "(( )) )"] {
            let err = plane_tree(bad).unwrap_err();
            assert!(matches!(err, Error::Parse { .. }), "{bad:?}: {err}");
        }
        assert_eq!(
            plane_tree("(()").unwrap_err(),
            Error::parse(3, "unbalanced parentheses: missing ')'")
        );
    }

    #[test]
    fn labeled_round_trip() {
        let s = "1(2(6) 3 4(5 7))";
        let x = labeled_tree(s).unwrap();
        assert_eq!(x.to_string(), s);
        assert_eq!(x.shape().compact(), "((())()(()()))");
        assert_eq!(labeled_tree("1").unwrap().to_string(), "1");
    }

    #[test]
    fn rejects_malformed_labeled_trees() {
        for bad in [
            "", "1(", "1(2", "1)", "1 2", "1()", "(1)", "1(2 x)", "1(2)(3)",
        ] {
            assert!(labeled_tree(bad).is_err(), "{bad:?}");
        }
        // Well-formed text, bad label set.
        assert!(matches!(
            labeled_tree("1(3)"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            labeled_tree("1(1)"),
            Err(Error::InvalidArgument(_))
        ));
    }
}
