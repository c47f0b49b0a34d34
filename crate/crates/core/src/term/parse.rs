//! Grammar, with `*` binding tighter than `+`:
//!
//! ```text
//! term   := factor ('+' factor)*
//! factor := atom ('*' atom)*
//! atom   := ident | '(' term ')'
//! ident  := [A-Za-z_][A-Za-z0-9_]*
//! ```

use super::Term;
use crate::error::{Error, Result};

/// Parenthesis nesting limit; deeper input is rejected rather than risking
/// the stack.
pub const MAX_DEPTH: usize = 256;

pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, depth: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut parts = vec![self.factor()?];
        while self.eat(b'+') {
            parts.push(self.factor()?);
        }
        Ok(Term::join(parts))
    }

    fn factor(&mut self) -> Result<Term> {
        let mut parts = vec![self.atom()?];
        while self.eat(b'*') {
            parts.push(self.atom()?);
        }
        Ok(Term::meet(parts))
    }

    fn atom(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.eat(b'(') {
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(self.error("nesting too deep"));
            }
            let t = self.term()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            self.depth -= 1;
            return Ok(t);
        }
        let start = self.pos;
        match self.s.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            Some(_) => return Err(self.error("expected generator or '('")),
            None => return Err(self.error("unexpected end of input")),
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii identifier");
        Ok(Term::gen(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_flattening() {
        let g = Term::gen;
        assert_eq!(parse("x*(y+z)").unwrap(), Term::Meet(vec![g("x"), Term::Join(vec![g("y"), g("z")])]));
        assert_eq!(parse("x+y+z").unwrap(), Term::Join(vec![g("x"), g("y"), g("z")]));
        assert_eq!(parse(" x * y + z ").unwrap(), Term::Join(vec![Term::Meet(vec![g("x"), g("y")]), g("z")]));
        assert_eq!(parse("((x))").unwrap(), g("x"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert!(matches!(parse("x*("), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("x y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("x+)"), Err(Error::Syntax { .. })));
        assert!(parse("x+1").is_err());
    }

    #[test]
    fn deep_nesting_is_rejected() {
        let deep = "(".repeat(MAX_DEPTH + 1) + "x" + &")".repeat(MAX_DEPTH + 1);
        assert!(parse(&deep).is_err());
        let ok = "(".repeat(MAX_DEPTH) + "x" + &")".repeat(MAX_DEPTH);
        assert_eq!(parse(&ok).unwrap(), Term::gen("x"));
    }
}
