// SPDX-License-Identifier: Apache-2.0

//! Recursive-descent parser.
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := '~' factor | '(' expr ')' | 'x' digits
//! ```
//! Whitespace is ignored.

use super::{Formula, FormulaError};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> FormulaError {
        FormulaError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn unexpected(&mut self, wanted: &str) -> FormulaError {
        match self.peek() {
            Some(c) => self.error(format!("expected {wanted}, found `{}`", c as char)),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Formula, FormulaError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b'|') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(Formula::or(terms))
    }

    fn term(&mut self) -> Result<Formula, FormulaError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'&') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(Formula::and(factors))
    }

    fn factor(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(self.factor()?.negate())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let digits_start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
                if digits.is_empty() {
                    return Err(self.unexpected("variable number after `x`"));
                }
                let var: usize = digits
                    .parse()
                    .map_err(|_| FormulaError::Syntax { pos: start, msg: format!("variable number `{digits}` too large") })?;
                if var == 0 {
                    return Err(FormulaError::ZeroVariable { pos: start });
                }
                Ok(Formula::var(var))
            }
            _ => Err(self.unexpected("`~`, `(` or a variable")),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let f = parse_formula("(x1|x2)&~x3").unwrap();
        assert_eq!(
            f,
            Formula::And(vec![
                Formula::Or(vec![Formula::var(1), Formula::var(2)]),
                Formula::lit(3, true)
            ])
        );
        assert_eq!(parse_formula(" x1 ").unwrap(), Formula::var(1));
        assert_eq!(parse_formula("(x1|x2)&(~x1|~x3)").unwrap().leaf_count(), 4);
    }

    #[test]
    fn and_binds_tighter() {
        let f = parse_formula("x1|x2&x3").unwrap();
        assert_eq!(
            f,
            Formula::Or(vec![
                Formula::var(1),
                Formula::And(vec![Formula::var(2), Formula::var(3)])
            ])
        );
    }

    #[test]
    fn negation_pushed_down() {
        let f = parse_formula("~(x1&~(x2|x3))").unwrap();
        assert_eq!(f.to_string(), "~x1|x2|x3");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_formula("x0"), Err(FormulaError::ZeroVariable { pos: 0 }));
        assert!(matches!(parse_formula("x1 & (x2"), Err(FormulaError::Syntax { pos: 8, .. })));
        assert!(matches!(parse_formula("x1 x2"), Err(FormulaError::Syntax { pos: 3, .. })));
        let e = parse_formula("x1 + x2").unwrap_err().to_string();
        assert!(e.contains("`+`"), "{e}");
        assert!(parse_formula("").is_err());
        assert!(parse_formula("y1").is_err());
    }
}
