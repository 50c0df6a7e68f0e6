//! Formula parser.
//!
//! ```text
//! expr  := xor ('|' xor)*
//! xor   := and ('^' and)*
//! and   := unary ('&' unary)*
//! unary := '!' unary | atom
//! atom  := 'x' DIGITS | '0' | '1' | '(' expr ')' | NAME '(' expr (',' expr)* ')'
//! NAME  := maj | s00 | s10 | and | or | xor
//! ```
//!
//! A chain of the same infix operator becomes one n-ary node.

use super::{Formula, ReprError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Var(usize),
    Const(bool),
    Name(&'a str),
    Not,
    And,
    Xor,
    Or,
    Open,
    Close,
    Comma,
    End,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    tok: Tok<'a>,
    tok_at: usize,
    arity: usize,
}

pub fn parse_formula(text: &str, arity: usize) -> Result<Formula, ReprError> {
    let mut p = Parser {
        text,
        pos: 0,
        tok: Tok::End,
        tok_at: 0,
        arity,
    };
    p.advance()?;
    let f = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> ReprError {
        ReprError::Syntax {
            offset: self.tok_at,
            message: msg.to_string(),
        }
    }

    fn advance(&mut self) -> Result<(), ReprError> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_at = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            self.tok = Tok::End;
            return Ok(());
        };
        let single = match c {
            b'!' => Some(Tok::Not),
            b'&' => Some(Tok::And),
            b'^' => Some(Tok::Xor),
            b'|' => Some(Tok::Or),
            b'(' => Some(Tok::Open),
            b')' => Some(Tok::Close),
            b',' => Some(Tok::Comma),
            b'0' => Some(Tok::Const(false)),
            b'1' => Some(Tok::Const(true)),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            if matches!(t, Tok::Const(_))
                && bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric())
            {
                return Err(self.error("constants are the single digits 0 and 1"));
            }
            self.tok = t;
            return Ok(());
        }
        if !c.is_ascii_alphabetic() {
            return Err(self.error(&format!("unexpected character {:?}", c as char)));
        }
        let start = self.pos;
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let word = &self.text[start..self.pos];
        self.tok = match word.strip_prefix('x') {
            Some(digits) if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                let index: usize = digits
                    .parse()
                    .map_err(|_| self.error("variable index too large"))?;
                if index == 0 {
                    return Err(self.error("variable indices start at x1"));
                }
                if index > self.arity {
                    return Err(ReprError::VariableOutOfRange {
                        index,
                        arity: self.arity,
                    });
                }
                Tok::Var(index - 1)
            }
            _ => match word {
                "maj" | "s00" | "s10" | "and" | "or" | "xor" => Tok::Name(word),
                _ => return Err(self.error(&format!("unknown identifier {word:?}"))),
            },
        };
        Ok(())
    }

    fn expect(&mut self, tok: Tok<'_>, what: &str) -> Result<(), ReprError> {
        if self.tok != tok {
            return Err(self.error(&format!("expected {what}")));
        }
        self.advance()
    }

    fn chain(
        &mut self,
        op: Tok<'static>,
        next: fn(&mut Self) -> Result<Formula, ReprError>,
        build: fn(Vec<Formula>) -> Formula,
    ) -> Result<Formula, ReprError> {
        let first = next(self)?;
        if self.tok != op {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.tok == op {
            self.advance()?;
            items.push(next(self)?);
        }
        Ok(build(items))
    }

    fn expr(&mut self) -> Result<Formula, ReprError> {
        self.chain(Tok::Or, Self::xor, Formula::Or)
    }

    fn xor(&mut self) -> Result<Formula, ReprError> {
        self.chain(Tok::Xor, Self::and, Formula::Xor)
    }

    fn and(&mut self) -> Result<Formula, ReprError> {
        self.chain(Tok::And, Self::unary, Formula::And)
    }

    fn unary(&mut self) -> Result<Formula, ReprError> {
        if self.tok == Tok::Not {
            self.advance()?;
            return Ok(Formula::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ReprError> {
        match self.tok {
            Tok::Var(j) => {
                self.advance()?;
                Ok(Formula::Var(j))
            }
            Tok::Const(b) => {
                self.advance()?;
                Ok(Formula::Const(b))
            }
            Tok::Open => {
                self.advance()?;
                let f = self.expr()?;
                self.expect(Tok::Close, "')'")?;
                Ok(f)
            }
            Tok::Name(name) => {
                let at = self.tok_at;
                self.advance()?;
                self.expect(Tok::Open, "'(' after operator name")?;
                let mut args = vec![self.expr()?];
                while self.tok == Tok::Comma {
                    self.advance()?;
                    args.push(self.expr()?);
                }
                self.expect(Tok::Close, "')'")?;
                build_call(name, args).ok_or_else(|| ReprError::Syntax {
                    offset: at,
                    message: format!("{name} takes exactly three arguments"),
                })
            }
            Tok::End => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected a variable, constant, '(' or operator name")),
        }
    }
}

fn build_call(name: &str, args: Vec<Formula>) -> Option<Formula> {
    match name {
        "and" => return Some(Formula::And(args)),
        "or" => return Some(Formula::Or(args)),
        "xor" => return Some(Formula::Xor(args)),
        _ => {}
    }
    let [a, b, c]: [Formula; 3] = args.try_into().ok()?;
    Some(match name {
        "maj" => Formula::maj(a, b, c),
        "s00" => Formula::s00(a, b, c),
        _ => Formula::s10(a, b, c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula::*;

    #[test]
    fn precedence() {
        assert_eq!(
            parse_formula("x1 & (x2 | x3)", 3).unwrap(),
            And(vec![Var(0), Or(vec![Var(1), Var(2)])])
        );
        assert_eq!(
            parse_formula("x1 ^ x2 ^ 1", 2).unwrap(),
            Xor(vec![Var(0), Var(1), Const(true)])
        );
        assert_eq!(
            parse_formula("x1 | x2 ^ x3 & !x1", 3).unwrap(),
            Or(vec![
                Var(0),
                Xor(vec![Var(1), And(vec![Var(2), Formula::not(Var(0))])])
            ])
        );
        assert_eq!(
            parse_formula("maj(x1,x2,x3)", 3).unwrap(),
            Formula::maj(Var(0), Var(1), Var(2))
        );
    }

    #[test]
    fn named_calls() {
        assert_eq!(parse_formula("and(x1)", 1).unwrap(), And(vec![Var(0)]));
        assert_eq!(
            parse_formula("xor(x1, x2, 0)", 2).unwrap(),
            Xor(vec![Var(0), Var(1), Const(false)])
        );
        assert!(parse_formula("maj(x1, x2)", 2).is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse_formula("x1 & ", 1),
            Err(ReprError::Syntax {
                offset: 5,
                message: "unexpected end of input".into()
            })
        );
        assert!(matches!(
            parse_formula("x1 $ x2", 2),
            Err(ReprError::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse_formula("(x1", 1),
            Err(ReprError::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse_formula("y1", 1),
            Err(ReprError::Syntax { offset: 0, .. })
        ));
        assert!(parse_formula("x0", 1).is_err());
        assert!(parse_formula("10", 1).is_err());
        assert!(parse_formula("x1 x2", 2).is_err());
    }

    #[test]
    fn variable_range() {
        assert_eq!(
            parse_formula("x1 & x3", 2),
            Err(ReprError::VariableOutOfRange { index: 3, arity: 2 })
        );
    }
}
