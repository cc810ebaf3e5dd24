//! Polynomial expression parser.
//!
//! Grammar (precedence climbing, all binary operators left-associative):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT IDENT-power | INT | IDENT | '(' expr ')'
//! ```
//!
//! An integer written directly against an identifier (`3x`, `12y^2`) is a
//! product; every other product needs an explicit `*`. Columns in errors are
//! 1-based character positions.

use num_bigint::BigInt;

use super::{Integers, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            let v: BigInt = digits.parse().expect("ascii digits");
            out.push(Token { tok: Tok::Int(v), start: col, end: i + 1 });
            continue;
        }
        if c.is_ascii_lowercase() {
            let s = i;
            while i < chars.len()
                && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit() || chars[i] == '_')
            {
                i += 1;
            }
            let name: String = chars[s..i].iter().collect();
            out.push(Token { tok: Tok::Ident(name), start: col, end: i + 1 });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Syntax { column: col, message: format!("unexpected character '{c}'") })
            }
        };
        out.push(Token { tok, start: col, end: col + 1 });
        i += 1;
    }
    out.push(Token { tok: Tok::End, start: chars.len() + 1, end: chars.len() + 1 });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expected(&self, what: &str) -> Error {
        let t = self.peek();
        let found = match &t.tok {
            Tok::End => "end of input".to_string(),
            Tok::Int(v) => format!("'{v}'"),
            Tok::Ident(s) => format!("'{s}'"),
            other => format!("{other:?}"),
        };
        Error::Syntax { column: t.start, message: format!("expected {what}, found {found}") }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.exponent(base)
    }

    fn exponent(&mut self, base: Polynomial) -> Result<Polynomial> {
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let e = match &t.tok {
            Tok::Int(v) => u32::try_from(v).map_err(|_| Error::BadExponent { column: t.start })?,
            _ => return Err(Error::BadExponent { column: t.start }),
        };
        if matches!(self.peek().tok, Tok::Ident(_)) && self.peek().start == t.end {
            return Err(Error::BadExponent { column: t.start });
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        if !matches!(self.peek().tok, Tok::Int(_) | Tok::Ident(_) | Tok::LParen) {
            return Err(self.expected("a number, variable or '('"));
        }
        let t = self.bump();
        match t.tok {
            Tok::Int(v) => {
                let c = Polynomial::int_constant(vec![], v);
                let next = self.peek().clone();
                if let Tok::Ident(name) = &next.tok {
                    if next.start == t.end {
                        self.bump();
                        let x = self.exponent(Polynomial::int_var(vec![], name))?;
                        return Ok(&c * &x);
                    }
                }
                Ok(c)
            }
            Tok::Ident(name) => Ok(Polynomial::int_var(vec![], &name)),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.expected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => unreachable!("checked above"),
        }
    }
}

/// Parses a polynomial; its variables are exactly those appearing in `text`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    if p.peek().tok == Tok::End {
        return Err(Error::Syntax { column: 1, message: "empty expression".into() });
    }
    let out = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.expected("an operator or end of input"));
    }
    Ok(out.compact())
}

/// Parses a polynomial over the given ambient variables (sorted on the way in).
/// A variable in `text` that is not in `vars` is a precondition error.
pub fn parse_in(text: &str, vars: &[String]) -> Result<Polynomial> {
    parse_polynomial(text)?.embed(vars)
}

/// Parses several polynomials and places them over their common sorted variable list.
pub fn parse_family<S: AsRef<str>>(texts: &[S]) -> Result<Vec<Polynomial>> {
    let polys = texts
        .iter()
        .map(|t| parse_polynomial(t.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Ok(super::MPoly::<Integers>::unify_all(&polys))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_pair() {
        let p = parse_polynomial("x^2 - y^3").unwrap();
        assert_eq!(p.to_string(), "-y^3 + x^2");
        let q = parse_polynomial("x*(y + 2) + 1").unwrap();
        assert_eq!(q.to_string(), "x*y + 2*x + 1");
    }

    #[test]
    fn zero_and_constants() {
        assert!(parse_polynomial("0").unwrap().is_zero());
        assert_eq!(parse_polynomial("-7").unwrap().to_string(), "-7");
        assert_eq!(parse_polynomial("2^10").unwrap().to_string(), "1024");
    }

    #[test]
    fn juxtaposition_only_for_coefficients() {
        assert_eq!(parse_polynomial("3x^2").unwrap(), parse_polynomial("3*x^2").unwrap());
        assert!(matches!(parse_polynomial("3 x"), Err(Error::Syntax { column: 3, .. })));
        assert!(parse_polynomial("x y").is_err());
        assert!(parse_polynomial("(x)(y)").is_err());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_polynomial("-x^2").unwrap(), parse_polynomial("0 - x*x").unwrap());
        assert_eq!(parse_polynomial("2*x+3*x").unwrap(), parse_polynomial("5x").unwrap());
        assert_eq!(parse_polynomial("(x+1)^2").unwrap().to_string(), "x^2 + 2*x + 1");
    }

    #[test]
    fn exponent_errors() {
        assert_eq!(parse_polynomial("x^-1"), Err(Error::BadExponent { column: 3 }));
        assert_eq!(parse_polynomial("x^y"), Err(Error::BadExponent { column: 3 }));
        assert_eq!(parse_polynomial("x^2y"), Err(Error::BadExponent { column: 3 }));
    }

    #[test]
    fn syntax_errors_report_columns() {
        assert!(matches!(parse_polynomial("x + "), Err(Error::Syntax { column: 5, .. })));
        assert!(matches!(parse_polynomial("(x+1"), Err(Error::Syntax { column: 5, .. })));
        assert!(matches!(parse_polynomial("x # 2"), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse_polynomial("X"), Err(Error::Syntax { column: 1, .. })));
        assert!(matches!(parse_polynomial(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn identifiers_with_digits_and_underscores() {
        let p = parse_polynomial("x_1*x2 + 1").unwrap();
        assert_eq!(p.vars(), &["x2".to_string(), "x_1".to_string()]);
    }

    #[test]
    fn parse_in_keeps_ambient_variables() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = parse_in("x + 1", &vars).unwrap();
        assert_eq!(p.vars(), vars.as_slice());
        assert!(parse_in("z", &vars).is_err());
    }
}
