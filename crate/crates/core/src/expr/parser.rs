use num::{BigInt, BigRational};
use thiserror::Error;

use crate::rational::Rational;

/// Syntax tree of a rational expression in one variable and at most one
/// declared parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Rational(Rational),
    Var,
    Param,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Integer exponent; negative exponents mean division.
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown symbol '{name}' at position {position}")]
    UnknownSymbol { position: usize, name: String },
    #[error("exponent overflow at position {position}")]
    ExponentOverflow { position: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::UnknownSymbol { position, .. }
            | ParseError::ExponentOverflow { position } => *position,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

// positions count characters, not bytes
fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(syntax(i, "decimal literals are not supported, write p/q"));
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(syntax(i, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    var: &'a str,
    params: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if *self.peek() == Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(syntax(self.here(), format!("expected '{op}'")))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = match (lhs, rhs) {
                    // p/q between two bare literals is a rational literal
                    (Expr::Int(p), Expr::Int(q)) if q != BigInt::from(0) => {
                        Expr::Rational(Rational::from(BigRational::new(p, q)))
                    }
                    (l, r) => Expr::Div(Box::new(l), Box::new(r)),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            Ok(Expr::Pow(Box::new(base), e))
        } else {
            Ok(base)
        }
    }

    // integer constant expression, right-associative ^
    fn exponent(&mut self) -> Result<i64, ParseError> {
        let start = self.here();
        if self.eat('-') {
            return self.exponent()?.checked_neg().ok_or(ParseError::ExponentOverflow { position: start });
        }
        if self.eat('+') {
            return self.exponent();
        }
        let base = match self.bump() {
            (Tok::Int(n), p) => i64::try_from(n).map_err(|_| ParseError::ExponentOverflow { position: p })?,
            (Tok::Op('('), _) => {
                let v = self.exponent_sum()?;
                self.expect(')')?;
                v
            }
            (_, p) => return Err(syntax(p, "exponent must be an integer constant")),
        };
        if self.eat('^') {
            let e = self.exponent()?;
            let e = u32::try_from(e).map_err(|_| syntax(start, "exponent of an exponent must be nonnegative"))?;
            base.checked_pow(e).ok_or(ParseError::ExponentOverflow { position: start })
        } else {
            Ok(base)
        }
    }

    fn exponent_sum(&mut self) -> Result<i64, ParseError> {
        let start = self.here();
        let overflow = ParseError::ExponentOverflow { position: start };
        let mut acc = self.exponent_product()?;
        loop {
            if self.eat('+') {
                acc = acc.checked_add(self.exponent_product()?).ok_or(overflow.clone())?;
            } else if self.eat('-') {
                acc = acc.checked_sub(self.exponent_product()?).ok_or(overflow.clone())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent_product(&mut self) -> Result<i64, ParseError> {
        let start = self.here();
        let mut acc = self.exponent()?;
        while self.eat('*') {
            acc = acc
                .checked_mul(self.exponent()?)
                .ok_or(ParseError::ExponentOverflow { position: start })?;
        }
        if *self.peek() == Tok::Op('/') {
            return Err(syntax(self.here(), "exponent must be an integer constant"));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(Expr::Int(n)),
            (Tok::Ident(name), p) => {
                if name == self.var {
                    Ok(Expr::Var)
                } else if self.params.contains(&name.as_str()) {
                    Ok(Expr::Param)
                } else {
                    Err(ParseError::UnknownSymbol { position: p, name })
                }
            }
            (Tok::Op('('), _) => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            (Tok::End, p) => Err(syntax(p, "unexpected end of input")),
            (Tok::Op(c), p) => Err(syntax(p, format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `input` as a rational expression in `var`. Identifiers other than
/// `var` and the declared `params` are rejected.
pub fn parse_expr(input: &str, var: &str, params: &[&str]) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(input)?,
        pos: 0,
        var,
        params,
    };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        _ => Err(syntax(p.here(), "unexpected trailing input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Expr, ParseError> {
        parse_expr(s, "x", &[])
    }

    fn int(n: i64) -> Box<Expr> {
        Box::new(Expr::Int(n.into()))
    }

    #[test]
    fn rational_literal() {
        assert_eq!(parse("1/2").unwrap(), Expr::Rational(Rational::new(1, 2)));
        assert_eq!(parse("4/6").unwrap(), Expr::Rational(Rational::new(2, 3)));
    }

    #[test]
    fn unclosed_paren_position() {
        let err = parse("x^(2").unwrap_err();
        assert_eq!(err.position(), 4);
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn precedence() {
        // -x^2 is -(x^2)
        assert_eq!(parse("-x^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var), 2))));
        assert_eq!(parse("x^2^3").unwrap(), Expr::Pow(Box::new(Expr::Var), 8));
        assert_eq!(
            parse("1 - 2 - 3").unwrap(),
            Expr::Sub(Box::new(Expr::Sub(int(1), int(2))), int(3))
        );
        assert_eq!(
            parse("x*2/x").unwrap(),
            Expr::Div(Box::new(Expr::Mul(Box::new(Expr::Var), int(2))), Box::new(Expr::Var))
        );
    }

    #[test]
    fn golden_input_parses() {
        let e = parse("x^10/((x^2+x+1)^2*(x^2-x+1)^2)").unwrap();
        let Expr::Div(num, den) = e else { panic!("not a quotient") };
        assert_eq!(*num, Expr::Pow(Box::new(Expr::Var), 10));
        assert!(matches!(*den, Expr::Mul(..)));
    }

    #[test]
    fn exponents() {
        assert_eq!(parse("x^-2").unwrap(), Expr::Pow(Box::new(Expr::Var), -2));
        assert_eq!(parse("x^(2*3-1)").unwrap(), Expr::Pow(Box::new(Expr::Var), 5));
        assert!(matches!(parse("x^x"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse("x^99999999999999999999"), Err(ParseError::ExponentOverflow { .. })));
        assert!(matches!(parse("x^(2^64)"), Err(ParseError::ExponentOverflow { .. })));
    }

    #[test]
    fn symbols() {
        assert_eq!(
            parse("y + 1").unwrap_err(),
            ParseError::UnknownSymbol {
                position: 0,
                name: "y".into()
            }
        );
        assert_eq!(parse_expr("t", "x", &["t"]).unwrap(), Expr::Param);
    }

    #[test]
    fn rejects_decimals_and_junk() {
        assert!(matches!(parse("0.5*x"), Err(ParseError::Syntax { position: 1, .. })));
        assert!(matches!(parse("x $ 1"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse("x x"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { position: 0, .. })));
    }
}
