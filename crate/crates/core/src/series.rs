//! Recursive-descent parser for Hilbert-series expressions in `t`.
//!
//! Grammar (whitespace is insignificant, ASCII only):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | 't' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-t^2` is `-(t^2)`. There is no
//! implicit multiplication.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{from_bigint, Polynomial, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("{message} in `{snippet}` (bytes {}..{})", span.start, span.end)]
    Semantic {
        span: Range<usize>,
        snippet: String,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Abstract syntax tree of a series expression. Every node remembers the
/// byte range it was parsed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesExpression {
    Int(BigInt, Range<usize>),
    Var(Range<usize>),
    Neg(Box<SeriesExpression>, Range<usize>),
    Binary(BinOp, Box<SeriesExpression>, Box<SeriesExpression>, Range<usize>),
    Pow(Box<SeriesExpression>, u32, Range<usize>),
}

impl SeriesExpression {
    pub fn span(&self) -> Range<usize> {
        match self {
            Self::Int(_, s) | Self::Var(s) | Self::Neg(_, s) | Self::Binary(.., s) | Self::Pow(_, _, s) => {
                s.clone()
            }
        }
    }

    /// Evaluates into a rational function; divisions are checked as they happen.
    pub fn evaluate(&self, source: &str) -> Result<RationalFunction, ParseError> {
        Ok(match self {
            Self::Int(n, _) => RationalFunction::polynomial(Polynomial::constant(from_bigint(n.clone()))),
            Self::Var(_) => RationalFunction::polynomial(Polynomial::t()),
            Self::Neg(e, _) => e.evaluate(source)?.neg(),
            Self::Pow(e, k, _) => e.evaluate(source)?.pow(*k),
            Self::Binary(op, a, b, span) => {
                let (x, y) = (a.evaluate(source)?, b.evaluate(source)?);
                match op {
                    BinOp::Add => x.add(&y),
                    BinOp::Sub => x.sub(&y),
                    BinOp::Mul => x.mul(&y),
                    BinOp::Div => x.div(&y).map_err(|e| {
                        let divisor = b.span();
                        let message = match e {
                            crate::Error::DivisionByZero => "division by zero".to_string(),
                            _ => "denominator has zero constant term".to_string(),
                        };
                        ParseError::Semantic {
                            snippet: source[divisor.clone()].to_string(),
                            span: if matches!(e, crate::Error::DivisionByZero) { divisor } else { span.clone() },
                            message,
                        }
                    })?,
                }
            }
        })
    }
}

impl fmt::Display for SeriesExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Int(n, _) => write!(f, "{n}"),
            Self::Var(_) => write!(f, "t"),
            Self::Neg(e, _) => write!(f, "-({e})"),
            Self::Pow(e, k, _) => write!(f, "({e})^{k}"),
            Self::Binary(op, a, b, _) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                write!(f, "({a} {sym} {b})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::T => "`t`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Range<usize>)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b't' => Some(Tok::T),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, i..i + 1));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start..i));
        } else {
            let found = text[i..].chars().next().map(|ch| format!("`{ch}`")).unwrap_or_default();
            return Err(ParseError::Syntax {
                offset: i,
                expected: vec!["integer", "`t`", "operator", "parenthesis"],
                found,
            });
        }
    }
    out.push((Tok::End, text.len()..text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Range<usize>)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Range<usize> {
        self.toks[self.pos].1.clone()
    }

    fn bump(&mut self) -> (Tok, Range<usize>) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax {
            offset: self.span().start,
            expected,
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<SeriesExpression, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span().start..rhs.span().end;
            lhs = SeriesExpression::Binary(op, Box::new(lhs), Box::new(rhs), span);
        }
    }

    fn term(&mut self) -> Result<SeriesExpression, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span().start..rhs.span().end;
            lhs = SeriesExpression::Binary(op, Box::new(lhs), Box::new(rhs), span);
        }
    }

    fn unary(&mut self) -> Result<SeriesExpression, ParseError> {
        if *self.peek() == Tok::Minus {
            let (_, s) = self.bump();
            let inner = self.unary()?;
            let span = s.start..inner.span().end;
            return Ok(SeriesExpression::Neg(Box::new(inner), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<SeriesExpression, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| self.error(vec!["exponent below 2^32"]))?;
                let (_, s) = self.bump();
                let span = base.span().start..s.end;
                Ok(SeriesExpression::Pow(Box::new(base), e, span))
            }
            _ => Err(self.error(vec!["nonnegative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<SeriesExpression, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let (_, s) = self.bump();
                Ok(SeriesExpression::Int(n, s))
            }
            Tok::T => {
                let (_, s) = self.bump();
                Ok(SeriesExpression::Var(s))
            }
            Tok::LParen => {
                let (_, open) = self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(vec!["`)`", "operator"]));
                }
                let (_, close) = self.bump();
                Ok(match inner {
                    // keep the parenthesized range so error snippets show it
                    SeriesExpression::Binary(op, a, b, _) => SeriesExpression::Binary(op, a, b, open.start..close.end),
                    SeriesExpression::Neg(a, _) => SeriesExpression::Neg(a, open.start..close.end),
                    SeriesExpression::Pow(a, k, _) => SeriesExpression::Pow(a, k, open.start..close.end),
                    SeriesExpression::Int(n, _) => SeriesExpression::Int(n, open.start..close.end),
                    SeriesExpression::Var(_) => SeriesExpression::Var(open.start..close.end),
                })
            }
            _ => Err(self.error(vec!["integer", "`t`", "`(`", "`-`"])),
        }
    }
}

/// Parses `text` into its syntax tree without evaluating it.
pub fn parse_expression(text: &str) -> Result<SeriesExpression, ParseError> {
    if !text.is_ascii() {
        let offset = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return Err(ParseError::Syntax {
            offset,
            expected: vec!["ASCII input"],
            found: "non-ASCII character".into(),
        });
    }
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(vec!["operator", "end of input"]));
    }
    Ok(e)
}

/// Parses and evaluates a series expression such as `(1-t^4)/((1-t)*(1-t^2)*(1-t^3))`.
pub fn parse_series(text: &str) -> Result<RationalFunction, ParseError> {
    parse_expression(text)?.evaluate(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn one_minus_t_pow(k: usize) -> Polynomial {
        let mut c = vec![int(0); k + 1];
        c[0] = int(1);
        c[k] = int(-1);
        Polynomial::from_coeffs(c)
    }

    #[test]
    fn jst_expression() {
        let f = parse_series("t^2/(1-t^2)^2").unwrap();
        assert_eq!(f.numerator(), &Polynomial::monomial(int(1), 2));
        let den = &one_minus_t_pow(2) * &one_minus_t_pow(2);
        assert_eq!(f.denominator(), &den);
    }

    #[test]
    fn s4_expression() {
        let f = parse_series("(1-t^4)/((1-t)*(1-t^2)*(1-t^3))").unwrap();
        let den = &(&one_minus_t_pow(1) * &one_minus_t_pow(2)) * &one_minus_t_pow(3);
        let expected = RationalFunction::new(one_minus_t_pow(4), den).unwrap();
        assert_eq!(f, expected);
        let c = f.series_coefficients(7);
        assert_eq!(c, [1, 1, 2, 3, 3, 4, 5, 5].map(int).to_vec());
    }

    #[test]
    fn unclosed_paren_reports_offset() {
        match parse_series("1/(t") {
            Err(ParseError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"`)`"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_rules() {
        // -t^2 = -(t^2)
        let f = parse_series("-t^2").unwrap();
        assert_eq!(f.numerator(), &Polynomial::monomial(int(-1), 2));
        // left associativity: 1-t-t = 1-2t ; 8/2/2 = 2
        assert_eq!(parse_series("1-t-t").unwrap().numerator(), &Polynomial::from_i64(&[1, -2]));
        assert_eq!(parse_series("8/2/2").unwrap().numerator(), &Polynomial::from_i64(&[2]));
        assert_eq!(parse_series("1/2*t").unwrap().numerator(), &Polynomial::from_coeffs(vec![int(0), rat(1, 2)]));
        assert_eq!(parse_series(" 2 * ( t + 1 ) ").unwrap().numerator(), &Polynomial::from_i64(&[2, 2]));
    }

    #[test]
    fn rejects_implicit_multiplication_and_bad_exponents() {
        assert!(matches!(parse_series("2t"), Err(ParseError::Syntax { offset: 1, .. })));
        assert!(matches!(parse_series("t^t"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_series("t^-1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_series("t^2^3"), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse_series(""), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_series("x"), Err(ParseError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn semantic_errors_name_the_subexpression() {
        match parse_series("1 + 1/(t-t^2)") {
            Err(ParseError::Semantic { snippet, message, .. }) => {
                assert_eq!(snippet, "(t-t^2)");
                assert!(message.contains("zero constant term"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_series("1/(t-t)"), Err(ParseError::Semantic { .. })));
        // t cancels: t/(t - t^2) = 1/(1 - t)
        assert!(parse_series("t/(t-t^2)").is_ok());
    }
}
