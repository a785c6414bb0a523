//! Recursive-descent parser for the polynomial text format.
//!
//! The grammar is shared by polynomials and by elements of Q(u); the only
//! difference is what division is allowed to mean.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Poly, RatFuncU, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at byte {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token at byte {0}")]
    UnexpectedToken(usize),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("division by a non-constant or zero")]
    BadDivision,
    #[error("exponent too large")]
    BadExponent,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(s[st..i].parse().expect("digits")), st));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[st..i].to_string()), st));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar { ch: c, pos: i });
        }
    }
    Ok(out)
}

enum Ast {
    Num(BigInt),
    Var(String),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.len)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = if self.eat('-') {
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Ast::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Bin('*', Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Ast::Bin('/', Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some((Tok::Num(n), _)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| ParseError::BadExponent)?;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                Some((_, p)) => Err(ParseError::UnexpectedToken(p)),
                None => Err(ParseError::UnexpectedEnd),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let at = self.here();
        match self.toks.get(self.pos).cloned() {
            None => Err(ParseError::UnexpectedEnd),
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some((Tok::Ident(v), _)) => {
                self.pos += 1;
                Ok(Ast::Var(v))
            }
            Some((Tok::Op('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(if self.pos >= self.toks.len() {
                        ParseError::UnexpectedEnd
                    } else {
                        ParseError::UnexpectedToken(self.here())
                    });
                }
                Ok(e)
            }
            Some((Tok::Op('-'), _)) => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.factor()?)))
            }
            Some(_) => Err(ParseError::UnexpectedToken(at)),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, len: s.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::UnexpectedToken(p.here()));
    }
    Ok(e)
}

/// Sorted, deduplicated identifiers appearing in `s`.
pub(crate) fn identifiers(s: &str) -> Result<Vec<String>, ParseError> {
    let mut v: Vec<String> = lex(s)?
        .into_iter()
        .filter_map(|(t, _)| if let Tok::Ident(x) = t { Some(x) } else { None })
        .collect();
    v.sort();
    v.dedup();
    Ok(v)
}

fn eval_poly(a: &Ast, vars: &[String]) -> Result<Poly, ParseError> {
    Ok(match a {
        Ast::Num(n) => Poly::constant(vars, Q::from_integer(n.clone())),
        Ast::Var(v) => {
            let i = vars
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| ParseError::UnknownVariable(v.clone()))?;
            Poly::var(vars, i)
        }
        Ast::Neg(x) => -eval_poly(x, vars)?,
        Ast::Pow(x, e) => eval_poly(x, vars)?.pow(*e),
        Ast::Bin(op, l, r) => {
            let l = eval_poly(l, vars)?;
            let r = eval_poly(r, vars)?;
            match op {
                '+' => &l + &r,
                '-' => &l - &r,
                '*' => &l * &r,
                _ => {
                    let c = r.constant_term();
                    if r.len() > 1 || (r.len() == 1 && r.total_degree() != Some(0)) || c.is_zero() {
                        return Err(ParseError::BadDivision);
                    }
                    l.scale(&(Q::one() / c))
                }
            }
        }
    })
}

fn eval_ratfunc(a: &Ast) -> Result<RatFuncU, ParseError> {
    Ok(match a {
        Ast::Num(n) => RatFuncU::from_q(Q::from_integer(n.clone())),
        Ast::Var(v) if v == "u" => RatFuncU::u(),
        Ast::Var(v) => return Err(ParseError::UnknownVariable(v.clone())),
        Ast::Neg(x) => -eval_ratfunc(x)?,
        Ast::Pow(x, e) => eval_ratfunc(x)?.pow(*e as i32),
        Ast::Bin(op, l, r) => {
            let l = eval_ratfunc(l)?;
            let r = eval_ratfunc(r)?;
            match op {
                '+' => &l + &r,
                '-' => &l - &r,
                '*' => &l * &r,
                _ => l.checked_div(&r).ok_or(ParseError::BadDivision)?,
            }
        }
    })
}

pub(crate) fn parse_poly(s: &str, vars: &[String]) -> Result<Poly, ParseError> {
    eval_poly(&parse_ast(s)?, vars)
}

pub(crate) fn parse_ratfunc(s: &str) -> Result<RatFuncU, ParseError> {
    eval_ratfunc(&parse_ast(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn round_trip_documented_example() {
        let s = "x^3 + (1/2)*x*y";
        let p = parse_poly(s, &v(&["x", "y"])).unwrap();
        assert_eq!(p.to_string(), s);
    }

    #[test]
    fn nested_expressions_expand() {
        let p = parse_poly("(x+y)^2 - 2*x*y", &v(&["x", "y"])).unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2");
        let p = parse_poly("-(x - 1)/2", &v(&["x"])).unwrap();
        assert_eq!(p.to_string(), "-(1/2)*x + (1/2)");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("x + z", &v(&["x"])), Err(ParseError::UnknownVariable("z".into())));
        assert_eq!(parse_poly("x / x", &v(&["x"])), Err(ParseError::BadDivision));
        assert_eq!(parse_poly("x +", &v(&["x"])), Err(ParseError::UnexpectedEnd));
        assert!(matches!(parse_poly("x $", &v(&["x"])), Err(ParseError::UnexpectedChar { .. })));
        assert!(parse_poly("(x", &v(&["x"])).is_err());
    }

    #[test]
    fn inferred_variables_are_sorted() {
        assert_eq!(identifiers("y^2 + x*y + x").unwrap(), v(&["x", "y"]));
    }

    #[test]
    fn ratfunc_text() {
        let r = parse_ratfunc("1/(u*(1-u))").unwrap();
        assert_eq!(r.to_string(), "-1/(u^2 - u)");
        assert_eq!(parse_ratfunc(&r.to_string()).unwrap(), r);
    }
}
