//! Polynomial expressions: `+ - * ^`, integer literals, names, parentheses.

use fsplit_core::{Field, Polynomial, Ring};

use crate::spec::{ParseError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Decimal literal, kept as text until the characteristic is known.
    Int(String),
    Name(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Name(String),
    Sym(char),
}

fn lex(src: &str, origin: Pos) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = origin.shift(k);
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push((Tok::Int(chars[start..k].iter().collect()), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Name(chars[start..k].iter().collect()), pos));
        } else if "+-*^()".contains(c) {
            out.push((Tok::Sym(c), pos));
            k += 1;
        } else {
            return Err(ParseError::new(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
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
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
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
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.toks.get(self.at) {
            Some((Tok::Int(digits), _)) => {
                let k = digits
                    .parse::<u64>()
                    .map_err(|_| ParseError::new(pos, "exponent too large"))?;
                self.at += 1;
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => Err(ParseError::new(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((Tok::Int(d), _)) => {
                self.at += 1;
                Ok(Expr::Int(d))
            }
            Some((Tok::Name(n), p)) => {
                self.at += 1;
                Ok(Expr::Name(n, p))
            }
            Some((Tok::Sym('('), _)) => {
                self.at += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(ParseError::new(self.pos(), "expected ')'"));
                }
                Ok(inner)
            }
            Some((Tok::Sym(c), _)) => Err(ParseError::new(pos, format!("unexpected '{c}'"))),
            None => Err(ParseError::new(pos, "unexpected end of expression")),
        }
    }
}

/// Parses one expression; `origin` is where `src` starts in the file.
pub fn parse_expr(src: &str, origin: Pos) -> Result<Expr, ParseError> {
    let toks = lex(src, origin)?;
    let end = origin.shift(src.chars().count());
    let mut p = Parser { toks, at: 0, end };
    if p.peek().is_none() {
        return Err(ParseError::new(origin, "empty expression"));
    }
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(ParseError::new(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

fn reduce_literal(digits: &str, p: u64) -> i64 {
    digits
        .bytes()
        .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p) as i64
}

/// Evaluates in `ring`; names resolve to ring variables first, then to
/// transcendentals of the coefficient field.
pub fn eval<F: Field>(ring: &Ring<F>, e: &Expr) -> Result<Polynomial<F>, EvalError> {
    Ok(match e {
        Expr::Int(d) => ring.constant(ring.field().from_int(reduce_literal(d, ring.field().characteristic()))),
        Expr::Name(n, pos) => {
            if let Some(i) = ring.var_index(n) {
                ring.var(i)
            } else if let Some(k) = ring.field().transcendentals().iter().position(|t| t == n) {
                ring.constant(ring.field().transcendental(k).expect("index in range"))
            } else {
                return Err(EvalError::Parse(ParseError::new(*pos, format!("unknown name '{n}'"))));
            }
        }
        Expr::Neg(a) => ring.neg(&eval(ring, a)?),
        Expr::Add(a, b) => ring.add(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Sub(a, b) => ring.sub(&eval(ring, a)?, &eval(ring, b)?),
        Expr::Mul(a, b) => ring.mul(&eval(ring, a)?, &eval(ring, b)?)?,
        Expr::Pow(a, k) => ring.pow(&eval(ring, a)?, *k)?,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(ParseError),
    #[error(transparent)]
    Core(#[from] fsplit_core::Error),
}

#[cfg(test)]
mod tests {
    use super::*;
    use fsplit_core::{MonomialOrder, PrimeField};

    fn ring(p: u64) -> Ring<PrimeField> {
        Ring::new(PrimeField::new(p).unwrap(), vec!["x".into(), "y".into()], MonomialOrder::Grevlex).unwrap()
    }

    fn show(p: u64, src: &str) -> String {
        let r = ring(p);
        r.format(&eval(&r, &parse_expr(src, Pos::start()).unwrap()).unwrap())
    }

    #[test]
    fn precedence_and_reduction() {
        assert_eq!(show(5, "y^2-x^3"), "-x^3 + y^2");
        assert_eq!(show(2, "(x+y)^2"), "x^2 + y^2");
        assert_eq!(show(3, "4*x - -x"), "-x");
        assert_eq!(show(7, "100000000000000000000*x"), show(7, "2*x"));
        assert_eq!(show(5, "x*y*0"), "0");
        assert_eq!(show(5, "-(x)^2"), "-x^2");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("x + * y", Pos { line: 3, column: 9 }).unwrap_err();
        assert_eq!((e.line, e.column), (3, 13));
        let e = parse_expr("x^y", Pos::start()).unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_expr("(x", Pos::start()).is_err());
        assert!(parse_expr("", Pos::start()).is_err());
        assert!(parse_expr("x y", Pos::start()).is_err());
        assert!(parse_expr("x $ y", Pos::start()).is_err());
        let r = ring(5);
        let bad = parse_expr("x + w", Pos::start()).unwrap();
        match eval(&r, &bad) {
            Err(EvalError::Parse(p)) => assert_eq!(p.column, 5),
            other => panic!("{other:?}"),
        }
    }
}
