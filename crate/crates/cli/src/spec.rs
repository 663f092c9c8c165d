//! Ring-specification files.
//!
//! ```text
//! # the node over F_2
//! char = 2
//! vars = x, y, z
//! ideal = x*y
//! equidimensional = true; connected = true
//! primes = x | x,z | x,y | x,y,z
//! chain = x | x,y | x,y,z
//! ```
//!
//! Statements are `key = value`, separated by newlines or `;`. Everything
//! after `#` on a line is ignored. Keys other than `chain` may appear once.

use std::collections::HashSet;

use fsplit_core::{Error, FieldDescriptor};

use crate::expr::{parse_expr, Expr};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn start() -> Self {
        Pos { line: 1, column: 1 }
    }

    pub fn shift(self, chars: usize) -> Self {
        Pos {
            line: self.line,
            column: self.column + chars,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub transcendentals: Vec<String>,
    pub ideal: Vec<Expr>,
    pub equidimensional: bool,
    pub connected: bool,
    pub primes: Vec<Vec<String>>,
    pub chains: Vec<Vec<Vec<String>>>,
    pub sop: Option<Vec<Expr>>,
    pub socle: Option<Expr>,
}

const KEYS: [&str; 10] = [
    "char",
    "vars",
    "transcendentals",
    "ideal",
    "equidimensional",
    "connected",
    "primes",
    "chain",
    "sop",
    "socle",
];

/// A piece of text and where it starts.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    pos: Pos,
}

impl<'a> Span<'a> {
    fn trim(self) -> Span<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        let skipped = self.text[..lead].chars().count();
        Span {
            text: self.text.trim(),
            pos: self.pos.shift(skipped),
        }
    }

    fn split(self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut chars_before = 0;
        for piece in self.text.split(sep) {
            out.push(Span {
                text: piece,
                pos: self.pos.shift(chars_before),
            });
            chars_before += piece.chars().count() + 1;
        }
        out
    }
}

fn statements(text: &str) -> Vec<Span<'_>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let whole = Span {
            text: body,
            pos: Pos { line: k + 1, column: 1 },
        };
        out.extend(whole.split(';').into_iter().map(Span::trim).filter(|s| !s.text.is_empty()));
    }
    out
}

fn name(s: Span) -> Result<String, ParseError> {
    let s = s.trim();
    let mut chars = s.text.chars();
    let ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_');
    if ok {
        Ok(s.text.to_string())
    } else {
        Err(ParseError::new(s.pos, format!("invalid name '{}'", s.text)))
    }
}

fn names(s: Span) -> Result<Vec<String>, ParseError> {
    if s.trim().text.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').into_iter().map(name).collect()
}

fn exprs(s: Span) -> Result<Vec<Expr>, ParseError> {
    if s.trim().text.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .into_iter()
        .map(|piece| {
            let piece = piece.trim();
            parse_expr(piece.text, piece.pos)
        })
        .collect()
}

fn prime_list(s: Span) -> Result<Vec<Vec<String>>, ParseError> {
    s.split('|')
        .into_iter()
        .map(|p| {
            let list = names(p)?;
            if list.is_empty() {
                Err(ParseError::new(p.trim().pos, "empty prime"))
            } else {
                Ok(list)
            }
        })
        .collect()
}

fn boolean(s: Span) -> Result<bool, ParseError> {
    match s.text.to_ascii_lowercase().as_str() {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        other => Err(ParseError::new(s.pos, format!("expected true or false, got '{other}'"))),
    }
}

/// Comma-separated expressions, as given on the command line.
pub fn parse_expr_list(text: &str) -> Result<Vec<Expr>, ParseError> {
    exprs(Span { text, pos: Pos::start() })
}

/// `x | x,z | x,y,z`.
pub fn parse_prime_list(text: &str) -> Result<Vec<Vec<String>>, ParseError> {
    prime_list(Span { text, pos: Pos::start() })
}

/// Parses a ring-specification file.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec, SpecError> {
    let mut seen: HashSet<&str> = HashSet::new();
    let mut characteristic = None;
    let mut vars = None;
    let mut spec = RingSpec {
        characteristic: 0,
        vars: Vec::new(),
        transcendentals: Vec::new(),
        ideal: Vec::new(),
        equidimensional: false,
        connected: false,
        primes: Vec::new(),
        chains: Vec::new(),
        sop: None,
        socle: None,
    };
    let mut ideal_seen = false;

    for stmt in statements(text) {
        let Some(eq) = stmt.text.find('=') else {
            return Err(ParseError::new(stmt.pos, "expected 'key = value'").into());
        };
        let key = Span {
            text: &stmt.text[..eq],
            pos: stmt.pos,
        }
        .trim();
        let value = Span {
            text: &stmt.text[eq + 1..],
            pos: stmt.pos.shift(stmt.text[..=eq].chars().count()),
        }
        .trim();
        let Some(&k) = KEYS.iter().find(|k| **k == key.text) else {
            return Err(ParseError::new(key.pos, format!("unknown key '{}'", key.text)).into());
        };
        if k != "chain" && !seen.insert(k) {
            return Err(ParseError::new(key.pos, format!("duplicate key '{k}'")).into());
        }
        match k {
            "char" => {
                let p = value
                    .text
                    .parse::<u64>()
                    .map_err(|_| ParseError::new(value.pos, "characteristic must be a positive integer"))?;
                characteristic = Some(p);
            }
            "vars" => vars = Some(names(value)?),
            "transcendentals" => spec.transcendentals = names(value)?,
            "ideal" => {
                spec.ideal = exprs(value)?;
                ideal_seen = true;
            }
            "equidimensional" => spec.equidimensional = boolean(value)?,
            "connected" => spec.connected = boolean(value)?,
            "primes" => spec.primes = prime_list(value)?,
            "chain" => spec.chains.push(prime_list(value)?),
            "sop" => spec.sop = Some(exprs(value)?),
            "socle" => spec.socle = Some(parse_expr(value.text, value.pos)?),
            _ => unreachable!(),
        }
    }

    let end = Pos {
        line: text.lines().count().max(1),
        column: 1,
    };
    spec.characteristic = characteristic.ok_or_else(|| ParseError::new(end, "missing key 'char'"))?;
    spec.vars = vars.ok_or_else(|| ParseError::new(end, "missing key 'vars'"))?;
    if !ideal_seen {
        return Err(ParseError::new(end, "missing key 'ideal'").into());
    }
    if spec.vars.is_empty() {
        return Err(ParseError::new(end, "at least one variable is required").into());
    }
    FieldDescriptor::new(spec.characteristic, spec.transcendentals.clone())?;
    for (i, v) in spec.vars.iter().enumerate() {
        if spec.vars[..i].contains(v) || spec.transcendentals.contains(v) {
            return Err(Error::DuplicateName(v.clone()).into());
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_files() {
        let node = parse_ring_spec("char=2; vars=x,y; ideal=x*y").unwrap();
        assert_eq!(node.characteristic, 2);
        assert_eq!(node.vars, ["x", "y"]);
        assert_eq!(node.ideal.len(), 1);
        let cusp = parse_ring_spec("char=5; vars=x,y; ideal=y^2-x^3").unwrap();
        assert_eq!(cusp.ideal.len(), 1);
        let zero = parse_ring_spec("char = 3\nvars = x\nideal =\n").unwrap();
        assert!(zero.ideal.is_empty());
    }

    #[test]
    fn full_file() {
        let text = "# node\nchar = 2\nvars = x, y, z   # three\ntranscendentals = t\nideal = x*y, t*x^2*y\n\
                    equidimensional = true; connected = yes\nprimes = x | x,z\nchain = x | x,y\nchain = y | x,y\n\
                    sop = x+y, z\nsocle = 1\n";
        let s = parse_ring_spec(text).unwrap();
        assert_eq!(s.transcendentals, ["t"]);
        assert_eq!(s.ideal.len(), 2);
        assert!(s.equidimensional && s.connected);
        assert_eq!(s.primes, vec![vec!["x".to_string()], vec!["x".into(), "z".into()]]);
        assert_eq!(s.chains.len(), 2);
        assert_eq!(s.sop.as_ref().map(Vec::len), Some(2));
        assert!(s.socle.is_some());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_ring_spec("char=4; vars=x; ideal=x"),
            Err(SpecError::Core(Error::NonPrimeCharacteristic(4)))
        ));
        assert!(matches!(
            parse_ring_spec("char=2; vars=x,x; ideal=x"),
            Err(SpecError::Core(Error::DuplicateName(_)))
        ));
        assert!(matches!(
            parse_ring_spec("char=2; vars=x; transcendentals=x; ideal=x"),
            Err(SpecError::Core(Error::DuplicateName(_)))
        ));
        let unknown = parse_ring_spec("char=2\nvars=x\nfoo = 1\nideal=x").unwrap_err();
        match unknown {
            SpecError::Parse(e) => assert_eq!((e.line, e.column), (3, 1)),
            other => panic!("{other:?}"),
        }
        let dup = parse_ring_spec("char=2; char=3; vars=x; ideal=x").unwrap_err();
        match dup {
            SpecError::Parse(e) => assert_eq!((e.line, e.column), (1, 9)),
            other => panic!("{other:?}"),
        }
        let bad_expr = parse_ring_spec("char=2\nvars=x,y\nideal = x*y, x+*y").unwrap_err();
        match bad_expr {
            SpecError::Parse(e) => assert_eq!((e.line, e.column), (3, 16)),
            other => panic!("{other:?}"),
        }
        assert!(parse_ring_spec("char=2; vars=x").is_err());
        assert!(parse_ring_spec("char=2; ideal=x").is_err());
        assert!(parse_ring_spec("char=2; vars=x; ideal=x; primes= x | ").is_err());
        assert!(parse_ring_spec("char=2; vars=x; ideal=x; equidimensional=maybe").is_err());
        assert!(parse_ring_spec("char=2; vars=1x; ideal=x").is_err());
        assert!(parse_ring_spec("char 2").is_err());
    }
}
