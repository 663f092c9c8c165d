use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{is_prime, Field};

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

/// Polynomial over `F_p` in the transcendentals, terms keyed by exponent
/// vector (lexicographic). Used for numerators and denominators of
/// [`RationalFunction`]; the prime is supplied by the caller.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl TPoly {
    pub fn zero(nvars: usize) -> Self {
        TPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: u64, nvars: usize) -> Self {
        let mut t = Self::zero(nvars);
        if c != 0 {
            t.terms.insert(vec![0; nvars], c);
        }
        t
    }

    pub fn monomial(c: u64, exps: Vec<u32>) -> Self {
        let mut t = Self::zero(exps.len());
        if c != 0 {
            t.terms.insert(exps, c);
        }
        t
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(1, e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().all(|&c| c == 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &u64)> {
        self.terms.iter()
    }

    /// Lex-leading term.
    pub fn lead(&self) -> Option<(&Vec<u32>, u64)> {
        self.terms.last_key_value().map(|(e, c)| (e, *c))
    }

    fn insert_add(&mut self, e: Vec<u32>, c: u64, p: u64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), *c, p);
        }
        out
    }

    pub fn neg(&self, p: u64) -> Self {
        TPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), p - c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self, p: u64) -> Self {
        self.add(&other.neg(p), p)
    }

    pub fn scale(&self, c: u64, p: u64) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero(self.nvars);
        }
        TPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c % p)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_add(e, ca * cb % p, p);
            }
        }
        out
    }

    /// Raise every exponent to `q` times itself; this is `f^q` in characteristic `p`.
    pub fn frobenius(&self, q: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let e: Option<Vec<u32>> = e.iter().map(|x| x.checked_mul(q)).collect();
            terms.insert(e?, *c);
        }
        Some(TPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Append `extra` variables with exponent zero.
    pub fn extend_vars(&self, extra: usize) -> Self {
        TPoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(self.nvars + extra, 0);
                    (e, *c)
                })
                .collect(),
        }
    }

    /// Make the lex-leading coefficient 1.
    pub fn monic(&self, p: u64) -> Self {
        match self.lead() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(inv_mod(c, p), p),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self, p: u64) -> Option<Self> {
        let (dl, dc) = d.lead()?;
        let dl = dl.clone();
        let dinv = inv_mod(dc, p);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rl, rc)) = rem.lead() {
            if rl.iter().zip(&dl).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = rl.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let t = Self::monomial(rc * dinv % p, e);
            rem = rem.sub(&t.mul(d, p), p);
            quot = quot.add(&t, p);
        }
        Some(quot)
    }

    fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    fn coeffs_in(&self, v: usize) -> BTreeMap<u32, TPoly> {
        let mut out: BTreeMap<u32, TPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = std::mem::replace(&mut e2[v], 0);
            out.entry(d)
                .or_insert_with(|| TPoly::zero(self.nvars))
                .terms
                .insert(e2, *c);
        }
        out
    }

    fn shift(&self, v: usize, k: u32) -> Self {
        TPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[v] += k;
                    (e, *c)
                })
                .collect(),
        }
    }

    fn min_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|e| e.iter().position(|&x| x > 0))
            .min()
    }

    /// Monic greatest common divisor (recursive primitive remainder sequence).
    pub fn gcd(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() {
            return other.monic(p);
        }
        if other.is_zero() {
            return self.monic(p);
        }
        let v = match (self.min_var(), other.min_var()) {
            (None, None) => return Self::constant(1, self.nvars),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let ca = self.content_in(v, p);
        let cb = other.content_in(v, p);
        let c = ca.gcd(&cb, p);
        let pa = self.div_exact(&ca, p).expect("content divides");
        let pb = other.div_exact(&cb, p).expect("content divides");
        c.mul(&primitive_prs(pa, pb, v, p), p).monic(p)
    }

    fn content_in(&self, v: usize, p: u64) -> Self {
        let mut g = Self::zero(self.nvars);
        for c in self.coeffs_in(v).values() {
            g = g.gcd(c, p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, v: usize, p: u64) -> Self {
        let c = self.content_in(v, p);
        self.div_exact(&c, p).expect("content divides")
    }

    fn prem(&self, b: &Self, v: usize, p: u64) -> Self {
        let db = b.degree_in(v).unwrap_or(0);
        let lcb = b.coeffs_in(v).remove(&db).unwrap_or_default();
        let mut r = self.clone();
        while let Some(dr) = r.degree_in(v) {
            if dr < db {
                break;
            }
            let lcr = r.coeffs_in(v).remove(&dr).unwrap_or_default();
            r = r.mul(&lcb, p).sub(&b.mul(&lcr, p).shift(v, dr - db), p);
        }
        r
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], x)),
                }
            }
            let mono = factors.join("*");
            parts.push(match (*c, mono.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => mono,
                (c, false) => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }
}

fn primitive_prs(mut a: TPoly, mut b: TPoly, v: usize, p: u64) -> TPoly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.prem(&b, v, p);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            r.primitive_part_in(v, p)
        };
    }
    a.primitive_part_in(v, p)
}

/// Canonical fraction `num / den`: coprime, `den` monic in lex order,
/// zero stored as `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: TPoly,
    den: TPoly,
}

impl RationalFunction {
    pub fn from_poly(num: TPoly) -> Self {
        let n = num.nvars();
        RationalFunction {
            num,
            den: TPoly::constant(1, n),
        }
    }

    /// Builds and canonicalizes `num / den`.
    pub fn new(num: TPoly, den: TPoly, p: u64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den, p))
    }

    fn normalized(num: TPoly, den: TPoly, p: u64) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: TPoly::constant(1, n),
            };
        }
        if den.is_constant() {
            let c = inv_mod(den.lead().unwrap().1, p);
            return RationalFunction {
                num: num.scale(c, p),
                den: TPoly::constant(1, n),
            };
        }
        let g = num.gcd(&den, p);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g, p).expect("gcd divides numerator"),
                den.div_exact(&g, p).expect("gcd divides denominator"),
            )
        };
        let c = inv_mod(den.lead().unwrap().1, p);
        RationalFunction {
            num: num.scale(c, p),
            den: den.scale(c, p),
        }
    }

    pub fn numerator(&self) -> &TPoly {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn extend_vars(&self, extra: usize) -> Self {
        RationalFunction {
            num: self.num.extend_vars(extra),
            den: self.den.extend_vars(extra),
        }
    }
}

/// `F_p(t_1, ..., t_m)`; with `m = 0` this is `F_p` in rational-function clothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionField {
    p: u64,
    names: Vec<String>,
}

impl RationalFunctionField {
    pub fn new(p: u64, names: Vec<String>) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(RationalFunctionField { p, names })
    }

    fn m(&self) -> usize {
        self.names.len()
    }

    pub fn from_poly(&self, t: TPoly) -> RationalFunction {
        RationalFunction::from_poly(t)
    }
}

impl Field for RationalFunctionField {
    type Elem = RationalFunction;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn transcendentals(&self) -> &[String] {
        &self.names
    }

    fn zero(&self) -> RationalFunction {
        RationalFunction::from_poly(TPoly::zero(self.m()))
    }

    fn one(&self) -> RationalFunction {
        RationalFunction::from_poly(TPoly::constant(1, self.m()))
    }

    fn from_int(&self, n: i64) -> RationalFunction {
        let c = n.rem_euclid(self.p as i64) as u64;
        RationalFunction::from_poly(TPoly::constant(c, self.m()))
    }

    fn transcendental(&self, i: usize) -> Option<RationalFunction> {
        (i < self.m()).then(|| RationalFunction::from_poly(TPoly::var(i, self.m())))
    }

    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.num.is_zero()
    }

    fn is_one(&self, a: &RationalFunction) -> bool {
        a.num.is_one() && a.den.is_one()
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        let p = self.p;
        if a.den == b.den {
            return RationalFunction::normalized(a.num.add(&b.num, p), a.den.clone(), p);
        }
        let num = a.num.mul(&b.den, p).add(&b.num.mul(&a.den, p), p);
        RationalFunction::normalized(num, a.den.mul(&b.den, p), p)
    }

    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: a.num.neg(self.p),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        let p = self.p;
        if a.den.is_one() && b.den.is_one() {
            return RationalFunction::from_poly(a.num.mul(&b.num, p));
        }
        RationalFunction::normalized(a.num.mul(&b.num, p), a.den.mul(&b.den, p), p)
    }

    fn inv(&self, a: &RationalFunction) -> Result<RationalFunction> {
        if a.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // already coprime; only the monic normalization moves
        let c = inv_mod(a.num.lead().unwrap().1, self.p);
        Ok(RationalFunction {
            num: a.den.scale(c, self.p),
            den: a.num.scale(c, self.p),
        })
    }

    fn frobenius(&self, a: &RationalFunction, e: u32) -> Result<RationalFunction> {
        let q = (self.p as u32)
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow)?;
        Ok(RationalFunction {
            num: a.num.frobenius(q).ok_or(Error::ExponentOverflow)?,
            den: a.den.frobenius(q).ok_or(Error::ExponentOverflow)?,
        })
    }

    fn to_rational(&self, a: &RationalFunction) -> RationalFunction {
        a.clone()
    }

    fn format_elem(&self, a: &RationalFunction) -> String {
        let n = a.num.format(&self.names);
        if a.den.is_one() {
            n
        } else {
            format!("({})/({})", n, a.den.format(&self.names))
        }
    }
}
