//! Sparse multivariate polynomials over a [`Field`].
//!
//! A [`Polynomial`] is a list of terms sorted strictly decreasing under the
//! order of the [`Ring`] it was built in, with no zero coefficients. The ring
//! is the context for every operation; polynomials do not point back to it.

mod monomial;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;

pub use monomial::{Monomial, MonomialOrder};

/// Reserved name of the auxiliary elimination variable.
pub const AUX_VAR: &str = "__aux";

pub struct Polynomial<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Clone for Polynomial<F> {
    fn clone(&self) -> Self {
        Polynomial {
            terms: self.terms.clone(),
        }
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> std::fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// True when the polynomial has no constant term, i.e. vanishes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.terms.last().map_or(true, |t| !t.0.is_one())
    }

    /// Wraps terms that are already strictly decreasing and nonzero.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, F::Elem)>) -> Self {
        Polynomial { terms }
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }
}

/// A polynomial ring `K[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> Ring<F> {
    /// Builds a ring over `field`; variable names must be distinct and not
    /// collide with the field's transcendentals or the reserved auxiliary name.
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if v == AUX_VAR {
                return Err(Error::ReservedName(v.clone()));
            }
            if vars[..i].contains(v) || field.transcendentals().contains(v) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        Ok(Ring { field, vars, order })
    }

    /// Same field and variables plus an auxiliary variable in front, ordered
    /// so that the auxiliary is eliminated first.
    pub(crate) fn elimination_ring(&self) -> Self {
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push(AUX_VAR.to_string());
        vars.extend(self.vars.iter().cloned());
        Ring {
            field: self.field.clone(),
            vars,
            order: MonomialOrder::Block { first: 1 },
        }
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Ring {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Rejects polynomials whose exponent vectors do not fit this ring.
    pub fn check(&self, f: &Polynomial<F>) -> Result<()> {
        if f.terms.iter().any(|t| t.0.nvars() != self.nvars()) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial<F> {
        self.term(m, self.field.one())
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        self.monomial(Monomial::var(i, self.nvars()))
    }

    /// Canonicalize an arbitrary term list: sort, merge duplicates, drop zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.field.add(&last.1, &c),
                _ => {
                    if let Some(last) = out.last() {
                        if self.field.is_zero(&last.1) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|l| self.field.is_zero(&l.1)) {
            out.pop();
        }
        Polynomial { terms: out }
    }

    /// Re-sort a polynomial built under another order of the same variables.
    pub fn reorder(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    pub fn add(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.merge(&f.terms, &g.terms, None)
    }

    pub fn sub(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.merge(&f.terms, &g.terms, Some(&self.field.neg(&self.field.one())))
    }

    pub fn neg(&self, f: &Polynomial<F>) -> Polynomial<F> {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial<F>, c: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), self.field.mul(d, c)))
                .collect(),
        }
    }

    /// `f + factor * g`, factor defaulting to 1.
    fn merge(
        &self,
        f: &[(Monomial, F::Elem)],
        g: &[(Monomial, F::Elem)],
        factor: Option<&F::Elem>,
    ) -> Polynomial<F> {
        let fld = &self.field;
        let scaled = |c: &F::Elem| match factor {
            Some(k) => fld.mul(c, k),
            None => c.clone(),
        };
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < f.len() && j < g.len() {
            match self.cmp(&f[i].0, &g[j].0) {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((g[j].0.clone(), scaled(&g[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = fld.add(&f[i].1, &scaled(&g[j].1));
                    if !fld.is_zero(&c) {
                        out.push((f[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f[i..]);
        out.extend(g[j..].iter().map(|(m, c)| (m.clone(), scaled(c))));
        Polynomial { terms: out }
    }

    /// `f - c * m * g`, the reduction step of the division algorithm.
    pub(crate) fn sub_mul_term(
        &self,
        f: &[(Monomial, F::Elem)],
        c: &F::Elem,
        m: &Monomial,
        g: &[(Monomial, F::Elem)],
    ) -> Result<Polynomial<F>> {
        let neg_c = self.field.neg(c);
        let shifted = self.mul_term_slice(g, m, &neg_c)?;
        Ok(self.merge(f, &shifted, None))
    }

    fn mul_term_slice(
        &self,
        g: &[(Monomial, F::Elem)],
        m: &Monomial,
        c: &F::Elem,
    ) -> Result<Vec<(Monomial, F::Elem)>> {
        g.iter()
            .map(|(gm, gc)| Ok((gm.mul(m)?, self.field.mul(gc, c))))
            .collect()
    }

    pub fn mul_term(&self, f: &Polynomial<F>, m: &Monomial, c: &F::Elem) -> Result<Polynomial<F>> {
        if self.field.is_zero(c) {
            return Ok(Polynomial::zero());
        }
        // multiplication by a monomial preserves the order of terms
        Ok(Polynomial {
            terms: self.mul_term_slice(&f.terms, m, c)?,
        })
    }

    pub fn mul(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
        if f.is_zero() || g.is_zero() {
            return Ok(Polynomial::zero());
        }
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut products = Vec::with_capacity(small.len() * big.len());
        for (m, c) in &small.terms {
            products.extend(self.mul_term_slice(&big.terms, m, c)?);
        }
        Ok(self.from_terms(products))
    }

    pub fn pow(&self, f: &Polynomial<F>, mut k: u64) -> Result<Polynomial<F>> {
        let mut acc = self.one();
        let mut base = f.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `f^q` for `q = p^e`, computed termwise: Frobenius on the coefficients
    /// and exponents multiplied by `q`.
    pub fn frobenius(&self, f: &Polynomial<F>, e: u32) -> Result<Polynomial<F>> {
        let q = self.q(e)?;
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in &f.terms {
            terms.push((m.pow(q)?, self.field.frobenius(c, e)?));
        }
        // monotone exponent scaling keeps the order for every supported order
        Ok(Polynomial { terms })
    }

    /// `p^e`, bounded by the exponent width.
    pub fn q(&self, e: u32) -> Result<u32> {
        (self.field.characteristic() as u32)
            .checked_pow(e)
            .filter(|&q| q <= 1 << 15)
            .ok_or(Error::ExponentOverflow)
    }

    pub fn make_monic(&self, f: &Polynomial<F>) -> Polynomial<F> {
        match f.lead_coeff() {
            None => f.clone(),
            Some(c) if self.field.is_one(c) => f.clone(),
            Some(c) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(f, &inv)
            }
        }
    }

    /// Exact quotient `f / g`, or `None` if `g` does not divide `f`.
    pub fn div_exact(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Option<Polynomial<F>>> {
        let Some(gl) = g.lead_monomial() else {
            return Err(Error::DivisionByZero);
        };
        let ginv = self.field.inv(g.lead_coeff().unwrap())?;
        let mut rem = f.clone();
        let mut quot = Vec::new();
        while let Some((rl, rc)) = rem.terms.first() {
            let Some(m) = rl.div(gl) else {
                return Ok(None);
            };
            let c = self.field.mul(rc, &ginv);
            rem = self.sub_mul_term(&rem.terms, &c, &m, &g.terms)?;
            quot.push((m, c));
        }
        Ok(Some(Polynomial { terms: quot }))
    }

    /// Move a polynomial from `self` into `target`, mapping variable `i` of
    /// `self` to variable `map[i]` of `target`.
    pub fn map_vars(&self, f: &Polynomial<F>, target: &Ring<F>, map: &[usize]) -> Polynomial<F> {
        let n = target.nvars();
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::new(&e), c.clone())
            })
            .collect();
        target.from_terms(terms)
    }

    pub fn format(&self, f: &Polynomial<F>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let fld = &self.field;
        let mut out = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            let neg = fld.neg(c);
            let (negative, mag) = if fld.characteristic() > 2 && prefer_negative(fld, c, &neg) {
                (true, neg)
            } else {
                (false, c.clone())
            };
            if k > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let mono = m.format(&self.vars);
            if fld.is_one(&mag) {
                out.push_str(&mono);
            } else {
                let cs = fld.format_elem(&mag);
                let cs = if cs.contains('+') && !m.is_one() {
                    format!("({cs})")
                } else {
                    cs
                };
                if m.is_one() {
                    out.push_str(&cs);
                } else {
                    out.push_str(&format!("{cs}*{mono}"));
                }
            }
        }
        out
    }
}

// Print `p - 1` as `-1`, `p - 2` as `-2`, ... for prime-field constants.
fn prefer_negative<F: Field>(fld: &F, c: &F::Elem, neg: &F::Elem) -> bool {
    let (a, b) = (fld.format_elem(c), fld.format_elem(neg));
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => y < x,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(p: u64, vars: &[&str]) -> Ring<PrimeField> {
        Ring::new(
            PrimeField::new(p).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn freshmans_dream() {
        let r = ring(2, &["x", "y"]);
        let s = r.add(&r.var(0), &r.var(1));
        let sq = r.mul(&s, &s).unwrap();
        assert_eq!(r.format(&sq), "x^2 + y^2");
        assert!(r.mul(&sq, &r.zero()).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(5, &["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let y2 = r.mul(&y, &y).unwrap();
        let x3 = r.pow(&x, 3).unwrap();
        let a = r.sub(&y2, &x3);
        let b = r.add(&y2, &x3);
        let prod = r.mul(&a, &b).unwrap();
        assert_eq!(r.format(&prod), "-x^6 + y^4");
        // Frobenius collapse in char 5
        assert_eq!(r.frobenius(&a, 1).unwrap(), r.pow(&a, 5).unwrap());
        assert_eq!(r.format(&r.frobenius(&a, 1).unwrap()), "-x^15 + y^10");
    }

    #[test]
    fn names_are_checked() {
        let f = PrimeField::new(3).unwrap();
        assert!(matches!(
            Ring::new(f.clone(), vec!["x".into(), "x".into()], MonomialOrder::Grevlex),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            Ring::new(f, vec![AUX_VAR.into()], MonomialOrder::Grevlex),
            Err(Error::ReservedName(_))
        ));
    }

    #[test]
    fn ring_mismatch() {
        let r2 = ring(3, &["x", "y"]);
        let r3 = ring(3, &["x", "y", "z"]);
        assert!(matches!(r3.check(&r2.var(0)), Err(Error::RingMismatch)));
    }

    #[test]
    fn exact_division() {
        let r = ring(7, &["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let f = r.add(&r.mul(&x, &x).unwrap(), &r.mul(&x, &y).unwrap());
        assert_eq!(r.div_exact(&f, &x).unwrap().unwrap(), r.add(&x, &y));
        assert!(r.div_exact(&f, &y).unwrap().is_none());
    }
}
