//! Coefficient fields: the prime field `F_p` and the rational function field
//! `F_p(t_1, ..., t_m)`, both behind the [`Field`] trait.
//!
//! A field value is a context object (characteristic, names of the
//! transcendentals); elements are plain data and every operation goes
//! through the context. Elements are always kept in canonical form, so
//! `==` on elements is equality in the field.

mod prime;
mod ratfunc;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use prime::PrimeField;
pub use ratfunc::{RationalFunction, RationalFunctionField, TPoly};

/// The exact arithmetic contract every coefficient field satisfies.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn characteristic(&self) -> u64;

    /// Names of the transcendentals adjoined to `F_p` (empty for `F_p`).
    fn transcendentals(&self) -> &[String];

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under `Z -> F_p -> K`.
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    /// The `i`-th transcendental as a field element.
    fn transcendental(&self, i: usize) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// `a^(p^e)`.
    fn frobenius(&self, a: &Self::Elem, e: u32) -> Result<Self::Elem>;

    /// The element viewed in `F_p(t_1..t_m)` over this field's own transcendentals.
    fn to_rational(&self, a: &Self::Elem) -> RationalFunction;

    fn format_elem(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `log_p [k : k^p]`, which is the number of transcendentals.
    fn alpha(&self) -> usize {
        self.transcendentals().len()
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            characteristic: self.characteristic(),
            transcendentals: self.transcendentals().to_vec(),
        }
    }
}

/// Binary field operations, as a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith<F: Field>(field: &F, a: &F::Elem, b: &F::Elem, op: FieldOp) -> Result<F::Elem> {
    Ok(match op {
        FieldOp::Add => field.add(a, b),
        FieldOp::Sub => field.sub(a, b),
        FieldOp::Mul => field.mul(a, b),
        FieldOp::Div => field.div(a, b)?,
    })
}

/// Plain description of a coefficient field: `F_p` when `transcendentals`
/// is empty, otherwise `F_p(t_1, ..., t_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub characteristic: u64,
    pub transcendentals: Vec<String>,
}

impl FieldDescriptor {
    pub fn new(characteristic: u64, transcendentals: Vec<String>) -> Result<Self> {
        if !is_prime(characteristic) || characteristic >= 1 << 32 {
            return Err(Error::NonPrimeCharacteristic(characteristic));
        }
        for (i, name) in transcendentals.iter().enumerate() {
            if transcendentals[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(FieldDescriptor {
            characteristic,
            transcendentals,
        })
    }

    pub fn alpha(&self) -> usize {
        self.transcendentals.len()
    }

    pub fn is_prime_field(&self) -> bool {
        self.transcendentals.is_empty()
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.characteristic)?;
        if !self.transcendentals.is_empty() {
            write!(f, "({})", self.transcendentals.join(","))?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
