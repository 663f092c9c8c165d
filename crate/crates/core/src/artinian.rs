//! Lengths of Artinian quotients and Krull dimension, both read off the
//! leading-term ideal of a Gröbner basis.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::ReducedGB;
use crate::poly::{Monomial, Ring};

/// Standard monomials of an Artinian quotient, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseBasis {
    pub monomials: Vec<Monomial>,
}

impl StaircaseBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// The leading-term ideal contains a pure power of every variable.
pub fn is_artinian<F: Field>(ring: &Ring<F>, gb: &ReducedGB<F>) -> bool {
    if gb.is_unit_ideal() {
        return true;
    }
    let mut seen = vec![false; ring.nvars()];
    for m in gb.leading_monomials() {
        if let Some(i) = m.pure_power_var() {
            seen[i] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

fn lead_exponents<F: Field>(gb: &ReducedGB<F>) -> Vec<Vec<u16>> {
    gb.leading_monomials().map(|m| m.exps().to_vec()).collect()
}

/// Number of monomials in `k[x_0..x_{n-1}]` outside the monomial ideal
/// generated by `gens`, which must contain a pure power of each variable.
///
/// Splits on the exponent of the first variable. The restriction of the
/// ideal to the remaining variables only changes at exponents that occur in
/// some generator, so each run between breakpoints is counted once and
/// multiplied by its width.
fn count_standard(gens: &[Vec<u16>]) -> BigUint {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return BigUint::zero();
    }
    let Some(first) = gens.first() else {
        // no generators and at least one variable would be infinite; callers
        // guarantee Artinian, so this is the zero-variable case
        return BigUint::one();
    };
    if first.is_empty() {
        return BigUint::one();
    }
    let cap = gens
        .iter()
        .filter(|g| g[1..].iter().all(|&e| e == 0))
        .map(|g| g[0])
        .min()
        .expect("Artinian: pure power of the first variable");
    let mut breaks: Vec<u16> = gens.iter().map(|g| g[0]).filter(|&e| e < cap).collect();
    breaks.push(0);
    breaks.push(cap);
    breaks.sort_unstable();
    breaks.dedup();

    let mut total = BigUint::zero();
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let sub: Vec<Vec<u16>> = gens
            .iter()
            .filter(|g| g[0] <= lo)
            .map(|g| g[1..].to_vec())
            .collect();
        let sub = minimalize(sub);
        total += count_standard(&sub) * BigUint::from(hi - lo);
    }
    total
}

fn minimalize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort();
    gens.dedup();
    let divides = |a: &[u16], b: &[u16]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out: Vec<Vec<u16>> = Vec::new();
    for g in &gens {
        if !gens.iter().any(|h| h != g && divides(h, g)) {
            out.push(g.clone());
        }
    }
    out
}

/// `λ(S/J)`: the number of standard monomials of the Artinian ideal `J`.
pub fn length<F: Field>(ring: &Ring<F>, gb: &ReducedGB<F>) -> Result<BigUint> {
    if !is_artinian(ring, gb) {
        return Err(Error::NotArtinian);
    }
    if gb.is_unit_ideal() {
        return Ok(BigUint::zero());
    }
    Ok(count_standard(&minimalize(lead_exponents(gb))))
}

/// Explicit staircase; refuses to list more than `limit` monomials.
pub fn standard_monomials<F: Field>(ring: &Ring<F>, gb: &ReducedGB<F>, limit: u64) -> Result<StaircaseBasis> {
    let total = length(ring, gb)?;
    if total > BigUint::from(limit) {
        return Err(Error::CostGuardExceeded {
            required: total.to_string(),
            budget: limit,
            partial: None,
        });
    }
    let leads: Vec<Monomial> = gb.leading_monomials().cloned().collect();
    let n = ring.nvars();
    let mut caps = vec![0u16; n];
    for m in &leads {
        if let Some(i) = m.pure_power_var() {
            let e = m.exps()[i];
            if caps[i] == 0 || e < caps[i] {
                caps[i] = e;
            }
        }
    }
    let mut out = Vec::new();
    if gb.is_unit_ideal() {
        return Ok(StaircaseBasis { monomials: out });
    }
    let mut cur = vec![0u16; n];
    walk(0, &mut cur, &caps, &leads, &mut out);
    Ok(StaircaseBasis { monomials: out })
}

fn walk(i: usize, cur: &mut Vec<u16>, caps: &[u16], leads: &[Monomial], out: &mut Vec<Monomial>) {
    if i == cur.len() {
        out.push(Monomial::new(cur));
        return;
    }
    for e in 0..caps[i] {
        cur[i] = e;
        // prune: once a partial exponent is divisible, larger ones are too
        let partial = Monomial::new(cur);
        if leads.iter().any(|l| {
            l.exps()[i + 1..].iter().all(|&x| x == 0) && l.divides(&partial)
        }) {
            break;
        }
        walk(i + 1, cur, caps, leads, out);
    }
    cur[i] = 0;
}

/// Krull dimension of `S/I`: the largest set of variables `U` such that no
/// leading monomial is supported inside `U`. `None` for the unit ideal.
pub fn krull_dimension<F: Field>(ring: &Ring<F>, gb: &ReducedGB<F>) -> Option<usize> {
    if gb.is_unit_ideal() {
        return None;
    }
    let n = ring.nvars();
    let supports: Vec<u64> = gb
        .leading_monomials()
        .map(|m| m.support().fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    Some(best)
}
