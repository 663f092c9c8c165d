//! Ideal-level operations: sums, Frobenius bracket powers, intersections
//! and colon ideals.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, ideal_member, reduce_known_basis, IdealPresentation, ReducedGB};
use crate::poly::{MonomialOrder, Polynomial, Ring};

/// A bracket power `I^[q]` with `q = p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketPower {
    pub e: u32,
    pub q: u32,
}

impl BracketPower {
    pub fn new<F: Field>(ring: &Ring<F>, e: u32) -> Result<Self> {
        Ok(BracketPower { e, q: ring.q(e)? })
    }
}

/// `I + J`: generator lists concatenated, `I` first.
pub fn ideal_sum<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    j: &IdealPresentation<F>,
) -> Result<IdealPresentation<F>> {
    i.check(ring)?;
    j.check(ring)?;
    let mut gens = i.generators.clone();
    gens.extend(j.generators.iter().cloned());
    Ok(IdealPresentation::new(gens))
}

/// `I^[q]`, generated by the `q`-th powers of the generators of `I`.
pub fn frobenius_power<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    e: u32,
) -> Result<IdealPresentation<F>> {
    i.check(ring)?;
    let gens = i
        .generators
        .iter()
        .map(|g| ring.frobenius(g, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealPresentation::new(gens))
}

/// `n^[q] = (x_1^q, ..., x_n^q)`.
pub fn bracket_power_of_maximal<F: Field>(ring: &Ring<F>, e: u32) -> Result<IdealPresentation<F>> {
    frobenius_power(ring, &IdealPresentation::maximal(ring), e)
}

/// `I ∩ J`, eliminating `t` from `t I + (1 - t) J`.
pub fn intersect<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    j: &IdealPresentation<F>,
) -> Result<ReducedGB<F>> {
    i.check(ring)?;
    j.check(ring)?;
    if i.is_zero() || j.is_zero() {
        return buchberger(ring, &IdealPresentation::zero());
    }
    let ering = ring.elimination_ring();
    let shift: Vec<usize> = (1..=ring.nvars()).collect();
    let t = ering.var(0);
    let one_minus_t = ering.sub(&ering.one(), &t);

    let mut gens = Vec::with_capacity(i.generators.len() + j.generators.len());
    for f in i.generators.iter().filter(|f| !f.is_zero()) {
        gens.push(ering.mul(&t, &ring.map_vars(f, &ering, &shift))?);
    }
    for g in j.generators.iter().filter(|g| !g.is_zero()) {
        gens.push(ering.mul(&one_minus_t, &ring.map_vars(g, &ering, &shift))?);
    }
    let gb = buchberger(&ering, &IdealPresentation::new(gens))?;

    let rest = ring.with_order(MonomialOrder::Grevlex);
    let kept: Vec<Polynomial<F>> = gb
        .basis()
        .iter()
        .filter(|g| g.lead_monomial().unwrap().exps()[0] == 0)
        .map(|g| {
            rest.from_terms(
                g.terms()
                    .iter()
                    .map(|(m, c)| (m.drop_front(1), c.clone()))
                    .collect(),
            )
        })
        .collect();
    if ring.order() == MonomialOrder::Grevlex {
        // the t-free part of an elimination basis is a basis under the restricted order
        reduce_known_basis(ring, kept)
    } else {
        let kept = kept.iter().map(|g| ring.reorder(g)).collect();
        buchberger(ring, &IdealPresentation::new(kept))
    }
}

/// `(I : f)` for a single nonzero `f`, given a Gröbner basis of `I`.
fn colon_principal<F: Field>(ring: &Ring<F>, gb_i: &ReducedGB<F>, f: &Polynomial<F>) -> Result<ReducedGB<F>> {
    if f.is_constant() {
        return Ok(gb_i.clone());
    }
    if ideal_member(ring, f, gb_i)? {
        return buchberger(ring, &IdealPresentation::new(vec![ring.one()]));
    }
    if let [g] = gb_i.basis() {
        // principal: (g) : f = (g / f) whenever f | g
        if let Some(quot) = ring.div_exact(g, f)? {
            return buchberger(ring, &IdealPresentation::new(vec![quot]));
        }
    }
    let inter = intersect(ring, &gb_i.to_ideal(), &IdealPresentation::new(vec![f.clone()]))?;
    let mut quotients = Vec::with_capacity(inter.basis().len());
    for h in inter.basis() {
        match ring.div_exact(h, f)? {
            Some(q) => quotients.push(q),
            None => {
                return Err(Error::InternalInconsistency(format!(
                    "element {} of I ∩ (f) is not divisible by f = {}",
                    ring.format(h),
                    ring.format(f)
                )))
            }
        }
    }
    reduce_known_basis(ring, quotients)
}

/// `(I : J) = {f : f J ⊆ I}`, folded over the generators of `J` in order.
pub fn colon_ideal<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    j: &IdealPresentation<F>,
) -> Result<ReducedGB<F>> {
    i.check(ring)?;
    j.check(ring)?;
    let gb_i = buchberger(ring, i)?;
    colon_gb(ring, &gb_i, j)
}

/// [`colon_ideal`] with a precomputed basis of `I`.
pub fn colon_gb<F: Field>(
    ring: &Ring<F>,
    gb_i: &ReducedGB<F>,
    j: &IdealPresentation<F>,
) -> Result<ReducedGB<F>> {
    let gens: Vec<&Polynomial<F>> = j.generators.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Err(Error::ZeroDivisorColon);
    }
    let mut acc = colon_principal(ring, gb_i, gens[0])?;
    for f in &gens[1..] {
        let next = colon_principal(ring, gb_i, f)?;
        acc = intersect(ring, &acc.to_ideal(), &next.to_ideal())?;
    }
    Ok(acc)
}
