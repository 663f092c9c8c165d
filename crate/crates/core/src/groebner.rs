//! Ideals, the division algorithm and Buchberger's algorithm.
//!
//! Pairs are selected by the normal strategy (smallest lcm first, ties by
//! index) and pruned with the Gebauer-Möller update, which subsumes both
//! Buchberger criteria. Every step is deterministic for a fixed input.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// An ideal given by an ordered list of generators.
pub struct IdealPresentation<F: Field> {
    pub generators: Vec<Polynomial<F>>,
}

impl<F: Field> Clone for IdealPresentation<F> {
    fn clone(&self) -> Self {
        IdealPresentation {
            generators: self.generators.clone(),
        }
    }
}

impl<F: Field> std::fmt::Debug for IdealPresentation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Ideal").field(&self.generators).finish()
    }
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(generators: Vec<Polynomial<F>>) -> Self {
        IdealPresentation { generators }
    }

    pub fn zero() -> Self {
        IdealPresentation {
            generators: Vec::new(),
        }
    }

    /// The maximal ideal of the origin, `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Ring<F>) -> Self {
        Self::new((0..ring.nvars()).map(|i| ring.var(i)).collect())
    }

    /// True when every generator is zero.
    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn check(&self, ring: &Ring<F>) -> Result<()> {
        self.generators.iter().try_for_each(|g| ring.check(g))
    }

    pub fn format(&self, ring: &Ring<F>) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| ring.format(g)).collect();
        format!("({})", gens.join(", "))
    }
}

/// Reduced Gröbner basis: monic, no term of any element divisible by the
/// leading monomial of another, sorted by increasing leading monomial.
pub struct ReducedGB<F: Field> {
    order: MonomialOrder,
    basis: Vec<Polynomial<F>>,
}

impl<F: Field> Clone for ReducedGB<F> {
    fn clone(&self) -> Self {
        ReducedGB {
            order: self.order,
            basis: self.basis.clone(),
        }
    }
}

impl<F: Field> PartialEq for ReducedGB<F> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.basis == other.basis
    }
}

impl<F: Field> std::fmt::Debug for ReducedGB<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReducedGB")
            .field("order", &self.order)
            .field("basis", &self.basis)
            .finish()
    }
}

impl<F: Field> ReducedGB<F> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn into_ideal(self) -> IdealPresentation<F> {
        IdealPresentation::new(self.basis)
    }

    pub fn to_ideal(&self) -> IdealPresentation<F> {
        IdealPresentation::new(self.basis.clone())
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|g| g.lead_monomial().expect("basis elements are nonzero"))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    fn check(&self, ring: &Ring<F>) -> Result<()> {
        if ring.order() != self.order {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn format(&self, ring: &Ring<F>) -> String {
        self.to_ideal().format(ring)
    }
}

fn find_reducer<'a, F: Field>(
    m: &Monomial,
    basis: impl Iterator<Item = &'a Polynomial<F>>,
) -> Option<(&'a Polynomial<F>, Monomial)> {
    basis
        .filter_map(|g| {
            let lm = g.lead_monomial()?;
            m.div(lm).map(|q| (g, q))
        })
        .next()
}

/// Full reduction of `f` by a list of monic polynomials.
fn reduce_by<'a, F: Field>(
    ring: &Ring<F>,
    f: &Polynomial<F>,
    basis: impl Iterator<Item = &'a Polynomial<F>> + Clone,
) -> Result<Polynomial<F>> {
    let mut rest: Vec<(Monomial, F::Elem)> = f.terms().to_vec();
    let mut pos = 0;
    let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
    while pos < rest.len() {
        match find_reducer(&rest[pos].0, basis.clone()) {
            Some((g, q)) => {
                let c = &rest[pos].1;
                let lc = g.lead_coeff().unwrap();
                let c = if ring.field().is_one(lc) {
                    c.clone()
                } else {
                    ring.field().div(c, lc)?
                };
                rest = ring.sub_mul_term(&rest[pos..], &c, &q, g.terms())?.into_terms();
                pos = 0;
            }
            None => {
                rem.push(rest[pos].clone());
                pos += 1;
            }
        }
    }
    Ok(Polynomial::from_sorted_terms(rem))
}

/// Remainder of `f` on division by `G`; unique since `G` is reduced.
pub fn normal_form<F: Field>(ring: &Ring<F>, f: &Polynomial<F>, gb: &ReducedGB<F>) -> Result<Polynomial<F>> {
    ring.check(f)?;
    gb.check(ring)?;
    reduce_by(ring, f, gb.basis.iter())
}

pub fn ideal_member<F: Field>(ring: &Ring<F>, f: &Polynomial<F>, gb: &ReducedGB<F>) -> Result<bool> {
    Ok(normal_form(ring, f, gb)?.is_zero())
}

/// Every generator of `ideal` lies in the ideal of `gb`.
pub fn contains<F: Field>(ring: &Ring<F>, gb: &ReducedGB<F>, ideal: &IdealPresentation<F>) -> Result<bool> {
    for g in &ideal.generators {
        if !ideal_member(ring, g, gb)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn s_polynomial<F: Field>(ring: &Ring<F>, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    let (fl, gl) = (f.lead_monomial().unwrap(), g.lead_monomial().unwrap());
    let l = fl.lcm(gl);
    let fld = ring.field();
    let a = ring.mul_term(f, &l.div(fl).unwrap(), &fld.inv(f.lead_coeff().unwrap())?)?;
    let b = ring.mul_term(g, &l.div(gl).unwrap(), &fld.inv(g.lead_coeff().unwrap())?)?;
    Ok(ring.sub(&a, &b))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal under the ring's order.
pub fn buchberger<F: Field>(ring: &Ring<F>, ideal: &IdealPresentation<F>) -> Result<ReducedGB<F>> {
    ideal.check(ring)?;
    let mut polys: Vec<Polynomial<F>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in &ideal.generators {
        if g.is_zero() {
            continue;
        }
        let h = reduce_by(ring, g, active.iter().map(|&k| &polys[k]))?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring));
        }
        polys.push(ring.make_monic(&h));
        update(ring, &polys, &mut active, &mut pairs, polys.len() - 1);
    }

    while let Some(pos) = select_pair(ring, &pairs) {
        let pair = pairs.swap_remove(pos);
        let s = s_polynomial(ring, &polys[pair.i], &polys[pair.j])?;
        let h = reduce_by(ring, &s, active.iter().map(|&k| &polys[k]))?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring));
        }
        polys.push(ring.make_monic(&h));
        update(ring, &polys, &mut active, &mut pairs, polys.len() - 1);
    }

    let minimal: Vec<Polynomial<F>> = active.iter().map(|&k| polys[k].clone()).collect();
    interreduce(ring, minimal)
}

fn unit_basis<F: Field>(ring: &Ring<F>) -> ReducedGB<F> {
    ReducedGB {
        order: ring.order(),
        basis: vec![ring.one()],
    }
}

fn select_pair<F: Field>(ring: &Ring<F>, pairs: &[Pair]) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            ring.cmp(&a.lcm, &b.lcm)
                .then(a.j.cmp(&b.j))
                .then(a.i.cmp(&b.i))
        })
        .map(|(k, _)| k)
}

/// Gebauer-Möller installation of the new element `h` (an index into `polys`).
fn update<F: Field>(
    _ring: &Ring<F>,
    polys: &[Polynomial<F>],
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: usize,
) {
    let hl = polys[h].lead_monomial().unwrap().clone();
    let lm = |k: usize| polys[k].lead_monomial().unwrap();

    let candidates: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&g| (g, hl.lcm(lm(g)), hl.is_coprime(lm(g))))
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (idx, (g, l, coprime)) in candidates.iter().enumerate() {
        let dominated = !coprime
            && candidates[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|(_, l2, _)| l2.divides(l));
        if *coprime || !dominated {
            kept.push((*g, l.clone(), *coprime));
        }
    }
    // drop duplicates of the same lcm, then the product criterion
    let mut new_pairs: Vec<Pair> = Vec::new();
    for (g, l, coprime) in &kept {
        if *coprime {
            continue;
        }
        if new_pairs.iter().any(|p| &p.lcm == l) {
            continue;
        }
        new_pairs.push(Pair {
            i: *g,
            j: h,
            lcm: l.clone(),
        });
    }
    // old pairs made redundant by h
    pairs.retain(|p| {
        !(hl.divides(&p.lcm) && hl.lcm(lm(p.i)) != p.lcm && hl.lcm(lm(p.j)) != p.lcm)
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !hl.divides(lm(g)));
    active.push(h);
}

/// Turn a minimal Gröbner basis into the reduced one.
fn interreduce<F: Field>(ring: &Ring<F>, mut minimal: Vec<Polynomial<F>>) -> Result<ReducedGB<F>> {
    minimal.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others = minimal
            .iter()
            .enumerate()
            .filter(move |(j, _)| *j != k)
            .map(|(_, g)| g);
        let head = ring.term(
            minimal[k].lead_monomial().unwrap().clone(),
            minimal[k].lead_coeff().unwrap().clone(),
        );
        let tail = ring.sub(&minimal[k], &head);
        let tail = reduce_by(ring, &tail, others)?;
        reduced.push(ring.make_monic(&ring.add(&head, &tail)));
    }
    Ok(ReducedGB {
        order: ring.order(),
        basis: reduced,
    })
}

/// Builds a `ReducedGB` from polynomials already known to form a Gröbner basis.
pub(crate) fn reduce_known_basis<F: Field>(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Result<ReducedGB<F>> {
    let mut gens: Vec<Polynomial<F>> = gens.into_iter().filter(|g| !g.is_zero()).map(|g| ring.make_monic(&g)).collect();
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(unit_basis(ring));
    }
    gens.sort_by(|a, b| {
        ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap())
            .then(a.len().cmp(&b.len()))
    });
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        let lm = g.lead_monomial().unwrap();
        if !minimal.iter().any(|h| h.lead_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    interreduce(ring, minimal)
}

/// Checks the Buchberger criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(ring: &Ring<F>, gb: &ReducedGB<F>) -> Result<bool> {
    for (i, f) in gb.basis.iter().enumerate() {
        for g in &gb.basis[i + 1..] {
            let s = s_polynomial(ring, f, g)?;
            if !normal_form(ring, &s, gb)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Structural check of reducedness (monic, no divisible terms, sorted).
pub fn is_reduced<F: Field>(ring: &Ring<F>, gb: &ReducedGB<F>) -> bool {
    let lms: Vec<&Monomial> = gb.leading_monomials().collect();
    let sorted = lms.windows(2).all(|w| ring.cmp(w[0], w[1]) == Ordering::Less);
    let monic = gb.basis.iter().all(|g| ring.field().is_one(g.lead_coeff().unwrap()));
    let clean = gb.basis.iter().enumerate().all(|(i, g)| {
        g.terms()
            .iter()
            .all(|(m, _)| lms.iter().enumerate().all(|(j, l)| j == i || !l.divides(m)))
    });
    sorted && monic && clean
}

/// The ideals of two bases coincide (mutual membership).
pub fn same_ideal<F: Field>(ring: &Ring<F>, a: &ReducedGB<F>, b: &ReducedGB<F>) -> Result<bool> {
    Ok(contains(ring, a, &b.to_ideal())? && contains(ring, b, &a.to_ideal())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn ring(p: u64, n: usize, order: MonomialOrder) -> Ring<PrimeField> {
        let names = ["x", "y", "z", "w"];
        Ring::new(
            PrimeField::new(p).unwrap(),
            names[..n].iter().map(|s| s.to_string()).collect(),
            order,
        )
        .unwrap()
    }

    fn poly(r: &Ring<PrimeField>, terms: &[(i64, &[u16])]) -> Polynomial<PrimeField> {
        r.from_terms(
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e), r.field().from_int(*c)))
                .collect(),
        )
    }

    #[test]
    fn normal_form_hand_division() {
        let r = ring(7, 2, MonomialOrder::Lex);
        let g = buchberger(&r, &IdealPresentation::new(vec![poly(&r, &[(1, &[2, 0]), (-1, &[0, 1])])])).unwrap();
        let f = poly(&r, &[(1, &[2, 1])]);
        assert_eq!(normal_form(&r, &f, &g).unwrap(), poly(&r, &[(1, &[0, 2])]));
        let diff = poly(&r, &[(1, &[2, 1]), (-1, &[0, 2])]);
        assert!(ideal_member(&r, &diff, &g).unwrap());
        assert!(normal_form(&r, &g.basis()[0], &g).unwrap().is_zero());
        assert!(ideal_member(&r, &r.zero(), &g).unwrap());
    }

    #[test]
    fn one_is_not_in_maximal_ideal() {
        let r = ring(3, 2, MonomialOrder::Grevlex);
        let g = buchberger(&r, &IdealPresentation::maximal(&r)).unwrap();
        assert_eq!(normal_form(&r, &r.one(), &g).unwrap(), r.one());
        assert!(!ideal_member(&r, &r.one(), &g).unwrap());
    }

    #[test]
    fn hand_computed_lex_basis() {
        // (xy - 1, y^2 - 1) under lex x > y is {y^2 - 1, x - y}
        let r = ring(5, 2, MonomialOrder::Lex);
        let i = IdealPresentation::new(vec![
            poly(&r, &[(1, &[1, 1]), (-1, &[0, 0])]),
            poly(&r, &[(1, &[0, 2]), (-1, &[0, 0])]),
        ]);
        let g = buchberger(&r, &i).unwrap();
        let expected = vec![
            poly(&r, &[(1, &[0, 2]), (-1, &[0, 0])]),
            poly(&r, &[(1, &[1, 0]), (-1, &[0, 1])]),
        ];
        assert_eq!(g.basis(), expected.as_slice());
        let back = buchberger(&r, &IdealPresentation::new(expected)).unwrap();
        assert!(same_ideal(&r, &g, &back).unwrap());
        assert!(contains(&r, &g, &i).unwrap());
    }

    #[test]
    fn principal_monomial_ideals() {
        let r = ring(2, 2, MonomialOrder::Grevlex);
        let g = buchberger(&r, &IdealPresentation::new(vec![r.var(0)])).unwrap();
        assert_eq!(g.basis(), &[r.var(0)]);
        let m = poly(&r, &[(1, &[2, 2])]);
        let g = buchberger(&r, &IdealPresentation::new(vec![m.clone(), r.zero()])).unwrap();
        assert_eq!(g.basis(), &[m]);
        let g = buchberger(&r, &IdealPresentation::zero()).unwrap();
        assert!(g.is_zero_ideal());
    }

    #[test]
    fn unit_ideal_collapses() {
        let r = ring(3, 2, MonomialOrder::Grevlex);
        let i = IdealPresentation::new(vec![
            poly(&r, &[(1, &[1, 0]), (1, &[0, 0])]),
            r.var(0),
        ]);
        let g = buchberger(&r, &i).unwrap();
        assert!(g.is_unit_ideal());
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let r = ring(3, 2, MonomialOrder::Grevlex);
        let lex = r.with_order(MonomialOrder::Lex);
        let g = buchberger(&lex, &IdealPresentation::maximal(&lex)).unwrap();
        assert!(matches!(normal_form(&r, &r.one(), &g), Err(Error::RingMismatch)));
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = Vec<(i64, Vec<u16>)>> {
        prop::collection::vec((-3i64..4, prop::collection::vec(0u16..3, n)), 1..4)
    }

    fn build(r: &Ring<PrimeField>, t: &[(i64, Vec<u16>)]) -> Polynomial<PrimeField> {
        r.from_terms(t.iter().map(|(c, e)| (Monomial::new(e), r.field().from_int(*c))).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn basis_is_certified_and_order_independent(gens in prop::collection::vec(arb_poly(3), 1..4)) {
            let grevlex = ring(5, 3, MonomialOrder::Grevlex);
            let lex = grevlex.with_order(MonomialOrder::Lex);
            let gi: Vec<_> = gens.iter().map(|t| build(&grevlex, t)).collect();
            let li: Vec<_> = gens.iter().map(|t| build(&lex, t)).collect();
            let g1 = buchberger(&grevlex, &IdealPresentation::new(gi.clone())).unwrap();
            let g2 = buchberger(&lex, &IdealPresentation::new(li.clone())).unwrap();
            prop_assert!(is_groebner_basis(&grevlex, &g1).unwrap());
            prop_assert!(is_groebner_basis(&lex, &g2).unwrap());
            prop_assert!(is_reduced(&grevlex, &g1));
            prop_assert!(is_reduced(&lex, &g2));
            for g in g2.basis() {
                prop_assert!(ideal_member(&grevlex, &grevlex.reorder(g), &g1).unwrap());
            }
            for g in g1.basis() {
                prop_assert!(ideal_member(&lex, &lex.reorder(g), &g2).unwrap());
            }
            // generators are members
            for g in &gi {
                prop_assert!(ideal_member(&grevlex, g, &g1).unwrap());
            }
            // determinism
            let again = buchberger(&grevlex, &IdealPresentation::new(gi)).unwrap();
            prop_assert_eq!(again, g1);
        }

        #[test]
        fn normal_form_idempotent(gens in prop::collection::vec(arb_poly(2), 1..3), f in arb_poly(2)) {
            let r = ring(3, 2, MonomialOrder::Grevlex);
            let g = buchberger(&r, &IdealPresentation::new(gens.iter().map(|t| build(&r, t)).collect())).unwrap();
            let f = build(&r, &f);
            let nf = normal_form(&r, &f, &g).unwrap();
            prop_assert_eq!(normal_form(&r, &nf, &g).unwrap(), nf.clone());
            prop_assert!(ideal_member(&r, &r.sub(&f, &nf), &g).unwrap());
            for (m, _) in nf.terms() {
                prop_assert!(g.leading_monomials().all(|l| !l.divides(m)));
            }
        }
    }
}
