//! Inputs shared by the benchmarks.

use fsplit_core::{Field, IdealPresentation, Monomial, MonomialOrder, PrimeField, Ring};

pub fn ring(p: u64, n: usize) -> Ring<PrimeField> {
    let names = ["x", "y", "z", "w"];
    Ring::new(
        PrimeField::new(p).expect("prime"),
        names[..n].iter().map(|s| s.to_string()).collect(),
        MonomialOrder::Grevlex,
    )
    .expect("valid ring")
}

/// `(sum of c_i * x^e_i)` from a term list.
pub fn ideal(r: &Ring<PrimeField>, gens: &[&[(i64, &[u16])]]) -> IdealPresentation<PrimeField> {
    IdealPresentation::new(
        gens.iter()
            .map(|ts| {
                r.from_terms(
                    ts.iter()
                        .map(|(c, e)| (Monomial::new(e), r.field().from_int(*c)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn node(p: u64) -> (Ring<PrimeField>, IdealPresentation<PrimeField>) {
    let r = ring(p, 2);
    let i = ideal(&r, &[&[(1, &[1, 1])]]);
    (r, i)
}

pub fn sum_of_squares(p: u64) -> (Ring<PrimeField>, IdealPresentation<PrimeField>) {
    let r = ring(p, 3);
    let i = ideal(&r, &[&[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]]);
    (r, i)
}

pub fn fermat_cubic(p: u64) -> (Ring<PrimeField>, IdealPresentation<PrimeField>) {
    let r = ring(p, 3);
    let i = ideal(&r, &[&[(1, &[3, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 3])]]);
    (r, i)
}
