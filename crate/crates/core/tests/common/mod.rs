#![allow(dead_code)]

use fsplit_core::{Field, IdealPresentation, Monomial, MonomialOrder, Polynomial, PrimeField, Ring};

pub type Terms = &'static [(i64, &'static [u16])];

pub const NAMES: [&str; 3] = ["x", "y", "z"];

/// One ring/ideal pair of the shared corpus.
#[derive(Clone, Copy)]
pub struct Entry {
    pub name: &'static str,
    pub p: u64,
    pub n: usize,
    pub gens: &'static [Terms],
    pub es: &'static [u32],
    /// System of parameters of `S/I`, when `S/I` is Gorenstein.
    pub sop: Option<&'static [Terms]>,
}

impl Entry {
    pub fn ring(&self) -> Ring<PrimeField> {
        ring(self.p, self.n)
    }

    pub fn ideal(&self, r: &Ring<PrimeField>) -> IdealPresentation<PrimeField> {
        IdealPresentation::new(self.gens.iter().map(|t| poly(r, t)).collect())
    }

    pub fn sop(&self, r: &Ring<PrimeField>) -> Option<Vec<Polynomial<PrimeField>>> {
        self.sop.map(|s| s.iter().map(|t| poly(r, t)).collect())
    }

    pub fn is_homogeneous(&self) -> bool {
        let r = self.ring();
        self.ideal(&r).is_homogeneous()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.gens.len() == 1
    }
}

pub fn ring(p: u64, n: usize) -> Ring<PrimeField> {
    Ring::new(
        PrimeField::new(p).unwrap(),
        NAMES[..n].iter().map(|s| s.to_string()).collect(),
        MonomialOrder::Grevlex,
    )
    .unwrap()
}

pub fn poly(r: &Ring<PrimeField>, terms: &[(i64, &[u16])]) -> Polynomial<PrimeField> {
    r.from_terms(
        terms
            .iter()
            .map(|(c, e)| (Monomial::new(e), r.field().from_int(*c)))
            .collect(),
    )
}

const X2: Terms = &[(1, &[1, 0])];
const Y2: Terms = &[(1, &[0, 1])];
const X3: Terms = &[(1, &[1, 0, 0])];
const Y3: Terms = &[(1, &[0, 1, 0])];
const Z3: Terms = &[(1, &[0, 0, 1])];
const NODE: Terms = &[(1, &[1, 1])];
const NODE3: Terms = &[(1, &[1, 1, 0])];
const X_PLUS_Y: Terms = &[(1, &[1, 0]), (1, &[0, 1])];
const X_PLUS_Y3: Terms = &[(1, &[1, 0, 0]), (1, &[0, 1, 0])];
const CUSP: Terms = &[(1, &[0, 2]), (-1, &[3, 0])];
const SUM_SQ: Terms = &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])];
const CONE: Terms = &[(1, &[1, 1, 0]), (-1, &[0, 0, 2])];
const FERMAT: Terms = &[(1, &[3, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 3])];
const XX: Terms = &[(1, &[2, 0])];
const XY: Terms = &[(1, &[1, 1])];
const YY: Terms = &[(1, &[0, 2])];
const X1_SQ: Terms = &[(1, &[2])];

pub fn corpus() -> Vec<Entry> {
    vec![
        Entry { name: "zero-p2-n2", p: 2, n: 2, gens: &[], es: &[1, 2, 3], sop: Some(&[X2, Y2]) },
        Entry { name: "zero-p3-n3", p: 3, n: 3, gens: &[], es: &[1, 2], sop: Some(&[X3, Y3, Z3]) },
        Entry { name: "node-p2", p: 2, n: 2, gens: &[NODE], es: &[1, 2, 3], sop: Some(&[X_PLUS_Y]) },
        Entry { name: "node-p3", p: 3, n: 2, gens: &[NODE], es: &[1, 2, 3], sop: Some(&[X_PLUS_Y]) },
        Entry { name: "node-p5", p: 5, n: 2, gens: &[NODE], es: &[1, 2, 3], sop: Some(&[X_PLUS_Y]) },
        Entry { name: "node-p2-n3", p: 2, n: 3, gens: &[NODE3], es: &[1, 2], sop: Some(&[X_PLUS_Y3, Z3]) },
        Entry { name: "cusp-p5", p: 5, n: 2, gens: &[CUSP], es: &[1, 2], sop: Some(&[X2]) },
        Entry { name: "line-p3", p: 3, n: 2, gens: &[X2], es: &[1, 2], sop: Some(&[Y2]) },
        Entry { name: "sumsq-p3", p: 3, n: 3, gens: &[SUM_SQ], es: &[1, 2], sop: Some(&[X3, Y3]) },
        Entry { name: "sumsq-p7", p: 7, n: 3, gens: &[SUM_SQ], es: &[1], sop: Some(&[X3, Y3]) },
        Entry { name: "cone-p3", p: 3, n: 3, gens: &[CONE], es: &[1, 2], sop: Some(&[X3, Y3]) },
        Entry { name: "fermat-p7", p: 7, n: 3, gens: &[FERMAT], es: &[1], sop: Some(&[X3, Y3]) },
        Entry { name: "fermat-p2", p: 2, n: 3, gens: &[FERMAT], es: &[1, 2], sop: Some(&[X3, Y3]) },
        Entry { name: "fat-point-p2", p: 2, n: 2, gens: &[XX, XY, YY], es: &[1, 2], sop: None },
        Entry { name: "double-point-p3", p: 3, n: 1, gens: &[X1_SQ], es: &[1], sop: Some(&[]) },
    ]
}

pub fn pairs() -> Vec<(Entry, u32)> {
    corpus()
        .into_iter()
        .flat_map(|entry| entry.es.iter().map(move |&e| (entry, e)))
        .collect()
}
