//! Brute-force linear algebra over `F_p` on the monomial box `[0, q)^n`.
//!
//! Nothing here touches the Gröbner machinery: polynomials are read as raw
//! (exponent vector, coefficient) lists and every ideal is replaced by the
//! span of explicit monomial multiples of its generators. Used to pin and
//! cross-check lengths.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::groebner::IdealPresentation;
use crate::poly::{Polynomial, Ring};

/// Default limit on the nominal (dense) size of the matrices built.
pub const DEFAULT_ORACLE_BUDGET: u128 = 1_000_000;

type Raw = Vec<(Vec<u32>, u64)>;

fn raw(f: &Polynomial<PrimeField>) -> Raw {
    f.terms()
        .iter()
        .map(|(m, c)| (m.exps().iter().map(|&e| e as u32).collect(), *c))
        .collect()
}

fn raw_mul(a: &Raw, b: &Raw, p: u64) -> Raw {
    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = acc.entry(e).or_insert(0);
            *slot = (*slot + ca * cb) % p;
        }
    }
    let mut out: Raw = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort();
    out
}

fn raw_pow(f: &Raw, k: u64, nvars: usize, p: u64) -> Raw {
    let mut acc: Raw = vec![(vec![0; nvars], 1)];
    for _ in 0..k {
        acc = raw_mul(&acc, f, p);
    }
    acc
}

fn raw_degree(f: &Raw) -> Option<u32> {
    f.iter().map(|(e, _)| e.iter().sum()).max()
}

fn raw_homogeneous(f: &Raw) -> bool {
    f.windows(2)
        .all(|w| w[0].0.iter().sum::<u32>() == w[1].0.iter().sum::<u32>())
}

/// All exponent vectors of total degree `d` in `n` variables, lex order.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn count_of_degree(n: usize, d: u32) -> u128 {
    if n == 0 {
        return (d == 0) as u128;
    }
    binomial(d as u128 + n as u128 - 1, n as u128 - 1)
}

/// Row echelon form over `F_p`, rows kept sparse. Each pivot row is monic
/// at its pivot column and has no entries to the left of it.
struct Echelon {
    p: u64,
    pivots: BTreeMap<usize, Vec<(usize, u64)>>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon {
            p,
            pivots: BTreeMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Clears every pivot column from `row`.
    fn reduce(&self, row: &mut BTreeMap<usize, u64>) {
        let p = self.p;
        let mut cursor = 0;
        loop {
            let hit = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, *v));
            let Some((col, v)) = hit else { break };
            for &(pc, pv) in &self.pivots[&col] {
                let slot = row.entry(pc).or_insert(0);
                *slot = (*slot + p - v * pv % p) % p;
                if *slot == 0 {
                    row.remove(&pc);
                }
            }
            cursor = col + 1;
        }
    }

    /// Reduces `row`; a nonzero remainder whose leading column is below
    /// `limit` becomes a new pivot. Returns the remainder otherwise.
    fn insert_below(&mut self, mut row: BTreeMap<usize, u64>, limit: usize) -> Option<BTreeMap<usize, u64>> {
        self.reduce(&mut row);
        match row.first_key_value() {
            Some((&lead, &c)) if lead < limit => {
                let inv = self.inv(c);
                let r: Vec<(usize, u64)> = row.into_iter().map(|(k, v)| (k, v * inv % self.p)).collect();
                self.pivots.insert(lead, r);
                None
            }
            _ => Some(row),
        }
    }

    fn insert(&mut self, row: BTreeMap<usize, u64>) {
        self.insert_below(row, usize::MAX);
    }
}

struct BoxIndex {
    q: u32,
    n: usize,
}

impl BoxIndex {
    fn size(&self) -> u128 {
        (self.q as u128).pow(self.n as u32)
    }

    fn index(&self, e: &[u32]) -> Option<usize> {
        let mut idx = 0usize;
        for &x in e.iter().rev() {
            if x >= self.q {
                return None;
            }
            idx = idx * self.q as usize + x as usize;
        }
        Some(idx)
    }

    fn all(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.size() as usize).map(move |mut k| {
            let mut e = vec![0u32; self.n];
            for x in e.iter_mut() {
                *x = (k % self.q as usize) as u32;
                k /= self.q as usize;
            }
            e
        })
    }
}

fn q_of(p: u64, e: u32) -> Result<u32> {
    (p as u32).checked_pow(e).ok_or(Error::ExponentOverflow)
}

/// `λ(S / ((gens) + n^[q]))` as `q^n` minus the rank of all truncated
/// products `m * g` with `m` in the box.
pub fn oracle_length_mod_bracket(
    ring: &Ring<PrimeField>,
    gens: &[Polynomial<PrimeField>],
    e: u32,
    budget: u128,
) -> Result<u64> {
    let p = ring.field().characteristic();
    let n = ring.nvars();
    let bx = BoxIndex { q: q_of(p, e)?, n };
    let gens: Vec<Raw> = gens.iter().filter(|g| !g.is_zero()).map(raw).collect();
    let nominal = bx.size() * bx.size() * gens.len() as u128;
    if nominal > budget {
        return Err(Error::BudgetExceeded {
            required: nominal,
            budget,
        });
    }
    let mut ech = Echelon::new(p);
    for g in &gens {
        for m in bx.all() {
            let mut row = BTreeMap::new();
            for (t, c) in g {
                let prod: Vec<u32> = t.iter().zip(&m).map(|(a, b)| a + b).collect();
                if let Some(k) = bx.index(&prod) {
                    row.insert(k, *c);
                }
            }
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    Ok(bx.size() as u64 - ech.rank() as u64)
}

/// `λ((K + n^[q]) / n^[q])` for `K = I^[q] : I`, computed degree by degree:
/// `K_d = {f ∈ S_d : f g_i ∈ (I^[q])_{d + deg g_i} for all i}` as a kernel,
/// then the rank of its image in the box. `I` must be homogeneous.
pub fn oracle_dual_splitting_length(
    ring: &Ring<PrimeField>,
    ideal: &IdealPresentation<PrimeField>,
    e: u32,
    budget: u128,
) -> Result<u64> {
    let p = ring.field().characteristic();
    let n = ring.nvars();
    let q = q_of(p, e)?;
    let bx = BoxIndex { q, n };
    let gens: Vec<Raw> = ideal.generators.iter().filter(|g| !g.is_zero()).map(raw).collect();
    if gens.is_empty() {
        return Ok(bx.size() as u64);
    }
    if !gens.iter().all(raw_homogeneous) {
        return Err(Error::NotHomogeneous);
    }
    let degs: Vec<u32> = gens.iter().map(|g| raw_degree(g).unwrap()).collect();
    let top = n as u32 * (q - 1);

    let mut nominal: u128 = 0;
    for d in 0..=top {
        let cols: u128 = degs.iter().map(|&g| count_of_degree(n, d + g)).sum::<u128>() + count_of_degree(n, d);
        nominal += count_of_degree(n, d) * cols;
    }
    if nominal > budget {
        return Err(Error::BudgetExceeded {
            required: nominal,
            budget,
        });
    }

    let powers: Vec<Raw> = gens.iter().map(|g| raw_pow(g, q as u64, n, p)).collect();
    let power_degs: Vec<u32> = degs.iter().map(|d| d * q).collect();

    let mut total = 0u64;
    for d in 0..=top {
        let source = monomials_of_degree(n, d);
        // per generator: target monomial index and echelon of (I^[q])_D
        let mut offsets = Vec::with_capacity(gens.len());
        let mut targets: Vec<HashMap<Vec<u32>, usize>> = Vec::with_capacity(gens.len());
        let mut spans: Vec<Echelon> = Vec::with_capacity(gens.len());
        let mut width = 0usize;
        for &dg in &degs {
            let big = d + dg;
            let mons = monomials_of_degree(n, big);
            let index: HashMap<Vec<u32>, usize> = mons.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
            let mut span = Echelon::new(p);
            for (h, &dh) in powers.iter().zip(&power_degs) {
                if dh > big {
                    continue;
                }
                for m in monomials_of_degree(n, big - dh) {
                    let row: BTreeMap<usize, u64> = h
                        .iter()
                        .map(|(t, c)| {
                            let prod: Vec<u32> = t.iter().zip(&m).map(|(a, b)| a + b).collect();
                            (index[&prod], *c)
                        })
                        .collect();
                    span.insert(row);
                }
            }
            offsets.push(width);
            width += mons.len();
            targets.push(index);
            spans.push(span);
        }

        // kernel of s -> (s g_i mod (I^[q])_D)_i, tracked in augmented columns
        let mut ech = Echelon::new(p);
        let mut kernel: Vec<BTreeMap<usize, u64>> = Vec::new();
        for (k, s) in source.iter().enumerate() {
            let mut row = BTreeMap::new();
            for (i, g) in gens.iter().enumerate() {
                let mut part = BTreeMap::new();
                for (t, c) in g {
                    let prod: Vec<u32> = t.iter().zip(s).map(|(a, b)| a + b).collect();
                    part.insert(targets[i][&prod], *c);
                }
                spans[i].reduce(&mut part);
                for (col, v) in part {
                    row.insert(offsets[i] + col, v);
                }
            }
            row.insert(width + k, 1);
            if let Some(rest) = ech.insert_below(row, width) {
                kernel.push(rest);
            }
        }

        // image of K_d in the box
        let mut image = Echelon::new(p);
        for v in kernel {
            let mut row = BTreeMap::new();
            for (col, c) in v {
                if let Some(b) = bx.index(&source[col - width]) {
                    row.insert(b, c);
                }
            }
            if !row.is_empty() {
                image.insert(row);
            }
        }
        total += image.rank() as u64;
    }
    Ok(total)
}
