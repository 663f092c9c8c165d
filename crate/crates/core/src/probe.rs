//! Localization at coordinate primes `P = (x_i : i ∈ subset)` and finite-sample
//! checks of how `s_e` varies over the sampled part of `Spec R`.
//!
//! Localizing at `P` moves the variables outside `P` into the coefficient
//! field: `S_P` is evaluated as `F_p(t.., complement)[P-variables]` and the
//! result is read at the origin of that ring.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, RationalFunctionField, TPoly};
use crate::groebner::IdealPresentation;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::splitting::{normalized_splitting_number, Config, SplittingReport};

/// A prime generated by a subset of the ring variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoordinatePrime {
    /// Variable indices, increasing.
    indices: Vec<usize>,
    names: Vec<String>,
    contains_ideal: bool,
}

impl CoordinatePrime {
    /// The prime `(names)` in `ring`, not yet checked against any ideal.
    pub fn new<F: Field>(ring: &Ring<F>, names: &[&str]) -> Result<Self> {
        let mut indices = Vec::with_capacity(names.len());
        for name in names {
            let i = ring
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            if indices.contains(&i) {
                return Err(Error::DuplicateName(name.to_string()));
            }
            indices.push(i);
        }
        indices.sort_unstable();
        let names = indices.iter().map(|&i| ring.vars()[i].clone()).collect();
        Ok(CoordinatePrime {
            indices,
            names,
            contains_ideal: false,
        })
    }

    /// The prime `(names)`, verified to contain `ideal`.
    pub fn containing<F: Field>(ring: &Ring<F>, names: &[&str], ideal: &IdealPresentation<F>) -> Result<Self> {
        let mut p = Self::new(ring, names)?;
        p.verify(ring, ideal)?;
        Ok(p)
    }

    /// A polynomial lies in a coordinate prime iff every term involves one
    /// of its variables.
    pub fn contains_polynomial<F: Field>(&self, f: &Polynomial<F>) -> bool {
        f.terms()
            .iter()
            .all(|(m, _)| self.indices.iter().any(|&i| m.exps()[i] > 0))
    }

    pub fn verify<F: Field>(&mut self, ring: &Ring<F>, ideal: &IdealPresentation<F>) -> Result<()> {
        ideal.check(ring)?;
        if let Some(g) = ideal.generators.iter().find(|g| !self.contains_polynomial(g)) {
            return Err(Error::NotContaining {
                prime: self.label(),
                generator: ring.format(g),
            });
        }
        self.contains_ideal = true;
        Ok(())
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains_ideal(&self) -> bool {
        self.contains_ideal
    }

    pub fn height(&self) -> usize {
        self.indices.len()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &CoordinatePrime) -> bool {
        self.indices.iter().all(|i| other.indices.contains(i))
    }

    /// `(x,z)` style label.
    pub fn label(&self) -> String {
        format!("({})", self.names.join(","))
    }
}

/// Strictly increasing chain `P_1 ⊂ P_2 ⊂ ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeChain {
    primes: Vec<CoordinatePrime>,
}

impl PrimeChain {
    pub fn new(primes: Vec<CoordinatePrime>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        for w in primes.windows(2) {
            if !w[0].is_subset_of(&w[1]) || w[0] == w[1] {
                return Err(Error::InvalidChain(format!(
                    "{} is not strictly contained in {}",
                    w[0].label(),
                    w[1].label()
                )));
            }
        }
        Ok(PrimeChain { primes })
    }

    pub fn primes(&self) -> &[CoordinatePrime] {
        &self.primes
    }
}

/// Properties of `R` the caller vouches for; they are not computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    pub equidimensional: bool,
    pub connected: bool,
}

/// `S_P` as `F_p(t.., complement)[P]` together with `I` rewritten there.
pub fn localize_at_coordinate_prime<F: Field>(
    ring: &Ring<F>,
    ideal: &IdealPresentation<F>,
    prime: &CoordinatePrime,
) -> Result<(Ring<RationalFunctionField>, IdealPresentation<RationalFunctionField>)> {
    let mut prime = prime.clone();
    prime.verify(ring, ideal)?;
    let field = ring.field();
    let complement: Vec<usize> = (0..ring.nvars()).filter(|i| !prime.indices.contains(i)).collect();
    let old_t = field.alpha();
    let mut names = field.transcendentals().to_vec();
    names.extend(complement.iter().map(|&i| ring.vars()[i].clone()));
    let tcount = names.len();
    let new_field = RationalFunctionField::new(field.characteristic(), names)?;
    let order = match ring.order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        _ => MonomialOrder::Grevlex,
    };
    let local = Ring::new(new_field, prime.names.clone(), order)?;

    let generators = ideal
        .generators
        .iter()
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let coeff = field.to_rational(c).extend_vars(complement.len());
                    let mut texps = vec![0u32; tcount];
                    for (k, &i) in complement.iter().enumerate() {
                        texps[old_t + k] = m.exps()[i] as u32;
                    }
                    let unit = local.field().from_poly(TPoly::monomial(1, texps));
                    let kept: Vec<u16> = prime.indices.iter().map(|&i| m.exps()[i]).collect();
                    (Monomial::new(&kept), local.field().mul(&coeff, &unit))
                })
                .collect();
            local.make_monic(&local.from_terms(terms))
        })
        .collect();
    Ok((local, IdealPresentation::new(generators)))
}

/// `s_e(R_P)`, with `dim` and `α` read in the localized ring.
pub fn s_e_at_prime<F: Field>(
    ring: &Ring<F>,
    ideal: &IdealPresentation<F>,
    prime: &CoordinatePrime,
    e: u32,
    config: &Config,
) -> Result<SplittingReport> {
    let (local, li) = localize_at_coordinate_prime(ring, ideal, prime)?;
    normalized_splitting_number(&local, &li, e, config)
}

/// A sampled prime with its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeValue {
    pub prime: String,
    pub variables: Vec<String>,
    pub report: SplittingReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub e: u32,
    pub values: Vec<PrimeValue>,
    pub holds: bool,
}

/// `s_e(P_i) >= s_e(P_{i+1})` along the chain.
pub fn check_localization_monotonicity<F: Field>(
    ring: &Ring<F>,
    ideal: &IdealPresentation<F>,
    chain: &PrimeChain,
    e: u32,
    assumptions: Assumptions,
    config: &Config,
) -> Result<MonotonicityReport> {
    if !assumptions.equidimensional {
        return Err(Error::MissingAssumption("equidimensional"));
    }
    let values = evaluate(ring, ideal, chain.primes(), e, config)?;
    let holds = values.windows(2).all(|w| w[0].report.s_e >= w[1].report.s_e);
    Ok(MonotonicityReport { e, values, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunzEntry {
    pub prime: String,
    pub dim: usize,
    pub alpha: usize,
    pub sum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunzReport {
    pub entries: Vec<KunzEntry>,
    pub constant: bool,
}

impl KunzReport {
    fn from_entries(entries: Vec<KunzEntry>) -> Self {
        let constant = entries.windows(2).all(|w| w[0].sum == w[1].sum);
        KunzReport { entries, constant }
    }

    pub fn value(&self) -> Option<usize> {
        self.constant.then(|| self.entries.first().map(|k| k.sum)).flatten()
    }
}

/// `dim R_P + α(R_P)` for every sampled prime.
pub fn check_kunz_constancy<F: Field>(
    ring: &Ring<F>,
    ideal: &IdealPresentation<F>,
    primes: &[CoordinatePrime],
    assumptions: Assumptions,
) -> Result<KunzReport> {
    if !assumptions.equidimensional {
        return Err(Error::MissingAssumption("equidimensional"));
    }
    if !assumptions.connected {
        return Err(Error::MissingAssumption("connected"));
    }
    let entries = primes
        .iter()
        .map(|p| kunz_entry(ring, ideal, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(KunzReport::from_entries(entries))
}

fn kunz_entry<F: Field>(ring: &Ring<F>, ideal: &IdealPresentation<F>, prime: &CoordinatePrime) -> Result<KunzEntry> {
    let (local, li) = localize_at_coordinate_prime(ring, ideal, prime)?;
    let gb = crate::groebner::buchberger(&local, &li)?;
    let dim = crate::artinian::krull_dimension(&local, &gb).ok_or(Error::UnitIdeal)?;
    let alpha = local.field().alpha();
    Ok(KunzEntry {
        prime: prime.label(),
        dim,
        alpha,
        sum: dim + alpha,
    })
}

fn evaluate<F: Field>(
    ring: &Ring<F>,
    ideal: &IdealPresentation<F>,
    primes: &[CoordinatePrime],
    e: u32,
    config: &Config,
) -> Result<Vec<PrimeValue>> {
    primes
        .par_iter()
        .map(|p| {
            Ok(PrimeValue {
                prime: p.label(),
                variables: p.names().to_vec(),
                report: s_e_at_prime(ring, ideal, p, e, config)?,
            })
        })
        .collect()
}

/// Verdict for one threshold `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdVerdict {
    #[serde(with = "rational_string")]
    pub r: BigRational,
    /// Labels of `{P : s_e(P) > r}`.
    pub above: Vec<String>,
    pub above_closed: bool,
    /// Labels of `{P : s_e(P) >= r}`.
    pub at_least: Vec<String>,
    pub at_least_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemicontinuityReport {
    pub e: u32,
    pub values: Vec<PrimeValue>,
    pub thresholds: Vec<ThresholdVerdict>,
    pub kunz: KunzReport,
    pub pass: bool,
}

fn generization_closed(values: &[PrimeValue], member: &[bool]) -> bool {
    let vars: Vec<&[String]> = values.iter().map(|v| v.variables.as_slice()).collect();
    let subset = |a: &[String], b: &[String]| a.iter().all(|x| b.contains(x));
    (0..values.len()).all(|q| {
        !member[q] || (0..values.len()).all(|p| !subset(vars[p], vars[q]) || member[p])
    })
}

fn verdicts(values: &[PrimeValue], thresholds: &[BigRational]) -> Vec<ThresholdVerdict> {
    thresholds
        .iter()
        .map(|r| {
            let above: Vec<bool> = values.iter().map(|v| &v.report.s_e > r).collect();
            let at_least: Vec<bool> = values.iter().map(|v| &v.report.s_e >= r).collect();
            let labels = |m: &[bool]| {
                values
                    .iter()
                    .zip(m)
                    .filter(|(_, &b)| b)
                    .map(|(v, _)| v.prime.clone())
                    .collect()
            };
            ThresholdVerdict {
                r: r.clone(),
                above: labels(&above),
                above_closed: generization_closed(values, &above),
                at_least: labels(&at_least),
                at_least_closed: generization_closed(values, &at_least),
            }
        })
        .collect()
}

impl SemicontinuityReport {
    fn assemble(e: u32, values: Vec<PrimeValue>, thresholds: &[BigRational]) -> Self {
        let thresholds = verdicts(&values, thresholds);
        let kunz = KunzReport::from_entries(
            values
                .iter()
                .map(|v| KunzEntry {
                    prime: v.prime.clone(),
                    dim: v.report.dim,
                    alpha: v.report.alpha,
                    sum: v.report.dim + v.report.alpha,
                })
                .collect(),
        );
        let pass = thresholds.iter().all(|t| t.above_closed && t.at_least_closed);
        SemicontinuityReport {
            e,
            values,
            thresholds,
            kunz,
            pass,
        }
    }

    /// Recomputes every verdict from the raw values and compares.
    pub fn is_consistent(&self) -> bool {
        let rs: Vec<BigRational> = self.thresholds.iter().map(|t| t.r.clone()).collect();
        *self == Self::assemble(self.e, self.values.clone(), &rs)
    }

    pub fn value_at(&self, label: &str) -> Option<&BigRational> {
        self.values.iter().find(|v| v.prime == label).map(|v| &v.report.s_e)
    }

    /// The common value of `s_e` over sampled primes containing `base`, if
    /// there is one.
    pub fn constant_above(&self, base: &CoordinatePrime) -> Option<BigRational> {
        let mut vals = self
            .values
            .iter()
            .filter(|v| base.names().iter().all(|x| v.variables.contains(x)))
            .map(|v| &v.report.s_e);
        let first = vals.next()?.clone();
        vals.all(|v| *v == first).then_some(first)
    }
}

/// Evaluates `s_e` on every sampled prime and checks that `{s_e > r}` and
/// `{s_e >= r}` are closed under generization inside the sample.
pub fn semicontinuity_scan<F: Field>(
    ring: &Ring<F>,
    ideal: &IdealPresentation<F>,
    primes: &[CoordinatePrime],
    e: u32,
    thresholds: &[BigRational],
    config: &Config,
) -> Result<SemicontinuityReport> {
    let values = evaluate(ring, ideal, primes, e, config)?;
    Ok(SemicontinuityReport::assemble(e, values, thresholds))
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| serde::de::Error::custom("bad rational"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use num_bigint::BigInt;
    use num_traits::One;

    fn ring(p: u64, n: usize) -> Ring<PrimeField> {
        let names = ["x", "y", "z"];
        Ring::new(
            PrimeField::new(p).unwrap(),
            names[..n].iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    fn node3() -> (Ring<PrimeField>, IdealPresentation<PrimeField>) {
        let r = ring(2, 3);
        let xy = r.monomial(Monomial::new(&[1, 1, 0]));
        (r, IdealPresentation::new(vec![xy]))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn prime(r: &Ring<PrimeField>, i: &IdealPresentation<PrimeField>, names: &[&str]) -> CoordinatePrime {
        CoordinatePrime::containing(r, names, i).unwrap()
    }

    #[test]
    fn localization_examples() {
        let (r, i) = node3();
        let (l, li) = localize_at_coordinate_prime(&r, &i, &prime(&r, &i, &["x", "y"])).unwrap();
        assert_eq!(l.vars(), ["x", "y"]);
        assert_eq!(l.field().transcendentals(), ["z"]);
        assert_eq!(li.format(&l), "(x*y)");

        let (l, li) = localize_at_coordinate_prime(&r, &i, &prime(&r, &i, &["z", "x"])).unwrap();
        assert_eq!(l.vars(), ["x", "z"]);
        assert_eq!(l.field().transcendentals(), ["y"]);
        assert_eq!(li.format(&l), "(x)");

        let (l, li) = localize_at_coordinate_prime(&r, &i, &prime(&r, &i, &["x", "y", "z"])).unwrap();
        assert_eq!(l.vars(), r.vars());
        assert!(l.field().transcendentals().is_empty());
        assert_eq!(li.format(&l), i.format(&r));
    }

    #[test]
    fn not_containing() {
        let (r, i) = node3();
        assert!(matches!(
            CoordinatePrime::containing(&r, &["z"], &i),
            Err(Error::NotContaining { .. })
        ));
        let p = CoordinatePrime::new(&r, &["z"]).unwrap();
        assert!(matches!(
            localize_at_coordinate_prime(&r, &i, &p),
            Err(Error::NotContaining { .. })
        ));
        assert!(matches!(CoordinatePrime::new(&r, &["w"]), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn values_at_primes() {
        let (r, i) = node3();
        let c = Config::default();
        let top = s_e_at_prime(&r, &i, &prime(&r, &i, &["x", "y", "z"]), 1, &c).unwrap();
        assert_eq!((top.length.clone(), top.dim, top.s_e.clone()), (2u32.into(), 2, rat(1, 2)));
        let xy = s_e_at_prime(&r, &i, &prime(&r, &i, &["x", "y"]), 1, &c).unwrap();
        assert_eq!((xy.s_e.clone(), xy.alpha), (rat(1, 2), 1));
        let xz = s_e_at_prime(&r, &i, &prime(&r, &i, &["x", "z"]), 1, &c).unwrap();
        assert!(xz.s_e.is_one());
        let direct = normalized_splitting_number(&r, &i, 1, &c).unwrap();
        assert_eq!(direct, top);
    }

    #[test]
    fn monotonicity_examples() {
        let (r, i) = node3();
        let a = Assumptions {
            equidimensional: true,
            connected: true,
        };
        let c = Config::default();
        for (chain, expected) in [
            (vec![&["x"][..], &["x", "z"]], vec![rat(1, 1), rat(1, 1)]),
            (vec![&["x"][..], &["x", "y", "z"]], vec![rat(1, 1), rat(1, 2)]),
            (vec![&["x", "y"][..], &["x", "y", "z"]], vec![rat(1, 2), rat(1, 2)]),
        ] {
            let chain = PrimeChain::new(chain.iter().map(|n| prime(&r, &i, n)).collect()).unwrap();
            let rep = check_localization_monotonicity(&r, &i, &chain, 1, a, &c).unwrap();
            assert!(rep.holds);
            let got: Vec<_> = rep.values.iter().map(|v| v.report.s_e.clone()).collect();
            assert_eq!(got, expected);
        }
        let chain = PrimeChain::new(vec![prime(&r, &i, &["x"])]).unwrap();
        assert!(matches!(
            check_localization_monotonicity(&r, &i, &chain, 1, Assumptions::default(), &c),
            Err(Error::MissingAssumption("equidimensional"))
        ));
    }

    #[test]
    fn chain_validation() {
        let (r, i) = node3();
        let bad = PrimeChain::new(vec![prime(&r, &i, &["x", "y"]), prime(&r, &i, &["x", "z"])]);
        assert!(matches!(bad, Err(Error::InvalidChain(_))));
        let eq = PrimeChain::new(vec![prime(&r, &i, &["x"]), prime(&r, &i, &["x"])]);
        assert!(matches!(eq, Err(Error::InvalidChain(_))));
    }

    #[test]
    fn kunz_examples() {
        let a = Assumptions {
            equidimensional: true,
            connected: true,
        };
        let (r, i) = node3();
        let ps: Vec<_> = [&["x"][..], &["x", "y"], &["x", "y", "z"]]
            .iter()
            .map(|n| prime(&r, &i, n))
            .collect();
        let rep = check_kunz_constancy(&r, &i, &ps, a).unwrap();
        assert_eq!(rep.value(), Some(2));
        let dims: Vec<_> = rep.entries.iter().map(|k| (k.dim, k.alpha)).collect();
        assert_eq!(dims, vec![(0, 2), (1, 1), (2, 0)]);

        let r2 = ring(3, 2);
        let z = IdealPresentation::zero();
        let ps: Vec<_> = [&["x"][..], &["x", "y"]].iter().map(|n| prime(&r2, &z, n)).collect();
        assert_eq!(check_kunz_constancy(&r2, &z, &ps, a).unwrap().value(), Some(2));
        assert_eq!(check_kunz_constancy(&r2, &z, &ps[..1], a).unwrap().value(), Some(2));
        assert!(matches!(
            check_kunz_constancy(&r2, &z, &ps, Assumptions { equidimensional: true, connected: false }),
            Err(Error::MissingAssumption("connected"))
        ));
    }

    #[test]
    fn scan_examples() {
        let (r, i) = node3();
        let ps: Vec<_> = [&["x"][..], &["x", "z"], &["x", "y"], &["x", "y", "z"]]
            .iter()
            .map(|n| prime(&r, &i, n))
            .collect();
        let rep = semicontinuity_scan(&r, &i, &ps, 1, &[rat(3, 4), rat(0, 1)], &Config::default()).unwrap();
        let vals: Vec<_> = rep.values.iter().map(|v| v.report.s_e.clone()).collect();
        assert_eq!(vals, vec![rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 2)]);
        assert_eq!(rep.thresholds[0].above, vec!["(x)", "(x,z)"]);
        assert_eq!(rep.thresholds[1].above.len(), 4);
        assert!(rep.pass && rep.is_consistent());
        assert!(rep.kunz.constant);
        assert_eq!(rep.constant_above(&prime(&r, &i, &["x", "y"])), Some(rat(1, 2)));

        let z = IdealPresentation::zero();
        let ps: Vec<_> = [&["y"][..], &["x", "y"]].iter().map(|n| prime(&r, &z, n)).collect();
        let rep = semicontinuity_scan(&r, &z, &ps, 1, &[rat(1, 2)], &Config::default()).unwrap();
        assert_eq!(rep.thresholds[0].above.len(), 2);
        assert!(rep.pass);
    }

    #[test]
    fn closure_detects_violation() {
        let (r, i) = node3();
        let small = prime(&r, &i, &["x"]);
        let big = prime(&r, &i, &["x", "y"]);
        let mk = |p: &CoordinatePrime, s: BigRational| PrimeValue {
            prime: p.label(),
            variables: p.names().to_vec(),
            report: SplittingReport {
                e: 1,
                q: 2,
                length: 1u32.into(),
                dim: 0,
                alpha: 0,
                s_e: s,
                a_e: None,
            },
        };
        let values = vec![mk(&small, rat(1, 4)), mk(&big, rat(1, 2))];
        let rep = SemicontinuityReport::assemble(1, values, &[rat(1, 3)]);
        assert!(!rep.thresholds[0].above_closed);
        assert!(!rep.pass);
    }

    #[test]
    fn report_round_trip() {
        let (r, i) = node3();
        let ps = vec![prime(&r, &i, &["x"]), prime(&r, &i, &["x", "y", "z"])];
        let rep = semicontinuity_scan(&r, &i, &ps, 1, &[rat(1, 2)], &Config::default()).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        let back: SemicontinuityReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
        assert!(json.contains("\"r\":\"1/2\""));
    }
}
