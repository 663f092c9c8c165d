//! Normalized Frobenius splitting numbers `s_e(R)` of `R = S/I` localized at
//! the origin, for `S` a polynomial ring over `F_p` or `F_p(t..)`.
//!
//! With `n = (x_1, ..., x_n)`, `q = p^e` and `K = I^[q] : I`,
//!
//! ```text
//! s_e(R) * q^dim(R) = λ(S / (n^[q] : K)) = λ((K + n^[q]) / n^[q]).
//! ```
//!
//! Both lengths are computed independently and must agree. For Gorenstein
//! rings a second route through a socle generator `u` of `R/(x)` is
//! available: `s_e(R) * q^d = λ(R u^q + (x)^[q] / (x)^[q])`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::artinian::{is_artinian, krull_dimension, length};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, ideal_member, normal_form, IdealPresentation, ReducedGB};
use crate::ideal::{bracket_power_of_maximal, colon_gb, frobenius_power, ideal_sum};
use crate::poly::{Polynomial, Ring};

/// Default ceiling on `q^n`.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest admissible `q^n` (the size of the monomial box `[0, q)^n`).
    pub budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Config {
    pub fn with_budget(budget: u64) -> Self {
        Config { budget }
    }

    fn guard<F: Field>(&self, ring: &Ring<F>, e: u32) -> Result<u32> {
        let q = ring.q(e)?;
        let box_size = BigUint::from(q).pow(ring.nvars() as u32);
        if box_size > BigUint::from(self.budget) {
            return Err(Error::CostGuardExceeded {
                required: box_size.to_string(),
                budget: self.budget,
                partial: None,
            });
        }
        Ok(q)
    }
}

/// One evaluation of `s_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub e: u32,
    pub q: u64,
    /// `λ = s_e * q^dim`.
    pub length: BigUint,
    pub dim: usize,
    pub alpha: usize,
    pub s_e: BigRational,
    /// `s_e * q^(dim + alpha)`.
    pub a_e: Option<BigUint>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    e: u32,
    q: u64,
    lambda: String,
    dim: usize,
    alpha: usize,
    s_e: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a_e: Option<String>,
}

impl Serialize for SplittingReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            e: self.e,
            q: self.q,
            lambda: self.length.to_string(),
            dim: self.dim,
            alpha: self.alpha,
            s_e: self.s_e.to_string(),
            a_e: self.a_e.as_ref().map(|a| a.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SplittingReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ReportJson::deserialize(d)?;
        let length = j.lambda.parse().map_err(D::Error::custom)?;
        let s_e = j.s_e.parse().map_err(|_| D::Error::custom("bad rational s_e"))?;
        let a_e = j
            .a_e
            .map(|a| a.parse().map_err(D::Error::custom))
            .transpose()?;
        Ok(SplittingReport {
            e: j.e,
            q: j.q,
            length,
            dim: j.dim,
            alpha: j.alpha,
            s_e,
            a_e,
        })
    }
}

impl SplittingReport {
    fn new(e: u32, q: u32, length: BigUint, dim: usize, alpha: usize) -> Result<Self> {
        let qd = BigUint::from(q).pow(dim as u32);
        let s_e = BigRational::new(length.clone().into(), qd.into());
        let qa = BigUint::from(q).pow(alpha as u32);
        let a_e = &length * &qa;
        // a_e = s_e q^(d+α) must be an integer (it counts free summands)
        let check = &s_e * BigRational::from_integer(BigUint::from(q).pow((dim + alpha) as u32).into());
        if !check.is_integer() || check.to_integer() != a_e.clone().into() {
            return Err(Error::InternalInconsistency(format!(
                "a_e = {check} is not the integer {a_e}"
            )));
        }
        if s_e > BigRational::one() {
            log::warn!("noteworthy: s_{e} = {s_e} exceeds 1");
        }
        Ok(SplittingReport {
            e,
            q: q as u64,
            length,
            dim,
            alpha,
            s_e,
            a_e: Some(a_e),
        })
    }
}

/// `s_e` for `e = 0..=e_max`, with tail extremes standing in for `s^+` and `s^-`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureEstimate {
    pub reports: Vec<SplittingReport>,
    /// max of `s_e` over `1 <= e <= e_max`.
    #[serde(with = "opt_rational")]
    pub tail_max: Option<BigRational>,
    /// min of `s_e` over `1 <= e <= e_max`.
    #[serde(with = "opt_rational")]
    pub tail_min: Option<BigRational>,
    /// Every `s_e` with `1 <= e <= e_max` is positive.
    pub positive: bool,
}

mod opt_rational {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|r| r.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        v.map(|s| s.parse().map_err(|_| serde::de::Error::custom("bad rational")))
            .transpose()
    }
}

impl SignatureEstimate {
    fn from_reports(reports: Vec<SplittingReport>) -> Self {
        let tail: Vec<&BigRational> = reports.iter().filter(|r| r.e >= 1).map(|r| &r.s_e).collect();
        SignatureEstimate {
            tail_max: tail.iter().max().map(|r| (*r).clone()),
            tail_min: tail.iter().min().map(|r| (*r).clone()),
            positive: tail.iter().all(|r| r.is_positive()),
            reports,
        }
    }
}

/// The colon ideals behind one evaluation.
pub struct SplittingIdeals<F: Field> {
    /// `K = I^[q] : I`.
    pub k: ReducedGB<F>,
    /// `J = n^[q] : K`.
    pub j: ReducedGB<F>,
    /// `n^[q]`.
    pub bracket_maximal: ReducedGB<F>,
}

fn require_at_origin<F: Field>(ring: &Ring<F>, i: &IdealPresentation<F>) -> Result<()> {
    i.check(ring)?;
    if i.generators.iter().all(|g| g.vanishes_at_origin()) {
        Ok(())
    } else {
        Err(Error::NotAtOrigin)
    }
}

/// Computes `K = I^[q] : I` and `J = n^[q] : K`, with `0^[q] : 0 = S`.
pub fn splitting_ideals<F: Field>(ring: &Ring<F>, i: &IdealPresentation<F>, e: u32) -> Result<SplittingIdeals<F>> {
    require_at_origin(ring, i)?;
    let nq = buchberger(ring, &bracket_power_of_maximal(ring, e)?)?;
    let gens = IdealPresentation::new(i.generators.iter().filter(|g| !g.is_zero()).cloned().collect());
    let k = if gens.is_zero() {
        buchberger(ring, &IdealPresentation::new(vec![ring.one()]))?
    } else {
        let iq = buchberger(ring, &frobenius_power(ring, &gens, e)?)?;
        colon_gb(ring, &iq, &gens)?
    };
    let j = if k.is_unit_ideal() {
        nq.clone()
    } else {
        colon_gb(ring, &nq, &k.to_ideal())?
    };
    Ok(SplittingIdeals {
        k,
        j,
        bracket_maximal: nq,
    })
}

/// Gröbner basis of `n^[q] : (I^[q] : I)`.
pub fn splitting_ideal<F: Field>(ring: &Ring<F>, i: &IdealPresentation<F>, e: u32) -> Result<ReducedGB<F>> {
    Ok(splitting_ideals(ring, i, e)?.j)
}

fn dual_length_from<F: Field>(ring: &Ring<F>, ideals: &SplittingIdeals<F>) -> Result<BigUint> {
    let sum = ideal_sum(ring, &ideals.k.to_ideal(), &ideals.bracket_maximal.to_ideal())?;
    let quotient = length(ring, &buchberger(ring, &sum)?)?;
    let full = length(ring, &ideals.bracket_maximal)?;
    Ok(full - quotient)
}

/// `λ((K + n^[q]) / n^[q]) = q^n - λ(S / (K + n^[q]))`.
pub fn dual_splitting_length<F: Field>(ring: &Ring<F>, i: &IdealPresentation<F>, e: u32) -> Result<BigUint> {
    dual_length_from(ring, &splitting_ideals(ring, i, e)?)
}

fn dimension<F: Field>(ring: &Ring<F>, i: &IdealPresentation<F>) -> Result<usize> {
    krull_dimension(ring, &buchberger(ring, i)?).ok_or(Error::UnitIdeal)
}

/// `s_e(R)` at the origin, cross-checked against the dual length.
pub fn normalized_splitting_number<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    e: u32,
    config: &Config,
) -> Result<SplittingReport> {
    let q = config.guard(ring, e)?;
    require_at_origin(ring, i)?;
    let dim = dimension(ring, i)?;
    let ideals = splitting_ideals(ring, i, e)?;
    let primal = length(ring, &ideals.j)?;
    let dual = dual_length_from(ring, &ideals)?;
    if primal != dual {
        return Err(Error::InternalInconsistency(format!(
            "λ(S/(n^[q]:K)) = {primal} but λ((K+n^[q])/n^[q]) = {dual} at e = {e}"
        )));
    }
    SplittingReport::new(e, q, primal, dim, ring.field().alpha())
}

/// `R` is regular at the origin iff `s_e = 1` for some (any) `e >= 1`.
pub fn regularity_test<F: Field>(ring: &Ring<F>, i: &IdealPresentation<F>, e: u32, config: &Config) -> Result<bool> {
    if e == 0 {
        return Err(Error::InvalidArgument("regularity test needs e >= 1".into()));
    }
    Ok(normalized_splitting_number(ring, i, e, config)?.s_e.is_one())
}

/// Hypersurface F-purity at level `e`: `f^(q-1) ∉ n^[q]`, checked directly
/// on the expanded power (a term with every exponent below `q` survives).
pub fn hypersurface_fpure<F: Field>(ring: &Ring<F>, f: &Polynomial<F>, e: u32) -> Result<bool> {
    let q = ring.q(e)?;
    let power = ring.pow(f, q as u64 - 1)?;
    Ok(power
        .terms()
        .iter()
        .any(|(m, _)| m.exps().iter().all(|&x| (x as u32) < q)))
}

/// `x^k` modulo the ideal of `gb`, by repeated squaring.
fn power_mod<F: Field>(ring: &Ring<F>, x: &Polynomial<F>, mut k: u64, gb: &ReducedGB<F>) -> Result<Polynomial<F>> {
    let mut acc = normal_form(ring, &ring.one(), gb)?;
    let mut base = normal_form(ring, x, gb)?;
    while k > 0 {
        if k & 1 == 1 {
            acc = normal_form(ring, &ring.mul(&acc, &base)?, gb)?;
        }
        k >>= 1;
        if k > 0 {
            base = normal_form(ring, &ring.mul(&base, &base)?, gb)?;
        }
    }
    Ok(acc)
}

/// The Artinian algebra `S/A` is local with maximal ideal `n`: every
/// variable is nilpotent modulo `A` (nilpotency index is at most `λ(S/A)`).
fn supported_at_origin<F: Field>(ring: &Ring<F>, gb: &ReducedGB<F>) -> Result<bool> {
    let len = length(ring, gb)?;
    let Ok(len) = u64::try_from(&len) else {
        return Err(Error::CostGuardExceeded {
            required: len.to_string(),
            budget: u64::MAX,
            partial: None,
        });
    };
    for v in 0..ring.nvars() {
        if !power_mod(ring, &ring.var(v), len, gb)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of `I + (sop)` after checking it is Artinian and local at the origin.
fn parameter_quotient<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    sop: &[Polynomial<F>],
) -> Result<ReducedGB<F>> {
    require_at_origin(ring, i)?;
    let sop_ideal = IdealPresentation::new(sop.to_vec());
    require_at_origin(ring, &sop_ideal)?;
    let gb = buchberger(ring, &ideal_sum(ring, i, &sop_ideal)?)?;
    if !is_artinian(ring, &gb) {
        return Err(Error::NotArtinian);
    }
    if gb.is_unit_ideal() {
        return Err(Error::NotAtOrigin);
    }
    if !supported_at_origin(ring, &gb)? {
        return Err(Error::NotLocalAtOrigin);
    }
    Ok(gb)
}

/// `(A : n)` and the socle dimension `λ(S/A) - λ(S/(A : n))`.
fn socle<F: Field>(ring: &Ring<F>, a: &ReducedGB<F>) -> Result<(ReducedGB<F>, u64)> {
    let annihilator = colon_gb(ring, a, &IdealPresentation::maximal(ring))?;
    let dim = length(ring, a)? - length(ring, &annihilator)?;
    let dim = u64::try_from(dim).map_err(|_| Error::InternalInconsistency("socle dimension overflow".into()))?;
    Ok((annihilator, dim))
}

/// A lift `u` of a generator of the one-dimensional socle of `S/(I + (sop))`,
/// returned in normal form.
pub fn socle_generator<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    sop: &[Polynomial<F>],
) -> Result<Polynomial<F>> {
    let a = parameter_quotient(ring, i, sop)?;
    socle_generator_of(ring, &a)
}

fn socle_generator_of<F: Field>(ring: &Ring<F>, a: &ReducedGB<F>) -> Result<Polynomial<F>> {
    let (annihilator, dim) = socle(ring, a)?;
    if dim != 1 {
        return Err(Error::NotGorenstein { socle_dimension: dim });
    }
    for g in annihilator.basis() {
        let nf = normal_form(ring, g, a)?;
        if !nf.is_zero() {
            return Ok(ring.make_monic(&nf));
        }
    }
    Err(Error::InternalInconsistency("socle is nonzero but no generator found".into()))
}

/// `s_e` through a socle generator of `R/(sop)`; `u` defaults to
/// [`socle_generator`]. Requires `R` Gorenstein at the origin.
pub fn gorenstein_splitting_number<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    sop: &[Polynomial<F>],
    e: u32,
    u: Option<&Polynomial<F>>,
    config: &Config,
) -> Result<SplittingReport> {
    let q = config.guard(ring, e)?;
    let dim = dimension(ring, i)?;
    if sop.len() != dim {
        return Err(Error::InvalidSop {
            expected: dim,
            got: sop.len(),
        });
    }
    let a = parameter_quotient(ring, i, sop)?;
    let u = match u {
        None => socle_generator_of(ring, &a)?,
        Some(u) => {
            ring.check(u)?;
            let (_, socle_dim) = socle(ring, &a)?;
            if socle_dim != 1 {
                return Err(Error::NotGorenstein {
                    socle_dimension: socle_dim,
                });
            }
            let in_socle = (0..ring.nvars())
                .map(|v| ideal_member(ring, &ring.mul(&ring.var(v), u)?, &a))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            if ideal_member(ring, u, &a)? || !in_socle {
                return Err(Error::InvalidSocleHint);
            }
            u.clone()
        }
    };
    let sop_q = frobenius_power(ring, &IdealPresentation::new(sop.to_vec()), e)?;
    let base = buchberger(ring, &ideal_sum(ring, i, &sop_q)?)?;
    let uq = ring.frobenius(&u, e)?;
    let colon = colon_gb(ring, &base, &IdealPresentation::new(vec![uq]))?;
    let len = length(ring, &colon)?;
    SplittingReport::new(e, q, len, dim, ring.field().alpha())
}

/// `s_0, ..., s_{e_max}`. On a cost-guard failure the error carries the
/// reports computed so far.
pub fn f_signature_sequence<F: Field>(
    ring: &Ring<F>,
    i: &IdealPresentation<F>,
    e_max: u32,
    config: &Config,
) -> Result<SignatureEstimate> {
    if e_max == 0 {
        return Err(Error::InvalidArgument("e_max must be positive".into()));
    }
    let mut reports = Vec::with_capacity(e_max as usize + 1);
    for e in 0..=e_max {
        match normalized_splitting_number(ring, i, e, config) {
            Ok(r) => reports.push(r),
            Err(Error::CostGuardExceeded { required, budget, .. }) => {
                return Err(Error::CostGuardExceeded {
                    required,
                    budget,
                    partial: Some(Box::new(SignatureEstimate::from_reports(reports))),
                })
            }
            Err(err) => return Err(err),
        }
    }
    Ok(SignatureEstimate::from_reports(reports))
}

/// `s_e` as an exact rational `num/den` string.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        r.to_string()
    }
}
