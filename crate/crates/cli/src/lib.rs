//! Ring-spec parsing and the commands behind the `fsplit` binary.

pub mod expr;
pub mod spec;

use std::fmt::Write as _;

use fsplit_core::oracle::{oracle_dual_splitting_length, oracle_length_mod_bracket};
use fsplit_core::probe::{KunzReport, MonotonicityReport};
use fsplit_core::splitting::format_rational;
use fsplit_core::{
    check_kunz_constancy, check_localization_monotonicity, f_signature_sequence, gorenstein_splitting_number,
    normalized_splitting_number, semicontinuity_scan, Assumptions, BigRational, Config, CoordinatePrime, Error,
    Field, IdealPresentation, MonomialOrder, PrimeChain, PrimeField, RationalFunctionField, Ring, SemicontinuityReport,
    SignatureEstimate, SplittingReport,
};
use serde::Serialize;

use crate::expr::{eval, EvalError, Expr};
use crate::spec::{parse_expr_list, parse_prime_list, parse_ring_spec, ParseError, RingSpec, SpecError};

pub const SCHEMA: &str = "fsplit/1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 1 usage, 2 mathematical precondition, 3 budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            CliError::Core(e) if e.is_budget() => 3,
            CliError::Core(_) => 2,
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Parse(p) => CliError::Parse(p),
            SpecError::Core(c) => CliError::Core(c),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Parse(p) => CliError::Parse(p),
            EvalError::Core(c) => CliError::Core(c),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Command {
    Se { e: Option<u32>, emax: Option<u32> },
    Probe { primes: Option<String>, e: u32, thresholds: String, kunz: bool },
    Gorenstein { sop: Option<String>, socle: Option<String>, e: u32 },
    Oracle { e: u32, budget: u128 },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Se { .. } => "se",
            Command::Probe { .. } => "probe",
            Command::Gorenstein { .. } => "gorenstein",
            Command::Oracle { .. } => "oracle",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub config: Config,
    /// Seconds since the epoch, or `None` to leave the field out.
    pub timestamp: Option<u64>,
}

/// `FSPLIT_BUDGET`, if set, replaces the default cost budget.
pub fn config_from_env(value: Option<&str>) -> Result<Config, CliError> {
    match value {
        None => Ok(Config::default()),
        Some(v) => v
            .trim()
            .parse::<u64>()
            .map(Config::with_budget)
            .map_err(|_| CliError::Usage(format!("FSPLIT_BUDGET must be a nonnegative integer, got '{v}'"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub scan: SemicontinuityReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub monotonicity: Vec<MonotonicityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kunz: Option<KunzReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub e: u32,
    pub q: u64,
    pub length_mod_bracket: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_splitting_length: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Output {
    Report(SplittingReport),
    Estimate(SignatureEstimate),
    Probe(ProbeResult),
    Oracle(OracleResult),
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub ring: String,
    pub ideal: String,
    pub result: Output,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} / {}", self.ring, self.ideal);
        match &self.result {
            Output::Report(r) => report_table(&mut out, std::slice::from_ref(r)),
            Output::Estimate(est) => {
                report_table(&mut out, &est.reports);
                let show = |r: &Option<BigRational>| r.as_ref().map_or("-".into(), format_rational);
                let _ = writeln!(out, "tail max {}  tail min {}", show(&est.tail_max), show(&est.tail_min));
            }
            Output::Probe(p) => {
                let _ = writeln!(out, "{:<14} {:>10} {:>4} {:>6}", "prime", "s_e", "dim", "alpha");
                for v in &p.scan.values {
                    let _ = writeln!(
                        out,
                        "{:<14} {:>10} {:>4} {:>6}",
                        v.prime,
                        format_rational(&v.report.s_e),
                        v.report.dim,
                        v.report.alpha
                    );
                }
                for t in &p.scan.thresholds {
                    let _ = writeln!(
                        out,
                        "r = {:<8} s_e > r: {:<5} s_e >= r: {:<5}",
                        format_rational(&t.r),
                        t.above_closed,
                        t.at_least_closed
                    );
                }
                for m in &p.monotonicity {
                    let chain: Vec<&str> = m.values.iter().map(|v| v.prime.as_str()).collect();
                    let _ = writeln!(out, "chain {}: monotone {}", chain.join(" < "), m.holds);
                }
                if let Some(k) = &p.kunz {
                    let _ = writeln!(out, "dim + alpha constant: {}", k.constant);
                }
                let _ = writeln!(out, "verdict: {}", if p.scan.pass { "pass" } else { "fail" });
            }
            Output::Oracle(o) => {
                let _ = writeln!(out, "e = {}  q = {}", o.e, o.q);
                let _ = writeln!(out, "length mod n^[q]: {}", o.length_mod_bracket);
                if let Some(d) = &o.dual_splitting_length {
                    let _ = writeln!(out, "dual splitting length: {d}");
                }
            }
        }
        out
    }
}

fn report_table(out: &mut String, reports: &[SplittingReport]) {
    let _ = writeln!(out, "{:>3} {:>8} {:>12} {:>4} {:>6} {:>14} {:>12}", "e", "q", "lambda", "dim", "alpha", "s_e", "a_e");
    for r in reports {
        let a = r.a_e.as_ref().map_or("-".into(), |a| a.to_string());
        let _ = writeln!(
            out,
            "{:>3} {:>8} {:>12} {:>4} {:>6} {:>14} {:>12}",
            r.e,
            r.q,
            r.length,
            r.dim,
            r.alpha,
            format_rational(&r.s_e),
            a
        );
    }
}

fn evaluate_all<F: Field>(ring: &Ring<F>, es: &[Expr]) -> Result<Vec<fsplit_core::Polynomial<F>>, CliError> {
    es.iter().map(|e| Ok(eval(ring, e)?)).collect()
}

fn primes_of<F: Field>(
    ring: &Ring<F>,
    ideal: &IdealPresentation<F>,
    lists: &[Vec<String>],
) -> Result<Vec<CoordinatePrime>, CliError> {
    lists
        .iter()
        .map(|names| {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Ok(CoordinatePrime::containing(ring, &refs, ideal)?)
        })
        .collect()
}

fn parse_thresholds(text: &str) -> Result<Vec<BigRational>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigRational>()
                .map_err(|_| CliError::Usage(format!("invalid threshold '{}'", t.trim())))
        })
        .collect()
}

fn execute<F: Field>(
    ring: &Ring<F>,
    spec: &RingSpec,
    cmd: &Command,
    opts: &Options,
) -> Result<Output, CliError> {
    let ideal = IdealPresentation::new(evaluate_all(ring, &spec.ideal)?);
    let config = &opts.config;
    Ok(match cmd {
        Command::Se { e: Some(e), emax: None } => Output::Report(normalized_splitting_number(ring, &ideal, *e, config)?),
        Command::Se { e: None, emax: Some(m) } => Output::Estimate(f_signature_sequence(ring, &ideal, *m, config)?),
        Command::Se { .. } => return Err(CliError::Usage("give exactly one of --e and --emax".into())),
        Command::Probe {
            primes,
            e,
            thresholds,
            kunz,
        } => {
            let lists = match primes {
                Some(text) => parse_prime_list(text)?,
                None => spec.primes.clone(),
            };
            if lists.is_empty() {
                return Err(CliError::Usage("no primes given (use --primes or a 'primes' key)".into()));
            }
            let sample = primes_of(ring, &ideal, &lists)?;
            let rs = parse_thresholds(thresholds)?;
            let assumptions = Assumptions {
                equidimensional: spec.equidimensional,
                connected: spec.connected,
            };
            let scan = semicontinuity_scan(ring, &ideal, &sample, *e, &rs, config)?;
            let monotonicity = spec
                .chains
                .iter()
                .map(|c| {
                    let chain = PrimeChain::new(primes_of(ring, &ideal, c)?)?;
                    Ok(check_localization_monotonicity(ring, &ideal, &chain, *e, assumptions, config)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let kunz = if *kunz {
                Some(check_kunz_constancy(ring, &ideal, &sample, assumptions)?)
            } else {
                None
            };
            Output::Probe(ProbeResult {
                scan,
                monotonicity,
                kunz,
            })
        }
        Command::Gorenstein { sop, socle, e } => {
            let sop_exprs = match sop {
                Some(text) => parse_expr_list(text)?,
                None => spec
                    .sop
                    .clone()
                    .ok_or_else(|| CliError::Usage("no system of parameters (use --sop or a 'sop' key)".into()))?,
            };
            let sop = evaluate_all(ring, &sop_exprs)?;
            let socle_expr = match socle {
                Some(text) => Some(crate::expr::parse_expr(text, crate::spec::Pos::start())?),
                None => spec.socle.clone(),
            };
            let u = socle_expr.map(|x| eval(ring, &x)).transpose()?;
            Output::Report(gorenstein_splitting_number(ring, &ideal, &sop, *e, u.as_ref(), config)?)
        }
        Command::Oracle { .. } => unreachable!("handled over F_p"),
    })
}

fn oracle(ring: &Ring<PrimeField>, spec: &RingSpec, e: u32, budget: u128) -> Result<Output, CliError> {
    let ideal = IdealPresentation::new(evaluate_all(ring, &spec.ideal)?);
    let q = ring.q(e)? as u64;
    let lm = oracle_length_mod_bracket(ring, &ideal.generators, e, budget)?;
    let dual = match oracle_dual_splitting_length(ring, &ideal, e, budget) {
        Ok(d) => Some(d.to_string()),
        Err(Error::NotHomogeneous) => None,
        Err(err) => return Err(err.into()),
    };
    Ok(Output::Oracle(OracleResult {
        e,
        q,
        length_mod_bracket: lm.to_string(),
        dual_splitting_length: dual,
    }))
}

fn envelope<F: Field>(ring: &Ring<F>, spec: &RingSpec, cmd: &Command, opts: &Options) -> Result<Envelope, CliError> {
    let ideal = IdealPresentation::new(evaluate_all(ring, &spec.ideal)?);
    let result = match cmd {
        Command::Oracle { .. } => unreachable!(),
        _ => execute(ring, spec, cmd, opts)?,
    };
    Ok(Envelope {
        schema: SCHEMA,
        command: cmd.name(),
        timestamp: opts.timestamp,
        ring: format!("{}[{}]", ring.field().descriptor(), ring.vars().join(",")),
        ideal: ideal.format(ring),
        result,
    })
}

/// Parses `text` and runs `cmd` on it.
pub fn run(text: &str, cmd: &Command, opts: &Options) -> Result<Envelope, CliError> {
    let spec = parse_ring_spec(text)?;
    let p = spec.characteristic;
    if spec.transcendentals.is_empty() {
        let ring = Ring::new(PrimeField::new(p)?, spec.vars.clone(), MonomialOrder::Grevlex)?;
        if let Command::Oracle { e, budget } = cmd {
            let ideal = IdealPresentation::new(evaluate_all(&ring, &spec.ideal)?);
            return Ok(Envelope {
                schema: SCHEMA,
                command: cmd.name(),
                timestamp: opts.timestamp,
                ring: format!("{}[{}]", ring.field().descriptor(), ring.vars().join(",")),
                ideal: ideal.format(&ring),
                result: oracle(&ring, &spec, *e, *budget)?,
            });
        }
        envelope(&ring, &spec, cmd, opts)
    } else {
        if matches!(cmd, Command::Oracle { .. }) {
            return Err(Error::InvalidArgument("the oracle works over F_p only".into()).into());
        }
        let field = RationalFunctionField::new(p, spec.transcendentals.clone())?;
        let ring = Ring::new(field, spec.vars.clone(), MonomialOrder::Grevlex)?;
        envelope(&ring, &spec, cmd, opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> Options {
        Options::default()
    }

    fn json(text: &str, cmd: Command) -> serde_json::Value {
        serde_json::from_str(&run(text, &cmd, &opts()).unwrap().to_json()).unwrap()
    }

    const NODE: &str = "char=2; vars=x,y; ideal=x*y";

    #[test]
    fn se_reports() {
        let v = json(NODE, Command::Se { e: Some(1), emax: None });
        assert_eq!(v["schema"], "fsplit/1");
        assert_eq!(v["result"]["s_e"], "1/2");
        assert_eq!(v["result"]["lambda"], "1");
        assert!(v.get("timestamp").is_none());
        let zero = json("char=3; vars=x,y; ideal=", Command::Se { e: Some(3), emax: None });
        assert_eq!(zero["result"]["s_e"], "1");
        let cusp = json("char=5; vars=x,y; ideal=y^2-x^3", Command::Se { e: Some(1), emax: None });
        assert_eq!(cusp["result"]["s_e"], "0");
        let seq = json(NODE, Command::Se { e: None, emax: Some(2) });
        assert_eq!(seq["result"]["reports"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn probe_and_gorenstein() {
        let text = "char=2; vars=x,y,z; ideal=x*y; equidimensional=true; connected=true; chain = x | x,y,z";
        let v = json(
            text,
            Command::Probe {
                primes: Some("x|x,z|x,y|x,y,z".into()),
                e: 1,
                thresholds: "0,3/4".into(),
                kunz: true,
            },
        );
        let vals: Vec<&str> = v["result"]["scan"]["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x["report"]["s_e"].as_str().unwrap())
            .collect();
        assert_eq!(vals, ["1", "1", "1/2", "1/2"]);
        assert_eq!(v["result"]["scan"]["pass"], true);
        assert_eq!(v["result"]["monotonicity"][0]["holds"], true);
        assert_eq!(v["result"]["kunz"]["constant"], true);

        let g = json(
            NODE,
            Command::Gorenstein {
                sop: Some("x+y".into()),
                socle: None,
                e: 1,
            },
        );
        assert_eq!(g["result"]["s_e"], "1/2");
    }

    #[test]
    fn error_classes() {
        let mono = "char=2; vars=x,y,z; ideal=x*y; chain = x | x,y";
        let probe = Command::Probe {
            primes: Some("x".into()),
            e: 1,
            thresholds: "0".into(),
            kunz: false,
        };
        let err = run(mono, &probe, &opts()).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::MissingAssumption(_))));
        assert_eq!(err.exit_code(), 2);
        let fat = "char=2; vars=x,y; ideal=x^2,x*y,y^2";
        let g = Command::Gorenstein { sop: Some("".into()), socle: None, e: 1 };
        assert!(matches!(run(fat, &g, &opts()), Err(CliError::Core(Error::NotGorenstein { .. }))));
        let big = Options {
            config: Config::with_budget(10),
            timestamp: None,
        };
        let err = run(NODE, &Command::Se { e: Some(3), emax: None }, &big).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert_eq!(run("char=2; vars=x; ideal=x+", &Command::Se { e: Some(1), emax: None }, &opts()).unwrap_err().exit_code(), 1);
        assert!(config_from_env(Some("abc")).is_err());
        assert_eq!(config_from_env(Some("42")).unwrap().budget, 42);
    }

    #[test]
    fn oracle_command() {
        let v = json(NODE, Command::Oracle { e: 1, budget: 1_000_000 });
        assert_eq!(v["result"]["length_mod_bracket"], "3");
        assert_eq!(v["result"]["dual_splitting_length"], "1");
        let t = "char=3; transcendentals=t; vars=x; ideal=x";
        assert!(run(t, &Command::Oracle { e: 1, budget: 10 }, &opts()).is_err());
    }

    #[test]
    fn function_field_input() {
        let v = json("char=3; transcendentals=t; vars=x,y; ideal=t*x*y", Command::Se { e: Some(1), emax: None });
        assert_eq!(v["result"]["s_e"], "1/3");
        assert_eq!(v["result"]["alpha"], 1);
        assert_eq!(v["ring"], "F_3(t)[x,y]");
    }

    #[test]
    fn table_output() {
        let env = run(NODE, &Command::Se { e: None, emax: Some(2) }, &opts()).unwrap();
        let t = env.to_table();
        assert!(t.contains("1/4"));
        assert!(t.starts_with("F_2[x,y] / (x*y)"));
    }
}
