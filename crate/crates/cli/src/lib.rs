//! Command-line front-end of `lenspec`.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! the exit code together with everything destined for standard output and
//! standard error. Exit codes: 0 on success, 2 on a domain error (with a JSON
//! error document on standard error), 64 on a usage error.

pub mod args;
pub mod format;
pub mod reports;

use clap::error::ErrorKind;
use clap::Parser;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use lenspec::algnum::{
    multiplicatively_independent, quad_eigenvalue, weak_containment_search, Interval, MultiQuadraticElement,
};
use lenspec::etale::{
    embeds_in_csa_global, embeds_in_csa_local, same_maximal_etale, truncate_reciprocal_charpoly, CSAProfile,
    EtaleProfile,
};
use lenspec::galmod::{weyl_weight_module, GaloisModule};
use lenspec::quatarith::{
    algebra_from_ramset, embeds_quadratic_field, enumerate_norm_one, hilbert_symbol, parse_places,
    spectrum_commensurable_inclusion, trace_spectrum, Place, QuaternionAlgebra,
};
use lenspec::rootsys::{
    bn_cn_pair_lengths, hyperbolic_weyl_order, length_from_log_coordinates, length_lambda, sqrt_closed_form,
    torus_root_values, weyl_conjugacy_classes, weyl_order, RootSystem, TorusElement,
};
use lenspec::ser::{format_rational, parse_rational};
use lenspec::Error;

use args::{AlgebraArgs, Cli, Command, Experiment, RunConfig, SystemArgs};
use reports::*;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

/// Tolerance asserted by the ratio sweep.
pub const BC_TOLERANCE: f64 = 1e-12;

type CmdResult = Result<Value, Error>;

/// Run the command line `argv` (program name first).
pub fn run<S: AsRef<str>>(argv: &[S]) -> (u8, String, String) {
    let argv: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, text, String::new()),
                _ => (EXIT_USAGE, String::new(), text),
            };
        }
    };
    match dispatch(&cli.command, &cli.config) {
        Ok(doc) => (EXIT_OK, format::render(&doc, cli.config.format), String::new()),
        Err(e) => (EXIT_DOMAIN, String::new(), error_document(&e)),
    }
}

pub fn error_document(e: &Error) -> String {
    let doc = json!({ "error": e.kind(), "message": e.to_string() });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable value");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(x: &T) -> CmdResult {
    serde_json::to_value(x).map_err(|e| Error::Inconclusive(format!("serialization failed: {e}")))
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn parse_rationals(s: &str) -> Result<Vec<BigRational>, Error> {
    split_list(s).into_iter().map(parse_rational).collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Error> {
    split_list(s)
        .into_iter()
        .map(|t| t.parse().map_err(|_| Error::InvalidInput(format!("not an integer: {t:?}"))))
        .collect()
}

/// An exact element given as a rational `p/q` or as `lambda:T[^E]`, the
/// hyperbolic eigenvalue of trace `T` raised to `E`.
pub fn parse_element(token: &str) -> Result<MultiQuadraticElement, Error> {
    let Some(rest) = token.strip_prefix("lambda:") else {
        return Ok(MultiQuadraticElement::rational(parse_rational(token)?));
    };
    let (t, e) = match rest.split_once('^') {
        Some((t, e)) => (t, e.parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad exponent in {token:?}")))?),
        None => (rest, 1),
    };
    Ok(quad_eigenvalue(&parse_rational(t)?)?.pow(e)?.to_multi())
}

fn parse_elements(s: &str) -> Result<Vec<MultiQuadraticElement>, Error> {
    split_list(s).into_iter().map(parse_element).collect()
}

fn algebra(a: &AlgebraArgs) -> Result<QuaternionAlgebra, Error> {
    QuaternionAlgebra::new(parse_rational(&a.a)?, parse_rational(&a.b)?)
}

/// Inline JSON, or `@path` to read it from a file.
fn json_arg<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<T, Error> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {what} from {path}: {e}")))?,
        None => s.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("malformed {what}: {e}")))
}

fn algebra_report(d: &QuaternionAlgebra) -> AlgebraReport {
    AlgebraReport { algebra: d.clone(), ramification: d.ramification().to_vec(), definite: d.is_definite() }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> CmdResult {
    let prec = cfg.precision;
    match cmd {
        Command::Weyl(SystemArgs { family, rank }) => {
            to_value(&WeylReport { family: *family, rank: *rank, order: weyl_order(*family, *rank)? })
        }
        Command::HyperbolicWeyl { d } => to_value(&HyperbolicWeylReport { d: *d, order: hyperbolic_weyl_order(*d)? }),
        Command::Roots(SystemArgs { family, rank }) => to_value(&RootSystem::new(*family, *rank)?),
        Command::Classes(SystemArgs { family, rank }) => {
            let r = weyl_conjugacy_classes(*family, *rank)?;
            to_value(&ClassesReport { family: *family, rank: *rank, nontrivial_classes: r, classes: r + 1 })
        }
        Command::Lambda { system, values, mu } => lambda(system, values.as_deref(), mu.as_deref(), prec),
        Command::Ratio { n, mu } => to_value(&ratio(*n, mu.as_deref(), prec)?),
        Command::Hilbert { algebra: ab, place } => {
            let (a, b) = (parse_rational(&ab.a)?, parse_rational(&ab.b)?);
            let place: Place = place.parse()?;
            let symbol = hilbert_symbol(&a, &b, place)?;
            to_value(&HilbertReport { a: format_rational(&a), b: format_rational(&b), place, symbol })
        }
        Command::Ramify(ab) => to_value(&algebra_report(&algebra(ab)?)),
        Command::Mkalg { places, search_bound } => {
            to_value(&algebra_report(&algebra_from_ramset(&parse_places(places)?, *search_bound)?))
        }
        Command::Embedfield { algebra: ab, d } => {
            let alg = algebra(ab)?;
            let d = parse_rational(d)?;
            let embeds = embeds_quadratic_field(&alg, &d)?;
            to_value(&EmbedReport { algebra: alg, d: format_rational(&d), embeds })
        }
        Command::Enumerate(ab) => {
            let alg = algebra(ab)?;
            let elements = enumerate_norm_one(&alg, cfg.height)?;
            to_value(&EnumerateReport { algebra: alg, height: cfg.height, count: elements.len(), elements })
        }
        Command::Spectrum(ab) => to_value(&trace_spectrum(&algebra(ab)?, cfg.height, prec)?),
        Command::Compare { source, target, target_height } => {
            let src = QuaternionAlgebra::parse(source)?;
            let tgt = QuaternionAlgebra::parse(target)?;
            let s = trace_spectrum(&src, cfg.height, prec)?;
            let t = trace_spectrum(&tgt, target_height.unwrap_or(cfg.height), prec)?;
            to_value(&spectrum_commensurable_inclusion(&s, &tgt, Some(&t), cfg.power_bound)?)
        }
        Command::Indep { values } => {
            let elems = parse_elements(values)?;
            let result = multiplicatively_independent(&elems, cfg.coeff_bound, prec)?;
            let elements = split_list(values).into_iter().map(String::from).collect();
            to_value(&IndepReport { elements, coeff_bound: cfg.coeff_bound, precision_bits: prec, result })
        }
        Command::Contain { side1, side2, exponent_bound } => {
            let (s1, s2) = (parse_elements(side1)?, parse_elements(side2)?);
            let witness = weak_containment_search(&s1, &s2, *exponent_bound, prec)?;
            to_value(&ContainReport {
                side1: split_list(side1).into_iter().map(String::from).collect(),
                side2: split_list(side2).into_iter().map(String::from).collect(),
                exponent_bound: *exponent_bound,
                precision_bits: prec,
                witness,
            })
        }
        Command::Unscramble { family, rank, module, chi } => {
            let m: GaloisModule = match (family, rank, module) {
                (Some(f), Some(r), None) => weyl_weight_module(*f, *r)?,
                (None, _, Some(json)) => json_arg(json, "Galois module")?,
                _ => return Err(Error::InvalidInput("give either --family/--rank or --module".into())),
            };
            let chi = parse_ints(chi)?;
            let result = m.unscramble_exponent(&chi)?;
            to_value(&UnscrambleReport { module: m.label().map(String::from), chi, result })
        }
        Command::EtaleEmbed { degrees, index, etale, csa, csa2 } => etale_embed(degrees, index, etale, csa, csa2),
        Command::Truncate { coeffs } => to_value(&truncate_reciprocal_charpoly(&parse_rationals(coeffs)?)?),
        Command::Experiment(Experiment::SpectrumInclusion { witness_height }) => to_value(&spectrum_inclusion(cfg, *witness_height)?),
        Command::Experiment(Experiment::BcRatio { n_min, n_max, samples, n, mu }) => match n {
            Some(n) => to_value(&ratio(*n, mu.as_deref(), prec)?),
            None => to_value(&bc_ratio(*n_min, *n_max, *samples, cfg.seed, prec)?),
        },
    }
}

fn lambda(system: &SystemArgs, values: Option<&str>, mu: Option<&str>, prec: u32) -> CmdResult {
    let sys = RootSystem::new(system.family, system.rank)?;
    let name = format!("{}{}", system.family, system.rank);
    match (values, mu) {
        (Some(v), None) => {
            let element = TorusElement::Exact(parse_elements(v)?);
            let vals = torus_root_values(&sys, &element, prec)?;
            let l = length_lambda(&vals, prec)?;
            to_value(&LambdaReport {
                system: name,
                value: l.value.to_decimal(prec),
                mu_vector: Some(l.mu_vector.iter().map(|m| m.to_decimal(prec)).collect()),
            })
        }
        (None, Some(m)) => {
            let mu: Vec<Interval> = parse_rationals(m)?.iter().map(|q| Interval::from_rational(q, prec + 16)).collect();
            let value = length_from_log_coordinates(&sys, &mu, prec)?;
            to_value(&LambdaReport { system: name, value: value.to_decimal(prec), mu_vector: None })
        }
        _ => Err(Error::InvalidInput("give exactly one of --values or --mu".into())),
    }
}

fn ratio(n: u32, mu: Option<&str>, prec: u32) -> Result<RatioReport, Error> {
    let mu = match mu {
        Some(m) => parse_rationals(m)?,
        None => (0..n).map(|i| BigRational::from_integer(i64::from(i == 0).into())).collect(),
    };
    let pair = bn_cn_pair_lengths(n, &mu, prec)?;
    Ok(RatioReport {
        n,
        ratio: sqrt_closed_form(&pair.ratio_sq),
        decimal_interval: pair.ratio.to_decimal_pair(prec),
        precision_bits: prec,
        mu: mu.iter().map(format_rational).collect(),
        lambda1: sqrt_closed_form(&pair.lambda1_sq),
        lambda2: sqrt_closed_form(&pair.lambda2_sq),
    })
}

fn etale_embed(
    degrees: &Option<String>,
    index: &Option<u32>,
    etale: &Option<String>,
    csa: &Option<String>,
    csa2: &Option<String>,
) -> CmdResult {
    let (mode, result) = match (degrees, index, etale, csa, csa2) {
        (Some(d), Some(m), None, None, None) => {
            let degs: Vec<u32> = split_list(d)
                .into_iter()
                .map(|t| t.parse().map_err(|_| Error::InvalidInput(format!("not a degree: {t:?}"))))
                .collect::<Result<_, _>>()?;
            (EtaleMode::Local, embeds_in_csa_local(&degs, *m)?)
        }
        (None, None, Some(e), Some(c), None) => {
            let e: EtaleProfile = json_arg(e, "étale profile")?;
            let c: CSAProfile = json_arg(c, "CSA profile")?;
            (EtaleMode::Global, embeds_in_csa_global(&e, &c)?)
        }
        (None, None, None, Some(c), Some(c2)) => {
            let c: CSAProfile = json_arg(c, "CSA profile")?;
            let c2: CSAProfile = json_arg(c2, "CSA profile")?;
            (EtaleMode::SameMaximal, same_maximal_etale(&c, &c2)?)
        }
        _ => {
            return Err(Error::InvalidInput(
                "use --degrees with --index, --etale with --csa, or --csa with --csa2".into(),
            ))
        }
    };
    to_value(&EtaleReport { mode, result })
}

/// Spectra of the algebras ramified at {2,3} and {2,3,5,7}, compared in both directions.
pub fn spectrum_inclusion(cfg: &RunConfig, witness_height: u64) -> Result<InclusionExperimentReport, Error> {
    let bound = lenspec::quatarith::DEFAULT_SEARCH_BOUND;
    let d1 = algebra_from_ramset(&parse_places("2,3")?, bound)?;
    let d2 = algebra_from_ramset(&parse_places("2,3,5,7")?, bound)?;
    let prec = cfg.precision;
    let witness_height = witness_height.max(cfg.height);
    let s1 = trace_spectrum(&d1, cfg.height, prec)?;
    let s2 = trace_spectrum(&d2, cfg.height, prec)?;
    let w1 = if witness_height == cfg.height { s1.clone() } else { trace_spectrum(&d1, witness_height, prec)? };
    let forward = spectrum_commensurable_inclusion(&s2, &d1, Some(&w1), cfg.power_bound)?;
    let reverse = spectrum_commensurable_inclusion(&s1, &d2, Some(&s2), cfg.power_bound)?;
    let status = if forward.vacuous || reverse.vacuous {
        InclusionStatus::Vacuous
    } else if forward.all_field_verdicts && reverse.false_count > 0 {
        InclusionStatus::Asymmetric
    } else {
        InclusionStatus::Unexpected
    };
    let summary = InclusionSummary {
        status,
        forward_all_true: forward.all_field_verdicts,
        reverse_false_count: reverse.false_count,
        forward_witness_count: forward.witness_count,
        smallest_witness_power: forward.entries.iter().filter_map(|e| e.witness.as_ref()).map(|w| w.power).min(),
    };
    Ok(InclusionExperimentReport {
        d1: algebra_report(&d1),
        d2: algebra_report(&d2),
        height: cfg.height,
        witness_height,
        power_bound: cfg.power_bound,
        forward,
        reverse,
        summary,
    })
}

fn random_mu(rng: &mut ChaCha8Rng, n: u32) -> Vec<BigRational> {
    loop {
        let v: Vec<BigRational> = (0..n)
            .map(|_| BigRational::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=97).into()))
            .collect();
        if v.iter().any(|x| *x.numer() != 0.into()) {
            return v;
        }
    }
}

/// Largest `|x|` over an interval, as a float.
fn magnitude(iv: &Interval) -> f64 {
    iv.lo().to_f64().abs().max(iv.hi().to_f64().abs())
}

/// Seeded sweep of `λ₂/λ₁` against `√((2n+2)/(2n−1))`.
pub fn bc_ratio(n_min: u32, n_max: u32, samples: u32, seed: u64, prec: u32) -> Result<BcRatioReport, Error> {
    if n_min < 3 {
        return Err(Error::InvalidInput(format!("the ratio identity needs n >= 3, got n_min = {n_min}")));
    }
    if n_max < n_min {
        return Err(Error::InvalidInput(format!("empty range {n_min}..={n_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let expected_sq = BigRational::new((2 * n + 2).into(), (2 * n - 1).into());
        let expected = Interval::from_rational(&expected_sq, prec + 16).sqrt(prec)?;
        let mut worst = 0f64;
        for _ in 0..samples {
            let pair = bn_cn_pair_lengths(n, &random_mu(&mut rng, n), prec)?;
            worst = worst.max(magnitude(&pair.ratio.sub(&expected, prec)));
        }
        rows.push(BcRatioRow { n, expected: sqrt_closed_form(&expected_sq), samples, max_deviation: worst });
    }
    let max_deviation = rows.iter().map(|r| r.max_deviation).fold(0f64, f64::max);
    let passed = max_deviation < BC_TOLERANCE;
    if !passed {
        return Err(Error::Inconclusive(format!(
            "max deviation {max_deviation:e} exceeds {BC_TOLERANCE:e} at {prec} bits"
        )));
    }
    Ok(BcRatioReport { seed, precision_bits: prec, tolerance: BC_TOLERANCE, rows, max_deviation, passed })
}
