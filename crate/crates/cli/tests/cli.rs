use serde::de::DeserializeOwned;
use serde::Serialize;

use lenspec::algnum::DecimalInterval;
use lenspec::etale::ReciprocalPolynomial;
use lenspec::quatarith::{InclusionReport, TraceSpectrum};
use lenspec::rootsys::RootSystem;
use lenspec_cli::reports::*;
use lenspec_cli::run;

fn call(args: &[&str]) -> (u8, String, String) {
    let mut argv = vec!["lenspec"];
    argv.extend_from_slice(args);
    run(&argv)
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    assert!(err.is_empty());
    out
}

/// Parse the document, compare with a typed re-serialization.
fn round_trip<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let out = ok(args);
    let value: T = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(again, out, "{args:?} does not re-serialize identically");
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), value);
    value
}

#[test]
fn ratio_example() {
    let r: RatioReport = round_trip(&["ratio", "--n", "3"]);
    assert_eq!(r.ratio, "sqrt(8/5)");
    let iv = DecimalInterval { lo: r.decimal_interval[0].clone(), hi: r.decimal_interval[1].clone(), precision_bits: 256 };
    let iv = iv.to_interval().unwrap();
    assert!((iv.mid_f64() - (8f64 / 5.0).sqrt()).abs() < 1e-15);
    let r: RatioReport = round_trip(&["experiment", "bc-ratio", "--n", "3", "--mu", "1,0,0"]);
    assert_eq!((r.lambda1.as_str(), r.lambda2.as_str()), ("sqrt(10)", "4"));
}

#[test]
fn exit_codes() {
    for args in [
        vec!["hyperbolic-weyl", "--d", "3"],
        vec!["weyl", "--family", "B", "--rank", "1"],
        vec!["classes", "--family", "E", "--rank", "8"],
        vec!["mkalg", "--places", "2"],
        vec!["embedfield", "--a", "-1", "--b", "3", "--d", "4"],
        vec!["truncate", "--coeffs", "1,0,1"],
        vec!["experiment", "bc-ratio", "--n-min", "2"],
        vec!["ratio", "--n", "2"],
        vec!["hilbert", "--a", "0", "--b", "1", "--place", "2"],
        vec!["indep", "--values", "lambda:2"],
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        let doc: serde_json::Value = serde_json::from_str(&err).unwrap();
        assert!(doc["error"].is_string() && doc["message"].is_string(), "{args:?}: {err}");
    }
    for args in [vec!["bogus"], vec![], vec!["weyl", "--family", "B"], vec!["weyl", "--family", "Q", "--rank", "2"], vec!["--format", "xml", "weyl", "--family", "A", "--rank", "2"], vec!["--height", "0", "spectrum", "--a", "1", "--b", "1"]] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 64, "{args:?}");
        assert!(out.is_empty() && !err.is_empty());
    }
    for args in [vec!["--help"], vec!["--version"], vec!["spectrum", "--help"]] {
        let (code, out, _) = call(&args);
        assert_eq!(code, 0);
        assert!(!out.is_empty());
    }
}

#[test]
fn documents_round_trip() {
    let w: WeylReport = round_trip(&["weyl", "--family", "E", "--rank", "8"]);
    assert_eq!(w.order, 696_729_600);
    let h: HyperbolicWeylReport = round_trip(&["hyperbolic-weyl", "--d", "5"]);
    assert_eq!(h.order, 24);
    let r: RootSystem = round_trip(&["roots", "--family", "G", "--rank", "2"]);
    assert_eq!(r.roots.len(), 12);
    let c: ClassesReport = round_trip(&["classes", "--family", "B", "--rank", "2"]);
    assert_eq!(c.nontrivial_classes, 4);
    let l: LambdaReport = round_trip(&["lambda", "--family", "A", "--rank", "1", "--values", "lambda:3,lambda:3^-1"]);
    assert!(l.mu_vector.is_some());
    let _: LambdaReport = round_trip(&["lambda", "--family", "E", "--rank", "6", "--mu", "1,0,0,0,0,0,0,0"]);
    let hs: HilbertReport = round_trip(&["hilbert", "--a", "2", "--b", "3", "--place", "3"]);
    assert_eq!(hs.symbol, -1);
    let ram: AlgebraReport = round_trip(&["ramify", "--a", "3", "--b", "1/3"]);
    assert_eq!(ram.ramification.len(), 2);
    let mk: AlgebraReport = round_trip(&["mkalg", "--places", "2,real"]);
    assert!(mk.definite);
    let e: EmbedReport = round_trip(&["embedfield", "--a", "-1", "--b", "3", "--d", "5"]);
    assert!(e.embeds);
    let en: EnumerateReport = round_trip(&["--height", "4", "enumerate", "--a", "-1", "--b", "3"]);
    assert_eq!(en.count, en.elements.len());
    let sp: TraceSpectrum = round_trip(&["--height", "8", "spectrum", "--a", "-1", "--b", "3"]);
    assert!(!sp.entries.is_empty());
    let cmp: InclusionReport = round_trip(&["--height", "10", "compare", "--source", "3,35", "--target", "-1,3", "--target-height", "40"]);
    assert!(cmp.all_field_verdicts);
    let ind: IndepReport = round_trip(&["indep", "--values", "2,3,5,7"]);
    assert!(matches!(ind.result, lenspec::algnum::IndependenceVerdict::IndependentUpToBound { .. }));
    let con: ContainReport = round_trip(&["contain", "--side1", "lambda:3", "--side2", "lambda:7"]);
    assert!(con.witness.is_some());
    let un: UnscrambleReport = round_trip(&["unscramble", "--family", "B", "--rank", "2", "--chi", "1,1"]);
    assert!(un.result.d >= 1);
    let et: EtaleReport = round_trip(&["etale-embed", "--degrees", "1,1", "--index", "2"]);
    assert!(!et.result);
    let tr: ReciprocalPolynomial = round_trip(&["truncate", "--coeffs", "1,0,0,-1"]);
    assert_eq!(tr.coeffs.len(), 3);
    let bc: BcRatioReport = round_trip(&["experiment", "bc-ratio"]);
    assert!(bc.passed && bc.max_deviation < 1e-12 && bc.rows.len() == 8);
}

#[test]
fn etale_profiles_from_json() {
    let etale = r#"{"factor_degrees":[2],"local_degrees":{"2":[[2]],"3":[[1,1]]}}"#;
    let csa = r#"{"degree":2,"local_index":{"2":2,"3":2}}"#;
    let g: EtaleReport = round_trip(&["etale-embed", "--etale", etale, "--csa", csa]);
    assert_eq!((g.mode, g.result), (EtaleMode::Global, false));
    let csa2 = r#"{"degree":2,"local_index":{"2":2,"3":2,"5":1}}"#;
    let s: EtaleReport = round_trip(&["etale-embed", "--csa", csa, "--csa2", csa2]);
    assert!(s.result);
    let (code, _, _) = call(&["etale-embed", "--etale", "{", "--csa", csa]);
    assert_eq!(code, 2);
}

#[test]
fn spectrum_inclusion_experiment() {
    let r: InclusionExperimentReport = round_trip(&["experiment", "example-7-4", "--height", "30"]);
    assert_eq!(r.d1.ramification.len(), 2);
    assert_eq!(r.d2.ramification.len(), 4);
    assert_eq!(r.summary.status, InclusionStatus::Asymmetric);
    assert!(r.forward.all_field_verdicts);
    assert!(r.reverse.false_count >= 1);
    assert!(r.summary.smallest_witness_power.is_some_and(|n| n <= 6));
    let v: InclusionExperimentReport = round_trip(&["experiment", "example-7-4", "--height", "1"]);
    assert_eq!(v.summary.status, InclusionStatus::Vacuous);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--seed", "7", "experiment", "bc-ratio", "--samples", "10"],
        vec!["--height", "12", "spectrum", "--a", "3", "--b", "35"],
        vec!["--format", "csv", "--height", "5", "enumerate", "--a", "-1", "--b", "3"],
        vec!["--format", "table", "roots", "--family", "B", "--rank", "3"],
    ] {
        assert_eq!(call(&args), call(&args), "{args:?}");
    }
    let a = ok(&["--seed", "1", "experiment", "bc-ratio", "--samples", "5"]);
    let b = ok(&["--seed", "2", "experiment", "bc-ratio", "--samples", "5"]);
    assert_ne!(a, b);
}

#[test]
fn csv_and_table_formats() {
    let csv = ok(&["--format", "csv", "--height", "6", "spectrum", "--a", "-1", "--b", "3"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,disc,lambda,length_interval,height"));
    assert!(lines.next().unwrap().starts_with("4,3,"));
    let table = ok(&["--format", "table", "weyl", "--family", "F", "--rank", "4"]);
    assert!(table.contains("order") && table.contains("1152"));
}

#[test]
fn precision_flag_changes_intervals() {
    let lo: RatioReport = round_trip(&["--precision", "64", "ratio", "--n", "4"]);
    let hi: RatioReport = round_trip(&["--precision", "512", "ratio", "--n", "4"]);
    assert_eq!(lo.precision_bits, 64);
    assert!(hi.decimal_interval[0].len() > lo.decimal_interval[0].len());
}
