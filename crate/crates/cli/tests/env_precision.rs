//! Runs in its own process because it sets an environment variable.

use lenspec_cli::reports::RatioReport;
use lenspec_cli::run;

#[test]
fn environment_sets_default_precision_and_flag_wins() {
    std::env::set_var("LENSPEC_PRECISION", "96");
    let (code, out, _) = run(&["lenspec", "ratio", "--n", "3"]);
    assert_eq!(code, 0);
    let r: RatioReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.precision_bits, 96);
    let (_, out, _) = run(&["lenspec", "--precision", "128", "ratio", "--n", "3"]);
    let r: RatioReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.precision_bits, 128);
    std::env::set_var("LENSPEC_PRECISION", "lots");
    let (code, _, _) = run(&["lenspec", "ratio", "--n", "3"]);
    assert_eq!(code, 64);
}
