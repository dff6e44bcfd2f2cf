//! Cross-module workflows: each test chains several public entry points the
//! way a caller would, so wiring regressions between modules show up even
//! when every module passes its own unit tests.

use hv2_core::classify::{recover_parameters, solve_h_linear, solve_translation_invariance, ActionFamily};
use hv2_core::iso::are_isomorphic;
use hv2_core::lie::{window_indices, Flavor, Generator};
use hv2_core::modules::ModuleSpec;
use hv2_core::poly::Poly;
use hv2_core::scalar::Scalar;

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn spec(text: &str) -> ModuleSpec {
    text.parse().unwrap()
}

#[test]
fn family_solving_and_recovery_agree_on_the_same_record() {
    let record = spec("--p 1,2 --lambda 1/2,-3 --alpha 5/7 --b0 -2/3");
    let p = record.params();
    let window = window_indices(2);
    let fam = ActionFamily::from_spec(&record, &window).unwrap();

    // The record's own T-side solves the linear system and the quadratic
    // filter built from its E-side...
    let outcome = solve_h_linear(&fam, &p, 2).unwrap();
    assert!(outcome.classified_in_span);
    assert!(outcome.classified_passes_tt);
    assert!(outcome.surviving_dimension >= 1);

    // ...and recovery reads the very same parameters back off the family.
    let recovered = recover_parameters(&p, &fam).unwrap();
    assert_eq!(recovered, record);
    assert!(are_isomorphic(&record, &recovered, Flavor::ExtendedL).unwrap());
}

#[test]
fn cli_report_matches_the_library_answer() {
    let outcome = hv2_core::cli::run(["hv2", "invariance", "--q", "1,1", "--deg", "4"]);
    assert_eq!(outcome.exit_code, 0, "stderr: {}", outcome.stderr);

    let report: serde_json::Value = serde_json::from_str(&outcome.stdout).unwrap();
    assert_eq!(report["command"], "invariance");
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);

    let basis = solve_translation_invariance(&s("1"), &s("1"), 4);
    assert_eq!(report["results"]["dimension"], basis.len().to_string());
    let joined = basis.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ");
    assert_eq!(report["results"]["basis"], joined);
}

#[test]
fn witnesses_found_by_the_search_really_escape() {
    for text in [
        "--p 1,2 --lambda 1/2,-3 --alpha 5/7 --b0 -2/3",
        "--p 0,0 --lambda 1i,3 --beta 1/2,0 --b0 -1 --k -3/4",
    ] {
        let record = spec(text);
        let (a1, a2) = record.submodule_point();

        // A generic submodule member: d1 minus its value at the point.
        let f = &Poly::d1() - &Poly::constant(Poly::d1().eval(&a1, &a2));
        assert!(record.in_distinguished_submodule(&f));

        let m = record.simplicity_witness(&f, 2).unwrap().unwrap();
        let image = record.act_generator(&Generator::T(m), &f);
        assert!(!record.in_distinguished_submodule(&image));

        // The E-side never escapes, so the witness is genuinely a T-side
        // phenomenon.
        for n in window_indices(2) {
            let stay = record.act_generator(&Generator::E(n), &f);
            assert!(record.in_distinguished_submodule(&stay));
        }
    }
}
