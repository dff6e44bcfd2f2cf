//! Batch command-line front end.
//!
//! Nine subcommands run the verification and solving suites and print one
//! JSON [`Report`] per invocation on standard output. Exit codes:
//!
//! * `0` — every check passed (the `failures` list is empty),
//! * `1` — at least one check failed,
//! * `2` — usage error or malformed flag value (message on standard error),
//! * `3` — arithmetic, precondition, or compatibility error (a small JSON
//!   error document on standard output, message on standard error).
//!
//! Reports are byte-identical across repeated runs with the same arguments
//! except for the `wall_time_ms` field.

use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::classify::{
    constraint_residuals, recover_parameters, solve_h_linear, solve_translation_invariance,
    ActionFamily, EquationId,
};
use crate::error::{Error, Result};
use crate::iso::{are_isomorphic, intertwine_residual};
use crate::lie::{
    bracket, window_generators, window_indices, AlgebraParams, Flavor, Generator, LieElement,
};
use crate::modules::ModuleSpec;
use crate::poly::{monomials_up_to, Poly};
use crate::realization::cross_check_bracket;
use crate::report::Report;
use crate::scalar::{parse_scalar_pair, Scalar};

/// What one invocation would print and how it would exit; the binary and the
/// C interface both drive this so their behavior cannot drift apart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "hv2",
    version,
    about = "Exact verification and solving suites for rank-two Heisenberg-Virasoro algebras \
             and their polynomial modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Module record given either as one quoted flag set (`--spec "..."`) or as
/// the equivalent inline flags; mixing the two forms is rejected.
#[derive(Args, Debug)]
struct SpecArgs {
    /// Whole module record as one quoted flag set,
    /// e.g. "--p 1,0 --lambda 2,3 --alpha 0 --b0 1".
    #[arg(long, allow_hyphen_values = true, value_name = "FLAGS")]
    spec: Option<String>,
    /// Structure parameters "p1,p2" (inline record form).
    #[arg(long, allow_hyphen_values = true, value_name = "a,b")]
    p: Option<String>,
    /// Action scales "l1,l2", both nonzero (inline record form).
    #[arg(long, allow_hyphen_values = true, value_name = "a,b")]
    lambda: Option<String>,
    /// Shift parameter, only for p != (0,0) records (inline record form).
    #[arg(long, allow_hyphen_values = true, value_name = "s")]
    alpha: Option<String>,
    /// Shift parameters "b1,b2", only for p = (0,0) records (inline record form).
    #[arg(long, allow_hyphen_values = true, value_name = "a,b")]
    beta: Option<String>,
    /// Constant of the zero-index T-action (inline record form).
    #[arg(long, allow_hyphen_values = true, value_name = "s")]
    b0: Option<String>,
    /// Scale of the nonzero-index T-actions, only for p = (0,0) records.
    #[arg(long, allow_hyphen_values = true, value_name = "s")]
    k: Option<String>,
}

impl SpecArgs {
    fn resolve(&self) -> Result<ModuleSpec> {
        let inline: [(&str, &Option<String>); 6] = [
            ("--p", &self.p),
            ("--lambda", &self.lambda),
            ("--alpha", &self.alpha),
            ("--beta", &self.beta),
            ("--b0", &self.b0),
            ("--k", &self.k),
        ];
        if let Some(spec) = &self.spec {
            if inline.iter().any(|(_, v)| v.is_some()) {
                return Err(Error::Parse(
                    "give the module record either as --spec or as inline flags, not both".into(),
                ));
            }
            return spec.parse();
        }
        let mut tokens: Vec<&str> = Vec::new();
        for (flag, value) in inline {
            if let Some(v) = value {
                tokens.push(flag);
                tokens.push(v);
            }
        }
        if tokens.is_empty() {
            return Err(Error::Parse(
                "missing module record: pass --spec \"...\" or the inline --p/--lambda/... flags"
                    .into(),
            ));
        }
        ModuleSpec::from_flag_tokens(&tokens)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check antisymmetry and the Jacobi identity over a generator window.
    VerifyLie {
        /// Structure parameters "p1,p2".
        #[arg(long, allow_hyphen_values = true, value_name = "a,b")]
        p: String,
        /// Window radius: indices range over [-n, n]^2.
        #[arg(long, default_value_t = 2)]
        window: u32,
        /// L (graded generators only) or Lt (degree derivations included).
        #[arg(long, default_value = "Lt")]
        flavor: String,
    },
    /// Cross-check the bracket against the weight-space operator realization.
    VerifyRealization {
        /// Structure parameters "p1,p2".
        #[arg(long, allow_hyphen_values = true, value_name = "a,b")]
        p: String,
        /// Window radius: indices range over [-n, n]^2.
        #[arg(long, default_value_t = 2)]
        window: u32,
    },
    /// Check the module axioms and the action factorization for one record.
    VerifyModule {
        #[command(flatten)]
        spec: SpecArgs,
        /// Window radius: indices range over [-n, n]^2.
        #[arg(long, default_value_t = 2)]
        window: u32,
        /// Degree bound for the monomial test vectors.
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
    /// Find an index whose T-action pushes f out of the distinguished submodule.
    Simplicity {
        #[command(flatten)]
        spec: SpecArgs,
        /// Polynomial to escape with (must lie in the distinguished submodule).
        #[arg(long, allow_hyphen_values = true, value_name = "poly")]
        f: String,
        /// Search radius, scanned in lexicographic order.
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Decide whether two records give isomorphic modules; certify the answer.
    Iso {
        /// L (graded action only) or Lt (degree derivations act too).
        #[arg(long)]
        flavor: String,
        /// First module record as a quoted flag set.
        #[arg(long = "specA", allow_hyphen_values = true, value_name = "FLAGS")]
        spec_a: String,
        /// Second module record as a quoted flag set.
        #[arg(long = "specB", allow_hyphen_values = true, value_name = "FLAGS")]
        spec_b: String,
        /// Window radius for the intertwining sweep.
        #[arg(long, default_value_t = 2)]
        window: u32,
        /// Degree bound for the monomial test vectors.
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
    /// Solve the translation-invariance equation F = F(d1 - q1, d2 - q2).
    Invariance {
        /// Shift "q1,q2".
        #[arg(long, allow_hyphen_values = true, value_name = "a,b")]
        q: String,
        /// Degree bound for the search space.
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
    /// Evaluate the consistency residual equations of a record's action family.
    Residuals {
        #[command(flatten)]
        spec: SpecArgs,
        /// Window radius: indices range over [-n, n]^2.
        #[arg(long, default_value_t = 2)]
        window: u32,
    },
    /// Solve the mixed consistency equations for the T-side of an action family.
    SolveH {
        #[command(flatten)]
        spec: SpecArgs,
        /// Window radius: indices range over [-n, n]^2.
        #[arg(long, default_value_t = 2)]
        window: u32,
        /// Degree bound for the unknown T-side polynomials.
        #[arg(long, default_value_t = 3)]
        deg: u32,
    },
    /// Recover a record's parameters from its action family and round-trip.
    Recover {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyLie { .. } => "verify-lie",
            Command::VerifyRealization { .. } => "verify-realization",
            Command::VerifyModule { .. } => "verify-module",
            Command::Simplicity { .. } => "simplicity",
            Command::Iso { .. } => "iso",
            Command::Invariance { .. } => "invariance",
            Command::Residuals { .. } => "residuals",
            Command::SolveH { .. } => "solve-h",
            Command::Recover { .. } => "recover",
        }
    }
}

/// Runs one invocation. `argv` includes the program name, as in
/// `std::env::args_os`.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    exit_code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let started = Instant::now();
    match dispatch(&cli.command) {
        Ok(mut report) => {
            report.wall_time_ms = started.elapsed().as_millis() as u64;
            Outcome {
                exit_code: if report.passed() { 0 } else { 1 },
                stdout: report.render(),
                stderr: String::new(),
            }
        }
        Err(Error::Parse(msg)) => Outcome {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!(
                "error: {msg}\n\nFor valid flag values, run: hv2 {} --help\n",
                cli.command.name()
            ),
        },
        Err(other) => {
            let doc = serde_json::json!({
                "command": cli.command.name(),
                "error": other.to_string(),
            });
            Outcome {
                exit_code: 3,
                stdout: format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("error doc serializes")
                ),
                stderr: format!("error: {other}\n"),
            }
        }
    }
}

fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::VerifyLie { p, window, flavor } => verify_lie(p, *window, flavor),
        Command::VerifyRealization { p, window } => verify_realization(p, *window),
        Command::VerifyModule { spec, window, deg } => verify_module(spec, *window, *deg),
        Command::Simplicity { spec, f, bound } => simplicity(spec, f, *bound),
        Command::Iso { flavor, spec_a, spec_b, window, deg } => {
            iso(flavor, spec_a, spec_b, *window, *deg)
        }
        Command::Invariance { q, deg } => invariance(q, *deg),
        Command::Residuals { spec, window } => residuals(spec, *window),
        Command::SolveH { spec, window, deg } => solve_h(spec, *window, *deg),
        Command::Recover { spec } => recover(spec),
    }
}

/// Records a passed case cheaply and builds the case strings only on failure
/// (the sweeps run six-figure case counts).
fn zero_case(
    report: &mut Report,
    is_zero: bool,
    id: impl FnOnce() -> String,
    actual: impl FnOnce() -> String,
) {
    if is_zero {
        report.cases_total += 1;
    } else {
        let id = id();
        let actual = actual();
        report.case(&id, "0", &actual, false);
    }
}

fn parse_params(text: &str) -> Result<AlgebraParams> {
    let (p1, p2) = parse_scalar_pair(text)?;
    Ok(AlgebraParams::new(p1, p2))
}

fn flavored_generators(window: u32, flavor: Flavor) -> Vec<Generator> {
    let mut gens = window_generators(window as i64);
    if flavor == Flavor::PlainL {
        gens.retain(|g| !matches!(g, Generator::D1 | Generator::D2));
    }
    gens
}

fn monomial_vectors(deg: u32) -> Vec<Poly> {
    monomials_up_to(deg)
        .into_iter()
        .map(|(e1, e2)| Poly::monomial(e1, e2, Scalar::one()))
        .collect()
}

fn verify_lie(p_text: &str, window: u32, flavor_text: &str) -> Result<Report> {
    let p = parse_params(p_text)?;
    let flavor: Flavor = flavor_text.parse()?;
    let gens = flavored_generators(window, flavor);
    let elems: Vec<LieElement> = gens.iter().map(|g| LieElement::generator(*g)).collect();

    let mut report = Report::new("verify-lie");
    report.param("p", &p);
    report.param("window", window);
    report.param("flavor", flavor);
    report.result("generators", gens.len());

    let n = elems.len();
    let mut pair = vec![Vec::with_capacity(n); n];
    for i in 0..n {
        for j in 0..n {
            pair[i].push(bracket(&elems[i], &elems[j], &p));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let r = &pair[i][j] + &pair[j][i];
            zero_case(
                &mut report,
                r.is_zero(),
                || format!("antisymmetry x={} y={}", gens[i], gens[j]),
                || r.to_string(),
            );
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let jac = &(&bracket(&pair[i][j], &elems[k], &p)
                    + &bracket(&pair[j][k], &elems[i], &p))
                    + &bracket(&pair[k][i], &elems[j], &p);
                zero_case(
                    &mut report,
                    jac.is_zero(),
                    || format!("jacobi x={} y={} z={}", gens[i], gens[j], gens[k]),
                    || jac.to_string(),
                );
            }
        }
    }
    report.result("antisymmetry_pairs", n * n);
    report.result("jacobi_triples", n * n * n);
    Ok(report)
}

/// Weight sample used by `verify-realization`: includes zero, integer,
/// non-integer rational, and Gaussian coordinates.
const REALIZATION_WEIGHTS: [&str; 5] = ["0,0", "1,0", "2,3", "1/2,-1/3", "1i,1-1i"];

fn verify_realization(p_text: &str, window: u32) -> Result<Report> {
    let p = parse_params(p_text)?;
    let gens = window_generators(window as i64);
    let weights: Vec<(Scalar, Scalar)> = REALIZATION_WEIGHTS
        .iter()
        .map(|t| parse_scalar_pair(t).expect("fixed weight literals parse"))
        .collect();

    let mut report = Report::new("verify-realization");
    report.param("p", &p);
    report.param("window", window);
    report.result("weights", REALIZATION_WEIGHTS.join("; "));
    report.result("generators", gens.len());

    for x in &gens {
        for y in &gens {
            for w in &weights {
                let r = cross_check_bracket(x, y, w, &p);
                zero_case(
                    &mut report,
                    r.is_zero(),
                    || format!("bracket-vs-operators x={x} y={y} weight=({},{})", w.0, w.1),
                    || r.to_string(),
                );
            }
        }
    }
    Ok(report)
}

fn verify_module(spec_args: &SpecArgs, window: u32, deg: u32) -> Result<Report> {
    let spec = spec_args.resolve()?;
    let gens = window_generators(window as i64);
    let monos = monomial_vectors(deg);

    let mut report = Report::new("verify-module");
    report.param("spec", spec.to_flag_string());
    report.param("window", window);
    report.param("deg", deg);
    report.result("generators", gens.len());
    report.result("monomials", monos.len());

    for x in &gens {
        for y in &gens {
            for f in &monos {
                let r = spec.module_axiom_residual(x, y, f);
                zero_case(
                    &mut report,
                    r.is_zero(),
                    || format!("module-axiom x={x} y={y} f={f}"),
                    || r.to_string(),
                );
            }
        }
    }
    for m in window_indices(window as i64) {
        for f in &monos {
            let (e_res, t_res) = spec.factorization_residuals(m, f);
            zero_case(
                &mut report,
                e_res.is_zero(),
                || format!("factorization-E m={m} f={f}"),
                || e_res.to_string(),
            );
            zero_case(
                &mut report,
                t_res.is_zero(),
                || format!("factorization-T m={m} f={f}"),
                || t_res.to_string(),
            );
        }
    }
    Ok(report)
}

fn simplicity(spec_args: &SpecArgs, f_text: &str, bound: u32) -> Result<Report> {
    let spec = spec_args.resolve()?;
    let f: Poly = f_text.parse()?;

    let mut report = Report::new("simplicity");
    report.param("spec", spec.to_flag_string());
    report.param("f", &f);
    report.param("bound", bound);

    match spec.simplicity_witness(&f, bound as i64)? {
        Some(m) => {
            report.result("witness", m);
            report.case(
                "escape-within-bound",
                "index m with the T-action escaping the submodule",
                &m.to_string(),
                true,
            );
        }
        None => report.case(
            "escape-within-bound",
            "index m with the T-action escaping the submodule",
            "none found",
            false,
        ),
    }
    Ok(report)
}

fn iso(
    flavor_text: &str,
    spec_a_text: &str,
    spec_b_text: &str,
    window: u32,
    deg: u32,
) -> Result<Report> {
    let flavor: Flavor = flavor_text.parse()?;
    let a: ModuleSpec = spec_a_text.parse()?;
    let b: ModuleSpec = spec_b_text.parse()?;
    let decision = are_isomorphic(&a, &b, flavor)?;

    let mut report = Report::new("iso");
    report.param("flavor", flavor);
    report.param("specA", a.to_flag_string());
    report.param("specB", b.to_flag_string());
    report.param("window", window);
    report.param("deg", deg);
    report.result("isomorphic", decision);

    if decision {
        let xs = flavored_generators(window, flavor);
        let monos = monomial_vectors(deg);
        for x in &xs {
            for f in &monos {
                let r = intertwine_residual(x, f, &a, &b)?;
                zero_case(
                    &mut report,
                    r.is_zero(),
                    || format!("intertwine x={x} f={f}"),
                    || r.to_string(),
                );
            }
        }
    } else if flavor == Flavor::ExtendedL && are_isomorphic(&a, &b, Flavor::PlainL)? {
        // The graded actions are intertwined but the degree derivations are
        // not: exhibit the separating residual.
        let one = Poly::one();
        let r1 = intertwine_residual(&Generator::D1, &one, &a, &b)?;
        let r2 = intertwine_residual(&Generator::D2, &one, &a, &b)?;
        report.result("separating_residual_d1", &r1);
        report.result("separating_residual_d2", &r2);
        report.case(
            "separation",
            "nonzero degree-derivation residual on f = 1",
            &format!("d1: {r1}; d2: {r2}"),
            !(r1.is_zero() && r2.is_zero()),
        );
    }
    Ok(report)
}

fn invariance(q_text: &str, deg: u32) -> Result<Report> {
    let (q1, q2) = parse_scalar_pair(q_text)?;
    let basis = solve_translation_invariance(&q1, &q2, deg);

    let mut report = Report::new("invariance");
    report.param("q", format!("({q1},{q2})"));
    report.param("deg", deg);
    report.result("dimension", basis.len());
    report.result(
        "basis",
        basis
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; "),
    );
    for (i, f) in basis.iter().enumerate() {
        let shifted = f.shift(&q1, &q2);
        report.case(
            &format!("basis[{i}] invariant"),
            &f.to_string(),
            &shifted.to_string(),
            shifted == *f,
        );
    }
    Ok(report)
}

fn residuals(spec_args: &SpecArgs, window: u32) -> Result<Report> {
    let spec = spec_args.resolve()?;
    let fam = ActionFamily::from_spec(&spec, &window_indices(window as i64))?;
    let all = constraint_residuals(&fam, &spec.params());

    let mut report = Report::new("residuals");
    report.param("spec", spec.to_flag_string());
    report.param("window", window);

    let mut counts = [0u64; 3];
    for (eq, m, n, r) in &all {
        counts[match eq {
            EquationId::TT => 0,
            EquationId::TE => 1,
            EquationId::EE => 2,
        }] += 1;
        zero_case(
            &mut report,
            r.is_zero(),
            || format!("{eq} m={m} n={n}"),
            || r.to_string(),
        );
    }
    report.result("tt_cases", counts[0]);
    report.result("te_cases", counts[1]);
    report.result("ee_cases", counts[2]);
    Ok(report)
}

fn solve_h(spec_args: &SpecArgs, window: u32, deg: u32) -> Result<Report> {
    let spec = spec_args.resolve()?;
    let fam = ActionFamily::from_spec(&spec, &window_indices(window as i64))?;
    let outcome = solve_h_linear(&fam, &spec.params(), deg)?;

    let mut report = Report::new("solve-h");
    report.param("spec", spec.to_flag_string());
    report.param("window", window);
    report.param("deg", deg);
    report.result("dimension", outcome.dimension);
    report.result("surviving_dimension", outcome.surviving_dimension);
    report.result(
        "tt_survivors",
        outcome
            .tt_survivors
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join("; "),
    );
    report.case(
        "classified-family-in-span",
        "true",
        &outcome.classified_in_span.to_string(),
        outcome.classified_in_span,
    );
    report.case(
        "classified-family-passes-quadratic-filter",
        "true",
        &outcome.classified_passes_tt.to_string(),
        outcome.classified_passes_tt,
    );
    Ok(report)
}

fn recover(spec_args: &SpecArgs) -> Result<Report> {
    let spec = spec_args.resolve()?;
    let fam = ActionFamily::from_spec(&spec, &window_indices(1))?;
    let recovered = recover_parameters(&spec.params(), &fam)?;

    let mut report = Report::new("recover");
    report.param("spec", spec.to_flag_string());
    report.result("recovered", recovered.to_flag_string());
    report.case(
        "round-trip",
        &spec.to_flag_string(),
        &recovered.to_flag_string(),
        recovered == spec,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> Outcome {
        let mut argv = vec!["hv2"];
        argv.extend_from_slice(args);
        run(argv)
    }

    fn report_json(outcome: &Outcome) -> serde_json::Value {
        serde_json::from_str(&outcome.stdout).expect("stdout is one JSON document")
    }

    #[test]
    fn verify_lie_passes_and_counts_cases() {
        let out = invoke(&["verify-lie", "--p", "1,2", "--window", "1"]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let doc = report_json(&out);
        assert_eq!(doc["command"], "verify-lie");
        // 20 generators (9 T + 9 E + D1 + D2): 400 pairs + 8000 triples.
        assert_eq!(doc["cases_total"], 8400);
        assert_eq!(doc["failures"].as_array().unwrap().len(), 0);
        assert_eq!(doc["params"]["flavor"], "Lt");
    }

    #[test]
    fn verify_lie_plain_flavor_drops_derivations() {
        let out = invoke(&["verify-lie", "--p", "0,0", "--window", "1", "--flavor", "L"]);
        assert_eq!(out.exit_code, 0);
        let doc = report_json(&out);
        assert_eq!(doc["results"]["generators"], "18");
    }

    #[test]
    fn malformed_scalar_is_a_usage_error() {
        let out = invoke(&["verify-lie", "--p", "1/0,2", "--window", "1"]);
        assert_eq!(out.exit_code, 2);
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("error"));
    }

    #[test]
    fn unknown_subcommand_is_a_usage_error() {
        let out = invoke(&["frobnicate"]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn help_exits_zero() {
        let out = invoke(&["--help"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("verify-lie"));
    }

    #[test]
    fn verify_realization_passes() {
        let out = invoke(&["verify-realization", "--p", "1/2,-1/3", "--window", "1"]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let doc = report_json(&out);
        // 20 generators -> 400 pairs, 5 weights each.
        assert_eq!(doc["cases_total"], 2000);
    }

    #[test]
    fn verify_module_accepts_inline_record() {
        let out = invoke(&[
            "verify-module",
            "--p", "1,0",
            "--lambda", "1,1",
            "--alpha", "0",
            "--b0", "1",
            "--window", "1",
            "--deg", "2",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let doc = report_json(&out);
        // 400 axiom pairs x 6 monomials + 9 indices x 6 monomials x 2 sides.
        assert_eq!(doc["cases_total"], 2400 + 108);
        assert_eq!(doc["params"]["spec"], "--p 1,0 --lambda 1,1 --alpha 0 --b0 1");
    }

    #[test]
    fn spec_and_inline_flags_cannot_be_mixed() {
        let out = invoke(&[
            "verify-module",
            "--spec", "--p 1,0 --lambda 1,1 --alpha 0 --b0 1",
            "--p", "1,0",
        ]);
        assert_eq!(out.exit_code, 2);
        assert!(out.stderr.contains("not both"));
    }

    #[test]
    fn simplicity_reports_the_witness() {
        let out = invoke(&[
            "simplicity",
            "--spec", "--p 1,0 --lambda 1,1 --alpha 0 --b0 1",
            "--f", "d1",
            "--bound", "1",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let doc = report_json(&out);
        assert_eq!(doc["results"]["witness"], "(0,-1)");
    }

    #[test]
    fn simplicity_precondition_failure_exits_three() {
        // b0 = 0 kills every T-action; the witness search refuses to run.
        let out = invoke(&[
            "simplicity",
            "--spec", "--p 1,0 --lambda 1,1 --alpha 0 --b0 0",
            "--f", "d1",
            "--bound", "1",
        ]);
        assert_eq!(out.exit_code, 3);
        let doc = report_json(&out);
        assert_eq!(doc["command"], "simplicity");
        assert!(doc["error"].as_str().unwrap().contains("b0"));
    }

    #[test]
    fn iso_separating_residual_is_reported() {
        // Same lambda and b0, different alpha: isomorphic over L, not over Lt.
        let a = "--p 1,1 --lambda 2,3 --alpha 2 --b0 1";
        let b = "--p 1,1 --lambda 2,3 --alpha 0 --b0 1";
        let out = invoke(&["iso", "--flavor", "Lt", "--specA", a, "--specB", b]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let doc = report_json(&out);
        assert_eq!(doc["results"]["isomorphic"], "false");
        assert_ne!(doc["results"]["separating_residual_d1"], "0");

        let out = invoke(&[
            "iso", "--flavor", "L", "--specA", a, "--specB", b, "--window", "1", "--deg", "2",
        ]);
        assert_eq!(out.exit_code, 0);
        let doc = report_json(&out);
        assert_eq!(doc["results"]["isomorphic"], "true");
        assert_eq!(doc["failures"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn iso_incompatible_records_exit_three() {
        let out = invoke(&[
            "iso",
            "--flavor", "L",
            "--specA", "--p 1,0 --lambda 2,3 --alpha 0 --b0 1",
            "--specB", "--p 0,0 --lambda 2,3 --beta 1,2 --b0 1 --k 1",
        ]);
        assert_eq!(out.exit_code, 3);
    }

    #[test]
    fn invariance_reports_dimension_and_basis() {
        let out = invoke(&["invariance", "--q", "2,-3", "--deg", "4"]);
        assert_eq!(out.exit_code, 0);
        let doc = report_json(&out);
        assert_eq!(doc["results"]["dimension"], "2");
        assert_eq!(doc["results"]["basis"], "1; 3*d1 + 2*d2");
    }

    #[test]
    fn residuals_all_zero_for_classified_records() {
        let out = invoke(&[
            "residuals",
            "--spec", "--p 0,0 --lambda 2,1 --beta 1,-1 --b0 5 --k 1",
            "--window", "1",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let doc = report_json(&out);
        assert_eq!(doc["results"]["tt_cases"], "81");
        assert_eq!(doc["failures"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn solve_h_confirms_classified_membership() {
        let out = invoke(&[
            "solve-h",
            "--spec", "--p 1,0 --lambda 2,3 --alpha 0 --b0 1",
            "--window", "1",
            "--deg", "1",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let doc = report_json(&out);
        assert_eq!(doc["cases_total"], 2);
        assert!(doc["results"]["dimension"].as_str().unwrap().parse::<usize>().unwrap() >= 1);
    }

    #[test]
    fn recover_round_trips_via_cli() {
        let out = invoke(&[
            "recover",
            "--spec", "--p 1,2 --lambda 1/2,-3 --alpha -7/3 --b0 2i",
        ]);
        assert_eq!(out.exit_code, 0, "stderr: {}", out.stderr);
        let doc = report_json(&out);
        assert_eq!(
            doc["results"]["recovered"],
            "--p 1,2 --lambda 1/2,-3 --alpha -7/3 --b0 2i"
        );
    }

    #[test]
    fn reports_are_deterministic_modulo_wall_time() {
        let args = ["invariance", "--q", "1,1", "--deg", "4"];
        let mut a = report_json(&invoke(&args));
        let mut b = report_json(&invoke(&args));
        a["wall_time_ms"] = 0.into();
        b["wall_time_ms"] = 0.into();
        assert_eq!(a, b);
    }
}
