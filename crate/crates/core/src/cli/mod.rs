//! Command-line entry point: configuration, dispatch and reproducible manifests.
//!
//! Every subcommand turns into a [`RunConfig`], [`run`] turns that into a
//! [`Report`], and the report is written as canonical JSON. A single seed feeds
//! a ChaCha stream from which each check draws its own sub-seed in a fixed order.

pub mod checks;
pub mod config;
pub mod report;

use std::time::Instant;

use clap::Parser;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use config::{parse_class_label, Cli, Command, RunConfig};
pub use report::{emit_manifest, CanonicalFormatter, CheckResult, Report, Status, SCHEMA};

use crate::bfm::Form;
use crate::error::{Error, Result};
use crate::rootdata::{build_root_datum, Family, RootDatum};

/// Module operations each subcommand exercises.
pub const DISPATCH: &[(Command, &[&str])] = &[
    (Command::Roots, &["build_root_datum"]),
    (Command::Dual, &["build_root_datum", "langlands_dual"]),
    (Command::Weyl, &["weyl_elements"]),
    (Command::Foliate, &["weyl_elements", "classify_foliation_element"]),
    (Command::QhMult, &["quantum_chevalley", "qh_multiply", "laurent_arith"]),
    (Command::QhSpectrum, &["c1_operator"]),
    (Command::TodaCommute, &["toda_hamiltonian", "poisson_bracket", "pi_v"]),
    (Command::TodaFlow, &["toda_hamiltonian", "pi_v"]),
    (Command::BfmEmbed, &["toda_embed_rank1"]),
    (Command::BfmLeaf, &["leaf_rank1"]),
    (Command::BfmCheckSymplectic, &["symplectic_residual"]),
    (Command::BfmCuspidal, &["cuspidal_leaves_rank1", "leaf_rank1"]),
    (Command::MirrorFactorize, &["bruhat_factorize"]),
    (
        Command::MirrorCriticalPoints,
        &["find_critical_points", "superpotential", "unipotent_log", "char_chi"],
    ),
    (
        Command::MirrorCheck,
        &["find_critical_points", "mirror_spectral_check", "c1_operator"],
    ),
    (Command::MirrorTransversality, &["transversality_check"]),
    (Command::CheckAll, &["run", "emit_manifest"]),
];

/// Hands out per-check sub-seeds from one seeded stream.
struct SeedSource(ChaCha8Rng);

impl SeedSource {
    fn new(seed: u64) -> Self {
        SeedSource(ChaCha8Rng::seed_from_u64(seed))
    }

    fn next(&mut self) -> u64 {
        self.0.next_u64()
    }
}

fn timed(name: &str, f: impl FnOnce() -> Result<CheckResult>) -> Result<CheckResult> {
    let start = Instant::now();
    let out = match f() {
        Ok(r) => Ok(r),
        // bad arguments abort the run; anything else is a failed check
        Err(e @ (Error::InvalidArgument(_) | Error::UnsupportedType(_))) => Err(e),
        Err(e) => Ok(CheckResult::new(
            name,
            false,
            serde_json::json!({ "error": e.to_string() }),
        )),
    };
    if let Ok(r) = &out {
        eprintln!(
            "{:<34} {:<4} {:>9.3}s",
            r.name,
            if r.passed() { "pass" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    out
}

fn type_a_size(d: &RootDatum) -> Result<usize> {
    if d.type_label.family != Family::A {
        return Err(Error::UnsupportedType(format!("{} is not of type A", d.type_label)));
    }
    Ok(d.rank() + 1)
}

fn trials(cfg: &RunConfig, default: usize) -> usize {
    cfg.trials.unwrap_or(default)
}

/// Default number of random `q` for the spectral check: enough for the
/// acceptance sweeps at ranks 1 and 2, one point beyond.
fn mirror_trials(d: &RootDatum) -> usize {
    match d.rank() {
        1 => 20,
        2 => 5,
        _ => 1,
    }
}

/// Dispatch `cfg` and collect the checks, in a fixed order.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let d = build_root_datum(cfg.type_label, cfg.lattice)?;
    let mut seeds = SeedSource::new(cfg.seed);
    let mut out = Vec::new();
    match cfg.command {
        Command::Roots => out.push(timed("roots", || checks::roots(&d))?),
        Command::Dual => out.push(timed("dual", || checks::dual(&d))?),
        Command::Weyl => out.push(timed("weyl", || checks::weyl(&d))?),
        Command::Foliate => out.push(timed("foliate", || checks::foliate(&d))?),
        Command::QhMult => out.push(timed("qh-mult", || checks::qh_mult(&d, cfg))?),
        Command::QhSpectrum => out.push(timed("qh-spectrum", || checks::qh_spectrum(&d, cfg))?),
        Command::TodaCommute => {
            let n = type_a_size(&d)?;
            let tol = cfg.tol.unwrap_or(checks::BRACKET_TOL);
            let s = seeds.next();
            out.push(timed("toda-commute", || {
                checks::toda_commute(n, trials(cfg, 50), tol, s)
            })?);
        }
        Command::TodaFlow => {
            let n = type_a_size(&d)?;
            let k = cfg.k.unwrap_or(2);
            if k == 0 || k > n {
                return Err(Error::InvalidArgument(format!("--k must lie in 1..={n}")));
            }
            let tol = cfg.tol.unwrap_or(checks::DRIFT_TOL);
            let s = seeds.next();
            out.push(timed("toda-flow", || {
                checks::toda_flow_check(n, k, cfg.time.unwrap_or(1.0), trials(cfg, 5), tol, s)
            })?);
        }
        Command::BfmEmbed => out.push(timed("bfm-embed", || checks::bfm_embed(cfg))?),
        Command::BfmLeaf => out.push(timed("bfm-leaf", || checks::bfm_leaf(cfg))?),
        Command::BfmCheckSymplectic => {
            let tol = cfg.tol.unwrap_or(checks::SYMPLECTIC_TOL);
            let s = seeds.next();
            out.push(timed("bfm-check-symplectic", || {
                checks::bfm_check_symplectic(trials(cfg, 30), tol, s)
            })?);
        }
        Command::BfmCuspidal => {
            let forms = cfg
                .form
                .map_or_else(|| vec![Form::Psl2Side, Form::Sl2Side], |f| vec![f]);
            for f in forms {
                let s = seeds.next();
                out.push(timed("bfm-cuspidal", || checks::bfm_cuspidal(f, trials(cfg, 100), s))?);
            }
        }
        Command::MirrorFactorize => {
            if !cfg.levi.is_empty() {
                return Err(Error::InvalidArgument(
                    "factorization is implemented for L = T only".into(),
                ));
            }
            let n = type_a_size(&d)?;
            let tol = cfg.tol.unwrap_or(checks::FACTORIZE_TOL);
            let s = seeds.next();
            out.push(timed("mirror-factorize", || {
                checks::mirror_factorize(n, trials(cfg, 100), tol, s)
            })?);
        }
        Command::MirrorCriticalPoints => {
            let s = seeds.next();
            out.push(timed("mirror-critical-points", || {
                checks::mirror_critical_points(&d, cfg, s)
            })?);
        }
        Command::MirrorCheck => {
            let s = seeds.next();
            let t = trials(cfg, mirror_trials(&d));
            out.push(timed("mirror-check", || checks::mirror_check(&d, cfg, t, s))?);
        }
        Command::MirrorTransversality => {
            if !cfg.levi.is_empty() {
                return Err(Error::InvalidArgument(
                    "transversality is checked for L = T only".into(),
                ));
            }
            let s = seeds.next();
            out.push(timed("mirror-transversality", || {
                checks::mirror_transversality(&d, cfg, trials(cfg, 20), s)
            })?);
        }
        Command::CheckAll => check_all(&d, cfg, &mut seeds, &mut out)?,
    }
    Ok(Report::new(
        serde_json::to_value(cfg).expect("config is plain data"),
        out,
    ))
}

/// Every acceptance check that applies to the chosen type. Type-independent
/// checks (Toda, rank-one BFM, factorization) always run. `--q`, `--xi` and
/// `--levi` are ignored here; `--trials` and `--tol` are not overridable
/// per check and are ignored too.
fn check_all(d: &RootDatum, cfg: &RunConfig, seeds: &mut SeedSource, out: &mut Vec<CheckResult>) -> Result<()> {
    let mut plain = cfg.clone();
    plain.q = None;
    plain.xi = None;
    plain.levi.clear();
    plain.trials = None;
    plain.tol = None;
    plain.starts = None;
    let cfg = &plain;

    out.push(timed("dual", || checks::dual(d))?);
    out.push(timed("weyl", || checks::weyl(d))?);
    out.push(timed("foliate", || checks::foliate(d))?);
    out.push(timed("qh-consistency", || checks::qh_consistency(d, false))?);
    out.push(timed("qh-consistency-equivariant", || checks::qh_consistency(d, true))?);
    for n in 2..=4 {
        let s = seeds.next();
        out.push(timed("toda-commute", || {
            checks::toda_commute(n, 50, checks::BRACKET_TOL, s)
        })?);
    }
    for n in 2..=4 {
        let s = seeds.next();
        out.push(timed("toda-flow", || {
            checks::toda_flow_check(n, 2, 1.0, 5, checks::DRIFT_TOL, s)
        })?);
    }
    let s = seeds.next();
    out.push(timed("bfm-check-symplectic", || {
        checks::bfm_check_symplectic(30, checks::SYMPLECTIC_TOL, s)
    })?);
    out.push(timed("bfm-leaf", || checks::bfm_leaf(cfg))?);
    for f in [Form::Psl2Side, Form::Sl2Side] {
        let s = seeds.next();
        out.push(timed("bfm-cuspidal", || checks::bfm_cuspidal(f, 100, s))?);
    }
    for n in 2..=4 {
        let s = seeds.next();
        out.push(timed("mirror-factorize", || {
            checks::mirror_factorize(n, 100, checks::FACTORIZE_TOL, s)
        })?);
    }
    if d.type_label.family == Family::A && d.rank() <= 3 {
        let s = seeds.next();
        out.push(timed("mirror-check", || {
            checks::mirror_check(d, cfg, mirror_trials(d), s)
        })?);
        let s = seeds.next();
        out.push(timed("mirror-transversality", || {
            checks::mirror_transversality(d, cfg, 20, s)
        })?);
    }
    Ok(())
}

/// Result of one command-line invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Execution {
    /// 0 when every check passed, 1 on a failed check or I/O error, 2 on a usage error.
    pub code: i32,
    /// Canonical manifest, when a report was produced.
    pub manifest: Option<String>,
    /// Usage or error text for standard error.
    pub message: Option<String>,
    /// Whether the manifest went to `--out`.
    pub written: bool,
}

/// Parse `args` (including the program name), run, and write the manifest to
/// `--out` when given. Help and version requests come back as code 0 with the
/// text in `message`.
pub fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Execution {
                code,
                manifest: None,
                message: Some(e.render().to_string()),
                written: false,
            };
        }
    };
    let cfg = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            return Execution {
                code: 2,
                manifest: None,
                message: Some(format!("error: {e}")),
                written: false,
            }
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e @ (Error::InvalidArgument(_) | Error::UnsupportedType(_))) => {
            return Execution {
                code: 2,
                manifest: None,
                message: Some(format!("error: {e}")),
                written: false,
            }
        }
        Err(e) => {
            return Execution {
                code: 1,
                manifest: None,
                message: Some(format!("error: {e}")),
                written: false,
            }
        }
    };
    let manifest = report.to_canonical_json();
    let mut message = None;
    let mut code = if report.all_passed() { 0 } else { 1 };
    let mut written = false;
    if let Some(path) = &cfg.out {
        match emit_manifest(&report, path) {
            Ok(()) => written = true,
            Err(e) => {
                code = 1;
                message = Some(format!("error: {e}"));
            }
        }
    }
    if code == 1 && message.is_none() {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
        message = Some(format!("failed checks: {}", names.join(", ")));
    }
    Execution {
        code,
        manifest: Some(manifest),
        message,
        written,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_covers_every_command_and_operation() {
        for c in Command::ALL {
            assert!(DISPATCH.iter().any(|(d, _)| *d == c), "{c} missing from dispatch table");
        }
        let ops = [
            "build_root_datum",
            "langlands_dual",
            "weyl_elements",
            "classify_foliation_element",
            "laurent_arith",
            "unipotent_log",
            "char_chi",
            "quantum_chevalley",
            "qh_multiply",
            "c1_operator",
            "toda_hamiltonian",
            "poisson_bracket",
            "pi_v",
            "toda_embed_rank1",
            "leaf_rank1",
            "cuspidal_leaves_rank1",
            "symplectic_residual",
            "bruhat_factorize",
            "superpotential",
            "find_critical_points",
            "mirror_spectral_check",
            "transversality_check",
            "run",
            "emit_manifest",
        ];
        for op in ops {
            assert!(DISPATCH.iter().any(|(_, o)| o.contains(&op)), "{op} unreachable");
        }
    }

    #[test]
    fn every_command_runs_on_a1() {
        for c in Command::ALL {
            if c == Command::CheckAll {
                continue;
            }
            let mut cfg = RunConfig::new(c, "A1").unwrap();
            cfg.trials = Some(2);
            let r = run(&cfg).unwrap_or_else(|e| panic!("{c}: {e}"));
            assert!(r.all_passed(), "{c}: {}", r.to_canonical_json());
            assert_eq!(r.schema, SCHEMA);
            assert_eq!(r.config["seed"], 0);
        }
    }

    #[test]
    fn non_type_a_is_a_usage_error() {
        let cfg = RunConfig::new(Command::TodaCommute, "B2").unwrap();
        assert!(matches!(run(&cfg), Err(Error::UnsupportedType(_))));
        let e = execute(["bfm-workbench", "mirror", "check", "--type", "G2"]);
        assert_eq!(e.code, 2);
        assert!(e.manifest.is_none());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(execute(["bfm-workbench", "roots", "--type", "B2"]).code, 0);
        assert_eq!(execute(["bfm-workbench", "roots", "--bogus"]).code, 2);
        assert_eq!(execute(["bfm-workbench", "--help"]).code, 0);
        // an impossible tolerance makes the check fail
        let e = execute([
            "bfm-workbench",
            "bfm",
            "check-symplectic",
            "--trials",
            "2",
            "--tol",
            "1e-300",
        ]);
        assert_eq!(e.code, 1);
        assert!(e.manifest.unwrap().contains("\"status\": \"fail\""));
    }
}
