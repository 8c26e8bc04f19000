//! Command-line surface and the run configuration it produces.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::bfm::Form;
use crate::error::{Error, Result};
use crate::exactalg::numeric::{parse_complex, parse_complex_list};
use crate::rootdata::{CartanType, LatticeChoice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    Roots,
    Dual,
    Weyl,
    Foliate,
    QhMult,
    QhSpectrum,
    TodaCommute,
    TodaFlow,
    BfmEmbed,
    BfmLeaf,
    BfmCheckSymplectic,
    BfmCuspidal,
    MirrorFactorize,
    MirrorCriticalPoints,
    MirrorCheck,
    MirrorTransversality,
    CheckAll,
}

impl Command {
    pub const ALL: [Command; 17] = [
        Command::Roots,
        Command::Dual,
        Command::Weyl,
        Command::Foliate,
        Command::QhMult,
        Command::QhSpectrum,
        Command::TodaCommute,
        Command::TodaFlow,
        Command::BfmEmbed,
        Command::BfmLeaf,
        Command::BfmCheckSymplectic,
        Command::BfmCuspidal,
        Command::MirrorFactorize,
        Command::MirrorCriticalPoints,
        Command::MirrorCheck,
        Command::MirrorTransversality,
        Command::CheckAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::Dual => "dual",
            Command::Weyl => "weyl",
            Command::Foliate => "foliate",
            Command::QhMult => "qh mult",
            Command::QhSpectrum => "qh spectrum",
            Command::TodaCommute => "toda commute",
            Command::TodaFlow => "toda flow",
            Command::BfmEmbed => "bfm embed",
            Command::BfmLeaf => "bfm leaf",
            Command::BfmCheckSymplectic => "bfm check-symplectic",
            Command::BfmCuspidal => "bfm cuspidal",
            Command::MirrorFactorize => "mirror factorize",
            Command::MirrorCriticalPoints => "mirror critical-points",
            Command::MirrorCheck => "mirror check",
            Command::MirrorTransversality => "mirror transversality",
            Command::CheckAll => "check all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Command {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Everything a run depends on. Unset optional fields fall back to
/// per-check defaults; the seed is always recorded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(rename = "type")]
    pub type_label: CartanType,
    pub lattice: LatticeChoice,
    pub q: Option<Vec<Complex64>>,
    pub xi: Option<Vec<Complex64>>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub tol: Option<f64>,
    pub starts: Option<usize>,
    /// 0-based simple root indices.
    pub levi: Vec<usize>,
    pub equivariant: bool,
    pub left: Option<String>,
    pub right: Option<String>,
    pub u: Option<Complex64>,
    pub s: Option<Complex64>,
    pub k: Option<usize>,
    pub time: Option<f64>,
    pub form: Option<Form>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, type_label: &str) -> Result<Self> {
        Ok(RunConfig {
            command,
            type_label: type_label.parse()?,
            lattice: LatticeChoice::SimplyConnected,
            q: None,
            xi: None,
            seed: 0,
            trials: None,
            tol: None,
            starts: None,
            levi: Vec::new(),
            equivariant: false,
            left: None,
            right: None,
            u: None,
            s: None,
            k: None,
            time: None,
            form: None,
            out: None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidArgument(format!("tolerance must be positive, got {t}")));
            }
        }
        if self.trials == Some(0) {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.starts == Some(0) {
            return Err(Error::InvalidArgument("starts must be at least 1".into()));
        }
        let r = self.type_label.rank;
        for (name, v) in [("q", &self.q), ("xi", &self.xi)] {
            if let Some(v) = v {
                if v.len() != r {
                    return Err(Error::InvalidArgument(format!(
                        "--{name} needs {r} values for {}",
                        self.type_label
                    )));
                }
                if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::InvalidArgument(format!("--{name} must be finite")));
                }
            }
        }
        if self.levi.iter().any(|&i| i >= r) {
            return Err(Error::InvalidArgument(format!("--levi indices must lie in 1..={r}")));
        }
        if let Some(t) = self.time {
            if !t.is_finite() {
                return Err(Error::InvalidArgument("--time must be finite".into()));
            }
        }
        Ok(())
    }

    /// `q`, defaulting to all ones.
    pub fn q_values(&self) -> Vec<Complex64> {
        self.q
            .clone()
            .unwrap_or_else(|| vec![Complex64::new(1.0, 0.0); self.type_label.rank])
    }

    /// `ξ`, defaulting to all zeros.
    pub fn xi_values(&self) -> Vec<Complex64> {
        self.xi
            .clone()
            .unwrap_or_else(|| vec![Complex64::default(); self.type_label.rank])
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "bfm-workbench",
    version,
    about = "Rank-1 BFM spaces, Toda, quantum cohomology and mirror checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug)]
struct Flags {
    /// Cartan type: A1..A4, B2, C2, G2
    #[arg(long = "type", global = true, default_value = "A1")]
    type_label: String,
    /// simply-connected | adjoint
    #[arg(long, global = true, default_value = "simply-connected")]
    lattice: String,
    /// Comma-separated complex quantum parameters, e.g. `1,0.5+2i`
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Comma-separated complex equivariant parameters
    #[arg(long, global = true, allow_hyphen_values = true)]
    xi: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the manifest here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Newton starts for critical-point sweeps
    #[arg(long, global = true)]
    starts: Option<usize>,
    /// Comma-separated 1-based simple roots spanning the Levi
    #[arg(long, global = true)]
    levi: Option<String>,
    /// Use the equivariant ring in `qh mult`
    #[arg(long, global = true)]
    equivariant: bool,
    /// Left class for `qh mult`, e.g. `s1s2` or `e`
    #[arg(long, global = true)]
    left: Option<String>,
    /// Right class for `qh mult`
    #[arg(long, global = true)]
    right: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<String>,
    /// Hamiltonian degree for `toda flow`
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Flow time for `toda flow`
    #[arg(long, global = true, allow_negative_numbers = true)]
    time: Option<f64>,
    /// psl2 | sl2
    #[arg(long, global = true)]
    form: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Root datum and positive roots
    Roots,
    /// Langlands dual datum
    Dual,
    /// Weyl group elements
    Weyl,
    /// Scan W for the foliation criterion
    Foliate,
    #[command(subcommand)]
    Qh(QhCommand),
    #[command(subcommand)]
    Toda(TodaCommand),
    #[command(subcommand)]
    Bfm(BfmCommand),
    #[command(subcommand)]
    Mirror(MirrorCommand),
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Subcommand, Debug)]
enum QhCommand {
    /// Quantum product of two Schubert classes
    Mult,
    /// Spectrum of c1 at numeric q and xi
    Spectrum,
}

#[derive(Subcommand, Debug)]
enum TodaCommand {
    /// Involutivity of the Toda Hamiltonians
    Commute,
    /// Isospectral RK4 flow
    Flow,
}

#[derive(Subcommand, Debug)]
enum BfmCommand {
    /// Rank-1 Toda embedding
    Embed,
    /// Point of a rank-1 leaf
    Leaf,
    /// Symplectic residual of the rank-1 embedding
    CheckSymplectic,
    /// Cuspidal leaves and leaf solving
    Cuspidal,
}

#[derive(Subcommand, Debug)]
enum MirrorCommand {
    /// Bruhat factorization round trips
    Factorize,
    /// Critical points of the superpotential
    CriticalPoints,
    /// Critical values against the c1 spectrum
    Check,
    /// Transversality of the cell and B+
    Transversality,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Every check for the chosen type
    All,
}

fn parse_levi(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(Error::InvalidArgument(format!("bad Levi index '{t}'"))),
        })
        .collect()
}

/// Parse `s1s2s1`-style labels into 0-based reduced words; `e` is the identity.
pub fn parse_class_label(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = || Error::InvalidArgument(format!("bad class label '{s}'"));
    let rest = s.strip_prefix('s').ok_or_else(bad)?;
    rest.split('s')
        .map(|t| match t.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(bad()),
        })
        .collect()
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let command = match self.command {
            CliCommand::Roots => Command::Roots,
            CliCommand::Dual => Command::Dual,
            CliCommand::Weyl => Command::Weyl,
            CliCommand::Foliate => Command::Foliate,
            CliCommand::Qh(QhCommand::Mult) => Command::QhMult,
            CliCommand::Qh(QhCommand::Spectrum) => Command::QhSpectrum,
            CliCommand::Toda(TodaCommand::Commute) => Command::TodaCommute,
            CliCommand::Toda(TodaCommand::Flow) => Command::TodaFlow,
            CliCommand::Bfm(BfmCommand::Embed) => Command::BfmEmbed,
            CliCommand::Bfm(BfmCommand::Leaf) => Command::BfmLeaf,
            CliCommand::Bfm(BfmCommand::CheckSymplectic) => Command::BfmCheckSymplectic,
            CliCommand::Bfm(BfmCommand::Cuspidal) => Command::BfmCuspidal,
            CliCommand::Mirror(MirrorCommand::Factorize) => Command::MirrorFactorize,
            CliCommand::Mirror(MirrorCommand::CriticalPoints) => Command::MirrorCriticalPoints,
            CliCommand::Mirror(MirrorCommand::Check) => Command::MirrorCheck,
            CliCommand::Mirror(MirrorCommand::Transversality) => Command::MirrorTransversality,
            CliCommand::Check(CheckCommand::All) => Command::CheckAll,
        };
        let f = self.flags;
        let mut cfg = RunConfig::new(command, &f.type_label)?;
        cfg.lattice = f.lattice.parse()?;
        cfg.q = f.q.as_deref().map(parse_complex_list).transpose()?;
        cfg.xi = f.xi.as_deref().map(parse_complex_list).transpose()?;
        cfg.seed = f.seed;
        cfg.trials = f.trials;
        cfg.tol = f.tol;
        cfg.out = f.out;
        cfg.starts = f.starts;
        cfg.levi = f.levi.as_deref().map(parse_levi).transpose()?.unwrap_or_default();
        cfg.levi.sort_unstable();
        cfg.levi.dedup();
        cfg.equivariant = f.equivariant;
        if let Some(l) = &f.left {
            parse_class_label(l)?;
        }
        if let Some(r) = &f.right {
            parse_class_label(r)?;
        }
        cfg.left = f.left;
        cfg.right = f.right;
        cfg.u = f.u.as_deref().map(parse_complex).transpose()?;
        cfg.s = f.s.as_deref().map(parse_complex).transpose()?;
        cfg.k = f.k;
        cfg.time = f.time;
        cfg.form = f.form.as_deref().map(str::parse).transpose()?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("bfm-workbench").chain(args.iter().copied()))
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        cli.into_config()
    }

    #[test]
    fn flags_parse() {
        let c = parse(&["mirror", "check", "--type", "A2", "--q", "1,0.5+2i", "--seed", "3"]).unwrap();
        assert_eq!(c.command, Command::MirrorCheck);
        assert_eq!(c.type_label.to_string(), "A2");
        assert_eq!(c.q.as_ref().unwrap()[1], Complex64::new(0.5, 2.0));
        assert_eq!(c.seed, 3);
        let c = parse(&["--type", "A3", "mirror", "factorize", "--levi", "1,3"]).unwrap();
        assert_eq!(c.levi, vec![0, 2]);
        let c = parse(&["toda", "flow", "--time", "-0.5"]).unwrap();
        assert_eq!(c.time, Some(-0.5));
    }

    #[test]
    fn bad_flags_rejected() {
        assert!(parse(&["roots", "--type", "E8"]).is_err());
        assert!(parse(&["roots", "--tol", "-1"]).is_err());
        assert!(parse(&["roots", "--tol", "0"]).is_err());
        assert!(parse(&["qh", "mult", "--type", "A2", "--q", "1"]).is_err());
        assert!(parse(&["qh", "mult", "--left", "x1"]).is_err());
        assert!(parse(&["mirror", "check", "--type", "A2", "--levi", "3"]).is_err());
        assert!(parse(&["bfm", "cuspidal", "--form", "gl2"]).is_err());
        assert!(parse(&["toda"]).is_err());
        assert!(parse(&["nonsense"]).is_err());
    }

    #[test]
    fn class_labels() {
        assert_eq!(parse_class_label("e").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_class_label("s1s2s1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_class_label("s12").unwrap(), vec![11]);
        assert!(parse_class_label("s0").is_err());
        assert!(parse_class_label("t1").is_err());
    }

    #[test]
    fn command_names_unique() {
        let mut names: Vec<_> = Command::ALL.iter().map(|c| c.name()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), Command::ALL.len());
    }
}
