//! Run configuration: command-line flags layered over an optional
//! `key = value` config file layered over defaults.
//!
//! Config-file keys are the long flag names without the leading `--`, plus
//! `command`. `#` starts a comment.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::dataset::Format;
use crate::eigensolve::SolverConfig;
use crate::error::{Error, Result};
use crate::experiments::{SweepGrid, DEFAULT_K_STATES};
use crate::model::{ModelParams, DEFAULT_N_MAX};
use crate::observables::DipoleOperator;
use crate::spectra::DEFAULT_LINE_THRESHOLD;

pub const OUT_ENV_VAR: &str = "POLARISCOPE_OUT";
pub const DEFAULT_OUT_DIR: &str = "out";
pub const DEFAULT_LAMBDA: f64 = 0.5;
pub const DEFAULT_N_MAX_LIST: [usize; 6] = [4, 8, 14, 20, 32, 63];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Command {
    /// Eigentable of both Hamiltonians at one coupling strength
    Spectrum,
    /// Energies, photon numbers, atomic energies and transitions over a λ grid
    Sweep,
    /// Photon numbers and atomic energies over a λ grid
    Observables,
    /// Ground-state absorption lines of both Hamiltonians
    Absorption,
    /// Truncation convergence of the lowest levels
    Converge,
    /// Coupling-regime table over a λ grid
    Regimes,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Sweep => "sweep",
            Command::Observables => "observables",
            Command::Absorption => "absorption",
            Command::Converge => "converge",
            Command::Regimes => "regimes",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        <Self as ValueEnum>::from_str(s, false).ok()
    }

    fn uses_grid(&self) -> bool {
        matches!(
            self,
            Command::Sweep | Command::Observables | Command::Regimes
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: ModelParams,
    pub n_max: usize,
    pub k_states: usize,
    pub grid: Option<SweepGrid>,
    pub output_dir: PathBuf,
    pub format: Format,
    pub tol: f64,
    pub threshold: f64,
    pub hermitian_dipole: bool,
    pub n_max_list: Vec<usize>,
}

impl RunConfig {
    pub fn solver(&self) -> SolverConfig {
        SolverConfig::with_tol(self.tol)
    }

    pub fn dipole(&self) -> DipoleOperator {
        if self.hermitian_dipole {
            DipoleOperator::Hermitian
        } else {
            DipoleOperator::Raising
        }
    }

    /// The grid to sweep: the configured one or `[0, 1.2 ω_c] × 121`.
    pub fn grid_or_default(&self) -> SweepGrid {
        self.grid
            .unwrap_or_else(|| SweepGrid::default_for(self.params))
    }

    /// Serialize as a config file that parses back to `self`.
    pub fn to_config_file(&self) -> String {
        let mut s = String::new();
        let p = &self.params;
        writeln!(s, "command = {}", self.command.as_str()).unwrap();
        writeln!(s, "omega1 = {}", p.omega1()).unwrap();
        writeln!(s, "omega2 = {}", p.omega2()).unwrap();
        writeln!(s, "omega-c = {}", p.omega_c()).unwrap();
        writeln!(s, "lambda = {}", p.lambda()).unwrap();
        if let Some(g) = &self.grid {
            writeln!(s, "lambda-min = {}", g.lambda_min()).unwrap();
            writeln!(s, "lambda-max = {}", g.lambda_max()).unwrap();
            writeln!(s, "steps = {}", g.steps()).unwrap();
        }
        writeln!(s, "n-max = {}", self.n_max).unwrap();
        writeln!(s, "k-states = {}", self.k_states).unwrap();
        writeln!(s, "format = {}", self.format.extension()).unwrap();
        writeln!(s, "out = {}", self.output_dir.display()).unwrap();
        writeln!(s, "tol = {}", self.tol).unwrap();
        writeln!(s, "threshold = {}", self.threshold).unwrap();
        writeln!(s, "hermitian-dipole = {}", self.hermitian_dipole).unwrap();
        let list: Vec<String> = self.n_max_list.iter().map(|n| n.to_string()).collect();
        writeln!(s, "n-max-list = {}", list.join(",")).unwrap();
        s
    }
}

/// Command-line surface.
#[derive(Debug, Parser)]
#[command(
    name = "polariscope",
    version,
    about = "Rabi vs rotating-wave cavity QED spectra"
)]
pub struct Cli {
    /// Subcommand; may instead come from the config file's `command` key
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Flat key = value config file
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub k_states: Option<usize>,
    /// csv or json
    #[arg(long)]
    pub format: Option<String>,
    /// Output directory (falls back to $POLARISCOPE_OUT, then ./out)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Eigensolver tolerance relative to the Frobenius norm
    #[arg(long)]
    pub tol: Option<f64>,
    /// Relative intensity cutoff for absorption lines
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Use |e><g| + |g><e| instead of |e><g| for line intensities
    #[arg(long)]
    pub hermitian_dipole: bool,
    /// Comma-separated truncations for `converge`
    #[arg(long)]
    pub n_max_list: Option<String>,
}

/// Raw, unvalidated settings from one layer.
#[derive(Debug, Default, Clone)]
struct Layer {
    values: BTreeMap<&'static str, String>,
}

const KEYS: [&str; 16] = [
    "command",
    "omega1",
    "omega2",
    "omega-c",
    "lambda",
    "lambda-min",
    "lambda-max",
    "steps",
    "n-max",
    "k-states",
    "format",
    "out",
    "tol",
    "threshold",
    "hermitian-dipole",
    "n-max-list",
];

impl Layer {
    fn set(&mut self, key: &'static str, value: impl ToString) {
        self.values.insert(key, value.to_string());
    }

    fn from_cli(cli: &Cli) -> Layer {
        let mut l = Layer::default();
        if let Some(c) = cli.command {
            l.set("command", c.as_str());
        }
        let floats = [
            ("omega1", cli.omega1),
            ("omega2", cli.omega2),
            ("omega-c", cli.omega_c),
            ("lambda", cli.lambda),
            ("lambda-min", cli.lambda_min),
            ("lambda-max", cli.lambda_max),
            ("tol", cli.tol),
            ("threshold", cli.threshold),
        ];
        for (k, v) in floats {
            if let Some(v) = v {
                l.set(k, v);
            }
        }
        for (k, v) in [
            ("steps", cli.steps),
            ("n-max", cli.n_max),
            ("k-states", cli.k_states),
        ] {
            if let Some(v) = v {
                l.set(k, v);
            }
        }
        if let Some(f) = &cli.format {
            l.set("format", f);
        }
        if let Some(o) = &cli.out {
            l.set("out", o.display());
        }
        if cli.hermitian_dipole {
            l.set("hermitian-dipole", true);
        }
        if let Some(list) = &cli.n_max_list {
            l.set("n-max-list", list);
        }
        l
    }

    fn from_file_text(text: &str) -> Result<Layer> {
        let mut l = Layer::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Usage(format!(
                    "config line {}: expected key = value, got '{line}'",
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            let known = KEYS.iter().find(|&&k| k == key).ok_or_else(|| {
                Error::Usage(format!("config line {}: unknown key '{key}'", lineno + 1))
            })?;
            if l.values.contains_key(known) {
                return Err(Error::Usage(format!(
                    "config line {}: duplicate key '{key}'",
                    lineno + 1
                )));
            }
            l.set(known, value.trim());
        }
        Ok(l)
    }

    fn overlay(mut self, top: Layer) -> Layer {
        self.values.extend(top.values);
        self
    }

    fn get<T: std::str::FromStr>(&self, key: &'static str) -> Result<Option<T>> {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Error::Usage(format!("invalid value '{v}' for --{key}")))
            })
            .transpose()
    }
}

/// Parse `argv` (including the program name) using `$POLARISCOPE_OUT` as
/// the output-directory fallback.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Usage(e.to_string()))?;
    resolve(&cli, std::env::var_os(OUT_ENV_VAR).map(PathBuf::from))
}

/// Merge flags, the config file named by `--config` and defaults.
pub fn resolve(cli: &Cli, env_out: Option<PathBuf>) -> Result<RunConfig> {
    let file_layer = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            Layer::from_file_text(&text)?
        }
        None => Layer::default(),
    };
    from_layer(&file_layer.overlay(Layer::from_cli(cli)), env_out)
}

/// Parse config-file text alone (no flags).
pub fn parse_config_text(text: &str, env_out: Option<PathBuf>) -> Result<RunConfig> {
    from_layer(&Layer::from_file_text(text)?, env_out)
}

fn from_layer(l: &Layer, env_out: Option<PathBuf>) -> Result<RunConfig> {
    let command = match l.values.get("command") {
        Some(c) => {
            Command::parse(c).ok_or_else(|| Error::Usage(format!("unknown command '{c}'")))?
        }
        None => return Err(Error::Usage("no command given".into())),
    };
    let params = ModelParams::new(
        l.get("omega1")?.unwrap_or(0.0),
        l.get("omega2")?.unwrap_or(1.0),
        l.get("omega-c")?.unwrap_or(1.0),
        l.get("lambda")?.unwrap_or(DEFAULT_LAMBDA),
    )?;
    let lmin: Option<f64> = l.get("lambda-min")?;
    let lmax: Option<f64> = l.get("lambda-max")?;
    let steps: Option<usize> = l.get("steps")?;
    let grid = if lmin.is_some() || lmax.is_some() || steps.is_some() || command.uses_grid() {
        Some(SweepGrid::new(
            lmin.unwrap_or(0.0),
            lmax.unwrap_or(1.2 * params.omega_c()),
            steps.unwrap_or(121),
            params,
        )?)
    } else {
        None
    };
    let n_max = l.get("n-max")?.unwrap_or(DEFAULT_N_MAX);
    let k_states = l.get("k-states")?.unwrap_or(DEFAULT_K_STATES);
    if k_states == 0 || k_states > 2 * (n_max + 1) {
        return Err(Error::Validation(format!(
            "k-states must be in 1..={} for n-max = {n_max}",
            2 * (n_max + 1)
        )));
    }
    let format = match l.values.get("format") {
        Some(f) => Format::parse(f)
            .ok_or_else(|| Error::Usage(format!("invalid value '{f}' for --format")))?,
        None => Format::Csv,
    };
    let output_dir = l
        .values
        .get("out")
        .map(PathBuf::from)
        .or(env_out)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    let tol = l.get("tol")?.unwrap_or(SolverConfig::default().tol);
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Validation(format!("tol must be > 0 (got {tol})")));
    }
    let threshold = l.get("threshold")?.unwrap_or(DEFAULT_LINE_THRESHOLD);
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::Validation(format!(
            "threshold must be >= 0 (got {threshold})"
        )));
    }
    let hermitian_dipole = l.get("hermitian-dipole")?.unwrap_or(false);
    let n_max_list = match l.values.get("n-max-list") {
        Some(s) => s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Usage(format!("invalid value '{s}' for --n-max-list")))
            })
            .collect::<Result<Vec<_>>>()?,
        None => DEFAULT_N_MAX_LIST.to_vec(),
    };
    Ok(RunConfig {
        command,
        params,
        n_max,
        k_states,
        grid,
        output_dir,
        format,
        tol,
        threshold,
        hermitian_dipole,
        n_max_list,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("polariscope").chain(args.iter().copied()))
            .map_err(|e| Error::Usage(e.to_string()))?;
        resolve(&cli, None)
    }

    #[test]
    fn spectrum_with_lambda_uses_defaults() {
        let c = parse(&["spectrum", "--lambda", "0.5"]).unwrap();
        assert_eq!(c.command, Command::Spectrum);
        assert_eq!(c.params, ModelParams::resonant(0.5).unwrap());
        assert_eq!(c.n_max, 14);
        assert_eq!(c.k_states, 7);
        assert_eq!(c.format, Format::Csv);
        assert!(c.grid.is_none());
        assert_eq!(c.output_dir, PathBuf::from(DEFAULT_OUT_DIR));
    }

    #[test]
    fn sweep_grid_from_flags() {
        let c = parse(&["sweep", "--lambda-max", "1.2", "--steps", "121"]).unwrap();
        let g = c.grid.unwrap();
        assert_eq!((g.lambda_min(), g.lambda_max(), g.steps()), (0.0, 1.2, 121));
    }

    #[test]
    fn zero_cavity_frequency_is_validation_error() {
        assert!(matches!(
            parse(&["spectrum", "--omega-c", "0"]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse(&["spectrum", "--lambda", "-1"]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        assert!(matches!(
            parse(&["spectrum", "--bogus", "1"]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(parse(&["frobnicate"]), Err(Error::Usage(_))));
        assert!(matches!(
            parse(&["spectrum", "--format", "xml"]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(parse(&[]), Err(Error::Usage(_))));
    }

    #[test]
    fn file_keys_and_comments() {
        let c = parse_config_text(
            "# run\ncommand = absorption\nlambda = 0.25 # coupling\nformat=json\n\n",
            None,
        )
        .unwrap();
        assert_eq!(c.command, Command::Absorption);
        assert_eq!(c.params.lambda(), 0.25);
        assert_eq!(c.format, Format::Json);
        assert!(matches!(
            parse_config_text("command = sweep\ncolour = red\n", None),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            parse_config_text("command = sweep\nlambda = 1\nlambda = 2\n", None),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            parse_config_text("command sweep\n", None),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn flags_override_file_override_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(
            &path,
            "command = spectrum\nlambda = 0.3\nn-max = 20\nout = from-file\n",
        )
        .unwrap();
        let p = path.to_str().unwrap();
        let c = parse(&["--config", p, "--lambda", "0.7"]).unwrap();
        assert_eq!(c.params.lambda(), 0.7);
        assert_eq!(c.n_max, 20);
        assert_eq!(c.output_dir, PathBuf::from("from-file"));
        let c = parse(&["converge", "--config", p]).unwrap();
        assert_eq!(c.command, Command::Converge);
    }

    #[test]
    fn env_out_is_a_fallback_only() {
        let cli = Cli::try_parse_from(["polariscope", "regimes"]).unwrap();
        let c = resolve(&cli, Some(PathBuf::from("env-dir"))).unwrap();
        assert_eq!(c.output_dir, PathBuf::from("env-dir"));
        let cli = Cli::try_parse_from(["polariscope", "regimes", "--out", "flag-dir"]).unwrap();
        let c = resolve(&cli, Some(PathBuf::from("env-dir"))).unwrap();
        assert_eq!(c.output_dir, PathBuf::from("flag-dir"));
    }

    #[test]
    fn negative_energies_parse() {
        let c = parse(&["spectrum", "--omega1", "-0.5", "--omega2", "0.5"]).unwrap();
        assert_eq!(c.params.omega21(), 1.0);
    }
}
