//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification verdict failed, 2 bad
//! parameters or input, 3 feasibility gate, 4 internal consistency failure.
//! Errors are written to standard error as `{"error": ..., "kind": ...}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{
    census_report, enumerate_report, verify_tables, CensusConfig, CensusError, CensusReport,
    OracleGate,
};
use crate::families::{
    build_group_with, default_cap, presentation_for, validate_params, BuildError, Family,
    RawParams,
};
use crate::fpgroups::{enumerate_cosets, parse_presentation, Word, DEFAULT_MAX_COSETS};
use crate::graphs::{complete_multipartite_shape, to_dot, underlying_graph};
use crate::maps::{invariants, rotation_system_text, AlgebraicMap, MapReport};
use crate::permgroup::DEFAULT_CLOSURE_CAP;
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "regmap", version, about = "Orientably-regular embeddings of K_{m[n]}")]
pub struct Cli {
    /// Coset bound for enumerations (default: four times the expected order).
    #[arg(long, global = true, value_parser = positive)]
    pub max_cosets: Option<usize>,
    /// Largest group held in memory.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP, value_parser = positive)]
    pub max_closure: usize,
    /// Oracle limits as `N,MN`: n <= N and m*n <= MN.
    #[arg(long, global = true, default_value = "3,9")]
    pub oracle_gate: OracleGate,
    #[command(subcommand)]
    pub command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one family map and report its invariants.
    Build {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the JSON artifact here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the rotation system to this file.
        #[arg(long)]
        rotsys: Option<PathBuf>,
        /// Also write the underlying graph as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List the family maps for K_{m[n]} grouped into isomorphism classes.
    Enumerate(SizeArgs),
    /// Brute-force census over Aut(K_{m[n]}), cross-checked with the families.
    Census {
        #[command(flatten)]
        size: SizeArgs,
        /// Base arc `u,v` for the search.
        #[arg(long, value_parser = parse_base)]
        base: Option<(usize, usize)>,
    },
    /// Compare the family census with the tabulated counts.
    Verify(SizeArgs),
    /// Print the presentation of a family group over a and b.
    Present {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Enumerate cosets and print the table as CSV.
    Cosets {
        /// Presentation text, e.g. `gens: a,b; relators: a^4, b^2, (a*b)^3`.
        #[arg(long, conflicts_with = "file")]
        text: Option<String>,
        /// File holding presentation text.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Subgroup generator words (repeatable).
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
    Rotsys,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args, Default)]
pub struct ParamArgs {
    /// Parameter JSON, inline or `@path`.
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,
}

impl ParamArgs {
    fn is_empty(&self) -> bool {
        self.params.is_none() && self.family.is_none()
    }

    fn raw(&self) -> Result<RawParams, CliError> {
        let mut raw = match &self.params {
            Some(src) => {
                let text = match src.strip_prefix('@') {
                    Some(path) => std::fs::read_to_string(path)
                        .map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?,
                    None => src.clone(),
                };
                RawParams::from_json(&text).map_err(|e| CliError::input(e.to_string()))?
            }
            None => RawParams::default(),
        };
        if let Some(f) = &self.family {
            raw.family = Some(f.parse::<Family>().map_err(|e| CliError::input(e.to_string()))?);
        }
        let fields = [
            (&mut raw.m, self.m),
            (&mut raw.n, self.n),
            (&mut raw.p, self.p),
            (&mut raw.e, self.e),
            (&mut raw.k, self.k),
            (&mut raw.i, self.i),
            (&mut raw.l, self.l),
            (&mut raw.j, self.j),
        ];
        for (slot, flag) in fields {
            if flag.is_some() {
                *slot = flag;
            }
        }
        if raw.family.is_none() {
            return Err(CliError::input("missing parameter `family`".into()));
        }
        Ok(raw)
    }
}

fn parse_base(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s.split_once(',').ok_or("expected u,v")?;
    Ok((
        u.trim().parse().map_err(|e| format!("{e}"))?,
        v.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum ErrorKind {
    Params,
    Gate,
    Internal,
}

#[derive(Debug)]
struct CliError {
    kind: ErrorKind,
    message: String,
}

impl CliError {
    fn input(message: String) -> Self {
        CliError {
            kind: ErrorKind::Params,
            message,
        }
    }

    fn internal(message: String) -> Self {
        CliError {
            kind: ErrorKind::Internal,
            message,
        }
    }

    fn code(&self) -> i32 {
        match self.kind {
            ErrorKind::Params => 2,
            ErrorKind::Gate => 3,
            ErrorKind::Internal => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Params(_) | Error::Parse(_) | Error::Scope(_) => ErrorKind::Params,
            Error::Census(CensusError::Gate(_)) => ErrorKind::Gate,
            Error::Census(CensusError::Scope(_) | CensusError::BadBase(..)) => ErrorKind::Params,
            _ => ErrorKind::Internal,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

macro_rules! impl_from_lib_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        })*
    };
}

impl_from_lib_error!(
    crate::families::ParamError,
    crate::fpgroups::ParseError,
    crate::fpgroups::EnumerationError,
    BuildError,
    CensusError,
    crate::maps::MapError,
    crate::graphs::GraphError
);

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::internal(format!("i/o error: {e}"))
    }
}

#[derive(Serialize)]
struct BuildArtifact {
    #[serde(flatten)]
    map: MapReport,
    shape: Option<[usize; 2]>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = writeln!(err, "{}", serde_json::json!({"error": e.to_string().trim(), "kind": ErrorKind::Params}));
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", serde_json::json!({"error": e.message, "kind": e.kind}));
            e.code()
        }
    }
}

fn config(cli: &Cli) -> CensusConfig {
    CensusConfig {
        max_cosets: cli.max_cosets,
        max_closure: cli.max_closure,
        oracle_gate: cli.oracle_gate,
        oracle_base: None,
    }
}

fn emit_report(report: &CensusReport, out: &mut dyn Write) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).map_err(|e| CliError::internal(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Build {
            params,
            format,
            out: path,
            rotsys,
            dot,
        } => {
            let p = validate_params(&params.raw()?)?;
            if p.group_order() as usize > cli.max_closure {
                return Err(CliError {
                    kind: ErrorKind::Gate,
                    message: format!(
                        "group order {} exceeds max closure {}",
                        p.group_order(),
                        cli.max_closure
                    ),
                });
            }
            let cap = cli.max_cosets.unwrap_or_else(|| default_cap(&p));
            let fg = build_group_with(&p, cap, &Default::default())?;
            let map = AlgebraicMap::from_family(&fg)?;
            let graph = underlying_graph(&map)?;
            let inv = invariants(&map);
            let artifact = BuildArtifact {
                map: MapReport::with_invariants(&map, &inv),
                shape: complete_multipartite_shape(&graph).map(|(m, n)| [m, n]),
            };
            let json = serde_json::to_string_pretty(&artifact)
                .map_err(|e| CliError::internal(e.to_string()))?;
            if let Some(path) = rotsys {
                std::fs::write(path, rotation_system_text(&map))?;
            }
            if let Some(path) = dot {
                std::fs::write(path, to_dot(&graph))?;
            }
            if let Some(path) = path {
                std::fs::write(path, format!("{json}\n"))?;
            }
            match format {
                Format::Json if path.is_none() => writeln!(out, "{json}")?,
                Format::Json => {}
                Format::Text => writeln!(
                    out,
                    "{}: |G| = {}, type {{{},{}}}, V = {}, E = {}, F = {}, genus {}, {:?}",
                    p.label(),
                    map.dart_count(),
                    inv.face_length,
                    inv.valency,
                    inv.vertices,
                    inv.edges,
                    inv.faces,
                    inv.genus,
                    inv.chirality
                )?,
                Format::Dot => write!(out, "{}", to_dot(&graph))?,
                Format::Rotsys => write!(out, "{}", rotation_system_text(&map))?,
            }
            Ok(0)
        }
        Command::Enumerate(size) => {
            emit_report(&enumerate_report(size.m, size.n, &config(cli))?, out)?;
            Ok(0)
        }
        Command::Census { size, base } => {
            let cfg = CensusConfig {
                oracle_base: *base,
                ..config(cli)
            };
            emit_report(&census_report(size.m, size.n, &cfg)?, out)?;
            Ok(0)
        }
        Command::Verify(size) => {
            let report = verify_tables(size.m, size.n, &config(cli))?;
            emit_report(&report, out)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Present { params } => {
            let p = validate_params(&params.raw()?)?;
            writeln!(out, "{}", presentation_for(&p))?;
            Ok(0)
        }
        Command::Cosets {
            text,
            file,
            subgroup,
            params,
        } => {
            let (pres, default_bound) = match (text, file) {
                (Some(t), _) => (parse_presentation(t)?, DEFAULT_MAX_COSETS),
                (None, Some(path)) => {
                    let t = std::fs::read_to_string(path)
                        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
                    (parse_presentation(&t)?, DEFAULT_MAX_COSETS)
                }
                (None, None) if !params.is_empty() => {
                    let p = validate_params(&params.raw()?)?;
                    (presentation_for(&p), default_cap(&p))
                }
                (None, None) => {
                    return Err(CliError::input(
                        "give --text, --file or family parameters".into(),
                    ))
                }
            };
            let words = subgroup
                .iter()
                .map(|w| pres.parse_word(w))
                .collect::<Result<Vec<Word>, _>>()?;
            let bound = cli.max_cosets.unwrap_or(default_bound);
            let table = enumerate_cosets(&pres, &words, bound)?;
            if !table.is_complete() {
                return Err(CliError {
                    kind: ErrorKind::Gate,
                    message: format!("coset enumeration overflowed {bound} cosets"),
                });
            }
            write!(out, "{}", table.to_csv())?;
            Ok(0)
        }
    }
}
