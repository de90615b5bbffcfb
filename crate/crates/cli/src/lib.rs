//! Command-line front end for `abtv`.
//!
//! Exit codes: 0 success, 1 failed relation check, 2 parse, validation or
//! argument errors, 3 enumeration cap exceeded.

pub mod builtin;
pub mod document;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use abtv::{
    BigRational, ChainComplex, EnumerationCap, Normalization, RelationReport, TorsionPairing,
    TvMethod,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use document::{parse_complex, ComplexDocument, DocumentError, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RELATION_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "abtv",
    version,
    about = "Abelian Turaev-Viro and U(1)-BF invariants of cellular chain complexes"
)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Source {
    /// Chain-complex file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,

    /// Builtin complex, see `abtv builtins`.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args, Debug)]
struct Level {
    #[arg(short = 'p', value_name = "P")]
    p: usize,
    #[arg(short = 'k', value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology with torsion.
    Homology {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'p', value_name = "P")]
        p: Option<usize>,
    },
    /// Turaev-Viro invariant Z^p_TV_k.
    Tv {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        level: Level,
        #[arg(long, value_enum, default_value_t = TvMethodArg::Snf)]
        method: TvMethodArg,
        #[arg(long, value_enum, default_value_t = NormalizationArg::Closed)]
        normalization: NormalizationArg,
        /// Maximum number of labelings the brute method may visit.
        #[arg(long, default_value_t = EnumerationCap::DEFAULT.0)]
        cap: u64,
    },
    /// BF partition function Z^p_BF_k.
    Bf {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        level: Level,
        #[arg(long, value_enum, default_value_t = BfMethodArg::Torsion)]
        method: BfMethodArg,
    },
    /// Discrete BF double sum over labelings and dual labelings.
    Dbf {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value_t = EnumerationCap::DEFAULT.0)]
        cap: u64,
    },
    /// Check Z^p_BF = factor * Z^p_TV.
    Relation {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        level: Level,
    },
    /// List builtin complexes.
    Builtins,
    /// Print a complex in the text file format.
    Export {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TvMethodArg {
    Brute,
    Snf,
    Formula,
    ClosedForm,
}

impl From<TvMethodArg> for TvMethod {
    fn from(m: TvMethodArg) -> Self {
        match m {
            TvMethodArg::Brute => TvMethod::Brute,
            TvMethodArg::Snf => TvMethod::Snf,
            TvMethodArg::Formula => TvMethod::Formula,
            TvMethodArg::ClosedForm => TvMethod::ClosedForm,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormalizationArg {
    Closed,
    Tqft,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Closed => Normalization::Closed,
            NormalizationArg::Tqft => Normalization::Tqft,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BfMethodArg {
    Torsion,
    Pairing,
}

#[derive(Debug)]
enum Failure {
    Document(DocumentError),
    Io(String),
    Core(abtv::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(abtv::Error::EnumerationCapExceeded { .. }) => EXIT_CAP,
            _ => EXIT_INVALID,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Document(e) => e.to_string(),
            Failure::Io(e) => e.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

impl From<abtv::Error> for Failure {
    fn from(e: abtv::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Document(e)
    }
}

struct Loaded {
    label: String,
    complex: ChainComplex,
}

impl Source {
    fn load(&self) -> Result<Loaded, Failure> {
        match (&self.file, &self.builtin) {
            (_, Some(name)) => Ok(Loaded {
                label: name.clone(),
                complex: builtin::resolve(name)?,
            }),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
                let doc = parse_complex(&text)?;
                Ok(Loaded {
                    label: path.display().to_string(),
                    complex: doc.to_complex().map_err(DocumentError::from)?,
                })
            }
            (None, None) => Err(Failure::Io("no input given".into())),
        }
    }
}

/// `a/b`, or just `a` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn value_json(
    command: &str,
    input: &str,
    level: &Level,
    method: &str,
    value: &BigRational,
) -> Value {
    json!({
        "command": command,
        "input": input,
        "p": level.p,
        "k": level.k,
        "method": method,
        "value_num": value.numer().to_string(),
        "value_den": value.denom().to_string(),
    })
}

fn relation_text(rep: &RelationReport) -> String {
    let mut s = format!(
        "bf = {}\ntv = {}\nfactor = {}\nok = {}",
        rep.bf,
        format_rational(&rep.tv),
        format_rational(&rep.factor),
        rep.ok
    );
    if !rep.ok {
        let bf = BigRational::from_integer(rep.bf.clone());
        let rhs = &rep.factor * &rep.tv;
        s.push_str(&format!(
            "\nmismatch: bf = {} but factor * tv = {} (difference {})",
            format_rational(&bf),
            format_rational(&rhs),
            format_rational(&(&bf - &rhs))
        ));
    }
    s
}

struct Output {
    code: i32,
    text: String,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            code: EXIT_OK,
            text,
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let json = cli.json;
    let emit_value =
        |command: &str, input: &str, level: &Level, method: &str, value: &BigRational| {
            if json {
                value_json(command, input, level, method, value).to_string()
            } else {
                format_rational(value)
            }
        };
    match &cli.command {
        Command::Builtins => {
            if json {
                let list: Vec<Value> = builtin::BUILTINS
                    .iter()
                    .map(|(n, d)| json!({ "name": n, "description": d }))
                    .collect();
                Ok(Output::ok(
                    json!({ "command": "builtins", "builtins": list }).to_string(),
                ))
            } else {
                let width = builtin::BUILTINS
                    .iter()
                    .map(|(n, _)| n.len())
                    .max()
                    .unwrap_or(0);
                Ok(Output::ok(
                    builtin::BUILTINS
                        .iter()
                        .map(|(n, d)| format!("{n:width$}  {d}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                ))
            }
        }
        Command::Export { source } => {
            let loaded = source.load()?;
            Ok(Output::ok(
                ComplexDocument::from_complex(loaded.label, &loaded.complex)
                    .serialize()
                    .trim_end()
                    .to_string(),
            ))
        }
        Command::Homology { source, p } => {
            let loaded = source.load()?;
            let degrees: Vec<usize> = match p {
                Some(p) => vec![*p],
                None => (0..=loaded.complex.dim()).collect(),
            };
            let groups = degrees
                .iter()
                .map(|&d| abtv::homology(&loaded.complex, d).map(|g| (d, g)))
                .collect::<Result<Vec<_>, _>>()?;
            if json {
                let list: Vec<Value> = groups
                    .iter()
                    .map(|(d, g)| {
                        json!({
                            "p": d,
                            "betti": g.betti,
                            "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                Ok(Output::ok(
                    json!({ "command": "homology", "input": loaded.label, "groups": list })
                        .to_string(),
                ))
            } else {
                Ok(Output::ok(
                    groups
                        .iter()
                        .map(|(d, g)| format!("H_{d} = {g}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                ))
            }
        }
        Command::Tv {
            source,
            level,
            method,
            normalization,
            cap,
        } => {
            let loaded = source.load()?;
            let v = abtv::tv_invariant(
                &loaded.complex,
                level.p,
                level.k,
                (*method).into(),
                (*normalization).into(),
                EnumerationCap(*cap),
            )?;
            Ok(Output::ok(emit_value(
                "tv",
                &loaded.label,
                level,
                v.method.as_str(),
                &v.value,
            )))
        }
        Command::Bf {
            source,
            level,
            method,
        } => {
            let loaded = source.load()?;
            let v = match method {
                BfMethodArg::Torsion => abtv::bf_partition(&loaded.complex, level.p, level.k)?,
                BfMethodArg::Pairing => {
                    if level.p != 1 {
                        return Err(Failure::Core(abtv::Error::InvalidParameters(
                            "the pairing method needs a lens space and p = 1".into(),
                        )));
                    }
                    let tp = TorsionPairing::from_lens_metadata(&loaded.complex)?;
                    abtv::bf_partition_from_pairing(&tp, level.k)?
                }
            };
            let value = BigRational::from_integer(v.value);
            Ok(Output::ok(emit_value(
                "bf",
                &loaded.label,
                level,
                v.method.as_str(),
                &value,
            )))
        }
        Command::Dbf { source, level, cap } => {
            let loaded = source.load()?;
            let v = abtv::discrete_bf_double_sum(
                &loaded.complex,
                level.p,
                level.k,
                EnumerationCap(*cap),
            )?;
            Ok(Output::ok(emit_value(
                "dbf",
                &loaded.label,
                level,
                "double_sum",
                &v.value,
            )))
        }
        Command::Relation { source, level } => {
            let loaded = source.load()?;
            let rep = abtv::bf_tv_relation_check(&loaded.complex, level.p, level.k)?;
            let code = if rep.ok {
                EXIT_OK
            } else {
                EXIT_RELATION_FAILED
            };
            let text = if json {
                let mut obj = value_json("relation", &loaded.label, level, "relation", &rep.factor);
                obj["bf"] = json!(rep.bf.to_string());
                obj["tv"] = json!(format_rational(&rep.tv));
                obj["ok"] = json!(rep.ok);
                obj.to_string()
            } else {
                relation_text(&rep)
            };
            Ok(Output { code, text })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            o.code
        }
        Err(f) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({ "error": f.message(), "exit_code": f.exit_code() })
                );
            }
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}
