//! Batch front end: load documents, run one operation, emit a JSON report.

pub mod commands;
pub mod corpus;
pub mod doc;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use icat_core::sset::search::DEFAULT_BUDGET;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Doc { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Core(#[from] icat_core::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
    Advisory,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Unknown | Verdict::Advisory => 2,
        }
    }

    fn from_core(v: icat_core::sspace::Verdict) -> Verdict {
        match v {
            icat_core::sspace::Verdict::Yes => Verdict::Pass,
            icat_core::sspace::Verdict::No => Verdict::Fail,
            icat_core::sspace::Verdict::Unknown => Verdict::Unknown,
        }
    }
}

/// Command-line bounds; unset ones fall back to per-command defaults.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub dim: Option<usize>,
    pub outer_dim: Option<usize>,
    pub probe_dim: Option<usize>,
    pub hom_bound: Option<usize>,
    pub budget: Option<u64>,
    pub out: Option<std::path::PathBuf>,
}

impl Options {
    fn outer(&self) -> usize {
        self.outer_dim.unwrap_or(3)
    }
    fn probe(&self) -> usize {
        self.probe_dim.unwrap_or(2)
    }
    fn hom(&self) -> usize {
        self.hom_bound.unwrap_or(2)
    }
    fn budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputRef {
    pub kind: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Bounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outer_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hom_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputRef>,
    pub verdict: Verdict,
    pub evidence: Value,
    pub bounds: Bounds,
    pub seed: Option<u64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    /// Pretty JSON with a trailing newline; identical inputs give identical text.
    pub fn to_text(&self) -> String {
        doc::to_text(&serde_json::to_value(self).expect("reports serialize"))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A loaded input file.
pub struct Input {
    pub object: doc::Object,
    pub hash: InputRef,
}

pub fn read_input(path: &str) -> Result<Input> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(path.to_string(), e))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Doc { path: path.into(), message: e.to_string() })?;
    let object = doc::load(&text).map_err(|e| match e {
        CliError::Doc { path: p, message } => CliError::Doc { path: format!("{path}: {p}"), message },
        other => other,
    })?;
    let hash = InputRef { kind: object.kind().to_string(), sha256: sha256_hex(&bytes) };
    Ok(Input { object, hash })
}

/// Run `command` on `args` (file paths, or a sub-command for `verify`).
pub fn run(command: &str, args: &[String], opts: &Options) -> Result<Report> {
    let full = if command == "verify" {
        format!("verify {}", args.first().map(String::as_str).unwrap_or(""))
    } else {
        command.to_string()
    };
    let (inputs, out) = match command {
        "verify" => match args.first().map(String::as_str) {
            Some("key-lemma") if args.len() == 1 => (vec![], commands::verify_key_lemma(opts)?),
            _ => return Err(CliError::Usage("usage: verify key-lemma --trials N --seed S --dim D".into())),
        },
        "gen" => {
            if !args.is_empty() {
                return Err(CliError::Usage("gen takes no files".into()));
            }
            (vec![], commands::gen(opts)?)
        }
        _ => {
            let loaded: Vec<Input> = args.iter().map(|p| read_input(p)).collect::<Result<_>>()?;
            let objects: Vec<&doc::Object> = loaded.iter().map(|i| &i.object).collect();
            let out = commands::dispatch(command, &objects, opts)?;
            (loaded.into_iter().map(|i| i.hash).collect(), out)
        }
    };
    if let (Some(path), Some(d)) = (&opts.out, &out.document) {
        std::fs::write(path, doc::to_text(d)).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    }
    let mut evidence = out.evidence;
    if opts.out.is_none() {
        if let (Some(d), Value::Object(map)) = (out.document, &mut evidence) {
            map.insert("document".into(), d);
        }
    }
    Ok(Report { command: full, inputs, verdict: out.verdict, evidence, bounds: out.bounds, seed: out.seed })
}

/// What a command produces before it is wrapped into a [`Report`].
pub struct Outcome {
    pub verdict: Verdict,
    pub evidence: Value,
    pub bounds: Bounds,
    pub seed: Option<u64>,
    /// an output document (written to `--out`, else embedded in the evidence)
    pub document: Option<Value>,
}
