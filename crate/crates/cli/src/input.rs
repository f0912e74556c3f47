//! Resolving `--preset`, `--in` and `--gens` into named tables.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use gyrogroup::{
    build_preset, closure_from_permutations, parse_generators, parse_table_any, validate_group, Error, Group,
    OpTable, Preset,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug)]
pub enum Failure {
    /// A library error, optionally tagged with the input it came from.
    Core { input: Option<String>, error: Error },
    Io { path: String, message: String },
    Usage(String),
}

impl Failure {
    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Core { error, .. } => error.kind(),
            Failure::Io { .. } => "IoError",
            Failure::Usage(_) => "UsageError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core { error, .. } => error_exit_code(error),
            _ => EXIT_INPUT,
        }
    }

    fn within(self, name: &str) -> Self {
        match self {
            Failure::Core { input: None, error } => Failure::Core { input: Some(name.to_string()), error },
            other => other,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core { input: Some(name), error } => write!(f, "{name}: {error}"),
            Failure::Core { input: None, error } => write!(f, "{error}"),
            Failure::Io { path, message } => write!(f, "{path}: {message}"),
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure::Core { input: None, error }
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::HypothesisFailed(_) | Error::PreconditionFailed(_) | Error::NotAGyrogroup(_) => EXIT_HYPOTHESIS,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Clone)]
pub enum Source {
    Preset(String),
    File(PathBuf),
    Gens(PathBuf),
}

/// A table with the name it is reported under.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub table: OpTable,
}

impl Input {
    pub fn into_group(self) -> Result<(String, Group), Failure> {
        match validate_group(self.table) {
            Ok(g) => Ok((self.name, g)),
            Err(e) => Err(Failure::from(e).within(&self.name)),
        }
    }
}

fn read_source(path: &Path, stdin_used: &mut bool) -> Result<String, Failure> {
    let io_err = |e: std::io::Error| Failure::Io { path: path.display().to_string(), message: e.to_string() };
    if path == Path::new("-") {
        if std::mem::replace(stdin_used, true) {
            return Err(Failure::Usage("standard input can be read only once".into()));
        }
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

pub struct Loader {
    /// Closure size cap for generator files.
    pub cap: usize,
    stdin_used: bool,
}

impl Loader {
    pub fn new(cap: usize) -> Self {
        Loader { cap, stdin_used: false }
    }

    pub fn load(&mut self, source: &Source) -> Result<Input, Failure> {
        match source {
            Source::Preset(s) => {
                let preset: Preset = s.parse()?;
                let g = build_preset(&preset).map_err(|e| Failure::from(e).within(s))?;
                Ok(Input { name: preset.to_string(), table: g.into_table() })
            }
            Source::File(path) => {
                let name = path.display().to_string();
                let text = read_source(path, &mut self.stdin_used)?;
                let table = parse_table_any(&text).map_err(|e| Failure::from(e).within(&name))?;
                Ok(Input { name, table })
            }
            Source::Gens(path) => {
                let name = path.display().to_string();
                let text = read_source(path, &mut self.stdin_used)?;
                let gens = parse_generators(&text).map_err(|e| Failure::from(e).within(&name))?;
                let g = closure_from_permutations(&gens, self.cap).map_err(|e| Failure::from(e).within(&name))?;
                Ok(Input { name: format!("closure({name})"), table: g.into_table() })
            }
        }
    }

    pub fn load_all(&mut self, sources: &[Source]) -> Result<Vec<Input>, Failure> {
        sources.iter().map(|s| self.load(s)).collect()
    }
}
