//! Knot catalog: builtin entries, `name: code` table import, plain-text
//! persistence and `@name` resolution.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

mod cli;
pub use cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

use crate::constructions::kt_knot;
use crate::invariants::{ac_alexander, generalized_alexander, odd_writhe, writhe_polynomial};
use crate::kernel::{CodeError, KnotCode, LinkCode};
use crate::surface::{carter_genus, is_almost_classical};

pub const CATALOG_ENV: &str = "VK_CATALOG";
const CATALOG_FILE: &str = "catalog.txt";
const GOLDEN_DIR: &str = "goldens";

/// Builtin knots.
pub const BUILTINS: &[(&str, &str)] = &[
    ("unknot", ""),
    ("trefoil", "O1+ U2+ O3+ U1+ O2+ U3+"),
    ("figure-8", "O1+ U4- O2- U1+ O3+ U2- O4- U3+"),
    ("vtrefoil", "O1+ O2+ U1+ U2+"),
    ("kishino", "U2- O1+ O2- U1+ O4+ U3- U4+ O3-"),
];

/// Names reserved for entries that only an imported table can fill.
pub const PLACEHOLDERS: &[&str] = &["4.99", "4.105"];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    Unknown(String),
    #[error("`{0}` is a placeholder; import a table that defines it")]
    Placeholder(String),
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("{0}")]
    Io(String),
    #[error("cached invariants of `{name}` differ from recomputation: {field}")]
    StaleCache { name: String, field: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Builtin,
    Imported { file: String, line: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Builtin => f.write_str("builtin"),
            Provenance::Imported { file, line } => write!(f, "imported {file}:{line}"),
        }
    }
}

/// Invariant values as printed by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub crossings: usize,
    pub genus: usize,
    pub ac: bool,
    pub odd_writhe: i32,
    pub writhe_poly: String,
    pub alexander: String,
    pub galexander: String,
}

impl Invariants {
    pub fn compute(code: &KnotCode) -> Self {
        Self {
            crossings: code.crossing_count(),
            genus: carter_genus(code.as_link()),
            ac: is_almost_classical(code),
            odd_writhe: odd_writhe(code),
            writhe_poly: writhe_polynomial(code).to_string(),
            alexander: ac_alexander(code).poly.to_string(),
            galexander: generalized_alexander(code).to_string(),
        }
    }

    fn lines(&self) -> Vec<(&'static str, String)> {
        vec![
            ("crossings", self.crossings.to_string()),
            ("genus", self.genus.to_string()),
            ("ac", self.ac.to_string()),
            ("odd-writhe", self.odd_writhe.to_string()),
            ("writhe-poly", self.writhe_poly.clone()),
            ("alexander", self.alexander.clone()),
            ("galexander", self.galexander.clone()),
        ]
    }

    fn parse(text: &str) -> BTreeMap<String, String> {
        text.lines()
            .filter_map(|l| l.split_once('=').map(|(k, v)| (k.trim().to_string(), v.trim().to_string())))
            .collect()
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.lines() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub code: KnotCode,
    pub provenance: Provenance,
}

/// Result of importing a table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ImportReport {
    pub added: Vec<String>,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
    dir: Option<PathBuf>,
}

impl Catalog {
    /// Builtin entries only.
    pub fn builtin() -> Self {
        let mut entries = BTreeMap::new();
        let mut add = |name: &str, code: KnotCode| {
            entries.insert(name.to_string(), CatalogEntry { name: name.into(), code, provenance: Provenance::Builtin });
        };
        for (name, code) in BUILTINS {
            add(name, code.parse().expect("builtin code parses"));
        }
        add("kt", kt_knot());
        Self { entries, dir: None }
    }

    /// Builtins plus the entries persisted in `dir` (if it has a catalog file).
    pub fn load(dir: &Path) -> Result<Self, CatalogError> {
        let mut cat = Self::builtin();
        cat.dir = Some(dir.to_path_buf());
        let file = dir.join(CATALOG_FILE);
        if file.exists() {
            let text = fs::read_to_string(&file).map_err(|e| CatalogError::Io(format!("{}: {e}", file.display())))?;
            let rep = cat.import_text(&text, &file.display().to_string(), false)?;
            if let Some(e) = rep.errors.first() {
                return Err(CatalogError::Io(format!("{}: {e}", file.display())));
            }
        }
        Ok(cat)
    }

    /// Builtins, plus the catalog directory named by `VK_CATALOG` if set.
    pub fn from_env() -> Result<Self, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(d) => Self::load(Path::new(&d)),
            None => Ok(Self::builtin()),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        match self.entries.get(name) {
            Some(e) => Ok(e),
            None if PLACEHOLDERS.contains(&name) => Err(CatalogError::Placeholder(name.into())),
            None => Err(CatalogError::Unknown(name.into())),
        }
    }

    /// Resolves `@name` through the catalog; anything else is parsed as a code.
    pub fn resolve(&self, arg: &str) -> Result<LinkCode, ResolveError> {
        match arg.strip_prefix('@') {
            Some(name) => Ok(self.get(name)?.code.as_link().clone()),
            None => Ok(arg.parse()?),
        }
    }

    /// Imports `name: code` records. Strict mode adds nothing if any line
    /// fails; lenient mode skips failing lines.
    pub fn import_text(&mut self, text: &str, file: &str, lenient: bool) -> Result<ImportReport, CatalogError> {
        let mut report = ImportReport::default();
        let mut staged: Vec<CatalogEntry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let (body, note) = raw.split_once('#').unwrap_or((raw, ""));
            let body = body.trim();
            if body.is_empty() {
                continue;
            }
            let parsed = (|| -> Result<CatalogEntry, String> {
                let (name, code) = body.split_once(':').ok_or("expected `name: code`")?;
                let name = name.trim();
                if name.is_empty() || name.starts_with('@') || name.contains(char::is_whitespace) {
                    return Err(format!("bad name `{name}`"));
                }
                if self.entries.contains_key(name) || staged.iter().any(|e| e.name == name) {
                    return Err(format!("duplicate name `{name}`"));
                }
                let code: KnotCode = code.trim().parse().map_err(|e: CodeError| e.to_string())?;
                Ok(CatalogEntry {
                    name: name.into(),
                    code,
                    provenance: recorded_provenance(note)
                        .unwrap_or_else(|| Provenance::Imported { file: file.into(), line }),
                })
            })();
            match parsed {
                Ok(e) => staged.push(e),
                Err(reason) => report.errors.push(CatalogError::Line { line, reason }.to_string()),
            }
        }
        if !report.errors.is_empty() && !lenient {
            return Ok(report);
        }
        for e in staged {
            report.added.push(e.name.clone());
            self.entries.insert(e.name.clone(), e);
        }
        Ok(report)
    }

    /// Imports a table file and, when the catalog has a directory, persists
    /// the imported entries and their invariant goldens.
    pub fn import_file(&mut self, path: &Path, lenient: bool) -> Result<ImportReport, CatalogError> {
        let text = fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
        let report = self.import_text(&text, &path.display().to_string(), lenient)?;
        if !report.added.is_empty() {
            self.persist(&report.added)?;
        }
        Ok(report)
    }

    fn persist(&self, names: &[String]) -> Result<(), CatalogError> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let io = |e: std::io::Error| CatalogError::Io(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir.join(GOLDEN_DIR)).map_err(io)?;
        let mut text = String::new();
        for e in self.entries.values().filter(|e| e.provenance != Provenance::Builtin) {
            text.push_str(&format!("{}: {} # {}\n", e.name, e.code, e.provenance));
        }
        fs::write(dir.join(CATALOG_FILE), text).map_err(io)?;
        for name in names {
            let inv = Invariants::compute(&self.entries[name].code);
            fs::write(self.golden_path(name).unwrap(), inv.to_string()).map_err(io)?;
        }
        Ok(())
    }

    fn golden_path(&self, name: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(GOLDEN_DIR).join(format!("{name}.txt")))
    }

    /// Invariants of an entry, checked against its golden file if one exists.
    pub fn invariants(&self, name: &str) -> Result<Invariants, CatalogError> {
        let inv = Invariants::compute(&self.get(name)?.code);
        if let Some(path) = self.golden_path(name).filter(|p| p.exists()) {
            let text = fs::read_to_string(&path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
            let cached = Invariants::parse(&text);
            for (k, v) in inv.lines() {
                if cached.get(k) != Some(&v) {
                    return Err(CatalogError::StaleCache { name: name.into(), field: k.into() });
                }
            }
        }
        Ok(inv)
    }
}

/// Provenance written into the catalog file as `# imported <file>:<line>`.
fn recorded_provenance(note: &str) -> Option<Provenance> {
    let (file, line) = note.trim().strip_prefix("imported ")?.rsplit_once(':')?;
    Some(Provenance::Imported { file: file.into(), line: line.parse().ok()? })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Code(#[from] CodeError),
}
