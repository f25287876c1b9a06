//! The `vk` command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::{Catalog, PLACEHOLDERS};
use crate::cobordism::{slice_obstructions, MovieFile};
use crate::constructions::{connected_sum, kt_tangle, livingston_satellite, satellite_with, tangle_splice, PatternBox, TangleWord};
use crate::invariants::{ac_alexander, generalized_alexander, link_alexander, odd_writhe, writhe_polynomial};
use crate::kernel::{KnotCode, LinkCode};
use crate::surface::{carter_genus, index_table, is_almost_classical};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "vk", version, about = "Virtual knot calculus on signed Gauss codes")]
struct Cli {
    /// Emit one JSON document instead of line-oriented text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate a code and print its canonical form.
    Parse { code: String },
    /// Genus of the Carter surface.
    Genus { code: String },
    /// Whether every chord index is zero.
    Ac { code: String },
    /// Compute one invariant.
    Invariant { name: InvName, code: String },
    /// Connected sum at the given gaps.
    ConnectSum {
        a: String,
        b: String,
        #[arg(long, default_value_t = 0)]
        at_a: usize,
        #[arg(long, default_value_t = 0)]
        at_b: usize,
    },
    /// Replace two trivial arcs by a 2-string tangle (default: Kinoshita–Terasaka).
    Splice {
        code: String,
        arc1: usize,
        arc2: usize,
        /// Tangle file; the shipped KT tangle when absent.
        #[arg(long)]
        tangle: Option<PathBuf>,
        /// The two arcs run in opposite directions.
        #[arg(long)]
        anti: bool,
    },
    /// Satellite with the clasp pattern, framed by `twists` full twists (default −writhe).
    Satellite {
        code: String,
        #[arg(long, allow_hyphen_values = true)]
        twists: Option<i32>,
    },
    /// Concordance movies.
    Movie {
        #[command(subcommand)]
        cmd: MovieCmd,
    },
    /// Report concordance obstructions.
    SliceCheck { code: String },
    /// The knot catalog (directory from VK_CATALOG).
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand, Debug)]
enum MovieCmd {
    /// Check a movie file and print its certificate.
    Verify { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Show { name: String },
    /// Import a `name: code` table.
    Import {
        file: PathBuf,
        /// Import the valid lines even if some lines fail.
        #[arg(long)]
        lenient: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InvName {
    OddWrithe,
    WrithePoly,
    Alexander,
    Galexander,
}

/// Text lines and the equivalent JSON document.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json values serialize"))
            } else {
                write!(out, "{}", o.text)
            };
            EXIT_OK
        }
        Err(Failure { msg, json }) => {
            if cli.json {
                let doc = json.unwrap_or_else(|| json!({ "error": msg }));
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
            }
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}

/// A domain error, optionally with a structured report.
struct Failure {
    msg: String,
    json: Option<Value>,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { msg: e.to_string(), json: None }
    }
}

type Res = Result<Output, Failure>;

fn link(cat: &Catalog, arg: &str) -> Result<LinkCode, Failure> {
    Ok(cat.resolve(arg)?)
}

fn knot(cat: &Catalog, arg: &str) -> Result<KnotCode, Failure> {
    Ok(link(cat, arg)?.to_knot()?)
}

fn dispatch(cmd: Cmd) -> Res {
    let cat = Catalog::from_env()?;
    match cmd {
        Cmd::Parse { code } => {
            let l = link(&cat, &code)?;
            let text = format!("{l}\ncomponents={}\ncrossings={}\nwrithe={}\n", l.num_components(), l.crossing_count(), l.writhe());
            Ok(Output::new(
                text,
                json!({ "code": l.to_string(), "components": l.num_components(), "crossings": l.crossing_count(), "writhe": l.writhe() }),
            ))
        }
        Cmd::Genus { code } => {
            let g = carter_genus(&link(&cat, &code)?);
            Ok(Output::new(format!("{g}\n"), json!({ "genus": g })))
        }
        Cmd::Ac { code } => {
            let k = knot(&cat, &code)?;
            let ac = is_almost_classical(&k);
            let idx: Vec<Value> = index_table(&k).iter().map(|(id, i)| json!({ "crossing": id, "index": i })).collect();
            Ok(Output::new(format!("{ac}\n"), json!({ "ac": ac, "indices": idx })))
        }
        Cmd::Invariant { name, code } => invariant(&cat, name, &code),
        Cmd::ConnectSum { a, b, at_a, at_b } => {
            let s = connected_sum(&knot(&cat, &a)?, at_a, &knot(&cat, &b)?, at_b)?;
            Ok(code_output(&s))
        }
        Cmd::Splice { code, arc1, arc2, tangle, anti } => {
            let t: TangleWord = match tangle {
                Some(p) => read(&p)?.parse()?,
                None => kt_tangle(),
            };
            let s = tangle_splice(&knot(&cat, &code)?, arc1, arc2, &t, !anti)?;
            Ok(code_output(&s))
        }
        Cmd::Satellite { code, twists } => {
            let k = knot(&cat, &code)?;
            let s = match twists {
                Some(n) => satellite_with(&k, n, &PatternBox::clasp()),
                None => livingston_satellite(&k),
            };
            Ok(code_output(&s))
        }
        Cmd::Movie { cmd: MovieCmd::Verify { file } } => {
            let m: MovieFile = read(&file)?.parse()?;
            match m.verify() {
                Ok(c) => Ok(Output::new(format!("{c}\n"), serde_json::to_value(&c)?)),
                Err(e) => Err(Failure { msg: e.to_string(), json: Some(json!({ "ok": false, "error": e.to_string() })) }),
            }
        }
        Cmd::SliceCheck { code } => {
            let r = slice_obstructions(&knot(&cat, &code)?);
            let mut text: String = r
                .obstructions
                .iter()
                .map(|o| format!("{}={} obstructs={}\n", o.name, o.value, o.obstructs))
                .collect();
            text.push_str(&format!("verdict={}\n", r.verdict));
            Ok(Output::new(text, serde_json::to_value(&r)?))
        }
        Cmd::Catalog { cmd } => catalog(cat, cmd),
    }
}

fn read(p: &std::path::Path) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| Failure::from(format!("{}: {e}", p.display())))
}

fn code_output(k: &KnotCode) -> Output {
    Output::new(format!("{k}\n"), json!({ "code": k.to_string(), "crossings": k.crossing_count() }))
}

fn invariant(cat: &Catalog, name: InvName, code: &str) -> Res {
    let l = link(cat, code)?;
    let (key, value) = match name {
        // the Alexander polynomial is defined for links as well
        InvName::Alexander => match l.to_knot() {
            Ok(k) => {
                let a = ac_alexander(&k);
                let text = format!("{}\n", a.poly);
                return Ok(Output::new(text, json!({ "alexander": a.poly.to_string(), "principal": a.principal })));
            }
            Err(_) => ("alexander", link_alexander(&l).to_string()),
        },
        InvName::OddWrithe => ("odd-writhe", odd_writhe(&l.to_knot()?).to_string()),
        InvName::WrithePoly => ("writhe-poly", writhe_polynomial(&l.to_knot()?).to_string()),
        InvName::Galexander => ("galexander", generalized_alexander(&l.to_knot()?).to_string()),
    };
    Ok(Output::new(format!("{value}\n"), json!({ key: value })))
}

fn catalog(mut cat: Catalog, cmd: CatalogCmd) -> Res {
    match cmd {
        CatalogCmd::List => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in cat.entries() {
                text.push_str(&format!("{}\t{}\t{}\n", e.name, e.provenance, e.code));
                rows.push(serde_json::to_value(e)?);
            }
            for p in PLACEHOLDERS.iter().filter(|p| cat.get(p).is_err()) {
                text.push_str(&format!("{p}\tplaceholder\t-\n"));
                rows.push(json!({ "name": p, "provenance": { "kind": "placeholder" } }));
            }
            Ok(Output::new(text, Value::Array(rows)))
        }
        CatalogCmd::Show { name } => {
            let e = cat.get(&name)?.clone();
            let inv = cat.invariants(&name)?;
            let text = format!("name={}\ncode={}\nprovenance={}\n{inv}", e.name, e.code, e.provenance);
            Ok(Output::new(text, json!({ "entry": e, "invariants": inv })))
        }
        CatalogCmd::Import { file, lenient } => {
            let rep = cat.import_file(&file, lenient)?;
            let mut text: String = rep.errors.iter().map(|e| format!("{}: {e}\n", file.display())).collect();
            for n in &rep.added {
                text.push_str(&format!("added {n}\n"));
            }
            if !rep.errors.is_empty() && !lenient {
                return Err(Failure {
                    msg: format!("{text}{} line(s) failed; nothing imported (use --lenient to skip them)", rep.errors.len()),
                    json: Some(serde_json::to_value(&rep)?),
                });
            }
            Ok(Output::new(text, serde_json::to_value(&rep)?))
        }
    }
}
