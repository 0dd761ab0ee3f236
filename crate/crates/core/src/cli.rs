//! The `augcat` command line.
//!
//! Every command reads a `.dga` file (or the name of a bundled example),
//! prints plain text by default and a fixed JSON schema with `--json`.
//! Augmentations are numbered `e1, e2, …` in the canonical enumeration
//! order printed by `augs`. Exit codes: 0 success, 1 a check failed,
//! 2 usage, input or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::ainfty::{check_a_infinity, AugCategory, Cochain, RelationReport, RelationViolation};
use crate::algebra::{Dga, DgaMorphism};
use crate::augment::{enumerate_augmentations, Augmentation};
use crate::bilinear::{
    bilinearised_differential_with, classify, dual_codifferential, lch_table_with, require_index,
    GradedDimensions,
};
use crate::corpus;
use crate::duality::{betti_from_list, duality_check, SequenceTerm};
use crate::engine::{ComponentEngine, EngineRegistry, DEFAULT_ENGINE};
use crate::error::Error;
use crate::format::{parse_dga, parse_map, print_dga};
use crate::functor::{check_functor_equation, AInfinityFunctor, InducedFunctor};
use crate::ncopy::oracle_check;

const MU_HELP: &str = "\
Evaluates μ^d on basis elements.

Order convention: in μ^d_{ε_d,…,ε_0}(b_d,…,b_1) the chord b_d is the \
leftmost letter of the word. --chords lists b_d,…,b_1 in that order (left \
to right in the word). --augs lists the d+1 augmentations sitting in the \
gaps of the word, also left to right: the first is ε_d (left of b_d), the \
last is ε_0 (right of b_1). A chord between augmentations X (left) and Y \
(right) is a morphism of the space C_{X,Y}.";

#[derive(Debug, Parser)]
#[command(
    name = "augcat",
    version,
    about = "Augmentation categories of semi-free DGAs over prime fields"
)]
pub struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the parallel sweeps (output does not depend on it).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Strategy for the multilinear components: `direct` or `ncopy`.
    #[arg(long, global = true, default_value = DEFAULT_ENGINE)]
    pub engine: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// A `.dga` file, or the name of a bundled example (e.g. `trefoil`).
    pub file: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check gradings and ∂² = 0.
    Validate(Input),
    /// List all augmentations in canonical order.
    Augs(Input),
    /// Bilinearised homology of one ordered pair of augmentations.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "I")]
        from: usize,
        #[arg(long, value_name = "J")]
        to: usize,
        /// Cohomology of μ¹ on C_{J,I} instead (the dual complex).
        #[arg(long)]
        dual: bool,
    },
    /// Bilinearised homology for all ordered pairs.
    Table(Input),
    /// Group augmentations by their row and column of the table.
    Classify(Input),
    #[command(long_about = MU_HELP, about = "Evaluate μ^d on basis elements (see --help for the order convention)")]
    Mu {
        #[command(flatten)]
        input: Input,
        /// Augmentation indices, left to right along the word.
        #[arg(long, value_delimiter = ',', required = true)]
        augs: Vec<usize>,
        /// Chord names b_d,…,b_1, left to right along the word.
        #[arg(long, value_delimiter = ',', required = true)]
        chords: Vec<String>,
    },
    /// Verify the A∞ relations up to arity D.
    Ainfty {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3, value_name = "D")]
        max_d: usize,
    },
    /// Compare n-copy conjugation with the selected engine.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3, value_name = "N")]
        max_n: usize,
        #[arg(long, default_value_t = 2, value_name = "D")]
        max_d: usize,
    },
    /// Dimension check of the duality exact sequence for every pair.
    Duality {
        #[command(flatten)]
        input: Input,
        /// Betti numbers of the Legendrian from degree 0 upward.
        #[arg(long, value_delimiter = ',', required = true)]
        betti: Vec<usize>,
        /// Dimension of the Legendrian.
        #[arg(long, default_value_t = 1)]
        dim: i32,
    },
    /// Functor induced by a DGA map and its A∞ equation.
    Functor {
        /// Algebra whose generators the map sends.
        #[arg(long)]
        source: String,
        /// Algebra the images live in.
        #[arg(long)]
        target: String,
        /// `img <gen> = <poly>` lines.
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 3, value_name = "D")]
        check: usize,
    },
    /// Add a cancelling pair ∂b = c with b in the given grading.
    Stabilize {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        degree: i32,
        /// Names for the new pair, `b,c`; fresh names by default.
        #[arg(long, value_name = "B,C")]
        names: Option<String>,
    },
    /// Run the golden records.
    Selftest {
        /// Recompute every record and write the records file to PATH.
        #[arg(long, value_name = "PATH")]
        regenerate: Option<String>,
    },
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    passed: bool,
}

fn ok(text: String, json: Value) -> Output {
    Output {
        text,
        json,
        passed: true,
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok(o) => {
            if cli.json {
                let s = serde_json::to_string_pretty(&o.json).expect("serializable");
                let _ = writeln!(out, "{s}");
            } else {
                let _ = write!(out, "{}", o.text);
            }
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn read_source(name: &str) -> Result<String, Failure> {
    let path = Path::new(name);
    if path.exists() {
        return fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{name}: {e}")));
    }
    corpus::source(name)
        .map(str::to_string)
        .map_err(|_| Failure::Usage(format!("{name}: no such file or bundled example")))
}

fn load(name: &str) -> Result<Arc<Dga>, Failure> {
    let text = read_source(name)?;
    parse_dga(&text)
        .map(Arc::new)
        .map_err(|e| Failure::Usage(format!("{name}: {e}")))
}

fn engine(cli: &Cli) -> Result<Arc<dyn ComponentEngine>, Failure> {
    Ok(EngineRegistry::default().get(&cli.engine)?)
}

/// 1-based CLI index to 0-based position.
fn index(augs: &[Augmentation], i: usize) -> Result<usize, Failure> {
    if i == 0 {
        return Err(Failure::Usage("augmentation indices start at 1".into()));
    }
    require_index(augs, i - 1)?;
    Ok(i - 1)
}

fn label(i: usize) -> String {
    format!("e{}", i + 1)
}

/// Degree-zero values keyed by generator name, in generator order.
struct NamedValues(Vec<(String, u32)>);

impl Serialize for NamedValues {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Serialize)]
struct CochainTerm {
    generator: String,
    coefficient: u32,
}

fn cochain_json(dga: &Dga, c: &Cochain) -> Value {
    to_json(
        &c.support()
            .map(|(g, v)| CochainTerm {
                generator: dga.name(g).to_string(),
                coefficient: v,
            })
            .collect::<Vec<_>>(),
    )
}

#[derive(Serialize)]
struct ViolationJson {
    d: usize,
    augs: Vec<usize>,
    chords: Vec<String>,
    residual: String,
}

fn relation_json(max_d: usize, r: &RelationReport) -> Value {
    let violations: Vec<ViolationJson> = r
        .violations
        .iter()
        .map(|v: &RelationViolation| ViolationJson {
            d: v.d,
            augs: v.segments.iter().map(|i| i + 1).collect(),
            chords: v.args.clone(),
            residual: v.residual.clone(),
        })
        .collect();
    serde_json::json!({
        "max_d": max_d,
        "checked": r.checked,
        "passed": r.passed(),
        "violations": violations,
    })
}

fn relation_text(max_d: usize, r: &RelationReport) -> String {
    match r.violations.first() {
        None => format!("PASS ({} tuples, d ≤ {max_d})\n", r.checked),
        Some(v) => format!(
            "FAIL ({} of {} tuples, d ≤ {max_d})\nfirst counterexample: {v}\n",
            r.violations.len(),
            r.checked
        ),
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Validate(input) => {
            let dga = load(&input.file)?;
            let report = dga.validate();
            let mut text = String::new();
            if report.is_empty() {
                text.push_str(&format!(
                    "valid: {} generators over F_{}\n",
                    dga.len(),
                    dga.field().p()
                ));
            } else {
                for v in &report.violations {
                    text.push_str(&format!("{v}\n"));
                }
            }
            Ok(Output {
                text,
                json: serde_json::json!({
                    "valid": report.is_empty(),
                    "violations": report.violations,
                }),
                passed: report.is_empty(),
            })
        }
        Command::Augs(input) => {
            let dga = load(&input.file)?;
            let augs = enumerate_augmentations(&dga)?;
            let zero = dga.degree_zero();
            let names: Vec<&str> = zero.iter().map(|&g| dga.name(g)).collect();
            let width = names.iter().map(|n| n.len()).max().unwrap_or(1);
            let mut text = format!("{:<5}", "");
            text.push_str(
                &names
                    .iter()
                    .map(|n| format!("{n:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            text = text.trim_end().to_string();
            text.push('\n');
            let mut rows = Vec::new();
            for (i, e) in augs.iter().enumerate() {
                let vals = e.degree_zero_values(&dga);
                let cells: Vec<String> = vals.iter().map(|v| format!("{v:>width$}")).collect();
                text.push_str(&format!("{:<5}{}\n", label(i), cells.join(" ")));
                rows.push(NamedValues(
                    names.iter().map(|n| n.to_string()).zip(vals).collect(),
                ));
            }
            Ok(ok(text, to_json(&rows)))
        }
        Command::Homology {
            input,
            from,
            to,
            dual,
        } => {
            let dga = load(&input.file)?;
            let augs = enumerate_augmentations(&dga)?;
            let (i, j) = (index(&augs, *from)?, index(&augs, *to)?);
            let engine = engine(cli)?;
            let dims = if *dual {
                dual_codifferential(&dga, &augs[j], &augs[i])?.homology()
            } else {
                bilinearised_differential_with(engine.as_ref(), &dga, &augs[i], &augs[j])?
                    .homology()
            };
            Ok(ok(
                format!("{dims}\n"),
                serde_json::json!({
                    "from": from,
                    "to": to,
                    "dual": dual,
                    "dimensions": dims,
                }),
            ))
        }
        Command::Table(input) => {
            let dga = load(&input.file)?;
            let augs = enumerate_augmentations(&dga)?;
            let table = lch_table_with(engine(cli)?.as_ref(), &dga, &augs)?;
            Ok(ok(table.render(), to_json(&table)))
        }
        Command::Classify(input) => {
            let dga = load(&input.file)?;
            let augs = enumerate_augmentations(&dga)?;
            let table = lch_table_with(engine(cli)?.as_ref(), &dga, &augs)?;
            let cls = classify(&table);
            let cells: Vec<Vec<usize>> = cls
                .cells
                .iter()
                .map(|c| c.iter().map(|i| i + 1).collect())
                .collect();
            let mut text = String::new();
            for (k, c) in cls.cells.iter().enumerate() {
                let names: Vec<String> = c.iter().map(|&i| label(i)).collect();
                text.push_str(&format!("cell {}: {}\n", k + 1, names.join(" ")));
            }
            text.push_str(&format!(
                "{} augmentations in {} cells{}\n",
                augs.len(),
                cls.cells.len(),
                if cls.all_singletons() {
                    "; all pairwise distinguished"
                } else {
                    ""
                }
            ));
            Ok(ok(
                text,
                serde_json::json!({
                    "cells": cells,
                    "all_singletons": cls.all_singletons(),
                }),
            ))
        }
        Command::Mu {
            input,
            augs: picks,
            chords,
        } => {
            let dga = load(&input.file)?;
            let cat = AugCategory::with_engine(dga.clone(), engine(cli)?)?;
            if picks.len() != chords.len() + 1 {
                return Err(Failure::Usage(format!(
                    "{} chords need {} augmentations, got {}",
                    chords.len(),
                    chords.len() + 1,
                    picks.len()
                )));
            }
            let segs = picks
                .iter()
                .map(|&i| index(cat.objects(), i))
                .collect::<Result<Vec<_>, _>>()?;
            let word = chords
                .iter()
                .map(|c| dga.lookup(c))
                .collect::<Result<Vec<_>, _>>()?;
            let args: Vec<Cochain> = word.iter().map(|&g| cat.basis(g)).collect();
            let refs: Vec<&Cochain> = args.iter().collect();
            let result = cat.mu(&segs, &refs)?;
            Ok(ok(
                format!("{}\n", result.display(&dga)),
                serde_json::json!({
                    "augs": picks,
                    "chords": chords,
                    "result": cochain_json(&dga, &result),
                }),
            ))
        }
        Command::Ainfty { input, max_d } => {
            let dga = load(&input.file)?;
            let cat = AugCategory::with_engine(dga, engine(cli)?)?;
            let report = check_a_infinity(&cat, *max_d)?;
            Ok(Output {
                text: relation_text(*max_d, &report),
                json: relation_json(*max_d, &report),
                passed: report.passed(),
            })
        }
        Command::Oracle {
            input,
            max_n,
            max_d,
        } => {
            let dga = load(&input.file)?;
            let augs = enumerate_augmentations(&dga)?;
            let report = oracle_check(&dga, &augs, *max_n, *max_d, engine(cli)?.as_ref())?;
            let text = match report.mismatches.first() {
                None => format!("PASS ({} comparisons)\n", report.checked),
                Some(m) => format!(
                    "FAIL ({} mismatches)\nfirst mismatch: {m}\n",
                    report.mismatches.len()
                ),
            };
            Ok(Output {
                text,
                json: serde_json::json!({
                    "max_n": max_n,
                    "max_d": max_d,
                    "checked": report.checked,
                    "passed": report.passed(),
                    "mismatches": report.mismatches,
                }),
                passed: report.passed(),
            })
        }
        Command::Duality { input, betti, dim } => {
            let dga = load(&input.file)?;
            let augs = enumerate_augmentations(&dga)?;
            let betti: GradedDimensions = betti_from_list(betti);
            let report = duality_check(&dga, &augs, &betti, *dim)?;
            let mut text = String::new();
            let mut pairs = Vec::new();
            for p in &report.pairs {
                let dims: Vec<String> = p.sequence.iter().map(|t| t.dim.to_string()).collect();
                let f = &p.feasibility;
                let verdict = if f.feasible {
                    let ranks: Vec<String> = f.ranks.iter().map(|r| r.to_string()).collect();
                    format!("PASS  ranks {}", ranks.join(","))
                } else {
                    format!("FAIL  at position {}", f.failure.unwrap_or(0) + 1)
                };
                text.push_str(&format!(
                    "{:<4}{:<5}{:<24}{verdict}\n",
                    label(p.e0),
                    label(p.e1),
                    dims.join(" ")
                ));
                pairs.push(serde_json::json!({
                    "e0": p.e0 + 1,
                    "e1": p.e1 + 1,
                    "sequence": p.sequence.iter().map(|t: &SequenceTerm| to_json(t)).collect::<Vec<_>>(),
                    "feasible": f.feasible,
                    "ranks": f.ranks,
                    "failure": f.failure,
                }));
            }
            text.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
            Ok(Output {
                text,
                json: serde_json::json!({
                    "dim": dim,
                    "betti": report.betti,
                    "passed": report.passed(),
                    "pairs": pairs,
                }),
                passed: report.passed(),
            })
        }
        Command::Functor {
            source,
            target,
            map,
            check,
        } => {
            let a = load(source)?;
            let b = load(target)?;
            let text = read_source(map)?;
            let f: DgaMorphism = parse_map(a, b.clone(), &text)
                .map_err(|e| Failure::Usage(format!("{map}: {e}")))?;
            let b_cat = Arc::new(AugCategory::with_engine(b, engine(cli)?)?);
            let functor = InducedFunctor::from_map(f, b_cat)?;
            let report = check_functor_equation(&functor, *check)?;
            let objects: Vec<[usize; 2]> = (0..functor.source().len())
                .map(|i| [i + 1, functor.object(i) + 1])
                .collect();
            let mut out = String::from("objects (target algebra -> source algebra):");
            for [x, y] in &objects {
                out.push_str(&format!(" e{x}->e{y}"));
            }
            out.push('\n');
            out.push_str(&relation_text(*check, &report));
            let mut json = relation_json(*check, &report);
            json["objects"] = to_json(&objects);
            Ok(Output {
                text: out,
                json,
                passed: report.passed(),
            })
        }
        Command::Stabilize {
            input,
            degree,
            names,
        } => {
            let dga = load(&input.file)?;
            let (b, c) = match names {
                Some(n) => match n.split_once(',') {
                    Some((b, c)) if !c.contains(',') => {
                        (b.trim().to_string(), c.trim().to_string())
                    }
                    _ => return Err(Failure::Usage("--names expects two names, `b,c`".into())),
                },
                None => dga.fresh_stabilization_names(),
            };
            let s = dga.stabilize(*degree, &b, &c)?;
            let text = print_dga(&s);
            Ok(ok(text.clone(), serde_json::json!({ "dga": text })))
        }
        Command::Selftest { regenerate } => selftest(regenerate.as_deref()),
    }
}

/// A frozen command and its expected JSON output.
struct RecordSpec {
    name: &'static str,
    /// `reference` (published tables), `computed` (cross-checked by an
    /// independent method) or `trivial`.
    origin: &'static str,
    args: &'static [&'static str],
}

const RECORDS: &[RecordSpec] = &[
    RecordSpec {
        name: "trefoil-augs",
        origin: "reference",
        args: &["augs", "trefoil"],
    },
    RecordSpec {
        name: "trefoil-table",
        origin: "reference",
        args: &["table", "trefoil"],
    },
    RecordSpec {
        name: "trefoil-classify",
        origin: "reference",
        args: &["classify", "trefoil"],
    },
    RecordSpec {
        name: "ce-augs",
        origin: "reference",
        args: &["augs", "chekanov_eliashberg"],
    },
    RecordSpec {
        name: "ce-table",
        origin: "reference",
        args: &["table", "chekanov_eliashberg"],
    },
    RecordSpec {
        name: "ce-classify",
        origin: "reference",
        args: &["classify", "chekanov_eliashberg"],
    },
    RecordSpec {
        name: "unknot-table",
        origin: "trivial",
        args: &["table", "unknot"],
    },
    RecordSpec {
        name: "broken-validate",
        origin: "trivial",
        args: &["validate", "broken"],
    },
    RecordSpec {
        name: "trefoil-ainfty",
        origin: "computed",
        args: &["ainfty", "trefoil", "--max-d", "3"],
    },
    RecordSpec {
        name: "ce-ainfty",
        origin: "computed",
        args: &["ainfty", "chekanov_eliashberg", "--max-d", "3"],
    },
    RecordSpec {
        name: "signed-a-ainfty",
        origin: "computed",
        args: &["ainfty", "signed_a", "--max-d", "4"],
    },
    RecordSpec {
        name: "trefoil-oracle",
        origin: "computed",
        args: &["oracle", "trefoil"],
    },
    RecordSpec {
        name: "ce-oracle",
        origin: "computed",
        args: &["oracle", "chekanov_eliashberg"],
    },
    RecordSpec {
        name: "trefoil-mu2",
        origin: "computed",
        args: &["mu", "trefoil", "--augs", "5,5,5", "--chords", "b1,b2"],
    },
    RecordSpec {
        name: "trefoil-duality",
        origin: "computed",
        args: &["duality", "trefoil", "--betti", "1,1", "--dim", "1"],
    },
    RecordSpec {
        name: "ce-duality",
        origin: "computed",
        args: &[
            "duality",
            "chekanov_eliashberg",
            "--betti",
            "1,1",
            "--dim",
            "1",
        ],
    },
    RecordSpec {
        name: "trefoil-stabilize",
        origin: "trivial",
        args: &["stabilize", "trefoil", "--degree", "0"],
    },
];

const GOLDEN: &str = include_str!("../golden/records.json");

#[derive(Serialize, serde::Deserialize)]
struct Record {
    name: String,
    origin: String,
    args: Vec<String>,
    exit: i32,
    expected: Value,
}

fn capture(args: &[&str]) -> (i32, Option<Value>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["augcat", "--json"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, serde_json::from_slice(&out).ok())
}

fn selftest(regenerate: Option<&str>) -> Result<Output, Failure> {
    if let Some(path) = regenerate {
        let records: Vec<Record> = RECORDS
            .iter()
            .map(|r| {
                let (exit, value) = capture(r.args);
                Record {
                    name: r.name.into(),
                    origin: r.origin.into(),
                    args: r.args.iter().map(|s| s.to_string()).collect(),
                    exit,
                    expected: value.unwrap_or(Value::Null),
                }
            })
            .collect();
        let text = serde_json::to_string_pretty(&records).expect("serializable") + "\n";
        fs::write(path, text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        return Ok(ok(
            format!("wrote {} records to {path}\n", records.len()),
            serde_json::json!({ "written": records.len(), "path": path }),
        ));
    }
    let golden: Vec<Record> = serde_json::from_str(GOLDEN)
        .map_err(|e| Failure::Usage(format!("golden records are corrupt: {e}")))?;
    let mut text = String::new();
    let mut results = Vec::new();
    let mut all = true;
    for spec in RECORDS {
        let verdict = match golden.iter().find(|g| g.name == spec.name) {
            None => Err("no frozen value".to_string()),
            Some(g) if g.args != spec.args => Err("frozen arguments differ".to_string()),
            Some(g) => {
                let (exit, value) = capture(spec.args);
                if exit != g.exit {
                    Err(format!("exit {exit}, expected {}", g.exit))
                } else if value.as_ref() != Some(&g.expected) {
                    Err("output differs from the frozen value".to_string())
                } else {
                    Ok(())
                }
            }
        };
        all &= verdict.is_ok();
        match &verdict {
            Ok(()) => text.push_str(&format!("PASS  {:<20}[{}]\n", spec.name, spec.origin)),
            Err(why) => text.push_str(&format!("FAIL  {:<20}[{}] {why}\n", spec.name, spec.origin)),
        }
        results.push(serde_json::json!({
            "name": spec.name,
            "origin": spec.origin,
            "passed": verdict.is_ok(),
            "reason": verdict.err(),
        }));
    }
    text.push_str(&format!(
        "{}/{} records pass\n",
        results.iter().filter(|r| r["passed"] == true).count(),
        results.len()
    ));
    Ok(Output {
        text,
        json: serde_json::json!({ "passed": all, "records": results }),
        passed: all,
    })
}
