mod doc;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use sphinv_core::classify::build_report;
use sphinv_core::families::{manifold_specs, parse_spec, GroupSpec, ManifoldClass};
use sphinv_core::tablegen::{sample_parents, Cell, TableGen, TableRow};
use sphinv_core::verify::{check_group, check_reports, verify_with, VerifyOutcome};

use doc::{OutputDocument, ReportDoc, SweepVerification, SCHEMA_VERSION};

const CLASSES: [&str; 5] = ["lens", "prism", "tetrahedral", "octahedral", "icosahedral"];

#[derive(Parser)]
#[command(name = "sphinv", version, about = "Involutions of spherical 3-manifolds and their quotients")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// JSON output
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV output
    #[arg(long, global = true)]
    csv: bool,
    /// Write output here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Involution classes of one manifold, e.g. `F2(1,2)`
    Classify { spec: String },
    /// Classify every manifold up to an order bound
    Sweep {
        #[arg(long, default_value_t = 120)]
        max_order: u64,
        #[arg(long, value_parser = CLASSES)]
        class: Option<String>,
    },
    /// Compare every computed answer with the brute-force oracle
    Verify {
        #[arg(long, default_value_t = 120)]
        max_order: u64,
        /// Flip one computed flag per manifold before checking
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Regenerate the free-action and hyperelliptic columns of table 7 or 8
    Tables {
        #[arg(value_parser = clap::value_parser!(u8).range(7..=8))]
        table: u8,
        /// Parents sampled per block
        #[arg(long, default_value_t = 24)]
        per_block: usize,
        #[arg(long, default_value_t = 2100)]
        max_order: u64,
    },
    /// Montesinos data of the hyperelliptic involutions of one manifold
    Montesinos { spec: String },
}

#[derive(Copy, Clone, PartialEq)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Fail {
    Mismatch(String),
    Parse(String),
    Invalid(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Mismatch(_) => 1,
            Fail::Parse(_) => 2,
            Fail::Invalid(_) => 3,
        }
    }
}

impl From<sphinv_core::Error> for Fail {
    fn from(e: sphinv_core::Error) -> Fail {
        match e {
            sphinv_core::Error::InvalidParameters(_) => Fail::Invalid(e.to_string()),
            other => Fail::Mismatch(other.to_string()),
        }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Fail {
        Fail::Mismatch(format!("write failed: {}", e))
    }
}

impl From<csv::Error> for Fail {
    fn from(e: csv::Error) -> Fail {
        Fail::Mismatch(format!("write failed: {}", e))
    }
}

type Out = Box<dyn Write>;

fn parse(text: &str) -> Result<GroupSpec, Fail> {
    parse_spec(text).map_err(|(pos, msg)| {
        let t = text.trim();
        Fail::Parse(format!("cannot parse '{}' at position {}: {}\n  {}\n  {}^", t, pos, msg, t, " ".repeat(pos)))
    })
}

/// A manifold spec: a valid group acting freely.
fn manifold(text: &str) -> Result<GroupSpec, Fail> {
    let spec = parse(text)?;
    spec.validate()?;
    if !spec.acts_freely_on_sphere() {
        return Err(Fail::Invalid(format!("{} does not act freely on S³", spec)));
    }
    Ok(spec)
}

fn json_line(out: &mut Out, value: &impl Serialize) -> Result<(), Fail> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn flags(r: &ReportDoc) -> String {
    match (r.acts_freely, r.hyperelliptic) {
        (true, true) => "[free, hyperelliptic]",
        (true, false) => "[free]",
        (false, true) => "[hyperelliptic]",
        (false, false) => "",
    }
    .into()
}

fn seifert_text(r: &ReportDoc) -> String {
    let f = &r.fibration;
    let inv: Vec<String> = f.local_invariants.iter().map(|x| x.to_string()).collect();
    format!("{} ({}) e = {}", f.base, inv.join(", "), f.euler)
}

fn montesinos_text(r: &ReportDoc) -> Option<String> {
    if let Some(m) = &r.montesinos {
        let t: Vec<String> = m.tangles.iter().map(|t| format!("{}/{}", t.c, t.b)).collect();
        return Some(format!("k = {}, tangles {}", m.half_twists, t.join(" ")));
    }
    r.notice.clone()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_text(out: &mut Out, d: &OutputDocument) -> io::Result<()> {
    let n = d.reports.len();
    writeln!(out, "{}  {}, {} involution class{}", d.spec, d.manifold_class, n, if n == 1 { "" } else { "es" })?;
    for r in &d.reports {
        writeln!(out, "  class {}  row {}  {}  ({})", r.class, r.table_row, r.extension, r.extension_spec)?;
        writeln!(out, "    seifert        {}", seifert_text(r))?;
        if !r.fibration.singular_component_indices.is_empty() {
            writeln!(out, "    circle indices {:?}", r.fibration.singular_component_indices)?;
        }
        writeln!(out, "    quotient       {}", r.underlying)?;
        writeln!(out, "    free           {}", yes_no(r.acts_freely))?;
        writeln!(out, "    hyperelliptic  {}", yes_no(r.hyperelliptic))?;
        if let Some(m) = montesinos_text(r) {
            writeln!(out, "    montesinos     {}", m)?;
        }
    }
    if let Some(v) = &d.verification {
        let run: usize = v.checks.values().map(|c| c.run).sum();
        writeln!(out, "  oracle checks  {} run, {} mismatched", run, v.mismatches.len())?;
        for m in &v.mismatches {
            writeln!(out, "    {} {}: expected {}, found {}", m.check, m.class.as_deref().unwrap_or("-"), m.expected, m.found)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    spec: &'a str,
    manifold_class: &'a str,
    class: &'a str,
    table_row: &'a str,
    extension: &'a str,
    extension_spec: &'a str,
    base: &'a str,
    local_invariants: String,
    euler: String,
    circle_indices: String,
    acts_freely: bool,
    hyperelliptic: bool,
    underlying: &'a str,
    montesinos: String,
}

fn csv_rows(w: &mut csv::Writer<&mut Out>, d: &OutputDocument) -> Result<(), Fail> {
    for r in &d.reports {
        let join = |v: Vec<String>| v.join(" ");
        w.serialize(CsvRow {
            spec: &d.spec,
            manifold_class: &d.manifold_class,
            class: &r.class,
            table_row: &r.table_row,
            extension: &r.extension,
            extension_spec: &r.extension_spec,
            base: &r.fibration.base,
            local_invariants: join(r.fibration.local_invariants.iter().map(|x| x.to_string()).collect()),
            euler: r.fibration.euler.to_string(),
            circle_indices: join(r.fibration.singular_component_indices.iter().map(|x| x.to_string()).collect()),
            acts_freely: r.acts_freely,
            hyperelliptic: r.hyperelliptic,
            underlying: &r.underlying,
            montesinos: montesinos_text(r).unwrap_or_default(),
        })?;
    }
    Ok(())
}

fn emit_docs(out: &mut Out, fmt: Format, docs: &[OutputDocument]) -> Result<(), Fail> {
    match fmt {
        Format::Json => {
            for d in docs {
                json_line(out, d)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for d in docs {
                csv_rows(&mut w, d)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for d in docs {
                write_text(out, d)?;
            }
        }
    }
    Ok(())
}

fn classify(out: &mut Out, fmt: Format, text: &str) -> Result<u8, Fail> {
    let spec = manifold(text)?;
    let reports = build_report(&spec)?;
    let mut v = VerifyOutcome::default();
    check_group(&spec, &mut v);
    check_reports(&spec, &reports, &mut v);
    emit_docs(out, fmt, &[OutputDocument::new(&spec, &reports, Some(&v))])?;
    Ok(if v.passed() { 0 } else { 1 })
}

fn montesinos(out: &mut Out, fmt: Format, text: &str) -> Result<u8, Fail> {
    let spec = manifold(text)?;
    let reports: Vec<_> = build_report(&spec)?.into_iter().filter(|r| r.hyperelliptic || r.montesinos.is_some()).collect();
    let d = OutputDocument::new(&spec, &reports, None);
    if fmt == Format::Text {
        for r in &d.reports {
            writeln!(out, "{} class {} row {}: {}", d.spec, r.class, r.table_row, montesinos_text(r).unwrap_or_default())?;
        }
    } else {
        emit_docs(out, fmt, &[d])?;
    }
    Ok(0)
}

fn histogram(docs: &[OutputDocument]) -> String {
    let mut by_count: BTreeMap<usize, usize> = BTreeMap::new();
    let mut by_class: BTreeMap<&str, usize> = BTreeMap::new();
    for d in docs {
        *by_count.entry(d.reports.len()).or_default() += 1;
        *by_class.entry(&d.manifold_class).or_default() += 1;
    }
    let counts: Vec<String> = by_count.iter().map(|(k, v)| format!("{}:{}", k, v)).collect();
    let classes: Vec<String> = CLASSES.iter().filter_map(|c| by_class.get(c).map(|v| format!("{} {}", c, v))).collect();
    format!("summary: {} manifolds; involution classes per manifold {}; {}", docs.len(), counts.join(" "), classes.join(", "))
}

fn sweep(out: &mut Out, fmt: Format, max_order: u64, class: Option<&str>) -> Result<u8, Fail> {
    let wanted = class.and_then(ManifoldClass::parse);
    let specs: Vec<GroupSpec> = manifold_specs(max_order)
        .into_iter()
        .filter(|g| wanted.is_none() || g.manifold_class().ok() == wanted)
        .collect();
    let docs: Vec<OutputDocument> = specs
        .par_iter()
        .map(|g| build_report(g).map(|r| OutputDocument::new(g, &r, None)))
        .collect::<Result<_, _>>()?;
    if fmt == Format::Text {
        for d in &docs {
            let classes: Vec<String> = d.reports.iter().map(|r| format!("{}:{}{}", r.table_row, r.extension, flags(r))).collect();
            writeln!(out, "{}  {}  {}", d.spec, d.manifold_class, classes.join("  "))?;
        }
        writeln!(out, "{}", histogram(&docs))?;
    } else {
        emit_docs(out, fmt, &docs)?;
        eprintln!("{}", histogram(&docs));
    }
    Ok(0)
}

fn verify(out: &mut Out, fmt: Format, max_order: u64, jobs: usize, inject_fault: bool) -> Result<u8, Fail> {
    let v = verify_with(max_order, jobs, |_, reports| {
        if inject_fault {
            if let Some(r) = reports.first_mut() {
                r.acts_freely = !r.acts_freely;
            }
        }
    });
    let doc = SweepVerification::new(&v);
    match fmt {
        Format::Json => json_line(out, &doc)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["check", "run", "failed"])?;
            for (k, c) in &doc.verification.checks {
                w.write_record([k.clone(), c.run.to_string(), c.failed.to_string()])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "verify: order ≤ {}, {} group specs, {} manifolds, {} extensions",
                doc.max_order, doc.group_specs, doc.manifolds, doc.extensions
            )?;
            for (k, c) in &doc.verification.checks {
                writeln!(out, "  {:<22} {:>7} run {:>5} failed", k, c.run, c.failed)?;
            }
            writeln!(out, "elapsed {:.1}s, homology {:.1}s", doc.elapsed_seconds, doc.homology_seconds)?;
        }
    }
    // the counterexample goes to stderr so machine-readable output stays clean
    let first = v.mismatches.iter().min_by_key(|m| (m.spec.rotation_order(), m.spec, m.check));
    let Some(m) = first else {
        if fmt == Format::Text {
            writeln!(out, "PASS")?;
        }
        return Ok(0);
    };
    let mut err: Out = Box::new(io::stderr());
    writeln!(err, "FAIL: {} mismatches; smallest counterexample:", v.mismatches.len())?;
    writeln!(err, "  check {} on {} class {}: expected {}, found {}", m.check, m.spec, m.class.as_deref().unwrap_or("-"), m.expected, m.found)?;
    if m.spec.manifold_class().is_ok() {
        if let Ok(reports) = build_report(&m.spec) {
            write_text(&mut err, &OutputDocument::new(&m.spec, &reports, None))?;
        }
    }
    Ok(1)
}

fn cell_text(c: &Cell) -> String {
    match (c.printed.is_empty(), c.exact) {
        (true, _) => format!("({})", c.regenerated),
        (false, true) => c.regenerated.clone(),
        (false, false) => format!("{} != {}", c.regenerated, c.printed),
    }
}

#[derive(Serialize)]
struct TablesDoc {
    schema_version: u32,
    table: u8,
    parents: usize,
    rows: Vec<TableRow>,
}

fn tables(out: &mut Out, fmt: Format, table: u8, per_block: usize, max_order: u64) -> Result<u8, Fail> {
    let parents = sample_parents(per_block, max_order);
    let reports: Vec<_> = parents.par_iter().map(build_report).collect::<Result<_, _>>()?;
    let mut gen = TableGen::new();
    for (g, r) in parents.iter().zip(&reports) {
        gen.add(g, r)?;
    }
    let rows = gen.finish(Some(table));
    let exact = rows.iter().all(|r| r.free.exact && r.hyperelliptic.exact);
    match fmt {
        Format::Json => json_line(out, &TablesDoc { schema_version: SCHEMA_VERSION, table, parents: parents.len(), rows })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["table", "block", "row", "du_val", "instances", "free_printed", "free", "free_exact", "hyperelliptic_printed", "hyperelliptic", "hyperelliptic_exact"])?;
            for r in &rows {
                let (f, h) = (&r.free, &r.hyperelliptic);
                w.write_record([
                    r.table.to_string(),
                    r.block.to_string(),
                    r.label.to_string(),
                    r.du_val.clone(),
                    r.instances.to_string(),
                    f.printed.clone(),
                    f.regenerated.clone(),
                    f.exact.to_string(),
                    h.printed.clone(),
                    h.regenerated.clone(),
                    h.exact.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "table {} from {} parents; parenthesized cells are blank in the printed table", table, parents.len())?;
            writeln!(out, "{:<22} {:<5} {:<36} {:<14} {:<14} instances", "block", "row", "extension", "free", "hyperelliptic")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<22} {:<5} {:<36} {:<14} {:<14} {}",
                    r.block,
                    r.label,
                    r.du_val,
                    cell_text(&r.free),
                    cell_text(&r.hyperelliptic),
                    r.instances
                )?;
            }
            writeln!(out, "{}", if exact { "all printed cells regenerated exactly" } else { "MISMATCH: some cells differ" })?;
        }
    }
    Ok(if exact { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, Fail> {
    let fmt = match (cli.json, cli.csv) {
        (true, _) => Format::Json,
        (_, true) => Format::Csv,
        _ => Format::Text,
    };
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1);
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(|e| Fail::Invalid(e.to_string()))?;
    let mut out: Out = match &cli.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Fail::Invalid(format!("{}: {}", p.display(), e)))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let code = match &cli.cmd {
        Cmd::Classify { spec } => classify(&mut out, fmt, spec)?,
        Cmd::Sweep { max_order, class } => sweep(&mut out, fmt, *max_order, class.as_deref())?,
        Cmd::Verify { max_order, inject_fault } => verify(&mut out, fmt, *max_order, jobs, *inject_fault)?,
        Cmd::Tables { table, per_block, max_order } => tables(&mut out, fmt, *table, *per_block, *max_order)?,
        Cmd::Montesinos { spec } => montesinos(&mut out, fmt, spec)?,
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let msg = match &f {
                Fail::Mismatch(m) | Fail::Parse(m) | Fail::Invalid(m) => m,
            };
            eprintln!("error: {}", msg);
            ExitCode::from(f.code())
        }
    }
}
