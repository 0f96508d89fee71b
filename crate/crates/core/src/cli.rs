//! The `sdcodes` command line.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chain::MAX_S;
use crate::codes::TorsionProfile;
use crate::doc::{csv_row, render_code, render_table, CodeDocument, CSV_HEADER};
use crate::duality::{
    dual_via_annihilator, dual_via_dot_product, span_build, torsion_profile_of_span,
};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, MAX_DEGREE};
use crate::oracle::{oracle_exhaustive, DEFAULT_BUDGET};
use crate::ring::CodeRing;
use crate::selfdual::{
    check_enumeration_budget, count_nprime, distinct_spans, enumerate_all, CountReport, Family,
};
use crate::table1::{self, TableDiff, PRINTED, PRINTED_COUNTS};

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    VerifyFailed = 1,
    Usage = 2,
    Budget = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sdcodes",
    version,
    about = "Self-dual cyclic codes of length 2^s over F_{2^m}[u]/<u^3>"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every self-dual code.
    Enumerate(EnumerateArgs),
    /// Check JSON-lines code documents for self-duality.
    Verify(VerifyArgs),
    /// Reproduce and diff the printed s = 3, m = 1 table.
    Table1(Table1Args),
    /// Print N, N' and the total.
    Count(RingArgs),
    /// Brute-force every self-dual ideal and compare with the enumeration.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct RingArgs {
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..=MAX_S as i64))]
    pub s: u32,
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..=MAX_DEGREE as i64))]
    pub m: u32,
    /// Field modulus as a bit string, constant term first.
    #[arg(long)]
    pub modulus: Option<String>,
    /// Maximum enumeration work.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// JSON-lines input; stdin when absent.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Fail when the diff list is nonempty.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..=MAX_S as i64))]
    pub s: u32,
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..=MAX_DEGREE as i64))]
    pub m: u32,
    #[arg(long)]
    pub modulus: Option<String>,
    /// Maximum number of generator tuples to sweep.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    pub budget: u64,
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::Budget { .. } => Status::Budget,
        Error::Parse(_)
        | Error::Parameter(_)
        | Error::InvalidModulus(_)
        | Error::Dimension(_)
        | Error::Validation { .. } => Status::Usage,
        _ => Status::VerifyFailed,
    }
}

fn io_err(e: io::Error) -> Error {
    Error::Parameter(e.to_string())
}

fn make_ring(s: u32, m: u32, modulus: Option<&str>) -> Result<CodeRing> {
    let field = match modulus {
        Some(bits) => FieldCtx::from_bit_string(bits)?,
        None => FieldCtx::new(m)?,
    };
    if field.m() != m {
        return Err(Error::InvalidModulus(format!(
            "modulus has degree {}, expected m = {m}",
            field.m()
        )));
    }
    CodeRing::new(field, s)
}

fn count_lines(rep: &CountReport) -> String {
    format!(
        "type4: {}\nN (h1 = 0): {}\nN' (h1 unit): {}\ntotal: {}\n",
        rep.count_type4,
        rep.count_n,
        rep.count_nprime,
        rep.total()
    )
}

/// Runs one parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Status {
    let result = match cli.command {
        Command::Enumerate(a) => enumerate(&a, out, err),
        Command::Verify(a) => verify(&a, stdin, out),
        Command::Table1(a) => table1(&a, out),
        Command::Count(a) => count(&a, out),
        Command::Oracle(a) => oracle(&a, out),
    };
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            status_of(&e)
        }
    }
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status> {
    let ra = &a.ring;
    let r = make_ring(ra.s, ra.m, ra.modulus.as_deref())?;
    check_enumeration_budget(&r, ra.budget)?;
    let (codes, report) = enumerate_all(&r)?;

    let mut body = String::new();
    match a.format {
        Format::Json => {
            for c in &codes {
                body.push_str(&CodeDocument::from_code(&r, c).to_json());
                body.push('\n');
            }
        }
        Format::Csv => {
            body.push_str(CSV_HEADER);
            body.push('\n');
            for c in &codes {
                body.push_str(&csv_row(&r, c));
                body.push('\n');
            }
        }
        Format::Table => {
            body.push_str(&render_table(&codes));
            body.push_str(&count_lines(&report));
        }
    }
    match &a.output {
        Some(path) => {
            let mut f = File::create(path).map_err(io_err)?;
            f.write_all(body.as_bytes()).map_err(io_err)?;
        }
        None => out.write_all(body.as_bytes()).map_err(io_err)?,
    }
    if a.format != Format::Table || a.output.is_some() {
        err.write_all(count_lines(&report).as_bytes())
            .map_err(io_err)?;
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct VerifyLine {
    record: usize,
    s: u32,
    m: u32,
    dim: usize,
    torsion: TorsionProfile,
    self_dual: bool,
    dual_consistent: bool,
}

fn verify(a: &VerifyArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Status> {
    let reader: Box<dyn BufRead + '_> = match &a.input {
        Some(p) => Box::new(BufReader::new(File::open(p).map_err(io_err)?)),
        None => Box::new(BufReader::new(stdin)),
    };
    let mut rings: HashMap<(u32, String), CodeRing> = HashMap::new();
    let mut parsed = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        let record = i + 1;
        let named = |e: Error| match e {
            Error::Parse(msg) => Error::Parse(format!("record {record}: {msg}")),
            e => Error::Parse(format!("record {record}: {e}")),
        };
        let doc = CodeDocument::parse(&line).map_err(named)?;
        let key = (doc.s, doc.modulus.clone());
        if !rings.contains_key(&key) {
            rings.insert(key.clone(), doc.ring().map_err(named)?);
        }
        let gens = doc.generators(&rings[&key]).map_err(named)?;
        parsed.push((record, key, gens));
    }

    let mut ok = true;
    for (record, key, gens) in parsed {
        let r = &rings[&key];
        let span = span_build(r, &gens);
        let dual = dual_via_annihilator(r, &span);
        let dual_consistent = dual == dual_via_dot_product(r, &span);
        let self_dual = dual_consistent && dual == span;
        ok &= self_dual;
        let line = VerifyLine {
            record,
            s: r.s(),
            m: r.field().m(),
            dim: span.dim(),
            torsion: torsion_profile_of_span(&span),
            self_dual,
            dual_consistent,
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string(&line).expect("serializable")
        )
        .map_err(io_err)?;
    }
    Ok(if ok { Status::Ok } else { Status::VerifyFailed })
}

fn describe(d: &TableDiff, rep: &table1::Table1Report) -> String {
    let printed = |row: usize| render_code(&table1::printed_generators(&rep.ring, &PRINTED[row]));
    let code = |j: usize| render_code(&rep.codes[j].generators);
    match *d {
        TableDiff::Label {
            row,
            printed: p,
            computed,
        } => {
            format!(
                "row {}: {} is labelled Type {p}, computed Type {computed}",
                row + 1,
                printed(row)
            )
        }
        TableDiff::Group {
            row,
            printed: p,
            computed,
        } => format!(
            "row {}: {} is listed under {}, computed {}",
            row + 1,
            printed(row),
            p.name(),
            computed.name()
        ),
        TableDiff::MissingU { row, code: j } => format!(
            "row {}: {} lacks the leading u of a later generator; intended {}",
            row + 1,
            printed(row),
            code(j)
        ),
        TableDiff::LeadingExponent {
            row,
            printed: p,
            corrected,
            code: j,
        } => format!(
            "row {}: {} has leading exponent {p}; the kernel code is {} (exponent {corrected})",
            row + 1,
            printed(row),
            code(j)
        ),
        TableDiff::Unmatched { row, self_dual } => format!(
            "row {}: {} matches no enumerated code ({})",
            row + 1,
            printed(row),
            if self_dual {
                "self-dual"
            } else {
                "not self-dual"
            }
        ),
        TableDiff::Missing { code: j } => {
            let c = &rep.codes[j];
            let cell = c
                .cell
                .map(|c| match (c.t1, c.t2) {
                    (Some(t1), Some(t2)) => format!(" cell (a, t1, t2) = ({}, {t1}, {t2})", c.a),
                    _ => format!(" a = {}", c.a),
                })
                .unwrap_or_default();
            format!("missing: Type {} {}{cell}", c.spec.type_tag, code(j))
        }
    }
}

fn table1(a: &Table1Args, out: &mut dyn Write) -> Result<Status> {
    let rep = table1::compare()?;
    let mut text = String::from("Self-dual cyclic codes of length 8 over F_2[u]/<u^3>\n");
    text.push_str(&render_table(&rep.codes));
    let (t4, z, u) = rep.counts;
    let (p4, pz, pu) = PRINTED_COUNTS;
    text.push_str(&format!(
        "counts: {t4} + {z} + {u} = {} (printed: {p4} + {pz} + {pu} = {})\n",
        t4 + z + u,
        p4 + pz + pu
    ));
    text.push_str(&format!(
        "verified self-dual: {}/{}\n",
        rep.verified,
        rep.codes.len()
    ));
    text.push_str(&format!("diffs: {}\n", rep.diffs.len()));
    for d in &rep.diffs {
        text.push_str(&format!("  - {}\n", describe(d, &rep)));
    }
    out.write_all(text.as_bytes()).map_err(io_err)?;
    let pass = rep.counts_match() && rep.all_verified() && !(a.strict && !rep.diffs.is_empty());
    Ok(if pass {
        Status::Ok
    } else {
        Status::VerifyFailed
    })
}

fn count(a: &RingArgs, out: &mut dyn Write) -> Result<Status> {
    let r = make_ring(a.s, a.m, a.modulus.as_deref())?;
    check_enumeration_budget(&r, a.budget)?;
    let rep = count_nprime(&r)?;
    out.write_all(count_lines(&rep).as_bytes())
        .map_err(io_err)?;
    Ok(Status::Ok)
}

fn oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<Status> {
    let r = make_ring(a.s, a.m, a.modulus.as_deref())?;
    let found = oracle_exhaustive(&r, a.budget as u128)?;
    let (codes, _) = enumerate_all(&r)?;
    let mut enumerated = distinct_spans(&r, &codes)?;
    enumerated.sort_by(|x, y| x.basis().entries().cmp(y.basis().entries()));
    let equal = enumerated == found;
    let by_family = |f: Family| codes.iter().filter(|c| c.family == f).count();
    writeln!(
        out,
        "exhaustive: {} self-dual ideals\nenumerated: {} ({} + {} + {})\nequal: {}",
        found.len(),
        codes.len(),
        by_family(Family::Type4),
        by_family(Family::H1Zero),
        by_family(Family::H1Unit),
        if equal { "yes" } else { "no" }
    )
    .map_err(io_err)?;
    Ok(if equal {
        Status::Ok
    } else {
        Status::VerifyFailed
    })
}
