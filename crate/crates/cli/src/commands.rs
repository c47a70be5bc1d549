use std::io::Write;

use coprime_compositions::bounds::{Estimator, Family, ReportRow, CSV_HEADER};
use coprime_compositions::constants::euler_constant;
use coprime_compositions::counting::CompositionQuery;
use coprime_compositions::verify::{run_suite, Suite};
use coprime_compositions::{
    CompositionFamily, ConstantKind, CountMethod, Error, FactorTable, Result,
};
use serde::Serialize;

use crate::args::{Cli, Command, ConstantsArgs, CountArgs, Format, SweepArgs, TableArgs, VerifyArgs};
use crate::config::{FileConfig, DEFAULT_TABLE_LIMIT};
use crate::table1::{check_entry, TABLE1};
use crate::{EXIT_FAILED, EXIT_OK};

type Out<'a> = &'a mut Box<dyn Write + Send>;

/// Grid points evaluated together before their rows are written.
const SWEEP_CHUNK: usize = 32;

fn io_err(e: std::io::Error) -> Error {
    Error::Config(format!("cannot write output: {e}"))
}

fn json_line<T: Serialize>(out: Out, value: &T) -> Result<()> {
    let text = serde_json::to_string(value).map_err(|e| Error::Config(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_err)
}

fn table(cli: &Cli, file: &FileConfig) -> Result<FactorTable> {
    FactorTable::build(cli.table_limit.or(file.table_limit).unwrap_or(DEFAULT_TABLE_LIMIT))
}

fn format(cli: &Cli, file: &FileConfig, fallback: Format) -> Format {
    cli.format.or(file.format).unwrap_or(fallback)
}

pub fn dispatch(cli: &Cli, file: &FileConfig, out: Out) -> Result<i32> {
    match &cli.command {
        Command::Count(a) => count(cli, file, a, out),
        Command::Constants(a) => constants(cli, file, a, out),
        Command::Verify(a) => verify(cli, file, a, out),
        Command::Sweep(a) => sweep(cli, file, a, out),
        Command::Table(a) => print_table(cli, file, a, out),
    }
}

#[derive(Serialize)]
struct CountRecord {
    family: CompositionFamily,
    k: u32,
    n: u64,
    d: Option<u64>,
    method: String,
    value: String,
}

fn count(cli: &Cli, file: &FileConfig, a: &CountArgs, out: Out) -> Result<i32> {
    let family: CompositionFamily = a.family.parse()?;
    let method = match &a.method {
        Some(m) => m.parse()?,
        None => family.default_method(a.k),
    };
    let query = CompositionQuery::new(family, a.k, a.n, a.d)?;
    let budget = file.budget(&a.budget);
    let needed = a.n.max(a.d.unwrap_or(0)).max(2);
    let limit = cli.table_limit.or(file.table_limit).unwrap_or(DEFAULT_TABLE_LIMIT.min(needed));
    let table = FactorTable::build(limit.max(2))?;
    let value = query.count(method, &table, &budget)?;
    let record = CountRecord {
        family,
        k: a.k,
        n: a.n,
        d: a.d,
        method: method.to_string(),
        value: value.to_string(),
    };
    match format(cli, file, Format::Json) {
        Format::Json => json_line(out, &record)?,
        Format::Csv => {
            writeln!(out, "family,k,n,d,method,value").map_err(io_err)?;
            let d = a.d.map(|d| d.to_string()).unwrap_or_default();
            writeln!(out, "{family},{},{},{d},{method},{value}", a.k, a.n).map_err(io_err)?;
        }
        Format::Plain => writeln!(out, "{value}").map_err(io_err)?,
    }
    Ok(EXIT_OK)
}

fn constants(cli: &Cli, file: &FileConfig, a: &ConstantsArgs, out: Out) -> Result<i32> {
    let width = file.width(a.width);
    let max_cutoff = file.max_cutoff(a.max_cutoff);
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::Argument(format!("--width must be positive, got {width}")));
    }
    let fmt = format(cli, file, Format::Json);
    if a.reproduce_table1 {
        let mut all_pass = true;
        if fmt == Format::Csv {
            writeln!(out, "kind,k,entry,lo,hi,width,cutoff_P,pass").map_err(io_err)?;
        }
        for entry in &TABLE1 {
            let row = check_entry(entry, width, max_cutoff)?;
            all_pass &= row.pass;
            match fmt {
                Format::Json => json_line(out, &row)?,
                Format::Csv => writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    row.kind, row.k, row.entry, row.lo, row.hi, row.width, row.cutoff_p, row.pass
                )
                .map_err(io_err)?,
                Format::Plain => writeln!(
                    out,
                    "{}_{} entry {} enclosure [{}, {}] width {} cutoff {} {}",
                    row.kind,
                    row.k,
                    row.entry,
                    row.lo,
                    row.hi,
                    row.width,
                    row.cutoff_p,
                    if row.pass { "PASS" } else { "FAIL" }
                )
                .map_err(io_err)?,
            }
        }
        return Ok(if all_pass { EXIT_OK } else { EXIT_FAILED });
    }
    let kind: ConstantKind = a.kind.as_deref().unwrap_or_default().parse()?;
    let k = a.k.expect("clap requires k without --reproduce-table1");
    match euler_constant(kind, k, width, max_cutoff) {
        Ok(enc) => {
            write_enclosure(out, fmt, &enc.record(), true)?;
            Ok(EXIT_OK)
        }
        Err(Error::WidthUnreachable { target, achieved, enclosure }) => {
            write_enclosure(out, fmt, &enclosure.record(), true)?;
            Err(Error::WidthUnreachable { target, achieved, enclosure })
        }
        Err(e) => Err(e),
    }
}

fn write_enclosure(
    out: Out,
    fmt: Format,
    rec: &coprime_compositions::constants::EnclosureRecord,
    header: bool,
) -> Result<()> {
    match fmt {
        Format::Json => json_line(out, rec),
        Format::Csv => {
            if header {
                writeln!(out, "kind,k,point,lo,hi,cutoff_P,width").map_err(io_err)?;
            }
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                rec.kind, rec.k, rec.point, rec.lo, rec.hi, rec.cutoff_p, rec.width
            )
            .map_err(io_err)
        }
        Format::Plain => writeln!(
            out,
            "{}_{} = {} in [{}, {}] width {} cutoff {}",
            rec.kind, rec.k, rec.point, rec.lo, rec.hi, rec.width, rec.cutoff_p
        )
        .map_err(io_err),
    }
}

fn print_table(cli: &Cli, file: &FileConfig, a: &TableArgs, out: Out) -> Result<i32> {
    let width = file.width(a.width);
    let max_cutoff = file.max_cutoff(a.max_cutoff);
    let fmt = format(cli, file, Format::Plain);
    let cells = (1..=7).map(|k| (ConstantKind::C, k)).chain((2..=7).map(|k| (ConstantKind::D, k)));
    for (i, (kind, k)) in cells.enumerate() {
        let enc = euler_constant(kind, k, width, max_cutoff)?;
        write_enclosure(out, fmt, &enc.record(), i == 0)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyRecord<'a> {
    #[serde(flatten)]
    outcome: &'a coprime_compositions::verify::SuiteOutcome,
    params: coprime_compositions::verify::SuiteParams,
    passed: bool,
}

fn verify(cli: &Cli, file: &FileConfig, a: &VerifyArgs, out: Out) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let mut params = suite.default_params();
    params.pmax = a.pmax.unwrap_or(params.pmax);
    params.kmax = a.kmax.unwrap_or(params.kmax);
    params.nmax = a.nmax.unwrap_or(params.nmax);
    params.dmax = a.dmax.unwrap_or(params.dmax);
    let est = Estimator::new(table(cli, file)?, file.budget(&a.budget))
        .with_constant_width(file.main_term_width(None), file.max_cutoff(None));
    let outcome = run_suite(suite, &params, &est)?;
    match format(cli, file, Format::Plain) {
        Format::Json => json_line(
            out,
            &VerifyRecord {
                outcome: &outcome,
                params,
                passed: outcome.passed(),
            },
        )?,
        Format::Csv => {
            writeln!(out, "suite,checks,failed").map_err(io_err)?;
            writeln!(out, "{},{},{}", suite, outcome.checks, outcome.failed).map_err(io_err)?;
        }
        Format::Plain => {
            writeln!(
                out,
                "{suite}: {} checks, {} failed",
                outcome.checks, outcome.failed
            )
            .map_err(io_err)?;
            for f in &outcome.failures {
                writeln!(out, "  FAIL {f}").map_err(io_err)?;
            }
        }
    }
    Ok(if outcome.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn sweep(cli: &Cli, file: &FileConfig, a: &SweepArgs, out: Out) -> Result<i32> {
    let family: Family = a.family.parse()?;
    if a.step == 0 {
        return Err(Error::Argument("--step must be positive".into()));
    }
    if a.n_from == 0 {
        return Err(Error::Argument("--n-from must be positive".into()));
    }
    let method = if a.no_exact {
        None
    } else {
        Some(match &a.method {
            Some(m) => m.parse::<CountMethod>()?,
            None => family.composition_family().default_method(a.k),
        })
    };
    let grid: Vec<u64> = if a.n_from > a.n_to {
        Vec::new()
    } else {
        (a.n_from..=a.n_to).step_by(a.step as usize).collect()
    };
    let fmt = format(cli, file, Format::Csv);
    if fmt == Format::Csv {
        writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
        out.flush().map_err(io_err)?;
    }
    if grid.is_empty() {
        return Ok(EXIT_OK);
    }
    let est = Estimator::new(table(cli, file)?, file.budget(&a.budget))
        .with_constant_width(file.main_term_width(a.width), file.max_cutoff(None));
    for chunk in grid.chunks(SWEEP_CHUNK) {
        for report in est.trend_sweep(family, a.k, chunk, method)? {
            match fmt {
                Format::Csv => writeln!(out, "{}", report.csv_row()).map_err(io_err)?,
                Format::Json => json_line(out, &report.row())?,
                Format::Plain => {
                    let row: ReportRow = report.row();
                    writeln!(
                        out,
                        "{} k={} n={} exact={} main_term={} rel_error={} bound_rhs={} applicable={} satisfied={}",
                        row.family,
                        row.k,
                        row.n,
                        row.exact.map(|e| e.to_string()).unwrap_or_else(|| "-".into()),
                        row.main_term,
                        row.rel_error.unwrap_or_else(|| "-".into()),
                        row.bound_rhs.unwrap_or_else(|| "-".into()),
                        row.bound_applicable,
                        row.bound_satisfied.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
                    )
                    .map_err(io_err)?
                }
            }
        }
        out.flush().map_err(io_err)?;
    }
    Ok(EXIT_OK)
}
