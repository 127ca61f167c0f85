use std::io::{self, Write};

use clap::ValueEnum;
use invperm::counting::{Conjecture, ConjectureRow, CountResult};
use invperm::sequences::Comparison;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Bare values separated by commas.
    Plain,
    Table,
    Csv,
    Json,
}

fn json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn csv_rows<T: Serialize>(rows: &[T], out: &mut dyn Write) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    w.flush()
}

pub fn counts(results: &[CountResult], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Plain => {
            let values: Vec<String> = results.iter().map(|r| r.count.to_string()).collect();
            writeln!(out, "{}", values.join(","))
        }
        Format::Table => {
            let width = results
                .iter()
                .map(|r| r.count.to_string().len())
                .max()
                .unwrap_or(0)
                .max(5);
            writeln!(out, "{:>4}  {:>width$}  method", "k", "count")?;
            for r in results {
                writeln!(out, "{:>4}  {:>width$}  {}", r.k, r.count.to_string(), r.method)?;
            }
            Ok(())
        }
        Format::Csv => csv_rows(results, out),
        Format::Json => json(results, out),
    }
}

#[derive(Serialize)]
struct ConjectureReport<'a> {
    conjecture: &'a str,
    patterns: String,
    agrees: bool,
    rows: &'a [ConjectureRow],
}

pub fn conjecture(c: Conjecture, rows: &[ConjectureRow], format: Format, out: &mut dyn Write) -> io::Result<()> {
    let first_bad = rows.iter().find(|r| !r.matches).map(|r| r.k);
    match format {
        Format::Json => json(
            &ConjectureReport {
                conjecture: c.name(),
                patterns: c.patterns().to_string(),
                agrees: first_bad.is_none(),
                rows,
            },
            out,
        ),
        Format::Csv => csv_rows(rows, out),
        Format::Plain | Format::Table => {
            let show_printed = rows.iter().any(|r| r.printed != r.predicted);
            writeln!(out, "conjecture {} on {{{}}}", c.name(), c.patterns())?;
            write!(out, "{:>4}  {:>10}  {:>10}", "k", "oracle", "predicted")?;
            if show_printed {
                write!(out, "  {:>10}", "printed")?;
            }
            writeln!(out)?;
            for r in rows {
                write!(
                    out,
                    "{:>4}  {:>10}  {:>10}",
                    r.k,
                    r.oracle.to_string(),
                    r.predicted.to_string()
                )?;
                if show_printed {
                    write!(out, "  {:>10}", r.printed.to_string())?;
                }
                writeln!(out, "{}", if r.matches { "" } else { "  differs" })?;
            }
            let kmax = rows.last().map_or(0, |r| r.k);
            match first_bad {
                None => writeln!(out, "agrees for k <= {kmax}")?,
                Some(k) => writeln!(out, "first disagreement at k = {k}")?,
            }
            if let Some(r) = rows.iter().find(|r| !r.printed_matches) {
                writeln!(out, "printed formula differs from k = {}", r.k)?;
            }
            Ok(())
        }
    }
}

pub fn comparison(c: &Comparison, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => json(c, out),
        Format::Csv => csv_rows(&c.rows, out),
        Format::Plain | Format::Table => {
            writeln!(out, "{} vs {{{}}} (term k + {} of the reference at k)", c.id, c.patterns, c.shift)?;
            writeln!(out, "{:>4}  {:>12}  {:>12}", "k", "count", "reference")?;
            for r in &c.rows {
                let reference = r.reference.as_ref().map_or("-".to_string(), |v| v.to_string());
                let mark = match &r.reference {
                    Some(_) if !r.matches() => "  <- differs",
                    _ => "",
                };
                writeln!(out, "{:>4}  {:>12}  {:>12}{mark}", r.k, r.ours.to_string(), reference)?;
            }
            match c.first_divergence {
                None => writeln!(out, "all terms agree"),
                Some(k) => writeln!(out, "first divergence at k = {k}"),
            }
        }
    }
}
