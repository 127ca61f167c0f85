mod output;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use invperm::counting::{self, BigCount, Conjecture, CountResult, CountingMethod};
use invperm::oracle::{self, EnumerationBudget, Family};
use invperm::sequences::{self, ResultCache, SequenceRecord};
use invperm::{bijections, verify, Error, PatternSet};

use crate::output::Format;

#[derive(Parser)]
#[command(name = "invperm", version, about = "Pattern-avoiding indecomposable permutations counted by inversions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count I_k(P) for one k or for 0..=kmax.
    #[command(group(ArgGroup::new("range").required(true).args(["k", "kmax"])))]
    Count {
        #[arg(long)]
        patterns: PatternSet,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
        /// auto, oracle, or a tag such as recurrence_321 or gf:gorenstein_compositions
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// List the members of I_k(P), or the objects of a family of size k.
    #[command(group(ArgGroup::new("source").required(true).args(["patterns", "family"])))]
    Enumerate {
        #[arg(long)]
        patterns: Option<PatternSet>,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Apply one of the bijections or its inverse.
    Map {
        #[arg(long, value_enum)]
        bijection: Bijection,
        #[arg(long, value_enum, default_value_t = Direction::Fwd)]
        dir: Direction,
        #[arg(long)]
        input: String,
    },
    /// Check every fast path against the oracle.
    Verify {
        #[arg(long, default_value_t = 9)]
        kmax: usize,
        #[arg(long, default_value = "all")]
        suite: verify::Suite,
    },
    /// Compare a conjectured formula with oracle counts.
    Conjecture {
        #[arg(long)]
        name: Conjecture,
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Compare counts with an OEIS entry.
    Oeis {
        #[arg(long)]
        id: String,
        /// Defaults to the pattern set associated with the entry.
        #[arg(long)]
        patterns: Option<PatternSet>,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        /// Download the b-file instead of using the derived prefix.
        #[arg(long, conflicts_with = "bfile")]
        fetch: bool,
        /// Read the reference from a local b-file.
        #[arg(long)]
        bfile: Option<PathBuf>,
        /// Fixed alignment; by default the best of -2..=2 is reported.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Draw a fountain, polyomino or Ferrers diagram.
    #[command(group(ArgGroup::new("style").args(["svg", "ascii"])))]
    Render {
        #[arg(long, value_enum)]
        object: render::ObjectKind,
        #[arg(long)]
        input: String,
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        ascii: bool,
        /// Mark the rows that count towards the even size.
        #[arg(long)]
        even: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Bijection {
    #[value(name = "132-partition")]
    P132Partition,
    #[value(name = "231-fountain")]
    P231Fountain,
    #[value(name = "321-polyomino")]
    P321Polyomino,
    #[value(name = "even-fountain")]
    EvenFountain,
    #[value(name = "gorenstein-composition")]
    GorensteinComposition,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Fwd,
    Inv,
}

/// Failure of a command after argument parsing.
enum Failure {
    /// Bad input: exit 2.
    Input(Error),
    /// A check did not hold: exit 1.
    Check(String),
    /// The reader went away.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Cache(_) | Error::Fetch(_) => Failure::Check(e.to_string()),
            e => Failure::Input(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Check(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Count {
            patterns,
            k,
            kmax,
            method,
            format,
        } => count(&patterns, k, kmax, &method, format, out),
        Command::Enumerate {
            patterns,
            family,
            k,
            limit,
        } => enumerate(patterns.as_ref(), family, k, limit, out),
        Command::Map {
            bijection,
            dir,
            input,
        } => {
            writeln!(out, "{}", map(bijection, dir, &input)?)?;
            Ok(())
        }
        Command::Verify { kmax, suite } => {
            let report = verify::run(kmax, suite);
            write!(out, "{}", report.render())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!("{} mismatches", report.mismatches())))
            }
        }
        Command::Conjecture { name, kmax, format } => {
            let rows = counting::conjecture_check(name, kmax)?;
            output::conjecture(name, &rows, format, out)?;
            Ok(())
        }
        Command::Oeis {
            id,
            patterns,
            kmax,
            fetch,
            bfile,
            shift,
            format,
        } => {
            let reference = reference(&id, fetch, bfile)?;
            let patterns = match patterns {
                Some(p) => p,
                None => sequences::builtin_patterns(&id)?,
            };
            let cmp = match shift {
                Some(s) => sequences::compare_at(&patterns, &reference, kmax, s),
                None => sequences::compare(&patterns, &reference, kmax),
            };
            output::comparison(&cmp, format, out)?;
            Ok(())
        }
        Command::Render {
            object,
            input,
            svg,
            ascii: _,
            even,
        } => {
            let drawing = render::render(object, &input, even, svg)?;
            write!(out, "{drawing}")?;
            Ok(())
        }
    }
}

fn parse_method(s: &PatternSet, tag: &str) -> std::result::Result<CountingMethod, Failure> {
    let fast = counting::select_method(s);
    match tag {
        "auto" => Ok(fast),
        "oracle" => Ok(CountingMethod::Oracle),
        other => {
            let wanted: CountingMethod = other.parse()?;
            if wanted == fast {
                Ok(wanted)
            } else {
                Err(Failure::Input(Error::UnknownName(format!(
                    "method {wanted} does not apply to {{{s}}}; available: auto, oracle, {fast}"
                ))))
            }
        }
    }
}

fn count(
    s: &PatternSet,
    k: Option<usize>,
    kmax: Option<usize>,
    method: &str,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let method = parse_method(s, method)?;
    let (lo, hi) = match (k, kmax) {
        (Some(k), _) => (k, k),
        (None, Some(kmax)) => (0, kmax),
        (None, None) => unreachable!("clap requires one of --k, --kmax"),
    };
    let values: Vec<BigCount> = if lo == hi {
        vec![counting::count_with(s, hi, method)]
    } else {
        counting::count_sequence_with(s, hi, method)
    };
    let results: Vec<CountResult> = (lo..=hi)
        .zip(values)
        .map(|(k, count)| CountResult {
            patterns: s.clone(),
            k,
            count,
            method,
        })
        .collect();
    if let Some(cache) = ResultCache::from_env() {
        for r in &results {
            cache.record(s, r.k, &r.count, r.method)?;
        }
    }
    output::counts(&results, format, out)?;
    Ok(())
}

fn enumerate(
    patterns: Option<&PatternSet>,
    family: Option<Family>,
    k: usize,
    limit: Option<usize>,
    out: &mut dyn Write,
) -> Outcome {
    let budget = EnumerationBudget {
        max_items: limit,
        ..EnumerationBudget::with_kmax(usize::MAX)
    };
    let mut printed = 0usize;
    let mut io_error = None;
    let result = match family {
        Some(f) => oracle::enumerate_objects(f, k, &EnumerationBudget::with_kmax(usize::MAX)).map(|items| {
            for item in items.iter().take(limit.unwrap_or(usize::MAX)) {
                if let Err(e) = writeln!(out, "{item}") {
                    io_error.get_or_insert(e);
                }
                printed += 1;
            }
            if printed < items.len() {
                eprintln!("note: stopped after {printed} of {} items", items.len());
            }
        }),
        None => oracle::enumerate_ik(k, patterns, &budget, &mut |p| {
            if let Err(e) = writeln!(out, "{p}") {
                io_error.get_or_insert(e);
            }
            printed += 1;
        }),
    };
    if let Some(e) = io_error {
        return Err(e.into());
    }
    match result {
        Err(Error::BudgetExceeded(_)) if limit.is_some() => {
            eprintln!("note: stopped after {printed} items");
            Ok(())
        }
        r => Ok(r?),
    }
}

fn map(bijection: Bijection, dir: Direction, input: &str) -> invperm::Result<String> {
    use Bijection::*;
    use Direction::*;
    Ok(match (bijection, dir) {
        (P132Partition, Fwd) => bijections::p132_to_partition(&input.parse()?)?.to_string(),
        (P132Partition, Inv) => bijections::partition_to_p132(&input.parse()?).to_string(),
        (P231Fountain, Fwd) => bijections::p231_to_fountain(&input.parse()?)?.to_string(),
        (P231Fountain, Inv) => bijections::fountain_to_p231(&input.parse()?).to_string(),
        (P321Polyomino, Fwd) => bijections::p321_to_polyomino(&input.parse()?)?.to_string(),
        (P321Polyomino, Inv) => bijections::polyomino_to_p321(&input.parse()?).to_string(),
        (EvenFountain, Fwd) => {
            let p: invperm::Permutation = input.parse()?;
            bijections::table_to_even_fountain(p.inversion_table().entries())?.to_string()
        }
        (EvenFountain, Inv) => {
            let table = bijections::even_fountain_to_table(&input.parse()?)?;
            invperm::Permutation::from_inversion_table(&table).to_string()
        }
        (GorensteinComposition, Fwd) => bijections::composition_from_gorenstein(&input.parse()?)?.to_string(),
        (GorensteinComposition, Inv) => bijections::gorenstein_from_composition(&input.parse()?)?.to_string(),
    })
}

fn reference(id: &str, fetch: bool, bfile: Option<PathBuf>) -> std::result::Result<SequenceRecord, Failure> {
    if let Some(path) = bfile {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Failure::Input(Error::Parse(format!("{}: {e}", path.display()))))?;
        return Ok(sequences::parse_bfile(id, &text)?);
    }
    if fetch {
        return fetch_reference(id);
    }
    Ok(sequences::builtin_reference(id)?)
}

#[cfg(feature = "fetch")]
fn fetch_reference(id: &str) -> std::result::Result<SequenceRecord, Failure> {
    Ok(sequences::fetch_reference(&sequences::HttpClient::default(), id)?)
}

#[cfg(not(feature = "fetch"))]
fn fetch_reference(_id: &str) -> std::result::Result<SequenceRecord, Failure> {
    Err(Failure::Input(Error::Fetch(
        "built without the fetch feature; pass --bfile instead".into(),
    )))
}
