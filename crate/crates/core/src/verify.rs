//! Every fast path and every correspondence checked against the oracle.
//! Checks run in parallel; the report lists them in a fixed order and holds
//! no timings, so two runs give identical text.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijections as bij;
use crate::counting::{self as cnt, BigCount, CountingMethod, GfName};
use crate::error::{Error, Result};
use crate::objects::{CoinSet, Fountain, Partition};
use crate::oracle::{self, EnumerationBudget, Family};
use crate::perm::{InversionSymmetry, PatternSet, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Bijections,
    Counts,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "bijections" => Ok(Suite::Bijections),
            "counts" => Ok(Suite::Counts),
            _ => Err(Error::UnknownName(format!("suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Bijections => "bijections",
            Suite::Counts => "counts",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    /// A formula as printed disagrees with the counts; reported, not failed.
    Erratum,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Ok => "ok",
            Status::Mismatch => "MISMATCH",
            Status::Erratum => "erratum",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub kmax: usize,
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn mismatches(&self) -> usize {
        self.count(Status::Mismatch)
    }

    pub fn errata(&self) -> usize {
        self.count(Status::Erratum)
    }

    fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.mismatches() == 0
    }

    pub fn render(&self) -> String {
        let mut out = format!("verify kmax={} suite={}\n", self.kmax, self.suite);
        for c in &self.checks {
            out.push_str(&format!("{:<8} {:<10} {}: {}\n", c.status, c.group, c.name, c.detail));
        }
        out.push_str(&format!(
            "{} checks, {} mismatches, {} errata\n",
            self.checks.len(),
            self.mismatches(),
            self.errata()
        ));
        out
    }
}

type Job = Box<dyn Fn() -> Vec<Check> + Send + Sync>;

fn check(group: &'static str, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        group,
        name: name.into(),
        status: if ok { Status::Ok } else { Status::Mismatch },
        detail: detail.into(),
    }
}

fn show<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn compare_seq(group: &'static str, name: impl Into<String>, fast: &[BigCount], slow: &[BigCount]) -> Check {
    let name = name.into();
    match (0..fast.len().max(slow.len())).find(|&k| fast.get(k) != slow.get(k)) {
        None => check(group, name, true, show(fast)),
        Some(k) => check(
            group,
            name,
            false,
            format!(
                "k={k}: {} vs {}",
                fast.get(k).map_or("-".into(), |v| v.to_string()),
                slow.get(k).map_or("-".into(), |v| v.to_string())
            ),
        ),
    }
}

fn erratum(name: impl Into<String>, printed: &[BigInt], counts: &[BigCount]) -> Check {
    let diffs: Vec<String> = printed
        .iter()
        .zip(counts)
        .enumerate()
        .filter(|(_, (p, c))| **p != BigInt::from((*c).clone()))
        .map(|(k, (p, c))| format!("k={k} printed {p} actual {c}"))
        .collect();
    Check {
        group: "errata",
        name: name.into(),
        status: if diffs.is_empty() { Status::Ok } else { Status::Erratum },
        detail: if diffs.is_empty() {
            "agrees".into()
        } else {
            diffs.into_iter().take(3).collect::<Vec<_>>().join("; ")
        },
    }
}

fn set(words: &str) -> PatternSet {
    words.parse().expect("literal set")
}

fn budget() -> EnumerationBudget {
    EnumerationBudget::with_kmax(usize::MAX)
}

fn oracle_seq(s: &PatternSet, kmax: usize) -> Vec<BigCount> {
    cnt::count_sequence_with(s, kmax, CountingMethod::Oracle)
}

fn family_seq(f: Family, kmax: usize) -> Vec<BigCount> {
    (0..=kmax)
        .map(|k| BigCount::from(oracle::enumerate_objects(f, k, &budget()).expect("unbounded").len()))
        .collect()
}

fn class(words: &str, k: usize) -> Vec<Permutation> {
    oracle::collect_ik(k, Some(&set(words)), &budget()).expect("unbounded")
}

/// Pattern sets covered by the dispatcher, plus images and supersets that
/// exercise the witness rules and the fallback.
pub const COUNT_SETS: [&str; 27] = [
    "12", "123", "132", "213", "231", "312", "321", "123,231", "123,132", "132,213", "132,231",
    "132,321", "231,312", "231,321", "123,321", "123,132,213", "123,132,231", "132,213,231",
    "132,213,321", "123,132,213,231", "231,321,4123", "231,312,1234", "213,312,4321",
    "132,4321", "321,1342", "2413,3142", "1",
];

fn count_jobs(kmax: usize) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for words in COUNT_SETS {
        jobs.push(Box::new(move || {
            let s = set(words);
            let method = cnt::select_method(&s);
            let slow = oracle_seq(&s, kmax);
            let mut out = vec![compare_seq(
                "counts",
                format!("{{{s}}} {method}"),
                &cnt::count_sequence_with(&s, kmax, method),
                &slow,
            )];
            let symmetric = InversionSymmetry::ALL.iter().all(|&g| {
                let image = s.map(g);
                (0..=kmax).all(|k| cnt::count(&image, k) == slow[k])
            });
            out.push(check("symmetry", format!("{{{s}}}"), symmetric, "four images agree"));
            out
        }));
    }
    jobs.push(Box::new(move || {
        let polys = family_seq(Family::Polyominoes, kmax);
        let evens = family_seq(Family::EvenFountains, kmax);
        let rec = cnt::count_321_sequence(kmax);
        vec![
            compare_seq("counts", "recurrence_321 vs polyominoes", &rec, &polys),
            compare_seq("counts", "recurrence_321 vs even fountains", &rec, &evens),
        ]
    }));
    jobs.push(Box::new(move || {
        let fountains = family_seq(Family::Fountains, kmax);
        vec![compare_seq("counts", "fountains vs {231}", &fountains, &oracle_seq(&set("231"), kmax))]
    }));
    jobs.push(Box::new(move || {
        let parts = family_seq(Family::Partitions, kmax);
        vec![compare_seq("counts", "pentagonal vs partitions", &cnt::partition_numbers(kmax), &parts)]
    }));
    jobs.push(Box::new(move || {
        let gor = family_seq(Family::Gorenstein, kmax);
        let rec = cnt::count_gorenstein_sequence(kmax);
        let gf = cnt::gf_coefficients(GfName::GorensteinCompositions, kmax);
        vec![
            compare_seq("counts", "recurrence_gorenstein vs gorenstein partitions", &rec, &gor),
            compare_seq("counts", "gf:gorenstein_compositions vs gorenstein partitions", &gf, &gor),
        ]
    }));
    jobs.push(Box::new(move || {
        let slow = oracle_seq(&set("123,132"), kmax);
        let almost = family_seq(Family::AlmostTriangular, kmax);
        let gf = cnt::gf_coefficients(GfName::AlmostTriangular, kmax);
        vec![
            compare_seq("counts", "gf:almost_triangular vs {123,132}", &gf, &slow),
            compare_seq("counts", "almost triangular partitions vs {123,132}", &almost, &slow),
        ]
    }));
    jobs.push(Box::new(move || {
        let slow = oracle_seq(&set("123,132,213"), kmax);
        let rule: Vec<BigCount> = (0..=kmax).map(cnt::diagonal_pascal_count).collect();
        vec![compare_seq("counts", "binomial rule vs {123,132,213}", &rule, &slow)]
    }));
    jobs.push(Box::new(move || {
        let slow = oracle_seq(&set("132,321"), kmax);
        let equal = family_seq(Family::EqualPartitions, kmax);
        let distinct = family_seq(Family::DistinctPartitions, kmax);
        vec![
            compare_seq("counts", "equal-part partitions vs {132,321}", &equal, &slow),
            compare_seq(
                "counts",
                "distinct-part partitions vs {132,231}",
                &distinct,
                &oracle_seq(&set("132,231"), kmax),
            ),
        ]
    }));
    jobs.push(Box::new(move || {
        let ok = (0..=kmax).all(|k| class("231,321", k) == vec![cnt::shifted_witness(k)]);
        vec![check("counts", "{231,321} witness", ok, "(k+1) 1 2 … k is the only element")]
    }));
    jobs.push(Box::new(move || {
        let counts = oracle_seq(&set("123,321"), kmax);
        let k0 = (0..=kmax).find(|&k| counts[k..].iter().all(|c| c == &BigCount::from(0u8)));
        let detail = match k0 {
            Some(k0) => format!("zero from k={k0}"),
            None => "still non-zero".into(),
        };
        vec![check("counts", "{123,321} extinction", k0.is_some() || kmax < 10, detail)]
    }));
    jobs.push(Box::new(move || {
        vec![
            erratum(
                "almost_triangular series as printed",
                &cnt::almost_triangular_printed(kmax).into_iter().map(BigInt::from).collect::<Vec<_>>(),
                &oracle_seq(&set("123,132"), kmax),
            ),
            erratum(
                "diagonal_pascal binomial as printed",
                &(0..=kmax).map(|k| BigInt::from(cnt::diagonal_pascal_printed(k))).collect::<Vec<_>>(),
                &oracle_seq(&set("123,132,213"), kmax),
            ),
            erratum(
                "recurrence_123 length range as printed",
                &cnt::count_123_printed_range(kmax),
                &oracle_seq(&set("123"), kmax),
            ),
            erratum(
                "321-1342 conjecture as printed",
                &(0..=kmax)
                    .map(|k| BigInt::from(cnt::Conjecture::C321_1342.printed(k)))
                    .collect::<Vec<_>>(),
                &oracle_seq(&cnt::Conjecture::C321_1342.patterns(), kmax),
            ),
        ]
    }));
    jobs
}

fn round_trip_check<T: Ord + Clone>(
    name: &str,
    kmax: usize,
    forward: impl Fn(&Permutation) -> Result<T> + Sync,
    backward: impl Fn(&T) -> Permutation + Sync,
    words: &str,
    objects: impl Fn(usize) -> Vec<T> + Sync,
) -> Check {
    for k in 0..=kmax {
        let perms = class(words, k);
        let mut image = BTreeSet::new();
        for p in &perms {
            let obj = match forward(p) {
                Ok(o) => o,
                Err(e) => return check("bijections", name, false, format!("k={k} {p}: {e}")),
            };
            if &backward(&obj) != p {
                return check("bijections", name, false, format!("k={k} {p} does not round-trip"));
            }
            image.insert(obj);
        }
        let expected: BTreeSet<T> = objects(k).into_iter().collect();
        if image.len() != perms.len() || image != expected {
            return check(
                "bijections",
                name,
                false,
                format!("k={k}: {} images, {} objects", image.len(), expected.len()),
            );
        }
    }
    check("bijections", name, true, format!("k=0..={kmax}"))
}

fn bijection_jobs(kmax: usize) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        vec![round_trip_check(
            "{132} <-> partitions",
            kmax,
            bij::p132_to_partition,
            bij::partition_to_p132,
            "132",
            oracle::partitions,
        )]
    }));
    jobs.push(Box::new(move || {
        vec![round_trip_check(
            "{231} <-> fountains",
            kmax,
            |p| bij::p231_to_fountain(p).map(|f| f.to_coinset()),
            |c: &CoinSet| bij::fountain_to_p231(&Fountain::from_coinset(c).expect("fountain")),
            "231",
            oracle::fountains,
        )]
    }));
    jobs.push(Box::new(move || {
        vec![round_trip_check(
            "{321} <-> polyominoes",
            kmax,
            bij::p321_to_polyomino,
            bij::polyomino_to_p321,
            "321",
            oracle::polyominoes,
        )]
    }));
    jobs.push(Box::new(move || {
        let to_even = |p: &Permutation| bij::table_to_even_fountain(p.inversion_table().entries());
        let from_even = |c: &CoinSet| {
            let t = bij::even_fountain_to_table(c).expect("valid coins");
            Permutation::from_inversion_table(&t)
        };
        let mut out = vec![round_trip_check(
            "{321} <-> even fountains",
            kmax,
            to_even,
            from_even,
            "321",
            oracle::even_fountains,
        )];
        let back = (0..=kmax).all(|k| {
            oracle::even_fountains(k).iter().all(|c| {
                let t = bij::even_fountain_to_table(c).expect("valid coins");
                t.sum() == k && bij::table_to_even_fountain(t.entries()).as_ref() == Ok(c)
            })
        });
        out.push(check("bijections", "even fountains -> tables -> even fountains", back, format!("k=0..={kmax}")));
        out
    }));
    jobs.push(Box::new(move || {
        let mut out = vec![round_trip_check(
            "{132,213} <-> gorenstein partitions",
            kmax,
            bij::p132_to_partition,
            bij::partition_to_p132,
            "132,213",
            |k| oracle::partitions(k).into_iter().filter(Partition::is_gorenstein).collect(),
        )];
        let compositions = (2..=kmax + 1).all(|s| {
            crate::objects::Composition::all_of(s)
                .into_iter()
                .filter(|m| m.len() >= 2)
                .all(|m| {
                    let g = bij::gorenstein_from_composition(&m).expect("two terms");
                    g.is_gorenstein() && bij::composition_from_gorenstein(&g).as_ref() == Ok(&m)
                })
        });
        out.push(check(
            "bijections",
            "compositions <-> gorenstein partitions",
            compositions,
            format!("s=2..={}", kmax + 1),
        ));
        out
    }));
    jobs.push(Box::new(move || {
        vec![round_trip_check(
            "{123,132} <-> almost triangular partitions",
            kmax,
            bij::p132_to_partition,
            bij::partition_to_p132,
            "123,132",
            |k| oracle::partitions(k).into_iter().filter(Partition::is_almost_triangular).collect(),
        )]
    }));
    jobs.push(Box::new(move || {
        let len = kmax.clamp(1, 8);
        let mut bad = None;
        'outer: for n in 1..=len {
            for p in all_permutations(n) {
                let t = p.inversion_table();
                if bij::is_valid_321_table(t.entries()) != bij::is_321_table_by_membership(t.entries()) {
                    bad = Some(t);
                    break 'outer;
                }
            }
        }
        vec![match bad {
            None => check("bijections", "321 table criterion", true, format!("all tables of length ≤ {len}")),
            Some(t) => check("bijections", "321 table criterion", false, format!("disagree on {t}")),
        }]
    }));
    jobs
}

/// Every permutation of length `n`, via inversion tables.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..=n * n.saturating_sub(1) / 2).flat_map(move |k| oracle::gen_by_inversions(k, n))
}

/// Runs the chosen suite up to `kmax`.
pub fn run(kmax: usize, suite: Suite) -> Report {
    let mut jobs = Vec::new();
    if matches!(suite, Suite::All | Suite::Counts) {
        jobs.extend(count_jobs(kmax));
    }
    if matches!(suite, Suite::All | Suite::Bijections) {
        jobs.extend(bijection_jobs(kmax));
    }
    let checks: Vec<Check> = jobs.par_iter().map(|job| job()).collect::<Vec<_>>().concat();
    Report { kmax, suite, checks }
}
