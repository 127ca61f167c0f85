//! Reference sequences: prefixes of the OEIS entries for the classes, derived
//! by this crate's own enumerations; b-file parsing; comparison against the
//! fast counts with an offset search; and a write-once result cache.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::RwLock;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::counting::{self, canonicalize_patterns, BigCount, CountingMethod};
use crate::error::{Error, Result};
use crate::oracle::{self, EnumerationBudget, Family};
use crate::perm::PatternSet;

pub const CACHE_DIR_ENV: &str = "INVPERM_CACHE_DIR";

/// Number of terms in each builtin prefix.
pub const BUILTIN_TERMS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Derived,
    Fetched,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRecord {
    pub id: String,
    /// Index of the first term.
    pub offset: i64,
    pub terms: Vec<BigCount>,
    pub provenance: Provenance,
}

impl SequenceRecord {
    pub fn term(&self, n: i64) -> Option<&BigCount> {
        let idx = n.checked_sub(self.offset)?;
        usize::try_from(idx).ok().and_then(|i| self.terms.get(i))
    }
}

pub const BUILTIN_IDS: [&str; 11] = [
    "A000041", "A005169", "A006958", "A135278", "A117629", "A000009", "A000005", "A010054",
    "A000012", "A001227", "A103451",
];

/// Pattern set whose counts the entry is claimed to list.
pub fn builtin_patterns(id: &str) -> Result<PatternSet> {
    let words = match id {
        "A000041" => "132",
        "A005169" => "231",
        "A006958" => "321",
        "A135278" => "123,132",
        "A117629" => "132,213",
        "A000009" => "132,231",
        "A000005" => "132,321",
        "A010054" => "231,312",
        "A000012" => "231,321",
        "A001227" => "132,213,231",
        "A103451" => "123,132,213,231",
        _ => return Err(Error::UnknownName(format!("no builtin reference {id}"))),
    };
    Ok(words.parse().expect("literal set"))
}

fn family_counts(family: Family, ks: impl Iterator<Item = usize>) -> Vec<BigCount> {
    let budget = EnumerationBudget::with_kmax(usize::MAX);
    ks.map(|k| {
        let items = oracle::enumerate_objects(family, k, &budget).expect("unbounded budget");
        BigCount::from(items.len())
    })
    .collect()
}

fn oracle_counts(words: &str) -> Vec<BigCount> {
    let s: PatternSet = words.parse().expect("literal set");
    let budget = EnumerationBudget::with_kmax(usize::MAX);
    (0..BUILTIN_TERMS)
        .map(|k| BigCount::from(oracle::count_ik(k, Some(&s), &budget).expect("unbounded")))
        .collect()
}

/// A prefix of the entry, generated here by enumeration. Divisor-type
/// entries start at index 1, the rest at 0.
pub fn builtin_reference(id: &str) -> Result<SequenceRecord> {
    let from_zero = || 0..BUILTIN_TERMS;
    let from_one = || 1..=BUILTIN_TERMS;
    let (offset, terms) = match id {
        "A000041" => (0, family_counts(Family::Partitions, from_zero())),
        "A005169" => (0, family_counts(Family::Fountains, from_zero())),
        "A006958" => (0, family_counts(Family::Polyominoes, from_zero())),
        "A135278" => (0, family_counts(Family::AlmostTriangular, from_zero())),
        "A117629" => (0, family_counts(Family::Gorenstein, from_zero())),
        "A000009" => (0, family_counts(Family::DistinctPartitions, from_zero())),
        "A000005" => (1, family_counts(Family::EqualPartitions, from_one())),
        "A001227" => (
            1,
            from_one()
                .map(|k| {
                    let n = oracle::partitions(k)
                        .iter()
                        .filter(|p| p.is_gorenstein() && p.has_distinct_parts())
                        .count();
                    BigCount::from(n)
                })
                .collect(),
        ),
        "A010054" => (0, oracle_counts("12")),
        "A000012" => (0, oracle_counts("231,321")),
        "A103451" => (0, oracle_counts("123,132,213,231")),
        _ => return Err(Error::UnknownName(format!("no builtin reference {id}"))),
    };
    Ok(SequenceRecord {
        id: id.to_string(),
        offset,
        terms,
        provenance: Provenance::Derived,
    })
}

pub fn validate_id(id: &str) -> Result<()> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(Error::Parse(format!("not an OEIS identifier: {id:?}")))
    }
}

/// Parses `n a(n)` lines. Blank lines and `#` comments are skipped; indices
/// must be consecutive.
pub fn parse_bfile(id: &str, text: &str) -> Result<SequenceRecord> {
    let mut offset = None;
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::BFile {
            line: line_no,
            reason,
        };
        let mut fields = line.split_whitespace();
        let (n, v) = match (fields.next(), fields.next(), fields.next()) {
            (Some(n), Some(v), None) => (n, v),
            _ => return Err(bad(format!("expected two fields, got {line:?}"))),
        };
        let n: i64 = n.parse().map_err(|_| bad(format!("bad index {n:?}")))?;
        let v: BigUint = v.parse().map_err(|_| bad(format!("bad value {v:?}")))?;
        let expected = offset.map(|o: i64| o + terms.len() as i64);
        match expected {
            None => offset = Some(n),
            Some(e) if e != n => return Err(bad(format!("index {n} follows {}", e - 1))),
            Some(_) => {}
        }
        terms.push(v);
    }
    let offset = offset.ok_or_else(|| Error::BFile {
        line: 0,
        reason: "no terms".into(),
    })?;
    Ok(SequenceRecord {
        id: id.to_string(),
        offset,
        terms,
        provenance: Provenance::Fetched,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub k: usize,
    #[serde(serialize_with = "crate::counting::serialize_count")]
    pub ours: BigCount,
    #[serde(serialize_with = "serialize_opt_count")]
    pub reference: Option<BigCount>,
}

impl ComparisonRow {
    pub fn matches(&self) -> bool {
        self.reference.as_ref() == Some(&self.ours)
    }
}

fn serialize_opt_count<S: serde::Serializer>(
    c: &Option<BigCount>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(c) => s.collect_str(c),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub id: String,
    pub patterns: String,
    /// `ours[k]` is compared with reference index `k + shift`.
    pub shift: i64,
    pub rows: Vec<ComparisonRow>,
    pub first_divergence: Option<usize>,
}

impl Comparison {
    pub fn all_match(&self) -> bool {
        self.first_divergence.is_none()
    }

    /// Rows with a reference term that agree, up to the first divergence.
    fn matched_prefix(&self) -> usize {
        let end = self.first_divergence.unwrap_or(self.rows.len());
        self.rows[..end].iter().filter(|r| r.matches()).count()
    }
}

pub fn compare_at(s: &PatternSet, reference: &SequenceRecord, kmax: usize, shift: i64) -> Comparison {
    let ours = counting::count_sequence_with(s, kmax, counting::select_method(s));
    compare_values(s, reference, &ours, shift)
}

fn compare_values(s: &PatternSet, reference: &SequenceRecord, ours: &[BigCount], shift: i64) -> Comparison {
    let rows: Vec<ComparisonRow> = ours
        .iter()
        .enumerate()
        .map(|(k, v)| ComparisonRow {
            k,
            ours: v.clone(),
            reference: reference.term(k as i64 + shift).cloned(),
        })
        .collect();
    let first_divergence = rows
        .iter()
        .find(|r| r.reference.as_ref().is_some_and(|x| x != &r.ours))
        .map(|r| r.k);
    Comparison {
        id: reference.id.clone(),
        patterns: s.to_string(),
        shift,
        rows,
        first_divergence,
    }
}

pub const DEFAULT_SHIFTS: std::ops::RangeInclusive<i64> = -2..=2;

/// Tries every shift and keeps the alignment with the longest matching
/// prefix, then the fewest divergences, then the smallest shift.
pub fn compare(s: &PatternSet, reference: &SequenceRecord, kmax: usize) -> Comparison {
    let ours = counting::count_sequence_with(s, kmax, counting::select_method(s));
    DEFAULT_SHIFTS
        .map(|shift| compare_values(s, reference, &ours, shift))
        .max_by_key(|c| {
            let wrong = c.rows.iter().filter(|r| r.reference.is_some() && !r.matches()).count();
            (c.matched_prefix(), std::cmp::Reverse(wrong), std::cmp::Reverse(c.shift.abs()), std::cmp::Reverse(c.shift))
        })
        .expect("non-empty shift range")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub k: usize,
    pub count: String,
    pub method: String,
    pub timestamp: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct CacheDocument {
    patterns: String,
    entries: Vec<CacheEntry>,
}

/// One JSON document per canonical pattern set. Values are write-once: a
/// second write of a different value for the same `k` is an error.
pub struct ResultCache {
    dir: PathBuf,
    lock: RwLock<()>,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultCache {
            dir: dir.into(),
            lock: RwLock::new(()),
        }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn key(s: &PatternSet) -> PatternSet {
        canonicalize_patterns(&s.reduced()).0
    }

    fn path(&self, key: &PatternSet) -> PathBuf {
        let name: Vec<String> = key.iter().map(|p| p.to_string()).collect();
        self.dir.join(format!("{}.json", name.join("_")))
    }

    fn load(&self, key: &PatternSet) -> Result<CacheDocument> {
        let path = self.path(key);
        match fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display()))),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(CacheDocument {
                patterns: key.to_string(),
                entries: Vec::new(),
            }),
            Err(e) => Err(Error::Cache(format!("{}: {e}", path.display()))),
        }
    }

    pub fn get(&self, s: &PatternSet, k: usize) -> Result<Option<BigCount>> {
        let _guard = self.lock.read().expect("cache lock");
        let doc = self.load(&Self::key(s))?;
        doc.entries
            .iter()
            .find(|e| e.k == k)
            .map(|e| {
                e.count
                    .parse()
                    .map_err(|_| Error::Cache(format!("bad count {:?}", e.count)))
            })
            .transpose()
    }

    pub fn entries(&self, s: &PatternSet) -> Result<Vec<CacheEntry>> {
        let _guard = self.lock.read().expect("cache lock");
        Ok(self.load(&Self::key(s))?.entries)
    }

    /// Stores `value` unless it is already there; a different stored value
    /// means the computation is not reproducible.
    pub fn record(&self, s: &PatternSet, k: usize, value: &BigCount, method: CountingMethod) -> Result<()> {
        let _guard = self.lock.write().expect("cache lock");
        let key = Self::key(s);
        let mut doc = self.load(&key)?;
        let text = value.to_string();
        if let Some(existing) = doc.entries.iter().find(|e| e.k == k) {
            if existing.count != text {
                return Err(Error::Cache(format!(
                    "{key} at k = {k}: cached {} but computed {text}",
                    existing.count
                )));
            }
            return Ok(());
        }
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        doc.entries.push(CacheEntry {
            k,
            count: text,
            method: method.to_string(),
            timestamp,
        });
        doc.entries.sort_by_key(|e| e.k);
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(e.to_string()))?;
        let path = self.path(&key);
        let tmp = path.with_extension("json.tmp");
        let body = serde_json::to_string_pretty(&doc).expect("serializable");
        fs::write(&tmp, body).map_err(|e| Error::Cache(e.to_string()))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(())
    }

    /// Counts through the cache: cached values are returned as stored, fresh
    /// values are computed and recorded.
    pub fn count(&self, s: &PatternSet, k: usize) -> Result<BigCount> {
        if let Some(v) = self.get(s, k)? {
            return Ok(v);
        }
        let result = counting::count_detailed(s, k);
        self.record(s, k, &result.count, result.method)?;
        Ok(result.count)
    }
}

/// Source of b-file text for an identifier.
pub trait SequenceClient {
    fn fetch_bfile(&self, id: &str) -> Result<String>;
}

/// Serves b-files from memory, keyed by identifier.
#[derive(Clone, Debug, Default)]
pub struct StaticClient {
    pub files: BTreeMap<String, String>,
}

impl SequenceClient for StaticClient {
    fn fetch_bfile(&self, id: &str) -> Result<String> {
        self.files
            .get(id)
            .cloned()
            .ok_or_else(|| Error::Fetch(format!("no b-file for {id}")))
    }
}

#[cfg(feature = "fetch")]
pub struct HttpClient {
    pub base_url: String,
}

#[cfg(feature = "fetch")]
impl Default for HttpClient {
    fn default() -> Self {
        HttpClient {
            base_url: "https://oeis.org".into(),
        }
    }
}

#[cfg(feature = "fetch")]
impl SequenceClient for HttpClient {
    fn fetch_bfile(&self, id: &str) -> Result<String> {
        validate_id(id)?;
        let url = format!("{}/{id}/b{}.txt", self.base_url, &id[1..]);
        ureq::get(&url)
            .call()
            .map_err(|e| Error::Fetch(format!("{url}: {e}")))?
            .into_string()
            .map_err(|e| Error::Fetch(format!("{url}: {e}")))
    }
}

pub fn fetch_reference(client: &dyn SequenceClient, id: &str) -> Result<SequenceRecord> {
    validate_id(id)?;
    parse_bfile(id, &client.fetch_bfile(id)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: &[BigCount]) -> Vec<u64> {
        v.iter().map(|b| u64::try_from(b).unwrap()).collect()
    }

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_prefixes() {
        let p = builtin_reference("A000041").unwrap();
        assert_eq!(nums(&p.terms[..6]), [1, 1, 2, 3, 5, 7]);
        assert_eq!(p.provenance, Provenance::Derived);
        assert!(builtin_reference("A000012").unwrap().terms.iter().all(|t| t == &BigCount::from(1u8)));
        let d = builtin_reference("A000005").unwrap();
        assert_eq!(d.offset, 1);
        assert_eq!(nums(&d.terms[..6]), [1, 2, 2, 3, 2, 4]);
        for id in BUILTIN_IDS {
            let r = builtin_reference(id).unwrap();
            assert!(r.terms.len() >= 15, "{id}");
        }
        assert!(builtin_reference("A999999").is_err());
    }

    #[test]
    fn builtins_match_their_classes() {
        for id in BUILTIN_IDS {
            let r = builtin_reference(id).unwrap();
            let c = compare(&builtin_patterns(id).unwrap(), &r, 12);
            assert!(c.all_match(), "{id}: {c:?}");
            assert_eq!(c.shift, 0, "{id}");
        }
    }

    #[test]
    fn bfile_parsing() {
        let r = parse_bfile("A000041", "0 1\n1 1\n2 2").unwrap();
        assert_eq!((r.offset, nums(&r.terms)), (0, vec![1, 1, 2]));
        assert_eq!(r.provenance, Provenance::Fetched);
        let r = parse_bfile("A000005", "# divisors\n# header\n\n1 1\n2 2\n3 2\n").unwrap();
        assert_eq!((r.offset, nums(&r.terms)), (1, vec![1, 2, 2]));
        assert!(matches!(parse_bfile("A1", "x y"), Err(Error::BFile { line: 1, .. })));
        assert!(matches!(parse_bfile("A1", "0 1\n2 2"), Err(Error::BFile { line: 2, .. })));
        assert!(parse_bfile("A1", "0 1 2").is_err());
        assert!(parse_bfile("A1", "# only\n").is_err());
        let big = "0 123456789012345678901234567890\n";
        assert_eq!(parse_bfile("A1", big).unwrap().terms[0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn comparison_examples() {
        let p = builtin_reference("A000041").unwrap();
        assert!(compare(&set("132"), &p, 10).all_match());
        let ones = builtin_reference("A000012").unwrap();
        assert!(compare(&set("231,321"), &ones, 10).all_match());
        let c = compare(&set("321"), &p, 5);
        assert_eq!(c.first_divergence, Some(3));
        assert_eq!(c.rows[3].ours, BigCount::from(4u8));
        assert_eq!(c.rows[3].reference, Some(BigCount::from(3u8)));
    }

    #[test]
    fn comparison_finds_offset() {
        // The same terms listed from index 1.
        let p = builtin_reference("A000041").unwrap();
        let shifted = SequenceRecord {
            offset: 1,
            ..p.clone()
        };
        let c = compare(&set("132"), &shifted, 10);
        assert_eq!(c.shift, 1);
        assert!(c.all_match());
        assert_eq!(compare_at(&set("132"), &shifted, 10, 0).first_divergence, Some(2));
    }

    #[test]
    fn cache_is_write_once() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path());
        let s = set("213");
        assert_eq!(cache.get(&s, 4).unwrap(), None);
        let v = cache.count(&s, 4).unwrap();
        assert_eq!(v, BigCount::from(5u8));
        // Stored under the canonical set, so 132 hits the same entry.
        assert_eq!(cache.get(&set("132"), 4).unwrap(), Some(v.clone()));
        cache.record(&s, 4, &v, CountingMethod::Oracle).unwrap();
        let err = cache.record(&s, 4, &BigCount::from(6u8), CountingMethod::Oracle);
        assert!(matches!(err, Err(Error::Cache(_))));
        let entries = cache.entries(&s).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].method, "closed_form:partition_count");
    }

    #[test]
    fn static_client_fetch() {
        let mut client = StaticClient::default();
        client.files.insert("A000012".into(), "0 1\n1 1\n".into());
        let r = fetch_reference(&client, "A000012").unwrap();
        assert_eq!(r.terms.len(), 2);
        assert!(fetch_reference(&client, "A000041").is_err());
        assert!(fetch_reference(&client, "bogus").is_err());
        assert!(validate_id("A117629").is_ok());
    }
}
