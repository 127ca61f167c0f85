//! Permutations in one-line notation, inversion tables, classical pattern
//! containment, direct and skew sums, and the symmetries that preserve the
//! inversion count.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation. The empty permutation is
/// allowed and has zero components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("duplicate value {v}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { values: word })
    }

    /// Wraps a word the caller has already checked.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation {
            values: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    pub fn inversions(&self) -> usize {
        let v = &self.values;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `b_i` = number of later entries smaller than `π_i`.
    pub fn inversion_table(&self) -> SubdiagonalSequence {
        let v = &self.values;
        let entries = (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&w| w < v[i]).count())
            .collect();
        SubdiagonalSequence { entries }
    }

    pub fn from_inversion_table(table: &SubdiagonalSequence) -> Self {
        let n = table.len();
        let mut unused: Vec<usize> = (1..=n).collect();
        let values = table.entries().iter().map(|&b| unused.remove(b)).collect();
        Permutation { values }
    }

    /// Whether some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        let m = pattern.len();
        if m == 0 {
            return true;
        }
        if m > self.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(m);
        embed(&self.values, &pattern.values, 0, &mut chosen, None)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        patterns.iter().all(|p| self.avoids(p))
    }

    /// Positions (exclusive ends) of the component boundaries: a prefix of
    /// length `j` ends a component iff its values are exactly `1..=j`.
    fn component_ends(&self) -> Vec<usize> {
        let mut ends = Vec::new();
        let mut max = 0;
        for (i, &v) in self.values.iter().enumerate() {
            max = max.max(v);
            if max == i + 1 {
                ends.push(i + 1);
            }
        }
        ends
    }

    /// Maximal factorization under `⊕`, each factor standardized.
    pub fn components(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut start = 0;
        for end in self.component_ends() {
            let values = self.values[start..end].iter().map(|&v| v - start).collect();
            out.push(Permutation { values });
            start = end;
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_ends().len()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.component_count() == 1
    }

    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.len();
        let values = self
            .values
            .iter()
            .copied()
            .chain(other.values.iter().map(|&v| v + n))
            .collect();
        Permutation { values }
    }

    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let m = other.len();
        let values = self
            .values
            .iter()
            .map(|&v| v + m)
            .chain(other.values.iter().copied())
            .collect();
        Permutation { values }
    }

    pub fn reverse(&self) -> Permutation {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len();
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v - 1] = i + 1;
        }
        Permutation { values }
    }

    pub fn reverse_complement(&self) -> Permutation {
        let n = self.len();
        Permutation {
            values: self.values.iter().rev().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn apply(&self, symmetry: Symmetry) -> Permutation {
        match symmetry {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::Inverse => self.inverse(),
            Symmetry::ReverseComplement => self.reverse_complement(),
        }
    }

    /// Positions (1-based) of the left-to-right maxima.
    pub fn left_to_right_maxima(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut max = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > max {
                max = v;
                out.push(i + 1);
            }
        }
        out
    }
}

/// Extends a partial embedding of `pattern` into `word`. When `last` is set,
/// the final pattern entry is pinned to that index of `word`.
fn embed(
    word: &[usize],
    pattern: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    last: Option<usize>,
) -> bool {
    let j = chosen.len();
    if j == pattern.len() {
        return true;
    }
    let remaining = pattern.len() - j;
    let (lo, hi) = match last {
        Some(idx) if remaining == 1 => (idx, idx + 1),
        Some(idx) => (from, idx + 2 - remaining),
        None => (from, word.len() + 1 - remaining),
    };
    for i in lo..hi.max(lo) {
        let fits = chosen
            .iter()
            .enumerate()
            .all(|(t, &c)| (word[c] < word[i]) == (pattern[t] < pattern[j]));
        if fits {
            chosen.push(i);
            if embed(word, pattern, i + 1, chosen, last) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Whether `word` has an occurrence of `pattern` whose last entry is the last
/// letter of `word`. Used to prune prefix searches.
pub(crate) fn ends_with_occurrence(word: &[usize], pattern: &[usize]) -> bool {
    let m = pattern.len();
    if m == 0 || m > word.len() {
        return m == 0;
    }
    let mut chosen = Vec::with_capacity(m);
    embed(word, pattern, 0, &mut chosen, Some(word.len() - 1))
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter permutations first, then lexicographic.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.values.cmp(&other.values))
    }
}

impl fmt::Display for Permutation {
    /// Compact digit word when every value is a single digit, otherwise
    /// space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.iter().all(|&v| v <= 9) {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let words: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", words.join(" "))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry {w:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad permutation digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

/// Reverse, complement, inverse and their composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Reverse,
    Complement,
    Inverse,
    ReverseComplement,
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reverse" => Ok(Symmetry::Reverse),
            "complement" => Ok(Symmetry::Complement),
            "inverse" => Ok(Symmetry::Inverse),
            "reverse_complement" | "reverse-complement" => Ok(Symmetry::ReverseComplement),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Elements of the group of maps that preserve both the inversion count and
/// indecomposability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InversionSymmetry {
    Identity,
    Inverse,
    ReverseComplement,
    InverseReverseComplement,
}

impl InversionSymmetry {
    pub const ALL: [InversionSymmetry; 4] = [
        InversionSymmetry::Identity,
        InversionSymmetry::Inverse,
        InversionSymmetry::ReverseComplement,
        InversionSymmetry::InverseReverseComplement,
    ];

    pub fn apply(self, p: &Permutation) -> Permutation {
        match self {
            InversionSymmetry::Identity => p.clone(),
            InversionSymmetry::Inverse => p.inverse(),
            InversionSymmetry::ReverseComplement => p.reverse_complement(),
            InversionSymmetry::InverseReverseComplement => p.reverse_complement().inverse(),
        }
    }
}

impl fmt::Display for InversionSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            InversionSymmetry::Identity => "identity",
            InversionSymmetry::Inverse => "inverse",
            InversionSymmetry::ReverseComplement => "reverse_complement",
            InversionSymmetry::InverseReverseComplement => "inverse_reverse_complement",
        };
        f.write_str(name)
    }
}

/// Inversion table `b_1 … b_n` with `b_i ≤ n − i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubdiagonalSequence {
    entries: Vec<usize>,
}

impl SubdiagonalSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        for (i, &b) in entries.iter().enumerate() {
            let bound = n - 1 - i;
            if b > bound {
                return Err(Error::NotSubdiagonal {
                    index: i + 1,
                    value: b,
                    bound,
                });
            }
        }
        Ok(SubdiagonalSequence { entries })
    }

    /// Appends the fewest zeros that make `raw` subdiagonal.
    pub fn minimally_padded(raw: &[usize]) -> Self {
        let n = raw
            .iter()
            .enumerate()
            .map(|(i, &b)| i + 1 + b)
            .max()
            .unwrap_or(0)
            .max(raw.len());
        let mut entries = raw.to_vec();
        entries.resize(n, 0);
        SubdiagonalSequence { entries }
    }

    /// Strips trailing zeros, then pads minimally. Sequences that differ only
    /// in trailing zeros map to the same table.
    pub fn normalized(raw: &[usize]) -> Self {
        let end = raw.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
        Self::minimally_padded(&raw[..end])
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Entry `i` (1-based) attains its maximum `n − i`.
    pub fn is_diagonal(&self, i: usize) -> bool {
        self.entries[i - 1] == self.len() - i
    }

    /// Entries with the trailing zeros removed.
    pub fn trimmed(&self) -> &[usize] {
        let end = self
            .entries
            .iter()
            .rposition(|&b| b != 0)
            .map_or(0, |i| i + 1);
        &self.entries[..end]
    }
}

impl fmt::Display for SubdiagonalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", words.join(","))
    }
}

/// A non-empty set of classical patterns, each of length 1 to 4, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub const MAX_PATTERN_LEN: usize = 4;

    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut patterns: Vec<Permutation> = patterns.into_iter().collect();
        if patterns.is_empty() {
            return Err(Error::InvalidPatternSet("no patterns".into()));
        }
        for p in &patterns {
            if p.is_empty() || p.len() > Self::MAX_PATTERN_LEN {
                return Err(Error::InvalidPatternSet(format!(
                    "pattern {p} has length {}, expected 1..={}",
                    p.len(),
                    Self::MAX_PATTERN_LEN
                )));
            }
        }
        patterns.sort();
        let before = patterns.len();
        patterns.dedup();
        if patterns.len() != before {
            return Err(Error::InvalidPatternSet("duplicate pattern".into()));
        }
        Ok(PatternSet { patterns })
    }

    /// Convenience for literals such as `&["132", "213"]`.
    pub fn parse_words(words: &[&str]) -> Result<Self> {
        let patterns = words
            .iter()
            .map(|w| w.parse())
            .collect::<Result<Vec<Permutation>>>()?;
        PatternSet::new(patterns)
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.patterns.iter()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains_pattern(&self, p: &Permutation) -> bool {
        self.patterns.binary_search(p).is_ok()
    }

    pub fn is_superset_of(&self, other: &PatternSet) -> bool {
        other.iter().all(|p| self.contains_pattern(p))
    }

    pub fn map(&self, g: InversionSymmetry) -> PatternSet {
        let mut patterns: Vec<Permutation> = self.patterns.iter().map(|p| g.apply(p)).collect();
        patterns.sort();
        PatternSet { patterns }
    }

    /// Drops every pattern that contains another member: avoiding the smaller
    /// one already forces avoidance of the larger.
    pub fn reduced(&self) -> PatternSet {
        let patterns = self
            .patterns
            .iter()
            .filter(|q| !self.patterns.iter().any(|p| p != *q && q.contains(p)))
            .cloned()
            .collect();
        PatternSet { patterns }
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", words.join(","))
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let patterns = s
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Permutation>>>()?;
        PatternSet::new(patterns)
    }
}
