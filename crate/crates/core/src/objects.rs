//! Combinatorial objects that the permutation classes map onto: partitions
//! (with the Gorenstein, almost-triangular, distinct and equal predicates),
//! compositions, fountains of coins and parallelogram polyominoes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {w:?}")))
        })
        .collect()
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Integer partition with positive, weakly decreasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from any order of positive parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The common value of `ρ_i + i` over the descent positions, where the
    /// part after the last is read as zero. `None` for the empty partition and
    /// for partitions that are not Gorenstein.
    pub fn diagonal_constant(&self) -> Option<usize> {
        let r = self.parts.len();
        let mut constant = None;
        for i in 0..r {
            let next = if i + 1 < r { self.parts[i + 1] } else { 0 };
            if self.parts[i] != next {
                let value = self.parts[i] + i + 1;
                match constant {
                    None => constant = Some(value),
                    Some(c) if c != value => return None,
                    Some(_) => {}
                }
            }
        }
        constant
    }

    /// The empty partition counts as Gorenstein.
    pub fn is_gorenstein(&self) -> bool {
        self.is_empty() || self.diagonal_constant().is_some()
    }

    /// Read in increasing order, optionally with one leading zero, entry `i`
    /// is `i` or `i − 1`, and not every entry is `i − 1`. The empty partition
    /// is accepted as the `r = 0` case.
    pub fn is_almost_triangular(&self) -> bool {
        fn check(increasing: &[usize]) -> bool {
            let mut all_low = true;
            for (idx, &v) in increasing.iter().enumerate() {
                let i = idx + 1;
                if v == i {
                    all_low = false;
                } else if v != i - 1 {
                    return false;
                }
            }
            !all_low
        }
        if self.is_empty() {
            return true;
        }
        let increasing: Vec<usize> = self.parts.iter().rev().copied().collect();
        if check(&increasing) {
            return true;
        }
        let mut padded = Vec::with_capacity(increasing.len() + 1);
        padded.push(0);
        padded.extend_from_slice(&increasing);
        check(&padded)
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1])
    }

    pub fn has_equal_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1])
    }

    /// No part lies strictly between the smallest and the largest part.
    pub fn has_no_intermediate_parts(&self) -> bool {
        match (self.parts.first(), self.parts.last()) {
            (Some(&hi), Some(&lo)) => self.parts.iter().all(|&p| p == hi || p == lo),
            _ => true,
        }
    }

    /// Removes the leading run of equal parts.
    pub fn without_first_run(&self) -> Partition {
        let run = self
            .parts
            .iter()
            .take_while(|&&p| Some(&p) == self.parts.first())
            .count();
        Partition {
            parts: self.parts[run..].to_vec(),
        }
    }

    pub fn first_run_len(&self) -> usize {
        self.parts
            .iter()
            .take_while(|&&p| Some(&p) == self.parts.first())
            .count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            f.write_str("()")
        } else {
            f.write_str(&join(&self.parts))
        }
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        Partition::new(parse_list(s)?)
    }
}

/// Ordered sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    terms: Vec<usize>,
}

impl Composition {
    pub fn new(terms: Vec<usize>) -> Result<Self> {
        if terms.contains(&0) {
            return Err(Error::InvalidComposition("terms must be positive".into()));
        }
        Ok(Composition { terms })
    }

    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> usize {
        self.terms.iter().sum()
    }

    /// All compositions of `s`, in lexicographic order of terms.
    pub fn all_of(s: usize) -> Vec<Composition> {
        fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition { terms: cur.clone() });
                return;
            }
            for t in 1..=rest {
                cur.push(t);
                go(rest - t, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(s, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.terms))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_list(s)?)
    }
}

/// Fountain of coins in diagonal-removal form.
///
/// The full fountain with base `b` has `b − i + 1` coins on the diagonal that
/// climbs up and to the right from bottom coin `i`. `missing[i − 1]` coins are
/// removed from the top of that diagonal. The bottom row stays full, so
/// `missing_i ≤ b − i`, and the fountain rule makes `missing` weakly
/// decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fountain {
    base: usize,
    missing: Vec<usize>,
}

impl Fountain {
    pub fn new(base: usize, missing: Vec<usize>) -> Result<Self> {
        if missing.len() != base {
            return Err(Error::InvalidFountain(format!(
                "expected {base} diagonal counts, got {}",
                missing.len()
            )));
        }
        for (idx, &m) in missing.iter().enumerate() {
            let i = idx + 1;
            if m > base - i {
                return Err(Error::InvalidFountain(format!(
                    "missing_{i} = {m} exceeds {} (bottom row must stay full)",
                    base - i
                )));
            }
        }
        if let Some(idx) = missing.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidFountain(format!(
                "missing counts increase at diagonal {}",
                idx + 2
            )));
        }
        Ok(Fountain { base, missing })
    }

    pub fn empty() -> Self {
        Fountain {
            base: 0,
            missing: Vec::new(),
        }
    }

    pub fn full(base: usize) -> Self {
        Fountain {
            base,
            missing: vec![0; base],
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn missing(&self) -> &[usize] {
        &self.missing
    }

    pub fn coins(&self) -> usize {
        self.base * (self.base + 1) / 2 - self.missing.iter().sum::<usize>()
    }

    /// Height of diagonal `i` (1-based).
    pub fn diagonal_len(&self, i: usize) -> usize {
        self.base - i + 1 - self.missing[i - 1]
    }

    pub fn to_coinset(&self) -> CoinSet {
        let mut coins = BTreeSet::new();
        for i in 1..=self.base {
            for row in 1..=self.diagonal_len(i) {
                coins.insert((row, i));
            }
        }
        CoinSet { coins }
    }

    pub fn from_coinset(c: &CoinSet) -> Result<Self> {
        let base = c.bottom_width();
        let mut lens = Vec::with_capacity(base);
        for i in 1..=base {
            let mut height = 0;
            while c.contains(height + 1, i) {
                height += 1;
            }
            lens.push(height);
        }
        for &(row, pos) in &c.coins {
            if pos == 0 || pos > base {
                return Err(Error::NotAFountain {
                    diagonal: pos,
                    reason: format!("has coin at row {row} outside the base"),
                });
            }
            if row > lens[pos - 1] {
                return Err(Error::NotAFountain {
                    diagonal: pos,
                    reason: format!("has a gap below the coin at row {row}"),
                });
            }
        }
        let mut missing = Vec::with_capacity(base);
        for (idx, &len) in lens.iter().enumerate() {
            let i = idx + 1;
            let full = base - i + 1;
            if len > full {
                return Err(Error::NotAFountain {
                    diagonal: i,
                    reason: format!("is taller ({len}) than the full fountain allows ({full})"),
                });
            }
            missing.push(full - len);
        }
        if let Some(idx) = missing.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotAFountain {
                diagonal: idx + 2,
                reason: format!(
                    "misses {} coins after a diagonal missing {}",
                    missing[idx + 1],
                    missing[idx]
                ),
            });
        }
        Fountain::new(base, missing)
    }
}

impl fmt::Display for Fountain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b={}; missing={}", self.base, join(&self.missing))
    }
}

impl FromStr for Fountain {
    /// Accepts `"b; m_1,…,m_b"` and the display form `"b=2; missing=1,0"`.
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (b, m) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("fountain needs \"b; m_1,…\": {s:?}")))?;
        let b = b.trim().trim_start_matches("b=").trim();
        let m = m.trim().trim_start_matches("missing=");
        let base = b
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad fountain base {b:?}")))?;
        Fountain::new(base, parse_list(m)?)
    }
}

/// Explicit coin positions `(row, pos)`, row 1 at the bottom. Coin `(r, p)`
/// with `r > 1` rests on `(r − 1, p)` and `(r − 1, p + 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoinSet {
    coins: BTreeSet<(usize, usize)>,
}

impl CoinSet {
    pub fn new(coins: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let set = CoinSet {
            coins: coins.into_iter().collect(),
        };
        set.validate()?;
        Ok(set)
    }

    pub(crate) fn from_set_unchecked(coins: BTreeSet<(usize, usize)>) -> Self {
        CoinSet { coins }
    }

    pub fn validate(&self) -> Result<()> {
        let width = self.bottom_width();
        for &(row, pos) in &self.coins {
            if row == 0 || pos == 0 {
                return Err(Error::InvalidFountain(format!(
                    "coin ({row},{pos}) uses 1-based coordinates"
                )));
            }
            if row == 1 && pos > width {
                return Err(Error::InvalidFountain(
                    "bottom row is not a contiguous run from position 1".into(),
                ));
            }
            if row > 1 && !(self.contains(row - 1, pos) && self.contains(row - 1, pos + 1)) {
                return Err(Error::InvalidFountain(format!(
                    "coin ({row},{pos}) does not rest on two coins"
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, row: usize, pos: usize) -> bool {
        self.coins.contains(&(row, pos))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.coins.iter()
    }

    pub fn len(&self) -> usize {
        self.coins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coins.is_empty()
    }

    /// Length of the contiguous bottom run starting at position 1.
    pub fn bottom_width(&self) -> usize {
        let mut w = 0;
        while self.contains(1, w + 1) {
            w += 1;
        }
        w
    }

    pub fn height(&self) -> usize {
        self.coins.iter().map(|&(r, _)| r).max().unwrap_or(0)
    }

    /// Coins on odd rows: the bottom row, two rows up, and so on.
    pub fn even_size(&self) -> usize {
        self.coins.iter().filter(|&&(r, _)| r % 2 == 1).count()
    }

    pub(crate) fn coins(&self) -> &BTreeSet<(usize, usize)> {
        &self.coins
    }
}

/// `(row,pos)` pairs separated by spaces, `()` for no coins.
impl fmt::Display for CoinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coins.is_empty() {
            return f.write_str("()");
        }
        let coins: Vec<String> = self.coins.iter().map(|(r, p)| format!("({r},{p})")).collect();
        f.write_str(&coins.join(" "))
    }
}

impl FromStr for CoinSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "()" || s.is_empty() {
            return Ok(CoinSet::default());
        }
        let mut coins = BTreeSet::new();
        for chunk in s.split(')') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected \"(row,pos)\", got {chunk:?}")))?;
            match parse_list(inner)?.as_slice() {
                &[r, p] => {
                    coins.insert((r, p));
                }
                _ => return Err(Error::Parse(format!("expected two coordinates in {chunk:?})"))),
            }
        }
        CoinSet::new(coins)
    }
}

/// Number of coins on odd rows.
pub fn even_size(f: &Fountain) -> usize {
    (1..=f.base()).map(|i| f.diagonal_len(i).div_ceil(2)).sum()
}

/// Parallelogram polyomino given by row boundaries: row `i` covers the cells
/// between `lower[i]` and `upper[i]`. The empty polyomino (no rows) is allowed
/// and has zero cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParallelogramPolyomino {
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl ParallelogramPolyomino {
    pub fn new(lower: Vec<usize>, upper: Vec<usize>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::InvalidPolyomino(
                "boundary sequences differ in length".into(),
            ));
        }
        if let Some(&first) = lower.first() {
            if first != 0 {
                return Err(Error::InvalidPolyomino("l_1 must be 0".into()));
            }
        }
        if lower.windows(2).any(|w| w[0] > w[1]) || upper.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPolyomino(
                "boundaries must be weakly increasing".into(),
            ));
        }
        for i in 0..lower.len() {
            if lower[i] >= upper[i] {
                return Err(Error::InvalidPolyomino(format!(
                    "l_{0} = {1} is not below r_{0} = {2}",
                    i + 1,
                    lower[i],
                    upper[i]
                )));
            }
            if i + 1 < lower.len() && lower[i + 1] >= upper[i] {
                return Err(Error::InvalidPolyomino(format!(
                    "l_{} = {} is not below r_{} = {}",
                    i + 2,
                    lower[i + 1],
                    i + 1,
                    upper[i]
                )));
            }
        }
        Ok(ParallelogramPolyomino { lower, upper })
    }

    pub fn empty() -> Self {
        ParallelogramPolyomino {
            lower: Vec::new(),
            upper: Vec::new(),
        }
    }

    pub fn lower(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    pub fn rows(&self) -> usize {
        self.lower.len()
    }

    pub fn cells(&self) -> usize {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, r)| r - l)
            .sum()
    }
}

impl fmt::Display for ParallelogramPolyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l: {}; r: {}", join(&self.lower), join(&self.upper))
    }
}

impl FromStr for ParallelogramPolyomino {
    /// Format `"l: 0,1,1; r: 3,4,4"`.
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("polyomino needs \"l: …; r: …\": {s:?}")))?;
        let l = l
            .trim()
            .strip_prefix("l:")
            .ok_or_else(|| Error::Parse("missing \"l:\"".into()))?;
        let r = r
            .trim()
            .strip_prefix("r:")
            .ok_or_else(|| Error::Parse("missing \"r:\"".into()))?;
        ParallelogramPolyomino::new(parse_list(l)?, parse_list(r)?)
    }
}

/// Bottom row of eight, four on the second row plus one at position 7,
/// three on the third, one on top. Even size 11.
#[cfg(test)]
pub(crate) fn example_even_fountain() -> CoinSet {
    let mut coins = Vec::new();
    coins.extend((1..=8).map(|p| (1, p)));
    coins.extend([1, 2, 3, 4, 7].iter().map(|&p| (2, p)));
    coins.extend((1..=3).map(|p| (3, p)));
    coins.push((4, 2));
    CoinSet::new(coins).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![3, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(part("5,2,2,2").sum(), 11);
        assert_eq!(part("()"), Partition::empty());
    }

    #[test]
    fn gorenstein_examples() {
        let p = part("7,4,4,4,2,2,1");
        assert_eq!(p.sum(), 24);
        assert!(p.is_gorenstein());
        assert_eq!(p.diagonal_constant(), Some(8));
        for s in 2..9 {
            let stair = Partition::new((1..s).rev().collect()).unwrap();
            assert_eq!(stair.diagonal_constant(), Some(s));
        }
        assert!(!part("3,1").is_gorenstein());
        assert!(Partition::empty().is_gorenstein());
        assert_eq!(Partition::empty().diagonal_constant(), None);
    }

    #[test]
    fn almost_triangular_examples() {
        assert!(part("2,1").is_almost_triangular());
        assert!(part("2,2").is_almost_triangular());
        assert!(part("1").is_almost_triangular());
        assert!(part("2").is_almost_triangular());
        assert!(part("3,2").is_almost_triangular());
        assert!(!part("3").is_almost_triangular());
        assert!(part("1,1").is_almost_triangular());
        assert!(!part("2,2,2").is_almost_triangular());
        assert!(!part("4,1").is_almost_triangular());
    }

    #[test]
    fn distinct_equal_and_two_valued() {
        assert!(part("4,2,1").has_distinct_parts());
        assert!(!part("4,2,2").has_distinct_parts());
        assert!(part("2,2,2").has_equal_parts());
        assert!(!part("2,2,1").has_equal_parts());
        assert!(part("3,3,1").has_no_intermediate_parts());
        assert!(!part("3,2,1").has_no_intermediate_parts());
    }

    #[test]
    fn gorenstein_run_removal_stays_gorenstein() {
        // Every Gorenstein partition of n ≤ 16: removing the first run leaves
        // either nothing or a Gorenstein partition whose constant dropped by
        // the run length.
        fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition::new(cur.clone()).unwrap());
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                partitions(n - p, p, cur, out);
                cur.pop();
            }
        }
        for n in 1..=16 {
            let mut all = Vec::new();
            partitions(n, n, &mut Vec::new(), &mut all);
            for p in all.into_iter().filter(Partition::is_gorenstein) {
                let c = p.diagonal_constant().unwrap();
                let run = p.first_run_len();
                let rest = p.without_first_run();
                if !rest.is_empty() {
                    assert_eq!(rest.diagonal_constant(), Some(c - run), "{p}");
                }
            }
        }
    }

    #[test]
    fn fountain_coinset_examples() {
        let f = Fountain::new(2, vec![1, 0]).unwrap();
        let c = f.to_coinset();
        assert_eq!(c, CoinSet::new([(1, 1), (1, 2)]).unwrap());
        assert_eq!(f.coins(), 2);
        assert!(Fountain::empty().to_coinset().is_empty());
        assert!(matches!(
            Fountain::new(5, vec![5, 0, 0, 0, 0]),
            Err(Error::InvalidFountain(_))
        ));
        assert!(Fountain::new(3, vec![0, 1, 0]).is_err());
    }

    #[test]
    fn coinset_rejects_non_fountain() {
        // (2,1) floats without its right support.
        assert!(CoinSet::new([(1, 1), (2, 1)]).is_err());
        // Valid geometry always converts back.
        let c = CoinSet::new([(1, 1), (1, 2), (1, 3), (2, 2)]).unwrap();
        let f = Fountain::from_coinset(&c).unwrap();
        assert_eq!(f.missing(), &[2, 0, 0]);
        // A hand-built set with a hole in diagonal 2 reports that diagonal.
        let bad = CoinSet::from_set_unchecked([(1, 1), (1, 2), (1, 3), (3, 2)].into());
        assert!(matches!(
            Fountain::from_coinset(&bad),
            Err(Error::NotAFountain { diagonal: 2, .. })
        ));
        // Diagonal 1 is full but diagonal 2 misses a coin, leaving (3,1)
        // without its right support.
        let bad =
            CoinSet::from_set_unchecked([(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)].into());
        assert!(matches!(
            Fountain::from_coinset(&bad),
            Err(Error::NotAFountain { diagonal: 2, .. })
        ));
    }

    #[test]
    fn fountain_round_trip_all_small() {
        fn go(b: usize, i: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Fountain>) {
            if i > b {
                out.push(Fountain::new(b, cur.clone()).unwrap());
                return;
            }
            for m in 0..=cap.min(b - i) {
                cur.push(m);
                go(b, i + 1, m, cur, out);
                cur.pop();
            }
        }
        for b in 0..=7 {
            let mut all = Vec::new();
            go(b, 1, usize::MAX, &mut Vec::new(), &mut all);
            for f in all {
                let c = f.to_coinset();
                c.validate().unwrap();
                assert_eq!(c.len(), f.coins());
                assert_eq!(c.even_size(), even_size(&f));
                assert_eq!(Fountain::from_coinset(&c).unwrap(), f);
            }
        }
    }

    #[test]
    fn even_size_examples() {
        let c = example_even_fountain();
        assert_eq!(c.even_size(), 11);
        assert_eq!(c.len(), 17);
        let f = Fountain::from_coinset(&c).unwrap();
        assert_eq!(f.missing(), &[5, 3, 3, 3, 3, 2, 0, 0]);
        assert_eq!(even_size(&f), 11);
        let row = Fountain::new(4, vec![3, 2, 1, 0]).unwrap();
        assert_eq!(even_size(&row), 4);
        assert_eq!(even_size(&Fountain::empty()), 0);
    }

    #[test]
    fn coin_text_round_trip() {
        let c = example_even_fountain();
        assert_eq!(c.to_string().parse::<CoinSet>().unwrap(), c);
        assert_eq!("()".parse::<CoinSet>().unwrap(), CoinSet::default());
        assert_eq!(CoinSet::default().to_string(), "()");
        assert_eq!("(1,1) (1,2) (2,1)".parse::<CoinSet>().unwrap().len(), 3);
        assert!("(1,1) (2,1)".parse::<CoinSet>().is_err());
        assert!("(1,1,1)".parse::<CoinSet>().is_err());
        assert!("1,1".parse::<CoinSet>().is_err());
    }

    #[test]
    fn polyomino_examples() {
        let p: ParallelogramPolyomino = "l: 0,1,1,3,3; r: 3,4,4,4,6".parse().unwrap();
        assert_eq!(p.cells(), 13);
        assert_eq!(
            ParallelogramPolyomino::new(vec![0], vec![1]).unwrap().cells(),
            1
        );
        assert_eq!(
            ParallelogramPolyomino::new(vec![0, 0], vec![1, 1])
                .unwrap()
                .cells(),
            2
        );
        // l_2 = 1 is not below r_1 = 1.
        assert!(ParallelogramPolyomino::new(vec![0, 1], vec![1, 2]).is_err());
        assert!(ParallelogramPolyomino::new(vec![1], vec![2]).is_err());
        assert!(ParallelogramPolyomino::new(vec![0, 0], vec![2, 1]).is_err());
        assert_eq!(ParallelogramPolyomino::empty().cells(), 0);
    }

    #[test]
    fn text_formats() {
        let f: Fountain = "2; 1,0".parse().unwrap();
        assert_eq!(f.to_string(), "b=2; missing=1,0");
        assert_eq!(f.to_string().parse::<Fountain>().unwrap(), f);
        let p: ParallelogramPolyomino = "l: 0; r: 1".parse().unwrap();
        assert_eq!(p.to_string(), "l: 0; r: 1");
        assert_eq!("3,4".parse::<Composition>().unwrap().total(), 7);
        assert_eq!(Composition::all_of(4).len(), 8);
    }
}
