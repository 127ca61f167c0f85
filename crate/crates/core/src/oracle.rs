//! Brute-force ground truth. Permutations are generated directly from their
//! inversion counts, object families by exhaustive placement. Everything is
//! streamed to a visitor in a fixed order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::objects::{CoinSet, ParallelogramPolyomino, Partition};
use crate::perm::{ends_with_occurrence, PatternSet, Permutation, SubdiagonalSequence};

/// Limits for an enumeration. `kmax` bounds the size parameter; the item and
/// time caps abort a running enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub kmax: usize,
    pub max_items: Option<usize>,
    pub max_time: Option<Duration>,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            kmax: 16,
            max_items: None,
            max_time: None,
        }
    }
}

impl EnumerationBudget {
    pub fn with_kmax(kmax: usize) -> Self {
        EnumerationBudget {
            kmax,
            ..Self::default()
        }
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.kmax {
            return Err(Error::BudgetExceeded(format!(
                "k = {k} exceeds kmax = {}",
                self.kmax
            )));
        }
        Ok(())
    }
}

struct Meter {
    items: usize,
    max_items: Option<usize>,
    deadline: Option<Instant>,
}

impl Meter {
    fn new(budget: &EnumerationBudget) -> Self {
        Meter {
            items: 0,
            max_items: budget.max_items,
            deadline: budget.max_time.map(|t| Instant::now() + t),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.items += 1;
        if let Some(cap) = self.max_items {
            if self.items > cap {
                return Err(Error::BudgetExceeded(format!("more than {cap} items")));
            }
        }
        if let Some(deadline) = self.deadline {
            if self.items.is_multiple_of(256) && Instant::now() > deadline {
                return Err(Error::BudgetExceeded("time cap reached".into()));
            }
        }
        Ok(())
    }
}

/// Permutations of length `n` with `k` inversions, in lexicographic order,
/// obtained by stepping through subdiagonal sequences with sum `k`.
pub struct ByInversions {
    table: Vec<usize>,
    done: bool,
}

pub fn gen_by_inversions(k: usize, n: usize) -> ByInversions {
    let mut table = vec![0; n];
    let done = !fill_from_right(&mut table, 0, k);
    ByInversions { table, done }
}

fn cap(n: usize, i: usize) -> usize {
    n - 1 - i
}

/// Writes the lexicographically least suffix from `start` with sum `amount`.
fn fill_from_right(table: &mut [usize], start: usize, mut amount: usize) -> bool {
    let n = table.len();
    for i in (start..n).rev() {
        let take = amount.min(cap(n, i));
        table[i] = take;
        amount -= take;
    }
    amount == 0
}

impl Iterator for ByInversions {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let table = SubdiagonalSequence::new(self.table.clone()).expect("entries within caps");
        let current = Permutation::from_inversion_table(&table);

        let n = self.table.len();
        let mut suffix = 0;
        let mut advanced = false;
        for i in (0..n).rev() {
            if suffix > 0 && self.table[i] < cap(n, i) {
                self.table[i] += 1;
                fill_from_right(&mut self.table, i + 1, suffix - 1);
                advanced = true;
                break;
            }
            suffix += self.table[i];
        }
        self.done = !advanced;
        Some(current)
    }
}

struct Search<'a> {
    n: usize,
    k: usize,
    patterns: Vec<&'a [usize]>,
    prefix: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, inv: usize, max: usize, visit: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
        let i = self.prefix.len();
        if i == self.n {
            return if inv == self.k { visit(&self.prefix) } else { Ok(()) };
        }
        let left_after = self.n - i - 1;
        let room_after = left_after * left_after.saturating_sub(1) / 2;
        let mut rank = 0;
        for v in 1..=self.n {
            if self.used[v] {
                continue;
            }
            let new_inv = inv + rank;
            rank += 1;
            if new_inv > self.k {
                break;
            }
            if new_inv + room_after < self.k {
                continue;
            }
            let new_max = max.max(v);
            if i + 1 < self.n && new_max == i + 1 {
                continue;
            }
            self.prefix.push(v);
            if self.patterns.iter().any(|p| ends_with_occurrence(&self.prefix, p)) {
                self.prefix.pop();
                continue;
            }
            self.used[v] = true;
            let r = self.run(new_inv, new_max, visit);
            self.used[v] = false;
            self.prefix.pop();
            r?;
        }
        Ok(())
    }
}

fn max_length(k: usize, patterns: Option<&PatternSet>) -> usize {
    let mut n = k + 1;
    if let Some(s) = patterns {
        let inc = s
            .iter()
            .filter(|p| p.values().windows(2).all(|w| w[0] < w[1]))
            .map(|p| p.len())
            .min();
        let dec = s
            .iter()
            .filter(|p| p.values().windows(2).all(|w| w[0] > w[1]))
            .map(|p| p.len())
            .min();
        if let (Some(a), Some(b)) = (inc, dec) {
            n = n.min((a - 1) * (b - 1));
        }
    }
    n
}

fn search_length(
    k: usize,
    n: usize,
    patterns: Option<&PatternSet>,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let words: Vec<&[usize]> = patterns
        .map(|s| s.iter().map(|p| p.values()).collect())
        .unwrap_or_default();
    let mut search = Search {
        n,
        k,
        patterns: words,
        prefix: Vec::with_capacity(n),
        used: vec![false; n + 1],
    };
    search.run(0, 0, visit)
}

/// Streams `I_k(s)` (all indecomposables when `patterns` is `None`) by
/// length, then lexicographically. Prefixes that are already decomposable,
/// already contain a pattern, or cannot reach `k` inversions are cut.
pub fn enumerate_ik(
    k: usize,
    patterns: Option<&PatternSet>,
    budget: &EnumerationBudget,
    visit: &mut dyn FnMut(&Permutation),
) -> Result<()> {
    budget.check_k(k)?;
    let mut meter = Meter::new(budget);
    for n in 1..=max_length(k, patterns) {
        search_length(k, n, patterns, &mut |w| {
            meter.tick()?;
            visit(&Permutation::from_vec_unchecked(w.to_vec()));
            Ok(())
        })?;
    }
    Ok(())
}

pub fn collect_ik(
    k: usize,
    patterns: Option<&PatternSet>,
    budget: &EnumerationBudget,
) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    enumerate_ik(k, patterns, budget, &mut |p| out.push(p.clone()))?;
    Ok(out)
}

/// `|I_k(s)|`, counting lengths in parallel.
pub fn count_ik(k: usize, patterns: Option<&PatternSet>, budget: &EnumerationBudget) -> Result<u64> {
    budget.check_k(k)?;
    let counts: Result<Vec<u64>> = (1..=max_length(k, patterns))
        .into_par_iter()
        .map(|n| {
            let mut count = 0u64;
            let mut meter = Meter::new(budget);
            search_length(k, n, patterns, &mut |_| {
                meter.tick()?;
                count += 1;
                Ok(())
            })?;
            Ok(count)
        })
        .collect();
    Ok(counts?.into_iter().sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Partitions,
    DistinctPartitions,
    EqualPartitions,
    Gorenstein,
    AlmostTriangular,
    Fountains,
    EvenFountains,
    Polyominoes,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Partitions,
        Family::DistinctPartitions,
        Family::EqualPartitions,
        Family::Gorenstein,
        Family::AlmostTriangular,
        Family::Fountains,
        Family::EvenFountains,
        Family::Polyominoes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Partitions => "partitions",
            Family::DistinctPartitions => "distinct_partitions",
            Family::EqualPartitions => "equal_partitions",
            Family::Gorenstein => "gorenstein",
            Family::AlmostTriangular => "almost_triangular",
            Family::Fountains => "fountains",
            Family::EvenFountains => "even_fountains",
            Family::Polyominoes => "polyominoes",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("object family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Object {
    Partition(Partition),
    Coins(CoinSet),
    Polyomino(ParallelogramPolyomino),
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Partition(p) => write!(f, "{p}"),
            Object::Coins(c) => write!(f, "{c}"),
            Object::Polyomino(q) => write!(f, "{q}"),
        }
    }
}

/// Partitions of `k` with parts at most `max`, largest parts first.
fn partitions_into(k: usize, max: usize, prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if k == 0 {
        visit(prefix);
        return;
    }
    for part in (1..=k.min(max)).rev() {
        prefix.push(part);
        partitions_into(k - part, part, prefix, visit);
        prefix.pop();
    }
}

pub fn partitions(k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_into(k, k, &mut Vec::new(), &mut |p| {
        out.push(Partition::new(p.to_vec()).expect("generated weakly decreasing"))
    });
    out
}

/// Fountains with `k` coins, built row by row from every bottom width.
pub fn fountains(k: usize) -> Vec<CoinSet> {
    coin_stacks(k, |_| true)
}

/// Fountains with `k` coins on odd rows and any number on even rows.
pub fn even_fountains(k: usize) -> Vec<CoinSet> {
    coin_stacks(k, |row| row % 2 == 1)
}

fn coin_stacks(k: usize, counted: fn(usize) -> bool) -> Vec<CoinSet> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(CoinSet::default());
        return out;
    }
    for width in 1..=k {
        let mut coins: BTreeSet<(usize, usize)> = (1..=width).map(|p| (1, p)).collect();
        let bottom: Vec<usize> = (1..=width).collect();
        stack_rows(&mut coins, 1, &bottom, k - width, counted, &mut out);
    }
    out
}

/// Places row `row + 1` on top of the positions `below`, trying every subset
/// of supported positions.
fn stack_rows(
    coins: &mut BTreeSet<(usize, usize)>,
    row: usize,
    below: &[usize],
    remaining: usize,
    counted: fn(usize) -> bool,
    out: &mut Vec<CoinSet>,
) {
    if remaining == 0 {
        out.push(CoinSet::from_set_unchecked(coins.clone()));
    }
    let supported: Vec<usize> = below
        .windows(2)
        .filter(|w| w[1] == w[0] + 1)
        .map(|w| w[0])
        .collect();
    if supported.is_empty() {
        return;
    }
    let next = row + 1;
    let cost = usize::from(counted(next));
    let mut chosen = Vec::new();
    choose_row(coins, next, &supported, 0, &mut chosen, remaining, cost, counted, out);
}

#[allow(clippy::too_many_arguments)]
fn choose_row(
    coins: &mut BTreeSet<(usize, usize)>,
    row: usize,
    supported: &[usize],
    idx: usize,
    chosen: &mut Vec<usize>,
    remaining: usize,
    cost: usize,
    counted: fn(usize) -> bool,
    out: &mut Vec<CoinSet>,
) {
    if idx == supported.len() {
        if !chosen.is_empty() {
            let spent = cost * chosen.len();
            stack_rows(coins, row, &chosen.clone(), remaining - spent, counted, out);
        }
        return;
    }
    choose_row(coins, row, supported, idx + 1, chosen, remaining, cost, counted, out);
    if cost * (chosen.len() + 1) <= remaining {
        let p = supported[idx];
        chosen.push(p);
        coins.insert((row, p));
        choose_row(coins, row, supported, idx + 1, chosen, remaining, cost, counted, out);
        coins.remove(&(row, p));
        chosen.pop();
    }
}

/// Parallelogram polyominoes with `k` cells, row by row.
pub fn polyominoes(k: usize) -> Vec<ParallelogramPolyomino> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(ParallelogramPolyomino::empty());
        return out;
    }
    let (mut lower, mut upper) = (Vec::new(), Vec::new());
    for r in 1..=k {
        lower.push(0);
        upper.push(r);
        grow_polyomino(&mut lower, &mut upper, k - r, &mut out);
        lower.pop();
        upper.pop();
    }
    out
}

fn grow_polyomino(
    lower: &mut Vec<usize>,
    upper: &mut Vec<usize>,
    remaining: usize,
    out: &mut Vec<ParallelogramPolyomino>,
) {
    if remaining == 0 {
        out.push(ParallelogramPolyomino::new(lower.clone(), upper.clone()).expect("valid rows"));
        return;
    }
    let (l0, r0) = (*lower.last().unwrap(), *upper.last().unwrap());
    for l in l0..r0 {
        let min_r = r0.max(l + 1);
        for r in min_r..=l + remaining {
            lower.push(l);
            upper.push(r);
            grow_polyomino(lower, upper, remaining - (r - l), out);
            lower.pop();
            upper.pop();
        }
    }
}

pub fn enumerate_objects(
    family: Family,
    k: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<Object>> {
    budget.check_k(k)?;
    let filtered = |pred: fn(&Partition) -> bool| {
        partitions(k)
            .into_iter()
            .filter(&pred)
            .map(Object::Partition)
            .collect::<Vec<_>>()
    };
    let items = match family {
        Family::Partitions => filtered(|_| true),
        Family::DistinctPartitions => filtered(Partition::has_distinct_parts),
        Family::EqualPartitions => filtered(Partition::has_equal_parts),
        Family::Gorenstein => filtered(Partition::is_gorenstein),
        Family::AlmostTriangular => filtered(Partition::is_almost_triangular),
        Family::Fountains => fountains(k).into_iter().map(Object::Coins).collect(),
        Family::EvenFountains => even_fountains(k).into_iter().map(Object::Coins).collect(),
        Family::Polyominoes => polyominoes(k).into_iter().map(Object::Polyomino).collect(),
    };
    if let Some(cap) = budget.max_items {
        if items.len() > cap {
            return Err(Error::BudgetExceeded(format!("more than {cap} items")));
        }
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(ps: &[Permutation]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    /// Coefficients of `Π_{i<n} (1 + x + … + x^i)`.
    fn mahonian_row(n: usize) -> Vec<u64> {
        let mut row = vec![1u64];
        for i in 0..n {
            let mut next = vec![0u64; row.len() + i];
            for (d, &c) in row.iter().enumerate() {
                for e in 0..=i {
                    next[d + e] += c;
                }
            }
            row = next;
        }
        row
    }

    #[test]
    fn inversion_generation_examples() {
        assert_eq!(words(&gen_by_inversions(1, 2).collect::<Vec<_>>()), ["21"]);
        assert_eq!(words(&gen_by_inversions(3, 3).collect::<Vec<_>>()), ["321"]);
        assert_eq!(words(&gen_by_inversions(2, 3).collect::<Vec<_>>()), ["231", "312"]);
        assert_eq!(gen_by_inversions(4, 3).count(), 0);
        assert_eq!(words(&gen_by_inversions(0, 0).collect::<Vec<_>>()), [""]);
    }

    #[test]
    fn inversion_generation_matches_mahonian_numbers() {
        for n in 0..=8 {
            let row = mahonian_row(n);
            for (k, &expected) in row.iter().enumerate() {
                let perms: Vec<Permutation> = gen_by_inversions(k, n).collect();
                assert_eq!(perms.len() as u64, expected, "n={n} k={k}");
                assert!(perms.windows(2).all(|w| w[0] < w[1]));
                assert!(perms.iter().all(|p| p.inversions() == k && p.len() == n));
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let b = EnumerationBudget::default();
        assert_eq!(words(&collect_ik(2, Some(&set("321")), &b).unwrap()), ["231", "312"]);
        assert_eq!(words(&collect_ik(3, Some(&set("123,231")), &b).unwrap()), ["321"]);
        for s in ["132", "231,321", "123,132,213,231"] {
            assert_eq!(words(&collect_ik(0, Some(&set(s)), &b).unwrap()), ["1"]);
        }
        assert_eq!(words(&collect_ik(0, None, &b).unwrap()), ["1"]);
    }

    #[test]
    fn enumeration_agrees_with_filtered_generation() {
        let b = EnumerationBudget::default();
        for s in [None, Some(set("321")), Some(set("132,213")), Some(set("1342,321"))] {
            for k in 0..=7 {
                let fast = collect_ik(k, s.as_ref(), &b).unwrap();
                let slow: Vec<Permutation> = (1..=k + 1)
                    .flat_map(|n| gen_by_inversions(k, n))
                    .filter(|p| p.is_indecomposable())
                    .filter(|p| s.as_ref().is_none_or(|s| p.avoids_all(s)))
                    .collect();
                assert_eq!(fast, slow, "k={k} s={s:?}");
                assert_eq!(count_ik(k, s.as_ref(), &b).unwrap(), slow.len() as u64);
            }
        }
    }

    #[test]
    fn budgets_abort() {
        let b = EnumerationBudget::with_kmax(3);
        assert!(matches!(collect_ik(4, None, &b), Err(Error::BudgetExceeded(_))));
        let b = EnumerationBudget {
            max_items: Some(2),
            ..EnumerationBudget::default()
        };
        assert!(matches!(collect_ik(5, None, &b), Err(Error::BudgetExceeded(_))));
        assert!(enumerate_objects(Family::Partitions, 6, &b).is_err());
    }

    #[test]
    fn object_examples() {
        let b = EnumerationBudget::default();
        assert_eq!(enumerate_objects(Family::Partitions, 4, &b).unwrap().len(), 5);
        let f = fountains(3);
        assert_eq!(f.len(), 2);
        assert!(f.contains(&CoinSet::new([(1, 1), (1, 2), (1, 3)]).unwrap()));
        assert!(f.contains(&CoinSet::new([(1, 1), (1, 2), (2, 1)]).unwrap()));
        let q = polyominoes(2);
        assert_eq!(q.len(), 2);
        assert!(q.contains(&"l: 0,0; r: 1,1".parse().unwrap()));
        assert!(q.contains(&"l: 0; r: 2".parse().unwrap()));
        for k in 0..=6 {
            for family in Family::ALL {
                let items = enumerate_objects(family, k, &b).unwrap();
                let distinct: BTreeSet<&Object> = items.iter().collect();
                assert_eq!(distinct.len(), items.len(), "{family} k={k}");
            }
        }
    }

    #[test]
    fn generated_coin_sets_are_fountains() {
        for k in 0..=7 {
            for c in fountains(k) {
                c.validate().unwrap();
                assert_eq!(c.len(), k);
            }
            for c in even_fountains(k) {
                c.validate().unwrap();
                assert_eq!(c.even_size(), k);
            }
        }
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("trees".parse::<Family>().is_err());
    }
}
