//! Fast counts of `I_k(s)`: recurrences, generating-function coefficients and
//! closed forms, with a dispatcher that falls back to the oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{self, EnumerationBudget};
use crate::perm::{InversionSymmetry, PatternSet, Permutation};

pub type BigCount = BigUint;

fn big(v: u64) -> BigCount {
    BigCount::from(v)
}

/// Least image of `s` under the four symmetries that preserve both the
/// inversion count and indecomposability, with the symmetry that produced it.
pub fn canonicalize_patterns(s: &PatternSet) -> (PatternSet, InversionSymmetry) {
    InversionSymmetry::ALL
        .iter()
        .map(|&g| (s.map(g), g))
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("four symmetries")
}

/// Memoized `a_{n,m}` for `0 ≤ n ≤ k`. Rows are stored for `1 ≤ m ≤ max(n, 1)`
/// since `a_{n,m} = a_{n,n}` once `m > n`.
#[derive(Clone, Debug)]
pub struct Table321 {
    rows: Vec<Vec<BigCount>>,
}

impl Table321 {
    pub fn build(k: usize) -> Self {
        let mut rows: Vec<Vec<BigCount>> = Vec::with_capacity(k + 1);
        rows.push(vec![BigCount::one()]);
        // tail[m] = Σ_{i=m}^{n} a_{n−i,i}, reused across rows
        let mut tail = vec![BigCount::zero(); k + 2];
        for n in 1..=k {
            tail[n + 1].set_zero();
            for m in (1..=n).rev() {
                let (lo, hi) = tail.split_at_mut(m + 1);
                lo[m].clone_from(&hi[0]);
                lo[m] += Self::lookup(&rows, n - m, m);
            }
            let mut row = Vec::with_capacity(n);
            let mut acc = BigCount::zero();
            for t in &tail[1..=n] {
                acc += t;
                row.push(acc.clone());
            }
            rows.push(row);
        }
        Table321 { rows }
    }

    fn lookup(rows: &[Vec<BigCount>], n: usize, m: usize) -> &BigCount {
        let row = &rows[n];
        &row[m.min(row.len()) - 1]
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `a_{n,m}` for `m ≥ 1`.
    pub fn get(&self, n: usize, m: usize) -> &BigCount {
        assert!(m >= 1, "m starts at 1");
        Self::lookup(&self.rows, n, m)
    }
}

pub fn count_321(k: usize) -> BigCount {
    Table321::build(k).get(k, 1).clone()
}

pub fn count_321_sequence(kmax: usize) -> Vec<BigCount> {
    let t = Table321::build(kmax);
    (0..=kmax).map(|k| t.get(k, 1).clone()).collect()
}

/// `c_{n,m,j}` for `n ≤ nmax`, `m ≤ nmax`, `j ≤ kmax`: subdiagonal sequences
/// of length `n` with sum `j` whose non-diagonal entries strictly decrease and
/// stay below `m`.
struct Table123 {
    nmax: usize,
    kmax: usize,
    cells: Vec<BigCount>,
}

impl Table123 {
    fn idx(&self, n: usize, m: usize, j: usize) -> usize {
        (n * (self.nmax + 1) + m) * (self.kmax + 1) + j
    }

    fn get(&self, n: usize, m: usize, j: usize) -> &BigCount {
        &self.cells[self.idx(n, m, j)]
    }

    fn build(kmax: usize) -> Self {
        let nmax = kmax + 2;
        let mut t = Table123 {
            nmax,
            kmax,
            cells: vec![BigCount::zero(); (nmax + 1) * (nmax + 1) * (kmax + 1)],
        };
        for m in 0..=nmax {
            let i = t.idx(0, m, 0);
            t.cells[i] = BigCount::one();
        }
        for n in 1..=nmax {
            for m in 0..=nmax {
                for j in 0..=kmax {
                    let mut v = BigCount::zero();
                    if j + 1 >= n {
                        v += t.get(n - 1, m, j + 1 - n);
                    }
                    let top = (n as isize - 2).min(m as isize - 1);
                    for i in 0..=top.max(-1) {
                        let i = i as usize;
                        if i <= j {
                            v += t.get(n - 1, i, j - i);
                        }
                    }
                    let at = t.idx(n, m, j);
                    t.cells[at] = v;
                }
            }
        }
        t
    }
}

/// Coefficients of `(Σ_{i≥0} x^{i(i+1)/2})²` up to `kmax`: sums of two
/// non-empty decreasing permutations.
fn decreasing_pairs(kmax: usize) -> Vec<BigCount> {
    let tri: Vec<usize> = (0..).map(|i| i * (i + 1) / 2).take_while(|&t| t <= kmax).collect();
    let mut out = vec![BigCount::zero(); kmax + 1];
    for &a in &tri {
        for &b in &tri {
            if a + b <= kmax {
                out[a + b] += 1u32;
            }
        }
    }
    out
}

/// All 123-avoiders with `k` inversions are counted by `c_{n,n,k}` over
/// `1 ≤ n ≤ k + 2` (two components at most, so `n ≤ k + 2`); the
/// decomposable ones are sums of two decreasing permutations.
pub fn count_123_sequence(kmax: usize) -> Vec<BigCount> {
    let t = Table123::build(kmax);
    let pairs = decreasing_pairs(kmax);
    (0..=kmax)
        .map(|k| {
            let mut total = BigCount::zero();
            for n in 1..=k + 2 {
                total += t.get(n, n, k);
            }
            total - &pairs[k]
        })
        .collect()
}

/// The same count with the length range as printed, `0 ≤ n ≤ k + 1`. It
/// misses the decomposable `n = k + 2` case and goes negative at `k = 1`.
pub fn count_123_printed_range(kmax: usize) -> Vec<BigInt> {
    let t = Table123::build(kmax);
    let pairs = decreasing_pairs(kmax);
    (0..=kmax)
        .map(|k| {
            let total: BigCount = (0..=k + 1).map(|n| t.get(n, n, k).clone()).sum();
            BigInt::from(total) - BigInt::from(pairs[k].clone())
        })
        .collect()
}

pub fn count_123(k: usize) -> BigCount {
    count_123_sequence(k).pop().expect("non-empty")
}

/// `f(n, d)`: Gorenstein partitions of `n` with diagonal constant `d + 1`.
pub struct TableGorenstein {
    f: Vec<Vec<BigCount>>,
}

impl TableGorenstein {
    pub fn build(nmax: usize) -> Self {
        let mut f = vec![vec![BigCount::zero(); nmax + 1]; nmax + 1];
        for d in 0..=nmax {
            f[0][d] = BigCount::one();
        }
        for n in 1..=nmax {
            for d in 1..=nmax {
                let mut v = BigCount::zero();
                // k(d + 1 − k) grows towards the middle, so only the two ends
                // of the range can stay within n.
                let mut lo = 1;
                while lo <= d && lo * (d + 1 - lo) <= n {
                    v += &f[n - lo * (d + 1 - lo)][d - lo];
                    lo += 1;
                }
                let mut hi = d;
                while hi >= lo && hi * (d + 1 - hi) <= n {
                    v += &f[n - hi * (d + 1 - hi)][d - hi];
                    hi -= 1;
                }
                f[n][d] = v;
            }
        }
        TableGorenstein { f }
    }

    pub fn get(&self, n: usize, d: usize) -> &BigCount {
        &self.f[n][d]
    }

    pub fn total(&self, n: usize) -> BigCount {
        self.f[n][..=n].iter().sum()
    }
}

pub fn count_gorenstein(n: usize) -> BigCount {
    TableGorenstein::build(n).total(n)
}

pub fn count_gorenstein_sequence(nmax: usize) -> Vec<BigCount> {
    let t = TableGorenstein::build(nmax);
    (0..=nmax).map(|n| t.total(n)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GfName {
    FountainRectangle,
    AlmostTriangular,
    DiagonalPascal,
    PascalZeroed,
    GorensteinCompositions,
}

impl GfName {
    pub const ALL: [GfName; 5] = [
        GfName::FountainRectangle,
        GfName::AlmostTriangular,
        GfName::DiagonalPascal,
        GfName::PascalZeroed,
        GfName::GorensteinCompositions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GfName::FountainRectangle => "fountain_rectangle",
            GfName::AlmostTriangular => "almost_triangular",
            GfName::DiagonalPascal => "diagonal_pascal",
            GfName::PascalZeroed => "pascal_zeroed",
            GfName::GorensteinCompositions => "gorenstein_compositions",
        }
    }
}

impl FromStr for GfName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GfName::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("generating function {s:?}")))
    }
}

fn binomial(n: usize, r: usize) -> BigCount {
    if r > n {
        return BigCount::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigCount::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Coefficients `0..=kmax` of the named series.
pub fn gf_coefficients(name: GfName, kmax: usize) -> Vec<BigCount> {
    let mut c = vec![BigCount::zero(); kmax + 1];
    let mut add = |e: usize, v: BigCount| {
        if e <= kmax {
            c[e] += v;
        }
    };
    match name {
        GfName::FountainRectangle => {
            for i in (1..).take_while(|&i| choose2(i) <= kmax) {
                add(choose2(i), BigCount::one());
            }
            for i in (1..).take_while(|&i| choose2(i + 1) < kmax) {
                for j in (1..).take_while(|&j| choose2(i + 1) + choose2(j + 1) <= kmax + choose2(i.min(j))) {
                    for l in 0..i.min(j) {
                        add(choose2(i + 1) + choose2(j + 1) - choose2(l + 1), BigCount::one());
                    }
                }
            }
        }
        GfName::AlmostTriangular => {
            // 1 + Σ_{r≥1} x^{r(r−1)/2} ((1 + x)^r − 1)
            add(0, BigCount::one());
            for r in (1..).take_while(|&r| choose2(r) < kmax) {
                for j in 1..=r {
                    add(choose2(r) + j, binomial(r, j));
                }
            }
        }
        GfName::DiagonalPascal => {
            // 1 + x + Σ_{d≥3} x^{1 + C(d−1, 2)} Σ_{n=2}^{d} C(n, d − n) x^{n−2}
            add(0, BigCount::one());
            add(1, BigCount::one());
            for d in (3..).take_while(|&d| choose2(d - 1) < kmax) {
                for n in 2..=d {
                    add(1 + choose2(d - 1) + n - 2, binomial(n, d - n));
                }
            }
        }
        GfName::PascalZeroed => {
            for i in (0..).take_while(|&i| i * (i + 1) / 2 <= kmax) {
                add(i * (i + 1) / 2, BigCount::one());
                add((i + 1) * (i + 4) / 2, BigCount::one());
            }
        }
        GfName::GorensteinCompositions => return gorenstein_composition_series(kmax),
    }
    c
}

/// `Σ_{s≥0} Σ_{μ ⊨ s, |μ| ≠ 1} x^{e₂(μ)}`: appending a term `m` to a
/// composition of `s` raises `e₂` by `s·m`.
fn gorenstein_composition_series(kmax: usize) -> Vec<BigCount> {
    let smax = kmax + 1;
    // by_sum[s][e][multi]: compositions of s with e₂ = e, multi = at least two terms.
    let mut by_sum = vec![vec![[BigCount::zero(), BigCount::zero()]; kmax + 1]; smax + 1];
    for s in 1..=smax {
        by_sum[s][0][0] = BigCount::one();
    }
    for s in 1..=smax {
        for e in 0..=kmax {
            for multi in 0..2 {
                if by_sum[s][e][multi].is_zero() {
                    continue;
                }
                let v = by_sum[s][e][multi].clone();
                for m in (1..).take_while(|&m| s + m <= smax && e + s * m <= kmax) {
                    by_sum[s + m][e + s * m][1] += &v;
                }
            }
        }
    }
    let mut out = vec![BigCount::zero(); kmax + 1];
    out[0] = BigCount::one();
    for row in &by_sum {
        for (e, cell) in row.iter().enumerate() {
            out[e] += &cell[1];
        }
    }
    out
}

/// The almost-triangular series with the row offset as printed,
/// `Σ_{n≥1} x^{(n−2)(n+1)/2} ((x + 1)^n − 1)`. Kept so the verify suite can
/// show where it departs from the counts.
pub fn almost_triangular_printed(kmax: usize) -> Vec<BigCount> {
    let mut c = vec![BigCount::zero(); kmax + 1];
    for n in 1usize.. {
        // (n − 2)(n + 1)/2 is −1 at n = 1; the x^{−1}·x term lands on x^0.
        let start = (n as isize - 2) * (n as isize + 1) / 2;
        if start > kmax as isize {
            break;
        }
        for j in 1..=n {
            let e = start + j as isize;
            if (0..=kmax as isize).contains(&e) {
                c[e as usize] += binomial(n, j);
            }
        }
    }
    c
}

/// Rows `r` and increments `s = k − r(r−1)/2` for an almost-triangular
/// partition of `k`. `r = 0` for `k = 0`.
fn triangular_row(k: usize) -> (usize, usize) {
    let r = (0..).find(|&r| r * (r + 1) / 2 >= k).expect("unbounded");
    (r, k - choose2(r))
}

/// Almost-triangular Gorenstein partitions: choose the raised runs of
/// `r − 1, …, 1, 0`, giving `C(s + 1, r − s)`.
pub fn diagonal_pascal_count(k: usize) -> BigCount {
    let (r, s) = triangular_row(k);
    if s > r {
        return BigCount::zero();
    }
    binomial(s + 1, r - s)
}

/// The same count with the binomial as printed, `C(s + 1, r − s + 1)`.
pub fn diagonal_pascal_printed(k: usize) -> BigCount {
    let (r, s) = triangular_row(k);
    if s > r + 1 {
        return BigCount::zero();
    }
    binomial(s + 1, r + 1 - s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedFormName {
    AllOnes,
    TriangularChar,
    PartitionCount,
    DistinctPartitionCount,
    DivisorCount,
    OddDivisorCount,
    AlmostTriangularCount,
    /// Superset of {231, 321}: `(k+1) 1 2 … k` is the only candidate.
    ShiftedWitness,
    /// Superset of {231, 312} or contains 12: only decreasing candidates.
    DecreasingWitness,
}

impl ClosedFormName {
    pub const ALL: [ClosedFormName; 9] = [
        ClosedFormName::AllOnes,
        ClosedFormName::TriangularChar,
        ClosedFormName::PartitionCount,
        ClosedFormName::DistinctPartitionCount,
        ClosedFormName::DivisorCount,
        ClosedFormName::OddDivisorCount,
        ClosedFormName::AlmostTriangularCount,
        ClosedFormName::ShiftedWitness,
        ClosedFormName::DecreasingWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormName::AllOnes => "all_ones",
            ClosedFormName::TriangularChar => "triangular_char",
            ClosedFormName::PartitionCount => "partition_count",
            ClosedFormName::DistinctPartitionCount => "distinct_partition_count",
            ClosedFormName::DivisorCount => "divisor_count",
            ClosedFormName::OddDivisorCount => "odd_divisor_count",
            ClosedFormName::AlmostTriangularCount => "almost_triangular_count",
            ClosedFormName::ShiftedWitness => "shifted_witness",
            ClosedFormName::DecreasingWitness => "decreasing_witness",
        }
    }
}

impl FromStr for ClosedFormName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedFormName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("closed form {s:?}")))
    }
}

/// Partition numbers by Euler's pentagonal recurrence.
pub fn partition_numbers(kmax: usize) -> Vec<BigCount> {
    let mut p: Vec<BigCount> = Vec::with_capacity(kmax + 1);
    p.push(BigCount::one());
    for n in 1..=kmax {
        let (mut plus, mut minus) = (BigCount::zero(), BigCount::zero());
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let mut term = p[n - g1].clone();
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                term += &p[n - g2];
            }
            if j % 2 == 1 {
                plus += term;
            } else {
                minus += term;
            }
        }
        p.push(plus - minus);
    }
    p
}

/// Coefficients of `Π_{i≥1} (1 + x^i)`.
pub fn distinct_partition_numbers(kmax: usize) -> Vec<BigCount> {
    let mut q = vec![BigCount::zero(); kmax + 1];
    q[0] = BigCount::one();
    for i in 1..=kmax {
        for n in (i..=kmax).rev() {
            let v = q[n - i].clone();
            q[n] += v;
        }
    }
    q
}

fn divisors(k: usize) -> impl Iterator<Item = usize> {
    (1..=k).filter(move |d| k.is_multiple_of(*d))
}

fn is_triangular(k: usize) -> bool {
    let (r, s) = triangular_row(k);
    s == r || k == 0
}

pub fn shifted_witness(k: usize) -> Permutation {
    let mut w = vec![k + 1];
    w.extend(1..=k);
    Permutation::new(w).expect("valid")
}

/// Decreasing permutation with `k` inversions, if `k` is triangular.
pub fn decreasing_witness(k: usize) -> Option<Permutation> {
    is_triangular(k).then(|| Permutation::decreasing(triangular_row(k).0 + 1))
}

/// Closed forms evaluated at `k`. The witness forms need the pattern set they
/// are checked against and give 1 exactly when the candidate avoids it.
pub fn closed_form(name: ClosedFormName, k: usize) -> BigCount {
    closed_form_for(name, k, None)
}

fn closed_form_for(name: ClosedFormName, k: usize, s: Option<&PatternSet>) -> BigCount {
    let flag = |b: bool| if b { BigCount::one() } else { BigCount::zero() };
    match name {
        ClosedFormName::AllOnes => BigCount::one(),
        ClosedFormName::TriangularChar => flag(is_triangular(k)),
        ClosedFormName::PartitionCount => partition_numbers(k).pop().expect("non-empty"),
        ClosedFormName::DistinctPartitionCount => {
            distinct_partition_numbers(k).pop().expect("non-empty")
        }
        ClosedFormName::DivisorCount if k == 0 => BigCount::one(),
        ClosedFormName::DivisorCount => big(divisors(k).count() as u64),
        ClosedFormName::OddDivisorCount if k == 0 => BigCount::one(),
        ClosedFormName::OddDivisorCount => big(divisors(k).filter(|d| d % 2 == 1).count() as u64),
        ClosedFormName::AlmostTriangularCount if k == 0 => BigCount::one(),
        ClosedFormName::AlmostTriangularCount => {
            let (r, s) = triangular_row(k);
            binomial(r, s)
        }
        ClosedFormName::ShiftedWitness => {
            let w = shifted_witness(k);
            flag(s.is_none_or(|s| w.avoids_all(s)))
        }
        ClosedFormName::DecreasingWitness => flag(
            decreasing_witness(k).is_some_and(|w| s.is_none_or(|s| w.avoids_all(s))),
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CountingMethod {
    Oracle,
    Recurrence321,
    Recurrence123,
    RecurrenceGorenstein,
    Gf(GfName),
    ClosedForm(ClosedFormName),
}

impl fmt::Display for CountingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountingMethod::Oracle => f.write_str("oracle"),
            CountingMethod::Recurrence321 => f.write_str("recurrence_321"),
            CountingMethod::Recurrence123 => f.write_str("recurrence_123"),
            CountingMethod::RecurrenceGorenstein => f.write_str("recurrence_gorenstein"),
            CountingMethod::Gf(g) => write!(f, "gf:{}", g.name()),
            CountingMethod::ClosedForm(c) => write!(f, "closed_form:{}", c.name()),
        }
    }
}

impl FromStr for CountingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "oracle" => CountingMethod::Oracle,
            "recurrence_321" => CountingMethod::Recurrence321,
            "recurrence_123" => CountingMethod::Recurrence123,
            "recurrence_gorenstein" => CountingMethod::RecurrenceGorenstein,
            _ => {
                if let Some(g) = s.strip_prefix("gf:") {
                    CountingMethod::Gf(g.parse()?)
                } else if let Some(c) = s.strip_prefix("closed_form:") {
                    CountingMethod::ClosedForm(c.parse()?)
                } else {
                    return Err(Error::UnknownName(format!("counting method {s:?}")));
                }
            }
        })
    }
}

impl Serialize for CountingMethod {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

static DISPATCH: Lazy<BTreeMap<PatternSet, CountingMethod>> = Lazy::new(|| {
    use ClosedFormName as C;
    use CountingMethod as M;
    let table: [(&str, CountingMethod); 16] = [
        ("12", M::ClosedForm(C::TriangularChar)),
        ("123", M::Recurrence123),
        ("132", M::ClosedForm(C::PartitionCount)),
        ("321", M::Recurrence321),
        ("123,231", M::Gf(GfName::FountainRectangle)),
        ("123,132", M::ClosedForm(C::AlmostTriangularCount)),
        ("132,213", M::RecurrenceGorenstein),
        ("132,231", M::ClosedForm(C::DistinctPartitionCount)),
        ("132,321", M::ClosedForm(C::DivisorCount)),
        ("231,312", M::ClosedForm(C::TriangularChar)),
        ("231,321", M::ClosedForm(C::AllOnes)),
        ("123,132,213", M::Gf(GfName::DiagonalPascal)),
        ("123,132,231", M::ClosedForm(C::AllOnes)),
        ("132,213,231", M::ClosedForm(C::OddDivisorCount)),
        ("132,213,321", M::ClosedForm(C::DivisorCount)),
        ("123,132,213,231", M::Gf(GfName::PascalZeroed)),
    ];
    table
        .into_iter()
        .map(|(s, m)| (canonicalize_patterns(&s.parse().expect("literal set")).0, m))
        .collect()
});

fn superset_of_image(s: &PatternSet, words: &str) -> bool {
    let base: PatternSet = words.parse().expect("literal set");
    InversionSymmetry::ALL
        .iter()
        .any(|&g| s.is_superset_of(&base.map(g)))
}

/// Fastest method for `s`: a table entry for its canonical reduced form,
/// then the witness rules for the trivial supersets, then the oracle.
pub fn select_method(s: &PatternSet) -> CountingMethod {
    let reduced = s.reduced();
    let (canonical, _) = canonicalize_patterns(&reduced);
    if let Some(&m) = DISPATCH.get(&canonical) {
        return m;
    }
    if superset_of_image(&reduced, "231,321") {
        return CountingMethod::ClosedForm(ClosedFormName::ShiftedWitness);
    }
    if superset_of_image(&reduced, "231,312") || superset_of_image(&reduced, "12") {
        return CountingMethod::ClosedForm(ClosedFormName::DecreasingWitness);
    }
    CountingMethod::Oracle
}

/// Witness forms are checked against the image of `s` that contains the
/// base pair, so the candidate is the right one for that image.
fn witness_image(s: &PatternSet, name: ClosedFormName) -> PatternSet {
    let bases: &[&str] = match name {
        ClosedFormName::ShiftedWitness => &["231,321"],
        _ => &["231,312", "12"],
    };
    for g in InversionSymmetry::ALL {
        let image = s.map(g);
        for b in bases {
            if image.is_superset_of(&b.parse().expect("literal set")) {
                return image;
            }
        }
    }
    s.clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    #[serde(serialize_with = "crate::counting::serialize_patterns")]
    pub patterns: PatternSet,
    pub k: usize,
    #[serde(serialize_with = "crate::counting::serialize_count")]
    pub count: BigCount,
    pub method: CountingMethod,
}

pub(crate) fn serialize_patterns<S: serde::Serializer>(
    p: &PatternSet,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// Counts go out as decimal strings so JSON readers keep every digit.
pub(crate) fn serialize_count<S: serde::Serializer>(
    c: &BigCount,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(c)
}

fn oracle_count(s: &PatternSet, k: usize) -> BigCount {
    let budget = EnumerationBudget::with_kmax(usize::MAX);
    big(oracle::count_ik(k, Some(s), &budget).expect("unbounded budget"))
}

/// Values `0..=kmax` by `method`. Recurrences and series are built once for
/// the whole range.
pub fn count_sequence_with(s: &PatternSet, kmax: usize, method: CountingMethod) -> Vec<BigCount> {
    match method {
        CountingMethod::Oracle => (0..=kmax)
            .into_par_iter()
            .map(|k| oracle_count(s, k))
            .collect(),
        CountingMethod::Recurrence321 => count_321_sequence(kmax),
        CountingMethod::Recurrence123 => count_123_sequence(kmax),
        CountingMethod::RecurrenceGorenstein => count_gorenstein_sequence(kmax),
        CountingMethod::Gf(g) => gf_coefficients(g, kmax),
        CountingMethod::ClosedForm(ClosedFormName::PartitionCount) => partition_numbers(kmax),
        CountingMethod::ClosedForm(ClosedFormName::DistinctPartitionCount) => {
            distinct_partition_numbers(kmax)
        }
        CountingMethod::ClosedForm(c) => {
            let image = witness_image(s, c);
            (0..=kmax).map(|k| closed_form_for(c, k, Some(&image))).collect()
        }
    }
}

pub fn count_with(s: &PatternSet, k: usize, method: CountingMethod) -> BigCount {
    match method {
        CountingMethod::Oracle => oracle_count(s, k),
        _ => count_sequence_with(s, k, method).pop().expect("non-empty"),
    }
}

/// `|I_k(s)|` by the fastest applicable method.
pub fn count(s: &PatternSet, k: usize) -> BigCount {
    count_with(s, k, select_method(s))
}

pub fn count_detailed(s: &PatternSet, k: usize) -> CountResult {
    let method = select_method(s);
    CountResult {
        patterns: s.clone(),
        k,
        count: count_with(s, k, method),
        method,
    }
}

pub fn count_range(s: &PatternSet, kmax: usize, method: CountingMethod) -> Vec<CountResult> {
    count_sequence_with(s, kmax, method)
        .into_iter()
        .enumerate()
        .map(|(k, count)| CountResult {
            patterns: s.clone(),
            k,
            count,
            method,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conjecture {
    /// `|I_k(132, 4321)|` against partitions with no part strictly between
    /// the smallest and the largest.
    C132_4321,
    /// `|I_k(321, 1342)|` against `k(k−1)/2 + 1`. The formula is printed
    /// as `k(k+1)/2 + 1`, which already fails at `k = 1` where only `21`
    /// qualifies; [`Conjecture::printed`] keeps that form.
    C321_1342,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::C132_4321 => "132-4321",
            Conjecture::C321_1342 => "321-1342",
        }
    }

    pub fn patterns(self) -> PatternSet {
        match self {
            Conjecture::C132_4321 => "132,4321".parse().expect("literal set"),
            Conjecture::C321_1342 => "321,1342".parse().expect("literal set"),
        }
    }

    pub fn predicted(self, k: usize) -> BigCount {
        match self {
            Conjecture::C132_4321 => big(
                oracle::partitions(k)
                    .iter()
                    .filter(|p| p.has_no_intermediate_parts())
                    .count() as u64,
            ),
            Conjecture::C321_1342 => big((k * k.saturating_sub(1) / 2 + 1) as u64),
        }
    }

    /// The prediction exactly as stated in the source.
    pub fn printed(self, k: usize) -> BigCount {
        match self {
            Conjecture::C132_4321 => self.predicted(k),
            Conjecture::C321_1342 => big((k * (k + 1) / 2 + 1) as u64),
        }
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches('c').replace('_', "-").as_str() {
            "132-4321" => Ok(Conjecture::C132_4321),
            "321-1342" => Ok(Conjecture::C321_1342),
            _ => Err(Error::UnknownName(format!("conjecture {s:?}"))),
        }
    }
}

pub const CONJECTURE_KMAX: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub k: usize,
    #[serde(serialize_with = "crate::counting::serialize_count")]
    pub oracle: BigCount,
    #[serde(serialize_with = "crate::counting::serialize_count")]
    pub predicted: BigCount,
    pub matches: bool,
    #[serde(serialize_with = "crate::counting::serialize_count")]
    pub printed: BigCount,
    pub printed_matches: bool,
}

/// Oracle count against the conjectured formula for `k ≤ kmax`. Reports
/// agreement per `k`; nothing is asserted.
pub fn conjecture_check(c: Conjecture, kmax: usize) -> Result<Vec<ConjectureRow>> {
    if kmax > CONJECTURE_KMAX {
        return Err(Error::BudgetExceeded(format!(
            "conjecture checks run up to k = {CONJECTURE_KMAX}"
        )));
    }
    let s = c.patterns();
    let budget = EnumerationBudget::with_kmax(CONJECTURE_KMAX);
    (0..=kmax)
        .map(|k| {
            let oracle = big(oracle::count_ik(k, Some(&s), &budget)?);
            let predicted = c.predicted(k);
            let printed = c.printed(k);
            Ok(ConjectureRow {
                k,
                matches: oracle == predicted,
                printed_matches: oracle == printed,
                oracle,
                predicted,
                printed,
            })
        })
        .collect()
}
