//! Constructive correspondences between pattern classes of indecomposable
//! permutations and other objects, each with its inverse.
//!
//! | class         | object                                   |
//! |---------------|------------------------------------------|
//! | `I_k(132)`    | partitions of `k`                        |
//! | `I_k(231)`    | fountains of `k` coins                   |
//! | `I_k(321)`    | parallelogram polyominoes with `k` cells |
//! | `I_k(321)`    | even fountains of size `k` (via tables)  |
//! | `I_k(132,213)`| compositions with at least two terms     |
//!
//! Every entry point checks its domain (indecomposable, avoids the pattern)
//! and returns [`Error::OutsideDomain`] otherwise.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::objects::{CoinSet, Composition, Fountain, ParallelogramPolyomino, Partition};
use crate::perm::{Permutation, SubdiagonalSequence};

fn require_class(p: &Permutation, pattern: &str) -> Result<()> {
    if !p.is_indecomposable() {
        return Err(Error::OutsideDomain(format!("{p} is decomposable")));
    }
    let pattern: Permutation = pattern.parse().expect("literal pattern");
    if p.contains(&pattern) {
        return Err(Error::OutsideDomain(format!("{p} contains {pattern}")));
    }
    Ok(())
}

/// Inversion table of a 132-avoider with trailing zeros dropped.
pub fn p132_to_partition(p: &Permutation) -> Result<Partition> {
    require_class(p, "132")?;
    let table = p.inversion_table();
    Partition::new(table.trimmed().to_vec())
}

/// Pads the partition with the fewest zeros that make it an inversion table.
pub fn partition_to_p132(q: &Partition) -> Permutation {
    if q.is_empty() {
        return Permutation::identity(1);
    }
    let table = SubdiagonalSequence::minimally_padded(q.parts());
    Permutation::from_inversion_table(&table)
}

/// Reverse, take the inversion table, and read it as the number of coins
/// missing from each diagonal of the full fountain with base `n − 1`.
pub fn p231_to_fountain(p: &Permutation) -> Result<Fountain> {
    require_class(p, "231")?;
    let n = p.len();
    let table = p.reverse().inversion_table();
    let entries = table.entries();
    debug_assert_eq!(entries[n - 1], 0);
    // Indecomposability of p keeps every entry strictly below n − i.
    let fountain = Fountain::new(n - 1, entries[..n - 1].to_vec())
        .expect("indecomposable 231-avoider gives a valid fountain");
    Ok(fountain)
}

pub fn fountain_to_p231(f: &Fountain) -> Permutation {
    let mut entries = f.missing().to_vec();
    entries.push(0);
    let table = SubdiagonalSequence::new(entries).expect("missing_i ≤ b − i");
    Permutation::from_inversion_table(&table).reverse()
}

/// Left-to-right maxima at positions `i_j` with values `v_j` give
/// `ℓ_j = i_j − j` and `r_j = v_j − j`. The singleton maps to the empty
/// polyomino.
pub fn p321_to_polyomino(p: &Permutation) -> Result<ParallelogramPolyomino> {
    require_class(p, "321")?;
    if p.len() == 1 {
        return Ok(ParallelogramPolyomino::empty());
    }
    let maxima = p.left_to_right_maxima();
    let lower = maxima
        .iter()
        .enumerate()
        .map(|(j, &pos)| pos - (j + 1))
        .collect();
    let upper = maxima
        .iter()
        .enumerate()
        .map(|(j, &pos)| p.values()[pos - 1] - (j + 1))
        .collect();
    ParallelogramPolyomino::new(lower, upper)
}

pub fn polyomino_to_p321(q: &ParallelogramPolyomino) -> Permutation {
    let s = q.rows();
    if s == 0 {
        return Permutation::identity(1);
    }
    let n = q.upper()[s - 1] + s;
    let mut values = vec![0; n];
    let mut used = vec![false; n + 1];
    for j in 0..s {
        let pos = q.lower()[j] + j + 1;
        let val = q.upper()[j] + j + 1;
        values[pos - 1] = val;
        used[val] = true;
    }
    let mut short = (1..=n).filter(|&v| !used[v]);
    for slot in values.iter_mut().filter(|v| **v == 0) {
        *slot = short.next().expect("as many short values as free slots");
    }
    Permutation::from_vec_unchecked(values)
}

/// Table-side characterization of `∪_k I_k(321)`, read up to trailing zeros:
/// the first entry is non-zero, a non-zero entry `x` is followed by at most
/// `x − 1` zeros before the next non-zero entry, and across `z` zeros the next
/// non-zero entry is at least `x − z`. Checking consecutive non-zero entries
/// suffices since the bound chains. All-zero input is the table of `1`.
pub fn is_valid_321_table(t: &[usize]) -> bool {
    let end = t.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
    let t = &t[..end];
    if t.is_empty() {
        return true;
    }
    if t[0] == 0 {
        return false;
    }
    let nonzero: Vec<usize> = (0..t.len()).filter(|&i| t[i] != 0).collect();
    nonzero.windows(2).all(|w| {
        let (i, j) = (w[0], w[1]);
        let zeros = j - i - 1;
        zeros < t[i] && t[j] + zeros >= t[i]
    })
}

/// Direct check: pad minimally, build the permutation, test membership.
pub fn is_321_table_by_membership(t: &[usize]) -> bool {
    let mut table = SubdiagonalSequence::normalized(t);
    if table.is_empty() {
        table = SubdiagonalSequence::minimally_padded(&[0]);
    }
    let p = Permutation::from_inversion_table(&table);
    p.is_indecomposable() && p.avoids(&Permutation::decreasing(3))
}

/// Coin-path map from even fountains to inversion tables of `I_k(321)`.
///
/// Coins on odd rows are red, on even rows black. For each bottom coin from
/// left to right (a bottom coin already taken by an earlier path records 0),
/// walk and remove: from red go up-right or stop; from black go up-right,
/// else down-right, else stop. Record the red coins removed, then append one
/// zero. The empty fountain maps to `(0)`, the table of `1`.
pub fn even_fountain_to_table(c: &CoinSet) -> Result<SubdiagonalSequence> {
    c.validate()?;
    let mut coins = c.coins().clone();
    let width = c.bottom_width();
    let mut out = Vec::with_capacity(width + 1);
    for start in 1..=width {
        if !coins.contains(&(1, start)) {
            out.push(0);
            continue;
        }
        let (mut row, mut pos) = (1, start);
        let mut reds = 0;
        loop {
            coins.remove(&(row, pos));
            if row % 2 == 1 {
                reds += 1;
                if coins.contains(&(row + 1, pos)) {
                    row += 1;
                } else {
                    break;
                }
            } else if coins.contains(&(row + 1, pos)) {
                row += 1;
            } else if coins.contains(&(row - 1, pos + 1)) {
                row -= 1;
                pos += 1;
            } else {
                break;
            }
        }
        out.push(reds);
    }
    out.push(0);
    SubdiagonalSequence::new(out)
}

/// Inverse of [`even_fountain_to_table`].
///
/// The table (read up to trailing zeros) splits into blocks: a non-zero `x`
/// followed by `j` zeros. Blocks are processed right to left. Each one shifts
/// the fountain built so far `j + 1` places right and prepends a path from
/// the new first bottom coin: red, then black up-right, then the next red
/// goes up-right exactly when the coin below-right of that slot exists,
/// otherwise down-right, until `x` red coins are placed. The result is
/// checked against the forward map.
pub fn table_to_even_fountain(t: &[usize]) -> Result<CoinSet> {
    let table = SubdiagonalSequence::normalized(t);
    let entries = table.entries();
    if entries.iter().all(|&b| b == 0) {
        return Ok(CoinSet::default());
    }
    if !is_valid_321_table(entries) {
        return Err(Error::OutsideDomain(format!(
            "{table} is not the inversion table of an indecomposable 321-avoider"
        )));
    }
    let per_coin = &entries[..entries.len() - 1];
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for &b in per_coin {
        match (b, blocks.last_mut()) {
            (0, Some(last)) => last.1 += 1,
            (x, _) => blocks.push((x, 0)),
        }
    }

    let mut fountain: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(reds, zeros) in blocks.iter().rev() {
        let shift = zeros + 1;
        let old: BTreeSet<(usize, usize)> =
            fountain.iter().map(|&(r, p)| (r, p + shift)).collect();
        let mut coins = old.clone();
        let (mut row, mut pos) = (1, 1);
        let mut placed = 0;
        loop {
            if !coins.insert((row, pos)) {
                return Err(Error::OutsideDomain(format!(
                    "path for entry {reds} runs into an existing coin at ({row},{pos})"
                )));
            }
            placed += 1;
            if placed == reds {
                break;
            }
            coins.insert((row + 1, pos));
            if old.contains(&(row + 1, pos + 1)) {
                row += 2;
            } else {
                pos += 1;
            }
        }
        fountain = coins;
    }

    let result = CoinSet::from_set_unchecked(fountain);
    result.validate().map_err(|e| {
        Error::OutsideDomain(format!("reconstructed coins do not form a fountain: {e}"))
    })?;
    let back = even_fountain_to_table(&result)?;
    if back != table {
        return Err(Error::OutsideDomain(format!(
            "reconstruction of {table} maps back to {back}"
        )));
    }
    Ok(result)
}

/// Gorenstein partition with diagonal constant `s = Σμ` whose runs of equal
/// parts end at the partial sums of `μ`. The last run has value zero.
pub fn gorenstein_from_composition(m: &Composition) -> Result<Partition> {
    if m.len() < 2 {
        return Err(Error::InvalidComposition(
            "need at least two terms".into(),
        ));
    }
    let s = m.total();
    let mut parts = Vec::new();
    let mut boundary = 0;
    for &term in &m.terms()[..m.len() - 1] {
        boundary += term;
        parts.extend(std::iter::repeat_n(s - boundary, term));
    }
    Partition::new(parts)
}

/// Inverse of [`gorenstein_from_composition`]: the gaps between consecutive
/// descent positions, closed off by the diagonal constant.
pub fn composition_from_gorenstein(p: &Partition) -> Result<Composition> {
    let s = p.diagonal_constant().ok_or_else(|| {
        Error::OutsideDomain(format!("{p} is empty or not Gorenstein"))
    })?;
    let r = p.len();
    let mut terms = Vec::new();
    let mut prev = 0;
    for i in 1..=r {
        let next = if i < r { p.parts()[i] } else { 0 };
        if p.parts()[i - 1] != next {
            terms.push(i - prev);
            prev = i;
        }
    }
    terms.push(s - prev);
    Composition::new(terms)
}

/// Starts from `0, 1, …, r − 1` and adds one to each chosen position.
pub fn almost_triangular_from_choice(r: usize, chosen: &BTreeSet<usize>) -> Result<Partition> {
    if chosen.is_empty() {
        return Err(Error::InvalidPartition(
            "at least one entry must be raised".into(),
        ));
    }
    if let Some(&bad) = chosen.iter().find(|&&i| i == 0 || i > r) {
        return Err(Error::InvalidPartition(format!(
            "position {bad} outside 1..={r}"
        )));
    }
    let parts: Vec<usize> = (1..=r)
        .rev()
        .map(|i| i - 1 + usize::from(chosen.contains(&i)))
        .filter(|&v| v > 0)
        .collect();
    Partition::new(parts)
}
