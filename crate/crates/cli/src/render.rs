//! ASCII and SVG drawings of coin fountains, polyominoes and Ferrers diagrams. ASCII uses two
//! characters per coin or cell.

use std::collections::BTreeSet;
use std::fmt::Write;

use clap::ValueEnum;
use invperm::{CoinSet, Fountain, ParallelogramPolyomino, Partition, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectKind {
    Fountain,
    Polyomino,
    Ferrers,
}

const UNIT: f64 = 20.0;
const MARGIN: f64 = 10.0;

pub fn render(kind: ObjectKind, input: &str, even: bool, svg: bool) -> Result<String> {
    Ok(match kind {
        ObjectKind::Fountain => {
            let (coins, ghosts) = parse_fountain(input)?;
            if svg {
                fountain_svg(&coins, &ghosts, even)
            } else {
                fountain_ascii(&coins, &ghosts, even)
            }
        }
        ObjectKind::Polyomino => {
            let q: ParallelogramPolyomino = input.parse()?;
            if svg {
                polyomino_svg(&q)
            } else {
                polyomino_ascii(&q)
            }
        }
        ObjectKind::Ferrers => {
            let p: Partition = input.parse()?;
            if svg {
                ferrers_svg(&p)
            } else {
                ferrers_ascii(&p)
            }
        }
    })
}

/// Coin sets are drawn as given. A fountain in `b; missing` form also shows
/// the removed coins of the full triangle.
fn parse_fountain(input: &str) -> Result<(CoinSet, BTreeSet<(usize, usize)>)> {
    if input.contains(';') {
        let f: Fountain = input.parse()?;
        let coins = f.to_coinset();
        let b = f.base();
        let ghosts = (1..=b)
            .flat_map(|r| (1..=b + 1 - r).map(move |p| (r, p)))
            .filter(|&(r, p)| !coins.contains(r, p))
            .collect();
        Ok((coins, ghosts))
    } else {
        Ok((input.parse()?, BTreeSet::new()))
    }
}

/// Column of coin `(r, p)` in half-coin units.
fn coin_column(r: usize, p: usize) -> usize {
    2 * (p - 1) + (r - 1)
}

fn counted(r: usize) -> bool {
    r % 2 == 1
}

fn trimmed_lines(grid: Vec<Vec<u8>>) -> String {
    let mut s = String::new();
    for row in grid {
        let line = String::from_utf8(row).expect("ascii");
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s
}

fn fountain_ascii(coins: &CoinSet, ghosts: &BTreeSet<(usize, usize)>, even: bool) -> String {
    let all: Vec<(usize, usize, &[u8; 2])> = coins
        .iter()
        .map(|&(r, p)| {
            let glyph = if even && !counted(r) { b"<>" } else { b"()" };
            (r, p, glyph)
        })
        .chain(ghosts.iter().map(|&(r, p)| (r, p, b"..")))
        .collect();
    let height = all.iter().map(|c| c.0).max().unwrap_or(0);
    let width = all.iter().map(|&(r, p, _)| coin_column(r, p) + 2).max().unwrap_or(0);
    let mut grid = vec![vec![b' '; width]; height];
    for (r, p, glyph) in all {
        let x = coin_column(r, p);
        grid[height - r][x..x + 2].copy_from_slice(glyph);
    }
    if grid.is_empty() {
        return "(empty)\n".into();
    }
    trimmed_lines(grid)
}

fn svg_open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">\n"
    )
}

fn fountain_svg(coins: &CoinSet, ghosts: &BTreeSet<(usize, usize)>, even: bool) -> String {
    let radius = UNIT / 2.0;
    let rise = UNIT * 3f64.sqrt() / 2.0;
    let height = coins.iter().chain(ghosts).map(|c| c.0).max().unwrap_or(0);
    let columns = coins
        .iter()
        .chain(ghosts)
        .map(|&(r, p)| coin_column(r, p) + 2)
        .max()
        .unwrap_or(0);
    let w = 2.0 * MARGIN + columns as f64 * radius;
    let h = 2.0 * MARGIN + UNIT + height.saturating_sub(1) as f64 * rise;
    let mut s = svg_open(w, h);
    let circle = |s: &mut String, r: usize, p: usize, style: &str| {
        let cx = MARGIN + radius + coin_column(r, p) as f64 * radius;
        let cy = MARGIN + radius + (height - r) as f64 * rise;
        writeln!(s, "  <circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"{:.1}\" {style}/>", radius - 1.0).unwrap();
    };
    const SOLID: &str = "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
    const DASHED: &str = "fill=\"none\" stroke=\"red\" stroke-width=\"2\" stroke-dasharray=\"4 3\"";
    for &(r, p) in coins.iter() {
        circle(&mut s, r, p, if even && counted(r) { DASHED } else { SOLID });
    }
    for &(r, p) in ghosts {
        circle(&mut s, r, p, DASHED);
    }
    s.push_str("</svg>\n");
    s
}

fn polyomino_ascii(q: &ParallelogramPolyomino) -> String {
    let width = q.upper().iter().copied().max().unwrap_or(0);
    let rows = q.rows();
    if rows == 0 {
        return "(empty)\n".into();
    }
    let mut grid = vec![vec![b' '; 2 * width]; rows];
    for i in 0..rows {
        for x in q.lower()[i]..q.upper()[i] {
            grid[rows - 1 - i][2 * x..2 * x + 2].copy_from_slice(b"[]");
        }
    }
    trimmed_lines(grid)
}

fn polyomino_svg(q: &ParallelogramPolyomino) -> String {
    let width = q.upper().iter().copied().max().unwrap_or(0);
    let rows = q.rows();
    let mut s = svg_open(2.0 * MARGIN + width as f64 * UNIT, 2.0 * MARGIN + rows as f64 * UNIT);
    for i in 0..rows {
        for x in q.lower()[i]..q.upper()[i] {
            let px = MARGIN + x as f64 * UNIT;
            let py = MARGIN + (rows - 1 - i) as f64 * UNIT;
            writeln!(
                s,
                "  <rect x=\"{px:.1}\" y=\"{py:.1}\" width=\"{UNIT:.1}\" height=\"{UNIT:.1}\" fill=\"lightgray\" stroke=\"black\"/>"
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

fn ferrers_ascii(p: &Partition) -> String {
    if p.is_empty() {
        return "(empty)\n".into();
    }
    p.parts().iter().map(|&part| "()".repeat(part) + "\n").collect()
}

/// Ferrers diagram turned 45 degrees so the corner cell is on top, each cell
/// joined to its right and lower neighbours.
fn ferrers_svg(p: &Partition) -> String {
    let rows = p.len();
    let cols = p.parts().first().copied().unwrap_or(0);
    let step = UNIT * 0.75;
    let span = (rows + cols).saturating_sub(2) as f64 * step;
    let w = 2.0 * MARGIN + UNIT + span;
    let mut s = svg_open(w, w);
    let origin = MARGIN + UNIT / 2.0 + rows.saturating_sub(1) as f64 * step;
    let at = |c: usize, i: usize| {
        (
            origin + (c as f64 - i as f64) * step,
            MARGIN + UNIT / 2.0 + (c + i) as f64 * step,
        )
    };
    for (i, &part) in p.parts().iter().enumerate() {
        for c in 0..part {
            let (x, y) = at(c, i);
            if c + 1 < part {
                let (x2, y2) = at(c + 1, i);
                writeln!(s, "  <line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"black\" stroke-width=\"1.5\"/>").unwrap();
            }
            if i + 1 < rows && c < p.parts()[i + 1] {
                let (x2, y2) = at(c, i + 1);
                writeln!(s, "  <line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"black\" stroke-width=\"1.5\"/>").unwrap();
            }
        }
    }
    for (i, &part) in p.parts().iter().enumerate() {
        for c in 0..part {
            let (x, y) = at(c, i);
            writeln!(s, "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"{:.1}\" fill=\"lightgray\" stroke=\"black\"/>", UNIT / 4.0).unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fountain_rows_are_offset_by_one_column() {
        let s = render(ObjectKind::Fountain, "(1,1) (1,2) (1,3) (2,1)", false, false).unwrap();
        assert_eq!(s, " ()\n()()()\n");
    }

    #[test]
    fn even_marks_uncounted_rows() {
        let s = render(ObjectKind::Fountain, "(1,1) (1,2) (2,1)", true, false).unwrap();
        assert_eq!(s, " <>\n()()\n");
    }

    #[test]
    fn fountain_form_shows_removed_coins() {
        let s = render(ObjectKind::Fountain, "b=2; missing=1,0", false, false).unwrap();
        assert_eq!(s, " ..\n()()\n");
    }

    #[test]
    fn polyomino_and_ferrers() {
        let q = render(ObjectKind::Polyomino, "l: 0,1; r: 2,3", false, false).unwrap();
        assert_eq!(q, "  [][]\n[][]\n");
        let p = render(ObjectKind::Ferrers, "3,1", false, false).unwrap();
        assert_eq!(p, "()()()\n()\n");
    }

    #[test]
    fn svg_is_deterministic_and_self_contained() {
        for (kind, input) in [
            (ObjectKind::Fountain, "b=6; missing=5,2,2,2,0,0"),
            (ObjectKind::Polyomino, "l: 0,1,1,3,3; r: 3,4,4,4,6"),
            (ObjectKind::Ferrers, "7,4,4,4,2,2,1"),
        ] {
            let a = render(kind, input, true, true).unwrap();
            assert_eq!(a, render(kind, input, true, true).unwrap());
            assert!(a.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
            assert!(!a.contains("href"));
        }
    }
}
