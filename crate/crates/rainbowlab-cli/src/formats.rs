//! Plain-text formats: point sets, partitions, colorings, word lists.
//!
//! All formats are line oriented; blank lines and lines starting with `#`
//! are skipped. Rationals print as `p/q`, or bare `p` when the denominator
//! is one, which round-trips exactly.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use rainbowlab::combin::{binomial, subset_rank, unrank_subset};
use rainbowlab::geometry::{PointSet, Rational, RationalPoint};
use rainbowlab::pattern::Partition;
use rainbowlab::ramsey::Coloring;
use rainbowlab::skew::BinaryWord;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_rational(token: &str) -> Result<Rational> {
    Rational::from_str(token).map_err(|e| anyhow!("bad rational `{token}`: {e}"))
}

/// Header `dim count`, then one point per line.
pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut lines = data_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| anyhow!("empty point set"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 2 {
        bail!("line {ln}: header must be `dim count`");
    }
    let dim: usize = parts[0].parse().with_context(|| format!("line {ln}: bad dimension"))?;
    let count: usize = parts[1].parse().with_context(|| format!("line {ln}: bad count"))?;
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| anyhow!("expected {count} points, file ends early"))?;
        let coords: Vec<Rational> = row
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<_>>()
            .with_context(|| format!("line {ln}"))?;
        if coords.len() != dim {
            bail!("line {ln}: expected {dim} coordinates, found {}", coords.len());
        }
        points.push(RationalPoint::new(coords)?);
    }
    if let Some((ln, _)) = lines.next() {
        bail!("line {ln}: trailing data after {count} points");
    }
    Ok(PointSet::new(dim, points)?)
}

pub fn emit_point_set(ps: &PointSet) -> String {
    let mut out = format!("{} {}\n", ps.dim(), ps.len());
    for p in ps.points() {
        let row: Vec<String> = p.coords().iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// One class per line, whitespace-separated indices; the ground set is
/// 0..=max index.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (ln, line) in data_lines(text) {
        let class: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().with_context(|| format!("line {ln}: bad index `{t}`")))
            .collect::<Result<_>>()?;
        classes.push(class);
    }
    let n = classes
        .iter()
        .flatten()
        .max()
        .map(|&m| m + 1)
        .ok_or_else(|| anyhow!("empty partition"))?;
    Ok(Partition::new(n, classes)?)
}

pub fn emit_partition(e: &Partition) -> String {
    let mut out = String::new();
    for class in e.classes() {
        let row: Vec<String> = class.iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// One subset per line: r indices in increasing order, then the color. The
/// table must be total over all r-subsets of 0..=max index.
pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut rows: Vec<(usize, Vec<usize>, u32)> = Vec::new();
    let mut arity: Option<usize> = None;
    for (ln, line) in data_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() < 2 {
            bail!("line {ln}: need at least one index and a color");
        }
        let r = tokens.len() - 1;
        match arity {
            None => arity = Some(r),
            Some(prev) if prev != r => {
                bail!("line {ln}: arity {r} conflicts with earlier arity {prev}")
            }
            _ => {}
        }
        let idxs: Vec<usize> = tokens[..r]
            .iter()
            .map(|t| t.parse::<usize>().with_context(|| format!("line {ln}: bad index `{t}`")))
            .collect::<Result<_>>()?;
        if idxs.windows(2).any(|w| w[0] >= w[1]) {
            bail!("line {ln}: indices must be strictly increasing");
        }
        let color: u32 = tokens[r]
            .parse()
            .with_context(|| format!("line {ln}: bad color `{}`", tokens[r]))?;
        rows.push((ln, idxs, color));
    }
    let r = arity.ok_or_else(|| anyhow!("empty coloring"))?;
    let n = rows
        .iter()
        .flat_map(|(_, idxs, _)| idxs.iter())
        .max()
        .map(|&m| m + 1)
        .expect("rows are nonempty");
    let c = rows.iter().map(|(_, _, col)| col).max().copied().unwrap_or(0) + 1;
    let total = binomial(n, r);
    if total > 1 << 24 {
        bail!("coloring table with {total} entries is too large");
    }
    let mut colors: Vec<Option<u32>> = vec![None; total as usize];
    for (ln, idxs, col) in rows {
        let rank = subset_rank(n, &idxs) as usize;
        if colors[rank].is_some() {
            bail!("line {ln}: subset listed twice");
        }
        colors[rank] = Some(col);
    }
    let colors: Vec<u32> = colors
        .into_iter()
        .enumerate()
        .map(|(rank, c)| {
            c.ok_or_else(|| {
                anyhow!(
                    "coloring is not total: subset {:?} is missing",
                    unrank_subset(n, r, rank as u128)
                )
            })
        })
        .collect::<Result<_>>()?;
    Ok(Coloring::new(n, r, c, colors)?)
}

pub fn emit_coloring(g: &Coloring) -> String {
    let mut out = String::new();
    for (rank, &color) in g.colors().iter().enumerate() {
        let idxs = unrank_subset(g.n(), g.r(), rank as u128);
        for i in idxs {
            out.push_str(&i.to_string());
            out.push(' ');
        }
        out.push_str(&color.to_string());
        out.push('\n');
    }
    out
}

/// One word per line, characters 0 and 1.
pub fn parse_words(text: &str) -> Result<Vec<BinaryWord>> {
    let mut words = Vec::new();
    for (ln, line) in data_lines(text) {
        let bits: Vec<bool> = line
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(anyhow!("line {ln}: unexpected character `{other}`")),
            })
            .collect::<Result<_>>()?;
        words.push(BinaryWord(bits));
    }
    if words.is_empty() {
        bail!("empty word list");
    }
    Ok(words)
}

pub fn emit_words(words: &[BinaryWord]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

/// Comma-separated strictly increasing index list, e.g. `0,2,5`.
pub fn parse_index_list(arg: &str) -> Result<Vec<usize>> {
    let idxs: Vec<usize> = arg
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad index `{t}`")))
        .collect::<Result<_>>()?;
    if idxs.windows(2).any(|w| w[0] >= w[1]) {
        bail!("indices must be strictly increasing");
    }
    Ok(idxs)
}

/// Comma-separated positive sizes, e.g. `4,4`.
pub fn parse_size_list(arg: &str) -> Result<Vec<usize>> {
    arg.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad size `{t}`")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_round_trip() {
        let text = "2 3\n0 0\n1/2 -3\n7 2/5\n";
        let ps = parse_point_set(text).unwrap();
        assert_eq!(emit_point_set(&ps), text);
    }

    #[test]
    fn point_set_rejects_malformed_input() {
        assert!(parse_point_set("").is_err());
        assert!(parse_point_set("2 2\n0 0\n").is_err());
        assert!(parse_point_set("2 1\n0 0 0\n").is_err());
        assert!(parse_point_set("2 1\n0 x\n").is_err());
        assert!(parse_point_set("2 1\n0 0\n1 1\n").is_err());
    }

    #[test]
    fn partition_round_trip() {
        let text = "0 1\n2 3\n";
        let e = parse_partition(text).unwrap();
        assert_eq!(emit_partition(&e), text);
        assert!(parse_partition("0 1\n1 2\n").is_err());
        assert!(parse_partition("0 2\n").is_err());
    }

    #[test]
    fn coloring_round_trip() {
        let text = "0 1 0\n0 2 1\n1 2 0\n";
        let g = parse_coloring(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.r(), 2);
        assert_eq!(g.c(), 2);
        assert_eq!(emit_coloring(&g), text);
        assert!(parse_coloring("0 1 0\n").is_err(), "not total");
        assert!(parse_coloring("0 1 0\n0 2 1\n1 2 0\n0 1 1\n").is_err(), "duplicate");
        assert!(parse_coloring("1 0 0\n").is_err(), "not increasing");
    }

    #[test]
    fn words_round_trip() {
        let text = "000\n010\n100\n101\n";
        let ws = parse_words(text).unwrap();
        assert_eq!(ws.len(), 4);
        assert_eq!(emit_words(&ws), text);
        assert!(parse_words("01x\n").is_err());
    }

    #[test]
    fn index_list_parsing() {
        assert_eq!(parse_index_list("0,2,5").unwrap(), vec![0, 2, 5]);
        assert!(parse_index_list("2,1").is_err());
        assert!(parse_index_list("a").is_err());
    }
}
