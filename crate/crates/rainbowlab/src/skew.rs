//! Skew sets of binary words and canonical colorings.
//!
//! The meet level of two distinct equal-length words is the position of
//! their first disagreement. A sorted tuple is skew when the meet levels of
//! consecutive words are pairwise distinct; the order type of such a tuple
//! records which gap is deepest, second deepest, and so on. A coloring of
//! a-subsets is canonical when it factors through the order type. Meet
//! levels obey the ultrametric law: over x < y < z the outer meet is the
//! minimum of the two inner ones, which is why every subset of a meet-unique
//! set is again skew.

use std::collections::HashMap;

use itertools::Itertools;
use thiserror::Error;

use crate::combin::{binomial, is_strictly_increasing, unrank_subset};
use crate::ramsey::Coloring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("words have different lengths: {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("meet level of equal words is undefined")]
    EqualWords,
    #[error("words must be sorted in strictly increasing order")]
    NotSorted,
    #[error("meet level {level} appears with two different prefixes")]
    MeetCollision { level: usize },
    #[error("tuple is not skew: consecutive meet levels repeat")]
    NotSkew,
    #[error("coloring is over {found} elements, the word set has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("coloring arity {found} does not match requested arity {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("index set is not strictly increasing within 0..{n}")]
    MalformedIndexSet { n: usize },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

/// Fixed-length binary word; ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(pub Vec<bool>);

impl BinaryWord {
    pub fn from_bits(bits: &[u8]) -> Self {
        Self(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

/// Position of the first disagreement.
pub fn meet_level(x: &BinaryWord, y: &BinaryWord) -> Result<usize, SkewError> {
    if x.len() != y.len() {
        return Err(SkewError::LengthMismatch(x.len(), y.len()));
    }
    x.0.iter()
        .zip(&y.0)
        .position(|(a, b)| a != b)
        .ok_or(SkewError::EqualWords)
}

/// Are the consecutive meet levels of this sorted tuple pairwise distinct?
pub fn is_skew_tuple(words: &[&BinaryWord]) -> Result<bool, SkewError> {
    if words.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SkewError::NotSorted);
    }
    let mut levels = Vec::with_capacity(words.len().saturating_sub(1));
    for w in words.windows(2) {
        levels.push(meet_level(w[0], w[1])?);
    }
    let mut sorted = levels.clone();
    sorted.sort_unstable();
    Ok(sorted.windows(2).all(|w| w[0] != w[1]))
}

/// Gap indices of a skew tuple sorted by ascending meet level: position 0
/// names the shallowest (root) gap.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderType(pub Vec<usize>);

pub fn order_type(words: &[&BinaryWord]) -> Result<OrderType, SkewError> {
    if !is_skew_tuple(words)? {
        return Err(SkewError::NotSkew);
    }
    let mut gaps: Vec<(usize, usize)> = words
        .windows(2)
        .enumerate()
        .map(|(i, w)| Ok((meet_level(w[0], w[1])?, i)))
        .collect::<Result<_, SkewError>>()?;
    gaps.sort_unstable();
    Ok(OrderType(gaps.into_iter().map(|(_, i)| i).collect()))
}

/// Sorted set of equal-length words in which equal meet levels force equal
/// meet prefixes. Subsets of such a set are skew automatically: two
/// consecutive gaps at one level would need the shared prefix extended by
/// both bits twice over, which the sorted order rules out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewSet {
    words: Vec<BinaryWord>,
}

impl SkewSet {
    pub fn new(mut words: Vec<BinaryWord>) -> Result<Self, SkewError> {
        words.sort();
        if words.windows(2).any(|w| w[0] == w[1]) {
            return Err(SkewError::EqualWords);
        }
        if let Some(w) = words.iter().find(|w| w.len() != words[0].len()) {
            return Err(SkewError::LengthMismatch(words[0].len(), w.len()));
        }
        // meet level -> prefix below it, over all pairs
        let mut prefixes: HashMap<usize, &[bool]> = HashMap::new();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let level = meet_level(&words[i], &words[j])?;
                let prefix = &words[i].0[..level];
                match prefixes.get(&level) {
                    None => {
                        prefixes.insert(level, prefix);
                    }
                    Some(&p) if p != prefix => {
                        return Err(SkewError::MeetCollision { level });
                    }
                    _ => {}
                }
            }
        }
        Ok(Self { words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &BinaryWord {
        &self.words[i]
    }

    fn select(&self, idxs: &[usize]) -> Vec<&BinaryWord> {
        idxs.iter().map(|&i| &self.words[i]).collect()
    }
}

/// 2^m words of length 2^m - 1 arranged as a complete binary tree: internal
/// nodes claim positions in preorder, each word sets the positions where its
/// root path turns right, and everything else stays zero.
pub fn build_skew_set(height: usize) -> Result<SkewSet, SkewError> {
    if height > 16 {
        return Err(SkewError::TooLarge(format!("height {height} exceeds 16")));
    }
    let leaves = 1usize << height;
    let len = leaves - 1;
    let mut words = vec![vec![false; len]; leaves];
    fn assign(words: &mut [Vec<bool>], lo: usize, hi: usize, pos: &mut usize) {
        if hi - lo == 1 {
            return;
        }
        let p = *pos;
        *pos += 1;
        let mid = (lo + hi) / 2;
        for w in words.iter_mut().take(hi).skip(mid) {
            w[p] = true;
        }
        assign(words, lo, mid, pos);
        assign(words, mid, hi, pos);
    }
    let mut pos = 0;
    assign(&mut words, 0, leaves, &mut pos);
    SkewSet::new(words.into_iter().map(BinaryWord).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicityReport {
    pub canonical: bool,
    /// Order type -> color when canonical; sorted by order type.
    pub table: Vec<(OrderType, u32)>,
    /// Two same-order-type index tuples with different colors.
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
}

fn canonicity_on(
    c: &SkewSet,
    f: &Coloring,
    indices: &[usize],
) -> Result<CanonicityReport, SkewError> {
    let mut rep: HashMap<OrderType, (Vec<usize>, u32)> = HashMap::new();
    for tuple in indices.iter().copied().combinations(f.r()) {
        let ot = order_type(&c.select(&tuple))?;
        let col = f.color(&tuple);
        match rep.get(&ot) {
            None => {
                rep.insert(ot, (tuple, col));
            }
            Some((first, first_color)) if *first_color != col => {
                return Ok(CanonicityReport {
                    canonical: false,
                    table: Vec::new(),
                    counterexample: Some((first.clone(), tuple)),
                });
            }
            _ => {}
        }
    }
    let mut table: Vec<(OrderType, u32)> = rep.into_iter().map(|(ot, (_, col))| (ot, col)).collect();
    table.sort();
    Ok(CanonicityReport { canonical: true, table, counterexample: None })
}

/// Does the coloring of a-subsets factor through the order type?
pub fn check_canonical(c: &SkewSet, a: usize, f: &Coloring) -> Result<CanonicityReport, SkewError> {
    if f.n() != c.len() {
        return Err(SkewError::SizeMismatch { expected: c.len(), found: f.n() });
    }
    if f.r() != a {
        return Err(SkewError::ArityMismatch { expected: a, found: f.r() });
    }
    let indices: Vec<usize> = (0..c.len()).collect();
    canonicity_on(c, f, &indices)
}

/// Do the selected words split evenly at a unique shallowest gap, all the
/// way down? Levels are the consecutive meet levels of the selection.
fn full_tree_shape(levels: &[usize]) -> bool {
    if levels.is_empty() {
        return true;
    }
    let mid = levels.len() / 2;
    let min = *levels.iter().min().expect("nonempty");
    if levels.iter().filter(|&&v| v == min).count() != 1 || levels[mid] != min {
        return false;
    }
    full_tree_shape(&levels[..mid]) && full_tree_shape(&levels[mid + 1..])
}

fn consecutive_levels(c: &SkewSet, idxs: &[usize]) -> Vec<usize> {
    idxs.windows(2)
        .map(|w| meet_level(c.word(w[0]), c.word(w[1])).expect("distinct words in a valid set"))
        .collect()
}

fn accept_candidate(c: &SkewSet, f: &Coloring, idxs: &[usize]) -> bool {
    full_tree_shape(&consecutive_levels(c, idxs))
        && canonicity_on(c, f, idxs).map(|r| r.canonical).unwrap_or(false)
}

/// Lexicographically least 2^height indices whose words form a full binary
/// tree and on which the coloring is canonical. None when the set is too
/// small or no subset qualifies; an error before any work when the candidate
/// count exceeds the budget. The scan order is fixed, so the parallel and
/// sequential paths agree.
pub fn find_canonical_subset(
    c: &SkewSet,
    a: usize,
    f: &Coloring,
    height: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>, SkewError> {
    if f.n() != c.len() {
        return Err(SkewError::SizeMismatch { expected: c.len(), found: f.n() });
    }
    if f.r() != a {
        return Err(SkewError::ArityMismatch { expected: a, found: f.r() });
    }
    if height > 16 {
        return Err(SkewError::TooLarge(format!("height {height} exceeds 16")));
    }
    let size = 1usize << height;
    if size > c.len() {
        return Ok(None);
    }
    let candidates = binomial(c.len(), size);
    if candidates > budget as u128 {
        return Err(SkewError::BudgetExceeded { needed: candidates, budget });
    }
    let total = candidates as u64;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..total)
            .into_par_iter()
            .find_first(|&rank| {
                let idxs = unrank_subset(c.len(), size, rank as u128);
                accept_candidate(c, f, &idxs)
            })
            .map(|rank| unrank_subset(c.len(), size, rank as u128)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..total)
            .find(|&rank| {
                let idxs = unrank_subset(c.len(), size, rank as u128);
                accept_candidate(c, f, &idxs)
            })
            .map(|rank| unrank_subset(c.len(), size, rank as u128)))
    }
}

/// Sequential twin of [`find_canonical_subset`].
pub fn find_canonical_subset_seq(
    c: &SkewSet,
    a: usize,
    f: &Coloring,
    height: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>, SkewError> {
    if f.n() != c.len() {
        return Err(SkewError::SizeMismatch { expected: c.len(), found: f.n() });
    }
    if f.r() != a {
        return Err(SkewError::ArityMismatch { expected: a, found: f.r() });
    }
    if height > 16 {
        return Err(SkewError::TooLarge(format!("height {height} exceeds 16")));
    }
    let size = 1usize << height;
    if size > c.len() {
        return Ok(None);
    }
    let candidates = binomial(c.len(), size);
    if candidates > budget as u128 {
        return Err(SkewError::BudgetExceeded { needed: candidates, budget });
    }
    Ok((0..candidates as u64)
        .find(|&rank| {
            let idxs = unrank_subset(c.len(), size, rank as u128);
            accept_candidate(c, f, &idxs)
        })
        .map(|rank| unrank_subset(c.len(), size, rank as u128)))
}

/// Delta between two index positions of a set, for tests and reporting.
pub fn meet_level_at(c: &SkewSet, i: usize, j: usize) -> Result<usize, SkewError> {
    if i >= c.len() || j >= c.len() {
        return Err(SkewError::MalformedIndexSet { n: c.len() });
    }
    meet_level(c.word(i), c.word(j))
}

/// Check the index set is usable as a subset selection.
pub fn check_selection(c: &SkewSet, idxs: &[usize]) -> Result<(), SkewError> {
    if !is_strictly_increasing(idxs) || idxs.last().is_some_and(|&i| i >= c.len()) {
        return Err(SkewError::MalformedIndexSet { n: c.len() });
    }
    Ok(())
}
