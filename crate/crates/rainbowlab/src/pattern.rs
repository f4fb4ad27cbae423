//! Ordered partitions, convex classes, and pattern-homogeneous subsets.
//!
//! A coloring of r-subsets is pattern homogeneous on X when the color of a
//! tuple depends only on how the tuple distributes over the classes of the
//! partition. The two main pipelines here are `convexify`, which selects a
//! subset on which every class becomes convex, and
//! `extract_pattern_homogeneous`, which chains relative-homogeneity searches
//! class by class and certifies the result.

use std::collections::HashMap;

use itertools::Itertools;
use thiserror::Error;

use crate::combin::{binomial, is_strictly_increasing, subsets};
use crate::ramsey::{
    find_homogeneous_auto, find_homogeneous_over_in_pool, Coloring, RamseyError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("classes must be nonempty, disjoint, and cover 0..{n}")]
    NotAPartition { n: usize },
    #[error("partition is over {expected} elements but coloring is over {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("request arity {expected} does not match coloring arity {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("coloring uses {used} colors, request declares {declared}")]
    ColorBudget { declared: u32, used: u32 },
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("extraction requires every class to be an interval of indices")]
    ClassesNotIntervals,
    #[error("need at least two classes")]
    SingleClass,
    #[error("index set is not strictly increasing within 0..{n}")]
    MalformedIndexSet { n: usize },
    #[error("first argument must be a subset of the second")]
    NotSubset,
    #[error(transparent)]
    Ramsey(#[from] RamseyError),
}

/// Ordered partition of {0..n-1}. Classes are sorted internally and listed
/// by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self, PatternError> {
        let mut classes: Vec<Vec<usize>> = classes;
        for class in &mut classes {
            class.sort_unstable();
            if class.is_empty() {
                return Err(PatternError::NotAPartition { n });
            }
        }
        classes.sort_by_key(|class| class[0]);
        let mut class_of = vec![usize::MAX; n];
        for (k, class) in classes.iter().enumerate() {
            for &i in class {
                if i >= n || class_of[i] != usize::MAX {
                    return Err(PatternError::NotAPartition { n });
                }
                class_of[i] = k;
            }
        }
        if class_of.iter().any(|&k| k == usize::MAX) {
            return Err(PatternError::NotAPartition { n });
        }
        Ok(Self { n, classes, class_of })
    }

    /// Consecutive blocks of the given sizes.
    pub fn intervals(sizes: &[usize]) -> Result<Self, PatternError> {
        let n: usize = sizes.iter().sum();
        let mut classes = Vec::with_capacity(sizes.len());
        let mut start = 0;
        for &s in sizes {
            classes.push((start..start + s).collect());
            start += s;
        }
        Self::new(n, classes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn is_interval_classes(&self) -> bool {
        self.classes
            .iter()
            .all(|class| class.last().unwrap() - class[0] + 1 == class.len())
    }

    /// Classes restricted to x, empty intersections dropped, order kept.
    pub fn restrict(&self, x: &[usize]) -> Result<Vec<Vec<usize>>, PatternError> {
        check_index_set(self.n, x)?;
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.classes.len()];
        for &i in x {
            out[self.class_of[i]].push(i);
        }
        Ok(out.into_iter().filter(|c| !c.is_empty()).collect())
    }
}

fn check_index_set(n: usize, s: &[usize]) -> Result<(), PatternError> {
    if !is_strictly_increasing(s) || s.last().is_some_and(|&x| x >= n) {
        return Err(PatternError::MalformedIndexSet { n });
    }
    Ok(())
}

/// Class membership word of a sorted tuple, labels renumbered by first
/// appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassPattern(pub Vec<usize>);

pub fn class_pattern(tuple: &[usize], e: &Partition) -> Result<ClassPattern, PatternError> {
    check_index_set(e.n(), tuple)?;
    let mut relabel: HashMap<usize, usize> = HashMap::new();
    let mut word = Vec::with_capacity(tuple.len());
    for &i in tuple {
        let k = e.class_of(i);
        let next = relabel.len();
        word.push(*relabel.entry(k).or_insert(next));
    }
    Ok(ClassPattern(word))
}

/// A is convex in Y when no element of Y strictly between min A and max A is
/// missing from A. Both sets must be sorted; A must be a subset of Y.
pub fn is_convex(a: &[usize], y: &[usize]) -> Result<bool, PatternError> {
    check_index_set(usize::MAX, a)?;
    check_index_set(usize::MAX, y)?;
    let mut ai = a.iter().peekable();
    for &v in y {
        match ai.peek() {
            Some(&&next) if next == v => {
                ai.next();
            }
            _ => {}
        }
    }
    if ai.peek().is_some() {
        return Err(PatternError::NotSubset);
    }
    if a.len() <= 1 {
        return Ok(true);
    }
    let (lo, hi) = (a[0], *a.last().unwrap());
    Ok(y.iter()
        .filter(|&&v| v > lo && v < hi)
        .all(|v| a.binary_search(v).is_ok()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCounterexample {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub first_color: u32,
    pub second_color: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCheck {
    pub holds: bool,
    /// Two same-pattern tuples with different colors; the first such pair in
    /// scan order.
    pub counterexample: Option<PatternCounterexample>,
    /// Pattern -> color table, sorted by pattern; filled only when the check
    /// holds.
    pub table: Vec<(ClassPattern, u32)>,
}

/// Does the color of every r-subset of x depend only on its class pattern?
pub fn is_pattern_homogeneous(
    x: &[usize],
    e: &Partition,
    g: &Coloring,
) -> Result<PatternCheck, PatternError> {
    if g.n() != e.n() {
        return Err(PatternError::SizeMismatch { expected: e.n(), found: g.n() });
    }
    check_index_set(e.n(), x)?;
    let mut rep: HashMap<ClassPattern, (Vec<usize>, u32)> = HashMap::new();
    for tuple in x.iter().copied().combinations(g.r()) {
        let pat = class_pattern(&tuple, e)?;
        let col = g.color(&tuple);
        match rep.get(&pat) {
            None => {
                rep.insert(pat, (tuple, col));
            }
            Some((first, first_color)) if *first_color != col => {
                return Ok(PatternCheck {
                    holds: false,
                    counterexample: Some(PatternCounterexample {
                        first: first.clone(),
                        second: tuple,
                        first_color: *first_color,
                        second_color: col,
                    }),
                    table: Vec::new(),
                });
            }
            _ => {}
        }
    }
    let mut table: Vec<(ClassPattern, u32)> =
        rep.into_iter().map(|(p, (_, c))| (p, c)).collect();
    table.sort();
    Ok(PatternCheck { holds: true, counterexample: None, table })
}

/// Valid convexification output: at least k classes survive in x, and every
/// surviving class is convex in x with at least l elements.
pub fn is_convex_selection(
    e: &Partition,
    x: &[usize],
    k: usize,
    l: usize,
) -> Result<bool, PatternError> {
    let parts = e.restrict(x)?;
    if parts.len() < k {
        return Ok(false);
    }
    for part in &parts {
        if part.len() < l || !is_convex(part, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order-type coloring of rank pairs followed by a separated/interleaved
/// dichotomy. Returns an unvalidated candidate.
fn convexify_by_interleaving(e: &Partition, k: usize, l: usize) -> Option<Vec<usize>> {
    let classes = e.classes();
    let kstar = classes.len();
    if kstar < 2 || k < 2 {
        return None;
    }
    let lmin = classes.iter().map(Vec::len).min().unwrap();
    let need_i = (l * l).max(l * k).max(2);
    if need_i > lmin {
        return None;
    }

    // color a rank pair by the order type of the interleaved class values
    let mut ids: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut colors = Vec::with_capacity(binomial(lmin, 2) as usize);
    for pair in subsets(lmin, 2) {
        let mut labeled: Vec<(usize, usize)> = Vec::with_capacity(2 * kstar);
        for (cls, class) in classes.iter().enumerate() {
            labeled.push((class[pair[0]], 2 * cls));
            labeled.push((class[pair[1]], 2 * cls + 1));
        }
        labeled.sort_unstable();
        let key: Vec<usize> = labeled.into_iter().map(|(_, lab)| lab).collect();
        let next = ids.len() as u32;
        let id = *ids.entry(key).or_insert(next);
        colors.push(id);
    }
    let f = Coloring::new(lmin, 2, ids.len() as u32, colors).ok()?;
    let i_set = find_homogeneous_auto(&f, need_i).ok().flatten()?;

    // values of each class at the selected ranks
    let sel: Vec<Vec<usize>> = classes
        .iter()
        .map(|class| i_set.iter().map(|&rank| class[rank]).collect())
        .collect();
    let mut pair_case: HashMap<(usize, usize), u32> = HashMap::new();
    for c0 in 0..kstar {
        for c1 in c0 + 1..kstar {
            pair_case.insert((c0, c1), classify_pair(&sel[c0], &sel[c1])?);
        }
    }
    let g_case = Coloring::from_fn(kstar, 2, |s| pair_case[&(s[0], s[1])]).ok()?;
    let j_set = find_homogeneous_auto(&g_case, k).ok().flatten()?;

    if pair_case[&(j_set[0], j_set[1])] == 0 {
        // separated blocks: keep each chosen class at the selected ranks
        let mut x: Vec<usize> = j_set.iter().flat_map(|&c| sel[c].iter().copied()).collect();
        x.sort_unstable();
        Some(x)
    } else {
        // uniformly interleaved: walk the diagonal so consecutive blocks
        // cannot overlap
        let mut ys: Vec<&Vec<usize>> = j_set.iter().map(|&c| &sel[c]).collect();
        ys.sort_by_key(|v| v[0]);
        let mut x = Vec::with_capacity(k * l);
        for (t, y) in ys.iter().enumerate() {
            x.extend_from_slice(&y[t * l..(t + 1) * l]);
        }
        x.sort_unstable();
        Some(x)
    }
}

/// 0 when one selection lies entirely below the other, 1 when they
/// interleave rank-for-rank in some orientation, None otherwise.
fn classify_pair(a: &[usize], b: &[usize]) -> Option<u32> {
    if a[a.len() - 1] < b[0] || b[b.len() - 1] < a[0] {
        return Some(0);
    }
    let interleaved = |x: &[usize], y: &[usize]| {
        (0..x.len()).all(|l0| (l0 + 1..x.len()).all(|l1| x[l0] < y[l0] && y[l0] < x[l1]))
    };
    if interleaved(a, b) || interleaved(b, a) {
        return Some(1);
    }
    None
}

/// Exact fallback: pick k blocks of l consecutive class elements, blocks
/// strictly separated in value and drawn from distinct classes. For a fixed
/// class and lower bound, the earliest l elements dominate any other choice,
/// so the search over (class order, earliest blocks) is complete.
fn direct_convex_search(e: &Partition, k: usize, l: usize) -> Option<Vec<usize>> {
    // candidate blocks per unused class: earliest l elements at or after the
    // bound, ordered lexicographically across classes
    fn rec(
        e: &Partition,
        l: usize,
        start: usize,
        remaining: usize,
        used: &mut [bool],
        acc: &mut Vec<usize>,
    ) -> bool {
        if remaining == 0 {
            return true;
        }
        let mut cands: Vec<(Vec<usize>, usize)> = Vec::new();
        for (cls, class) in e.classes().iter().enumerate() {
            if used[cls] {
                continue;
            }
            let tail: Vec<usize> = class.iter().copied().filter(|&v| v >= start).collect();
            if tail.len() >= l {
                cands.push((tail[..l].to_vec(), cls));
            }
        }
        cands.sort();
        for (block, cls) in cands {
            let next_start = block[l - 1] + 1;
            used[cls] = true;
            let len_before = acc.len();
            acc.extend_from_slice(&block);
            if rec(e, l, next_start, remaining - 1, used, acc) {
                return true;
            }
            acc.truncate(len_before);
            used[cls] = false;
        }
        false
    }
    let mut used = vec![false; e.class_count()];
    let mut acc = Vec::with_capacity(k * l);
    if rec(e, l, 0, k, &mut used, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

/// Find x such that the partition restricted to x has at least k classes,
/// each convex in x and of size at least l. Tries the order-type procedure
/// first and validates its output; falls back to the exact block search, so
/// None means no such x exists.
pub fn convexify(e: &Partition, k: usize, l: usize) -> Result<Option<Vec<usize>>, PatternError> {
    if e.class_count() < 2 {
        return Err(PatternError::SingleClass);
    }
    if k == 0 || l == 0 {
        return Err(PatternError::InvalidRequest(
            "class count and class size must be positive".into(),
        ));
    }
    if let Some(x) = convexify_by_interleaving(e, k, l) {
        if is_convex_selection(e, &x, k, l)? {
            return Ok(Some(x));
        }
    }
    Ok(direct_convex_search(e, k, l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractionRequest {
    /// K: how many classes must survive into the output.
    pub class_count: usize,
    /// L: minimum surviving class size.
    pub class_size: usize,
    /// r: arity of the coloring.
    pub arity: usize,
    /// c: declared color budget; the coloring may use fewer.
    pub colors: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractStage {
    /// Not enough classes of the required size.
    Eligibility,
    /// Relative-homogeneity search failed for one class at one level.
    ClassChain { class: usize, level: usize },
    /// No homogeneous set for the type coloring over classes.
    ClassSelection,
    /// Assembled set failed the definition-level check.
    Verification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractFailure {
    pub stage: ExtractStage,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct PatternHomogCertificate {
    pub indices: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub table: Vec<(ClassPattern, u32)>,
    pub verified: bool,
}

#[derive(Debug, Clone)]
pub enum ExtractOutcome {
    Success(PatternHomogCertificate),
    Failure(ExtractFailure),
}

/// Designated-element budget: level sizes for the per-class chain. The
/// search at level l targets class_size + sum of the designated counts at
/// levels l..r-1, where level j designates j+1 elements.
fn level_targets(class_size: usize, r: usize) -> Vec<usize> {
    (0..r)
        .map(|level| class_size + (level..r).map(|j| j + 1).sum::<usize>())
        .collect()
}

/// Chain relative-homogeneity searches through each class, designate the
/// leading elements at every level, select compatible classes through a type
/// coloring, and verify the assembled set. Requires interval classes so
/// that class patterns are insensitive to which representatives survive.
pub fn extract_pattern_homogeneous(
    e: &Partition,
    g: &Coloring,
    req: &ExtractionRequest,
) -> Result<ExtractOutcome, PatternError> {
    if g.n() != e.n() {
        return Err(PatternError::SizeMismatch { expected: e.n(), found: g.n() });
    }
    if g.r() != req.arity {
        return Err(PatternError::ArityMismatch { expected: req.arity, found: g.r() });
    }
    if g.c() > req.colors {
        return Err(PatternError::ColorBudget { declared: req.colors, used: g.c() });
    }
    if req.class_count == 0 || req.class_size == 0 || req.arity == 0 {
        return Err(PatternError::InvalidRequest(
            "class count, class size, and arity must be positive".into(),
        ));
    }
    if !e.is_interval_classes() {
        return Err(PatternError::ClassesNotIntervals);
    }
    let r = req.arity;
    let k_target = req.class_count;
    let targets = level_targets(req.class_size, r);

    let eligible: Vec<usize> = (0..e.class_count())
        .filter(|&cls| e.classes()[cls].len() >= targets[0])
        .collect();
    let kstar = eligible.len();
    if kstar < k_target + r {
        return Ok(ExtractOutcome::Failure(ExtractFailure {
            stage: ExtractStage::Eligibility,
            detail: format!(
                "need {} classes of size at least {}, found {}",
                k_target + r,
                targets[0],
                kstar
            ),
        }));
    }

    // chain[level][ci] and desig[level][ci], classes in eligible order
    let mut chain: Vec<Vec<Vec<usize>>> = Vec::with_capacity(r);
    let mut desig: Vec<Vec<Vec<usize>>> = Vec::with_capacity(r);
    for level in 0..r {
        let mut level_sets: Vec<Vec<usize>> = Vec::with_capacity(kstar);
        let mut level_desig: Vec<Vec<usize>> = Vec::with_capacity(kstar);
        for (ci, &cls) in eligible.iter().enumerate() {
            let pool: Vec<usize> = if level == 0 {
                e.classes()[cls].clone()
            } else {
                chain[level - 1][ci][level..].to_vec()
            };
            let mut params: Vec<usize> = Vec::new();
            for earlier in &level_sets {
                params.extend_from_slice(earlier);
            }
            for lower in &desig {
                for d in lower {
                    params.extend_from_slice(d);
                }
            }
            params.sort_unstable();
            let found = find_homogeneous_over_in_pool(g, &params, &pool, targets[level])?;
            match found {
                Some(y) => {
                    level_desig.push(y[..level + 1].to_vec());
                    level_sets.push(y);
                }
                None => {
                    return Ok(ExtractOutcome::Failure(ExtractFailure {
                        stage: ExtractStage::ClassChain { class: cls, level },
                        detail: format!(
                            "no set of size {} homogeneous over {} parameters inside class {}",
                            targets[level],
                            params.len(),
                            cls
                        ),
                    }));
                }
            }
        }
        chain.push(level_sets);
        desig.push(level_desig);
    }

    // type coloring over class positions: the color vector of the array that
    // stacks, for tuple position i, the level r-1-i designated elements of
    // the i-th chosen class
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut colors: Vec<u32> = Vec::with_capacity(binomial(kstar, r) as usize);
    for s in subsets(kstar, r) {
        let mut array: Vec<usize> = Vec::with_capacity(r * (r + 1) / 2);
        for (i, &ci) in s.iter().enumerate() {
            array.extend_from_slice(&desig[r - 1 - i][ci]);
        }
        let key: Vec<u32> = array
            .iter()
            .copied()
            .combinations(r)
            .map(|tuple| g.color(&tuple))
            .collect();
        let next = ids.len() as u32;
        let id = *ids.entry(key).or_insert(next);
        colors.push(id);
    }
    let type_coloring = Coloring::new(kstar, r, ids.len() as u32, colors)?;
    let selected = match find_homogeneous_auto(&type_coloring, k_target + r)? {
        Some(sel) => sel,
        None => {
            return Ok(ExtractOutcome::Failure(ExtractFailure {
                stage: ExtractStage::ClassSelection,
                detail: format!(
                    "no {} classes with matching designated-element type",
                    k_target + r
                ),
            }));
        }
    };

    // final blocks: deepest chain sets minus their designated elements
    let mut x: Vec<usize> = Vec::with_capacity(k_target * req.class_size);
    for &ci in selected.iter().take(k_target) {
        x.extend_from_slice(&chain[r - 1][ci][r..]);
    }
    x.sort_unstable();

    let check = is_pattern_homogeneous(&x, e, g)?;
    if !check.holds {
        let cex = check.counterexample.expect("failed check carries a counterexample");
        return Ok(ExtractOutcome::Failure(ExtractFailure {
            stage: ExtractStage::Verification,
            detail: format!(
                "tuples {:?} and {:?} share a pattern but have colors {} and {}",
                cex.first, cex.second, cex.first_color, cex.second_color
            ),
        }));
    }
    Ok(ExtractOutcome::Success(PatternHomogCertificate {
        classes: e.restrict(&x)?,
        table: check.table,
        verified: true,
        indices: x,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parity_partition(n: usize) -> Partition {
        let evens: Vec<usize> = (0..n).step_by(2).collect();
        let odds: Vec<usize> = (1..n).step_by(2).collect();
        Partition::new(n, vec![evens, odds]).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn partition_orders_classes_by_least_element() {
        let e = Partition::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(e.classes(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(e.class_of(3), 1);
    }

    #[test]
    fn class_pattern_examples() {
        let e = Partition::new(5, vec![vec![0, 2, 4], vec![1, 3]]).unwrap();
        assert_eq!(class_pattern(&[0, 1, 2], &e).unwrap(), ClassPattern(vec![0, 1, 0]));
        assert_eq!(class_pattern(&[1, 3], &e).unwrap(), ClassPattern(vec![0, 0]));
        assert_eq!(class_pattern(&[1, 2], &e).unwrap(), ClassPattern(vec![0, 1]));
        assert!(class_pattern(&[2, 1], &e).is_err());
    }

    #[test]
    fn convexity_examples() {
        assert!(is_convex(&[2, 3], &[1, 2, 3, 5]).unwrap());
        assert!(!is_convex(&[1, 5], &[1, 3, 5]).unwrap());
        assert!(is_convex(&[3], &[1, 3, 5]).unwrap());
        assert!(is_convex(&[], &[1, 3, 5]).unwrap());
        assert!(matches!(is_convex(&[2], &[1, 3]), Err(PatternError::NotSubset)));
    }

    #[test]
    fn pattern_homogeneity_detects_violations() {
        let e = parity_partition(6);
        // color by class pattern: same-class pairs 0, cross-class pairs 1
        let respecting = Coloring::from_fn(6, 2, |s| {
            u32::from(s[0] % 2 != s[1] % 2)
        })
        .unwrap();
        let ok = is_pattern_homogeneous(&[0, 1, 2, 3], &e, &respecting).unwrap();
        assert!(ok.holds);
        assert_eq!(ok.table.len(), 2);

        // plant one violation
        let planted = Coloring::from_fn(6, 2, |s| {
            if s == [0, 2] {
                1
            } else {
                u32::from(s[0] % 2 != s[1] % 2)
            }
        })
        .unwrap();
        let bad = is_pattern_homogeneous(&[0, 1, 2, 4], &e, &planted).unwrap();
        assert!(!bad.holds);
        let cex = bad.counterexample.unwrap();
        assert_ne!(cex.first_color, cex.second_color);
        assert_eq!(
            class_pattern(&cex.first, &e).unwrap(),
            class_pattern(&cex.second, &e).unwrap()
        );
    }

    #[test]
    fn convexify_parity_eight() {
        let e = parity_partition(8);
        let x = convexify(&e, 2, 2).unwrap().unwrap();
        assert_eq!(x, vec![0, 2, 5, 7]);
        assert!(is_convex_selection(&e, &x, 2, 2).unwrap());
    }

    #[test]
    fn convexify_interval_classes_keep_everything() {
        let e = Partition::intervals(&[4, 4]).unwrap();
        let x = convexify(&e, 2, 2).unwrap().unwrap();
        assert_eq!(x, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn convexify_honest_failure_on_tight_parity() {
        // two classes of two interleaved indices: no pair of separated
        // 2-blocks exists
        let e = parity_partition(4);
        assert_eq!(convexify(&e, 2, 2).unwrap(), None);
    }

    #[test]
    fn convexify_rejects_degenerate_requests() {
        let e = parity_partition(4);
        assert!(convexify(&e, 0, 2).is_err());
        let single = Partition::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(convexify(&single, 1, 1).is_err());
    }

    /// Brute-force oracle: scan all subsets for a valid selection.
    fn convexify_oracle(e: &Partition, k: usize, l: usize) -> bool {
        let n = e.n();
        for mask in 0u32..(1 << n) {
            let x: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if x.len() < k * l {
                continue;
            }
            if is_convex_selection(e, &x, k, l).unwrap() {
                return true;
            }
        }
        false
    }

    #[test]
    fn convexify_matches_oracle_on_random_partitions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(4..10);
            let t = rng.gen_range(2..4.min(n));
            // random surjective labeling
            let labels: Vec<usize> = loop {
                let cand: Vec<usize> = (0..n).map(|_| rng.gen_range(0..t)).collect();
                if (0..t).all(|lab| cand.contains(&lab)) {
                    break cand;
                }
            };
            let mut classes = vec![Vec::new(); t];
            for (i, &lab) in labels.iter().enumerate() {
                classes[lab].push(i);
            }
            let e = Partition::new(n, classes).unwrap();
            for (k, l) in [(2, 2), (2, 3), (3, 2)] {
                let got = convexify(&e, k, l).unwrap();
                let expect = convexify_oracle(&e, k, l);
                assert_eq!(got.is_some(), expect, "n={n} labels={labels:?} k={k} l={l}");
                if let Some(x) = got {
                    assert!(is_convex_selection(&e, &x, k, l).unwrap());
                }
            }
        }
    }

    fn pattern_coloring(e: &Partition, r: usize, table: &HashMap<ClassPattern, u32>) -> Coloring {
        Coloring::from_fn(e.n(), r, |s| {
            table[&class_pattern(s, e).unwrap()]
        })
        .unwrap()
    }

    #[test]
    fn extraction_succeeds_on_pattern_colorings() {
        let e = Partition::intervals(&[5, 5, 5, 5]).unwrap();
        let mut table = HashMap::new();
        table.insert(ClassPattern(vec![0, 0]), 1);
        table.insert(ClassPattern(vec![0, 1]), 0);
        let g = pattern_coloring(&e, 2, &table);
        let req = ExtractionRequest { class_count: 2, class_size: 2, arity: 2, colors: 2 };
        match extract_pattern_homogeneous(&e, &g, &req).unwrap() {
            ExtractOutcome::Success(cert) => {
                assert!(cert.verified);
                assert_eq!(cert.classes.len(), 2);
                assert!(cert.classes.iter().all(|c| c.len() >= 2));
                assert_eq!(cert.indices.len(), 4);
                assert_eq!(cert.table.len(), 2);
            }
            ExtractOutcome::Failure(f) => panic!("unexpected failure: {f:?}"),
        }
    }

    #[test]
    fn extraction_reports_eligibility_failure() {
        let e = Partition::intervals(&[3, 3, 3]).unwrap();
        let g = Coloring::constant(9, 3).unwrap();
        // level-0 target is 2 + 1 + 2 + 3 = 8, far beyond any class
        let req = ExtractionRequest { class_count: 1, class_size: 2, arity: 3, colors: 1 };
        match extract_pattern_homogeneous(&e, &g, &req).unwrap() {
            ExtractOutcome::Failure(f) => assert_eq!(f.stage, ExtractStage::Eligibility),
            ExtractOutcome::Success(_) => panic!("should fail eligibility"),
        }
    }

    #[test]
    fn extraction_requires_interval_classes() {
        let e = parity_partition(8);
        let g = Coloring::constant(8, 2).unwrap();
        let req = ExtractionRequest { class_count: 2, class_size: 2, arity: 2, colors: 1 };
        assert!(matches!(
            extract_pattern_homogeneous(&e, &g, &req),
            Err(PatternError::ClassesNotIntervals)
        ));
    }

    #[test]
    fn extraction_soundness_on_random_colorings() {
        let e = Partition::intervals(&[5, 5, 5, 5, 5, 5]).unwrap();
        let req = ExtractionRequest { class_count: 2, class_size: 2, arity: 2, colors: 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut successes = 0;
        for _ in 0..20 {
            let g = Coloring::from_fn(30, 2, |_| rng.gen_range(0..2)).unwrap();
            match extract_pattern_homogeneous(&e, &g, &req).unwrap() {
                ExtractOutcome::Success(cert) => {
                    successes += 1;
                    assert!(cert.verified);
                    assert!(is_pattern_homogeneous(&cert.indices, &e, &g).unwrap().holds);
                }
                ExtractOutcome::Failure(f) => {
                    assert!(matches!(
                        f.stage,
                        ExtractStage::ClassChain { .. }
                            | ExtractStage::ClassSelection
                            | ExtractStage::Verification
                            | ExtractStage::Eligibility
                    ));
                }
            }
        }
        let _ = successes;
    }

    #[test]
    fn level_targets_match_designated_budget() {
        assert_eq!(level_targets(2, 2), vec![5, 4]);
        assert_eq!(level_targets(1, 1), vec![2]);
        assert_eq!(level_targets(3, 3), vec![9, 8, 6]);
    }
}
