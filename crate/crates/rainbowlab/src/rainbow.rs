//! Distinct-volume subsets at three strengths, with witnesses.
//!
//! PLAIN asks that all nondegenerate a-subsets span pairwise distinct
//! volumes. STRONG additionally forbids degenerate a-subsets. STRICT asks
//! for STRONG at every arity from 2 up to a, plus containment in an
//! (a-1)-flat, so that a-subsets are the top nondegenerate layer.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::combin::{subsets, unrank_subset};
use crate::geometry::{
    affine_rank, squared_distance, squared_volume, subset_squared_volumes, volume_classes,
    GeometryError, PointSet, Rational, RationalPoint,
};
use crate::pattern::{Partition, PatternError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RainbowError {
    #[error("arity {arity} out of range for {points} points")]
    InvalidArity { arity: usize, points: usize },
    #[error("strict checks need arity at most dim + 1 = {max}, got {arity}")]
    StrictArityTooLarge { arity: usize, max: usize },
    #[error("point set must be nonempty")]
    EmptySet,
    #[error("subset search supports at most {max} points, got {found}")]
    TooManyPoints { found: usize, max: usize },
    #[error("search budget exhausted: {detail}")]
    BudgetExceeded { detail: String },
    #[error("could not place point {point_index} after {attempts} attempts")]
    GenerationFailed { point_index: usize, attempts: usize },
    #[error("generator needs {detail}")]
    BadGenerationRequest { detail: String },
    #[error("class {class_index} has fewer than two points")]
    ClassTooSmall { class_index: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RainbowMode {
    Plain,
    Strong,
    Strict,
}

/// Reason a set fails a rainbow check. Index sets are sorted and refer to
/// positions in the point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RainbowViolation {
    /// Two distinct nondegenerate subsets of the named arity with equal
    /// squared volume.
    EqualVolume {
        arity: usize,
        first: Vec<usize>,
        second: Vec<usize>,
    },
    /// A degenerate subset of the named arity.
    DegenerateSubset { arity: usize, subset: Vec<usize> },
    /// The whole set is not contained in an (a-1)-flat; the witness is the
    /// first (a+1)-subset spanning nonzero volume.
    NotInFlat { witness: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowVerdict {
    pub mode: RainbowMode,
    pub arity: usize,
    pub holds: bool,
    pub violation: Option<RainbowViolation>,
}

impl RainbowVerdict {
    fn pass(mode: RainbowMode, arity: usize) -> Self {
        Self { mode, arity, holds: true, violation: None }
    }

    fn fail(mode: RainbowMode, arity: usize, violation: RainbowViolation) -> Self {
        Self { mode, arity, holds: false, violation: Some(violation) }
    }
}

fn check_arity(ps: &PointSet, a: usize, mode: RainbowMode) -> Result<(), RainbowError> {
    if ps.is_empty() {
        return Err(RainbowError::EmptySet);
    }
    if a < 2 || a > ps.len() {
        return Err(RainbowError::InvalidArity { arity: a, points: ps.len() });
    }
    if mode == RainbowMode::Strict && a > ps.dim() + 1 {
        return Err(RainbowError::StrictArityTooLarge { arity: a, max: ps.dim() + 1 });
    }
    Ok(())
}

/// One arity layer: scan subsets in lexicographic order, flag the first
/// degenerate subset (when forbidden) or the first volume collision.
fn level_check(
    ps: &PointSet,
    mode: RainbowMode,
    report_arity: usize,
    a: usize,
    forbid_degenerate: bool,
) -> Result<RainbowVerdict, RainbowError> {
    let vols = subset_squared_volumes(ps, a)?;
    let mut seen: HashMap<&Rational, usize> = HashMap::new();
    for (rank, v) in vols.iter().enumerate() {
        if v.is_zero() {
            if forbid_degenerate {
                return Ok(RainbowVerdict::fail(
                    mode,
                    report_arity,
                    RainbowViolation::DegenerateSubset {
                        arity: a,
                        subset: unrank_subset(ps.len(), a, rank as u128),
                    },
                ));
            }
            continue;
        }
        match seen.get(v.value()) {
            Some(&first) => {
                return Ok(RainbowVerdict::fail(
                    mode,
                    report_arity,
                    RainbowViolation::EqualVolume {
                        arity: a,
                        first: unrank_subset(ps.len(), a, first as u128),
                        second: unrank_subset(ps.len(), a, rank as u128),
                    },
                ));
            }
            None => {
                seen.insert(v.value(), rank);
            }
        }
    }
    Ok(RainbowVerdict::pass(mode, report_arity))
}

/// Check the rainbow property at one arity. The verdict carries the first
/// violation in lexicographic scan order, which makes reruns byte-stable.
pub fn check_rainbow(ps: &PointSet, a: usize, mode: RainbowMode) -> Result<RainbowVerdict, RainbowError> {
    check_arity(ps, a, mode)?;
    match mode {
        RainbowMode::Plain => level_check(ps, mode, a, a, false),
        RainbowMode::Strong => level_check(ps, mode, a, a, true),
        RainbowMode::Strict => {
            for sub_arity in 2..=a {
                let v = level_check(ps, mode, a, sub_arity, true)?;
                if !v.holds {
                    return Ok(v);
                }
            }
            if affine_rank(ps.points())? > a - 1 {
                let witness = first_nondegenerate_subset(ps, a + 1)?
                    .expect("rank above a-1 forces a nondegenerate (a+1)-subset");
                return Ok(RainbowVerdict::fail(
                    mode,
                    a,
                    RainbowViolation::NotInFlat { witness },
                ));
            }
            Ok(RainbowVerdict::pass(mode, a))
        }
    }
}

fn first_nondegenerate_subset(ps: &PointSet, a: usize) -> Result<Option<Vec<usize>>, RainbowError> {
    if a > ps.len() {
        return Ok(None);
    }
    for s in subsets(ps.len(), a) {
        if !squared_volume(&ps.select(&s))?.is_zero() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Largest a in 2..=min(dim+1, n) at which the strict property holds.
pub fn strict_level(ps: &PointSet) -> Result<Option<usize>, RainbowError> {
    if ps.len() < 2 {
        return Err(RainbowError::InvalidArity { arity: 2, points: ps.len() });
    }
    let top = (ps.dim() + 1).min(ps.len());
    for a in (2..=top).rev() {
        if check_rainbow(ps, a, RainbowMode::Strict)?.holds {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    /// Branch and bound over inclusion masks; first optimum found is the
    /// lexicographically least maximum subset.
    Exact,
    /// Single pass keeping each point that stays legal. Fast lower bound.
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Exact search refuses larger ground sets outright.
    pub max_exact_points: usize,
    /// Node cap for the branch and bound.
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_exact_points: 16, max_nodes: 20_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxRainbowResult {
    pub indices: Vec<usize>,
    pub verdict: RainbowVerdict,
    pub nodes: u64,
}

/// Conflict hypergraph: minimal index sets that must not all survive.
fn conflict_masks(ps: &PointSet, a: usize, mode: RainbowMode) -> Result<Vec<u64>, RainbowError> {
    let n = ps.len();
    let mask_of = |s: &[usize]| s.iter().fold(0u64, |m, &i| m | 1 << i);
    let mut bad: HashSet<u64> = HashSet::new();
    let arities: Vec<usize> = match mode {
        RainbowMode::Plain | RainbowMode::Strong => vec![a],
        RainbowMode::Strict => (2..=a).collect(),
    };
    for ar in arities {
        for (vol, ranks) in volume_classes(ps, ar)? {
            if vol.is_zero() {
                if mode != RainbowMode::Plain {
                    for &rank in &ranks {
                        bad.insert(mask_of(&unrank_subset(n, ar, rank as u128)));
                    }
                }
            } else {
                for i in 0..ranks.len() {
                    for j in i + 1..ranks.len() {
                        let first = unrank_subset(n, ar, ranks[i] as u128);
                        let second = unrank_subset(n, ar, ranks[j] as u128);
                        bad.insert(mask_of(&first) | mask_of(&second));
                    }
                }
            }
        }
    }
    if mode == RainbowMode::Strict && n > a {
        for (rank, v) in subset_squared_volumes(ps, a + 1)?.iter().enumerate() {
            if !v.is_zero() {
                bad.insert(mask_of(&unrank_subset(n, a + 1, rank as u128)));
            }
        }
    }
    let mut out: Vec<u64> = bad.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

struct ExactSearch<'a> {
    n: usize,
    by_elem: &'a [Vec<u64>],
    max_nodes: u64,
    nodes: u64,
    best_mask: u64,
    best_count: u32,
}

impl ExactSearch<'_> {
    fn run(&mut self, idx: usize, mask: u64, count: u32) -> Result<(), RainbowError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(RainbowError::BudgetExceeded {
                detail: format!("exact search exceeded {} nodes", self.max_nodes),
            });
        }
        if idx == self.n {
            if count > self.best_count {
                self.best_count = count;
                self.best_mask = mask;
            }
            return Ok(());
        }
        if count + (self.n - idx) as u32 <= self.best_count {
            return Ok(());
        }
        let with = mask | 1 << idx;
        if self.by_elem[idx].iter().all(|&b| b & with != b) {
            self.run(idx + 1, with, count + 1)?;
        }
        self.run(idx + 1, mask, count)
    }
}

/// Largest subset on which the rainbow property holds at the given arity and
/// mode. Subsets smaller than the arity hold vacuously. The verdict in the
/// result re-checks the returned subset from scratch.
pub fn max_rainbow_subset(
    ps: &PointSet,
    a: usize,
    mode: RainbowMode,
    method: SearchMethod,
    budget: &SearchBudget,
) -> Result<MaxRainbowResult, RainbowError> {
    check_arity(ps, a, mode)?;
    let n = ps.len();
    if n > 64 {
        return Err(RainbowError::TooManyPoints { found: n, max: 64 });
    }
    if method == SearchMethod::Exact && n > budget.max_exact_points {
        return Err(RainbowError::BudgetExceeded {
            detail: format!(
                "exact search limited to {} points, got {}",
                budget.max_exact_points, n
            ),
        });
    }
    let bad = conflict_masks(ps, a, mode)?;
    let by_elem: Vec<Vec<u64>> = (0..n)
        .map(|i| bad.iter().copied().filter(|b| b >> i & 1 == 1).collect())
        .collect();

    let (mask, nodes) = match method {
        SearchMethod::Greedy => {
            let mut mask = 0u64;
            for i in 0..n {
                let with = mask | 1 << i;
                if by_elem[i].iter().all(|&b| b & with != b) {
                    mask = with;
                }
            }
            (mask, 0)
        }
        SearchMethod::Exact => {
            let mut search = ExactSearch {
                n,
                by_elem: &by_elem,
                max_nodes: budget.max_nodes,
                nodes: 0,
                best_mask: 0,
                best_count: 0,
            };
            search.run(0, 0, 0)?;
            (search.best_mask, search.nodes)
        }
    };
    let indices: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
    let verdict = if indices.len() >= a {
        check_rainbow(&ps.subset(&indices), a, mode)?
    } else {
        RainbowVerdict::pass(mode, a)
    };
    Ok(MaxRainbowResult { indices, verdict, nodes })
}

const PLACEMENT_ATTEMPTS: usize = 500;

fn random_rational(rng: &mut ChaCha8Rng, scale: i64) -> Rational {
    let num = rng.gen_range(-1000 * scale..=1000 * scale);
    let den = rng.gen_range(1..=1000 * scale);
    Rational::new(num.into(), den.into())
}

/// Random rational points, placed one at a time and rejected unless every
/// new subset of every arity up to dim + 1 spans a fresh nonzero volume.
/// The output passes the strict check at every feasible arity by
/// construction; rejection sampling merely retries until that holds.
pub fn gen_general_position(n: usize, dim: usize, seed: u64) -> Result<PointSet, RainbowError> {
    if n == 0 || dim == 0 {
        return Err(RainbowError::BadGenerationRequest {
            detail: "a positive point count and dimension".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<RationalPoint> = Vec::with_capacity(n);
    let mut seen: HashMap<usize, HashSet<Rational>> = (2..=dim + 1).map(|a| (a, HashSet::new())).collect();
    for i in 0..n {
        let mut placed = false;
        for attempt in 1..=PLACEMENT_ATTEMPTS {
            let scale = attempt as i64;
            let coords: Vec<Rational> = (0..dim).map(|_| random_rational(&mut rng, scale)).collect();
            let cand = RationalPoint::new(coords)?;
            if let Some(fresh) = admissible_volumes(&points, &cand, dim, &seen)? {
                for (a, v) in fresh {
                    seen.get_mut(&a).unwrap().insert(v);
                }
                points.push(cand);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(RainbowError::GenerationFailed {
                point_index: i,
                attempts: PLACEMENT_ATTEMPTS,
            });
        }
    }
    Ok(PointSet::new(dim, points)?)
}

/// Volumes the candidate would add, or None if any is zero or collides with
/// an existing or sibling volume at the same arity.
fn admissible_volumes(
    points: &[RationalPoint],
    cand: &RationalPoint,
    dim: usize,
    seen: &HashMap<usize, HashSet<Rational>>,
) -> Result<Option<Vec<(usize, Rational)>>, RainbowError> {
    let mut fresh: Vec<(usize, Rational)> = Vec::new();
    let mut local: HashMap<usize, HashSet<Rational>> = HashMap::new();
    for a in 2..=(dim + 1).min(points.len() + 1) {
        for others in points.iter().combinations(a - 1) {
            let mut tuple: Vec<RationalPoint> = others.into_iter().cloned().collect();
            tuple.push(cand.clone());
            let v = squared_volume(&tuple)?.into_inner();
            if v.is_zero() {
                return Ok(None);
            }
            if seen[&a].contains(&v) || !local.entry(a).or_default().insert(v.clone()) {
                return Ok(None);
            }
            fresh.push((a, v));
        }
    }
    Ok(Some(fresh))
}

/// Points on horizontal lines y = 0, 1, ..., one class per line, x
/// coordinates rejected until all pairwise squared distances across the
/// whole set are distinct and nonzero. Classes come back as consecutive
/// index blocks.
pub fn gen_parallel_lines(
    sizes: &[usize],
    dim: usize,
    seed: u64,
) -> Result<(PointSet, Partition), RainbowError> {
    if sizes.len() < 2 || dim < 2 {
        return Err(RainbowError::BadGenerationRequest {
            detail: "at least two lines and dimension at least 2".into(),
        });
    }
    if let Some(k) = sizes.iter().position(|&s| s < 2) {
        return Err(RainbowError::ClassTooSmall { class_index: k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<RationalPoint> = Vec::new();
    let mut distances: HashSet<Rational> = HashSet::new();
    for (line, &size) in sizes.iter().enumerate() {
        for _ in 0..size {
            let mut placed = false;
            for attempt in 1..=PLACEMENT_ATTEMPTS {
                let mut coords = vec![Rational::zero(); dim];
                coords[0] = random_rational(&mut rng, attempt as i64);
                coords[1] = Rational::from_integer((line as i64).into());
                let cand = RationalPoint::new(coords)?;
                let mut fresh: Vec<Rational> = Vec::new();
                let mut ok = true;
                for p in &points {
                    let d = squared_distance(p, &cand)?;
                    if d.is_zero() || distances.contains(&d) || fresh.contains(&d) {
                        ok = false;
                        break;
                    }
                    fresh.push(d);
                }
                if ok {
                    distances.extend(fresh);
                    points.push(cand);
                    placed = true;
                    break;
                }
            }
            if !placed {
                return Err(RainbowError::GenerationFailed {
                    point_index: points.len(),
                    attempts: PLACEMENT_ATTEMPTS,
                });
            }
        }
    }
    let classes: Vec<Vec<usize>> = {
        let mut out = Vec::with_capacity(sizes.len());
        let mut start = 0;
        for &s in sizes {
            out.push((start..start + s).collect());
            start += s;
        }
        out
    };
    let n = points.len();
    Ok((PointSet::new(dim, points)?, Partition::new(n, classes)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigViolation {
    /// A class admits no strict arity at all.
    ClassNotStrict {
        class_index: usize,
        violation: RainbowViolation,
    },
    /// The whole set fails the strong property at an arity the per-class
    /// levels would promise.
    GlobalNotStrong {
        arity: usize,
        violation: RainbowViolation,
    },
}

/// How a partitioned configuration interacts with the rainbow hierarchy:
/// per-class strict levels, their minimum, and whether the whole set is
/// strong at every arity up to that minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigReport {
    pub per_class_strict_level: Vec<Option<usize>>,
    /// Minimum per-class strict level; None when some class has none.
    pub a_star: Option<usize>,
    /// Largest arity at which the whole set is strong.
    pub global_strong_level: Option<usize>,
    /// Every class has a strict level and the whole set is strong at every
    /// arity up to the minimum.
    pub conclusion_holds: bool,
    pub violations: Vec<ConfigViolation>,
}

pub fn classify_config(ps: &PointSet, e: &Partition) -> Result<ConfigReport, RainbowError> {
    if e.n() != ps.len() {
        return Err(RainbowError::Pattern(PatternError::SizeMismatch {
            expected: ps.len(),
            found: e.n(),
        }));
    }
    let mut violations = Vec::new();
    let mut per_class = Vec::with_capacity(e.class_count());
    for (k, class) in e.classes().iter().enumerate() {
        if class.len() < 2 {
            return Err(RainbowError::ClassTooSmall { class_index: k });
        }
        let sub = ps.subset(class);
        let level = strict_level(&sub)?;
        if level.is_none() {
            let verdict = check_rainbow(&sub, 2, RainbowMode::Strict)?;
            violations.push(ConfigViolation::ClassNotStrict {
                class_index: k,
                violation: verdict
                    .violation
                    .expect("a class without a strict level fails at arity 2"),
            });
        }
        per_class.push(level);
    }
    // Option orders None below Some, so one missing level drags the minimum
    // to None
    let a_star = per_class.iter().copied().min().flatten();

    let top = (ps.dim() + 1).min(ps.len());
    let mut global_strong_level = None;
    for a in (2..=top).rev() {
        if check_rainbow(ps, a, RainbowMode::Strong)?.holds {
            global_strong_level = Some(a);
            break;
        }
    }
    let mut conclusion_holds = a_star.is_some();
    if let Some(limit) = a_star {
        for a in 2..=limit {
            let verdict = check_rainbow(ps, a, RainbowMode::Strong)?;
            if !verdict.holds {
                conclusion_holds = false;
                violations.push(ConfigViolation::GlobalNotStrong {
                    arity: a,
                    violation: verdict.violation.expect("failed verdict carries a violation"),
                });
            }
        }
    }
    Ok(ConfigReport {
        per_class_strict_level: per_class,
        a_star,
        global_strong_level,
        conclusion_holds,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar(coords: &[[i64; 2]]) -> PointSet {
        PointSet::new(
            2,
            coords.iter().map(|c| RationalPoint::from_ints(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn plain_check_frozen_examples() {
        // gaps 1, 2, 3: all pairwise distances distinct
        let good = planar(&[[0, 0], [1, 0], [3, 0]]);
        assert!(check_rainbow(&good, 2, RainbowMode::Plain).unwrap().holds);

        // gaps 1, 1, 2: the two unit gaps collide
        let bad = planar(&[[0, 0], [1, 0], [2, 0]]);
        let verdict = check_rainbow(&bad, 2, RainbowMode::Plain).unwrap();
        assert!(!verdict.holds);
        assert_eq!(
            verdict.violation,
            Some(RainbowViolation::EqualVolume {
                arity: 2,
                first: vec![0, 1],
                second: vec![1, 2],
            })
        );
    }

    #[test]
    fn grid_fails_plain_triangles() {
        // unit square: every triangle has area 1/2
        let grid = planar(&[[0, 0], [0, 1], [1, 0], [1, 1]]);
        let verdict = check_rainbow(&grid, 3, RainbowMode::Plain).unwrap();
        assert!(!verdict.holds);
        match verdict.violation.unwrap() {
            RainbowViolation::EqualVolume { arity, first, second } => {
                assert_eq!(arity, 3);
                assert_eq!(first, vec![0, 1, 2]);
                assert_eq!(second, vec![0, 1, 3]);
            }
            other => panic!("expected a volume collision, got {other:?}"),
        }
    }

    #[test]
    fn strong_flags_degenerate_subsets_plain_ignores_them() {
        // three collinear points with distinct gaps plus one apex
        let ps = planar(&[[0, 0], [1, 0], [3, 0], [0, 1]]);
        let plain = check_rainbow(&ps, 3, RainbowMode::Plain).unwrap();
        assert!(plain.holds);
        let strong = check_rainbow(&ps, 3, RainbowMode::Strong).unwrap();
        assert_eq!(
            strong.violation,
            Some(RainbowViolation::DegenerateSubset { arity: 3, subset: vec![0, 1, 2] })
        );
    }

    #[test]
    fn strict_requires_the_flat() {
        // Sidon-gap collinear points: strong at arity 2, and strict there
        // because the affine rank is 1
        let sidon = planar(&[[0, 0], [1, 0], [3, 0], [7, 0]]);
        assert!(check_rainbow(&sidon, 2, RainbowMode::Strict).unwrap().holds);
        assert_eq!(strict_level(&sidon).unwrap(), Some(2));

        // distinct distances but affinely spanning: the flat condition is
        // what fails
        let spread = planar(&[[0, 0], [1, 0], [3, 1]]);
        let verdict = check_rainbow(&spread, 2, RainbowMode::Strict).unwrap();
        assert_eq!(
            verdict.violation,
            Some(RainbowViolation::NotInFlat { witness: vec![0, 1, 2] })
        );
    }

    #[test]
    fn strict_level_of_generic_planar_points() {
        let ps = gen_general_position(5, 2, 42).unwrap();
        assert_eq!(strict_level(&ps).unwrap(), Some(3));
    }

    #[test]
    fn arity_validation() {
        let ps = planar(&[[0, 0], [1, 0]]);
        assert!(matches!(
            check_rainbow(&ps, 3, RainbowMode::Plain),
            Err(RainbowError::InvalidArity { .. })
        ));
        assert!(matches!(
            check_rainbow(&ps, 2, RainbowMode::Strict),
            Ok(_)
        ));
        let three = planar(&[[0, 0], [1, 0], [0, 1]]);
        assert!(matches!(
            check_rainbow(&three, 3, RainbowMode::Strict),
            Ok(_)
        ));
        assert!(matches!(
            strict_level(&planar(&[[0, 0]])),
            Err(RainbowError::InvalidArity { .. })
        ));
    }

    #[test]
    fn max_rainbow_exact_on_three_collinear() {
        let ps = planar(&[[0, 0], [1, 0], [2, 0]]);
        let res = max_rainbow_subset(
            &ps,
            2,
            RainbowMode::Plain,
            SearchMethod::Exact,
            &SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(res.indices, vec![0, 1]);
        assert!(res.verdict.holds);
    }

    #[test]
    fn max_rainbow_exact_on_grid_triangles() {
        let grid = planar(&[[0, 0], [0, 1], [1, 0], [1, 1]]);
        let res = max_rainbow_subset(
            &grid,
            3,
            RainbowMode::Plain,
            SearchMethod::Exact,
            &SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(res.indices.len(), 3);
        assert_eq!(res.indices, vec![0, 1, 2]);
    }

    /// Oracle: scan subsets largest-first in lexicographic order and
    /// re-check each candidate with the definition-level verdict.
    fn oracle_max(ps: &PointSet, a: usize, mode: RainbowMode) -> Vec<usize> {
        let n = ps.len();
        for size in (0..=n).rev() {
            for s in subsets(n, size) {
                let ok = if s.len() < a {
                    true
                } else {
                    check_rainbow(&ps.subset(&s), a, mode).unwrap().holds
                };
                if ok {
                    return s;
                }
            }
        }
        unreachable!("the empty set always qualifies")
    }

    #[test]
    fn exact_search_matches_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for trial in 0..12 {
            let n = rng.gen_range(4..8);
            // small coordinates force plenty of collisions
            let pts: Vec<RationalPoint> = (0..n)
                .map(|_| {
                    RationalPoint::from_ints(&[rng.gen_range(0..4), rng.gen_range(0..4)])
                })
                .collect();
            let ps = match PointSet::new(2, pts) {
                Ok(ps) => ps,
                Err(_) => continue,
            };
            if ps.has_duplicates() && rng.gen_bool(0.5) {
                continue;
            }
            for (a, mode) in [
                (2, RainbowMode::Plain),
                (2, RainbowMode::Strong),
                (3, RainbowMode::Plain),
                (3, RainbowMode::Strong),
                (2, RainbowMode::Strict),
            ] {
                if a > ps.len() {
                    continue;
                }
                let exact = max_rainbow_subset(
                    &ps,
                    a,
                    mode,
                    SearchMethod::Exact,
                    &SearchBudget::default(),
                )
                .unwrap();
                let oracle = oracle_max(&ps, a, mode);
                assert_eq!(
                    exact.indices, oracle,
                    "trial={trial} a={a} mode={mode:?}"
                );
                let greedy = max_rainbow_subset(
                    &ps,
                    a,
                    mode,
                    SearchMethod::Greedy,
                    &SearchBudget::default(),
                )
                .unwrap();
                assert!(greedy.indices.len() <= exact.indices.len());
                assert!(greedy.verdict.holds);
            }
        }
    }

    #[test]
    fn exact_search_budget_is_enforced() {
        let ps = planar(&[[0, 0], [1, 0], [2, 0], [4, 0], [8, 0]]);
        let tight = SearchBudget { max_exact_points: 16, max_nodes: 3 };
        assert!(matches!(
            max_rainbow_subset(&ps, 2, RainbowMode::Plain, SearchMethod::Exact, &tight),
            Err(RainbowError::BudgetExceeded { .. })
        ));
        let small = SearchBudget { max_exact_points: 3, max_nodes: 1 << 20 };
        assert!(matches!(
            max_rainbow_subset(&ps, 2, RainbowMode::Plain, SearchMethod::Exact, &small),
            Err(RainbowError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn generated_points_are_deterministic_and_generic() {
        let a = gen_general_position(8, 2, 99).unwrap();
        let b = gen_general_position(8, 2, 99).unwrap();
        assert_eq!(a.points(), b.points());
        let c = gen_general_position(8, 2, 100).unwrap();
        assert_ne!(a.points(), c.points());
        for arity in 2..=3 {
            assert!(check_rainbow(&a, arity, RainbowMode::Strong).unwrap().holds);
        }
        assert!(check_rainbow(&a, 3, RainbowMode::Strict).unwrap().holds);
    }

    #[test]
    fn parallel_lines_break_plain_triangles() {
        let (ps, e) = gen_parallel_lines(&[2, 2], 2, 7).unwrap();
        assert_eq!(ps.len(), 4);
        assert_eq!(e.classes(), &[vec![0, 1], vec![2, 3]]);
        // distances stay distinct
        assert!(check_rainbow(&ps, 2, RainbowMode::Strong).unwrap().holds);
        // sibling triangles over a shared base kill the triangle property
        let verdict = check_rainbow(&ps, 3, RainbowMode::Plain).unwrap();
        assert!(!verdict.holds);
        assert!(matches!(
            verdict.violation,
            Some(RainbowViolation::EqualVolume { arity: 3, .. })
        ));
    }

    #[test]
    fn classify_parallel_lines_config() {
        let (ps, e) = gen_parallel_lines(&[4, 4], 2, 11).unwrap();
        let report = classify_config(&ps, &e).unwrap();
        // each line is a strict-at-2 class; the plane forces level exactly 2
        assert_eq!(report.per_class_strict_level, vec![Some(2), Some(2)]);
        assert_eq!(report.a_star, Some(2));
        assert_eq!(report.global_strong_level, Some(2));
        assert!(report.conclusion_holds);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn classify_rejects_tiny_classes() {
        let ps = planar(&[[0, 0], [1, 0], [3, 0]]);
        let e = Partition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(
            classify_config(&ps, &e),
            Err(RainbowError::ClassTooSmall { class_index: 1 })
        ));
    }

    #[test]
    fn generator_rejects_bad_requests() {
        assert!(gen_general_position(0, 2, 1).is_err());
        assert!(gen_parallel_lines(&[3], 2, 1).is_err());
        assert!(gen_parallel_lines(&[2, 1], 2, 1).is_err());
        assert!(gen_parallel_lines(&[2, 2], 1, 1).is_err());
    }
}
