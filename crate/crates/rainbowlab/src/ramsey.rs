//! Colorings of r-subsets and homogeneous-set extraction.
//!
//! A [`Coloring`] is a total map from the r-subsets of {0..n-1} to colors
//! {0..c-1}, stored densely by lexicographic subset rank. On top of it sit
//! the volume-induced coloring of 2a-subsets of a point set, two engines for
//! finding homogeneous sets (exhaustive scan and iterated-pigeonhole
//! ramification), homogeneity relative to a parameter set, and the exhaustive
//! arrow check for small partition relations.

use std::collections::HashMap;

use itertools::Itertools;
use thiserror::Error;

use crate::combin::{binomial, is_strictly_increasing, merge_sorted, subset_rank, subsets};
use crate::geometry::{subset_squared_volumes, GeometryError, PointSet, SquaredVolume};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamseyError {
    #[error("arity {r} out of range for ground set of size {n}")]
    InvalidArity { r: usize, n: usize },
    #[error("coloring table has {found} entries, expected {expected}")]
    WrongColorCount { expected: usize, found: usize },
    #[error("color {color} exceeds declared color count {c}")]
    ColorOutOfRange { color: u32, c: u32 },
    #[error("coloring with {0} colors must declare c >= 1")]
    NoColors(u32),
    #[error("target size {m} out of range (need r = {r} <= m and enough ground elements)")]
    TargetOutOfRange { m: usize, r: usize },
    #[error("index set is not strictly increasing within 0..{n}")]
    MalformedIndexSet { n: usize },
    #[error("parameter set and candidate set must be disjoint")]
    ParameterOverlap,
    #[error("instance needs {needed} cases, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("instance too large to enumerate")]
    TooLarge,
    #[error("point set of {found} points is too small, need at least {needed}")]
    TooFewPoints { needed: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn check_index_set(n: usize, s: &[usize]) -> Result<(), RamseyError> {
    if !is_strictly_increasing(s) || s.last().is_some_and(|&x| x >= n) {
        return Err(RamseyError::MalformedIndexSet { n });
    }
    Ok(())
}

/// Total coloring of the r-subsets of {0..n-1} by colors below c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    r: usize,
    c: u32,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(n: usize, r: usize, c: u32, colors: Vec<u32>) -> Result<Self, RamseyError> {
        if r < 1 || r > n {
            return Err(RamseyError::InvalidArity { r, n });
        }
        if c < 1 {
            return Err(RamseyError::NoColors(c));
        }
        let expected = binomial(n, r);
        if expected > usize::MAX as u128 || colors.len() != expected as usize {
            return Err(RamseyError::WrongColorCount {
                expected: expected.min(usize::MAX as u128) as usize,
                found: colors.len(),
            });
        }
        if let Some(&bad) = colors.iter().find(|&&col| col >= c) {
            return Err(RamseyError::ColorOutOfRange { color: bad, c });
        }
        Ok(Self { n, r, c, colors })
    }

    /// Build from a function of the subset; the color count becomes
    /// max color + 1.
    pub fn from_fn<F>(n: usize, r: usize, mut f: F) -> Result<Self, RamseyError>
    where
        F: FnMut(&[usize]) -> u32,
    {
        if r < 1 || r > n {
            return Err(RamseyError::InvalidArity { r, n });
        }
        let colors: Vec<u32> = subsets(n, r).map(|s| f(&s)).collect();
        let c = colors.iter().copied().max().unwrap_or(0) + 1;
        Self::new(n, r, c, colors)
    }

    pub fn constant(n: usize, r: usize) -> Result<Self, RamseyError> {
        Self::from_fn(n, r, |_| 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Color of a strictly increasing r-subset.
    pub fn color(&self, subset: &[usize]) -> u32 {
        assert_eq!(subset.len(), self.r, "subset arity mismatch");
        assert!(
            is_strictly_increasing(subset) && subset.last().is_none_or(|&x| x < self.n),
            "subset must be strictly increasing within the ground set"
        );
        self.colors[subset_rank(self.n, subset) as usize]
    }

    pub fn is_constant(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }
}

/// Semantic content of one volume-induced color on a 2a-subset: for every
/// arity a' in {2..a}, which position subsets are degenerate and which pairs
/// of position subsets span equal volume.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArityCode {
    pub arity: usize,
    /// Degeneracy flag per a'-position-subset, lexicographic order.
    pub degenerate: Vec<bool>,
    /// Pairs of a'-position-subset ranks with equal squared volume, i < j.
    pub equal_pairs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VolumeColorCode {
    pub arities: Vec<ArityCode>,
}

/// A coloring together with the semantic code behind each dense color id.
#[derive(Debug, Clone)]
pub struct VolumeColoring {
    pub coloring: Coloring,
    /// codes[id] is the code of color id; ids are assigned first-seen over
    /// subsets in lexicographic order.
    pub codes: Vec<VolumeColorCode>,
}

/// Color the 2a-subsets of a point set by their internal volume relations:
/// degeneracy of every a'-subpattern (a' <= a) and equality of every pair of
/// same-size subpatterns. Two subsets get the same color exactly when these
/// relations coincide position-wise.
pub fn make_volume_coloring(ps: &PointSet, a: usize) -> Result<VolumeColoring, RamseyError> {
    if a < 2 {
        return Err(RamseyError::InvalidArity { r: a, n: ps.len() });
    }
    let n = ps.len();
    let r = 2 * a;
    if n < r {
        return Err(RamseyError::TooFewPoints { needed: r, found: n });
    }
    // volumes of all a'-subsets of the whole set, per arity
    let mut tables: Vec<(usize, Vec<SquaredVolume>)> = Vec::new();
    for ar in 2..=a {
        tables.push((ar, subset_squared_volumes(ps, ar)?));
    }
    // position subsets of {0..2a-1} per arity, lexicographic
    let positions: Vec<(usize, Vec<Vec<usize>>)> = (2..=a)
        .map(|ar| (ar, subsets(r, ar).collect()))
        .collect();

    let mut ids: HashMap<VolumeColorCode, u32> = HashMap::new();
    let mut codes: Vec<VolumeColorCode> = Vec::new();
    let mut colors: Vec<u32> = Vec::with_capacity(binomial(n, r) as usize);
    for s in subsets(n, r) {
        let mut arities = Vec::with_capacity(a - 1);
        for ((ar, table), (_, pos)) in tables.iter().zip(&positions) {
            let vols: Vec<&SquaredVolume> = pos
                .iter()
                .map(|p| {
                    let global: Vec<usize> = p.iter().map(|&i| s[i]).collect();
                    &table[subset_rank(n, &global) as usize]
                })
                .collect();
            let degenerate: Vec<bool> = vols.iter().map(|v| v.is_zero()).collect();
            let mut equal_pairs = Vec::new();
            for i in 0..vols.len() {
                for j in i + 1..vols.len() {
                    if vols[i] == vols[j] {
                        equal_pairs.push((i as u32, j as u32));
                    }
                }
            }
            arities.push(ArityCode {
                arity: *ar,
                degenerate,
                equal_pairs,
            });
        }
        let code = VolumeColorCode { arities };
        let id = match ids.get(&code) {
            Some(&id) => id,
            None => {
                let id = codes.len() as u32;
                ids.insert(code.clone(), id);
                codes.push(code);
                id
            }
        };
        colors.push(id);
    }
    let c = codes.len() as u32;
    Ok(VolumeColoring {
        coloring: Coloring::new(n, r, c, colors)?,
        codes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomogeneityMethod {
    /// Scan m-subsets in lexicographic order; first hit wins. Exact but only
    /// viable for tiny ground sets.
    Exhaustive,
    /// Iterated-pigeonhole ramification. May miss an existing homogeneous
    /// set; every success is re-verified before being returned.
    Stepwise,
}

/// True iff the coloring is constant on the r-subsets of x. Vacuous when x
/// has fewer than r elements.
pub fn verify_homogeneous(g: &Coloring, x: &[usize]) -> Result<bool, RamseyError> {
    check_index_set(g.n(), x)?;
    let mut first: Option<u32> = None;
    for u in x.iter().copied().combinations(g.r()) {
        let col = g.color(&u);
        match first {
            None => first = Some(col),
            Some(f) if f != col => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

fn exhaustive_homogeneous(g: &Coloring, m: usize) -> Option<Vec<usize>> {
    for x in subsets(g.n(), m) {
        let mut first: Option<u32> = None;
        let mut ok = true;
        'scan: for u in x.iter().copied().combinations(g.r()) {
            let col = g.color(&u);
            match first {
                None => first = Some(col),
                Some(f) if f != col => {
                    ok = false;
                    break 'scan;
                }
                _ => {}
            }
        }
        if ok {
            return Some(x);
        }
    }
    None
}

/// Ramification pass: returns a subset of `live` on which the induced
/// coloring u -> g(prefix ++ u) is constant on r-subsets. The prefix always
/// sits strictly below everything in `live`.
fn ramify(g: &Coloring, prefix: &mut Vec<usize>, live: Vec<usize>, r: usize) -> Vec<usize> {
    if r == 1 {
        let mut buckets: HashMap<u32, Vec<usize>> = HashMap::new();
        for &v in &live {
            let mut tuple = prefix.clone();
            tuple.push(v);
            buckets.entry(g.color(&tuple)).or_default().push(v);
        }
        return best_bucket(buckets);
    }
    let mut chosen: Vec<(usize, u32)> = Vec::new();
    let mut cur = live;
    while cur.len() >= r {
        let v = cur[0];
        let rest = cur[1..].to_vec();
        prefix.push(v);
        let h = ramify(g, prefix, rest, r - 1);
        prefix.pop();
        if h.len() < r - 1 {
            break;
        }
        let mut tuple = prefix.clone();
        tuple.push(v);
        tuple.extend_from_slice(&h[..r - 1]);
        chosen.push((v, g.color(&tuple)));
        cur = h;
    }
    let mut buckets: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, col) in chosen {
        buckets.entry(col).or_default().push(v);
    }
    best_bucket(buckets)
}

/// Largest bucket; ties go to the one with the smallest least element.
fn best_bucket(buckets: HashMap<u32, Vec<usize>>) -> Vec<usize> {
    buckets
        .into_values()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .unwrap_or_default()
}

/// Find a set of size at least m on which g is constant over r-subsets, or
/// report failure. Exhaustive returns the lexicographically first m-subset;
/// stepwise may return a larger set and never returns an unverified one.
pub fn find_homogeneous(
    g: &Coloring,
    m: usize,
    method: HomogeneityMethod,
) -> Result<Option<Vec<usize>>, RamseyError> {
    if m < g.r() || m > g.n() {
        return Err(RamseyError::TargetOutOfRange { m, r: g.r() });
    }
    match method {
        HomogeneityMethod::Exhaustive => Ok(exhaustive_homogeneous(g, m)),
        HomogeneityMethod::Stepwise => {
            let sel = ramify(g, &mut Vec::new(), (0..g.n()).collect(), g.r());
            if sel.len() >= m && verify_homogeneous(g, &sel)? {
                Ok(Some(sel))
            } else {
                Ok(None)
            }
        }
    }
}

/// Pick exhaustive scan when the candidate space is small, ramification
/// otherwise.
pub(crate) fn find_homogeneous_auto(g: &Coloring, m: usize) -> Result<Option<Vec<usize>>, RamseyError> {
    let work = binomial(g.n(), m).saturating_mul(binomial(m, g.r()));
    if work <= 2_000_000 {
        find_homogeneous(g, m, HomogeneityMethod::Exhaustive)
    } else {
        find_homogeneous(g, m, HomogeneityMethod::Stepwise)
    }
}

/// True iff for every subset s of the parameter set with |s| < r, the induced
/// coloring u -> g(s ++ u) is constant on the (r-|s|)-subsets of x. x must be
/// disjoint from the parameter set.
pub fn verify_homogeneous_over(
    g: &Coloring,
    params: &[usize],
    x: &[usize],
) -> Result<bool, RamseyError> {
    check_index_set(g.n(), params)?;
    check_index_set(g.n(), x)?;
    if x.iter().any(|i| params.binary_search(i).is_ok()) {
        return Err(RamseyError::ParameterOverlap);
    }
    let r = g.r();
    for s_len in 0..r {
        let q = r - s_len;
        if x.len() < q {
            continue;
        }
        for s in params.iter().copied().combinations(s_len) {
            let mut first: Option<u32> = None;
            for u in x.iter().copied().combinations(q) {
                let col = g.color(&merge_sorted(&s, &u));
                match first {
                    None => first = Some(col),
                    Some(f) if f != col => return Ok(false),
                    _ => {}
                }
            }
        }
    }
    Ok(true)
}

/// Homogeneous-over-parameters search restricted to subsets of `pool`.
///
/// Reduction: color the r-subsets u of the pool by the vector of
/// g(s ++ u[P]) over every parameter subset s with |s| < r and every position
/// pattern P of size r-|s|, find a plainly homogeneous set for that product
/// coloring, and verify the result against the definition before returning
/// it. Verification failure is reported as an ordinary miss.
pub fn find_homogeneous_over_in_pool(
    g: &Coloring,
    params: &[usize],
    pool: &[usize],
    m: usize,
) -> Result<Option<Vec<usize>>, RamseyError> {
    check_index_set(g.n(), params)?;
    check_index_set(g.n(), pool)?;
    if pool.iter().any(|i| params.binary_search(i).is_ok()) {
        return Err(RamseyError::ParameterOverlap);
    }
    let r = g.r();
    if m < r || m > pool.len() {
        return Err(RamseyError::TargetOutOfRange { m, r });
    }

    // (parameter subset, position pattern) component list, fixed order
    let mut components: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for s_len in 0..r {
        for s in params.iter().copied().combinations(s_len) {
            for pat in subsets(r, r - s_len) {
                components.push((s.clone(), pat));
            }
        }
    }

    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut colors: Vec<u32> = Vec::with_capacity(binomial(pool.len(), r) as usize);
    for u in subsets(pool.len(), r) {
        let u_global: Vec<usize> = u.iter().map(|&i| pool[i]).collect();
        let key: Vec<u32> = components
            .iter()
            .map(|(s, pat)| {
                let picked: Vec<usize> = pat.iter().map(|&i| u_global[i]).collect();
                g.color(&merge_sorted(s, &picked))
            })
            .collect();
        let next = ids.len() as u32;
        let id = *ids.entry(key).or_insert(next);
        colors.push(id);
    }
    let product = Coloring::new(pool.len(), r, ids.len() as u32, colors)?;

    let candidate = find_homogeneous_auto(&product, m)?;
    let Some(local) = candidate else {
        return Ok(None);
    };
    let global: Vec<usize> = local.iter().map(|&i| pool[i]).collect();
    if verify_homogeneous_over(g, params, &global)? {
        Ok(Some(global))
    } else {
        Ok(None)
    }
}

/// Homogeneous-over-parameters search over the whole complement of the
/// parameter set. With an empty parameter set this is exactly
/// [`find_homogeneous`] up to engine choice.
pub fn find_homogeneous_over(
    g: &Coloring,
    params: &[usize],
    m: usize,
) -> Result<Option<Vec<usize>>, RamseyError> {
    check_index_set(g.n(), params)?;
    let pool: Vec<usize> = (0..g.n())
        .filter(|i| params.binary_search(i).is_err())
        .collect();
    find_homogeneous_over_in_pool(g, params, &pool, m)
}

/// n -> (m)^r with c colors and parameter sets of size at most p: for every
/// coloring and every such parameter set A there must be an m-subset of the
/// complement of A homogeneous over A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrowQuery {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub c: u32,
    pub p: usize,
}

impl ArrowQuery {
    fn validate(&self) -> Result<(), RamseyError> {
        if self.r < 1 || self.r > self.m || self.m > self.n {
            return Err(RamseyError::TargetOutOfRange { m: self.m, r: self.r });
        }
        if self.c < 1 {
            return Err(RamseyError::NoColors(self.c));
        }
        if self.p > self.n {
            return Err(RamseyError::TargetOutOfRange { m: self.p, r: 0 });
        }
        Ok(())
    }
}

/// Exhaustive case count: colorings times parameter sets.
pub fn arrow_case_count(q: &ArrowQuery) -> Result<u128, RamseyError> {
    q.validate()?;
    let positions = binomial(q.n, q.r);
    if positions > 4096 {
        return Err(RamseyError::TooLarge);
    }
    let colorings = (q.c as u128)
        .checked_pow(positions as u32)
        .ok_or(RamseyError::TooLarge)?;
    let param_sets: u128 = (0..=q.p).map(|k| binomial(q.n, k)).sum();
    colorings.checked_mul(param_sets).ok_or(RamseyError::TooLarge)
}

fn decode_coloring(mut idx: u64, c: u32, len: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for slot in v.iter_mut() {
        *slot = (idx % c as u64) as u32;
        idx /= c as u64;
    }
    v
}

/// Direct homogeneity-over check against a raw color table.
fn raw_homogeneous_over(n: usize, r: usize, colors: &[u32], params: &[usize], x: &[usize]) -> bool {
    for s_len in 0..r {
        let q = r - s_len;
        if x.len() < q {
            continue;
        }
        for s in params.iter().copied().combinations(s_len) {
            let mut first: Option<u32> = None;
            for u in x.iter().copied().combinations(q) {
                let tuple = merge_sorted(&s, &u);
                let col = colors[subset_rank(n, &tuple) as usize];
                match first {
                    None => first = Some(col),
                    Some(f) if f != col => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn coloring_admits_all(q: &ArrowQuery, colors: &[u32], param_sets: &[Vec<usize>]) -> bool {
    param_sets.iter().all(|a| {
        let complement: Vec<usize> = (0..q.n).filter(|i| a.binary_search(i).is_err()).collect();
        if q.m > complement.len() {
            return false;
        }
        complement
            .iter()
            .copied()
            .combinations(q.m)
            .any(|x| raw_homogeneous_over(q.n, q.r, colors, a, &x))
    })
}

/// Decide the arrow relation by enumerating every coloring and every
/// parameter set. Errors out rather than starting when the case count
/// exceeds the budget. Dispatches over colorings in parallel when the
/// `parallel` feature is on; the verdict is a pure conjunction, so the
/// schedule cannot change it.
pub fn arrow_check(q: &ArrowQuery, budget: u64) -> Result<bool, RamseyError> {
    let cases = arrow_case_count(q)?;
    if cases > budget as u128 {
        return Err(RamseyError::BudgetExceeded { needed: cases, budget });
    }
    let positions = binomial(q.n, q.r) as usize;
    let total = (q.c as u128).pow(positions as u32) as u64;
    let param_sets: Vec<Vec<usize>> = (0..=q.p).flat_map(|k| subsets(q.n, k)).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..total).into_par_iter().all(|idx| {
            let colors = decode_coloring(idx, q.c, positions);
            coloring_admits_all(q, &colors, &param_sets)
        }))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..total).all(|idx| {
            let colors = decode_coloring(idx, q.c, positions);
            coloring_admits_all(q, &colors, &param_sets)
        }))
    }
}

/// Sequential twin of [`arrow_check`]; identical verdicts.
pub fn arrow_check_seq(q: &ArrowQuery, budget: u64) -> Result<bool, RamseyError> {
    let cases = arrow_case_count(q)?;
    if cases > budget as u128 {
        return Err(RamseyError::BudgetExceeded { needed: cases, budget });
    }
    let positions = binomial(q.n, q.r) as usize;
    let total = (q.c as u128).pow(positions as u32) as u64;
    let param_sets: Vec<Vec<usize>> = (0..=q.p).flat_map(|k| subsets(q.n, k)).collect();
    Ok((0..total).all(|idx| {
        let colors = decode_coloring(idx, q.c, positions);
        coloring_admits_all(q, &colors, &param_sets)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RationalPoint;

    fn line_points(xs: &[i64]) -> PointSet {
        let pts = xs.iter().map(|&x| RationalPoint::from_ints(&[x, 0])).collect();
        PointSet::new(2, pts).unwrap()
    }

    /// |i-j| mod 5 in {1,4} on pairs from a 5-cycle: no homogeneous triple.
    fn pentagon() -> Coloring {
        Coloring::from_fn(5, 2, |s| {
            let d = (s[1] - s[0]) % 5;
            u32::from(d == 1 || d == 4)
        })
        .unwrap()
    }

    #[test]
    fn coloring_rejects_malformed_tables() {
        assert!(Coloring::new(4, 2, 2, vec![0; 5]).is_err());
        assert!(Coloring::new(4, 2, 2, vec![0, 0, 0, 0, 0, 2]).is_err());
        assert!(Coloring::new(4, 0, 2, vec![]).is_err());
    }

    #[test]
    fn volume_coloring_on_four_collinear_points() {
        // x-coordinates 0, 1, 2, 4: squared gaps repeat as (0,1)=(1,2) and
        // (0,2)=(2,3)
        let ps = line_points(&[0, 1, 2, 4]);
        let vc = make_volume_coloring(&ps, 2).unwrap();
        assert_eq!(vc.coloring.colors().len(), 1);
        assert_eq!(vc.codes.len(), 1);
        let code = &vc.codes[0];
        assert_eq!(code.arities.len(), 1);
        let ac = &code.arities[0];
        assert_eq!(ac.arity, 2);
        assert!(ac.degenerate.iter().all(|&b| !b));
        // position pairs in lex order: {0,1}=0 {0,2}=1 {0,3}=2 {1,2}=3 {1,3}=4 {2,3}=5
        assert_eq!(ac.equal_pairs, vec![(0, 3), (1, 5)]);
    }

    #[test]
    fn volume_coloring_is_isometry_stable() {
        let ps = line_points(&[0, 1, 2, 4, 7]);
        let translated = PointSet::new(
            2,
            ps.points()
                .iter()
                .map(|p| {
                    let c = p.coords();
                    RationalPoint::new(vec![&c[0] + crate::geometry::Rational::from_integer(9.into()), -&c[1]]).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let a = make_volume_coloring(&ps, 2).unwrap();
        let b = make_volume_coloring(&translated, 2).unwrap();
        assert_eq!(a.coloring.colors(), b.coloring.colors());
        assert_eq!(a.codes.len(), b.codes.len());
        for (x, y) in a.codes.iter().zip(&b.codes) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn constant_coloring_yields_initial_segment() {
        let g = Coloring::constant(7, 2).unwrap();
        assert_eq!(
            find_homogeneous(&g, 4, HomogeneityMethod::Exhaustive).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
        let st = find_homogeneous(&g, 4, HomogeneityMethod::Stepwise)
            .unwrap()
            .unwrap();
        assert!(st.len() >= 4);
        assert!(verify_homogeneous(&g, &st).unwrap());
    }

    #[test]
    fn pentagon_has_no_homogeneous_triple() {
        let g = pentagon();
        assert_eq!(find_homogeneous(&g, 3, HomogeneityMethod::Exhaustive).unwrap(), None);
        // independent oracle: scan all triples directly
        let mut best = 0;
        for x in subsets(5, 3) {
            if verify_homogeneous(&g, &x).unwrap() {
                best = best.max(x.len());
            }
        }
        assert_eq!(best, 0);
        // every pair is trivially homogeneous
        assert!(verify_homogeneous(&g, &[1, 4]).unwrap());
    }

    #[test]
    fn stepwise_successes_verify_on_random_colorings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(4..9);
            let r = rng.gen_range(1..3usize).min(n);
            let c = rng.gen_range(1..4u32);
            let g = Coloring::from_fn(n, r, |_| rng.gen_range(0..c)).unwrap();
            let m = rng.gen_range(r..=n);
            if let Some(x) = find_homogeneous(&g, m, HomogeneityMethod::Stepwise).unwrap() {
                assert!(x.len() >= m);
                assert!(verify_homogeneous(&g, &x).unwrap());
            }
        }
    }

    #[test]
    fn homogeneous_over_empty_params_matches_plain() {
        let g = pentagon();
        assert_eq!(find_homogeneous_over(&g, &[], 2).unwrap(), Some(vec![0, 1]));
        assert_eq!(find_homogeneous_over(&g, &[], 3).unwrap(), None);
    }

    #[test]
    fn homogeneous_over_param_cardinality_coloring() {
        // color depends only on how many elements land in {0, 1}: the whole
        // complement qualifies
        let params = vec![0usize, 1];
        let g = Coloring::from_fn(7, 2, |s| {
            s.iter().filter(|&&i| i < 2).count() as u32
        })
        .unwrap();
        let x = find_homogeneous_over(&g, &params, 5).unwrap().unwrap();
        assert_eq!(x, vec![2, 3, 4, 5, 6]);
        assert!(verify_homogeneous_over(&g, &params, &x).unwrap());
    }

    #[test]
    fn homogeneous_over_rejects_small_targets() {
        let g = pentagon();
        assert!(matches!(
            find_homogeneous_over(&g, &[0], 1),
            Err(RamseyError::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn arrow_frozen_small_cases() {
        // two colors on pairs: 5 points can avoid a homogeneous triple, 6
        // cannot
        let no = ArrowQuery { n: 5, m: 3, r: 2, c: 2, p: 0 };
        let yes = ArrowQuery { n: 6, m: 3, r: 2, c: 2, p: 0 };
        assert!(!arrow_check(&no, 1 << 26).unwrap());
        assert!(arrow_check(&yes, 1 << 26).unwrap());
        assert_eq!(arrow_check_seq(&no, 1 << 26).unwrap(), false);
    }

    #[test]
    fn arrow_monotone_in_ground_size() {
        // once the relation holds it keeps holding with one more point
        let seven = ArrowQuery { n: 7, m: 3, r: 2, c: 2, p: 0 };
        assert!(arrow_check(&seven, 1 << 26).unwrap());
    }

    #[test]
    fn arrow_budget_is_enforced() {
        let q = ArrowQuery { n: 6, m: 3, r: 2, c: 2, p: 0 };
        assert!(matches!(
            arrow_check(&q, 10),
            Err(RamseyError::BudgetExceeded { .. })
        ));
    }
}
