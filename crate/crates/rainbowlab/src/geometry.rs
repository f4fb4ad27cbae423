//! Exact volumes of rational point tuples.
//!
//! Everything here is arbitrary-precision rational arithmetic; nothing ever
//! rounds. The comparable quantity is the *squared* (a-1)-dimensional simplex
//! volume of an a-tuple, so square roots never materialize. Two independent
//! routes are kept side by side: the Gram-determinant route
//! ([`squared_volume`]) and the bordered squared-distance determinant
//! ([`cayley_menger_det`]); they are tied together by the identity
//!
//! ```text
//! cayley_menger_det = (-1)^a * 2^(a-1) * ((a-1)!)^2 * squared_volume
//! ```
//!
//! which the test suite checks exhaustively over small arities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

use crate::combin::subsets;

/// Exact rational scalar. Always in lowest terms with positive denominator;
/// arithmetic never overflows or rounds.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("empty tuple has no volume")]
    EmptyTuple,
    #[error("point has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("tuples have different arities: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("points must have dimension at least 1")]
    ZeroDimension,
    #[error("arity {arity} out of range for {points} points")]
    ArityOutOfRange { arity: usize, points: usize },
}

/// A point of Q^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        Ok(Self { coords })
    }

    /// Convenience constructor for integer coordinates.
    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            coords: coords
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

/// A finite indexed family of points sharing one dimension. Duplicate points
/// are permitted but can be queried, since searches treat them specially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<RationalPoint>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<RationalPoint>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        for p in &points {
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &RationalPoint {
        &self.points[i]
    }

    /// Clone the points selected by sorted indices.
    pub fn select(&self, indices: &[usize]) -> Vec<RationalPoint> {
        indices.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Sub-PointSet on the selected indices (order preserved).
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.select(indices),
        }
    }

    /// Index pairs of coinciding points, lexicographic.
    pub fn duplicate_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                if self.points[i] == self.points[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_duplicates(&self) -> bool {
        !self.duplicate_pairs().is_empty()
    }
}

/// Squared (a-1)-dimensional simplex volume. Never negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquaredVolume(Rational);

impl SquaredVolume {
    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for SquaredVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_common_dim(points: &[RationalPoint]) -> Result<usize, GeometryError> {
    let first = points.first().ok_or(GeometryError::EmptyTuple)?;
    let d = first.dim();
    for p in points {
        if p.dim() != d {
            return Err(GeometryError::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
    }
    Ok(d)
}

fn diff(p: &RationalPoint, q: &RationalPoint) -> Vec<Rational> {
    p.coords()
        .iter()
        .zip(q.coords())
        .map(|(a, b)| a - b)
        .collect()
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in u.iter().zip(v) {
        acc += a * b;
    }
    acc
}

/// Squared Euclidean distance between two points of equal dimension.
pub fn squared_distance(p: &RationalPoint, q: &RationalPoint) -> Result<Rational, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    let d = diff(p, q);
    Ok(dot(&d, &d))
}

/// Exact determinant by Gaussian elimination with nonzero pivoting.
fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = det * &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - sub;
            }
        }
    }
    det
}

/// Row rank of an exact rational matrix.
fn matrix_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let n = rows.len();
    if n == 0 {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = match (row..n).find(|&r| !rows[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        rows.swap(pivot, row);
        let pv = rows[row][col].clone();
        for r in row + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pv;
            for c in col..cols {
                let sub = &factor * &rows[row][c];
                rows[r][c] = &rows[r][c] - sub;
            }
        }
        row += 1;
        rank += 1;
        if row == n {
            break;
        }
    }
    rank
}

fn factorial(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// Squared volume of the simplex spanned by an a-tuple: the Gram determinant
/// of the difference vectors divided by ((a-1)!)^2. A 1-tuple gets 1 (empty
/// Gram matrix), a tuple with a > d+1 gets 0.
pub fn squared_volume(points: &[RationalPoint]) -> Result<SquaredVolume, GeometryError> {
    check_common_dim(points)?;
    let a = points.len();
    let base = &points[0];
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| diff(p, base)).collect();
    let k = a - 1;
    let mut gram = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = dot(&diffs[i], &diffs[j]);
            gram[j][i] = v.clone();
            gram[i][j] = v;
        }
    }
    let det = determinant(gram);
    let f = factorial(k);
    let denom = Rational::from_integer(&f * &f);
    let sq = det / denom;
    debug_assert!(!sq.is_negative());
    Ok(SquaredVolume(sq))
}

/// Bordered squared-distance determinant of an a-tuple: the (a+1)x(a+1)
/// determinant with a zero corner, a border of ones, and the pairwise squared
/// distances in the body.
pub fn cayley_menger_det(points: &[RationalPoint]) -> Result<Rational, GeometryError> {
    check_common_dim(points)?;
    let a = points.len();
    let mut m = vec![vec![Rational::zero(); a + 1]; a + 1];
    for j in 1..=a {
        m[0][j] = Rational::one();
        m[j][0] = Rational::one();
    }
    for i in 0..a {
        for j in i + 1..a {
            let d2 = squared_distance(&points[i], &points[j])?;
            m[i + 1][j + 1] = d2.clone();
            m[j + 1][i + 1] = d2;
        }
    }
    Ok(determinant(m))
}

/// Whether two same-arity tuples span simplices of equal volume. Exact, so
/// this coincides with the vanishing of the difference-of-squares product of
/// their bordered determinants.
pub fn equal_volume(u: &[RationalPoint], v: &[RationalPoint]) -> Result<bool, GeometryError> {
    if u.len() != v.len() {
        return Err(GeometryError::ArityMismatch(u.len(), v.len()));
    }
    let du = check_common_dim(u)?;
    let dv = check_common_dim(v)?;
    if du != dv {
        return Err(GeometryError::DimensionMismatch {
            expected: du,
            found: dv,
        });
    }
    Ok(squared_volume(u)? == squared_volume(v)?)
}

/// True iff the tuple spans zero volume, i.e. the points are affinely
/// dependent.
pub fn is_degenerate(points: &[RationalPoint]) -> Result<bool, GeometryError> {
    Ok(squared_volume(points)?.is_zero())
}

/// Affine rank: the linear rank of the difference vectors against the first
/// point. A single point has affine rank 0.
pub fn affine_rank(points: &[RationalPoint]) -> Result<usize, GeometryError> {
    check_common_dim(points)?;
    let base = &points[0];
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| diff(p, base)).collect();
    Ok(matrix_rank(diffs))
}

/// Squared volumes of every a-subset of the set, indexed by the subset's
/// lexicographic rank. Dispatches to a rayon map when the `parallel` feature
/// is on; see [`subset_squared_volumes_seq`] for the always-sequential twin.
pub fn subset_squared_volumes(
    ps: &PointSet,
    a: usize,
) -> Result<Vec<SquaredVolume>, GeometryError> {
    let n = ps.len();
    if a == 0 || a > n {
        return Err(GeometryError::ArityOutOfRange { arity: a, points: n });
    }
    #[cfg(feature = "parallel")]
    {
        use crate::combin::{binomial, unrank_subset};
        use rayon::prelude::*;
        let count = binomial(n, a) as usize;
        (0..count)
            .into_par_iter()
            .map(|rank| {
                let subset = unrank_subset(n, a, rank as u128);
                squared_volume(&ps.select(&subset))
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        subset_squared_volumes_seq(ps, a)
    }
}

/// Sequential twin of [`subset_squared_volumes`]; byte-identical output.
pub fn subset_squared_volumes_seq(
    ps: &PointSet,
    a: usize,
) -> Result<Vec<SquaredVolume>, GeometryError> {
    let n = ps.len();
    if a == 0 || a > n {
        return Err(GeometryError::ArityOutOfRange { arity: a, points: n });
    }
    subsets(n, a)
        .map(|subset| squared_volume(&ps.select(&subset)))
        .collect()
}

/// Group the a-subsets of the set by squared volume. Values are subset ranks
/// in increasing order.
pub fn volume_classes(
    ps: &PointSet,
    a: usize,
) -> Result<HashMap<SquaredVolume, Vec<usize>>, GeometryError> {
    let vols = subset_squared_volumes(ps, a)?;
    let mut map: HashMap<SquaredVolume, Vec<usize>> = HashMap::new();
    for (rank, v) in vols.into_iter().enumerate() {
        map.entry(v).or_default().push(rank);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pts(coords: &[&[i64]]) -> Vec<RationalPoint> {
        coords.iter().map(|c| RationalPoint::from_ints(c)).collect()
    }

    #[test]
    fn unit_segment_has_unit_squared_length() {
        let t = pts(&[&[0], &[1]]);
        assert_eq!(squared_volume(&t).unwrap().value(), &rat(1, 1));
    }

    #[test]
    fn unit_right_triangle_squared_area() {
        let t = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(squared_volume(&t).unwrap().value(), &rat(1, 4));
    }

    #[test]
    fn collinear_triple_is_degenerate() {
        let t = pts(&[&[0, 0], &[1, 0], &[2, 0]]);
        assert!(squared_volume(&t).unwrap().is_zero());
        assert!(is_degenerate(&t).unwrap());
    }

    #[test]
    fn bordered_determinant_frozen_values() {
        let seg = pts(&[&[0], &[1]]);
        assert_eq!(cayley_menger_det(&seg).unwrap(), rat(2, 1));
        let tri = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(cayley_menger_det(&tri).unwrap(), rat(-4, 1));
    }

    #[test]
    fn single_point_conventions() {
        let p = pts(&[&[3, 4]]);
        assert_eq!(squared_volume(&p).unwrap().value(), &rat(1, 1));
        assert_eq!(affine_rank(&p).unwrap(), 0);
    }

    #[test]
    fn empty_tuple_is_an_error() {
        assert_eq!(squared_volume(&[]), Err(GeometryError::EmptyTuple));
        assert_eq!(cayley_menger_det(&[]), Err(GeometryError::EmptyTuple));
    }

    #[test]
    fn overfull_tuple_has_zero_volume() {
        // four points in the plane always span zero 3-dimensional volume
        let t = pts(&[&[0, 0], &[1, 0], &[0, 1], &[5, 7]]);
        assert!(squared_volume(&t).unwrap().is_zero());
    }

    #[test]
    fn sibling_triangles_on_parallel_lines_match() {
        let u = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        let v = pts(&[&[0, 0], &[1, 0], &[1, 1]]);
        assert!(equal_volume(&u, &v).unwrap());
        assert!(!squared_volume(&u).unwrap().is_zero());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let u = pts(&[&[0, 0], &[1, 0]]);
        let v = pts(&[&[0, 0], &[1, 0], &[1, 1]]);
        assert_eq!(equal_volume(&u, &v), Err(GeometryError::ArityMismatch(2, 3)));
    }

    #[test]
    fn rank_detects_hyperplane_containment() {
        let line = pts(&[&[0, 0], &[1, 0], &[7, 0], &[3, 0]]);
        assert_eq!(affine_rank(&line).unwrap(), 1);
        let plane = pts(&[&[0, 0], &[1, 0], &[0, 1], &[2, 3]]);
        assert_eq!(affine_rank(&plane).unwrap(), 2);
    }

    #[test]
    fn parallel_and_sequential_subset_volumes_agree() {
        let ps = PointSet::new(
            2,
            pts(&[&[0, 0], &[1, 0], &[3, 1], &[4, 4], &[9, 2], &[6, 5]]),
        )
        .unwrap();
        for a in 2..=4 {
            assert_eq!(
                subset_squared_volumes(&ps, a).unwrap(),
                subset_squared_volumes_seq(&ps, a).unwrap()
            );
        }
    }

    #[test]
    fn duplicate_points_are_flagged() {
        let ps = PointSet::new(2, pts(&[&[0, 0], &[1, 2], &[0, 0]])).unwrap();
        assert_eq!(ps.duplicate_pairs(), vec![(0, 2)]);
        let clean = PointSet::new(2, pts(&[&[0, 0], &[1, 2]])).unwrap();
        assert!(!clean.has_duplicates());
    }
}
