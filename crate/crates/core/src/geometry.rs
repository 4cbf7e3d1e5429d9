//! Exact point configurations, squared-distance matrices and the geometric
//! predicates built on them: collinearity, Euclidean embeddability,
//! circumcenters, bisector hyperplanes and biequidistant spheres.
//!
//! Coordinates are the primary representation; a [`DistanceMatrix`] is
//! derived from them. Some configurations (the regular simplex, the regular
//! pentagon) have no coordinates in a single quadratic extension but do have
//! an exact squared-distance matrix, so the matrix form is also accepted
//! everywhere a census is taken — see [`PointSet`].

use crate::exactnum::QuadExt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("a configuration must contain at least one point")]
    Empty,
    #[error("points must have dimension at least 1")]
    ZeroDimension,
    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("points {i} and {j} coincide")]
    CoincidentPoints { i: usize, j: usize },
    #[error("coordinates mix different quadratic extensions (sqrt({left}) vs sqrt({right}))")]
    MixedExtensions { left: u64, right: u64 },
    #[error("{got} labels for {expected} points")]
    LabelCount { got: usize, expected: usize },
    #[error("distance matrix rows must all have length {expected}")]
    NotSquare { expected: usize },
    #[error("distance matrix diagonal entry {index} must be zero")]
    NonzeroDiagonal { index: usize },
    #[error("distance matrix entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
    #[error("squared distance ({i},{j}) must be strictly positive")]
    NonpositiveDistance { i: usize, j: usize },
    #[error("degenerate input: points are affinely dependent")]
    AffinelyDependent,
    #[error("expected {expected} points in dimension {dim}, got {got}")]
    WrongPointCount {
        expected: usize,
        dim: usize,
        got: usize,
    },
    #[error("empty locus: the squared radius must exceed a quarter of the squared gap")]
    EmptyLocus,
}

/// A point of `R^d` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<QuadExt>);

impl Point {
    pub fn new(coords: Vec<QuadExt>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| QuadExt::from_integer(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[QuadExt] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> &QuadExt {
        &self.0[i]
    }

    /// `sum_i (p_i - q_i)^2`; zero exactly when the points coincide.
    pub fn squared_distance(&self, other: &Point) -> QuadExt {
        assert_eq!(
            self.dim(),
            other.dim(),
            "squared_distance: dimension mismatch"
        );
        let mut acc = QuadExt::zero();
        for (x, y) in self.0.iter().zip(&other.0) {
            let diff = x - y;
            acc = acc + &diff * &diff;
        }
        acc
    }

    pub fn midpoint(a: &Point, b: &Point) -> Point {
        assert_eq!(a.dim(), b.dim(), "midpoint: dimension mismatch");
        let half = QuadExt::ratio(1, 2);
        Point(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + y) * &half)
                .collect(),
        )
    }

    pub fn translated(&self, offset: &[QuadExt]) -> Point {
        assert_eq!(self.dim(), offset.len(), "translated: dimension mismatch");
        Point(self.0.iter().zip(offset).map(|(x, o)| x + o).collect())
    }

    fn norm2(&self) -> QuadExt {
        self.0
            .iter()
            .fold(QuadExt::zero(), |acc, x| acc + x * x)
    }
}

fn dot(u: &[QuadExt], v: &[QuadExt]) -> QuadExt {
    u.iter()
        .zip(v)
        .fold(QuadExt::zero(), |acc, (x, y)| acc + x * y)
}

/// Extracts the common nonzero radicand of a set of values, if consistent.
fn common_radicand<'a>(
    values: impl Iterator<Item = &'a QuadExt>,
) -> Result<u64, GeometryError> {
    let mut found = 0u64;
    for v in values {
        let d = v.radicand();
        if d != 0 {
            if found == 0 {
                found = d;
            } else if found != d {
                return Err(GeometryError::MixedExtensions {
                    left: found,
                    right: d,
                });
            }
        }
    }
    Ok(found)
}

/// A validated, labeled finite point set in `R^d`.
///
/// All points share the dimension and (at most one) quadratic extension;
/// coincident points are rejected at construction rather than deduplicated,
/// because every census counts points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    dim: usize,
    points: Vec<Point>,
    labels: Option<Vec<String>>,
    radicand: u64,
}

impl Configuration {
    pub fn new(points: Vec<Point>, labels: Option<Vec<String>>) -> Result<Self, GeometryError> {
        let Some(first) = points.first() else {
            return Err(GeometryError::Empty);
        };
        let dim = first.dim();
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        for (index, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    index,
                    got: p.dim(),
                    expected: dim,
                });
            }
        }
        let radicand = common_radicand(points.iter().flat_map(|p| p.coords().iter()))?;
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].squared_distance(&points[j]).is_zero() {
                    return Err(GeometryError::CoincidentPoints { i, j });
                }
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != points.len() {
                return Err(GeometryError::LabelCount {
                    got: ls.len(),
                    expected: points.len(),
                });
            }
        }
        Ok(Configuration {
            dim,
            points,
            labels,
            radicand,
        })
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

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The common radicand of all coordinates (`0` when purely rational).
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix::from_configuration(self)
    }

    /// Revalidated copy with point `i` replaced.
    pub fn with_point_replaced(&self, i: usize, p: Point) -> Result<Self, GeometryError> {
        let mut points = self.points.clone();
        points[i] = p;
        Configuration::new(points, self.labels.clone())
    }

    /// Revalidated copy with one extra (unlabeled) point appended.
    pub fn with_point_added(&self, p: Point) -> Result<Self, GeometryError> {
        let mut points = self.points.clone();
        points.push(p);
        Configuration::new(points, None)
    }
}

/// A symmetric matrix of exact squared distances with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    sq: Vec<Vec<QuadExt>>,
}

impl DistanceMatrix {
    pub fn new(sq: Vec<Vec<QuadExt>>) -> Result<Self, GeometryError> {
        let n = sq.len();
        if n == 0 {
            return Err(GeometryError::Empty);
        }
        for row in &sq {
            if row.len() != n {
                return Err(GeometryError::NotSquare { expected: n });
            }
        }
        common_radicand(sq.iter().flat_map(|row| row.iter()))?;
        for i in 0..n {
            if !sq[i][i].is_zero() {
                return Err(GeometryError::NonzeroDiagonal { index: i });
            }
            for j in (i + 1)..n {
                if sq[i][j] != sq[j][i] {
                    return Err(GeometryError::NotSymmetric { i, j });
                }
                if !sq[i][j].is_positive() {
                    return Err(GeometryError::NonpositiveDistance { i, j });
                }
            }
        }
        Ok(DistanceMatrix { n, sq })
    }

    pub fn from_configuration(cfg: &Configuration) -> Self {
        let n = cfg.len();
        let mut sq = vec![vec![QuadExt::zero(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d2 = cfg.point(i).squared_distance(cfg.point(j));
                sq[i][j] = d2.clone();
                sq[j][i] = d2;
            }
        }
        DistanceMatrix { n, sq }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadExt {
        &self.sq[i][j]
    }

    pub fn rows(&self) -> &[Vec<QuadExt>] {
        &self.sq
    }

    /// The matrix obtained by relabeling points with `perm` (a bijection on
    /// `0..n`): entry `(i, j)` becomes the old `(perm[i], perm[j])`.
    pub fn relabeled(&self, perm: &[usize]) -> DistanceMatrix {
        assert_eq!(perm.len(), self.n);
        let sq = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.sq[perm[i]][perm[j]].clone()).collect())
            .collect();
        DistanceMatrix { n: self.n, sq }
    }
}

/// Either representation of a finite point set accepted by the census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSet {
    Points(Configuration),
    Distances(DistanceMatrix),
}

impl PointSet {
    pub fn n_points(&self) -> usize {
        match self {
            PointSet::Points(c) => c.len(),
            PointSet::Distances(m) => m.n(),
        }
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        match self {
            PointSet::Points(c) => c.distance_matrix(),
            PointSet::Distances(m) => m.clone(),
        }
    }

    /// The declared dimension for coordinates, or the exact minimal
    /// embedding dimension for a distance matrix (`None` if non-Euclidean).
    pub fn dimension(&self) -> Option<usize> {
        match self {
            PointSet::Points(c) => Some(c.dim()),
            PointSet::Distances(m) => embedding_rank(m),
        }
    }

    pub fn configuration(&self) -> Option<&Configuration> {
        match self {
            PointSet::Points(c) => Some(c),
            PointSet::Distances(_) => None,
        }
    }
}

impl From<Configuration> for PointSet {
    fn from(c: Configuration) -> Self {
        PointSet::Points(c)
    }
}

impl From<DistanceMatrix> for PointSet {
    fn from(m: DistanceMatrix) -> Self {
        PointSet::Distances(m)
    }
}

/// `16 * area^2` of a triangle given by its three squared side lengths.
///
/// Positive for a genuine triangle, zero for a collinear (degenerate)
/// triple, negative when the squared lengths are not realizable in any
/// Euclidean space.
pub fn sixteen_area_squared(a2: &QuadExt, b2: &QuadExt, c2: &QuadExt) -> QuadExt {
    let two = QuadExt::from_integer(2);
    &two * (a2 * b2 + b2 * c2 + c2 * a2) - a2 * a2 - b2 * b2 - c2 * c2
}

/// Exact collinearity of three pairwise distinct points: the vectors
/// `b - a` and `c - a` span less than two dimensions, i.e. every 2x2 minor
/// vanishes.
pub fn is_collinear(a: &Point, b: &Point, c: &Point) -> bool {
    assert_eq!(a.dim(), b.dim());
    assert_eq!(a.dim(), c.dim());
    assert!(
        !a.squared_distance(b).is_zero()
            && !a.squared_distance(c).is_zero()
            && !b.squared_distance(c).is_zero(),
        "is_collinear: points must be pairwise distinct"
    );
    let u: Vec<QuadExt> = b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
    let v: Vec<QuadExt> = c.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            let minor = &u[i] * &v[j] - &u[j] * &v[i];
            if !minor.is_zero() {
                return false;
            }
        }
    }
    true
}

/// The Gram matrix of a distance matrix relative to a base point:
/// `G[i][j] = (sq[base][i] + sq[base][j] - sq[i][j]) / 2` over the non-base
/// indices.
pub fn gram_matrix(dm: &DistanceMatrix, base: usize) -> Vec<Vec<QuadExt>> {
    assert!(base < dm.n(), "gram_matrix: base index out of range");
    let others: Vec<usize> = (0..dm.n()).filter(|&i| i != base).collect();
    let half = QuadExt::ratio(1, 2);
    others
        .iter()
        .map(|&i| {
            others
                .iter()
                .map(|&j| (dm.get(base, i) + dm.get(base, j) - dm.get(i, j)) * &half)
                .collect()
        })
        .collect()
}

/// Minimal Euclidean embedding dimension of a distance matrix, or `None`
/// when the matrix is not realizable in any Euclidean space.
///
/// Decided by exact pivoted symmetric elimination of the Gram matrix: the
/// matrix is positive semidefinite iff the elimination runs to completion,
/// and its rank is the number of positive pivots.
pub fn embedding_rank(dm: &DistanceMatrix) -> Option<usize> {
    let mut g = gram_matrix(dm, 0);
    let mut active: Vec<usize> = (0..g.len()).collect();
    let mut rank = 0usize;
    loop {
        for &i in &active {
            if g[i][i].is_negative() {
                return None;
            }
        }
        let pivot = active.iter().copied().find(|&i| g[i][i].is_positive());
        let Some(p) = pivot else {
            // All remaining diagonal entries are zero; a PSD matrix must
            // then vanish entirely on the remaining block.
            for &i in &active {
                for &j in &active {
                    if !g[i][j].is_zero() {
                        return None;
                    }
                }
            }
            return Some(rank);
        };
        active.retain(|&i| i != p);
        let inv = g[p][p].recip().expect("positive pivot");
        for &i in &active {
            for &j in &active {
                let delta = &g[i][p] * &g[p][j] * &inv;
                g[i][j] = &g[i][j] - &delta;
            }
        }
        rank += 1;
    }
}

fn solve_linear(mut m: Vec<Vec<QuadExt>>, mut rhs: Vec<QuadExt>) -> Option<Vec<QuadExt>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                m[r][c] = &m[r][c] - &factor * &m[col][c];
            }
            rhs[r] = &rhs[r] - &factor * &rhs[col];
        }
    }
    let mut x = vec![QuadExt::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for c in (row + 1)..n {
            acc = acc - &m[row][c] * &x[c];
        }
        x[row] = &acc / &m[row][row];
    }
    Some(x)
}

/// The unique point equidistant from `d + 1` affinely independent points of
/// `R^d`, obtained by exactly solving the system of bisector equations.
/// The equidistance postcondition is re-checked before returning.
pub fn circumcenter(points: &[Point]) -> Result<Point, GeometryError> {
    let Some(first) = points.first() else {
        return Err(GeometryError::Empty);
    };
    let dim = first.dim();
    if points.len() != dim + 1 {
        return Err(GeometryError::WrongPointCount {
            expected: dim + 1,
            dim,
            got: points.len(),
        });
    }
    for (index, p) in points.iter().enumerate() {
        if p.dim() != dim {
            return Err(GeometryError::DimensionMismatch {
                index,
                got: p.dim(),
                expected: dim,
            });
        }
    }
    let two = QuadExt::from_integer(2);
    let base = &points[0];
    let base_norm2 = base.norm2();
    let mut m = Vec::with_capacity(dim);
    let mut rhs = Vec::with_capacity(dim);
    for p in &points[1..] {
        let row: Vec<QuadExt> = p
            .coords()
            .iter()
            .zip(base.coords())
            .map(|(x, y)| &two * &(x - y))
            .collect();
        m.push(row);
        rhs.push(p.norm2() - &base_norm2);
    }
    let center = solve_linear(m, rhs).ok_or(GeometryError::AffinelyDependent)?;
    let center = Point::new(center);
    let r2 = center.squared_distance(base);
    for p in &points[1..] {
        assert_eq!(
            center.squared_distance(p),
            r2,
            "circumcenter postcondition: equidistance"
        );
    }
    Ok(center)
}

/// The perpendicular bisector of two distinct points, as the exact linear
/// equation `coeffs . x = rhs` satisfied precisely by the points
/// equidistant from both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisectorHyperplane {
    pub coeffs: Vec<QuadExt>,
    pub rhs: QuadExt,
}

impl BisectorHyperplane {
    pub fn contains(&self, x: &Point) -> bool {
        dot(&self.coeffs, x.coords()) == self.rhs
    }
}

pub fn bisector_hyperplane(a: &Point, b: &Point) -> BisectorHyperplane {
    assert!(
        !a.squared_distance(b).is_zero(),
        "bisector_hyperplane: points coincide"
    );
    let two = QuadExt::from_integer(2);
    let coeffs = b
        .coords()
        .iter()
        .zip(a.coords())
        .map(|(x, y)| &two * &(x - y))
        .collect();
    BisectorHyperplane {
        coeffs,
        rhs: b.norm2() - a.norm2(),
    }
}

/// True iff `x` is equidistant from `a` and `b`; checked both directly and
/// through the bisector hyperplane equation, which must agree.
pub fn equidistant_locus_check(a: &Point, b: &Point, x: &Point) -> bool {
    let direct = x.squared_distance(a) == x.squared_distance(b);
    let via_plane = bisector_hyperplane(a, b).contains(x);
    assert_eq!(direct, via_plane, "bisector hyperplane equation mismatch");
    direct
}

/// True iff `x` lies at squared distance `r2` from both `a` and `b`.
///
/// Requires `r2 > |ab|^2 / 4`, otherwise the locus is empty and an error is
/// returned. Internally also evaluated through the equivalent description
/// as a sphere of squared radius `r2 - |ab|^2/4` around the midpoint inside
/// the bisector hyperplane; both routes must agree.
pub fn biequidistant_sphere_check(
    a: &Point,
    b: &Point,
    r2: &QuadExt,
    x: &Point,
) -> Result<bool, GeometryError> {
    let gap2 = a.squared_distance(b);
    assert!(!gap2.is_zero(), "biequidistant_sphere_check: points coincide");
    let quarter_gap2 = &gap2 * &QuadExt::ratio(1, 4);
    if (r2 - &quarter_gap2).sign() <= 0 {
        return Err(GeometryError::EmptyLocus);
    }
    let direct = &x.squared_distance(a) == r2 && &x.squared_distance(b) == r2;
    let mid = Point::midpoint(a, b);
    let decomposed = bisector_hyperplane(a, b).contains(x)
        && x.squared_distance(&mid) == r2 - &quarter_gap2;
    assert_eq!(direct, decomposed, "biequidistant sphere decomposition mismatch");
    Ok(direct)
}
