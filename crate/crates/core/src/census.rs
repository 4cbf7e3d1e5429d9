//! The measurement core: congruence classes of triangles, distinct-distance
//! multiplicities, and per-point distance statistics, all computed exactly.
//!
//! A triangle's congruence class is its sorted triple of squared side
//! lengths (side-side-side is a complete congruence invariant, and any
//! isometry is allowed, so no orientation handling is needed). Censuses run
//! over the squared-distance matrix, so coordinate configurations and
//! matrix-only configurations are treated identically.

use crate::geometry::{sixteen_area_squared, DistanceMatrix, PointSet};
use crate::exactnum::QuadExt;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("triple ({i},{j},{k}) is not realizable in any Euclidean space")]
    NonEuclideanTriple { i: usize, j: usize, k: usize },
    #[error("point index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("triangle sides must be strictly positive")]
    NonpositiveSide,
    #[error("squared sides describe a degenerate (collinear) triple")]
    DegenerateSides,
    #[error("squared sides are not realizable as a triangle")]
    InfeasibleSides,
}

/// The congruence class of a noncollinear triple: its squared side lengths
/// sorted in nondecreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleClass {
    sides2: [QuadExt; 3],
}

/// Shape of a triangle class, by equalities among its sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrianglePattern {
    Equilateral,
    /// Exactly two equal squared sides; `repeated2` is the doubled squared
    /// side, `other2` the remaining one.
    Isosceles { repeated2: QuadExt, other2: QuadExt },
    Scalene,
}

impl TriangleClass {
    /// Builds a class from three squared side lengths, validating strict
    /// positivity and strict triangle feasibility (positive squared area).
    pub fn from_squared_sides(
        x: QuadExt,
        y: QuadExt,
        z: QuadExt,
    ) -> Result<Self, CensusError> {
        if !x.is_positive() || !y.is_positive() || !z.is_positive() {
            return Err(CensusError::NonpositiveSide);
        }
        let area16 = sixteen_area_squared(&x, &y, &z);
        match area16.sign() {
            0 => return Err(CensusError::DegenerateSides),
            -1 => return Err(CensusError::InfeasibleSides),
            _ => {}
        }
        let mut sides2 = [x, y, z];
        sides2.sort();
        Ok(TriangleClass { sides2 })
    }

    pub fn sides2(&self) -> &[QuadExt; 3] {
        &self.sides2
    }

    pub fn pattern(&self) -> TrianglePattern {
        let [a, b, c] = &self.sides2;
        if a == b && b == c {
            TrianglePattern::Equilateral
        } else if a == b {
            TrianglePattern::Isosceles {
                repeated2: a.clone(),
                other2: c.clone(),
            }
        } else if b == c {
            TrianglePattern::Isosceles {
                repeated2: b.clone(),
                other2: a.clone(),
            }
        } else {
            TrianglePattern::Scalene
        }
    }
}

/// Classifies three squared distances: a triangle class, `None` for a
/// collinear triple, or an error when the values cannot come from real
/// points.
pub fn classify_squared_sides(
    x: &QuadExt,
    y: &QuadExt,
    z: &QuadExt,
) -> Result<Option<TriangleClass>, CensusError> {
    match TriangleClass::from_squared_sides(x.clone(), y.clone(), z.clone()) {
        Ok(t) => Ok(Some(t)),
        Err(CensusError::DegenerateSides) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The congruence class of the triple `(a, b, c)`, or `None` when the
/// points are collinear. Coincident points are a contract violation.
pub fn triangle_class_of(
    a: &crate::geometry::Point,
    b: &crate::geometry::Point,
    c: &crate::geometry::Point,
) -> Option<TriangleClass> {
    let ab = a.squared_distance(b);
    let ac = a.squared_distance(c);
    let bc = b.squared_distance(c);
    assert!(
        !ab.is_zero() && !ac.is_zero() && !bc.is_zero(),
        "triangle_class_of: points must be pairwise distinct"
    );
    classify_squared_sides(&ab, &ac, &bc)
        .expect("squared distances of real points are always realizable")
}

/// Full census of a point set: every distinct squared distance with its
/// pair multiplicity, every triangle class with its unordered-triple count,
/// and the number of collinear triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n_points: usize,
    /// Sorted ascending by squared distance.
    pub distance_classes: Vec<(QuadExt, usize)>,
    /// Sorted by squared side triple.
    pub triangle_classes: Vec<(TriangleClass, usize)>,
    pub collinear_triple_count: usize,
}

impl CensusReport {
    pub fn distance_class_count(&self) -> usize {
        self.distance_classes.len()
    }

    pub fn triangle_class_count(&self) -> usize {
        self.triangle_classes.len()
    }

    /// Structural sanity: class counts exhaust all pairs and triples.
    pub fn totals_are_consistent(&self) -> bool {
        let n = self.n_points;
        let pairs: usize = self.distance_classes.iter().map(|(_, c)| c).sum();
        let triples: usize =
            self.triangle_classes.iter().map(|(_, c)| c).sum::<usize>() + self.collinear_triple_count;
        pairs == n * (n - 1) / 2 && triples == n * (n - 1) * (n - 2) / 6
    }
}

/// Census over a squared-distance matrix. Errors if some triple is not
/// realizable in Euclidean space (impossible for matrices derived from
/// coordinates).
pub fn census_of_matrix(dm: &DistanceMatrix) -> Result<CensusReport, CensusError> {
    let n = dm.n();
    let mut distances: BTreeMap<QuadExt, usize> = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            *distances.entry(dm.get(i, j).clone()).or_insert(0) += 1;
        }
    }
    let mut triangles: BTreeMap<TriangleClass, usize> = BTreeMap::new();
    let mut collinear = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let class = classify_squared_sides(dm.get(i, j), dm.get(i, k), dm.get(j, k))
                    .map_err(|_| CensusError::NonEuclideanTriple { i, j, k })?;
                match class {
                    Some(t) => *triangles.entry(t).or_insert(0) += 1,
                    None => collinear += 1,
                }
            }
        }
    }
    let report = CensusReport {
        n_points: n,
        distance_classes: distances.into_iter().collect(),
        triangle_classes: triangles.into_iter().collect(),
        collinear_triple_count: collinear,
    };
    debug_assert!(report.totals_are_consistent());
    Ok(report)
}

pub fn census(set: &PointSet) -> Result<CensusReport, CensusError> {
    census_of_matrix(&set.distance_matrix())
}

/// Census of a coordinate configuration; cannot fail because squared
/// distances of real points always form realizable triples.
pub fn census_of_configuration(cfg: &crate::geometry::Configuration) -> CensusReport {
    census_of_matrix(&cfg.distance_matrix())
        .expect("coordinate configurations always embed")
}

/// Distance statistics seen from one point: how many distinct distances it
/// determines, and how many of those are attained by two or more of the
/// other points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCensus {
    pub point: usize,
    pub n_distinct: usize,
    pub m_repeated: usize,
}

pub fn point_census(set: &PointSet, index: usize) -> Result<PointCensus, CensusError> {
    let dm = set.distance_matrix();
    let n = dm.n();
    if index >= n {
        return Err(CensusError::IndexOutOfRange { index, n });
    }
    let mut counts: BTreeMap<QuadExt, usize> = BTreeMap::new();
    for j in 0..n {
        if j != index {
            *counts.entry(dm.get(index, j).clone()).or_insert(0) += 1;
        }
    }
    let n_distinct = counts.len();
    let m_repeated = counts.values().filter(|&&c| c >= 2).count();
    Ok(PointCensus {
        point: index,
        n_distinct,
        m_repeated,
    })
}
