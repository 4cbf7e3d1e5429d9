//! Exact constructions of the canonical extremal configurations.
//!
//! Everything here is deterministic: the same parameters always produce the
//! same points, labels and matrix entries, bit for bit.
//!
//! Two constructions have no Cartesian coordinates inside a single
//! quadratic extension and are therefore produced as squared-distance
//! matrices instead: the regular `d`-simplex (all squared distances 1) and
//! the regular pentagon, whose squared distances live in `Q(sqrt 5)` even
//! though its coordinates do not.

use crate::exactnum::QuadExt;
use crate::geometry::{Configuration, DistanceMatrix, Point, PointSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("squared scale must be strictly positive")]
    NonpositiveScale,
    #[error("squared scale is too large to factor into a square-free radicand")]
    ScaleTooLarge,
    #[error("no catalog configuration for k = {0} distinct distances")]
    UnsupportedK(usize),
}

/// The `2d` points `(+/- r) e_i` of the cross-polytope in `R^d`, with
/// squared circumradius `r2`. Coordinates stay in `Q` when `r2` is a
/// rational square and otherwise use the single extension `Q(sqrt D)` with
/// `D` the square-free part of `r2`'s radicand.
pub fn orthoplex(d: usize, r2: &BigRational) -> Result<Configuration, GeneratorError> {
    if d < 2 {
        return Err(GeneratorError::DimensionTooSmall { min: 2, got: d });
    }
    if !r2.is_positive() {
        return Err(GeneratorError::NonpositiveScale);
    }
    let r = QuadExt::sqrt_of_rational(r2).map_err(|_| GeneratorError::ScaleTooLarge)?;
    let mut points = Vec::with_capacity(2 * d);
    let mut labels = Vec::with_capacity(2 * d);
    for axis in 0..d {
        for (sign, tag) in [(1i8, '+'), (-1i8, '-')] {
            let mut coords = vec![QuadExt::zero(); d];
            coords[axis] = if sign > 0 { r.clone() } else { -&r };
            points.push(Point::new(coords));
            labels.push(format!("{tag}e{}", axis + 1));
        }
    }
    Ok(Configuration::new(points, Some(labels)).expect("orthoplex vertices are valid"))
}

/// The squared-distance matrix of `d + 1` mutually equidistant points (all
/// squared distances 1): the regular `d`-simplex.
pub fn simplex(d: usize) -> Result<DistanceMatrix, GeneratorError> {
    if d < 1 {
        return Err(GeneratorError::DimensionTooSmall { min: 1, got: d });
    }
    let n = d + 1;
    let mut sq = vec![vec![QuadExt::from_integer(1); n]; n];
    for (i, row) in sq.iter_mut().enumerate() {
        row[i] = QuadExt::zero();
    }
    Ok(DistanceMatrix::new(sq).expect("simplex matrix is valid"))
}

/// The unit square together with its center: five points in the plane.
pub fn square_center() -> Configuration {
    let half = QuadExt::ratio(1, 2);
    let points = vec![
        Point::from_ints(&[0, 0]),
        Point::from_ints(&[1, 0]),
        Point::from_ints(&[1, 1]),
        Point::from_ints(&[0, 1]),
        Point::new(vec![half.clone(), half]),
    ];
    let labels = ["v1", "v2", "v3", "v4", "center"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Configuration::new(points, Some(labels)).expect("square with center is valid")
}

/// The squared-distance matrix of the regular pentagon with unit side:
/// one-step pairs at squared distance 1, two-step pairs at `(3 + sqrt 5)/2`.
pub fn pentagon() -> DistanceMatrix {
    let side2 = QuadExt::from_integer(1);
    let diag2 = QuadExt::new(
        BigRational::new(BigInt::from(3), BigInt::from(2)),
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        5,
    )
    .expect("5 is square-free");
    let mut sq = vec![vec![QuadExt::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            if i == j {
                continue;
            }
            let step = (i + 5 - j) % 5;
            sq[i][j] = if step == 1 || step == 4 {
                side2.clone()
            } else {
                diag2.clone()
            };
        }
    }
    DistanceMatrix::new(sq).expect("pentagon matrix is valid")
}

/// The triangular-lattice point with cell coordinates `(i, j)`, embedded as
/// `(i + j/2, (j/2) sqrt 3)`; its squared distances are the integers
/// `di^2 + di*dj + dj^2`.
pub fn tri_lattice_point(i: i64, j: i64) -> Point {
    let x = BigRational::from_integer(BigInt::from(i))
        + BigRational::new(BigInt::from(j), BigInt::from(2));
    let y = QuadExt::new(
        BigRational::zero(),
        BigRational::new(BigInt::from(j), BigInt::from(2)),
        3,
    )
    .expect("3 is square-free");
    Point::new(vec![QuadExt::from_rational(x), y])
}

/// Embeds a list of lattice cells as an exact planar configuration,
/// labeling each point with its cell coordinates.
pub fn tri_lattice_configuration(cells: &[(i64, i64)]) -> Configuration {
    let points = cells.iter().map(|&(i, j)| tri_lattice_point(i, j)).collect();
    let labels = cells.iter().map(|&(i, j)| format!("({i},{j})")).collect();
    Configuration::new(points, Some(labels)).expect("lattice cells must be distinct")
}

/// Lattice cells of the centered unit hexagon: 7 points, 3 distinct
/// distances.
pub const HEXAGON_CELLS: [(i64, i64); 7] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (0, -1),
    (1, -1),
];

/// A maximal planar configuration with exactly `k` distinct distances, for
/// `2 <= k <= 6`: the regular pentagon for `k = 2` (as a distance matrix),
/// triangular-lattice subsets otherwise.
pub fn k_distance_config(k: usize) -> Result<PointSet, GeneratorError> {
    match k {
        2 => Ok(pentagon().into()),
        3 => Ok(tri_lattice_configuration(&HEXAGON_CELLS).into()),
        4 => {
            // Centered hexagon plus two second-ring cells: 9 points with
            // squared distances {1, 3, 4, 7}.
            let mut cells = HEXAGON_CELLS.to_vec();
            cells.push((1, 1));
            cells.push((-1, 2));
            Ok(tri_lattice_configuration(&cells).into())
        }
        5 => {
            // Triangular patch of side 4 with its three corners removed:
            // 12 points with squared distances {1, 3, 4, 7, 9}.
            let mut cells = Vec::new();
            for i in 0..=4i64 {
                for j in 0..=(4 - i) {
                    if [(0, 0), (4, 0), (0, 4)].contains(&(i, j)) {
                        continue;
                    }
                    cells.push((i, j));
                }
            }
            Ok(tri_lattice_configuration(&cells).into())
        }
        6 => {
            // All lattice points with squared norm at most 3: 13 points
            // with squared distances {1, 3, 4, 7, 9, 12}.
            let mut cells = vec![(0, 0)];
            cells.extend_from_slice(&HEXAGON_CELLS[1..]);
            cells.extend_from_slice(&[(1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1)]);
            Ok(tri_lattice_configuration(&cells).into())
        }
        _ => Err(GeneratorError::UnsupportedK(k)),
    }
}

/// A generator request, as expressed on the command line or in a search
/// specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Orthoplex { dim: usize, scale2: BigRational },
    Simplex { dim: usize },
    SquareCenter,
    Pentagon,
    KDistance { k: usize },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<PointSet, GeneratorError> {
        match self {
            GeneratorSpec::Orthoplex { dim, scale2 } => Ok(orthoplex(*dim, scale2)?.into()),
            GeneratorSpec::Simplex { dim } => Ok(simplex(*dim)?.into()),
            GeneratorSpec::SquareCenter => Ok(square_center().into()),
            GeneratorSpec::Pentagon => Ok(pentagon().into()),
            GeneratorSpec::KDistance { k } => k_distance_config(*k),
        }
    }
}

/// Every configuration the crate ships, with a human-readable name; the
/// verification suites run over this list.
pub fn catalog() -> Vec<(String, PointSet)> {
    let mut out = Vec::new();
    for d in 2..=6 {
        let cfg = orthoplex(d, &BigRational::one()).unwrap();
        out.push((format!("orthoplex({d})"), cfg.into()));
    }
    out.push((
        "orthoplex(3, scale2=2)".to_string(),
        orthoplex(3, &BigRational::from_integer(BigInt::from(2)))
            .unwrap()
            .into(),
    ));
    out.push((
        "orthoplex(4, scale2=9/4)".to_string(),
        orthoplex(4, &BigRational::new(BigInt::from(9), BigInt::from(4)))
            .unwrap()
            .into(),
    ));
    for d in 1..=6 {
        out.push((format!("simplex({d})"), simplex(d).unwrap().into()));
    }
    out.push(("square_center".to_string(), square_center().into()));
    out.push(("pentagon".to_string(), pentagon().into()));
    for k in 2..=6 {
        out.push((format!("k_distance({k})"), k_distance_config(k).unwrap()));
    }
    out
}
