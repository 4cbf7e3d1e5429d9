//! Desk-scale exhaustive searches: appending a point to a cross-polytope,
//! perturbing one of its vertices, checking the structural consequences of
//! a two-triangle census, and enumerating triangular-lattice subsets with a
//! prescribed number of distinct distances.
//!
//! Searches are embarrassingly parallel over candidates; results are
//! collected in candidate order, so they are identical for any worker
//! count.

use crate::bounds;
use crate::census::{census, census_of_configuration, CensusError, TrianglePattern};
use crate::exactnum::QuadExt;
use crate::generators::orthoplex;
use crate::geometry::{Configuration, DistanceMatrix, Point, PointSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search supports dimensions {min}..={max}, got {got}")]
    UnsupportedDimension { min: usize, max: usize, got: usize },
    #[error("grid step must be strictly positive")]
    NonpositiveStep,
    #[error("the candidate grid is empty")]
    EmptyGrid,
    #[error("grid holds about {estimated} candidates, over the budget {budget}")]
    BudgetExceeded { estimated: u64, budget: u64 },
    #[error("lattice patch has {got} points, over the supported {max}")]
    PatchTooLarge { got: usize, max: usize },
    #[error("lattice search supports k <= {max}, got {got}")]
    UnsupportedK { got: usize, max: usize },
    #[error(transparent)]
    Census(#[from] CensusError),
}

/// A rational candidate grid: all coordinates are multiples of `step` with
/// absolute value at most `radius`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub step: BigRational,
    pub radius: BigRational,
}

impl GridSpec {
    pub fn new(step: BigRational, radius: BigRational) -> Result<Self, SearchError> {
        if !step.is_positive() {
            return Err(SearchError::NonpositiveStep);
        }
        Ok(GridSpec { step, radius })
    }

    fn axis_values(&self) -> Vec<BigRational> {
        if self.radius.is_negative() {
            return Vec::new();
        }
        let k_max = (&self.radius / &self.step).floor().to_integer();
        let k_max = k_max.to_i64().unwrap_or(0).max(0);
        (-k_max..=k_max)
            .map(|k| BigRational::from_integer(BigInt::from(k)) * &self.step)
            .collect()
    }

    /// All grid points of `R^d`, in odometer order.
    fn points(&self, d: usize) -> Vec<Vec<BigRational>> {
        let axis = self.axis_values();
        let mut out: Vec<Vec<BigRational>> = vec![Vec::new()];
        for _ in 0..d {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for v in &axis {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

/// Outcome of censusing one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateOutcome {
    /// Human-readable description of the candidate (added point, or moved
    /// vertex and its offset).
    pub label: String,
    pub triangle_classes: usize,
    pub distance_classes: usize,
    /// For perturbations: the perturbed set is itself a cross-polytope.
    pub is_orthoplex: bool,
    pub is_violation: bool,
}

/// Aggregate result of a grid search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub candidates_tested: usize,
    /// Candidates skipped because they coincide with an existing point.
    pub skipped_degenerate: usize,
    pub min_triangle_classes_observed: usize,
    pub records: Vec<CandidateOutcome>,
}

impl SearchResult {
    pub fn violations(&self) -> impl Iterator<Item = &CandidateOutcome> {
        self.records.iter().filter(|r| r.is_violation)
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }

    fn collect(outcomes: Vec<Option<CandidateOutcome>>) -> Result<Self, SearchError> {
        let skipped_degenerate = outcomes.iter().filter(|o| o.is_none()).count();
        let records: Vec<CandidateOutcome> = outcomes.into_iter().flatten().collect();
        if records.is_empty() {
            return Err(SearchError::EmptyGrid);
        }
        let min = records.iter().map(|r| r.triangle_classes).min().unwrap();
        Ok(SearchResult {
            candidates_tested: records.len(),
            skipped_degenerate,
            min_triangle_classes_observed: min,
            records,
        })
    }
}

fn format_coords(coords: &[BigRational]) -> String {
    let rendered: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", rendered.join(", "))
}

fn rational_point(coords: &[BigRational]) -> Point {
    Point::new(
        coords
            .iter()
            .map(|c| QuadExt::from_rational(c.clone()))
            .collect(),
    )
}

fn check_grid_budget(grid: &GridSpec, d: usize, budget: u64) -> Result<(), SearchError> {
    let axis = grid.axis_values().len() as u64;
    let estimated = axis.checked_pow(d as u32).unwrap_or(u64::MAX);
    if estimated > budget {
        return Err(SearchError::BudgetExceeded { estimated, budget });
    }
    Ok(())
}

/// Appends every grid point (except existing vertices) to the unit
/// `d`-orthoplex and checks that each augmented census has at least
/// `min_classes` triangle classes; candidates below the threshold are
/// violations.
pub fn augment_orthoplex_with_threshold(
    d: usize,
    grid: &GridSpec,
    budget: u64,
    min_classes: usize,
) -> Result<SearchResult, SearchError> {
    if !(3..=5).contains(&d) {
        return Err(SearchError::UnsupportedDimension {
            min: 3,
            max: 5,
            got: d,
        });
    }
    check_grid_budget(grid, d, budget)?;
    let base = orthoplex(d, &BigRational::one()).expect("valid dimension");
    let candidates = grid.points(d);
    let outcomes: Vec<Option<CandidateOutcome>> = candidates
        .par_iter()
        .map(|coords| {
            let candidate = rational_point(coords);
            let cfg = base.with_point_added(candidate).ok()?;
            let report = census_of_configuration(&cfg);
            let triangle_classes = report.triangle_class_count();
            Some(CandidateOutcome {
                label: format_coords(coords),
                triangle_classes,
                distance_classes: report.distance_class_count(),
                is_orthoplex: false,
                is_violation: triangle_classes < min_classes,
            })
        })
        .collect();
    SearchResult::collect(outcomes)
}

/// Augmentation search at the standard threshold: more than two triangle
/// classes expected for every candidate.
pub fn augment_orthoplex(
    d: usize,
    grid: &GridSpec,
    budget: u64,
) -> Result<SearchResult, SearchError> {
    augment_orthoplex_with_threshold(d, grid, budget, 3)
}

/// Moves each vertex of the unit `d`-orthoplex in turn by every nonzero
/// grid offset. A perturbed set is a violation when it has fewer than
/// `min_classes` triangle classes yet is not itself a cross-polytope.
pub fn perturb_orthoplex_with_threshold(
    d: usize,
    grid: &GridSpec,
    budget: u64,
    min_classes: usize,
) -> Result<SearchResult, SearchError> {
    if !(3..=4).contains(&d) {
        return Err(SearchError::UnsupportedDimension {
            min: 3,
            max: 4,
            got: d,
        });
    }
    check_grid_budget(grid, d, budget.saturating_div(2 * d as u64).max(1))?;
    let base = orthoplex(d, &BigRational::one()).expect("valid dimension");
    let offsets: Vec<Vec<BigRational>> = grid
        .points(d)
        .into_iter()
        .filter(|o| o.iter().any(|c| !c.is_zero()))
        .collect();
    let labels = base.labels().expect("orthoplex is labeled").to_vec();
    let jobs: Vec<(usize, &Vec<BigRational>)> = (0..base.len())
        .flat_map(|v| offsets.iter().map(move |o| (v, o)))
        .collect();
    let outcomes: Vec<Option<CandidateOutcome>> = jobs
        .par_iter()
        .map(|&(vertex, offset)| {
            let offset_qe: Vec<QuadExt> = offset
                .iter()
                .map(|c| QuadExt::from_rational(c.clone()))
                .collect();
            let moved = base.point(vertex).translated(&offset_qe);
            let cfg = base.with_point_replaced(vertex, moved).ok()?;
            let report = census_of_configuration(&cfg);
            let triangle_classes = report.triangle_class_count();
            let still_orthoplex = triangle_classes <= 2 && is_orthoplex(&cfg.distance_matrix());
            Some(CandidateOutcome {
                label: format!("{} by {}", labels[vertex], format_coords(offset)),
                triangle_classes,
                distance_classes: report.distance_class_count(),
                is_orthoplex: still_orthoplex,
                is_violation: triangle_classes < min_classes && !still_orthoplex,
            })
        })
        .collect();
    SearchResult::collect(outcomes)
}

pub fn perturb_orthoplex(
    d: usize,
    grid: &GridSpec,
    budget: u64,
) -> Result<SearchResult, SearchError> {
    perturb_orthoplex_with_threshold(d, grid, budget, 3)
}

/// What a grid search does with each candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Append the candidate point to the cross-polytope.
    AugmentOnePoint,
    /// Move one vertex of the cross-polytope by the candidate offset.
    PerturbOneVertex,
}

/// A complete search request: base dimension, mode, candidate grid and
/// budget. Identical specs always produce identical results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub dim: usize,
    pub mode: SearchMode,
    pub grid: GridSpec,
    pub budget: u64,
}

impl SearchSpec {
    pub fn run(&self) -> Result<SearchResult, SearchError> {
        match self.mode {
            SearchMode::AugmentOnePoint => augment_orthoplex(self.dim, &self.grid, self.budget),
            SearchMode::PerturbOneVertex => perturb_orthoplex(self.dim, &self.grid, self.budget),
        }
    }
}

/// Recognizes the distance matrix of a `d`-orthoplex up to relabeling and a
/// single global scale: exactly two squared distances `v < 2v`, the larger
/// realized by a perfect matching (each point has exactly one antipodal
/// partner), the smaller by every remaining pair.
pub fn is_orthoplex(dm: &DistanceMatrix) -> bool {
    let n = dm.n();
    if n < 4 || !n.is_multiple_of(2) {
        return false;
    }
    let d = n / 2;
    let mut values: BTreeMap<&QuadExt, usize> = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            *values.entry(dm.get(i, j)).or_insert(0) += 1;
        }
    }
    if values.len() != 2 {
        return false;
    }
    let mut it = values.iter();
    let (small, &small_count) = it.next().unwrap();
    let (big, &big_count) = it.next().unwrap();
    if **big != &QuadExt::from_integer(2) * *small {
        return false;
    }
    if big_count != d || small_count != n * (n - 1) / 2 - d {
        return false;
    }
    // The long distance must match points perfectly.
    (0..n).all(|i| (0..n).filter(|&j| j != i && dm.get(i, j) == *big).count() == 1)
}

/// Why the two-triangle structure check did not apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureSkip {
    TriangleClassCountNot2 { got: usize },
    DimensionUnderThree { dim: usize },
    FewerThanTwiceDimPoints { n: usize, dim: usize },
    DimensionUnknown,
}

/// Verdict of the two-triangle structure check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoTriangleCheck {
    /// One class equilateral with squared side `equilateral2`, the other
    /// isosceles repeating that same side, with odd squared side `odd2`,
    /// and exactly two distance classes.
    Verified {
        equilateral2: QuadExt,
        odd2: QuadExt,
    },
    Violated { detail: String },
    Skipped(StructureSkip),
}

/// Structural report for one point set: the distance-count inequality and,
/// when applicable, the forced geometry of a two-triangle configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub n_points: usize,
    pub dimension: Option<usize>,
    pub distance_class_count: usize,
    pub triangle_class_count: usize,
    /// `2t + 1` and whether the distance count respects it; `None` when no
    /// triangle exists.
    pub max_distance_bound: Option<(u64, bool)>,
    pub two_triangle: TwoTriangleCheck,
}

impl StructureReport {
    pub fn has_violation(&self) -> bool {
        matches!(self.max_distance_bound, Some((_, false)))
            || matches!(self.two_triangle, TwoTriangleCheck::Violated { .. })
    }
}

pub fn structure_report(set: &PointSet) -> Result<StructureReport, CensusError> {
    let report = census(set)?;
    let t = report.triangle_class_count();
    let dd = report.distance_class_count();
    let max_distance_bound = (t >= 1).then(|| {
        let bound = bounds::max_distinct_distances(t as u64);
        (bound, dd as u64 <= bound)
    });
    let dimension = set.dimension();
    let two_triangle = if t != 2 {
        TwoTriangleCheck::Skipped(StructureSkip::TriangleClassCountNot2 { got: t })
    } else {
        match dimension {
            None => TwoTriangleCheck::Skipped(StructureSkip::DimensionUnknown),
            Some(dim) if dim < 3 => {
                TwoTriangleCheck::Skipped(StructureSkip::DimensionUnderThree { dim })
            }
            Some(dim) if report.n_points < 2 * dim => {
                TwoTriangleCheck::Skipped(StructureSkip::FewerThanTwiceDimPoints {
                    n: report.n_points,
                    dim,
                })
            }
            Some(_) => check_two_triangle_geometry(&report, dd),
        }
    };
    Ok(StructureReport {
        n_points: report.n_points,
        dimension,
        distance_class_count: dd,
        triangle_class_count: t,
        max_distance_bound,
        two_triangle,
    })
}

fn check_two_triangle_geometry(
    report: &crate::census::CensusReport,
    dd: usize,
) -> TwoTriangleCheck {
    if dd != 2 {
        return TwoTriangleCheck::Violated {
            detail: format!("expected exactly 2 distance classes, found {dd}"),
        };
    }
    let patterns: Vec<TrianglePattern> = report
        .triangle_classes
        .iter()
        .map(|(t, _)| t.pattern())
        .collect();
    let equilateral2 = patterns.iter().find_map(|p| match p {
        TrianglePattern::Equilateral => Some(()),
        _ => None,
    });
    let equilateral_side = report
        .triangle_classes
        .iter()
        .find(|(t, _)| t.pattern() == TrianglePattern::Equilateral)
        .map(|(t, _)| t.sides2()[0].clone());
    if equilateral2.is_none() {
        return TwoTriangleCheck::Violated {
            detail: "no equilateral class".to_string(),
        };
    }
    let equilateral_side = equilateral_side.unwrap();
    for (class, _) in &report.triangle_classes {
        match class.pattern() {
            TrianglePattern::Equilateral => {}
            TrianglePattern::Isosceles { repeated2, other2 } => {
                if repeated2 != equilateral_side {
                    return TwoTriangleCheck::Violated {
                        detail: format!(
                            "isosceles class repeats {repeated2}, not the equilateral side {equilateral_side}"
                        ),
                    };
                }
                return TwoTriangleCheck::Verified {
                    equilateral2: equilateral_side,
                    odd2: other2,
                };
            }
            TrianglePattern::Scalene => {
                return TwoTriangleCheck::Violated {
                    detail: "second class is scalene".to_string(),
                };
            }
        }
    }
    TwoTriangleCheck::Violated {
        detail: "two equilateral classes".to_string(),
    }
}

/// A finite triangular-lattice patch from which subsets are drawn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticePatch {
    /// Cells `(i, j)` with `0 <= i < cols`, `0 <= j < rows`.
    Parallelogram { cols: i64, rows: i64 },
    /// Cells with hexagonal distance at most `radius` from the origin.
    HexBall { radius: i64 },
    /// Cells `(i, j)` with `i, j >= 0` and `i + j <= side`.
    Triangle { side: i64 },
}

impl LatticePatch {
    pub fn cells(&self) -> Vec<(i64, i64)> {
        let mut cells = Vec::new();
        match *self {
            LatticePatch::Parallelogram { cols, rows } => {
                for i in 0..cols {
                    for j in 0..rows {
                        cells.push((i, j));
                    }
                }
            }
            LatticePatch::HexBall { radius } => {
                for i in -radius..=radius {
                    for j in -radius..=radius {
                        if (i + j).abs() <= radius {
                            cells.push((i, j));
                        }
                    }
                }
            }
            LatticePatch::Triangle { side } => {
                for i in 0..=side {
                    for j in 0..=(side - i) {
                        cells.push((i, j));
                    }
                }
            }
        }
        cells.sort_unstable();
        cells
    }
}

/// Result of an exhaustive lattice-subset enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSearchResult {
    pub target_k: usize,
    pub patch_points: usize,
    /// Size of the largest subset with exactly `k` distinct distances, and
    /// one witness, if any subset qualifies.
    pub max_size: Option<usize>,
    pub witness: Vec<(i64, i64)>,
    pub nodes_visited: u64,
    /// False when the node budget cut the enumeration short.
    pub complete: bool,
}

const LATTICE_PATCH_LIMIT: usize = 40;
const LATTICE_K_LIMIT: usize = 5;

/// Exhaustively enumerates subsets of a lattice patch, reporting the
/// maximal subset size with exactly `k` distinct squared distances.
/// Lattice squared distances are plain integers, so the enumeration runs on
/// `i64` values; witnesses can be re-checked with an exact census.
pub fn lattice_enumerate(
    k: usize,
    patch: &LatticePatch,
    max_nodes: u64,
) -> Result<LatticeSearchResult, SearchError> {
    if !(1..=LATTICE_K_LIMIT).contains(&k) {
        return Err(SearchError::UnsupportedK {
            got: k,
            max: LATTICE_K_LIMIT,
        });
    }
    let cells = patch.cells();
    if cells.len() > LATTICE_PATCH_LIMIT {
        return Err(SearchError::PatchTooLarge {
            got: cells.len(),
            max: LATTICE_PATCH_LIMIT,
        });
    }
    let n = cells.len();
    let mut sq = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (di, dj) = (cells[i].0 - cells[j].0, cells[i].1 - cells[j].1);
            sq[i][j] = di * di + di * dj + dj * dj;
        }
    }

    struct Dfs<'a> {
        sq: &'a [Vec<i64>],
        cells: &'a [(i64, i64)],
        k: usize,
        max_nodes: u64,
        nodes: u64,
        complete: bool,
        best: Option<usize>,
        witness: Vec<(i64, i64)>,
    }

    impl Dfs<'_> {
        fn run(&mut self, next: usize, chosen: &mut Vec<usize>, distances: &mut BTreeMap<i64, usize>) {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.complete = false;
                return;
            }
            if distances.len() == self.k && self.best.is_none_or(|b| chosen.len() > b) {
                self.best = Some(chosen.len());
                self.witness = chosen.iter().map(|&i| self.cells[i]).collect();
            }
            if next == self.sq.len() {
                return;
            }
            let remaining = self.sq.len() - next;
            if let Some(b) = self.best {
                if chosen.len() + remaining <= b {
                    return;
                }
            }
            // Include branch.
            let mut registered: Vec<i64> = Vec::with_capacity(chosen.len());
            let mut fits = true;
            for &c in chosen.iter() {
                let v = self.sq[c][next];
                *distances.entry(v).or_insert(0) += 1;
                registered.push(v);
                if distances.len() > self.k {
                    fits = false;
                    break;
                }
            }
            if fits {
                chosen.push(next);
                self.run(next + 1, chosen, distances);
                chosen.pop();
            }
            for v in registered {
                let e = distances.get_mut(&v).unwrap();
                *e -= 1;
                if *e == 0 {
                    distances.remove(&v);
                }
            }
            // Exclude branch.
            self.run(next + 1, chosen, distances);
        }
    }

    let mut dfs = Dfs {
        sq: &sq,
        cells: &cells,
        k,
        max_nodes,
        nodes: 0,
        complete: true,
        best: None,
        witness: Vec::new(),
    };
    dfs.run(0, &mut Vec::new(), &mut BTreeMap::new());
    Ok(LatticeSearchResult {
        target_k: k,
        patch_points: n,
        max_size: dfs.best,
        witness: dfs.witness,
        nodes_visited: dfs.nodes,
        complete: dfs.complete,
    })
}

/// Re-checks a recorded outcome against a fresh census of the rebuilt
/// candidate configuration; guards against stale search state.
pub fn recheck_violation(outcome: &CandidateOutcome, rebuilt: &Configuration) -> bool {
    let report = census_of_configuration(rebuilt);
    report.triangle_class_count() == outcome.triangle_classes
        && report.distance_class_count() == outcome.distance_classes
}

/// The set of distinct squared distances of a lattice subset; exposed for
/// cross-checking lattice witnesses against exact censuses.
pub fn lattice_distance_set(cells: &[(i64, i64)]) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for (a, cell) in cells.iter().enumerate() {
        for other in &cells[a + 1..] {
            let (di, dj) = (cell.0 - other.0, cell.1 - other.1);
            out.insert(di * di + di * dj + dj * dj);
        }
    }
    out
}
