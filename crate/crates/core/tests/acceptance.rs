//! Acceptance gate: one test per shipped guarantee, each printing a
//! `[PASS]`/`[FAIL]` line (run with `--nocapture` to see them) and each
//! pinned to a wall-clock budget.
//!
//! Run: `cargo test -p tricensus --test acceptance -- --nocapture`

mod common;

use common::{random_configuration, Rng};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::time::{Duration, Instant};
use tricensus::bounds::{
    cover_exists, min_cover_with_repeats, min_triangles_with_repeats, min_triple_cover,
    CoverInstance,
};
use tricensus::census::{census, census_of_configuration, TriangleClass};
use tricensus::exactnum::QuadExt;
use tricensus::generators::{catalog, orthoplex, pentagon, simplex, square_center};
use tricensus::geometry::{biequidistant_sphere_check, circumcenter};
use tricensus::search::{
    augment_orthoplex, perturb_orthoplex, structure_report, GridSpec, TwoTriangleCheck,
};

struct Criterion {
    name: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str, budget: Duration) -> Self {
        Criterion {
            name,
            budget,
            started: Instant::now(),
        }
    }

    fn finish(self, failures: Vec<String>) {
        let elapsed = self.started.elapsed();
        if failures.is_empty() && elapsed <= self.budget {
            println!("[PASS] {} ({elapsed:.2?})", self.name);
            return;
        }
        println!("[FAIL] {} ({elapsed:.2?})", self.name);
        for f in &failures {
            println!("       - {f}");
        }
        assert!(
            failures.is_empty(),
            "{}: {} failure(s): {}",
            self.name,
            failures.len(),
            failures.join("; ")
        );
        assert!(
            elapsed <= self.budget,
            "{}: took {elapsed:?}, budget {:?}",
            self.name,
            self.budget
        );
    }
}

fn int_class(a: i64, b: i64, c: i64) -> TriangleClass {
    TriangleClass::from_squared_sides(
        QuadExt::from_integer(a),
        QuadExt::from_integer(b),
        QuadExt::from_integer(c),
    )
    .unwrap()
}

#[test]
fn acceptance_01_orthoplex_census() {
    let c = Criterion::start(
        "1. orthoplex census: 2 triangle classes and 2 distance classes for d = 3..6",
        Duration::from_secs(1),
    );
    let mut failures = Vec::new();
    for d in 3..=6usize {
        let cfg = orthoplex(d, &BigRational::one()).unwrap();
        let report = census_of_configuration(&cfg);
        if report.triangle_class_count() != 2 {
            failures.push(format!(
                "d={d}: {} triangle classes",
                report.triangle_class_count()
            ));
        }
        if report.distance_class_count() != 2 {
            failures.push(format!(
                "d={d}: {} distance classes",
                report.distance_class_count()
            ));
        }
        if d == 3 {
            let expected = vec![(int_class(2, 2, 2), 8usize), (int_class(2, 2, 4), 12usize)];
            if report.triangle_classes != expected {
                failures.push(format!("d=3 classes: {:?}", report.triangle_classes));
            }
        }
    }
    c.finish(failures);
}

#[test]
fn acceptance_02_simplex_single_class() {
    let c = Criterion::start(
        "2. simplex census: exactly 1 triangle class for d = 3..6",
        Duration::from_secs(1),
    );
    let mut failures = Vec::new();
    for d in 3..=6usize {
        let report = census(&simplex(d).unwrap().into()).unwrap();
        if report.triangle_class_count() != 1 {
            failures.push(format!(
                "d={d}: {} triangle classes",
                report.triangle_class_count()
            ));
        }
    }
    c.finish(failures);
}

#[test]
fn acceptance_03_planar_two_triangle_optima() {
    let c = Criterion::start(
        "3. square-with-center and pentagon: exactly 2 triangle classes, pentagon in Q(sqrt 5)",
        Duration::from_secs(1),
    );
    let mut failures = Vec::new();
    let sc = census_of_configuration(&square_center());
    if sc.triangle_class_count() != 2 {
        failures.push(format!(
            "square_center: {} triangle classes",
            sc.triangle_class_count()
        ));
    }
    let pent = pentagon();
    let uses_sqrt5 = pent
        .rows()
        .iter()
        .flatten()
        .any(|v| v.radicand() == 5);
    if !uses_sqrt5 {
        failures.push("pentagon matrix does not use sqrt(5)".to_string());
    }
    let pr = census(&pent.into()).unwrap();
    if pr.triangle_class_count() != 2 {
        failures.push(format!(
            "pentagon: {} triangle classes",
            pr.triangle_class_count()
        ));
    }
    c.finish(failures);
}

#[test]
fn acceptance_04_distance_count_inequality_suite() {
    let c = Criterion::start(
        "4. |distance classes| <= 2 |triangle classes| + 1 on 500 random configurations plus all generators",
        Duration::from_secs(30),
    );
    let mut failures = Vec::new();
    let mut rng = Rng::new(0xacce_0004);
    let mut checked = 0usize;
    while checked < 500 {
        let dim = rng.range_i64(2, 4) as usize;
        let n = rng.range_i64(3, 10) as usize;
        let cfg = random_configuration(&mut rng, n, dim);
        let report = census_of_configuration(&cfg);
        let t = report.triangle_class_count();
        if t == 0 {
            continue; // the inequality presumes a noncollinear triple
        }
        checked += 1;
        if report.distance_class_count() > 2 * t + 1 {
            failures.push(format!(
                "random cfg #{checked} (n={n}, d={dim}): {} distances vs {} triangles",
                report.distance_class_count(),
                t
            ));
        }
    }
    for (name, set) in catalog() {
        let report = census(&set).unwrap();
        let t = report.triangle_class_count();
        if t >= 1 && report.distance_class_count() > 2 * t + 1 {
            failures.push(format!("{name}: inequality violated"));
        }
    }
    c.finish(failures);
}

#[test]
fn acceptance_05_minimal_triple_covers() {
    let c = Criterion::start(
        "5. minimal triple covers: size = ceil(n/3 * floor(n/2)) for n = 3..9, certificates verified, size-1 certified impossible",
        Duration::from_secs(120),
    );
    let mut failures = Vec::new();
    for n in 3..=9usize {
        let expected = (n * (n / 2)).div_ceil(3);
        let inst = CoverInstance::all_pairs(n);
        let sol = min_triple_cover(n).unwrap();
        if sol.size != expected {
            failures.push(format!("n={n}: size {} != {expected}", sol.size));
        }
        if !sol.covers(&inst) {
            failures.push(format!("n={n}: certificate does not cover"));
        }
        if cover_exists(&inst, sol.size - 1) {
            failures.push(format!("n={n}: a smaller cover exists"));
        }
    }
    c.finish(failures);
}

#[test]
fn acceptance_06_repeat_bound_soundness() {
    let c = Criterion::start(
        "6. ceil((n(n-1)+4m)/6) lower-bounds the exact cover with doubled pairs for n <= 7, m <= n",
        Duration::from_secs(120),
    );
    let mut failures = Vec::new();
    for n in 1..=7usize {
        for m in 0..=n {
            let sol = min_cover_with_repeats(n, m).unwrap();
            let bound = min_triangles_with_repeats(n as u64, m as u64);
            if (sol.size as u64) < bound {
                failures.push(format!(
                    "n={n}, m={m}: exact cover {} below the formula {bound}",
                    sol.size
                ));
            }
        }
    }
    // The (n=3, m=2) instance evaluates to 3 and the solver matches it.
    if min_triangles_with_repeats(3, 2) != 3 {
        failures.push("formula (3,2) != 3".to_string());
    }
    if min_cover_with_repeats(3, 2).unwrap().size != 3 {
        failures.push("solver (3,2) != 3".to_string());
    }
    c.finish(failures);
}

#[test]
fn acceptance_07_augmentation_desk_check() {
    let c = Criterion::start(
        "7. every 7th point appended to the 3-orthoplex (grid {-2..2}^3 step 1/2) yields >= 3 triangle classes",
        Duration::from_secs(60),
    );
    let mut failures = Vec::new();
    let grid = GridSpec::new(
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        BigRational::from_integer(BigInt::from(2)),
    )
    .unwrap();
    let result = augment_orthoplex(3, &grid, 1_000_000).unwrap();
    if result.candidates_tested != 9usize.pow(3) - 6 {
        failures.push(format!(
            "expected 723 candidates, tested {}",
            result.candidates_tested
        ));
    }
    for v in result.violations() {
        failures.push(format!(
            "candidate {} has only {} triangle classes",
            v.label, v.triangle_classes
        ));
    }
    c.finish(failures);
}

#[test]
fn acceptance_08_perturbation_desk_check() {
    let c = Criterion::start(
        "8. one-vertex offsets in {-1/2,0,1/2}^3 \\ {0} never leave <= 2 triangle classes except on exact cross-polytopes",
        Duration::from_secs(60),
    );
    let mut failures = Vec::new();
    let grid = GridSpec::new(
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        BigRational::new(BigInt::from(1), BigInt::from(2)),
    )
    .unwrap();
    let result = perturb_orthoplex(3, &grid, 1_000_000).unwrap();
    // 26 nonzero offsets for each of the 6 vertices.
    if result.candidates_tested + result.skipped_degenerate != 6 * 26 {
        failures.push(format!(
            "expected 156 perturbations, saw {} tested + {} skipped",
            result.candidates_tested, result.skipped_degenerate
        ));
    }
    for v in result.violations() {
        failures.push(format!(
            "perturbation {} kept {} classes without being a cross-polytope",
            v.label, v.triangle_classes
        ));
    }
    c.finish(failures);
}

#[test]
fn acceptance_09_geometry_predicates() {
    let c = Criterion::start(
        "9. 200 random circumcenters pass equidistance; 200 biequidistant instances agree with the decomposition",
        Duration::from_secs(30),
    );
    let mut failures = Vec::new();
    let mut rng = Rng::new(0xacce_0009);

    let mut centers = 0usize;
    while centers < 200 {
        let dim = rng.range_i64(2, 4) as usize;
        let cfg = random_configuration(&mut rng, dim + 1, dim);
        match circumcenter(cfg.points()) {
            Ok(center) => {
                centers += 1;
                let r2 = center.squared_distance(cfg.point(0));
                for i in 1..cfg.len() {
                    if center.squared_distance(cfg.point(i)) != r2 {
                        failures.push(format!("circumcenter #{centers} not equidistant"));
                    }
                }
            }
            Err(_) => continue, // affinely dependent sample; draw again
        }
    }

    let mut spheres = 0usize;
    let mut positives = 0usize;
    while spheres < 200 {
        let dim = rng.range_i64(2, 4) as usize;
        let a = common::rational_point(&mut rng, dim);
        let b = common::rational_point(&mut rng, dim);
        if a.squared_distance(&b).is_zero() {
            continue;
        }
        let x = if spheres % 2 == 0 {
            // Guaranteed member of the locus: project a random point onto
            // the bisector hyperplane of a and b.
            let w = common::rational_point(&mut rng, dim);
            let diff: Vec<QuadExt> = b
                .coords()
                .iter()
                .zip(a.coords())
                .map(|(u, v)| u - v)
                .collect();
            let diff_norm2 = diff
                .iter()
                .fold(QuadExt::from_integer(0), |acc, c| acc + c * c);
            let mid = tricensus::geometry::Point::midpoint(&a, &b);
            let w_rel: Vec<QuadExt> = w
                .coords()
                .iter()
                .zip(mid.coords())
                .map(|(u, v)| u - v)
                .collect();
            let proj = w_rel
                .iter()
                .zip(&diff)
                .fold(QuadExt::from_integer(0), |acc, (u, v)| acc + u * v)
                / &diff_norm2;
            let in_plane: Vec<QuadExt> = w_rel
                .iter()
                .zip(&diff)
                .map(|(u, v)| u - &proj * v)
                .collect();
            mid.translated(&in_plane)
        } else {
            common::rational_point(&mut rng, dim)
        };
        let r2 = x.squared_distance(&a);
        if r2.is_zero() {
            continue;
        }
        let quarter_gap2 = &a.squared_distance(&b) * &QuadExt::ratio(1, 4);
        if (&r2 - &quarter_gap2).sign() <= 0 {
            continue;
        }
        spheres += 1;
        // biequidistant_sphere_check asserts the two-route equivalence
        // internally on every call; a mismatch panics the test.
        let verdict = biequidistant_sphere_check(&a, &b, &r2, &x).unwrap();
        if verdict != (x.squared_distance(&b) == r2) {
            failures.push(format!("biequidistant #{spheres} verdict wrong"));
        }
        if verdict {
            positives += 1;
        }
    }
    if positives < 50 {
        failures.push(format!("only {positives} positive biequidistant cases"));
    }
    c.finish(failures);
}

#[test]
fn acceptance_10_two_triangle_structure() {
    let c = Criterion::start(
        "10. every shipped >= 2d-point configuration in d >= 3 with 2 triangle classes is (x,x,x) + (x,x,y)",
        Duration::from_secs(10),
    );
    let mut failures = Vec::new();
    let mut applicable = 0usize;
    for (name, set) in catalog() {
        let report = census(&set).unwrap();
        if report.triangle_class_count() != 2 {
            continue;
        }
        let Some(dim) = set.dimension() else {
            failures.push(format!("{name}: dimension unknown"));
            continue;
        };
        if dim < 3 || set.n_points() < 2 * dim {
            continue;
        }
        applicable += 1;
        match structure_report(&set).unwrap().two_triangle {
            TwoTriangleCheck::Verified { .. } => {}
            other => failures.push(format!("{name}: {other:?}")),
        }
    }
    if applicable == 0 {
        failures.push("no applicable configuration in the catalog".to_string());
    }
    c.finish(failures);
}
