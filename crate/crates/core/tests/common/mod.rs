//! Shared helpers for the integration suites: a small deterministic PRNG,
//! random rational configurations, and exact isometries.

// Each test target compiles this module separately and uses a different
// subset of it.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use tricensus::exactnum::QuadExt;
use tricensus::geometry::{Configuration, Point};

/// xorshift64*; deterministic and dependency-free.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// A small random rational with numerator in `-8..=8` and denominator
    /// in `1..=4`.
    pub fn small_rational(&mut self) -> BigRational {
        BigRational::new(
            BigInt::from(self.range_i64(-8, 8)),
            BigInt::from(self.range_i64(1, 4)),
        )
    }
}

pub fn rational_point(rng: &mut Rng, dim: usize) -> Point {
    Point::new(
        (0..dim)
            .map(|_| QuadExt::from_rational(rng.small_rational()))
            .collect(),
    )
}

/// A random configuration of `n` pairwise distinct rational points in
/// `R^dim`; resamples colliding points.
pub fn random_configuration(rng: &mut Rng, n: usize, dim: usize) -> Configuration {
    let mut points: Vec<Point> = Vec::with_capacity(n);
    while points.len() < n {
        let candidate = rational_point(rng, dim);
        if points
            .iter()
            .all(|p| !p.squared_distance(&candidate).is_zero())
        {
            points.push(candidate);
        }
    }
    Configuration::new(points, None).expect("random points are valid")
}

/// An exact isometry: permute coordinates, flip signs, then translate by a
/// rational vector.
pub struct Isometry {
    pub axis_perm: Vec<usize>,
    pub flip: Vec<bool>,
    pub shift: Vec<BigRational>,
}

impl Isometry {
    pub fn random(rng: &mut Rng, dim: usize) -> Self {
        let mut axis_perm: Vec<usize> = (0..dim).collect();
        for i in (1..dim).rev() {
            axis_perm.swap(i, rng.below((i + 1) as u64) as usize);
        }
        Isometry {
            axis_perm,
            flip: (0..dim).map(|_| rng.below(2) == 1).collect(),
            shift: (0..dim).map(|_| rng.small_rational()).collect(),
        }
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        let coords: Vec<QuadExt> = (0..p.dim())
            .map(|i| {
                let mut c = p.coord(self.axis_perm[i]).clone();
                if self.flip[i] {
                    c = -c;
                }
                c + QuadExt::from_rational(self.shift[i].clone())
            })
            .collect();
        Point::new(coords)
    }

    pub fn apply(&self, cfg: &Configuration) -> Configuration {
        let points = cfg.points().iter().map(|p| self.apply_point(p)).collect();
        Configuration::new(points, cfg.labels().map(|l| l.to_vec()))
            .expect("isometries preserve validity")
    }
}

/// A random permutation of `0..n`.
pub fn random_permutation(rng: &mut Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.below((i + 1) as u64) as usize);
    }
    perm
}
