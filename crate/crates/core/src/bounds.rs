//! Closed-form lower bounds on distinct-triangle counts, and the exact
//! minimal triples-covering-pairs solver that certifies them.
//!
//! A point determining `n` distinct distances turns every pair of those
//! distances into a triangle, and a triangle is an unordered triple of side
//! lengths. The least number of triangles compatible with such a point is
//! therefore the least number of unordered triples over `1..=n` covering
//! all unordered pairs — a covering-design problem solved here exactly by
//! branch and bound, with minimality certified by exhausting the next
//! smaller size. Repeated distances add doubled pairs `(a, a)` which force
//! triples of the form `(a, a, b)`.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{what} = {got} exceeds the exact-solver limit {max}")]
    ResourceLimit {
        what: &'static str,
        got: usize,
        max: usize,
    },
    #[error("symbol {symbol} outside the universe 1..={n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("required doubled symbols {m} exceed the universe size {n}")]
    TooManyDoubles { m: usize, n: usize },
}

/// Maximum number of distinct distances a set determining `t` distinct
/// triangles can have: `2t + 1`.
pub fn max_distinct_distances(t: u64) -> u64 {
    assert!(t >= 1, "max_distinct_distances requires t >= 1");
    2 * t + 1
}

/// Minimum number of distinct triangles forced by a point determining `n`
/// distinct distances: `ceil(n/3 * floor(n/2))`, the minimal size of a
/// triple cover of all pairs over `n` symbols.
pub fn min_triangles_for_distances(n: u64) -> u64 {
    assert!(n >= 1, "min_triangles_for_distances requires n >= 1");
    (n * (n / 2)).div_ceil(3)
}

/// Minimum number of distinct triangles forced by a point determining `n`
/// distinct distances of which `m` are attained by two or more points:
/// `ceil((n(n-1) + 4m) / 6)`.
pub fn min_triangles_with_repeats(n: u64, m: u64) -> u64 {
    assert!(n >= 1, "min_triangles_with_repeats requires n >= 1");
    assert!(m <= n, "min_triangles_with_repeats requires m <= n");
    (n * (n - 1) + 4 * m).div_ceil(6)
}

/// An unordered pair over `1..=n`; `(a, a)` encodes a doubled symbol.
pub type Pair = (usize, usize);

/// An unordered triple, stored as a nondecreasing multiset. A repeated
/// entry, as in `(a, a, b)`, covers the doubled pair `(a, a)`.
pub type Triple = [usize; 3];

fn pairs_of(t: &Triple) -> BTreeSet<Pair> {
    let [a, b, c] = *t;
    [(a, b), (a, c), (b, c)].into_iter().collect()
}

/// A pairs-to-be-covered-by-triples instance over symbols `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverInstance {
    n: usize,
    required: BTreeSet<Pair>,
}

impl CoverInstance {
    /// All `C(n, 2)` pairs of distinct symbols.
    pub fn all_pairs(n: usize) -> Self {
        let mut required = BTreeSet::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                required.insert((a, b));
            }
        }
        CoverInstance { n, required }
    }

    /// All distinct pairs plus the doubled pairs `(a, a)` for the first `m`
    /// symbols. (The cover size is invariant under which symbols carry the
    /// doubles; fixing `1..=m` keeps instances canonical.)
    pub fn with_repeats(n: usize, m: usize) -> Result<Self, BoundsError> {
        if m > n {
            return Err(BoundsError::TooManyDoubles { m, n });
        }
        let mut inst = Self::all_pairs(n);
        for a in 1..=m {
            inst.required.insert((a, a));
        }
        Ok(inst)
    }

    /// An arbitrary pair set over `1..=n`; duplicates collapse.
    pub fn from_pairs(n: usize, pairs: &[Pair]) -> Result<Self, BoundsError> {
        let mut required = BTreeSet::new();
        for &(a, b) in pairs {
            for s in [a, b] {
                if s < 1 || s > n {
                    return Err(BoundsError::SymbolOutOfRange { symbol: s, n });
                }
            }
            required.insert((a.min(b), a.max(b)));
        }
        Ok(CoverInstance { n, required })
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn required_pairs(&self) -> &BTreeSet<Pair> {
        &self.required
    }

    /// Groups symbols that the instance cannot tell apart: `x` and `y` are
    /// interchangeable when swapping them maps the required set onto
    /// itself. Used for symmetry pruning during search.
    fn symbol_classes(&self) -> Vec<usize> {
        let mut class = vec![0usize; self.n + 1];
        let mut next = 0usize;
        for x in 1..=self.n {
            let mut assigned = false;
            for y in 1..x {
                if class[y] != usize::MAX && self.swap_preserves(x, y) {
                    class[x] = class[y];
                    assigned = true;
                    break;
                }
            }
            if !assigned {
                class[x] = next;
                next += 1;
            }
        }
        class
    }

    fn swap_preserves(&self, x: usize, y: usize) -> bool {
        let swap = |s: usize| {
            if s == x {
                y
            } else if s == y {
                x
            } else {
                s
            }
        };
        self.required.iter().all(|&(a, b)| {
            let (a, b) = (swap(a), swap(b));
            self.required.contains(&(a.min(b), a.max(b)))
        })
    }
}

/// A covering certificate: a set of triples such that every required pair
/// is a sub-multiset of at least one triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    pub triples: Vec<Triple>,
    pub size: usize,
}

impl CoverSolution {
    /// Verifies the covering invariant against an instance.
    pub fn covers(&self, inst: &CoverInstance) -> bool {
        inst.required
            .iter()
            .all(|pair| self.triples.iter().any(|t| pairs_of(t).contains(pair)))
    }
}

struct Search<'a> {
    inst: &'a CoverInstance,
    classes: Vec<usize>,
    chosen: Vec<Triple>,
    uncovered: BTreeSet<Pair>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a CoverInstance) -> Self {
        Search {
            inst,
            classes: inst.symbol_classes(),
            chosen: Vec::new(),
            uncovered: inst.required.clone(),
            used: vec![false; inst.n + 1],
        }
    }

    /// Sound lower bound on the triples still needed: a triple covers at
    /// most 3 pairs overall and at most 2 pairs incident to any one symbol,
    /// and contains at most 3 distinct symbols.
    fn lower_bound(&self) -> usize {
        if self.uncovered.is_empty() {
            return 0;
        }
        let by_pairs = self.uncovered.len().div_ceil(3);
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in &self.uncovered {
            *degree.entry(a).or_insert(0) += 1;
            if b != a {
                *degree.entry(b).or_insert(0) += 1;
            }
        }
        let incidences: usize = degree.values().map(|&r| r.div_ceil(2)).sum();
        by_pairs.max(incidences.div_ceil(3))
    }

    /// Candidate triples covering `pair`, deterministically ordered.
    ///
    /// Triples with a repeated symbol are dominated unless the matching
    /// doubled pair is actually required, except in a universe of fewer
    /// than three symbols where no distinct triple exists.
    fn candidates(&self, pair: Pair) -> Vec<Triple> {
        let n = self.inst.n;
        let (a, b) = pair;
        let mut out = Vec::new();
        if a == b {
            for c in 1..=n {
                if c != a {
                    let mut t = [a, a, c];
                    t.sort_unstable();
                    out.push(t);
                }
            }
            if n == 1 {
                out.push([a, a, a]);
            }
        } else {
            for c in 1..=n {
                if c != a && c != b {
                    let mut t = [a, b, c];
                    t.sort_unstable();
                    out.push(t);
                }
            }
            for (dbl, other) in [(a, b), (b, a)] {
                if self.inst.required.contains(&(dbl, dbl)) {
                    let mut t = [dbl, dbl, other];
                    t.sort_unstable();
                    out.push(t);
                }
            }
            if out.is_empty() {
                // n == 2 with no doubles: fall back to one repeated form.
                out.push([a, a, b]);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Drops candidates that differ only in which fresh, interchangeable
    /// symbol they introduce, keeping the smallest per class.
    fn prune_symmetric(&self, pair: Pair, cands: Vec<Triple>) -> Vec<Triple> {
        let mut seen_classes = BTreeSet::new();
        let mut out = Vec::with_capacity(cands.len());
        for t in cands {
            let fresh: Vec<usize> = t
                .iter()
                .copied()
                .filter(|&s| s != pair.0 && s != pair.1 && !self.used[s])
                .collect();
            match fresh.as_slice() {
                [z] => {
                    if seen_classes.insert(self.classes[*z]) {
                        out.push(t);
                    }
                }
                _ => out.push(t),
            }
        }
        out
    }

    fn select_pair(&self) -> Pair {
        *self
            .uncovered
            .iter()
            .min_by_key(|&&p| (self.candidates(p).len(), p))
            .expect("select_pair on an empty uncovered set")
    }

    fn dfs(&mut self, budget: usize) -> Option<Vec<Triple>> {
        if self.uncovered.is_empty() {
            return Some(self.chosen.clone());
        }
        if self.chosen.len() + self.lower_bound() > budget {
            return None;
        }
        let pair = self.select_pair();
        let cands = self.prune_symmetric(pair, self.candidates(pair));
        for t in cands {
            let newly: Vec<Pair> = pairs_of(&t)
                .into_iter()
                .filter(|p| self.uncovered.remove(p))
                .collect();
            let newly_used: Vec<usize> = t
                .iter()
                .copied()
                .filter(|&s| !self.used[s])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            for &s in &newly_used {
                self.used[s] = true;
            }
            self.chosen.push(t);

            let found = self.dfs(budget);

            self.chosen.pop();
            for &s in &newly_used {
                self.used[s] = false;
            }
            for p in newly {
                self.uncovered.insert(p);
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Is there a cover of `inst` using at most `size` triples? A complete,
/// exactly-pruned search; a `false` answer certifies nonexistence.
pub fn cover_exists(inst: &CoverInstance, size: usize) -> bool {
    Search::new(inst).dfs(size).is_some()
}

/// The exact minimal cover of an instance, found by deepening the budget
/// from the combinatorial lower bound. The result is canonical: triples
/// sorted, list sorted.
pub fn solve_min_cover(inst: &CoverInstance) -> CoverSolution {
    let mut search = Search::new(inst);
    let mut budget = search.lower_bound();
    loop {
        if let Some(mut triples) = search.dfs(budget) {
            triples.sort_unstable();
            let solution = CoverSolution {
                size: triples.len(),
                triples,
            };
            debug_assert!(solution.covers(inst));
            return solution;
        }
        budget += 1;
    }
}

/// Minimal number of triples over `1..=n` covering all pairs of distinct
/// symbols, with a certificate. Exact for `1 <= n <= 12`.
pub fn min_triple_cover(n: usize) -> Result<CoverSolution, BoundsError> {
    if !(1..=12).contains(&n) {
        return Err(BoundsError::ResourceLimit {
            what: "n",
            got: n,
            max: 12,
        });
    }
    Ok(solve_min_cover(&CoverInstance::all_pairs(n)))
}

/// Minimal cover when `m` of the `n` symbols additionally carry doubled
/// pairs. Exact for `0 <= m <= n <= 10`.
pub fn min_cover_with_repeats(n: usize, m: usize) -> Result<CoverSolution, BoundsError> {
    if !(1..=10).contains(&n) {
        return Err(BoundsError::ResourceLimit {
            what: "n",
            got: n,
            max: 10,
        });
    }
    let inst = CoverInstance::with_repeats(n, m)?;
    Ok(solve_min_cover(&inst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(max_distinct_distances(1), 3);
        assert_eq!(max_distinct_distances(2), 5);
        assert_eq!(max_distinct_distances(4), 9);

        assert_eq!(min_triangles_for_distances(3), 1);
        assert_eq!(min_triangles_for_distances(4), 3);
        assert_eq!(min_triangles_for_distances(5), 4);

        assert_eq!(min_triangles_with_repeats(3, 2), 3);
        assert_eq!(min_triangles_with_repeats(1, 0), 0);
        assert_eq!(min_triangles_with_repeats(4, 1), 3);
    }

    #[test]
    #[should_panic(expected = "t >= 1")]
    fn max_distinct_distances_rejects_zero() {
        max_distinct_distances(0);
    }

    #[test]
    #[should_panic(expected = "m <= n")]
    fn repeats_bound_rejects_m_above_n() {
        min_triangles_with_repeats(2, 3);
    }

    /// Brute-force oracle: smallest k such that some k-subset of the
    /// candidate triples covers the instance. Candidates are all triples of
    /// distinct symbols plus `(a, a, b)` for each required doubled pair
    /// (a repeated symbol in a triple is never useful otherwise, and
    /// `(a, a, a)` only exists in a one-symbol universe).
    fn dumb_min_cover(inst: &CoverInstance) -> usize {
        let n = inst.universe();
        let mut candidates: Vec<Triple> = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                for c in (b + 1)..=n {
                    candidates.push([a, b, c]);
                }
            }
        }
        for &(a, b) in inst.required_pairs() {
            if a == b {
                for c in 1..=n {
                    if c != a {
                        let mut t = [a, a, c];
                        t.sort_unstable();
                        candidates.push(t);
                    }
                }
                if n == 1 {
                    candidates.push([a, a, a]);
                }
            } else if n == 2 {
                candidates.push([a, a, b]);
                candidates.push([a, b, b]);
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        if inst.required_pairs().is_empty() {
            return 0;
        }
        for k in 1..=inst.required_pairs().len() {
            if any_subset_covers(&candidates, k, inst) {
                return k;
            }
        }
        unreachable!("one triple per pair always covers");
    }

    fn any_subset_covers(candidates: &[Triple], k: usize, inst: &CoverInstance) -> bool {
        fn rec(
            candidates: &[Triple],
            start: usize,
            left: usize,
            picked: &mut Vec<Triple>,
            inst: &CoverInstance,
        ) -> bool {
            if left == 0 {
                let sol = CoverSolution {
                    triples: picked.clone(),
                    size: picked.len(),
                };
                return sol.covers(inst);
            }
            for i in start..candidates.len() {
                picked.push(candidates[i]);
                if rec(candidates, i + 1, left - 1, picked, inst) {
                    return true;
                }
                picked.pop();
            }
            false
        }
        rec(candidates, 0, k, &mut Vec::new(), inst)
    }

    #[test]
    fn solver_matches_dumb_oracle_on_small_plain_instances() {
        for n in 1..=6 {
            let inst = CoverInstance::all_pairs(n);
            assert_eq!(
                solve_min_cover(&inst).size,
                dumb_min_cover(&inst),
                "all_pairs({n})"
            );
        }
    }

    #[test]
    fn solver_matches_dumb_oracle_with_repeats() {
        for n in 1..=4usize {
            for m in 0..=n {
                let inst = CoverInstance::with_repeats(n, m).unwrap();
                assert_eq!(
                    solve_min_cover(&inst).size,
                    dumb_min_cover(&inst),
                    "with_repeats({n},{m})"
                );
            }
        }
    }

    #[test]
    fn triple_cover_examples() {
        let sol = min_triple_cover(3).unwrap();
        assert_eq!(sol.size, 1);
        assert_eq!(sol.triples, vec![[1, 2, 3]]);

        assert_eq!(min_triple_cover(5).unwrap().size, 4);
        assert_eq!(min_triple_cover(6).unwrap().size, 6);
        assert!(matches!(
            min_triple_cover(13),
            Err(BoundsError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn cover_with_repeats_examples() {
        assert_eq!(min_cover_with_repeats(3, 0).unwrap().size, 1);
        assert_eq!(min_cover_with_repeats(3, 2).unwrap().size, 3);
        // Pairs (1,1), (2,2), (1,2) are covered by (1,1,2) and (1,2,2).
        let sol = min_cover_with_repeats(2, 2).unwrap();
        assert_eq!(sol.size, 2);
        assert!(sol.covers(&CoverInstance::with_repeats(2, 2).unwrap()));
    }

    #[test]
    fn certificates_always_cover() {
        for n in 1..=8 {
            let inst = CoverInstance::all_pairs(n);
            let sol = solve_min_cover(&inst);
            assert!(sol.covers(&inst), "n = {n}");
            assert_eq!(sol.size, sol.triples.len());
        }
    }

    #[test]
    fn minimality_is_certified_by_the_next_smaller_size() {
        for n in 3..=7 {
            let inst = CoverInstance::all_pairs(n);
            let sol = solve_min_cover(&inst);
            assert!(!cover_exists(&inst, sol.size - 1), "n = {n}");
            assert!(cover_exists(&inst, sol.size));
        }
    }

    #[test]
    fn size_is_invariant_under_which_symbols_carry_doubles() {
        // Doubles on {1, 2} vs doubles on {3, 5}: same universe, same size.
        let canonical = CoverInstance::with_repeats(5, 2).unwrap();
        let mut pairs: Vec<Pair> = CoverInstance::all_pairs(5)
            .required_pairs()
            .iter()
            .copied()
            .collect();
        pairs.push((3, 3));
        pairs.push((5, 5));
        let shifted = CoverInstance::from_pairs(5, &pairs).unwrap();
        assert_eq!(
            solve_min_cover(&canonical).size,
            solve_min_cover(&shifted).size
        );
    }

    #[test]
    fn monotone_in_universe_and_doubles() {
        let mut prev = 0;
        for n in 1..=8 {
            let size = solve_min_cover(&CoverInstance::all_pairs(n)).size;
            assert!(size >= prev, "monotone in n at {n}");
            prev = size;
        }
        for n in 1..=6usize {
            let mut prev = 0;
            for m in 0..=n {
                let size = min_cover_with_repeats(n, m).unwrap().size;
                assert!(size >= prev, "monotone in m at ({n},{m})");
                prev = size;
            }
        }
    }

    #[test]
    fn instance_validation() {
        assert!(matches!(
            CoverInstance::with_repeats(3, 4),
            Err(BoundsError::TooManyDoubles { m: 4, n: 3 })
        ));
        assert!(matches!(
            CoverInstance::from_pairs(3, &[(0, 1)]),
            Err(BoundsError::SymbolOutOfRange { symbol: 0, n: 3 })
        ));
        assert!(matches!(
            CoverInstance::from_pairs(3, &[(1, 4)]),
            Err(BoundsError::SymbolOutOfRange { symbol: 4, n: 3 })
        ));
    }
}
