//! Search harness for the minimizer of `P(G, L)` over `k`-list assignments.
//!
//! Above the threshold `k > (m-1)/ln(1+√2)`, every non-constant assignment
//! on a connected uniform hypergraph must give strictly more colorings than
//! the constant one. The harness enumerates assignments (exhaustively up to
//! renaming of colors, or by seeded sampling), counts each one exactly, and
//! records the minimum together with the per-assignment lemma checks.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bound_holds, difference_bound, difference_via_fi, fi_terms, threshold, ThresholdReport};
use crate::chromatic::chromatic_poly_broken_with;
use crate::cycles::{broken_cycles, BrokenCycleFamily};
use crate::hypercore::Hypergraph;
use crate::listcount::{alpha_total, expand, list_count_brute, ListAssignment};
use crate::{Error, Result};

/// Bound on `C(U, k)^n` for canonical enumeration.
pub const MAX_CANONICAL_CANDIDATES: u64 = 10_000_000;

/// Largest universe for which orbit representatives are exact.
pub const EXACT_ORBIT_UNIVERSE: usize = 8;

/// Roughly one in this many searched assignments is re-counted by brute force.
pub const CROSS_CHECK_ONE_IN: u32 = 100;

/// Cap on the number of sharpness witnesses kept in a report.
pub const MAX_STORED_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// One assignment per orbit under renaming of colors.
    ExhaustiveCanonical,
    /// Seeded uniform sampling, constant assignment always included.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub strategy: Strategy,
    pub universe: usize,
    /// Number of random assignments besides the constant one.
    pub samples: usize,
    pub k: usize,
    pub seed: u64,
}

impl SearchSpec {
    /// Exhaustive search over the default universe `k + 2`.
    pub fn exhaustive(k: usize) -> Self {
        SearchSpec {
            strategy: Strategy::ExhaustiveCanonical,
            universe: k + 2,
            samples: 0,
            k,
            seed: 0,
        }
    }

    pub fn random(k: usize, samples: usize, seed: u64) -> Self {
        SearchSpec {
            strategy: Strategy::Random,
            universe: k + 2,
            samples,
            k,
            seed,
        }
    }

    #[must_use]
    pub fn with_universe(mut self, universe: usize) -> Self {
        self.universe = universe;
        self
    }
}

/// All `k`-subsets of `0..universe` as masks, ascending.
fn k_subsets(universe: usize, k: usize) -> Vec<u64> {
    crate::cycles::SubsetsOfSize::new(universe, k).collect()
}

fn candidate_count(universe: usize, k: usize, n: usize) -> Option<u64> {
    let per_vertex: u64 = num_integer::binomial(universe as u64, k as u64);
    (0..n).try_fold(1u64, |acc, _| acc.checked_mul(per_vertex))
}

fn check_guard(n: usize, k: usize, universe: usize) -> Result<()> {
    if k == 0 || universe < k || universe > crate::listcount::MAX_UNIVERSE {
        return Err(Error::InvalidUniverse { universe, k });
    }
    if universe > k + 4 {
        return Err(Error::SearchGuard {
            reason: "canonical enumeration requires U <= k + 4",
        });
    }
    match candidate_count(universe, k, n) {
        Some(c) if c <= MAX_CANONICAL_CANDIDATES => Ok(()),
        _ => Err(Error::SearchGuard {
            reason: "C(U, k)^n exceeds 10^7 candidate assignments",
        }),
    }
}

/// One representative per orbit of `k`-list assignments on `n` vertices
/// under permutations of the color universe.
///
/// For `universe <= 8` each representative is the lexicographically least
/// member of its orbit (lists compared as masks), so the output is exact.
/// Above that, assignments are kept when relabeling colors by first
/// occurrence leaves them unchanged: every orbit is still represented, but
/// an orbit may appear more than once.
///
/// The constant assignment `{0..k-1}` on every vertex always comes first.
pub fn enumerate_canonical_assignments(n: usize, k: usize, universe: usize) -> Result<Vec<ListAssignment>> {
    check_guard(n, k, universe)?;
    let subsets = k_subsets(universe, k);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    if universe <= EXACT_ORBIT_UNIVERSE {
        let perms = permutation_tables(universe, &subsets);
        let tied: Vec<usize> = (0..perms.len()).collect();
        exact_orbits(n, &perms, &tied, &mut prefix, subsets.len(), &mut |seq| {
            out.push(seq.iter().map(|&i| subsets[i]).collect::<Vec<u64>>());
        });
    } else {
        let mut masks = Vec::with_capacity(n);
        first_occurrence(n, &subsets, 0, &mut masks, &mut |seq| out.push(seq.to_vec()));
    }
    out.into_iter()
        .map(|lists| ListAssignment::new(universe, k, lists))
        .collect()
}

/// For every permutation of the universe, the induced map on subset indices.
fn permutation_tables(universe: usize, subsets: &[u64]) -> Vec<Vec<u16>> {
    let index_of = |mask: u64| subsets.binary_search(&mask).expect("image of a k-subset") as u16;
    let mut perm: Vec<usize> = (0..universe).collect();
    let mut tables = Vec::new();
    loop {
        tables.push(
            subsets
                .iter()
                .map(|&mask| {
                    let image = crate::EdgeSubset::from_bits(mask)
                        .iter()
                        .fold(0u64, |acc, c| acc | 1 << perm[c]);
                    index_of(image)
                })
                .collect(),
        );
        if !next_permutation(&mut perm) {
            break;
        }
    }
    tables
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Depth-first search keeping only prefixes that are least in their orbit.
///
/// `tied` holds the permutations that fix the current prefix; any other
/// permutation already maps it to something strictly larger, so only the
/// tied ones can reject an extension.
fn exact_orbits<F: FnMut(&[usize])>(
    n: usize,
    perms: &[Vec<u16>],
    tied: &[usize],
    prefix: &mut Vec<usize>,
    choices: usize,
    emit: &mut F,
) {
    if prefix.len() == n {
        emit(prefix);
        return;
    }
    'candidate: for c in 0..choices {
        let mut still_tied = Vec::new();
        for &p in tied {
            let image = perms[p][c] as usize;
            if image < c {
                continue 'candidate;
            }
            if image == c {
                still_tied.push(p);
            }
        }
        prefix.push(c);
        exact_orbits(n, perms, &still_tied, prefix, choices, emit);
        prefix.pop();
    }
}

/// Depth-first search over assignments whose colors appear in first-occurrence order.
fn first_occurrence<F: FnMut(&[u64])>(n: usize, subsets: &[u64], seen: u32, prefix: &mut Vec<u64>, emit: &mut F) {
    if prefix.len() == n {
        emit(prefix);
        return;
    }
    let used = low_bits(seen);
    for &mask in subsets {
        let fresh = mask & !used;
        let count = fresh.count_ones();
        if count > 0 && fresh != low_bits(count) << seen {
            continue;
        }
        prefix.push(mask);
        first_occurrence(n, subsets, seen + count, prefix, emit);
        prefix.pop();
    }
}

fn low_bits(count: u32) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}

fn random_assignment(rng: &mut ChaCha8Rng, n: usize, k: usize, universe: usize) -> Result<ListAssignment> {
    let mut colors: Vec<usize> = (0..universe).collect();
    let lists = (0..n)
        .map(|_| {
            for i in 0..k {
                let j = rng.gen_range(i..universe);
                colors.swap(i, j);
            }
            colors[..k].iter().fold(0u64, |acc, &c| acc | 1 << c)
        })
        .collect();
    ListAssignment::new(universe, k, lists)
}

/// Whether strict minimality of the constant assignment is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Assertion,
    Exploration,
}

/// Per-assignment result of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub index: usize,
    pub count: BigInt,
    /// Brute-force count, for the sampled cross-check subset.
    pub brute: Option<BigInt>,
    pub constant: bool,
    pub alpha_total: usize,
    /// Every `f_i` lies in its sandwich and `f_1` is exact.
    pub fi_ok: bool,
    /// `P(G,L) - P(G,k) = Σ (-1)^{i-1} f_i`.
    pub identity_ok: bool,
    /// `P(G,L) - P(G,k) >= α k^{n-r} φ((m-1)/k)`.
    pub bound_ok: bool,
}

/// Everything needed to evaluate a search, prepared once.
///
/// [`evaluate`](Self::evaluate) takes `&self`, so callers may spread the
/// indices over threads and hand the results back to
/// [`finish`](Self::finish) in any order.
#[derive(Clone, Debug)]
pub struct SearchPlan<'a> {
    h: &'a Hypergraph,
    r: usize,
    spec: SearchSpec,
    mode: Mode,
    threshold: ThresholdReport,
    family: BrokenCycleFamily,
    constant_count: BigInt,
    assignments: Vec<ListAssignment>,
    cross_check: Vec<bool>,
}

impl<'a> SearchPlan<'a> {
    pub fn new(h: &'a Hypergraph, spec: SearchSpec, mode: Mode) -> Result<Self> {
        let r = h.require_uniform()?;
        if !h.is_connected() {
            return Err(Error::Disconnected);
        }
        let threshold = threshold(h.m());
        if mode == Mode::Assertion && (spec.k as u64) < threshold.k_min {
            return Err(Error::BelowThreshold {
                k: spec.k,
                k_min: threshold.k_min,
            });
        }
        let assignments = match spec.strategy {
            Strategy::ExhaustiveCanonical => enumerate_canonical_assignments(h.n(), spec.k, spec.universe)?,
            Strategy::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
                let mut all = vec![ListAssignment::constant(h.n(), spec.k, spec.universe)?];
                for _ in 0..spec.samples {
                    all.push(random_assignment(&mut rng, h.n(), spec.k, spec.universe)?);
                }
                all
            }
        };
        let brute_feasible = crate::chromatic::brute_size(core::iter::repeat_n(spec.k as u64, h.n())).is_ok();
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x5eed_c0de_0000_0001);
        let cross_check = (0..assignments.len())
            .map(|i| brute_feasible && (i == 0 || rng.gen_range(0..CROSS_CHECK_ONE_IN) == 0))
            .collect();
        let family = broken_cycles(h)?;
        let constant_count = chromatic_poly_broken_with(h, &family)?.eval(spec.k as u64);
        Ok(SearchPlan {
            h,
            r,
            spec,
            mode,
            threshold,
            family,
            constant_count,
            assignments,
            cross_check,
        })
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn assignments(&self) -> &[ListAssignment] {
        &self.assignments
    }

    /// `P(G, k)` from the broken-cycle chromatic polynomial.
    pub fn constant_count(&self) -> &BigInt {
        &self.constant_count
    }

    pub fn evaluate(&self, index: usize) -> Result<Evaluation> {
        let h = self.h;
        let l = &self.assignments[index];
        let expansion = expand(h, &self.family, l)?;
        let count = expansion.list_count();
        let terms = fi_terms(h, l, &expansion)?;
        let fi_ok = terms.iter().all(|t| t.within_sandwich() && t.first_is_exact());
        let difference = &count - &self.constant_count;
        let identity_ok = difference_via_fi(&terms) == difference;
        let alpha = alpha_total(h, l);
        let bound = difference_bound(h.n(), self.r, h.m(), self.spec.k, alpha);
        let brute = if self.cross_check[index] {
            Some(list_count_brute(h, l)?)
        } else {
            None
        };
        Ok(Evaluation {
            index,
            bound_ok: bound_holds(&difference, bound),
            count,
            brute,
            constant: l.is_constant(),
            alpha_total: alpha,
            fi_ok,
            identity_ok,
        })
    }

    /// Folds evaluations (any order, one per index) into a report.
    pub fn finish(self, mut evaluations: Vec<Evaluation>) -> MinimizerReport {
        evaluations.sort_by_key(|e| e.index);
        debug_assert_eq!(evaluations.len(), self.assignments.len());
        let mut report = MinimizerReport {
            mode: self.mode,
            spec: self.spec,
            threshold: self.threshold,
            searched: evaluations.len(),
            exact_orbits: self.spec.strategy == Strategy::ExhaustiveCanonical
                && self.spec.universe <= EXACT_ORBIT_UNIVERSE,
            constant_count: self.constant_count.clone(),
            min_count: None,
            argmin: None,
            argmin_is_constant: false,
            strict: true,
            constant_matches: true,
            witnesses: Vec::new(),
            witness_count: 0,
            cross_checked: 0,
            cross_check_mismatches: Vec::new(),
            fi_violations: 0,
            identity_violations: 0,
            bound_violations: 0,
        };
        for e in evaluations {
            let l = &self.assignments[e.index];
            if report.min_count.as_ref().is_none_or(|m| e.count < *m) {
                report.min_count = Some(e.count.clone());
                report.argmin = Some(l.clone());
                report.argmin_is_constant = e.constant;
            }
            if e.constant {
                report.constant_matches &= e.count == self.constant_count;
            } else if e.count <= self.constant_count {
                report.strict = false;
                report.witness_count += 1;
                if report.witnesses.len() < MAX_STORED_WITNESSES {
                    report.witnesses.push((l.clone(), e.count.clone()));
                }
            }
            if let Some(b) = &e.brute {
                report.cross_checked += 1;
                if *b != e.count {
                    report
                        .cross_check_mismatches
                        .push((l.clone(), e.count.clone(), b.clone()));
                }
            }
            report.fi_violations += usize::from(!e.fi_ok);
            report.identity_violations += usize::from(!e.identity_ok);
            report.bound_violations += usize::from(!e.bound_ok);
        }
        report
    }
}

/// Outcome of a minimizer search.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimizerReport {
    pub mode: Mode,
    pub spec: SearchSpec,
    pub threshold: ThresholdReport,
    pub searched: usize,
    /// Exhaustive search with exactly one assignment per orbit.
    pub exact_orbits: bool,
    /// `P(G, k)`.
    pub constant_count: BigInt,
    pub min_count: Option<BigInt>,
    /// First assignment attaining the minimum, in search order.
    pub argmin: Option<ListAssignment>,
    pub argmin_is_constant: bool,
    /// Every non-constant searched assignment had `P(G,L) > P(G,k)`.
    pub strict: bool,
    /// Constant assignments counted exactly `P(G, k)`.
    pub constant_matches: bool,
    /// Non-constant assignments with `P(G,L) <= P(G,k)` (at most [`MAX_STORED_WITNESSES`]).
    pub witnesses: Vec<(ListAssignment, BigInt)>,
    pub witness_count: usize,
    pub cross_checked: usize,
    /// `(L, expansion count, brute count)` disagreements.
    pub cross_check_mismatches: Vec<(ListAssignment, BigInt, BigInt)>,
    pub fi_violations: usize,
    pub identity_violations: usize,
    pub bound_violations: usize,
}

impl MinimizerReport {
    /// Checks that hold in every mode: counting agreement and the lemma battery.
    pub fn consistent(&self) -> bool {
        self.constant_matches
            && self.cross_check_mismatches.is_empty()
            && self.fi_violations == 0
            && self.identity_violations == 0
            && self.bound_violations == 0
    }

    /// In assertion mode also requires strict minimality of the constant assignment.
    pub fn passed(&self) -> bool {
        self.consistent() && (self.mode == Mode::Exploration || self.strict)
    }
}

fn run(h: &Hypergraph, spec: SearchSpec, mode: Mode) -> Result<MinimizerReport> {
    let plan = SearchPlan::new(h, spec, mode)?;
    let evaluations = (0..plan.len()).map(|i| plan.evaluate(i)).collect::<Result<Vec<_>>>()?;
    Ok(plan.finish(evaluations))
}

/// Searches `k`-list assignments with `k >= k_min` and records whether the
/// constant assignment is the strict minimizer.
pub fn verify_theorem_main(h: &Hypergraph, spec: SearchSpec) -> Result<MinimizerReport> {
    run(h, spec, Mode::Assertion)
}

/// Same search for any `k`; non-constant assignments with
/// `P(G,L) <= P(G,k)` are reported as witnesses, never treated as failures.
pub fn explore_below_threshold(h: &Hypergraph, spec: SearchSpec) -> Result<MinimizerReport> {
    run(h, spec, Mode::Exploration)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn orbit_count(n: usize, k: usize, universe: usize) -> usize {
        let subsets = k_subsets(universe, k);
        let mut perms = Vec::new();
        let mut p: Vec<usize> = (0..universe).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut orbits = 0;
        let total = subsets.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let lists: Vec<u64> = (0..n)
                .map(|_| {
                    let s = subsets[c % subsets.len()];
                    c /= subsets.len();
                    s
                })
                .collect();
            if seen.contains(&lists) {
                continue;
            }
            orbits += 1;
            for perm in &perms {
                let l = ListAssignment::new(universe, k, lists.clone()).unwrap();
                seen.insert(l.permute_colors(perm).lists().to_vec());
            }
        }
        orbits
    }

    #[test]
    fn canonical_counts_small() {
        assert_eq!(enumerate_canonical_assignments(1, 1, 2).unwrap().len(), 1);
        assert_eq!(enumerate_canonical_assignments(2, 1, 2).unwrap().len(), 2);
        assert_eq!(enumerate_canonical_assignments(3, 2, 3).unwrap().len(), 5);
        assert_eq!(orbit_count(3, 2, 3), 5);
    }

    #[test]
    fn canonical_matches_brute_orbits() {
        for (n, k, u) in [(2, 2, 4), (3, 1, 3), (3, 2, 4), (2, 3, 5), (4, 1, 3)] {
            assert_eq!(
                enumerate_canonical_assignments(n, k, u).unwrap().len(),
                orbit_count(n, k, u),
                "n={n} k={k} U={u}"
            );
        }
    }

    #[test]
    fn constant_comes_first() {
        for (n, k, u) in [(3, 2, 4), (2, 5, 9), (3, 1, 5)] {
            let all = enumerate_canonical_assignments(n, k, u).unwrap();
            assert!(all[0].is_constant());
            assert_eq!(all[0], ListAssignment::constant(n, k, u).unwrap());
        }
    }

    #[test]
    fn first_occurrence_covers_every_orbit() {
        // U = 9 takes the first-occurrence route. With L(0) = {0..4}, an orbit
        // of 5-list assignments on two vertices is fixed by |L(0) ∩ L(1)|,
        // which ranges over 1..=5; the route keeps every choice of the shared
        // old colors, so it yields Σ_j C(5, j) = 31 assignments.
        let reps = enumerate_canonical_assignments(2, 5, 9).unwrap();
        assert_eq!(reps.len(), 31);
        let overlaps: BTreeSet<u32> = reps.iter().map(|l| (l.list(0) & l.list(1)).count_ones()).collect();
        assert_eq!(overlaps, (1..=5).collect());
    }

    #[test]
    fn guards() {
        assert!(matches!(
            enumerate_canonical_assignments(3, 1, 6),
            Err(Error::SearchGuard { .. })
        ));
        assert!(matches!(
            enumerate_canonical_assignments(10, 2, 6),
            Err(Error::SearchGuard { .. })
        ));
        assert!(enumerate_canonical_assignments(3, 0, 2).is_err());
    }

    #[test]
    fn single_edge_k1() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let report = verify_theorem_main(&h, SearchSpec::exhaustive(1).with_universe(3)).unwrap();
        assert!(report.passed());
        assert!(report.strict);
        assert_eq!(report.constant_count, BigInt::from(0));
        assert_eq!(report.min_count, Some(BigInt::from(0)));
        assert!(report.argmin_is_constant);
    }

    #[test]
    fn triangle_k3() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let report = verify_theorem_main(&h, SearchSpec::exhaustive(3)).unwrap();
        assert!(report.passed());
        assert_eq!(report.min_count, Some(BigInt::from(6)));
        assert!(report.argmin_is_constant);
        assert!(report.cross_checked >= 1);
    }

    #[test]
    fn three_uniform_path_k2() {
        let h = Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let report = verify_theorem_main(&h, SearchSpec::exhaustive(2)).unwrap();
        assert!(report.passed());
        assert_eq!(report.min_count.as_ref(), Some(&report.constant_count));
    }

    #[test]
    fn below_threshold_is_rejected_in_assertion_mode() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert_eq!(
            verify_theorem_main(&h, SearchSpec::exhaustive(2)).unwrap_err(),
            Error::BelowThreshold { k: 2, k_min: 3 }
        );
        let disconnected = Hypergraph::new(4, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            verify_theorem_main(&disconnected, SearchSpec::exhaustive(1)).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn exploration_below_threshold() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let report = explore_below_threshold(&h, SearchSpec::exhaustive(1)).unwrap();
        assert!(report.passed());
        assert_eq!(report.constant_count, BigInt::from(0));
        assert!(report.min_count.unwrap() >= BigInt::from(0));

        let report = explore_below_threshold(&h, SearchSpec::exhaustive(2)).unwrap();
        assert!(report.consistent());
    }

    #[test]
    fn random_mode_is_deterministic() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let spec = SearchSpec::random(4, 200, 17);
        let a = verify_theorem_main(&h, spec).unwrap();
        let b = verify_theorem_main(&h, spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.searched, 201);
        assert!(a.passed());
    }
}
