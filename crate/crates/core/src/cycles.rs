//! δ-cycles, broken cycles and the broken-cycle-free family `B(G)`.
//!
//! A nonempty edge set `F` is *cyclic* when removing any single edge leaves
//! the number of components of `(V, F)` unchanged. A δ-cycle is a cyclic set
//! with no proper nonempty cyclic subset. Deleting the maximum edge (in the
//! hypergraph's edge order) of a δ-cycle gives a broken cycle, and `B(G)`
//! collects the edge sets that contain no broken cycle.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::hypercore::{EdgeSubset, Hypergraph, UnionFind};
use crate::{Error, Result};

/// True iff `c(V, F \ {f}) = c(V, F)` for every `f` in `F`.
pub fn is_cyclic_set(h: &Hypergraph, f: EdgeSubset) -> Result<bool> {
    if f.is_empty() {
        return Err(Error::EmptySubset);
    }
    check_in_range(h, f)?;
    let mut uf = UnionFind::new(h.n());
    Ok(cyclic_with(h, &mut uf, f))
}

fn check_in_range(h: &Hypergraph, s: EdgeSubset) -> Result<()> {
    EdgeSubset::new(s.bits(), h.m()).map(|_| ())
}

fn cyclic_with(h: &Hypergraph, uf: &mut UnionFind, f: EdgeSubset) -> bool {
    let whole = h.count_with(uf, f);
    f.iter().all(|e| h.count_with(uf, f.without(e)) == whole)
}

/// All δ-cycles of a hypergraph, by increasing size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCycleFamily {
    m: usize,
    members: Vec<EdgeSubset>,
}

impl DeltaCycleFamily {
    pub fn members(&self) -> &[EdgeSubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }
}

/// Enumerates every δ-cycle.
///
/// Subsets are visited by increasing cardinality. A cyclic set is minimal
/// exactly when it contains no δ-cycle found earlier, since every nonempty
/// cyclic set contains a minimal one.
pub fn delta_cycles(h: &Hypergraph) -> Result<DeltaCycleFamily> {
    h.check_enumerable()?;
    let m = h.m();
    let mut uf = UnionFind::new(h.n());
    let mut members: Vec<EdgeSubset> = Vec::new();
    for size in 1..=m {
        for bits in SubsetsOfSize::new(m, size) {
            if members.iter().any(|d| d.bits() & !bits == 0) {
                continue;
            }
            let f = EdgeSubset::from_bits(bits);
            if cyclic_with(h, &mut uf, f) {
                members.push(f);
            }
        }
    }
    Ok(DeltaCycleFamily { m, members })
}

/// Masks over `m` bits with exactly `size` bits set, in increasing order.
pub(crate) struct SubsetsOfSize {
    next: Option<u64>,
    limit: u64,
}

impl SubsetsOfSize {
    pub(crate) fn new(m: usize, size: usize) -> Self {
        let next = if size > m {
            None
        } else if size == 0 {
            Some(0)
        } else {
            Some((1u64 << size) - 1)
        };
        SubsetsOfSize { next, limit: 1u64 << m }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            Some(ripple | (((cur ^ ripple) >> 2) / low))
        };
        Some(cur)
    }
}

/// A δ-cycle with its maximum edge deleted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BrokenCycle {
    pub edges: EdgeSubset,
    /// The deleted maximum edge of one witnessing δ-cycle.
    pub removed: usize,
}

/// Distinct broken cycles of a hypergraph, ordered by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrokenCycleFamily {
    m: usize,
    members: Vec<BrokenCycle>,
}

impl BrokenCycleFamily {
    pub fn from_delta_cycles(family: &DeltaCycleFamily) -> Self {
        let mut seen: BTreeMap<EdgeSubset, usize> = BTreeMap::new();
        for &d in family.members() {
            let top = d.max_edge().expect("delta-cycles are nonempty");
            seen.entry(d.without(top)).or_insert(top);
        }
        BrokenCycleFamily {
            m: family.edge_count(),
            members: seen
                .into_iter()
                .map(|(edges, removed)| BrokenCycle { edges, removed })
                .collect(),
        }
    }

    /// The family with no broken cycles at all; `B(G)` becomes every subset.
    pub fn empty(m: usize) -> Self {
        BrokenCycleFamily { m, members: Vec::new() }
    }

    pub fn members(&self) -> &[BrokenCycle] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn contains_broken_cycle(&self, s: EdgeSubset) -> bool {
        self.members.iter().any(|b| b.edges.is_subset_of(s))
    }

    /// Visits every edge subset that contains no member of the family.
    ///
    /// Edges are decided in index order; a broken cycle can only become
    /// contained when its largest edge is added, so each inclusion checks
    /// just the broken cycles ending at that edge.
    pub fn for_each_free_subset<F: FnMut(EdgeSubset)>(&self, mut visit: F) -> Result<()> {
        if self.m > crate::MAX_ENUM_EDGES {
            return Err(Error::TooManyEdges {
                m: self.m,
                cap: crate::MAX_ENUM_EDGES,
            });
        }
        let mut by_max: Vec<Vec<u64>> = vec![Vec::new(); self.m];
        for b in &self.members {
            // broken cycles have at least two edges, so max_edge exists
            let top = b.edges.max_edge().expect("broken cycles are nonempty");
            by_max[top].push(b.edges.bits());
        }
        walk_free(0, 0, &by_max, &mut visit);
        Ok(())
    }
}

fn walk_free<F: FnMut(EdgeSubset)>(e: usize, mask: u64, by_max: &[Vec<u64>], visit: &mut F) {
    if e == by_max.len() {
        visit(EdgeSubset::from_bits(mask));
        return;
    }
    walk_free(e + 1, mask, by_max, visit);
    let with = mask | 1 << e;
    if by_max[e].iter().all(|&b| b & !with != 0) {
        walk_free(e + 1, with, by_max, visit);
    }
}

/// Broken cycles with respect to the hypergraph's own edge order.
pub fn broken_cycles(h: &Hypergraph) -> Result<BrokenCycleFamily> {
    Ok(BrokenCycleFamily::from_delta_cycles(&delta_cycles(h)?))
}

/// `τ(i) = max{1, n - (r-1) i}`, the least possible component count of an
/// `i`-edge member of `B(G)` when `i >= 1`.
pub fn tau(n: usize, r: usize, i: usize) -> i64 {
    (n as i64 - (r as i64 - 1) * i as i64).max(1)
}

/// `n - i + 2 - r`, the largest possible component count of an `i`-edge
/// member of `B(G)` when `i >= 1`.
pub fn component_upper(n: usize, r: usize, i: usize) -> i64 {
    n as i64 - i as i64 + 2 - r as i64
}

/// Counts `|B_i^j(G)|`: members of `B(G)` with `i` edges and `j` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    n: usize,
    m: usize,
    rank: Option<usize>,
    counts: BTreeMap<(usize, usize), BigUint>,
    members: Option<BTreeMap<(usize, usize), Vec<EdgeSubset>>>,
}

impl Stratification {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    /// `|B_i^j(G)|`; zero for empty strata.
    pub fn count(&self, i: usize, j: usize) -> BigUint {
        self.counts.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nonempty strata as `((i, j), count)`, ordered by `(i, j)`.
    pub fn strata(&self) -> impl Iterator<Item = ((usize, usize), &BigUint)> {
        self.counts.iter().map(|(&key, c)| (key, c))
    }

    /// `|B_i(G)|` summed over all component counts.
    pub fn size_count(&self, i: usize) -> BigUint {
        self.counts.range((i, 0)..=(i, usize::MAX)).map(|(_, c)| c).sum()
    }

    /// `|B(G)|`.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn max_size(&self) -> usize {
        self.counts.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Members of stratum `(i, j)`, when they were recorded.
    pub fn members(&self, i: usize, j: usize) -> Option<&[EdgeSubset]> {
        let members = self.members.as_ref()?;
        Some(members.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[]))
    }

    /// All recorded members with their `(i, j)` key.
    pub fn all_members(&self) -> Option<impl Iterator<Item = ((usize, usize), EdgeSubset)> + '_> {
        let members = self.members.as_ref()?;
        Some(
            members
                .iter()
                .flat_map(|(&key, list)| list.iter().map(move |&s| (key, s))),
        )
    }
}

/// Bins `B(G)` by `(|S|, c(V,S))`, counts only.
pub fn stratify(h: &Hypergraph) -> Result<Stratification> {
    stratify_with(h, &broken_cycles(h)?, false)
}

/// Like [`stratify`] but also records the members of each stratum.
pub fn stratify_with_members(h: &Hypergraph) -> Result<Stratification> {
    stratify_with(h, &broken_cycles(h)?, true)
}

/// Stratifies `B(G)` for an already computed broken-cycle family.
pub fn stratify_with(h: &Hypergraph, family: &BrokenCycleFamily, keep_members: bool) -> Result<Stratification> {
    h.check_enumerable()?;
    let mut uf = UnionFind::new(h.n());
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut members: BTreeMap<(usize, usize), Vec<EdgeSubset>> = BTreeMap::new();
    family.for_each_free_subset(|s| {
        let key = (s.len(), h.count_with(&mut uf, s));
        *counts.entry(key).or_insert(0) += 1;
        if keep_members {
            members.entry(key).or_default().push(s);
        }
    })?;
    if keep_members {
        for list in members.values_mut() {
            list.sort_unstable();
        }
    }
    Ok(Stratification {
        n: h.n(),
        m: h.m(),
        rank: h.uniformity(),
        counts: counts.into_iter().map(|(k, c)| (k, BigUint::from(c))).collect(),
        members: keep_members.then_some(members),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    fn four_triples() -> Hypergraph {
        Hypergraph::uniform(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    fn subset(edges: &[usize], m: usize) -> EdgeSubset {
        EdgeSubset::from_edges(edges, m).unwrap()
    }

    #[test]
    fn triangle_is_cyclic() {
        let h = triangle();
        assert!(is_cyclic_set(&h, h.all_edges()).unwrap());
    }

    #[test]
    fn single_edge_is_not_cyclic() {
        let h = triangle();
        for e in 0..3 {
            assert!(!is_cyclic_set(&h, subset(&[e], 3)).unwrap());
        }
        assert_eq!(is_cyclic_set(&h, EdgeSubset::EMPTY), Err(Error::EmptySubset));
    }

    #[test]
    fn three_triples_on_four_vertices_are_cyclic() {
        let h = Hypergraph::uniform(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
        assert!(is_cyclic_set(&h, h.all_edges()).unwrap());
    }

    #[test]
    fn delta_cycles_of_small_examples() {
        let t = delta_cycles(&triangle()).unwrap();
        assert_eq!(t.members(), &[subset(&[0, 1, 2], 3)]);

        let single = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(delta_cycles(&single).unwrap().is_empty());

        let four = delta_cycles(&four_triples()).unwrap();
        let expected = [
            subset(&[0, 1, 2], 4),
            subset(&[0, 1, 3], 4),
            subset(&[0, 2, 3], 4),
            subset(&[1, 2, 3], 4),
        ];
        assert_eq!(four.members(), &expected);
    }

    #[test]
    fn broken_cycles_of_small_examples() {
        let t = broken_cycles(&triangle()).unwrap();
        assert_eq!(
            t.members(),
            &[BrokenCycle {
                edges: subset(&[0, 1], 3),
                removed: 2
            }]
        );

        let single = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(broken_cycles(&single).unwrap().is_empty());

        let four = broken_cycles(&four_triples()).unwrap();
        let sets: Vec<_> = four.members().iter().map(|b| b.edges).collect();
        assert_eq!(sets, vec![subset(&[0, 1], 4), subset(&[0, 2], 4), subset(&[1, 2], 4)]);
        // {0,1,2} is the only delta-cycle ending below edge 3
        assert!(four.members().iter().all(|b| b.removed >= 2));
    }

    #[test]
    fn stratification_of_small_examples() {
        let t = stratify(&triangle()).unwrap();
        let strata: Vec<_> = t.strata().map(|(k, c)| (k, c.clone())).collect();
        assert_eq!(
            strata,
            vec![
                ((0, 3), BigUint::from(1u8)),
                ((1, 2), BigUint::from(3u8)),
                ((2, 1), BigUint::from(2u8)),
            ]
        );

        let single = stratify(&Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap()).unwrap();
        assert_eq!(single.count(0, 3), BigUint::from(1u8));
        assert_eq!(single.count(1, 1), BigUint::from(1u8));
        assert_eq!(single.total(), BigUint::from(2u8));

        let four = stratify_with_members(&four_triples()).unwrap();
        assert_eq!(four.count(0, 4), BigUint::from(1u8));
        assert_eq!(four.count(1, 2), BigUint::from(4u8));
        assert_eq!(four.count(2, 1), BigUint::from(3u8));
        assert_eq!(four.size_count(3), BigUint::from(0u8));
        assert_eq!(four.members(2, 1).unwrap().len(), 3);
    }

    #[test]
    fn subsets_of_size_enumerates_binomial() {
        assert_eq!(SubsetsOfSize::new(5, 2).count(), 10);
        assert_eq!(SubsetsOfSize::new(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(SubsetsOfSize::new(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(SubsetsOfSize::new(3, 4).count(), 0);
        assert!(SubsetsOfSize::new(6, 3).all(|b| b.count_ones() == 3 && b < 64));
    }

    #[test]
    fn enumeration_cap() {
        let edges: Vec<Vec<usize>> = (0..25).map(|i| vec![i, i + 1]).collect();
        let h = Hypergraph::new(26, edges).unwrap();
        assert_eq!(delta_cycles(&h).unwrap_err(), Error::TooManyEdges { m: 25, cap: 24 });
    }

    #[test]
    fn tau_and_upper() {
        assert_eq!(tau(6, 3, 1), 4);
        assert_eq!(tau(6, 3, 4), 1);
        assert_eq!(component_upper(6, 3, 1), 4);
        assert_eq!(component_upper(3, 2, 2), 1);
    }
}
