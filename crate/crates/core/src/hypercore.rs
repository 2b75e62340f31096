//! Hypergraphs, edge subsets and connected components.
//!
//! Vertices are dense indices `0..n`. Edges are kept in the order they were
//! given; that order is the linear order `<` used to break δ-cycles.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Hard cap on `m` for every operation that walks all `2^m` edge subsets.
pub const MAX_ENUM_EDGES: usize = 24;

/// A finite hypergraph without parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    declared_rank: Option<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph; each edge is sorted, then all invariants are checked.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(n, edges, None)
    }

    /// Builds a hypergraph that must be `r`-uniform.
    pub fn uniform(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(n, edges, Some(r))
    }

    fn build(n: usize, mut edges: Vec<Vec<usize>>, declared_rank: Option<usize>) -> Result<Self> {
        for (i, e) in edges.iter_mut().enumerate() {
            e.sort_unstable();
            if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { edge: i, vertex: w[0] });
            }
        }
        let h = Hypergraph {
            n,
            edges,
            declared_rank,
        };
        h.validate()?;
        Ok(h)
    }

    /// Checks every structural invariant and reports the first violation.
    pub fn validate(&self) -> Result<()> {
        if let Some(r) = self.declared_rank {
            if r < 2 {
                return Err(Error::UniformityTooSmall { r });
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::EmptyEdge { edge: i });
            }
            if let Some(w) = e.windows(2).find(|w| w[0] >= w[1]) {
                return Err(Error::RepeatedVertex { edge: i, vertex: w[1] });
            }
            if let Some(&v) = e.iter().find(|&&v| v >= self.n) {
                return Err(Error::VertexOutOfRange {
                    edge: i,
                    vertex: v,
                    n: self.n,
                });
            }
            if let Some(r) = self.declared_rank {
                if e.len() != r {
                    return Err(Error::NonUniformEdge {
                        edge: i,
                        expected: r,
                        found: e.len(),
                    });
                }
            }
        }
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by(|&a, &b| self.edges[a].cmp(&self.edges[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            if self.edges[w[0]] == self.edges[w[1]] {
                return Err(Error::ParallelEdge {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    pub fn declared_uniformity(&self) -> Option<usize> {
        self.declared_rank
    }

    /// The common edge size, if every edge has the same size.
    ///
    /// Falls back to the declared uniformity for edgeless hypergraphs.
    pub fn uniformity(&self) -> Option<usize> {
        match self.edges.first() {
            None => self.declared_rank,
            Some(first) => {
                let r = first.len();
                self.edges.iter().all(|e| e.len() == r).then_some(r)
            }
        }
    }

    /// Like [`uniformity`](Self::uniformity) but requires `r >= 2`.
    pub fn require_uniform(&self) -> Result<usize> {
        match self.uniformity() {
            Some(r) if r >= 2 => Ok(r),
            _ => Err(Error::NotUniform),
        }
    }

    /// Errors unless all `2^m` subsets may be enumerated.
    pub fn check_enumerable(&self) -> Result<()> {
        if self.m() > MAX_ENUM_EDGES {
            Err(Error::TooManyEdges {
                m: self.m(),
                cap: MAX_ENUM_EDGES,
            })
        } else {
            Ok(())
        }
    }

    /// Same hypergraph with edges re-sorted lexicographically.
    pub fn sorted_lex(&self) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.sort();
        Hypergraph {
            n: self.n,
            edges,
            declared_rank: self.declared_rank,
        }
    }

    /// Same hypergraph with edge `order[i]` moved to position `i`.
    pub fn reorder_edges(&self, order: &[usize]) -> Hypergraph {
        assert_eq!(order.len(), self.m(), "order must be a permutation of the edges");
        Hypergraph {
            n: self.n,
            edges: order.iter().map(|&i| self.edges[i].clone()).collect(),
            declared_rank: self.declared_rank,
        }
    }

    /// Mask with every edge index set.
    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.m())
    }

    /// Union of the vertex sets of the edges in `s`, ascending.
    pub fn vertices_of(&self, s: EdgeSubset) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for e in s.iter() {
            for &v in &self.edges[e] {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter_map(|(v, &b)| b.then_some(v)).collect()
    }

    /// `c(V, S)` together with a per-vertex component labeling.
    pub fn component_count(&self, s: EdgeSubset) -> ComponentLabeling {
        let mut uf = UnionFind::new(self.n);
        for e in s.iter() {
            self.merge_edge(&mut uf, e);
        }
        ComponentLabeling::from_union_find(&mut uf)
    }

    /// Number of components of `(V, E)` restricted to `s`, without labels.
    pub fn count_components(&self, s: EdgeSubset) -> usize {
        let mut uf = UnionFind::new(self.n);
        self.count_with(&mut uf, s)
    }

    pub(crate) fn count_with(&self, uf: &mut UnionFind, s: EdgeSubset) -> usize {
        uf.reset(self.n);
        let mut merged = 0;
        for e in s.iter() {
            merged += self.merge_edge(uf, e);
        }
        self.n - merged
    }

    pub(crate) fn merge_edge(&self, uf: &mut UnionFind, e: usize) -> usize {
        let edge = &self.edges[e];
        let mut merged = 0;
        for &v in &edge[1..] {
            if uf.union(edge[0], v) {
                merged += 1;
            }
        }
        merged
    }

    /// True iff `c(V, E) = 1`. Works for any number of edges.
    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.n);
        let mut merged = 0;
        for e in 0..self.m() {
            merged += self.merge_edge(&mut uf, e);
        }
        self.n - merged == 1
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (j, v) in e.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("]")
    }
}

/// A set of edge indices of some host hypergraph, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSubset(u64);

impl EdgeSubset {
    pub const EMPTY: EdgeSubset = EdgeSubset(0);

    /// Wraps a mask, checking that every set bit addresses one of `m` edges.
    pub fn new(bits: u64, m: usize) -> Result<Self> {
        if m < 64 && bits >> m != 0 {
            return Err(Error::SubsetOutOfRange {
                edge: 63 - bits.leading_zeros() as usize,
                m,
            });
        }
        Ok(EdgeSubset(bits))
    }

    pub fn from_edges(edges: &[usize], m: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &e in edges {
            if e >= m || e >= 64 {
                return Err(Error::SubsetOutOfRange { edge: e, m });
            }
            bits |= 1 << e;
        }
        Ok(EdgeSubset(bits))
    }

    pub(crate) const fn from_bits(bits: u64) -> Self {
        EdgeSubset(bits)
    }

    pub fn full(m: usize) -> Self {
        assert!(m <= 64, "edge subsets address at most 64 edges");
        if m == 64 {
            EdgeSubset(u64::MAX)
        } else {
            EdgeSubset((1u64 << m) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    #[must_use]
    pub fn with(self, e: usize) -> Self {
        EdgeSubset(self.0 | 1 << e)
    }

    #[must_use]
    pub fn without(self, e: usize) -> Self {
        EdgeSubset(self.0 & !(1 << e))
    }

    pub fn is_subset_of(self, other: EdgeSubset) -> bool {
        self.0 & other.0 == self.0
    }

    /// Largest edge index in the set.
    pub fn max_edge(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Edge indices in ascending order.
    pub fn iter(self) -> EdgeIter {
        EdgeIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct EdgeIter(u64);

impl Iterator for EdgeIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for EdgeIter {}

/// Disjoint-set forest with path compression and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n);
        self.size.clear();
        self.size.resize(n, 1);
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true when two distinct sets were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Component label per vertex, numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    labels: Vec<usize>,
    count: usize,
}

impl ComponentLabeling {
    pub(crate) fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut count = 0;
        for v in 0..n {
            let root = uf.find(v);
            if root_label[root] == usize::MAX {
                root_label[root] = count;
                count += 1;
            }
            labels.push(root_label[root]);
        }
        ComponentLabeling { labels, count }
    }

    /// Number of components, isolated vertices included.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Vertex sets of the components, in label order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l].push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn single_covering_edge_is_one_component() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let c = h.component_count(EdgeSubset::from_edges(&[0], 1).unwrap());
        assert_eq!(c.count(), 1);
    }

    #[test]
    fn empty_subset_counts_every_vertex() {
        let h = Hypergraph::new(5, vec![vec![0, 1], vec![3, 4]]).unwrap();
        let c = h.component_count(EdgeSubset::EMPTY);
        assert_eq!(c.count(), 5);
        assert_eq!(c.labels(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn triangle_all_edges_connected() {
        let h = triangle();
        assert_eq!(h.component_count(h.all_edges()).count(), 1);
        assert_eq!(h.count_components(h.all_edges()), 1);
    }

    #[test]
    fn labeling_matches_components() {
        let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![3, 4, 5], vec![2, 3, 4]]).unwrap();
        let s = EdgeSubset::from_edges(&[0, 1], 3).unwrap();
        let c = h.component_count(s);
        assert_eq!(c.count(), 2);
        assert_eq!(c.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn validate_rejects_parallel_edges() {
        let err = Hypergraph::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::ParallelEdge { first: 0, second: 1 });
    }

    #[test]
    fn validate_accepts_single_three_edge() {
        assert!(Hypergraph::uniform(3, 3, vec![vec![0, 1, 2]]).is_ok());
    }

    #[test]
    fn validate_rejects_non_uniform() {
        let err = Hypergraph::uniform(4, 2, vec![vec![0, 1], vec![1, 2, 3]]).unwrap_err();
        assert_eq!(
            err,
            Error::NonUniformEdge {
                edge: 1,
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn validate_other_violations() {
        assert_eq!(
            Hypergraph::new(2, vec![vec![0, 2]]).unwrap_err(),
            Error::VertexOutOfRange {
                edge: 0,
                vertex: 2,
                n: 2
            }
        );
        assert_eq!(
            Hypergraph::new(2, vec![vec![0, 0]]).unwrap_err(),
            Error::RepeatedVertex { edge: 0, vertex: 0 }
        );
        assert_eq!(
            Hypergraph::new(2, vec![vec![]]).unwrap_err(),
            Error::EmptyEdge { edge: 0 }
        );
        assert_eq!(
            Hypergraph::uniform(2, 1, vec![vec![0]]).unwrap_err(),
            Error::UniformityTooSmall { r: 1 }
        );
    }

    #[test]
    fn connectivity() {
        assert!(Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap().is_connected());
        assert!(!Hypergraph::new(4, vec![vec![0, 1, 2]]).unwrap().is_connected());
        assert!(Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]])
            .unwrap()
            .is_connected());
        assert!(!Hypergraph::new(0, vec![]).unwrap().is_connected());
    }

    #[test]
    fn uniformity_inference() {
        assert_eq!(triangle().uniformity(), Some(2));
        let mixed = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        assert_eq!(mixed.uniformity(), None);
        assert_eq!(mixed.require_uniform(), Err(Error::NotUniform));
    }

    #[test]
    fn edge_subset_basics() {
        let s = EdgeSubset::from_edges(&[0, 3, 5], 6).unwrap();
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.max_edge(), Some(5));
        assert!(s.without(5).is_subset_of(s));
        assert!(EdgeSubset::new(0b1000, 3).is_err());
        assert_eq!(EdgeSubset::full(4).bits(), 0b1111);
    }

    #[test]
    fn sorted_lex_and_reorder() {
        let h = Hypergraph::new(3, vec![vec![1, 2], vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(h.sorted_lex().edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(h.reorder_edges(&[1, 2, 0]), h.sorted_lex());
    }
}
