//! d-improper colorings of graphs through a `(d+2)`-uniform hypergraph.
//!
//! A coloring is d-improper when every vertex has at most `d` neighbours of
//! its own color. Such a violation is witnessed by a vertex together with
//! `d + 1` same-colored neighbours, i.e. a monochromatic `(d+2)`-set in which
//! one vertex is adjacent to all the others. Taking those sets as hyperedges
//! gives `G*`, whose proper (list) colorings are exactly the d-improper
//! (list) colorings of `G`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::bounds::{threshold, ThresholdReport};
use crate::chromatic::{brute_size, chromatic_poly_broken, odometer_step, Polynomial};
use crate::hypercore::Hypergraph;
use crate::listcount::{list_count_broken, ListAssignment};
use crate::{Error, Result};

/// Graphs use one `u64` adjacency row per vertex.
pub const MAX_GRAPH_VERTICES: usize = 64;

/// A simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                cap: MAX_GRAPH_VERTICES,
            });
        }
        let mut adjacency = vec![0u64; n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidGraphEdge {
                    edge: i,
                    reason: "vertex out of range",
                });
            }
            if a == b {
                return Err(Error::InvalidGraphEdge {
                    edge: i,
                    reason: "loop",
                });
            }
            if adjacency[a] >> b & 1 == 1 {
                return Err(Error::InvalidGraphEdge {
                    edge: i,
                    reason: "parallel edge",
                });
            }
            adjacency[a] |= 1 << b;
            adjacency[b] |= 1 << a;
        }
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Ok(Graph { n, edges, adjacency })
    }

    /// Reads a 2-uniform hypergraph as a graph.
    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self> {
        let mut edges = Vec::with_capacity(h.m());
        for (i, e) in h.edges().iter().enumerate() {
            if e.len() != 2 {
                return Err(Error::NonUniformEdge {
                    edge: i,
                    expected: 2,
                    found: e.len(),
                });
            }
            edges.push((e[0], e[1]));
        }
        Graph::new(h.n(), edges)
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        let edges = self.edges.iter().map(|&(a, b)| vec![a, b]).collect();
        Hypergraph::uniform(self.n, 2, edges).expect("a simple graph is a valid 2-uniform hypergraph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.to_hypergraph().is_connected()
    }
}

/// `G*` together with the defect parameter it was built for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarHypergraph {
    pub hypergraph: Hypergraph,
    pub d: usize,
}

impl StarHypergraph {
    /// Number of hyperedges `p`.
    pub fn p(&self) -> usize {
        self.hypergraph.m()
    }

    /// The generating `(d+2)`-subsets, in lexicographic order.
    pub fn provenance(&self) -> &[Vec<usize>] {
        self.hypergraph.edges()
    }
}

/// Lexicographic `size`-combinations of `0..n`.
fn for_each_combination<F: FnMut(&[usize])>(n: usize, size: usize, mut visit: F) {
    if size > n {
        return;
    }
    let mut combo: Vec<usize> = (0..size).collect();
    loop {
        visit(&combo);
        let Some(i) = (0..size).rev().find(|&i| combo[i] != i + n - size) else {
            return;
        };
        combo[i] += 1;
        for j in i + 1..size {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Builds `G*`: the `(d+2)`-subsets of `V(G)` whose induced subgraph has
/// maximum degree exactly `d + 1`.
pub fn build_star(g: &Graph, d: usize) -> Result<StarHypergraph> {
    let r = d + 2;
    let mut edges = Vec::new();
    for_each_combination(g.n, r, |combo| {
        let mask = combo.iter().fold(0u64, |acc, &v| acc | 1 << v);
        if combo
            .iter()
            .any(|&v| (g.adjacency[v] & mask).count_ones() as usize == d + 1)
        {
            edges.push(combo.to_vec());
        }
    });
    Ok(StarHypergraph {
        hypergraph: Hypergraph::uniform(g.n, r, edges)?,
        d,
    })
}

fn is_d_improper(g: &Graph, d: usize, color: &[usize]) -> bool {
    (0..g.n).all(|v| {
        let same = EdgeBits(g.adjacency[v]).filter(|&u| color[u] == color[v]).count();
        same <= d
    })
}

struct EdgeBits(u64);

impl Iterator for EdgeBits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// `P^d(G, k)` by checking every coloring directly.
pub fn improper_count_brute(g: &Graph, d: usize, k: u64) -> Result<BigInt> {
    if g.n == 0 {
        return Ok(BigInt::one());
    }
    if k == 0 {
        return Ok(BigInt::from(0));
    }
    brute_size(core::iter::repeat_n(k, g.n))?;
    let mut color = vec![0usize; g.n];
    let mut count = 0u64;
    loop {
        if is_d_improper(g, d, &color) {
            count += 1;
        }
        if !odometer_step(&mut color, |_| k as usize) {
            break;
        }
    }
    Ok(BigInt::from(count))
}

/// Number of d-improper `L`-colorings by checking every choice directly.
pub fn improper_list_count_brute(g: &Graph, d: usize, l: &ListAssignment) -> Result<BigInt> {
    if l.n() != g.n {
        return Err(Error::ListCountMismatch {
            expected: g.n,
            found: l.n(),
        });
    }
    if g.n == 0 {
        return Ok(BigInt::one());
    }
    brute_size(core::iter::repeat_n(l.k() as u64, g.n))?;
    let palette: Vec<Vec<usize>> = (0..g.n).map(|v| l.colors(v)).collect();
    let mut digits = vec![0usize; g.n];
    let mut color = vec![0usize; g.n];
    let mut count = 0u64;
    loop {
        for v in 0..g.n {
            color[v] = palette[v][digits[v]];
        }
        if is_d_improper(g, d, &color) {
            count += 1;
        }
        if !odometer_step(&mut digits, |_| l.k()) {
            break;
        }
    }
    Ok(BigInt::from(count))
}

/// `P^d(G, k)` as a polynomial in `k`: the broken-cycle chromatic polynomial of `G*`.
pub fn improper_polynomial(g: &Graph, d: usize) -> Result<Polynomial> {
    chromatic_poly_broken(&build_star(g, d)?.hypergraph)
}

/// `P^d(G, k) = P(G*, k)`, evaluated from the broken-cycle polynomial of `G*`.
pub fn improper_count_via_star(g: &Graph, d: usize, k: u64) -> Result<BigInt> {
    Ok(improper_polynomial(g, d)?.eval(k))
}

/// Number of d-improper `L`-colorings as `P(G*, L)`.
pub fn improper_list_count_via_star(g: &Graph, d: usize, l: &ListAssignment) -> Result<BigInt> {
    let star = build_star(g, d)?;
    list_count_broken(&star.hypergraph, l)
}

/// Threshold for `G*` and whether `G*` is connected.
#[derive(Clone, Debug, PartialEq)]
pub struct ImproperThreshold {
    pub p: usize,
    /// The threshold statement needs a connected `G*`; when false the
    /// result is only indicative.
    pub star_connected: bool,
    pub report: ThresholdReport,
}

/// `threshold(p)` with `p = |E(G*)|`.
pub fn improper_threshold(g: &Graph, d: usize) -> Result<ImproperThreshold> {
    let star = build_star(g, d)?;
    Ok(ImproperThreshold {
        p: star.p(),
        star_connected: star.hypergraph.is_connected(),
        report: threshold(star.p()),
    })
}
