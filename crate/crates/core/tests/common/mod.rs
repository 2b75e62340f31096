#![allow(dead_code)]

use std::collections::BTreeSet;

use hypercolor_core::improper::Graph;
use hypercolor_core::{Hypergraph, ListAssignment};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Connected `r`-uniform hypergraphs on exactly `n` vertices with at most
/// `m_max` edges, one per isomorphism class. Edges are listed in
/// lexicographic order.
pub fn connected_classes(n: usize, r: usize, m_max: usize) -> Vec<Hypergraph> {
    let cands = combinations(n, r);
    let tables: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| {
            cands
                .iter()
                .map(|e| {
                    let mut image: Vec<usize> = e.iter().map(|&v| p[v]).collect();
                    image.sort_unstable();
                    cands.binary_search(&image).unwrap()
                })
                .collect()
        })
        .collect();
    let canon = |mask: u64| -> u64 {
        tables
            .iter()
            .map(|t| {
                (0..cands.len())
                    .filter(|&e| mask >> e & 1 == 1)
                    .fold(0u64, |acc, e| acc | 1 << t[e])
            })
            .min()
            .unwrap()
    };
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    let mut all = vec![0u64];
    for _ in 0..m_max {
        let mut next = BTreeSet::new();
        for &mask in &level {
            for e in 0..cands.len() {
                if mask >> e & 1 == 0 {
                    next.insert(canon(mask | 1 << e));
                }
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    all.into_iter()
        .map(|mask| {
            let edges = (0..cands.len())
                .filter(|&e| mask >> e & 1 == 1)
                .map(|e| cands[e].clone())
                .collect();
            Hypergraph::uniform(n, r, edges).unwrap()
        })
        .filter(|h| h.is_connected())
        .collect()
}

pub fn random_k_subset(rng: &mut ChaCha8Rng, universe: usize, k: usize) -> Vec<usize> {
    let mut colors: Vec<usize> = (0..universe).collect();
    colors.shuffle(rng);
    colors.truncate(k);
    colors.sort_unstable();
    colors
}

pub fn random_uniform(rng: &mut ChaCha8Rng, n: usize, r: usize, m: usize) -> Hypergraph {
    let mut cands = combinations(n, r);
    cands.shuffle(rng);
    cands.truncate(m);
    Hypergraph::uniform(n, r, cands).unwrap()
}

pub fn random_lists(rng: &mut ChaCha8Rng, n: usize, k: usize, universe: usize) -> ListAssignment {
    let colors: Vec<Vec<usize>> = (0..n).map(|_| random_k_subset(rng, universe, k)).collect();
    ListAssignment::from_colors(universe, k, &colors).unwrap()
}

/// A random `r`-uniform hypergraph (`r` in {2, 3}) with `n <= 5`, `m <= 5`
/// and a `k`-list assignment with `k <= 3` over `U <= 5` colors.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (Hypergraph, ListAssignment) {
    let r = rng.gen_range(2..=3);
    let n = rng.gen_range(r..=5);
    let m = rng.gen_range(0..=combinations(n, r).len().min(5));
    let h = random_uniform(rng, n, r, m);
    let k = rng.gen_range(1..=3);
    let universe = rng.gen_range(k..=5);
    let l = random_lists(rng, n, k, universe);
    (h, l)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let density = rng.gen_range(0.2..0.9);
    let edges = combinations(n, 2)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .map(|e| (e[0], e[1]))
        .collect();
    Graph::new(n, edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v)).collect()).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    Graph::new(n, edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, combinations(n, 2).into_iter().map(|e| (e[0], e[1])).collect()).unwrap()
}

/// Edge sets of simple cycles in a graph: connected, every touched vertex of degree 2.
pub fn simple_cycle_sets(h: &Hypergraph) -> Vec<u64> {
    let m = h.m();
    let mut out = Vec::new();
    for mask in 1u64..1 << m {
        let mut degree = vec![0usize; h.n()];
        for e in 0..m {
            if mask >> e & 1 == 1 {
                for &v in h.edge(e) {
                    degree[v] += 1;
                }
            }
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let touched = degree.iter().filter(|&&d| d == 2).count();
        let sub = hypercolor_core::EdgeSubset::new(mask, m).unwrap();
        // one component among the touched vertices
        if h.count_components(sub) == h.n() - touched + 1 {
            out.push(mask);
        }
    }
    out.sort_unstable();
    out
}
