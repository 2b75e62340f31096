//! List assignments and the number of list colorings `P(G, L)`.
//!
//! Colors are drawn from an explicit universe `0..U` (`U <= 64`) and each
//! list is a bitmask over it, so `α` and `β` reduce to popcounts of mask
//! intersections.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chromatic::{brute_size, monochromatic, odometer_step};
use crate::cycles::{broken_cycles, BrokenCycleFamily};
use crate::hypercore::{EdgeSubset, Hypergraph, UnionFind};
use crate::sum::{Product, WideSum};
use crate::{Error, Result};

/// Largest supported color universe.
pub const MAX_UNIVERSE: usize = 64;

/// A `k`-list assignment: every vertex gets a set of exactly `k` colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ListAssignment {
    universe: usize,
    k: usize,
    lists: Vec<u64>,
}

fn universe_mask(universe: usize) -> u64 {
    if universe == 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    }
}

impl ListAssignment {
    pub fn new(universe: usize, k: usize, lists: Vec<u64>) -> Result<Self> {
        if universe > MAX_UNIVERSE || k == 0 || k > universe {
            return Err(Error::InvalidUniverse { universe, k });
        }
        let allowed = universe_mask(universe);
        for (v, &mask) in lists.iter().enumerate() {
            if mask & !allowed != 0 {
                return Err(Error::InvalidList {
                    vertex: v,
                    reason: "color outside the universe",
                });
            }
            if mask.count_ones() as usize != k {
                return Err(Error::InvalidList {
                    vertex: v,
                    reason: "list size differs from k",
                });
            }
        }
        Ok(ListAssignment { universe, k, lists })
    }

    /// Builds an assignment from explicit color lists.
    pub fn from_colors(universe: usize, k: usize, colors: &[Vec<usize>]) -> Result<Self> {
        let mut lists = Vec::with_capacity(colors.len());
        for (v, list) in colors.iter().enumerate() {
            let mut mask = 0u64;
            for &c in list {
                if c >= universe || c >= MAX_UNIVERSE {
                    return Err(Error::InvalidList {
                        vertex: v,
                        reason: "color outside the universe",
                    });
                }
                if mask >> c & 1 == 1 {
                    return Err(Error::InvalidList {
                        vertex: v,
                        reason: "repeated color",
                    });
                }
                mask |= 1 << c;
            }
            lists.push(mask);
        }
        Self::new(universe, k, lists)
    }

    /// Every vertex gets `{0, .., k-1}`.
    pub fn constant(n: usize, k: usize, universe: usize) -> Result<Self> {
        if k == 0 || k > universe || universe > MAX_UNIVERSE {
            return Err(Error::InvalidUniverse { universe, k });
        }
        Self::new(universe, k, vec![(1u64 << k) - 1; n])
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn lists(&self) -> &[u64] {
        &self.lists
    }

    pub fn list(&self, v: usize) -> u64 {
        self.lists[v]
    }

    /// Colors of vertex `v`, ascending.
    pub fn colors(&self, v: usize) -> Vec<usize> {
        EdgeSubset::from_bits(self.lists[v]).to_vec()
    }

    /// True when all lists are identical.
    pub fn is_constant(&self) -> bool {
        self.lists.windows(2).all(|w| w[0] == w[1])
    }

    /// Renames color `c` to `perm[c]`.
    pub fn permute_colors(&self, perm: &[usize]) -> ListAssignment {
        assert_eq!(perm.len(), self.universe, "permutation must cover the universe");
        let lists = self
            .lists
            .iter()
            .map(|&mask| {
                EdgeSubset::from_bits(mask)
                    .iter()
                    .fold(0u64, |acc, c| acc | 1 << perm[c])
            })
            .collect();
        ListAssignment {
            universe: self.universe,
            k: self.k,
            lists,
        }
    }

    /// Errors unless there is exactly one list per vertex of `h`.
    pub fn check_for(&self, h: &Hypergraph) -> Result<()> {
        if self.n() != h.n() {
            return Err(Error::ListCountMismatch {
                expected: h.n(),
                found: self.n(),
            });
        }
        Ok(())
    }
}

fn common_colors(l: &ListAssignment, vertices: &[usize]) -> u64 {
    vertices.iter().fold(u64::MAX, |acc, &v| acc & l.lists[v])
}

/// `α(e, L) = k - |⋂_{v ∈ e} L(v)|`.
pub fn alpha(h: &Hypergraph, l: &ListAssignment, e: usize) -> usize {
    l.k - common_colors(l, h.edge(e)).count_ones() as usize
}

/// `Σ_e α(e, L)`.
pub fn alpha_total(h: &Hypergraph, l: &ListAssignment) -> usize {
    (0..h.m()).map(|e| alpha(h, l, e)).sum()
}

/// `β = |⋂_{v ∈ W} L(v)|`, the number of colors common to all of `W`.
pub fn beta(l: &ListAssignment, w: &[usize]) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    Ok(common_colors(l, w).count_ones() as usize)
}

/// `f(S) = (-1)^{|S|} ∏_t β(C_t^S, L)` over all components of `(V, S)`,
/// isolated vertices included.
pub fn f_of_s(h: &Hypergraph, l: &ListAssignment, s: EdgeSubset) -> BigInt {
    let labeling = h.component_count(s);
    let mut common = vec![u64::MAX; labeling.count()];
    for (v, &label) in labeling.labels().iter().enumerate() {
        common[label] &= l.lists[v];
    }
    let product = common.iter().fold(BigInt::one(), |acc, mask| acc * mask.count_ones());
    if s.len() % 2 == 1 {
        -product
    } else {
        product
    }
}

/// Number of `L`-colorings by enumerating every choice from the lists.
pub fn list_count_brute(h: &Hypergraph, l: &ListAssignment) -> Result<BigInt> {
    l.check_for(h)?;
    let n = h.n();
    if n == 0 {
        return Ok(BigInt::one());
    }
    brute_size(core::iter::repeat_n(l.k as u64, n))?;
    let palette: Vec<Vec<usize>> = (0..n).map(|v| l.colors(v)).collect();
    let mut digits = vec![0usize; n];
    let mut color = vec![0usize; n];
    let mut count: u64 = 0;
    loop {
        for v in 0..n {
            color[v] = palette[v][digits[v]];
        }
        if !h.edges().iter().any(|e| monochromatic(e, &color)) {
            count += 1;
        }
        if !odometer_step(&mut digits, |_| l.k) {
            break;
        }
    }
    Ok(BigInt::from(count))
}

/// Per-size sums of an expansion over an edge-subset family.
///
/// For each size `i` it holds `Σ_S k^{c(V,S)}` (what a constant assignment
/// would contribute) and `Σ_S ∏_t β(C_t^S, L)`, each without the sign
/// `(-1)^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListExpansion {
    constant_sums: Vec<BigInt>,
    list_sums: Vec<BigInt>,
}

impl ListExpansion {
    /// `P(G, L) = Σ_i (-1)^i list_sums[i]`.
    pub fn list_count(&self) -> BigInt {
        alternating(&self.list_sums)
    }

    /// `P(G, k) = Σ_i (-1)^i constant_sums[i]`.
    pub fn constant_count(&self) -> BigInt {
        alternating(&self.constant_sums)
    }

    /// `f_i`: constant-list contribution minus list contribution at size `i`.
    pub fn fi(&self, i: usize) -> BigInt {
        let c = self.constant_sums.get(i).cloned().unwrap_or_default();
        let l = self.list_sums.get(i).cloned().unwrap_or_default();
        c - l
    }

    /// Largest subset size present in the family.
    pub fn max_size(&self) -> usize {
        self.list_sums.len().saturating_sub(1)
    }

    pub fn constant_sums(&self) -> &[BigInt] {
        &self.constant_sums
    }

    pub fn list_sums(&self) -> &[BigInt] {
        &self.list_sums
    }
}

fn alternating(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, v)| if i % 2 == 1 { acc - v } else { acc + v })
}

/// Expands `P(G, L)` over the subsets free of every member of `family`.
///
/// With the full broken-cycle family this is the broken-cycle form; with
/// [`BrokenCycleFamily::empty`] it is plain inclusion-exclusion.
pub fn expand(h: &Hypergraph, family: &BrokenCycleFamily, l: &ListAssignment) -> Result<ListExpansion> {
    l.check_for(h)?;
    h.check_enumerable()?;
    let n = h.n();
    let k = l.k as u64;
    let mut uf = UnionFind::new(n);
    let mut common = vec![u64::MAX; n];
    let mut constant: Vec<WideSum> = vec![WideSum::new(); h.m() + 1];
    let mut listed: Vec<WideSum> = vec![WideSum::new(); h.m() + 1];
    let mut top = 0;
    family.for_each_free_subset(|s| {
        let i = s.len();
        top = top.max(i);
        let components = h.count_with(&mut uf, s);
        common.fill(u64::MAX);
        for (v, &list) in l.lists.iter().enumerate() {
            let root = uf.find(v);
            common[root] &= list;
        }
        let mut product = Product::one();
        let mut power = Product::one();
        for (v, &shared) in common.iter().enumerate().take(n) {
            if uf.find(v) == v {
                product = product.mul(shared.count_ones() as u64);
            }
        }
        for _ in 0..components {
            power = power.mul(k);
        }
        product.add_to(&mut listed[i], false);
        power.add_to(&mut constant[i], false);
    })?;
    Ok(ListExpansion {
        constant_sums: constant[..=top].iter().map(WideSum::total).collect(),
        list_sums: listed[..=top].iter().map(WideSum::total).collect(),
    })
}

/// `P(G, L) = Σ_{S ⊆ E} f(S)`, full inclusion-exclusion.
pub fn list_count_ie(h: &Hypergraph, l: &ListAssignment) -> Result<BigInt> {
    Ok(expand(h, &BrokenCycleFamily::empty(h.m()), l)?.list_count())
}

/// `P(G, L) = Σ_{S ∈ B(G)} f(S)`, restricted to broken-cycle-free subsets.
pub fn list_count_broken(h: &Hypergraph, l: &ListAssignment) -> Result<BigInt> {
    list_count_broken_with(h, &broken_cycles(h)?, l)
}

/// [`list_count_broken`] for a precomputed broken-cycle family.
pub fn list_count_broken_with(h: &Hypergraph, family: &BrokenCycleFamily, l: &ListAssignment) -> Result<BigInt> {
    Ok(expand(h, family, l)?.list_count())
}
