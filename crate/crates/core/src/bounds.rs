//! The inequalities behind the threshold `k > (m-1)/ln(1+√2)`, as checks.
//!
//! Integer-valued sides are always exact. Real-valued sides (`φ`, the
//! product bound, the final lower bound) use `f64` and are compared with an
//! absolute tolerance of [`REAL_TOLERANCE`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::chromatic::chromatic_poly_broken_with;
use crate::cycles::{broken_cycles, delta_cycles, stratify_with, BrokenCycleFamily, SubsetsOfSize};
use crate::hypercore::{EdgeSubset, Hypergraph, UnionFind};
use crate::listcount::{alpha, alpha_total, expand, ListAssignment, ListExpansion};
use crate::{Error, Result};

/// Absolute tolerance for comparisons involving floating-point values.
pub const REAL_TOLERANCE: f64 = 1e-9;

/// Default cap on `|F|` when enumerating connected sub-hypergraphs.
pub const DEFAULT_BETA_EDGE_CAP: usize = 6;

/// Result of a check that either holds or produces a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check<W> {
    Holds,
    Counterexample(W),
}

impl<W> Check<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }
}

/// Bounds on an `i`-edge δ-cycle-free edge set on `n` vertices of an
/// `r`-uniform hypergraph, compared with its actual component count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetBounds {
    pub size: usize,
    pub components: usize,
    /// `n - r + 1`.
    pub max_edges: i64,
    /// `max{1, n - (r-1) i}`.
    pub lower: i64,
    /// `n - i + 2 - r`.
    pub upper: i64,
    /// Both component bounds must be tight (`r = 2` or `i = 1`).
    pub equality_expected: bool,
}

impl SubsetBounds {
    pub fn new(n: usize, r: usize, size: usize, components: usize) -> Self {
        SubsetBounds {
            size,
            components,
            max_edges: n as i64 - r as i64 + 1,
            lower: crate::cycles::tau(n, r, size),
            upper: crate::cycles::component_upper(n, r, size),
            equality_expected: r == 2 || size == 1,
        }
    }

    pub fn edge_bound_holds(&self) -> bool {
        self.size as i64 <= self.max_edges
    }

    pub fn component_bounds_hold(&self) -> bool {
        let c = self.components as i64;
        let within = self.lower <= c && c <= self.upper;
        within && (!self.equality_expected || (self.lower == c && c == self.upper))
    }

    pub fn holds(&self) -> bool {
        self.edge_bound_holds() && self.component_bounds_hold()
    }
}

fn require_delta_cycle_free(h: &Hypergraph) -> Result<usize> {
    if h.m() == 0 {
        return Err(Error::TrivialHypergraph);
    }
    let r = h.require_uniform()?;
    if let Some(&d) = delta_cycles(h)?.members().first() {
        return Err(Error::HasDeltaCycle { witness: d.bits() });
    }
    Ok(r)
}

/// A nontrivial δ-cycle-free `r`-uniform hypergraph has at most `n - r + 1` edges.
///
/// Errors if the precondition fails; a counterexample carries the hypergraph.
pub fn check_edge_bound(h: &Hypergraph) -> Result<Check<Hypergraph>> {
    let r = require_delta_cycle_free(h)?;
    let b = SubsetBounds::new(h.n(), r, h.m(), h.count_components(h.all_edges()));
    Ok(if b.edge_bound_holds() {
        Check::Holds
    } else {
        Check::Counterexample(h.clone())
    })
}

/// `max{1, n - (r-1) m} <= c(G) <= n - m + 2 - r` for nontrivial
/// δ-cycle-free `r`-uniform hypergraphs, with equality when `r = 2` or `m = 1`.
pub fn check_component_bounds(h: &Hypergraph) -> Result<Check<SubsetBounds>> {
    let r = require_delta_cycle_free(h)?;
    let b = SubsetBounds::new(h.n(), r, h.m(), h.count_components(h.all_edges()));
    Ok(if b.component_bounds_hold() {
        Check::Holds
    } else {
        Check::Counterexample(b)
    })
}

/// Outcome of checking the edge and component bounds on every nonempty member of `B(G)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyBoundsReport {
    pub checked: usize,
    pub equalities_checked: usize,
    pub violations: Vec<(EdgeSubset, SubsetBounds)>,
}

impl FamilyBoundsReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Applies [`SubsetBounds`] to every nonempty broken-cycle-free edge set.
///
/// Each such `(V, S)` contains no δ-cycle, so both bounds must hold.
pub fn check_family_bounds(h: &Hypergraph, family: &BrokenCycleFamily) -> Result<FamilyBoundsReport> {
    let r = h.require_uniform()?;
    let strata = stratify_with(h, family, true)?;
    let mut report = FamilyBoundsReport::default();
    for ((i, j), s) in strata.all_members().expect("members were requested") {
        if i == 0 {
            continue;
        }
        let b = SubsetBounds::new(h.n(), r, i, j);
        report.checked += 1;
        if b.equality_expected {
            report.equalities_checked += 1;
        }
        if !b.holds() {
            report.violations.push((s, b));
        }
    }
    Ok(report)
}

/// Both sides of `∏ (t - a_i) >= t^s - t^{s-1} Σ a_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeierstrassCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// At most one `a_i` is positive, so the two sides must agree.
    pub equality_expected: bool,
    pub equality_holds: bool,
}

/// Evaluates the product inequality for `t >= 1` and every `a_i` in `[0, t]`.
///
/// The tolerance is [`REAL_TOLERANCE`] relative to `max(1, t^s)`, the
/// magnitude of both sides.
pub fn weierstrass_product_bound(t: u64, a: &[f64]) -> Result<WeierstrassCheck> {
    if t == 0 {
        return Err(Error::InvalidParameter {
            reason: "t must be at least 1",
        });
    }
    let tf = t as f64;
    if let Some(index) = a.iter().position(|&x| !(0.0..=tf).contains(&x)) {
        return Err(Error::OutOfDomain { index });
    }
    let s = a.len() as i32;
    let lhs: f64 = a.iter().map(|&x| tf - x).product();
    let rhs = libm::pow(tf, s as f64) - libm::pow(tf, (s - 1) as f64) * a.iter().sum::<f64>();
    let tol = REAL_TOLERANCE * libm::pow(tf, s as f64).max(1.0);
    let equality_expected = a.iter().filter(|&&x| x > 0.0).count() <= 1;
    Ok(WeierstrassCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - tol,
        equality_expected,
        equality_holds: libm::fabs(lhs - rhs) <= tol,
    })
}

/// One term `f_i` of the difference `P(G,L) - P(G,k) = Σ (-1)^{i-1} f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiTerm {
    pub i: usize,
    pub value: BigInt,
    /// `k^{n-i+1-r} C(m-1, i-1) Σ_e α(e,L)`.
    pub upper: BigInt,
    pub alpha_total: usize,
}

impl FiTerm {
    /// `0 <= f_i <= upper`.
    pub fn within_sandwich(&self) -> bool {
        !self.value.is_negative() && self.value <= self.upper
    }

    /// For `i = 1` the upper bound is attained: `f_1 = α k^{n-r}`.
    pub fn first_is_exact(&self) -> bool {
        self.i != 1 || self.value == self.upper
    }
}

/// Builds every `f_i`, `1 <= i <= n - r + 1`, from an expansion over `B(G)`.
pub fn fi_terms(h: &Hypergraph, l: &ListAssignment, expansion: &ListExpansion) -> Result<Vec<FiTerm>> {
    let r = h.require_uniform()?;
    let (n, m, k) = (h.n(), h.m(), l.k());
    let alpha = alpha_total(h, l);
    let last = (n + 1).saturating_sub(r);
    Ok((1..=last)
        .map(|i| {
            let upper = if m == 0 {
                BigInt::zero()
            } else {
                let choose: BigUint = num_integer::binomial(BigUint::from(m - 1), BigUint::from(i - 1));
                BigInt::from(k).pow((n + 1 - r - i) as u32) * BigInt::from(choose) * alpha
            };
            FiTerm {
                i,
                value: expansion.fi(i),
                upper,
                alpha_total: alpha,
            }
        })
        .collect())
}

/// All `f_i` terms for `(H, L)`.
pub fn compute_all_fi(h: &Hypergraph, l: &ListAssignment) -> Result<Vec<FiTerm>> {
    let family = broken_cycles(h)?;
    let expansion = expand(h, &family, l)?;
    fi_terms(h, l, &expansion)
}

/// The single term `f_i`; `i` must lie in `[1, n - r + 1]`.
pub fn compute_fi(h: &Hypergraph, l: &ListAssignment, i: usize) -> Result<FiTerm> {
    let r = h.require_uniform()?;
    let high = (h.n() + 1).saturating_sub(r);
    if i == 0 || i > high {
        return Err(Error::IndexOutOfRange { index: i, low: 1, high });
    }
    Ok(compute_all_fi(h, l)?.swap_remove(i - 1))
}

/// `Σ_i (-1)^{i-1} f_i`, which equals `P(G,L) - P(G,k)`.
pub fn difference_via_fi(terms: &[FiTerm]) -> BigInt {
    terms.iter().fold(BigInt::zero(), |acc, t| {
        if t.i % 2 == 1 {
            acc + &t.value
        } else {
            acc - &t.value
        }
    })
}

/// A connected sub-hypergraph whose `β` broke the lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaViolation {
    /// Empty for single-vertex checks.
    pub edges: EdgeSubset,
    pub vertices: Vec<usize>,
    pub beta: usize,
    /// `k - Σ_{e ∈ F} α(e, L)`, possibly negative.
    pub lower: i64,
    pub equality_expected: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BetaLemmaReport {
    pub checked: usize,
    pub equalities_checked: usize,
    pub violations: Vec<BetaViolation>,
}

impl BetaLemmaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `k >= β(C,L) >= k - Σ_{e∈F} α(e,L)` on every connected
/// sub-hypergraph `C = (W, F)` with `|F| <= edge_cap`, and equality on the
/// right when `|W| = 1` or `|W| = r`.
pub fn check_beta_lemma(h: &Hypergraph, l: &ListAssignment, edge_cap: usize) -> Result<BetaLemmaReport> {
    l.check_for(h)?;
    h.check_enumerable()?;
    let k = l.k();
    let r = h.uniformity();
    let alphas: Vec<usize> = (0..h.m()).map(|e| alpha(h, l, e)).collect();
    let mut report = BetaLemmaReport::default();
    let judge = |edges: EdgeSubset, vertices: Vec<usize>, report: &mut BetaLemmaReport| {
        let beta = crate::listcount::beta(l, &vertices).expect("nonempty vertex set");
        let lower = k as i64 - edges.iter().map(|e| alphas[e] as i64).sum::<i64>();
        let equality_expected = vertices.len() == 1 || Some(vertices.len()) == r;
        report.checked += 1;
        if equality_expected {
            report.equalities_checked += 1;
        }
        let ok = beta <= k && beta as i64 >= lower && (!equality_expected || beta as i64 == lower);
        if !ok {
            report.violations.push(BetaViolation {
                edges,
                vertices,
                beta,
                lower,
                equality_expected,
            });
        }
    };
    for v in 0..h.n() {
        judge(EdgeSubset::EMPTY, alloc::vec![v], &mut report);
    }
    let mut uf = UnionFind::new(h.n());
    for size in 1..=edge_cap.min(h.m()) {
        for bits in SubsetsOfSize::new(h.m(), size) {
            let f = EdgeSubset::new(bits, h.m())?;
            let vertices = h.vertices_of(f);
            let components = h.count_with(&mut uf, f);
            // (V(F), F) is connected iff the n - |V(F)| untouched vertices are
            // the only other components
            if components + vertices.len() != h.n() + 1 {
                continue;
            }
            judge(f, vertices, &mut report);
        }
    }
    Ok(report)
}

/// `φ(x) = 1 - (e^x - e^{-x}) / 2 = 1 - sinh(x)`.
pub fn phi(x: f64) -> f64 {
    1.0 - libm::sinh(x)
}

/// `ln(1 + √2)` in double precision.
pub fn x0() -> f64 {
    libm::log(1.0 + libm::sqrt(2.0))
}

/// Decimal digits carried by [`ThresholdReport`]'s exact fields.
pub const THRESHOLD_DIGITS: usize = 40;

/// `floor(ln(1+√2) * 10^digits)`, from `ln(1+√2) = 2 atanh(√2 - 1)` in
/// fixed-point integer arithmetic.
pub fn x0_scaled(digits: usize) -> BigUint {
    const GUARD: usize = 10;
    let scale = BigUint::from(10u8).pow((digits + GUARD) as u32);
    let sqrt2 = (BigUint::from(2u8) * &scale * &scale).sqrt();
    let y = sqrt2 - &scale;
    let y2 = &y * &y / &scale;
    let mut term = y;
    let mut sum = BigUint::zero();
    let mut odd = 1u32;
    while !term.is_zero() {
        sum += &term / odd;
        term = term * &y2 / &scale;
        odd += 2;
    }
    sum * 2u8 / BigUint::from(10u8).pow(GUARD as u32)
}

fn decimal(scaled: &BigUint, digits: usize) -> String {
    let unit = BigUint::from(10u8).pow(digits as u32);
    let whole = scaled / &unit;
    let frac = scaled % &unit;
    format!("{whole}.{frac:0>digits$}")
}

/// The threshold `(m-1)/ln(1+√2)` and the least integer above it.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub m: usize,
    /// `ln(1+√2)` as `f64`.
    pub x0: f64,
    /// `ln(1+√2)` truncated to [`THRESHOLD_DIGITS`] decimals.
    pub x0_decimal: String,
    /// `1/ln(1+√2) ≈ 1.1346`.
    pub coefficient: f64,
    pub threshold: f64,
    /// Threshold truncated to [`THRESHOLD_DIGITS`] decimals.
    pub threshold_decimal: String,
    /// Least integer strictly greater than the threshold (and at least 1).
    pub k_min: u64,
    /// The threshold lies within a relative `1e-12` of an integer.
    pub near_tie: bool,
}

/// Computes the threshold for a hypergraph with `m` edges.
///
/// For `m >= 2` the threshold is irrational, so no exact tie with an
/// integer exists; `near_tie` flags values whose fractional part is within
/// a relative `1e-12` of an integer.
pub fn threshold(m: usize) -> ThresholdReport {
    let digits = THRESHOLD_DIGITS;
    let x = x0_scaled(digits);
    let unit = BigUint::from(10u8).pow(digits as u32);
    let edges_less_one = m.saturating_sub(1);
    let scaled = BigUint::from(edges_less_one) * &unit * &unit / &x;
    let whole = &scaled / &unit;
    let frac = (&scaled % &unit).to_f64().unwrap_or(0.0) / unit.to_f64().unwrap_or(1.0);
    let k_min = whole.to_u64().expect("threshold fits in u64") + 1;
    let x0f = x0();
    let thr = edges_less_one as f64 / x0f;
    let margin = 1e-12 * thr.max(1.0);
    ThresholdReport {
        m,
        x0: x0f,
        x0_decimal: decimal(&x, digits),
        coefficient: 1.0 / x0f,
        threshold: thr,
        threshold_decimal: decimal(&scaled, digits),
        k_min,
        near_tie: edges_less_one > 0 && (frac < margin || 1.0 - frac < margin),
    }
}

/// `α k^{n-r} φ((m-1)/k)`, the lower bound on `P(G,L) - P(G,k)`.
pub fn difference_bound(n: usize, r: usize, m: usize, k: usize, alpha_total: usize) -> f64 {
    let x = m.saturating_sub(1) as f64 / k as f64;
    alpha_total as f64 * libm::pow(k as f64, (n - r) as f64) * phi(x)
}

/// Exact integer `actual` against real `bound`, with [`REAL_TOLERANCE`].
pub fn bound_holds(actual: &BigInt, bound: f64) -> bool {
    actual.to_f64().is_some_and(|a| a >= bound - REAL_TOLERANCE)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceBound {
    /// `P(G, L) - P(G, k)`, exact.
    pub actual: BigInt,
    pub bound: f64,
    pub alpha_total: usize,
    pub holds: bool,
}

/// Compares `P(G,L) - P(G,k)` with `α k^{n-r} φ((m-1)/k)`.
///
/// `P(G,L)` comes from the broken-cycle list expansion and `P(G,k)` from the
/// broken-cycle chromatic polynomial.
pub fn difference_lower_bound(h: &Hypergraph, l: &ListAssignment) -> Result<DifferenceBound> {
    let r = h.require_uniform()?;
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    l.check_for(h)?;
    let family = broken_cycles(h)?;
    let list_count = expand(h, &family, l)?.list_count();
    let constant_count = chromatic_poly_broken_with(h, &family)?.eval(l.k() as u64);
    let alpha = alpha_total(h, l);
    let actual = list_count - constant_count;
    let bound = difference_bound(h.n(), r, h.m(), l.k(), alpha);
    Ok(DifferenceBound {
        holds: bound_holds(&actual, bound),
        actual,
        bound,
        alpha_total: alpha,
    })
}
