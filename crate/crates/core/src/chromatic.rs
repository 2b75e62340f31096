//! The chromatic polynomial `P(G, k)`, computed three ways, plus a
//! brute-force coloring counter.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cycles::{broken_cycles, stratify, BrokenCycleFamily, Stratification};
use crate::hypercore::{EdgeSubset, Hypergraph, UnionFind};
use crate::{Error, Result};

/// Upper limit on the number of colorings a brute-force counter may visit.
pub const MAX_BRUTE_COLORINGS: u64 = 1 << 25;

/// Polynomial in `k` with exact integer coefficients; index = power of `k`.
///
/// Trailing zero coefficients are trimmed, so equal polynomials compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    /// `k^degree`.
    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::one();
        Polynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `value * k^power`.
    pub fn add_term(&mut self, power: usize, value: &BigInt) {
        if self.coeffs.len() <= power {
            self.coeffs.resize(power + 1, BigInt::zero());
        }
        self.coeffs[power] += value;
        self.trim();
    }

    /// Exact value at `k` (Horner).
    pub fn eval(&self, k: u64) -> BigInt {
        self.eval_big(&BigInt::from(k))
    }

    pub fn eval_big(&self, k: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = magnitude.is_one();
            match power {
                0 => write!(f, "{magnitude}")?,
                1 if unit => f.write_str("k")?,
                1 => write!(f, "{magnitude}k")?,
                _ if unit => write!(f, "k^{power}")?,
                _ => write!(f, "{magnitude}k^{power}")?,
            }
        }
        Ok(())
    }
}

/// Accumulates `±k^c` terms as signed counts per power.
struct PowerTally {
    counts: Vec<i64>,
}

impl PowerTally {
    fn new(n: usize) -> Self {
        PowerTally { counts: vec![0; n + 1] }
    }

    fn add(&mut self, power: usize, negative: bool) {
        self.counts[power] += if negative { -1 } else { 1 };
    }

    fn into_polynomial(self) -> Polynomial {
        Polynomial::from_coeffs(self.counts.into_iter().map(BigInt::from).collect())
    }
}

/// `Σ_{S ⊆ E} (-1)^{|S|} k^{c(V,S)}` over all `2^m` subsets.
pub fn chromatic_poly_whitney(h: &Hypergraph) -> Result<Polynomial> {
    h.check_enumerable()?;
    let mut uf = UnionFind::new(h.n());
    let mut tally = PowerTally::new(h.n());
    for bits in 0..1u64 << h.m() {
        let s = EdgeSubset::new(bits, h.m())?;
        tally.add(h.count_with(&mut uf, s), s.len() % 2 == 1);
    }
    Ok(tally.into_polynomial())
}

/// Same sum restricted to `B(G)`, the subsets with no broken cycle.
pub fn chromatic_poly_broken(h: &Hypergraph) -> Result<Polynomial> {
    chromatic_poly_broken_with(h, &broken_cycles(h)?)
}

/// [`chromatic_poly_broken`] for a precomputed broken-cycle family.
pub fn chromatic_poly_broken_with(h: &Hypergraph, family: &BrokenCycleFamily) -> Result<Polynomial> {
    h.check_enumerable()?;
    let mut uf = UnionFind::new(h.n());
    let mut tally = PowerTally::new(h.n());
    family.for_each_free_subset(|s| tally.add(h.count_with(&mut uf, s), s.len() % 2 == 1))?;
    Ok(tally.into_polynomial())
}

/// `k^n + Σ_i (-1)^i Σ_j |B_i^j| k^j` from a stratification.
pub fn chromatic_poly_stratified(strata: &Stratification) -> Polynomial {
    let mut p = Polynomial::monomial(strata.n());
    for ((i, j), count) in strata.strata() {
        if i == 0 {
            // B_0 = {∅}, already accounted for by k^n
            continue;
        }
        let c = BigInt::from(count.clone());
        p.add_term(j, &if i % 2 == 1 { -c } else { c });
    }
    p
}

/// Stratifies `h` and applies [`chromatic_poly_stratified`].
pub fn chromatic_poly_stratified_for(h: &Hypergraph) -> Result<Polynomial> {
    Ok(chromatic_poly_stratified(&stratify(h)?))
}

/// `k^n` if it does not exceed [`MAX_BRUTE_COLORINGS`].
pub(crate) fn brute_size(radices: impl IntoIterator<Item = u64>) -> Result<u64> {
    let mut total: u64 = 1;
    for r in radices {
        total = total
            .checked_mul(r)
            .filter(|&t| t <= MAX_BRUTE_COLORINGS)
            .ok_or(Error::TooManyColorings {
                limit: MAX_BRUTE_COLORINGS,
            })?;
    }
    Ok(total)
}

/// Advances a mixed-radix odometer; false once it wraps around.
pub(crate) fn odometer_step(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for (v, d) in digits.iter_mut().enumerate() {
        *d += 1;
        if *d < radix(v) {
            return true;
        }
        *d = 0;
    }
    false
}

pub(crate) fn monochromatic(edge: &[usize], color: &[usize]) -> bool {
    let c = color[edge[0]];
    edge[1..].iter().all(|&v| color[v] == c)
}

/// Number of maps `V → {1..k}` leaving no edge monochromatic, by direct enumeration.
pub fn chromatic_count_brute(h: &Hypergraph, k: u64) -> Result<BigInt> {
    let n = h.n();
    if n == 0 {
        return Ok(BigInt::one());
    }
    if k == 0 {
        return Ok(BigInt::zero());
    }
    brute_size(core::iter::repeat_n(k, n))?;
    let mut color = vec![0usize; n];
    let mut count: u64 = 0;
    loop {
        if !h.edges().iter().any(|e| monochromatic(e, &color)) {
            count += 1;
        }
        if !odometer_step(&mut color, |_| k as usize) {
            break;
        }
    }
    Ok(BigInt::from(count))
}

/// Evaluates `p` at `k`; an alias of [`Polynomial::eval`].
pub fn eval(p: &Polynomial, k: u64) -> BigInt {
    p.eval(k)
}
