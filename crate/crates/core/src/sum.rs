//! Signed accumulator that stays in `i128` until it overflows.

use num_bigint::BigInt;

#[derive(Clone, Debug, Default)]
pub(crate) struct WideSum {
    fast: i128,
    spill: BigInt,
}

impl WideSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add_signed(&mut self, value: u128, negative: bool) {
        match i128::try_from(value) {
            Ok(v) => {
                let v = if negative { -v } else { v };
                match self.fast.checked_add(v) {
                    Some(s) => self.fast = s,
                    None => {
                        self.spill += BigInt::from(self.fast) + BigInt::from(v);
                        self.fast = 0;
                    }
                }
            }
            Err(_) => {
                let v = BigInt::from(value);
                if negative {
                    self.spill -= v;
                } else {
                    self.spill += v;
                }
            }
        }
    }

    pub(crate) fn add_big(&mut self, value: &BigInt) {
        self.spill += value;
    }

    pub(crate) fn total(&self) -> BigInt {
        &self.spill + BigInt::from(self.fast)
    }
}

/// Product of small factors; `u128` while it fits, `BigInt` afterwards.
pub(crate) enum Product {
    Small(u128),
    Big(BigInt),
}

impl Product {
    pub(crate) fn one() -> Self {
        Product::Small(1)
    }

    pub(crate) fn mul(self, factor: u64) -> Self {
        match self {
            Product::Small(p) => match p.checked_mul(factor as u128) {
                Some(q) => Product::Small(q),
                None => Product::Big(BigInt::from(p) * factor),
            },
            Product::Big(b) => Product::Big(b * factor),
        }
    }

    pub(crate) fn add_to(self, sum: &mut WideSum, negative: bool) {
        match self {
            Product::Small(p) => sum.add_signed(p, negative),
            Product::Big(b) => {
                if negative {
                    sum.add_big(&-b);
                } else {
                    sum.add_big(&b);
                }
            }
        }
    }
}
