//! Dyadic interval evaluation, the fast path for sign determination.
//!
//! Enclosures are rational intervals whose endpoints are rounded outward to
//! denominator 2^bits after every operation, so repeated products cannot blow
//! up endpoint size. Soundness is all that matters here: the true value is
//! always inside `[lo, hi]`; a tie that straddles zero falls back to the
//! symbolic sign computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::repr::Repr;
use super::tower::Tower;

#[derive(Clone, Debug)]
pub(crate) struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn floor_div(n: BigInt, d: &BigInt) -> BigInt {
    n.div_floor(d)
}

fn ceil_div(n: BigInt, d: &BigInt) -> BigInt {
    n.div_ceil(d)
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let m = floor_div(x.numer() * &scale, x.denom());
    BigRational::new(m, scale)
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let m = ceil_div(x.numer() * &scale, x.denom());
    BigRational::new(m, scale)
}

impl Enclosure {
    pub fn exact(x: &BigRational) -> Enclosure {
        Enclosure {
            lo: x.clone(),
            hi: x.clone(),
        }
    }

    fn round(self, bits: u32) -> Enclosure {
        Enclosure {
            lo: round_down(&self.lo, bits),
            hi: round_up(&self.hi, bits),
        }
    }

    fn add(&self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    fn mul(&self, rhs: &Enclosure) -> Enclosure {
        let mut candidates = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        candidates.sort();
        let [lo, .., hi] = candidates;
        Enclosure { lo, hi }
    }

    /// Outward-rounded square root; the lower endpoint is clamped at zero
    /// since enclosed radicands are nonnegative values.
    pub fn sqrt(&self, bits: u32) -> Enclosure {
        let zero = BigRational::zero();
        let lo = if self.lo.is_negative() { &zero } else { &self.lo };
        Enclosure {
            lo: sqrt_down(lo, bits),
            hi: sqrt_up(&self.hi, bits),
        }
    }
}

fn sqrt_down(x: &BigRational, bits: u32) -> BigRational {
    // Largest m/2^bits with (m/2^bits)^2 <= x.
    let scale = pow2(bits);
    let scaled = floor_div(x.numer() * &scale * &scale, x.denom());
    BigRational::new(scaled.sqrt(), scale)
}

fn sqrt_up(x: &BigRational, bits: u32) -> BigRational {
    if x.is_negative() {
        return BigRational::zero();
    }
    let scale = pow2(bits);
    let scaled = ceil_div(x.numer() * &scale * &scale, x.denom());
    let root = scaled.sqrt();
    let m = if &root * &root == scaled { root } else { root + 1 };
    BigRational::new(m, scale)
}

pub(crate) fn enclose(q: &Repr, bits: u32, tower: &Tower) -> Enclosure {
    match q {
        Repr::Rat(r) => Enclosure::exact(r),
        Repr::Ext { level, a, b } => {
            let ea = enclose(a, bits, tower);
            let eb = enclose(b, bits, tower);
            let es = tower.sqrt_enclosure(*level, bits);
            ea.add(&eb.mul(&es)).round(bits)
        }
    }
}
