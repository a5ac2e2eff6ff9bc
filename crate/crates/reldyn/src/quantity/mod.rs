//! Exact arithmetic over a square-root-closed ordered subfield of the reals.
//!
//! Values live in the smallest field containing the rationals and closed
//! under square roots of nonnegative elements, realized as rational
//! coefficients over a dynamically grown tower of real quadratic extensions.
//! Every operation is exact; ordering is decided by interval arithmetic with
//! a symbolic fallback, never by approximation alone.

mod interval;
mod parse;
mod repr;
mod tower;

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use parse::LiteralError;
use repr::Repr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantityError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative value")]
    NegativeRadicand,
}

/// An exact element of the quantity field.
///
/// Immutable and cheap to clone; safe to share across threads. Comparison,
/// equality and hashing-free ordering are all exact.
#[derive(Clone)]
pub struct Quantity {
    repr: Repr,
}

impl Quantity {
    pub fn zero() -> Quantity {
        Quantity { repr: Repr::zero() }
    }

    pub fn one() -> Quantity {
        Quantity { repr: Repr::one() }
    }

    pub fn from_int(n: i64) -> Quantity {
        Quantity {
            repr: Repr::int(n),
        }
    }

    /// Exact rational `n/d`. Panics when `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Quantity {
        Quantity {
            repr: Repr::ratio(n, d),
        }
    }

    pub fn from_big_rational(r: BigRational) -> Quantity {
        Quantity {
            repr: Repr::from_rational(r),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.repr.as_rational().is_some()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.repr.as_rational().cloned()
    }

    pub fn sign(&self) -> Ordering {
        let tw = tower::snapshot();
        sign_repr(&self.repr, &tw)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> Quantity {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Quantity, QuantityError> {
        if self.sign() == Ordering::Equal {
            return Err(QuantityError::DivisionByZero);
        }
        let tw = tower::snapshot();
        let repr = self
            .repr
            .inv(&tw)
            .expect("nonzero element of an independent tower is invertible");
        Ok(Quantity { repr })
    }

    pub fn checked_div(&self, rhs: &Quantity) -> Result<Quantity, QuantityError> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact nonnegative square root of a nonnegative value.
    pub fn sqrt(&self) -> Result<Quantity, QuantityError> {
        match self.sign() {
            Ordering::Less => Err(QuantityError::NegativeRadicand),
            Ordering::Equal => Ok(Quantity::zero()),
            Ordering::Greater => Ok(Quantity {
                repr: tower::sqrt_repr(&self.repr),
            }),
        }
    }

    pub fn square(&self) -> Quantity {
        self * self
    }

    /// Decimal approximation truncated toward zero, correct to `digits`
    /// places after the point. `digits` must be at least 1.
    pub fn approx(&self, digits: usize) -> String {
        assert!(digits >= 1, "approx requires at least one digit");
        let negative = self.is_negative();
        let magnitude = self.abs();
        let pow = Quantity::from_big_rational(BigRational::from_integer(
            BigInt::from(10u32).pow(digits as u32),
        ));
        let scaled = &magnitude * &pow;
        let n = scaled.floor_exact();
        let base = BigInt::from(10u32).pow(digits as u32);
        let (int_part, frac_part) = (&n / &base, &n % &base);
        let frac = format!("{:0>width$}", frac_part.to_string(), width = digits);
        let sign = if negative && (!int_part.is_zero() || !frac_part.is_zero()) {
            "-"
        } else if negative {
            // -0.0004 truncates to 0.000; keep the sign only when a digit shows
            ""
        } else {
            ""
        };
        format!("{sign}{int_part}.{frac}")
    }

    /// Exact floor of a nonnegative value, decided by interval refinement
    /// with an exact comparison breaking the final tie.
    fn floor_exact(&self) -> BigInt {
        if let Some(r) = self.repr.as_rational() {
            return r.floor().to_integer();
        }
        let tw = tower::snapshot();
        for bits in [64u32, 128, 256, 512, 1024, 2048] {
            let e = interval::enclose(&self.repr, bits, &tw);
            let lo = e.lo.floor().to_integer();
            let hi = e.hi.floor().to_integer();
            if lo == hi {
                return lo;
            }
            if &hi - &lo == BigInt::one() {
                let pivot = Quantity::from_big_rational(BigRational::from_integer(hi.clone()));
                return if self >= &pivot { hi } else { lo };
            }
        }
        unreachable!("interval refinement failed to localize an exact value")
    }

    /// f64 view for rendering and speed comparisons; not used by any exact
    /// computation.
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.repr.as_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let tw = tower::snapshot();
        let e = interval::enclose(&self.repr, 80, &tw);
        let mid = (&e.lo + &e.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

pub(crate) fn sign_repr(q: &Repr, tower: &tower::Tower) -> Ordering {
    if let Some(r) = q.as_rational() {
        return rational_sign(r);
    }
    for bits in [64u32, 192] {
        let e = interval::enclose(q, bits, tower);
        if e.lo.is_positive() {
            return Ordering::Greater;
        }
        if e.hi.is_negative() {
            return Ordering::Less;
        }
    }
    sign_symbolic(q, tower)
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Recursive exact sign of a + b*sqrt(R): compare a against -b*sqrt(R) by
/// squaring, which pushes the decision into the field below the top level.
fn sign_symbolic(q: &Repr, tower: &tower::Tower) -> Ordering {
    match q {
        Repr::Rat(r) => rational_sign(r),
        Repr::Ext { level, a, b } => {
            let sa = sign_repr(a, tower);
            let sb = sign_repr(b, tower);
            if sb == Ordering::Equal {
                return sa;
            }
            if sa == Ordering::Equal {
                return sb;
            }
            if sa == sb {
                return sa;
            }
            let rad = tower.radicand(*level);
            let t = a
                .square(tower)
                .sub(&b.square(tower).mul(rad, tower));
            let st = sign_repr(&t, tower);
            if sa == Ordering::Greater {
                st
            } else {
                st.reverse()
            }
        }
    }
}

impl PartialEq for Quantity {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr || self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Quantity {}

impl PartialOrd for Quantity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quantity {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.repr == other.repr {
            return Ordering::Equal;
        }
        let tw = tower::snapshot();
        sign_repr(&self.repr.sub(&other.repr), &tw)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl std::ops::$trait<&Quantity> for &Quantity {
            type Output = Quantity;
            fn $method(self, rhs: &Quantity) -> Quantity {
                let f: fn(&Quantity, &Quantity) -> Quantity = $imp;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<Quantity> for Quantity {
            type Output = Quantity;
            fn $method(self, rhs: Quantity) -> Quantity {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Quantity> for Quantity {
            type Output = Quantity;
            fn $method(self, rhs: &Quantity) -> Quantity {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<Quantity> for &Quantity {
            type Output = Quantity;
            fn $method(self, rhs: Quantity) -> Quantity {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

binary_op!(Add, add, |a, b| Quantity {
    repr: a.repr.add(&b.repr),
});
binary_op!(Sub, sub, |a, b| Quantity {
    repr: a.repr.sub(&b.repr),
});
binary_op!(Mul, mul, |a, b| {
    let tw = tower::snapshot();
    Quantity {
        repr: a.repr.mul(&b.repr, &tw),
    }
});
binary_op!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero quantity"));

impl std::ops::Neg for &Quantity {
    type Output = Quantity;
    fn neg(self) -> Quantity {
        Quantity {
            repr: self.repr.neg(),
        }
    }
}

impl std::ops::Neg for Quantity {
    type Output = Quantity;
    fn neg(self) -> Quantity {
        -&self
    }
}

impl std::iter::Sum for Quantity {
    fn sum<I: Iterator<Item = Quantity>>(iter: I) -> Quantity {
        iter.fold(Quantity::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Quantity {
    fn from(n: i64) -> Quantity {
        Quantity::from_int(n)
    }
}

impl std::str::FromStr for Quantity {
    type Err = LiteralError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_literal(s)
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tw = tower::snapshot();
        write!(f, "{}", parse::print_repr(&self.repr, &tw))
    }
}

impl std::fmt::Debug for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Quantity({self})")
    }
}

// Arc-based sharing keeps clones cheap even for deep trees.
const _: () = {
    fn assert_send_sync<T: Send + Sync>() {}
    fn check() {
        assert_send_sync::<Quantity>();
        let _ = Arc::new(Quantity::zero());
    }
    let _ = check;
};
