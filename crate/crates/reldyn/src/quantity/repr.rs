//! Canonical tree representation of field elements.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::tower::Tower;

/// An element of the current extension field.
///
/// `Ext { level, a, b }` stands for `a + b*sqrt(radicand(level))` where the
/// radicand is registered in the global tower. Invariants: `b` is never zero,
/// and `a`, `b` are built from strictly lower levels only. Because every
/// adjoined radicand is a non-square in the field below it, this form is
/// unique: equal values have identical trees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Repr {
    Rat(BigRational),
    Ext {
        level: u32,
        a: Arc<Repr>,
        b: Arc<Repr>,
    },
}

pub(crate) fn make_ext(level: u32, a: Repr, b: Repr) -> Repr {
    if b.is_zero() {
        a
    } else {
        Repr::Ext {
            level,
            a: Arc::new(a),
            b: Arc::new(b),
        }
    }
}

impl Repr {
    pub fn zero() -> Repr {
        Repr::Rat(BigRational::zero())
    }

    pub fn one() -> Repr {
        Repr::Rat(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Repr {
        Repr::Rat(r)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Repr::Rat(r) if r.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Repr::Rat(r) => Some(r),
            Repr::Ext { .. } => None,
        }
    }

    /// Set of tower levels appearing anywhere in the tree.
    pub fn support(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_support(&mut out);
        out
    }

    fn collect_support(&self, out: &mut BTreeSet<u32>) {
        if let Repr::Ext { level, a, b } = self {
            out.insert(*level);
            a.collect_support(out);
            b.collect_support(out);
        }
    }

    pub fn add(&self, rhs: &Repr) -> Repr {
        match (self, rhs) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
            (Repr::Ext { level, a, b }, Repr::Rat(_)) => {
                make_ext(*level, a.add(rhs), (**b).clone())
            }
            (Repr::Rat(_), Repr::Ext { level, a, b }) => {
                make_ext(*level, self.add(a), (**b).clone())
            }
            (
                Repr::Ext {
                    level: l1,
                    a: a1,
                    b: b1,
                },
                Repr::Ext {
                    level: l2,
                    a: a2,
                    b: b2,
                },
            ) => {
                if l1 == l2 {
                    make_ext(*l1, a1.add(a2), b1.add(b2))
                } else if l1 > l2 {
                    make_ext(*l1, a1.add(rhs), (**b1).clone())
                } else {
                    make_ext(*l2, self.add(a2), (**b2).clone())
                }
            }
        }
    }

    pub fn neg(&self) -> Repr {
        match self {
            Repr::Rat(r) => Repr::Rat(-r),
            Repr::Ext { level, a, b } => make_ext(*level, a.neg(), b.neg()),
        }
    }

    pub fn sub(&self, rhs: &Repr) -> Repr {
        self.add(&rhs.neg())
    }

    /// Multiply by a rational scalar.
    fn scale(&self, r: &BigRational) -> Repr {
        if r.is_zero() {
            return Repr::zero();
        }
        match self {
            Repr::Rat(x) => Repr::Rat(x * r),
            Repr::Ext { level, a, b } => make_ext(*level, a.scale(r), b.scale(r)),
        }
    }

    pub fn mul(&self, rhs: &Repr, tower: &Tower) -> Repr {
        match (self, rhs) {
            (Repr::Rat(x), _) => rhs.scale(x),
            (_, Repr::Rat(y)) => self.scale(y),
            (
                Repr::Ext {
                    level: l1,
                    a: a1,
                    b: b1,
                },
                Repr::Ext {
                    level: l2,
                    a: a2,
                    b: b2,
                },
            ) => {
                if l1 == l2 {
                    // (a1 + b1*s)(a2 + b2*s) with s^2 = radicand
                    let rad = tower.radicand(*l1);
                    let aa = a1.mul(a2, tower).add(&b1.mul(b2, tower).mul(rad, tower));
                    let bb = a1.mul(b2, tower).add(&b1.mul(a2, tower));
                    make_ext(*l1, aa, bb)
                } else if l1 > l2 {
                    make_ext(*l1, a1.mul(rhs, tower), b1.mul(rhs, tower))
                } else {
                    make_ext(*l2, self.mul(a2, tower), self.mul(b2, tower))
                }
            }
        }
    }

    /// Multiplicative inverse via conjugation. Returns `None` on a zero
    /// denominator, which for a canonical nonzero input cannot happen while
    /// the tower levels stay independent.
    pub fn inv(&self, tower: &Tower) -> Option<Repr> {
        match self {
            Repr::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Repr::Rat(r.recip()))
                }
            }
            Repr::Ext { level, a, b } => {
                let rad = tower.radicand(*level);
                let norm = a.mul(a, tower).sub(&b.mul(b, tower).mul(rad, tower));
                let norm_inv = norm.inv(tower)?;
                Some(make_ext(
                    *level,
                    a.mul(&norm_inv, tower),
                    b.neg().mul(&norm_inv, tower),
                ))
            }
        }
    }

    pub fn square(&self, tower: &Tower) -> Repr {
        self.mul(self, tower)
    }

    pub fn int(n: i64) -> Repr {
        Repr::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Repr {
        Repr::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}
