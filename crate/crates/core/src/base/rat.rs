//! Exact rationals plus a formal +infinity, and p-adic valuations of
//! rationals. The infinity value is what a pseudovaluation takes on its
//! kernel; arithmetic with it follows the min-plus conventions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// A rational number or +infinity. Totally ordered with `Inf` on top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRat {
    Fin(Rat),
    Inf,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Fin(Rat::zero())
    }
    pub fn is_inf(&self) -> bool {
        matches!(self, ExtRat::Inf)
    }
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Fin(r) => Some(r),
            ExtRat::Inf => None,
        }
    }
    /// Unwraps a finite value; panics on infinity (internal misuse).
    pub fn fin(&self) -> Rat {
        match self {
            ExtRat::Fin(r) => r.clone(),
            ExtRat::Inf => panic!("expected a finite value, found infinity"),
        }
    }
    pub fn min(self, other: ExtRat) -> ExtRat {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Fin(r)
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Inf, ExtRat::Inf) => Ordering::Equal,
            (ExtRat::Inf, _) => Ordering::Greater,
            (_, ExtRat::Inf) => Ordering::Less,
            (ExtRat::Fin(a), ExtRat::Fin(b)) => a.cmp(b),
        }
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a + b),
            _ => ExtRat::Inf,
        }
    }
}

impl Sub for ExtRat {
    type Output = ExtRat;
    /// Only finite − finite and ∞ − finite are meaningful; ∞ − ∞ panics.
    fn sub(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a - b),
            (ExtRat::Inf, ExtRat::Fin(_)) => ExtRat::Inf,
            _ => panic!("infinity minus infinity"),
        }
    }
}

impl Neg for ExtRat {
    type Output = ExtRat;
    fn neg(self) -> ExtRat {
        match self {
            ExtRat::Fin(a) => ExtRat::Fin(-a),
            ExtRat::Inf => panic!("negating infinity"),
        }
    }
}

impl Mul<i64> for ExtRat {
    type Output = ExtRat;
    fn mul(self, k: i64) -> ExtRat {
        match self {
            ExtRat::Fin(a) => ExtRat::Fin(a * rat_i64(k)),
            ExtRat::Inf => {
                assert!(k > 0, "infinity times a non-positive integer");
                ExtRat::Inf
            }
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Inf => write!(f, "inf"),
            ExtRat::Fin(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

/// Renders a rational as `a` or `a/b`, never as a decimal.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The p-adic valuation of a rational; `Inf` on zero.
pub fn valp(r: &Rat, p: u64) -> ExtRat {
    if r.is_zero() {
        return ExtRat::Inf;
    }
    let p = BigInt::from(p);
    let mut v: i64 = 0;
    let mut n = r.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = r.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    ExtRat::Fin(rat_i64(v))
}

/// p^k as a rational, for any integer k.
pub fn p_pow(p: u64, k: i64) -> Rat {
    let b = BigInt::from(p);
    if k >= 0 {
        Rat::from_integer(b.pow(k as u32))
    } else {
        Rat::new(BigInt::one(), b.pow((-k) as u32))
    }
}
