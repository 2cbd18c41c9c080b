//! The field abstraction every residue computation is generic over.
//!
//! Fields are passed as explicit handles (`&F`) because most of ours carry
//! runtime data (a characteristic, a modulus, a tower). Elements are plain
//! data with no back-pointer to their field.

use super::rat::Rat;
use num_traits::{One, Zero};
use std::fmt::Debug;

pub trait Field: Clone + Debug {
    type El: Clone + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Multiplicative inverse; panics on zero (callers guard).
    fn inv(&self, a: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn eq(&self, a: &Self::El, b: &Self::El) -> bool;
    fn from_i64(&self, n: i64) -> Self::El;
    fn fmt_el(&self, a: &Self::El) -> String;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }
    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }
    fn is_one(&self, a: &Self::El) -> bool {
        self.eq(a, &self.one())
    }
    /// a^n for any integer n (negative through the inverse).
    fn pow(&self, a: &Self::El, n: i64) -> Self::El {
        if n < 0 {
            return self.pow(&self.inv(a), -n);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QQ;

impl Field for QQ {
    type El = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Rat {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn eq(&self, a: &Rat, b: &Rat) -> bool {
        a == b
    }
    fn from_i64(&self, n: i64) -> Rat {
        super::rat::rat_i64(n)
    }
    fn fmt_el(&self, a: &Rat) -> String {
        super::rat::fmt_rat(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::rat::rat;

    #[test]
    fn qq_field_ops() {
        let f = QQ;
        let a = rat(3, 4);
        let b = rat(-2, 5);
        assert_eq!(f.add(&a, &b), rat(7, 20));
        assert_eq!(f.mul(&a, &b), rat(-3, 10));
        assert_eq!(f.div(&a, &b), rat(-15, 8));
        assert_eq!(f.pow(&a, 3), rat(27, 64));
        assert_eq!(f.pow(&a, -2), rat(16, 9));
        assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
        assert_eq!(f.fmt_el(&rat(7, 2)), "7/2");
    }
}
