//! Rational function fields F(t): quotients of polynomials over a field,
//! kept in reduced form with monic denominator.

use super::field::Field;
use super::poly::Poly;

#[derive(Debug, Clone)]
pub struct RatFunc<F: Field> {
    pub num: Poly<F>,
    pub den: Poly<F>,
}

#[derive(Debug, Clone)]
pub struct RatFuncField<F: Field> {
    pub coeff: F,
}

impl<F: Field> RatFuncField<F> {
    pub fn new(coeff: F) -> Self {
        RatFuncField { coeff }
    }

    fn reduce(&self, num: Poly<F>, den: Poly<F>) -> RatFunc<F> {
        let f = &self.coeff;
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(f),
            };
        }
        let g = Poly::gcd(f, &num, &den);
        let (num, den) = if g.deg() > 0 {
            (Poly::divmod(f, &num, &g).0, Poly::divmod(f, &den, &g).0)
        } else {
            (num, den)
        };
        // Make the denominator monic.
        let lc = den.lc(f);
        let inv = f.inv(&lc);
        RatFunc {
            num: Poly::scale(f, &num, &inv),
            den: Poly::scale(f, &den, &inv),
        }
    }

    pub fn from_poly(&self, p: Poly<F>) -> RatFunc<F> {
        RatFunc {
            num: p,
            den: Poly::one(&self.coeff),
        }
    }

    pub fn gen(&self) -> RatFunc<F> {
        self.from_poly(Poly::x(&self.coeff))
    }

    pub fn quot(&self, num: &Poly<F>, den: &Poly<F>) -> RatFunc<F> {
        self.reduce(num.clone(), den.clone())
    }

    /// True when the element is a polynomial (denominator 1).
    pub fn is_poly(&self, a: &RatFunc<F>) -> bool {
        a.den.deg() == 0
    }
}

impl<F: Field> Field for RatFuncField<F> {
    type El = RatFunc<F>;

    fn zero(&self) -> RatFunc<F> {
        self.from_poly(Poly::zero())
    }
    fn one(&self) -> RatFunc<F> {
        self.from_poly(Poly::one(&self.coeff))
    }
    fn add(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        let f = &self.coeff;
        let num = Poly::add(
            f,
            &Poly::mul(f, &a.num, &b.den),
            &Poly::mul(f, &b.num, &a.den),
        );
        let den = Poly::mul(f, &a.den, &b.den);
        self.reduce(num, den)
    }
    fn neg(&self, a: &RatFunc<F>) -> RatFunc<F> {
        RatFunc {
            num: Poly::neg(&self.coeff, &a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        let f = &self.coeff;
        let num = Poly::mul(f, &a.num, &b.num);
        let den = Poly::mul(f, &a.den, &b.den);
        self.reduce(num, den)
    }
    fn inv(&self, a: &RatFunc<F>) -> RatFunc<F> {
        assert!(!a.num.is_zero(), "inverse of zero rational function");
        self.reduce(a.den.clone(), a.num.clone())
    }
    fn is_zero(&self, a: &RatFunc<F>) -> bool {
        a.num.is_zero()
    }
    fn eq(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> bool {
        let f = &self.coeff;
        Poly::eq(
            f,
            &Poly::mul(f, &a.num, &b.den),
            &Poly::mul(f, &b.num, &a.den),
        )
    }
    fn from_i64(&self, n: i64) -> RatFunc<F> {
        self.from_poly(Poly::constant(&self.coeff, self.coeff.from_i64(n)))
    }
    fn fmt_el(&self, a: &RatFunc<F>) -> String {
        if a.den.deg() == 0 {
            a.num.fmt_with(&self.coeff, "t")
        } else {
            format!(
                "({})/({})",
                a.num.fmt_with(&self.coeff, "t"),
                a.den.fmt_with(&self.coeff, "t")
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::finite::Fq;

    #[test]
    fn ratfunc_arithmetic() {
        let f3 = Fq::prime(3);
        let rf = RatFuncField::new(f3.clone());
        let t = rf.gen();
        // 1/t + 1/(t+1) = (2t+1)/(t^2+t)
        let a = rf.inv(&t);
        let b = rf.inv(&rf.add(&t, &rf.one()));
        let s = rf.add(&a, &b);
        let expect = rf.quot(
            &Poly::from_coeffs(&f3, vec![f3.from_i64(1), f3.from_i64(2)]),
            &Poly::from_coeffs(&f3, vec![f3.zero(), f3.one(), f3.one()]),
        );
        assert!(rf.eq(&s, &expect));
        // Reduction: (t^2-1)/(t-1) = t+1
        let num = Poly::from_coeffs(&f3, vec![f3.from_i64(-1), f3.zero(), f3.one()]);
        let den = Poly::from_coeffs(&f3, vec![f3.from_i64(-1), f3.one()]);
        let q = rf.quot(&num, &den);
        assert!(rf.is_poly(&q));
        assert_eq!(q.num.deg(), 1);
        // Field axioms on a sample: (a+b)*c = a*c + b*c
        let c = rf.mul(&t, &t);
        let lhs = rf.mul(&rf.add(&a, &b), &c);
        let rhs = rf.add(&rf.mul(&a, &c), &rf.mul(&b, &c));
        assert!(rf.eq(&lhs, &rhs));
    }

    #[test]
    fn denominator_kept_monic() {
        let f5 = Fq::prime(5);
        let rf = RatFuncField::new(f5.clone());
        let num = Poly::constant(&f5, f5.from_i64(1));
        let den = Poly::from_coeffs(&f5, vec![f5.from_i64(1), f5.from_i64(2)]);
        let q = rf.quot(&num, &den);
        assert!(f5.is_one(&q.den.lc(&f5)));
    }
}
