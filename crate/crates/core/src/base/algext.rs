//! Simple algebraic extensions K[T]/(m(T)) of an arbitrary field, with
//! elements stored as coefficient vectors of length deg m.

use super::field::Field;
use super::poly::Poly;

#[derive(Debug, Clone)]
pub struct AlgExtField<F: Field> {
    pub base: F,
    /// Monic irreducible modulus over the base field.
    pub modulus: Poly<F>,
}

impl<F: Field> AlgExtField<F> {
    pub fn new(base: F, modulus: Poly<F>) -> Self {
        assert!(modulus.deg() >= 1, "extension modulus must be non-constant");
        let modulus = modulus.monic(&base);
        AlgExtField { base, modulus }
    }

    pub fn deg(&self) -> usize {
        self.modulus.deg() as usize
    }

    /// The class of T.
    pub fn gen(&self) -> Vec<F::El> {
        let mut v = self.zero();
        if self.deg() > 1 {
            v[1] = self.base.one();
        } else {
            // T ≡ -m_0 when the modulus is linear.
            v[0] = self.base.neg(&self.modulus.c[0]);
        }
        v
    }

    pub fn from_base(&self, a: F::El) -> Vec<F::El> {
        let mut v = self.zero();
        v[0] = a;
        v
    }

    /// Reduce a polynomial in T to its class, as a coefficient vector.
    pub fn from_poly(&self, p: &Poly<F>) -> Vec<F::El> {
        let r = Poly::rem(&self.base, p, &self.modulus);
        let mut v = r.c.clone();
        v.resize(self.deg(), self.base.zero());
        v
    }

    pub fn to_poly(&self, a: &Vec<F::El>) -> Poly<F> {
        Poly::from_coeffs(&self.base, a.clone())
    }
}

impl<F: Field> Field for AlgExtField<F> {
    type El = Vec<F::El>;

    fn zero(&self) -> Vec<F::El> {
        vec![self.base.zero(); self.deg()]
    }
    fn one(&self) -> Vec<F::El> {
        self.from_base(self.base.one())
    }
    fn add(&self, a: &Vec<F::El>, b: &Vec<F::El>) -> Vec<F::El> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<F::El>) -> Vec<F::El> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<F::El>, b: &Vec<F::El>) -> Vec<F::El> {
        let pa = self.to_poly(a);
        let pb = self.to_poly(b);
        self.from_poly(&Poly::mul(&self.base, &pa, &pb))
    }
    fn inv(&self, a: &Vec<F::El>) -> Vec<F::El> {
        assert!(!self.is_zero(a), "inverse of zero in extension field");
        let pa = self.to_poly(a);
        let (g, s, _) = Poly::xgcd(&self.base, &pa, &self.modulus);
        assert!(
            g.deg() == 0,
            "modulus not irreducible: gcd with element is non-constant"
        );
        // g is monic hence 1; s*a ≡ 1 (mod m).
        self.from_poly(&s)
    }
    fn is_zero(&self, a: &Vec<F::El>) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn eq(&self, a: &Vec<F::El>, b: &Vec<F::El>) -> bool {
        a.iter().zip(b).all(|(x, y)| self.base.eq(x, y))
    }
    fn from_i64(&self, n: i64) -> Vec<F::El> {
        self.from_base(self.base.from_i64(n))
    }
    fn fmt_el(&self, a: &Vec<F::El>) -> String {
        let mut parts = Vec::new();
        for (k, c) in a.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let cs = self.base.fmt_el(c);
            let var = match k {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{k}"),
            };
            let wrapped = if k > 0 && (cs.contains(' ') || cs.contains('+')) {
                format!("({cs})")
            } else {
                cs.clone()
            };
            let part = if k == 0 {
                wrapped
            } else if cs == "1" {
                var
            } else {
                format!("{wrapped}*{var}")
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}
