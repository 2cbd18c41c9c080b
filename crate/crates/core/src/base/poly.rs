//! Dense univariate polynomials over any [`Field`], plus the toolkit the
//! valuation machinery needs: division with remainder, gcd, derivative,
//! resultant, squarefree test, evaluation, composition and printing.

use super::field::{Field, QQ};
use super::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending order; no trailing zeros; `c` empty means 0.
#[derive(Debug, Clone)]
pub struct Poly<F: Field> {
    pub c: Vec<F::El>,
}

pub type QPoly = Poly<QQ>;

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn from_coeffs(f: &F, c: Vec<F::El>) -> Self {
        let mut p = Poly { c };
        p.trim(f);
        p
    }

    pub fn constant(f: &F, a: F::El) -> Self {
        Poly::from_coeffs(f, vec![a])
    }

    pub fn one(f: &F) -> Self {
        Poly { c: vec![f.one()] }
    }

    /// The variable.
    pub fn x(f: &F) -> Self {
        Poly { c: vec![f.zero(), f.one()] }
    }

    /// x + a.
    pub fn x_plus(f: &F, a: F::El) -> Self {
        Poly { c: vec![a, f.one()] }
    }

    /// a * x^k.
    pub fn monomial(f: &F, a: F::El, k: usize) -> Self {
        if f.is_zero(&a) {
            return Poly::zero();
        }
        let mut c = vec![f.zero(); k + 1];
        c[k] = a;
        Poly { c }
    }

    fn trim(&mut self, f: &F) {
        while let Some(last) = self.c.last() {
            if f.is_zero(last) {
                self.c.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; -1 encodes the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn coeff(&self, f: &F, k: usize) -> F::El {
        self.c.get(k).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn lc(&self, f: &F) -> F::El {
        self.c.last().cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_monic(&self, f: &F) -> bool {
        !self.is_zero() && f.is_one(&self.lc(f))
    }

    pub fn eq(f: &F, a: &Self, b: &Self) -> bool {
        a.c.len() == b.c.len() && a.c.iter().zip(&b.c).all(|(x, y)| f.eq(x, y))
    }

    pub fn add(f: &F, a: &Self, b: &Self) -> Self {
        let n = a.c.len().max(b.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(f.add(&a.coeff(f, k), &b.coeff(f, k)));
        }
        Poly::from_coeffs(f, c)
    }

    pub fn neg(f: &F, a: &Self) -> Self {
        Poly { c: a.c.iter().map(|x| f.neg(x)).collect() }
    }

    pub fn sub(f: &F, a: &Self, b: &Self) -> Self {
        Poly::add(f, a, &Poly::neg(f, b))
    }

    pub fn mul(f: &F, a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![f.zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(x, y));
            }
        }
        Poly::from_coeffs(f, c)
    }

    pub fn scale(f: &F, a: &Self, s: &F::El) -> Self {
        Poly::from_coeffs(f, a.c.iter().map(|x| f.mul(x, s)).collect())
    }

    pub fn pow(f: &F, a: &Self, n: u64) -> Self {
        let mut acc = Poly::one(f);
        let mut base = a.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = Poly::mul(f, &acc, &base);
            }
            base = Poly::mul(f, &base, &base);
            k >>= 1;
        }
        acc
    }

    /// Division with remainder: a = q*b + r, deg r < deg b. Panics on b = 0.
    pub fn divmod(f: &F, a: &Self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let db = b.deg();
        let mut r = a.clone();
        if r.deg() < db {
            return (Poly::zero(), r);
        }
        let mut q = vec![f.zero(); (r.deg() - db + 1) as usize];
        let binv = f.inv(&b.lc(f));
        while r.deg() >= db {
            let k = (r.deg() - db) as usize;
            let coef = f.mul(&r.lc(f), &binv);
            q[k] = coef.clone();
            // r -= coef * x^k * b
            for (j, y) in b.c.iter().enumerate() {
                let idx = j + k;
                let t = f.mul(&coef, y);
                r.c[idx] = f.sub(&r.c[idx], &t);
            }
            r.trim(f);
        }
        (Poly::from_coeffs(f, q), r)
    }

    pub fn rem(f: &F, a: &Self, b: &Self) -> Self {
        Poly::divmod(f, a, b).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(f: &F, a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = Poly::rem(f, &x, &y);
            x = y;
            y = r;
        }
        x.monic(f)
    }

    /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
    pub fn xgcd(f: &F, a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = Poly::divmod(f, &r0, &r1);
            let ns = Poly::sub(f, &s0, &Poly::mul(f, &q, &s1));
            let nt = Poly::sub(f, &t0, &Poly::mul(f, &q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let linv = f.inv(&r0.lc(f));
        (
            Poly::scale(f, &r0, &linv),
            Poly::scale(f, &s0, &linv),
            Poly::scale(f, &t0, &linv),
        )
    }

    pub fn monic(&self, f: &F) -> Self {
        if self.is_zero() || f.is_one(&self.lc(f)) {
            return self.clone();
        }
        Poly::scale(f, self, &f.inv(&self.lc(f)))
    }

    pub fn derivative(f: &F, a: &Self) -> Self {
        if a.c.len() <= 1 {
            return Poly::zero();
        }
        let mut c = Vec::with_capacity(a.c.len() - 1);
        for (k, x) in a.c.iter().enumerate().skip(1) {
            c.push(f.mul(x, &f.from_i64(k as i64)));
        }
        Poly::from_coeffs(f, c)
    }

    pub fn eval(f: &F, a: &Self, x: &F::El) -> F::El {
        let mut acc = f.zero();
        for coef in a.c.iter().rev() {
            acc = f.add(&f.mul(&acc, x), coef);
        }
        acc
    }

    /// a(g(x)) by Horner on polynomials.
    pub fn compose(f: &F, a: &Self, g: &Self) -> Self {
        let mut acc = Poly::zero();
        for coef in a.c.iter().rev() {
            acc = Poly::add(f, &Poly::mul(f, &acc, g), &Poly::constant(f, coef.clone()));
        }
        acc
    }

    /// Resultant of a and b via the Euclidean recurrence.
    pub fn resultant(f: &F, a: &Self, b: &Self) -> F::El {
        let (da, db) = (a.deg(), b.deg());
        if a.is_zero() || b.is_zero() {
            return f.zero();
        }
        if db == 0 {
            return f.pow(&b.c[0], da.max(0));
        }
        if da == 0 {
            return f.pow(&a.c[0], db);
        }
        if da < db {
            let sign = if (da * db) % 2 == 1 { f.from_i64(-1) } else { f.one() };
            return f.mul(&sign, &Poly::resultant(f, b, a));
        }
        let r = Poly::rem(f, a, b);
        if r.is_zero() {
            return f.zero();
        }
        let dr = r.deg();
        let sign = if (da * db) % 2 == 1 { f.from_i64(-1) } else { f.one() };
        let lead = f.pow(&b.lc(f), da - dr);
        f.mul(&sign, &f.mul(&lead, &Poly::resultant(f, b, &r)))
    }

    /// True when gcd(a, a') is constant. Over Q this is the usual
    /// squarefreeness; over F_q callers must mind inseparability themselves.
    pub fn is_squarefree(f: &F, a: &Self) -> bool {
        if a.deg() <= 0 {
            return true;
        }
        Poly::gcd(f, a, &Poly::derivative(f, a)).deg() == 0
    }

    /// Map coefficients into another field.
    pub fn map<G: Field>(&self, g: &G, mut fun: impl FnMut(&F::El) -> G::El) -> Poly<G> {
        Poly::from_coeffs(g, self.c.iter().map(|x| fun(x)).collect())
    }

    /// Render with `var` as the variable, in descending powers,
    /// e.g. `x^2 - 2*x + 3/4`.
    pub fn fmt_with(&self, f: &F, var: &str) -> String {
        self.fmt_impl(f, var, false)
    }

    /// Compact rendering without spaces or explicit `*`, e.g. "x^2+4x+12",
    /// used inside augmentation-chain displays.
    pub fn fmt_compact(&self, f: &F, var: &str) -> String {
        self.fmt_impl(f, var, true)
    }

    fn fmt_impl(&self, f: &F, var: &str, compact: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, coef) in self.c.iter().enumerate().rev() {
            if f.is_zero(coef) {
                continue;
            }
            let s = f.fmt_el(coef);
            let (sign, mag) = match s.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", s),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else if compact {
                out.push_str(sign);
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let needs_coeff = k == 0 || mag != "1";
            // Parenthesize compound coefficients (anything with inner +/-/space).
            let atom = !mag.contains(' ')
                && !mag[1..].contains('+')
                && !mag[1..].contains('-');
            if needs_coeff {
                if atom {
                    out.push_str(&mag);
                } else {
                    out.push('(');
                    out.push_str(&mag);
                    out.push(')');
                }
            }
            if k > 0 {
                if needs_coeff && !compact {
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl QPoly {
    pub fn from_i64s(c: &[i64]) -> QPoly {
        Poly::from_coeffs(&QQ, c.iter().map(|&n| QQ.from_i64(n)).collect())
    }

    /// Content: the positive rational c with self/c integer-primitive.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for a in &self.c {
            num_gcd = num_gcd.gcd(a.numer());
            den_lcm = den_lcm.lcm(a.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let mut p = Poly::scale(&QQ, self, &c.recip());
        if p.lc(&QQ).is_negative() {
            p = Poly::neg(&QQ, &p);
        }
        p
    }

    /// All coefficients p-integral (denominators prime to p).
    pub fn is_p_integral(&self, p: u64) -> bool {
        let bp = BigInt::from(p);
        self.c.iter().all(|a| !(a.denom() % &bp).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::rat::{rat, rat_i64};

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn divmod_and_gcd() {
        let f = QQ;
        // (x^2-1) = (x+1)(x-1)
        let a = q(&[-1, 0, 1]);
        let b = q(&[1, 1]);
        let (quo, rem) = Poly::divmod(&f, &a, &b);
        assert!(Poly::eq(&f, &quo, &q(&[-1, 1])));
        assert!(rem.is_zero());
        let g = Poly::gcd(&f, &a, &q(&[-1, 1]));
        assert!(Poly::eq(&f, &g, &q(&[-1, 1])));
        // gcd of coprimes is 1
        let g2 = Poly::gcd(&f, &q(&[1, 0, 1]), &q(&[-1, 1]));
        assert_eq!(g2.deg(), 0);
    }

    #[test]
    fn xgcd_identity() {
        let f = QQ;
        let a = q(&[2, 0, 1, 3]);
        let b = q(&[-1, 4, 1]);
        let (g, s, t) = Poly::xgcd(&f, &a, &b);
        let lhs = Poly::add(&f, &Poly::mul(&f, &s, &a), &Poly::mul(&f, &t, &b));
        assert!(Poly::eq(&f, &lhs, &g));
    }

    #[test]
    fn resultant_known_values() {
        let f = QQ;
        // res(x^2+1, x-1) = 2
        assert_eq!(Poly::resultant(&f, &q(&[1, 0, 1]), &q(&[-1, 1])), rat_i64(2));
        // res(x-a, x-b) = b - a  (convention: lc(f)^deg(g) * prod g(roots of f))
        let a = q(&[-3, 1]);
        let b = q(&[-5, 1]);
        assert_eq!(Poly::resultant(&f, &a, &b), rat_i64(-2));
        // res(f,g) = 0 iff common root
        assert_eq!(Poly::resultant(&f, &q(&[-1, 0, 1]), &q(&[1, 1])), rat_i64(0));
        // discriminant-style: res(x^2-2, 2x) = (2*sqrt2)(−2*sqrt2)·1 = -8
        assert_eq!(Poly::resultant(&f, &q(&[-2, 0, 1]), &q(&[0, 2])), rat_i64(-8));
    }

    #[test]
    fn resultant_multiplicative_in_first_argument() {
        let f = QQ;
        let a = q(&[1, 2, 1, 1]);
        let b = q(&[3, 0, 2]);
        let g = q(&[-1, 1, 1]);
        let ab = Poly::mul(&f, &a, &b);
        let lhs = Poly::resultant(&f, &ab, &g);
        let rhs = QQ.mul(&Poly::resultant(&f, &a, &g), &Poly::resultant(&f, &b, &g));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn squarefree_and_derivative() {
        let f = QQ;
        assert!(Poly::is_squarefree(&f, &q(&[-1, 0, 1])));
        let sq = Poly::mul(&f, &q(&[1, 1]), &q(&[1, 1]));
        assert!(!Poly::is_squarefree(&f, &sq));
        assert!(Poly::eq(&f, &Poly::derivative(&f, &q(&[5, 3, 2])), &q(&[3, 4])));
    }

    #[test]
    fn content_and_primitive() {
        let p = Poly::from_coeffs(&QQ, vec![rat(4, 3), rat(-2, 9)]);
        assert_eq!(p.content(), rat(2, 9));
        // p / (2/9) = -x + 6; sign flip makes the leading coefficient positive.
        let prim = p.primitive();
        assert!(Poly::eq(&QQ, &prim, &q(&[-6, 1])));
        assert!(q(&[1, 0, 2]).is_p_integral(3));
        assert!(!Poly::from_coeffs(&QQ, vec![rat(1, 3)]).is_p_integral(3));
    }

    #[test]
    fn display_format() {
        let f = QQ;
        let p = Poly::from_coeffs(&f, vec![rat(3, 4), rat_i64(-2), rat_i64(1)]);
        assert_eq!(p.fmt_with(&f, "x"), "x^2 - 2*x + 3/4");
        assert_eq!(q(&[0, 1]).fmt_with(&f, "x"), "x");
        assert_eq!(q(&[-16, 0, 0, 1]).fmt_with(&f, "x"), "x^3 - 16");
        assert_eq!(QPoly::zero().fmt_with(&f, "x"), "0");
    }

    #[test]
    fn compose_and_eval() {
        let f = QQ;
        let p = q(&[1, 0, 1]); // x^2+1
        let g = q(&[-1, 1]); // x-1
        let c = Poly::compose(&f, &p, &g); // (x-1)^2+1 = x^2-2x+2
        assert!(Poly::eq(&f, &c, &q(&[2, -2, 1])));
        assert_eq!(Poly::eval(&f, &p, &rat_i64(3)), rat_i64(10));
    }
}
