//! Normalization of monic polynomials over Q to monic p-integral form by
//! the substitution x ↦ x / p^k.

use super::field::{Field, QQ};
use super::poly::{Poly, QPoly};
use super::rat::{p_pow, valp, ExtRat, Rat};
use crate::error::{Error, Result};
use num_traits::Zero;

/// Data of the change of variable x ↦ p^{-k} x + c that turns the input
/// into a monic p-integral polynomial g (here always with c = 0).
#[derive(Debug, Clone)]
pub struct IntegralForm {
    pub k: i64,
    pub c: Rat,
    pub g: QPoly,
}

/// Rescale a monic polynomial over Q so that all coefficients become
/// p-integral: choose the least k >= 0 with p^{k deg f} f(x / p^k) integral.
pub fn make_integral(f: &QPoly, p: u64) -> Result<IntegralForm> {
    if !f.is_monic(&QQ) {
        return Err(Error::invalid("make_integral expects a monic polynomial"));
    }
    let d = f.deg();
    let mut k: i64 = 0;
    for i in 1..=d {
        let a = f.coeff(&QQ, (d - i) as usize);
        if QQ.is_zero(&a) {
            continue;
        }
        match valp(&a, p) {
            ExtRat::Inf => {}
            ExtRat::Fin(v) => {
                if v < Rat::zero() {
                    // Need k >= -v/i, integer.
                    let need = -v / Rat::from_integer(i.into());
                    let kk = need.ceil().to_integer();
                    let kk: i64 = i64::try_from(kk).map_err(|_| {
                        Error::invalid("coefficient denominators too large to normalize")
                    })?;
                    k = k.max(kk);
                }
            }
        }
    }
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        // g_j = f_j * p^{k (d - j)}
        let scale = p_pow(p, k * (d - j));
        coeffs.push(QQ.mul(&f.coeff(&QQ, j as usize), &scale));
    }
    let g = Poly::from_coeffs(&QQ, coeffs);
    debug_assert!(g.is_monic(&QQ) && g.is_p_integral(p));
    Ok(IntegralForm {
        k,
        c: Rat::zero(),
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_becomes_integral() {
        // x^2 - 1/4 at p = 2: k = 1, g = x^2 - 1.
        let f = Poly::from_coeffs(
            &QQ,
            vec![crate::base::rat::rat(-1, 4), QQ.zero(), QQ.one()],
        );
        let out = make_integral(&f, 2).unwrap();
        assert_eq!(out.k, 1);
        assert!(out.c.is_zero());
        assert!(Poly::eq(&QQ, &out.g, &QPoly::from_i64s(&[-1, 0, 1])));
    }

    #[test]
    fn already_integral_is_untouched() {
        let f = QPoly::from_i64s(&[3, -2, 0, 1]);
        let out = make_integral(&f, 5).unwrap();
        assert_eq!(out.k, 0);
        assert!(Poly::eq(&QQ, &out.g, &f));
    }

    #[test]
    fn mixed_denominators() {
        // x^3 - x/9 + 1/3 at p = 3: vals -2 (i=2), -1 (i=3):
        // k = max(ceil(2/2), ceil(1/3)) = 1; g = 27 f(x/3) = x^3 - x + 9.
        let f = Poly::from_coeffs(
            &QQ,
            vec![
                crate::base::rat::rat(1, 3),
                crate::base::rat::rat(-1, 9),
                QQ.zero(),
                QQ.one(),
            ],
        );
        let out = make_integral(&f, 3).unwrap();
        assert_eq!(out.k, 1);
        assert!(Poly::eq(&QQ, &out.g, &QPoly::from_i64s(&[9, -1, 0, 1])));
    }

    #[test]
    fn non_monic_rejected() {
        let f = QPoly::from_i64s(&[1, 2]);
        assert!(make_integral(&f, 2).is_err());
    }
}
