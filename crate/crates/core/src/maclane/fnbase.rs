//! The rational function field Q(x), valued by a finite valuation from the
//! x-side tree, as a base for valuation chains in y.
//!
//! For a finite chain v on Q[x] the residue field of the induced valuation
//! on Q(x) is k(t) for the last residue field k of v and t the image of the
//! standard monomial witness; elements move across via `reduce_elt` and
//! `lift_elt` on the chain.

use super::{MacVal, QBase, ValuedBase};
use crate::base::field::QQ;
use crate::base::rat::ExtRat;
use crate::base::ratfun::{RatFunc, RatFuncField};
use crate::base::resfield::{REl, RField};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FnBase {
    v: MacVal<QBase>,
    fun: RatFuncField<QQ>,
    /// Last residue field of v (a finite field).
    kn: RField,
    /// Residue field of Q(x) at v: k_n(t).
    rf: RField,
}

impl FnBase {
    pub fn new(v: MacVal<QBase>) -> Result<FnBase> {
        let kn = v.res_field_at(v.nlevels()).clone();
        let fq = match &kn {
            RField::FF(f) => f.clone(),
            _ => {
                return Err(Error::unsupported(
                    "function-field base needs a finite last residue field",
                ))
            }
        };
        Ok(FnBase {
            v,
            fun: RatFuncField::new(QQ),
            kn,
            rf: RField::RF(RatFuncField::new(fq)),
        })
    }

    /// The underlying valuation on Q[x].
    pub fn xval(&self) -> &MacVal<QBase> {
        &self.v
    }
}

impl ValuedBase for FnBase {
    type CF = RatFuncField<QQ>;

    fn cfield(&self) -> &RatFuncField<QQ> {
        &self.fun
    }

    fn res_field(&self) -> &RField {
        &self.rf
    }

    fn gdenom0(&self) -> u64 {
        self.v.gdenom()
    }

    fn val(&self, a: &RatFunc<QQ>) -> ExtRat {
        self.v.value_quot(&a.num, &a.den)
    }

    fn uniformizer(&self) -> RatFunc<QQ> {
        let (num, den) = self.v.uniformizer_elt();
        self.fun.quot(&num, &den)
    }

    fn reduce(&self, a: &RatFunc<QQ>) -> REl {
        let r = self.v.reduce_elt(&a.num, &a.den);
        REl::RF(RatFunc {
            num: self.kn.poly_to_ff(&r.num),
            den: self.kn.poly_to_ff(&r.den),
        })
    }

    fn lift(&self, r: &REl) -> RatFunc<QQ> {
        let rf = match r {
            REl::RF(rf) => rf,
            _ => panic!("residue element does not belong to k(t)"),
        };
        let up = RatFunc {
            num: self.kn.poly_from_ff(&rf.num),
            den: self.kn.poly_from_ff(&rf.den),
        };
        let (num, den) = self.v.lift_elt(&up);
        self.fun.quot(&num, &den)
    }

    fn var(&self) -> &'static str {
        "y"
    }

    fn descr(&self) -> String {
        format!("Q(x) at {}", self.v.descr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::field::Field;
    use crate::base::poly::{Poly, QPoly};
    use crate::base::rat::{rat, rat_i64};
    use crate::maclane::tests::{q2, q3};
    use crate::maclane::gauss;

    #[test]
    fn base_ops_over_function_field() {
        let fb = FnBase::new(gauss(q2())).unwrap();
        let ff = fb.cfield().clone();
        // val((x^2+4)/2) = min(0, 2) - 1 = -1.
        let a = ff.quot(&QPoly::from_i64s(&[4, 0, 1]), &QPoly::from_i64s(&[2]));
        assert_eq!(fb.val(&a), ExtRat::Fin(rat_i64(-1)));
        // The uniformizer of the Gauss point is 2.
        let u = fb.uniformizer();
        assert_eq!(fb.val(&u), ExtRat::Fin(rat_i64(1)));
        // red((x+3)/(x+1)) = (t+1)/(t+1) = 1.
        let b = ff.quot(&QPoly::from_i64s(&[3, 1]), &QPoly::from_i64s(&[1, 1]));
        let r = fb.reduce(&b);
        let k = fb.res_field().clone();
        assert!(k.is_zero(&k.sub(&r, &k.one())));
        // lift ∘ reduce preserves the reduction and has value 0.
        let l = fb.lift(&r);
        assert_eq!(fb.val(&l), ExtRat::zero());
        let r2 = fb.reduce(&l);
        assert!(k.is_zero(&k.sub(&r, &r2)));
    }

    #[test]
    fn chains_over_function_field() {
        let fb = FnBase::new(gauss(q2())).unwrap();
        let w0 = gauss(fb);
        let ff = w0.cf().clone();
        // y^2 + x/2 at the Gauss point of the y-line: min(0, -1) = -1.
        let f = Poly::from_coeffs(
            &ff,
            vec![
                ff.quot(&QPoly::from_i64s(&[0, 1]), &QPoly::from_i64s(&[2])),
                ff.zero(),
                ff.one(),
            ],
        );
        assert_eq!(w0.value(&f), ExtRat::Fin(rat_i64(-1)));
        // Augmenting in y: [v0, v(y)=1/2] gives value min(1, -1) = -1.
        let w1 = w0
            .augment(&Poly::x(&ff), &ExtRat::Fin(rat(1, 2)))
            .unwrap()
            .fin();
        assert_eq!(w1.descr(), "[v0, v(y)=1/2]");
        assert_eq!(w1.value(&f), ExtRat::Fin(rat_i64(-1)));
        assert_eq!(w1.value(&Poly::x(&ff)), ExtRat::Fin(rat(1, 2)));
        // A residue field over a deeper x-side chain is still reachable.
        let v1 = gauss(q3())
            .augment(&QPoly::from_i64s(&[0, 1]), &ExtRat::Fin(rat_i64(2)))
            .unwrap()
            .fin();
        let fb3 = FnBase::new(v1).unwrap();
        assert_eq!(fb3.gdenom0(), 1);
    }
}
