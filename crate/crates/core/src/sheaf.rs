//! Order of vanishing of dx along the vertical components of a model of the
//! projective line.
//!
//! Each finite node v gets a defining system (t1, t2): a uniformizer t1 for
//! v presented in Q(x), and a value-0 function t2 whose reduction generates
//! the residue function field. Eliminating x between them yields the
//! defining polynomial F(T1, T2), the plane equation of the component, and
//! the order of dx falls out of implicit differentiation: on F = 0,
//! F_{T1}·dt1 + F_{T2}·dt2 = 0, so v(dx) = v(F_{T2}(t1,t2)) − v(dt1/dx) and
//! symmetrically with the roles of the variables swapped.

use crate::base::field::{Field, QQ};
use crate::base::poly::{Poly, QPoly};
use crate::base::rat::{ExtRat, Rat};
use crate::base::ratfun::{RatFunc, RatFuncField};
use crate::error::{Error, Result};
use crate::maclane::{MacVal, QBase};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rational functions in x over Q.
pub type QRF = RatFunc<QQ>;

/// The field handle for [`QRF`] values.
pub fn qrf_field() -> RatFuncField<QQ> {
    RatFuncField::new(QQ)
}

/// A bivariate polynomial over Q in the variables T1, T2: `c[k]` is the
/// coefficient of T2^k, itself a polynomial in T1.
#[derive(Debug, Clone)]
pub struct BiPoly {
    pub c: Vec<QPoly>,
}

impl BiPoly {
    pub fn new(c: Vec<QPoly>) -> BiPoly {
        let mut c = c;
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        BiPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_t2(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn deg_t1(&self) -> i64 {
        self.c.iter().map(|p| p.deg()).max().unwrap_or(-1)
    }

    pub fn eq(&self, other: &BiPoly) -> bool {
        self.c.len() == other.c.len()
            && self
                .c
                .iter()
                .zip(&other.c)
                .all(|(a, b)| Poly::eq(&QQ, a, b))
    }

    pub fn d_t1(&self) -> BiPoly {
        BiPoly::new(self.c.iter().map(|p| Poly::derivative(&QQ, p)).collect())
    }

    pub fn d_t2(&self) -> BiPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, p)| Poly::scale(&QQ, p, &Rat::from_integer(BigInt::from(k))))
            .collect();
        BiPoly::new(c)
    }

    /// Evaluate at a pair of rational functions in x.
    pub fn eval(&self, t1: &QRF, t2: &QRF) -> QRF {
        let rf = qrf_field();
        let mut acc = rf.zero();
        for ck in self.c.iter().rev() {
            acc = rf.add(&rf.mul(&acc, t2), &qpoly_at(&rf, ck, t1));
        }
        acc
    }

    /// Scale to integral coprime coefficients and fix the sign so the
    /// lexicographically leading term (T1 before T2) is positive.
    pub fn normalize(self) -> BiPoly {
        let b = BiPoly::new(self.c);
        if b.is_zero() {
            return b;
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for p in &b.c {
            for q in &p.c {
                if q.is_zero() {
                    continue;
                }
                den_lcm = den_lcm.lcm(q.denom());
                num_gcd = num_gcd.gcd(q.numer());
            }
        }
        let scale = Rat::new(den_lcm, num_gcd);
        let mut c: Vec<QPoly> = b.c.iter().map(|p| Poly::scale(&QQ, p, &scale)).collect();
        let d1 = c.iter().map(|p| p.deg()).max().unwrap_or(-1);
        let lead_k = (0..c.len()).rev().find(|&k| c[k].deg() == d1).unwrap();
        if c[lead_k].lc(&QQ).is_negative() {
            for p in c.iter_mut() {
                *p = Poly::neg(&QQ, p);
            }
        }
        BiPoly::new(c)
    }

    /// Render in descending graded-lexicographic term order,
    /// e.g. `T1^2 - 4*T2 + 2`.
    pub fn fmt(&self) -> String {
        let mut terms: Vec<(i64, i64, Rat)> = Vec::new();
        for (j, p) in self.c.iter().enumerate() {
            for (i, q) in p.c.iter().enumerate() {
                if !q.is_zero() {
                    terms.push((i as i64, j as i64, q.clone()));
                }
            }
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        terms.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let mut out = String::new();
        for (i, j, q) in terms {
            let neg = q.is_negative();
            let mag = if neg { -&q } else { q };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(crate::base::rat::fmt_rat(&mag));
            }
            if i > 0 {
                parts.push(if i == 1 { "T1".into() } else { format!("T1^{i}") });
            }
            if j > 0 {
                parts.push(if j == 1 { "T2".into() } else { format!("T2^{j}") });
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

/// Evaluate a univariate rational polynomial at a rational function.
fn qpoly_at(rf: &RatFuncField<QQ>, f: &QPoly, a: &QRF) -> QRF {
    let mut acc = rf.zero();
    for c in f.c.iter().rev() {
        let cv = rf.from_poly(Poly::constant(&QQ, c.clone()));
        acc = rf.add(&rf.mul(&acc, a), &cv);
    }
    acc
}

/// Derivative d/dx of a rational function.
pub fn rf_dx(a: &QRF) -> QRF {
    let rf = qrf_field();
    let num = Poly::sub(
        &QQ,
        &Poly::mul(&QQ, &Poly::derivative(&QQ, &a.num), &a.den),
        &Poly::mul(&QQ, &a.num, &Poly::derivative(&QQ, &a.den)),
    );
    let den = Poly::mul(&QQ, &a.den, &a.den);
    rf.quot(&num, &den)
}

/// Local coordinates for the component of a node: a uniformizer t1, a
/// residue generator t2, and the plane relation F between them.
#[derive(Debug, Clone)]
pub struct DefiningSystem {
    pub v: MacVal<QBase>,
    pub t1: QRF,
    pub t2: QRF,
    pub f: BiPoly,
}

/// The value of a rational function under v (finite unless the function
/// is 0).
pub fn value_rf(v: &MacVal<QBase>, a: &QRF) -> Result<Rat> {
    match v.value_quot(&a.num, &a.den) {
        ExtRat::Fin(r) => Ok(r),
        ExtRat::Inf => Err(Error::internal(
            "a nonzero rational function took an infinite value",
        )),
    }
}

/// Build a defining system from a given coordinate pair, validating the
/// conditions and computing the relation between them.
///
/// Besides having value 1/e, the uniformizer must be a constant multiple of
/// the standard uniformizer monomial of v.  This is not cosmetic: for other
/// elements of value 1/e — a unit multiple by a value-0 function, or even a
/// different Laurent monomial in the chain keys of the right value — the
/// plane model can be singular at the point below the component, and the
/// differential order formula then silently gives a wrong answer.
pub fn defining_system_from(v: &MacVal<QBase>, t1: QRF, t2: QRF) -> Result<DefiningSystem> {
    let rf = qrf_field();
    if rf.is_zero(&t1) || rf.is_zero(&t2) {
        return Err(Error::invalid("defining-system coordinates must be nonzero"));
    }
    let want = Rat::new(BigInt::one(), BigInt::from(v.gdenom()));
    let got = value_rf(v, &t1)?;
    if got != want {
        return Err(Error::invalid(format!(
            "t1 must be a uniformizer of value {}, got value {}",
            crate::base::rat::fmt_rat(&want),
            crate::base::rat::fmt_rat(&got)
        )));
    }
    let (n1, d1) = v.uniformizer_elt();
    let ratio = rf.mul(&t1, &rf.quot(&d1, &n1));
    if ratio.num.deg() != 0 || ratio.den.deg() != 0 {
        return Err(Error::invalid(
            "t1 must be a constant multiple of the standard uniformizer monomial",
        ));
    }
    let got = value_rf(v, &t2)?;
    if !got.is_zero() {
        return Err(Error::invalid(format!(
            "t2 must have value 0, got value {}",
            crate::base::rat::fmt_rat(&got)
        )));
    }
    let red = v.reduce_elt(&t2.num, &t2.den);
    if red.num.deg().max(red.den.deg()) != 1 {
        return Err(Error::invalid(
            "the reduction of t2 must generate the residue function field",
        ));
    }
    let f = defining_polynomial(&t1, &t2)?;
    Ok(DefiningSystem {
        v: v.clone(),
        t1,
        t2,
        f,
    })
}

/// The canonical defining system of a node: the standard-monomial
/// uniformizer and the residue-ring generator witness.
pub fn defining_system(v: &MacVal<QBase>) -> Result<DefiningSystem> {
    let rf = qrf_field();
    let (n1, d1) = v.uniformizer_elt();
    let rr = v.residue_ring();
    defining_system_from(v, rf.quot(&n1, &d1), rf.quot(&rr.witness_num, &rr.witness_den))
}

/// The defining polynomial: the primitive integral irreducible relation
/// F(T1, T2) with F(t1, t2) = 0, computed by eliminating x with a resultant
/// and discarding multiplicity.
pub fn defining_polynomial(t1: &QRF, t2: &QRF) -> Result<BiPoly> {
    let t2_const = t2.num.deg() <= 0 && t2.den.deg() == 0;
    if t2_const {
        return Err(Error::invalid(
            "t2 must be a nonconstant function of x",
        ));
    }
    if t1.num.deg() <= 0 && t1.den.deg() == 0 {
        // t1 is the constant a: the relation is T1 - a.
        let a = QQ.div(&t1.num.coeff(&QQ, 0), &t1.den.coeff(&QQ, 0));
        let f = BiPoly::new(vec![QPoly::from_coeffs(&QQ, vec![QQ.neg(&a), QQ.one()])])
            .normalize();
        check_vanishes(&f, t1, t2)?;
        return Ok(f);
    }
    // Work in Q(T1)(T2) and eliminate x between
    //   G1 = T1·den1(x) − num1(x)   and   G2 = T2·den2(x) − num2(x).
    let qt1 = RatFuncField::new(QQ);
    let kk = RatFuncField::new(qt1.clone());
    let c1 = |a: &Rat, b: &Rat| -> RatFunc<RatFuncField<QQ>> {
        // a + b·T1 as a constant (in T2) of Q(T1)(T2)
        kk.from_poly(Poly::constant(
            &qt1,
            qt1.from_poly(Poly::from_coeffs(&QQ, vec![a.clone(), b.clone()])),
        ))
    };
    let c2 = |a: &Rat, b: &Rat| -> RatFunc<RatFuncField<QQ>> {
        // a + b·T2
        kk.from_poly(Poly::from_coeffs(
            &qt1,
            vec![
                qt1.from_poly(Poly::constant(&QQ, a.clone())),
                qt1.from_poly(Poly::constant(&QQ, b.clone())),
            ],
        ))
    };
    let dx1 = t1.num.deg().max(t1.den.deg()) as usize;
    let dx2 = t2.num.deg().max(t2.den.deg()) as usize;
    let g1 = Poly::from_coeffs(
        &kk,
        (0..=dx1)
            .map(|j| c1(&QQ.neg(&t1.num.coeff(&QQ, j)), &t1.den.coeff(&QQ, j)))
            .collect(),
    );
    let g2 = Poly::from_coeffs(
        &kk,
        (0..=dx2)
            .map(|j| c2(&QQ.neg(&t2.num.coeff(&QQ, j)), &t2.den.coeff(&QQ, j)))
            .collect(),
    );
    let r = Poly::resultant(&kk, &g1, &g2);
    if kk.is_zero(&r) {
        return Err(Error::internal(
            "elimination between t1 and t2 degenerated to zero",
        ));
    }
    if r.den.deg() != 0 {
        return Err(Error::internal(
            "the resultant of polynomial data must be a polynomial",
        ));
    }
    // The resultant is c(T1)·F^d: the T2-squarefree part over Q(T1) strips
    // both the multiplicity d and the T1-only content (a unit there).
    let rp = &r.num;
    let drp = Poly::derivative(&qt1, rp);
    let sq = if drp.is_zero() {
        rp.clone()
    } else {
        let g = Poly::gcd(&qt1, rp, &drp);
        Poly::divmod(&qt1, rp, &g).0
    };
    // Clear denominators in T1, then remove the Q[T1] content.
    let mut den = Poly::one(&QQ);
    for ck in &sq.c {
        let g = Poly::gcd(&QQ, &den, &ck.den);
        den = Poly::mul(&QQ, &den, &Poly::divmod(&QQ, &ck.den, &g).0);
    }
    let mut cols: Vec<QPoly> = Vec::with_capacity(sq.c.len());
    for ck in &sq.c {
        let cleared = qt1.mul(ck, &qt1.from_poly(den.clone()));
        debug_assert_eq!(cleared.den.deg(), 0);
        cols.push(cleared.num);
    }
    let mut content = Poly::zero();
    for ck in &cols {
        if !ck.is_zero() {
            content = Poly::gcd(&QQ, &content, ck);
        }
    }
    if content.deg() > 0 {
        for ck in cols.iter_mut() {
            *ck = Poly::divmod(&QQ, ck, &content).0;
        }
    }
    let f = BiPoly::new(cols).normalize();
    if f.deg_t1() < 1 && f.deg_t2() < 1 {
        return Err(Error::internal("the eliminated relation is constant"));
    }
    check_vanishes(&f, t1, t2)?;
    Ok(f)
}

fn check_vanishes(f: &BiPoly, t1: &QRF, t2: &QRF) -> Result<()> {
    let rf = qrf_field();
    if !rf.is_zero(&f.eval(t1, t2)) {
        return Err(Error::internal(
            "the computed relation does not vanish on the defining system",
        ));
    }
    Ok(())
}

/// v(dx) computed from a specific defining system. Uses the implicit-
/// differentiation formula through whichever partial derivative of F is
/// nonzero; when both are usable the two answers are cross-checked.
pub fn order_dx_for(ds: &DefiningSystem) -> Result<Rat> {
    let rf = qrf_field();
    let mut results: Vec<Rat> = Vec::new();
    let ft2 = ds.f.d_t2();
    if !ft2.is_zero() {
        let a = ft2.eval(&ds.t1, &ds.t2);
        let d = rf_dx(&ds.t1);
        if rf.is_zero(&a) || rf.is_zero(&d) {
            return Err(Error::internal(
                "a nonzero partial derivative vanished on the defining system",
            ));
        }
        results.push(value_rf(&ds.v, &a)? - value_rf(&ds.v, &d)?);
    }
    let ft1 = ds.f.d_t1();
    if !ft1.is_zero() {
        let a = ft1.eval(&ds.t1, &ds.t2);
        let d = rf_dx(&ds.t2);
        if rf.is_zero(&a) || rf.is_zero(&d) {
            return Err(Error::internal(
                "a nonzero partial derivative vanished on the defining system",
            ));
        }
        results.push(value_rf(&ds.v, &a)? - value_rf(&ds.v, &d)?);
    }
    match results.as_slice() {
        [] => Err(Error::internal(
            "both partial derivatives of a defining polynomial vanish",
        )),
        [r] => Ok(r.clone()),
        [r, s] => {
            if r != s {
                return Err(Error::internal(format!(
                    "the two differentiation routes disagree: {} vs {}",
                    crate::base::rat::fmt_rat(r),
                    crate::base::rat::fmt_rat(s)
                )));
            }
            Ok(r.clone())
        }
        _ => unreachable!(),
    }
}

/// v(dx): the order of vanishing of dx along the component of v, a rational
/// in (1/e_v)·Z.
pub fn order_dx(v: &MacVal<QBase>) -> Result<Rat> {
    order_dx_for(&defining_system(v)?)
}
