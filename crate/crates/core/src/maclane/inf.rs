//! Order and infima on points of the valuation tree.
//!
//! A tree point is either a finite valuation or an infinite branch (an exact
//! factor chain or a refinable approximant). The partial order is tested
//! through values on chain keys; the infimum of two incomparable points is
//! the minimal element of the discoid D(φ, t) for a separating key φ of one
//! side and t := the other side's value on it.

use super::approx::{Approximant, InfPoint, TypeIVal};
use super::{MacVal, ValuedBase};
use crate::base::field::Field;
use crate::base::poly::Poly;
use crate::base::rat::ExtRat;
use crate::error::{Error, Result};

/// A point of the valuation tree.
#[derive(Debug, Clone)]
pub enum TreePoint<B: ValuedBase> {
    Fin(MacVal<B>),
    Inf(Approximant<B>),
}

impl<B: ValuedBase> TreePoint<B> {
    pub fn value(&self, f: &Poly<B::CF>) -> Result<ExtRat> {
        match self {
            TreePoint::Fin(m) => Ok(m.value(f)),
            TreePoint::Inf(a) => a.value(f),
        }
    }

    pub fn descr(&self) -> String {
        match self {
            TreePoint::Fin(m) => m.descr(),
            TreePoint::Inf(a) => a.descr(),
        }
    }

    pub fn predecessors(&self) -> Vec<MacVal<B>> {
        match self {
            TreePoint::Fin(m) => m.predecessors(),
            TreePoint::Inf(a) => a.predecessors(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TreePoint::Inf(_))
    }

    pub fn fin(&self) -> Option<&MacVal<B>> {
        match self {
            TreePoint::Fin(m) => Some(m),
            TreePoint::Inf(_) => None,
        }
    }
}

fn poly_eq<F: Field>(fld: &F, a: &Poly<F>, b: &Poly<F>) -> bool {
    Poly::sub(fld, a, b).is_zero()
}

/// Do all chain keys of v keep their value under w (v ≤ w on generators)?
pub(crate) fn chain_leq<B: ValuedBase>(v: &MacVal<B>, w: &TreePoint<B>) -> Result<bool> {
    for lvl in &v.levels {
        if w.value(&lvl.phi)? < ExtRat::Fin(lvl.lam.clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

const SEPARATE_CAP: u32 = 64;

fn inf_point_leq<B: ValuedBase>(ip: &InfPoint<B>, w: &TreePoint<B>) -> Result<bool> {
    for _ in 0..=SEPARATE_CAP {
        if let Some(t) = ip.exact() {
            return Ok(chain_leq(&t.chain, w)? && w.value(&t.g)? == ExtRat::Inf);
        }
        if !chain_leq(&ip.chain(), w)? {
            return Ok(false);
        }
        ip.deepen()?;
    }
    Err(Error::internal(
        "could not separate an infinite branch from the compared point",
    ))
}

/// v ≤ w in the valuation tree order.
pub fn point_leq<B: ValuedBase>(v: &TreePoint<B>, w: &TreePoint<B>) -> Result<bool> {
    if points_eq(v, w)? {
        return Ok(true);
    }
    match v {
        TreePoint::Fin(m) => chain_leq(m, w),
        TreePoint::Inf(Approximant::Exact { val, .. }) => {
            Ok(chain_leq(&val.chain, w)? && w.value(&val.g)? == ExtRat::Inf)
        }
        TreePoint::Inf(Approximant::Approx(ip)) => inf_point_leq(ip, w),
    }
}

/// Structural equality of tree points (no refinement).
pub fn points_eq<B: ValuedBase>(v: &TreePoint<B>, w: &TreePoint<B>) -> Result<bool> {
    let kernel = |a: &Approximant<B>| -> Option<TypeIVal<B>> {
        match a {
            Approximant::Exact { val, .. } => Some(val.clone()),
            Approximant::Approx(ip) => ip.exact(),
        }
    };
    match (v, w) {
        (TreePoint::Fin(a), TreePoint::Fin(b)) => Ok(a.eq_val(b)),
        (TreePoint::Fin(_), TreePoint::Inf(_)) | (TreePoint::Inf(_), TreePoint::Fin(_)) => {
            Ok(false)
        }
        (TreePoint::Inf(a), TreePoint::Inf(b)) => {
            let ch = a.chain();
            let cf = ch.cf();
            match (kernel(a), kernel(b)) {
                (Some(x), Some(y)) => Ok(poly_eq(cf, &x.g, &y.g)),
                (None, None) => match (a, b) {
                    (Approximant::Approx(x), Approximant::Approx(y)) => Ok(poly_eq(
                        cf,
                        x.target(),
                        y.target(),
                    )
                        && x.chain().eq_val(&y.chain())),
                    _ => unreachable!("kernel is Some for exact approximants"),
                },
                _ => Ok(false),
            }
        }
    }
}

/// The infimum of two tree points: the largest point below both. Always a
/// finite valuation unless the points are comparable.
pub fn inf<B: ValuedBase>(v: &TreePoint<B>, w: &TreePoint<B>) -> Result<TreePoint<B>> {
    if point_leq(v, w)? {
        return Ok(v.clone());
    }
    if point_leq(w, v)? {
        return Ok(w.clone());
    }
    // Incomparable: find the first key of v's side that w does not absorb.
    let (vch, kernel): (MacVal<B>, Option<Poly<B::CF>>) = match v {
        TreePoint::Fin(m) => (m.clone(), None),
        TreePoint::Inf(Approximant::Exact { val, .. }) => {
            (val.chain.clone(), Some(val.g.clone()))
        }
        TreePoint::Inf(Approximant::Approx(ip)) => {
            if let Some(t) = ip.exact() {
                (t.chain.clone(), Some(t.g.clone()))
            } else {
                let mut steps = 0;
                while chain_leq(&ip.chain(), w)? {
                    ip.deepen()?;
                    steps += 1;
                    if steps > SEPARATE_CAP {
                        return Err(Error::internal(
                            "could not separate an infinite branch while taking an infimum",
                        ));
                    }
                }
                (ip.chain(), None)
            }
        }
    };
    let n = vch.nlevels();
    let mut istar = None;
    for i in (0..=n).rev() {
        if chain_leq(&vch.truncate(i), w)? {
            istar = Some(i);
            break;
        }
    }
    let i = istar.expect("the Gauss valuation is below every tree point");
    let phi = if i < n {
        vch.levels[i].phi.clone()
    } else {
        kernel.expect("whole chain absorbed although the points are incomparable")
    };
    let t = match w.value(&phi)? {
        ExtRat::Fin(t) => t,
        ExtRat::Inf => {
            return Err(Error::internal(
                "separating key has infinite value on the other side",
            ))
        }
    };
    let m = vch.truncate(i).augment_trusted(&phi, &ExtRat::Fin(t))?;
    Ok(TreePoint::Fin(m.fin()))
}

/// Do w1 and w2 lie in the same residue class of v (equivalently: does some
/// point strictly above v sit below both)?
pub fn same_residue_class<B: ValuedBase>(
    v: &MacVal<B>,
    w1: &TreePoint<B>,
    w2: &TreePoint<B>,
) -> Result<bool> {
    let vp = TreePoint::Fin(v.clone());
    for w in [w1, w2] {
        if !point_leq(&vp, w)? || points_eq(&vp, w)? {
            return Err(Error::invalid(
                "residue classes are defined for points strictly above the center",
            ));
        }
    }
    match inf(w1, w2)? {
        TreePoint::Fin(m) => Ok(v.leq(&m) && !v.eq_val(&m)),
        // The infimum is one of the wi themselves, which sit strictly above v.
        TreePoint::Inf(_) => Ok(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::poly::QPoly;
    use crate::base::rat::rat;
    use crate::maclane::tests::{q2, q3};
    use crate::maclane::{approximants, gauss};

    fn fin(n: i64, d: i64) -> ExtRat {
        ExtRat::Fin(rat(n, d))
    }

    fn xp() -> QPoly {
        QPoly::from_i64s(&[0, 1])
    }

    #[test]
    fn inf_examples() {
        // inf([v0, v(x)=2], [v0, v(x-1)=3/2]) = v0 over Q_3.
        let v0 = gauss(q3());
        let a = TreePoint::Fin(v0.augment(&xp(), &fin(2, 1)).unwrap().fin());
        let b = TreePoint::Fin(
            v0.augment(&QPoly::from_i64s(&[-1, 1]), &fin(3, 2))
                .unwrap()
                .fin(),
        );
        let m = inf(&a, &b).unwrap();
        assert!(points_eq(&m, &TreePoint::Fin(v0.clone())).unwrap());

        // inf([v0, v(x)=4/3], [v0, v(x+2)=3/2]) = [v0, v(x)=1] over Q_2.
        let w0 = gauss(q2());
        let c = TreePoint::Fin(w0.augment(&xp(), &fin(4, 3)).unwrap().fin());
        let d = TreePoint::Fin(
            w0.augment(&QPoly::from_i64s(&[2, 1]), &fin(3, 2))
                .unwrap()
                .fin(),
        );
        let m = inf(&c, &d).unwrap();
        assert_eq!(m.descr(), "[v0, v(x)=1]");
        assert!(point_leq(&m, &c).unwrap() && point_leq(&m, &d).unwrap());

        // The infimum is idempotent and commutative.
        assert!(points_eq(&inf(&c, &c).unwrap(), &c).unwrap());
        let m2 = inf(&d, &c).unwrap();
        assert!(points_eq(&m, &m2).unwrap());
    }

    #[test]
    fn inf_with_infinite_points() {
        // The infimum of comparable points is the smaller one, including
        // infinite pseudovaluations sitting above a finite chain.
        let br = approximants(&q2(), &QPoly::from_i64s(&[-16, 0, 0, 1])).unwrap();
        assert_eq!(br.len(), 1);
        let w1 = TreePoint::Inf(br.into_iter().next().unwrap());
        let below = TreePoint::Fin(gauss(q2()).augment(&xp(), &fin(4, 3)).unwrap().fin());
        assert!(point_leq(&below, &w1).unwrap());
        let m = inf(&below, &w1).unwrap();
        assert!(points_eq(&m, &below).unwrap());
        let m = inf(&w1, &below).unwrap();
        assert!(points_eq(&m, &below).unwrap());
    }

    #[test]
    fn residue_class_examples() {
        // w1 = [v0, v(x)=1] and w2 = [v0, v(x)=2] agree on the residue
        // class of the Gauss point over Q_2.
        let v0 = gauss(q2());
        let w1 = TreePoint::Fin(v0.augment(&xp(), &fin(1, 1)).unwrap().fin());
        let w2 = TreePoint::Fin(v0.augment(&xp(), &fin(2, 1)).unwrap().fin());
        assert!(same_residue_class(&v0, &w1, &w2).unwrap());

        // Distinct centers land in distinct residue classes over Q_3.
        let u0 = gauss(q3());
        let a = TreePoint::Fin(u0.augment(&xp(), &fin(1, 1)).unwrap().fin());
        let b = TreePoint::Fin(
            u0.augment(&QPoly::from_i64s(&[-1, 1]), &fin(1, 1))
                .unwrap()
                .fin(),
        );
        assert!(!same_residue_class(&u0, &a, &b).unwrap());

        // Around v = [v0, v(x)=4/3] over Q_2: the branch of x^3 - 16 and
        // the deeper chain [v0, v(x)=3/2] separate immediately.
        let v = gauss(q2()).augment(&xp(), &fin(4, 3)).unwrap().fin();
        let br = approximants(&q2(), &QPoly::from_i64s(&[-16, 0, 0, 1])).unwrap();
        let w1 = TreePoint::Inf(br.into_iter().next().unwrap());
        let w2 = TreePoint::Fin(gauss(q2()).augment(&xp(), &fin(3, 2)).unwrap().fin());
        assert!(!same_residue_class(&v, &w1, &w2).unwrap());

        // Points not strictly above the center are rejected.
        let g0 = TreePoint::Fin(gauss(q2()));
        assert!(same_residue_class(&gauss(q2()), &g0, &w2).is_err());
    }
}
