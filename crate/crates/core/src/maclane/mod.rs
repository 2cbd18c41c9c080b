//! Inductive (MacLane) valuations on polynomial rings over a valued field.
//!
//! A valuation is stored as an augmentation chain `[v0, v(φ_1)=λ_1, …,
//! v(φ_n)=λ_n]` over a [`ValuedBase`]: the Gauss valuation of the base
//! followed by successive augmentations at key polynomials. Chains are kept
//! in minimal form (strictly increasing key degrees). The module provides
//! values, residual polynomials, residue rings, key testing and lifting,
//! infima, and branch approximation for the valuations associated to the
//! irreducible factors of a polynomial.
//!
//! The engine is generic over the base so it serves both the x-line over
//! (Q, val_p) and extensions of function fields over (Q(x), v).

mod approx;
mod fnbase;
mod inf;
mod keys;
mod resid;

pub use approx::{approximants, Approximant, InfPoint, TypeIVal};
pub(crate) use approx::squarefree_parts;
pub use fnbase::FnBase;
pub use inf::{inf, point_leq, points_eq, same_residue_class, TreePoint};
pub use keys::{PVal, ResidueRingDesc};
pub use resid::Resid;

use crate::base::field::{Field, QQ};
use crate::base::finite::{extend_flat, FlatExt};
use crate::base::poly::Poly;
use crate::base::rat::{fmt_rat, valp, ExtRat, Rat};
use crate::base::resfield::{REl, RField};
use crate::error::{Error, Result};
use num_traits::ToPrimitive;
use std::fmt::Debug;

/// The data a ground field must provide: arithmetic, a discrete valuation
/// with value group (1/gdenom0)Z, and the residue-field interface.
pub trait ValuedBase: Clone + Debug {
    type CF: Field;

    fn cfield(&self) -> &Self::CF;
    fn res_field(&self) -> &RField;
    /// Value group of the base is (1/gdenom0())Z.
    fn gdenom0(&self) -> u64;
    fn val(&self, a: &<Self::CF as Field>::El) -> ExtRat;
    /// An element of value exactly 1/gdenom0().
    fn uniformizer(&self) -> <Self::CF as Field>::El;
    /// Reduce a value-0 element to the residue field.
    fn reduce(&self, a: &<Self::CF as Field>::El) -> REl;
    /// A section of `reduce`.
    fn lift(&self, r: &REl) -> <Self::CF as Field>::El;
    /// Variable name for printing polynomials over this base.
    fn var(&self) -> &'static str;
    fn descr(&self) -> String;
}

/// Simple deterministic primality test (trial division; inputs are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Modular inverse for u64 moduli (not necessarily prime).
pub(crate) fn inv_mod_u64(a: u64, m: u64) -> u64 {
    assert!(m > 0);
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "inverse does not exist: gcd({a},{m}) != 1");
    t0.rem_euclid(m as i128) as u64
}

fn rat_mod_u64(x: &Rat, m: u64) -> u64 {
    assert!(x.is_integer(), "expected an integer rational");
    let mi = num_bigint::BigInt::from(m);
    let r = ((x.numer() % &mi) + &mi) % &mi;
    r.to_u64().expect("residue fits in u64")
}

// ---------- the base (Q, val_p) ----------

/// The rational numbers with the p-adic valuation val_p(p) = 1.
#[derive(Debug, Clone)]
pub struct QBase {
    pub p: u64,
    rf: RField,
}

impl QBase {
    pub fn new(p: u64) -> Result<QBase> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(QBase {
            p,
            rf: RField::prime(p),
        })
    }
}

impl ValuedBase for QBase {
    type CF = QQ;

    fn cfield(&self) -> &QQ {
        &QQ
    }
    fn res_field(&self) -> &RField {
        &self.rf
    }
    fn gdenom0(&self) -> u64 {
        1
    }
    fn val(&self, a: &Rat) -> ExtRat {
        valp(a, self.p)
    }
    fn uniformizer(&self) -> Rat {
        Rat::from_integer(self.p.into())
    }
    fn reduce(&self, a: &Rat) -> REl {
        debug_assert!(QQ.is_zero(a) || self.val(a) == ExtRat::zero());
        let fq = self.rf.as_ff();
        if QQ.is_zero(a) {
            return REl::FF(fq.zero());
        }
        let pi = num_bigint::BigInt::from(self.p);
        let num = ((a.numer() % &pi) + &pi) % &pi;
        let den = ((a.denom() % &pi) + &pi) % &pi;
        let num = num.to_u64().unwrap();
        let den = den.to_u64().unwrap();
        let inv = inv_mod_u64(den, self.p);
        REl::FF(fq.from_u64((num as u128 * inv as u128 % self.p as u128) as u64))
    }
    fn lift(&self, r: &REl) -> Rat {
        let v = RField::unwrap_ff(r);
        debug_assert_eq!(v.len(), 1, "prime residue field expected");
        Rat::from_integer(v[0].into())
    }
    fn var(&self) -> &'static str {
        "x"
    }
    fn descr(&self) -> String {
        format!("Q with the {}-adic valuation", self.p)
    }
}

// ---------- chain levels ----------

/// How the algebraic part K_i of the residue field relates to K_{i-1}.
#[derive(Debug, Clone)]
pub enum LevelField {
    /// deg ψ = 1: same field; theta is the root of ψ in K_{i-1}.
    Same { theta: REl },
    /// Finite-field step, flattened to a fresh F_{p^d}.
    FFExt { fld: RField, flat: FlatExt },
    /// One algebraic layer over a function field.
    Layer { fld: RField },
}

/// One augmentation step v_i = [v_{i-1}, v(φ_i) = λ_i] with its residue
/// bookkeeping.
#[derive(Debug, Clone)]
pub struct Level<B: ValuedBase> {
    pub phi: Poly<<B as ValuedBase>::CF>,
    pub lam: Rat,
    /// Ramification of this step: least τ ≥ 1 with τλ ∈ Γ_{i-1}.
    pub tau: u64,
    /// Γ_i = (1/gdenom)Z.
    pub gdenom: u64,
    /// Minimal polynomial over K_{i-1} of the image of the previous
    /// residue-ring generator (T when that image is 0).
    pub psi: Poly<RField>,
    pub fld: LevelField,
}

/// An inductive valuation in minimal form.
#[derive(Debug, Clone)]
pub struct MacVal<B: ValuedBase> {
    pub base: B,
    pub levels: Vec<Level<B>>,
}

/// A standard monomial π^c φ_1^{a_1} ⋯ φ_n^{a_n}; its value is
/// c/gdenom0 + Σ a_k λ_k. In canonical form 0 ≤ a_k < τ_k, but Laurent
/// exponents (any sign) appear in intermediate computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SMono {
    pub c: i64,
    pub a: Vec<i64>,
}

pub fn gauss<B: ValuedBase>(base: B) -> MacVal<B> {
    MacVal {
        base,
        levels: Vec::new(),
    }
}

/// φ-adic expansion: f = Σ f_i φ^i with deg f_i < deg φ.
pub fn phi_expansion<F: Field>(f: &F, a: &Poly<F>, phi: &Poly<F>) -> Vec<Poly<F>> {
    assert!(phi.is_monic(f) && phi.deg() >= 1, "expansion needs a monic φ");
    let mut out = Vec::new();
    let mut rest = a.clone();
    if rest.is_zero() {
        return vec![Poly::zero()];
    }
    while !rest.is_zero() {
        let (q, r) = Poly::divmod(f, &rest, phi);
        out.push(r);
        rest = q;
    }
    out
}

impl<B: ValuedBase> MacVal<B> {
    pub fn cf(&self) -> &B::CF {
        self.base.cfield()
    }

    pub fn nlevels(&self) -> usize {
        self.levels.len()
    }

    pub fn is_gauss(&self) -> bool {
        self.levels.is_empty()
    }

    /// Denominator of the value group Γ_i (levels 0..=n; 0 is the base).
    pub fn gdenom_at(&self, i: usize) -> u64 {
        if i == 0 {
            self.base.gdenom0()
        } else {
            self.levels[i - 1].gdenom
        }
    }

    pub fn gdenom(&self) -> u64 {
        self.gdenom_at(self.nlevels())
    }

    /// Ramification index over the base: [Γ_v : Γ_base].
    pub fn ramification(&self) -> u64 {
        self.gdenom() / self.base.gdenom0()
    }

    pub fn in_gamma_at(&self, i: usize, gamma: &Rat) -> bool {
        (gamma * Rat::from_integer(self.gdenom_at(i).into())).is_integer()
    }

    /// The algebraic part K_i of the residue field of the i-th truncation.
    pub fn res_field_at(&self, i: usize) -> &RField {
        for k in (1..=i).rev() {
            match &self.levels[k - 1].fld {
                LevelField::Same { .. } => continue,
                LevelField::FFExt { fld, .. } => return fld,
                LevelField::Layer { fld } => return fld,
            }
        }
        self.base.res_field()
    }

    /// θ_i ∈ K_i: the image of the level-(i-1) residue-ring generator.
    pub fn theta(&self, i: usize) -> REl {
        assert!(i >= 1);
        match &self.levels[i - 1].fld {
            LevelField::Same { theta } => theta.clone(),
            LevelField::FFExt { flat, .. } => REl::FF(flat.theta.clone()),
            LevelField::Layer { fld } => REl::EXT(fld.as_ext().gen()),
        }
    }

    /// Embedding K_{i-1} → K_i along the i-th level.
    pub fn embed_step(&self, i: usize, a: &REl) -> REl {
        assert!(i >= 1);
        match &self.levels[i - 1].fld {
            LevelField::Same { .. } => a.clone(),
            LevelField::FFExt { flat, .. } => REl::FF(flat.embed(RField::unwrap_ff(a))),
            LevelField::Layer { fld } => {
                REl::EXT(fld.as_ext().from_base(RField::unwrap_rf(a).clone()))
            }
        }
    }

    /// Embedding K_from → K_to (from ≤ to).
    pub fn embed_range(&self, from: usize, to: usize, a: &REl) -> REl {
        let mut x = a.clone();
        for i in from + 1..=to {
            x = self.embed_step(i, &x);
        }
        x
    }

    /// Coordinates of a ∈ K_i over K_{i-1} along powers of θ_i
    /// (length = deg ψ_i).
    pub fn decompose_step(&self, i: usize, a: &REl) -> Vec<REl> {
        assert!(i >= 1);
        match &self.levels[i - 1].fld {
            LevelField::Same { .. } => vec![a.clone()],
            LevelField::FFExt { flat, .. } => flat
                .decompose(RField::unwrap_ff(a))
                .into_iter()
                .map(REl::FF)
                .collect(),
            LevelField::Layer { .. } => RField::unwrap_ext(a)
                .iter()
                .cloned()
                .map(REl::RF)
                .collect(),
        }
    }

    /// Truncation [v0, φ_1=λ_1, …, φ_i=λ_i].
    pub fn truncate(&self, i: usize) -> MacVal<B> {
        MacVal {
            base: self.base.clone(),
            levels: self.levels[..i].to_vec(),
        }
    }

    /// The predecessors v_0 < v_1 < … < v_{n-1} of v (proper truncations).
    pub fn predecessors(&self) -> Vec<MacVal<B>> {
        (0..self.nlevels()).map(|i| self.truncate(i)).collect()
    }

    pub fn value(&self, f: &Poly<B::CF>) -> ExtRat {
        self.value_at(self.nlevels(), f)
    }

    /// Value under the i-th truncation.
    pub fn value_at(&self, i: usize, f: &Poly<B::CF>) -> ExtRat {
        if f.is_zero() {
            return ExtRat::Inf;
        }
        if i == 0 {
            let mut m = ExtRat::Inf;
            for c in &f.c {
                m = m.min(self.base.val(c));
            }
            return m;
        }
        let lvl = &self.levels[i - 1];
        if f.deg() < lvl.phi.deg() {
            // Coefficient-sized elements keep their lower-level value.
            return self.value_at(i - 1, f);
        }
        let parts = phi_expansion(self.cf(), f, &lvl.phi);
        let mut m = ExtRat::Inf;
        for (j, fj) in parts.iter().enumerate() {
            if fj.is_zero() {
                continue;
            }
            let term = self.value_at(i - 1, fj) + ExtRat::Fin(&lvl.lam * Rat::from_integer(j.into()));
            m = m.min(term);
        }
        m
    }

    /// Value of a quotient f/g of polynomials.
    pub fn value_quot(&self, f: &Poly<B::CF>, g: &Poly<B::CF>) -> ExtRat {
        assert!(!g.is_zero(), "value of f/0");
        match (self.value(f), self.value(g)) {
            (ExtRat::Inf, _) => ExtRat::Inf,
            (_, ExtRat::Inf) => unreachable!("finite valuation is infinite on a nonzero g"),
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a - b),
        }
    }

    /// The canonical standard monomial of value γ at truncation i.
    pub fn std_monomial_at(&self, i: usize, gamma: &Rat) -> SMono {
        assert!(
            self.in_gamma_at(i, gamma),
            "value {} is not in the level-{i} value group",
            fmt_rat(gamma)
        );
        let mut a = vec![0i64; i];
        let mut g = gamma.clone();
        for k in (1..=i).rev() {
            let lvl = &self.levels[k - 1];
            if lvl.tau > 1 {
                let gd = Rat::from_integer(lvl.gdenom.into());
                let big_g = &g * &gd;
                let big_p = &lvl.lam * &gd;
                let gm = rat_mod_u64(&big_g, lvl.tau);
                let pm = rat_mod_u64(&big_p, lvl.tau);
                let ak = (gm as u128 * inv_mod_u64(pm, lvl.tau) as u128 % lvl.tau as u128) as u64;
                a[k - 1] = ak as i64;
                g -= &lvl.lam * Rat::from_integer(ak.into());
            }
        }
        let c_rat = &g * Rat::from_integer(self.base.gdenom0().into());
        assert!(c_rat.is_integer(), "standard monomial solver left a fraction");
        let c = c_rat
            .to_integer()
            .to_i64()
            .expect("standard monomial exponent fits in i64");
        SMono { c, a }
    }

    pub fn std_monomial(&self, gamma: &Rat) -> SMono {
        self.std_monomial_at(self.nlevels(), gamma)
    }

    /// The value of a (Laurent) standard monomial at truncation i.
    pub fn smono_value(&self, m: &SMono) -> Rat {
        let mut v = Rat::from_integer(m.c.into())
            / Rat::from_integer(self.base.gdenom0().into());
        for (k, ak) in m.a.iter().enumerate() {
            v += &self.levels[k].lam * Rat::from_integer((*ak).into());
        }
        v
    }

    /// Materialize a standard monomial as an element of the fraction field
    /// representation (numerator, denominator) over CF[x].
    pub fn smono_elem(&self, m: &SMono) -> (Poly<B::CF>, Poly<B::CF>) {
        let f = self.cf();
        let pi = self.base.uniformizer();
        let mut num = Poly::one(f);
        let mut den = Poly::one(f);
        if m.c >= 0 {
            num = Poly::scale(f, &num, &f.pow(&pi, m.c));
        } else {
            den = Poly::scale(f, &den, &f.pow(&pi, -m.c));
        }
        for (k, ak) in m.a.iter().enumerate() {
            if *ak >= 0 {
                num = Poly::mul(f, &num, &Poly::pow(f, &self.levels[k].phi, *ak as u64));
            } else {
                den = Poly::mul(f, &den, &Poly::pow(f, &self.levels[k].phi, (-*ak) as u64));
            }
        }
        (num, den)
    }

    /// v ≤ w, decided on keys: w(φ_i) ≥ λ_i for every chain step.
    pub fn leq(&self, w: &MacVal<B>) -> bool {
        for lvl in &self.levels {
            match w.value(&lvl.phi) {
                ExtRat::Inf => {}
                ExtRat::Fin(x) => {
                    if x < lvl.lam {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn eq_val(&self, w: &MacVal<B>) -> bool {
        self.leq(w) && w.leq(self)
    }

    /// Strictly less.
    pub fn lt(&self, w: &MacVal<B>) -> bool {
        self.leq(w) && !w.leq(self)
    }

    pub fn descr(&self) -> String {
        let mut s = String::from("[v0");
        for lvl in &self.levels {
            s.push_str(&format!(
                ", v({})={}",
                lvl.phi.fmt_compact(self.cf(), self.base.var()),
                fmt_rat(&lvl.lam)
            ));
        }
        s.push(']');
        s
    }

    /// λ of the last level; None for the Gauss valuation.
    pub fn last_lam(&self) -> Option<&Rat> {
        self.levels.last().map(|l| &l.lam)
    }

    pub fn last_phi(&self) -> Option<&Poly<B::CF>> {
        self.levels.last().map(|l| &l.phi)
    }
}

/// Construct the level bookkeeping (τ, gdenom, residue step) for an
/// augmentation of `parent` (a truncation) by (φ, λ) with residual minimal
/// polynomial ψ over parent's K.
pub(crate) fn build_level<B: ValuedBase>(
    parent: &MacVal<B>,
    phi: Poly<B::CF>,
    lam: Rat,
    psi: Poly<RField>,
) -> Result<Level<B>> {
    let pg = parent.gdenom();
    let scaled = &lam * Rat::from_integer(pg.into());
    let tau = scaled
        .denom()
        .to_u64()
        .ok_or_else(|| Error::invalid("augmentation value has an enormous denominator"))?;
    let gdenom = pg * tau;
    let kpar = parent.res_field_at(parent.nlevels());
    let fld = if psi.deg() == 1 {
        // ψ = T - θ (or T itself): the field does not grow.
        let theta = kpar.neg(&psi.coeff(kpar, 0));
        LevelField::Same { theta }
    } else {
        match kpar {
            RField::FF(fq) => {
                let psif = kpar.poly_to_ff(&psi);
                let flat = extend_flat(fq, &psif)?;
                LevelField::FFExt {
                    fld: RField::FF(flat.fld.clone()),
                    flat,
                }
            }
            RField::RF(rf) => {
                let coeffs = psi
                    .c
                    .iter()
                    .map(|x| RField::unwrap_rf(x).clone())
                    .collect();
                let modulus = Poly::from_coeffs(rf, coeffs);
                let ext = crate::base::algext::AlgExtField::new(rf.clone(), modulus);
                LevelField::Layer {
                    fld: RField::EXT(ext),
                }
            }
            RField::EXT(_) => {
                return Err(Error::unsupported(
                    "residue tower would need a second algebraic layer over the function field",
                ));
            }
        }
    };
    Ok(Level {
        phi,
        lam,
        tau,
        gdenom,
        psi,
        fld,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::base::poly::QPoly;
    use crate::base::rat::{rat, rat_i64};
    use num_traits::Zero;

    pub(crate) fn q3() -> QBase {
        QBase::new(3).unwrap()
    }

    pub(crate) fn q2() -> QBase {
        QBase::new(2).unwrap()
    }

    #[test]
    fn gauss_values() {
        let v0 = gauss(q3());
        assert_eq!(v0.value(&QPoly::from_i64s(&[81, 0, 1])), ExtRat::zero());
        assert_eq!(
            v0.value(&QPoly::from_i64s(&[9, 3])),
            ExtRat::Fin(rat_i64(1))
        );
        assert_eq!(v0.value(&QPoly::zero()), ExtRat::Inf);
    }

    #[test]
    fn expansion_reassembles() {
        let f = QQ;
        let a = QPoly::from_i64s(&[-26, -2, 1]);
        let phi = QPoly::from_i64s(&[0, 1]);
        let parts = phi_expansion(&f, &a, &phi);
        assert_eq!(parts.len(), 3);
        // Reassemble.
        let mut acc = Poly::zero();
        for (i, p) in parts.iter().enumerate() {
            acc = Poly::add(&f, &acc, &Poly::mul(&f, p, &Poly::pow(&f, &phi, i as u64)));
        }
        assert!(Poly::eq(&f, &acc, &a));
        // φ = x^2 against x^3 - 16: coefficients [-16, x].
        let b = QPoly::from_i64s(&[-16, 0, 0, 1]);
        let phi2 = QPoly::from_i64s(&[0, 0, 1]);
        let parts = phi_expansion(&f, &b, &phi2);
        assert_eq!(parts.len(), 2);
        assert!(Poly::eq(&f, &parts[0], &QPoly::from_i64s(&[-16])));
        assert!(Poly::eq(&f, &parts[1], &QPoly::from_i64s(&[0, 1])));
    }

    #[test]
    fn prime_checks() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(91));
        assert!(QBase::new(6).is_err());
    }

    #[test]
    fn inv_mod_works() {
        assert_eq!(inv_mod_u64(3, 7), 5);
        assert_eq!(inv_mod_u64(5, 6), 5);
        assert_eq!(inv_mod_u64(1, 2), 1);
    }

    #[test]
    fn chain_value_examples() {
        // [v0, v(x)=2] over Q_3.
        let x = QPoly::from_i64s(&[0, 1]);
        let v1 = gauss(q3())
            .augment(&x, &ExtRat::Fin(rat_i64(2)))
            .unwrap()
            .fin();
        assert_eq!(v1.value(&QPoly::from_i64s(&[-26, -2, 1])), ExtRat::zero());

        // [v0, v(x+2)=3/2, v(x^2+4x+12)=4] over Q_2 applied to f1·f2·f3.
        let w1 = gauss(q2())
            .augment(&QPoly::from_i64s(&[2, 1]), &ExtRat::Fin(rat(3, 2)))
            .unwrap()
            .fin();
        let f1 = QPoly::from_i64s(&[-16, 0, 0, 1]);
        let f2 = QPoly::from_i64s(&[12, 4, 1]);
        let f3 = QPoly::from_i64s(&[-4, 4, 1]);
        let w2 = w1.augment(&f2, &ExtRat::Fin(rat_i64(4))).unwrap().fin();
        let f = Poly::mul(&QQ, &Poly::mul(&QQ, &f1, &f2), &f3);
        assert_eq!(w2.value(&f), ExtRat::Fin(rat_i64(11)));

        // [v0, v(x)=4/3] over Q_2 on x^3 - 16.
        let u = gauss(q2())
            .augment(&x, &ExtRat::Fin(rat(4, 3)))
            .unwrap()
            .fin();
        assert_eq!(u.value(&f1), ExtRat::Fin(rat_i64(4)));
        assert_eq!(u.descr(), "[v0, v(x)=4/3]");
        assert_eq!(w2.descr(), "[v0, v(x+2)=3/2, v(x^2+4x+12)=4]");
    }

    #[test]
    fn predecessor_sets() {
        assert!(gauss(q3()).predecessors().is_empty());
        let u = gauss(q2())
            .augment(&QPoly::from_i64s(&[0, 1]), &ExtRat::Fin(rat(4, 3)))
            .unwrap()
            .fin();
        let pred = u.predecessors();
        assert_eq!(pred.len(), 1);
        assert!(pred[0].eq_val(&gauss(q2())));
    }

    #[test]
    fn chain_order() {
        let x = QPoly::from_i64s(&[0, 1]);
        let v0 = gauss(q3());
        let a = v0.augment(&x, &ExtRat::Fin(rat_i64(1))).unwrap().fin();
        let b = v0.augment(&x, &ExtRat::Fin(rat_i64(2))).unwrap().fin();
        assert!(v0.leq(&a) && a.leq(&b) && !b.leq(&a));
        assert!(a.lt(&b) && !a.lt(&a));
        // Chains over different centers are incomparable.
        let c = v0
            .augment(&QPoly::from_i64s(&[-1, 1]), &ExtRat::Fin(rat_i64(1)))
            .unwrap()
            .fin();
        assert!(!a.leq(&c) && !c.leq(&a));
        assert!(a.eq_val(&a.clone()));
    }

    #[test]
    fn qbase_reduce_lift() {
        let b = q3();
        // 7/2 has val 0; 7 ≡ 1, 2^{-1} ≡ 2 mod 3 → 2.
        let a = rat(7, 2);
        let r = b.reduce(&a);
        assert_eq!(RField::unwrap_ff(&r), &vec![2]);
        let l = b.lift(&r);
        assert_eq!(l, rat_i64(2));
        assert!(*b.val(&QQ.sub(&a, &l)).finite().unwrap() > Rat::zero());
    }
}
