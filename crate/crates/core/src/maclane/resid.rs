//! Residual polynomials and graded reductions.
//!
//! For a chain v = [v0, φ_1=λ_1, …, φ_n=λ_n] and f ≠ 0 with m = v(f), the
//! class of f/S_m in the degree-0 part of the graded ring is
//! t_n^{eps}·R(t_n) for a unique eps ≥ 0 and R ∈ K_n[T] with R(0) ≠ 0,
//! where S_m is the canonical standard monomial of value m and t_n is the
//! residue-ring generator red(φ_n^{τ_n}/S_{τ_nλ_n}). `Resid` carries that
//! data together with j0, the least exponent of the φ_n-adic expansion of f
//! attaining the value; j0 = a_n(m) + eps·τ_n, and j0 is the quantity that
//! is additive under multiplication of polynomials.

use super::{MacVal, SMono, ValuedBase};
use crate::base::field::Field;
use crate::base::poly::Poly;
use crate::base::rat::Rat;
use crate::base::ratfun::{RatFunc, RatFuncField};
use crate::base::resfield::{REl, RField};
use num_traits::{ToPrimitive, Zero};

/// Residual data of f at a truncation: red(f/S_m) = t^eps · r(t).
#[derive(Debug, Clone)]
pub struct Resid {
    /// The value v_i(f).
    pub m: Rat,
    /// Least value-attaining exponent of the top-level expansion
    /// (the x-exponent at the Gauss level).
    pub j0: i64,
    /// Normalized generator exponent (j0 - a_i(m))/τ_i ≥ 0.
    pub eps: i64,
    /// Unit part; r(0) ≠ 0.
    pub r: Poly<RField>,
}

impl<B: ValuedBase> MacVal<B> {
    /// Evaluate a polynomial over K_{i-1} at θ_i after embedding the
    /// coefficients into K_i.
    pub(crate) fn eval_embedded(&self, i: usize, r: &Poly<RField>) -> REl {
        let ki = self.res_field_at(i);
        let th = self.theta(i);
        let mut acc = ki.zero();
        for c in r.c.iter().rev() {
            acc = ki.add(&ki.mul(&acc, &th), &self.embed_step(i, c));
        }
        acc
    }

    /// θ_i^e, tolerating θ_i = 0 for positive e.
    pub(crate) fn theta_pow(&self, i: usize, e: i64) -> REl {
        let ki = self.res_field_at(i);
        if e == 0 {
            return ki.one();
        }
        let th = self.theta(i);
        if ki.is_zero(&th) {
            assert!(e > 0, "negative power of a vanished residue generator");
            return ki.zero();
        }
        ki.pow(&th, e)
    }

    /// Reduce a value-0 Laurent monomial over the first i levels to
    /// (u, e) with class u·t_i^e, u ∈ K_i a unit.
    pub fn monomial_red(&self, i: usize, mono: &SMono) -> (REl, i64) {
        assert_eq!(mono.a.len(), i, "monomial indexed by the first {i} levels");
        debug_assert!(
            self.smono_value(mono).is_zero(),
            "monomial_red needs a value-0 monomial"
        );
        let ki = self.res_field_at(i);
        let mut u = ki.one();
        let mut e = 0i64;
        let mut c = mono.c;
        let mut a = mono.a.clone();
        loop {
            let Some(top) = (1..=i).rev().find(|k| a[k - 1] != 0) else {
                break;
            };
            let lvl = &self.levels[top - 1];
            let tau = lvl.tau as i64;
            assert_eq!(
                a[top - 1] % tau,
                0,
                "level-{top} exponent of a value-0 monomial is divisible by τ"
            );
            let q = a[top - 1] / tau;
            a[top - 1] = 0;
            // φ_top^{τq} = (witness of t_top)^q · S_{τλ}^q with S over the
            // lower levels.
            let s = self.std_monomial_at(top - 1, &(&lvl.lam * Rat::from_integer(lvl.tau.into())));
            c += q * s.c;
            for (idx, se) in s.a.iter().enumerate() {
                a[idx] += q * se;
            }
            if top == i {
                e += q;
            } else {
                // The witness reduces to θ_{top+1} one level up; embed into K_i.
                let th = self.embed_range(top + 1, i, &self.theta(top + 1));
                assert!(
                    !ki.is_zero(&th),
                    "interior residue generators are nonzero"
                );
                u = ki.mul(&u, &ki.pow(&th, q));
            }
        }
        assert_eq!(c, 0, "value-0 monomial must cancel exactly");
        (u, e)
    }

    /// Image in K_j of the class of a value-0 monomial over the first j-1
    /// levels (the level-(j-1) generator maps to θ_j).
    pub(crate) fn mono_image(&self, j: usize, mono: &SMono) -> REl {
        assert!(j >= 1);
        let (u, e) = self.monomial_red(j - 1, mono);
        let kj = self.res_field_at(j);
        kj.mul(&self.embed_step(j, &u), &self.theta_pow(j, e))
    }

    /// Residual data of f at the i-th truncation.
    pub fn resid_at(&self, i: usize, f: &Poly<B::CF>) -> Resid {
        assert!(!f.is_zero(), "residual of zero");
        let cf = self.cf();
        if i == 0 {
            let m = self
                .value_at(0, f)
                .finite()
                .expect("nonzero polynomial has finite value")
                .clone();
            let g0 = self.base.gdenom0();
            let mscaled = &m * Rat::from_integer(g0.into());
            assert!(mscaled.is_integer());
            let me = mscaled.to_integer().to_i64().expect("small exponent");
            let pi = self.base.uniformizer();
            let s_inv = cf.pow(&pi, -me);
            let mut red: Vec<REl> = Vec::new();
            let k0 = self.base.res_field();
            for c in &f.c {
                if cf.is_zero(c) {
                    red.push(k0.zero());
                    continue;
                }
                let scaled = cf.mul(c, &s_inv);
                let v = self.base.val(&scaled).finite().unwrap().clone();
                if v > Rat::zero() {
                    red.push(k0.zero());
                } else {
                    red.push(self.base.reduce(&scaled));
                }
            }
            let j0 = red
                .iter()
                .position(|x| !k0.is_zero(x))
                .expect("some coefficient attains the value") as i64;
            let r = Poly::from_coeffs(k0, red[j0 as usize..].to_vec());
            return Resid { m, j0, eps: j0, r };
        }

        let lvl = &self.levels[i - 1];
        let ki = self.res_field_at(i);
        let tau = lvl.tau as i64;
        let parts = super::phi_expansion(cf, f, &lvl.phi);
        // Values of the nonzero coefficients and the attained minimum.
        let mut m: Option<Rat> = None;
        let mut vals: Vec<Option<Rat>> = Vec::with_capacity(parts.len());
        for (j, fj) in parts.iter().enumerate() {
            if fj.is_zero() {
                vals.push(None);
                continue;
            }
            let mj = self
                .value_at(i - 1, fj)
                .finite()
                .expect("finite chain value")
                .clone();
            let tot = &mj + &lvl.lam * Rat::from_integer(j.into());
            if m.as_ref().map_or(true, |cur| &tot < cur) {
                m = Some(tot);
            }
            vals.push(Some(mj));
        }
        let m = m.expect("nonzero polynomial has a value");
        let s_m = self.std_monomial_at(i, &m);
        let a_m = s_m.a[i - 1];
        let mut j0: Option<i64> = None;
        let mut terms: Vec<(i64, REl)> = Vec::new();
        for (j, fj) in parts.iter().enumerate() {
            let Some(mj) = &vals[j] else { continue };
            if mj + &lvl.lam * Rat::from_integer(j.into()) != m {
                continue;
            }
            let j = j as i64;
            match j0 {
                None => j0 = Some(j),
                Some(first) => assert_eq!(
                    (j - first).rem_euclid(tau),
                    0,
                    "value-attaining exponents agree modulo τ"
                ),
            }
            let sub = self.resid_at(i - 1, fj);
            let a_j = ki.mul(
                &self.eval_embedded(i, &sub.r),
                &self.theta_pow(i, sub.eps),
            );
            assert!(!ki.is_zero(&a_j), "coefficient residual vanished at θ");
            // M_j = φ_i^j · S^{(i-1)}_{m_j} / S^{(i)}_m, a value-0 monomial.
            let s_mj = self.std_monomial_at(i - 1, mj);
            let mut a_vec = vec![0i64; i];
            for (idx, e) in s_mj.a.iter().enumerate() {
                a_vec[idx] += e;
            }
            for (idx, e) in s_m.a.iter().enumerate() {
                a_vec[idx] -= e;
            }
            a_vec[i - 1] += j;
            let mono = SMono {
                c: s_mj.c - s_m.c,
                a: a_vec,
            };
            let (u, e) = self.monomial_red(i, &mono);
            assert_eq!(e, (j - a_m) / tau, "monomial exponent bookkeeping");
            terms.push((j, ki.mul(&a_j, &u)));
        }
        let j0 = j0.expect("some expansion coefficient attains the value");
        assert_eq!((j0 - a_m).rem_euclid(tau), 0);
        let eps = (j0 - a_m) / tau;
        assert!(eps >= 0, "polynomial residuals have nonnegative exponent");
        let top = terms.last().unwrap().0;
        let mut coeffs = vec![ki.zero(); ((top - j0) / tau + 1) as usize];
        for (j, c) in terms {
            coeffs[((j - j0) / tau) as usize] = c;
        }
        let r = Poly::from_coeffs(ki, coeffs);
        assert!(!ki.is_zero(&r.coeff(ki, 0)), "unit part has r(0) ≠ 0");
        Resid { m, j0, eps, r }
    }

    /// Residual data at the full chain.
    pub fn full_residual(&self, f: &Poly<B::CF>) -> Resid {
        self.resid_at(self.nlevels(), f)
    }

    /// Reduce a value-0 quotient num/den (equal finite values required) to
    /// the residue field k_v = K_n(t_n), presented as a rational function
    /// in the class t of the residue-ring generator.
    pub fn reduce_elt(&self, num: &Poly<B::CF>, den: &Poly<B::CF>) -> RatFunc<RField> {
        assert!(!num.is_zero() && !den.is_zero(), "reduce_elt of 0 or 1/0");
        let n = self.nlevels();
        let rn = self.resid_at(n, num);
        let rd = self.resid_at(n, den);
        assert!(
            rn.m == rd.m,
            "reduce_elt needs value 0: v(num) = {} but v(den) = {}",
            crate::base::rat::fmt_rat(&rn.m),
            crate::base::rat::fmt_rat(&rd.m)
        );
        let kn = self.res_field_at(n).clone();
        let kfun = RatFuncField::new(kn.clone());
        let shift = rn.eps - rd.eps;
        let mut np = rn.r;
        let mut dp = rd.r;
        if shift >= 0 {
            np = Poly::mul(&kn, &np, &Poly::monomial(&kn, kn.one(), shift as usize));
        } else {
            dp = Poly::mul(&kn, &dp, &Poly::monomial(&kn, kn.one(), (-shift) as usize));
        }
        kfun.quot(&np, &dp)
    }

    /// The residue field k_v = K_n(t) as a field handle.
    pub fn res_func_field(&self) -> RatFuncField<RField> {
        RatFuncField::new(self.res_field_at(self.nlevels()).clone())
    }
}
