//! Key polynomials: testing, equivalence, augmentation, and lifting between
//! residual polynomials and keys.

use super::approx::TypeIVal;
use super::{build_level, MacVal, SMono, ValuedBase};
use crate::base::field::Field;
use crate::base::poly::Poly;
use crate::base::rat::{ExtRat, Rat};
use crate::base::ratfun::RatFunc;
use crate::base::resfield::{REl, RField};
use crate::error::{Error, Result};
use num_traits::Zero;

/// A pseudovaluation: a MacLane chain, or an infinite chain [v, φ=∞].
#[derive(Debug, Clone)]
pub enum PVal<B: ValuedBase> {
    Fin(MacVal<B>),
    Inf(TypeIVal<B>),
}

impl<B: ValuedBase> PVal<B> {
    pub fn value(&self, f: &Poly<B::CF>) -> ExtRat {
        match self {
            PVal::Fin(v) => v.value(f),
            PVal::Inf(v) => v.value(f),
        }
    }

    pub fn descr(&self) -> String {
        match self {
            PVal::Fin(v) => v.descr(),
            PVal::Inf(v) => v.descr(),
        }
    }

    pub fn fin(self) -> MacVal<B> {
        match self {
            PVal::Fin(v) => v,
            PVal::Inf(v) => panic!("expected a finite valuation, got {}", v.descr()),
        }
    }
}

/// Description of the residue ring Ā_v ≅ K_n[t]: the coefficient field and
/// a value-0 witness u (as num/den over the base field) with red(u) = t.
#[derive(Debug, Clone)]
pub struct ResidueRingDesc<B: ValuedBase> {
    pub field: RField,
    pub witness_num: Poly<B::CF>,
    pub witness_den: Poly<B::CF>,
    pub descr: String,
}

impl<B: ValuedBase> MacVal<B> {
    /// Is φ a key polynomial for v (monic, integral, v-irreducible,
    /// v-minimal)? Fails with `Unsupported` only when residual
    /// irreducibility cannot be decided over the residue field.
    pub fn is_key(&self, phi: &Poly<B::CF>) -> Result<bool> {
        let cf = self.cf();
        if phi.deg() < 1 || !phi.is_monic(cf) {
            return Ok(false);
        }
        match self.value_at(0, phi) {
            ExtRat::Fin(m0) => {
                if m0 < Rat::zero() {
                    return Ok(false);
                }
            }
            ExtRat::Inf => return Ok(false),
        }
        let n = self.nlevels();
        let r = self.resid_at(n, phi);
        let (top_deg, tau) = if n == 0 {
            (1, 1u64)
        } else {
            (self.levels[n - 1].phi.deg(), self.levels[n - 1].tau)
        };
        if r.j0 == 1 && r.r.deg() == 0 {
            // Equivalent to the last key: minimal iff same degree.
            Ok(phi.deg() == top_deg)
        } else if r.j0 == 0 && r.r.deg() >= 1 {
            if phi.deg() != r.r.deg() * tau as i64 * top_deg {
                return Ok(false);
            }
            self.res_field_at(n).is_irreducible(&r.r)
        } else {
            Ok(false)
        }
    }

    /// f ~_v g: v(f - g) > v(f) = v(g).
    pub fn is_equivalent(&self, f: &Poly<B::CF>, g: &Poly<B::CF>) -> Result<bool> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::invalid("equivalence is defined for nonzero inputs"));
        }
        let vf = self.value(f);
        let vg = self.value(g);
        if vf != vg {
            return Ok(false);
        }
        let d = Poly::sub(self.cf(), f, g);
        Ok(self.value(&d) > vf)
    }

    /// Does g v-divide f (∃h with f ~_v g·h)? Decided on residuals: the
    /// leading expansion exponents satisfy j0(g) ≤ j0(f) and the unit part
    /// of g's residual divides that of f.
    pub fn v_divides(&self, g: &Poly<B::CF>, f: &Poly<B::CF>) -> Result<bool> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::invalid("v-divisibility is defined for nonzero inputs"));
        }
        let n = self.nlevels();
        let rg = self.resid_at(n, g);
        let rf = self.resid_at(n, f);
        if rg.j0 > rf.j0 {
            return Ok(false);
        }
        let k = self.res_field_at(n);
        let (_, rem) = Poly::divmod(k, &rf.r, &rg.r);
        Ok(rem.is_zero())
    }

    /// The augmentation [v, v(φ) = λ]. Requires is_key(v, φ) and
    /// λ ≥ value(v, φ); equality returns v itself, λ = ∞ an infinite
    /// pseudovaluation. A key of the same degree as the last chain key
    /// replaces the last step so chains stay minimal.
    pub fn augment(&self, phi: &Poly<B::CF>, lam: &ExtRat) -> Result<PVal<B>> {
        if !self.is_key(phi)? {
            return Err(Error::NotAKey(format!(
                "{} is not a key polynomial for {}",
                phi.fmt_with(self.cf(), self.base.var()),
                self.descr()
            )));
        }
        self.augment_trusted(phi, lam)
    }

    /// `augment` without the key test (for keys produced by lifting, whose
    /// residual irreducibility may be undecidable over the residue field).
    pub fn augment_trusted(&self, phi: &Poly<B::CF>, lam: &ExtRat) -> Result<PVal<B>> {
        let cur = match self.value(phi) {
            ExtRat::Fin(c) => c,
            ExtRat::Inf => return Err(Error::invalid("cannot augment at the zero polynomial")),
        };
        match lam {
            ExtRat::Fin(l) if *l < cur => Err(Error::invalid(format!(
                "augmentation value {} is below the current value {}",
                crate::base::rat::fmt_rat(l),
                crate::base::rat::fmt_rat(&cur)
            ))),
            ExtRat::Fin(l) if *l == cur => Ok(PVal::Fin(self.clone())),
            _ => {
                let parent = if self
                    .last_phi()
                    .map_or(false, |last| last.deg() == phi.deg())
                {
                    self.truncate(self.nlevels() - 1)
                } else {
                    self.clone()
                };
                match lam {
                    ExtRat::Inf => Ok(PVal::Inf(TypeIVal::new(parent, phi.clone()))),
                    ExtRat::Fin(l) => {
                        let r = parent.resid_at(parent.nlevels(), phi);
                        let kpar = parent.res_field_at(parent.nlevels());
                        let psi = if r.r.deg() == 0 {
                            assert!(
                                r.eps >= 1,
                                "constant key residual must carry a generator power"
                            );
                            Poly::x(kpar)
                        } else {
                            assert_eq!(r.eps, 0, "mixed residual shape for a key polynomial");
                            r.r.monic(kpar)
                        };
                        let lvl = build_level(&parent, phi.clone(), l.clone(), psi)?;
                        let mut out = parent;
                        out.levels.push(lvl);
                        Ok(PVal::Fin(out))
                    }
                }
            }
        }
    }

    /// Realize a residue element as a polynomial: given 0 ≤ j < n,
    /// γ ∈ Γ_j and 0 ≠ c ∈ K_{j+1}, produce L with deg L < deg φ_{j+1},
    /// v_j(L) = γ, and image-in-K_{j+1}(red_{v_j}(L/S^{(j)}_γ)) = c.
    pub(crate) fn realize(&self, j: usize, gamma: &Rat, c: &REl) -> Poly<B::CF> {
        let kj1 = self.res_field_at(j + 1);
        assert!(!kj1.is_zero(c), "realize of zero");
        let cf = self.cf();
        let coords = self.decompose_step(j + 1, c);
        if j == 0 {
            // L = π^{γ g0} Σ_m lift(c_m) x^m.
            let g0 = self.base.gdenom0();
            let e = (gamma * Rat::from_integer(g0.into()))
                .to_integer()
                .try_into()
                .expect("small exponent");
            let s = self.cf().pow(&self.base.uniformizer(), e);
            let k0 = self.base.res_field();
            let mut out = Poly::zero();
            for (m, cm) in coords.iter().enumerate() {
                if k0.is_zero(cm) {
                    continue;
                }
                let lift = self.base.lift(cm);
                out = Poly::add(
                    cf,
                    &out,
                    &Poly::monomial(cf, cf.mul(&s, &lift), m),
                );
            }
            return out;
        }
        let lvl = &self.levels[j - 1];
        let tau = lvl.tau as i64;
        let s_g = self.std_monomial_at(j, gamma);
        let a = s_g.a[j - 1];
        let kj = self.res_field_at(j);
        let mut out = Poly::zero();
        for (m, cm) in coords.iter().enumerate() {
            if kj.is_zero(cm) {
                continue;
            }
            let k_m = a + (m as i64) * tau;
            let mu = gamma - &lvl.lam * Rat::from_integer(k_m.into());
            // M_m = φ_j^{k_m} S^{(j-1)}_{μ} / S^{(j)}_γ; red = u_m t_j^m.
            let s_mu = self.std_monomial_at(j - 1, &mu);
            let mut a_vec = vec![0i64; j];
            for (idx, e) in s_mu.a.iter().enumerate() {
                a_vec[idx] += e;
            }
            for (idx, e) in s_g.a.iter().enumerate() {
                a_vec[idx] -= e;
            }
            a_vec[j - 1] += k_m;
            let mono = SMono {
                c: s_mu.c - s_g.c,
                a: a_vec,
            };
            let (u, e) = self.monomial_red(j, &mono);
            assert_eq!(e, m as i64, "realize monomial exponent");
            let target = kj.div(cm, &u);
            let l_m = self.realize(j - 1, &mu, &target);
            out = Poly::add(
                cf,
                &out,
                &Poly::mul(cf, &l_m, &Poly::pow(cf, &lvl.phi, k_m as u64)),
            );
        }
        debug_assert_eq!(self.value_at(j, &out), ExtRat::Fin(gamma.clone()));
        out
    }

    /// Lift a monic irreducible residual polynomial ψ ∈ K_n[T] to a key
    /// polynomial φ with residual ψ (up to a unit) of minimal degree.
    pub fn lift_to_key(&self, psi: &Poly<RField>) -> Result<Poly<B::CF>> {
        let n = self.nlevels();
        let kn = self.res_field_at(n);
        if psi.deg() < 1 || !psi.is_monic(kn) {
            return Err(Error::invalid("lift_to_key needs a monic ψ of degree ≥ 1"));
        }
        if !kn.is_irreducible(psi)? {
            return Err(Error::invalid("lift_to_key needs an irreducible ψ"));
        }
        let cf = self.cf();
        if n == 0 {
            // Coefficient-wise lift (includes ψ = T ↦ x).
            let mut out = Poly::zero();
            for (k, c) in psi.c.iter().enumerate() {
                if kn.is_zero(c) {
                    continue;
                }
                out = Poly::add(cf, &out, &Poly::monomial(cf, self.base.lift(c), k));
            }
            return Ok(out);
        }
        // ψ = T picks out the class of the last key itself.
        if psi.deg() == 1 && kn.is_zero(&psi.coeff(kn, 0)) {
            return Ok(self.levels[n - 1].phi.clone());
        }
        let lvl = &self.levels[n - 1];
        let tau = lvl.tau as i64;
        let d = psi.deg();
        let dtl = &lvl.lam * Rat::from_integer((d * tau).into());
        let s_dtl = self.std_monomial_at(n, &dtl);
        assert_eq!(s_dtl.a[n - 1], 0, "top standard monomial avoids φ_n");
        let s_tl = self.std_monomial_at(n - 1, &(&lvl.lam * Rat::from_integer(tau.into())));
        // U_d: image of S_{τλ}^d / S_{dτλ} (value-0, lower levels only).
        let mut a_vec = vec![0i64; n - 1];
        for (idx, e) in s_tl.a.iter().enumerate() {
            a_vec[idx] += d * e;
        }
        for (idx, e) in s_dtl.a.iter().enumerate().take(n - 1) {
            a_vec[idx] -= e;
        }
        let u_d = self.mono_image(
            n,
            &SMono {
                c: d * s_tl.c - s_dtl.c,
                a: a_vec,
            },
        );
        let mut phi = Poly::pow(cf, &lvl.phi, (d * tau) as u64);
        for (k, psik) in psi.c.iter().enumerate().take(d as usize) {
            if kn.is_zero(psik) {
                continue;
            }
            let k = k as i64;
            let mu = &lvl.lam * Rat::from_integer(((d - k) * tau).into());
            // W_k: image of S_μ S_{τλ}^k / S_{dτλ}.
            let s_mu = self.std_monomial_at(n - 1, &mu);
            let mut a_vec = vec![0i64; n - 1];
            for (idx, e) in s_mu.a.iter().enumerate() {
                a_vec[idx] += e;
            }
            for (idx, e) in s_tl.a.iter().enumerate() {
                a_vec[idx] += k * e;
            }
            for (idx, e) in s_dtl.a.iter().enumerate().take(n - 1) {
                a_vec[idx] -= e;
            }
            let w_k = self.mono_image(
                n,
                &SMono {
                    c: s_mu.c + k * s_tl.c - s_dtl.c,
                    a: a_vec,
                },
            );
            let c_k = kn.div(&kn.mul(&u_d, psik), &w_k);
            let l_k = self.realize(n - 1, &mu, &c_k);
            phi = Poly::add(
                cf,
                &phi,
                &Poly::mul(cf, &l_k, &Poly::pow(cf, &lvl.phi, (k * tau) as u64)),
            );
        }
        // Verify: the residual of φ must be ψ again (up to the unit U_d).
        let r = self.resid_at(n, &phi);
        let back = r.r.monic(kn);
        if r.j0 != 0 || !Poly::eq(kn, &back, psi) {
            return Err(Error::internal(format!(
                "key lift verification failed for ψ = {}",
                psi.fmt_with(kn, "T")
            )));
        }
        match self.value_at(0, &phi) {
            ExtRat::Fin(m0) if m0 >= Rat::zero() => {}
            _ => {
                return Err(Error::internal(
                    "key lift produced a non-integral polynomial",
                ))
            }
        }
        Ok(phi)
    }

    /// Lift an element of the residue field k_v = K_n(t) back to a quotient
    /// num/den over the base, inverse to `reduce_elt`.
    pub fn lift_elt(&self, r: &RatFunc<RField>) -> (Poly<B::CF>, Poly<B::CF>) {
        let (ln, ld) = (self.lift_res_poly(&r.num), self.lift_res_poly(&r.den));
        let cf = self.cf();
        (
            Poly::mul(cf, &ln.0, &ld.1),
            Poly::mul(cf, &ln.1, &ld.0),
        )
    }

    /// Lift a polynomial Σ c_k t^k in the residue-ring generator: t lifts
    /// to φ_n^{τ}/S_{τλ} and the coefficients through `realize`. Returns a
    /// num/den pair.
    fn lift_res_poly(&self, rp: &Poly<RField>) -> (Poly<B::CF>, Poly<B::CF>) {
        let n = self.nlevels();
        let kn = self.res_field_at(n);
        let cf = self.cf();
        assert!(!rp.is_zero(), "lift of zero");
        if n == 0 {
            // t = red(x): coefficient-wise lift, denominator 1.
            let mut out = Poly::zero();
            for (k, c) in rp.c.iter().enumerate() {
                if kn.is_zero(c) {
                    continue;
                }
                out = Poly::add(cf, &out, &Poly::monomial(cf, self.base.lift(c), k));
            }
            return (out, Poly::one(cf));
        }
        let lvl = &self.levels[n - 1];
        let tau = lvl.tau;
        let tl = &lvl.lam * Rat::from_integer(tau.into());
        let s_tl = self.std_monomial_at(n - 1, &tl);
        // t^k = φ^{kτ} / S_{τλ}^k; common denominator S_{τλ}^{deg}.
        let deg = rp.deg() as usize;
        let (s_num, s_den) = self.smono_elem(&SMono {
            c: s_tl.c,
            a: s_tl.a.clone(),
        });
        // t^k = φ^{kτ} s_den^k / s_num^k; put everything over s_num^deg.
        let mut num = Poly::zero();
        for (k, c) in rp.c.iter().enumerate() {
            if kn.is_zero(c) {
                continue;
            }
            let ck = self.realize(n - 1, &Rat::zero(), c);
            let mut term = Poly::mul(cf, &ck, &Poly::pow(cf, &lvl.phi, k as u64 * tau));
            term = Poly::mul(cf, &term, &Poly::pow(cf, &s_den, k as u64));
            term = Poly::mul(cf, &term, &Poly::pow(cf, &s_num, (deg - k) as u64));
            num = Poly::add(cf, &num, &term);
        }
        let den = Poly::pow(cf, &s_num, deg as u64);
        (num, den)
    }

    /// The residue ring Ā_v ≅ K_n[t] with a witness for t.
    pub fn residue_ring(&self) -> ResidueRingDesc<B> {
        let n = self.nlevels();
        let kn = self.res_field_at(n).clone();
        let cf = self.cf();
        if n == 0 {
            return ResidueRingDesc {
                descr: format!("{}[t], t = red({})", kn.descr(), self.base.var()),
                field: kn,
                witness_num: Poly::x(cf),
                witness_den: Poly::one(cf),
            };
        }
        let lvl = &self.levels[n - 1];
        let tl = &lvl.lam * Rat::from_integer(lvl.tau.into());
        let s = self.std_monomial_at(n - 1, &tl);
        let (s_num, s_den) = self.smono_elem(&SMono { c: s.c, a: s.a });
        let num = Poly::mul(cf, &Poly::pow(cf, &lvl.phi, lvl.tau), &s_den);
        ResidueRingDesc {
            descr: format!(
                "{}[t], t = red({}^{}/S)",
                kn.descr(),
                lvl.phi.fmt_with(cf, self.base.var()),
                lvl.tau
            ),
            field: kn,
            witness_num: num,
            witness_den: s_num,
        }
    }

    /// The canonical uniformizer monomial: value 1/gdenom, key exponents in
    /// [0, τ_k) (hence nonnegative), base-uniformizer power of any sign.
    pub fn uniformizer_smono(&self) -> SMono {
        let g = Rat::new(1.into(), self.gdenom().into());
        self.std_monomial(&g)
    }

    /// The uniformizer as a num/den pair over the base.
    pub fn uniformizer_elt(&self) -> (Poly<B::CF>, Poly<B::CF>) {
        self.smono_elem(&self.uniformizer_smono())
    }
}
