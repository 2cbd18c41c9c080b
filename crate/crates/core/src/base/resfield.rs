//! The residue fields that occur in this library, behind one enum:
//!
//! * `FF` — finite fields F_{p^d} (residue fields on the x-side, where
//!   towers are flattened eagerly);
//! * `RF` — rational function fields F_q(t) (the residue field of the
//!   ground valuation on the function-field side);
//! * `EXT` — one algebraic layer on top of such a function field.
//!
//! Polynomial factorization over `FF` is complete. Over `RF` we factor the
//! shapes the valuation algorithms actually produce: full root enumeration
//! (a rational-root argument over F_q[t]), degree ≤ 3 remainders, and
//! binomials T^d - u via the classical irreducibility criterion. Anything
//! else reports `Unsupported` rather than guessing. Over `EXT` only linear
//! polynomials and T-powers are handled.

use super::algext::AlgExtField;
use super::field::Field;
use super::finite::{self, Fq};
use super::poly::Poly;
use super::ratfun::{RatFunc, RatFuncField};
use crate::error::{Error, Result};

pub type RFq = RatFuncField<Fq>;
pub type ExtRFq = AlgExtField<RFq>;

#[derive(Debug, Clone)]
pub enum RField {
    FF(Fq),
    RF(RFq),
    EXT(ExtRFq),
}

#[derive(Debug, Clone)]
pub enum REl {
    FF(Vec<u64>),
    RF(RatFunc<Fq>),
    EXT(Vec<RatFunc<Fq>>),
}

fn fq_name(f: &Fq) -> String {
    if f.deg() == 1 {
        format!("F_{}", f.p)
    } else {
        format!("F_{}^{}", f.p, f.deg())
    }
}

impl RField {
    pub fn prime(p: u64) -> RField {
        RField::FF(Fq::prime(p))
    }

    /// Short human-readable name of the field.
    pub fn descr(&self) -> String {
        match self {
            RField::FF(f) => fq_name(f),
            RField::RF(r) => format!("{}(s)", fq_name(&r.coeff)),
            RField::EXT(e) => format!(
                "degree-{} extension of {}(s)",
                e.modulus.deg(),
                fq_name(&e.base.coeff)
            ),
        }
    }

    pub fn as_ff(&self) -> &Fq {
        match self {
            RField::FF(f) => f,
            _ => panic!("residue field is not finite"),
        }
    }

    pub fn as_rf(&self) -> &RFq {
        match self {
            RField::RF(f) => f,
            _ => panic!("residue field is not a rational function field"),
        }
    }

    pub fn as_ext(&self) -> &ExtRFq {
        match self {
            RField::EXT(f) => f,
            _ => panic!("residue field is not an extension"),
        }
    }

    pub fn is_ff(&self) -> bool {
        matches!(self, RField::FF(_))
    }

    pub fn wrap_ff(&self, a: Vec<u64>) -> REl {
        debug_assert!(self.is_ff());
        REl::FF(a)
    }

    pub fn unwrap_ff(a: &REl) -> &Vec<u64> {
        match a {
            REl::FF(v) => v,
            _ => panic!("element is not in a finite field"),
        }
    }

    pub fn unwrap_rf(a: &REl) -> &RatFunc<Fq> {
        match a {
            REl::RF(v) => v,
            _ => panic!("element is not in a rational function field"),
        }
    }

    pub fn unwrap_ext(a: &REl) -> &Vec<RatFunc<Fq>> {
        match a {
            REl::EXT(v) => v,
            _ => panic!("element is not in an extension field"),
        }
    }

    /// Convert a polynomial over this field to the FF representation.
    pub fn poly_to_ff(&self, a: &Poly<RField>) -> Poly<Fq> {
        debug_assert!(self.is_ff());
        Poly {
            c: a.c.iter().map(|x| RField::unwrap_ff(x).clone()).collect(),
        }
    }

    pub fn poly_from_ff(&self, a: &Poly<Fq>) -> Poly<RField> {
        Poly {
            c: a.c.iter().map(|x| REl::FF(x.clone())).collect(),
        }
    }

    /// A flat, totally ordered encoding of an element, used to fix
    /// deterministic branch orders.
    pub fn el_key(&self, a: &REl) -> Vec<u64> {
        fn push_fq(out: &mut Vec<u64>, v: &[u64]) {
            out.push(v.len() as u64);
            out.extend_from_slice(v);
        }
        fn push_ratfunc(out: &mut Vec<u64>, r: &RatFunc<Fq>) {
            out.push(r.num.c.len() as u64);
            for c in &r.num.c {
                push_fq(out, c);
            }
            out.push(r.den.c.len() as u64);
            for c in &r.den.c {
                push_fq(out, c);
            }
        }
        let mut out = Vec::new();
        match a {
            REl::FF(v) => push_fq(&mut out, v),
            REl::RF(r) => push_ratfunc(&mut out, r),
            REl::EXT(v) => {
                out.push(v.len() as u64);
                for r in v {
                    push_ratfunc(&mut out, r);
                }
            }
        }
        out
    }

    pub fn poly_key(&self, a: &Poly<RField>) -> (i64, Vec<Vec<u64>>) {
        (a.deg(), a.c.iter().map(|x| self.el_key(x)).collect())
    }

    /// Factor a non-constant polynomial into monic irreducibles with
    /// multiplicities, sorted canonically. Complete over finite fields;
    /// over function fields, restricted to the supported shapes.
    pub fn factor(&self, a: &Poly<RField>) -> Result<Vec<(Poly<RField>, usize)>> {
        if a.deg() < 1 {
            return Err(Error::internal("factor() of a constant polynomial"));
        }
        let mut out = match self {
            RField::FF(f) => {
                let fa = self.poly_to_ff(a);
                finite::factor(f, &fa)
                    .into_iter()
                    .map(|(g, m)| (self.poly_from_ff(&g), m))
                    .collect::<Vec<_>>()
            }
            RField::RF(_) => self.rf_factor(a)?,
            RField::EXT(_) => self.ext_factor(a)?,
        };
        out.sort_by(|x, y| self.poly_key(&x.0).cmp(&self.poly_key(&y.0)));
        // Merge duplicates (can arise from binomial splits in char 2).
        let mut merged: Vec<(Poly<RField>, usize)> = Vec::new();
        for (g, m) in out {
            if let Some(last) = merged.last_mut() {
                if Poly::eq(self, &last.0, &g) {
                    last.1 += m;
                    continue;
                }
            }
            merged.push((g, m));
        }
        Ok(merged)
    }

    pub fn is_irreducible(&self, a: &Poly<RField>) -> Result<bool> {
        if a.deg() < 1 {
            return Ok(false);
        }
        if a.deg() == 1 {
            return Ok(true);
        }
        let fac = self.factor(a)?;
        Ok(fac.len() == 1 && fac[0].1 == 1)
    }

    // ----- function-field factorization -----

    fn rf_factor(&self, a: &Poly<RField>) -> Result<Vec<(Poly<RField>, usize)>> {
        let mut rem: Poly<RField> = a.monic(self);
        let mut out: Vec<(Poly<RField>, usize)> = Vec::new();
        // Strip all roots in F_q(t), with multiplicity.
        for r in self.rf_roots(&rem)? {
            let lin = Poly::from_coeffs(self, vec![self.neg(&REl::RF(r.clone())), self.one()]);
            let mut mult = 0usize;
            loop {
                let (q, s) = Poly::divmod(self, &rem, &lin);
                if !s.is_zero() {
                    break;
                }
                rem = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((lin, mult));
            }
        }
        if rem.deg() == 0 {
            return Ok(out);
        }
        if rem.deg() <= 3 {
            // No roots remain, so degree 2 or 3 means irreducible.
            out.push((rem, 1));
            return Ok(out);
        }
        // Binomial T^d - u?
        let d = rem.deg() as usize;
        let is_binomial = (1..d).all(|k| self.is_zero(&rem.coeff(self, k)));
        if !is_binomial {
            return Err(Error::unsupported(format!(
                "cannot factor a degree-{d} residual polynomial over a function field"
            )));
        }
        let u = self.neg(&rem.coeff(self, 0));
        let u = RField::unwrap_rf(&u).clone();
        for (g, m) in self.rf_binomial(d, &u)? {
            out.push((g, m));
        }
        Ok(out)
    }

    /// All roots of a monic polynomial in F_q(t), via the rational-root
    /// theorem over F_q[t] after clearing denominators.
    fn rf_roots(&self, a: &Poly<RField>) -> Result<Vec<RatFunc<Fq>>> {
        let rf = self.as_rf();
        let fq = &rf.coeff;
        // Common denominator D(t): lcm of coefficient denominators.
        let mut dlcm = Poly::one(fq);
        for c in &a.c {
            let den = &RField::unwrap_rf(c).den;
            let g = Poly::gcd(fq, &dlcm, den);
            dlcm = Poly::mul(fq, &dlcm, &Poly::divmod(fq, den, &g).0);
        }
        // Cleared coefficients n_j = c_j * D in F_q[t].
        let cleared: Vec<Poly<Fq>> = a
            .c
            .iter()
            .map(|c| {
                let r = RField::unwrap_rf(c);
                let (q, s) = Poly::divmod(fq, &Poly::mul(fq, &r.num, &dlcm), &r.den);
                debug_assert!(s.is_zero());
                q
            })
            .collect();
        let deg = a.deg() as usize;
        let mut roots = Vec::new();
        // Root zero first.
        if cleared[0].is_zero() {
            roots.push(rf.zero());
        }
        let n0 = &cleared[0];
        let lead = &cleared[deg];
        if n0.is_zero() {
            // Strip the T factor and recurse on the cofactor for the rest.
            let shifted = Poly::from_coeffs(self, a.c[1..].to_vec());
            if shifted.deg() >= 1 {
                for r in self.rf_roots(&shifted.monic(self))? {
                    if !roots.iter().any(|x: &RatFunc<Fq>| rf.eq(x, &r)) {
                        roots.push(r);
                    }
                }
            }
            return Ok(roots);
        }
        // Candidate numerators: unit * monic divisor of n0;
        // candidate denominators: monic divisor of lead.
        let num_divs = monic_divisors(fq, n0, 20000)?;
        let den_divs = monic_divisors(fq, lead, 20000)?;
        let units = nonzero_units(fq);
        for nd in &num_divs {
            for dd in &den_divs {
                // Skip non-reduced candidates.
                if Poly::gcd(fq, nd, dd).deg() != 0 {
                    continue;
                }
                for u in &units {
                    let cand = rf.quot(&Poly::scale(fq, nd, u), dd);
                    let val = Poly::eval(self, a, &REl::RF(cand.clone()));
                    if self.is_zero(&val) {
                        if !roots.iter().any(|x| rf.eq(x, &cand)) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        Ok(roots)
    }

    /// Factor T^d - u over F_q(t) (d >= 4, u != 0, no roots in the field).
    fn rf_binomial(&self, d: usize, u: &RatFunc<Fq>) -> Result<Vec<(Poly<RField>, usize)>> {
        let rf = self.as_rf();
        let fq = rf.coeff.clone();
        let mono = |k: usize, tail: Vec<(usize, RatFunc<Fq>)>| -> Poly<RField> {
            let mut c = vec![self.zero(); k + 1];
            c[k] = self.one();
            for (i, x) in tail {
                c[i] = REl::RF(x);
            }
            Poly::from_coeffs(self, c)
        };
        let full = mono(d, vec![(0, rf.neg(u))]);
        // Prime-wise l-th root extraction.
        let mut primes = Vec::new();
        let mut m = d;
        let mut r = 2;
        while r * r <= m {
            if m % r == 0 {
                primes.push(r);
                while m % r == 0 {
                    m /= r;
                }
            }
            r += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for l in primes.iter().copied() {
            if let Some(w) = lth_root_ratfunc(rf, u, l as u64) {
                // T^d - w^l = (T^{d/l} - w) * cofactor.
                let g1 = mono(d / l, vec![(0, rf.neg(&w))]);
                let (cof, s) = Poly::divmod(self, &full, &g1);
                assert!(s.is_zero(), "binomial split must divide exactly");
                let mut out = self.factor(&g1)?;
                out.extend(self.factor(&cof)?);
                return Ok(out);
            }
        }
        if d % 4 == 0 && fq.p != 2 {
            // u = -4 w^4 ⇒ T^d + 4w^4 = (T^{d/2} - 2wT^{d/4} + 2w^2)
            //                           * (T^{d/2} + 2wT^{d/4} + 2w^2).
            let quarter = rf.mul(&rf.neg(u), &rf.inv(&rf.from_i64(4)));
            if let Some(w) = lth_root_ratfunc(rf, &quarter, 4) {
                let two_w = rf.mul(&rf.from_i64(2), &w);
                let two_w2 = rf.mul(&rf.from_i64(2), &rf.mul(&w, &w));
                let g1 = mono(d / 2, vec![(d / 4, rf.neg(&two_w)), (0, two_w2.clone())]);
                let g2 = mono(d / 2, vec![(d / 4, two_w), (0, two_w2)]);
                let mut out = self.factor(&g1)?;
                out.extend(self.factor(&g2)?);
                return Ok(out);
            }
        }
        // Irreducible by the binomial criterion.
        Ok(vec![(full, 1)])
    }

    fn ext_factor(&self, a: &Poly<RField>) -> Result<Vec<(Poly<RField>, usize)>> {
        let mut rem = a.monic(self);
        let mut out: Vec<(Poly<RField>, usize)> = Vec::new();
        // T-power part.
        let mut tmult = 0usize;
        while rem.deg() >= 1 && self.is_zero(&rem.coeff(self, 0)) {
            rem = Poly::from_coeffs(self, rem.c[1..].to_vec());
            tmult += 1;
        }
        if tmult > 0 {
            out.push((Poly::x(self), tmult));
        }
        match rem.deg() {
            0 => Ok(out),
            1 => {
                out.push((rem, 1));
                Ok(out)
            }
            _ => Err(Error::unsupported(
                "factorization over a second-layer residue extension is limited to linear polynomials",
            )),
        }
    }
}

/// All monic divisors of a nonzero polynomial over F_q, capped.
fn monic_divisors(fq: &Fq, a: &Poly<Fq>, cap: usize) -> Result<Vec<Poly<Fq>>> {
    if a.deg() == 0 {
        return Ok(vec![Poly::one(fq)]);
    }
    let fac = finite::factor(fq, a);
    let mut count = 1usize;
    for (_, m) in &fac {
        count = count.saturating_mul(m + 1);
        if count > cap {
            return Err(Error::unsupported(
                "too many divisor candidates during root search",
            ));
        }
    }
    let mut out = vec![Poly::one(fq)];
    for (g, m) in &fac {
        let mut next = Vec::with_capacity(out.len() * (m + 1));
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*m {
                cur = Poly::mul(fq, &cur, g);
                next.push(cur.clone());
            }
        }
        out = next;
    }
    Ok(out)
}

fn nonzero_units(fq: &Fq) -> Vec<Vec<u64>> {
    fq.all_elements()
        .into_iter()
        .filter(|x| !fq.is_zero(x))
        .collect()
}

/// The l-th root of u in F_q(t), if one exists. Factors numerator and
/// denominator over F_q[t]; the constant-unit root is found by scanning F_q.
fn lth_root_ratfunc(rf: &RFq, u: &RatFunc<Fq>, l: u64) -> Option<RatFunc<Fq>> {
    let fq = &rf.coeff;
    if rf.is_zero(u) {
        return Some(rf.zero());
    }
    let mut unit = fq.inv(&u.den.lc(fq));
    unit = fq.mul(&unit, &u.num.lc(fq));
    let mut root_num = Poly::one(fq);
    let mut root_den = Poly::one(fq);
    for (part, acc) in [(&u.num, &mut root_num), (&u.den, &mut root_den)] {
        let monic = part.monic(fq);
        if monic.deg() >= 1 {
            for (g, m) in finite::factor(fq, &monic) {
                if (m as u64) % l != 0 {
                    return None;
                }
                *acc = Poly::mul(fq, acc, &Poly::pow(fq, &g, m as u64 / l));
            }
        }
    }
    // l-th root of the unit in F_q^*: brute scan (fields here are small).
    let unit_root = fq.all_elements().into_iter().find(|w| {
        if fq.is_zero(w) {
            return false;
        }
        let mut pw = fq.one();
        for _ in 0..l {
            pw = fq.mul(&pw, w);
        }
        fq.eq(&pw, &unit)
    })?;
    let num = Poly::scale(fq, &root_num, &unit_root);
    Some(rf.quot(&num, &root_den))
}

impl Field for RField {
    type El = REl;

    fn zero(&self) -> REl {
        match self {
            RField::FF(f) => REl::FF(f.zero()),
            RField::RF(f) => REl::RF(f.zero()),
            RField::EXT(f) => REl::EXT(f.zero()),
        }
    }
    fn one(&self) -> REl {
        match self {
            RField::FF(f) => REl::FF(f.one()),
            RField::RF(f) => REl::RF(f.one()),
            RField::EXT(f) => REl::EXT(f.one()),
        }
    }
    fn add(&self, a: &REl, b: &REl) -> REl {
        match (self, a, b) {
            (RField::FF(f), REl::FF(x), REl::FF(y)) => REl::FF(f.add(x, y)),
            (RField::RF(f), REl::RF(x), REl::RF(y)) => REl::RF(f.add(x, y)),
            (RField::EXT(f), REl::EXT(x), REl::EXT(y)) => REl::EXT(f.add(x, y)),
            _ => panic!("mixed residue-field elements"),
        }
    }
    fn neg(&self, a: &REl) -> REl {
        match (self, a) {
            (RField::FF(f), REl::FF(x)) => REl::FF(f.neg(x)),
            (RField::RF(f), REl::RF(x)) => REl::RF(f.neg(x)),
            (RField::EXT(f), REl::EXT(x)) => REl::EXT(f.neg(x)),
            _ => panic!("mixed residue-field elements"),
        }
    }
    fn mul(&self, a: &REl, b: &REl) -> REl {
        match (self, a, b) {
            (RField::FF(f), REl::FF(x), REl::FF(y)) => REl::FF(f.mul(x, y)),
            (RField::RF(f), REl::RF(x), REl::RF(y)) => REl::RF(f.mul(x, y)),
            (RField::EXT(f), REl::EXT(x), REl::EXT(y)) => REl::EXT(f.mul(x, y)),
            _ => panic!("mixed residue-field elements"),
        }
    }
    fn inv(&self, a: &REl) -> REl {
        match (self, a) {
            (RField::FF(f), REl::FF(x)) => REl::FF(f.inv(x)),
            (RField::RF(f), REl::RF(x)) => REl::RF(f.inv(x)),
            (RField::EXT(f), REl::EXT(x)) => REl::EXT(f.inv(x)),
            _ => panic!("mixed residue-field elements"),
        }
    }
    fn is_zero(&self, a: &REl) -> bool {
        match (self, a) {
            (RField::FF(f), REl::FF(x)) => f.is_zero(x),
            (RField::RF(f), REl::RF(x)) => f.is_zero(x),
            (RField::EXT(f), REl::EXT(x)) => f.is_zero(x),
            _ => panic!("mixed residue-field elements"),
        }
    }
    fn eq(&self, a: &REl, b: &REl) -> bool {
        match (self, a, b) {
            (RField::FF(f), REl::FF(x), REl::FF(y)) => f.eq(x, y),
            (RField::RF(f), REl::RF(x), REl::RF(y)) => f.eq(x, y),
            (RField::EXT(f), REl::EXT(x), REl::EXT(y)) => f.eq(x, y),
            _ => panic!("mixed residue-field elements"),
        }
    }
    fn from_i64(&self, n: i64) -> REl {
        match self {
            RField::FF(f) => REl::FF(f.from_i64(n)),
            RField::RF(f) => REl::RF(f.from_i64(n)),
            RField::EXT(f) => REl::EXT(f.from_i64(n)),
        }
    }
    fn fmt_el(&self, a: &REl) -> String {
        match (self, a) {
            (RField::FF(f), REl::FF(x)) => f.fmt_el(x),
            (RField::RF(f), REl::RF(x)) => f.fmt_el(x),
            (RField::EXT(f), REl::EXT(x)) => f.fmt_el(x),
            _ => panic!("mixed residue-field elements"),
        }
    }
}
