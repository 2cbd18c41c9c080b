//! Infinite pseudovaluations and approximants of the valuations attached to
//! the irreducible factors of a polynomial.
//!
//! `approximants` separates the factors of a monic integral G over the
//! completion of the base by walking augmentation chains: at each finite
//! valuation the residual of G is factored, each factor is lifted to a key,
//! and Newton-polygon slopes decide the next value. A branch ends either in
//! an exact factor of G (an infinite chain [v, φ=∞]) or, once its residual
//! multiplicity drops to 1, in an `InfPoint`: a finite chain that can be
//! refined on demand toward the factor it brackets.

use super::{phi_expansion, MacVal, ValuedBase};
use crate::base::field::Field;
use crate::base::poly::Poly;
use crate::base::rat::{fmt_rat, ExtRat, Rat};
use crate::error::{Error, Result};
use std::cell::RefCell;

/// The infinite pseudovaluation [v, v(g) = ∞]: value ∞ exactly on multiples
/// of g, elsewhere the chain value of the remainder mod g.
#[derive(Debug, Clone)]
pub struct TypeIVal<B: ValuedBase> {
    pub chain: MacVal<B>,
    pub g: Poly<B::CF>,
}

impl<B: ValuedBase> TypeIVal<B> {
    /// Build [chain, g=∞] in minimal form (a last chain key of the same
    /// degree as g is dropped, since remainders mod g cannot see it).
    pub fn new(chain: MacVal<B>, g: Poly<B::CF>) -> TypeIVal<B> {
        let mut chain = chain;
        while chain
            .last_phi()
            .map_or(false, |last| last.deg() == g.deg())
        {
            chain = chain.truncate(chain.nlevels() - 1);
        }
        TypeIVal { chain, g }
    }

    pub fn value(&self, f: &Poly<B::CF>) -> ExtRat {
        if f.is_zero() {
            return ExtRat::Inf;
        }
        let rem = Poly::rem(self.chain.cf(), f, &self.g);
        if rem.is_zero() {
            ExtRat::Inf
        } else {
            self.chain.value(&rem)
        }
    }

    /// The predecessors: every truncation of the chain, and the chain.
    pub fn predecessors(&self) -> Vec<MacVal<B>> {
        let mut out = self.chain.predecessors();
        out.push(self.chain.clone());
        out
    }

    pub fn descr(&self) -> String {
        let mut s = self.chain.descr();
        s.truncate(s.len() - 1);
        format!(
            "{}, v({})=inf]",
            s,
            self.g.fmt_compact(self.chain.cf(), self.chain.base.var())
        )
    }
}

#[derive(Debug, Clone)]
struct InfState<B: ValuedBase> {
    cur: MacVal<B>,
    exact: Option<TypeIVal<B>>,
    steps: u32,
}

/// A convergent approximation of the pseudovaluation attached to one
/// irreducible factor g (over the completion) of a target polynomial: a
/// finite chain whose last key brackets g, refinable to any precision.
#[derive(Debug, Clone)]
pub struct InfPoint<B: ValuedBase> {
    /// The relevant cofactor of the original polynomial (exact factors
    /// found on the way to this branch are divided out).
    target: Poly<B::CF>,
    state: RefCell<InfState<B>>,
}

/// Hard cap on refinement steps; this many failures to separate means the
/// input was not squarefree or a value failed to stabilize.
const REFINE_CAP: u32 = 64;

impl<B: ValuedBase> InfPoint<B> {
    fn new(cur: MacVal<B>, target: Poly<B::CF>) -> InfPoint<B> {
        InfPoint {
            target,
            state: RefCell::new(InfState {
                cur,
                exact: None,
                steps: 0,
            }),
        }
    }

    /// The current approximating chain [v, φ = λ].
    pub fn chain(&self) -> MacVal<B> {
        self.state.borrow().cur.clone()
    }

    /// The cofactor this point approximates a factor of.
    pub fn target(&self) -> &Poly<B::CF> {
        &self.target
    }

    /// The current approximation φ of the factor (same degree as the
    /// factor itself).
    pub fn last_key(&self) -> Poly<B::CF> {
        self.state.borrow().cur.last_phi().unwrap().clone()
    }

    /// The exact factor, when refinement has pinned it down in the base.
    pub fn exact(&self) -> Option<TypeIVal<B>> {
        self.state.borrow().exact.clone()
    }

    /// Predecessors of the limit valuation: all proper truncations of the
    /// current chain (its last level is approximation noise; in the true
    /// chain it is replaced by the factor itself at value ∞).
    pub fn predecessors(&self) -> Vec<MacVal<B>> {
        self.state.borrow().cur.predecessors()
    }

    pub fn descr(&self) -> String {
        let st = self.state.borrow();
        if let Some(t) = &st.exact {
            return t.descr();
        }
        let mut s = st.cur.truncate(st.cur.nlevels() - 1).descr();
        s.truncate(s.len() - 1);
        let lvl = st.cur.levels.last().unwrap();
        format!(
            "{}, v({})=inf~ (≥ {})]",
            s,
            lvl.phi.fmt_compact(st.cur.cf(), st.cur.base.var()),
            fmt_rat(&lvl.lam)
        )
    }

    /// One refinement step: replace the last key by a strictly better
    /// approximation of the factor (or discover the factor exactly).
    pub fn deepen(&self) -> Result<()> {
        let mut st = self.state.borrow_mut();
        if st.exact.is_some() {
            return Ok(());
        }
        if st.steps >= REFINE_CAP {
            return Err(Error::internal(
                "factor approximation did not converge (is the input squarefree?)",
            ));
        }
        st.steps += 1;
        let cur = st.cur.clone();
        let cf = cur.cf();
        let phi = cur.last_phi().unwrap().clone();
        let parts = phi_expansion(cf, &self.target, &phi);
        if parts[0].is_zero() {
            st.exact = Some(TypeIVal::new(cur.clone(), phi));
            return Ok(());
        }
        // The tracked factor shows up as a linear residual factor; lift it
        // to the next same-degree key.
        let r = cur.full_residual(&self.target);
        let kn = cur.res_field_at(cur.nlevels());
        assert_eq!(
            r.r.deg(),
            1,
            "simple branch refines through a linear residual"
        );
        assert_eq!(cur.levels.last().unwrap().tau, 1, "simple branch is unramified");
        let psi = r.r.monic(kn);
        let phi_next = cur.lift_to_key(&psi)?;
        assert_eq!(phi_next.deg(), phi.deg());
        match newton_lambda(&cur, &phi_next, &self.target) {
            ExtRat::Inf => {
                st.exact = Some(TypeIVal::new(cur.clone(), phi_next));
            }
            ExtRat::Fin(lam_next) => {
                assert!(
                    &lam_next > &cur.levels.last().unwrap().lam,
                    "refinement strictly increases the approximation value"
                );
                let next = cur
                    .augment_trusted(&phi_next, &ExtRat::Fin(lam_next))?
                    .fin();
                st.cur = next;
            }
        }
        Ok(())
    }

    /// The value of the limit pseudovaluation on f, refined until it is
    /// certified (the expansion value is attained by the φ-free term
    /// alone, so no further refinement can change it).
    pub fn certified_value(&self, f: &Poly<B::CF>) -> Result<ExtRat> {
        if f.is_zero() {
            return Ok(ExtRat::Inf);
        }
        for _ in 0..=REFINE_CAP {
            {
                let st = self.state.borrow();
                if let Some(t) = &st.exact {
                    return Ok(t.value(f));
                }
                let cur = &st.cur;
                let phi = cur.last_phi().unwrap();
                if let Some(v) = stable_value(cur, phi, f) {
                    return Ok(v);
                }
            }
            self.deepen()?;
        }
        Err(Error::internal(
            "value did not stabilize under refinement (shared factor with the target?)",
        ))
    }
}

/// The chain value of f at v if the minimum of the φ-expansion is attained
/// by the j = 0 term alone (then every deeper refinement gives the same
/// value, since only j ≥ 1 terms grow).
fn stable_value<B: ValuedBase>(
    v: &MacVal<B>,
    phi: &Poly<B::CF>,
    f: &Poly<B::CF>,
) -> Option<ExtRat> {
    let n = v.nlevels();
    let lam = &v.levels[n - 1].lam;
    let parts = phi_expansion(v.cf(), f, phi);
    if parts[0].is_zero() {
        return None;
    }
    let v0 = v.value_at(n - 1, &parts[0]);
    for (j, fj) in parts.iter().enumerate().skip(1) {
        if fj.is_zero() {
            continue;
        }
        let vj = v.value_at(n - 1, fj) + ExtRat::Fin(lam * Rat::from_integer(j.into()));
        if vj <= v0 {
            return None;
        }
    }
    Some(v0)
}

/// max_{j≥1} (V_0 - V_j)/j for the φ-expansion of g: the value the factor
/// tracked through φ assigns to φ. Inf when φ divides g exactly.
fn newton_lambda<B: ValuedBase>(
    v: &MacVal<B>,
    phi: &Poly<B::CF>,
    g: &Poly<B::CF>,
) -> ExtRat {
    let parts = phi_expansion(v.cf(), g, phi);
    if parts[0].is_zero() {
        return ExtRat::Inf;
    }
    let v0 = v.value(&parts[0]).finite().unwrap().clone();
    let mut best: Option<Rat> = None;
    for (j, fj) in parts.iter().enumerate().skip(1) {
        if fj.is_zero() {
            continue;
        }
        let vj = v.value(fj).finite().unwrap().clone();
        let slope = (&v0 - &vj) / Rat::from_integer(j.into());
        if best.as_ref().map_or(true, |b| &slope > b) {
            best = Some(slope);
        }
    }
    ExtRat::Fin(best.expect("nonconstant expansion"))
}

/// One separated branch of the target polynomial.
#[derive(Debug, Clone)]
pub enum Approximant<B: ValuedBase> {
    /// An exact irreducible factor over the base, with its multiplicity.
    Exact { val: TypeIVal<B>, mult: usize },
    /// A refinable approximant of a factor over the completion.
    Approx(InfPoint<B>),
}

impl<B: ValuedBase> Approximant<B> {
    /// The finite chain currently describing this branch.
    pub fn chain(&self) -> MacVal<B> {
        match self {
            Approximant::Exact { val, .. } => val.chain.clone(),
            Approximant::Approx(ip) => ip.chain(),
        }
    }

    pub fn descr(&self) -> String {
        match self {
            Approximant::Exact { val, mult } => {
                if *mult == 1 {
                    val.descr()
                } else {
                    format!("{} (multiplicity {})", val.descr(), mult)
                }
            }
            Approximant::Approx(ip) => ip.descr(),
        }
    }

    /// Degree of the factor this branch tracks (not counting multiplicity).
    pub fn factor_degree(&self) -> i64 {
        match self {
            Approximant::Exact { val, .. } => val.g.deg(),
            Approximant::Approx(ip) => ip.last_key().deg(),
        }
    }

    pub fn value(&self, f: &Poly<B::CF>) -> Result<ExtRat> {
        match self {
            Approximant::Exact { val, .. } => Ok(val.value(f)),
            Approximant::Approx(ip) => ip.certified_value(f),
        }
    }

    pub fn predecessors(&self) -> Vec<MacVal<B>> {
        match self {
            Approximant::Exact { val, .. } => val.predecessors(),
            Approximant::Approx(ip) => ip.predecessors(),
        }
    }
}

/// Lower convex hull of points with strictly increasing x.
fn lower_hull(pts: &[(i64, Rat)]) -> Vec<(i64, Rat)> {
    let mut h: Vec<(i64, Rat)> = Vec::new();
    for p in pts {
        while h.len() >= 2 {
            let a = &h[h.len() - 2];
            let b = &h[h.len() - 1];
            let lhs = (&b.1 - &a.1) * Rat::from_integer((p.0 - a.0).into());
            let rhs = (&p.1 - &a.1) * Rat::from_integer((b.0 - a.0).into());
            if lhs >= rhs {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p.clone());
    }
    h
}

/// The Newton-polygon sides of the φ-expansion of g at v with slope
/// steeper than v(φ): pairs (μ, horizontal length), steepest first.
fn principal_slopes<B: ValuedBase>(
    v: &MacVal<B>,
    phi: &Poly<B::CF>,
    g: &Poly<B::CF>,
) -> Vec<(Rat, i64)> {
    let vphi = v.value(phi).finite().expect("key has finite value").clone();
    let parts = phi_expansion(v.cf(), g, phi);
    let mut pts: Vec<(i64, Rat)> = Vec::new();
    for (j, fj) in parts.iter().enumerate() {
        if fj.is_zero() {
            continue;
        }
        pts.push((j as i64, v.value(fj).finite().unwrap().clone()));
    }
    let hull = lower_hull(&pts);
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let (x1, y1) = (&w[0].0, &w[0].1);
        let (x2, y2) = (&w[1].0, &w[1].1);
        let mu = (y1 - y2) / Rat::from_integer((x2 - x1).into());
        if mu > vphi {
            out.push((mu, x2 - x1));
        }
    }
    out
}

/// Separate the irreducible factors of a monic integral g over the
/// completion of the base: one approximant per factor (an exact infinite
/// chain when the factor lies in the base field, refinable otherwise).
pub fn approximants<B: ValuedBase>(base: &B, g: &Poly<B::CF>) -> Result<Vec<Approximant<B>>> {
    let cf = base.cfield();
    if g.deg() < 1 {
        return Err(Error::invalid("factor separation needs degree ≥ 1"));
    }
    if !g.is_monic(cf) {
        return Err(Error::invalid("factor separation needs a monic polynomial"));
    }
    let v0 = super::gauss(base.clone());
    match v0.value(g) {
        ExtRat::Fin(m) if m == Rat::from_integer(0.into()) => {}
        _ => {
            return Err(Error::invalid(
                "factor separation needs integral coefficients",
            ))
        }
    }

    // Repeated factors keep their residual multiplicity at every depth and
    // would never refine down to single branches, so split the squarefree
    // parts first and search each separately (they are pairwise coprime).
    let mut out: Vec<Approximant<B>> = Vec::new();
    for (part, mult) in squarefree_parts(cf, g) {
        branch_search(base, &v0, &part, mult, &mut out)?;
    }
    Ok(out)
}

/// The squarefree decomposition g = ∏_k p_k^k (Yun's algorithm,
/// characteristic zero), with the p_k monic and pairwise coprime.
pub(crate) fn squarefree_parts<F: Field>(cf: &F, g: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let gp = Poly::derivative(cf, g);
    let a = Poly::gcd(cf, g, &gp);
    let mut b = Poly::divmod(cf, g, &a).0;
    let mut c = Poly::divmod(cf, &gp, &a).0;
    let mut k = 1usize;
    let mut out = Vec::new();
    while b.deg() >= 1 {
        let d = Poly::sub(cf, &c, &Poly::derivative(cf, &b));
        let p = Poly::gcd(cf, &b, &d);
        if p.deg() >= 1 {
            out.push((p.clone(), k));
        }
        b = Poly::divmod(cf, &b, &p).0;
        c = Poly::divmod(cf, &d, &p).0;
        k += 1;
    }
    out
}

/// Search the branches of one squarefree monic integral `part`, appending
/// an approximant per p-adically irreducible factor. Exact multiplicities
/// are scaled by `gmult`, the part's multiplicity in the original input.
fn branch_search<B: ValuedBase>(
    base: &B,
    v0: &MacVal<B>,
    part: &Poly<B::CF>,
    gmult: usize,
    out: &mut Vec<Approximant<B>>,
) -> Result<()> {
    let cf = base.cfield();
    // Worklist of (v, φ key for v, residual multiplicity, remaining target).
    let mut stack: Vec<(MacVal<B>, Poly<B::CF>, i64, Poly<B::CF>)> = Vec::new();

    // Seed from the Gauss residual: the t-power branch lifts to the
    // variable itself, the unit-part factors to their coefficient lifts.
    let r0 = v0.resid_at(0, part);
    let k0 = base.res_field();
    let mut seeds: Vec<(Poly<crate::base::resfield::RField>, usize)> = Vec::new();
    if r0.j0 >= 1 {
        seeds.push((Poly::x(k0), r0.j0 as usize));
    }
    if r0.r.deg() >= 1 {
        let mut fac = k0.factor(&r0.r)?;
        fac.sort_by_key(|(p, _)| k0.poly_key(p));
        seeds.extend(fac);
    }
    // Deterministic order: degree, then coefficient encoding.
    seeds.sort_by_key(|(p, _)| k0.poly_key(p));
    for (psi, e) in seeds.into_iter().rev() {
        let phi = v0.lift_to_key(&psi)?;
        stack.push((v0.clone(), phi, e as i64, part.clone()));
    }

    let mut covered = 0i64;
    let mut guard = 0usize;
    while let Some((v, phi, rho, target)) = stack.pop() {
        guard += 1;
        if guard > 10_000 {
            return Err(Error::internal("factor separation did not terminate"));
        }
        // Exact division first.
        let mut rem_target = target;
        let mut mult = 0usize;
        loop {
            let (q, r) = Poly::divmod(cf, &rem_target, &phi);
            if !r.is_zero() {
                break;
            }
            rem_target = q;
            mult += 1;
        }
        if mult >= 1 {
            covered += phi.deg() * mult as i64;
            out.push(Approximant::Exact {
                val: TypeIVal::new(v.clone(), phi.clone()),
                mult: mult * gmult,
            });
        }
        let rho = rho - mult as i64;
        if rho <= 0 {
            assert_eq!(rho, 0, "multiplicity accounting");
            continue;
        }
        if rho == 1 {
            // A single simple factor remains in this branch. When the whole
            // remaining cofactor has the branch degree, it IS the factor.
            if phi.deg() == rem_target.deg() {
                covered += rem_target.deg();
                out.push(Approximant::Exact {
                    val: TypeIVal::new(v.clone(), rem_target),
                    mult: gmult,
                });
                continue;
            }
            // Otherwise emit a refinable approximant at the Newton value.
            let lam = newton_lambda(&v, &phi, &rem_target);
            match lam {
                ExtRat::Inf => unreachable!("exact factors were divided out"),
                ExtRat::Fin(l) => {
                    let cur = v.augment_trusted(&phi, &ExtRat::Fin(l))?.fin();
                    covered += phi.deg();
                    out.push(Approximant::Approx(InfPoint::new(cur, rem_target)));
                }
            }
            continue;
        }
        // Several factors left: split along Newton slopes and residual
        // factors one level deeper.
        let slopes = principal_slopes(&v, &phi, &rem_target);
        let total: i64 = slopes.iter().map(|(_, l)| l).sum();
        assert_eq!(total, rho, "principal polygon length matches multiplicity");
        for (mu, len) in slopes {
            let w = v.augment_trusted(&phi, &ExtRat::Fin(mu))?.fin();
            let rw = w.full_residual(&rem_target);
            let kw = w.res_field_at(w.nlevels());
            let tau = w.levels.last().unwrap().tau as i64;
            assert_eq!(
                rw.r.deg() * tau,
                len,
                "residual degree accounts for the slope length"
            );
            let mut fac = kw.factor(&rw.r)?;
            fac.sort_by_key(|(p, _)| kw.poly_key(p));
            // A residual factor ψ^e tracks e completion factors counted in
            // units of the lifted key's degree.
            for (psi, e) in fac.into_iter().rev() {
                let psi = psi.monic(kw);
                let phi_next = w.lift_to_key(&psi)?;
                stack.push((w.clone(), phi_next, e as i64, rem_target.clone()));
            }
        }
    }

    // Every factor of the squarefree part is covered exactly once.
    assert_eq!(covered, part.deg(), "approximants cover the full degree");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::field::QQ;
    use crate::base::poly::QPoly;
    use crate::base::rat::{rat, rat_i64};
    use crate::maclane::tests::{q2, q3};

    #[test]
    fn exact_branch_x2_plus_81() {
        let g = QPoly::from_i64s(&[81, 0, 1]);
        let br = approximants(&q3(), &g).unwrap();
        assert_eq!(br.len(), 1);
        match &br[0] {
            Approximant::Exact { val, mult } => {
                assert_eq!(*mult, 1);
                assert_eq!(val.descr(), "[v0, v(x)=2, v(x^2+81)=inf]");
                assert_eq!(val.value(&g), ExtRat::Inf);
                assert_eq!(val.value(&QPoly::from_i64s(&[0, 1])), ExtRat::Fin(rat_i64(2)));
                let pred = val.predecessors();
                assert_eq!(pred.len(), 2);
                assert_eq!(pred[1].descr(), "[v0, v(x)=2]");
            }
            Approximant::Approx(_) => panic!("expected an exact branch"),
        }
    }

    #[test]
    fn linear_factors_terminate() {
        let g = QPoly::from_i64s(&[-5, 1]);
        let br = approximants(&q2(), &g).unwrap();
        assert_eq!(br.len(), 1);
        match &br[0] {
            Approximant::Exact { val, mult } => {
                assert_eq!(*mult, 1);
                assert_eq!(val.descr(), "[v0, v(x-5)=inf]");
            }
            Approximant::Approx(_) => panic!("expected an exact branch"),
        }
    }

    #[test]
    fn split_branches_x2_minus_1() {
        let g = QPoly::from_i64s(&[-1, 0, 1]);
        let br = approximants(&q3(), &g).unwrap();
        assert_eq!(br.len(), 2);
        assert_eq!(br.iter().map(Approximant::factor_degree).sum::<i64>(), 2);
        let exact: Vec<_> = br
            .iter()
            .filter_map(|b| match b {
                Approximant::Exact { val, .. } => Some(val),
                _ => None,
            })
            .collect();
        assert_eq!(exact.len(), 1);
        assert!(Poly::eq(&QQ, &exact[0].g, &QPoly::from_i64s(&[1, 1])));
        let ip = br
            .iter()
            .find_map(|b| match b {
                Approximant::Approx(ip) => Some(ip),
                _ => None,
            })
            .unwrap();
        assert_eq!(ip.chain().descr(), "[v0, v(x+2)=1]");
        // The units around the second branch have certified values.
        assert_eq!(
            ip.certified_value(&QPoly::from_i64s(&[0, 1])).unwrap(),
            ExtRat::zero()
        );
        // One refinement step moves strictly closer to x - 1.
        ip.deepen().unwrap();
        assert_eq!(ip.chain().descr(), "[v0, v(x+8)=2]");
        assert!(ip.exact().is_none());
    }

    #[test]
    fn mixed_branches_sum_to_degree() {
        // x(x - 1)(x^2 + 3) over Q_3: x and x^2 + 3 exact, x - 1 approximated.
        let g = QPoly::from_i64s(&[0, -3, 3, -1, 1]);
        let br = approximants(&q3(), &g).unwrap();
        assert_eq!(br.len(), 3);
        assert_eq!(br.iter().map(Approximant::factor_degree).sum::<i64>(), 4);
        let n_exact = br
            .iter()
            .filter(|b| matches!(b, Approximant::Exact { .. }))
            .count();
        assert_eq!(n_exact, 2);
        for b in &br {
            // Every branch value is consistent with a factorization of g:
            // the branch point evaluates g to at least its own target value.
            match b {
                Approximant::Exact { val, .. } => assert_eq!(val.value(&g), ExtRat::Inf),
                Approximant::Approx(ip) => {
                    assert!(ip.chain().value(&g) != ExtRat::Inf);
                }
            }
        }
    }

    #[test]
    fn irrational_branches_refine_forever() {
        // x^2 - 17 splits over Q_2 into two conjugate 2-adic branches.
        let g = QPoly::from_i64s(&[-17, 0, 1]);
        let br = approximants(&q2(), &g).unwrap();
        assert_eq!(br.len(), 2);
        for b in &br {
            let ip = match b {
                Approximant::Approx(ip) => ip,
                Approximant::Exact { .. } => panic!("x^2 - 17 has no rational roots"),
            };
            assert_eq!(ip.last_key().deg(), 1);
            let before = ip.chain().last_lam().cloned().unwrap();
            ip.deepen().unwrap();
            ip.deepen().unwrap();
            let after = ip.chain().last_lam().cloned().unwrap();
            assert!(after > before);
            assert!(ip.exact().is_none());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(approximants(&q2(), &QPoly::from_i64s(&[3])).is_err());
        assert!(approximants(&q2(), &QPoly::from_i64s(&[1, 2])).is_err());
        let half = QPoly::from_coeffs(&QQ, vec![rat(1, 2), rat_i64(1)]);
        assert!(approximants(&q2(), &half).is_err());
    }

    #[test]
    fn repeated_factors_carry_multiplicity() {
        // (x - 1)^2 (x + 1) over Q_3.
        let g = Poly::mul(
            &QQ,
            &Poly::mul(&QQ, &QPoly::from_i64s(&[-1, 1]), &QPoly::from_i64s(&[-1, 1])),
            &QPoly::from_i64s(&[1, 1]),
        );
        let br = approximants(&q3(), &g).unwrap();
        assert_eq!(br.len(), 2);
        assert_eq!(br.iter().map(Approximant::factor_degree).sum::<i64>(), 2);
        let mult: usize = br
            .iter()
            .map(|b| match b {
                Approximant::Exact { mult, .. } => *mult,
                Approximant::Approx(_) => 1,
            })
            .sum();
        assert_eq!(mult, 3);
    }
}
