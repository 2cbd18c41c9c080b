//! The partially ordered universe of pseudovaluations on K[x]: point kinds,
//! discoid minima, residue classes, closure under infima, and assembly of a
//! finite point set into a rooted valuation tree.
//!
//! Points are the `TreePoint`s of the `maclane` module: finite inductive
//! valuations (type II) and infinite pseudovaluations [v, v(g) = ∞] (type I),
//! the latter either exact or bracketed by a refinable approximant. The
//! directions out of a finite point v — the residue classes of the discoid
//! D_v = {w ≥ v} — are never materialized as extra points; they are named by
//! a key polynomial of v and compared by v-equivalence.

use crate::base::poly::Poly;
use crate::base::rat::{fmt_rat, rat_i64, ExtRat, Rat};
use crate::error::{Error, Result};
use crate::maclane::{
    approximants, inf, phi_expansion, point_leq, points_eq, Approximant, MacVal, TreePoint,
    ValuedBase,
};
use num_traits::Zero;
use serde_json::{json, Value};

pub use crate::maclane::same_residue_class;

/// The two kinds of pseudovaluation points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    /// Finite inductive valuation.
    TypeII,
    /// Infinite pseudovaluation [v, v(g) = ∞], maximal in the order.
    TypeI,
}

pub fn point_kind<B: ValuedBase>(p: &TreePoint<B>) -> PointKind {
    if p.is_infinite() {
        PointKind::TypeI
    } else {
        PointKind::TypeII
    }
}

/// A residue class of the open discoid strictly above a finite valuation v:
/// the set of points w > v with w(φ) > v(φ), named by a key polynomial φ
/// of v. Two keys name the same class iff they are v-equivalent.
#[derive(Debug, Clone)]
pub struct ResidueClass<B: ValuedBase> {
    pub v: MacVal<B>,
    pub rep: Poly<B::CF>,
}

impl<B: ValuedBase> ResidueClass<B> {
    pub fn same_class(&self, other: &ResidueClass<B>) -> Result<bool> {
        if !self.v.eq_val(&other.v) {
            return Ok(false);
        }
        self.v.is_equivalent(&self.rep, &other.rep)
    }

    /// Whether the point w belongs to this class.
    pub fn contains(&self, w: &TreePoint<B>) -> Result<bool> {
        if !point_leq(&TreePoint::Fin(self.v.clone()), w)? {
            return Ok(false);
        }
        Ok(w.value(&self.rep)? > self.v.value(&self.rep))
    }

    pub fn descr(&self) -> String {
        format!(
            "class of {} above {}",
            self.rep.fmt_compact(self.v.cf(), self.v.base.var()),
            self.v.descr()
        )
    }
}

/// The residue class of {w > v} containing w. Errors unless v < w strictly.
pub fn residue_class_of<B: ValuedBase>(
    v: &MacVal<B>,
    w: &TreePoint<B>,
) -> Result<ResidueClass<B>> {
    let pv = TreePoint::Fin(v.clone());
    if !point_leq(&pv, w)? || points_eq(&pv, w)? {
        return Err(Error::invalid(
            "residue classes are defined for points strictly above the center",
        ));
    }
    // The last key of v itself usually separates (w continues v's own
    // direction); otherwise the first chain level of w whose value exceeds
    // its v-value does, and for an infinite w the kernel always does.
    if let Some(phi) = v.last_phi() {
        if w.value(phi)? > v.value(phi) {
            return Ok(ResidueClass {
                v: v.clone(),
                rep: phi.clone(),
            });
        }
    }
    match w {
        TreePoint::Fin(m) => pick_separating_key(v, m, None),
        TreePoint::Inf(Approximant::Exact { val, .. }) => {
            pick_separating_key(v, &val.chain, Some(&val.g))
        }
        TreePoint::Inf(Approximant::Approx(ip)) => {
            for _ in 0..64 {
                if let Ok(rc) = pick_separating_key(v, &ip.chain(), None) {
                    return Ok(rc);
                }
                ip.deepen()?;
            }
            Err(Error::internal(
                "approximant did not separate from the center",
            ))
        }
    }
}

fn pick_separating_key<B: ValuedBase>(
    v: &MacVal<B>,
    chain: &MacVal<B>,
    ker: Option<&Poly<B::CF>>,
) -> Result<ResidueClass<B>> {
    for l in &chain.levels {
        if v.value(&l.phi) < ExtRat::Fin(l.lam.clone()) {
            return Ok(ResidueClass {
                v: v.clone(),
                rep: l.phi.clone(),
            });
        }
    }
    match ker {
        Some(g) => Ok(ResidueClass {
            v: v.clone(),
            rep: g.clone(),
        }),
        None => Err(Error::internal("no separating key above the center")),
    }
}

/// The minimal element of the discoid D(g, t) = {v : v(g) ≥ t} for a monic
/// integral g with a single branch over the completion. The result lies on
/// the path from the Gauss valuation toward the branch of g and satisfies
/// v(g) = t exactly whenever t exceeds the Gauss value of g.
pub fn min_discoid_element<B: ValuedBase>(
    base: &B,
    g: &Poly<B::CF>,
    t: &Rat,
) -> Result<MacVal<B>> {
    if t < &Rat::zero() {
        return Err(Error::invalid("a discoid radius must be ≥ 0"));
    }
    let mut branches = approximants(base, g)?;
    if branches.len() > 1 {
        let names: Vec<String> = branches.iter().map(|b| b.descr()).collect();
        return Err(Error::invalid(format!(
            "{} is reducible over the completion, so its discoid has no minimum; \
             select one of the branches {}",
            g.fmt_compact(base.cfield(), base.var()),
            names.join(", ")
        )));
    }
    let branch = branches
        .pop()
        .ok_or_else(|| Error::internal("a nonconstant polynomial has at least one branch"))?;
    let target = ExtRat::Fin(t.clone());
    match branch {
        Approximant::Exact { val, .. } => walk_to_radius(&val.chain, Some(&val.g), g, t),
        Approximant::Approx(ip) => {
            // Single approximate branches do not arise for inputs that are
            // irreducible over the completion, but refining toward the
            // branch keeps the walk correct if one ever does.
            let mut guard = 0usize;
            while ip.chain().value(g) < target {
                ip.deepen()?;
                guard += 1;
                if guard > 4096 {
                    return Err(Error::internal("discoid refinement did not reach the radius"));
                }
            }
            walk_to_radius(&ip.chain(), None, g, t)
        }
    }
}

/// Walk the truncations of a branch chain until v(g) ≥ t, then solve for the
/// exact augmentation value in the last step.
fn walk_to_radius<B: ValuedBase>(
    chain: &MacVal<B>,
    ker: Option<&Poly<B::CF>>,
    g: &Poly<B::CF>,
    t: &Rat,
) -> Result<MacVal<B>> {
    let target = ExtRat::Fin(t.clone());
    if chain.truncate(0).value(g) >= target {
        return Ok(chain.truncate(0));
    }
    for i in 1..=chain.nlevels() {
        if chain.truncate(i).value(g) >= target {
            let parent = chain.truncate(i - 1);
            let phi = chain.levels[i - 1].phi.clone();
            let lam = least_lambda(&parent, &phi, g, t)?;
            return Ok(parent.augment_trusted(&phi, &ExtRat::Fin(lam))?.fin());
        }
    }
    let ker = ker.ok_or_else(|| Error::internal("refined chain fell short of the radius"))?;
    let lam = least_lambda(chain, ker, g, t)?;
    Ok(chain.augment_trusted(ker, &ExtRat::Fin(lam))?.fin())
}

/// Least λ with [v, v(φ) = λ](g) ≥ t, i.e. max over j ≥ 1 of (t − v(g_j))/j
/// for the φ-adic expansion g = Σ g_j φ^j. The j = 0 term is λ-independent
/// and already ≥ t whenever any point of the ray reaches radius t.
fn least_lambda<B: ValuedBase>(
    v: &MacVal<B>,
    phi: &Poly<B::CF>,
    g: &Poly<B::CF>,
    t: &Rat,
) -> Result<Rat> {
    let parts = phi_expansion(v.cf(), g, phi);
    let mut best: Option<Rat> = None;
    for (j, gj) in parts.iter().enumerate().skip(1) {
        if gj.is_zero() {
            continue;
        }
        let vj = match v.value(gj) {
            ExtRat::Fin(r) => r,
            ExtRat::Inf => continue,
        };
        let need = (t.clone() - vj) / rat_i64(j as i64);
        if best.as_ref().map_or(true, |b| need > *b) {
            best = Some(need);
        }
    }
    best.ok_or_else(|| Error::internal("the expansion has no positive-degree term"))
}

/// Close a finite point set under pairwise infima. A single pass suffices:
/// the infimum of two infima of set members is again an infimum of two set
/// members or comparable to one.
pub fn inf_closure<B: ValuedBase>(points: &[TreePoint<B>]) -> Result<Vec<TreePoint<B>>> {
    let mut out: Vec<TreePoint<B>> = Vec::new();
    for p in points {
        push_unique(&mut out, p.clone())?;
    }
    let n = out.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = inf(&out[i], &out[j])?;
            push_unique(&mut out, m)?;
        }
    }
    Ok(out)
}

fn push_unique<B: ValuedBase>(out: &mut Vec<TreePoint<B>>, p: TreePoint<B>) -> Result<()> {
    for q in out.iter() {
        if points_eq(q, &p)? {
            return Ok(());
        }
    }
    out.push(p);
    Ok(())
}

/// A finite fragment of the valuation tree with its covering relation:
/// (i, j) is an edge iff nodes[i] < nodes[j] with no node strictly between.
#[derive(Debug, Clone)]
pub struct ValuationTree<B: ValuedBase> {
    pub nodes: Vec<TreePoint<B>>,
    pub edges: Vec<(usize, usize)>,
}

impl<B: ValuedBase> ValuationTree<B> {
    /// Index of the unique minimal node, when there is exactly one.
    pub fn root(&self) -> Option<usize> {
        let mut has_parent = vec![false; self.nodes.len()];
        for &(_, j) in &self.edges {
            has_parent[j] = true;
        }
        let roots: Vec<usize> = (0..self.nodes.len()).filter(|&i| !has_parent[i]).collect();
        match roots.as_slice() {
            [r] => Some(*r),
            _ => None,
        }
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|&&(a, _)| a == i)
            .map(|&(_, b)| b)
            .collect()
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.edges
            .iter()
            .find(|&&(_, b)| b == i)
            .map(|&(a, _)| a)
    }

    /// JSON form: nodes as augmentation chains of [φ, λ] pairs with λ
    /// printed "num/den" or "inf", edges as index pairs.
    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(point_json).collect::<Vec<Value>>(),
            "edges": self.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<Value>>(),
        })
    }
}

/// JSON form of one point: its augmentation chain as [φ, λ] pairs. The
/// final step of an infinite point carries λ = "inf"; for an approximate
/// branch the best key known so far stands in for the kernel.
pub fn point_json<B: ValuedBase>(p: &TreePoint<B>) -> Value {
    let mut steps: Vec<Value> = Vec::new();
    match p {
        TreePoint::Fin(m) => push_chain_steps(&mut steps, m, m.nlevels()),
        TreePoint::Inf(Approximant::Exact { val, .. }) => {
            push_chain_steps(&mut steps, &val.chain, val.chain.nlevels());
            let cf = val.chain.cf();
            steps.push(json!([val.g.fmt_compact(cf, val.chain.base.var()), "inf"]));
        }
        TreePoint::Inf(Approximant::Approx(ip)) => {
            let ch = ip.chain();
            push_chain_steps(&mut steps, &ch, ch.nlevels().saturating_sub(1));
            steps.push(json!([ip.last_key().fmt_compact(ch.cf(), ch.base.var()), "inf"]));
        }
    }
    json!(steps)
}

fn push_chain_steps<B: ValuedBase>(steps: &mut Vec<Value>, m: &MacVal<B>, upto: usize) {
    let cf = m.cf();
    for l in m.levels.iter().take(upto) {
        steps.push(json!([l.phi.fmt_compact(cf, m.base.var()), fmt_rat(&l.lam)]));
    }
}

/// Assemble a point set into its order diagram. Nodes are deduplicated and
/// put in a deterministic order (finite points by chain length, then by
/// description; infinite points last); edges are the covering pairs.
pub fn build_tree<B: ValuedBase>(points: &[TreePoint<B>]) -> Result<ValuationTree<B>> {
    let mut nodes: Vec<TreePoint<B>> = Vec::new();
    for p in points {
        push_unique(&mut nodes, p.clone())?;
    }
    nodes.sort_by_cached_key(node_sort_key);
    let n = nodes.len();
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            below[i][j] = i == j || point_leq(&nodes[i], &nodes[j])?;
        }
    }
    let strictly = |i: usize, j: usize| below[i][j] && !below[j][i];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !strictly(i, j) {
                continue;
            }
            let covering = (0..n).all(|k| !(strictly(i, k) && strictly(k, j)));
            if covering {
                edges.push((i, j));
            }
        }
    }
    Ok(ValuationTree { nodes, edges })
}

fn depth<B: ValuedBase>(p: &TreePoint<B>) -> usize {
    match p {
        TreePoint::Fin(m) => m.nlevels(),
        TreePoint::Inf(a) => a.chain().nlevels() + 1,
    }
}

/// The ordering key `build_tree` sorts nodes by: finite before infinite,
/// shallow before deep, then by display string. Callers carrying data
/// parallel to the nodes sort by the same key to stay aligned.
pub fn node_sort_key<B: ValuedBase>(p: &TreePoint<B>) -> (bool, usize, String) {
    (p.is_infinite(), depth(p), p.descr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::poly::QPoly;
    use crate::base::rat::rat;
    use crate::maclane::tests::{q2, q3};
    use crate::maclane::{gauss, QBase};

    fn xp(base: &QBase) -> QPoly {
        Poly::x(base.cfield())
    }

    fn ipoly(_base: &QBase, cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    /// The unique branch of g as an infinite tree point.
    fn branch(base: &QBase, g: &QPoly) -> TreePoint<QBase> {
        let mut br = approximants(base, g).unwrap();
        assert_eq!(br.len(), 1, "{} should have one branch", g.fmt_compact(base.cfield(), "x"));
        TreePoint::Inf(br.pop().unwrap())
    }

    /// The finite chain a single branch currently sits on.
    fn branch_chain(base: &QBase, g: &QPoly) -> MacVal<QBase> {
        match branch(base, g) {
            TreePoint::Inf(a) => a.chain(),
            TreePoint::Fin(m) => m,
        }
    }

    fn aug(v: &MacVal<QBase>, phi: &QPoly, num: i64, den: i64) -> MacVal<QBase> {
        v.augment(phi, &ExtRat::Fin(rat(num, den))).unwrap().fin()
    }

    #[test]
    fn min_discoid_examples() {
        let b3 = q3();
        let x = xp(&b3);

        // Radius 3 around the branch of x^2+81 forces v(x) = 3/2.
        let g = ipoly(&b3, &[81, 0, 1]);
        let v = min_discoid_element(&b3, &g, &rat(3, 1)).unwrap();
        assert_eq!(v.descr(), "[v0, v(x)=3/2]");
        assert_eq!(v.value(&g), ExtRat::Fin(rat(3, 1)));

        let v = min_discoid_element(&b3, &x, &rat(2, 1)).unwrap();
        assert_eq!(v.descr(), "[v0, v(x)=2]");

        // Radius 0 is the whole tree, whose minimum is the Gauss valuation.
        let v = min_discoid_element(&b3, &g, &Rat::zero()).unwrap();
        assert!(v.is_gauss());

        let b2 = q2();
        let f2 = ipoly(&b2, &[12, 4, 1]);
        let v = min_discoid_element(&b2, &f2, &rat(4, 1)).unwrap();
        assert_eq!(v.descr(), "[v0, v(x+2)=3/2, v(x^2+4x+12)=4]");
        assert_eq!(v.value(&f2), ExtRat::Fin(rat(4, 1)));

        // Negative radius and split polynomials are rejected.
        assert!(min_discoid_element(&b3, &x, &rat(-1, 2)).is_err());
        let split = ipoly(&b3, &[-1, 0, 1]);
        let err = min_discoid_element(&b3, &split, &rat(1, 1)).unwrap_err();
        assert!(err.to_string().contains("reducible over the completion"));
    }

    #[test]
    fn min_discoid_is_minimal_and_attains_radius() {
        let b3 = q3();
        let g = ipoly(&b3, &[81, 0, 1]);
        for (tn, td) in [(1i64, 1i64), (3, 2), (3, 1), (7, 2), (5, 1)] {
            let t = rat(tn, td);
            let v = min_discoid_element(&b3, &g, &t).unwrap();
            // Exactness of the radius (the Gauss value of g is 0 < t here).
            assert_eq!(v.value(&g), ExtRat::Fin(t.clone()));
            // Deeper discoids are members and lie above the minimum.
            for extra in [rat(0, 1), rat(1, 2), rat(2, 1)] {
                let deep = min_discoid_element(&b3, &g, &(t.clone() + extra)).unwrap();
                assert!(deep.value(&g) >= ExtRat::Fin(t.clone()));
                assert!(v.leq(&deep));
            }
            // Every proper predecessor falls outside the discoid.
            for pred in v.predecessors() {
                if !pred.eq_val(&v) {
                    assert!(pred.value(&g) < ExtRat::Fin(t.clone()));
                }
            }
            // Shrinking the last value drops out of the discoid, so the
            // minimum is sharp along its ray.
            let lvl = v.levels.last().unwrap();
            let shrunk = v
                .truncate(v.nlevels() - 1)
                .augment_trusted(&lvl.phi, &ExtRat::Fin(lvl.lam.clone() - rat(1, 6)))
                .unwrap()
                .fin();
            assert!(shrunk.value(&g) < ExtRat::Fin(t.clone()));
        }

        let b2 = q2();
        let f2 = ipoly(&b2, &[12, 4, 1]);
        let v2 = min_discoid_element(&b2, &f2, &rat(4, 1)).unwrap();
        for pred in v2.predecessors() {
            assert!(pred.value(&f2) < ExtRat::Fin(rat(4, 1)));
        }
        // The infinite branch of f2 is a member of the discoid.
        let vf2 = branch(&b2, &f2);
        assert!(point_leq(&TreePoint::Fin(v2.clone()), &vf2).unwrap());
    }

    #[test]
    fn inf_of_first_branch_points() {
        let b2 = q2();
        let f1 = ipoly(&b2, &[-16, 0, 0, 1]);
        let f2 = ipoly(&b2, &[12, 4, 1]);
        let vf11 = branch_chain(&b2, &f1);
        assert_eq!(vf11.descr(), "[v0, v(x)=4/3]");
        let vf21 = branch_chain(&b2, &f2);
        assert_eq!(vf21.descr(), "[v0, v(x+2)=3/2]");
        let m = inf(&TreePoint::Fin(vf11), &TreePoint::Fin(vf21)).unwrap();
        assert_eq!(m.descr(), "[v0, v(x)=1]");
    }

    #[test]
    fn residue_class_examples() {
        let b3 = q3();
        let v0 = gauss(b3.clone());
        let x = xp(&b3);

        let w1 = TreePoint::Fin(aug(&v0, &x, 1, 1));
        let w2 = TreePoint::Fin(aug(&v0, &x, 2, 1));
        let xm1 = ipoly(&b3, &[-1, 1]);
        let w3 = TreePoint::Fin(aug(&v0, &xm1, 1, 1));

        let c1 = residue_class_of(&v0, &w1).unwrap();
        let c2 = residue_class_of(&v0, &w2).unwrap();
        let c3 = residue_class_of(&v0, &w3).unwrap();
        assert!(c1.same_class(&c2).unwrap());
        assert!(!c1.same_class(&c3).unwrap());
        assert!(same_residue_class(&v0, &w1, &w2).unwrap());
        assert!(!same_residue_class(&v0, &w1, &w3).unwrap());

        assert!(c1.contains(&w2).unwrap());
        assert!(!c1.contains(&w3).unwrap());
        assert!(!c3.contains(&w2).unwrap());

        // Points that keep v(x) but push the kernel value higher sit in a
        // different class than points that raise v(x).
        let b2 = q2();
        let f1 = ipoly(&b2, &[-16, 0, 0, 1]);
        let v = aug(&gauss(b2.clone()), &xp(&b2), 4, 3);
        let wf1 = branch(&b2, &f1);
        let wx = TreePoint::Fin(aug(&gauss(b2.clone()), &xp(&b2), 3, 2));
        assert!(!same_residue_class(&v, &wf1, &wx).unwrap());
        let cf1 = residue_class_of(&v, &wf1).unwrap();
        let cx = residue_class_of(&v, &wx).unwrap();
        assert!(!cf1.same_class(&cx).unwrap());
        assert!(cf1.contains(&wf1).unwrap());
        assert!(!cf1.contains(&wx).unwrap());
        assert_eq!(cx.rep.deg(), 1);

        // The center itself is in no class strictly above it.
        assert!(residue_class_of(&v0, &TreePoint::Fin(v0.clone())).is_err());
    }

    #[test]
    fn same_class_matches_common_lower_bound_criterion() {
        // Two points share a class over v exactly when some point strictly
        // above v lies below both; build that point as a discoid minimum.
        let b3 = q3();
        let v0 = gauss(b3.clone());
        let x = xp(&b3);
        let w1 = TreePoint::Fin(aug(&v0, &x, 1, 1));
        let w2 = TreePoint::Fin(aug(&v0, &x, 2, 1));
        let u = min_discoid_element(&b3, &x, &rat(1, 2)).unwrap();
        assert!(v0.lt(&u));
        assert!(point_leq(&TreePoint::Fin(u.clone()), &w1).unwrap());
        assert!(point_leq(&TreePoint::Fin(u.clone()), &w2).unwrap());
        assert!(same_residue_class(&v0, &w1, &w2).unwrap());

        let xm1 = ipoly(&b3, &[-1, 1]);
        let w3 = TreePoint::Fin(aug(&v0, &xm1, 1, 1));
        let m = inf(&w1, &w3).unwrap();
        assert!(points_eq(&m, &TreePoint::Fin(v0.clone())).unwrap());
        assert!(!same_residue_class(&v0, &w1, &w3).unwrap());
    }

    /// The first-stage point set of a branch divisor: every branch point of
    /// every factor together with all of their predecessors.
    fn first_stage(base: &QBase, factors: &[QPoly]) -> Vec<TreePoint<QBase>> {
        let mut pts: Vec<TreePoint<QBase>> = Vec::new();
        for g in factors {
            let b = branch(base, g);
            for p in b.predecessors() {
                pts.push(TreePoint::Fin(p));
            }
            pts.push(b);
        }
        pts
    }

    #[test]
    fn inf_closure_examples() {
        // A singleton is already closed.
        let b3 = q3();
        let v0 = TreePoint::Fin(gauss(b3.clone()));
        let closed = inf_closure(&[v0.clone()]).unwrap();
        assert_eq!(closed.len(), 1);

        // Branch points and predecessors of x^2+81 and (x-1)^2-27 are
        // already inf-closed: the two branches split at the Gauss point.
        let f1 = ipoly(&b3, &[81, 0, 1]);
        let f2 = ipoly(&b3, &[-26, -2, 1]);
        let pts = first_stage(&b3, &[f1, f2]);
        let mut start = Vec::new();
        for p in &pts {
            push_unique(&mut start, p.clone()).unwrap();
        }
        let closed = inf_closure(&pts).unwrap();
        assert_eq!(closed.len(), start.len());

        // Over val_2 the three branch chains meet in two new points.
        let b2 = q2();
        let f1 = ipoly(&b2, &[-16, 0, 0, 1]);
        let f2 = ipoly(&b2, &[12, 4, 1]);
        let f3 = ipoly(&b2, &[-4, 4, 1]);
        let pts = first_stage(&b2, &[f1, f2.clone(), f3]);
        let mut start = Vec::new();
        for p in &pts {
            push_unique(&mut start, p.clone()).unwrap();
        }
        let closed = inf_closure(&pts).unwrap();
        assert_eq!(closed.len(), start.len() + 2);

        let v1 = TreePoint::Fin(aug(&gauss(b2.clone()), &xp(&b2), 1, 1));
        let v2 = TreePoint::Fin(min_discoid_element(&b2, &f2, &rat(4, 1)).unwrap());
        let news: Vec<&TreePoint<QBase>> = closed[start.len()..].iter().collect();
        assert!(news.iter().any(|p| points_eq(p, &v1).unwrap()));
        assert!(news.iter().any(|p| points_eq(p, &v2).unwrap()));

        // One pass reaches the closure: a second pass adds nothing.
        let closed2 = inf_closure(&closed).unwrap();
        assert_eq!(closed2.len(), closed.len());
    }

    #[test]
    fn build_tree_on_closed_set() {
        let b2 = q2();
        let f1 = ipoly(&b2, &[-16, 0, 0, 1]);
        let f2 = ipoly(&b2, &[12, 4, 1]);
        let f3 = ipoly(&b2, &[-4, 4, 1]);
        let pts = first_stage(&b2, &[f1.clone(), f2.clone(), f3.clone()]);
        let closed = inf_closure(&pts).unwrap();
        let tree = build_tree(&closed).unwrap();

        assert_eq!(tree.nodes.len(), 8);
        assert_eq!(tree.edges.len(), tree.nodes.len() - 1);
        let root = tree.root().expect("a predecessor-closed set has one root");
        assert!(tree.nodes[root].fin().map(|m| m.is_gauss()).unwrap_or(false));

        // Every non-root node has exactly one parent and the tree is
        // connected from the root.
        let mut seen = vec![false; tree.nodes.len()];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            seen[i] = true;
            stack.extend(tree.children(i));
        }
        assert!(seen.iter().all(|&s| s));
        for i in 0..tree.nodes.len() {
            if i != root {
                assert_eq!(
                    tree.edges.iter().filter(|&&(_, b)| b == i).count(),
                    1,
                    "node {} has one parent",
                    tree.nodes[i].descr()
                );
            }
        }

        // The covering pairs, by description.
        let name = |i: usize| tree.nodes[i].descr();
        let mut got: Vec<(String, String)> = tree
            .edges
            .iter()
            .map(|&(a, b)| (name(a), name(b)))
            .collect();
        got.sort();
        let v2 = min_discoid_element(&b2, &f2, &rat(4, 1)).unwrap().descr();
        let vf1 = branch(&b2, &f1).descr();
        let vf2 = branch(&b2, &f2).descr();
        let vf3 = branch(&b2, &f3).descr();
        let mut want = vec![
            ("[v0]".to_string(), "[v0, v(x)=1]".to_string()),
            ("[v0, v(x)=1]".to_string(), "[v0, v(x)=4/3]".to_string()),
            ("[v0, v(x)=1]".to_string(), "[v0, v(x+2)=3/2]".to_string()),
            ("[v0, v(x)=4/3]".to_string(), vf1),
            ("[v0, v(x+2)=3/2]".to_string(), v2.clone()),
            (v2.clone(), vf2),
            (v2, vf3),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn order_invariants_on_closed_sets() {
        let b2 = q2();
        let f1 = ipoly(&b2, &[-16, 0, 0, 1]);
        let f2 = ipoly(&b2, &[12, 4, 1]);
        let f3 = ipoly(&b2, &[-4, 4, 1]);
        let closed = inf_closure(&first_stage(&b2, &[f1, f2, f3])).unwrap();

        // Downward totality: the set below any node is totally ordered.
        for v in &closed {
            let under: Vec<&TreePoint<QBase>> = closed
                .iter()
                .filter(|w| point_leq(w, v).unwrap())
                .collect();
            for a in &under {
                for b in &under {
                    assert!(
                        point_leq(a, b).unwrap() || point_leq(b, a).unwrap(),
                        "{} and {} below {} must be comparable",
                        a.descr(),
                        b.descr(),
                        v.descr()
                    );
                }
            }
        }

        // inf is commutative, idempotent, associative on the closed set.
        for a in &closed {
            assert!(points_eq(&inf(a, a).unwrap(), a).unwrap());
            for b in &closed {
                let ab = inf(a, b).unwrap();
                let ba = inf(b, a).unwrap();
                assert!(points_eq(&ab, &ba).unwrap());
                assert!(closed.iter().any(|c| points_eq(c, &ab).unwrap()));
                for c in &closed {
                    let l = inf(&ab, c).unwrap();
                    let r = inf(a, &inf(b, c).unwrap()).unwrap();
                    assert!(points_eq(&l, &r).unwrap());
                }
            }
        }

        // Infinite points are maximal.
        for a in &closed {
            if !a.is_infinite() {
                continue;
            }
            for b in &closed {
                if !points_eq(a, b).unwrap() {
                    assert!(
                        !point_leq(a, b).unwrap(),
                        "{} must not sit below {}",
                        a.descr(),
                        b.descr()
                    );
                }
            }
        }
    }

    #[test]
    fn tree_json_shape() {
        let b3 = q3();
        let v0 = gauss(b3.clone());
        let f1 = ipoly(&b3, &[81, 0, 1]);
        let v = aug(&v0, &xp(&b3), 2, 1);
        let pts = vec![
            TreePoint::Fin(v0),
            TreePoint::Fin(v),
            branch(&b3, &f1),
        ];
        let tree = build_tree(&pts).unwrap();
        let js = tree.to_json();
        assert_eq!(
            js["nodes"],
            json!([[], [["x", "2"]], [["x", "2"], ["x^2+81", "inf"]]])
        );
        assert_eq!(js["edges"], json!([[0, 1], [1, 2]]));
        assert_eq!(point_kind(&tree.nodes[0]), PointKind::TypeII);
        assert_eq!(point_kind(&tree.nodes[2]), PointKind::TypeI);
    }
}
