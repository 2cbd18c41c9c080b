//! Regular models of the projective line with a normal-crossing divisor.
//!
//! The input is a horizontal divisor on P¹ over the p-adically valued
//! rationals: the zero loci of finitely many monic integral squarefree
//! pairwise-coprime polynomials, optionally together with the section at
//! infinity. The output is a finite set of inductive valuations — the
//! components of a model — closed under predecessors and infima, enlarged by
//! short N-step paths so that every component meets its neighbours and the
//! divisor transversally in regular points.
//!
//! The pieces: `DivisorSpec` validates the input; `alg31` builds the full
//! valuation set; `alg32` is its per-node enlargement step; `verify_regularity`
//! re-checks the regularity criteria on any candidate set; `component_graph`
//! and `model_json` expose the result as a graph and as a serialisable
//! descriptor.

pub mod npath;

pub use npath::{is_n_step, shortest_n_path};

use crate::base::field::Field;
use crate::base::poly::Poly;
use crate::base::rat::{ExtRat, Rat};
use crate::berktree::{
    build_tree, node_sort_key, point_json, residue_class_of, ResidueClass, ValuationTree,
};
use crate::error::{Error, Result};
use crate::maclane::{
    approximants, gauss, inf, point_leq, points_eq, Approximant, MacVal, QBase, TreePoint,
    ValuedBase,
};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

/// A horizontal divisor on the projective line: monic integral squarefree
/// pairwise-coprime factors, optionally together with the section at infinity.
#[derive(Debug, Clone)]
pub struct DivisorSpec<B: ValuedBase> {
    pub factors: Vec<Poly<B::CF>>,
    pub include_infinity: bool,
}

impl<B: ValuedBase> DivisorSpec<B> {
    pub fn new(base: &B, factors: Vec<Poly<B::CF>>, include_infinity: bool) -> Result<Self> {
        let spec = DivisorSpec {
            factors,
            include_infinity,
        };
        spec.validate(base)?;
        Ok(spec)
    }

    /// Build a divisor from one polynomial: normalise it to be monic, then
    /// split its radical into squarefree pairwise-coprime parts.
    pub fn from_poly(base: &B, f: &Poly<B::CF>, include_infinity: bool) -> Result<Self> {
        let cf = base.cfield();
        if f.is_zero() {
            return Err(Error::invalid("the divisor polynomial must be nonzero"));
        }
        let monic = Poly::scale(cf, f, &cf.inv(&f.lc(cf)));
        let factors = crate::maclane::squarefree_parts(cf, &monic)
            .into_iter()
            .map(|(part, _)| part)
            .filter(|part| part.deg() >= 1)
            .collect();
        DivisorSpec::new(base, factors, include_infinity)
    }

    pub fn validate(&self, base: &B) -> Result<()> {
        let cf = base.cfield();
        let var = base.var();
        for f in &self.factors {
            let shown = f.fmt_compact(cf, var);
            if f.deg() < 1 {
                return Err(Error::invalid(format!(
                    "divisor factor {shown} must be non-constant"
                )));
            }
            if !f.is_monic(cf) {
                return Err(Error::invalid(format!(
                    "divisor factor {shown} must be monic; divide by its leading coefficient"
                )));
            }
            for c in &f.c {
                if base.val(c) < ExtRat::zero() {
                    return Err(Error::invalid(format!(
                        "divisor factor {shown} has a coefficient of negative valuation; \
                         rescale the variable first (see make_integral)"
                    )));
                }
            }
            let d = Poly::derivative(cf, f);
            if Poly::gcd(cf, f, &d).deg() > 0 {
                return Err(Error::invalid(format!(
                    "divisor factor {shown} must be squarefree; split off repeated factors first"
                )));
            }
        }
        for i in 0..self.factors.len() {
            for j in i + 1..self.factors.len() {
                if Poly::gcd(cf, &self.factors[i], &self.factors[j]).deg() > 0 {
                    return Err(Error::invalid(format!(
                        "divisor factors {} and {} share a common factor",
                        self.factors[i].fmt_compact(cf, var),
                        self.factors[j].fmt_compact(cf, var)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Rescale the variable, x ↦ πᵏ·x, by the least k ≥ 0 making the monic
/// polynomial integral: returns (πᵏᵈ·f(x/πᵏ), k).
pub fn make_integral<B: ValuedBase>(base: &B, f: &Poly<B::CF>) -> Result<(Poly<B::CF>, u32)> {
    let cf = base.cfield();
    if !f.is_monic(cf) {
        return Err(Error::invalid(
            "only monic polynomials can be rescaled to integral form",
        ));
    }
    let d = f.deg();
    let pi = base.uniformizer();
    let vpi = match base.val(&pi) {
        ExtRat::Fin(r) => r,
        ExtRat::Inf => return Err(Error::internal("the uniformizer has infinite value")),
    };
    let mut k: u32 = 0;
    for (i, c) in f.c.iter().enumerate() {
        if let ExtRat::Fin(v) = base.val(c) {
            if v < Rat::from_integer(0.into()) {
                // need k·(d−i)·v(π) + v ≥ 0
                let need = -&v / (&vpi * Rat::from_integer(BigInt::from(d - i as i64)));
                let need = need.ceil().to_integer();
                let need = u32::try_from(need.max(BigInt::from(0)))
                    .map_err(|_| Error::invalid("the required rescaling exponent is too large"))?;
                k = k.max(need);
            }
        }
    }
    let mut c = Vec::with_capacity(f.c.len());
    for (i, ci) in f.c.iter().enumerate() {
        let shift = cf.pow(&pi, (k as i64) * (d - i as i64));
        c.push(cf.mul(ci, &shift));
    }
    Ok((Poly::from_coeffs(cf, c), k))
}

/// How a valuation entered the model set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Branch point of an input divisor factor.
    Input,
    /// Truncation (predecessor) of another point.
    Predecessor,
    /// Infimum of two points.
    Infimum,
    /// Inserted on the segment below an adjacent pair of nodes.
    PathStep1,
    /// Inserted above a node whose last value needed completion to an
    /// integral multiple of 1/N.
    PathStep2,
}

pub fn provenance_label(p: Provenance) -> &'static str {
    match p {
        Provenance::Input => "input",
        Provenance::Predecessor => "predecessor",
        Provenance::Infimum => "inf",
        Provenance::PathStep1 => "n-path-step1",
        Provenance::PathStep2 => "n-path-step2",
    }
}

/// The valuations of a model: the finite (type II) nodes together with the
/// horizontal (type I) branch points of the divisor, assembled into a tree.
#[derive(Debug, Clone)]
pub struct ModelVals<B: ValuedBase> {
    pub tree: ValuationTree<B>,
    /// Parallel to `tree.nodes`.
    pub prov: Vec<Provenance>,
    pub include_infinity: bool,
}

impl<B: ValuedBase> ModelVals<B> {
    /// Deduplicate, order, and assemble points into a model. The first tag
    /// wins for points listed twice.
    pub fn from_points(
        pairs: Vec<(TreePoint<B>, Provenance)>,
        include_infinity: bool,
    ) -> Result<Self> {
        let mut points: Vec<TreePoint<B>> = Vec::new();
        let mut tags: Vec<Provenance> = Vec::new();
        for (p, t) in pairs {
            add_point(&mut points, &mut tags, p, t)?;
        }
        let keys: Vec<_> = points.iter().map(node_sort_key).collect();
        let mut idx: Vec<usize> = (0..points.len()).collect();
        idx.sort_by(|a, b| keys[*a].cmp(&keys[*b]));
        let points: Vec<TreePoint<B>> = idx.iter().map(|&i| points[i].clone()).collect();
        let prov: Vec<Provenance> = idx.iter().map(|&i| tags[i]).collect();
        let tree = build_tree(&points)?;
        debug_assert!(
            tree.nodes
                .iter()
                .zip(&points)
                .all(|(a, b)| a.descr() == b.descr()),
            "tree assembly must preserve the node order"
        );
        Ok(ModelVals {
            tree,
            prov,
            include_infinity,
        })
    }

    pub fn finite_indices(&self) -> Vec<usize> {
        (0..self.tree.nodes.len())
            .filter(|&i| !self.tree.nodes[i].is_infinite())
            .collect()
    }

    pub fn horizontal_indices(&self) -> Vec<usize> {
        (0..self.tree.nodes.len())
            .filter(|&i| self.tree.nodes[i].is_infinite())
            .collect()
    }

    pub fn finite_vals(&self) -> Vec<&MacVal<B>> {
        self.tree.nodes.iter().filter_map(|p| p.fin()).collect()
    }

    /// Is an (equivalent) copy of m among the finite nodes?
    pub fn contains_val(&self, m: &MacVal<B>) -> bool {
        self.finite_vals().iter().any(|v| v.eq_val(m))
    }
}

fn add_point<B: ValuedBase>(
    points: &mut Vec<TreePoint<B>>,
    tags: &mut Vec<Provenance>,
    p: TreePoint<B>,
    tag: Provenance,
) -> Result<bool> {
    for q in points.iter() {
        if points_eq(q, &p)? {
            return Ok(false);
        }
    }
    points.push(p);
    tags.push(tag);
    Ok(true)
}

fn contains_point<B: ValuedBase>(points: &[TreePoint<B>], p: &TreePoint<B>) -> Result<bool> {
    for q in points {
        if points_eq(q, p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn leq_mat<B: ValuedBase>(points: &[TreePoint<B>]) -> Result<Vec<Vec<bool>>> {
    let n = points.len();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = i == j || point_leq(&points[i], &points[j])?;
        }
    }
    Ok(m)
}

fn strictly_below(below: &[Vec<bool>], i: usize, j: usize) -> bool {
    below[i][j] && !below[j][i]
}

/// Indices of the points covering i from above: j > i with nothing between.
fn covers_above(below: &[Vec<bool>], i: usize) -> Vec<usize> {
    let n = below.len();
    (0..n)
        .filter(|&j| {
            strictly_below(below, i, j)
                && (0..n).all(|k| !(strictly_below(below, i, k) && strictly_below(below, k, j)))
        })
        .collect()
}

/// The valuations the enlargement step inserts for the node at `vi`:
/// interior points of shortest N-paths up to each adjacent finite node, and
/// the completion path when the node's own last value is not an integral
/// multiple of 1/N.
fn node_insertions<B: ValuedBase>(
    points: &[TreePoint<B>],
    below: &[Vec<bool>],
    vi: usize,
) -> Result<Vec<(MacVal<B>, Provenance)>> {
    let v = match &points[vi] {
        TreePoint::Fin(m) => m,
        TreePoint::Inf(_) => return Ok(Vec::new()),
    };
    let mut out = Vec::new();
    let above = covers_above(below, vi);
    for &wi in &above {
        let w = match &points[wi] {
            TreePoint::Fin(m) => m,
            TreePoint::Inf(_) => continue,
        };
        let phi = w
            .last_phi()
            .ok_or_else(|| Error::internal("a point above the root must have a last key"))?
            .clone();
        let lam2 = w
            .last_lam()
            .ok_or_else(|| Error::internal("a point above the root must have a last value"))?
            .clone();
        let predw = w.truncate(w.nlevels() - 1);
        let nstep = predw.ramification();
        let lam = match v.value(&phi) {
            ExtRat::Fin(r) => r,
            ExtRat::Inf => return Err(Error::internal("a finite valuation took an infinite value")),
        };
        let path = shortest_n_path(&lam, &lam2, nstep)?;
        for t in &path[1..path.len() - 1] {
            let m = predw
                .augment_trusted(&phi, &ExtRat::Fin(t.clone()))?
                .fin();
            out.push((m, Provenance::PathStep1));
        }
    }
    if v.nlevels() > 0 {
        let phi_n = v.last_phi().expect("non-root").clone();
        let lam_n = v.last_lam().expect("non-root").clone();
        let predv = v.truncate(v.nlevels() - 1);
        let nstep = predv.ramification();
        let scaled = &lam_n * Rat::from_integer(BigInt::from(nstep));
        if !scaled.is_integer() {
            let increased = above.iter().any(|&wi| match &points[wi] {
                TreePoint::Fin(w) => w.value(&phi_n) > ExtRat::Fin(lam_n.clone()),
                TreePoint::Inf(_) => false,
            });
            if !increased {
                let lam2 = Rat::new(
                    scaled.floor().to_integer() + BigInt::one(),
                    BigInt::from(nstep),
                );
                let path = shortest_n_path(&lam_n, &lam2, nstep)?;
                for t in &path[1..] {
                    let m = predv
                        .augment_trusted(&phi_n, &ExtRat::Fin(t.clone()))?
                        .fin();
                    out.push((m, Provenance::PathStep2));
                }
            }
        }
    }
    Ok(out)
}

/// Build the full valuation set of a regular normal-crossing model: branch
/// points of every factor, their predecessors, closure under infima, then
/// N-step path insertions until stable.
pub fn alg31<B: ValuedBase>(base: &B, spec: &DivisorSpec<B>) -> Result<ModelVals<B>> {
    spec.validate(base)?;
    let mut points: Vec<TreePoint<B>> = Vec::new();
    let mut tags: Vec<Provenance> = Vec::new();
    add_point(
        &mut points,
        &mut tags,
        TreePoint::Fin(gauss(base.clone())),
        Provenance::Predecessor,
    )?;
    for g in &spec.factors {
        for br in approximants(base, g)? {
            for q in br.predecessors() {
                add_point(&mut points, &mut tags, TreePoint::Fin(q), Provenance::Predecessor)?;
            }
            add_point(&mut points, &mut tags, TreePoint::Inf(br), Provenance::Input)?;
        }
    }
    // Alternate the three closure steps until nothing new appears. Branch
    // approximations can deepen while values are compared, which may reveal
    // further predecessors, so predecessor closure is re-checked each round.
    for round in 0.. {
        if round > 32 {
            return Err(Error::internal("model completion failed to stabilise"));
        }
        let mut added = false;
        for i in 0..points.len() {
            for q in points[i].predecessors() {
                added |= add_point(&mut points, &mut tags, TreePoint::Fin(q), Provenance::Predecessor)?;
            }
        }
        let n0 = points.len();
        for i in 0..n0 {
            for j in i + 1..n0 {
                let m = inf(&points[i], &points[j])?;
                added |= add_point(&mut points, &mut tags, m, Provenance::Infimum)?;
            }
        }
        let below = leq_mat(&points)?;
        let mut fresh: Vec<(MacVal<B>, Provenance)> = Vec::new();
        for vi in 0..points.len() {
            fresh.extend(node_insertions(&points, &below, vi)?);
        }
        for (m, tag) in fresh {
            added |= add_point(&mut points, &mut tags, TreePoint::Fin(m), tag)?;
        }
        if !added {
            break;
        }
    }
    ModelVals::from_points(
        points.into_iter().zip(tags).collect(),
        spec.include_infinity,
    )
}

/// The per-node enlargement step: insert the N-path valuations the node at v
/// requires, returning the enlarged model. The node must be (equivalent to) a
/// finite node of the model.
pub fn alg32<B: ValuedBase>(mv: &ModelVals<B>, v: &MacVal<B>) -> Result<ModelVals<B>> {
    let points = mv.tree.nodes.clone();
    let vi = points
        .iter()
        .position(|p| match p {
            TreePoint::Fin(m) => m.eq_val(v),
            TreePoint::Inf(_) => false,
        })
        .ok_or_else(|| {
            Error::invalid(format!("{} is not a finite node of the model", v.descr()))
        })?;
    let below = leq_mat(&points)?;
    let fresh = node_insertions(&points, &below, vi)?;
    let mut pairs: Vec<(TreePoint<B>, Provenance)> = points
        .into_iter()
        .zip(mv.prov.iter().copied())
        .collect();
    for (m, tag) in fresh {
        pairs.push((TreePoint::Fin(m), tag));
    }
    ModelVals::from_points(pairs, mv.include_infinity)
}

/// One regularity defect: the node and residue class where the criteria
/// fail, and why.
#[derive(Debug, Clone)]
pub struct RegularityIssue {
    pub node: String,
    pub class: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub issues: Vec<RegularityIssue>,
}

impl RegularityReport {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn first(&self) -> Option<&RegularityIssue> {
        self.issues.first()
    }
}

/// Closure preconditions: every predecessor of every point, and the infimum
/// of every pair, must already lie in the set.
fn check_closure<B: ValuedBase>(mv: &ModelVals<B>) -> Result<()> {
    let nodes = &mv.tree.nodes;
    for p in nodes {
        for q in p.predecessors() {
            if !contains_point(nodes, &TreePoint::Fin(q.clone()))? {
                return Err(Error::invalid(format!(
                    "the valuation set is not predecessor-closed: {}, a predecessor of {}, is missing",
                    q.descr(),
                    p.descr()
                )));
            }
        }
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let m = inf(&nodes[i], &nodes[j])?;
            if !contains_point(nodes, &m)? {
                return Err(Error::invalid(format!(
                    "the valuation set is not closed under infima: inf of {} and {} is {}, which is missing",
                    nodes[i].descr(),
                    nodes[j].descr(),
                    m.descr()
                )));
            }
        }
    }
    Ok(())
}

/// For every horizontal branch point: the index of the deepest finite node
/// below it — the component its section meets.
fn branch_attachments<B: ValuedBase>(mv: &ModelVals<B>) -> Result<Vec<(usize, usize)>> {
    let nodes = &mv.tree.nodes;
    let mut out = Vec::new();
    for (i, p) in nodes.iter().enumerate() {
        if !p.is_infinite() {
            continue;
        }
        let mut best: Option<usize> = None;
        for (j, q) in nodes.iter().enumerate() {
            if q.is_infinite() || !point_leq(q, p)? {
                continue;
            }
            best = match best {
                None => Some(j),
                Some(b) => {
                    if point_leq(&nodes[b], q)? {
                        Some(j)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let b = best.ok_or_else(|| {
            Error::invalid(format!(
                "no finite valuation lies below the branch point {}",
                p.descr()
            ))
        })?;
        out.push((i, b));
    }
    Ok(out)
}

/// Check the regularity criteria on a candidate valuation set: closure under
/// predecessors and infima (violations are errors), then for every node and
/// relevant residue class either the node is the root, or its last value is
/// integral over its predecessor's value group, or the class avoids the last
/// key's class, or an adjacent node meets the class in a single N-step.
pub fn verify_regularity<B: ValuedBase>(mv: &ModelVals<B>) -> Result<RegularityReport> {
    check_closure(mv)?;
    let nodes = &mv.tree.nodes;
    let attach = branch_attachments(mv)?;
    let mut issues = Vec::new();
    for vi in 0..nodes.len() {
        let v = match &nodes[vi] {
            TreePoint::Fin(m) => m,
            TreePoint::Inf(_) => continue,
        };
        // Intersections with adjacent finite nodes above must be N-steps.
        let mut class_of_last_key_met = false;
        let phi_lam = v.last_phi().cloned().zip(v.last_lam().cloned());
        for &wi in &mv.tree.children(vi) {
            let w = match &nodes[wi] {
                TreePoint::Fin(m) => m,
                TreePoint::Inf(_) => continue,
            };
            let phi = w.last_phi().expect("non-root").clone();
            let lam2 = w.last_lam().expect("non-root").clone();
            let predw = w.truncate(w.nlevels() - 1);
            let nstep = predw.ramification();
            let lam = match v.value(&phi) {
                ExtRat::Fin(r) => r,
                ExtRat::Inf => {
                    return Err(Error::internal("a finite valuation took an infinite value"))
                }
            };
            if !is_n_step(&lam, &lam2, nstep) {
                issues.push(RegularityIssue {
                    node: v.descr(),
                    class: residue_class_of(v, &nodes[wi])?.descr(),
                    reason: format!(
                        "meets {} through a value jump {} -> {} that is not a single N-step for N = {}",
                        w.descr(),
                        crate::base::rat::fmt_rat(&lam),
                        crate::base::rat::fmt_rat(&lam2),
                        nstep
                    ),
                });
            }
            if let Some((phi_n, lam_n)) = &phi_lam {
                if w.value(phi_n) > ExtRat::Fin(lam_n.clone()) {
                    class_of_last_key_met = true;
                }
            }
        }
        let (phi_n, lam_n) = match phi_lam {
            Some(pl) => pl,
            None => continue, // the root component is regular everywhere
        };
        let predv = v.truncate(v.nlevels() - 1);
        if v.gdenom() == predv.gdenom() {
            continue; // the last value is integral over the predecessor group
        }
        // The class of the last key holds the one potentially singular point
        // of this component: some adjacent node must continue it.
        let crit = ResidueClass {
            v: v.clone(),
            rep: phi_n.clone(),
        };
        if !class_of_last_key_met {
            issues.push(RegularityIssue {
                node: v.descr(),
                class: crit.descr(),
                reason: format!(
                    "the last value {} is not integral over the predecessor value group \
                     and no adjacent valuation continues this class",
                    crate::base::rat::fmt_rat(&lam_n)
                ),
            });
        }
        for &(pi, at) in &attach {
            if at != vi {
                continue;
            }
            let cls = residue_class_of(v, &nodes[pi])?;
            if cls.same_class(&crit)? {
                issues.push(RegularityIssue {
                    node: v.descr(),
                    class: cls.descr(),
                    reason: format!(
                        "a horizontal branch passes through the class of the last key, \
                         whose value {} is not integral over the predecessor value group",
                        crate::base::rat::fmt_rat(&lam_n)
                    ),
                });
            }
        }
    }
    Ok(RegularityReport { issues })
}

/// The components and intersections of the model: vertices are the finite
/// nodes, edges their adjacencies, and each horizontal branch is attached to
/// the component of the deepest finite node below it.
#[derive(Debug, Clone)]
pub struct ComponentGraph {
    /// Tree indices of the finite nodes.
    pub vertices: Vec<usize>,
    /// Pairs of positions into `vertices`.
    pub edges: Vec<(usize, usize)>,
    /// (tree index of the branch point, position into `vertices`).
    pub horizontal: Vec<(usize, usize)>,
    /// Position into `vertices` of the component met by the section at
    /// infinity, when that section is included.
    pub infinity: Option<usize>,
}

pub fn component_graph<B: ValuedBase>(mv: &ModelVals<B>) -> Result<ComponentGraph> {
    let vertices = mv.finite_indices();
    let pos = |i: usize| vertices.iter().position(|&j| j == i);
    let edges = mv
        .tree
        .edges
        .iter()
        .filter_map(|&(a, b)| Some((pos(a)?, pos(b)?)))
        .collect();
    let mut horizontal = Vec::new();
    for (pi, at) in branch_attachments(mv)? {
        let at = pos(at).ok_or_else(|| Error::internal("attachment to a non-finite node"))?;
        horizontal.push((pi, at));
    }
    let infinity = if mv.include_infinity {
        let root = mv
            .tree
            .root()
            .ok_or_else(|| Error::invalid("an empty model has no root component"))?;
        Some(pos(root).ok_or_else(|| Error::internal("the root must be a finite node"))?)
    } else {
        None
    };
    Ok(ComponentGraph {
        vertices,
        edges,
        horizontal,
        infinity,
    })
}

/// The polynomial a horizontal branch point tracks, for display.
pub fn branch_label<B: ValuedBase>(p: &TreePoint<B>) -> Result<String> {
    match p {
        TreePoint::Fin(_) => Err(Error::invalid("a finite node is not a horizontal branch")),
        TreePoint::Inf(a) => {
            let chain = a.chain();
            let cf = chain.base.cfield();
            let var = chain.base.var();
            Ok(match a {
                Approximant::Exact { val, .. } => val.g.fmt_compact(cf, var),
                Approximant::Approx(ip) => ip.last_key().fmt_compact(cf, var),
            })
        }
    }
}

/// Serialisable descriptor of the model: prime, nodes (as chains), tree
/// edges, horizontal branches with their attachment points, provenance tags.
pub fn model_json(mv: &ModelVals<QBase>) -> Result<Value> {
    let root = mv
        .tree
        .root()
        .ok_or_else(|| Error::invalid("an empty model cannot be serialised"))?;
    let p = mv.tree.nodes[root]
        .fin()
        .ok_or_else(|| Error::internal("the root must be a finite node"))?
        .base
        .p;
    let nodes: Vec<Value> = mv.tree.nodes.iter().map(point_json).collect();
    let edges: Vec<Value> = mv.tree.edges.iter().map(|&(a, b)| json!([a, b])).collect();
    let mut horizontal = Vec::new();
    for (pi, at) in branch_attachments(mv)? {
        horizontal.push(json!({
            "branch": branch_label(&mv.tree.nodes[pi])?,
            "at": at,
        }));
    }
    if mv.include_infinity {
        horizontal.push(json!({ "branch": "inf", "at": root }));
    }
    let prov: Vec<Value> = mv
        .prov
        .iter()
        .map(|&t| Value::String(provenance_label(t).to_string()))
        .collect();
    Ok(json!({
        "p": p,
        "nodes": nodes,
        "edges": edges,
        "horizontal": horizontal,
        "provenance": prov,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::poly::QPoly;
    use crate::maclane::tests::{q2, q3};
    use proptest::prelude::*;

    fn ipoly(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    fn aug(v: &MacVal<QBase>, phi: &QPoly, num: i64, den: i64) -> MacVal<QBase> {
        let lam = ExtRat::Fin(Rat::new(BigInt::from(num), BigInt::from(den)));
        v.augment(phi, &lam).expect("valid augmentation").fin()
    }

    fn spec(base: &QBase, factors: &[&[i64]]) -> DivisorSpec<QBase> {
        DivisorSpec::new(base, factors.iter().map(|c| ipoly(c)).collect(), true).unwrap()
    }

    /// Finite nodes of mv exactly match the expected valuations, up to
    /// equality of valuations.
    fn assert_finite_set(mv: &ModelVals<QBase>, expected: &[MacVal<QBase>]) {
        let got = mv.finite_vals();
        for e in expected {
            assert!(
                got.iter().any(|v| v.eq_val(e)),
                "missing expected node {}",
                e.descr()
            );
        }
        assert_eq!(
            got.len(),
            expected.len(),
            "extra nodes: {:?}",
            got.iter().map(|v| v.descr()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn divisor_spec_validation() {
        let base = q3();
        assert!(DivisorSpec::new(&base, vec![ipoly(&[1, 2])], true).is_err()); // not monic
        let e = DivisorSpec::new(
            &base,
            vec![QPoly::from_coeffs(
                &crate::base::field::QQ,
                vec![Rat::new(BigInt::from(-1), BigInt::from(3)), Rat::from_integer(1.into())],
            )],
            true,
        )
        .unwrap_err();
        assert!(e.to_string().contains("make_integral"), "{e}");
        let e = DivisorSpec::new(&base, vec![ipoly(&[0, 0, 1])], true).unwrap_err();
        assert!(e.to_string().contains("squarefree"), "{e}");
        let e = DivisorSpec::new(&base, vec![ipoly(&[0, 1]), ipoly(&[0, -1, 1])], true).unwrap_err();
        assert!(e.to_string().contains("common factor"), "{e}");
        assert!(DivisorSpec::new(&base, vec![ipoly(&[7])], true).is_err()); // constant
    }

    #[test]
    fn from_poly_splits_radical() {
        let base = q2();
        // (x^2 - 1)^2 (x - 3), doubled to test leading-coefficient clearing
        let f = ipoly(&[-3, 1]);
        let g = ipoly(&[-1, 0, 1]);
        let cf = &crate::base::field::QQ;
        let sq = Poly::mul(cf, &g, &g);
        let prod = Poly::mul(cf, &sq, &f);
        let prod2 = Poly::scale(cf, &prod, &Rat::from_integer(2.into()));
        let spec = DivisorSpec::from_poly(&base, &prod2, true).unwrap();
        assert_eq!(spec.factors.len(), 2);
        assert!(spec.factors.iter().any(|h| Poly::eq(cf, h, &f)));
        assert!(spec.factors.iter().any(|h| Poly::eq(cf, h, &g)));
    }

    #[test]
    fn make_integral_examples() {
        let base = q3();
        let cf = &crate::base::field::QQ;
        let f = QPoly::from_coeffs(
            cf,
            vec![Rat::new(BigInt::from(-1), BigInt::from(9)), Rat::from_integer(0.into()), Rat::from_integer(1.into())],
        );
        let (g, k) = make_integral(&base, &f).unwrap();
        assert_eq!(k, 1);
        assert!(Poly::eq(cf, &g, &ipoly(&[-1, 0, 1])));
        let (g, k) = make_integral(&base, &ipoly(&[5, 0, 1])).unwrap();
        assert_eq!(k, 0);
        assert!(Poly::eq(cf, &g, &ipoly(&[5, 0, 1])));
        let f = QPoly::from_coeffs(
            cf,
            vec![
                Rat::new(BigInt::from(-1), BigInt::from(27)),
                Rat::new(BigInt::from(-1), BigInt::from(3)),
                Rat::from_integer(0.into()),
                Rat::from_integer(1.into()),
            ],
        );
        let (g, k) = make_integral(&base, &f).unwrap();
        assert_eq!(k, 1);
        assert!(Poly::eq(cf, &g, &ipoly(&[-1, -3, 0, 1])));
    }

    #[test]
    fn model_for_first_branching_example() {
        let base = q3();
        let d = spec(&base, &[&[81, 0, 1], &[-26, -2, 1]]);
        let mv = alg31(&base, &d).unwrap();
        let v0 = gauss(base.clone());
        let x = ipoly(&[0, 1]);
        let xm1 = ipoly(&[-1, 1]);
        let expected = vec![
            v0.clone(),
            aug(&v0, &x, 1, 1),
            aug(&v0, &x, 2, 1),
            aug(&v0, &xm1, 1, 1),
            aug(&v0, &xm1, 3, 2),
            aug(&v0, &xm1, 2, 1),
        ];
        assert_finite_set(&mv, &expected);
        assert_eq!(mv.horizontal_indices().len(), 2);
        // provenance multiset
        let mut counts = std::collections::HashMap::new();
        for &t in &mv.prov {
            *counts.entry(provenance_label(t)).or_insert(0) += 1;
        }
        assert_eq!(counts.get("input"), Some(&2));
        assert_eq!(counts.get("predecessor"), Some(&3));
        assert_eq!(counts.get("n-path-step1"), Some(&2));
        assert_eq!(counts.get("n-path-step2"), Some(&1));
        assert!(verify_regularity(&mv).unwrap().ok());
    }

    #[test]
    fn first_example_component_graph_matches_its_figure() {
        let base = q3();
        let d = spec(&base, &[&[81, 0, 1], &[-26, -2, 1]]);
        let mv = alg31(&base, &d).unwrap();
        let g = component_graph(&mv).unwrap();
        assert_eq!(g.vertices.len(), 6);
        let v0 = gauss(base.clone());
        let x = ipoly(&[0, 1]);
        let xm1 = ipoly(&[-1, 1]);
        let find = |m: &MacVal<QBase>| {
            g.vertices
                .iter()
                .position(|&i| mv.tree.nodes[i].fin().unwrap().eq_val(m))
                .expect("vertex present")
        };
        let iv0 = find(&v0);
        let u1 = find(&aug(&v0, &x, 1, 1));
        let v1 = find(&aug(&v0, &x, 2, 1));
        let u2 = find(&aug(&v0, &xm1, 1, 1));
        let v2 = find(&aug(&v0, &xm1, 3, 2));
        let u3 = find(&aug(&v0, &xm1, 2, 1));
        let mut edges = g.edges.clone();
        edges.sort();
        let mut want = vec![(iv0, u1), (u1, v1), (iv0, u2), (u2, v2), (v2, u3)];
        want.sort();
        assert_eq!(edges, want);
        // x^2 + 81 meets the component of [v0, v(x)=2]; the other factor
        // meets the component of [v0, v(x-1)=3/2]
        let mut attach: Vec<usize> = g.horizontal.iter().map(|&(_, at)| at).collect();
        attach.sort();
        let mut want = vec![v1, v2];
        want.sort();
        assert_eq!(attach, want);
        assert_eq!(g.infinity, Some(iv0));
    }

    #[test]
    fn model_for_second_example() {
        let base = q2();
        let d = spec(&base, &[&[-16, 0, 0, 1], &[12, 4, 1], &[-4, 4, 1]]);
        let mv = alg31(&base, &d).unwrap();
        let v0 = gauss(base.clone());
        let x = ipoly(&[0, 1]);
        let xp2 = ipoly(&[2, 1]);
        let f2 = ipoly(&[12, 4, 1]);
        let vf21 = aug(&v0, &xp2, 3, 2);
        let expected = vec![
            v0.clone(),
            aug(&v0, &x, 1, 1),
            aug(&v0, &x, 4, 3),
            aug(&v0, &x, 3, 2),
            aug(&v0, &x, 2, 1),
            vf21.clone(),
            aug(&vf21, &f2, 7, 2),
            aug(&vf21, &f2, 4, 1),
            aug(&v0, &xp2, 2, 1),
        ];
        assert_finite_set(&mv, &expected);
        assert_eq!(mv.horizontal_indices().len(), 3);
        assert!(verify_regularity(&mv).unwrap().ok());
        // the cubic meets the component at [v0, v(x)=4/3]; both quadratics
        // meet the component at [v0, v(x+2)=3/2, v(f2)=4]
        let g = component_graph(&mv).unwrap();
        let v2 = aug(&vf21, &f2, 4, 1);
        let vf11 = aug(&v0, &x, 4, 3);
        let attach: Vec<&MacVal<QBase>> = g
            .horizontal
            .iter()
            .map(|&(_, at)| mv.tree.nodes[g.vertices[at]].fin().unwrap())
            .collect();
        assert_eq!(attach.len(), 3);
        assert_eq!(attach.iter().filter(|v| v.eq_val(&v2)).count(), 2);
        assert_eq!(attach.iter().filter(|v| v.eq_val(&vf11)).count(), 1);
    }

    #[test]
    fn good_reduction_and_empty_divisor() {
        let base = QBase::new(5).unwrap();
        let d = spec(&base, &[&[0, 1]]);
        let mv = alg31(&base, &d).unwrap();
        assert_finite_set(&mv, &[gauss(base.clone())]);
        assert_eq!(mv.horizontal_indices().len(), 1);
        assert!(verify_regularity(&mv).unwrap().ok());

        let empty = DivisorSpec::new(&base, vec![], true).unwrap();
        let mv = alg31(&base, &empty).unwrap();
        assert_finite_set(&mv, &[gauss(base.clone())]);
        assert!(verify_regularity(&mv).unwrap().ok());
    }

    #[test]
    fn shared_ray_branches() {
        // x - 1 and (x - 1)^2 - 27 branch along the same direction: the model
        // refines that ray and hangs both sections off it.
        let base = q3();
        let d = spec(&base, &[&[-1, 1], &[-26, -2, 1]]);
        let mv = alg31(&base, &d).unwrap();
        let v0 = gauss(base.clone());
        let xm1 = ipoly(&[-1, 1]);
        let expected = vec![
            v0.clone(),
            aug(&v0, &xm1, 1, 1),
            aug(&v0, &xm1, 3, 2),
            aug(&v0, &xm1, 2, 1),
        ];
        assert_finite_set(&mv, &expected);
        assert!(verify_regularity(&mv).unwrap().ok());
        let g = component_graph(&mv).unwrap();
        // x - 1 has value 2 on [v0, v(x-1)=2], so its section attaches there;
        // the quadratic attaches at [v0, v(x-1)=3/2].
        let attach: Vec<&MacVal<QBase>> = g
            .horizontal
            .iter()
            .map(|&(_, at)| mv.tree.nodes[g.vertices[at]].fin().unwrap())
            .collect();
        assert_eq!(attach.len(), 2);
        for want in [aug(&v0, &xm1, 2, 1), aug(&v0, &xm1, 3, 2)] {
            assert!(
                attach.iter().any(|v| v.eq_val(&want)),
                "no section attaches at {}",
                want.descr()
            );
        }
    }

    /// The intermediate set of the second example, before path insertions:
    /// branch points, their predecessors, and the infimum closure.
    fn second_example_before_insertions(base: &QBase) -> ModelVals<QBase> {
        let mut pairs: Vec<(TreePoint<QBase>, Provenance)> = Vec::new();
        pairs.push((TreePoint::Fin(gauss(base.clone())), Provenance::Predecessor));
        for cs in [&[-16i64, 0, 0, 1] as &[i64], &[12, 4, 1], &[-4, 4, 1]] {
            let g = ipoly(cs);
            for br in approximants(base, &g).unwrap() {
                for q in br.predecessors() {
                    pairs.push((TreePoint::Fin(q), Provenance::Predecessor));
                }
                pairs.push((TreePoint::Inf(br), Provenance::Input));
            }
        }
        let mut points: Vec<TreePoint<QBase>> = pairs.iter().map(|(p, _)| p.clone()).collect();
        let n0 = points.len();
        for i in 0..n0 {
            for j in i + 1..n0 {
                let m = inf(&points[i], &points[j]).unwrap();
                if !contains_point(&points, &m).unwrap() {
                    points.push(m.clone());
                    pairs.push((m, Provenance::Infimum));
                }
            }
        }
        ModelVals::from_points(pairs, true).unwrap()
    }

    #[test]
    fn insertion_step_examples() {
        let base = q2();
        let mv = second_example_before_insertions(&base);
        assert_eq!(mv.finite_vals().len(), 5);
        let v0 = gauss(base.clone());
        let x = ipoly(&[0, 1]);
        let xp2 = ipoly(&[2, 1]);
        let f2 = ipoly(&[12, 4, 1]);
        let vf21 = aug(&v0, &xp2, 3, 2);

        // At [v0, v(x+2)=3/2]: the segment up to the infimum node gets its
        // interior path point, and the non-integral last value is completed.
        let grown = alg32(&mv, &vf21).unwrap();
        for m in [aug(&vf21, &f2, 7, 2), aug(&v0, &xp2, 2, 1)] {
            assert!(!mv.contains_val(&m));
            assert!(grown.contains_val(&m), "missing {}", m.descr());
        }
        assert_eq!(grown.finite_vals().len(), 7);

        // At [v0, v(x)=4/3]: the value 4/3 is completed up to 2.
        let vf11 = aug(&v0, &x, 4, 3);
        let grown = alg32(&mv, &vf11).unwrap();
        for m in [aug(&v0, &x, 3, 2), aug(&v0, &x, 2, 1)] {
            assert!(grown.contains_val(&m), "missing {}", m.descr());
        }
        assert_eq!(grown.finite_vals().len(), 7);

        // alg32 at a valuation outside the model is rejected.
        assert!(alg32(&mv, &aug(&v0, &x, 7, 1)).is_err());
    }

    #[test]
    fn completed_models_are_stable() {
        let base = q3();
        let d = spec(&base, &[&[81, 0, 1], &[-26, -2, 1]]);
        let mv = alg31(&base, &d).unwrap();
        for v in mv.finite_vals() {
            let grown = alg32(&mv, v).unwrap();
            assert_eq!(grown.finite_vals().len(), mv.finite_vals().len());
        }
        // factor order does not matter
        let d2 = spec(&base, &[&[-26, -2, 1], &[81, 0, 1]]);
        let mv2 = alg31(&base, &d2).unwrap();
        for v in mv2.finite_vals() {
            assert!(mv.contains_val(v));
        }
        assert_eq!(mv.finite_vals().len(), mv2.finite_vals().len());
    }

    #[test]
    fn regularity_failures_are_reported() {
        let base = q3();
        let g = ipoly(&[-3, 0, 1]);
        let branches = approximants(&base, &g).unwrap();
        assert_eq!(branches.len(), 1);
        let br = branches.into_iter().next().unwrap();
        let v0 = gauss(base.clone());
        let x = ipoly(&[0, 1]);

        // {v0} alone: the branch's predecessor [v0, v(x)=1/2] is missing.
        let mv = ModelVals::from_points(
            vec![
                (TreePoint::Fin(v0.clone()), Provenance::Predecessor),
                (TreePoint::Inf(br.clone()), Provenance::Input),
            ],
            true,
        )
        .unwrap();
        let e = verify_regularity(&mv).unwrap_err();
        assert!(e.to_string().contains("[v0, v(x)=1/2]"), "{e}");

        // adding the predecessor makes the set closed, but its last value 1/2
        // still has no continuation, so the report flags the leaf.
        let half = aug(&v0, &x, 1, 2);
        let mv = ModelVals::from_points(
            vec![
                (TreePoint::Fin(v0.clone()), Provenance::Predecessor),
                (TreePoint::Fin(half.clone()), Provenance::Predecessor),
                (TreePoint::Inf(br.clone()), Provenance::Input),
            ],
            true,
        )
        .unwrap();
        let report = verify_regularity(&mv).unwrap();
        assert!(!report.ok());
        let issue = report.first().unwrap();
        assert_eq!(issue.node, half.descr());
        assert!(issue.reason.contains("no adjacent valuation"), "{}", issue.reason);

        // completing the path up to the next integer restores regularity.
        let mv = ModelVals::from_points(
            vec![
                (TreePoint::Fin(v0.clone()), Provenance::Predecessor),
                (TreePoint::Fin(half), Provenance::Predecessor),
                (TreePoint::Fin(aug(&v0, &x, 1, 1)), Provenance::PathStep2),
                (TreePoint::Inf(br), Provenance::Input),
            ],
            true,
        )
        .unwrap();
        assert!(verify_regularity(&mv).unwrap().ok());
    }

    #[test]
    fn model_json_shape() {
        let base = QBase::new(5).unwrap();
        let d = spec(&base, &[&[0, 1]]);
        let mv = alg31(&base, &d).unwrap();
        let got = model_json(&mv).unwrap();
        let want = json!({
            "p": 5,
            "nodes": [[], [["x", "inf"]]],
            "edges": [[0, 1]],
            "horizontal": [{"branch": "x", "at": 0}, {"branch": "inf", "at": 0}],
            "provenance": ["predecessor", "input"],
        });
        assert_eq!(got, want);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn random_divisors_give_regular_models(
            pi in 0usize..3,
            c0 in -9i64..10,
            c1 in -9i64..10,
            c2 in -9i64..10,
            deg in 2usize..5,
        ) {
            let p = [2u64, 3, 5][pi];
            let base = QBase::new(p).unwrap();
            let cf = &crate::base::field::QQ;
            let mut cs = vec![c0, c1, c2, 0, 0];
            cs.truncate(deg);
            cs.push(1);
            let f = ipoly(&cs);
            let d = Poly::derivative(cf, &f);
            prop_assume!(Poly::gcd(cf, &f, &d).deg() == 0);
            let spec = DivisorSpec::new(&base, vec![f], true).unwrap();
            let mv = alg31(&base, &spec).unwrap();
            let report = verify_regularity(&mv).unwrap();
            prop_assert!(report.ok(), "issues: {:?}", report.issues);
        }
    }
}
