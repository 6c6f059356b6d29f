//! Degree-1 kernel: orientation profiles, admissible weighted cycles, merge
//! elements and a spanning-forest generating set for `ker ∂̄` on edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::boundary::render_terms;
use crate::complex::{Digraph, ElementaryPath, PathComplex, VertexId};
use crate::cyclotomic::{field, CyclotomicField, Scalar};
use crate::homology::cycle_space;
use crate::linalg::{nullspace, Matrix, SparseVec, Subspace};
use crate::omega::MayerComplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("cycle is not admissible for N = {0}")]
    NotAdmissible(u32),
    #[error("merge not applicable: {0}")]
    NotApplicable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Aligned,
    Reversed,
}

pub type Edge = (VertexId, VertexId);

/// One traversal step `from → to`, backed by the digraph edge `edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Step {
    from: VertexId,
    to: VertexId,
    edge: Edge,
}

impl Step {
    fn reversed(self) -> Step {
        Step {
            from: self.to,
            to: self.from,
            edge: self.edge,
        }
    }
}

/// Closed walk `v_0 → v_1 → … → v_0` through distinct vertices of the
/// underlying multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedCycle {
    verts: Vec<VertexId>,
    orients: Vec<Orientation>,
}

impl UndirectedCycle {
    pub fn new(g: &Digraph, verts: Vec<VertexId>, orients: Vec<Orientation>) -> Result<Self, CycleError> {
        let n = verts.len();
        if n < 2 || orients.len() != n {
            return Err(CycleError::InvalidCycle(
                "need at least two steps, one orientation each".into(),
            ));
        }
        if verts.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(CycleError::InvalidCycle("repeated vertex".into()));
        }
        let c = UndirectedCycle { verts, orients };
        let steps = c.steps();
        if let Some(s) = steps.iter().find(|s| !g.has_edge(s.edge.0, s.edge.1)) {
            return Err(CycleError::InvalidCycle(format!("missing edge {:?}", s.edge)));
        }
        let edges: BTreeSet<Edge> = steps.iter().map(|s| s.edge).collect();
        if edges.len() != n {
            return Err(CycleError::InvalidCycle("an edge is used twice".into()));
        }
        Ok(c)
    }

    /// Orients each step along an edge when one exists in the traversal
    /// direction. A 2-cycle needs both edges of an antiparallel pair.
    pub fn from_vertices(g: &Digraph, verts: Vec<VertexId>) -> Result<Self, CycleError> {
        let n = verts.len();
        let orients = (0..n)
            .map(|j| {
                let (a, b) = (verts[j], verts[(j + 1) % n]);
                if g.has_edge(a, b) {
                    Orientation::Aligned
                } else {
                    Orientation::Reversed
                }
            })
            .collect();
        Self::new(g, verts, orients)
    }

    fn from_steps(steps: &[Step]) -> Self {
        UndirectedCycle {
            verts: steps.iter().map(|s| s.from).collect(),
            orients: steps
                .iter()
                .map(|s| {
                    if s.edge == (s.from, s.to) {
                        Orientation::Aligned
                    } else {
                        Orientation::Reversed
                    }
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn verts(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn orientations(&self) -> &[Orientation] {
        &self.orients
    }

    fn steps(&self) -> Vec<Step> {
        let n = self.verts.len();
        (0..n)
            .map(|j| {
                let (a, b) = (self.verts[j], self.verts[(j + 1) % n]);
                let edge = match self.orients[j] {
                    Orientation::Aligned => (a, b),
                    Orientation::Reversed => (b, a),
                };
                Step { from: a, to: b, edge }
            })
            .collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.steps().iter().map(|s| s.edge).collect()
    }

    pub fn render(&self, labels: &[String]) -> String {
        let mut parts: Vec<&str> = self.verts.iter().map(|&v| labels[v].as_str()).collect();
        parts.push(&labels[self.verts[0]]);
        parts.join("-")
    }
}

/// `u2` counts aligned steps, `u1` reversed ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientationProfile {
    pub n: usize,
    pub u1: usize,
    pub u2: usize,
}

pub fn orientation_profile(c: &UndirectedCycle) -> OrientationProfile {
    let u2 = c.orients.iter().filter(|o| **o == Orientation::Aligned).count();
    OrientationProfile {
        n: c.len(),
        u1: c.len() - u2,
        u2,
    }
}

pub fn is_admissible(c: &UndirectedCycle, n_order: u32) -> bool {
    let p = orientation_profile(c);
    let m = n_order as i64;
    let diff = (p.u1 as i64 - p.u2 as i64).rem_euclid(m);
    if p.n.is_multiple_of(2) {
        diff == 0
    } else {
        m % 2 == 0 && diff == m / 2
    }
}

/// Map from digraph edges to coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedChain {
    pub coeffs: BTreeMap<Edge, Scalar>,
}

impl WeightedChain {
    fn add_scaled(&mut self, other: &WeightedChain, c: &Scalar) {
        for (e, v) in &other.coeffs {
            let w = v * c;
            match self.coeffs.get_mut(e) {
                Some(acc) => {
                    *acc += &w;
                    if acc.is_zero() {
                        self.coeffs.remove(e);
                    }
                }
                None => {
                    if !w.is_zero() {
                        self.coeffs.insert(*e, w);
                    }
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `∂̄` with `∂̄e_{ab} = e_b + ξ e_a`.
    pub fn boundary(&self, n_order: u32) -> BTreeMap<VertexId, Scalar> {
        let f = field(n_order);
        let xi = Scalar::zeta_power(&f, 1);
        let mut out: BTreeMap<VertexId, Scalar> = BTreeMap::new();
        for (&(a, b), c) in &self.coeffs {
            for (v, w) in [(b, c.clone()), (a, &xi * c)] {
                let e = out.entry(v).or_insert_with(|| Scalar::zero(&f));
                *e += &w;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_cycle(&self, n_order: u32) -> bool {
        self.boundary(n_order).is_empty()
    }

    /// Coordinates over the allowed 1-paths of `pc`.
    pub fn to_vec(&self, pc: &PathComplex) -> SparseVec {
        SparseVec::from_pairs(self.coeffs.iter().map(|(&(a, b), c)| {
            let idx = pc
                .allowed_index(&ElementaryPath::new(vec![a, b]))
                .expect("chain supported on edges");
            (idx, c.clone())
        }))
    }

    pub fn from_vec(pc: &PathComplex, v: &SparseVec) -> Self {
        WeightedChain {
            coeffs: v
                .entries()
                .iter()
                .map(|(i, c)| {
                    let p = pc.allowed_path(1, *i);
                    ((p.first(), p.last()), c.clone())
                })
                .collect(),
        }
    }

    pub fn render(&self, labels: &[String]) -> String {
        render_terms(
            self.coeffs
                .iter()
                .map(|(&(a, b), c)| (format!("e_{{{},{}}}", labels[a], labels[b]), c)),
        )
    }
}

/// Coefficients of `from` and `to` in `∂̄` of the step's edge.
fn step_coeffs(s: &Step, f: &Arc<CyclotomicField>) -> (Scalar, Scalar) {
    let xi = Scalar::zeta_power(f, 1);
    let one = Scalar::one(f);
    if s.edge == (s.from, s.to) {
        (xi, one)
    } else {
        (one, xi)
    }
}

/// Weights along an open walk with `y_1 = 1` and cancellation at every
/// interior vertex. Returns the chain with the residual coefficients at the
/// first and last vertex.
fn walk_chain(steps: &[Step], f: &Arc<CyclotomicField>) -> (WeightedChain, Scalar, Scalar) {
    let mut chain = WeightedChain::default();
    let mut y = Scalar::one(f);
    let (x_first, _) = step_coeffs(&steps[0], f);
    let start = &x_first * &y;
    let mut end = Scalar::zero(f);
    for (j, s) in steps.iter().enumerate() {
        chain.coeffs.insert(s.edge, y.clone());
        let (_, xs) = step_coeffs(s, f);
        match steps.get(j + 1) {
            Some(next) => {
                let (xn, _) = step_coeffs(next, f);
                y = -(&xs * &y).try_div(&xn).expect("nonzero coefficient");
            }
            None => end = &xs * &y,
        }
    }
    (chain, start, end)
}

/// `Σ y_j v_j` with `y_1 = 1` and `y_{j+1} = −(x*_j / x_{j+1}) y_j`.
pub fn admissible_weights(c: &UndirectedCycle, n_order: u32) -> Result<WeightedChain, CycleError> {
    if !is_admissible(c, n_order) {
        return Err(CycleError::NotAdmissible(n_order));
    }
    let f = field(n_order);
    let (chain, _, _) = walk_chain(&c.steps(), &f);
    assert!(chain.is_cycle(n_order), "admissible cycle must give a kernel element");
    Ok(chain)
}

/// Rotates and orients `steps` so that `segment` (a run of consecutive
/// steps) comes first, running from `s` to `t`. Returns `None` when the
/// segment is not contiguous in the cycle.
fn align_segment(steps: &[Step], segment: &BTreeSet<Edge>, s: VertexId) -> Option<Vec<Step>> {
    let n = steps.len();
    for dir in [false, true] {
        let seq: Vec<Step> = if dir {
            steps.iter().rev().map(|x| x.reversed()).collect()
        } else {
            steps.to_vec()
        };
        for r in 0..n {
            let rot: Vec<Step> = (0..n).map(|k| seq[(r + k) % n]).collect();
            let k = segment.len();
            if rot[0].from == s && rot[..k].iter().all(|x| segment.contains(&x.edge)) {
                return Some(rot);
            }
        }
    }
    None
}

fn combine(parts: &[(WeightedChain, Scalar, Scalar)], coeffs: &SparseVec, f: &Arc<CyclotomicField>) -> WeightedChain {
    let mut out = WeightedChain::default();
    for (i, (chain, _, _)) in parts.iter().enumerate() {
        let c = coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(f));
        out.add_scaled(chain, &c);
    }
    out
}

/// A kernel element supported on `I ∪ J` for two intersecting
/// non-admissible cycles.
pub fn merge_element(i: &UndirectedCycle, j: &UndirectedCycle, n_order: u32) -> Result<WeightedChain, CycleError> {
    if is_admissible(i, n_order) || is_admissible(j, n_order) {
        return Err(CycleError::NotApplicable("an input cycle is admissible".into()));
    }
    let vi: BTreeSet<VertexId> = i.verts.iter().copied().collect();
    let shared: Vec<VertexId> = j.verts.iter().copied().filter(|v| vi.contains(v)).collect();
    if shared.is_empty() {
        return Err(CycleError::NotApplicable("cycles are vertex-disjoint".into()));
    }
    let ei: BTreeSet<Edge> = i.edges().into_iter().collect();
    let ej: BTreeSet<Edge> = j.edges().into_iter().collect();
    if ei == ej {
        return Err(CycleError::NotApplicable("cycles coincide".into()));
    }
    let common: BTreeSet<Edge> = ei.intersection(&ej).copied().collect();
    let f = field(n_order);
    let result = theta_merge(i, j, &common, &f).unwrap_or_else(|| vertex_merge(i, j, shared[0], &f));
    if result.is_zero() || !result.is_cycle(n_order) {
        return Err(CycleError::NotApplicable("no kernel element found on the merge".into()));
    }
    Ok(result)
}

/// Shared edges forming one path `s → t`: three internally disjoint paths,
/// combined by the 2×3 system on their end residuals.
fn theta_merge(
    i: &UndirectedCycle,
    j: &UndirectedCycle,
    common: &BTreeSet<Edge>,
    f: &Arc<CyclotomicField>,
) -> Option<WeightedChain> {
    if common.is_empty() {
        return None;
    }
    let si = i.steps();
    let k = common.len();
    // find the start of the shared run in I
    let start = (0..si.len()).find_map(|r| {
        let ok = (0..k).all(|d| common.contains(&si[(r + d) % si.len()].edge));
        let prev_shared = common.contains(&si[(r + si.len() - 1) % si.len()].edge);
        (ok && !prev_shared).then_some(si[r].from)
    })?;
    let ai = align_segment(&si, common, start)?;
    let t = ai[k - 1].to;
    let aj = align_segment(&j.steps(), common, start)?;
    if aj[k - 1].to != t || aj[..k] != ai[..k] {
        return None;
    }
    let back = |rest: &[Step]| -> Vec<Step> { rest.iter().rev().map(|x| x.reversed()).collect() };
    let paths = [ai[..k].to_vec(), back(&ai[k..]), back(&aj[k..])];
    if paths.iter().any(Vec::is_empty) {
        return None;
    }
    let parts: Vec<(WeightedChain, Scalar, Scalar)> = paths.iter().map(|p| walk_chain(p, f)).collect();
    let system = Matrix::from_dense(
        f,
        &[
            parts.iter().map(|p| p.1.clone()).collect(),
            parts.iter().map(|p| p.2.clone()).collect(),
        ],
    );
    let ns = nullspace(&system);
    let c = ns.basis().first()?;
    Some(combine(&parts, c, f))
}

/// Both cycles read as closed walks from a shared vertex `v`; their
/// residuals at `v` are balanced by a 1×2 system.
fn vertex_merge(i: &UndirectedCycle, j: &UndirectedCycle, v: VertexId, f: &Arc<CyclotomicField>) -> WeightedChain {
    let rotate = |c: &UndirectedCycle| -> Vec<Step> {
        let s = c.steps();
        let r = s.iter().position(|x| x.from == v).expect("shared vertex");
        (0..s.len()).map(|k| s[(r + k) % s.len()]).collect()
    };
    let parts: Vec<(WeightedChain, Scalar, Scalar)> = [rotate(i), rotate(j)]
        .iter()
        .map(|p| {
            let (chain, a, b) = walk_chain(p, f);
            (chain, &a + &b, Scalar::zero(f))
        })
        .collect();
    let system = Matrix::from_dense(f, &[parts.iter().map(|p| p.1.clone()).collect()]);
    let ns = nullspace(&system);
    combine(&parts, &ns.basis()[0], f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub non_tree_edge: Edge,
    pub cycle: UndirectedCycle,
    pub profile: OrientationProfile,
    pub admissible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSource {
    /// Weighted admissible fundamental cycle (index into the cycle list).
    Admissible(usize),
    /// Merge of two non-admissible fundamental cycles.
    Merge(usize, usize),
    /// Nullspace vector added because the constructed set fell short.
    Completion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z1Generator {
    pub source: GeneratorSource,
    pub chain: WeightedChain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z1Result {
    pub order: u32,
    pub cycles: Vec<FundamentalCycle>,
    pub generators: Vec<Z1Generator>,
    /// `dim ker ∂̄` on edges.
    pub kernel_dim: usize,
    /// Dimension spanned before completion vectors.
    pub constructed_dim: usize,
    /// `|E| − |V| + c`.
    pub circuit_rank: usize,
}

impl Z1Result {
    pub fn shortfall(&self) -> usize {
        self.kernel_dim - self.constructed_dim
    }
}

type ParentLinks = Vec<Option<(VertexId, Edge)>>;

/// BFS spanning forest of the underlying multigraph, roots taken in vertex
/// order. Returns parent links `(parent, edge)` and the component count.
fn spanning_forest(g: &Digraph) -> (ParentLinks, BTreeSet<Edge>, usize) {
    let n = g.vertex_count();
    let mut incident: Vec<Vec<(VertexId, Edge)>> = vec![vec![]; n];
    for &(a, b) in g.edges() {
        incident[a].push((b, (a, b)));
        incident[b].push((a, (a, b)));
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree = BTreeSet::new();
    let mut components = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        components += 1;
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &incident[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, e));
                    tree.insert(e);
                    queue.push_back(w);
                }
            }
        }
    }
    (parent, tree, components)
}

fn tree_path_to_root(parent: &[Option<(VertexId, Edge)>], mut v: VertexId) -> Vec<(VertexId, Option<Edge>)> {
    let mut out = vec![(v, None)];
    while let Some((p, e)) = parent[v] {
        out.last_mut().unwrap().1 = Some(e);
        out.push((p, None));
        v = p;
    }
    out
}

/// Fundamental cycle of the non-tree edge `(a, b)`: `a → b`, then the tree
/// path back to `a`.
fn fundamental_cycle(parent: &[Option<(VertexId, Edge)>], (a, b): Edge) -> UndirectedCycle {
    let pa = tree_path_to_root(parent, a);
    let pb = tree_path_to_root(parent, b);
    let on_a: BTreeSet<VertexId> = pa.iter().map(|x| x.0).collect();
    let lca = pb.iter().find(|x| on_a.contains(&x.0)).expect("same component").0;
    let mut steps = vec![Step {
        from: a,
        to: b,
        edge: (a, b),
    }];
    for w in pb.windows(2) {
        if w[0].0 == lca {
            break;
        }
        steps.push(Step {
            from: w[0].0,
            to: w[1].0,
            edge: w[0].1.unwrap(),
        });
    }
    let down: Vec<Step> = pa
        .windows(2)
        .take_while(|w| w[0].0 != lca)
        .map(|w| Step {
            from: w[1].0,
            to: w[0].0,
            edge: w[0].1.unwrap(),
        })
        .collect();
    steps.extend(down.into_iter().rev());
    UndirectedCycle::from_steps(&steps)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
}

/// Generators of `ker ∂̄` on the edges of `g`: weighted admissible
/// fundamental cycles plus merges of intersecting non-admissible ones, with
/// flagged nullspace vectors filling any remaining gap.
pub fn z1_generators(g: &Digraph, n_order: u32) -> Z1Result {
    let f = field(n_order);
    let (parent, tree, components) = spanning_forest(g);
    let cycles: Vec<FundamentalCycle> = g
        .edges()
        .iter()
        .filter(|e| !tree.contains(e))
        .map(|&e| {
            let cycle = fundamental_cycle(&parent, e);
            FundamentalCycle {
                non_tree_edge: e,
                profile: orientation_profile(&cycle),
                admissible: is_admissible(&cycle, n_order),
                cycle,
            }
        })
        .collect();
    let mut generators = Vec::new();
    for (k, c) in cycles.iter().enumerate() {
        if c.admissible {
            generators.push(Z1Generator {
                source: GeneratorSource::Admissible(k),
                chain: admissible_weights(&c.cycle, n_order).expect("admissible"),
            });
        }
    }
    let bad: Vec<usize> = (0..cycles.len()).filter(|&k| !cycles[k].admissible).collect();
    let mut uf = UnionFind((0..cycles.len()).collect());
    for (x, &a) in bad.iter().enumerate() {
        for &b in &bad[x + 1..] {
            let va: BTreeSet<VertexId> = cycles[a].cycle.verts.iter().copied().collect();
            if !cycles[b].cycle.verts.iter().any(|v| va.contains(v)) {
                continue;
            }
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                continue;
            }
            if let Ok(chain) = merge_element(&cycles[a].cycle, &cycles[b].cycle, n_order) {
                uf.0[ra] = rb;
                generators.push(Z1Generator {
                    source: GeneratorSource::Merge(a, b),
                    chain,
                });
            }
        }
    }
    let pc = PathComplex::from_digraph(g, 1);
    let mut mc = MayerComplex::new(&pc, n_order);
    let kernel = cycle_space(&mut mc, 1, 1);
    let mut span = Subspace::span(&f, pc.allowed_count(1), generators.iter().map(|x| x.chain.to_vec(&pc)));
    let constructed_dim = span.dim();
    for v in kernel.basis() {
        if !span.contains(v) {
            generators.push(Z1Generator {
                source: GeneratorSource::Completion,
                chain: WeightedChain::from_vec(&pc, v),
            });
            span = span
                .sum(&Subspace::span(&f, pc.allowed_count(1), [v.clone()]))
                .expect("same ambient space");
        }
    }
    assert!(kernel.contains_subspace(&span), "generators must lie in the kernel");
    Z1Result {
        order: n_order,
        cycles,
        generators,
        kernel_dim: kernel.dim(),
        constructed_dim,
        circuit_rank: g.edges().len() + components - g.vertex_count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(text: &str) -> Digraph {
        Digraph::parse(text).unwrap()
    }

    fn id(g: &Digraph, l: &str) -> VertexId {
        g.labels().iter().position(|x| x == l).unwrap()
    }

    fn square(g: &Digraph) -> UndirectedCycle {
        let v = ["1", "2", "3", "4"].iter().map(|l| id(g, l)).collect();
        UndirectedCycle::from_vertices(g, v).unwrap()
    }

    const L1: &str = "1 2\n1 4\n3 2\n4 3\n";
    const L2: &str = "1 2\n1 4\n2 3\n4 3\n";
    const L3: &str = "1 2\n1 4\n3 2\n3 4\n";

    #[test]
    fn profiles() {
        let l2 = graph(L2);
        assert_eq!(
            orientation_profile(&square(&l2)),
            OrientationProfile { n: 4, u1: 2, u2: 2 }
        );
        let tri = graph("1 2\n2 3\n3 1\n");
        let c = UndirectedCycle::from_vertices(&tri, vec![0, 1, 2]).unwrap();
        assert_eq!(orientation_profile(&c), OrientationProfile { n: 3, u1: 0, u2: 3 });
        let de = graph("1 2\n2 1\n");
        let c = UndirectedCycle::from_vertices(&de, vec![0, 1]).unwrap();
        assert_eq!(orientation_profile(&c), OrientationProfile { n: 2, u1: 0, u2: 2 });
        assert!(is_admissible(&c, 2));
        assert!(!is_admissible(&c, 3));
        assert!(UndirectedCycle::from_vertices(&tri, vec![0, 1]).is_err());
    }

    #[test]
    fn admissibility_of_squares() {
        let got: Vec<bool> = [L1, L2, L3]
            .iter()
            .map(|t| is_admissible(&square(&graph(t)), 3))
            .collect();
        assert_eq!(got, vec![false, true, true]);
        assert!([L1, L2, L3].iter().all(|t| is_admissible(&square(&graph(t)), 2)));
    }

    #[test]
    fn weights_match_kernels() {
        let f = field(3);
        let l2 = graph(L2);
        let w = admissible_weights(&square(&l2), 3).unwrap();
        let pc = PathComplex::from_digraph(&l2, 1);
        let xi = Scalar::zeta_power(&f, 1);
        let one = Scalar::one(&f);
        let expected = WeightedChain {
            coeffs: BTreeMap::from([
                ((id(&l2, "1"), id(&l2, "2")), xi.clone()),
                ((id(&l2, "1"), id(&l2, "4")), -&xi),
                ((id(&l2, "2"), id(&l2, "3")), -&one),
                ((id(&l2, "4"), id(&l2, "3")), one.clone()),
            ]),
        };
        let span = Subspace::span(&f, 4, [expected.to_vec(&pc)]);
        assert!(span.contains(&w.to_vec(&pc)));
        let l3 = graph(L3);
        let w = admissible_weights(&square(&l3), 3).unwrap();
        assert!(w.is_cycle(3));
        assert!(matches!(
            admissible_weights(&square(&graph(L1)), 3),
            Err(CycleError::NotAdmissible(3))
        ));
        let hex = graph("1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n");
        let c = UndirectedCycle::from_vertices(&hex, (0..6).collect()).unwrap();
        assert!(admissible_weights(&c, 3).unwrap().is_cycle(3));
    }

    #[test]
    fn merges() {
        let theta = graph("1 2\n2 3\n3 1\n3 4\n4 1\n");
        let a = UndirectedCycle::from_vertices(&theta, vec![0, 1, 2]).unwrap();
        let b = UndirectedCycle::from_vertices(&theta, vec![0, 2, 3]).unwrap();
        assert!(!is_admissible(&a, 3) && !is_admissible(&b, 3));
        let m = merge_element(&a, &b, 3).unwrap();
        assert!(m.is_cycle(3));
        assert_eq!(m.coeffs.len(), 5);
        let bowtie = graph("1 2\n2 3\n3 1\n1 4\n4 5\n5 1\n");
        let a = UndirectedCycle::from_vertices(&bowtie, vec![0, 1, 2]).unwrap();
        let b = UndirectedCycle::from_vertices(&bowtie, vec![0, 3, 4]).unwrap();
        let m = merge_element(&a, &b, 3).unwrap();
        assert!(m.is_cycle(3));
        assert_eq!(m.coeffs.len(), 6);
        let l2 = graph(L2);
        assert!(matches!(
            merge_element(&square(&l2), &square(&l2), 3),
            Err(CycleError::NotApplicable(_))
        ));
    }

    #[test]
    fn generator_sets() {
        let r = z1_generators(&graph(L2), 3);
        assert_eq!((r.generators.len(), r.kernel_dim, r.shortfall()), (1, 1, 0));
        let r = z1_generators(&graph(L1), 3);
        assert_eq!((r.generators.len(), r.kernel_dim), (0, 0));
        let r = z1_generators(&graph("1 2\n2 3\n3 1\n1 4\n4 5\n5 1\n2 5\n"), 2);
        assert_eq!(r.generators.len(), r.circuit_rank);
        assert_eq!(r.kernel_dim, r.circuit_rank);
        for n_order in 2..=4 {
            let r = z1_generators(&graph("1 2\n2 3\n3 1\n3 4\n4 1\n"), n_order);
            assert_eq!(r.shortfall(), 0);
            assert!(r.generators.iter().all(|x| x.chain.is_cycle(n_order)));
        }
    }
}
