//! Generators of Ω_2^N and Ω_3^N: face types, γ-labels, minimal clusters and
//! special edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::boundary::{render_terms, Chain};
use crate::complex::{ElementaryPath, PathComplex, VertexId};
use crate::cyclotomic::{field, Scalar};
use crate::linalg::{intersect, nullspace, Matrix, SparseVec, Subspace};
use crate::omega::MayerComplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("generators span a {got}-dimensional space, expected {expected}")]
    SpanMismatch { expected: usize, got: usize },
    #[error("not a Mayer square form: {0}")]
    NotMayerForm(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceType {
    T,
    S,
    W,
    Nw,
}

impl fmt::Display for FaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaceType::T => "T",
            FaceType::S => "S",
            FaceType::W => "W",
            FaceType::Nw => "Nw",
        })
    }
}

/// Face types of `(e_{jkl}, e_{ikl}, e_{ijl}, e_{ijk})` for `e_{ijkl}`.
pub type ImageType = [FaceType; 4];

pub fn render_image_type(t: &ImageType) -> String {
    let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaLabel {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9,
    None,
}

impl GammaLabel {
    pub fn number(self) -> Option<u8> {
        use GammaLabel::*;
        Some(match self {
            G1 => 1,
            G2 => 2,
            G3 => 3,
            G4 => 4,
            G5 => 5,
            G6 => 6,
            G7 => 7,
            G8 => 8,
            G9 => 9,
            None => return Option::None,
        })
    }
}

impl fmt::Display for GammaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.number() {
            Some(k) => write!(f, "g{k}"),
            None => f.write_str("none"),
        }
    }
}

/// Classifies the 2-face `e_{a,m,c}` by its endpoints `(a, c)`.
///
/// Faces with equal endpoints and irregular faces impose no condition on the
/// boundary and are reported as `T`.
pub fn face_type(pc: &PathComplex, face: &ElementaryPath) -> FaceType {
    assert_eq!(face.len(), 2, "faces of 3-paths have length 2");
    let (a, m, c) = (face.verts()[0], face.verts()[1], face.verts()[2]);
    if !face.is_regular() || a == c {
        return FaceType::T;
    }
    if !pc.is_allowed(face) {
        return FaceType::Nw;
    }
    if pc.has_edge(a, c) {
        return FaceType::T;
    }
    let partner = (0..pc.vertex_count()).any(|b| b != m && b != a && b != c && pc.has_edge(a, b) && pc.has_edge(b, c));
    if partner {
        FaceType::S
    } else {
        FaceType::W
    }
}

pub fn image_type(pc: &PathComplex, v: &ElementaryPath) -> ImageType {
    assert_eq!(v.len(), 3, "image types are defined for 3-paths");
    let face = |j| v.face(j).expect("index in range");
    [
        face_type(pc, &face(0)),
        face_type(pc, &face(1)),
        face_type(pc, &face(2)),
        face_type(pc, &face(3)),
    ]
}

pub fn label_of(t: &ImageType) -> GammaLabel {
    use FaceType::*;
    match t {
        [S, T, Nw, T] => GammaLabel::G1,
        [S, S, Nw, T] => GammaLabel::G2,
        [S, W, Nw, T] => GammaLabel::G3,
        [T, Nw, T, S] => GammaLabel::G4,
        [T, Nw, S, S] => GammaLabel::G5,
        [T, Nw, W, S] => GammaLabel::G6,
        [S, Nw, Nw, S] => GammaLabel::G7,
        [T, S, S, T] => GammaLabel::G8,
        [T, T, T, T] => GammaLabel::G9,
        _ => GammaLabel::None,
    }
}

pub fn gamma_label(pc: &PathComplex, v: &ElementaryPath) -> GammaLabel {
    label_of(&image_type(pc, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Omega2Kind {
    DoubleEdge,
    Triangle,
    Square,
}

impl fmt::Display for Omega2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Omega2Kind::DoubleEdge => "double-edge",
            Omega2Kind::Triangle => "triangle",
            Omega2Kind::Square => "square",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Omega2Generator {
    pub kind: Omega2Kind,
    pub terms: Vec<(ElementaryPath, Scalar)>,
}

impl Omega2Generator {
    pub fn render(&self, pc: &PathComplex) -> String {
        render_terms(self.terms.iter().map(|(p, c)| (pc.render(p), c)))
    }

    fn to_vec(&self, pc: &PathComplex) -> SparseVec {
        SparseVec::from_pairs(
            self.terms
                .iter()
                .map(|(p, c)| (pc.allowed_index(p).expect("allowed 2-path"), c.clone())),
        )
    }
}

/// Allowed 2-paths grouped by ordered endpoint pair, middles ascending.
fn two_paths_by_ends(pc: &PathComplex) -> BTreeMap<(VertexId, VertexId), Vec<VertexId>> {
    let mut out: BTreeMap<(VertexId, VertexId), Vec<VertexId>> = BTreeMap::new();
    for p in pc.allowed(2) {
        let v = p.verts();
        if v[0] != v[2] {
            out.entry((v[0], v[2])).or_default().push(v[1]);
        }
    }
    for mids in out.values_mut() {
        mids.sort_unstable();
    }
    out
}

/// Double edges, triangles and squares, checked to span `Ω_2^N`.
pub fn omega2_decompose(pc: &PathComplex, n_order: u32) -> Result<Vec<Omega2Generator>, StructureError> {
    let f = field(n_order);
    let one = Scalar::one(&f);
    let mut gens = Vec::new();
    for p in pc.allowed(2) {
        let v = p.verts();
        if v[0] == v[2] {
            gens.push(Omega2Generator {
                kind: Omega2Kind::DoubleEdge,
                terms: vec![(p.clone(), one.clone())],
            });
        } else if pc.has_edge(v[0], v[2]) {
            gens.push(Omega2Generator {
                kind: Omega2Kind::Triangle,
                terms: vec![(p.clone(), one.clone())],
            });
        }
    }
    for ((a, c), mids) in two_paths_by_ends(pc) {
        if pc.has_edge(a, c) || mids.len() < 2 {
            continue;
        }
        let anchor = ElementaryPath::new(vec![a, mids[0], c]);
        for &m in &mids[1..] {
            gens.push(Omega2Generator {
                kind: Omega2Kind::Square,
                terms: vec![
                    (anchor.clone(), one.clone()),
                    (ElementaryPath::new(vec![a, m, c]), -&one),
                ],
            });
        }
    }
    let span = Subspace::span(&f, pc.allowed_count(2), gens.iter().map(|g| g.to_vec(pc)));
    let omega = MayerComplex::new(pc, n_order).omega_full(2);
    if span != omega {
        return Err(StructureError::SpanMismatch {
            expected: omega.dim(),
            got: span.dim(),
        });
    }
    Ok(gens)
}

/// `e_{start,m_0,end} + Σ_{k≥1} ξ^k e_{start,m_k,end}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MayerSquareForm {
    pub start: VertexId,
    pub end: VertexId,
    pub middles: Vec<VertexId>,
}

impl MayerSquareForm {
    pub fn chain(&self, n_order: u32) -> Chain {
        let f = field(n_order);
        self.middles
            .iter()
            .enumerate()
            .map(|(k, &m)| {
                (
                    ElementaryPath::new(vec![self.start, m, self.end]),
                    Scalar::zeta_power(&f, k as i64),
                )
            })
            .collect()
    }
}

/// The square `e_{start,anchor,end} − e_{start,other,end}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub start: VertexId,
    pub end: VertexId,
    pub anchor: VertexId,
    pub other: VertexId,
}

/// Writes a Mayer square form as `Σ_{k≥1} −ξ^k (e_{i,m_0,k} − e_{i,m_k,k})`,
/// verifying that the sum reproduces the form.
pub fn mayer_square_reduce(
    pc: &PathComplex,
    n_order: u32,
    form: &MayerSquareForm,
) -> Result<Vec<(Scalar, Square)>, StructureError> {
    let bad = |m: &str| Err(StructureError::NotMayerForm(m.to_string()));
    if form.middles.len() < 2 {
        return bad("fewer than two middle vertices");
    }
    let distinct: BTreeSet<_> = form.middles.iter().collect();
    if distinct.len() != form.middles.len() {
        return bad("repeated middle vertex");
    }
    if form.start == form.end || form.middles.iter().any(|&m| m == form.start || m == form.end) {
        return bad("middle vertex coincides with an endpoint");
    }
    let target = form.chain(n_order);
    if let Some(p) = target.keys().find(|p| !pc.is_allowed(p)) {
        return bad(&format!("component {} is not allowed", pc.render(p)));
    }
    let f = field(n_order);
    let squares: Vec<(Scalar, Square)> = form.middles[1..]
        .iter()
        .enumerate()
        .map(|(k, &m)| {
            (
                -Scalar::zeta_power(&f, k as i64 + 1),
                Square {
                    start: form.start,
                    end: form.end,
                    anchor: form.middles[0],
                    other: m,
                },
            )
        })
        .collect();
    let mut sum = Chain::new();
    for (c, sq) in &squares {
        for (mid, sign) in [(sq.anchor, Scalar::one(&f)), (sq.other, -Scalar::one(&f))] {
            let p = ElementaryPath::new(vec![sq.start, mid, sq.end]);
            let v = &(c * &sign) + sum.get(&p).unwrap_or(&Scalar::zero(&f));
            if v.is_zero() {
                sum.remove(&p);
            } else {
                sum.insert(p, v);
            }
        }
    }
    if sum != target {
        return bad("coefficients do not sum to zero, so the form is not a sum of squares");
    }
    Ok(squares)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = *self as u8 + 1;
        write!(f, "T{k}")
    }
}

/// Family of a cluster from the set of labels of its components.
pub fn family_of(labels: &BTreeSet<GammaLabel>) -> Option<Family> {
    use GammaLabel::*;
    if labels.is_empty() || labels.contains(&None) {
        return Option::None;
    }
    let within = |allowed: &[GammaLabel]| labels.iter().all(|l| allowed.contains(l));
    let one = |l: GammaLabel| labels.len() == 1 && labels.contains(&l);
    if one(G9) {
        Some(Family::T5)
    } else if one(G8) {
        Some(Family::T6)
    } else if one(G7) {
        Some(Family::T4)
    } else if within(&[G1, G4, G7]) {
        Some(Family::T1)
    } else if within(&[G2, G5, G7, G8]) {
        Some(Family::T2)
    } else if within(&[G3, G6, G7]) {
        Some(Family::T3)
    } else {
        Option::None
    }
}

/// Which 3-dimensional space the clusters are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterSpace {
    /// `Ω_3^{N,1}`.
    FirstLevel,
    /// `Ω_3^N`.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterComponent {
    pub path: ElementaryPath,
    pub coeff: Scalar,
    pub image_type: ImageType,
    pub label: GammaLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterReport {
    /// Common endpoints of all components, when they agree.
    pub endpoints: Option<(VertexId, VertexId)>,
    pub components: Vec<ClusterComponent>,
    pub family: Option<Family>,
    /// `g2-(g7)^1-g5` style shape for chains, `(g7)^k` for pure γ_7 clusters.
    pub chain: Option<String>,
    /// Coordinates over the allowed 3-paths.
    pub vector: SparseVec,
}

impl ClusterReport {
    pub fn labels(&self) -> BTreeSet<GammaLabel> {
        self.components.iter().map(|c| c.label).collect()
    }

    pub fn render(&self, pc: &PathComplex) -> String {
        render_terms(self.components.iter().map(|c| (pc.render(&c.path), &c.coeff)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterAnalysis {
    pub space: ClusterSpace,
    pub clusters: Vec<ClusterReport>,
    pub kernel_dim: usize,
    pub circuits_rank: usize,
    /// Set when circuits within the bound fail to span the space.
    pub bound_exceeded: bool,
}

/// Upper limit on connected subsets examined per size level.
const LEVEL_CAP: usize = 200_000;

struct Constraints {
    /// Nonzero rows of each column.
    col_rows: Vec<BTreeSet<usize>>,
    row_cols: Vec<BTreeSet<usize>>,
    matrix: Matrix,
}

fn constraints(mc: &mut MayerComplex, space: ClusterSpace) -> Constraints {
    let top = match space {
        ClusterSpace::FirstLevel => 1,
        ClusterSpace::Full => (mc.order() as usize - 1).min(2),
    };
    let cols = mc.complex().allowed_count(3);
    let mut rows: Vec<SparseVec> = Vec::new();
    for q in 1..=top {
        let block = mc.engine().power_matrix(3, q).nonallowed_block();
        rows.extend(block.row_vecs().into_iter().filter(|r| !r.is_zero()));
    }
    let f = mc.engine_ref().field().clone();
    let matrix = Matrix::from_rows(&f, cols, &rows);
    let mut col_rows = vec![BTreeSet::new(); cols];
    let mut row_cols = vec![BTreeSet::new(); rows.len()];
    for (r, row) in rows.iter().enumerate() {
        for c in row.support() {
            col_rows[c].insert(r);
            row_cols[r].insert(c);
        }
    }
    Constraints {
        col_rows,
        row_cols,
        matrix,
    }
}

impl Constraints {
    fn neighbours(&self, c: usize) -> BTreeSet<usize> {
        self.col_rows[c]
            .iter()
            .flat_map(|r| self.row_cols[*r].iter().copied())
            .filter(|&d| d != c)
            .collect()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.col_rows.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                for d in self.neighbours(comp[k]) {
                    if !seen[d] {
                        seen[d] = true;
                        comp.push(d);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The kernel vector of the columns `s` when it is unique up to scale
    /// and has full support.
    fn circuit(&self, s: &[usize]) -> Option<SparseVec> {
        let rows: BTreeSet<usize> = s.iter().flat_map(|c| self.col_rows[*c].iter().copied()).collect();
        let covered = rows
            .iter()
            .all(|r| self.row_cols[*r].iter().filter(|c| s.binary_search(c).is_ok()).count() >= 2);
        if !covered && !rows.is_empty() {
            return None;
        }
        let rows: Vec<usize> = rows.into_iter().collect();
        let sub = self.matrix.select_rows(&rows).select_cols(s);
        let ns = nullspace(&sub);
        if ns.dim() != 1 || ns.basis()[0].len_nonzero() != s.len() {
            return None;
        }
        Some(SparseVec::from_pairs(
            ns.basis()[0].entries().iter().map(|(i, v)| (s[*i], v.clone())),
        ))
    }
}

/// Minimal-support elements of `Ω_3^{N,1}` or `Ω_3^N`, searched by
/// increasing support size up to `circuit_bound`.
pub fn minimal_clusters(pc: &PathComplex, n_order: u32, space: ClusterSpace, circuit_bound: usize) -> ClusterAnalysis {
    let mut mc = MayerComplex::new(pc, n_order);
    let cons = constraints(&mut mc, space);
    let f = field(n_order);
    let kernel = nullspace(&cons.matrix);
    let mut circuits: Vec<SparseVec> = Vec::new();
    let mut bound_exceeded = false;
    for comp in cons.components() {
        let sub = cons.matrix.select_cols(&comp);
        let want = nullspace(&sub).dim();
        if want == 0 {
            continue;
        }
        let mut found: Vec<SparseVec> = Vec::new();
        let mut level: Vec<Vec<usize>> = comp.iter().map(|&c| vec![c]).collect();
        let mut size = 1;
        loop {
            for s in &level {
                if let Some(v) = cons.circuit(s) {
                    found.push(v);
                }
            }
            let rank = Subspace::span(&f, cons.matrix.cols(), found.iter().cloned()).dim();
            if rank == want {
                break;
            }
            if size >= circuit_bound.min(comp.len()) {
                bound_exceeded = true;
                break;
            }
            let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
            for s in &level {
                let frontier: BTreeSet<usize> = s.iter().flat_map(|&c| cons.neighbours(c)).collect();
                for d in frontier {
                    if d > s[0] && s.binary_search(&d).is_err() {
                        let mut t = s.clone();
                        t.insert(t.partition_point(|&x| x < d), d);
                        next.insert(t);
                    }
                }
                if next.len() > LEVEL_CAP {
                    break;
                }
            }
            if next.len() > LEVEL_CAP || next.is_empty() {
                bound_exceeded = true;
                break;
            }
            level = next.into_iter().collect();
            size += 1;
        }
        circuits.extend(found);
    }
    let circuits_rank = Subspace::span(&f, cons.matrix.cols(), circuits.iter().cloned()).dim();
    let clusters = circuits.iter().map(|v| report(pc, &cons, v)).collect();
    ClusterAnalysis {
        space,
        clusters,
        kernel_dim: kernel.dim(),
        circuits_rank,
        bound_exceeded,
    }
}

fn report(pc: &PathComplex, cons: &Constraints, v: &SparseVec) -> ClusterReport {
    let components: Vec<ClusterComponent> = v
        .entries()
        .iter()
        .map(|(i, c)| {
            let path = pc.allowed_path(3, *i).clone();
            let t = image_type(pc, &path);
            ClusterComponent {
                path,
                coeff: c.clone(),
                image_type: t,
                label: label_of(&t),
            }
        })
        .collect();
    let ends: BTreeSet<(VertexId, VertexId)> = components.iter().map(|c| (c.path.first(), c.path.last())).collect();
    let endpoints = (ends.len() == 1).then(|| *ends.iter().next().unwrap());
    let labels: BTreeSet<GammaLabel> = components.iter().map(|c| c.label).collect();
    let chain = chain_shape(cons, v, &components);
    ClusterReport {
        endpoints,
        components,
        family: family_of(&labels),
        chain,
        vector: v.clone(),
    }
}

/// Shape of the graph joining components that share a constraint row.
fn chain_shape(cons: &Constraints, v: &SparseVec, comps: &[ClusterComponent]) -> Option<String> {
    let cols: Vec<usize> = v.support().collect();
    let k = cols.len();
    if comps.iter().any(|c| c.label == GammaLabel::None) {
        return None;
    }
    if k == 1 {
        return Some(comps[0].label.to_string());
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for a in 0..k {
        for b in a + 1..k {
            if !cons.col_rows[cols[a]].is_disjoint(&cons.col_rows[cols[b]]) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let g7 = GammaLabel::G7;
    if comps.iter().all(|c| c.label == g7) {
        return Some(format!("(g7)^{k}"));
    }
    let ends: Vec<usize> = (0..k).filter(|&i| adj[i].len() == 1).collect();
    if ends.len() != 2 || adj.iter().any(|a| a.len() > 2) {
        return None;
    }
    let mut order = vec![ends[0]];
    let mut prev = usize::MAX;
    while order.len() < k {
        let cur = *order.last().unwrap();
        let next = adj[cur].iter().copied().find(|&d| d != prev)?;
        prev = cur;
        order.push(next);
    }
    let interior_ok = order[1..k - 1].iter().all(|&i| comps[i].label == g7);
    let (a, b) = (comps[order[0]].label, comps[order[k - 1]].label);
    if !interior_ok || a == g7 || b == g7 {
        return None;
    }
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    Some(format!("{a}-(g7)^{}-{b}", k - 2))
}

/// Non-edge pairs joined by allowed 2-paths: several (connecting) or exactly
/// one (complementary).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecialEdges {
    pub connecting: BTreeSet<(VertexId, VertexId)>,
    pub complementary: BTreeSet<(VertexId, VertexId)>,
}

pub fn special_edges(pc: &PathComplex) -> SpecialEdges {
    let mut out = SpecialEdges::default();
    for ((a, c), mids) in two_paths_by_ends(pc) {
        if pc.has_edge(a, c) {
            continue;
        }
        if mids.len() >= 2 {
            out.connecting.insert((a, c));
        } else {
            out.complementary.insert((a, c));
        }
    }
    out
}

/// A first-level minimal cluster of the kind expected to fail the `q = 2`
/// condition for `N ≥ 3`, and whether it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionCase {
    pub cluster: ClusterReport,
    pub in_full: bool,
    pub expected_in_full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Omega3Check {
    /// `Ω_3^N` from all constraints `1 ≤ q ≤ N−1` equals `Ω_3^{N,1} ∩ Ω_3^{N,2}`.
    pub intersection_holds: bool,
    pub exclusions: Vec<ExclusionCase>,
}

impl Omega3Check {
    pub fn holds(&self) -> bool {
        self.intersection_holds && self.exclusions.iter().all(|e| e.in_full == e.expected_in_full)
    }
}

pub fn omega3_intersection_check(pc: &PathComplex, n_order: u32, circuit_bound: usize) -> Omega3Check {
    let mut mc = MayerComplex::new(pc, n_order);
    let f = field(n_order);
    let cols = pc.allowed_count(3);
    let mut rows: Vec<SparseVec> = Vec::new();
    for q in 1..n_order as usize {
        rows.extend(mc.engine().power_matrix(3, q).nonallowed_block().row_vecs());
    }
    let direct = nullspace(&Matrix::from_rows(&f, cols, &rows));
    let first = mc.omega_nq(3, 1);
    let pair = if n_order >= 3 {
        intersect(&first, &mc.omega_nq(3, 2)).expect("same ambient space")
    } else {
        first
    };
    let full = mc.omega_full(3);
    let intersection_holds = direct == pair && pair == full;
    let analysis = minimal_clusters(pc, n_order, ClusterSpace::FirstLevel, circuit_bound);
    let exclusions = analysis
        .clusters
        .into_iter()
        .filter(|c| {
            let l = c.labels();
            c.family == Some(Family::T6) || (c.family == Some(Family::T2) && !l.contains(&GammaLabel::G8))
        })
        .map(|c| ExclusionCase {
            in_full: full.contains(&c.vector),
            expected_in_full: n_order == 2,
            cluster: c,
        })
        .collect();
    Omega3Check {
        intersection_holds,
        exclusions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Digraph;

    fn pc_of(text: &str, depth: usize) -> PathComplex {
        PathComplex::from_digraph(&Digraph::parse(text).unwrap(), depth)
    }

    fn path(v: &[usize]) -> ElementaryPath {
        ElementaryPath::new(v.to_vec())
    }

    const DIAMOND: &str = "1 2\n1 3\n2 3\n2 4\n3 4\n";
    const EXCLUSION: &str = "1 2\n2 3\n3 4\n2 6\n6 4\n1 5\n5 6\n1 3\n5 4\n";

    #[test]
    fn face_types() {
        let d = pc_of(DIAMOND, 3);
        assert_eq!(face_type(&d, &path(&[0, 1, 3])), FaceType::S);
        let t1 = pc_of("1 2\n1 3\n2 3\n", 2);
        assert_eq!(face_type(&t1, &path(&[0, 1, 2])), FaceType::T);
        let l1 = pc_of("1 2\n1 4\n3 2\n4 3\n", 2);
        // labels 1,2,4,3 intern to ids 0,1,2,3
        assert_eq!(face_type(&l1, &path(&[0, 2, 3])), FaceType::W);
        assert_eq!(face_type(&l1, &path(&[0, 1, 3])), FaceType::Nw);
    }

    #[test]
    fn image_types() {
        let d = pc_of(DIAMOND, 3);
        use FaceType::*;
        assert_eq!(image_type(&d, &path(&[0, 1, 2, 3])), [T, S, S, T]);
        assert_eq!(gamma_label(&d, &path(&[0, 1, 2, 3])), GammaLabel::G8);
        let k4: String = (1..=4)
            .flat_map(|a| (1..=4).filter(move |&b| b != a).map(move |b| format!("{a} {b}\n")))
            .collect();
        let k = pc_of(&k4, 3);
        assert_eq!(gamma_label(&k, &path(&[0, 1, 2, 3])), GammaLabel::G9);
        let e = pc_of(EXCLUSION, 3);
        let id = |l: &str| e.labels().iter().position(|x| x == l).unwrap();
        let p = |ls: &[&str]| path(&ls.iter().map(|l| id(l)).collect::<Vec<_>>());
        assert_eq!(image_type(&e, &p(&["1", "2", "3", "4"]))[2], FaceType::Nw);
        assert_eq!(gamma_label(&e, &p(&["1", "2", "3", "4"])), GammaLabel::G2);
        assert_eq!(gamma_label(&e, &p(&["1", "2", "6", "4"])), GammaLabel::G7);
        assert_eq!(gamma_label(&e, &p(&["1", "5", "6", "4"])), GammaLabel::G5);
    }

    #[test]
    fn omega2_generators() {
        let d = pc_of(DIAMOND, 3);
        for n_order in 2..=4 {
            let g = omega2_decompose(&d, n_order).unwrap();
            let kinds: Vec<Omega2Kind> = g.iter().map(|x| x.kind).collect();
            assert_eq!(
                kinds,
                vec![Omega2Kind::Triangle, Omega2Kind::Triangle, Omega2Kind::Square]
            );
            assert_eq!(g[2].render(&d), "e_{1,2,4} - e_{1,3,4}");
        }
        let de = pc_of("1 2\n2 1\n", 2);
        let g = omega2_decompose(&de, 3).unwrap();
        assert!(g.iter().all(|x| x.kind == Omega2Kind::DoubleEdge));
        assert_eq!(g.len(), 2);
        let l3 = pc_of("1 2\n1 4\n3 2\n3 4\n", 2);
        assert!(omega2_decompose(&l3, 3).unwrap().is_empty());
    }

    #[test]
    fn square_reduction() {
        let g = pc_of("1 2\n1 3\n1 5\n2 4\n3 4\n5 4\n", 2);
        let id = |l: &str| g.labels().iter().position(|x| x == l).unwrap();
        let form = MayerSquareForm {
            start: id("1"),
            end: id("4"),
            middles: vec![id("2"), id("3"), id("5")],
        };
        let f = field(3);
        let sq = mayer_square_reduce(&g, 3, &form).unwrap();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0].0, -Scalar::zeta_power(&f, 1));
        assert_eq!(sq[1].0, -Scalar::zeta_power(&f, 2));
        assert_eq!(sq[1].1.other, id("5"));
        let two = MayerSquareForm {
            middles: vec![id("2"), id("3")],
            ..form.clone()
        };
        assert_eq!(mayer_square_reduce(&g, 2, &two).unwrap().len(), 1);
        assert!(mayer_square_reduce(&g, 3, &two).is_err());
        let bad = MayerSquareForm {
            middles: vec![id("2"), id("4")],
            ..form
        };
        assert!(matches!(
            mayer_square_reduce(&g, 2, &bad),
            Err(StructureError::NotMayerForm(_))
        ));
    }

    #[test]
    fn diamond_cluster() {
        let d = pc_of(DIAMOND, 3);
        let a = minimal_clusters(&d, 2, ClusterSpace::FirstLevel, 8);
        assert_eq!(a.clusters.len(), 1);
        let c = &a.clusters[0];
        assert_eq!(c.family, Some(Family::T6));
        assert_eq!(c.endpoints, Some((0, 3)));
        assert_eq!(c.chain.as_deref(), Some("g8"));
        assert!(minimal_clusters(&d, 3, ClusterSpace::Full, 8).clusters.is_empty());
    }

    #[test]
    fn exclusion_chain() {
        let e = pc_of(EXCLUSION, 3);
        for n_order in 2..=4 {
            let a = minimal_clusters(&e, n_order, ClusterSpace::FirstLevel, 8);
            assert!(!a.bound_exceeded);
            let chain = a.clusters.iter().find(|c| c.components.len() == 3).unwrap();
            assert_eq!(chain.chain.as_deref(), Some("g2-(g7)^1-g5"));
            assert_eq!(chain.family, Some(Family::T2));
            assert_eq!(chain.render(&e), "e_{1,2,3,4} - e_{1,2,6,4} + e_{1,5,6,4}");
            let check = omega3_intersection_check(&e, n_order, 8);
            assert!(check.intersection_holds);
            let ex = check
                .exclusions
                .iter()
                .find(|x| x.cluster.components.len() == 3)
                .unwrap();
            assert_eq!(ex.in_full, n_order == 2);
        }
    }

    #[test]
    fn special_edge_sets() {
        let d = pc_of(DIAMOND, 2);
        let s = special_edges(&d);
        assert_eq!(s.connecting, BTreeSet::from([(0, 3)]));
        assert!(s.complementary.is_empty());
        let l1 = pc_of("1 2\n1 4\n3 2\n4 3\n", 2);
        let s = special_edges(&l1);
        // ids: 1→0, 2→1, 4→2, 3→3
        assert_eq!(s.complementary, BTreeSet::from([(0, 3), (2, 1)]));
    }

    #[test]
    fn families() {
        use GammaLabel::*;
        let f = |ls: &[GammaLabel]| family_of(&ls.iter().copied().collect());
        assert_eq!(f(&[G1, G7, G4]), Some(Family::T1));
        assert_eq!(f(&[G2, G5]), Some(Family::T2));
        assert_eq!(f(&[G2, G5, G7, G8]), Some(Family::T2));
        assert_eq!(f(&[G3, G7]), Some(Family::T3));
        assert_eq!(f(&[G7]), Some(Family::T4));
        assert_eq!(f(&[G9]), Some(Family::T5));
        assert_eq!(f(&[G8]), Some(Family::T6));
        assert_eq!(f(&[G1, G2]), Option::None);
        assert_eq!(f(&[G1, GammaLabel::None]), Option::None);
    }
}
