//! Digraphs, simplicial complexes and the path complexes built from them.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexMap;
use serde_json::Value;
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("line {line}: self-loop on vertex {label}")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: duplicate edge {from} -> {to}")]
    DuplicateEdge { line: usize, from: String, to: String },
    #[error("line {line}: malformed line {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: empty simplex")]
    EmptySimplex { line: usize },
    #[error("face index {index} out of range for a path of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid JSON input: {0}")]
    Json(String),
}

/// Simple directed graph with interned vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

struct Interner {
    labels: Vec<String>,
    ids: HashMap<String, VertexId>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            labels: vec![],
            ids: HashMap::new(),
        }
    }

    fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.ids.insert(label.to_string(), id);
        id
    }
}

fn json_label(v: &Value) -> Option<String> {
    match v {
        Value::String(s) if !s.is_empty() => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn json_error(msg: &str) -> ComplexError {
    ComplexError::Json(msg.to_string())
}

/// Meaningful lines of a text input: `(line number, tokens)`, comments and
/// blank lines removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

impl Digraph {
    /// Graph on vertices labelled `1..=n` with edges given by 0-based ids.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, ComplexError> {
        let mut g = Digraph {
            labels: (1..=n).map(|i| i.to_string()).collect(),
            edges: BTreeSet::new(),
        };
        for (k, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(k + 1, u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, line: usize, u: VertexId, v: VertexId) -> Result<(), ComplexError> {
        assert!(u < self.labels.len() && v < self.labels.len(), "unknown vertex");
        if u == v {
            return Err(ComplexError::SelfLoop {
                line,
                label: self.labels[u].clone(),
            });
        }
        if !self.edges.insert((u, v)) {
            return Err(ComplexError::DuplicateEdge {
                line,
                from: self.labels[u].clone(),
                to: self.labels[v].clone(),
            });
        }
        Ok(())
    }

    /// Parses the edge-list format, or the JSON format when the text starts
    /// with `{`.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        if text.trim_start().starts_with('{') {
            return Self::parse_json(text);
        }
        let mut interner = Interner::new();
        let mut pending = Vec::new();
        for (line, tokens) in content_lines(text) {
            if tokens.len() != 2 {
                return Err(ComplexError::MalformedLine {
                    line,
                    content: tokens.join(" "),
                });
            }
            let u = interner.intern(tokens[0]);
            let v = interner.intern(tokens[1]);
            pending.push((line, u, v));
        }
        let mut g = Digraph {
            labels: interner.labels,
            edges: BTreeSet::new(),
        };
        for (line, u, v) in pending {
            g.add_edge(line, u, v)?;
        }
        Ok(g)
    }

    fn parse_json(text: &str) -> Result<Self, ComplexError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        let mut interner = Interner::new();
        if let Some(vs) = value.get("vertices") {
            let vs = vs
                .as_array()
                .ok_or_else(|| json_error("\"vertices\" must be an array"))?;
            for v in vs {
                let label = json_label(v).ok_or_else(|| json_error("vertex labels must be strings or numbers"))?;
                interner.intern(&label);
            }
        }
        let edges = value
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| json_error("missing \"edges\" array"))?;
        let mut pending = Vec::new();
        for (k, e) in edges.iter().enumerate() {
            let pair = e
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| json_error("each edge must be a two-element array"))?;
            let (Some(a), Some(b)) = (json_label(&pair[0]), json_label(&pair[1])) else {
                return Err(json_error("vertex labels must be strings or numbers"));
            };
            pending.push((k + 1, interner.intern(&a), interner.intern(&b)));
        }
        let mut g = Digraph {
            labels: interner.labels,
            edges: BTreeSet::new(),
        };
        for (line, u, v) in pending {
            g.add_edge(line, u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.edges
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Copy with vertex `i` renamed to `perm[i]`; labels follow their vertex.
    pub fn permuted(&self, perm: &[VertexId]) -> Digraph {
        assert_eq!(perm.len(), self.labels.len(), "permutation size");
        let mut labels = vec![String::new(); perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
        }
        Digraph {
            labels,
            edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
        }
    }

    /// Text rendering that [`Digraph::parse`] reads back. Isolated vertices
    /// are not representable in the edge-list format.
    pub fn to_edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|&(u, v)| format!("{} {}\n", self.labels[u], self.labels[v]))
            .collect()
    }
}

/// Compares labels numerically when both are integers, else as strings.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i128>(), b.parse::<i128>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Simplicial complex given by its maximal simplices. Vertex ids follow
/// ascending label order, and every simplex is stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: Vec<Vec<VertexId>>,
}

impl SimplicialComplex {
    pub fn from_simplices(simplices: &[Vec<String>]) -> Result<Self, ComplexError> {
        let mut all: Vec<String> = Vec::new();
        for (k, s) in simplices.iter().enumerate() {
            if s.is_empty() {
                return Err(ComplexError::EmptySimplex { line: k + 1 });
            }
            all.extend(s.iter().cloned());
        }
        all.sort_by(|a, b| natural_cmp(a, b));
        all.dedup();
        let ids: HashMap<&str, VertexId> = all.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let simplices = simplices
            .iter()
            .map(|s| {
                let mut v: Vec<VertexId> = s.iter().map(|l| ids[l.as_str()]).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        Ok(SimplicialComplex { labels: all, simplices })
    }

    /// One maximal simplex per line, or JSON `{"simplices": [[...], ...]}`.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        if text.trim_start().starts_with('{') {
            let value: Value = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
            let list = value
                .get("simplices")
                .and_then(Value::as_array)
                .ok_or_else(|| json_error("missing \"simplices\" array"))?;
            let mut simplices = Vec::new();
            for s in list {
                let verts = s
                    .as_array()
                    .ok_or_else(|| json_error("each simplex must be an array"))?;
                let labels: Option<Vec<String>> = verts.iter().map(json_label).collect();
                simplices.push(labels.ok_or_else(|| json_error("vertex labels must be strings or numbers"))?);
            }
            return Self::from_simplices(&simplices);
        }
        let simplices: Vec<Vec<String>> = content_lines(text)
            .map(|(_, tokens)| tokens.into_iter().map(str::to_string).collect())
            .collect();
        Self::from_simplices(&simplices)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn simplices(&self) -> &[Vec<VertexId>] {
        &self.simplices
    }
}

/// A sequence of vertices `i_0 … i_p`; its length is `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryPath {
    verts: Vec<VertexId>,
}

impl ElementaryPath {
    pub fn new(verts: Vec<VertexId>) -> Self {
        assert!(!verts.is_empty(), "a path has at least one vertex");
        ElementaryPath { verts }
    }

    pub fn verts(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    /// A single vertex, with no edges.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> VertexId {
        self.verts[0]
    }

    pub fn last(&self) -> VertexId {
        *self.verts.last().unwrap()
    }

    /// Deletes the vertex at position `j`.
    pub fn face(&self, j: usize) -> Result<ElementaryPath, ComplexError> {
        if j > self.len() {
            return Err(ComplexError::IndexOutOfRange {
                index: j,
                len: self.len(),
            });
        }
        if self.verts.len() == 1 {
            return Err(ComplexError::IndexOutOfRange { index: j, len: 0 });
        }
        let mut verts = self.verts.clone();
        verts.remove(j);
        Ok(ElementaryPath { verts })
    }

    pub fn is_regular(&self) -> bool {
        self.verts.windows(2).all(|w| w[0] != w[1])
    }

    /// `e_{1,2,3}` style rendering with the given labels.
    pub fn render(&self, labels: &[String]) -> String {
        let inner: Vec<&str> = self.verts.iter().map(|&v| labels[v].as_str()).collect();
        format!("e_{{{}}}", inner.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Source {
    Digraph,
    Simplicial(Vec<Vec<VertexId>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Digraph,
    Simplicial,
}

/// Allowed elementary paths per dimension, each dimension in lexicographic
/// order of vertex ids.
#[derive(Debug, Clone)]
pub struct PathComplex {
    labels: Vec<String>,
    edges: BTreeSet<(VertexId, VertexId)>,
    dims: Vec<IndexMap<ElementaryPath, ()>>,
    source: Source,
    max_dim: usize,
}

impl PathComplex {
    /// All walks of length `≤ max_dim` in `g`.
    pub fn from_digraph(g: &Digraph, max_dim: usize) -> Self {
        let mut out: Vec<Vec<VertexId>> = vec![vec![]; g.vertex_count()];
        for &(u, v) in g.edges() {
            out[u].push(v);
        }
        let mut dims: Vec<IndexMap<ElementaryPath, ()>> = Vec::with_capacity(max_dim + 1);
        dims.push(
            (0..g.vertex_count())
                .map(|v| (ElementaryPath::new(vec![v]), ()))
                .collect(),
        );
        for _ in 1..=max_dim {
            let prev = dims.last().unwrap();
            let mut next = IndexMap::new();
            for p in prev.keys() {
                for &w in &out[p.last()] {
                    let mut verts = p.verts.clone();
                    verts.push(w);
                    next.insert(ElementaryPath { verts }, ());
                }
            }
            dims.push(next);
        }
        PathComplex {
            labels: g.labels().to_vec(),
            edges: g.edges().clone(),
            dims,
            source: Source::Digraph,
            max_dim,
        }
    }

    /// Every face of every simplex, as an ascending path.
    pub fn from_simplicial(sc: &SimplicialComplex, max_dim: usize) -> Self {
        let mut faces: Vec<BTreeSet<Vec<VertexId>>> = vec![BTreeSet::new(); max_dim + 1];
        for s in sc.simplices() {
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<VertexId> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect();
                if face.len() <= max_dim + 1 {
                    faces[face.len() - 1].insert(face);
                }
            }
        }
        let dims: Vec<IndexMap<ElementaryPath, ()>> = faces
            .into_iter()
            .map(|set| set.into_iter().map(|verts| (ElementaryPath { verts }, ())).collect())
            .collect();
        let edges = dims
            .get(1)
            .map(|d| d.keys().map(|p| (p.verts[0], p.verts[1])).collect())
            .unwrap_or_else(|| {
                let mut e = BTreeSet::new();
                for s in sc.simplices() {
                    for (a, &x) in s.iter().enumerate() {
                        for &y in &s[a + 1..] {
                            e.insert((x, y));
                        }
                    }
                }
                e
            });
        PathComplex {
            labels: sc.labels().to_vec(),
            edges,
            dims,
            source: Source::Simplicial(sc.simplices().to_vec()),
            max_dim,
        }
    }

    pub fn kind(&self) -> SourceKind {
        match self.source {
            Source::Digraph => SourceKind::Digraph,
            Source::Simplicial(_) => SourceKind::Simplicial,
        }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.edges
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Allowed `n`-paths in basis order; empty above `max_dim`.
    pub fn allowed(&self, n: usize) -> Vec<&ElementaryPath> {
        self.dims.get(n).map_or_else(Vec::new, |d| d.keys().collect())
    }

    pub fn allowed_count(&self, n: usize) -> usize {
        self.dims.get(n).map_or(0, IndexMap::len)
    }

    pub fn allowed_path(&self, n: usize, idx: usize) -> &ElementaryPath {
        self.dims[n].get_index(idx).expect("allowed index").0
    }

    /// Basis position of an allowed path of dimension `≤ max_dim`.
    pub fn allowed_index(&self, p: &ElementaryPath) -> Option<usize> {
        self.dims.get(p.len())?.get_index_of(p)
    }

    /// Membership in the path complex, for paths of any length.
    pub fn is_allowed(&self, p: &ElementaryPath) -> bool {
        if p.len() <= self.max_dim {
            return self.allowed_index(p).is_some();
        }
        match &self.source {
            Source::Digraph => p.verts.windows(2).all(|w| self.has_edge(w[0], w[1])),
            Source::Simplicial(simplices) => {
                p.verts.windows(2).all(|w| w[0] < w[1])
                    && simplices
                        .iter()
                        .any(|s| p.verts.iter().all(|v| s.binary_search(v).is_ok()))
            }
        }
    }

    pub fn render(&self, p: &ElementaryPath) -> String {
        p.render(&self.labels)
    }

    /// Canonical description of the input, used for content digests.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        match &self.source {
            Source::Digraph => {
                s.push_str("digraph\n");
                s.push_str(&self.labels.join(" "));
                s.push('\n');
                for &(u, v) in &self.edges {
                    s.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
                }
            }
            Source::Simplicial(simplices) => {
                s.push_str("simplicial\n");
                for simplex in simplices {
                    let l: Vec<&str> = simplex.iter().map(|&v| self.labels[v].as_str()).collect();
                    s.push_str(&l.join(" "));
                    s.push('\n');
                }
            }
        }
        s
    }
}

impl fmt::Display for PathComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, d) in self.dims.iter().enumerate() {
            let paths: Vec<String> = d.keys().map(|p| self.render(p)).collect();
            writeln!(f, "A_{n} ({}): {}", d.len(), paths.join(" "))?;
        }
        Ok(())
    }
}

/// Per-dimension registry of regular paths. Allowed paths of the complex
/// occupy the first indices; other regular paths are appended on demand.
#[derive(Debug, Clone)]
pub struct RegularPathIndex {
    dims: Vec<IndexMap<ElementaryPath, ()>>,
    allowed: Vec<usize>,
}

impl RegularPathIndex {
    pub fn new(pc: &PathComplex) -> Self {
        RegularPathIndex {
            dims: pc.dims.clone(),
            allowed: pc.dims.iter().map(IndexMap::len).collect(),
        }
    }

    /// Index of `p`, registering it if new.
    pub fn index_of(&mut self, p: &ElementaryPath) -> usize {
        debug_assert!(p.is_regular(), "only regular paths are indexed");
        let n = p.len();
        assert!(n < self.dims.len(), "dimension above the enumerated range");
        if let Some(i) = self.dims[n].get_index_of(p) {
            return i;
        }
        self.dims[n].insert_full(p.clone(), ()).0
    }

    pub fn lookup(&self, p: &ElementaryPath) -> Option<usize> {
        self.dims.get(p.len())?.get_index_of(p)
    }

    pub fn path(&self, n: usize, idx: usize) -> &ElementaryPath {
        self.dims[n].get_index(idx).expect("registered index").0
    }

    pub fn len(&self, n: usize) -> usize {
        self.dims.get(n).map_or(0, IndexMap::len)
    }

    pub fn is_empty(&self, n: usize) -> bool {
        self.len(n) == 0
    }

    pub fn allowed_count(&self, n: usize) -> usize {
        self.allowed.get(n).copied().unwrap_or(0)
    }

    pub fn is_allowed_index(&self, n: usize, idx: usize) -> bool {
        idx < self.allowed_count(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(v: &[usize]) -> ElementaryPath {
        ElementaryPath::new(v.to_vec())
    }

    fn diamond() -> PathComplex {
        let g = Digraph::parse("1 2\n1 3\n2 3\n2 4\n3 4\n").unwrap();
        PathComplex::from_digraph(&g, 3)
    }

    fn assert_closed(pc: &PathComplex) {
        for n in 1..=pc.max_dim() {
            for p in pc.allowed(n) {
                assert!(p.is_regular());
                assert!(pc.is_allowed(&p.face(0).unwrap()));
                assert!(pc.is_allowed(&p.face(n).unwrap()));
            }
        }
    }

    #[test]
    fn parse_edge_lists() {
        let g = Digraph::parse("# triangle\n1 2\n\n1 3\n2 3  # last\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().len(), 3);
        assert!(g.has_edge(0, 2));
        assert_eq!(
            Digraph::parse("1 1"),
            Err(ComplexError::SelfLoop {
                line: 1,
                label: "1".into()
            })
        );
        assert!(matches!(
            Digraph::parse("1 2\n1 2"),
            Err(ComplexError::DuplicateEdge { line: 2, .. })
        ));
        assert!(matches!(
            Digraph::parse("1 2\n3\n"),
            Err(ComplexError::MalformedLine { line: 2, .. })
        ));
    }

    #[test]
    fn parse_json_inputs() {
        let g = Digraph::parse(r#"{"vertices":[1,2,3,"x"],"edges":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.labels()[3], "x");
        assert!(matches!(Digraph::parse("{\"edges\":3}"), Err(ComplexError::Json(_))));
        let sc = SimplicialComplex::parse(r#"{"simplices":[[3,1,2]]}"#).unwrap();
        assert_eq!(sc.simplices(), &[vec![0, 1, 2]]);
        assert_eq!(
            SimplicialComplex::from_simplices(&[vec![]]),
            Err(ComplexError::EmptySimplex { line: 1 })
        );
    }

    #[test]
    fn diamond_walks() {
        let pc = diamond();
        let counts: Vec<usize> = (0..=3).map(|n| pc.allowed_count(n)).collect();
        assert_eq!(counts, vec![4, 5, 4, 1]);
        assert_eq!(pc.allowed(3)[0], &path(&[0, 1, 2, 3]));
        assert!(!pc.is_allowed(&path(&[0, 3])));
        assert!(pc.is_allowed(&path(&[0, 1, 2, 3])));
        assert_closed(&pc);
        let order: Vec<&ElementaryPath> = pc.allowed(2);
        let mut sorted = order.clone();
        sorted.sort();
        assert_eq!(order, sorted);
    }

    #[test]
    fn double_edge_and_edgeless() {
        let g = Digraph::parse("1 2\n2 1\n").unwrap();
        let pc = PathComplex::from_digraph(&g, 2);
        assert_eq!(pc.allowed(2), vec![&path(&[0, 1, 0]), &path(&[1, 0, 1])]);
        let empty = Digraph::from_edges(3, &[]).unwrap();
        let pc = PathComplex::from_digraph(&empty, 2);
        assert_eq!(pc.allowed_count(0), 3);
        assert_eq!(pc.allowed_count(1), 0);
        assert_eq!(pc.allowed_count(2), 0);
    }

    #[test]
    fn simplicial_paths() {
        let sc = SimplicialComplex::parse("1 2 3\n").unwrap();
        let pc = PathComplex::from_simplicial(&sc, 3);
        let counts: Vec<usize> = (0..=3).map(|n| pc.allowed_count(n)).collect();
        assert_eq!(counts, vec![3, 3, 1, 0]);
        assert_closed(&pc);
        let two = SimplicialComplex::parse("1 2\n3 4\n").unwrap();
        let pc = PathComplex::from_simplicial(&two, 3);
        assert_eq!((pc.allowed_count(0), pc.allowed_count(1)), (4, 2));
        assert_closed(&pc);
        let ordered = SimplicialComplex::parse("10 9 2\n").unwrap();
        assert_eq!(ordered.labels(), &["2", "9", "10"]);
    }

    #[test]
    fn faces_and_regularity() {
        assert_eq!(path(&[1, 2, 3, 4]).face(1).unwrap(), path(&[1, 3, 4]));
        assert!(!path(&[1, 2, 2]).is_regular());
        assert!(path(&[1, 2, 1]).is_regular());
        assert_eq!(
            path(&[1, 2]).face(2),
            Err(ComplexError::IndexOutOfRange { index: 2, len: 1 })
        );
        assert_eq!(path(&[0, 1]).render(&["a".into(), "b".into()]), "e_{a,b}");
    }

    #[test]
    fn regular_index_registers_lazily() {
        let pc = diamond();
        let mut idx = RegularPathIndex::new(&pc);
        assert_eq!(idx.allowed_count(1), 5);
        let i = idx.index_of(&path(&[0, 3]));
        assert_eq!(i, 5);
        assert!(!idx.is_allowed_index(1, i));
        assert_eq!(idx.index_of(&path(&[0, 3])), 5);
        assert_eq!(idx.index_of(&path(&[0, 1])), 0);
    }

    #[test]
    fn permutation_moves_labels() {
        let g = Digraph::parse("a b\nb c\n").unwrap();
        let h = g.permuted(&[2, 0, 1]);
        assert_eq!(h.labels(), &["b", "c", "a"]);
        assert!(h.has_edge(2, 0));
        assert_eq!(Digraph::parse(&g.to_edge_list()).unwrap(), g);
    }
}
