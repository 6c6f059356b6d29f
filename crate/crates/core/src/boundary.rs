//! The ξ-weighted boundary operator, its regular projection and its powers.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::complex::{ElementaryPath, PathComplex, RegularPathIndex};
use crate::cyclotomic::{field, q_factorial, CyclotomicField, Scalar};
use crate::linalg::{Matrix, SparseVec};

/// A finite linear combination of elementary paths.
pub type Chain = BTreeMap<ElementaryPath, Scalar>;

fn add_term(chain: &mut Chain, p: ElementaryPath, c: Scalar) {
    match chain.get_mut(&p) {
        Some(acc) => {
            *acc += &c;
            if acc.is_zero() {
                chain.remove(&p);
            }
        }
        None => {
            if !c.is_zero() {
                chain.insert(p, c);
            }
        }
    }
}

fn faces(p: &ElementaryPath, f: &Arc<CyclotomicField>, regular: bool) -> Vec<(ElementaryPath, Scalar)> {
    if p.is_empty() {
        return vec![];
    }
    (0..=p.len())
        .map(|j| (p.face(j).expect("index in range"), Scalar::zeta_power(f, j as i64)))
        .filter(|(face, _)| !regular || face.is_regular())
        .collect()
}

/// `∂p` with irregular faces dropped. Vertices have zero boundary.
pub fn boundary_chain(p: &ElementaryPath, n_order: u32) -> Chain {
    let f = field(n_order);
    let mut out = Chain::new();
    for (face, c) in faces(p, &f, true) {
        add_term(&mut out, face, c);
    }
    out
}

/// `∂c`, regular (irregular faces dropped) or on all elementary paths.
pub fn boundary_of_chain(c: &Chain, n_order: u32, regular: bool) -> Chain {
    let f = field(n_order);
    let mut out = Chain::new();
    for (p, coeff) in c {
        for (face, w) in faces(p, &f, regular) {
            add_term(&mut out, face, &w * coeff);
        }
    }
    out
}

/// `e_{1,3} + (z)e_{1,2} - e_{2}` style rendering; `0` for the empty chain.
pub fn render_chain(labels: &[String], c: &Chain) -> String {
    render_terms(c.iter().map(|(p, s)| (p.render(labels), s)))
}

pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (path, s) in terms {
        let neg = -s;
        let (sign, body) = if s.is_one() {
            ("+", path)
        } else if neg.is_one() {
            ("-", path)
        } else {
            ("+", format!("({s}){path}"))
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Matrix of `∂̄^q` from the allowed `n`-paths into the registered regular
/// `(n−q)`-paths. Rows below `allowed_rows` are allowed paths.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub n: usize,
    pub q: usize,
    pub order: u32,
    pub matrix: Matrix,
    pub allowed_rows: usize,
}

impl BoundaryMatrix {
    pub fn allowed_block(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.allowed_rows).collect();
        self.matrix.select_rows(&keep)
    }

    pub fn nonallowed_block(&self) -> Matrix {
        let keep: Vec<usize> = (self.allowed_rows..self.matrix.rows()).collect();
        self.matrix.select_rows(&keep)
    }
}

/// Boundary assembly for one path complex and one `N`, with a shared regular
/// path index and memoized single-step boundaries.
pub struct BoundaryEngine<'a> {
    pc: &'a PathComplex,
    field: Arc<CyclotomicField>,
    index: RegularPathIndex,
    memo: HashMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl<'a> BoundaryEngine<'a> {
    pub fn new(pc: &'a PathComplex, n_order: u32) -> Self {
        BoundaryEngine {
            pc,
            field: field(n_order),
            index: RegularPathIndex::new(pc),
            memo: HashMap::new(),
        }
    }

    pub fn complex(&self) -> &'a PathComplex {
        self.pc
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn index(&self) -> &RegularPathIndex {
        &self.index
    }

    fn step(&mut self, k: usize, idx: usize) -> Vec<(usize, Scalar)> {
        if let Some(v) = self.memo.get(&(k, idx)) {
            return v.clone();
        }
        let p = self.index.path(k, idx).clone();
        let out: Vec<(usize, Scalar)> = faces(&p, &self.field, true)
            .into_iter()
            .map(|(face, c)| (self.index.index_of(&face), c))
            .collect();
        self.memo.insert((k, idx), out.clone());
        out
    }

    /// `∂̄` of a vector over the registered regular `k`-paths.
    pub fn apply(&mut self, k: usize, v: &SparseVec) -> SparseVec {
        if k == 0 {
            return SparseVec::new();
        }
        let mut pairs = Vec::new();
        for (idx, c) in v.entries() {
            for (row, w) in self.step(k, *idx) {
                pairs.push((row, &w * c));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `∂̄^q` of a vector over the registered regular `k`-paths.
    pub fn apply_power(&mut self, k: usize, v: &SparseVec, q: usize) -> SparseVec {
        if q > k {
            return SparseVec::new();
        }
        let mut cur = v.clone();
        for s in 0..q {
            cur = self.apply(k - s, &cur);
        }
        cur
    }

    /// `∂̄^q` on the basis of allowed `n`-paths.
    pub fn power_matrix(&mut self, n: usize, q: usize) -> BoundaryMatrix {
        let cols = self.pc.allowed_count(n);
        if q > n {
            return BoundaryMatrix {
                n,
                q,
                order: self.order(),
                matrix: Matrix::zeros(&self.field, 0, cols),
                allowed_rows: 0,
            };
        }
        let one = Scalar::one(&self.field);
        let images: Vec<SparseVec> = (0..cols)
            .map(|j| self.apply_power(n, &SparseVec::from_pairs([(j, one.clone())]), q))
            .collect();
        let target = n - q;
        BoundaryMatrix {
            n,
            q,
            order: self.order(),
            matrix: Matrix::from_cols(&self.field, self.index.len(target), &images),
            allowed_rows: self.index.allowed_count(target),
        }
    }

    /// Single regular step from every currently registered regular `k`-path.
    pub fn step_matrix(&mut self, k: usize) -> Matrix {
        let cols = self.index.len(k);
        let one = Scalar::one(&self.field);
        let images: Vec<SparseVec> = (0..cols)
            .map(|j| self.apply(k, &SparseVec::from_pairs([(j, one.clone())])))
            .collect();
        let rows = if k == 0 { 0 } else { self.index.len(k - 1) };
        Matrix::from_cols(&self.field, rows, &images)
    }

    /// Renders a vector over the registered `k`-paths as a chain.
    pub fn render(&self, k: usize, v: &SparseVec) -> String {
        render_terms(
            v.entries()
                .iter()
                .map(|(i, s)| (self.pc.render(self.index.path(k, *i)), s)),
        )
    }
}

/// Matrix of `∂̄^q` on the allowed `n`-paths of `pc`.
pub fn boundary_power_matrix(pc: &PathComplex, n: usize, q: usize, n_order: u32) -> BoundaryMatrix {
    BoundaryEngine::new(pc, n_order).power_matrix(n, q)
}

/// `true` iff `∂̄^N` vanishes on every regular path reached from the allowed
/// paths of dimension `≤ n_max`.
pub fn verify_nilpotency(pc: &PathComplex, n_order: u32, n_max: usize) -> bool {
    let top = n_max.min(pc.max_dim());
    let mut eng = BoundaryEngine::new(pc, n_order);
    for n in (0..=top).rev() {
        for q in 1..=n {
            eng.power_matrix(n, q);
        }
    }
    let big_n = n_order as usize;
    let one = Scalar::one(eng.field());
    for n in (0..=top).rev() {
        for j in 0..eng.index().len(n) {
            let e = SparseVec::from_pairs([(j, one.clone())]);
            if !eng.apply_power(n, &e, big_n).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Compares `∂^r p` on all elementary paths with the q-factorial expansion
/// `[r!]_ξ Σ ξ^{j_1+…+j_r} ∂_{j_1}⋯∂_{j_r} p`, where the deletions run left to
/// right and each `j_k` indexes the path as shortened by the earlier ones.
pub fn kapranov_expansion_check(p: &ElementaryPath, r: usize, n_order: u32) -> bool {
    assert!(r >= 1 && r <= p.len(), "need 1 ≤ r ≤ length");
    let f = field(n_order);
    let mut lhs = Chain::new();
    lhs.insert(p.clone(), Scalar::one(&f));
    for _ in 0..r {
        lhs = boundary_of_chain(&lhs, n_order, false);
    }
    let fact = q_factorial(n_order, r as u32);
    let mut rhs = Chain::new();
    let len = p.verts().len();
    for mask in 0u64..(1u64 << len) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let mut cur = p.clone();
        let mut exponent = 0usize;
        for (removed, pos) in (0..len).filter(|b| mask >> b & 1 == 1).enumerate() {
            let j = pos - removed;
            exponent += j;
            cur = cur.face(j).expect("index in range");
        }
        add_term(&mut rhs, cur, &fact * &Scalar::zeta_power(&f, exponent as i64));
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Digraph, SimplicialComplex};

    fn path(v: &[usize]) -> ElementaryPath {
        ElementaryPath::new(v.to_vec())
    }

    fn diamond() -> PathComplex {
        PathComplex::from_digraph(&Digraph::parse("1 2\n1 3\n2 3\n2 4\n3 4\n").unwrap(), 3)
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn single_boundaries() {
        let l = labels(4);
        assert_eq!(
            render_chain(&l, &boundary_chain(&path(&[0, 1, 2]), 3)),
            "(-1 - z)e_{1,2} + (z)e_{1,3} + e_{2,3}"
        );
        let c = boundary_chain(&path(&[0, 1, 0]), 5);
        assert_eq!(c.len(), 2);
        assert!(c[&path(&[1, 0])].is_one());
        assert_eq!(c[&path(&[0, 1])], Scalar::zeta_power(&field(5), 2));
        assert!(boundary_chain(&path(&[2]), 3).is_empty());
        let c = boundary_chain(&path(&[0, 1, 2, 3]), 3);
        assert!(c[&path(&[0, 1, 2])].is_one());
    }

    #[test]
    fn diamond_square_of_boundary() {
        let pc = diamond();
        let mut eng = BoundaryEngine::new(&pc, 3);
        let m = eng.power_matrix(3, 2);
        let row = eng.index().lookup(&path(&[0, 3])).unwrap();
        assert!(row >= m.allowed_rows);
        let f = field(3);
        assert_eq!(m.matrix.get(row, 0), -Scalar::zeta_power(&f, 1));
        assert_eq!(m.nonallowed_block().nnz(), 1);
    }

    #[test]
    fn triangle_square_of_boundary() {
        let pc = PathComplex::from_digraph(&Digraph::parse("1 2\n1 3\n2 3\n").unwrap(), 2);
        let m = boundary_power_matrix(&pc, 2, 2, 3);
        let f = field(3);
        let z = |k| Scalar::zeta_power(&f, k);
        assert_eq!(m.matrix.get(0, 0), -z(1));
        assert_eq!(m.matrix.get(1, 0), -Scalar::one(&f));
        assert_eq!(m.matrix.get(2, 0), -z(2));
    }

    #[test]
    fn products_of_steps_agree_with_powers() {
        let pc = diamond();
        for n_order in 2..=5 {
            let mut eng = BoundaryEngine::new(&pc, n_order);
            let direct = eng.power_matrix(3, 3);
            let s3 = eng.power_matrix(3, 1).matrix;
            let mut s2 = eng.step_matrix(2);
            let mut s1 = eng.step_matrix(1);
            let rows0 = eng.index().len(0);
            let rows1 = eng.index().len(1);
            s2 = resize(&s2, rows1, s3.rows());
            s1 = resize(&s1, rows0, rows1);
            let left = s1.mul(&s2).mul(&s3);
            let right = s1.mul(&s2.mul(&s3));
            assert_eq!(left, right);
            assert_eq!(left, resize(&direct.matrix, rows0, direct.matrix.cols()));
        }
    }

    fn resize(m: &Matrix, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(m.field(), rows, cols);
        for (r, row) in m.row_vecs().iter().enumerate() {
            for (c, v) in row.entries() {
                out.set(r, *c, v.clone());
            }
        }
        out
    }

    #[test]
    fn nilpotency_on_small_complexes() {
        let pc = diamond();
        for n_order in 2..=5 {
            assert!(verify_nilpotency(&pc, n_order, 3));
        }
        let sc = SimplicialComplex::parse("1 2 3 4 5\n").unwrap();
        let pc = PathComplex::from_simplicial(&sc, 4);
        for n_order in 2..=5 {
            assert!(verify_nilpotency(&pc, n_order, 4));
        }
    }

    #[test]
    fn kapranov_examples() {
        assert!(kapranov_expansion_check(&path(&[0, 1, 2]), 2, 3));
        assert!(kapranov_expansion_check(&path(&[0, 1, 2, 3]), 3, 4));
        assert!(kapranov_expansion_check(&path(&[0, 0, 1]), 1, 2));
        for n_order in 2..=4 {
            for r in 1..=3 {
                assert!(kapranov_expansion_check(&path(&[0, 1, 0, 2]), r, n_order));
            }
        }
    }

    /// Brute force: expand `∂^2` by hand for `e_{abc}` and compare.
    #[test]
    fn kapranov_hand_expansion() {
        let f = field(3);
        let z = |k| Scalar::zeta_power(&f, k);
        let mut c = Chain::new();
        c.insert(path(&[0, 1, 2]), Scalar::one(&f));
        let d2 = boundary_of_chain(&boundary_of_chain(&c, 3, false), 3, false);
        assert_eq!(d2[&path(&[2])], Scalar::one(&f) + z(1));
        assert_eq!(d2[&path(&[1])], z(1) + z(2));
        assert_eq!(d2[&path(&[0])], z(2) + z(3));
    }
}
