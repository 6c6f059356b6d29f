//! Exact linear algebra over [`Scalar`]: reduced row echelon form, rank,
//! nullspaces and canonical subspaces.
//!
//! Everything is deterministic. A [`Subspace`] is stored as the unique reduced
//! row echelon basis of its row space, so two subspaces are equal exactly when
//! their bases are equal row by row.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{CyclotomicField, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("field orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("boundary space is not contained in the cycle space ({outside} generator(s) outside)")]
    NotASubspace { outside: usize },
}

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: vec![] }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            match map.get_mut(&i) {
                Some(acc) => *acc += &v,
                None => {
                    map.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, field: &Arc<CyclotomicField>, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(field); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len_nonzero(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn get(&self, idx: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&idx, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self - c * other`.
    pub fn sub_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, -(c * vb)));
                        b.next();
                    } else {
                        let v = va - &(c * vb);
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, -(c * vb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match self.entries.first().or(other.entries.first()) {
            None => SparseVec::new(),
            Some((_, v)) => {
                let minus_one = -Scalar::one(v.field());
                self.sub_scaled(&minus_one, other)
            }
        }
    }

    /// Bilinear dot product (no conjugation).
    pub fn dot(&self, other: &SparseVec) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((ia, va)), Some((ib, vb))) = (a.peek(), b.peek()) {
            if ia < ib {
                a.next();
            } else if ib < ia {
                b.next();
            } else {
                let p = va * vb;
                match acc.as_mut() {
                    Some(s) => *s += &p,
                    None => acc = Some(p),
                }
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Largest stored index plus one.
    pub fn extent(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }
}

/// Sparse matrix with entries in a single cyclotomic field.
#[derive(Clone, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Arc<CyclotomicField>,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Arc<CyclotomicField>, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field: Arc::clone(field),
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(field: &Arc<CyclotomicField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: &Arc<CyclotomicField>, cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.entries() {
                assert!(*c < cols, "row entry out of range");
                m.entries.insert((r, *c), v.clone());
            }
        }
        m
    }

    pub fn from_dense(field: &Arc<CyclotomicField>, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let sparse: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
        Self::from_rows(field, cols, &sparse)
    }

    /// Builds from column vectors.
    pub fn from_cols(field: &Arc<CyclotomicField>, rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col.entries() {
                assert!(*r < rows, "column entry out of range");
                m.entries.insert((*r, c), v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.field))
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row_vecs(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![vec![]; self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows.into_iter().map(|entries| SparseVec { entries }).collect()
    }

    pub fn col_vecs(&self) -> Vec<SparseVec> {
        self.transpose().row_vecs()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: Arc::clone(&self.field),
            entries: self.entries.iter().map(|((r, c), v)| ((*c, *r), v.clone())).collect(),
        }
    }

    /// Restricts to the given rows, renumbered in the order given.
    pub fn select_rows(&self, keep: &[usize]) -> Matrix {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut out = Matrix::zeros(&self.field, keep.len(), self.cols);
        for ((r, c), v) in &self.entries {
            if let Some(&nr) = pos.get(r) {
                out.entries.insert((nr, *c), v.clone());
            }
        }
        out
    }

    /// Restricts to the given columns, renumbered in the order given.
    pub fn select_cols(&self, keep: &[usize]) -> Matrix {
        self.transpose().select_rows(keep).transpose()
    }

    /// Matrix–vector product, `self * v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let pairs = self
            .entries
            .iter()
            .filter_map(|((r, c), a)| v.get(*c).map(|x| (*r, a * x)));
        SparseVec::from_pairs(pairs)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let cols = other.col_vecs();
        let prod: Vec<SparseVec> = cols.iter().map(|c| self.apply(c)).collect();
        Matrix::from_cols(&self.field, self.rows, &prod)
    }

    /// Renders with row and column labels, one row per line.
    pub fn render_bordered(&self, row_labels: &[String], col_labels: &[String]) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        let lw = row_labels.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| {
                cells
                    .iter()
                    .map(|row| row[c].len())
                    .chain(col_labels.get(c).map(String::len))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let mut out = String::new();
        let _ = write!(out, "{:lw$}", "");
        for (c, w) in widths.iter().enumerate() {
            let label = col_labels.get(c).map_or("", String::as_str);
            let _ = write!(out, " | {label:>w$}");
        }
        out.push('\n');
        for (r, row) in cells.iter().enumerate() {
            let label = row_labels.get(r).map_or("", String::as_str);
            let _ = write!(out, "{label:lw$}");
            for (c, w) in widths.iter().enumerate() {
                let _ = write!(out, " | {:>w$}", row[c]);
            }
            out.push('\n');
        }
        out
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field.order() == other.field.order()
            && self.entries == other.entries
    }
}

/// Incremental Gauss–Jordan reduction. Rows are kept fully reduced, keyed by
/// pivot column, with pivot entries equal to one.
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    /// Reduces `v` against the current basis; the result has no entries in
    /// pivot columns.
    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Scalar)> = v
            .entries()
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .cloned()
            .collect();
        let mut out = v.clone();
        for (c, coeff) in hits {
            out = out.sub_scaled(&coeff, &self.rows[&c]);
        }
        out
    }

    /// Inserts `v`; returns whether the rank grew.
    fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading().cloned() else {
            return false;
        };
        let inv = lead.invert().expect("nonzero leading entry");
        let r = r.scale(&inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(pivot).cloned() {
                *row = row.sub_scaled(&c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    fn into_rows(self) -> (Vec<usize>, Vec<SparseVec>) {
        self.rows.into_iter().unzip()
    }
}

/// Result of [`rref`]: the reduced matrix (same shape, zero rows last), its
/// rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Exact Gauss–Jordan elimination with unit pivots.
pub fn rref(m: &Matrix) -> Rref {
    let mut ech = Echelon::new();
    for row in m.row_vecs() {
        ech.insert(&row);
    }
    let (pivots, rows) = ech.into_rows();
    let rank = rows.len();
    let mut out = Matrix::from_rows(&m.field, m.cols, &rows);
    out.rows = m.rows;
    Rref {
        matrix: out,
        rank,
        pivots,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let r = rref(m);
    let rows = r.matrix.row_vecs();
    let pivot_set: std::collections::BTreeSet<usize> = r.pivots.iter().copied().collect();
    let minus_one = -Scalar::one(&m.field);
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut pairs = vec![(free, Scalar::one(&m.field))];
        for (i, p) in r.pivots.iter().enumerate() {
            if let Some(v) = rows[i].get(free) {
                pairs.push((*p, v * &minus_one));
            }
        }
        basis.push(SparseVec::from_pairs(pairs));
    }
    let ns = Subspace::span(&m.field, m.cols, basis);
    debug_assert_eq!(ns.dim() + r.rank, m.cols, "rank-nullity");
    ns
}

/// A subspace of `K^ambient_dim`, stored in canonical RREF.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    field: Arc<CyclotomicField>,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.field.order() == other.field.order() && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(field: &Arc<CyclotomicField>, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            field: Arc::clone(field),
            basis: vec![],
            pivots: vec![],
        }
    }

    pub fn full(field: &Arc<CyclotomicField>, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| SparseVec::from_pairs([(i, Scalar::one(field))]))
            .collect();
        Subspace {
            ambient_dim,
            field: Arc::clone(field),
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical subspace spanned by `vectors`.
    pub fn span(
        field: &Arc<CyclotomicField>,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let mut ech = Echelon::new();
        for v in vectors {
            debug_assert!(v.extent() <= ambient_dim, "vector exceeds ambient dimension");
            ech.insert(&v);
        }
        let (pivots, basis) = ech.into_rows();
        Subspace {
            ambient_dim,
            field: Arc::clone(field),
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.field, self.ambient_dim, &self.basis)
    }

    /// Reduces `v` to its normal form modulo this subspace.
    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (p, row) in self.pivots.iter().zip(&self.basis) {
            if let Some(c) = out.get(*p).cloned() {
                out = out.sub_scaled(&c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.residual(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.field.order() != other.field.order() {
            return Err(LinalgError::OrderMismatch(self.field.order(), other.field.order()));
        }
        Ok(())
    }

    /// The sum `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        Ok(Subspace::span(
            &self.field,
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }
}

/// `true` iff `v` lies in the span of `s`.
pub fn in_span(v: &SparseVec, s: &Subspace) -> bool {
    s.contains(v)
}

/// Canonical basis of `a ∩ b`.
///
/// `x = λ·A` lies in `b` iff it is annihilated by every vector of `ker(B)`;
/// the admissible `λ` form the nullspace of the pairing matrix.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    a.check_compatible(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Subspace::zero(&a.field, a.ambient_dim));
    }
    if b.dim() == b.ambient_dim {
        return Ok(a.clone());
    }
    if a.dim() == a.ambient_dim {
        return Ok(b.clone());
    }
    let annihilator = nullspace(&b.basis_matrix());
    let zero = Scalar::zero(&a.field);
    let pairing: Vec<SparseVec> = annihilator
        .basis
        .iter()
        .map(|c| {
            SparseVec::from_pairs(
                a.basis
                    .iter()
                    .enumerate()
                    .map(|(i, ai)| (i, ai.dot(c).unwrap_or_else(|| zero.clone()))),
            )
        })
        .collect();
    let m = Matrix::from_rows(&a.field, a.dim(), &pairing);
    let lambdas = nullspace(&m);
    Ok(Subspace::span(
        &a.field,
        a.ambient_dim,
        lambdas.basis.iter().map(|l| combine(&a.basis, l)),
    ))
}

/// `Σ λ_i v_i`.
pub fn combine(vectors: &[SparseVec], lambda: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (i, c) in lambda.entries() {
        acc = acc.sub_scaled(&-c, &vectors[*i]);
    }
    acc
}

/// Kernel of a linear map restricted to `s`, where `images[i]` is the image
/// of the `i`-th basis vector of `s`.
pub fn kernel_on_subspace(s: &Subspace, images: &[SparseVec]) -> Subspace {
    assert_eq!(images.len(), s.dim(), "one image per basis vector");
    let target = images.iter().map(SparseVec::extent).max().unwrap_or(0);
    let m = Matrix::from_cols(&s.field, target, images);
    let lambdas = nullspace(&m);
    Subspace::span(
        &s.field,
        s.ambient_dim,
        lambdas.basis.iter().map(|l| combine(&s.basis, l)),
    )
}

/// `dim z - dim b`, after checking `b ⊆ z`.
pub fn quotient_dim(z: &Subspace, b: &Subspace) -> Result<usize, LinalgError> {
    z.check_compatible(b)?;
    let outside = b.basis.iter().filter(|v| !z.contains(v)).count();
    if outside > 0 {
        return Err(LinalgError::NotASubspace { outside });
    }
    Ok(z.dim() - b.dim())
}
