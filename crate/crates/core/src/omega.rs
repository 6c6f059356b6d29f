//! The ∂-invariant spaces Ω_n^{N,q} and Ω_n^N inside the allowed chains 𝒜_n.

use std::collections::HashMap;

use crate::boundary::BoundaryEngine;
use crate::complex::PathComplex;
use crate::linalg::{kernel_on_subspace, nullspace, SparseVec, Subspace};

/// `q = None` stands for the intersection over all `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSpace {
    pub n: usize,
    pub order: u32,
    pub q: Option<usize>,
    pub space: Subspace,
}

impl OmegaSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Boundary engine plus cached Ω spaces for one complex and one `N`.
pub struct MayerComplex<'a> {
    engine: BoundaryEngine<'a>,
    partial: HashMap<(usize, usize), Subspace>,
    full: HashMap<usize, Subspace>,
}

impl<'a> MayerComplex<'a> {
    pub fn new(pc: &'a PathComplex, n_order: u32) -> Self {
        assert!(n_order >= 2, "N must be at least 2");
        MayerComplex {
            engine: BoundaryEngine::new(pc, n_order),
            partial: HashMap::new(),
            full: HashMap::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.engine.order()
    }

    pub fn complex(&self) -> &'a PathComplex {
        self.engine.complex()
    }

    pub fn engine(&mut self) -> &mut BoundaryEngine<'a> {
        &mut self.engine
    }

    pub fn engine_ref(&self) -> &BoundaryEngine<'a> {
        &self.engine
    }

    /// `Ω_n^{N,q}`.
    pub fn omega_nq(&mut self, n: usize, q: usize) -> Subspace {
        assert!(q >= 1 && q < self.order() as usize, "need 1 ≤ q ≤ N-1");
        if let Some(s) = self.partial.get(&(n, q)) {
            return s.clone();
        }
        let pc = self.engine.complex();
        let dim = pc.allowed_count(n);
        let space = if q >= n {
            Subspace::full(self.engine.field(), dim)
        } else {
            let bm = self.engine.power_matrix(n, q);
            nullspace(&bm.nonallowed_block())
        };
        self.partial.insert((n, q), space.clone());
        space
    }

    /// `Ω_n^N`, the intersection of `Ω_n^{N,q}` over `1 ≤ q ≤ N-1`.
    pub fn omega_full(&mut self, n: usize) -> Subspace {
        if let Some(s) = self.full.get(&n) {
            return s.clone();
        }
        let dim = self.engine.complex().allowed_count(n);
        let mut acc = Subspace::full(self.engine.field(), dim);
        let top = (self.order() as usize - 1).min(n.saturating_sub(1));
        // each constraint is solved on the kernel of the previous ones
        for q in 1..=top {
            if acc.is_zero() {
                break;
            }
            let block = self.engine.power_matrix(n, q).nonallowed_block();
            let images: Vec<SparseVec> = acc.basis().iter().map(|v| block.apply(v)).collect();
            acc = kernel_on_subspace(&acc, &images);
        }
        self.full.insert(n, acc.clone());
        acc
    }

    /// `∂̄^N = 0` on `Ω_n^N`.
    pub fn nilpotent_on_omega(&mut self, n: usize) -> bool {
        let big_n = self.order() as usize;
        self.omega_full(n)
            .basis()
            .iter()
            .all(|v| self.engine.apply_power(n, v, big_n).is_zero())
    }

    /// `∂̄(Ω_n^N) ⊆ Ω_{n-1}^N`.
    pub fn chain_closure_holds(&mut self, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let src = self.omega_full(n);
        let dst = self.omega_full(n - 1);
        let allowed = self.engine.complex().allowed_count(n - 1);
        src.basis().iter().all(|v| {
            let img = self.engine.apply(n, v);
            img.extent() <= allowed && dst.contains(&img)
        })
    }
}

pub fn omega_nq(pc: &PathComplex, n: usize, q: usize, n_order: u32) -> OmegaSpace {
    let mut mc = MayerComplex::new(pc, n_order);
    OmegaSpace {
        n,
        order: n_order,
        q: Some(q),
        space: mc.omega_nq(n, q),
    }
}

pub fn omega_full(pc: &PathComplex, n: usize, n_order: u32) -> OmegaSpace {
    let mut mc = MayerComplex::new(pc, n_order);
    OmegaSpace {
        n,
        order: n_order,
        q: None,
        space: mc.omega_full(n),
    }
}

pub fn verify_chain_closure(pc: &PathComplex, n_order: u32, n: usize) -> bool {
    MayerComplex::new(pc, n_order).chain_closure_holds(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Digraph, ElementaryPath, SimplicialComplex};
    use crate::cyclotomic::{field, Scalar};
    use crate::linalg::intersect;

    fn diamond() -> PathComplex {
        PathComplex::from_digraph(&Digraph::parse("1 2\n1 3\n2 3\n2 4\n3 4\n").unwrap(), 3)
    }

    fn vec_of(pc: &PathComplex, n_order: u32, terms: &[(&[usize], i64)]) -> SparseVec {
        let f = field(n_order);
        SparseVec::from_pairs(terms.iter().map(|(p, c)| {
            let idx = pc.allowed_index(&ElementaryPath::new(p.to_vec())).unwrap();
            (idx, Scalar::from_int(&f, *c))
        }))
    }

    #[test]
    fn diamond_spaces() {
        let pc = diamond();
        let f = field(3);
        let o21 = omega_nq(&pc, 2, 1, 3).space;
        let expected = Subspace::span(
            &f,
            4,
            [
                vec_of(&pc, 3, &[(&[0, 1, 2], 1)]),
                vec_of(&pc, 3, &[(&[0, 1, 3], 1), (&[0, 2, 3], -1)]),
                vec_of(&pc, 3, &[(&[1, 2, 3], 1)]),
            ],
        );
        assert_eq!(o21, expected);
        assert_eq!(omega_nq(&pc, 2, 2, 3).dim(), 4);
        assert!(omega_nq(&pc, 3, 2, 3).space.is_zero());
        assert!(omega_full(&pc, 3, 3).space.is_zero());
        assert_eq!(omega_full(&pc, 3, 2).dim(), 1);
        let dims: Vec<usize> = (0..=3).map(|n| omega_full(&pc, n, 3).dim()).collect();
        assert_eq!(dims, vec![4, 5, 3, 0]);
    }

    #[test]
    fn closure() {
        let pc = diamond();
        assert!(verify_chain_closure(&pc, 2, 3));
        for n in 0..=3 {
            assert!(verify_chain_closure(&pc, 3, n));
        }
        let sc = SimplicialComplex::parse("1 2 3 4\n4 5\n").unwrap();
        let pc = PathComplex::from_simplicial(&sc, 3);
        for n_order in 2..=4 {
            let mut mc = MayerComplex::new(&pc, n_order);
            for n in 0..=3 {
                assert!(mc.chain_closure_holds(n));
                assert_eq!(mc.omega_full(n).dim(), pc.allowed_count(n));
            }
        }
    }

    #[test]
    fn full_space_is_the_intersection() {
        let g = Digraph::parse("1 2\n2 3\n3 1\n3 4\n4 1\n2 4\n4 2\n").unwrap();
        let pc = PathComplex::from_digraph(&g, 4);
        for n_order in 3..=4 {
            let mut mc = MayerComplex::new(&pc, n_order);
            for n in 0..=4 {
                let mut acc = Subspace::full(&field(n_order), pc.allowed_count(n));
                for q in 1..(n_order as usize).min(n.max(1)) {
                    acc = intersect(&acc, &mc.omega_nq(n, q)).unwrap();
                }
                assert_eq!(mc.omega_full(n), acc, "N = {n_order}, n = {n}");
            }
        }
    }

    #[test]
    fn omega_one_is_all_edges() {
        let g = Digraph::parse("1 2\n2 3\n3 1\n1 4\n").unwrap();
        let pc = PathComplex::from_digraph(&g, 2);
        for n_order in 2..=5 {
            assert_eq!(omega_full(&pc, 1, n_order).dim(), 4);
        }
    }
}
