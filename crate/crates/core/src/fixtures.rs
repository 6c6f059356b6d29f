//! Small bundled inputs: motifs, worked examples and a torus triangulation.

use crate::complex::{Digraph, PathComplex, SimplicialComplex, SourceKind};

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: SourceKind,
    pub text: &'static str,
}

macro_rules! edges {
    ($name:literal) => {
        Fixture {
            name: $name,
            kind: SourceKind::Digraph,
            text: include_str!(concat!("../fixtures/", $name, ".edges")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    edges!("diamond"),
    edges!("t1"),
    edges!("t2"),
    edges!("l1"),
    edges!("l2"),
    edges!("l3"),
    edges!("exclusion"),
    edges!("trapezohedron"),
    edges!("theta"),
    edges!("bowtie"),
    edges!("dumbbell"),
    edges!("double_edge"),
    Fixture {
        name: "torus",
        kind: SourceKind::Simplicial,
        text: include_str!("../fixtures/torus.simplices"),
    },
];

pub fn fixture(name: &str) -> Option<Fixture> {
    FIXTURES.iter().find(|f| f.name == name).copied()
}

impl Fixture {
    /// Panics only if bundled data is malformed.
    pub fn digraph(&self) -> Option<Digraph> {
        (self.kind == SourceKind::Digraph).then(|| Digraph::parse(self.text).expect("bundled fixture"))
    }

    pub fn complex(&self, max_dim: usize) -> PathComplex {
        match self.kind {
            SourceKind::Digraph => PathComplex::from_digraph(&self.digraph().unwrap(), max_dim),
            SourceKind::Simplicial => {
                PathComplex::from_simplicial(&SimplicialComplex::parse(self.text).expect("bundled fixture"), max_dim)
            }
        }
    }

    pub fn file_name(&self) -> String {
        match self.kind {
            SourceKind::Digraph => format!("{}.edges", self.name),
            SourceKind::Simplicial => format!("{}.simplices", self.name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        for f in FIXTURES {
            let pc = f.complex(2);
            assert!(pc.vertex_count() > 0, "{}", f.name);
        }
        let torus = fixture("torus").unwrap().complex(2);
        let dims: Vec<usize> = (0..=2).map(|n| torus.allowed_count(n)).collect();
        assert_eq!(dims, vec![7, 21, 14]);
        assert_eq!(fixture("exclusion").unwrap().digraph().unwrap().edges().len(), 9);
        assert!(fixture("nope").is_none());
    }
}
