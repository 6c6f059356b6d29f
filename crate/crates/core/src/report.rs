//! Printed homology values for the bundled fixtures, compared cell by cell
//! with freshly computed Betti numbers.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::fixtures::fixture;
use crate::homology::{betti_table, required_depth, BettiTable, HomologyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tier {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    PaperInconsistent,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::PaperInconsistent => "paper-inconsistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatCell {
    pub fixture: &'static str,
    #[serde(rename = "N")]
    pub order: u32,
    pub q: usize,
    pub n: usize,
    pub paper_value: usize,
    pub computed_value: usize,
    pub tier: Tier,
    pub status: Status,
}

/// One printed value. `inconsistent` marks cells that contradict the
/// printed generators or dimension counts next to them.
#[derive(Debug, Clone, Copy)]
pub struct PaperCell {
    pub fixture: &'static str,
    pub order: u32,
    pub q: usize,
    pub n: usize,
    pub value: usize,
    pub tier: Tier,
    pub inconsistent: bool,
}

const fn a(fixture: &'static str, order: u32, q: usize, n: usize, value: usize) -> PaperCell {
    PaperCell {
        fixture,
        order,
        q,
        n,
        value,
        tier: Tier::A,
        inconsistent: false,
    }
}

const fn b(fixture: &'static str, order: u32, q: usize, n: usize, value: usize) -> PaperCell {
    PaperCell {
        fixture,
        order,
        q,
        n,
        value,
        tier: Tier::B,
        inconsistent: true,
    }
}

pub const PAPER_CELLS: &[PaperCell] = &[
    // diamond
    a("diamond", 2, 1, 0, 1),
    a("diamond", 2, 1, 1, 0),
    a("diamond", 2, 1, 2, 0),
    a("diamond", 2, 1, 3, 0),
    a("diamond", 3, 1, 0, 1),
    a("diamond", 3, 1, 1, 1),
    a("diamond", 3, 1, 2, 0),
    a("diamond", 3, 2, 0, 0),
    b("diamond", 3, 2, 1, 1),
    a("diamond", 3, 2, 2, 0),
    // feed-forward motifs
    a("t1", 2, 1, 0, 1),
    a("t1", 2, 1, 1, 0),
    a("t1", 3, 1, 0, 2),
    a("t1", 3, 1, 1, 0),
    a("t1", 3, 2, 0, 0),
    b("t1", 3, 2, 1, 0),
    a("t2", 2, 1, 0, 1),
    a("t2", 2, 1, 1, 0),
    a("t2", 3, 1, 0, 3),
    a("t2", 3, 1, 1, 0),
    a("t2", 3, 2, 0, 0),
    b("t2", 3, 2, 1, 0),
    // 4-cycles
    a("l1", 2, 1, 0, 1),
    a("l1", 2, 1, 1, 1),
    a("l1", 3, 1, 0, 4),
    a("l1", 3, 1, 1, 0),
    a("l1", 3, 2, 0, 0),
    a("l1", 3, 2, 1, 4),
    a("l2", 2, 1, 0, 1),
    a("l2", 2, 1, 1, 0),
    a("l2", 3, 1, 0, 3),
    a("l2", 3, 1, 1, 1),
    a("l2", 3, 2, 0, 1),
    b("l2", 3, 2, 1, 4),
    a("l3", 2, 1, 0, 1),
    a("l3", 2, 1, 1, 1),
    a("l3", 3, 1, 0, 4),
    a("l3", 3, 1, 1, 1),
    b("l3", 3, 2, 0, 4),
    a("l3", 3, 2, 1, 4),
    // torus
    a("torus", 3, 1, 0, 1),
    b("torus", 3, 1, 1, 18),
    a("torus", 3, 1, 2, 0),
    a("torus", 3, 2, 0, 0),
    b("torus", 3, 2, 1, 9),
    b("torus", 3, 2, 2, 10),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub cells: Vec<CompatCell>,
}

impl CompatReport {
    pub fn tier_a_mismatches(&self) -> Vec<&CompatCell> {
        self.cells
            .iter()
            .filter(|c| c.tier == Tier::A && c.status != Status::Match)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("fixture,N,q,n,paper,computed,tier,status\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:?},{}",
                c.fixture,
                c.order,
                c.q,
                c.n,
                c.paper_value,
                c.computed_value,
                c.tier,
                c.status.as_str()
            );
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| fixture | (N,q) | n | paper | computed | tier | status |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "| {} | ({},{}) | {} | {} | {} | {:?} | {} |",
                c.fixture,
                c.order,
                c.q,
                c.n,
                c.paper_value,
                c.computed_value,
                c.tier,
                c.status.as_str()
            );
        }
        out
    }
}

pub fn compare(cells: &[PaperCell], computed: &BTreeMap<(&'static str, u32), BettiTable>) -> CompatReport {
    let cells = cells
        .iter()
        .map(|p| {
            let value = computed[&(p.fixture, p.order)]
                .get(p.n, p.q)
                .expect("table covers every listed cell");
            let status = if value == p.value {
                Status::Match
            } else if p.inconsistent {
                Status::PaperInconsistent
            } else {
                Status::Mismatch
            };
            CompatCell {
                fixture: p.fixture,
                order: p.order,
                q: p.q,
                n: p.n,
                paper_value: p.value,
                computed_value: value,
                tier: p.tier,
                status,
            }
        })
        .collect();
    CompatReport { cells }
}

pub fn compat_report() -> Result<CompatReport, HomologyError> {
    let mut tables = BTreeMap::new();
    for p in PAPER_CELLS {
        if tables.contains_key(&(p.fixture, p.order)) {
            continue;
        }
        let max_dim = PAPER_CELLS
            .iter()
            .filter(|c| c.fixture == p.fixture)
            .map(|c| c.n)
            .max()
            .unwrap();
        let pc = fixture(p.fixture)
            .expect("bundled fixture")
            .complex(required_depth(max_dim, p.order));
        tables.insert((p.fixture, p.order), betti_table(&pc, p.order, max_dim)?);
    }
    Ok(compare(PAPER_CELLS, &tables))
}
