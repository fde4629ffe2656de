//! The two published extremal colorings and the table of known `BR_m` values.
//!
//! Edge lists are 0-based `(row, column)` pairs; `(0, 0)` is `x_1 y_1`.

use crate::bigraph::{BiGraph, BipartiteHost};
use crate::error::{Error, Result};
use crate::search::BrmVerdict;

#[derive(Clone, Debug)]
pub struct PaperFixture {
    pub name: &'static str,
    pub m: usize,
    pub n: usize,
    pub red_edges: &'static [(usize, usize)],
    pub claim: &'static str,
}

impl PaperFixture {
    pub fn host(&self) -> BipartiteHost {
        BipartiteHost::new(self.m, self.n).expect("fixture host within limits")
    }

    pub fn graph(&self) -> BiGraph {
        BiGraph::from_edge_list(self.host(), self.red_edges).expect("fixture edges within host")
    }
}

#[rustfmt::skip]
const FIGURE1_EDGES: [(usize, usize); 20] = [
    (0, 0), (0, 1), (0, 2), (0, 3), (0, 4),
    (1, 0), (1, 5), (1, 6), (1, 7), (1, 8),
    (2, 1), (2, 5), (2, 9), (2, 10), (2, 11),
    (3, 2), (3, 6), (3, 9), (3, 12), (3, 13),
];

#[rustfmt::skip]
const FIGURE2_EDGES: [(usize, usize); 24] = [
    (0, 0), (0, 1), (0, 2), (0, 3),
    (1, 0), (1, 4), (1, 5), (1, 6),
    (2, 0), (2, 7), (2, 8), (2, 9),
    (3, 1), (3, 4), (3, 7), (3, 10),
    (4, 2), (4, 5), (4, 8), (4, 10),
    (5, 3), (5, 6), (5, 9), (5, 10),
];

const FIXTURES: [PaperFixture; 2] = [
    PaperFixture {
        name: "figure1",
        m: 4,
        n: 14,
        red_edges: &FIGURE1_EDGES,
        claim: "K_{4,14} has a good coloring: this red graph is K_{2,2}-free and its host complement is K_{3,3}-free, so BR_4 > 14",
    },
    PaperFixture {
        name: "figure2",
        m: 6,
        n: 11,
        red_edges: &FIGURE2_EDGES,
        claim: "K_{6,11} has a good coloring: this red graph is K_{2,2}-free and its host complement is K_{3,3}-free, so BR_5, BR_6 > 11",
    },
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

pub fn fixture(name: &str) -> Result<PaperFixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .cloned()
        .ok_or_else(|| Error::UnknownFixture {
            name: name.to_string(),
            valid: fixture_names().join(", "),
        })
}

/// Known values of `BR_m(K_{2,2}, K_{3,3})` for `m = 2..=8`.
pub fn theorem_table() -> Vec<(usize, BrmVerdict)> {
    vec![
        (2, BrmVerdict::DoesNotExist),
        (3, BrmVerdict::DoesNotExist),
        (4, BrmVerdict::Value(15)),
        (5, BrmVerdict::Value(12)),
        (6, BrmVerdict::Value(12)),
        (7, BrmVerdict::Value(9)),
        (8, BrmVerdict::Value(9)),
    ]
}
