//! Exhaustive, certificate-producing search for m-bipartite Ramsey numbers
//! `BR_m(K_{2,2}, K_{3,3})` and small Zarankiewicz numbers.
//!
//! The red/blue coloring of `K_{m,n}` is stored as its red part, a
//! [`BiGraph`]; blue is the complement inside the host. A coloring is *good*
//! when red has no `K_{2,2}` and blue has no `K_{3,3}`.

pub mod bigraph;
pub mod cnf;
pub mod coloring;
pub mod detect;
pub mod error;
pub mod fixtures;
pub mod search;
pub mod witness;
pub mod zarankiewicz;

pub use bigraph::{BiGraph, BipartiteHost, MAX_COLS, MAX_ROWS};
pub use coloring::{monotone_restriction_check, verify_good_coloring, GoodColoring, Rejection};
pub use detect::{
    degree_prune_applies, find_kst, has_kst, pairwise_column_intersection_ok, triple_miss_counts,
    TripleMissTable,
};
pub use error::{Error, Result};
pub use fixtures::{fixture, theorem_table, PaperFixture};
pub use search::{
    brm, brm_scan, enumerate_good_colorings, good_coloring_exists, small_m_certificate, BrmResult,
    BrmVerdict, RowSymmetry, SearchConfig, SearchOutcome, SearchStats, Verdict,
};
pub use witness::WitnessFile;
pub use zarankiewicz::{
    ktt_free_upper_bound, zarankiewicz, zarankiewicz_with, ZarankiewiczOptions, ZarankiewiczResult,
};
