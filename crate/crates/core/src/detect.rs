//! Complete-bipartite subgraph detection by row intersection and popcount.

use crate::bigraph::BiGraph;

/// Finds `s` rows and `t` columns with all `s*t` edges present.
///
/// Rows are taken from part X and columns from part Y; for the other
/// orientation query with `(t, s)` or on the transpose. Returns the row and
/// column indices of the first occurrence in lexicographic row order.
pub fn find_kst(g: &BiGraph, s: usize, t: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    if s == 0 || t == 0 || s > g.m() || t > g.n() {
        return None;
    }
    let mut chosen = Vec::with_capacity(s);
    let common = kst_rec(g.rows(), s, t, 0, g.host().col_mask(), &mut chosen)?;
    let cols = (0..g.n())
        .filter(|&j| common >> j & 1 == 1)
        .take(t)
        .collect();
    Some((chosen, cols))
}

fn kst_rec(
    rows: &[u64],
    s: usize,
    t: usize,
    start: usize,
    acc: u64,
    chosen: &mut Vec<usize>,
) -> Option<u64> {
    if chosen.len() == s {
        return Some(acc);
    }
    let need = s - chosen.len();
    for i in start..=rows.len() - need {
        let next = acc & rows[i];
        if (next.count_ones() as usize) < t {
            continue;
        }
        chosen.push(i);
        if let Some(c) = kst_rec(rows, s, t, i + 1, next, chosen) {
            return Some(c);
        }
        chosen.pop();
    }
    None
}

/// True iff `g` contains `K_{s,t}` with `s` rows and `t` columns.
pub fn has_kst(g: &BiGraph, s: usize, t: usize) -> bool {
    find_kst(g, s, t).is_some()
}

/// True iff every two distinct columns share at most one row, i.e. `g` has
/// no `K_{2,2}`.
pub fn pairwise_column_intersection_ok(g: &BiGraph) -> bool {
    let cols = g.columns();
    for (a, &ca) in cols.iter().enumerate() {
        if ca.count_ones() < 2 {
            continue;
        }
        for &cb in &cols[a + 1..] {
            if (ca & cb).count_ones() >= 2 {
                return false;
            }
        }
    }
    true
}

/// Per row triple `T`, the number of columns with no red edge into `T`.
///
/// A blue `K_{3,3}` on the rows of `T` exists iff its count reaches 3.
/// Counts only grow as columns are pushed, which is what makes the search
/// prune sound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleMissTable {
    m: usize,
    triples: Vec<u64>,
    counts: Vec<u8>,
    columns: usize,
}

impl TripleMissTable {
    pub fn new(m: usize) -> Self {
        assert!(m >= 3, "triple miss table needs at least 3 rows, got {m}");
        let mut triples = Vec::with_capacity(m * (m - 1) * (m - 2) / 6);
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    triples.push(1 << a | 1 << b | 1 << c);
                }
            }
        }
        let counts = vec![0; triples.len()];
        TripleMissTable {
            m,
            triples,
            counts,
            columns: 0,
        }
    }

    /// Appends a column given as a row-mask. Returns `true` when some count
    /// has reached 3 (the complement now contains a `K_{3,3}`).
    pub fn push_column(&mut self, col: u64) -> bool {
        let mut hit = false;
        for (t, c) in self.triples.iter().zip(self.counts.iter_mut()) {
            if t & col == 0 {
                *c += 1;
                hit |= *c >= 3;
            }
        }
        self.columns += 1;
        hit
    }

    /// Undoes a previous [`push_column`](Self::push_column) of the same mask.
    pub fn pop_column(&mut self, col: u64) {
        for (t, c) in self.triples.iter().zip(self.counts.iter_mut()) {
            if t & col == 0 {
                *c -= 1;
            }
        }
        self.columns -= 1;
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn columns_seen(&self) -> usize {
        self.columns
    }

    /// Row-masks of all triples, lexicographic in `(a, b, c)`.
    pub fn triples(&self) -> &[u64] {
        &self.triples
    }

    pub fn counts(&self) -> &[u8] {
        &self.counts
    }

    /// Count for the triple of rows `{a, b, c}` (any order, distinct).
    pub fn count(&self, rows: [usize; 3]) -> usize {
        let mask = rows.iter().fold(0u64, |acc, &r| acc | 1 << r);
        assert_eq!(mask.count_ones(), 3, "rows must be distinct");
        let idx = self
            .triples
            .iter()
            .position(|&t| t == mask)
            .expect("rows within table");
        self.counts[idx] as usize
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0) as usize
    }

    /// First triple (as a row-mask) whose count is at least 3.
    pub fn overfull_triple(&self) -> Option<u64> {
        self.triples
            .iter()
            .zip(&self.counts)
            .find(|(_, &c)| c >= 3)
            .map(|(&t, _)| t)
    }
}

/// Batch computation of the triple miss counts of `g`.
pub fn triple_miss_counts(g: &BiGraph) -> TripleMissTable {
    let mut table = TripleMissTable::new(g.m());
    for col in g.columns() {
        table.push_column(col);
    }
    table
}

/// Largest row degree allowed before the degree-6 rule forces a red `K_{2,2}`
/// or a blue `K_{3,3}`.
pub const LEMMA_ROW_DEGREE_CAP: usize = 5;

/// Whether the host satisfies the hypotheses of the row-degree rule
/// (`m >= 4`, `n >= 6`).
pub fn degree_rule_in_scope(m: usize, n: usize) -> bool {
    m >= 4 && n >= 6
}

/// True when the host has `m >= 4`, `n >= 6` and some row of `g` has
/// degree at least 6. Such a `g` cannot be the red part of a good
/// (K_{2,2}, K_{3,3}) coloring. Only rows are inspected.
pub fn degree_prune_applies(g: &BiGraph) -> bool {
    degree_rule_in_scope(g.m(), g.n())
        && g.rows()
            .iter()
            .any(|r| r.count_ones() as usize > LEMMA_ROW_DEGREE_CAP)
}
