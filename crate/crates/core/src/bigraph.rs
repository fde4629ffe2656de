//! Bit-parallel biadjacency representation of subgraphs of `K_{m,n}`.
//!
//! Rows are the part `X = {x_1..x_m}`, columns the part `Y = {y_1..y_n}`.
//! Row `i` is stored as a `u64` whose bit `j` is set when the edge
//! `x_{i+1} y_{j+1}` is present.

use std::fmt;

use crate::error::{Error, Result};

/// Largest row count supported by the search paths.
pub const MAX_ROWS: usize = 16;
/// Largest column count; one machine word per row.
pub const MAX_COLS: usize = 63;

/// Dimensions of a complete bipartite host `K_{m,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteHost {
    m: usize,
    n: usize,
}

impl BipartiteHost {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 || m > MAX_ROWS || n > MAX_COLS {
            return Err(Error::HostLimit {
                m,
                n,
                max_m: MAX_ROWS,
                max_n: MAX_COLS,
            });
        }
        Ok(BipartiteHost { m, n })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges of the host, `m * n`.
    pub fn edge_capacity(&self) -> usize {
        self.m * self.n
    }

    /// The host with the two parts swapped.
    pub fn transposed(&self) -> Result<Self> {
        BipartiteHost::new(self.n, self.m)
    }

    /// Mask with the low `n` bits set.
    #[inline]
    pub fn col_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= self.m {
            return Err(Error::OutOfRange {
                what: "row",
                index: i,
                bound: self.m,
            });
        }
        Ok(())
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j >= self.n {
            return Err(Error::OutOfRange {
                what: "column",
                index: j,
                bound: self.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BipartiteHost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{},{}}}", self.m, self.n)
    }
}

/// A subgraph of a [`BipartiteHost`], stored row-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiGraph {
    host: BipartiteHost,
    rows: Vec<u64>,
}

impl BiGraph {
    pub fn empty(host: BipartiteHost) -> Self {
        BiGraph {
            host,
            rows: vec![0; host.m],
        }
    }

    pub fn full(host: BipartiteHost) -> Self {
        BiGraph {
            host,
            rows: vec![host.col_mask(); host.m],
        }
    }

    /// Builds a graph from `(row, column)` pairs. Duplicates are harmless.
    pub fn from_edge_list(host: BipartiteHost, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = BiGraph::empty(host);
        for &(i, j) in edges {
            host.check_row(i)?;
            host.check_col(j)?;
            g.rows[i] |= 1 << j;
        }
        Ok(g)
    }

    /// Builds a graph from raw row words; rejects bits at or beyond column `n`.
    pub fn from_rows(host: BipartiteHost, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != host.m {
            return Err(Error::Contract(format!(
                "expected {} row words, got {}",
                host.m,
                rows.len()
            )));
        }
        for (i, &r) in rows.iter().enumerate() {
            if r & !host.col_mask() != 0 {
                return Err(Error::Contract(format!(
                    "row {i} has a bit at column {}, host has {} columns",
                    63 - r.leading_zeros(),
                    host.n
                )));
            }
        }
        Ok(BiGraph { host, rows })
    }

    /// Builds a graph from column row-masks (bit `i` of `cols[j]` = edge `(i, j)`).
    pub fn from_columns(host: BipartiteHost, cols: &[u64]) -> Result<Self> {
        if cols.len() != host.n {
            return Err(Error::Contract(format!(
                "expected {} column masks, got {}",
                host.n,
                cols.len()
            )));
        }
        let mut rows = vec![0u64; host.m];
        for (j, &c) in cols.iter().enumerate() {
            if c >> host.m != 0 {
                return Err(Error::Contract(format!(
                    "column {j} mentions a row >= {}",
                    host.m
                )));
            }
            for (i, row) in rows.iter_mut().enumerate() {
                if c >> i & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        Ok(BiGraph { host, rows })
    }

    #[inline]
    pub fn host(&self) -> BipartiteHost {
        self.host
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.host.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.host.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Returns a copy with the edge `(i, j)` added.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        self.host.check_row(i)?;
        self.host.check_col(j)?;
        let mut g = self.clone();
        g.rows[i] |= 1 << j;
        Ok(g)
    }

    /// Returns a copy with the edge `(i, j)` removed.
    pub fn without_edge(&self, i: usize, j: usize) -> Result<Self> {
        self.host.check_row(i)?;
        self.host.check_col(j)?;
        let mut g = self.clone();
        g.rows[i] &= !(1 << j);
        Ok(g)
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, &r)| {
            (0..self.host.n)
                .filter(move |&j| r >> j & 1 == 1)
                .map(move |j| (i, j))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn row_degree(&self, i: usize) -> Result<usize> {
        self.host.check_row(i)?;
        Ok(self.rows[i].count_ones() as usize)
    }

    pub fn col_degree(&self, j: usize) -> Result<usize> {
        self.host.check_col(j)?;
        Ok(self.column(j).count_ones() as usize)
    }

    /// Row-mask of column `j`: bit `i` set iff edge `(i, j)`.
    #[inline]
    pub fn column(&self, j: usize) -> u64 {
        let mut c = 0u64;
        for (i, &r) in self.rows.iter().enumerate() {
            c |= (r >> j & 1) << i;
        }
        c
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.host.n).map(|j| self.column(j)).collect()
    }

    /// Column `j` as an ordering key: row 0 is the most significant bit.
    pub fn column_code(&self, j: usize) -> u32 {
        mask_to_code(self.column(j), self.host.m)
    }

    /// Complement inside the host `K_{m,n}`.
    pub fn complement(&self) -> BiGraph {
        let mask = self.host.col_mask();
        BiGraph {
            host: self.host,
            rows: self.rows.iter().map(|r| !r & mask).collect(),
        }
    }

    /// Induced subgraph on the kept rows and columns, reindexed densely in
    /// increasing original order. Index lists may be unsorted or repeat.
    pub fn restrict(&self, keep_rows: &[usize], keep_cols: &[usize]) -> Result<BiGraph> {
        let rows = sorted_unique(keep_rows);
        let cols = sorted_unique(keep_cols);
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Contract(
                "restrict needs at least one row and one column".into(),
            ));
        }
        for &i in &rows {
            self.host.check_row(i)?;
        }
        for &j in &cols {
            self.host.check_col(j)?;
        }
        let host = BipartiteHost::new(rows.len(), cols.len())?;
        let new_rows = rows
            .iter()
            .map(|&i| {
                cols.iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &j)| acc | (self.rows[i] >> j & 1) << k)
            })
            .collect();
        Ok(BiGraph {
            host,
            rows: new_rows,
        })
    }

    /// Drops a single row.
    pub fn delete_row(&self, i: usize) -> Result<BiGraph> {
        self.host.check_row(i)?;
        let keep: Vec<usize> = (0..self.m()).filter(|&r| r != i).collect();
        self.restrict(&keep, &(0..self.n()).collect::<Vec<_>>())
    }

    /// Drops a single column.
    pub fn delete_col(&self, j: usize) -> Result<BiGraph> {
        self.host.check_col(j)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&c| c != j).collect();
        self.restrict(&(0..self.m()).collect::<Vec<_>>(), &keep)
    }

    /// New column `k` is old column `perm[k]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<BiGraph> {
        check_permutation(perm, self.n())?;
        let cols = self.columns();
        BiGraph::from_columns(
            self.host,
            &perm.iter().map(|&p| cols[p]).collect::<Vec<_>>(),
        )
    }

    /// New row `k` is old row `perm[k]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<BiGraph> {
        check_permutation(perm, self.m())?;
        Ok(BiGraph {
            host: self.host,
            rows: perm.iter().map(|&p| self.rows[p]).collect(),
        })
    }

    /// Swaps the roles of rows and columns; needs `n <= MAX_ROWS`.
    pub fn transpose(&self) -> Result<BiGraph> {
        let host = self.host.transposed()?;
        Ok(BiGraph {
            host,
            rows: self.columns(),
        })
    }

    /// Column-symmetry normal form: columns sorted by non-increasing code,
    /// where the code reads the column with row 0 as the most significant bit.
    pub fn sorted_columns_form(&self) -> BiGraph {
        let mut cols = self.columns();
        let m = self.m();
        cols.sort_by_key(|&c| std::cmp::Reverse(mask_to_code(c, m)));
        BiGraph::from_columns(self.host, &cols).expect("columns come from a valid graph")
    }

    /// Rows rendered as `'0'/'1'` strings, character `j` for column `j`.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&r| {
                (0..self.n())
                    .map(|j| if r >> j & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for BiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BiGraph {} ({} edges)", self.host, self.edge_count())?;
        for s in self.row_strings() {
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// Converts a row-mask (bit `i` = row `i`) to the ordering code where row 0
/// is the most significant of `m` bits.
#[inline]
pub fn mask_to_code(mask: u64, m: usize) -> u32 {
    debug_assert!(m <= MAX_ROWS);
    let mut code = 0u32;
    for i in 0..m {
        code |= ((mask >> i & 1) as u32) << (m - 1 - i);
    }
    code
}

/// Inverse of [`mask_to_code`].
#[inline]
pub fn code_to_mask(code: u32, m: usize) -> u64 {
    let mut mask = 0u64;
    for i in 0..m {
        mask |= ((code >> (m - 1 - i) & 1) as u64) << i;
    }
    mask
}

fn sorted_unique(idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::Contract(format!(
            "permutation has length {}, expected {len}",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= len || seen[p] {
            return Err(Error::Contract(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    fn host(m: usize, n: usize) -> BipartiteHost {
        BipartiteHost::new(m, n).unwrap()
    }

    #[test]
    fn host_limits_are_enforced() {
        assert!(BipartiteHost::new(0, 3).is_err());
        assert!(BipartiteHost::new(3, 0).is_err());
        assert!(BipartiteHost::new(17, 3).is_err());
        assert!(BipartiteHost::new(3, 64).is_err());
        assert!(BipartiteHost::new(16, 63).is_ok());
    }

    #[test]
    fn edge_list_basics() {
        assert_eq!(
            BiGraph::from_edge_list(host(3, 3), &[])
                .unwrap()
                .edge_count(),
            0
        );
        let g = BiGraph::from_edge_list(host(2, 2), &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(
            BiGraph::from_edge_list(host(2, 2), &[(2, 0)]),
            Err(Error::OutOfRange { what: "row", .. })
        ));
        assert!(matches!(
            BiGraph::from_edge_list(host(2, 2), &[(0, 5)]),
            Err(Error::OutOfRange { what: "column", .. })
        ));
    }

    #[test]
    fn figure_graph_counts() {
        let f1 = fixture("figure1").unwrap().graph();
        assert_eq!(f1.edge_count(), 20);
        assert_eq!(f1.complement().edge_count(), 36);
        assert_eq!(f1.row_degree(0).unwrap(), 5);
        let f2 = fixture("figure2").unwrap().graph();
        for i in 0..6 {
            assert_eq!(f2.row_degree(i).unwrap(), 4);
        }
        let dropped = f2.delete_row(5).unwrap();
        assert_eq!(dropped.host(), host(5, 11));
        assert_eq!(dropped.edge_count(), 20);
    }

    #[test]
    fn degrees_out_of_range() {
        let g = BiGraph::empty(host(2, 3));
        assert!(g.row_degree(2).is_err());
        assert!(g.col_degree(3).is_err());
        assert_eq!(g.col_degree(2).unwrap(), 0);
    }

    #[test]
    fn empty_and_full_complement() {
        let e = BiGraph::empty(host(3, 3));
        assert_eq!(e.complement(), BiGraph::full(host(3, 3)));
        assert_eq!(e.complement().edge_count(), 9);
    }

    #[test]
    fn restrict_full_and_identity() {
        let k33 = BiGraph::full(host(3, 3));
        let r = k33.restrict(&[0, 2], &[1, 2]).unwrap();
        assert_eq!(r, BiGraph::full(host(2, 2)));
        let f1 = fixture("figure1").unwrap().graph();
        let all_r: Vec<usize> = (0..4).collect();
        let all_c: Vec<usize> = (0..14).collect();
        assert_eq!(f1.restrict(&all_r, &all_c).unwrap(), f1);
        assert!(matches!(f1.restrict(&[], &[0]), Err(Error::Contract(_))));
    }

    #[test]
    fn restrict_reindexes_in_order() {
        let g = BiGraph::from_edge_list(host(3, 4), &[(0, 3), (2, 1), (1, 0)]).unwrap();
        let r = g.restrict(&[2, 0], &[3, 1]).unwrap();
        // rows {0,2} -> {0,1}; columns {1,3} -> {0,1}
        assert!(r.has_edge(0, 1));
        assert!(r.has_edge(1, 0));
        assert_eq!(r.edge_count(), 2);
    }

    #[test]
    fn sorted_columns_small_case() {
        // columns: {0}, {0,1}, {}
        let g = BiGraph::from_edge_list(host(2, 3), &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let s = g.sorted_columns_form();
        assert_eq!(s.columns(), vec![0b11, 0b01, 0b00]);
        let e = BiGraph::empty(host(4, 5));
        assert_eq!(e.sorted_columns_form(), e);
    }

    #[test]
    fn code_mask_roundtrip() {
        for m in 1..=8 {
            for mask in 0u64..(1 << m) {
                assert_eq!(code_to_mask(mask_to_code(mask, m), m), mask);
            }
        }
        assert_eq!(mask_to_code(0b001, 3), 0b100);
    }

    #[test]
    fn transpose_swaps_parts() {
        let g = BiGraph::from_edge_list(host(2, 5), &[(0, 4), (1, 2)]).unwrap();
        let t = g.transpose().unwrap();
        assert_eq!(t.host(), host(5, 2));
        assert!(t.has_edge(4, 0) && t.has_edge(2, 1));
        assert_eq!(t.transpose().unwrap(), g);
    }

    #[test]
    fn row_strings_layout() {
        let g = BiGraph::from_edge_list(host(2, 3), &[(0, 0), (1, 2)]).unwrap();
        assert_eq!(g.row_strings(), vec!["100", "001"]);
    }
}
