//! Brute-force oracles shared by the integration suites. Nothing here calls
//! into the detection or search code it is used to check.

#![allow(dead_code)]

use biramsey_core::{BiGraph, BipartiteHost};
use rand::Rng;

pub fn host(m: usize, n: usize) -> BipartiteHost {
    BipartiteHost::new(m, n).unwrap()
}

/// All `k`-subsets of `0..len`, lexicographic.
pub fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= len {
        rec(0, len, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Edge test through `edges()`, independent of the row words.
pub fn edge_matrix(g: &BiGraph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.m()];
    for (i, j) in g.edges() {
        a[i][j] = true;
    }
    a
}

/// Exhaustive check over every row `s`-subset and column `t`-subset.
pub fn brute_has_kst(g: &BiGraph, s: usize, t: usize) -> bool {
    let a = edge_matrix(g);
    let rows = subsets(g.m(), s);
    let cols = subsets(g.n(), t);
    rows.iter().any(|r| {
        cols.iter()
            .any(|c| r.iter().all(|&i| c.iter().all(|&j| a[i][j])))
    })
}

/// Complement by explicit edge enumeration.
pub fn brute_complement(g: &BiGraph) -> BiGraph {
    let a = edge_matrix(g);
    let mut edges = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &red) in row.iter().enumerate() {
            if !red {
                edges.push((i, j));
            }
        }
    }
    BiGraph::from_edge_list(g.host(), &edges).unwrap()
}

pub fn brute_is_good(red: &BiGraph) -> bool {
    !brute_has_kst(red, 2, 2) && !brute_has_kst(&brute_complement(red), 3, 3)
}

/// Graph number `code` on `host`: bit `i*n + j` is edge `(i, j)`.
pub fn graph_from_code(host: BipartiteHost, code: u64) -> BiGraph {
    let n = host.n();
    let edges: Vec<(usize, usize)> = (0..host.edge_capacity())
        .filter(|b| code >> b & 1 == 1)
        .map(|b| (b / n, b % n))
        .collect();
    BiGraph::from_edge_list(host, &edges).unwrap()
}

/// Every red graph on `host` that is a good coloring (`m*n <= 16`).
pub fn brute_good_colorings(host: BipartiteHost) -> Vec<BiGraph> {
    assert!(host.edge_capacity() <= 20);
    (0u64..1 << host.edge_capacity())
        .map(|c| graph_from_code(host, c))
        .filter(brute_is_good)
        .collect()
}

/// `z((m,n), K_{t,t})` by enumerating all `2^(m*n)` subgraphs.
pub fn brute_zarankiewicz(host: BipartiteHost, t: usize) -> usize {
    assert!(host.edge_capacity() <= 20);
    (0u64..1 << host.edge_capacity())
        .filter(|&c| !brute_has_kst(&graph_from_code(host, c), t, t))
        .map(|c| c.count_ones() as usize)
        .max()
        .unwrap()
}

/// Faster exact z for `m*n <= 20`: prune on K_{t,t} while filling row by row.
pub fn brute_zarankiewicz_rows(host: BipartiteHost, t: usize) -> usize {
    let (m, n) = (host.m(), host.n());
    fn ok(rows: &[u64], t: usize) -> bool {
        // any t rows (including the last) sharing >= t columns?
        let last = rows.len() - 1;
        subsets(last, t - 1).iter().all(|others| {
            let common = others.iter().fold(rows[last], |acc, &i| acc & rows[i]);
            (common.count_ones() as usize) < t
        })
    }
    fn rec(rows: &mut Vec<u64>, m: usize, n: usize, t: usize) -> usize {
        if rows.len() == m {
            return rows.iter().map(|r| r.count_ones() as usize).sum();
        }
        let mut best = 0;
        for r in 0u64..1 << n {
            rows.push(r);
            if rows.len() < t || ok(rows, t) {
                best = best.max(rec(rows, m, n, t));
            }
            rows.pop();
        }
        best
    }
    rec(&mut Vec::new(), m, n, t)
}

pub fn random_graph(rng: &mut impl Rng, host: BipartiteHost, p: f64) -> BiGraph {
    let mut edges = Vec::new();
    for i in 0..host.m() {
        for j in 0..host.n() {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    BiGraph::from_edge_list(host, &edges).unwrap()
}

pub fn shuffled(rng: &mut impl Rng, len: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..len).collect();
    v.shuffle(rng);
    v
}

/// All permutations of `0..k`.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Column multiset key: sorted descending list of column row-sets, each
/// read with row 0 most significant. Built from the edge matrix.
pub fn column_form_key(g: &BiGraph) -> Vec<u32> {
    let a = edge_matrix(g);
    let m = g.m();
    let mut cols: Vec<u32> = (0..g.n())
        .map(|j| (0..m).fold(0u32, |acc, i| acc | (a[i][j] as u32) << (m - 1 - i)))
        .collect();
    cols.sort_unstable_by(|x, y| y.cmp(x));
    cols
}

/// Random `K_{2,2}`-free graph with row `row` of degree `deg`, then extra
/// edges tried in random order and kept when they create no `C4`.
pub fn random_c4_free_with_heavy_row(
    rng: &mut impl Rng,
    host: BipartiteHost,
    row: usize,
    deg: usize,
    extra_tries: usize,
) -> BiGraph {
    let (m, n) = (host.m(), host.n());
    let mut rows = vec![0u64; m];
    for j in shuffled(rng, n).into_iter().take(deg) {
        rows[row] |= 1 << j;
    }
    for _ in 0..extra_tries {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..n);
        let cand = rows[i] | 1 << j;
        if (0..m).all(|k| k == i || (cand & rows[k]).count_ones() <= 1) {
            rows[i] = cand;
        }
    }
    BiGraph::from_rows(host, rows).unwrap()
}
