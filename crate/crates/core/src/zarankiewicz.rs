//! Exact Zarankiewicz numbers `z((m,n), K_{t,t})` by branch and bound.
//!
//! A subgraph of `K_{m,n}` is `K_{t,t}`-free iff every `t`-set of rows lies
//! in at most `t - 1` common columns. The search appends columns in
//! non-increasing code order, keeps a use count per row `t`-set, and bounds
//! a node by filling the remaining columns greedily against the total
//! leftover `t`-set capacity (raising a column from degree `d` to `d + 1`
//! consumes `C(d, t-1)` units).

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::bigraph::{BiGraph, BipartiteHost};
use crate::error::{Error, Result};
use crate::search::{greedy_fill, PatternTable, RowSymmetry, RowTies};

#[derive(Clone, Debug)]
pub struct ZarankiewiczOptions {
    /// Refuse hosts beyond `max_m x max_n` unless disabled.
    pub scale_guard: bool,
    pub max_m: usize,
    pub max_n: usize,
    pub threads: usize,
    pub row_symmetry: RowSymmetry,
}

impl Default for ZarankiewiczOptions {
    fn default() -> Self {
        ZarankiewiczOptions {
            scale_guard: true,
            max_m: 9,
            max_n: 9,
            threads: 1,
            row_symmetry: RowSymmetry::DoubleLex,
        }
    }
}

impl ZarankiewiczOptions {
    pub fn admits(&self, host: BipartiteHost) -> bool {
        !self.scale_guard || (host.m() <= self.max_m && host.n() <= self.max_n)
    }
}

#[derive(Clone, Debug)]
pub struct ZarankiewiczResult {
    pub host: BipartiteHost,
    pub t: usize,
    pub value: usize,
    pub witness: BiGraph,
    pub nodes: u64,
}

pub fn zarankiewicz(host: BipartiteHost, t: usize) -> Result<ZarankiewiczResult> {
    zarankiewicz_with(host, t, &ZarankiewiczOptions::default())
}

pub fn zarankiewicz_with(
    host: BipartiteHost,
    t: usize,
    opts: &ZarankiewiczOptions,
) -> Result<ZarankiewiczResult> {
    if t < 2 {
        return Err(Error::Contract(format!("t must be at least 2, got {t}")));
    }
    if !opts.admits(host) {
        return Err(Error::ScaleGuard {
            what: "zarankiewicz",
            m: host.m(),
            n: host.n(),
            limit: format!("m <= {}, n <= {}", opts.max_m, opts.max_n),
        });
    }
    if opts.threads == 0 {
        return Err(Error::Contract("threads must be at least 1".into()));
    }
    if t > host.m() || t > host.n() {
        return Ok(ZarankiewiczResult {
            host,
            t,
            value: host.edge_capacity(),
            witness: BiGraph::full(host),
            nodes: 0,
        });
    }
    // Enumerate over the shorter side: fewer column patterns.
    if host.m() > host.n() {
        let mut r = solve(host.transposed()?, t, opts);
        r.witness = r.witness.transpose()?;
        r.host = host;
        return Ok(r);
    }
    Ok(solve(host, t, opts))
}

/// Admissible bound on the edges reachable from `partial` when
/// `columns_remaining` more columns are appended. Every column of `partial`
/// counts as placed.
pub fn ktt_free_upper_bound(
    host: BipartiteHost,
    t: usize,
    partial: &BiGraph,
    columns_remaining: usize,
) -> usize {
    assert_eq!(partial.m(), host.m(), "partial must have the host's rows");
    let m = host.m();
    if t < 2 || t > m {
        return partial.edge_count() + columns_remaining * m;
    }
    let tuples = TupleTable::new(m, t);
    let mut counts = vec![0usize; tuples.masks.len()];
    for col in partial.columns() {
        for (c, &tm) in counts.iter_mut().zip(&tuples.masks) {
            if tm & !col == 0 {
                *c += 1;
            }
        }
    }
    let cap = t - 1;
    let room = counts.iter().map(|&c| cap.saturating_sub(c)).sum();
    partial.edge_count() + greedy_fill(columns_remaining, room, m, |d| binom(d, t - 1))
}

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

struct TupleTable {
    masks: Vec<u64>,
}

impl TupleTable {
    fn new(m: usize, t: usize) -> Self {
        let masks = (0u64..1 << m)
            .filter(|x| x.count_ones() as usize == t)
            .collect();
        TupleTable { masks }
    }
}

struct Shared<'a> {
    m: usize,
    n: usize,
    t: usize,
    cap: u8,
    patterns: &'a PatternTable,
    /// `contained[k]` lists the tuple indices inside pattern `k`.
    contained: Vec<Vec<u16>>,
    symmetry: RowSymmetry,
    best: AtomicUsize,
    witness: Mutex<Option<Vec<usize>>>,
}

fn solve(host: BipartiteHost, t: usize, opts: &ZarankiewiczOptions) -> ZarankiewiczResult {
    let (m, n) = (host.m(), host.n());
    let patterns = PatternTable::new(m);
    let tuples = TupleTable::new(m, t);
    let contained = patterns
        .masks
        .iter()
        .map(|&p| {
            tuples
                .masks
                .iter()
                .enumerate()
                .filter(|(_, &tm)| tm & !p == 0)
                .map(|(k, _)| k as u16)
                .collect()
        })
        .collect();
    let shared = Shared {
        m,
        n,
        t,
        cap: (t - 1) as u8,
        patterns: &patterns,
        contained,
        symmetry: opts.row_symmetry,
        best: AtomicUsize::new(0),
        witness: Mutex::new(None),
    };
    let room = tuples.masks.len() * (t - 1);

    let nodes = if opts.threads <= 1 {
        let mut node = Node::new(&shared, tuples.masks.len(), room);
        node.dfs(0, 0);
        node.nodes
    } else {
        let roots: Vec<usize> = (0..patterns.len())
            .filter(|&k| root_allowed(&shared, k))
            .collect();
        let next = AtomicUsize::new(0);
        let total = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..opts.threads {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= roots.len() {
                        break;
                    }
                    let mut node = Node::new(&shared, tuples.masks.len(), room);
                    node.descend(0, roots[i]);
                    total.fetch_add(node.nodes as usize, Ordering::Relaxed);
                });
            }
        });
        total.into_inner() as u64
    };

    let cols = shared
        .witness
        .into_inner()
        .expect("no poisoned workers")
        .unwrap_or_else(|| vec![patterns.len() - 1; n]);
    let masks: Vec<u64> = cols.iter().map(|&k| patterns.masks[k]).collect();
    let witness = BiGraph::from_columns(host, &masks).expect("valid columns");
    ZarankiewiczResult {
        host,
        t,
        value: witness.edge_count(),
        witness,
        nodes,
    }
}

fn root_allowed(sh: &Shared<'_>, k: usize) -> bool {
    let mask = sh.patterns.masks[k];
    match sh.symmetry {
        RowSymmetry::None => true,
        RowSymmetry::RootRun => mask == crate::search::run_mask(mask.count_ones()),
        RowSymmetry::DoubleLex => RowTies::new(sh.m).admits(mask),
    }
}

struct Node<'a> {
    sh: &'a Shared<'a>,
    counts: Vec<u8>,
    room: usize,
    edges: usize,
    cols: Vec<usize>,
    ties: RowTies,
    pop_cap: u8,
    nodes: u64,
}

impl<'a> Node<'a> {
    fn new(sh: &'a Shared<'a>, tuples: usize, room: usize) -> Self {
        Node {
            sh,
            counts: vec![0; tuples],
            room,
            edges: 0,
            cols: Vec::with_capacity(sh.n),
            ties: RowTies::new(sh.m),
            pop_cap: sh.m as u8,
            nodes: 0,
        }
    }

    fn bound(&self, remaining: usize) -> usize {
        let t = self.sh.t;
        self.edges
            + greedy_fill(remaining, self.room, self.pop_cap as usize, |d| {
                binom(d, t - 1)
            })
    }

    fn fits(&self, k: usize) -> bool {
        self.sh.contained[k]
            .iter()
            .all(|&u| self.counts[u as usize] < self.sh.cap)
    }

    /// Places pattern `k` at `depth` (already checked) and explores below.
    /// Returns the best complete edge count found in the subtree.
    fn descend(&mut self, depth: usize, k: usize) -> Option<usize> {
        let sh = self.sh;
        if !self.fits(k) {
            return None;
        }
        let mask = sh.patterns.masks[k];
        let pop = sh.patterns.pops[k];
        for &u in &sh.contained[k] {
            self.counts[u as usize] += 1;
        }
        let used = sh.contained[k].len();
        self.room -= used;
        self.edges += pop as usize;
        let saved = (self.ties, self.pop_cap);
        self.ties = self.ties.advance(mask);
        if depth == 0 && sh.symmetry == RowSymmetry::RootRun {
            self.pop_cap = pop;
        }
        self.cols.push(k);
        self.nodes += 1;

        let found = self.dfs(depth + 1, k);

        self.cols.pop();
        (self.ties, self.pop_cap) = saved;
        self.edges -= pop as usize;
        self.room += used;
        for &u in &sh.contained[k] {
            self.counts[u as usize] -= 1;
        }
        found
    }

    fn dfs(&mut self, depth: usize, start: usize) -> Option<usize> {
        let sh = self.sh;
        if depth == sh.n {
            let mut w = sh.witness.lock().expect("no poisoned workers");
            if self.edges > sh.best.load(Ordering::Relaxed) || w.is_none() {
                sh.best.fetch_max(self.edges, Ordering::Relaxed);
                *w = Some(self.cols.clone());
            }
            return Some(self.edges);
        }
        let bound = self.bound(sh.n - depth);
        // every column can take one edge for free, so bound > 0 = initial best
        if bound <= sh.best.load(Ordering::Relaxed) {
            return None;
        }
        let mut best_here = None;
        for k in start..sh.patterns.len() {
            let mask = sh.patterns.masks[k];
            let ok = match sh.symmetry {
                RowSymmetry::None => true,
                RowSymmetry::RootRun => {
                    if depth == 0 {
                        mask == crate::search::run_mask(mask.count_ones())
                    } else {
                        sh.patterns.pops[k] <= self.pop_cap
                    }
                }
                RowSymmetry::DoubleLex => self.ties.admits(mask),
            };
            if !ok {
                continue;
            }
            if let Some(v) = self.descend(depth, k) {
                best_here = best_here.max(Some(v));
            }
            if bound <= sh.best.load(Ordering::Relaxed) {
                break;
            }
        }
        if let Some(v) = best_here {
            debug_assert!(v <= bound, "bound {bound} undercuts reachable {v}");
        }
        best_here
    }
}
