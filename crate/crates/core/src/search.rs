//! Existence search for good `(K_{2,2}, K_{3,3})` colorings of `K_{m,n}` and
//! the `BR_m` scan built on top of it.
//!
//! Red graphs are enumerated column by column. Each column is a row pattern
//! read as a code with row 0 most significant, and codes are non-increasing
//! from left to right, so every red graph is visited once per column
//! multiset. Along the way the search keeps:
//!
//! * the set of row pairs already covered by a red column (a second cover is
//!   a red `K_{2,2}`),
//! * a [`TripleMissTable`] (a count of 3 is a blue `K_{3,3}`; counts never
//!   decrease, so the branch is dead),
//! * red row degrees, capped at 5 when `m >= 4` and `n >= 6`,
//! * optionally, a lower bound `m*n - z((m,n), K_{3,3})` on the final red
//!   edge count.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::bigraph::{code_to_mask, BiGraph, BipartiteHost};
use crate::coloring::{check_coloring, verify_good_coloring, GoodColoring};
use crate::detect::{degree_rule_in_scope, TripleMissTable, LEMMA_ROW_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::zarankiewicz::{zarankiewicz_with, ZarankiewiczOptions};

/// How row permutations are factored out of the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSymmetry {
    /// Rows are left alone; only column order is normalised.
    None,
    /// The first column is a top-aligned run `1^k 0^(m-k)` of maximum
    /// column degree `k`; every later column has degree at most `k`.
    RootRun,
    /// Rows are also kept in non-increasing lexicographic order (read with
    /// column 0 most significant). Any biadjacency matrix can be brought to
    /// this form: its row-major-largest arrangement has sorted rows and
    /// sorted columns.
    DoubleLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub use_lemma1_prune: bool,
    pub use_edge_window_prune: bool,
    /// Precomputed `z((m,n), K_{3,3})`; computed on demand when absent.
    pub zarankiewicz_blue_bound: Option<usize>,
    pub parallel_width: usize,
    pub find_all: bool,
    pub row_symmetry: RowSymmetry,
    /// Refuse hosts with more than this many rows (`None` disables).
    pub max_rows: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            use_lemma1_prune: true,
            use_edge_window_prune: true,
            zarankiewicz_blue_bound: None,
            parallel_width: 1,
            find_all: false,
            row_symmetry: RowSymmetry::RootRun,
            max_rows: Some(DEFAULT_MAX_SEARCH_ROWS),
        }
    }
}

/// Default row guard for the existence search (2^m column patterns).
pub const DEFAULT_MAX_SEARCH_ROWS: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PruneCounts {
    pub red_k22: u64,
    pub blue_k33: u64,
    pub lemma1: u64,
    pub edge_window: u64,
    pub symmetry: u64,
}

impl PruneCounts {
    fn add(&mut self, o: &PruneCounts) {
        self.red_k22 += o.red_k22;
        self.blue_k33 += o.blue_k33;
        self.lemma1 += o.lemma1;
        self.edge_window += o.edge_window;
        self.symmetry += o.symmetry;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: PruneCounts,
    /// Column-normal good colorings seen (all of them under `find_all`).
    pub solutions: u64,
    /// The `z((m,n), K_{3,3})` value used by the edge window, if any.
    pub blue_bound: Option<usize>,
    pub elapsed_ms: u64,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.prunes.add(&o.prunes);
        self.solutions += o.solutions;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Witness(GoodColoring),
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&GoodColoring> {
        match &self.verdict {
            Verdict::Witness(gc) => Some(gc),
            Verdict::Exhausted => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.verdict == Verdict::Exhausted
    }
}

/// Decides whether `K_{m,n}` has a good coloring.
pub fn good_coloring_exists(host: BipartiteHost, config: &SearchConfig) -> Result<SearchOutcome> {
    let run = run_search(host, config, false)?;
    let verdict = match run.witness {
        Some(red) => {
            Verdict::Witness(verify_good_coloring(red).expect("search witnesses pass verification"))
        }
        None => Verdict::Exhausted,
    };
    Ok(SearchOutcome {
        verdict,
        stats: run.stats,
    })
}

/// Lists every column-normal good red graph the enumeration visits (under
/// the configured row symmetry). Intended for small hosts.
pub fn enumerate_good_colorings(
    host: BipartiteHost,
    config: &SearchConfig,
) -> Result<(Vec<BiGraph>, SearchStats)> {
    let cfg = SearchConfig {
        find_all: true,
        ..config.clone()
    };
    let run = run_search(host, &cfg, true)?;
    Ok((run.solutions, run.stats))
}

struct RunResult {
    witness: Option<BiGraph>,
    solutions: Vec<BiGraph>,
    stats: SearchStats,
}

fn run_search(host: BipartiteHost, config: &SearchConfig, collect: bool) -> Result<RunResult> {
    let started = Instant::now();
    if let Some(limit) = config.max_rows {
        if host.m() > limit {
            return Err(Error::ScaleGuard {
                what: "search",
                m: host.m(),
                n: host.n(),
                limit: format!("m <= {limit}"),
            });
        }
    }
    if config.parallel_width == 0 {
        return Err(Error::Contract("parallel_width must be at least 1".into()));
    }

    // With fewer than 3 rows blue cannot hold a K_{3,3}: the empty red graph
    // is a witness and nothing needs enumerating.
    if host.m() <= 2 && !config.find_all {
        let mut stats = SearchStats {
            solutions: 1,
            ..SearchStats::default()
        };
        stats.elapsed_ms = started.elapsed().as_millis() as u64;
        return Ok(RunResult {
            witness: Some(BiGraph::empty(host)),
            solutions: Vec::new(),
            stats,
        });
    }

    let blue_bound = if config.use_edge_window_prune {
        match config.zarankiewicz_blue_bound {
            Some(z) => Some(z),
            None => blue_bound_for(host, config.parallel_width)?,
        }
    } else {
        None
    };
    let min_red_edges = blue_bound.map(|z| host.edge_capacity().saturating_sub(z));

    let table = PatternTable::new(host.m());
    let ctx = Ctx {
        m: host.m(),
        n: host.n(),
        table: &table,
        lemma_cap: (config.use_lemma1_prune && degree_rule_in_scope(host.m(), host.n()))
            .then_some(LEMMA_ROW_DEGREE_CAP as u8),
        min_red_edges: min_red_edges.filter(|&e| e > 0),
        symmetry: config.row_symmetry,
        find_all: config.find_all,
        collect,
    };

    let cancel = AtomicBool::new(false);
    let mut stats = SearchStats {
        blue_bound,
        ..SearchStats::default()
    };
    let mut witness = None;
    let mut solutions = Vec::new();

    let split = 2.min(host.n());
    if config.parallel_width == 1 || split == host.n() {
        let mut w = Worker::new(&ctx, &cancel);
        w.dfs(0, 0);
        stats.absorb(&w.stats);
        witness = w.witness;
        solutions = w.solutions;
    } else {
        let mut splitter = Worker::new(&ctx, &cancel);
        splitter.split_depth = Some(split);
        splitter.dfs(0, 0);
        stats.absorb(&splitter.stats);
        let tasks = std::mem::take(&mut splitter.tasks);
        let next = AtomicUsize::new(0);
        let results: Mutex<Vec<(usize, Worker)>> = Mutex::new(Vec::new());
        std::thread::scope(|s| {
            for _ in 0..config.parallel_width.min(tasks.len().max(1)) {
                s.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let k = next.fetch_add(1, Ordering::Relaxed);
                        if k >= tasks.len() || cancel.load(Ordering::Relaxed) {
                            break;
                        }
                        let mut w = Worker::new(&ctx, &cancel);
                        for &idx in &tasks[k] {
                            w.apply(idx);
                        }
                        w.dfs(split, *tasks[k].last().expect("non-empty prefix"));
                        local.push((k, w));
                    }
                    results.lock().expect("no poisoned workers").extend(local);
                });
            }
        });
        let mut results = results.into_inner().expect("no poisoned workers");
        results.sort_by_key(|(k, _)| *k);
        for (_, w) in results {
            stats.absorb(&w.stats);
            if witness.is_none() {
                witness = w.witness;
            }
            solutions.extend(w.solutions);
        }
    }

    if config.find_all && witness.is_none() {
        witness = solutions.first().cloned();
    }
    stats.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(RunResult {
        witness,
        solutions,
        stats,
    })
}

/// `z((m,n), K_{3,3})` when the Zarankiewicz module's scale guard admits the
/// host, otherwise `None` (the edge window is then skipped).
fn blue_bound_for(host: BipartiteHost, threads: usize) -> Result<Option<usize>> {
    if host.m() < 3 || host.n() < 3 {
        return Ok(Some(host.edge_capacity()));
    }
    let opts = ZarankiewiczOptions {
        threads,
        ..ZarankiewiczOptions::default()
    };
    if !opts.admits(host) {
        return Ok(None);
    }
    Ok(Some(zarankiewicz_with(host, 3, &opts)?.value))
}

/// Every column pattern over `m` rows, indexed so that index `k` has code
/// `2^m - 1 - k` (descending code order).
pub(crate) struct PatternTable {
    pub(crate) masks: Vec<u64>,
    pub(crate) pops: Vec<u8>,
    pairs: Vec<u128>,
}

impl PatternTable {
    pub(crate) fn new(m: usize) -> Self {
        let count = 1usize << m;
        let full = (count - 1) as u32;
        let mut masks = Vec::with_capacity(count);
        let mut pops = Vec::with_capacity(count);
        let mut pairs = Vec::with_capacity(count);
        for k in 0..count {
            let mask = code_to_mask(full - k as u32, m);
            let mut pm = 0u128;
            let mut bit = 0;
            for a in 0..m {
                for b in a + 1..m {
                    if mask >> a & 1 == 1 && mask >> b & 1 == 1 {
                        pm |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            masks.push(mask);
            pops.push(mask.count_ones() as u8);
            pairs.push(pm);
        }
        PatternTable { masks, pops, pairs }
    }

    pub(crate) fn len(&self) -> usize {
        self.masks.len()
    }
}

/// Tracks which adjacent row pairs `(i, i+1)` still have equal prefixes, to
/// keep rows in non-increasing lexicographic order.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RowTies(u32);

impl RowTies {
    pub(crate) fn new(m: usize) -> Self {
        RowTies(if m >= 2 { (1u32 << (m - 1)) - 1 } else { 0 })
    }

    /// A tied pair may not get 0 in row `i` and 1 in row `i+1`.
    #[inline]
    pub(crate) fn admits(self, mask: u64) -> bool {
        let r = mask as u32;
        !r & (r >> 1) & self.0 == 0
    }

    #[inline]
    pub(crate) fn advance(self, mask: u64) -> Self {
        let r = mask as u32;
        RowTies(self.0 & !(r ^ (r >> 1)))
    }
}

/// Top-aligned run of `k` rows as a row-mask.
#[inline]
pub(crate) fn run_mask(k: u32) -> u64 {
    (1u64 << k) - 1
}

struct Ctx<'a> {
    m: usize,
    n: usize,
    table: &'a PatternTable,
    lemma_cap: Option<u8>,
    min_red_edges: Option<usize>,
    symmetry: RowSymmetry,
    find_all: bool,
    collect: bool,
}

struct Worker<'a> {
    ctx: &'a Ctx<'a>,
    cancel: &'a AtomicBool,
    cols: Vec<usize>,
    pairs: u128,
    triples: Option<TripleMissTable>,
    row_deg: [u8; 16],
    saturated: u64,
    edges: usize,
    ties: RowTies,
    pop_cap: u8,
    stats: SearchStats,
    witness: Option<BiGraph>,
    solutions: Vec<BiGraph>,
    split_depth: Option<usize>,
    tasks: Vec<Vec<usize>>,
}

struct Undo {
    pairs: u128,
    saturated: u64,
    ties: RowTies,
    pop_cap: u8,
}

impl<'a> Worker<'a> {
    fn new(ctx: &'a Ctx<'a>, cancel: &'a AtomicBool) -> Self {
        Worker {
            ctx,
            cancel,
            cols: Vec::with_capacity(ctx.n),
            pairs: 0,
            triples: (ctx.m >= 3).then(|| TripleMissTable::new(ctx.m)),
            row_deg: [0; 16],
            saturated: 0,
            edges: 0,
            ties: RowTies::new(ctx.m),
            pop_cap: ctx.m as u8,
            stats: SearchStats::default(),
            witness: None,
            solutions: Vec::new(),
            split_depth: None,
            tasks: Vec::new(),
        }
    }

    /// Pushes pattern `idx` unconditionally; used to replay split prefixes.
    fn apply(&mut self, idx: usize) -> Undo {
        let t = self.ctx.table;
        let mask = t.masks[idx];
        let undo = Undo {
            pairs: self.pairs,
            saturated: self.saturated,
            ties: self.ties,
            pop_cap: self.pop_cap,
        };
        if self.cols.is_empty() && self.ctx.symmetry == RowSymmetry::RootRun {
            self.pop_cap = t.pops[idx];
        }
        if let Some(tr) = self.triples.as_mut() {
            tr.push_column(mask);
        }
        self.pairs |= t.pairs[idx];
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.row_deg[i] += 1;
            if let Some(cap) = self.ctx.lemma_cap {
                if self.row_deg[i] >= cap {
                    self.saturated |= 1 << i;
                }
            }
        }
        self.edges += t.pops[idx] as usize;
        self.ties = self.ties.advance(mask);
        self.cols.push(idx);
        undo
    }

    fn revert(&mut self, idx: usize, undo: Undo) {
        let t = self.ctx.table;
        let mask = t.masks[idx];
        self.cols.pop();
        if let Some(tr) = self.triples.as_mut() {
            tr.pop_column(mask);
        }
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.row_deg[i] -= 1;
        }
        self.edges -= t.pops[idx] as usize;
        self.pairs = undo.pairs;
        self.saturated = undo.saturated;
        self.ties = undo.ties;
        self.pop_cap = undo.pop_cap;
    }

    /// Upper bound on red edges the remaining `r` columns can add.
    fn remaining_red_bound(&self, r: usize) -> usize {
        let m = self.ctx.m;
        let free_pairs = m * (m - 1) / 2 - self.pairs.count_ones() as usize;
        let by_pairs = greedy_fill(r, free_pairs, self.pop_cap as usize, |d| d);
        match self.ctx.lemma_cap {
            Some(cap) => {
                let row_room: usize = (0..m)
                    .map(|i| (cap - self.row_deg[i].min(cap)) as usize)
                    .sum();
                by_pairs.min(row_room)
            }
            None => by_pairs,
        }
    }

    /// Returns `true` to stop the whole search.
    fn dfs(&mut self, depth: usize, start: usize) -> bool {
        let ctx = self.ctx;
        if depth == ctx.n {
            return self.leaf();
        }
        if self.split_depth == Some(depth) {
            self.tasks.push(self.cols.clone());
            return false;
        }
        if self.cancel.load(Ordering::Relaxed) {
            return true;
        }
        let t = ctx.table;
        for idx in start..t.len() {
            let mask = t.masks[idx];
            let pop = t.pops[idx];
            match ctx.symmetry {
                RowSymmetry::RootRun => {
                    if (depth == 0 && mask != run_mask(pop as u32)) || pop > self.pop_cap {
                        self.stats.prunes.symmetry += 1;
                        continue;
                    }
                }
                RowSymmetry::DoubleLex => {
                    if !self.ties.admits(mask) {
                        self.stats.prunes.symmetry += 1;
                        continue;
                    }
                }
                RowSymmetry::None => {}
            }
            if t.pairs[idx] & self.pairs != 0 {
                self.stats.prunes.red_k22 += 1;
                continue;
            }
            if mask & self.saturated != 0 {
                self.stats.prunes.lemma1 += 1;
                continue;
            }
            if let Some(tr) = self.triples.as_mut() {
                if tr.push_column(mask) {
                    tr.pop_column(mask);
                    self.stats.prunes.blue_k33 += 1;
                    continue;
                }
                tr.pop_column(mask);
            }
            let undo = self.apply(idx);
            if let Some(min) = ctx.min_red_edges {
                if self.edges + self.remaining_red_bound(ctx.n - depth - 1) < min {
                    self.revert(idx, undo);
                    self.stats.prunes.edge_window += 1;
                    continue;
                }
            }
            self.stats.nodes += 1;
            let stop = self.dfs(depth + 1, idx);
            self.revert(idx, undo);
            if stop {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self) -> bool {
        let ctx = self.ctx;
        let cols: Vec<u64> = self.cols.iter().map(|&k| ctx.table.masks[k]).collect();
        let host = BipartiteHost::new(ctx.m, ctx.n).expect("valid host");
        let red = BiGraph::from_columns(host, &cols).expect("valid columns");
        if let Err(r) = check_coloring(&red) {
            panic!("search reached a leaf that is not a good coloring ({r}):\n{red:?}");
        }
        self.stats.solutions += 1;
        if ctx.collect {
            self.solutions.push(red.clone());
        }
        if ctx.find_all {
            return false;
        }
        self.witness = Some(red);
        self.cancel.store(true, Ordering::Relaxed);
        true
    }
}

/// Largest total degree of `r` columns, each of degree at most `dmax`, when
/// raising one column from degree `d` to `d + 1` costs `cost(d)` units of a
/// shared budget and `cost` is non-decreasing. Filling level by level is
/// optimal for such convex costs.
pub(crate) fn greedy_fill(
    r: usize,
    mut budget: usize,
    dmax: usize,
    cost: impl Fn(usize) -> usize,
) -> usize {
    let mut total = 0;
    for d in 0..dmax {
        let c = cost(d);
        let k = budget.checked_div(c).map_or(r, |q| r.min(q));
        total += k;
        budget -= k * c;
        if k < r {
            break;
        }
    }
    total
}

/// Red graph certifying that `BR_m` does not exist for `m <= 3`.
///
/// For `m <= 2` this is the empty graph; for `m = 3`, column `j` gets the
/// single red edge in row `j mod 3`.
pub fn small_m_certificate(m: usize, n: usize) -> Result<GoodColoring> {
    if m == 0 || m > 3 {
        return Err(Error::Contract(format!(
            "small_m_certificate needs 1 <= m <= 3, got {m}"
        )));
    }
    let host = BipartiteHost::new(m, n)?;
    let edges: Vec<(usize, usize)> = if m == 3 {
        (0..n).map(|j| (j % 3, j)).collect()
    } else {
        Vec::new()
    };
    verify_good_coloring(BiGraph::from_edge_list(host, &edges)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BrmVerdict {
    Value(usize),
    DoesNotExist,
    Unknown { n_max: usize },
}

/// One `n` visited by the `BR_m` scan.
#[derive(Clone, Debug)]
pub struct BrmStep {
    pub n: usize,
    pub outcome: SearchOutcome,
}

#[derive(Clone, Debug)]
pub struct BrmResult {
    pub m: usize,
    pub verdict: BrmVerdict,
    pub steps: Vec<BrmStep>,
    /// For `DoesNotExist`: the certificate checked at `n_max`.
    pub certificate: Option<GoodColoring>,
}

impl BrmResult {
    /// The witness at `value - 1` when a value was established.
    pub fn witness_below(&self) -> Option<&GoodColoring> {
        match self.verdict {
            BrmVerdict::Value(v) => self
                .steps
                .iter()
                .find(|s| s.n + 1 == v)
                .and_then(|s| s.outcome.witness()),
            _ => None,
        }
    }
}

/// Computes `BR_m(K_{2,2}, K_{3,3})` by scanning `n = 1, 2, ...`.
pub fn brm(m: usize, n_max: usize, config: &SearchConfig) -> Result<BrmResult> {
    brm_scan(m, n_max, 1, config, |_| {})
}

/// [`brm`] with an explicit starting `n` (a known lower bound; every
/// smaller `n` is assumed to have a witness) and a per-step callback.
pub fn brm_scan(
    m: usize,
    n_max: usize,
    start_n: usize,
    config: &SearchConfig,
    mut on_step: impl FnMut(&BrmStep),
) -> Result<BrmResult> {
    if m == 0 {
        return Err(Error::Contract("brm needs m >= 1".into()));
    }
    BipartiteHost::new(m, n_max)?;
    if m <= 3 {
        let cert = small_m_certificate(m, n_max)?;
        return Ok(BrmResult {
            m,
            verdict: BrmVerdict::DoesNotExist,
            steps: Vec::new(),
            certificate: Some(cert),
        });
    }
    let cfg = SearchConfig {
        find_all: false,
        zarankiewicz_blue_bound: None,
        ..config.clone()
    };
    let mut steps = Vec::new();
    for n in start_n.max(1)..=n_max {
        let host = BipartiteHost::new(m, n)?;
        let outcome = good_coloring_exists(host, &cfg)?;
        let exhausted = outcome.is_exhausted();
        let step = BrmStep { n, outcome };
        on_step(&step);
        steps.push(step);
        if exhausted {
            return Ok(BrmResult {
                m,
                verdict: BrmVerdict::Value(n),
                steps,
                certificate: None,
            });
        }
    }
    Ok(BrmResult {
        m,
        verdict: BrmVerdict::Unknown { n_max },
        steps,
        certificate: None,
    })
}
