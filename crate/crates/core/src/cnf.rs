//! DIMACS CNF encoding of "K_{m,n} has a good coloring".
//!
//! Variable `i*n + j + 1` is true iff edge `(i, j)` is red. Every row pair
//! times column pair gets a clause forbidding four red edges, and every row
//! triple times column triple gets a clause forbidding nine blue edges.
//! With `lex_columns`, auxiliary variables numbered after `m*n` force the
//! columns into non-increasing order (row 0 most significant).

use std::fmt::Write as _;

use crate::bigraph::{BiGraph, BipartiteHost};
use crate::coloring::{check_coloring, verify_good_coloring, GoodColoring};
use crate::error::{Error, Result};
use crate::zarankiewicz::binom;

#[derive(Clone, Debug)]
pub struct CnfOptions {
    pub lex_columns: bool,
    /// Refuse instances with more clauses than this (`None` disables).
    pub max_clauses: Option<usize>,
}

impl Default for CnfOptions {
    fn default() -> Self {
        CnfOptions {
            lex_columns: false,
            max_clauses: Some(DEFAULT_MAX_CLAUSES),
        }
    }
}

pub const DEFAULT_MAX_CLAUSES: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub host: BipartiteHost,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub red_blockers: usize,
    pub blue_blockers: usize,
    pub lex_clauses: usize,
}

/// DIMACS variable of edge `(i, j)`.
#[inline]
pub fn edge_var(host: BipartiteHost, i: usize, j: usize) -> i32 {
    (i * host.n() + j + 1) as i32
}

/// `C(m,2)*C(n,2) + C(m,3)*C(n,3)`.
pub fn blocker_clause_count(host: BipartiteHost) -> usize {
    let (m, n) = (host.m(), host.n());
    binom(m, 2) * binom(n, 2) + binom(m, 3) * binom(n, 3)
}

pub fn encode_cnf(host: BipartiteHost) -> Result<CnfInstance> {
    encode_cnf_with(host, &CnfOptions::default())
}

pub fn encode_cnf_with(host: BipartiteHost, opts: &CnfOptions) -> Result<CnfInstance> {
    let (m, n) = (host.m(), host.n());
    let lex_per_pair = if m >= 1 { 3 * m - 2 } else { 0 };
    let expected = blocker_clause_count(host)
        + if opts.lex_columns {
            (n - 1) * lex_per_pair
        } else {
            0
        };
    if let Some(limit) = opts.max_clauses {
        if expected > limit {
            return Err(Error::ScaleGuard {
                what: "encode-cnf",
                m,
                n,
                limit: format!("{limit} clauses (instance needs {expected})"),
            });
        }
    }
    let v = |i: usize, j: usize| edge_var(host, i, j);
    let mut clauses = Vec::with_capacity(expected);

    for a in 0..m {
        for b in a + 1..m {
            for c in 0..n {
                for d in c + 1..n {
                    clauses.push(vec![-v(a, c), -v(a, d), -v(b, c), -v(b, d)]);
                }
            }
        }
    }
    let red_blockers = clauses.len();

    for rows in triples(m) {
        for cols in triples(n) {
            let mut cl = Vec::with_capacity(9);
            for &i in &rows {
                for &j in &cols {
                    cl.push(v(i, j));
                }
            }
            clauses.push(cl);
        }
    }
    let blue_blockers = clauses.len() - red_blockers;

    let mut num_vars = m * n;
    if opts.lex_columns {
        for j in 0..n.saturating_sub(1) {
            // p[k] <=> rows 0..k of columns j and j+1 agree; p[0] is true.
            let base = num_vars as i32;
            let p = |k: usize| base + k as i32;
            for k in 0..m {
                let (a, b) = (v(k, j), v(k, j + 1));
                let guard: Vec<i32> = if k == 0 { vec![] } else { vec![-p(k)] };
                clauses.push([guard.as_slice(), &[a, -b]].concat());
                if k + 1 < m {
                    clauses.push([guard.as_slice(), &[-a, -b, p(k + 1)]].concat());
                    clauses.push([guard.as_slice(), &[a, b, p(k + 1)]].concat());
                }
            }
            num_vars += m - 1;
        }
    }
    let lex_clauses = clauses.len() - red_blockers - blue_blockers;

    Ok(CnfInstance {
        host,
        num_vars,
        clauses,
        red_blockers,
        blue_blockers,
        lex_clauses,
    })
}

fn triples(k: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..k).flat_map(move |a| (a + 1..k).flat_map(move |b| (b + 1..k).map(move |c| [a, b, c])))
}

impl CnfInstance {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let (m, n) = (self.host.m(), self.host.n());
        writeln!(
            out,
            "c good coloring of K_{{{m},{n}}}: red K_{{2,2}}-free, blue K_{{3,3}}-free"
        )
        .unwrap();
        writeln!(out, "c host m={m} n={n}").unwrap();
        writeln!(
            out,
            "c var(i,j) = i*{n} + j + 1 (0-based row i, column j); true = red"
        )
        .unwrap();
        writeln!(
            out,
            "c clauses: {} red blockers, {} blue blockers, {} column-order",
            self.red_blockers, self.blue_blockers, self.lex_clauses
        )
        .unwrap();
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for cl in &self.clauses {
            for lit in cl {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    /// Literals for all variables describing `red` (auxiliaries included).
    pub fn assignment_for(&self, red: &BiGraph) -> Result<Vec<i32>> {
        if red.host() != self.host {
            return Err(Error::Contract(format!(
                "coloring lives on {}, instance on {}",
                red.host(),
                self.host
            )));
        }
        let (m, n) = (self.host.m(), self.host.n());
        let mut lits = Vec::with_capacity(self.num_vars);
        for i in 0..m {
            for j in 0..n {
                let v = edge_var(self.host, i, j);
                lits.push(if red.has_edge(i, j) { v } else { -v });
            }
        }
        if self.lex_clauses > 0 {
            let mut next = (m * n) as i32;
            for j in 0..n - 1 {
                let mut equal = true;
                for k in 0..m - 1 {
                    equal &= red.has_edge(k, j) == red.has_edge(k, j + 1);
                    next += 1;
                    lits.push(if equal { next } else { -next });
                }
            }
        }
        Ok(lits)
    }

    /// Index of the first clause the full assignment leaves unsatisfied.
    pub fn first_unsatisfied(&self, literals: &[i32]) -> Result<Option<usize>> {
        let values = self.values(literals)?;
        let holds = |lit: i32| values[lit.unsigned_abs() as usize] == (lit > 0);
        Ok(self
            .clauses
            .iter()
            .position(|cl| !cl.iter().any(|&l| holds(l))))
    }

    fn values(&self, literals: &[i32]) -> Result<Vec<bool>> {
        let mut seen = vec![None; self.num_vars + 1];
        for &lit in literals {
            let var = lit.unsigned_abs() as usize;
            if lit == 0 || var > self.num_vars {
                return Err(Error::Contract(format!(
                    "literal {lit} outside 1..={}",
                    self.num_vars
                )));
            }
            match seen[var] {
                Some(b) if b != (lit > 0) => {
                    return Err(Error::Contract(format!(
                        "variable {var} assigned both ways"
                    )))
                }
                _ => seen[var] = Some(lit > 0),
            }
        }
        seen.iter()
            .enumerate()
            .skip(1)
            .map(|(v, b)| {
                b.ok_or_else(|| {
                    Error::Contract(format!("incomplete assignment: variable {v} unset"))
                })
            })
            .collect::<Result<Vec<bool>>>()
            .map(|mut vals| {
                vals.insert(0, false);
                vals
            })
    }
}

/// Decodes a satisfying assignment and re-verifies it. An assignment that
/// satisfies every clause yet fails verification means the encoder is wrong
/// and is reported as [`Error::EncoderIntegrity`].
pub fn decode_assignment(instance: &CnfInstance, literals: &[i32]) -> Result<GoodColoring> {
    if let Some(index) = instance.first_unsatisfied(literals)? {
        return Err(Error::Unsatisfied {
            index,
            clause: instance.clauses[index].clone(),
        });
    }
    let values = instance.values(literals)?;
    let host = instance.host;
    let edges: Vec<(usize, usize)> = (0..host.m())
        .flat_map(|i| (0..host.n()).map(move |j| (i, j)))
        .filter(|&(i, j)| values[edge_var(host, i, j) as usize])
        .collect();
    let red = BiGraph::from_edge_list(host, &edges)?;
    if let Err(r) = check_coloring(&red) {
        return Err(Error::EncoderIntegrity(r));
    }
    verify_good_coloring(red)
}
