//! Verified good colorings: red avoids `K_{2,2}`, blue avoids `K_{3,3}`.

use std::fmt;

use crate::bigraph::BiGraph;
use crate::detect::find_kst;
use crate::error::{Error, Result};

/// Why a red graph is not a good coloring. Each variant carries the
/// offending rows and columns (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    RedK22 { rows: [usize; 2], cols: [usize; 2] },
    BlueK33 { rows: [usize; 3], cols: [usize; 3] },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::RedK22 { rows, cols } => write!(
                f,
                "red K_{{2,2}} on rows {} columns {}",
                labels('x', rows),
                labels('y', cols)
            ),
            Rejection::BlueK33 { rows, cols } => write!(
                f,
                "blue K_{{3,3}} on rows {} columns {}",
                labels('x', rows),
                labels('y', cols)
            ),
        }
    }
}

fn labels(prefix: char, idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| format!("{prefix}{}", i + 1)).collect();
    format!("{{{}}}", parts.join(","))
}

/// A red/blue coloring of `K_{m,n}` known to avoid a red `K_{2,2}` and a
/// blue `K_{3,3}`. Only [`verify_good_coloring`] constructs one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodColoring {
    red: BiGraph,
}

impl GoodColoring {
    pub const AVOIDED_RED: (usize, usize) = (2, 2);
    pub const AVOIDED_BLUE: (usize, usize) = (3, 3);

    pub fn red(&self) -> &BiGraph {
        &self.red
    }

    pub fn blue(&self) -> BiGraph {
        self.red.complement()
    }

    pub fn avoided_red(&self) -> (usize, usize) {
        Self::AVOIDED_RED
    }

    pub fn avoided_blue(&self) -> (usize, usize) {
        Self::AVOIDED_BLUE
    }

    pub fn into_red(self) -> BiGraph {
        self.red
    }
}

/// Checks both halves of the coloring and returns the first certificate of
/// failure, red first.
pub fn check_coloring(red: &BiGraph) -> std::result::Result<(), Rejection> {
    if let Some((r, c)) = find_kst(red, 2, 2) {
        return Err(Rejection::RedK22 {
            rows: [r[0], r[1]],
            cols: [c[0], c[1]],
        });
    }
    if let Some((r, c)) = find_kst(&red.complement(), 3, 3) {
        return Err(Rejection::BlueK33 {
            rows: [r[0], r[1], r[2]],
            cols: [c[0], c[1], c[2]],
        });
    }
    Ok(())
}

/// The sole constructor of [`GoodColoring`].
pub fn verify_good_coloring(red: BiGraph) -> Result<GoodColoring> {
    check_coloring(&red).map_err(Error::Rejected)?;
    Ok(GoodColoring { red })
}

/// Deletes every single row and every single column in turn and re-verifies
/// each restriction. Always true for a genuine good coloring; kept as an
/// executable check of the restriction argument.
pub fn monotone_restriction_check(gc: &GoodColoring) -> bool {
    let red = gc.red();
    let rows = (0..red.m())
        .filter(|_| red.m() >= 2)
        .map(|i| red.delete_row(i));
    let cols = (0..red.n())
        .filter(|_| red.n() >= 2)
        .map(|j| red.delete_col(j));
    rows.chain(cols)
        .all(|sub| matches!(sub, Ok(g) if check_coloring(&g).is_ok()))
}
