//! JSON witness files.
//!
//! ```json
//! { "m": 2, "n": 3, "red_rows": ["100", "011"], "avoided_red": [2, 2], "avoided_blue": [3, 3] }
//! ```
//!
//! `red_rows[i]` has exactly `n` characters; character `j` is `'1'` iff the
//! edge `x_{i+1} y_{j+1}` is red.

use serde::{Deserialize, Serialize};

use crate::bigraph::{BiGraph, BipartiteHost};
use crate::coloring::GoodColoring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub m: usize,
    pub n: usize,
    pub red_rows: Vec<String>,
    pub avoided_red: [usize; 2],
    pub avoided_blue: [usize; 2],
}

impl WitnessFile {
    /// Dumps any red graph, verified or not.
    pub fn from_graph(red: &BiGraph) -> Self {
        let (rs, rt) = GoodColoring::AVOIDED_RED;
        let (bs, bt) = GoodColoring::AVOIDED_BLUE;
        WitnessFile {
            m: red.m(),
            n: red.n(),
            red_rows: red.row_strings(),
            avoided_red: [rs, rt],
            avoided_blue: [bs, bt],
        }
    }

    pub fn from_coloring(gc: &GoodColoring) -> Self {
        Self::from_graph(gc.red())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let w: WitnessFile = serde_json::from_str(text)?;
        w.to_graph()?;
        Ok(w)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("witness serializes");
        s.push('\n');
        s
    }

    /// Decodes `red_rows`, rejecting wrong lengths, stray characters and
    /// forbidden pairs other than `(K_{2,2}, K_{3,3})`.
    pub fn to_graph(&self) -> Result<BiGraph> {
        let host = BipartiteHost::new(self.m, self.n)?;
        let (rs, rt) = GoodColoring::AVOIDED_RED;
        let (bs, bt) = GoodColoring::AVOIDED_BLUE;
        if self.avoided_red != [rs, rt] || self.avoided_blue != [bs, bt] {
            return Err(Error::WitnessFormat(format!(
                "only avoided_red [2,2] / avoided_blue [3,3] are supported, got {:?} / {:?}",
                self.avoided_red, self.avoided_blue
            )));
        }
        if self.red_rows.len() != self.m {
            return Err(Error::WitnessFormat(format!(
                "expected {} red_rows, got {}",
                self.m,
                self.red_rows.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.m);
        for (i, s) in self.red_rows.iter().enumerate() {
            if s.len() != self.n {
                return Err(Error::WitnessFormat(format!(
                    "red_rows[{i}] has {} characters, expected {}",
                    s.chars().count(),
                    self.n
                )));
            }
            let mut word = 0u64;
            for (j, ch) in s.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => word |= 1 << j,
                    other => {
                        return Err(Error::WitnessFormat(format!(
                            "red_rows[{i}][{j}] is {other:?}, expected '0' or '1'"
                        )))
                    }
                }
            }
            rows.push(word);
        }
        BiGraph::from_rows(host, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_good_coloring;
    use crate::fixtures::fixture;

    #[test]
    fn figure1_dump_layout() {
        let gc = verify_good_coloring(fixture("figure1").unwrap().graph()).unwrap();
        let w = WitnessFile::from_coloring(&gc);
        assert_eq!(w.red_rows[0], "11111000000000");
        assert_eq!(w.red_rows[3], "00100010010011");
        let json = w.to_json();
        assert!(json.starts_with("{\n  \"m\": 4,\n  \"n\": 14,\n  \"red_rows\": ["));
        let back = WitnessFile::parse(&json).unwrap();
        assert_eq!(back.to_graph().unwrap(), *gc.red());
    }

    #[test]
    fn rejects_bad_rows() {
        let base = r#"{"m":2,"n":3,"red_rows":ROWS,"avoided_red":[2,2],"avoided_blue":[3,3]}"#;
        let ok = base.replace("ROWS", r#"["100","011"]"#);
        assert!(WitnessFile::parse(&ok).is_ok());
        for rows in [
            r#"["100"]"#,
            r#"["100","01"]"#,
            r#"["100","0110"]"#,
            r#"["100","0x1"]"#,
        ] {
            let text = base.replace("ROWS", rows);
            assert!(
                matches!(WitnessFile::parse(&text), Err(Error::WitnessFormat(_))),
                "{rows}"
            );
        }
    }

    #[test]
    fn rejects_other_pairs_and_unknown_keys() {
        let text = r#"{"m":1,"n":1,"red_rows":["1"],"avoided_red":[2,3],"avoided_blue":[3,3]}"#;
        assert!(matches!(
            WitnessFile::parse(text),
            Err(Error::WitnessFormat(_))
        ));
        let text =
            r#"{"m":1,"n":1,"red_rows":["1"],"avoided_red":[2,2],"avoided_blue":[3,3],"x":1}"#;
        assert!(matches!(WitnessFile::parse(text), Err(Error::Json(_))));
    }
}
