//! Knot tables: text files of `name<TAB>pdcode` lines.

use thiserror::Error;

use crate::diagram::{parse_pd, Diagram, DiagramError};

const BUNDLED: &str = include_str!("../data/knots.pdtab");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: expected name<TAB>pdcode")]
    MissingTab { line: usize },
    #[error("line {line}: {source}")]
    Diagram { line: usize, source: DiagramError },
    #[error("duplicate entry {0}")]
    Duplicate(String),
}

#[derive(Debug, Clone)]
pub struct KnotTable {
    rows: Vec<(String, Diagram)>,
}

impl KnotTable {
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut rows: Vec<(String, Diagram)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let (name, code) = raw
                .split_once('\t')
                .ok_or(TableError::MissingTab { line })?;
            let name = name.trim().to_string();
            let d = parse_pd(code).map_err(|source| TableError::Diagram { line, source })?;
            if rows.iter().any(|(n, _)| *n == name) {
                return Err(TableError::Duplicate(name));
            }
            rows.push((name, d));
        }
        Ok(KnotTable { rows })
    }

    /// The table shipped with the library: 0_1 and the prime knots 3_1 to
    /// 6_3, 7_1 and 8_3 in Rolfsen numbering.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled table parses")
    }

    pub fn bundled_text() -> &'static str {
        BUNDLED
    }

    pub fn get(&self, name: &str) -> Option<&Diagram> {
        self.rows.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.rows.iter().map(|(n, _)| n.as_str())
    }

    pub fn entries(&self) -> &[(String, Diagram)] {
        &self.rows
    }
}

/// Looks up a knot in the bundled table, panicking on unknown names.
pub fn knot(name: &str) -> Diagram {
    KnotTable::bundled()
        .get(name)
        .unwrap_or_else(|| panic!("{name} is not in the bundled table"))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_rows() {
        let t = KnotTable::bundled();
        for name in ["0_1", "3_1", "4_1", "6_1", "8_3"] {
            let d = t.get(name).unwrap();
            assert!(d.is_knot(), "{name}");
        }
        assert_eq!(t.get("8_3").unwrap().crossing_count(), 8);
        assert!(t.get("9_1").is_none());
    }

    #[test]
    fn errors() {
        assert_eq!(
            KnotTable::parse("3_1 X[1,4,2,5]").unwrap_err(),
            TableError::MissingTab { line: 1 }
        );
        assert!(matches!(
            KnotTable::parse("# c\n\nk\tX[1,2,3,4]").unwrap_err(),
            TableError::Diagram { line: 3, .. }
        ));
        assert_eq!(
            KnotTable::parse("a\t\na\t").unwrap_err(),
            TableError::Duplicate("a".into())
        );
    }
}
