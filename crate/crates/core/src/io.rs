//! Text and structured (JSON) formats for Cayley tables, plus the
//! permutation-generator input format.
//!
//! Text Cayley format (ASCII, LF line endings, no trailing spaces):
//!
//! ```text
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! # names: e, g, g^2
//! ```
//!
//! The first line is `n`; row `a`, column `b` holds `a ∘ b`; the names line
//! is optional. The structured form is `{"n":3,"table":[[..]..],"names":[..]}`.
//! A gyrogroup is stored as its `⊙` table alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{OpTable, Permutation};

const NAMES_PREFIX: &str = "# names:";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    n: usize,
    table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    names: Option<Vec<String>>,
}

/// Canonical text form of `t`.
pub fn serialize_table(t: &OpTable) -> String {
    let mut out = format!("{}\n", t.size());
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if let Some(names) = t.names() {
        out.push_str(NAMES_PREFIX);
        out.push(' ');
        out.push_str(&names.join(", "));
        out.push('\n');
    }
    out
}

/// Single-line JSON form of `t`, newline-terminated.
pub fn serialize_table_structured(t: &OpTable) -> String {
    let doc = TableDoc {
        n: t.size(),
        table: t.rows().map(<[usize]>::to_vec).collect(),
        names: t.names().map(<[String]>::to_vec),
    };
    let mut s = serde_json::to_string(&doc).expect("table documents always serialize");
    s.push('\n');
    s
}

pub fn serialize_table_as(t: &OpTable, format: TableFormat) -> String {
    match format {
        TableFormat::Text => serialize_table(t),
        TableFormat::Structured => serialize_table_structured(t),
    }
}

/// Parses either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn parse_table_any(text: &str) -> Result<OpTable> {
    if text.trim_start().starts_with('{') {
        parse_table_structured(text)
    } else {
        parse_table(text)
    }
}

pub fn parse_table_structured(text: &str) -> Result<OpTable> {
    let doc: TableDoc = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    if doc.table.len() != doc.n {
        return Err(Error::DimensionMismatch { line: 1, expected: doc.n, found: doc.table.len() });
    }
    if let Some(row) = doc.table.iter().find(|row| row.len() != doc.n) {
        return Err(Error::DimensionMismatch { line: 1, expected: doc.n, found: row.len() });
    }
    let t = OpTable::from_rows(doc.table)?;
    match doc.names {
        Some(names) => t.with_names(names),
        None => Ok(t),
    }
}

/// Lines with their 1-based numbers, skipping blank ones.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skip = rest.len() - rest.trim_start().len();
        rest = &rest[skip..];
        offset += skip;
        if rest.is_empty() {
            return None;
        }
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let tok = &rest[..len];
        let col = offset + 1;
        rest = &rest[len..];
        offset += len;
        Some((col, tok))
    })
}

fn parse_index(line: usize, col: usize, tok: &str, bound: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::parse(line, col, format!("expected a non-negative integer, found {tok:?}")))?;
    if v >= bound {
        return Err(Error::parse(line, col, format!("entry {v} out of range for n = {bound}")));
    }
    Ok(v)
}

/// Parses the text Cayley format. Extra spaces, blank lines and CRLF line
/// endings are tolerated.
pub fn parse_table(text: &str) -> Result<OpTable> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let header: Vec<(usize, &str)> = tokens(first).collect();
    let n = match header.as_slice() {
        [(col, tok)] => tok
            .parse::<usize>()
            .map_err(|_| Error::parse(first_no, *col, format!("expected the table size, found {tok:?}")))?,
        _ => return Err(Error::parse(first_no, 1, "first line must hold only the table size")),
    };
    if n == 0 {
        return Err(Error::parse(first_no, 1, "table size must be at least 1"));
    }
    let mut cells = Vec::with_capacity(n * n);
    let mut last_line = first_no;
    for row in 0..n {
        let Some((no, line)) = lines.next() else {
            return Err(Error::parse(last_line + 1, 1, format!("expected {n} rows, found {row}")));
        };
        if line.trim_start().starts_with('#') {
            return Err(Error::parse(no, 1, format!("expected {n} rows, found {row}")));
        }
        let toks: Vec<(usize, &str)> = tokens(line).collect();
        if toks.len() != n {
            return Err(Error::DimensionMismatch { line: no, expected: n, found: toks.len() });
        }
        for (col, tok) in toks {
            cells.push(parse_index(no, col, tok, n)?);
        }
        last_line = no;
    }
    let mut table = OpTable::from_cells(n, cells)?;
    if let Some((no, line)) = lines.next() {
        let Some(rest) = line.trim_start().strip_prefix(NAMES_PREFIX) else {
            return Err(Error::parse(no, 1, "unexpected content after the table"));
        };
        let names: Vec<String> = rest.split(',').map(|x| x.trim().to_string()).collect();
        if names.len() != n {
            return Err(Error::DimensionMismatch { line: no, expected: n, found: names.len() });
        }
        table = table
            .with_names(names)
            .map_err(|e| Error::parse(no, 1, e.to_string()))?;
        if let Some((no, _)) = lines.next() {
            return Err(Error::parse(no, 1, "unexpected content after the names line"));
        }
    }
    Ok(table)
}

/// Parses generator lines `m: i0 i1 ... i(m-1)` (image notation). Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_generators(text: &str) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for (no, line) in content_lines(text) {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let Some((head, images)) = line.split_once(':') else {
            return Err(Error::parse(no, 1, "expected `m: i0 i1 ...`"));
        };
        let head_col = head.len() - head.trim_start().len() + 1;
        let m: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::parse(no, head_col, format!("expected a point count, found {:?}", head.trim())))?;
        let base = head.len() + 1;
        let mut image = Vec::with_capacity(m);
        for (col, tok) in tokens(images) {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(no, base + col, format!("expected an integer, found {tok:?}")))?;
            image.push(v);
        }
        if image.len() != m {
            return Err(Error::DimensionMismatch { line: no, expected: m, found: image.len() });
        }
        let perm = Permutation::from_images(image).map_err(|e| match e {
            Error::InvalidPermutation(msg) => Error::InvalidPermutation(format!("line {no}: {msg}")),
            other => other,
        })?;
        out.push(perm);
    }
    Ok(out)
}

pub fn serialize_generators(gens: &[Permutation]) -> String {
    gens.iter()
        .map(|g| {
            let imgs: Vec<String> = g.images().iter().map(ToString::to_string).collect();
            if imgs.is_empty() {
                format!("{}:\n", g.len())
            } else {
                format!("{}: {}\n", g.len(), imgs.join(" "))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3: &str = "3\n0 1 2\n1 2 0\n2 0 1\n";

    #[test]
    fn z3_text() {
        let t = parse_table(Z3).unwrap();
        assert_eq!(t, OpTable::from_fn(3, |a, b| (a + b) % 3).unwrap());
        assert_eq!(serialize_table(&t), Z3);
    }

    #[test]
    fn short_row() {
        assert_eq!(
            parse_table("2\n0 1\n1\n"),
            Err(Error::DimensionMismatch { line: 3, expected: 2, found: 1 })
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse_table("2\n0 1\n1 x\n").unwrap_err().kind(), "ParseError");
        match parse_table("2\n0 1\n1  5\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 4)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_table(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_table("0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_table("2\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_table("1\n0\n0\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn whitespace_is_normalized() {
        let messy = "  3 \r\n0  1 2\r\n\n1 2 0   \n2 0 1\n# names:  e ,g,  g^2 \n\n";
        let t = parse_table(messy).unwrap();
        assert_eq!(serialize_table(&t), format!("{Z3}# names: e, g, g^2\n"));
    }

    #[test]
    fn names_round_trip() {
        let t = OpTable::from_fn(2, |a, b| a ^ b)
            .unwrap()
            .with_names(vec!["e".into(), "(0 1)".into()])
            .unwrap();
        assert_eq!(parse_table(&serialize_table(&t)).unwrap(), t);
        assert_eq!(parse_table_any(&serialize_table_structured(&t)).unwrap(), t);
        assert!(matches!(
            parse_table("2\n0 1\n1 0\n# names: a\n"),
            Err(Error::DimensionMismatch { line: 4, .. })
        ));
    }

    #[test]
    fn structured() {
        let t = parse_table(Z3).unwrap();
        let s = serialize_table_structured(&t);
        assert_eq!(s, "{\"n\":3,\"table\":[[0,1,2],[1,2,0],[2,0,1]]}\n");
        assert_eq!(parse_table_any(&s).unwrap(), t);
        assert!(matches!(
            parse_table_structured("{\"n\":2,\"table\":[[0,1],[1]]}"),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(parse_table_structured("{\"n\":2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn generators() {
        let g = parse_generators("3: 1 2 0").unwrap();
        assert_eq!(g, vec![Permutation::from_images(vec![1, 2, 0]).unwrap()]);
        let g = parse_generators("4: 1 0 3 2\n4: 2 3 0 1").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].compose(&g[1]), g[1].compose(&g[0]));
        assert!(matches!(parse_generators("3: 0 0 1"), Err(Error::InvalidPermutation(_))));
        assert!(matches!(parse_generators("3: 0 1"), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_generators("x: 0 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_generators("0 1 2"), Err(Error::Parse { .. })));
        let text = "# klein\n4: 1 0 3 2\n\n4: 2 3 0 1\n";
        assert_eq!(serialize_generators(&parse_generators(text).unwrap()), "4: 1 0 3 2\n4: 2 3 0 1\n");
    }
}
