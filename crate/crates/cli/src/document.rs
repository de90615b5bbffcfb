//! Text format for chain complexes.
//!
//! ```text
//! # comments run to end of line; blank lines are ignored
//! name lens-5-1
//! meta lens_r 5        # optional, any number, before `dim`
//! meta lens_s 1
//! dim 3
//! ranks 1 1 1 1
//! boundary 1
//! 0
//! boundary 2
//! 5
//! boundary 3
//! 0
//! ```
//!
//! Each `boundary p` block holds `ranks[p-1]` rows of `ranks[p]` signed
//! integers. A block with no rows or no columns has no row lines.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use abtv::{BigInt, ChainComplex, IntMatrix};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("validation error: {0}")]
    Validation(#[from] abtv::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDocument {
    pub name: String,
    pub dim: usize,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
    pub metadata: BTreeMap<String, String>,
}

impl ComplexDocument {
    pub fn from_complex(name: impl Into<String>, cc: &ChainComplex) -> Self {
        ComplexDocument {
            name: name.into(),
            dim: cc.dim(),
            ranks: cc.ranks().to_vec(),
            boundaries: cc.boundaries().to_vec(),
            metadata: cc.metadata().clone(),
        }
    }

    /// The validated chain complex, metadata included.
    pub fn to_complex(&self) -> Result<ChainComplex, abtv::Error> {
        let cc = ChainComplex::new(self.ranks.clone(), self.boundaries.clone())?;
        Ok(self
            .metadata
            .iter()
            .fold(cc, |cc, (k, v)| cc.with_metadata(k.clone(), v.clone())))
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ComplexDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name {}", self.name)?;
        for (k, v) in &self.metadata {
            writeln!(f, "meta {k} {v}")?;
        }
        writeln!(f, "dim {}", self.dim)?;
        let ranks: Vec<String> = self.ranks.iter().map(ToString::to_string).collect();
        writeln!(f, "ranks {}", ranks.join(" "))?;
        for (idx, m) in self.boundaries.iter().enumerate() {
            writeln!(f, "boundary {}", idx + 1)?;
            if m.cols() == 0 {
                continue;
            }
            for i in 0..m.rows() {
                let mut line = String::new();
                for (j, e) in m.row(i).iter().enumerate() {
                    if j > 0 {
                        line.push(' ');
                    }
                    write!(line, "{e}")?;
                }
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    /// Content with the comment removed, for `name` and `meta` values.
    content: &'a str,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn keyword(&self) -> &str {
        self.tokens[0].text
    }

    /// Text after the first token, trimmed.
    fn rest(&self) -> &'a str {
        let t = &self.tokens[0];
        self.content[t.column - 1 + t.text.len()..].trim()
    }

    fn end_column(&self) -> usize {
        self.content.trim_end().len() + 1
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.split('\n')
        .enumerate()
        .filter_map(|(idx, raw)| {
            let raw = raw.strip_suffix('\r').unwrap_or(raw);
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in content
                .char_indices()
                .chain(std::iter::once((content.len(), ' ')))
            {
                match (ch.is_ascii_whitespace(), start) {
                    (true, Some(s)) => {
                        tokens.push(Token {
                            text: &content[s..pos],
                            column: s + 1,
                        });
                        start = None;
                    }
                    (false, None) => start = Some(pos),
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(Line {
                number: idx + 1,
                content,
                tokens,
            })
        })
        .collect()
}

fn parse_nat(line: &Line<'_>, tok: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| {
        line.error(
            tok.column,
            format!(
                "expected {what} (a nonnegative integer), found `{}`",
                tok.text
            ),
        )
    })
}

/// Parses and validates a chain-complex document.
pub fn parse_complex(text: &str) -> Result<ComplexDocument, DocumentError> {
    let doc = parse_unvalidated(text)?;
    doc.to_complex()?;
    Ok(doc)
}

fn parse_unvalidated(text: &str) -> Result<ComplexDocument, ParseError> {
    let lines = lines(text);
    let mut it = lines.iter().peekable();
    let last_line = text.split('\n').count().max(1);
    let eof = |what: &str| ParseError {
        line: last_line,
        column: 1,
        message: format!("unexpected end of input, expected {what}"),
    };

    let line = it.next().ok_or_else(|| eof("`name`"))?;
    if line.keyword() != "name" {
        return Err(line.error(
            line.tokens[0].column,
            format!("expected `name`, found `{}`", line.keyword()),
        ));
    }
    let name = line.rest().to_string();
    if name.is_empty() {
        return Err(line.error(line.end_column(), "missing name"));
    }

    let mut metadata = BTreeMap::new();
    while let Some(line) = it.next_if(|l| l.keyword() == "meta") {
        if line.tokens.len() < 3 {
            return Err(line.error(line.end_column(), "expected `meta <key> <value>`"));
        }
        let key = line.tokens[1].text;
        let value = line.content[line.tokens[2].column - 1..].trim();
        metadata.insert(key.to_string(), value.to_string());
    }

    let line = it.next().ok_or_else(|| eof("`dim`"))?;
    if line.keyword() != "dim" {
        return Err(line.error(
            line.tokens[0].column,
            format!("expected `dim`, found `{}`", line.keyword()),
        ));
    }
    if line.tokens.len() != 2 {
        return Err(line.error(line.end_column(), "expected `dim <n>`"));
    }
    let dim = parse_nat(line, &line.tokens[1], "dimension")?;

    let line = it.next().ok_or_else(|| eof("`ranks`"))?;
    if line.keyword() != "ranks" {
        return Err(line.error(
            line.tokens[0].column,
            format!("expected `ranks`, found `{}`", line.keyword()),
        ));
    }
    if line.tokens.len() != dim + 2 {
        return Err(line.error(
            line.end_column(),
            format!(
                "expected {} ranks for dim {dim}, found {}",
                dim + 1,
                line.tokens.len() - 1
            ),
        ));
    }
    let ranks = line.tokens[1..]
        .iter()
        .map(|t| parse_nat(line, t, "rank"))
        .collect::<Result<Vec<_>, _>>()?;

    let mut boundaries = Vec::with_capacity(dim);
    for p in 1..=dim {
        let header = it.next().ok_or_else(|| eof(&format!("`boundary {p}`")))?;
        let ok = header.keyword() == "boundary"
            && header.tokens.len() == 2
            && header.tokens[1].text.parse::<usize>().ok() == Some(p);
        if !ok {
            return Err(header.error(header.tokens[0].column, format!("expected `boundary {p}`")));
        }
        let (rows, cols) = (ranks[p - 1], ranks[p]);
        let row_lines = if cols == 0 { 0 } else { rows };
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..row_lines {
            let line = it
                .next()
                .ok_or_else(|| eof(&format!("row {} of boundary {p}", r + 1)))?;
            if line.tokens.len() != cols {
                return Err(line.error(
                    line.tokens.get(cols).map_or(line.end_column(), |t| t.column),
                    format!(
                        "boundary {p} is {rows}x{cols}: expected {cols} entries in row {}, found {}",
                        r + 1,
                        line.tokens.len()
                    ),
                ));
            }
            for tok in &line.tokens {
                let v: BigInt = tok.text.parse().map_err(|_| {
                    line.error(
                        tok.column,
                        format!("expected an integer, found `{}`", tok.text),
                    )
                })?;
                entries.push(v);
            }
        }
        boundaries.push(IntMatrix::new(rows, cols, entries).expect("entry count checked"));
    }

    if let Some(line) = it.next() {
        return Err(line.error(
            line.tokens[0].column,
            format!("unexpected `{}` after the last boundary", line.keyword()),
        ));
    }

    Ok(ComplexDocument {
        name,
        dim,
        ranks,
        boundaries,
        metadata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LENS: &str = "# L(5,1)\nname lens-5-1\nmeta lens_r 5\nmeta lens_s 1\ndim 3\nranks 1 1 1 1\nboundary 1\n0\nboundary 2\n5\n\nboundary 3\n0   # trailing comment\n";

    #[test]
    fn parses_lens() {
        let doc = parse_complex(LENS).unwrap();
        assert_eq!(doc.name, "lens-5-1");
        assert_eq!(doc.ranks, vec![1, 1, 1, 1]);
        assert_eq!(doc.boundaries[1], IntMatrix::from_i64(1, 1, &[5]));
        assert_eq!(doc.metadata["lens_s"], "1");
        let cc = doc.to_complex().unwrap();
        assert_eq!(cc, abtv::build_lens(5, 1).unwrap());
    }

    #[test]
    fn crlf_accepted() {
        let doc = parse_complex(&LENS.replace('\n', "\r\n")).unwrap();
        assert_eq!(doc, parse_complex(LENS).unwrap());
    }

    #[test]
    fn empty_input() {
        for text in ["", "\n\n", "# only a comment\n"] {
            assert!(matches!(parse_complex(text), Err(DocumentError::Parse(_))));
        }
    }

    #[test]
    fn wrong_shape() {
        let text = "name bad\ndim 1\nranks 2 2\nboundary 1\n1 -1 0\n1 -1 0\n";
        let err = parse_complex(text).unwrap_err();
        match err {
            DocumentError::Parse(e) => {
                assert_eq!((e.line, e.column), (5, 6));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_tokens_report_position() {
        let e = parse_unvalidated("name x\ndim two\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        let e = parse_unvalidated("name x\ndim 1\nranks 1 1\nboundary 1\nq\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 1));
        let e = parse_unvalidated("name x\ndim 1\nranks 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_unvalidated("dim 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_unvalidated("name x\ndim 0\nranks 1\nboundary 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_unvalidated("name x\ndim 1\nranks 1 1\nboundary 2\n0\n").unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn validation_failure() {
        let text = "name bad\ndim 2\nranks 1 1 1\nboundary 1\n1\nboundary 2\n1\n";
        assert!(matches!(
            parse_complex(text),
            Err(DocumentError::Validation(
                abtv::Error::BoundarySquareNonzero { .. }
            ))
        ));
    }

    #[test]
    fn empty_blocks() {
        let text = "name s3-trivial\ndim 3\nranks 1 0 0 1\nboundary 1\nboundary 2\nboundary 3\n";
        let doc = parse_complex(text).unwrap();
        assert_eq!(doc.boundaries[2].rows(), 0);
        assert_eq!(doc.boundaries[2].cols(), 1);
        assert_eq!(parse_complex(&doc.serialize()).unwrap(), doc);
    }

    #[test]
    fn serialize_round_trip() {
        let doc = ComplexDocument::from_complex("fig", &abtv::build_sphere3_figure());
        let text = doc.serialize();
        assert_eq!(parse_complex(&text).unwrap(), doc);
    }
}
