//! Flat text format for tournaments.
//!
//! Line 1 holds the decimal player count; the next `n` lines hold `n`
//! characters over `{0,1}` each, row `i` column `j` reading `1` iff player
//! `i` beats player `j`. The diagonal must be `0` and the final row must end
//! with a newline. `#`-prefixed comment lines are permitted before the
//! header only.

use std::path::Path;

use thiserror::Error;

use kingmaker_core::tournament::TournamentError;
use kingmaker_core::Tournament;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("file is empty")]
    Empty,
    #[error("line {line}: cannot parse player count from `{text}`")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: expected {expected} characters, found {got}")]
    RowLength {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}, column {column}: expected '0' or '1', found {found:?}")]
    BadChar {
        line: usize,
        column: usize,
        found: char,
    },
    #[error("expected {expected} rows, found only {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("line {line}: unexpected content after the matrix")]
    TrailingContent { line: usize },
    #[error("file must end with a newline after the last row")]
    MissingTrailingNewline,
    #[error("inconsistent matrix: {0}")]
    Invalid(#[from] TournamentError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub fn parse_tournament(text: &str) -> Result<Tournament, FormatError> {
    if text.is_empty() {
        return Err(FormatError::Empty);
    }
    if !text.ends_with('\n') {
        return Err(FormatError::MissingTrailingNewline);
    }
    let mut lines = text.lines().enumerate();
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.starts_with('#'))
        .ok_or(FormatError::Empty)?;
    let n: usize = header.trim().parse().map_err(|_| FormatError::BadHeader {
        line: header_line + 1,
        text: header.to_string(),
    })?;
    if n == 0 {
        return Err(FormatError::BadHeader {
            line: header_line + 1,
            text: header.to_string(),
        });
    }
    let mut matrix: Vec<Vec<bool>> = Vec::with_capacity(n);
    for _ in 0..n {
        let Some((idx, row)) = lines.next() else {
            return Err(FormatError::MissingRows {
                expected: n,
                got: matrix.len(),
            });
        };
        let line = idx + 1;
        if row.chars().count() != n {
            return Err(FormatError::RowLength {
                line,
                expected: n,
                got: row.chars().count(),
            });
        }
        let mut parsed = Vec::with_capacity(n);
        for (column, ch) in row.chars().enumerate() {
            match ch {
                '0' => parsed.push(false),
                '1' => parsed.push(true),
                found => {
                    return Err(FormatError::BadChar {
                        line,
                        column: column + 1,
                        found,
                    })
                }
            }
        }
        matrix.push(parsed);
    }
    if let Some((idx, _)) = lines.next() {
        return Err(FormatError::TrailingContent { line: idx + 1 });
    }
    Ok(Tournament::from_matrix(&matrix)?)
}

/// Serializes bit-exactly: optional comments, header, matrix rows, trailing
/// newline.
pub fn write_tournament(t: &Tournament, comments: &[String]) -> String {
    let n = t.n();
    let mut out = String::new();
    for c in comments {
        out.push('#');
        if !c.is_empty() {
            out.push(' ');
            out.push_str(c);
        }
        out.push('\n');
    }
    out.push_str(&n.to_string());
    out.push('\n');
    for i in 0..n {
        for j in 0..n {
            out.push(if t.beats(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn read_tournament_file(path: &Path) -> Result<Tournament, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_tournament(&text)
}

pub fn write_tournament_file(
    path: &Path,
    t: &Tournament,
    comments: &[String],
) -> Result<(), FormatError> {
    std::fs::write(path, write_tournament(t, comments)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_simple() {
        let t = Tournament::transitive(4);
        let text = write_tournament(&t, &[]);
        assert_eq!(text, "4\n0111\n0011\n0001\n0000\n");
        assert_eq!(parse_tournament(&text).unwrap(), t);
    }

    #[test]
    fn comments_before_header_are_allowed() {
        let text = "# generated\n# model=cr\n2\n01\n00\n";
        assert_eq!(parse_tournament(text).unwrap(), Tournament::transitive(2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_tournament("2\n01\n0\n") {
            Err(FormatError::RowLength {
                line: 3,
                expected: 2,
                got: 1,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_tournament("2\n01\n0x\n") {
            Err(FormatError::BadChar {
                line: 3,
                column: 2,
                found: 'x',
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_tournament("2\n01\n00\n# late comment\n") {
            Err(FormatError::TrailingContent { line: 4 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_tournament("2\n01\n00"),
            Err(FormatError::MissingTrailingNewline)
        ));
        assert!(matches!(
            parse_tournament("2\n11\n00\n"),
            Err(FormatError::Invalid(TournamentError::SelfBeat(0)))
        ));
    }
}
