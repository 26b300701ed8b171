//! The BDF text format.
//!
//! ```text
//! # two states: a constant letter and a swap
//! n 2
//! a: 0 0
//! b: 1 0
//! ```
//!
//! `#` starts a comment, blank lines are skipped, integers are base 10, and
//! the `a` row always precedes the `b` row.

use std::fmt::Write as _;

use crate::dfa::BinaryDfa;
use crate::error::{BdfError, Error, Result};

pub fn parse_dfa(text: &str) -> Result<BinaryDfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or(BdfError::MissingRow("n"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("n") {
        return Err(syntax(line, "expected `n <N>`"));
    }
    let n = match (toks.next(), toks.next()) {
        (Some(t), None) => parse_int(line, t)?,
        _ => return Err(syntax(line, "expected `n <N>`")),
    };
    if n == 0 {
        return Err(syntax(line, "state count must be at least 1"));
    }

    let mut rows = Vec::with_capacity(2);
    for name in ["a", "b"] {
        let (line, body) = lines.next().ok_or(BdfError::MissingRow(name))?;
        let rest = body
            .strip_prefix(name)
            .and_then(|r| r.trim_start().strip_prefix(':'))
            .ok_or_else(|| syntax(line, &format!("expected row `{name}:`")))?;
        let row = rest
            .split_whitespace()
            .map(|t| {
                let v = parse_int(line, t)?;
                if v >= n {
                    Err(Error::Bdf(BdfError::Range { line, value: v, n }))
                } else {
                    Ok(v)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(syntax(
                line,
                &format!("row `{name}` has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "unexpected content after row `b`"));
    }
    let b = rows.pop().unwrap();
    let a = rows.pop().unwrap();
    BinaryDfa::new(a, b)
}

pub fn serialize_dfa(dfa: &BinaryDfa) -> String {
    let mut out = format!("n {}\n", dfa.n());
    for (name, c) in [("a", crate::Letter::A), ("b", crate::Letter::B)] {
        out.push_str(name);
        out.push(':');
        for q in dfa.delta(c) {
            write!(out, " {q}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_int(line: usize, tok: &str) -> Result<usize> {
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, &format!("bad token `{tok}`")));
    }
    tok.parse()
        .map_err(|_| syntax(line, &format!("bad token `{tok}`")))
}

fn syntax(line: usize, msg: &str) -> Error {
    Error::Bdf(BdfError::Syntax {
        line,
        msg: msg.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Letter;

    #[test]
    fn parses_flip_flop() {
        let d = parse_dfa("n 2\na: 0 0\nb: 1 0\n").unwrap();
        assert_eq!(d.delta(Letter::A), &[0, 0]);
        assert_eq!(d.delta(Letter::B), &[1, 0]);
    }

    #[test]
    fn parses_single_state() {
        let d = parse_dfa("n 1\na: 0\nb: 0\n").unwrap();
        assert_eq!(d.n(), 1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# E'12\n\nn 12   # states\na: 10 1 2 8 4 5 10 9 3 7 6 11\n\n b:1 2 3 4 5 6 7 8 9 10 11 0\n";
        let d = parse_dfa(text).unwrap();
        assert_eq!(d.delta(Letter::A), &[10, 1, 2, 8, 4, 5, 10, 9, 3, 7, 6, 11]);
    }

    #[test]
    fn error_paths() {
        let err = |t: &str| parse_dfa(t).unwrap_err();
        assert!(matches!(
            err("n 2\na: 0 2\nb: 1 0\n"),
            Error::Bdf(BdfError::Range {
                line: 2,
                value: 2,
                n: 2
            })
        ));
        assert!(matches!(
            err("n 2\na: 0\nb: 1 0\n"),
            Error::Bdf(BdfError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            err("n 2\na: 0 x\nb: 1 0\n"),
            Error::Bdf(BdfError::Syntax { .. })
        ));
        assert!(matches!(
            err("n 2\na: 0 -1\nb: 1 0\n"),
            Error::Bdf(BdfError::Syntax { .. })
        ));
        assert!(matches!(
            err("n 2\na: 0 0\n"),
            Error::Bdf(BdfError::MissingRow("b"))
        ));
        assert!(matches!(err(""), Error::Bdf(BdfError::MissingRow("n"))));
        assert!(matches!(
            err("n 2\nb: 1 0\na: 0 0\n"),
            Error::Bdf(BdfError::Syntax { .. })
        ));
        assert!(matches!(err("n 0\n"), Error::Bdf(BdfError::Syntax { .. })));
        assert!(matches!(
            err("n 1\na: 0\nb: 0\nc: 0\n"),
            Error::Bdf(BdfError::Syntax { line: 4, .. })
        ));
    }

    #[test]
    fn canonical_text() {
        let d = parse_dfa("n 2\na:0   0\nb: 1 0").unwrap();
        assert_eq!(serialize_dfa(&d), "n 2\na: 0 0\nb: 1 0\n");
    }
}
