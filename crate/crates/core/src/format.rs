//! Plain-text symbol files.
//!
//! ```text
//! document  := line* ;
//! line      := blank | comment | header | term | separator ;
//! comment   := "#" any-text ;
//! header    := ("n" | "grading" | "delta") "=" value ;
//! term      := "term" rational exponent{2(2n+1)} ;
//! separator := "---" ;
//! rational  := "-"? digits ("/" digits)? ;
//! ```
//!
//! The three headers must all appear before the first term of a document.
//! Exponents follow the variable layout of [`Vars`]. A file may hold several
//! documents separated by `---` lines. Output lists terms in graded-lex order,
//! one per line.

use crate::error::{ParseError, Result};
use crate::exactpoly::{format_rational, parse_rational, Monomial, Poly, Rational, Vars};
use crate::symbols::{Grading, Symbol};

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

#[derive(Default)]
struct Draft {
    n: Option<usize>,
    grading: Option<Grading>,
    delta: Option<Rational>,
    terms: Vec<(Monomial, Rational)>,
    started: bool,
}

impl Draft {
    fn finish(self, line: usize) -> Result<Symbol, ParseError> {
        let n = self.n.ok_or_else(|| err(line, 1, "missing header `n`"))?;
        let grading = self.grading.ok_or_else(|| err(line, 1, "missing header `grading`"))?;
        let delta = self.delta.ok_or_else(|| err(line, 1, "missing header `delta`"))?;
        let poly = Poly::from_terms(n, self.terms);
        Symbol::new(poly, delta, grading).map_err(|e| err(line, 1, e.to_string()))
    }
}

/// Parses every document in `text`.
pub fn parse_symbols(text: &str) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut draft = Draft::default();
    let mut last = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        if head == "---" {
            if toks.len() > 1 {
                return Err(err(line_no, toks[1].0, "unexpected text after separator").into());
            }
            out.push(std::mem::take(&mut draft).finish(line_no)?);
            continue;
        }
        draft.started = true;
        if head == "term" {
            let n = draft.n.ok_or_else(|| err(line_no, col, "term before header `n`"))?;
            if draft.grading.is_none() || draft.delta.is_none() {
                return Err(err(line_no, col, "term before headers `grading` and `delta`").into());
            }
            let count = Vars::new(n).count();
            let Some(&(ccol, ctext)) = toks.get(1) else {
                return Err(err(line_no, col + 4, "missing coefficient").into());
            };
            let coeff =
                parse_rational(ctext).ok_or_else(|| err(line_no, ccol, format!("malformed rational `{ctext}`")))?;
            let exps = &toks[2..];
            if exps.len() != count {
                let at = exps.get(count).map_or(content.trim_end().chars().count() + 1, |t| t.0);
                return Err(err(
                    line_no,
                    at,
                    format!("expected {count} exponents for n = {n}, found {}", exps.len()),
                )
                .into());
            }
            let mut e = Vec::with_capacity(count);
            for &(ecol, et) in exps {
                let v: u16 = et
                    .parse()
                    .map_err(|_| err(line_no, ecol, format!("malformed exponent `{et}`")))?;
                e.push(v);
            }
            draft.terms.push((Monomial::from_exponents(&e), coeff));
            continue;
        }
        // header: key = value, spaces optional around '='
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(line_no, col, format!("unknown directive `{head}`")).into());
        };
        let key = key.trim();
        let value = value.trim();
        let vcol = content.find('=').map_or(col, |i| {
            let after = &content[i + 1..];
            content[..i + 1].chars().count() + after.len() - after.trim_start().len() + 1
        });
        if !draft.terms.is_empty() {
            return Err(err(line_no, col, "headers must precede terms").into());
        }
        match key {
            "n" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| err(line_no, vcol, format!("malformed integer `{value}`")))?;
                if n == 0 {
                    return Err(err(line_no, vcol, "n must be at least 1").into());
                }
                draft.n = Some(n);
            }
            "grading" => {
                draft.grading = Some(match value {
                    "S" => Grading::S,
                    "R" => Grading::R,
                    other => return Err(err(line_no, vcol, format!("unknown grading tag `{other}`")).into()),
                });
            }
            "delta" => {
                draft.delta = Some(
                    parse_rational(value).ok_or_else(|| err(line_no, vcol, format!("malformed rational `{value}`")))?,
                );
            }
            other => return Err(err(line_no, col, format!("unknown header `{other}`")).into()),
        }
    }
    if draft.started {
        out.push(draft.finish(last + 1)?);
    }
    Ok(out)
}

/// Parses a file holding exactly one symbol.
pub fn parse_symbol(text: &str) -> Result<Symbol> {
    let mut all = parse_symbols(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(err(1, 1, "no symbol in input").into()),
        k => Err(err(1, 1, format!("expected one symbol, found {k}")).into()),
    }
}

pub fn serialize_symbol(u: &Symbol) -> String {
    let mut s = format!(
        "n = {}\ngrading = {}\ndelta = {}\n",
        u.n(),
        u.grading(),
        format_rational(u.weight())
    );
    for (m, c) in u.poly().terms() {
        s.push_str("term ");
        s.push_str(&format_rational(c));
        for e in m.exponents() {
            s.push(' ');
            s.push_str(&e.to_string());
        }
        s.push('\n');
    }
    s
}

/// Several symbols as one file, separated by `---`.
pub fn serialize_symbols<'a>(us: impl IntoIterator<Item = &'a Symbol>) -> String {
    us.into_iter().map(serialize_symbol).collect::<Vec<_>>().join("---\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exactpoly::{int, rat};

    fn parse_err(text: &str) -> ParseError {
        match parse_symbol(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn reads_a_small_document() {
        let text = "# ξ_q + p ξ_t\nn = 1\ngrading = R\ndelta = -1/2\nterm 1 0 0 0 1 0 0\nterm 1 0 1 0 0 0 1\n";
        let u = parse_symbol(text).unwrap();
        assert_eq!(u.n(), 1);
        assert_eq!(u.grading(), Grading::R);
        assert_eq!(u.weight(), &rat(-1, 2));
        assert_eq!(u.poly().len(), 2);
        assert_eq!(parse_symbol(&serialize_symbol(&u)).unwrap(), u);
    }

    #[test]
    fn zero_symbol_round_trips() {
        let z = Symbol::zero(2, int(3), Grading::S);
        assert_eq!(parse_symbol(&serialize_symbol(&z)).unwrap(), z);
    }

    #[test]
    fn several_documents() {
        let a = Symbol::zero(1, int(1), Grading::R);
        let b = Symbol::new(Poly::one(1), rat(7, 5), Grading::S).unwrap();
        let text = serialize_symbols([&a, &b]);
        assert_eq!(parse_symbols(&text).unwrap(), vec![a, b]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_err("n = 1\ngrading = R\ndelta = 1/0\n");
        assert_eq!((e.line, e.column), (3, 9));
        let e = parse_err("n = 1\ngrading = Q\ndelta = 1\n");
        assert_eq!((e.line, e.column), (2, 11));
        let e = parse_err("n = 1\ngrading = R\ndelta = 1\nterm 1 0 0 0 0 0\n");
        assert_eq!(e.line, 4);
        assert!(e.message.contains("expected 6 exponents"));
        let e = parse_err("n = 1\ngrading = R\ndelta = 1\nterm 1 0 0 0 0 0 0 0\n");
        assert_eq!((e.line, e.column), (4, 20));
        let e = parse_err("n = 1\ngrading = R\ndelta = 1\nterm x/2 0 0 0 0 0 0\n");
        assert_eq!((e.line, e.column), (4, 6));
        let e = parse_err("n = 1\ngrading = R\n");
        assert!(e.message.contains("delta"));
    }
}
