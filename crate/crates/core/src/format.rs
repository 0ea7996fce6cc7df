//! Plain-text serialization of labeled graphs.
//!
//! The format is a header naming the parameters followed by the lower
//! triangle of the symmetric labeling, one row per line:
//!
//! ```text
//! n=5 code=c2
//! 1
//! 0 1
//! 1 0 0
//! 0 1 0 1
//! 1 1 0 0 1
//! ```
//!
//! Row `i` holds the labels of edges `<i,0>` through `<i,i>`. Parsing
//! is strict — exact token counts, single spaces, bits only — so that
//! emit and parse are mutually inverse byte for byte.

use crate::graph::{CodeSpec, LabeledGraph};
use crate::{Error, Result};

/// Render a graph and its code parameters.
pub fn emit(g: &LabeledGraph, spec: &CodeSpec) -> String {
    let n = g.node_count();
    assert_eq!(n, spec.n(), "graph and spec disagree on n");
    let mut out = format!("n={} code={}\n", n, spec.code());
    for i in 0..n {
        let row: Vec<&str> =
            (0..=i).map(|j| if g.get(i, j) { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parse a graph file produced by [`emit`]. The code parameters are
/// validated, so a successful parse always returns a usable spec.
pub fn parse(text: &str) -> Result<(LabeledGraph, CodeSpec)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let (n_part, code_part) = header
        .split_once(' ')
        .ok_or_else(|| parse_error(1, "header must be `n=<int> code=<c2|c3>`"))?;
    let n: usize = n_part
        .strip_prefix("n=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_error(1, format!("bad node count field {n_part:?}")))?;
    let code = code_part
        .strip_prefix("code=")
        .ok_or_else(|| parse_error(1, format!("bad code field {code_part:?}")))?
        .parse()
        .map_err(|e: String| parse_error(1, e))?;
    let spec = CodeSpec::new(n, code)?;

    let mut g = LabeledGraph::zeros(n);
    for i in 0..n {
        let line_no = i + 2;
        let row = lines
            .next()
            .ok_or_else(|| parse_error(line_no, format!("missing row {i} of {n}")))?;
        let tokens: Vec<&str> = row.split(' ').collect();
        if tokens.len() != i + 1 {
            return Err(parse_error(
                line_no,
                format!("row {i} has {} labels, expected {}", tokens.len(), i + 1),
            ));
        }
        for (j, token) in tokens.iter().enumerate() {
            match *token {
                "0" => g.set(i, j, false),
                "1" => g.set(i, j, true),
                other => {
                    return Err(parse_error(
                        line_no,
                        format!("bad label {other:?}, expected 0 or 1"),
                    ))
                }
            }
        }
    }
    if lines.next().is_some() {
        return Err(parse_error(n + 2, "unexpected content after the last row"));
    }
    Ok((g, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Code;

    fn sample() -> (LabeledGraph, CodeSpec) {
        let g = LabeledGraph::from_fn(5, |i, j| (i * 3 + j) % 4 == 1);
        (g, CodeSpec::new(5, Code::C2).unwrap())
    }

    #[test]
    fn emit_layout_is_triangular() {
        let (g, spec) = sample();
        let text = emit(&g, &spec);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "n=5 code=c2");
        for (i, line) in lines[1..].iter().enumerate() {
            assert_eq!(line.split(' ').count(), i + 1);
        }
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn parse_inverts_emit() {
        let (g, spec) = sample();
        let text = emit(&g, &spec);
        let (parsed, parsed_spec) = parse(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(parsed_spec, spec);
        assert_eq!(emit(&parsed, &parsed_spec), text);
    }

    #[test]
    fn parse_accepts_c3_and_validates_the_spec() {
        let g = LabeledGraph::zeros(11);
        let spec = CodeSpec::new(11, Code::C3).unwrap();
        let (parsed, parsed_spec) = parse(&emit(&g, &spec)).unwrap();
        assert_eq!(parsed_spec, spec);
        assert!(parsed.is_zero());
        // Structurally fine but arithmetically invalid parameters are
        // rejected with the spec error, not a parse error.
        let bad = "n=7 code=c3\n0\n0 0\n0 0 0\n0 0 0 0\n0 0 0 0 0\n0 0 0 0 0 0\n0 0 0 0 0 0 0\n";
        assert_eq!(parse(bad).unwrap_err(), Error::TwoNotPrimitive(7));
        let composite = "n=4 code=c2\n0\n0 0\n0 0 0\n0 0 0 0\n";
        assert_eq!(parse(composite).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let cases: &[(&str, usize)] = &[
            ("", 1),
            ("n=5code=c2\n", 1),
            ("n=five code=c2\n", 1),
            ("n=5 code=c9\n", 1),
            ("n=5 code=c2\n0\n", 3),               // missing rows
            ("n=5 code=c2\n0 0\n", 2),             // wrong arity
            ("n=5 code=c2\n0\n0 2\n", 3),          // bad label
            ("n=5 code=c2\n0\n0  1\n", 3),         // double space
            ("n=2 code=c2\n0\n0 0\nextra\n", 4),   // trailing content
        ];
        for (text, line) in cases {
            match parse(text) {
                Err(Error::Parse { line: got, .. }) => {
                    assert_eq!(got, *line, "wrong line for {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }
}
