//! Text format for arrangements.
//!
//! One declaration per line: a single `dim <l>` line fixes the ambient
//! dimension, then one `form <c1> ... <cl>` line per hyperplane. Coefficients
//! are optionally-signed integers or `p/q` rationals. `#` starts a comment,
//! blank lines are ignored, and the order of the `form` lines defines the
//! labels `0..n-1`.

use std::fmt;
use std::str::FromStr;

use pil_core::{QArrangement, Q};

/// Parse failure with the 1-based source line that caused it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Parses the arrangement file format.
pub fn parse_arrangement(text: &str) -> Result<QArrangement, ParseError> {
    let mut dim: Option<(usize, usize)> = None; // (value, declaring line)
    let mut forms: Vec<Vec<Q>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        match keyword {
            "dim" => {
                if dim.is_some() {
                    return Err(err(lineno, "duplicate dim declaration"));
                }
                let value = tokens
                    .next()
                    .ok_or_else(|| err(lineno, "dim needs a value"))?
                    .parse::<usize>()
                    .map_err(|_| err(lineno, "dim must be a positive integer"))?;
                if value == 0 {
                    return Err(err(lineno, "dim must be at least 1"));
                }
                if tokens.next().is_some() {
                    return Err(err(lineno, "unexpected tokens after dim value"));
                }
                dim = Some((value, lineno));
            }
            "form" => {
                let Some((l, _)) = dim else {
                    return Err(err(lineno, "form before dim declaration"));
                };
                let mut coeffs = Vec::with_capacity(l);
                for token in tokens {
                    let c = Q::from_str(token)
                        .map_err(|_| err(lineno, format!("malformed rational '{token}'")))?;
                    coeffs.push(c);
                }
                if coeffs.len() != l {
                    return Err(err(
                        lineno,
                        format!(
                            "dimension mismatch: expected {l} coefficients, found {}",
                            coeffs.len()
                        ),
                    ));
                }
                if coeffs.iter().all(num_traits::Zero::is_zero) {
                    return Err(err(lineno, "zero form"));
                }
                forms.push(coeffs);
            }
            other => {
                return Err(err(lineno, format!("unknown directive '{other}'")));
            }
        }
    }
    let Some((l, _)) = dim else {
        return Err(err(text.lines().count().max(1), "missing dim declaration"));
    };
    QArrangement::new(l, forms).map_err(|e| err(0, e.to_string()))
}

/// Renders an arrangement in the same format, comments first.
pub fn format_arrangement(a: &QArrangement) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {}\n", a.dim()));
    for form in a.forms() {
        out.push_str("form");
        for c in form {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIX_FORM_FILE: &str = "\
# six forms in four variables
dim 4
form 1 0 0 0
form 0 1 0 0
form 0 0 1 0
form 1 0 0 -1
form 0 1 0 -1
form 0 0 1 -1
";

    #[test]
    fn parses_the_six_form_file() {
        let a = parse_arrangement(SIX_FORM_FILE).unwrap();
        assert_eq!(a.n(), 6);
        assert_eq!(a.dim(), 4);
    }

    #[test]
    fn rejects_zero_form_with_line_number() {
        let e = parse_arrangement("dim 4\nform 0 0 0 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("zero form"));
    }

    #[test]
    fn accepts_rational_coefficients() {
        let a = parse_arrangement("dim 4\nform 1/2 -3 0 7\n").unwrap();
        assert_eq!(a.form(0)[0], Q::new(1.into(), 2.into()));
        assert_eq!(a.form(0)[1], Q::from_integer((-3).into()));
    }

    #[test]
    fn rejects_malformed_rational() {
        let e = parse_arrangement("dim 2\nform 1 2.5\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("malformed rational"));
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let e = parse_arrangement("dim 3\nform 1 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("dimension mismatch"));
    }

    #[test]
    fn rejects_missing_or_duplicate_dim() {
        assert!(parse_arrangement("form 1 2\n")
            .unwrap_err()
            .message
            .contains("before dim"));
        assert!(parse_arrangement("dim 2\ndim 3\n")
            .unwrap_err()
            .message
            .contains("duplicate"));
        assert!(parse_arrangement("# nothing\n")
            .unwrap_err()
            .message
            .contains("missing dim"));
    }

    #[test]
    fn round_trips_through_the_formatter() {
        let a = parse_arrangement(SIX_FORM_FILE).unwrap();
        let again = parse_arrangement(&format_arrangement(&a)).unwrap();
        assert_eq!(a, again);
    }
}
