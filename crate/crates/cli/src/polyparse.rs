//! Parser for the textual polynomial grammar used in bundle files.
//!
//! The grammar matches the canonical display form of the engine's
//! polynomials and is tolerant of whitespace: a polynomial is a signed sum
//! of terms, each term a `*`-separated product of rational coefficients
//! (`3`, `-2`, `1/2`) and variable powers (`x`, `y^3` and, over three
//! variables, `z`). `0` denotes the zero polynomial. Every error carries
//! the character column at which parsing failed.

use std::fmt;
use std::str::FromStr;

use schubsplit::exactla::rat;
use schubsplit::{Poly, Rat};

/// A parse failure at a 1-based character column of the entry text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "character {}: {}", self.column, self.message)
    }
}

impl std::error::Error for PolyParseError {}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Scanner {
    fn fail<T>(&self, at: usize, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            column: at + 1,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().expect("peeked digit"));
        }
        s
    }

    fn variable_names(&self) -> &'static str {
        if self.nvars == 2 {
            "x, y"
        } else {
            "x, y, z"
        }
    }

    fn var_index(&self, c: char) -> Option<usize> {
        let idx = match c {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            _ => return None,
        };
        (idx < self.nvars).then_some(idx)
    }
}

/// Parses one polynomial over `nvars` variables (2: `x, y`; 3: `x, y, z`).
pub fn parse_poly(input: &str, nvars: usize) -> Result<Poly, PolyParseError> {
    assert!(nvars == 2 || nvars == 3, "bundle files use 2 or 3 variables");
    let mut s = Scanner {
        chars: input.chars().collect(),
        pos: 0,
        nvars,
    };
    s.skip_ws();
    if s.peek().is_none() {
        return s.fail(s.pos, "empty polynomial (write 0 for a zero entry)");
    }
    let mut negative = match s.peek() {
        Some('-') => {
            s.bump();
            true
        }
        Some('+') => {
            s.bump();
            false
        }
        _ => false,
    };
    let mut acc = Poly::zero(nvars);
    loop {
        let term = parse_term(&mut s)?;
        acc = if negative { acc.sub(&term) } else { acc.add(&term) };
        s.skip_ws();
        match s.peek() {
            None => break,
            Some('+') => {
                s.bump();
                negative = false;
            }
            Some('-') => {
                s.bump();
                negative = true;
            }
            Some(c) => {
                return s.fail(s.pos, format!("expected '+' or '-' before the next term, found '{c}'"));
            }
        }
    }
    Ok(acc)
}

/// One term: a `*`-separated product of coefficients and variable powers.
fn parse_term(s: &mut Scanner) -> Result<Poly, PolyParseError> {
    let mut coeff = rat(1);
    let mut exps = vec![0u32; s.nvars];
    loop {
        s.skip_ws();
        let start = s.pos;
        match s.peek() {
            Some(c) if c.is_ascii_digit() => {
                let mut text = s.digits();
                if s.peek() == Some('/') {
                    s.bump();
                    let denom_at = s.pos;
                    let denom = s.digits();
                    if denom.is_empty() {
                        return s.fail(denom_at, "expected digits after '/'");
                    }
                    if denom.bytes().all(|b| b == b'0') {
                        return s.fail(denom_at, "zero denominator");
                    }
                    text.push('/');
                    text.push_str(&denom);
                }
                let value = Rat::from_str(&text)
                    .map_err(|e| PolyParseError {
                        column: start + 1,
                        message: format!("bad coefficient '{text}': {e}"),
                    })?;
                coeff = coeff * value;
            }
            Some(c) if c.is_alphabetic() => {
                let Some(idx) = s.var_index(c) else {
                    return s.fail(
                        s.pos,
                        format!("unknown variable '{c}' (available: {})", s.variable_names()),
                    );
                };
                s.bump();
                s.skip_ws();
                let power: u32 = if s.peek() == Some('^') {
                    s.bump();
                    s.skip_ws();
                    let exp_at = s.pos;
                    let digits = s.digits();
                    if digits.is_empty() {
                        return s.fail(exp_at, "expected an exponent after '^'");
                    }
                    match digits.parse() {
                        Ok(p) => p,
                        Err(_) => return s.fail(exp_at, format!("exponent '{digits}' is out of range")),
                    }
                } else {
                    1
                };
                exps[idx] = match exps[idx].checked_add(power) {
                    Some(e) => e,
                    None => return s.fail(start, "total exponent overflows"),
                };
            }
            Some(c) => {
                return s.fail(s.pos, format!("expected a coefficient or a variable, found '{c}'"));
            }
            None => {
                return s.fail(s.pos, "expected a coefficient or a variable, found end of input");
            }
        }
        s.skip_ws();
        if s.peek() == Some('*') {
            s.bump();
        } else {
            break;
        }
    }
    Ok(Poly::monomial(s.nvars, exps, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str, nvars: usize) {
        let p = parse_poly(text, nvars).expect("parses");
        assert_eq!(p.to_string(), text, "display is canonical for {text:?}");
        let again = parse_poly(&p.to_string(), nvars).expect("reparses");
        assert_eq!(p, again);
    }

    #[test]
    fn canonical_forms_round_trip() {
        for text in ["0", "x", "-x", "z + y", "2*x^2*y", "-2 + x", "1/2*x", "3"] {
            roundtrip(text, 3);
        }
        for text in ["-y^4 + x^4", "x*y", "-2*y^3"] {
            roundtrip(text, 2);
        }
    }

    #[test]
    fn whitespace_and_coefficient_order_are_tolerated() {
        let a = parse_poly("  2 * x ^ 2  -  y*3 ", 3).expect("parses");
        let b = parse_poly("2*x^2 - 3*y", 3).expect("parses");
        assert_eq!(a, b);
        let c = parse_poly("x*2*x", 3).expect("parses");
        assert_eq!(c.to_string(), "2*x^2");
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_poly("0", 2).expect("parses").is_zero());
        assert!(parse_poly("x - x", 3).expect("parses").is_zero());
        assert!(parse_poly("0*x^5", 3).expect("parses").is_zero());
    }

    #[test]
    fn fractions_multiply_through() {
        let p = parse_poly("1/2*x*4", 3).expect("parses");
        assert_eq!(p.to_string(), "2*x");
    }

    #[test]
    fn error_positions_point_at_the_offender() {
        let e = parse_poly("x + w", 3).expect_err("unknown variable");
        assert_eq!(e.column, 5);
        assert!(e.message.contains("unknown variable 'w'"), "{}", e.message);

        let e = parse_poly("z", 2).expect_err("z needs three variables");
        assert!(e.message.contains("available: x, y"), "{}", e.message);

        let e = parse_poly("x^", 3).expect_err("missing exponent");
        assert_eq!(e.column, 3);

        let e = parse_poly("3/0", 3).expect_err("zero denominator");
        assert_eq!(e.column, 3);
        assert!(e.message.contains("zero denominator"));

        let e = parse_poly("x y", 3).expect_err("missing operator");
        assert_eq!(e.column, 3);
        assert!(e.message.contains("expected '+' or '-'"), "{}", e.message);

        let e = parse_poly("", 3).expect_err("empty");
        assert!(e.message.contains("empty polynomial"));

        let e = parse_poly("x + ", 3).expect_err("dangling sign");
        assert!(e.message.contains("end of input"));
    }
}
