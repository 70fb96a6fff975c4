//! Parser for coefficient expressions such as `1 + 0.5*sin(2*t + 0.3) - 0.1*t^2`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := NUM
//!        | [NUM '*'] 't' ['^' (1|2|3)]
//!        | [NUM '*'] ('cos'|'sin') '(' [NUM '*'] 't' [('+'|'-') NUM] ')'
//! NUM   := ['+'|'-'] digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
//! ```

use std::fmt;

use coherence_core::dynamics::{CoefficientFn, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: expected {}", self.offset, self.expected)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, expected: expected.to_string() })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(&format!("`{token}`"))
        }
    }

    fn at_number(&mut self) -> bool {
        let rest = &self.src.as_bytes()[self.pos..];
        match rest {
            [c, ..] if c.is_ascii_digit() || *c == b'.' => true,
            [b'+' | b'-', c, ..] => c.is_ascii_digit() || *c == b'.',
            _ => false,
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if matches!(bytes.get(end), Some(b'+' | b'-')) {
            end += 1;
        }
        let digits = |mut i: usize| {
            while bytes.get(i).is_some_and(u8::is_ascii_digit) {
                i += 1;
            }
            i
        };
        let int_end = digits(end);
        let mut mantissa_digits = int_end - end;
        end = int_end;
        if bytes.get(end) == Some(&b'.') {
            let frac_end = digits(end + 1);
            mantissa_digits += frac_end - end - 1;
            end = frac_end;
        }
        if mantissa_digits == 0 {
            return self.error("a number");
        }
        if matches!(bytes.get(end), Some(b'e' | b'E')) {
            let mut e = end + 1;
            if matches!(bytes.get(e), Some(b'+' | b'-')) {
                e += 1;
            }
            let exp_end = digits(e);
            if exp_end > e {
                end = exp_end;
            }
        }
        self.pos = end;
        self.src[start..end]
            .parse()
            .map_err(|_| ParseError { offset: start, expected: "a number".into() })
    }

    fn term(&mut self, sign: f64) -> Result<Term, ParseError> {
        self.skip_ws();
        let (coef, starred) = if self.at_number() {
            let value = self.number()?;
            if !self.eat("*") {
                return Ok(Term::Const(sign * value));
            }
            (sign * value, true)
        } else {
            (sign, false)
        };
        if self.eat("cos") {
            let (freq, phase) = self.trig_argument()?;
            Ok(Term::Cos { amp: coef, freq, phase })
        } else if self.eat("sin") {
            let (freq, phase) = self.trig_argument()?;
            Ok(Term::Sin { amp: coef, freq, phase })
        } else if self.eat("t") {
            let power = if self.eat("^") {
                self.skip_ws();
                match self.src.as_bytes().get(self.pos) {
                    Some(d @ b'1'..=b'3') => {
                        self.pos += 1;
                        d - b'0'
                    }
                    _ => return self.error("exponent 1, 2 or 3"),
                }
            } else {
                1
            };
            Ok(Term::Power { coef, power })
        } else if starred {
            self.error("`t`, `cos` or `sin`")
        } else {
            self.error("a number, `t`, `cos` or `sin`")
        }
    }

    /// `'(' [NUM '*'] 't' [('+'|'-') NUM] ')'`
    fn trig_argument(&mut self) -> Result<(f64, f64), ParseError> {
        self.expect("(")?;
        self.skip_ws();
        if !self.at_number() && !self.src[self.pos..].starts_with('t') {
            return self.error("a number or `t`");
        }
        let freq = if self.at_number() {
            let value = self.number()?;
            self.expect("*")?;
            value
        } else {
            1.0
        };
        self.expect("t")?;
        let phase = if self.eat("+") {
            self.number()?
        } else if self.eat("-") {
            -self.number()?
        } else {
            0.0
        };
        self.expect(")")?;
        Ok((freq, phase))
    }
}

/// Parses a coefficient expression into a [`CoefficientFn`].
pub fn parse_coefficient_expr(text: &str) -> Result<CoefficientFn, ParseError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let mut terms = Vec::new();
    if cur.peek().is_none() {
        return cur.error("an expression");
    }
    terms.push(cur.term(1.0)?);
    loop {
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                terms.push(cur.term(1.0)?);
            }
            Some(b'-') => {
                cur.pos += 1;
                terms.push(cur.term(-1.0)?);
            }
            Some(_) => return cur.error("`+`, `-` or end of input"),
        }
    }
    Ok(CoefficientFn::new(terms))
}
