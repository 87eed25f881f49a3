//! Text syntax for rationals and polynomials.
//!
//! Grammar (no implicit multiplication, no parentheses):
//!
//! ```text
//! poly   := [ '-' ] term { ('+' | '-') term }
//! term   := factor { '*' factor }
//! factor := atom [ '^' uint ]
//! atom   := rational | 'x' uint        (variables are x1, x2, ...)
//! rational := int [ '/' uint ]
//! ```
//!
//! Errors report the byte position of the offending token.

use num_bigint::BigInt;

use crate::poly::Poly;
use crate::rat::Rat;

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError {
        pos,
        msg: msg.into(),
    })
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.bytes.len()
    }

    /// Reads a nonempty decimal digit run as a BigInt.
    fn digits(&mut self, what: &str) -> Result<BigInt, SyntaxError> {
        let start = self.pos;
        while self.peek().map_or(false, |b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return err(start, format!("expected {what}"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn uint(&mut self, what: &str) -> Result<u32, SyntaxError> {
        let start = self.pos;
        let n = self.digits(what)?;
        u32::try_from(&n).map_err(|_| SyntaxError {
            pos: start,
            msg: format!("{what} out of range"),
        })
    }
}

/// Parses `p` or `p/q` with optional leading sign. Rejects `q = 0`.
pub fn parse_rat(s: &str) -> Result<Rat, SyntaxError> {
    let mut cur = Cursor::new(s);
    cur.skip_ws();
    let r = rational(&mut cur)?;
    if !cur.at_end() {
        return err(cur.pos, "unexpected trailing input");
    }
    Ok(r)
}

fn rational(cur: &mut Cursor) -> Result<Rat, SyntaxError> {
    let mut sign = BigInt::from(1);
    if cur.peek() == Some(b'-') {
        cur.bump();
        sign = BigInt::from(-1);
    } else if cur.peek() == Some(b'+') {
        cur.bump();
    }
    let num = cur.digits("numerator")? * sign;
    if cur.peek() == Some(b'/') {
        cur.bump();
        let den_pos = cur.pos;
        let den = cur.digits("denominator")?;
        Rat::from_big(num, den).ok_or(SyntaxError {
            pos: den_pos,
            msg: "denominator is zero".into(),
        })
    } else {
        Ok(Rat::from_big(num, BigInt::from(1)).unwrap())
    }
}

/// Parses the polynomial syntax, e.g. `3/2*x1^2*x2 - x3`.
pub fn parse_poly(s: &str) -> Result<Poly, SyntaxError> {
    let mut cur = Cursor::new(s);
    cur.skip_ws();
    if cur.peek().is_none() {
        return err(0, "empty polynomial");
    }
    let mut acc = Poly::zero();
    let mut negate = false;
    if cur.peek() == Some(b'-') {
        cur.bump();
        negate = true;
    } else if cur.peek() == Some(b'+') {
        cur.bump();
    }
    loop {
        let t = term(&mut cur)?;
        acc = if negate { &acc - &t } else { &acc + &t };
        cur.skip_ws();
        match cur.peek() {
            None => return Ok(acc),
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            Some(c) => {
                return err(cur.pos, format!("expected '+' or '-', found '{}'", c as char))
            }
        }
        cur.skip_ws();
    }
}

fn term(cur: &mut Cursor) -> Result<Poly, SyntaxError> {
    cur.skip_ws();
    let mut acc = factor(cur)?;
    loop {
        cur.skip_ws();
        if cur.peek() == Some(b'*') {
            cur.bump();
            cur.skip_ws();
            let f = factor(cur)?;
            acc = &acc * &f;
        } else {
            return Ok(acc);
        }
    }
}

fn factor(cur: &mut Cursor) -> Result<Poly, SyntaxError> {
    let base_pos = cur.pos;
    let base = match cur.peek() {
        Some(b'x') => {
            cur.bump();
            let idx_pos = cur.pos;
            let idx = cur.uint("variable index")?;
            if idx == 0 {
                return err(idx_pos, "variable indices start at x1");
            }
            Poly::var((idx - 1) as usize)
        }
        Some(c) if c.is_ascii_digit() || c == b'-' || c == b'+' => {
            Poly::constant(rational(cur)?)
        }
        Some(c) => return err(base_pos, format!("expected term, found '{}'", c as char)),
        None => return err(base_pos, "expected term, found end of input"),
    };
    if cur.peek() == Some(b'^') {
        cur.bump();
        let e = cur.uint("exponent")?;
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rat("3/2").unwrap(), Rat::new(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), Rat::from_int(-7));
        assert_eq!(parse_rat(" 4/6 ").unwrap(), Rat::new(2, 3));
        let e = parse_rat("1/0").unwrap_err();
        assert_eq!(e.msg, "denominator is zero");
        assert_eq!(e.pos, 2);
        assert!(parse_rat("1/2x").is_err());
    }

    #[test]
    fn poly_example_from_syntax() {
        let p = parse_poly("3/2*x1^2*x2 - x3").unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x3");
        assert_eq!(p.total_degree(), 3);
        assert_eq!(p.max_var(), Some(2));
    }

    #[test]
    fn dangling_caret_reports_position() {
        let e = parse_poly("x1^").unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(e.msg.contains("exponent"));
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(parse_poly("2x1").is_err());
        assert!(parse_poly("x1 x2").is_err());
    }

    #[test]
    fn signs_and_constants() {
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert_eq!(parse_poly("-x1 + 2").unwrap().to_string(), "-x1 + 2");
        assert_eq!(
            parse_poly("x1 - -1*x2").unwrap().to_string(),
            "x1 + x2"
        );
        assert!(parse_poly("x0").is_err());
        assert!(parse_poly("").is_err());
    }
}
