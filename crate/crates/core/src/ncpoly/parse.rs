use alloc::vec::Vec;

use super::{Letter, Polynomial, Word};
use crate::{Error, ParseError, ParseErrorKind, Result, C64};

/// Parses `text` as a polynomial in `m` variables.
pub fn parse(text: &str, m: usize) -> Result<Polynomial> {
    if m == 0 {
        return Err(Error::InvalidParameter("number of variables must be positive"));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        num_vars: m,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error(ParseErrorKind::EmptyInput).into());
    }
    let mut poly = Polynomial::zero(m)?;
    let mut sign = match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            -1.0
        }
        Some(b'+') => {
            p.pos += 1;
            1.0
        }
        _ => 1.0,
    };
    loop {
        let (coeff, word) = p.term()?;
        poly.add_term(word, coeff * sign)?;
        p.skip_ws();
        sign = match p.peek() {
            None => break,
            Some(b'+') => 1.0,
            Some(b'-') => -1.0,
            Some(c) => return Err(p.error(ParseErrorKind::UnexpectedChar(c as char)).into()),
        };
        p.pos += 1;
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&c) => self.error(ParseErrorKind::UnexpectedChar(c as char)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn term(&mut self) -> Result<(C64, Word), ParseError> {
        let mut letters = Vec::new();
        let coeff = match self.peek() {
            Some(b'x') => {
                self.factor(&mut letters)?;
                C64::new(1.0, 0.0)
            }
            Some(c) if c == b'(' || c == b'.' || c.is_ascii_digit() => {
                let c = self.coefficient()?;
                if self.peek() != Some(b'*') {
                    return Ok((c, Word::unit()));
                }
                self.pos += 1;
                self.factor(&mut letters)?;
                c
            }
            _ => return Err(self.unexpected()),
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut letters)?;
        }
        Ok((coeff, Word::new(letters)))
    }

    fn factor(&mut self, out: &mut Vec<Letter>) -> Result<(), ParseError> {
        self.expect(b'x')?;
        let start = self.pos;
        let var = self.posint()?;
        if var == 0 {
            return Err(ParseError {
                position: start,
                kind: ParseErrorKind::BadNumber,
            });
        }
        if var > self.num_vars {
            return Err(ParseError {
                position: start,
                kind: ParseErrorKind::VariableOutOfRange {
                    index: var,
                    num_vars: self.num_vars,
                },
            });
        }
        let starred = if self.peek() == Some(b'\'') {
            self.pos += 1;
            true
        } else {
            false
        };
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let k = self.posint()?;
            if k == 0 {
                return Err(ParseError {
                    position: at,
                    kind: ParseErrorKind::BadExponent,
                });
            }
            k
        } else {
            1
        };
        out.extend(core::iter::repeat_n(Letter::new(var, starred), power));
        Ok(())
    }

    /// Unsigned decimal integer; callers reject zero where needed.
    fn posint(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v: usize = digits.parse().map_err(|_| ParseError {
            position: start,
            kind: ParseErrorKind::BadNumber,
        })?;
        Ok(v)
    }

    fn real(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let s = self.src;
        let digits = |mut i: usize| {
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            i
        };
        let mut i = digits(start);
        let int_len = i - start;
        let mut frac_len = 0;
        if i < s.len() && s[i] == b'.' {
            let j = digits(i + 1);
            frac_len = j - i - 1;
            i = j;
        }
        if int_len == 0 && frac_len == 0 {
            return Err(ParseError {
                position: start,
                kind: ParseErrorKind::BadNumber,
            });
        }
        if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
            let mut j = i + 1;
            if j < s.len() && (s[j] == b'+' || s[j] == b'-') {
                j += 1;
            }
            let k = digits(j);
            if k == j {
                return Err(ParseError {
                    position: i,
                    kind: ParseErrorKind::BadNumber,
                });
            }
            i = k;
        }
        self.pos = i;
        let text = core::str::from_utf8(&s[start..i]).expect("ascii number");
        let v: f64 = text.parse().map_err(|_| ParseError {
            position: start,
            kind: ParseErrorKind::BadNumber,
        })?;
        if !v.is_finite() {
            return Err(ParseError {
                position: start,
                kind: ParseErrorKind::BadNumber,
            });
        }
        Ok(v)
    }

    fn coefficient(&mut self) -> Result<C64, ParseError> {
        if self.peek() != Some(b'(') {
            return Ok(C64::new(self.real()?, 0.0));
        }
        self.pos += 1;
        let re_sign = if self.peek() == Some(b'-') {
            self.pos += 1;
            -1.0
        } else {
            1.0
        };
        let re = re_sign * self.real()?;
        let im_sign = match self.peek() {
            Some(b'+') => 1.0,
            Some(b'-') => -1.0,
            _ => return Err(self.unexpected()),
        };
        self.pos += 1;
        let im = im_sign * self.real()?;
        self.expect(b'i')?;
        self.expect(b')')?;
        Ok(C64::new(re, im))
    }
}
