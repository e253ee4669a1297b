use core::fmt::{self, Write};

use super::{Polynomial, Word};
use crate::C64;

/// Prints a nonnegative float without a sign on zero.
fn real(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    let v = if v == 0.0 { 0.0 } else { v };
    write!(f, "{v}")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if i > 0 {
                f.write_char('*')?;
            }
            write!(f, "x{}", l.var_index())?;
            if l.is_starred() {
                f.write_char('\'')?;
            }
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Splits `c` into a sign and a coefficient with nonnegative real part
/// (or, if purely imaginary, nonnegative imaginary part).
fn split_sign(c: C64) -> (bool, C64) {
    let negative = if c.re != 0.0 { c.re < 0.0 } else { c.im < 0.0 };
    if negative {
        (true, -c)
    } else {
        (false, c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_char('0');
        }
        for (k, (word, &coeff)) in self.terms().enumerate() {
            let (negative, c) = split_sign(coeff);
            match (k, negative) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit_coeff = c == C64::new(1.0, 0.0);
            if !(unit_coeff && !word.is_unit()) {
                if c.im == 0.0 {
                    real(f, c.re)?;
                } else {
                    f.write_char('(')?;
                    if c.re < 0.0 {
                        f.write_char('-')?;
                    }
                    real(f, c.re.abs())?;
                    f.write_char(if c.im < 0.0 { '-' } else { '+' })?;
                    real(f, c.im.abs())?;
                    f.write_str("i)")?;
                }
                if !word.is_unit() {
                    f.write_char('*')?;
                }
            }
            write!(f, "{word}")?;
        }
        Ok(())
    }
}
