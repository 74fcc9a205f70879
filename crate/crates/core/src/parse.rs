//! Transfer-function text syntax.
//!
//! ```text
//! expr  := side ("/" side)?
//! side  := "(" poly ")" | poly
//! poly  := "-"? term (("+" | "-") term)*
//! term  := coeff? "s" ("^" int)? | coeff
//! ```
//!
//! Whitespace is ignored and coefficients are decimal literals. Positions in
//! errors are byte offsets into the original text.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::xfer::TransferFunction;

/// Parses text such as `"(2s+1)/(s+1)"`, `"1/(s^2+2s+1)"` or `"3"`.
pub fn parse_tf_text(text: &str) -> Result<TransferFunction> {
    let mut p = Parser::new(text);
    let num = p.side()?;
    let den = if p.eat('/') {
        let at = p.pos();
        let den = p.side()?;
        if den.is_zero() {
            return Err(Error::parse(at, "denominator is zero"));
        }
        den
    } else {
        Polynomial::constant(1.0)
    };
    p.expect_end()?;
    TransferFunction::new(num, den)
}

/// Parses a comma-separated coefficient list in descending powers.
pub fn parse_coeff_list(text: &str) -> Result<Vec<f64>> {
    let mut offset = 0;
    let mut out = Vec::new();
    for part in text.split(',') {
        let trimmed = part.trim();
        let value = trimmed
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::parse(offset, format!("not a number: `{trimmed}`")))?;
        out.push(value);
        offset += part.len() + 1;
    }
    Ok(out)
}

struct Parser {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            idx: 0,
            len: text.len(),
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(i, _)| i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected `{c}`")))
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("expected end of input")),
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        match self.peek() {
            Some(c) => Error::parse(self.pos(), format!("{what}, found `{c}`")),
            None => Error::parse(self.pos(), format!("{what}, found end of input")),
        }
    }

    fn side(&mut self) -> Result<Polynomial> {
        if self.eat('(') {
            let p = self.poly()?;
            self.expect(')')?;
            Ok(p)
        } else {
            self.poly()
        }
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut terms: Vec<(usize, f64)> = Vec::new();
        let mut sign = if self.eat('-') { -1.0 } else { 1.0 };
        loop {
            let (power, coeff) = self.term()?;
            terms.push((power, sign * coeff));
            if self.eat('+') {
                sign = 1.0;
            } else if self.eat('-') {
                sign = -1.0;
            } else {
                break;
            }
        }
        let degree = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![0.0; degree + 1];
        for (power, c) in terms {
            coeffs[degree - power] += c;
        }
        Ok(Polynomial::new(coeffs))
    }

    fn term(&mut self) -> Result<(usize, f64)> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => Some(self.number()?),
            Some('s') => None,
            _ => return Err(self.unexpected("expected a coefficient or `s`")),
        };
        if !self.eat('s') {
            return Ok((0, coeff.expect("digits were consumed")));
        }
        let power = if self.eat('^') { self.integer()? } else { 1 };
        Ok((power, coeff.unwrap_or(1.0)))
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos();
        let mut lit = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '.' {
                lit.push(c);
                self.idx += 1;
            } else {
                break;
            }
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            lit.push('e');
            self.idx += 1;
            if let Some(c @ ('+' | '-')) = self.peek() {
                lit.push(c);
                self.idx += 1;
            }
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                lit.push(c);
                self.idx += 1;
            }
        }
        lit.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::parse(start, format!("malformed number `{lit}`")))
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.idx += 1;
        }
        digits
            .parse::<usize>()
            .ok()
            .filter(|&p| p <= 64)
            .ok_or_else(|| Error::parse(start, "expected an exponent between 0 and 64"))
    }
}
