//! Infix polynomial literals such as `x^2 - t` or `3*s*t + (t - 1)^2`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary | primary)*      juxtaposition multiplies
//! unary  := "-" unary | power
//! power  := primary ("^" integer)?
//! primary:= integer | identifier | "(" expr ")"
//! ```
//!
//! Division is only allowed by nonzero constants.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Field, KernelError, MultiPoly};

pub struct PolyParser<'a> {
    field: Field,
    names: &'a [String],
    aliases: Option<&'a HashMap<String, MultiPoly>>,
    src: &'a [u8],
    pos: usize,
}

/// Parses `src` in the ring `field[names]`.
pub fn parse_poly(src: &str, field: Field, names: &[String]) -> Result<MultiPoly, KernelError> {
    PolyParser::new(src, field, names, None).parse()
}

/// Like [`parse_poly`], with extra identifiers bound to fixed polynomials.
pub fn parse_poly_with_aliases(
    src: &str,
    field: Field,
    names: &[String],
    aliases: &HashMap<String, MultiPoly>,
) -> Result<MultiPoly, KernelError> {
    PolyParser::new(src, field, names, Some(aliases)).parse()
}

impl<'a> PolyParser<'a> {
    pub fn new(
        src: &'a str,
        field: Field,
        names: &'a [String],
        aliases: Option<&'a HashMap<String, MultiPoly>>,
    ) -> Self {
        PolyParser { field, names, aliases, src: src.as_bytes(), pos: 0 }
    }

    pub fn parse(mut self) -> Result<MultiPoly, KernelError> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn err(&self, msg: &str) -> KernelError {
        KernelError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MultiPoly, KernelError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, KernelError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let inv = d
                        .constant_value()
                        .and_then(|c| c.inv())
                        .ok_or(KernelError::Parse { pos: at, msg: "division by a non-constant or zero".into() })?;
                    acc = acc.scale(&inv);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, KernelError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, KernelError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, KernelError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn primary(&mut self) -> Result<MultiPoly, KernelError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(MultiPoly::constant(self.field.from_bigint(&n), self.nvars()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if let Some(i) = self.names.iter().position(|n| n == name) {
                    return Ok(MultiPoly::var(self.field, self.nvars(), i));
                }
                if let Some(p) = self.aliases.and_then(|a| a.get(name)) {
                    return Ok(p.clone());
                }
                self.pos = start;
                Err(self.err(&format!("unknown variable '{name}'")))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
