//! Multivector expression text.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := coef | coef? blade
//! coef  := decimal | decimal 'i' | '(' ['-'] decimal ('+'|'-') decimal 'i' ')'
//! blade := 'e' digit+            one generator per digit, n <= 9
//!        | 'e{' idx (',' idx)* '}'
//! ```
//!
//! Decimals are `digits[.digits]` with no exponent (`1e5` is `1` times
//! `e5`). Blade indices are 1-based and strictly increasing. Whitespace may
//! separate tokens.

use std::fmt;

use cliffq::{Blade, FieldTag, Multivector, Scalar, Signature, MAX_GENERATORS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: {}", self.pos + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    /// Byte offset where the term starts.
    pub pos: usize,
    pub indices: Vec<usize>,
    pub coef: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    pub terms: Vec<Term>,
    /// Some coefficient was written with `i`.
    pub imaginary: bool,
}

impl Expression {
    pub fn field(&self) -> FieldTag {
        if self.imaginary {
            FieldTag::Complex
        } else {
            FieldTag::Real
        }
    }

    /// Builds the multivector in Cl(sig); `field` defaults to [`Expression::field`].
    pub fn compile(&self, sig: Signature, field: Option<FieldTag>) -> Result<Multivector, ParseError> {
        let field = field.unwrap_or(self.field());
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if let Some(i) = t.indices.iter().find(|i| **i > sig.n()) {
                return Err(ParseError {
                    pos: t.pos,
                    message: format!("generator e{i} does not exist for n = {}", sig.n()),
                });
            }
            if field == FieldTag::Real && t.coef.im != 0.0 {
                return Err(ParseError { pos: t.pos, message: "imaginary coefficient in a real multivector".into() });
            }
            let blade = Blade::from_indices(&t.indices).expect("indices validated by the parser");
            terms.push((blade, t.coef));
        }
        Multivector::from_terms(sig, field, terms).map_err(|e| ParseError { pos: 0, message: e.to_string() })
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_number(&self) -> bool {
        matches!(self.peek(), Some(b) if b.is_ascii_digit() || b == b'.')
    }

    fn decimal(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.eat(b'.') {
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let text = &self.src[start..self.pos];
        if !text.bytes().any(|b| b.is_ascii_digit()) {
            return self.err(start, "expected a number");
        }
        match text.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => self.err(start, format!("number `{text}` out of range")),
        }
    }

    /// Coefficient, if one starts here, and whether it used `i`.
    fn coef(&mut self) -> Result<Option<(Scalar, bool)>, ParseError> {
        if self.eat(b'(') {
            self.skip_ws();
            let negative = self.eat(b'-');
            self.skip_ws();
            let mut re = self.decimal()?;
            if negative {
                re = -re;
            }
            self.skip_ws();
            let sign = match self.peek() {
                Some(b'+') => 1.0,
                Some(b'-') => -1.0,
                _ => return self.err(self.pos, "expected `+` or `-` inside a complex coefficient"),
            };
            self.pos += 1;
            self.skip_ws();
            let im = sign * self.decimal()?;
            if !self.eat(b'i') {
                return self.err(self.pos, "expected `i` after the imaginary part");
            }
            self.skip_ws();
            if !self.eat(b')') {
                return self.err(self.pos, "expected `)`");
            }
            return Ok(Some((Scalar::new(re, im), true)));
        }
        if !self.starts_number() {
            return Ok(None);
        }
        let x = self.decimal()?;
        if self.eat(b'i') {
            Ok(Some((Scalar::new(0.0, x), true)))
        } else {
            Ok(Some((Scalar::new(x, 0.0), false)))
        }
    }

    fn blade(&mut self) -> Result<Vec<usize>, ParseError> {
        let start = self.pos;
        debug_assert_eq!(self.peek(), Some(b'e'));
        self.pos += 1;
        let mut indices = Vec::new();
        if self.eat(b'{') {
            loop {
                self.skip_ws();
                let at = self.pos;
                while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text = &self.src[at..self.pos];
                if text.is_empty() {
                    return self.err(at, "expected a generator index");
                }
                let idx = match text.parse::<usize>() {
                    Ok(i) if (1..=MAX_GENERATORS).contains(&i) => i,
                    _ => return self.err(at, format!("generator index must be in 1..={MAX_GENERATORS}")),
                };
                if indices.last().is_some_and(|last| *last >= idx) {
                    return self.err(at, "blade indices must be strictly increasing");
                }
                indices.push(idx);
                self.skip_ws();
                if self.eat(b',') {
                    continue;
                }
                if self.eat(b'}') {
                    break;
                }
                return self.err(self.pos, "expected `,` or `}`");
            }
        } else {
            while let Some(b) = self.peek().filter(u8::is_ascii_digit) {
                let idx = usize::from(b - b'0');
                if idx == 0 {
                    return self.err(self.pos, "generator indices start at 1");
                }
                if indices.last().is_some_and(|last| *last >= idx) {
                    return self.err(self.pos, "blade indices must be strictly increasing");
                }
                indices.push(idx);
                self.pos += 1;
            }
            if indices.is_empty() {
                return self.err(start, "expected generator digits after `e`");
            }
        }
        Ok(indices)
    }

    fn term(&mut self, negative: bool) -> Result<(Term, bool), ParseError> {
        let pos = self.pos;
        let coef = self.coef()?;
        self.skip_ws();
        let indices = if self.peek() == Some(b'e') {
            self.blade()?
        } else if coef.is_none() {
            return self.err(self.pos, "expected a coefficient or a blade");
        } else {
            Vec::new()
        };
        let (mut c, imaginary) = coef.unwrap_or((Scalar::new(1.0, 0.0), false));
        if negative {
            c = -c;
        }
        Ok((Term { pos, indices, coef: c }, imaginary))
    }
}

pub fn parse_expression(src: &str) -> Result<Expression, ParseError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut imaginary = false;
    p.skip_ws();
    if p.peek().is_none() {
        return p.err(0, "empty expression");
    }
    let mut negative = if p.eat(b'-') {
        true
    } else {
        p.eat(b'+');
        false
    };
    loop {
        p.skip_ws();
        let (term, imag) = p.term(negative)?;
        imaginary |= imag;
        terms.push(term);
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return p.err(p.pos, "expected `+`, `-` or end of input"),
        }
        p.pos += 1;
    }
    Ok(Expression { terms, imaginary })
}

/// Parses and compiles in one step.
pub fn parse_multivector(src: &str, sig: Signature, field: Option<FieldTag>) -> Result<Multivector, ParseError> {
    parse_expression(src)?.compile(sig, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn mv(src: &str, s: Signature) -> Multivector {
        parse_multivector(src, s, None).unwrap()
    }

    fn err(src: &str) -> ParseError {
        parse_expression(src).unwrap_err()
    }

    #[test]
    fn simple_terms() {
        let s = sig(4, 0);
        let u = mv("1 + e1234", s);
        assert_eq!(u.len(), 2);
        assert_eq!(u.to_string(), "1 + e1234");
        assert_eq!(mv("e1 + 2e12", sig(2, 0)).to_string(), "e1 + 2e12");
        assert_eq!(mv("-2e2", sig(3, 0)).to_string(), "-2e2");
        assert_eq!(mv("e1 - e1", s).to_string(), "0");
        assert_eq!(mv("0e1", s).to_string(), "0");
        assert_eq!(mv("  +3.5 e{1, 3}  ", s).to_string(), "3.5e13");
    }

    #[test]
    fn complex_coefficients() {
        let s = sig(1, 0);
        let u = mv("(0+1i)e1", s);
        assert_eq!(u.field(), FieldTag::Complex);
        assert_eq!(u.coefficient(Blade::generator(1)), Scalar::new(0.0, 1.0));
        assert_eq!(mv("2i", s).coefficient(Blade::IDENTITY), Scalar::new(0.0, 2.0));
        assert_eq!(mv("-(1.5-2i)e1", s).coefficient(Blade::generator(1)), Scalar::new(-1.5, 2.0));
        assert_eq!(mv("(-0+1i)", s).coefficient(Blade::IDENTITY).re.to_bits(), (-0.0f64).to_bits());
        assert_eq!(mv("e1", s).field(), FieldTag::Real);
    }

    #[test]
    fn wide_blades() {
        let s = sig(6, 6);
        let u = mv("e{2,10,12}", s);
        assert_eq!(u.terms().next().unwrap().0.indices(), vec![2, 10, 12]);
        assert_eq!(u.to_string(), "e{2,10,12}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(err("e21").pos, 2);
        assert!(err("e21").message.contains("strictly increasing"));
        assert_eq!(err("e{1,1}").pos, 4);
        assert_eq!(err("e0").pos, 1);
        assert_eq!(err("").pos, 0);
        assert_eq!(err("e").pos, 0);
        assert_eq!(err("1 + ").pos, 4);
        assert_eq!(err("2 * e1").pos, 2);
        assert_eq!(err("(1+2)e1").pos, 4);
        assert_eq!(err("e{13}").pos, 2);
        assert_eq!(err("e{1,}").pos, 4);
        assert_eq!(err(".").pos, 0);
        assert!(parse_expression("1e5").is_ok());
    }

    #[test]
    fn validation_against_signature() {
        let e = parse_multivector("e13", sig(2, 0), None).unwrap_err();
        assert!(e.message.contains("e3"));
        let e = parse_multivector("2i", sig(2, 0), Some(FieldTag::Real)).unwrap_err();
        assert!(e.message.contains("imaginary"));
    }

    #[test]
    fn huge_numbers() {
        let text = format!("{}e1", "9".repeat(400));
        assert!(parse_expression(&text).is_err());
        let u = mv(&format!("{}e1", f64::MAX), sig(1, 0));
        assert_eq!(u.coefficient(Blade::generator(1)).re, f64::MAX);
    }
}
