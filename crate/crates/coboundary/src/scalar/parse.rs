//! Parser for scalar strings.
//!
//! Grammar (whitespace between tokens is ignored):
//!   expr  := term (('+' | '-') term)*
//!   term  := unary (('*' | '/') unary)*
//!   unary := '-' unary | power
//!   power := atom ('^' int)?
//!   atom  := uint | 'q' | 'z' uint | '(' expr ')'
//! Accepts every string Display produces and round-trips it to the same value.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclotomic::CycloRational;
use super::ratfunc::Scalar;

#[derive(Clone, Debug)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "scalar parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

pub(crate) fn parse_scalar(input: &str) -> Result<Scalar, ParseError> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(value)
}

// exponent and root-order bound; canonical strings stay far below it
const LIMIT: i64 = 10_000;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.bytes.get(self.pos) == Some(&b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let pos = self.pos;
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(ParseError { pos, msg: "division by zero".into() });
                }
                acc = &acc / &rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ParseError> {
        self.skip_ws();
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let neg = self.eat(b'-');
        let pos = self.pos;
        let mag = self.uint()?;
        if mag > LIMIT {
            return Err(ParseError { pos, msg: "exponent out of range".into() });
        }
        let k = if neg { -mag } else { mag };
        if base.is_zero() && k < 0 {
            return Err(ParseError { pos, msg: "zero to a negative power".into() });
        }
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<Scalar, ParseError> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(b'z') => {
                self.pos += 1;
                let pos = self.pos;
                let m = self.uint()?;
                if m < 1 || m > LIMIT {
                    return Err(ParseError { pos, msg: "root order out of range".into() });
                }
                Ok(Scalar::from_cyclo(CycloRational::root_of_unity(m as u32, 1)))
            }
            Some(d) if d.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().unwrap();
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            _ => Err(self.err("expected a number, q, zN, or '('")),
        }
    }

    /// Unsigned integer bounded by LIMIT (exponents, root orders).
    fn uint(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(ParseError { pos: start, msg: "expected digits".into() });
        }
        digits
            .parse::<i64>()
            .ok()
            .filter(|&v| v <= LIMIT)
            .ok_or_else(|| ParseError { pos: start, msg: "number out of range".into() })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(s: &str) {
        let v: Scalar = s.parse().unwrap();
        assert_eq!(v.to_string(), s, "canonical string should round-trip");
    }

    #[test]
    fn canonical_strings_round_trip() {
        for s in [
            "0",
            "1",
            "-1",
            "q",
            "q^2",
            "2*q",
            "(1)/(q)",
            "(-1 + q^2)/(q)",
            "(1 - q^2)/(q)",
            "1 + z3",
            "(1 + z3)*q",
            "-z4*q^2",
            "(2*q^2)/(1 + q^2)",
            "3/2*z8^3",
            "1/2",
        ] {
            roundtrip(s);
        }
    }

    #[test]
    fn equivalent_spellings_agree() {
        let a: Scalar = "q^-1".parse().unwrap();
        let b: Scalar = "(1)/(q)".parse().unwrap();
        assert_eq!(a, b);
        let z6: Scalar = "z6".parse().unwrap();
        assert_eq!(z6.to_string(), "1 + z3");
        let half: Scalar = "1/2".parse().unwrap();
        assert_eq!(half, Scalar::from_rational(BigRational::new(1.into(), 2.into())));
        let nested: Scalar = " ( q + 1 ) * ( q - 1 ) ".parse().unwrap();
        assert_eq!(nested, Scalar::q_pow(2) - Scalar::one());
    }

    #[test]
    fn errors_carry_positions() {
        assert!("q^".parse::<Scalar>().is_err());
        assert!("(1 + q".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("z0".parse::<Scalar>().is_err());
        assert!("q q".parse::<Scalar>().is_err());
        assert!("0^-1".parse::<Scalar>().is_err());
        let err = "1 + #".parse::<Scalar>().unwrap_err();
        assert_eq!(err.pos, 4);
    }
}
