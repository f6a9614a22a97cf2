//! Recursive-descent reader for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'z' k | 'zb' k | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::Poly;
use crate::error::{Error, Result};
use crate::exact::Q;

/// Parses `src` as a polynomial in `z1..zn, zb1..zbn`.
pub fn parse_poly(src: &str, n: usize) -> Result<Poly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, n };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected character {:?}", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let e = self.digits()?;
        let e: u32 = e.parse().map_err(|_| Error::Parse { pos: start, msg: "exponent too large".into() })?;
        let mut out = Poly::one(self.n);
        for _ in 0..e {
            out = &out * &base;
        }
        Ok(out)
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    den = self.digits()?.parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
                    }
                }
                Ok(Poly::constant(self.n, Q::new(num, den)))
            }
            Some(b'z') => {
                let start = self.pos;
                self.pos += 1;
                let conj = self.src.get(self.pos) == Some(&b'b');
                if conj {
                    self.pos += 1;
                }
                if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err("expected a variable index"));
                }
                let k: usize = self.digits()?.parse().map_err(|_| Error::Parse { pos: start, msg: "index too large".into() })?;
                let name = format!("{}{}", if conj { "zb" } else { "z" }, k);
                if k == 0 || k > self.n {
                    return Err(Error::IndexOutOfRange { pos: start, name, n: self.n });
                }
                Ok(if conj { Poly::zb(self.n, k) } else { Poly::z(self.n, k) })
            }
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn moment_component() {
        let p = parse_poly("z1*zb1 - z2*zb2", 2).unwrap();
        assert_eq!(p.render(), "z1*zb1 - z2*zb2");
    }

    #[test]
    fn binomial_expansion_with_rational_literal() {
        let p = parse_poly("3/2*(z1 + zb1)^2", 1).unwrap();
        // (3/2)(z1^2 + 2 z1 zb1 + zb1^2)
        assert_eq!(p.render(), "3/2*z1^2 + 3*z1*zb1 + 3/2*zb1^2");
    }

    #[test]
    fn index_out_of_range() {
        let err = parse_poly("z3", 2).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { pos: 0, .. }), "{err:?}");
        assert!(matches!(parse_poly("zb0", 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_poly("z1 + * z2", 2), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_poly("(z1", 2), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("z1 z2", 2), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("1/0", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("", 2), Err(Error::Parse { pos: 0, .. })));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let n = 2;
        prop::collection::vec((prop::collection::vec(0u32..3, 4), -5i64..=5, 1i64..=4), 0..6).prop_map(move |ts| {
            Poly::from_terms(
                n,
                ts.into_iter().map(|(e, p, q)| (super::super::Monomial::from_exponents(e), Q::new(p.into(), q.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(p in arb_poly()) {
            let back = parse_poly(&p.render(), 2).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
