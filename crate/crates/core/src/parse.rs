//! A small recursive-descent parser for polynomial input strings like
//! `T^2+1` or `2T^3+T+2`, with exact error positions. Coefficients are
//! integers mod p for prime fields and bracketed digit vectors like
//! `[1,2]` for proper extensions.

use std::sync::Arc;

use crate::algebra::field::{FieldCtx, FqElem};
use crate::algebra::ratfn::RatFn;
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ctx: Arc<FieldCtx>,
    var: u8,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| Error::Parse { pos: start, msg: "integer too large".into() })
    }

    /// `123` or `[c0,c1,...]`
    fn coefficient(&mut self) -> Result<FqElem> {
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let mut digits = Vec::new();
            loop {
                self.skip_ws();
                digits.push(self.integer()?);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected ',' or ']' in coefficient vector"),
                }
            }
            self.ctx.from_coeffs(&digits)
        } else {
            let n = self.integer()?;
            Ok(self.ctx.from_u64(n))
        }
    }

    /// coefficient and/or variable power: `2`, `T`, `T^3`, `2T^3`, `2*T^3`,
    /// `[1,2]T`
    fn term(&mut self) -> Result<UPoly> {
        self.skip_ws();
        let mut coeff = None;
        if self.peek().map_or(false, |c| c.is_ascii_digit() || c == b'[') {
            coeff = Some(self.coefficient()?);
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            }
        }
        let mut exp = 0usize;
        if self.peek() == Some(self.var) {
            self.pos += 1;
            exp = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let e = self.integer()?;
                if e > 4096 {
                    return self.err("exponent too large");
                }
                exp = e as usize;
            }
        } else if coeff.is_none() {
            return self.err(format!("expected a coefficient or '{}'", self.var as char));
        }
        let c = coeff.unwrap_or_else(|| self.ctx.one());
        Ok(UPoly::monomial(c, exp))
    }

    fn poly(&mut self) -> Result<UPoly> {
        self.skip_ws();
        let mut negate = false;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            negate = self.peek() == Some(b'-');
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                None => return Ok(acc),
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
        }
    }
}

/// Parse a polynomial in the given variable over F_q.
pub fn parse_upoly_var(ctx: &Arc<FieldCtx>, input: &str, var: char) -> Result<UPoly> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0, ctx: Arc::clone(ctx), var: var as u8 };
    p.poly()
}

/// Parse a polynomial in T over F_q.
pub fn parse_upoly(ctx: &Arc<FieldCtx>, input: &str) -> Result<UPoly> {
    parse_upoly_var(ctx, input, 'T')
}

/// Parse a rational function `num` or `num/den` in T.
pub fn parse_ratfn(ctx: &Arc<FieldCtx>, input: &str) -> Result<RatFn> {
    match input.split_once('/') {
        None => Ok(RatFn::from_poly(parse_upoly(ctx, input)?)),
        Some((n, d)) => {
            let num = parse_upoly(ctx, n.trim_end_matches(|c| c == ' '))?;
            let den = parse_upoly(ctx, d.trim_start_matches(|c| c == ' '))?;
            RatFn::new(num, den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::new(3, 1).unwrap()
    }

    #[test]
    fn parse_examples() {
        let ctx = f3();
        assert_eq!(parse_upoly(&ctx, "T^2+1").unwrap(), UPoly::from_ints(&ctx, &[1, 0, 1]));
        assert_eq!(parse_upoly(&ctx, "2T^3+T+2").unwrap(), UPoly::from_ints(&ctx, &[2, 1, 0, 2]));
        assert_eq!(parse_upoly(&ctx, "2*T^3 + T + 2").unwrap(), UPoly::from_ints(&ctx, &[2, 1, 0, 2]));
        assert_eq!(parse_upoly(&ctx, "-T+1").unwrap(), UPoly::from_ints(&ctx, &[1, 2]));
        assert_eq!(parse_upoly(&ctx, "5").unwrap(), UPoly::from_ints(&ctx, &[2]));
        assert_eq!(parse_upoly(&ctx, "T^2-1").unwrap(), UPoly::from_ints(&ctx, &[2, 0, 1]));
    }

    #[test]
    fn roundtrip_display() {
        let ctx = f3();
        for ints in [[1i64, 0, 1], [2, 1, 2], [0, 0, 2]] {
            let p = UPoly::from_ints(&ctx, &ints);
            assert_eq!(parse_upoly(&ctx, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn extension_coefficients() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let p = parse_upoly(&f9, "[1,2]T^2+[0,1]").unwrap();
        assert_eq!(p.coeff(2), f9.from_coeffs(&[1, 2]).unwrap());
        assert_eq!(p.coeff(0), f9.from_coeffs(&[0, 1]).unwrap());
    }

    #[test]
    fn error_positions() {
        let ctx = f3();
        match parse_upoly(&ctx, "T^2+%") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_upoly(&ctx, "").is_err());
        assert!(parse_upoly(&ctx, "T^").is_err());
        assert!(parse_upoly(&ctx, "x+1").is_err());
    }

    #[test]
    fn ratfn_parsing() {
        let ctx = f3();
        let r = parse_ratfn(&ctx, "T^2+1/T").unwrap();
        // the slash splits the whole strings: (T^2+1)/T
        assert_eq!(r.num(), &UPoly::from_ints(&ctx, &[1, 0, 1]));
        assert_eq!(r.den(), &UPoly::from_ints(&ctx, &[0, 1]));
        assert!(parse_ratfn(&ctx, "1/0").is_err());
    }
}
