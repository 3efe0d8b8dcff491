//! Text syntax for scalars and base-algebra elements.
//!
//! Grammar (all numbers exact):
//!
//! ```text
//!   expr   := term (('+' | '-') term)*
//!   term   := factor (('*' | '/') factor)*
//!   factor := '-' factor | atom ('^' exponent)?
//!   atom   := integer | ident | '(' expr ')'
//!   ident  := 'q' | 'p' | 't' | 't1' .. 't9'
//! ```
//!
//! Division requires a scalar-valued divisor.  Negative exponents are legal
//! on scalars and, for Laurent algebras, on variable monomials.

use crate::scalar::Scalar;

use super::{AElement, BaseAlgebra};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

/// Parse a scalar expression (parameters and rationals only).
pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    let v = Parser::new(src, None).run()?;
    match v {
        Val::S(s) => Ok(s),
        Val::A(_) => err(0, "expected a scalar, found an algebra element"),
    }
}

/// Parse an element of the given base algebra.
pub fn parse_aelement(src: &str, alg: &BaseAlgebra) -> Result<AElement, ParseError> {
    let v = Parser::new(src, Some(alg)).run()?;
    Ok(match v {
        Val::A(a) => a,
        Val::S(s) => AElement::constant(alg.nvars(), s),
    })
}

#[derive(Clone, Debug)]
enum Val {
    S(Scalar),
    A(AElement),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alg: Option<&'a BaseAlgebra>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, alg: Option<&'a BaseAlgebra>) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            alg,
        }
    }

    fn run(mut self) -> Result<Val, ParseError> {
        let v = self.expr()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return err(self.pos, "trailing input");
        }
        Ok(v)
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

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.add(acc, rhs)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let rhs = self.negate(rhs);
                    acc = self.add(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = self.mul(acc, rhs)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.factor()?;
                    acc = self.divide(acc, rhs, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Val, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.factor()?;
            return Ok(self.negate(v));
        }
        let mut base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let n = self.integer()?;
            base = self.power(base, n, at)?;
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut s = String::new();
        if self.src.get(self.pos) == Some(&b'-') {
            s.push('-');
            self.pos += 1;
        }
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c as char);
                self.pos += 1;
            } else {
                break;
            }
        }
        if s.is_empty() || s == "-" {
            return err(start, "expected an integer");
        }
        s.parse::<i64>()
            .map_err(|_| ParseError {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Val::S(Scalar::from_i64(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(c) => err(self.pos, format!("unexpected character '{}'", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }

    fn ident(&mut self) -> Result<Val, ParseError> {
        let start = self.pos;
        let mut name = String::new();
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == b'_' {
                name.push(c as char);
                self.pos += 1;
            } else {
                break;
            }
        }
        match name.as_str() {
            "q" => return Ok(Val::S(Scalar::param_q())),
            "p" => return Ok(Val::S(Scalar::param_p())),
            _ => {}
        }
        let alg = match self.alg {
            Some(a) => a,
            None => return err(start, format!("unknown parameter '{}'", name)),
        };
        let n = alg.nvars();
        if name == "t" {
            if n == 1 {
                return Ok(Val::A(AElement::var(1, 0)));
            }
            return err(start, "use t1..tN for a multivariate algebra");
        }
        if let Some(num) = name.strip_prefix('t') {
            if let Ok(k) = num.parse::<usize>() {
                if k >= 1 && k <= n {
                    return Ok(Val::A(AElement::var(n, k - 1)));
                }
                return err(start, format!("variable {} out of range (v = {})", name, n));
            }
        }
        err(start, format!("unknown identifier '{}'", name))
    }

    fn nvars(&self) -> usize {
        self.alg.map(|a| a.nvars()).unwrap_or(1)
    }

    fn promote(&self, v: Val) -> AElement {
        match v {
            Val::A(a) => a,
            Val::S(s) => AElement::constant(self.nvars(), s),
        }
    }

    fn add(&self, a: Val, b: Val) -> Result<Val, ParseError> {
        Ok(match (a, b) {
            (Val::S(x), Val::S(y)) => Val::S(x.add(&y)),
            (x, y) => Val::A(self.promote(x).add(&self.promote(y))),
        })
    }

    fn negate(&self, a: Val) -> Val {
        match a {
            Val::S(x) => Val::S(x.neg()),
            Val::A(x) => Val::A(x.neg()),
        }
    }

    fn mul(&self, a: Val, b: Val) -> Result<Val, ParseError> {
        Ok(match (a, b) {
            (Val::S(x), Val::S(y)) => Val::S(x.mul(&y)),
            (Val::S(x), Val::A(y)) => Val::A(y.scale(&x)),
            (Val::A(x), Val::S(y)) => Val::A(x.scale(&y)),
            (Val::A(x), Val::A(y)) => {
                let alg = self.alg.expect("algebra context for element product");
                Val::A(x.mul(&y, alg))
            }
        })
    }

    fn divide(&self, a: Val, b: Val, at: usize) -> Result<Val, ParseError> {
        let divisor = match b {
            Val::S(s) => s,
            Val::A(e) if e.is_constant() => e.constant_part(),
            Val::A(_) => return err(at, "divisor must be a scalar"),
        };
        let inv = divisor
            .invert()
            .map_err(|_| ParseError {
                pos: at,
                msg: "division by zero".into(),
            })?;
        Ok(match a {
            Val::S(x) => Val::S(x.mul(&inv)),
            Val::A(x) => Val::A(x.scale(&inv)),
        })
    }

    fn power(&self, base: Val, n: i64, at: usize) -> Result<Val, ParseError> {
        match base {
            Val::S(s) => {
                let v = s.pow(n).map_err(|_| ParseError {
                    pos: at,
                    msg: "negative power of zero".into(),
                })?;
                Ok(Val::S(v))
            }
            Val::A(a) => {
                let alg = self.alg.expect("algebra context for element power");
                if n >= 0 {
                    Ok(Val::A(a.pow(n as u32, alg)))
                } else {
                    // Negative powers only for invertible monomials (Laurent).
                    if !alg.is_laurent() || a.num_terms() != 1 {
                        return err(at, "negative power of a non-invertible element");
                    }
                    let (e, c) = a.terms().next().unwrap();
                    let exp = super::ExpVec(e.0.iter().map(|x| x * n).collect());
                    let coeff = c.pow(n).map_err(|_| ParseError {
                        pos: at,
                        msg: "negative power of zero".into(),
                    })?;
                    Ok(Val::A(AElement::monomial(exp, coeff)))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExpVec;

    #[test]
    fn parse_scalar_expressions() {
        assert_eq!(parse_scalar("-1/4").unwrap(), Scalar::from_ratio(-1, 4));
        let s = parse_scalar("(q^2 - 1)/(q - 1)").unwrap();
        assert_eq!(s, Scalar::param_q().add(&Scalar::one()));
        assert!(parse_scalar("t").is_err());
        assert!(parse_scalar("1 +").is_err());
    }

    #[test]
    fn parse_polynomial_elements() {
        let alg = BaseAlgebra::Polynomial;
        let u = parse_aelement("-(t-1)^2/4", &alg).unwrap();
        let mut expect = AElement::monomial(ExpVec(vec![2]), Scalar::from_ratio(-1, 4));
        expect.insert_add(ExpVec(vec![1]), Scalar::from_ratio(1, 2));
        expect.insert_add(ExpVec(vec![0]), Scalar::from_ratio(-1, 4));
        assert_eq!(u, expect);
    }

    #[test]
    fn parse_laurent_elements() {
        let alg = BaseAlgebra::Laurent;
        let u = parse_aelement("t - t^-1", &alg).unwrap();
        let expect = AElement::var(1, 0)
            .sub(&AElement::monomial(ExpVec(vec![-1]), Scalar::one()));
        assert_eq!(u, expect);
    }

    #[test]
    fn parse_quantum_affine_elements() {
        let alg = BaseAlgebra::quantum_plane(Scalar::param_q()).unwrap();
        let u = parse_aelement("q*t1*t2 - 2", &alg).unwrap();
        let expect = AElement::monomial(ExpVec(vec![1, 1]), Scalar::param_q())
            .sub(&AElement::constant(2, Scalar::from_i64(2)));
        assert_eq!(u, expect);
    }

    #[test]
    fn error_positions() {
        let alg = BaseAlgebra::Polynomial;
        let e = parse_aelement("t + $", &alg).unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_aelement("1/(t+1)", &alg).unwrap_err();
        assert!(e.msg.contains("divisor"));
    }

    #[test]
    fn roundtrip_display_parse() {
        let alg = BaseAlgebra::Polynomial;
        let u = parse_aelement("-1/4*t^2 + 1/2*t - 1/4", &alg).unwrap();
        let again = parse_aelement(&format!("{}", u), &alg).unwrap();
        assert_eq!(u, again);
    }
}
