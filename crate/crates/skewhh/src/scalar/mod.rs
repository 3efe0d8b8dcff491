//! The ground field: reduced rational functions in the formal parameters
//! `q` and `p` with exact rational coefficients.
//!
//! A generic (non-root-of-unity) parameter is modeled by keeping it formal:
//! `q^m - 1` is nonzero as a polynomial for every `m != 0`, so no numeric
//! specialization is needed.  Concrete rational values are also supported;
//! inverting a scalar that happens to be zero is reported as an error.

pub mod poly;

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use thiserror::Error;

pub use poly::{MultiPoly, PExp, NPARAMS, PARAM_NAMES};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
}

/// A reduced fraction of parameter polynomials.  The denominator is nonzero,
/// coprime to the numerator, and monic in graded-lex order, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: MultiPoly,
    den: MultiPoly,
}

impl Scalar {
    fn make(num: MultiPoly, den: MultiPoly) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = Scalar { num, den };
        s.reduce();
        s
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        // Normalize: denominator monic in graded-lex order.
        let lc = self.den.leading().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: MultiPoly::one(),
            den: MultiPoly::one(),
        }
    }

    pub fn from_i64(n: i64) -> Scalar {
        Scalar {
            num: MultiPoly::from_i64(n),
            den: MultiPoly::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        assert!(d != 0);
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        Scalar {
            num: MultiPoly::constant(r),
            den: MultiPoly::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar {
            num: MultiPoly::constant(r),
            den: MultiPoly::one(),
        }
    }

    /// The formal parameter `q`.
    pub fn param_q() -> Scalar {
        Scalar {
            num: MultiPoly::param(0),
            den: MultiPoly::one(),
        }
    }

    /// The formal parameter `p`.
    pub fn param_p() -> Scalar {
        Scalar {
            num: MultiPoly::param(1),
            den: MultiPoly::one(),
        }
    }

    pub fn from_poly(num: MultiPoly) -> Scalar {
        Scalar {
            num,
            den: MultiPoly::one(),
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a plain rational (no parameters).
    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.num.constant_coeff() / self.den.constant_coeff())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::make(num, den)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar::make(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn invert(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::make(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.invert()?))
    }

    pub fn pow(&self, n: i64) -> Result<Scalar, ScalarError> {
        if n >= 0 {
            let mut out = Scalar::one();
            for _ in 0..n {
                out = out.mul(self);
            }
            Ok(out)
        } else {
            let inv = self.invert()?;
            inv.pow(-n)
        }
    }

    /// Cross-multiplied equality of two (possibly unreduced) fractions;
    /// agrees with structural equality on reduced representations.
    pub fn cross_eq(&self, other: &Scalar) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// The q-analogue `(n)_{q^{-r}} = (q^{-rn} - 1)/(q^{-r} - 1)` of the integer
/// `n`, as a reduced rational function.  For `n >= 0` this equals the
/// geometric sum `1 + q^{-r} + ... + q^{-r(n-1)}`.
pub fn q_integer(n: i64, r: i64) -> Result<Scalar, ScalarError> {
    if r == 0 {
        return Err(ScalarError::DegenerateParameter(
            "q-integer with r = 0: denominator q^{-r} - 1 vanishes identically".into(),
        ));
    }
    let x = Scalar::param_q().pow(-r)?;
    q_integer_at(&x, n)
}

/// `(n)_x = (x^n - 1)/(x - 1)`, with the limit value `n` at `x = 1`.
pub fn q_integer_at(x: &Scalar, n: i64) -> Result<Scalar, ScalarError> {
    if x.is_one() {
        return Ok(Scalar::from_i64(n));
    }
    let num = x.pow(n)?.sub(&Scalar::one());
    let den = x.sub(&Scalar::one());
    num.div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::param_q()
    }

    #[test]
    fn inverse_axiom() {
        let a = q().sub(&Scalar::one());
        assert!(a.invert().unwrap().mul(&a).is_one());
        assert_eq!(Scalar::zero().invert(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn gcd_cancellation() {
        // (q^2 - 1)/(q - 1) reduces to q + 1
        let num = q().pow(2).unwrap().sub(&Scalar::one());
        let den = q().sub(&Scalar::one());
        let frac = num.div(&den).unwrap();
        assert_eq!(frac, q().add(&Scalar::one()));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        // Independent route: cross-multiplication of the two representations.
        let lhs = q()
            .pow(3)
            .unwrap()
            .sub(&Scalar::one())
            .div(&q().sub(&Scalar::one()))
            .unwrap();
        let rhs = q().pow(2).unwrap().add(&q()).add(&Scalar::one());
        assert!(lhs.cross_eq(&rhs));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_integer_edge_cases() {
        for r in [1, 2, -3] {
            assert!(q_integer(0, r).unwrap().is_zero());
            assert!(q_integer(1, r).unwrap().is_one());
        }
        assert!(matches!(
            q_integer(3, 0),
            Err(ScalarError::DegenerateParameter(_))
        ));
    }

    #[test]
    fn q_integer_geometric_sum() {
        // Oracle: direct geometric sum of powers of q^{-r}.
        for n in 0..6i64 {
            for r in [1i64, 2, 3] {
                let x = q().pow(-r).unwrap();
                let mut sum = Scalar::zero();
                for s in 0..n {
                    sum = sum.add(&x.pow(s).unwrap());
                }
                assert_eq!(q_integer(n, r).unwrap(), sum, "n={} r={}", n, r);
            }
        }
        // Frozen value from the oracle: n=3, r=1 is q^{-2} + q^{-1} + 1.
        let expect = q()
            .pow(-2)
            .unwrap()
            .add(&q().pow(-1).unwrap())
            .add(&Scalar::one());
        assert_eq!(q_integer(3, 1).unwrap(), expect);
    }

    #[test]
    fn q_integer_defining_quotient() {
        // (n)_{q^{-r}} * (q^{-r} - 1) = q^{-rn} - 1 for n in [-5, 5], r in {1,2,3}
        for n in -5..=5i64 {
            for r in [1i64, 2, 3] {
                let lhs = q_integer(n, r)
                    .unwrap()
                    .mul(&q().pow(-r).unwrap().sub(&Scalar::one()));
                let rhs = q().pow(-r * n).unwrap().sub(&Scalar::one());
                assert_eq!(lhs, rhs, "n={} r={}", n, r);
            }
        }
    }

    #[test]
    fn reduction_idempotent() {
        let a = q()
            .pow(5)
            .unwrap()
            .sub(&Scalar::one())
            .div(&q().pow(2).unwrap().sub(&Scalar::one()))
            .unwrap();
        let mut b = a.clone();
        b.reduce();
        assert_eq!(a, b);
    }

    #[test]
    fn display_forms() {
        let s = q().pow(2).unwrap().add(&q()).add(&Scalar::one());
        assert_eq!(format!("{}", s), "q^2 + q + 1");
        let f = Scalar::one().div(&q().sub(&Scalar::one())).unwrap();
        assert_eq!(format!("{}", f), "(1)/(q - 1)");
        assert_eq!(format!("{}", Scalar::from_ratio(-1, 4)), "-1/4");
    }
}
