//! Difference and derivative operators on single-variable elements:
//! the shift difference `T_lambda(P) = P(t+lambda) - P(t)`, the scaling
//! differences `T~_i^j(P) = P(q^i t) - P(q^j t)`,
//! `T'_q(P) = P(qt) - q^{-1} P(t)`, `T'_{q^{-1}}(P) = P(q^{-1}t) - q P(t)`,
//! the q-divided difference `delta_{q^{-r}}(t^n) = (n)_{q^{-r}} t^{n-1}`,
//! and the ordinary derivative.

use crate::scalar::{q_integer_at, Scalar};

use super::{AElement, AlgebraError, BaseAlgebra, ExpVec};

#[derive(Clone, Debug)]
pub enum DifferenceOp {
    TLambda(Scalar),
    TTilde(i64, i64),
    TPrimeQ,
    TPrimeQInv,
    DeltaQr(i64),
    Derivative,
}

pub fn difference_operator(
    alg: &BaseAlgebra,
    op: &DifferenceOp,
    p: &AElement,
) -> Result<AElement, AlgebraError> {
    if alg.nvars() != 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    match op {
        DifferenceOp::TLambda(lambda) => t_lambda(p, lambda),
        DifferenceOp::TTilde(i, j) => {
            let q = Scalar::param_q();
            let a = p.subst_scale(&q.pow(*i)?)?;
            let b = p.subst_scale(&q.pow(*j)?)?;
            Ok(a.sub(&b))
        }
        DifferenceOp::TPrimeQ => {
            let q = Scalar::param_q();
            let a = p.subst_scale(&q)?;
            Ok(a.sub(&p.scale(&q.pow(-1)?)))
        }
        DifferenceOp::TPrimeQInv => {
            let q = Scalar::param_q();
            let a = p.subst_scale(&q.pow(-1)?)?;
            Ok(a.sub(&p.scale(&q)))
        }
        DifferenceOp::DeltaQr(r) => {
            if *r == 0 {
                return Err(AlgebraError::Scalar(
                    crate::scalar::ScalarError::DegenerateParameter(
                        "delta_{q^{-r}} with r = 0".into(),
                    ),
                ));
            }
            let x = Scalar::param_q().pow(-r)?;
            delta_q_at(p, &x)
        }
        DifferenceOp::Derivative => derivative(p),
    }
}

/// `T_lambda(P) = P(t + lambda) - P(t)`.
pub fn t_lambda(p: &AElement, lambda: &Scalar) -> Result<AElement, AlgebraError> {
    Ok(p.subst_shift(lambda)?.sub(p))
}

/// `t^n -> (n)_x t^{n-1}` extended linearly, with `(n)_1 = n`.
pub fn delta_q_at(p: &AElement, x: &Scalar) -> Result<AElement, AlgebraError> {
    let mut out = AElement::zero(1);
    for (e, c) in p.terms() {
        let n = e.0[0];
        let qi = q_integer_at(x, n)?;
        out.insert_add(ExpVec(vec![n - 1]), c.mul(&qi));
    }
    Ok(out)
}

/// `t^n -> n t^{n-1}` extended linearly (Laurent exponents allowed).
pub fn derivative(p: &AElement) -> Result<AElement, AlgebraError> {
    if p.nvars() != 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    let mut out = AElement::zero(1);
    for (e, c) in p.terms() {
        let n = e.0[0];
        if n != 0 {
            out.insert_add(ExpVec(vec![n - 1]), c.mul(&Scalar::from_i64(n)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_pow(n: i64) -> AElement {
        AElement::monomial(ExpVec(vec![n]), Scalar::one())
    }

    #[test]
    fn shift_difference_on_square() {
        // T_2(t^2) = (t+2)^2 - t^2 = 4t + 4
        let got = t_lambda(&t_pow(2), &Scalar::from_i64(2)).unwrap();
        let mut expect = AElement::monomial(ExpVec(vec![1]), Scalar::from_i64(4));
        expect.insert_add(ExpVec(vec![0]), Scalar::from_i64(4));
        assert_eq!(got, expect);
    }

    #[test]
    fn scaling_difference_substitute_and_subtract() {
        // T~_1^0(t^n) = (q^n - 1) t^n, checked by direct substitution.
        let alg = BaseAlgebra::Laurent;
        for n in [-3i64, 1, 2, 5] {
            let got = difference_operator(&alg, &DifferenceOp::TTilde(1, 0), &t_pow(n)).unwrap();
            let coeff = Scalar::param_q().pow(n).unwrap().sub(&Scalar::one());
            assert_eq!(got, AElement::monomial(ExpVec(vec![n]), coeff));
        }
    }

    #[test]
    fn q_divided_difference_kills_constants() {
        let alg = BaseAlgebra::Laurent;
        let got = difference_operator(&alg, &DifferenceOp::DeltaQr(2), &t_pow(0)).unwrap();
        assert!(got.is_zero());
        assert!(difference_operator(&alg, &DifferenceOp::DeltaQr(0), &t_pow(1)).is_err());
    }

    #[test]
    fn twisted_leibniz_for_shift_difference() {
        // T_l(PQ) = T_l(P) Q(t+l) + P T_l(Q) on sampled pairs.
        let alg = BaseAlgebra::Polynomial;
        let l = Scalar::from_i64(2);
        let samples = [
            t_pow(1),
            t_pow(2).add(&AElement::one(1)),
            t_pow(3).sub(&t_pow(1).scale(&Scalar::from_ratio(1, 2))),
        ];
        for p in &samples {
            for q in &samples {
                let pq = p.mul(q, &alg);
                let lhs = t_lambda(&pq, &l).unwrap();
                let rhs = t_lambda(p, &l)
                    .unwrap()
                    .mul(&q.subst_shift(&l).unwrap(), &alg)
                    .add(&p.mul(&t_lambda(q, &l).unwrap(), &alg));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn derivative_basics() {
        let got = derivative(&t_pow(3)).unwrap();
        assert_eq!(got, AElement::monomial(ExpVec(vec![2]), Scalar::from_i64(3)));
        let got = derivative(&t_pow(-1)).unwrap();
        assert_eq!(
            got,
            AElement::monomial(ExpVec(vec![-2]), Scalar::from_i64(-1))
        );
    }
}
