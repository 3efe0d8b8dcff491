//! Algebra automorphisms in closed form.  Every supported automorphism is
//! either a per-variable monomial scaling or a univariate affine
//! substitution `t -> s*t + c`, so composition and integer powers simplify
//! symbolically instead of being iterated.

use crate::scalar::Scalar;

use super::{AElement, AlgebraError, BaseAlgebra};

/// User-facing description, resolved to an [`Automorphism`] before use.
#[derive(Clone, Debug, PartialEq)]
pub enum AutomorphismSpec {
    Identity,
    /// `t_k -> f_k * t_k` with nonzero factors.
    MonomialScaling(Vec<Scalar>),
    /// `t -> t + lambda`; single-variable non-Laurent algebras only.
    Shift(Scalar),
    Power(Box<AutomorphismSpec>, i64),
    /// Applied right to left: `Compose([f, g])` is `f . g`.
    Compose(Vec<AutomorphismSpec>),
}

/// Resolved closed form of an automorphism.
#[derive(Clone, Debug, PartialEq)]
pub enum Automorphism {
    /// `t_k -> factors[k] * t_k`.
    Diagonal(Vec<Scalar>),
    /// `t -> scale * t + offset` on a single-variable algebra.
    Affine { scale: Scalar, offset: Scalar },
}

impl AutomorphismSpec {
    pub fn resolve(&self, alg: &BaseAlgebra) -> Result<Automorphism, AlgebraError> {
        let n = alg.nvars();
        match self {
            AutomorphismSpec::Identity => Ok(Automorphism::identity(alg)),
            AutomorphismSpec::MonomialScaling(fs) => {
                if fs.len() != n {
                    return Err(AlgebraError::UnsupportedAutomorphism(format!(
                        "scaling with {} factors on {} variables",
                        fs.len(),
                        n
                    )));
                }
                for f in fs {
                    if f.is_zero() {
                        return Err(AlgebraError::UnsupportedAutomorphism(
                            "scaling factor must be nonzero".into(),
                        ));
                    }
                }
                if n == 1 {
                    Ok(Automorphism::Affine {
                        scale: fs[0].clone(),
                        offset: Scalar::zero(),
                    })
                } else {
                    Ok(Automorphism::Diagonal(fs.clone()))
                }
            }
            AutomorphismSpec::Shift(lambda) => {
                if !alg.allows_shift() {
                    return Err(AlgebraError::UnsupportedAutomorphism(
                        "shift is only defined on a single polynomial variable".into(),
                    ));
                }
                Ok(Automorphism::Affine {
                    scale: Scalar::one(),
                    offset: lambda.clone(),
                })
            }
            AutomorphismSpec::Power(base, k) => Ok(base.resolve(alg)?.power(*k)),
            AutomorphismSpec::Compose(list) => {
                let mut out = Automorphism::identity(alg);
                for spec in list.iter().rev() {
                    let f = spec.resolve(alg)?;
                    out = f.compose(&out);
                }
                Ok(out)
            }
        }
    }
}

impl Automorphism {
    pub fn identity(alg: &BaseAlgebra) -> Automorphism {
        if alg.nvars() == 1 {
            Automorphism::Affine {
                scale: Scalar::one(),
                offset: Scalar::zero(),
            }
        } else {
            Automorphism::Diagonal(vec![Scalar::one(); alg.nvars()])
        }
    }

    pub fn scaling(factors: Vec<Scalar>) -> Automorphism {
        if factors.len() == 1 {
            Automorphism::Affine {
                scale: factors.into_iter().next().unwrap(),
                offset: Scalar::zero(),
            }
        } else {
            Automorphism::Diagonal(factors)
        }
    }

    pub fn shift(lambda: Scalar) -> Automorphism {
        Automorphism::Affine {
            scale: Scalar::one(),
            offset: lambda,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Automorphism::Diagonal(fs) => fs.iter().all(|f| f.is_one()),
            Automorphism::Affine { scale, offset } => scale.is_one() && offset.is_zero(),
        }
    }

    /// `self . inner` (apply `inner` first).
    pub fn compose(&self, inner: &Automorphism) -> Automorphism {
        match (self, inner) {
            (Automorphism::Diagonal(a), Automorphism::Diagonal(b)) => {
                Automorphism::Diagonal(a.iter().zip(b).map(|(x, y)| x.mul(y)).collect())
            }
            (
                Automorphism::Affine {
                    scale: s1,
                    offset: c1,
                },
                Automorphism::Affine {
                    scale: s2,
                    offset: c2,
                },
            ) => {
                // (f.g)(t) = f applied to g(t) = s2*(s1 t + c1) + c2.
                Automorphism::Affine {
                    scale: s1.mul(s2),
                    offset: s2.mul(c1).add(c2),
                }
            }
            _ => panic!("composing automorphisms of different algebra kinds"),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        match self {
            Automorphism::Diagonal(fs) => Automorphism::Diagonal(
                fs.iter()
                    .map(|f| f.invert().expect("scaling factors are nonzero"))
                    .collect(),
            ),
            Automorphism::Affine { scale, offset } => {
                let sinv = scale.invert().expect("scale factor is nonzero");
                Automorphism::Affine {
                    scale: sinv.clone(),
                    offset: sinv.mul(offset).neg(),
                }
            }
        }
    }

    pub fn power(&self, k: i64) -> Automorphism {
        match self {
            Automorphism::Diagonal(fs) => Automorphism::Diagonal(
                fs.iter()
                    .map(|f| f.pow(k).expect("scaling factors are nonzero"))
                    .collect(),
            ),
            Automorphism::Affine { scale, offset } => {
                let sk = scale.pow(k).expect("scale factor is nonzero");
                let offset_k = if scale.is_one() {
                    offset.mul(&Scalar::from_i64(k))
                } else {
                    // offset * (s^k - 1)/(s - 1)
                    let num = sk.sub(&Scalar::one());
                    let den = scale.sub(&Scalar::one());
                    offset.mul(&num.div(&den).expect("scale != 1"))
                };
                Automorphism::Affine {
                    scale: sk,
                    offset: offset_k,
                }
            }
        }
    }

    pub fn commutes_with(&self, other: &Automorphism) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Apply to a normal-form element, coefficient-wise and monomial-wise.
    pub fn apply(&self, alg: &BaseAlgebra, a: &AElement) -> AElement {
        let out = match self {
            Automorphism::Diagonal(fs) => {
                let mut out = AElement::zero(a.nvars());
                for (e, c) in a.terms() {
                    let mut factor = Scalar::one();
                    for (k, f) in fs.iter().enumerate() {
                        if e.0[k] != 0 {
                            factor = factor.mul(&f.pow(e.0[k]).expect("nonzero factor"));
                        }
                    }
                    out.insert_add(e.clone(), c.mul(&factor));
                }
                out
            }
            Automorphism::Affine { scale, offset } => {
                if offset.is_zero() {
                    a.subst_scale(scale).expect("univariate element")
                } else if scale.is_one() {
                    a.subst_shift(offset).expect("polynomial element")
                } else {
                    // P(s*t + c) = (P(t + c)) with t -> s*t afterwards.
                    a.subst_shift(offset)
                        .expect("polynomial element")
                        .subst_scale(scale)
                        .expect("univariate element")
                }
            }
        };
        debug_assert!(alg.check_element(&out).is_ok());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExpVec;

    #[test]
    fn scaling_inverse_power() {
        // alpha(t) = q t; alpha^{-2}(t^3) = q^{-6} t^3
        let alg = BaseAlgebra::Polynomial;
        let alpha = AutomorphismSpec::MonomialScaling(vec![Scalar::param_q()])
            .resolve(&alg)
            .unwrap();
        let t3 = AElement::monomial(ExpVec(vec![3]), Scalar::one());
        let img = alpha.power(-2).apply(&alg, &t3);
        let expect = AElement::monomial(ExpVec(vec![3]), Scalar::param_q().pow(-6).unwrap());
        assert_eq!(img, expect);
    }

    #[test]
    fn shift_on_square() {
        let alg = BaseAlgebra::Polynomial;
        let alpha = AutomorphismSpec::Shift(Scalar::from_i64(2))
            .resolve(&alg)
            .unwrap();
        let t2 = AElement::monomial(ExpVec(vec![2]), Scalar::one());
        let img = alpha.apply(&alg, &t2);
        let mut expect = AElement::monomial(ExpVec(vec![2]), Scalar::one());
        expect.insert_add(ExpVec(vec![1]), Scalar::from_i64(4));
        expect.insert_add(ExpVec(vec![0]), Scalar::from_i64(4));
        assert_eq!(img, expect);
    }

    #[test]
    fn identity_fixes_everything() {
        let alg = BaseAlgebra::Laurent;
        let id = AutomorphismSpec::Identity.resolve(&alg).unwrap();
        let a = AElement::monomial(ExpVec(vec![-2]), Scalar::from_i64(5))
            .add(&AElement::var(1, 0));
        assert_eq!(id.apply(&alg, &a), a);
    }

    #[test]
    fn shift_rejected_on_laurent_and_multivariate() {
        assert!(AutomorphismSpec::Shift(Scalar::one())
            .resolve(&BaseAlgebra::Laurent)
            .is_err());
        let qa = BaseAlgebra::quantum_plane(Scalar::param_q()).unwrap();
        assert!(AutomorphismSpec::Shift(Scalar::one()).resolve(&qa).is_err());
    }

    #[test]
    fn power_matches_iteration() {
        let alg = BaseAlgebra::Polynomial;
        let f = Automorphism::Affine {
            scale: Scalar::param_q(),
            offset: Scalar::from_i64(3),
        };
        let mut it = Automorphism::identity(&alg);
        for _ in 0..4 {
            it = f.compose(&it);
        }
        assert_eq!(f.power(4), it);
        assert_eq!(f.power(-1).compose(&f), Automorphism::identity(&alg));
        assert_eq!(f.power(-3), f.inverse().power(3));
    }

    #[test]
    fn multiplicative_on_products() {
        let alg = BaseAlgebra::quantum_plane(Scalar::param_q()).unwrap();
        let phi = Automorphism::Diagonal(vec![Scalar::param_q(), Scalar::from_i64(2)]);
        let a = AElement::var(2, 0).add(&AElement::monomial(
            ExpVec(vec![0, 2]),
            Scalar::from_i64(3),
        ));
        let b = AElement::var(2, 1).add(&AElement::one(2));
        let lhs = phi.apply(&alg, &a.mul(&b, &alg));
        let rhs = phi.apply(&alg, &a).mul(&phi.apply(&alg, &b), &alg);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_scaling_negative_exponents() {
        let alg = BaseAlgebra::Laurent;
        let alpha = AutomorphismSpec::MonomialScaling(vec![Scalar::param_q()])
            .resolve(&alg)
            .unwrap();
        let tinv = AElement::monomial(ExpVec(vec![-1]), Scalar::one());
        let img = alpha.apply(&alg, &tinv);
        assert_eq!(
            img,
            AElement::monomial(ExpVec(vec![-1]), Scalar::param_q().pow(-1).unwrap())
        );
    }

    #[test]
    fn scalings_commute() {
        let g = Automorphism::Diagonal(vec![Scalar::one(), Scalar::param_q().pow(-1).unwrap()]);
        let a = Automorphism::Diagonal(vec![Scalar::param_q(), Scalar::param_q()]);
        assert!(g.commutes_with(&a));
    }
}
