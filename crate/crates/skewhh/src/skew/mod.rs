//! The iterated skew polynomial ring `E = E(A, u, alpha, p)`.
//!
//! `E` is generated over `A` by `x`, `y` with
//!
//! ```text
//!   x a = alpha(a) x,   y a = beta(a) y,   y x = p x y + u - p alpha(u),
//! ```
//!
//! where `beta = gamma . alpha^{-1}`.  As an abelian group `E = A[x, y]`,
//! so elements are kept in the normal form `sum a_ij x^i y^j`.
//!
//! Products are computed with the closed-form commutation identities
//!
//! ```text
//!   x^i y^j a   = gamma^j(alpha^{i-j}(a)) x^i y^j
//!   a x^i y^j x = p^j a x^{i+1} y^j
//!                 - a (p^j alpha^{i+1}(u) - alpha^{i-j+1}(u)) x^i y^{j-1}
//!   y a x^i y^j = p^i gamma(alpha^{-1}(a)) x^i y^{j+1}
//!                 - gamma(alpha^{-1}(a)) (p^i alpha^i(u) - u) x^{i-1} y^j
//! ```
//!
//! rather than by single-step rewriting of `yx`; the rewriting engine in
//! [`rewrite`] serves as the independent oracle for these identities.

pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AElement, AlgebraError, Automorphism, AutomorphismSpec, BaseAlgebra};
use crate::scalar::Scalar;

/// Validated presentation data for `E(A, u, alpha, p)`.
#[derive(Clone, Debug)]
pub struct ESpec {
    pub base: BaseAlgebra,
    pub alpha: Automorphism,
    pub gamma: Automorphism,
    /// `gamma . alpha^{-1}`, the twist of the second extension.
    pub beta: Automorphism,
    pub u: AElement,
    pub p: Scalar,
}

/// Outcome of hypothesis checking: empty means all hypotheses hold.
#[derive(Clone, Debug, Default)]
pub struct SpecDiagnostics {
    pub violations: Vec<String>,
}

impl SpecDiagnostics {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl ESpec {
    pub fn new(
        base: BaseAlgebra,
        alpha: &AutomorphismSpec,
        gamma: &AutomorphismSpec,
        u: AElement,
        p: Scalar,
    ) -> Result<ESpec, AlgebraError> {
        let alpha = alpha.resolve(&base)?;
        let gamma = gamma.resolve(&base)?;
        base.check_element(&u)?;
        let beta = gamma.compose(&alpha.inverse());
        Ok(ESpec {
            base,
            alpha,
            gamma,
            beta,
            u,
            p,
        })
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    /// Check the presentation hypotheses; returns witnesses on failure.
    pub fn validate(&self) -> SpecDiagnostics {
        let mut d = SpecDiagnostics::default();
        if self.p.is_zero() {
            d.violations.push("p must be invertible (nonzero)".into());
        }
        let gu = self.gamma.apply(&self.base, &self.u);
        if gu != self.u {
            d.violations
                .push(format!("gamma(u) != u: gamma(u) = {}", gu));
        }
        if !self.alpha.commutes_with(&self.gamma) {
            d.violations
                .push("alpha and gamma do not commute".into());
        }
        // u a = gamma(a) u on generators suffices: both sides are
        // multiplicative in a.
        for a in self.base.generators() {
            let lhs = self.u.mul(&a, &self.base);
            let rhs = self.gamma.apply(&self.base, &a).mul(&self.u, &self.base);
            if lhs != rhs {
                d.violations.push(format!(
                    "u*a != gamma(a)*u for a = {}: {} vs {}",
                    a, lhs, rhs
                ));
            }
        }
        d
    }

    pub fn apply_alpha_pow(&self, k: i64, a: &AElement) -> AElement {
        self.alpha.power(k).apply(&self.base, a)
    }

    pub fn apply_gamma_pow(&self, k: i64, a: &AElement) -> AElement {
        self.gamma.power(k).apply(&self.base, a)
    }

    /// `gamma^j(alpha^{i-j}(a))`: the coefficient of `x^i y^j` after moving
    /// `a` from the right of `x^i y^j` to the left.
    pub fn commute_coefficient(&self, i: i64, j: i64, a: &AElement) -> AElement {
        self.apply_gamma_pow(j, &self.apply_alpha_pow(i - j, a))
    }

    /// `a x^i y^j * x` in normal form.
    pub fn mul_basis_by_x(&self, a: &AElement, i: u32, j: u32) -> EElement {
        let pj = self.p.pow(j as i64).expect("p invertible");
        let mut out = EElement::zero(self.nvars());
        out.insert_add(i + 1, j, a.scale(&pj));
        let c = self
            .apply_alpha_pow(i as i64 + 1, &self.u)
            .scale(&pj)
            .sub(&self.apply_alpha_pow(i as i64 - j as i64 + 1, &self.u));
        if !c.is_zero() {
            assert!(j >= 1, "y-degree underflow with nonzero coefficient");
            out.insert_add(i, j - 1, a.mul(&c, &self.base).neg());
        }
        out
    }

    /// `y * a x^i y^j` in normal form.
    pub fn mul_y_by_basis(&self, a: &AElement, i: u32, j: u32) -> EElement {
        let pi = self.p.pow(i as i64).expect("p invertible");
        let b = self.gamma.apply(
            &self.base,
            &self.alpha.inverse().apply(&self.base, a),
        );
        let mut out = EElement::zero(self.nvars());
        out.insert_add(i, j + 1, b.scale(&pi));
        let c = self
            .apply_alpha_pow(i as i64, &self.u)
            .scale(&pi)
            .sub(&self.u);
        if !c.is_zero() {
            assert!(i >= 1, "x-degree underflow with nonzero coefficient");
            out.insert_add(i - 1, j, b.mul(&c, &self.base).neg());
        }
        out
    }

    /// Normal-form product in `E`.
    pub fn mul(&self, a: &EElement, b: &EElement) -> EElement {
        let mut out = EElement::zero(self.nvars());
        for ((i1, j1), ca) in &a.terms {
            for ((i2, j2), cb) in &b.terms {
                // Commute cb to the left, then absorb x^i2 one x at a time,
                // then append y^j2.
                let coeff = ca.mul(
                    &self.commute_coefficient(*i1 as i64, *j1 as i64, cb),
                    &self.base,
                );
                let mut acc = EElement::monomial(*i1, *j1, coeff);
                for _ in 0..*i2 {
                    let mut next = EElement::zero(self.nvars());
                    for ((i, j), c) in &acc.terms {
                        next = next.add(&self.mul_basis_by_x(c, *i, *j));
                    }
                    acc = next;
                }
                for ((i, j), c) in &acc.terms {
                    out.insert_add(*i, j + j2, c.clone());
                }
            }
        }
        out
    }

    pub fn e_one(&self) -> EElement {
        EElement::from_a(AElement::one(self.nvars()))
    }

    pub fn e_x(&self) -> EElement {
        EElement::monomial(1, 0, AElement::one(self.nvars()))
    }

    pub fn e_y(&self) -> EElement {
        EElement::monomial(0, 1, AElement::one(self.nvars()))
    }

    pub fn e_from_a(&self, a: &AElement) -> EElement {
        EElement::from_a(a.clone())
    }

    /// The Casimir element `z = y x - u`, which also equals
    /// `p (x y - alpha(u))`.  Returns both normal forms.
    pub fn casimir_both(&self) -> (EElement, EElement) {
        let yx = self.mul(&self.e_y(), &self.e_x());
        let z1 = yx.sub(&self.e_from_a(&self.u));
        let xy = self.mul(&self.e_x(), &self.e_y());
        let au = self.alpha.apply(&self.base, &self.u);
        let z2 = xy.sub(&self.e_from_a(&au)).scale(&self.p);
        (z1, z2)
    }

    pub fn casimir(&self) -> EElement {
        self.casimir_both().0
    }

    /// Check `z x = p x z`, `z y = p^{-1} y z`, `z a = gamma(a) z` for the
    /// algebra generators; returns witnesses on failure.
    pub fn casimir_relations(&self) -> SpecDiagnostics {
        let mut d = SpecDiagnostics::default();
        let (z, z2) = self.casimir_both();
        if z != z2 {
            d.violations.push(format!(
                "the two normal forms of the Casimir element differ: {} vs {}",
                z, z2
            ));
        }
        let x = self.e_x();
        let y = self.e_y();
        let lhs = self.mul(&z, &x);
        let rhs = self.mul(&x, &z).scale(&self.p);
        if lhs != rhs {
            d.violations
                .push(format!("z*x - p*x*z = {}", lhs.sub(&rhs)));
        }
        let lhs = self.mul(&z, &y);
        let rhs = self
            .mul(&y, &z)
            .scale(&self.p.invert().expect("p invertible"));
        if lhs != rhs {
            d.violations
                .push(format!("z*y - p^-1*y*z = {}", lhs.sub(&rhs)));
        }
        for a in self.base.generators() {
            let ea = self.e_from_a(&a);
            let ga = self.e_from_a(&self.gamma.apply(&self.base, &a));
            let lhs = self.mul(&z, &ea);
            let rhs = self.mul(&ga, &z);
            if lhs != rhs {
                d.violations
                    .push(format!("z*a - gamma(a)*z != 0 for a = {}", a));
            }
        }
        d
    }
}

/// Normal-form element of `E`: sparse map from `(x-exponent, y-exponent)`
/// to coefficients in `A`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EElement {
    nvars: usize,
    terms: BTreeMap<(u32, u32), AElement>,
}

impl EElement {
    pub fn zero(nvars: usize) -> EElement {
        EElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_a(a: AElement) -> EElement {
        let nvars = a.nvars();
        let mut out = EElement::zero(nvars);
        out.insert_add(0, 0, a);
        out
    }

    pub fn monomial(i: u32, j: u32, a: AElement) -> EElement {
        let nvars = a.nvars();
        let mut out = EElement::zero(nvars);
        out.insert_add(i, j, a);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &AElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> AElement {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| AElement::zero(self.nvars))
    }

    pub fn insert_add(&mut self, i: u32, j: u32, a: AElement) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(slot) => {
                let sum = slot.add(&a);
                if sum.is_zero() {
                    self.terms.remove(&(i, j));
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert((i, j), a);
            }
        }
    }

    pub fn add(&self, other: &EElement) -> EElement {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for ((i, j), a) in &other.terms {
            out.insert_add(*i, *j, a.clone());
        }
        out
    }

    pub fn sub(&self, other: &EElement) -> EElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> EElement {
        EElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (*k, a.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> EElement {
        if c.is_zero() {
            return EElement::zero(self.nvars);
        }
        EElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (*k, a.scale(c)))
                .collect(),
        }
    }

    /// Weights `j - i` present in the support.
    pub fn weights(&self) -> Vec<i64> {
        let mut ws: Vec<i64> = self
            .terms
            .keys()
            .map(|(i, j)| *j as i64 - *i as i64)
            .collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }
}

impl fmt::Display for EElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), a) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if a.is_one() {
                String::new()
            } else {
                format!("({})*", a)
            };
            match (i, j) {
                (0, 0) => {
                    if coeff.is_empty() {
                        write!(f, "1")?;
                    } else {
                        write!(f, "({})", a)?;
                    }
                }
                _ => write!(f, "{}x^{}*y^{}", coeff, i, j)?,
            }
        }
        Ok(())
    }
}


/// Canonical example families used throughout the verification suites.
pub mod families {
    use super::*;
    use crate::algebra::parse::parse_aelement;

    /// `k[t]`, `alpha(t) = t + 2`, `gamma = id`, `p = 1`,
    /// `u = -(t-1)^2/4` (the enveloping-algebra example).
    pub fn usl2_spec() -> ESpec {
        shift_spec(&parse_aelement("-(t-1)^2/4", &BaseAlgebra::Polynomial).unwrap(), Scalar::from_i64(2))
    }

    /// `k[t]`, `alpha(t) = t + lambda`, `gamma = id`, `p = 1`, given `u`.
    pub fn shift_spec(u: &AElement, lambda: Scalar) -> ESpec {
        ESpec::new(
            BaseAlgebra::Polynomial,
            &AutomorphismSpec::Shift(lambda),
            &AutomorphismSpec::Identity,
            u.clone(),
            Scalar::one(),
        )
        .unwrap()
    }

    /// Quantum plane with `q12 = q`, `alpha = q`-scaling,
    /// `gamma = diag(1, 1/q)`, `u = t1`, and the given `p`.
    pub fn qa2_spec(p: Scalar) -> ESpec {
        let base = BaseAlgebra::quantum_plane(Scalar::param_q()).unwrap();
        let q = Scalar::param_q();
        ESpec::new(
            base,
            &AutomorphismSpec::MonomialScaling(vec![q.clone(), q.clone()]),
            &AutomorphismSpec::MonomialScaling(vec![Scalar::one(), q.invert().unwrap()]),
            AElement::var(2, 0),
            p,
        )
        .unwrap()
    }

    /// Laurent, `alpha(t) = q t`, `gamma = id`, `p = 1`, `u = t - 1/t`.
    pub fn laurent_spec() -> ESpec {
        let base = BaseAlgebra::Laurent;
        let u = parse_aelement("t - t^-1", &base).unwrap();
        laurent_u_spec(&u)
    }

    /// Laurent, `alpha(t) = q t`, `gamma = id`, `p = 1`, given `u`.
    pub fn laurent_u_spec(u: &AElement) -> ESpec {
        ESpec::new(
            BaseAlgebra::Laurent,
            &AutomorphismSpec::MonomialScaling(vec![Scalar::param_q()]),
            &AutomorphismSpec::Identity,
            u.clone(),
            Scalar::one(),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::families::{laurent_spec, qa2_spec, usl2_spec};
    use super::*;
    use crate::algebra::parse::parse_aelement;
    use crate::algebra::ExpVec;

    #[test]
    fn validate_passes_for_families() {
        assert!(usl2_spec().validate().is_ok());
        assert!(qa2_spec(Scalar::param_p()).validate().is_ok());
        assert!(laurent_spec().validate().is_ok());
    }

    #[test]
    fn validate_commutative_gamma_id() {
        // A = k[t] commutative, gamma = id, any u: passes.
        let base = BaseAlgebra::Polynomial;
        let u = parse_aelement("t^3 - 2*t", &base).unwrap();
        let spec = ESpec::new(
            base,
            &AutomorphismSpec::Shift(Scalar::one()),
            &AutomorphismSpec::Identity,
            u,
            Scalar::one(),
        )
        .unwrap();
        assert!(spec.validate().is_ok());
    }

    #[test]
    fn validate_fails_with_witness() {
        // Quantum plane, u = t1, gamma = id: u t2 != t2 u.
        let base = BaseAlgebra::quantum_plane(Scalar::param_q()).unwrap();
        let spec = ESpec::new(
            base,
            &AutomorphismSpec::MonomialScaling(vec![
                Scalar::param_q(),
                Scalar::param_q(),
            ]),
            &AutomorphismSpec::Identity,
            AElement::var(2, 0),
            Scalar::one(),
        )
        .unwrap();
        let d = spec.validate();
        assert!(!d.is_ok());
        assert!(d.violations.iter().any(|v| v.contains("t2")));
    }

    #[test]
    fn yx_relation() {
        // y*x = p*x*y + u - p*alpha(u)
        for spec in [usl2_spec(), qa2_spec(Scalar::param_p()), laurent_spec()] {
            let yx = spec.mul(&spec.e_y(), &spec.e_x());
            let mut expect = spec
                .mul(&spec.e_x(), &spec.e_y())
                .scale(&spec.p);
            let au = spec.alpha.apply(&spec.base, &spec.u);
            expect = expect.add(&EElement::from_a(
                spec.u.sub(&au.scale(&spec.p)),
            ));
            assert_eq!(yx, expect);
        }
    }

    #[test]
    fn shift_case_x_commutation() {
        // x t = (t + lambda) x
        let spec = usl2_spec();
        let t = spec.e_from_a(&AElement::var(1, 0));
        let lhs = spec.mul(&spec.e_x(), &t);
        let shifted = AElement::var(1, 0)
            .add(&AElement::constant(1, Scalar::from_i64(2)));
        let expect = EElement::monomial(1, 0, shifted);
        assert_eq!(lhs, expect);
    }

    #[test]
    fn scaling_case_coefficient_twist() {
        // alpha(t) = q t, gamma = id: (x^2 y) * t = q * t * x^2 y.
        let base = BaseAlgebra::Polynomial;
        let spec = ESpec::new(
            base,
            &AutomorphismSpec::MonomialScaling(vec![Scalar::param_q()]),
            &AutomorphismSpec::Identity,
            AElement::zero(1),
            Scalar::one(),
        )
        .unwrap();
        let x2y = EElement::monomial(2, 1, AElement::one(1));
        let t = spec.e_from_a(&AElement::var(1, 0));
        let lhs = spec.mul(&x2y, &t);
        let expect = EElement::monomial(
            2,
            1,
            AElement::monomial(ExpVec(vec![1]), Scalar::param_q()),
        );
        assert_eq!(lhs, expect);
    }

    #[test]
    fn shift_case_y_times_tx() {
        // p=1, gamma=id, shift lambda: y*(t*x) = (t-l)*x*y - (t-l)*T_l(u)*x^0y^0
        let spec = usl2_spec();
        let l = Scalar::from_i64(2);
        let t = AElement::var(1, 0);
        let tx = EElement::monomial(1, 0, t.clone());
        let lhs = spec.mul(&spec.e_y(), &tx);
        let tml = t.sub(&AElement::constant(1, l.clone()));
        let tl_u = crate::algebra::diff::t_lambda(&spec.u, &l).unwrap();
        let mut expect = EElement::monomial(1, 1, tml.clone());
        expect.insert_add(0, 0, tml.mul(&tl_u, &spec.base).neg());
        assert_eq!(lhs, expect);
    }

    #[test]
    fn casimir_relations_hold() {
        for spec in [usl2_spec(), qa2_spec(Scalar::param_p()), laurent_spec()] {
            let d = spec.casimir_relations();
            assert!(d.is_ok(), "{:?}", d.violations);
        }
    }

    #[test]
    fn weight_grading_preserved() {
        // Products of homogeneous elements stay homogeneous of summed weight.
        let spec = usl2_spec();
        let a = EElement::monomial(2, 1, AElement::var(1, 0)); // weight -1
        let b = EElement::monomial(0, 2, AElement::one(1)); // weight 2
        let prod = spec.mul(&a, &b);
        assert_eq!(prod.weights(), vec![1]);
    }
}
