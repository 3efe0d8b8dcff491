//! The small three-column double complex for the shift case
//! `A = k[t]`, `alpha(t) = t + lambda`, `gamma = id`, `p = 1`.
//!
//! Modules (all with coefficients in `A`, no tensor slots):
//!
//! ```text
//!   col 0 row 0:  A x^i y^i                 col 0 row 1:  A x^{i+1} y^i e2
//!   col 1 row 0:  plain + e1 parts          col 1 row 1:  e2 + e1e2 parts
//!   col 2 row 0:  A x^i y^{i+1} e1          col 2 row 1:  A x^i y^i e1e2
//! ```
//!
//! Everything is weight 0.  The boundary formulas are built from the shift
//! difference `T_c(P) = P(t+c) - P(t)` and the derivative of `u`.

use crate::algebra::diff::{derivative, t_lambda};
use crate::algebra::AElement;
use crate::scalar::Scalar;
use crate::skew::ESpec;

use super::window::{monomials_up_to, Window};
use super::{expand, BasisElt, ChainComplexFamily, ChainElt, ChainError, RawTerm};

#[derive(Clone)]
pub struct WComplex {
    pub spec: ESpec,
    pub lambda: Scalar,
}

impl WComplex {
    /// Checks the family hypotheses: polynomial base, shift `alpha`,
    /// `gamma = id`, `p = 1`.
    pub fn new(spec: ESpec) -> Result<WComplex, ChainError> {
        let lambda = shift_offset(&spec)?;
        Ok(WComplex { spec, lambda })
    }

    fn shift(&self, p: &AElement, c: &Scalar) -> AElement {
        p.subst_shift(c).expect("polynomial coefficient")
    }

    /// `T_{m lambda}(u) = u(t + m lambda) - u(t)`.
    fn t_mult(&self, m: i64) -> AElement {
        let c = self.lambda.mul(&Scalar::from_i64(m));
        t_lambda(&self.spec.u, &c).expect("polynomial u")
    }

    fn t_l(&self, p: &AElement) -> AElement {
        t_lambda(p, &self.lambda).expect("polynomial coefficient")
    }

    fn t_neg_l(&self, p: &AElement) -> AElement {
        t_lambda(p, &self.lambda.neg()).expect("polynomial coefficient")
    }

    fn mono(&self, x: &BasisElt) -> AElement {
        AElement::monomial(x.mono.clone(), Scalar::one())
    }

    fn term(col: u32, e1: bool, e2: bool, i: i64, j: i64, m: AElement) -> RawTerm {
        RawTerm {
            sign: Scalar::one(),
            col,
            e1,
            e2,
            i,
            j,
            m,
            tensor: vec![],
        }
    }
}

/// Extract the shift offset and verify the three hypotheses.
pub fn shift_offset(spec: &ESpec) -> Result<Scalar, ChainError> {
    use crate::algebra::Automorphism;
    if spec.base.nvars() != 1 || spec.base.is_laurent() {
        return Err(ChainError::Hypothesis(
            "the small shift complex needs A = k[t]".into(),
        ));
    }
    if !spec.p.is_one() {
        return Err(ChainError::Hypothesis("the small shift complex needs p = 1".into()));
    }
    if !spec.gamma.is_identity() {
        return Err(ChainError::Hypothesis(
            "the small shift complex needs gamma = id".into(),
        ));
    }
    match &spec.alpha {
        Automorphism::Affine { scale, offset } if scale.is_one() && !offset.is_zero() => {
            Ok(offset.clone())
        }
        _ => Err(ChainError::Hypothesis(
            "the small shift complex needs alpha(t) = t + lambda with lambda != 0".into(),
        )),
    }
}

impl ChainComplexFamily for WComplex {
    fn label(&self) -> String {
        "small-shift".into()
    }

    fn max_col(&self) -> Option<u32> {
        Some(2)
    }

    fn member(&self, x: &BasisElt) -> bool {
        if !x.tensor.is_empty() || x.mono.0.len() != 1 || x.weight() != 0 {
            return false;
        }
        let cols: &[u32] = match (x.e1, x.e2) {
            (false, false) | (false, true) => &[0, 1],
            (true, false) | (true, true) => &[1, 2],
        };
        cols.contains(&x.col)
    }

    fn horizontal(&self, x: &BasisElt) -> ChainElt {
        if x.col == 0 {
            return ChainElt::zero();
        }
        let p = self.mono(x);
        let (i, j) = (x.i as i64, x.j as i64);
        let mut raw = Vec::new();
        match (x.e1, x.e2, x.col) {
            // Plain and e2 parts of column 1 map to zero.
            (false, false, 1) | (false, true, 1) => {}
            (true, false, 1) => {
                // (j, j+1) e1 -> -T_l(P) x^{j+1} y^{j+1} - P T_{(j+1)l}(u) x^j y^j
                raw.push(Self::term(0, false, false, i + 1, j, self.t_l(&p).neg()));
                raw.push(Self::term(
                    0,
                    false,
                    false,
                    i,
                    j - 1,
                    p.mul(&self.t_mult(i + 1), &self.spec.base).neg(),
                ));
            }
            (true, false, 2) => {
                raw.push(Self::term(1, false, false, i + 1, j, self.t_l(&p)));
                raw.push(Self::term(
                    1,
                    false,
                    false,
                    i,
                    j - 1,
                    p.mul(&self.t_mult(i + 1), &self.spec.base),
                ));
            }
            (true, true, 1) => {
                // (j, j) e1e2 -> -T_l(P) x^{j+1}y^j e2 - P T_{jl}(u)(t+l) x^j y^{j-1} e2
                raw.push(Self::term(0, false, true, i + 1, j, self.t_l(&p).neg()));
                let c = self.shift(&self.t_mult(i), &self.lambda);
                if !c.is_zero() {
                    raw.push(Self::term(
                        0,
                        false,
                        true,
                        i,
                        j - 1,
                        p.mul(&c, &self.spec.base).neg(),
                    ));
                }
            }
            (true, true, 2) => {
                raw.push(Self::term(1, false, true, i + 1, j, self.t_l(&p)));
                let c = self.shift(&self.t_mult(i), &self.lambda);
                if !c.is_zero() {
                    raw.push(Self::term(1, false, true, i, j - 1, p.mul(&c, &self.spec.base)));
                }
            }
            _ => panic!("not a basis element of the small shift complex: {}", x),
        }
        expand(raw)
    }

    fn vertical(&self, x: &BasisElt) -> ChainElt {
        if !x.e2 {
            return ChainElt::zero();
        }
        let p = self.mono(x);
        let (i, j) = (x.i as i64, x.j as i64);
        let mut raw = Vec::new();
        let p_shift = self.shift(&p, &self.lambda.neg());
        match (x.e1, x.col) {
            (false, 0) => {
                // e2 at (i, j) = (i+1, i): -T_{-l}(P) x^i y^{j+1}
                //   + P(t-l) T_{il}(u) x^{i-1} y^j, subscript = input x-exponent
                raw.push(Self::term(0, false, false, i, j + 1, self.t_neg_l(&p).neg()));
                let c = self.t_mult(i);
                if !c.is_zero() {
                    raw.push(Self::term(
                        0,
                        false,
                        false,
                        i - 1,
                        j,
                        p_shift.mul(&c, &self.spec.base),
                    ));
                }
            }
            (false, 1) => {
                raw.push(Self::term(1, false, false, i, j + 1, self.t_neg_l(&p)));
                let c = self.t_mult(i);
                if !c.is_zero() {
                    raw.push(Self::term(
                        1,
                        false,
                        false,
                        i - 1,
                        j,
                        p_shift.mul(&c, &self.spec.base).neg(),
                    ));
                }
            }
            (true, 1) => {
                // (i, i) e1e2: T_{-l}(P) x^i y^{i+1} e1 - P(t-l) T_{il}(u) x^{i-1}y^i e1
                //              - P T_l(u') x^i y^i
                raw.push(Self::term(1, true, false, i, j + 1, self.t_neg_l(&p)));
                let c = self.t_mult(i);
                if !c.is_zero() {
                    raw.push(Self::term(
                        1,
                        true,
                        false,
                        i - 1,
                        j,
                        p_shift.mul(&c, &self.spec.base).neg(),
                    ));
                }
                let du = derivative(&self.spec.u).expect("polynomial u");
                let tldu = self.t_l(&du);
                if !tldu.is_zero() {
                    raw.push(Self::term(
                        1,
                        false,
                        false,
                        i,
                        j,
                        p.mul(&tldu, &self.spec.base).neg(),
                    ));
                }
            }
            (true, 2) => {
                raw.push(Self::term(2, true, false, i, j + 1, self.t_neg_l(&p).neg()));
                let c = self.t_mult(i);
                if !c.is_zero() {
                    raw.push(Self::term(
                        2,
                        true,
                        false,
                        i - 1,
                        j,
                        p_shift.mul(&c, &self.spec.base),
                    ));
                }
            }
            _ => panic!("not a basis element of the small shift complex: {}", x),
        }
        expand(raw)
    }

    fn enumerate(&self, w: &Window) -> Result<Vec<BasisElt>, ChainError> {
        if !w.weights.contains(&0) {
            return Err(ChainError::WindowTooSmall(
                "the small shift complex lives in weight 0".into(),
            ));
        }
        let monos = monomials_up_to(&self.spec.base, w.max_adeg);
        let mut out = Vec::new();
        for d in &monos {
            for i in 0..=w.max_i {
                // (col, e1, e2, i, j) sector table.
                let sectors: [(u32, bool, bool, u32, i64); 6] = [
                    (0, false, false, i, i as i64),
                    (1, false, false, i, i as i64),
                    (1, true, false, i, i as i64 + 1),
                    (2, true, false, i, i as i64 + 1),
                    (0, false, true, i + 1, i as i64),
                    (1, false, true, i + 1, i as i64),
                ];
                for (col, e1, e2, bi, bj) in sectors {
                    if bi > w.max_i || bj as u32 > w.max_j_eff() {
                        continue;
                    }
                    out.push(BasisElt {
                        col,
                        e2,
                        e1,
                        i: bi,
                        j: bj as u32,
                        mono: d.clone(),
                        tensor: vec![],
                    });
                }
                // e1e2 sectors at (i, i).
                for col in [1u32, 2] {
                    out.push(BasisElt {
                        col,
                        e2: true,
                        e1: true,
                        i,
                        j: i,
                        mono: d.clone(),
                        tensor: vec![],
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        if out.len() > w.max_basis {
            return Err(ChainError::ResourceCap(format!(
                "basis exceeds {} elements",
                w.max_basis
            )));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExpVec;
    use crate::skew::families::{shift_spec, usl2_spec};

    fn welt(col: u32, e1: bool, e2: bool, i: u32, j: u32, d: i64) -> BasisElt {
        BasisElt {
            col,
            e2,
            e1,
            i,
            j,
            mono: ExpVec(vec![d]),
            tensor: vec![],
        }
    }

    #[test]
    fn squares_vanish() {
        let wc = WComplex::new(usl2_spec()).unwrap();
        let w = Window::new(vec![0], 4, 8, 0);
        for x in wc.enumerate(&w).unwrap() {
            let dx = wc.horizontal(&x);
            let mut ddx = ChainElt::zero();
            for (y, c) in &dx.terms {
                ddx = ddx.add(&wc.horizontal(y).scale(c));
            }
            assert!(ddx.is_zero(), "d^2 != 0 at {}", x);
        }
    }

    #[test]
    fn anticommutation() {
        let wc = WComplex::new(usl2_spec()).unwrap();
        let w = Window::new(vec![0], 3, 6, 0);
        for x in wc.enumerate(&w).unwrap() {
            if !x.e2 {
                continue;
            }
            let mut phi_d = ChainElt::zero();
            for (y, c) in &wc.horizontal(&x).terms {
                phi_d = phi_d.add(&wc.vertical(y).scale(c));
            }
            let mut d_phi = ChainElt::zero();
            for (y, c) in &wc.vertical(&x).terms {
                d_phi = d_phi.add(&wc.horizontal(y).scale(c));
            }
            assert_eq!(phi_d, d_phi.scale(&Scalar::from_i64(-1)), "at {}", x);
        }
    }

    #[test]
    fn constant_u_kills_u_terms() {
        // With u constant the e1 boundary keeps only -T_l(Q) x^{j+1}y^{j+1}.
        let u = AElement::constant(1, Scalar::from_i64(5));
        let wc = WComplex::new(shift_spec(&u, Scalar::from_i64(2))).unwrap();
        let x = welt(1, true, false, 1, 2, 3); // t^3 x^1 y^2 e1
        let got = wc.horizontal(&x);
        for (y, _) in &got.terms {
            assert_eq!((y.i, y.j), (2, 2));
        }
        assert!(!got.is_zero());
    }

    #[test]
    fn rejects_wrong_hypotheses() {
        use crate::algebra::AutomorphismSpec;
        use crate::skew::ESpec;
        use crate::BaseAlgebra;
        // scaling alpha instead of shift
        let spec = ESpec::new(
            BaseAlgebra::Polynomial,
            &AutomorphismSpec::MonomialScaling(vec![Scalar::param_q()]),
            &AutomorphismSpec::Identity,
            AElement::var(1, 0),
            Scalar::one(),
        )
        .unwrap();
        assert!(WComplex::new(spec).is_err());
    }
}
