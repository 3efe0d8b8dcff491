//! The reduced two-column complex available when `A = k + I` for an ideal
//! `I` preserved by `alpha` and `gamma`, and `p^{-i} (gamma^{-1} alpha)^{(x) n} - id`
//! is bijective on `I^{(x) n}`.  Its modules have coefficients in `k` only:
//!
//! ```text
//!   col 0 row 0: k x^i y^j           (j - i = r)
//!   col 1 row 0: k x^i y^j e1        (j - i = r + 1)
//!   col 0 row 1: k x^i y^j e2        (j - i = r - 1)
//!   col 1 row 1: k x^i y^j e1e2      (j - i = r)
//! ```
//!
//! with boundary coefficients built from powers of `p` and the class
//! `ubar` of `u` in `k = A/I`.  At `p = 1` every map vanishes.

use crate::algebra::{Automorphism, ExpVec};
use crate::scalar::Scalar;
use crate::skew::ESpec;

use super::window::nonconstant_monomials_up_to;
use super::{BasisElt, ChainComplexFamily, ChainElt, ChainError, Window};

#[derive(Clone)]
pub struct ReducedComplex {
    pub spec: ESpec,
    /// Class of `u` in `k = A/I` (the constant coefficient).
    pub ubar: Scalar,
}

impl ReducedComplex {
    pub fn new(spec: ESpec) -> Result<ReducedComplex, ChainError> {
        check_ideal_hypotheses(&spec)?;
        let ubar = spec.u.constant_part();
        Ok(ReducedComplex { spec, ubar })
    }

    fn p_pow(&self, k: i64) -> Scalar {
        self.spec.p.pow(k).expect("p invertible")
    }

    fn mk(col: u32, e1: bool, e2: bool, i: i64, j: i64, nv: usize) -> BasisElt {
        BasisElt {
            col,
            e2,
            e1,
            i: i as u32,
            j: j as u32,
            mono: ExpVec::zeros(nv),
            tensor: vec![],
        }
    }
}

/// Structural part of the reduced-complex hypotheses: the ideal of
/// nonconstant normal-form combinations is preserved exactly when both
/// automorphisms are monomial scalings.
pub fn check_ideal_hypotheses(spec: &ESpec) -> Result<(), ChainError> {
    let ok = |a: &Automorphism| match a {
        Automorphism::Diagonal(_) => true,
        Automorphism::Affine { offset, .. } => offset.is_zero(),
    };
    if !ok(&spec.alpha) || !ok(&spec.gamma) {
        return Err(ChainError::Hypothesis(
            "the reduced complex needs alpha and gamma to preserve the augmentation ideal \
             (monomial scalings)"
                .into(),
        ));
    }
    Ok(())
}

/// Eigenvalue of `gamma^{-1} alpha` on the monomial `m`.
fn eigenvalue(spec: &ESpec, m: &ExpVec) -> Scalar {
    let f = spec.gamma.inverse().compose(&spec.alpha);
    let img = f.apply(
        &spec.base,
        &crate::algebra::AElement::monomial(m.clone(), Scalar::one()),
    );
    img.coeff(m)
}

/// Check the bijectivity condition `p^{-i} (gamma^{-1} alpha)^{(x) n} != id`
/// eigenvalue-wise on all in-window monomial tuples; returns violation
/// witnesses.
pub fn bijectivity_witnesses(spec: &ESpec, w: &Window) -> Vec<String> {
    let mut out = Vec::new();
    let monos = nonconstant_monomials_up_to(&spec.base, w.max_adeg);
    let eigen: Vec<Scalar> = monos.iter().map(|m| eigenvalue(spec, m)).collect();
    // Tuples are products of per-slot eigenvalues; distinct products within
    // budget are generated by multisets, but the product only depends on the
    // multiset of eigenvalues, so sample tuples up to length max(1, max_len).
    let maxlen = w.max_len.max(1) as usize;
    let mut stack: Vec<(usize, Scalar, i64)> = vec![(0, Scalar::one(), 0)];
    let mut products = Vec::new();
    while let Some((len, acc, used)) = stack.pop() {
        if len > 0 {
            products.push(acc.clone());
        }
        if len == maxlen {
            continue;
        }
        for (k, m) in monos.iter().enumerate() {
            let cost = m.norm();
            if used + cost <= w.max_adeg {
                stack.push((len + 1, acc.mul(&eigen[k]), used + cost));
            }
        }
    }
    products.sort_by_key(|s| format!("{}", s));
    products.dedup();
    for i in 0..=(w.max_i as i64) {
        let pi = spec.p.pow(-i).expect("p invertible");
        for prod in &products {
            if pi.mul(prod).is_one() {
                out.push(format!(
                    "p^{{-{}}} * (gamma^-1 alpha)-eigenvalue {} equals 1",
                    i, prod
                ));
            }
        }
    }
    out
}

impl ChainComplexFamily for ReducedComplex {
    fn label(&self) -> String {
        "reduced".into()
    }

    fn max_col(&self) -> Option<u32> {
        Some(1)
    }

    fn member(&self, x: &BasisElt) -> bool {
        x.tensor.is_empty() && x.mono.is_zero() && x.col == x.e1 as u32
    }

    fn horizontal(&self, x: &BasisElt) -> ChainElt {
        if !x.e1 {
            return ChainElt::zero();
        }
        let nv = self.spec.nvars();
        let (i, j) = (x.i as i64, x.j as i64);
        let mut out = ChainElt::zero();
        if !x.e2 {
            // (p^j - 1) x^{i+1} y^j - (p^j - 1) ubar x^i y^{j-1}
            let c = self.p_pow(j).sub(&Scalar::one());
            out.add_term(Self::mk(0, false, false, i + 1, j, nv), c.clone());
            let c2 = c.mul(&self.ubar).neg();
            if !c2.is_zero() {
                out.add_term(Self::mk(0, false, false, i, j - 1, nv), c2);
            }
        } else {
            // (p^j - p^{-1}) x^{i+1} y^j e2 - (p^j - 1) ubar x^i y^{j-1} e2
            let c = self.p_pow(j).sub(&self.p_pow(-1));
            out.add_term(Self::mk(0, false, true, i + 1, j, nv), c);
            let c2 = self
                .p_pow(j)
                .sub(&Scalar::one())
                .mul(&self.ubar)
                .neg();
            if !c2.is_zero() {
                out.add_term(Self::mk(0, false, true, i, j - 1, nv), c2);
            }
        }
        out
    }

    fn vertical(&self, x: &BasisElt) -> ChainElt {
        if !x.e2 {
            return ChainElt::zero();
        }
        let nv = self.spec.nvars();
        let (i, j) = (x.i as i64, x.j as i64);
        let mut out = ChainElt::zero();
        if !x.e1 {
            // (1 - p^i) x^i y^{j+1} + (p^i - 1) ubar x^{i-1} y^j
            let c = Scalar::one().sub(&self.p_pow(i));
            out.add_term(Self::mk(0, false, false, i, j + 1, nv), c.clone());
            let c2 = c.neg().mul(&self.ubar);
            if !c2.is_zero() {
                out.add_term(Self::mk(0, false, false, i - 1, j, nv), c2);
            }
        } else {
            // (p^i - p^{-1}) x^i y^{j+1} e1 - (p^i - 1) ubar x^{i-1} y^j e1
            let c = self.p_pow(i).sub(&self.p_pow(-1));
            out.add_term(Self::mk(1, true, false, i, j + 1, nv), c);
            let c2 = self
                .p_pow(i)
                .sub(&Scalar::one())
                .mul(&self.ubar)
                .neg();
            if !c2.is_zero() {
                out.add_term(Self::mk(1, true, false, i - 1, j, nv), c2);
            }
        }
        out
    }

    fn enumerate(&self, w: &Window) -> Result<Vec<BasisElt>, ChainError> {
        let nv = self.spec.nvars();
        let mut out = Vec::new();
        for &r in &w.weights {
            let sectors: [(bool, bool, i64); 4] = [
                (false, false, r),
                (true, false, r + 1),
                (false, true, r - 1),
                (true, true, r),
            ];
            for (e1, e2, s) in sectors {
                for i in 0..=w.max_i {
                    let j = i as i64 + s;
                    if j < 0 || j as u32 > w.max_j_eff() {
                        continue;
                    }
                    out.push(BasisElt {
                        col: e1 as u32,
                        e2,
                        e1,
                        i,
                        j: j as u32,
                        mono: ExpVec::zeros(nv),
                        tensor: vec![],
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::families::qa2_spec;

    #[test]
    fn all_boundaries_vanish_at_p_one() {
        let rc = ReducedComplex::new(qa2_spec(Scalar::one())).unwrap();
        let w = Window::new(vec![-1, 0, 1], 3, 0, 0);
        for x in rc.enumerate(&w).unwrap() {
            assert!(rc.horizontal(&x).is_zero(), "horizontal at {}", x);
            assert!(rc.vertical(&x).is_zero(), "vertical at {}", x);
        }
    }

    #[test]
    fn generic_p_squares_vanish() {
        let rc = ReducedComplex::new(qa2_spec(Scalar::param_p())).unwrap();
        let w = Window::new(vec![-1, 0, 1, 2], 3, 0, 0);
        for x in rc.enumerate(&w).unwrap() {
            // Two-column complex: only need phi . delta-type composites.
            let mut dd = ChainElt::zero();
            for (y, c) in &rc.horizontal(&x).terms {
                dd = dd.add(&rc.horizontal(y).scale(c));
            }
            assert!(dd.is_zero());
            // anticommutation of the (single) square
            if x.e2 && x.e1 {
                let mut phi_d = ChainElt::zero();
                for (y, c) in &rc.horizontal(&x).terms {
                    phi_d = phi_d.add(&rc.vertical(y).scale(c));
                }
                let mut d_phi = ChainElt::zero();
                for (y, c) in &rc.vertical(&x).terms {
                    d_phi = d_phi.add(&rc.horizontal(y).scale(c));
                }
                assert_eq!(phi_d, d_phi.scale(&Scalar::from_i64(-1)), "at {}", x);
            }
        }
    }

    #[test]
    fn bijectivity_holds_for_generic_parameters() {
        let spec = qa2_spec(Scalar::param_p());
        let w = Window::new(vec![0], 3, 3, 3);
        assert!(bijectivity_witnesses(&spec, &w).is_empty());
    }
}
