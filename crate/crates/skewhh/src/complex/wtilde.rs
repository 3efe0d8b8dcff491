//! The small three-column double complexes for the Laurent scaling case
//! `A = k[t, 1/t]`, `alpha(t) = q t`, `gamma = id`, `p = 1`, one complex per
//! weight `r`.
//!
//! Modules (coefficients in `A`, no tensor slots; all `i, j >= 0`):
//!
//! ```text
//!   col 0 row 0:  A x^i y^j        (j - i = r)
//!   col 2 row 0:  A x^i y^j e1     (j - i = r + 1)
//!   col 0 row 1:  A x^i y^j e2     (j - i = r - 1)
//!   col 2 row 1:  A x^i y^j e1e2   (j - i = r)
//!   col 1:        direct sums as in the shift case
//! ```
//!
//! The published display types one output of the `e1e2` column-2 boundary
//! as a bare `e1` term, which is outside the stated codomain; it is realized
//! here as `e1e2` (same bidegree), the resolution under which all squares
//! vanish and the comparison chain map commutes.

use crate::algebra::diff::{delta_q_at, difference_operator, DifferenceOp};
use crate::algebra::AElement;
use crate::scalar::Scalar;
use crate::skew::ESpec;

use super::window::{monomials_up_to, Window};
use super::{expand, BasisElt, ChainComplexFamily, ChainElt, ChainError, RawTerm};

#[derive(Clone)]
pub struct WtComplex {
    pub spec: ESpec,
    pub r: i64,
}

impl WtComplex {
    pub fn new(spec: ESpec, r: i64) -> Result<WtComplex, ChainError> {
        check_scaling_hypotheses(&spec)?;
        Ok(WtComplex { spec, r })
    }

    fn q() -> Scalar {
        Scalar::param_q()
    }

    /// `T~_a^b(P) = P(q^a t) - P(q^b t)`.
    fn t_tilde(&self, a: i64, b: i64, p: &AElement) -> AElement {
        difference_operator(&self.spec.base, &DifferenceOp::TTilde(a, b), p)
            .expect("Laurent coefficient")
    }

    /// `T'_q(P) = P(qt) - q^{-1} P(t)`.
    fn t_prime_q(&self, p: &AElement) -> AElement {
        difference_operator(&self.spec.base, &DifferenceOp::TPrimeQ, p)
            .expect("Laurent coefficient")
    }

    /// `T'_{q^{-1}}(P) = P(q^{-1}t) - q P(t)`.
    fn t_prime_qinv(&self, p: &AElement) -> AElement {
        difference_operator(&self.spec.base, &DifferenceOp::TPrimeQInv, p)
            .expect("Laurent coefficient")
    }

    fn scale_t(&self, p: &AElement, e: i64) -> AElement {
        p.subst_scale(&Self::q().pow(e).unwrap()).unwrap()
    }

    fn mono(&self, x: &BasisElt) -> AElement {
        AElement::monomial(x.mono.clone(), Scalar::one())
    }

    fn times_t(&self, p: &AElement) -> AElement {
        p.mul(&AElement::var(1, 0), &self.spec.base)
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

    /// `q^a - q^b` as a scalar.
    fn qdiff(a: i64, b: i64) -> Scalar {
        Self::q().pow(a).unwrap().sub(&Self::q().pow(b).unwrap())
    }
}

/// The scaling-case hypotheses: Laurent base, scaling `alpha`, `gamma = id`,
/// `p = 1`.
pub fn check_scaling_hypotheses(spec: &ESpec) -> Result<(), ChainError> {
    use crate::algebra::Automorphism;
    if !spec.base.is_laurent() {
        return Err(ChainError::Hypothesis(
            "the small scaling complex needs A = k[t, 1/t]".into(),
        ));
    }
    if !spec.p.is_one() {
        return Err(ChainError::Hypothesis(
            "the small scaling complex needs p = 1".into(),
        ));
    }
    if !spec.gamma.is_identity() {
        return Err(ChainError::Hypothesis(
            "the small scaling complex needs gamma = id".into(),
        ));
    }
    match &spec.alpha {
        Automorphism::Affine { scale, offset }
            if offset.is_zero() && *scale == Scalar::param_q() =>
        {
            Ok(())
        }
        _ => Err(ChainError::Hypothesis(
            "the small scaling complex needs alpha(t) = q t".into(),
        )),
    }
}

impl ChainComplexFamily for WtComplex {
    fn label(&self) -> String {
        format!("small-scaling(r={})", self.r)
    }

    fn max_col(&self) -> Option<u32> {
        Some(2)
    }

    fn member(&self, x: &BasisElt) -> bool {
        if !x.tensor.is_empty() || x.mono.0.len() != 1 || x.weight() != self.r {
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
        let r = self.r;
        let mut raw = Vec::new();
        match (x.e1, x.e2, x.col) {
            (false, false, 1) => {
                // plain part: (q^{-r} - 1) t P x^i y^j
                let c = Self::qdiff(-r, 0);
                if !c.is_zero() {
                    raw.push(Self::term(0, false, false, i, j, self.times_t(&p).scale(&c)));
                }
            }
            (false, true, 1) => {
                // e2 part: (q^{-r+1} - q) t P x^i y^j e2
                let c = Self::qdiff(-r + 1, 1);
                if !c.is_zero() {
                    raw.push(Self::term(0, false, true, i, j, self.times_t(&p).scale(&c)));
                }
            }
            (true, false, 1) => {
                // -T~_1^0(P) x^{i+1} y^j - P T~_{i+1}^{-r}(u) x^i y^{j-1}
                raw.push(Self::term(0, false, false, i + 1, j, self.t_tilde(1, 0, &p).neg()));
                let c = self.t_tilde(i + 1, -r, &self.spec.u);
                if !c.is_zero() {
                    raw.push(Self::term(
                        0,
                        false,
                        false,
                        i,
                        j - 1,
                        p.mul(&c, &self.spec.base).neg(),
                    ));
                }
            }
            (true, false, 2) => {
                // T'_q(P) x^{i+1}y^j + q^{-1} P T~_{i+1}^{-r}(u) x^i y^{j-1}
                //   + (q^{-r-1} - q^{-1}) t P x^i y^j e1
                raw.push(Self::term(1, false, false, i + 1, j, self.t_prime_q(&p)));
                let c = self.t_tilde(i + 1, -r, &self.spec.u);
                if !c.is_zero() {
                    let qinv = Self::q().pow(-1).unwrap();
                    raw.push(Self::term(
                        1,
                        false,
                        false,
                        i,
                        j - 1,
                        p.mul(&c, &self.spec.base).scale(&qinv),
                    ));
                }
                let c = Self::qdiff(-r - 1, -1);
                if !c.is_zero() {
                    raw.push(Self::term(1, true, false, i, j, self.times_t(&p).scale(&c)));
                }
            }
            (true, true, 1) => {
                // -T~_1^0(P) x^{i+1}y^j e2 - P T~_{i+1}^{-r+1}(u) x^i y^{j-1} e2
                raw.push(Self::term(0, false, true, i + 1, j, self.t_tilde(1, 0, &p).neg()));
                let c = self.t_tilde(i + 1, -r + 1, &self.spec.u);
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
                // T'_q(P)x^{i+1}y^j e2 + q^{-1} P T~_{i+1}^{-r+1}(u) x^i y^{j-1} e2
                //   + (q^{-r} - 1) t P x^i y^j e1e2
                raw.push(Self::term(1, false, true, i + 1, j, self.t_prime_q(&p)));
                let c = self.t_tilde(i + 1, -r + 1, &self.spec.u);
                if !c.is_zero() {
                    let qinv = Self::q().pow(-1).unwrap();
                    raw.push(Self::term(
                        1,
                        false,
                        true,
                        i,
                        j - 1,
                        p.mul(&c, &self.spec.base).scale(&qinv),
                    ));
                }
                let c = Self::qdiff(-r, 0);
                if !c.is_zero() {
                    raw.push(Self::term(1, true, true, i, j, self.times_t(&p).scale(&c)));
                }
            }
            _ => panic!("not a basis element of the small scaling complex: {}", x),
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
        // P(q^{-1} t) and T~_i^0(u).
        let p_qinv = self.scale_t(&p, -1);
        let tu = self.t_tilde(i, 0, &self.spec.u);
        match (x.e1, x.col) {
            (false, 0) => {
                // -T~_{-1}^0(P) x^i y^{j+1} + P(q^{-1}t) T~_i^0(u) x^{i-1} y^j
                raw.push(Self::term(0, false, false, i, j + 1, self.t_tilde(-1, 0, &p).neg()));
                if !tu.is_zero() {
                    raw.push(Self::term(
                        0,
                        false,
                        false,
                        i - 1,
                        j,
                        p_qinv.mul(&tu, &self.spec.base),
                    ));
                }
            }
            (false, 1) => {
                // T'_{q^{-1}}(P) x^i y^{j+1} - P(q^{-1}t) T~_i^0(u) x^{i-1}y^j
                raw.push(Self::term(1, false, false, i, j + 1, self.t_prime_qinv(&p)));
                if !tu.is_zero() {
                    raw.push(Self::term(
                        1,
                        false,
                        false,
                        i - 1,
                        j,
                        p_qinv.mul(&tu, &self.spec.base).neg(),
                    ));
                }
            }
            (true, 1) => {
                // T~_{-1}^0(P) x^i y^{j+1} e1 - P(q^{-1}t) T~_i^0(u) x^{i-1}y^j e1
                //   - P delta_{q^{-r}}(T~_1^0(u)) x^i y^j
                raw.push(Self::term(1, true, false, i, j + 1, self.t_tilde(-1, 0, &p)));
                if !tu.is_zero() {
                    raw.push(Self::term(
                        1,
                        true,
                        false,
                        i - 1,
                        j,
                        p_qinv.mul(&tu, &self.spec.base).neg(),
                    ));
                }
                let x_param = Scalar::param_q().pow(-self.r).unwrap();
                let dq = delta_q_at(&self.t_tilde(1, 0, &self.spec.u), &x_param)
                    .expect("q-divided difference");
                if !dq.is_zero() {
                    raw.push(Self::term(
                        1,
                        false,
                        false,
                        i,
                        j,
                        p.mul(&dq, &self.spec.base).neg(),
                    ));
                }
            }
            (true, 2) => {
                // -T'_{q^{-1}}(P) x^i y^{j+1} e1 + P(q^{-1}t) T~_i^0(u) x^{i-1}y^j e1
                raw.push(Self::term(2, true, false, i, j + 1, self.t_prime_qinv(&p).neg()));
                if !tu.is_zero() {
                    raw.push(Self::term(
                        2,
                        true,
                        false,
                        i - 1,
                        j,
                        p_qinv.mul(&tu, &self.spec.base),
                    ));
                }
            }
            _ => panic!("not a basis element of the small scaling complex: {}", x),
        }
        expand(raw)
    }

    fn enumerate(&self, w: &Window) -> Result<Vec<BasisElt>, ChainError> {
        let monos = monomials_up_to(&self.spec.base, w.max_adeg);
        let mut out = Vec::new();
        let r = self.r;
        // (e1, e2, sector offset of j - i)
        let sectors: [(bool, bool, i64, &[u32]); 4] = [
            (false, false, r, &[0, 1]),
            (true, false, r + 1, &[1, 2]),
            (false, true, r - 1, &[0, 1]),
            (true, true, r, &[1, 2]),
        ];
        for d in &monos {
            for i in 0..=w.max_i {
                for (e1, e2, s, cols) in sectors.iter() {
                    let j = i as i64 + s;
                    if j < 0 || j as u32 > w.max_j_eff() {
                        continue;
                    }
                    for &col in *cols {
                        out.push(BasisElt {
                            col,
                            e2: *e2,
                            e1: *e1,
                            i,
                            j: j as u32,
                            mono: d.clone(),
                            tensor: vec![],
                        });
                    }
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
    use crate::skew::families::laurent_spec;

    #[test]
    fn squares_vanish_all_weights() {
        for r in [-1i64, 0, 1] {
            let wt = WtComplex::new(laurent_spec(), r).unwrap();
            let w = Window::new(vec![r], 3, 4, 0);
            for x in wt.enumerate(&w).unwrap() {
                let dx = wt.horizontal(&x);
                let mut ddx = ChainElt::zero();
                for (y, c) in &dx.terms {
                    ddx = ddx.add(&wt.horizontal(y).scale(c));
                }
                assert!(ddx.is_zero(), "d^2 != 0 at {} (r={}): {}", x, r, ddx);
            }
        }
    }

    #[test]
    fn anticommutation_all_weights() {
        for r in [-1i64, 0, 1] {
            let wt = WtComplex::new(laurent_spec(), r).unwrap();
            let w = Window::new(vec![r], 2, 3, 0);
            for x in wt.enumerate(&w).unwrap() {
                if !x.e2 {
                    continue;
                }
                let mut phi_d = ChainElt::zero();
                for (y, c) in &wt.horizontal(&x).terms {
                    phi_d = phi_d.add(&wt.vertical(y).scale(c));
                }
                let mut d_phi = ChainElt::zero();
                for (y, c) in &wt.vertical(&x).terms {
                    d_phi = d_phi.add(&wt.horizontal(y).scale(c));
                }
                assert_eq!(
                    phi_d,
                    d_phi.scale(&Scalar::from_i64(-1)),
                    "at {} (r={})",
                    x,
                    r
                );
            }
        }
    }
}
