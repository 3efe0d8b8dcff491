//! The full two-row double complex computing `HH_*(E)`.
//!
//! Row-0 modules at column `n` are `(E (x) Abar^n) + (E (x) Abar^{n-1}) e1`
//! and row-1 modules are the same shapes tensored with `e2`.  The horizontal
//! boundary mixes Hochschild-style face maps (merge adjacent factors, cyclic
//! face with a twisted last factor) with the two-term differences that absorb
//! an `x`; the vertical map absorbs a `y` and, on `e1 e2` elements, inserts
//! the element `p^{-1} u - alpha(u)` into every slot with alternating signs.

use crate::algebra::{AElement, Automorphism, ExpVec};
use crate::scalar::Scalar;
use crate::skew::ESpec;

use super::window::{nonconstant_monomials_up_to, Window};
use super::{expand, BasisElt, ChainComplexFamily, ChainElt, ChainError, RawTerm};

/// Sign choice for the gamma exponent in the first twisted face of the
/// `e1` row-0 boundary.  The two published displays of that formula
/// disagree; `GammaJ` is the variant under which the squares vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TwistVariant {
    #[default]
    GammaJ,
    GammaNegJ,
}

#[derive(Clone)]
pub struct YComplex {
    pub spec: ESpec,
    pub variant: TwistVariant,
}

impl YComplex {
    pub fn new(spec: ESpec) -> YComplex {
        YComplex {
            spec,
            variant: TwistVariant::default(),
        }
    }

    pub fn with_variant(spec: ESpec, variant: TwistVariant) -> YComplex {
        YComplex { spec, variant }
    }

    fn mono(&self, x: &BasisElt) -> AElement {
        AElement::monomial(x.mono.clone(), Scalar::one())
    }

    fn slot(&self, x: &BasisElt, k: usize) -> AElement {
        AElement::monomial(x.tensor[k].clone(), Scalar::one())
    }

    fn slots(&self, x: &BasisElt) -> Vec<AElement> {
        (0..x.tensor.len()).map(|k| self.slot(x, k)).collect()
    }

    fn apply_all(&self, f: &Automorphism, slots: &[AElement]) -> Vec<AElement> {
        slots
            .iter()
            .map(|s| f.apply(&self.spec.base, s))
            .collect()
    }

    fn sign(n: i64) -> Scalar {
        if n % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::from_i64(-1)
        }
    }

    /// `u`-difference coefficient `p^j alpha^{i+1}(u) - alpha^{e}(u)`.
    fn u_diff(&self, j: i64, i: i64, e: i64) -> AElement {
        let pj = self.spec.p.pow(j).expect("p invertible");
        self.spec
            .apply_alpha_pow(i + 1, &self.spec.u)
            .scale(&pj)
            .sub(&self.spec.apply_alpha_pow(e, &self.spec.u))
    }

    /// Merge faces `sum (-1)^l d_l` for `l` in `lo..=hi`, where `d_l`
    /// multiplies slot `l` into slot `l+1` (1-indexed slots).
    fn merge_faces(&self, x: &BasisElt, lo: usize, hi: i64, raw: &mut Vec<RawTerm>) {
        if hi < lo as i64 {
            return;
        }
        for l in lo..=(hi as usize) {
            let mut tensor = Vec::new();
            for k in 0..x.tensor.len() {
                if k + 1 == l {
                    continue;
                }
                if k == l {
                    tensor.push(self.slot(x, k - 1).mul(&self.slot(x, k), &self.spec.base));
                } else {
                    tensor.push(self.slot(x, k));
                }
            }
            raw.push(RawTerm {
                sign: Self::sign(l as i64),
                col: x.col - 1,
                e1: x.e1,
                e2: x.e2,
                i: x.i as i64,
                j: x.j as i64,
                m: self.mono(x),
                tensor,
            });
        }
    }
}

impl ChainComplexFamily for YComplex {
    fn label(&self) -> String {
        "full".into()
    }

    fn max_col(&self) -> Option<u32> {
        None
    }

    fn member(&self, x: &BasisElt) -> bool {
        x.tensor.len() as u32 + x.e1 as u32 == x.col
            && x.tensor.iter().all(|m| !m.is_zero())
            && x.mono.0.len() == self.spec.nvars()
    }

    fn horizontal(&self, x: &BasisElt) -> ChainElt {
        let n = x.col as i64;
        let r = x.weight();
        let (i, j) = (x.i as i64, x.j as i64);
        let a = self.mono(x);
        let mut raw: Vec<RawTerm> = Vec::new();
        match (x.e1, x.e2) {
            (false, false) => {
                // sum_{l=0}^{n} (-1)^l d_l on plain row-0 elements.
                if n == 0 {
                    return ChainElt::zero();
                }
                let first = self
                    .spec
                    .apply_gamma_pow(j, &self.spec.apply_alpha_pow(-r, &self.slot(x, 0)));
                raw.push(RawTerm {
                    sign: Scalar::one(),
                    col: x.col - 1,
                    e1: false,
                    e2: false,
                    i,
                    j,
                    m: a.mul(&first, &self.spec.base),
                    tensor: self.slots(x)[1..].to_vec(),
                });
                self.merge_faces(x, 1, n - 1, &mut raw);
                raw.push(RawTerm {
                    sign: Self::sign(n),
                    col: x.col - 1,
                    e1: false,
                    e2: false,
                    i,
                    j,
                    m: self
                        .slot(x, x.tensor.len() - 1)
                        .mul(&a, &self.spec.base),
                    tensor: self.slots(x)[..x.tensor.len() - 1].to_vec(),
                });
            }
            (true, false) => {
                let s = x.tensor.len(); // = n - 1
                if s >= 1 {
                    let gexp = match self.variant {
                        TwistVariant::GammaJ => j,
                        TwistVariant::GammaNegJ => -j,
                    };
                    let first = self.spec.apply_gamma_pow(
                        gexp,
                        &self.spec.apply_alpha_pow(-r - 1, &self.slot(x, 0)),
                    );
                    raw.push(RawTerm {
                        sign: Scalar::one(),
                        col: x.col - 1,
                        e1: true,
                        e2: false,
                        i,
                        j,
                        m: a.mul(&first, &self.spec.base),
                        tensor: self.slots(x)[1..].to_vec(),
                    });
                    self.merge_faces(x, 1, n - 2, &mut raw);
                    let last = self
                        .spec
                        .alpha
                        .inverse()
                        .apply(&self.spec.base, &self.slot(x, s - 1));
                    raw.push(RawTerm {
                        sign: Self::sign(n - 1),
                        col: x.col - 1,
                        e1: true,
                        e2: false,
                        i,
                        j,
                        m: last.mul(&a, &self.spec.base),
                        tensor: self.slots(x)[..s - 1].to_vec(),
                    });
                }
                // x-absorbing terms: a x^i y^j x (x) alpha^{-1}(slots)
                // minus x a x^i y^j (x) slots, signed (-1)^{n-1}.
                let ainv = self.spec.alpha.inverse();
                let twisted = self.apply_all(&ainv, &self.slots(x));
                let pj = self.spec.p.pow(j).expect("p invertible");
                raw.push(RawTerm {
                    sign: Self::sign(n - 1).mul(&pj),
                    col: x.col - 1,
                    e1: false,
                    e2: false,
                    i: i + 1,
                    j,
                    m: a.clone(),
                    tensor: twisted.clone(),
                });
                raw.push(RawTerm {
                    sign: Self::sign(n),
                    col: x.col - 1,
                    e1: false,
                    e2: false,
                    i: i + 1,
                    j,
                    m: self.spec.alpha.apply(&self.spec.base, &a),
                    tensor: self.slots(x),
                });
                let c = self.u_diff(j, i, -r);
                if !c.is_zero() {
                    raw.push(RawTerm {
                        sign: Self::sign(n),
                        col: x.col - 1,
                        e1: false,
                        e2: false,
                        i,
                        j: j - 1,
                        m: a.mul(&c, &self.spec.base),
                        tensor: twisted,
                    });
                }
            }
            (false, true) => {
                if n == 0 {
                    return ChainElt::zero();
                }
                let first = self
                    .spec
                    .apply_gamma_pow(j, &self.spec.apply_alpha_pow(1 - r, &self.slot(x, 0)));
                raw.push(RawTerm {
                    sign: Scalar::one(),
                    col: x.col - 1,
                    e1: false,
                    e2: true,
                    i,
                    j,
                    m: a.mul(&first, &self.spec.base),
                    tensor: self.slots(x)[1..].to_vec(),
                });
                self.merge_faces(x, 1, n - 1, &mut raw);
                let last = self.spec.beta.inverse().apply(
                    &self.spec.base,
                    &self.slot(x, x.tensor.len() - 1),
                );
                raw.push(RawTerm {
                    sign: Self::sign(n),
                    col: x.col - 1,
                    e1: false,
                    e2: true,
                    i,
                    j,
                    m: last.mul(&a, &self.spec.base),
                    tensor: self.slots(x)[..x.tensor.len() - 1].to_vec(),
                });
            }
            (true, true) => {
                let s = x.tensor.len(); // = n - 1
                if s >= 1 {
                    let first = self
                        .spec
                        .apply_gamma_pow(j, &self.spec.apply_alpha_pow(-r, &self.slot(x, 0)));
                    raw.push(RawTerm {
                        sign: Scalar::one(),
                        col: x.col - 1,
                        e1: true,
                        e2: true,
                        i,
                        j,
                        m: a.mul(&first, &self.spec.base),
                        tensor: self.slots(x)[1..].to_vec(),
                    });
                    self.merge_faces(x, 1, n - 2, &mut raw);
                    let last = self
                        .spec
                        .gamma
                        .inverse()
                        .apply(&self.spec.base, &self.slot(x, s - 1));
                    raw.push(RawTerm {
                        sign: Self::sign(n - 1),
                        col: x.col - 1,
                        e1: true,
                        e2: true,
                        i,
                        j,
                        m: last.mul(&a, &self.spec.base),
                        tensor: self.slots(x)[..s - 1].to_vec(),
                    });
                }
                let ainv = self.spec.alpha.inverse();
                let twisted = self.apply_all(&ainv, &self.slots(x));
                let pj = self.spec.p.pow(j).expect("p invertible");
                let pinv = self.spec.p.invert().expect("p invertible");
                let sgn = Self::sign(n - 1);
                raw.push(RawTerm {
                    sign: sgn.mul(&pj),
                    col: x.col - 1,
                    e1: false,
                    e2: true,
                    i: i + 1,
                    j,
                    m: a.clone(),
                    tensor: twisted.clone(),
                });
                raw.push(RawTerm {
                    sign: sgn.mul(&pinv).neg(),
                    col: x.col - 1,
                    e1: false,
                    e2: true,
                    i: i + 1,
                    j,
                    m: self.spec.alpha.apply(&self.spec.base, &a),
                    tensor: self.slots(x),
                });
                let c = self.u_diff(j, i, 1 - r);
                if !c.is_zero() {
                    raw.push(RawTerm {
                        sign: sgn.neg(),
                        col: x.col - 1,
                        e1: false,
                        e2: true,
                        i,
                        j: j - 1,
                        m: a.mul(&c, &self.spec.base),
                        tensor: twisted,
                    });
                }
            }
        }
        expand(raw)
    }

    fn vertical(&self, x: &BasisElt) -> ChainElt {
        if !x.e2 {
            return ChainElt::zero();
        }
        let n = x.col as i64;
        let (i, j) = (x.i as i64, x.j as i64);
        let a = self.mono(x);
        let base = &self.spec.base;
        let mut raw: Vec<RawTerm> = Vec::new();
        // gamma(alpha^{-1}(a)) and the u-difference p^i alpha^i(u) - u.
        let ga = self
            .spec
            .gamma
            .apply(base, &self.spec.alpha.inverse().apply(base, &a));
        let pi = self.spec.p.pow(i).expect("p invertible");
        let udiff = self
            .spec
            .apply_alpha_pow(i, &self.spec.u)
            .scale(&pi)
            .sub(&self.spec.u);
        let binv = self.spec.beta.inverse();
        if !x.e1 {
            let sgn = Self::sign(n);
            raw.push(RawTerm {
                sign: sgn.clone(),
                col: x.col,
                e1: false,
                e2: false,
                i,
                j: j + 1,
                m: a.clone(),
                tensor: self.apply_all(&binv, &self.slots(x)),
            });
            raw.push(RawTerm {
                sign: sgn.mul(&pi).neg(),
                col: x.col,
                e1: false,
                e2: false,
                i,
                j: j + 1,
                m: ga.clone(),
                tensor: self.slots(x),
            });
            if !udiff.is_zero() {
                raw.push(RawTerm {
                    sign: sgn,
                    col: x.col,
                    e1: false,
                    e2: false,
                    i: i - 1,
                    j,
                    m: ga.mul(&udiff, base),
                    tensor: self.slots(x),
                });
            }
        } else {
            let s = x.tensor.len(); // = n - 1
            let sgn = Self::sign(n - 1);
            let pinv = self.spec.p.invert().expect("p invertible");
            raw.push(RawTerm {
                sign: sgn.mul(&pi),
                col: x.col,
                e1: true,
                e2: false,
                i,
                j: j + 1,
                m: ga.clone(),
                tensor: self.slots(x),
            });
            raw.push(RawTerm {
                sign: sgn.mul(&pinv).neg(),
                col: x.col,
                e1: true,
                e2: false,
                i,
                j: j + 1,
                m: a.clone(),
                tensor: self.apply_all(&binv, &self.slots(x)),
            });
            if !udiff.is_zero() {
                raw.push(RawTerm {
                    sign: sgn.neg(),
                    col: x.col,
                    e1: true,
                    e2: false,
                    i: i - 1,
                    j,
                    m: ga.mul(&udiff, base),
                    tensor: self.slots(x),
                });
            }
            // Insertion of b = p^{-1} u - alpha(u) into every slot position,
            // with gamma^{-1} applied to the tail.
            let b = self
                .spec
                .u
                .scale(&pinv)
                .sub(&self.spec.alpha.apply(base, &self.spec.u));
            if !b.is_zero() {
                let ginv = self.spec.gamma.inverse();
                for l in 0..=s {
                    let mut tensor: Vec<AElement> = Vec::with_capacity(s + 1);
                    for k in 0..l {
                        tensor.push(self.slot(x, k));
                    }
                    tensor.push(b.clone());
                    for k in l..s {
                        tensor.push(ginv.apply(base, &self.slot(x, k)));
                    }
                    raw.push(RawTerm {
                        sign: Self::sign(l as i64),
                        col: x.col,
                        e1: false,
                        e2: false,
                        i,
                        j,
                        m: a.clone(),
                        tensor,
                    });
                }
            }
        }
        expand(raw)
    }

    fn enumerate(&self, w: &Window) -> Result<Vec<BasisElt>, ChainError> {
        let mut out = Vec::new();
        let ncm = nonconstant_monomials_up_to(&self.spec.base, w.max_adeg);
        for &r in &w.weights {
            for e2 in [false, true] {
                for e1 in [false, true] {
                    let s = r + e1 as i64 - e2 as i64; // j - i
                    for i in 0..=w.max_i {
                        let j = i as i64 + s;
                        if j < 0 || j as u32 > w.max_j_eff() {
                            continue;
                        }
                        for len in 0..=w.max_len {
                            let col = len + e1 as u32;
                            if w.max_col.map(|c| col > c).unwrap_or(false) {
                                continue;
                            }
                            let mut tuple = Vec::new();
                            enumerate_tuples(
                                &ncm,
                                len as usize,
                                w.max_adeg,
                                &mut tuple,
                                &mut |tensor, used| {
                                    for m in
                                        super::window::monomials_up_to(&self.spec.base, w.max_adeg - used)
                                    {
                                        out.push(BasisElt {
                                            col,
                                            e2,
                                            e1,
                                            i,
                                            j: j as u32,
                                            mono: m,
                                            tensor: tensor.to_vec(),
                                        });
                                    }
                                },
                            );
                            if out.len() > w.max_basis {
                                return Err(ChainError::ResourceCap(format!(
                                    "basis exceeds {} elements",
                                    w.max_basis
                                )));
                            }
                        }
                    }
                }
            }
        }
        if let Some(t) = w.max_tdeg {
            out.retain(|x| super::window::total_degree(x) <= t);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Enumerate ordered tuples of nonconstant monomials within a shared degree
/// budget, reporting the budget used.
fn enumerate_tuples(
    pool: &[ExpVec],
    len: usize,
    budget: i64,
    cur: &mut Vec<ExpVec>,
    f: &mut impl FnMut(&[ExpVec], i64),
) {
    if cur.len() == len {
        let used: i64 = cur.iter().map(|e| e.norm()).sum();
        f(cur, used);
        return;
    }
    let used: i64 = cur.iter().map(|e| e.norm()).sum();
    for m in pool {
        if used + m.norm() <= budget {
            cur.push(m.clone());
            enumerate_tuples(pool, len, budget, cur, f);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::diff::t_lambda;
    use crate::skew::families::{laurent_spec, qa2_spec, usl2_spec};

    fn elt(col: u32, e1: bool, e2: bool, i: u32, j: u32, nv: usize, tensor: Vec<ExpVec>) -> BasisElt {
        BasisElt {
            col,
            e2,
            e1,
            i,
            j,
            mono: ExpVec::zeros(nv),
            tensor,
        }
    }

    #[test]
    fn e1_boundary_at_column_one() {
        // Shift family, r = 0: boundary of x^0 y^1 e1 at column 1 is
        // -T_lambda(u) x^0 y^0.
        let yc = YComplex::new(usl2_spec());
        let x = elt(1, true, false, 0, 1, 1, vec![]);
        let got = yc.horizontal(&x);
        let tl = t_lambda(&yc.spec.u, &Scalar::from_i64(2)).unwrap();
        let mut expect = ChainElt::zero();
        for (e, c) in tl.terms() {
            expect.add_term(
                BasisElt {
                    col: 0,
                    e2: false,
                    e1: false,
                    i: 0,
                    j: 0,
                    mono: e.clone(),
                    tensor: vec![],
                },
                c.neg(),
            );
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn vertical_on_x1y0_e2() {
        // phi_0 on x^1 y^0 e2 (a = 1, p = 1, gamma = id, r = 0) gives
        // T_lambda(u) x^0 y^0: the two x^1 y^1 terms cancel.
        let yc = YComplex::new(usl2_spec());
        let x = elt(0, false, true, 1, 0, 1, vec![]);
        let got = yc.vertical(&x);
        let tl = t_lambda(&yc.spec.u, &Scalar::from_i64(2)).unwrap();
        let mut expect = ChainElt::zero();
        for (e, c) in tl.terms() {
            expect.add_term(
                BasisElt {
                    col: 0,
                    e2: false,
                    e1: false,
                    i: 0,
                    j: 0,
                    mono: e.clone(),
                    tensor: vec![],
                },
                c.clone(),
            );
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn weight_preservation() {
        let yc = YComplex::new(qa2_spec(Scalar::param_p()));
        let w = Window::new(vec![-1, 0, 1], 2, 2, 2);
        for x in yc.enumerate(&w).unwrap() {
            let r = x.weight();
            for (y, _) in yc.horizontal(&x).terms.iter() {
                assert_eq!(y.weight(), r, "horizontal from {}", x);
            }
            for (y, _) in yc.vertical(&x).terms.iter() {
                assert_eq!(y.weight(), r, "vertical from {}", x);
            }
        }
    }

    #[test]
    fn squares_vanish_on_sample() {
        // d(d(x)) = 0 symbolically, for a window sample in all families.
        for spec in [usl2_spec(), qa2_spec(Scalar::param_p()), laurent_spec()] {
            let yc = YComplex::new(spec);
            let w = Window::new(vec![-1, 0, 1], 2, 2, 2);
            for x in yc.enumerate(&w).unwrap() {
                let dx = yc.horizontal(&x);
                let mut ddx = ChainElt::zero();
                for (y, c) in &dx.terms {
                    ddx = ddx.add(&yc.horizontal(y).scale(c));
                }
                assert!(ddx.is_zero(), "d^2 != 0 at {} -> {}", x, ddx);
            }
        }
    }

    #[test]
    fn squares_fail_for_flipped_twist_variant() {
        // With the opposite gamma-exponent sign the square is nonzero as
        // soon as gamma != id and j > 0.
        let yc = YComplex::with_variant(qa2_spec(Scalar::one()), TwistVariant::GammaNegJ);
        let w = Window::new(vec![0], 3, 3, 2);
        let mut found = false;
        for x in yc.enumerate(&w).unwrap() {
            let dx = yc.horizontal(&x);
            let mut ddx = ChainElt::zero();
            for (y, c) in &dx.terms {
                ddx = ddx.add(&yc.horizontal(y).scale(c));
            }
            if !ddx.is_zero() {
                found = true;
                break;
            }
        }
        assert!(found, "expected a square-zero violation under GammaNegJ");
    }

    #[test]
    fn vertical_anticommutes_with_horizontal() {
        for spec in [usl2_spec(), qa2_spec(Scalar::param_p()), laurent_spec()] {
            let yc = YComplex::new(spec);
            let w = Window::new(vec![-1, 0, 1], 2, 2, 2);
            for x in yc.enumerate(&w).unwrap() {
                if !x.e2 {
                    continue;
                }
                let mut phi_d = ChainElt::zero();
                for (y, c) in &yc.horizontal(&x).terms {
                    phi_d = phi_d.add(&yc.vertical(y).scale(c));
                }
                let mut d_phi = ChainElt::zero();
                for (y, c) in &yc.vertical(&x).terms {
                    d_phi = d_phi.add(&yc.horizontal(y).scale(c));
                }
                assert_eq!(
                    phi_d,
                    d_phi.scale(&Scalar::from_i64(-1)),
                    "no anticommutation at {}",
                    x
                );
            }
        }
    }
}
