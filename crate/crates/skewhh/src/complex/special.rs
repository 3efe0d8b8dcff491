//! Distinguished elements of the small shift complex: the shifted-product
//! polynomials `U_j^n`, the cycles `V_n` in the `e1e2` corner, and the
//! correction chains `W_n` in the `e1` corner.

use crate::algebra::diff::derivative;
use crate::algebra::AElement;
use crate::scalar::Scalar;
use crate::skew::ESpec;

use super::w::{shift_offset, WComplex};
use super::{BasisElt, ChainElt, ChainError};

/// `U_j^n(t) = (-1)^{n-j} sum u(t + i_1 l) ... u(t + i_{n-j} l)` over
/// nondecreasing tuples `0 <= i_1 <= ... <= i_{n-j} <= j+1`.
pub fn u_product(spec: &ESpec, n: i64, j: i64) -> Result<AElement, ChainError> {
    let lambda = shift_offset(spec)?;
    if n < 0 || j < -1 || j > n {
        return Err(ChainError::IndexRange(format!(
            "U_j^n needs n >= 0 and -1 <= j <= n, got n={} j={}",
            n, j
        )));
    }
    // j = n is the empty product: U_n^n = 1.
    let len = (n - j) as usize;
    // Shifted copies u(t + m lambda) for m = 0..=j+1.
    let shifts: Vec<AElement> = (0..=(j + 1))
        .map(|m| {
            spec.u
                .subst_shift(&lambda.mul(&Scalar::from_i64(m)))
                .expect("polynomial u")
        })
        .collect();
    let mut total = AElement::zero(1);
    let mut tuple = vec![0usize; len];
    loop {
        let mut prod = AElement::one(1);
        for &ix in &tuple {
            prod = prod.mul(&shifts[ix], &spec.base);
        }
        total = total.add(&prod);
        // next nondecreasing tuple
        let mut k = len;
        loop {
            if k == 0 {
                let sign = if (n - j) % 2 == 0 { 1 } else { -1 };
                return Ok(total.scale(&Scalar::from_i64(sign)));
            }
            k -= 1;
            if tuple[k] < (j + 1) as usize {
                let v = tuple[k] + 1;
                for slot in tuple.iter_mut().skip(k) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

fn corner_elt(col: u32, e1: bool, e2: bool, i: i64, j: i64, coeff: &AElement) -> ChainElt {
    let mut out = ChainElt::zero();
    for (e, c) in coeff.terms() {
        out.add_term(
            BasisElt {
                col,
                e2,
                e1,
                i: i as u32,
                j: j as u32,
                mono: e.clone(),
                tensor: vec![],
            },
            c.clone(),
        );
    }
    out
}

/// `V_n = x^n y^n e1e2 + sum_{j=0}^{n-1} U_{j-1}^{n-1}(t+l) x^j y^j e1e2`,
/// a cycle of the top corner (column 2, row 1).
pub fn v_cycle(spec: &ESpec, n: i64) -> Result<ChainElt, ChainError> {
    let lambda = shift_offset(spec)?;
    if n < 0 {
        return Err(ChainError::IndexRange("V_n needs n >= 0".into()));
    }
    let mut out = corner_elt(2, true, true, n, n, &AElement::one(1));
    for j in 0..n {
        let c = u_product(spec, n - 1, j - 1)?
            .subst_shift(&lambda)
            .expect("polynomial");
        out = out.add(&corner_elt(2, true, true, j, j, &c));
    }
    Ok(out)
}

/// `W_n = -(u'(t) - u'(l)) x^{n-1} y^n e1
///        - sum_{j=1}^{n-1} U_{j-1}^{n-1}(t) (u'(t) - u'(l)) x^{j-1} y^j e1`.
pub fn w_chain(spec: &ESpec, n: i64) -> Result<ChainElt, ChainError> {
    let lambda = shift_offset(spec)?;
    if n < 1 {
        return Err(ChainError::IndexRange("W_n needs n >= 1".into()));
    }
    let du = derivative(&spec.u).expect("polynomial u");
    let du_at_l = du
        .eval_univariate(&lambda)
        .expect("polynomial evaluation");
    let du_diff = du.sub(&AElement::constant(1, du_at_l));
    let mut out = corner_elt(2, true, false, n - 1, n, &du_diff.neg());
    for j in 1..n {
        let c = u_product(spec, n - 1, j - 1)?.mul(&du_diff, &spec.base);
        out = out.add(&corner_elt(2, true, false, j - 1, j, &c.neg()));
    }
    Ok(out)
}

/// The closed form of the column-2 boundary of `W_n`:
/// `-T_l(u') x^n y^n - sum_{j=1}^{n-1} U_{j-1}^{n-1}(t+l) T_l(u') x^j y^j
///  - U_0^{n-1}(t) (u'(t) - u'(l)) T_l(u) x^0 y^0`.
pub fn w_chain_boundary_closed_form(spec: &ESpec, n: i64) -> Result<ChainElt, ChainError> {
    use crate::algebra::diff::t_lambda;
    let lambda = shift_offset(spec)?;
    if n < 1 {
        return Err(ChainError::IndexRange("W_n needs n >= 1".into()));
    }
    let du = derivative(&spec.u).expect("polynomial u");
    let tl_du = t_lambda(&du, &lambda).expect("polynomial");
    let mut out = corner_elt(1, false, false, n, n, &tl_du.neg());
    for j in 1..n {
        let c = u_product(spec, n - 1, j - 1)?
            .subst_shift(&lambda)
            .expect("polynomial")
            .mul(&tl_du, &spec.base);
        out = out.add(&corner_elt(1, false, false, j, j, &c.neg()));
    }
    let du_at_l = du.eval_univariate(&lambda).expect("polynomial");
    let du_diff = du.sub(&AElement::constant(1, du_at_l));
    let tl_u = t_lambda(&spec.u, &lambda).expect("polynomial");
    let c = u_product(spec, n - 1, 0)?
        .mul(&du_diff, &spec.base)
        .mul(&tl_u, &spec.base);
    out = out.add(&corner_elt(1, false, false, 0, 0, &c.neg()));
    Ok(out)
}

/// The diagonal chain `x^n y^{n+1} e1 + sum_j U_j^n(t) x^j y^{j+1} e1` in
/// column 1 whose boundary collapses onto `x^0 y^0`.
pub fn telescope_chain(spec: &ESpec, n: i64) -> Result<ChainElt, ChainError> {
    if n < 0 {
        return Err(ChainError::IndexRange("needs n >= 0".into()));
    }
    let mut out = corner_elt(1, true, false, n, n + 1, &AElement::one(1));
    for j in 0..n {
        let c = u_product(spec, n, j)?;
        out = out.add(&corner_elt(1, true, false, j, j + 1, &c));
    }
    Ok(out)
}

/// Apply the small-shift horizontal boundary to a whole chain.
pub fn w_horizontal(wc: &WComplex, chain: &ChainElt) -> ChainElt {
    use super::ChainComplexFamily;
    let mut out = ChainElt::zero();
    for (x, c) in &chain.terms {
        out = out.add(&wc.horizontal(x).scale(c));
    }
    out
}

/// Apply the small-shift vertical map to a whole chain.
pub fn w_vertical(wc: &WComplex, chain: &ChainElt) -> ChainElt {
    use super::ChainComplexFamily;
    let mut out = ChainElt::zero();
    for (x, c) in &chain.terms {
        out = out.add(&wc.vertical(x).scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::diff::t_lambda;
    use crate::skew::families::usl2_spec;

    #[test]
    fn u_product_small_cases() {
        let spec = usl2_spec();
        // U_{-1}^0 = -u(t): single tuple (i_1 = 0), sign (-1)^1.
        let got = u_product(&spec, 0, -1).unwrap();
        assert_eq!(got, spec.u.neg());
        // U_0^1 = -(u(t) + u(t+l)).
        let got = u_product(&spec, 1, 0).unwrap();
        let ul = spec.u.subst_shift(&Scalar::from_i64(2)).unwrap();
        assert_eq!(got, spec.u.add(&ul).neg());
        // The empty product extends the family at j = n.
        assert!(u_product(&spec, 0, 0).unwrap().is_one());
        // Out-of-range indices rejected.
        assert!(u_product(&spec, 0, 1).is_err());
        assert!(u_product(&spec, 2, -2).is_err());
    }

    #[test]
    fn telescoping_difference_identity() {
        // T_l(U_{n-1}^n) = -T_{(n+1)l}(u) for n <= 5.
        let spec = usl2_spec();
        let l = Scalar::from_i64(2);
        for n in 1..=5i64 {
            let lhs = t_lambda(&u_product(&spec, n, n - 1).unwrap(), &l).unwrap();
            let rhs = t_lambda(
                &spec.u,
                &l.mul(&Scalar::from_i64(n + 1)),
            )
            .unwrap()
            .neg();
            assert_eq!(lhs, rhs, "n = {}", n);
        }
    }

    #[test]
    fn v0_is_the_corner_generator() {
        let spec = usl2_spec();
        let v0 = v_cycle(&spec, 0).unwrap();
        assert_eq!(v0.terms.len(), 1);
        let (x, c) = v0.terms.iter().next().unwrap();
        assert!(x.e1 && x.e2 && x.i == 0 && x.j == 0 && x.mono.is_zero());
        assert!(c.is_one());
    }

    #[test]
    fn v_cycles_die_under_the_column_one_boundary() {
        let spec = usl2_spec();
        let wc = WComplex::new(spec.clone()).unwrap();
        for n in 0..=6i64 {
            let v = v_cycle(&spec, n).unwrap();
            // V_n lives in column 2; move it to column 1 to apply delta_11.
            let mut shifted = ChainElt::zero();
            for (x, c) in &v.terms {
                let mut y = x.clone();
                y.col = 1;
                shifted.add_term(y, c.clone());
            }
            let image = w_horizontal(&wc, &shifted);
            assert!(image.is_zero(), "delta(V_{}) = {}", n, image);
        }
    }

    #[test]
    fn w_chain_boundary_matches_closed_form() {
        let spec = usl2_spec();
        let wc = WComplex::new(spec.clone()).unwrap();
        for n in 1..=6i64 {
            let w = w_chain(&spec, n).unwrap();
            let got = w_horizontal(&wc, &w);
            let expect = w_chain_boundary_closed_form(&spec, n).unwrap();
            assert_eq!(got, expect, "n = {}", n);
        }
    }

    #[test]
    fn telescope_collapses_to_origin() {
        // delta_10 of the telescope chain is (-1)^{n+1} T_l(u^{n+1}) x^0 y^0.
        let spec = usl2_spec();
        let wc = WComplex::new(spec.clone()).unwrap();
        let l = Scalar::from_i64(2);
        for n in 0..=6i64 {
            let chain = telescope_chain(&spec, n).unwrap();
            let got = w_horizontal(&wc, &chain);
            let upow = spec.u.pow((n + 1) as u32, &spec.base);
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            let expect = super::corner_elt(
                0,
                false,
                false,
                0,
                0,
                &t_lambda(&upow, &l).unwrap().scale(&Scalar::from_i64(sign)),
            );
            assert_eq!(got, expect, "n = {}", n);
        }
    }
}
