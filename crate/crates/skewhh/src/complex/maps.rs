//! Chain maps between the full double complex and the small ones, and the
//! reduction maps used to read off low-degree homology classes:
//!
//! * `theta_shift`: full complex (weight 0) onto the small shift complex,
//!   replacing a lone tensor factor `t^n` by derivative-style coefficients.
//! * `theta_scaling`: full complex (weight r) onto the small scaling
//!   complex, with q-integers in place of integer coefficients.
//! * `phi_reduce`: the unique rewriting of a diagonal chain into its
//!   `A x^0 y^0` representative modulo boundaries of `t`-divisible chains.
//! * `psi_image`: the class map values on the corner cycles.

use crate::algebra::diff::{derivative, t_lambda};
use crate::algebra::{AElement, ExpVec};
use crate::scalar::{q_integer_at, Scalar};
use crate::skew::ESpec;

use super::w::shift_offset;
use super::{BasisElt, ChainElt, ChainError};

fn push_scaled(out: &mut ChainElt, coeff: &AElement, proto: &BasisElt) {
    for (e, c) in coeff.terms() {
        let mut y = proto.clone();
        y.mono = e.clone();
        out.add_term(y, c.clone());
    }
}

/// Image of a full-complex basis element (weight 0, shift case) in the
/// small shift complex.  Elements with two or more tensor slots, and all
/// columns past 2, map to zero.
pub fn theta_shift(spec: &ESpec, x: &BasisElt) -> Result<ChainElt, ChainError> {
    let lambda = shift_offset(spec)?;
    if x.weight() != 0 {
        return Err(ChainError::NotInBasis(format!(
            "the comparison map lives in weight 0, got {}",
            x
        )));
    }
    let mut out = ChainElt::zero();
    let proto = BasisElt {
        col: x.col,
        e2: x.e2,
        e1: x.e1,
        i: x.i,
        j: x.j,
        mono: ExpVec::zeros(1),
        tensor: vec![],
    };
    match x.tensor.len() {
        0 => {
            if x.col <= 1 {
                push_scaled(
                    &mut out,
                    &AElement::monomial(x.mono.clone(), Scalar::one()),
                    &proto,
                );
            }
        }
        1 => {
            if x.col > 2 {
                return Ok(out);
            }
            let n = x.tensor[0].0[0];
            // Factor by position: n t^{n-1} (plain col 1 / e1e2 col 2),
            // n (t-l)^{n-1} (e1 col 2), n (t+l)^{n-1} (e2 col 1).
            let tpow = AElement::monomial(ExpVec(vec![n - 1]), Scalar::from_i64(n));
            let factor = match (x.e1, x.e2) {
                (false, false) => tpow,
                (true, false) => tpow.subst_shift(&lambda.neg()).expect("polynomial"),
                (false, true) => tpow.subst_shift(&lambda).expect("polynomial"),
                (true, true) => tpow,
            };
            let coeff = AElement::monomial(x.mono.clone(), Scalar::one())
                .mul(&factor, &spec.base);
            push_scaled(&mut out, &coeff, &proto);
        }
        _ => {}
    }
    Ok(out)
}

/// Image of a full-complex basis element (weight `r`, Laurent scaling case)
/// in the small scaling complex.
pub fn theta_scaling(spec: &ESpec, r: i64, x: &BasisElt) -> Result<ChainElt, ChainError> {
    super::wtilde::check_scaling_hypotheses(spec)?;
    if x.weight() != r {
        return Err(ChainError::NotInBasis(format!(
            "expected weight {}, got {}",
            r, x
        )));
    }
    let q = Scalar::param_q();
    let x_param = q.pow(-r).expect("q invertible");
    let mut out = ChainElt::zero();
    let proto = BasisElt {
        col: x.col,
        e2: x.e2,
        e1: x.e1,
        i: x.i,
        j: x.j,
        mono: ExpVec::zeros(1),
        tensor: vec![],
    };
    match x.tensor.len() {
        0 => {
            if x.col <= 1 {
                push_scaled(
                    &mut out,
                    &AElement::monomial(x.mono.clone(), Scalar::one()),
                    &proto,
                );
            }
        }
        1 => {
            if x.col > 2 {
                return Ok(out);
            }
            let n = x.tensor[0].0[0];
            let qi = q_integer_at(&x_param, n).expect("q-integer");
            let twist = match (x.e1, x.e2) {
                (false, false) | (true, true) => Scalar::one(),
                (true, false) => q.pow(-n + 1).expect("q invertible"),
                (false, true) => q.pow(n - 1).expect("q invertible"),
            };
            let factor = AElement::monomial(ExpVec(vec![n - 1]), qi.mul(&twist));
            let coeff = AElement::monomial(x.mono.clone(), Scalar::one())
                .mul(&factor, &spec.base);
            push_scaled(&mut out, &coeff, &proto);
        }
        _ => {}
    }
    Ok(out)
}

/// Solve `T_lambda(P) = R` for the unique `P` with `P(0) = 0`.
pub fn solve_t_lambda(r: &AElement, lambda: &Scalar) -> AElement {
    let mut rem = r.clone();
    let mut p = AElement::zero(1);
    while !rem.is_zero() {
        let (e, c) = rem.leading().expect("nonzero");
        let m = e.0[0];
        let w = c
            .div(
                &Scalar::from_i64(m + 1).mul(lambda),
            )
            .expect("lambda nonzero");
        let term = AElement::monomial(ExpVec(vec![m + 1]), w);
        rem = rem.sub(&t_lambda(&term, lambda).expect("polynomial"));
        p = p.add(&term);
    }
    p
}

/// Outcome of reducing a diagonal chain `sum_i P_i x^i y^i` to its unique
/// `A x^0 y^0` representative modulo the boundary of a `t`-divisible `e1`
/// chain.
pub struct DiagonalReduction {
    /// The `x^0 y^0` coefficient of the reduced element.
    pub representative: AElement,
    /// Coefficients of the subtracted `e1` chain (index i holds the
    /// coefficient at `x^{i-1} y^i e1`), each divisible by `t`.
    pub lift: Vec<AElement>,
}

/// Reduce `sum_i coeffs[i] x^i y^i` against boundaries of `e1` chains with
/// `t`-divisible coefficients.  Uses the column-2 boundary convention
/// `delta(P x^{i-1} y^i e1) = T_l(P) x^i y^i + P T_{il}(u) x^{i-1} y^{i-1}`.
pub fn phi_reduce(spec: &ESpec, coeffs: &[AElement]) -> Result<DiagonalReduction, ChainError> {
    let lambda = shift_offset(spec)?;
    let m = coeffs.len();
    let mut lift = vec![AElement::zero(1); m.max(1)];
    let mut current: Vec<AElement> = coeffs.to_vec();
    for i in (1..m).rev() {
        // Cancel the x^i y^i coefficient with T_l(lift[i]).
        let p_tilde = solve_t_lambda(&current[i], &lambda);
        // Subtract the boundary: T_l(P~) at i, P~ T_{il}(u) at i-1.
        let t_mult = t_lambda(
            &spec.u,
            &lambda.mul(&Scalar::from_i64(i as i64)),
        )
        .expect("polynomial u");
        current[i] = AElement::zero(1);
        let lower = p_tilde.mul(&t_mult, &spec.base);
        current[i - 1] = current[i - 1].sub(&lower);
        lift[i] = p_tilde;
    }
    Ok(DiagonalReduction {
        representative: current.first().cloned().unwrap_or_else(|| AElement::zero(1)),
        lift,
    })
}

/// Reduce a weight-0 diagonal chain element to its `A x^0 y^0`
/// representative.  Accepts chains supported on plain diagonal positions.
pub fn phi_reduce_chain(spec: &ESpec, chain: &ChainElt) -> Result<DiagonalReduction, ChainError> {
    let mut max_i = 0u32;
    for (x, _) in &chain.terms {
        if x.e1 || x.e2 || x.i != x.j || !x.tensor.is_empty() {
            return Err(ChainError::NotInBasis(format!(
                "diagonal reduction needs plain x^i y^i terms, got {}",
                x
            )));
        }
        max_i = max_i.max(x.i);
    }
    let mut coeffs = vec![AElement::zero(1); (max_i + 1) as usize];
    for (x, c) in &chain.terms {
        coeffs[x.i as usize] =
            coeffs[x.i as usize].add(&AElement::monomial(x.mono.clone(), c.clone()));
    }
    phi_reduce(spec, &coeffs)
}

/// `(-1)^n T_lambda(u^n u')`, the `x^0 y^0` class representative attached to
/// the corner cycle `V_n`.
pub fn psi_image(spec: &ESpec, n: i64) -> Result<AElement, ChainError> {
    let lambda = shift_offset(spec)?;
    if n < 0 {
        return Err(ChainError::IndexRange("needs n >= 0".into()));
    }
    let du = derivative(&spec.u).expect("polynomial u");
    let unu = spec.u.pow(n as u32, &spec.base).mul(&du, &spec.base);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Ok(t_lambda(&unu, &lambda)
        .expect("polynomial")
        .scale(&Scalar::from_i64(sign)))
}

/// Reduce a polynomial against a span of polynomials with pairwise distinct
/// leading degrees (e.g. `T_l(u^m)`, degrees `m deg(u) - 1`).  Returns the
/// fully reduced remainder.
pub fn reduce_mod_span(v: &AElement, span: &[AElement]) -> AElement {
    let mut rem = v.clone();
    'outer: loop {
        if rem.is_zero() {
            return rem;
        }
        let (e, c) = rem.leading().unwrap();
        let deg = e.0[0];
        for s in span {
            if s.is_zero() {
                continue;
            }
            let (se, sc) = s.leading().unwrap();
            if se.0[0] == deg {
                let factor = c.div(sc).expect("leading coefficient nonzero");
                rem = rem.sub(&s.scale(&factor));
                continue 'outer;
            }
        }
        return rem;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::w::WComplex;
    use crate::complex::ChainComplexFamily;
    use crate::skew::families::usl2_spec;

    fn y_elt(col: u32, e1: bool, e2: bool, i: u32, j: u32, tensor: Vec<i64>) -> BasisElt {
        BasisElt {
            col,
            e2,
            e1,
            i,
            j,
            mono: ExpVec::zeros(1),
            tensor: tensor.into_iter().map(|n| ExpVec(vec![n])).collect(),
        }
    }

    #[test]
    fn theta_on_single_slot_examples() {
        let spec = usl2_spec();
        // t^1 slot on an e1 column-2 element: coefficient 1 (n=1 kills the
        // shift), so the image is P x^i y^{i+1} e1 itself.
        let x = y_elt(2, true, false, 1, 2, vec![1]);
        let got = theta_shift(&spec, &x).unwrap();
        let mut expect = ChainElt::zero();
        expect.add_term(
            BasisElt {
                col: 2,
                e2: false,
                e1: true,
                i: 1,
                j: 2,
                mono: ExpVec(vec![0]),
                tensor: vec![],
            },
            Scalar::one(),
        );
        assert_eq!(got, expect);
        // Two-slot plain elements die.
        let x = y_elt(2, false, false, 1, 1, vec![1, 2]);
        assert!(theta_shift(&spec, &x).unwrap().is_zero());
    }

    #[test]
    fn solve_shift_difference() {
        let l = Scalar::from_i64(2);
        let r = AElement::monomial(ExpVec(vec![2]), Scalar::from_i64(6))
            .add(&AElement::one(1));
        let p = solve_t_lambda(&r, &l);
        assert!(p.constant_part().is_zero());
        assert_eq!(t_lambda(&p, &l).unwrap(), r);
    }

    #[test]
    fn diagonal_reduction_produces_boundary() {
        // L - delta(L~) lands at x^0 y^0, and the subtraction is an exact
        // boundary of the complex.
        let spec = usl2_spec();
        let wc = WComplex::new(spec.clone()).unwrap();
        let t = AElement::var(1, 0);
        let coeffs = vec![
            t.pow(2, &spec.base),
            t.clone(),
            t.pow(3, &spec.base).add(&AElement::one(1)),
        ];
        let red = phi_reduce(&spec, &coeffs).unwrap();
        // Rebuild L and delta(L~); their difference must be the
        // representative at x^0 y^0.
        let mut l_chain = ChainElt::zero();
        for (i, c) in coeffs.iter().enumerate() {
            for (e, k) in c.terms() {
                l_chain.add_term(
                    BasisElt {
                        col: 1,
                        e2: false,
                        e1: false,
                        i: i as u32,
                        j: i as u32,
                        mono: e.clone(),
                        tensor: vec![],
                    },
                    k.clone(),
                );
            }
        }
        let mut boundary = ChainElt::zero();
        for (i, p) in red.lift.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            assert!(p.constant_part().is_zero(), "lift divisible by t");
            for (e, k) in p.terms() {
                let x = BasisElt {
                    col: 2,
                    e2: false,
                    e1: true,
                    i: (i - 1) as u32,
                    j: i as u32,
                    mono: e.clone(),
                    tensor: vec![],
                };
                boundary = boundary.add(&wc.horizontal(&x).scale(k));
            }
        }
        let diff = l_chain.sub(&boundary);
        for (x, _) in &diff.terms {
            assert_eq!((x.i, x.j), (0, 0), "reduction left {}", x);
        }
        let mut rep = AElement::zero(1);
        for (x, c) in &diff.terms {
            rep = rep.add(&AElement::monomial(x.mono.clone(), c.clone()));
        }
        assert_eq!(rep, red.representative);
    }

    #[test]
    fn psi_image_at_zero() {
        // Psi(V_0) is the class of T_l(u') x^0 y^0.
        let spec = usl2_spec();
        let du = derivative(&spec.u).unwrap();
        let expect = t_lambda(&du, &Scalar::from_i64(2)).unwrap();
        assert_eq!(psi_image(&spec, 0).unwrap(), expect);
    }

    #[test]
    fn span_reduction_is_idempotent() {
        let spec = usl2_spec();
        let l = Scalar::from_i64(2);
        let span: Vec<AElement> = (1..=4)
            .map(|m| t_lambda(&spec.u.pow(m, &spec.base), &l).unwrap())
            .collect();
        let v = AElement::monomial(ExpVec(vec![5]), Scalar::from_i64(3));
        let r = reduce_mod_span(&v, &span);
        let r2 = reduce_mod_span(&r, &span);
        assert_eq!(r, r2);
    }
}

#[cfg(test)]
mod chain_map_tests {
    use super::*;
    use crate::complex::w::WComplex;
    use crate::complex::wtilde::WtComplex;
    use crate::complex::y::YComplex;
    use crate::complex::{ChainComplexFamily, Window};
    use crate::skew::families::{laurent_spec, usl2_spec};

    fn map_chain(
        chain: &ChainElt,
        f: &dyn Fn(&BasisElt) -> ChainElt,
    ) -> ChainElt {
        let mut out = ChainElt::zero();
        for (x, c) in &chain.terms {
            out = out.add(&f(x).scale(c));
        }
        out
    }

    #[test]
    fn shift_comparison_is_a_chain_map() {
        // theta . (horizontal, vertical) = (horizontal, vertical) . theta
        // on a window of the full weight-0 complex, including column 3
        // (where theta vanishes and the composite must die).
        let spec = usl2_spec();
        let yc = YComplex::new(spec.clone());
        let wc = WComplex::new(spec.clone()).unwrap();
        let win = Window::new(vec![0], 2, 3, 2);
        let th = |x: &BasisElt| theta_shift(&spec, x).unwrap();
        for x in yc.enumerate(&win).unwrap() {
            let lhs_h = map_chain(&yc.horizontal(&x), &th);
            let rhs_h = map_chain(&th(&x), &|y| wc.horizontal(y));
            assert_eq!(lhs_h, rhs_h, "horizontal square at {}", x);
            let lhs_v = map_chain(&yc.vertical(&x), &th);
            let rhs_v = map_chain(&th(&x), &|y| wc.vertical(y));
            assert_eq!(lhs_v, rhs_v, "vertical square at {}", x);
        }
    }

    #[test]
    fn scaling_comparison_is_a_chain_map() {
        let spec = laurent_spec();
        let yc = YComplex::new(spec.clone());
        for r in [-1i64, 0, 1] {
            let wt = WtComplex::new(spec.clone(), r).unwrap();
            let win = Window::new(vec![r], 2, 2, 2);
            let th = |x: &BasisElt| theta_scaling(&spec, r, x).unwrap();
            for x in yc.enumerate(&win).unwrap() {
                let lhs_h = map_chain(&yc.horizontal(&x), &th);
                let rhs_h = map_chain(&th(&x), &|y| wt.horizontal(y));
                assert_eq!(lhs_h, rhs_h, "horizontal square at {} (r={})", x, r);
                let lhs_v = map_chain(&yc.vertical(&x), &th);
                let rhs_v = map_chain(&th(&x), &|y| wt.vertical(y));
                assert_eq!(lhs_v, rhs_v, "vertical square at {} (r={})", x, r);
            }
        }
    }
}
