//! The base algebra `A`: multiparametric quantum affine space
//! `k_Q[t_1, ..., t_v]` with relations `t_j t_i = q_ij t_i t_j`, the
//! polynomial ring `k[t]`, or the Laurent ring `k[t, 1/t]`.  Elements are
//! kept in normal form `sum c_e * t_1^{e_1} ... t_v^{e_v}` with ascending
//! variable order.

pub mod auto;
pub mod diff;
pub mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{Scalar, ScalarError};

pub use auto::{Automorphism, AutomorphismSpec};
pub use diff::{difference_operator, DifferenceOp};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid quantum affine parameters: {0}")]
    BadParameters(String),
    #[error("unsupported automorphism: {0}")]
    UnsupportedAutomorphism(String),
    #[error("element not valid for this algebra: {0}")]
    InvalidElement(String),
    #[error("operation needs a single-variable algebra")]
    NotUnivariate,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Exponent vector of a monomial.  Entries may be negative only in the
/// Laurent case.  Ordered by (sum of absolute values, lex), which restricts
/// to graded-lex on non-negative vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(pub Vec<i64>);

impl ExpVec {
    pub fn zeros(n: usize) -> ExpVec {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, k: usize) -> ExpVec {
        let mut e = vec![0; n];
        e[k] = 1;
        ExpVec(e)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Sum of absolute values of the exponents.
    pub fn norm(&self) -> i64 {
        self.0.iter().map(|e| e.abs()).sum()
    }

    /// Plain exponent sum (equals `norm` for non-negative vectors).
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm()
            .cmp(&other.norm())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Presentation of the base algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum BaseAlgebra {
    /// `k_Q[t_1..t_v]` with `t_j t_i = q_ij t_i t_j`.
    QuantumAffine { v: usize, qmat: Vec<Vec<Scalar>> },
    /// `k[t]`.
    Polynomial,
    /// `k[t, 1/t]`.
    Laurent,
}

impl BaseAlgebra {
    pub fn quantum_affine(qmat: Vec<Vec<Scalar>>) -> Result<BaseAlgebra, AlgebraError> {
        let v = qmat.len();
        if v == 0 {
            return Err(AlgebraError::BadParameters("empty q-matrix".into()));
        }
        for row in &qmat {
            if row.len() != v {
                return Err(AlgebraError::BadParameters("q-matrix is not square".into()));
            }
        }
        for i in 0..v {
            if !qmat[i][i].is_one() {
                return Err(AlgebraError::BadParameters(format!(
                    "q_{{{},{}}} must equal 1, got {}",
                    i + 1,
                    i + 1,
                    qmat[i][i]
                )));
            }
            for j in 0..v {
                if !qmat[i][j].mul(&qmat[j][i]).is_one() {
                    return Err(AlgebraError::BadParameters(format!(
                        "q_{{{},{}}} * q_{{{},{}}} must equal 1",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(BaseAlgebra::QuantumAffine { v, qmat })
    }

    /// Standard two-variable space with `q_12 = s`.
    pub fn quantum_plane(s: Scalar) -> Result<BaseAlgebra, AlgebraError> {
        let inv = s.invert().map_err(AlgebraError::Scalar)?;
        BaseAlgebra::quantum_affine(vec![
            vec![Scalar::one(), s],
            vec![inv, Scalar::one()],
        ])
    }

    pub fn nvars(&self) -> usize {
        match self {
            BaseAlgebra::QuantumAffine { v, .. } => *v,
            _ => 1,
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, BaseAlgebra::Laurent)
    }

    pub fn allows_shift(&self) -> bool {
        !self.is_laurent() && self.nvars() == 1
    }

    /// Scalar picked up when reordering `t^a * t^b` into ascending normal
    /// form: every factor `t_j` of `b` moves left past every factor `t_i` of
    /// `a` with `i > j`, contributing `q_ji` per elementary transposition.
    pub fn reorder_twist(&self, a: &ExpVec, b: &ExpVec) -> Scalar {
        match self {
            BaseAlgebra::QuantumAffine { v, qmat } => {
                let mut out = Scalar::one();
                for i in 0..*v {
                    for j in 0..i {
                        let e = a.0[i] * b.0[j];
                        if e != 0 {
                            out = out.mul(&qmat[j][i].pow(e).expect("q_ij invertible"));
                        }
                    }
                }
                out
            }
            _ => Scalar::one(),
        }
    }

    pub fn check_element(&self, a: &AElement) -> Result<(), AlgebraError> {
        if a.nvars != self.nvars() {
            return Err(AlgebraError::InvalidElement(format!(
                "expected {} variables, got {}",
                self.nvars(),
                a.nvars
            )));
        }
        if !self.is_laurent() {
            for e in a.terms.keys() {
                if e.0.iter().any(|&x| x < 0) {
                    return Err(AlgebraError::InvalidElement(format!(
                        "negative exponent in {}",
                        a
                    )));
                }
            }
        }
        Ok(())
    }

    /// The generator list: `t_1, ..., t_v` (plus `1/t` for Laurent).
    pub fn generators(&self) -> Vec<AElement> {
        let n = self.nvars();
        let mut gens: Vec<AElement> = (0..n).map(|k| AElement::var(n, k)).collect();
        if self.is_laurent() {
            gens.push(AElement::monomial(ExpVec(vec![-1]), Scalar::one()));
        }
        gens
    }
}

/// Normal-form element of the base algebra: sparse exponent-vector map with
/// nonzero [`Scalar`] coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AElement {
    nvars: usize,
    terms: BTreeMap<ExpVec, Scalar>,
}

impl AElement {
    pub fn zero(nvars: usize) -> AElement {
        AElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> AElement {
        Self::monomial(ExpVec::zeros(nvars), Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> AElement {
        Self::monomial(ExpVec::zeros(nvars), c)
    }

    pub fn var(nvars: usize, k: usize) -> AElement {
        Self::monomial(ExpVec::unit(nvars, k), Scalar::one())
    }

    pub fn monomial(exp: ExpVec, c: Scalar) -> AElement {
        let nvars = exp.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        AElement { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &Scalar)> {
        self.terms.iter()
    }

    /// Highest term in the canonical monomial order.
    pub fn leading(&self) -> Option<(&ExpVec, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, e: &ExpVec) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_part(&self) -> Scalar {
        self.coeff(&ExpVec::zeros(self.nvars))
    }

    /// The element with its constant term removed (its class in `A/k`).
    pub fn nonconstant_part(&self) -> AElement {
        let mut out = self.clone();
        out.terms.remove(&ExpVec::zeros(self.nvars));
        out
    }

    pub fn insert_add(&mut self, exp: ExpVec, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                let sum = slot.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &AElement) -> AElement {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AElement) -> AElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AElement {
        AElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> AElement {
        if c.is_zero() {
            return AElement::zero(self.nvars);
        }
        AElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Normal-form product in `A`: exponents add and, for quantum affine,
    /// the reordering twist multiplies in.
    pub fn mul(&self, other: &AElement, alg: &BaseAlgebra) -> AElement {
        assert_eq!(self.nvars, other.nvars);
        let mut out = AElement::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let twist = alg.reorder_twist(ea, eb);
                out.insert_add(ea.add(eb), ca.mul(cb).mul(&twist));
            }
        }
        out
    }

    pub fn pow(&self, n: u32, alg: &BaseAlgebra) -> AElement {
        let mut out = AElement::one(self.nvars);
        for _ in 0..n {
            out = out.mul(self, alg);
        }
        out
    }

    /// Maximum of `sum |e_i|` over the support; 0 for the zero element.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|e| e.norm()).max().unwrap_or(0)
    }

    /// Substitute `t -> value` (single-variable elements only).
    pub fn eval_univariate(&self, value: &Scalar) -> Result<Scalar, AlgebraError> {
        if self.nvars != 1 {
            return Err(AlgebraError::NotUnivariate);
        }
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            out = out.add(&c.mul(&value.pow(e.0[0])?));
        }
        Ok(out)
    }

    /// Substitute `t -> c * t` (single-variable elements only).
    pub fn subst_scale(&self, c: &Scalar) -> Result<AElement, AlgebraError> {
        if self.nvars != 1 {
            return Err(AlgebraError::NotUnivariate);
        }
        let mut out = AElement::zero(1);
        for (e, k) in &self.terms {
            out.insert_add(e.clone(), k.mul(&c.pow(e.0[0])?));
        }
        Ok(out)
    }

    /// Substitute `t -> t + c` (polynomial elements only).
    pub fn subst_shift(&self, c: &Scalar) -> Result<AElement, AlgebraError> {
        if self.nvars != 1 {
            return Err(AlgebraError::NotUnivariate);
        }
        let mut out = AElement::zero(1);
        for (e, k) in &self.terms {
            let n = e.0[0];
            if n < 0 {
                return Err(AlgebraError::UnsupportedAutomorphism(
                    "shift of a Laurent element".into(),
                ));
            }
            // (t + c)^n by the binomial theorem, binomials updated in place.
            let mut binom = Scalar::one();
            for i in 0..=n {
                let coeff = k.mul(&binom).mul(&c.pow(i).expect("non-negative power"));
                out.insert_add(ExpVec(vec![n - i]), coeff);
                if i < n {
                    let num = Scalar::from_i64(n - i);
                    let den = Scalar::from_i64(i + 1);
                    binom = binom.mul(&num).mul(&den.invert().unwrap());
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let txt = render_term(self.nvars, e, c);
            if first {
                write!(f, "{}", txt)?;
                first = false;
            } else if let Some(stripped) = txt.strip_prefix('-') {
                write!(f, " - {}", stripped)?;
            } else {
                write!(f, " + {}", txt)?;
            }
        }
        Ok(())
    }
}

pub fn var_name(nvars: usize, k: usize) -> String {
    if nvars == 1 {
        "t".to_string()
    } else {
        format!("t{}", k + 1)
    }
}

fn render_term(nvars: usize, e: &ExpVec, c: &Scalar) -> String {
    let mut mono = Vec::new();
    for (k, &exp) in e.0.iter().enumerate() {
        match exp {
            0 => {}
            1 => mono.push(var_name(nvars, k)),
            n => mono.push(format!("{}^{}", var_name(nvars, k), n)),
        }
    }
    let mono = mono.join("*");
    if mono.is_empty() {
        return format!("{}", c);
    }
    if c.is_one() {
        return mono;
    }
    if c.neg().is_one() {
        return format!("-{}", mono);
    }
    let cs = format!("{}", c);
    if cs.contains(' ') {
        format!("({})*{}", cs, mono)
    } else {
        format!("{}*{}", cs, mono)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qa2() -> BaseAlgebra {
        BaseAlgebra::quantum_plane(Scalar::param_q()).unwrap()
    }

    #[test]
    fn quantum_plane_relation() {
        // t2 * t1 = q12 * t1 t2
        let alg = qa2();
        let t1 = AElement::var(2, 0);
        let t2 = AElement::var(2, 1);
        let lhs = t2.mul(&t1, &alg);
        let expect = AElement::monomial(ExpVec(vec![1, 1]), Scalar::param_q());
        assert_eq!(lhs, expect);
    }

    #[test]
    fn unit_law() {
        let alg = qa2();
        let a = AElement::monomial(ExpVec(vec![2, 1]), Scalar::from_ratio(3, 7));
        assert_eq!(AElement::one(2).mul(&a, &alg), a);
        assert_eq!(a.mul(&AElement::one(2), &alg), a);
    }

    #[test]
    fn three_transpositions() {
        // (t2 t1)*(t2 t1) = q12^3 t1^2 t2^2: sorting the word t2 t1 t2 t1
        // takes three elementary transpositions, each contributing q12.
        let alg = qa2();
        let t1 = AElement::var(2, 0);
        let t2 = AElement::var(2, 1);
        let t2t1 = t2.mul(&t1, &alg);
        let sq = t2t1.mul(&t2t1, &alg);
        let q = Scalar::param_q();
        let expect = AElement::monomial(ExpVec(vec![2, 2]), q.pow(3).unwrap());
        assert_eq!(sq, expect);
    }

    #[test]
    fn invalid_qmatrix_rejected() {
        let bad = BaseAlgebra::quantum_affine(vec![
            vec![Scalar::one(), Scalar::param_q()],
            vec![Scalar::param_q(), Scalar::one()],
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn mul_associative_sampled() {
        let alg = qa2();
        let q = Scalar::param_q();
        let elems = [
            AElement::var(2, 0),
            AElement::var(2, 1),
            AElement::monomial(ExpVec(vec![1, 2]), q.clone()),
            AElement::var(2, 0).add(&AElement::monomial(ExpVec(vec![0, 1]), Scalar::from_i64(2))),
        ];
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let l = a.mul(b, &alg).mul(c, &alg);
                    let r = a.mul(&b.mul(c, &alg), &alg);
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn shift_substitution() {
        // (t+2)^2 = t^2 + 4t + 4
        let t = AElement::var(1, 0);
        let shifted = t
            .pow(2, &BaseAlgebra::Polynomial)
            .subst_shift(&Scalar::from_i64(2))
            .unwrap();
        let mut expect = AElement::monomial(ExpVec(vec![2]), Scalar::one());
        expect.insert_add(ExpVec(vec![1]), Scalar::from_i64(4));
        expect.insert_add(ExpVec(vec![0]), Scalar::from_i64(4));
        assert_eq!(shifted, expect);
    }

    #[test]
    fn display_matches_convention() {
        let mut a = AElement::monomial(ExpVec(vec![2]), Scalar::from_ratio(-1, 4));
        a.insert_add(ExpVec(vec![1]), Scalar::from_ratio(1, 2));
        a.insert_add(ExpVec(vec![0]), Scalar::from_ratio(-1, 4));
        assert_eq!(format!("{}", a), "-1/4*t^2 + 1/2*t - 1/4");
    }
}
