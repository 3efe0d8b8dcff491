//! Chain-level machinery: the two-row double complexes computing `HH_*(E)`,
//! their boundary operators on basis tensors, distinguished cycles, and the
//! comparison chain maps between the full and the small complexes.
//!
//! A basis element is a tensor
//!
//! ```text
//!   m x^i y^j  (x)  [m_1, ..., m_s]  e1^u e2^v     at column n, row v
//! ```
//!
//! with `m`, `m_k` monomials of `A`, each `m_k` nonconstant (a class in
//! `A/k`), `s = n - u`, and `v` equal to the row.  The weight
//! `r = j - i - u + v` is preserved by every boundary map and chain map.

pub mod bar;
pub mod family;
pub mod maps;
pub mod reduced;
pub mod special;
pub mod w;
pub mod window;
pub mod wtilde;
pub mod xtwisted;
pub mod y;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AElement, ExpVec};
use crate::scalar::Scalar;

pub use family::ComplexFamily;
pub use window::{Margin, Window};

#[derive(Error, Debug, Clone)]
pub enum ChainError {
    #[error("basis membership violation: {0}")]
    NotInBasis(String),
    #[error("family hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
}

/// Position of a module in the double complex: column and row.
pub type Position = (u32, u8);

/// A chain basis element.  Field order gives the canonical sort key:
/// position, flags, `(i, j)`, coefficient monomial, tensor factors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisElt {
    pub col: u32,
    pub e2: bool,
    pub e1: bool,
    pub i: u32,
    pub j: u32,
    pub mono: ExpVec,
    pub tensor: Vec<ExpVec>,
}

impl BasisElt {
    pub fn row(&self) -> u8 {
        self.e2 as u8
    }

    pub fn position(&self) -> Position {
        (self.col, self.row())
    }

    /// Homological degree in the total complex.
    pub fn total_degree(&self) -> u32 {
        self.col + self.row() as u32
    }

    pub fn weight(&self) -> i64 {
        self.j as i64 - self.i as i64 - self.e1 as i64 + self.e2 as i64
    }

    /// Total coefficient degree: `sum |exp|` over the monomial and slots.
    pub fn adeg(&self) -> i64 {
        self.mono.norm() + self.tensor.iter().map(|m| m.norm()).sum::<i64>()
    }

    pub fn flags_str(&self) -> String {
        match (self.e1, self.e2) {
            (false, false) => String::new(),
            (true, false) => " e1".into(),
            (false, true) => " e2".into(),
            (true, true) => " e1e2".into(),
        }
    }
}

impl fmt::Display for BasisElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nv = self.mono.0.len();
        let m = AElement::monomial(self.mono.clone(), Scalar::one());
        write!(f, "{}*x^{}y^{}", m, self.i, self.j)?;
        if !self.tensor.is_empty() {
            let slots: Vec<String> = self
                .tensor
                .iter()
                .map(|e| format!("{}", AElement::monomial(e.clone(), Scalar::one())))
                .collect();
            write!(f, " (x) [{}]", slots.join(", "))?;
        }
        write!(
            f,
            "{} @ (n={},row={},r={})",
            self.flags_str(),
            self.col,
            self.row(),
            self.weight()
        )?;
        let _ = nv;
        Ok(())
    }
}

/// Finite scalar combination of basis elements.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ChainElt {
    pub terms: BTreeMap<BasisElt, Scalar>,
}

impl ChainElt {
    pub fn zero() -> ChainElt {
        ChainElt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, x: BasisElt, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(slot) => {
                let sum = slot.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&x);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(x, c);
            }
        }
    }

    pub fn add(&self, other: &ChainElt) -> ChainElt {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ChainElt) -> ChainElt {
        self.add(&other.scale(&Scalar::from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ChainElt {
        if c.is_zero() {
            return ChainElt::zero();
        }
        ChainElt {
            terms: self
                .terms
                .iter()
                .map(|(x, k)| (x.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn single(x: BasisElt) -> ChainElt {
        let mut out = ChainElt::zero();
        out.add_term(x, Scalar::one());
        out
    }
}

impl fmt::Display for ChainElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(x, c)| format!("({}) * {}", c, x))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One not-yet-expanded boundary term: coefficients still polynomial, slots
/// still whole elements of `A`.
pub struct RawTerm {
    pub sign: Scalar,
    pub col: u32,
    pub e1: bool,
    pub e2: bool,
    pub i: i64,
    pub j: i64,
    pub m: AElement,
    pub tensor: Vec<AElement>,
}

/// Expand raw terms into basis elements: the coefficient and every slot are
/// split into monomials, scalars collected, and constant summands of slots
/// dropped (they vanish in `A/k`).
pub fn expand(raw: Vec<RawTerm>) -> ChainElt {
    let mut out = ChainElt::zero();
    for t in raw {
        if t.sign.is_zero() || t.m.is_zero() {
            continue;
        }
        assert!(
            t.i >= 0 && t.j >= 0,
            "negative exponent with nonzero coefficient"
        );
        let mut picks: Vec<(Scalar, Vec<ExpVec>)> = vec![(t.sign.clone(), Vec::new())];
        for slot in &t.tensor {
            let mut next = Vec::new();
            for (e, c) in slot.terms() {
                if e.is_zero() {
                    continue; // constant class is zero in A/k
                }
                for (acc_c, acc_t) in &picks {
                    let mut tv = acc_t.clone();
                    tv.push(e.clone());
                    next.push((acc_c.mul(c), tv));
                }
            }
            picks = next;
            if picks.is_empty() {
                break;
            }
        }
        for (coeff, tensor) in picks {
            for (me, mc) in t.m.terms() {
                out.add_term(
                    BasisElt {
                        col: t.col,
                        e2: t.e2,
                        e1: t.e1,
                        i: t.i as u32,
                        j: t.j as u32,
                        mono: me.clone(),
                        tensor: tensor.clone(),
                    },
                    coeff.mul(mc),
                );
            }
        }
    }
    out
}

/// Common interface of every double-complex family: horizontal boundary
/// (column n to n-1 within a row), vertical map (row 1 to row 0 within a
/// column), and window enumeration.
pub trait ChainComplexFamily {
    fn label(&self) -> String;
    /// Column bound, when the family is finite in the column direction.
    fn max_col(&self) -> Option<u32>;
    /// Horizontal boundary of a basis element.
    fn horizontal(&self, x: &BasisElt) -> ChainElt;
    /// Vertical map; zero on row 0.
    fn vertical(&self, x: &BasisElt) -> ChainElt;
    /// Membership test for the family's basis shape.
    fn member(&self, x: &BasisElt) -> bool;
    /// All basis elements inside the window.
    fn enumerate(&self, w: &Window) -> Result<Vec<BasisElt>, ChainError>;
}

/// Boundary with a basis-membership guard, per the public contract.
pub fn boundary(
    fam: &dyn ChainComplexFamily,
    x: &BasisElt,
) -> Result<(ChainElt, ChainElt), ChainError> {
    if !fam.member(x) {
        return Err(ChainError::NotInBasis(format!("{}", x)));
    }
    Ok((fam.horizontal(x), fam.vertical(x)))
}
