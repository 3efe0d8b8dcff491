//! Selector for the double-complex families handled by the finite builder.

use crate::algebra::Automorphism;
use crate::skew::ESpec;

use super::reduced::ReducedComplex;
use super::w::WComplex;
use super::wtilde::WtComplex;
use super::xtwisted::XTwisted;
use super::y::{TwistVariant, YComplex};
use super::{BasisElt, ChainComplexFamily, ChainElt, ChainError, Window};

pub enum ComplexFamily {
    /// The full double complex of `E`, all weights.
    Full(YComplex),
    /// The small three-column complex for the shift case (weight 0).
    SmallShift(WComplex),
    /// The small three-column complex for the Laurent scaling case, one
    /// weight at a time.
    SmallScaling(WtComplex),
    /// The reduced two-column complex with coefficients in `k`.
    Reduced(ReducedComplex),
    /// A two-term twisted coefficient complex over `k[t]`.
    Twisted(XTwisted),
}

impl ComplexFamily {
    pub fn full(spec: ESpec) -> ComplexFamily {
        ComplexFamily::Full(YComplex::new(spec))
    }

    pub fn full_with_variant(spec: ESpec, v: TwistVariant) -> ComplexFamily {
        ComplexFamily::Full(YComplex::with_variant(spec, v))
    }

    pub fn small_shift(spec: ESpec) -> Result<ComplexFamily, ChainError> {
        Ok(ComplexFamily::SmallShift(WComplex::new(spec)?))
    }

    pub fn small_scaling(spec: ESpec, r: i64) -> Result<ComplexFamily, ChainError> {
        Ok(ComplexFamily::SmallScaling(WtComplex::new(spec, r)?))
    }

    pub fn reduced(spec: ESpec) -> Result<ComplexFamily, ChainError> {
        Ok(ComplexFamily::Reduced(ReducedComplex::new(spec)?))
    }

    pub fn twisted(f: Automorphism, g: Automorphism) -> Result<ComplexFamily, ChainError> {
        Ok(ComplexFamily::Twisted(XTwisted::new(f, g)?))
    }

    pub fn as_chain(&self) -> &dyn ChainComplexFamily {
        match self {
            ComplexFamily::Full(c) => c,
            ComplexFamily::SmallShift(c) => c,
            ComplexFamily::SmallScaling(c) => c,
            ComplexFamily::Reduced(c) => c,
            ComplexFamily::Twisted(c) => c,
        }
    }
}

impl ChainComplexFamily for XTwisted {
    fn label(&self) -> String {
        "twisted-two-term".into()
    }

    fn max_col(&self) -> Option<u32> {
        Some(1)
    }

    fn member(&self, x: &BasisElt) -> bool {
        x.tensor.is_empty() && x.i == 0 && x.j == 0 && !x.e2 && !x.e1 && x.col <= 1
    }

    fn horizontal(&self, x: &BasisElt) -> ChainElt {
        self.boundary(x)
    }

    fn vertical(&self, _x: &BasisElt) -> ChainElt {
        ChainElt::zero()
    }

    fn enumerate(&self, w: &Window) -> Result<Vec<BasisElt>, ChainError> {
        let mut out = Vec::new();
        for d in 0..=w.max_adeg {
            out.push(XTwisted::elt(0, d));
            out.push(XTwisted::elt(1, d));
        }
        out.sort();
        Ok(out)
    }
}
