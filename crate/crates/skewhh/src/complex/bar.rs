//! The canonical Hochschild complex of `E` with coefficients in `E`,
//! truncated by total degree and tensor length.  It is the independent
//! ground truth for the full double complex at tiny scale: the boundary is
//! the alternating sum of face maps, with products computed by the
//! normal-form multiplication of `E` (never by the double-complex
//! formulas).

use std::collections::BTreeMap;

use crate::algebra::ExpVec;
use crate::scalar::Scalar;
use crate::skew::{EElement, ESpec};

/// Monomial of `E`: `t^a x^i y^j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EMono {
    pub a: ExpVec,
    pub i: u32,
    pub j: u32,
}

impl EMono {
    pub fn degree(&self) -> i64 {
        self.a.norm() + self.i as i64 + self.j as i64
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero() && self.i == 0 && self.j == 0
    }

    fn to_element(&self) -> EElement {
        EElement::monomial(
            self.i,
            self.j,
            crate::algebra::AElement::monomial(self.a.clone(), Scalar::one()),
        )
    }
}

/// Basis chain of the canonical complex: `m (x) e_1 (x) ... (x) e_n` with
/// `m` a monomial of `E` and each `e_k` a nonconstant monomial (class in
/// `E/k`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BarElt {
    pub m: EMono,
    pub tensor: Vec<EMono>,
}

impl BarElt {
    pub fn degree(&self) -> i64 {
        self.m.degree() + self.tensor.iter().map(|e| e.degree()).sum::<i64>()
    }
}

pub type BarChain = BTreeMap<BarElt, Scalar>;

pub struct BarComplex {
    pub spec: ESpec,
    pub max_degree: i64,
    pub max_len: u32,
}

impl BarComplex {
    pub fn new(spec: ESpec, max_degree: i64, max_len: u32) -> BarComplex {
        BarComplex {
            spec,
            max_degree,
            max_len,
        }
    }

    /// All monomials of `E` with total degree at most `budget`.
    fn e_monomials(&self, budget: i64) -> Vec<EMono> {
        let mut out = Vec::new();
        for i in 0..=budget.max(0) {
            for j in 0..=(budget - i).max(0) {
                for a in super::window::monomials_up_to(&self.spec.base, budget - i - j) {
                    out.push(EMono {
                        a,
                        i: i as u32,
                        j: j as u32,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Basis of chains of tensor length `n` within the degree budget.
    pub fn basis(&self, n: u32) -> Vec<BarElt> {
        if n > self.max_len {
            return Vec::new();
        }
        let mut out = Vec::new();
        let pool = self.e_monomials(self.max_degree);
        let mut stack: Vec<(Vec<EMono>, i64)> = vec![(Vec::new(), 0)];
        while let Some((tensor, used)) = stack.pop() {
            if tensor.len() == n as usize {
                for m in self.e_monomials(self.max_degree - used) {
                    out.push(BarElt {
                        m,
                        tensor: tensor.clone(),
                    });
                }
                continue;
            }
            for e in &pool {
                if e.is_constant() {
                    continue;
                }
                let d = e.degree();
                if used + d <= self.max_degree {
                    let mut t = tensor.clone();
                    t.push(e.clone());
                    stack.push((t, used + d));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Alternating sum of face maps.  Slot products that land in `k` vanish
    /// (classes in `E/k`); the boundary never raises total degree, so the
    /// truncated complex is closed under it.
    pub fn boundary(&self, x: &BarElt) -> BarChain {
        let mut out: BarChain = BTreeMap::new();
        let n = x.tensor.len();
        if n == 0 {
            return out;
        }
        let spec = &self.spec;
        // face 0: m * e_1
        let head = spec.mul(&x.m.to_element(), &x.tensor[0].to_element());
        add_expanded(&mut out, &head, &x.tensor[1..], Scalar::one());
        // middle faces: merge e_l * e_{l+1}
        for l in 1..n {
            let merged = spec.mul(&x.tensor[l - 1].to_element(), &x.tensor[l].to_element());
            let sign = if l % 2 == 0 {
                Scalar::one()
            } else {
                Scalar::from_i64(-1)
            };
            // rebuild the tensor with slots l-1, l replaced by the product
            add_merged(&mut out, &x.m, &x.tensor, l - 1, &merged, sign);
        }
        // last face: e_n * m
        let tail = spec.mul(&x.tensor[n - 1].to_element(), &x.m.to_element());
        let sign = if n % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::from_i64(-1)
        };
        add_expanded(&mut out, &tail, &x.tensor[..n - 1], sign);
        out
    }
}

/// Add `m_elt (x) tensor` with the module part expanded into monomials.
fn add_expanded(out: &mut BarChain, m_elt: &EElement, tensor: &[EMono], sign: Scalar) {
    for ((i, j), a) in m_elt.terms() {
        for (e, c) in a.terms() {
            let key = BarElt {
                m: EMono {
                    a: e.clone(),
                    i: *i,
                    j: *j,
                },
                tensor: tensor.to_vec(),
            };
            insert(out, key, sign.mul(c));
        }
    }
}

/// Add `m (x) ... (x) merged (x) ...` with the merged slot expanded into
/// monomials, dropping its constant component.
fn add_merged(
    out: &mut BarChain,
    m: &EMono,
    tensor: &[EMono],
    at: usize,
    merged: &EElement,
    sign: Scalar,
) {
    for ((i, j), a) in merged.terms() {
        for (e, c) in a.terms() {
            let slot = EMono {
                a: e.clone(),
                i: *i,
                j: *j,
            };
            if slot.is_constant() {
                continue;
            }
            let mut t: Vec<EMono> = Vec::with_capacity(tensor.len() - 1);
            t.extend_from_slice(&tensor[..at]);
            t.push(slot);
            t.extend_from_slice(&tensor[at + 2..]);
            insert(
                out,
                BarElt {
                    m: m.clone(),
                    tensor: t,
                },
                sign.mul(c),
            );
        }
    }
}

fn insert(out: &mut BarChain, key: BarElt, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&key) {
        Some(slot) => {
            let sum = slot.add(&c);
            if sum.is_zero() {
                out.remove(&key);
            } else {
                *slot = sum;
            }
        }
        None => {
            out.insert(key, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::families::usl2_spec;

    #[test]
    fn boundary_squares_to_zero() {
        let bc = BarComplex::new(usl2_spec(), 2, 2);
        for n in 1..=2u32 {
            for x in bc.basis(n) {
                let dx = bc.boundary(&x);
                let mut ddx: BarChain = BTreeMap::new();
                for (y, c) in &dx {
                    for (z, k) in bc.boundary(y) {
                        insert(&mut ddx, z, k.mul(c));
                    }
                }
                assert!(ddx.is_empty(), "b^2 != 0 at {:?}", x);
            }
        }
    }

    #[test]
    fn boundary_never_raises_degree() {
        let bc = BarComplex::new(usl2_spec(), 2, 2);
        for n in 1..=2u32 {
            for x in bc.basis(n) {
                let d = x.degree();
                for (y, _) in bc.boundary(&x) {
                    assert!(y.degree() <= d);
                }
            }
        }
    }

    #[test]
    fn length_one_face_is_a_commutator() {
        // b(m (x) e) = m e - e m.
        let bc = BarComplex::new(usl2_spec(), 2, 1);
        for x in bc.basis(1) {
            let spec = &bc.spec;
            let me = spec.mul(&x.m.to_element(), &x.tensor[0].to_element());
            let em = spec.mul(&x.tensor[0].to_element(), &x.m.to_element());
            let expect = me.sub(&em);
            let mut got = EElement::zero(1);
            for (y, c) in bc.boundary(&x) {
                assert!(y.tensor.is_empty());
                got.insert_add(
                    y.m.i,
                    y.m.j,
                    crate::algebra::AElement::monomial(y.m.a.clone(), c.clone()),
                );
            }
            assert_eq!(got, expect, "at {:?}", x);
        }
    }
}
