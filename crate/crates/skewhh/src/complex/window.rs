//! Truncation windows.  A window bounds the `x`-exponent, optionally the
//! `y`-exponent, the combined coefficient degree (sum of `|exponent|` over
//! the module monomial and all tensor slots, which keeps Laurent bases
//! finite), and the tensor length.

use crate::algebra::{BaseAlgebra, ExpVec};

use super::BasisElt;

#[derive(Clone, Debug)]
pub struct Window {
    pub weights: Vec<i64>,
    pub max_i: u32,
    pub max_j: Option<u32>,
    /// Budget for the total coefficient degree (sum of |exp|).
    pub max_adeg: i64,
    /// Maximum number of tensor slots.
    pub max_len: u32,
    /// Optional bound on the total degree `adeg + i + j + e1 + e2`, used to
    /// mirror the canonical-complex truncation.
    pub max_tdeg: Option<i64>,
    /// Optional cap on the column index; homology at positions up to `m`
    /// only needs columns up to `m + 1`.
    pub max_col: Option<u32>,
    /// Cap on the basis size of a single position block.
    pub max_basis: usize,
}

impl Window {
    pub fn new(weights: Vec<i64>, max_i: u32, max_adeg: i64, max_len: u32) -> Window {
        Window {
            weights,
            max_i,
            max_j: None,
            max_adeg,
            max_len,
            max_tdeg: None,
            max_col: None,
            max_basis: 200_000,
        }
    }

    pub fn with_max_col(mut self, c: u32) -> Window {
        self.max_col = Some(c);
        self
    }

    pub fn with_max_tdeg(mut self, t: i64) -> Window {
        self.max_tdeg = Some(t);
        self
    }

    pub fn with_max_j(mut self, max_j: u32) -> Window {
        self.max_j = Some(max_j);
        self
    }

    pub fn max_j_eff(&self) -> u32 {
        self.max_j.unwrap_or(u32::MAX)
    }

    pub fn contains(&self, x: &BasisElt) -> bool {
        self.weights.contains(&x.weight())
            && x.i <= self.max_i
            && x.j <= self.max_j_eff()
            && x.adeg() <= self.max_adeg
            && (x.tensor.len() as u32) <= self.max_len
            && self
                .max_tdeg
                .map(|t| total_degree(x) <= t)
                .unwrap_or(true)
            && self.max_col.map(|c| x.col <= c).unwrap_or(true)
    }

    pub fn enlarged(&self, m: &Margin) -> Window {
        Window {
            weights: self.weights.clone(),
            max_i: self.max_i + m.di,
            max_j: self.max_j.map(|j| j + m.di),
            max_adeg: self.max_adeg + m.dadeg,
            max_len: self.max_len + m.dlen,
            max_tdeg: self.max_tdeg.map(|t| t + m.dadeg + m.di as i64),
            max_col: self.max_col,
            max_basis: self.max_basis,
        }
    }
}

/// Total degree of a basis element: coefficient degree plus `x`, `y`
/// exponents plus one per flag (each flag stands for an absorbed letter).
pub fn total_degree(x: &BasisElt) -> i64 {
    x.adeg() + x.i as i64 + x.j as i64 + x.e1 as i64 + x.e2 as i64
}

/// Window enlargement used for certification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Margin {
    pub di: u32,
    pub dadeg: i64,
    pub dlen: u32,
}

impl Margin {
    pub fn new(di: u32, dadeg: i64, dlen: u32) -> Margin {
        Margin { di, dadeg, dlen }
    }

    pub fn zero() -> Margin {
        Margin::new(0, 0, 0)
    }
}

/// All monomials of the algebra with `sum |exp| <= budget`, including the
/// constant monomial.
pub fn monomials_up_to(alg: &BaseAlgebra, budget: i64) -> Vec<ExpVec> {
    let n = alg.nvars();
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fill(alg, budget, 0, &mut cur, &mut out);
    out.sort();
    out
}

/// Nonconstant monomials with `1 <= sum |exp| <= budget`.
pub fn nonconstant_monomials_up_to(alg: &BaseAlgebra, budget: i64) -> Vec<ExpVec> {
    monomials_up_to(alg, budget)
        .into_iter()
        .filter(|e| !e.is_zero())
        .collect()
}

fn fill(alg: &BaseAlgebra, budget: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<ExpVec>) {
    if k == cur.len() {
        out.push(ExpVec(cur.clone()));
        return;
    }
    let lo = if alg.is_laurent() { -budget } else { 0 };
    for e in lo..=budget {
        let cost = e.abs();
        if cost > budget {
            continue;
        }
        cur[k] = e;
        fill(alg, budget - cost, k + 1, cur, out);
    }
    cur[k] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn monomial_counts() {
        // Two polynomial variables, degree <= 3: C(3+2,2) = 10 monomials.
        let qa = BaseAlgebra::quantum_plane(Scalar::param_q()).unwrap();
        assert_eq!(monomials_up_to(&qa, 3).len(), 10);
        // Laurent, |deg| <= 2: exponents -2..2 = 5.
        assert_eq!(monomials_up_to(&BaseAlgebra::Laurent, 2).len(), 5);
        assert_eq!(
            nonconstant_monomials_up_to(&BaseAlgebra::Laurent, 2).len(),
            4
        );
    }
}
