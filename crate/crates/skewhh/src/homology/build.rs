//! Window truncation of a double-complex family: per-position bases, sparse
//! boundary matrices, leak flags, and the empirically determined sign
//! convention for the total differential.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{BasisElt, ChainComplexFamily, ChainElt, ChainError, Window};
use crate::scalar::Scalar;

use super::matrix::SparseMat;

/// Key of a position block: (weight, column, row).
pub type BlockKey = (i64, u32, u8);

#[derive(Clone)]
pub struct Block {
    pub elems: Vec<BasisElt>,
    /// Horizontal boundary into (weight, col-1, row); rows indexed by the
    /// target block.
    pub horiz: SparseMat,
    /// Vertical map into (weight, col, 0); present on row 1.
    pub vert: Option<SparseMat>,
    /// Source leaked under the horizontal / vertical map.
    pub leak_h: Vec<bool>,
    pub leak_v: Vec<bool>,
}

/// How the vertical map enters the total differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// Maps anticommute; `D = horizontal + vertical`.
    Anticommute,
    /// Maps commute; `D = horizontal + (-1)^col vertical`.
    Commute,
}

pub struct FiniteComplex {
    pub label: String,
    pub window: Window,
    pub blocks: BTreeMap<BlockKey, Block>,
    pub sign_rule: SignRule,
    pub max_col: u32,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Verify `d . d = 0` symbolically on every enumerated element.
    pub verify_squares: bool,
}

impl FiniteComplex {
    pub fn block(&self, key: &BlockKey) -> Option<&Block> {
        self.blocks.get(key)
    }

    pub fn weights(&self) -> Vec<i64> {
        let mut ws: Vec<i64> = self.blocks.keys().map(|(w, _, _)| *w).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn dim(&self, key: &BlockKey) -> usize {
        self.blocks.get(key).map(|b| b.elems.len()).unwrap_or(0)
    }

    /// Basis of the degree-`m` slot of the total complex at one weight:
    /// the (m, 0) block followed by the (m-1, 1) block.
    pub fn total_basis(&self, w: i64, m: u32) -> Vec<(BlockKey, usize)> {
        let mut out = Vec::new();
        let k0 = (w, m, 0u8);
        for idx in 0..self.dim(&k0) {
            out.push((k0, idx));
        }
        if m >= 1 {
            let k1 = (w, m - 1, 1u8);
            for idx in 0..self.dim(&k1) {
                out.push((k1, idx));
            }
        }
        out
    }

    /// The total differential `D_m` at one weight as a matrix from the
    /// degree-`m` slot to the degree-`m-1` slot, together with the leak
    /// flags of the domain basis.
    pub fn total_matrix(&self, w: i64, m: u32) -> (SparseMat, Vec<bool>) {
        let dom = self.total_basis(w, m);
        let mut leaks = vec![false; dom.len()];
        if m == 0 {
            return (SparseMat::new(0, dom.len()), leaks);
        }
        let cod = self.total_basis(w, m - 1);
        let mut cod_offset: HashMap<BlockKey, usize> = HashMap::new();
        for (pos, (key, _)) in cod.iter().enumerate() {
            cod_offset.entry(*key).or_insert(pos);
        }
        let mut mat = SparseMat::new(cod.len(), dom.len());
        for (col_idx, (key, idx)) in dom.iter().enumerate() {
            let block = &self.blocks[key];
            let (_, bcol, brow) = *key;
            // Horizontal part: (bcol, brow) -> (bcol - 1, brow).
            if bcol > 0 {
                if let Some(&off) = cod_offset.get(&(w, bcol - 1, brow)) {
                    for (r, row) in block.horiz.rows.iter().enumerate() {
                        if let Some(v) = row.get(idx) {
                            mat.add_entry(off + r, col_idx, v.clone());
                        }
                    }
                }
            }
            leaks[col_idx] = leaks[col_idx] || block.leak_h[*idx];
            // Vertical part (row 1 only): (bcol, 1) -> (bcol, 0).
            if brow == 1 {
                if let Some(vmat) = &block.vert {
                    if let Some(&off) = cod_offset.get(&(w, bcol, 0u8)) {
                        let sign = match self.sign_rule {
                            SignRule::Anticommute => Scalar::one(),
                            SignRule::Commute => {
                                if bcol % 2 == 0 {
                                    Scalar::one()
                                } else {
                                    Scalar::from_i64(-1)
                                }
                            }
                        };
                        for (r, row) in vmat.rows.iter().enumerate() {
                            if let Some(v) = row.get(idx) {
                                mat.add_entry(off + r, col_idx, v.mul(&sign));
                            }
                        }
                    }
                }
                leaks[col_idx] = leaks[col_idx] || block.leak_v[*idx];
            }
        }
        (mat, leaks)
    }

    /// Highest total degree with a nonempty slot at the given weight.
    pub fn max_total_degree(&self, w: i64) -> u32 {
        self.blocks
            .keys()
            .filter(|(bw, _, _)| *bw == w)
            .map(|(_, c, r)| c + *r as u32)
            .max()
            .unwrap_or(0)
    }
}

/// Evaluate a full chain image of a basis element.
pub fn chain_image(
    fam: &dyn ChainComplexFamily,
    x: &BasisElt,
    vertical: bool,
) -> ChainElt {
    if vertical {
        fam.vertical(x)
    } else {
        fam.horizontal(x)
    }
}

pub fn build(
    fam: &dyn ChainComplexFamily,
    window: &Window,
    opts: BuildOptions,
) -> Result<FiniteComplex, ChainError> {
    let elems = fam.enumerate(window)?;
    // Group into blocks.
    let mut grouped: BTreeMap<BlockKey, Vec<BasisElt>> = BTreeMap::new();
    for x in elems {
        grouped
            .entry((x.weight(), x.col, x.row()))
            .or_default()
            .push(x);
    }
    let mut index: HashMap<BasisElt, (BlockKey, usize)> = HashMap::new();
    for (key, v) in grouped.iter_mut() {
        v.sort();
        if v.len() > window.max_basis {
            return Err(ChainError::ResourceCap(format!(
                "block {:?} exceeds {} elements",
                key, window.max_basis
            )));
        }
        for (i, x) in v.iter().enumerate() {
            index.insert(x.clone(), (*key, i));
        }
    }
    // Assemble matrices with leak flags; verify squares and determine the
    // commutation sign symbolically (truncation-independent).
    let mut blocks: BTreeMap<BlockKey, Block> = BTreeMap::new();
    let mut sign_evidence: Option<SignRule> = None;
    for (key, v) in &grouped {
        let (w, col, row) = *key;
        let tgt_h = (w, col.wrapping_sub(1), row);
        let h_rows = if col > 0 {
            grouped.get(&tgt_h).map(|t| t.len()).unwrap_or(0)
        } else {
            0
        };
        let mut horiz = SparseMat::new(h_rows, v.len());
        let mut leak_h = vec![false; v.len()];
        let tgt_v = (w, col, 0u8);
        let v_rows = grouped.get(&tgt_v).map(|t| t.len()).unwrap_or(0);
        let mut vert = if row == 1 {
            Some(SparseMat::new(v_rows, v.len()))
        } else {
            None
        };
        let mut leak_v = vec![false; v.len()];
        for (ci, x) in v.iter().enumerate() {
            let dx = fam.horizontal(x);
            for (y, c) in &dx.terms {
                match index.get(y) {
                    Some(((tw, tc, tr), ri)) if (*tw, *tc, *tr) == tgt_h => {
                        horiz.add_entry(*ri, ci, c.clone());
                    }
                    _ => {
                        leak_h[ci] = true;
                    }
                }
            }
            if opts.verify_squares {
                let mut ddx = ChainElt::zero();
                for (y, c) in &dx.terms {
                    ddx = ddx.add(&fam.horizontal(y).scale(c));
                }
                if !ddx.is_zero() {
                    return Err(ChainError::Hypothesis(format!(
                        "horizontal square does not vanish at {}",
                        x
                    )));
                }
            }
            if row == 1 {
                let vx = fam.vertical(x);
                for (y, c) in &vx.terms {
                    match index.get(y) {
                        Some(((tw, tc, tr), ri)) if (*tw, *tc, *tr) == tgt_v => {
                            vert.as_mut().unwrap().add_entry(*ri, ci, c.clone());
                        }
                        _ => {
                            leak_v[ci] = true;
                        }
                    }
                }
                // Commutation sign, determined symbolically.
                let mut phi_d = ChainElt::zero();
                for (y, c) in &dx.terms {
                    phi_d = phi_d.add(&fam.vertical(y).scale(c));
                }
                let mut d_phi = ChainElt::zero();
                for (y, c) in &vx.terms {
                    d_phi = d_phi.add(&fam.horizontal(y).scale(c));
                }
                if !(phi_d.is_zero() && d_phi.is_zero()) {
                    let anti = phi_d == d_phi.scale(&Scalar::from_i64(-1));
                    let comm = phi_d == d_phi;
                    let observed = match (anti, comm) {
                        (true, _) => SignRule::Anticommute,
                        (false, true) => SignRule::Commute,
                        _ => {
                            return Err(ChainError::Hypothesis(format!(
                                "mixed commutation behavior at {}",
                                x
                            )))
                        }
                    };
                    match sign_evidence {
                        None => sign_evidence = Some(observed),
                        Some(prev) if prev == observed => {}
                        Some(_) => {
                            return Err(ChainError::Hypothesis(format!(
                                "inconsistent commutation sign at {}",
                                x
                            )))
                        }
                    }
                }
            }
        }
        blocks.insert(
            *key,
            Block {
                elems: v.clone(),
                horiz,
                vert,
                leak_h,
                leak_v,
            },
        );
    }
    let max_col = blocks.keys().map(|(_, c, _)| *c).max().unwrap_or(0);
    Ok(FiniteComplex {
        label: fam.label(),
        window: window.clone(),
        blocks,
        sign_rule: sign_evidence.unwrap_or(SignRule::Anticommute),
        max_col,
    })
}
