//! Sparse exact linear algebra over the scalar field.
//!
//! Rank and kernel computations clear denominators row-wise and run a
//! fraction-free (Bareiss/Montante) elimination over the polynomial ring, so
//! intermediate entries stay polynomial; back-substitution for kernel
//! vectors happens over the field.  Pivoting prefers constant entries, then
//! entries of minimal representation size.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sparse vector: sorted (index, value) pairs, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct SparseMat {
    pub nrows: usize,
    pub ncols: usize,
    /// Row-major adjacency: rows[r] sorted by column.
    pub rows: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMat {
    pub fn new(nrows: usize, ncols: usize) -> SparseMat {
        SparseMat {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let slot = self.rows[r].entry(c).or_insert_with(Scalar::zero);
        let sum = slot.add(&v);
        if sum.is_zero() {
            self.rows[r].remove(&c);
        } else {
            *slot = sum;
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.rows[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Keep only the given rows (reindexed in order).
    pub fn restrict_rows(&self, keep: &[usize]) -> SparseMat {
        let mut out = SparseMat::new(keep.len(), self.ncols);
        for (new_r, &r) in keep.iter().enumerate() {
            out.rows[new_r] = self.rows[r].clone();
        }
        out
    }

    /// Keep only the given columns (reindexed in order).
    pub fn restrict_cols(&self, keep: &[usize]) -> SparseMat {
        let mut col_map = BTreeMap::new();
        for (new_c, &c) in keep.iter().enumerate() {
            col_map.insert(c, new_c);
        }
        let mut out = SparseMat::new(self.nrows, keep.len());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                if let Some(&nc) = col_map.get(c) {
                    out.rows[r].insert(nc, v.clone());
                }
            }
        }
        out
    }

    /// Apply to a sparse column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let dense: BTreeMap<usize, &Scalar> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (c, m) in row {
                if let Some(x) = dense.get(c) {
                    acc = acc.add(&m.mul(x));
                }
            }
            if !acc.is_zero() {
                out.push((r, acc));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        Eliminated::run(self).npivots()
    }

    /// Basis of the null space `{v : M v = 0}`, echelonized and
    /// deterministic.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        Eliminated::run(self).kernel()
    }

    pub fn rank_and_kernel(&self) -> (usize, Vec<SparseVec>) {
        let e = Eliminated::run(self);
        (e.npivots(), e.kernel())
    }
}

/// Echelonized matrix: sparse Gaussian elimination over the field with
/// Markowitz pivoting (minimal fill, preferring constant and small pivots).
/// Entries stay reduced rational functions, so no uncontrolled swell occurs
/// on the sparse block-structured boundary matrices; see the tests for the
/// cross-check against an independent elimination.
struct Eliminated {
    ncols: usize,
    /// (pivot column, eliminated row) in elimination order; each row has
    /// zero entries at all earlier pivot columns and pivot value 1.
    pivots: Vec<(usize, BTreeMap<usize, Scalar>)>,
}

impl Eliminated {
    fn run(m: &SparseMat) -> Eliminated {
        let mut active: Vec<BTreeMap<usize, Scalar>> =
            m.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut pivots: Vec<(usize, BTreeMap<usize, Scalar>)> = Vec::new();
        while !active.is_empty() {
            let mut col_count: std::collections::HashMap<usize, usize> =
                std::collections::HashMap::new();
            for row in &active {
                for c in row.keys() {
                    *col_count.entry(*c).or_insert(0) += 1;
                }
            }
            let mut best: Option<(usize, usize, (usize, u8, usize, u64))> = None;
            for (ri, row) in active.iter().enumerate() {
                let rl = row.len() - 1;
                for (c, v) in row {
                    let size = v.numerator().num_terms() + v.denominator().num_terms();
                    let key = (
                        rl * (col_count[c] - 1),
                        u8::from(!v.is_rational()),
                        size,
                        v.numerator().total_degree(),
                    );
                    if best.as_ref().map(|(_, _, k)| key < *k).unwrap_or(true) {
                        best = Some((ri, *c, key));
                    }
                }
            }
            let (ri, pc, _) = best.unwrap();
            let mut prow = active.swap_remove(ri);
            // Normalize the pivot to 1.
            let pinv = prow[&pc].invert().expect("pivot nonzero");
            for v in prow.values_mut() {
                *v = v.mul(&pinv);
            }
            for row in active.iter_mut() {
                let Some(coef) = row.remove(&pc) else { continue };
                for (c, pv) in &prow {
                    if *c == pc {
                        continue;
                    }
                    let delta = coef.mul(pv);
                    match row.get_mut(c) {
                        Some(slot) => {
                            let new = slot.sub(&delta);
                            if new.is_zero() {
                                row.remove(c);
                            } else {
                                *slot = new;
                            }
                        }
                        None => {
                            row.insert(*c, delta.neg());
                        }
                    }
                }
            }
            active.retain(|r| !r.is_empty());
            pivots.push((pc, prow));
        }
        Eliminated {
            ncols: m.ncols,
            pivots,
        }
    }

    fn npivots(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis by back-substitution in reverse pivot order: each row
    /// has zeros at all earlier pivot columns, so later-solved values and
    /// free coordinates determine the pivot coordinate directly.
    fn kernel(&self) -> Vec<SparseVec> {
        let mut is_pivot = vec![false; self.ncols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if is_pivot[f] {
                continue;
            }
            let mut v: BTreeMap<usize, Scalar> = BTreeMap::new();
            v.insert(f, Scalar::one());
            for (pc, row) in self.pivots.iter().rev() {
                let mut acc = Scalar::zero();
                for (c, m) in row {
                    if c == pc {
                        continue;
                    }
                    if let Some(x) = v.get(c) {
                        acc = acc.add(&m.mul(x));
                    }
                }
                if !acc.is_zero() {
                    v.insert(*pc, acc.neg());
                }
            }
            out.push(v.into_iter().collect());
        }
        out
    }
}

/// Incremental echelon basis over the field, used for image spans,
/// membership tests, and quotient representatives.  Pivots sit at the
/// leading (smallest-index) coordinate of each stored row.
#[derive(Clone, Default)]
pub struct SpanSolver {
    rows: BTreeMap<usize, SparseVec>,
}

impl SpanSolver {
    pub fn new() -> SpanSolver {
        SpanSolver::default()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a SparseVec>) -> SpanSolver {
        let mut s = SpanSolver::new();
        for v in vs {
            s.insert(v.clone());
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut cur: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        loop {
            let lead = match cur.keys().next() {
                Some(&l) => l,
                None => return Vec::new(),
            };
            let row = match self.rows.get(&lead) {
                Some(r) => r,
                None => return cur.into_iter().collect(),
            };
            let factor = cur
                .get(&lead)
                .unwrap()
                .div(&row[0].1)
                .expect("pivot nonzero");
            for (c, x) in row {
                let delta = factor.mul(x);
                let slot = cur.entry(*c).or_insert_with(Scalar::zero);
                let new = slot.sub(&delta);
                if new.is_zero() {
                    cur.remove(c);
                } else {
                    *slot = new;
                }
            }
        }
    }

    /// Reduce and insert when independent; returns the reduced vector if it
    /// was inserted.
    pub fn insert(&mut self, v: SparseVec) -> Option<SparseVec> {
        let red = self.reduce(&v);
        if red.is_empty() {
            return None;
        }
        let lead = red[0].0;
        self.rows.insert(lead, red.clone());
        Some(red)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivot_positions(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }
}

pub fn render_sparse_vec(v: &SparseVec, label: &dyn Fn(usize) -> String) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| {
            if c.is_one() {
                label(*i)
            } else {
                format!("({}) * {}", c, label(*i))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn q() -> Scalar {
        Scalar::param_q()
    }

    #[test]
    fn rank_and_kernel_small() {
        // [1 q; q q^2] has rank 1; kernel spanned by (q, -1)-ish.
        let mut m = SparseMat::new(2, 2);
        m.add_entry(0, 0, Scalar::one());
        m.add_entry(0, 1, q());
        m.add_entry(1, 0, q());
        m.add_entry(1, 1, q().mul(&q()));
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn identity_map_has_zero_homology() {
        // 0 <- k <- k <- 0 with the identity in the middle: full rank.
        let mut m = SparseMat::new(1, 1);
        m.add_entry(0, 0, Scalar::one());
        assert_eq!(m.rank(), 1);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = SparseMat::new(3, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 4);
    }

    #[test]
    fn bareiss_agrees_with_field_elimination_on_random_matrices() {
        // Independent oracle: naive field-arithmetic Gaussian elimination.
        fn field_rank(m: &SparseMat) -> usize {
            let mut rows: Vec<BTreeMap<usize, Scalar>> =
                m.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
            let mut rank = 0;
            for c in 0..m.ncols {
                let pos = rows.iter().position(|r| r.contains_key(&c));
                let Some(pos) = pos else { continue };
                let prow = rows.swap_remove(pos);
                let pval = prow[&c].clone();
                rank += 1;
                for r in rows.iter_mut() {
                    if let Some(v) = r.get(&c).cloned() {
                        let f = v.div(&pval).unwrap();
                        for (cc, x) in &prow {
                            let delta = f.mul(x);
                            let slot = r.entry(*cc).or_insert_with(Scalar::zero);
                            let new = slot.sub(&delta);
                            if new.is_zero() {
                                r.remove(cc);
                            } else {
                                *slot = new;
                            }
                        }
                    }
                }
                rows.retain(|r| !r.is_empty());
            }
            rank
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let nr = rng.gen_range(1..6);
            let nc = rng.gen_range(1..6);
            let mut m = SparseMat::new(nr, nc);
            for r in 0..nr {
                for c in 0..nc {
                    match rng.gen_range(0..4) {
                        0 => m.add_entry(r, c, Scalar::from_i64(rng.gen_range(-3..4))),
                        1 => m.add_entry(
                            r,
                            c,
                            q().pow(rng.gen_range(0..3)).unwrap(),
                        ),
                        2 => m.add_entry(r, c, q().sub(&Scalar::from_i64(1))),
                        _ => {}
                    }
                }
            }
            let (rank, ker) = m.rank_and_kernel();
            assert_eq!(rank, field_rank(&m));
            // rank-nullity, exactly
            assert_eq!(rank + ker.len(), nc);
            for v in &ker {
                assert!(m.apply(v).is_empty());
            }
        }
    }

    #[test]
    fn span_solver_quotient() {
        // Span of (1, 1, 0) and (0, 1, 1) in k^3: quotient is 1-dimensional.
        let mut s = SpanSolver::new();
        s.insert(vec![(0, Scalar::one()), (1, Scalar::one())]);
        s.insert(vec![(1, Scalar::one()), (2, Scalar::one())]);
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&vec![
            (0, Scalar::one()),
            (2, Scalar::from_i64(-1))
        ]));
        let red = s.reduce(&vec![(2, Scalar::one())]);
        assert!(!red.is_empty());
    }
}
