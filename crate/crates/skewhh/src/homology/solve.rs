//! Homology of truncated complexes, by two routes, with certification.
//!
//! Truncation is not compatible with the boundary (images escape), so the
//! honest object is the *core* quotient: for a requested window `W` and
//! margin `M`, matrices are assembled on the enlarged window `W + M`, where
//! every `W`-supported chain has an honestly computed boundary.  Per block,
//!
//! * `k` = dimension of the honest cycles supported in `W`,
//! * `b` = rank of the honest boundaries that land inside the `W` span
//!   (sources anywhere in `W + M` whose images are fully visible),
//!
//! and `dim H = k - b`.  A block is certified when recomputing with a
//! second enlargement `W + 2M` changes neither number, i.e. the window
//! already saw every relevant cycle and relation.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::complex::{ChainComplexFamily, ChainError, Margin, Window};
use super::build::{build, BlockKey, BuildOptions, FiniteComplex};
use super::matrix::{render_sparse_vec, SpanSolver, SparseMat, SparseVec};
use super::report::{BlockReport, HomologyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Total,
    RowsThenVertical,
}

/// Uncertified single-window homology: `dim H = dim ker - rank incoming`
/// on the truncated matrices.  Exact on leak-free windows; certification
/// (below) is the honest variant elsewhere.
pub fn homology(fc: &FiniteComplex, route: Route) -> HomologyReport {
    let mut blocks = Vec::new();
    for w in fc.weights() {
        let top = fc.max_total_degree(w) + 1;
        match route {
            Route::Total => {
                for m in 0..=top {
                    let (dm, _) = fc.total_matrix(w, m);
                    let (_, ker) = dm.rank_and_kernel();
                    let (dnext, _) = fc.total_matrix(w, m + 1);
                    let rank_in = dnext.rank();
                    let dim = ker.len().saturating_sub(rank_in);
                    let reps = render_reps(fc, w, m, &ker, &image_span(&dnext));
                    blocks.push(BlockReport {
                        degree: m,
                        weight: w,
                        multidegree: None,
                        dim,
                        certified: false,
                        representatives: reps,
                    });
                }
            }
            Route::RowsThenVertical => {
                for (m, dim) in rows_then_vertical_dims(fc, w) {
                    blocks.push(BlockReport {
                        degree: m,
                        weight: w,
                        multidegree: None,
                        dim,
                        certified: false,
                        representatives: vec![],
                    });
                }
            }
        }
    }
    HomologyReport {
        family: fc.label.clone(),
        window: (&fc.window).into(),
        blocks,
    }
}

fn image_span(incoming: &SparseMat) -> SpanSolver {
    let mut image = SpanSolver::new();
    for c in 0..incoming.ncols {
        let mut col: SparseVec = Vec::new();
        for (r, row) in incoming.rows.iter().enumerate() {
            if let Some(v) = row.get(&c) {
                col.push((r, v.clone()));
            }
        }
        image.insert(col);
    }
    image
}

fn render_reps(
    fc: &FiniteComplex,
    w: i64,
    m: u32,
    kernel: &[SparseVec],
    image: &SpanSolver,
) -> Vec<String> {
    let labels = fc.total_basis(w, m);
    let mut quotient = image.clone();
    let mut out = Vec::new();
    for v in kernel {
        if let Some(red) = quotient.insert(v.clone()) {
            let label = |i: usize| {
                let (key, idx) = labels[i];
                format!("{}", fc.blocks[&key].elems[idx])
            };
            out.push(render_sparse_vec(&red, &label));
        }
    }
    out
}

/// Row homology then induced vertical map (single window, uncertified).
fn rows_then_vertical_dims(fc: &FiniteComplex, w: i64) -> Vec<(u32, usize)> {
    let top = fc.max_total_degree(w) + 1;
    let mut qbases: HashMap<(u32, u8), Vec<SparseVec>> = HashMap::new();
    let mut qsolvers: HashMap<(u32, u8), SpanSolver> = HashMap::new();
    for row in [0u8, 1] {
        for col in 0..=top {
            let key = (w, col, row);
            let Some(block) = fc.block(&key) else { continue };
            let (_, ker) = block.horiz.rank_and_kernel();
            let mut image = SpanSolver::new();
            if let Some(up) = fc.block(&(w, col + 1, row)) {
                for c in 0..up.horiz.ncols {
                    let mut colv: SparseVec = Vec::new();
                    for (r, rr) in up.horiz.rows.iter().enumerate() {
                        if let Some(v) = rr.get(&c) {
                            colv.push((r, v.clone()));
                        }
                    }
                    image.insert(colv);
                }
            }
            let mut quotient = image.clone();
            let mut basis = Vec::new();
            for v in ker {
                if let Some(red) = quotient.insert(v.clone()) {
                    basis.push(red);
                }
            }
            qbases.insert((col, row), basis);
            qsolvers.insert((col, row), image);
        }
    }
    let mut vbar_rank: HashMap<u32, usize> = HashMap::new();
    for col in 0..=top {
        let Some(block) = fc.block(&(w, col, 1u8)) else {
            continue;
        };
        let Some(vmat) = &block.vert else { continue };
        let Some(q1) = qbases.get(&(col, 1)) else {
            continue;
        };
        let mut span = qsolvers.get(&(col, 0)).cloned().unwrap_or_default();
        let base = span.rank();
        for q in q1 {
            span.insert(vmat.apply(q));
        }
        vbar_rank.insert(col, span.rank() - base);
    }
    let qdim =
        |col: u32, row: u8| -> usize { qbases.get(&(col, row)).map(|b| b.len()).unwrap_or(0) };
    let mut out = Vec::new();
    for m in 0..=top {
        let coker = qdim(m, 0).saturating_sub(vbar_rank.get(&m).copied().unwrap_or(0));
        let ker = if m >= 1 {
            qdim(m - 1, 1).saturating_sub(vbar_rank.get(&(m - 1)).copied().unwrap_or(0))
        } else {
            0
        };
        out.push((m, coker + ker));
    }
    out
}

#[derive(Default)]
pub struct CertifyOptions {
    pub build: BuildOptions,
    pub parallel: bool,
}

/// Smallest admissible margin for a family: two boundary applications, each
/// moving at most 1 in the x-exponent, `max(deg u, 1)` in coefficient
/// degree, and (with tensor slots) one slot.
pub fn min_margin(udeg: i64, has_tensor: bool) -> Margin {
    Margin::new(2, 2 * udeg.max(1), if has_tensor { 2 } else { 0 })
}

/// Honest numbers of one core block inside an enlarged complex.
struct CoreNumbers {
    k: usize,
    b: usize,
    kernel: Vec<SparseVec>,
    image: SpanSolver,
    /// Honest boundary vectors in core-local coordinates.
    image_vectors: Vec<SparseVec>,
    /// Indices (into the enlarged total basis) of the core columns.
    core_cols: Vec<usize>,
    /// True when every core element has an honest boundary here.
    core_honest: bool,
}

fn core_numbers(fc: &FiniteComplex, core: &Window, w: i64, m: u32) -> CoreNumbers {
    let dom = fc.total_basis(w, m);
    let mut core_cols = Vec::new();
    let mut core_honest = true;
    let (dm, dm_leaks) = fc.total_matrix(w, m);
    for (pos, (key, idx)) in dom.iter().enumerate() {
        let elt = &fc.blocks[key].elems[*idx];
        if core.contains(elt) {
            core_cols.push(pos);
            core_honest &= !dm_leaks[pos];
        }
    }
    // Honest cycles supported in the core.
    let restricted = dm.restrict_cols(&core_cols);
    let kernel = restricted.kernel_basis();
    // Honest boundaries inside the core span: kernel of the outside rows of
    // the incoming matrix, over non-leaky sources, imaged into core rows.
    let (dnext, leaks_next) = fc.total_matrix(w, m + 1);
    let honest_cols: Vec<usize> = (0..dnext.ncols).filter(|c| !leaks_next[*c]).collect();
    let dnext_honest = dnext.restrict_cols(&honest_cols);
    let in_core: HashSet<usize> = core_cols.iter().copied().collect();
    let outside: Vec<usize> = (0..dnext_honest.nrows)
        .filter(|r| !in_core.contains(r))
        .collect();
    let m_out = dnext_honest.restrict_rows(&outside);
    let hidden = m_out.kernel_basis();
    let m_in = dnext_honest.restrict_rows(&core_cols);
    // Re-express core rows in core-local coordinates used by `kernel`.
    let mut image = SpanSolver::new();
    let mut image_vectors = Vec::new();
    for v in &hidden {
        let img = m_in.apply(v);
        if image.insert(img.clone()).is_some() {
            image_vectors.push(img);
        }
    }
    CoreNumbers {
        k: kernel.len(),
        b: image.rank(),
        kernel,
        image,
        image_vectors,
        core_cols,
        core_honest,
    }
}

/// Certified homology of the core window.  Matrices are assembled on
/// `window + margin`; certification recomputes on `window + 2 margin` and
/// demands identical kernel and image numbers.
pub fn certify(
    fam: &dyn ChainComplexFamily,
    window: &Window,
    margin: Margin,
    required: Margin,
    opts: &CertifyOptions,
) -> Result<HomologyReport, ChainError> {
    if margin.di < required.di || margin.dadeg < required.dadeg || margin.dlen < required.dlen {
        return Err(ChainError::WindowTooSmall(format!(
            "margin {:?} below the family minimum {:?}",
            margin, required
        )));
    }
    certify_unchecked(fam, window, margin, opts)
}

/// Certification without the margin floor; margin 0 taints every block with
/// a leaky core element.
pub fn certify_unchecked(
    fam: &dyn ChainComplexFamily,
    window: &Window,
    margin: Margin,
    opts: &CertifyOptions,
) -> Result<HomologyReport, ChainError> {
    let w1 = window.enlarged(&margin);
    let w2 = w1.enlarged(&margin);
    let fc1 = build(fam, &w1, opts.build)?;
    let fc2 = build(fam, &w2, BuildOptions::default())?;
    let mut tasks: Vec<(i64, u32)> = Vec::new();
    for w in &window.weights {
        let top = fc1.max_total_degree(*w) + 1;
        for m in 0..=top {
            tasks.push((*w, m));
        }
    }
    let run = |(w, m): &(i64, u32)| -> BlockReport {
        let n1 = core_numbers(&fc1, window, *w, *m);
        let n2 = core_numbers(&fc2, window, *w, *m);
        let certified =
            n1.core_honest && n2.core_honest && n1.k == n2.k && n1.b == n2.b;
        let labels = fc1.total_basis(*w, *m);
        let label = |i: usize| {
            let (key, idx) = labels[n1.core_cols[i]];
            format!("{}", fc1.blocks[&key].elems[idx])
        };
        // Representatives: honest core cycles reduced against the honest
        // image, in core-local coordinates.
        let mut quotient = n1.image.clone();
        let mut reps = Vec::new();
        for v in &n1.kernel {
            if let Some(red) = quotient.insert(v.clone()) {
                reps.push(render_sparse_vec(&red, &label));
            }
        }
        BlockReport {
            degree: *m,
            weight: *w,
            multidegree: None,
            dim: n1.k.saturating_sub(n1.b),
            certified,
            representatives: reps,
        }
    };
    let blocks: Vec<BlockReport> = if opts.parallel {
        tasks.par_iter().map(run).collect()
    } else {
        tasks.iter().map(run).collect()
    };
    Ok(HomologyReport {
        family: fc1.label.clone(),
        window: (window).into(),
        blocks,
    })
}

/// Certified core homology by the rows-then-vertical route (dimensions
/// only), for route agreement checks.
pub fn certify_rows_route(
    fam: &dyn ChainComplexFamily,
    window: &Window,
    margin: Margin,
    opts: &CertifyOptions,
) -> Result<Vec<(i64, u32, usize)>, ChainError> {
    let w1 = window.enlarged(&margin);
    let fc1 = build(fam, &w1, opts.build)?;
    let mut out = Vec::new();
    for w in &window.weights {
        for (m, dim) in rows_core_dims(&fc1, window, *w) {
            out.push((*w, m, dim));
        }
    }
    Ok(out)
}

/// Core variant of the rows-then-vertical route.
fn rows_core_dims(fc: &FiniteComplex, core: &Window, w: i64) -> Vec<(u32, usize)> {
    let top = fc.max_total_degree(w) + 1;
    let mut qbases: HashMap<(u32, u8), Vec<SparseVec>> = HashMap::new();
    let mut qsolvers: HashMap<(u32, u8), SpanSolver> = HashMap::new();
    for row in [0u8, 1] {
        for col in 0..=top {
            let key: BlockKey = (w, col, row);
            let Some(block) = fc.block(&key) else { continue };
            // Core columns of this block.
            let core_cols: Vec<usize> = block
                .elems
                .iter()
                .enumerate()
                .filter(|(_, e)| core.contains(e))
                .map(|(i, _)| i)
                .collect();
            let restricted = block.horiz.restrict_cols(&core_cols);
            let kernel = restricted.kernel_basis();
            // Honest boundaries inside the core span of this block.
            let mut image = SpanSolver::new();
            if let Some(up) = fc.block(&(w, col + 1, row)) {
                let honest: Vec<usize> = (0..up.horiz.ncols)
                    .filter(|c| !up.leak_h[*c])
                    .collect();
                let mat = up.horiz.restrict_cols(&honest);
                let in_core: HashSet<usize> = core_cols.iter().copied().collect();
                let outside: Vec<usize> =
                    (0..mat.nrows).filter(|r| !in_core.contains(r)).collect();
                let hidden = mat.restrict_rows(&outside).kernel_basis();
                let m_in = mat.restrict_rows(&core_cols);
                for v in &hidden {
                    image.insert(m_in.apply(v));
                }
            }
            let mut quotient = image.clone();
            let mut basis = Vec::new();
            for v in kernel {
                if let Some(red) = quotient.insert(v.clone()) {
                    basis.push(red);
                }
            }
            qbases.insert((col, row), basis);
            qsolvers.insert((col, row), image);
        }
    }
    // Induced vertical map on core row homology: apply the vertical matrix
    // to core-supported representatives, restrict to core rows, reduce.
    let mut vbar_rank: HashMap<u32, usize> = HashMap::new();
    for col in 0..=top {
        let Some(block) = fc.block(&(w, col, 1u8)) else {
            continue;
        };
        let Some(vmat) = &block.vert else { continue };
        let Some(q1) = qbases.get(&(col, 1)) else {
            continue;
        };
        let src_core: Vec<usize> = block
            .elems
            .iter()
            .enumerate()
            .filter(|(_, e)| core.contains(e))
            .map(|(i, _)| i)
            .collect();
        let tgt_block = fc.block(&(w, col, 0u8));
        let tgt_core: Vec<usize> = match tgt_block {
            Some(tb) => tb
                .elems
                .iter()
                .enumerate()
                .filter(|(_, e)| core.contains(e))
                .map(|(i, _)| i)
                .collect(),
            None => vec![],
        };
        let vrestr = vmat.restrict_cols(&src_core).restrict_rows(&tgt_core);
        let mut span = qsolvers.get(&(col, 0)).cloned().unwrap_or_default();
        let base = span.rank();
        for q in q1 {
            span.insert(vrestr.apply(q));
        }
        vbar_rank.insert(col, span.rank() - base);
    }
    let qdim =
        |col: u32, row: u8| -> usize { qbases.get(&(col, row)).map(|b| b.len()).unwrap_or(0) };
    let mut out = Vec::new();
    for m in 0..=top {
        let coker = qdim(m, 0).saturating_sub(vbar_rank.get(&m).copied().unwrap_or(0));
        let ker = if m >= 1 {
            qdim(m - 1, 1).saturating_sub(vbar_rank.get(&(m - 1)).copied().unwrap_or(0))
        } else {
            0
        };
        out.push((m, coker + ker));
    }
    out
}

/// Degree profile of the weight block's `x^0 y^0` part at degree 0: for
/// each `d`, the dimension of the span of core `x^0 y^0` elements of
/// coefficient degree at most `d`, modulo the honest boundaries supported
/// entirely on those elements.  Serves the coefficient-degree comparisons
/// against independent oracles.
pub fn origin_degree_profile(
    fam: &dyn ChainComplexFamily,
    window: &Window,
    margin: Margin,
) -> Result<Vec<(i64, usize)>, ChainError> {
    let w1 = window.enlarged(&margin);
    let fc1 = build(fam, &w1, BuildOptions::default())?;
    let w = window.weights[0];
    let n = core_numbers(&fc1, window, w, 0);
    let labels = fc1.total_basis(w, 0);
    // Core-local coordinates of the plain x^0 y^0 elements, with degrees.
    let mut origin: Vec<(usize, i64)> = Vec::new();
    for (loc, &g) in n.core_cols.iter().enumerate() {
        let (key, idx) = labels[g];
        let e = &fc1.blocks[&key].elems[idx];
        if e.i == 0 && e.j == 0 && e.tensor.is_empty() && !e.e1 && !e.e2 {
            origin.push((loc, e.adeg()));
        }
    }
    let origin_set: HashSet<usize> = origin.iter().map(|(l, _)| *l).collect();
    // Honest boundaries supported entirely on the origin coordinates:
    // intersect the honest image span with the origin span.
    let mut mat = SparseMat::new(n.core_cols.len(), n.image_vectors.len());
    for (c, v) in n.image_vectors.iter().enumerate() {
        for (r, x) in v {
            mat.add_entry(*r, c, x.clone());
        }
    }
    let non_origin: Vec<usize> = (0..n.core_cols.len())
        .filter(|r| !origin_set.contains(r))
        .collect();
    let hidden = mat.restrict_rows(&non_origin).kernel_basis();
    let origin_rows: Vec<usize> = origin.iter().map(|(l, _)| *l).collect();
    let m_in = mat.restrict_rows(&origin_rows);
    // Echelonize with pivots at the highest degree: relabel coordinates so
    // that position 0 is the top degree.
    let nloc = origin.len();
    let mut order: Vec<usize> = (0..nloc).collect();
    order.sort_by_key(|&k| (origin[k].1, k));
    let pos_of: HashMap<usize, usize> = order.iter().enumerate().map(|(r, &k)| (k, r)).collect();
    let mut solver = SpanSolver::new();
    let mut pivot_degrees: Vec<i64> = Vec::new();
    for v in &hidden {
        let img = m_in.apply(v);
        let mut relabeled: SparseVec = img
            .iter()
            .map(|(i, c)| (nloc - 1 - pos_of[i], c.clone()))
            .collect();
        relabeled.sort_by_key(|(i, _)| *i);
        if let Some(red) = solver.insert(relabeled) {
            let lead = red[0].0;
            pivot_degrees.push(origin[order[nloc - 1 - lead]].1);
        }
    }
    let mut out = Vec::new();
    for d in 0..=window.max_adeg {
        let total = origin.iter().filter(|(_, dd)| *dd <= d).count();
        let killed = pivot_degrees.iter().filter(|&&pd| pd <= d).count();
        out.push((d, total - killed));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::w::WComplex;
    use crate::scalar::Scalar;
    use crate::skew::families::{qa2_spec, usl2_spec};

    #[test]
    fn zero_differentials_give_basis_dims() {
        // Reduced family at p = 1: every differential vanishes, so the
        // homology dims equal the module dims.
        let rc = crate::complex::reduced::ReducedComplex::new(qa2_spec(Scalar::one())).unwrap();
        let w = Window::new(vec![0], 3, 0, 0);
        let fc = build(&rc, &w, BuildOptions::default()).unwrap();
        let rep = homology(&fc, Route::Total);
        assert_eq!(rep.dim(0, 0), Some((4, false)));
        assert_eq!(rep.dim(0, 1), Some((4 + 3, false)));
        assert_eq!(rep.dim(0, 2), Some((4, false)));
        // Any margin certifies a zero-differential complex.
        let cert = certify_unchecked(&rc, &w, Margin::new(1, 0, 0), &CertifyOptions::default())
            .unwrap();
        assert_eq!(cert.dim(0, 0), Some((4, true)));
        assert_eq!(cert.dim(0, 2), Some((4, true)));
    }

    #[test]
    fn identity_complex_has_no_homology() {
        // 0 <- k <- k <- 0 realized by the twisted two-term complex with a
        // unit difference.
        use crate::algebra::Automorphism;
        let alpha = Automorphism::shift(Scalar::from_i64(2));
        let x = crate::complex::xtwisted::XTwisted::new(
            alpha.power(-1),
            Automorphism::identity(&crate::BaseAlgebra::Polynomial),
        )
        .unwrap();
        let w = Window::new(vec![0], 0, 4, 0);
        let cert =
            certify_unchecked(&x, &w, Margin::zero(), &CertifyOptions::default()).unwrap();
        assert_eq!(cert.dim(0, 0), Some((0, true)));
        assert_eq!(cert.dim(0, 1), Some((0, true)));
    }

    #[test]
    fn usl2_certified_profile() {
        // lambda = 2, u = -(t-1)^2/4, core window deg <= 8, i <= 3.
        let spec = usl2_spec();
        let wc = WComplex::new(spec).unwrap();
        let w = Window::new(vec![0], 3, 8, 0);
        // The killing chains walk the x-exponent down while the coefficient
        // degree grows, so the margin scales with the core size.
        let margin = Margin::new(4, 8, 0);
        let rep = certify(&wc, &w, margin, min_margin(2, false), &CertifyOptions::default())
            .unwrap();
        assert_eq!(rep.dim(0, 1), Some((0, true)), "H1");
        assert_eq!(rep.dim(0, 2), Some((0, true)), "H2");
        // H_3 = span of the corner cycles V_0..V_3 within the core.
        assert_eq!(rep.dim(0, 3), Some((4, true)), "H3");
        // H_0: five even-degree origin classes plus three diagonal classes
        // whose origin reductions exceed the core degree.
        assert_eq!(rep.dim(0, 0), Some((8, true)), "H0");
        let profile = origin_degree_profile(&wc, &w, margin).unwrap();
        // Relations T_2(u^n) have degrees 1, 3, 5, 7: profile counts
        // 1,1,2,2,3,3,4,4,5 for d = 0..8.
        let expect: Vec<usize> = vec![1, 1, 2, 2, 3, 3, 4, 4, 5];
        let got: Vec<usize> = profile.iter().map(|(_, dim)| *dim).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn margin_zero_taints_leaky_blocks() {
        let spec = usl2_spec();
        let wc = WComplex::new(spec).unwrap();
        let w = Window::new(vec![0], 3, 6, 0);
        let rep =
            certify_unchecked(&wc, &w, Margin::zero(), &CertifyOptions::default()).unwrap();
        assert!(rep.blocks.iter().any(|b| !b.certified));
        assert!(certify(
            &wc,
            &w,
            Margin::zero(),
            min_margin(2, false),
            &CertifyOptions::default()
        )
        .is_err());
    }

    #[test]
    fn routes_agree_on_certified_blocks() {
        let spec = usl2_spec();
        let wc = WComplex::new(spec).unwrap();
        let w = Window::new(vec![0], 2, 6, 0);
        let margin = min_margin(2, false);
        let total = certify(&wc, &w, margin, margin, &CertifyOptions::default()).unwrap();
        let rows = certify_rows_route(&wc, &w, margin, &CertifyOptions::default()).unwrap();
        for b in &total.blocks {
            if !b.certified {
                continue;
            }
            let rd = rows
                .iter()
                .find(|(w2, m, _)| *w2 == b.weight && *m == b.degree)
                .map(|(_, _, d)| *d);
            assert_eq!(rd, Some(b.dim), "degree {}", b.degree);
        }
    }
}
