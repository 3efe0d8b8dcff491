//! Dense-exponent sparse polynomials in the formal parameters `q` and `p`,
//! with exact rational coefficients.  These are the numerators and
//! denominators of [`Scalar`](super::Scalar).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Number of formal parameters: `q` (index 0) and `p` (index 1).
pub const NPARAMS: usize = 2;

pub const PARAM_NAMES: [&str; NPARAMS] = ["q", "p"];

/// Exponent pair of a parameter monomial `q^a p^b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PExp(pub [u32; NPARAMS]);

impl PExp {
    pub fn zero() -> Self {
        PExp([0; NPARAMS])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn add(&self, other: &PExp) -> PExp {
        let mut out = [0; NPARAMS];
        for k in 0..NPARAMS {
            out[k] = self.0[k] + other.0[k];
        }
        PExp(out)
    }

    fn sub_checked(&self, other: &PExp) -> Option<PExp> {
        let mut out = [0; NPARAMS];
        for k in 0..NPARAMS {
            out[k] = self.0[k].checked_sub(other.0[k])?;
        }
        Some(PExp(out))
    }

    fn meet(&self, other: &PExp) -> PExp {
        let mut out = [0; NPARAMS];
        for k in 0..NPARAMS {
            out[k] = self.0[k].min(other.0[k]);
        }
        PExp(out)
    }
}

// Graded lexicographic: total degree first, then lex with q > p.
impl Ord for PExp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `q`, `p` over the rationals, stored sparsely keyed by
/// exponent pair in graded-lex order.  No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<PExp, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PExp::zero(), c);
        }
        MultiPoly { terms }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The monomial `q^e0 p^e1` with coefficient `c`.
    pub fn monomial(exp: PExp, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly { terms }
    }

    /// The bare parameter with the given index (0 = q, 1 = p).
    pub fn param(idx: usize) -> Self {
        assert!(idx < NPARAMS);
        let mut e = [0; NPARAMS];
        e[idx] = 1;
        Self::monomial(PExp(e), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_coeff().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_coeff(&self) -> BigRational {
        self.terms
            .get(&PExp::zero())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PExp, &BigRational)> {
        self.terms.iter()
    }

    /// Leading (exponent, coefficient) in graded-lex order.
    pub fn leading(&self) -> Option<(&PExp, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn max_degree(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e.0[var] > 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|e| e.total()).max().unwrap_or(0)
    }

    fn insert_add(&mut self, exp: PExp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (*e, k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &MultiPoly) -> Option<MultiPoly> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        let (lexp, lc) = {
            let (e, c) = other.leading().unwrap();
            (*e, c.clone())
        };
        while let Some((rexp, rc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            let qexp = rexp.sub_checked(&lexp)?;
            let qc = rc / &lc;
            let t = MultiPoly::monomial(qexp, qc);
            rem = rem.sub(&t.mul(other));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Greatest common monomial divisor of all terms.
    fn monomial_content(&self) -> PExp {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(e) => *e,
            None => return PExp::zero(),
        };
        it.fold(first, |acc, e| acc.meet(e))
    }

    /// Scale so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => MultiPoly::zero(),
            Some((_, lc)) => {
                let inv = BigRational::one() / lc;
                self.scale(&inv)
            }
        }
    }

    /// View as univariate in `var`, coefficients polynomials in the others.
    fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.max_degree(var) as usize;
        let mut out = vec![MultiPoly::zero(); deg + 1];
        for (e, c) in &self.terms {
            let d = e.0[var] as usize;
            let mut rest = *e;
            rest.0[var] = 0;
            out[d].insert_add(rest, c.clone());
        }
        out
    }

    fn from_coeffs_in(var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (d, c) in coeffs.iter().enumerate() {
            for (e, k) in &c.terms {
                let mut exp = *e;
                exp.0[var] += d as u32;
                out.insert_add(exp, k.clone());
            }
        }
        out
    }

    /// GCD, normalized monic in graded-lex order.  Constants give 1.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let ma = self.monomial_content();
        let mb = other.monomial_content();
        let common = ma.meet(&mb);
        let core_a = self
            .div_exact(&MultiPoly::monomial(ma, BigRational::one()))
            .unwrap();
        let core_b = other
            .div_exact(&MultiPoly::monomial(mb, BigRational::one()))
            .unwrap();
        let common_mono = MultiPoly::monomial(common, BigRational::one());
        if core_a.is_constant() || core_b.is_constant() {
            return common_mono;
        }
        let use_q = core_a.uses_var(0) || core_b.uses_var(0);
        let use_p = core_a.uses_var(1) || core_b.uses_var(1);
        let core_gcd = match (use_q, use_p) {
            (true, true) => gcd_bivariate(&core_a, &core_b),
            (true, false) => gcd_univariate(&core_a, &core_b, 0),
            (false, true) => gcd_univariate(&core_a, &core_b, 1),
            (false, false) => MultiPoly::one(),
        };
        common_mono.mul(&core_gcd).monic()
    }

    pub fn render(&self) -> String {
        format!("{}", self)
    }
}

/// Euclidean GCD for polynomials in a single parameter.
fn gcd_univariate(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let mut r0 = a.coeffs_in(var);
    let mut r1 = b.coeffs_in(var);
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r = uni_rem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    MultiPoly::from_coeffs_in(var, &r0).monic()
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Remainder of univariate division with rational coefficients.  The
/// coefficient polys here are constants (single-parameter case).
fn uni_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut rem: Vec<MultiPoly> = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lb = b[db].constant_coeff();
    while rem.len() >= b.len() {
        let dr = rem.len() - 1;
        let factor = rem[dr].constant_coeff() / &lb;
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            let delta = bc.constant_coeff() * &factor;
            let cur = rem[k + shift].constant_coeff() - delta;
            rem[k + shift] = MultiPoly::constant(cur);
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

/// Primitive pseudo-remainder sequence with main variable `q` and
/// coefficients in `Q[p]`.
fn gcd_bivariate(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let ca = coeff_content(&a.coeffs_in(0));
    let cb = coeff_content(&b.coeffs_in(0));
    let g_cont = gcd_univariate(&ca, &cb, 1);
    let mut fa = divide_coeffs(a.coeffs_in(0), &ca);
    let mut fb = divide_coeffs(b.coeffs_in(0), &cb);
    if fa.len() < fb.len() {
        std::mem::swap(&mut fa, &mut fb);
    }
    loop {
        if fb.len() <= 1 {
            // Primitive part of a q-degree-0 polynomial is a unit.
            return g_cont;
        }
        let mut r = pseudo_rem(&fa, &fb);
        trim(&mut r);
        if r.is_empty() {
            let pp = MultiPoly::from_coeffs_in(0, &fb);
            return g_cont.mul(&pp);
        }
        let cont = coeff_content(&r);
        fa = fb;
        fb = divide_coeffs(r, &cont);
    }
}

fn coeff_content(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in coeffs {
        if !c.is_zero() {
            g = if g.is_zero() {
                c.monic()
            } else if g.is_one() {
                break;
            } else {
                g.gcd(c)
            };
        }
    }
    if g.is_zero() {
        MultiPoly::one()
    } else {
        g
    }
}

fn divide_coeffs(coeffs: Vec<MultiPoly>, d: &MultiPoly) -> Vec<MultiPoly> {
    coeffs
        .into_iter()
        .map(|c| {
            if c.is_zero() {
                c
            } else {
                c.div_exact(d).expect("content must divide")
            }
        })
        .collect()
}

fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut rem: Vec<MultiPoly> = a.to_vec();
    trim(&mut rem);
    while rem.len() > db {
        let dr = rem.len() - 1;
        let lead = rem[dr].clone();
        let shift = dr - db;
        // rem = lb*rem - lead * q^shift * b
        for c in rem.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bc) in b.iter().enumerate() {
            let delta = bc.mul(&lead);
            rem[k + shift] = rem[k + shift].sub(&delta);
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = render_pexp(e);
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        Ok(())
    }
}

fn render_pexp(e: &PExp) -> String {
    let mut parts = Vec::new();
    for (k, name) in PARAM_NAMES.iter().enumerate() {
        match e.0[k] {
            0 => {}
            1 => parts.push(name.to_string()),
            n => parts.push(format!("{}^{}", name, n)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MultiPoly {
        MultiPoly::param(0)
    }

    fn p() -> MultiPoly {
        MultiPoly::param(1)
    }

    fn int(n: i64) -> MultiPoly {
        MultiPoly::from_i64(n)
    }

    #[test]
    fn arithmetic_basics() {
        let a = q().add(&int(1));
        let b = q().sub(&int(1));
        let prod = a.mul(&b);
        assert_eq!(prod, q().mul(&q()).sub(&int(1)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_division() {
        let num = q().pow(3).sub(&int(1));
        let den = q().sub(&int(1));
        let quot = num.div_exact(&den).unwrap();
        assert_eq!(quot, q().pow(2).add(&q()).add(&int(1)));
        assert!(den.div_exact(&num).is_none());
    }

    #[test]
    fn gcd_univariate_q() {
        // gcd(q^6 - 1, q^4 - 1) = q^2 - 1
        let a = q().pow(6).sub(&int(1));
        let b = q().pow(4).sub(&int(1));
        assert_eq!(a.gcd(&b), q().pow(2).sub(&int(1)));
    }

    #[test]
    fn gcd_bivariate_qp() {
        // (q-p)(q+1) vs (q-p)(p+2)
        let qp = q().sub(&p());
        let a = qp.mul(&q().add(&int(1)));
        let b = qp.mul(&p().add(&int(2)));
        assert_eq!(a.gcd(&b), qp.monic());
    }

    #[test]
    fn gcd_monomial_content() {
        // gcd(q^2 p, q p^3) = q p
        let a = MultiPoly::monomial(PExp([2, 1]), num::BigRational::one());
        let b = MultiPoly::monomial(PExp([1, 3]), num::BigRational::one());
        assert_eq!(a.gcd(&b), MultiPoly::monomial(PExp([1, 1]), num::BigRational::one()));
    }

    #[test]
    fn display_order() {
        let f = q().pow(2).add(&q().mul(&p())).add(&int(-3));
        assert_eq!(format!("{}", f), "q^2 + q*p - 3");
    }
}
