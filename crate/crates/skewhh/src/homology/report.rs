//! Serializable homology reports.

use serde::Serialize;

use crate::complex::Window;

#[derive(Clone, Debug, Serialize)]
pub struct WindowDescriptor {
    pub weights: Vec<i64>,
    pub max_i: u32,
    pub max_j: Option<u32>,
    pub max_adeg: i64,
    pub max_len: u32,
}

impl From<&Window> for WindowDescriptor {
    fn from(w: &Window) -> WindowDescriptor {
        WindowDescriptor {
            weights: w.weights.clone(),
            max_i: w.max_i,
            max_j: w.max_j,
            max_adeg: w.max_adeg,
            max_len: w.max_len,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    /// Homological degree (total complex).
    pub degree: u32,
    pub weight: i64,
    /// Extra conserved grading when the family is graded; `null` otherwise.
    pub multidegree: Option<i64>,
    pub dim: usize,
    pub certified: bool,
    pub representatives: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub family: String,
    pub window: WindowDescriptor,
    pub blocks: Vec<BlockReport>,
}

impl HomologyReport {
    pub fn dim(&self, weight: i64, degree: u32) -> Option<(usize, bool)> {
        self.blocks
            .iter()
            .filter(|b| b.weight == weight && b.degree == degree && b.multidegree.is_none())
            .map(|b| (b.dim, b.certified))
            .next()
    }

    /// Sum of dims over weights at one degree; `certified` is the
    /// conjunction.
    pub fn dim_summed(&self, degree: u32) -> (usize, bool) {
        let mut dim = 0;
        let mut cert = true;
        for b in self
            .blocks
            .iter()
            .filter(|b| b.degree == degree && b.multidegree.is_none())
        {
            dim += b.dim;
            cert &= b.certified;
        }
        (dim, cert)
    }
}
