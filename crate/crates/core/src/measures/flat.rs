use crate::error::{Error, Result};
use crate::geom::linalg::{gram_measure, rank};

/// An `m`-parallelepiped `base + sum_j [0, 1] g_j` in `R^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatSet {
    base: Vec<f64>,
    generators: Vec<Vec<f64>>,
}

impl FlatSet {
    /// Requires `m` linearly independent generators.
    pub fn new(base: Vec<f64>, generators: Vec<Vec<f64>>) -> Result<Self> {
        let n = base.len();
        if generators.is_empty() || generators.len() > n {
            return Err(Error::invalid(
                "a flat set needs between 1 and n generators",
            ));
        }
        if generators
            .iter()
            .any(|g| g.len() != n || g.iter().any(|x| !x.is_finite()))
        {
            return Err(Error::invalid(
                "generator dimension mismatch or non-finite entry",
            ));
        }
        if rank(&generators, 1e-12) != generators.len() {
            return Err(Error::invalid("flat set generators are linearly dependent"));
        }
        Ok(FlatSet { base, generators })
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }
}

/// `H^m(F) = sqrt(det(G^T G))`.
pub fn hausdorff_flat(f: &FlatSet) -> f64 {
    gram_measure(&f.generators)
}

/// Projection onto `e_i^perp` with coordinate `i` deleted. The image may
/// have lower rank, in which case its `m`-measure is 0.
pub fn project_flat(f: &FlatSet, i: usize) -> FlatSet {
    let drop = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect()
    };
    FlatSet {
        base: drop(&f.base),
        generators: f.generators.iter().map(|g| drop(g)).collect(),
    }
}
