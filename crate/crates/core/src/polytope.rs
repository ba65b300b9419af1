//! Products of simplices `Δ^{k_1} × … × Δ^{k_r}`.
//!
//! Facets are `F_{i,j}`: the product with the `j`-th facet of the `i`-th
//! simplex factor. They are ordered factor-major, then by face index, and a
//! vertex is the intersection of all facets except one per factor.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SimplexProduct {
    factor_dims: Vec<usize>,
    offsets: Vec<usize>,
    n: usize,
    m: usize,
}

/// Facet `F_{k_i, j}`; both indices are zero-based here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FacetId {
    pub factor: usize,
    pub face: usize,
}

/// A vertex, stored as the excluded face index of every factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub excluded: Vec<usize>,
}

impl SimplexProduct {
    /// Builds `Δ^{d_1} × … × Δ^{d_s}`, dropping zero-dimensional factors.
    pub fn new(dims: &[usize]) -> Result<Self> {
        let factor_dims: Vec<usize> = dims.iter().copied().filter(|&k| k > 0).collect();
        if factor_dims.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let mut offsets = Vec::with_capacity(factor_dims.len());
        let mut m = 0;
        for &k in &factor_dims {
            offsets.push(m);
            m += k + 1;
        }
        let n = factor_dims.iter().sum();
        Ok(Self { factor_dims, offsets, n, m })
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    /// Number of simplex factors `r`.
    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_facets(&self) -> usize {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        self.factor_dims.iter().map(|k| k + 1).product()
    }

    pub fn facets(&self) -> Vec<FacetId> {
        self.factor_dims
            .iter()
            .enumerate()
            .flat_map(|(factor, &k)| (0..=k).map(move |face| FacetId { factor, face }))
            .collect()
    }

    /// Global (column) index of a facet.
    pub fn facet_index(&self, facet: FacetId) -> usize {
        self.offsets[facet.factor] + facet.face
    }

    pub fn facet_at(&self, index: usize) -> FacetId {
        let factor = match self.offsets.binary_search(&index) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        FacetId { factor, face: index - self.offsets[factor] }
    }

    /// Column indices of the facets of one factor.
    pub fn factor_facets(&self, factor: usize) -> std::ops::Range<usize> {
        let start = self.offsets[factor];
        start..start + self.factor_dims[factor] + 1
    }

    /// Column index of the last facet of each factor.
    pub fn last_facets(&self) -> Vec<usize> {
        (0..self.num_factors()).map(|i| self.factor_facets(i).end - 1).collect()
    }

    /// Vertices in lexicographic order of the excluded faces; the first one
    /// excludes the first facet of every factor.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.num_vertices());
        let mut current = vec![0usize; self.num_factors()];
        loop {
            out.push(Vertex { excluded: current.clone() });
            let mut pos = self.num_factors();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if current[pos] < self.factor_dims[pos] {
                    current[pos] += 1;
                    break;
                }
                current[pos] = 0;
            }
        }
    }

    /// The vertex where all facets except the last of each factor meet.
    pub fn last_vertex(&self) -> Vertex {
        Vertex { excluded: self.factor_dims.clone() }
    }

    /// Column indices of the `n` facets containing `v`, in facet order.
    pub fn vertex_facets(&self, v: &Vertex) -> Vec<usize> {
        debug_assert_eq!(v.excluded.len(), self.num_factors());
        let mut cols = Vec::with_capacity(self.n);
        for (i, &skip) in v.excluded.iter().enumerate() {
            for (face, col) in self.factor_facets(i).enumerate() {
                if face != skip {
                    cols.push(col);
                }
            }
        }
        cols
    }

    /// Orientation of the facet normals at `v` relative to the first vertex.
    ///
    /// In `Δ^k` the normals of the facets through the vertex opposite face `q`,
    /// taken in facet order, differ in orientation from those at the vertex
    /// opposite face 0 by `(-1)^q`.
    pub fn relative_orientation(&self, v: &Vertex) -> i32 {
        if v.excluded.iter().sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for SimplexProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factor_dims.iter().map(|k| format!("Δ^{k}")).collect();
        write!(f, "{}", parts.join("×"))
    }
}

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F[{},{}]", self.factor + 1, self.face + 1)
    }
}
