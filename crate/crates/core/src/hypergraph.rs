//! Weighted uniform hypergraphs and their polynomial form
//!
//! `P(x) = r! * sum_{e in E} w_e * prod_{i in e} x_i`
//!
//! Vertices are 0-based inside the library. The text and JSON formats in
//! [`crate::io`] are 1-based and convert at the boundary.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// One weighted edge; `vertices` is sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub vertices: Vec<usize>,
    pub weight: f64,
}

/// A weighted r-uniform hypergraph on vertices `0..n`.
///
/// Construction validates the instance, so every value of this type has
/// distinct in-range vertices per edge, no duplicate edges, and at least
/// one edge of nonzero weight. Edges are stored in canonical
/// (lexicographic) order, which fixes the summation order of the form.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Edge>,
}

impl WeightedHypergraph {
    /// Builds a hypergraph from 0-based edges, canonicalizing and validating.
    pub fn new(n: usize, r: usize, edges: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        let edges = validate(n, r, edges)?;
        Ok(Self { n, r, edges })
    }

    /// Same as [`WeightedHypergraph::new`] with 1-based vertex labels.
    pub fn from_one_based(n: usize, r: usize, edges: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        let mut shifted = Vec::with_capacity(edges.len());
        for (index, (vs, w)) in edges.into_iter().enumerate() {
            let mut out = Vec::with_capacity(vs.len());
            for v in vs {
                if v == 0 || v > n {
                    return Err(Error::BadEdge {
                        index,
                        reason: format!("vertex {v} outside 1..={n}"),
                    });
                }
                out.push(v - 1);
            }
            shifted.push((out, w));
        }
        Self::new(n, r, shifted)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Uniformity (edge size).
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Copy with every weight negated. Used to turn minimization into
    /// maximization.
    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    /// Copy with every weight multiplied by `c` (`c` must be nonzero).
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c != 0.0 && c.is_finite(), "scale factor must be finite and nonzero");
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { vertices: e.vertices.clone(), weight: e.weight * c })
            .collect();
        Self { n: self.n, r: self.r, edges }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: perm.len() });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| (e.vertices.iter().map(|&v| perm[v]).collect(), e.weight))
            .collect();
        Self::new(self.n, self.r, edges)
    }

    /// Number of edges containing each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in &e.vertices {
                deg[v] += 1;
            }
        }
        deg
    }

    /// `r!` as a float.
    pub fn r_factorial(&self) -> f64 {
        factorial(self.r)
    }

    /// Evaluates the polynomial form at `x`.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        let sum: f64 = self
            .edges
            .iter()
            .map(|e| e.weight * e.vertices.iter().map(|&v| x[v]).product::<f64>())
            .sum();
        Ok(self.r_factorial() * sum)
    }

    /// Gradient of the polynomial form at `x`.
    ///
    /// Component `j` is `r! * sum_{e ∋ j} w_e * prod_{i in e, i != j} x_i`.
    /// Satisfies the Euler identity `<grad P(x), x> = r * P(x)`.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut grad = vec![0.0; self.n];
        self.gradient_into(x, &mut grad);
        Ok(grad)
    }

    /// Unchecked gradient into a caller-owned buffer (hot path of the solver).
    pub(crate) fn gradient_into(&self, x: &[f64], grad: &mut [f64]) {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let rf = self.r_factorial();
        for e in &self.edges {
            let vs = &e.vertices;
            for (pos, &j) in vs.iter().enumerate() {
                let mut prod = e.weight;
                for (q, &i) in vs.iter().enumerate() {
                    if q != pos {
                        prod *= x[i];
                    }
                }
                grad[j] += prod;
            }
        }
        grad.iter_mut().for_each(|g| *g *= rf);
    }

    /// Unchecked evaluation (hot path of the solver).
    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> f64 {
        let mut sum = 0.0;
        for e in &self.edges {
            let mut prod = e.weight;
            for &v in &e.vertices {
                prod *= x[v];
            }
            sum += prod;
        }
        self.r_factorial() * sum
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: x.len() });
        }
        Ok(())
    }
}

/// Checks the hypergraph invariants and returns the canonical edge list.
pub fn validate(n: usize, r: usize, edges: Vec<(Vec<usize>, f64)>) -> Result<Vec<Edge>> {
    if r < 2 {
        return Err(Error::BadArity(format!("uniformity r = {r} must be at least 2")));
    }
    let mut canonical: Vec<Edge> = Vec::with_capacity(edges.len());
    for (index, (mut vs, weight)) in edges.into_iter().enumerate() {
        if vs.len() != r {
            return Err(Error::BadEdge {
                index,
                reason: format!("has {} vertices, expected {r}", vs.len()),
            });
        }
        if !weight.is_finite() {
            return Err(Error::BadEdge { index, reason: format!("weight {weight} is not finite") });
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(Error::BadEdge {
                index,
                reason: format!("vertex {} outside 1..={n}", v + 1),
            });
        }
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::BadEdge {
                index,
                reason: format!("vertex {} repeated", w[0] + 1),
            });
        }
        canonical.push(Edge { vertices: vs, weight });
    }
    let mut seen = HashSet::with_capacity(canonical.len());
    for e in &canonical {
        if !seen.insert(e.vertices.as_slice()) {
            return Err(Error::DuplicateEdge { vertices: e.vertices.clone() });
        }
    }
    if canonical.iter().all(|e| e.weight == 0.0) {
        return Err(Error::EmptyOrZeroWeight);
    }
    canonical.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(canonical)
}

/// `(sum |x_i|^p)^(1/p)`, computed with max-magnitude scaling so large `p`
/// does not overflow.
pub fn lp_norm(x: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::BadP(p, 1.0));
    }
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    if !scale.is_finite() {
        return Err(Error::NonFinite("vector entry is not finite".into()));
    }
    let s: f64 = x.iter().map(|v| (v.abs() / scale).powf(p)).sum();
    Ok(scale * s.powf(1.0 / p))
}

/// A k-way vertex partition. `part_of[v]` is the 0-based part of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub k: usize,
    pub part_of: Vec<usize>,
}

impl PartitionCertificate {
    pub fn new(k: usize, part_of: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("partition needs at least one part".into()));
        }
        if let Some(&bad) = part_of.iter().find(|&&p| p >= k) {
            return Err(Error::Config(format!("part index {} outside 1..={k}", bad + 1)));
        }
        Ok(Self { k, part_of })
    }

    /// One singleton part per vertex.
    pub fn singletons(n: usize) -> Self {
        Self { k: n, part_of: (0..n).collect() }
    }

    /// Vertices of each part, in increasing order.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &p) in self.part_of.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }
}

/// Verifies that no edge has two vertices in the same part.
pub fn check_partition(h: &WeightedHypergraph, cert: &PartitionCertificate) -> Result<()> {
    if cert.part_of.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), actual: cert.part_of.len() });
    }
    let mut seen = vec![usize::MAX; cert.k];
    for (idx, e) in h.edges().iter().enumerate() {
        for &v in &e.vertices {
            let part = cert.part_of[v];
            if seen[part] == idx {
                return Err(Error::NotPartite { edge: e.vertices.clone(), part });
            }
            seen[part] = idx;
        }
    }
    Ok(())
}

pub(crate) fn factorial(r: usize) -> f64 {
    (1..=r).map(|i| i as f64).product()
}
