//! Named hypergraph families and random k-partite instances.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hypergraph::{PartitionCertificate, WeightedHypergraph};
use crate::io::GeneratorInfo;

/// Identifier of the pseudorandom stream used by [`random_kpartite`].
///
/// Seed contract: `ChaCha8Rng::seed_from_u64(seed)` (rand_core 0.6 seed
/// expansion), stream 0. Candidate transversal r-sets are visited with the
/// part combinations in lexicographic order and, within a combination, the
/// vertex tuples in lexicographic order. Each candidate draws one `f64` in
/// `[0,1)` for inclusion and, if included, one `f64` in `[0,1)` mapped to
/// `lo + u * (hi - lo)` for its weight. A pass producing no nonzero weight is
/// repeated on the same stream.
pub const RANDOM_GENERATOR_ID: &str = "chacha8-lex-transversal-v1";

const MAX_REDRAWS: usize = 1000;

/// Parameters of a complete regular k-partite blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlowupSpec {
    pub k: usize,
    pub r: usize,
    pub t: usize,
}

impl BlowupSpec {
    pub fn new(k: usize, r: usize, t: usize) -> Result<Self> {
        check_arity(k, r)?;
        if t == 0 {
            return Err(Error::BadArity("blow-up part size t must be at least 1".into()));
        }
        Ok(Self { k, r, t })
    }
}

fn check_arity(k: usize, r: usize) -> Result<()> {
    if r < 2 || k < r {
        return Err(Error::BadArity(format!("need k >= r >= 2, got k = {k}, r = {r}")));
    }
    Ok(())
}

/// The complete r-graph on `k` vertices, with its singleton partition.
pub fn complete_rgraph(k: usize, r: usize) -> Result<(WeightedHypergraph, PartitionCertificate)> {
    check_arity(k, r)?;
    let edges = (0..k).combinations(r).map(|e| (e, 1.0)).collect();
    Ok((WeightedHypergraph::new(k, r, edges)?, PartitionCertificate::singletons(k)))
}

/// Complete regular k-partite r-graph with parts of size `t`.
///
/// Part `i` holds vertices `i*t .. (i+1)*t`.
pub fn kpartite_blowup(spec: BlowupSpec) -> Result<(WeightedHypergraph, PartitionCertificate)> {
    let BlowupSpec { k, r, t } = BlowupSpec::new(spec.k, spec.r, spec.t)?;
    let sizes = vec![t; k];
    let edges = transversals(&sizes, r).into_iter().map(|e| (e, 1.0)).collect();
    let part_of = (0..k * t).map(|v| v / t).collect();
    Ok((WeightedHypergraph::new(k * t, r, edges)?, PartitionCertificate::new(k, part_of)?))
}

/// The 2-chromatic 4-graph on `2n` vertices: `A = 0..n`, `B = n..2n`, and
/// every 4-set meeting `A` in exactly two vertices is an edge.
pub fn counterexample_4graph(n: usize) -> Result<WeightedHypergraph> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::BadOrder(n));
    }
    let mut edges = Vec::new();
    for a in (0..n).combinations(2) {
        for b in (n..2 * n).combinations(2) {
            edges.push((vec![a[0], a[1], b[0], b[1]], 1.0));
        }
    }
    WeightedHypergraph::new(2 * n, 4, edges)
}

/// The `{A, B}` 2-coloring of [`counterexample_4graph`]; not a k-partite
/// certificate for it.
pub fn counterexample_coloring(n: usize) -> Result<PartitionCertificate> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::BadOrder(n));
    }
    PartitionCertificate::new(2, (0..2 * n).map(|v| usize::from(v >= n)).collect())
}

/// Parameters of [`random_kpartite`].
#[derive(Debug, Clone, PartialEq)]
pub struct RandomKPartite {
    pub k: usize,
    pub r: usize,
    pub part_sizes: Vec<usize>,
    pub edge_density: f64,
    pub weight_range: (f64, f64),
    pub seed: u64,
}

impl RandomKPartite {
    pub fn generator_info(&self) -> GeneratorInfo {
        GeneratorInfo {
            generator: RANDOM_GENERATOR_ID.to_string(),
            seed: self.seed,
            params: json!({
                "k": self.k,
                "r": self.r,
                "part_sizes": self.part_sizes,
                "edge_density": self.edge_density,
                "weight_range": [self.weight_range.0, self.weight_range.1],
            }),
        }
    }
}

/// Random weighted k-partite r-graph. Deterministic in `spec.seed`; see
/// [`RANDOM_GENERATOR_ID`] for the stream contract.
pub fn random_kpartite(spec: &RandomKPartite) -> Result<(WeightedHypergraph, PartitionCertificate)> {
    let RandomKPartite { k, r, ref part_sizes, edge_density, weight_range: (lo, hi), seed } = *spec;
    check_arity(k, r)?;
    if part_sizes.len() != k {
        return Err(Error::BadArity(format!("{} part sizes given for k = {k}", part_sizes.len())));
    }
    if part_sizes.contains(&0) {
        return Err(Error::BadArity("part sizes must be positive".into()));
    }
    if !(edge_density > 0.0 && edge_density <= 1.0) {
        return Err(Error::BadDensity(edge_density));
    }
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::Config(format!("bad weight range [{lo}, {hi}]")));
    }
    if lo == 0.0 && hi == 0.0 {
        return Err(Error::EmptyOrZeroWeight);
    }

    let candidates = transversals(part_sizes, r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let mut edges = Vec::new();
        for cand in &candidates {
            let include: f64 = rng.gen();
            if include < edge_density {
                let u: f64 = rng.gen();
                edges.push((cand.clone(), lo + u * (hi - lo)));
            }
        }
        if edges.iter().any(|(_, w)| *w != 0.0) {
            let n = part_sizes.iter().sum();
            let part_of = part_sizes
                .iter()
                .enumerate()
                .flat_map(|(p, &s)| std::iter::repeat(p).take(s))
                .collect();
            return Ok((WeightedHypergraph::new(n, r, edges)?, PartitionCertificate::new(k, part_of)?));
        }
    }
    Err(Error::EmptyOrZeroWeight)
}

/// All r-sets with at most one vertex per part, parts laid out
/// consecutively, in the enumeration order documented on
/// [`RANDOM_GENERATOR_ID`].
fn transversals(part_sizes: &[usize], r: usize) -> Vec<Vec<usize>> {
    let offsets: Vec<usize> = part_sizes
        .iter()
        .scan(0, |acc, &s| {
            let start = *acc;
            *acc += s;
            Some(start)
        })
        .collect();
    let mut out = Vec::new();
    for parts in (0..part_sizes.len()).combinations(r) {
        let ranges = parts.iter().map(|&p| offsets[p]..offsets[p] + part_sizes[p]);
        out.extend(ranges.multi_cartesian_product());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::check_partition;

    #[test]
    fn complete_graph_counts() {
        assert_eq!(complete_rgraph(3, 2).unwrap().0.edges().len(), 3);
        let (k44, _) = complete_rgraph(4, 4).unwrap();
        assert_eq!(k44.edges()[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(complete_rgraph(5, 3).unwrap().0.edges().len(), 10);
        assert!(matches!(complete_rgraph(2, 3), Err(Error::BadArity(_))));
    }

    #[test]
    fn blowup_counts_and_regularity() {
        let (g, c) = kpartite_blowup(BlowupSpec { k: 3, r: 2, t: 2 }).unwrap();
        assert_eq!((g.n(), g.edges().len()), (6, 12));
        check_partition(&g, &c).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 4));

        let (k3, _) = kpartite_blowup(BlowupSpec { k: 3, r: 2, t: 1 }).unwrap();
        assert_eq!(k3, complete_rgraph(3, 2).unwrap().0);

        let (g, c) = kpartite_blowup(BlowupSpec { k: 4, r: 4, t: 2 }).unwrap();
        assert_eq!(g.edges().len(), 16);
        check_partition(&g, &c).unwrap();
        assert!(BlowupSpec::new(3, 2, 0).is_err());
    }

    #[test]
    fn counterexample_counts() {
        let g2 = counterexample_4graph(2).unwrap();
        assert_eq!(g2.edges().len(), 1);
        assert_eq!(g2.edges()[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(counterexample_4graph(4).unwrap().edges().len(), 36);
        assert_eq!(counterexample_4graph(3), Err(Error::BadOrder(3)));
        assert_eq!(counterexample_4graph(0), Err(Error::BadOrder(0)));
    }

    #[test]
    fn counterexample_is_two_chromatic_but_not_bipartite() {
        for n in [2, 4, 6] {
            let g = counterexample_4graph(n).unwrap();
            let col = counterexample_coloring(n).unwrap();
            for e in g.edges() {
                let in_a = e.vertices.iter().filter(|&&v| col.part_of[v] == 0).count();
                assert_eq!(in_a, 2, "edge must meet both colour classes");
            }
            assert!(matches!(check_partition(&g, &col), Err(Error::NotPartite { .. })));
        }
    }

    fn spec(k: usize, r: usize, sizes: Vec<usize>, seed: u64) -> RandomKPartite {
        RandomKPartite {
            k,
            r,
            part_sizes: sizes,
            edge_density: 1.0,
            weight_range: (1.0, 1.0),
            seed,
        }
    }

    #[test]
    fn random_full_density_is_complete() {
        let (g, _) = random_kpartite(&spec(4, 4, vec![1; 4], 0)).unwrap();
        assert_eq!(g, complete_rgraph(4, 4).unwrap().0);
        let (g, c) = random_kpartite(&spec(4, 2, vec![2; 4], 0)).unwrap();
        assert_eq!(g.edges().len(), 24);
        check_partition(&g, &c).unwrap();
    }

    #[test]
    fn random_is_deterministic_and_partite() {
        let mut s = spec(5, 4, vec![2, 3, 1, 2, 3], 42);
        s.edge_density = 0.4;
        s.weight_range = (-2.0, 2.0);
        let (a, ca) = random_kpartite(&s).unwrap();
        let (b, _) = random_kpartite(&s).unwrap();
        assert_eq!(a, b);
        check_partition(&a, &ca).unwrap();
        s.seed = 43;
        assert_ne!(random_kpartite(&s).unwrap().0, a);
    }

    #[test]
    fn random_rejects_bad_inputs() {
        let mut s = spec(4, 2, vec![1; 4], 0);
        s.edge_density = 0.0;
        assert_eq!(random_kpartite(&s), Err(Error::BadDensity(0.0)));
        s.edge_density = 1.5;
        assert!(matches!(random_kpartite(&s), Err(Error::BadDensity(_))));
        assert!(matches!(random_kpartite(&spec(2, 3, vec![1, 1], 0)), Err(Error::BadArity(_))));
        assert!(matches!(random_kpartite(&spec(3, 2, vec![1, 1], 0)), Err(Error::BadArity(_))));
        let mut z = spec(3, 2, vec![1; 3], 0);
        z.weight_range = (0.0, 0.0);
        assert_eq!(random_kpartite(&z), Err(Error::EmptyOrZeroWeight));
    }
}
