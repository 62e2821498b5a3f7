//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{
    balanced_partite_hypergraph, BipartiteGraph, Edge, Hypergraph, PartiteHypergraph,
};
use crate::permanent::IntMatrix2D;
use crate::tensor::{BoolTensor, MultiIndex};

fn random_one_factor<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Vec<Edge> {
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    verts
        .chunks(d)
        .map(|c| {
            let mut e = c.to_vec();
            e.sort_unstable();
            e
        })
        .collect()
}

/// Each d-subset kept with probability `density`, plus `planted` random
/// 1-factors so that the instance has at least one 1-factor when `planted > 0`.
pub fn random_hypergraph<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    density: f64,
    planted: usize,
    rng: &mut R,
) -> Result<Hypergraph> {
    if d < 2 || n < d || !n.is_multiple_of(d) {
        return Err(Error::invalid(format!(
            "need 2 <= d <= n with d | n, got n={n}, d={d}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let complete = Hypergraph::complete(n, d)?;
    let mut edges: Vec<Edge> = complete
        .edges()
        .iter()
        .filter(|_| rng.gen_bool(density))
        .cloned()
        .collect();
    for _ in 0..planted {
        edges.extend(random_one_factor(n, d, rng));
    }
    edges.sort();
    edges.dedup();
    Hypergraph::new(n, d, edges)
}

/// A random balanced d-partite hypergraph with parts of size `part_size`.
pub fn random_partite<R: Rng + ?Sized>(
    part_size: usize,
    d: usize,
    density: f64,
    rng: &mut R,
) -> Result<PartiteHypergraph> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let complete = PartiteHypergraph::complete(part_size, d)?;
    let edges = complete
        .graph()
        .edges()
        .iter()
        .filter(|_| rng.gen_bool(density))
        .cloned()
        .collect();
    balanced_partite_hypergraph(part_size, d, edges)
}

/// A d-regular bipartite graph on `n + n` vertices as a union of `d`
/// edge-disjoint random perfect matchings; retried until connected.
pub fn random_regular_bipartite<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    rng: &mut R,
) -> Result<BipartiteGraph> {
    if d == 0 || d > n {
        return Err(Error::invalid(format!(
            "need 1 <= d <= n, got n={n}, d={d}"
        )));
    }
    for _ in 0..10_000 {
        let mut used = vec![vec![false; n]; n];
        let mut pairs = Vec::with_capacity(n * d);
        let mut ok = true;
        'matchings: for _ in 0..d {
            for _ in 0..100 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                if (0..n).all(|x| !used[x][perm[x]]) {
                    for x in 0..n {
                        used[x][perm[x]] = true;
                        pairs.push((x, perm[x]));
                    }
                    continue 'matchings;
                }
            }
            ok = false;
            break;
        }
        if !ok {
            continue;
        }
        let b = BipartiteGraph::from_edges(n, n, &pairs)?;
        if b.is_connected() {
            return Ok(b);
        }
    }
    Err(Error::invalid(format!(
        "failed to sample a connected {d}-regular bipartite graph on {n}+{n} vertices"
    )))
}

/// A random 0/1 tensor with each entry set with probability `density`.
pub fn random_tensor<R: Rng + ?Sized>(
    dim: usize,
    order: usize,
    density: f64,
    rng: &mut R,
) -> Result<BoolTensor> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let total = order
        .checked_pow(dim as u32)
        .filter(|&t| t <= 1 << 22)
        .ok_or_else(|| {
            Error::invalid(format!(
                "tensor with {order}^{dim} entries is too large to sample"
            ))
        })?;
    let mut ones = Vec::new();
    for mut code in 0..total {
        if rng.gen_bool(density) {
            let mut idx = vec![0; dim];
            for c in idx.iter_mut().rev() {
                *c = code % order;
                code /= order;
            }
            ones.push(MultiIndex::new(idx));
        }
    }
    BoolTensor::new(dim, order, ones)
}

/// A k-regular non-negative integer matrix as a sum of `k` random permutation matrices.
pub fn random_regular_matrix<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<IntMatrix2D> {
    if n == 0 {
        return Err(Error::invalid("matrix order must be at least 1"));
    }
    let mut rows = vec![vec![0u64; n]; n];
    for _ in 0..k {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            rows[i][j] += 1;
        }
    }
    IntMatrix2D::new(rows)
}
