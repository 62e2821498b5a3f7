//! Uniform hypergraphs with edge multiplicities, their matrices and their
//! bipartite (vertex–edge incidence) representation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::factorial;
use crate::tensor::{BoolTensor, MultiIndex};

/// A hyperedge: `d` distinct vertices in ascending order.
pub type Edge = Vec<usize>;

/// A d-uniform hypergraph on vertices `0..n`.
///
/// Edges are kept sorted, so a repeated edge appears in adjacent positions and
/// two hypergraphs with the same edge multiset are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypergraph {
    n: usize,
    d: usize,
    edges: Vec<Edge>,
}

impl Hypergraph {
    pub fn new(n: usize, d: usize, edges: Vec<Edge>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("uniformity must be at least 1"));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != d {
                return Err(Error::invalid(format!(
                    "hyperedge {e:?} has {} vertices, expected {d}",
                    e.len()
                )));
            }
            if let Some(v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::invalid(format!(
                    "hyperedge {e:?} has vertex {v} outside 0..{n}"
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("hyperedge {e:?} repeats a vertex")));
            }
            canon.push(e);
        }
        canon.sort();
        Ok(Hypergraph { n, d, edges: canon })
    }

    /// All `d`-subsets of `0..n`.
    pub fn complete(n: usize, d: usize) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::invalid(format!(
                "complete hypergraph needs 1 <= d <= n, got n={n}, d={d}"
            )));
        }
        let mut edges = Vec::new();
        let mut comb: Vec<usize> = (0..d).collect();
        loop {
            edges.push(comb.clone());
            let Some(i) = (0..d).rev().find(|&i| comb[i] < n - d + i) else {
                break;
            };
            comb[i] += 1;
            for j in i + 1..d {
                comb[j] = comb[j - 1] + 1;
            }
        }
        Hypergraph::new(n, d, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.d
    }

    /// Edge instances in canonical order, copies adjacent.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Distinct edges with their multiplicities, in canonical order.
    pub fn multiplicities(&self) -> Vec<(Edge, usize)> {
        let mut out: Vec<(Edge, usize)> = Vec::new();
        for e in &self.edges {
            match out.last_mut() {
                Some((last, k)) if last == e => *k += 1,
                _ => out.push((e.clone(), 1)),
            }
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] != w[1])
    }

    /// Degree of every vertex, counting each edge copy.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<u64> {
        let deg = self.degrees();
        let k = *deg.first()?;
        deg.iter().all(|&x| x == k).then_some(k)
    }

    /// The d-dimensional (0,1)-matrix with a one at every ordering of every edge.
    pub fn adjacency_tensor(&self) -> Result<BoolTensor> {
        if !self.is_simple() {
            return Err(Error::invalid(
                "adjacency matrix is defined for simple hypergraphs only",
            ));
        }
        if self.d < 2 {
            return Err(Error::invalid(
                "adjacency matrix needs uniformity at least 2",
            ));
        }
        let mut ones = Vec::with_capacity(self.edges.len() * factorial_usize(self.d));
        for e in &self.edges {
            for_each_permutation(e, |p| ones.push(MultiIndex::new(p.to_vec())));
        }
        BoolTensor::new(self.d, self.n, ones)
    }

    /// `|X| x |W|` vertex–edge incidence matrix, columns in canonical edge order.
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        let mut b = vec![vec![0u8; self.edges.len()]; self.n];
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e {
                b[v][j] = 1;
            }
        }
        b
    }

    pub fn bipartite_representation(&self) -> BipartiteGraph {
        BipartiteGraph {
            left: self.n,
            right_adj: self.edges.clone(),
            right_labels: Some(self.edges.clone()),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of the connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            for w in e.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.groups()
    }

    /// The sub-hypergraph on `vertices` (sorted), relabeled to `0..vertices.len()`.
    pub fn induced(&self, vertices: &[usize]) -> Hypergraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| index[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| index[v]).collect())
            .collect();
        Hypergraph::new(vertices.len(), self.d, edges).expect("induced edges stay valid")
    }

    /// Same edge multiset with each multiplicity collapsed to one.
    pub fn underlying_simple(&self) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.dedup();
        Hypergraph {
            n: self.n,
            d: self.d,
            edges,
        }
    }

    /// Writes the text format `"n m d"` followed by one edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.edges.len(), self.d);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = crate::format::data_lines(s);
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header line \"n m d\"".into(),
        })?;
        let header = crate::format::parse_numbers(hline, header)?;
        let [n, m, d] = header[..] else {
            return Err(Error::Parse {
                line: hline,
                message: format!("header must be \"n m d\", found {} fields", header.len()),
            });
        };
        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines {
            let e = crate::format::parse_numbers(lineno, line)?;
            let bad = e.len() != d
                || e.iter().any(|&v| v >= n)
                || (1..e.len()).any(|i| e[..i].contains(&e[i]));
            if bad {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("{e:?} is not a set of {d} distinct vertices in 0..{n}"),
                });
            }
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Hypergraph::new(n, d, edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A k-balanced d-partite hypergraph; vertex `v` lies in part `v / k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteHypergraph {
    graph: Hypergraph,
    part_size: usize,
}

impl PartiteHypergraph {
    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn part_size(&self) -> usize {
        self.part_size
    }

    pub fn parts(&self) -> usize {
        self.graph.d
    }

    pub fn part_of(&self, v: usize) -> usize {
        v / self.part_size
    }

    /// Every cross-part edge: `k^d` of them.
    pub fn complete(part_size: usize, d: usize) -> Result<Self> {
        let mut edges = Vec::new();
        let mut choice = vec![0usize; d];
        if part_size > 0 {
            loop {
                edges.push(
                    choice
                        .iter()
                        .enumerate()
                        .map(|(p, &c)| p * part_size + c)
                        .collect(),
                );
                let Some(i) = (0..d).rev().find(|&i| choice[i] + 1 < part_size) else {
                    break;
                };
                choice[i] += 1;
                for c in &mut choice[i + 1..] {
                    *c = 0;
                }
            }
        }
        balanced_partite_hypergraph(part_size, d, edges)
    }
}

/// Validates that every edge meets each of the `d` parts of size `part_size` once.
pub fn balanced_partite_hypergraph(
    part_size: usize,
    d: usize,
    edges: Vec<Edge>,
) -> Result<PartiteHypergraph> {
    if part_size == 0 {
        return Err(Error::invalid("parts must be non-empty"));
    }
    let graph = Hypergraph::new(part_size * d, d, edges)?;
    for e in graph.edges() {
        let mut parts: Vec<usize> = e.iter().map(|&v| v / part_size).collect();
        parts.dedup();
        if parts.len() != d {
            return Err(Error::invalid(format!(
                "hyperedge {e:?} does not take exactly one vertex from each of the {d} parts"
            )));
        }
    }
    Ok(PartiteHypergraph { graph, part_size })
}

/// Bipartite graph with left part `0..left` and right part `0..right_adj.len()`.
///
/// Right vertex `y` is adjacent to the sorted left vertices `right_adj[y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right_adj: Vec<Vec<usize>>,
    /// Originating hyperedge of each right vertex, when built from a hypergraph.
    right_labels: Option<Vec<Edge>>,
}

impl BipartiteGraph {
    pub fn from_edges(left: usize, right: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut right_adj = vec![Vec::new(); right];
        for &(x, y) in pairs {
            if x >= left || y >= right {
                return Err(Error::invalid(format!(
                    "edge ({x}, {y}) outside the {left}x{right} parts"
                )));
            }
            right_adj[y].push(x);
        }
        for adj in &mut right_adj {
            adj.sort_unstable();
            if adj.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("parallel edges are not allowed"));
            }
        }
        Ok(BipartiteGraph {
            left,
            right_adj,
            right_labels: None,
        })
    }

    pub fn complete(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right_adj: vec![(0..left).collect(); right],
            right_labels: None,
        }
    }

    /// The even cycle on `2 * half` vertices: `y_i ~ x_i, x_{i+1}`.
    pub fn cycle(half: usize) -> Result<Self> {
        if half < 2 {
            return Err(Error::invalid(
                "a simple bipartite cycle needs at least 4 vertices",
            ));
        }
        let pairs: Vec<(usize, usize)> = (0..half)
            .flat_map(|i| [(i, i), ((i + 1) % half, i)])
            .collect();
        BipartiteGraph::from_edges(half, half, &pairs)
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right_adj.len()
    }

    pub fn right_neighbors(&self, y: usize) -> &[usize] {
        &self.right_adj[y]
    }

    pub fn right_labels(&self) -> Option<&[Edge]> {
        self.right_labels.as_deref()
    }

    pub fn left_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.left];
        for (y, xs) in self.right_adj.iter().enumerate() {
            for &x in xs {
                adj[x].push(y);
            }
        }
        adj
    }

    /// All `(x, y)` pairs ordered by right vertex.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.right_adj
            .iter()
            .enumerate()
            .flat_map(|(y, xs)| xs.iter().map(move |&x| (x, y)))
            .collect()
    }

    /// Biadjacency matrix, rows = left part.
    pub fn biadjacency(&self) -> Vec<Vec<u8>> {
        let mut b = vec![vec![0u8; self.right_size()]; self.left];
        for (x, y) in self.edges() {
            b[x][y] = 1;
        }
        b
    }

    /// `Some(k)` when every vertex on both sides has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.right_adj.first()?.len();
        let right_ok = self.right_adj.iter().all(|a| a.len() == k);
        let left_ok = self.left_neighbors().iter().all(|a| a.len() == k);
        (right_ok && left_ok).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.left + self.right_size());
        for (x, y) in self.edges() {
            uf.union(x, self.left + y);
        }
        uf.groups().len() <= 1
    }
}

impl BipartiteGraph {
    /// Writes the text format `"left right m"` followed by one `x y` pair per line.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {} {}\n", self.left, self.right_size(), edges.len());
        for (x, y) in edges {
            out.push_str(&format!("{x} {y}\n"));
        }
        out
    }
}

impl FromStr for BipartiteGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = crate::format::data_lines(s);
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header line \"left right m\"".into(),
        })?;
        let header = crate::format::parse_numbers(hline, header)?;
        let [left, right, m] = header[..] else {
            return Err(Error::Parse {
                line: hline,
                message: format!(
                    "header must be \"left right m\", found {} fields",
                    header.len()
                ),
            });
        };
        let mut pairs = Vec::with_capacity(m);
        for (lineno, line) in lines {
            match crate::format::parse_numbers(lineno, line)?[..] {
                [x, y] if x < left && y < right => pairs.push((x, y)),
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("expected \"x y\" with x < {left} and y < {right}"),
                    })
                }
            }
        }
        if pairs.len() != m {
            return Err(Error::Parse {
                line: hline,
                message: format!("header announces {m} edges, found {}", pairs.len()),
            });
        }
        BipartiteGraph::from_edges(left, right, &pairs)
    }
}

fn factorial_usize(d: usize) -> usize {
    (1..=d).product()
}

/// Calls `f` on every ordering of `items`, in lexicographic order of positions.
pub(crate) fn for_each_permutation(items: &[usize], mut f: impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == items.len() {
            f(cur);
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                cur.push(items[i]);
                rec(items, used, cur, f);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(
        items,
        &mut vec![false; items.len()],
        &mut Vec::with_capacity(items.len()),
        &mut f,
    );
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.parent.len() {
            let r = self.find(v);
            by_root.entry(r).or_default().push(v);
        }
        by_root.into_values().collect()
    }
}

/// `prod_i l_i!` over the multiplicities `l_i` of the distinct edges.
pub fn multiplicity_product(g: &Hypergraph) -> num_bigint::BigUint {
    g.multiplicities()
        .into_iter()
        .fold(num_bigint::BigUint::from(1u32), |acc, (_, l)| {
            acc * factorial(l as u64)
        })
}
