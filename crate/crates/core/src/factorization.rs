//! 1-factors, 1-factorizations, proper orientations, proper edge colorings and
//! proper decompositions.
//!
//! Hypergraphs may carry repeated edges. A 1-factor is a set of edge *values*;
//! copies of an edge are interchangeable, and a factorization uses every copy
//! exactly once. Orientations follow the same multiset convention, so two
//! copies of one edge oriented in swapped ways give a single orientation.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{for_each_permutation, BipartiteGraph, Edge, Hypergraph};
use crate::numeric::factorial;
use crate::search::{FastMap, NodeMeter, SearchConfig};
use crate::tensor::{Diagonal, MultiIndex};

pub use crate::hypergraph::multiplicity_product;

/// A set of pairwise disjoint edges covering every vertex once, sorted.
pub type OneFactor = Vec<Edge>;

/// Distinct edges of a hypergraph as bitmasks, with per-vertex candidate lists.
struct CoverIndex {
    edges: Vec<Edge>,
    masks: Vec<u64>,
    mult: Vec<usize>,
    /// Distinct-edge indices whose least vertex is `v`.
    by_min: Vec<Vec<usize>>,
    full: u64,
}

impl CoverIndex {
    fn new(g: &Hypergraph) -> Result<Self> {
        let n = g.vertex_count();
        if n > 64 {
            return Err(Error::invalid(format!(
                "exact-cover search supports at most 64 vertices, got {n}"
            )));
        }
        let mut idx = CoverIndex {
            edges: Vec::new(),
            masks: Vec::new(),
            mult: Vec::new(),
            by_min: vec![Vec::new(); n],
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        };
        for (e, l) in g.multiplicities() {
            idx.by_min[e[0]].push(idx.edges.len());
            idx.masks.push(e.iter().fold(0, |m, &v| m | 1 << v));
            idx.edges.push(e);
            idx.mult.push(l);
        }
        Ok(idx)
    }

    fn factor(&self, chosen: &[usize]) -> OneFactor {
        chosen.iter().map(|&i| self.edges[i].clone()).collect()
    }

    /// Visits every exact cover of the uncovered vertices by edges with
    /// `avail[i] > 0`, extending `chosen`. Lowest uncovered vertex first.
    fn for_each_cover(
        &self,
        covered: u64,
        avail: &[usize],
        chosen: &mut Vec<usize>,
        meter: &NodeMeter,
        f: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if covered == self.full {
            return f(chosen);
        }
        meter.tick()?;
        let v = (!covered).trailing_zeros() as usize;
        for &i in &self.by_min[v] {
            if avail[i] > 0 && self.masks[i] & covered == 0 {
                chosen.push(i);
                self.for_each_cover(covered | self.masks[i], avail, chosen, meter, f)?;
                chosen.pop();
            }
        }
        Ok(())
    }

    fn count_covers(
        &self,
        covered: u64,
        meter: &NodeMeter,
        memo: &mut HashMap<u64, BigUint>,
    ) -> Result<BigUint> {
        if covered == self.full {
            return Ok(BigUint::one());
        }
        if let Some(v) = memo.get(&covered) {
            return Ok(v.clone());
        }
        meter.tick()?;
        let v = (!covered).trailing_zeros() as usize;
        let mut total = BigUint::zero();
        for &i in &self.by_min[v] {
            if self.masks[i] & covered == 0 {
                total += self.count_covers(covered | self.masks[i], meter, memo)?;
            }
        }
        memo.insert(covered, total.clone());
        Ok(total)
    }
}

fn divisible(g: &Hypergraph) -> bool {
    g.vertex_count().is_multiple_of(g.uniformity())
}

/// Every 1-factor of `g`, by exact cover over vertices in ascending order.
pub fn enumerate_one_factors(g: &Hypergraph, cfg: &SearchConfig) -> Result<Vec<OneFactor>> {
    if !divisible(g) {
        return Ok(Vec::new());
    }
    let idx = CoverIndex::new(g)?;
    let meter = cfg.meter();
    let mut out = Vec::new();
    idx.for_each_cover(0, &idx.mult, &mut Vec::new(), &meter, &mut |c| {
        out.push(idx.factor(c));
        Ok(())
    })?;
    Ok(out)
}

/// Number of 1-factors, without materializing them.
pub fn count_one_factors(g: &Hypergraph, cfg: &SearchConfig) -> Result<BigUint> {
    if !divisible(g) {
        return Ok(BigUint::zero());
    }
    let idx = CoverIndex::new(g)?;
    idx.count_covers(0, &cfg.meter(), &mut HashMap::new())
}

/// Ordered and unordered 1-factorization counts of one hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCount {
    /// Sequences of 1-factors (the ordered convention).
    pub ordered: BigUint,
    /// Multisets of 1-factors.
    pub unordered: BigUint,
    /// Number of 1-factors in each factorization, the common vertex degree.
    pub factors: usize,
}

/// Counts 1-factorizations by enumerating factor multisets in canonical order.
///
/// Each multiset is visited once as a non-decreasing sequence whose next factor
/// always contains the least remaining edge; it contributes `t! / prod m_j!`
/// ordered factorizations, `m_j` being the multiplicities of equal factors.
pub fn count_factorizations(g: &Hypergraph, cfg: &SearchConfig) -> Result<FactorizationCount> {
    let zero = |factors| FactorizationCount {
        ordered: BigUint::zero(),
        unordered: BigUint::zero(),
        factors,
    };
    if g.edge_count() == 0 {
        return Ok(FactorizationCount {
            ordered: BigUint::one(),
            unordered: BigUint::one(),
            factors: 0,
        });
    }
    let Some(t) = g.regular_degree() else {
        return Ok(zero(0));
    };
    let t = t as usize;
    if !divisible(g) {
        return Ok(zero(t));
    }
    let idx = CoverIndex::new(g)?;
    let meter = cfg.meter();
    let t_fact = factorial(t as u64);
    let mut ordered = BigUint::zero();
    let mut unordered = BigUint::zero();
    let mut avail = idx.mult.clone();
    let mut seq: Vec<Vec<usize>> = Vec::with_capacity(t);
    factorization_rec(&idx, &mut avail, &mut seq, &meter, &mut |seq| {
        unordered += 1u32;
        let mut denom = BigUint::one();
        let mut run = 1u64;
        for w in seq.windows(2) {
            if w[0] == w[1] {
                run += 1;
                denom *= run;
            } else {
                run = 1;
            }
        }
        ordered += &t_fact / denom;
    })?;
    Ok(FactorizationCount {
        ordered,
        unordered,
        factors: t,
    })
}

fn factorization_rec(
    idx: &CoverIndex,
    avail: &mut Vec<usize>,
    seq: &mut Vec<Vec<usize>>,
    meter: &NodeMeter,
    leaf: &mut dyn FnMut(&[Vec<usize>]),
) -> Result<()> {
    let Some(first) = avail.iter().position(|&a| a > 0) else {
        leaf(seq);
        return Ok(());
    };
    let start = idx.masks[first];
    let mut candidates = Vec::new();
    let snapshot = avail.clone();
    idx.for_each_cover(start, &snapshot, &mut vec![first], meter, &mut |c| {
        let mut f = c.to_vec();
        f.sort_unstable();
        candidates.push(f);
        Ok(())
    })?;
    for f in candidates {
        if seq.last().is_some_and(|prev| &f < prev) {
            continue;
        }
        for &i in &f {
            avail[i] -= 1;
        }
        seq.push(f);
        factorization_rec(idx, avail, seq, meter, leaf)?;
        let f = seq.pop().expect("pushed above");
        for &i in &f {
            avail[i] += 1;
        }
    }
    Ok(())
}

/// All ordered d-tuples of 1-factors of a simple hypergraph, repetition allowed.
pub fn d_tuples_of_factors(g: &Hypergraph, cfg: &SearchConfig) -> Result<DTuples> {
    if !g.is_simple() {
        return Err(Error::precondition(
            "d-tuples of 1-factors are taken over simple hypergraphs",
        ));
    }
    let factors = enumerate_one_factors(g, cfg)?;
    let d = g.uniformity();
    let next = if factors.is_empty() {
        None
    } else {
        Some(vec![0; d])
    };
    Ok(DTuples { factors, next })
}

/// Iterator over `factors^d` in lexicographic order of factor indices.
#[derive(Debug, Clone)]
pub struct DTuples {
    factors: Vec<OneFactor>,
    next: Option<Vec<usize>>,
}

impl DTuples {
    pub fn factors(&self) -> &[OneFactor] {
        &self.factors
    }
}

impl Iterator for DTuples {
    type Item = Vec<OneFactor>;

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.next.take()?;
        let item = cur.iter().map(|&i| self.factors[i].clone()).collect();
        let mut succ = cur;
        if let Some(pos) = (0..succ.len())
            .rev()
            .find(|&p| succ[p] + 1 < self.factors.len())
        {
            succ[pos] += 1;
            for s in &mut succ[pos + 1..] {
                *s = 0;
            }
            self.next = Some(succ);
        }
        Some(item)
    }
}

/// The multiset union of a tuple of 1-factors on `n` vertices.
pub fn d_factor_of_tuple(tuple: &[OneFactor], n: usize) -> Result<Hypergraph> {
    let d = tuple
        .iter()
        .flat_map(|f| f.first())
        .map(Vec::len)
        .next()
        .ok_or_else(|| Error::invalid("tuple has no edges"))?;
    for f in tuple {
        let mut seen = vec![false; n];
        for e in f {
            for &v in e {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::invalid(format!(
                        "{f:?} is not a 1-factor on {n} vertices"
                    )));
                }
            }
        }
        if seen.contains(&false) {
            return Err(Error::invalid(format!(
                "{f:?} does not cover all {n} vertices"
            )));
        }
    }
    Hypergraph::new(n, d, tuple.iter().flatten().cloned().collect())
}

/// A distinct d-factor arising from d-tuples of 1-factors, with its class size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DFactorClass {
    pub factor: Hypergraph,
    /// Number of d-tuples whose union is `factor`.
    pub tuples: BigUint,
}

/// Groups all d-tuples of 1-factors of `g` by the d-factor they induce.
///
/// Walks factor-index multisets rather than tuples: a multiset with
/// multiplicities `m_j` stands for `d! / prod m_j!` tuples with the same union.
/// `limit` caps the number of distinct classes returned.
pub fn d_factor_classes(
    g: &Hypergraph,
    cfg: &SearchConfig,
    limit: Option<usize>,
) -> Result<Vec<DFactorClass>> {
    if !g.is_simple() {
        return Err(Error::precondition(
            "d-tuples of 1-factors are taken over simple hypergraphs",
        ));
    }
    let factors = enumerate_one_factors(g, cfg)?;
    let d = g.uniformity();
    let mut classes: BTreeMap<Hypergraph, BigUint> = BTreeMap::new();
    if factors.is_empty() {
        return Ok(Vec::new());
    }
    let d_fact = factorial(d as u64);
    let mut combo = vec![0usize; d];
    loop {
        let tuple: Vec<OneFactor> = combo.iter().map(|&i| factors[i].clone()).collect();
        let f = d_factor_of_tuple(&tuple, g.vertex_count())?;
        let full = limit.is_some_and(|l| classes.len() >= l) && !classes.contains_key(&f);
        if !full {
            let mut denom = BigUint::one();
            let mut run = 1u64;
            for w in combo.windows(2) {
                if w[0] == w[1] {
                    run += 1;
                    denom *= run;
                } else {
                    run = 1;
                }
            }
            *classes.entry(f).or_default() += &d_fact / denom;
        }
        let Some(pos) = (0..d).rev().find(|&p| combo[p] + 1 < factors.len()) else {
            break;
        };
        combo[pos] += 1;
        let v = combo[pos];
        for c in &mut combo[pos + 1..] {
            *c = v;
        }
    }
    Ok(classes
        .into_iter()
        .map(|(factor, tuples)| DFactorClass { factor, tuples })
        .collect())
}

/// An orientation: one vertex ordering per edge copy, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    n: usize,
    tuples: Vec<Vec<usize>>,
}

impl Orientation {
    pub fn new(n: usize, mut tuples: Vec<Vec<usize>>) -> Result<Self> {
        let d = tuples.first().map_or(0, Vec::len);
        for t in &tuples {
            let distinct = (1..t.len()).all(|i| !t[..i].contains(&t[i]));
            if t.len() != d || d == 0 || !distinct || t.iter().any(|&v| v >= n) {
                return Err(Error::invalid(format!(
                    "{t:?} is not an ordering of {d} distinct vertices in 0..{n}"
                )));
            }
        }
        tuples.sort();
        Ok(Orientation { n, tuples })
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// No vertex occupies the same position in two different oriented edges.
    pub fn is_proper(&self) -> bool {
        let d = self.tuples.first().map_or(0, Vec::len);
        (0..d).all(|p| {
            let mut seen = vec![false; self.n];
            self.tuples
                .iter()
                .all(|t| !std::mem::replace(&mut seen[t[p]], true))
        })
    }

    /// The unordered edge multiset being oriented.
    pub fn underlying(&self) -> Result<Hypergraph> {
        let d = self.tuples.first().map_or(1, Vec::len);
        Hypergraph::new(self.n, d, self.tuples.clone())
    }
}

/// Per distinct edge: its multiplicity and the bitmask/tuple of each ordering.
struct OrientIndex {
    d: usize,
    edges: Vec<(usize, Vec<Vec<usize>>)>,
}

impl OrientIndex {
    fn new(f: &Hypergraph) -> Result<Self> {
        if f.vertex_count() > 64 {
            return Err(Error::invalid(
                "orientation search supports at most 64 vertices",
            ));
        }
        let edges = f
            .multiplicities()
            .into_iter()
            .map(|(e, l)| {
                let mut perms = Vec::new();
                for_each_permutation(&e, |p| perms.push(p.to_vec()));
                (l, perms)
            })
            .collect();
        Ok(OrientIndex {
            d: f.uniformity(),
            edges,
        })
    }

    fn fits(&self, pos: &[u64], perm: &[usize]) -> bool {
        perm.iter()
            .enumerate()
            .all(|(p, &v)| pos[p] & (1 << v) == 0)
    }

    fn place(pos: &mut [u64], perm: &[usize]) {
        for (p, &v) in perm.iter().enumerate() {
            pos[p] ^= 1 << v;
        }
    }

    /// Chooses `left` more orderings of edge `e`, with indices at least `from`.
    fn visit(
        &self,
        e: usize,
        left: usize,
        from: usize,
        pos: &mut Vec<u64>,
        cur: &mut Vec<Vec<usize>>,
        meter: &NodeMeter,
        f: &mut dyn FnMut(&[Vec<usize>]),
    ) -> Result<()> {
        if e == self.edges.len() {
            f(cur);
            return Ok(());
        }
        if left == 0 {
            let next_left = self.edges.get(e + 1).map_or(0, |x| x.0);
            return self.visit(e + 1, next_left, 0, pos, cur, meter, f);
        }
        meter.tick()?;
        let perms = &self.edges[e].1;
        for k in from..perms.len() {
            if self.fits(pos, &perms[k]) {
                Self::place(pos, &perms[k]);
                cur.push(perms[k].clone());
                self.visit(e, left - 1, k + 1, pos, cur, meter, f)?;
                cur.pop();
                Self::place(pos, &perms[k]);
            }
        }
        Ok(())
    }

    fn count(
        &self,
        e: usize,
        left: usize,
        from: usize,
        pos: &mut Vec<u64>,
        meter: &NodeMeter,
        memo: &mut HashMap<(usize, Vec<u64>), BigUint>,
    ) -> Result<BigUint> {
        if e == self.edges.len() {
            return Ok(BigUint::one());
        }
        if left == 0 {
            let next_left = self.edges.get(e + 1).map_or(0, |x| x.0);
            let key = (e + 1, pos.clone());
            if let Some(v) = memo.get(&key) {
                return Ok(v.clone());
            }
            let v = self.count(e + 1, next_left, 0, pos, meter, memo)?;
            memo.insert(key, v.clone());
            return Ok(v);
        }
        meter.tick()?;
        let perms = &self.edges[e].1;
        let mut total = BigUint::zero();
        for k in from..perms.len() {
            if self.fits(pos, &perms[k]) {
                Self::place(pos, &perms[k]);
                total += self.count(e, left - 1, k + 1, pos, meter, memo)?;
                Self::place(pos, &perms[k]);
            }
        }
        Ok(total)
    }
}

/// Visits every proper orientation of `f` (copies of an edge indistinguishable).
pub fn for_each_proper_orientation(
    f: &Hypergraph,
    cfg: &SearchConfig,
    visit: &mut dyn FnMut(&Orientation),
) -> Result<()> {
    let idx = OrientIndex::new(f)?;
    let meter = cfg.meter();
    let n = f.vertex_count();
    let first = idx.edges.first().map_or(0, |x| x.0);
    idx.visit(
        0,
        first,
        0,
        &mut vec![0; idx.d],
        &mut Vec::new(),
        &meter,
        &mut |tuples| {
            let o = Orientation::new(n, tuples.to_vec()).expect("orderings of valid edges");
            visit(&o);
        },
    )
}

pub fn count_proper_orientations(f: &Hypergraph, cfg: &SearchConfig) -> Result<BigUint> {
    let idx = OrientIndex::new(f)?;
    if let Some(packed) = PackedOrient::plan(&idx, f.vertex_count()) {
        return packed
            .count(0, 0, &cfg.meter(), &mut FastMap::default())
            .map(BigUint::from);
    }
    let first = idx.edges.first().map_or(0, |x| x.0);
    idx.count(
        0,
        first,
        0,
        &mut vec![0; idx.d],
        &cfg.meter(),
        &mut HashMap::new(),
    )
}

/// Orientation counting with every (vertex, position) slot packed into one
/// `u128`, used when `n * d <= 128` and `d!^edges` fits in `u128`.
struct PackedOrient {
    /// Per distinct edge: multiplicity and the slot mask of each ordering.
    edges: Vec<(usize, Vec<u128>)>,
}

impl PackedOrient {
    fn plan(idx: &OrientIndex, n: usize) -> Option<Self> {
        if n * idx.d > 128 {
            return None;
        }
        let d_fact = (1..=idx.d as u128).product::<u128>();
        let copies: usize = idx.edges.iter().map(|e| e.0).sum();
        d_fact.checked_pow(copies as u32)?;
        // keep the set of partially oriented vertices small: prefer edges
        // that finish vertices, then edges touching already active ones
        let support = |k: usize| idx.edges[k].1[0].iter().fold(0u128, |m, &v| m | 1 << v);
        let mut remaining = vec![0usize; n];
        for (l, perms) in &idx.edges {
            perms[0].iter().for_each(|&v| remaining[v] += l);
        }
        let mut order: Vec<usize> = Vec::with_capacity(idx.edges.len());
        let mut touched = 0u128;
        while order.len() < idx.edges.len() {
            let next = (0..idx.edges.len())
                .filter(|k| !order.contains(k))
                .max_by_key(|&k| {
                    let l = idx.edges[k].0;
                    let finished = idx.edges[k].1[0]
                        .iter()
                        .filter(|&&v| remaining[v] == l)
                        .count();
                    (
                        finished,
                        (support(k) & touched).count_ones(),
                        std::cmp::Reverse(k),
                    )
                })
                .expect("an unplaced edge remains");
            touched |= support(next);
            let l = idx.edges[next].0;
            idx.edges[next].1[0].iter().for_each(|&v| remaining[v] -= l);
            order.push(next);
        }
        let edges = order
            .into_iter()
            .map(|k| &idx.edges[k])
            .map(|(l, perms)| {
                let masks = perms
                    .iter()
                    .map(|p| {
                        p.iter()
                            .enumerate()
                            .fold(0u128, |m, (pos, &v)| m | 1 << (pos * n + v))
                    })
                    .collect();
                (*l, masks)
            })
            .collect();
        Some(PackedOrient { edges })
    }

    /// Orientations of edges `e..` given the occupied slots.
    fn count(
        &self,
        e: usize,
        used: u128,
        meter: &NodeMeter,
        memo: &mut FastMap<(usize, u128), u128>,
    ) -> Result<u128> {
        if e == self.edges.len() {
            return Ok(1);
        }
        if let Some(&v) = memo.get(&(e, used)) {
            return Ok(v);
        }
        meter.tick()?;
        let (l, masks) = &self.edges[e];
        let v = self.choose(e, *l, 0, used, masks, meter, memo)?;
        memo.insert((e, used), v);
        Ok(v)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &self,
        e: usize,
        left: usize,
        from: usize,
        used: u128,
        masks: &[u128],
        meter: &NodeMeter,
        memo: &mut FastMap<(usize, u128), u128>,
    ) -> Result<u128> {
        if left == 0 {
            return self.count(e + 1, used, meter, memo);
        }
        let mut total = 0;
        for (k, &m) in masks.iter().enumerate().skip(from) {
            if m & used == 0 {
                total += self.choose(e, left - 1, k + 1, used | m, masks, meter, memo)?;
            }
        }
        Ok(total)
    }
}

/// Proper edge colorings of a regular bipartite graph with `colors` colors.
///
/// Left vertices are colored one at a time by an injective color assignment to
/// their edges; subproblems are memoized on the colors already used at each
/// right vertex.
pub fn count_proper_edge_colorings(b: &BipartiteGraph, colors: usize) -> Result<BigUint> {
    count_proper_edge_colorings_with(b, colors, &SearchConfig::default())
}

pub fn count_proper_edge_colorings_with(
    b: &BipartiteGraph,
    colors: usize,
    cfg: &SearchConfig,
) -> Result<BigUint> {
    if b.right_size() > 0 && b.regular_degree().is_none() {
        return Err(Error::precondition(
            "edge colorings are counted for regular bipartite graphs",
        ));
    }
    if colors > 32 {
        return Err(Error::invalid("at most 32 colors supported"));
    }
    let left = b.left_neighbors();
    let mut injections: HashMap<usize, Vec<Vec<u32>>> = HashMap::new();
    for adj in &left {
        injections
            .entry(adj.len())
            .or_insert_with(|| color_injections(adj.len(), colors));
    }
    struct Ctx<'a> {
        left: &'a [Vec<usize>],
        injections: &'a HashMap<usize, Vec<Vec<u32>>>,
        meter: NodeMeter,
        memo: HashMap<Vec<u32>, BigUint>,
    }
    fn go(ctx: &mut Ctx<'_>, x: usize, used: &mut Vec<u32>) -> Result<BigUint> {
        if x == ctx.left.len() {
            return Ok(BigUint::one());
        }
        if let Some(v) = ctx.memo.get(used.as_slice()) {
            return Ok(v.clone());
        }
        ctx.meter.tick()?;
        let adj = &ctx.left[x];
        let injections = ctx.injections;
        let mut total = BigUint::zero();
        for inj in &injections[&adj.len()] {
            if adj.iter().zip(inj).all(|(&y, &c)| used[y] & (1 << c) == 0) {
                for (&y, &c) in adj.iter().zip(inj) {
                    used[y] |= 1 << c;
                }
                let sub = go(ctx, x + 1, used);
                for (&y, &c) in adj.iter().zip(inj) {
                    used[y] &= !(1 << c);
                }
                total += sub?;
            }
        }
        ctx.memo.insert(used.clone(), total.clone());
        Ok(total)
    }
    let mut ctx = Ctx {
        left: &left,
        injections: &injections,
        meter: cfg.meter(),
        memo: HashMap::new(),
    };
    go(&mut ctx, 0, &mut vec![0; b.right_size()])
}

/// All injective maps from `k` slots into `colors` colors.
fn color_injections(k: usize, colors: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(k: usize, colors: usize, used: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in 0..colors {
            if used & (1 << c) == 0 {
                cur.push(c as u32);
                rec(k, colors, used | 1 << c, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, colors, 0, &mut Vec::new(), &mut out);
    out
}

/// Ordered partitions `(Y_1, ..., Y_d)` of the right part such that every left
/// vertex has exactly one neighbor in each `Y_i`.
pub fn count_proper_decompositions(b: &BipartiteGraph, cfg: &SearchConfig) -> Result<BigUint> {
    let n = b.left_size();
    let Some(d) = b.regular_degree() else {
        return Err(Error::precondition(
            "proper decompositions need a regular bipartite graph",
        ));
    };
    if b.right_size() != n || d == 0 || !n.is_multiple_of(d) {
        return Err(Error::precondition(format!(
            "proper decompositions need equal parts of size divisible by the degree (left {n}, right {}, degree {d})",
            b.right_size()
        )));
    }
    if n > 64 {
        return Err(Error::invalid(
            "decomposition search supports at most 64 vertices per part",
        ));
    }
    let left = b.left_neighbors();
    let nbr: Vec<u64> = (0..n)
        .map(|y| b.right_neighbors(y).iter().fold(0, |m, &x| m | 1 << x))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    struct Ctx<'a> {
        left: &'a [Vec<usize>],
        nbr: &'a [u64],
        full: u64,
        d: usize,
        meter: NodeMeter,
    }
    fn go(ctx: &Ctx<'_>, layer: usize, remaining: u64, covered: u64) -> Result<BigUint> {
        if covered == ctx.full {
            return if layer + 1 == ctx.d {
                Ok(if remaining == 0 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                })
            } else {
                go(ctx, layer + 1, remaining, 0)
            };
        }
        ctx.meter.tick()?;
        let x = (!covered).trailing_zeros() as usize;
        let mut total = BigUint::zero();
        for &y in &ctx.left[x] {
            if remaining >> y & 1 == 1 && ctx.nbr[y] & covered == 0 {
                total += go(ctx, layer, remaining & !(1 << y), covered | ctx.nbr[y])?;
            }
        }
        Ok(total)
    }
    let ctx = Ctx {
        left: &left,
        nbr: &nbr,
        full,
        d,
        meter: cfg.meter(),
    };
    go(&ctx, 0, full, 0)
}

/// Maps an orientation to a diagonal of the adjacency tensor.
///
/// Accepts either a proper orientation of a d-factor (`n` oriented edges, which
/// are themselves the diagonal) or an orientation of a single 1-factor
/// (`n / d` oriented edges), which is first expanded by the `d` cyclic shifts of
/// each oriented edge into a proper orientation of the factor taken `d` times.
pub fn orientation_to_diagonal(o: &Orientation, n: usize) -> Result<Diagonal> {
    let d = o.tuples().first().map_or(0, Vec::len);
    if d < 2 {
        return Err(Error::invalid(
            "orientation must have edges of size at least 2",
        ));
    }
    let tuples: Vec<Vec<usize>> = if o.tuples().len() * d == n {
        o.tuples()
            .iter()
            .flat_map(|t| (0..d).map(move |s| (0..d).map(|p| t[(s + p) % d]).collect()))
            .collect()
    } else if o.tuples().len() == n {
        o.tuples().to_vec()
    } else {
        return Err(Error::invalid(format!(
            "orientation of {} edges fits neither a 1-factor nor a d-factor on {n} vertices",
            o.tuples().len()
        )));
    };
    let expanded = Orientation::new(n, tuples)?;
    if !expanded.is_proper() {
        return Err(Error::precondition("orientation is not proper"));
    }
    Diagonal::new(
        d,
        n,
        expanded.tuples.into_iter().map(MultiIndex::new).collect(),
    )
}

/// Size of the union of the proper-orientation sets over all d-factors induced
/// by d-tuples of 1-factors of `g`.
pub fn gamma_size(g: &Hypergraph, cfg: &SearchConfig) -> Result<BigUint> {
    let classes = d_factor_classes(g, cfg, None)?;
    let count = |c: &DFactorClass| count_proper_orientations(&c.factor, cfg);
    let parts: Vec<Result<BigUint>> = if cfg.threads <= 1 {
        classes.iter().map(count).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
        pool.install(|| classes.par_iter().map(count).collect())
    };
    let mut total = BigUint::zero();
    for p in parts {
        total += p?;
    }
    Ok(total)
}
