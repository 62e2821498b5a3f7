//! Exact permanents of d-dimensional (0,1)-matrices and of 2-D integer matrices,
//! together with the classical bounds on them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{factorial, ln_factorial, LogValue};
use crate::search::{FastMap, NodeMeter, SearchConfig};
use crate::tensor::BoolTensor;

/// Number of all-ones diagonals of `t`.
///
/// Depth-first over the first coordinate `i = 0..n-1`, choosing a unit entry
/// `(i, c_1, ..., c_{d-1})` whose coordinates are unused on every axis. Subtrees
/// are memoized on the used-coordinate masks, which determine `i`. The top-level
/// branches are split across `cfg.threads` workers; the sum does not depend on
/// the split.
pub fn permanent(t: &BoolTensor, cfg: &SearchConfig) -> Result<BigUint> {
    permanent_impl(t, cfg, true)
}

fn permanent_impl(t: &BoolTensor, cfg: &SearchConfig, allow_packed: bool) -> Result<BigUint> {
    let n = t.order();
    if n > 64 {
        return Err(Error::invalid(format!(
            "permanent supports order at most 64, got {n}"
        )));
    }
    let width = t.dim() - 1;
    let mut rows: Vec<Vec<u64>> = vec![Vec::new(); n];
    for m in t.ones() {
        let c = m.coords();
        rows[c[0]].extend(c[1..].iter().map(|&x| 1u64 << x));
    }
    if rows.iter().any(Vec::is_empty) {
        return Ok(BigUint::zero());
    }
    // an empty hyperplane in any direction kills every diagonal
    for axis in 1..t.dim() {
        if t.hyperplane_counts(axis)?.contains(&0) {
            return Ok(BigUint::zero());
        }
    }

    let meter = cfg.meter();
    if let Some(fast) = PackedSearch::plan(&rows, width, n).filter(|_| allow_packed) {
        return fast.run(cfg, &meter);
    }
    let top: Vec<&[u64]> = rows[0].chunks(width).collect();
    if cfg.threads <= 1 || top.len() < 2 {
        let mut search = TensorSearch::new(&rows, width, &meter);
        return search.count(0, &mut vec![0; width]);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let parts: Vec<Result<BigUint>> = pool.install(|| {
        top.par_iter()
            .map(|cand| {
                let mut search = TensorSearch::new(&rows, width, &meter);
                search.count(1, &mut cand.to_vec())
            })
            .collect()
    });
    parts.into_iter().sum()
}

struct TensorSearch<'a> {
    rows: &'a [Vec<u64>],
    width: usize,
    meter: &'a NodeMeter,
    memo: HashMap<Vec<u64>, BigUint>,
}

impl<'a> TensorSearch<'a> {
    fn new(rows: &'a [Vec<u64>], width: usize, meter: &'a NodeMeter) -> Self {
        TensorSearch {
            rows,
            width,
            meter,
            memo: HashMap::new(),
        }
    }

    fn count(&mut self, row: usize, used: &mut Vec<u64>) -> Result<BigUint> {
        if row == self.rows.len() {
            return Ok(BigUint::one());
        }
        if let Some(v) = self.memo.get(used.as_slice()) {
            return Ok(v.clone());
        }
        self.meter.tick()?;
        let mut total = BigUint::zero();
        let rows = self.rows;
        for cand in rows[row].chunks(self.width) {
            if cand.iter().zip(used.iter()).any(|(c, u)| c & u != 0) {
                continue;
            }
            for (u, c) in used.iter_mut().zip(cand) {
                *u |= c;
            }
            let sub = self.count(row + 1, used);
            for (u, c) in used.iter_mut().zip(cand) {
                *u &= !c;
            }
            total += sub?;
        }
        if row + 1 < self.rows.len() {
            self.memo.insert(used.clone(), total.clone());
        }
        Ok(total)
    }
}

type MaskMap = FastMap<u64, u128>;

/// The same search with all masks packed into one word and `u128` counts, used
/// when `n * (d - 1) <= 64` and the product of the row candidate counts (an
/// upper bound on every partial count) fits in `u128`.
struct PackedSearch {
    rows: Vec<Vec<u64>>,
}

impl PackedSearch {
    fn plan(rows: &[Vec<u64>], width: usize, n: usize) -> Option<Self> {
        if n * width > 64 {
            return None;
        }
        rows.iter()
            .try_fold(1u128, |acc, r| acc.checked_mul((r.len() / width) as u128))?;
        let packed = rows
            .iter()
            .map(|r| {
                r.chunks(width)
                    .map(|cand| {
                        cand.iter()
                            .enumerate()
                            .fold(0u64, |acc, (k, &bit)| acc | bit << (k * n))
                    })
                    .collect()
            })
            .collect();
        Some(PackedSearch { rows: packed })
    }

    fn run(&self, cfg: &SearchConfig, meter: &NodeMeter) -> Result<BigUint> {
        if cfg.threads <= 1 || self.rows[0].len() < 2 {
            return Ok(self.count(0, 0, meter, &mut MaskMap::default())?.into());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
        let parts: Vec<Result<u128>> = pool.install(|| {
            self.rows[0]
                .par_iter()
                .map(|&cand| self.count(1, cand, meter, &mut MaskMap::default()))
                .collect()
        });
        let mut total = BigUint::zero();
        for p in parts {
            total += p?;
        }
        Ok(total)
    }

    fn count(&self, row: usize, used: u64, meter: &NodeMeter, memo: &mut MaskMap) -> Result<u128> {
        if row == self.rows.len() {
            return Ok(1);
        }
        if let Some(&v) = memo.get(&used) {
            return Ok(v);
        }
        meter.tick()?;
        let mut total = 0u128;
        for &cand in &self.rows[row] {
            if cand & used == 0 {
                total += self.count(row + 1, used | cand, meter, memo)?;
            }
        }
        memo.insert(used, total);
        Ok(total)
    }
}

/// Square matrix of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix2D {
    order: usize,
    entries: Vec<u64>,
}

impl IntMatrix2D {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::invalid("matrix must have at least one row"));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != order) {
            return Err(Error::invalid(format!(
                "row {i} has {} entries, expected {order}",
                r.len()
            )));
        }
        Ok(IntMatrix2D {
            order,
            entries: rows.concat(),
        })
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![0; order * order];
        for i in 0..order {
            entries[i * order + i] = 1;
        }
        IntMatrix2D { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.order)
            .map(|j| (0..self.order).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// `Some(k)` when every row and column sums to `k`.
    pub fn regular_degree(&self) -> Option<u64> {
        let k = self.row_sums()[0];
        let all = self.row_sums().into_iter().chain(self.col_sums());
        all.into_iter().all(|s| s == k).then_some(k)
    }
}

impl FromStr for IntMatrix2D {
    type Err = Error;

    /// `"n"` on the first line, then `n` rows of `n` integers.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = crate::format::data_lines(s);
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header line \"n\"".into(),
        })?;
        let header = crate::format::parse_numbers(hline, header)?;
        let [n] = header[..] else {
            return Err(Error::Parse {
                line: hline,
                message: "header must be \"n\"".into(),
            });
        };
        let mut rows = Vec::with_capacity(n);
        for (lineno, line) in lines {
            let row = crate::format::parse_numbers(lineno, line)?;
            if row.len() != n {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row.into_iter().map(|x| x as u64).collect());
        }
        if rows.len() != n {
            return Err(Error::Parse {
                line: hline,
                message: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        IntMatrix2D::new(rows)
    }
}

impl fmt::Display for IntMatrix2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Permanent of a 2-D integer matrix by row expansion with a column used-mask.
pub fn permanent_2d_int(m: &IntMatrix2D, cfg: &SearchConfig) -> Result<BigUint> {
    let n = m.order();
    if n > 64 {
        return Err(Error::invalid(format!(
            "permanent supports order at most 64, got {n}"
        )));
    }
    fn go(
        m: &IntMatrix2D,
        row: usize,
        used: u64,
        meter: &NodeMeter,
        memo: &mut HashMap<u64, BigUint>,
    ) -> Result<BigUint> {
        if row == m.order() {
            return Ok(BigUint::one());
        }
        if let Some(v) = memo.get(&used) {
            return Ok(v.clone());
        }
        meter.tick()?;
        let mut total = BigUint::zero();
        for (j, &a) in m.row(row).iter().enumerate() {
            if a != 0 && used & (1 << j) == 0 {
                total += go(m, row + 1, used | (1 << j), meter, memo)? * a;
            }
        }
        memo.insert(used, total.clone());
        Ok(total)
    }
    go(m, 0, 0, &cfg.meter(), &mut HashMap::new())
}

/// Ryser's inclusion-exclusion formula; an independent route to [`permanent_2d_int`].
pub fn permanent_2d_ryser(m: &IntMatrix2D) -> Result<BigUint> {
    let n = m.order();
    if n > 24 {
        return Err(Error::invalid(format!(
            "Ryser evaluation limited to order 24, got {n}"
        )));
    }
    let mut total = BigInt::zero();
    for subset in 1u64..(1 << n) {
        let mut prod = BigInt::one();
        for i in 0..n {
            let s: u64 = (0..n)
                .filter(|&j| subset >> j & 1 == 1)
                .map(|j| m.get(i, j))
                .sum();
            if s == 0 {
                prod = BigInt::zero();
                break;
            }
            prod *= s;
        }
        if (n - subset.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
        .to_biguint()
        .ok_or_else(|| Error::invalid("Ryser sum came out negative"))
}

/// Product of the hyperplane ones counts orthogonal to `axis`.
pub fn trivial_upper_bound(t: &BoolTensor, axis: usize) -> Result<BigUint> {
    Ok(t.hyperplane_counts(axis)?
        .into_iter()
        .fold(BigUint::one(), |acc, r| acc * r))
}

/// `prod_i r_i!^(1/r_i)` for a 3-dimensional tensor, kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DowGibsonBound {
    counts: Vec<u64>,
}

/// How an integer compares to an irrational bound, with integer witnesses.
///
/// `ordering == lhs.cmp(&rhs)` always; `lhs` is derived from the integer and
/// `rhs` from the bound, both scaled by the same positive factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundComparison {
    pub ordering: Ordering,
    pub lhs: BigUint,
    pub rhs: BigUint,
    /// Power both original sides were raised to (1 for bracket witnesses).
    pub root: u64,
    pub method: ComparisonMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonMethod {
    /// Both sides raised to the lcm of the root indices.
    Exact,
    /// Integer compared against a dyadic rational bracket of the bound.
    Bracket { bits: u64 },
}

const EXACT_BITS_LIMIT: f64 = 65_536.0;

pub fn dow_gibson_bound(t: &BoolTensor, axis: usize) -> Result<DowGibsonBound> {
    if t.dim() != 3 {
        return Err(Error::UnsupportedDimension {
            dim: t.dim(),
            what: "the Dow-Gibson bound is stated for 3-dimensional matrices",
        });
    }
    Ok(DowGibsonBound {
        counts: t.hyperplane_counts(axis)?,
    })
}

impl DowGibsonBound {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        DowGibsonBound { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn is_zero(&self) -> bool {
        self.counts.contains(&0)
    }

    /// `r -> (p, q)` with the factor `r!^(p/q)`, fraction in lowest terms.
    fn groups(&self) -> BTreeMap<u64, (u64, u64)> {
        let mut mult: BTreeMap<u64, u64> = BTreeMap::new();
        for &r in &self.counts {
            *mult.entry(r).or_default() += 1;
        }
        mult.into_iter()
            .map(|(r, c)| {
                let g = c.gcd(&r);
                (r, (c / g, r / g))
            })
            .collect()
    }

    pub fn approx(&self) -> LogValue {
        if self.is_zero() {
            return LogValue::ZERO;
        }
        LogValue::from_ln(
            self.counts
                .iter()
                .map(|&r| ln_factorial(r) / r as f64)
                .sum(),
        )
    }

    /// Each factor `r!^(1/r)` is at most `r`, so the bound never exceeds the trivial one.
    pub fn is_at_most_trivial(&self) -> bool {
        self.counts
            .iter()
            .all(|&r| factorial(r) <= BigUint::from(r).pow(r as u32))
    }

    /// Compares `value` against the bound using integer arithmetic only.
    pub fn compare(&self, value: &BigUint) -> BoundComparison {
        if self.is_zero() {
            return BoundComparison {
                ordering: value.cmp(&BigUint::zero()),
                lhs: value.clone(),
                rhs: BigUint::zero(),
                root: 1,
                method: ComparisonMethod::Exact,
            };
        }
        let groups = self.groups();
        let root = groups.values().fold(1u64, |l, &(_, q)| l.lcm(&q));
        let est_bits = root as f64
            * (self.approx().ln.unwrap_or(0.0).max(0.0) / std::f64::consts::LN_2
                + value.bits() as f64);
        if est_bits <= EXACT_BITS_LIMIT {
            return self.compare_exact(value, &groups, root);
        }
        let mut bits = 64;
        while bits <= 4096 {
            if let Some(c) = self.compare_bracket(value, &groups, bits) {
                return c;
            }
            bits *= 4;
        }
        self.compare_exact(value, &groups, root)
    }

    fn compare_exact(
        &self,
        value: &BigUint,
        groups: &BTreeMap<u64, (u64, u64)>,
        root: u64,
    ) -> BoundComparison {
        let lhs = value.pow(root as u32);
        let rhs = groups.iter().fold(BigUint::one(), |acc, (&r, &(p, q))| {
            acc * factorial(r).pow((p * (root / q)) as u32)
        });
        BoundComparison {
            ordering: lhs.cmp(&rhs),
            lhs,
            rhs,
            root,
            method: ComparisonMethod::Exact,
        }
    }

    /// Brackets every factor `r!^(p/q)` between `x/2^bits` and `(x+1)/2^bits`.
    /// Returns `None` if the bracket cannot separate the value from the bound.
    fn compare_bracket(
        &self,
        value: &BigUint,
        groups: &BTreeMap<u64, (u64, u64)>,
        bits: u64,
    ) -> Option<BoundComparison> {
        let mut lower = BigUint::one();
        let mut upper = BigUint::one();
        for (&r, &(p, q)) in groups {
            let target = factorial(r).pow(p as u32) << (bits * q) as usize;
            let x = target.nth_root(q as u32);
            let exact = x.pow(q as u32) == target;
            upper *= if exact { x.clone() } else { &x + 1u32 };
            lower *= x;
        }
        let scaled = value << (bits * groups.len() as u64) as usize;
        let method = ComparisonMethod::Bracket { bits };
        if scaled < lower {
            Some(BoundComparison {
                ordering: Ordering::Less,
                lhs: scaled,
                rhs: lower,
                root: 1,
                method,
            })
        } else if scaled > upper {
            Some(BoundComparison {
                ordering: Ordering::Greater,
                lhs: scaled,
                rhs: upper,
                root: 1,
                method,
            })
        } else if lower == upper {
            Some(BoundComparison {
                ordering: scaled.cmp(&lower),
                lhs: scaled,
                rhs: lower,
                root: 1,
                method,
            })
        } else {
            None
        }
    }
}

/// `((k-1)^(k-1) / k^(k-2))^n` with `0^0 = 1`.
pub fn schrijver_lower_bound(k: u64, n: u64) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::invalid("regularity degree must be at least 1"));
    }
    if k == 1 {
        return Ok(BigRational::one());
    }
    let num = BigInt::from(k - 1).pow(((k - 1) * n) as u32);
    let den = BigInt::from(k).pow(((k - 2) * n) as u32);
    Ok(BigRational::new(num, den))
}

/// Main term `n!^(d-2) * prod_i S(r_i / n^(d-2))` with `S(x) = ceil(x)!^(1/ceil(x))`.
///
/// Only the leading term of an asymptotic estimate; never a certified bound.
pub fn asym_main_term(t: &BoolTensor, axis: usize) -> Result<LogValue> {
    let counts = t.hyperplane_counts(axis)?;
    Ok(asym_main_term_from_counts(t.dim(), t.order(), &counts))
}

pub fn asym_main_term_from_counts(dim: usize, order: usize, counts: &[u64]) -> LogValue {
    if counts.contains(&0) {
        return LogValue::ZERO;
    }
    let scale = (order as u64).pow(dim as u32 - 2);
    let mut ln = (dim as f64 - 2.0) * ln_factorial(order as u64);
    for &r in counts {
        let c = r.div_ceil(scale);
        ln += ln_factorial(c) / c as f64;
    }
    LogValue::from_ln(ln)
}
