//! Sparse d-dimensional (0,1)-matrices of order n, their hyperplanes and diagonals.
//!
//! All indices are 0-based. A tensor stores only the coordinates of its unit
//! entries, kept sorted and deduplicated so that two tensors with the same
//! support compare equal.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One coordinate tuple `(a_0, ..., a_{d-1})` of a d-dimensional matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(coords: Vec<usize>) -> Self {
        MultiIndex(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_valid_for(&self, dim: usize, order: usize) -> bool {
        self.0.len() == dim && self.0.iter().all(|&c| c < order)
    }

    /// Number of positions where the two indices differ.
    pub fn hamming(&self, other: &MultiIndex) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[usize; N]> for MultiIndex {
    fn from(v: [usize; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A d-dimensional (0,1)-matrix of order n in sparse form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolTensor {
    dim: usize,
    order: usize,
    ones: Vec<MultiIndex>,
}

impl BoolTensor {
    /// Builds a tensor from its unit entries. Duplicates are collapsed.
    pub fn new<I>(dim: usize, order: usize, ones: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<MultiIndex>,
    {
        if dim < 2 {
            return Err(Error::invalid(format!(
                "tensor dimension must be at least 2, got {dim}"
            )));
        }
        if order < 1 {
            return Err(Error::invalid("tensor order must be at least 1"));
        }
        let mut entries = Vec::new();
        for idx in ones {
            let idx = idx.into();
            if idx.dim() != dim {
                return Err(Error::invalid(format!(
                    "entry {idx} has {} coordinates, expected {dim}",
                    idx.dim()
                )));
            }
            if let Some(c) = idx.coords().iter().find(|&&c| c >= order) {
                return Err(Error::invalid(format!(
                    "entry {idx} has coordinate {c} outside 0..{order}"
                )));
            }
            entries.push(idx);
        }
        entries.sort_unstable();
        entries.dedup();
        Ok(BoolTensor {
            dim,
            order,
            ones: entries,
        })
    }

    /// The tensor with every entry equal to one.
    pub fn full(dim: usize, order: usize) -> Result<Self> {
        let total = order
            .checked_pow(dim as u32)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| Error::invalid("full tensor too large to materialize"))?;
        let ones = (0..total).map(|mut k| {
            let mut c = vec![0; dim];
            for slot in c.iter_mut().rev() {
                *slot = k % order;
                k /= order;
            }
            MultiIndex(c)
        });
        BoolTensor::new(dim, order, ones)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Unit entries in ascending lexicographic order.
    pub fn ones(&self) -> &[MultiIndex] {
        &self.ones
    }

    pub fn count_ones(&self) -> usize {
        self.ones.len()
    }

    pub fn contains(&self, coords: &[usize]) -> bool {
        self.ones
            .binary_search_by(|m| m.coords().cmp(coords))
            .is_ok()
    }

    /// Number of unit entries in the hyperplane `axis = index`.
    pub fn hyperplane_ones(&self, axis: usize, index: usize) -> Result<u64> {
        self.check_axis(axis)?;
        if index >= self.order {
            return Err(Error::invalid(format!(
                "hyperplane index {index} outside 0..{}",
                self.order
            )));
        }
        Ok(self
            .ones
            .iter()
            .filter(|m| m.coords()[axis] == index)
            .count() as u64)
    }

    /// Ones count of every hyperplane orthogonal to `axis`, indexed by position.
    pub fn hyperplane_counts(&self, axis: usize) -> Result<Vec<u64>> {
        self.check_axis(axis)?;
        let mut counts = vec![0u64; self.order];
        for m in &self.ones {
            counts[m.coords()[axis]] += 1;
        }
        Ok(counts)
    }

    pub(crate) fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.dim {
            Err(Error::invalid(format!(
                "axis {axis} outside 0..{}",
                self.dim
            )))
        } else {
            Ok(())
        }
    }

    /// Applies the same vertex relabeling `perm` to every axis.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.order)?;
        let ones = self
            .ones
            .iter()
            .map(|m| MultiIndex(m.coords().iter().map(|&c| perm[c]).collect()));
        BoolTensor::new(self.dim, self.order, ones)
    }

    /// Reorders the axes: new axis `k` is old axis `axes[k]`.
    pub fn permute_axes(&self, axes: &[usize]) -> Result<Self> {
        check_permutation(axes, self.dim)?;
        let ones = self
            .ones
            .iter()
            .map(|m| MultiIndex(axes.iter().map(|&a| m.coords()[a]).collect()));
        BoolTensor::new(self.dim, self.order, ones)
    }

    /// Writes the sparse text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dim, self.order);
        for m in &self.ones {
            let line: Vec<String> = m.coords().iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(Error::invalid(format!(
            "permutation has length {}, expected {len}",
            perm.len()
        )));
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::invalid(format!(
                "{perm:?} is not a permutation of 0..{len}"
            )));
        }
    }
    Ok(())
}

impl FromStr for BoolTensor {
    type Err = Error;

    /// Parses `"d n"` followed by one line of `d` coordinates per unit entry.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = crate::format::data_lines(s);
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header line \"d n\"".into(),
        })?;
        let header = crate::format::parse_numbers(hline, header)?;
        let [dim, order] = header[..] else {
            return Err(Error::Parse {
                line: hline,
                message: format!("header must be \"d n\", found {} fields", header.len()),
            });
        };
        let mut ones = Vec::new();
        for (lineno, line) in lines {
            let coords = crate::format::parse_numbers(lineno, line)?;
            let idx = MultiIndex(coords);
            if !idx.is_valid_for(dim, order) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("entry {idx} is not a valid index for d={dim}, n={order}"),
                });
            }
            ones.push(idx);
        }
        BoolTensor::new(dim, order, ones)
    }
}

/// A set of `n` indices, pairwise at Hamming distance `d`.
///
/// Stored sorted by the first coordinate, so entry `i` reads
/// `(i, s_1(i), ..., s_{d-1}(i))` for permutations `s_1..s_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    entries: Vec<MultiIndex>,
}

impl Diagonal {
    pub fn new(dim: usize, order: usize, mut entries: Vec<MultiIndex>) -> Result<Self> {
        if !is_diagonal(dim, order, &entries) {
            return Err(Error::invalid("entries do not form a diagonal"));
        }
        entries.sort_unstable();
        Ok(Diagonal { entries })
    }

    pub fn entries(&self) -> &[MultiIndex] {
        &self.entries
    }

    /// The permutations `s_1..s_{d-1}` with entry `i = (i, s_1(i), ...)`.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        let dim = self.entries.first().map_or(0, |e| e.dim());
        (1..dim)
            .map(|axis| self.entries.iter().map(|e| e.coords()[axis]).collect())
            .collect()
    }

    /// True when every entry is a unit entry of `t`.
    pub fn is_unit_in(&self, t: &BoolTensor) -> bool {
        self.entries.iter().all(|e| t.contains(e.coords()))
    }
}

/// True iff `entries` is a diagonal of a d-dimensional matrix of order n:
/// exactly n valid indices whose coordinates on each axis form a permutation.
pub fn is_diagonal(dim: usize, order: usize, entries: &[MultiIndex]) -> bool {
    if entries.len() != order || !entries.iter().all(|e| e.is_valid_for(dim, order)) {
        return false;
    }
    (0..dim).all(|axis| {
        let mut seen = vec![false; order];
        entries
            .iter()
            .all(|e| !std::mem::replace(&mut seen[e.coords()[axis]], true))
    })
}
