//! Latin squares and the all-distinct tensor `U(d)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hypergraph::for_each_permutation;
use crate::numeric::factorial;
use crate::search::{NodeMeter, SearchConfig};
use crate::tensor::{BoolTensor, Diagonal, MultiIndex};

/// An `n x n` array of symbols `0..n`, each once per row and column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    order: usize,
    grid: Vec<usize>,
}

impl LatinSquare {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(
                "a latin square must be a non-empty square array",
            ));
        }
        let grid = rows.concat();
        let sq = LatinSquare { order: n, grid };
        for i in 0..n {
            let row: Vec<usize> = (0..n).map(|j| sq.get(i, j)).collect();
            let col: Vec<usize> = (0..n).map(|j| sq.get(j, i)).collect();
            if !is_permutation(&row) || !is_permutation(&col) {
                return Err(Error::invalid(format!(
                    "line {i} repeats a symbol or uses one outside 0..{n}"
                )));
            }
        }
        Ok(sq)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.grid[row * self.order + col]
    }

    /// The rows read as index tuples: a unit diagonal of `U(n)`.
    pub fn to_diagonal(&self) -> Diagonal {
        let n = self.order;
        let entries = (0..n)
            .map(|i| MultiIndex::new(self.grid[i * n..(i + 1) * n].to_vec()))
            .collect();
        Diagonal::new(n, n, entries).expect("rows of a latin square form a diagonal")
    }
}

fn is_permutation(xs: &[usize]) -> bool {
    let mut seen = vec![false; xs.len()];
    xs.iter()
        .all(|&x| x < xs.len() && !std::mem::replace(&mut seen[x], true))
}

/// The d-dimensional order-d tensor with ones exactly at all-distinct indices.
pub fn build_u(d: usize) -> Result<BoolTensor> {
    if d < 2 {
        return Err(Error::invalid("U(d) needs d >= 2"));
    }
    let mut ones = Vec::new();
    for_each_permutation(&(0..d).collect::<Vec<_>>(), |p| {
        ones.push(MultiIndex::new(p.to_vec()))
    });
    BoolTensor::new(d, d, ones)
}

/// Cell-by-cell filler with row/column symbol masks.
struct Filler<'a> {
    n: usize,
    rows: Vec<u32>,
    cols: Vec<u32>,
    grid: Vec<usize>,
    meter: &'a NodeMeter,
}

impl<'a> Filler<'a> {
    fn new(n: usize, meter: &'a NodeMeter) -> Self {
        Filler {
            n,
            rows: vec![0; n],
            cols: vec![0; n],
            grid: vec![0; n * n],
            meter,
        }
    }

    fn set(&mut self, cell: usize, s: usize) {
        let (i, j) = (cell / self.n, cell % self.n);
        self.rows[i] |= 1 << s;
        self.cols[j] |= 1 << s;
        self.grid[cell] = s;
    }

    fn unset(&mut self, cell: usize, s: usize) {
        let (i, j) = (cell / self.n, cell % self.n);
        self.rows[i] &= !(1 << s);
        self.cols[j] &= !(1 << s);
    }

    fn fill(&mut self, cell: usize, fixed: &[bool], f: &mut dyn FnMut(&[usize])) -> Result<()> {
        let n = self.n;
        if cell == n * n {
            f(&self.grid);
            return Ok(());
        }
        if fixed[cell] {
            return self.fill(cell + 1, fixed, f);
        }
        self.meter.tick()?;
        let (i, j) = (cell / n, cell % n);
        let free = !(self.rows[i] | self.cols[j]);
        for s in 0..n {
            if free >> s & 1 == 1 {
                self.set(cell, s);
                self.fill(cell + 1, fixed, f)?;
                self.unset(cell, s);
            }
        }
        Ok(())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > 16 {
        Err(Error::invalid(format!(
            "latin square order must be in 1..=16, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Visits every latin square of order `n`.
pub fn for_each_latin_square(
    n: usize,
    cfg: &SearchConfig,
    f: &mut dyn FnMut(&LatinSquare),
) -> Result<()> {
    check_order(n)?;
    let meter = cfg.meter();
    let mut filler = Filler::new(n, &meter);
    filler.fill(0, &vec![false; n * n], &mut |grid| {
        f(&LatinSquare {
            order: n,
            grid: grid.to_vec(),
        })
    })
}

/// `L(n)` by plain enumeration of all squares.
pub fn count_latin_squares(n: usize, cfg: &SearchConfig) -> Result<BigUint> {
    let mut count = 0u64;
    for_each_latin_square(n, cfg, &mut |_| count += 1)?;
    Ok(count.into())
}

/// Squares with column 0, and optionally row 0, fixed to the identity.
fn count_with_fixed(n: usize, fix_first_row: bool, cfg: &SearchConfig) -> Result<u64> {
    check_order(n)?;
    let meter = cfg.meter();
    let mut filler = Filler::new(n, &meter);
    let mut fixed = vec![false; n * n];
    for i in 0..n {
        filler.set(i * n, i);
        fixed[i * n] = true;
    }
    if fix_first_row {
        for j in 1..n {
            filler.set(j, j);
            fixed[j] = true;
        }
    }
    let mut count = 0u64;
    filler.fill(0, &fixed, &mut |_| count += 1)?;
    Ok(count)
}

/// `Q(n)`: squares whose column 0 is `(0, 1, ..., n-1)`.
///
/// Permuting columns `1..n` acts freely on these squares and fixes the first
/// row to the identity in exactly one way, so `Q(n) = (n-1)! * R(n)` with `R(n)`
/// the number of reduced squares.
pub fn count_latin_fixed_column(n: usize, cfg: &SearchConfig) -> Result<BigUint> {
    let reduced = count_with_fixed(n, true, cfg)?;
    Ok(factorial(n as u64 - 1) * reduced)
}

/// `Q(n)` by enumerating every square with the fixed first column.
pub fn count_latin_fixed_column_direct(n: usize, cfg: &SearchConfig) -> Result<BigUint> {
    Ok(count_with_fixed(n, false, cfg)?.into())
}

/// `d!^(2d) / d^(d^2)`.
pub fn latin_lower_bound(d: u64) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::invalid("order must be at least 1"));
    }
    let num = BigInt::from(factorial(d)).pow((2 * d) as u32);
    let den = BigInt::from(d).pow((d * d) as u32);
    Ok(BigRational::new(num, den))
}

/// `L(n) >= lower bound` checked exactly.
pub fn satisfies_latin_lower_bound(d: u64, count: &BigUint) -> Result<bool> {
    let bound = latin_lower_bound(d)?;
    let lhs = BigRational::from_integer(BigInt::from(count.clone()));
    Ok(lhs >= bound)
}
