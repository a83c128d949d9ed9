//! Exact integer Smith normal form and cokernel decomposition.
//!
//! Reduction runs on a checked `i64` working copy first; if any entry
//! overflows, it restarts from scratch on `BigInt`. Pivots are always the
//! smallest nonzero magnitude in the remaining submatrix.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// A rectangular matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    /// An empty matrix with `ncols` columns and no rows.
    pub fn new(ncols: usize) -> Self {
        IntMatrix { ncols, rows: Vec::new() }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::new(ncols);
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::new(n);
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            m.rows.push(r);
        }
        m
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, got: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn push_i64_row(&mut self, row: &[i64]) -> Result<()> {
        self.push_row(row.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }
}

/// The invariant factors `d_1 | d_2 | ... | d_r` (`r = min(rows, cols)`),
/// zeros last, all non-negative.
pub fn smith_divisors(m: &IntMatrix) -> Vec<BigUint> {
    let r = m.nrows().min(m.ncols());
    let pivots = match to_i64(m) {
        Some(small) => {
            diagonalize(small, m.ncols()).map(|d| d.iter().map(Entry::magnitude).collect())
        }
        None => None,
    };
    let mut pivots: Vec<BigUint> = pivots.unwrap_or_else(|| {
        diagonalize(m.rows.clone(), m.ncols())
            .expect("bigint reduction cannot overflow")
            .iter()
            .map(Entry::magnitude)
            .collect()
    });
    normalize_chain(&mut pivots);
    pivots.resize(r, BigUint::zero());
    pivots
}

/// `Z^cols / rowspan(M)` as a product of cyclic groups.
pub fn cokernel_decomposition(m: &IntMatrix) -> Result<CyclicDecomposition> {
    if m.ncols() == 0 {
        return Ok(CyclicDecomposition::trivial());
    }
    if m.nrows() < m.ncols() {
        return Err(Error::InfiniteCokernel);
    }
    let divisors = smith_divisors(m);
    if divisors.iter().any(Zero::is_zero) {
        return Err(Error::InfiniteCokernel);
    }
    Ok(CyclicDecomposition::new(divisors))
}

fn to_i64(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    m.rows.iter().map(|r| r.iter().map(ToPrimitive::to_i64).collect()).collect()
}

/// Turns a list of nonzero diagonal entries into a divisibility chain by
/// repeated `(gcd, lcm)` replacement, which preserves the diagonal's cokernel.
fn normalize_chain(d: &mut [BigUint]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[i].is_one() {
                break;
            }
            if (&d[j] % &d[i]).is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
}

trait Entry: Clone + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    /// Nearest-integer quotient, so that `|self - q*d| <= |d|/2`.
    fn round_div(&self, d: &Self) -> Option<Self>;
    /// `self - q*x`.
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn magnitude(&self) -> BigUint;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn round_div(&self, d: &Self) -> Option<Self> {
        let (a, b) = (*self as i128, *d as i128);
        let mut q = a.div_euclid(b);
        let r = a - q * b;
        if 2 * r > b.abs() {
            q += b.signum();
        }
        i64::try_from(q).ok()
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn magnitude(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        BigInt::magnitude(self).cmp(BigInt::magnitude(other))
    }
    fn round_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_mod_floor(d);
        // r carries the sign of d, so stepping q up moves r towards zero.
        let twice: BigInt = &r * 2;
        if twice.abs() > d.abs() {
            return Some(q + 1);
        }
        Some(q)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn magnitude(&self) -> BigUint {
        BigInt::magnitude(self).clone()
    }
}

/// Smallest nonzero magnitude in rows `t..`, columns `t..`.
fn find_pivot<T: Entry>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if v.is_unit() {
                return Some((i, j));
            }
            match best {
                Some((bi, bj)) if v.abs_cmp(&a[bi][bj]) != Ordering::Less => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_cols<T>(a: &mut [Vec<T>], from_row: usize, c1: usize, c2: usize) {
    if c1 != c2 {
        for row in &mut a[from_row..] {
            row.swap(c1, c2);
        }
    }
}

/// Reduces to diagonal form and returns the nonzero diagonal, or `None` if a
/// checked operation overflowed.
fn diagonalize<T: Entry>(mut a: Vec<Vec<T>>, ncols: usize) -> Option<Vec<T>> {
    let nrows = a.len();
    let limit = nrows.min(ncols);
    let mut diag = Vec::with_capacity(limit);
    let mut t = 0;
    while t < limit {
        let Some((r, c)) = find_pivot(&a, t) else {
            break;
        };
        a.swap(t, r);
        swap_cols(&mut a, t, t, c);
        loop {
            // Clear column t below the pivot with row operations.
            let pivot_row: Vec<(usize, T)> = a[t]
                .iter()
                .enumerate()
                .skip(t)
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            let pivot = a[t][t].clone();
            let mut best_row: Option<usize> = None;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].round_div(&pivot)?;
                if !q.is_zero() {
                    let row = &mut a[i];
                    for (j, v) in &pivot_row {
                        row[*j] = row[*j].sub_mul(&q, v)?;
                    }
                }
                if !a[i][t].is_zero() {
                    match best_row {
                        Some(b) if a[i][t].abs_cmp(&a[b][t]) != Ordering::Less => {}
                        _ => best_row = Some(i),
                    }
                }
            }
            if let Some(i) = best_row {
                a.swap(t, i);
                continue;
            }
            // Column t is clear, so column operations only touch row t.
            let mut best_col: Option<usize> = None;
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].round_div(&pivot)?;
                a[t][j] = a[t][j].sub_mul(&q, &pivot)?;
                if !a[t][j].is_zero() {
                    match best_col {
                        Some(b) if a[t][j].abs_cmp(&a[t][b]) != Ordering::Less => {}
                        _ => best_col = Some(j),
                    }
                }
            }
            if let Some(j) = best_col {
                swap_cols(&mut a, t, t, j);
                continue;
            }
            break;
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Some(diag)
}

/// A finite abelian group `C_{d_1} x ... x C_{d_r}`, kept as the sorted
/// multiset of its nontrivial cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclicDecomposition {
    divisors: Vec<BigUint>,
}

impl CyclicDecomposition {
    /// Drops factors of order 1; zeros are rejected by callers upstream.
    pub fn new(divisors: impl IntoIterator<Item = BigUint>) -> Self {
        let mut divisors: Vec<BigUint> =
            divisors.into_iter().filter(|d| *d > BigUint::one()).collect();
        divisors.sort();
        CyclicDecomposition { divisors }
    }

    pub fn trivial() -> Self {
        CyclicDecomposition::default()
    }

    /// From `(divisor, multiplicity)` pairs.
    pub fn from_pairs(pairs: &[(u64, usize)]) -> Self {
        Self::new(pairs.iter().flat_map(|&(d, m)| std::iter::repeat_n(BigUint::from(d), m)))
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn divisors(&self) -> &[BigUint] {
        &self.divisors
    }

    pub fn multiplicities(&self) -> BTreeMap<BigUint, usize> {
        let mut m = BTreeMap::new();
        for d in &self.divisors {
            *m.entry(d.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, d: u64) -> usize {
        let d = BigUint::from(d);
        self.divisors.iter().filter(|x| **x == d).count()
    }

    pub fn order(&self) -> BigUint {
        self.divisors.iter().product()
    }

    /// Largest divisor, or 1 for the trivial group.
    pub fn exponent(&self) -> BigUint {
        self.divisors.last().cloned().unwrap_or_else(BigUint::one)
    }

    /// One `divisor<TAB>multiplicity` line per distinct divisor.
    pub fn to_tsv(&self) -> String {
        self.multiplicities().iter().map(|(d, m)| format!("{d}\t{m}\n")).collect()
    }

    pub fn from_tsv(s: &str) -> Result<Self> {
        let mut divisors = Vec::new();
        for line in s.lines().filter(|l| !l.trim().is_empty()) {
            let (d, m) = line
                .split_once('\t')
                .ok_or_else(|| Error::BadParams(format!("malformed line {line:?}")))?;
            let d: BigUint = d.trim().parse().map_err(|_| bad_number(d))?;
            let m: usize = m.trim().parse().map_err(|_| bad_number(m))?;
            divisors.extend(std::iter::repeat_n(d, m));
        }
        Ok(Self::new(divisors))
    }
}

fn bad_number(s: &str) -> Error {
    Error::BadParams(format!("not a number: {s:?}"))
}

impl fmt::Display for CyclicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.multiplicities().iter().map(|(d, m)| format!("(C{d})^{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for CyclicDecomposition {
    type Err = Error;

    /// Parses the rendering produced by `Display`, e.g. `(C3)^8 x (C9)^2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut divisors = Vec::new();
        for part in s.split(" x ") {
            let part = part.trim();
            let inner = part
                .strip_prefix("(C")
                .and_then(|rest| rest.split_once(")^"))
                .ok_or_else(|| Error::BadParams(format!("malformed factor {part:?}")))?;
            let d: BigUint = inner.0.parse().map_err(|_| bad_number(inner.0))?;
            let m: usize = inner.1.parse().map_err(|_| bad_number(inner.1))?;
            divisors.extend(std::iter::repeat_n(d, m));
        }
        Ok(Self::new(divisors))
    }
}
