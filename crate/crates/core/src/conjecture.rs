//! Predicted multiplicities `T_i(n)` of `C_{p^i}` in `SK1(Z[C_{p^n} x C_{p^n}])`
//! and comparison against computed decompositions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::arith::{self, checked_pow};
use crate::snf::CyclicDecomposition;
use crate::{Error, Result};

/// `T_i(n) = (p-1) (2^{E(i)} p^{n - (floor(i/2) + 2)} + (n - 2i) p^{i-1})`,
/// with `E(i) = 1` for even `i` and `0` for odd `i`.
#[allow(non_snake_case)]
pub fn T(p: u64, i: u32, n: u32) -> Result<u64> {
    arith::require_odd_prime(p)?;
    if i == 0 || n < 2 * i {
        return Err(Error::BadParams(format!("T_i(n) needs 1 <= i and 2i <= n, got i={i}, n={n}")));
    }
    let overflow = || Error::BadParams(format!("T_{i}({n}) overflows"));
    let lead = if i % 2 == 0 { 2 } else { 1 };
    let first =
        checked_pow(p, n - (i / 2 + 2)).and_then(|x| x.checked_mul(lead)).ok_or_else(overflow)?;
    let second = checked_pow(p, i - 1)
        .and_then(|x| x.checked_mul((n - 2 * i) as u64))
        .ok_or_else(overflow)?;
    first.checked_add(second).and_then(|x| x.checked_mul(p - 1)).ok_or_else(overflow)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjecturePrediction {
    pub p: u64,
    pub n: u32,
    /// `i -> multiplicity of C_{p^i}` for `0 < i < n`.
    pub multiplicities: BTreeMap<u32, u64>,
}

impl ConjecturePrediction {
    pub fn multiplicity(&self, i: u32) -> u64 {
        self.multiplicities.get(&i).copied().unwrap_or(0)
    }

    pub fn to_decomposition(&self) -> CyclicDecomposition {
        let mut divisors = Vec::new();
        for (&i, &mult) in &self.multiplicities {
            let d = BigUint::from(self.p).pow(i);
            divisors.extend(std::iter::repeat_n(d, mult as usize));
        }
        CyclicDecomposition::new(divisors)
    }
}

/// Multiplicity `T_i(n)` for `2i <= n` and `T_{n-i}(2(n-i))` beyond; none at `i = n`.
pub fn predicted_decomposition(p: u64, n: u32) -> Result<ConjecturePrediction> {
    arith::require_odd_prime(p)?;
    if n < 2 {
        return Err(Error::BadParams(format!("prediction needs n >= 2, got {n}")));
    }
    let multiplicities = (1..n)
        .map(|i| {
            let m = if 2 * i <= n { T(p, i, n) } else { T(p, n - i, 2 * (n - i)) };
            m.map(|m| (i, m))
        })
        .collect::<Result<_>>()?;
    Ok(ConjecturePrediction { p, n, multiplicities })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub p: u64,
    pub n: u32,
    /// `i -> (predicted, computed)` for `1 <= i <= n`.
    pub rows: BTreeMap<u32, (u64, u64)>,
    /// Computed divisors that are not `p^i` for `1 <= i <= n`.
    pub unexpected: Vec<BigUint>,
    pub matched: bool,
}

impl VerifyReport {
    /// The rows where prediction and computation disagree.
    pub fn diffs(&self) -> BTreeMap<u32, (u64, u64)> {
        self.rows.iter().filter(|(_, (a, b))| a != b).map(|(&i, &v)| (i, v)).collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "i\tC_p^i\tpredicted\tcomputed")?;
        for (i, (pred, comp)) in &self.rows {
            let mark = if pred == comp { "" } else { "\t*" };
            writeln!(f, "{i}\t{}\t{pred}\t{comp}{mark}", BigUint::from(self.p).pow(*i))?;
        }
        for d in &self.unexpected {
            writeln!(f, "unexpected divisor {d}")?;
        }
        write!(f, "{}", if self.matched { "MATCH" } else { "MISMATCH" })
    }
}

/// Compares a computed `SK1(Z[C_{p^n} x C_{p^n}])` with the prediction.
pub fn verify(p: u64, n: u32, computed: &CyclicDecomposition) -> Result<VerifyReport> {
    let pred = predicted_decomposition(p, n)?;
    let counts = computed.multiplicities();
    let mut rows = BTreeMap::new();
    let mut expected_divisors = Vec::new();
    for i in 1..=n {
        let d = BigUint::from(p).pow(i);
        let got = counts.get(&d).map_or(0, |&m| m as u64);
        rows.insert(i, (pred.multiplicity(i), got));
        expected_divisors.push(d);
    }
    let unexpected: Vec<BigUint> =
        counts.keys().filter(|d| !expected_divisors.contains(d)).cloned().collect();
    let matched = unexpected.is_empty() && rows.values().all(|(a, b)| a == b);
    Ok(VerifyReport { p, n, rows, unexpected, matched })
}
