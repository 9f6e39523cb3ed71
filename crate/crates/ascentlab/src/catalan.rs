//! Catalan numbers and k-fold Catalan convolutions, computed exactly by
//! three independent routes plus a lattice-path dynamic program.
//!
//! Routes:
//! 1. closed form `C(n,k) = k/(2n-k) * binom(2n-k, n)` ([`catalan_convolution`]),
//! 2. the triangular recurrence `A(n,k) = A(n-1,k-1) + A(n,k+1)`
//!    ([`convolution_table_recursive`]),
//! 3. the definitional sum over compositions ([`convolution_by_definition`]).
//!
//! All arithmetic is on arbitrary-precision non-negative integers; every
//! division in a closed form is checked exact.

use std::io::Write as IoWrite;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact non-negative count.
pub type BigCount = BigUint;

/// Default cap for [`convolution_by_definition`]; the composition sum is
/// only needed as a small-instance oracle.
pub const DEFINITION_SUM_CAP: u64 = 16;

/// Exact division that panics on a nonzero remainder. A remainder here
/// means a closed-form transcription bug, not a recoverable input error.
fn div_exact(num: BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "inexact division by {den} (remainder {r})");
    q
}

/// Exact binomial coefficient `binom(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = div_exact(acc * BigUint::from(n - i), &BigUint::from(i + 1));
    }
    acc
}

/// The `n`th Catalan number `binom(2n, n) / (n + 1)`, exactly.
pub fn catalan(n: u64) -> BigCount {
    div_exact(binomial(2 * n, n), &BigUint::from(n + 1))
}

/// The k-fold Catalan convolution `C(n,k) = k/(2n-k) * binom(2n-k, n)`.
///
/// `k = 0` returns 0 and `k = n` returns 1, matching the recurrence base
/// cases. Errors on `n < 1` or `k > n`.
pub fn catalan_convolution(n: u64, k: u64) -> Result<BigCount> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("catalan_convolution needs n >= 1, got n={n}")));
    }
    if k > n {
        return Err(Error::OutOfRange(format!(
            "catalan_convolution needs k <= n, got k={k}, n={n}"
        )));
    }
    if k == 0 {
        return Ok(BigUint::zero());
    }
    if k == n {
        return Ok(BigUint::one());
    }
    let num = BigUint::from(k) * binomial(2 * n - k, n);
    Ok(div_exact(num, &BigUint::from(2 * n - k)))
}

/// The convolution evaluated from its definition: the sum over all
/// compositions `i_1 + ... + i_k = n` (each part >= 1) of
/// `prod_r catalan(i_r - 1)`.
///
/// Independent oracle for [`catalan_convolution`]; capped at
/// [`DEFINITION_SUM_CAP`] by default since the composition count grows as
/// `binom(n-1, k-1)`.
pub fn convolution_by_definition(n: u64, k: u64) -> Result<BigCount> {
    convolution_by_definition_capped(n, k, DEFINITION_SUM_CAP)
}

/// [`convolution_by_definition`] with an explicit cap on `n`.
pub fn convolution_by_definition_capped(n: u64, k: u64, cap: u64) -> Result<BigCount> {
    if !(1 <= k && k <= n) {
        return Err(Error::OutOfRange(format!(
            "convolution_by_definition needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    if n > cap {
        return Err(Error::OutOfRange(format!(
            "convolution_by_definition is capped at n <= {cap}, got n={n}"
        )));
    }
    let cats: Vec<BigUint> = (0..n).map(catalan).collect();

    // Walk all compositions of n into k positive parts, multiplying in
    // catalan(part - 1) per level.
    fn walk(remaining: u64, parts_left: u64, prod: BigUint, cats: &[BigUint], sum: &mut BigUint) {
        if parts_left == 1 {
            *sum += prod * &cats[(remaining - 1) as usize];
            return;
        }
        // each later part needs at least 1
        for first in 1..=(remaining - (parts_left - 1)) {
            walk(
                remaining - first,
                parts_left - 1,
                prod.clone() * &cats[(first - 1) as usize],
                cats,
                sum,
            );
        }
    }
    let mut sum = BigUint::zero();
    walk(n, k, BigUint::one(), &cats, &mut sum);
    Ok(sum)
}

/// Triangular table of counts `A(n, k)` for `1 <= k <= n <= n_max`, with
/// implicit zeros at `k = 0` and `k > n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    n_max: u64,
    rows: Vec<Vec<BigCount>>, // rows[n-1][k-1]
}

impl CountTable {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Cell `(n, k)`; zero outside the triangle.
    pub fn get(&self, n: u64, k: u64) -> BigCount {
        if n == 0 || n > self.n_max || k == 0 || k > n {
            BigUint::zero()
        } else {
            self.rows[(n - 1) as usize][(k - 1) as usize].clone()
        }
    }

    /// Row `n` as the slice `[A(n,1), ..., A(n,n)]`.
    pub fn row(&self, n: u64) -> &[BigCount] {
        &self.rows[(n - 1) as usize]
    }

    pub fn row_sum(&self, n: u64) -> BigCount {
        self.row(n).iter().sum()
    }

    /// CSV with header `n,k,count`.
    pub fn to_csv<W: IoWrite>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "n,k,count")?;
        for n in 1..=self.n_max {
            for k in 1..=n {
                writeln!(out, "{n},{k},{}", self.get(n, k))?;
            }
        }
        Ok(())
    }

    /// JSON as nested arrays of decimal strings (counts overflow 53-bit
    /// float-safe integers around n = 35, so native numbers are never used).
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect();
        serde_json::json!({ "n_max": self.n_max, "rows": rows })
    }
}

/// Fills the `A(n,k)` triangle by the recurrence
/// `A(n,k) = A(n-1,k-1) + A(n,k+1)` with `A(n,n) = 1` and `A(n,0) = 0`,
/// descending `k` within each row.
pub fn convolution_table_recursive(n_max: u64) -> Result<CountTable> {
    if n_max < 1 {
        return Err(Error::OutOfRange(format!("table needs n_max >= 1, got {n_max}")));
    }
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max as usize {
        let mut row = vec![BigUint::zero(); n];
        row[n - 1] = BigUint::one();
        for k in (1..n).rev() {
            // A(n-1, k-1): zero when k-1 == 0
            let up_left = if k >= 2 { rows[n - 2][k - 2].clone() } else { BigUint::zero() };
            row[k - 1] = up_left + &row[k];
        }
        rows.push(row);
    }
    Ok(CountTable { n_max, rows })
}

/// Counts monotone E/N paths from `(a, b)` to `(n, n)` that never cross
/// above the diagonal, by a column-major dynamic program.
pub fn count_good_paths(from: (i64, i64), n: i64) -> Result<BigCount> {
    let (a, b) = from;
    if b > a {
        return Err(Error::OutOfRange(format!(
            "start ({a}, {b}) lies above the diagonal"
        )));
    }
    if a > n || b > n {
        return Err(Error::OutOfRange(format!(
            "start ({a}, {b}) lies beyond the endpoint ({n}, {n})"
        )));
    }
    // col[y - b] = number of good paths from (a, b) to (x, y)
    let height = (n - b + 1) as usize;
    let mut col = vec![BigUint::zero(); height];
    col[0] = BigUint::one();
    for x in a..=n {
        let y_top = x.min(n);
        // north steps within column x
        for y in (b + 1)..=y_top {
            let idx = (y - b) as usize;
            let below = col[idx - 1].clone();
            col[idx] += below;
        }
        // cells with y > x are unreachable; clear any stale values
        for y in (y_top + 1)..=n {
            col[(y - b) as usize] = BigUint::zero();
        }
    }
    Ok(col[(n - b) as usize].clone())
}
