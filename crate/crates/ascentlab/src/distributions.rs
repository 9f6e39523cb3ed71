//! First-ascent distributions: exact finite PMFs, their infinite limits
//! with moments and generating functions, and seeded uniform samplers with
//! Monte Carlo estimation.
//!
//! Finite-n laws are exact rationals end to end. The two limit laws are
//! evaluated in floating point with documented truncation points: the
//! factorial-tailed law at 60 terms, the geometric-like law at 200.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijections::krattenthaler_from_path;
use crate::catalan::{catalan, catalan_convolution};
use crate::error::{Error, Result};
use crate::path::{LatticePath, Step};
use crate::perm::Permutation;

/// Exact probability; canonical form is maintained by `num-rational`.
pub type ExactRational = BigRational;

/// Truncation for series checks of the factorial-tailed limit law.
pub const LIMIT_X_TRUNCATION: u64 = 60;
/// Truncation for series checks of the geometric-like limit law.
pub const LIMIT_W_TRUNCATION: u64 = 200;

fn big_factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn ratio(num: BigUint, den: BigUint) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// P(first ascent of a uniform random permutation of `[n]` is at `k`):
/// `k/(k+1)!` for `k <= n-1`, and `1/n!` for `k = n` (the strictly
/// decreasing permutation).
pub fn uniform_perm_first_ascent_pmf(n: u64, k: u64) -> Result<ExactRational> {
    if !(1 <= k && k <= n) {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if k == n {
        Ok(ratio(BigUint::one(), big_factorial(n)))
    } else {
        Ok(ratio(BigUint::from(k), big_factorial(k + 1)))
    }
}

/// Exact mean of the finite uniform-permutation first-ascent law.
pub fn uniform_perm_mean_exact(n: u64) -> ExactRational {
    (1..=n)
        .map(|k| BigRational::from(BigInt::from(k)) * uniform_perm_first_ascent_pmf(n, k).unwrap())
        .sum()
}

/// Limit PMF `f(x) = x/(x+1)!` as an exact rational (the closed form is
/// rational term by term; only the moments are irrational).
pub fn limit_first_ascent_pmf_exact(x: u64) -> Result<ExactRational> {
    if x < 1 {
        return Err(Error::OutOfRange(format!("support starts at 1, got {x}")));
    }
    Ok(ratio(BigUint::from(x), big_factorial(x + 1)))
}

/// Limit PMF `f(x) = x/(x+1)!` as a float.
pub fn limit_first_ascent_pmf(x: u64) -> Result<f64> {
    Ok(rational_to_f64(&limit_first_ascent_pmf_exact(x)?))
}

/// Closed-form moments of the limit law: mean `e - 1`, variance `e(3 - e)`.
pub fn limit_first_ascent_moments() -> (f64, f64) {
    let e = std::f64::consts::E;
    (e - 1.0, e * (3.0 - e))
}

/// Probability generating function `E(s^X) = (1 - e^s + s e^s)/s`, with the
/// removable singularity at `s = 0` filled by the series value 0.
pub fn limit_first_ascent_pgf(s: f64) -> f64 {
    if s == 0.0 {
        0.0
    } else {
        (1.0 - s.exp() + s * s.exp()) / s
    }
}

/// Truncated-series evaluation of the same pgf, for cross-checking.
pub fn limit_first_ascent_pgf_series(s: f64, terms: u64) -> f64 {
    let mut sum = 0.0;
    for x in (1..=terms).rev() {
        sum += s.powi(x as i32) * rational_to_f64(&limit_first_ascent_pmf_exact(x).unwrap());
    }
    sum
}

/// P(first ascent of a uniform random 123-avoider of `[n]` is at `k`),
/// exactly, via the convolution-over-Catalan ratio.
pub fn avoider_first_ascent_pmf(n: u64, k: u64) -> Result<ExactRational> {
    if !(1 <= k && k <= n) {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    Ok(ratio(catalan_convolution(n, k)?, catalan(n)))
}

/// The same PMF through the factorial closed form
/// `k (2n-k-1)! (n+1)! / ((2n)! (n-k)!)`; must agree exactly with
/// [`avoider_first_ascent_pmf`].
pub fn avoider_first_ascent_pmf_closed_form(n: u64, k: u64) -> Result<ExactRational> {
    if !(1 <= k && k <= n) {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let num = BigUint::from(k) * big_factorial(2 * n - k - 1) * big_factorial(n + 1);
    let den = big_factorial(2 * n) * big_factorial(n - k);
    Ok(ratio(num, den))
}

/// Exact mean of the finite avoider first-ascent law.
pub fn avoider_mean_exact(n: u64) -> ExactRational {
    (1..=n)
        .map(|k| BigRational::from(BigInt::from(k)) * avoider_first_ascent_pmf(n, k).unwrap())
        .sum()
}

/// The geometric-like limit law `f(w) = w/2^(w+1)`.
pub fn geomlike_pmf(w: u64) -> Result<ExactRational> {
    if w < 1 {
        return Err(Error::OutOfRange(format!("support starts at 1, got {w}")));
    }
    Ok(ratio(BigUint::from(w), BigUint::one() << (w + 1)))
}

/// Mean of the geometric-like law, exactly 3.
pub fn geomlike_mean() -> ExactRational {
    BigRational::from(BigInt::from(3))
}

/// Probability generating function `E(s^W) = s/(s^2 - 4s + 4)`; the series
/// diverges at the double pole `s = 2`, so `|s| >= 2` is rejected.
pub fn geomlike_pgf(s: f64) -> Result<f64> {
    if s.abs() >= 2.0 {
        return Err(Error::OutOfRange(format!("pgf of W needs |s| < 2, got {s}")));
    }
    Ok(s / (s * s - 4.0 * s + 4.0))
}

/// Truncated-series evaluation of the same pgf.
pub fn geomlike_pgf_series(s: f64, terms: u64) -> f64 {
    let mut sum = 0.0;
    for w in (1..=terms).rev() {
        sum += s.powi(w as i32) * w as f64 / 2f64.powi(w as i32 + 1);
    }
    sum
}

/// Per-k absolute error `|avoider pmf(n, k) - k/2^(k+1)|`, illustrating the
/// small-k large-n approximation.
pub fn small_k_approximation_error(n: u64, k_max: u64) -> Result<Vec<(u64, f64)>> {
    if k_max > n {
        return Err(Error::OutOfRange(format!("need k_max <= n, got k_max={k_max}, n={n}")));
    }
    (1..=k_max)
        .map(|k| {
            let exact = avoider_first_ascent_pmf(n, k)?;
            let approx = geomlike_pmf(k)?;
            Ok((k, rational_to_f64(&(exact - approx).abs())))
        })
        .collect()
}

/// Converts an exact rational to the nearest f64, scaling down huge
/// numerators and denominators together so neither overflows on its own.
pub fn rational_to_f64(r: &ExactRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    let shift = (num_bits.max(den_bits) - 900).max(0) as u64;
    let num = r.numer() >> shift;
    let den = r.denom() >> shift;
    num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN)
}

/// The deterministic generator used by every sampler: ChaCha8 keyed by a
/// 64-bit seed. Same seed, same byte stream, on every platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random permutation of `[n]` by Fisher-Yates shuffle.
pub fn sample_uniform_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut word: Vec<u32> = (1..=n as u32).collect();
    word.shuffle(rng);
    Permutation::from_valid(word)
}

/// Uniform random Dyck path of order `n` by the cycle lemma: shuffle
/// `n + 1` east and `n` north steps, rotate to the unique dominating
/// conjugate, drop the leading east step. Exactly uniform, O(n), no
/// rejection.
pub fn sample_uniform_dyck_path<R: Rng>(n: usize, rng: &mut R) -> LatticePath {
    let mut word: Vec<Step> = Vec::with_capacity(2 * n + 1);
    word.extend(std::iter::repeat(Step::E).take(n + 1));
    word.extend(std::iter::repeat(Step::N).take(n));
    word.shuffle(rng);

    // The dominating rotation starts just after the last position where
    // the prefix sum (E = +1, N = -1) attains its minimum.
    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut cut = 0;
    for (i, s) in word.iter().enumerate() {
        sum += match s {
            Step::E => 1,
            Step::N => -1,
        };
        if sum <= min {
            min = sum;
            cut = i + 1;
        }
    }
    let len = word.len();
    word.rotate_left(cut % len);
    debug_assert_eq!(word[0], Step::E);
    LatticePath::dyck(word[1..].to_vec()).expect("cycle lemma yields a good balanced word")
}

/// Uniform random 123-avoider of `[n]`: a uniform Dyck path pushed through
/// the inverse Krattenthaler bijection.
pub fn sample_uniform_avoider<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let path = sample_uniform_dyck_path(n, rng);
    krattenthaler_from_path(&path).expect("sampled path is a nonempty Dyck path")
}

/// Which population [`monte_carlo_first_ascent`] draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Population {
    AllPerms,
    Avoiders,
}

/// Summary of a Monte Carlo run. Mean and variance are recomputed from the
/// histogram, so merged shard results do not depend on evaluation order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub trials: u64,
    pub mean: f64,
    pub variance: f64,
    pub histogram: BTreeMap<usize, u64>,
    pub seed: u64,
}

impl SampleStats {
    fn from_histogram(histogram: BTreeMap<usize, u64>, trials: u64, seed: u64) -> Self {
        let mean = histogram
            .iter()
            .map(|(&k, &c)| k as f64 * c as f64)
            .sum::<f64>()
            / trials as f64;
        let variance = if trials > 1 {
            histogram
                .iter()
                .map(|(&k, &c)| (k as f64 - mean).powi(2) * c as f64)
                .sum::<f64>()
                / (trials as f64 - 1.0)
        } else {
            0.0
        };
        SampleStats {
            trials,
            mean,
            variance,
            histogram,
            seed,
        }
    }

    /// Standard error of the sample mean.
    pub fn standard_error(&self) -> f64 {
        (self.variance / self.trials as f64).sqrt()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let hist: BTreeMap<String, u64> =
            self.histogram.iter().map(|(&k, &c)| (k.to_string(), c)).collect();
        serde_json::json!({
            "trials": self.trials,
            "seed": self.seed.to_string(),
            "mean": self.mean,
            "variance": self.variance,
            "histogram": hist,
        })
    }
}

/// Shard plan is fixed (independent of the worker count) so merged output
/// depends only on `(seed, trials)`.
const MC_SHARDS: u64 = 64;

fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard + 1);
    rng
}

fn run_shard(n: usize, trials: u64, population: Population, rng: &mut ChaCha8Rng) -> BTreeMap<usize, u64> {
    let mut hist = BTreeMap::new();
    for _ in 0..trials {
        let p = match population {
            Population::AllPerms => sample_uniform_permutation(n, rng),
            Population::Avoiders => sample_uniform_avoider(n, rng),
        };
        *hist.entry(p.first_ascent_position()).or_insert(0) += 1;
    }
    hist
}

/// Samples first-ascent positions from the chosen population and tallies
/// them. Deterministic for a fixed `(seed, trials)`; `jobs` only controls
/// how many shards run concurrently.
pub fn monte_carlo_first_ascent(
    n: usize,
    trials: u64,
    population: Population,
    seed: u64,
    jobs: usize,
) -> Result<SampleStats> {
    if trials < 1 {
        return Err(Error::OutOfRange("trials must be >= 1".into()));
    }
    let shards = MC_SHARDS.min(trials);
    let per_shard: Vec<u64> = (0..shards)
        .map(|i| trials / shards + u64::from(i < trials % shards))
        .collect();

    let merged = if jobs <= 1 {
        let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
        for (i, &t) in per_shard.iter().enumerate() {
            let mut rng = shard_rng(seed, i as u64);
            for (k, c) in run_shard(n, t, population, &mut rng) {
                *merged.entry(k).or_insert(0) += c;
            }
        }
        merged
    } else {
        let chunks: Vec<Vec<usize>> = (0..jobs)
            .map(|w| (w..per_shard.len()).step_by(jobs).collect())
            .collect();
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|mine| {
                    let per_shard = &per_shard;
                    scope.spawn(move || {
                        let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
                        for &i in mine {
                            let mut rng = shard_rng(seed, i as u64);
                            for (k, c) in run_shard(n, per_shard[i], population, &mut rng) {
                                *hist.entry(k).or_insert(0) += c;
                            }
                        }
                        hist
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>()
        });
        let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
        for hist in results {
            for (k, c) in hist {
                *merged.entry(k).or_insert(0) += c;
            }
        }
        merged
    };
    Ok(SampleStats::from_histogram(merged, trials, seed))
}

/// A named distribution the CLI can tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmfSpec {
    /// First ascent of a uniform random permutation of `[n]`.
    UniformPerm { n: u64 },
    /// First ascent of a uniform random 123-avoider of `[n]`.
    Avoider { n: u64 },
    /// Infinite limit of the uniform-permutation law, `x/(x+1)!`.
    LimitX,
    /// Geometric-like limit of the avoider law, `w/2^(w+1)`.
    LimitW,
}

impl PmfSpec {
    pub fn name(&self) -> &'static str {
        match self {
            PmfSpec::UniformPerm { .. } => "uniform-perm",
            PmfSpec::Avoider { .. } => "avoider",
            PmfSpec::LimitX => "limit-x",
            PmfSpec::LimitW => "limit-w",
        }
    }

    pub fn support(&self) -> String {
        match self {
            PmfSpec::UniformPerm { n } | PmfSpec::Avoider { n } => format!("1..={n}"),
            PmfSpec::LimitX | PmfSpec::LimitW => "1, 2, ...".into(),
        }
    }

    /// Exact PMF value at `k`; every law here is rational pointwise.
    pub fn pmf(&self, k: u64) -> Result<ExactRational> {
        match self {
            PmfSpec::UniformPerm { n } => uniform_perm_first_ascent_pmf(*n, k),
            PmfSpec::Avoider { n } => avoider_first_ascent_pmf(*n, k),
            PmfSpec::LimitX => limit_first_ascent_pmf_exact(k),
            PmfSpec::LimitW => geomlike_pmf(k),
        }
    }

    /// Mean as a float; exact where the law is finite or the mean rational.
    pub fn mean(&self) -> f64 {
        match self {
            PmfSpec::UniformPerm { n } => rational_to_f64(&uniform_perm_mean_exact(*n)),
            PmfSpec::Avoider { n } => rational_to_f64(&avoider_mean_exact(*n)),
            PmfSpec::LimitX => limit_first_ascent_moments().0,
            PmfSpec::LimitW => 3.0,
        }
    }

    /// Largest k worth tabulating by default.
    pub fn default_k_max(&self) -> u64 {
        match self {
            PmfSpec::UniformPerm { n } | PmfSpec::Avoider { n } => *n,
            PmfSpec::LimitX => 20,
            PmfSpec::LimitW => 30,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> ExactRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn uniform_perm_pmf_values() {
        assert_eq!(uniform_perm_first_ascent_pmf(5, 1).unwrap(), rat(1, 2));
        assert_eq!(uniform_perm_first_ascent_pmf(4, 2).unwrap(), rat(1, 3));
        assert_eq!(uniform_perm_first_ascent_pmf(4, 4).unwrap(), rat(1, 24));
        assert!(uniform_perm_first_ascent_pmf(4, 0).is_err());
        assert!(uniform_perm_first_ascent_pmf(4, 5).is_err());
    }

    #[test]
    fn uniform_perm_pmf_matches_bruteforce_census() {
        // tally first ascents over all n! permutations
        for n in 1..=7u64 {
            let mut counts = vec![0u64; n as usize + 1];
            let mut total = 0u64;
            for p in crate::oracle::lex_permutations(n as usize) {
                counts[p.first_ascent_position()] += 1;
                total += 1;
            }
            for k in 1..=n {
                let expect = rat(counts[k as usize] as i64, total as i64);
                assert_eq!(uniform_perm_first_ascent_pmf(n, k).unwrap(), expect, "(n={n}, k={k})");
            }
        }
    }

    #[test]
    fn finite_pmfs_sum_to_one_exactly() {
        for n in 1..=50u64 {
            let su: ExactRational = (1..=n)
                .map(|k| uniform_perm_first_ascent_pmf(n, k).unwrap())
                .sum();
            assert!(su.is_one(), "uniform n={n}");
            let sa: ExactRational = (1..=n)
                .map(|k| avoider_first_ascent_pmf(n, k).unwrap())
                .sum();
            assert!(sa.is_one(), "avoider n={n}");
        }
    }

    #[test]
    fn avoider_pmf_values_and_two_routes() {
        assert_eq!(avoider_first_ascent_pmf(3, 1).unwrap(), rat(2, 5));
        assert_eq!(avoider_first_ascent_pmf(3, 3).unwrap(), rat(1, 5));
        for n in 1..=30u64 {
            for k in 1..=n {
                assert_eq!(
                    avoider_first_ascent_pmf(n, k).unwrap(),
                    avoider_first_ascent_pmf_closed_form(n, k).unwrap(),
                    "(n={n}, k={k})"
                );
            }
        }
    }

    #[test]
    fn limit_x_pmf_and_series() {
        assert_eq!(limit_first_ascent_pmf_exact(1).unwrap(), rat(1, 2));
        assert_eq!(limit_first_ascent_pmf_exact(2).unwrap(), rat(1, 3));
        assert_eq!(limit_first_ascent_pmf_exact(3).unwrap(), rat(1, 8));

        // exact tail comparison: |1 - sum| < 1e-15 as rationals
        let sum: ExactRational = (1..=LIMIT_X_TRUNCATION)
            .map(|x| limit_first_ascent_pmf_exact(x).unwrap())
            .sum();
        let gap = (BigRational::one() - sum).abs();
        assert!(gap < rat(1, 1_000_000_000_000_000));

        // mean series vs e - 1
        let mean: ExactRational = (1..=LIMIT_X_TRUNCATION)
            .map(|x| BigRational::from(BigInt::from(x)) * limit_first_ascent_pmf_exact(x).unwrap())
            .sum();
        let e_minus_1 = BigRational::from_f64(std::f64::consts::E - 1.0).unwrap();
        let err = (mean - e_minus_1).abs();
        assert!(err < rat(1, 1_000_000_000_000), "mean error {}", rational_to_f64(&err));
    }

    #[test]
    fn limit_x_pgf_checks() {
        assert_eq!(limit_first_ascent_pgf(0.0), 0.0);
        for &s in &[-0.5, 0.25, 0.5, 0.9] {
            let closed = limit_first_ascent_pgf(s);
            let series = limit_first_ascent_pgf_series(s, LIMIT_X_TRUNCATION);
            assert!((closed - series).abs() < 1e-10, "s={s}: {closed} vs {series}");
        }
        // pgf(1) = 1 and pgf'(1) = mean
        assert!((limit_first_ascent_pgf(1.0) - 1.0).abs() < 1e-12);
        let h = 1e-5;
        let deriv = (limit_first_ascent_pgf(1.0 + h) - limit_first_ascent_pgf(1.0 - h)) / (2.0 * h);
        assert!((deriv - (std::f64::consts::E - 1.0)).abs() < 1e-6);
    }

    #[test]
    fn geomlike_values_and_pgf() {
        assert_eq!(geomlike_pmf(1).unwrap(), rat(1, 4));
        assert_eq!(geomlike_pmf(2).unwrap(), rat(1, 4));
        assert_eq!(geomlike_pmf(3).unwrap(), rat(3, 16));
        assert_eq!(geomlike_mean(), rat(3, 1));

        let sum: f64 = (1..=LIMIT_W_TRUNCATION)
            .rev()
            .map(|w| rational_to_f64(&geomlike_pmf(w).unwrap()))
            .sum();
        assert!((sum - 1.0).abs() < 1e-15, "sum {sum}");

        assert!((geomlike_pgf(0.5).unwrap() - 2.0 / 9.0).abs() < 1e-15);
        for &s in &[-0.5, 0.25, 0.5, 0.9] {
            let closed = geomlike_pgf(s).unwrap();
            let series = geomlike_pgf_series(s, LIMIT_W_TRUNCATION);
            assert!((closed - series).abs() < 1e-10, "s={s}");
        }
        assert!(geomlike_pgf(2.0).is_err());
        assert!(geomlike_pgf(-2.5).is_err());

        let h = 1e-5;
        let deriv = (geomlike_pgf(1.0 + h).unwrap() - geomlike_pgf(1.0 - h).unwrap()) / (2.0 * h);
        assert!((deriv - 3.0).abs() < 1e-6);
    }

    #[test]
    fn approximation_error_table() {
        let table = small_k_approximation_error(200, 5).unwrap();
        assert!(table[0].1 < 5e-3, "k=1 error {}", table[0].1);
        // errors shrink as n grows, pointwise on a grid
        for k in 0..5usize {
            let e50 = small_k_approximation_error(50, 5).unwrap()[k].1;
            let e100 = small_k_approximation_error(100, 5).unwrap()[k].1;
            let e200 = small_k_approximation_error(200, 5).unwrap()[k].1;
            assert!(e100 < e50 && e200 < e100, "k={}", k + 1);
        }
        // A(n,1) = A(n,2) carries to the limit: both tend to 1/4
        let t = small_k_approximation_error(200, 2).unwrap();
        assert!((t[0].1 - t[1].1).abs() < 1e-12);
        assert!(small_k_approximation_error(5, 6).is_err());
    }

    #[test]
    fn avoider_mean_climbs_to_three() {
        let three = rat(3, 1);
        let mut last_gap: Option<ExactRational> = None;
        let mut last_mean: Option<ExactRational> = None;
        for &n in &[10u64, 20, 50, 100, 200] {
            let mean = avoider_mean_exact(n);
            assert!(mean < three, "mean at n={n} not below 3");
            if let Some(prev) = &last_mean {
                assert!(&mean > prev, "mean not increasing at n={n}");
            }
            let gap = (three.clone() - mean.clone()).abs();
            if let Some(prev) = &last_gap {
                assert!(&gap < prev, "gap not shrinking at n={n}");
            }
            last_gap = Some(gap);
            last_mean = Some(mean);
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        let a: Vec<Permutation> = {
            let mut rng = seeded_rng(42);
            (0..10).map(|_| sample_uniform_permutation(8, &mut rng)).collect()
        };
        let b: Vec<Permutation> = {
            let mut rng = seeded_rng(42);
            (0..10).map(|_| sample_uniform_permutation(8, &mut rng)).collect()
        };
        assert_eq!(a, b);

        let mut rng = seeded_rng(7);
        assert_eq!(sample_uniform_permutation(1, &mut rng).entries(), &[1]);

        let c: Vec<Permutation> = {
            let mut rng = seeded_rng(42);
            (0..10).map(|_| sample_uniform_avoider(8, &mut rng)).collect()
        };
        let d: Vec<Permutation> = {
            let mut rng = seeded_rng(42);
            (0..10).map(|_| sample_uniform_avoider(8, &mut rng)).collect()
        };
        assert_eq!(c, d);
        assert!(c.iter().all(|p| p.is_123_avoiding()));
    }

    #[test]
    fn permutation_sampler_is_unbiased_at_n3() {
        let mut rng = seeded_rng(1);
        let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let trials = 60_000u64;
        for _ in 0..trials {
            let p = sample_uniform_permutation(3, &mut rng);
            *counts.entry(p.entries().to_vec()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 6);
        let expect = trials as f64 / 6.0;
        let sd = (trials as f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
        for (word, &c) in &counts {
            assert!((c as f64 - expect).abs() < 5.0 * sd, "{word:?}: {c}");
        }
    }

    #[test]
    fn avoider_sampler_is_unbiased_at_n3() {
        let mut rng = seeded_rng(2);
        let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let trials = 50_000u64;
        for _ in 0..trials {
            let p = sample_uniform_avoider(3, &mut rng);
            *counts.entry(p.entries().to_vec()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 5);
        let expect = trials as f64 / 5.0;
        let sd = (trials as f64 * 0.2 * 0.8).sqrt();
        for (word, &c) in &counts {
            assert!((c as f64 - expect).abs() < 5.0 * sd, "{word:?}: {c}");
        }
    }

    #[test]
    fn monte_carlo_merging_is_shard_order_independent() {
        let one = monte_carlo_first_ascent(20, 10_000, Population::AllPerms, 9, 1).unwrap();
        let four = monte_carlo_first_ascent(20, 10_000, Population::AllPerms, 9, 4).unwrap();
        assert_eq!(one.histogram, four.histogram);
        assert_eq!(one.mean, four.mean);
        let total: u64 = one.histogram.values().sum();
        assert_eq!(total, one.trials);
    }

    #[test]
    fn monte_carlo_tracks_exact_means() {
        let stats = monte_carlo_first_ascent(100, 200_000, Population::AllPerms, 11, 4).unwrap();
        let exact = rational_to_f64(&uniform_perm_mean_exact(100));
        assert!(
            (stats.mean - exact).abs() < 4.0 * stats.standard_error(),
            "mean {} vs exact {exact}, se {}",
            stats.mean,
            stats.standard_error()
        );

        let stats = monte_carlo_first_ascent(200, 100_000, Population::Avoiders, 12, 4).unwrap();
        let exact = rational_to_f64(&avoider_mean_exact(200));
        assert!(
            (stats.mean - exact).abs() < 4.0 * stats.standard_error(),
            "mean {} vs exact {exact}, se {}",
            stats.mean,
            stats.standard_error()
        );
    }

    #[test]
    fn rational_to_f64_handles_huge_values() {
        let big = catalan(500); // far beyond f64 integer range
        let r = ratio(big.clone(), big);
        assert!((rational_to_f64(&r) - 1.0).abs() < 1e-12);
        let r2 = ratio(catalan(500), catalan(501));
        assert!(rational_to_f64(&r2) > 0.2 && rational_to_f64(&r2) < 0.3);
    }
}
