//! The cross-verification battery behind `verify-all`.
//!
//! Each check pits independent computation routes against each other:
//! closed forms against recurrences and definitional sums, formulas against
//! brute-force censuses, bijections against exhaustive roundtrips, and
//! closed-form generating functions against truncated series.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bijections::{
    krattenthaler_from_path, krattenthaler_to_path, lemma32_check, phi_inverse, phi_max_position,
};
use crate::catalan::{
    catalan, catalan_convolution, convolution_by_definition, convolution_table_recursive,
    count_good_paths,
};
use crate::distributions::{
    avoider_first_ascent_pmf, avoider_first_ascent_pmf_closed_form, avoider_mean_exact,
    geomlike_pgf, geomlike_pgf_series, limit_first_ascent_pgf, limit_first_ascent_pgf_series,
    limit_first_ascent_pmf_exact, rational_to_f64, uniform_perm_first_ascent_pmf,
    LIMIT_W_TRUNCATION, LIMIT_X_TRUNCATION,
};
use crate::error::Result;
use crate::oracle::{census, enumerate_avoiders_bruteforce, grow_avoiders, CensusMethod};
use crate::path::{LatticePath, Step};
use crate::perm::Permutation;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        CheckResult { name, passed: true, detail: detail.into() }
    }

    fn from(name: &'static str, outcome: Result<String>) -> Self {
        match outcome {
            Ok(detail) => CheckResult::pass(name, detail),
            Err(e) => CheckResult { name, passed: false, detail: e.to_string() },
        }
    }
}

/// Sweep sizes; `quick()` trims them so the whole battery runs in seconds.
#[derive(Debug, Clone, Copy)]
pub struct SweepSizes {
    pub table_n_max: u64,
    pub definition_n_max: u64,
    pub oracle_n_max: usize,
    pub path_n_max: i64,
}

impl SweepSizes {
    pub fn default_sizes() -> Self {
        SweepSizes { table_n_max: 50, definition_n_max: 12, oracle_n_max: 8, path_n_max: 20 }
    }

    pub fn quick() -> Self {
        SweepSizes { table_n_max: 20, definition_n_max: 8, oracle_n_max: 6, path_n_max: 10 }
    }
}

fn err(msg: String) -> crate::Error {
    crate::Error::Verify(msg)
}

fn check_three_routes(sizes: &SweepSizes) -> Result<String> {
    let table = convolution_table_recursive(sizes.table_n_max)?;
    let mut cells = 0u64;
    for n in 1..=sizes.table_n_max {
        for k in 1..=n {
            let closed = catalan_convolution(n, k)?;
            if closed != table.get(n, k) {
                return Err(err(format!("closed form != recurrence at (n={n}, k={k})")));
            }
            if n <= sizes.definition_n_max && closed != convolution_by_definition(n, k)? {
                return Err(err(format!("closed form != definition sum at (n={n}, k={k})")));
            }
            cells += 1;
        }
        if table.row_sum(n) != catalan(n) {
            return Err(err(format!("row sum != catalan({n})")));
        }
        if n >= 2 && table.get(n, 1) != table.get(n, 2) {
            return Err(err(format!("A({n},1) != A({n},2)")));
        }
    }
    Ok(format!("{cells} cells agree across routes, row sums match"))
}

fn check_recurrence_identity(sizes: &SweepSizes) -> Result<String> {
    let mut checked = 0u64;
    for n in 2..=sizes.table_n_max {
        for k in 1..n {
            let lhs = catalan_convolution(n - 1, k - 1)? + catalan_convolution(n, k + 1)?;
            if lhs != catalan_convolution(n, k)? {
                return Err(err(format!("recurrence identity fails at (n={n}, k={k})")));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} identity instances hold"))
}

fn check_oracle_vs_formula(sizes: &SweepSizes) -> Result<String> {
    for n in 1..=sizes.oracle_n_max {
        let c = census(n, CensusMethod::BruteForce)?;
        if c.total != catalan(n as u64) {
            return Err(err(format!("census total != catalan({n})")));
        }
        for k in 1..=n {
            let conv = catalan_convolution(n as u64, k as u64)?;
            if c.first_ascent_count(k) != conv {
                return Err(err(format!("first-ascent census != C({n},{k})")));
            }
            if c.max_position_count(k) != conv {
                return Err(err(format!("max-position census != C({n},{k})")));
            }
        }
        let grown: std::collections::BTreeSet<Permutation> = grow_avoiders(n)?.collect();
        let brute: std::collections::BTreeSet<Permutation> =
            enumerate_avoiders_bruteforce(n)?.collect();
        if grown != brute {
            return Err(err(format!("growth and brute-force sets differ at n={n}")));
        }
    }
    Ok(format!("censuses match convolutions up to n={}", sizes.oracle_n_max))
}

fn all_dyck_paths(n: usize) -> Vec<LatticePath> {
    fn rec(e_left: usize, n_left: usize, word: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if e_left == 0 && n_left == 0 {
            out.push(word.clone());
            return;
        }
        if e_left > 0 {
            word.push(Step::E);
            rec(e_left - 1, n_left, word, out);
            word.pop();
        }
        if n_left > e_left {
            word.push(Step::N);
            rec(e_left, n_left - 1, word, out);
            word.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n, n, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|s| LatticePath::dyck(s).unwrap()).collect()
}

fn check_krattenthaler(sizes: &SweepSizes) -> Result<String> {
    let worked: Permutation = "76584213".parse()?;
    let path = krattenthaler_to_path(&worked)?;
    if path.to_string() != "XXXXYYYYXYXXXYYY" {
        return Err(err(format!("worked example maps to {path}")));
    }
    if krattenthaler_from_path(&"XXXXYYYYXYXXXYYY".parse()?)? != worked {
        return Err(err("worked example inverse mismatch".into()));
    }
    let mut total = 0usize;
    for n in 1..=sizes.oracle_n_max {
        let mut images = std::collections::BTreeSet::new();
        for p in enumerate_avoiders_bruteforce(n)? {
            let d = krattenthaler_to_path(&p)?;
            if krattenthaler_from_path(&d)? != p {
                return Err(err(format!("roundtrip fails on {p}")));
            }
            if !images.insert(d.to_string()) {
                return Err(err(format!("path collision at {p}")));
            }
            total += 1;
        }
        let dycks = all_dyck_paths(n);
        if BigUint::from(dycks.len()) != catalan(n as u64) || images.len() != dycks.len() {
            return Err(err(format!("image is not all Dyck paths at n={n}")));
        }
        for d in dycks {
            if krattenthaler_to_path(&krattenthaler_from_path(&d)?)? != d {
                return Err(err(format!("dual roundtrip fails on {d}")));
            }
        }
    }
    Ok(format!("{total} avoiders roundtrip; image covers every Dyck path"))
}

fn check_lemma32(sizes: &SweepSizes) -> Result<String> {
    let mut total = 0usize;
    for n in 2..=sizes.oracle_n_max {
        for p in enumerate_avoiders_bruteforce(n)? {
            if p.first_ascent_position() == n {
                continue;
            }
            lemma32_check(&p)?;
            total += 1;
        }
    }
    Ok(format!("mu located and verified on {total} avoiders"))
}

fn check_theorem33(sizes: &SweepSizes) -> Result<String> {
    for n in 1..=sizes.path_n_max {
        for k in 1..=n {
            let direct = count_good_paths((k, 1), n)?;
            let conv = catalan_convolution(n as u64, k as u64)?;
            if direct != conv {
                return Err(err(format!("goodpaths((k,1)->(n,n)) != C({n},{k})")));
            }
            // the shifted starts (k+1, i) only exist when an ascent does,
            // i.e. k <= n - 1
            if k < n {
                let mut sum = BigUint::zero();
                for i in 1..=k {
                    sum += count_good_paths((k + 1, i), n)?;
                }
                if sum != conv {
                    return Err(err(format!("shift sum != C({n},{k})")));
                }
            }
        }
    }
    Ok(format!("counting identities hold up to n={}", sizes.path_n_max))
}

fn check_phi(sizes: &SweepSizes) -> Result<String> {
    let mut total = 0usize;
    for n in 2..=sizes.oracle_n_max {
        for p in enumerate_avoiders_bruteforce(n)? {
            if p.first_ascent_position() >= 2 {
                let q = phi_max_position(&p)?;
                if phi_inverse(&q)? != p {
                    return Err(err(format!("phi roundtrip fails on {p}")));
                }
                total += 1;
            }
            if p.position_of_max() >= 2 {
                let back = phi_inverse(&p)?;
                if phi_max_position(&back)? != p {
                    return Err(err(format!("phi-inverse roundtrip fails on {p}")));
                }
            }
        }
    }
    Ok(format!("{total} phi roundtrips hold"))
}

fn check_pmf_normalization(sizes: &SweepSizes) -> Result<String> {
    for n in 1..=sizes.table_n_max {
        let su: BigRational = (1..=n).map(|k| uniform_perm_first_ascent_pmf(n, k).unwrap()).sum();
        if !su.is_one() {
            return Err(err(format!("uniform-perm pmf sums to {su} at n={n}")));
        }
        let sa: BigRational = (1..=n).map(|k| avoider_first_ascent_pmf(n, k).unwrap()).sum();
        if !sa.is_one() {
            return Err(err(format!("avoider pmf sums to {sa} at n={n}")));
        }
    }
    let route_max = sizes.table_n_max.min(30);
    for n in 1..=route_max {
        for k in 1..=n {
            if avoider_first_ascent_pmf(n, k)? != avoider_first_ascent_pmf_closed_form(n, k)? {
                return Err(err(format!("avoider pmf routes disagree at (n={n}, k={k})")));
            }
        }
    }
    Ok(format!("exact normalization to n={}, route agreement to n={route_max}", sizes.table_n_max))
}

fn check_limit_laws(_sizes: &SweepSizes) -> Result<String> {
    // series mean vs e - 1
    let mean: BigRational = (1..=LIMIT_X_TRUNCATION)
        .map(|x| BigRational::from(num_bigint::BigInt::from(x)) * limit_first_ascent_pmf_exact(x).unwrap())
        .sum();
    let gap = (rational_to_f64(&mean) - (std::f64::consts::E - 1.0)).abs();
    if gap >= 1e-12 {
        return Err(err(format!("series mean off e-1 by {gap}")));
    }

    for &s in &[-0.5, 0.25, 0.5, 0.9] {
        let dx = (limit_first_ascent_pgf(s) - limit_first_ascent_pgf_series(s, LIMIT_X_TRUNCATION)).abs();
        if dx >= 1e-10 {
            return Err(err(format!("pgf of X off its series by {dx} at s={s}")));
        }
        let dw = (geomlike_pgf(s)? - geomlike_pgf_series(s, LIMIT_W_TRUNCATION)).abs();
        if dw >= 1e-10 {
            return Err(err(format!("pgf of W off its series by {dw} at s={s}")));
        }
    }

    let h = 1e-5;
    let dx = (limit_first_ascent_pgf(1.0 + h) - limit_first_ascent_pgf(1.0 - h)) / (2.0 * h);
    if (dx - (std::f64::consts::E - 1.0)).abs() >= 1e-6 {
        return Err(err(format!("pgf'(1) of X is {dx}, expected e-1")));
    }
    let dw = (geomlike_pgf(1.0 + h)? - geomlike_pgf(1.0 - h)?) / (2.0 * h);
    if (dw - 3.0).abs() >= 1e-6 {
        return Err(err(format!("pgf'(1) of W is {dw}, expected 3")));
    }

    // avoider mean climbs monotonically toward 3 from below
    let three = BigRational::from(num_bigint::BigInt::from(3));
    let mut prev_gap: Option<BigRational> = None;
    for &n in &[10u64, 20, 50, 100, 200] {
        let mean = avoider_mean_exact(n);
        if mean >= three {
            return Err(err(format!("avoider mean at n={n} not below 3")));
        }
        let gap = (three.clone() - mean).abs();
        if let Some(prev) = &prev_gap {
            if &gap >= prev {
                return Err(err(format!("|mean - 3| not shrinking at n={n}")));
            }
        }
        prev_gap = Some(gap);
    }
    Ok("series, pgfs, derivatives, and mean monotonicity all within tolerance".into())
}

/// Runs the whole battery and returns one result per check.
pub fn run_all(quick: bool) -> Vec<CheckResult> {
    let sizes = if quick { SweepSizes::quick() } else { SweepSizes::default_sizes() };
    vec![
        CheckResult::from("three-route convolution agreement", check_three_routes(&sizes)),
        CheckResult::from("convolution recurrence identity", check_recurrence_identity(&sizes)),
        CheckResult::from("oracle census vs formula", check_oracle_vs_formula(&sizes)),
        CheckResult::from("krattenthaler bijection roundtrips", check_krattenthaler(&sizes)),
        CheckResult::from("leftmost word-preceded maximum", check_lemma32(&sizes)),
        CheckResult::from("good-path counting identities", check_theorem33(&sizes)),
        CheckResult::from("phi / phi-inverse roundtrips", check_phi(&sizes)),
        CheckResult::from("pmf normalization and route agreement", check_pmf_normalization(&sizes)),
        CheckResult::from("limit-law moments and pgfs", check_limit_laws(&sizes)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_battery_is_green() {
        for r in run_all(true) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
