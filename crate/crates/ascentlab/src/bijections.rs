//! Executable bijections between 123-avoiding permutations and lattice paths.
//!
//! Contains the Krattenthaler map (permutation -> Dyck path via the RLM
//! decomposition) together with a reconstructed inverse, the structural
//! check on the leftmost word-preceded maximum, the path-shift underlying
//! the convolution counting identity, and the max-relocation map `phi`
//! between first-ascent and max-position classes.

use crate::error::{Error, Result};
use crate::path::{LatticePath, Step};
use crate::perm::Permutation;

fn require_avoiding(p: &Permutation) -> Result<()> {
    if p.is_123_avoiding() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{p} is not 123-avoiding")))
    }
}

/// Maps a 123-avoiding permutation to its Dyck path: each word `w_i`
/// contributes `|w_i| + 1` east steps, each maximum `m_i` contributes
/// `m_i - m_{i-1}` north steps, where `m_{i-1}` is the next maximum to the
/// right and `m_0 = 0`.
pub fn krattenthaler_to_path(p: &Permutation) -> Result<LatticePath> {
    require_avoiding(p)?;
    let d = p.right_to_left_maxima();
    let mut steps = Vec::with_capacity(2 * p.len());
    for (i, (word, &(_, m))) in d.words.iter().zip(&d.maxima).enumerate() {
        let next_right = d.maxima.get(i + 1).map(|&(_, v)| v).unwrap_or(0);
        steps.extend(std::iter::repeat(Step::E).take(word.len() + 1));
        steps.extend(std::iter::repeat(Step::N).take((m - next_right) as usize));
    }
    LatticePath::dyck(steps)
}

/// Inverts [`krattenthaler_to_path`].
///
/// Parses the path into `(east_run, north_run)` blocks; the maxima are the
/// suffix sums of the north runs (first-encountered maximum is `n`), word
/// lengths are `east_run - 1`, and the non-maximum values, sorted
/// descending, fill the words left to right. The filling is forced: in a
/// 123-avoiding permutation the non-maxima form a single decreasing
/// subsequence.
pub fn krattenthaler_from_path(path: &LatticePath) -> Result<Permutation> {
    if !path.is_dyck() || path.is_empty() {
        let (x, y) = path.end();
        return Err(Error::Precondition(format!(
            "expected a nonempty Dyck path from (0,0), got one from {:?} to ({x}, {y})",
            path.start()
        )));
    }
    if *path.steps().last().unwrap() == Step::E {
        return Err(Error::Precondition("Dyck path must end with a north step".into()));
    }
    let blocks = path.runs();
    let n = path.order() as u32;

    // maxima: suffix sums of north runs in encounter order
    let mut maxima = Vec::with_capacity(blocks.len());
    let mut remaining = n;
    for &(_, d) in &blocks {
        maxima.push(remaining);
        remaining -= d as u32;
    }
    debug_assert_eq!(remaining, 0);

    let is_max = {
        let mut flags = vec![false; n as usize + 1];
        for &m in &maxima {
            flags[m as usize] = true;
        }
        flags
    };
    let mut fillers: Vec<u32> = (1..=n).rev().filter(|&v| !is_max[v as usize]).collect();

    let mut entries = Vec::with_capacity(n as usize);
    let mut next = fillers.drain(..);
    for (&(a, _), &m) in blocks.iter().zip(&maxima) {
        for _ in 0..a - 1 {
            entries.push(next.next().expect("word letters exhausted"));
        }
        entries.push(m);
    }
    let p = Permutation::new(entries)?;
    debug_assert!(p.is_123_avoiding());
    Ok(p)
}

/// The case split for [`lemma32_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma32Case {
    /// The leftmost word-preceded maximum is the value `n`.
    MuEqualsN,
    /// It is one less than the nearest right-to-left maximum to its left.
    MuIsPredecessorMinusOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma32Report {
    pub first_ascent: usize,
    pub mu_position: usize,
    pub mu_value: u32,
    pub case: Lemma32Case,
}

/// Locates `mu`, the leftmost right-to-left maximum preceded by a
/// non-empty word, and checks that it sits at position `k + 1` (with `k`
/// the first ascent) and is either `n` or one less than the maximum to its
/// left. Rejects the strictly decreasing permutation, where no word is
/// non-empty.
pub fn lemma32_check(p: &Permutation) -> Result<Lemma32Report> {
    require_avoiding(p)?;
    let k = p.first_ascent_position();
    if k == p.len() {
        return Err(Error::Precondition(format!(
            "{p} is strictly decreasing; mu is undefined"
        )));
    }
    let d = p.right_to_left_maxima();
    let idx = d
        .words
        .iter()
        .position(|w| !w.is_empty())
        .expect("a non-descending avoider has a non-empty word");
    let (mu_position, mu_value) = d.maxima[idx];

    if mu_position != k + 1 {
        return Err(Error::Verify(format!(
            "mu of {p} is at position {mu_position}, expected k+1 = {}",
            k + 1
        )));
    }
    let case = if mu_value == p.len() as u32 {
        Lemma32Case::MuEqualsN
    } else {
        let left_neighbor = d.maxima[idx - 1].1;
        if mu_value + 1 != left_neighbor {
            return Err(Error::Verify(format!(
                "mu = {mu_value} of {p} is not one less than the maximum {left_neighbor} to its left"
            )));
        }
        Lemma32Case::MuIsPredecessorMinusOne
    };
    Ok(Lemma32Report {
        first_ascent: k,
        mu_position,
        mu_value,
        case,
    })
}

/// Shifts a good path from `(k, 1)` to `(n, n)` by dropping its leading
/// north run (length `j >= 0`) and the east step that follows, leaving a
/// good path from `(k + 1, 1 + j)`.
pub fn theorem33_path_shift(path: &LatticePath) -> Result<LatticePath> {
    let (k, y0) = path.start();
    if y0 != 1 {
        return Err(Error::Precondition(format!(
            "path-shift input must start at (k, 1), got {:?}",
            path.start()
        )));
    }
    let (nx, ny) = path.end();
    if nx != ny {
        return Err(Error::Precondition(format!(
            "path-shift input must end on the diagonal, got ({nx}, {ny})"
        )));
    }
    let j = path.steps().iter().take_while(|s| **s == Step::N).count();
    match path.steps().get(j) {
        Some(Step::E) => {}
        _ => {
            return Err(Error::Precondition(
                "path has no east step after its leading north run".into(),
            ))
        }
    }
    LatticePath::new((k + 1, 1 + j as i64), path.steps()[j + 1..].to_vec())
}

/// Moves the letter `n` to position `k` (the first-ascent position),
/// keeping all other letters in relative order. Defined for avoiders with
/// first ascent `k >= 2`; `n` then sits at position 1 or `k + 1`. The image
/// has `n` in position `k` and first ascent `k - 1`.
pub fn phi_max_position(p: &Permutation) -> Result<Permutation> {
    require_avoiding(p)?;
    let n = p.len();
    let k = p.first_ascent_position();
    if k < 2 {
        return Err(Error::Precondition(format!(
            "phi needs first ascent k >= 2, {p} has k = {k}"
        )));
    }
    let max_pos = p.position_of_max();
    if max_pos != 1 && max_pos != k + 1 {
        return Err(Error::Precondition(format!(
            "phi expects {n} at position 1 or {}, found it at {max_pos} in {p}",
            k + 1
        )));
    }
    Ok(move_max_to(p, k))
}

/// Relocates the letter `n` to 1-indexed position `target`.
fn move_max_to(p: &Permutation, target: usize) -> Permutation {
    let n = p.len() as u32;
    let mut rest: Vec<u32> = p.entries().iter().copied().filter(|&v| v != n).collect();
    rest.insert(target - 1, n);
    Permutation::from_valid(rest)
}

/// Inverts [`phi_max_position`]. With `n` at position `k >= 2`: if
/// `q(k-1) < q(k+1)` the letter `n` came from the front, otherwise from
/// position `k + 1`. A missing `(k+1)`st entry (the case `k = n`) is
/// treated as the front branch, which sends the unique avoider ending in
/// `n` back to the strictly decreasing permutation.
pub fn phi_inverse(q: &Permutation) -> Result<Permutation> {
    require_avoiding(q)?;
    let n = q.len();
    let k = q.position_of_max();
    if k < 2 {
        return Err(Error::Precondition(format!(
            "phi_inverse needs the maximum at position k >= 2, {q} has it at {k}"
        )));
    }
    let from_front = if k == n {
        true
    } else {
        q.entry(k - 1) < q.entry(k + 1)
    };
    let target = if from_front { 1 } else { k + 1 };
    Ok(move_max_to(q, target))
}
