//! Ground-truth enumeration of 123-avoiding permutations.
//!
//! Two generators: a factorial brute force (lexicographic filter, small n)
//! and the insertion-growth rule, which builds each avoider of `[n]` exactly
//! once from an avoider of `[n-1]` by inserting the letter `n` at positions
//! 1 through `k + 1`, where `k` is the parent's first ascent.

use std::collections::BTreeMap;
use std::io::Write as IoWrite;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::catalan::BigCount;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Brute force is capped here; n! blows up past this.
pub const BRUTEFORCE_CAP: usize = 9;
/// Growth enumeration cap; catalan(n) permutations are streamed, never stored.
pub const GROW_CAP: usize = 18;

/// All permutations of `[n]` in lexicographic order.
pub fn lex_permutations(n: usize) -> LexPermutations {
    LexPermutations {
        next: Some((1..=n as u32).collect()),
    }
}

pub struct LexPermutations {
    next: Option<Vec<u32>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut word = current.clone();
        // standard next-permutation step
        let advanced = (|| {
            let i = word.windows(2).rposition(|w| w[0] < w[1])?;
            let j = word.iter().rposition(|&v| v > word[i]).unwrap();
            word.swap(i, j);
            word[i + 1..].reverse();
            Some(word)
        })();
        self.next = advanced;
        Some(Permutation::from_valid(current))
    }
}

/// Every 123-avoiding permutation of `[n]`, lexicographic order.
pub fn enumerate_avoiders_bruteforce(
    n: usize,
) -> Result<impl Iterator<Item = Permutation>> {
    if n < 1 || n > BRUTEFORCE_CAP {
        return Err(Error::OutOfRange(format!(
            "brute force enumeration needs 1 <= n <= {BRUTEFORCE_CAP}, got {n}"
        )));
    }
    Ok(lex_permutations(n).filter(|p| p.is_123_avoiding()))
}

/// Every 123-avoiding permutation of `[n]` via the insertion-growth rule,
/// streamed depth-first with O(n^2) memory.
///
/// Order is parent-first, then insertion position 1..=k+1; consumers that
/// compare against brute force should compare as sets.
pub fn grow_avoiders(n: usize) -> Result<GrowAvoiders> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("grow_avoiders needs n >= 1, got {n}")));
    }
    let mut it = GrowAvoiders {
        target: n,
        stack: Vec::new(),
        seed: true,
    };
    it.stack.reserve(n);
    Ok(it)
}

/// Depth-first stream over the growth tree. Each frame holds a parent
/// avoider, its first-ascent position, and the next insertion position.
pub struct GrowAvoiders {
    target: usize,
    stack: Vec<Frame>,
    seed: bool,
}

struct Frame {
    word: Vec<u32>,
    first_ascent: usize,
    next_pos: usize, // 1-indexed insertion position, runs to first_ascent + 1
}

/// Inserts `letter` so it becomes the `pos`th letter (1-indexed).
fn insert_at(word: &[u32], pos: usize, letter: u32) -> Vec<u32> {
    let mut child = Vec::with_capacity(word.len() + 1);
    child.extend_from_slice(&word[..pos - 1]);
    child.push(letter);
    child.extend_from_slice(&word[pos - 1..]);
    child
}

/// First ascent of the child given the parent's first ascent `k` and the
/// insertion position of the new maximum: position 1 pushes the ascent
/// forward to `k + 1`; position `i >= 2` makes the new letter the peak of
/// an ascent at `i - 1`.
fn child_first_ascent(parent_k: usize, pos: usize) -> usize {
    if pos == 1 {
        parent_k + 1
    } else {
        pos - 1
    }
}

impl Iterator for GrowAvoiders {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.seed {
            self.seed = false;
            if self.target == 1 {
                return Some(Permutation::from_valid(vec![1]));
            }
            self.stack.push(Frame {
                word: vec![1],
                first_ascent: 1,
                next_pos: 1,
            });
        }
        while let Some(frame) = self.stack.last_mut() {
            if frame.next_pos > frame.first_ascent + 1 {
                self.stack.pop();
                continue;
            }
            let pos = frame.next_pos;
            frame.next_pos += 1;
            let letter = frame.word.len() as u32 + 1;
            let child = insert_at(&frame.word, pos, letter);
            let child_k = child_first_ascent(frame.first_ascent, pos);
            if child.len() == self.target {
                return Some(Permutation::from_valid(child));
            }
            self.stack.push(Frame {
                word: child,
                first_ascent: child_k,
                next_pos: 1,
            });
        }
        None
    }
}

/// Enumeration backend for [`census`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMethod {
    BruteForce,
    Grow,
}

/// Tallies of avoiders of `[n]` by first-ascent position and by position
/// of the letter `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub by_first_ascent: BTreeMap<usize, BigCount>,
    pub by_max_position: BTreeMap<usize, BigCount>,
    pub total: BigCount,
}

impl Census {
    pub fn first_ascent_count(&self, k: usize) -> BigCount {
        self.by_first_ascent.get(&k).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn max_position_count(&self, k: usize) -> BigCount {
        self.by_max_position.get(&k).cloned().unwrap_or_else(BigUint::zero)
    }

    /// CSV with header `n,k,first_ascent_count,max_position_count`.
    pub fn to_csv<W: IoWrite>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "n,k,first_ascent_count,max_position_count")?;
        for k in 1..=self.n {
            writeln!(
                out,
                "{},{k},{},{}",
                self.n,
                self.first_ascent_count(k),
                self.max_position_count(k)
            )?;
        }
        Ok(())
    }

    /// JSON with counts as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let fa: Vec<String> = (1..=self.n).map(|k| self.first_ascent_count(k).to_string()).collect();
        let mp: Vec<String> = (1..=self.n).map(|k| self.max_position_count(k).to_string()).collect();
        serde_json::json!({
            "n": self.n,
            "first_ascent_counts": fa,
            "max_position_counts": mp,
            "total": self.total.to_string(),
        })
    }
}

/// Counts all avoiders of `[n]` by first ascent and by position of `n`.
pub fn census(n: usize, method: CensusMethod) -> Result<Census> {
    let stream: Box<dyn Iterator<Item = Permutation>> = match method {
        CensusMethod::BruteForce => Box::new(enumerate_avoiders_bruteforce(n)?),
        CensusMethod::Grow => {
            if n > GROW_CAP {
                return Err(Error::OutOfRange(format!(
                    "growth census is capped at n <= {GROW_CAP}, got {n}"
                )));
            }
            Box::new(grow_avoiders(n)?)
        }
    };
    let mut by_first_ascent: BTreeMap<usize, BigCount> = BTreeMap::new();
    let mut by_max_position: BTreeMap<usize, BigCount> = BTreeMap::new();
    let mut total = BigUint::zero();
    let one = BigUint::from(1u32);
    for p in stream {
        *by_first_ascent
            .entry(p.first_ascent_position())
            .or_insert_with(BigUint::zero) += &one;
        *by_max_position
            .entry(p.position_of_max())
            .or_insert_with(BigUint::zero) += &one;
        total += &one;
    }
    Ok(Census {
        n,
        by_first_ascent,
        by_max_position,
        total,
    })
}
