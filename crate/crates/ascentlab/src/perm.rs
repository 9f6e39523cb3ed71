//! Permutations in one-line notation and their basic statistics.
//!
//! Positions are 1-indexed throughout: `entry(1)` is the first letter. The
//! strictly decreasing permutation has first ascent `n` by convention.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation, `n >= 1`.
///
/// Immutable after construction; all statistics are pure functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, checking that `entries` is a bijection on
    /// `{1..n}` with `n >= 1`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Invalid {
                kind: "permutation",
                reason: "length 0 is rejected".into(),
            });
        }
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v as usize > n {
                return Err(Error::Invalid {
                    kind: "permutation",
                    reason: format!("value {v} out of range 1..={n}"),
                });
            }
            if seen[v as usize - 1] {
                return Err(Error::Invalid {
                    kind: "permutation",
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v as usize - 1] = true;
        }
        Ok(Self { entries })
    }

    /// The identity-free constructor for internal callers that already hold
    /// a valid one-line word.
    pub(crate) fn from_valid(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    /// The letter at 1-indexed position `k`.
    pub fn entry(&self, k: usize) -> u32 {
        self.entries[k - 1]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// True iff no indices `i < j < k` have ascending values, i.e. the
    /// longest increasing subsequence has length at most 2.
    ///
    /// Single left-to-right scan keeping the smallest tail of an increasing
    /// subsequence of length 1 and of length 2.
    pub fn is_123_avoiding(&self) -> bool {
        let mut tail1 = u32::MAX; // smallest value seen so far
        let mut tail2 = u32::MAX; // smallest value ending a rise of length 2
        for &v in &self.entries {
            if tail2 < v {
                return false;
            }
            if tail1 < v {
                tail2 = tail2.min(v);
            } else {
                tail1 = v;
            }
        }
        true
    }

    /// Cubic triple-scan reference for [`Self::is_123_avoiding`], kept for
    /// cross-checking in tests and verification sweeps.
    pub fn is_123_avoiding_naive(&self) -> bool {
        let e = &self.entries;
        let n = e.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if e[i] < e[j] && e[j] < e[k] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Smallest `k` with `p(k) < p(k+1)`; `n` when strictly decreasing.
    pub fn first_ascent_position(&self) -> usize {
        self.entries
            .windows(2)
            .position(|w| w[0] < w[1])
            .map(|i| i + 1)
            .unwrap_or(self.entries.len())
    }

    /// The unique position holding the value `n`.
    pub fn position_of_max(&self) -> usize {
        let n = self.entries.len() as u32;
        self.entries.iter().position(|&v| v == n).unwrap() + 1
    }

    /// Decomposes the permutation around its right-to-left maxima.
    pub fn right_to_left_maxima(&self) -> RlmDecomposition {
        let n = self.entries.len();
        let mut is_max = vec![false; n];
        let mut best = 0u32;
        for i in (0..n).rev() {
            if self.entries[i] > best {
                best = self.entries[i];
                is_max[i] = true;
            }
        }
        let mut maxima = Vec::new();
        let mut words = Vec::new();
        let mut word = Vec::new();
        for i in 0..n {
            if is_max[i] {
                maxima.push((i + 1, self.entries[i]));
                words.push(std::mem::take(&mut word));
            } else {
                word.push(self.entries[i]);
            }
        }
        RlmDecomposition { maxima, words }
    }
}

/// Right-to-left-maxima decomposition `w_s m_s ... w_1 m_1`.
///
/// `maxima` and `words` are stored in left-to-right (encounter) order, so
/// `maxima[0]` is the value `n` and `words[i]` is the (possibly empty) block
/// immediately preceding `maxima[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RlmDecomposition {
    /// `(position, value)` of each right-to-left maximum, left to right.
    pub maxima: Vec<(usize, u32)>,
    /// The sub-word preceding each maximum, left to right.
    pub words: Vec<Vec<u32>>,
}

impl RlmDecomposition {
    /// Concatenates `words[i], maxima[i]` back into the one-line word.
    pub fn reassemble(&self) -> Permutation {
        let mut entries = Vec::new();
        for (word, &(_, m)) in self.words.iter().zip(&self.maxima) {
            entries.extend_from_slice(word);
            entries.push(m);
        }
        Permutation::from_valid(entries)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts space- or comma-separated integers, or a contiguous digit
    /// string when `n <= 9` (e.g. `"76584213"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let entries: Vec<u32> = if s.contains([' ', ',']) {
            s.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else if s.len() <= 9 && s.bytes().all(|b| b.is_ascii_digit()) {
            s.bytes().map(|b| (b - b'0') as u32).collect()
        } else {
            s.parse::<u32>()
                .map(|v| vec![v])
                .map_err(|_| Error::Parse(format!("cannot parse permutation {s:?}")))?
        };
        Permutation::new(entries)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() <= 9 {
            for &v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let words: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", words.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn construction_rejects_bad_words() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![2, 1]).is_ok());
    }

    #[test]
    fn avoidance_examples() {
        assert!(p("76584213").is_123_avoiding());
        assert!(!p("123").is_123_avoiding());
        assert!(p("321").is_123_avoiding());
        assert!(p("312").is_123_avoiding());
        assert!(p("132").is_123_avoiding());
        assert!(p("213").is_123_avoiding());
        assert!(p("231").is_123_avoiding());
    }

    #[test]
    fn fast_scan_matches_cubic_reference_exhaustively() {
        for n in 1..=7 {
            for perm in crate::oracle::lex_permutations(n) {
                assert_eq!(
                    perm.is_123_avoiding(),
                    perm.is_123_avoiding_naive(),
                    "mismatch on {perm}"
                );
            }
        }
    }

    #[test]
    fn first_ascent_examples() {
        assert_eq!(p("321").first_ascent_position(), 3);
        assert_eq!(p("213").first_ascent_position(), 2);
        assert_eq!(p("132").first_ascent_position(), 1);
        assert_eq!(p("1").first_ascent_position(), 1);
    }

    #[test]
    fn first_ascent_is_n_iff_descending() {
        for n in 1..=6 {
            for perm in crate::oracle::lex_permutations(n) {
                let k = perm.first_ascent_position();
                assert!((1..=n).contains(&k));
                let descending = perm.entries().windows(2).all(|w| w[0] > w[1]);
                assert_eq!(k == n, descending, "on {perm}");
            }
        }
    }

    #[test]
    fn position_of_max_examples() {
        assert_eq!(p("321").position_of_max(), 1);
        assert_eq!(p("76584213").position_of_max(), 4);
        assert_eq!(p("213").position_of_max(), 3);
    }

    #[test]
    fn rlm_decomposition_examples() {
        let d = p("76584213").right_to_left_maxima();
        let values: Vec<u32> = d.maxima.iter().map(|&(_, v)| v).collect();
        assert_eq!(values, vec![8, 4, 3]);
        assert_eq!(d.words, vec![vec![7, 6, 5], vec![], vec![2, 1]]);

        let d = p("321").right_to_left_maxima();
        let values: Vec<u32> = d.maxima.iter().map(|&(_, v)| v).collect();
        assert_eq!(values, vec![3, 2, 1]);
        assert!(d.words.iter().all(|w| w.is_empty()));

        let d = p("132").right_to_left_maxima();
        let values: Vec<u32> = d.maxima.iter().map(|&(_, v)| v).collect();
        assert_eq!(values, vec![3, 2]);
        assert_eq!(d.words, vec![vec![1], vec![]]);
    }

    #[test]
    fn rlm_reassembles_and_avoider_words_descend() {
        for n in 1..=8 {
            for perm in crate::oracle::enumerate_avoiders_bruteforce(n).unwrap() {
                let d = perm.right_to_left_maxima();
                assert_eq!(d.reassemble(), perm);
                // rightmost letter is a maximum, leftmost maximum is n
                assert_eq!(d.maxima.last().unwrap().0, n);
                assert_eq!(d.maxima[0].1, n as u32);
                let concat: Vec<u32> = d.words.iter().flatten().copied().collect();
                assert!(concat.windows(2).all(|w| w[0] > w[1]), "words of {perm}");
            }
        }
    }

    #[test]
    fn rlm_reassembles_all_permutations() {
        for n in 1..=6 {
            for perm in crate::oracle::lex_permutations(n) {
                assert_eq!(perm.right_to_left_maxima().reassemble(), perm);
            }
        }
    }

    #[test]
    fn parse_and_display_roundtrip() {
        assert_eq!(p("76584213").entries(), &[7, 6, 5, 8, 4, 2, 1, 3]);
        assert_eq!(p("10 3 2 1 4 5 6 7 8 9").len(), 10);
        assert_eq!(p("3,1,2").entries(), &[3, 1, 2]);
        assert_eq!(p("76584213").to_string(), "76584213");
        let big = p("10 9 8 7 6 5 4 3 2 1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("".parse::<Permutation>().is_err());
        assert!("1 2 2".parse::<Permutation>().is_err());
    }
}
