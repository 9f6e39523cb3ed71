//! Monotone E/N lattice paths below the diagonal.
//!
//! Paths serialize as strings over `{X, Y}` with `X` an east step `(1,0)`
//! and `Y` a north step `(0,1)`. A path is *good* when every prefix
//! endpoint `(x, y)` satisfies `y <= x`; a Dyck path of order `n` is a good
//! path from `(0,0)` to `(n,n)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One unit step of a lattice path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// East, `(1, 0)`, written `X`.
    E,
    /// North, `(0, 1)`, written `Y`.
    N,
}

/// A good monotone lattice path. Goodness is validated at construction, so
/// downstream code never sees a path crossing above `x = y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    start: (i64, i64),
    steps: Vec<Step>,
}

impl LatticePath {
    /// Builds a path and checks that every prefix endpoint stays weakly
    /// below the diagonal.
    pub fn new(start: (i64, i64), steps: Vec<Step>) -> Result<Self> {
        let (mut x, mut y) = start;
        if y > x {
            return Err(Error::Invalid {
                kind: "lattice path",
                reason: format!("start ({x}, {y}) lies above the diagonal"),
            });
        }
        for (i, s) in steps.iter().enumerate() {
            match s {
                Step::E => x += 1,
                Step::N => y += 1,
            }
            if y > x {
                return Err(Error::Invalid {
                    kind: "lattice path",
                    reason: format!("prefix of length {} reaches ({x}, {y}) above the diagonal", i + 1),
                });
            }
        }
        Ok(Self { start, steps })
    }

    /// A Dyck path of order `n`: from `(0,0)` to `(n,n)`, good.
    pub fn dyck(steps: Vec<Step>) -> Result<Self> {
        let path = Self::new((0, 0), steps)?;
        let (x, y) = path.end();
        if x != y {
            return Err(Error::Invalid {
                kind: "lattice path",
                reason: format!("not a Dyck path: ends at ({x}, {y})"),
            });
        }
        Ok(path)
    }

    pub fn start(&self) -> (i64, i64) {
        self.start
    }

    pub fn end(&self) -> (i64, i64) {
        let e = self.steps.iter().filter(|s| **s == Step::E).count() as i64;
        let n = self.steps.len() as i64 - e;
        (self.start.0 + e, self.start.1 + n)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// True iff the path runs from `(0,0)` to `(n,n)` for some `n >= 0`.
    pub fn is_dyck(&self) -> bool {
        let (x, y) = self.end();
        self.start == (0, 0) && x == y
    }

    /// The order `n` of a Dyck path.
    pub fn order(&self) -> usize {
        debug_assert!(self.is_dyck());
        self.steps.len() / 2
    }

    /// Splits the step word into maximal `(east_run, north_run)` blocks in
    /// encounter order. A path that begins with a north run gets a leading
    /// block with `east_run == 0`; a trailing east run gets `north_run == 0`.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut blocks = Vec::new();
        let mut i = 0;
        while i < self.steps.len() {
            let mut e = 0;
            while i < self.steps.len() && self.steps[i] == Step::E {
                e += 1;
                i += 1;
            }
            let mut n = 0;
            while i < self.steps.len() && self.steps[i] == Step::N {
                n += 1;
                i += 1;
            }
            blocks.push((e, n));
        }
        blocks
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    /// Parses an `X`/`Y` step word (case-insensitive) as a path from `(0,0)`.
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'X' | 'x' => Ok(Step::E),
                'Y' | 'y' => Ok(Step::N),
                other => Err(Error::Parse(format!("bad path step {other:?}, expected X or Y"))),
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::new((0, 0), steps)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::E => "X",
                Step::N => "Y",
            })?;
        }
        Ok(())
    }
}
