//! Integer partitions and the Bulgarian Solitaire move.
//!
//! Part indices are 1-based throughout.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts. The empty list is the
/// partition of zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts not weakly decreasing".into()));
        }
        Ok(Self(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// `λ_j`, 1-based.
    pub fn part(&self, j: usize) -> Option<u32> {
        j.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// Removes the first column and adds it back as a new row.
    pub fn beta(&self) -> Partition {
        let len = self.0.len() as u32;
        let mut out: Vec<u32> = Vec::with_capacity(self.0.len() + 1);
        let mut inserted = len == 0;
        for &p in &self.0 {
            if !inserted && len >= p - 1 {
                out.push(len);
                inserted = true;
            }
            if p > 1 {
                out.push(p - 1);
            }
        }
        if !inserted {
            out.push(len);
        }
        Partition(out)
    }

    /// Indices `j` with `λ_j ≥ ℓ(λ) − 1`, keeping only the last index of each
    /// run of equal parts.
    pub fn playable_parts(&self) -> Vec<usize> {
        let l = self.0.len();
        let min = l.saturating_sub(1) as u32;
        (1..=l)
            .filter(|&j| {
                let p = self.0[j - 1];
                p >= min && (j == l || self.0[j] != p)
            })
            .collect()
    }

    pub fn is_playable(&self, j: usize) -> bool {
        let l = self.0.len();
        j >= 1
            && j <= l
            && self.0[j - 1] as usize + 1 >= l
            && (j == l || self.0[j] != self.0[j - 1])
    }

    /// The reversed move `R_j`: removes part `j` and lays it down as a new
    /// first column. `beta` undoes it.
    pub fn reverse_move(&self, j: usize) -> Result<Partition> {
        if !self.is_playable(j) {
            return Err(Error::NotPlayable(j));
        }
        let v = self.0[j - 1];
        let rest = self.0.len() as u32 - 1;
        let mut out: Vec<u32> = Vec::with_capacity(v as usize);
        out.extend(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j - 1)
                .map(|(_, &p)| p + 1),
        );
        out.extend(std::iter::repeat_n(1, (v - rest) as usize));
        Ok(Partition(out))
    }

    /// All `β`-preimages.
    pub fn preimages(&self) -> Vec<Partition> {
        self.playable_parts()
            .into_iter()
            .map(|j| self.reverse_move(j).unwrap())
            .collect()
    }

    /// Number of `β` steps to reach the recurrent cycle, and that cycle in
    /// `β` order starting at the first element reached.
    pub fn level_and_cycle(&self) -> (usize, Vec<Partition>) {
        let mut seen: HashMap<Partition, usize> = HashMap::new();
        let mut path: Vec<Partition> = Vec::new();
        let mut cur = self.clone();
        loop {
            if let Some(&i) = seen.get(&cur) {
                return (i, path.split_off(i));
            }
            seen.insert(cur.clone(), path.len());
            let next = cur.beta();
            path.push(cur);
            cur = next;
        }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "expected parenthesized list".into(),
            })?;
        if inner.trim().is_empty() {
            return Ok(Partition::default());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad part {p:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, largest part first, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
