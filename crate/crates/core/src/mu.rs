//! Difference-sequence representation of partitions with playability bars.
//!
//! A partition `λ` is stored as `μ_i = λ_i − λ_{i+1}`; part `i` carries a bar
//! when the reversed move `R_i` may be played on it. [`BarredSeq`] is the
//! finite version; [`InfBarredSeq`] holds the eventually periodic sequences
//! of the limiting system, where the tail is the proper tail of a necklace.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::necklace::{tail_from_word, Bead, ProperTail};
use crate::partition::Partition;

/// One entry of a difference sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub value: u32,
    pub barred: bool,
}

impl Entry {
    pub fn new(value: u32, barred: bool) -> Self {
        Self { value, barred }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.barred { "*" } else { "" })
    }
}

fn parse_entries(s: &str) -> Result<Vec<Entry>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let (num, barred) = match t.strip_suffix('*') {
                Some(n) => (n.trim(), true),
                None => (t, false),
            };
            let value = num.parse::<u32>().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad entry {t:?}"),
            })?;
            Ok(Entry { value, barred })
        })
        .collect()
}

fn strip_parens(s: &str) -> Result<&str> {
    s.trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected parenthesized sequence".into(),
        })
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Finite barred difference sequence, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BarredSeq(Vec<Entry>);

impl BarredSeq {
    /// Builds without checking the bars; see [`partition_from_mu`].
    pub fn from_entries(mut entries: Vec<Entry>) -> Self {
        while entries.last().is_some_and(|e| e.value == 0 && !e.barred) {
            entries.pop();
        }
        Self(entries)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.0
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.iter().map(|e| e.value).collect()
    }

    /// `μ_i`, 1-based; zero past the end.
    pub fn value(&self, i: usize) -> u32 {
        self.0.get(i.wrapping_sub(1)).map_or(0, |e| e.value)
    }

    pub fn barred(&self, i: usize) -> bool {
        self.0.get(i.wrapping_sub(1)).is_some_and(|e| e.barred)
    }
}

impl fmt::Display for BarredSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for BarredSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::from_entries(parse_entries(strip_parens(s)?)?))
    }
}

/// Differences of consecutive parts, with a bar on every playable part.
pub fn mu_from_partition(lambda: &Partition) -> BarredSeq {
    let p = lambda.parts();
    let min = p.len().saturating_sub(1) as u32;
    BarredSeq(
        (0..p.len())
            .map(|i| {
                let value = p[i] - p.get(i + 1).copied().unwrap_or(0);
                Entry::new(value, value != 0 && p[i] >= min)
            })
            .collect(),
    )
}

/// Suffix sums. Fails unless the bars are exactly those of
/// [`mu_from_partition`].
pub fn partition_from_mu(mu: &BarredSeq) -> Result<Partition> {
    let mut parts: Vec<u32> = mu.0.iter().map(|e| e.value).collect();
    for i in (0..parts.len().saturating_sub(1)).rev() {
        parts[i] += parts[i + 1];
    }
    while parts.last() == Some(&0) {
        parts.pop();
    }
    let lambda = Partition::new(parts)?;
    if mu_from_partition(&lambda) != *mu {
        return Err(Error::InconsistentBars(mu.to_string()));
    }
    Ok(lambda)
}

/// The reversed move `R_j` computed on the difference sequence.
///
/// With `λ_j = Σ_{k≥j} μ_k`: entries before `j−1` are kept, entry `j−1`
/// becomes `μ_{j−1} + μ_j`, entry `i ≥ j` becomes `μ_{i+1}`, and a new 1 is
/// added at position `λ_j`. Bars go on every nonzero entry before `j`, and on
/// a nonzero entry `i ≥ j` when `μ_j + … + μ_i < 3`.
pub fn mu_move(mu: &BarredSeq, j: usize) -> Result<BarredSeq> {
    if !mu.barred(j) {
        return Err(Error::NotPlayable(j));
    }
    let lambda_j: u32 = (j..=mu.0.len()).map(|k| mu.value(k)).sum();
    let len = (lambda_j as usize).max(mu.0.len());
    let mut vals: Vec<u32> = (1..=len)
        .map(|i| match i.cmp(&(j - 1)) {
            std::cmp::Ordering::Less => mu.value(i),
            std::cmp::Ordering::Equal => mu.value(i) + mu.value(j),
            std::cmp::Ordering::Greater => mu.value(i + 1),
        })
        .collect();
    vals[lambda_j as usize - 1] += 1;
    Ok(BarredSeq::from_entries(bar_after_move(&vals, j, |k| mu.value(k))))
}

/// Applies the post-move bar rule to new values `vals` (1-based positions),
/// given the old values.
fn bar_after_move(vals: &[u32], j: usize, old: impl Fn(usize) -> u32) -> Vec<Entry> {
    let mut run = 0u32;
    vals.iter()
        .enumerate()
        .map(|(idx, &v)| {
            let i = idx + 1;
            let barred = if i < j {
                v != 0
            } else {
                run = run.saturating_add(old(i));
                v != 0 && run < 3
            };
            Entry::new(v, barred)
        })
        .collect()
}

/// Eventually periodic barred sequence: a finite prefix followed by copies
/// of a period. All bars sit in the prefix.
///
/// The representation is canonical: the prefix is as short as possible, so
/// derived equality is sequence equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfBarredSeq {
    prefix: Vec<Entry>,
    period: Vec<u32>,
}

/// Values of an eventually periodic sequence with the bars forgotten, in
/// canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSeq {
    pub prefix: Vec<u32>,
    pub period: Vec<u32>,
}

impl ValueSeq {
    fn canonical(mut prefix: Vec<u32>, mut period: Vec<u32>) -> Self {
        while let (Some(&v), Some(&last)) = (prefix.last(), period.last()) {
            if v != last {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Self { prefix, period }
    }
}

impl fmt::Display for ValueSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", join(&self.prefix), join(&self.period))
    }
}

impl InfBarredSeq {
    pub fn new(prefix: Vec<Entry>, period: Vec<u32>) -> Result<Self> {
        ProperTail::new(period.clone())?;
        Ok(Self::canonical(prefix, period))
    }

    fn canonical(mut prefix: Vec<Entry>, mut period: Vec<u32>) -> Self {
        while let (Some(e), Some(&last)) = (prefix.last(), period.last()) {
            if e.barred || e.value != last {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Self { prefix, period }
    }

    /// The unbarred periodic sequence repeating `tail`.
    pub fn periodic(tail: &ProperTail) -> Self {
        Self {
            prefix: Vec::new(),
            period: tail.values().to_vec(),
        }
    }

    pub fn prefix(&self) -> &[Entry] {
        &self.prefix
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// `μ_i`, 1-based.
    pub fn value(&self, i: usize) -> u32 {
        assert!(i >= 1);
        match self.prefix.get(i - 1) {
            Some(e) => e.value,
            None => self.period[(i - 1 - self.prefix.len()) % self.period.len()],
        }
    }

    pub fn barred(&self, i: usize) -> bool {
        i >= 1 && self.prefix.get(i - 1).is_some_and(|e| e.barred)
    }

    pub fn barred_positions(&self) -> Vec<usize> {
        (1..=self.prefix.len()).filter(|&i| self.barred(i)).collect()
    }

    /// Position of the first nonzero value.
    pub fn first_nonzero(&self) -> usize {
        (1..).find(|&i| self.value(i) != 0).unwrap()
    }

    /// Values with the bars dropped.
    pub fn values(&self) -> ValueSeq {
        ValueSeq::canonical(
            self.prefix.iter().map(|e| e.value).collect(),
            self.period.clone(),
        )
    }

    /// The sequence from position `k + 1` on, bars included.
    pub fn suffix_after(&self, k: usize) -> InfBarredSeq {
        if k <= self.prefix.len() {
            Self::canonical(self.prefix[k..].to_vec(), self.period.clone())
        } else {
            let mut period = self.period.clone();
            period.rotate_left((k - self.prefix.len()) % self.period.len());
            Self::canonical(Vec::new(), period)
        }
    }

    /// Values from position `k + 1` on.
    pub fn values_after(&self, k: usize) -> ValueSeq {
        self.suffix_after(k).values()
    }

    /// The reversed move `R_j`. Position `j` must be barred.
    ///
    /// `j = 1` drops the first entry; otherwise entries `j−1` and `j` merge.
    /// Bars follow the finite rule, so they depend only on the old values
    /// and `j`.
    pub fn inf_move(&self, j: usize) -> Result<Self> {
        if !self.barred(j) {
            return Err(Error::NotPlayable(j));
        }
        Ok(self.move_unchecked(j))
    }

    fn move_unchecked(&self, j: usize) -> Self {
        let plen = self.prefix.len();
        let n = self.period.len();
        // The last position i ≥ j whose running sum μ_j + … + μ_i stays
        // below 3; bars can only appear up to there.
        let mut last_bar_pos = j - 1;
        let mut run = 0u32;
        let mut i = j;
        loop {
            run += self.value(i);
            if run >= 3 {
                break;
            }
            last_bar_pos = i;
            i += 1;
        }
        let new_len = (plen.saturating_sub(1)).max(last_bar_pos).max(j - 1);
        let vals: Vec<u32> = (1..=new_len)
            .map(|i| {
                if i + 1 < j {
                    self.value(i)
                } else if i + 1 == j {
                    self.value(i) + self.value(j)
                } else {
                    self.value(i + 1)
                }
            })
            .collect();
        let prefix = bar_after_move(&vals, j, |k| self.value(k));
        let mut period = self.period.clone();
        period.rotate_left((new_len + 1 - plen) % n);
        Self::canonical(prefix, period)
    }
}

impl fmt::Display for InfBarredSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", join(&self.prefix), join(&self.period))
    }
}

impl FromStr for InfBarredSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = strip_parens(s)?;
        let (pre, per) = inner.split_once('|').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected '|' before the period".into(),
        })?;
        let period = parse_entries(per)?;
        if period.iter().any(|e| e.barred) {
            return Err(Error::Parse {
                pos: 0,
                msg: "bars are not allowed in the period".into(),
            });
        }
        InfBarredSeq::new(
            parse_entries(pre)?,
            period.into_iter().map(|e| e.value).collect(),
        )
    }
}

/// Recurrent elements of the limiting orbit of the necklace read from
/// `word`. Element `i` (0-based) carries the tail of the word rotated left
/// by `i`; playing the first nonzero part of element `i` gives element
/// `i + 1`, cyclically.
///
/// Bars come from cycling once through the whole orbit from the unbarred
/// tail; the result is then checked by replaying the cycle.
pub fn recurrent_elements_from_word(word: &[Bead]) -> Result<Vec<InfBarredSeq>> {
    let tail = tail_from_word(word);
    let n = tail.len();
    let mut cur = InfBarredSeq::periodic(&tail);
    for _ in 0..n {
        let j = cur.first_nonzero();
        cur = cur.move_unchecked(j);
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut rotated = word.to_vec();
        rotated.rotate_left(i);
        let expect = InfBarredSeq::periodic(&tail_from_word(&rotated)).values();
        if cur.values() != expect {
            return Err(Error::InconsistentBars(format!(
                "recurrent element {} has values {}, expected {}",
                i + 1,
                cur.values(),
                expect
            )));
        }
        out.push(cur.clone());
        cur = cur.inf_move(cur.first_nonzero())?;
    }
    if cur != out[0] {
        return Err(Error::InconsistentBars(format!(
            "cycle does not close: {cur} vs {}",
            out[0]
        )));
    }
    Ok(out)
}
