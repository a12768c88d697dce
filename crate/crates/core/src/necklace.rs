//! Binary necklaces, Brandt's bijection onto recurrent partitions, and proper
//! tails.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A letter of a necklace word. `B < W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bead {
    B,
    W,
}

impl Bead {
    pub fn swap(self) -> Bead {
        match self {
            Bead::B => Bead::W,
            Bead::W => Bead::B,
        }
    }

    fn as_char(self) -> char {
        match self {
            Bead::B => 'B',
            Bead::W => 'W',
        }
    }
}

/// Parses a word over `{B, W}`.
pub fn parse_word(s: &str) -> Result<Vec<Bead>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::EmptyWord);
    }
    s.chars()
        .enumerate()
        .map(|(pos, c)| match c {
            'B' | 'b' => Ok(Bead::B),
            'W' | 'w' => Ok(Bead::W),
            _ => Err(Error::Parse {
                pos,
                msg: format!("unexpected letter {c:?}, expected B or W"),
            }),
        })
        .collect()
}

pub fn word_to_string(w: &[Bead]) -> String {
    w.iter().map(|b| b.as_char()).collect()
}

/// Moves the last letter to the front. The Bulgarian Solitaire move acts on
/// Brandt images by this rotation.
pub fn rotate_right(w: &[Bead]) -> Vec<Bead> {
    let mut v = w.to_vec();
    v.rotate_right(1);
    v
}

/// All rotations, the `i`-th starting at letter `i`.
pub fn rotations(w: &[Bead]) -> Vec<Vec<Bead>> {
    (0..w.len())
        .map(|i| {
            let mut v = w.to_vec();
            v.rotate_left(i);
            v
        })
        .collect()
}

/// A word up to rotation, stored as its least rotation under `B < W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Necklace(Vec<Bead>);

impl Necklace {
    pub fn canonicalize(word: &[Bead]) -> Result<Necklace> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Necklace(rotations(word).into_iter().min().unwrap()))
    }

    pub fn word(&self) -> &[Bead] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_b(&self) -> usize {
        self.0.iter().filter(|&&b| b == Bead::B).count()
    }

    /// True unless the word is a proper power `N^k`, `k ≥ 2`.
    pub fn is_primitive(&self) -> bool {
        let m = self.0.len();
        (1..m)
            .filter(|d| m.is_multiple_of(*d))
            .all(|d| (d..m).any(|i| self.0[i] != self.0[i - d]))
    }

    /// Reverse the word and swap the letters.
    pub fn dual(&self) -> Necklace {
        let w: Vec<Bead> = self.0.iter().rev().map(|b| b.swap()).collect();
        Necklace::canonicalize(&w).unwrap()
    }

    /// The `k`-fold concatenation.
    pub fn power(&self, k: usize) -> Necklace {
        Necklace(self.0.repeat(k))
    }

    pub fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive(self.to_string()))
        }
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_to_string(&self.0))
    }
}

impl FromStr for Necklace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Necklace::canonicalize(&parse_word(s)?)
    }
}

impl TryFrom<String> for Necklace {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Necklace> for String {
    fn from(n: Necklace) -> String {
        n.to_string()
    }
}

/// Primitive necklaces of length `m`, sorted.
pub fn primitive_necklaces(m: usize) -> Vec<Necklace> {
    assert!((1..=24).contains(&m));
    let mut out = Vec::new();
    for bits in 0u32..(1 << m) {
        let w: Vec<Bead> = (0..m)
            .map(|i| if bits >> (m - 1 - i) & 1 == 0 { Bead::B } else { Bead::W })
            .collect();
        let n = Necklace::canonicalize(&w).unwrap();
        if n.0 == w && n.is_primitive() {
            out.push(n);
        }
    }
    out
}

/// Brandt's map: the word `b_1..b_m` goes to `(m−1, m−2, …, 0) + s` where
/// `s_i = 1` exactly when `b_i = B`.
pub fn brandt_partition(word: &[Bead]) -> Partition {
    let m = word.len() as u32;
    Partition::from_unsorted(
        word.iter()
            .enumerate()
            .map(|(i, &b)| m - 1 - i as u32 + u32::from(b == Bead::B))
            .collect(),
    )
}

/// Periodic difference pattern of a recurrent state: entries in `{0, 1, 2}`
/// whose 0's and 2's alternate when read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProperTail(Vec<u32>);

impl ProperTail {
    pub fn new(values: Vec<u32>) -> Result<ProperTail> {
        let bad = || Error::NotProperTail(format!("{values:?}"));
        if values.is_empty() || values.iter().any(|&v| v > 2) {
            return Err(bad());
        }
        let marks: Vec<u32> = values.iter().copied().filter(|&v| v != 1).collect();
        let alternates = marks
            .iter()
            .zip(marks.iter().cycle().skip(1))
            .all(|(a, b)| a != b);
        if marks.len() == 1 || !alternates {
            return Err(bad());
        }
        Ok(ProperTail(values))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Entry `i` is 2 for `BW` at positions `i, i+1` (cyclically), 0 for `WB`,
/// and 1 otherwise.
pub fn tail_from_word(word: &[Bead]) -> ProperTail {
    let n = word.len();
    ProperTail(
        (0..n)
            .map(|i| match (word[i], word[(i + 1) % n]) {
                (Bead::B, Bead::W) => 2,
                (Bead::W, Bead::B) => 0,
                _ => 1,
            })
            .collect(),
    )
}

/// Inverts [`tail_from_word`]. The all-ones tail comes from both `B^n` and
/// `W^n`; this returns `W^n` with the flag set.
pub fn word_from_tail(t: &ProperTail) -> (Vec<Bead>, bool) {
    let v = &t.0;
    let n = v.len();
    let Some(start) = v.iter().position(|&x| x == 2) else {
        return (vec![Bead::W; n], true);
    };
    let mut w = vec![Bead::B; n];
    let mut cur = Bead::B;
    for step in 0..n {
        let i = (start + step) % n;
        w[i] = cur;
        cur = match v[i] {
            2 => Bead::W,
            0 => Bead::B,
            _ => cur,
        };
    }
    debug_assert_eq!(&tail_from_word(&w), t);
    (w, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Bead> {
        parse_word(s).unwrap()
    }

    fn n(s: &str) -> Necklace {
        s.parse().unwrap()
    }

    fn all_words(m: usize) -> impl Iterator<Item = Vec<Bead>> {
        (0u32..(1 << m)).map(move |bits| {
            (0..m)
                .map(|i| if bits >> i & 1 == 0 { Bead::B } else { Bead::W })
                .collect()
        })
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(n("WBW").to_string(), "BWW");
        assert_eq!(n("BWBW").to_string(), "BWBW");
        assert_eq!(n("WWB").to_string(), "BWW");
        assert_eq!(n("WBWBW").to_string(), "BWBWW");
        assert_eq!(n("BWBWB").to_string(), "BBWBW");
        assert_eq!("".parse::<Necklace>(), Err(Error::EmptyWord));
        assert!("BXW".parse::<Necklace>().is_err());
    }

    #[test]
    fn primitivity() {
        assert!(n("BBWW").is_primitive());
        assert!(!n("BWBW").is_primitive());
        assert!(n("B").is_primitive());
        assert!(!n("BWWBWW").is_primitive());
        assert_eq!(n("BWW").power(2), n("BWWBWW"));
    }

    #[test]
    fn duals() {
        assert_eq!(n("BWW").dual(), n("BBW"));
        assert_eq!(n("BW").dual(), n("BW"));
        for k in 1..6 {
            let bwk = format!("B{}", "W".repeat(k));
            let wbk = format!("W{}", "B".repeat(k));
            assert_eq!(n(&bwk).dual(), n(&wbk));
        }
        for m in 1..=8 {
            for p in primitive_necklaces(m) {
                assert_eq!(p.dual().dual(), p);
                assert!(p.dual().is_primitive());
            }
        }
    }

    #[test]
    fn primitive_counts() {
        // Lyndon words over two letters: 2, 1, 2, 3, 6, 9, 18, 30
        let counts: Vec<usize> = (1..=8).map(|m| primitive_necklaces(m).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    }

    #[test]
    fn brandt_examples() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(brandt_partition(&w("BWBW")), p("(4,2,2)"));
        assert_eq!(brandt_partition(&w("BBWW")), p("(4,3,1)"));
        assert_eq!(brandt_partition(&w("W")), p("()"));
        assert_eq!(brandt_partition(&w("BWW")), p("(3,1)"));
    }

    #[test]
    fn beta_rotates_brandt_images_right() {
        assert_eq!(
            brandt_partition(&w("BWW")).beta(),
            brandt_partition(&w("WBW"))
        );
        for m in 1..=7 {
            for word in all_words(m) {
                assert_eq!(
                    brandt_partition(&word).beta(),
                    brandt_partition(&rotate_right(&word))
                );
            }
        }
    }

    #[test]
    fn brandt_size() {
        for m in 1..=8 {
            for p in primitive_necklaces(m) {
                let expect = (m * (m - 1) / 2 + p.count_b()) as u64;
                assert_eq!(brandt_partition(p.word()).size(), expect);
            }
        }
    }

    #[test]
    fn tails() {
        assert_eq!(tail_from_word(&w("BWW")).values(), &[2, 1, 0]);
        assert_eq!(tail_from_word(&w("WBW")).values(), &[0, 2, 1]);
        assert_eq!(tail_from_word(&w("B")).values(), &[1]);
        let t = ProperTail::new(vec![2, 1, 0]).unwrap();
        assert_eq!(word_from_tail(&t), (w("BWW"), false));
        assert!(matches!(
            ProperTail::new(vec![2, 1, 0, 2]),
            Err(Error::NotProperTail(_))
        ));
        assert!(ProperTail::new(vec![2, 1]).is_err());
        assert!(ProperTail::new(vec![3, 1, 0]).is_err());
        let ones = ProperTail::new(vec![1, 1, 1]).unwrap();
        let (word, ambiguous) = word_from_tail(&ones);
        assert!(ambiguous);
        assert_eq!(word, w("WWW"));
        assert_eq!(tail_from_word(&w("BBB")), ones);
        assert_eq!(tail_from_word(&w("WWW")), ones);
    }

    #[test]
    fn tail_round_trip() {
        for m in 1..=10 {
            for word in all_words(m) {
                let t = tail_from_word(&word);
                assert_eq!(ProperTail::new(t.values().to_vec()).as_ref(), Ok(&t));
                let (back, ambiguous) = word_from_tail(&t);
                if word.contains(&Bead::B) && word.contains(&Bead::W) {
                    assert_eq!(back, word);
                    assert!(!ambiguous);
                } else {
                    assert!(ambiguous);
                }
            }
        }
    }

    #[test]
    fn serde_as_string() {
        assert_eq!(serde_json::to_string(&n("WBW")).unwrap(), "\"BWW\"");
        assert_eq!(serde_json::from_str::<Necklace>("\"WWB\"").unwrap(), n("BWW"));
    }
}
