//! Fuses, pre-fuses and the weak-composition polynomials `u_k`, `v_k`.
//!
//! A `k`-fuse is a barred prefix `μ_1..μ_k` with `μ_1..μ_{k−1}` in `{1, 2}`,
//! no two consecutive ones, and `μ_k ≥ 3`. Once any of its parts is played,
//! nothing past position `k` is ever playable again and the game dies within
//! `k` moves; the levels of that burnt-out subtree are counted by `u_k(x)`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mu::InfBarredSeq;
use crate::polyrat::{IntPoly, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FuseKind {
    Fuse,
    Prefuse,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FuseInfo {
    pub kind: FuseKind,
    pub k: usize,
}

impl FuseInfo {
    pub const NONE: FuseInfo = FuseInfo {
        kind: FuseKind::None,
        k: 0,
    };
}

/// Classifies the start of `mu` as a fuse, a pre-fuse, or neither.
///
/// A pre-fuse is a nonempty barred run of 1's and 2's without consecutive
/// ones that is followed by an unbarred part.
pub fn detect_fuse(mu: &InfBarredSeq) -> FuseInfo {
    let mut k = 0;
    let mut prev_one = false;
    loop {
        let i = k + 1;
        let v = mu.value(i);
        if !mu.barred(i) {
            return if k >= 1 {
                FuseInfo {
                    kind: FuseKind::Prefuse,
                    k,
                }
            } else {
                FuseInfo::NONE
            };
        }
        match v {
            1 if prev_one => return FuseInfo::NONE,
            1 | 2 => {
                prev_one = v == 1;
                k += 1;
            }
            0 => return FuseInfo::NONE,
            _ => {
                return FuseInfo {
                    kind: FuseKind::Fuse,
                    k: i,
                }
            }
        }
    }
}

/// Number of weak compositions of `n` with exactly `i` zero parts.
pub fn weak_comp_count(n: usize, i: usize) -> BigInt {
    weak_comp_table(n, i)[n][i].clone()
}

/// `t[a][b]` = number of weak compositions of `a` with exactly `b` zeros,
/// for `a ≤ n`, `b ≤ i`.
fn weak_comp_table(n: usize, i: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::from(0); i + 1]; n + 1];
    for a in 0..=n {
        for b in 0..=i {
            let mut c = BigInt::from(u8::from(a == 0 && b == 0));
            if b > 0 {
                c += &t[a][b - 1];
            }
            for first in 1..=a {
                c += &t[a - first][b];
            }
            t[a][b] = c;
        }
    }
    t
}

/// `u_k(x) = Σ_{i=0}^{k} c_{i,k−i} x^i`.
pub fn u_poly(k: usize) -> IntPoly {
    let t = weak_comp_table(k, k);
    IntPoly::from_coeffs((0..=k).map(|i| t[i][k - i].clone()).collect())
}

/// `x^{−k} u_k(x)`.
pub fn u_norm(k: usize) -> LaurentPoly {
    LaurentPoly::from_poly_shifted(&u_poly(k), -(k as i64))
}

/// `u_norm(0) + … + u_norm(k)`.
pub fn v_norm(k: usize) -> LaurentPoly {
    (0..=k).map(u_norm).sum()
}

/// A `k`-fuse `(2,1,2,1,…,3)`, all barred, placed in front of `tail`.
pub fn fuse_element(k: usize, tail: &InfBarredSeq) -> InfBarredSeq {
    assert!(k >= 1);
    let mut prefix: Vec<_> = (1..k)
        .map(|i| crate::mu::Entry::new(if i % 2 == 1 { 2 } else { 1 }, true))
        .collect();
    prefix.push(crate::mu::Entry::new(3, true));
    prefix.extend_from_slice(tail.prefix());
    InfBarredSeq::new(prefix, tail.period().to_vec()).expect("tail period is proper")
}

/// Level census of the root of `start` together with every element reached
/// by first playing one of the parts `1..=k` and then anything playable.
/// Each reached element is also reported with the play sequence leading to it.
pub fn fuse_subtree(start: &InfBarredSeq, k: usize) -> (IntPoly, Vec<Vec<usize>>) {
    let mut census: Vec<BigInt> = vec![BigInt::from(1)];
    let mut plays: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue: VecDeque<(InfBarredSeq, Vec<usize>)> = VecDeque::new();
    for j in start.barred_positions().into_iter().filter(|&j| j <= k) {
        queue.push_back((start.inf_move(j).unwrap(), vec![j]));
    }
    while let Some((node, path)) = queue.pop_front() {
        let level = path.len();
        if census.len() <= level {
            census.resize(level + 1, BigInt::from(0));
        }
        census[level] += 1;
        for j in node.barred_positions() {
            let mut p = path.clone();
            p.push(j);
            queue.push_back((node.inf_move(j).unwrap(), p));
        }
        plays.push(path);
    }
    (IntPoly::from_coeffs(census), plays)
}

/// Builds a `k`-fuse in front of `tail` and counts the levels of its
/// burnt-out subtree by exhaustive play. Agrees with [`u_poly`].
pub fn u_tree_oracle(k: usize, tail: &InfBarredSeq) -> IntPoly {
    if k == 0 {
        return IntPoly::one();
    }
    fuse_subtree(&fuse_element(k, tail), k).0
}

/// Maps a weak composition with `k − i` zeros (for `i` its sum) to the play
/// sequence that reaches the corresponding element from a `k`-fuse.
pub fn play_of_composition(k: usize, comp: &[u32]) -> Result<Vec<usize>> {
    let sum: u32 = comp.iter().sum();
    let zeros = comp.iter().filter(|&&c| c == 0).count();
    if sum as usize + zeros != k {
        return Err(Error::InvalidComposition(format!(
            "{comp:?} has sum {sum} and {zeros} zeros, which do not add up to {k}"
        )));
    }
    let mut plays = Vec::new();
    let mut rest = comp.to_vec();
    let mut fuse = k;
    while let Some(last) = rest.iter().rposition(|&c| c != 0) {
        let m = rest.len() - 1 - last;
        let nu = rest[last] as usize;
        let p = fuse + 1 - m - nu;
        plays.extend(std::iter::repeat_n(p, nu));
        fuse = p - 1;
        rest.truncate(last);
    }
    Ok(plays)
}

/// Inverse of [`play_of_composition`].
pub fn composition_of_play(k: usize, plays: &[usize]) -> Result<Vec<u32>> {
    let bad = |why: &str| Error::InvalidPlay(format!("{plays:?} on a {k}-fuse: {why}"));
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &p in plays {
        match runs.last_mut() {
            Some((q, a)) if *q == p => *a += 1,
            Some((q, _)) if *q < p => return Err(bad("indices increase")),
            _ => runs.push((p, 1)),
        }
    }
    let mut rev: Vec<u32> = Vec::new();
    let mut prev = k + 1;
    for &(i, alpha) in &runs {
        if i == 0 || i > k || alpha > prev - i {
            return Err(bad("play not available"));
        }
        rev.extend(std::iter::repeat_n(0, prev - i - alpha));
        rev.push(alpha as u32);
        prev = i;
    }
    rev.extend(std::iter::repeat_n(0, prev - 1));
    rev.reverse();
    Ok(rev)
}
