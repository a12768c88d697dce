use serde::Serialize;

use crate::error::{Error, Result};
use crate::mu::{recurrent_elements_from_word, InfBarredSeq};
use crate::necklace::{Bead, Necklace};

use super::system::{default_depth_cap, h_limit};

/// Whether the trees below `a` and `b` admit the same move sequences up to
/// `depth` moves.
pub fn same_moves(a: &InfBarredSeq, b: &InfBarredSeq, depth: usize) -> bool {
    let mut stack = vec![(a.clone(), b.clone(), 0)];
    while let Some((a, b, d)) = stack.pop() {
        let moves = a.barred_positions();
        if moves != b.barred_positions() {
            return false;
        }
        if d < depth {
            for j in moves {
                stack.push((a.inf_move(j).unwrap(), b.inf_move(j).unwrap(), d + 1));
            }
        }
    }
    true
}

/// Pairs the `i`-th recurrent element of each word (the one read from the
/// word rotated left by `i`) and checks that every pair of trees admits the
/// same move sequences up to `depth`.
pub fn verify_tree_isomorphism_words(w: &[Bead], w2: &[Bead], depth: usize) -> Result<bool> {
    if w.len() != w2.len() {
        return Err(Error::OutOfRange(format!(
            "lengths {} and {} differ",
            w.len(),
            w2.len()
        )));
    }
    let a = recurrent_elements_from_word(w)?;
    let b = recurrent_elements_from_word(w2)?;
    Ok(a.iter().zip(&b).all(|(x, y)| same_moves(x, y, depth)))
}

/// Tree isomorphism check for two necklaces given as words.
///
/// A pair `B(WB)^k`, `W(BW)^k` is paired through the rotations
/// [`alternating_b`] and [`alternating_w`]; any other pair is paired by
/// position in the words as given.
pub fn verify_tree_isomorphism(p: &[Bead], q: &[Bead], depth: usize) -> Result<bool> {
    for w in [p, q] {
        Necklace::canonicalize(w)?.require_primitive()?;
    }
    let (p, q) = match (family_index(p), family_index(q)) {
        (Some((true, k)), Some((false, k2))) if k == k2 => (alternating_b(k), alternating_w(k)),
        (Some((false, k)), Some((true, k2))) if k == k2 => (alternating_w(k), alternating_b(k)),
        _ => (p.to_vec(), q.to_vec()),
    };
    verify_tree_isomorphism_words(&p, &q, depth)
}

/// `Some((true, k))` for `B(WB)^k`, `Some((false, k))` for `W(BW)^k`.
fn family_index(w: &[Bead]) -> Option<(bool, usize)> {
    if w.len() < 3 || w.len().is_multiple_of(2) {
        return None;
    }
    let first = w[0];
    let alternates = w[1..]
        .iter()
        .enumerate()
        .all(|(i, &c)| c == if i % 2 == 0 { first.swap() } else { first });
    alternates.then_some((first == Bead::B, w.len() / 2))
}

/// `(BW)^kB`, the rotation of `B(WB)^k` listed first.
pub fn alternating_b(k: usize) -> Vec<Bead> {
    let mut w: Vec<Bead> = (0..k).flat_map(|_| [Bead::B, Bead::W]).collect();
    w.push(Bead::B);
    w
}

/// `W(WB)^k`, the rotation of `W(BW)^k` paired with [`alternating_b`].
pub fn alternating_w(k: usize) -> Vec<Bead> {
    let mut w = vec![Bead::W];
    w.extend((0..k).flat_map(|_| [Bead::W, Bead::B]));
    w
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorReport {
    pub equal_denominator: bool,
    pub equal_function: bool,
}

pub fn verify_same_denominator(p: &Necklace, q: &Necklace) -> Result<DenominatorReport> {
    let hp = h_limit(p, default_depth_cap(p.len()))?;
    let hq = h_limit(q, default_depth_cap(q.len()))?;
    Ok(DenominatorReport {
        equal_denominator: hp.den() == hq.den(),
        equal_function: hp == hq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::parse_word;

    fn w(s: &str) -> Vec<Bead> {
        parse_word(s).unwrap()
    }

    #[test]
    fn alternating_families_are_isomorphic() {
        assert!(verify_tree_isomorphism(&w("BWB"), &w("WBW"), 6).unwrap());
        assert!(verify_tree_isomorphism(&w("BWBWB"), &w("WBWBW"), 6).unwrap());
        assert!(verify_tree_isomorphism(&w("WBWBW"), &w("BWBWB"), 6).unwrap());
    }

    #[test]
    fn positional_pairing_for_other_words() {
        assert!(!verify_tree_isomorphism(&w("BWW"), &w("BWB"), 4).unwrap());
        // the same two necklaces line up after rotating one word
        assert!(verify_tree_isomorphism(&w("BWW"), &w("BBW"), 4).unwrap());
        assert!(verify_tree_isomorphism(&w("BWWW"), &w("BWWW"), 4).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(verify_tree_isomorphism(&w("BW"), &w("BWW"), 3).is_err());
        assert!(verify_tree_isomorphism(&w("BWBW"), &w("BBWW"), 3).is_err());
    }

    #[test]
    fn family_rotations() {
        assert_eq!(alternating_b(2), w("BWBWB"));
        assert_eq!(alternating_w(2), w("WWBWB"));
        assert_eq!(family_index(&w("WBWBW")), Some((false, 2)));
        assert_eq!(family_index(&w("BWW")), None);
    }

    #[test]
    fn denominators_of_dual_pairs() {
        let n = |s: &str| Necklace::canonicalize(&w(s)).unwrap();
        let r = verify_same_denominator(&n("BWW"), &n("BBW")).unwrap();
        assert!(r.equal_function);
        let r = verify_same_denominator(&n("BWWW"), &n("BBBW")).unwrap();
        assert_eq!(
            r,
            DenominatorReport {
                equal_denominator: true,
                equal_function: false
            }
        );
    }
}
