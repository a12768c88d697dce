use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuse::{detect_fuse, fuse_subtree, FuseKind};
use crate::mu::{Entry, InfBarredSeq, ValueSeq};
use crate::polyrat::IntPoly;

/// How a collapsed element splits into a finite prefix and a recurrent
/// element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    /// The element is itself recurrent.
    Recurrent,
    /// A `k`-fuse followed by a recurrent element.
    Fuse,
    /// A barred prefix ending in a barred part `>= 3` that is not a fuse,
    /// followed by a recurrent element.
    Shield,
}

/// Contribution `x^level · weight(x) · g_target(x)` of a collapsed subtree.
/// `fuse_k` is the prefix length (0 for a bare recurrent element, `k` for a
/// `k`-fuse, whose weight is `u_k`); `target` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DegenerateTerm {
    pub level: usize,
    pub fuse_k: usize,
    pub target: usize,
    pub kind: TermKind,
    pub weight: IntPoly,
}

/// A tree of the limiting forest with every recurrent subtree collapsed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeExpansion {
    /// Census of the elements that were not collapsed, the root included.
    pub constant: IntPoly,
    pub terms: Vec<DegenerateTerm>,
    /// Collapse candidates rejected because the remainder matched a
    /// recurrent element in values but not in bars.
    pub bar_mismatches: usize,
}

/// Upper bound on the uncollapsed elements of one tree.
pub const MAX_TREE_NODES: usize = 2_000_000;

/// The recurrent elements of one necklace, with lookup by values.
#[derive(Clone, Debug)]
pub struct Roots {
    pub elements: Vec<InfBarredSeq>,
    by_values: HashMap<ValueSeq, usize>,
}

impl Roots {
    pub fn new(elements: Vec<InfBarredSeq>) -> Self {
        let by_values = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.values(), i))
            .collect();
        Self {
            elements,
            by_values,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// 0-based index of the recurrent element with these values.
    pub fn find(&self, v: &ValueSeq) -> Option<usize> {
        self.by_values.get(v).copied()
    }
}

/// A collapsible element: the first `len` entries form a prefix that burns
/// out on its own, and the rest is recurrent element `target` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Collapse {
    pub kind: TermKind,
    pub len: usize,
    pub target: usize,
}

pub(crate) fn classify(node: &InfBarredSeq, roots: &Roots, mism: &mut usize) -> Option<Collapse> {
    let mut lookup = |rest: InfBarredSeq| -> Option<usize> {
        let t = roots.find(&rest.values())?;
        if rest == roots.elements[t] {
            Some(t)
        } else {
            *mism += 1;
            None
        }
    };
    for (i, e) in node.prefix().iter().enumerate() {
        if e.value == 0 {
            continue;
        }
        if !e.barred {
            break;
        }
        if e.value >= 3 {
            if let Some(target) = lookup(node.suffix_after(i + 1)) {
                let kind = if detect_fuse(node).kind == FuseKind::Fuse {
                    TermKind::Fuse
                } else {
                    TermKind::Shield
                };
                return Some(Collapse {
                    kind,
                    len: i + 1,
                    target,
                });
            }
        }
    }
    lookup(node.clone()).map(|target| Collapse {
        kind: TermKind::Recurrent,
        len: 0,
        target,
    })
}

/// Level census of the finite tree hanging off a shielding prefix. Only the
/// prefix values matter, with the final part read as "at least 3".
fn prefix_weight(node: &InfBarredSeq, len: usize, cache: &mut HashMap<Vec<u32>, IntPoly>) -> IntPoly {
    if len == 0 {
        return IntPoly::one();
    }
    let mut key: Vec<u32> = node.prefix()[..len].iter().map(|e| e.value).collect();
    key[len - 1] = 3;
    if let Some(w) = cache.get(&key) {
        return w.clone();
    }
    let prefix = key.iter().map(|&v| Entry::new(v, v != 0)).collect();
    let start = InfBarredSeq::new(prefix, vec![1]).expect("constant tail is proper");
    let w = fuse_subtree(&start, len).0;
    cache.insert(key, w.clone());
    w
}

/// Expands the tree of root `i` (0-based) depth first. Every element that is
/// a burnt-out prefix followed by a recurrent element, or is itself
/// recurrent, becomes a [`DegenerateTerm`]; every other element adds
/// `x^level` to the constant.
pub fn expand_degenerate_tree(roots: &Roots, i: usize, depth_cap: usize) -> Result<TreeExpansion> {
    let mut census: Vec<u64> = vec![1];
    let mut terms = Vec::new();
    let mut bar_mismatches = 0;
    let mut cache = HashMap::new();
    let mut opened = 1usize;
    let root = &roots.elements[i];
    let mut stack: Vec<(InfBarredSeq, Vec<usize>)> = root
        .barred_positions()
        .into_iter()
        .rev()
        .map(|j| (root.inf_move(j).unwrap(), vec![j]))
        .collect();
    while let Some((node, path)) = stack.pop() {
        let level = path.len();
        if let Some(c) = classify(&node, roots, &mut bar_mismatches) {
            terms.push(DegenerateTerm {
                level,
                fuse_k: c.len,
                target: c.target + 1,
                kind: c.kind,
                weight: prefix_weight(&node, c.len, &mut cache),
            });
            continue;
        }
        if level > depth_cap || opened >= MAX_TREE_NODES {
            return Err(Error::NonClosing {
                root: i + 1,
                branch: path
                    .iter()
                    .map(|j| format!("R{j}"))
                    .collect::<Vec<_>>()
                    .join(","),
                depth_cap,
            });
        }
        opened += 1;
        if census.len() <= level {
            census.resize(level + 1, 0);
        }
        census[level] += 1;
        for j in node.barred_positions().into_iter().rev() {
            let mut p = path.clone();
            p.push(j);
            stack.push((node.inf_move(j).unwrap(), p));
        }
    }
    terms.sort_by_key(|t| (t.level, t.fuse_k, t.target));
    Ok(TreeExpansion {
        constant: IntPoly::from_coeffs(census.into_iter().map(BigInt::from).collect()),
        terms,
        bar_mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuse::u_poly;
    use crate::mu::recurrent_elements_from_word;
    use crate::necklace::parse_word;

    fn roots(w: &str) -> Roots {
        Roots::new(recurrent_elements_from_word(&parse_word(w).unwrap()).unwrap())
    }

    fn shape(e: &TreeExpansion) -> Vec<(usize, usize, usize, TermKind)> {
        e.terms
            .iter()
            .map(|t| (t.level, t.fuse_k, t.target, t.kind))
            .collect()
    }

    #[test]
    fn wbw_third_root_has_a_fuse_into_the_second() {
        // roots read from WWB: C_1 = (1*,0,2), C_2 = (0,2*,1), C_3 = (2*,1*,0)
        let r = roots("WWB");
        assert_eq!(r.elements[2].to_string(), "(2*,1* | 0,2,1)");
        let e = expand_degenerate_tree(&r, 2, 20).unwrap();
        assert_eq!(e.constant, IntPoly::one());
        assert_eq!(
            shape(&e),
            vec![(1, 0, 1, TermKind::Recurrent), (1, 1, 2, TermKind::Fuse)]
        );
        assert_eq!(e.terms[1].weight, u_poly(1));
    }

    #[test]
    fn single_move_roots_step_to_the_next_element() {
        let r = roots("WWB");
        for i in 0..2 {
            let e = expand_degenerate_tree(&r, i, 20).unwrap();
            assert_eq!(e.constant, IntPoly::one());
            assert_eq!(shape(&e), vec![(1, 0, i + 2, TermKind::Recurrent)]);
        }
    }

    #[test]
    fn bwww_main_root() {
        let r = roots("WWBW");
        let e = expand_degenerate_tree(&r, 0, 24).unwrap();
        assert_eq!(e.constant, IntPoly::from_i64s(&[1, 1, 1]));
        assert_eq!(
            shape(&e),
            vec![
                (1, 0, 2, TermKind::Recurrent),
                (2, 1, 4, TermKind::Fuse),
                (2, 2, 1, TermKind::Fuse),
                (3, 0, 4, TermKind::Recurrent),
            ]
        );
        // (2*,0,...) at level 2 matches C_3 in values only
        assert_eq!(e.bar_mismatches, 1);
    }

    #[test]
    fn shielded_prefix_weights() {
        // (0, N*) burns out as R_2 then R_1
        let r = roots("BBWW");
        let e = expand_degenerate_tree(&r, 3, 24).unwrap();
        let shield: Vec<_> = e
            .terms
            .iter()
            .filter(|t| t.kind == TermKind::Shield)
            .collect();
        assert!(!shield.is_empty());
        assert!(shield
            .iter()
            .any(|t| t.fuse_k == 2 && t.weight == IntPoly::from_i64s(&[1, 1, 1])));
    }

    #[test]
    fn depth_cap_names_the_branch() {
        let r = roots("W");
        match expand_degenerate_tree(&r, 0, 5) {
            Err(Error::NonClosing {
                root,
                branch,
                depth_cap,
            }) => {
                assert_eq!((root, depth_cap), (1, 5));
                assert_eq!(branch.split(',').count(), 6);
                assert!(branch.starts_with('R'));
            }
            other => panic!("{other:?}"),
        }
    }
}
