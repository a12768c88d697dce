use serde::Serialize;

use crate::error::{Error, Result};
use crate::mu::recurrent_elements_from_word;
use crate::necklace::{Bead, Necklace};
use crate::polyrat::{IntPoly, RatFn};

use super::tree::{expand_degenerate_tree, Roots, TreeExpansion};

/// `g_i = A_i + Σ_j M_ij g_j` for the recurrent elements `C_1, …, C_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<IntPoly>,
    #[serde(rename = "M")]
    pub m: Vec<Vec<IntPoly>>,
}

pub fn default_depth_cap(len: usize) -> usize {
    4 * len + 8
}

/// Expansions of every recurrent root of the word, in root order. Element
/// `i` is the one whose tail comes from the word rotated left by `i`.
pub fn expand_all(word: &[Bead], depth_cap: usize) -> Result<Vec<TreeExpansion>> {
    let roots = Roots::new(recurrent_elements_from_word(word)?);
    expand_roots(&roots, depth_cap)
}

#[cfg(feature = "parallel")]
fn expand_roots(roots: &Roots, depth_cap: usize) -> Result<Vec<TreeExpansion>> {
    use rayon::prelude::*;
    (0..roots.len())
        .into_par_iter()
        .map(|i| expand_degenerate_tree(roots, i, depth_cap))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn expand_roots(roots: &Roots, depth_cap: usize) -> Result<Vec<TreeExpansion>> {
    (0..roots.len())
        .map(|i| expand_degenerate_tree(roots, i, depth_cap))
        .collect()
}

impl LinearSystem {
    pub fn from_expansions(exps: &[TreeExpansion]) -> Self {
        let n = exps.len();
        let mut m = vec![vec![IntPoly::zero(); n]; n];
        for (i, e) in exps.iter().enumerate() {
            for t in &e.terms {
                let w = t.weight.shift(t.level);
                m[i][t.target - 1] = &m[i][t.target - 1] + &w;
            }
        }
        Self {
            n,
            a: exps.iter().map(|e| e.constant.clone()).collect(),
            m,
        }
    }

    /// `det(I − M)` and the determinants with column `i` replaced by `A`.
    fn cramer(&self) -> (IntPoly, Vec<IntPoly>) {
        let k: Vec<Vec<IntPoly>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let d = if i == j { IntPoly::one() } else { IntPoly::zero() };
                        &d - &self.m[i][j]
                    })
                    .collect()
            })
            .collect();
        let det = bareiss_det(k.clone());
        let cols = (0..self.n)
            .map(|c| {
                let mut ki = k.clone();
                for (row, a) in ki.iter_mut().zip(&self.a) {
                    row[c] = a.clone();
                }
                bareiss_det(ki)
            })
            .collect();
        (det, cols)
    }

    /// The generating functions `g_1, …, g_n`.
    pub fn solve(&self) -> Result<Vec<RatFn>> {
        let (det, cols) = self.cramer();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        cols.into_iter()
            .map(|c| RatFn::new(c, det.clone()))
            .collect()
    }

    /// `(1 − x) Σ g_i`.
    pub fn h(&self) -> Result<RatFn> {
        let (det, cols) = self.cramer();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let sum: IntPoly = cols.into_iter().sum();
        RatFn::new(&IntPoly::from_i64s(&[1, -1]) * &sum, det)
    }

    pub fn entries_nonnegative(&self) -> bool {
        self.a.iter().all(IntPoly::has_nonnegative_coeffs)
            && self
                .m
                .iter()
                .flatten()
                .all(|p| p.has_nonnegative_coeffs() && p.coeff(0) == 0.into())
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// The system of the word's recurrent roots, in word-rotation order.
pub fn assemble_system_from_word(word: &[Bead], depth_cap: usize) -> Result<LinearSystem> {
    Ok(LinearSystem::from_expansions(&expand_all(word, depth_cap)?))
}

pub fn assemble_system(p: &Necklace, depth_cap: usize) -> Result<LinearSystem> {
    p.require_primitive()?;
    assemble_system_from_word(p.word(), depth_cap)
}

/// The limit `H_P(x)` of the level generating functions of `O_{P^ℓ}`.
pub fn h_limit(p: &Necklace, depth_cap: usize) -> Result<RatFn> {
    assemble_system(p, depth_cap)?.h()
}

/// The machine-readable result of solving the limit system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    pub necklace: Necklace,
    #[serde(rename = "H")]
    pub h: Option<RatFn>,
    pub system: Option<LinearSystem>,
    pub closed: bool,
    pub depth_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_closing: Option<String>,
}

pub fn limit_report(p: &Necklace, depth_cap: usize) -> Result<LimitReport> {
    let mut report = LimitReport {
        necklace: p.clone(),
        h: None,
        system: None,
        closed: false,
        depth_cap,
        non_closing: None,
    };
    match assemble_system(p, depth_cap) {
        Ok(sys) => {
            report.h = Some(sys.h()?);
            report.system = Some(sys);
            report.closed = true;
        }
        Err(e @ Error::NonClosing { .. }) => report.non_closing = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::parse_word;

    fn nk(s: &str) -> Necklace {
        Necklace::canonicalize(&parse_word(s).unwrap()).unwrap()
    }

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn h_of(s: &str) -> RatFn {
        h_limit(&nk(s), default_depth_cap(s.len())).unwrap()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![p("x + 1"), p("2"), p("x^2")],
            vec![p("0"), p("x - 3"), p("1")],
            vec![p("4x"), p("1"), p("0")],
        ];
        // expand along the first row
        let direct = &(&p("x + 1") * &(&(&p("x - 3") * &p("0")) - &p("1")))
            - &(&p("2") * &(&(&p("0") * &p("0")) - &(&p("1") * &p("4x"))))
            + &p("x^2") * &(&(&p("0") * &p("1")) - &(&p("x - 3") * &p("4x")));
        assert_eq!(bareiss_det(m), direct);
    }

    #[test]
    fn bareiss_handles_zero_pivot_and_singular() {
        let m = vec![vec![p("0"), p("1")], vec![p("1"), p("0")]];
        assert_eq!(bareiss_det(m), p("-1"));
        let s = vec![vec![p("x"), p("x^2")], vec![p("1"), p("x")]];
        assert!(bareiss_det(s).is_zero());
    }

    #[test]
    fn h_of_three_bead_necklaces() {
        let want = RatFn::new(p("-x^4 + 4x^3 + x^2 - x - 3"), p("2x^3 + x^2 - 1")).unwrap();
        assert_eq!(h_of("BWW"), want);
        assert_eq!(h_of("BBW"), want);
    }

    #[test]
    fn h_of_four_bead_necklaces() {
        let one_minus_x = p("1 - x");
        let bwww = RatFn::new(
            &one_minus_x * &p("x^5 + 8x^4 - 3x^3 - 8x^2 - 6x - 4"),
            p("6x^4 + 4x^3 + x^2 - 1"),
        )
        .unwrap();
        let bbww = RatFn::new(
            &one_minus_x * &p("x^5 + 4x^4 - 3x^3 - 6x^2 - 6x - 4"),
            p("3x^4 + 2x^3 + x^2 - 1"),
        )
        .unwrap();
        assert_eq!(h_of("BWWW"), bwww);
        assert_eq!(h_of("BBWW"), bbww);
    }

    #[test]
    fn bwww_first_row_after_substituting_g4() {
        let sys = assemble_system_from_word(&parse_word("WWBW").unwrap(), 24).unwrap();
        assert_eq!(sys.a[3], p("1"));
        assert_eq!(sys.m[3], vec![p("x"), p("0"), p("0"), p("0")]);
        // g_1 = A_1 + Σ M_1j g_j with g_4 = 1 + x g_1
        let a = &sys.a[0] + &sys.m[0][3];
        let g1 = &sys.m[0][0] + &(&sys.m[0][3] * &p("x"));
        assert_eq!(a, p("1 + x + 2x^2 + 2x^3"));
        assert_eq!(sys.m[0][1], p("x"));
        assert!(sys.m[0][2].is_zero());
        // x^4 + x^3 u_1 + x^2 u_2
        assert_eq!(g1, p("x^4 + x^3 + x^4 + x^2 + 2x^3 + 2x^4"));
    }

    #[test]
    fn wb4_rows_two_to_five() {
        let sys = assemble_system_from_word(&parse_word("BBBBW").unwrap(), 28).unwrap();
        let z = IntPoly::zero;
        // level + k exponents: x^3 u_1 reads x^2 (1 + x) here
        assert_eq!(sys.m[1], vec![z(), z(), p("x"), p("x^2"), p("x^2 + x^3")]);
        assert_eq!(sys.m[2], vec![z(), z(), z(), p("x"), p("x + x^2")]);
        assert_eq!(sys.m[3], vec![z(), z(), z(), z(), p("x")]);
        assert_eq!(sys.m[4], vec![p("x"), z(), z(), z(), z()]);
    }

    #[test]
    fn entries_are_nonnegative_without_constant_terms() {
        for w in ["BWW", "BWWW", "BBWW", "BWBWB", "BBWBW"] {
            let sys = assemble_system(&nk(w), 40).unwrap();
            assert!(sys.entries_nonnegative(), "{w}");
        }
    }

    #[test]
    fn one_bead_necklaces_do_not_close() {
        let err = assemble_system(&nk("W"), 12).unwrap_err();
        assert!(matches!(err, Error::NonClosing { root: 1, .. }));
        let report = limit_report(&nk("BW"), 16).unwrap();
        assert!(!report.closed);
        assert!(report.h.is_none());
    }

    #[test]
    fn report_json_shape() {
        let r = limit_report(&nk("BWW"), 20).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["necklace"], "BWW");
        assert_eq!(v["closed"], true);
        assert_eq!(v["depth_cap"], 20);
        assert_eq!(v["system"]["M"].as_array().unwrap().len(), 3);
        assert!(v["H"]["den"].is_object());
    }
}
