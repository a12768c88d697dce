use crate::error::{Error, Result};
use crate::fuse::v_norm;
use crate::necklace::Bead;
use crate::polyrat::{IntPoly, LaurentPoly};

use super::system::{assemble_system_from_word, default_depth_cap, LinearSystem};

fn x_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(1, e)
}

fn require_at_least_two(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("index {n} is below 2")));
    }
    Ok(())
}

/// `Σ_{i < (m−1)/2} x^{2i+1} v_i s_{m−2i−1}`, the part shared by both
/// recurrences.
fn chain_sum(s: &[LaurentPoly], m: usize) -> LaurentPoly {
    (0..(m - 1) / 2)
        .map(|i| x_pow(2 * i as i64 + 1) * v_norm(i) * s[m - 2 * i - 1].clone())
        .sum()
}

/// `f_n` by its even/odd recurrence, from `f_2 = x³v_1` and
/// `f_3 = x⁴(v_1 + v_2)`.
pub fn f_poly(n: usize) -> Result<LaurentPoly> {
    require_at_least_two(n)?;
    let mut f: Vec<LaurentPoly> = vec![LaurentPoly::zero(); n.max(3) + 1];
    f[2] = x_pow(3) * v_norm(1);
    f[3] = x_pow(4) * (v_norm(1) + v_norm(2));
    for m in 4..=n {
        let mut acc = chain_sum(&f, m);
        if m % 2 == 0 {
            acc = acc
                + x_pow(m as i64 - 2) * v_norm((m - 4) / 2) * f[2].clone()
                + x_pow(m as i64 + 1) * v_norm(m / 2);
        } else {
            acc = acc + x_pow(m as i64 + 1) * v_norm(m.div_ceil(2));
        }
        f[m] = acc;
    }
    Ok(f.swap_remove(n))
}

/// `h_n` by its even/odd recurrence with the unspecified polynomial term
/// dropped; the `g_1` coefficients carry no such term.
pub fn h_poly_recurrence(n: usize) -> Result<LaurentPoly> {
    require_at_least_two(n)?;
    let mut h: Vec<LaurentPoly> = vec![LaurentPoly::zero(); n + 1];
    for m in 2..=n {
        h[m] = chain_sum(&h, m) + x_pow(m as i64 + 1) * v_norm(m / 2);
    }
    Ok(h.swap_remove(n))
}

/// `h_n`: the coefficient of `g_1` in `g_2` once the system of `WB^{n+1}`
/// is solved by substitution.
pub fn h_poly(n: usize) -> Result<LaurentPoly> {
    require_at_least_two(n)?;
    let word = b_power_w(n + 1);
    let sys = assemble_system_from_word(&word, default_depth_cap(word.len()))?;
    Ok(LaurentPoly::from_poly_shifted(&g1_coefficients(&sys)?[1], 0))
}

/// `p_n = x^{−1}h_{n+1} − x²v_1h_{n−2}` for `n ≥ 4`, with
/// `p_2 = x³v_1` and `p_3 = x⁴(v_1 + v_2)`.
pub fn p_poly(n: usize) -> Result<LaurentPoly> {
    require_at_least_two(n)?;
    Ok(match n {
        2 => x_pow(3) * v_norm(1),
        3 => x_pow(4) * (v_norm(1) + v_norm(2)),
        _ => x_pow(-1) * h_poly(n + 1)? - x_pow(2) * v_norm(1) * h_poly(n - 2)?,
    })
}

/// `f_k` read off the system of `BW^k`: the coefficient of `g_1` in the
/// equation for `g_1` after substitution.
pub fn f_from_system(k: usize) -> Result<IntPoly> {
    require_at_least_two(k)?;
    let word = w_power_bw(k);
    let sys = assemble_system_from_word(&word, default_depth_cap(word.len()))?;
    Ok(g1_coefficients(&sys)?.swap_remove(0))
}

/// `p_n` read off the system of `WB^n` the same way.
pub fn p_from_system(n: usize) -> Result<IntPoly> {
    require_at_least_two(n)?;
    let word = b_power_w(n);
    let sys = assemble_system_from_word(&word, default_depth_cap(word.len()))?;
    Ok(g1_coefficients(&sys)?.swap_remove(0))
}

/// `W^{k−1}BW`, a rotation of `BW^k` whose first recurrent element heads
/// the main branch.
pub fn w_power_bw(k: usize) -> Vec<Bead> {
    let mut w = vec![Bead::W; k - 1];
    w.extend([Bead::B, Bead::W]);
    w
}

/// `B^kW`, a rotation of `WB^k`.
pub fn b_power_w(k: usize) -> Vec<Bead> {
    let mut w = vec![Bead::B; k];
    w.push(Bead::W);
    w
}

/// Substitutes `g_n, …, g_2` upward, writing each as `a_ℓ + c_ℓ g_1`, and
/// returns `[c_1, c_2, …, c_n]` where `c_1` is the resulting coefficient of
/// `g_1` in the first equation. Needs row `ℓ > 1` to mention only `g_1` and
/// later unknowns.
pub fn g1_coefficients(sys: &LinearSystem) -> Result<Vec<IntPoly>> {
    let n = sys.n;
    let mut c = vec![IntPoly::zero(); n];
    for l in (0..n).rev() {
        if l > 0 {
            if let Some(j) = (1..=l).find(|&j| !sys.m[l][j].is_zero()) {
                return Err(Error::NotTriangular(format!(
                    "equation {} mentions g_{}",
                    l + 1,
                    j + 1
                )));
            }
        }
        let mut acc = sys.m[l][0].clone();
        for (mj, cj) in sys.m[l].iter().zip(&c).skip((l + 1).max(1)) {
            acc = &acc + &(mj * cj);
        }
        c[l] = acc;
    }
    Ok(c)
}
