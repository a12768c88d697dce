//! Finite orbits `O_N`: every partition whose forward iteration ends in the
//! recurrent cycle of the necklace `N`, organised by level.
//!
//! Orbits are grown backwards from the cycle with the reversed moves, which
//! touches only the orbit itself rather than all partitions of `n`.

use num_bigint::BigInt;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::necklace::{brandt_partition, rotations, Necklace};
use crate::partition::Partition;
use crate::polyrat::IntPoly;

pub const DEFAULT_MAX_STATES: u64 = 10_000_000;
pub const DEFAULT_MAX_POWER: usize = 8;

/// Resource caps for orbit enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_states: u64,
    pub max_power: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_states: DEFAULT_MAX_STATES,
            max_power: DEFAULT_MAX_POWER,
        }
    }
}

impl Limits {
    /// Defaults, with `BS_MAX_STATES` overriding the state cap when set.
    pub fn from_env() -> Self {
        let mut l = Self::default();
        if let Some(n) = std::env::var("BS_MAX_STATES")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            l.max_states = n;
        }
        l
    }

    fn check_power(&self, power: usize) -> Result<()> {
        if power > self.max_power {
            return Err(Error::Capped {
                what: format!("power {power}"),
                cap: self.max_power as u64,
            });
        }
        Ok(())
    }
}

/// The distinct Brandt images of the rotations of `n`: the recurrent cycle.
pub fn recurrent_cycle(n: &Necklace) -> Vec<Partition> {
    let mut seen = FxHashSet::default();
    rotations(n.word())
        .iter()
        .map(|w| brandt_partition(w))
        .filter(|p| seen.insert(p.clone()))
        .collect()
}

/// Checks by forward iteration that every Brandt image of `n` is recurrent
/// and that its cycle is exactly the set of images.
pub fn brandt_cycle_check(n: &Necklace) -> bool {
    let images: FxHashSet<Partition> = recurrent_cycle(n).into_iter().collect();
    images.iter().all(|p| {
        let (level, cycle) = p.level_and_cycle();
        level == 0 && cycle.len() == images.len() && cycle.iter().all(|q| images.contains(q))
    })
}

fn expand(frontier: &[Partition], cycle: &FxHashSet<Partition>) -> Vec<Partition> {
    let step = |p: &Partition| {
        p.preimages()
            .into_iter()
            .filter(|q| !cycle.contains(q))
            .collect::<Vec<_>>()
    };
    #[cfg(feature = "parallel")]
    {
        if frontier.len() >= 256 {
            return frontier.par_iter().flat_map_iter(step).collect();
        }
    }
    frontier.iter().flat_map(step).collect()
}

/// Walks the orbit level by level, handing each level to `visit`.
///
/// Every partition outside the cycle has exactly one image under the
/// forward move, so each is generated exactly once and no visited set is
/// needed beyond the cycle itself.
fn walk_levels(
    n: &Necklace,
    limits: &Limits,
    mut visit: impl FnMut(usize, &[Partition]),
) -> Result<u64> {
    let cycle_list = recurrent_cycle(n);
    let cycle: FxHashSet<Partition> = cycle_list.iter().cloned().collect();
    let mut frontier = cycle_list;
    let mut total = 0u64;
    let mut level = 0;
    while !frontier.is_empty() {
        total += frontier.len() as u64;
        if total > limits.max_states {
            return Err(Error::Capped {
                what: format!("orbit of {n}"),
                cap: limits.max_states,
            });
        }
        visit(level, &frontier);
        frontier = expand(&frontier, &cycle);
        level += 1;
    }
    Ok(total)
}

/// Level census `D_N(x) = Σ_{λ ∈ O_N} x^{level(λ)}` of any necklace.
pub fn level_census(n: &Necklace, limits: &Limits) -> Result<IntPoly> {
    let mut coeffs = Vec::new();
    walk_levels(n, limits, |_, f| coeffs.push(BigInt::from(f.len())))?;
    Ok(IntPoly::from_coeffs(coeffs))
}

/// `D_{P^ℓ}(x)` for a primitive `P`.
pub fn d_series(p: &Necklace, power: usize, limits: &Limits) -> Result<IntPoly> {
    p.require_primitive()?;
    limits.check_power(power)?;
    level_census(&p.power(power), limits)
}

/// `|O_{P^ℓ}|`.
pub fn orbit_size(p: &Necklace, power: usize, limits: &Limits) -> Result<BigInt> {
    Ok(d_series(p, power, limits)?.eval(&BigInt::from(1)))
}

/// An orbit with the level of every member. Edges are given by the forward
/// move.
#[derive(Clone, Debug)]
pub struct OrbitDigraph {
    pub necklace: Necklace,
    pub levels: FxHashMap<Partition, u32>,
    pub roots: Vec<Partition>,
}

impl OrbitDigraph {
    pub fn size(&self) -> usize {
        self.levels.len()
    }

    pub fn census(&self) -> IntPoly {
        let mut c: Vec<BigInt> = Vec::new();
        for &l in self.levels.values() {
            let l = l as usize;
            if c.len() <= l {
                c.resize(l + 1, BigInt::from(0));
            }
            c[l] += 1;
        }
        IntPoly::from_coeffs(c)
    }

    /// Number of walks of each length `0..=m` that start on the cycle and
    /// follow reversed moves.
    pub fn path_counts(&self, m: usize) -> Vec<BigInt> {
        let mut w: FxHashMap<&Partition, BigInt> = self
            .roots
            .iter()
            .map(|r| (r, BigInt::from(1)))
            .collect();
        let mut out = vec![w.values().sum()];
        for _ in 0..m {
            let mut next: FxHashMap<&Partition, BigInt> = FxHashMap::default();
            for u in self.levels.keys() {
                if let Some(c) = w.get(&u.beta()) {
                    next.insert(u, c.clone());
                }
            }
            w = next;
            out.push(w.values().sum());
        }
        out
    }
}

/// `O_{P^ℓ}` with all levels stored.
pub fn build_orbit(p: &Necklace, power: usize, limits: &Limits) -> Result<OrbitDigraph> {
    p.require_primitive()?;
    limits.check_power(power)?;
    let n = p.power(power);
    let mut levels = FxHashMap::default();
    let mut roots = Vec::new();
    walk_levels(&n, limits, |l, f| {
        if l == 0 {
            roots = f.to_vec();
        }
        levels.extend(f.iter().map(|q| (q.clone(), l as u32)));
    })?;
    Ok(OrbitDigraph {
        necklace: n,
        levels,
        roots,
    })
}

/// Outcome of growing `ℓ` until consecutive level censuses agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilized {
    pub coeffs: Vec<BigInt>,
    pub power: usize,
}

/// First `m + 1` coefficients of `H_P`, read off `D_{P^ℓ}` once two
/// consecutive powers agree on them and the earlier census already reaches
/// past level `m`.
///
/// Only the state cap bounds `ℓ` here: single-letter necklaces need powers
/// well beyond the default power cap.
pub fn stabilized_h_series(p: &Necklace, m: usize, limits: &Limits) -> Result<Stabilized> {
    p.require_primitive()?;
    let take = |d: &IntPoly| (0..=m).map(|i| d.coeff(i)).collect::<Vec<_>>();
    let mut prev = level_census(p, limits)?;
    for power in 2.. {
        let cur = level_census(&p.power(power), limits).map_err(|e| match e {
            Error::Capped { cap, .. } => Error::Capped {
                what: format!("stabilization of {p} to {} coefficients", m + 1),
                cap,
            },
            e => e,
        })?;
        if prev.degree().is_some_and(|d| d > m) && take(&cur) == take(&prev) {
            return Ok(Stabilized {
                coeffs: take(&cur),
                power,
            });
        }
        prev = cur;
    }
    unreachable!()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub sizes: Vec<BigInt>,
    /// The common ratio when the sizes form an exact geometric progression.
    pub ratio: Option<BigInt>,
}

/// Orbit sizes `|O_{P^k}|` for `k = 1..=max_k`, and their common ratio if
/// there is one.
pub fn c_ratio_probe(p: &Necklace, max_k: usize, limits: &Limits) -> Result<RatioReport> {
    let sizes = (1..=max_k)
        .map(|k| orbit_size(p, k, limits))
        .collect::<Result<Vec<_>>>()?;
    let ratio = geometric_ratio(&sizes);
    Ok(RatioReport { sizes, ratio })
}

pub(crate) fn geometric_ratio(sizes: &[BigInt]) -> Option<BigInt> {
    if sizes.len() < 2 || sizes[0] == BigInt::from(0) {
        return None;
    }
    let r = &sizes[1] / &sizes[0];
    sizes
        .windows(2)
        .all(|w| &w[0] * &r == w[1])
        .then_some(r)
}

/// Checks that walks from the cycle, counted by length, are the partial sums
/// of the level census, up to length `m`.
pub fn forest_identity_check(p: &Necklace, power: usize, m: usize, limits: &Limits) -> Result<bool> {
    let orbit = build_orbit(p, power, limits)?;
    let census = orbit.census();
    let paths = orbit.path_counts(m);
    let mut acc = BigInt::from(0);
    for (j, g) in paths.iter().enumerate() {
        acc += census.coeff(j);
        if *g != acc {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::polyrat::RatFn;

    fn n(s: &str) -> Necklace {
        s.parse().unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn brandt_images_form_the_cycle() {
        for s in ["W", "BW", "BWW", "BWBW", "BBWWW", "BWBBWW"] {
            assert!(brandt_cycle_check(&n(s)), "{s}");
        }
    }

    #[test]
    fn small_orbits() {
        assert_eq!(build_orbit(&n("BWW"), 1, &lim()).unwrap().size(), 5);
        assert_eq!(build_orbit(&n("BBW"), 1, &lim()).unwrap().size(), 7);
        assert_eq!(build_orbit(&n("BWWW"), 1, &lim()).unwrap().size(), 15);
        assert_eq!(
            d_series(&n("BWW"), 1, &lim()).unwrap(),
            "x^2 + x + 3".parse().unwrap()
        );
        assert_eq!(orbit_size(&n("BWW"), 2, &lim()).unwrap(), BigInt::from(25));
        assert_eq!(d_series(&n("W"), 1, &lim()).unwrap(), IntPoly::one());
        assert!(matches!(
            d_series(&n("BWBW"), 1, &lim()),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn levels_agree_with_forward_iteration() {
        let o = build_orbit(&n("BBW"), 2, &lim()).unwrap();
        for (lam, &lvl) in &o.levels {
            let (l, cycle) = lam.level_and_cycle();
            assert_eq!(l as u32, lvl);
            let mut c = cycle.clone();
            c.sort();
            let mut r = o.roots.clone();
            r.sort();
            assert_eq!(c, r);
        }
        assert_eq!(o.census(), d_series(&n("BBW"), 2, &lim()).unwrap());
    }

    #[test]
    fn orbits_partition_all_partitions() {
        for size in 1..=12u32 {
            let mut m = 1usize;
            while (m + 1) * m / 2 <= size as usize {
                m += 1;
            }
            let k = size as usize - m * (m - 1) / 2;
            let mut necklaces: Vec<Necklace> = (0u32..(1 << m))
                .filter(|b| b.count_ones() as usize == k)
                .map(|b| {
                    let w: Vec<_> = (0..m)
                        .map(|i| {
                            if b >> i & 1 == 1 {
                                crate::necklace::Bead::B
                            } else {
                                crate::necklace::Bead::W
                            }
                        })
                        .collect();
                    Necklace::canonicalize(&w).unwrap()
                })
                .collect();
            necklaces.sort();
            necklaces.dedup();
            let mut by_cycle: FxHashMap<Vec<Partition>, u64> = FxHashMap::default();
            for lam in partitions_of(size) {
                let mut c = lam.level_and_cycle().1;
                c.sort();
                *by_cycle.entry(c).or_default() += 1;
            }
            assert_eq!(by_cycle.len(), necklaces.len(), "n={size}");
            for nk in &necklaces {
                let mut c = recurrent_cycle(nk);
                c.sort();
                let census = level_census(nk, &lim()).unwrap();
                assert_eq!(
                    census.eval(&BigInt::from(1)),
                    BigInt::from(by_cycle[&c]),
                    "{nk}"
                );
            }
        }
    }

    #[test]
    fn stabilized_series() {
        let s = stabilized_h_series(&n("BWW"), 4, &lim()).unwrap();
        assert_eq!(s.coeffs, ints(&[3, 1, 2, 3, 5]));
        let s = stabilized_h_series(&n("W"), 4, &lim()).unwrap();
        assert_eq!(s.coeffs, ints(&[1, 1, 3, 8, 21]));
        let hbw = RatFn::new(
            &"x^2 - 2x + 1".parse::<IntPoly>().unwrap() * &"3x + 2".parse().unwrap(),
            "x^3 - 3x^2 - x + 1".parse().unwrap(),
        )
        .unwrap();
        let s = stabilized_h_series(&n("BW"), 3, &lim()).unwrap();
        assert_eq!(s.coeffs, hbw.series_integers(3).unwrap());
    }

    #[test]
    fn ratios() {
        let r = c_ratio_probe(&n("BWW"), 4, &lim()).unwrap();
        assert_eq!(r.sizes, ints(&[5, 25, 125, 625]));
        assert_eq!(r.ratio, Some(BigInt::from(5)));
        let r = c_ratio_probe(&n("BBWW"), 2, &lim()).unwrap();
        assert_eq!(r.sizes, ints(&[15, 150]));
        assert_eq!(r.ratio, Some(BigInt::from(10)));
        assert_eq!(geometric_ratio(&ints(&[2, 4, 9])), None);
        assert_eq!(geometric_ratio(&ints(&[2])), None);
    }

    #[test]
    fn caps_are_reported() {
        let tight = Limits {
            max_states: 20,
            max_power: 2,
        };
        assert!(matches!(
            d_series(&n("BWW"), 2, &tight),
            Err(Error::Capped { .. })
        ));
        assert!(matches!(
            d_series(&n("BWW"), 3, &tight),
            Err(Error::Capped { .. })
        ));
    }

    #[test]
    fn forest_identity() {
        assert!(forest_identity_check(&n("BWW"), 1, 4, &lim()).unwrap());
        assert!(forest_identity_check(&n("BWW"), 2, 5, &lim()).unwrap());
        let o = build_orbit(&n("BBWW"), 1, &lim()).unwrap();
        assert_eq!(o.path_counts(0), vec![BigInt::from(4)]);
    }
}
