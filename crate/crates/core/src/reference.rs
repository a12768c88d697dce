//! Reference data: orbit-size tables and closed forms of `H_P`, checked in as
//! JSON under `golden/`, together with the code that recomputes them.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::necklace::{parse_word, Necklace};
use crate::orbit::{orbit_size, Limits};
use crate::polyrat::{IntPoly, RatFn};

const CP_JSON: &str = include_str!("../golden/orbit_tables.json");
const H_JSON: &str = include_str!("../golden/closed_forms.json");

/// One row of an orbit-size table: `|O_{P^k}| = first · c_p^{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpRow {
    pub necklace: String,
    pub c_p: u64,
    pub first: u64,
    pub verified_k: u32,
    /// Rows sharing a group are a necklace and its dual.
    pub group: u32,
}

impl CpRow {
    pub fn expected_size(&self, k: u32) -> BigInt {
        BigInt::from(self.first) * BigInt::from(self.c_p).pow(k - 1)
    }

    pub fn formula(&self) -> String {
        format!("{}·{}^(k-1)", self.first, self.c_p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpTable {
    pub size: usize,
    pub rows: Vec<CpRow>,
}

/// `H_P = (1 − x) · factor / den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HEntry {
    pub necklace: String,
    pub factor: String,
    pub den: String,
    /// Set when the entry is listed as equal to an earlier one.
    pub same_as: Option<String>,
    pub group: u32,
}

impl HEntry {
    pub fn h(&self) -> Result<RatFn> {
        let factor: IntPoly = self.factor.parse()?;
        let den: IntPoly = self.den.parse()?;
        RatFn::new(&IntPoly::from_i64s(&[1, -1]) * &factor, den)
    }

    pub fn necklace(&self) -> Result<Necklace> {
        Necklace::canonicalize(&parse_word(&self.necklace)?)
    }
}

pub fn cp_tables() -> Vec<CpTable> {
    serde_json::from_str(CP_JSON).expect("embedded table data is valid")
}

pub fn h_entries() -> Vec<HEntry> {
    serde_json::from_str(H_JSON).expect("embedded closed forms are valid")
}

/// Dual pairs: consecutive entries of the same group.
pub fn h_pairs() -> Vec<(HEntry, HEntry)> {
    let entries = h_entries();
    entries
        .windows(2)
        .filter(|w| w[0].group == w[1].group)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SizeCell {
    Size(String),
    Skipped(String),
}

pub const SKIPPED_CAPPED: &str = "skipped: capped";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRowReport {
    pub necklace: String,
    pub c_p: u64,
    pub formula: String,
    pub sizes: Vec<SizeCell>,
    /// Largest `k` whose size was computed and matched.
    pub checked_k: u32,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub size: usize,
    pub rows: Vec<TableRowReport>,
}

/// Recomputes `|O_{P^k}|` for `k = 1..=max_power` for every tabulated
/// necklace of size at most `max_size`. A power whose orbit would exceed the
/// state cap (judged from the ratio of the last two computed sizes, or
/// discovered while enumerating) is marked skipped, as are all higher powers.
pub fn tables_report(max_size: usize, max_power: u32, limits: &Limits) -> Result<Vec<TableReport>> {
    cp_tables()
        .into_iter()
        .filter(|t| t.size <= max_size)
        .map(|t| {
            let rows = t
                .rows
                .iter()
                .map(|row| table_row(row, max_power, limits))
                .collect::<Result<_>>()?;
            Ok(TableReport { size: t.size, rows })
        })
        .collect()
}

fn table_row(row: &CpRow, max_power: u32, limits: &Limits) -> Result<TableRowReport> {
    let p = Necklace::canonicalize(&parse_word(&row.necklace)?)?;
    let mut sizes = Vec::new();
    let mut computed: Vec<BigInt> = Vec::new();
    let mut capped = false;
    let mut mismatch = false;
    let mut checked_k = 0;
    for k in 1..=max_power {
        if !capped {
            if let [.., a, b] = computed.as_slice() {
                capped = b * b / a > BigInt::from(limits.max_states);
            }
        }
        if !capped {
            match orbit_size(&p, k as usize, limits) {
                Ok(s) => {
                    if s == row.expected_size(k) {
                        if !mismatch {
                            checked_k = k;
                        }
                    } else {
                        mismatch = true;
                    }
                    sizes.push(SizeCell::Size(s.to_string()));
                    computed.push(s);
                    continue;
                }
                Err(Error::Capped { .. }) => capped = true,
                Err(e) => return Err(e),
            }
        }
        sizes.push(SizeCell::Skipped(SKIPPED_CAPPED.to_string()));
    }
    let status = if mismatch {
        "mismatch"
    } else if capped {
        "capped"
    } else {
        "ok"
    };
    Ok(TableRowReport {
        necklace: row.necklace.clone(),
        c_p: row.c_p,
        formula: row.formula(),
        sizes,
        checked_k,
        status: status.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_cover_every_primitive_necklace() {
        let tables = cp_tables();
        assert_eq!(
            tables.iter().map(|t| (t.size, t.rows.len())).collect::<Vec<_>>(),
            vec![(4, 3), (5, 6), (6, 9), (7, 18), (8, 30)]
        );
        for t in &tables {
            let mut canon: Vec<Necklace> = t
                .rows
                .iter()
                .map(|r| Necklace::canonicalize(&parse_word(&r.necklace).unwrap()).unwrap())
                .collect();
            canon.sort();
            canon.dedup();
            let mut all = crate::necklace::primitive_necklaces(t.size);
            all.sort();
            assert_eq!(canon, all);
        }
    }

    #[test]
    fn embedded_closed_forms_parse() {
        let entries = h_entries();
        assert_eq!(entries.len(), 30);
        for e in &entries {
            let h = e.h().unwrap();
            assert_eq!(h.den().coeff(0), BigInt::from(-1), "{}", e.necklace);
        }
        assert_eq!(h_pairs().len(), 13);
    }

    #[test]
    fn small_table_recomputes() {
        let report = tables_report(4, 2, &Limits::default()).unwrap();
        assert_eq!(report.len(), 1);
        for row in &report[0].rows {
            assert_eq!(row.status, "ok");
            assert_eq!(row.checked_k, 2);
        }
    }

    #[test]
    fn tight_cap_marks_rows_skipped() {
        let limits = Limits {
            max_states: 1000,
            ..Limits::default()
        };
        let report = tables_report(4, 3, &limits).unwrap();
        let row = &report[0].rows[0];
        assert_eq!(row.status, "capped");
        assert_eq!(row.sizes[2], SizeCell::Skipped(SKIPPED_CAPPED.to_string()));
    }
}
