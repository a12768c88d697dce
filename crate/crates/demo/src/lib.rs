//! Browser bindings. Every function returns a JSON string; errors come back
//! as a thrown string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use bs_core::fuse::{u_poly, v_norm};
use bs_core::limit::{default_depth_cap, limit_report};
use bs_core::necklace::Necklace;
use bs_core::orbit::{d_series, Limits};

/// Orbits are enumerated on the page's main thread, so keep them small.
const MAX_STATES: u64 = 300_000;

fn census(necklace: &str, power: usize) -> bs_core::Result<String> {
    let p: Necklace = necklace.parse()?;
    let limits = Limits {
        max_states: MAX_STATES,
        ..Limits::default()
    };
    let d = d_series(&p, power, &limits)?;
    let levels: Vec<String> = d.coeffs().iter().map(|c| c.to_string()).collect();
    Ok(json!({
        "necklace": p.to_string(),
        "power": power,
        "size": d.eval(&1.into()).to_string(),
        "levels": levels,
        "d_series": d.to_string(),
    })
    .to_string())
}

fn closed_form(necklace: &str, coeffs: usize) -> bs_core::Result<String> {
    let p: Necklace = necklace.parse()?;
    let report = limit_report(&p, default_depth_cap(p.len()))?;
    let mut out = json!({
        "necklace": p.to_string(),
        "closed": report.closed,
        "roots": report.system.as_ref().map(|s| s.n),
    });
    if let Some(h) = &report.h {
        out["H"] = h.to_string().into();
        out["num"] = h.num().to_string().into();
        out["den"] = h.den().to_string().into();
        let series: Vec<String> = h.series_integers(coeffs)?.iter().map(|c| c.to_string()).collect();
        out["series"] = series.into();
    }
    if let Some(branch) = report.non_closing {
        out["non_closing"] = branch.into();
    }
    Ok(out.to_string())
}

fn fuses(max_k: usize) -> String {
    let rows: Vec<_> = (0..=max_k.min(30))
        .map(|k| json!({ "k": k, "u": u_poly(k).to_string(), "v": v_norm(k).to_string() }))
        .collect();
    serde_json::Value::from(rows).to_string()
}

/// Level census of the orbit of `necklace^power`.
#[wasm_bindgen]
pub fn orbit_census(necklace: &str, power: usize) -> Result<String, JsValue> {
    census(necklace, power).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// `H_P` in closed form with its first `coeffs + 1` series coefficients.
#[wasm_bindgen]
pub fn limit_function(necklace: &str, coeffs: usize) -> Result<String, JsValue> {
    closed_form(necklace, coeffs).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// `u_k` and `v_k` for `k = 0..=max_k` (at most 30).
#[wasm_bindgen]
pub fn fuse_table(max_k: usize) -> String {
    fuses(max_k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_of_bww_squared() {
        let v: serde_json::Value = serde_json::from_str(&census("BWW", 2).unwrap()).unwrap();
        assert_eq!(v["size"], "25");
    }

    #[test]
    fn closed_form_and_series() {
        let v: serde_json::Value = serde_json::from_str(&closed_form("WBB", 4).unwrap()).unwrap();
        assert_eq!(v["den"], "2x^3 + x^2 - 1");
        assert_eq!(v["series"], json!(["3", "1", "2", "3", "5"]));
        let v: serde_json::Value = serde_json::from_str(&closed_form("W", 4).unwrap()).unwrap();
        assert_eq!(v["closed"], false);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(census("BQ", 1).is_err());
        assert!(closed_form("BWBW", 3).is_err());
    }

    #[test]
    fn fuse_rows() {
        let v: serde_json::Value = serde_json::from_str(&fuses(2)).unwrap();
        assert_eq!(v[2]["u"], "2x^2 + 2x + 1");
    }
}
