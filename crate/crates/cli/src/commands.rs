use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use bs_core::reference::{cp_tables, h_entries, tables_report, SizeCell};
use bs_core::fuse::{u_poly, v_norm};
use bs_core::limit::{
    alternating_b, alternating_w, default_depth_cap, f_from_system, f_poly, h_limit,
    limit_report, p_poly, verify_tree_isomorphism,
};
use bs_core::necklace::{primitive_necklaces, word_to_string, Bead, Necklace};
use bs_core::orbit::{
    brandt_cycle_check, c_ratio_probe, d_series, forest_identity_check, stabilized_h_series,
    Limits,
};
use bs_core::polyrat::{IntPoly, LaurentPoly, RatFn};
use bs_core::{Error, Result};

use crate::report::{header, row, worst, Output, Status};

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn census_table(d: &IntPoly) -> Vec<Vec<String>> {
    let mut t = vec![header(&["level", "count"])];
    t.extend((0..=d.degree().unwrap_or(0)).map(|l| row([&l, &d.coeff(l)])));
    t
}

pub fn orbit(necklace: &str, power: usize, limits: &Limits) -> Result<Output> {
    let p: Necklace = necklace.parse()?;
    let d = d_series(&p, power, limits)?;
    let size = d.eval(&BigInt::from(1));
    let payload = json!({
        "necklace": p.to_string(),
        "power": power,
        "size": size.to_string(),
        "cycle_length": d.coeff(0).to_string(),
        "height": d.degree(),
    });
    Ok(Output::new(payload, census_table(&d), Status::Ok))
}

pub fn dseries(necklace: &str, power: usize, limits: &Limits) -> Result<Output> {
    let p: Necklace = necklace.parse()?;
    let d = d_series(&p, power, limits)?;
    let payload = json!({
        "necklace": p.to_string(),
        "power": power,
        "size": d.eval(&BigInt::from(1)).to_string(),
        "d_series": d,
    });
    Ok(Output::new(payload, census_table(&d), Status::Ok))
}

pub fn hseries(necklace: &str, coeffs: usize, limits: &Limits) -> Result<Output> {
    let p: Necklace = necklace.parse()?;
    let st = stabilized_h_series(&p, coeffs, limits)?;
    let payload = json!({
        "necklace": p.to_string(),
        "coeffs": strings(&st.coeffs),
        "stabilized_at_power": st.power,
        "policy": "two consecutive powers agree on every requested coefficient \
                   and the earlier census reaches past them",
    });
    let mut table = vec![header(&["index", "coeff"])];
    table.extend(st.coeffs.iter().enumerate().map(|(i, c)| row([&i, c])));
    Ok(Output::new(payload, table, Status::Ok))
}

pub fn hlimit(necklace: &str, depth_cap: Option<usize>, coeffs: Option<usize>) -> Result<Output> {
    let p: Necklace = necklace.parse()?;
    let cap = depth_cap.unwrap_or_else(|| default_depth_cap(p.len()));
    let report = limit_report(&p, cap)?;
    let mut payload = serde_json::to_value(&report).unwrap();
    let mut table = vec![
        header(&["field", "value"]),
        row([&"necklace", &p]),
        row([&"closed", &report.closed]),
        row([&"depth_cap", &cap]),
    ];
    if let Some(h) = &report.h {
        payload["H_text"] = h.to_string().into();
        table.push(row([&"H", h]));
        if let Some(m) = coeffs {
            let series = h.series_integers(m)?;
            payload["series"] = strings(&series).into();
            table.push(vec!["series".into(), strings(&series).join(",")]);
        }
    }
    if let Some(branch) = &report.non_closing {
        table.push(row([&"non_closing", branch]));
    }
    let status = if report.closed {
        Status::Ok
    } else {
        Status::NonClosing
    };
    Ok(Output::new(payload, table, status))
}

#[derive(Serialize)]
struct FuseRow {
    k: usize,
    u: IntPoly,
    v: LaurentPoly,
}

pub fn ufuse(max_k: usize) -> Result<Output> {
    let rows: Vec<FuseRow> = (0..=max_k)
        .map(|k| FuseRow {
            k,
            u: u_poly(k),
            v: v_norm(k),
        })
        .collect();
    let mut table = vec![header(&["k", "u_k", "v_k"])];
    table.extend(rows.iter().map(|r| row([&r.k, &r.u, &r.v])));
    Ok(Output::new(json!({ "max_k": max_k, "rows": rows }), table, Status::Ok))
}

pub fn cratio(necklace: &str, max_k: usize, limits: &Limits) -> Result<Output> {
    let p: Necklace = necklace.parse()?;
    p.require_primitive()?;
    let r = c_ratio_probe(&p, max_k, limits)?;
    let tabulated = cp_tables()
        .into_iter()
        .flat_map(|t| t.rows)
        .find(|row| row.necklace.parse::<Necklace>().as_ref() == Ok(&p));
    let status = match &tabulated {
        Some(row) => Status::of(
            r.sizes
                .iter()
                .enumerate()
                .all(|(i, s)| *s == row.expected_size(i as u32 + 1)),
        ),
        None => Status::Ok,
    };
    let payload = json!({
        "necklace": p.to_string(),
        "sizes": strings(&r.sizes),
        "ratio": r.ratio.map(|c| c.to_string()),
        "table_c_p": tabulated.map(|row| row.c_p),
    });
    let mut table = vec![header(&["k", "size"])];
    table.extend(r.sizes.iter().enumerate().map(|(i, s)| row([&(i + 1), s])));
    Ok(Output::new(payload, table, status))
}

pub fn alternating_families(max_k: usize, depth: usize) -> Result<Output> {
    let mut rows = Vec::new();
    let mut table = vec![header(&["k", "b_word", "w_word", "isomorphic", "equal_h"])];
    for k in 1..=max_k {
        let (b, w) = (alternating_b(k), alternating_w(k));
        let isomorphic = verify_tree_isomorphism(&b, &w, depth)?;
        let h = |word: &[Bead]| -> Result<RatFn> {
            let n = Necklace::canonicalize(word)?;
            h_limit(&n, default_depth_cap(n.len()))
        };
        let equal_h = h(&b)? == h(&w)?;
        let (bs, ws) = (word_to_string(&b), word_to_string(&w));
        table.push(row([&k, &bs, &ws, &isomorphic, &equal_h]));
        rows.push(json!({ "k": k, "words": [bs, ws], "isomorphic": isomorphic, "equal_h": equal_h }));
    }
    let status = Status::of(rows.iter().all(|r| r["isomorphic"] == true && r["equal_h"] == true));
    Ok(Output::new(json!({ "max_k": max_k, "depth": depth, "rows": rows }), table, status))
}

pub fn recurrences(max_k: usize) -> Result<Output> {
    let mut rows = Vec::new();
    let mut table = vec![header(&["k", "f_k", "equal_p", "equal_system", "degree"])];
    let mut ok = true;
    for k in 2..=max_k {
        let f = f_poly(k)?;
        let equal_p = f == p_poly(k)?;
        let equal_system = f == LaurentPoly::from_poly_shifted(&f_from_system(k)?, 0);
        let degree = f.degree();
        ok &= equal_p && equal_system && degree == Some(k as i64 + 1);
        table.push(row([&k, &f, &equal_p, &equal_system, &degree.unwrap_or_default()]));
        rows.push(json!({
            "k": k,
            "f": f,
            "equal_p": equal_p,
            "equal_system": equal_system,
            "degree": degree,
        }));
    }
    Ok(Output::new(json!({ "max_k": max_k, "rows": rows }), table, Status::of(ok)))
}

/// `H_P` together with whether it agrees with the tabulated closed form,
/// when there is one.
fn solved(p: &Necklace, table: &BTreeMap<Necklace, RatFn>) -> Result<Option<(RatFn, Option<bool>)>> {
    match h_limit(p, default_depth_cap(p.len())) {
        Ok(h) => {
            let matches = table.get(p).map(|t| *t == h);
            Ok(Some((h, matches)))
        }
        Err(Error::NonClosing { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn tabulated_h() -> Result<BTreeMap<Necklace, RatFn>> {
    h_entries()
        .iter()
        .map(|e| Ok((e.necklace()?, e.h()?)))
        .collect()
}

/// Compares denominators of `H` over a list of pairs.
fn denominator_pairs(pairs: Vec<(Necklace, Necklace, Option<u64>)>) -> Result<Output> {
    let tab = tabulated_h()?;
    let mut rows = Vec::new();
    let mut statuses = Vec::new();
    let mut table = vec![header(&["necklace", "other", "equal_denominator", "equal_function", "status"])];
    for (a, b, c_p) in pairs {
        let (ha, hb) = (solved(&a, &tab)?, solved(&b, &tab)?);
        let mut r = json!({ "necklace": a.to_string(), "other": b.to_string() });
        if let Some(c) = c_p {
            r["c_p"] = c.into();
        }
        let status = match (&ha, &hb) {
            (Some((ha, ma)), Some((hb, mb))) => {
                let equal_denominator = ha.den() == hb.den();
                r["equal_denominator"] = equal_denominator.into();
                r["equal_function"] = (ha == hb).into();
                r["matches_table"] = json!([ma, mb]);
                let table_ok = ma.unwrap_or(true) && mb.unwrap_or(true);
                table.push(row([&a, &b, &equal_denominator, &(ha == hb), &""]));
                Status::of(equal_denominator && table_ok)
            }
            _ => Status::NonClosing,
        };
        r["status"] = serde_json::to_value(status).unwrap();
        if let Some(last) = table.last_mut().filter(|l| l[0] == a.to_string() && l[1] == b.to_string()) {
            last[4] = r["status"].as_str().unwrap().to_string();
        } else {
            table.push(vec![a.to_string(), b.to_string(), "".into(), "".into(), r["status"].as_str().unwrap().into()]);
        }
        statuses.push(status);
        rows.push(r);
    }
    let status = worst(statuses);
    Ok(Output::new(json!({ "pairs": rows }), table, status))
}

pub fn dual_denominators(max_size: usize) -> Result<Output> {
    let mut pairs = Vec::new();
    for m in 3..=max_size {
        for p in primitive_necklaces(m) {
            let d = p.dual();
            if p < d {
                pairs.push((p, d, None));
            }
        }
    }
    denominator_pairs(pairs)
}

pub fn ratio_denominators(max_size: usize) -> Result<Output> {
    let mut pairs = Vec::new();
    for t in cp_tables().into_iter().filter(|t| t.size <= max_size) {
        for (i, a) in t.rows.iter().enumerate() {
            for b in t.rows[i + 1..].iter().filter(|b| b.c_p == a.c_p) {
                pairs.push((a.necklace.parse()?, b.necklace.parse()?, Some(a.c_p)));
            }
        }
    }
    denominator_pairs(pairs)
}

pub fn path_counts(necklace: &str, power: usize, coeffs: usize, limits: &Limits) -> Result<Output> {
    let p: Necklace = necklace.parse()?;
    let holds = forest_identity_check(&p, power, coeffs, limits)?;
    let payload = json!({
        "necklace": p.to_string(),
        "power": power,
        "coeffs": coeffs,
        "holds": holds,
    });
    let table = vec![
        header(&["necklace", "power", "coeffs", "holds"]),
        row([&p, &power, &coeffs, &holds]),
    ];
    Ok(Output::new(payload, table, Status::of(holds)))
}

/// All necklaces of length `len`, primitive or not, in canonical form.
fn necklaces(len: usize) -> Vec<Necklace> {
    let mut out: Vec<Necklace> = (0..1u64 << len)
        .map(|bits| {
            let word: Vec<Bead> = (0..len)
                .map(|i| if bits >> i & 1 == 1 { Bead::B } else { Bead::W })
                .collect();
            Necklace::canonicalize(&word).unwrap()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn brandt_cycles(max_size: usize) -> Result<Output> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for len in 1..=max_size {
        for n in necklaces(len) {
            checked += 1;
            if !brandt_cycle_check(&n) {
                failures.push(n.to_string());
            }
        }
    }
    let payload = json!({
        "max_size": max_size,
        "necklaces_checked": checked,
        "failures": failures,
    });
    let table = vec![
        header(&["necklaces_checked", "failures"]),
        vec![checked.to_string(), failures.join(",")],
    ];
    Ok(Output::new(payload, table, Status::of(failures.is_empty())))
}

pub fn tables(max_size: usize, max_power: u32, limits: &Limits) -> Result<Output> {
    let report = tables_report(max_size, max_power, limits)?;
    let mut table = vec![header(&["necklace", "c_P", "formula", "verified_k"])];
    table[0].extend((1..=max_power).map(|k| format!("k={k}")));
    let mut mismatch = false;
    for t in &report {
        for r in &t.rows {
            mismatch |= r.status == "mismatch";
            let cells: Vec<String> = r
                .sizes
                .iter()
                .map(|c| match c {
                    SizeCell::Size(s) | SizeCell::Skipped(s) => s.clone(),
                })
                .collect();
            let mut line = row([&r.necklace, &r.c_p, &r.formula, &r.checked_k]);
            line.extend(cells);
            table.push(line);
        }
    }
    let payload = json!({
        "max_size": max_size,
        "max_power": max_power,
        "tables": report,
    });
    Ok(Output::new(payload, table, Status::of(!mismatch)))
}
