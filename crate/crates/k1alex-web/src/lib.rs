//! wasm-bindgen surface for the static page in `www/`. Every export takes
//! plain strings or numbers and returns a JSON string; errors come back as
//! `{"error": ...}` so the page never has to catch exceptions.

use k1alex::invariants::{
    build_metabelian_rep, cover_torsion_check, phi_class, z_mn, InvariantReport, TwistedRep, ZmnReading,
};
use k1alex::presentations::{
    parse_braid, seifert_presentation, two_bridge_presentation, wirtinger_from_braid, Presentation, SeifertData,
};
use k1alex::skewlaurent::DEFAULT_TRUNCATION;
use k1alex::words::fox_derivative;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn error(e: impl std::fmt::Display) -> String {
    json!({ "error": e.to_string() }).to_string()
}

/// `[1,-2,1,-2]`, `3; s1 s2^-1 ...`, or `K(m,n)`.
fn knot(input: &str) -> Result<Presentation, String> {
    let s = input.trim();
    if let Some(body) = s.strip_prefix("K(").and_then(|b| b.strip_suffix(')')) {
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        let [m, n] = parts[..] else {
            return Err("expected K(m,n)".into());
        };
        let m = m.parse::<i64>().map_err(|e| e.to_string())?;
        let n = n.parse::<i64>().map_err(|e| e.to_string())?;
        return two_bridge_presentation(m, n).map_err(|e| e.to_string());
    }
    let (letters, n) = parse_braid(s).map_err(|e| e.to_string())?;
    wirtinger_from_braid(&letters, n).map_err(|e| e.to_string())
}

fn summary(r: &InvariantReport) -> Value {
    json!({
        "h": r.h,
        "m": r.m,
        "verdict": r.verdict,
        "characters": r.characters,
        "fiberedness": r.fiberedness,
        "reciprocity": r.reciprocity,
        "slice": r.slice.as_ref().map(|s| s.to_string()),
    })
}

/// Classical (m = 1) or metabelian (m >= 2) polynomial of a knot.
#[wasm_bindgen]
pub fn alexander(input: &str, m: u32) -> String {
    let run = || -> Result<Value, String> {
        let p = knot(input)?;
        let k = p.ngens() - 1;
        if m <= 1 {
            let rep = TwistedRep::trivial(&p).map_err(|e| e.to_string())?;
            let r = phi_class(&p, &rep, k, DEFAULT_TRUNCATION).map_err(|e| e.to_string())?;
            Ok(summary(&r))
        } else {
            let r = k1alex::invariants::metabelian_polynomial(&p, m as usize, k, DEFAULT_TRUNCATION)
                .map_err(|e| e.to_string())?;
            Ok(summary(&r))
        }
    };
    run().map_or_else(error, |v| v.to_string())
}

/// Upsilon(A_{F,W}) against the m-fold cover Jacobian for built-in
/// Seifert data: "trefoil", "figure-eight" or "unknot".
#[wasm_bindgen]
pub fn cover_check(surface: &str, m: u32, metabelian: bool) -> String {
    let run = || -> Result<Value, String> {
        let data = match surface {
            "trefoil" => SeifertData::trefoil(),
            "figure-eight" => SeifertData::figure_eight(),
            "unknot" => SeifertData::unknot(),
            other => return Err(format!("unknown surface `{other}`")),
        };
        let m = m.max(1) as usize;
        let pres = seifert_presentation(&data);
        let rep = if metabelian {
            build_metabelian_rep(&pres, m)
        } else {
            TwistedRep::trivial(&pres)
        }
        .map_err(|e| e.to_string())?;
        let c = cover_torsion_check(&data, &rep, m, false).map_err(|e| e.to_string())?;
        Ok(json!({ "h": rep.h().to_string(), "check": c }))
    };
    run().map_or_else(error, |v| v.to_string())
}

/// Both readings of the K(m, n) closed form against the Fox derivative,
/// for the trivial representation and the metabelian one at cover degree 2.
#[wasm_bindgen]
pub fn zmn(m: i32, n: i32) -> String {
    let run = || -> Result<Value, String> {
        let (m, n) = (m as i64, n as i64);
        let p = two_bridge_presentation(m, n).map_err(|e| e.to_string())?;
        let mut rows = Vec::new();
        let mut reps = vec![TwistedRep::trivial(&p).map_err(|e| e.to_string())?];
        reps.extend(build_metabelian_rep(&p, 2).ok());
        for rep in reps {
            let fox = rep.eval_ring(&fox_derivative(&p.relators[0], 0));
            let c = z_mn(m, n, &rep, ZmnReading::Corrected).map_err(|e| e.to_string())?;
            let pr = z_mn(m, n, &rep, ZmnReading::Printed).map_err(|e| e.to_string())?;
            rows.push(json!({
                "h": rep.h().to_string(),
                "fox": fox.render(),
                "corrected_matches": c == fox,
                "printed_matches": pr == fox,
            }));
        }
        Ok(json!({ "m": m, "n": n, "reps": rows }))
    };
    run().map_or_else(error, |v| v.to_string())
}
