//! Browser bindings. Every function takes and returns plain strings so the
//! page needs no generated glue beyond `wasm-bindgen`'s.

use std::collections::BTreeMap;

use liespectra::document::{self, AlgebraDocument};
use liespectra::field::parse_gauss;
use liespectra::{catalog, report, Error, LieAlgebra, TowerContext};
use wasm_bindgen::prelude::*;

fn render(e: Error) -> String {
    e.to_string()
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn entry(name: &str, params: &str) -> Result<LieAlgebra, String> {
    let ctx = TowerContext::gaussian();
    let mut map = BTreeMap::new();
    for p in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{p}`"))?;
        let g = parse_gauss(v.trim()).ok_or_else(|| format!("bad value `{}`", v.trim()))?;
        map.insert(k.trim().to_string(), ctx.gaussian_element(g.re, g.im).map_err(render)?);
    }
    catalog::get(name, &map).map_err(render)
}

/// Catalog entries as JSON.
#[wasm_bindgen]
pub fn catalog_entries() -> String {
    to_json(&catalog::entries())
}

/// Invariant report of a catalog entry; `params` is `a=1, b=2+i` style.
#[wasm_bindgen]
pub fn catalog_report(name: &str, params: &str) -> Result<String, String> {
    let alg = entry(name, params)?;
    report::report(&alg).map(|r| to_json(&r)).map_err(render)
}

/// DSL text of a catalog entry, as a starting point for editing.
#[wasm_bindgen]
pub fn catalog_dsl(name: &str, params: &str) -> Result<String, String> {
    let alg = entry(name, params)?;
    AlgebraDocument::from_algebra(&alg)
        .map(|d| d.to_dsl())
        .map_err(render)
}

/// Invariant report of a document in the DSL or JSON format.
#[wasm_bindgen]
pub fn document_report(text: &str) -> Result<String, String> {
    let alg = document::parse_auto(text)
        .and_then(|d| d.to_algebra())
        .map_err(render)?;
    report::report(&alg).map(|r| to_json(&r)).map_err(render)
}

/// Characteristic polynomial of the `(m+1)`-dimensional sl(2) irrep next to
/// the product formula.
#[wasm_bindgen]
pub fn sl2_rep(m: usize) -> Result<String, String> {
    if m > 11 {
        return Err("m must be at most 11".into());
    }
    report::sl2_rep_json(m, true).map(|r| to_json(&r)).map_err(render)
}
