//! Browser bindings. Every export takes text in the CLI syntax and returns a
//! JSON string, `{"error": ...}` on failure.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use odosym::classify2d::classify;
use odosym::intlat::fundamental_domain;
use odosym::parse::{parse_matrix, parse_points, parse_vector};
use odosym::subshift_norm::{build_local_rule, nl_membership, DEFAULT_N_MAX};
use odosym::substitution::{cube, patch_to_cells, Letter, Substitution};

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn digit_rule(l: &str, f: &str) -> Result<Substitution, String> {
    let l = parse_matrix(l).map_err(|e| format!("L: {e}"))?;
    let f = if f.trim().is_empty() {
        fundamental_domain(&l).map_err(|e| e.to_string())?.elements().to_vec()
    } else {
        parse_points(f).map_err(|e| format!("F: {e}"))?
    };
    Substitution::digit(&l, &f).map_err(|e| e.to_string())
}

fn seed_letter(s: &Substitution, seed: &str) -> Result<Letter, String> {
    let seeds = s.fixed_point_seeds();
    if seed.trim().is_empty() {
        return seeds.first().cloned().ok_or_else(|| "no fixed-point seed".to_string());
    }
    let a = Letter::Digit(parse_vector(seed).map_err(|e| format!("seed: {e}"))?);
    if seeds.contains(&a) {
        Ok(a)
    } else {
        Err(format!("seed {a} is not a non-zero digit"))
    }
}

fn classify_value(matrix: &str) -> Result<Value, String> {
    let l = parse_matrix(matrix).map_err(|e| e.to_string())?;
    let c = classify(&l).map_err(|e| e.to_string())?;
    serde_json::to_value(c).map_err(|e| e.to_string())
}

fn fixed_point_value(l: &str, f: &str, seed: &str, radius: i32) -> Result<Value, String> {
    let s = digit_rule(l, f)?;
    if s.dim() != 2 {
        return Err("the demo draws planar rules only".into());
    }
    let seed = seed_letter(&s, seed)?;
    let r = i64::from(radius.clamp(1, 64));
    let patch = s.fixed_point_patch(&seed, &cube(2, -r, r)).map_err(|e| e.to_string())?;
    Ok(json!({ "alphabet": s.alphabet(), "seed": seed, "cells": patch_to_cells(&patch) }))
}

fn apply_symmetry_value(l: &str, f: &str, m: &str, seed: &str, radius: i32) -> Result<Value, String> {
    let mut s = digit_rule(l, f)?;
    if s.dim() != 2 {
        return Err("the demo draws planar rules only".into());
    }
    let m = parse_matrix(m).map_err(|e| format!("M: {e}"))?;
    let seed = seed_letter(&s, seed)?;
    let verdict = nl_membership(s.expansion(), &m, s.digits(), DEFAULT_N_MAX).map_err(|e| e.to_string())?;
    let Some(cert) = verdict.accepted() else {
        return Ok(json!({ "verdict": verdict }));
    };
    let rule = build_local_rule(cert, &mut s).map_err(|e| e.to_string())?;
    let r = i64::from(radius.clamp(1, 64));
    let targets = cube(2, -r, r);
    let source = s.fixed_point_patch(&seed, &rule.preimage_region(&targets)).map_err(|e| e.to_string())?;
    let image = rule.apply(&source, Some(&targets)).map_err(|e| e.to_string())?;
    Ok(json!({ "verdict": verdict, "alphabet": s.alphabet(), "cells": patch_to_cells(&image) }))
}

/// Normalizer group of a `2 x 2` expansion, e.g. `"2,-1;1,5"`.
#[wasm_bindgen]
pub fn classify_matrix(matrix: &str) -> String {
    respond(classify_value(matrix))
}

/// Fixed point of the digit substitution of `(L, F)` on `[-radius, radius]^2`.
/// An empty `f` uses the Hermite box digits, an empty `seed` the first digit.
#[wasm_bindgen]
pub fn fixed_point(l: &str, f: &str, seed: &str, radius: i32) -> String {
    respond(fixed_point_value(l, f, seed, radius))
}

/// Image of that fixed point under the local rule of `M`, with the
/// membership verdict; no cells when `M` is rejected.
#[wasm_bindgen]
pub fn apply_symmetry(l: &str, f: &str, m: &str, seed: &str, radius: i32) -> String {
    respond(apply_symmetry_value(l, f, m, seed, radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn classify_reports_branch() {
        assert_eq!(parse(classify_matrix("6,1;0,2"))["branch"], "virtually_z");
        assert!(parse(classify_matrix("1,0;0,1"))["error"].is_string());
    }

    #[test]
    fn fixed_point_cells() {
        let v = parse(fixed_point("2,0;0,2", "0,0;1,0;0,1;1,-1", "1,0", 3));
        assert_eq!(v["cells"].as_array().unwrap().len(), 49);
        assert!(parse(fixed_point("2,0;0,2", "", "5,5", 3))["error"].is_string());
    }

    #[test]
    fn symmetry_accepts_and_rejects() {
        let v = parse(apply_symmetry("2,0;0,2", "0,0;1,0;0,1;1,-1", "0,1;1,0", "", 2));
        assert_eq!(v["verdict"]["verdict"], "accepted");
        assert_eq!(v["cells"].as_array().unwrap().len(), 25);
        let v = parse(apply_symmetry("2,0;0,4", "", "1,0;1,1", "", 2));
        assert_eq!(v["verdict"]["verdict"], "rejected");
        assert!(v.get("cells").is_none());
    }
}
