//! WebAssembly front end. Each export wraps a plain function returning
//! `Result<String, String>` so the logic is testable without a browser.

use serde_json::json;
use symplectic_brauer::diagram_algebra::{multiply_diagrams, AlgebraKind};
use symplectic_brauer::diagrams::Diagram;
use symplectic_brauer::invariants::dimension_table;
use symplectic_brauer::scalars::{IntPoly, IntPolys, Rationals, Ring};
use symplectic_brauer::symplectic_space::SympSpace;
use symplectic_brauer::tensor_rep::{decode, rep_matrix, Form};
use wasm_bindgen::prelude::*;

/// Largest `n` and tensor degree `u + v` the matrix view will render.
const MAX_N: usize = 6;
const MAX_DEGREE: usize = 4;

fn parse(text: &str) -> Result<Diagram, String> {
    text.trim().parse::<Diagram>().map_err(|e| format!("{text:?}: {e}"))
}

/// Product `left · right` in both the symplectic and orthogonal algebras.
pub fn product(left: &str, right: &str) -> Result<String, String> {
    let (a, b) = (parse(left)?, parse(right)?);
    let t = IntPoly::t();
    let mut out = serde_json::Map::new();
    for (name, kind) in [("symplectic", AlgebraKind::Symplectic), ("orthogonal", AlgebraKind::Orthogonal)] {
        let (c, d) = multiply_diagrams(kind, &IntPolys, &a, &b, &t)
            .ok_or_else(|| format!("not composable: left has v={}, right has u={}", a.v(), b.u()))?;
        out.insert(name.into(), json!({"coefficient": IntPolys.render(&c), "diagram": d.to_string()}));
    }
    Ok(serde_json::Value::Object(out).to_string())
}

/// Graded dimension table for `Mat_n`, degrees `0..=max_l`.
pub fn dims(n: usize, max_l: usize) -> Result<String, String> {
    let rows = dimension_table(n, max_l).map_err(|e| e.to_string())?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

/// `E(D)` on `V^{⊗v} → V^{⊗u}` as a dense matrix with index labels.
pub fn matrix(diagram: &str, n: usize) -> Result<String, String> {
    let d = parse(diagram)?;
    if n > MAX_N {
        return Err(format!("n = {n} is above the display limit {MAX_N}"));
    }
    if d.u() + d.v() > MAX_DEGREE {
        return Err(format!("u + v = {} is above the display limit {MAX_DEGREE}", d.u() + d.v()));
    }
    let form = Form::Symplectic(SympSpace::new(n).map_err(|e| e.to_string())?);
    let s = d.u().max(d.v());
    let e = rep_matrix(&Rationals, &form, s, &d).map_err(|e| e.to_string())?;
    let (rows, cols) = (n.pow(d.u() as u32), n.pow(d.v() as u32));
    let label = |k: usize, len: usize| -> String {
        let t: Vec<String> = decode(n, len, k).iter().map(|i| (i + 1).to_string()).collect();
        if t.is_empty() {
            "∅".into()
        } else {
            t.join("")
        }
    };
    let block = e.block(d.u(), d.v());
    let entries: Vec<Vec<String>> = (0..rows)
        .map(|r| (0..cols).map(|c| block.and_then(|b| b.get(r, c)).map_or("0".into(), |x| Rationals.render(x))).collect())
        .collect();
    Ok(json!({
        "diagram": d.to_string(),
        "row_labels": (0..rows).map(|r| label(r, d.u())).collect::<Vec<_>>(),
        "col_labels": (0..cols).map(|c| label(c, d.v())).collect::<Vec<_>>(),
        "entries": entries,
    })
    .to_string())
}

#[wasm_bindgen(js_name = product)]
pub fn product_js(left: &str, right: &str) -> Result<String, JsError> {
    product(left, right).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = dims)]
pub fn dims_js(n: usize, max_l: usize) -> Result<String, JsError> {
    dims(n, max_l).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = matrix)]
pub fn matrix_js(diagram: &str, n: usize) -> Result<String, JsError> {
    matrix(diagram, n).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn cap_times_cup_closes_a_loop() {
        let v: Value = serde_json::from_str(&product("u=0,v=2;[B1-B2]", "u=2,v=0;[T1-T2]").unwrap()).unwrap();
        assert_eq!(v["symplectic"]["diagram"], "u=0,v=0;[]");
        assert_eq!(v["orthogonal"]["coefficient"], "t");
        assert_eq!(v["symplectic"]["coefficient"], "t");
    }

    #[test]
    fn product_errors_are_messages() {
        assert!(product("u=1,v=1;[T1-B1]", "u=2,v=0;[T1-T2]").unwrap_err().contains("not composable"));
        assert!(product("nonsense", "u=0,v=0;[]").is_err());
    }

    #[test]
    fn dims_for_sp2() {
        let v: Value = serde_json::from_str(&dims(2, 3).unwrap()).unwrap();
        let g: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["graded_dim"].as_u64().unwrap()).collect();
        assert_eq!(g, [1, 4, 9, 16]);
        assert!(dims(3, 2).is_err());
    }

    #[test]
    fn cap_matrix_is_the_form() {
        let v: Value = serde_json::from_str(&matrix("u=0,v=2;[B1-B2]", 2).unwrap()).unwrap();
        assert_eq!(v["entries"], json!([["0", "1", "-1", "0"]]));
        assert_eq!(v["col_labels"], json!(["11", "12", "21", "22"]));
        assert_eq!(v["row_labels"], json!(["∅"]));
        assert!(matrix("u=2,v=2;[T1-B1,T2-B2]", 2).is_ok());
        assert!(matrix("u=3,v=3;[T1-B1,T2-B2,T3-B3]", 2).is_err());
    }
}
