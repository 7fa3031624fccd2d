//! JSON encodings. Scalars are always strings in the literal grammar, so
//! values survive a round trip exactly.
//!
//! * algebra: a built-in name or `{"blocks": [1, 2], "radicands": ["2"]}`
//! * element: one row-major matrix of scalar strings per block
//! * array: rows of elements
//! * module: `{"ambient": n, "relations": [[elem, ...], ...], "labels": [...]}`
//! * lab algebra: a built-in name or `{"dim": d, "table": [...], "unit": [...]}`
//! * lab module: a built-in name or `{"dim": m, "actions": [matrix, ...]}`

use serde_json::{json, Value};

use crate::algebra::{AlgArray, AlgElement, AlgebraDescriptor};
use crate::error::{Error, Result};
use crate::exactfield::{parse_scalar, scan_radicands, Rational, Scalar, ScalarTower};
use crate::linalg::Mat;
use crate::modules::ModulePresentation;
use crate::torsion_lab::{self, FDAlgebra, FDModule};

fn invalid(msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: 0,
        msg: msg.into(),
    }
}

/// Parses JSON text, reporting the byte offset of a syntax error.
pub fn parse_json(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| {
        let pos = src
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        Error::Parse {
            pos,
            msg: format!("{e}"),
        }
    })
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => Err(invalid(format!("expected a scalar string, got {v}"))),
    }
}

/// Every radicand mentioned anywhere in a JSON value.
pub fn radicands_in(v: &Value) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    collect_radicands(v, &mut out)?;
    Ok(out)
}

fn collect_radicands(v: &Value, out: &mut Vec<Rational>) -> Result<()> {
    match v {
        Value::String(s) => {
            if s.contains("sqrt") {
                out.extend(scan_radicands(s)?);
            }
        }
        Value::Array(xs) => {
            for x in xs {
                collect_radicands(x, out)?;
            }
        }
        Value::Object(m) => {
            for x in m.values() {
                collect_radicands(x, out)?;
            }
        }
        _ => {}
    }
    Ok(())
}

/// Adjoins every radicand found in `values` to `tower`.
pub fn tower_for(tower: &ScalarTower, values: &[&Value]) -> Result<ScalarTower> {
    let mut t = tower.clone();
    for v in values {
        for r in radicands_in(v)? {
            t = t.adjoin_sqrt(&r)?;
        }
    }
    Ok(t)
}

pub fn scalar_from_json(v: &Value, tower: &ScalarTower) -> Result<Scalar> {
    parse_scalar(&scalar_text(v)?, tower)
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

fn array_of<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{what} must be an array")))
}

pub fn matrix_from_json(v: &Value, tower: &ScalarTower) -> Result<Mat> {
    let rows = array_of(v, "matrix")?
        .iter()
        .map(|row| {
            array_of(row, "matrix row")?
                .iter()
                .map(|x| scalar_from_json(x, tower))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(tower, rows)
}

pub fn matrix_to_json(m: &Mat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_json(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn algebra_from_json(v: &Value) -> Result<AlgebraDescriptor> {
    match v {
        Value::String(name) => AlgebraDescriptor::builtin(name),
        Value::Object(m) => {
            let blocks = m
                .get("blocks")
                .and_then(Value::as_array)
                .ok_or_else(|| invalid("algebra needs a `blocks` array"))?
                .iter()
                .map(|b| {
                    b.as_u64()
                        .map(|n| n as usize)
                        .ok_or_else(|| invalid("block sizes must be positive integers"))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut tower = ScalarTower::gaussian();
            if let Some(rs) = m.get("radicands") {
                for r in array_of(rs, "radicands")? {
                    let r = crate::exactfield::parse_rational(&scalar_text(r)?)?;
                    tower = tower.adjoin_sqrt(&r)?;
                }
            }
            AlgebraDescriptor::new(blocks, tower)
        }
        _ => Err(invalid("algebra must be a name or an object")),
    }
}

pub fn algebra_to_json(a: &AlgebraDescriptor) -> Value {
    json!({
        "blocks": a.block_sizes(),
        "radicands": a.tower().radicands().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

pub fn element_from_json(v: &Value, algebra: &AlgebraDescriptor) -> Result<AlgElement> {
    let blocks = array_of(v, "element")?
        .iter()
        .map(|b| matrix_from_json(b, algebra.tower()))
        .collect::<Result<Vec<_>>>()?;
    AlgElement::new(algebra, blocks)
}

pub fn element_to_json(x: &AlgElement) -> Value {
    Value::Array(x.blocks().iter().map(matrix_to_json).collect())
}

pub fn array_from_json(v: &Value, algebra: &AlgebraDescriptor, cols_if_empty: usize) -> Result<AlgArray> {
    let rows = array_of(v, "array")?
        .iter()
        .map(|row| {
            array_of(row, "array row")?
                .iter()
                .map(|x| element_from_json(x, algebra))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(AlgArray::zeros(algebra, 0, cols_if_empty));
    }
    AlgArray::from_rows(algebra, rows)
}

pub fn array_to_json(x: &AlgArray) -> Value {
    Value::Array(
        (0..x.rows())
            .map(|i| Value::Array((0..x.cols()).map(|j| element_to_json(x.get(i, j))).collect()))
            .collect(),
    )
}

pub fn module_from_json(v: &Value, algebra: &AlgebraDescriptor) -> Result<ModulePresentation> {
    let n = v
        .get("ambient")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("module needs a positive `ambient` rank"))? as usize;
    let relations = match v.get("relations") {
        None => AlgArray::zeros(algebra, n, 0),
        Some(r) => {
            let rows = array_of(r, "relations")?;
            if rows.is_empty() || rows.iter().all(|row| row.as_array().is_some_and(Vec::is_empty)) {
                AlgArray::zeros(algebra, n, 0)
            } else {
                array_from_json(r, algebra, 0)?
            }
        }
    };
    if relations.rows() != n {
        return Err(Error::ShapeMismatch(format!(
            "relations have {} rows but the ambient rank is {n}",
            relations.rows()
        )));
    }
    match v.get("labels") {
        None => ModulePresentation::new(relations),
        Some(ls) => {
            let labels = array_of(ls, "labels")?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(String::from)
                        .ok_or_else(|| invalid("labels are strings"))
                })
                .collect::<Result<_>>()?;
            ModulePresentation::with_labels(relations, labels)
        }
    }
}

pub fn module_to_json(m: &ModulePresentation) -> Value {
    json!({
        "ambient": m.ambient(),
        "relations": array_to_json(m.relations()),
        "labels": m.labels(),
    })
}

pub fn lab_algebra_from_json(v: &Value) -> Result<FDAlgebra> {
    match v {
        Value::String(name) => FDAlgebra::builtin(name),
        Value::Object(m) => {
            let tower = tower_for(&ScalarTower::gaussian(), &[v])?;
            let dim = m
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| invalid("lab algebra needs `dim`"))? as usize;
            let table = array_of(m.get("table").unwrap_or(&Value::Null), "table")?
                .iter()
                .map(|plane| {
                    array_of(plane, "table plane")?
                        .iter()
                        .map(|row| {
                            array_of(row, "table row")?
                                .iter()
                                .map(|x| scalar_from_json(x, &tower))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let unit = array_of(m.get("unit").unwrap_or(&Value::Null), "unit")?
                .iter()
                .map(|x| scalar_from_json(x, &tower))
                .collect::<Result<Vec<_>>>()?;
            FDAlgebra::new(&tower, dim, table, unit)
        }
        _ => Err(invalid("lab algebra must be a name or an object")),
    }
}

pub fn lab_algebra_to_json(r: &FDAlgebra) -> Value {
    json!({
        "dim": r.dim(),
        "table": r.table().iter().map(|plane| plane.iter().map(|row| row.iter().map(scalar_to_json).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "unit": r.unit().iter().map(scalar_to_json).collect::<Vec<_>>(),
    })
}

pub fn lab_module_from_json(v: &Value, r: &FDAlgebra) -> Result<FDModule> {
    match v {
        Value::String(name) => torsion_lab::builtin_module(r, name),
        Value::Object(m) => {
            let dim = m
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| invalid("lab module needs `dim`"))? as usize;
            let actions = array_of(m.get("actions").unwrap_or(&Value::Null), "actions")?
                .iter()
                .map(|a| {
                    if dim == 0 {
                        Ok(Mat::zeros(r.tower(), 0, 0))
                    } else {
                        matrix_from_json(a, r.tower())
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            FDModule::new(r, dim, actions)
        }
        _ => Err(invalid("lab module must be a name or an object")),
    }
}

pub fn lab_module_to_json(m: &FDModule) -> Value {
    json!({
        "dim": m.dim(),
        "actions": m.actions().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_round_trip() {
        let a = AlgebraDescriptor::builtin("gauss_plus_m2").unwrap();
        let v = parse_json(r#"[[["1/2 + i"]], [["0", "1"], ["-3/4*i", 2]]]"#).unwrap();
        let x = element_from_json(&v, &a).unwrap();
        let back = element_from_json(&element_to_json(&x), &a).unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_json("[1, 2,\n 3, }") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        let a = AlgebraDescriptor::builtin("m2").unwrap();
        assert!(element_from_json(&parse_json(r#"[[["1"]]]"#).unwrap(), &a).is_err());
    }

    #[test]
    fn algebra_and_module_forms() {
        let a = algebra_from_json(&parse_json(r#"{"blocks": [1, 2], "radicands": ["2"]}"#).unwrap()).unwrap();
        assert_eq!(a.block_sizes(), &[1, 2]);
        assert_eq!(a.tower().depth(), 1);
        assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
        let m2 = AlgebraDescriptor::builtin("m2").unwrap();
        let m = module_from_json(
            &parse_json(r#"{"ambient": 1, "relations": [[[[["1","0"],["0","0"]]]]]}"#).unwrap(),
            &m2,
        )
        .unwrap();
        assert_eq!(m.relations().cols(), 1);
        assert_eq!(module_from_json(&module_to_json(&m), &m2).unwrap(), m);
        let free = module_from_json(&parse_json(r#"{"ambient": 2}"#).unwrap(), &m2).unwrap();
        assert_eq!(free.relations().cols(), 0);
        assert_eq!(module_from_json(&module_to_json(&free), &m2).unwrap(), free);
    }

    #[test]
    fn lab_forms() {
        let r = lab_algebra_from_json(&Value::String("upper_triangular_2".into())).unwrap();
        let again = lab_algebra_from_json(&lab_algebra_to_json(&r)).unwrap();
        assert_eq!(again, r);
        let m = lab_module_from_json(&Value::String("quotient_by_radical".into()), &r).unwrap();
        assert_eq!(lab_module_from_json(&lab_module_to_json(&m), &r).unwrap(), m);
    }
}
