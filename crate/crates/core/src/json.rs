//! JSON encoding of polynomials, matrices, structural data and prescriptions.
//!
//! Polynomials are arrays of coefficients, lowest degree first. A rational entry is
//! `{"num": poly, "den": poly}`; a bare polynomial is accepted wherever a rational
//! function is expected. Objects use `serde_json`'s default sorted maps, so output is
//! canonical.

use serde_json::{json, Map, Value};

use crate::decisions::{MatrixKind, Prescription};
use crate::error::{parse_err, Result};
use crate::field::{Field, FieldDescriptor};
use crate::matrix::RationalMatrix;
use crate::matstruct::StructuralData;
use crate::poly::{Poly, RationalFunction};
use crate::Matrix;

pub fn poly_to_json<F: Field>(p: &Poly<F>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| c.to_json()).collect())
}

pub fn poly_from_json<F: Field>(v: &Value, path: &str) -> Result<Poly<F>> {
    let Some(a) = v.as_array() else {
        return parse_err(path, "expected an array of coefficients");
    };
    let cs = a
        .iter()
        .enumerate()
        .map(|(k, c)| F::from_json(c, &format!("{path}[{k}]")))
        .collect::<Result<Vec<F>>>()?;
    Ok(Poly::new(cs))
}

/// Polynomials print as bare arrays, proper fractions as `{"num", "den"}`.
pub fn ratfn_to_json<F: Field>(f: &RationalFunction<F>) -> Value {
    if f.is_poly() {
        poly_to_json(f.num())
    } else {
        json!({"num": poly_to_json(f.num()), "den": poly_to_json(f.den())})
    }
}

pub fn ratfn_from_json<F: Field>(v: &Value, path: &str) -> Result<RationalFunction<F>> {
    match v {
        Value::Array(_) => Ok(RationalFunction::from_poly(poly_from_json(v, path)?)),
        Value::Object(o) => {
            let num = poly_from_json(field(o, "num", path)?, &format!("{path}.num"))?;
            let den = poly_from_json(field(o, "den", path)?, &format!("{path}.den"))?;
            RationalFunction::new(num, den).or_else(|e| parse_err(path, e.to_string()))
        }
        _ => parse_err(path, "expected a polynomial array or {num, den}"),
    }
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    match o.get(key) {
        Some(v) => Ok(v),
        None => parse_err(path, format!("missing key `{key}`")),
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    match v.as_object() {
        Some(o) => Ok(o),
        None => parse_err(path, "expected an object"),
    }
}

fn usize_at(o: &Map<String, Value>, key: &str, path: &str) -> Result<usize> {
    match field(o, key, path)?.as_u64() {
        Some(k) => Ok(k as usize),
        None => parse_err(&format!("{path}.{key}"), "expected a nonnegative integer"),
    }
}

pub fn ints_from_json(v: &Value, path: &str) -> Result<Vec<i64>> {
    let Some(a) = v.as_array() else {
        return parse_err(path, "expected an integer array");
    };
    a.iter()
        .enumerate()
        .map(|(k, x)| match x.as_i64() {
            Some(n) => Ok(n),
            None => parse_err(&format!("{path}[{k}]"), "expected an integer"),
        })
        .collect()
}

/// The field named by a document's `"field"` key, `q` when absent.
pub fn field_of(v: &Value) -> Result<FieldDescriptor> {
    match v.get("field") {
        None => Ok(FieldDescriptor::Rationals),
        Some(Value::String(s)) => s.parse(),
        Some(_) => parse_err("field", "expected a string"),
    }
}

pub fn matrix_to_json<F: Field>(m: &RationalMatrix<F>) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(ratfn_to_json).collect()))
        .collect();
    json!({
        "field": F::descriptor().to_string(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

pub fn matrix_from_json<F: Field>(v: &Value) -> Result<RationalMatrix<F>> {
    let o = object(v, "$")?;
    let rows = usize_at(o, "rows", "$")?;
    let cols = usize_at(o, "cols", "$")?;
    let Some(entries) = field(o, "entries", "$")?.as_array() else {
        return parse_err("$.entries", "expected an array of rows");
    };
    if entries.len() != rows {
        return parse_err("$.entries", format!("expected {rows} rows, found {}", entries.len()));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in entries.iter().enumerate() {
        let path = format!("$.entries[{i}]");
        let Some(row) = row.as_array() else {
            return parse_err(&path, "expected an array");
        };
        if row.len() != cols {
            return parse_err(&path, format!("expected {cols} entries, found {}", row.len()));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, e)| ratfn_from_json(e, &format!("{path}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    if rows == 0 {
        return Ok(Matrix::empty(cols));
    }
    Ok(Matrix::from_rows(out))
}

pub fn structural_data_to_json<F: Field>(s: &StructuralData<F>) -> Value {
    json!({
        "rank": s.rank,
        "irf": s.irf.iter().map(ratfn_to_json).collect::<Vec<_>>(),
        "inf_orders": s.inf_orders,
        "cmi": s.cmi,
        "rmi": s.rmi,
    })
}

pub fn structural_data_from_json<F: Field>(v: &Value) -> Result<StructuralData<F>> {
    let o = object(v, "$")?;
    let Some(irf) = field(o, "irf", "$")?.as_array() else {
        return parse_err("$.irf", "expected an array");
    };
    let irf = irf
        .iter()
        .enumerate()
        .map(|(i, e)| ratfn_from_json(e, &format!("$.irf[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let s = StructuralData {
        rank: usize_at(o, "rank", "$")?,
        irf,
        inf_orders: ints_from_json(field(o, "inf_orders", "$")?, "$.inf_orders")?,
        cmi: ints_from_json(field(o, "cmi", "$")?, "$.cmi")?,
        rmi: ints_from_json(field(o, "rmi", "$")?, "$.rmi")?,
    };
    if s.irf.len() != s.rank || s.inf_orders.len() != s.rank {
        return parse_err("$", "irf and inf_orders must both have length rank");
    }
    Ok(s)
}

pub fn prescription_from_json<F: Field>(v: &Value) -> Result<Prescription<F>> {
    let o = object(v, "$")?;
    let kind = match field(o, "kind", "$")?.as_str() {
        Some("poly") => MatrixKind::Polynomial,
        Some("rat") => MatrixKind::Rational,
        _ => return parse_err("$.kind", "expected \"poly\" or \"rat\""),
    };
    let mut pre = Prescription::new(usize_at(o, "z", "$")?, usize_at(o, "x", "$")?, kind);
    if let Some(f) = o.get("finite") {
        let fo = object(f, "$.finite")?;
        let list = |key: &str| -> Result<Vec<Poly<F>>> {
            let path = format!("$.finite.{key}");
            match field(fo, key, "$.finite")?.as_array() {
                Some(a) => a
                    .iter()
                    .enumerate()
                    .map(|(i, p)| poly_from_json(p, &format!("{path}[{i}]")))
                    .collect(),
                None => parse_err(&path, "expected an array of polynomials"),
            }
        };
        let num = list("num")?;
        let den = match fo.get("den") {
            Some(_) => list("den")?,
            None => vec![Poly::one(); num.len()],
        };
        if num.len() != den.len() {
            return parse_err("$.finite", "num and den must have equal lengths");
        }
        let mut chain = Vec::with_capacity(num.len());
        for (i, (a, b)) in num.into_iter().zip(den).enumerate() {
            let path = format!("$.finite[{i}]");
            if a.is_zero() || b.is_zero() {
                return parse_err(&path, "zero polynomial in an invariant chain");
            }
            match RationalFunction::new(a.clone(), b.clone()) {
                Ok(f) if f.num() == &a.monic() && f.den() == &b.monic() => chain.push(f),
                _ => return parse_err(&path, "numerator and denominator must be monic and coprime"),
            }
        }
        pre = pre.with_finite(chain);
    }
    if let Some(q) = o.get("infinite") {
        pre = pre.with_infinite(ints_from_json(q, "$.infinite")?);
    }
    if let Some(d) = o.get("cmi") {
        pre = pre.with_cmi(ints_from_json(d, "$.cmi")?);
    }
    if let Some(w) = o.get("rmi") {
        pre = pre.with_rmi(ints_from_json(w, "$.rmi")?);
    }
    Ok(pre)
}
