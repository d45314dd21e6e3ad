//! Text and JSON forms of groups, maps, difference sets, arrays and
//! polynomials.

use costas_core::abgroup::{AbelianGroup, GroupElement};
use costas_core::circmap::{GroupMap, MdArray};
use costas_core::dpds::ProductDifferenceSet;
use costas_core::fqpoly::FqPolynomial;
use costas_core::gf::{FieldElement, FiniteField};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

pub fn parse_group(s: &str) -> Result<AbelianGroup, FormatError> {
    s.parse().map_err(|e| invalid(format!("{e}")))
}

/// `"2,4,3,1"` or `"2 4 3 1"`.
pub fn parse_list(s: &str) -> Result<Vec<u64>, FormatError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| invalid(format!("not a non-negative integer: {t:?}"))))
        .collect()
}

/// An element is written as an index (cyclic groups) or a coordinate list.
fn parse_element(g: &AbelianGroup, v: &Value) -> Result<usize, FormatError> {
    match v {
        Value::Number(n) => {
            let i = n.as_u64().ok_or_else(|| invalid(format!("bad element {v}")))?;
            if g.factors().len() > 1 || i >= g.order() {
                return Err(invalid(format!("{i} is not an element of {g}; use a coordinate list")));
            }
            Ok(i as usize)
        }
        Value::Array(items) => {
            let coords = items.iter().map(|c| c.as_u64().ok_or_else(|| invalid(format!("bad coordinate {c}")))).collect::<Result<Vec<_>, _>>()?;
            let e = g.element(&coords).map_err(|e| invalid(e.to_string()))?;
            Ok(g.index_of(&e))
        }
        _ => Err(invalid(format!("bad element {v}"))),
    }
}

/// Accepts either the bare object or a command report wrapping it in `result`.
fn payload<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let mut v: Value = serde_json::from_str(text)?;
    if v.get("command").is_some() {
        if let Some(inner) = v.get_mut("result") {
            v = inner.take();
        }
    }
    Ok(serde_json::from_value(v)?)
}

fn element_value(g: &AbelianGroup, e: &GroupElement) -> Value {
    if g.factors().len() == 1 {
        json!(e.coords()[0])
    } else {
        json!(e.coords())
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    domain: String,
    codomain: String,
    images: Vec<(Value, Value)>,
}

pub fn map_to_json(f: &GroupMap) -> Value {
    json!({
        "domain": f.domain().to_string(),
        "codomain": f.codomain().to_string(),
        "images": f.pairs().map(|(x, y)| json!([element_value(f.domain(), &x), y.coords()])).collect::<Vec<_>>(),
    })
}

pub fn map_from_json(text: &str) -> Result<GroupMap, FormatError> {
    let raw: MapJson = payload(text)?;
    let domain = parse_group(&raw.domain)?;
    let codomain = parse_group(&raw.codomain)?;
    let mut images = vec![None; domain.size()];
    for (x, y) in &raw.images {
        let i = parse_element(&domain, x)?;
        if images[i].replace(parse_element(&codomain, y)?).is_some() {
            return Err(invalid(format!("{} is mapped twice", domain.element_at(i))));
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, y)| y.ok_or_else(|| invalid(format!("{} has no image", domain.element_at(i)))))
        .collect::<Result<Vec<_>, _>>()?;
    GroupMap::new(domain, codomain, images).map_err(|e| invalid(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct DpdsJson {
    group: String,
    elements: Vec<Vec<u64>>,
}

pub fn dpds_to_json(d: &ProductDifferenceSet) -> Value {
    json!({ "group": d.ambient().to_string(), "elements": d.coords() })
}

pub fn dpds_from_json(text: &str) -> Result<ProductDifferenceSet, FormatError> {
    let raw: DpdsJson = payload(text)?;
    let g = parse_group(&raw.group)?;
    let (a, b) = ProductDifferenceSet::split_group(&g).map_err(|e| invalid(e.to_string()))?;
    ProductDifferenceSet::from_coords(a, b, &raw.elements).map_err(|e| invalid(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct ArrayJson {
    dims: Vec<u64>,
    ones: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain_dims: Option<usize>,
}

/// `{dims, ones}`, plus how many leading dimensions index the domain.
pub fn array_to_json(arr: &MdArray, domain_dims: usize) -> Value {
    serde_json::to_value(ArrayJson { dims: arr.dims.clone(), ones: arr.ones.clone(), domain_dims: Some(domain_dims) }).expect("plain data")
}

pub fn array_from_json(text: &str) -> Result<(MdArray, Option<usize>), FormatError> {
    let raw: ArrayJson = payload(text)?;
    Ok((MdArray { dims: raw.dims, ones: raw.ones }, raw.domain_dims))
}

/// `p^m` as a field with the default modulus.
pub fn field_of_order(q: u64) -> Result<FiniteField, FormatError> {
    let (p, m) = costas_core::arith::prime_power(q).ok_or_else(|| invalid(format!("{q} is not a prime power")))?;
    FiniteField::new(p, m).map_err(|e| invalid(e.to_string()))
}

/// Integers for prime fields, `(c0,c1,...)` otherwise.
pub fn element_text(field: &FiniteField, x: FieldElement) -> String {
    if field.m() == 1 {
        x.code().to_string()
    } else {
        format!("({})", field.format(x))
    }
}

pub fn parse_element_text(field: &FiniteField, s: &str) -> Result<FieldElement, FormatError> {
    let s = s.trim();
    let err = |e: costas_core::gf::GfError| invalid(format!("{s:?}: {e}"));
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let coords = parse_list(inner)?.into_iter().map(|c| c as u32).collect::<Vec<_>>();
        return field.element(&coords).map_err(err);
    }
    let n: i64 = s.parse().map_err(|_| invalid(format!("bad field element {s:?}")))?;
    Ok(field.from_int(n))
}

/// `2x^3 + x`, highest degree first; `0` for the zero polynomial.
pub fn poly_text(field: &FiniteField, f: &FqPolynomial) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(usize, FieldElement)> = f.terms().collect();
    terms.reverse();
    terms
        .iter()
        .map(|&(e, c)| {
            let coef = if c == field.one() && e > 0 { String::new() } else { element_text(field, c) };
            match e {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{e}"),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Inverse of [`poly_text`]; also accepts `*` between coefficient and `x`.
pub fn parse_poly(field: &FiniteField, s: &str) -> Result<FqPolynomial, FormatError> {
    let mut terms = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let bytes: Vec<char> = s.chars().collect();
    let mut pieces = Vec::new();
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                pieces.push(bytes[start..i].iter().collect::<String>());
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(bytes[start..].iter().collect::<String>());
    for piece in pieces {
        let t: String = piece.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(invalid(format!("empty term in {s:?}")));
        }
        let (coef, exp) = match t.find('x') {
            None => (t.as_str(), 0u64),
            Some(i) => {
                let exp = match &t[i + 1..] {
                    "" => 1,
                    rest => rest.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(|| invalid(format!("bad exponent in {t:?}")))?,
                };
                (t[..i].trim_end_matches('*'), exp)
            }
        };
        let c = if coef.is_empty() { field.one() } else { parse_element_text(field, coef)? };
        terms.push((exp, c));
    }
    FqPolynomial::from_terms(field, terms).map_err(|e| invalid(e.to_string()))
}

pub fn poly_to_json(field: &FiniteField, f: &FqPolynomial) -> Value {
    json!({
        "text": poly_text(field, f),
        "coeffs": f.coeffs().iter().map(|&c| field.coords(c)).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_text_round_trip() {
        for q in [5u64, 8, 9] {
            let f = field_of_order(q).unwrap();
            for s in ["x", "2x^3 + x", "x^2 + 1", "0"] {
                let p = parse_poly(&f, s).unwrap();
                assert_eq!(parse_poly(&f, &poly_text(&f, &p)).unwrap(), p);
            }
        }
        let f9 = field_of_order(9).unwrap();
        let p = parse_poly(&f9, "(0,1)x^3 + (2,2)*x").unwrap();
        assert_eq!(poly_text(&f9, &p), "(0,1)x^3 + (2,2)x");
        assert_eq!(poly_text(&field_of_order(5).unwrap(), &parse_poly(&field_of_order(5).unwrap(), "x^5").unwrap()), "x");
        assert!(parse_poly(&f9, "x^").is_err());
    }

    #[test]
    fn map_json_round_trip() {
        let text = r#"{"domain":"Z4","codomain":"Z5","images":[[0,[2]],[1,[4]],[2,[3]],[3,[1]]]}"#;
        let f = map_from_json(text).unwrap();
        assert_eq!(f.images(), &[2, 4, 3, 1]);
        assert_eq!(map_from_json(&map_to_json(&f).to_string()).unwrap(), f);
        assert!(map_from_json(r#"{"domain":"Z4","codomain":"Z5","images":[[0,[2]]]}"#).is_err());
    }

    #[test]
    fn dpds_json_round_trip() {
        let text = r#"{"group":"Z4xZ5","elements":[[0,2],[1,4],[2,3],[3,1]]}"#;
        let d = dpds_from_json(text).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(dpds_from_json(&dpds_to_json(&d).to_string()).unwrap(), d);
    }
}
