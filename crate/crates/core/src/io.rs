//! JSON documents for algebras, lattices, forms, expansions and eigenvalue
//! maps. Rationals are encoded as `"num/den"` strings, denominator omitted
//! when 1.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quat::algebra::{coords_from_slice, Coords, QuaternionAlgebra};
use crate::quat::lattice::{Lattice, LatticeOrder, QuatIdeal};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub basis_names: Vec<String>,
    pub structure_constants: Vec<Vec<Vec<Rational>>>,
    pub unit: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Order,
    Ideal,
}

/// A lattice given by four basis vectors in algebra coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub algebra_ref: String,
    pub kind: LatticeKind,
    pub basis: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_order: Option<String>,
}

/// An automorphic form: one harmonic polynomial per ideal class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub nu: u32,
    pub values: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpansionDoc {
    pub weight: u32,
    pub level: u64,
    pub bound: i64,
    pub entries: Vec<(i64, i64, i64, Rational)>,
}

/// `{prime: value}`.
pub type EigenvalueDoc = BTreeMap<String, Rational>;

/// Any document the tools read or write.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Algebra(AlgebraDoc),
    Lattice(LatticeDoc),
    Form(FormDoc),
    Expansion(ExpansionDoc),
    Eigenvalues(EigenvalueDoc),
    Fixture(Box<crate::fixture::Golden>),
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(parse_err)
}

/// Pretty JSON with two-space indentation and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Parses a document, trying each schema in turn.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("top-level value is not an object".into()))?;
    let doc = if obj.contains_key("structure_constants") {
        Document::Algebra(from_json(text)?)
    } else if obj.contains_key("algebra_ref") {
        Document::Lattice(from_json(text)?)
    } else if obj.contains_key("coefficients") {
        Document::Fixture(from_json(text)?)
    } else if obj.contains_key("entries") {
        Document::Expansion(from_json(text)?)
    } else if obj.contains_key("nu") {
        Document::Form(from_json(text)?)
    } else {
        Document::Eigenvalues(from_json(text)?)
    };
    Ok(doc)
}

pub fn print_document(doc: &Document) -> String {
    match doc {
        Document::Algebra(d) => to_json(d),
        Document::Lattice(d) => to_json(d),
        Document::Form(d) => to_json(d),
        Document::Expansion(d) => to_json(d),
        Document::Eigenvalues(d) => to_json(d),
        Document::Fixture(d) => to_json(d),
    }
}

impl AlgebraDoc {
    pub fn build(&self) -> Result<QuaternionAlgebra> {
        let names: [String; 4] = self
            .basis_names
            .clone()
            .try_into()
            .map_err(|_| Error::Shape("expected four basis names".into()))?;
        if self.structure_constants.len() != 4
            || self
                .structure_constants
                .iter()
                .any(|r| r.len() != 4 || r.iter().any(|c| c.len() != 4))
        {
            return Err(Error::Shape("structure constants must be 4×4×4".into()));
        }
        let constants: Vec<Vec<Coords>> = self
            .structure_constants
            .iter()
            .map(|r| r.iter().map(|c| coords_from_slice(c)).collect())
            .collect();
        QuaternionAlgebra::new(names, constants, coords4(&self.unit)?)
    }

    pub fn from_algebra(alg: &QuaternionAlgebra) -> Self {
        AlgebraDoc {
            basis_names: alg.names().to_vec(),
            structure_constants: alg
                .structure_constants()
                .iter()
                .map(|r| r.iter().map(|c| c.to_vec()).collect())
                .collect(),
            unit: alg.unit_coords().to_vec(),
        }
    }
}

fn coords4(v: &[Rational]) -> Result<Coords> {
    if v.len() != 4 {
        return Err(Error::Shape(format!("expected 4 coordinates, found {}", v.len())));
    }
    Ok(coords_from_slice(v))
}

impl LatticeDoc {
    pub fn lattice(&self, alg: Arc<QuaternionAlgebra>) -> Result<Lattice> {
        if self.basis.len() != 4 {
            return Err(Error::Shape(format!(
                "expected 4 basis vectors, found {}",
                self.basis.len()
            )));
        }
        let basis = self.basis.iter().map(|b| coords4(b)).collect::<Result<Vec<_>>>()?;
        Lattice::new(alg, basis)
    }

    /// Builds the lattice and validates it as an order.
    pub fn order(&self, alg: Arc<QuaternionAlgebra>) -> Result<LatticeOrder> {
        if self.kind != LatticeKind::Order {
            return Err(Error::Usage("document describes an ideal, not an order".into()));
        }
        LatticeOrder::new(self.lattice(alg)?)
    }

    pub fn ideal(&self, alg: Arc<QuaternionAlgebra>) -> Result<QuatIdeal> {
        QuatIdeal::new(self.lattice(alg)?)
    }

    pub fn from_lattice(l: &Lattice, algebra_ref: &str, kind: LatticeKind) -> Self {
        LatticeDoc {
            algebra_ref: algebra_ref.to_string(),
            kind,
            basis: l.basis().iter().map(|b| b.to_vec()).collect(),
            left_order: None,
            right_order: None,
        }
    }
}

pub fn eigenvalue_doc(map: &BTreeMap<u64, Rational>) -> EigenvalueDoc {
    map.iter().map(|(p, v)| (p.to_string(), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_are_canonical() {
        let d: ExpansionDoc =
            from_json(r#"{"weight":3,"level":17,"bound":10,"entries":[[2,1,3,"-96/1"],[3,1,4,"4/6"]]}"#).unwrap();
        let out = to_json(&d);
        assert!(out.contains("\"-96\""));
        assert!(out.contains("\"2/3\""));
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = from_json::<AlgebraDoc>("{\n  \"basis_names\": [\n  oops").unwrap_err();
        assert!(matches!(e, Error::Parse(ref m) if m.contains("line 3")));
    }
}
