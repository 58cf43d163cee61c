//! JSON structure-constant format.
//!
//! ```json
//! {"basis": [{"name": "u_1", "parity": 0}, ...],
//!  "products": [{"i": 0, "j": 0, "terms": [{"k": 0, "coef": {"num": "1", "den": "1"}}]}],
//!  "radical": [18, 19, ...]}
//! ```
//! Omitted `(i, j)` pairs are zero products. A bimodule is written with its
//! module basis under `basis`, no products, and an `action` section.

use serde::{Deserialize, Serialize};

use crate::bimodule::BimoduleAction;
use crate::error::{Error, Result};
use crate::graded::{BasisEntry, Element, GradedAlgebra, GradedBasis, Label, Parity};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub name: String,
    pub parity: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: usize,
    pub coef: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionEntryJson {
    pub a: usize,
    pub m: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionJson {
    pub algebra_basis: Vec<BasisJson>,
    pub entries: Vec<ActionEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub basis: Vec<BasisJson>,
    #[serde(default)]
    pub products: Vec<ProductJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionJson>,
}

fn basis_json(b: &GradedBasis) -> Vec<BasisJson> {
    b.entries()
        .iter()
        .map(|e| BasisJson {
            name: e.label.to_string(),
            parity: e.parity.bit(),
        })
        .collect()
}

fn terms_json(e: &Element) -> Vec<TermJson> {
    e.terms()
        .iter()
        .map(|(k, c)| TermJson { k: *k, coef: c.clone() })
        .collect()
}

pub fn algebra_to_json(alg: &GradedAlgebra, radical: Option<&[usize]>) -> AlgebraJson {
    let mut products = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let p = alg.product(i, j);
            if !p.is_zero() {
                products.push(ProductJson {
                    i,
                    j,
                    terms: terms_json(p),
                });
            }
        }
    }
    AlgebraJson {
        basis: basis_json(alg.basis()),
        products,
        radical: radical.map(|r| r.to_vec()),
        action: None,
    }
}

pub fn action_to_json(m: &BimoduleAction) -> AlgebraJson {
    let mut entries = Vec::new();
    for a in 0..m.algebra().dim() {
        for k in 0..m.module().len() {
            let e = m.action(a, k);
            if !e.is_zero() {
                entries.push(ActionEntryJson {
                    a,
                    m: k,
                    terms: terms_json(e),
                });
            }
        }
    }
    AlgebraJson {
        basis: basis_json(m.module()),
        products: Vec::new(),
        radical: None,
        action: Some(ActionJson {
            algebra_basis: basis_json(m.algebra().basis()),
            entries,
        }),
    }
}

fn parse_basis(b: &[BasisJson]) -> Result<GradedBasis> {
    let entries = b
        .iter()
        .map(|e| {
            let parity = Parity::from_bit(e.parity)
                .ok_or_else(|| Error::Invalid(format!("parity of {} must be 0 or 1, got {}", e.name, e.parity)))?;
            let label: Label = e.name.parse().expect("label parsing is infallible");
            Ok(BasisEntry { label, parity })
        })
        .collect::<Result<Vec<_>>>()?;
    GradedBasis::new(entries)
}

/// Parses an algebra; returns its radical index list when present.
pub fn algebra_from_json(j: &AlgebraJson) -> Result<(GradedAlgebra, Option<Vec<usize>>)> {
    let basis = parse_basis(&j.basis)?;
    let d = basis.len();
    let mut table = vec![Vec::new(); d * d];
    for p in &j.products {
        if p.i >= d || p.j >= d {
            return Err(Error::Invalid(format!("product index ({}, {}) out of range for dimension {d}", p.i, p.j)));
        }
        for t in &p.terms {
            if t.k >= d {
                return Err(Error::Invalid(format!("term index {} out of range for dimension {d}", t.k)));
            }
            table[p.i * d + p.j].push((t.k, t.coef.clone()));
        }
    }
    let table = table.into_iter().map(Element::from_terms).collect();
    let alg = GradedAlgebra::new(basis, table)?;
    if let Some(r) = &j.radical {
        if let Some(&k) = r.iter().find(|&&k| k >= d) {
            return Err(Error::Invalid(format!("radical index {k} out of range for dimension {d}")));
        }
    }
    Ok((alg, j.radical.clone()))
}

pub fn parse_algebra(text: &str) -> Result<(GradedAlgebra, Option<Vec<usize>>)> {
    let j: AlgebraJson = serde_json::from_str(text)?;
    algebra_from_json(&j)
}
