//! Orthogonal idempotents, Peirce decomposition and the Peirce relations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Element, GradedAlgebra, Homogeneity, Parity};
use crate::linalg::{Echelon, SparseVec};
use crate::report::{Report, Violation};
use crate::scalar::Rational;

/// Idempotent pair `(i, j)` with `i <= j`, 0-based; `(i, i)` is `J_ii`.
pub type ComponentKey = (usize, usize);

#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    idempotents: Vec<Element>,
    components: BTreeMap<ComponentKey, Vec<Element>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
    pub basis: Vec<String>,
}

impl PeirceDecomposition {
    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    pub fn components(&self) -> &BTreeMap<ComponentKey, Vec<Element>> {
        &self.components
    }

    /// Canonical (row-reduced) basis of `J_ij`; indices are 1-based and
    /// unordered.
    pub fn component(&self, i: usize, j: usize) -> &[Element] {
        let key = (i.min(j) - 1, i.max(j) - 1);
        &self.components[&key]
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.component(i, j).len()
    }

    pub fn summary(&self, alg: &GradedAlgebra) -> Vec<ComponentSummary> {
        self.components
            .iter()
            .map(|(&(i, j), b)| ComponentSummary {
                i: i + 1,
                j: j + 1,
                dim: b.len(),
                basis: b.iter().map(|e| e.display(alg.basis())).collect(),
            })
            .collect()
    }
}

fn canonical(vectors: impl IntoIterator<Item = SparseVec>) -> Vec<Element> {
    Echelon::from_vectors(vectors).basis().into_iter().map(Element::from_sparse).collect()
}

/// Checks `e_i² = e_i`, `e_i e_j = 0` and that `Σ e_i` is a two-sided unit.
pub fn verify_orthogonal_idempotents(alg: &GradedAlgebra, es: &[Element]) -> Result<Report> {
    let mut report = Report::new("orthogonal-idempotents");
    let show = |x: &Element| x.display(alg.basis());
    for (a, e) in es.iter().enumerate() {
        let even = matches!(e.homogeneity(alg.basis()), Homogeneity::Pure(Parity::Even) | Homogeneity::Zero);
        report.record(even, || Violation {
            indices: vec![a],
            labels: vec![show(e)],
            detail: "idempotent is not even".into(),
        });
        for (b, f) in es.iter().enumerate() {
            let p = alg.multiply(e, f)?;
            let want = if a == b { e.clone() } else { Element::zero() };
            report.record(p == want, || Violation {
                indices: vec![a, b],
                labels: vec![show(e), show(f)],
                detail: format!("product is {}", show(&p)),
            });
        }
    }
    let one = es.iter().fold(Element::zero(), |acc, e| acc.add(e));
    for k in 0..alg.dim() {
        let b = Element::basis(k);
        let l = alg.multiply(&one, &b)?;
        let r = alg.multiply(&b, &one)?;
        report.record(l == b && r == b, || Violation {
            indices: vec![k],
            labels: vec![alg.basis().label(k).to_string()],
            detail: format!("sum of idempotents times basis vector is {} / {}", show(&l), show(&r)),
        });
    }
    Ok(report)
}

/// Simultaneous eigenspaces `{x : e_i x = x}` and `{x : e_i x = e_j x = ½x}`.
pub fn peirce_decompose(alg: &GradedAlgebra, es: &[Element]) -> Result<PeirceDecomposition> {
    let all: Vec<Element> = (0..alg.dim()).map(Element::basis).collect();
    peirce_decompose_within(alg, es, &all)
}

/// Peirce decomposition of an `es`-invariant subspace spanned by `space`.
pub fn peirce_decompose_within(alg: &GradedAlgebra, es: &[Element], space: &[Element]) -> Result<PeirceDecomposition> {
    // x = Σ c_k space[k]; e·x − λx = 0 is linear in c.
    let image = |e: &Element, lambda: &Rational| -> Result<Vec<SparseVec>> {
        space
            .iter()
            .map(|s| Ok(alg.multiply(e, s)?.sub(&s.scale(lambda)).to_sparse()))
            .collect()
    };
    let eigen = |conds: &[(&Element, Rational)]| -> Result<Vec<Element>> {
        let mut rows: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for (n, (e, lambda)) in conds.iter().enumerate() {
            for (k, col) in image(e, lambda)?.into_iter().enumerate() {
                for (coord, v) in col {
                    rows.entry((n, coord)).or_default().push((k, v));
                }
            }
        }
        let ech = Echelon::from_vectors(rows.into_values().map(crate::linalg::sparse_from_entries));
        let null = ech.null_space(space.len());
        Ok(canonical(null.into_iter().map(|c| {
            let x = c
                .iter()
                .fold(Element::zero(), |acc, (k, v)| acc.add(&space[*k].scale(v)));
            x.to_sparse()
        })))
    };
    let mut components = BTreeMap::new();
    let half = Rational::half();
    for i in 0..es.len() {
        components.insert((i, i), eigen(&[(&es[i], Rational::one())])?);
        for j in i + 1..es.len() {
            components.insert((i, j), eigen(&[(&es[i], half.clone()), (&es[j], half.clone())])?);
        }
    }
    let got = Echelon::from_vectors(components.values().flatten().map(|e| e.to_sparse())).rank();
    let dim = Echelon::from_vectors(space.iter().map(|e| e.to_sparse())).rank();
    let total: usize = components.values().map(|c| c.len()).sum();
    if got != dim || total != dim {
        return Err(Error::DecompositionIncomplete { got, dim });
    }
    Ok(PeirceDecomposition {
        idempotents: es.to_vec(),
        components,
    })
}

fn key_set((i, j): ComponentKey) -> Vec<usize> {
    if i == j {
        vec![i]
    } else {
        vec![i, j]
    }
}

/// Components that must contain `J_S · J_T`; empty means the product is 0.
fn target(s: ComponentKey, t: ComponentKey) -> Vec<ComponentKey> {
    let (a, b) = (key_set(s), key_set(t));
    let shared: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
    let ordered = |x: usize, y: usize| (x.min(y), x.max(y));
    match (a.len(), b.len(), shared.len()) {
        (_, _, 0) => vec![],
        (1, 1, 1) => vec![s],
        (2, 2, 2) => vec![(s.0, s.0), (s.1, s.1)],
        (1, 2, 1) => vec![t],
        (2, 1, 1) => vec![s],
        (2, 2, 1) => {
            let x = a.iter().copied().find(|v| !shared.contains(v)).unwrap();
            let y = b.iter().copied().find(|v| !shared.contains(v)).unwrap();
            vec![ordered(x, y)]
        }
        _ => unreachable!(),
    }
}

/// `J_ii² ⊆ J_ii`, `J_ij² ⊆ J_ii + J_jj`, `J_ii J_ij ⊆ J_ij`,
/// `J_ij J_jk ⊆ J_ik` and zero products between components with disjoint
/// index sets, tested on all pairs of component basis vectors.
pub fn check_peirce_relations(alg: &GradedAlgebra, d: &PeirceDecomposition) -> Result<Report> {
    let mut report = Report::new("peirce-relations");
    let keys: Vec<ComponentKey> = d.components.keys().copied().collect();
    for (si, &s) in keys.iter().enumerate() {
        for (ti, &t) in keys.iter().enumerate() {
            let tgt = target(s, t);
            let ech = Echelon::from_vectors(tgt.iter().flat_map(|k| d.components[k].iter().map(|e| e.to_sparse())));
            for x in &d.components[&s] {
                for y in &d.components[&t] {
                    let p = alg.multiply(x, y)?;
                    let ok = ech.contains(&p.to_sparse());
                    report.record(ok, || Violation {
                        indices: vec![si, ti],
                        labels: vec![x.display(alg.basis()), y.display(alg.basis())],
                        detail: format!(
                            "J_{{{},{}}} * J_{{{},{}}}: product {} not in {:?}",
                            s.0 + 1,
                            s.1 + 1,
                            t.0 + 1,
                            t.1 + 1,
                            p.display(alg.basis()),
                            tgt.iter().map(|(a, b)| (a + 1, b + 1)).collect::<Vec<_>>()
                        ),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{Family, Label};
    use crate::matrix::build_jpn;

    fn us(alg: &GradedAlgebra, n: usize) -> Vec<Element> {
        (1..=n)
            .map(|i| Element::basis(alg.basis().index_of(&Label::one(Family::U, i)).unwrap()))
            .collect()
    }

    #[test]
    fn idempotent_checks() {
        let (a, _) = build_jpn(3).unwrap();
        let es = us(&a, 3);
        assert!(verify_orthogonal_idempotents(&a, &es).unwrap().passed);
        assert!(!verify_orthogonal_idempotents(&a, &[es[0].clone(), es[0].clone()]).unwrap().passed);
        assert!(!verify_orthogonal_idempotents(&a, &es[..2]).unwrap().passed);
    }

    #[test]
    fn jp3_components() {
        let (a, _) = build_jpn(3).unwrap();
        let d = peirce_decompose(&a, &us(&a, 3)).unwrap();
        let ix = |s: &str| a.basis().index_of(&s.parse().unwrap()).unwrap();
        assert_eq!(d.dim(1, 1), 2);
        assert_eq!(d.dim(1, 2), 4);
        let want = canonical([ix("u_1"), ix("h_1")].map(|k| Element::<Rational>::basis(k).to_sparse()));
        assert_eq!(d.component(1, 1), want.as_slice());
        assert!(check_peirce_relations(&a, &d).unwrap().passed);
    }

    #[test]
    fn relation_targets() {
        assert_eq!(target((0, 1), (1, 2)), vec![(0, 2)]);
        assert_eq!(target((0, 1), (0, 1)), vec![(0, 0), (1, 1)]);
        assert_eq!(target((0, 0), (0, 2)), vec![(0, 2)]);
        assert!(target((0, 1), (2, 2)).is_empty());
        assert!(target((0, 0), (1, 1)).is_empty());
    }
}
