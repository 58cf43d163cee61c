//! Wedderburn complements as solutions of a linear system in radical-valued
//! corrections.
//!
//! For canonical labels `b` with constants `λ`, the corrections `c(b) ∈ N`
//! must satisfy
//! `(l_b + c_b)(l_b' + c_b') = Σ_k λ^k_{bb'} (l_k + c_k)`. With `N² = 0` the
//! term `c_b c_b'` vanishes and every equation is linear.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::Lift;
use crate::error::{Error, Result};
use crate::graded::{Element, GradedAlgebra, GradedBasis, Homogeneity};
use crate::identities::{check_isomorphism, subalgebra_check};
use crate::linalg::{express_in_span, solve, sparse_from_entries, Echelon, Solution, SparseVec};
use crate::report::{Report, Violation};
use crate::scalar::Rational;

/// Optional restriction of the correction support plus pinned values.
#[derive(Clone, Debug, Default)]
pub struct Ansatz {
    /// Allowed radical indices per canonical label; labels absent here are
    /// unrestricted.
    pub support: HashMap<usize, Vec<usize>>,
    /// `(label, radical index, value)` constraints.
    pub pins: Vec<(usize, usize, Rational)>,
}

#[derive(Clone, Debug)]
pub struct ComplementSolution {
    /// `c(b)` per canonical label.
    pub corrections: Vec<Element>,
    /// `l_b + c(b)` per canonical label.
    pub complement: Vec<Element>,
    pub unknowns: usize,
    pub equations: usize,
    pub free: usize,
}

fn check_square_zero(alg: &GradedAlgebra, radical: &[usize]) -> Result<()> {
    for &a in radical {
        for &b in radical {
            if !alg.product(a, b).is_zero() {
                return Err(Error::Invalid(format!(
                    "radical is not square-zero: {} * {} != 0",
                    alg.basis().label(a),
                    alg.basis().label(b)
                )));
            }
        }
    }
    Ok(())
}

/// Solves for corrections turning `lift` into a subalgebra isomorphic to
/// `canonical`. Free unknowns are set to zero.
pub fn solve_complement(
    alg: &GradedAlgebra,
    radical: &[usize],
    lift: &Lift,
    canonical: &GradedAlgebra,
    ansatz: Option<&Ansatz>,
) -> Result<ComplementSolution> {
    let d = canonical.dim();
    if lift.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: lift.len() });
    }
    check_square_zero(alg, radical)?;
    let in_radical: Vec<bool> = {
        let mut v = vec![false; alg.dim()];
        for &r in radical {
            v[r] = true;
        }
        v
    };

    // Unknown columns: (label b, radical index r) with matching parity.
    let mut columns: Vec<(usize, usize)> = Vec::new();
    let mut col_of: HashMap<(usize, usize), usize> = HashMap::new();
    for b in 0..d {
        let allowed: Vec<usize> = match ansatz.and_then(|a| a.support.get(&b)) {
            Some(s) => s.clone(),
            None => radical.to_vec(),
        };
        for r in allowed {
            if !in_radical[r] {
                return Err(Error::Invalid(format!("ansatz index {r} is not in the radical")));
            }
            if alg.parity(r) == canonical.parity(b) {
                col_of.insert((b, r), columns.len());
                columns.push((b, r));
            }
        }
    }
    let by_label: Vec<Vec<(usize, usize)>> = (0..d)
        .map(|b| columns.iter().enumerate().filter(|(_, c)| c.0 == b).map(|(k, c)| (k, c.1)).collect())
        .collect();

    let l = lift.elements();
    // l_b · e_r and e_r · l_b
    let mut left: HashMap<(usize, usize), Element> = HashMap::new();
    let mut right: HashMap<(usize, usize), Element> = HashMap::new();
    for (b, lb) in l.iter().enumerate() {
        for &r in radical {
            left.insert((b, r), alg.multiply(lb, &Element::basis(r))?);
            right.insert((b, r), alg.multiply(&Element::basis(r), lb)?);
        }
    }

    let mut rows: Vec<(SparseVec, Rational)> = Vec::new();
    let mut origin: Vec<(usize, usize, usize)> = Vec::new();
    for b in 0..d {
        for b2 in 0..d {
            let lam = canonical.product(b, b2);
            let mut constant = alg.multiply(&l[b], &l[b2])?;
            for (k, c) in lam.terms() {
                constant = constant.sub(&l[*k].scale(c));
            }
            if let Some((k, _)) = constant.terms().iter().find(|(k, _)| !in_radical[*k]) {
                return Err(Error::Invalid(format!(
                    "lift does not project onto the canonical constants at ({}, {}): coordinate {}",
                    canonical.basis().label(b),
                    canonical.basis().label(b2),
                    alg.basis().label(*k)
                )));
            }
            // coordinate m ↦ Σ coefficient · column
            let mut eq: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
            for &(col, r) in &by_label[b2] {
                for (m, v) in left[&(b, r)].terms() {
                    eq.entry(*m).or_default().push((col, v.clone()));
                }
            }
            for &(col, r) in &by_label[b] {
                for (m, v) in right[&(b2, r)].terms() {
                    eq.entry(*m).or_default().push((col, v.clone()));
                }
            }
            for (k, c) in lam.terms() {
                for &(col, r) in &by_label[*k] {
                    eq.entry(r).or_default().push((col, -c));
                }
            }
            for (m, _) in constant.terms() {
                eq.entry(*m).or_default();
            }
            for (m, coefs) in eq {
                let row = sparse_from_entries(coefs);
                let rhs = -&constant.coeff(m);
                if row.is_empty() && rhs.is_zero() {
                    continue;
                }
                rows.push((row, rhs));
                origin.push((b, b2, m));
            }
        }
    }
    if let Some(a) = ansatz {
        for (b, r, v) in &a.pins {
            let col = col_of
                .get(&(*b, *r))
                .ok_or_else(|| Error::Invalid(format!("pinned unknown ({b}, {r}) is not a column")))?;
            rows.push((vec![(*col, Rational::one())], v.clone()));
            origin.push((*b, *b, *r));
        }
    }

    match solve(columns.len(), &rows) {
        Solution::Inconsistent { witness } => {
            let (b, b2, m) = origin[witness];
            Err(Error::NoSolution {
                certificate: format!(
                    "equation from ({}, {}) at coordinate {} becomes 0 = nonzero after elimination",
                    canonical.basis().label(b),
                    canonical.basis().label(b2),
                    alg.basis().label(m)
                ),
            })
        }
        Solution::Consistent { values, free } => {
            let corrections: Vec<Element> = (0..d)
                .map(|b| Element::from_terms(by_label[b].iter().map(|&(col, r)| (r, values[col].clone())).collect()))
                .collect();
            let complement = (0..d).map(|b| l[b].add(&corrections[b])).collect();
            Ok(ComplementSolution {
                corrections,
                complement,
                unknowns: columns.len(),
                equations: rows.len(),
                free: free.len(),
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementVerdict {
    pub passed: bool,
    pub subalgebra: Report,
    pub direct_sum: Report,
    pub isomorphism: Report,
}

/// (a) closure, (b) `S ∩ N = 0` with `dim S + dim N = dim`, (c) `b ↦
/// complement[b]` is an isomorphism from `canonical` onto `S`.
pub fn verify_complement(alg: &GradedAlgebra, complement: &[Element], radical: &[usize], canonical: &GradedAlgebra) -> Result<ComplementVerdict> {
    let subalgebra = subalgebra_check(alg, complement)?;

    let mut direct_sum = Report::new("direct-sum");
    let s_rank = Echelon::from_vectors(complement.iter().map(|e| e.to_sparse())).rank();
    let total = Echelon::from_vectors(
        complement
            .iter()
            .map(|e| e.to_sparse())
            .chain(radical.iter().map(|&r| vec![(r, Rational::one())])),
    )
    .rank();
    direct_sum.record(s_rank == complement.len(), || Violation {
        indices: vec![],
        labels: vec![],
        detail: format!("complement vectors have rank {s_rank} < {}", complement.len()),
    });
    direct_sum.record(total == s_rank + radical.len() && total == alg.dim(), || Violation {
        indices: vec![],
        labels: vec![],
        detail: format!(
            "rank(S + N) = {total}, dim S = {s_rank}, dim N = {}, dim = {}",
            radical.len(),
            alg.dim()
        ),
    });

    let isomorphism = match complement_algebra(alg, complement, canonical)? {
        Ok(s) => {
            let images: Vec<Element> = (0..canonical.dim()).map(Element::basis).collect();
            let mut r = check_isomorphism(&images, canonical, &s)?;
            r.check = "isomorphism".into();
            r
        }
        Err(why) => {
            let mut r = Report::new("isomorphism");
            r.fail(Violation {
                indices: vec![],
                labels: vec![],
                detail: why,
            });
            r
        }
    };
    Ok(ComplementVerdict {
        passed: subalgebra.passed && direct_sum.passed && isomorphism.passed,
        subalgebra,
        direct_sum,
        isomorphism,
    })
}

/// Structure constants of `span(complement)` in the basis `complement`,
/// labelled like `canonical`; the inner error explains why they do not exist.
fn complement_algebra(
    alg: &GradedAlgebra,
    complement: &[Element],
    canonical: &GradedAlgebra,
) -> Result<std::result::Result<GradedAlgebra, String>> {
    if complement.len() != canonical.dim() {
        return Ok(Err(format!("{} complement vectors for a {}-dimensional algebra", complement.len(), canonical.dim())));
    }
    let mut entries = Vec::with_capacity(complement.len());
    for (b, e) in complement.iter().enumerate() {
        match e.homogeneity(alg.basis()) {
            Homogeneity::Pure(p) if p == canonical.parity(b) => {
                entries.push(canonical.basis().entries()[b].clone());
            }
            _ => {
                return Ok(Err(format!(
                    "image of {} is not homogeneous of parity {:?}",
                    canonical.basis().label(b),
                    canonical.parity(b)
                )))
            }
        }
    }
    let vectors: Vec<SparseVec> = complement.iter().map(|e| e.to_sparse()).collect();
    let mut table = Vec::with_capacity(complement.len() * complement.len());
    for x in complement {
        for y in complement {
            let p = alg.multiply(x, y)?;
            match express_in_span(&vectors, &p.to_sparse()) {
                Some(c) => table.push(Element::from_terms(c.into_iter().enumerate().collect())),
                None => return Ok(Err(format!("product {} leaves the complement", p.display(alg.basis())))),
            }
        }
    }
    let basis = GradedBasis::new(entries)?;
    Ok(GradedAlgebra::new(basis, table).map_err(|e| e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::BimoduleCase;
    use crate::matrix::build_jpn;
    use crate::wpt::twist::shear_twist;

    #[test]
    fn untwisted_extension_needs_no_correction() {
        let (jp, _) = build_jpn(3).unwrap();
        let ext = BimoduleCase::Reg.extension(3).unwrap();
        let lift = Lift::identity(jp.basis().clone());
        let sol = solve_complement(ext.ambient(), &ext.radical_indices(), &lift, &jp, None).unwrap();
        assert!(sol.corrections.iter().all(|c| c.is_zero()));
        assert!(verify_complement(ext.ambient(), &sol.complement, &ext.radical_indices(), &jp).unwrap().passed);
    }

    #[test]
    fn twisted_extension_is_repaired() {
        let (jp, _) = build_jpn(3).unwrap();
        let ext = BimoduleCase::PnOp.extension(3).unwrap();
        let t = shear_twist(&ext, 3).unwrap();
        let naive = verify_complement(&t.algebra, t.lift.elements(), &t.radical, &jp).unwrap();
        assert!(!naive.subalgebra.passed);
        let sol = solve_complement(&t.algebra, &t.radical, &t.lift, &jp, None).unwrap();
        assert!(verify_complement(&t.algebra, &sol.complement, &t.radical, &jp).unwrap().passed);
    }

    #[test]
    fn radical_is_not_a_complement() {
        let (jp, _) = build_jpn(3).unwrap();
        let ext = BimoduleCase::Reg.extension(3).unwrap();
        let rad: Vec<Element> = ext.radical().map(Element::basis).collect();
        let v = verify_complement(ext.ambient(), &rad, &ext.radical_indices(), &jp).unwrap();
        assert!(!v.direct_sum.passed);
        assert!(!v.isomorphism.passed);
    }
}
