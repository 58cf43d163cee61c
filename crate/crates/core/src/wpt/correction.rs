//! Closed-form complement for the regular bimodule: the θ-recurrence.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{require_n, Lift};
use crate::error::{Error, Result};
use crate::graded::{Element, Family, GradedAlgebra, Label};
use crate::scalar::Rational;

/// The scalars `ξ_ij`, `i ≠ j`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Xi {
    pub n: usize,
    values: BTreeMap<(usize, usize), Rational>,
}

impl Xi {
    pub fn zero(n: usize) -> Self {
        Xi {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut x = Xi::zero(n);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    x.set(i, j, c.clone());
                }
            }
        }
        x
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        if v.is_zero() {
            self.values.remove(&(i, j));
        } else {
            self.values.insert((i, j), v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.values.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }
}

#[derive(Clone, Debug)]
pub struct CorrectionPlan {
    pub theta: Vec<Rational>,
    /// Correction added to each canonical label's lift.
    pub corrections: Vec<Element>,
    /// `ĥ, ŝ` and the untouched even lifts, indexed like the canonical basis.
    pub complement: Vec<Element>,
}

fn index(alg: &GradedAlgebra, l: Label) -> Result<usize> {
    alg.basis()
        .index_of(&l)
        .ok_or_else(|| Error::Invalid(format!("algebra has no basis vector {l}")))
}

fn lift_of(lift: &Lift, l: Label) -> Result<&Element> {
    let (stored, _) = l.normalize().expect("symmetric label");
    lift.get(&stored)
        .ok_or_else(|| Error::Invalid(format!("lift has no element for {l}")))
}

/// `ξ_ij`: the `g_j`-coefficient of `ũ_ij·h̃_ij − h̃_j`.
pub fn extract_xi(alg: &GradedAlgebra, lift: &Lift, n: usize) -> Result<Xi> {
    require_n(n)?;
    let mut xi = Xi::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let uij = lift_of(lift, Label::two(Family::U, i, j))?;
            let hij = lift_of(lift, Label::two(Family::H, i, j))?;
            let hj = lift_of(lift, Label::one(Family::H, j))?;
            let r = alg.multiply(uij, hij)?.sub(hj);
            xi.set(i, j, r.coeff(index(alg, Label::one(Family::G, j))?));
        }
    }
    Ok(xi)
}

/// `θ_1 = theta1`, `θ_{i+1} = θ_i + ξ_{i,i+1} − ξ_{i+1,i}`; then
/// `ĥ_i = h̃_i + θ_i g_i`, `ĥ_ij = h̃_ij + (θ_j − ξ_ij) g_ij`,
/// `ŝ_ij = s̃_ij + (ξ_ij − θ_j) z_ij`.
pub fn case1_correction(xi: &Xi, theta1: &Rational, lift: &Lift, alg: &GradedAlgebra) -> Result<CorrectionPlan> {
    let n = xi.n;
    require_n(n)?;
    let mut theta = vec![theta1.clone()];
    for i in 1..n {
        let next = &theta[i - 1] + &(&xi.get(i, i + 1) - &xi.get(i + 1, i));
        theta.push(next);
    }
    let th = |i: usize| &theta[i - 1];
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let lhs = th(i) - th(j);
            let rhs = &xi.get(j, i) - &xi.get(i, j);
            if lhs != rhs {
                return Err(Error::IncoherentXi {
                    i,
                    j,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    let canonical = lift.canonical();
    let mut corrections = vec![Element::zero(); lift.len()];
    let mut set = |label: Label, target: Label, coef: Rational| -> Result<()> {
        let b = canonical
            .index_of(&label)
            .ok_or_else(|| Error::Invalid(format!("canonical basis has no {label}")))?;
        corrections[b] = Element::basis(index(alg, target)?).scale(&coef);
        Ok(())
    };
    for i in 1..=n {
        set(Label::one(Family::H, i), Label::one(Family::G, i), th(i).clone())?;
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let c = th(j) - &xi.get(i, j);
            set(Label::two(Family::H, i, j), Label::two(Family::G, i, j), c.clone())?;
            set(Label::two(Family::S, i, j), Label::two(Family::Z, i, j), -c)?;
        }
    }
    let complement = lift
        .elements()
        .iter()
        .zip(&corrections)
        .map(|(l, c)| l.add(c))
        .collect();
    Ok(CorrectionPlan {
        theta,
        corrections,
        complement,
    })
}
