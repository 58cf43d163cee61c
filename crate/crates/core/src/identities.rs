//! Supercommutativity, the super-Jordan identity, subalgebra closure,
//! quotients and isomorphism checks.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{Element, GradedAlgebra, Homogeneity, Parity};
use crate::linalg::Echelon;
use crate::report::{Report, Violation};
use crate::scalar::{Coeff, Rational};

fn labels<C: Coeff>(alg: &GradedAlgebra<C>, ix: &[usize]) -> Vec<String> {
    ix.iter().map(|&k| alg.basis().label(k).to_string()).collect()
}

fn signed<C: Coeff>(e: &Element<C>, negative: bool) -> impl Iterator<Item = (usize, C)> + '_ {
    e.terms()
        .iter()
        .map(move |(k, c)| (*k, if negative { c.neg_ref() } else { c.clone() }))
}

/// Checks `e_i e_j = (-1)^{|i||j|} e_j e_i` on all basis pairs.
pub fn check_supercommutative<C: Coeff>(alg: &GradedAlgebra<C>) -> Report {
    let mut report = Report::new("supercommutative");
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let odd = Parity::both_odd(alg.parity(i), alg.parity(j));
            let mut t: Vec<(usize, C)> = alg.product(i, j).terms().to_vec();
            t.extend(signed(alg.product(j, i), !odd));
            let residual = Element::from_terms(t);
            report.record(residual.is_zero(), || Violation {
                indices: vec![i, j],
                labels: labels(alg, &[i, j]),
                detail: residual.display(alg.basis()),
            });
        }
    }
    report
}

/// Evaluates the super-Jordan identity on basis quadruples with cached
/// triple products `(e_a e_b) e_c`.
pub struct JordanEvaluator<'a, C: Coeff> {
    alg: &'a GradedAlgebra<C>,
    triples: Vec<Element<C>>,
}

impl<'a, C: Coeff> JordanEvaluator<'a, C> {
    pub fn new(alg: &'a GradedAlgebra<C>) -> Result<Self> {
        let d = alg.dim();
        let triples = (0..d * d * d)
            .into_par_iter()
            .map(|k| {
                let (a, b, c) = (k / (d * d), (k / d) % d, k % d);
                alg.multiply(alg.product(a, b), &Element::basis(c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(JordanEvaluator { alg, triples })
    }

    pub fn algebra(&self) -> &GradedAlgebra<C> {
        self.alg
    }

    fn triple(&self, a: usize, b: usize, c: usize) -> &Element<C> {
        let d = self.alg.dim();
        &self.triples[(a * d + b) * d + c]
    }

    fn push_times_basis(&self, acc: &mut Vec<(usize, C)>, e: &Element<C>, t: usize, negative: bool) -> Result<()> {
        for (k, c) in e.terms() {
            for (m, cm) in self.alg.product(*k, t).terms() {
                let v = c.try_mul(cm)?;
                acc.push((*m, if negative { v.neg_ref() } else { v }));
            }
        }
        Ok(())
    }

    fn push_product(&self, acc: &mut Vec<(usize, C)>, x: &Element<C>, y: &Element<C>, negative: bool) -> Result<()> {
        for (i, ci) in x.terms() {
            for (j, cj) in y.terms() {
                let p = self.alg.product(*i, *j);
                if p.is_zero() {
                    continue;
                }
                let c = ci.try_mul(cj)?;
                for (m, cm) in p.terms() {
                    let v = c.try_mul(cm)?;
                    acc.push((*m, if negative { v.neg_ref() } else { v }));
                }
            }
        }
        Ok(())
    }

    /// Left side minus right side of
    /// `((xy)z)t + (-1)^{|t|(|z|+|y|)+|z||y|}((xt)z)y + (-1)^{|x|(|y|+|z|+|t|)+|t||z|}((yt)z)x
    ///  = (xy)(zt) + (-1)^{|t||z|+|t||y|}(xt)(yz) + (-1)^{|y||z|}(xz)(yt)`.
    pub fn residual(&self, x: usize, y: usize, z: usize, t: usize) -> Result<Element<C>> {
        let a = self.alg;
        let (px, py, pz, pt) = (a.parity(x).bit(), a.parity(y).bit(), a.parity(z).bit(), a.parity(t).bit());
        let s2 = (pt * (pz + py) + pz * py) % 2 == 1;
        let s3 = (px * (py + pz + pt) + pt * pz) % 2 == 1;
        let r2 = (pt * pz + pt * py) % 2 == 1;
        let r3 = (py * pz) % 2 == 1;
        let mut acc = Vec::new();
        self.push_times_basis(&mut acc, self.triple(x, y, z), t, false)?;
        self.push_times_basis(&mut acc, self.triple(x, t, z), y, s2)?;
        self.push_times_basis(&mut acc, self.triple(y, t, z), x, s3)?;
        self.push_product(&mut acc, a.product(x, y), a.product(z, t), true)?;
        self.push_product(&mut acc, a.product(x, t), a.product(y, z), !r2)?;
        self.push_product(&mut acc, a.product(x, z), a.product(y, t), !r3)?;
        Ok(Element::from_terms(acc))
    }
}

/// Runs the super-Jordan identity over every basis quadruple.
pub fn check_super_jordan(alg: &GradedAlgebra<Rational>) -> Result<Report> {
    let ev = JordanEvaluator::new(alg)?;
    let d = alg.dim();
    let parts = (0..d)
        .into_par_iter()
        .map(|x| {
            let mut r = Report::new("super-jordan");
            for y in 0..d {
                for z in 0..d {
                    for t in 0..d {
                        let res = ev.residual(x, y, z, t)?;
                        r.record(res.is_zero(), || Violation {
                            indices: vec![x, y, z, t],
                            labels: labels(alg, &[x, y, z, t]),
                            detail: res.display(alg.basis()),
                        });
                    }
                }
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::all("super-jordan", parts))
}

/// Exact rank test that all pairwise products of `span` stay in its span.
pub fn subalgebra_check(alg: &GradedAlgebra<Rational>, span: &[Element]) -> Result<Report> {
    let ech = Echelon::from_vectors(span.iter().map(|e| e.to_sparse()));
    let mut report = Report::new("subalgebra");
    for (a, x) in span.iter().enumerate() {
        for (b, y) in span.iter().enumerate() {
            let p = alg.multiply(x, y)?;
            let rem = ech.reduce(&p.to_sparse());
            report.record(rem.is_empty(), || Violation {
                indices: vec![a, b],
                labels: vec![x.display(alg.basis()), y.display(alg.basis())],
                detail: format!("product {} escapes the span", p.display(alg.basis())),
            });
        }
    }
    Ok(report)
}

/// Linear projection onto a quotient by a graded ideal. The quotient basis
/// consists of the basis vectors that are not pivots of the ideal's
/// reduced echelon form.
#[derive(Clone, Debug)]
pub struct Projection {
    ideal: Echelon,
    keep: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Projection {
    /// Ambient basis indices that survive in the quotient, in order.
    pub fn kept(&self) -> &[usize] {
        &self.keep
    }

    pub fn apply(&self, x: &Element) -> Element {
        let r = self.ideal.reduce(&x.to_sparse());
        Element::from_terms(
            r.into_iter()
                .map(|(k, c)| (self.position[k].expect("reduced vector has pivot entry"), c))
                .collect(),
        )
    }
}

pub fn quotient_by_ideal(alg: &GradedAlgebra<Rational>, ideal: &[Element]) -> Result<(GradedAlgebra<Rational>, Projection)> {
    for g in ideal {
        if g.homogeneity(alg.basis()) == Homogeneity::Mixed {
            return Err(Error::NotAnIdeal(format!("generator {} is not homogeneous", g.display(alg.basis()))));
        }
    }
    let ech = Echelon::from_vectors(ideal.iter().map(|e| e.to_sparse()));
    for g in ideal {
        for b in 0..alg.dim() {
            let eb = Element::basis(b);
            for p in [alg.multiply(&eb, g)?, alg.multiply(g, &eb)?] {
                if !ech.contains(&p.to_sparse()) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} * {} = {} leaves the span",
                        alg.basis().label(b),
                        g.display(alg.basis()),
                        p.display(alg.basis())
                    )));
                }
            }
        }
    }
    let keep: Vec<usize> = (0..alg.dim()).filter(|k| !ech.is_pivot(*k)).collect();
    let mut position = vec![None; alg.dim()];
    for (n, &k) in keep.iter().enumerate() {
        position[k] = Some(n);
    }
    let proj = Projection {
        ideal: ech,
        keep: keep.clone(),
        position,
    };
    let basis = crate::graded::GradedBasis::new(keep.iter().map(|&k| alg.basis().entries()[k].clone()).collect())?;
    let q = GradedAlgebra::from_fn(basis, |i, j| proj.apply(alg.product(keep[i], keep[j])))?;
    Ok((q, proj))
}

/// Checks that `images[i]` (image of `a`'s basis vector `i` in `b`) defines
/// a parity-preserving bijective homomorphism.
pub fn check_isomorphism(images: &[Element], a: &GradedAlgebra<Rational>, b: &GradedAlgebra<Rational>) -> Result<Report> {
    let mut report = Report::new("isomorphism");
    if images.len() != a.dim() || a.dim() != b.dim() {
        report.fail(Violation {
            indices: vec![],
            labels: vec![],
            detail: format!("dimensions {} -> {} with {} images", a.dim(), b.dim(), images.len()),
        });
        return Ok(report);
    }
    let rank = Echelon::from_vectors(images.iter().map(|e| e.to_sparse())).rank();
    report.record(rank == a.dim(), || Violation {
        indices: vec![],
        labels: vec![],
        detail: format!("images have rank {rank} < {}", a.dim()),
    });
    for (i, img) in images.iter().enumerate() {
        let ok = match img.homogeneity(b.basis()) {
            Homogeneity::Pure(p) => p == a.parity(i),
            _ => false,
        };
        report.record(ok, || Violation {
            indices: vec![i],
            labels: vec![a.basis().label(i).to_string()],
            detail: format!("image {} does not have parity {:?}", img.display(b.basis()), a.parity(i)),
        });
    }
    let apply = |x: &Element| -> Element {
        Element::from_terms(
            x.terms()
                .iter()
                .flat_map(|(k, c)| images[*k].scale(c).into_terms())
                .collect(),
        )
    };
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = apply(a.product(i, j));
            let rhs = b.multiply(&images[i], &images[j])?;
            let diff = lhs.sub(&rhs);
            report.record(diff.is_zero(), || Violation {
                indices: vec![i, j],
                labels: labels(a, &[i, j]),
                detail: format!("f(xy) - f(x)f(y) = {}", diff.display(b.basis())),
            });
        }
    }
    Ok(report)
}
