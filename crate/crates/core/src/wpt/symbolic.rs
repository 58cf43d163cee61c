//! Parametrized lifts of JP_n into its four irreducible split extensions,
//! and the affine constraints the super-Jordan identity puts on the
//! parameters.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{require_n, Lift};
use crate::bimodule::{BimoduleCase, SplitNullExtension};
use crate::error::{Error, Result};
use crate::graded::{Element, Family, GradedAlgebra, IndexSymmetry, Label, Parity};
use crate::identities::JordanEvaluator;
use crate::linalg::{sparse_from_entries, Echelon};
use crate::scalar::{AffineForm, Rational, Unknown, UnknownFamily};

/// Extension over affine coefficients whose first `2n²` basis vectors are
/// the lifts `ũ, h̃, s̃`.
#[derive(Clone, Debug)]
pub struct SymbolicExtension {
    pub case: BimoduleCase,
    pub n: usize,
    pub ext: SplitNullExtension<AffineForm>,
    /// Unknowns in elimination order.
    pub unknowns: Vec<Unknown>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    UH,
    US,
    HS,
}

/// Index pattern of a lift pair with nonzero canonical product.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Match {
    kind: Kind,
    sub: Vec<usize>,
    /// `+1`, or `−1` when the stored `s` is the reverse of the oriented one.
    sign: i64,
    /// Peirce components of the canonical product, as oriented index pairs.
    targets: Vec<(usize, usize)>,
}

fn ix2(l: &Label) -> Option<(usize, usize)> {
    match l.indices().as_slice() {
        [i, j] => Some((*i, *j)),
        _ => None,
    }
}

fn ix1(l: &Label) -> Option<usize> {
    match l.indices().as_slice() {
        [i] => Some(*i),
        _ => None,
    }
}

/// Orients an unordered stored pair so that `first` comes first.
fn orient(pair: (usize, usize), first: usize) -> Option<(usize, usize, bool)> {
    if pair.0 == first {
        Some((pair.0, pair.1, false))
    } else if pair.1 == first {
        Some((pair.1, pair.0, true))
    } else {
        None
    }
}

fn classify(a: &Label, b: &Label) -> Option<Match> {
    use Family::*;
    let (fa, fb) = (a.family()?, b.family()?);
    let m = |kind, sub: Vec<usize>, sign: i64, targets: Vec<(usize, usize)>| {
        Some(Match {
            kind,
            sub,
            sign,
            targets,
        })
    };
    let sgn = |rev: bool| if rev { -1 } else { 1 };
    match (fa, fb) {
        (U, H) => match (ix1(a), ix2(a), ix1(b), ix2(b)) {
            (Some(i), _, Some(p), _) if p == i => m(Kind::UH, vec![i], 1, vec![(i, i)]),
            (Some(i), _, _, Some(h)) => {
                let (_, j, _) = orient(h, i)?;
                m(Kind::UH, vec![i, i, j], 1, vec![(i, j)])
            }
            (_, Some((i, j)), Some(p), _) if p == i => m(Kind::UH, vec![i, j, i], 1, vec![(i, j)]),
            (_, Some((i, j)), _, Some(h)) => {
                let (_, l, _) = orient(h, i)?;
                if l == j {
                    m(Kind::UH, vec![i, j], 1, vec![(j, j)])
                } else {
                    m(Kind::UH, vec![i, j, i, l], 1, vec![(j, l)])
                }
            }
            _ => None,
        },
        (U, S) => match (ix1(a), ix2(a)) {
            (Some(i), _) => {
                let (_, j, rev) = orient(ix2(b)?, i)?;
                m(Kind::US, vec![i, i, j], sgn(rev), vec![(i, j)])
            }
            (_, Some((i, j))) => {
                let (_, l, rev) = orient(ix2(b)?, j)?;
                if l == i {
                    return None;
                }
                m(Kind::US, vec![i, j, j, l], sgn(rev), vec![(i, l)])
            }
            _ => None,
        },
        (H, S) => {
            let s = ix2(b)?;
            match (ix1(a), ix2(a)) {
                (Some(i), _) => {
                    let (_, j, rev) = orient(s, i)?;
                    m(Kind::HS, vec![i, i, j], sgn(rev), vec![(j, i)])
                }
                (_, Some(h)) => {
                    let (hs, ss) = ([h.0, h.1], [s.0, s.1]);
                    let shared: Vec<usize> = hs.iter().copied().filter(|x| ss.contains(x)).collect();
                    match shared.as_slice() {
                        // stored h_ij, s_ij with i < j
                        [_, _] => m(Kind::HS, vec![h.0, h.1], 1, vec![(h.0, h.0), (h.1, h.1)]),
                        [j] => {
                            let i = if h.0 == *j { h.1 } else { h.0 };
                            let (_, l, rev) = orient(s, *j)?;
                            m(Kind::HS, vec![i, *j, *j, l], sgn(rev), vec![(l, i)])
                        }
                        _ => None,
                    }
                }
                _ => None,
            }
        }
        _ => None,
    }
}

fn unknown_family(kind: Kind, target: Family) -> Option<(UnknownFamily, bool)> {
    use Family::*;
    let with_sup = matches!(target, V | W);
    Some(match (kind, target) {
        (Kind::UH, G | Y) | (Kind::UH, V | W) => (UnknownFamily::Eta, with_sup),
        (Kind::UH, Z | X) => (UnknownFamily::Alpha, false),
        (Kind::US, G | Y) => (UnknownFamily::Gamma, false),
        (Kind::US, Z | X) | (Kind::US, V | W) => (UnknownFamily::Beta, with_sup),
        (Kind::HS, V | W) => (UnknownFamily::Lambda, true),
        (Kind::HS, G | Y) => (UnknownFamily::LambdaG, true),
        (Kind::HS, Z | X) => (UnknownFamily::LambdaZ, true),
        _ => return None,
    })
}

fn family_rank(f: Family) -> u8 {
    match f {
        Family::U => 0,
        Family::H => 1,
        Family::S => 2,
        _ => 3,
    }
}

/// Peirce component `(p, q)`, `p <= q`, 1-based, of a radical basis vector
/// that is a joint eigenvector of the `u_k`.
fn radical_component(alg: &GradedAlgebra, n: usize, r: usize) -> Result<(usize, usize)> {
    let mut ones = Vec::new();
    let mut halves = Vec::new();
    for k in 1..=n {
        let u = alg.basis().index_of(&Label::one(Family::U, k)).expect("u_k present");
        let p = alg.product(u, r);
        if *p == Element::basis(r) {
            ones.push(k);
        } else if *p == Element::basis(r).scale(&Rational::half()) {
            halves.push(k);
        } else if !p.is_zero() {
            return Err(Error::Invalid(format!("{} is not a Peirce eigenvector", alg.basis().label(r))));
        }
    }
    match (ones.as_slice(), halves.as_slice()) {
        ([i], []) => Ok((*i, *i)),
        ([], [i, j]) => Ok((*i, *j)),
        _ => Err(Error::Invalid(format!("{} has no single Peirce component", alg.basis().label(r)))),
    }
}

fn eta_ij_last(u: &Unknown) -> (bool, Unknown) {
    let last = u.family == UnknownFamily::Eta && u.sub.as_slice().len() == 2 && u.sup.is_empty();
    (last, *u)
}

/// The split extension of JP_n by `case` with every lift product that can
/// pick up a radical component (at least one odd factor, nonzero canonical
/// product) extended by one unknown per radical basis vector of the right
/// parity in the product's Peirce components.
pub fn symbolic_lift(case: BimoduleCase, n: usize) -> Result<(SymbolicExtension, Lift<AffineForm>)> {
    require_n(n)?;
    let num = case.extension(n)?;
    let amb = num.ambient();
    let d = num.algebra_dim();
    let mut by_component: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for r in num.radical() {
        by_component.entry(radical_component(amb, n, r)?).or_default().push(r);
    }
    let mut table: Vec<Element<AffineForm>> = (0..amb.dim() * amb.dim())
        .map(|k| amb.product(k / amb.dim(), k % amb.dim()).map_coeffs(|c| AffineForm::constant(c.clone())))
        .collect();
    let mut unknowns = Vec::new();
    let basis = amb.basis();
    for a in 0..d {
        for b in 0..d {
            let (la, lb) = (basis.label(a), basis.label(b));
            let (fa, fb) = (la.family().unwrap(), lb.family().unwrap());
            if family_rank(fa) >= family_rank(fb) || !(amb.parity(a).is_odd() || amb.parity(b).is_odd()) {
                continue;
            }
            let canonical_zero = amb.product(a, b).is_zero();
            let Some(mt) = classify(la, lb) else {
                if !canonical_zero {
                    return Err(Error::Invalid(format!("no lift pattern for nonzero product {la} * {lb}")));
                }
                continue;
            };
            if canonical_zero {
                return Err(Error::Invalid(format!("lift pattern matched zero product {la} * {lb}")));
            }
            let parity = amb.parity(a) + amb.parity(b);
            let mut extra: Vec<(usize, AffineForm)> = Vec::new();
            for &(p, q) in &mt.targets {
                for &r in by_component.get(&(p.min(q), p.max(q))).into_iter().flatten() {
                    if amb.parity(r) != parity {
                        continue;
                    }
                    let lr = basis.label(r);
                    let fr = lr.family().unwrap();
                    let orient = if fr.symmetry() == IndexSymmetry::Antisymmetric && p > q { -1 } else { 1 };
                    let (family, sup) = unknown_family(mt.kind, fr)
                        .ok_or_else(|| Error::Invalid(format!("unexpected radical label {lr}")))?;
                    let sub: Vec<u8> = mt.sub.iter().map(|&x| x as u8).collect();
                    let sup: Vec<u8> = if sup { lr.indices().iter().map(|&x| x as u8).collect() } else { vec![] };
                    let u = Unknown::with_sup(family, &sub, &sup);
                    unknowns.push(u);
                    extra.push((r, AffineForm::term(Rational::from(mt.sign * orient), u)));
                }
            }
            let e = Element::from_terms(extra);
            let partner = e.scale(&Rational::sign(Parity::both_odd(amb.parity(a), amb.parity(b))));
            let dim = amb.dim();
            table[a * dim + b] = table[a * dim + b].add(&e);
            table[b * dim + a] = table[b * dim + a].add(&partner);
        }
    }
    let ambient = GradedAlgebra::new(basis.clone(), table)?;
    unknowns.sort_by_key(eta_ij_last);
    unknowns.dedup();
    let canonical = crate::graded::GradedBasis::new(basis.entries()[..d].to_vec())?;
    Ok((
        SymbolicExtension {
            case,
            n,
            ext: SplitNullExtension::from_parts(ambient, d),
            unknowns,
        },
        Lift::identity(canonical),
    ))
}

/// Which lift quadruples to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceMode {
    /// Every quadruple of lift basis vectors.
    Exhaustive,
    /// The substitutions used by hand, over all distinct index triples.
    Curated,
}

/// Templates over distinct indices `i, j, l` (label strings with the
/// placeholders substituted).
const CURATED: &[[&str; 4]] = &[
    ["u_i", "h_i", "u_i", "u_i"],
    ["u_i", "h_ij", "u_i", "u_i"],
    ["u_ij", "h_i", "h_i", "u_ij"],
    ["u_ij", "h_il", "h_il", "u_ij"],
    ["u_ij", "s_jl", "s_jl", "u_ij"],
    ["h_i", "s_ij", "u_ij", "u_ji"],
    ["h_ij", "s_ij", "u_ij", "u_ji"],
    ["h_ij", "s_ij", "u_ji", "u_ij"],
    ["u_ij", "h_il", "u_ji", "u_ij"],
    ["u_i", "h_ij", "u_il", "u_lj"],
    ["u_ij", "s_jl", "u_ji", "u_ij"],
    ["u_i", "h_i", "u_ij", "s_ij"],
    ["u_ij", "s_jl", "h_i", "s_ij"],
    ["u_ij", "s_jl", "h_i", "h_l"],
    ["u_l", "h_l", "s_lj", "h_ij"],
    ["u_ij", "h_ij", "u_ji", "u_ij"],
    ["u_ij", "h_i", "u_jl", "u_ij"],
    ["u_il", "s_lj", "u_li", "h_jl"],
    ["u_ij", "h_il", "u_il", "u_li"],
    ["u_ij", "s_jl", "s_ij", "u_ij"],
    ["u_ij", "s_jl", "s_jl", "u_jl"],
];

fn instantiate(template: &str, i: usize, j: usize, l: usize) -> Label {
    let (head, ix) = template.split_once('_').expect("template has indices");
    let digits: Vec<usize> = ix
        .chars()
        .map(|c| match c {
            'i' => i,
            'j' => j,
            'l' => l,
            _ => unreachable!("template index {c}"),
        })
        .collect();
    let family = match head {
        "u" => Family::U,
        "h" => Family::H,
        "s" => Family::S,
        _ => unreachable!("template family {head}"),
    };
    match digits.as_slice() {
        [a] => Label::one(family, *a),
        [a, b] => Label::two(family, *a, *b),
        _ => unreachable!(),
    }
}

pub fn instances(sym: &SymbolicExtension, mode: InstanceMode) -> Vec<[usize; 4]> {
    let d = sym.ext.algebra_dim();
    match mode {
        InstanceMode::Exhaustive => {
            let mut v = Vec::with_capacity(d.pow(4));
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        for t in 0..d {
                            v.push([x, y, z, t]);
                        }
                    }
                }
            }
            v
        }
        InstanceMode::Curated => {
            let basis = sym.ext.ambient().basis();
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            let n = sym.n;
            for tpl in CURATED {
                for i in 1..=n {
                    for j in (1..=n).filter(|&j| j != i) {
                        for l in (1..=n).filter(|&l| l != i && l != j) {
                            let q: [usize; 4] = std::array::from_fn(|k| {
                                basis
                                    .resolve(&instantiate(tpl[k], i, j, l))
                                    .expect("template label resolves")
                                    .0
                            });
                            if seen.insert(q) {
                                out.push(q);
                            }
                        }
                    }
                }
            }
            out
        }
    }
}

/// Affine equations `form = 0` in named unknowns, with an optional
/// echelon reduction.
#[derive(Clone, Debug, Serialize)]
pub struct ConstraintSystem {
    pub unknowns: Vec<Unknown>,
    #[serde(skip)]
    pub equations: Vec<AffineForm>,
    pub instances: usize,
    pub reduction: Option<Reduction>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub inconsistent: bool,
    pub rank: usize,
    /// Pivot unknowns expressed in the free ones.
    #[serde(serialize_with = "serialize_solved")]
    pub solved: BTreeMap<Unknown, AffineForm>,
    pub free: Vec<Unknown>,
}

fn serialize_solved<S: serde::Serializer>(m: &BTreeMap<Unknown, AffineForm>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), &v.to_string())?;
    }
    map.end()
}

impl ConstraintSystem {
    pub fn new(unknowns: Vec<Unknown>, equations: Vec<AffineForm>) -> Self {
        ConstraintSystem {
            unknowns,
            equations,
            instances: 0,
            reduction: None,
        }
    }

    /// Substitutes the reduction into `form`; `None` before reduction.
    pub fn normal_form(&self, form: &AffineForm) -> Option<AffineForm> {
        let r = self.reduction.as_ref()?;
        Some(form.substitute(&r.solved))
    }

    /// Whether `form = 0` follows from the reduced system.
    pub fn implies_zero(&self, form: &AffineForm) -> Option<bool> {
        Some(self.reduction.as_ref()?.inconsistent || self.normal_form(form)?.is_zero())
    }

    pub fn is_all_zero(&self) -> bool {
        match &self.reduction {
            Some(r) => !r.inconsistent && r.free.is_empty() && r.solved.values().all(|v| v.is_zero()),
            None => false,
        }
    }
}

fn normalize(f: AffineForm) -> AffineForm {
    let lead = f.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(|| f.constant_part().clone());
    if lead.is_zero() || lead.is_one() {
        f
    } else {
        f.scale(&lead.recip())
    }
}

/// One equation per basis coordinate of the super-Jordan residual of each
/// quadruple, normalized and deduplicated in instance order.
pub fn derive_constraints(sym: &SymbolicExtension, instances: &[[usize; 4]]) -> Result<ConstraintSystem> {
    let ev = JordanEvaluator::new(sym.ext.ambient())?;
    let chunks: Vec<Vec<AffineForm>> = instances
        .par_chunks(4096)
        .map(|chunk| {
            let mut out = Vec::new();
            let mut seen = HashSet::new();
            for q in chunk {
                let r = ev.residual(q[0], q[1], q[2], q[3])?;
                for (_, f) in r.into_terms() {
                    let f = normalize(f);
                    if seen.insert(f.clone()) {
                        out.push(f);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let mut equations = Vec::new();
    for f in chunks.into_iter().flatten() {
        if seen.insert(f.clone()) {
            equations.push(f);
        }
    }
    let mut cs = ConstraintSystem::new(sym.unknowns.clone(), equations);
    cs.instances = instances.len();
    Ok(cs)
}

/// Reduced echelon form with columns in `unknowns` order; pivots are the
/// first nonzero column, so later unknowns stay free when possible.
pub fn reduce_constraints(cs: &ConstraintSystem) -> ConstraintSystem {
    let col: BTreeMap<Unknown, usize> = cs.unknowns.iter().enumerate().map(|(k, u)| (*u, k)).collect();
    let mut unknowns = cs.unknowns.clone();
    let mut extra: Vec<Unknown> = cs
        .equations
        .iter()
        .flat_map(|f| f.unknowns().copied().collect::<Vec<_>>())
        .filter(|u| !col.contains_key(u))
        .collect();
    extra.sort();
    extra.dedup();
    unknowns.extend(extra);
    let col: BTreeMap<Unknown, usize> = unknowns.iter().enumerate().map(|(k, u)| (*u, k)).collect();
    let ncols = unknowns.len();
    let mut ech = Echelon::new();
    for f in &cs.equations {
        let mut row: Vec<(usize, Rational)> = f.terms().map(|(u, c)| (col[u], c.clone())).collect();
        // Σ c·x + k = 0 ⇔ Σ c·x = −k; the right side sits in column ncols.
        if !f.constant_part().is_zero() {
            row.push((ncols, -f.constant_part()));
        }
        ech.insert(sparse_from_entries(row));
    }
    let inconsistent = ech.is_pivot(ncols);
    let mut solved = BTreeMap::new();
    for p in ech.pivots().filter(|&p| p < ncols) {
        let row = ech.pivot_row(p).unwrap();
        let mut value = AffineForm::zero();
        for (c, v) in row {
            if *c == ncols {
                value.add_assign_form(&AffineForm::constant(v.clone()));
            } else if *c != p {
                value.add_term(&-v, unknowns[*c]);
            }
        }
        solved.insert(unknowns[p], value);
    }
    let free = (0..ncols).filter(|c| !ech.is_pivot(*c)).map(|c| unknowns[c]).collect();
    ConstraintSystem {
        unknowns,
        equations: cs.equations.clone(),
        instances: cs.instances,
        reduction: Some(Reduction {
            inconsistent,
            rank: ech.rank(),
            solved,
            free,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(s: &str) -> Label {
        s.parse().unwrap()
    }

    #[test]
    fn patterns() {
        let m = classify(&lab("u_12"), &lab("h_13")).unwrap();
        assert_eq!((m.kind, m.sub.clone(), m.targets.clone()), (Kind::UH, vec![1, 2, 1, 3], vec![(2, 3)]));
        assert!(classify(&lab("u_12"), &lab("h_2")).is_none());
        assert!(classify(&lab("u_12"), &lab("s_12")).is_none());
        let m = classify(&lab("u_32"), &lab("s_12")).unwrap();
        assert_eq!((m.sub.clone(), m.sign, m.targets.clone()), (vec![3, 2, 2, 1], -1, vec![(3, 1)]));
        let m = classify(&lab("h_13"), &lab("s_23")).unwrap();
        assert_eq!((m.sub.clone(), m.sign, m.targets.clone()), (vec![1, 3, 3, 2], -1, vec![(2, 1)]));
        let m = classify(&lab("h_12"), &lab("s_12")).unwrap();
        assert_eq!(m.targets, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn reg_lift_carries_eta_i() {
        let (sym, _) = symbolic_lift(BimoduleCase::Reg, 3).unwrap();
        let a = sym.ext.ambient();
        let u1 = a.basis().index_of(&lab("u_1")).unwrap();
        let h1 = a.basis().index_of(&lab("h_1")).unwrap();
        let g1 = a.basis().index_of(&lab("g_1")).unwrap();
        let eta1 = Unknown::new(UnknownFamily::Eta, &[1]);
        assert_eq!(a.product(u1, h1).coeff(g1), AffineForm::unknown(eta1));
        assert_eq!(a.product(h1, u1).coeff(g1), AffineForm::unknown(eta1));
        // zero-parameter limit is the split extension
        let zero: BTreeMap<Unknown, Rational> = sym.unknowns.iter().map(|u| (*u, Rational::zero())).collect();
        let plain = BimoduleCase::Reg.extension(3).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let e = a.product(i, j).map_coeffs(|f| f.evaluate(&zero));
                assert_eq!(&e, plain.ambient().product(i, j));
            }
        }
    }

    #[test]
    fn eta_i_vanishes() {
        let (sym, _) = symbolic_lift(BimoduleCase::Reg, 3).unwrap();
        let b = sym.ext.ambient().basis();
        let q = [lab("u_1"), lab("h_1"), lab("u_1"), lab("u_1")].map(|l| b.index_of(&l).unwrap());
        let cs = reduce_constraints(&derive_constraints(&sym, &[q]).unwrap());
        let eta1 = AffineForm::unknown(Unknown::new(UnknownFamily::Eta, &[1]));
        assert_eq!(cs.implies_zero(&eta1), Some(true));
    }

    #[test]
    fn empty_system_leaves_everything_free() {
        let (sym, _) = symbolic_lift(BimoduleCase::Pn, 3).unwrap();
        let cs = reduce_constraints(&derive_constraints(&sym, &[]).unwrap());
        let r = cs.reduction.as_ref().unwrap();
        assert_eq!(r.free.len(), sym.unknowns.len());
        assert!(r.solved.is_empty());
    }
}
