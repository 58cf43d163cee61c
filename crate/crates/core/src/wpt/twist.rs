//! Nontrivial square-zero extensions obtained by transporting a split one
//! along `T = id + φ`, with `φ` mapping the algebra part into the radical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{require_n, Lift};
use crate::bimodule::SplitNullExtension;
use crate::error::{Error, Result};
use crate::graded::{Element, Family, GradedAlgebra, GradedBasis, Label};
use crate::scalar::Rational;

/// A twisted extension `x * y = T(T⁻¹x · T⁻¹y)` together with the naive
/// lift (the old algebra basis vectors) and the map `φ` used.
#[derive(Clone, Debug)]
pub struct Twist {
    pub algebra: GradedAlgebra,
    pub radical: Vec<usize>,
    pub lift: Lift,
    /// `φ(e_b)` for every algebra-part basis vector `b`.
    pub phi: Vec<Element>,
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-9..=9);
    let den = [1, 2, 3][rng.random_range(0..3)];
    Rational::new(num, den)
}

fn apply_phi(phi: &[Element], x: &Element) -> Element {
    Element::from_terms(
        x.terms()
            .iter()
            .filter(|(k, _)| *k < phi.len())
            .flat_map(|(k, c)| phi[*k].scale(c).into_terms())
            .collect(),
    )
}

/// Transports `ext` along `id + φ`; `phi[b]` must lie in the radical and
/// share the parity of `b`.
pub fn twist_by(ext: &SplitNullExtension, phi: Vec<Element>) -> Result<Twist> {
    let amb = ext.ambient();
    let da = ext.algebra_dim();
    if phi.len() != da {
        return Err(Error::DimensionMismatch { expected: da, got: phi.len() });
    }
    for (b, f) in phi.iter().enumerate() {
        if f.support().any(|k| k < da || k >= amb.dim() || amb.parity(k) != amb.parity(b)) {
            return Err(Error::Invalid(format!(
                "twist image of {} must be a radical element of the same parity",
                amb.basis().label(b)
            )));
        }
    }
    let pre = |k: usize| {
        let e = Element::basis(k);
        if k < da {
            e.sub(&phi[k])
        } else {
            e
        }
    };
    let pres: Vec<Element> = (0..amb.dim()).map(pre).collect();
    let mut table = Vec::with_capacity(amb.dim() * amb.dim());
    for i in 0..amb.dim() {
        for j in 0..amb.dim() {
            let p = amb.multiply(&pres[i], &pres[j])?;
            table.push(p.add(&apply_phi(&phi, &p)));
        }
    }
    let algebra = GradedAlgebra::new(amb.basis().clone(), table)?;
    let canonical = GradedBasis::new(amb.basis().entries()[..da].to_vec())?;
    Ok(Twist {
        algebra,
        radical: ext.radical_indices(),
        lift: Lift::identity(canonical),
        phi,
    })
}

/// Random parity-preserving `φ` with entries `p/q`, `p ∈ [−9, 9]`,
/// `q ∈ {1, 2, 3}`, drawn from a ChaCha stream seeded by `seed`. Seed 0 is
/// reserved for `φ = 0`.
pub fn shear_twist(ext: &SplitNullExtension, seed: u64) -> Result<Twist> {
    let amb = ext.ambient();
    let da = ext.algebra_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = (0..da)
        .map(|b| {
            if seed == 0 {
                return Element::zero();
            }
            Element::from_terms(
                ext.radical()
                    .filter(|&r| amb.parity(r) == amb.parity(b))
                    .map(|r| (r, small_rational(&mut rng)))
                    .collect(),
            )
        })
        .collect();
    twist_by(ext, phi)
}

/// Twist of the regular extension of JP_n along
/// `φ(h_i) = a_i g_i`, `φ(h_ij) = b_ij g_ij`, `φ(s_ij) = −b_ij z_ij`, even
/// part untouched: the shape the Case-1 closed form corrects.
pub fn xi_pattern_twist(ext: &SplitNullExtension, n: usize, seed: u64) -> Result<Twist> {
    require_n(n)?;
    let amb = ext.ambient();
    let basis = amb.basis();
    let ix = |l: Label| {
        basis
            .index_of(&l)
            .ok_or_else(|| Error::Invalid(format!("extension has no basis vector {l}; the pattern needs the regular bimodule")))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || if seed == 0 { Rational::zero() } else { small_rational(&mut rng) };
    let mut phi = vec![Element::zero(); ext.algebra_dim()];
    for i in 1..=n {
        phi[ix(Label::one(Family::H, i))?] = Element::basis(ix(Label::one(Family::G, i))?).scale(&draw());
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let b = draw();
            phi[ix(Label::two(Family::H, i, j))?] = Element::basis(ix(Label::two(Family::G, i, j))?).scale(&b);
            phi[ix(Label::two(Family::S, i, j))?] = Element::basis(ix(Label::two(Family::Z, i, j))?).scale(&-&b);
        }
    }
    twist_by(ext, phi)
}
