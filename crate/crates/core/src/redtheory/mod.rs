//! Intrinsic reductions, tangent maps and depth bookkeeping at type II points.

use serde::Serialize;

use crate::berktree::{direction_of, image_point, Direction, TypeIIPoint};
use crate::error::{Error, Result};
use crate::ratmap::{reduce_map, BinaryForm, Divided, HomogeneousPair, Mobius, ReducedMap};
use crate::valfield::{factor_binary, ClosedPoint, ResidueField, ResiduePoint, ValuedField};

mod probe;

pub use probe::{tangent_image_probe, PROBE_HALVINGS};

/// Maps the unit disk onto `x`.
pub fn recentering<K: ValuedField>(x: &TypeIIPoint<K>) -> Mobius<K> {
    Mobius::affine(x.scale(), x.center().clone()).expect("nonzero scale")
}

/// The reductions of `φ` at `x` in the two frames that matter: source and
/// target both at `x`, and source at `x` with target at `φ(x)`.
#[derive(Clone, Debug)]
pub struct Frames<K: ValuedField> {
    pub x: TypeIIPoint<K>,
    /// `φ(x)`; the representative of `x` itself when `x` is fixed.
    pub y: TypeIIPoint<K>,
    pub fixed: bool,
    pub own: ReducedMap<K::Residue>,
    pub tangent: ReducedMap<K::Residue>,
}

impl<K: ValuedField> Frames<K> {
    pub fn new(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<Self> {
        let y = image_point(m, x)?;
        let fixed = y == *x;
        let y = if fixed { x.clone() } else { y };
        let gx = recentering(x);
        let own = reduce_map(&m.conjugate(&gx))?;
        let tangent = if fixed { own.clone() } else { reduce_map(&m.bi_conjugate(&gx, &recentering(&y)))? };
        Ok(Frames { x: x.clone(), y, fixed, own, tangent })
    }

    /// The tangent map as a residue map; nonconstant by construction.
    fn chi(&self) -> &Divided<K::Residue> {
        &self.tangent.divided
    }

    pub fn local_degree(&self) -> usize {
        self.chi().degree()
    }

    /// Image under the tangent map of a direction tag at `x`.
    pub fn push(&self, tag: &ClosedPoint<K::Residue>) -> Result<ClosedPoint<K::Residue>> {
        apply_closed(self.chi(), tag)
    }

    /// Tag at `x` of the direction toward `φ(x)`, when `x` is not fixed.
    pub fn toward_image(&self) -> Option<ClosedPoint<K::Residue>> {
        (!self.fixed).then(|| direction_of(&self.x, &self.y).unwrap().tag().clone())
    }

    /// Tag at `φ(x)` of the direction back toward `x`, when `x` is not fixed.
    pub fn back_from_image(&self) -> Option<ClosedPoint<K::Residue>> {
        (!self.fixed).then(|| direction_of(&self.y, &self.x).unwrap().tag().clone())
    }

    /// `(φ^* δ_target)(U(v))` for the direction `v` at `x` tagged `tag`:
    /// the surplus, plus the directional multiplicity when `φ_* v` points
    /// at `target`.
    pub fn pullback_mass(&self, tag: &ClosedPoint<K::Residue>, target: &TypeIIPoint<K>) -> Result<usize> {
        let image = self.push(tag)?;
        let s = multiplicity_in(&self.tangent.hole, tag);
        if *target == self.y || direction_of(&self.y, target)?.tag() != &image {
            return Ok(s);
        }
        Ok(s + multiplicity_in(&fiber_form(self.chi(), &image), tag))
    }

    /// Whether the intrinsic reduction fixes the direction `tag`.
    pub fn is_fixed_direction(&self, tag: &ClosedPoint<K::Residue>) -> Result<bool> {
        match self.toward_image() {
            Some(c) => Ok(*tag == c),
            None => Ok(self.push(tag)? == *tag),
        }
    }
}

fn residue_zero<R: ResidueField>(f: &BinaryForm<R>) -> R {
    let p = f.poly();
    p.lead().expect("nonzero form").zero_like()
}

/// Image of a closed point under a nonconstant residue map.
pub fn apply_closed<R: ResidueField>(map: &Divided<R>, tag: &ClosedPoint<R>) -> Result<ClosedPoint<R>> {
    match (map, tag) {
        (Divided::Constant(c), _) => Ok(ClosedPoint::Rational(c.clone())),
        (_, ClosedPoint::Rational(r)) => Ok(ClosedPoint::Rational(map.apply(r))),
        (Divided::NonConstant { num, den }, ClosedPoint::Orbit(f)) => Ok(match R::image_of_closed(f, num.poly(), den.poly())? {
            None => ClosedPoint::Rational(ResiduePoint::Infinity),
            Some(g) => ClosedPoint::from_factor(g),
        }),
    }
}

/// The binary form whose zeros are the preimages of `w` under `map`.
pub fn fiber_form<R: ResidueField>(map: &Divided<R>, w: &ClosedPoint<R>) -> BinaryForm<R> {
    let Divided::NonConstant { num, den } = map else {
        panic!("fiber of a constant map");
    };
    match w {
        ClosedPoint::Rational(ResiduePoint::Infinity) => den.clone(),
        ClosedPoint::Rational(ResiduePoint::Finite(c)) => num.sub(&den.scale(c)),
        ClosedPoint::Orbit(g) => BinaryForm::new(g.clone(), g.degree().unwrap()).compose(num, den),
    }
}

/// Multiplicity of a closed point as a zero of a nonzero binary form.
pub fn multiplicity_in<R: ResidueField>(form: &BinaryForm<R>, u: &ClosedPoint<R>) -> usize {
    match u {
        ClosedPoint::Rational(ResiduePoint::Infinity) => form.y_power(),
        ClosedPoint::Rational(ResiduePoint::Finite(a)) => form.poly().multiplicity_of(&crate::arith::Poly::linear_root(a)),
        ClosedPoint::Orbit(f) => form.poly().multiplicity_of(f),
    }
}

pub(crate) fn factor_form<R: ResidueField>(f: &BinaryForm<R>) -> Result<Vec<(ClosedPoint<R>, usize)>> {
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    factor_binary(&f.coeff_vec(&residue_zero(f)))
}

/// `φ̃_x`: a residue map when `x` is fixed, otherwise a constant direction.
#[derive(Clone, Debug)]
pub enum IntrinsicReduction<K: ValuedField> {
    Fixed { base: TypeIIPoint<K>, map: Divided<K::Residue> },
    NonFixed { base: TypeIIPoint<K>, direction: Direction<K> },
}

pub fn intrinsic_reduction<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<IntrinsicReduction<K>> {
    let fr = Frames::new(m, x)?;
    Ok(if fr.fixed {
        IntrinsicReduction::Fixed { base: fr.x.clone(), map: fr.own.divided.clone() }
    } else {
        IntrinsicReduction::NonFixed { base: fr.x.clone(), direction: direction_of(&fr.x, &fr.y)? }
    })
}

/// Masses of `φ^* δ_x` on the directions at `x`, and at `x` itself.
#[derive(Clone, Debug)]
pub struct DepthProfile<K: ValuedField> {
    pub base: TypeIIPoint<K>,
    pub depths: Vec<(ClosedPoint<K::Residue>, usize)>,
    pub point_mass: usize,
}

impl<K: ValuedField> DepthProfile<K> {
    pub fn depth(&self, tag: &ClosedPoint<K::Residue>) -> usize {
        self.depths.iter().find(|(u, _)| u == tag).map_or(0, |(_, k)| *k)
    }

    /// `Σ deg(u) dep_u + point mass`, which equals `d`.
    pub fn total_mass(&self) -> usize {
        self.depths.iter().map(|(u, k)| u.degree() * k).sum::<usize>() + self.point_mass
    }

    pub fn to_entries(&self) -> Vec<DepthEntry> {
        self.depths.iter().map(|(u, k)| DepthEntry { direction: u.to_string(), depth: *k }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthEntry {
    pub direction: String,
    pub depth: usize,
}

pub fn depth_profile<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<DepthProfile<K>> {
    let gx = recentering(x);
    let own = reduce_map(&m.conjugate(&gx))?;
    profile_from(x, &own)
}

pub(crate) fn profile_from<K: ValuedField>(x: &TypeIIPoint<K>, own: &ReducedMap<K::Residue>) -> Result<DepthProfile<K>> {
    Ok(DepthProfile { base: x.clone(), depths: factor_form(&own.hole)?, point_mass: own.divided.degree() })
}

/// `φ_{*,x} v` computed exactly from the reduction in the frames of `x` and `φ(x)`.
pub fn tangent_image<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>, v: &Direction<K>) -> Result<Direction<K>> {
    let fr = Frames::new(m, x)?;
    let v = v.rebase(&fr.x)?;
    Ok(Direction::new(fr.y.clone(), fr.push(v.tag())?))
}

pub fn local_degree<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<usize> {
    Ok(Frames::new(m, x)?.local_degree())
}

/// Directional multiplicity `m`, surplus `s` and depth at one direction.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionalDegree<R: ResidueField> {
    pub tag: ClosedPoint<R>,
    pub depth: usize,
    pub multiplicity: usize,
    pub surplus: usize,
    /// Whether `x` lies in the component of `φ_* v`.
    pub covers_base: bool,
    pub fixed: bool,
}

#[derive(Clone, Debug)]
pub struct LocalDegreeData<K: ValuedField> {
    pub base: TypeIIPoint<K>,
    pub local_degree: usize,
    pub point_mass: usize,
    /// Every direction with positive depth or surplus.
    pub directions: Vec<DirectionalDegree<K::Residue>>,
    pub fixed: bool,
}

impl<K: ValuedField> LocalDegreeData<K> {
    pub fn at(&self, tag: &ClosedPoint<K::Residue>) -> Option<&DirectionalDegree<K::Residue>> {
        self.directions.iter().find(|d| d.tag == *tag)
    }
}

/// Depths, directional multiplicities and surpluses at `x`. The depths come
/// from the hole divisor in the frame of `x`, the surpluses from the hole
/// divisor in the frames of `x` and `φ(x)`; the argument principle must tie
/// them together, and the sum rules must hold, or an error is returned.
pub fn directional_surplus_degrees<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<LocalDegreeData<K>> {
    let fr = Frames::new(m, x)?;
    analyze(m.degree(), &fr)
}

pub fn analyze<K: ValuedField>(d: usize, fr: &Frames<K>) -> Result<LocalDegreeData<K>> {
    let profile = profile_from(&fr.x, &fr.own)?;
    let surplus = factor_form(&fr.tangent.hole)?;
    let deg = fr.local_degree();
    let back = fr.back_from_image();
    let mut tags: Vec<ClosedPoint<K::Residue>> = profile.depths.iter().map(|(u, _)| u.clone()).collect();
    for (u, _) in &surplus {
        if !tags.contains(u) {
            tags.push(u.clone());
        }
    }
    let mut out = Vec::new();
    for tag in tags {
        let image = fr.push(&tag)?;
        let multiplicity = multiplicity_in(&fiber_form(fr.chi(), &image), &tag);
        let s = surplus.iter().find(|(u, _)| *u == tag).map_or(0, |(_, k)| *k);
        let dep = profile.depth(&tag);
        let covers_base = back.as_ref() == Some(&image);
        if dep != s + if covers_base { multiplicity } else { 0 } {
            return Err(Error::Inconsistent(format!(
                "at {} direction {tag}: depth {dep} but surplus {s} + multiplicity {multiplicity} x {}",
                fr.x, covers_base as u8
            )));
        }
        let fixed = fr.is_fixed_direction(&tag)?;
        out.push(DirectionalDegree { tag, depth: dep, multiplicity, surplus: s, covers_base, fixed });
    }
    let total_surplus: usize = out.iter().map(|e| e.surplus * e.tag.degree()).sum();
    if total_surplus != d - deg {
        return Err(Error::Inconsistent(format!("surpluses sum to {total_surplus}, expected {}", d - deg)));
    }
    for e in &out {
        let image = fr.push(&e.tag)?;
        let fiber = factor_form(&fiber_form(fr.chi(), &image))?;
        let weighted: usize = fiber.iter().map(|(u, k)| u.degree() * k).sum();
        if weighted != deg * image.degree() {
            return Err(Error::Inconsistent(format!("fiber over {image} has mass {weighted}, expected {}", deg * image.degree())));
        }
    }
    if profile.total_mass() != d {
        return Err(Error::Inconsistent(format!("depth mass {} differs from degree {d}", profile.total_mass())));
    }
    Ok(LocalDegreeData { base: fr.x.clone(), local_degree: deg, point_mass: profile.point_mass, directions: out, fixed: fr.fixed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Semistability {
    Stable,
    SemistableNotStable,
    Unstable,
}

/// Classifies the intrinsic reduction at `x` by its depths.
pub fn semistability_check<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<Semistability> {
    let d = m.degree();
    if d < 2 {
        return Err(Error::Precondition("semistability needs degree at least 2".into()));
    }
    let fr = Frames::new(m, x)?;
    let profile = profile_from(&fr.x, &fr.own)?;
    let mut entries = Vec::new();
    for (u, k) in &profile.depths {
        entries.push((*k, fr.is_fixed_direction(u)?));
    }
    Ok(classify_depths(d, &entries))
}

/// The two-tier bound: with depths doubled to stay integral, semistable
/// needs `2 dep <= d + 1` (`2 dep < d` on fixed directions), stable needs
/// `2 dep <= d` (`2 dep < d - 1` on fixed directions).
pub fn classify_depths(d: usize, entries: &[(usize, bool)]) -> Semistability {
    let ok = |slack: usize| entries.iter().all(|&(k, fixed)| if fixed { 2 * k + 1 < d + slack } else { 2 * k <= d + slack });
    if ok(0) {
        Semistability::Stable
    } else if ok(1) {
        Semistability::SemistableNotStable
    } else {
        Semistability::Unstable
    }
}

#[cfg(test)]
mod tests;
