//! Verification of the stationarity theorem for quadratic maps: the
//! minimum locus of hypRes for the iterates `φ^j`.

use std::fmt;

use serde::Serialize;

use crate::berktree::{direction_of, direction_to_classical, TypeIIPoint};
use crate::error::{Error, Result};
use crate::hypres::{locus_ramification_budget, min_locus, ramified, ramified_point, ray_search, Ray, DESCENT_CAP};
use crate::ratmap::{Divided, HomogeneousPair};
use crate::redtheory::{apply_closed, factor_form, fiber_form, multiplicity_in, profile_from, Frames};
use crate::valfield::{ClosedPoint, ResidueField, ValuedField};

pub mod fixtures;
mod sequences;
mod verify;

pub use sequences::{abc_sequences, DepthSequences};
pub use verify::{verify_theorem, JPoint, LocusJson, PerIterate, TheoremReport, VerifyOptions, DEFAULT_ITERATIONS};

#[cfg(test)]
mod tests;

/// Steps allowed when following the residue orbit of `v1`.
pub const ORBIT_CAP: usize = 64;

/// What the intrinsic reduction at the minimum point looks like.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    TwoToOne,
    ConstantImage,
    BijectiveAcyclic,
    BijectiveCyclic(usize),
    /// Bijective, but neither a return of `v1` nor a certificate of infinite
    /// order was found.
    Unknown,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::TwoToOne => "TwoToOne",
            Classification::ConstantImage => "ConstantImage",
            Classification::BijectiveAcyclic => "BijectiveAcyclic",
            Classification::BijectiveCyclic(_) => "BijectiveCyclic",
            Classification::Unknown => "Unknown",
        }
    }

    pub fn period(&self) -> Option<usize> {
        match self {
            Classification::BijectiveCyclic(p) => Some(*p),
            _ => None,
        }
    }

    pub fn is_bijective(&self) -> bool {
        matches!(self, Classification::BijectiveAcyclic | Classification::BijectiveCyclic(_) | Classification::Unknown)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::BijectiveCyclic(p) => write!(f, "BijectiveCyclic({p})"),
            c => f.write_str(c.name()),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A point of the input field ramified by `ramification`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lifted<K: ValuedField> {
    pub point: TypeIIPoint<K>,
    pub ramification: u32,
}

impl<K: ValuedField> Lifted<K> {
    /// The same point in the field ramified by `r`, a multiple of ours.
    pub fn to(&self, r: u32) -> TypeIIPoint<K> {
        ramified_point(&self.point, r / self.ramification)
    }

    /// Whether this is the point `p` of the input field.
    pub fn is(&self, p: &TypeIIPoint<K>) -> bool {
        self.point == ramified_point(p, self.ramification)
    }

    pub fn same_as(&self, o: &Self) -> bool {
        let r = lcm(self.ramification, o.ramification);
        self.to(r) == o.to(r)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    num::integer::lcm(a, b)
}

fn quadratic<K: ValuedField>(m: &HomogeneousPair<K>) -> Result<()> {
    match m.degree() {
        2 => Ok(()),
        d => Err(Error::Precondition(format!("the theorem concerns quadratic maps, got degree {d}"))),
    }
}

/// The minimum point `ξ_φ` and the reduction there.
#[derive(Clone, Debug)]
pub struct ReductionAnalysis<K: ValuedField> {
    /// The input map over the field ramified like `xi_phi`.
    pub map: HomogeneousPair<K>,
    pub xi_phi: Lifted<K>,
    /// The unique direction of positive depth, in the bijective case.
    pub v1: Option<ClosedPoint<K::Residue>>,
    pub classification: Classification,
    pub diagnostic: Option<String>,
}

/// `trace^2 / det` of a degree-one residue map.
fn mobius_invariant<R: ResidueField>(map: &Divided<R>) -> Option<R> {
    let Divided::NonConstant { num, den } = map else { return None };
    if num.degree() != 1 {
        return None;
    }
    let zero = num.poly().lead()?.zero_like();
    let at = |f: &crate::ratmap::BinaryForm<R>, i| f.coeff(i).cloned().unwrap_or_else(|| zero.clone());
    let (a, b, c, d) = (at(num, 1), at(num, 0), at(den, 1), at(den, 0));
    let tr = a.add(&d);
    tr.mul(&tr).div(&a.mul(&d).sub(&b.mul(&c)))
}

pub fn analyze_reduction<K: ValuedField>(m: &HomogeneousPair<K>, orbit_cap: usize) -> Result<ReductionAnalysis<K>> {
    quadratic(m)?;
    let found = min_locus(m)?;
    let xi = found.locus.as_point().ok_or_else(|| Error::Inconsistent(format!("quadratic minimum locus {} is not a point", found.locus)))?.clone();
    let r = found.ramification;
    let mr = ramified(m, r);
    let fr = Frames::new(&mr, &xi)?;
    let mut out = ReductionAnalysis {
        map: mr,
        xi_phi: Lifted { point: xi.clone(), ramification: r },
        v1: None,
        classification: Classification::ConstantImage,
        diagnostic: None,
    };
    if !fr.fixed {
        return Ok(out);
    }
    if fr.own.divided.degree() == 2 {
        out.classification = Classification::TwoToOne;
        return Ok(out);
    }
    let profile = profile_from(&xi, &fr.own)?;
    let [(v1, _)] = profile.depths.as_slice() else {
        return Err(Error::Inconsistent(format!("bijective reduction at {xi} with depths {:?}", profile.to_entries())));
    };
    out.v1 = Some(v1.clone());
    let mut u = v1.clone();
    for step in 1..=orbit_cap {
        u = apply_closed(&fr.own.divided, &u)?;
        if u == *v1 {
            out.classification = Classification::BijectiveCyclic(step);
            return Ok(out);
        }
    }
    let certified = mobius_invariant(&fr.own.divided).is_some_and(|tau| K::Residue::certifies_infinite_order(&tau));
    if certified {
        out.classification = Classification::BijectiveAcyclic;
    } else {
        out.classification = Classification::Unknown;
        out.diagnostic = Some(format!(
            "the orbit of {v1} did not return within {orbit_cap} steps and the residue map carries no infinite-order certificate; \
             acyclic reductions need a residue field of characteristic zero (the laurent backend)"
        ));
    }
    Ok(out)
}

pub fn classify_reduction<K: ValuedField>(m: &HomogeneousPair<K>) -> Result<Classification> {
    Ok(analyze_reduction(m, ORBIT_CAP)?.classification)
}

/// The direction carrying the surplus at a point of local degree 1.
fn surplus_direction<K: ValuedField>(fr: &Frames<K>) -> Result<ClosedPoint<K::Residue>> {
    match factor_form(&fr.tangent.hole)?.as_slice() {
        [(u, 1)] => Ok(u.clone()),
        other => Err(Error::Inconsistent(format!("expected one surplus direction at {}, found {}", fr.x, other.len()))),
    }
}

/// Nearest point to `ξ_φ` of the ramification locus, for a bijective
/// reduction; `ξ_φ` itself when the reduction there is two to one.
pub fn ramification_retraction<K: ValuedField>(m: &HomogeneousPair<K>) -> Result<Lifted<K>> {
    retraction_from(&analyze_reduction(m, ORBIT_CAP)?)
}

pub fn retraction_from<K: ValuedField>(an: &ReductionAnalysis<K>) -> Result<Lifted<K>> {
    match an.classification {
        Classification::TwoToOne => return Ok(an.xi_phi.clone()),
        Classification::ConstantImage => return Err(Error::Precondition("the reduction at the minimum point is constant".into())),
        _ => {}
    }
    let mut m = an.map.clone();
    let mut r = an.xi_phi.ramification;
    let mut x = an.xi_phi.point.clone();
    let mut tag = an.v1.clone().expect("bijective reductions record v1");
    for _ in 0..DESCENT_CAP {
        let ray = Ray::new(&x, &tag)?;
        let budget = (locus_ramification_budget(2) / r).max(1);
        let (s, k) = ray_search(&m, &ray, budget, |mk, rk, s| {
            let p = rk.point(s)?;
            let fr = Frames::new(mk, &p)?;
            let back = direction_of(&p, &rk.base)?.tag().clone();
            if fr.local_degree() == 2 {
                let image = fr.push(&back)?;
                return Ok((true, multiplicity_in(&fiber_form(&fr.tangent.divided, &image), &back) == 1));
            }
            let forward = direction_to_classical(&p, &rk.end).tag().clone();
            let u = surplus_direction(&fr)?;
            Ok((u != forward, u != back))
        })?;
        if k > 1 {
            m = m.ramify(k);
            r *= k;
        }
        let p = ray.ramify(k).point(&s)?;
        let fr = Frames::new(&m, &p)?;
        if fr.local_degree() == 2 {
            return Ok(Lifted { point: p, ramification: r });
        }
        tag = surplus_direction(&fr)?;
        x = p;
    }
    Err(Error::IterationCap("ramification retraction".into()))
}
