//! Type II points of the Berkovich line: metric, joins, directions, and
//! images under Möbius and rational maps.

use crate::arith::field::q_int;
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::ratmap::{BinaryForm, HomogeneousPair, Mobius};
use crate::valfield::{ValExp, ValuedField};

mod direction;
mod point;

pub use direction::{direction_of, direction_to_classical, Direction};
pub use point::{rho, wedge, TypeIIPoint};

/// Geodesic segment from `start` to `end`.
#[derive(Clone, PartialEq, Debug)]
pub struct Segment<K: ValuedField> {
    pub start: TypeIIPoint<K>,
    pub end: TypeIIPoint<K>,
}

impl<K: ValuedField> Segment<K> {
    pub fn new(start: TypeIIPoint<K>, end: TypeIIPoint<K>) -> Self {
        Segment { start, end }
    }

    pub fn length(&self) -> Q {
        rho(&self.start, &self.end)
    }

    /// The point at distance `dist` from `start`.
    pub fn point_along(&self, dist: &Q) -> Result<TypeIIPoint<K>> {
        let len = self.length();
        if *dist < q_int(0) || *dist > len {
            return Err(Error::OutOfRange(format!("distance {dist} on a segment of length {len}")));
        }
        let top = self.start.join_exponent(&self.end);
        let up = &top - self.start.t();
        if *dist <= up {
            TypeIIPoint::new(self.start.center().clone(), self.start.t() + dist)
        } else {
            TypeIIPoint::new(self.end.center().clone(), &top - (dist - &up))
        }
    }

    /// Whether `x` lies on the segment.
    pub fn contains(&self, x: &TypeIIPoint<K>) -> bool {
        rho(&self.start, x) + rho(x, &self.end) == self.length()
    }
}

/// Image of a disk under a Möbius map.
pub fn apply_mobius_point<K: ValuedField>(g: &Mobius<K>, x: &TypeIIPoint<K>) -> Result<TypeIIPoint<K>> {
    let det = g.det();
    let vdet = det.valuation().finite().cloned().ok_or(Error::DegenerateMap)?;
    let a = x.center();
    let pole_inside = !g.c.is_zero() && x.contains(&g.d.neg().div(&g.c).unwrap());
    if pole_inside {
        let vc = g.c.valuation().finite().cloned().unwrap();
        let center = g.a.div(&g.c).unwrap();
        TypeIIPoint::new(center, -vdet + q_int(2) * vc - x.t())
    } else {
        let den = g.c.mul(a).add(&g.d);
        let vden = den.valuation().finite().cloned().expect("pole outside the disk");
        let center = g.a.mul(a).add(&g.b).div(&den).unwrap();
        TypeIIPoint::new(center, x.t() - vdet + q_int(2) * vden)
    }
}

/// Smallest coefficient valuation of a nonzero form.
pub(crate) fn gauss_val<K: ValuedField>(f: &BinaryForm<K>) -> Q {
    f.poly().coeffs().iter().filter_map(|c| c.valuation().finite().cloned()).min().expect("nonzero form")
}

/// The forms of `m ∘ γ_x`, where `γ_x` maps the unit disk onto `x`.
pub fn source_conjugate<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> (BinaryForm<K>, BinaryForm<K>) {
    let c = x.scale();
    let zero = c.zero_like();
    let one = c.one_like();
    let a = x.center();
    (m.f().substitute(&c, a, &zero, &one), m.g().substitute(&c, a, &zero, &one))
}

/// `φ(x)` as a type II point.
///
/// With `(P, Q)` the forms of `φ ∘ γ_x`, the pushed-forward seminorm gives
/// `-log |z - b|_{φ(x)} = v(P - bQ) - v(Q)` in Gauss valuations. Any ratio
/// `P_j / Q_j` at a coefficient where `Q` attains its Gauss valuation lies in
/// the image disk, and the radius is read off at that center.
pub fn image_point<K: ValuedField>(m: &HomogeneousPair<K>, x: &TypeIIPoint<K>) -> Result<TypeIIPoint<K>> {
    let (p, q) = source_conjugate(m, x);
    let vq = gauss_val(&q);
    let j = q.poly().coeffs().iter().position(|c| c.valuation() == ValExp::Finite(vq.clone())).unwrap();
    let center = p.poly().coeff(j).cloned().unwrap_or_else(|| vq_zero(&q)).div(&q.poly().coeffs()[j]).unwrap();
    let diff = p.sub(&q.scale(&center));
    if diff.is_zero() {
        return Err(Error::DegenerateMap);
    }
    let d = gauss_val(&diff) - vq;
    TypeIIPoint::new(center, -d)
}

fn vq_zero<K: ValuedField>(q: &BinaryForm<K>) -> K {
    q.poly().lead().unwrap().zero_like()
}

#[cfg(test)]
mod tests;
