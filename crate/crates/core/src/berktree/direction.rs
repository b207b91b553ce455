use std::fmt;

use super::TypeIIPoint;
use crate::error::{Error, Result};
use crate::ratmap::ProjPoint;
use crate::valfield::{ClosedPoint, ResiduePoint, ValuedField};

/// A tangent direction at a type II point, tagged by the closed point of
/// `P^1` over the residue field it corresponds to after recentering the base
/// to the Gauss point.
#[derive(Clone, Debug)]
pub struct Direction<K: ValuedField> {
    base: TypeIIPoint<K>,
    tag: ClosedPoint<K::Residue>,
}

impl<K: ValuedField> Direction<K> {
    pub fn new(base: TypeIIPoint<K>, tag: ClosedPoint<K::Residue>) -> Self {
        Direction { base, tag }
    }

    pub fn rational(base: TypeIIPoint<K>, r: ResiduePoint<K::Residue>) -> Self {
        Direction { base, tag: ClosedPoint::Rational(r) }
    }

    pub fn up(base: TypeIIPoint<K>) -> Self {
        Self::rational(base, ResiduePoint::Infinity)
    }

    pub fn base(&self) -> &TypeIIPoint<K> {
        &self.base
    }

    pub fn tag(&self) -> &ClosedPoint<K::Residue> {
        &self.tag
    }

    pub fn is_up(&self) -> bool {
        self.tag == ClosedPoint::Rational(ResiduePoint::Infinity)
    }

    /// The same direction expressed with `base` (canonically equal to the
    /// current base) as the representative.
    pub fn rebase(&self, base: &TypeIIPoint<K>) -> Result<Self> {
        if *base != self.base {
            return Err(Error::Precondition(format!("{base} is not the base {}", self.base)));
        }
        let delta = self.base.center().sub(base.center()).div(&base.scale()).unwrap().reduce()?;
        Ok(Direction { base: base.clone(), tag: self.tag.translate(&delta) })
    }

    /// Point at distance `s` from the base inside this direction; fails for
    /// directions without a rational lift.
    pub fn step(&self, s: &crate::arith::Q) -> Result<TypeIIPoint<K>> {
        let b = &self.base;
        match &self.tag {
            ClosedPoint::Rational(ResiduePoint::Infinity) => TypeIIPoint::new(b.center().clone(), b.t() + s),
            ClosedPoint::Rational(ResiduePoint::Finite(r)) => {
                let lift = K::lift(&b.config(), r);
                TypeIIPoint::new(b.center().add(&b.scale().mul(&lift)), b.t() - s)
            }
            ClosedPoint::Orbit(f) => Err(Error::IrrationalDirection(f.to_string_var("X"))),
        }
    }
}

impl<K: ValuedField> PartialEq for Direction<K> {
    fn eq(&self, o: &Self) -> bool {
        match o.rebase(&self.base) {
            Ok(r) => r.tag == self.tag,
            Err(_) => false,
        }
    }
}

impl<K: ValuedField> fmt::Display for Direction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.base, self.tag)
    }
}

/// Direction at `base` containing the classical point `target`.
pub fn direction_to_classical<K: ValuedField>(base: &TypeIIPoint<K>, target: &ProjPoint<K>) -> Direction<K> {
    match target {
        ProjPoint::Finite(b) if base.contains(b) => {
            let w = b.sub(base.center()).div(&base.scale()).unwrap();
            Direction::rational(base.clone(), ResiduePoint::Finite(w.reduce().expect("inside the disk")))
        }
        _ => Direction::up(base.clone()),
    }
}

/// Direction at `base` containing the type II point `target`.
pub fn direction_of<K: ValuedField>(base: &TypeIIPoint<K>, target: &TypeIIPoint<K>) -> Result<Direction<K>> {
    if base == target {
        return Err(Error::SamePoint);
    }
    if target.t() < base.t() && base.contains(target.center()) {
        Ok(direction_to_classical(base, &ProjPoint::Finite(target.center().clone())))
    } else {
        Ok(Direction::up(base.clone()))
    }
}
