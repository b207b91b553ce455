use std::fmt;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::valfield::ValuedField;

/// Point of `P^1(K)`.
#[derive(Clone, PartialEq, Debug)]
pub enum ProjPoint<K> {
    Finite(K),
    Infinity,
}

/// `w -> (a w + b) / (c w + d)` with `ad - bc != 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Mobius<K: Field> {
    pub a: K,
    pub b: K,
    pub c: K,
    pub d: K,
}

impl<K: ValuedField> Mobius<K> {
    pub fn new(a: K, b: K, c: K, d: K) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity(cfg: &K::Config) -> Self {
        let one = K::from_q(cfg, &crate::arith::field::q_int(1));
        let zero = one.zero_like();
        Mobius { a: one.clone(), b: zero.clone(), c: zero, d: one }
    }

    /// `w -> center + scale * w`.
    pub fn affine(scale: K, center: K) -> Result<Self> {
        let zero = scale.zero_like();
        let one = scale.one_like();
        Self::new(scale, center, zero, one)
    }

    /// `w -> 1 / w`.
    pub fn inversion(cfg: &K::Config) -> Self {
        let one = K::from_q(cfg, &crate::arith::field::q_int(1));
        let zero = one.zero_like();
        Mobius { a: zero.clone(), b: one.clone(), c: one, d: zero }
    }

    pub fn det(&self) -> K {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        Mobius {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    /// The adjugate, which is the inverse up to a scalar.
    pub fn adjugate(&self) -> Self {
        Mobius { a: self.d.clone(), b: self.b.neg(), c: self.c.neg(), d: self.a.clone() }
    }

    pub fn apply(&self, w: &ProjPoint<K>) -> ProjPoint<K> {
        let (num, den) = match w {
            ProjPoint::Finite(w) => (self.a.mul(w).add(&self.b), self.c.mul(w).add(&self.d)),
            ProjPoint::Infinity => (self.a.clone(), self.c.clone()),
        };
        match num.div(&den) {
            Some(v) => ProjPoint::Finite(v),
            None => ProjPoint::Infinity,
        }
    }
}

impl<K: Field> fmt::Display for Mobius<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
