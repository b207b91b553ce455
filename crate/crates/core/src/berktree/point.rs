use std::fmt;

use crate::arith::field::{parse_q, q_int};
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::valfield::{check_exponent, parse_scalar, ValExp, ValuedField};

/// The closed disk `{z : |z - center| <= r}` with `r = |pi|^(-t e)`, i.e.
/// radius `p^t` in the mixed backend. The Gauss point is `(0, 0)`.
#[derive(Clone, Debug)]
pub struct TypeIIPoint<K: ValuedField> {
    center: K,
    t: Q,
}

impl<K: ValuedField> TypeIIPoint<K> {
    pub fn new(center: K, t: Q) -> Result<Self> {
        check_exponent(&t, K::ramification(&center.config()))?;
        Ok(TypeIIPoint { center, t })
    }

    pub fn gauss(cfg: &K::Config) -> Self {
        TypeIIPoint { center: K::from_q(cfg, &q_int(0)), t: q_int(0) }
    }

    pub fn center(&self) -> &K {
        &self.center
    }

    /// Log-radius exponent.
    pub fn t(&self) -> &Q {
        &self.t
    }

    pub fn config(&self) -> K::Config {
        self.center.config()
    }

    pub fn is_gauss(&self) -> bool {
        self.t == q_int(0) && self.contains(&self.center.zero_like())
    }

    /// The scalar of valuation `-t` used to recenter this disk to the unit disk.
    pub fn scale(&self) -> K {
        K::uniformizer_pow(&self.config(), &-self.t.clone()).expect("exponent checked at construction")
    }

    /// Whether the classical point `b` lies in the disk.
    pub fn contains(&self, b: &K) -> bool {
        match b.sub(&self.center).valuation() {
            ValExp::Infinite => true,
            ValExp::Finite(v) => v >= -self.t.clone(),
        }
    }

    /// Whether `self` lies on the path from `o` to infinity (disk inclusion).
    pub fn is_above(&self, o: &Self) -> bool {
        self.t >= o.t && self.contains(&o.center)
    }

    /// Exponent of the smallest disk containing both.
    pub fn join_exponent(&self, o: &Self) -> Q {
        let sep = match self.center.sub(&o.center).valuation() {
            ValExp::Infinite => None,
            ValExp::Finite(v) => Some(-v),
        };
        let m = self.t.clone().max(o.t.clone());
        sep.map_or(m.clone(), |s| s.max(m))
    }

    pub fn join(&self, o: &Self) -> Self {
        TypeIIPoint { center: self.center.clone(), t: self.join_exponent(o) }
    }

    /// Same point with coefficients in a more ramified field.
    pub fn ramify(&self, k: u32) -> Self {
        TypeIIPoint { center: self.center.ramify(k), t: self.t.clone() }
    }

    /// Same disk, different center.
    pub fn with_center(&self, center: K) -> Self {
        debug_assert!(self.contains(&center));
        TypeIIPoint { center, t: self.t.clone() }
    }

    /// Parses `center@t`; a center of `inf` denotes the disk about infinity
    /// of the given exponent in the inverted chart, i.e. `0@-t`.
    pub fn parse(cfg: &K::Config, text: &str) -> Result<Self> {
        let (c, t) = text.rsplit_once('@').ok_or_else(|| Error::Parse(format!("expected center@t, got {text:?}")))?;
        let t = parse_q(t).ok_or_else(|| Error::Parse(format!("bad exponent {t:?}")))?;
        if c.trim() == "inf" {
            return Self::new(K::from_q(cfg, &q_int(0)), -t);
        }
        Self::new(parse_scalar(cfg, c)?, t)
    }
}

impl<K: ValuedField> PartialEq for TypeIIPoint<K> {
    fn eq(&self, o: &Self) -> bool {
        self.t == o.t && self.contains(&o.center)
    }
}

impl<K: ValuedField> fmt::Display for TypeIIPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.center, self.t)
    }
}

/// Hyperbolic distance in log-radius units.
pub fn rho<K: ValuedField>(x: &TypeIIPoint<K>, y: &TypeIIPoint<K>) -> Q {
    let j = x.join_exponent(y);
    q_int(2) * &j - x.t() - y.t()
}

/// The point common to the three segments between `x`, `y` and `base`.
pub fn wedge<K: ValuedField>(x: &TypeIIPoint<K>, y: &TypeIIPoint<K>, base: &TypeIIPoint<K>) -> TypeIIPoint<K> {
    [x.join(y), x.join(base), y.join(base)].into_iter().min_by(|a, b| a.t().cmp(b.t())).unwrap()
}
