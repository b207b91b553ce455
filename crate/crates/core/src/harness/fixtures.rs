//! Normal forms for quadratic maps whose reduction at the Gauss point is a
//! bijection of finite order, and the standard examples.

use crate::arith::field::{q_frac, q_int};
use crate::arith::{Field, Q};
use crate::berktree::TypeIIPoint;
use crate::error::{Error, Result};
use crate::hypres::ramified_point;
use crate::ratmap::{parse_map, HomogeneousPair};
use crate::valfield::{LaurentConfig, LaurentScalar, MixedConfig, MixedScalar, ValExp, ValuedField};

use super::Lifted;

/// Largest multiplicative order searched for a residue root of unity.
const ORDER_CAP: usize = 64;

#[derive(Clone, Debug)]
pub enum NormalFormSpec<K: ValuedField> {
    /// `ω z (z - b) / (z - a)` with `a`, `b` distinct and close to 1.
    Loxodromic { omega: K, a: K, b: K },
    /// `(z - b)(z - 1) / z` with `0 < |b| < 1`.
    Parabolic { b: K },
}

fn valuation<K: ValuedField>(x: &K) -> Option<Q> {
    match x.valuation() {
        ValExp::Finite(q) => Some(q),
        ValExp::Infinite => None,
    }
}

fn positive<K: ValuedField>(x: &K) -> bool {
    valuation(x).is_none_or(|v| v > q_int(0))
}

impl<K: ValuedField> NormalFormSpec<K> {
    pub fn config(&self) -> K::Config {
        match self {
            NormalFormSpec::Loxodromic { omega, .. } => omega.config(),
            NormalFormSpec::Parabolic { b } => b.config(),
        }
    }

    /// Checks the normal-form constraints and returns the period of the
    /// reduction at the Gauss point.
    pub fn validate(&self) -> Result<usize> {
        match self {
            NormalFormSpec::Loxodromic { omega, a, b } => {
                let one = a.one_like();
                if !positive(&a.sub(&one)) || !positive(&b.sub(&one)) {
                    return Err(Error::Precondition("a and b must lie in the open unit disk around 1".into()));
                }
                if a == b {
                    return Err(Error::Precondition("a and b must differ".into()));
                }
                let w = omega.reduce()?;
                let mut acc = w.clone();
                for k in 1..=ORDER_CAP {
                    if acc.is_one() {
                        return if k > 1 { Ok(k) } else { Err(Error::Precondition("omega reduces to 1".into())) };
                    }
                    acc = acc.mul(&w);
                }
                Err(Error::Precondition(format!("omega is not a root of unity of order at most {ORDER_CAP} mod the maximal ideal")))
            }
            NormalFormSpec::Parabolic { b } => {
                if b.is_zero() || !positive(b) {
                    return Err(Error::Precondition("b must satisfy 0 < |b| < 1".into()));
                }
                match K::descriptor(&b.config()).p {
                    Some(p) => Ok(p as usize),
                    None => Err(Error::Precondition("a parabolic reduction of finite order needs positive residue characteristic".into())),
                }
            }
        }
    }

    pub fn map(&self) -> Result<HomogeneousPair<K>> {
        self.validate()?;
        let cfg = self.config();
        let (f, g) = match self {
            NormalFormSpec::Loxodromic { omega, a, b } => {
                let zero = a.zero_like();
                (vec![zero.clone(), omega.mul(b).neg(), omega.clone()], vec![a.neg(), a.one_like(), zero])
            }
            NormalFormSpec::Parabolic { b } => {
                let (zero, one) = (b.zero_like(), b.one_like());
                (vec![b.clone(), one.add(b).neg(), one.clone()], vec![zero.clone(), one, zero])
            }
        };
        HomogeneousPair::from_coeffs(f, g, cfg)
    }

    /// The disk around the critical points: `B(a, |a - b|^(1/2))`, resp.
    /// `B(0, |b|^(1/2))`.
    pub fn critical_disk(&self) -> Result<Lifted<K>> {
        let (center, dist) = match self {
            NormalFormSpec::Loxodromic { a, b, .. } => (a.clone(), a.sub(b)),
            NormalFormSpec::Parabolic { b } => (b.zero_like(), b.clone()),
        };
        let v = valuation(&dist).ok_or_else(|| Error::Precondition("degenerate normal form".into()))?;
        let t = -v / q_int(2);
        let e = K::ramification(&center.config());
        let k = (&t * Q::from_integer(e.into())).denom().clone();
        let k: u32 = k.try_into().map_err(|_| Error::EnlargeE(t.to_string()))?;
        let base = TypeIIPoint::new(center, q_int(0))?;
        let lifted = ramified_point(&base, k);
        Ok(Lifted { point: TypeIIPoint::new(lifted.center().clone(), t)?, ramification: k })
    }
}

fn mixed(p: u64, e: u32, n: i64) -> MixedScalar {
    MixedScalar::from_q(&MixedConfig::new(p, e).unwrap(), &q_frac(n, 1))
}

/// `-z (z - 10) / (z - 4)` over `Q_3(3^(1/2))`: period 2.
pub fn loxodromic_example() -> NormalFormSpec<MixedScalar> {
    NormalFormSpec::Loxodromic { omega: mixed(3, 2, -1), a: mixed(3, 2, 4), b: mixed(3, 2, 10) }
}

/// `(z - 2)(z - 1) / z` over `Q_2(2^(1/2))`: period 2.
pub fn parabolic_example() -> NormalFormSpec<MixedScalar> {
    NormalFormSpec::Parabolic { b: mixed(2, 2, 2) }
}

/// `s z (z - (1 + t^2)) / (z - (1 + t))` over `Q(s)((t))`: the reduction
/// `z -> s z` has infinite order.
pub const ACYCLIC_MAP: &str = "s*z*(z-(1+t^2))/(z-(1+t))";

pub fn acyclic_example() -> HomogeneousPair<LaurentScalar> {
    parse_map(ACYCLIC_MAP, &LaurentConfig::new(1).unwrap()).expect("fixture parses")
}
