use std::fmt;

use super::{check_exponent, FieldDescriptor, ValExp, ValuedField};
use crate::arith::field::q_int;
use crate::arith::{ConstField, Field, Poly, Qs, RatFunc, Q};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LaurentConfig {
    pub e: u32,
}

impl LaurentConfig {
    pub fn new(e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::Precondition("ramification index must be positive".into()));
        }
        Ok(LaurentConfig { e })
    }
}

/// Element of `Q(s)(u)` with `u^e = t`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentScalar {
    cfg: LaurentConfig,
    f: RatFunc<Qs>,
}

impl LaurentScalar {
    pub fn new(cfg: LaurentConfig, f: RatFunc<Qs>) -> Self {
        LaurentScalar { cfg, f }
    }

    /// The underlying rational function in `u`.
    pub fn as_ratfunc(&self) -> &RatFunc<Qs> {
        &self.f
    }

    pub fn from_residue(cfg: LaurentConfig, r: Qs) -> Self {
        LaurentScalar { cfg, f: RatFunc::constant(r) }
    }

    /// The uniformizer `u`.
    pub fn uniformizer(cfg: LaurentConfig) -> Self {
        LaurentScalar { cfg, f: RatFunc::var() }
    }

    fn wrap(&self, f: RatFunc<Qs>) -> Self {
        LaurentScalar { cfg: self.cfg, f }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.cfg, o.cfg, "mixing scalars of different fields");
    }
}

impl Field for LaurentScalar {
    fn zero_like(&self) -> Self {
        self.wrap(RatFunc::zero())
    }
    fn one_like(&self) -> Self {
        self.wrap(RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        self.f.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        self.wrap(self.f.add(&o.f))
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        self.wrap(self.f.sub(&o.f))
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        self.wrap(self.f.mul(&o.f))
    }
    fn neg(&self) -> Self {
        self.wrap(self.f.neg())
    }
    fn inv(&self) -> Option<Self> {
        self.f.inv().map(|f| self.wrap(f))
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.wrap(RatFunc::from_int(n))
    }
}

impl ValuedField for LaurentScalar {
    type Residue = Qs;
    type Config = LaurentConfig;

    fn config(&self) -> LaurentConfig {
        self.cfg
    }

    fn from_q(cfg: &LaurentConfig, q: &Q) -> Self {
        LaurentScalar { cfg: *cfg, f: RatFunc::constant(Qs::constant(q.clone())) }
    }

    fn valuation(&self) -> ValExp {
        match self.f.ord0() {
            None => ValExp::Infinite,
            Some(k) => ValExp::Finite(Q::new(k.into(), self.cfg.e.into())),
        }
    }

    fn reduce_unit(&self) -> Result<Qs> {
        match self.f.ord0() {
            Some(0) => Ok(self.f.lowest_ratio().unwrap()),
            _ => Err(Error::NotAUnit(self.valuation().to_string())),
        }
    }

    fn lift(cfg: &LaurentConfig, r: &Qs) -> Self {
        Self::from_residue(*cfg, r.clone())
    }

    fn uniformizer_pow(cfg: &LaurentConfig, q: &Q) -> Result<Self> {
        check_exponent(q, cfg.e)?;
        let k = (q * q_int(cfg.e as i64)).to_integer();
        let k = i64::try_from(k).map_err(|_| Error::OutOfRange(q.to_string()))?;
        let mono = RatFunc::from_poly(Poly::monomial(Qs::one(), k.unsigned_abs() as usize));
        let f = if k >= 0 { mono } else { mono.inv().unwrap() };
        Ok(LaurentScalar { cfg: *cfg, f })
    }

    fn ramification(cfg: &LaurentConfig) -> u32 {
        cfg.e
    }

    fn ramify_config(cfg: &LaurentConfig, k: u32) -> LaurentConfig {
        LaurentConfig { e: cfg.e * k }
    }

    fn ramify(&self, k: u32) -> Self {
        LaurentScalar { cfg: Self::ramify_config(&self.cfg, k), f: self.f.inflate(k as usize) }
    }

    fn parse_atom(cfg: &LaurentConfig, name: &str) -> Option<Self> {
        match name {
            "pi" => Some(Self::uniformizer(*cfg)),
            "t" => Some(LaurentScalar { cfg: *cfg, f: RatFunc::from_poly(Poly::monomial(Qs::one(), cfg.e as usize)) }),
            "s" => Some(Self::from_residue(*cfg, Qs::var())),
            _ => None,
        }
    }

    fn descriptor(cfg: &LaurentConfig) -> FieldDescriptor {
        FieldDescriptor { backend: "laurent", p: None, e: cfg.e }
    }

    fn residue_int(_cfg: &LaurentConfig, n: i64) -> Qs {
        Qs::from_int(n)
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.cfg.e == 1 { "t" } else { "pi" };
        f.write_str(&self.f.to_string_var(var))
    }
}
