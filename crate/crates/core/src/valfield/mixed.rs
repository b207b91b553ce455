use std::fmt;

use num::{BigInt, Integer};

use super::{check_exponent, FieldDescriptor, ValExp, ValuedField};
use crate::arith::field::{ord_q, q_int};
use crate::arith::{Field, Fp, Poly, Q};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MixedConfig {
    pub p: u64,
    pub e: u32,
}

impl MixedConfig {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Precondition("ramification index must be positive".into()));
        }
        Ok(MixedConfig { p, e })
    }
}

/// Element `sum c_i pi^i` (`0 <= i < e`) of `Q[pi]/(pi^e - p)`.
#[derive(Clone, PartialEq, Debug)]
pub struct MixedScalar {
    cfg: MixedConfig,
    c: Vec<Q>,
}

impl MixedScalar {
    pub fn from_coeffs(cfg: MixedConfig, mut c: Vec<Q>) -> Self {
        c.resize(cfg.e as usize, q_int(0));
        MixedScalar { cfg, c }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    /// The uniformizer `pi`.
    pub fn pi(cfg: MixedConfig) -> Self {
        if cfg.e == 1 {
            return Self::from_q(&cfg, &q_int(cfg.p as i64));
        }
        let mut c = vec![q_int(0); cfg.e as usize];
        c[1] = q_int(1);
        MixedScalar { cfg, c }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.cfg, o.cfg, "mixing scalars of different fields");
    }

    fn e(&self) -> usize {
        self.cfg.e as usize
    }
}

fn mod_p(x: &Q, p: u64) -> Fp {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb);
    let d = x.denom().mod_floor(&pb);
    let to_fp = |b: BigInt| Fp::new(i128::try_from(b).unwrap(), p);
    to_fp(n).div(&to_fp(d)).expect("denominator prime to p")
}

impl Field for MixedScalar {
    fn zero_like(&self) -> Self {
        MixedScalar { cfg: self.cfg, c: vec![q_int(0); self.e()] }
    }
    fn one_like(&self) -> Self {
        Self::from_q(&self.cfg, &q_int(1))
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Field::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        MixedScalar { cfg: self.cfg, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        MixedScalar { cfg: self.cfg, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let e = self.e();
        let p = q_int(self.cfg.p as i64);
        let mut c = vec![q_int(0); e];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                if i + j < e {
                    c[i + j] += t;
                } else {
                    c[i + j - e] += t * &p;
                }
            }
        }
        MixedScalar { cfg: self.cfg, c }
    }
    fn neg(&self) -> Self {
        MixedScalar { cfg: self.cfg, c: self.c.iter().map(|a| -a).collect() }
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let e = self.e();
        if e == 1 {
            return Some(MixedScalar { cfg: self.cfg, c: vec![self.c[0].recip()] });
        }
        // columns: self * pi^j; solve M y = 1
        let pi = Self::pi(self.cfg);
        let mut col = self.clone();
        let mut m = vec![vec![q_int(0); e + 1]; e];
        for j in 0..e {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.c[i].clone();
            }
            col = col.mul(&pi);
        }
        m[0][e] = q_int(1);
        for k in 0..e {
            let piv = (k..e).find(|&r| !m[r][k].is_zero())?;
            m.swap(k, piv);
            let inv = m[k][k].recip();
            for x in m[k].iter_mut() {
                *x *= &inv;
            }
            for r in 0..e {
                if r != k && !m[r][k].is_zero() {
                    let f = m[r][k].clone();
                    for j in k..=e {
                        let d = &m[k][j] * &f;
                        m[r][j] -= d;
                    }
                }
            }
        }
        Some(MixedScalar { cfg: self.cfg, c: m.into_iter().map(|row| row[e].clone()).collect() })
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::from_q(&self.cfg, &q_int(n))
    }
}

impl ValuedField for MixedScalar {
    type Residue = Fp;
    type Config = MixedConfig;

    fn config(&self) -> MixedConfig {
        self.cfg
    }

    fn from_q(cfg: &MixedConfig, q: &Q) -> Self {
        let mut c = vec![q_int(0); cfg.e as usize];
        c[0] = q.clone();
        MixedScalar { cfg: *cfg, c }
    }

    fn valuation(&self) -> ValExp {
        let e = q_int(self.cfg.e as i64);
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| q_int(ord_q(c, self.cfg.p)) + q_int(i as i64) / &e)
            .min()
            .map_or(ValExp::Infinite, ValExp::Finite)
    }

    fn reduce_unit(&self) -> Result<Fp> {
        match self.valuation() {
            ValExp::Finite(v) if v.is_zero() => Ok(mod_p(&self.c[0], self.cfg.p)),
            v => Err(Error::NotAUnit(v.to_string())),
        }
    }

    fn lift(cfg: &MixedConfig, r: &Fp) -> Self {
        Self::from_q(cfg, &q_int(r.value() as i64))
    }

    fn uniformizer_pow(cfg: &MixedConfig, q: &Q) -> Result<Self> {
        check_exponent(q, cfg.e)?;
        let k = (q * q_int(cfg.e as i64)).to_integer();
        let e = BigInt::from(cfg.e);
        let (whole, rest) = k.div_mod_floor(&e);
        let whole = i32::try_from(whole).map_err(|_| Error::OutOfRange(q.to_string()))?;
        let rest = usize::try_from(rest).unwrap();
        let mut c = vec![q_int(0); cfg.e as usize];
        c[rest] = num::pow::Pow::pow(Q::from_integer(cfg.p.into()), whole);
        Ok(MixedScalar { cfg: *cfg, c })
    }

    fn ramification(cfg: &MixedConfig) -> u32 {
        cfg.e
    }

    fn ramify_config(cfg: &MixedConfig, k: u32) -> MixedConfig {
        MixedConfig { p: cfg.p, e: cfg.e * k }
    }

    fn ramify(&self, k: u32) -> Self {
        let cfg = Self::ramify_config(&self.cfg, k);
        let mut c = vec![q_int(0); cfg.e as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[i * k as usize] = x.clone();
        }
        MixedScalar { cfg, c }
    }

    fn parse_atom(cfg: &MixedConfig, name: &str) -> Option<Self> {
        (name == "pi").then(|| Self::pi(*cfg))
    }

    fn descriptor(cfg: &MixedConfig) -> FieldDescriptor {
        FieldDescriptor { backend: "padic", p: Some(cfg.p), e: cfg.e }
    }

    fn residue_int(cfg: &MixedConfig, n: i64) -> Fp {
        Fp::new(n as i128, cfg.p)
    }
}

impl fmt::Display for MixedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Poly::new(self.c.clone()).to_string_var("pi"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q_frac;

    fn cfg(p: u64, e: u32) -> MixedConfig {
        MixedConfig::new(p, e).unwrap()
    }

    #[test]
    fn valuations() {
        let c = cfg(3, 2);
        let x = MixedScalar::from_coeffs(c, vec![q_int(9), q_int(3)]);
        assert_eq!(x.valuation(), ValExp::Finite(q_frac(3, 2)));
        assert_eq!(MixedScalar::pi(c).valuation(), ValExp::Finite(q_frac(1, 2)));
        assert_eq!(MixedScalar::from_q(&c, &q_frac(2, 27)).valuation(), ValExp::Finite(q_int(-3)));
    }

    #[test]
    fn inverse() {
        let c = cfg(5, 3);
        let x = MixedScalar::from_coeffs(c, vec![q_int(1), q_int(2), q_frac(-1, 3)]);
        assert_eq!(x.mul(&x.inv().unwrap()), x.one_like());
    }

    #[test]
    fn uniformizer_powers() {
        let c = cfg(2, 2);
        let u = MixedScalar::uniformizer_pow(&c, &q_frac(-3, 2)).unwrap();
        assert_eq!(u.valuation(), ValExp::Finite(q_frac(-3, 2)));
        assert!(matches!(MixedScalar::uniformizer_pow(&c, &q_frac(1, 3)), Err(Error::EnlargeE(_))));
    }

    #[test]
    fn residues() {
        let c = cfg(7, 1);
        assert_eq!(MixedScalar::from_q(&c, &q_frac(3, 2)).reduce_unit().unwrap(), Fp::new(5, 7));
        assert!(MixedScalar::from_q(&c, &q_int(7)).reduce_unit().is_err());
    }

    #[test]
    fn ramify_preserves_valuation() {
        let c = cfg(3, 2);
        let x = MixedScalar::from_coeffs(c, vec![q_int(2), q_int(3)]);
        let y = x.ramify(3);
        assert_eq!(y.config().e, 6);
        assert_eq!(x.valuation(), y.valuation());
        assert_eq!(x.mul(&x).ramify(3), y.mul(&y));
    }
}
