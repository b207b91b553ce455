//! Fraction field `F(x)` of a univariate polynomial ring.

use std::fmt;

use super::field::{ConstField, Field};
use super::poly::Poly;

/// Reduced fraction `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: ConstField> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: ConstField> RatFunc<F> {
    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    /// Builds and reduces `num / den`; `None` when `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::from_poly(Poly::zero()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        let l = den.lead().unwrap().inv().unwrap();
        Some(RatFunc { num: num.scale(&l), den: den.scale(&l) })
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    /// The value as an element of `F`, when it is constant.
    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_constant() && self.num.is_constant() {
            Some(self.num.coeff(0).cloned().unwrap_or_else(F::zero))
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Order of vanishing at `x = 0` (negative for poles); `None` for zero.
    pub fn ord0(&self) -> Option<i64> {
        Some(self.num.ord0()? as i64 - self.den.ord0().unwrap() as i64)
    }

    /// Ratio of lowest-order coefficients, the value of `x^(-ord) * self` at 0.
    pub fn lowest_ratio(&self) -> Option<F> {
        let a = self.num.coeff(self.num.ord0()?)?;
        let b = self.den.coeff(self.den.ord0().unwrap()).unwrap();
        a.div(b)
    }

    /// Substitutes `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        let up = |p: &Poly<F>| {
            let mut v = vec![F::zero(); p.coeffs().len().saturating_sub(1) * k + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                v[i * k] = c.clone();
            }
            Poly::new(v)
        };
        RatFunc { num: up(&self.num), den: up(&self.den) }
    }

    pub fn eval(&self, x: &F) -> Option<F> {
        self.num.eval(x).div(&self.den.eval(x))
    }
}

impl<F: ConstField> Field for RatFunc<F> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            if self.den.is_constant() {
                return RatFunc { num: self.num.add(&o.num), den: self.den.clone() };
            }
            return Self::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        if self.den.is_constant() {
            return RatFunc { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_constant() {
            return RatFunc { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).unwrap()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFunc { num: self.num.mul(&o.num), den: Poly::one() };
        }
        // cross-cancel to keep the gcds small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let b = o.num.div_exact(&g2).unwrap();
        let c = self.den.div_exact(&g2).unwrap();
        let num = a.mul(&b);
        let den = c.mul(&d);
        let l = den.lead().unwrap().inv().unwrap();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let l = self.num.lead().unwrap().inv().unwrap();
        Some(RatFunc { num: self.den.scale(&l), den: self.num.scale(&l) })
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(F::from_int(n))
    }
}

impl<F: ConstField> ConstField for RatFunc<F> {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: ConstField> RatFunc<F> {
    pub fn to_string_var(&self, var: &str) -> String {
        let n = self.num.to_string_var(var);
        if self.den.is_constant() {
            return n;
        }
        let d = self.den.to_string_var(var);
        let wrap = |s: String, single: bool| if single { s } else { format!("({s})") };
        let n_single = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1 && !n.contains(' ');
        let d_single = !d.contains(' ') && !d.contains('*');
        format!("{}/{}", wrap(n, n_single), wrap(d, d_single))
    }
}

impl<F: ConstField> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("s"))
    }
}
