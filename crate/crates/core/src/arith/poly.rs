//! Dense univariate polynomials over an exact field.
//!
//! Coefficients are stored lowest degree first and trailing zeros are always
//! trimmed, so the zero polynomial is the empty vector.

use std::fmt;

use super::field::{ConstField, Field};

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![c.zero_like(); k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    /// `x - a`.
    pub fn linear_root(a: &F) -> Self {
        Poly::new(vec![a.neg(), a.one_like()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0.
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(F::neg).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = vec![z; k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let one = match self.coeffs.first() {
            Some(c) => Poly::constant(c.one_like()),
            None => return if n == 0 { panic!("0^0 on the zero polynomial") } else { Poly::zero() },
        };
        let mut acc = one;
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dl = divisor.lead()?;
        let inv = dl.inv()?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let z = dl.zero_like();
        let mut quo = vec![z; rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = rem[k + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(dc));
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        Some((Poly::new(quo), Poly::new(rem)))
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.inv().expect("nonzero lead");
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        // cheap cases first: constants and pure powers of x
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::constant(self.coeffs[0].one_like());
        }
        if let Some(k) = self.monomial_degree() {
            let o = other.ord0().unwrap();
            return Poly::monomial(self.coeffs[k].one_like(), k.min(o));
        }
        if let Some(k) = other.monomial_degree() {
            let o = self.ord0().unwrap();
            return Poly::monomial(other.coeffs[k].one_like(), k.min(o));
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r.monic();
        }
        a
    }

    /// `Some(k)` when the polynomial is `c x^k`.
    fn monomial_degree(&self) -> Option<usize> {
        let k = self.degree()?;
        self.coeffs[..k].iter().all(F::is_zero).then_some(k)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&c.from_int_like(i as i64))).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &F) -> Self {
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![a.clone(), a.one_like()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// `p(c x)`.
    pub fn scale_var(&self, c: &F) -> Self {
        let mut pw = c.one_like();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&pw));
            pw = pw.mul(c);
        }
        Poly::new(out)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Multiplicity of `f` (nonconstant) as a factor; `usize::MAX` for zero.
    pub fn multiplicity_of(&self, f: &Self) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(f) {
            cur = q;
            k += 1;
        }
        k
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: ConstField> Poly<F> {
    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn x() -> Self {
        Poly::monomial(F::one(), 1)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    /// Prints with variable name `x`; callers substitute names where needed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl<F: Field> Poly<F> {
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let needs_paren = cs.contains(['+', ' ']) || (cs[1..].contains('-'));
            let cs = if needs_paren { format!("({cs})") } else { cs };
            let t = match i {
                0 => cs,
                _ => {
                    let mon = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if c.is_one() {
                        mon
                    } else if c.neg().is_one() {
                        format!("-{mon}")
                    } else {
                        format!("{cs}*{mon}")
                    }
                }
            };
            terms.push(t);
        }
        let mut s = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{q_int, Q};

    fn p(v: &[i64]) -> Poly<Q> {
        Poly::new(v.iter().map(|&x| q_int(x)).collect())
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = p(&[-1, 1]); // x - 1
        let a = f.mul(&p(&[2, 1]));
        let b = f.mul(&p(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), f);
        assert_eq!(p(&[0, 0, 1]).gcd(&p(&[0, 5, 1])), p(&[0, 1]));
        assert_eq!(Poly::<Q>::zero().gcd(&p(&[2, 2])), p(&[1, 1]));
    }

    #[test]
    fn shift_and_compose() {
        let a = p(&[0, 0, 1]);
        assert_eq!(a.taylor_shift(&q_int(1)), p(&[1, 2, 1]));
        assert_eq!(a.compose(&p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(a.scale_var(&q_int(3)), p(&[0, 0, 9]));
    }

    #[test]
    fn multiplicity() {
        let f = p(&[-1, 1]);
        let a = f.pow(3).mul(&p(&[5, 1]));
        assert_eq!(a.multiplicity_of(&f), 3);
    }
}
