//! Rational maps as pairs of binary forms.

use std::fmt;

use crate::arith::field::q_int;
use crate::arith::{Field, Q};
use crate::error::{Error, Result};
use crate::valfield::{ValExp, ValuedField};

mod form;
mod mobius;
mod parse;
mod reduce;

pub use form::BinaryForm;
pub use mobius::{Mobius, ProjPoint};
pub use parse::parse_map;
pub use reduce::{reduce_map, Divided, ReducedMap};

/// Default cap on the degree of an iterate.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// A lift `(F, G)` of a rational map of degree `d >= 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct HomogeneousPair<K: ValuedField> {
    f: BinaryForm<K>,
    g: BinaryForm<K>,
    cfg: K::Config,
}

impl<K: ValuedField> HomogeneousPair<K> {
    /// Builds a pair and checks that it defines a map of degree `d`.
    pub fn new(f: BinaryForm<K>, g: BinaryForm<K>, cfg: K::Config) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::Precondition(format!("form degrees {} and {} differ", f.degree(), g.degree())));
        }
        if f.degree() == 0 {
            return Err(Error::DegreeZero);
        }
        let m = HomogeneousPair { f, g, cfg };
        if m.resultant().is_zero() {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    /// Builds from coefficient vectors (index `i` is the coefficient of
    /// `X^i Y^(d-i)`).
    pub fn from_coeffs(f: Vec<K>, g: Vec<K>, cfg: K::Config) -> Result<Self> {
        if f.is_empty() || g.is_empty() {
            return Err(Error::DegreeZero);
        }
        Self::new(BinaryForm::from_coeffs(f), BinaryForm::from_coeffs(g), cfg)
    }

    fn unchecked(f: BinaryForm<K>, g: BinaryForm<K>, cfg: K::Config) -> Self {
        HomogeneousPair { f, g, cfg }
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn f(&self) -> &BinaryForm<K> {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm<K> {
        &self.g
    }

    pub fn config(&self) -> &K::Config {
        &self.cfg
    }

    pub fn zero(&self) -> K {
        K::from_q(&self.cfg, &q_int(0))
    }

    pub fn one(&self) -> K {
        K::from_q(&self.cfg, &q_int(1))
    }

    /// All `2(d + 1)` coefficients, `F` first.
    pub fn coeffs(&self) -> Vec<K> {
        let z = self.zero();
        let mut v = self.f.coeff_vec(&z);
        v.extend(self.g.coeff_vec(&z));
        v
    }

    /// Smallest coefficient valuation.
    pub fn min_valuation(&self) -> Q {
        self.coeffs().iter().map(|c| c.valuation()).min().and_then(|v| v.finite().cloned()).expect("a map has a nonzero coefficient")
    }

    /// Rescales so the smallest coefficient valuation is exactly 0.
    pub fn normalize(&self) -> Self {
        let m = self.min_valuation();
        if m == q_int(0) {
            return self.clone();
        }
        let c = K::uniformizer_pow(&self.cfg, &-m).expect("coefficient valuations lie in the value group");
        Self::unchecked(self.f.scale(&c), self.g.scale(&c), self.cfg.clone())
    }

    /// Homogeneous resultant, the determinant of the `2d x 2d` Sylvester
    /// matrix, by fraction-free elimination.
    pub fn resultant(&self) -> K {
        let d = self.degree();
        let n = 2 * d;
        let z = self.zero();
        let fc = self.f.coeff_vec(&z);
        let gc = self.g.coeff_vec(&z);
        let mut m = vec![vec![z.clone(); n]; n];
        for k in 0..d {
            for i in 0..=d {
                m[k][k + i] = fc[d - i].clone();
                m[d + k][k + i] = gc[d - i].clone();
            }
        }
        bareiss_det(m, self.one())
    }

    /// `v(Res)` of the normalized lift.
    pub fn ord_res(&self) -> Q {
        match self.normalize().resultant().valuation() {
            ValExp::Finite(q) => q,
            ValExp::Infinite => unreachable!("nonzero resultant"),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let f = self.f.compose(&inner.f, &inner.g);
        let g = self.g.compose(&inner.f, &inner.g);
        Self::unchecked(f, g, self.cfg.clone())
    }

    /// A lift of `g^-1 ∘ self ∘ g`.
    pub fn conjugate(&self, m: &Mobius<K>) -> Self {
        self.bi_conjugate(m, m)
    }

    /// A lift of `target^-1 ∘ self ∘ source`.
    pub fn bi_conjugate(&self, source: &Mobius<K>, target: &Mobius<K>) -> Self {
        let s = source;
        let f = self.f.substitute(&s.a, &s.b, &s.c, &s.d);
        let g = self.g.substitute(&s.a, &s.b, &s.c, &s.d);
        let inv = target.adjugate();
        let nf = f.scale(&inv.a).add(&g.scale(&inv.b));
        let ng = f.scale(&inv.c).add(&g.scale(&inv.d));
        Self::unchecked(nf, ng, self.cfg.clone())
    }

    /// Normalized lift of the `j`-th iterate.
    pub fn iterate(&self, j: usize, cap: usize) -> Result<Self> {
        if j == 0 {
            return Err(Error::Precondition("iterate index must be at least 1".into()));
        }
        let degree = (self.degree() as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
        if degree > cap as u128 {
            return Err(Error::DegreeCap { degree: degree.min(usize::MAX as u128) as usize, cap });
        }
        let base = self.normalize();
        let mut acc = base.clone();
        for _ in 1..j {
            acc = base.compose(&acc).normalize();
        }
        Ok(acc)
    }

    /// Image of a point of `P^1(K)`.
    pub fn apply(&self, w: &ProjPoint<K>) -> ProjPoint<K> {
        let (a, b) = match w {
            ProjPoint::Finite(x) => (self.f.eval(x), self.g.eval(x)),
            ProjPoint::Infinity => {
                let d = self.degree();
                let z = self.zero();
                (self.f.poly().coeff(d).cloned().unwrap_or(z.clone()), self.g.poly().coeff(d).cloned().unwrap_or(z))
            }
        };
        match a.div(&b) {
            Some(v) => ProjPoint::Finite(v),
            None => ProjPoint::Infinity,
        }
    }

    /// Whether both pairs define the same map.
    pub fn projectively_equal(&self, o: &Self) -> bool {
        if self.degree() != o.degree() || self.cfg != o.cfg {
            return false;
        }
        let (a, b) = (self.coeffs(), o.coeffs());
        let Some(i) = a.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let Some(lambda) = b[i].div(&a[i]) else {
            return false;
        };
        a.iter().zip(&b).all(|(x, y)| x.mul(&lambda) == *y)
    }

    /// Map with every coefficient embedded into a more ramified field.
    pub fn ramify(&self, k: u32) -> Self {
        Self::unchecked(self.f.map(|c| c.ramify(k)), self.g.map(|c| c.ramify(k)), K::ramify_config(&self.cfg, k))
    }
}

fn bareiss_det<K: Field>(mut m: Vec<Vec<K>>, one: K) -> K {
    let n = m.len();
    let mut prev = one;
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return prev.zero_like(),
            }
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div(&prev).expect("Bareiss pivot is nonzero");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

impl<K: ValuedField> fmt::Display for HomogeneousPair<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.poly().to_string_var("z");
        let den = self.g.poly().to_string_var("z");
        write!(f, "({num})/({den})")
    }
}
