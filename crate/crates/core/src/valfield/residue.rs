use std::fmt;
use std::sync::Arc;

use crate::arith::gf::{self, Fp, Fq};
use crate::arith::roots::{qs_roots, Qs};
use crate::arith::{Field, Poly};
use crate::error::{Error, Result};

/// Residue fields we can factor over.
pub trait ResidueField: Field {
    /// Monic irreducible factors with multiplicity; linear factors first.
    fn factor(f: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>>;

    /// Image of the closed point cut out by the irreducible `f` (degree >= 2)
    /// under `num/den`: the minimal polynomial of the image, or `None` for
    /// the point at infinity.
    fn image_of_closed(f: &Poly<Self>, num: &Poly<Self>, den: &Poly<Self>) -> Result<Option<Poly<Self>>>;

    /// Whether a Möbius map with `trace^2 / det = tau` certainly has
    /// infinite order. Never true over a finite field.
    fn certifies_infinite_order(tau: &Self) -> bool;
}

impl ResidueField for Fp {
    fn factor(f: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>> {
        gf::factor(f).ok_or(Error::FactorizationBudget)
    }

    fn image_of_closed(f: &Poly<Self>, num: &Poly<Self>, den: &Poly<Self>) -> Result<Option<Poly<Self>>> {
        let modulus = Arc::new(f.monic());
        let alpha = Fq::generator(modulus.clone());
        let lift = |p: &Poly<Fp>| p.map(|c| Fq::embed(*c, modulus.clone())).eval(&alpha);
        let d = lift(den);
        if d.is_zero() {
            return Ok(None);
        }
        let beta = lift(num).div(&d).unwrap();
        Ok(Some(beta.min_poly()))
    }

    fn certifies_infinite_order(_tau: &Self) -> bool {
        false
    }
}

impl ResidueField for Qs {
    fn factor(f: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>> {
        let mut rest = f.monic();
        let mut out = Vec::new();
        for r in qs_roots(f) {
            let lin = Poly::linear_root(&r);
            let k = rest.multiplicity_of(&lin);
            for _ in 0..k {
                rest = rest.div_exact(&lin).unwrap();
            }
            out.push((lin, k));
        }
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::IrrationalDirection(rest.to_string_var("X")));
        }
        Ok(out)
    }

    fn image_of_closed(f: &Poly<Self>, _num: &Poly<Self>, _den: &Poly<Self>) -> Result<Option<Poly<Self>>> {
        Err(Error::IrrationalDirection(f.to_string_var("X")))
    }

    // Finite order n forces tau = 2 + 2cos(2 pi k/n), which lies in Q(s)
    // only for tau in {0, 1, 2, 3, 4}; tau = 4 is the identity or parabolic.
    fn certifies_infinite_order(tau: &Self) -> bool {
        match tau.as_constant() {
            None => true,
            Some(c) => !(0..=3).any(|k| c == crate::arith::field::q_int(k)),
        }
    }
}

/// A point of `P^1` over the residue field.
#[derive(Clone, PartialEq, Debug)]
pub enum ResiduePoint<R> {
    Finite(R),
    Infinity,
}

impl<R: fmt::Display> fmt::Display for ResiduePoint<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResiduePoint::Finite(r) => write!(f, "{r}"),
            ResiduePoint::Infinity => f.write_str("inf"),
        }
    }
}

/// A closed point of `P^1` over the residue field: a rational point or a
/// Galois orbit cut out by a monic irreducible of degree at least 2.
#[derive(Clone, PartialEq, Debug)]
pub enum ClosedPoint<R: Field> {
    Rational(ResiduePoint<R>),
    Orbit(Poly<R>),
}

impl<R: ResidueField> ClosedPoint<R> {
    /// Number of geometric points in the orbit.
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Rational(_) => 1,
            ClosedPoint::Orbit(f) => f.degree().unwrap(),
        }
    }

    /// Closed point of a monic irreducible factor.
    pub fn from_factor(f: Poly<R>) -> Self {
        if f.degree() == Some(1) {
            let c = f.coeffs();
            ClosedPoint::Rational(ResiduePoint::Finite(c[0].neg().div(&c[1]).unwrap()))
        } else {
            ClosedPoint::Orbit(f)
        }
    }

    pub fn as_rational(&self) -> Option<&ResiduePoint<R>> {
        match self {
            ClosedPoint::Rational(r) => Some(r),
            ClosedPoint::Orbit(_) => None,
        }
    }

    /// Translates affine coordinates by `delta` (`X -> X + delta`).
    pub fn translate(&self, delta: &R) -> Self {
        match self {
            ClosedPoint::Rational(ResiduePoint::Finite(r)) => ClosedPoint::Rational(ResiduePoint::Finite(r.add(delta))),
            ClosedPoint::Rational(ResiduePoint::Infinity) => self.clone(),
            ClosedPoint::Orbit(f) => ClosedPoint::Orbit(f.taylor_shift(&delta.neg())),
        }
    }
}

impl<R: ResidueField> fmt::Display for ClosedPoint<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Rational(r) => write!(f, "{r}"),
            ClosedPoint::Orbit(p) => write!(f, "{{{}}}", p.to_string_var("X")),
        }
    }
}

/// Factors a nonzero binary form `sum c_i X^i Y^(d-i)` into closed points of
/// `P^1` with multiplicity. The factor `Y` is the point at infinity.
pub fn factor_binary<R: ResidueField>(coeffs: &[R]) -> Result<Vec<(ClosedPoint<R>, usize)>> {
    let f = Poly::new(coeffs.to_vec());
    let deg = f.degree().ok_or_else(|| Error::Precondition("cannot factor the zero form".into()))?;
    let mut out: Vec<(ClosedPoint<R>, usize)> = Vec::new();
    if deg > 0 {
        out = R::factor(&f)?.into_iter().map(|(g, k)| (ClosedPoint::from_factor(g), k)).collect();
    }
    let at_inf = coeffs.len() - 1 - deg;
    if at_inf > 0 {
        out.push((ClosedPoint::Rational(ResiduePoint::Infinity), at_inf));
    }
    Ok(out)
}
