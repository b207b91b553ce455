use super::{BinaryForm, HomogeneousPair};
use crate::arith::{Field, Poly};
use crate::error::Result;
use crate::valfield::{ResidueField, ResiduePoint, ValuedField};

/// The divided reduction `(F~/H~ : G~/H~)`.
#[derive(Clone, PartialEq, Debug)]
pub enum Divided<R: Field> {
    Constant(ResiduePoint<R>),
    NonConstant { num: BinaryForm<R>, den: BinaryForm<R> },
}

impl<R: ResidueField> Divided<R> {
    pub fn degree(&self) -> usize {
        match self {
            Divided::Constant(_) => 0,
            Divided::NonConstant { num, .. } => num.degree(),
        }
    }

    pub fn apply(&self, x: &ResiduePoint<R>) -> ResiduePoint<R> {
        match self {
            Divided::Constant(c) => c.clone(),
            Divided::NonConstant { num, den } => {
                let (a, b) = match x {
                    ResiduePoint::Finite(x) => (num.eval(x), den.eval(x)),
                    ResiduePoint::Infinity => {
                        let d = num.degree();
                        (top(num, d), top(den, d))
                    }
                };
                point_of(&a, &b)
            }
        }
    }
}

fn top<R: Field>(f: &BinaryForm<R>, d: usize) -> R {
    // both divided forms are nonzero
    f.poly().coeff(d).cloned().unwrap_or_else(|| f.poly().lead().unwrap().zero_like())
}

/// `(a : b)` as a point of `P^1`.
pub(crate) fn point_of<R: Field>(a: &R, b: &R) -> ResiduePoint<R> {
    match a.div(b) {
        Some(v) => ResiduePoint::Finite(v),
        None => ResiduePoint::Infinity,
    }
}

/// Coefficient reduction of a normalized lift with its hole divisor.
#[derive(Clone, PartialEq, Debug)]
pub struct ReducedMap<R: Field> {
    pub f: BinaryForm<R>,
    pub g: BinaryForm<R>,
    /// `gcd(F~, G~)` with `gcd(0, g) = g`, scaled monic.
    pub hole: BinaryForm<R>,
    pub divided: Divided<R>,
}

impl<R: ResidueField> ReducedMap<R> {
    pub fn degree(&self) -> usize {
        self.f.degree()
    }
}

fn monic_form<R: Field>(f: &BinaryForm<R>) -> BinaryForm<R> {
    BinaryForm::new(f.poly().monic(), f.degree())
}

/// `gcd` of residue forms with the convention `gcd(0, g) = g`.
pub fn form_gcd<R: Field>(f: &BinaryForm<R>, g: &BinaryForm<R>) -> BinaryForm<R> {
    if f.is_zero() {
        return monic_form(g);
    }
    if g.is_zero() {
        return monic_form(f);
    }
    let x: Poly<R> = f.poly().gcd(g.poly());
    let y = f.y_power().min(g.y_power());
    let deg = x.degree().unwrap() + y;
    BinaryForm::new(x, deg)
}

/// Reduces a lift modulo the maximal ideal (after normalizing it).
pub fn reduce_map<K: ValuedField>(m: &HomogeneousPair<K>) -> Result<ReducedMap<K::Residue>> {
    let n = m.normalize();
    let reduce = |form: &BinaryForm<K>| -> Result<BinaryForm<K::Residue>> {
        let zero = n.zero();
        let c: Result<Vec<_>> = form.coeff_vec(&zero).iter().map(|c| c.reduce()).collect();
        Ok(BinaryForm::from_coeffs(c?))
    };
    let f = reduce(n.f())?;
    let g = reduce(n.g())?;
    let hole = form_gcd(&f, &g);
    let df = f.div_exact(&hole).expect("hole divides F~");
    let dg = g.div_exact(&hole).expect("hole divides G~");
    let divided = if df.degree() == 0 {
        let zero = K::residue_int(n.config(), 0);
        let a = df.poly().coeff(0).cloned().unwrap_or(zero.clone());
        let b = dg.poly().coeff(0).cloned().unwrap_or(zero);
        Divided::Constant(point_of(&a, &b))
    } else {
        Divided::NonConstant { num: df, den: dg }
    };
    Ok(ReducedMap { f, g, hole, divided })
}
