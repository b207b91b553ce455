use super::{BinaryForm, HomogeneousPair};
use crate::arith::{Field, Poly, Q};
use crate::error::{Error, Result};
use crate::valfield::{parse_expr, Expr, ValuedField};

/// Numerator and denominator kept apart, without cancellation.
struct Frac<K: Field> {
    num: Poly<K>,
    den: Poly<K>,
}

fn eval<K: ValuedField>(e: &Expr, cfg: &K::Config) -> Result<Frac<K>> {
    let one = K::from_q(cfg, &Q::from_integer(1.into()));
    let cst = |k: K| Frac { num: Poly::constant(k), den: Poly::constant(one.clone()) };
    Ok(match e {
        Expr::Var => Frac { num: Poly::monomial(one.clone(), 1), den: Poly::constant(one.clone()) },
        Expr::Int(_) | Expr::Name(_) => cst(e.eval_scalar::<K>(cfg)?),
        Expr::Neg(a) => {
            let a = eval::<K>(a, cfg)?;
            Frac { num: a.num.neg(), den: a.den }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (a, mut b) = (eval::<K>(a, cfg)?, eval::<K>(b, cfg)?);
            if matches!(e, Expr::Sub(..)) {
                b.num = b.num.neg();
            }
            if a.den == b.den {
                Frac { num: a.num.add(&b.num), den: a.den }
            } else {
                Frac { num: a.num.mul(&b.den).add(&b.num.mul(&a.den)), den: a.den.mul(&b.den) }
            }
        }
        Expr::Mul(a, b) => {
            let (a, b) = (eval::<K>(a, cfg)?, eval::<K>(b, cfg)?);
            Frac { num: a.num.mul(&b.num), den: a.den.mul(&b.den) }
        }
        Expr::Div(a, b) => {
            let (a, b) = (eval::<K>(a, cfg)?, eval::<K>(b, cfg)?);
            if b.num.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Frac { num: a.num.mul(&b.den), den: a.den.mul(&b.num) }
        }
        Expr::Pow(a, n) => {
            let a = eval::<K>(a, cfg)?;
            Frac { num: a.num.pow(*n), den: a.den.pow(*n) }
        }
    })
}

/// Parses a rational map in `z`, e.g. `-z*(z-10)/(z-4)`.
pub fn parse_map<K: ValuedField>(text: &str, cfg: &K::Config) -> Result<HomogeneousPair<K>> {
    let frac = eval::<K>(&parse_expr(text)?, cfg)?;
    let d = frac.num.degree().unwrap_or(0).max(frac.den.degree().unwrap_or(0));
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    HomogeneousPair::new(BinaryForm::new(frac.num, d), BinaryForm::new(frac.den, d), cfg.clone())
}
