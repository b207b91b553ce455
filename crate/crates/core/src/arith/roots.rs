//! Rational roots of polynomials over `Q` and over `Q(s)`.
//!
//! Over `Q`: roots modulo a good prime are Hensel-lifted and recovered by
//! rational reconstruction. Over `Q(s)`: roots of a specialization `s = s0`
//! are Newton-lifted in `Q[[s - s0]]` and recovered by Padé reconstruction.
//! Every candidate is verified by exact substitution before it is returned.

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use super::field::{q_int, Field, Q};
use super::gf::{elements, Fp};
use super::poly::Poly;
use super::ratfunc::RatFunc;

/// The rational function field `Q(s)`.
pub type Qs = RatFunc<Q>;

fn squarefree<F: Field>(f: &Poly<F>) -> Poly<F> {
    let g = f.gcd(&f.derivative());
    f.div_exact(&g).unwrap().monic()
}

/// Integer coefficient vector of a primitive multiple of `f`.
fn to_primitive_integer(f: &Poly<Q>) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn eval_int(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

/// Finds `a/b` with `a = b r (mod m)`, `|a| <= nb`, `0 < b <= db`.
fn rational_reconstruct(r: &BigInt, m: &BigInt, nb: &BigInt, db: &BigInt) -> Option<Q> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > nb {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > db {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Distinct rational roots of a nonzero polynomial over `Q`.
pub fn rational_roots(f: &Poly<Q>) -> Vec<Q> {
    assert!(!f.is_zero());
    let mut roots = Vec::new();
    let mut f = f.clone();
    if f.ord0().unwrap() > 0 {
        roots.push(q_int(0));
        f = Poly::new(f.coeffs()[f.ord0().unwrap()..].to_vec());
    }
    let f = squarefree(&f);
    match f.degree() {
        Some(0) | None => return roots,
        Some(1) => {
            roots.push(-f.coeffs()[0].clone() / f.coeffs()[1].clone());
            return roots;
        }
        _ => {}
    }
    let ints = to_primitive_integer(&f);
    let lead = ints.last().unwrap().clone();
    let cst = ints[0].clone();
    let fp_of = |q: u64| Poly::new(ints.iter().map(|c| Fp::new(c.mod_floor(&BigInt::from(q)).try_into().unwrap(), q)).collect());
    let q = small_primes()
        .find(|&q| {
            if (&lead % BigInt::from(q)).is_zero() {
                return false;
            }
            let g = fp_of(q);
            g.gcd(&g.derivative()).degree() == Some(0)
        })
        .unwrap();
    let gq = fp_of(q);
    let deriv: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let bound = BigInt::from(2) * cst.abs() * lead.abs() + BigInt::one();
    for r in elements(q).filter(|r| gq.eval(r).is_zero()) {
        let mut m = BigInt::from(q);
        let mut x = BigInt::from(r.value());
        while m <= bound {
            m = &m * &m;
            let fx = eval_int(&ints, &x, &m);
            let dfx = eval_int(&deriv, &x, &m);
            let inv = mod_inv(&dfx, &m).expect("simple root mod q");
            x = (&x - fx * inv).mod_floor(&m);
        }
        if let Some(c) = rational_reconstruct(&x, &m, &cst.abs(), &lead.abs()) {
            if Field::is_zero(&f.eval(&c)) && !roots.contains(&c) {
                roots.push(c);
            }
        }
    }
    roots
}

fn series_mul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![q_int(0); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if Field::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(a: &[Q], n: usize) -> Vec<Q> {
    let inv0 = a[0].recip();
    let mut out = vec![q_int(0); n];
    out[0] = inv0.clone();
    for k in 1..n {
        let mut s = q_int(0);
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out[k] = -s * &inv0;
    }
    out
}

fn series_eval(coeffs: &[Vec<Q>], r: &[Q], n: usize) -> Vec<Q> {
    let mut acc = vec![q_int(0); n];
    for c in coeffs.iter().rev() {
        acc = series_mul(&acc, r, n);
        for (i, x) in c.iter().enumerate().take(n) {
            acc[i] += x;
        }
    }
    acc
}

/// Coefficients of `c * f` in `Q[s]` for a suitable nonzero `c`.
fn clear_denominators(f: &Poly<Qs>) -> Vec<Poly<Q>> {
    let mut l: Poly<Q> = Poly::one();
    for c in f.coeffs() {
        let g = l.gcd(c.den());
        l = l.mul(&c.den().div_exact(&g).unwrap());
    }
    f.coeffs().iter().map(|c| c.num().mul(&l.div_exact(c.den()).unwrap())).collect()
}

/// `k`-th derivative in `X` of a polynomial with coefficients in `Q[s]`.
fn x_derivative(polys: &[Poly<Q>], k: usize) -> Vec<Poly<Q>> {
    (k..polys.len())
        .map(|i| {
            let falling: i64 = ((i - k + 1)..=i).map(|m| m as i64).product();
            polys[i].scale(&q_int(falling))
        })
        .collect()
}

fn specialize(polys: &[Poly<Q>], s0: &Q) -> Poly<Q> {
    Poly::new(polys.iter().map(|p| p.eval(s0)).collect())
}

/// Lifts a simple root `r0` of `polys` at `s = s0` to a root in `Q(s)`.
fn lift_root(polys: &[Poly<Q>], r0: &Q, s0: &Q, height: usize) -> Option<Qs> {
    let shifted: Vec<Vec<Q>> = polys.iter().map(|p| p.taylor_shift(s0).into_coeffs()).collect();
    let dshifted: Vec<Vec<Q>> = shifted.iter().enumerate().skip(1).map(|(i, c)| c.iter().map(|x| x * q_int(i as i64)).collect()).collect();
    let prec = 2 * height + 2;
    let mut r = vec![q_int(0); prec];
    r[0] = r0.clone();
    let mut good = 1;
    while good < prec {
        let fr = series_eval(&shifted, &r, prec);
        let dfr = series_eval(&dshifted, &r, prec);
        let step = series_mul(&fr, &series_inv(&dfr, prec), prec);
        for (x, d) in r.iter_mut().zip(step) {
            *x -= d;
        }
        good *= 2;
    }
    pade(&r, height, s0)
}

/// Specializations tried before giving up on completeness.
const SPECIALIZATION_TRIES: usize = 8;

/// Distinct roots in `Q(s)` of a nonzero polynomial over `Q(s)`.
///
/// Each rational root of a specialization `s = s0` is lifted through the
/// derivative of `f` matching its multiplicity. A specialization is accepted
/// once every one of its roots lifts to a root of `f` of the same
/// multiplicity, which rules out collisions.
pub fn qs_roots(f: &Poly<Qs>) -> Vec<Qs> {
    assert!(!f.is_zero());
    let n = match f.degree() {
        Some(0) | None => return Vec::new(),
        Some(1) => return vec![f.coeffs()[0].neg().div(&f.coeffs()[1]).unwrap()],
        Some(n) => n,
    };
    let polys = clear_denominators(f);
    let height = polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let mut out: Vec<Qs> = Vec::new();
    let mut tried = 0;
    for s0 in (0i64..).flat_map(|k| [k, -k - 1]).map(q_int) {
        let g = specialize(&polys, &s0);
        if g.degree() != Some(n) {
            continue;
        }
        let mut complete = true;
        for r0 in rational_roots(&g) {
            let k = g.multiplicity_of(&Poly::linear_root(&r0));
            let dk = x_derivative(&polys, k - 1);
            if Field::is_zero(&specialize(&x_derivative(&polys, k), &s0).eval(&r0)) {
                complete = false;
                continue;
            }
            match lift_root(&dk, &r0, &s0, height) {
                Some(root) if f.multiplicity_of(&Poly::linear_root(&root)) == k => {
                    if !out.contains(&root) {
                        out.push(root);
                    }
                }
                _ => complete = false,
            }
        }
        tried += 1;
        if complete || tried == SPECIALIZATION_TRIES {
            break;
        }
    }
    out
}

/// Rational function `a/b` in `s` with `deg a, deg b <= n` matching the
/// series in `u = s - s0`.
fn pade(series: &[Q], n: usize, s0: &Q) -> Option<Qs> {
    let m = series.len();
    let mut r0: Poly<Q> = Poly::monomial(q_int(1), m);
    let mut r1 = Poly::new(series.to_vec());
    let mut t0: Poly<Q> = Poly::zero();
    let mut t1: Poly<Q> = Poly::one();
    while r1.degree().is_some_and(|d| d > n) {
        let (q, r2) = r0.div_rem(&r1).unwrap();
        let t2 = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.degree().unwrap_or(0) > n || t1.coeff(0).is_none_or(|c| Field::is_zero(c)) {
        return None;
    }
    let back = q_int(0) - s0;
    RatFunc::new(r1.taylor_shift(&back), t1.taylor_shift(&back))
}
