//! Prime fields `F_p`, their extensions `F_p[x]/(f)`, and small-degree
//! factorization over `F_p`.

use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::poly::Poly;

/// Element of `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i128, p: u64) -> Self {
        Fp { v: v.rem_euclid(p as i128) as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixing residue fields of different characteristic");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        Fp { v: ((self.v as u128 + o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Fp { v: ((self.v as u128 + self.p as u128 - o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        Fp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // Fermat
        let mut acc = 1u128;
        let mut b = self.v as u128;
        let m = self.p as u128;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        Some(Fp { v: acc as u64, p: self.p })
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fp::new(n as i128, self.p)
    }
}

/// All elements of `F_p`.
pub fn elements(p: u64) -> impl Iterator<Item = Fp> {
    (0..p).map(move |v| Fp { v, p })
}

/// Element of `F_p[x]/(modulus)` with an irreducible modulus.
#[derive(Clone, PartialEq, Debug)]
pub struct Fq {
    modulus: Arc<Poly<Fp>>,
    rep: Poly<Fp>,
}

impl Fq {
    pub fn new(rep: Poly<Fp>, modulus: Arc<Poly<Fp>>) -> Self {
        let rep = rep.div_rem(&modulus).unwrap().1;
        Fq { modulus, rep }
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(modulus: Arc<Poly<Fp>>) -> Self {
        let one = modulus.lead().unwrap().one_like();
        Fq::new(Poly::monomial(one, 1), modulus)
    }

    pub fn embed(c: Fp, modulus: Arc<Poly<Fp>>) -> Self {
        Fq::new(Poly::constant(c), modulus)
    }

    pub fn rep(&self) -> &Poly<Fp> {
        &self.rep
    }

    pub fn prime(&self) -> u64 {
        self.modulus.lead().unwrap().modulus()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// `self^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.prime() as u32)
    }

    /// Prime-field value, when `self` lies in `F_p`.
    pub fn as_prime(&self) -> Option<Fp> {
        match self.rep.degree() {
            None => Some(self.modulus.lead().unwrap().zero_like()),
            Some(0) => Some(self.rep.coeffs()[0]),
            _ => None,
        }
    }

    /// Minimal polynomial over `F_p` (monic, irreducible).
    pub fn min_poly(&self) -> Poly<Fp> {
        let mut conj = vec![self.clone()];
        loop {
            let next = conj.last().unwrap().frobenius();
            if next == conj[0] {
                break;
            }
            conj.push(next);
        }
        let one = Fq::embed(self.modulus.lead().unwrap().one_like(), self.modulus.clone());
        let mut acc: Poly<Fq> = Poly::constant(one);
        for c in &conj {
            acc = acc.mul(&Poly::linear_root(c));
        }
        acc.map(|c| c.as_prime().expect("conjugate product has prime-field coefficients"))
    }

    /// Every element of the field (`p^m` of them).
    pub fn all(modulus: Arc<Poly<Fp>>) -> Vec<Fq> {
        let p = modulus.lead().unwrap().modulus();
        let m = modulus.degree().unwrap();
        let total = (p as usize).pow(m as u32);
        (0..total)
            .map(|mut k| {
                let mut c = Vec::with_capacity(m);
                for _ in 0..m {
                    c.push(Fp::new((k % p as usize) as i128, p));
                    k /= p as usize;
                }
                Fq::new(Poly::new(c), modulus.clone())
            })
            .collect()
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep.to_string_var("w"))
    }
}

impl Field for Fq {
    fn zero_like(&self) -> Self {
        Fq { modulus: self.modulus.clone(), rep: Poly::zero() }
    }
    fn one_like(&self) -> Self {
        Fq::embed(self.modulus.lead().unwrap().one_like(), self.modulus.clone())
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Fq { modulus: self.modulus.clone(), rep: self.rep.add(&o.rep) }
    }
    fn sub(&self, o: &Self) -> Self {
        Fq { modulus: self.modulus.clone(), rep: self.rep.sub(&o.rep) }
    }
    fn mul(&self, o: &Self) -> Self {
        Fq::new(self.rep.mul(&o.rep), self.modulus.clone())
    }
    fn neg(&self) -> Self {
        Fq { modulus: self.modulus.clone(), rep: self.rep.neg() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // a^(q-2) in a field of order q
        let q = (self.prime() as u128).pow(self.degree() as u32);
        let mut e = q - 2;
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(acc)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fq::embed(Fp::new(n as i128, self.prime()), self.modulus.clone())
    }
}

/// Upper bound on monic trial divisors enumerated per degree.
pub const TRIAL_LIMIT: u64 = 2_000_000;

/// Factors a nonzero polynomial over `F_p` into monic irreducibles with
/// multiplicity. Linear factors come first, sorted by root.
///
/// Returns `None` if trial division would exceed [`TRIAL_LIMIT`].
pub fn factor(f: &Poly<Fp>) -> Option<Vec<(Poly<Fp>, usize)>> {
    assert!(!f.is_zero());
    let p = f.lead().unwrap().modulus();
    let mut g = f.monic();
    let mut out = Vec::new();
    for r in elements(p) {
        let lin = Poly::linear_root(&r);
        let k = g.multiplicity_of(&lin);
        if k > 0 {
            for _ in 0..k {
                g = g.div_exact(&lin).unwrap();
            }
            out.push((lin, k));
        }
    }
    let mut deg = 2;
    while g.degree().unwrap_or(0) >= 2 * deg {
        if (p as u128).pow(deg as u32) > TRIAL_LIMIT as u128 {
            return None;
        }
        for cand in monic_of_degree(p, deg) {
            let k = g.multiplicity_of(&cand);
            if k > 0 {
                for _ in 0..k {
                    g = g.div_exact(&cand).unwrap();
                }
                out.push((cand, k));
            }
        }
        deg += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        // what remains has no factor of degree <= deg/2, so it is irreducible
        out.push((g, 1));
    }
    Some(out)
}

fn monic_of_degree(p: u64, deg: usize) -> impl Iterator<Item = Poly<Fp>> {
    let total = (p as u128).pow(deg as u32) as u64;
    (0..total).map(move |mut k| {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push(Fp::new((k % p) as i128, p));
            k /= p;
        }
        c.push(Fp::new(1, p));
        Poly::new(c)
    })
}

/// Builds `F_p[x]/(f)` for an irreducible `f` and returns every root of `g`
/// in it, by enumeration.
pub fn roots_in_extension(g: &Poly<Fp>, f: &Poly<Fp>) -> (Arc<Poly<Fp>>, Vec<Fq>) {
    let modulus = Arc::new(f.monic());
    let lifted: Poly<Fq> = g.map(|c| Fq::embed(*c, modulus.clone()));
    let roots = Fq::all(modulus.clone()).into_iter().filter(|x| lifted.eval(x).is_zero()).collect();
    (modulus, roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(v: &[i64], p: u64) -> Poly<Fp> {
        Poly::new(v.iter().map(|&x| Fp::new(x as i128, p)).collect())
    }

    #[test]
    fn inverse_and_arith() {
        let a = Fp::new(2, 5);
        assert_eq!(a.mul(&a.inv().unwrap()), a.one_like());
        assert_eq!(Fp::new(-1, 3).value(), 2);
    }

    #[test]
    fn factor_x2_minus_x() {
        // X^2 - X over F_3 -> X, X - 1
        let f = factor(&fp(&[0, -1, 1], 3)).unwrap();
        assert_eq!(f, vec![(fp(&[0, 1], 3), 1), (fp(&[-1, 1], 3), 1)]);
    }

    #[test]
    fn x2_plus_1_irreducible_over_f3_roots_in_f9() {
        let g = fp(&[1, 0, 1], 3);
        let f = factor(&g).unwrap();
        assert_eq!(f, vec![(g.clone(), 1)]);
        let (_, roots) = roots_in_extension(&g, &g);
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.mul(r), r.from_int_like(-1));
            assert_eq!(r.min_poly(), g);
        }
    }

    #[test]
    fn factor_repeated_quadratic() {
        let q = fp(&[1, 0, 1], 3);
        let g = q.mul(&q).mul(&fp(&[1, 1], 3));
        let f = factor(&g).unwrap();
        assert_eq!(f, vec![(fp(&[1, 1], 3), 1), (q, 2)]);
    }
}
