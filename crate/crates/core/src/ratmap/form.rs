use crate::arith::{Field, Poly};

/// Binary form of fixed degree, stored dehomogenized: the coefficient of
/// `X^i Y^(d-i)` is `coeffs[i]`.
#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm<F: Field> {
    poly: Poly<F>,
    degree: usize,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(poly: Poly<F>, degree: usize) -> Self {
        assert!(poly.degree().is_none_or(|k| k <= degree), "form exceeds its degree");
        BinaryForm { poly, degree }
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        let degree = coeffs.len() - 1;
        BinaryForm { poly: Poly::new(coeffs), degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Coefficient of `X^i Y^(d-i)`; `None` when it is zero.
    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.poly.coeff(i).filter(|c| !c.is_zero())
    }

    /// Padded coefficient vector of length `d + 1`, given a zero.
    pub fn coeff_vec(&self, zero: &F) -> Vec<F> {
        (0..=self.degree).map(|i| self.poly.coeff(i).cloned().unwrap_or_else(|| zero.clone())).collect()
    }

    /// Multiplicity of the factor `Y` (the point at infinity).
    pub fn y_power(&self) -> usize {
        match self.poly.degree() {
            Some(k) => self.degree - k,
            None => self.degree,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree);
        BinaryForm { poly: self.poly.add(&o.poly), degree: self.degree }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree);
        BinaryForm { poly: self.poly.sub(&o.poly), degree: self.degree }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BinaryForm { poly: self.poly.mul(&o.poly), degree: self.degree + o.degree }
    }

    pub fn scale(&self, c: &F) -> Self {
        BinaryForm { poly: self.poly.scale(c), degree: self.degree }
    }

    /// Exact division of forms.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let degree = self.degree.checked_sub(o.degree)?;
        if self.is_zero() {
            return Some(BinaryForm { poly: Poly::zero(), degree });
        }
        if self.y_power() < o.y_power() {
            return None;
        }
        Some(BinaryForm { poly: self.poly.div_exact(&o.poly)?, degree })
    }

    /// `sum c_i P^i Q^(d-i)` for forms `P`, `Q` of a common degree.
    pub fn compose(&self, p: &Self, q: &Self) -> Self {
        assert_eq!(p.degree, q.degree);
        let d = self.degree;
        let one = BinaryForm { poly: Poly::constant(unit_of(p, q)), degree: 0 };
        let mut ppow = vec![one.clone()];
        let mut qpow = vec![one];
        for k in 0..d {
            ppow.push(ppow[k].mul(p));
            qpow.push(qpow[k].mul(q));
        }
        let mut acc = BinaryForm { poly: Poly::zero(), degree: d * p.degree };
        for i in 0..=d {
            if let Some(c) = self.coeff(i) {
                acc = acc.add(&ppow[i].mul(&qpow[d - i]).scale(c));
            }
        }
        acc
    }

    /// Value at the point `(x : 1)`.
    pub fn eval(&self, x: &F) -> F {
        self.poly.eval(x)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> BinaryForm<G> {
        BinaryForm { poly: self.poly.map(f), degree: self.degree }
    }

    /// Substitutes `X -> a X + b Y`, `Y -> c X + d Y`.
    pub fn substitute(&self, a: &F, b: &F, c: &F, d: &F) -> Self {
        let x = BinaryForm { poly: Poly::new(vec![b.clone(), a.clone()]), degree: 1 };
        let y = BinaryForm { poly: Poly::new(vec![d.clone(), c.clone()]), degree: 1 };
        self.compose(&x, &y)
    }
}

fn unit_of<F: Field>(p: &BinaryForm<F>, q: &BinaryForm<F>) -> F {
    p.poly.lead().or(q.poly.lead()).expect("composition with two zero forms").one_like()
}
