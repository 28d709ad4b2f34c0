//! Rational functions `num/den` kept in lowest terms with a monic denominator.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::field::{Coeff, Field, Rat, Ring};
use super::mpoly::{MPoly, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArithError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes identically under substitution: {0}")]
    VanishingDenominator(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("coefficient not representable in the target field")]
    Unrepresentable,
}

#[derive(Clone, PartialEq, Debug)]
pub struct RatFun<K> {
    num: MPoly<K>,
    den: MPoly<K>,
}

/// Rational functions over exact rationals.
pub type Rf = RatFun<Rat>;

impl<K: Coeff> RatFun<K> {
    pub fn from_poly(p: MPoly<K>) -> Self {
        RatFun {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    /// `v + s`.
    pub fn var_plus(v: Var, s: K) -> Self {
        Self::from_poly(MPoly::var_plus(v, s))
    }

    pub fn u() -> Self {
        Self::var(Var::U)
    }

    /// Builds `num/den` in lowest terms.
    pub fn new(num: MPoly<K>, den: MPoly<K>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly<K>, den: MPoly<K>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (n, d) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::make_monic(n, d)
    }

    fn make_monic(num: MPoly<K>, den: MPoly<K>) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let li = lc.inv().expect("nonzero denominator");
            RatFun {
                num: num.scale(&li),
                den: den.scale(&li),
            }
        }
    }

    pub fn num(&self) -> &MPoly<K> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<K> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<K> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.num.has_var(v) || self.den.has_var(v)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        vs.extend(self.den.vars());
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MPoly<K>) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    /// Explicit normalization; values are always stored reduced, so this is a
    /// consistency re-check that recomputes the gcd.
    pub fn normalize(&self) -> Self {
        Self::reduce(self.num.clone(), self.den.clone())
    }

    /// `Σ a_k b_k`, reducing once per distinct denominator rather than once
    /// per term.
    pub fn sum_products<'a>(pairs: impl IntoIterator<Item = (&'a Self, &'a Self)>) -> Self
    where
        K: 'a,
    {
        let mut buckets: Vec<(MPoly<K>, MPoly<K>)> = Vec::new();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let num = a.num.mul(&b.num);
            let den = if b.den.is_one() { a.den.clone() } else { a.den.mul(&b.den) };
            match buckets.iter_mut().find(|(d, _)| *d == den) {
                Some((_, n)) => *n = n.add(&num),
                None => buckets.push((den, num)),
            }
        }
        buckets
            .into_iter()
            .fold(Self::zero(), |acc, (den, num)| acc.add(&Self::reduce(num, den)))
    }

    /// `f(v) ↦ f(a·v + s)`.
    pub fn affine(&self, v: Var, a: &K, s: &K) -> Self {
        if !self.has_var(v) {
            return self.clone();
        }
        Self::reduce(self.num.affine(v, a, s), self.den.affine(v, a, s))
    }

    pub fn shift(&self, v: Var, s: &K) -> Self {
        self.affine(v, &K::one(), s)
    }

    pub fn deriv(&self, v: Var) -> Self {
        if !self.has_var(v) {
            return Self::zero();
        }
        if self.den.is_constant() {
            return Self::reduce(self.num.deriv(v), self.den.clone());
        }
        let n = self
            .num
            .deriv(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.deriv(v)));
        Self::reduce(n, self.den.mul(&self.den))
    }

    /// Substitutes rational functions for variables simultaneously.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RatFun<K>>) -> Result<Self, ArithError> {
        let n = subst_poly(&self.num, bindings);
        let d = subst_poly(&self.den, bindings);
        if d.is_zero() {
            return Err(ArithError::VanishingDenominator(format!("{}", self.den)));
        }
        n.div(&d).ok_or(ArithError::DivisionByZero)
    }

    pub fn eval(&self, v: Var, x: &K) -> Result<Self, ArithError> {
        let mut b = BTreeMap::new();
        b.insert(v, Self::constant(x.clone()));
        self.substitute(&b)
    }

    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> Option<L>) -> Option<RatFun<L>> {
        let n = self.num.map_coeffs(&f)?;
        let d = self.den.map_coeffs(&f)?;
        if d.is_zero() {
            return None;
        }
        RatFun::new(n, d).ok()
    }

    /// Splits into polynomial coefficients in `v` when the denominator is
    /// free of `v`; `None` otherwise.
    pub fn coeffs_in(&self, v: Var) -> Option<Vec<Self>> {
        if self.den.has_var(v) {
            return None;
        }
        Some(
            self.num
                .coeffs_in(v)
                .into_iter()
                .map(|c| Self::reduce(c, self.den.clone()))
                .collect(),
        )
    }

    pub fn from_coeffs_in(v: Var, cs: &[Self]) -> Self {
        let mut acc = Self::zero();
        let x = Self::var(v);
        for c in cs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    pub fn degree_in(&self, v: Var) -> i64 {
        self.num.degree_in(v) as i64 - self.den.degree_in(v) as i64
    }
}

fn subst_poly<K: Coeff>(p: &MPoly<K>, b: &BTreeMap<Var, RatFun<K>>) -> RatFun<K> {
    let mut acc = RatFun::zero();
    for (m, c) in p.terms() {
        let mut t = RatFun::constant(c.clone());
        let mut rest = crate::arith::mpoly::Mono::one();
        for v in m.vars() {
            let e = m.exp(v);
            match b.get(&v) {
                Some(f) => t = t.mul(&f.pow(e as u32)),
                None => rest = rest.mul(&crate::arith::mpoly::Mono::var(v, e)),
            }
        }
        t = t.mul_poly(&MPoly::monomial(rest, K::one()));
        acc = acc.add(&t);
    }
    acc
}

impl<K: Coeff> Ring for RatFun<K> {
    fn zero() -> Self {
        RatFun {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }
    fn one() -> Self {
        RatFun {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_constant() {
                return RatFun {
                    num: self.num.add(&o.num),
                    den: self.den.clone(),
                };
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_constant() {
            let c = self.den.constant_value().expect("constant");
            let n = self.num.scale(&c.inv().expect("nonzero")).mul(&o.den).add(&o.num);
            return RatFun {
                num: n,
                den: o.den.clone(),
            };
        }
        if o.den.is_constant() {
            return o.add(self);
        }
        let g = self.den.gcd(&o.den);
        if g.is_constant() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Self::make_monic(n, self.den.mul(&o.den));
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let n = self.num.mul(&d2).add(&o.num.mul(&d1));
        if n.is_zero() {
            return Self::zero();
        }
        let h = n.gcd(&g);
        let (n, g) = if h.is_constant() {
            (n, g)
        } else {
            (n.div_exact(&h).expect("divides"), g.div_exact(&h).expect("divides"))
        };
        Self::make_monic(n, d1.mul(&d2).mul(&g))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return Self::make_monic(self.num.mul(&o.num), self.den.mul(&o.den));
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("divides");
        let d2 = o.den.div_exact(&g1).expect("divides");
        let n2 = o.num.div_exact(&g2).expect("divides");
        let d1 = self.den.div_exact(&g2).expect("divides");
        Self::make_monic(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(K::from_i64(v))
    }
}

impl<K: Coeff> Field for RatFun<K> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::make_monic(self.den.clone(), self.num.clone()))
        }
    }
}

impl<K: Coeff> fmt::Display for RatFun<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{rat, Rat};

    fn u() -> Rf {
        Rf::u()
    }
    fn k(v: i64) -> Rf {
        Rf::from_i64(v)
    }

    #[test]
    fn sum_of_simple_fractions() {
        let a = k(1).div(&u().sub(&k(1))).unwrap();
        let b = k(1).div(&u().add(&k(1))).unwrap();
        let expected = u().scale(&rat(2)).div(&u().mul(&u()).sub(&k(1))).unwrap();
        assert_eq!(a.add(&b), expected);
    }

    #[test]
    fn normalization_cancels_common_factor() {
        let n = u().mul(&u()).sub(&k(1));
        let d = u().sub(&k(1));
        let f = RatFun::new(n.num().clone(), d.num().clone()).unwrap();
        assert_eq!(f, u().add(&k(1)));
        assert!(f.is_poly());
    }

    #[test]
    fn bucketed_sum_matches_termwise() {
        let l = Rf::var(Var::lambda(1));
        let a = [k(1).div(&u().sub(&l)).unwrap(), u(), k(2).div(&u().add(&k(1))).unwrap()];
        let b = [u().sub(&l), k(-3).div(&u().sub(&l)).unwrap(), l.clone()];
        let naive = a.iter().zip(&b).fold(Rf::zero(), |s, (x, y)| s.add(&x.mul(y)));
        assert_eq!(RatFun::sum_products(a.iter().zip(&b)), naive);
        assert_eq!(RatFun::sum_products([(&a[0], &b[0]), (&a[0], &b[0].neg())]), Rf::zero());
    }

    #[test]
    fn multiplicative_identity() {
        let x = u().add(&k(3)).div(&u().sub(&Rf::var(Var::lambda(1)))).unwrap();
        assert_eq!(x.mul(&Rf::one()), x);
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert!(k(1).div(&Rf::zero()).is_none());
        assert_eq!(
            RatFun::<Rat>::new(MPoly::one(), MPoly::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn substitution_examples() {
        let l3 = Rf::var(Var::lambda(3));
        let f = l3.div(&u()).unwrap();
        let mut b = BTreeMap::new();
        b.insert(
            Var::lambda(3),
            Rf::var(Var::R).mul(&Rf::var(Var::xi(1))),
        );
        let g = f.substitute(&b).unwrap();
        let expected = Rf::var(Var::R)
            .mul(&Rf::var(Var::xi(1)))
            .div(&u())
            .unwrap();
        assert_eq!(g, expected);
        assert_eq!(f.substitute(&BTreeMap::new()).unwrap(), f);

        let l = Rf::var(Var::lambda(1));
        let h = l.sub(&k(1)).div(&l.add(&k(1))).unwrap();
        assert_eq!(h.eval(Var::lambda(1), &rat(1)).unwrap(), Rf::zero());
        assert!(matches!(
            k(1).div(&l.add(&k(1))).unwrap().eval(Var::lambda(1), &rat(-1)),
            Err(ArithError::VanishingDenominator(_))
        ));
    }

    #[test]
    fn derivative_quotient_rule() {
        let f = k(1).div(&u()).unwrap();
        let expected = k(-1).div(&u().mul(&u())).unwrap();
        assert_eq!(f.deriv(Var::U), expected);
    }
}
