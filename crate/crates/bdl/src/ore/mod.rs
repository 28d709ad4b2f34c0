//! Ore operators in the spectral variable `u`: shift τ, forward difference
//! d = τ − 1, derivative ∂ and Euler derivative u∂, with coefficients on the
//! left.

pub mod identities;
pub mod pencil;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::arith::{Coeff, Field, Mat, RatFun, Ring, Var};

pub use pencil::{OperatorPencil, PencilBasis};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OreKind {
    /// τ·f(u) = f(u+1)·τ
    Shift,
    /// d = τ − 1
    Diff,
    /// ∂·f = f·∂ + f′
    Deriv,
    /// (u∂)·f = f·(u∂) + u·f′
    Euler,
}

impl fmt::Display for OreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OreKind::Shift => "tau",
            OreKind::Diff => "d",
            OreKind::Deriv => "D",
            OreKind::Euler => "uD",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OreError {
    #[error("operator kinds differ: {0} vs {1}")]
    KindMismatch(OreKind, OreKind),
    #[error("operator is not in the pencil: {0}")]
    NotInPencil(String),
    #[error("pencil basis mismatch: {0}")]
    BasisMismatch(String),
}

/// Coefficients an Ore operator can carry: scalar rational functions or
/// matrices of them. Only the dependence on `u` matters to the operator
/// algebra; other symbols are inert parameters.
pub trait OreCoeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    type K: Coeff;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn vanishes(&self) -> bool;
    /// Multiplication by a scalar function.
    fn scale_fun(&self, f: &RatFun<Self::K>) -> Self;
    /// `c(u) ↦ c(a·u + s)`.
    fn affine_u(&self, a: &Self::K, s: &Self::K) -> Self;
    fn deriv_u(&self) -> Self;
    /// Coefficients of the powers of `u` if polynomial in `u`.
    fn u_coeffs(&self) -> Option<Vec<Self>>;
    /// Same-shaped zero.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl<K: Coeff> OreCoeff for RatFun<K> {
    type K = K;
    fn plus(&self, o: &Self) -> Self {
        Ring::add(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        Ring::sub(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        Ring::mul(self, o)
    }
    fn negated(&self) -> Self {
        Ring::neg(self)
    }
    fn vanishes(&self) -> bool {
        Ring::is_zero(self)
    }
    fn scale_fun(&self, f: &RatFun<K>) -> Self {
        Ring::mul(self, f)
    }
    fn affine_u(&self, a: &K, s: &K) -> Self {
        self.affine(Var::U, a, s)
    }
    fn deriv_u(&self) -> Self {
        self.deriv(Var::U)
    }
    fn u_coeffs(&self) -> Option<Vec<Self>> {
        self.coeffs_in(Var::U)
    }
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
}

impl<K: Coeff> OreCoeff for Mat<RatFun<K>> {
    type K = K;
    fn plus(&self, o: &Self) -> Self {
        Mat::add(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        Mat::sub(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        Mat::mul(self, o)
    }
    fn negated(&self) -> Self {
        Mat::neg(self)
    }
    fn vanishes(&self) -> bool {
        Mat::is_zero(self)
    }
    fn scale_fun(&self, f: &RatFun<K>) -> Self {
        self.map(|x| x.mul(f))
    }
    fn affine_u(&self, a: &K, s: &K) -> Self {
        self.map(|x| x.affine(Var::U, a, s))
    }
    fn deriv_u(&self) -> Self {
        self.map(|x| x.deriv(Var::U))
    }
    fn u_coeffs(&self) -> Option<Vec<Self>> {
        let per: Vec<Vec<RatFun<K>>> = self
            .entries()
            .iter()
            .map(|x| x.coeffs_in(Var::U))
            .collect::<Option<_>>()?;
        let deg = per.iter().map(|c| c.len()).max().unwrap_or(1);
        Some(
            (0..deg)
                .map(|k| {
                    Mat::from_fn(self.rows(), self.cols(), |i, j| {
                        per[i * self.cols() + j]
                            .get(k)
                            .cloned()
                            .unwrap_or_else(RatFun::zero)
                    })
                })
                .collect(),
        )
    }
    fn zero_like(&self) -> Self {
        Mat::zeros(self.rows(), self.cols())
    }
    fn one_like(&self) -> Self {
        Mat::identity(self.rows())
    }
}

/// Finite sum `Σ c_i(u)·g^i`.
#[derive(Clone, PartialEq, Debug)]
pub struct OreOp<T> {
    kind: OreKind,
    terms: BTreeMap<u32, T>,
}

pub type ScalarOp<K> = OreOp<RatFun<K>>;

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

/// Stirling numbers of the second kind `S(n, k)`.
pub fn stirling2(n: u32, k: u32) -> i64 {
    let mut t = vec![vec![0i64; n as usize + 1]; n as usize + 1];
    t[0][0] = 1;
    for i in 1..=n as usize {
        for j in 1..=i {
            t[i][j] = j as i64 * t[i - 1][j] + t[i - 1][j - 1];
        }
    }
    if k > n {
        0
    } else {
        t[n as usize][k as usize]
    }
}

/// Signed Stirling numbers of the first kind `s(n, k)`:
/// `x^{falling n} = Σ_k s(n,k) x^k`.
pub fn stirling1(n: u32, k: u32) -> i64 {
    let mut t = vec![vec![0i64; n as usize + 1]; n as usize + 1];
    t[0][0] = 1;
    for i in 1..=n as usize {
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] - (i as i64 - 1) * t[i - 1][j];
        }
    }
    if k > n {
        0
    } else {
        t[n as usize][k as usize]
    }
}

/// `(x)(x−1)…(x−k+1)` for a scalar function `x`.
pub fn falling<K: Coeff>(x: &RatFun<K>, k: u32) -> RatFun<K> {
    let mut acc = RatFun::one();
    for t in 0..k {
        acc = acc.mul(&x.sub(&RatFun::from_i64(t as i64)));
    }
    acc
}

/// `(x)(x+1)…(x+k−1)` for a scalar function `x`.
pub fn rising<K: Coeff>(x: &RatFun<K>, k: u32) -> RatFun<K> {
    let mut acc = RatFun::one();
    for t in 0..k {
        acc = acc.mul(&x.add(&RatFun::from_i64(t as i64)));
    }
    acc
}

/// `u + s` as a scalar function.
pub fn u_plus<K: Coeff>(s: i64) -> RatFun<K> {
    RatFun::var_plus(Var::U, K::from_i64(s))
}

impl<T: OreCoeff> OreOp<T> {
    pub fn zero(kind: OreKind) -> Self {
        OreOp {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(kind: OreKind, c: T, power: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.vanishes() {
            terms.insert(power, c);
        }
        OreOp { kind, terms }
    }

    pub fn from_terms(kind: OreKind, terms: impl IntoIterator<Item = (u32, T)>) -> Self {
        let mut out = Self::zero(kind);
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn kind(&self) -> OreKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<u32, T> {
        &self.terms
    }

    pub fn coeff(&self, p: u32) -> Option<&T> {
        self.terms.get(&p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, p: u32, c: T) {
        if c.vanishes() {
            return;
        }
        match self.terms.remove(&p) {
            None => {
                self.terms.insert(p, c);
            }
            Some(old) => {
                let s = old.plus(&c);
                if !s.vanishes() {
                    self.terms.insert(p, s);
                }
            }
        }
    }

    fn check_kind(&self, o: &Self) -> Result<(), OreError> {
        if self.kind != o.kind {
            Err(OreError::KindMismatch(self.kind, o.kind))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, OreError> {
        self.check_kind(o)?;
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(*p, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, OreError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        OreOp {
            kind: self.kind,
            terms: self.terms.iter().map(|(p, c)| (*p, c.negated())).collect(),
        }
    }

    /// `c·self` for a coefficient `c` (left multiplication).
    pub fn lmul_coeff(&self, c: &T) -> Self {
        Self::from_terms(self.kind, self.terms.iter().map(|(p, a)| (*p, c.times(a))))
    }

    /// `f(u)·self` for a scalar function.
    pub fn lmul_fun(&self, f: &RatFun<T::K>) -> Self {
        Self::from_terms(self.kind, self.terms.iter().map(|(p, a)| (*p, a.scale_fun(f))))
    }

    /// Applies `c ↦ f(c)` to every coefficient (e.g. conjugation by τ^n is
    /// the shift `u ↦ u+n` of coefficients).
    pub fn map_coeffs(&self, f: impl Fn(&T) -> T) -> Self {
        Self::from_terms(self.kind, self.terms.iter().map(|(p, a)| (*p, f(a))))
    }

    /// Rewrites `g^i·b` as `Σ_l c_l·g^l`.
    fn commute(kind: OreKind, i: u32, b: &T) -> Vec<(u32, T)> {
        let one = <T::K as Ring>::one();
        match kind {
            OreKind::Shift => vec![(i, b.affine_u(&one, &T::K::from_i64(i as i64)))],
            OreKind::Diff | OreKind::Deriv | OreKind::Euler => {
                // D^k b for k = 0..=i, where D is Δ, ∂ or u∂.
                let mut ders = Vec::with_capacity(i as usize + 1);
                ders.push(b.clone());
                for k in 1..=i as usize {
                    let prev: &T = &ders[k - 1];
                    let next = match kind {
                        OreKind::Diff => prev.affine_u(&one, &one).minus(prev),
                        OreKind::Deriv => prev.deriv_u(),
                        _ => prev.deriv_u().scale_fun(&RatFun::u()),
                    };
                    ders.push(next);
                }
                (0..=i)
                    .filter_map(|l| {
                        let base = &ders[(i - l) as usize];
                        if base.vanishes() {
                            return None;
                        }
                        let shifted = if kind == OreKind::Diff && l > 0 {
                            base.affine_u(&one, &T::K::from_i64(l as i64))
                        } else {
                            base.clone()
                        };
                        let c = binomial(i, l);
                        Some((l, shifted.scale_fun(&RatFun::from_i64(c))))
                    })
                    .collect()
            }
        }
    }

    /// Normal-form product.
    pub fn mul(&self, o: &Self) -> Result<Self, OreError> {
        self.check_kind(o)?;
        let mut out = Self::zero(self.kind);
        for (j, b) in &o.terms {
            let mut cache: BTreeMap<u32, Vec<(u32, T)>> = BTreeMap::new();
            for (i, a) in &self.terms {
                let moved = cache
                    .entry(*i)
                    .or_insert_with(|| Self::commute(self.kind, *i, b));
                for (l, c) in moved.iter() {
                    out.add_term(l + j, a.times(c));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32, one: &T) -> Self {
        let mut acc = Self::monomial(self.kind, one.clone(), 0);
        for _ in 0..e {
            acc = acc.mul(self).expect("same kind");
        }
        acc
    }

    /// Re-expresses the operator in another generator where the conversion is
    /// polynomial: τ ↔ d, and u∂ ↔ ∂.
    pub fn to_kind(&self, kind: OreKind) -> Result<Self, OreError> {
        use OreKind::*;
        if kind == self.kind {
            return Ok(self.clone());
        }
        let mut out = Self::zero(kind);
        match (self.kind, kind) {
            (Diff, Shift) => {
                for (k, a) in &self.terms {
                    for i in 0..=*k {
                        let c = binomial(*k, i) * if (k - i) % 2 == 0 { 1 } else { -1 };
                        out.add_term(i, a.scale_fun(&RatFun::from_i64(c)));
                    }
                }
            }
            (Shift, Diff) => {
                for (k, a) in &self.terms {
                    for i in 0..=*k {
                        out.add_term(i, a.scale_fun(&RatFun::from_i64(binomial(*k, i))));
                    }
                }
            }
            (Euler, Deriv) => {
                for (k, a) in &self.terms {
                    for j in 0..=*k {
                        let s = stirling2(*k, j);
                        if s != 0 {
                            let f = RatFun::u().pow(j).scale(&T::K::from_i64(s));
                            out.add_term(j, a.scale_fun(&f));
                        }
                    }
                }
            }
            (Deriv, Euler) => {
                for (j, a) in &self.terms {
                    let uinv = RatFun::u().pow(*j).inv().expect("u^j is nonzero");
                    for i in 0..=*j {
                        let s = stirling1(*j, i);
                        if s != 0 {
                            out.add_term(i, a.scale_fun(&uinv.scale(&T::K::from_i64(s))));
                        }
                    }
                }
            }
            (a, b) => return Err(OreError::KindMismatch(a, b)),
        }
        Ok(out)
    }
}

impl<K: Coeff> OreOp<RatFun<K>> {
    /// The generator itself.
    pub fn gen(kind: OreKind) -> Self {
        Self::monomial(kind, RatFun::one(), 1)
    }

    pub fn scalar(kind: OreKind, f: RatFun<K>) -> Self {
        Self::monomial(kind, f, 0)
    }

    /// `f(u)·g`.
    pub fn fun_gen(kind: OreKind, f: RatFun<K>) -> Self {
        Self::monomial(kind, f, 1)
    }

    /// Action on a scalar function.
    pub fn apply(&self, f: &RatFun<K>) -> RatFun<K> {
        let one = K::one();
        let mut acc = RatFun::zero();
        let top = self.degree().unwrap_or(0);
        let mut g = f.clone();
        for p in 0..=top {
            if let Some(c) = self.terms.get(&p) {
                acc = acc.add(&c.mul(&g));
            }
            g = match self.kind {
                OreKind::Shift => g.affine(Var::U, &one, &one),
                OreKind::Diff => g.affine(Var::U, &one, &one).sub(&g),
                OreKind::Deriv => g.deriv(Var::U),
                OreKind::Euler => g.deriv(Var::U).mul(&RatFun::u()),
            };
        }
        acc
    }

    /// Lifts scalar coefficients to `c·I_n`.
    pub fn to_matrix(&self, n: usize) -> OreOp<Mat<RatFun<K>>> {
        OreOp::from_terms(
            self.kind,
            self.terms.iter().map(|(p, c)| (*p, Mat::scalar(n, c))),
        )
    }
}

/// The map `Σ b_i(u)τ^i ↦ Σ τ^i·b_i(−u+l−1)`, returned in left normal form and
/// in the kind of the input (τ or d).
pub fn delta_hat<T: OreCoeff>(x: &OreOp<T>, l: i64) -> Result<OreOp<T>, OreError> {
    let kind = x.kind();
    let t = x.to_kind(OreKind::Shift)?;
    let minus = T::K::from_i64(-1);
    let out = OreOp::from_terms(
        OreKind::Shift,
        t.terms()
            .iter()
            .map(|(i, b)| (*i, b.affine_u(&minus, &T::K::from_i64(l - 1 - *i as i64)))),
    );
    out.to_kind(kind)
}

impl<T: OreCoeff + fmt::Display> fmt::Display for OreOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| match p {
                0 => format!("({c})"),
                1 => format!("({c})*{}", self.kind),
                _ => format!("({c})*{}^{p}", self.kind),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rat, Rf};

    type Op = ScalarOp<Rat>;

    fn u() -> Rf {
        Rf::u()
    }

    #[test]
    fn shift_times_u() {
        let t = Op::gen(OreKind::Shift);
        let p = t.mul(&Op::scalar(OreKind::Shift, u())).unwrap();
        assert_eq!(p, Op::fun_gen(OreKind::Shift, u_plus(1)));
    }

    #[test]
    fn difference_times_u() {
        let d = Op::gen(OreKind::Diff);
        let p = d.mul(&Op::scalar(OreKind::Diff, u())).unwrap();
        let expected = Op::from_terms(OreKind::Diff, [(1, u_plus(1)), (0, Rf::one())]);
        assert_eq!(p, expected);
        for f in [Rf::one(), u(), u().mul(&u())] {
            let lhs = p.apply(&f);
            let rhs = d.apply(&u().mul(&f));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn euler_times_u() {
        let th = Op::gen(OreKind::Euler);
        let p = th.mul(&Op::scalar(OreKind::Euler, u())).unwrap();
        let expected = Op::from_terms(OreKind::Euler, [(1, u()), (0, u())]);
        assert_eq!(p, expected);
    }

    #[test]
    fn apply_examples() {
        let t = Op::gen(OreKind::Shift);
        assert_eq!(t.apply(&u().mul(&u())), u_plus::<Rat>(1).pow(2));
        let dd = Op::gen(OreKind::Deriv);
        assert_eq!(dd.apply(&u().pow(3)), u().pow(2).scale(&rat(3)));
    }

    #[test]
    fn kind_conversions_roundtrip() {
        let x = Op::from_terms(
            OreKind::Diff,
            [(0, u()), (2, u().add(&Rf::from_i64(3))), (3, Rf::from_i64(-2))],
        );
        assert_eq!(x.to_kind(OreKind::Shift).unwrap().to_kind(OreKind::Diff).unwrap(), x);
        let y = Op::from_terms(OreKind::Euler, [(1, u()), (3, Rf::var(Var::lambda(1)))]);
        assert_eq!(y.to_kind(OreKind::Deriv).unwrap().to_kind(OreKind::Euler).unwrap(), y);
        assert!(x.to_kind(OreKind::Euler).is_err());
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let a = Op::gen(OreKind::Shift);
        let b = Op::gen(OreKind::Diff);
        assert!(matches!(a.mul(&b), Err(OreError::KindMismatch(_, _))));
    }

    #[test]
    fn delta_hat_examples() {
        let t = Op::gen(OreKind::Shift);
        assert_eq!(delta_hat(&t, 5).unwrap(), t);
        let x = Op::scalar(OreKind::Shift, u());
        let l = 4;
        assert_eq!(
            delta_hat(&x, l).unwrap(),
            Op::scalar(OreKind::Shift, u().neg().add(&Rf::from_i64(l - 1)))
        );
        let y = Op::from_terms(OreKind::Diff, [(0, u()), (1, u().pow(2)), (2, Rf::from_i64(7))]);
        assert_eq!(delta_hat(&delta_hat(&y, 3).unwrap(), 3).unwrap(), y);
    }

    #[test]
    fn stirling_tables() {
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling1(4, 2), 11);
        assert_eq!(stirling1(3, 1), 2);
        assert_eq!(stirling1(3, 2), -3);
    }
}
