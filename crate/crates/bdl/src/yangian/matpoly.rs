//! Polynomials in `u` with constant matrix coefficients, and quotients of
//! them by products of linear factors `u − r`.

use crate::arith::{Coeff, Field, MPoly, Mat, RatFun, Ring, Var};

#[derive(Clone, Debug, PartialEq)]
pub struct MatPoly<K> {
    pub dim: usize,
    /// Ascending powers of `u`.
    pub coeffs: Vec<Mat<K>>,
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl<K: Coeff> MatPoly<K> {
    pub fn zero(dim: usize) -> Self {
        MatPoly { dim, coeffs: Vec::new() }
    }

    pub fn constant(m: Mat<K>) -> Self {
        MatPoly { dim: m.rows(), coeffs: vec![m] }.trimmed()
    }

    /// `(u − r)·I`.
    pub fn linear(dim: usize, r: &K) -> Self {
        MatPoly {
            dim,
            coeffs: vec![Mat::scalar(dim, &r.neg()), Mat::identity(dim)],
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|m| m.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Mat::zeros(self.dim, self.dim);
        MatPoly {
            dim: self.dim,
            coeffs: (0..n)
                .map(|p| self.coeffs.get(p).unwrap_or(&z).add(o.coeffs.get(p).unwrap_or(&z)))
                .collect(),
        }
        .trimmed()
    }

    pub fn neg(&self) -> Self {
        MatPoly { dim: self.dim, coeffs: self.coeffs.iter().map(|m| m.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &K) -> Self {
        MatPoly { dim: self.dim, coeffs: self.coeffs.iter().map(|m| m.scale(c)).collect() }.trimmed()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return MatPoly::zero(self.dim);
        }
        let mut coeffs = vec![Mat::zeros(self.dim, self.dim); self.coeffs.len() + o.coeffs.len() - 1];
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[p + q] = coeffs[p + q].add(&a.mul(b));
                }
            }
        }
        MatPoly { dim: self.dim, coeffs }.trimmed()
    }

    /// Coefficientwise Kronecker product.
    pub fn kron(&self, o: &Self) -> Self {
        let dim = self.dim * o.dim;
        if self.is_zero() || o.is_zero() {
            return MatPoly::zero(dim);
        }
        let mut coeffs = vec![Mat::zeros(dim, dim); self.coeffs.len() + o.coeffs.len() - 1];
        for (p, a) in self.coeffs.iter().enumerate() {
            for (q, b) in o.coeffs.iter().enumerate() {
                coeffs[p + q] = coeffs[p + q].add(&a.kron(b));
            }
        }
        MatPoly { dim, coeffs }.trimmed()
    }

    /// `p(u) ↦ p(u + s)`.
    pub fn shift(&self, s: &K) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![Mat::zeros(self.dim, self.dim); n];
        for (p, a) in self.coeffs.iter().enumerate() {
            let mut sp = K::one();
            for q in (0..=p).rev() {
                let c = K::from_i64(binom(p, q)).mul(&sp);
                coeffs[q] = coeffs[q].add(&a.scale(&c));
                sp = sp.mul(s);
            }
        }
        MatPoly { dim: self.dim, coeffs }.trimmed()
    }

    /// Do all coefficients of `self` commute with all coefficients of `o`?
    /// Equivalent to `[P(u), Q(v)] = 0` for independent `u, v`.
    pub fn commutes_with(&self, o: &Self) -> bool {
        self.coeffs
            .iter()
            .all(|a| o.coeffs.iter().all(|b| a.commutator(b).is_zero()))
    }

    pub fn to_ratfun(&self) -> Mat<RatFun<K>> {
        let polys: Vec<Mat<RatFun<K>>> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(p, a)| a.map(|x| RatFun::constant(x.clone())).scale(&RatFun::u().pow(p as u32)))
            .collect();
        polys
            .into_iter()
            .fold(Mat::zeros(self.dim, self.dim), |acc, m| acc.add(&m))
    }
}

/// `N(u) / Π_r (u − r)`.
#[derive(Clone, Debug)]
pub struct RationalMat<K> {
    pub num: MatPoly<K>,
    pub den_roots: Vec<K>,
}

impl<K: Coeff> RationalMat<K> {
    pub fn den(&self) -> RatFun<K> {
        self.den_roots
            .iter()
            .fold(RatFun::one(), |acc, r| acc.mul(&RatFun::from_poly(MPoly::var_plus(Var::U, r.neg()))))
    }

    pub fn to_ratfun(&self) -> Mat<RatFun<K>> {
        let d = self.den().inv().expect("nonzero denominator");
        self.num.to_ratfun().scale(&d)
    }

    /// Equality as rational functions (cross-multiplied).
    pub fn equals(&self, o: &Self) -> bool {
        let mul_roots = |p: &MatPoly<K>, rs: &[K]| {
            rs.iter().fold(p.clone(), |acc, r| acc.mul(&MatPoly::linear(p.dim, r)))
        };
        mul_roots(&self.num, &o.den_roots) == mul_roots(&o.num, &self.den_roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn m(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(Rat::from_i64).collect()).collect())
    }

    #[test]
    fn shift_of_square() {
        let p = MatPoly::linear(1, &Rat::from_i64(0)).mul(&MatPoly::linear(1, &Rat::from_i64(0)));
        let q = p.shift(&Rat::from_i64(2));
        // (u+2)² = u² + 4u + 4
        assert_eq!(q.coeffs, vec![m(vec![vec![4]]), m(vec![vec![4]]), m(vec![vec![1]])]);
    }

    #[test]
    fn commuting_coefficients() {
        let a = MatPoly::constant(m(vec![vec![1, 1], vec![0, 1]]));
        let b = MatPoly::constant(m(vec![vec![2, 3], vec![0, 2]]));
        let c = MatPoly::constant(m(vec![vec![0, 0], vec![1, 0]]));
        assert!(a.commutes_with(&b));
        assert!(!a.commutes_with(&c));
    }

    #[test]
    fn rational_equality_cross_multiplies() {
        let one = MatPoly::constant(Mat::identity(1));
        let x = RationalMat { num: one.clone(), den_roots: vec![Rat::from_i64(1)] };
        let y = RationalMat {
            num: MatPoly::linear(1, &Rat::from_i64(3)),
            den_roots: vec![Rat::from_i64(1), Rat::from_i64(3)],
        };
        assert!(x.equals(&y));
    }
}
