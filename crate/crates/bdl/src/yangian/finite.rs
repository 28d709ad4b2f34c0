//! `T(u)` on a tensor product of finite-dimensional evaluation modules,
//! `t_ij(u) ↦ Σ_{k…} Π_l (δ + e^{(l)}/(u − z_l))`, kept as a matrix
//! polynomial numerator over the common denominator `Π_l (u − z_l)`.

use super::matpoly::{MatPoly, RationalMat};
use super::permutations;
use crate::arith::{Coeff, Mat, Ring};
use crate::glk::{GlkError, WeightModule};

#[derive(Clone, Debug)]
pub struct TMatrix<K> {
    pub k: usize,
    pub dim: usize,
    num: Vec<MatPoly<K>>,
    roots: Vec<K>,
    totals: Vec<Mat<K>>,
}

/// Coefficients of a Bethe subalgebra generator `Σ_{|J|=k} w_J t_J(u)`.
#[derive(Clone, Debug)]
pub enum BetheWeights<K> {
    /// `w_J = Π_{j∉J} c_j`
    Complement(Vec<K>),
    /// `w_J = Π_{j∈J} ξ_j`
    Scaled(Vec<K>),
}

impl<K: Ring> BetheWeights<K> {
    pub fn weight(&self, j: &[usize]) -> K {
        match self {
            BetheWeights::Complement(c) => (0..c.len())
                .filter(|x| !j.contains(x))
                .fold(K::one(), |acc, x| acc.mul(&c[x])),
            BetheWeights::Scaled(xi) => j.iter().fold(K::one(), |acc, &x| acc.mul(&xi[x])),
        }
    }
}

/// Increasing `k`-subsets of `{0..n}`.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

pub fn build_t<K: Coeff>(factors: &[(WeightModule<K>, K)]) -> Result<TMatrix<K>, GlkError> {
    let Some((first, _)) = factors.first() else {
        return Err(GlkError::RankMismatch);
    };
    let k = first.k();
    if factors.iter().any(|(f, _)| f.k() != k) {
        return Err(GlkError::RankMismatch);
    }
    let mut num: Vec<MatPoly<K>> = (0..k * k)
        .map(|g| MatPoly::constant(if g / k == g % k { Mat::identity(1) } else { Mat::zeros(1, 1) }))
        .collect();
    let mut totals: Vec<Mat<K>> = vec![Mat::zeros(1, 1); k * k];
    let mut dim = 1;
    for (f, z) in factors {
        let d = f.dim();
        let local: Vec<MatPoly<K>> = (0..k * k)
            .map(|g| {
                let (i, j) = (g / k, g % k);
                let e = MatPoly::constant(f.gen(i, j).clone());
                if i == j {
                    e.add(&MatPoly::linear(d, z))
                } else {
                    e
                }
            })
            .collect();
        let mut next = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = MatPoly::zero(dim * d);
                for l in 0..k {
                    acc = acc.add(&num[i * k + l].kron(&local[l * k + j]));
                }
                next.push(acc);
            }
        }
        let (ia, ib) = (Mat::identity(dim), Mat::identity(d));
        totals = (0..k * k)
            .map(|g| totals[g].kron(&ib).add(&ia.kron(f.gen(g / k, g % k))))
            .collect();
        num = next;
        dim *= d;
    }
    Ok(TMatrix {
        k,
        dim,
        num,
        roots: factors.iter().map(|(_, z)| z.clone()).collect(),
        totals,
    })
}

impl<K: Coeff> TMatrix<K> {
    /// `t_ij(u − s)`.
    pub fn entry(&self, i: usize, j: usize, s: i64) -> RationalMat<K> {
        let sk = K::from_i64(s);
        RationalMat {
            num: self.num[i * self.k + j].shift(&sk.neg()),
            den_roots: self.roots.iter().map(|r| r.add(&sk)).collect(),
        }
    }

    /// Diagonal action of `e_ij`.
    pub fn total(&self, i: usize, j: usize) -> &Mat<K> {
        &self.totals[i * self.k + j]
    }

    fn ordered_product(&self, factors: &[(usize, usize, i64)]) -> RationalMat<K> {
        let mut num = MatPoly::constant(Mat::identity(self.dim));
        let mut den_roots = Vec::new();
        for &(i, j, s) in factors {
            let e = self.entry(i, j, s);
            num = num.mul(&e.num);
            den_roots.extend(e.den_roots);
        }
        RationalMat { num, den_roots }
    }

    fn den_for(&self, len: usize) -> Vec<K> {
        (0..len as i64).flat_map(|s| self.entry(0, 0, s).den_roots).collect()
    }

    /// `t_J(u) = Σ_σ sgn σ · t_{j_σ(1) j_1}(u) t_{j_σ(2) j_2}(u−1) ⋯`.
    pub fn qminor(&self, j: &[usize]) -> RationalMat<K> {
        let mut num = MatPoly::zero(self.dim);
        for (p, sign) in permutations(j.len()) {
            let f: Vec<(usize, usize, i64)> = (0..j.len()).map(|s| (j[p[s]], j[s], s as i64)).collect();
            let t = self.ordered_product(&f).num;
            num = if sign > 0 { num.add(&t) } else { num.sub(&t) };
        }
        RationalMat { num, den_roots: self.den_for(j.len()) }
    }

    /// Row form `Σ_σ sgn σ · t_{j_1 j_σ(1)}(u−k+1) ⋯ t_{j_k j_σ(k)}(u)`.
    pub fn qminor_rows(&self, j: &[usize]) -> RationalMat<K> {
        let k = j.len() as i64;
        let mut num = MatPoly::zero(self.dim);
        for (p, sign) in permutations(j.len()) {
            let f: Vec<(usize, usize, i64)> = (0..j.len()).map(|s| (j[s], j[p[s]], k - 1 - s as i64)).collect();
            let t = self.ordered_product(&f).num;
            num = if sign > 0 { num.add(&t) } else { num.sub(&t) };
        }
        let mut den = self.den_for(j.len());
        den.reverse();
        RationalMat { num, den_roots: den }
    }

    pub fn qdet(&self) -> RationalMat<K> {
        self.qminor(&(0..self.k).collect::<Vec<_>>())
    }

    /// `B_l(u) = Σ_{|J|=l} w_J t_J(u)`.
    pub fn bethe(&self, l: usize, w: &BetheWeights<K>) -> RationalMat<K> {
        let mut num = MatPoly::zero(self.dim);
        for j in k_subsets(self.k, l) {
            let c = w.weight(&j);
            if !c.is_zero() {
                num = num.add(&self.qminor(&j).num.scale(&c));
            }
        }
        RationalMat { num, den_roots: self.den_for(l) }
    }
}

/// Results of the commutativity checks on one module.
#[derive(Clone, Debug, Default)]
pub struct CommutativityReport {
    pub dim: usize,
    pub pairs_checked: usize,
    pub failing_pairs: Vec<(usize, usize)>,
    pub qdet_central: bool,
    pub minor_forms_agree: bool,
    pub top_is_qdet: bool,
    pub preserves_weights: bool,
}

impl CommutativityReport {
    pub fn pass(&self) -> bool {
        self.failing_pairs.is_empty()
            && self.qdet_central
            && self.minor_forms_agree
            && self.top_is_qdet
            && self.preserves_weights
    }
}

pub fn check_commutativity<K: Coeff>(t: &TMatrix<K>, c: &[K]) -> CommutativityReport {
    let w = BetheWeights::Complement(c.to_vec());
    let bs: Vec<RationalMat<K>> = (1..=t.k).map(|l| t.bethe(l, &w)).collect();
    let mut rep = CommutativityReport { dim: t.dim, ..Default::default() };
    for a in 0..bs.len() {
        for b in a..bs.len() {
            rep.pairs_checked += 1;
            if !bs[a].num.commutes_with(&bs[b].num) {
                rep.failing_pairs.push((a + 1, b + 1));
            }
        }
    }
    let q = t.qdet();
    rep.qdet_central = (0..t.k).all(|i| (0..t.k).all(|j| q.num.commutes_with(&t.entry(i, j, 0).num)));
    rep.minor_forms_agree = k_subsets(t.k, 2.min(t.k))
        .iter()
        .chain(std::iter::once(&(0..t.k).collect::<Vec<_>>()))
        .all(|j| t.qminor(j).equals(&t.qminor_rows(j)));
    let ones = BetheWeights::Complement(vec![K::one(); t.k]);
    rep.top_is_qdet = bs[t.k - 1].equals(&q) && t.bethe(t.k, &ones).equals(&q);
    rep.preserves_weights = (0..t.k).all(|i| {
        let h = MatPoly::constant(t.total(i, i).clone());
        bs.iter().all(|b| b.num.commutes_with(&h))
    });
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Rat, RatFun};

    fn r(x: i64) -> Rat {
        Rat::from_i64(x)
    }

    #[test]
    fn single_factor_entries() {
        let v = WeightModule::<Rat>::sym_power(2, 1);
        let t = build_t(&[(v.clone(), r(3))]).unwrap();
        let e = t.entry(0, 1, 0);
        assert_eq!(e.num.coeffs, vec![v.gen(0, 1).clone()]);
        assert_eq!(e.den_roots, vec![r(3)]);
        assert_eq!(e.to_ratfun().get(0, 1), &RatFun::u().sub(&RatFun::from_i64(3)).inv().unwrap());
    }

    #[test]
    fn qdet_of_fundamental_is_scalar() {
        // on C^2(z) the quantum determinant is (u − z + 1)/(u − z)
        let v = WeightModule::<Rat>::sym_power(2, 1);
        let t = build_t(&[(v, r(0))]).unwrap();
        let q = t.qdet().to_ratfun();
        let expected = RatFun::u().add(&RatFun::one()).div(&RatFun::u()).unwrap();
        assert_eq!(q.get(0, 0), &expected);
        assert_eq!(q.get(1, 1), &expected);
        assert!(q.get(0, 1).is_zero());
    }

    #[test]
    fn bethe_subalgebra_commutes_small() {
        let v = WeightModule::<Rat>::sym_power(2, 1);
        let t = build_t(&[(v.clone(), r(1)), (v, r(-2))]).unwrap();
        let rep = check_commutativity(&t, &[r(2), r(5)]);
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn a_single_entry_does_not_commute() {
        let v = WeightModule::<Rat>::sym_power(2, 1);
        let t = build_t(&[(v.clone(), r(1)), (v, r(-2))]).unwrap();
        assert!(!t.entry(0, 1, 0).num.commutes_with(&t.entry(1, 0, 0).num));
    }
}
