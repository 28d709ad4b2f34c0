//! Weight modules of gl_k: symmetric powers, tensor products, Verma modules
//! (lazily, through a PBW basis), words in the generators `e_ij` acting on
//! tensor factors, and the map θ onto singular vectors.

pub mod carrier;
pub mod contingency;
pub mod theta;
pub mod verma;
pub mod words;

use std::collections::HashMap;

use thiserror::Error;

use crate::arith::{kernel, Coeff, Mat, RatFun, Ring};

pub use carrier::{Carrier, Factor, SparseVec, TLabel};
pub use contingency::contingency_tables;
pub use theta::ThetaMap;
pub use verma::{PbwWord, Verma, VermaTruncation};
pub use words::{Letter, Word, WordOp};

pub type Weight = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GlkError {
    #[error("gl_{0} relations fail: {1}")]
    Relations(usize, String),
    #[error("factors have different ranks")]
    RankMismatch,
    #[error("vector leaves the truncation: {0}")]
    TruncationExit(String),
    #[error("parameters are not generic: {0}")]
    NonGeneric(String),
    #[error("weight {0:?} is not in the module")]
    BadWeight(Weight),
}

/// Label of a basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// Monomial `x^α` in `S^a C^k`.
    Sym(Vec<u32>),
    /// PBW monomial applied to the highest vector of a Verma module.
    Pbw(PbwWord),
    Tensor(Vec<BasisLabel>),
}

/// Finite-dimensional gl_k-module with explicit generator matrices.
#[derive(Clone, Debug)]
pub struct WeightModule<K> {
    k: usize,
    labels: Vec<BasisLabel>,
    weights: Vec<Weight>,
    gens: Vec<Mat<K>>,
}

/// Exponent vectors of degree `a` in `k` variables, `x_1^a` first.
pub fn sym_labels(k: usize, a: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, a: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == k {
            cur.push(a);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=a).rev() {
            cur.push(x);
            rec(k, a - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, a, &mut Vec::new(), &mut out);
    }
    out
}

impl<K: Coeff> WeightModule<K> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn weight(&self, idx: usize) -> &Weight {
        &self.weights[idx]
    }

    /// Matrix of `e_ij` (0-based indices).
    pub fn gen(&self, i: usize, j: usize) -> &Mat<K> {
        &self.gens[i * self.k + j]
    }

    /// `S^a C^k` with `e_ij x^α = α_j x^{α+ε_i−ε_j}`.
    pub fn sym_power(k: usize, a: u32) -> Self {
        let exps = sym_labels(k, a);
        let index: HashMap<&Vec<u32>, usize> = exps.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let d = exps.len();
        let mut gens = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut g = Mat::zeros(d, d);
                for (c, e) in exps.iter().enumerate() {
                    if e[j] == 0 {
                        continue;
                    }
                    let mut f = e.clone();
                    f[j] -= 1;
                    f[i] += 1;
                    g.set(index[&f], c, K::from_i64(e[j] as i64));
                }
                gens.push(g);
            }
        }
        let weights = exps.iter().map(|e| e.iter().map(|&x| x as i64).collect()).collect();
        WeightModule {
            k,
            labels: exps.into_iter().map(BasisLabel::Sym).collect(),
            weights,
            gens,
        }
    }

    /// The one-dimensional trivial module.
    pub fn trivial(k: usize) -> Self {
        WeightModule {
            k,
            labels: vec![BasisLabel::Tensor(Vec::new())],
            weights: vec![vec![0; k]],
            gens: vec![Mat::zeros(1, 1); k * k],
        }
    }

    /// Tensor product with `e_ij ↦ e_ij ⊗ 1 + 1 ⊗ e_ij`, basis in
    /// lexicographic order of the factor labels.
    pub fn tensor(factors: &[&WeightModule<K>]) -> Result<Self, GlkError> {
        let Some(first) = factors.first() else {
            return Err(GlkError::RankMismatch);
        };
        let k = first.k;
        if factors.iter().any(|f| f.k != k) {
            return Err(GlkError::RankMismatch);
        }
        let mut acc = WeightModule::trivial(k);
        acc.labels = vec![BasisLabel::Tensor(Vec::new())];
        for f in factors {
            let (da, db) = (acc.dim(), f.dim());
            let ia = Mat::identity(da);
            let ib = Mat::identity(db);
            let gens = (0..k * k)
                .map(|g| acc.gens[g].kron(&ib).add(&ia.kron(&f.gens[g])))
                .collect();
            let mut labels = Vec::with_capacity(da * db);
            let mut weights = Vec::with_capacity(da * db);
            for (la, wa) in acc.labels.iter().zip(&acc.weights) {
                for (lb, wb) in f.labels.iter().zip(&f.weights) {
                    let BasisLabel::Tensor(mut parts) = la.clone() else {
                        unreachable!("accumulator labels are tensors")
                    };
                    parts.push(lb.clone());
                    labels.push(BasisLabel::Tensor(parts));
                    weights.push(wa.iter().zip(wb).map(|(x, y)| x + y).collect());
                }
            }
            acc = WeightModule { k, labels, weights, gens };
        }
        Ok(acc)
    }

    /// Checks `[e_ij, e_kl] = δ_jk e_il − δ_li e_kj` and the weights.
    pub fn check_relations(&self) -> Result<(), GlkError> {
        let k = self.k;
        for i in 0..k {
            for j in 0..k {
                for p in 0..k {
                    for q in 0..k {
                        let lhs = self.gen(i, j).commutator(self.gen(p, q));
                        let mut rhs = Mat::zeros(self.dim(), self.dim());
                        if j == p {
                            rhs = rhs.add(self.gen(i, q));
                        }
                        if q == i {
                            rhs = rhs.sub(self.gen(p, j));
                        }
                        if lhs != rhs {
                            return Err(GlkError::Relations(
                                k,
                                format!("[e{i}{j}, e{p}{q}]"),
                            ));
                        }
                    }
                }
            }
        }
        for (c, w) in self.weights.iter().enumerate() {
            for (i, wi) in w.iter().enumerate() {
                let col = self.gen(i, i).col(c);
                let ok = col
                    .iter()
                    .enumerate()
                    .all(|(r, x)| *x == if r == c { K::from_i64(*wi) } else { K::zero() });
                if !ok {
                    return Err(GlkError::Relations(k, format!("weight of basis vector {c}")));
                }
            }
        }
        Ok(())
    }

    /// Indices of the basis vectors of weight `wt`.
    pub fn weight_space(&self, wt: &[i64]) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] == wt).collect()
    }

    /// Basis of `{v ∈ V[wt] : e_{i,i+1} v = 0}`, as coordinate vectors in
    /// the full basis.
    pub fn singular_space(&self, wt: &[i64]) -> Vec<Vec<RatFun<K>>> {
        let cols = self.weight_space(wt);
        if cols.is_empty() {
            return Vec::new();
        }
        let all: Vec<usize> = (0..self.dim()).collect();
        let mut stacked: Option<Mat<RatFun<K>>> = None;
        for i in 0..self.k.saturating_sub(1) {
            let block = self.gen(i, i + 1).select(&all, &cols).map(|x| RatFun::constant(x.clone()));
            stacked = Some(match stacked {
                None => block,
                Some(s) => s.vstack(&block),
            });
        }
        let ker = match stacked {
            None => (0..cols.len())
                .map(|c| (0..cols.len()).map(|r| if r == c { RatFun::one() } else { RatFun::zero() }).collect())
                .collect(),
            Some(s) => kernel(&s),
        };
        ker.into_iter()
            .map(|v| {
                let mut full = vec![RatFun::zero(); self.dim()];
                for (c, x) in cols.iter().zip(v) {
                    full[*c] = x;
                }
                full
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    type M = WeightModule<Rat>;

    #[test]
    fn sym_power_dims_and_relations() {
        let s = M::sym_power(3, 2);
        assert_eq!(s.dim(), 6);
        s.check_relations().unwrap();
        assert_eq!(s.labels()[0], BasisLabel::Sym(vec![2, 0, 0]));
    }

    #[test]
    fn tensor_square_singular_space() {
        let v = M::sym_power(2, 1);
        let t = M::tensor(&[&v, &v]).unwrap();
        t.check_relations().unwrap();
        assert_eq!(t.weight_space(&[1, 1]).len(), 2);
        // only the symmetric combination survives in weight (1,1)
        assert_eq!(t.singular_space(&[1, 1]).len(), 1);
        assert_eq!(t.singular_space(&[2, 0]).len(), 1);
        assert_eq!(t.singular_space(&[0, 2]).len(), 0);
    }

    #[test]
    fn dimensions_of_tensor_products() {
        let a = M::sym_power(3, 2);
        let b = M::sym_power(3, 1);
        let t = M::tensor(&[&a, &b]).unwrap();
        assert_eq!(t.dim(), 18);
        t.check_relations().unwrap();
        assert!(M::tensor(&[&a, &M::sym_power(2, 1)]).is_err());
    }
}
