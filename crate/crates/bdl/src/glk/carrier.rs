//! Tensor products of symmetric powers and (at most a few) Verma modules,
//! acted on letter by letter. Vectors are sparse maps from tensor labels to
//! rational functions in the parameters.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::verma::word_offset;
use super::{sym_labels, BasisLabel, Letter, Verma, Weight};
use crate::arith::{Coeff, RatFun, Ring};

pub type TLabel = Vec<BasisLabel>;
pub type SparseVec<K> = BTreeMap<TLabel, RatFun<K>>;

#[derive(Clone, Debug)]
pub enum Factor<K> {
    Sym { a: u32 },
    Verma(Arc<Verma<K>>),
}

#[derive(Clone, Debug)]
pub struct Carrier<K> {
    pub k: usize,
    pub factors: Vec<Factor<K>>,
}

pub fn add_term<K: Coeff>(v: &mut SparseVec<K>, l: TLabel, c: RatFun<K>) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&l) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                v.remove(&l);
            }
        }
        None => {
            v.insert(l, c);
        }
    }
}

pub fn scale_vec<K: Coeff>(v: &SparseVec<K>, c: &RatFun<K>) -> SparseVec<K> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(l, x)| (l.clone(), x.mul(c))).collect()
}

pub fn add_vec<K: Coeff>(a: &mut SparseVec<K>, b: &SparseVec<K>) {
    for (l, c) in b {
        add_term(a, l.clone(), c.clone());
    }
}

impl<K: Coeff> Carrier<K> {
    pub fn new(k: usize, factors: Vec<Factor<K>>) -> Self {
        Carrier { k, factors }
    }

    /// Weight of a label, with Verma factors contributing only their offset.
    pub fn offset(&self, l: &TLabel) -> Weight {
        let mut out = vec![0; self.k];
        for part in l {
            let w = match part {
                BasisLabel::Sym(e) => e.iter().map(|&x| x as i64).collect(),
                BasisLabel::Pbw(w) => word_offset(self.k, w),
                BasisLabel::Tensor(_) => unreachable!("flat labels only"),
            };
            for (o, x) in out.iter_mut().zip(w) {
                *o += x;
            }
        }
        out
    }

    /// Tensor labels of the symmetric-power factors (in order) with total
    /// weight `wt`, in lexicographic order of the flattened exponents.
    pub fn sym_basis(&self, wt: &[i64]) -> Vec<TLabel> {
        let degs: Vec<u32> = self
            .factors
            .iter()
            .filter_map(|f| match f {
                Factor::Sym { a } => Some(*a),
                Factor::Verma(_) => None,
            })
            .collect();
        let mut out = Vec::new();
        fn rec(k: usize, degs: &[u32], rem: &mut Vec<i64>, cur: &mut TLabel, out: &mut Vec<TLabel>) {
            if cur.len() == degs.len() {
                if rem.iter().all(|&x| x == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            for e in sym_labels(k, degs[cur.len()]) {
                if e.iter().zip(rem.iter()).any(|(&x, &r)| x as i64 > r) {
                    continue;
                }
                for (r, &x) in rem.iter_mut().zip(&e) {
                    *r -= x as i64;
                }
                let back = e.clone();
                cur.push(BasisLabel::Sym(e));
                rec(k, degs, rem, cur, out);
                cur.pop();
                for (r, &x) in rem.iter_mut().zip(&back) {
                    *r += x as i64;
                }
            }
        }
        rec(self.k, &degs, &mut wt.to_vec(), &mut Vec::new(), &mut out);
        out.sort_by_key(flat);
        out
    }

    /// `e_ij` on tensor factor `slot`.
    pub fn apply_letter(&self, l: Letter, v: &SparseVec<K>) -> SparseVec<K> {
        let (s, i, j) = (l.slot as usize, l.i as usize, l.j as usize);
        let mut out = SparseVec::new();
        for (label, c) in v {
            match (&self.factors[s], &label[s]) {
                (Factor::Sym { .. }, BasisLabel::Sym(e)) => {
                    if e[j] == 0 {
                        continue;
                    }
                    let mut f = e.clone();
                    f[j] -= 1;
                    f[i] += 1;
                    let mut nl = label.clone();
                    nl[s] = BasisLabel::Sym(f);
                    add_term(&mut out, nl, c.scale(&K::from_i64(e[j] as i64)));
                }
                (Factor::Verma(vm), BasisLabel::Pbw(w)) => {
                    for (x, w2) in vm.act(l.i, l.j, w).iter() {
                        let mut nl = label.clone();
                        nl[s] = BasisLabel::Pbw(w2.clone());
                        add_term(&mut out, nl, c.mul(&RatFun::from_poly(x.clone())));
                    }
                }
                _ => panic!("label does not match factor {s}"),
            }
        }
        out
    }

    /// Applies the letters right to left.
    pub fn apply_word(&self, w: &[Letter], v: &SparseVec<K>) -> SparseVec<K> {
        let mut cur = v.clone();
        for l in w.iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.apply_letter(*l, &cur);
        }
        cur
    }

    /// `Σ_slots e_ij` (the diagonal action).
    pub fn apply_total(&self, i: u8, j: u8, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = SparseVec::new();
        for s in 0..self.factors.len() {
            add_vec(&mut out, &self.apply_letter(Letter { slot: s as u8, i, j }, v));
        }
        out
    }
}

/// Flattened exponents of a label of symmetric-power factors.
pub fn flat(l: &TLabel) -> Vec<u32> {
    l.iter()
        .flat_map(|p| match p {
            BasisLabel::Sym(e) => e.clone(),
            _ => Vec::new(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{MPoly, Rat, Var};

    #[test]
    fn tensor_with_verma_singular_vector() {
        // C² ⊗ M_λ: e12 (x1 ⊗ f21 v − (λ1−λ2) x2 ⊗ v) = 0
        let vm = Verma::new(vec![MPoly::var(Var::lambda(1)), MPoly::var(Var::lambda(2))]);
        let c: Carrier<Rat> = Carrier::new(2, vec![Factor::Sym { a: 1 }, Factor::Verma(Arc::new(vm))]);
        let mut v = SparseVec::new();
        let f = BasisLabel::Pbw(smallvec::smallvec![(1, 0)]);
        let top = BasisLabel::Pbw(Default::default());
        v.insert(vec![BasisLabel::Sym(vec![1, 0]), f], RatFun::one());
        let h = RatFun::var(Var::lambda(1)).sub(&RatFun::var(Var::lambda(2)));
        v.insert(vec![BasisLabel::Sym(vec![0, 1]), top], h.neg());
        assert!(c.apply_total(0, 1, &v).is_empty());
    }

    #[test]
    fn sym_basis_is_lexicographic() {
        let c: Carrier<Rat> = Carrier::new(2, vec![Factor::Sym { a: 1 }, Factor::Sym { a: 1 }]);
        let b = c.sym_basis(&[1, 1]);
        assert_eq!(b.len(), 2);
        assert_eq!(flat(&b[0]), vec![0, 1, 1, 0]);
    }
}
