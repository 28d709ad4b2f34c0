//! The isomorphism `θ : (V ⊗ M_λ)^{sing}[λ+b] → V[b]`, `θ(Σ x ⊗ f_w v_λ) =`
//! the part with empty PBW word. Its inverse is found by solving the linear
//! system `e_{i,i+1} (w ⊗ v_λ + Σ c x ⊗ f_w v_λ) = 0` for the unknown
//! coefficients `c`; a singular system means the parameters are not generic.

use std::collections::BTreeMap;

use super::carrier::add_term;
use super::{sym_labels, BasisLabel, Carrier, Factor, GlkError, Letter, PbwWord, SparseVec, TLabel, WordOp};
use crate::arith::{solve, Coeff, Mat, RatFun, Ring, SolveError};
use crate::ore::OreOp;

#[derive(Clone, Debug)]
pub struct ThetaMap<K> {
    pub carrier: Carrier<K>,
    /// Basis of `V[b]` (labels of the symmetric-power factors).
    pub v_basis: Vec<TLabel>,
    /// `θ^{-1}` of each basis vector, with full labels.
    pub lifts: Vec<SparseVec<K>>,
}

fn with_word(x: &TLabel, w: PbwWord) -> TLabel {
    let mut l = x.clone();
    l.push(BasisLabel::Pbw(w));
    l
}

/// All labels of the symmetric-power factors.
fn all_sym_labels<K: Coeff>(c: &Carrier<K>) -> Vec<TLabel> {
    let mut out: Vec<TLabel> = vec![Vec::new()];
    for f in &c.factors {
        if let Factor::Sym { a } = f {
            let opts = sym_labels(c.k, *a);
            out = out
                .into_iter()
                .flat_map(|l| {
                    opts.iter().map(move |e| {
                        let mut l2 = l.clone();
                        l2.push(BasisLabel::Sym(e.clone()));
                        l2
                    })
                })
                .collect();
        }
    }
    out
}

impl<K: Coeff> ThetaMap<K> {
    /// `carrier` must end with its only Verma factor.
    pub fn new(carrier: Carrier<K>, v_basis: Vec<TLabel>) -> Result<Self, GlkError> {
        let k = carrier.k;
        let Some(Factor::Verma(vm)) = carrier.factors.last() else {
            return Err(GlkError::NonGeneric("carrier has no Verma factor".into()));
        };
        let vm = vm.clone();
        let Some(first) = v_basis.first() else {
            return Ok(ThetaMap { carrier, v_basis, lifts: Vec::new() });
        };
        let b = carrier.offset(first);
        if v_basis.iter().any(|x| carrier.offset(x) != b) {
            return Err(GlkError::BadWeight(b));
        }
        let mut unknowns: Vec<TLabel> = Vec::new();
        for x in all_sym_labels(&carrier) {
            let beta = carrier.offset(&x);
            let kappa: Vec<i64> = b.iter().zip(&beta).map(|(p, q)| p - q).collect();
            if kappa.iter().all(|&t| t == 0) {
                continue;
            }
            for w in vm.weight_basis(&kappa) {
                unknowns.push(with_word(&x, w));
            }
        }
        let raise = |v: &SparseVec<K>| -> Vec<SparseVec<K>> {
            (0..k.saturating_sub(1))
                .map(|i| carrier.apply_total(i as u8, i as u8 + 1, v))
                .collect()
        };
        let unit = |l: &TLabel| -> SparseVec<K> {
            let mut v = SparseVec::new();
            v.insert(l.clone(), RatFun::one());
            v
        };
        let mut rows: BTreeMap<(usize, TLabel), usize> = BTreeMap::new();
        let mut row_of = |key: (usize, TLabel)| -> usize {
            let n = rows.len();
            *rows.entry(key).or_insert(n)
        };
        let mut a_entries = Vec::new();
        for (c, l) in unknowns.iter().enumerate() {
            for (i, img) in raise(&unit(l)).into_iter().enumerate() {
                for (l2, x) in img {
                    a_entries.push((row_of((i, l2)), c, x));
                }
            }
        }
        let bases: Vec<TLabel> = v_basis.iter().map(|x| with_word(x, PbwWord::new())).collect();
        let mut b_entries = Vec::new();
        for (s, l) in bases.iter().enumerate() {
            for (i, img) in raise(&unit(l)).into_iter().enumerate() {
                for (l2, x) in img {
                    b_entries.push((row_of((i, l2)), s, x.neg()));
                }
            }
        }
        let nrows = rows.len();
        let mut lifts: Vec<SparseVec<K>> = bases.iter().map(unit).collect();
        if nrows > 0 {
            if unknowns.is_empty() {
                return Err(GlkError::NonGeneric("no singular lift exists".into()));
            }
            let mut a = Mat::zeros(nrows, unknowns.len());
            for (r, c, x) in a_entries {
                a.set(r, c, x);
            }
            let mut rhs = Mat::zeros(nrows, bases.len());
            for (r, s, x) in b_entries {
                rhs.set(r, s, x);
            }
            let sol = solve(&a, &rhs).map_err(|e| {
                GlkError::NonGeneric(match e {
                    SolveError::Singular => "singular vectors are not unique".into(),
                    SolveError::Inconsistent => "no singular lift exists".into(),
                })
            })?;
            for (s, lift) in lifts.iter_mut().enumerate() {
                for (c, l) in unknowns.iter().enumerate() {
                    add_term(lift, l.clone(), sol.get(c, s).clone());
                }
            }
        }
        Ok(ThetaMap { carrier, v_basis, lifts })
    }

    pub fn dim(&self) -> usize {
        self.v_basis.len()
    }

    /// Coordinates of the empty-word part in the basis of `V[b]`.
    pub fn forward(&self, v: &SparseVec<K>) -> Vec<RatFun<K>> {
        self.v_basis
            .iter()
            .map(|x| v.get(&with_word(x, PbwWord::new())).cloned().unwrap_or_else(RatFun::zero))
            .collect()
    }

    /// Is `v` annihilated by every `e_{i,i+1}`?
    pub fn is_singular(&self, v: &SparseVec<K>) -> bool {
        (0..self.carrier.k.saturating_sub(1)).all(|i| self.carrier.apply_total(i as u8, i as u8 + 1, v).is_empty())
    }

    /// `θ ∘ w ∘ θ^{-1}` as a matrix.
    pub fn word_matrix(&self, w: &[Letter]) -> Mat<RatFun<K>> {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for (s, lift) in self.lifts.iter().enumerate() {
            for (r, x) in self.forward(&self.carrier.apply_word(w, lift)).into_iter().enumerate() {
                m.set(r, s, x);
            }
        }
        m
    }

    /// `θ̂(X)` for an operator whose words preserve the singular subspace in
    /// total (each word is projected; only the sum is meaningful).
    pub fn realize(&self, x: &WordOp<K>) -> Result<OreOp<Mat<RatFun<K>>>, GlkError> {
        x.realize_with(self.dim(), |w| Ok(self.word_matrix(w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{MPoly, Rat, Var};
    use crate::glk::Verma;
    use std::sync::Arc;

    fn carrier() -> Carrier<Rat> {
        let vm = Verma::new(vec![MPoly::var(Var::lambda(1)), MPoly::var(Var::lambda(2))]);
        Carrier::new(2, vec![Factor::Sym { a: 1 }, Factor::Sym { a: 1 }, Factor::Verma(Arc::new(vm))])
    }

    #[test]
    fn lifts_are_singular_and_project_back() {
        let c = carrier();
        let basis = c.sym_basis(&[1, 1]);
        let th = ThetaMap::new(c, basis).unwrap();
        assert_eq!(th.dim(), 2);
        for s in 0..2 {
            assert!(th.is_singular(&th.lifts[s]));
            let f = th.forward(&th.lifts[s]);
            for (r, x) in f.iter().enumerate() {
                assert_eq!(*x, if r == s { RatFun::one() } else { RatFun::zero() });
            }
        }
    }

    #[test]
    fn non_generic_weight_is_detected() {
        let vm = Verma::new(vec![MPoly::constant(Rat::from_i64(0)), MPoly::constant(Rat::from_i64(0))]);
        let c = Carrier::new(2, vec![Factor::Sym { a: 1 }, Factor::Verma(Arc::new(vm))]);
        // λ1 − λ2 = 0 makes the lift of x2 ⊗ v impossible
        let basis = c.sym_basis(&[0, 1]);
        assert!(matches!(ThetaMap::new(c, basis), Err(GlkError::NonGeneric(_))));
    }
}
