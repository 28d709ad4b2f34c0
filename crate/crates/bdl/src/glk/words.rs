//! Elements of `A ⊗ U(gl_k)^{⊗L}` written as `Σ_w X_w ⊗ w`, with `X_w` a
//! scalar Ore operator in `u` and `w` a word of generators `e_ij` tagged by
//! tensor slot. Letters on different slots commute, so words are kept
//! stably sorted by slot; within a slot the order is the product order.

use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use super::{Carrier, GlkError, SparseVec, TLabel};
use crate::arith::{Coeff, Mat, RatFun, Ring};
use crate::ore::{OreKind, OreOp, ScalarOp};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub slot: u8,
    pub i: u8,
    pub j: u8,
}

impl Letter {
    pub fn new(slot: usize, i: usize, j: usize) -> Self {
        Letter { slot: slot as u8, i: i as u8, j: j as u8 }
    }
}

pub type Word = SmallVec<[Letter; 6]>;

pub fn canonical(mut w: Word) -> Word {
    w.sort_by_key(|l| l.slot);
    w
}

#[derive(Clone, Debug, PartialEq)]
pub struct WordOp<K> {
    kind: OreKind,
    terms: BTreeMap<Word, ScalarOp<K>>,
}

impl<K: Coeff> WordOp<K> {
    pub fn zero(kind: OreKind) -> Self {
        WordOp { kind, terms: BTreeMap::new() }
    }

    pub fn scalar(op: ScalarOp<K>) -> Self {
        let mut out = WordOp::zero(op.kind());
        out.push(Word::new(), op);
        out
    }

    pub fn fun(kind: OreKind, f: RatFun<K>) -> Self {
        WordOp::scalar(OreOp::scalar(kind, f))
    }

    pub fn one(kind: OreKind) -> Self {
        WordOp::fun(kind, RatFun::one())
    }

    /// `f(u) ⊗ e_ij` on one slot.
    pub fn letter(kind: OreKind, l: Letter, f: RatFun<K>) -> Self {
        let mut out = WordOp::zero(kind);
        out.push(SmallVec::from_slice(&[l]), OreOp::scalar(kind, f));
        out
    }

    pub fn from_terms(kind: OreKind, terms: impl IntoIterator<Item = (Word, ScalarOp<K>)>) -> Self {
        let mut out = WordOp::zero(kind);
        for (w, x) in terms {
            out.push(canonical(w), x);
        }
        out
    }

    fn push(&mut self, w: Word, x: ScalarOp<K>) {
        if x.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(y) => {
                *y = y.add(&x).expect("same kind");
                if y.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, x);
            }
        }
    }

    pub fn kind(&self) -> OreKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<Word, ScalarOp<K>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.kind, o.kind, "word operators of different kinds");
        let mut out = self.clone();
        for (w, x) in &o.terms {
            out.push(w.clone(), x.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_ops(|x| x.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.kind, o.kind, "word operators of different kinds");
        let mut out = WordOp::zero(self.kind);
        for (w1, x1) in &self.terms {
            for (w2, x2) in &o.terms {
                let mut w: Word = w1.clone();
                w.extend_from_slice(w2);
                out.push(canonical(w), x1.mul(x2).expect("same kind"));
            }
        }
        out
    }

    /// `X ↦ op · X`.
    pub fn lmul_op(&self, op: &ScalarOp<K>) -> Self {
        self.map_ops(|x| op.mul(x).expect("same kind"))
    }

    /// `X ↦ X · op`.
    pub fn rmul_op(&self, op: &ScalarOp<K>) -> Self {
        self.map_ops(|x| x.mul(op).expect("same kind"))
    }

    pub fn lmul_fun(&self, f: &RatFun<K>) -> Self {
        self.map_ops(|x| x.lmul_fun(f))
    }

    /// Applies `f` to every operator part; the kind is taken from the results.
    pub fn map_ops(&self, f: impl Fn(&ScalarOp<K>) -> ScalarOp<K>) -> Self {
        let mut out = WordOp::zero(self.kind);
        for (w, x) in &self.terms {
            let y = f(x);
            out.kind = y.kind();
            out.push(w.clone(), y);
        }
        out
    }

    /// Rewrites each word as a combination of words; used to reduce words
    /// modulo relations on some slots.
    pub fn map_words(&self, f: impl Fn(&Word) -> Vec<(RatFun<K>, Word)>) -> Self {
        let mut out = WordOp::zero(self.kind);
        for (w, x) in &self.terms {
            for (c, w2) in f(w) {
                out.push(canonical(w2), x.lmul_fun(&c));
            }
        }
        out
    }

    pub fn to_kind(&self, kind: OreKind) -> Self {
        let mut out = self.map_ops(|x| x.to_kind(kind).expect("convertible kinds"));
        out.kind = kind;
        out
    }

    /// `Σ_w X_w ⊗ ρ(w)` given the matrices `ρ(w)` of all words.
    pub fn realize_with(
        &self,
        dim: usize,
        rho: impl Fn(&Word) -> Result<Mat<RatFun<K>>, GlkError> + Sync + Send,
    ) -> Result<OreOp<Mat<RatFun<K>>>, GlkError> {
        let words: Vec<&Word> = self.terms.keys().collect();
        let mats = par::map(&words, |w| rho(w)).into_iter().collect::<Result<Vec<_>, _>>()?;
        // entry (r, c) of power p is a sum over words; collect first, reduce once
        let mut by_power: BTreeMap<u32, Vec<(&Mat<RatFun<K>>, &RatFun<K>)>> = BTreeMap::new();
        for (w, m) in words.iter().zip(&mats) {
            for (p, f) in self.terms[*w].terms() {
                by_power.entry(*p).or_default().push((m, f));
            }
        }
        let powers: Vec<(u32, Vec<(&Mat<RatFun<K>>, &RatFun<K>)>)> = by_power.into_iter().collect();
        let summed = par::map(&powers, |(p, items)| {
            let m = Mat::from_fn(dim, dim, |r, c| RatFun::sum_products(items.iter().map(|(m, f)| (m.get(r, c), *f))));
            (*p, m)
        });
        Ok(OreOp::from_terms(self.kind, summed))
    }

    /// Realization on the span of `basis`, which every word must preserve.
    pub fn realize_on(&self, carrier: &Carrier<K>, basis: &[TLabel]) -> Result<OreOp<Mat<RatFun<K>>>, GlkError> {
        self.realize_with(basis.len(), |w| word_matrix(carrier, basis, w))
    }
}

/// Matrix of a word on the span of `basis`.
pub fn word_matrix<K: Coeff>(carrier: &Carrier<K>, basis: &[TLabel], w: &[Letter]) -> Result<Mat<RatFun<K>>, GlkError> {
    let index: HashMap<&TLabel, usize> = basis.iter().enumerate().map(|(a, l)| (l, a)).collect();
    let d = basis.len();
    let mut m = Mat::zeros(d, d);
    for (c, l) in basis.iter().enumerate() {
        let mut v = SparseVec::new();
        v.insert(l.clone(), RatFun::one());
        for (l2, x) in carrier.apply_word(w, &v) {
            let r = *index
                .get(&l2)
                .ok_or_else(|| GlkError::TruncationExit(format!("word {w:?} leaves the span")))?;
            m.set(r, c, x);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;
    use crate::glk::{Factor, WeightModule};

    type W = WordOp<Rat>;

    #[test]
    fn letters_on_different_slots_commute() {
        let a = W::letter(OreKind::Shift, Letter::new(1, 0, 1), RatFun::one());
        let b = W::letter(OreKind::Shift, Letter::new(0, 1, 0), RatFun::one());
        assert_eq!(a.mul(&b), b.mul(&a));
        let c = W::letter(OreKind::Shift, Letter::new(0, 0, 1), RatFun::one());
        assert_ne!(c.mul(&b), b.mul(&c));
    }

    #[test]
    fn shift_moves_past_coefficients() {
        let tau = W::scalar(OreOp::gen(OreKind::Shift));
        let a = W::letter(OreKind::Shift, Letter::new(0, 0, 0), RatFun::u());
        let prod = tau.mul(&a);
        let (w, x) = prod.terms().iter().next().unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(x.coeff(1).unwrap(), &RatFun::u().add(&RatFun::one()));
    }

    #[test]
    fn realization_matches_explicit_module() {
        let v = WeightModule::<Rat>::sym_power(2, 2);
        let c = Carrier::new(2, vec![Factor::Sym { a: 2 }]);
        let basis: Vec<TLabel> = v.labels().iter().map(|l| vec![l.clone()]).collect();
        let x = W::letter(OreKind::Shift, Letter::new(0, 0, 1), RatFun::one())
            .mul(&W::letter(OreKind::Shift, Letter::new(0, 1, 0), RatFun::one()));
        let m = x.realize_on(&c, &basis).unwrap();
        let expected = v.gen(0, 1).mul(v.gen(1, 0)).map(|a| RatFun::constant(a.clone()));
        assert_eq!(m.coeff(0).unwrap(), &expected);
    }
}
