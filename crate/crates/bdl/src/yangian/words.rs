//! `T(u)` as word operators: on slots `0..L` with evaluation points `z_l`,
//! `t_ij(u) = Σ Π_l (δ + e^{(l)}/(u − z_l))`, the first slot leftmost. This
//! form acts on any carrier, including Verma factors through θ.

use super::finite::{k_subsets, BetheWeights};
use super::permutations;
use crate::arith::{Coeff, Field, RatFun, Ring, Var};
use crate::glk::{Letter, WordOp};
use crate::ore::{OreKind, OreOp};

#[derive(Clone, Debug)]
pub struct TWords<K> {
    pub k: usize,
    pub kind: OreKind,
    entries: Vec<WordOp<K>>,
}

/// Shifts every coefficient `u ↦ u − s`.
pub fn shift_u<K: Coeff>(x: &WordOp<K>, s: &K) -> WordOp<K> {
    let neg = s.neg();
    x.map_ops(|op| op.map_coeffs(|f| f.shift(Var::U, &neg)))
}

impl<K: Coeff> TWords<K> {
    pub fn new(k: usize, points: &[RatFun<K>], kind: OreKind) -> Self {
        let delta = |i: usize, j: usize| if i == j { WordOp::one(kind) } else { WordOp::zero(kind) };
        let mut entries: Vec<WordOp<K>> = (0..k * k).map(|g| delta(g / k, g % k)).collect();
        for (l, z) in points.iter().enumerate() {
            let inv = RatFun::u().sub(z).inv().expect("u − z is nonzero");
            let local: Vec<WordOp<K>> = (0..k * k)
                .map(|g| {
                    let (i, j) = (g / k, g % k);
                    delta(i, j).add(&WordOp::letter(kind, Letter::new(l, i, j), inv.clone()))
                })
                .collect();
            entries = (0..k * k)
                .map(|g| {
                    let (i, j) = (g / k, g % k);
                    (0..k).fold(WordOp::zero(kind), |acc, p| {
                        acc.add(&entries[i * k + p].mul(&local[p * k + j]))
                    })
                })
                .collect();
        }
        TWords { k, kind, entries }
    }

    /// `t_ij(u − s)`.
    pub fn entry(&self, i: usize, j: usize, s: i64) -> WordOp<K> {
        let x = &self.entries[i * self.k + j];
        if s == 0 {
            x.clone()
        } else {
            shift_u(x, &K::from_i64(s))
        }
    }

    /// Column-ordered quantum minor `Σ_σ sgn σ Π_s t_{j_σ(s) j_s}(u − s)`.
    pub fn qminor(&self, j: &[usize]) -> WordOp<K> {
        let mut out = WordOp::zero(self.kind);
        for (p, sign) in permutations(j.len()) {
            let term = (0..j.len()).fold(WordOp::one(self.kind), |acc, s| {
                acc.mul(&self.entry(j[p[s]], j[s], s as i64))
            });
            out = if sign > 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    pub fn bethe(&self, l: usize, w: &BetheWeights<RatFun<K>>) -> WordOp<K> {
        k_subsets(self.k, l).iter().fold(WordOp::zero(self.kind), |acc, j| {
            acc.add(&self.qminor(j).lmul_fun(&w.weight(j)))
        })
    }

    /// `Σ_l (−1)^l B_l(u) τ^{k−l}` in the shift kind.
    pub fn assemble_d(&self, w: &BetheWeights<RatFun<K>>) -> WordOp<K> {
        assert_eq!(self.kind, OreKind::Shift);
        (0..=self.k).fold(WordOp::zero(OreKind::Shift), |acc, l| {
            let tau = OreOp::monomial(OreKind::Shift, RatFun::from_i64(if l % 2 == 0 { 1 } else { -1 }), (self.k - l) as u32);
            acc.add(&self.bethe(l, w).rmul_op(&tau))
        })
    }

    /// Column determinant `cdet(c_i δ_ij τ − t_ij(u − j))` (0-based `j`).
    pub fn assemble_d_cdet(&self, c: &[RatFun<K>]) -> WordOp<K> {
        assert_eq!(self.kind, OreKind::Shift);
        let mut out = WordOp::zero(OreKind::Shift);
        for (p, sign) in permutations(self.k) {
            let mut term = WordOp::fun(OreKind::Shift, RatFun::from_i64(sign));
            for (col, &row) in p.iter().enumerate() {
                let mut f = self.entry(row, col, col as i64).neg();
                if row == col {
                    f = f.add(&WordOp::scalar(OreOp::monomial(OreKind::Shift, c[col].clone(), 1)));
                }
                term = term.mul(&f);
            }
            out = out.add(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn rf(x: i64) -> RatFun<Rat> {
        RatFun::from_i64(x)
    }

    #[test]
    fn two_routes_to_d_agree() {
        let t = TWords::<Rat>::new(2, &[rf(1), RatFun::var(Var::z(2))], OreKind::Shift);
        let c = vec![rf(3), RatFun::var(Var::C)];
        let a = t.assemble_d(&BetheWeights::Complement(c.clone()));
        let b = t.assemble_d_cdet(&c);
        assert_eq!(a, b);
    }

    #[test]
    fn single_slot_gl1() {
        // gl_1: D = cτ − (1 + e/(u − z))
        let t = TWords::<Rat>::new(1, &[rf(0)], OreKind::Shift);
        let d = t.assemble_d_cdet(&[rf(2)]);
        assert_eq!(d.terms().len(), 2);
        let empty = d.terms().get(&crate::glk::Word::new()).unwrap();
        assert_eq!(empty.coeff(1), Some(&rf(2)));
        assert_eq!(empty.coeff(0), Some(&rf(-1)));
    }
}
