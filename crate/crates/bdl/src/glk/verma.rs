//! Verma modules `M_λ` realized on PBW monomials `f_{w₁}⋯f_{w_r} v_λ` with
//! letters `f_{ij} = e_ij` (`i > j`) sorted ascending. The action of `e_pq`
//! is computed by commuting past the word and memoized.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use smallvec::SmallVec;

use super::{GlkError, Weight};
use crate::arith::{Coeff, MPoly, Mat, Ring};

/// Sorted multiset of lowering roots `(i, j)`, `i > j`, 0-based.
pub type PbwWord = SmallVec<[(u8, u8); 6]>;

type Action<K> = Arc<Vec<(MPoly<K>, PbwWord)>>;

#[derive(Debug)]
pub struct Verma<K> {
    k: usize,
    lambda: Vec<MPoly<K>>,
    memo: Mutex<HashMap<(u8, u8, PbwWord), Action<K>>>,
}

/// `κ = weight − λ` of a PBW monomial.
pub fn word_offset(k: usize, w: &[(u8, u8)]) -> Weight {
    let mut out = vec![0; k];
    for &(i, j) in w {
        out[i as usize] += 1;
        out[j as usize] -= 1;
    }
    out
}

fn add_into<K: Coeff>(acc: &mut BTreeMap<PbwWord, MPoly<K>>, w: PbwWord, c: MPoly<K>) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&w) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                acc.remove(&w);
            }
        }
        None => {
            acc.insert(w, c);
        }
    }
}

impl<K: Coeff> Verma<K> {
    pub fn new(lambda: Vec<MPoly<K>>) -> Self {
        Verma {
            k: lambda.len(),
            lambda,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> &[MPoly<K>] {
        &self.lambda
    }

    /// `e_pq · f_w v_λ` in the PBW basis.
    pub fn act(&self, p: u8, q: u8, w: &[(u8, u8)]) -> Action<K> {
        if p == q {
            let kappa = word_offset(self.k, w);
            let c = self.lambda[p as usize].add(&MPoly::constant(K::from_i64(kappa[p as usize])));
            return Arc::new(if c.is_zero() { vec![] } else { vec![(c, PbwWord::from_slice(w))] });
        }
        let key = (p, q, PbwWord::from_slice(w));
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let out = Arc::new(self.compute(p, q, w));
        self.memo.lock().expect("memo lock").insert(key, out.clone());
        out
    }

    fn compute(&self, p: u8, q: u8, w: &[(u8, u8)]) -> Vec<(MPoly<K>, PbwWord)> {
        let one = MPoly::constant(K::one());
        if w.is_empty() {
            return if p < q {
                vec![]
            } else {
                vec![(one, SmallVec::from_slice(&[(p, q)]))]
            };
        }
        if p > q && (p, q) <= w[0] {
            let mut nw = PbwWord::with_capacity(w.len() + 1);
            nw.push((p, q));
            nw.extend_from_slice(w);
            return vec![(one, nw)];
        }
        let (a, b) = w[0];
        let rest = &w[1..];
        let mut acc = BTreeMap::new();
        for (c, w1) in self.act(p, q, rest).iter() {
            for (c2, w2) in self.act(a, b, w1).iter() {
                add_into(&mut acc, w2.clone(), c.mul(c2));
            }
        }
        // [e_pq, e_ab] = δ_qa e_pb − δ_bp e_aq
        if q == a {
            for (c, w1) in self.act(p, b, rest).iter() {
                add_into(&mut acc, w1.clone(), c.clone());
            }
        }
        if b == p {
            for (c, w1) in self.act(a, q, rest).iter() {
                add_into(&mut acc, w1.clone(), c.neg());
            }
        }
        acc.into_iter().map(|(w, c)| (c, w)).collect()
    }

    /// PBW monomials with offset `κ`, ascending.
    pub fn weight_basis(&self, kappa: &[i64]) -> Vec<PbwWord> {
        weight_basis(self.k, kappa)
    }
}

/// Sorted lowering roots `(i, j)`.
fn roots(k: usize) -> Vec<(u8, u8)> {
    let mut r = Vec::new();
    for i in 0..k {
        for j in 0..i {
            r.push((i as u8, j as u8));
        }
    }
    r
}

/// Multisets of lowering roots whose offset is `κ`.
pub fn weight_basis(k: usize, kappa: &[i64]) -> Vec<PbwWord> {
    if kappa.len() != k || kappa.iter().sum::<i64>() != 0 {
        return Vec::new();
    }
    // κ = −Σ c_i α_i with α_i = ε_i − ε_{i+1}
    let mut need = Vec::with_capacity(k.saturating_sub(1));
    let mut s = 0;
    for x in kappa.iter().take(k.saturating_sub(1)) {
        s -= x;
        if s < 0 {
            return Vec::new();
        }
        need.push(s);
    }
    let rs = roots(k);
    let mut out = Vec::new();
    fn rec(rs: &[(u8, u8)], idx: usize, need: &mut Vec<i64>, cur: &mut PbwWord, out: &mut Vec<PbwWord>) {
        if need.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        if idx == rs.len() {
            return;
        }
        // skip this root
        rec(rs, idx + 1, need, cur, out);
        let (i, j) = rs[idx];
        let span = j as usize..i as usize;
        let mut taken = 0;
        while need[span.clone()].iter().all(|&x| x > 0) {
            for t in span.clone() {
                need[t] -= 1;
            }
            cur.push((i, j));
            taken += 1;
            rec(rs, idx + 1, need, cur, out);
        }
        for _ in 0..taken {
            cur.pop();
        }
        for t in span {
            need[t] += taken;
        }
    }
    rec(&rs, 0, &mut need, &mut PbwWord::new(), &mut out);
    out.sort();
    out
}

/// Offsets `κ` with `|κ_i| ≤ drop_i` that occur in a Verma module.
pub fn truncation_offsets(drop: &[u32]) -> Vec<Weight> {
    let k = drop.len();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    fn rec(drop: &[u32], c: &mut Vec<i64>, out: &mut Vec<Weight>) {
        let k = drop.len();
        let i = c.len();
        if i + 1 == k {
            let last = *c.last().unwrap_or(&0);
            if last <= drop[k - 1] as i64 {
                let mut kappa = Vec::with_capacity(k);
                let mut prev = 0;
                for &ci in c.iter() {
                    kappa.push(prev - ci);
                    prev = ci;
                }
                kappa.push(prev);
                out.push(kappa);
            }
            return;
        }
        let prev = if i == 0 { 0 } else { c[i - 1] };
        let d = drop[i] as i64;
        for ci in (prev - d).max(0)..=prev + d {
            c.push(ci);
            rec(drop, c, out);
            c.pop();
        }
    }
    rec(drop, &mut Vec::new(), &mut out);
    out
}

/// Finite piece of a Verma module spanned by weight spaces with
/// `|κ_i| ≤ drop_i`.
pub struct VermaTruncation<'a, K> {
    pub verma: &'a Verma<K>,
    pub drop: Vec<u32>,
    pub basis: Vec<PbwWord>,
}

impl<'a, K: Coeff> VermaTruncation<'a, K> {
    pub fn new(verma: &'a Verma<K>, drop: Vec<u32>) -> Self {
        let mut basis: Vec<PbwWord> = truncation_offsets(&drop)
            .iter()
            .flat_map(|kappa| verma.weight_basis(kappa))
            .collect();
        basis.sort();
        VermaTruncation { verma, drop, basis }
    }

    /// Matrix of `e_ij`; fails if the image leaves the truncation.
    pub fn gen(&self, i: usize, j: usize) -> Result<Mat<MPoly<K>>, GlkError> {
        let index: HashMap<&PbwWord, usize> = self.basis.iter().enumerate().map(|(a, w)| (w, a)).collect();
        let d = self.basis.len();
        let mut m = Mat::zeros(d, d);
        for (c, w) in self.basis.iter().enumerate() {
            for (x, w2) in self.verma.act(i as u8, j as u8, w).iter() {
                let r = *index
                    .get(w2)
                    .ok_or_else(|| GlkError::TruncationExit(format!("e_{i}{j} on {w:?}")))?;
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Rat, Var};

    fn symbolic(k: usize) -> Verma<Rat> {
        Verma::new((0..k).map(|i| MPoly::var(Var::lambda(i + 1))).collect())
    }

    fn l(i: usize) -> MPoly<Rat> {
        MPoly::var(Var::lambda(i))
    }

    #[test]
    fn gl2_raising_on_first_lowering() {
        let v = symbolic(2);
        let f: PbwWord = SmallVec::from_slice(&[(1, 0)]);
        let r = v.act(0, 1, &f);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, l(1).sub(&l(2)));
        assert!(r[0].1.is_empty());
    }

    #[test]
    fn gl2_shapovalov_depth_two() {
        let v = symbolic(2);
        let w: PbwWord = SmallVec::from_slice(&[(1, 0), (1, 0)]);
        let once = v.act(0, 1, &w);
        assert_eq!(once.len(), 1);
        let twice = v.act(0, 1, &once[0].1);
        let h = l(1).sub(&l(2));
        let expected = once[0].0.mul(&twice[0].0);
        let one = MPoly::constant(Rat::from_i64(1));
        assert_eq!(expected, h.mul(&h.sub(&one)).scale(&Rat::from_i64(2)));
    }

    #[test]
    fn weight_bases() {
        assert_eq!(weight_basis(2, &[-2, 2]).len(), 1);
        // f21 f32, f31 in gl3 at κ = −α1 − α2
        assert_eq!(weight_basis(3, &[-1, 0, 1]).len(), 2);
        assert_eq!(weight_basis(3, &[1, -1, 0]).len(), 0);
        assert_eq!(weight_basis(3, &[-2, 0, 2]).len(), 3);
    }

    #[test]
    fn truncation_satisfies_relations_inside() {
        let v = symbolic(3);
        let t = VermaTruncation::new(&v, vec![1, 1, 1]);
        assert!(t.basis.len() >= 3);
        // e12 e21 − e21 e12 = e11 − e22 on the highest vector
        let h = [(0u8, 1u8), (1, 0)];
        let a = v.act(h[1].0, h[1].1, &[]);
        let b = v.act(h[0].0, h[0].1, &a[0].1);
        assert_eq!(b[0].0, l(1).sub(&l(2)));
        assert!(t.gen(0, 1).is_ok());
    }

    #[test]
    fn gl3_relations_on_a_weight_space() {
        let v = symbolic(3);
        let basis = v.weight_basis(&[-1, 0, 1]);
        // [e_12, e_23] = e_13 applied to each basis vector
        for w in &basis {
            let mut lhs: BTreeMap<PbwWord, MPoly<Rat>> = BTreeMap::new();
            for (c, w1) in v.act(1, 2, w).iter() {
                for (c2, w2) in v.act(0, 1, w1).iter() {
                    add_into(&mut lhs, w2.clone(), c.mul(c2));
                }
            }
            for (c, w1) in v.act(0, 1, w).iter() {
                for (c2, w2) in v.act(1, 2, w1).iter() {
                    add_into(&mut lhs, w2.clone(), c.mul(c2).neg());
                }
            }
            let mut rhs = BTreeMap::new();
            for (c, w1) in v.act(0, 2, w).iter() {
                add_into(&mut rhs, w1.clone(), c.clone());
            }
            assert_eq!(lhs, rhs);
        }
    }
}
