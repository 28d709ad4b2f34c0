//! The trigonometric Gaudin operator `𝔇^{tG}_n(b,ξ;a,λ^{(n)})`, by two
//! routes: θ applied to `cdet(δ_ij ∂ − e_ij(u))`, and the reduction of
//! `cdet(δ_ij(u∂−n+j) − Σ_l u e^{(l)}_ij/(u−ξ_l) − e^{(m+1)}_ij)` modulo the
//! left ideal fixing the Verma slot.

use std::sync::Arc;

use super::{prod_linear, sym_factors, Margins, RepOperator};
use crate::arith::{Coeff, Field, MPoly, RatFun, Ring};
use crate::error::Error;
use crate::glk::{Carrier, Factor, Letter, ThetaMap, Verma, Word, WordOp};
use crate::ore::{OreKind, OreOp, PencilBasis};
use crate::yangian::permutations;

/// Column determinant `Σ_σ sgn σ · X_{σ(1)1} ⋯ X_{σ(n)n}`.
fn cdet<K: Coeff>(n: usize, kind: OreKind, entry: impl Fn(usize, usize) -> WordOp<K>) -> WordOp<K> {
    let entries: Vec<WordOp<K>> = (0..n * n).map(|g| entry(g / n, g % n)).collect();
    let mut out = WordOp::zero(kind);
    for (p, sign) in permutations(n) {
        let term = (0..n).fold(WordOp::fun(kind, RatFun::from_i64(sign)), |acc, c| acc.mul(&entries[p[c] * n + c]));
        out = out.add(&term);
    }
    out
}

/// `𝔇_n = cdet(δ_ij ∂ − e_ij(u))`, `e_ij(u) = Σ_l e^{(l)}_ij/(u−ξ_l) + e^{(m+1)}_ij/u`.
pub fn gaudin_words<K: Coeff>(n: usize, xi: &[RatFun<K>]) -> WordOp<K> {
    let kind = OreKind::Deriv;
    let m = xi.len();
    let inv: Vec<RatFun<K>> = xi
        .iter()
        .chain(std::iter::once(&RatFun::zero()))
        .map(|x| RatFun::u().sub(x).inv().expect("u − ξ is nonzero"))
        .collect();
    cdet(n, kind, |i, j| {
        let mut x = if i == j { WordOp::scalar(OreOp::gen(kind)) } else { WordOp::zero(kind) };
        for (l, f) in inv.iter().enumerate().take(m + 1) {
            x = x.sub(&WordOp::letter(kind, Letter::new(l, i, j), f.clone()));
        }
        x
    })
}

/// `u^nΠ(u−ξ_j)·𝔇^{tG}` via θ, in the Euler kind.
pub fn rep_tg_theta<K: Coeff>(mg: &Margins, xi: &[RatFun<K>], lam_n: &[MPoly<K>]) -> Result<RepOperator<K>, Error> {
    let n = mg.n();
    check_xi(mg, xi)?;
    let labels = mg.n_basis();
    let mut factors = sym_factors(&mg.b);
    factors.push(Factor::Verma(Arc::new(Verma::new(lam_n.to_vec()))));
    let theta = ThetaMap::new(Carrier::new(n, factors), labels.clone())?;
    let prefactor = RatFun::u().pow(n as u32).mul(&prod_linear(xi));
    let op = theta.realize(&gaudin_words(n, xi))?.lmul_fun(&prefactor);
    Ok(RepOperator { labels, prefactor, op: op.to_kind(OreKind::Euler)? })
}

/// `𝔇̄_n` on slots `0..m` plus the Verma slot `m`, Euler kind.
pub fn gaudin_bar_words<K: Coeff>(n: usize, xi: &[RatFun<K>]) -> WordOp<K> {
    let kind = OreKind::Euler;
    let m = xi.len();
    let frac: Vec<RatFun<K>> = xi
        .iter()
        .map(|x| RatFun::u().div(&RatFun::u().sub(x)).expect("u − ξ is nonzero"))
        .collect();
    cdet(n, kind, |i, j| {
        let mut x = if i == j {
            // u∂ − n + j with 1-based j
            let shift = RatFun::from_i64(j as i64 + 1 - n as i64);
            WordOp::scalar(OreOp::gen(kind).add(&OreOp::scalar(kind, shift)).expect("same kind"))
        } else {
            WordOp::zero(kind)
        };
        for (l, f) in frac.iter().enumerate() {
            x = x.sub(&WordOp::letter(kind, Letter::new(l, i, j), f.clone()));
        }
        x.sub(&WordOp::letter(kind, Letter::new(m, i, j), RatFun::one()))
    })
}

/// Rewrites the Verma-slot letters of each word from the right: lower
/// `e_ij ↦ 0`, diagonal `e_ii ↦ λ_i`, upper `e_ij ↦ −Σ_l e^{(l)}_ij`
/// (appended to the right of the remaining finite-slot letters). In the
/// words of `𝔇̄_n` the Verma-slot letters commute pairwise, so no
/// reordering is needed first.
pub fn reduce_verma_slot<K: Coeff>(x: &WordOp<K>, m: usize, lam: &[MPoly<K>]) -> WordOp<K> {
    x.map_words(|w| {
        let cut = w.iter().position(|l| l.slot as usize == m).unwrap_or(w.len());
        let mut acc: Vec<(RatFun<K>, Word)> = vec![(RatFun::one(), w[..cut].iter().copied().collect())];
        for l in w[cut..].iter().rev() {
            let (i, j) = (l.i as usize, l.j as usize);
            if i > j {
                return Vec::new();
            }
            if i == j {
                let li = RatFun::from_poly(lam[i].clone());
                acc = acc.into_iter().map(|(c, w2)| (c.mul(&li), w2)).collect();
            } else {
                acc = acc
                    .into_iter()
                    .flat_map(|(c, w2)| {
                        (0..m).map(move |s| {
                            let mut w3 = w2.clone();
                            w3.push(Letter::new(s, i, j));
                            (c.neg(), w3)
                        })
                    })
                    .collect();
            }
        }
        acc
    })
}

/// `u^nΠ(u−ξ_j)·𝔇^{tG}` via the left-ideal quotient, Euler kind.
pub fn rep_tg_quotient<K: Coeff>(mg: &Margins, xi: &[RatFun<K>], lam_n: &[MPoly<K>]) -> Result<RepOperator<K>, Error> {
    let (n, m) = (mg.n(), mg.m());
    check_xi(mg, xi)?;
    let labels = mg.n_basis();
    let reduced = reduce_verma_slot(&gaudin_bar_words(n, xi), m, lam_n);
    let carrier = Carrier::new(n, sym_factors(&mg.b));
    let prefactor = RatFun::u().pow(n as u32).mul(&prod_linear(xi));
    let op = reduced.realize_on(&carrier, &labels)?.lmul_fun(&prod_linear(xi));
    Ok(RepOperator { labels, prefactor, op })
}

/// `u^j (u∂)^i`, stored with key `(j, i)`.
pub fn tg_pencil<K: Coeff>() -> PencilBasis<K> {
    PencilBasis::Power { alpha: K::zero(), gen: OreKind::Euler }
}

fn check_xi<K: Coeff>(mg: &Margins, xi: &[RatFun<K>]) -> Result<(), Error> {
    if xi.len() != mg.m() {
        return Err(Error::Config("xi must have m entries".into()));
    }
    for (p, x) in xi.iter().enumerate() {
        if xi[p + 1..].contains(x) {
            return Err(Error::Config("xi entries must be distinct".into()));
        }
    }
    Ok(())
}
