//! The operators `D̄_n`, `D̄_m` built from evaluation images of `D_{n+m}(C)`
//! with `C = (1ⁿ,0ᵐ)` or `(0ⁿ,1ᵐ)`, realized on weight spaces of a gl_{n+m}
//! Verma module, and the pencil duality between them.

use std::sync::Arc;

use serde_json::json;

use crate::arith::{Coeff, MPoly, Mat, RatFun, Ring, Var};
use crate::error::Error;
use crate::glk::verma::weight_basis;
use crate::glk::{BasisLabel, Carrier, Factor, TLabel, Verma, Weight, WordOp};
use crate::ore::pencil::{apply_f, mixed};
use crate::ore::{delta_hat, falling, u_plus, OperatorPencil, OreKind, OreOp};
use crate::par;
use crate::report::VerificationReport;
use crate::yangian::words::shift_u;
use crate::yangian::TWords;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `c = 1` on the first `n` slots.
    C10,
    /// `c = 1` on the last `m` slots.
    C01,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    N,
    M,
}

#[derive(Clone, Debug)]
pub struct BlockContext<K> {
    pub n: usize,
    pub m: usize,
    pub lambda: Vec<MPoly<K>>,
}

impl<K: Coeff> BlockContext<K> {
    pub fn symbolic(n: usize, m: usize) -> Self {
        BlockContext { n, m, lambda: (1..=n + m).map(|i| MPoly::var(Var::lambda(i))).collect() }
    }

    pub fn numeric(n: usize, m: usize, lambda: &[K]) -> Self {
        assert_eq!(lambda.len(), n + m);
        BlockContext { n, m, lambda: lambda.iter().map(|x| MPoly::constant(x.clone())).collect() }
    }
}

/// `ev D_{n+m}(C)` with `t_ij(u) = δ_ij + e_ij/u`, in the shift kind.
pub fn ev_dnm<K: Coeff>(n: usize, m: usize, pattern: Pattern) -> WordOp<K> {
    let t = TWords::new(n + m, &[RatFun::zero()], OreKind::Shift);
    let c: Vec<RatFun<K>> = (0..n + m)
        .map(|i| {
            let on = match pattern {
                Pattern::C10 => i < n,
                Pattern::C01 => i >= n,
            };
            RatFun::from_i64(on as i64)
        })
        .collect();
    t.assemble_d_cdet(&c)
}

/// `D̄_m` (side M) or `D̄_n` (side N) in the d-kind.
pub fn dbar<K: Coeff>(n: usize, m: usize, side: Side) -> WordOp<K> {
    let nm = (n + m) as u32;
    let sign = |k: usize| RatFun::from_i64(if k.is_multiple_of(2) { 1 } else { -1 });
    let out = match side {
        Side::M => {
            let x = shift_u(&ev_dnm::<K>(n, m, Pattern::C01), &K::from_i64(-(n as i64)));
            x.lmul_fun(&falling(&u_plus(n as i64), nm).mul(&sign(n)))
        }
        Side::N => {
            let y = ev_dnm::<K>(n, m, Pattern::C10)
                .map_ops(|op| delta_hat(op, nm as i64).expect("shift kind"));
            let y = shift_u(&y, &K::from_i64(-(m as i64)));
            y.lmul_fun(&falling(&u_plus(m as i64), nm).mul(&sign(m)))
        }
    };
    out.to_kind(OreKind::Diff)
}

/// A weight space `M_λ[λ+κ]` of the gl_{n+m} Verma module.
#[derive(Clone, Debug)]
pub struct VermaSpace<K> {
    pub carrier: Carrier<K>,
    pub kappa: Weight,
    pub basis: Vec<TLabel>,
}

impl<K: Coeff> VermaSpace<K> {
    pub fn new(ctx: &BlockContext<K>, kappa: Weight) -> Self {
        let k = ctx.n + ctx.m;
        let vm = Arc::new(Verma::new(ctx.lambda.clone()));
        let basis = weight_basis(k, &kappa).into_iter().map(|w| vec![BasisLabel::Pbw(w)]).collect();
        VermaSpace { carrier: Carrier::new(k, vec![Factor::Verma(vm)]), kappa, basis }
    }

    pub fn realize(&self, x: &WordOp<K>) -> Result<OreOp<Mat<RatFun<K>>>, Error> {
        Ok(x.realize_on(&self.carrier, &self.basis)?)
    }
}

/// Offsets `κ = −Σ c_i α_i` with `Σ c_i ≤ h`.
pub fn offsets_by_height(k: usize, h: u32) -> Vec<Weight> {
    let mut out = Vec::new();
    fn rec(k: usize, h: i64, c: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if c.len() + 1 == k {
            let mut kappa = Vec::with_capacity(k);
            let mut prev = 0;
            for &ci in c.iter() {
                kappa.push(prev - ci);
                prev = ci;
            }
            kappa.push(prev);
            out.push(kappa);
            return;
        }
        for x in 0..=h {
            c.push(x);
            rec(k, h - x, c, out);
            c.pop();
        }
    }
    if k > 0 {
        rec(k, h as i64, &mut Vec::new(), &mut out);
    }
    out
}

pub type Grid<K> = OperatorPencil<Mat<RatFun<K>>, K>;

/// Grids of `D̄_n` and `D̄_m` on one weight space.
#[derive(Clone, Debug)]
pub struct Main1Space<K> {
    pub n: usize,
    pub m: usize,
    pub kappa: Weight,
    pub dim: usize,
    pub grid_n: Grid<K>,
    pub grid_m: Grid<K>,
}

impl<K: Coeff> Main1Space<K> {
    /// First grid position where `ℱ(A^{(n)})` and `A^{(m)}` differ.
    pub fn discrepancy(&self) -> Option<(u32, u32)> {
        let f = apply_f(&self.grid_n).expect("mixed basis");
        let keys: std::collections::BTreeSet<(u32, u32)> =
            f.grid.keys().chain(self.grid_m.grid.keys()).copied().collect();
        keys.into_iter().find(|k| f.grid.get(k) != self.grid_m.grid.get(k))
    }

    /// `A^{(m)}` lives in `i ≤ n, j ≤ m` and `A^{(n)}` in `i ≤ m, j ≤ n`.
    pub fn support_ok(&self) -> bool {
        let (mi, mj) = self.grid_m.support();
        let (ni, nj) = self.grid_n.support();
        mi as usize <= self.n && mj as usize <= self.m && ni as usize <= self.m && nj as usize <= self.n
    }

    /// Do all grid entries commute pairwise?
    pub fn entries_commute(&self) -> bool {
        let all: Vec<&Mat<RatFun<K>>> = self.grid_m.grid.values().chain(self.grid_n.grid.values()).collect();
        all.iter().all(|a| all.iter().all(|b| a.commutator(b).is_zero()))
    }
}

pub fn main1_space<K: Coeff>(ctx: &BlockContext<K>, kappa: Weight) -> Result<Main1Space<K>, Error> {
    let (n, m) = (ctx.n, ctx.m);
    let space = VermaSpace::new(ctx, kappa.clone());
    let op_m = space.realize(&dbar::<K>(n, m, Side::M))?;
    let op_n = space.realize(&dbar::<K>(n, m, Side::N))?;
    let grid_m = OperatorPencil::from_operator(&op_m, mixed(n as i64, 1 - m as i64))?;
    let grid_n = OperatorPencil::from_operator(&op_n, mixed(m as i64, 1 - n as i64))?;
    Ok(Main1Space { n, m, kappa, dim: space.basis.len(), grid_n, grid_m })
}

/// `ℱ_{n,m}(D̄_n) = D̄_m` on each weight space.
pub fn verify_main1<K: Coeff>(ctx: &BlockContext<K>, kappas: &[Weight], seed: u64) -> VerificationReport {
    let params = json!({ "n": ctx.n, "m": ctx.m, "lambda": ctx.lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>() });
    let mut rep = VerificationReport::new("main1", params, seed, K::mode_name());
    let results = par::map(kappas, |kappa| main1_space(ctx, kappa.clone()));
    for (kappa, res) in kappas.iter().zip(results) {
        match res {
            Ok(s) => {
                let bad = s.discrepancy();
                let ok = bad.is_none() && s.support_ok() && s.entries_commute();
                let item = json!({ "kappa": kappa, "dim": s.dim, "support_m": s.grid_m.support(), "support_n": s.grid_n.support() });
                rep.record(item, ok, || {
                    let f = apply_f(&s.grid_n).expect("mixed basis");
                    let pos = bad.unwrap_or((u32::MAX, u32::MAX));
                    json!({
                        "kappa": kappa,
                        "position": pos,
                        "lhs": f.grid.get(&pos).map(|x| x.to_string()),
                        "rhs": s.grid_m.grid.get(&pos).map(|x| x.to_string()),
                        "support_ok": s.support_ok(),
                        "entries_commute": s.entries_commute(),
                    })
                });
            }
            Err(e) => rep.record(json!({ "kappa": kappa }), false, || json!({ "kappa": kappa, "error": e.to_string() })),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Rat};
    use crate::glk::{Letter, Word};

    type Rf = RatFun<Rat>;

    #[test]
    fn gl1_highest_vector() {
        // n+m = 1, C10: d − e11/u
        let x = ev_dnm::<Rat>(1, 0, Pattern::C10).to_kind(OreKind::Diff);
        let ctx = BlockContext::<Rat>::symbolic(1, 0);
        let op = VermaSpace::new(&ctx, vec![0]).realize(&x).unwrap();
        let l1 = Rf::var(Var::lambda(1));
        assert_eq!(op.coeff(1).unwrap().get(0, 0), &Rf::one());
        assert_eq!(op.coeff(0).unwrap().get(0, 0), &l1.div(&Rf::u()).unwrap().neg());
    }

    #[test]
    fn two_by_two_hand_expansion() {
        // (−1 − e11/u)(d − e22/(u−1)) − e21 e12/(u(u−1)), slots (−, d)
        let x = ev_dnm::<Rat>(1, 1, Pattern::C01).to_kind(OreKind::Diff);
        let k = OreKind::Diff;
        let e = |i, j| WordOp::<Rat>::letter(k, Letter::new(0, i, j), Rf::one());
        let f = |g: Rf| WordOp::<Rat>::fun(k, g);
        let u = Rf::u();
        let um1 = u.sub(&Rf::one());
        let a = f(Rf::from_i64(-1)).sub(&e(0, 0).lmul_fun(&u.inv().unwrap()));
        let b = WordOp::scalar(OreOp::gen(k)).sub(&e(1, 1).lmul_fun(&um1.inv().unwrap()));
        let c = e(1, 0).mul(&e(0, 1)).lmul_fun(&u.mul(&um1).inv().unwrap());
        assert_eq!(x, a.mul(&b).sub(&c));
        assert!(x.terms().contains_key(&Word::new()));
    }

    #[test]
    fn main1_gl1_gl1_symbolic() {
        let ctx = BlockContext::<Rat>::symbolic(1, 1);
        for kappa in [vec![0, 0], vec![-1, 1], vec![-2, 2]] {
            let s = main1_space(&ctx, kappa.clone()).unwrap();
            assert_eq!(s.discrepancy(), None, "kappa {kappa:?}");
            assert!(s.support_ok());
        }
    }

    #[test]
    fn heights() {
        assert_eq!(offsets_by_height(2, 2).len(), 3);
        assert_eq!(offsets_by_height(4, 1).len(), 4);
    }
}
