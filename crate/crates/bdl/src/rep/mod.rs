//! Bethe operators on weight spaces of tensor products of symmetric powers:
//! `D_m(a,z;b,λ^{(m)})` and `D_n(b,w;a,λ^{(n)})` through θ, the XXX
//! operator, the trigonometric Gaudin operator, and the explicit
//! Hamiltonians with their residue formulas.

pub mod degeneration;
pub mod gaudin;
pub mod hamiltonians;

use std::sync::Arc;

use crate::arith::{Coeff, MPoly, Mat, RatFun, Ring};
use crate::error::Error;
use crate::glk::contingency::{col_label, row_label, Table};
use crate::glk::{contingency_tables, Carrier, Factor, TLabel, ThetaMap, Verma};
use crate::ore::pencil::mixed;
use crate::ore::{falling, OreKind, OreOp, OperatorPencil, PencilBasis};
use crate::unm::{Grid, Side};
use crate::yangian::{BetheWeights, TWords};

/// Margins `a ∈ ℤ^n_{≥0}`, `b ∈ ℤ^m_{≥0}` with `Σa = Σb`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Margins {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl Margins {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Result<Self, Error> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Config("a and b must be nonempty".into()));
        }
        if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
            return Err(Error::Config(format!("margins differ: sum {a:?} != sum {b:?}")));
        }
        Ok(Margins { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn tables(&self) -> Vec<Table> {
        contingency_tables(&self.a, &self.b)
    }

    /// Basis of `S^{(m)}(a)[b]`.
    pub fn m_basis(&self) -> Vec<TLabel> {
        self.tables().iter().map(row_label).collect()
    }

    /// Basis of `S^{(n)}(b)[a]`, in the same order of tables.
    pub fn n_basis(&self) -> Vec<TLabel> {
        self.tables().iter().map(col_label).collect()
    }
}

/// `(λ^{(n)}, λ^{(m)})` from `λ ∈ ℂ^{n+m}`: `λ^{(n)} = (−λ_n,…,−λ_1)`,
/// `λ^{(m)} = (λ_{n+1},…,λ_{n+m})`.
pub fn split_lambda<K: Coeff>(lambda: &[MPoly<K>], n: usize) -> (Vec<MPoly<K>>, Vec<MPoly<K>>) {
    let lam_n = lambda[..n].iter().rev().map(|x| x.neg()).collect();
    (lam_n, lambda[n..].to_vec())
}

/// `p_i = μ_i + c_i − i` (1-based `i`): gives `z` from `(λ^{(n)}, a)` and
/// `w` from `(λ^{(m)}, b)`.
pub fn eval_points<K: Coeff>(mu: &[MPoly<K>], c: &[u32]) -> Vec<RatFun<K>> {
    mu.iter()
        .zip(c)
        .enumerate()
        .map(|(i, (x, &ci))| RatFun::from_poly(x.clone()).add(&RatFun::from_i64(ci as i64 - i as i64 - 1)))
        .collect()
}

/// `Π (u − p)`.
pub fn prod_linear<K: Coeff>(points: &[RatFun<K>]) -> RatFun<K> {
    points.iter().fold(RatFun::one(), |acc, p| acc.mul(&RatFun::u().sub(p)))
}

/// An operator on a weight space with matrix coefficients, already
/// multiplied by `prefactor`.
#[derive(Clone, Debug)]
pub struct RepOperator<K> {
    pub labels: Vec<TLabel>,
    pub prefactor: RatFun<K>,
    pub op: OreOp<Mat<RatFun<K>>>,
}

impl<K: Coeff> RepOperator<K> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn grid(&self, basis: PencilBasis<K>) -> Result<Grid<K>, Error> {
        Ok(OperatorPencil::from_operator(&self.op, basis)?)
    }
}

fn sym_factors<K>(degs: &[u32]) -> Vec<Factor<K>> {
    degs.iter().map(|&a| Factor::Sym { a }).collect()
}

/// `θ̂(ρ(D_k(1,…,1)))` on `S^{d_1}ℂ^k(p_1) ⊗ … ⊗ M_μ(0)`, shift kind.
pub fn theta_bethe<K: Coeff>(
    degs: &[u32],
    points: &[RatFun<K>],
    mu: &[MPoly<K>],
    labels: Vec<TLabel>,
) -> Result<OreOp<Mat<RatFun<K>>>, Error> {
    let k = mu.len();
    let mut factors = sym_factors(degs);
    factors.push(Factor::Verma(Arc::new(Verma::new(mu.to_vec()))));
    let theta = ThetaMap::new(Carrier::new(k, factors), labels)?;
    let mut pts = points.to_vec();
    pts.push(RatFun::zero());
    let d = TWords::new(k, &pts, OreKind::Shift).assemble_d_cdet(&vec![RatFun::one(); k]);
    Ok(theta.realize(&d)?)
}

/// `u^{falling m}Π(u−z_i)·D_m(a,z;b,λ^{(m)})` (side M) or
/// `u^{falling n}Π(u−w_j)·D_n(b,w;a,λ^{(n)})` (side N), in the d-kind.
pub fn rep_d_theta<K: Coeff>(
    mg: &Margins,
    side: Side,
    lam_n: &[MPoly<K>],
    lam_m: &[MPoly<K>],
) -> Result<RepOperator<K>, Error> {
    let (degs, points, mu, labels) = match side {
        Side::M => (&mg.a, eval_points(lam_n, &mg.a), lam_m, mg.m_basis()),
        Side::N => (&mg.b, eval_points(lam_m, &mg.b), lam_n, mg.n_basis()),
    };
    let prefactor = falling(&RatFun::u(), mu.len() as u32).mul(&prod_linear(&points));
    let op = theta_bethe(degs, &points, mu, labels.clone())?.lmul_fun(&prefactor);
    Ok(RepOperator { labels, prefactor, op: op.to_kind(OreKind::Diff)? })
}

/// Pencil of `rep_d_theta`: `(u+n)^i((u−m+1)d)^j` on side M and
/// `(u+m)^j((u−n+1)d)^i` on side N.
pub fn theta_pencil<K: Coeff>(mg: &Margins, side: Side) -> PencilBasis<K> {
    let (n, m) = (mg.n() as i64, mg.m() as i64);
    match side {
        Side::M => mixed(n, 1 - m),
        Side::N => mixed(m, 1 - n),
    }
}

/// `Π(u−z_i)·D^{XXX}_m(a,λ^{(n)};b,ξ)` with
/// `D^{XXX} = Σ_k (−1)^k [Σ_{|J|=k} Π_{j∈J}ξ_j t_J(u)] τ^{m−k}` on
/// `S^{(m)}(a,z)[b]`, shift kind.
pub fn rep_d_xxx<K: Coeff>(mg: &Margins, z: &[RatFun<K>], xi: &[RatFun<K>]) -> Result<RepOperator<K>, Error> {
    let m = mg.m();
    if xi.len() != m || z.len() != mg.n() {
        return Err(Error::Config("xi must have m entries and z n entries".into()));
    }
    let labels = mg.m_basis();
    let d = TWords::new(m, z, OreKind::Shift).assemble_d(&BetheWeights::Scaled(xi.to_vec()));
    let carrier = Carrier::new(m, sym_factors(&mg.a));
    let prefactor = prod_linear(z);
    let op = d.realize_on(&carrier, &labels)?.lmul_fun(&prefactor);
    Ok(RepOperator { labels, prefactor, op })
}

/// Every pair of grid entries commutes.
pub fn grid_commutes<K: Coeff>(grids: &[&Grid<K>]) -> bool {
    let all: Vec<&Mat<RatFun<K>>> = grids.iter().flat_map(|g| g.grid.values()).collect();
    all.iter().enumerate().all(|(p, a)| all[p + 1..].iter().all(|b| a.commutator(b).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Rat, Var};
    use crate::ore::pencil::apply_f;

    type Rf = RatFun<Rat>;

    fn sym(n: usize, m: usize) -> (Vec<MPoly<Rat>>, Vec<MPoly<Rat>>) {
        let lambda: Vec<MPoly<Rat>> = (1..=n + m).map(|i| MPoly::var(Var::lambda(i))).collect();
        split_lambda(&lambda, n)
    }

    #[test]
    fn margins_and_bases() {
        let mg = Margins::new(vec![1, 1], vec![1, 1]).unwrap();
        assert_eq!(mg.m_basis().len(), 2);
        assert_eq!(mg.n_basis().len(), 2);
        assert!(Margins::new(vec![2], vec![1]).is_err());
    }

    #[test]
    fn gl1_scalar_pencils() {
        // hand expansion: A11 = 1, A01 = λ1 − N, A10 = −(λ2 + N), A00 = N − λ1λ2
        for big_n in [1u32, 3] {
            let mg = Margins::new(vec![big_n], vec![big_n]).unwrap();
            let (ln, lm) = sym(1, 1);
            let gm = rep_d_theta(&mg, Side::M, &ln, &lm).unwrap().grid(theta_pencil(&mg, Side::M)).unwrap();
            let l1 = Rf::var(Var::lambda(1));
            let l2 = Rf::var(Var::lambda(2));
            let nn = Rf::from_i64(big_n as i64);
            let at = |i, j| gm.get(i, j).unwrap().get(0, 0).clone();
            assert_eq!(at(1, 1), Rf::one());
            assert_eq!(at(0, 1), l1.sub(&nn));
            assert_eq!(at(1, 0), l2.add(&nn).neg());
            assert_eq!(at(0, 0), nn.sub(&l1.mul(&l2)));
            let gn = rep_d_theta(&mg, Side::N, &ln, &lm).unwrap().grid(theta_pencil(&mg, Side::N)).unwrap();
            assert_eq!(apply_f(&gn).unwrap().grid, gm.grid);
        }
    }

    #[test]
    fn xxx_gl1() {
        // D = τ − ξ(1 + N/(u − z)), times (u − z)
        let mg = Margins::new(vec![2], vec![2]).unwrap();
        let z = vec![Rf::var(Var::z(1))];
        let xi = vec![Rf::var(Var::xi(1))];
        let x = rep_d_xxx(&mg, &z, &xi).unwrap();
        let uz = RatFun::u().sub(&z[0]);
        assert_eq!(x.op.coeff(1).unwrap().get(0, 0), &uz);
        assert_eq!(x.op.coeff(0).unwrap().get(0, 0), &uz.add(&Rf::from_i64(2)).mul(&xi[0]).neg());
    }

    #[test]
    fn xxx_at_zero_xi_is_pure_shift() {
        // every nonempty J carries a factor ξ_j

        let mg = Margins::new(vec![1, 1], vec![1, 1]).unwrap();
        let z = vec![Rf::from_i64(3), Rf::from_i64(-2)];
        let x = rep_d_xxx(&mg, &z, &[Rf::zero(), Rf::zero()]).unwrap();
        assert_eq!(x.op.terms().len(), 1);
        assert_eq!(x.op.coeff(2).unwrap(), &Mat::scalar(2, &x.prefactor));
    }
}
