//! Trigonometric Gaudin Hamiltonians `H_i` on `S^{(n)}(b)[a]`, XXX dynamical
//! Hamiltonians `G_i` on `S^{(m)}(a)[b]`, and their recovery as residues of
//! the operator coefficients.

use super::{sym_factors, Margins};
use crate::arith::{ArithError, Coeff, Field, Mat, RatFun, Ring, Var};
use crate::error::Error;
use crate::glk::{Carrier, Letter, WordOp};
use crate::ore::{stirling1, OreKind};
use crate::unm::Grid;

const KIND: OreKind = OreKind::Shift;

fn letter<K: Coeff>(slot: usize, i: usize, j: usize) -> WordOp<K> {
    WordOp::letter(KIND, Letter::new(slot, i, j), RatFun::one())
}

fn total<K: Coeff>(slots: usize, i: usize, j: usize) -> WordOp<K> {
    (0..slots).fold(WordOp::zero(KIND), |acc, s| acc.add(&letter(s, i, j)))
}

fn half<K: Coeff>() -> RatFun<K> {
    RatFun::from_i64(2).inv().expect("2 is invertible")
}

fn realize<K: Coeff>(x: &WordOp<K>, carrier: &Carrier<K>, labels: &[crate::glk::TLabel]) -> Result<Mat<RatFun<K>>, Error> {
    let op = x.realize_on(carrier, labels)?;
    Ok(op.coeff(0).cloned().unwrap_or_else(|| Mat::zeros(labels.len(), labels.len())))
}

fn distinct<K: Coeff>(xi: &[RatFun<K>]) -> Result<(), Error> {
    for (p, x) in xi.iter().enumerate() {
        if xi[p + 1..].contains(x) {
            return Err(Error::Config("xi entries must be distinct".into()));
        }
    }
    Ok(())
}

/// `H^{(n)}_i(z,ξ)` in `U(gl_n)^{⊗m}` (0-based `i`).
pub fn h_word<K: Coeff>(n: usize, i: usize, z: &[RatFun<K>], xi: &[RatFun<K>]) -> WordOp<K> {
    let m = xi.len();
    let mut out = WordOp::zero(KIND);
    for j in 0..n {
        let coef = z[j].add(&RatFun::from_i64(n as i64));
        let eji = letter(i, j, j);
        out = out.add(&eji.lmul_fun(&coef));
        out = out.sub(&total(m, j, j).mul(&eji).lmul_fun(&half()));
    }
    for k in (0..m).filter(|&k| k != i) {
        let mut diag = WordOp::zero(KIND);
        let (mut plus, mut minus) = (WordOp::zero(KIND), WordOp::zero(KIND));
        for j in 0..n {
            diag = diag.add(&letter(i, j, j).mul(&letter(k, j, j)));
            for l in j + 1..n {
                plus = plus.add(&letter(i, j, l).mul(&letter(k, l, j)));
                minus = minus.add(&letter(i, l, j).mul(&letter(k, j, l)));
            }
        }
        let diag = diag.lmul_fun(&half());
        let inv = xi[i].sub(&xi[k]).inv().expect("distinct xi");
        let x = diag.add(&plus).lmul_fun(&xi[i]).add(&diag.add(&minus).lmul_fun(&xi[k]));
        out = out.add(&x.lmul_fun(&inv));
    }
    out
}

/// `G^{(m)}_i(z,ξ)` in `U(gl_m)^{⊗n}` (0-based `i`); the slot-`j` term
/// carries `z_j + n`.
pub fn g_word<K: Coeff>(n: usize, i: usize, z: &[RatFun<K>], xi: &[RatFun<K>]) -> WordOp<K> {
    let m = xi.len();
    let eii = total::<K>(n, i, i);
    let mut out = eii.mul(&eii).lmul_fun(&half()).neg();
    for (j, zj) in z.iter().enumerate() {
        out = out.add(&letter(j, i, i).lmul_fun(&zj.add(&RatFun::from_i64(n as i64))));
    }
    for j in 0..m {
        for k in 0..n {
            for l in k + 1..n {
                out = out.add(&letter(k, i, j).mul(&letter(l, j, i)));
            }
        }
    }
    for j in (0..m).filter(|&j| j != i) {
        let f = xi[j].div(&xi[i].sub(&xi[j])).expect("distinct xi");
        let x = total(n, i, j).mul(&total(n, j, i)).sub(&eii);
        out = out.add(&x.lmul_fun(&f));
    }
    out
}

/// `H̄_1,…,H̄_m` on `S^{(n)}(b)[a]`.
pub fn hamiltonians_h<K: Coeff>(mg: &Margins, z: &[RatFun<K>], xi: &[RatFun<K>]) -> Result<Vec<Mat<RatFun<K>>>, Error> {
    distinct(xi)?;
    let carrier = Carrier::new(mg.n(), sym_factors(&mg.b));
    let labels = mg.n_basis();
    (0..mg.m()).map(|i| realize(&h_word(mg.n(), i, z, xi), &carrier, &labels)).collect()
}

/// `Ḡ_1,…,Ḡ_m` on `S^{(m)}(a)[b]`.
pub fn hamiltonians_g<K: Coeff>(mg: &Margins, z: &[RatFun<K>], xi: &[RatFun<K>]) -> Result<Vec<Mat<RatFun<K>>>, Error> {
    distinct(xi)?;
    let carrier = Carrier::new(mg.m(), sym_factors(&mg.a));
    let labels = mg.m_basis();
    (0..mg.m()).map(|i| realize(&g_word(mg.n(), i, z, xi), &carrier, &labels)).collect()
}

/// `Res_{u=p} F(u)` for `F` with a pole of order at most `order` at `p`.
pub fn residue<K: Coeff>(f: &Mat<RatFun<K>>, p: &RatFun<K>, order: u32) -> Result<Mat<RatFun<K>>, Error> {
    let lin = RatFun::u().sub(p).pow(order);
    let mut g = f.scale(&lin);
    let mut fact = K::one();
    for t in 1..order {
        g = g.map(|x| x.deriv(Var::U));
        fact = fact.mul(&K::from_i64(t as i64));
    }
    let at = [(Var::U, p.clone())].into_iter().collect();
    let inv = fact.inv().ok_or(ArithError::DivisionByZero)?;
    Ok(g.try_map(|x| x.substitute(&at).map(|y| y.scale(&inv)))?)
}

/// `C_k(u) = Σ_i u^i Σ_j s(j, n−k) X_{ij} / Π(u−ξ)`, where `X_{ij}` is the
/// coefficient of `u^{i+j}∂^j` (or, on the XXX side, of
/// `(u+n)^{falling j}τ^i`); `index` maps a grid key to `(i, j)`.
pub fn coefficient_series<K: Coeff>(
    grid: &Grid<K>,
    index: impl Fn(u32, u32) -> (u32, u32),
    n: usize,
    k: usize,
    xi: &[RatFun<K>],
    dim: usize,
) -> Mat<RatFun<K>> {
    let den = super::prod_linear(xi).inv().expect("nonzero product");
    let mut out = Mat::zeros(dim, dim);
    if k > n {
        return out;
    }
    for (&(p, q), x) in &grid.grid {
        let (i, j) = index(p, q);
        let s = stirling1(j, (n - k) as u32);
        if s != 0 {
            let f = RatFun::u().pow(i).scale(&K::from_i64(s)).mul(&den);
            out = out.add(&x.scale(&f));
        }
    }
    out
}

/// `(1/ξ_i) Res_{u=ξ_i}(½X_1(u)² − X_2(u)) − ½b_i²` for each `i`.
pub fn residue_hamiltonians<K: Coeff>(
    x1: &Mat<RatFun<K>>,
    x2: &Mat<RatFun<K>>,
    xi: &[RatFun<K>],
    b: &[u32],
) -> Result<Vec<Mat<RatFun<K>>>, Error> {
    let f = x1.mul(x1).scale(&half()).sub(x2);
    let dim = f.rows();
    xi.iter()
        .zip(b)
        .map(|(p, &bi)| {
            let r = residue(&f, p, 2)?;
            let inv = p.inv().ok_or(ArithError::DivisionByZero)?;
            let sq = RatFun::from_i64((bi * bi) as i64).mul(&half());
            Ok(r.scale(&inv).sub(&Mat::scalar(dim, &sq)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    type Rf = RatFun<Rat>;

    #[test]
    fn simple_pole_residue() {
        let xi = Rf::var(Var::xi(1));
        let cst = Rf::var(Var::C);
        let f = Mat::scalar(1, &cst.div(&RatFun::u().sub(&xi)).unwrap().add(&RatFun::u()));
        assert_eq!(residue(&f, &xi, 1).unwrap().get(0, 0), &cst);
        assert_eq!(residue(&f, &xi, 3).unwrap().get(0, 0), &cst);
    }

    #[test]
    fn gl1_hamiltonians() {
        // G_1 = −a²/2 + (z+1)a, H_1 = (z+1−b/2)b
        let mg = Margins::new(vec![3], vec![3]).unwrap();
        let z = vec![Rf::var(Var::z(1))];
        let xi = vec![Rf::var(Var::xi(1))];
        let g = hamiltonians_g(&mg, &z, &xi).unwrap();
        let h = hamiltonians_h(&mg, &z, &xi).unwrap();
        let expect = z[0].add(&Rf::one()).scale(&Rat::from_i64(3)).sub(&Rf::from_i64(9).mul(&half()));
        assert_eq!(g[0].get(0, 0), &expect);
        assert_eq!(h[0].get(0, 0), &expect);
    }

    #[test]
    fn hamiltonians_commute_and_are_dual() {
        let mg = Margins::new(vec![1, 1], vec![1, 1]).unwrap();
        let z = vec![Rf::from_i64(5), Rf::var(Var::z(2))];
        let xi = vec![Rf::from_i64(2), Rf::from_i64(-3)];
        let g = hamiltonians_g(&mg, &z, &xi).unwrap();
        let h = hamiltonians_h(&mg, &z, &xi).unwrap();
        assert!(h[0].commutator(&h[1]).is_zero());
        assert!(g[0].commutator(&g[1]).is_zero());
        assert_eq!(g, h);
    }
}
