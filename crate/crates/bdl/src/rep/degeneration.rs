//! Degeneration `λ^{(m)} = rξ`, `r → ∞`: the grids of `D_m` and `D_n`
//! have entries of `r`-degree at most `m−i`, and their top coefficients
//! are the grids of the XXX and trigonometric Gaudin operators.

use std::collections::BTreeSet;

use super::gaudin::rep_tg_theta;
use super::{eval_points, rep_d_theta, rep_d_xxx, Margins};
use crate::arith::{Coeff, MPoly, Mat, RatFun, Ring, Var};
use crate::error::Error;
use crate::ore::PencilBasis;
use crate::unm::{Grid, Side};

/// `c` with `f = c·r^d + O(r^{d−1})` as `r → ∞`, or `None` if `f` grows
/// faster than `r^d`.
pub fn r_coefficient<K: Coeff>(f: &RatFun<K>, d: i64) -> Option<RatFun<K>> {
    if f.is_zero() {
        return Some(RatFun::zero());
    }
    let (num, den) = (f.num(), f.den());
    let excess = num.degree_in(Var::R) as i64 - den.degree_in(Var::R) as i64;
    if excess > d {
        return None;
    }
    if excess < d {
        return Some(RatFun::zero());
    }
    let lc = |p: &MPoly<K>| p.coeffs_in(Var::R).pop().expect("nonzero polynomial");
    Some(RatFun::new(lc(num), lc(den)).expect("nonzero leading coefficient"))
}

pub fn mat_r_coefficient<K: Coeff>(x: &Mat<RatFun<K>>, d: i64) -> Option<Mat<RatFun<K>>> {
    x.try_map(|f| r_coefficient(f, d).ok_or(())).ok()
}

/// The four grids compared under the degeneration.
#[derive(Clone, Debug)]
pub struct Degeneration<K> {
    pub n: usize,
    pub m: usize,
    pub dim_m: usize,
    pub dim_n: usize,
    /// `u^{falling m}Π(u−z)D_m` in `(u+n)^{falling j}((u−m+1)d)^i`, key `(j, i)`.
    pub d_grid: Grid<K>,
    /// `Π(u−z)D^{XXX}` in `(u+n)^{falling j}τ^i`, key `(j, i)`.
    pub xxx_grid: Grid<K>,
    /// `u^{falling n}Π(u−w)D_n` in `(u+m)^i(u−n+1)^{rising j}d^j`, key `(i, j)`.
    pub c_grid: Grid<K>,
    /// `u^nΠ(u−ξ)𝔇^{tG}` in `u^{i+j}∂^j`, key `(i, j)`.
    pub tg_grid: Grid<K>,
}

/// First position where a grid entry exceeds its `r`-degree bound or its
/// top coefficient differs from the limit grid.
fn compare<K: Coeff>(
    grid: &Grid<K>,
    limit: &Grid<K>,
    bound: impl Fn(u32, u32) -> i64,
    dim: usize,
) -> Option<((u32, u32), String)> {
    let keys: BTreeSet<(u32, u32)> = grid.grid.keys().chain(limit.grid.keys()).copied().collect();
    let zero = Mat::zeros(dim, dim);
    for k in keys {
        let x = grid.grid.get(&k).unwrap_or(&zero);
        let want = limit.grid.get(&k).unwrap_or(&zero);
        match mat_r_coefficient(x, bound(k.0, k.1)) {
            None => return Some((k, format!("r-degree exceeds {}", bound(k.0, k.1)))),
            Some(top) if &top != want => return Some((k, format!("top coefficient {top} != {want}"))),
            _ => {}
        }
    }
    None
}

impl<K: Coeff> Degeneration<K> {
    /// XXX side: bound `m − i` with `i` the power of `d`.
    pub fn d_mismatch(&self) -> Option<((u32, u32), String)> {
        let m = self.m as i64;
        compare(&self.d_grid, &self.xxx_grid, |_, i| m - i as i64, self.dim_m)
    }

    /// Gaudin side: bound `m − i` with `i` the power of `u+m`.
    pub fn c_mismatch(&self) -> Option<((u32, u32), String)> {
        let m = self.m as i64;
        compare(&self.c_grid, &self.tg_grid, |i, _| m - i as i64, self.dim_n)
    }
}

/// All four grids at `λ^{(m)} = rξ` with `r` symbolic.
pub fn degeneration<K: Coeff>(mg: &Margins, lam_n: &[MPoly<K>], xi: &[MPoly<K>]) -> Result<Degeneration<K>, Error> {
    let (n, m) = (mg.n(), mg.m());
    let r = MPoly::var(Var::R);
    let lam_m: Vec<MPoly<K>> = xi.iter().map(|x| x.mul(&r)).collect();
    let xi_f: Vec<RatFun<K>> = xi.iter().map(|x| RatFun::from_poly(x.clone())).collect();
    let z = eval_points(lam_n, &mg.a);
    let (ni, mi) = (K::from_i64(n as i64), K::from_i64(m as i64));
    let one = K::one();
    let d_op = rep_d_theta(mg, Side::M, lam_n, &lam_m)?;
    let d_grid = d_op.grid(PencilBasis::FallingMixed { alpha: ni.clone(), beta: one.sub(&mi) })?;
    let xxx_grid = rep_d_xxx(mg, &z, &xi_f)?.grid(PencilBasis::FallingShift { alpha: ni.clone() })?;
    let c_op = rep_d_theta(mg, Side::N, lam_n, &lam_m)?;
    let c_grid = c_op.grid(PencilBasis::RisingDiff { alpha: mi, beta: one.sub(&ni) })?;
    let tg_grid = rep_tg_theta(mg, &xi_f, lam_n)?.grid(PencilBasis::PowerDeriv)?;
    Ok(Degeneration { n, m, dim_m: d_op.dim(), dim_n: c_op.dim(), d_grid, xxx_grid, c_grid, tg_grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Rat};

    type Rf = RatFun<Rat>;

    #[test]
    fn leading_coefficients_in_r() {
        let r = Rf::var(Var::R);
        let f = r.mul(&r).scale(&Rat::from_i64(3)).add(&Rf::one()).div(&r.add(&Rf::from_i64(2))).unwrap();
        assert_eq!(r_coefficient(&f, 1), Some(Rf::from_i64(3)));
        assert_eq!(r_coefficient(&f, 2), Some(Rf::zero()));
        assert_eq!(r_coefficient(&f, 0), None);
    }

    #[test]
    fn gl1_degeneration() {
        let mg = Margins::new(vec![2], vec![2]).unwrap();
        let lam_n = vec![MPoly::var(Var::lambda(1))];
        let xi = vec![MPoly::constant(Rat::from_i64(3))];
        let dg = degeneration(&mg, &lam_n, &xi).unwrap();
        assert_eq!(dg.d_mismatch(), None);
        assert_eq!(dg.c_mismatch(), None);
    }
}
