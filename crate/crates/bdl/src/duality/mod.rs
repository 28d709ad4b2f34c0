//! The identification `Ψ` of `S^{(m)}(a)[b]` with `S^{(n)}(b)[a]`, and the
//! checks built on it: XXX / trigonometric Gaudin duality, duality of the
//! dynamical Hamiltonians, residue formulas, the `r → ∞` degeneration, the
//! two routes to `𝔇^{tG}`, and spectral certificates for the pair
//! `(D_m, D_n)`.

pub mod spectral;

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::arith::{Coeff, MPoly, Mat, RatFun, Ring, Var};
use crate::error::Error;
use crate::glk::contingency::Table;
use crate::glk::TLabel;
use crate::ore::pencil::apply_f;
use crate::ore::{OreKind, OperatorPencil, PencilBasis};
use crate::rep::degeneration::degeneration;
use crate::rep::gaudin::{rep_tg_quotient, rep_tg_theta, tg_pencil};
use crate::rep::hamiltonians::{coefficient_series, hamiltonians_g, hamiltonians_h, residue_hamiltonians};
use crate::rep::{eval_points, grid_commutes, rep_d_theta, rep_d_xxx, theta_pencil, Margins};
use crate::report::VerificationReport;
use crate::unm::{Grid, Side};

/// `Ψ : v^{(m)}_K ↦ v^{(n)}_K`. Both bases are listed in the same order of
/// contingency tables, so `Ψ` is the identity on coordinates and `Ψ̂` leaves
/// matrices unchanged; any mismatch a check reports is therefore an
/// operator mismatch, not an indexing one.
#[derive(Clone, Debug)]
pub struct Psi {
    pub tables: Vec<Table>,
    pub m_basis: Vec<TLabel>,
    pub n_basis: Vec<TLabel>,
}

impl Psi {
    pub fn new(mg: &Margins) -> Self {
        Psi { tables: mg.tables(), m_basis: mg.m_basis(), n_basis: mg.n_basis() }
    }

    pub fn dim(&self) -> usize {
        self.tables.len()
    }

    /// Index of `Ψ(v^{(m)}_{K_idx})` in the basis of `S^{(n)}(b)[a]`.
    pub fn image(&self, idx: usize) -> usize {
        idx
    }

    /// `Ψ̂(X) = Ψ X Ψ^{-1}`.
    pub fn conjugate<T: Ring>(&self, x: &Mat<T>) -> Mat<T> {
        Mat::from_fn(x.rows(), x.cols(), |r, c| x.get(self.image(r), self.image(c)).clone())
    }
}

fn strs<T: std::fmt::Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn instance(mg: &Margins, extra: &[(&str, Vec<String>)]) -> Value {
    let mut v = json!({ "n": mg.n(), "m": mg.m(), "a": mg.a, "b": mg.b });
    for (k, x) in extra {
        v[*k] = json!(x);
    }
    v
}

/// First key where `x[k] ≠ Ψ̂(y[key(k)])`, over the union of supports.
fn grid_mismatch<K: Coeff>(
    x: &Grid<K>,
    y: &Grid<K>,
    key: impl Fn((u32, u32)) -> (u32, u32),
    psi: &Psi,
) -> Option<((u32, u32), Value)> {
    let keys: BTreeSet<(u32, u32)> = x.grid.keys().copied().chain(y.grid.keys().map(|&k| key(k))).collect();
    let d = psi.dim();
    let zero = Mat::zeros(d, d);
    keys.into_iter().find_map(|k| {
        let lhs = x.grid.get(&k).unwrap_or(&zero);
        let rhs = psi.conjugate(y.grid.get(&key(k)).unwrap_or(&zero));
        (lhs != &rhs).then(|| (k, json!({ "position": k, "lhs": lhs.to_string(), "rhs": rhs.to_string() })))
    })
}

/// `(Ã^{(m)}, Ã^{(n)})`: the grid of `Π(u−z_i−n)·D^{XXX}` with `u ↦ u−n`
/// in `u^iτ^j` (key `(i, j)`), and the grid of `u^nΠ(u−ξ_j)·𝔇^{tG}` in
/// `u^j(u∂)^i` (key `(j, i)`).
pub fn main3_grids<K: Coeff>(mg: &Margins, xi: &[RatFun<K>], lam_n: &[MPoly<K>]) -> Result<(Grid<K>, Grid<K>), Error> {
    let z = eval_points(lam_n, &mg.a);
    let shift = K::from_i64(-(mg.n() as i64));
    let xxx = rep_d_xxx(mg, &z, xi)?.op.map_coeffs(|x| x.map(|f| f.shift(Var::U, &shift)));
    let gm = OperatorPencil::from_operator(&xxx, PencilBasis::Power { alpha: K::zero(), gen: OreKind::Shift })?;
    let gn = rep_tg_theta(mg, xi, lam_n)?.grid(tg_pencil())?;
    Ok((gm, gn))
}

/// `Ψ̂(Ã^{(m)}_{ij}) = Ã^{(n)}_{ji}` and `Ã^{(m)}` supported in `i ≤ n, j ≤ m`.
pub fn verify_main3<K: Coeff>(mg: &Margins, xi: &[RatFun<K>], lam_n: &[MPoly<K>], seed: u64) -> Result<VerificationReport, Error> {
    let item = instance(mg, &[("xi", strs(xi)), ("lambda_n", strs(lam_n))]);
    let mut rep = VerificationReport::new("main3", item.clone(), seed, K::mode_name());
    let (gm, gn) = main3_grids(mg, xi, lam_n)?;
    let psi = Psi::new(mg);
    let (si, sj) = gm.support();
    let support_ok = si as usize <= mg.n() && sj as usize <= mg.m();
    let bad = grid_mismatch(&gm, &gn, |(i, j)| (j, i), &psi);
    rep.record(item, support_ok && bad.is_none(), || {
        let mut w = bad.map_or(json!({}), |(_, w)| w);
        w["support"] = json!([si, sj]);
        w
    });
    Ok(rep)
}

/// `Ψ̂(Ḡ_i(z,ξ)) = H̄_i(z,ξ)` for every `i`.
pub fn verify_hamiltonian_duality<K: Coeff>(mg: &Margins, xi: &[RatFun<K>], z: &[RatFun<K>], seed: u64) -> Result<VerificationReport, Error> {
    let item = instance(mg, &[("xi", strs(xi)), ("z", strs(z))]);
    let mut rep = VerificationReport::new("hamiltonians", item.clone(), seed, K::mode_name());
    let g = hamiltonians_g(mg, z, xi)?;
    let h = hamiltonians_h(mg, z, xi)?;
    let psi = Psi::new(mg);
    let bad = g.iter().zip(&h).position(|(gi, hi)| &psi.conjugate(gi) != hi);
    rep.record(item, bad.is_none(), || {
        let i = bad.unwrap_or(0);
        json!({ "i": i + 1, "g": g[i].to_string(), "h": h[i].to_string() })
    });
    Ok(rep)
}

/// `H̄_i` from the coefficients `C_1, C_2` of `𝔇^{tG}` and `Ḡ_i` from the
/// coefficients `D_1, D_2` of `D^{XXX}`, at `z = λ^{(n)} + a − (1,…,n)`.
pub fn verify_residues<K: Coeff>(mg: &Margins, xi: &[RatFun<K>], lam_n: &[MPoly<K>], seed: u64) -> Result<VerificationReport, Error> {
    let item = instance(mg, &[("xi", strs(xi)), ("lambda_n", strs(lam_n))]);
    let mut rep = VerificationReport::new("residues", item.clone(), seed, K::mode_name());
    let n = mg.n();
    let z = eval_points(lam_n, &mg.a);
    let tg = rep_tg_theta(mg, xi, lam_n)?;
    let gc = tg.grid(PencilBasis::PowerDeriv)?;
    let cs: Vec<_> = (1..=2).map(|k| coefficient_series(&gc, |i, j| (i, j), n, k, xi, tg.dim())).collect();
    let h_res = residue_hamiltonians(&cs[0], &cs[1], xi, &mg.b)?;
    let xxx = rep_d_xxx(mg, &z, xi)?;
    let gd = xxx.grid(PencilBasis::FallingShift { alpha: K::from_i64(n as i64) })?;
    let ds: Vec<_> = (1..=2).map(|k| coefficient_series(&gd, |j, i| (i, j), n, k, xi, xxx.dim())).collect();
    let g_res = residue_hamiltonians(&ds[0], &ds[1], xi, &mg.b)?;
    let h = hamiltonians_h(mg, &z, xi)?;
    let g = hamiltonians_g(mg, &z, xi)?;
    for (name, got, want) in [("H", &h_res, &h), ("G", &g_res, &g)] {
        let bad = got.iter().zip(want).position(|(x, y)| x != y);
        let mut it = item.clone();
        it["family"] = json!(name);
        rep.record(it, bad.is_none(), || {
            let i = bad.unwrap_or(0);
            json!({ "family": name, "i": i + 1, "residue": got[i].to_string(), "explicit": want[i].to_string() })
        });
    }
    Ok(rep)
}

/// `𝔇^{tG}` through θ equals `𝔇^{tG}` through the left-ideal quotient.
pub fn verify_tg_routes<K: Coeff>(mg: &Margins, xi: &[RatFun<K>], lam_n: &[MPoly<K>], seed: u64) -> Result<VerificationReport, Error> {
    let item = instance(mg, &[("xi", strs(xi)), ("lambda_n", strs(lam_n))]);
    let mut rep = VerificationReport::new("tg-routes", item.clone(), seed, K::mode_name());
    let a = rep_tg_theta(mg, xi, lam_n)?.grid(tg_pencil())?;
    let b = rep_tg_quotient(mg, xi, lam_n)?.grid(tg_pencil())?;
    let bad = grid_mismatch(&a, &b, |k| k, &Psi::new(mg));
    rep.record(item, bad.is_none(), || bad.map_or(json!({}), |(_, w)| w));
    Ok(rep)
}

/// `λ^{(m)} = rξ`, `r → ∞`: degree bounds and top coefficients on both
/// sides.
pub fn verify_degeneration<K: Coeff>(mg: &Margins, lam_n: &[MPoly<K>], xi: &[MPoly<K>], seed: u64) -> Result<VerificationReport, Error> {
    let item = instance(mg, &[("xi", strs(xi)), ("lambda_n", strs(lam_n))]);
    let mut rep = VerificationReport::new("degeneration", item.clone(), seed, K::mode_name());
    let dg = degeneration(mg, lam_n, xi)?;
    for (side, bad) in [("xxx", dg.d_mismatch()), ("gaudin", dg.c_mismatch())] {
        let mut it = item.clone();
        it["side"] = json!(side);
        rep.record(it, bad.is_none(), || {
            let (k, msg) = bad.clone().unwrap_or(((0, 0), String::new()));
            json!({ "side": side, "position": k, "detail": msg })
        });
    }
    Ok(rep)
}

/// Grids of `D_m` and `D_n` through θ: supports, commutativity, and
/// `charpoly(Σ c A^{(m)}_{ij}) = charpoly(Σ c A^{(n)}_{ji})` for `trials`
/// random `c`. A perturbed copy of the `D_n` family must fail the same
/// certificate.
pub fn verify_rep_duality<K: Coeff>(
    mg: &Margins,
    lam_n: &[MPoly<K>],
    lam_m: &[MPoly<K>],
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, Error> {
    let item = instance(mg, &[("lambda_n", strs(lam_n)), ("lambda_m", strs(lam_m))]);
    let mut rep = VerificationReport::new("duality-rep-spectra", item.clone(), seed, K::mode_name());
    let gm = rep_d_theta(mg, Side::M, lam_n, lam_m)?.grid(theta_pencil(mg, Side::M))?;
    let gn = rep_d_theta(mg, Side::N, lam_n, lam_m)?.grid(theta_pencil(mg, Side::N))?;
    let (n, m) = (mg.n() as u32, mg.m() as u32);
    let (sm, sn) = (gm.support(), gn.support());
    let support_ok = sm.0 <= n && sm.1 <= m && sn.0 <= m && sn.1 <= n;
    rep.record(json!("support"), support_ok, || json!({ "support_m": sm, "support_n": sn }));
    let commute = grid_commutes(&[&gm]) && grid_commutes(&[&gn]);
    rep.record(json!("commute"), commute, || json!({ "entries_commute": false }));

    let fnn = apply_f(&gn)?;
    let keys: Vec<(u32, u32)> = gm.grid.keys().chain(fnn.grid.keys()).copied().collect::<BTreeSet<_>>().into_iter().collect();
    let d = gm.grid.values().next().map_or(0, |x| x.rows());
    let pick = |g: &Grid<K>| -> Vec<Mat<RatFun<K>>> {
        keys.iter().map(|k| g.grid.get(k).cloned().unwrap_or_else(|| Mat::zeros(d, d))).collect()
    };
    let (x, y) = (pick(&gm), pick(&fnn));
    let cert = spectral::spectral_certificate("duality-rep-spectra", &x, &y, trials, seed);
    rep.merge(cert);
    let perturbed = spectral::perturb(&y, keys.len() - 1);
    let control = spectral::spectral_certificate("negative-control", &x, &perturbed, trials, seed);
    rep.record(json!("negative_control"), !control.pass, || json!({ "negative_control": "perturbed family passed" }));
    rep.params = item;
    Ok(rep)
}
