//! Constant-coefficient grids in mixed bases such as `(u+α)^i((u+β)d)^j`.

use std::collections::BTreeMap;

use super::{falling, rising, OreCoeff, OreError, OreKind, OreOp};
use crate::arith::{Coeff, Field, RatFun, Ring, Var};

/// Basis `{P_i(u)·Q_j}` of a pencil; `i` indexes the polynomial part and `j`
/// the generator part.
#[derive(Clone, Debug, PartialEq)]
pub enum PencilBasis<K> {
    /// `(u+α)^i ((u+β)d)^j`
    Mixed { alpha: K, beta: K },
    /// `(u+α)^i g^j` with `g` τ or u∂.
    Power { alpha: K, gen: OreKind },
    /// `(u+α)^{falling i} τ^j`
    FallingShift { alpha: K },
    /// `(u+α)^{falling i} ((u+β)d)^j`
    FallingMixed { alpha: K, beta: K },
    /// `(u+α)^i (u+β)^{rising j} d^j`
    RisingDiff { alpha: K, beta: K },
    /// `u^{i+j} ∂^j`
    PowerDeriv,
}

impl<K: Coeff> PencilBasis<K> {
    /// Kind in which the generator part is expanded.
    pub fn native_kind(&self) -> OreKind {
        match self {
            PencilBasis::Mixed { .. } | PencilBasis::RisingDiff { .. } | PencilBasis::FallingMixed { .. } => {
                OreKind::Diff
            }
            PencilBasis::Power { gen, .. } => *gen,
            PencilBasis::FallingShift { .. } => OreKind::Shift,
            PencilBasis::PowerDeriv => OreKind::Deriv,
        }
    }

    /// Polynomial part `P_i(u)`.
    pub fn poly(&self, i: u32) -> RatFun<K> {
        let shifted = |a: &K| RatFun::var_plus(Var::U, a.clone());
        match self {
            PencilBasis::Mixed { alpha, .. }
            | PencilBasis::Power { alpha, .. }
            | PencilBasis::RisingDiff { alpha, .. } => shifted(alpha).pow(i),
            PencilBasis::FallingShift { alpha } | PencilBasis::FallingMixed { alpha, .. } => {
                falling(&shifted(alpha), i)
            }
            PencilBasis::PowerDeriv => RatFun::u().pow(i),
        }
    }

    /// Generator part `Q_j` as a scalar operator of the native kind.
    pub fn gen_part(&self, j: u32) -> OreOp<RatFun<K>> {
        let kind = self.native_kind();
        match self {
            PencilBasis::Mixed { beta, .. } | PencilBasis::FallingMixed { beta, .. } => {
                let x = OreOp::fun_gen(kind, RatFun::var_plus(Var::U, beta.clone()));
                x.pow(j, &RatFun::one())
            }
            PencilBasis::RisingDiff { beta, .. } => OreOp::monomial(
                kind,
                rising(&RatFun::var_plus(Var::U, beta.clone()), j),
                j,
            ),
            PencilBasis::Power { .. } | PencilBasis::FallingShift { .. } => {
                OreOp::monomial(kind, RatFun::one(), j)
            }
            PencilBasis::PowerDeriv => OreOp::monomial(kind, RatFun::u().pow(j), j),
        }
    }
}

/// `Σ A_ij P_i(u) Q_j` with `u`-free coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPencil<T, K> {
    pub basis: PencilBasis<K>,
    pub grid: BTreeMap<(u32, u32), T>,
}

/// Expands a polynomial (given by ascending `u`-coefficients) in the basis
/// `P_i`; every `P_i` is monic of degree `i`.
fn expand_poly<T: OreCoeff>(
    mut coeffs: Vec<T>,
    basis: &PencilBasis<T::K>,
) -> BTreeMap<u32, T> {
    let mut out = BTreeMap::new();
    while let Some(top) = coeffs.pop() {
        let d = coeffs.len() as u32;
        if top.vanishes() {
            continue;
        }
        let p = basis
            .poly(d)
            .coeffs_in(Var::U)
            .expect("basis polynomial");
        for (k, pk) in p.iter().enumerate().take(d as usize) {
            if !pk.is_zero() {
                coeffs[k] = coeffs[k].minus(&top.scale_fun(pk));
            }
        }
        out.insert(d, top);
    }
    out
}

impl<T: OreCoeff> OperatorPencil<T, T::K> {
    /// Decides membership of `x` in the span of the basis with `u`-free
    /// coefficients and returns the grid. Elimination runs from the top
    /// generator power down.
    pub fn from_operator(x: &OreOp<T>, basis: PencilBasis<T::K>) -> Result<Self, OreError> {
        let kind = basis.native_kind();
        let x = x.to_kind(kind)?;
        let mut grid = BTreeMap::new();
        let Some(top) = x.degree() else {
            return Ok(OperatorPencil { basis, grid });
        };
        let mut resid: BTreeMap<u32, T> = x.terms().clone();
        let gens: Vec<OreOp<RatFun<T::K>>> = (0..=top).map(|j| basis.gen_part(j)).collect();
        for k in (0..=top).rev() {
            let Some(f) = resid.remove(&k) else { continue };
            if f.vanishes() {
                continue;
            }
            let q = gens[k as usize]
                .coeff(k)
                .cloned()
                .expect("generator part has its top term");
            let h = f.scale_fun(&q.inv().expect("nonzero leading factor"));
            let coeffs = h.u_coeffs().ok_or_else(|| {
                OreError::NotInPencil(format!(
                    "coefficient of {}^{k} is not a polynomial multiple of the leading factor",
                    kind
                ))
            })?;
            let expanded = expand_poly(coeffs, &basis);
            for (i, a) in expanded {
                let pi = basis.poly(i);
                for (l, ql) in gens[k as usize].terms() {
                    if *l == k {
                        continue;
                    }
                    let c = a.scale_fun(&pi.mul(ql));
                    let e = resid.remove(l).map(|r| r.minus(&c)).unwrap_or_else(|| c.negated());
                    if !e.vanishes() {
                        resid.insert(*l, e);
                    }
                }
                grid.insert((i, k), a);
            }
        }
        Ok(OperatorPencil { basis, grid })
    }

    /// Rebuilds the operator in the native kind of the basis.
    pub fn to_operator(&self) -> OreOp<T> {
        let kind = self.basis.native_kind();
        let mut out = OreOp::zero(kind);
        for ((i, j), a) in &self.grid {
            let pi = self.basis.poly(*i);
            let q = self.basis.gen_part(*j);
            let term = OreOp::from_terms(
                kind,
                q.terms().iter().map(|(l, ql)| (*l, a.scale_fun(&pi.mul(ql)))),
            );
            out = out.add(&term).expect("same kind");
        }
        out
    }

    /// Largest indices present in the grid.
    pub fn support(&self) -> (u32, u32) {
        self.grid.keys().fold((0, 0), |(a, b), (i, j)| (a.max(*i), b.max(*j)))
    }

    pub fn get(&self, i: u32, j: u32) -> Option<&T> {
        self.grid.get(&(i, j))
    }
}

/// The anti-isomorphism `𝒫(n−1) → 𝒫(m−1)` sending `(u−n+1)d ↦ u+n` and
/// `u+m ↦ (u−m+1)d`. On grids in the bases `(u+m)^i((u−n+1)d)^j` and
/// `(u+n)^i((u−m+1)d)^j` it is the transpose.
pub fn apply_f<T: OreCoeff>(
    p: &OperatorPencil<T, T::K>,
) -> Result<OperatorPencil<T, T::K>, OreError> {
    let PencilBasis::Mixed { alpha, beta } = &p.basis else {
        return Err(OreError::BasisMismatch(
            "the map is defined on (u+m)^i((u-n+1)d)^j grids".into(),
        ));
    };
    // alpha = m, beta = 1 − n
    let one = <T::K as Ring>::one();
    let n = one.sub(beta);
    let m = alpha.clone();
    let basis = PencilBasis::Mixed {
        alpha: n,
        beta: one.sub(&m),
    };
    let grid = p.grid.iter().map(|((i, j), a)| ((*j, *i), a.clone())).collect();
    Ok(OperatorPencil { basis, grid })
}

/// `ℱ(XY) = ℱ(Y)ℱ(X)` for two pencils in the same mixed basis.
pub fn f_reverses_product<T: OreCoeff>(
    x: &OperatorPencil<T, T::K>,
    y: &OperatorPencil<T, T::K>,
) -> Result<bool, OreError> {
    let xy = x.to_operator().mul(&y.to_operator())?;
    let lhs = apply_f(&OperatorPencil::from_operator(&xy, x.basis.clone())?)?;
    let (fx, fy) = (apply_f(x)?, apply_f(y)?);
    let yx = fy.to_operator().mul(&fx.to_operator())?;
    let rhs = OperatorPencil::from_operator(&yx, fx.basis.clone())?;
    Ok(lhs.grid == rhs.grid)
}

/// `Σ_{i,j} A_ij (u+α)^i ((u+β)d)^j` basis for `𝒫(−β)` shifted by α.
pub fn mixed<K: Coeff>(alpha: i64, beta: i64) -> PencilBasis<K> {
    PencilBasis::Mixed {
        alpha: K::from_i64(alpha),
        beta: K::from_i64(beta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Rat, Rf};
    use crate::ore::u_plus;

    type Op = OreOp<Rf>;
    type Pen = OperatorPencil<Rf, Rat>;

    fn one(i: u32, j: u32) -> BTreeMap<(u32, u32), Rf> {
        [((i, j), Rf::one())].into_iter().collect()
    }

    #[test]
    fn single_generator() {
        let (n, m) = (2, 3);
        let x = Op::fun_gen(OreKind::Diff, u_plus(-m + 1));
        let p = Pen::from_operator(&x, mixed(n, -m + 1)).unwrap();
        assert_eq!(p.grid, one(0, 1));
    }

    #[test]
    fn rising_square_is_quadratic_in_x() {
        let c = 3;
        let x = Op::monomial(OreKind::Diff, rising(&u_plus(-c), 2), 2);
        let p = Pen::from_operator(&x, mixed(7, -c)).unwrap();
        let mut expected = one(0, 2);
        expected.insert((0, 1), Rf::from_i64(-1));
        assert_eq!(p.grid, expected);
    }

    #[test]
    fn linear_polynomial() {
        let n = 2;
        let x = Op::scalar(OreKind::Diff, u_plus(n));
        let p = Pen::from_operator(&x, mixed(n, 0)).unwrap();
        assert_eq!(p.grid, one(1, 0));
        let q = Pen::from_operator(&x, mixed(0, 0)).unwrap();
        let mut expected = one(1, 0);
        expected.insert((0, 0), Rf::from_i64(n));
        assert_eq!(q.grid, expected);
    }

    #[test]
    fn non_member_is_rejected() {
        let x = Op::gen(OreKind::Diff);
        assert!(matches!(
            Pen::from_operator(&x, mixed(0, -1)),
            Err(OreError::NotInPencil(_))
        ));
    }

    #[test]
    fn f_on_generators() {
        let (n, m) = (2, 3);
        let g = Pen {
            basis: mixed(m, -n + 1),
            grid: one(0, 1),
        };
        let h = apply_f(&g).unwrap();
        assert_eq!(h.basis, mixed(n, -m + 1));
        assert_eq!(h.grid, one(1, 0));
        let back = apply_f(&Pen {
            basis: mixed(m, -n + 1),
            grid: one(1, 0),
        })
        .unwrap();
        assert_eq!(back.grid, one(0, 1));
    }

    #[test]
    fn f_reverses_generator_products() {
        let (n, m) = (2, 3);
        let x = Pen { basis: mixed(m, -n + 1), grid: one(0, 1) };
        let mut y = Pen { basis: mixed(m, -n + 1), grid: one(1, 0) };
        y.grid.insert((2, 1), Rf::from_i64(-4));
        assert!(f_reverses_product(&x, &y).unwrap());
        assert!(f_reverses_product(&y, &x).unwrap());
    }

    #[test]
    fn roundtrip_through_operator() {
        let basis: PencilBasis<Rat> = mixed(1, -2);
        let mut grid = BTreeMap::new();
        grid.insert((0, 0), Rf::from_i64(3));
        grid.insert((2, 1), Rf::var(Var::lambda(1)));
        grid.insert((1, 3), Rf::from_i64(-5));
        let p = Pen { basis, grid };
        let op = p.to_operator();
        let q = Pen::from_operator(&op, p.basis.clone()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn other_bases_roundtrip() {
        let bases: Vec<PencilBasis<Rat>> = vec![
            PencilBasis::Power { alpha: Rat::from_i64(0), gen: OreKind::Shift },
            PencilBasis::Power { alpha: Rat::from_i64(0), gen: OreKind::Euler },
            PencilBasis::FallingShift { alpha: Rat::from_i64(2) },
            PencilBasis::RisingDiff { alpha: Rat::from_i64(2), beta: Rat::from_i64(-1) },
            PencilBasis::PowerDeriv,
        ];
        for basis in bases {
            let mut grid = BTreeMap::new();
            grid.insert((0, 1), Rf::from_i64(2));
            grid.insert((2, 2), Rf::var(Var::xi(1)));
            grid.insert((1, 0), Rf::from_i64(-1));
            let p = Pen { basis, grid };
            let q = Pen::from_operator(&p.to_operator(), p.basis.clone()).unwrap();
            assert_eq!(p, q);
        }
    }
}
