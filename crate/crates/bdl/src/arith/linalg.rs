//! Fraction-free elimination, null spaces, linear solves and characteristic
//! polynomials.

use super::field::{Coeff, Field, Fp, Rat, Ring};
use super::mat::Mat;
use super::mpoly::MPoly;
use super::ratfun::{ArithError, RatFun};

/// Integral domain with exact division.
pub trait ExactDiv: Ring {
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

impl<K: Coeff> ExactDiv for MPoly<K> {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        MPoly::div_exact(self, o)
    }
}

impl ExactDiv for Rat {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Field::div(self, o)
    }
}

impl ExactDiv for Fp {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Field::div(self, o)
    }
}

/// A field presented as the fractions of a domain with exact division, so that
/// elimination can run fraction-free on cleared rows.
pub trait FractionField: Field {
    type Dom: ExactDiv;
    /// Multiplies a row by a common denominator, returning domain elements.
    fn clear_row(row: &[Self]) -> Vec<Self::Dom>;
    fn embed(d: &Self::Dom) -> Self;
}

impl<K: Coeff> FractionField for RatFun<K> {
    type Dom = MPoly<K>;

    fn clear_row(row: &[Self]) -> Vec<MPoly<K>> {
        let mut l = MPoly::<K>::one();
        for x in row {
            if x.is_zero() || x.den().is_constant() {
                continue;
            }
            let g = l.gcd(x.den());
            l = l.mul(&x.den().div_exact(&g).expect("gcd divides"));
        }
        row.iter()
            .map(|x| {
                if x.is_zero() {
                    MPoly::zero()
                } else {
                    x.num()
                        .mul(&l.div_exact(x.den()).expect("lcm is a multiple"))
                }
            })
            .collect()
    }

    fn embed(d: &MPoly<K>) -> Self {
        RatFun::from_poly(d.clone())
    }
}

impl FractionField for Rat {
    type Dom = Rat;
    fn clear_row(row: &[Self]) -> Vec<Rat> {
        row.to_vec()
    }
    fn embed(d: &Rat) -> Self {
        d.clone()
    }
}

impl FractionField for Fp {
    type Dom = Fp;
    fn clear_row(row: &[Self]) -> Vec<Fp> {
        row.to_vec()
    }
    fn embed(d: &Fp) -> Self {
        *d
    }
}

/// Row echelon form of a domain matrix by Bareiss elimination.
pub struct Echelon<D> {
    pub mat: Mat<D>,
    pub pivots: Vec<usize>,
}

/// Fraction-free row echelon form. Every division is exact; a failure would
/// indicate an arithmetic bug and panics.
pub fn bareiss_echelon<D: ExactDiv>(m: &Mat<D>) -> Echelon<D> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<D>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = D::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let aic = a[i][c].clone();
            for j in c + 1..cols {
                let t = piv.mul(&a[i][j]).sub(&aic.mul(&a[r][j]));
                a[i][j] = if prev.is_one() {
                    t
                } else {
                    t.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
            a[i][c] = D::zero();
        }
        // Rows without a fresh pivot stay scaled consistently with `prev`.
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        mat: Mat::from_rows(a),
        pivots,
    }
}

fn cleared<F: FractionField>(m: &Mat<F>) -> Mat<F::Dom> {
    Mat::from_rows((0..m.rows()).map(|i| F::clear_row(m.row(i))).collect())
}

pub fn rank<F: FractionField>(m: &Mat<F>) -> usize {
    bareiss_echelon(&cleared(m)).pivots.len()
}

/// Basis of the right null space `{v : M v = 0}`.
pub fn kernel<F: FractionField>(m: &Mat<F>) -> Vec<Vec<F>> {
    let e = bareiss_echelon(&cleared(m));
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    let a = e.mat.map(|x| F::embed(x));
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); cols];
            x[f] = F::one();
            for (i, &p) in e.pivots.iter().enumerate().rev() {
                let mut s = F::zero();
                for j in p + 1..cols {
                    if !x[j].is_zero() && !a.get(i, j).is_zero() {
                        s = s.add(&a.get(i, j).mul(&x[j]));
                    }
                }
                x[p] = s.neg().div(a.get(i, p)).expect("pivot is nonzero");
            }
            x
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    /// The system has no solution.
    Inconsistent,
    /// The solution is not unique.
    Singular,
}

/// Unique solution `X` of `A X = B` (columns of `B` are right-hand sides).
pub fn solve<F: FractionField>(a: &Mat<F>, b: &Mat<F>) -> Result<Mat<F>, SolveError> {
    let n = a.cols();
    let aug = a.hstack(b);
    let e = bareiss_echelon(&cleared(&aug));
    if e.pivots.iter().any(|&p| p >= n) {
        return Err(SolveError::Inconsistent);
    }
    if e.pivots.len() < n {
        return Err(SolveError::Singular);
    }
    let m = e.mat.map(|x| F::embed(x));
    let mut out = Mat::zeros(n, b.cols());
    for k in 0..b.cols() {
        let mut x = vec![F::zero(); n];
        for i in (0..n).rev() {
            let mut s = m.get(i, n + k).clone();
            for j in i + 1..n {
                if !x[j].is_zero() && !m.get(i, j).is_zero() {
                    s = s.sub(&m.get(i, j).mul(&x[j]));
                }
            }
            x[i] = s.div(m.get(i, i)).expect("pivot is nonzero");
        }
        for (i, v) in x.into_iter().enumerate() {
            out.set(i, k, v);
        }
    }
    Ok(out)
}

/// Characteristic polynomial `det(xI − M)` by Berkowitz's division-free
/// algorithm. Coefficients are returned in ascending degree; the last is 1.
pub fn charpoly<T: Ring>(m: &Mat<T>) -> Result<Vec<T>, ArithError> {
    if !m.is_square() {
        return Err(ArithError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    // Descending coefficient vector of the leading k×k principal block.
    let mut q: Vec<T> = vec![T::one()];
    for k in 0..n {
        let a = m.get(k, k).clone();
        let row: Vec<T> = (0..k).map(|j| m.get(k, j).clone()).collect();
        let mut col: Vec<T> = (0..k).map(|i| m.get(i, k).clone()).collect();
        let mut t = Vec::with_capacity(k + 2);
        t.push(T::one());
        t.push(a.neg());
        for _ in 0..k {
            let mut s = T::zero();
            for (r, c) in row.iter().zip(&col) {
                s = s.add(&r.mul(c));
            }
            t.push(s.neg());
            col = (0..k)
                .map(|i| {
                    let mut acc = T::zero();
                    for (j, c) in col.iter().enumerate() {
                        acc = acc.add(&m.get(i, j).mul(c));
                    }
                    acc
                })
                .collect();
        }
        let mut nq = vec![T::zero(); k + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, qj) in q.iter().enumerate() {
                if i + j < k + 2 && !ti.is_zero() && !qj.is_zero() {
                    nq[i + j] = nq[i + j].add(&ti.mul(qj));
                }
            }
        }
        q = nq;
    }
    q.reverse();
    Ok(q)
}

pub fn det<T: Ring>(m: &Mat<T>) -> Result<T, ArithError> {
    let p = charpoly(m)?;
    let c0 = p[0].clone();
    Ok(if m.rows() % 2 == 1 { c0.neg() } else { c0 })
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn horner<T: Ring>(coeffs: &[T], x: &T) -> T {
    let mut acc = T::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}
