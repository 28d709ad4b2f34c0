//! Scalar operator identities behind the pencil duality: the rising-factorial
//! expansion, the interleaved factorial operators `D^{(n)}_{J₁}`,
//! `D^{(m)}_{J₂}`, and the difference Wronskian.

use super::{delta_hat, falling, rising, u_plus, OreError, OreKind, OreOp};
use crate::arith::{det, Coeff, Field, Mat, RatFun, Ring, Var};

type Op<K> = OreOp<RatFun<K>>;

/// Outcome of comparing two operators.
#[derive(Clone, Debug)]
pub struct IdentityCheck<K> {
    pub lhs: Op<K>,
    pub rhs: Op<K>,
    pub residual: Op<K>,
}

impl<K: Coeff> IdentityCheck<K> {
    fn new(lhs: Op<K>, rhs: Op<K>) -> Result<Self, OreError> {
        let residual = lhs.sub(&rhs)?;
        Ok(IdentityCheck { lhs, rhs, residual })
    }

    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `(u−c)d − k` in the d-kind.
fn shifted_x<K: Coeff>(c: &RatFun<K>, k: i64) -> Op<K> {
    Op::from_terms(
        OreKind::Diff,
        [
            (1, RatFun::u().sub(c)),
            (0, RatFun::from_i64(-k)),
        ],
    )
}

fn product<K: Coeff>(factors: impl IntoIterator<Item = Op<K>>) -> Op<K> {
    let mut acc = Op::scalar(OreKind::Diff, RatFun::one());
    for f in factors {
        acc = acc.mul(&f).expect("d-kind factors");
    }
    acc
}

/// `(u−c)^{rising i} d^i = Π_{j=1}^{i} ((u−c)d − j + 1)`.
pub fn rising_power_identity<K: Coeff>(i: u32, c: &RatFun<K>) -> IdentityCheck<K> {
    let lhs = Op::monomial(OreKind::Diff, rising(&RatFun::u().sub(c), i), i);
    let rhs = product((1..=i).map(|j| shifted_x(c, j as i64 - 1)));
    IdentityCheck::new(lhs, rhs).expect("same kind")
}

/// `(u−n)^{falling m} / (u−n)^{falling (m−l)} = (u−n−m+1)^{rising l}`.
pub fn falling_ratio_identity<K: Coeff>(n: i64, m: u32, l: u32) -> bool {
    let x = u_plus::<K>(-n);
    let lhs = falling(&x, m)
        .div(&falling(&x, m - l))
        .expect("nonzero factorial");
    lhs == rising(&u_plus(-n - m as i64 + 1), l)
}

/// Interleaved product `1/(u−p₀)^{falling(p₁−p₀−1)} d 1/(u−p₁)^{falling(p₂−p₁−1)} d … `
/// over the breakpoints `start, j₁, …, j_r, end`.
fn interleaved<K: Coeff>(start: i64, js: &[i64], end: i64) -> Op<K> {
    let mut pts = vec![start];
    pts.extend_from_slice(js);
    pts.push(end);
    let mut acc = Op::scalar(OreKind::Diff, RatFun::one());
    for w in 0..pts.len() - 1 {
        let p = pts[w];
        let e = (pts[w + 1] - p - 1) as u32;
        let f = falling(&u_plus::<K>(-p), e).inv().expect("nonzero factorial");
        if w > 0 {
            acc = acc.mul(&Op::gen(OreKind::Diff)).expect("d-kind");
        }
        acc = acc.mul(&Op::scalar(OreKind::Diff, f)).expect("d-kind");
    }
    acc
}

/// `D^{(n)}_{J₁}` for `J₁ ⊆ {1..n}`.
pub fn d_n_j1<K: Coeff>(n: usize, j1: &[usize]) -> Op<K> {
    let js: Vec<i64> = j1.iter().map(|&j| j as i64).collect();
    interleaved(0, &js, n as i64 + 1)
}

/// `D^{(m)}_{J₂}` for `J₂ ⊆ {n+1..n+m}`.
pub fn d_m_j2<K: Coeff>(n: usize, m: usize, j2: &[usize]) -> Op<K> {
    let js: Vec<i64> = j2.iter().map(|&j| j as i64).collect();
    interleaved(n as i64, &js, (n + m) as i64 + 1)
}

/// Both factorization identities for one subset `J ⊆ {1..n+m}`.
#[derive(Clone, Debug)]
pub struct DjReport<K> {
    pub j: Vec<usize>,
    pub m_side: IdentityCheck<K>,
    pub n_side: IdentityCheck<K>,
}

impl<K: Coeff> DjReport<K> {
    pub fn holds(&self) -> bool {
        self.m_side.holds() && self.n_side.holds()
    }
}

pub fn scalar_dj_identity<K: Coeff>(n: usize, m: usize, j: &[usize]) -> Result<DjReport<K>, OreError> {
    let j1: Vec<usize> = j.iter().copied().filter(|&x| x <= n).collect();
    let j2: Vec<usize> = j.iter().copied().filter(|&x| x > n).collect();
    let nm = (n + m) as i64;
    let c = RatFun::from_i64(nm - 1);

    let lhs_m = d_m_j2::<K>(n, m, &j2).lmul_fun(&falling(&u_plus(-(n as i64)), m as u32));
    let rhs_m = product(j2.iter().map(|&x| shifted_x(&c, nm - x as i64)));

    let dh = delta_hat(&d_n_j1::<K>(n, &j1), nm)?;
    let lhs_n = dh.lmul_fun(&falling(&u_plus(-(m as i64)), n as u32));
    let sign = if (n - j1.len()).is_multiple_of(2) { 1 } else { -1 };
    let rhs_n = product(j1.iter().map(|&x| shifted_x(&c, x as i64 - 1)))
        .lmul_fun(&RatFun::from_i64(sign));

    Ok(DjReport {
        j: j.to_vec(),
        m_side: IdentityCheck::new(lhs_m, rhs_m)?,
        n_side: IdentityCheck::new(lhs_n, rhs_n)?,
    })
}

/// `det(((u−c)d)^{p−1} f_s)_{p,s}`.
pub fn difference_wronskian<K: Coeff>(funcs: &[RatFun<K>], c: &K) -> RatFun<K> {
    let x = Op::fun_gen(OreKind::Diff, RatFun::var_plus(Var::U, c.neg()));
    let k = funcs.len();
    let mut rows: Vec<Vec<RatFun<K>>> = Vec::with_capacity(k);
    let mut cur: Vec<RatFun<K>> = funcs.to_vec();
    for _ in 0..k {
        rows.push(cur.clone());
        cur = cur.iter().map(|f| x.apply(f)).collect();
    }
    det(&Mat::from_rows(rows)).expect("square")
}

/// `f_j = (u−n−m+1)^{rising(n+m−j)}`.
pub fn wronskian_function<K: Coeff>(n: usize, m: usize, j: usize) -> RatFun<K> {
    rising(&u_plus(-((n + m) as i64) + 1), (n + m - j) as u32)
}

/// Checks the factorization `Π f_j · Vandermonde(n+m−j_s)` for `J₂`.
pub fn wronskian_factorization<K: Coeff>(n: usize, m: usize, j2: &[usize]) -> bool {
    let fs: Vec<RatFun<K>> = j2.iter().map(|&j| wronskian_function(n, m, j)).collect();
    let w = difference_wronskian(&fs, &K::from_i64((n + m) as i64 - 1));
    let prod = fs.iter().fold(RatFun::one(), |a, f| a.mul(f));
    let nodes: Vec<i64> = j2.iter().map(|&j| (n + m - j) as i64).collect();
    let vm = Mat::from_fn(nodes.len(), nodes.len(), |p, s| {
        RatFun::from_i64(nodes[s].pow(p as u32))
    });
    w == prod.mul(&det(&vm).expect("square"))
}

/// All subsets of `{lo..=hi}` in increasing order.
pub fn subsets(lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = (lo..=hi).collect();
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Rat, Rf};

    #[test]
    fn rising_identity_symbolic_c() {
        let c = Rf::var(Var::C);
        for i in 0..=4 {
            assert!(rising_power_identity(i, &c).holds(), "i = {i}");
        }
    }

    #[test]
    fn falling_ratio() {
        for m in 0..=4 {
            for l in 0..=m {
                assert!(falling_ratio_identity::<Rat>(2, m, l));
            }
        }
    }

    #[test]
    fn empty_and_top_subsets() {
        let r = scalar_dj_identity::<Rat>(2, 2, &[]).unwrap();
        assert!(r.m_side.holds());
        assert_eq!(r.m_side.lhs, Op::scalar(OreKind::Diff, Rf::one()));
        let r = scalar_dj_identity::<Rat>(2, 3, &[5]).unwrap();
        let x = Op::fun_gen(OreKind::Diff, u_plus(-4));
        assert_eq!(r.m_side.lhs, x);
        assert_eq!(r.m_side.rhs, x);
    }

    #[test]
    fn all_subsets_two_two() {
        for j in subsets(1, 4) {
            let r = scalar_dj_identity::<Rat>(2, 2, &j).unwrap();
            assert!(r.m_side.holds(), "m-side fails for {j:?}: {}", r.m_side.residual);
            assert!(r.n_side.holds(), "n-side fails for {j:?}: {}", r.n_side.residual);
        }
    }

    #[test]
    fn wronskian_examples() {
        let one = [Rf::one()];
        assert_eq!(difference_wronskian(&one, &Rat::from_i64(0)), Rf::one());
        let f = Rf::u().pow(2);
        assert!(difference_wronskian(&[f.clone(), f], &Rat::from_i64(1)).is_zero());
        assert!(wronskian_factorization::<Rat>(2, 2, &[3, 4]));
    }

    #[test]
    fn functions_are_annihilated() {
        let (n, m) = (2, 2);
        let f = wronskian_function::<Rat>(n, m, n + m);
        let x = Op::fun_gen(OreKind::Diff, u_plus(-((n + m) as i64) + 1));
        assert!(x.apply(&f).is_zero());
    }
}
