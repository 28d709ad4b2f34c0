//! Characteristic polynomials of random linear combinations. Two
//! index-aligned commuting families that are simultaneously conjugate give
//! equal polynomials for every coefficient vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::arith::{charpoly, solve, Coeff, Mat, RatFun, Ring};
use crate::report::VerificationReport;

/// `Σ c_k X_k`.
pub fn combination<K: Coeff>(family: &[Mat<RatFun<K>>], c: &[i64]) -> Mat<RatFun<K>> {
    let dim = family.first().map_or(0, |x| x.rows());
    family
        .iter()
        .zip(c)
        .fold(Mat::zeros(dim, dim), |acc, (x, &ck)| acc.add(&x.scale(&RatFun::from_i64(ck))))
}

/// Coefficient vectors with entries in `[-height, height]`, reproducible
/// from `seed`.
pub fn random_coefficients(len: usize, trials: usize, height: i64, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| (0..len).map(|_| rng.random_range(-height..=height)).collect()).collect()
}

/// `charpoly(Σ c·X) = charpoly(Σ c·Y)` for `trials` random `c`.
pub fn spectral_certificate<K: Coeff>(
    check: &str,
    x: &[Mat<RatFun<K>>],
    y: &[Mat<RatFun<K>>],
    trials: usize,
    seed: u64,
) -> VerificationReport {
    let params = json!({ "family_size": x.len(), "trials": trials });
    let mut rep = VerificationReport::new(check, params, seed, K::mode_name());
    if x.len() != y.len() || x.iter().zip(y).any(|(a, b)| a.rows() != b.rows()) {
        rep.record(json!("shapes"), false, || json!({ "error": "families are not index-aligned" }));
        return rep;
    }
    let cs = random_coefficients(x.len(), trials, 10, seed);
    let results = crate::par::map(&cs, |c| {
        let p = charpoly(&combination(x, c));
        let q = charpoly(&combination(y, c));
        (p, q)
    });
    for (t, (c, (p, q))) in cs.iter().zip(results).enumerate() {
        let ok = matches!((&p, &q), (Ok(p), Ok(q)) if p == q);
        rep.record(json!({ "trial": t }), ok, || {
            let show = |r: &Result<Vec<RatFun<K>>, _>| match r {
                Ok(v) => json!(v.iter().map(|f| f.to_string()).collect::<Vec<_>>()),
                Err(e) => json!({ "error": format!("{e}") }),
            };
            json!({ "trial": t, "c": c, "charpoly_x": show(&p), "charpoly_y": show(&q) })
        });
    }
    rep
}

/// `P X P^{-1}` for each member.
pub fn conjugate<K: Coeff>(family: &[Mat<RatFun<K>>], p: &Mat<RatFun<K>>) -> Option<Vec<Mat<RatFun<K>>>> {
    let pinv = solve(p, &Mat::identity(p.rows())).ok()?;
    Some(family.iter().map(|x| p.mul(x).mul(&pinv)).collect())
}

/// Adds `1` to entry `(0, 0)` of member `k`; the trace of `Σ c·X` moves
/// by `c_k`.
pub fn perturb<K: Coeff>(family: &[Mat<RatFun<K>>], k: usize) -> Vec<Mat<RatFun<K>>> {
    let mut out = family.to_vec();
    let v = out[k].get(0, 0).add(&RatFun::one());
    out[k].set(0, 0, v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    type Rf = RatFun<Rat>;

    fn m(rows: &[[i64; 2]; 2]) -> Mat<Rf> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rf::from_i64(x)).collect()).collect())
    }

    fn family() -> Vec<Mat<Rf>> {
        // polynomials in one matrix, so they commute
        let a = m(&[[1, 2], [0, 3]]);
        vec![Mat::identity(2), a.clone(), a.mul(&a)]
    }

    #[test]
    fn equal_families_pass() {
        let f = family();
        assert!(spectral_certificate("t", &f, &f, 5, 1).pass);
    }

    #[test]
    fn conjugate_family_passes() {
        let f = family();
        let g = conjugate(&f, &m(&[[2, 1], [7, 4]])).unwrap();
        assert_ne!(f, g);
        assert!(spectral_certificate("t", &f, &g, 5, 2).pass);
    }

    #[test]
    fn perturbed_family_fails_with_witness() {
        let f = family();
        let g = perturb(&f, 0);
        let rep = spectral_certificate("t", &f, &g, 5, 3);
        assert!(!rep.pass);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn coefficients_are_reproducible() {
        assert_eq!(random_coefficients(4, 3, 10, 9), random_coefficients(4, 3, 10, 9));
    }
}
