use std::collections::BTreeMap;

use proptest::prelude::*;

use bdl::arith::{Field, Rat, RatFun, Ring, Var};
use bdl::cli::sample::Sampler;
use bdl::duality::spectral::random_coefficients;
use bdl::glk::contingency::contingency_tables;
use bdl::ore::pencil::{apply_f, f_reverses_product, mixed};
use bdl::ore::OperatorPencil;

type Rf = RatFun<Rat>;
type Pen = OperatorPencil<Rf, Rat>;

/// `c0 + c1·u + c2·c` with small integer coefficients.
fn affine() -> impl Strategy<Value = Rf> {
    (-4i64..=4, -4i64..=4, -4i64..=4).prop_map(|(a, b, c)| {
        Rf::from_i64(a).add(&Rf::var(Var::U).scale(&Rat::from_i64(b))).add(&Rf::var(Var::C).scale(&Rat::from_i64(c)))
    })
}

fn ratfun() -> impl Strategy<Value = Rf> {
    (affine(), affine(), affine()).prop_map(|(p, q, r)| {
        let den = r.mul(&r).add(&Rf::one());
        p.mul(&q).div(&den).unwrap_or(p)
    })
}

fn pencil() -> impl Strategy<Value = Pen> {
    (1i64..=3, 1i64..=3, prop::collection::btree_map((0u32..4, 0u32..4), affine(), 0..6))
        .prop_map(|(n, m, grid)| Pen { basis: mixed(m, 1 - n), grid: grid.into_iter().filter(|(_, v)| !v.is_zero()).collect() })
}

/// `p / (u + k)` for `k` in a small set, so that denominators repeat.
fn simple_fraction() -> impl Strategy<Value = Rf> {
    (affine(), 0i64..3).prop_map(|(p, k)| p.div(&Rf::var_plus(Var::U, Rat::from_i64(k))).expect("nonzero"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfun_field_laws(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn bucketed_sum_of_products(xs in prop::collection::vec((simple_fraction(), affine()), 0..8)) {
        let folded = xs.iter().fold(Rf::zero(), |s, (x, y)| s.add(&x.mul(y)));
        prop_assert_eq!(Rf::sum_products(xs.iter().map(|(x, y)| (x, y))), folded);
    }

    #[test]
    fn f_is_an_involution(p in pencil()) {
        prop_assert_eq!(apply_f(&apply_f(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn f_reverses_monomial_products(n in 1i64..=3, m in 1i64..=3, x in (0u32..3, 0u32..3), y in (0u32..3, 0u32..3)) {
        let mono = |k: (u32, u32)| Pen { basis: mixed(m, 1 - n), grid: BTreeMap::from([(k, Rf::one())]) };
        prop_assert!(f_reverses_product(&mono(x), &mono(y)).unwrap());
    }

    #[test]
    fn contingency_tables_have_their_margins(a in prop::collection::vec(0u32..3, 1..4), m in 1usize..4) {
        let total: u32 = a.iter().sum();
        let b: Vec<u32> = (0..m as u32).map(|j| total / m as u32 + u32::from(j < total % m as u32)).collect();
        let ts = contingency_tables(&a, &b);
        prop_assert_eq!(ts.len(), contingency_tables(&b, &a).len());
        for t in &ts {
            for (i, row) in t.iter().enumerate() {
                prop_assert_eq!(row.iter().sum::<u32>(), a[i]);
            }
            for (j, bj) in b.iter().enumerate() {
                prop_assert_eq!(t.iter().map(|r| r[j]).sum::<u32>(), *bj);
            }
        }
    }

    #[test]
    fn sampled_weights_are_generic(seed in any::<u64>(), h in 1i64..20, k in 1usize..5) {
        let mut s = Sampler::new(seed, h);
        if let Some(l) = s.lambda(k) {
            for (p, x) in l.iter().enumerate() {
                for y in &l[p + 1..] {
                    prop_assert!(!(x - y).is_integer());
                }
            }
        }
    }

    #[test]
    fn spectral_coefficients_reproducible(seed in any::<u64>(), len in 1usize..10, h in 1i64..20) {
        let cs = random_coefficients(len, 4, h, seed);
        prop_assert_eq!(&cs, &random_coefficients(len, 4, h, seed));
        prop_assert!(cs.iter().flatten().all(|c| c.abs() <= h));
    }
}
