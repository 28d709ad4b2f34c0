//! Scalar coefficient fields: exact rationals and a word-sized prime field.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Commutative ring operations shared by every scalar-like type in the crate.
///
/// Methods take references and return owned values so generic code never
/// needs higher-ranked operator bounds.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(v: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

/// Coefficient fields usable inside polynomials.
pub trait Coeff: Field + fmt::Display {
    /// Image of an exact rational; `None` when the denominator is not invertible.
    fn from_rat(r: &Rat) -> Option<Self>;
    /// Sign used to pick a canonical representative (rationals only).
    fn is_negative(&self) -> bool;
    /// Short tag for reports.
    fn mode_name() -> &'static str;
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Coeff for Rat {
    fn from_rat(r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn mode_name() -> &'static str {
        "exact"
    }
}

/// Shorthand for an integer rational.
pub fn rat(v: i64) -> Rat {
    Rat::from_i64(v)
}

/// Shorthand for `p/q`.
pub fn ratq(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The default modulus, the largest prime below 2^62.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

static MODULUS: AtomicU64 = AtomicU64::new(DEFAULT_PRIME);

/// Element of Z/pZ for the process-wide prime p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp(u64);

impl Fp {
    pub fn modulus() -> u64 {
        MODULUS.load(Ordering::Relaxed)
    }

    /// Sets the process-wide prime. Intended to be called once, before any
    /// modular arithmetic happens.
    pub fn set_modulus(p: u64) {
        MODULUS.store(p, Ordering::Relaxed);
    }

    pub fn new(v: u64) -> Self {
        Fp(v % Self::modulus())
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow_u64(self, mut e: u64) -> Self {
        let p = Self::modulus() as u128;
        let mut acc: u128 = 1;
        let mut b = self.0 as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let p = BigInt::from(Self::modulus());
        let mut r = v % &p;
        if Signed::is_negative(&r) {
            r += &p;
        }
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let p = Self::modulus();
        let s = self.0 as u128 + o.0 as u128;
        Fp((s % p as u128) as u64)
    }
    fn sub(&self, o: &Self) -> Self {
        let p = Self::modulus();
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp(p - (o.0 - self.0))
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let p = Self::modulus() as u128;
        Fp((self.0 as u128 * o.0 as u128 % p) as u64)
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            Fp(0)
        } else {
            Fp(Self::modulus() - self.0)
        }
    }
    fn from_i64(v: i64) -> Self {
        Fp::from_bigint(&BigInt::from(v))
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow_u64(Self::modulus() - 2))
        }
    }
}

impl Coeff for Fp {
    fn from_rat(r: &Rat) -> Option<Self> {
        let n = Fp::from_bigint(r.numer());
        let d = Fp::from_bigint(r.denom());
        d.inv().map(|di| n.mul(&di))
    }
    fn is_negative(&self) -> bool {
        false
    }
    fn mode_name() -> &'static str {
        "modular"
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
