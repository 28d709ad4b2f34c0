//! Sparse multivariate polynomials over a coefficient field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::field::{Coeff, Ring};

/// A polynomial variable. The numeric id fixes the global order:
/// `u < v < c < λ_i < ξ_i < z_i < w_i < r`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u16);

impl Var {
    pub const U: Var = Var(0);
    pub const V: Var = Var(1);
    pub const C: Var = Var(2);
    pub const R: Var = Var(500);

    pub fn lambda(i: usize) -> Var {
        Var(100 + i as u16)
    }
    pub fn xi(i: usize) -> Var {
        Var(200 + i as u16)
    }
    pub fn z(i: usize) -> Var {
        Var(300 + i as u16)
    }
    pub fn w(i: usize) -> Var {
        Var(400 + i as u16)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "u"),
            1 => write!(f, "v"),
            2 => write!(f, "c"),
            500 => write!(f, "r"),
            n @ 100..=199 => write!(f, "l{}", n - 100),
            n @ 200..=299 => write!(f, "xi{}", n - 200),
            n @ 300..=399 => write!(f, "z{}", n - 300),
            n @ 400..=499 => write!(f, "w{}", n - 400),
            n => write!(f, "x{n}"),
        }
    }
}

/// Monomial as a sorted list of `(variable, exponent)` with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(SmallVec<[(u16, u16); 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = Mono::one();
        if e > 0 {
            m.0.push((v.0, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0
            .iter()
            .find(|(x, _)| *x == v.0)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e as u32).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|(v, _)| Var(*v))
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut out = SmallVec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, b) = (self.0[i], o.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Mono(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < v {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == v {
                let f = o.0[j].1;
                j += 1;
                if f > e {
                    return None;
                }
                if f < e {
                    out.push((v, e - f));
                }
            } else {
                out.push((v, e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = o.exp(Var(v));
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Mono(out)
    }

    /// Removes variable `v`, returning its exponent and the remaining monomial.
    pub fn split(&self, v: Var) -> (u16, Mono) {
        let mut e = 0;
        let mut out = SmallVec::new();
        for &(x, k) in &self.0 {
            if x == v.0 {
                e = k;
            } else {
                out.push((x, k));
            }
        }
        (e, Mono(out))
    }
}

impl Ord for Mono {
    /// Lexicographic order with the smallest variable id most significant.
    fn cmp(&self, o: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => {
                    if a.0 < b.0 {
                        return Ordering::Greater;
                    }
                    if a.0 > b.0 {
                        return Ordering::Less;
                    }
                    if a.1 != b.1 {
                        return a.1.cmp(&b.1);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<K> {
    terms: BTreeMap<Mono, K>,
}

impl<K: Coeff> MPoly<K> {
    pub fn constant(c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Mono::var(v, 1), K::one())
    }

    pub fn monomial(m: Mono, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// `v + s`.
    pub fn var_plus(v: Var, s: K) -> Self {
        Self::var(v).add(&Self::constant(s))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<K> {
        if self.terms.is_empty() {
            Some(K::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&Mono, &K)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> K {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(K::zero)
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v) as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    fn insert_add(terms: &mut BTreeMap<Mono, K>, m: Mono, c: K) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k.mul(c)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Coefficients with respect to `v`, indexed by the power of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        if self.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Self]) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in coeffs.iter().enumerate() {
            let vm = Mono::var(v, e as u16);
            for (m, k) in &c.terms {
                terms.insert(m.mul(&vm), k.clone());
            }
        }
        MPoly { terms }
    }

    /// Substitutes the polynomial `p` for the variable `v`.
    pub fn subst(&self, v: Var, p: &Self) -> Self {
        if !self.has_var(v) {
            return self.clone();
        }
        let cs = self.coeffs_in(v);
        let mut acc = Self::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(p).add(c);
        }
        acc
    }

    /// `f(v) ↦ f(a·v + s)`.
    pub fn affine(&self, v: Var, a: &K, s: &K) -> Self {
        let p = Self::var(v).scale(a).add(&Self::constant(s.clone()));
        self.subst(v, &p)
    }

    pub fn eval(&self, v: Var, x: &K) -> Self {
        self.subst(v, &Self::constant(x.clone()))
    }

    pub fn deriv(&self, v: Var) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e > 0 {
                let nm = rest.mul(&Mono::var(v, e - 1));
                Self::insert_add(&mut terms, nm, c.mul(&K::from_i64(e as i64)));
            }
        }
        MPoly { terms }
    }

    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> Option<L>) -> Option<MPoly<L>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let l = f(c)?;
            MPoly::insert_add(&mut terms, m.clone(), l);
        }
        Some(MPoly { terms })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let dci = dc.inv()?;
        let mut q = BTreeMap::new();
        let mut r = self.clone();
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let tm = m.div(&dm)?;
            let tc = c.mul(&dci);
            r = r.sub(&d.mul_mono(&tm, &tc));
            q.insert(tm, tc);
        }
        Some(MPoly { terms: q })
    }

    /// Greatest common divisor, monic in the lexicographic leading term.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_constant() || o.is_constant() {
            return Self::one();
        }
        if self == o {
            return self.monic();
        }
        if self.terms.len() == 1 || o.terms.len() == 1 {
            let mut g: Option<Mono> = None;
            for m in self.terms.keys().chain(o.terms.keys()) {
                g = Some(match g {
                    None => m.clone(),
                    Some(x) => x.gcd(m),
                });
            }
            return Self::monomial(g.unwrap_or_default(), K::one());
        }
        let mut va = self.vars();
        va.extend(o.vars());
        let v = *va.iter().min().expect("non-constant polynomial has a variable");
        if !self.has_var(v) {
            return self.gcd(&o.content_in(v));
        }
        if !o.has_var(v) {
            return self.content_in(v).gcd(o);
        }
        // Cheap divisibility shortcuts before the remainder sequence.
        if self.terms.len() <= o.terms.len() {
            if o.div_exact(self).is_some() {
                return self.monic();
            }
        } else if self.div_exact(o).is_some() {
            return o.monic();
        }
        let ca = self.coeffs_in(v);
        let cb = o.coeffs_in(v);
        let conta = list_gcd(&ca);
        let contb = list_gcd(&cb);
        let cont = conta.gcd(&contb);
        let mut pa = primitive(&ca, &conta);
        let mut pb = primitive(&cb, &contb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        let g = loop {
            let r = prem(&pa, &pb);
            if r.is_empty() {
                break pb;
            }
            if r.len() == 1 {
                break vec![Self::one()];
            }
            let cr = list_gcd(&r);
            let r = primitive(&r, &cr);
            pa = pb;
            pb = r;
        };
        let g = Self::from_coeffs_in(v, &g);
        let gc = list_gcd(&g.coeffs_in(v));
        let g = g.div_exact(&gc).expect("content divides");
        g.mul(&cont).monic()
    }

    /// Gcd of the coefficients with respect to `v`.
    pub fn content_in(&self, v: Var) -> Self {
        list_gcd(&self.coeffs_in(v))
    }
}

fn list_gcd<K: Coeff>(cs: &[MPoly<K>]) -> MPoly<K> {
    let mut g = MPoly::zero();
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic() } else { g.gcd(c) };
        if g.is_constant() {
            return MPoly::one();
        }
    }
    if g.is_zero() {
        MPoly::one()
    } else {
        g
    }
}

fn primitive<K: Coeff>(cs: &[MPoly<K>], cont: &MPoly<K>) -> Vec<MPoly<K>> {
    let mut out: Vec<MPoly<K>> = cs
        .iter()
        .map(|c| c.div_exact(cont).expect("content divides coefficient"))
        .collect();
    trim(&mut out);
    let lc = out.last().map(|c| c.leading_coeff()).unwrap_or_else(K::one);
    if !lc.is_one() && !lc.is_zero() {
        let li = lc.inv().expect("nonzero");
        for c in &mut out {
            *c = c.scale(&li);
        }
    }
    out
}

fn trim<K: Coeff>(v: &mut Vec<MPoly<K>>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Pseudo-remainder of dense coefficient vectors (index = power).
fn prem<K: Coeff>(a: &[MPoly<K>], b: &[MPoly<K>]) -> Vec<MPoly<K>> {
    let mut r: Vec<MPoly<K>> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    let lb_const = lb.constant_value();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        match &lb_const {
            Some(c) => {
                let f = lr.scale(&c.inv().expect("nonzero"));
                for (k, bk) in b.iter().enumerate() {
                    r[k + shift] = r[k + shift].sub(&f.mul(bk));
                }
            }
            None => {
                for x in r.iter_mut() {
                    *x = x.mul(lb);
                }
                for (k, bk) in b.iter().enumerate() {
                    r[k + shift] = r[k + shift].sub(&lr.mul(bk));
                }
            }
        }
        trim(&mut r);
    }
    r
}

impl<K: Coeff> Ring for MPoly<K> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.terms.len() >= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            Self::insert_add(&mut terms, m.clone(), c.clone());
        }
        MPoly { terms }
    }
    fn sub(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            Self::insert_add(&mut terms, m.clone(), c.neg());
        }
        MPoly { terms }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                Self::insert_add(&mut terms, m1.mul(m2), c1.mul(c2));
            }
        }
        MPoly { terms }
    }
    fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(K::from_i64(v))
    }
}

impl<K: Coeff> fmt::Display for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut s = String::new();
            let cs = format!("{c}");
            let neg = cs.starts_with('-');
            let mag = cs.trim_start_matches('-');
            if !first {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            first = false;
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|(v, e)| {
                    if *e == 1 {
                        format!("{}", Var(*v))
                    } else {
                        format!("{}^{}", Var(*v), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(mag);
            } else if mag == "1" {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{}*{}", mag, mono.join("*")));
            }
            f.write_str(&s)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{rat, Rat};

    type P = MPoly<Rat>;

    fn u() -> P {
        P::var(Var::U)
    }
    fn l(i: usize) -> P {
        P::var(Var::lambda(i))
    }
    fn k(v: i64) -> P {
        P::from_i64(v)
    }

    #[test]
    fn lex_order_puts_u_first() {
        let a = Mono::var(Var::U, 1);
        let b = Mono::var(Var::lambda(1), 5);
        assert!(a > b);
        assert!(Mono::var(Var::U, 2) > a.mul(&b));
    }

    #[test]
    fn exact_division() {
        let a = u().add(&k(1));
        let b = u().sub(&l(1));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
    }

    #[test]
    fn gcd_of_products() {
        let f1 = u().sub(&l(1));
        let f2 = u().add(&l(2)).add(&k(3));
        let f3 = l(1).mul(&l(2)).sub(&k(2));
        let a = f1.mul(&f2).mul(&f3);
        let b = f1.mul(&f3).mul(&u().add(&k(7)));
        let g = a.gcd(&b);
        assert_eq!(g, f1.mul(&f3).monic());
    }

    #[test]
    fn gcd_univariate() {
        let a = u().mul(&u()).sub(&k(1));
        let b = u().sub(&k(1));
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.gcd(&u()), P::one());
    }

    #[test]
    fn shift_and_derivative() {
        let p = u().mul(&u()).mul(&u());
        assert_eq!(p.deriv(Var::U), u().mul(&u()).scale(&rat(3)));
        let s = u().affine(Var::U, &rat(-1), &rat(4));
        assert_eq!(s, k(4).sub(&u()));
    }

    #[test]
    fn coefficient_roundtrip() {
        let p = u().mul(&l(1)).add(&l(2)).add(&u().mul(&u()));
        let cs = p.coeffs_in(Var::U);
        assert_eq!(cs.len(), 3);
        assert_eq!(P::from_coeffs_in(Var::U, &cs), p);
    }
}
