//! Elements of the cyclotomic field Q(zeta_n), stored densely and reduced
//! modulo the n-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use super::ntheory::{
    euler_phi, factorize, gcd, is_squarefree, lcm, quadratic_character, quadratic_conductor,
};
use super::quad::Quad;
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// Integer coefficients of Phi_n, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    // t^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(num);
    cache.write().unwrap().insert(n, p.clone());
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let coef = rem[i + dd];
        quot[i] = coef;
        if coef != 0 {
            for (j, &c) in den.iter().enumerate() {
                rem[i + j] -= coef * c;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// `sum coeffs[j] zeta_n^j`, reduced so that only powers below phi(n) occur.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo<T> {
    order: u64,
    coeffs: Vec<T>,
}

impl<T: Scalar> Cyclo<T> {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        Cyclo {
            order,
            coeffs: vec![T::zero(); order as usize],
        }
    }

    pub fn from_scalar(order: u64, v: T) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = v;
        z
    }

    pub fn from_int(order: u64, v: i64) -> Self {
        Self::from_scalar(order, int(v))
    }

    /// `zeta_n^j`.
    pub fn root(order: u64, j: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[j.rem_euclid(order as i64) as usize] = T::one();
        z.reduce();
        z
    }

    /// Builds an element from raw coefficients of powers of zeta_n.
    pub fn from_coeffs(order: u64, coeffs: Vec<T>) -> Self {
        assert_eq!(
            coeffs.len() as u64,
            order,
            "need exactly `order` coefficients"
        );
        let mut z = Cyclo { order, coeffs };
        z.reduce();
        z
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let phi = cyclotomic_poly(self.order);
        let deg = phi.len() - 1;
        for i in (deg..self.coeffs.len()).rev() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut self.coeffs[i], T::zero());
            for (j, &p) in phi[..deg].iter().enumerate() {
                if p != 0 {
                    let t = lead.clone() * int(p);
                    self.coeffs[i - deg + j] = self.coeffs[i - deg + j].clone() - t;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element is rational.
    pub fn as_scalar(&self) -> Option<T> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element in Q(zeta_m); `m` must be a multiple of the order.
    pub fn embed(&self, m: u64) -> Self {
        assert!(
            m.is_multiple_of(self.order),
            "cannot embed order {} into {m}",
            self.order
        );
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut z = Self::zero(m);
        for (j, c) in self.coeffs.iter().enumerate() {
            z.coeffs[j * step] = c.clone();
        }
        z.reduce();
        z
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.order, other.order);
        (self.embed(m), other.embed(m))
    }

    /// Applies zeta_n -> zeta_n^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.order;
        let k = k.rem_euclid(n as i64) as u64;
        if gcd(k, n) != 1 && n > 1 {
            return Err(Error::NonInvertibleGaloisIndex { k, n });
        }
        let mut z = Self::zero(n);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((j as u64 * k) % n) as usize;
                z.coeffs[idx] = z.coeffs[idx].clone() + c.clone();
            }
        }
        z.reduce();
        Ok(z)
    }

    /// Value equality across (possibly different) ambient orders.
    pub fn equal(&self, other: &Self) -> bool {
        let (x, y) = self.align(other);
        x.coeffs == y.coeffs
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    pub fn scale(&self, s: &T) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(self.order, 1);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// `sqrt(c)` for squarefree `c`, built from quadratic Gauss sums in
    /// Q(zeta_N) with N the conductor of Q(sqrt(c)).
    pub fn sqrt_c(c: u64) -> Self {
        assert!(c == 0 || is_squarefree(c), "{c} is not squarefree");
        if c <= 1 {
            return Self::from_int(1, c as i64);
        }
        let n = quadratic_conductor(c);
        let mut acc = Self::from_int(n, 1);
        let mut threes = 0;
        for (p, _) in factorize(c) {
            if p == 2 {
                // zeta_8 + zeta_8^7
                let s = Self::root(8, 1) + Self::root(8, 7);
                acc = acc * s.embed(n);
            } else {
                if p % 4 == 3 {
                    threes += 1;
                }
                acc = acc * gauss_sum::<T>(p).embed(n);
            }
        }
        // The product of Gauss sums is i^threes sqrt(c).
        match threes % 4 {
            0 => acc,
            2 => -acc,
            r => {
                let i_inv = Self::root(
                    n,
                    if r == 1 {
                        3 * n as i64 / 4
                    } else {
                        n as i64 / 4
                    },
                );
                acc * i_inv
            }
        }
    }

    /// The element `a + b sqrt(c)` inside Q(zeta_N), N the conductor of Q(sqrt(c)).
    pub fn from_quad(q: &Quad<T>) -> Self {
        let s = Self::sqrt_c(q.c());
        let n = s.order();
        Self::from_scalar(n, q.a().clone()) + s.scale(q.b())
    }

    /// Returns the element as `a + b sqrt(c)`, or `NotInSubfield`.
    pub fn to_quad(&self, c: u64) -> Result<Quad<T>> {
        assert!(c == 0 || is_squarefree(c), "{c} is not squarefree");
        let not_in = Error::NotInSubfield { c };
        if c <= 1 {
            return self.rational_part_if_invariant().ok_or(not_in);
        }
        let s = Self::sqrt_c(c);
        let n = lcm(self.order, s.order);
        let x = self.embed(n);
        let s = s.embed(n);
        let mut tau = None;
        for k in 1..n {
            if gcd(k, n) != 1 {
                continue;
            }
            let g = x.galois(k as i64)?;
            if quadratic_character(c, k) == 1 {
                if g != x {
                    return Err(not_in);
                }
            } else if tau.is_none() {
                tau = Some(g);
            }
        }
        let tau = tau.expect("sqrt(c) is irrational so some unit moves it");
        let two: T = int(2);
        let a = (x.clone() + tau.clone()).scale(&(T::one() / two.clone()));
        let bc = ((x - tau) * s).scale(&(T::one() / (two * int(c as i64))));
        match (a.as_scalar(), bc.as_scalar()) {
            (Some(a), Some(b)) => Ok(Quad::new(a, b, c)),
            _ => Err(not_in),
        }
    }

    fn rational_part_if_invariant(&self) -> Option<Quad<T>> {
        self.as_scalar().map(Quad::rational)
    }

    /// Number of nonzero coefficients in the reduced form.
    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Degree of Q(zeta_n) over Q.
    pub fn field_degree(&self) -> u64 {
        euler_phi(self.order)
    }
}

/// Reduces an integer vector of `zeta_n` powers modulo the n-th cyclotomic
/// polynomial in place; entries past `phi(n)` end up zero.
pub fn reduce_int_coeffs(n: u64, v: &mut [i64]) {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    for i in (deg..v.len()).rev() {
        let lead = std::mem::replace(&mut v[i], 0);
        if lead == 0 {
            continue;
        }
        for (j, &p) in phi[..deg].iter().enumerate() {
            v[i - deg + j] -= lead * p;
        }
    }
}

/// `sum_{a=1}^{p-1} (a/p) zeta_p^a` for an odd prime `p`.
pub fn gauss_sum<T: Scalar>(p: u64) -> Cyclo<T> {
    let mut z = Cyclo::zero(p);
    for a in 1..p {
        let s = super::ntheory::jacobi(a as i64, p) as i64;
        z.coeffs[a as usize] = int(s);
    }
    z.reduce();
    z
}

impl<T: Scalar> Add for Cyclo<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut x, y) = self.align(&rhs);
        for (a, b) in x.coeffs.iter_mut().zip(y.coeffs) {
            *a = a.clone() + b;
        }
        x
    }
}

impl<T: Scalar> Sub for Cyclo<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Cyclo<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Scalar> Mul for Cyclo<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (x, y) = self.align(&rhs);
        let n = x.order as usize;
        let mut out = vec![T::zero(); n];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                out[k] = out[k].clone() + a.clone() * b.clone();
            }
        }
        let mut z = Cyclo {
            order: x.order,
            coeffs: out,
        };
        z.reduce();
        z
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Cyclo<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*z{}^{j}", self.order)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ntheory::mobius;
    use crate::arith::rat;
    use crate::{CycloElem, QuadVal};

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn zeta8_sum_is_sqrt2() {
        let s = CycloElem::root(8, 1) + CycloElem::root(8, 7);
        assert!(s.equal(&CycloElem::sqrt_c(2)));
        assert!((s.clone() * s).equal(&CycloElem::from_int(1, 2)));
    }

    #[test]
    fn galois_on_root() {
        let z = CycloElem::root(12, 1);
        assert_eq!(z.galois(5).unwrap(), CycloElem::root(12, 5));
        assert_eq!(
            z.galois(2),
            Err(Error::NonInvertibleGaloisIndex { k: 2, n: 12 })
        );
    }

    #[test]
    fn cube_roots_sum() {
        let s = CycloElem::root(3, 1) + CycloElem::root(3, 2);
        assert!(s.equal(&CycloElem::from_int(1, -1)));
    }

    #[test]
    fn sqrt_squares_back() {
        for c in [2u64, 3, 5, 6, 7, 10, 11, 13, 15, 21, 30, 33, 93] {
            let s = CycloElem::sqrt_c(c);
            assert!(
                (s.clone() * s.clone()).equal(&CycloElem::from_int(1, c as i64)),
                "c={c}"
            );
            assert_eq!(
                s.to_quad(c).unwrap(),
                QuadVal::new(rat(0), rat(1), c),
                "c={c}"
            );
        }
    }

    #[test]
    fn to_quad_examples() {
        let g = CycloElem::root(5, 1) - CycloElem::root(5, 2) - CycloElem::root(5, 3)
            + CycloElem::root(5, 4);
        assert_eq!(g.to_quad(5).unwrap(), QuadVal::sqrt_of(5));
        let h = CycloElem::root(12, 1) + CycloElem::root(12, 11);
        assert_eq!(h.to_quad(3).unwrap(), QuadVal::sqrt_of(3));
        assert_eq!(
            CycloElem::root(4, 1).to_quad(3),
            Err(Error::NotInSubfield { c: 3 })
        );
        assert_eq!(
            CycloElem::from_int(7, 4).to_quad(1).unwrap(),
            QuadVal::from_int(4)
        );
    }

    #[test]
    fn primitive_root_sums_are_mobius() {
        for n in 1..=60u64 {
            let mut s = CycloElem::zero(n);
            for j in 0..n {
                if gcd(j, n) == 1 {
                    s = s + CycloElem::root(n, j as i64);
                }
            }
            assert_eq!(s.as_scalar(), Some(rat(mobius(n))), "n={n}");
        }
    }

    #[test]
    fn from_quad_roundtrip() {
        let q = QuadVal::new(rat(3), rat(-2), 7);
        assert_eq!(CycloElem::from_quad(&q).to_quad(7).unwrap(), q);
    }
}
