//! Elements `a + b sqrt(c)` of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ntheory::{is_squarefree, squarefree_part};
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of<T: Scalar>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// `a + b sqrt(c)` with `c` squarefree; the positive square root is meant.
///
/// Canonical form: whenever the value is rational, `b = 0` and `c = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad<T> {
    a: T,
    b: T,
    c: u64,
}

impl<T: Scalar> Quad<T> {
    /// Builds `a + b sqrt(c)`. Panics unless `c` is squarefree or zero.
    pub fn new(a: T, b: T, c: u64) -> Self {
        assert!(c == 0 || is_squarefree(c), "radicand {c} is not squarefree");
        let mut q = Quad { a, b, c };
        q.canonicalize();
        q
    }

    pub fn rational(a: T) -> Self {
        Quad {
            a,
            b: T::zero(),
            c: 1,
        }
    }

    pub fn from_int(a: i64) -> Self {
        Self::rational(int(a))
    }

    /// `sqrt(n)` for any `n >= 0`, pulling square factors out of the radical.
    pub fn sqrt_of(n: u64) -> Self {
        let (c, m) = squarefree_part(n);
        Self::new(T::zero(), int(m as i64), c)
    }

    /// `a + b sqrt(n)` for any `n >= 0`.
    pub fn from_sqrt_multiple(a: T, b: T, n: u64) -> Self {
        let (c, m) = squarefree_part(n);
        Self::new(a, b * int(m as i64), c)
    }

    fn canonicalize(&mut self) {
        match self.c {
            0 => {
                self.b = T::zero();
                self.c = 1;
            }
            1 => {
                let b = std::mem::replace(&mut self.b, T::zero());
                self.a = self.a.clone() + b;
            }
            _ => {
                if self.b.is_zero() {
                    self.c = 1;
                }
            }
        }
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    /// The radicand; `1` for rational values.
    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.c, other.c) {
            (x, y) if x == y => Ok(x),
            (1, y) => Ok(y),
            (x, 1) => Ok(x),
            (x, y) => Err(Error::MixedRadicands { left: x, right: y }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let c = self.common_radicand(other)?;
        Ok(Self::new(
            self.a.clone() + other.a.clone(),
            self.b.clone() + other.b.clone(),
            c,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.clone().neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let c = self.common_radicand(other)?;
        let ct: T = int(c as i64);
        let a = self.a.clone() * other.a.clone() + self.b.clone() * other.b.clone() * ct;
        let b = self.a.clone() * other.b.clone() + self.b.clone() * other.a.clone();
        Ok(Self::new(a, b, c))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.common_radicand(other)?;
        let inv = other.try_inv()?;
        self.try_mul(&inv)
    }

    pub fn try_inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let conj = self.conj();
        Ok(Self::new(conj.a / n.clone(), conj.b / n, self.c))
    }

    /// Galois conjugate `a - b sqrt(c)`.
    pub fn conj(&self) -> Self {
        Quad {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: self.c,
        }
    }

    /// Field norm `a^2 - c b^2`.
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * int(self.c as i64)
    }

    /// Trace `2a`.
    pub fn trace(&self) -> T {
        self.a.clone() + self.a.clone()
    }

    /// Exact sign, decided from the signs of `a`, `b` and `a^2 - c b^2`.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of(&self.a);
        let sb = Sign::of(&self.b);
        if sb == Sign::Zero {
            return sa;
        }
        if sa == Sign::Zero || sa == sb {
            return sb;
        }
        match Sign::of(&self.norm()) {
            Sign::Positive => sa,
            Sign::Negative => sb,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign().to_ordering())
    }

    /// Exact comparison that also accepts operands with different radicands.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if let Ok(o) = self.try_cmp(other) {
            return o;
        }
        let lhs = self.a.clone() - other.a.clone();
        let u1 = Quad {
            a: T::zero(),
            b: self.b.clone(),
            c: self.c,
        };
        let u2 = Quad {
            a: T::zero(),
            b: -other.b.clone(),
            c: other.c,
        };
        let (s1, s2) = (u1.sign(), u2.sign());
        let su = if s1 == s2 || s2 == Sign::Zero {
            s1
        } else if s1 == Sign::Zero {
            s2
        } else {
            match Sign::of(&(u1.norm() - u2.norm())) {
                // norm of b sqrt(c) is -b^2 c
                Sign::Negative => s1,
                Sign::Positive => s2,
                Sign::Zero => Sign::Zero,
            }
        };
        let sl = Sign::of(&lhs);
        let s = if sl == Sign::Zero {
            su
        } else if su == Sign::Zero || su == sl {
            sl
        } else {
            // compare lhs^2 with (u1 + u2)^2
            let cross = u1.b.clone() * u2.b.clone() * int(2);
            let usq = Quad::from_sqrt_multiple(-(u1.norm() + u2.norm()), cross, self.c * other.c);
            match (Quad::rational(lhs.clone() * lhs) - usq).sign() {
                Sign::Positive => sl,
                Sign::Negative => su,
                Sign::Zero => Sign::Zero,
            }
        };
        s.to_ordering()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::rational(T::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Quad<U> {
        Quad::new(f(&self.a), f(&self.b), self.c)
    }
}

impl<T: Scalar> Add for Quad<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("mixed radicands in +")
    }
}

impl<T: Scalar> Sub for Quad<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("mixed radicands in -")
    }
}

impl<T: Scalar> Mul for Quad<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("mixed radicands in *")
    }
}

impl<T: Scalar> Div for Quad<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.try_div(&rhs).expect("invalid quadratic division")
    }
}

impl<T: Scalar> Neg for Quad<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Quad {
            a: -self.a,
            b: -self.b,
            c: self.c,
        }
    }
}

impl<T: Scalar> PartialOrd for Quad<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Quad<Rational> {
    /// Nearest `f64`, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.c as f64).sqrt()
    }

    /// Integer value when the element is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    /// True when `a` and `b` are integers.
    pub fn has_integer_parts(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

impl Serialize for Quad<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadVal", 3)?;
        st.serialize_field("a", &crate::arith::rat_string(&self.a))?;
        st.serialize_field("b", &crate::arith::rat_string(&self.b))?;
        st.serialize_field("c", &self.c)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Quad<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            a: String,
            b: String,
            c: u64,
        }
        let raw = Raw::deserialize(d)?;
        let a =
            crate::arith::parse_rat(&raw.a).ok_or_else(|| D::Error::custom("bad rational a"))?;
        let b =
            crate::arith::parse_rat(&raw.b).ok_or_else(|| D::Error::custom("bad rational b"))?;
        if raw.c != 0 && !is_squarefree(raw.c) {
            return Err(D::Error::custom("radicand is not squarefree"));
        }
        Ok(Quad::new(a, b, raw.c))
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Quad<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write_rat(f, &self.a);
        }
        if !self.a.is_zero() {
            write_rat(f, &self.a)?;
            f.write_str(if self.b.is_negative() { " - " } else { " + " })?;
        } else if self.b.is_negative() {
            f.write_str("-")?;
        }
        let b = self.b.abs();
        if !b.is_one() {
            write_rat(f, &b)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt({})", self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};
    use crate::QuadVal;

    fn q(a: i64, b: i64, c: u64) -> QuadVal {
        QuadVal::new(rat(a), rat(b), c)
    }

    #[test]
    fn norm_of_conjugate_pair() {
        assert_eq!(q(3, 2, 3) * q(3, -2, 3), QuadVal::from_int(-3));
    }

    #[test]
    fn conj_of_codegree() {
        assert_eq!(q(36, 20, 3).conj(), q(36, -20, 3));
    }

    #[test]
    fn delta_times_conjugate_for_e3() {
        let d = QuadVal::new(frac(3, 2), frac(1, 2), 21);
        assert_eq!(d.clone() * d.conj(), QuadVal::from_int(-3));
    }

    #[test]
    fn signs() {
        assert_eq!(q(36, -20, 3).sign(), Sign::Positive);
        assert_eq!(q(0, 0, 5).sign(), Sign::Zero);
        assert_eq!(q(3, -2, 3).sign(), Sign::Negative);
        assert_eq!(q(-3, 2, 3).sign(), Sign::Positive);
    }

    #[test]
    fn mixed_radicands_rejected() {
        assert_eq!(
            q(0, 1, 2).try_add(&q(0, 1, 3)),
            Err(Error::MixedRadicands { left: 2, right: 3 })
        );
        assert!(q(0, 1, 2).try_add(&QuadVal::from_int(5)).is_ok());
    }

    #[test]
    fn compare_across_fields() {
        assert_eq!(q(0, 1, 2).cmp_exact(&q(0, 1, 3)), Ordering::Less);
        assert_eq!(q(1, 1, 2).cmp_exact(&q(0, 1, 5)), Ordering::Greater);
        // 3 + sqrt(2) vs 2 + sqrt(5): 4.414 vs 4.236
        assert_eq!(q(3, 1, 2).cmp_exact(&q(2, 1, 5)), Ordering::Greater);
        assert_eq!(q(2, 1, 5).cmp_exact(&q(3, 1, 2)), Ordering::Less);
        assert_eq!(q(1, -1, 2).cmp_exact(&q(0, -1, 7)), Ordering::Greater);
    }

    #[test]
    fn division() {
        let x = q(1, 1, 2);
        assert_eq!(x.try_inv().unwrap(), q(-1, 1, 2));
        assert_eq!(
            QuadVal::from_int(1).try_div(&q(0, 0, 2)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q(2, 0, 7), QuadVal::from_int(2));
        assert_eq!(QuadVal::sqrt_of(12), q(0, 2, 3));
        assert_eq!(QuadVal::sqrt_of(16), QuadVal::from_int(4));
        assert_eq!(q(1, 5, 0), QuadVal::from_int(1));
    }

    #[test]
    fn display() {
        assert_eq!(q(36, -20, 3).to_string(), "36 - 20*sqrt(3)");
        assert_eq!(
            QuadVal::new(frac(21, 2), frac(3, 2), 21).to_string(),
            "21/2 + 3/2*sqrt(21)"
        );
        assert_eq!(q(0, -1, 2).to_string(), "-sqrt(2)");
    }

    #[test]
    fn json_round_trip() {
        let x = QuadVal::new(frac(21, 2), frac(-3, 2), 21);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"a":"21/2","b":"-3/2","c":21}"#);
        assert_eq!(serde_json::from_str::<QuadVal>(&text).unwrap(), x);
    }

    #[test]
    fn works_over_f64() {
        let x: Quad<f64> = Quad::new(1.0, 1.0, 2);
        let y = x.clone() * x.conj();
        assert!((y.a() + 1.0).abs() < 1e-12);
    }
}
