//! Integer polynomials and matrices, with the exact root extraction needed for
//! rank-4 rings (linear and quadratic factors only).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ntheory::factorize;
use crate::error::{Error, Result};
use crate::QuadVal;
use crate::Rational;

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t - r`.
    pub fn linear(r: &BigInt) -> Self {
        Self::new(vec![-r.clone(), BigInt::one()])
    }

    /// `t^2 - alpha t + beta`.
    pub fn monic_quadratic(alpha: &BigInt, beta: &BigInt) -> Self {
        Self::new(vec![beta.clone(), -alpha.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    }

    pub fn eval_quad(&self, x: &QuadVal) -> QuadVal {
        self.coeffs
            .iter()
            .rev()
            .fold(QuadVal::from_int(0), |acc, c| {
                acc * x.clone() + QuadVal::rational(Rational::from_integer(c.clone()))
            })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic polynomial: `(quotient, remainder)`.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::new(vec![]), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &lead * c;
            }
            quot[i] = lead;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Splits a monic polynomial into monic integer factors of degree 1 or 2,
    /// linear factors first. Fails when an irreducible factor of higher
    /// degree remains.
    pub fn split_low_degree(&self) -> Result<Vec<IntPoly>> {
        if !self.is_monic() {
            return Err(Error::ShapeMismatch("polynomial is not monic".into()));
        }
        let mut rest = self.clone();
        let mut linear = Vec::new();
        while rest.degree().unwrap_or(0) > 0 {
            match rest.integer_root()? {
                Some(r) => {
                    let f = Self::linear(&r);
                    rest = rest.div_rem_monic(&f).0;
                    linear.push(f);
                }
                None => break,
            }
        }
        let deg = rest.degree().unwrap_or(0);
        match deg {
            0 => {}
            2 => linear.push(rest),
            4 => {
                let (f, g) = rest
                    .split_quartic()?
                    .ok_or(Error::EigenvalueDegreeTooHigh { degree: 4 })?;
                linear.push(f);
                linear.push(g);
            }
            d => return Err(Error::EigenvalueDegreeTooHigh { degree: d }),
        }
        Ok(linear)
    }

    fn integer_root(&self) -> Result<Option<BigInt>> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Ok(Some(BigInt::zero()));
        }
        for d in divisors(c0)? {
            for r in [d.clone(), -d] {
                if self.eval(&r).is_zero() {
                    return Ok(Some(r));
                }
            }
        }
        Ok(None)
    }

    /// Writes a monic quartic without integer roots as a product of two
    /// monic integer quadratics, if possible.
    fn split_quartic(&self) -> Result<Option<(IntPoly, IntPoly)>> {
        let [s0, s1, s2, s3, _] = &self.coeffs[..] else {
            return Ok(None);
        };
        for b0 in divisors(s0)? {
            for b in [b0.clone(), -b0] {
                let d = s0 / &b;
                let candidates: Vec<BigInt> = if b != d {
                    let num = s1 - &b * s3;
                    let den = &d - &b;
                    if (&num % &den).is_zero() {
                        vec![num / den]
                    } else {
                        vec![]
                    }
                } else if *s1 == &b * s3 {
                    // a + c = s3, a c = s2 - 2b
                    let disc = s3 * s3 - BigInt::from(4) * (s2 - BigInt::from(2) * &b);
                    match exact_isqrt(&disc) {
                        Some(r) if ((s3 + &r) % 2u32).is_zero() => vec![(s3 + r) / 2u32],
                        _ => vec![],
                    }
                } else {
                    vec![]
                };
                for a in candidates {
                    let c = s3 - &a;
                    if &b + &d + &a * &c == *s2 && &a * &d + &b * &c == *s1 {
                        return Ok(Some((
                            IntPoly::new(vec![b.clone(), a, BigInt::one()]),
                            IntPoly::new(vec![d, c, BigInt::one()]),
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Roots of a monic polynomial that splits into linear and quadratic
    /// integer factors, with multiplicity, sorted in decreasing order.
    /// Returns `(real_roots, number_of_non_real_roots)`.
    pub fn roots(&self) -> Result<(Vec<QuadVal>, usize)> {
        let mut real = Vec::new();
        let mut complex = 0;
        for f in self.split_low_degree()? {
            match f.degree() {
                Some(1) => real.push(QuadVal::rational(Rational::from_integer(
                    -f.coeffs[0].clone(),
                ))),
                Some(2) => {
                    let alpha = -f.coeffs[1].clone();
                    match quadratic_roots(&alpha, &f.coeffs[0])? {
                        Some((r1, r2)) => {
                            real.push(r1);
                            real.push(r2);
                        }
                        None => complex += 2,
                    }
                }
                _ => unreachable!("split_low_degree yields degrees 1 and 2"),
            }
        }
        real.sort_by(|x, y| y.cmp_exact(x));
        Ok((real, complex))
    }
}

/// Real roots of `t^2 - alpha t + beta`, larger first, or `None` when the
/// discriminant is negative.
pub fn quadratic_roots(alpha: &BigInt, beta: &BigInt) -> Result<Option<(QuadVal, QuadVal)>> {
    let disc = alpha * alpha - BigInt::from(4) * beta;
    if disc.is_negative() {
        return Ok(None);
    }
    let disc = disc
        .to_u64()
        .ok_or_else(|| Error::ShapeMismatch("discriminant exceeds 64 bits".into()))?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let a = QuadVal::rational(Rational::from_integer(alpha.clone()) * half.clone());
    let s = QuadVal::sqrt_of(disc) * QuadVal::rational(half);
    Ok(Some((a.clone() + s.clone(), a - s)))
}

/// Positive divisors of `|n|` (n nonzero, at most 64 bits).
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::ShapeMismatch("constant term exceeds 64 bits".into()))?;
    let mut divs = vec![1u64];
    for (p, e) in factorize(m) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs.into_iter().map(BigInt::from).collect())
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Returns `(alpha, beta)` with `p = (t - gamma)^2 (t^2 - alpha t + beta)`.
pub fn factor_with_known_double_root(p: &IntPoly, gamma: &BigInt) -> Result<(BigInt, BigInt)> {
    if p.degree() != Some(4) || !p.is_monic() {
        return Err(Error::ShapeMismatch("expected a monic quartic".into()));
    }
    if !p.eval(gamma).is_zero() || !p.derivative().eval(gamma).is_zero() {
        return Err(Error::NotADoubleRoot {
            gamma: gamma.to_string(),
        });
    }
    let sq = IntPoly::linear(gamma).mul(&IntPoly::linear(gamma));
    let (q, r) = p.div_rem_monic(&sq);
    debug_assert!(r.coeffs.is_empty());
    Ok((-q.coeffs[1].clone(), q.coeffs[0].clone()))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            wrote = true;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * &other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.data[i * self.n + i].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// `det(t I - M)` by the Faddeev-LeVerrier recurrence; every division is
    /// exact over the integers.
    pub fn char_poly(&self) -> IntPoly {
        let n = self.n;
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        let mut m = Self::zeros(n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale(&c[n - k + 1]));
            let am = self.mul(&m);
            let t = am.trace();
            let kk = BigInt::from(k);
            debug_assert!(t.is_multiple_of(&kk));
            c[n - k] = -(t / kk);
        }
        IntPoly::new(c)
    }

    pub fn det(&self) -> BigInt {
        let c0 = self.char_poly().coeffs.first().cloned().unwrap_or_default();
        if self.n.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }

    /// Evaluates a polynomial at this matrix.
    pub fn eval_poly(&self, p: &IntPoly) -> Self {
        let id = Self::identity(self.n);
        p.coeffs.iter().rev().fold(Self::zeros(self.n), |acc, c| {
            self.mul(&acc).add(&id.scale(c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn identity_char_poly() {
        // (t - 1)^4
        assert_eq!(IntMatrix::identity(4).char_poly(), p(&[1, -4, 6, -4, 1]));
    }

    #[test]
    fn known_double_root() {
        // (t-2)^2 (t^2 - 5t + 6)
        let f = p(&[4, -4, 1]).mul(&p(&[6, -5, 1]));
        let (a, b) = factor_with_known_double_root(&f, &BigInt::from(2)).unwrap();
        assert_eq!((a, b), (BigInt::from(5), BigInt::from(6)));
        assert!(matches!(
            factor_with_known_double_root(&f, &BigInt::from(3)),
            Err(Error::NotADoubleRoot { .. })
        ));
    }

    #[test]
    fn roots_with_quartic_split() {
        // (t^2 + 1)(t^2 - 2t - 1)
        let f = p(&[1, 0, 1]).mul(&p(&[-1, -2, 1]));
        let (real, complex) = f.roots().unwrap();
        assert_eq!(complex, 2);
        assert_eq!(real[0], QuadVal::new(rat(1), rat(1), 2));
        assert_eq!(real[1], QuadVal::new(rat(1), rat(-1), 2));
    }

    #[test]
    fn roots_integer_and_quadratic() {
        let f = p(&[64, -16, 1]).mul(&p(&[96, -72, 1]));
        let (real, _) = f.roots().unwrap();
        assert_eq!(
            real,
            vec![
                QuadVal::new(rat(36), rat(20), 3),
                QuadVal::from_int(8),
                QuadVal::from_int(8),
                QuadVal::new(rat(36), rat(-20), 3),
            ]
        );
    }

    #[test]
    fn irreducible_cubic_is_rejected() {
        let f = p(&[-2, 0, 0, 1]);
        assert_eq!(f.roots(), Err(Error::EigenvalueDegreeTooHigh { degree: 3 }));
    }

    #[test]
    fn display_poly() {
        assert_eq!(p(&[-3, -1, 1, 0]).to_string(), "t^2 - t - 3");
    }

    proptest! {
        #[test]
        fn cayley_hamilton(entries in proptest::collection::vec(-5i64..=5, 16)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|r| r.to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            prop_assert!(m.eval_poly(&m.char_poly()).is_zero());
        }

        #[test]
        fn det_matches_cofactor_expansion(entries in proptest::collection::vec(-5i64..=5, 9)) {
            let e = &entries;
            let cof = e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6])
                + e[2] * (e[3] * e[7] - e[4] * e[6]);
            let rows: Vec<Vec<i64>> = entries.chunks(3).map(|r| r.to_vec()).collect();
            prop_assert_eq!(IntMatrix::from_rows(&rows).det(), BigInt::from(cof));
        }
    }
}
