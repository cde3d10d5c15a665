//! Elements `p + q sqrt(c)` with `p, q` in a small cyclotomic field, i.e. the
//! compositum Q(zeta_n, sqrt(c)) without materialising its full conductor.

use std::ops::{Add, Mul, Neg, Sub};

use super::cyclo::Cyclo;
use super::ntheory::{lcm, quadratic_conductor};
use super::quad::Quad;
use crate::scalar::{int, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloQuad<T> {
    p: Cyclo<T>,
    q: Cyclo<T>,
    c: u64,
}

impl<T: Scalar> CycloQuad<T> {
    pub fn new(p: Cyclo<T>, q: Cyclo<T>, c: u64) -> Self {
        let m = lcm(p.order(), q.order());
        CycloQuad {
            p: p.embed(m),
            q: q.embed(m),
            c,
        }
    }

    pub fn from_cyclo(p: Cyclo<T>, c: u64) -> Self {
        let q = Cyclo::zero(p.order());
        Self::new(p, q, c)
    }

    pub fn from_quad(x: &Quad<T>, order: u64, c: u64) -> Self {
        assert!(x.is_rational() || x.c() == c, "radicand mismatch");
        Self::new(
            Cyclo::from_scalar(order, x.a().clone()),
            Cyclo::from_scalar(order, x.b().clone()),
            c,
        )
    }

    pub fn p(&self) -> &Cyclo<T> {
        &self.p
    }

    pub fn q(&self) -> &Cyclo<T> {
        &self.q
    }

    pub fn scale(&self, s: &T) -> Self {
        CycloQuad {
            p: self.p.scale(s),
            q: self.q.scale(s),
            c: self.c,
        }
    }

    /// Exact zero test. When sqrt(c) already lies in Q(zeta_n) the two parts
    /// are not independent, so sqrt(c) is substituted first.
    pub fn is_zero(&self) -> bool {
        let n = self.p.order();
        if self.c > 1 && n.is_multiple_of(quadratic_conductor(self.c)) {
            let s = Cyclo::sqrt_c(self.c);
            (self.p.clone() + self.q.clone() * s).is_zero()
        } else {
            self.p.is_zero() && self.q.is_zero()
        }
    }

    pub fn equal(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl<T: Scalar> Add for CycloQuad<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.c, rhs.c, "radicand mismatch");
        CycloQuad::new(self.p + rhs.p, self.q + rhs.q, self.c)
    }
}

impl<T: Scalar> Sub for CycloQuad<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for CycloQuad<T> {
    type Output = Self;
    fn neg(self) -> Self {
        CycloQuad {
            p: -self.p,
            q: -self.q,
            c: self.c,
        }
    }
}

impl<T: Scalar> Mul for CycloQuad<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.c, rhs.c, "radicand mismatch");
        let c: T = int(self.c as i64);
        let p = self.p.clone() * rhs.p.clone() + (self.q.clone() * rhs.q.clone()).scale(&c);
        let q = self.p * rhs.q + self.q * rhs.p;
        CycloQuad::new(p, q, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::{CycloElem, QuadVal};

    #[test]
    fn sqrt3_inside_twelfth_roots() {
        // sqrt(3) - (zeta12 + zeta12^11) = 0 once sqrt(3) is substituted.
        let s = CycloQuad::from_quad(&QuadVal::sqrt_of(3), 12, 3);
        let t = CycloQuad::from_cyclo(CycloElem::root(12, 1) + CycloElem::root(12, 11), 3);
        assert!(s.equal(&t));
    }

    #[test]
    fn independent_parts() {
        let s = CycloQuad::from_quad(&QuadVal::sqrt_of(21), 3, 21);
        assert!(!s.is_zero());
        let sq = s.clone() * s;
        assert!(sq.equal(&CycloQuad::from_quad(&QuadVal::from_int(21), 3, 21)));
        assert_eq!(sq.q().as_scalar(), Some(rat(0)));
    }
}
