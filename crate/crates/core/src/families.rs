//! The six-parameter family `K(c, e, k, l, p, q)` of rank-4 based rings with
//! basis (1, X, Y, Z), `X* = Z`, `Y* = Y`, and its four-parameter
//! reparametrisation `R(x, y, g, d)`.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::based_ring::FusionRing;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KParams {
    pub c: i64,
    pub e: i64,
    pub k: i64,
    pub l: i64,
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RParams {
    pub x: i64,
    pub y: i64,
    pub g: i64,
    pub d: i64,
}

/// Result of checking the four defining equations of `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KConstraintReport {
    /// Left minus right side of each equation, in order.
    pub residuals: [i64; 4],
    pub nonnegative: bool,
    pub ok: bool,
}

/// Named members of the two surviving families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyMember {
    /// `K(1, e, 1, 0, 0, 0)`.
    K1(i64),
    /// `K(c, 0, 0, 1, c, 0)`.
    K2(i64),
}

impl std::fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyMember::K1(e) => write!(f, "K1({e})"),
            FamilyMember::K2(c) => write!(f, "K2({c})"),
        }
    }
}

pub fn k_constraints(c: i64, e: i64, k: i64, l: i64, p: i64, q: i64) -> KConstraintReport {
    let residuals = [
        (k * l + l * c) - (l * p + k * q),
        (k * p + l * e + k * c) - (2 * l * q + k * k),
        (l * l + c * c) - (1 + q * q + p * p),
        (l * l + k * k + q * q) - (1 + 2 * p * k + q * e),
    ];
    let nonnegative = [c, e, k, l, p, q].iter().all(|&v| v >= 0);
    KConstraintReport {
        residuals,
        nonnegative,
        ok: nonnegative && residuals.iter().all(|&r| r == 0),
    }
}

impl KParams {
    pub fn new(c: i64, e: i64, k: i64, l: i64, p: i64, q: i64) -> Result<Self> {
        let kp = KParams { c, e, k, l, p, q };
        let rep = kp.constraints();
        if rep.ok {
            Ok(kp)
        } else {
            Err(Error::ConstraintViolation(describe_k_failure(&rep)))
        }
    }

    pub fn k1(e: i64) -> Self {
        KParams::new(1, e, 1, 0, 0, 0).expect("K1(e) needs e >= 0")
    }

    pub fn k2(c: i64) -> Self {
        KParams::new(c, 0, 0, 1, c, 0).expect("K2(c) needs c >= 0")
    }

    pub fn constraints(&self) -> KConstraintReport {
        k_constraints(self.c, self.e, self.k, self.l, self.p, self.q)
    }

    pub fn as_tuple(&self) -> [i64; 6] {
        [self.c, self.e, self.k, self.l, self.p, self.q]
    }

    pub fn family_member(&self) -> Option<FamilyMember> {
        match self.as_tuple() {
            [1, e, 1, 0, 0, 0] => Some(FamilyMember::K1(e)),
            [c, 0, 0, 1, p, 0] if c == p => Some(FamilyMember::K2(c)),
            _ => None,
        }
    }

    /// The ring with multiplication table
    /// `X^2 = pX + lY + cZ`, `XY = qX + kY + lZ`, `XZ = 1 + pX + qY + pZ`,
    /// `Y^2 = 1 + kX + eY + kZ`, `YZ = lX + kY + qZ`, `Z^2 = cX + lY + pZ`.
    pub fn build(&self) -> Result<FusionRing> {
        let rep = self.constraints();
        if !rep.ok {
            return Err(Error::ConstraintViolation(describe_k_failure(&rep)));
        }
        let KParams { c, e, k, l, p, q } = *self;
        let basis = |i: usize| -> Vec<i64> { (0..4).map(|j| (i == j) as i64).collect() };
        let xx = vec![0, p, l, c];
        let xy = vec![0, q, k, l];
        let xz = vec![1, p, q, p];
        let yy = vec![1, k, e, k];
        let yz = vec![0, l, k, q];
        let zz = vec![0, c, l, p];
        let n = vec![
            vec![basis(0), basis(1), basis(2), basis(3)],
            vec![basis(1), xx, xy.clone(), xz.clone()],
            vec![basis(2), xy, yy, yz.clone()],
            vec![basis(3), xz, yz, zz],
        ];
        Ok(FusionRing::new(vec![0, 3, 2, 1], n)?.with_labels(&["1", "X", "Y", "Z"]))
    }

    /// Recovers `R(x, y, g, d)` following the reparametrisation argument:
    /// `l = gx`, `k = gy` with `gcd(x, y) = 1`, `q = (g + b)x`, `c - p = by`,
    /// `c + p = dx + gy`, and `b = 1` after an overall sign flip.
    pub fn to_r(&self) -> Result<RParams> {
        let rep = self.constraints();
        if !rep.ok {
            return Err(Error::NoSolution(describe_k_failure(&rep)));
        }
        let KParams { c, e, k, l, p, q } = *self;
        let g = k.gcd(&l);
        if g == 0 {
            return Err(Error::NoSolution("k = l = 0 forces g = 0".into()));
        }
        let (x, y) = (l / g, k / g);
        let b = if y != 0 {
            exact(c - p, y, "y does not divide c - p")?
        } else {
            exact(q, x, "x does not divide q")? - g
        };
        let d = if x != 0 {
            exact(p + c - g * y, x, "x does not divide p + c - gy")?
        } else {
            exact(2 * q - e, y, "y does not divide 2q - e")?
        };
        let r = match b {
            1 => RParams { x, y, g, d },
            -1 => RParams {
                x: -x,
                y: -y,
                g: -g,
                d: -d,
            },
            _ => return Err(Error::NoSolution(format!("b = {b} is not a unit"))),
        };
        match r.to_k() {
            Ok(back) if back == *self => Ok(r),
            _ => Err(Error::NoSolution(format!(
                "{r:?} does not reproduce {self:?}"
            ))),
        }
    }
}

fn exact(num: i64, den: i64, what: &str) -> Result<i64> {
    if den != 0 && num % den == 0 {
        Ok(num / den)
    } else {
        Err(Error::NoSolution(what.into()))
    }
}

fn describe_k_failure(rep: &KConstraintReport) -> String {
    if !rep.nonnegative {
        return "parameters must be nonnegative".into();
    }
    let names = [
        "kl + lc = lp + kq",
        "kp + le + kc = 2lq + k^2",
        "l^2 + c^2 = 1 + q^2 + p^2",
        "l^2 + k^2 + q^2 = 1 + 2pk + qe",
    ];
    rep.residuals
        .iter()
        .zip(names)
        .filter(|(r, _)| **r != 0)
        .map(|(r, n)| format!("{n} (off by {r})"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Which `R` invariants a quadruple satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RCheck {
    pub parity: bool,
    pub equation: bool,
    pub nonnegative: bool,
}

impl RCheck {
    pub fn ok(&self) -> bool {
        self.parity && self.equation && self.nonnegative
    }
}

/// Structural facts that every valid quadruple must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub x_plus_y_odd: bool,
    pub g_nonzero: bool,
    /// `x` and `y` are both `>= 0` or both `<= 0`.
    pub same_sign: bool,
}

impl StructuralReport {
    pub fn all(&self) -> bool {
        self.x_plus_y_odd && self.g_nonzero && self.same_sign
    }
}

impl RParams {
    pub fn new(x: i64, y: i64, g: i64, d: i64) -> Self {
        RParams { x, y, g, d }
    }

    /// The six `K` coordinates before any divisibility or sign checks, with
    /// `c` and `p` doubled.
    fn raw(&self) -> [i64; 6] {
        let RParams { x, y, g, d } = *self;
        [
            y * g + x * d + y,
            2 * x * g - y * d + 2 * x,
            g * y,
            g * x,
            y * g + x * d - y,
            x * g + x,
        ]
    }

    pub fn check(&self) -> RCheck {
        let RParams { x, y, g, d } = *self;
        let raw = self.raw();
        let parity = raw[0].rem_euclid(2) == 0;
        let equation = d * x * y == g * (2 * x * x - y * y) + x * x + 1;
        RCheck {
            parity,
            equation,
            nonnegative: raw.iter().all(|&v| v >= 0),
        }
    }

    pub fn to_k(&self) -> Result<KParams> {
        let chk = self.check();
        if !chk.parity {
            return Err(Error::ConstraintViolation("yg + xd + y is odd".into()));
        }
        if !chk.equation {
            return Err(Error::ConstraintViolation(
                "dxy = g(2x^2 - y^2) + x^2 + 1 fails".into(),
            ));
        }
        let raw = self.raw();
        let names = ["c", "e", "k", "l", "p", "q"];
        let vals = [raw[0] / 2, raw[1], raw[2], raw[3], raw[4] / 2, raw[5]];
        if let Some(i) = vals.iter().position(|&v| v < 0) {
            return Err(Error::ConstraintViolation(format!(
                "{} = {} is negative",
                names[i], vals[i]
            )));
        }
        KParams::new(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5])
    }

    pub fn structural(&self) -> StructuralReport {
        let RParams { x, y, g, .. } = *self;
        StructuralReport {
            x_plus_y_odd: (x + y).rem_euclid(2) == 1,
            g_nonzero: g != 0,
            same_sign: (x >= 0 && y >= 0) || (x <= 0 && y <= 0),
        }
    }

    /// The double root `2x^2 + y^2 + 2` of the codegree polynomial.
    pub fn gamma(&self) -> i64 {
        2 * self.x * self.x + self.y * self.y + 2
    }
}

/// Symmetric search box `|x| <= xmax`, ... for `R(x, y, g, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RBox {
    pub xmax: i64,
    pub ymax: i64,
    pub gmax: i64,
    pub dmax: i64,
}

impl RBox {
    pub fn new(xmax: i64, ymax: i64, gmax: i64, dmax: i64) -> Self {
        RBox {
            xmax,
            ymax,
            gmax,
            dmax,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.xmax < 0 || self.ymax < 0 || self.gmax < 0 || self.dmax < 0
    }
}

impl Default for RBox {
    fn default() -> Self {
        RBox::new(3, 3, 6, 40)
    }
}

/// All valid quadruples in the box, in lexicographic order of `(x, y, g, d)`.
pub fn enumerate_r(b: RBox) -> Vec<RParams> {
    if b.is_empty() {
        return Vec::new();
    }
    let shards: Vec<Vec<RParams>> = (-b.xmax..=b.xmax)
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            for y in -b.ymax..=b.ymax {
                for g in -b.gmax..=b.gmax {
                    for d in -b.dmax..=b.dmax {
                        let r = RParams { x, y, g, d };
                        if r.check().ok() {
                            out.push(r);
                        }
                    }
                }
            }
            out
        })
        .collect();
    shards.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_examples() {
        for e in 0..20 {
            assert!(k_constraints(1, e, 1, 0, 0, 0).ok);
        }
        for c in 0..20 {
            assert!(k_constraints(c, 0, 0, 1, c, 0).ok);
        }
        let bad = k_constraints(1, 1, 1, 1, 1, 1);
        assert!(!bad.ok);
        assert_eq!(bad.residuals[2], -1);
    }

    #[test]
    fn r_to_k_examples() {
        assert_eq!(RParams::new(0, 1, 1, -6).to_k().unwrap(), KParams::k1(6));
        assert_eq!(RParams::new(-1, 0, -1, -4).to_k().unwrap(), KParams::k2(2));
        assert!(matches!(
            RParams::new(0, 1, 1, 1).to_k(),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn k_to_r_examples() {
        assert_eq!(KParams::k1(6).to_r().unwrap(), RParams::new(0, 1, 1, -6));
        assert_eq!(KParams::k2(2).to_r().unwrap(), RParams::new(-1, 0, -1, -4));
    }

    #[test]
    fn family_members() {
        assert_eq!(KParams::k1(3).family_member(), Some(FamilyMember::K1(3)));
        assert_eq!(KParams::k2(0).family_member(), Some(FamilyMember::K2(0)));
    }

    #[test]
    fn build_k2_table() {
        let r = KParams::k2(2).build().unwrap();
        assert_eq!(r.tensor()[1][3], vec![1, 2, 0, 2]);
        assert!(r.verify().passed);
    }

    #[test]
    fn empty_box() {
        assert!(enumerate_r(RBox::new(0, 0, 0, 0)).is_empty());
        assert!(enumerate_r(RBox::new(-1, 3, 3, 3)).is_empty());
    }
}
