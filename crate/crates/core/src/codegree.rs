//! Formal-codegree obstructions for rank-4 rings with two self-dual basis
//! elements, and the classification sweep over `R(x, y, g, d)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::poly::{factor_with_known_double_root, quadratic_roots, IntMatrix, IntPoly};
use crate::arith::quad::Sign;
use crate::error::{Error, Result};
use crate::families::{enumerate_r, FamilyMember, KParams, RBox, RParams};
use crate::{QuadVal, Rational};

/// `P_A = (t - gamma)^2 (t^2 - alpha t + beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticFactorization {
    pub gamma: BigInt,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub poly: IntPoly,
    /// Real roots of the quadratic factor, larger first.
    pub quadratic_roots: Option<(QuadVal, QuadVal)>,
}

impl QuarticFactorization {
    /// All four codegrees in decreasing order.
    pub fn codegrees(&self) -> Result<Vec<QuadVal>> {
        let (r1, r2) = self
            .quadratic_roots
            .clone()
            .ok_or_else(|| Error::ShapeMismatch("quadratic factor has complex roots".into()))?;
        let g = QuadVal::rational(Rational::from_integer(self.gamma.clone()));
        let mut v = vec![g.clone(), g, r1, r2];
        v.sort_by(|a, b| b.cmp_exact(a));
        Ok(v)
    }

    /// True when the quadratic factor splits over the integers.
    pub fn quadratic_is_split(&self) -> bool {
        self.quadratic_roots
            .as_ref()
            .is_some_and(|(a, b)| a.to_integer().is_some() && b.to_integer().is_some())
    }
}

/// `A = 1 + M_Y^2 + 2 M_X M_Z` assembled straight from the six parameters,
/// without checking that they define a ring.
pub fn codegree_matrix_from_params(k: &KParams) -> IntMatrix {
    let KParams { c, e, k, l, p, q } = *k;
    let mx = IntMatrix::from_rows(&[
        vec![0, 0, 0, 1],
        vec![1, p, q, p],
        vec![0, l, k, q],
        vec![0, c, l, p],
    ]);
    let my = IntMatrix::from_rows(&[
        vec![0, 0, 1, 0],
        vec![0, q, k, l],
        vec![1, k, e, k],
        vec![0, l, k, q],
    ]);
    let mz = IntMatrix::from_rows(&[
        vec![0, 1, 0, 0],
        vec![0, p, l, c],
        vec![0, q, k, l],
        vec![1, p, q, p],
    ]);
    IntMatrix::identity(4)
        .add(&my.mul(&my))
        .add(&mx.mul(&mz).scale(&BigInt::from(2)))
}

/// Builds `R(x, y, g, d)`, computes `P_A`, and factors out the double root
/// `gamma = 2x^2 + y^2 + 2`.
pub fn gamma_double_root_check(r: &RParams) -> Result<QuarticFactorization> {
    let ring = r.to_k()?.build()?;
    let poly = ring.codegree_matrix().char_poly();
    let gamma = BigInt::from(r.gamma());
    let (alpha, beta) = factor_with_known_double_root(&poly, &gamma)?;
    let quadratic_roots = quadratic_roots(&alpha, &beta)?;
    Ok(QuarticFactorization {
        gamma,
        alpha,
        beta,
        poly,
        quadratic_roots,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateReport {
    pub all_positive: bool,
    pub reciprocal_sum: QuadVal,
    pub reciprocal_sum_is_one: bool,
    pub square_reciprocal_sum: QuadVal,
    /// `(1 + 1/f_1) / 2`.
    pub square_bound: QuadVal,
    /// `square_bound - square_reciprocal_sum`; nonnegative when the bound holds.
    pub slack: QuadVal,
    pub square_bound_holds: bool,
    pub passed: bool,
}

impl GateReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.all_positive {
            out.push("codegrees must be positive");
        }
        if !self.reciprocal_sum_is_one {
            out.push("sum of reciprocal codegrees must be 1");
        }
        if !self.square_bound_holds {
            out.push("sum of squared reciprocals exceeds (1 + 1/f1)/2");
        }
        out
    }
}

/// Pseudo-unitarity gates on four codegrees: positivity, `sum 1/f_i = 1`
/// and `sum 1/f_i^2 <= (1 + 1/f_1)/2`, all decided exactly.
pub fn ostrik_gates(values: &[QuadVal]) -> Result<GateReport> {
    let f1 = values
        .iter()
        .max_by(|a, b| a.cmp_exact(b))
        .ok_or_else(|| Error::ShapeMismatch("no codegrees".into()))?;
    let all_positive = values.iter().all(|v| v.sign() == Sign::Positive);
    let one = QuadVal::from_int(1);
    let half = QuadVal::rational(Rational::new(BigInt::one(), BigInt::from(2)));
    if !all_positive {
        let zero = QuadVal::from_int(0);
        return Ok(GateReport {
            all_positive,
            reciprocal_sum: zero.clone(),
            reciprocal_sum_is_one: false,
            square_reciprocal_sum: zero.clone(),
            square_bound: zero.clone(),
            slack: zero,
            square_bound_holds: false,
            passed: false,
        });
    }
    let mut rs = QuadVal::from_int(0);
    let mut rs2 = QuadVal::from_int(0);
    for v in values {
        let inv = v.try_inv()?;
        rs = rs.try_add(&inv)?;
        rs2 = rs2.try_add(&inv.try_mul(&inv)?)?;
    }
    let bound = half.try_mul(&one.try_add(&f1.try_inv()?)?)?;
    let slack = bound.try_sub(&rs2)?;
    let reciprocal_sum_is_one = rs == one;
    let square_bound_holds = slack.sign() != Sign::Negative;
    Ok(GateReport {
        all_positive,
        reciprocal_sum: rs,
        reciprocal_sum_is_one,
        square_reciprocal_sum: rs2,
        square_bound: bound,
        slack,
        square_bound_holds,
        passed: reciprocal_sum_is_one && square_bound_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaBoundReport {
    pub gamma: i64,
    pub beta_at_least_gamma_sq: bool,
    /// `-alpha/beta = 2/gamma - 1`, checked when `alpha`, `beta` are supplied.
    pub ratio_identity: Option<bool>,
    /// `sum 1/f^2 = 1 + 6/gamma^2 - 4/gamma - 2/beta`, checked likewise.
    pub square_sum_identity: Option<bool>,
    /// `(gamma - 1)(gamma - 8) <= 0`, the inequality the chain reduces to.
    pub chain_inequality: bool,
    pub passed: bool,
}

/// Bound on the double root when the quadratic factor has `beta >= gamma^2`:
/// the gates force `2 < gamma < 8`.
pub fn gamma_bound(gamma: i64, alpha_beta: Option<(i64, i64)>) -> GammaBoundReport {
    let g = Rational::from_integer(gamma.into());
    let r = |n: i64| Rational::from_integer(n.into());
    let (pre, ratio, squares) = match alpha_beta {
        Some((alpha, beta)) if beta != 0 && gamma != 0 => {
            let (a, b) = (r(alpha), r(beta));
            let ratio = -a.clone() / b.clone() == r(2) / g.clone() - r(1);
            let direct = r(2) / (g.clone() * g.clone())
                + (a.clone() * a - r(2) * b.clone()) / (b.clone() * b.clone());
            let formula = r(1) + r(6) / (g.clone() * g.clone()) - r(4) / g.clone() - r(2) / b;
            (beta >= gamma * gamma, Some(ratio), Some(direct == formula))
        }
        Some((_, beta)) => (beta >= gamma * gamma, Some(false), Some(false)),
        None => (true, None, None),
    };
    GammaBoundReport {
        gamma,
        beta_at_least_gamma_sq: pre,
        ratio_identity: ratio,
        square_sum_identity: squares,
        chain_inequality: (gamma - 1) * (gamma - 8) <= 0,
        passed: 2 < gamma && gamma < 8,
    }
}

/// Nonincreasing positive integer quadruples with a repeated entry and
/// `sum 1/f_i = 1`.
pub fn integer_codegree_tuples() -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    // a <= b <= c <= d, 1/a + 1/b + 1/c + 1/d = 1
    for a in 2u64..=4 {
        for b in a..=3 * a / (a - 1) {
            // 1 - 1/a - 1/b = (ab - a - b)/(ab)
            let (rn, rd) = (a * b - a - b, a * b);
            if rn == 0 {
                continue;
            }
            let cmin = b.max(rd / rn + 1);
            for c in cmin..=2 * rd / rn {
                // remaining (rn c - rd) / (rd c)
                let num = rn * c;
                if num <= rd {
                    continue;
                }
                let (dn, dd) = (num - rd, rd * c);
                if dd % dn != 0 {
                    continue;
                }
                let d = dd / dn;
                if d < c {
                    continue;
                }
                if a == b || b == c || c == d {
                    out.push([d, c, b, a]);
                }
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gamma8Row {
    pub x: i64,
    pub y: i64,
    pub g: i64,
    pub d: i64,
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub det: BigInt,
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub formula: BigInt,
    /// Whether `R(x, y, g, d)` is an actual member of the family.
    pub valid_ring: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gamma8Report {
    pub rows: Vec<Gamma8Row>,
    pub formula_matches: bool,
    pub never_512: bool,
    pub passed: bool,
}

/// `4608 g^2 + 1024 g + 512`.
pub fn gamma8_det_formula(g: i64) -> BigInt {
    let g = BigInt::from(g);
    BigInt::from(4608) * &g * &g + BigInt::from(1024) * &g + BigInt::from(512)
}

/// Raw six coordinates of `R(x, y, g, d)` without divisibility or sign checks
/// (`c` and `p` use exact division when possible, else truncation).
fn raw_k(r: &RParams) -> KParams {
    let RParams { x, y, g, d } = *r;
    KParams {
        c: (y * g + x * d + y) / 2,
        e: 2 * x * g - y * d + 2 * x,
        k: g * y,
        l: g * x,
        p: (y * g + x * d - y) / 2,
        q: x * g + x,
    }
}

/// For `(x, y) = (+-1, +-2)` the double root is 8 and the only admissible
/// integer codegrees are (8, 8, 4, 2), so `det A` would be 512. Scans
/// `0 < |g| <= gmax` with `d` forced by the defining equation.
pub fn gamma8_exclusion(gmax: i64) -> Gamma8Report {
    let mut rows = Vec::new();
    for (x, y) in [(-1i64, -2i64), (-1, 2), (1, -2), (1, 2)] {
        for g in -gmax..=gmax {
            if g == 0 {
                continue;
            }
            // dxy = g(2x^2 - y^2) + x^2 + 1 = 2 - 2g
            let d = (2 - 2 * g) / (x * y);
            let r = RParams::new(x, y, g, d);
            let det = if r.check().parity {
                codegree_matrix_from_params(&raw_k(&r)).det()
            } else {
                // c and p are half-integers here; scale by 2 to stay integral.
                det_with_half_integers(&r)
            };
            rows.push(Gamma8Row {
                x,
                y,
                g,
                d,
                det,
                formula: gamma8_det_formula(g),
                valid_ring: r.check().ok(),
            });
        }
    }
    let formula_matches = rows.iter().all(|r| r.det == r.formula);
    let never_512 = rows.iter().all(|r| r.det != BigInt::from(512));
    Gamma8Report {
        rows,
        formula_matches,
        never_512,
        passed: formula_matches && never_512,
    }
}

/// `det A` for quadruples whose `c`, `p` are half-integers, computed as
/// `det(2A)/16` over matrices with doubled entries.
fn det_with_half_integers(r: &RParams) -> BigInt {
    let RParams { x, y, g, d } = *r;
    // doubled coordinates
    let c2 = y * g + x * d + y;
    let p2 = y * g + x * d - y;
    let (e2, k2, l2, q2) = (
        2 * (2 * x * g - y * d + 2 * x),
        2 * g * y,
        2 * g * x,
        2 * (x * g + x),
    );
    let mx = IntMatrix::from_rows(&[
        vec![0, 0, 0, 2],
        vec![2, p2, q2, p2],
        vec![0, l2, k2, q2],
        vec![0, c2, l2, p2],
    ]);
    let my = IntMatrix::from_rows(&[
        vec![0, 0, 2, 0],
        vec![0, q2, k2, l2],
        vec![2, k2, e2, k2],
        vec![0, l2, k2, q2],
    ]);
    let mz = IntMatrix::from_rows(&[
        vec![0, 2, 0, 0],
        vec![0, p2, l2, c2],
        vec![0, q2, k2, l2],
        vec![2, p2, q2, p2],
    ]);
    // 4A = 4 + (2M_Y)^2 + 2 (2M_X)(2M_Z)
    let four_a = IntMatrix::identity(4)
        .scale(&BigInt::from(4))
        .add(&my.mul(&my))
        .add(&mx.mul(&mz).scale(&BigInt::from(2)));
    four_a.det() / BigInt::from(256)
}

/// Values of `2x^2 + y^2 + 2` equal to 12 inside the box (there are none).
pub fn gamma12_witnesses(xmax: i64, ymax: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in -xmax..=xmax {
        for y in -ymax..=ymax {
            if 2 * x * x + y * y + 2 == 12 {
                out.push((x, y));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Survivor {
        member: FamilyMember,
    },
    Rejected {
        reasons: Vec<String>,
    },
    /// Passed every filter without being a family member: a counterexample.
    Unexpected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateOutcome {
    pub r: RParams,
    pub k: KParams,
    pub gamma: i64,
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub alpha: BigInt,
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub beta: BigInt,
    pub double_root_ok: bool,
    pub codegrees: Vec<QuadVal>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub search_box: RBox,
    pub enumerated: usize,
    pub outcomes: Vec<CandidateOutcome>,
    pub survivors: Vec<FamilyMember>,
    pub unexpected: Vec<RParams>,
    pub all_double_roots_ok: bool,
    pub gamma12_witnesses: Vec<(i64, i64)>,
    /// `(x, y) = (+-1, +-2)` candidates and whether each was rejected by `det A`.
    pub gamma8_candidates: usize,
    pub gamma8_rejected_by_det: usize,
}

impl ClassificationReport {
    /// Every survivor is a family member, nothing unexpected passed, the
    /// double-root factorisation held everywhere, and every gamma = 8
    /// candidate failed the determinant test.
    pub fn matches_theorem(&self) -> bool {
        self.unexpected.is_empty()
            && self.all_double_roots_ok
            && self.gamma12_witnesses.is_empty()
            && self.gamma8_rejected_by_det == self.gamma8_candidates
    }
}

fn classify_one(r: RParams) -> CandidateOutcome {
    let k = r.to_k().expect("enumerated quadruples are valid");
    let gamma = r.gamma();
    let fact = match gamma_double_root_check(&r) {
        Ok(f) => f,
        Err(e) => {
            return CandidateOutcome {
                r,
                k,
                gamma,
                alpha: BigInt::zero(),
                beta: BigInt::zero(),
                double_root_ok: false,
                codegrees: vec![],
                verdict: Verdict::Rejected {
                    reasons: vec![format!("double-root factorisation failed: {e}")],
                },
            }
        }
    };
    let mut reasons = Vec::new();
    let codegrees = fact.codegrees().unwrap_or_default();
    if codegrees.is_empty() {
        reasons.push("codegrees are not all real".to_string());
    } else {
        match ostrik_gates(&codegrees) {
            Ok(g) => reasons.extend(g.failures().into_iter().map(String::from)),
            Err(e) => reasons.push(format!("gate evaluation failed: {e}")),
        }
    }
    if gamma == 8 {
        let det = codegree_matrix_from_params(&k).det();
        if det != BigInt::from(512) {
            reasons.push(format!(
                "gamma = 8 needs codegrees (8, 8, 4, 2) and det A = 512, but det A = {det}"
            ));
        }
    } else if !fact.quadratic_is_split() {
        let (g, b) = (BigInt::from(gamma), &fact.beta);
        if *b < &g * &g {
            reasons.push(format!(
                "irreducible quadratic needs gamma^2 | beta, but beta = {b} < gamma^2"
            ));
        } else {
            let rep = gamma_bound(
                gamma,
                Some((fact.alpha.to_i64().unwrap_or(0), b.to_i64().unwrap_or(0))),
            );
            if !rep.passed {
                reasons.push(format!(
                    "beta >= gamma^2 forces 2 < gamma < 8, but gamma = {gamma}"
                ));
            }
        }
    }
    if gamma == 12 {
        reasons.push("gamma = 12 is not of the form 2x^2 + y^2 + 2".into());
    }
    let verdict = if !reasons.is_empty() {
        Verdict::Rejected { reasons }
    } else {
        match k.family_member() {
            Some(member) => Verdict::Survivor { member },
            None => Verdict::Unexpected,
        }
    };
    CandidateOutcome {
        r,
        k,
        gamma,
        alpha: fact.alpha,
        beta: fact.beta,
        double_root_ok: true,
        codegrees,
        verdict,
    }
}

/// Runs the full codegree pipeline over every valid quadruple in the box.
pub fn classify_rank4(b: RBox) -> ClassificationReport {
    let rs = enumerate_r(b);
    let outcomes: Vec<CandidateOutcome> = rs.par_iter().map(|&r| classify_one(r)).collect();
    let mut survivors: Vec<FamilyMember> = outcomes
        .iter()
        .filter_map(|o| match o.verdict {
            Verdict::Survivor { member } => Some(member),
            _ => None,
        })
        .collect();
    survivors.sort_unstable();
    survivors.dedup();
    let unexpected = outcomes
        .iter()
        .filter(|o| o.verdict == Verdict::Unexpected)
        .map(|o| o.r)
        .collect();
    let gamma8: Vec<&CandidateOutcome> = outcomes
        .iter()
        .filter(|o| o.r.x.abs() == 1 && o.r.y.abs() == 2)
        .collect();
    let gamma8_rejected_by_det = gamma8
        .iter()
        .filter(|o| match &o.verdict {
            Verdict::Rejected { reasons } => reasons.iter().any(|r| r.contains("det A")),
            _ => false,
        })
        .count();
    ClassificationReport {
        search_box: b,
        enumerated: rs.len(),
        all_double_roots_ok: outcomes.iter().all(|o| o.double_root_ok),
        gamma12_witnesses: if b.is_empty() {
            vec![]
        } else {
            gamma12_witnesses(b.xmax, b.ymax)
        },
        gamma8_candidates: gamma8.len(),
        gamma8_rejected_by_det,
        outcomes,
        survivors,
        unexpected,
    }
}

/// Whether `v` is a positive rational integer.
pub fn is_positive_integer(v: &QuadVal) -> bool {
    v.to_integer().is_some_and(|n| n.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ints(v: &[i64]) -> Vec<QuadVal> {
        v.iter().map(|&n| QuadVal::from_int(n)).collect()
    }

    #[test]
    fn gates_on_small_tuples() {
        let g = ostrik_gates(&ints(&[4, 4, 4, 4])).unwrap();
        assert!(g.passed);
        assert_eq!(
            g.square_reciprocal_sum,
            QuadVal::rational(Rational::new(1.into(), 4.into()))
        );
        let g = ostrik_gates(&ints(&[6, 6, 6, 2])).unwrap();
        assert!(g.passed);
        assert_eq!(
            g.square_reciprocal_sum,
            QuadVal::rational(Rational::new(1.into(), 3.into()))
        );
        assert_eq!(
            g.square_bound,
            QuadVal::rational(Rational::new(7.into(), 12.into()))
        );
    }

    #[test]
    fn gates_on_table_one_values() {
        let v = vec![
            QuadVal::new(rat(36), rat(20), 3),
            QuadVal::new(rat(36), rat(-20), 3),
            QuadVal::from_int(8),
            QuadVal::from_int(8),
        ];
        let g = ostrik_gates(&v).unwrap();
        assert!(g.reciprocal_sum_is_one);
        assert!(!g.square_bound_holds);
    }

    #[test]
    fn gamma_bound_cases() {
        assert!(gamma_bound(3, None).passed);
        assert!(!gamma_bound(8, None).passed);
        assert!(!gamma_bound(2, None).passed);
        // (t - 3)^2 (t^2 - 21t + 63) from K1(3)
        let rep = gamma_bound(3, Some((21, 63)));
        assert_eq!(rep.ratio_identity, Some(true));
        assert_eq!(rep.square_sum_identity, Some(true));
    }

    #[test]
    fn double_roots_of_examples() {
        assert_eq!(
            gamma_double_root_check(&RParams::new(0, 1, 1, -6))
                .unwrap()
                .gamma,
            3.into()
        );
        assert_eq!(
            gamma_double_root_check(&RParams::new(-1, 0, -1, -4))
                .unwrap()
                .gamma,
            4.into()
        );
        let f = gamma_double_root_check(&RParams::new(0, 1, 1, 0)).unwrap();
        assert_eq!(f.codegrees().unwrap(), ints(&[6, 6, 3, 3]));
    }

    #[test]
    fn det_formula_values() {
        assert_eq!(gamma8_det_formula(1), 6144.into());
        assert_eq!(gamma8_det_formula(-1), 4096.into());
        assert_eq!(gamma8_det_formula(0), 512.into());
    }

    #[test]
    fn gamma_eight_scan() {
        let rep = gamma8_exclusion(25);
        assert!(rep.formula_matches);
        assert!(rep.passed);
    }

    #[test]
    fn empty_classification() {
        let rep = classify_rank4(RBox::new(-1, 0, 0, 0));
        assert_eq!(rep.enumerated, 0);
        assert!(rep.survivors.is_empty());
    }
}
