//! Drinfeld-center data for hypothetical categorifications of the two
//! one-parameter families, the trace identities their twists must satisfy,
//! and the resulting feasibility scans.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::cyclo_quad::CycloQuad;
use crate::arith::ntheory::{euler_phi, exact_sqrt, gcd, squarefree_part};
use crate::arith::{frac, rat};
use crate::cyclotomic::{bound_paired, bound_sqrt2, bound_sqrt_general};
use crate::error::{Error, Result};
use crate::{CycloElem, QuadVal, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    /// None of the obstructions rules the parameter out.
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    K1,
    K2,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::K1 => "k1",
            Family::K2 => "k2",
        })
    }
}

/// `a >= b` for exact quadratic values with possibly different radicands.
fn at_least(a: &QuadVal, b: &QuadVal) -> bool {
    a.cmp_exact(b) != std::cmp::Ordering::Less
}

fn q_int(n: i64) -> QuadVal {
    QuadVal::from_int(n)
}

const ASSUME_NONNEG: &str = "branching multiplicities are nonnegative integers";
const ASSUME_FEASIBLE: &str = "feasible means the obstructions do not rule the parameter out, not that a categorification exists";

// ---------------------------------------------------------------- K1 ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaStatus {
    /// `e = 2`: delta = 3, the representation ring of A4.
    Rational,
    /// `3` does not divide `e`.
    NonIntegralK,
    Irrational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K1Dimension {
    pub e: i64,
    pub k: Option<i64>,
    /// `(e + sqrt(e^2 + 12)) / 2`.
    pub delta: QuadVal,
    /// `1 + 1 + 1 + delta^2`.
    pub dim: QuadVal,
    pub status: DeltaStatus,
}

pub fn k1_delta(e: i64) -> QuadVal {
    QuadVal::from_sqrt_multiple(frac(e, 2), frac(1, 2), (e * e + 12) as u64)
}

pub fn k1_dimension_data(e: i64) -> K1Dimension {
    assert!(e >= 0, "e must be nonnegative");
    let delta = k1_delta(e);
    let dim = q_int(3) + delta.clone() * delta.clone();
    let (k, status) = if e == 2 {
        (None, DeltaStatus::Rational)
    } else if e % 3 != 0 {
        (None, DeltaStatus::NonIntegralK)
    } else {
        (Some(e / 3), DeltaStatus::Irrational)
    };
    K1Dimension {
        e,
        k,
        delta,
        dim,
        status,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K1CenterData {
    pub e: i64,
    pub k: i64,
    pub delta: QuadVal,
    pub dim: QuadVal,
    pub dims: BTreeMap<&'static str, QuadVal>,
    pub alpha: i64,
    pub r: i64,
    pub p: i64,
    /// `6 + 5k^2 - 2(r^2 + p^2)`.
    pub gamma_sq_sum: i64,
    /// Squarefree part of `9k^2 + 12`.
    pub c_sf: u64,
    /// `sqrt((9k^2 + 12) / c_sf)`.
    pub m: u64,
    /// `3 | c_sf` and `gcd(c_sf, 10) = 1`.
    pub c_sf_checks: bool,
}

impl K1CenterData {
    /// Dimension sums of the induced objects `I(1)`, `I(X)`, `I(Y)` against
    /// `dim C`, `dim C`, `delta dim C`.
    pub fn dimension_sums_consistent(&self) -> bool {
        let d = |s: &str| self.dims[s].clone();
        let i1 = q_int(1) + d("A") + d("B") + d("C");
        let ix = d("B") + d("D") + d("E") + d("G");
        let iz = d("C") + d("D") + d("H") + d("J");
        let (k, r, p) = (q_int(self.k), q_int(self.r), q_int(self.p));
        let iy = k.clone() * (d("A") + d("B") + d("C") + d("D"))
            + r.clone() * (d("E") + d("H"))
            + p.clone() * (d("G") + d("J"))
            + q_int(self.gamma_sq_sum) * self.delta.clone();
        i1 == self.dim
            && ix == self.dim
            && iz == self.dim
            && iy == self.dim.clone() * self.delta.clone()
    }
}

/// Squarefree part of `9k^2 + 12` with its square cofactor.
pub fn k1_radicand(k: i64) -> (u64, u64) {
    squarefree_part((9 * k * k + 12) as u64)
}

/// Every branching `(alpha, r, p) = (k, r, k - r)` with `sum gamma^2 >= 0`.
pub fn k1_branchings(k: i64) -> Vec<K1CenterData> {
    assert!(k >= 0);
    let e = 3 * k;
    let delta = k1_delta(e);
    let dim = q_int(6) + q_int(3 * k) * delta.clone();
    let (c_sf, m) = k1_radicand(k);
    let c_sf_checks = c_sf % 3 == 0 && gcd(c_sf, 10) == 1;
    let lin = |a: i64, b: i64| q_int(a) + q_int(b) * delta.clone();
    (0..=k)
        .filter_map(|r| {
            let p = k - r;
            let gamma_sq_sum = 6 + 5 * k * k - 2 * (r * r + p * p);
            if gamma_sq_sum < 0 {
                return None;
            }
            let dims = BTreeMap::from([
                ("A", lin(1, k)),
                ("B", lin(2, k)),
                ("C", lin(2, k)),
                ("D", lin(2, k)),
                ("E", lin(1, r)),
                ("H", lin(1, r)),
                ("G", lin(1, p)),
                ("J", lin(1, p)),
            ]);
            Some(K1CenterData {
                e,
                k,
                delta: delta.clone(),
                dim: dim.clone(),
                dims,
                alpha: k,
                r,
                p,
                gamma_sq_sum,
                c_sf,
                m,
                c_sf_checks,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K1Targets {
    /// `+1` or `-1`: the sign in `(-k +- 2) sqrt(9k^2 + 12)`.
    pub sign: i8,
    /// Real target for `sum gamma^2 (theta + conj theta)`.
    pub sum_target: QuadVal,
    /// Real target for `sum gamma^2 (theta^2 + conj theta^2)`.
    pub square_target: QuadVal,
    /// Coefficient of `sqrt(3) i` in `sum gamma^2 theta`, up to sign.
    #[serde(serialize_with = "crate::arith::serialize_rat")]
    pub imag_sqrt3_coeff: Rational,
    /// At most `2 sum gamma^2 = 12 + 6k^2 + 8rp` roots of unity occur.
    pub budget: i64,
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

pub fn k1_twist_targets(data: &K1CenterData, sign: i8) -> K1Targets {
    assert!(sign == 1 || sign == -1);
    let (k, r, p) = (data.k, data.r, data.p);
    let n = (9 * k * k + 12) as u64;
    let rp4 = 4 * r * p;
    let budget = 2 * data.gamma_sq_sum;
    debug_assert_eq!(budget, 12 + 6 * k * k + 8 * r * p);
    let m = data.m as i64;
    K1Targets {
        sign,
        sum_target: QuadVal::from_sqrt_multiple(rat(-rp4), rat(-k), n),
        square_target: QuadVal::from_sqrt_multiple(rat(-rp4), rat(-k + 2 * sign as i64), n),
        imag_sqrt3_coeff: frac(k * k - rp4, 2),
        budget,
        a: rp4,
        b: k * m,
        d: (k + 2 * sign as i64) * m,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum K1Case {
    /// `e = 2`.
    RationalDelta,
    /// `3` does not divide `e`.
    IntegralityOfK,
    /// `c_sf = 3`: budget against the paired bound with `phi(3) = 2`.
    SqrtThree,
    /// `c_sf = 21`.
    TwentyOne,
    /// `c_sf >= 33`: `phi(c) / sqrt(c) >= phi(33) / sqrt(33)`.
    PhiRatio,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K1BranchEvidence {
    pub r: i64,
    pub p: i64,
    pub sign: i8,
    pub budget: i64,
    /// Paired lower bound when its hypotheses hold.
    pub paired_bound: Option<i64>,
    /// `d < 0`: the paired bound does not apply.
    pub hypothesis_gap: bool,
    /// The case inequality holds (so this branching is not ruled out).
    pub route_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K1Verdict {
    pub param: i64,
    pub verdict: Feasibility,
    pub case: K1Case,
    pub k: Option<i64>,
    pub c_sf: Option<u64>,
    pub m: Option<u64>,
    /// The decisive inequality, `lhs >= rhs`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inequality: Option<Inequality>,
    pub evidence: Vec<K1BranchEvidence>,
    pub flags: Vec<String>,
    pub assumptions: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub description: String,
    pub lhs: QuadVal,
    pub rhs: QuadVal,
    pub holds: bool,
}

impl Inequality {
    fn new(description: impl Into<String>, lhs: QuadVal, rhs: QuadVal) -> Self {
        let holds = at_least(&lhs, &rhs);
        Inequality {
            description: description.into(),
            lhs,
            rhs,
            holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiRatioCheck {
    pub c: u64,
    pub threshold: u64,
    /// `phi(c)^2 * threshold`.
    pub lhs: u64,
    /// `phi(threshold)^2 * c`.
    pub rhs: u64,
    pub holds: bool,
}

/// `phi(c) / sqrt(c) >= phi(T) / sqrt(T)` with `T = 33` for `c >= 33` and
/// `T = 21` for `21 <= c < 33`, cross-multiplied into integers.
pub fn phi_ratio_bound(c: u64) -> Result<PhiRatioCheck> {
    let (sf, _) = squarefree_part(c);
    if c.is_multiple_of(2) || !c.is_multiple_of(3) || sf != c || c < 21 {
        return Err(Error::HypothesisViolation(format!(
            "c = {c} must be an odd squarefree multiple of 3 with c >= 21"
        )));
    }
    let threshold = if c >= 33 { 33 } else { 21 };
    let lhs = euler_phi(c).pow(2) * threshold;
    let rhs = euler_phi(threshold).pow(2) * c;
    Ok(PhiRatioCheck {
        c,
        threshold,
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

pub fn k1_feasible(e: i64) -> K1Verdict {
    let dimdata = k1_dimension_data(e);
    let base = |verdict, case| K1Verdict {
        param: e,
        verdict,
        case,
        k: dimdata.k,
        c_sf: None,
        m: None,
        inequality: None,
        evidence: vec![],
        flags: vec![],
        assumptions: vec![ASSUME_FEASIBLE],
    };
    match dimdata.status {
        DeltaStatus::Rational => {
            let mut v = base(Feasibility::Feasible, K1Case::RationalDelta);
            v.flags.push(
                "delta = 3 is rational; the representation ring of A4 categorifies it".into(),
            );
            return v;
        }
        DeltaStatus::NonIntegralK => return base(Feasibility::Infeasible, K1Case::IntegralityOfK),
        DeltaStatus::Irrational => {}
    }
    let k = e / 3;
    let (c_sf, m) = k1_radicand(k);
    let base_lhs = q_int(12 + 6 * k * k);
    let (case, inequality) = match c_sf {
        3 => (
            K1Case::SqrtThree,
            Inequality::new(
                "12 + 6k^2 >= (5k - 4) sqrt(3k^2 + 4)",
                base_lhs,
                q_int(5 * k - 4) * QuadVal::sqrt_of((3 * k * k + 4) as u64),
            ),
        ),
        21 => (
            K1Case::TwentyOne,
            Inequality::new(
                "12 + 6k^2 >= (phi(21) - 2) k sqrt((9k^2 + 12) / 21)",
                base_lhs,
                q_int((euler_phi(21) as i64 - 2) * k * m as i64),
            ),
        ),
        _ => {
            let ratio = phi_ratio_bound(c_sf).expect("c_sf is an odd squarefree multiple of 3");
            debug_assert!(ratio.holds);
            // (phi(33) - 2) k sqrt((9k^2 + 12) / 33)
            let rhs = QuadVal::from_sqrt_multiple(
                rat(0),
                frac((euler_phi(33) as i64 - 2) * k, 33),
                33 * (9 * k * k + 12) as u64,
            );
            (
                K1Case::PhiRatio,
                Inequality::new(
                    "12 + 6k^2 >= (phi(33) - 2) k sqrt((9k^2 + 12) / 33)",
                    base_lhs,
                    rhs,
                ),
            )
        }
    };
    let mut evidence = Vec::new();
    let mut gap_seen = false;
    for data in k1_branchings(k) {
        for sign in [-1i8, 1] {
            let t = k1_twist_targets(&data, sign);
            let (paired_bound, hypothesis_gap) = match bound_paired(t.a, t.b, c_sf as i64, t.d) {
                Ok(pb) => (Some(pb.value), false),
                Err(_) => (None, true),
            };
            gap_seen |= hypothesis_gap;
            let route_holds = hypothesis_gap
                || match case {
                    K1Case::PhiRatio => inequality.holds,
                    _ => t.budget >= paired_bound.unwrap(),
                };
            evidence.push(K1BranchEvidence {
                r: data.r,
                p: data.p,
                sign,
                budget: t.budget,
                paired_bound,
                hypothesis_gap,
                route_holds,
            });
        }
    }
    let survives = evidence.iter().any(|ev| ev.route_holds);
    let mut flags = Vec::new();
    if gap_seen {
        flags.push(format!(
            "d = (k - 2) m < 0 for k = {k}: the paired bound's hypotheses fail for that sign, which is left unobstructed"
        ));
    }
    if k == 3 {
        flags.push("k = 3 gives 9k^2 + 12 = 93, so c = 93 and the phi-ratio route applies".into());
    }
    K1Verdict {
        param: e,
        verdict: if survives {
            Feasibility::Feasible
        } else {
            Feasibility::Infeasible
        },
        case,
        k: Some(k),
        c_sf: Some(c_sf),
        m: Some(m),
        inequality: Some(inequality),
        evidence,
        flags,
        assumptions: vec![
            ASSUME_FEASIBLE,
            ASSUME_NONNEG,
            "only the budget 2 sum gamma^2 is used; the individual gamma are not determined",
        ],
    }
}

// ---------------------------------------------------------------- K2 ----

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K2Dimension {
    pub c: i64,
    /// `c + sqrt(c^2 + 1)`.
    pub d: QuadVal,
    /// `4 + 4cd`.
    pub dim: QuadVal,
    pub rational: bool,
}

pub fn k2_d(c: i64) -> QuadVal {
    QuadVal::from_sqrt_multiple(rat(c), rat(1), (c * c + 1) as u64)
}

pub fn k2_dimension_data(c: i64) -> K2Dimension {
    assert!(c >= 0);
    let d = k2_d(c);
    let dim = q_int(4) + q_int(4 * c) * d.clone();
    K2Dimension {
        c,
        rational: d.is_rational(),
        d,
        dim,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K2CenterData {
    pub c: i64,
    pub g: i64,
    pub h: i64,
    /// `(j, l, n, q)`: X-multiplicities of D, E, G, H.
    pub top: [i64; 4],
    /// `(k, m, p, r)`: Z-multiplicities of D, E, G, H.
    pub bottom: [i64; 4],
    /// `sum gamma^2` from the X-coefficient of `F(I(X))`.
    pub gamma_sq_sum: i64,
    /// `sum gamma gamma*` from the Z-coefficient.
    pub gamma_cross_sum: i64,
    /// `sum gamma (gamma + gamma*)`.
    pub pair_sum: i64,
    /// `4 + 3c^2`.
    pub pair_sum_bound: i64,
}

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// Every nonnegative branching of the induced objects for `K2(c)` with
/// `sum gamma^2 >= 0` and `sum gamma gamma* >= 0`.
pub fn k2_branchings(c: i64) -> Vec<K2CenterData> {
    assert!(c >= 0);
    let tops = compositions(2 * c, 4);
    let mut out = Vec::new();
    for g in 0..=c {
        let h = c - g;
        for top in &tops {
            let top: [i64; 4] = top.clone().try_into().unwrap();
            let sq: i64 = top.iter().map(|x| x * x).sum();
            let gamma_sq_sum = 4 + 3 * c * c - g * g - h * h - sq;
            if gamma_sq_sum < 0 {
                continue;
            }
            let perms: Vec<Vec<i64>> = top.iter().copied().permutations(4).unique().collect();
            for bottom in perms {
                let bottom: [i64; 4] = bottom.try_into().unwrap();
                let cross: i64 = top.iter().zip(&bottom).map(|(a, b)| a * b).sum();
                let gamma_cross_sum = 3 * c * c - 2 * g * h - cross;
                if gamma_cross_sum < 0 {
                    continue;
                }
                out.push(K2CenterData {
                    c,
                    g,
                    h,
                    top,
                    bottom,
                    gamma_sq_sum,
                    gamma_cross_sum,
                    pair_sum: gamma_sq_sum + gamma_cross_sum,
                    pair_sum_bound: 4 + 3 * c * c,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistCase {
    ThetaPlusOne,
    ThetaI,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum K2SubCase {
    /// `c^2 + 1 = 2 m^2`: the `a + b sqrt(2)` bound applies.
    TwiceSquare,
    /// Otherwise: the `|b| phi(2d)` bound with `phi(2d) >= 4`.
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K2CaseEvidence {
    pub twist: TwistCase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcase: Option<K2SubCase>,
    /// Real target the twists must sum to.
    pub target: QuadVal,
    /// Roots of unity available on the left-hand side.
    pub budget: i64,
    /// Exact lower bound on the roots needed for the target.
    pub direct_bound: u64,
    pub inequality: Inequality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K2Verdict {
    pub param: i64,
    pub verdict: Feasibility,
    pub cases: Vec<K2CaseEvidence>,
    pub flags: Vec<String>,
    pub assumptions: Vec<&'static str>,
}

/// `c^2 + 1 = 2 m^2` for some integer `m`.
pub fn k2_twice_square(c: i64) -> Option<u64> {
    let n = (c * c + 1) as u64;
    n.is_multiple_of(2).then(|| exact_sqrt(n / 2)).flatten()
}

pub fn k2_feasible(c: i64) -> K2Verdict {
    assert!(c >= 0);
    if c == 0 {
        return K2Verdict {
            param: 0,
            verdict: Feasibility::Feasible,
            cases: vec![],
            flags: vec!["d = 1 is rational; the group ring of Z/4 categorifies it".into()],
            assumptions: vec![ASSUME_FEASIBLE],
        };
    }
    let n = (c * c + 1) as u64;
    let (c_sf, m) = squarefree_part(n);
    let c2 = c * c;

    // theta = 1: sum gamma (gamma + gamma*) theta_i^2 = -4c sqrt(c^2 + 1) + c^2 - S
    let target1 = QuadVal::from_sqrt_multiple(rat(c2), rat(-4 * c), n);
    let direct1 = if c_sf == 2 {
        2 * 4 * c as u64 * m
    } else {
        bound_sqrt_general(0, 4 * c * m as i64, c_sf).unwrap()
    };
    let case1 = K2CaseEvidence {
        twist: TwistCase::ThetaPlusOne,
        subcase: None,
        target: target1,
        budget: 4 + 3 * c2,
        direct_bound: direct1,
        inequality: Inequality::new(
            "4 + 3c^2 >= 8c sqrt((c^2 + 1) / 2)",
            q_int(4 + 3 * c2),
            QuadVal::from_sqrt_multiple(rat(0), rat(4 * c), 2 * n),
        ),
    };

    // theta = i: twice the real part is -4c sqrt(c^2 + 1) - 2c^2
    let target2 = QuadVal::from_sqrt_multiple(rat(-2 * c2), rat(-4 * c), n);
    let (subcase, direct2, inequality) = match k2_twice_square(c) {
        Some(mm) => (
            K2SubCase::TwiceSquare,
            bound_sqrt2(-2 * c2, -4 * c * mm as i64),
            Inequality::new(
                "8 + 6c^2 >= (8 / sqrt(2) + 2) c^2",
                q_int(8 + 6 * c2),
                QuadVal::new(rat(2 * c2), rat(4 * c2), 2),
            ),
        ),
        None => (
            K2SubCase::Other,
            bound_sqrt_general(-2 * c2, -4 * c * m as i64, c_sf).unwrap(),
            Inequality::new(
                "8 + 6c^2 >= (16 / sqrt(5)) c^2",
                q_int(8 + 6 * c2),
                QuadVal::new(rat(0), frac(16 * c2, 5), 5),
            ),
        ),
    };
    let case2 = K2CaseEvidence {
        twist: TwistCase::ThetaI,
        subcase: Some(subcase),
        target: target2,
        budget: 8 + 6 * c2,
        direct_bound: direct2,
        inequality,
    };
    let survives = case1.inequality.holds || case2.inequality.holds;
    let mut flags = Vec::new();
    if subcase == K2SubCase::TwiceSquare {
        flags.push(format!("c^2 + 1 = {n} is twice a square"));
    }
    K2Verdict {
        param: c,
        verdict: if survives {
            Feasibility::Feasible
        } else {
            Feasibility::Infeasible
        },
        cases: vec![case1, case2],
        flags,
        assumptions: vec![ASSUME_FEASIBLE, ASSUME_NONNEG],
    }
}

// ------------------------------------------------------------ twists ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        IdentityCheck {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub family: Family,
    pub param: i64,
    pub checks: Vec<IdentityCheck>,
}

impl TwistReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Cq = CycloQuad<Rational>;

/// Arithmetic in Q(zeta_n, sqrt(c)).
struct Field {
    n: u64,
    c: u64,
}

impl Field {
    fn root(&self, j: i64) -> Cq {
        Cq::from_cyclo(CycloElem::root(self.n, j), self.c)
    }
    fn quad(&self, x: &QuadVal) -> Cq {
        Cq::from_quad(x, self.n, self.c)
    }
    fn int(&self, v: i64) -> Cq {
        self.quad(&q_int(v))
    }
    /// `sqrt(-3) = 2 omega + 1` with `omega = zeta_3`.
    fn sqrt_minus3(&self) -> Cq {
        self.root(self.n as i64 / 3).scale(&rat(2)) + self.int(1)
    }
    fn conj(&self, x: &Cq) -> Cq {
        Cq::new(x.p().conj(), x.q().conj(), self.c)
    }
}

/// Twists of order dividing `n` that satisfy `dim C = 1 + sum dim(S) theta_S`
/// over the non-unit summands of `I(1)`.
fn unit_trace_solutions(f: &Field, dim: &QuadVal, dims: &[QuadVal; 3]) -> Vec<[i64; 3]> {
    let dims: Vec<Cq> = dims.iter().map(|d| f.quad(d)).collect();
    let target = f.quad(dim) - f.int(1);
    let n = f.n as i64;
    (0..n)
        .cartesian_product(0..n)
        .cartesian_product(0..n)
        .filter_map(|((a, b), c)| {
            let s = dims[0].clone() * f.root(a)
                + dims[1].clone() * f.root(b)
                + dims[2].clone() * f.root(c);
            (s - target.clone()).is_zero().then_some([a, b, c])
        })
        .collect()
}

fn k1_twist_checks(k: i64) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let branchings = k1_branchings(k);
    let data0 = &branchings[0];
    let f = Field {
        n: 12,
        c: data0.c_sf,
    };
    let delta = data0.delta.clone();

    let sols = unit_trace_solutions(
        &f,
        &data0.dim,
        &[
            data0.dims["A"].clone(),
            data0.dims["B"].clone(),
            data0.dims["C"].clone(),
        ],
    );
    out.push(IdentityCheck::new(
        "trace on I(1) forces theta_A = theta_B = theta_C = 1 (12th roots)",
        sols == vec![[0, 0, 0]],
        Some(format!("{} solution(s)", sols.len())),
    ));

    // 0 = 2 + 2 theta_D + theta_E + theta_G over cube roots, theta_D != 1
    let g3 = Field { n: 3, c: 1 };
    let mut cube_sols = Vec::new();
    for (d, e, g) in itertools::iproduct!(0..3i64, 0..3i64, 0..3i64) {
        let s = g3.int(2) + g3.root(d).scale(&rat(2)) + g3.root(e) + g3.root(g);
        if s.is_zero() {
            cube_sols.push((d, e, g));
        }
    }
    out.push(IdentityCheck::new(
        "cube-root solutions of 0 = 2 + 2 theta_D + theta_E + theta_G are theta_D = omega, theta_E = theta_G = omega^2",
        cube_sols == vec![(1, 2, 2), (2, 1, 1)],
        Some(format!("{cube_sols:?}")),
    ));

    // 0 = k + alpha omega + (r + p) omega^2 with alpha + r + p = 2k forces alpha = k
    let mut alphas = Vec::new();
    for alpha in 0..=2 * k {
        let rest = 2 * k - alpha;
        let s = g3.int(k) + g3.root(1).scale(&rat(alpha)) + g3.root(2).scale(&rat(rest));
        if s.is_zero() {
            alphas.push(alpha);
        }
    }
    out.push(IdentityCheck::new(
        "0 = k + alpha omega + (r + p) omega^2 forces alpha = r + p = k",
        alphas == vec![k],
        Some(format!("alpha in {alphas:?}")),
    ));

    let omega = f.root(4);
    let omega2 = f.root(8);
    let dq = f.quad(&delta);
    for data in &branchings {
        let dd = |s: &str| f.quad(&data.dims[s]);
        let (kk, r, p) = (f.int(k), f.int(data.r), f.int(data.p));
        let rp2 = f.int(2 * data.r * data.p);
        let s = f.quad(&QuadVal::sqrt_of((9 * k * k + 12) as u64));
        let half_k = f.quad(&QuadVal::rational(frac(k, 2)));
        let imag = f.sqrt_minus3().scale(&frac(k * k - 4 * data.r * data.p, 2));

        // trace of theta on I(X) vanishes at the forced twists
        let tr_x = dd("B") + dd("D") * omega.clone() + (dd("E") + dd("G")) * omega2.clone();
        // sum gamma^2 theta delta = -(other summands of tr theta_{I(Y)})
        let rest1 = kk.clone() * (dd("A") + dd("B") + dd("C") + dd("D") * omega.clone())
            + (r.clone() * dd("E") + p.clone() * dd("G")).scale(&rat(2)) * omega2.clone();
        let claim =
            |sigma: i64| -(half_k.clone() * s.clone()) - rp2.clone() + imag.scale(&rat(sigma));
        let sigma = [1i64, -1]
            .into_iter()
            .find(|&sg| (claim(sg) * dq.clone() + rest1.clone()).is_zero());
        // sum gamma^2 theta^2 delta = +-dim C - (other summands of tr theta^2_{I(Y)})
        let rest2 = kk.clone() * (dd("A") + dd("B") + dd("C") + dd("D") * omega2.clone())
            + (r.clone() * dd("E") + p.clone() * dd("G")).scale(&rat(2)) * omega.clone();
        let dim_c = f.quad(&data.dim);
        let squares_ok = sigma.is_some_and(|sg| {
            [1i64, -1].into_iter().all(|tau| {
                let claim2 = -(half_k.clone() * s.clone()) - rp2.clone() - imag.scale(&rat(sg))
                    + s.scale(&rat(tau));
                (claim2 * dq.clone() + rest2.clone() - dim_c.scale(&rat(tau))).is_zero()
            })
        });
        // real parts match the targets
        let reals_ok = sigma.is_some_and(|sg| {
            let x = claim(sg);
            let cc1 = x.clone() + f.conj(&x);
            [1i8, -1].into_iter().all(|tau| {
                let t = k1_twist_targets(data, tau);
                let x2 = -(half_k.clone() * s.clone()) - rp2.clone() - imag.scale(&rat(sg))
                    + s.scale(&rat(tau as i64));
                let cc2 = x2.clone() + f.conj(&x2);
                (cc1.clone() - f.quad(&t.sum_target)).is_zero()
                    && (cc2 - f.quad(&t.square_target)).is_zero()
            })
        });
        let tag = format!("(r, p) = ({}, {})", data.r, data.p);
        out.push(IdentityCheck::new(
            format!("trace of theta on I(X) vanishes, {tag}"),
            tr_x.is_zero(),
            None,
        ));
        out.push(IdentityCheck::new(
            format!("sum gamma^2 theta from the trace on I(Y), {tag}"),
            sigma.is_some(),
            sigma.map(|sg| format!("imaginary sign {sg:+}")),
        ));
        out.push(IdentityCheck::new(
            format!("sum gamma^2 theta^2 for both signs of +-dim C, {tag}"),
            squares_ok,
            None,
        ));
        out.push(IdentityCheck::new(
            format!("real parts equal the twist targets, {tag}"),
            reals_ok,
            None,
        ));
        out.push(IdentityCheck::new(
            format!("induced dimensions sum correctly, {tag}"),
            data.dimension_sums_consistent(),
            None,
        ));
    }
    out
}

fn k2_twist_checks(c: i64) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let dd = k2_dimension_data(c);
    let (c_sf, _) = squarefree_part((c * c + 1) as u64);
    let f = Field { n: 12, c: c_sf };
    let cd = q_int(c) * dd.d.clone();
    let sols = unit_trace_solutions(
        &f,
        &dd.dim,
        &[
            q_int(1) + cd.clone() * q_int(2),
            q_int(1) + cd.clone(),
            q_int(1) + cd.clone(),
        ],
    );
    out.push(IdentityCheck::new(
        "trace on I(1) forces theta_A = theta_B = theta_C = 1 (12th roots)",
        sols == vec![[0, 0, 0]],
        Some(format!("{} solution(s)", sols.len())),
    ));

    // fourth roots with equal squares and zero sum are sign-paired
    let g4 = Field { n: 4, c: 1 };
    let mut ok = true;
    let mut count = 0;
    for t in itertools::iproduct!(0..4i64, 0..4i64, 0..4i64, 0..4i64) {
        let v = [t.0, t.1, t.2, t.3];
        let s = v.iter().fold(g4.int(0), |acc, &j| acc + g4.root(j));
        let same_square = v.iter().all(|&j| (2 * j) % 4 == (2 * v[0]) % 4);
        if s.is_zero() && same_square {
            count += 1;
            let mut sorted = v;
            sorted.sort_unstable();
            let paired =
                sorted[0] == sorted[1] && sorted[2] == sorted[3] && (sorted[2] - sorted[0]) == 2;
            ok &= paired;
        }
    }
    out.push(IdentityCheck::new(
        "fourth-root solutions of theta_D + theta_E + theta_G + theta_H = 0 with equal squares are sign-paired",
        ok && count > 0,
        Some(format!("{count} solution(s)")),
    ));

    let two_d = q_int(2) + cd.clone() * q_int(2);
    out.push(IdentityCheck::new(
        "I(Y) = 2D is impossible: 2 dim(D) theta_D = 0 has no root-of-unity solution",
        !two_d.is_zero(),
        None,
    ));

    let inv = QuadVal::from_sqrt_multiple(rat(-c), rat(1), (c * c + 1) as u64);
    out.push(IdentityCheck::new(
        "1 / d = sqrt(c^2 + 1) - c",
        dd.d.clone() * inv.clone() == q_int(1),
        None,
    ));
    let lhs = q_int(-2 * c) * inv.clone() - q_int(3 * c * c);
    let rhs = QuadVal::from_sqrt_multiple(rat(-c * c), rat(-2 * c), (c * c + 1) as u64);
    out.push(IdentityCheck::new(
        "-2c / d - 3c^2 = -2c sqrt(c^2 + 1) - c^2",
        lhs == rhs,
        None,
    ));
    let lhs1 = q_int(-4 * c) * inv - q_int(3 * c * c);
    out.push(IdentityCheck::new(
        "-4c / d - 3c^2 equals the theta = 1 target",
        lhs1 == k2_feasible(c).cases[0].target,
        None,
    ));
    out
}

/// Re-derives the forced twist values and the trace identities for one
/// family member. `K1` is indexed by `e` (a multiple of 3, not 2), `K2` by
/// `c >= 1`.
pub fn twist_identity_checks(family: Family, param: i64) -> Result<TwistReport> {
    let checks = match family {
        Family::K1 => {
            if param < 0 || param % 3 != 0 {
                return Err(Error::HypothesisViolation(format!(
                    "e = {param} is not a nonnegative multiple of 3"
                )));
            }
            k1_twist_checks(param / 3)
        }
        Family::K2 => {
            if param < 1 {
                return Err(Error::HypothesisViolation(format!(
                    "c = {param} must be positive"
                )));
            }
            k2_twist_checks(param)
        }
    };
    Ok(TwistReport {
        family,
        param,
        checks,
    })
}

// -------------------------------------------------------------- scan ----

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum FamilyVerdict {
    K1(Box<K1Verdict>),
    K2(K2Verdict),
}

impl FamilyVerdict {
    pub fn param(&self) -> i64 {
        match self {
            FamilyVerdict::K1(v) => v.param,
            FamilyVerdict::K2(v) => v.param,
        }
    }
    pub fn verdict(&self) -> Feasibility {
        match self {
            FamilyVerdict::K1(v) => v.verdict,
            FamilyVerdict::K2(v) => v.verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub family: Family,
    pub max_param: i64,
    pub survivors: Vec<i64>,
    /// Survivors predicted by the classification, restricted to the range.
    pub expected: Vec<i64>,
    pub matches_expected: bool,
    pub verdicts: Vec<FamilyVerdict>,
}

pub fn expected_survivors(family: Family) -> &'static [i64] {
    match family {
        Family::K1 => &[0, 2, 3, 6],
        Family::K2 => &[0, 1, 2],
    }
}

pub fn scan(family: Family, max_param: i64) -> ScanReport {
    assert!(max_param >= 0);
    let verdicts: Vec<FamilyVerdict> = (0..=max_param)
        .into_par_iter()
        .map(|x| match family {
            Family::K1 => FamilyVerdict::K1(Box::new(k1_feasible(x))),
            Family::K2 => FamilyVerdict::K2(k2_feasible(x)),
        })
        .collect();
    let survivors: Vec<i64> = verdicts
        .iter()
        .filter(|v| v.verdict() == Feasibility::Feasible)
        .map(FamilyVerdict::param)
        .collect();
    let expected: Vec<i64> = expected_survivors(family)
        .iter()
        .copied()
        .filter(|&x| x <= max_param)
        .collect();
    ScanReport {
        family,
        max_param,
        matches_expected: survivors == expected,
        survivors,
        expected,
        verdicts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_dimension_examples() {
        let d = k1_dimension_data(6);
        assert_eq!(d.delta, QuadVal::new(rat(3), rat(2), 3));
        assert_eq!(d.dim, q_int(6) + q_int(6) * d.delta.clone());
        let d = k1_dimension_data(2);
        assert_eq!(d.status, DeltaStatus::Rational);
        assert_eq!(d.delta, q_int(3));
        assert_eq!(d.dim, q_int(12));
        assert_eq!(k1_dimension_data(4).status, DeltaStatus::NonIntegralK);
    }

    #[test]
    fn k1_branching_examples() {
        let b = k1_branchings(0);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].gamma_sq_sum, 6);
        let sums: Vec<i64> = k1_branchings(2).iter().map(|d| d.gamma_sq_sum).collect();
        assert_eq!(sums, vec![18, 22, 18]);
        let b = k1_branchings(1);
        assert_eq!(b[0].c_sf, 21);
        assert!(b[0].c_sf_checks);
    }

    #[test]
    fn k1_target_example() {
        let data = k1_branchings(3).into_iter().find(|d| d.r == 1).unwrap();
        let t = k1_twist_targets(&data, 1);
        assert_eq!(t.budget, 82);
        assert_eq!(t.sum_target, QuadVal::new(rat(-8), rat(-3), 93));
        assert_eq!(t.square_target, QuadVal::new(rat(-8), rat(-1), 93));
        assert_eq!((t.a, t.b, t.d), (8, 3, 5));
        let t0 = k1_twist_targets(&k1_branchings(0)[0], 1);
        assert_eq!(t0.budget, 12);
        assert_eq!(t0.a, 0);
    }

    #[test]
    fn phi_ratio_examples() {
        let r = phi_ratio_bound(33).unwrap();
        assert_eq!(r.lhs, r.rhs);
        let r = phi_ratio_bound(39).unwrap();
        assert_eq!((r.lhs, r.rhs), (19008, 15600));
        assert!(matches!(
            phi_ratio_bound(15),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn k1_verdicts() {
        for e in [0, 2, 3, 6] {
            assert_eq!(k1_feasible(e).verdict, Feasibility::Feasible, "e={e}");
        }
        let v = k1_feasible(9);
        assert_eq!(v.verdict, Feasibility::Infeasible);
        assert_eq!(v.c_sf, Some(93));
        assert_eq!(v.case, K1Case::PhiRatio);
        let v = k1_feasible(12);
        assert_eq!((v.verdict, v.c_sf), (Feasibility::Infeasible, Some(39)));
        assert_eq!(k1_feasible(4).case, K1Case::IntegralityOfK);
        assert!(!k1_feasible(0).flags.is_empty());
    }

    #[test]
    fn k2_verdicts() {
        for c in [0, 1, 2] {
            assert_eq!(k2_feasible(c).verdict, Feasibility::Feasible, "c={c}");
        }
        assert_eq!(k2_feasible(3).verdict, Feasibility::Infeasible);
        assert_eq!(
            k2_feasible(1).cases[1].subcase,
            Some(K2SubCase::TwiceSquare)
        );
        assert_eq!(
            k2_feasible(7).cases[1].subcase,
            Some(K2SubCase::TwiceSquare)
        );
        assert_eq!(k2_feasible(2).cases[1].subcase, Some(K2SubCase::Other));
        assert!(!k2_feasible(1).cases[0].inequality.holds);
    }

    #[test]
    fn k2_branching_examples() {
        let b = k2_branchings(0);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].gamma_sq_sum, 4);
        let b = k2_branchings(1);
        assert!(!b.is_empty());
        assert!(b.iter().all(|x| x.pair_sum <= 7));
    }

    #[test]
    fn scans() {
        assert_eq!(scan(Family::K1, 60).survivors, vec![0, 2, 3, 6]);
        assert_eq!(scan(Family::K2, 40).survivors, vec![0, 1, 2]);
        assert_eq!(scan(Family::K1, 1).survivors, vec![0]);
    }

    #[test]
    fn twist_checks_pass() {
        for e in [0, 3, 6, 9] {
            let r = twist_identity_checks(Family::K1, e).unwrap();
            assert!(
                r.all_passed(),
                "{:?}",
                r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
            );
        }
        for c in [1, 2, 3] {
            let r = twist_identity_checks(Family::K2, c).unwrap();
            assert!(
                r.all_passed(),
                "{:?}",
                r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
            );
        }
    }
}
