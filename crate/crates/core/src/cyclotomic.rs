//! Lower bounds on the number of roots of unity needed to write a quadratic
//! irrationality (alone, or together with the sum of squares), Galois-orbit
//! sums, orbit normalisation, and an exhaustive search used as an oracle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::cyclo::reduce_int_coeffs;
use crate::arith::ntheory::{
    euler_phi, factorize, gcd, is_squarefree, lcm, mobius, omega, quadratic_character,
    quadratic_conductor, units_mod,
};
use crate::error::{Error, Result};
use crate::{CycloElem, QuadVal, Rational};

/// `|b| phi(2d)`: roots of unity needed for `a + b sqrt(d)`.
pub fn bound_sqrt_general(_a: i64, b: i64, d: u64) -> Result<u64> {
    if d == 0 || !is_squarefree(d) {
        return Err(Error::HypothesisViolation(format!(
            "{d} is not a positive squarefree integer"
        )));
    }
    Ok(b.unsigned_abs() * euler_phi(2 * d))
}

/// `|a| + 2|b|`: roots of unity needed for `a + b sqrt(2)`.
pub fn bound_sqrt2(a: i64, b: i64) -> u64 {
    a.unsigned_abs() + 2 * b.unsigned_abs()
}

/// Which branch of the paired bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairedCase {
    /// `c = 3 mod 4` with an odd number of prime factors.
    ThreeModFourOddT,
    Otherwise,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairedBound {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub t: usize,
    pub phi_c: u64,
    pub case: PairedCase,
    pub value: i64,
}

/// Roots of unity needed when `sum theta = -a - b sqrt(c)` and
/// `sum theta^2 = -a - d sqrt(c)` must hold together; `c` odd, squarefree,
/// divisible by 3, and `a, b, d >= 0`.
pub fn bound_paired(a: i64, b: i64, c: i64, d: i64) -> Result<PairedBound> {
    if a < 0 || b < 0 || d < 0 {
        return Err(Error::HypothesisViolation(format!(
            "a, b, d must be nonnegative (got a = {a}, b = {b}, d = {d})"
        )));
    }
    if c <= 0 || c % 2 == 0 {
        return Err(Error::HypothesisViolation(format!(
            "c = {c} must be odd and positive"
        )));
    }
    if c % 3 != 0 {
        return Err(Error::HypothesisViolation(format!(
            "3 does not divide c = {c}"
        )));
    }
    let cu = c as u64;
    if !is_squarefree(cu) {
        return Err(Error::HypothesisViolation(format!(
            "c = {c} is not squarefree"
        )));
    }
    let t = omega(cu);
    let phi = euler_phi(cu) as i64;
    let case = if c % 4 == 3 && t % 2 == 1 {
        PairedCase::ThreeModFourOddT
    } else {
        PairedCase::Otherwise
    };
    let value = match case {
        PairedCase::ThreeModFourOddT => b * phi + d * phi + b + 2 * a,
        PairedCase::Otherwise => b * phi - 2 * b + 2 * a,
    };
    Ok(PairedBound {
        a: a as u64,
        b: b as u64,
        c: cu,
        d: d as u64,
        t,
        phi_c: phi as u64,
        case,
        value,
    })
}

/// `epsilon = 0` when `c = 1 mod 4`, else 1.
pub fn epsilon(c: u64) -> u32 {
    (c % 4 != 1) as u32
}

/// `lcm(2^(epsilon+2) c, 3)`: every normalised root with tracked squares has order dividing this.
pub fn tracked_order_bound(c: u64) -> u64 {
    lcm((1u64 << (epsilon(c) + 2)) * c, 3)
}

/// `2^(epsilon+1) c`: every normalised root has order dividing this.
pub fn untracked_order_bound(c: u64) -> u64 {
    (1u64 << (epsilon(c) + 1)) * c
}

/// `zeta_order^exp` with `gcd(exp, order) = 1` (and `exp = 0` for order 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub order: u64,
    pub exp: u64,
}

impl Root {
    /// Reduces `zeta_n^j` to lowest terms.
    pub fn new(n: u64, j: i64) -> Self {
        let j = j.rem_euclid(n as i64) as u64;
        let g = gcd(j, n);
        let g = if j == 0 { n } else { g };
        Root {
            order: n / g,
            exp: if j == 0 { 0 } else { j / g },
        }
    }

    pub fn mul(&self, other: &Root) -> Root {
        let m = lcm(self.order, other.order);
        let j = self.exp * (m / self.order) + other.exp * (m / other.order);
        Root::new(m, j as i64)
    }

    pub fn neg(&self) -> Root {
        self.mul(&Root { order: 2, exp: 1 })
    }

    pub fn square(&self) -> Root {
        self.mul(self)
    }

    pub fn to_cyclo(&self) -> CycloElem {
        CycloElem::root(self.order, self.exp as i64)
    }
}

/// Units `k` mod `y` fixing `sqrt(c)` when `sqrt(c)` lies in Q(zeta_y); all units otherwise.
pub fn galois_subgroup(c: u64, y: u64) -> Vec<u64> {
    let units = units_mod(y);
    if c > 1 && y.is_multiple_of(quadratic_conductor(c)) {
        units
            .into_iter()
            .filter(|&k| quadratic_character(c, k) == 1)
            .collect()
    } else {
        units
    }
}

/// A Galois orbit of primitive `order`-th roots, named by its least exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitId {
    pub order: u64,
    pub rep: u64,
}

impl OrbitId {
    /// Orbit containing `zeta_y^j` (which must be primitive).
    pub fn containing(c: u64, y: u64, j: u64) -> Self {
        let members = orbit_exponents(c, y, j);
        OrbitId {
            order: y,
            rep: members[0],
        }
    }

    pub fn members(&self, c: u64) -> Vec<Root> {
        orbit_exponents(c, self.order, self.rep)
            .into_iter()
            .map(|e| Root::new(self.order, e as i64))
            .collect()
    }
}

fn orbit_exponents(c: u64, y: u64, j: u64) -> Vec<u64> {
    if y == 1 {
        return vec![0];
    }
    assert_eq!(gcd(j, y), 1, "zeta_{y}^{j} is not primitive");
    let mut out: Vec<u64> = galois_subgroup(c, y).iter().map(|&k| (k * j) % y).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// All orbits of primitive `y`-th roots, ordered by representative.
pub fn orbits_of_order(c: u64, y: u64) -> Vec<OrbitId> {
    let mut out: Vec<OrbitId> = units_mod(y)
        .into_iter()
        .map(|j| OrbitId::containing(c, y, j))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn power_sum(roots: &[Root], power: u64) -> CycloElem {
    let n = roots.iter().fold(1, |m, r| lcm(m, r.order));
    let mut coeffs = vec![Rational::zero(); n as usize];
    for r in roots {
        let j = ((r.exp * (n / r.order) * power) % n) as usize;
        coeffs[j] += Rational::from_integer(BigInt::from(1));
    }
    CycloElem::from_coeffs(n, coeffs)
}

/// `sum zeta^power` over a multiset of roots, as integer coordinates in the
/// power basis of Q(zeta_n); every root order must divide `n`.
pub fn power_sum_coords(roots: &[Root], power: u64, n: u64) -> Vec<i64> {
    let mut v = vec![0i64; n as usize];
    for r in roots {
        assert_eq!(n % r.order, 0, "root order {} does not divide {n}", r.order);
        v[((r.exp * (n / r.order) * power) % n) as usize] += 1;
    }
    reduce_int_coeffs(n, &mut v);
    v.truncate(euler_phi(n) as usize);
    v
}

/// `sum zeta` over a multiset of roots.
pub fn sum_of_roots(roots: &[Root]) -> CycloElem {
    power_sum(roots, 1)
}

/// `sum zeta^2` over a multiset of roots.
pub fn sum_of_squares(roots: &[Root]) -> CycloElem {
    power_sum(roots, 2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub rep: u64,
    pub size: usize,
    pub sum: QuadVal,
    pub sum_of_squares: QuadVal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitReport {
    pub c: u64,
    pub order: u64,
    pub epsilon: u32,
    /// `2^(2 epsilon) c`.
    pub n: u64,
    /// `lcm(2^(epsilon+2) c, 3)`.
    #[serde(rename = "L")]
    pub l: u64,
    pub orbits: Vec<OrbitRecord>,
}

/// Sum and sum of squares of one orbit, as elements of Q(sqrt(c)).
pub fn orbit_record(c: u64, id: OrbitId) -> Result<OrbitRecord> {
    let members = id.members(c);
    Ok(OrbitRecord {
        rep: id.rep,
        size: members.len(),
        sum: sum_of_roots(&members).to_quad(c)?,
        sum_of_squares: sum_of_squares(&members).to_quad(c)?,
    })
}

/// Splits the primitive `y`-th roots into Galois orbits over Q(sqrt(c)).
pub fn orbit_sums(c: u64, y: u64) -> Result<OrbitReport> {
    if c == 0 || !is_squarefree(c) || y == 0 {
        return Err(Error::HypothesisViolation(format!(
            "need squarefree c >= 1 and y >= 1 (got c = {c}, y = {y})"
        )));
    }
    let eps = epsilon(c);
    let orbits = orbits_of_order(c, y)
        .into_iter()
        .map(|id| orbit_record(c, id))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitReport {
        c,
        order: y,
        epsilon: eps,
        n: (1u64 << (2 * eps)) * c,
        l: tracked_order_bound(c),
        orbits,
    })
}

/// Which rewriting rule applies to an orbit during normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizeCase {
    /// `sqrt(c)` is not in Q(zeta_Y): the orbit is all primitive roots.
    FullOrbit,
    /// The orbit sums (and squared sums) vanish.
    Vanishing,
    /// `Y = uv` with the `u`-part absorbed by a Mobius sign.
    Split { u: u64, v: u64 },
}

fn v_part(c: u64, y: u64) -> (u64, u64) {
    // v collects the primes of 2c, u the rest.
    let mut v = 1;
    for (p, e) in factorize(y) {
        if p == 2 || c.is_multiple_of(p) {
            v *= p.pow(e);
        }
    }
    (y / v, v)
}

pub fn normalize_case(c: u64, y: u64, track_squares: bool) -> NormalizeCase {
    let n = quadratic_conductor(c).max(1);
    if c <= 1 || !y.is_multiple_of(n) {
        return NormalizeCase::FullOrbit;
    }
    let eps = epsilon(c);
    // 2^(1+eps) c (or 2^(2+eps) c) bounds the 2-part; c even contributes one more factor.
    let two_limit = if track_squares { 2 + eps } else { 1 + eps } + c.is_multiple_of(2) as u32;
    let f = factorize(y);
    let v2 = f.iter().find(|(p, _)| *p == 2).map_or(0, |&(_, e)| e);
    let square_on_c = f
        .iter()
        .any(|&(p, e)| p != 2 && c.is_multiple_of(p) && e > 1);
    if v2 > two_limit || square_on_c {
        return NormalizeCase::Vanishing;
    }
    let (u, v) = v_part(c, y);
    NormalizeCase::Split { u, v }
}

/// Replacement roots for one orbit.
fn replace_orbit(c: u64, id: OrbitId, track: bool) -> Vec<Root> {
    let y = id.order;
    match normalize_case(c, y, track) {
        NormalizeCase::Vanishing => vec![],
        NormalizeCase::FullOrbit => {
            let mu = mobius(y);
            if !track {
                return match mu {
                    1 => vec![Root::new(1, 0)],
                    -1 => vec![Root::new(2, 1)],
                    _ => vec![],
                };
            }
            let v2 = y.trailing_zeros();
            match (v2, mu) {
                (_, 0) if v2 < 2 => vec![],
                (0, 1) => vec![Root::new(1, 0)],
                (0, -1) => vec![Root::new(3, 1), Root::new(3, 2)],
                // 2 || Y: sums (mu, -mu)
                (1, 1) => vec![Root::new(6, 1), Root::new(6, 5)],
                (1, -1) => vec![Root::new(2, 1)],
                // 4 || Y: sums (0, 2 mu(Y/2))
                (2, _) => match mobius(y / 2) {
                    1 => [1, 5, 7, 11].iter().map(|&j| Root::new(12, j)).collect(),
                    -1 => vec![Root::new(4, 1), Root::new(4, 3)],
                    _ => vec![],
                },
                _ => vec![],
            }
        }
        NormalizeCase::Split { u, v } => {
            if !is_squarefree(u) {
                return vec![];
            }
            let u_inv = mod_inverse(u % v, v);
            let b = (id.rep * u_inv) % v;
            let prime = OrbitId::containing(c, v, if v == 1 { 0 } else { b }).members(c);
            match (mobius(u), track) {
                (1, _) => prime,
                (_, false) => prime.iter().map(Root::neg).collect(),
                (_, true) => {
                    let w = Root::new(3, 1);
                    let w2 = Root::new(3, 2);
                    prime
                        .iter()
                        .map(|r| r.mul(&w))
                        .chain(prime.iter().map(|r| r.mul(&w2)))
                        .collect()
                }
            }
        }
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    (1..m).find(|&x| (a * x) % m == 1).expect("unit modulo m")
}

/// Groups a Galois-stable multiset of roots into orbits.
pub fn group_into_orbits(c: u64, roots: &[Root]) -> Result<Vec<OrbitId>> {
    let mut counts: BTreeMap<Root, i64> = BTreeMap::new();
    for r in roots {
        *counts.entry(*r).or_default() += 1;
    }
    let mut out = Vec::new();
    let keys: Vec<Root> = counts.keys().copied().collect();
    for r in keys {
        while counts[&r] > 0 {
            let id = OrbitId::containing(c, r.order, r.exp);
            for m in id.members(c) {
                let e = counts.entry(m).or_default();
                *e -= 1;
                if *e < 0 {
                    return Err(Error::HypothesisViolation(format!(
                        "multiset is not Galois-stable at zeta_{}^{}",
                        m.order, m.exp
                    )));
                }
            }
            out.push(id);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Rewrites a Galois-stable multiset of orbits so that every root has order
/// dividing `2^(epsilon+1) c` (or `lcm(2^(epsilon+2) c, 3)` when the sum of
/// squares is tracked), preserving the sum (and sum of squares) and never
/// increasing the number of roots.
pub fn orbit_normalize(orbits: &[OrbitId], c: u64, track_squares: bool) -> Result<Vec<OrbitId>> {
    let roots: Vec<Root> = orbits
        .iter()
        .flat_map(|&id| replace_orbit(c, id, track_squares))
        .collect();
    group_into_orbits(c, &roots)
}

pub fn orbit_roots(c: u64, orbits: &[OrbitId]) -> Vec<Root> {
    orbits.iter().flat_map(|id| id.members(c)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateRow {
    pub orbit: OrbitId,
    pub size: usize,
    pub sum: QuadVal,
    pub sum_of_squares: QuadVal,
    /// Functional value over the orbit size.
    #[serde(serialize_with = "crate::arith::serialize_rat")]
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub c: u64,
    pub functional: String,
    pub rows: Vec<CertificateRow>,
    /// Every row meets the per-orbit inequality.
    pub holds: bool,
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn certificate(
    c: u64,
    bound_order: u64,
    functional: String,
    f: impl Fn(&QuadVal, &QuadVal, usize) -> (Rational, bool),
) -> Result<CertificateReport> {
    let mut rows = Vec::new();
    let mut holds = true;
    for y in divisors(bound_order) {
        for id in orbits_of_order(c, y) {
            let rec = orbit_record(c, id)?;
            let (ratio, ok) = f(&rec.sum, &rec.sum_of_squares, rec.size);
            holds &= ok;
            rows.push(CertificateRow {
                orbit: id,
                size: rec.size,
                sum: rec.sum,
                sum_of_squares: rec.sum_of_squares,
                ratio,
            });
        }
    }
    Ok(CertificateReport {
        c,
        functional,
        rows,
        holds,
    })
}

fn coeff_b(q: &QuadVal, c: u64) -> Rational {
    if q.c() == c {
        q.b().clone()
    } else {
        Rational::zero()
    }
}

/// `f(x + y sqrt 2) = x + 2y` satisfies `f(O) / |O| >= -1` on every orbit of
/// 8th roots.
pub fn certificate_sqrt2() -> Result<CertificateReport> {
    certificate(2, 8, "x + 2y".into(), |s, _, size| {
        let v = s.a().clone() + coeff_b(s, 2) * Rational::from_integer(2.into());
        let ratio = v / Rational::from_integer(size.into());
        let ok = ratio >= Rational::from_integer((-1).into());
        (ratio, ok)
    })
}

/// Every orbit of `2^(epsilon+1) c`-th roots has `|b_O| phi(2c) <= |O|`,
/// where `b_O` is the `sqrt(c)` coefficient of its sum.
pub fn certificate_sqrt_general(c: u64) -> Result<CertificateReport> {
    let phi = euler_phi(2 * c);
    certificate(
        c,
        untracked_order_bound(c),
        "|b| phi(2c) / |O|".into(),
        |s, _, size| {
            let v = coeff_b(s, c).abs() * Rational::from_integer(phi.into());
            let ratio = v / Rational::from_integer(size.into());
            let ok = ratio <= Rational::from_integer(1.into());
            (ratio, ok)
        },
    )
}

/// The functional behind the paired bound satisfies `f(O) / |O| >= -1` on
/// every orbit of `L`-th roots.
pub fn certificate_paired(c: u64) -> Result<CertificateReport> {
    let pb = bound_paired(0, 0, c as i64, 0)?;
    let phi = Rational::from_integer(pb.phi_c.into());
    let two = Rational::from_integer(2.into());
    let (name, case) = match pb.case {
        PairedCase::ThreeModFourOddT => ("y phi(c) + w phi(c) + x + z + y", true),
        PairedCase::Otherwise => ("y phi(c) + x + z - 2y", false),
    };
    certificate(
        c,
        tracked_order_bound(c),
        name.into(),
        move |s, sq, size| {
            let (x, y) = (s.a().clone(), coeff_b(s, c));
            let (z, w) = (sq.a().clone(), coeff_b(sq, c));
            let v = if case {
                y.clone() * phi.clone() + w * phi.clone() + x + z + y
            } else {
                y.clone() * phi.clone() + x + z - two.clone() * y
            };
            let ratio = v / Rational::from_integer(size.into());
            let ok = ratio >= Rational::from_integer((-1).into());
            (ratio, ok)
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    ExceedsBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinRootsResult {
    pub status: SearchStatus,
    pub minimum: Option<usize>,
    /// Witness roots as reduced `(order, exponent)` pairs.
    pub witness: Vec<Root>,
    pub max_order: u64,
    pub max_count: usize,
}

/// Integer coordinates of `x` in the power basis of Q(zeta_n), if `x`
/// lies in Z[zeta_n].
fn integral_coords(x: &QuadVal, n: u64) -> Option<Vec<i64>> {
    let cond = quadratic_conductor(x.c());
    if !x.is_rational() && !n.is_multiple_of(cond) {
        return None;
    }
    let cy = CycloElem::from_quad(x).embed(n);
    let phi = euler_phi(n) as usize;
    cy.coeffs()[..phi]
        .iter()
        .map(|r| {
            if r.is_integer() {
                r.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

struct Search {
    n: u64,
    phi: usize,
    units: Vec<u64>,
    /// Reduced power-basis vector of zeta_n^j.
    vecs: Vec<Vec<i64>>,
    /// `(cos, sin)` of `2 pi a j / n` for each unit `a`, indexed `[j][a]`.
    emb: Vec<Vec<(f64, f64)>>,
}

impl Search {
    fn new(n: u64) -> Self {
        let phi = euler_phi(n) as usize;
        let units = units_mod(n);
        let vecs = (0..n)
            .map(|j| power_sum_coords(&[Root::new(n, j as i64)], 1, n))
            .collect();
        let emb = (0..n)
            .map(|j| {
                units
                    .iter()
                    .map(|&a| {
                        let t = 2.0 * std::f64::consts::PI * ((a * j) % n) as f64 / n as f64;
                        (t.cos(), t.sin())
                    })
                    .collect()
            })
            .collect();
        Search {
            n,
            phi,
            units,
            vecs,
            emb,
        }
    }

    fn embed(&self, v: &[i64]) -> Vec<(f64, f64)> {
        self.units
            .iter()
            .enumerate()
            .map(|(ai, _)| {
                v.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, &c)| {
                    let (co, si) = self.emb[i][ai];
                    (re + c as f64 * co, im + c as f64 * si)
                })
            })
            .collect()
    }
}

/// Residual state for one tracked power (sum or sum of squares).
#[derive(Clone)]
struct Track {
    power: u64,
    exact: Vec<i64>,
    approx: Vec<(f64, f64)>,
}

impl Track {
    fn apply(&mut self, s: &Search, j: u64, sign: i64) {
        let jj = ((j * self.power) % s.n) as usize;
        for (x, v) in self.exact.iter_mut().zip(&s.vecs[jj]) {
            *x -= sign * v;
        }
        for (x, e) in self.approx.iter_mut().zip(&s.emb[jj]) {
            x.0 -= sign as f64 * e.0;
            x.1 -= sign as f64 * e.1;
        }
    }

    fn feasible(&self, remaining: usize) -> bool {
        let r = remaining as f64 + 1e-7;
        self.approx
            .iter()
            .all(|&(re, im)| re * re + im * im <= r * r)
    }

    fn is_zero(&self) -> bool {
        self.exact.iter().all(|&x| x == 0)
    }
}

fn dfs(s: &Search, tracks: &mut [Track], start: u64, left: usize, path: &mut Vec<u64>) -> bool {
    if left == 0 {
        return tracks.iter().all(Track::is_zero);
    }
    for j in start..s.n {
        for t in tracks.iter_mut() {
            t.apply(s, j, 1);
        }
        if tracks.iter().all(|t| t.feasible(left - 1)) {
            path.push(j);
            if dfs(s, tracks, j, left - 1, path) {
                return true;
            }
            path.pop();
        }
        for t in tracks.iter_mut() {
            t.apply(s, j, -1);
        }
    }
    false
}

fn search(targets: &[(u64, &QuadVal)], max_order: u64, max_count: usize) -> MinRootsResult {
    let n = max_order;
    let exceeded = MinRootsResult {
        status: SearchStatus::ExceedsBudget,
        minimum: None,
        witness: vec![],
        max_order,
        max_count,
    };
    let s = Search::new(n);
    let mut init = Vec::new();
    for &(power, t) in targets {
        let Some(v) = integral_coords(t, n) else {
            return exceeded;
        };
        let approx = s.embed(&v);
        init.push(Track {
            power,
            exact: v,
            approx,
        });
    }
    debug_assert!(init.iter().all(|t| t.exact.len() == s.phi));
    for k in 0..=max_count {
        let found = if k == 0 {
            init.iter().all(Track::is_zero).then(Vec::new)
        } else {
            (0..n).into_par_iter().find_map_first(|j| {
                let mut tracks = init.clone();
                for t in tracks.iter_mut() {
                    t.apply(&s, j, 1);
                }
                if !tracks.iter().all(|t| t.feasible(k - 1)) {
                    return None;
                }
                let mut path = vec![j];
                dfs(&s, &mut tracks, j, k - 1, &mut path).then_some(path)
            })
        };
        if let Some(path) = found {
            return MinRootsResult {
                status: SearchStatus::Found,
                minimum: Some(k),
                witness: path.into_iter().map(|j| Root::new(n, j as i64)).collect(),
                max_order,
                max_count,
            };
        }
    }
    exceeded
}

/// Fewest roots of unity of order dividing `max_order` summing to `target`,
/// searching multisets of size up to `max_count`.
pub fn minroots_bruteforce(target: &QuadVal, max_order: u64, max_count: usize) -> MinRootsResult {
    search(&[(1, target)], max_order, max_count)
}

/// As [`minroots_bruteforce`], with `sum theta = target1` and
/// `sum theta^2 = target2` required simultaneously.
pub fn minroots_paired_bruteforce(
    target1: &QuadVal,
    target2: &QuadVal,
    max_order: u64,
    max_count: usize,
) -> MinRootsResult {
    search(&[(1, target1), (2, target2)], max_order, max_count)
}

/// Whether an integer fits the `u64` range, for CLI argument checks.
pub fn fits_u64(n: &BigInt) -> bool {
    !n.is_negative() && n.to_u64().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn general_bound_examples() {
        assert_eq!(bound_sqrt_general(0, 1, 5).unwrap(), 4);
        assert_eq!(bound_sqrt_general(7, 0, 5).unwrap(), 0);
        assert!(bound_sqrt_general(0, 1, 4).is_err());
    }

    #[test]
    fn sqrt2_bound_examples() {
        assert_eq!(bound_sqrt2(0, 1), 2);
        assert_eq!(bound_sqrt2(2, 1), 4);
        assert_eq!(bound_sqrt2(0, 0), 0);
    }

    #[test]
    fn paired_examples() {
        assert_eq!(bound_paired(0, 1, 3, 1).unwrap().value, 5);
        assert_eq!(bound_paired(0, 1, 21, 0).unwrap().value, 10);
        assert!(matches!(
            bound_paired(0, 1, 6, 1),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            bound_paired(0, 1, 5, 1),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            bound_paired(0, -1, 3, 1),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn orbit_examples() {
        let r = orbit_sums(3, 12).unwrap();
        assert_eq!(r.orbits.len(), 2);
        let sums: Vec<QuadVal> = r.orbits.iter().map(|o| o.sum.clone()).collect();
        assert!(sums.contains(&QuadVal::sqrt_of(3)));
        assert!(sums.contains(&-QuadVal::sqrt_of(3)));

        let r = orbit_sums(5, 5).unwrap();
        let sums: Vec<QuadVal> = r.orbits.iter().map(|o| o.sum.clone()).collect();
        assert!(sums.contains(&QuadVal::new(frac(-1, 2), frac(1, 2), 5)));
        assert!(sums.contains(&QuadVal::new(frac(-1, 2), frac(-1, 2), 5)));

        let r = orbit_sums(3, 8).unwrap();
        assert_eq!(r.orbits.len(), 1);
        assert_eq!(r.orbits[0].size, 4);
        assert_eq!(r.orbits[0].sum, QuadVal::from_int(0));
    }

    #[test]
    fn roots_reduce() {
        assert_eq!(Root::new(24, 4), Root { order: 6, exp: 1 });
        assert_eq!(Root::new(5, 2).neg(), Root { order: 10, exp: 9 });
        assert_eq!(Root::new(7, 0), Root { order: 1, exp: 0 });
    }

    #[test]
    fn normalize_examples() {
        // primitive 15th roots, c = 3: sqrt(3) is not in Q(zeta_15), so the
        // whole orbit collapses to {1}.
        let o = OrbitId::containing(3, 15, 1);
        assert_eq!(normalize_case(3, 15, false), NormalizeCase::FullOrbit);
        assert_eq!(
            orbit_normalize(&[o], 3, false).unwrap(),
            vec![OrbitId { order: 1, rep: 0 }]
        );
        // primitive 9th roots vanish
        let o = OrbitId::containing(3, 9, 1);
        assert!(orbit_normalize(&[o], 3, true).unwrap().is_empty());
        // {1} is untouched
        let one = OrbitId { order: 1, rep: 0 };
        assert_eq!(orbit_normalize(&[one], 3, true).unwrap(), vec![one]);
    }

    #[test]
    fn split_case_preserves_sums() {
        // c = 5, Y = 5 * 3: u = 3, mu(u) = -1
        let o = OrbitId::containing(5, 15, 1);
        assert_eq!(
            normalize_case(5, 15, true),
            NormalizeCase::Split { u: 3, v: 5 }
        );
        for track in [false, true] {
            let out = orbit_normalize(&[o], 5, track).unwrap();
            let before = orbit_roots(5, &[o]);
            let after = orbit_roots(5, &out);
            assert!(sum_of_roots(&before).equal(&sum_of_roots(&after)));
            if track {
                assert!(sum_of_squares(&before).equal(&sum_of_squares(&after)));
            }
            assert!(after.len() <= before.len());
        }
    }

    #[test]
    fn minroots_small() {
        let r = minroots_bruteforce(&QuadVal::sqrt_of(2), 8, 4);
        assert_eq!(r.minimum, Some(2));
        assert_eq!(r.witness, vec![Root::new(8, 1), Root::new(8, 7)]);
        let r = minroots_bruteforce(&QuadVal::from_int(0), 12, 3);
        assert_eq!(r.minimum, Some(0));
        assert!(r.witness.is_empty());
    }

    #[test]
    fn minroots_paired_small() {
        let r = minroots_paired_bruteforce(&QuadVal::from_int(-1), &QuadVal::from_int(-1), 12, 3);
        assert_eq!(r.minimum, Some(2));
        assert_eq!(r.witness, vec![Root::new(3, 1), Root::new(3, 2)]);
        let r = minroots_paired_bruteforce(&QuadVal::from_int(-1), &QuadVal::from_int(1), 12, 3);
        assert_eq!(r.minimum, Some(1));
        assert_eq!(r.witness, vec![Root::new(2, 1)]);
    }

    #[test]
    fn minroots_outside_field() {
        let r = minroots_bruteforce(&QuadVal::sqrt_of(3), 8, 4);
        assert_eq!(r.status, SearchStatus::ExceedsBudget);
        let half = QuadVal::rational(frac(1, 2));
        assert_eq!(
            minroots_bruteforce(&half, 12, 3).status,
            SearchStatus::ExceedsBudget
        );
    }

    #[test]
    fn certificates_hold() {
        assert!(certificate_sqrt2().unwrap().holds);
        for c in [3u64, 5, 7, 13, 15, 21] {
            assert!(certificate_sqrt_general(c).unwrap().holds, "c={c}");
        }
        for c in [3u64, 15, 21, 33, 39] {
            assert!(certificate_paired(c).unwrap().holds, "c={c}");
        }
    }

    const SQUAREFREE: [u64; 12] = [1, 2, 3, 5, 6, 7, 10, 11, 13, 15, 21, 33];

    proptest::proptest! {
        #[test]
        fn normalize_conserves_sums(
            ci in 0usize..SQUAREFREE.len(),
            x in 1u64..=48,
            picks in proptest::collection::vec((0usize..16, 0usize..64), 1..6),
            track in proptest::bool::ANY,
        ) {
            let c = SQUAREFREE[ci];
            let orbits: Vec<OrbitId> = picks
                .iter()
                .map(|&(yi, i)| {
                    let ys = divisors(x);
                    let y = ys[yi % ys.len()];
                    let all = orbits_of_order(c, y);
                    all[i % all.len()]
                })
                .collect();
            let out = orbit_normalize(&orbits, c, track).unwrap();
            let before = orbit_roots(c, &orbits);
            let after = orbit_roots(c, &out);
            let n = before.iter().chain(&after).fold(1, |m, r| lcm(m, r.order));
            proptest::prop_assert_eq!(power_sum_coords(&before, 1, n), power_sum_coords(&after, 1, n));
            if track {
                proptest::prop_assert_eq!(power_sum_coords(&before, 2, n), power_sum_coords(&after, 2, n));
            }
            proptest::prop_assert!(after.len() <= before.len());
            let cap = if track { tracked_order_bound(c) } else { untracked_order_bound(c) };
            for r in &after {
                proptest::prop_assert_eq!(cap % r.order, 0);
            }
        }
    }
}
