use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use fuscat_core::arith::cyclo::cyclotomic_poly;
use fuscat_core::arith::ntheory::{euler_phi, units_mod};
use fuscat_core::{CycloElem, QuadVal, Rational, Sign};

const RADICANDS: [u64; 10] = [2, 3, 5, 6, 7, 10, 13, 21, 93, 1001];

/// Sign of `a + b sqrt(c)` from a 256-bit fixed-point enclosure of sqrt(c).
fn interval_sign(a: &Rational, b: &Rational, c: u64) -> Option<Sign> {
    let an: BigInt = a.numer() * b.denom();
    let bn: BigInt = b.numer() * a.denom();
    let scale = BigInt::from(1) << 256u32;
    let lo = (&bn * &bn * BigInt::from(c) * &scale * &scale).sqrt();
    let hi = &lo + 1u32;
    // |b| sqrt(c) * 2^256 lies in [lo, hi]
    let a_scaled = an * &scale;
    let (blo, bhi) = if bn.is_negative() {
        (-hi, -lo)
    } else {
        (lo, hi)
    };
    let (slo, shi) = (&a_scaled + blo, &a_scaled + bhi);
    if slo.is_positive() {
        Some(Sign::Positive)
    } else if shi.is_negative() {
        Some(Sign::Negative)
    } else if bn.is_zero() && a_scaled.is_zero() {
        Some(Sign::Zero)
    } else {
        None
    }
}

fn rat() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #[test]
    fn quad_sign_matches_interval(a in rat(), b in rat(), ci in 0usize..RADICANDS.len()) {
        let c = RADICANDS[ci];
        let x = QuadVal::new(a.clone(), b.clone(), c);
        let want = interval_sign(&a, &b, c);
        prop_assert_eq!(Some(x.sign()), want);
    }

    #[test]
    fn near_cancellation_sign(m in 1i64..2000, ci in 0usize..RADICANDS.len()) {
        // p / q close to sqrt(c): the integer part of m sqrt(c) and its successor
        let c = RADICANDS[ci];
        let s = ((m * m) as f64 * c as f64).sqrt().floor() as i64;
        for p in [s - 1, s, s + 1, s + 2] {
            let a = Rational::from_integer(p.into());
            let b = Rational::from_integer((-m).into());
            let x = QuadVal::new(a.clone(), b.clone(), c);
            prop_assert_eq!(Some(x.sign()), interval_sign(&a, &b, c));
        }
    }

    #[test]
    fn quad_field_laws(a in rat(), b in rat(), e in rat(), f in rat(), ci in 0usize..RADICANDS.len()) {
        let c = RADICANDS[ci];
        let x = QuadVal::new(a, b, c);
        let y = QuadVal::new(e, f, c);
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
        if !y.is_zero() {
            prop_assert_eq!(x.try_div(&y).unwrap() * y.clone(), x.clone());
        }
        prop_assert_eq!(x.norm(), (x.clone() * x.conj()).a().clone());
    }

    #[test]
    fn galois_is_a_ring_homomorphism(
        n in prop::sample::select(vec![5u64, 7, 8, 9, 12, 15, 20, 24]),
        xs in prop::collection::vec(-5i64..5, 24),
        ys in prop::collection::vec(-5i64..5, 24),
        ki in 0usize..16,
    ) {
        let mk = |v: &[i64]| CycloElem::from_coeffs(n, v[..n as usize].iter().map(|&z| Rational::from_integer(z.into())).collect());
        let x = mk(&xs);
        let y = mk(&ys);
        let units = units_mod(n);
        let k = units[ki % units.len()] as i64;
        let g = |z: &CycloElem| z.galois(k).unwrap();
        prop_assert!(g(&(x.clone() * y.clone())).equal(&(g(&x) * g(&y))));
        prop_assert!(g(&(x.clone() + y.clone())).equal(&(g(&x) + g(&y))));
    }

    #[test]
    fn quad_round_trips_through_cyclotomic(a in rat(), b in rat(), ci in 0usize..6) {
        let c = RADICANDS[ci];
        let x = QuadVal::new(a, b, c);
        let z = CycloElem::from_quad(&x);
        prop_assert_eq!(z.to_quad(c).unwrap(), x);
    }
}

#[test]
fn cyclotomic_degrees() {
    for n in 1..=120u64 {
        assert_eq!(cyclotomic_poly(n).len() as u64 - 1, euler_phi(n), "n = {n}");
    }
}

#[test]
fn noninvertible_galois_index() {
    let z = CycloElem::root(12, 1);
    assert!(z.galois(2).is_err());
}
