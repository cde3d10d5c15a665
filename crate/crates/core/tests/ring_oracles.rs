use fuscat_core::arith::ntheory::gcd;
use fuscat_core::codegree::ostrik_gates;
use fuscat_core::{CycloElem, FusionRing, KParams, QuadVal, Rational};

/// Fusion coefficients of a group's representation ring from its character
/// table: `N_ij^k = (1/|G|) sum_g chi_i(g) chi_j(g) conj(chi_k(g))`.
fn ring_from_characters(
    class_sizes: &[i64],
    chars: &[Vec<CycloElem>],
    dual: Vec<usize>,
) -> FusionRing {
    let order: i64 = class_sizes.iter().sum();
    let r = chars.len();
    let mut t = vec![vec![vec![0i64; r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let mut acc = CycloElem::from_int(3, 0);
                for (g, &size) in class_sizes.iter().enumerate() {
                    let term = chars[i][g].clone() * chars[j][g].clone() * chars[k][g].conj();
                    acc = acc + term.scale(&Rational::from_integer(size.into()));
                }
                let v = acc.as_scalar().expect("rational inner product")
                    / Rational::from_integer(order.into());
                assert!(v.is_integer());
                t[i][j][k] = v.to_integer().try_into().unwrap();
            }
        }
    }
    FusionRing::new(dual, t).unwrap()
}

#[test]
fn a4_character_table_matches_k1_2() {
    let one = CycloElem::from_int(3, 1);
    let w = CycloElem::root(3, 1);
    let w2 = CycloElem::root(3, 2);
    let int = |n| CycloElem::from_int(3, n);
    // classes: identity, double transpositions, two classes of 3-cycles
    let sizes = [1, 3, 4, 4];
    let chars = vec![
        vec![one.clone(), one.clone(), one.clone(), one.clone()],
        vec![one.clone(), one.clone(), w.clone(), w2.clone()],
        vec![int(3), int(-1), int(0), int(0)],
        vec![one.clone(), one.clone(), w2, w],
    ];
    // basis order 1, chi_w, chi_3, chi_w2 so the non-self-dual pair sits at 1 and 3
    let a4 = ring_from_characters(&sizes, &chars, vec![0, 3, 2, 1]);
    assert!(a4.verify().passed);
    let k = KParams::new(1, 2, 1, 0, 0, 0).unwrap().build().unwrap();
    assert!(a4.is_isomorphic(&k).is_some());
}

#[test]
fn z4_group_ring_matches_k2_0() {
    let t: Vec<Vec<Vec<i64>>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| (0..4).map(|k| ((i + j) % 4 == k) as i64).collect())
                .collect()
        })
        .collect();
    let z4 = FusionRing::new(vec![0, 3, 2, 1], t).unwrap();
    let k = KParams::new(0, 0, 0, 1, 0, 0).unwrap().build().unwrap();
    assert!(z4.is_isomorphic(&k).is_some());
}

#[test]
fn family_members_up_to_fifty() {
    for e in 0..=50 {
        let ring = KParams::k1(e).build().unwrap();
        let rep = ring.verify();
        assert!(rep.passed, "K1({e}): {:?}", rep.failed_axioms());
        let dims = ring.fpdim().unwrap();
        // FPdim(Y) is the positive root of t^2 - e t - 3
        let delta = QuadVal::from_sqrt_multiple(
            Rational::new(e.into(), 2.into()),
            Rational::new(1.into(), 2.into()),
            (e * e + 12) as u64,
        );
        assert_eq!(dims.dims[2], delta, "K1({e})");
        assert!(ring.fpdim_is_homomorphism(&dims.dims).unwrap());
        let f = ring.formal_codegrees().unwrap();
        assert!(
            ostrik_gates(&f.values).unwrap().reciprocal_sum_is_one,
            "K1({e})"
        );
        assert_eq!(f.values[0], dims.total);
    }
    for c in 0..=50 {
        let ring = KParams::k2(c).build().unwrap();
        assert!(ring.verify().passed, "K2({c})");
        let dims = ring.fpdim().unwrap();
        let d = QuadVal::from_sqrt_multiple(
            Rational::from_integer(c.into()),
            Rational::from_integer(1.into()),
            (c * c + 1) as u64,
        );
        assert_eq!(dims.dims[1], d, "K2({c})");
        assert!(ring.fpdim_is_homomorphism(&dims.dims).unwrap());
        let f = ring.formal_codegrees().unwrap();
        assert!(
            ostrik_gates(&f.values).unwrap().reciprocal_sum_is_one,
            "K2({c})"
        );
        assert_eq!(f.values[0], dims.total);
    }
}

fn squarefree_by_trial(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * n
}

#[test]
fn radicand_is_odd_multiple_of_three_prime_to_five() {
    for k in 0..=20u64 {
        let c = squarefree_by_trial(9 * k * k + 12);
        assert_eq!(c % 3, 0, "k = {k}");
        assert_eq!(gcd(c, 10), 1, "k = {k}");
    }
}
