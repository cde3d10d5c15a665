use std::collections::BTreeSet;

use fuscat_core::codegree::{classify_rank4, integer_codegree_tuples, Verdict};
use fuscat_core::families::{enumerate_r, FamilyMember, RBox};

#[test]
fn lemma_tuples_are_the_eight_expected() {
    let got: BTreeSet<[u64; 4]> = integer_codegree_tuples().into_iter().collect();
    let want: BTreeSet<[u64; 4]> = [
        [12, 12, 3, 2],
        [8, 8, 4, 2],
        [10, 5, 5, 2],
        [6, 6, 6, 2],
        [6, 6, 3, 3],
        [6, 4, 4, 3],
        [12, 4, 3, 3],
        [4, 4, 4, 4],
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
}

#[test]
fn default_box_classification() {
    let b = RBox::default();
    let rep = classify_rank4(b);
    assert!(rep.matches_theorem(), "unexpected: {:?}", rep.unexpected);
    assert!(rep.gamma8_candidates > 0);
    // every family member in the box survives
    for r in enumerate_r(b) {
        let k = r.to_k().unwrap();
        if let Some(m) = k.family_member() {
            assert!(rep.survivors.contains(&m), "{m} was rejected");
        }
    }
    for o in &rep.outcomes {
        if o.r.x.abs() == 1 && o.r.y.abs() == 2 {
            assert!(matches!(o.verdict, Verdict::Rejected { .. }));
        }
    }
    assert!(rep.survivors.contains(&FamilyMember::K1(6)));
    assert!(rep.survivors.contains(&FamilyMember::K2(2)));
    eprintln!(
        "{} enumerated, {} survivors",
        rep.enumerated,
        rep.survivors.len()
    );
}
