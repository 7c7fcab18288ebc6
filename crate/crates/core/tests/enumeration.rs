mod common;

use common::*;
use magma_lab::caps::Caps;
use magma_lab::enumerate::{EnumError, EnumSpec, Enumeration, Mode};
use magma_lab::law::Law;
use magma_lab::magma::canonical_form;

fn collect(spec: &EnumSpec) -> Vec<Table> {
    Enumeration::with_caps(spec, &Caps::default())
        .unwrap()
        .iter()
        .map(|m| rows(&m))
        .collect()
}

#[test]
fn all_magmas_match_brute_force() {
    for n in 1..=2 {
        assert_eq!(collect(&EnumSpec::all_magmas(n)), all_tables(n));
    }
    let e = Enumeration::with_caps(&EnumSpec::all_magmas(3), &Caps::default()).unwrap();
    assert_eq!(e.count(1), 19_683);
    assert_eq!(e.count(4), 19_683);
}

#[test]
fn latin_mode_matches_filtered_magmas() {
    for n in 1..=3 {
        let naive: Vec<Table> = all_tables(n).into_iter().filter(is_latin).collect();
        assert_eq!(collect(&EnumSpec::latin_squares(n)), naive, "order {n}");
        let via_constraint = collect(&EnumSpec::all_magmas(n).with_constraints([Law::Quasigroup]));
        assert_eq!(via_constraint, naive);
    }
    assert_eq!(collect(&EnumSpec::latin_squares(4)), latin_tables(4));
}

#[test]
fn latin_counts_follow_reduced_squares() {
    // |L_n| = n! (n-1)! R_n
    let caps = Caps::default();
    for n in 1..=5 {
        let expected = factorial(n) * factorial(n - 1) * reduced_latin_count(n);
        let got = Enumeration::with_caps(&EnumSpec::latin_squares(n), &caps)
            .unwrap()
            .count(2);
        assert_eq!(got as usize, expected, "order {n}");
    }
    assert_eq!(reduced_latin_count(4), 4);
    assert_eq!(reduced_latin_count(5), 56);
}

#[test]
fn constraint_pushdown_matches_leaf_filtering() {
    let laws = [
        Law::Associative,
        Law::Commutative,
        Law::CyclicI,
        Law::AbelGrassmannII,
        Law::Reduced,
        Law::Neutral,
        Law::Inverses,
        Law::Group,
    ];
    for n in 1..=3 {
        let everything = all_tables(n);
        for law in &laws {
            let naive: Vec<Table> = everything
                .iter()
                .filter(|t| law_holds(t, law))
                .cloned()
                .collect();
            let got = collect(&EnumSpec::all_magmas(n).with_constraints([law.clone()]));
            assert_eq!(got, naive, "{law} at order {n}");
        }
        let pair: Vec<Table> = everything
            .iter()
            .filter(|t| law_holds(t, &Law::Associative) && law_holds(t, &Law::Commutative))
            .cloned()
            .collect();
        let got = collect(
            &EnumSpec::all_magmas(n).with_constraints([Law::Associative, Law::Commutative]),
        );
        assert_eq!(got, pair);
    }
}

#[test]
fn up_to_iso_keeps_one_per_class() {
    for n in 1..=3 {
        let reps = collect(&EnumSpec::all_magmas(n).up_to_iso(true));
        for (i, s) in reps.iter().enumerate() {
            for t in &reps[i + 1..] {
                assert!(!isomorphic(s, t));
            }
        }
        // every table is isomorphic to some representative
        for t in all_tables(n).iter().step_by(97) {
            assert!(reps.iter().any(|r| isomorphic(r, t)));
        }
    }
    // magmas up to isomorphism: 1, 10, 3330
    let counts: Vec<usize> = (1..=3)
        .map(|n| collect(&EnumSpec::all_magmas(n).up_to_iso(true)).len())
        .collect();
    assert_eq!(counts, vec![1, 10, 3330]);
    // Latin squares of order 4 fall into 35 isomorphism classes
    assert_eq!(
        collect(&EnumSpec::latin_squares(4).up_to_iso(true)).len(),
        35
    );
}

#[test]
fn representatives_are_canonical() {
    for m in Enumeration::with_caps(
        &EnumSpec::latin_squares(4).up_to_iso(true),
        &Caps::default(),
    )
    .unwrap()
    .iter()
    {
        assert_eq!(canonical_form(&m).unwrap(), m);
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let caps = Caps::default();
    let specs = [
        EnumSpec::all_magmas(3).with_constraints([Law::Associative]),
        EnumSpec::latin_squares(4),
        EnumSpec::latin_squares(5).with_constraints([Law::Commutative]),
        EnumSpec::all_magmas(3).up_to_iso(true),
    ];
    for spec in &specs {
        let e = Enumeration::with_caps(spec, &caps).unwrap();
        let base = e.collect(1);
        assert_eq!(base, e.iter().collect::<Vec<_>>());
        for w in [2, 3, 8] {
            assert_eq!(e.collect(w), base);
            assert_eq!(e.count(w), base.len() as u64);
        }
    }
}

#[test]
fn caps_are_enforced() {
    let caps = Caps::default();
    assert!(matches!(
        Enumeration::with_caps(&EnumSpec::all_magmas(4), &caps),
        Err(EnumError::Infeasible {
            mode: Mode::AllMagmas,
            order: 4,
            cap: 3
        })
    ));
    assert!(Enumeration::with_caps(
        &EnumSpec::all_magmas(4).with_constraints([Law::Associative]),
        &caps
    )
    .is_ok());
    assert!(Enumeration::with_caps(&EnumSpec::latin_squares(7), &caps).is_err());
    assert!(Enumeration::with_caps(&EnumSpec::latin_squares(7), &Caps::uniform(7)).is_ok());
    assert!(matches!(
        Enumeration::with_caps(&EnumSpec::all_magmas(0), &caps),
        Err(EnumError::ZeroOrder)
    ));
}
