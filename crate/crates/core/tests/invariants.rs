mod common;

use common::*;
use magma_lab::dsl::{parse_equation, Equation, Term};
use magma_lab::law::IDENTITY_LAWS;
use magma_lab::magma::{
    canonical_form, find_isomorphism, format_table, is_isomorphic, parse_table, Magma,
};
use magma_lab::properties::check;
use proptest::prelude::*;

fn table_strategy(max: usize) -> impl Strategy<Value = Table> {
    (1..=max).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(0..n, n), n))
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = (0u8..4).prop_map(Term::Var);
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Term::op(l, r))
    })
}

fn rename(t: &Term, map: &[u8; 4]) -> Term {
    match t {
        Term::Var(v) => Term::Var(map[*v as usize]),
        Term::Op(l, r) => Term::op(rename(l, map), rename(r, map)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_is_idempotent(t in table_strategy(5)) {
        let c = canonical_form(&magma(&t)).unwrap();
        prop_assert_eq!(canonical_form(&c).unwrap(), c.clone());
        prop_assert!(c <= magma(&t));
    }

    #[test]
    fn canonical_form_ignores_relabeling((t, p) in table_strategy(5).prop_flat_map(|t| {
        let n = t.len();
        (Just(t), perm_strategy(n))
    })) {
        let m = magma(&t);
        let r = m.relabel(&p);
        prop_assert_eq!(rows(&r), relabel(&t, &p));
        prop_assert_eq!(canonical_form(&m).unwrap(), canonical_form(&r).unwrap());
        prop_assert!(is_isomorphic(&m, &r).unwrap());
        let found = find_isomorphism(&m, &r).unwrap();
        prop_assert_eq!(m.relabel(&found), r);
    }

    #[test]
    fn laws_survive_relabeling((t, p) in table_strategy(4).prop_flat_map(|t| {
        let n = t.len();
        (Just(t), perm_strategy(n))
    })) {
        let m = magma(&t);
        let r = m.relabel(&p);
        for law in &IDENTITY_LAWS {
            prop_assert_eq!(check(&m, law).holds, check(&r, law).holds);
        }
    }

    #[test]
    fn table_text_round_trips(t in table_strategy(8)) {
        let m = magma(&t);
        prop_assert_eq!(parse_table(&format_table(&m)).unwrap(), m.clone());
        prop_assert_eq!(parse_table(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn equations_print_and_reparse(l in term_strategy(), r in term_strategy()) {
        let eq = Equation::new(l, r);
        let back = parse_equation(&eq.to_string()).unwrap();
        prop_assert_eq!(&back, &eq);
        prop_assert!(back.alpha_eq(&eq));
    }

    #[test]
    fn alpha_equivalence_ignores_variable_names(
        l in term_strategy(),
        r in term_strategy(),
        map in Just([10u8, 11, 12, 13]).prop_shuffle(),
    ) {
        let eq = Equation::new(l.clone(), r.clone());
        let renamed = Equation::new(rename(&l, &map), rename(&r, &map));
        prop_assert!(eq.alpha_eq(&renamed));
        prop_assert!(eq.alpha_eq(&Equation::new(r, l)));
    }

    #[test]
    fn witnesses_satisfy_their_violation(t in table_strategy(4), l in term_strategy(), r in term_strategy()) {
        let eq = Equation::new(l, r);
        let law = magma_lab::law::Law::User(eq.clone());
        let report = check(&magma(&t), &law);
        let expected = equation_failure(&t, &eq);
        prop_assert_eq!(report.holds, expected.is_none());
        if let Some(w) = report.witness {
            let vals: Vec<usize> = w.0.iter().map(|&(_, v)| v).collect();
            prop_assert_eq!(Some(vals), expected);
        }
    }
}

#[test]
fn order_one_is_canonical() {
    let m = Magma::from_fn(1, |_, _| 0);
    assert_eq!(canonical_form(&m).unwrap(), m);
}
