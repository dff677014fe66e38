use proptest::prelude::*;
use sr2::criteria;
use sr2::models::{self, SemiringName};
use sr2::term::{mono_normal_form, Identity, Monomial, TermSum, Variable};

fn letter() -> impl Strategy<Value = Variable> {
    prop::sample::select(vec!['x', 'y', 'z']).prop_map(Variable::letter)
}

fn monomial(max_len: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(letter(), 1..=max_len).prop_map(|v| Monomial::new(v).unwrap())
}

fn term_sum() -> impl Strategy<Value = TermSum> {
    prop::collection::vec((monomial(4), 1u32..4), 1..4).prop_map(|items| TermSum::from_counts(items).unwrap())
}

fn identity() -> impl Strategy<Value = Identity> {
    (term_sum(), term_sum()).prop_map(|(l, r)| Identity::new(l, r))
}

fn holds_everywhere(id: &Identity) -> bool {
    SemiringName::ALL.iter().all(|s| models::satisfies(s.table(), id).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_then_parse_round_trips(id in identity()) {
        let again = Identity::parse(&id.to_string()).unwrap();
        prop_assert_eq!(again, id);
    }

    #[test]
    fn renaming_preserves_every_verdict(id in identity()) {
        let swap = |v: &Variable| match v.name().as_str() {
            "x" => Variable::letter('z'),
            "z" => Variable::letter('w'),
            _ => v.clone(),
        };
        let renamed = id.rename(&swap);
        for s in SemiringName::ALL {
            prop_assert_eq!(models::satisfies(s.table(), &id).unwrap(), models::satisfies(s.table(), &renamed).unwrap());
            prop_assert_eq!(criteria::criterion(s, &id), criteria::criterion(s, &renamed));
        }
    }

    #[test]
    fn criteria_match_models(id in identity()) {
        for s in SemiringName::ALL {
            prop_assert_eq!(criteria::criterion(s, &id), models::satisfies(s.table(), &id).unwrap(), "{} on {}", s, id);
        }
    }

    #[test]
    fn monomial_normal_form_decides_the_common_theory(a in monomial(5), b in monomial(5)) {
        let id = Identity::new(TermSum::monomial(a.clone()), TermSum::monomial(b.clone()));
        prop_assert_eq!(mono_normal_form(&a) == mono_normal_form(&b), holds_everywhere(&id));
    }

    #[test]
    fn signature_equality_decides_the_common_theory(id in identity()) {
        prop_assert_eq!(criteria::sr2_equal(&id.lhs, &id.rhs), holds_everywhere(&id));
    }

    #[test]
    fn identities_are_symmetric(id in identity()) {
        for s in SemiringName::ALL {
            prop_assert_eq!(models::satisfies(s.table(), &id).unwrap(), models::satisfies(s.table(), &id.reversed()).unwrap());
        }
    }
}
