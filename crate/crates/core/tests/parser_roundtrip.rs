//! Rendering then parsing is the identity across the whole syntax.

use glint_core::generate::random_full_formula;
use glint_core::Formula;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn ten_thousand_seeded_formulas_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..10_000 {
        let f = random_full_formula(18, 4, &mut rng);
        let text = f.to_string();
        let back: Formula = text
            .parse()
            .unwrap_or_else(|e| panic!("case {i}, `{text}`: {e}"));
        assert_eq!(back, f, "case {i}, `{text}`");
    }
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Bot),
        Just(Formula::Top),
        (0u32..4).prop_map(Formula::var),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::dia),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.imp(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.iff(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.rhd(b)),
        ]
    })
}

proptest! {
    #[test]
    fn arbitrary_formulas_round_trip(f in formula_strategy()) {
        let text = f.to_string();
        let back: Formula = text.parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn renderings_never_need_a_reparse_hint(f in formula_strategy()) {
        // The printer must never emit adjacent tokens that lex differently,
        // so a second render of the reparse is byte-identical.
        let text = f.to_string();
        let back: Formula = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
    }
}
