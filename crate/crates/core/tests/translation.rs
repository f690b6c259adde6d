//! Shape and semantics of the `|>`-translation and the `[]`-elimination.

use glint_core::generate::{core_formulas_up_to, random_closed_gl_formula, random_core_formula};
use glint_core::veltman::{random_veltman, IlChecker};
use glint_core::Formula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn translations_are_closed_and_linearly_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut pool = core_formulas_up_to(7);
    for _ in 0..200 {
        pool.push(random_core_formula(rng.random_range(8..=14), &mut rng));
    }
    for f in &pool {
        let t = f.translate_dagger().unwrap_or_else(|e| panic!("{f}: {e}"));
        assert!(t.is_closed(), "{f} translated to open {t}");
        // `|>` appears exactly when the variable did: the only clause that
        // introduces it is the one for p0.
        assert_eq!(t.contains_rhd(), f.variables().contains(&0), "{f} -> {t}");
        assert!(t.size() <= 8 * f.size(), "{f} blew up to {t}");
    }
    // The bound is tight on the variable alone.
    let p_t = Formula::var(0).translate_dagger().unwrap();
    assert_eq!(p_t.size(), 8);
    assert_eq!(Formula::var(0).size(), 1);
}

#[test]
fn translation_distributes_over_implication() {
    let a: Formula = "[]p0 -> p0".parse().unwrap();
    let t = a.translate_dagger().unwrap();
    let (ta, tb) = match t {
        Formula::Imp(x, y) => (*x, *y),
        other => panic!("expected an implication, got {other}"),
    };
    assert_eq!(ta, "[]p0".parse::<Formula>().unwrap().translate_dagger().unwrap());
    assert_eq!(tb, Formula::var(0).translate_dagger().unwrap());
}

#[test]
fn box_via_rhd_preserves_truth_on_veltman_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for seed in 0..25u64 {
        let m = random_veltman(3 + (seed % 6) as u32, 0.5, 900 + seed);
        let mut checker = IlChecker::new(&m);
        for _ in 0..20 {
            let f = random_closed_gl_formula(3, &mut rng);
            let g = f.box_as_rhd();
            assert!(!g
                .subformulas()
                .iter()
                .any(|s| matches!(s, Formula::Box(_) | Formula::Dia(_))));
            for &w in &m.worlds {
                assert_eq!(
                    checker.holds(w, &f).unwrap(),
                    checker.holds(w, &g).unwrap(),
                    "seed {seed}, world {w}: {f} vs {g}"
                );
            }
        }
        // The rewrite is also sound for open formulas.
        for text in ["[]p0 -> p1", "<>(p0 & []p1)", "~[]~p0 <-> <>p0"] {
            let f: Formula = text.parse().unwrap();
            let g = f.box_as_rhd();
            for &w in &m.worlds {
                assert_eq!(
                    checker.holds(w, &f).unwrap(),
                    checker.holds(w, &g).unwrap(),
                    "seed {seed}, world {w}: {text}"
                );
            }
        }
    }
}
