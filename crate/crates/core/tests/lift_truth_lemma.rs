//! The lift preserves truth: a one-variable `[]`-formula holds at an old
//! world of the input exactly when its translation holds there in the
//! lifted Veltman model.

use glint_core::generate::{core_formulas_up_to, random_core_formula, random_tree_model, tree_models_up_to};
use glint_core::gl::{GlChecker, KripkeModel};
use glint_core::reduction::{lift_to_veltman, project_to_gl};
use glint_core::veltman::{validate_veltman, IlChecker};
use glint_core::Formula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_truth_lemma(m: &KripkeModel, pool: &[(Formula, Formula)], context: &str) {
    let lifted = lift_to_veltman(m).unwrap_or_else(|e| panic!("{context}: {e}"));
    assert!(
        validate_veltman(&lifted.model).clean(),
        "{context}: dirty lift"
    );
    let mut gl = GlChecker::new(m);
    let mut il = IlChecker::new(&lifted.model);
    for (b, b_t) in pool {
        for &x in &lifted.old_worlds {
            assert_eq!(
                gl.holds(x, b).unwrap(),
                il.holds(x, b_t).unwrap(),
                "{context}: {b} vs {b_t} at old world {x}"
            );
        }
    }
}

fn translated_pool(pool: Vec<Formula>) -> Vec<(Formula, Formula)> {
    pool.into_iter()
        .map(|b| {
            let t = b.translate_dagger().unwrap();
            (b, t)
        })
        .collect()
}

#[test]
fn truth_lemma_on_every_small_tree_model() {
    let pool = translated_pool(core_formulas_up_to(5));
    for (i, m) in tree_models_up_to(4).iter().enumerate() {
        assert_truth_lemma(m, &pool, &format!("exhaustive model {i}"));
    }
}

#[test]
fn truth_lemma_on_random_trees_with_larger_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let mut pool = core_formulas_up_to(4);
    for _ in 0..60 {
        pool.push(random_core_formula(rng.random_range(5..=10), &mut rng));
    }
    let pool = translated_pool(pool);
    for round in 0..60 {
        let m = random_tree_model(rng.random_range(1..=8), &mut rng);
        assert_truth_lemma(&m, &pool, &format!("random tree {round}"));
    }
}

#[test]
fn projection_inverts_lifting_on_the_exhaustive_pool() {
    for (i, m) in tree_models_up_to(4).iter().enumerate() {
        let lifted = lift_to_veltman(m).unwrap();
        let (back, anchor) = project_to_gl(&lifted.model, lifted.root).unwrap();
        assert_eq!(anchor, lifted.root, "model {i}");
        assert_eq!(back.worlds, m.worlds, "model {i}");
        assert_eq!(back.r, m.r, "model {i}");
        assert_eq!(back.val, m.val, "model {i}");
    }
}

#[test]
fn lifted_models_make_depth_visibility_define_the_old_worlds() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let sees_two: Formula = "<><>T".parse().unwrap();
    for round in 0..40 {
        let m = random_tree_model(rng.random_range(1..=8), &mut rng);
        let lifted = lift_to_veltman(&m).unwrap();
        let mut il = IlChecker::new(&lifted.model);
        for &w in &lifted.model.worlds {
            assert_eq!(
                il.holds(w, &sees_two).unwrap(),
                lifted.old_worlds.contains(&w),
                "round {round}: <><>T misclassifies world {w}"
            );
        }
    }
}
