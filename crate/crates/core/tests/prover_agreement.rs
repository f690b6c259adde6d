//! The tableau prover against the exhaustive bounded-model oracle.

use glint_core::generate::core_formulas_up_to;
use glint_core::gl::{brute_force_gl, mc_gl, prove_gl, tree_decomposition, validate_gl_frame};
use glint_core::Formula;

/// Sufficient oracle bounds for `f`: trees no deeper and no wider than the
/// number of distinct modal subformulas cover every refutable shape. Modal
/// depth is not enough for the depth bound — `[]([]F -> p0) -> [][][][]p0`
/// nests boxes four deep but needs a five-step chain, because the world
/// refuting `p0` must not be an endpoint.
fn oracle_bounds(f: &Formula) -> (usize, usize) {
    let modals = f
        .subformulas()
        .iter()
        .filter(|s| matches!(s, Formula::Box(_) | Formula::Dia(_)))
        .count();
    (modals, modals)
}

#[test]
fn prover_and_oracle_agree_on_the_small_exhaustive_pool() {
    let mut valid = 0;
    for f in core_formulas_up_to(5) {
        let proved = prove_gl(&f).unwrap();
        let (depth, branching) = oracle_bounds(&f);
        let searched = brute_force_gl(&f, depth, branching).unwrap();
        assert_eq!(
            proved.is_valid(),
            searched.is_valid(),
            "prover and oracle disagree on {f}"
        );
        valid += proved.is_valid() as usize;
        for verdict in [&proved, &searched] {
            if let Some((m, root)) = verdict.countermodel() {
                assert!(validate_gl_frame(m).clean(), "{f}");
                tree_decomposition(m).unwrap_or_else(|e| panic!("{f}: {e}"));
                assert!(!mc_gl(m, root, &f).unwrap(), "{f} not refuted");
            }
        }
    }
    // A fifth or so of the pool is valid; a collapse either way would mean
    // one side is broken in a way the pairwise check cannot see.
    assert_eq!(valid, 25);
}

#[test]
fn necessitation_preserves_validity() {
    let valid: Vec<Formula> = core_formulas_up_to(5)
        .into_iter()
        .filter(|f| prove_gl(f).unwrap().is_valid())
        .collect();
    assert!(valid.len() >= 20, "pool too thin: {}", valid.len());
    for f in valid {
        let boxed = f.clone().boxed();
        assert!(
            prove_gl(&boxed).unwrap().is_valid(),
            "necessitation failed: {f} valid but {boxed} not"
        );
    }
}

#[test]
fn unboxing_preserves_validity() {
    // The converse of necessitation also holds: a valid []A forces A valid,
    // since any world refuting A can be put below a fresh root.
    for f in core_formulas_up_to(6) {
        if let Formula::Box(a) = &f {
            assert_eq!(
                prove_gl(&f).unwrap().is_valid(),
                prove_gl(a).unwrap().is_valid(),
                "{f}"
            );
        }
    }
}

#[test]
fn countermodel_depth_is_bounded_by_modal_subformula_count() {
    // Not by modal depth: each chain step settles at least one new modal
    // subformula, but a single nesting level can take two steps (see
    // `oracle_bounds`).
    for f in core_formulas_up_to(6) {
        if let Some((m, _)) = prove_gl(&f).unwrap().countermodel() {
            let depth = m.heights().values().copied().max().unwrap_or(0);
            let (bound, _) = oracle_bounds(&f);
            assert!(
                depth <= bound,
                "{f}: countermodel depth {depth} exceeds modal subformula count {bound}"
            );
        }
    }
}
