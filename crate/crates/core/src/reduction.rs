//! The passage between one-variable GL and the closed fragment of IL.
//!
//! `translate_dagger` (on [`Formula`]) maps a one-variable `[]`-formula `A`
//! to a closed `|>`-formula `A+` such that `A` is GL-valid iff `A+` is
//! IL-valid. This module supplies the two model constructions that witness
//! the equivalence and a pipeline that certifies each verdict:
//!
//! * [`lift_to_veltman`] grows a Veltman model out of a tree-like GL model
//!   so that each old world satisfies `A+` exactly where it satisfied `A`.
//!   A GL countermodel therefore lifts to an IL countermodel for `A+`.
//! * [`project_to_gl`] goes the other way, carving a GL model out of any
//!   Veltman model: keep the worlds that see two steps ahead, and read the
//!   variable off the translation of `p0`.
//! * [`reduce_and_certify`] runs the GL prover on `A` and re-checks the
//!   verdict on the IL side: invalid formulas ship a lifted countermodel
//!   rechecked against `A+`, valid ones a proof trace plus a spot check of
//!   `A+` on random Veltman models.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::formula::{Formula, TranslateError};
use crate::gl::{prove_gl, tree_decomposition, GlError, GlVerdict, KripkeModel, TreeError, World};
use crate::veltman::{
    mc_il, random_veltman, transitive_close, IlChecker, IlError, VeltmanModel,
};

/// A Veltman model grown out of a tree-like GL model, with the bookkeeping
/// to map worlds back: every endpoint `e` of the input gained a two-world
/// tail `e -> bridges[e] -> tips[e]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedModel {
    pub model: VeltmanModel,
    /// Worlds of the input model.
    pub old_worlds: BTreeSet<World>,
    /// Endpoint -> the fresh world hung directly below it.
    pub bridges: BTreeMap<World, World>,
    /// Endpoint -> the fresh deepest world, below the bridge.
    pub tips: BTreeMap<World, World>,
    /// Root of the input tree.
    pub root: World,
}

/// Why a model cannot be lifted.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("input is not a tree-like model: {0}")]
    Tree(#[from] TreeError),
    #[error("lifting handles one-variable models, found p{0}")]
    ForeignVariable(u32),
}

/// Extends a tree-like one-variable GL model to a Veltman model on which
/// the `|>`-translation of any `[]`-formula agrees, old world by old world,
/// with the formula itself.
///
/// Every endpoint grows a bridge and a tip world, which makes `<><>T` true
/// exactly at the old worlds. For an old world `x`, `S_x` contains the
/// mandatory pairs (identity and R-steps above `x`) and, exactly when `p0`
/// holds at `x`, the escape pairs `(tip, bridge)` for every tail below `x`;
/// the escape is what makes `T |> <>T` — the translation of `p0` — true
/// at `x`.
pub fn lift_to_veltman(m: &KripkeModel) -> Result<LiftedModel, LiftError> {
    let tree = tree_decomposition(m)?;
    for vars in m.val.values() {
        if let Some(&v) = vars.iter().find(|&&v| v != 0) {
            return Err(LiftError::ForeignVariable(v));
        }
    }

    let base = m.worlds.iter().max().map_or(0, |&w| w + 1);
    let mut bridges = BTreeMap::new();
    let mut tips = BTreeMap::new();
    for (i, &e) in tree.endpoints.iter().enumerate() {
        bridges.insert(e, base + 2 * i as World);
        tips.insert(e, base + 2 * i as World + 1);
    }

    let mut r = m.r.clone();
    for &e in &tree.endpoints {
        r.insert((e, bridges[&e]));
        r.insert((bridges[&e], tips[&e]));
    }
    let r = transitive_close(&r);

    let mut model = VeltmanModel {
        worlds: m.worlds.iter().copied().chain(bridges.values().copied()).chain(tips.values().copied()).collect(),
        r,
        s: BTreeMap::new(),
        val: BTreeMap::new(),
    };

    for &x in &m.worlds {
        let succ: Vec<World> = model.successors(x).collect();
        let mut pairs = BTreeSet::new();
        for &y in &succ {
            pairs.insert((y, y));
            for z in model.successors(y) {
                pairs.insert((y, z));
            }
        }
        if m.vars_at(x).contains(&0) {
            for &e in &tree.endpoints {
                if e == x || m.r.contains(&(x, e)) {
                    pairs.insert((tips[&e], bridges[&e]));
                }
            }
        }
        model.s.insert(x, transitive_close(&pairs));
    }
    for &e in &tree.endpoints {
        model
            .s
            .insert(bridges[&e], BTreeSet::from([(tips[&e], tips[&e])]));
    }

    Ok(LiftedModel {
        model,
        old_worlds: m.worlds.clone(),
        bridges,
        tips,
        root: tree.root,
    })
}

/// Carves a GL model out of a Veltman model: the worlds kept are `w` plus
/// everyone satisfying `<><>T`, the relation is restricted, and `p0` is set
/// where the translation of `p0` holds. Returns the model (rooted at `w`)
/// and `w` itself.
pub fn project_to_gl(m: &VeltmanModel, w: World) -> Result<(KripkeModel, World), IlError> {
    if !m.worlds.contains(&w) {
        return Err(IlError::UnknownWorld(w));
    }
    let mut checker = IlChecker::new(m);
    let sees_two = Formula::Top.dia().dia();
    let p_translation = Formula::var(0)
        .translate_dagger()
        .expect("p0 translates");

    let mut worlds = BTreeSet::from([w]);
    for &x in &m.worlds {
        if checker.holds(x, &sees_two)? {
            worlds.insert(x);
        }
    }
    let r = m
        .r
        .iter()
        .copied()
        .filter(|(x, y)| worlds.contains(x) && worlds.contains(y))
        .collect();
    let mut val = BTreeMap::new();
    for &x in &worlds {
        if checker.holds(x, &p_translation)? {
            val.insert(x, BTreeSet::from([0]));
        }
    }
    Ok((
        KripkeModel {
            worlds,
            r,
            val,
            root: Some(w),
        },
        w,
    ))
}

/// Outcome of the random-model spot check run for valid formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmokeReport {
    pub models: usize,
    pub worlds_checked: usize,
    pub all_satisfied: bool,
    /// Fixed reminder that the sweep is a sanity check, not the certificate.
    pub note: String,
}

/// The IL-side evidence attached to a reduction verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The formula is valid: the tableau trace is the certificate, and the
    /// translation survived a random-model sweep.
    Proof { smoke: SmokeReport },
    /// The formula is invalid: a lifted Veltman model refutes the
    /// translation at `lifted.root`; `recheck` records the re-evaluation.
    Countermodel { lifted: LiftedModel, recheck: bool },
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Certificate::Proof { smoke } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("kind", "proof_trace")?;
                map.serialize_entry("smoke", smoke)?;
                map.end()
            }
            Certificate::Countermodel { lifted, recheck } => {
                let mut map = serializer.serialize_map(Some(4))?;
                map.serialize_entry("kind", "lifted_countermodel")?;
                map.serialize_entry("lifted", lifted)?;
                map.serialize_entry("root", &lifted.root)?;
                map.serialize_entry("recheck", recheck)?;
                map.end()
            }
        }
    }
}

/// A fully certified reduction of one formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedReduction {
    pub input: Formula,
    pub translated: Formula,
    pub gl_verdict: GlVerdict,
    pub certificate: Certificate,
}

/// Knobs for [`reduce_and_certify_with`].
#[derive(Debug, Clone, Copy)]
pub struct ReduceConfig {
    /// Random Veltman models swept when the verdict is "valid".
    pub smoke_models: usize,
    pub seed: u64,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig {
            smoke_models: 50,
            seed: 0,
        }
    }
}

/// Failures of the reduction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Gl(#[from] GlError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Il(#[from] IlError),
    /// The IL-side evidence contradicted the GL verdict; this indicates a
    /// defect and is never expected on real runs.
    #[error("certification failed: {0}")]
    Certification(String),
}

/// [`reduce_and_certify_with`] under the default configuration.
pub fn reduce_and_certify(a: &Formula) -> Result<CertifiedReduction, ReductionError> {
    reduce_and_certify_with(a, ReduceConfig::default())
}

/// Decides GL-validity of the one-variable `[]`-formula `a`, translates it
/// to a closed `|>`-formula, and certifies the verdict on the IL side.
pub fn reduce_and_certify_with(
    a: &Formula,
    config: ReduceConfig,
) -> Result<CertifiedReduction, ReductionError> {
    let translated = a.translate_dagger()?;
    let gl_verdict = prove_gl(a)?;
    let certificate = match &gl_verdict {
        GlVerdict::Invalid { countermodel, root } => {
            let lifted = lift_to_veltman(countermodel)?;
            debug_assert_eq!(lifted.root, *root);
            let holds = mc_il(&lifted.model, lifted.root, &translated)?;
            if holds {
                return Err(ReductionError::Certification(format!(
                    "lifted countermodel satisfies {translated} at its root"
                )));
            }
            Certificate::Countermodel {
                lifted,
                recheck: true,
            }
        }
        GlVerdict::Valid { .. } => {
            let mut worlds_checked = 0;
            for k in 0..config.smoke_models {
                let n_worlds = 2 + (k % 7) as u32;
                let density = [0.3, 0.5, 0.8][k % 3];
                let m = random_veltman(n_worlds, density, config.seed.wrapping_add(k as u64));
                let mut checker = IlChecker::new(&m);
                for &w in &m.worlds {
                    worlds_checked += 1;
                    if !checker.holds(w, &translated)? {
                        return Err(ReductionError::Certification(format!(
                            "valid input but {translated} fails at world {w} of a random model (seed {})",
                            config.seed.wrapping_add(k as u64)
                        )));
                    }
                }
            }
            Certificate::Proof {
                smoke: SmokeReport {
                    models: config.smoke_models,
                    worlds_checked,
                    all_satisfied: true,
                    note: "spot check only; the certificate is the proof trace".to_string(),
                },
            }
        }
    };
    Ok(CertifiedReduction {
        input: a.clone(),
        translated,
        gl_verdict,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::veltman::validate_veltman;

    fn single_world(p_true: bool) -> KripkeModel {
        let val: Vec<(World, BTreeSet<u32>)> = if p_true {
            vec![(0, BTreeSet::from([0]))]
        } else {
            vec![]
        };
        KripkeModel::new([0], [], val, Some(0))
    }

    #[test]
    fn lifting_a_single_p_world_yields_the_escape_chain() {
        let lifted = lift_to_veltman(&single_world(true)).unwrap();
        assert_eq!(lifted.root, 0);
        assert_eq!(lifted.old_worlds, BTreeSet::from([0]));
        assert_eq!(lifted.bridges, BTreeMap::from([(0, 1)]));
        assert_eq!(lifted.tips, BTreeMap::from([(0, 2)]));
        let m = &lifted.model;
        assert_eq!(m.worlds, BTreeSet::from([0, 1, 2]));
        assert_eq!(m.r, BTreeSet::from([(0, 1), (0, 2), (1, 2)]));
        assert_eq!(
            m.s[&0],
            BTreeSet::from([(1, 1), (1, 2), (2, 1), (2, 2)]),
            "the escape pair (tip, bridge) and its closure"
        );
        assert_eq!(m.s[&1], BTreeSet::from([(2, 2)]));
        assert!(validate_veltman(m).clean());
        assert_eq!(mc_il(m, 0, &"T |> <>T".parse().unwrap()).unwrap(), true);
    }

    #[test]
    fn lifting_without_p_withholds_the_escape() {
        let lifted = lift_to_veltman(&single_world(false)).unwrap();
        let m = &lifted.model;
        assert_eq!(m.s[&0], BTreeSet::from([(1, 1), (1, 2), (2, 2)]));
        assert!(validate_veltman(m).clean());
        assert_eq!(mc_il(m, 0, &"T |> <>T".parse().unwrap()).unwrap(), false);
    }

    #[test]
    fn translated_variable_tracks_p_across_the_lift() {
        // 0 -> 1 with p0 at 1 only.
        let m = KripkeModel::new([0, 1], [(0, 1)], [(1, BTreeSet::from([0]))], Some(0));
        let lifted = lift_to_veltman(&m).unwrap();
        assert!(validate_veltman(&lifted.model).clean());
        let p_t = Formula::var(0).translate_dagger().unwrap();
        assert_eq!(mc_il(&lifted.model, 0, &p_t).unwrap(), false);
        assert_eq!(mc_il(&lifted.model, 1, &p_t).unwrap(), true);
        // New worlds satisfy the translation vacuously.
        assert_eq!(mc_il(&lifted.model, 2, &p_t).unwrap(), true);
    }

    #[test]
    fn projection_inverts_lifting() {
        let m = KripkeModel::new(
            [0, 1, 2],
            [(0, 1), (0, 2), (1, 2)],
            [(0, BTreeSet::from([0])), (2, BTreeSet::from([0]))],
            Some(0),
        );
        let lifted = lift_to_veltman(&m).unwrap();
        let (back, w) = project_to_gl(&lifted.model, lifted.root).unwrap();
        assert_eq!(w, 0);
        assert_eq!(back.worlds, m.worlds);
        assert_eq!(back.r, m.r);
        assert_eq!(back.val, m.val);
        assert_eq!(back.root, Some(0));
    }

    #[test]
    fn lift_rejects_non_trees_and_foreign_variables() {
        let dag = KripkeModel::new(
            [0, 1, 2, 3],
            [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
            [],
            None,
        );
        assert!(matches!(lift_to_veltman(&dag), Err(LiftError::Tree(_))));
        let wide = KripkeModel::new([0], [], [(0, BTreeSet::from([1]))], None);
        assert_eq!(
            lift_to_veltman(&wide),
            Err(LiftError::ForeignVariable(1))
        );
    }

    #[test]
    fn project_requires_a_known_anchor() {
        let m = random_veltman(4, 0.5, 1);
        assert_eq!(project_to_gl(&m, 9), Err(IlError::UnknownWorld(9)));
    }

    #[test]
    fn reducing_the_bare_variable_ships_a_rechecked_countermodel() {
        let out = reduce_and_certify(&Formula::var(0)).unwrap();
        assert!(!out.gl_verdict.is_valid());
        assert_eq!(out.translated.to_string(), "<><>T -> T |> <>T");
        match &out.certificate {
            Certificate::Countermodel { lifted, recheck } => {
                assert!(*recheck);
                assert!(validate_veltman(&lifted.model).clean());
                assert_eq!(
                    mc_il(&lifted.model, lifted.root, &out.translated).unwrap(),
                    false
                );
            }
            Certificate::Proof { .. } => panic!("p0 is not valid"),
        }
    }

    #[test]
    fn reducing_a_theorem_ships_a_trace_and_smoke_report() {
        let loeb: Formula = "[]([]p0 -> p0) -> []p0".parse().unwrap();
        let out = reduce_and_certify_with(
            &loeb,
            ReduceConfig {
                smoke_models: 10,
                seed: 42,
            },
        )
        .unwrap();
        assert!(out.gl_verdict.is_valid());
        assert!(out.gl_verdict.trace().is_some());
        match &out.certificate {
            Certificate::Proof { smoke } => {
                assert_eq!(smoke.models, 10);
                assert!(smoke.worlds_checked > 10);
                assert!(smoke.all_satisfied);
            }
            Certificate::Countermodel { .. } => panic!("a theorem"),
        }
    }

    #[test]
    fn reducing_box_bot_is_invalid_like_any_consistency_claim() {
        // []F fails at any world with a successor, and the lift must refute
        // its translation [](<><>T -> F) at the root.
        let out = reduce_and_certify(&"[]F".parse().unwrap()).unwrap();
        assert!(!out.gl_verdict.is_valid());
        assert_eq!(out.translated.to_string(), "[](<><>T -> F)");
        match &out.certificate {
            Certificate::Countermodel { lifted, .. } => {
                assert!(lifted.old_worlds.len() >= 2);
            }
            Certificate::Proof { .. } => panic!("[]F is not valid"),
        }
    }

    #[test]
    fn reduction_rejects_inputs_outside_the_fragment() {
        assert!(matches!(
            reduce_and_certify(&"p1".parse().unwrap()),
            Err(ReductionError::Translate(_))
        ));
        assert!(matches!(
            reduce_and_certify(&"T |> T".parse().unwrap()),
            Err(ReductionError::Translate(_))
        ));
    }

    #[test]
    fn certificates_serialize_with_their_kind() {
        let invalid = reduce_and_certify(&Formula::var(0)).unwrap();
        let json = serde_json::to_string(&invalid).unwrap();
        assert!(json.contains(r#""kind":"lifted_countermodel""#));
        assert!(json.contains(r#""recheck":true"#));
        assert!(json.contains(r#""gl_verdict":{"valid":false"#));

        let valid = reduce_and_certify_with(
            &"[]p0 -> [][]p0".parse().unwrap(),
            ReduceConfig {
                smoke_models: 3,
                seed: 0,
            },
        )
        .unwrap();
        let json = serde_json::to_string(&valid).unwrap();
        assert!(json.contains(r#""kind":"proof_trace""#));
        assert!(json.contains(r#""all_satisfied":true"#));
        assert!(json.contains(r#""valid":true"#));
    }
}
