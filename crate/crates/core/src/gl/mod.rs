//! Provability logic GL: Kripke models, model checking, proving, and the
//! closed fragment.
//!
//! A GL frame is a finite strict partial order that is transitive and
//! irreflexive; every such finite frame is conversely well-founded, which is
//! what GL's semantics requires. Models carry a valuation from worlds to the
//! variable indices true there.

mod closed;
mod oracle;
mod tableau;

pub use closed::{eval_closed_at_height, normal_form_closed, NormalForm};
pub use oracle::brute_force_gl;
pub use tableau::{prove_gl, ProofTrace};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::rc::Rc;

use serde::{Deserialize, Serialize, Serializer};

use crate::diag::Diagnostics;
use crate::formula::Formula;

/// Worlds are plain numeric identifiers.
pub type World = u32;

/// A Kripke model for GL. `r` is expected to be transitive and irreflexive;
/// [`validate_gl_frame`] checks exactly that and does not run implicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub worlds: BTreeSet<World>,
    #[serde(rename = "R", default)]
    pub r: BTreeSet<(World, World)>,
    #[serde(default)]
    pub val: BTreeMap<World, BTreeSet<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<World>,
}

impl KripkeModel {
    pub fn new(
        worlds: impl IntoIterator<Item = World>,
        r: impl IntoIterator<Item = (World, World)>,
        val: impl IntoIterator<Item = (World, BTreeSet<u32>)>,
        root: Option<World>,
    ) -> Self {
        KripkeModel {
            worlds: worlds.into_iter().collect(),
            r: r.into_iter().collect(),
            val: val.into_iter().collect(),
            root,
        }
    }

    /// R-successors of `x` in ascending order.
    pub fn successors(&self, x: World) -> impl Iterator<Item = World> + '_ {
        self.r
            .range((x, World::MIN)..=(x, World::MAX))
            .map(|&(_, y)| y)
    }

    /// Variables true at `x`; worlds absent from `val` count as all-false.
    pub fn vars_at(&self, x: World) -> BTreeSet<u32> {
        self.val.get(&x).cloned().unwrap_or_default()
    }

    /// Length of the longest R-chain leaving each world. Meaningful only on
    /// clean frames (the relation must be acyclic).
    pub fn heights(&self) -> BTreeMap<World, usize> {
        fn height(
            m: &KripkeModel,
            x: World,
            memo: &mut BTreeMap<World, usize>,
        ) -> usize {
            if let Some(&h) = memo.get(&x) {
                return h;
            }
            let h = m
                .successors(x)
                .map(|y| 1 + height(m, y, memo))
                .max()
                .unwrap_or(0);
            memo.insert(x, h);
            h
        }
        let mut memo = BTreeMap::new();
        for &x in &self.worlds {
            height(self, x, &mut memo);
        }
        memo
    }

    /// GraphViz rendering; R edges are solid, the root is double-bordered.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gl_model {\n");
        for &w in &self.worlds {
            let vars = self.vars_at(w);
            let label = if vars.is_empty() {
                w.to_string()
            } else {
                let names: Vec<String> = vars.iter().map(|v| format!("p{v}")).collect();
                format!("{w} {{{}}}", names.join(","))
            };
            let peripheries = if self.root == Some(w) { ", peripheries=2" } else { "" };
            let _ = writeln!(out, "  {w} [label=\"{label}\"{peripheries}];");
        }
        for &(x, y) in &self.r {
            let _ = writeln!(out, "  {x} -> {y};");
        }
        out.push_str("}\n");
        out
    }
}

/// Checks that the relation is a GL frame: transitive, irreflexive, and
/// structurally well-formed (edges, valuation keys, and the root all name
/// known worlds). Violations are reported, never raised.
pub fn validate_gl_frame(m: &KripkeModel) -> Diagnostics {
    let mut d = Diagnostics::default();
    for &(x, y) in &m.r {
        if !m.worlds.contains(&x) || !m.worlds.contains(&y) {
            d.push("edge outside worlds", [x, y]);
        }
    }
    for &x in m.val.keys() {
        if !m.worlds.contains(&x) {
            d.push("valuation outside worlds", [x]);
        }
    }
    if let Some(root) = m.root {
        if !m.worlds.contains(&root) {
            d.push("root outside worlds", [root]);
        }
    }
    for &(x, y) in &m.r {
        if x == y {
            d.push("irreflexivity", [x]);
        }
        for z in m.successors(y) {
            if !m.r.contains(&(x, z)) {
                d.push("transitivity", [x, y, z]);
            }
        }
    }
    d
}

/// Failure reasons for [`tree_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("frame is not clean: {0}")]
    BadFrame(String),
    #[error("expected exactly one root, found {0} minimal worlds")]
    RootCount(usize),
    #[error("declared root {declared} is not the tree root {actual}")]
    RootMismatch { declared: World, actual: World },
    #[error("world {0} has {1} immediate predecessors, a tree allows one")]
    MultipleParents(World, usize),
    #[error("relation is not the transitive closure of the tree edges (pair ({0},{1}))")]
    NotClosure(World, World),
}

/// The underlying tree of a tree-like model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub root: World,
    /// Immediate parent of every non-root world.
    pub parent: BTreeMap<World, World>,
    /// Immediate children, ascending, with an entry for every world.
    pub children: BTreeMap<World, Vec<World>>,
    /// Worlds with no R-successor.
    pub endpoints: BTreeSet<World>,
}

/// Checks that `m.r` is the transitive closure of a rooted tree's edge
/// relation and recovers that tree. The declared root, when present, must
/// match the structural one.
pub fn tree_decomposition(m: &KripkeModel) -> Result<TreeDecomposition, TreeError> {
    let frame = validate_gl_frame(m);
    if !frame.clean() {
        return Err(TreeError::BadFrame(frame.to_string()));
    }
    let has_pred: BTreeSet<World> = m.r.iter().map(|&(_, y)| y).collect();
    let roots: Vec<World> = m
        .worlds
        .iter()
        .copied()
        .filter(|w| !has_pred.contains(w))
        .collect();
    if roots.len() != 1 {
        return Err(TreeError::RootCount(roots.len()));
    }
    let root = roots[0];
    if let Some(declared) = m.root {
        if declared != root {
            return Err(TreeError::RootMismatch {
                declared,
                actual: root,
            });
        }
    }
    // The immediate (cover) relation: xRy with no z strictly between.
    let mut parent = BTreeMap::new();
    let mut children: BTreeMap<World, Vec<World>> =
        m.worlds.iter().map(|&w| (w, Vec::new())).collect();
    for &w in &m.worlds {
        if w == root {
            continue;
        }
        let covers: Vec<World> = m
            .r
            .iter()
            .filter(|&&(x, y)| y == w && !m.successors(x).any(|z| m.r.contains(&(z, w))))
            .map(|&(x, _)| x)
            .collect();
        if covers.len() != 1 {
            return Err(TreeError::MultipleParents(w, covers.len()));
        }
        parent.insert(w, covers[0]);
        children.get_mut(&covers[0]).expect("world entry").push(w);
    }
    // R must equal the transitive closure of the cover edges: every pair
    // (x, y) must be an ancestor pair of the recovered tree.
    for &(x, y) in &m.r {
        let mut cursor = y;
        loop {
            match parent.get(&cursor) {
                Some(&p) if p == x => break,
                Some(&p) => cursor = p,
                None => return Err(TreeError::NotClosure(x, y)),
            }
        }
    }
    let endpoints = m
        .worlds
        .iter()
        .copied()
        .filter(|&w| m.successors(w).next().is_none())
        .collect();
    Ok(TreeDecomposition {
        root,
        parent,
        children,
        endpoints,
    })
}

/// Errors raised by GL-side evaluation and proving.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlError {
    #[error("GL operations require |>-free formulas")]
    ContainsRhd,
    #[error("formula must be closed, found p{0}")]
    OpenFormula(u32),
    #[error("world {0} is not in the model")]
    UnknownWorld(World),
}

/// Memoizing model checker for one [`KripkeModel`]. Truth sets are computed
/// once per distinct subformula and shared across queries, which keeps large
/// formula sweeps over one model cheap.
pub struct GlChecker<'m> {
    m: &'m KripkeModel,
    order: Vec<World>,
    index: HashMap<World, usize>,
    succ: Vec<Vec<usize>>,
    memo: HashMap<Formula, Rc<Vec<bool>>>,
}

impl<'m> GlChecker<'m> {
    pub fn new(m: &'m KripkeModel) -> Self {
        let order: Vec<World> = m.worlds.iter().copied().collect();
        let index: HashMap<World, usize> =
            order.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let succ = order
            .iter()
            .map(|&w| {
                m.successors(w)
                    .filter_map(|y| index.get(&y).copied())
                    .collect()
            })
            .collect();
        GlChecker {
            m,
            order,
            index,
            succ,
            memo: HashMap::new(),
        }
    }

    pub fn holds(&mut self, x: World, f: &Formula) -> Result<bool, GlError> {
        let &i = self.index.get(&x).ok_or(GlError::UnknownWorld(x))?;
        Ok(self.truth(f)?[i])
    }

    /// The set of worlds satisfying `f`, in model order.
    pub fn truth(&mut self, f: &Formula) -> Result<Rc<Vec<bool>>, GlError> {
        if let Some(t) = self.memo.get(f) {
            return Ok(Rc::clone(t));
        }
        let n = self.order.len();
        let row: Vec<bool> = match f {
            Formula::Bot => vec![false; n],
            Formula::Top => vec![true; n],
            Formula::Var(v) => self
                .order
                .iter()
                .map(|&w| self.m.vars_at(w).contains(v))
                .collect(),
            Formula::Not(a) => self.truth(a)?.iter().map(|b| !b).collect(),
            Formula::And(a, b) => zip_with(&self.truth(a)?, &self.truth(b)?, |x, y| x && y),
            Formula::Or(a, b) => zip_with(&self.truth(a)?, &self.truth(b)?, |x, y| x || y),
            Formula::Imp(a, b) => zip_with(&self.truth(a)?, &self.truth(b)?, |x, y| !x || y),
            Formula::Iff(a, b) => zip_with(&self.truth(a)?, &self.truth(b)?, |x, y| x == y),
            Formula::Box(a) => {
                let ta = self.truth(a)?;
                (0..n).map(|i| self.succ[i].iter().all(|&j| ta[j])).collect()
            }
            Formula::Dia(a) => {
                let ta = self.truth(a)?;
                (0..n).map(|i| self.succ[i].iter().any(|&j| ta[j])).collect()
            }
            Formula::Rhd(_, _) => return Err(GlError::ContainsRhd),
        };
        let row = Rc::new(row);
        self.memo.insert(f.clone(), Rc::clone(&row));
        Ok(row)
    }
}

fn zip_with(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

/// Truth of `f` at world `x` of `m`. `<>` is existential over successors,
/// `[]` universal; `|>` is rejected. The frame itself is not validated here.
pub fn mc_gl(m: &KripkeModel, x: World, f: &Formula) -> Result<bool, GlError> {
    GlChecker::new(m).holds(x, f)
}

/// Verdict of a GL validity check: a proof witness or a countermodel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlVerdict {
    /// The formula is a theorem. `trace` records the closed tableau when the
    /// verdict comes from [`prove_gl`]; the exhaustive-search oracle cannot
    /// produce one.
    Valid { trace: Option<ProofTrace> },
    /// The formula fails at `root` of `countermodel`, a tree-like model.
    Invalid {
        countermodel: KripkeModel,
        root: World,
    },
}

impl GlVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, GlVerdict::Valid { .. })
    }

    pub fn countermodel(&self) -> Option<(&KripkeModel, World)> {
        match self {
            GlVerdict::Valid { .. } => None,
            GlVerdict::Invalid { countermodel, root } => Some((countermodel, *root)),
        }
    }

    pub fn trace(&self) -> Option<&ProofTrace> {
        match self {
            GlVerdict::Valid { trace } => trace.as_ref(),
            GlVerdict::Invalid { .. } => None,
        }
    }
}

impl Serialize for GlVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            GlVerdict::Valid { trace } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("valid", &true)?;
                map.serialize_entry("proof_trace", trace)?;
                map.end()
            }
            GlVerdict::Invalid { countermodel, root } => {
                let mut map = serializer.serialize_map(Some(3))?;
                map.serialize_entry("valid", &false)?;
                map.serialize_entry("countermodel", countermodel)?;
                map.serialize_entry("root", root)?;
                map.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var(0)
    }

    /// x0 -> x1 -> x2 as a transitive chain, p0 true at x1 only.
    fn chain3() -> KripkeModel {
        KripkeModel::new(
            [0, 1, 2],
            [(0, 1), (1, 2), (0, 2)],
            [(1, BTreeSet::from([0]))],
            Some(0),
        )
    }

    #[test]
    fn mc_gl_box_and_dia() {
        let m = chain3();
        // []p0 at 1: the only successor 2 lacks p0.
        assert_eq!(mc_gl(&m, 1, &p().boxed()).unwrap(), false);
        // []F at an endpoint holds vacuously.
        assert_eq!(mc_gl(&m, 2, &Formula::Bot.boxed()).unwrap(), true);
        // <>p0 at 0: successor 1 has p0.
        assert_eq!(mc_gl(&m, 0, &p().dia()).unwrap(), true);
        assert_eq!(mc_gl(&m, 2, &p().dia()).unwrap(), false);
    }

    #[test]
    fn mc_gl_rejects_rhd_and_unknown_worlds() {
        let m = chain3();
        assert_eq!(
            mc_gl(&m, 0, &Formula::Top.rhd(Formula::Top)),
            Err(GlError::ContainsRhd)
        );
        assert_eq!(mc_gl(&m, 9, &p()), Err(GlError::UnknownWorld(9)));
    }

    #[test]
    fn validate_accepts_chain_and_flags_defects() {
        assert!(validate_gl_frame(&chain3()).clean());

        let missing = KripkeModel::new([0, 1, 2], [(0, 1), (1, 2)], [], None);
        let d = validate_gl_frame(&missing);
        assert_eq!(d.violations.len(), 1);
        assert_eq!(d.violations[0].condition, "transitivity");
        assert_eq!(d.violations[0].witness, vec![0, 1, 2]);

        let reflexive = KripkeModel::new([0], [(0, 0)], [], None);
        let d = validate_gl_frame(&reflexive);
        assert!(d
            .violations
            .iter()
            .any(|v| v.condition == "irreflexivity" && v.witness == vec![0]));
    }

    #[test]
    fn heights_on_a_chain() {
        let m = chain3();
        let h = m.heights();
        assert_eq!(h[&0], 2);
        assert_eq!(h[&1], 1);
        assert_eq!(h[&2], 0);
    }

    #[test]
    fn tree_decomposition_recovers_chains_and_rejects_diamonds() {
        let t = tree_decomposition(&chain3()).unwrap();
        assert_eq!(t.root, 0);
        assert_eq!(t.parent[&2], 1);
        assert_eq!(t.endpoints, BTreeSet::from([2]));

        // x -> {a, b} -> c is a DAG but not a tree: c has two parents.
        let diamond = KripkeModel::new(
            [0, 1, 2, 3],
            [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
            [],
            None,
        );
        assert_eq!(
            tree_decomposition(&diamond),
            Err(TreeError::MultipleParents(3, 2))
        );

        // A transitive chain missing the closure pair is rejected earlier
        // as a dirty frame; a chain with an extra skip edge already IS the
        // closure, so decomposition succeeds.
        let not_closed = KripkeModel::new([0, 1, 2], [(0, 1), (1, 2)], [], None);
        assert!(matches!(
            tree_decomposition(&not_closed),
            Err(TreeError::BadFrame(_))
        ));
    }

    #[test]
    fn model_json_round_trips() {
        let m = chain3();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"worlds":[0,1,2],"R":[[0,1],[0,2],[1,2]],"val":{"1":[0]},"root":0}"#
        );
        let back: KripkeModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        // Missing val and root are tolerated on input.
        let sparse: KripkeModel =
            serde_json::from_str(r#"{"worlds":[0],"R":[]}"#).unwrap();
        assert_eq!(sparse.vars_at(0), BTreeSet::new());
        assert_eq!(sparse.root, None);
    }

    #[test]
    fn dot_export_is_deterministic() {
        let m = chain3();
        let dot = m.to_dot();
        assert!(dot.starts_with("digraph gl_model {"));
        assert!(dot.contains("1 [label=\"1 {p0}\"]"));
        assert!(dot.contains("0 -> 2;"));
        assert_eq!(dot, m.to_dot());
    }
}
