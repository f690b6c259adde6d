//! Veltman semantics for interpretability logic IL.
//!
//! A Veltman model extends a GL frame with a family of binary relations
//! `S_x`, one per world, interpreting `|>`: `x` satisfies `A |> B` when
//! every R-successor of `x` satisfying `A` can be S_x-reached from some
//! world... precisely, can itself S_x-step to a world satisfying `B`.
//! Frame conditions: R is transitive and irreflexive; each `S_x` lives on
//! the R-successors of `x`, is reflexive and transitive there, and contains
//! every R-step made above `x`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diag::Diagnostics;
use crate::formula::Formula;
use crate::gl::{KripkeModel, World};

/// A Veltman model. `s` maps each world `x` to the pair set of `S_x`;
/// worlds absent from `s` have an empty relation. [`validate_veltman`]
/// checks the frame conditions and does not run implicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeltmanModel {
    pub worlds: BTreeSet<World>,
    #[serde(rename = "R", default)]
    pub r: BTreeSet<(World, World)>,
    #[serde(rename = "S", default)]
    pub s: BTreeMap<World, BTreeSet<(World, World)>>,
    #[serde(default)]
    pub val: BTreeMap<World, BTreeSet<u32>>,
}

impl VeltmanModel {
    pub fn new(
        worlds: impl IntoIterator<Item = World>,
        r: impl IntoIterator<Item = (World, World)>,
        s: impl IntoIterator<Item = (World, BTreeSet<(World, World)>)>,
        val: impl IntoIterator<Item = (World, BTreeSet<u32>)>,
    ) -> Self {
        VeltmanModel {
            worlds: worlds.into_iter().collect(),
            r: r.into_iter().collect(),
            s: s.into_iter().collect(),
            val: val.into_iter().collect(),
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

    /// The pairs of `S_x` in ascending order.
    pub fn s_at(&self, x: World) -> impl Iterator<Item = (World, World)> + '_ {
        self.s.get(&x).into_iter().flatten().copied()
    }

    /// Forgets the `S` family, leaving the underlying GL model.
    pub fn reduct(&self) -> KripkeModel {
        KripkeModel {
            worlds: self.worlds.clone(),
            r: self.r.clone(),
            val: self.val.clone(),
            root: None,
        }
    }

    /// GraphViz rendering; R edges are solid, S_x pairs dashed and labelled
    /// with their owner `x`. Reflexive S pairs are mandated by the frame
    /// conditions and omitted as noise.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph veltman_model {\n");
        for &w in &self.worlds {
            let vars = self.vars_at(w);
            let label = if vars.is_empty() {
                w.to_string()
            } else {
                let names: Vec<String> = vars.iter().map(|v| format!("p{v}")).collect();
                format!("{w} {{{}}}", names.join(","))
            };
            let _ = writeln!(out, "  {w} [label=\"{label}\"];");
        }
        for &(x, y) in &self.r {
            let _ = writeln!(out, "  {x} -> {y};");
        }
        for (&x, pairs) in &self.s {
            for &(y, z) in pairs {
                if y != z {
                    let _ = writeln!(out, "  {y} -> {z} [style=dashed, label=\"S{x}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Transitive closure of a pair set, in place of the input.
pub(crate) fn transitive_close(r: &BTreeSet<(World, World)>) -> BTreeSet<(World, World)> {
    let mut closed = r.clone();
    loop {
        let mut fresh = Vec::new();
        for &(x, y) in &closed {
            for &(_, z) in closed.range((y, World::MIN)..=(y, World::MAX)) {
                if !closed.contains(&(x, z)) {
                    fresh.push((x, z));
                }
            }
        }
        if fresh.is_empty() {
            return closed;
        }
        closed.extend(fresh);
    }
}

/// Checks every Veltman frame condition, reporting violations with their
/// witnessing worlds rather than raising.
pub fn validate_veltman(m: &VeltmanModel) -> Diagnostics {
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
    for (&x, pairs) in &m.s {
        if !m.worlds.contains(&x) {
            d.push("s-family outside worlds", [x]);
        }
        for &(y, z) in pairs {
            if !m.worlds.contains(&y) || !m.worlds.contains(&z) {
                d.push("s-pair outside worlds", [x, y, z]);
            }
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
            // Condition 2: an R-step above x is an S_x step.
            if !m.s.get(&x).is_some_and(|s| s.contains(&(y, z))) {
                d.push("condition 2", [x, y, z]);
            }
        }
        // S_x is reflexive on the successors of x.
        if !m.s.get(&x).is_some_and(|s| s.contains(&(y, y))) {
            d.push("s-reflexivity", [x, y]);
        }
    }
    for (&x, pairs) in &m.s {
        for &(y, z) in pairs {
            // Condition 1: S_x relates only R-successors of x.
            if !m.r.contains(&(x, y)) || !m.r.contains(&(x, z)) {
                d.push("condition 1", [x, y, z]);
            }
            for &(_, w) in pairs.range((z, World::MIN)..=(z, World::MAX)) {
                if !pairs.contains(&(y, w)) {
                    d.push("s-transitivity", [x, y, z, w]);
                }
            }
        }
    }
    d
}

/// Errors raised by IL-side evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IlError {
    #[error("world {0} is not in the model")]
    UnknownWorld(World),
}

/// Memoizing model checker for one [`VeltmanModel`]; the IL counterpart of
/// [`crate::gl::GlChecker`], sharing truth sets across queries.
pub struct IlChecker<'m> {
    m: &'m VeltmanModel,
    order: Vec<World>,
    index: HashMap<World, usize>,
    succ: Vec<Vec<usize>>,
    /// `s_map[x][y]` = S_x-images of y, as indices.
    s_map: Vec<HashMap<usize, Vec<usize>>>,
    memo: HashMap<Formula, Rc<Vec<bool>>>,
}

impl<'m> IlChecker<'m> {
    pub fn new(m: &'m VeltmanModel) -> Self {
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
        let s_map = order
            .iter()
            .map(|&w| {
                let mut images: HashMap<usize, Vec<usize>> = HashMap::new();
                for (y, z) in m.s_at(w) {
                    if let (Some(&j), Some(&k)) = (index.get(&y), index.get(&z)) {
                        images.entry(j).or_default().push(k);
                    }
                }
                images
            })
            .collect();
        IlChecker {
            m,
            order,
            index,
            succ,
            s_map,
            memo: HashMap::new(),
        }
    }

    pub fn holds(&mut self, x: World, f: &Formula) -> Result<bool, IlError> {
        let &i = self.index.get(&x).ok_or(IlError::UnknownWorld(x))?;
        Ok(self.truth(f)[i])
    }

    /// The set of worlds satisfying `f`, in model order.
    pub fn truth(&mut self, f: &Formula) -> Rc<Vec<bool>> {
        if let Some(t) = self.memo.get(f) {
            return Rc::clone(t);
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
            Formula::Not(a) => self.truth(a).iter().map(|b| !b).collect(),
            Formula::And(a, b) => zip_with(&self.truth(a), &self.truth(b), |x, y| x && y),
            Formula::Or(a, b) => zip_with(&self.truth(a), &self.truth(b), |x, y| x || y),
            Formula::Imp(a, b) => zip_with(&self.truth(a), &self.truth(b), |x, y| !x || y),
            Formula::Iff(a, b) => zip_with(&self.truth(a), &self.truth(b), |x, y| x == y),
            Formula::Box(a) => {
                let ta = self.truth(a);
                (0..n).map(|i| self.succ[i].iter().all(|&j| ta[j])).collect()
            }
            Formula::Dia(a) => {
                let ta = self.truth(a);
                (0..n).map(|i| self.succ[i].iter().any(|&j| ta[j])).collect()
            }
            Formula::Rhd(a, b) => {
                let ta = self.truth(a);
                let tb = self.truth(b);
                (0..n)
                    .map(|i| {
                        self.succ[i].iter().all(|&j| {
                            !ta[j]
                                || self.s_map[i]
                                    .get(&j)
                                    .is_some_and(|zs| zs.iter().any(|&k| tb[k]))
                        })
                    })
                    .collect()
            }
        };
        let row = Rc::new(row);
        self.memo.insert(f.clone(), Rc::clone(&row));
        row
    }
}

fn zip_with(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

/// Truth of `f` at world `x` of `m`. `A |> B` holds when every R-successor
/// satisfying `A` has an S_x step to one satisfying `B`.
pub fn mc_il(m: &VeltmanModel, x: World, f: &Formula) -> Result<bool, IlError> {
    IlChecker::new(m).holds(x, f)
}

/// Axiom schemes of GL and IL, plus the non-theorem `F` for violation hunts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxiomScheme {
    /// `[](A -> B) -> ([]A -> []B)`
    Gl1,
    /// `[]([]A -> A) -> []A`
    Gl2,
    /// `[](A -> B) -> (A |> B)`
    J1,
    /// `(A |> B) & (B |> C) -> (A |> C)`
    J2,
    /// `(A |> C) & (B |> C) -> (A | B) |> C`
    J3,
    /// `(A |> B) -> (<>A -> <>B)`
    J4,
    /// `<>A |> A`
    J5,
    /// `[]A <-> (~A |> F)`, definability of `[]` from `|>`
    BoxRhd,
    /// `<>A -> ~(A |> <>A)` — famously *not* valid; sweeps locate failures.
    F,
}

impl AxiomScheme {
    pub const ALL: [AxiomScheme; 9] = [
        AxiomScheme::Gl1,
        AxiomScheme::Gl2,
        AxiomScheme::J1,
        AxiomScheme::J2,
        AxiomScheme::J3,
        AxiomScheme::J4,
        AxiomScheme::J5,
        AxiomScheme::BoxRhd,
        AxiomScheme::F,
    ];

    /// The scheme at the instance `(a, b, c)`; schemes with fewer holes
    /// ignore the surplus arguments.
    pub fn instantiate(&self, a: &Formula, b: &Formula, c: &Formula) -> Formula {
        let (a, b, c) = (a.clone(), b.clone(), c.clone());
        match self {
            AxiomScheme::Gl1 => a
                .clone()
                .imp(b.clone())
                .boxed()
                .imp(a.boxed().imp(b.boxed())),
            AxiomScheme::Gl2 => a.clone().boxed().imp(a.clone()).boxed().imp(a.boxed()),
            AxiomScheme::J1 => a.clone().imp(b.clone()).boxed().imp(a.rhd(b)),
            AxiomScheme::J2 => a
                .clone()
                .rhd(b.clone())
                .and(b.rhd(c.clone()))
                .imp(a.rhd(c)),
            AxiomScheme::J3 => a
                .clone()
                .rhd(c.clone())
                .and(b.clone().rhd(c.clone()))
                .imp(a.or(b).rhd(c)),
            AxiomScheme::J4 => a.clone().rhd(b.clone()).imp(a.dia().imp(b.dia())),
            AxiomScheme::J5 => a.clone().dia().rhd(a),
            AxiomScheme::BoxRhd => a.clone().boxed().iff(a.not().rhd(Formula::Bot)),
            AxiomScheme::F => a.clone().dia().imp(a.clone().rhd(a.dia()).not()),
        }
    }
}

impl std::fmt::Display for AxiomScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            AxiomScheme::Gl1 => "GL1",
            AxiomScheme::Gl2 => "GL2",
            AxiomScheme::J1 => "J1",
            AxiomScheme::J2 => "J2",
            AxiomScheme::J3 => "J3",
            AxiomScheme::J4 => "J4",
            AxiomScheme::J5 => "J5",
            AxiomScheme::BoxRhd => "BoxRhd",
            AxiomScheme::F => "F",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown axiom scheme '{0}', expected GL1, GL2, J1..J5, BoxRhd, or F")]
pub struct UnknownScheme(pub String);

impl std::str::FromStr for AxiomScheme {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomScheme::ALL
            .into_iter()
            .find(|scheme| scheme.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownScheme(s.to_string()))
    }
}

/// Evaluates a scheme at every given instance and world of `m`, reporting
/// each failure as a violation whose condition names the scheme and the
/// failing instance.
pub fn check_axiom_sweep(
    m: &VeltmanModel,
    scheme: AxiomScheme,
    instances: &[(Formula, Formula, Formula)],
) -> Diagnostics {
    let mut checker = IlChecker::new(m);
    let mut d = Diagnostics::default();
    for (a, b, c) in instances {
        let f = scheme.instantiate(a, b, c);
        let truth = checker.truth(&f);
        for (i, &w) in checker.order.iter().enumerate() {
            if !truth[i] {
                d.push(format!("{scheme}: {f}"), [w]);
            }
        }
    }
    d
}

/// Generates a pseudorandom Veltman model satisfying every frame condition
/// by construction: R is a transitively closed sub-order of a shuffled total
/// order, and each S_x seeds the mandatory pairs (reflexivity on successors
/// and all R-steps above x) plus random successor pairs, then closes
/// transitively. Valuations draw p0 and p1 per world. Deterministic in the
/// seed.
pub fn random_veltman(n_worlds: u32, edge_density: f64, seed: u64) -> VeltmanModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = edge_density.clamp(0.0, 1.0);
    let mut order: Vec<World> = (0..n_worlds).collect();
    order.shuffle(&mut rng);

    let mut r = BTreeSet::new();
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if rng.random_bool(density) {
                r.insert((order[i], order[j]));
            }
        }
    }
    let r = transitive_close(&r);

    let mut m = VeltmanModel {
        worlds: (0..n_worlds).collect(),
        r,
        s: BTreeMap::new(),
        val: BTreeMap::new(),
    };
    for x in 0..n_worlds {
        let succ: Vec<World> = m.successors(x).collect();
        if succ.is_empty() {
            continue;
        }
        let mut pairs = BTreeSet::new();
        for &y in &succ {
            pairs.insert((y, y));
            for z in m.successors(y) {
                pairs.insert((y, z));
            }
        }
        for &y in &succ {
            for &z in &succ {
                if y != z && rng.random_bool(density) {
                    pairs.insert((y, z));
                }
            }
        }
        m.s.insert(x, transitive_close(&pairs));
    }
    for w in 0..n_worlds {
        let vars: BTreeSet<u32> = (0..2).filter(|_| rng.random_bool(0.5)).collect();
        if !vars.is_empty() {
            m.val.insert(w, vars);
        }
    }
    m
}
