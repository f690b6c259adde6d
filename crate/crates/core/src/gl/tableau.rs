//! Tableau-based validity checking for GL.
//!
//! To decide a formula the prover tries to satisfy its negation. Boolean
//! rules saturate a node label (a set of formulas assumed true); once only
//! literals and modal formulas remain, every unrealized `~[]A` spawns a
//! child labeled with `~A`, `[]A`, and the parent's box context `{B, []B}`.
//! Carrying `[]A` into the child is the step that makes the search match
//! GL rather than K4: a branch can never try to realize `~[]A` again below,
//! so the box context grows strictly along every branch and the search
//! terminates. Labels are memoized, children are explored depth-first, and
//! diamonds are realized in subformula order of the input, so verdicts and
//! countermodels are fully deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::formula::Formula;
use crate::gl::{GlError, GlVerdict, KripkeModel, World};

/// Record of a closed tableau, witnessing validity. Linear (non-branching)
/// boolean steps are implicit; the trace keeps the decision structure:
/// clashes, boolean splits whose cases all close, and diamonds whose child
/// label closes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum ProofTrace {
    /// The label asserts `on` and its negation (`F` clashes by itself).
    Clash { on: Formula },
    /// Splitting on `principal` closes every case.
    Split {
        principal: Formula,
        cases: Vec<ProofTrace>,
    },
    /// Realizing the diamond `principal` (a `~[]A` obligation) fails.
    Diamond {
        principal: Formula,
        child: Box<ProofTrace>,
    },
}

impl ProofTrace {
    fn fmt_indented(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        let pad = "  ".repeat(indent);
        match self {
            ProofTrace::Clash { on } => writeln!(f, "{pad}clash on {on}"),
            ProofTrace::Split { principal, cases } => {
                writeln!(f, "{pad}split on {principal}")?;
                for case in cases {
                    case.fmt_indented(f, indent + 1)?;
                }
                Ok(())
            }
            ProofTrace::Diamond { principal, child } => {
                writeln!(f, "{pad}diamond {principal} is unrealizable")?;
                child.fmt_indented(f, indent + 1)
            }
        }
    }
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_indented(f, 0)
    }
}

/// Negation with double negations collapsed on the fly.
fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Not(a) => (**a).clone(),
        other => other.clone().not(),
    }
}

/// Witness tree for a satisfiable label. Subtrees are shared (`Rc`) across
/// memoized labels and unfolded into distinct worlds when materialized.
struct Witness {
    vars: BTreeSet<u32>,
    children: Vec<Rc<Witness>>,
}

type Label = BTreeSet<Formula>;

enum Outcome {
    Sat(Rc<Witness>),
    Closed(Rc<ProofTrace>),
}

impl Clone for Outcome {
    fn clone(&self) -> Self {
        match self {
            Outcome::Sat(w) => Outcome::Sat(Rc::clone(w)),
            Outcome::Closed(t) => Outcome::Closed(Rc::clone(t)),
        }
    }
}

struct Search {
    memo: HashMap<Label, Outcome>,
    /// First-occurrence preorder rank of each subformula of the input;
    /// diamonds are realized in this order.
    rank: HashMap<Formula, usize>,
}

impl Search {
    fn diamond_rank(&self, f: &Formula) -> (usize, Formula) {
        let r = self.rank.get(f).copied().unwrap_or(usize::MAX);
        (r, f.clone())
    }

    fn sat(&mut self, label: Label) -> Outcome {
        if let Some(hit) = self.memo.get(&label) {
            return hit.clone();
        }
        let out = self.sat_uncached(&label);
        self.memo.insert(label, out.clone());
        out
    }

    fn sat_uncached(&mut self, label: &Label) -> Outcome {
        // Clashes first: F, ~T, or any formula together with its negation.
        if label.contains(&Formula::Bot) {
            return Outcome::Closed(Rc::new(ProofTrace::Clash { on: Formula::Bot }));
        }
        for f in label {
            if let Formula::Not(inner) = f {
                if label.contains(inner) || **inner == Formula::Top {
                    return Outcome::Closed(Rc::new(ProofTrace::Clash {
                        on: (**inner).clone(),
                    }));
                }
            }
        }
        // Saturate the first decomposable formula, in label order.
        for f in label {
            let mut base = label.clone();
            base.remove(f);
            match f {
                Formula::Top => return self.with(base, []),
                Formula::And(a, b) => {
                    return self.with(base, [(**a).clone(), (**b).clone()])
                }
                Formula::Or(a, b) => {
                    return self.split(
                        f,
                        &base,
                        [vec![(**a).clone()], vec![(**b).clone()]],
                    )
                }
                Formula::Imp(a, b) => {
                    return self.split(f, &base, [vec![negate(a)], vec![(**b).clone()]])
                }
                Formula::Iff(a, b) => {
                    return self.split(
                        f,
                        &base,
                        [
                            vec![(**a).clone(), (**b).clone()],
                            vec![negate(a), negate(b)],
                        ],
                    )
                }
                Formula::Not(inner) => match &**inner {
                    Formula::Bot => return self.with(base, []),
                    Formula::Not(a) => return self.with(base, [(**a).clone()]),
                    Formula::And(a, b) => {
                        return self.split(f, &base, [vec![negate(a)], vec![negate(b)]])
                    }
                    Formula::Or(a, b) => {
                        return self.with(base, [negate(a), negate(b)])
                    }
                    Formula::Imp(a, b) => {
                        return self.with(base, [(**a).clone(), negate(b)])
                    }
                    Formula::Iff(a, b) => {
                        return self.split(
                            f,
                            &base,
                            [
                                vec![(**a).clone(), negate(b)],
                                vec![negate(a), (**b).clone()],
                            ],
                        )
                    }
                    // Literals and modal atoms wait for the modal stage.
                    Formula::Var(_) | Formula::Box(_) => {}
                    Formula::Top => unreachable!("~T clashes above"),
                    Formula::Dia(_) | Formula::Rhd(_, _) => {
                        unreachable!("diamonds are pre-eliminated and |> pre-rejected")
                    }
                },
                Formula::Var(_) | Formula::Box(_) => {}
                Formula::Bot => unreachable!("F clashes above"),
                Formula::Dia(_) | Formula::Rhd(_, _) => {
                    unreachable!("diamonds are pre-eliminated and |> pre-rejected")
                }
            }
        }
        self.modal_stage(label)
    }

    fn with(&mut self, mut base: Label, add: impl IntoIterator<Item = Formula>) -> Outcome {
        base.extend(add);
        self.sat(base)
    }

    fn split<const N: usize>(
        &mut self,
        principal: &Formula,
        base: &Label,
        cases: [Vec<Formula>; N],
    ) -> Outcome {
        let mut closed = Vec::new();
        for case in cases {
            let mut next = base.clone();
            next.extend(case);
            match self.sat(next) {
                Outcome::Sat(w) => return Outcome::Sat(w),
                Outcome::Closed(t) => closed.push((*t).clone()),
            }
        }
        Outcome::Closed(Rc::new(ProofTrace::Split {
            principal: principal.clone(),
            cases: closed,
        }))
    }

    /// All formulas are literals, `[]A`, or `~[]A`. Realize each diamond
    /// with Löb's rule; the label is satisfiable iff every diamond is.
    fn modal_stage(&mut self, label: &Label) -> Outcome {
        let boxes: Vec<Formula> = label
            .iter()
            .filter_map(|f| match f {
                Formula::Box(a) => Some((**a).clone()),
                _ => None,
            })
            .collect();
        let mut diamonds: Vec<(&Formula, &Formula)> = label
            .iter()
            .filter_map(|f| match f {
                Formula::Not(inner) => match &**inner {
                    Formula::Box(a) => Some((f, &**a)),
                    _ => None,
                },
                _ => None,
            })
            .collect();
        diamonds.sort_by_key(|(principal, _)| self.diamond_rank(principal));

        let mut children = Vec::new();
        for (principal, a) in diamonds {
            let mut child: Label = BTreeSet::new();
            child.insert(negate(a));
            child.insert(a.clone().boxed());
            for b in &boxes {
                child.insert(b.clone());
                child.insert(b.clone().boxed());
            }
            match self.sat(child) {
                Outcome::Sat(w) => children.push(w),
                Outcome::Closed(t) => {
                    return Outcome::Closed(Rc::new(ProofTrace::Diamond {
                        principal: principal.clone(),
                        child: Box::new((*t).clone()),
                    }))
                }
            }
        }
        let vars = label
            .iter()
            .filter_map(|f| match f {
                Formula::Var(i) => Some(*i),
                _ => None,
            })
            .collect();
        Outcome::Sat(Rc::new(Witness { vars, children }))
    }
}

/// Unfolds a witness tree into a tree-like Kripke model with preorder ids
/// and a transitively closed relation.
fn materialize(witness: &Witness) -> KripkeModel {
    fn walk(
        node: &Witness,
        next: &mut World,
        ancestors: &mut Vec<World>,
        m: &mut KripkeModel,
    ) {
        let id = *next;
        *next += 1;
        m.worlds.insert(id);
        if !node.vars.is_empty() {
            m.val.insert(id, node.vars.clone());
        }
        for &a in ancestors.iter() {
            m.r.insert((a, id));
        }
        ancestors.push(id);
        for child in &node.children {
            walk(child, next, ancestors, m);
        }
        ancestors.pop();
    }
    let mut m = KripkeModel::default();
    let mut next = 0;
    walk(witness, &mut next, &mut Vec::new(), &mut m);
    m.root = Some(0);
    m
}

/// Replaces `<>A` by `~[]~A` so the search only handles one diamond shape.
fn eliminate_dia(f: &Formula) -> Formula {
    match f {
        Formula::Bot | Formula::Top | Formula::Var(_) => f.clone(),
        Formula::Not(a) => eliminate_dia(a).not(),
        Formula::And(a, b) => eliminate_dia(a).and(eliminate_dia(b)),
        Formula::Or(a, b) => eliminate_dia(a).or(eliminate_dia(b)),
        Formula::Imp(a, b) => eliminate_dia(a).imp(eliminate_dia(b)),
        Formula::Iff(a, b) => eliminate_dia(a).iff(eliminate_dia(b)),
        Formula::Box(a) => eliminate_dia(a).boxed(),
        Formula::Dia(a) => eliminate_dia(a).not().boxed().not(),
        Formula::Rhd(_, _) => unreachable!("|> is rejected before elimination"),
    }
}

/// Decides GL validity of a `|>`-free formula. Valid formulas come with a
/// closed-tableau trace; invalid ones with a tree-like countermodel whose
/// root refutes the formula and whose depth is at most the number of
/// distinct modal subformulas (each step down materializes a diamond and
/// commits its box for good, so branches cannot outlast the supply).
pub fn prove_gl(f: &Formula) -> Result<GlVerdict, GlError> {
    if f.contains_rhd() {
        return Err(GlError::ContainsRhd);
    }
    let goal = eliminate_dia(f);
    let rank: HashMap<Formula, usize> = goal
        .subformulas()
        .into_iter()
        .enumerate()
        // Rank diamonds by where []A occurs in the input, not ~[]A: labels
        // hold the negation.
        .map(|(i, sub)| (negate(&sub), i))
        .collect();
    let mut search = Search {
        memo: HashMap::new(),
        rank,
    };
    let start: Label = BTreeSet::from([negate(&goal)]);
    match search.sat(start) {
        Outcome::Closed(trace) => Ok(GlVerdict::Valid {
            trace: Some((*trace).clone()),
        }),
        Outcome::Sat(witness) => Ok(GlVerdict::Invalid {
            countermodel: materialize(&witness),
            root: 0,
        }),
    }
}

/// Rank map used by tests to confirm deterministic diamond order.
#[allow(dead_code)]
fn subformula_ranks(f: &Formula) -> BTreeMap<Formula, usize> {
    f.subformulas()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect()
}
