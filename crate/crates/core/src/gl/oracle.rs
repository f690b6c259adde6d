//! Exhaustive semantic validity check for GL over bounded tree models.
//!
//! This is an oracle deliberately independent of the tableau prover: it
//! decides validity by enumerating tree models within a depth and branching
//! bound, not by proof search. Enumerating trees one by one is hopeless
//! (their number grows hyper-exponentially), but a subtree influences the
//! worlds above it only through its *modal profile*: one bit per modal
//! subformula recording, for a box `[]a`, whether every world in the subtree
//! satisfies `a`, and for a diamond `<>a`, whether some world does. Profiles
//! of sibling subtrees combine by AND-ing box bits and OR-ing diamond bits,
//! so the search enumerates reachable profiles level by level — at most
//! `2^m` of them for `m` modal subformulas — together with one witnessing
//! tree per profile. Every tree within the bounds maps to a reachable
//! profile and every reachable profile is witnessed by a recorded tree, so
//! the enumeration is exact: the formula is valid within the bounds iff no
//! reachable world's truth bitmask refutes it, and a refuting world is
//! materialized into a genuine countermodel.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::Formula;
use crate::gl::{GlError, GlVerdict, KripkeModel, World};

/// A type is the truth bitmask of all subformulas at one world.
type Ty = u64;
/// One bit per modal subformula; see the module header for the reading.
type Profile = u64;

/// How a reachable profile was first produced: the valuation of the subtree
/// root and the profiles of its children (duplicates never change truth, so
/// children are distinct).
struct Provenance {
    vars: BTreeSet<u32>,
    children: Vec<Profile>,
}

/// Indexed subformulas (children before parents) plus the modal bookkeeping
/// needed to evaluate boxes and diamonds against a profile.
struct Space {
    subs: Vec<Formula>,
    index: BTreeMap<Formula, usize>,
    vars: Vec<u32>,
    /// For each modal subformula: (its index in `subs`, its argument's index).
    modals: Vec<(usize, usize)>,
    /// Maps a subformula index to its position in `modals`, if modal.
    modal_pos: Vec<Option<usize>>,
    /// Profile bits belonging to box subformulas; the complement within the
    /// used bits belongs to diamonds.
    box_mask: Profile,
}

impl Space {
    fn new(f: &Formula) -> Result<Self, GlError> {
        if f.contains_rhd() {
            return Err(GlError::ContainsRhd);
        }
        let mut subs = f.subformulas();
        subs.sort_by_key(|s| s.size());
        let index: BTreeMap<Formula, usize> = subs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let vars = f.variables().into_iter().collect();
        assert!(
            subs.len() <= Ty::BITS as usize,
            "oracle supports up to 64 distinct subformulas"
        );
        let mut modals = Vec::new();
        let mut modal_pos = vec![None; subs.len()];
        let mut box_mask: Profile = 0;
        for (i, sub) in subs.iter().enumerate() {
            let arg = match sub {
                Formula::Box(a) => {
                    box_mask |= 1 << modals.len();
                    a
                }
                Formula::Dia(a) => a,
                _ => continue,
            };
            modal_pos[i] = Some(modals.len());
            modals.push((i, index[arg.as_ref()]));
        }
        Ok(Space {
            subs,
            index,
            vars,
            modals,
            modal_pos,
            box_mask,
        })
    }

    fn bit(&self, ty: Ty, f: &Formula) -> bool {
        ty >> self.index[f] & 1 == 1
    }

    /// Profile of the empty set of worlds: boxes hold vacuously, diamonds
    /// fail.
    fn empty_profile(&self) -> Profile {
        self.box_mask
    }

    /// Profile of the singleton `{ty}`: each modal's bit is its argument's
    /// bit in `ty`.
    fn unit_profile(&self, ty: Ty) -> Profile {
        let mut p: Profile = 0;
        for (k, &(_, arg)) in self.modals.iter().enumerate() {
            if ty >> arg & 1 == 1 {
                p |= 1 << k;
            }
        }
        p
    }

    /// Profile of a union of two sets from their profiles: "all satisfy"
    /// bits conjoin, "some satisfies" bits disjoin.
    fn meet(&self, p: Profile, q: Profile) -> Profile {
        (p & q & self.box_mask) | ((p | q) & !self.box_mask)
    }

    /// Truth bitmask of every subformula at a world with valuation `vars`
    /// whose strict cone has modal profile `cone`.
    fn eval(&self, vars: &BTreeSet<u32>, cone: Profile) -> Ty {
        let mut ty: Ty = 0;
        for (i, sub) in self.subs.iter().enumerate() {
            let holds = match sub {
                Formula::Bot => false,
                Formula::Top => true,
                Formula::Var(v) => vars.contains(v),
                Formula::Not(a) => !self.bit(ty, a),
                Formula::And(a, b) => self.bit(ty, a) && self.bit(ty, b),
                Formula::Or(a, b) => self.bit(ty, a) || self.bit(ty, b),
                Formula::Imp(a, b) => !self.bit(ty, a) || self.bit(ty, b),
                Formula::Iff(a, b) => self.bit(ty, a) == self.bit(ty, b),
                Formula::Box(_) | Formula::Dia(_) => {
                    cone >> self.modal_pos[i].expect("modal subformula is indexed") & 1 == 1
                }
                Formula::Rhd(_, _) => unreachable!("rejected in Space::new"),
            };
            if holds {
                ty |= 1 << i;
            }
        }
        ty
    }
}

fn valuations(vars: &[u32]) -> Vec<BTreeSet<u32>> {
    let mut out = Vec::with_capacity(1 << vars.len());
    for mask in 0u32..(1 << vars.len()) {
        out.push(
            vars.iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    out
}

/// Builds the tree whose root has valuation `vars` and children recorded
/// under `children`, as a Kripke model (preorder ids, transitively closed
/// relation, root 0).
fn materialize(
    vars: &BTreeSet<u32>,
    children: &[Profile],
    provenance: &BTreeMap<Profile, Provenance>,
) -> KripkeModel {
    fn walk(
        vars: &BTreeSet<u32>,
        children: &[Profile],
        provenance: &BTreeMap<Profile, Provenance>,
        next: &mut World,
        ancestors: &mut Vec<World>,
        m: &mut KripkeModel,
    ) {
        let id = *next;
        *next += 1;
        m.worlds.insert(id);
        if !vars.is_empty() {
            m.val.insert(id, vars.clone());
        }
        for &a in ancestors.iter() {
            m.r.insert((a, id));
        }
        ancestors.push(id);
        for child in children {
            let record = &provenance[child];
            walk(&record.vars, &record.children, provenance, next, ancestors, m);
        }
        ancestors.pop();
    }
    let mut m = KripkeModel::default();
    let mut next = 0;
    walk(vars, children, provenance, &mut next, &mut Vec::new(), &mut m);
    m.root = Some(0);
    m
}

/// Decides GL validity of `f` over all tree models of depth at most
/// `max_depth` and branching at most `max_branching`, with valuations
/// ranging over the variables of `f`.
///
/// The bounds are complete when both are at least the number of distinct
/// modal (box or diamond) subformulas of `f`; under such bounds the verdict
/// agrees with full GL validity. Modal depth is *not* enough for the depth
/// bound: a refuted box can force a world that must not be an endpoint, so a
/// minimal countermodel can be strictly deeper than the deepest nesting.
/// Along any chain of a minimal countermodel each step settles a new modal
/// subformula, and no world needs more than one successor per modal it
/// refutes or witnesses, which is why the modal-subformula count bounds
/// both dimensions.
pub fn brute_force_gl(
    f: &Formula,
    max_depth: usize,
    max_branching: usize,
) -> Result<GlVerdict, GlError> {
    let space = Space::new(f)?;
    let vals = valuations(&space.vars);

    let mut provenance: BTreeMap<Profile, Provenance> = BTreeMap::new();
    // Leaves: empty cone, every valuation.
    for vars in &vals {
        let ty = space.eval(vars, space.empty_profile());
        if !space.bit(ty, f) {
            return Ok(GlVerdict::Invalid {
                countermodel: materialize(vars, &[], &provenance),
                root: 0,
            });
        }
        provenance
            .entry(space.unit_profile(ty))
            .or_insert(Provenance {
                vars: vars.clone(),
                children: Vec::new(),
            });
    }

    for _level in 0..max_depth {
        let known: Vec<Profile> = provenance.keys().copied().collect();
        // Cones reachable as unions of 1..=max_branching known subtrees,
        // each with a witnessing list of children; deduplicating on the
        // profile keeps this at most 2^modals wide.
        let mut cones: BTreeMap<Profile, Vec<Profile>> = BTreeMap::new();
        let mut frontier: Vec<(Profile, Vec<Profile>)> =
            vec![(space.empty_profile(), Vec::new())];
        for _pick in 0..max_branching {
            let mut next_frontier = Vec::new();
            for (cone, children) in &frontier {
                for &rp in &known {
                    let grown = space.meet(*cone, rp);
                    if grown == *cone || cones.contains_key(&grown) {
                        continue;
                    }
                    let mut grown_children = children.clone();
                    grown_children.push(rp);
                    cones.insert(grown, grown_children.clone());
                    next_frontier.push((grown, grown_children));
                }
            }
            if next_frontier.is_empty() {
                break;
            }
            frontier = next_frontier;
        }

        let mut grew = false;
        for (&cone, children) in &cones {
            for vars in &vals {
                let ty = space.eval(vars, cone);
                if !space.bit(ty, f) {
                    return Ok(GlVerdict::Invalid {
                        countermodel: materialize(vars, children, &provenance),
                        root: 0,
                    });
                }
                let rp = space.meet(cone, space.unit_profile(ty));
                if !provenance.contains_key(&rp) {
                    provenance.insert(
                        rp,
                        Provenance {
                            vars: vars.clone(),
                            children: children.clone(),
                        },
                    );
                    grew = true;
                }
            }
        }
        if !grew {
            break; // fixpoint: deeper levels cannot reach new profiles
        }
    }

    Ok(GlVerdict::Valid { trace: None })
}
