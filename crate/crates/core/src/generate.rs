//! Enumeration and random generation of formulas and models, for sweeps.
//!
//! The exhaustive enumerators are deterministic and canonical: formula pools
//! list every formula of a fragment up to a size, and tree pools list every
//! rooted tree shape up to a world count exactly once. Random generators
//! take a caller-provided RNG so suites can freeze seeds.

use std::collections::BTreeSet;

use rand::Rng;

use crate::formula::Formula;
use crate::gl::{KripkeModel, World};

/// Every formula over `F`, `p0`, `->`, and `[]` with at most `max_size`
/// nodes, smaller sizes first; deterministic order throughout.
pub fn core_formulas_up_to(max_size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = vec![Formula::Bot, Formula::var(0)];
    }
    for size in 2..=max_size {
        let mut level = Vec::new();
        for f in &by_size[size - 1] {
            level.push(f.clone().boxed());
        }
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    level.push(a.clone().imp(b.clone()));
                }
            }
        }
        by_size[size] = level;
    }
    by_size.into_iter().flatten().collect()
}

/// A pseudorandom formula over `F`, `p0`, `->`, and `[]` with exactly
/// `size` nodes.
pub fn random_core_formula(size: usize, rng: &mut impl Rng) -> Formula {
    assert!(size >= 1, "formulas have at least one node");
    if size == 1 {
        return if rng.random_bool(0.5) {
            Formula::Bot
        } else {
            Formula::var(0)
        };
    }
    // An implication needs two nonempty parts; below 3 nodes only [] fits.
    if size < 3 || rng.random_bool(0.4) {
        random_core_formula(size - 1, rng).boxed()
    } else {
        let left = rng.random_range(1..size - 1);
        let a = random_core_formula(left, rng);
        let b = random_core_formula(size - 1 - left, rng);
        a.imp(b)
    }
}

/// A pseudorandom formula drawing on every constructor, including `|>`,
/// with variables below `n_vars` and at most `max_size` nodes.
pub fn random_full_formula(max_size: usize, n_vars: u32, rng: &mut impl Rng) -> Formula {
    let size = rng.random_range(1..=max_size.max(1));
    random_full_sized(size, n_vars, rng)
}

fn random_full_sized(size: usize, n_vars: u32, rng: &mut impl Rng) -> Formula {
    if size <= 1 {
        return match rng.random_range(0..3) {
            0 => Formula::Bot,
            1 => Formula::Top,
            _ if n_vars == 0 => Formula::Top,
            _ => Formula::var(rng.random_range(0..n_vars)),
        };
    }
    let binary = size >= 3 && rng.random_bool(0.6);
    if binary {
        let left = rng.random_range(1..size - 1);
        let a = random_full_sized(left, n_vars, rng);
        let b = random_full_sized(size - 1 - left, n_vars, rng);
        match rng.random_range(0..5) {
            0 => a.and(b),
            1 => a.or(b),
            2 => a.imp(b),
            3 => a.iff(b),
            _ => a.rhd(b),
        }
    } else {
        let a = random_full_sized(size - 1, n_vars, rng);
        match rng.random_range(0..3) {
            0 => a.not(),
            1 => a.boxed(),
            _ => a.dia(),
        }
    }
}

/// A pseudorandom closed (variable-free, `|>`-free) formula with modal
/// depth at most `max_depth`.
pub fn random_closed_gl_formula(max_depth: usize, rng: &mut impl Rng) -> Formula {
    // Size budget keeps the trees small; depth budget bounds modal nesting.
    fn go(depth: usize, fuel: usize, rng: &mut impl Rng) -> Formula {
        if fuel <= 1 {
            return if rng.random_bool(0.5) {
                Formula::Bot
            } else {
                Formula::Top
            };
        }
        match rng.random_range(0..8) {
            0 => Formula::Bot,
            1 => Formula::Top,
            2 => go(depth, fuel - 1, rng).not(),
            3 | 4 if depth > 0 => {
                let a = go(depth - 1, fuel - 1, rng);
                if rng.random_bool(0.5) {
                    a.boxed()
                } else {
                    a.dia()
                }
            }
            _ => {
                let half = fuel / 2;
                let a = go(depth, half, rng);
                let b = go(depth, fuel - 1 - half, rng);
                match rng.random_range(0..4) {
                    0 => a.and(b),
                    1 => a.or(b),
                    2 => a.imp(b),
                    _ => a.iff(b),
                }
            }
        }
    }
    go(max_depth, 12, rng)
}

/// An unlabeled rooted tree, children canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Shape {
    size: usize,
    children: Vec<Shape>,
}

/// Every rooted tree shape with exactly 1..=max_nodes nodes, one
/// representative per isomorphism class.
fn tree_shapes_up_to(max_nodes: usize) -> Vec<Shape> {
    // pool holds all shapes of size <= current level, sorted; child lists
    // are non-increasing sequences over the pool, which makes each multiset
    // of subtrees appear exactly once.
    fn child_lists(budget: usize, pool: &[Shape], max_idx: usize) -> Vec<Vec<Shape>> {
        if budget == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in (0..max_idx).rev() {
            if pool[i].size > budget {
                continue;
            }
            for mut rest in child_lists(budget - pool[i].size, pool, i + 1) {
                let mut list = vec![pool[i].clone()];
                list.append(&mut rest);
                out.push(list);
            }
        }
        out
    }

    let mut pool: Vec<Shape> = Vec::new();
    for n in 1..=max_nodes {
        let fixed = pool.len();
        if n == 1 {
            pool.push(Shape {
                size: 1,
                children: Vec::new(),
            });
            continue;
        }
        for children in child_lists(n - 1, &pool, fixed) {
            pool.push(Shape { size: n, children });
        }
    }
    pool
}

fn shape_to_frame(shape: &Shape) -> KripkeModel {
    fn walk(shape: &Shape, next: &mut World, ancestors: &mut Vec<World>, m: &mut KripkeModel) {
        let id = *next;
        *next += 1;
        m.worlds.insert(id);
        for &a in ancestors.iter() {
            m.r.insert((a, id));
        }
        ancestors.push(id);
        for child in &shape.children {
            walk(child, next, ancestors, m);
        }
        ancestors.pop();
    }
    let mut m = KripkeModel::default();
    walk(shape, &mut 0, &mut Vec::new(), &mut m);
    m.root = Some(0);
    m
}

/// Every tree-like model with at most `max_worlds` worlds and every
/// valuation of `p0`: one frame per rooted tree shape, crossed with all
/// 2^n subsets of p0-worlds. 374 models for `max_worlds = 5`.
pub fn tree_models_up_to(max_worlds: usize) -> Vec<KripkeModel> {
    let mut out = Vec::new();
    for shape in tree_shapes_up_to(max_worlds) {
        let frame = shape_to_frame(&shape);
        let n = shape.size as u32;
        for mask in 0u32..(1 << n) {
            let mut m = frame.clone();
            for w in 0..n {
                if mask >> w & 1 == 1 {
                    m.val.insert(w, BTreeSet::from([0]));
                }
            }
            out.push(m);
        }
    }
    out
}

/// A pseudorandom tree-like model: a uniform parent array over earlier
/// worlds, ancestor-closed, with `p0` drawn per world. Root 0.
pub fn random_tree_model(n_worlds: u32, rng: &mut impl Rng) -> KripkeModel {
    assert!(n_worlds >= 1, "a tree has a root");
    let mut parent: Vec<World> = vec![0; n_worlds as usize];
    let mut m = KripkeModel::default();
    m.worlds.insert(0);
    m.root = Some(0);
    for w in 1..n_worlds {
        parent[w as usize] = rng.random_range(0..w);
        m.worlds.insert(w);
        let mut a = w;
        while a != 0 {
            a = parent[a as usize];
            m.r.insert((a, w));
        }
    }
    for w in 0..n_worlds {
        if rng.random_bool(0.5) {
            m.val.insert(w, BTreeSet::from([0]));
        }
    }
    m
}
