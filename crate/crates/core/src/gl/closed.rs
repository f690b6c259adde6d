//! The closed fragment of GL: variable-free formulas.
//!
//! Over transitive irreflexive trees, truth of a closed formula at a world
//! depends only on the world's height (the length of the longest chain of
//! successors below it): a height-h world in some model sees worlds of
//! exactly the heights 0..h-1, so `[]A` holds at height h iff `A` holds at
//! every smaller height. This gives a model-free evaluation by recursion on
//! height, and every closed formula collapses to a Boolean combination of
//! the formulas `[]^n F` ("height < n").

use serde::Serialize;

use crate::formula::Formula;
use crate::gl::GlError;

/// Truth of the closed formula `f` at any world of height `h` in any GL
/// model. Rejects formulas with variables or `|>`.
pub fn eval_closed_at_height(f: &Formula, h: usize) -> Result<bool, GlError> {
    if f.contains_rhd() {
        return Err(GlError::ContainsRhd);
    }
    if let Some(&v) = f.variables().iter().next() {
        return Err(GlError::OpenFormula(v));
    }
    Ok(eval(f, h))
}

fn eval(f: &Formula, h: usize) -> bool {
    match f {
        Formula::Bot => false,
        Formula::Top => true,
        Formula::Var(_) | Formula::Rhd(_, _) => unreachable!("rejected upfront"),
        Formula::Not(a) => !eval(a, h),
        Formula::And(a, b) => eval(a, h) && eval(b, h),
        Formula::Or(a, b) => eval(a, h) || eval(b, h),
        Formula::Imp(a, b) => !eval(a, h) || eval(b, h),
        Formula::Iff(a, b) => eval(a, h) == eval(b, h),
        Formula::Box(a) => (0..h).all(|k| eval(a, k)),
        Formula::Dia(a) => (0..h).any(|k| eval(a, k)),
    }
}

/// A closed formula reduced to its truth profile over heights.
///
/// Truth as a function of height stabilizes at the formula's modal depth:
/// `true_below` lists the true heights before `stable_from`, and
/// `stable_value` is the constant answer from `stable_from` on. `formula`
/// is an equivalent Boolean combination of `[]^n F` formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub true_below: Vec<usize>,
    pub stable_from: usize,
    pub stable_value: bool,
    pub formula: Formula,
}

/// `[]^n F`.
fn box_n_bot(n: usize) -> Formula {
    let mut f = Formula::Bot;
    for _ in 0..n {
        f = f.boxed();
    }
    f
}

/// `[]^{k+1} F & ~[]^k F`, true exactly at height k.
fn exactly_height(k: usize) -> Formula {
    box_n_bot(k + 1).and(box_n_bot(k).not())
}

/// Computes the height profile and a `[]^n F` normal form of a closed
/// formula. The reconstruction is GL-equivalent to the input.
pub fn normal_form_closed(f: &Formula) -> Result<NormalForm, GlError> {
    let md = f.modal_depth();
    // Probe one height past the last one that can matter, as a cheap
    // internal sanity check that the profile really is stable there.
    let profile: Vec<bool> = (0..=md + 1)
        .map(|h| eval_closed_at_height(f, h))
        .collect::<Result<_, _>>()?;
    debug_assert_eq!(profile[md], profile[md + 1]);

    let true_below: Vec<usize> = (0..md).filter(|&h| profile[h]).collect();
    let stable_value = profile[md];

    let formula = if md == 0 {
        if stable_value {
            Formula::Top
        } else {
            Formula::Bot
        }
    } else {
        let mut parts: Vec<Formula> = true_below.iter().map(|&k| exactly_height(k)).collect();
        if stable_value {
            // True at every height >= md.
            parts.push(box_n_bot(md).not());
        }
        match parts.into_iter().reduce(Formula::or) {
            Some(f) => f,
            None => Formula::Bot,
        }
    };

    Ok(NormalForm {
        true_below,
        stable_from: md,
        stable_value,
        formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl::{mc_gl, KripkeModel};

    fn chain(n: u32) -> KripkeModel {
        let mut m = KripkeModel::default();
        for i in 0..n {
            m.worlds.insert(i);
            for j in i + 1..n {
                m.r.insert((i, j));
            }
        }
        m
    }

    #[test]
    fn box_bot_is_true_exactly_at_endpoints() {
        let f = Formula::Bot.boxed();
        assert!(eval_closed_at_height(&f, 0).unwrap());
        assert!(!eval_closed_at_height(&f, 1).unwrap());
        assert!(!eval_closed_at_height(&f, 7).unwrap());
    }

    #[test]
    fn open_or_rhd_inputs_are_rejected() {
        assert!(matches!(
            eval_closed_at_height(&Formula::var(2), 0),
            Err(GlError::OpenFormula(2))
        ));
        assert!(matches!(
            eval_closed_at_height(&Formula::Top.rhd(Formula::Top), 0),
            Err(GlError::ContainsRhd)
        ));
        assert!(normal_form_closed(&Formula::var(0)).is_err());
    }

    #[test]
    fn height_evaluation_matches_model_checking_on_a_chain() {
        // In the 6-chain, world i has height 5 - i.
        let m = chain(6);
        let f: Formula = "<>T -> <>[]F".parse().unwrap();
        for i in 0..6u32 {
            let h = (5 - i) as usize;
            assert_eq!(
                mc_gl(&m, i, &f).unwrap(),
                eval_closed_at_height(&f, h).unwrap(),
                "world {i} height {h}"
            );
        }
        assert!(eval_closed_at_height(&f, 5).unwrap());
    }

    #[test]
    fn normal_form_of_box_bot() {
        let nf = normal_form_closed(&Formula::Bot.boxed()).unwrap();
        assert_eq!(nf.true_below, vec![0]);
        assert_eq!(nf.stable_from, 1);
        assert!(!nf.stable_value);
        assert_eq!(nf.formula.to_string(), "[]F & ~F");
    }

    #[test]
    fn normal_form_of_constants() {
        let top = normal_form_closed(&Formula::Top).unwrap();
        assert_eq!(top.formula, Formula::Top);
        assert!(top.true_below.is_empty());
        assert!(top.stable_value);
        let bot = normal_form_closed(&Formula::Bot).unwrap();
        assert_eq!(bot.formula, Formula::Bot);
        assert!(!bot.stable_value);
    }

    #[test]
    fn normal_form_of_dia_box_bot() {
        // <>[]F holds exactly at heights >= 1.
        let nf = normal_form_closed(&Formula::Bot.boxed().dia()).unwrap();
        assert_eq!(nf.true_below, vec![1]);
        assert_eq!(nf.stable_from, 2);
        assert!(nf.stable_value);
        assert_eq!(nf.formula.to_string(), "[][]F & ~[]F | ~[][]F");
    }

    #[test]
    fn reconstruction_agrees_with_input_at_all_relevant_heights() {
        let pool = [
            "[]F -> F",
            "<><>T -> <>T",
            "[]([]F | <>[]F)",
            "~[](<>T <-> <><>T)",
            "([]F | <>(T & []([]F -> F)))",
        ];
        for text in pool {
            let f: Formula = text.parse().unwrap();
            let nf = normal_form_closed(&f).unwrap();
            for h in 0..=f.modal_depth() + 3 {
                assert_eq!(
                    eval_closed_at_height(&f, h).unwrap(),
                    eval_closed_at_height(&nf.formula, h).unwrap(),
                    "{text} at height {h}"
                );
            }
        }
    }
}
