//! Formula language shared by the GL and IL sides of the toolkit.
//!
//! `Formula` covers classical connectives, the unary modalities `[]`/`<>`,
//! and the binary interpretability modality `|>`. Formulas are immutable
//! values; every operation returns a fresh formula.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::parser::{parse, ParseError};

/// A modal formula. `Var(0)` is the variable rendered as `p0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// Falsum, rendered `F`.
    Bot,
    /// Verum, rendered `T`.
    Top,
    /// Propositional variable `pN`.
    Var(u32),
    /// Negation `~A`.
    Not(Box<Formula>),
    /// Conjunction `A & B`.
    And(Box<Formula>, Box<Formula>),
    /// Disjunction `A | B`.
    Or(Box<Formula>, Box<Formula>),
    /// Implication `A -> B`.
    Imp(Box<Formula>, Box<Formula>),
    /// Biconditional `A <-> B`.
    Iff(Box<Formula>, Box<Formula>),
    /// Provability box `[]A`.
    Box(Box<Formula>),
    /// Consistency diamond `<>A`; semantically `~[]~A`.
    Dia(Box<Formula>),
    /// Interpretability `A |> B`.
    Rhd(Box<Formula>, Box<Formula>),
}

/// Summary data computed by [`Formula::stats`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaStats {
    /// Deepest nesting of `[]`, `<>`, or `|>`; both arguments of `|>` count.
    pub modal_depth: usize,
    /// Number of AST nodes.
    pub size: usize,
    /// Indices of the variables that occur.
    pub variables: BTreeSet<u32>,
    /// True when no variable occurs.
    pub is_closed: bool,
    /// True when `|>` does not occur (the formula lives in the GL language).
    pub is_box_only: bool,
}

/// Rejection reasons for [`Formula::translate_dagger`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("translation input must be |>-free")]
    ContainsRhd,
    #[error("translation input may only use p0, found p{0}")]
    UnexpectedVariable(u32),
}

impl Formula {
    pub fn var(index: u32) -> Self {
        Formula::Var(index)
    }

    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Self) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn imp(self, rhs: Self) -> Self {
        Formula::Imp(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Self) -> Self {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    pub fn boxed(self) -> Self {
        Formula::Box(Box::new(self))
    }

    pub fn dia(self) -> Self {
        Formula::Dia(Box::new(self))
    }

    pub fn rhd(self, rhs: Self) -> Self {
        Formula::Rhd(Box::new(self), Box::new(rhs))
    }

    /// Computes every statistic in one traversal.
    pub fn stats(&self) -> FormulaStats {
        let mut variables = BTreeSet::new();
        let mut size = 0;
        let mut has_rhd = false;
        let modal_depth = self.walk(&mut variables, &mut size, &mut has_rhd);
        FormulaStats {
            modal_depth,
            size,
            is_closed: variables.is_empty(),
            is_box_only: !has_rhd,
            variables,
        }
    }

    fn walk(&self, vars: &mut BTreeSet<u32>, size: &mut usize, has_rhd: &mut bool) -> usize {
        *size += 1;
        match self {
            Formula::Bot | Formula::Top => 0,
            Formula::Var(i) => {
                vars.insert(*i);
                0
            }
            Formula::Not(a) => a.walk(vars, size, has_rhd),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                let da = a.walk(vars, size, has_rhd);
                let db = b.walk(vars, size, has_rhd);
                da.max(db)
            }
            Formula::Box(a) | Formula::Dia(a) => 1 + a.walk(vars, size, has_rhd),
            Formula::Rhd(a, b) => {
                *has_rhd = true;
                let da = a.walk(vars, size, has_rhd);
                let db = b.walk(vars, size, has_rhd);
                1 + da.max(db)
            }
        }
    }

    pub fn modal_depth(&self) -> usize {
        self.stats().modal_depth
    }

    pub fn size(&self) -> usize {
        self.stats().size
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.stats().variables
    }

    pub fn is_closed(&self) -> bool {
        self.stats().is_closed
    }

    pub fn contains_rhd(&self) -> bool {
        !self.stats().is_box_only
    }

    /// Rewrites into the `{F, ->, [], pN}` core: `T`, `~`, `&`, `|`, `<->`,
    /// and `<>` are eliminated through their classical definitions. `|>`
    /// subformulas are left untouched (callers that require a GL formula
    /// must reject them beforehand).
    pub fn to_box_imp_core(&self) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Top => Formula::Bot.imp(Formula::Bot),
            Formula::Var(i) => Formula::Var(*i),
            Formula::Not(a) => a.to_box_imp_core().imp(Formula::Bot),
            Formula::And(a, b) => {
                // A & B  =>  ~(A -> ~B)
                let a = a.to_box_imp_core();
                let b = b.to_box_imp_core();
                a.imp(b.imp(Formula::Bot)).imp(Formula::Bot)
            }
            Formula::Or(a, b) => {
                // A | B  =>  ~A -> B
                let a = a.to_box_imp_core();
                let b = b.to_box_imp_core();
                a.imp(Formula::Bot).imp(b)
            }
            Formula::Imp(a, b) => a.to_box_imp_core().imp(b.to_box_imp_core()),
            Formula::Iff(a, b) => {
                // A <-> B  =>  (A -> B) & (B -> A), conjunction already expanded
                let ab = a.to_box_imp_core().imp(b.to_box_imp_core());
                let ba = b.to_box_imp_core().imp(a.to_box_imp_core());
                ab.imp(ba.imp(Formula::Bot)).imp(Formula::Bot)
            }
            Formula::Box(a) => a.to_box_imp_core().boxed(),
            Formula::Dia(a) => {
                // <>A  =>  ~[]~A
                a.to_box_imp_core().imp(Formula::Bot).boxed().imp(Formula::Bot)
            }
            Formula::Rhd(a, b) => a.to_box_imp_core().rhd(b.to_box_imp_core()),
        }
    }

    /// The syntactic translation from one-variable GL formulas into closed
    /// IL formulas. The input is first normalized by [`Self::to_box_imp_core`],
    /// then mapped clause by clause:
    ///
    /// ```text
    /// F          => F
    /// p0         => <><>T -> (T |> <>T)
    /// A -> B     => A' -> B'
    /// []A        => [](<><>T -> A')
    /// ```
    ///
    /// The output is closed, and mentions `|>` exactly when the input
    /// mentions `p0`.
    pub fn translate_dagger(&self) -> Result<Formula, TranslateError> {
        let stats = self.stats();
        if !stats.is_box_only {
            return Err(TranslateError::ContainsRhd);
        }
        if let Some(&bad) = stats.variables.iter().find(|&&v| v != 0) {
            return Err(TranslateError::UnexpectedVariable(bad));
        }
        Ok(dagger_core(&self.to_box_imp_core()))
    }

    /// Replaces every `[]A` by `~A |> F` and every `<>A` by `~(A |> F)`,
    /// bottom-up. The result is `[]`- and `<>`-free and equivalent over
    /// Veltman models.
    pub fn box_as_rhd(&self) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Top => Formula::Top,
            Formula::Var(i) => Formula::Var(*i),
            Formula::Not(a) => a.box_as_rhd().not(),
            Formula::And(a, b) => a.box_as_rhd().and(b.box_as_rhd()),
            Formula::Or(a, b) => a.box_as_rhd().or(b.box_as_rhd()),
            Formula::Imp(a, b) => a.box_as_rhd().imp(b.box_as_rhd()),
            Formula::Iff(a, b) => a.box_as_rhd().iff(b.box_as_rhd()),
            Formula::Box(a) => a.box_as_rhd().not().rhd(Formula::Bot),
            // <>A = ~[]~A, and the double negation in the |> argument is
            // dropped: antecedents of |> are evaluated pointwise.
            Formula::Dia(a) => a.box_as_rhd().rhd(Formula::Bot).not(),
            Formula::Rhd(a, b) => a.box_as_rhd().rhd(b.box_as_rhd()),
        }
    }

    /// All subformulas (including `self`), deduplicated, in first-occurrence
    /// preorder.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_subformulas(&mut seen, &mut out);
        out
    }

    fn collect_subformulas(&self, seen: &mut BTreeSet<Formula>, out: &mut Vec<Formula>) {
        if seen.insert(self.clone()) {
            out.push(self.clone());
        }
        match self {
            Formula::Bot | Formula::Top | Formula::Var(_) => {}
            Formula::Not(a) | Formula::Box(a) | Formula::Dia(a) => {
                a.collect_subformulas(seen, out)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Iff(a, b)
            | Formula::Rhd(a, b) => {
                a.collect_subformulas(seen, out);
                b.collect_subformulas(seen, out);
            }
        }
    }
}

fn dagger_core(f: &Formula) -> Formula {
    fn dia_dia_top() -> Formula {
        Formula::Top.dia().dia()
    }
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Var(0) => dia_dia_top().imp(Formula::Top.rhd(Formula::Top.dia())),
        Formula::Imp(a, b) => dagger_core(a).imp(dagger_core(b)),
        Formula::Box(a) => dia_dia_top().imp(dagger_core(a)).boxed(),
        // to_box_imp_core leaves only the four cases above for |>-free,
        // p0-only inputs, which translate_dagger enforces.
        other => unreachable!("dagger applied to non-core formula {other:?}"),
    }
}

// Rendering: binding strength, strongest first:
//   {~, [], <>}  >  {&, |}  >  |>  >  {->, <->}
// `->`/`<->` associate to the right, `&`/`|` to the left, and `|>` does not
// associate at all. `prec` returns the level of the top connective and
// `render` parenthesizes a child exactly when its level is below the minimum
// the position requires, so output parentheses are minimal for this grammar.
const PREC_IMP: u8 = 1;
const PREC_RHD: u8 = 2;
const PREC_AND_OR: u8 = 3;
const PREC_UNARY: u8 = 4;
const PREC_ATOM: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Bot | Formula::Top | Formula::Var(_) => PREC_ATOM,
        Formula::Not(_) | Formula::Box(_) | Formula::Dia(_) => PREC_UNARY,
        Formula::And(_, _) | Formula::Or(_, _) => PREC_AND_OR,
        Formula::Rhd(_, _) => PREC_RHD,
        Formula::Imp(_, _) | Formula::Iff(_, _) => PREC_IMP,
    }
}

fn render(f: &Formula, min: u8, out: &mut String) {
    let level = prec(f);
    if level < min {
        out.push('(');
        render(f, 0, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Bot => out.push('F'),
        Formula::Top => out.push('T'),
        Formula::Var(i) => {
            out.push('p');
            out.push_str(&i.to_string());
        }
        Formula::Not(a) => {
            out.push('~');
            render(a, PREC_UNARY, out);
        }
        Formula::Box(a) => {
            out.push_str("[]");
            render(a, PREC_UNARY, out);
        }
        Formula::Dia(a) => {
            out.push_str("<>");
            render(a, PREC_UNARY, out);
        }
        Formula::And(a, b) => {
            render(a, PREC_AND_OR, out);
            out.push_str(" & ");
            render(b, PREC_AND_OR + 1, out);
        }
        Formula::Or(a, b) => {
            render(a, PREC_AND_OR, out);
            out.push_str(" | ");
            render(b, PREC_AND_OR + 1, out);
        }
        Formula::Rhd(a, b) => {
            render(a, PREC_RHD + 1, out);
            out.push_str(" |> ");
            render(b, PREC_RHD + 1, out);
        }
        Formula::Imp(a, b) => {
            render(a, PREC_IMP + 1, out);
            out.push_str(" -> ");
            render(b, PREC_IMP, out);
        }
        Formula::Iff(a, b) => {
            render(a, PREC_IMP + 1, out);
            out.push_str(" <-> ");
            render(b, PREC_IMP, out);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        render(self, 0, &mut out);
        f.write_str(&out)
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Formulas serialize as their rendered ASCII text.
impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var(0)
    }

    #[test]
    fn render_uses_minimal_parentheses() {
        assert_eq!(Formula::Bot.boxed().to_string(), "[]F");
        let dagger_p = Formula::Top
            .dia()
            .dia()
            .imp(Formula::Top.rhd(Formula::Top.dia()));
        assert_eq!(dagger_p.to_string(), "<><>T -> T |> <>T");
        let nested = Formula::Top.rhd(Formula::Top).rhd(Formula::Top);
        assert_eq!(nested.to_string(), "(T |> T) |> T");
    }

    #[test]
    fn render_respects_associativity() {
        // -> is right-associative: the left nesting needs parentheses.
        let right = p().imp(p().imp(p()));
        assert_eq!(right.to_string(), "p0 -> p0 -> p0");
        let left = p().imp(p()).imp(p());
        assert_eq!(left.to_string(), "(p0 -> p0) -> p0");
        // & and | sit on one level and associate to the left.
        let or_of_and = p().and(Formula::var(1)).or(Formula::var(2));
        assert_eq!(or_of_and.to_string(), "p0 & p1 | p2");
        let and_of_or = p().and(Formula::var(1).or(Formula::var(2)));
        assert_eq!(and_of_or.to_string(), "p0 & (p1 | p2)");
        // Unary operators bind tighter than everything.
        assert_eq!(p().boxed().imp(p()).to_string(), "[]p0 -> p0");
        assert_eq!(p().imp(p()).boxed().to_string(), "[](p0 -> p0)");
        assert_eq!(p().rhd(Formula::Bot).not().to_string(), "~(p0 |> F)");
    }

    #[test]
    fn stats_examples() {
        let dagger_p = Formula::Top
            .dia()
            .dia()
            .imp(Formula::Top.rhd(Formula::Top.dia()));
        let s = dagger_p.stats();
        assert_eq!(s.modal_depth, 2);
        assert!(s.is_closed);
        assert!(!s.is_box_only);
        assert_eq!(s.size, 8);

        let loeb = p().boxed().imp(p()).boxed().imp(p().boxed());
        let s = loeb.stats();
        assert_eq!(s.modal_depth, 2);
        assert_eq!(s.variables, BTreeSet::from([0]));
        assert!(s.is_box_only);

        let s = Formula::Bot.stats();
        assert_eq!(s.modal_depth, 0);
        assert_eq!(s.size, 1);
        assert!(s.is_closed);
        assert!(s.is_box_only);
    }

    #[test]
    fn dagger_on_the_variable() {
        let expected = Formula::Top
            .dia()
            .dia()
            .imp(Formula::Top.rhd(Formula::Top.dia()));
        assert_eq!(p().translate_dagger().unwrap(), expected);
        assert_eq!(p().translate_dagger().unwrap().to_string(), "<><>T -> T |> <>T");
    }

    #[test]
    fn dagger_on_bot_and_box() {
        assert_eq!(Formula::Bot.translate_dagger().unwrap(), Formula::Bot);
        let expected = Formula::Top
            .dia()
            .dia()
            .imp(Formula::Bot)
            .boxed();
        assert_eq!(Formula::Bot.boxed().translate_dagger().unwrap(), expected);
        assert_eq!(expected.to_string(), "[](<><>T -> F)");
    }

    #[test]
    fn dagger_rejects_rhd_and_foreign_variables() {
        let f = Formula::Top.rhd(Formula::Bot);
        assert_eq!(f.translate_dagger(), Err(TranslateError::ContainsRhd));
        let f = Formula::var(1).imp(Formula::var(0));
        assert_eq!(f.translate_dagger(), Err(TranslateError::UnexpectedVariable(1)));
    }

    #[test]
    fn dagger_output_shape() {
        // Output is closed; |> appears exactly when p0 occurred.
        let with_p = p().boxed().imp(p());
        let t = with_p.translate_dagger().unwrap();
        assert!(t.is_closed());
        assert!(t.contains_rhd());

        let without_p = Formula::Bot.boxed().boxed();
        let t = without_p.translate_dagger().unwrap();
        assert!(t.is_closed());
        assert!(!t.contains_rhd());
    }

    #[test]
    fn box_as_rhd_examples() {
        let f = Formula::Bot.boxed();
        assert_eq!(f.box_as_rhd(), Formula::Bot.not().rhd(Formula::Bot));
        assert_eq!(Formula::Bot.box_as_rhd(), Formula::Bot);
        let f = Formula::Bot.boxed().boxed();
        let inner = Formula::Bot.not().rhd(Formula::Bot);
        assert_eq!(f.box_as_rhd(), inner.not().rhd(Formula::Bot));
        // No box or diamond survives.
        let g = p().dia().imp(p().boxed()).box_as_rhd();
        let has_modal = g
            .subformulas()
            .iter()
            .any(|s| matches!(s, Formula::Box(_) | Formula::Dia(_)));
        assert!(!has_modal);
    }

    #[test]
    fn core_rewrite_removes_sugar() {
        let f = Formula::Top
            .and(p().or(p().not()))
            .iff(p().dia());
        let core = f.to_box_imp_core();
        for sub in core.subformulas() {
            assert!(matches!(
                sub,
                Formula::Bot | Formula::Var(_) | Formula::Imp(_, _) | Formula::Box(_)
            ));
        }
    }

    #[test]
    fn formula_serializes_as_rendered_text() {
        let f = p().boxed().imp(p());
        assert_eq!(serde_json::to_string(&f).unwrap(), "\"[]p0 -> p0\"");
    }
}
