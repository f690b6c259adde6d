//! Provability and interpretability logic toolkit.
//!
//! Formulas, Kripke and Veltman semantics, a tableau prover for GL with
//! countermodel extraction, closed-fragment normal forms, and the
//! translation that reduces one-variable GL validity to validity of
//! closed `|>` formulas, certified in both directions.

pub mod diag;
pub mod formula;
pub mod generate;
pub mod gl;
pub mod parser;
pub mod reduction;
pub mod veltman;

pub use diag::{Diagnostics, Violation};
pub use formula::{Formula, FormulaStats, TranslateError};
pub use gl::{
    brute_force_gl, eval_closed_at_height, mc_gl, normal_form_closed, prove_gl, GlVerdict,
    KripkeModel, NormalForm, World,
};
pub use parser::{parse, ParseError};
pub use reduction::{
    lift_to_veltman, project_to_gl, reduce_and_certify, reduce_and_certify_with,
    Certificate, CertifiedReduction, LiftedModel, ReduceConfig, ReductionError, SmokeReport,
};
pub use veltman::{mc_il, random_veltman, validate_veltman, VeltmanModel};
