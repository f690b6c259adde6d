//! Structural diagnostics shared by the frame validators.

use std::fmt;

use serde::Serialize;

use crate::gl::World;

/// One violated condition together with the worlds that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Name of the violated condition, e.g. `"condition 2"` or `"transitivity"`.
    pub condition: String,
    /// Witness worlds in the order the condition names them.
    pub witness: Vec<World>,
}

impl Violation {
    pub fn new(condition: impl Into<String>, witness: impl Into<Vec<World>>) -> Self {
        Violation {
            condition: condition.into(),
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.witness.len() == 1 {
            write!(f, "{} at {}", self.condition, self.witness[0])
        } else {
            let worlds: Vec<String> = self.witness.iter().map(World::to_string).collect();
            write!(f, "{} at ({})", self.condition, worlds.join(","))
        }
    }
}

/// Outcome of a validator: either clean or a list of violations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub violations: Vec<Violation>,
}

impl Diagnostics {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, condition: impl Into<String>, witness: impl Into<Vec<World>>) {
        self.violations.push(Violation::new(condition, witness));
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clean() {
            return f.write_str("clean");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
