use crate::error::{precondition, Result};

/// Tolerances and budgets for every series and quadrature evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    pub max_quad_refinements: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_terms: 100_000,
            max_quad_refinements: 30,
        }
    }
}

impl EvalOptions {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize, max_quad_refinements: usize) -> Result<Self> {
        let o = EvalOptions {
            rel_tol,
            abs_tol,
            max_terms,
            max_quad_refinements,
        };
        o.validate()?;
        Ok(o)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(precondition("rel_tol must be positive"));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(precondition("abs_tol must be non-negative"));
        }
        if self.max_terms < 1 {
            return Err(precondition("max_terms must be at least 1"));
        }
        if self.max_quad_refinements < 1 {
            return Err(precondition("max_quad_refinements must be at least 1"));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}
