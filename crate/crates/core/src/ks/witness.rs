use num_complex::Complex64;
use serde::Serialize;

use super::hypergraph::Assignment;
use super::search::{maximize_parity_sum, SearchConfig};
use super::system::RaySystem;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, QuantumState};

/// Overall sign applied to the sum of context products.
///
/// With `A = I - 2P`, a complete context has operator product `-I`, so the
/// literal sum over nine contexts is `-9`. `Negated` flips the sum so the
/// quantum value is `+9` and the noncontextual maximum is `7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    #[default]
    Negated,
    Literal,
}

impl SignConvention {
    pub fn factor(self) -> i64 {
        match self {
            SignConvention::Negated => -1,
            SignConvention::Literal => 1,
        }
    }

    pub fn from_factor(factor: i64) -> Result<Self> {
        match factor {
            -1 => Ok(SignConvention::Negated),
            1 => Ok(SignConvention::Literal),
            other => Err(Error::Config(format!("sign must be +1 or -1, got {other}"))),
        }
    }
}

/// Sum over contexts of the product of the context's `±1` observables.
#[derive(Debug, Clone, Copy)]
pub struct Witness<'a> {
    system: &'a RaySystem,
    sign: SignConvention,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalBound {
    pub bound: i64,
    pub arg: Assignment,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub classical_bound: i64,
    pub maximizing_assignment: Assignment,
    pub quantum_value: f64,
    /// `quantum_value - classical_bound`
    pub margin: f64,
}

impl<'a> Witness<'a> {
    pub fn new(system: &'a RaySystem, sign: SignConvention) -> Self {
        Witness { system, sign }
    }

    pub fn system(&self) -> &RaySystem {
        self.system
    }

    pub fn sign(&self) -> SignConvention {
        self.sign
    }

    /// Value of the witness for a noncontextual valuation.
    pub fn evaluate(&self, a: &Assignment) -> Result<i64> {
        if a.len() != self.system.rays().len() {
            return Err(Error::Dimension(format!(
                "assignment of length {} for {} rays",
                a.len(),
                self.system.rays().len()
            )));
        }
        let sum: i64 = self
            .system
            .contexts()
            .iter()
            .map(|c| {
                c.ray_indices()
                    .iter()
                    .map(|&i| if a.values()[i] { -1 } else { 1 })
                    .product::<i64>()
            })
            .sum();
        Ok(self.sign.factor() * sum)
    }

    /// Exact noncontextual maximum and its lexicographically smallest
    /// maximizer.
    pub fn classical_bound(&self, cfg: &SearchConfig) -> Result<ClassicalBound> {
        let (bound, arg) = maximize_parity_sum(&self.system.hypergraph(), self.sign.factor(), cfg)?;
        Ok(ClassicalBound { bound, arg })
    }

    /// Products `prod_i (I - 2 P_i)` for every context, by explicit matrix
    /// multiplication.
    pub fn context_operators(&self) -> Vec<Matrix> {
        let projectors = self.system.projectors();
        let d = self.system.dimension();
        self.system
            .contexts()
            .iter()
            .map(|c| {
                c.ray_indices().iter().fold(Matrix::identity(d), |acc, &i| {
                    &acc * &projectors[i].observable()
                })
            })
            .collect()
    }

    /// `sign * sum_j <psi| prod_i A_ij |psi>`.
    pub fn quantum_value(&self, psi: &QuantumState) -> Result<f64> {
        if psi.dim() != self.system.dimension() {
            return Err(Error::Dimension(format!(
                "state of dimension {} for a system of dimension {}",
                psi.dim(),
                self.system.dimension()
            )));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for op in self.context_operators() {
            total += op.expectation(psi)?;
        }
        Ok(self.sign.factor() as f64 * total.re)
    }

    pub fn report(&self, psi: &QuantumState, cfg: &SearchConfig) -> Result<WitnessReport> {
        let ClassicalBound { bound, arg } = self.classical_bound(cfg)?;
        let quantum_value = self.quantum_value(psi)?;
        Ok(WitnessReport {
            classical_bound: bound,
            maximizing_assignment: arg,
            quantum_value,
            margin: quantum_value - bound as f64,
        })
    }
}
