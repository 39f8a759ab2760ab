//! Game instances, simplex/allocation vectors and the classic General Lotto value.
//!
//! Internally every vector indexed by contest is in *canonical order*: contests
//! sorted by nonincreasing value, ties broken by original index. Use
//! [`GameInstance::to_original`] / [`GameInstance::from_original`] at the edges.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, LottoError, Result};

/// Tolerance on `sum(v) == 1` and on simplex membership.
pub const SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalizeMode {
    /// Reject valuations that do not already sum to one.
    #[default]
    Strict,
    /// Divide by the sum and remember the scale factor.
    Normalize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedValues {
    pub values: Vec<f64>,
    /// Sum of the raw values (1 when accepted unchanged in strict mode).
    pub scale: f64,
}

pub fn validate_or_normalize(raw: &[f64], mode: NormalizeMode) -> Result<NormalizedValues> {
    if raw.is_empty() {
        return Err(invalid("at least one contest is required"));
    }
    if let Some(bad) = raw.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(invalid(format!("contest values must be positive and finite, got {bad}")));
    }
    let sum: f64 = raw.iter().sum();
    match mode {
        NormalizeMode::Strict => {
            if (sum - 1.0).abs() > SUM_TOL {
                return Err(LottoError::Normalization { sum, tol: SUM_TOL });
            }
            Ok(NormalizedValues { values: raw.to_vec(), scale: 1.0 })
        }
        NormalizeMode::Normalize => Ok(NormalizedValues { values: raw.iter().map(|v| v / sum).collect(), scale: sum }),
    }
}

/// Budgets and normalized contest valuations of one game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameInstance {
    x: f64,
    y: f64,
    values: Vec<f64>,
    /// `order[i]` is the caller's index of canonical contest `i`.
    order: Vec<usize>,
    scale: f64,
}

impl GameInstance {
    pub fn new(x: f64, y: f64, raw_values: &[f64], mode: NormalizeMode) -> Result<Self> {
        check_budget("X", x)?;
        check_budget("Y", y)?;
        let NormalizedValues { values: v, scale } = validate_or_normalize(raw_values, mode)?;
        let mut order: Vec<usize> = (0..v.len()).collect();
        order.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));
        let values = order.iter().map(|&i| v[i]).collect();
        Ok(Self { x, y, values, order, scale })
    }

    /// Same valuations, different budgets.
    pub fn with_budgets(&self, x: f64, y: f64) -> Result<Self> {
        check_budget("X", x)?;
        check_budget("Y", y)?;
        Ok(Self { x, y, ..self.clone() })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Canonical (nonincreasing) valuations.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, c: usize) -> f64 {
        self.values[c]
    }

    pub fn num_contests(&self) -> usize {
        self.values.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// True when two contests share a valuation (allowed, but the top-k order
    /// then depends on the tie-break).
    pub fn has_tied_values(&self) -> bool {
        self.values.windows(2).any(|w| w[0] == w[1])
    }

    /// Map a canonical-order vector back to the caller's contest order.
    pub fn to_original(&self, canonical: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; canonical.len()];
        for (i, &orig) in self.order.iter().enumerate() {
            out[orig] = canonical[i];
        }
        out
    }

    pub fn from_original(&self, original: &[f64]) -> Vec<f64> {
        self.order.iter().map(|&orig| original[orig]).collect()
    }
}

fn check_budget(name: &str, b: f64) -> Result<()> {
    if b.is_finite() && b > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("budget {name} must be positive and finite, got {b}")))
    }
}

/// On-disk instance: `{"X": .., "Y": .., "v": [..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Y")]
    pub y: f64,
    pub v: Vec<f64>,
}

impl InstanceFile {
    pub fn into_instance(self, mode: NormalizeMode) -> Result<GameInstance> {
        GameInstance::new(self.x, self.y, &self.v, mode)
    }
}

/// A probability vector over contests.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector(Vec<f64>);

impl SimplexVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("simplex vector must be nonempty"));
        }
        if entries.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(invalid("simplex entries must be nonnegative and finite"));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(invalid(format!("simplex entries sum to {sum}")));
        }
        Ok(Self(entries))
    }

    /// Rescale nonnegative weights onto the simplex.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum.is_finite() && sum > 0.0) || weights.iter().any(|w| *w < 0.0) {
            return Err(invalid("weights must be nonnegative with a positive finite sum"));
        }
        Ok(Self(weights.into_iter().map(|w| w / sum).collect()))
    }

    pub fn unit(c: usize, n: usize) -> Self {
        let mut e = vec![0.0; n];
        e[c] = 1.0;
        Self(e)
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for SimplexVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Resources per contest (canonical order).
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation(Vec<f64>);

impl Allocation {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(invalid("allocation entries must be nonnegative and finite"));
        }
        Ok(Self(entries))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Allocation {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// An allocation with at most one positive entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleAllocation {
    pub contest: usize,
    pub amount: f64,
}

impl SingleAllocation {
    pub fn to_allocation(self, n: usize) -> Allocation {
        let mut e = vec![0.0; n];
        e[self.contest] = self.amount;
        Allocation(e)
    }
}

/// Player X's payoff for pure allocations; ties go to X.
pub fn payoff_pure(x: &Allocation, y: &Allocation, inst: &GameInstance) -> Result<f64> {
    let n = inst.num_contests();
    if x.len() != n || y.len() != n {
        return Err(invalid(format!("allocation lengths ({}, {}) do not match {n} contests", x.len(), y.len())));
    }
    Ok(payoff_unchecked(x, y, inst.values()))
}

#[inline]
pub(crate) fn payoff_unchecked(x: &[f64], y: &[f64], v: &[f64]) -> f64 {
    x.iter().zip(y).zip(v).filter(|((xc, yc), _)| xc >= yc).map(|(_, vc)| vc).sum()
}

/// Equilibrium value of the unrestricted game for budgets `(x, y)`.
pub fn gl_value(x: f64, y: f64) -> f64 {
    if x <= y {
        x / (2.0 * y)
    } else {
        1.0 - y / (2.0 * x)
    }
}

pub fn gl_equilibrium_value(inst: &GameInstance) -> f64 {
    gl_value(inst.x(), inst.y())
}
