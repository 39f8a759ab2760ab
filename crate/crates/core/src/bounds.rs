//! Lower bound on the max-min value and upper bound on the min-max value when
//! player Y may attack a single contest.
//!
//! The lower bound maximizes `1 - max_c H_c(alpha_c)` over the simplex. Every
//! `H_c` is continuous and strictly decreasing, so the optimum equalizes `H_c`
//! across active contests; we find the common level by bisection.
//!
//! The upper bound is the minimum of `UB(q([k]))` over the top-`k` equalizing
//! vectors, `k = 1..=C`.

use serde::Serialize;

use crate::error::{invalid, LottoError, Result};
use crate::instance::{gl_equilibrium_value, GameInstance, SimplexVector};

pub const DEFAULT_LEVEL_TOL: f64 = 1e-12;
const MAX_BISECTION_STEPS: usize = 200;

/// `H_c(alpha_c)`: the most player Y can win on contest `c` when X sends the
/// budget fraction `alpha_c` there with the best participation probability.
pub fn eval_hc(alpha_c: f64, c: usize, inst: &GameInstance) -> f64 {
    let (x, y, v) = (inst.x(), inst.y(), inst.value(c));
    if alpha_c < y / x {
        v * (1.0 - alpha_c * x / (2.0 * y))
    } else {
        v * y / (2.0 * alpha_c * x)
    }
}

/// `H(alpha) = max_c H_c(alpha_c)`.
pub fn eval_h(alpha: &[f64], inst: &GameInstance) -> f64 {
    alpha.iter().enumerate().map(|(c, &a)| eval_hc(a, c, inst)).fold(f64::NEG_INFINITY, f64::max)
}

/// Inverse of `H_c` at level `t`, clipped to zero once the contest cannot bind.
fn alpha_at_level(t: f64, c: usize, inst: &GameInstance) -> f64 {
    let (x, y, v) = (inst.x(), inst.y(), inst.value(c));
    if t >= v {
        0.0
    } else if t >= v / 2.0 {
        (1.0 - t / v) * 2.0 * y / x
    } else {
        v * y / (2.0 * t * x)
    }
}

fn total_at_level(t: f64, inst: &GameInstance) -> f64 {
    (0..inst.num_contests()).map(|c| alpha_at_level(t, c, inst)).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundResult {
    /// `LB* = 1 - level`.
    pub value: f64,
    pub alpha_star: SimplexVector,
    /// `H(alpha*)`.
    pub level: f64,
}

pub fn solve_lower_bound(inst: &GameInstance, tol: f64) -> Result<LowerBoundResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    // total_at_level is +inf at 0+ and 0 at v_1.
    let (mut lo, mut hi) = (0.0, inst.value(0));
    let mut steps = 0;
    while hi - lo > tol {
        if steps == MAX_BISECTION_STEPS {
            return Err(LottoError::Internal(format!(
                "level bisection did not converge in {MAX_BISECTION_STEPS} steps"
            )));
        }
        let mid = 0.5 * (lo + hi);
        if total_at_level(mid, inst) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    let t = 0.5 * (lo + hi);
    let raw: Vec<f64> = (0..inst.num_contests()).map(|c| alpha_at_level(t, c, inst)).collect();
    let alpha_star =
        SimplexVector::normalized(raw).map_err(|e| LottoError::Internal(format!("degenerate level solution: {e}")))?;
    let level = eval_h(&alpha_star, inst);
    Ok(LowerBoundResult { value: 1.0 - level, alpha_star, level })
}

/// The equalizing vector `q(S)`: supported on `S`, with `v_c q_c` constant there.
///
/// Computed as `q_c ∝ 1 / v_c`, which avoids forming products of many values.
pub fn q_of_subset(subset: &[usize], inst: &GameInstance) -> Result<SimplexVector> {
    let n = inst.num_contests();
    if subset.is_empty() {
        return Err(invalid("subset must be nonempty"));
    }
    let mut weights = vec![0.0; n];
    for &c in subset {
        if c >= n {
            return Err(invalid(format!("contest {c} out of range for {n} contests")));
        }
        if weights[c] != 0.0 {
            return Err(invalid(format!("contest {c} repeated in subset")));
        }
        weights[c] = 1.0 / inst.value(c);
    }
    SimplexVector::normalized(weights)
}

/// `UB(p)`: X's best payoff against Y's single-contest strategy with
/// selection probabilities `p` and the optimal participation probability.
pub fn eval_ub(p: &SimplexVector, inst: &GameInstance) -> f64 {
    let v = inst.values();
    let vp: f64 = v.iter().zip(p.iter()).map(|(a, b)| a * b).sum();
    let m = v.iter().zip(p.iter()).map(|(a, b)| a * b).fold(0.0, f64::max);
    let (x, y) = (inst.x(), inst.y());
    if (y / x) * vp <= m {
        1.0 - (y / (2.0 * x)) * vp * vp / m
    } else {
        1.0 - vp + (x / (2.0 * y)) * m
    }
}

/// `UB(q([k]))` in closed form.
pub fn ub_closed_form(k: usize, inst: &GameInstance) -> Result<f64> {
    let n = inst.num_contests();
    if k == 0 || k > n {
        return Err(invalid(format!("k must lie in 1..={n}, got {k}")));
    }
    // prod_{[k]} v / sum_l prod_{[k]\l} v == 1 / sum_{[k]} 1/v
    let r = 1.0 / inst.values()[..k].iter().map(|v| 1.0 / v).sum::<f64>();
    let (x, y, kf) = (inst.x(), inst.y(), k as f64);
    Ok(if kf * y <= x { 1.0 - 0.5 * kf * kf * (y / x) * r } else { 1.0 - (kf - x / (2.0 * y)) * r })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpperBoundResult {
    pub value: f64,
    pub k_star: usize,
    /// `q([k*])`.
    pub p_star: SimplexVector,
    /// `UB(q([k]))` for `k = 1..=C`.
    pub per_k: Vec<f64>,
}

pub fn solve_upper_bound(inst: &GameInstance) -> UpperBoundResult {
    let n = inst.num_contests();
    let per_k: Vec<f64> = (1..=n).map(|k| ub_closed_form(k, inst).expect("k in range")).collect();
    // strict comparison keeps the smallest k on ties
    let mut k_star = 1;
    for k in 2..=n {
        if per_k[k - 1] < per_k[k_star - 1] {
            k_star = k;
        }
    }
    let subset: Vec<usize> = (0..k_star).collect();
    UpperBoundResult {
        value: per_k[k_star - 1],
        k_star,
        p_star: q_of_subset(&subset, inst).expect("top-k subset is valid"),
        per_k,
    }
}

/// Everything `value` reports, with vectors in the caller's contest order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub lb: f64,
    pub ub: f64,
    pub gl: f64,
    pub gap: f64,
    pub level: f64,
    pub k_star: usize,
    pub alpha_star: Vec<f64>,
    pub p_star: Vec<f64>,
}

pub fn bounds_report(inst: &GameInstance) -> Result<BoundsReport> {
    let lower = solve_lower_bound(inst, DEFAULT_LEVEL_TOL)?;
    let upper = solve_upper_bound(inst);
    Ok(BoundsReport {
        lb: lower.value,
        ub: upper.value,
        gl: gl_equilibrium_value(inst),
        gap: upper.value - lower.value,
        level: lower.level,
        k_star: upper.k_star,
        alpha_star: inst.to_original(&lower.alpha_star),
        p_star: inst.to_original(&upper.p_star),
    })
}
