//! Bounds for the generalization in which player Y attacks exactly `K` contests.
//!
//! Both objectives are nonconvex, but any feasible point gives a valid bound, so
//! the optimizers only ever report the objective at a feasible point. Search is
//! multi-start Nelder-Mead over unconstrained coordinates: simplex variables go
//! through a softmax, the shared participation probability through a hard
//! sigmoid `clamp(1/2 + s/2, 0, 1)`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, LottoError, Result};
use crate::instance::{GameInstance, SimplexVector, SUM_TOL};
use crate::nelder_mead::{minimize, NelderMeadConfig};
use crate::strategy::sample_stream;

/// Largest contest count accepted when `K >= 2`.
pub const MAX_CONTESTS_MULTI: usize = 12;
/// Floor applied to `alpha_c` inside `v_c / alpha_c`.
pub const ALPHA_FLOOR: f64 = 1e-12;
pub const DEFAULT_RESTARTS: usize = 50;

/// All size-`k` subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=(n - (k - cur.len())) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn check_k(inst: &GameInstance, k: usize) -> Result<()> {
    let n = inst.num_contests();
    if k == 0 || k > n {
        return Err(invalid(format!("K must lie in 1..={n}, got {k}")));
    }
    if k >= 2 && n > MAX_CONTESTS_MULTI {
        return Err(LottoError::UnsupportedSize(format!(
            "K >= 2 supports at most {MAX_CONTESTS_MULTI} contests, got {n}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct KLowerVars {
    pub alpha: SimplexVector,
    pub delta: f64,
    pub k: usize,
}

impl KLowerVars {
    pub fn new(inst: &GameInstance, alpha: SimplexVector, delta: f64, k: usize) -> Result<Self> {
        check_k(inst, k)?;
        if alpha.len() != inst.num_contests() {
            return Err(invalid("alpha must have one entry per contest"));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(invalid(format!("delta = {delta} outside [0, 1]")));
        }
        Ok(Self { alpha, delta, k })
    }
}

fn lower_objective(alpha: &[f64], delta: f64, subsets: &[Vec<usize>], inst: &GameInstance) -> f64 {
    let v = inst.values();
    let kappa = inst.y() / (2.0 * inst.x());
    let worst = subsets
        .iter()
        .map(|s| {
            let v_s: f64 = s.iter().map(|&c| v[c]).sum();
            let spread = if delta == 0.0 {
                0.0
            } else {
                s.iter().map(|&c| v[c] / alpha[c].max(ALPHA_FLOOR)).fold(0.0, f64::max)
            };
            v_s * (1.0 - delta) + delta * delta * kappa * spread
        })
        .fold(f64::NEG_INFINITY, f64::max);
    1.0 - worst
}

/// `1 - max_S H_S(alpha, delta)`: a lower bound on X's max-min value.
pub fn eval_lower_k(vars: &KLowerVars, inst: &GameInstance) -> f64 {
    lower_objective(&vars.alpha, vars.delta, &subsets(inst.num_contests(), vars.k), inst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct KUpperVars {
    pub k: usize,
    /// Lexicographic size-`k` subsets; `p` and `beta` are aligned with them.
    pub subsets: Vec<Vec<usize>>,
    pub p: Vec<f64>,
    /// `beta[i][j]` is the share for contest `subsets[i][j]`.
    pub beta: Vec<Vec<f64>>,
}

impl KUpperVars {
    pub fn new(inst: &GameInstance, k: usize, p: Vec<f64>, beta: Vec<Vec<f64>>) -> Result<Self> {
        check_k(inst, k)?;
        let subsets = subsets(inst.num_contests(), k);
        if p.len() != subsets.len() || beta.len() != subsets.len() {
            return Err(invalid(format!("expected {} subset weights", subsets.len())));
        }
        SimplexVector::new(p.clone())?;
        for (i, b) in beta.iter().enumerate() {
            if b.len() != k {
                return Err(invalid(format!("beta for subset {i} must have {k} entries")));
            }
            if b.iter().any(|x| !(x.is_finite() && *x >= 0.0)) || (b.iter().sum::<f64>() - 1.0).abs() > SUM_TOL {
                return Err(invalid(format!("beta for subset {i} must lie on the simplex")));
            }
        }
        Ok(Self { k, subsets, p, beta })
    }

    /// Singleton subsets with `beta = 1`.
    pub fn singletons(inst: &GameInstance, p: &SimplexVector) -> Result<Self> {
        Self::new(inst, 1, p.to_vec(), vec![vec![1.0]; p.len()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperKValue {
    pub value: f64,
    /// Some `beta_{S,c} = 0` with `p_S > 0`: the bound degenerates to 1.
    pub vacuous: bool,
}

/// Upper bound on X's min-max value at a feasible `(p, beta)`.
pub fn eval_upper_k(vars: &KUpperVars, inst: &GameInstance) -> UpperKValue {
    upper_objective(&vars.subsets, &vars.p, &vars.beta, inst)
}

fn upper_objective(subsets: &[Vec<usize>], p: &[f64], beta: &[Vec<f64>], inst: &GameInstance) -> UpperKValue {
    let v = inst.values();
    let mut t1 = 0.0;
    let mut load = vec![0.0; v.len()];
    for ((s, &ps), b) in subsets.iter().zip(p).zip(beta) {
        if ps == 0.0 {
            continue;
        }
        for (&c, &bc) in s.iter().zip(b) {
            if bc == 0.0 {
                return UpperKValue { value: 1.0, vacuous: true };
            }
            t1 += v[c] * ps;
            load[c] += ps / bc;
        }
    }
    let t2 = inst.x() / (2.0 * inst.y()) * v.iter().zip(&load).map(|(vc, l)| vc * l).fold(0.0, f64::max);
    let value = if t1 <= 2.0 * t2 { 1.0 - t1 * t1 / (4.0 * t2) } else { 1.0 - t1 + t2 };
    UpperKValue { value, vacuous: false }
}

fn softmax(z: &[f64]) -> Vec<f64> {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = z.iter().map(|x| (x - m).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

fn hard_sigmoid(s: f64) -> f64 {
    (0.5 + 0.5 * s).clamp(0.0, 1.0)
}

/// Log-coordinates of a Dirichlet(1) draw.
fn dirichlet_logits<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| (-(1.0 - rng.gen::<f64>()).ln()).ln()).collect()
}

/// Minimize a convex function on `[0, 1]` by golden-section search.
fn golden_min<F: Fn(f64) -> f64>(f: F) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0, 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[derive(Debug, Clone, PartialEq)]
pub struct KLowerSolution {
    pub value: f64,
    pub vars: KLowerVars,
    /// Index of the restart that produced the reported point.
    pub restart: usize,
}

/// Multi-start search for a good feasible `(alpha, delta)`.
///
/// Restart 0 starts from `alpha = v`; the rest start from Dirichlet(1) draws on
/// stream `restart` of `seed`. Each result gets its `delta` re-optimized
/// exactly (the objective is convex in `delta` for fixed `alpha`).
pub fn optimize_lower_k(inst: &GameInstance, k: usize, restarts: usize, seed: u64) -> Result<KLowerSolution> {
    check_k(inst, k)?;
    if restarts == 0 {
        return Err(invalid("at least one restart is required"));
    }
    let n = inst.num_contests();
    let subs = subsets(n, k);
    let objective = |z: &[f64]| -lower_objective(&softmax(&z[..n]), hard_sigmoid(z[n]), &subs, inst);
    let mut steps = vec![1.0; n];
    steps.push(0.5);

    let candidates: Vec<(f64, Vec<f64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = sample_stream(seed, r as u64);
            let mut start =
                if r == 0 { inst.values().iter().map(|v| v.ln()).collect() } else { dirichlet_logits(&mut rng, n) };
            start.push(if r == 0 { 0.0 } else { 2.0 * rng.gen::<f64>() - 1.0 });
            let found = minimize(objective, &start, &steps, NelderMeadConfig::default());
            let alpha = softmax(&found.point[..n]);
            let nm_delta = hard_sigmoid(found.point[n]);
            let (polished, value) = golden_min(|d| -lower_objective(&alpha, d, &subs, inst));
            let mut best = (-value, polished);
            for d in [nm_delta, 0.0, 1.0] {
                let val = lower_objective(&alpha, d, &subs, inst);
                if val > best.0 {
                    best = (val, d);
                }
            }
            (best.0, alpha, best.1)
        })
        .collect();

    let (restart, (value, alpha, delta)) = candidates
        .into_iter()
        .enumerate()
        .reduce(|acc, cur| if cur.1 .0 > acc.1 .0 { cur } else { acc })
        .expect("restarts >= 1");
    let alpha = SimplexVector::normalized(alpha)?;
    let vars = KLowerVars::new(inst, alpha, delta, k)?;
    // report the objective exactly as evaluated on the stored point
    let value_checked = eval_lower_k(&vars, inst);
    debug_assert!((value_checked - value).abs() < 1e-9);
    Ok(KLowerSolution { value: value_checked, vars, restart })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KUpperSolution {
    pub value: f64,
    pub vars: KUpperVars,
    pub restart: usize,
}

/// Multi-start search for a good feasible `(p, beta)`.
///
/// Restart 0 starts from uniform subset weights with `beta` proportional to
/// `1 / v_c` inside each subset; the rest from Dirichlet(1) draws.
pub fn optimize_upper_k(inst: &GameInstance, k: usize, restarts: usize, seed: u64) -> Result<KUpperSolution> {
    check_k(inst, k)?;
    if restarts == 0 {
        return Err(invalid("at least one restart is required"));
    }
    let subs = subsets(inst.num_contests(), k);
    let m = subs.len();
    // beta is fixed at 1 when K == 1
    let beta_dims = if k == 1 { 0 } else { m * k };
    let decode = |z: &[f64]| -> (Vec<f64>, Vec<Vec<f64>>) {
        let p = softmax(&z[..m]);
        let beta =
            if k == 1 { vec![vec![1.0]; m] } else { (0..m).map(|i| softmax(&z[m + i * k..m + (i + 1) * k])).collect() };
        (p, beta)
    };
    let objective = |z: &[f64]| {
        let (p, beta) = decode(z);
        upper_objective(&subs, &p, &beta, inst).value
    };
    let steps = vec![1.0; m + beta_dims];

    let candidates: Vec<(f64, Vec<f64>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = sample_stream(seed, r as u64);
            let start: Vec<f64> = if r == 0 {
                let mut z = vec![0.0; m];
                if k > 1 {
                    for s in &subs {
                        z.extend(s.iter().map(|&c| -inst.value(c).ln()));
                    }
                }
                z
            } else {
                let mut z = dirichlet_logits(&mut rng, m);
                for _ in 0..(beta_dims / k.max(1)) {
                    z.extend(dirichlet_logits(&mut rng, k));
                }
                z
            };
            let found = minimize(objective, &start, &steps, NelderMeadConfig::default());
            (found.value, found.point)
        })
        .collect();

    let (restart, (_, point)) = candidates
        .into_iter()
        .enumerate()
        .reduce(|acc, cur| if cur.1 .0 < acc.1 .0 { cur } else { acc })
        .expect("restarts >= 1");
    let (p, beta) = decode(&point);
    // renormalize so the stored point passes the feasibility checks exactly
    let p = SimplexVector::normalized(p)?.into_inner();
    let vars = KUpperVars::new(inst, k, p, beta)?;
    let value = eval_upper_k(&vars, inst).value;
    Ok(KUpperSolution { value, vars, restart })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerKReport {
    pub value: f64,
    pub alpha: Vec<f64>,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetWeight {
    /// 1-based contest labels in the caller's order.
    pub subset: Vec<usize>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperKReport {
    pub value: f64,
    pub p_by_subset: Vec<SubsetWeight>,
    /// Aligned with `p_by_subset`, one share per listed contest.
    pub beta: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiReport {
    #[serde(rename = "K")]
    pub k: usize,
    pub lower: LowerKReport,
    pub upper: UpperKReport,
    pub restarts: usize,
    pub seed: u64,
}

pub fn multi_report(inst: &GameInstance, k: usize, restarts: usize, seed: u64) -> Result<MultiReport> {
    let lower = optimize_lower_k(inst, k, restarts, seed)?;
    let upper = optimize_upper_k(inst, k, restarts, seed)?;
    let order = inst.order();
    let mut p_by_subset = Vec::with_capacity(upper.vars.subsets.len());
    let mut beta = Vec::with_capacity(upper.vars.subsets.len());
    for ((s, &w), b) in upper.vars.subsets.iter().zip(&upper.vars.p).zip(&upper.vars.beta) {
        // list contests in the caller's order
        let mut pairs: Vec<(usize, f64)> = s.iter().map(|&c| order[c] + 1).zip(b.iter().copied()).collect();
        pairs.sort_by_key(|p| p.0);
        p_by_subset.push(SubsetWeight { subset: pairs.iter().map(|p| p.0).collect(), weight: w });
        beta.push(pairs.iter().map(|p| p.1).collect());
    }
    Ok(MultiReport {
        k,
        lower: LowerKReport { value: lower.value, alpha: inst.to_original(&lower.vars.alpha), delta: lower.vars.delta },
        upper: UpperKReport { value: upper.value, p_by_subset, beta },
        restarts,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{eval_ub, solve_lower_bound, solve_upper_bound, DEFAULT_LEVEL_TOL};
    use crate::instance::{gl_value, NormalizeMode};

    fn reference(y: f64) -> GameInstance {
        GameInstance::new(1.0, y, &[0.5, 0.3, 0.2], NormalizeMode::Strict).unwrap()
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(4, 1).len(), 4);
        assert_eq!(subsets(6, 3).len(), 20);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn lower_k_examples() {
        let g = reference(0.7);
        let vars = KLowerVars::new(&g, SimplexVector::uniform(3), 0.0, 2).unwrap();
        assert!((eval_lower_k(&vars, &g) - 0.2).abs() < 1e-15);
        let g = GameInstance::new(2.0, 1.0, &[0.5, 0.3, 0.2], NormalizeMode::Strict).unwrap();
        let vars = KLowerVars::new(&g, SimplexVector::new(vec![0.5, 0.3, 0.2]).unwrap(), 1.0, 3).unwrap();
        assert!((eval_lower_k(&vars, &g) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn lower_k_zero_alpha_is_floored() {
        let g = reference(1.0);
        let vars = KLowerVars::new(&g, SimplexVector::unit(0, 3), 0.5, 1).unwrap();
        assert!(eval_lower_k(&vars, &g) < -1e9);
    }

    #[test]
    fn upper_k_examples() {
        let g = reference(1.0);
        let vars = KUpperVars::new(&g, 2, vec![1.0, 0.0, 0.0], vec![vec![0.5, 0.5]; 3]).unwrap();
        let u = eval_upper_k(&vars, &g);
        assert!((u.value - 0.68).abs() < 1e-15);
        assert!(!u.vacuous);
        let vars = KUpperVars::new(&g, 2, vec![1.0 / 3.0; 3], vec![vec![0.5, 0.5]; 3]).unwrap();
        let u = eval_upper_k(&vars, &g).value;
        assert!((0.0..=1.0).contains(&u));
    }

    #[test]
    fn upper_k_zero_beta_is_vacuous() {
        let g = reference(1.0);
        let vars =
            KUpperVars::new(&g, 2, vec![1.0, 0.0, 0.0], vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert_eq!(eval_upper_k(&vars, &g), UpperKValue { value: 1.0, vacuous: true });
        // a zero beta under a zero-weight subset is harmless
        let vars =
            KUpperVars::new(&g, 2, vec![0.0, 1.0, 0.0], vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(!eval_upper_k(&vars, &g).vacuous);
    }

    #[test]
    fn upper_k1_matches_single_ub() {
        let g = reference(0.9);
        let p = SimplexVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let vars = KUpperVars::singletons(&g, &p).unwrap();
        assert!((eval_upper_k(&vars, &g).value - eval_ub(&p, &g)).abs() < 1e-12);
    }

    #[test]
    fn infeasible_vars_rejected() {
        let g = reference(1.0);
        assert!(KLowerVars::new(&g, SimplexVector::uniform(3), 1.5, 1).is_err());
        assert!(KLowerVars::new(&g, SimplexVector::uniform(3), 0.5, 4).is_err());
        assert!(KLowerVars::new(&g, SimplexVector::uniform(3), 0.5, 0).is_err());
        assert!(KUpperVars::new(&g, 2, vec![0.5, 0.5], vec![vec![0.5, 0.5]; 2]).is_err());
        assert!(KUpperVars::new(&g, 2, vec![0.5, 0.5, 0.0], vec![vec![0.7, 0.5]; 3]).is_err());
    }

    #[test]
    fn unsupported_size() {
        let v = vec![1.0 / 13.0; 13];
        let g = GameInstance::new(1.0, 1.0, &v, NormalizeMode::Strict).unwrap();
        assert!(matches!(optimize_lower_k(&g, 2, 1, 0), Err(LottoError::UnsupportedSize(_))));
        assert!(optimize_lower_k(&g, 1, 1, 0).is_ok());
    }

    #[test]
    fn lower_k1_below_single_lower_bound() {
        for y in [0.5, 1.0, 1.5] {
            let g = reference(y);
            let lb = solve_lower_bound(&g, DEFAULT_LEVEL_TOL).unwrap().value;
            let sol = optimize_lower_k(&g, 1, 10, 4).unwrap();
            assert!(sol.value <= lb + 1e-9, "y={y}: {} > {lb}", sol.value);
            assert!(sol.value >= 1.0 - 0.5);
        }
    }

    #[test]
    fn lower_k_full_recovers_gl_when_x_dominates() {
        let g = GameInstance::new(2.0, 1.0, &[0.5, 0.3, 0.2], NormalizeMode::Strict).unwrap();
        let sol = optimize_lower_k(&g, 3, 10, 1).unwrap();
        assert!(sol.value >= gl_value(2.0, 1.0) - 5e-3);
    }

    #[test]
    fn upper_k1_recovers_top_k() {
        for y in [0.5, 1.0, 1.5] {
            let g = reference(y);
            let ub = solve_upper_bound(&g).value;
            let lb = solve_lower_bound(&g, DEFAULT_LEVEL_TOL).unwrap().value;
            let sol = optimize_upper_k(&g, 1, 10, 4).unwrap();
            assert!(sol.value <= ub + 5e-3, "y={y}: {} vs {ub}", sol.value);
            assert!(sol.value >= lb - 1e-9);
        }
    }

    #[test]
    fn optimizers_are_deterministic() {
        let g = reference(1.2);
        let a = optimize_upper_k(&g, 2, 8, 99).unwrap();
        let b = optimize_upper_k(&g, 2, 8, 99).unwrap();
        assert_eq!(a, b);
        let a = optimize_lower_k(&g, 2, 8, 99).unwrap();
        let b = optimize_lower_k(&g, 2, 8, 99).unwrap();
        assert_eq!(a, b);
    }

    fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
        // sparse draws hit the boundary cases too
        let w: Vec<f64> =
            (0..n).map(|_| if rng.gen::<f64>() < 0.2 { 0.0 } else { -(1.0 - rng.gen::<f64>()).ln() }).collect();
        let s: f64 = w.iter().sum();
        if s == 0.0 {
            let mut e = vec![0.0; n];
            e[rng.gen_range(0..n)] = 1.0;
            return e;
        }
        SimplexVector::normalized(w).unwrap().into_inner()
    }

    #[test]
    fn feasible_points_bracket() {
        let mut rng = sample_stream(2024, 0);
        for c in 1..=5usize {
            for k in 1..=c.min(3) {
                for _ in 0..1000 {
                    let raw: Vec<f64> = (0..c).map(|_| rng.gen_range(0.05..1.0)).collect();
                    let x = rng.gen_range(0.2..3.0);
                    let y = rng.gen_range(0.2..3.0);
                    let g = GameInstance::new(x, y, &raw, NormalizeMode::Normalize).unwrap();
                    let alpha = SimplexVector::new(random_simplex(&mut rng, c)).unwrap();
                    let delta = if rng.gen::<f64>() < 0.1 { 0.0 } else { rng.gen::<f64>() };
                    let lower = eval_lower_k(&KLowerVars::new(&g, alpha, delta, k).unwrap(), &g);
                    let m = subsets(c, k).len();
                    let p = random_simplex(&mut rng, m);
                    let beta = (0..m).map(|_| random_simplex(&mut rng, k)).collect();
                    let upper = eval_upper_k(&KUpperVars::new(&g, k, p, beta).unwrap(), &g).value;
                    assert!(lower <= upper + 1e-12, "C={c} K={k}: {lower} > {upper}");
                }
            }
        }
    }

    #[test]
    fn upper_k1_identity_on_random_p() {
        let mut rng = sample_stream(5, 0);
        let g = reference(0.8);
        for _ in 0..100 {
            let p = SimplexVector::new(random_simplex(&mut rng, 3)).unwrap();
            let vars = KUpperVars::singletons(&g, &p).unwrap();
            assert!((eval_upper_k(&vars, &g).value - eval_ub(&p, &g)).abs() < 1e-12);
        }
    }

    #[test]
    fn report_lists_subsets_in_caller_order() {
        let g = GameInstance::new(1.0, 1.0, &[0.2, 0.5, 0.3], NormalizeMode::Strict).unwrap();
        let r = multi_report(&g, 2, 4, 0).unwrap();
        let labels: Vec<Vec<usize>> = r.upper.p_by_subset.iter().map(|s| s.subset.clone()).collect();
        // canonical subsets {0,1},{0,2},{1,2} map to caller contests {2,3},{1,2},{1,3}
        assert_eq!(labels, vec![vec![2, 3], vec![1, 2], vec![1, 3]]);
        assert!(r.lower.value <= r.upper.value + 1e-9);
    }
}
