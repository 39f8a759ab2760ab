//! Constructive strategy families, exact best responses against them, and
//! seeded Monte Carlo estimation of the payoff of a strategy pair.
//!
//! Player X's family: each contest's marginal is an atom `1 - delta_c` at zero
//! plus `Uniform[0, 2 alpha_c X / delta_c]` with weight `delta_c`, so contest
//! `c` receives `alpha_c X` in expectation. Contests are sampled independently;
//! against a single-contest opponent only the marginals matter.
//!
//! Player Y's family: with probability `delta_y` pick one contest from `p` and
//! send it `Uniform[0, 2Y / delta_y]`; otherwise send nothing.
//!
//! Randomness comes from ChaCha8 with one stream per sample index
//! (`seed_from_u64(seed)` then `set_stream(index)`), so sharding the samples
//! across threads cannot change the result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{solve_lower_bound, solve_upper_bound, DEFAULT_LEVEL_TOL};
use crate::envelope::best_mixture;
use crate::error::{invalid, Result};
use crate::instance::{Allocation, GameInstance, SimplexVector, SingleAllocation};

/// `delta_c = min(alpha_c X / Y, 1)`.
pub fn optimal_deltas_x(alpha: &SimplexVector, inst: &GameInstance) -> Vec<f64> {
    alpha.iter().map(|a| (a * inst.x() / inst.y()).min(1.0)).collect()
}

/// `delta_y = min((v.p / max_c v_c p_c) (Y / X), 1)`.
pub fn optimal_delta_y(p: &SimplexVector, inst: &GameInstance) -> f64 {
    let v = inst.values();
    let vp: f64 = v.iter().zip(p.iter()).map(|(a, b)| a * b).sum();
    let m = v.iter().zip(p.iter()).map(|(a, b)| a * b).fold(0.0, f64::max);
    (vp / m * inst.y() / inst.x()).min(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct XHatStrategy {
    inst: GameInstance,
    alpha: SimplexVector,
    delta: Vec<f64>,
}

impl XHatStrategy {
    pub fn new(inst: &GameInstance, alpha: SimplexVector, delta: Vec<f64>) -> Result<Self> {
        let n = inst.num_contests();
        if alpha.len() != n || delta.len() != n {
            return Err(invalid("alpha and delta must have one entry per contest"));
        }
        for (c, (&a, &d)) in alpha.iter().zip(&delta).enumerate() {
            if !(0.0..=1.0).contains(&d) {
                return Err(invalid(format!("delta[{c}] = {d} outside [0, 1]")));
            }
            if a == 0.0 && d > 0.0 {
                return Err(invalid(format!("delta[{c}] must be 0 when alpha[{c}] = 0")));
            }
        }
        Ok(Self { inst: inst.clone(), alpha, delta })
    }

    /// The family member with `delta = optimal_deltas_x(alpha)`.
    pub fn with_optimal_deltas(inst: &GameInstance, alpha: SimplexVector) -> Self {
        let delta = optimal_deltas_x(&alpha, inst);
        Self { inst: inst.clone(), alpha, delta }
    }

    pub fn instance(&self) -> &GameInstance {
        &self.inst
    }

    pub fn alpha(&self) -> &SimplexVector {
        &self.alpha
    }

    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    /// Upper end of the uniform part on contest `c` (0 when X never shows up).
    pub fn cap(&self, c: usize) -> f64 {
        if self.delta[c] == 0.0 {
            0.0
        } else {
            2.0 * self.alpha[c] * self.inst.x() / self.delta[c]
        }
    }

    /// `P(x_c <= u)`.
    pub fn marginal_cdf(&self, c: usize, u: f64) -> f64 {
        if u < 0.0 {
            return 0.0;
        }
        let d = self.delta[c];
        if d == 0.0 {
            return 1.0;
        }
        1.0 - d + d * (u / self.cap(c)).min(1.0)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Allocation {
        let entries = (0..self.delta.len())
            .map(|c| {
                // two draws per contest keep the stream layout fixed
                let (show, u) = (rng.gen::<f64>(), rng.gen::<f64>());
                if show < self.delta[c] {
                    self.cap(c) * u
                } else {
                    0.0
                }
            })
            .collect();
        Allocation::new(entries).expect("samples are nonnegative")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct YHatStrategy {
    inst: GameInstance,
    p: SimplexVector,
    delta_y: f64,
}

impl YHatStrategy {
    pub fn new(inst: &GameInstance, p: SimplexVector, delta_y: f64) -> Result<Self> {
        if p.len() != inst.num_contests() {
            return Err(invalid("p must have one entry per contest"));
        }
        if !(0.0..=1.0).contains(&delta_y) {
            return Err(invalid(format!("delta_y = {delta_y} outside [0, 1]")));
        }
        Ok(Self { inst: inst.clone(), p, delta_y })
    }

    pub fn with_optimal_delta(inst: &GameInstance, p: SimplexVector) -> Self {
        let delta_y = optimal_delta_y(&p, inst);
        Self { inst: inst.clone(), p, delta_y }
    }

    pub fn p(&self) -> &SimplexVector {
        &self.p
    }

    pub fn delta_y(&self) -> f64 {
        self.delta_y
    }

    /// Upper end of the attack amount, `2Y / delta_y`.
    pub fn cap(&self) -> f64 {
        2.0 * self.inst.y() / self.delta_y
    }

    /// `None` means Y sends nothing anywhere.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<SingleAllocation> {
        let (show, pick, u) = (rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>());
        if show >= self.delta_y {
            return None;
        }
        let mut acc = 0.0;
        let mut contest = self.p.len() - 1;
        for (c, &pc) in self.p.iter().enumerate() {
            acc += pc;
            if pick < acc {
                contest = c;
                break;
            }
        }
        // guard against round-off in the cumulative sum landing on a zero entry
        while self.p[contest] == 0.0 && contest > 0 {
            contest -= 1;
        }
        Some(SingleAllocation { contest, amount: self.cap() * u })
    }
}

/// X's exact expected payoff for a pure allocation against a Y-family strategy.
pub fn expected_payoff_vs_yhat(x: &Allocation, strat: &YHatStrategy) -> Result<f64> {
    let inst = &strat.inst;
    if x.len() != inst.num_contests() {
        return Err(invalid("allocation length does not match contest count"));
    }
    let d = strat.delta_y;
    Ok(inst
        .values()
        .iter()
        .zip(strat.p.iter())
        .zip(x.iter())
        .map(|((v, p), xc)| {
            let win = if d == 0.0 { 1.0 } else { (d * xc / (2.0 * inst.y())).min(1.0) };
            v * ((1.0 - p * d) + p * d * win)
        })
        .sum())
}

/// X's best pure allocation (sum <= X) against a Y-family strategy.
///
/// Each contest pays at the constant rate `v_c p_c delta_y^2 / (2Y)` up to the
/// cap `2Y / delta_y`, so filling caps in decreasing rate order is exact.
pub fn best_response_x(strat: &YHatStrategy) -> (f64, Allocation) {
    let inst = &strat.inst;
    let n = inst.num_contests();
    let mut x = vec![0.0; n];
    if strat.delta_y > 0.0 {
        let cap = strat.cap();
        let rate = |c: usize| inst.value(c) * strat.p[c];
        let mut order: Vec<usize> = (0..n).filter(|&c| rate(c) > 0.0).collect();
        order.sort_by(|&a, &b| rate(b).total_cmp(&rate(a)).then(a.cmp(&b)));
        let mut left = inst.x();
        for c in order {
            if left <= 0.0 {
                break;
            }
            x[c] = cap.min(left);
            left -= x[c];
        }
    }
    let x = Allocation::new(x).expect("nonnegative fill");
    let payoff = expected_payoff_vs_yhat(&x, strat).expect("matching length");
    (payoff, x)
}

/// One atom of Y's best-response mixture.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Attack {
    pub weight: f64,
    /// `None` is the all-zero allocation.
    pub contest: Option<usize>,
    /// An amount of `0.0` on a contest means "an arbitrarily small positive amount".
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct YBestResponse {
    pub payoff_to_x: f64,
    pub mixture: Vec<Attack>,
}

/// Y's exact best response over single-contest mixtures with mean budget `Y`
/// against an X-family strategy.
///
/// Attacking contest `c` with `t > 0` wins `g_c(t) = v_c P(x_c < t)`, which is
/// affine from `(0+, v_c (1 - delta_c))` to `(cap_c, v_c)` and flat beyond, so the
/// envelope of those endpoints (plus the zero allocation) is exact.
pub fn best_response_y(strat: &XHatStrategy) -> YBestResponse {
    let inst = &strat.inst;
    let mut atoms = vec![(None, 0.0)];
    let mut costs = vec![0.0];
    let mut utils = vec![0.0];
    for c in 0..inst.num_contests() {
        let v = inst.value(c);
        let d = strat.delta[c];
        atoms.push((Some(c), 0.0));
        costs.push(0.0);
        utils.push(v * (1.0 - d));
        if d > 0.0 {
            atoms.push((Some(c), strat.cap(c)));
            costs.push(strat.cap(c));
            utils.push(v);
        }
    }
    let best = best_mixture(&costs, &utils, inst.y()).expect("zero allocation is affordable");
    YBestResponse {
        payoff_to_x: 1.0 - best.value,
        mixture: best
            .support
            .iter()
            .map(|&(i, weight)| Attack { weight, contest: atoms[i].0, amount: atoms[i].1 })
            .collect(),
    }
}

/// The RNG for sample `index` under `seed`.
pub fn sample_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

const MC_CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// Sample standard deviation over `sqrt(n)`; 0.5 (the largest possible
    /// standard deviation of a `[0, 1]` payoff) when `n == 1`.
    pub std_error: f64,
    pub n: u64,
}

pub fn monte_carlo_payoff(fx: &XHatStrategy, fy: &YHatStrategy, n: u64, seed: u64) -> Result<McEstimate> {
    if n == 0 {
        return Err(invalid("sample count must be at least 1"));
    }
    if fx.inst.values() != fy.inst.values() {
        return Err(invalid("strategies belong to different instances"));
    }
    let v = fx.inst.values();
    let chunks = n.div_ceil(MC_CHUNK);
    // (count, mean, M2) per chunk, merged in chunk order
    let parts: Vec<(f64, f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let (lo, hi) = (k * MC_CHUNK, ((k + 1) * MC_CHUNK).min(n));
            let (mut cnt, mut mean, mut m2) = (0.0, 0.0, 0.0);
            for i in lo..hi {
                let mut rng = sample_stream(seed, i);
                let x = fx.sample(&mut rng);
                let payoff = match fy.sample(&mut rng) {
                    Some(a) if x[a.contest] < a.amount => 1.0 - v[a.contest],
                    _ => 1.0,
                };
                cnt += 1.0;
                let delta = payoff - mean;
                mean += delta / cnt;
                m2 += delta * (payoff - mean);
            }
            (cnt, mean, m2)
        })
        .collect();
    let (mut cnt, mut mean, mut m2) = (0.0, 0.0, 0.0);
    for (cb, mb, m2b) in parts {
        let tot = cnt + cb;
        let delta = mb - mean;
        mean += delta * cb / tot;
        m2 += m2b + delta * delta * cnt * cb / tot;
        cnt = tot;
    }
    let std_error = if n == 1 { 0.5 } else { (m2 / (cnt - 1.0)).sqrt() / cnt.sqrt() };
    Ok(McEstimate { estimate: mean, std_error, n })
}

/// Monte Carlo check of the bound-achieving strategy pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub estimate: f64,
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
    pub lb: f64,
    pub ub: f64,
    /// `lb - 3 se <= estimate <= ub + 3 se`.
    pub within_bounds: bool,
    /// X's payoff when Y best-responds (over mixtures) to X's lower-bound strategy.
    pub br_y_payoff_to_x: f64,
    /// X's best payoff against Y's upper-bound strategy.
    pub br_x_payoff: f64,
}

pub fn simulate(inst: &GameInstance, n: u64, seed: u64) -> Result<SimulationReport> {
    let lower = solve_lower_bound(inst, DEFAULT_LEVEL_TOL)?;
    let upper = solve_upper_bound(inst);
    let fx = XHatStrategy::with_optimal_deltas(inst, lower.alpha_star);
    let fy = YHatStrategy::with_optimal_delta(inst, upper.p_star);
    let mc = monte_carlo_payoff(&fx, &fy, n, seed)?;
    let band = 3.0 * mc.std_error;
    Ok(SimulationReport {
        estimate: mc.estimate,
        std_error: mc.std_error,
        n,
        seed,
        lb: lower.value,
        ub: upper.value,
        within_bounds: mc.estimate >= lower.value - band && mc.estimate <= upper.value + band,
        br_y_payoff_to_x: best_response_y(&fx).payoff_to_x,
        br_x_payoff: best_response_x(&fy).0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::eval_h;
    use crate::instance::{payoff_pure, NormalizeMode};

    fn reference(y: f64) -> GameInstance {
        GameInstance::new(1.0, y, &[0.5, 0.3, 0.2], NormalizeMode::Strict).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn delta_x_examples() {
        let g = GameInstance::new(1.0, 1.5, &[1.0], NormalizeMode::Strict).unwrap();
        close(optimal_deltas_x(&SimplexVector::unit(0, 1), &g)[0], 2.0 / 3.0, 1e-15);
        let g = reference(0.4);
        let d = optimal_deltas_x(&SimplexVector::new(vec![0.6, 0.4, 0.0]).unwrap(), &g);
        assert_eq!(d, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn delta_y_examples() {
        let e1 = SimplexVector::unit(0, 3);
        close(optimal_delta_y(&e1, &reference(1.5)), 1.0, 0.0);
        close(optimal_delta_y(&e1, &reference(0.5)), 0.5, 1e-15);
        let g = GameInstance::new(1.0, 5.0, &[0.5, 0.3, 0.2], NormalizeMode::Strict).unwrap();
        let q = crate::bounds::q_of_subset(&[0, 1, 2], &g).unwrap();
        assert_eq!(optimal_delta_y(&q, &g), 1.0);
    }

    #[test]
    fn optimal_deltas_reproduce_level() {
        // T_LB(delta*, alpha) == 1 - H(alpha)
        let g = reference(0.8);
        let alpha = SimplexVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let d = optimal_deltas_x(&alpha, &g);
        let t_lb = (0..3)
            .map(|c| {
                let a = alpha[c];
                g.value(c) * (1.0 - d[c] + d[c] * d[c] * g.y() / (2.0 * a * g.x()))
            })
            .fold(f64::NEG_INFINITY, f64::max);
        close(t_lb, eval_h(&alpha, &g), 1e-14);
    }

    #[test]
    fn optimal_delta_y_reproduces_ub() {
        use crate::bounds::eval_ub;
        for y in [0.3, 0.9, 1.4, 2.5] {
            let g = reference(y);
            let p = SimplexVector::new(vec![0.2, 0.3, 0.5]).unwrap();
            let d = optimal_delta_y(&p, &g);
            let m = (0..3).map(|c| g.value(c) * p[c]).fold(0.0, f64::max);
            let vp: f64 = (0..3).map(|c| g.value(c) * p[c]).sum();
            let t = 1.0 - d * vp + d * d * g.x() / (2.0 * g.y()) * m;
            close(t, eval_ub(&p, &g), 1e-14);
        }
    }

    #[test]
    fn expected_payoff_examples() {
        let g = reference(1.5);
        let s = YHatStrategy::new(&g, SimplexVector::unit(0, 3), 1.0).unwrap();
        let x = Allocation::new(vec![1.0, 0.0, 0.0]).unwrap();
        close(expected_payoff_vs_yhat(&x, &s).unwrap(), 2.0 / 3.0, 1e-15);
        let p = SimplexVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let s = YHatStrategy::new(&g, p, 0.7).unwrap();
        let zero = Allocation::zeros(3);
        close(expected_payoff_vs_yhat(&zero, &s).unwrap(), 1.0 - 0.7 * 0.29, 1e-15);
        let big = Allocation::new(vec![2.0 * 1.5 / 0.7; 3]).unwrap();
        close(expected_payoff_vs_yhat(&big, &s).unwrap(), 1.0, 1e-15);
    }

    #[test]
    fn best_response_x_examples() {
        let g = reference(1.5);
        let s = YHatStrategy::new(&g, SimplexVector::unit(0, 3), 1.0).unwrap();
        let (pay, x) = best_response_x(&s);
        close(pay, 2.0 / 3.0, 1e-15);
        assert_eq!(&*x, &[1.0, 0.0, 0.0]);
        // budget exceeds every cap
        let g = GameInstance::new(100.0, 1.0, &[0.5, 0.3, 0.2], NormalizeMode::Strict).unwrap();
        let s = YHatStrategy::new(&g, SimplexVector::uniform(3), 1.0).unwrap();
        close(best_response_x(&s).0, 1.0, 1e-15);
    }

    /// Brute force over a lattice of allocations with total <= X.
    fn brute_best_x(s: &YHatStrategy, x_budget: f64, step: f64) -> f64 {
        let m = (x_budget / step).round() as usize;
        let mut best = f64::NEG_INFINITY;
        for i in 0..=m {
            for j in 0..=(m - i) {
                let k = m - i - j;
                let x = Allocation::new(vec![i as f64 * step, j as f64 * step, k as f64 * step]).unwrap();
                best = best.max(expected_payoff_vs_yhat(&x, s).unwrap());
            }
        }
        best
    }

    #[test]
    fn best_response_x_matches_lattice_search() {
        for (y, dy, p) in [(0.5, 0.8, [0.2, 0.3, 0.5]), (1.2, 0.5, [0.6, 0.1, 0.3]), (0.3, 1.0, [0.3, 0.3, 0.4])] {
            let g = reference(y);
            let s = YHatStrategy::new(&g, SimplexVector::new(p.to_vec()).unwrap(), dy).unwrap();
            let (pay, x) = best_response_x(&s);
            assert!(x.total() <= g.x() + 1e-12);
            let brute = brute_best_x(&s, g.x(), 0.01);
            assert!(pay >= brute - 1e-12);
            assert!(pay <= brute + 0.01);
        }
    }

    #[test]
    fn best_response_x_respects_upper_bound() {
        for y in [0.2, 0.5, 1.0, 1.5, 3.0] {
            let g = reference(y);
            let u = solve_upper_bound(&g);
            let s = YHatStrategy::with_optimal_delta(&g, u.p_star);
            assert!(best_response_x(&s).0 <= u.value + 1e-9);
        }
    }

    /// Y's value against X's marginals by brute force over single attacks and
    /// two-point mixtures on an amount lattice.
    fn brute_best_y(s: &XHatStrategy, step: f64, max_amount: f64) -> f64 {
        let g = s.instance();
        let mut pts = vec![(0.0, 0.0)];
        let tiny = 1e-12;
        for c in 0..g.num_contests() {
            let mut t = tiny;
            while t <= max_amount {
                // P(x_c < t) from the marginal formula
                let d = s.delta()[c];
                let p_less = if d == 0.0 { 1.0 } else { 1.0 - d + d * (d * t / (2.0 * s.alpha()[c] * g.x())).min(1.0) };
                pts.push((t, g.value(c) * p_less));
                t = if t == tiny { step } else { t + step };
            }
        }
        let y = g.y();
        let mut best = 0.0f64;
        for &(ca, ua) in &pts {
            if ca <= y {
                best = best.max(ua);
                for &(cb, ub) in &pts {
                    if cb > y {
                        let w = (y - ca) / (cb - ca);
                        best = best.max((1.0 - w) * ua + w * ub);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn best_response_y_examples() {
        let g = GameInstance::new(1.0, 0.5, &[1.0], NormalizeMode::Strict).unwrap();
        let s = XHatStrategy::with_optimal_deltas(&g, SimplexVector::unit(0, 1));
        close(best_response_y(&s).payoff_to_x, 0.75, 1e-15);

        // Y mixes an infinitesimal attack on contest 2 (X absent w.p. 7/8) with
        // a capped attack on contest 1: 1/2 (0.2625) + 1/2 (0.5) = 0.38125.
        let g = reference(1.0);
        let lb = solve_lower_bound(&g, DEFAULT_LEVEL_TOL).unwrap();
        let s = XHatStrategy::with_optimal_deltas(&g, lb.alpha_star);
        let br = best_response_y(&s);
        close(br.payoff_to_x, 0.61875, 1e-9);
        assert_eq!(br.mixture.len(), 2);
        close(brute_best_y(&s, 0.01, 4.0), 1.0 - br.payoff_to_x, 1e-9);

        let g = reference(0.8);
        let s = XHatStrategy::new(&g, SimplexVector::uniform(3), vec![0.0; 3]).unwrap();
        close(best_response_y(&s).payoff_to_x, 0.5, 1e-15);
    }

    #[test]
    fn best_response_y_matches_brute_force() {
        for y in [0.3, 0.7, 1.0, 1.6, 2.4] {
            let g = reference(y);
            for alpha in [[0.5, 0.3, 0.2], [0.7, 0.2, 0.1], [0.34, 0.33, 0.33]] {
                let s = XHatStrategy::with_optimal_deltas(&g, SimplexVector::new(alpha.to_vec()).unwrap());
                let exact = 1.0 - best_response_y(&s).payoff_to_x;
                let brute = brute_best_y(&s, 0.005, 8.0);
                assert!(exact >= brute - 1e-12, "y={y} {exact} < {brute}");
                assert!(exact <= brute + 5e-3, "y={y} {exact} >> {brute}");
            }
        }
    }

    #[test]
    fn deterministic_attacks_cannot_beat_level() {
        // Against attacks that spend at most Y deterministically, X keeps 1 - H(alpha).
        for y in [0.4, 1.0, 1.7] {
            let g = reference(y);
            let lb = solve_lower_bound(&g, DEFAULT_LEVEL_TOL).unwrap();
            let s = XHatStrategy::with_optimal_deltas(&g, lb.alpha_star.clone());
            for c in 0..3 {
                for k in 1..=100 {
                    let t = y * k as f64 / 100.0;
                    // Y wins with P(x_c < t) <= P(x_c <= t)
                    let won = g.value(c) * s.marginal_cdf(c, t);
                    assert!(won <= lb.level + 1e-12, "c={c} t={t}");
                }
            }
        }
    }

    #[test]
    fn zero_strategies_tie_everywhere() {
        let g = reference(1.0);
        let fx = XHatStrategy::new(&g, SimplexVector::uniform(3), vec![0.0; 3]).unwrap();
        let fy = YHatStrategy::new(&g, SimplexVector::uniform(3), 0.0).unwrap();
        let mc = monte_carlo_payoff(&fx, &fy, 10_000, 3).unwrap();
        assert_eq!(mc.estimate, 1.0);
        assert_eq!(mc.std_error, 0.0);
    }

    #[test]
    fn sampler_shortcut_matches_pure_payoff() {
        let g = reference(1.5);
        let fx = XHatStrategy::with_optimal_deltas(&g, SimplexVector::new(vec![0.5, 0.3, 0.2]).unwrap());
        let fy = YHatStrategy::with_optimal_delta(&g, SimplexVector::new(vec![0.2, 0.3, 0.5]).unwrap());
        let mut total = 0.0;
        for i in 0..2000 {
            let mut rng = sample_stream(11, i);
            let x = fx.sample(&mut rng);
            let y = fy.sample(&mut rng).map_or(Allocation::zeros(3), |a| a.to_allocation(3));
            total += payoff_pure(&x, &y, &g).unwrap();
        }
        let mc = monte_carlo_payoff(&fx, &fy, 2000, 11).unwrap();
        close(mc.estimate, total / 2000.0, 1e-12);
    }

    #[test]
    fn sampler_support_and_means() {
        let g = reference(1.5);
        let fx = XHatStrategy::with_optimal_deltas(&g, SimplexVector::new(vec![0.6, 0.4, 0.0]).unwrap());
        let n = 200_000;
        let mut sum = 0.0;
        for i in 0..n {
            let x = fx.sample(&mut sample_stream(5, i));
            for c in 0..3 {
                assert!(x[c] <= fx.cap(c));
            }
            assert_eq!(x[2], 0.0);
            sum += x.total();
        }
        close(sum / n as f64, g.x(), 0.01);

        let fy = YHatStrategy::new(&g, SimplexVector::unit(0, 3), 1.0).unwrap();
        for i in 0..1000 {
            let a = fy.sample(&mut sample_stream(5, i)).unwrap();
            assert_eq!(a.contest, 0);
            assert!(a.amount <= 2.0 * g.y());
        }
    }

    #[test]
    fn mc_is_deterministic_and_rejects_zero_samples() {
        let g = reference(1.5);
        let fx = XHatStrategy::with_optimal_deltas(&g, SimplexVector::unit(0, 3));
        let fy = YHatStrategy::with_optimal_delta(&g, SimplexVector::unit(0, 3));
        let a = monte_carlo_payoff(&fx, &fy, 50_000, 7).unwrap();
        let b = monte_carlo_payoff(&fx, &fy, 50_000, 7).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        assert!(monte_carlo_payoff(&fx, &fy, 0, 7).is_err());
        let one = monte_carlo_payoff(&fx, &fy, 1, 7).unwrap();
        assert_eq!(one.std_error, 0.5);
    }

    #[test]
    fn invalid_strategies_rejected() {
        let g = reference(1.0);
        assert!(XHatStrategy::new(&g, SimplexVector::unit(0, 3), vec![1.0, 0.5, 0.0]).is_err());
        assert!(XHatStrategy::new(&g, SimplexVector::unit(0, 3), vec![1.5, 0.0, 0.0]).is_err());
        assert!(YHatStrategy::new(&g, SimplexVector::unit(0, 3), 1.1).is_err());
        assert!(YHatStrategy::new(&g, SimplexVector::unit(0, 2), 1.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn payoff_vs_yhat_concave_nondecreasing(
                p in proptest::collection::vec(0.01f64..1.0, 3),
                dy in 0.05f64..1.0,
                x0 in proptest::collection::vec(0.0f64..4.0, 3),
                c in 0usize..3,
                a in 0.0f64..4.0,
                b in 0.0f64..4.0,
            ) {
                let g = reference(1.2);
                let s = YHatStrategy::new(&g, SimplexVector::normalized(p).unwrap(), dy).unwrap();
                let at = |t: f64| {
                    let mut x = x0.clone();
                    x[c] = t;
                    expected_payoff_vs_yhat(&Allocation::new(x).unwrap(), &s).unwrap()
                };
                let (lo, hi) = (a.min(b), a.max(b));
                prop_assert!(at(hi) >= at(lo) - 1e-15);
                prop_assert!(at(hi) <= 1.0 + 1e-15);
                prop_assert!(at(0.5 * (lo + hi)) >= 0.5 * (at(lo) + at(hi)) - 1e-12);
            }
        }
    }
}
