//! Brute-force security values of a discretized game, for cross-checking the
//! analytic bounds on small instances.
//!
//! Both players pick mixtures over finite grids of pure allocations, with the
//! budget constraining only the mixture's mean cost. Fictitious play alternates
//! exact mean-constrained best responses against the opponent's empirical
//! mixture; every best-response value is a certified bound for the grid game.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::q_of_subset;
use crate::envelope::{best_mixture, best_mixture_sorted, cost_order, EnvelopeMixture};
use crate::error::{invalid, LottoError, Result};
use crate::instance::{payoff_unchecked, GameInstance};
use crate::strategy::sample_stream;

pub const DEFAULT_ITERS: usize = 20_000;
/// Largest contest count the grids are built for.
pub const MAX_CONTESTS_ORACLE: usize = 3;

/// What player Y may put on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum YGrid {
    /// At most one contest receives a positive amount.
    #[default]
    SingleContest,
    /// Any lattice allocation, i.e. the classic unrestricted game.
    Unrestricted,
}

/// Finite pure-strategy grids for both players. Allocations are stored flat,
/// `num_contests` entries per point, in the instance's sorted contest order.
#[derive(Debug, Clone)]
pub struct DiscreteGame {
    num_contests: usize,
    step: f64,
    cap: f64,
    x_points: Vec<f64>,
    x_costs: Vec<f64>,
    y_points: Vec<f64>,
    y_costs: Vec<f64>,
}

fn amounts(step: f64, cap: f64, offset: f64) -> Vec<f64> {
    let n = ((cap - offset) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| offset + i as f64 * step).collect()
}

fn push_point(points: &mut Vec<f64>, costs: &mut Vec<f64>, p: &[f64]) {
    points.extend_from_slice(p);
    costs.push(p.iter().sum());
}

fn full_lattice(c: usize, levels: &[f64]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::with_capacity(c)];
    for _ in 0..c {
        out = out
            .into_iter()
            .flat_map(|p| {
                levels.iter().map(move |&a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

impl DiscreteGame {
    /// Default step `0.05 * min(X, Y, 1)` and cap `4 * max(X, Y)`.
    pub fn with_defaults(inst: &GameInstance, y_grid: YGrid) -> Result<Self> {
        let step = 0.05 * inst.x().min(inst.y()).min(1.0);
        Self::new(inst, step, 4.0 * inst.x().max(inst.y()), y_grid)
    }

    pub fn new(inst: &GameInstance, step: f64, cap: f64, y_grid: YGrid) -> Result<Self> {
        let c = inst.num_contests();
        if c > MAX_CONTESTS_ORACLE {
            return Err(LottoError::UnsupportedSize(format!(
                "the oracle supports at most {MAX_CONTESTS_ORACLE} contests, got {c}"
            )));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(invalid(format!("grid step must be positive, got {step}")));
        }
        if !(cap.is_finite() && cap >= step) {
            return Err(invalid(format!("cap {cap} must be at least the grid step {step}")));
        }
        let x_levels = amounts(step, cap, 0.0);
        let (mut x_points, mut x_costs) = (Vec::new(), Vec::new());
        if c <= 2 {
            for p in full_lattice(c, &x_levels) {
                push_point(&mut x_points, &mut x_costs, &p);
            }
        } else {
            // at most two positive entries, plus the ray along q
            let mut p = vec![0.0; c];
            for i in 0..c {
                for j in (i + 1)..c {
                    for &a in &x_levels {
                        for &b in &x_levels {
                            p.iter_mut().for_each(|e| *e = 0.0);
                            p[i] = a;
                            p[j] = b;
                            push_point(&mut x_points, &mut x_costs, &p);
                        }
                    }
                }
            }
            let q = q_of_subset(&(0..c).collect::<Vec<_>>(), inst)?;
            for &t in &x_levels[1..] {
                let p: Vec<f64> = q.iter().map(|qc| t * qc).collect();
                push_point(&mut x_points, &mut x_costs, &p);
            }
            dedup_points(c, &mut x_points, &mut x_costs);
        }

        // offset amounts so Y never exactly ties a positive X amount
        let y_levels = amounts(step, cap, 0.5 * step);
        let (mut y_points, mut y_costs) = (Vec::new(), Vec::new());
        match y_grid {
            YGrid::SingleContest => {
                push_point(&mut y_points, &mut y_costs, &vec![0.0; c]);
                for i in 0..c {
                    for &b in &y_levels {
                        let mut p = vec![0.0; c];
                        p[i] = b;
                        push_point(&mut y_points, &mut y_costs, &p);
                    }
                }
            }
            YGrid::Unrestricted => {
                let mut levels = vec![0.0];
                levels.extend_from_slice(&y_levels);
                for p in full_lattice(c, &levels) {
                    push_point(&mut y_points, &mut y_costs, &p);
                }
            }
        }
        Ok(Self { num_contests: c, step, cap, x_points, x_costs, y_points, y_costs })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn num_x(&self) -> usize {
        self.x_costs.len()
    }

    pub fn num_y(&self) -> usize {
        self.y_costs.len()
    }

    pub fn x_point(&self, i: usize) -> &[f64] {
        &self.x_points[i * self.num_contests..(i + 1) * self.num_contests]
    }

    pub fn y_point(&self, j: usize) -> &[f64] {
        &self.y_points[j * self.num_contests..(j + 1) * self.num_contests]
    }

    pub fn x_costs(&self) -> &[f64] {
        &self.x_costs
    }

    pub fn y_costs(&self) -> &[f64] {
        &self.y_costs
    }
}

fn dedup_points(c: usize, points: &mut Vec<f64>, costs: &mut Vec<f64>) {
    let mut idx: Vec<usize> = (0..costs.len()).collect();
    let key = |i: usize| &points[i * c..(i + 1) * c];
    idx.sort_by(|&a, &b| {
        key(a).iter().zip(key(b)).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    idx.dedup_by(|a, b| key(*a) == key(*b));
    let (mut np, mut nc) = (Vec::with_capacity(idx.len() * c), Vec::with_capacity(idx.len()));
    for i in idx {
        np.extend_from_slice(key(i));
        nc.push(costs[i]);
    }
    *points = np;
    *costs = nc;
}

/// Maximize expected utility over mixtures whose mean cost is within `budget`.
pub fn mean_constrained_best_response(utilities: &[f64], costs: &[f64], budget: f64) -> Result<EnvelopeMixture> {
    if utilities.is_empty() || utilities.len() != costs.len() {
        return Err(invalid("utilities and costs must be nonempty and of equal length"));
    }
    best_mixture(costs, utilities, budget).ok_or_else(|| invalid(format!("no pure strategy costs at most {budget}")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Best certified lower bound on X's max-min value of the grid game.
    pub maxmin: f64,
    /// Best certified upper bound on X's min-max value of the grid game.
    pub minmax: f64,
    pub duality_gap: f64,
    pub grid_step: f64,
    pub cap: f64,
    pub iterations: usize,
    /// `(iteration, gap)` at powers of two and at the end.
    #[serde(skip)]
    pub gap_history: Vec<(usize, f64)>,
}

/// Fictitious play on `game`. The seed picks Y's opening pure strategy.
pub fn fictitious_play(game: &DiscreteGame, inst: &GameInstance, iters: usize, seed: u64) -> Result<OracleResult> {
    if iters == 0 {
        return Err(invalid("at least one iteration is required"));
    }
    if game.num_contests != inst.num_contests() {
        return Err(invalid("grid and instance disagree on the number of contests"));
    }
    let v = inst.values();
    let (nx, ny) = (game.num_x(), game.num_y());
    let x_order = cost_order(&game.x_costs);
    let y_order = cost_order(&game.y_costs);
    // cumulative payoffs to X of each X point (resp. to Y of each Y point)
    // against the opponent's unnormalized empirical mixture
    let mut cum_x = vec![0.0; nx];
    let mut cum_y = vec![0.0; ny];
    let mut weight = 0.0;

    let affordable: Vec<usize> = (0..ny).filter(|&j| game.y_costs[j] <= inst.y()).collect();
    let opening = affordable[sample_stream(seed, 0).gen_range(0..affordable.len())];
    let add_y = |cum_x: &mut [f64], support: &[(usize, f64)]| {
        cum_x.par_iter_mut().enumerate().with_min_len(4096).for_each(|(i, u)| {
            let a = game.x_point(i);
            *u += support.iter().map(|&(j, w)| w * payoff_unchecked(a, game.y_point(j), v)).sum::<f64>();
        });
    };
    add_y(&mut cum_x, &[(opening, 1.0)]);
    weight += 1.0;

    let (mut maxmin, mut minmax) = (0.0f64, 1.0f64);
    let mut gap_history = Vec::new();
    for t in 1..=iters {
        let bx = best_mixture_sorted(&x_order, &game.x_costs, &cum_x, inst.x()).expect("zero allocation is affordable");
        minmax = minmax.min(bx.value / weight);
        cum_y.par_iter_mut().enumerate().with_min_len(4096).for_each(|(j, u)| {
            let b = game.y_point(j);
            *u += bx.support.iter().map(|&(i, w)| w * (1.0 - payoff_unchecked(game.x_point(i), b, v))).sum::<f64>();
        });
        // cum_y now holds Y payoffs against t X plays
        let by = best_mixture_sorted(&y_order, &game.y_costs, &cum_y, inst.y()).expect("zero allocation is affordable");
        maxmin = maxmin.max(1.0 - by.value / t as f64);
        add_y(&mut cum_x, &by.support);
        weight += 1.0;
        if t.is_power_of_two() || t == iters {
            gap_history.push((t, minmax - maxmin));
        }
    }
    log::debug!("fictitious play: {nx} x {ny} grid, gap {:.3e}", minmax - maxmin);
    Ok(OracleResult {
        maxmin,
        minmax,
        duality_gap: minmax - maxmin,
        grid_step: game.step,
        cap: game.cap,
        iterations: iters,
        gap_history,
    })
}

/// Oracle on the default single-contest grids, or with an explicit step.
pub fn solve_oracle(inst: &GameInstance, step: Option<f64>, iters: usize, seed: u64) -> Result<OracleResult> {
    let game = match step {
        Some(h) => DiscreteGame::new(inst, h, 4.0 * inst.x().max(inst.y()), YGrid::SingleContest)?,
        None => DiscreteGame::with_defaults(inst, YGrid::SingleContest)?,
    };
    fictitious_play(&game, inst, iters, seed)
}
