//! Mean-constrained maximization over a finite set of (cost, utility) points.
//!
//! Maximizing `sum rho_i u_i` over mixtures `rho` with `sum rho_i c_i <= budget`
//! is attained on the upper concave envelope of the points, by a pure point or
//! a two-point mixture.

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeMixture {
    pub value: f64,
    /// `(point index, weight)`, one or two entries, weights summing to one.
    pub support: Vec<(usize, f64)>,
}

/// Indices of `costs` sorted by cost ascending, utility-independent.
pub fn cost_order(costs: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..costs.len()).collect();
    order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]).then(a.cmp(&b)));
    order
}

/// Best mixture under an expected-cost budget. Returns `None` when no point is
/// affordable (budget below every cost) or there are no points.
pub fn best_mixture(costs: &[f64], utils: &[f64], budget: f64) -> Option<EnvelopeMixture> {
    best_mixture_sorted(&cost_order(costs), costs, utils, budget)
}

/// As [`best_mixture`], with `order` a precomputed [`cost_order`] of `costs`.
pub fn best_mixture_sorted(order: &[usize], costs: &[f64], utils: &[f64], budget: f64) -> Option<EnvelopeMixture> {
    // Points not beating every cheaper point never help; what remains has
    // strictly increasing cost and utility.
    let mut hull: Vec<usize> = Vec::new();
    let mut best_so_far = f64::NEG_INFINITY;
    let mut i = 0;
    while i < order.len() {
        let c = costs[order[i]];
        // best utility among equal-cost points, lowest index on ties
        let mut top = order[i];
        let mut j = i + 1;
        while j < order.len() && costs[order[j]] == c {
            if utils[order[j]] > utils[top] {
                top = order[j];
            }
            j += 1;
        }
        i = j;
        if utils[top] <= best_so_far {
            continue;
        }
        best_so_far = utils[top];
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or below the chord a -> top
            let lhs = (utils[b] - utils[a]) * (costs[top] - costs[a]);
            let rhs = (utils[top] - utils[a]) * (costs[b] - costs[a]);
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(top);
    }

    let first = *hull.first()?;
    if costs[first] > budget {
        return None;
    }
    let last = *hull.last()?;
    if costs[last] <= budget {
        return Some(EnvelopeMixture { value: utils[last], support: vec![(last, 1.0)] });
    }
    // costs[hull[k]] <= budget < costs[hull[k + 1]]
    let k = hull.partition_point(|&h| costs[h] <= budget) - 1;
    let (a, b) = (hull[k], hull[k + 1]);
    let w = (budget - costs[a]) / (costs[b] - costs[a]);
    let value = (1.0 - w) * utils[a] + w * utils[b];
    let support = if w == 0.0 { vec![(a, 1.0)] } else { vec![(a, 1.0 - w), (b, w)] };
    Some(EnvelopeMixture { value, support })
}
