//! The integral map `y(t) = x(t) + ∫_0^t h(y(s)) ds` for Lipschitz `h`.
//!
//! Between breakpoints of `x` the solution is marched on a sub-grid with
//! per-cell Picard iteration (trapezoidal quadrature); at each breakpoint
//! the jump of `x` is added to `y` exactly, so the jumps of `y` coincide
//! with those of `x` in location and size bit-for-bit.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::m1::m1_distance;
use crate::path::CadlagPath;
use crate::regularize::{regularize, RegularizedRep};

/// Picard convergence tolerance, relative to `1 + |y|`.
const PICARD_TOL: f64 = 1e-12;
const PICARD_MAX_ITERS: usize = 200;

#[derive(Clone)]
enum DriftKind {
    Zero,
    /// `h(w) = -rate * w`.
    Linear { rate: f64 },
    /// `h(w) = -mu (w ∧ 0) - theta (w ∨ 0)`.
    Qed { mu: f64, theta: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A Lipschitz integrand `w ↦ h(w)` with its declared constant.
#[derive(Clone)]
pub struct LipschitzDrift {
    kind: DriftKind,
    /// Declared Lipschitz constant.
    pub lipschitz: f64,
    pub name: String,
}

impl std::fmt::Debug for LipschitzDrift {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LipschitzDrift({}, c={})", self.name, self.lipschitz)
    }
}

impl LipschitzDrift {
    pub fn zero() -> Self {
        Self {
            kind: DriftKind::Zero,
            lipschitz: 0.0,
            name: "zero".into(),
        }
    }

    pub fn linear(rate: f64) -> Self {
        Self {
            kind: DriftKind::Linear { rate },
            lipschitz: rate.abs(),
            name: format!("linear:c={rate}"),
        }
    }

    /// The queueing drift `h(w) = -mu (w ∧ 0) - theta (w ∨ 0)`.
    pub fn qed(mu: f64, theta: f64) -> Self {
        Self {
            kind: DriftKind::Qed { mu, theta },
            lipschitz: mu.abs().max(theta.abs()),
            name: format!("qed:mu={mu},theta={theta}"),
        }
    }

    pub fn custom(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        lipschitz: f64,
        name: &str,
    ) -> Self {
        Self {
            kind: DriftKind::Custom(Arc::new(f)),
            lipschitz,
            name: name.into(),
        }
    }

    pub fn eval(&self, w: f64) -> f64 {
        match &self.kind {
            DriftKind::Zero => 0.0,
            DriftKind::Linear { rate } => -rate * w,
            DriftKind::Qed { mu, theta } => -mu * w.min(0.0) - theta * w.max(0.0),
            DriftKind::Custom(f) => f(w),
        }
    }
}

/// Solution of the integral map with the sub-grid width and a conservative
/// a-posteriori error bound.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: CadlagPath,
    /// Sub-grid width actually used (input `step` capped at `1/(2c)`).
    pub step: f64,
    /// `K * step * e^{cT}` with `K = sup|h(y)|` plus a local-variation
    /// proxy; dominates the change under step refinement.
    pub error_bound: f64,
}

/// Picks `y_right` so that `y_right - y_left` rounds to exactly `jump`.
fn propagate_jump(y_left: f64, jump: f64) -> f64 {
    let mut best = y_left + jump;
    if best - y_left == jump {
        return best;
    }
    let mut up = best;
    let mut down = best;
    for _ in 0..8 {
        up = up.next_up();
        down = down.next_down();
        if up - y_left == jump {
            return up;
        }
        if down - y_left == jump {
            return down;
        }
    }
    // No representable neighbor reproduces the jump exactly (only possible
    // at extreme magnitude mismatches); keep the rounded value.
    if (best - y_left - jump).abs() > (best.next_up() - y_left - jump).abs() {
        best = best.next_up();
    }
    best
}

/// Solves `y = x + ∫ h(y)` on `[0, T]`. Jumps of `x` are injected into `y`
/// exactly at their locations; between jumps the solution is marched with
/// Picard-iterated trapezoidal steps no wider than `step` (and no wider
/// than `1/(2c)` so each fixed-point iteration is a contraction).
pub fn solve_map(x: &CadlagPath, h: &LipschitzDrift, step: f64) -> Result<SolveReport> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "step must be positive, got {step}"
        )));
    }
    let horizon = x.horizon();
    let c = h.lipschitz;
    let substep = if c > 0.0 { step.min(0.5 / c) } else { step };

    let jumps = x.jumps(0.0);
    let mut bounds: Vec<f64> = vec![0.0];
    bounds.extend(jumps.iter().map(|j| j.location));
    if *bounds.last().unwrap() < horizon {
        bounds.push(horizon);
    }

    let mut nodes: Vec<(f64, f64)> = Vec::new();
    let mut y = x.initial();
    nodes.push((0.0, y));
    let mut h_sup = h.eval(y).abs();
    let mut osc_max = 0.0f64;

    let node_times: Vec<f64> = x.linear_nodes().iter().map(|&(t, _)| t).collect();
    let mut jump_iter = jumps.iter().peekable();

    for w in bounds.windows(2) {
        let (a, b) = (w[0], w[1]);
        // Grid: x's interior kinks plus uniform refinement to the substep.
        let mut base: Vec<f64> = vec![a];
        for &t in &node_times {
            if t > a && t < b {
                base.push(t);
            }
        }
        base.push(b);
        base.dedup();
        let mut grid: Vec<f64> = Vec::new();
        for bw in base.windows(2) {
            let (t0, t1) = (bw[0], bw[1]);
            let k = ((t1 - t0) / substep).ceil().max(1.0) as usize;
            for l in 0..k {
                grid.push(t0 + (t1 - t0) * l as f64 / k as f64);
            }
        }
        grid.push(b);

        // x values along the grid; the right endpoint uses the left limit
        // so that a jump at b stays out of this interval.
        let xv: Vec<f64> = grid
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                if i == grid.len() - 1 {
                    x.eval_left_unchecked(t)
                } else {
                    x.eval_unchecked(t)
                }
            })
            .collect();

        let mut hy_prev = h.eval(y);
        for i in 1..grid.len() {
            let dt = grid[i] - grid[i - 1];
            let forcing = y + (xv[i] - xv[i - 1]);
            // Picard fixed point for the trapezoidal cell.
            let mut z = forcing + hy_prev * dt;
            for _ in 0..PICARD_MAX_ITERS {
                let z_new = forcing + 0.5 * (hy_prev + h.eval(z)) * dt;
                let delta = (z_new - z).abs();
                z = z_new;
                if delta <= PICARD_TOL * (1.0 + z.abs()) {
                    break;
                }
            }
            osc_max = osc_max.max((z - y).abs());
            y = z;
            hy_prev = h.eval(y);
            h_sup = h_sup.max(hy_prev.abs());
            nodes.push((grid[i], y));
        }

        // Jump at b, if any.
        if let Some(j) = jump_iter.peek() {
            if j.location == b {
                let j = jump_iter.next().unwrap();
                let y_right = propagate_jump(y, j.right - j.left);
                nodes.push((b, y_right));
                y = y_right;
                h_sup = h_sup.max(h.eval(y).abs());
            }
        }
    }
    if nodes.last().map(|&(t, _)| t) != Some(horizon) {
        nodes.push((horizon, y));
    }

    let k_factor = h_sup + c * osc_max;
    let error_bound = k_factor * substep * (c * horizon).exp();
    Ok(SolveReport {
        solution: CadlagPath::piecewise_linear(horizon, nodes)?,
        step: substep,
        error_bound,
    })
}

/// Empirical Lipschitz constant of `h` on `[lo, hi]`: max difference
/// quotient over a deterministic grid plus seeded random pairs. A result
/// above the declared constant flags a mis-declared drift.
pub fn check_lipschitz(h: &LipschitzDrift, lo: f64, hi: f64, samples: usize) -> Result<f64> {
    if !(lo < hi) || samples < 2 {
        return Err(Error::InvalidParameter(
            "check_lipschitz needs lo < hi and samples >= 2".into(),
        ));
    }
    let mut est = 0.0f64;
    let vals: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    for w in vals.windows(2) {
        let q = (h.eval(w[1]) - h.eval(w[0])).abs() / (w[1] - w[0]);
        est = est.max(q);
    }
    let mut rng = StdRng::seed_from_u64(0x6c69_7073);
    for _ in 0..samples {
        let a = rng.random_range(lo..hi);
        let b = rng.random_range(lo..hi);
        if a != b {
            est = est.max((h.eval(a) - h.eval(b)).abs() / (a - b).abs());
        }
    }
    Ok(est)
}

/// The Gronwall-closed bound `(eta + h_sup * l1_dd) * e^{sup_slope * c}` on
/// the spatial distance of the mapped representations.
pub fn gronwall_bound(eta: f64, h_sup: f64, l1_dd: f64, sup_slope: f64, c: f64) -> f64 {
    debug_assert!(eta >= 0.0 && h_sup >= 0.0 && l1_dd >= 0.0 && sup_slope >= 0.0 && c >= 0.0);
    (eta + h_sup * l1_dd) * (sup_slope * c).exp()
}

/// One row of the continuity experiment: distances before and after the
/// integral map, plus the Gronwall bound evaluated from regularized
/// representations.
#[derive(Debug, Clone)]
pub struct ContinuityRow {
    pub index: usize,
    pub d_in: f64,
    pub d_out: f64,
    pub bound: f64,
}

/// Maps a convergent family through `ψ` and reports, per member, the input
/// M1 distance, output M1 distance, and the bound obtained by feeding the
/// regularized-representation statistics through the Gronwall inequality.
pub fn continuity_experiment(
    x_seq: &[CadlagPath],
    x: &CadlagPath,
    h: &LipschitzDrift,
    mesh: f64,
    step: f64,
    reg_eps: f64,
) -> Result<Vec<ContinuityRow>> {
    let y = solve_map(x, h, step)?.solution;
    let h_sup = sup_abs_drift(h, &y);
    let mut rows = Vec::with_capacity(x_seq.len());
    for (index, xn) in x_seq.iter().enumerate() {
        let (d_in, _) = m1_distance(xn, x, mesh)?;
        let yn = solve_map(xn, h, step)?.solution;
        let (d_out, _) = m1_distance(&yn, &y, mesh)?;
        let reg: RegularizedRep = regularize(x, xn, reg_eps, mesh)?;
        let bound = gronwall_bound(
            reg.bounds.sup_dist,
            h_sup,
            reg.bounds.l1_dd,
            reg.bounds.sup_slope,
            h.lipschitz,
        );
        rows.push(ContinuityRow {
            index,
            d_in,
            d_out,
            bound,
        });
    }
    Ok(rows)
}

/// `sup_t |h(y(t))|` over node values and piece midpoints of a pl path.
pub fn sup_abs_drift(h: &LipschitzDrift, y: &CadlagPath) -> f64 {
    let nodes = y.linear_nodes();
    if nodes.is_empty() {
        // Step path: values are the initial plus the switch values.
        let mut m = h.eval(y.initial()).abs();
        for &(_, v) in y.step_nodes() {
            m = m.max(h.eval(v).abs());
        }
        return m;
    }
    let mut m = 0.0f64;
    for w in nodes.windows(2) {
        m = m
            .max(h.eval(w[0].1).abs())
            .max(h.eval(0.5 * (w[0].1 + w[1].1)).abs());
    }
    m.max(h.eval(nodes[nodes.len() - 1].1).abs())
}
