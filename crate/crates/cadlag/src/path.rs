//! Right-continuous paths with finitely many breakpoints on `[0, T]`,
//! their jump functionals, and the oscillation functionals used by the
//! M1 machinery.
//!
//! Two representations are supported:
//!
//! * **step** — piecewise constant, right-continuous: an initial value and a
//!   list of `(t, v)` pairs meaning "the value becomes `v` at time `t`".
//! * **piecewise-linear** — a node list `(t, v)` with nondecreasing times;
//!   a repeated time encodes a jump (left value first, right value second).
//!
//! Every functional on step paths is computed exactly by candidate
//! enumeration over breakpoints and left limits. Piecewise-linear paths use
//! the same candidates plus a refinement mesh where the supremum may fall
//! between nodes; the error is one-sided (the reported value never exceeds
//! the true supremum) and shrinks linearly with the mesh.

use crate::error::{Error, Result};

/// Absolute tolerance for value-equality comparisons in invariant checks.
pub const VALUE_TOL: f64 = 1e-12;

/// Default refinement mesh for sup-type functionals on piecewise-linear
/// paths, as a fraction of the horizon.
pub const DEFAULT_REFINE_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Step,
    PiecewiseLinear,
}

#[derive(Debug, Clone)]
enum Repr {
    /// `initial` on `[0, t_1)`, then `steps[i].1` on `[t_i, t_{i+1})`.
    Step { initial: f64, steps: Vec<(f64, f64)> },
    /// Nodes `(t, v)`; first at `t = 0`, last at `t = T`. A time may appear
    /// twice to encode a jump; the first node carries the left limit.
    Linear { nodes: Vec<(f64, f64)> },
}

/// A cadlag path on `[0, T]` with finitely many breakpoints.
#[derive(Debug, Clone)]
pub struct CadlagPath {
    horizon: f64,
    repr: Repr,
}

/// A single jump of a path: location, left limit and right value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub location: f64,
    pub left: f64,
    pub right: f64,
}

impl Jump {
    /// Absolute jump size `|x(t) - x(t-)|`.
    pub fn size(&self) -> f64 {
        (self.right - self.left).abs()
    }
}

/// The completed graph of a path: its graph with a vertical segment filling
/// each jump, as an ordered polyline of `(value, time)` vertices.
#[derive(Debug, Clone)]
pub struct CompletedGraph {
    vertices: Vec<(f64, f64)>,
}

fn check_finite(v: f64, what: &str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidPath(format!("{what} is not finite: {v}")))
    }
}

impl CadlagPath {
    /// Builds a step path: `initial` on `[0, t_1)`, then each `(t, v)` pair
    /// switches the value to `v` at time `t` (right-continuously).
    pub fn step(horizon: f64, initial: f64, steps: Vec<(f64, f64)>) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidPath(format!(
                "horizon must be positive and finite, got {horizon}"
            )));
        }
        check_finite(initial, "initial value")?;
        let mut prev = 0.0;
        for (i, &(t, v)) in steps.iter().enumerate() {
            check_finite(t, "step time")?;
            check_finite(v, "step value")?;
            if t <= prev {
                return Err(Error::InvalidPath(format!(
                    "step times must be strictly increasing and positive; node {i} has t={t}"
                )));
            }
            if t > horizon {
                return Err(Error::InvalidPath(format!(
                    "node {i} has t={t} beyond horizon {horizon}"
                )));
            }
            prev = t;
        }
        Ok(Self {
            horizon,
            repr: Repr::Step { initial, steps },
        })
    }

    /// Builds a piecewise-linear path from a full node list starting at
    /// `t = 0` and ending at `t = T`. A repeated time encodes a jump; a jump
    /// at `t = 0` is rejected.
    pub fn piecewise_linear(horizon: f64, nodes: Vec<(f64, f64)>) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidPath(format!(
                "horizon must be positive and finite, got {horizon}"
            )));
        }
        if nodes.len() < 2 {
            return Err(Error::InvalidPath(
                "piecewise-linear path needs at least two nodes".into(),
            ));
        }
        for (i, &(t, v)) in nodes.iter().enumerate() {
            check_finite(t, "node time")?;
            check_finite(v, "node value")?;
            if i > 0 {
                let (tp, _) = nodes[i - 1];
                if t < tp {
                    return Err(Error::InvalidPath(format!(
                        "node times must be nondecreasing; node {i} has t={t} after {tp}"
                    )));
                }
                if t == tp && i >= 2 && nodes[i - 2].0 == t {
                    return Err(Error::InvalidPath(format!(
                        "more than two nodes share time t={t} (node {i})"
                    )));
                }
            }
        }
        if nodes[0].0 != 0.0 {
            return Err(Error::InvalidPath(format!(
                "first node must be at t=0, got t={}",
                nodes[0].0
            )));
        }
        if nodes.len() >= 2 && nodes[1].0 == 0.0 {
            return Err(Error::InvalidPath("jump at t=0 is not allowed".into()));
        }
        let last = nodes[nodes.len() - 1].0;
        if last != horizon {
            return Err(Error::InvalidPath(format!(
                "last node must be at t=T={horizon}, got t={last}"
            )));
        }
        Ok(Self {
            horizon,
            repr: Repr::Linear { nodes },
        })
    }

    /// Constant path `x ≡ v`.
    pub fn constant(horizon: f64, v: f64) -> Result<Self> {
        Self::step(horizon, v, Vec::new())
    }

    /// Indicator-style step path: `initial`, then value `v` from time `t` on.
    pub fn single_step(horizon: f64, initial: f64, t: f64, v: f64) -> Result<Self> {
        Self::step(horizon, initial, vec![(t, v)])
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn kind(&self) -> PathKind {
        match self.repr {
            Repr::Step { .. } => PathKind::Step,
            Repr::Linear { .. } => PathKind::PiecewiseLinear,
        }
    }

    /// Initial value `x(0)`.
    pub fn initial(&self) -> f64 {
        match &self.repr {
            Repr::Step { initial, .. } => *initial,
            Repr::Linear { nodes } => nodes[0].1,
        }
    }

    /// For step paths, the `(t, v)` switch list; empty for pl paths.
    pub fn step_nodes(&self) -> &[(f64, f64)] {
        match &self.repr {
            Repr::Step { steps, .. } => steps,
            Repr::Linear { .. } => &[],
        }
    }

    /// For pl paths, the full node list including the `t = 0` node.
    pub fn linear_nodes(&self) -> &[(f64, f64)] {
        match &self.repr {
            Repr::Linear { nodes } => nodes,
            Repr::Step { .. } => &[],
        }
    }

    /// Distinct breakpoint times in `(0, T]`.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Step { steps, .. } => steps.iter().map(|&(t, _)| t).collect(),
            Repr::Linear { nodes } => {
                let mut out = Vec::new();
                for &(t, _) in nodes.iter().skip(1) {
                    if t > 0.0 && out.last() != Some(&t) {
                        out.push(t);
                    }
                }
                out
            }
        }
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        if !t.is_finite() || t < 0.0 || t > self.horizon {
            return Err(Error::OutOfDomain {
                t,
                horizon: self.horizon,
            });
        }
        Ok(())
    }

    /// `x(t)` for `t ∈ [0, T]`, exact for step paths.
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        match &self.repr {
            Repr::Step { initial, steps } => {
                // Last switch with time <= t.
                let idx = steps.partition_point(|&(ti, _)| ti <= t);
                if idx == 0 {
                    *initial
                } else {
                    steps[idx - 1].1
                }
            }
            Repr::Linear { nodes } => {
                let idx = nodes.partition_point(|&(ti, _)| ti <= t);
                // idx >= 1 since nodes[0].0 == 0 <= t.
                let (t0, v0) = nodes[idx - 1];
                if idx == nodes.len() || t0 == t {
                    return v0;
                }
                let (t1, v1) = nodes[idx];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }

    /// Left limit `x(t-)` for `t ∈ (0, T]`, exact for step paths.
    pub fn eval_left(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t <= 0.0 || t > self.horizon {
            return Err(Error::OutOfDomain {
                t,
                horizon: self.horizon,
            });
        }
        Ok(self.eval_left_unchecked(t))
    }

    pub(crate) fn eval_left_unchecked(&self, t: f64) -> f64 {
        match &self.repr {
            Repr::Step { initial, steps } => {
                let idx = steps.partition_point(|&(ti, _)| ti < t);
                if idx == 0 {
                    *initial
                } else {
                    steps[idx - 1].1
                }
            }
            Repr::Linear { nodes } => {
                let idx = nodes.partition_point(|&(ti, _)| ti < t);
                // idx >= 1 since t > 0; the piece (idx-1, idx) reaches t
                // from the left.
                let (t0, v0) = nodes[idx - 1];
                if idx == nodes.len() {
                    return v0;
                }
                let (t1, v1) = nodes[idx];
                if t1 == t {
                    // Node exactly at t: its first occurrence carries the
                    // left limit.
                    v1
                } else {
                    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
                }
            }
        }
    }

    /// All jumps with size strictly greater than `eps`, sorted by location.
    pub fn jumps(&self, eps: f64) -> Vec<Jump> {
        let mut out = Vec::new();
        match &self.repr {
            Repr::Step { initial, steps } => {
                let mut prev = *initial;
                for &(t, v) in steps {
                    if (v - prev).abs() > eps {
                        out.push(Jump {
                            location: t,
                            left: prev,
                            right: v,
                        });
                    }
                    prev = v;
                }
            }
            Repr::Linear { nodes } => {
                for w in nodes.windows(2) {
                    let (t0, v0) = w[0];
                    let (t1, v1) = w[1];
                    if t0 == t1 && (v1 - v0).abs() > eps {
                        out.push(Jump {
                            location: t0,
                            left: v0,
                            right: v1,
                        });
                    }
                }
            }
        }
        out
    }

    /// Maximum jump size; zero for continuous paths. The supremum is
    /// attained because only finitely many breakpoints exist.
    pub fn j_max(&self) -> f64 {
        self.jumps(0.0)
            .iter()
            .map(Jump::size)
            .fold(0.0, f64::max)
    }

    /// Maximum jump size among jumps with location in `(a, b]`.
    pub fn j_max_on(&self, a: f64, b: f64) -> f64 {
        self.jumps(0.0)
            .iter()
            .filter(|j| j.location > a && j.location <= b)
            .map(Jump::size)
            .fold(0.0, f64::max)
    }

    /// Candidate values attained (or approached) by the path on `[a, b]`:
    /// endpoint values, breakpoint values strictly inside, and left limits
    /// reachable within the interval. Exact extremes for both kinds.
    fn value_candidates(&self, a: f64, b: f64, out: &mut Vec<f64>) {
        out.clear();
        out.push(self.eval_unchecked(a));
        out.push(self.eval_unchecked(b));
        if b > a {
            out.push(self.eval_left_unchecked(b));
        }
        match &self.repr {
            Repr::Step { steps, .. } => {
                let lo = steps.partition_point(|&(t, _)| t <= a);
                for &(t, v) in &steps[lo..] {
                    if t >= b {
                        break;
                    }
                    out.push(v);
                    out.push(self.eval_left_unchecked(t));
                }
            }
            Repr::Linear { nodes } => {
                let lo = nodes.partition_point(|&(t, _)| t <= a);
                for &(t, v) in &nodes[lo..] {
                    if t >= b {
                        break;
                    }
                    out.push(v);
                }
            }
        }
    }

    /// Oscillation `ν(x, [a, b]) = sup |x(u1) - x(u2)|` over the closed
    /// interval.
    pub fn oscillation(&self, a: f64, b: f64) -> Result<f64> {
        self.check_domain(a)?;
        self.check_domain(b)?;
        if a > b {
            return Err(Error::BadInterval { a, b });
        }
        let mut c = Vec::new();
        self.value_candidates(a, b, &mut c);
        let max = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = c.iter().cloned().fold(f64::INFINITY, f64::min);
        Ok(max - min)
    }

    /// Like `oscillation(a, b)` but excluding the right-endpoint value
    /// `x(b)` itself, keeping its left limit: the oscillation just before a
    /// jump at `b`.
    pub fn oscillation_before(&self, a: f64, b: f64) -> Result<f64> {
        self.check_domain(a)?;
        self.check_domain(b)?;
        if a >= b {
            return Err(Error::BadInterval { a, b });
        }
        let mut c = Vec::new();
        self.value_candidates(a, b, &mut c);
        // Drop x(b) (it was pushed second) and re-add the left limit.
        c.remove(1);
        let max = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = c.iter().cloned().fold(f64::INFINITY, f64::min);
        Ok(max - min)
    }

    /// Modulus `ν(x, δ) = sup_t ν(x, [t, t + δ])` for `0 < δ <= T`.
    pub fn modulus(&self, delta: f64) -> Result<f64> {
        if !(delta > 0.0 && delta <= self.horizon) {
            return Err(Error::InvalidParameter(format!(
                "modulus window must lie in (0, T], got {delta}"
            )));
        }
        let tmax = self.horizon - delta;
        let mut crit = vec![0.0, tmax];
        for b in self.breakpoints() {
            for t in [b, b - delta] {
                if t > 0.0 && t < tmax {
                    crit.push(t);
                }
            }
        }
        crit.sort_by(f64::total_cmp);
        crit.dedup();
        let mut best = 0.0f64;
        for i in 0..crit.len() {
            best = best.max(self.oscillation(crit[i], crit[i] + delta)?);
            if i + 1 < crit.len() {
                let mid = 0.5 * (crit[i] + crit[i + 1]);
                best = best.max(self.oscillation(mid, mid + delta)?);
            }
        }
        Ok(best)
    }

    /// Uniform norm `sup_t |x(t)|`, exact.
    pub fn uniform_norm(&self) -> f64 {
        match &self.repr {
            Repr::Step { initial, steps } => steps
                .iter()
                .map(|&(_, v)| v.abs())
                .fold(initial.abs(), f64::max),
            Repr::Linear { nodes } => nodes
                .iter()
                .map(|&(_, v)| v.abs())
                .fold(0.0, f64::max),
        }
    }

    /// Uniform distance `sup_t |x(t) - y(t)|` over the merged breakpoint
    /// set including left limits; exact for step and pl paths.
    pub fn uniform_dist(&self, other: &CadlagPath) -> Result<f64> {
        if self.horizon != other.horizon {
            return Err(Error::HorizonMismatch {
                a: self.horizon,
                b: other.horizon,
            });
        }
        Ok(self.uniform_dist_on_unchecked(other, 0.0, self.horizon))
    }

    /// Uniform distance restricted to `[a, b]`.
    pub fn uniform_dist_on(&self, other: &CadlagPath, a: f64, b: f64) -> Result<f64> {
        if self.horizon != other.horizon {
            return Err(Error::HorizonMismatch {
                a: self.horizon,
                b: other.horizon,
            });
        }
        self.check_domain(a)?;
        self.check_domain(b)?;
        if a > b {
            return Err(Error::BadInterval { a, b });
        }
        Ok(self.uniform_dist_on_unchecked(other, a, b))
    }

    fn uniform_dist_on_unchecked(&self, other: &CadlagPath, a: f64, b: f64) -> f64 {
        let mut times: Vec<f64> = self
            .breakpoints()
            .into_iter()
            .chain(other.breakpoints())
            .filter(|&t| t > a && t < b)
            .collect();
        times.push(a);
        times.push(b);
        times.sort_by(f64::total_cmp);
        times.dedup();
        let mut best = 0.0f64;
        for &t in &times {
            best = best.max((self.eval_unchecked(t) - other.eval_unchecked(t)).abs());
            if t > a {
                best =
                    best.max((self.eval_left_unchecked(t) - other.eval_left_unchecked(t)).abs());
            }
        }
        best
    }

    /// The M1 oscillation `w_s(x, δ)`: the supremum over triples
    /// `t1 < t2 < t3` within a window of width `2δ` of the distance from
    /// `x(t2)` to the segment `[x(t1), x(t3)]`. Exact for step paths;
    /// refinement-mesh approximation (one-sided, from below) for pl paths.
    pub fn ws_osc(&self, delta: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "ws_osc window must be positive, got {delta}"
            )));
        }
        match &self.repr {
            Repr::Step { .. } => Ok(self.ws_osc_step(delta, 0.0, self.horizon)),
            Repr::Linear { .. } => Ok(self.ws_osc_linear(delta, 0.0, self.horizon, None)),
        }
    }

    /// `w_s` restricted to times in `[a, b]`.
    pub fn ws_osc_on(&self, delta: f64, a: f64, b: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "ws_osc window must be positive, got {delta}"
            )));
        }
        self.check_domain(a)?;
        self.check_domain(b)?;
        if a > b {
            return Err(Error::BadInterval { a, b });
        }
        match &self.repr {
            Repr::Step { .. } => Ok(self.ws_osc_step(delta, a, b)),
            Repr::Linear { .. } => Ok(self.ws_osc_linear(delta, a, b, None)),
        }
    }

    /// Constant pieces of a step path clipped to `[a, b]`:
    /// `(start, end, value)` triples covering the interval in order.
    fn pieces_on(&self, a: f64, b: f64) -> Vec<(f64, f64, f64)> {
        let Repr::Step { initial, steps } = &self.repr else {
            return Vec::new();
        };
        let mut pieces = Vec::with_capacity(steps.len() + 1);
        let mut start = 0.0;
        let mut value = *initial;
        for &(t, v) in steps {
            pieces.push((start, t, value));
            start = t;
            value = v;
        }
        pieces.push((start, self.horizon, value));
        pieces.retain(|&(s, e, _)| e > a && s < b);
        for p in &mut pieces {
            p.0 = p.0.max(a);
            p.1 = p.1.min(b);
        }
        pieces
    }

    fn ws_osc_step(&self, delta: f64, a: f64, b: f64) -> f64 {
        let pieces = self.pieces_on(a, b);
        let n = pieces.len();
        let mut best = 0.0f64;
        // Triples of distinct pieces i < j < k; the middle point needs a
        // piece strictly between in time, and the window budget requires
        // start_k - end_i < 2 delta.
        for i in 0..n {
            for k in (i + 2)..n {
                if pieces[k].0 - pieces[i].1 >= 2.0 * delta {
                    break;
                }
                for j in (i + 1)..k {
                    best = best.max(segment_dist(pieces[j].2, pieces[i].2, pieces[k].2));
                }
            }
        }
        best
    }

    fn ws_osc_linear(&self, delta: f64, a: f64, b: f64, mesh: Option<f64>) -> f64 {
        // Candidate points (time, value); left limits are tagged with a
        // rank so that (t-, t) ordering counts as strictly increasing.
        let mesh = mesh.unwrap_or(DEFAULT_REFINE_FRACTION * self.horizon);
        let mut times: Vec<f64> = Vec::new();
        let Repr::Linear { nodes } = &self.repr else {
            unreachable!()
        };
        for &(t, _) in nodes {
            for cand in [t, t - 2.0 * delta, t + 2.0 * delta] {
                if cand >= a && cand <= b {
                    times.push(cand);
                }
            }
        }
        // Refinement grid, capped to keep the triple loop tractable.
        let span = b - a;
        let grid = ((span / mesh).ceil() as usize).clamp(2, 160);
        for g in 0..=grid {
            times.push(a + span * (g as f64) / (grid as f64));
        }
        times.sort_by(f64::total_cmp);
        times.dedup();
        let mut pts: Vec<(f64, f64)> = Vec::with_capacity(2 * times.len());
        for &t in &times {
            if t > a {
                pts.push((t, self.eval_left_unchecked(t)));
            }
            pts.push((t, self.eval_unchecked(t)));
        }
        let n = pts.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for k in (i + 2)..n {
                if pts[k].0 - pts[i].0 > 2.0 * delta {
                    break;
                }
                for j in (i + 1)..k {
                    if pts[j].0 > pts[i].0 && pts[j].0 < pts[k].0 {
                        best = best.max(segment_dist(pts[j].1, pts[i].1, pts[k].1));
                    }
                }
            }
        }
        best
    }

    /// The completed graph of the path as an ordered `(value, time)`
    /// polyline with one vertical segment per jump.
    pub fn completed_graph(&self) -> CompletedGraph {
        let mut vertices: Vec<(f64, f64)> = Vec::new();
        let push = |v: f64, t: f64, out: &mut Vec<(f64, f64)>| {
            if out.last() != Some(&(v, t)) {
                out.push((v, t));
            }
        };
        match &self.repr {
            Repr::Step { initial, steps } => {
                push(*initial, 0.0, &mut vertices);
                let mut prev = *initial;
                for &(t, v) in steps {
                    if v != prev {
                        push(prev, t, &mut vertices);
                        push(v, t, &mut vertices);
                        prev = v;
                    }
                }
                push(prev, self.horizon, &mut vertices);
            }
            Repr::Linear { nodes } => {
                for &(t, v) in nodes {
                    push(v, t, &mut vertices);
                }
                if vertices.len() == 1 {
                    // Constant-as-pl degenerate case.
                    vertices.push((nodes[nodes.len() - 1].1, self.horizon));
                }
            }
        }
        if vertices.len() == 1 {
            let (v, _) = vertices[0];
            vertices.push((v, self.horizon));
        }
        CompletedGraph { vertices }
    }

    /// The sub-path on `[a, b]`, re-based to `[0, b - a]`. Jumps strictly
    /// inside `(a, b]` are preserved; the value at `a` becomes the initial
    /// value.
    pub fn restrict(&self, a: f64, b: f64) -> Result<CadlagPath> {
        self.check_domain(a)?;
        self.check_domain(b)?;
        if a >= b {
            return Err(Error::BadInterval { a, b });
        }
        match &self.repr {
            Repr::Step { steps, .. } => {
                let initial = self.eval_unchecked(a);
                let sub: Vec<(f64, f64)> = steps
                    .iter()
                    .filter(|&&(t, _)| t > a && t <= b)
                    .map(|&(t, v)| (t - a, v))
                    .collect();
                CadlagPath::step(b - a, initial, sub)
            }
            Repr::Linear { nodes } => {
                let mut sub: Vec<(f64, f64)> = vec![(0.0, self.eval_unchecked(a))];
                for &(t, v) in nodes {
                    if t > a && t < b {
                        sub.push((t - a, v));
                    } else if t == b {
                        // Keep the left-limit node of a jump at b.
                        if sub.last().map(|&(tt, _)| tt) != Some(b - a) {
                            sub.push((b - a, self.eval_left_unchecked(b)));
                        }
                    }
                }
                let end = self.eval_unchecked(b);
                if sub.last() != Some(&(b - a, end)) {
                    if sub.last().map(|&(t, _)| t) == Some(b - a) {
                        sub.push((b - a, end));
                    } else {
                        sub.push((b - a, end));
                    }
                }
                // Deduplicate an accidental triple at b - a.
                if sub.len() >= 3 {
                    let n = sub.len();
                    if sub[n - 1].0 == sub[n - 2].0 && sub[n - 2].0 == sub[n - 3].0 {
                        sub.remove(n - 2);
                    }
                }
                CadlagPath::piecewise_linear(b - a, sub)
            }
        }
    }
}

/// Distance from `c` to the segment spanned by `a` and `b`: zero when `c`
/// lies between them, otherwise the gap to the nearer endpoint.
pub fn segment_dist(c: f64, a: f64, b: f64) -> f64 {
    let lo = a.min(b);
    let hi = a.max(b);
    if c < lo {
        lo - c
    } else if c > hi {
        c - hi
    } else {
        0.0
    }
}

impl CompletedGraph {
    /// Graph vertices in traversal order, starting at `(x(0), 0)`.
    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    /// Successive vertex pairs (the polyline segments).
    pub fn segments(&self) -> impl Iterator<Item = ((f64, f64), (f64, f64))> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Total polyline length in the max metric.
    pub fn total_length(&self) -> f64 {
        self.segments()
            .map(|(p, q)| (q.0 - p.0).abs().max((q.1 - p.1).abs()))
            .sum()
    }

    /// Cumulative positions of each vertex along the polyline, measured in
    /// the L1 metric (strictly increasing for nondegenerate segments).
    pub fn arc_positions(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.vertices.len());
        let mut acc = 0.0;
        out.push(0.0);
        for (p, q) in self.segments() {
            acc += (q.0 - p.0).abs() + (q.1 - p.1).abs();
            out.push(acc);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicator_on_12() -> CadlagPath {
        // x = 1 on [1, 2], 0 before; horizon 2.
        CadlagPath::single_step(2.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn eval_right_continuity_at_jump() {
        let x = indicator_on_12();
        assert_eq!(x.eval(1.0).unwrap(), 1.0);
        assert_eq!(x.eval_left(1.0).unwrap(), 0.0);
        assert_eq!(x.eval(0.999).unwrap(), 0.0);
        assert_eq!(x.eval(2.0).unwrap(), 1.0);
    }

    #[test]
    fn eval_constant_path() {
        let x = CadlagPath::constant(1.0, 3.0).unwrap();
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(x.eval(t).unwrap(), 3.0);
        }
    }

    #[test]
    fn eval_linear_interpolation() {
        let x = CadlagPath::piecewise_linear(1.0, vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert_eq!(x.eval(0.5).unwrap(), 0.5);
        assert_eq!(x.eval_left(1.0).unwrap(), 1.0);
    }

    #[test]
    fn eval_out_of_domain_errors() {
        let x = indicator_on_12();
        assert!(x.eval(-0.1).is_err());
        assert!(x.eval(2.1).is_err());
        assert!(x.eval_left(0.0).is_err());
    }

    #[test]
    fn pl_jump_via_double_node() {
        let x = CadlagPath::piecewise_linear(
            2.0,
            vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (2.0, 1.0)],
        )
        .unwrap();
        assert_eq!(x.eval(1.0).unwrap(), 1.0);
        assert_eq!(x.eval_left(1.0).unwrap(), 0.0);
        let j = x.jumps(0.0);
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].location, 1.0);
        assert_eq!(j[0].size(), 1.0);
    }

    #[test]
    fn jump_at_zero_rejected() {
        let r = CadlagPath::piecewise_linear(1.0, vec![(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)]);
        assert!(r.is_err());
    }

    #[test]
    fn nan_rejected() {
        assert!(CadlagPath::constant(1.0, f64::NAN).is_err());
        assert!(CadlagPath::step(1.0, 0.0, vec![(0.5, f64::INFINITY)]).is_err());
    }

    #[test]
    fn jumps_threshold_filter() {
        let x = CadlagPath::step(2.0, 0.0, vec![(0.5, 0.3), (1.5, 1.3)]).unwrap();
        let all = x.jumps(0.0);
        assert_eq!(all.len(), 2);
        let big = x.jumps(0.5);
        assert_eq!(big.len(), 1);
        assert_eq!(big[0].location, 1.5);
    }

    #[test]
    fn jumps_continuous_path_empty() {
        let x = CadlagPath::piecewise_linear(1.0, vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert!(x.jumps(0.0).is_empty());
        assert_eq!(x.j_max(), 0.0);
    }

    #[test]
    fn j_max_of_finite_set() {
        let x = CadlagPath::step(3.0, 0.0, vec![(0.5, 0.3), (1.5, 1.3), (2.5, 0.6)]).unwrap();
        // Jump sizes 0.3, 1.0, 0.7.
        assert_eq!(x.j_max(), 1.0);
        assert_eq!(indicator_on_12().j_max(), 1.0);
    }

    #[test]
    fn oscillation_basics() {
        let c = CadlagPath::constant(1.0, 4.0).unwrap();
        assert_eq!(c.oscillation(0.2, 0.9).unwrap(), 0.0);

        let x = indicator_on_12();
        assert_eq!(x.oscillation(0.9, 1.1).unwrap(), 1.0);
        assert_eq!(x.oscillation(1.0, 2.0).unwrap(), 0.0);
        assert!(x.oscillation(1.2, 1.1).is_err());
    }

    #[test]
    fn modulus_linear_ramp() {
        let x = CadlagPath::piecewise_linear(1.0, vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let m = x.modulus(0.25).unwrap();
        assert!((m - 0.25).abs() < 1e-12, "modulus {m}");
    }

    #[test]
    fn segment_dist_cases() {
        assert_eq!(segment_dist(0.5, 0.0, 1.0), 0.0);
        assert_eq!(segment_dist(2.0, 0.0, 1.0), 1.0);
        assert_eq!(segment_dist(3.0, 3.0, 3.0), 0.0);
        assert_eq!(segment_dist(-1.0, 1.0, 0.0), 1.0);
    }

    #[test]
    fn ws_osc_monotone_step_is_zero() {
        let x = CadlagPath::step(1.0, 0.0, vec![(0.2, 0.5), (0.6, 0.9), (0.8, 2.0)]).unwrap();
        assert_eq!(x.ws_osc(0.5).unwrap(), 0.0);
        assert_eq!(x.ws_osc(10.0).unwrap(), 0.0);
    }

    #[test]
    fn ws_osc_zigzag_thirds() {
        // Values 0, 1, 0 on thirds of [0,1]; middle sticks out by 1.
        let x = CadlagPath::step(1.0, 0.0, vec![(1.0 / 3.0, 1.0), (2.0 / 3.0, 0.0)]).unwrap();
        assert_eq!(x.ws_osc(1.0).unwrap(), 1.0);
    }

    #[test]
    fn ws_osc_window_budget() {
        // Middle piece of width 0.4: no triple fits in a window of width
        // 2*0.1 < 0.4, so w_s = 0 at delta = 0.1.
        let x = CadlagPath::step(1.0, 0.0, vec![(0.3, 1.0), (0.7, 0.0)]).unwrap();
        assert_eq!(x.ws_osc(0.1).unwrap(), 0.0);
        assert_eq!(x.ws_osc(0.21).unwrap(), 1.0);
    }

    #[test]
    fn ws_osc_continuous_shrinks() {
        // Continuous zigzag; w_s tends to 0 with the window.
        let x = CadlagPath::piecewise_linear(
            1.0,
            vec![(0.0, 0.0), (0.25, 1.0), (0.5, 0.0), (0.75, 1.0), (1.0, 0.0)],
        )
        .unwrap();
        let w1 = x.ws_osc(0.1).unwrap();
        let w2 = x.ws_osc(0.01).unwrap();
        assert!(w1 <= x.modulus(0.2).unwrap() + 1e-12);
        assert!(w2 < w1);
        assert!(w2 < 0.1);
    }

    #[test]
    fn uniform_dist_cases() {
        let x = indicator_on_12();
        assert_eq!(x.uniform_dist(&x).unwrap(), 0.0);
        let zero = CadlagPath::constant(2.0, 0.0).unwrap();
        assert_eq!(x.uniform_dist(&zero).unwrap(), 1.0);

        let a = CadlagPath::piecewise_linear(1.0, vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let b = CadlagPath::piecewise_linear(1.0, vec![(0.0, 0.0), (1.0, 2.0)]).unwrap();
        assert_eq!(a.uniform_dist(&b).unwrap(), 1.0);

        let short = CadlagPath::constant(1.0, 0.0).unwrap();
        assert!(x.uniform_dist(&short).is_err());
    }

    #[test]
    fn uniform_dist_sees_left_limits() {
        // Same values at all breakpoints but different just before 0.5.
        let x = CadlagPath::step(1.0, 0.0, vec![(0.5, 1.0)]).unwrap();
        let y = CadlagPath::step(1.0, 0.0, vec![(0.25, 2.0), (0.5, 1.0)]).unwrap();
        assert_eq!(x.uniform_dist(&y).unwrap(), 2.0);
    }

    #[test]
    fn completed_graph_constant() {
        let g = CadlagPath::constant(1.0, 3.0).unwrap().completed_graph();
        assert_eq!(g.vertices(), &[(3.0, 0.0), (3.0, 1.0)]);
    }

    #[test]
    fn completed_graph_single_jump() {
        let g = indicator_on_12().completed_graph();
        assert_eq!(
            g.vertices(),
            &[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 2.0)]
        );
    }

    #[test]
    fn completed_graph_two_jumps_ordered() {
        let x = CadlagPath::step(3.0, 0.0, vec![(1.0, 1.0), (2.0, -1.0)]).unwrap();
        let g = x.completed_graph();
        let verts = g.vertices();
        // Two vertical segments, graph order, time nondecreasing.
        let verticals = g
            .segments()
            .filter(|(p, q)| p.1 == q.1 && p.0 != q.0)
            .count();
        assert_eq!(verticals, 2);
        for w in verts.windows(2) {
            assert!(w[1].1 >= w[0].1);
        }
    }

    #[test]
    fn restrict_keeps_jumps() {
        let x = CadlagPath::step(3.0, 0.0, vec![(1.0, 1.0), (2.0, -1.0)]).unwrap();
        let sub = x.restrict(0.5, 2.5).unwrap();
        assert_eq!(sub.horizon(), 2.0);
        assert_eq!(sub.jumps(0.0).len(), 2);
        assert_eq!(sub.eval(0.0).unwrap(), 0.0);
        assert_eq!(sub.eval(0.5).unwrap(), 1.0);
    }

    #[test]
    fn invariant_jmax_equals_max_of_jumps() {
        let x = CadlagPath::step(2.0, 0.5, vec![(0.3, 0.1), (0.9, 2.0), (1.7, 1.4)]).unwrap();
        let m = x
            .jumps(0.0)
            .iter()
            .map(Jump::size)
            .fold(0.0f64, f64::max);
        assert_eq!(x.j_max(), m);
    }

    #[test]
    fn invariant_oscillation_dominates_increment() {
        let x = CadlagPath::step(2.0, 0.5, vec![(0.3, 0.1), (0.9, 2.0), (1.7, 1.4)]).unwrap();
        for (a, b) in [(0.0, 2.0), (0.2, 1.0), (0.9, 1.7)] {
            let nu = x.oscillation(a, b).unwrap();
            let inc = (x.eval(b).unwrap() - x.eval(a).unwrap()).abs();
            assert!(nu >= inc - 1e-15);
        }
        // Monotone in interval inclusion.
        assert!(x.oscillation(0.2, 1.0).unwrap() <= x.oscillation(0.0, 2.0).unwrap());
    }
}
