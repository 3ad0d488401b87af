//! Parametric representations `(u, r)` of completed graphs and the
//! canonical flat-spot construction.
//!
//! A parametric representation traverses the completed graph of a path
//! continuously and monotonically: `u` is the spatial coordinate, `r` the
//! time coordinate, both piecewise linear on `[0, 1]` here. The canonical
//! representation gives every jump a flat spot of `r` (an interval on which
//! `r` is constant) whose length comes from the ladder `f_1 = 5/12`,
//! `f_j = 4^{-j}`; the lengths sum to `1/2`, leaving `1/2` of the domain for
//! increase at slope exactly `2T`. Flat-spot lengths are kept as exact
//! rationals during construction so that ladder identities survive the
//! redistribution step bit-for-bit.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::path::{CadlagPath, CompletedGraph, PathKind};

type Rat = Ratio<i128>;

/// Largest number of jumps the flat-spot ladder supports; `f_30 = 4^{-30}`
/// is already at the edge of what a 64-bit float can keep distinct from
/// zero-length.
pub const MAX_LADDER_JUMPS: usize = 30;

/// An interval of the parameter domain on which `r` is constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatSpot {
    /// The time value `r` takes on the spot.
    pub time: f64,
    pub s_start: f64,
    pub s_end: f64,
}

impl FlatSpot {
    pub fn length(&self) -> f64 {
        self.s_end - self.s_start
    }
}

/// Piecewise-linear parametric representation of a completed graph.
#[derive(Debug, Clone)]
pub struct ParametricRep {
    /// `(s, u, r)` knots; `s` strictly increasing from 0 to 1.
    knots: Vec<(f64, f64, f64)>,
    flat_spots: Vec<FlatSpot>,
    slope_bound: f64,
}

impl ParametricRep {
    /// Builds a representation from raw knots, deriving flat spots (maximal
    /// runs of constant `r`) and the slope bound.
    pub fn from_knots(knots: Vec<(f64, f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidParameter(
                "parametric representation needs at least two knots".into(),
            ));
        }
        for (i, &(s, u, r)) in knots.iter().enumerate() {
            if !(s.is_finite() && u.is_finite() && r.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "non-finite knot {i}: ({s}, {u}, {r})"
                )));
            }
            if i > 0 && s <= knots[i - 1].0 {
                return Err(Error::InvalidParameter(format!(
                    "knot s-values must be strictly increasing; knot {i} has s={s}"
                )));
            }
        }
        if knots[0].0 != 0.0 || knots[knots.len() - 1].0 != 1.0 {
            return Err(Error::InvalidParameter(
                "knots must span s=0 to s=1".into(),
            ));
        }
        let flat_spots = derive_flat_spots(&knots);
        let slope_bound = knots
            .windows(2)
            .map(|w| ((w[1].2 - w[0].2) / (w[1].0 - w[0].0)).abs())
            .fold(0.0, f64::max);
        Ok(Self {
            knots,
            flat_spots,
            slope_bound,
        })
    }

    pub fn knots(&self) -> &[(f64, f64, f64)] {
        &self.knots
    }

    pub fn flat_spots(&self) -> &[FlatSpot] {
        &self.flat_spots
    }

    /// `sup |r'|` over the linear pieces.
    pub fn slope_bound(&self) -> f64 {
        self.slope_bound
    }

    /// The horizon `T = r(1)` of the represented path.
    pub fn horizon(&self) -> f64 {
        self.knots[self.knots.len() - 1].2
    }

    fn locate(&self, s: f64) -> usize {
        // Index of the piece containing s: knots[i].0 <= s <= knots[i+1].0.
        let idx = self.knots.partition_point(|&(si, _, _)| si <= s);
        idx.clamp(1, self.knots.len() - 1) - 1
    }

    pub fn u(&self, s: f64) -> f64 {
        let i = self.locate(s);
        let (s0, u0, _) = self.knots[i];
        let (s1, u1, _) = self.knots[i + 1];
        u0 + (u1 - u0) * ((s - s0) / (s1 - s0))
    }

    pub fn r(&self, s: f64) -> f64 {
        let i = self.locate(s);
        let (s0, _, r0) = self.knots[i];
        let (s1, _, r1) = self.knots[i + 1];
        r0 + (r1 - r0) * ((s - s0) / (s1 - s0))
    }

    /// Exact supremum slope and L1 norm of `r'`. The L1 norm telescopes to
    /// `r(1) - r(0)` for nondecreasing `r`.
    pub fn deriv_profile(&self) -> (f64, f64) {
        let l1 = self
            .knots
            .windows(2)
            .map(|w| (w[1].2 - w[0].2).abs())
            .sum();
        (self.slope_bound, l1)
    }

    /// Exact `∫ |r'_a - r'_b|` over the merged knot set; both derivatives
    /// are piecewise constant there.
    pub fn l1_deriv_dist(&self, other: &ParametricRep) -> Result<f64> {
        if (self.horizon() - other.horizon()).abs() > crate::path::VALUE_TOL {
            return Err(Error::HorizonMismatch {
                a: self.horizon(),
                b: other.horizon(),
            });
        }
        Ok(self.l1_deriv_dist_on(other, 0.0, 1.0))
    }

    /// `∫_a^b |r'_self - r'_other|` over a sub-range of the domain.
    pub fn l1_deriv_dist_on(&self, other: &ParametricRep, a: f64, b: f64) -> f64 {
        let mut grid: Vec<f64> = self
            .knots
            .iter()
            .map(|k| k.0)
            .chain(other.knots.iter().map(|k| k.0))
            .filter(|&s| s > a && s < b)
            .collect();
        grid.push(a);
        grid.push(b);
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let mut total = 0.0;
        for w in grid.windows(2) {
            let (s0, s1) = (w[0], w[1]);
            if s1 <= s0 {
                continue;
            }
            let da = (self.r(s1) - self.r(s0)) / (s1 - s0);
            let db = (other.r(s1) - other.r(s0)) / (s1 - s0);
            total += (da - db).abs() * (s1 - s0);
        }
        total
    }

    /// Exact `(‖u_a - u_b‖, ‖r_a - r_b‖)` over the merged knot set.
    pub fn sup_dist(&self, other: &ParametricRep) -> (f64, f64) {
        let mut grid: Vec<f64> = self
            .knots
            .iter()
            .map(|k| k.0)
            .chain(other.knots.iter().map(|k| k.0))
            .collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let mut du = 0.0f64;
        let mut dr = 0.0f64;
        for &s in &grid {
            du = du.max((self.u(s) - other.u(s)).abs());
            dr = dr.max((self.r(s) - other.r(s)).abs());
        }
        (du, dr)
    }

    /// Left edge of the level set `{s : r(s) = t}` for nondecreasing `r`.
    pub fn r_inverse_left(&self, t: f64) -> f64 {
        let idx = self.knots.partition_point(|&(_, _, r)| r < t);
        if idx == 0 {
            return 0.0;
        }
        let (s0, _, r0) = self.knots[idx - 1];
        if idx == self.knots.len() {
            return self.knots[idx - 1].0;
        }
        let (s1, _, r1) = self.knots[idx];
        if r1 == r0 {
            s0
        } else {
            s0 + (s1 - s0) * (t - r0) / (r1 - r0)
        }
    }
}

fn derive_flat_spots(knots: &[(f64, f64, f64)]) -> Vec<FlatSpot> {
    let mut out = Vec::new();
    let mut i = 0;
    while i + 1 < knots.len() {
        if knots[i + 1].2 == knots[i].2 {
            let start = knots[i].0;
            let time = knots[i].2;
            let mut j = i + 1;
            while j + 1 < knots.len() && knots[j + 1].2 == time {
                j += 1;
            }
            out.push(FlatSpot {
                time,
                s_start: start,
                s_end: knots[j].0,
            });
            i = j;
        } else {
            i += 1;
        }
    }
    out
}

/// Exact ladder fraction for a 0-based rank: `5/12`, then `4^{-j}` for
/// rank `j >= 1` (1-based `j >= 2`).
pub fn ladder_fraction(rank: usize) -> Rat {
    if rank == 0 {
        Rat::new(5, 12)
    } else {
        Rat::new(1, 1i128 << (2 * (rank + 1)))
    }
}

/// One flat spot of the canonical representation with its exact length
/// bookkeeping: the ladder value assigned at insertion and the final length
/// after later insertions carved their share out of it.
#[derive(Debug, Clone)]
pub struct FlatAssignment {
    pub time: f64,
    /// Rank by decreasing jump size (0-based); `None` for the terminal spot
    /// at `T`.
    pub rank: Option<usize>,
    /// Assigned ladder fraction as `(numerator, denominator)`.
    pub ladder: (i128, i128),
    /// Final exact length as `(numerator, denominator)`.
    pub final_len: (i128, i128),
}

/// Canonical representation of `x` per the flat-spot ladder construction,
/// together with the exact length bookkeeping.
pub fn canonical_rep_detailed(x: &CadlagPath) -> Result<(ParametricRep, Vec<FlatAssignment>)> {
    let horizon = x.horizon();
    let jumps = x.jumps(0.0);
    if jumps.is_empty() {
        return Ok((continuous_rep(x), Vec::new()));
    }
    let interior: Vec<_> = jumps.iter().filter(|j| j.location < horizon).collect();
    if interior.len() > MAX_LADDER_JUMPS {
        return Err(Error::LadderOverflow {
            jumps: interior.len(),
            max: MAX_LADDER_JUMPS,
        });
    }

    // Rank jumps by decreasing size, ties by increasing time. A jump at T
    // consumes no ladder entry: the terminal flat spot covers it.
    let mut order: Vec<usize> = (0..interior.len()).collect();
    order.sort_by(|&a, &b| {
        interior[b]
            .size()
            .total_cmp(&interior[a].size())
            .then(interior[a].location.total_cmp(&interior[b].location))
    });

    // Spots sorted by time; the terminal spot starts with the whole flat
    // budget and loses the ladder share of every insertion above all
    // previously inserted spots.
    struct Spot {
        time: f64,
        rank: Option<usize>,
        ladder: Rat,
        len: Rat,
    }
    let mut spots: Vec<Spot> = vec![Spot {
        time: horizon,
        rank: None,
        ladder: Rat::new(0, 1),
        len: Rat::new(1, 2),
    }];
    for (rank, &ji) in order.iter().enumerate() {
        let t = interior[ji].location;
        let f = ladder_fraction(rank);
        let parent = spots
            .iter()
            .position(|s| s.time > t)
            .expect("terminal spot bounds every jump time");
        spots[parent].len -= f;
        assert!(
            spots[parent].len > Rat::new(0, 1),
            "ladder property keeps every flat spot positive"
        );
        spots.insert(
            parent,
            Spot {
                time: t,
                rank: Some(rank),
                ladder: f,
                len: f,
            },
        );
    }

    // Positions: increase runs at slope exactly 2T, so the s-position of a
    // spot is time/(2T) plus the flat length already spent below it.
    let two_t = 2.0 * horizon;
    let mut knots: Vec<(f64, f64, f64)> = vec![(0.0, x.initial(), 0.0)];
    let mut spent = Rat::new(0, 1);
    let mut prev_time = 0.0f64;
    let mut assignments = Vec::with_capacity(spots.len());
    for spot in &spots {
        let t = spot.time;
        let flats_below = rat_to_f64(spent);
        // Interior pl nodes on the rising piece keep u exact.
        if x.kind() == PathKind::PiecewiseLinear {
            for &(nt, nv) in x.linear_nodes() {
                if nt > prev_time && nt < t {
                    knots.push((nt / two_t + flats_below, nv, nt));
                }
            }
        }
        let s_start = t / two_t + flats_below;
        let s_end = if spot.time == horizon {
            1.0
        } else {
            t / two_t + rat_to_f64(spent + spot.len)
        };
        let left = x.eval_left_unchecked(t);
        let right = x.eval_unchecked(t);
        push_knot(&mut knots, (s_start, left, t));
        push_knot(&mut knots, (s_end, right, t));
        spent += spot.len;
        prev_time = t;
        assignments.push(FlatAssignment {
            time: t,
            rank: spot.rank,
            ladder: (*spot.ladder.numer(), *spot.ladder.denom()),
            final_len: (*spot.len.numer(), *spot.len.denom()),
        });
    }
    let rep = ParametricRep::from_knots(knots)?;
    Ok((rep, assignments))
}

/// Canonical representation of `x`: flat spots for every jump plus one at
/// `T`, increase at slope `2T`, total flat length exactly `1/2`. For
/// continuous `x` the time component is simply `r(s) = T s`.
pub fn canonical_rep(x: &CadlagPath) -> Result<ParametricRep> {
    canonical_rep_detailed(x).map(|(rep, _)| rep)
}

fn continuous_rep(x: &CadlagPath) -> ParametricRep {
    let horizon = x.horizon();
    let knots = match x.kind() {
        PathKind::Step => {
            // No jumps means a step path is constant.
            let v = x.initial();
            vec![(0.0, v, 0.0), (1.0, v, horizon)]
        }
        PathKind::PiecewiseLinear => x
            .linear_nodes()
            .iter()
            .map(|&(t, v)| (t / horizon, v, t))
            .collect(),
    };
    ParametricRep::from_knots(knots).expect("continuous canonical knots are valid")
}

fn push_knot(knots: &mut Vec<(f64, f64, f64)>, k: (f64, f64, f64)) {
    if let Some(last) = knots.last() {
        if last.0 == k.0 {
            // Degenerate piece; keep the earlier knot.
            return;
        }
    }
    knots.push(k);
}

fn rat_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Residuals of a representation checked against the completed graph of a
/// path.
#[derive(Debug, Clone)]
pub struct RepValidationReport {
    pub pass: bool,
    /// Max distance of rep knots and piece midpoints from the graph.
    pub max_graph_dist: f64,
    /// Max backward movement, in time units (decreasing `r`) or value units
    /// (u reversing inside a jump's flat spot).
    pub max_monotonicity_violation: f64,
    /// Max endpoint mismatch at `s = 0` and `s = 1`.
    pub endpoint_err: f64,
    /// Max distance of a graph vertex from the rep polyline (surjectivity).
    pub coverage_residual: f64,
    pub tol: f64,
}

fn dist_point_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}

fn dist_to_polyline(p: (f64, f64), verts: &[(f64, f64)]) -> f64 {
    verts
        .windows(2)
        .map(|w| dist_point_segment(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Checks every `ParametricRep` invariant against the completed graph of
/// `x`: graph membership, monotone traversal, endpoints, and surjectivity
/// within `tol`. Failures are reported as residuals, not errors.
pub fn validate_rep(x: &CadlagPath, rep: &ParametricRep, tol: f64) -> RepValidationReport {
    let graph: CompletedGraph = x.completed_graph();
    let verts = graph.vertices();
    let knots = rep.knots();

    let endpoint_err = {
        let first = knots[0];
        let last = knots[knots.len() - 1];
        (first.2 - 0.0)
            .abs()
            .max((last.2 - x.horizon()).abs())
            .max((first.1 - x.initial()).abs())
            .max((last.1 - x.eval_unchecked(x.horizon())).abs())
    };

    let mut max_graph_dist = 0.0f64;
    for w in knots.windows(2) {
        let p = (w[0].1, w[0].2);
        let mid = (0.5 * (w[0].1 + w[1].1), 0.5 * (w[0].2 + w[1].2));
        max_graph_dist = max_graph_dist
            .max(dist_to_polyline(p, verts))
            .max(dist_to_polyline(mid, verts));
    }
    let lastk = knots[knots.len() - 1];
    max_graph_dist = max_graph_dist.max(dist_to_polyline((lastk.1, lastk.2), verts));

    // Monotonicity: r never decreases; inside a flat spot at a jump the
    // spatial coordinate sweeps the jump segment monotonically.
    let mut mono = 0.0f64;
    for w in knots.windows(2) {
        mono = mono.max(w[0].2 - w[1].2);
    }
    for spot in rep.flat_spots() {
        let t = spot.time;
        if t <= 0.0 {
            continue;
        }
        let left = x.eval_left_unchecked(t);
        let right = x.eval_unchecked(t);
        if (right - left).abs() <= tol {
            continue;
        }
        let dir = (right - left).signum();
        let lo = left.min(right) - tol;
        let hi = left.max(right) + tol;
        let mut prev_u: Option<f64> = None;
        for &(s, u, r) in knots {
            if r == t && s >= spot.s_start && s <= spot.s_end {
                if u < lo || u > hi {
                    mono = mono.max((u - hi).max(lo - u));
                }
                if let Some(p) = prev_u {
                    mono = mono.max((p - u) * dir);
                }
                prev_u = Some(u);
            }
        }
    }
    let mono = mono.max(0.0);

    let coverage_residual = verts
        .iter()
        .map(|&(v, t)| {
            knots
                .windows(2)
                .map(|w| dist_point_segment((v, t), (w[0].1, w[0].2), (w[1].1, w[1].2)))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max);

    let pass = endpoint_err <= tol
        && max_graph_dist <= tol
        && mono <= tol
        && coverage_residual <= tol;
    RepValidationReport {
        pass,
        max_graph_dist,
        max_monotonicity_violation: mono,
        endpoint_err,
        coverage_residual,
        tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicator_on_12() -> CadlagPath {
        CadlagPath::single_step(2.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn canonical_identity_ramp() {
        let x = CadlagPath::piecewise_linear(1.0, vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let rep = canonical_rep(&x).unwrap();
        assert_eq!(rep.knots(), &[(0.0, 0.0, 0.0), (1.0, 1.0, 1.0)]);
        for s in [0.0, 0.25, 0.7, 1.0] {
            assert!((rep.u(s) - s).abs() < 1e-15);
            assert!((rep.r(s) - s).abs() < 1e-15);
        }
    }

    #[test]
    fn canonical_single_jump_knots() {
        // Hand-executed construction for the unit step on [0,2]: flat spot
        // of length 5/12 at t=1, residual 1/12 at T=2, slope 2T=4 between.
        let rep = canonical_rep(&indicator_on_12()).unwrap();
        let expect = [
            (0.0, 0.0, 0.0),
            (0.25, 0.0, 1.0),
            (2.0 / 3.0, 1.0, 1.0),
            (11.0 / 12.0, 1.0, 2.0),
            (1.0, 1.0, 2.0),
        ];
        let knots = rep.knots();
        assert_eq!(knots.len(), expect.len());
        for (k, e) in knots.iter().zip(expect.iter()) {
            assert!((k.0 - e.0).abs() < 1e-15, "{k:?} vs {e:?}");
            assert!((k.1 - e.1).abs() < 1e-15);
            assert!((k.2 - e.2).abs() < 1e-15);
        }
        let spots = rep.flat_spots();
        assert_eq!(spots.len(), 2);
        assert!((spots[0].length() - 5.0 / 12.0).abs() < 1e-15);
        assert!((spots[1].length() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_two_jumps_ladder_redistribution() {
        // Larger jump at t2=2.0, smaller at t1=0.5 (sizes 2 and 1, T=3).
        // Rank 0 (f=5/12) goes to t2, rank 1 (f=1/16) to t1; inserting the
        // t1 spot carves 1/16 out of the nearest spot above it (t2), so the
        // final lengths are 1/16 at t1, 5/12 - 1/16 = 17/48 at t2, and the
        // untouched 1/12 residual at T.
        let x = CadlagPath::step(3.0, 0.0, vec![(0.5, 1.0), (2.0, 3.0)]).unwrap();
        let (rep, asg) = canonical_rep_detailed(&x).unwrap();
        assert_eq!(asg.len(), 3);
        assert_eq!(asg[0].time, 0.5);
        assert_eq!(asg[0].final_len, (1, 16));
        assert_eq!(asg[1].time, 2.0);
        assert_eq!(asg[1].final_len, (17, 48));
        assert_eq!(asg[2].time, 3.0);
        assert_eq!(asg[2].final_len, (1, 12));
        // Total flat length is exactly 1/2.
        let total = asg
            .iter()
            .fold(Rat::new(0, 1), |a, f| a + Rat::new(f.final_len.0, f.final_len.1));
        assert_eq!(total, Rat::new(1, 2));
        // Every increase piece has slope exactly 2T.
        for w in rep.knots().windows(2) {
            let slope = (w[1].2 - w[0].2) / (w[1].0 - w[0].0);
            assert!(
                slope.abs() < 1e-9 || (slope - 6.0).abs() < 1e-9,
                "slope {slope}"
            );
        }
    }

    #[test]
    fn ladder_prefix_inequality() {
        // f_j > sum_{i>j} f_i for the assigned ladder, any prefix length.
        for m in 1..=MAX_LADDER_JUMPS {
            for j in 0..m {
                let tail: Rat = ((j + 1)..m).map(ladder_fraction).sum();
                assert!(ladder_fraction(j) > tail, "prefix fails at j={j}, m={m}");
            }
        }
    }

    #[test]
    fn ladder_overflow_rejected() {
        let steps: Vec<(f64, f64)> = (0..31)
            .map(|i| (0.01 + i as f64 * 0.03, i as f64 + 1.0))
            .collect();
        let x = CadlagPath::step(1.0, 0.0, steps).unwrap();
        assert!(matches!(
            canonical_rep(&x),
            Err(Error::LadderOverflow { jumps: 31, .. })
        ));
    }

    #[test]
    fn deriv_profile_values() {
        let rep = canonical_rep(&indicator_on_12()).unwrap();
        let (sup, l1) = rep.deriv_profile();
        assert!((sup - 4.0).abs() < 1e-12); // 2T with T=2
        assert!((l1 - 2.0).abs() < 1e-12); // telescopes to T

        let ramp = CadlagPath::piecewise_linear(1.0, vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let r = canonical_rep(&ramp).unwrap();
        assert_eq!(r.deriv_profile(), (1.0, 1.0));
    }

    #[test]
    fn l1_deriv_dist_halves() {
        // r_a(s) = T s against slopes {0, 2T} on halves: integral is T.
        let t = 2.0;
        let a = ParametricRep::from_knots(vec![(0.0, 0.0, 0.0), (1.0, 0.0, t)]).unwrap();
        let b = ParametricRep::from_knots(vec![
            (0.0, 0.0, 0.0),
            (0.5, 0.0, 0.0),
            (1.0, 0.0, t),
        ])
        .unwrap();
        let d = a.l1_deriv_dist(&b).unwrap();
        assert!((d - t).abs() < 1e-12, "got {d}");
        assert_eq!(a.l1_deriv_dist(&a).unwrap(), 0.0);
    }

    #[test]
    fn l1_deriv_dist_measure_bound() {
        // Reps differing on an s-set of measure delta with slopes <= 2T
        // are at L1 distance <= 2T * delta.
        let t = 1.0;
        let delta = 0.125;
        let a = ParametricRep::from_knots(vec![
            (0.0, 0.0, 0.0),
            (0.5, 0.0, t),
            (1.0, 0.0, t),
        ])
        .unwrap();
        // Same but the increase ends delta earlier (steeper finish).
        let b = ParametricRep::from_knots(vec![
            (0.0, 0.0, 0.0),
            (0.5 - delta, 0.0, t * (0.5 - delta) / 0.5),
            (0.5, 0.0, t),
            (1.0, 0.0, t),
        ])
        .unwrap();
        let d = a.l1_deriv_dist(&b).unwrap();
        assert!(d <= 2.0 * t * delta + 1e-12, "d={d}");
    }

    #[test]
    fn validate_canonical_reps() {
        let paths = vec![
            indicator_on_12(),
            CadlagPath::constant(1.0, 3.0).unwrap(),
            CadlagPath::step(3.0, 0.5, vec![(0.4, 1.5), (1.2, -0.5), (2.7, 0.0)]).unwrap(),
            CadlagPath::piecewise_linear(
                2.0,
                vec![(0.0, 0.0), (0.5, 1.0), (1.0, 1.0), (1.0, 2.0), (2.0, 0.5)],
            )
            .unwrap(),
        ];
        for x in &paths {
            let rep = canonical_rep(x).unwrap();
            let report = validate_rep(x, &rep, 1e-9);
            assert!(report.pass, "{report:?}");
            // l1 norm telescopes to T for every valid rep.
            let (_, l1) = rep.deriv_profile();
            assert!((l1 - x.horizon()).abs() < 1e-9);
        }
    }

    #[test]
    fn validate_catches_decreasing_r() {
        let x = indicator_on_12();
        let mut knots = canonical_rep(&x).unwrap().knots().to_vec();
        // Corrupt one interior knot to make r dip.
        knots[2].2 = 0.5;
        let rep = ParametricRep::from_knots(knots).unwrap();
        let report = validate_rep(&x, &rep, 1e-9);
        assert!(!report.pass);
        assert!(report.max_monotonicity_violation > 0.0 || report.max_graph_dist > 0.0);
    }

    #[test]
    fn validate_catches_missing_flat_spot() {
        // A rep that cuts diagonally across instead of pausing at the jump
        // leaves the vertical segment uncovered: residuals on the order of
        // the jump size.
        let x = indicator_on_12();
        let rep = ParametricRep::from_knots(vec![
            (0.0, 0.0, 0.0),
            (0.5, 0.0, 1.0),
            (0.6, 1.0, 1.5),
            (1.0, 1.0, 2.0),
        ])
        .unwrap();
        let report = validate_rep(&x, &rep, 1e-9);
        assert!(!report.pass);
        assert!(report.coverage_residual > 0.3, "{report:?}");
        assert!(report.max_graph_dist > 0.2, "{report:?}");
    }

    #[test]
    fn eval_matches_path_off_jumps() {
        let x = CadlagPath::step(3.0, 0.5, vec![(0.4, 1.5), (1.2, -0.5), (2.7, 0.0)]).unwrap();
        let rep = canonical_rep(&x).unwrap();
        let jump_times: Vec<f64> = x.jumps(0.0).iter().map(|j| j.location).collect();
        for i in 0..=200 {
            let s = i as f64 / 200.0;
            let r = rep.r(s);
            if jump_times.iter().any(|&t| (r - t).abs() < 1e-9) || r >= x.horizon() {
                continue;
            }
            assert!((x.eval(r).unwrap() - rep.u(s)).abs() < 1e-9, "s={s} r={r}");
        }
    }
}
