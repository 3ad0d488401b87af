//! M1 distance between cadlag paths, approximated by a dynamic program
//! over monotone couplings of discretized completed graphs.
//!
//! Both completed graphs are sampled with a mesh bound; a coupling is a
//! monotone staircase over the index grid matching the two point sequences,
//! and its cost is the maximum over matched pairs of the Chebyshev distance
//! `max(|Δvalue|, |Δtime|)`. The minimum over staircases (the discrete
//! Fréchet value for this ground metric) is computed exactly by the usual
//! recurrence; it approximates the continuous infimum over parametric
//! representations to within the mesh.

use crate::error::{Error, Result};
use crate::path::CadlagPath;
use crate::rep::ParametricRep;

/// Completed graph sampled so that consecutive points are at most `mesh`
/// apart in the max metric; all graph vertices are included.
#[derive(Debug, Clone)]
pub struct GraphDiscretization {
    /// `(value, time)` points in graph order.
    points: Vec<(f64, f64)>,
    /// Index of the graph segment each point lies on (0 for the first
    /// vertex).
    seg_index: Vec<usize>,
    mesh: f64,
}

impl GraphDiscretization {
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn seg_index(&self) -> &[usize] {
        &self.seg_index
    }

    pub fn mesh(&self) -> f64 {
        self.mesh
    }
}

/// Samples the completed graph with the given mesh.
pub fn discretize_graph(
    g: &crate::path::CompletedGraph,
    mesh: f64,
) -> Result<GraphDiscretization> {
    if !(mesh > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mesh must be positive, got {mesh}"
        )));
    }
    let verts = g.vertices();
    let mut points = Vec::new();
    let mut seg_index = Vec::new();
    points.push(verts[0]);
    seg_index.push(0);
    for (si, w) in verts.windows(2).enumerate() {
        let (p, q) = (w[0], w[1]);
        let len = (q.0 - p.0).abs().max((q.1 - p.1).abs());
        let k = (len / mesh).ceil().max(1.0) as usize;
        for l in 1..=k {
            let a = l as f64 / k as f64;
            points.push((p.0 + a * (q.0 - p.0), p.1 + a * (q.1 - p.1)));
            seg_index.push(si);
        }
    }
    Ok(GraphDiscretization {
        points,
        seg_index,
        mesh,
    })
}

/// A monotone staircase over the index grid of two discretizations,
/// achieving `cost` as the max matched-pair distance.
#[derive(Debug, Clone)]
pub struct Coupling {
    pairs: Vec<(u32, u32)>,
    pub cost: f64,
    mesh: f64,
    digest_a: (usize, u64),
    digest_b: (usize, u64),
}

impl Coupling {
    /// Matched index pairs, from `(0, 0)` to `(N-1, M-1)` in unit steps.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn mesh(&self) -> f64 {
        self.mesh
    }
}

fn digest(points: &[(f64, f64)]) -> (usize, u64) {
    let mut h = 0u64;
    for &(v, t) in points {
        h = h
            .rotate_left(7)
            .wrapping_add(v.to_bits())
            .rotate_left(11)
            .wrapping_add(t.to_bits());
    }
    (points.len(), h)
}

#[inline]
fn cheb(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

/// Default mesh: `1e-3 * max(T, value range)` over the pair.
pub fn default_mesh(x: &CadlagPath, y: &CadlagPath) -> f64 {
    let range = |p: &CadlagPath| {
        let g = p.completed_graph();
        let lo = g
            .vertices()
            .iter()
            .map(|v| v.0)
            .fold(f64::INFINITY, f64::min);
        let hi = g
            .vertices()
            .iter()
            .map(|v| v.0)
            .fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    1e-3 * x.horizon().max(range(x)).max(range(y))
}

const MAX_DP_CELLS: usize = 400_000_000;

/// M1 distance estimate between `x` and `y` at the given mesh, with the
/// optimal coupling. The estimate never exceeds the cost of any monotone
/// matching of the sampled graphs and is within the mesh of the continuous
/// infimum.
pub fn m1_distance(x: &CadlagPath, y: &CadlagPath, mesh: f64) -> Result<(f64, Coupling)> {
    if x.horizon() != y.horizon() {
        return Err(Error::HorizonMismatch {
            a: x.horizon(),
            b: y.horizon(),
        });
    }
    let da = discretize_graph(&x.completed_graph(), mesh)?;
    let db = discretize_graph(&y.completed_graph(), mesh)?;
    let (cost, pairs) = frechet_dp(da.points(), db.points())?;
    Ok((
        cost,
        Coupling {
            pairs,
            cost,
            mesh,
            digest_a: digest(da.points()),
            digest_b: digest(db.points()),
        },
    ))
}

/// Exact min-max dynamic program over monotone staircases with unit moves.
/// Returns the optimal cost and one optimal staircase; ties prefer
/// advancing the first sequence.
fn frechet_dp(a: &[(f64, f64)], b: &[(f64, f64)]) -> Result<(f64, Vec<(u32, u32)>)> {
    let n = a.len();
    let m = b.len();
    if n.checked_mul(m).is_none_or(|c| c > MAX_DP_CELLS) {
        return Err(Error::InvalidParameter(format!(
            "discretization too fine: {n} x {m} coupling grid"
        )));
    }
    // dir: 1 = from (i-1, j), 2 = from (i-1, j-1), 3 = from (i, j-1).
    let mut dir = vec![0u8; n * m];
    let mut prev = vec![0.0f64; m];
    let mut curr = vec![0.0f64; m];

    for j in 0..m {
        let c = cheb(a[0], b[j]);
        prev[j] = if j == 0 { c } else { c.max(prev[j - 1]) };
        if j > 0 {
            dir[j] = 3;
        }
    }
    for i in 1..n {
        let row = i * m;
        curr[0] = cheb(a[i], b[0]).max(prev[0]);
        dir[row] = 1;
        for j in 1..m {
            let c = cheb(a[i], b[j]);
            let up = prev[j];
            let diag = prev[j - 1];
            let left = curr[j - 1];
            let (best, d) = if up <= diag && up <= left {
                (up, 1u8)
            } else if diag <= left {
                (diag, 2u8)
            } else {
                (left, 3u8)
            };
            curr[j] = c.max(best);
            dir[row + j] = d;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    let cost = prev[m - 1];

    let mut pairs = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n - 1, m - 1);
    loop {
        pairs.push((i as u32, j as u32));
        match dir[i * m + j] {
            1 => i -= 1,
            2 => {
                i -= 1;
                j -= 1;
            }
            3 => j -= 1,
            _ => break,
        }
    }
    pairs.reverse();
    Ok((cost, pairs))
}

/// Converts a coupling into a pair of parametric representations on a
/// common, equally spaced knot grid; the sup-distance of the pair equals
/// the coupling cost.
pub fn coupling_to_reps(
    x: &CadlagPath,
    y: &CadlagPath,
    coupling: &Coupling,
) -> Result<(ParametricRep, ParametricRep)> {
    let da = discretize_graph(&x.completed_graph(), coupling.mesh)?;
    let db = discretize_graph(&y.completed_graph(), coupling.mesh)?;
    if digest(da.points()) != coupling.digest_a || digest(db.points()) != coupling.digest_b {
        return Err(Error::StaleCoupling(
            "paths do not match the ones the coupling was computed from".into(),
        ));
    }
    let k = coupling.pairs.len();
    if k < 2 {
        return Err(Error::StaleCoupling("degenerate coupling".into()));
    }
    let mut knots_x = Vec::with_capacity(k);
    let mut knots_y = Vec::with_capacity(k);
    for (step, &(i, j)) in coupling.pairs.iter().enumerate() {
        let s = step as f64 / (k - 1) as f64;
        let (va, ta) = da.points()[i as usize];
        let (vb, tb) = db.points()[j as usize];
        knots_x.push((s, va, ta));
        knots_y.push((s, vb, tb));
    }
    Ok((
        ParametricRep::from_knots(knots_x)?,
        ParametricRep::from_knots(knots_y)?,
    ))
}
