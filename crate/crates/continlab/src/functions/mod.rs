//! Named real-valued test functions and checkers for joint, separate, linear
//! and arc continuity and for the concavity/convexity hierarchy.
//!
//! The continuity surrogate is oscillation contraction: a point is flagged as
//! a discontinuity only if the observed oscillation of the function over
//! shrinking probe neighborhoods stays above `continuity_modulus_budget` at
//! every dyadic scale, with probe points drawn from straight rays, power
//! curves (which catch discontinuities that hide from straight lines) and
//! deterministic ring fractions.

pub mod expr;

use crate::core::{CheckConfig, PropertyReport, UnresolvedReason, Verdict, Witness};
use crate::geometry::{
    affine_basis, classify_set_properties, member_catalog, mix, sample_segments,
    sample_smooth_arcs, Domain, Lattice, Point,
};
use expr::{Expr, ExprError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FunctionError {
    #[error("point is outside the attached domain")]
    OutsideDomain,
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error("{0}")]
    Invalid(String),
}

// ---------------------------------------------------------------------------
// Function bodies
// ---------------------------------------------------------------------------

/// Regular grid with multilinear interpolation between nodes, so segment and
/// arc restrictions are defined everywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedGrid {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub shape: Vec<usize>,
    /// Row-major node values (first axis fastest).
    pub values: Vec<f64>,
}

impl TabulatedGrid {
    fn eval(&self, p: &[f64]) -> f64 {
        let n = self.lo.len();
        let mut base = vec![0usize; n];
        let mut frac = vec![0.0; n];
        for i in 0..n {
            let m = self.shape[i];
            let u = if self.hi[i] > self.lo[i] {
                ((p[i] - self.lo[i]) / (self.hi[i] - self.lo[i])).clamp(0.0, 1.0) * (m - 1) as f64
            } else {
                0.0
            };
            let b = (u.floor() as usize).min(m.saturating_sub(2));
            base[i] = b;
            frac[i] = u - b as f64;
        }
        let mut acc = 0.0;
        for corner in 0..(1usize << n) {
            let mut w = 1.0;
            let mut flat = 0usize;
            for i in (0..n).rev() {
                let hi_side = corner & (1 << i) != 0;
                w *= if hi_side { frac[i] } else { 1.0 - frac[i] };
                let idx = base[i] + usize::from(hi_side);
                flat = flat * self.shape[i] + idx.min(self.shape[i] - 1);
            }
            acc += w * self.values[flat];
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Body {
    /// `f(x) = 2 x1 x2^2 / (x1^2 + x2^4)`, `f(0) = 0`.
    Gp,
    /// `f(x) = 2 x1^2 x2 / (x1^4 + x2^2)`, `f(0) = 0` (the parabola-domain
    /// companion of `Gp` with the roles of the axes swapped).
    GpSwapped,
    /// `sin(1/x_c)` for `x_c > 0` and `1` otherwise.
    SinReciprocal { coord: usize },
    /// Minimum of affine terms `a.x + b` (concave).
    MinOfAffine { terms: Vec<(Vec<f64>, f64)> },
    /// Maximum of affine terms `a.x + b` (convex).
    MaxOfAffine { terms: Vec<(Vec<f64>, f64)> },
    /// `x^T Q x + l.x + c`.
    Quadratic {
        q: Vec<Vec<f64>>,
        lin: Vec<f64>,
        cst: f64,
    },
    Constant(f64),
    Expression(Expr),
    Tabulation(TabulatedGrid),
}

/// A named real-valued function of `arity` variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealFunction {
    pub id: String,
    pub arity: usize,
    pub body: Body,
}

impl RealFunction {
    pub fn gp() -> Self {
        RealFunction {
            id: "gp".into(),
            arity: 2,
            body: Body::Gp,
        }
    }

    pub fn gp_swapped() -> Self {
        RealFunction {
            id: "gp-swapped".into(),
            arity: 2,
            body: Body::GpSwapped,
        }
    }

    pub fn sin_reciprocal(arity: usize, coord: usize) -> Self {
        RealFunction {
            id: "sin-reciprocal".into(),
            arity,
            body: Body::SinReciprocal { coord },
        }
    }

    pub fn constant(arity: usize, c: f64) -> Self {
        RealFunction {
            id: format!("const-{c}"),
            arity,
            body: Body::Constant(c),
        }
    }

    pub fn min_of_affine(arity: usize, terms: Vec<(Vec<f64>, f64)>) -> Self {
        RealFunction {
            id: "min-of-affine".into(),
            arity,
            body: Body::MinOfAffine { terms },
        }
    }

    pub fn max_of_affine(arity: usize, terms: Vec<(Vec<f64>, f64)>) -> Self {
        RealFunction {
            id: "max-of-affine".into(),
            arity,
            body: Body::MaxOfAffine { terms },
        }
    }

    pub fn from_expression(id: impl Into<String>, arity: usize, src: &str) -> Result<Self, FunctionError> {
        Ok(RealFunction {
            id: id.into(),
            arity,
            body: Body::Expression(Expr::parse(src, arity)?),
        })
    }

    /// Seeded minimum of up to `max_terms` affine functions; instances are
    /// concave, piecewise-linear and Lipschitz.
    pub fn seeded_min_of_affine(seed: u64, index: u64, arity: usize, max_terms: usize) -> Self {
        use rand::Rng;
        let mut rng = crate::core::derived_stream(seed, "min-of-affine-family", index);
        let k = rng.gen_range(1..=max_terms.max(1));
        let terms = (0..k)
            .map(|_| {
                let a: Vec<f64> = (0..arity).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let b: f64 = rng.gen_range(-1.0..1.0);
                (a, b)
            })
            .collect();
        RealFunction {
            id: format!("min-of-affine-{index}"),
            arity,
            body: Body::MinOfAffine { terms },
        }
    }

    /// Total evaluation; returns an error only for expression-level domain
    /// faults (unguarded division by zero, non-finite results).
    pub fn eval(&self, p: &[f64]) -> Result<f64, FunctionError> {
        let v = match &self.body {
            Body::Gp => {
                let d = p[0] * p[0] + p[1].powi(4);
                if d == 0.0 {
                    0.0
                } else {
                    2.0 * p[0] * p[1] * p[1] / d
                }
            }
            Body::GpSwapped => {
                let d = p[0].powi(4) + p[1] * p[1];
                if d == 0.0 {
                    0.0
                } else {
                    2.0 * p[0] * p[0] * p[1] / d
                }
            }
            Body::SinReciprocal { coord } => {
                let c = p[*coord];
                if c > 0.0 {
                    (1.0 / c).sin()
                } else {
                    1.0
                }
            }
            Body::MinOfAffine { terms } => terms
                .iter()
                .map(|(a, b)| a.iter().zip(p).map(|(ai, xi)| ai * xi).sum::<f64>() + b)
                .fold(f64::INFINITY, f64::min),
            Body::MaxOfAffine { terms } => terms
                .iter()
                .map(|(a, b)| a.iter().zip(p).map(|(ai, xi)| ai * xi).sum::<f64>() + b)
                .fold(f64::NEG_INFINITY, f64::max),
            Body::Quadratic { q, lin, cst } => {
                let mut acc = *cst;
                for i in 0..p.len() {
                    acc += lin[i] * p[i];
                    for j in 0..p.len() {
                        acc += q[i][j] * p[i] * p[j];
                    }
                }
                acc
            }
            Body::Constant(c) => *c,
            Body::Expression(e) => e.eval(p)?,
            Body::Tabulation(t) => t.eval(p),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(FunctionError::Invalid(
                "function produced a non-finite value".into(),
            ))
        }
    }
}

/// Evaluation restricted to the attached domain.
pub fn eval_named(f: &RealFunction, domain: &Domain, p: &Point, tau: f64) -> Result<f64, FunctionError> {
    if !domain.contains(&p.0, tau)? {
        return Err(FunctionError::OutsideDomain);
    }
    f.eval(&p.0)
}

// ---------------------------------------------------------------------------
// Oscillation machinery
// ---------------------------------------------------------------------------

/// Dyadic probe depth: violations must keep their oscillation above budget
/// down to `base_step / 2^DEPTH`, which squeezes out transversal-crossing
/// artifacts while genuine jumps stay visible at every scale.
const PROBE_DEPTH: u32 = 20;

/// Deterministic ring fractions in (1/2, 1]; decorrelated per depth.
const RING_FRACTIONS: [f64; 6] = [1.0, 0.91, 0.81, 0.72, 0.63, 0.55];

fn ring_fraction(j: usize, depth: u32) -> f64 {
    let twist = 1.0 - 0.013 * ((depth as usize + j) % 7) as f64;
    (RING_FRACTIONS[j % RING_FRACTIONS.len()] * twist).clamp(0.51, 1.0)
}

/// Oscillation of `g` over dyadic one-dimensional rings around `t0`,
/// clipped to `[range_lo, range_hi]`.  Returns true when the oscillation
/// (including `g(t0)`) stays at or above `budget` at every probed depth.
fn osc_persists_1d(
    g: &dyn Fn(f64) -> Option<f64>,
    t0: f64,
    base_step: f64,
    range: (f64, f64),
    budget: f64,
    start_depth: u32,
) -> bool {
    let Some(v0) = g(t0) else {
        return false;
    };
    for depth in start_depth..(start_depth + PROBE_DEPTH) {
        let r = base_step / (1u64 << depth) as f64;
        let mut lo = v0;
        let mut hi = v0;
        let mut saw_point = false;
        for side in [-1.0, 1.0] {
            for j in 0..RING_FRACTIONS.len() {
                let t = t0 + side * r * ring_fraction(j, depth);
                if t < range.0 || t > range.1 {
                    continue;
                }
                if let Some(v) = g(t) {
                    saw_point = true;
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
        }
        if !saw_point || hi - lo < budget {
            return false;
        }
    }
    true
}

/// A violation of continuity along a one-dimensional path.
#[derive(Debug, Clone)]
struct PathViolation {
    t: f64,
    oscillation: f64,
}

/// Scan a path `g : [0,1] -> R` for oscillation-contraction violations.
/// Candidates come from inter-node jumps plus the path endpoints; each must
/// persist down the dyadic rings and then survive one grid doubling.
fn path_violation(
    g: &dyn Fn(f64) -> Option<f64>,
    m: usize,
    budget: f64,
) -> Option<PathViolation> {
    let h = 1.0 / (m - 1) as f64;
    let vals: Vec<Option<f64>> = (0..m).map(|k| g(k as f64 / (m - 1) as f64)).collect();
    let mut candidate_idx: Vec<usize> = Vec::new();
    let mut mark = vec![false; m];
    for k in 0..m - 1 {
        if let (Some(a), Some(b)) = (vals[k], vals[k + 1]) {
            if (a - b).abs() >= 0.5 * budget {
                for (d, seen) in mark
                    .iter_mut()
                    .enumerate()
                    .take((k + 2).min(m - 1) + 1)
                    .skip(k.saturating_sub(1))
                {
                    if !*seen {
                        *seen = true;
                        candidate_idx.push(d);
                    }
                }
            }
        }
    }
    for end in [0, m - 1] {
        if !mark[end] {
            mark[end] = true;
            candidate_idx.push(end);
        }
    }
    for k in candidate_idx {
        let t0 = k as f64 / (m - 1) as f64;
        if osc_persists_1d(g, t0, h, (0.0, 1.0), budget, 0)
            && osc_persists_1d(g, t0, h * 0.5, (0.0, 1.0), budget, 0)
        {
            // Measure the deepest observed oscillation for the report.
            let r = h / (1u64 << PROBE_DEPTH) as f64;
            let mut lo = g(t0).unwrap_or(0.0);
            let mut hi = lo;
            for side in [-1.0, 1.0] {
                for j in 0..RING_FRACTIONS.len() {
                    let t = t0 + side * r * ring_fraction(j, PROBE_DEPTH);
                    if (0.0..=1.0).contains(&t) {
                        if let Some(v) = g(t) {
                            lo = lo.min(v);
                            hi = hi.max(v);
                        }
                    }
                }
            }
            return Some(PathViolation {
                t: t0,
                oscillation: hi - lo,
            });
        }
    }
    None
}

/// Probe directions at a point: signed chart axes plus normalized diagonals.
fn probe_directions(basis_dirs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for d in basis_dirs {
        dirs.push(d.clone());
        dirs.push(d.iter().map(|c| -c).collect());
    }
    let k = basis_dirs.len();
    if k >= 2 {
        for i in 0..k {
            for j in (i + 1)..k {
                for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    let v: Vec<f64> = basis_dirs[i]
                        .iter()
                        .zip(&basis_dirs[j])
                        .map(|(a, b)| (si * a + sj * b) / std::f64::consts::SQRT_2)
                        .collect();
                    dirs.push(v);
                }
            }
        }
    }
    dirs
}

/// Ray and power-curve probes anchored at `p`: `t -> p + t^e1 d1 + t^e2 d2`.
pub(crate) struct AnchoredCurve {
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    pub e1: i32,
    pub e2: i32,
    pub label: &'static str,
}

pub(crate) fn anchored_curves(dirs: &[Vec<f64>]) -> Vec<AnchoredCurve> {
    let n = dirs.first().map(|d| d.len()).unwrap_or(0);
    let mut out = Vec::new();
    for d in dirs {
        out.push(AnchoredCurve {
            d1: d.clone(),
            d2: vec![0.0; n],
            e1: 1,
            e2: 1,
            label: "ray",
        });
    }
    for i in 0..dirs.len() {
        for j in 0..dirs.len() {
            if i == j || dirs[i].iter().zip(&dirs[j]).all(|(a, b)| (a + b).abs() < 1e-12) {
                continue;
            }
            for (e2, label) in [(2, "power-2"), (3, "power-3")] {
                out.push(AnchoredCurve {
                    d1: dirs[i].clone(),
                    d2: dirs[j].clone(),
                    e1: 1,
                    e2,
                    label,
                });
            }
        }
    }
    out
}

impl AnchoredCurve {
    pub fn at(&self, p: &[f64], t: f64) -> Vec<f64> {
        let (t1, t2) = (t.powi(self.e1), t.powi(self.e2));
        (0..p.len())
            .map(|i| p[i] + t1 * self.d1[i] + t2 * self.d2[i])
            .collect()
    }
}

/// Multi-scale oscillation at a candidate point of the full domain, probing
/// along anchored curves.  Returns the (high, low) witnesses when flagged.
fn joint_osc_persists(
    f: &dyn Fn(&[f64]) -> Option<f64>,
    p: &[f64],
    curves: &[AnchoredCurve],
    base_step: f64,
    budget: f64,
    start_depth: u32,
    depth_count: u32,
) -> Option<(Vec<f64>, Vec<f64>, f64, &'static str)> {
    let v0 = f(p)?;
    let mut deepest: Option<(Vec<f64>, Vec<f64>, f64, &'static str)> = None;
    for depth in start_depth..(start_depth + depth_count) {
        let r = base_step / (1u64 << depth) as f64;
        let mut lo = (v0, p.to_vec(), "point");
        let mut hi = (v0, p.to_vec(), "point");
        let mut seen = false;
        for c in curves {
            for j in 0..3 {
                let t = r * ring_fraction(j, depth);
                let q = c.at(p, t);
                if let Some(v) = f(&q) {
                    seen = true;
                    if v < lo.0 {
                        lo = (v, q.clone(), c.label);
                    }
                    if v > hi.0 {
                        hi = (v, q, c.label);
                    }
                }
            }
        }
        if !seen || hi.0 - lo.0 < budget {
            return None;
        }
        let label = if hi.1 != *p { hi.2 } else { lo.2 };
        deepest = Some((hi.1.clone(), lo.1.clone(), hi.0 - lo.0, label));
    }
    deepest
}

// ---------------------------------------------------------------------------
// Continuity checker
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContinuityMode {
    Joint,
    Separate,
    Linear,
    Arc,
}

impl ContinuityMode {
    pub fn id(&self) -> &'static str {
        match self {
            ContinuityMode::Joint => "joint-continuity",
            ContinuityMode::Separate => "separate-continuity",
            ContinuityMode::Linear => "linear-continuity",
            ContinuityMode::Arc => "arc-continuity",
        }
    }
}

/// Oscillation-contraction continuity check in the requested mode.
pub fn check_function_continuity(
    f: &RealFunction,
    domain: &Domain,
    mode: ContinuityMode,
    cfg: &CheckConfig,
) -> Result<PropertyReport, FunctionError> {
    let tau = cfg.cmp_tolerance;
    let budget = cfg.continuity_modulus_budget;
    let eval = |p: &[f64]| -> Option<f64> {
        if domain.contains(p, tau).unwrap_or(false) {
            f.eval(p).ok()
        } else {
            None
        }
    };
    let basis = affine_basis(domain, cfg)?;

    match mode {
        ContinuityMode::Joint => {
            let lattice = Lattice::build(domain, &basis, cfg.grid_resolution, tau);
            let chart = crate::geometry::chart_directions(domain, &basis);
            let dirs = probe_directions(&chart);
            let curves = anchored_curves(&dirs);
            // The per-node screen uses only axis-anchored curves; the full
            // battery runs on the candidates it surfaces.
            let mut axis_dirs: Vec<Vec<f64>> = Vec::new();
            for d in &chart {
                axis_dirs.push(d.clone());
                axis_dirs.push(d.iter().map(|c| -c).collect());
            }
            let screen_curves = anchored_curves(&axis_dirs);
            let step = lattice.step.max(1e-12);
            let mut samples = 0usize;
            for node in lattice.nodes.iter().flatten() {
                samples += 1;
                // Cheap screen at shallow depths, deep probe only on demand.
                if joint_osc_persists(&eval, node, &screen_curves, 2.0 * step, budget, 0, 3)
                    .is_none()
                {
                    continue;
                }
                if let Some((hi_pt, lo_pt, osc, label)) =
                    joint_osc_persists(&eval, node, &curves, 2.0 * step, budget, 0, PROBE_DEPTH)
                {
                    // Refinement: double the grid, i.e. shift the probe one
                    // dyadic level deeper at half the base step.
                    if joint_osc_persists(&eval, node, &curves, step, budget, 0, PROBE_DEPTH)
                        .is_some()
                    {
                        let w = Witness::new(
                            vec![node.clone(), hi_pt, lo_pt],
                            vec![],
                            format!(
                                "oscillation {osc:.6} does not contract at this point (approach: {label})"
                            ),
                        )
                        .survived();
                        return Ok(PropertyReport::fails(mode.id(), vec![w], samples, cfg));
                    }
                }
            }
            Ok(PropertyReport::holds(mode.id(), samples, cfg))
        }
        ContinuityMode::Separate => {
            // Axis-parallel restrictions only, through every lattice row.
            let lattice = Lattice::build(domain, &basis, cfg.grid_resolution, tau);
            let mut samples = 0usize;
            let n = domain.dimension;
            let (lo_bb, hi_bb) = domain.bounding_box();
            let anchors: Vec<Vec<f64>> = lattice.nodes.iter().flatten().cloned().collect();
            let stride = (anchors.len() / cfg.sample_count.max(1)).max(1);
            for anchor in anchors.iter().step_by(stride) {
                for axis in 0..n {
                    samples += 1;
                    let g = |t: f64| -> Option<f64> {
                        let mut q = anchor.clone();
                        q[axis] = lo_bb[axis] + t * (hi_bb[axis] - lo_bb[axis]);
                        eval(&q)
                    };
                    if let Some(v) = path_violation(&g, cfg.lambda_resolution, budget) {
                        let mut q = anchor.clone();
                        q[axis] = lo_bb[axis] + v.t * (hi_bb[axis] - lo_bb[axis]);
                        let w = Witness::new(
                            vec![q],
                            vec![v.t],
                            format!(
                                "oscillation {:.6} along the axis-{axis} line does not contract",
                                v.oscillation
                            ),
                        )
                        .survived();
                        return Ok(PropertyReport::fails(mode.id(), vec![w], samples, cfg));
                    }
                }
            }
            Ok(PropertyReport::holds(mode.id(), samples, cfg))
        }
        ContinuityMode::Linear => {
            let segments = sample_segments(domain, cfg.sample_count, cfg)?;
            let samples = segments.len();
            for seg in &segments {
                let g = |t: f64| -> Option<f64> { eval(&seg.at(t)) };
                if let Some(v) = path_violation(&g, cfg.lambda_resolution, budget) {
                    let w = Witness::new(
                        vec![seg.y.0.clone(), seg.x.0.clone(), seg.at(v.t)],
                        vec![v.t],
                        format!(
                            "oscillation {:.6} along a straight segment does not contract",
                            v.oscillation
                        ),
                    )
                    .survived();
                    return Ok(PropertyReport::fails(mode.id(), vec![w], samples, cfg));
                }
            }
            Ok(PropertyReport::holds(mode.id(), samples, cfg))
        }
        ContinuityMode::Arc => {
            if basis.dim() < 1 {
                return Err(FunctionError::Invalid(
                    "arc mode needs affine dimension at least 1".into(),
                ));
            }
            let arcs = arc_battery(domain, cfg)?;
            let samples = arcs.len();
            for arc in &arcs {
                let g = |t: f64| -> Option<f64> { eval(&arc.at(t)) };
                if let Some(v) = path_violation(&g, cfg.lambda_resolution, budget) {
                    let w = Witness::new(
                        vec![arc.from.0.clone(), arc.to.0.clone(), arc.at(v.t)],
                        vec![v.t],
                        format!(
                            "oscillation {:.6} along smooth arc '{}' does not contract",
                            v.oscillation, arc.label
                        ),
                    )
                    .survived();
                    return Ok(PropertyReport::fails(mode.id(), vec![w], samples, cfg));
                }
            }
            Ok(PropertyReport::holds(mode.id(), samples, cfg))
        }
    }
}

/// Deterministic battery of smooth arcs between catalog points (the power
/// stratum rides along), topped up with seeded cubics.
pub fn arc_battery(
    domain: &Domain,
    cfg: &CheckConfig,
) -> Result<Vec<crate::geometry::SmoothArc>, FunctionError> {
    let catalog = member_catalog(domain, cfg);
    let mut arcs = Vec::new();
    let budget_pairs = (cfg.sample_count / 8).clamp(4, 48);
    let mut pair_count = 0usize;
    'outer: for i in 0..catalog.len() {
        for j in (i + 1)..catalog.len() {
            if pair_count >= budget_pairs {
                break 'outer;
            }
            let x = Point(catalog[j].clone());
            let y = Point(catalog[i].clone());
            if x.0 == y.0 {
                continue;
            }
            if let Ok((mut batch, _)) = sample_smooth_arcs(domain, &x, &y, 7, cfg) {
                arcs.append(&mut batch);
                pair_count += 1;
            }
        }
    }
    if arcs.is_empty() {
        return Err(FunctionError::Invalid("no arcs could be sampled".into()));
    }
    Ok(arcs)
}

// ---------------------------------------------------------------------------
// Convexity checker
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConvexityKind {
    Concave,
    Convex,
    QuasiConcave,
    QuasiConvex,
    MidpointQuasiConcave,
    MidpointQuasiConvex,
}

impl ConvexityKind {
    pub fn id(&self) -> &'static str {
        match self {
            ConvexityKind::Concave => "concave",
            ConvexityKind::Convex => "convex",
            ConvexityKind::QuasiConcave => "quasi-concave",
            ConvexityKind::QuasiConvex => "quasi-convex",
            ConvexityKind::MidpointQuasiConcave => "midpoint-quasi-concave",
            ConvexityKind::MidpointQuasiConvex => "midpoint-quasi-convex",
        }
    }
}

/// Sampled Jensen / quasi-concavity tests over pairs and mixing weights.
/// Lambda runs over the whole grid per pair, so a pair is a whole family of
/// triples `(x, y, lambda)`.
pub fn check_function_convexity(
    f: &RealFunction,
    domain: &Domain,
    kind: ConvexityKind,
    cfg: &CheckConfig,
) -> Result<PropertyReport, FunctionError> {
    let tau = cfg.cmp_tolerance;
    let pairs = convexity_pairs(domain, cfg)?;
    if pairs.is_empty() {
        return Ok(PropertyReport::unresolved(
            kind.id(),
            UnresolvedReason::InsufficientSamples,
            0,
            cfg,
        ));
    }
    let m = cfg.lambda_resolution;
    let mut samples = 0usize;
    let mut ambiguous = false;
    for (x, y) in &pairs {
        let (Ok(fx), Ok(fy)) = (f.eval(x), f.eval(y)) else {
            continue;
        };
        let lambdas: Vec<f64> = match kind {
            ConvexityKind::MidpointQuasiConcave | ConvexityKind::MidpointQuasiConvex => {
                vec![0.5]
            }
            _ => (1..m - 1).map(|k| k as f64 / (m - 1) as f64).collect(),
        };
        for &lambda in &lambdas {
            samples += 1;
            let z = mix(x, y, lambda);
            if matches!(domain.variant, crate::geometry::DomainVariant::Oracle(_))
                && !domain.contains(&z, tau).unwrap_or(false)
            {
                continue;
            }
            let Ok(fz) = f.eval(&z) else { continue };
            let shortfall = match kind {
                ConvexityKind::Concave => (lambda * fx + (1.0 - lambda) * fy) - fz,
                ConvexityKind::Convex => fz - (lambda * fx + (1.0 - lambda) * fy),
                ConvexityKind::QuasiConcave | ConvexityKind::MidpointQuasiConcave => {
                    fx.min(fy) - fz
                }
                ConvexityKind::QuasiConvex | ConvexityKind::MidpointQuasiConvex => fz - fx.max(fy),
            };
            if shortfall > tau {
                // Pointwise arithmetic violations survive any grid
                // refinement; only tolerance-thin ones are discarded.
                if shortfall > 10.0 * tau {
                    let w = Witness::new(
                        vec![x.clone(), y.clone(), z],
                        vec![lambda],
                        format!("{} inequality violated by {shortfall:.3e}", kind.id()),
                    )
                    .survived();
                    return Ok(PropertyReport::fails(kind.id(), vec![w], samples, cfg));
                }
                ambiguous = true;
            }
        }
    }
    if ambiguous {
        return Ok(PropertyReport::unresolved(
            kind.id(),
            UnresolvedReason::ToleranceAmbiguity,
            samples,
            cfg,
        ));
    }
    Ok(PropertyReport::holds(kind.id(), samples, cfg))
}

fn convexity_pairs(
    domain: &Domain,
    cfg: &CheckConfig,
) -> Result<Vec<crate::relations::PointPair>, FunctionError> {
    let catalog = member_catalog(domain, cfg);
    let mut pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    // Offset-interleaved enumeration so nearby catalog entries (corner pairs,
    // power-curve pairs) all appear before the budget caps the list.
    'pairing: for off in 1..catalog.len() {
        for i in 0..(catalog.len() - off) {
            if pairs.len() >= cfg.sample_count {
                break 'pairing;
            }
            pairs.push((catalog[i].clone(), catalog[i + off].clone()));
        }
    }
    let seeded = crate::geometry::grid_members(
        domain,
        &affine_basis(domain, cfg)?,
        17.min(cfg.grid_resolution),
        cfg.cmp_tolerance,
    );
    let mut k = 0usize;
    while pairs.len() < cfg.sample_count && k + 1 < seeded.len() {
        pairs.push((seeded[k].clone(), seeded[k + 1].clone()));
        k += 2;
    }
    Ok(pairs)
}

// ---------------------------------------------------------------------------
// Theorem-1 crosscheck
// ---------------------------------------------------------------------------

/// Result of running the linear/joint equivalence crosscheck for
/// quasi-concave or quasi-convex functions on property-C domains.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem1Crosscheck {
    /// Populated when the preconditions are not established; no verdicts run.
    pub refusal: Option<String>,
    pub linear: Option<PropertyReport>,
    pub joint: Option<PropertyReport>,
    pub agree: Option<bool>,
    /// Both verdicts decisive and different: the equivalence guarantees
    /// agreement, so a disagreement is a toolkit defect.
    pub toolkit_bug: bool,
}

/// Cross-validates the linear and joint continuity verdicts, which must agree
/// for quasi-concave (or quasi-convex) functions on domains with property C.
pub fn crosscheck_theorem1(
    f: &RealFunction,
    domain: &Domain,
    cfg: &CheckConfig,
) -> Result<Theorem1Crosscheck, FunctionError> {
    let profile = classify_set_properties(domain, cfg);
    if profile.property_c != Verdict::Holds {
        return Ok(Theorem1Crosscheck {
            refusal: Some(format!(
                "property C not established (verdict: {}); the linear/joint equivalence needs an open set or a polyhedron and fails without it",
                profile.property_c
            )),
            linear: None,
            joint: None,
            agree: None,
            toolkit_bug: false,
        });
    }
    let qcc = check_function_convexity(f, domain, ConvexityKind::QuasiConcave, cfg)?;
    let qcv = check_function_convexity(f, domain, ConvexityKind::QuasiConvex, cfg)?;
    if qcc.verdict != Verdict::Holds && qcv.verdict != Verdict::Holds {
        return Ok(Theorem1Crosscheck {
            refusal: Some(format!(
                "neither quasi-concavity ({}) nor quasi-convexity ({}) established; the equivalence does not apply",
                qcc.verdict, qcv.verdict
            )),
            linear: None,
            joint: None,
            agree: None,
            toolkit_bug: false,
        });
    }
    let linear = check_function_continuity(f, domain, ContinuityMode::Linear, cfg)?;
    let joint = check_function_continuity(f, domain, ContinuityMode::Joint, cfg)?;
    let agree = match (linear.verdict, joint.verdict) {
        (Verdict::Holds, Verdict::Holds) | (Verdict::Fails, Verdict::Fails) => Some(true),
        (Verdict::Holds, Verdict::Fails) | (Verdict::Fails, Verdict::Holds) => Some(false),
        _ => None,
    };
    Ok(Theorem1Crosscheck {
        refusal: None,
        toolkit_bug: agree == Some(false),
        linear: Some(linear),
        joint: Some(joint),
        agree,
    })
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

/// Per-property report map over the function postulates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionProfile {
    pub reports: BTreeMap<String, PropertyReport>,
}

/// Run the standard battery (all four continuity modes plus the convexity
/// hierarchy) unless a subset is requested.
pub fn function_profile(
    f: &RealFunction,
    domain: &Domain,
    cfg: &CheckConfig,
    properties: &[&str],
) -> Result<FunctionProfile, FunctionError> {
    let mut reports = BTreeMap::new();
    for prop in properties {
        let report = match *prop {
            "joint-continuity" => check_function_continuity(f, domain, ContinuityMode::Joint, cfg)?,
            "separate-continuity" => {
                check_function_continuity(f, domain, ContinuityMode::Separate, cfg)?
            }
            "linear-continuity" => {
                check_function_continuity(f, domain, ContinuityMode::Linear, cfg)?
            }
            "arc-continuity" => check_function_continuity(f, domain, ContinuityMode::Arc, cfg)?,
            "concave" => check_function_convexity(f, domain, ConvexityKind::Concave, cfg)?,
            "convex" => check_function_convexity(f, domain, ConvexityKind::Convex, cfg)?,
            "quasi-concave" => {
                check_function_convexity(f, domain, ConvexityKind::QuasiConcave, cfg)?
            }
            "quasi-convex" => check_function_convexity(f, domain, ConvexityKind::QuasiConvex, cfg)?,
            "midpoint-quasi-concave" => {
                check_function_convexity(f, domain, ConvexityKind::MidpointQuasiConcave, cfg)?
            }
            "midpoint-quasi-convex" => {
                check_function_convexity(f, domain, ConvexityKind::MidpointQuasiConvex, cfg)?
            }
            other => {
                return Err(FunctionError::Invalid(format!(
                    "unknown function property '{other}'"
                )))
            }
        };
        reports.insert((*prop).to_string(), report);
    }
    Ok(FunctionProfile { reports })
}

pub const FUNCTION_PROPERTIES: [&str; 10] = [
    "joint-continuity",
    "separate-continuity",
    "linear-continuity",
    "arc-continuity",
    "concave",
    "convex",
    "quasi-concave",
    "quasi-convex",
    "midpoint-quasi-concave",
    "midpoint-quasi-convex",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_cfg() -> CheckConfig {
        CheckConfig {
            grid_resolution: 101,
            lambda_resolution: 201,
            sample_count: 120,
            ..CheckConfig::default()
        }
    }

    fn square() -> Domain {
        Domain::boxed(vec![-1.0, -1.0], vec![1.0, 1.0])
    }

    #[test]
    fn gp_published_values() {
        let gp = RealFunction::gp();
        assert_eq!(gp.eval(&[0.0, 0.0]).unwrap(), 0.0);
        // Substituting (1,1) into the printed formula: 2*1*1 / (1+1) = 1.
        assert_eq!(gp.eval(&[1.0, 1.0]).unwrap(), 1.0);
        // Along x1 = x2^2 the function is identically 1 away from the origin:
        // f(t^2, t) = 2 t^4 / (t^4 + t^4).
        for t in [1e-3, 0.1, 0.5, -0.3, 0.9] {
            assert!((gp.eval(&[t * t, t]).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gp_is_linearly_but_not_jointly_continuous() {
        let cfg = quick_cfg();
        let gp = RealFunction::gp();
        let lin = check_function_continuity(&gp, &square(), ContinuityMode::Linear, &cfg).unwrap();
        assert_eq!(lin.verdict, Verdict::Holds, "notes: {}", lin.notes);
        let joint = check_function_continuity(&gp, &square(), ContinuityMode::Joint, &cfg).unwrap();
        assert_eq!(joint.verdict, Verdict::Fails);
        let w = &joint.witnesses[0];
        let p = &w.points[0];
        let d = (p[0] * p[0] + p[1] * p[1]).sqrt();
        assert!(d < 0.05, "witness must sit near the origin, got {p:?}");
        assert_eq!(w.robustness, crate::core::Robustness::SurvivedRefinement);
    }

    #[test]
    fn gp_is_separately_continuous() {
        let cfg = quick_cfg();
        let gp = RealFunction::gp();
        let sep =
            check_function_continuity(&gp, &square(), ContinuityMode::Separate, &cfg).unwrap();
        assert_eq!(sep.verdict, Verdict::Holds);
    }

    #[test]
    fn gp_fails_arc_continuity_via_the_power_curve() {
        let cfg = quick_cfg();
        let gp = RealFunction::gp();
        let arc = check_function_continuity(&gp, &square(), ContinuityMode::Arc, &cfg).unwrap();
        assert_eq!(arc.verdict, Verdict::Fails);
    }

    #[test]
    fn constant_function_holds_everywhere() {
        let cfg = quick_cfg();
        let c = RealFunction::constant(2, 3.0);
        for mode in [
            ContinuityMode::Joint,
            ContinuityMode::Separate,
            ContinuityMode::Linear,
            ContinuityMode::Arc,
        ] {
            let r = check_function_continuity(&c, &square(), mode, &cfg).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "mode {mode:?}");
        }
    }

    #[test]
    fn min_of_affine_is_concave_hence_quasi_concave() {
        let cfg = quick_cfg();
        let f = RealFunction::min_of_affine(2, vec![(vec![1.0, 0.0], 0.0), (vec![0.0, 1.0], 0.0)]);
        let unit = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let c = check_function_convexity(&f, &unit, ConvexityKind::Concave, &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        let qc = check_function_convexity(&f, &unit, ConvexityKind::QuasiConcave, &cfg).unwrap();
        assert_eq!(qc.verdict, Verdict::Holds);
        let cv = check_function_convexity(&f, &unit, ConvexityKind::Convex, &cfg).unwrap();
        assert_eq!(cv.verdict, Verdict::Fails);
    }

    #[test]
    fn gp_is_not_quasi_concave_brute_force_oracle_agrees() {
        let cfg = quick_cfg();
        let gp = RealFunction::gp();
        let unit = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        // Independent oracle: brute-force a coarse grid of pairs and weights.
        let mut oracle_found = false;
        let steps = 9;
        let pts: Vec<Vec<f64>> = (0..=steps)
            .flat_map(|i| {
                (0..=steps).map(move |j| {
                    vec![i as f64 / steps as f64, j as f64 / steps as f64]
                })
            })
            .collect();
        'outer: for x in &pts {
            for y in &pts {
                for k in 1..10 {
                    let lambda = k as f64 / 10.0;
                    let z = mix(x, y, lambda);
                    let (fx, fy, fz) = (
                        gp.eval(x).unwrap(),
                        gp.eval(y).unwrap(),
                        gp.eval(&z).unwrap(),
                    );
                    if fx.min(fy) - fz > 1e-6 {
                        oracle_found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(oracle_found, "brute force must find a quasi-concavity violation");
        let qc = check_function_convexity(&gp, &unit, ConvexityKind::QuasiConcave, &cfg).unwrap();
        assert_eq!(qc.verdict, Verdict::Fails);
    }

    #[test]
    fn midpoint_variants_accept_midpoint_only_families() {
        let cfg = quick_cfg();
        let f = RealFunction::min_of_affine(2, vec![(vec![1.0, 1.0], 0.0)]);
        let unit = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let r =
            check_function_convexity(&f, &unit, ConvexityKind::MidpointQuasiConcave, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn crosscheck_refuses_without_property_c() {
        let cfg = quick_cfg();
        // Closed ball: neither open nor a polyhedron.
        let ball = Domain::ball(vec![0.0, 0.0], 1.0, false);
        let f = RealFunction::constant(2, 1.0);
        let r = crosscheck_theorem1(&f, &ball, &cfg).unwrap();
        let msg = r.refusal.expect("must refuse");
        assert!(msg.contains("property C"));
    }

    #[test]
    fn crosscheck_refuses_gp_for_missing_quasiconvexity() {
        let cfg = quick_cfg();
        let r = crosscheck_theorem1(&RealFunction::gp(), &square(), &cfg).unwrap();
        let msg = r.refusal.expect("must refuse");
        assert!(msg.contains("quasi-conca") || msg.contains("quasi-convex"));
    }

    #[test]
    fn crosscheck_agrees_on_min_of_affine_family() {
        let cfg = CheckConfig {
            grid_resolution: 81,
            lambda_resolution: 161,
            sample_count: 60,
            ..CheckConfig::default()
        };
        let unit = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        for idx in 0..8 {
            let f = RealFunction::seeded_min_of_affine(42, idx, 2, 5);
            let r = crosscheck_theorem1(&f, &unit, &cfg).unwrap();
            assert!(r.refusal.is_none(), "instance {idx} refused");
            assert_eq!(r.agree, Some(true), "instance {idx} disagreed");
            assert!(!r.toolkit_bug);
        }
    }

    #[test]
    fn concave_family_is_linearly_and_jointly_continuous_on_open_box() {
        // Surrogates for the concave-continuity facts on open convex sets.
        let cfg = CheckConfig {
            grid_resolution: 61,
            lambda_resolution: 161,
            sample_count: 50,
            ..CheckConfig::default()
        };
        let open_unit = Domain::open_box(vec![0.0, 0.0], vec![1.0, 1.0]);
        for idx in 0..25 {
            let f = RealFunction::seeded_min_of_affine(42, idx, 2, 5);
            let lin =
                check_function_continuity(&f, &open_unit, ContinuityMode::Linear, &cfg).unwrap();
            assert_eq!(lin.verdict, Verdict::Holds, "instance {idx} linear");
            let joint =
                check_function_continuity(&f, &open_unit, ContinuityMode::Joint, &cfg).unwrap();
            assert_eq!(joint.verdict, Verdict::Holds, "instance {idx} joint");
        }
    }

    #[test]
    fn hierarchy_concave_implies_quasi_concave_on_catalog() {
        let cfg = quick_cfg();
        let unit = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        for idx in 0..10 {
            let f = RealFunction::seeded_min_of_affine(7, idx, 2, 4);
            let c = check_function_convexity(&f, &unit, ConvexityKind::Concave, &cfg).unwrap();
            if c.verdict == Verdict::Holds {
                let qc =
                    check_function_convexity(&f, &unit, ConvexityKind::QuasiConcave, &cfg).unwrap();
                assert_eq!(qc.verdict, Verdict::Holds, "instance {idx}");
            }
        }
    }

    #[test]
    fn eval_named_rejects_outside_points() {
        let unit = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let f = RealFunction::gp();
        let r = eval_named(&f, &unit, &Point(vec![2.0, 2.0]), 1e-9);
        assert!(matches!(r, Err(FunctionError::OutsideDomain)));
    }

    #[test]
    fn tabulated_multilinear_interpolation() {
        let t = TabulatedGrid {
            lo: vec![0.0, 0.0],
            hi: vec![1.0, 1.0],
            shape: vec![2, 2],
            values: vec![0.0, 1.0, 2.0, 3.0], // f(0,0)=0 f(1,0)=1 f(0,1)=2 f(1,1)=3
        };
        let f = RealFunction {
            id: "tab".into(),
            arity: 2,
            body: Body::Tabulation(t),
        };
        assert_eq!(f.eval(&[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(f.eval(&[1.0, 1.0]).unwrap(), 3.0);
        assert_eq!(f.eval(&[0.5, 0.5]).unwrap(), 1.5);
        assert_eq!(f.eval(&[1.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn sin_reciprocal_fails_joint_continuity_on_the_half_line() {
        let cfg = CheckConfig {
            grid_resolution: 201,
            lambda_resolution: 201,
            sample_count: 50,
            ..CheckConfig::default()
        };
        let dom = Domain::boxed(vec![0.0], vec![1.0]);
        let f = RealFunction::sin_reciprocal(1, 0);
        let r = check_function_continuity(&f, &dom, ContinuityMode::Joint, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(r.witnesses[0].points[0][0].abs() < 1e-6);
    }
}
